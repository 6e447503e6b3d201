//! Why the obvious integrated representation of a Mackey group algebra is
//! blind, and how the block-diagonal extension over all cocycle powers
//! repairs it.
//!
//! A function concentrated in grade k != 1 integrates to zero against the
//! naive representation even though it is nonzero as a function. The
//! extension applies the k-th twisted left regular representation to the
//! k-th grade and is faithful by rank count.

use num_complex::Complex64;
use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use twisted_gabor::{
    mackey::naive_integrated, Cocycle, ExtendedRepresentation, FiniteAbelianGroup, MackeyFunction,
    MackeyGroup, PhaseSpace, PhaseSubgroup, TwistedElement,
};

fn diagonal_twist(n: u32) -> Cocycle {
    let space = PhaseSpace::new(FiniteAbelianGroup::cyclic(n).unwrap());
    let diagonal = PhaseSubgroup::closure_from_tuples(&space, &[vec![1, 1]]).unwrap();
    Cocycle::heisenberg(&space).restrict(diagonal.elements(), diagonal.group().clone())
}

fn main() {
    let c = diagonal_twist(3);
    let mackey = MackeyGroup::new(&c).unwrap();
    let m = mackey.phase_order();
    let one = Ratio::from_integer(1);
    let mut rng = ChaCha12Rng::seed_from_u64(2024);

    let f = TwistedElement::random(c.group().clone(), one, &mut rng);
    let ghost = MackeyFunction::grade_lift(&f, &mackey, m - 1).unwrap();
    println!(
        "ghost F(x,tau) = tau^{} f(x): nonzero as a function, ||F|| = {:.6}",
        m - 1,
        ghost.l1_norm()
    );

    let extended = ExtendedRepresentation::with_regular_blocks(&mackey, one).unwrap();
    let naive = naive_integrated(&ghost, &extended.blocks()[1]).unwrap();
    let naive_norm = naive.map(|v: Complex64| v.norm()).max();
    println!("naive integrated representation sees: operator entries max {naive_norm:.3e}");

    let seen = extended.operator_norm(&ghost).unwrap();
    println!("extended representation sees:         operator norm {seen:.6}");

    println!();
    println!(
        "extended representation: dimension {}, linearization rank {} of {}",
        extended.dim(),
        extended.linearization_rank().unwrap(),
        mackey.order()
    );
    println!("faithful: {}", extended.is_faithful().unwrap());

    let g = TwistedElement::random(c.group().clone(), one, &mut rng);
    let a = MackeyFunction::embed(&f, &mackey).unwrap();
    let b = MackeyFunction::embed(&g, &mackey).unwrap();
    let lhs = extended.apply(&a.convolve(&b).unwrap()).unwrap();
    let rhs = extended.apply(&a).unwrap() * extended.apply(&b).unwrap();
    let residual = (lhs - rhs).map(|v: Complex64| v.norm()).max();
    println!();
    println!("multiplicativity of the extension on embedded elements: {residual:.3e}");

    let star = extended.apply(&a.involution()).unwrap();
    let adjoint = extended.apply(&a).unwrap().adjoint();
    let residual = (star - adjoint).map(|v: Complex64| v.norm()).max();
    println!("compatibility with the involution: {residual:.3e}");
}
