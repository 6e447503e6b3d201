//! The Mackey group of a cocycle and the grading it induces: untwisting a
//! twisted algebra into an ordinary group algebra, one Fourier grade per
//! power of the cocycle.

use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use twisted_gabor::{
    Cocycle, FiniteAbelianGroup, MackeyFunction, MackeyGroup, PhaseSpace, PhaseSubgroup,
    TwistedElement,
};

fn diagonal_twist(n: u32) -> Cocycle {
    let space = PhaseSpace::new(FiniteAbelianGroup::cyclic(n).unwrap());
    let diagonal = PhaseSubgroup::closure_from_tuples(&space, &[vec![1, 1]]).unwrap();
    Cocycle::heisenberg(&space).restrict(diagonal.elements(), diagonal.group().clone())
}

fn main() {
    let c = diagonal_twist(4);
    let mackey = MackeyGroup::new(&c).unwrap();
    let m = mackey.phase_order();
    println!(
        "Mackey group of the twist on Z_4: order {} = 4 * {m} (phase order {m})",
        mackey.order()
    );

    let a = (1, 0);
    let mut power = a;
    print!("powers of (x=1, t=0): ");
    for _ in 0..7 {
        print!("({},{}) ", power.0, power.1);
        power = mackey.product(power, a);
    }
    println!("({},{})", power.0, power.1);
    let inv = mackey.inverse(a);
    println!("inverse of (1,0) is ({},{})", inv.0, inv.1);

    let one = Ratio::from_integer(1);
    let mut rng = ChaCha12Rng::seed_from_u64(7);
    let f = TwistedElement::random(c.group().clone(), one, &mut rng);
    let lifted = MackeyFunction::embed(&f, &mackey).unwrap();
    println!();
    println!(
        "embedding j(f)(x,tau) = tau f(x): ||j(f)|| = {:.12}, ||f||_1 = {:.12}",
        lifted.l1_norm(),
        f.l1_norm()
    );
    print!("grade masses of j(f): ");
    for k in 0..m {
        print!(" grade {k}: {:.3e} ", lifted.fourier_coefficient(k).l1_norm());
    }
    println!();

    let h = TwistedElement::random(c.group().clone(), one, &mut rng);
    let big_f = MackeyFunction::embed(&f, &mackey).unwrap();
    let big_h = MackeyFunction::embed(&h, &mackey).unwrap();
    let product = big_f.convolve(&big_h).unwrap();
    println!();
    println!("gradewise convolution identity (F*H)_k = F_k x_(c^k) H_k:");
    for k in 0..m {
        let lhs = product.fourier_coefficient(k);
        let rhs = big_f
            .fourier_coefficient(k)
            .convolve(&big_h.fourier_coefficient(k), &c.power(k))
            .unwrap();
        let residual = (&lhs - &rhs).l1_norm();
        println!("  grade {k}: residual {residual:.3e}");
    }

    let twisted_product = f.convolve(&h, &c).unwrap();
    let via_embedding = product.fourier_coefficient(1);
    let transfer = (&twisted_product - &via_embedding).l1_norm();
    println!();
    println!("j(f x h) recovered from grade 1 of j(f)*j(h): residual {transfer:.3e}");
}
