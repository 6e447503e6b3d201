//! Arithmetic inside a twisted group algebra: convolution, involution,
//! spectra, and inversion carried out entirely on coefficient vectors.

use num_complex::Complex64;
use num_rational::Ratio;
use twisted_gabor::{Cocycle, FiniteAbelianGroup, PhaseSpace, PhaseSubgroup, TwistedElement};

/// The cyclic group Z_n twisted by the restriction of the Heisenberg
/// cocycle to the diagonal of its phase space, so that
/// `c(x, y) = exp(-2pi i x y / n)`.
fn diagonal_twist(n: u32) -> Cocycle {
    let space = PhaseSpace::new(FiniteAbelianGroup::cyclic(n).unwrap());
    let diagonal = PhaseSubgroup::closure_from_tuples(&space, &[vec![1, 1]]).unwrap();
    Cocycle::heisenberg(&space).restrict(diagonal.elements(), diagonal.group().clone())
}

fn main() {
    let c = diagonal_twist(6);
    let group = c.group().clone();
    let one = Ratio::from_integer(1);

    let f = TwistedElement::new(
        group.clone(),
        one,
        vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(0.4, 0.1),
            Complex64::ZERO,
            Complex64::new(0.0, -0.3),
            Complex64::ZERO,
            Complex64::new(0.2, 0.0),
        ],
    )
    .unwrap();

    println!("f has l1 norm {:.6}", f.l1_norm());
    println!("spectrum of f (eigenvalues of its left regular matrix):");
    for lambda in f.spectrum(&c).unwrap() {
        println!("  {:+.6} {:+.6}i", lambda.re, lambda.im);
    }

    let inv = f.invert(&c).unwrap();
    let unit = TwistedElement::unit(group.clone(), one);
    let residual = (&f.convolve(&inv, &c).unwrap() - &unit).l1_norm();
    println!();
    println!("|| f * f^-1 - unit ||_1 = {residual:.3e}");

    let star = f.involution(&c).unwrap();
    let positive = star.convolve(&f, &c).unwrap();
    println!();
    println!(
        "f^* f is self-adjoint to {:.3e}",
        positive.self_adjointness_deviation(&c).unwrap()
    );
    let root = positive.sqrt_positive(&c).unwrap();
    let back = root.convolve(&root, &c).unwrap();
    let sqrt_residual = (&back - &positive).l1_norm();
    println!("Babylonian square root of f^* f: || b*b - f^*f ||_1 = {sqrt_residual:.3e}");

    println!();
    println!("dyadic radius sequence ||f^(2^k)||^(1/2^k):");
    for (k, term) in f
        .spectral_radius_sequence(&c, 12)
        .unwrap()
        .iter()
        .enumerate()
    {
        println!("  k = {k:>2}: {term:.9}");
    }
    let radius = f
        .spectrum(&c)
        .unwrap()
        .iter()
        .map(|z| z.norm())
        .fold(0.0f64, f64::max);
    println!("  spectral radius from eigenvalues: {radius:.9}");
}
