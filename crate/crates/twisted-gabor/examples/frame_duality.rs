//! Canonical dual and tight Gabor atoms computed by inversion inside the
//! twisted algebra over the adjoint lattice, with the direct matrix path
//! used only as a cross-check.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use twisted_gabor::{
    gabor::{canonical_dual_atoms, frame_report, GaborError},
    FiniteAbelianGroup, GaborSystem, PhaseSpace, PhaseSubgroup, Window,
};

fn main() {
    let base = FiniteAbelianGroup::cyclic(6).unwrap();
    let space = PhaseSpace::new(base.clone());
    let lattice = PhaseSubgroup::closure_from_tuples(&space, &[vec![0, 1], vec![3, 0]]).unwrap();
    println!(
        "lattice in Z_6 x dual: {} points, size s = {}",
        lattice.len(),
        lattice.size()
    );

    let mut rng = ChaCha12Rng::seed_from_u64(99);
    let g = Window::random(base.clone(), &mut rng);
    let system = GaborSystem::new(vec![g.clone()], lattice.clone()).unwrap();
    let report = frame_report(&system).unwrap();

    println!(
        "frame bounds: C = {:.6}, D = {:.6}",
        report.bounds.lower, report.bounds.upper
    );
    println!(
        "adjoint lattice: {} points, algebra weight 1/s = {}",
        report.algebra.adjoint().len(),
        report.algebra.weight()
    );

    println!();
    println!("janssen coefficients a_w = <pi(w)g, g> over the adjoint lattice:");
    for (local, &ambient) in report.algebra.adjoint().elements().iter().enumerate() {
        let tuple = space.ambient().tuple_of(ambient);
        let v = report.janssen.coeff(local);
        println!("  w = {tuple:?}: {:+.6} {:+.6}i", v.re, v.im);
    }

    println!();
    println!("residuals of every cross-check:");
    for (name, value) in &report.residuals {
        println!("  {name:<28} {value:.3e}");
    }

    println!();
    println!("atom                l2 norm     S0 norm");
    let rows = [
        ("window", &g, report.s0_norms["window-0"]),
        ("canonical dual", &report.dual_atoms[0], report.s0_norms["dual-0"]),
        ("canonical tight", &report.tight_atoms[0], report.s0_norms["tight-0"]),
    ];
    for (label, atom, s0) in rows {
        println!("  {label:<17} {:.6}    {:.6}", atom.l2_norm(), s0);
    }

    // Critical density with the worst possible window: the frame property
    // genuinely fails and the dual atom request reports the bounds.
    let z4 = FiniteAbelianGroup::cyclic(4).unwrap();
    let space4 = PhaseSpace::new(z4.clone());
    let even = PhaseSubgroup::closure_from_tuples(&space4, &[vec![2, 0], vec![0, 2]]).unwrap();
    let flat = Window::new(z4, vec![Complex64::from(0.5); 4]).unwrap();
    let critical = GaborSystem::new(vec![flat], even).unwrap();
    println!();
    match canonical_dual_atoms(&critical) {
        Err(GaborError::NotAFrame { lower, upper }) => println!(
            "constant window at critical density on Z_4: not a frame ({lower:.2e}, {upper:.2})"
        ),
        other => panic!("expected a frame failure, got {other:?}"),
    }
}
