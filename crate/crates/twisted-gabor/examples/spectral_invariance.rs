//! Spectra measured in different faithful representations coincide, the
//! dyadic norm sequence of a self-adjoint element descends to its operator
//! norm, and both survive the trip through the Mackey group.

use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use twisted_gabor::{
    spectral_harness::{compare_spectra, hulanicki_convergence, transfer_check},
    Cocycle, FiniteAbelianGroup, PhaseSpace, PhaseSubgroup, RepresentationSpec, TwistedElement,
};

fn diagonal_twist(n: u32) -> Cocycle {
    let space = PhaseSpace::new(FiniteAbelianGroup::cyclic(n).unwrap());
    let diagonal = PhaseSubgroup::closure_from_tuples(&space, &[vec![1, 1]]).unwrap();
    Cocycle::heisenberg(&space).restrict(diagonal.elements(), diagonal.group().clone())
}

fn main() {
    let c = diagonal_twist(8);
    let one = Ratio::from_integer(1);
    let left = RepresentationSpec::left_regular("left-regular", &c, one).unwrap();
    let right = RepresentationSpec::right_multiplication("right-multiplication", &c, one).unwrap();
    println!(
        "registered representations: {} (rank {}), {} (rank {})",
        left.name(),
        left.rank(),
        right.name(),
        right.rank()
    );

    let mut rng = ChaCha12Rng::seed_from_u64(5);
    let f = TwistedElement::random(c.group().clone(), one, &mut rng);
    let comparison = compare_spectra(&f, &c, &[&left, &right]).unwrap();
    println!();
    println!(
        "distinct spectrum of a random element ({} points):",
        comparison.reference_distinct.len()
    );
    for rep in &comparison.representations {
        println!(
            "  via {:<22} hausdorff distance {:.3e}",
            rep.name, rep.hausdorff_distance
        );
    }

    let sa = TwistedElement::random_self_adjoint(c.group().clone(), one, &c, &mut rng).unwrap();
    let report = hulanicki_convergence(&sa, &c, &left, 20).unwrap();
    println!();
    println!("dyadic sequence for a self-adjoint element (monotone: {}):", report.monotone);
    for (k, term) in report.sequence.iter().enumerate().step_by(4) {
        println!("  k = {k:>2}: {term:.9}");
    }
    println!(
        "  operator norm {:.9}, relative gap {:.3e}",
        report.operator_norm, report.relative_gap
    );

    let transfer = transfer_check(&sa, &c, 20).unwrap();
    println!();
    println!("transfer through the Mackey group:");
    println!(
        "  radius downstairs {:.9}, radius upstairs {:.9}, gap {:.3e}",
        transfer.radius_base, transfer.radius_mackey, transfer.radius_gap
    );
    println!(
        "  termwise sequence gap {:.3e}, leakage off grade one {:.3e}",
        transfer.max_term_gap, transfer.complement_leakage
    );
    if let Some(part) = transfer.self_adjoint_part {
        println!(
            "  operator norms: {:.9} vs {:.9} (gap {:.3e})",
            part.base_operator_norm, part.mackey_operator_norm, part.norm_gap
        );
    }
}
