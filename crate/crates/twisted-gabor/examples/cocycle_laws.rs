//! Builds 2-cocycles on small groups and checks the algebraic laws they
//! must satisfy, including the inverse-symmetry identities that the twisted
//! involution depends on.

use std::sync::Arc;
use twisted_gabor::{Cocycle, FiniteAbelianGroup, Phase, PhaseSpace};

fn main() {
    for n in [2u32, 3, 4, 6, 8] {
        let base = FiniteAbelianGroup::cyclic(n).unwrap();
        let space = PhaseSpace::new(base);
        let c = Cocycle::heisenberg(&space);
        c.verify().expect("cocycle laws hold");
        c.verify_identities().expect("inverse symmetry holds");
        println!(
            "heisenberg on Z_{n} x dual: group order {:>3}, cocycle order {}",
            space.order(),
            c.order()
        );
    }

    let z4 = FiniteAbelianGroup::cyclic(4).unwrap();
    let space = PhaseSpace::new(z4);
    let c = Cocycle::heisenberg(&space);
    let z1 = space.point(&[1], &[0]).unwrap();
    let z2 = space.point(&[0], &[1]).unwrap();
    println!();
    println!("asymmetry that drives everything downstream:");
    println!("  c((1,0),(0,1)) = {}", c.value(z1, z2));
    println!("  c((0,1),(1,0)) = {}", c.value(z2, z1));

    println!();
    println!("powers of the cocycle:");
    for k in 0..=4 {
        println!("  c^{k} has order {}", c.power(k).order());
    }

    let z2_group = FiniteAbelianGroup::cyclic(2).unwrap();
    let bad = vec![Phase::zero(), Phase::half(), Phase::zero(), Phase::half()];
    let broken = Cocycle::from_phases(Arc::clone(z2_group.group()), bad).unwrap();
    println!();
    match broken.verify() {
        Ok(()) => unreachable!("the table above is not normalized"),
        Err(defect) => println!("broken table rejected: {defect}"),
    }
}
