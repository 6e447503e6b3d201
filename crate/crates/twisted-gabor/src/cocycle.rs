//! Normalized 2-cocycles with values in the circle group.
//!
//! A cocycle on a finite group `G` is a table `c : G × G → T` satisfying
//! `c(x₁,x₂)·c(x₁x₂,x₃) = c(x₁,x₂x₃)·c(x₂,x₃)` together with the
//! normalization `c(x,e) = c(e,x) = 1`. Values are exact [`Phase`]s, so the
//! axioms and the derived identities are verified by rational equality.

use std::sync::Arc;

use num_complex::Complex64;
use num_integer::Integer;
use thiserror::Error;

use crate::finite_group::{FiniteGroup, PhaseSpace};
use crate::phase::Phase;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CocycleDefect {
    #[error("table has {got} entries, expected {expected}")]
    WrongTableSize { expected: usize, got: usize },
    #[error("unit property fails at x = {x}: c(x,e) or c(e,x) ≠ 1")]
    UnitProperty { x: usize },
    #[error("cocycle identity fails at ({x1}, {x2}, {x3})")]
    Associativity { x1: usize, x2: usize, x3: usize },
    #[error("c(x,x⁻¹) ≠ c(x⁻¹,x) at x = {x}")]
    InverseSymmetry { x: usize },
    #[error("c(y,y⁻¹)·conj(c(y⁻¹,x)) ≠ c(y,y⁻¹x) at (y, x) = ({y}, {x})")]
    Reduction { y: usize, x: usize },
}

/// A circle-valued 2-cocycle on a finite group, stored as a dense table of
/// exact phases.
#[derive(Debug, Clone)]
pub struct Cocycle {
    group: Arc<FiniteGroup>,
    table: Vec<Phase>,
}

impl PartialEq for Cocycle {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group)
            && self.table == other.table
    }
}

impl Cocycle {
    /// The constant cocycle `c ≡ 1`.
    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        Cocycle {
            group,
            table: vec![Phase::zero(); n * n],
        }
    }

    /// Builds a cocycle from a row-major table of phases. Only the table
    /// shape is checked here; call [`Cocycle::verify`] for the axioms.
    pub fn from_phases(group: Arc<FiniteGroup>, table: Vec<Phase>) -> Result<Self, CocycleDefect> {
        let n = group.order();
        if table.len() != n * n {
            return Err(CocycleDefect::WrongTableSize {
                expected: n * n,
                got: table.len(),
            });
        }
        Ok(Cocycle { group, table })
    }

    /// The Heisenberg cocycle on the phase space `G × Ĝ`:
    /// `c((x₁,ω₁),(x₂,ω₂)) = conj(⟨x₁, ω₂⟩)`.
    pub fn heisenberg(space: &PhaseSpace) -> Self {
        let group = space.ambient().group().clone();
        let n = group.order();
        let mut table = Vec::with_capacity(n * n);
        for z1 in 0..n {
            let (x1, _) = space.split(z1);
            for z2 in 0..n {
                let (_, w2) = space.split(z2);
                table.push(-space.base().pairing(x1, w2));
            }
        }
        Cocycle { group, table }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn value(&self, x: usize, y: usize) -> Phase {
        self.table[x * self.group.order() + y]
    }

    pub fn value_c(&self, x: usize, y: usize) -> Complex64 {
        self.value(x, y).to_complex()
    }

    /// The pointwise power `cⁿ`, itself a cocycle; `n = -1` is the complex
    /// conjugate used by adjoint-lattice algebras.
    pub fn power(&self, n: i64) -> Self {
        Cocycle {
            group: self.group.clone(),
            table: self.table.iter().map(|&p| p * n).collect(),
        }
    }

    pub fn conjugate(&self) -> Self {
        self.power(-1)
    }

    /// Checks normalization and the cocycle identity over all triples, in
    /// lexicographic order, reporting the first violation.
    pub fn verify(&self) -> Result<(), CocycleDefect> {
        let g = &self.group;
        let e = g.identity();
        for x in 0..g.order() {
            if !self.value(x, e).is_zero() || !self.value(e, x).is_zero() {
                return Err(CocycleDefect::UnitProperty { x });
            }
        }
        for x1 in 0..g.order() {
            for x2 in 0..g.order() {
                let x1x2 = g.op(x1, x2);
                let left_base = self.value(x1, x2);
                for x3 in 0..g.order() {
                    let lhs = left_base + self.value(x1x2, x3);
                    let rhs = self.value(x1, g.op(x2, x3)) + self.value(x2, x3);
                    if lhs != rhs {
                        return Err(CocycleDefect::Associativity { x1, x2, x3 });
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks the derived identities `c(x,x⁻¹) = c(x⁻¹,x)` and
    /// `c(y,y⁻¹)·conj(c(y⁻¹,x)) = c(y,y⁻¹x)`, reporting the first violation.
    pub fn verify_identities(&self) -> Result<(), CocycleDefect> {
        let g = &self.group;
        for x in 0..g.order() {
            if self.value(x, g.inv(x)) != self.value(g.inv(x), x) {
                return Err(CocycleDefect::InverseSymmetry { x });
            }
        }
        for y in 0..g.order() {
            let yi = g.inv(y);
            let head = self.value(y, yi);
            for x in 0..g.order() {
                if head - self.value(yi, x) != self.value(y, g.op(yi, x)) {
                    return Err(CocycleDefect::Reduction { y, x });
                }
            }
        }
        Ok(())
    }

    /// The least `m` with all values in the `m`-th roots of unity, i.e. the
    /// lcm of the orders of the table entries.
    pub fn order(&self) -> i64 {
        self.table.iter().fold(1i64, |m, p| m.lcm(&p.order()))
    }

    /// Restriction to a subgroup. `elements[i]` is the ambient index of the
    /// subgroup's element `i`, and `subgroup` must be the induced group on
    /// exactly that enumeration.
    pub fn restrict(&self, elements: &[usize], subgroup: Arc<FiniteGroup>) -> Self {
        assert_eq!(elements.len(), subgroup.order());
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for &a in elements {
            for &b in elements {
                table.push(self.value(a, b));
            }
        }
        Cocycle {
            group: subgroup,
            table,
        }
    }
}
