//! Finite groups, finite abelian groups with their duals, and subgroups of
//! phase space.
//!
//! The measure contract used throughout the crate: counting measure on a group
//! `G`, weight `1/|G|` per character on the dual, product weight `1/|G|` per
//! point on the phase space `G × Ĝ` (total mass `|G|`), counting measure on a
//! lattice `Δ ⊆ G × Ĝ`, and weight `1/s(Δ)` per point on its adjoint, where
//! `s(Δ) = |G|/|Δ|` is kept as an exact rational.

use std::sync::Arc;

use num_complex::Complex64;
use num_rational::Ratio;
use thiserror::Error;

use crate::phase::Phase;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is not square: {rows} rows but row {bad_row} has {bad_len} entries")]
    TableNotSquare {
        rows: usize,
        bad_row: usize,
        bad_len: usize,
    },
    #[error("table is empty")]
    EmptyTable,
    #[error("table entry at ({row}, {col}) is {value}, out of range for order {order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("associativity fails at ({x1}, {x2}, {x3}): ({x1}·{x2})·{x3} ≠ {x1}·({x2}·{x3})")]
    NotAssociative { x1: usize, x2: usize, x3: usize },
    #[error("tuple has {got} coordinates but the group has {expected} factors")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("cyclic factor moduli must be positive")]
    ZeroModulus,
    #[error("element index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
}

/// A finite group given by its multiplication table.
///
/// Elements are the indices `0..order`. Construction through [`FiniteGroup::from_cayley`]
/// checks the full set of group axioms and reports the first violation found.
#[derive(Debug)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.identity == other.identity && self.mul == other.mul
    }
}

impl FiniteGroup {
    /// Validates a multiplication table and builds the group.
    ///
    /// The checks run in a fixed order: table shape, entry range, existence of
    /// a two-sided identity, two-sided inverses, then associativity over all
    /// triples in lexicographic order. The first violation is reported.
    pub fn from_cayley(table: &[Vec<usize>]) -> Result<Arc<Self>, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::EmptyTable);
        }
        for (r, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::TableNotSquare {
                    rows: order,
                    bad_row: r,
                    bad_len: row.len(),
                });
            }
        }
        let mut mul = vec![0usize; order * order];
        for (r, row) in table.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(GroupError::EntryOutOfRange {
                        row: r,
                        col: c,
                        value: v,
                        order,
                    });
                }
                mul[r * order + c] = v;
            }
        }
        let at = |a: usize, b: usize| mul[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inv = vec![0usize; order];
        for a in 0..order {
            let b = (0..order)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or(GroupError::NoInverse { element: a })?;
            inv[a] = b;
        }
        for x1 in 0..order {
            for x2 in 0..order {
                for x3 in 0..order {
                    if at(at(x1, x2), x3) != at(x1, at(x2, x3)) {
                        return Err(GroupError::NotAssociative { x1, x2, x3 });
                    }
                }
            }
        }
        Ok(Arc::new(FiniteGroup {
            order,
            mul,
            inv,
            identity,
        }))
    }

    /// Builds a group from a flat table whose axioms are guaranteed by the
    /// caller's construction. Inverses are derived from the table.
    pub(crate) fn from_tables(order: usize, mul: Vec<usize>, identity: usize) -> Arc<Self> {
        debug_assert_eq!(mul.len(), order * order);
        let mut inv = vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if mul[a * order + b] == identity {
                    inv[a] = b;
                }
            }
        }
        debug_assert!(inv.iter().all(|&b| b != usize::MAX));
        Arc::new(FiniteGroup {
            order,
            mul,
            inv,
            identity,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.op(a, b) == self.op(b, a)))
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }
}

/// A finite abelian group presented as a product of cyclic factors
/// `Z_{N_1} × … × Z_{N_d}`.
///
/// Elements are indexed `0..order` in lexicographic order of their residue
/// tuples, with the leftmost coordinate most significant. The dual group is
/// identified with the group itself through [`FiniteAbelianGroup::pairing`].
#[derive(Debug, Clone)]
pub struct FiniteAbelianGroup {
    factors: Vec<u32>,
    strides: Vec<usize>,
    group: Arc<FiniteGroup>,
}

impl PartialEq for FiniteAbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl FiniteAbelianGroup {
    pub fn new(factors: &[u32]) -> Result<Self, GroupError> {
        if factors.is_empty() || factors.contains(&0) {
            return Err(GroupError::ZeroModulus);
        }
        let order: usize = factors.iter().map(|&n| n as usize).product();
        let mut strides = vec![1usize; factors.len()];
        for j in (0..factors.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * factors[j + 1] as usize;
        }
        let mut mul = vec![0usize; order * order];
        for a in 0..order {
            for b in 0..order {
                let mut idx = 0usize;
                for j in 0..factors.len() {
                    let n = factors[j] as usize;
                    let xa = a / strides[j] % n;
                    let xb = b / strides[j] % n;
                    idx += (xa + xb) % n * strides[j];
                }
                mul[a * order + b] = idx;
            }
        }
        let group = FiniteGroup::from_tables(order, mul, 0);
        Ok(FiniteAbelianGroup {
            factors: factors.to_vec(),
            strides,
            group,
        })
    }

    pub fn cyclic(n: u32) -> Result<Self, GroupError> {
        Self::new(&[n])
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    /// The group as a plain multiplication-table group, written additively
    /// through [`FiniteGroup::op`].
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Index of a residue tuple; coordinates are reduced modulo the factors.
    pub fn index_of(&self, tuple: &[i64]) -> Result<usize, GroupError> {
        if tuple.len() != self.factors.len() {
            return Err(GroupError::DimensionMismatch {
                got: tuple.len(),
                expected: self.factors.len(),
            });
        }
        let mut idx = 0usize;
        for (j, &x) in tuple.iter().enumerate() {
            let n = self.factors[j] as i64;
            idx += x.rem_euclid(n) as usize * self.strides[j];
        }
        Ok(idx)
    }

    pub fn tuple_of(&self, index: usize) -> Vec<i64> {
        self.factors
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| (index / s % n as usize) as i64)
            .collect()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.group.op(a, b)
    }

    pub fn neg(&self, a: usize) -> usize {
        self.group.inv(a)
    }

    /// The dual pairing `⟨x, k⟩ = Σ_j k_j x_j / N_j` as an exact phase, with
    /// both the point and the character given by element index.
    pub fn pairing(&self, x: usize, k: usize) -> Phase {
        let mut p = Phase::zero();
        for (j, &n) in self.factors.iter().enumerate() {
            let xj = (x / self.strides[j] % n as usize) as i64;
            let kj = (k / self.strides[j] % n as usize) as i64;
            p = p + Phase::new(xj * kj, n as i64);
        }
        p
    }

    pub fn pairing_tuples(&self, x: &[i64], k: &[i64]) -> Result<Phase, GroupError> {
        let xi = self.index_of(x)?;
        let ki = self.index_of(k)?;
        Ok(self.pairing(xi, ki))
    }

    pub fn pairing_c(&self, x: usize, k: usize) -> Complex64 {
        self.pairing(x, k).to_complex()
    }

    /// `f̂(k) = Σ_x f(x) · conj(⟨x, k⟩)`, indexed like the group itself.
    ///
    /// With weight `1/|G|` on the dual this satisfies
    /// `Σ_x |f(x)|² = (1/|G|) Σ_k |f̂(k)|²`.
    pub fn fourier_transform(&self, f: &[Complex64]) -> Vec<Complex64> {
        let n = self.order();
        assert_eq!(f.len(), n);
        (0..n)
            .map(|k| {
                (0..n)
                    .map(|x| f[x] * self.pairing_c(x, k).conj())
                    .sum::<Complex64>()
            })
            .collect()
    }
}

/// The phase space `G × Ĝ` of a finite abelian group, itself a finite abelian
/// group with the factors of `G` doubled.
///
/// A phase-space index `z` splits as `z = x·|G| + k` with `x` the translation
/// and `k` the modulation index. Each point carries weight `1/|G|`, so the
/// total mass of the phase space is `|G|`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpace {
    base: FiniteAbelianGroup,
    ambient: FiniteAbelianGroup,
}

impl PhaseSpace {
    pub fn new(base: FiniteAbelianGroup) -> Self {
        let mut doubled = base.factors().to_vec();
        doubled.extend_from_slice(base.factors());
        let ambient = FiniteAbelianGroup::new(&doubled).expect("factors already validated");
        PhaseSpace { base, ambient }
    }

    pub fn base(&self) -> &FiniteAbelianGroup {
        &self.base
    }

    pub fn ambient(&self) -> &FiniteAbelianGroup {
        &self.ambient
    }

    pub fn order(&self) -> usize {
        self.ambient.order()
    }

    /// Phase-space index of the point `(x, k)` given as residue tuples.
    pub fn point(&self, x: &[i64], k: &[i64]) -> Result<usize, GroupError> {
        let xi = self.base.index_of(x)?;
        let ki = self.base.index_of(k)?;
        Ok(self.combine(xi, ki))
    }

    pub fn combine(&self, x: usize, k: usize) -> usize {
        x * self.base.order() + k
    }

    /// Splits a phase-space index into `(translation, modulation)`.
    pub fn split(&self, z: usize) -> (usize, usize) {
        (z / self.base.order(), z % self.base.order())
    }

    /// Haar weight per phase-space point, `1/|G|`.
    pub fn point_weight(&self) -> Ratio<i64> {
        Ratio::new(1, self.base.order() as i64)
    }
}

/// A subgroup of a phase space, listed in ascending index order, together with
/// the Haar weight its points carry in summations.
#[derive(Debug, Clone)]
pub struct PhaseSubgroup {
    space: PhaseSpace,
    elements: Vec<usize>,
    generators: Vec<usize>,
    weight: Ratio<i64>,
    group: Arc<FiniteGroup>,
    position: Vec<Option<usize>>,
}

impl PhaseSubgroup {
    /// Closure of a set of phase-space points under addition. An empty
    /// generator list yields the trivial subgroup.
    ///
    /// The subgroup carries counting measure; adjoints built from it carry
    /// weight `1/s(Δ)` instead.
    pub fn closure(space: &PhaseSpace, generators: &[usize]) -> Result<Self, GroupError> {
        let ambient_order = space.order();
        for &g in generators {
            if g >= ambient_order {
                return Err(GroupError::IndexOutOfRange {
                    index: g,
                    order: ambient_order,
                });
            }
        }
        let mut member = vec![false; ambient_order];
        member[0] = true;
        let mut frontier: Vec<usize> = vec![0];
        for &g in generators {
            if !member[g] {
                member[g] = true;
                frontier.push(g);
            }
        }
        while let Some(a) = frontier.pop() {
            for &g in generators {
                let b = space.ambient().add(a, g);
                if !member[b] {
                    member[b] = true;
                    frontier.push(b);
                }
            }
        }
        let elements: Vec<usize> = (0..ambient_order).filter(|&z| member[z]).collect();
        Ok(Self::from_elements(
            space.clone(),
            elements,
            generators.to_vec(),
            Ratio::from_integer(1),
        ))
    }

    /// Closure from points given as flat residue tuples of length `2d`.
    pub fn closure_from_tuples(space: &PhaseSpace, points: &[Vec<i64>]) -> Result<Self, GroupError> {
        let gens = points
            .iter()
            .map(|t| space.ambient().index_of(t))
            .collect::<Result<Vec<_>, _>>()?;
        Self::closure(space, &gens)
    }

    /// The full phase space as a lattice.
    pub fn full(space: &PhaseSpace) -> Self {
        let elements: Vec<usize> = (0..space.order()).collect();
        let generators = elements.clone();
        Self::from_elements(space.clone(), elements, generators, Ratio::from_integer(1))
    }

    pub(crate) fn from_elements(
        space: PhaseSpace,
        elements: Vec<usize>,
        generators: Vec<usize>,
        weight: Ratio<i64>,
    ) -> Self {
        let n = elements.len();
        let mut position = vec![None; space.order()];
        for (local, &z) in elements.iter().enumerate() {
            position[z] = Some(local);
        }
        let mut mul = vec![0usize; n * n];
        for (i, &a) in elements.iter().enumerate() {
            for (j, &b) in elements.iter().enumerate() {
                let sum = space.ambient().add(a, b);
                mul[i * n + j] = position[sum].expect("subgroup closed under addition");
            }
        }
        let identity = position[0].expect("subgroup contains the identity");
        let group = FiniteGroup::from_tables(n, mul, identity);
        PhaseSubgroup {
            space,
            elements,
            generators,
            weight,
            group,
            position,
        }
    }

    pub fn space(&self) -> &PhaseSpace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Ambient phase-space indices of the subgroup, ascending.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn contains(&self, z: usize) -> bool {
        z < self.position.len() && self.position[z].is_some()
    }

    pub fn local_index(&self, z: usize) -> Option<usize> {
        self.position.get(z).copied().flatten()
    }

    pub fn ambient_index(&self, local: usize) -> usize {
        self.elements[local]
    }

    /// The lattice size `s(Δ) = |G| / |Δ|` as an exact rational.
    pub fn size(&self) -> Ratio<i64> {
        Ratio::new(self.space.base().order() as i64, self.len() as i64)
    }

    /// Haar weight per point carried by this lattice in summations.
    pub fn weight(&self) -> Ratio<i64> {
        self.weight
    }

    /// The subgroup as a group in its own right; element `i` of the group is
    /// `self.elements()[i]`.
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm_compose(a: &[usize; 3], b: &[usize; 3]) -> [usize; 3] {
        [a[b[0]], a[b[1]], a[b[2]]]
    }

    /// S₃ with elements enumerated as permutations of {0,1,2} in lexicographic
    /// one-line order, composed as (a∘b)(x) = a(b(x)).
    fn s3_table() -> Vec<Vec<usize>> {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let index = |p: &[usize; 3]| perms.iter().position(|q| q == p).unwrap();
        perms
            .iter()
            .map(|a| perms.iter().map(|b| index(&perm_compose(a, b))).collect())
            .collect()
    }

    #[test]
    fn s3_cayley_table_is_a_group() {
        let g = FiniteGroup::from_cayley(&s3_table()).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.identity(), 0);
        assert!(!g.is_abelian());
        assert_eq!(g.op(g.inv(3), 3), 0);
    }

    #[test]
    fn corrupted_table_reports_first_bad_triple() {
        // Z₄ with T[2][1] and T[2][3] swapped keeps the identity row/column
        // and all inverses but breaks associativity, first at (1, 1, 1).
        let mut t: Vec<Vec<usize>> = (0..4)
            .map(|a| (0..4).map(|b| (a + b) % 4).collect())
            .collect();
        t[2].swap(1, 3);
        let err = FiniteGroup::from_cayley(&t).unwrap_err();
        assert_eq!(err, GroupError::NotAssociative { x1: 1, x2: 1, x3: 1 });
    }

    #[test]
    fn missing_identity_is_reported() {
        let t = vec![vec![1, 0], vec![1, 0]];
        assert_eq!(FiniteGroup::from_cayley(&t).unwrap_err(), GroupError::NoIdentity);
    }

    #[test]
    fn out_of_range_entry_is_reported() {
        let t = vec![vec![0, 1], vec![1, 7]];
        assert_eq!(
            FiniteGroup::from_cayley(&t).unwrap_err(),
            GroupError::EntryOutOfRange {
                row: 1,
                col: 1,
                value: 7,
                order: 2
            }
        );
    }

    #[test]
    fn abelian_indexing_is_lexicographic() {
        let g = FiniteAbelianGroup::new(&[2, 3]).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.index_of(&[1, 2]).unwrap(), 5);
        assert_eq!(g.tuple_of(4), vec![1, 1]);
        assert_eq!(g.index_of(&[-1, 5]).unwrap(), g.index_of(&[1, 2]).unwrap());
        assert_eq!(g.add(4, 5), g.index_of(&[0, 0]).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let g = FiniteAbelianGroup::new(&[2, 3]).unwrap();
        assert_eq!(
            g.index_of(&[1]).unwrap_err(),
            GroupError::DimensionMismatch { got: 1, expected: 2 }
        );
        assert!(g.pairing_tuples(&[1, 0], &[1, 0, 0]).is_err());
    }

    #[test]
    fn pairing_on_z4_hits_the_imaginary_unit() {
        let g = FiniteAbelianGroup::cyclic(4).unwrap();
        assert_eq!(g.pairing(1, 1), Phase::new(1, 4));
        let c = g.pairing_c(1, 1);
        assert!((c - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn pairing_is_exactly_bilinear() {
        let g = FiniteAbelianGroup::new(&[4, 6]).unwrap();
        for x in 0..g.order() {
            for y in 0..g.order() {
                for k in 0..g.order() {
                    assert_eq!(
                        g.pairing(g.add(x, y), k),
                        g.pairing(x, k) + g.pairing(y, k)
                    );
                    assert_eq!(
                        g.pairing(x, g.add(k, y)),
                        g.pairing(x, k) + g.pairing(x, y)
                    );
                }
            }
        }
    }

    #[test]
    fn plancherel_holds_with_dual_weight() {
        let g = FiniteAbelianGroup::new(&[3, 4]).unwrap();
        let f: Vec<Complex64> = (0..g.order())
            .map(|x| Complex64::new(x as f64 * 0.3 - 1.0, (x * x % 7) as f64 * 0.1))
            .collect();
        let fhat = g.fourier_transform(&f);
        let time: f64 = f.iter().map(|v| v.norm_sqr()).sum();
        let freq: f64 = fhat.iter().map(|v| v.norm_sqr()).sum::<f64>() / g.order() as f64;
        assert!((time - freq).abs() < 1e-10 * time.max(1.0));
    }

    #[test]
    fn phase_space_split_and_combine_round_trip() {
        let space = PhaseSpace::new(FiniteAbelianGroup::new(&[2, 3]).unwrap());
        assert_eq!(space.order(), 36);
        assert_eq!(space.point_weight(), Ratio::new(1, 6));
        for z in 0..space.order() {
            let (x, k) = space.split(z);
            assert_eq!(space.combine(x, k), z);
        }
        let z = space.point(&[1, 2], &[0, 1]).unwrap();
        let (x, k) = space.split(z);
        assert_eq!(space.base().tuple_of(x), vec![1, 2]);
        assert_eq!(space.base().tuple_of(k), vec![0, 1]);
    }

    #[test]
    fn closure_of_even_lattice_in_z4_has_order_four() {
        let space = PhaseSpace::new(FiniteAbelianGroup::cyclic(4).unwrap());
        let lat = PhaseSubgroup::closure_from_tuples(&space, &[vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(lat.len(), 4);
        assert_eq!(lat.size(), Ratio::from_integer(1));
        let pts: Vec<Vec<i64>> = lat
            .elements()
            .iter()
            .map(|&z| space.ambient().tuple_of(z))
            .collect();
        assert_eq!(pts, vec![vec![0, 0], vec![0, 2], vec![2, 0], vec![2, 2]]);
    }

    #[test]
    fn empty_generator_list_gives_trivial_subgroup() {
        let space = PhaseSpace::new(FiniteAbelianGroup::cyclic(4).unwrap());
        let lat = PhaseSubgroup::closure(&space, &[]).unwrap();
        assert_eq!(lat.elements(), &[0]);
        assert_eq!(lat.size(), Ratio::from_integer(4));
    }

    #[test]
    fn subgroup_group_structure_matches_ambient_addition() {
        let space = PhaseSpace::new(FiniteAbelianGroup::cyclic(6).unwrap());
        let lat = PhaseSubgroup::closure_from_tuples(&space, &[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(lat.len(), 6);
        let g = lat.group();
        for i in 0..lat.len() {
            for j in 0..lat.len() {
                let ambient_sum = space
                    .ambient()
                    .add(lat.ambient_index(i), lat.ambient_index(j));
                assert_eq!(lat.ambient_index(g.op(i, j)), ambient_sum);
            }
        }
    }

    #[test]
    fn generator_index_out_of_range_is_reported() {
        let space = PhaseSpace::new(FiniteAbelianGroup::cyclic(2).unwrap());
        assert!(matches!(
            PhaseSubgroup::closure(&space, &[99]),
            Err(GroupError::IndexOutOfRange { index: 99, order: 4 })
        ));
    }
}
