//! The Mackey group of a cocycle and the grading of its `L¹` algebra.
//!
//! For a cocycle `c` of order `m` on a finite group `G`, the circle factor of
//! the extension `G_c = G × T` discretizes to the `m`-th roots of unity
//! without losing any products:
//!
//! ```text
//! (x₁, τ₁)(x₂, τ₂) = (x₁x₂, τ₁ τ₂ conj(c(x₁, x₂)))
//! (x, τ)⁻¹        = (x⁻¹, conj(τ) c(x⁻¹, x))
//! ```
//!
//! Functions on `G_c` decompose into Fourier grades
//! `F_k(x) = (1/m) Σ_t F(x, τ_t) τ_t^{-k}`; plain convolution on `G_c` acts
//! gradewise as the `c^k`-twisted convolution of the grade-`k` parts, and
//! `j(f)(x, τ) = τ f(x)` embeds `ℓ¹(G, c)` isometrically onto grade one.

use std::sync::{Arc, OnceLock};

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use rand::Rng;
use thiserror::Error;

use crate::cocycle::{Cocycle, CocycleDefect};
use crate::finite_group::FiniteGroup;
use crate::linalg;
use crate::phase::Phase;
use crate::spectral_harness::{RepresentationError, RepresentationSpec, Side};
use crate::twisted_algebra::{dyadic_radius_sequence, AlgebraError, Scalable, TwistedElement};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MackeyError {
    #[error("cocycle is not valid: {0}")]
    Cocycle(#[from] CocycleDefect),
    #[error("function lives over a different Mackey group")]
    GroupMismatch,
    #[error("functions carry different base weights: {left} and {right}")]
    WeightMismatch { left: Ratio<i64>, right: Ratio<i64> },
    #[error("base element does not match the Mackey group's base")]
    BaseMismatch,
    #[error("value vector has {got} entries, the Mackey group has order {expected}")]
    ValueCount { expected: usize, got: usize },
    #[error("expected one grade per residue, {expected} in total, got {got}")]
    GradeCount { expected: usize, got: usize },
    #[error("block {k} does not represent the algebra twisted by the k-th cocycle power")]
    BlockCocycle { k: usize },
    #[error("block {k} carries weight {got}, expected {expected}")]
    BlockWeight {
        k: usize,
        expected: Ratio<i64>,
        got: Ratio<i64>,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Representation(#[from] RepresentationError),
}

/// The extension group `G_c` with its circle factor discretized to the
/// `m`-th roots of unity, `m` being the cocycle order.
///
/// Element `(x, t)` denotes `(x, e^{2πit/m})` and is indexed as `x·m + t`.
#[derive(Debug)]
pub struct MackeyGroup {
    base: Arc<FiniteGroup>,
    cocycle: Cocycle,
    m: i64,
    units: Vec<i64>,
    group: Arc<FiniteGroup>,
    trivial: OnceLock<Cocycle>,
}

impl MackeyGroup {
    /// Verifies the cocycle and builds the extension.
    pub fn new(cocycle: &Cocycle) -> Result<Arc<Self>, MackeyError> {
        cocycle.verify()?;
        let base = cocycle.group().clone();
        let n = base.order();
        let m = cocycle.order();
        let mm = m as usize;
        let mut units = vec![0i64; n * n];
        for x in 0..n {
            for y in 0..n {
                units[x * n + y] = cocycle.value(x, y).numer_for_order(m);
            }
        }
        let order = n * mm;
        let mut mul = vec![0usize; order * order];
        for x1 in 0..n {
            for t1 in 0..mm {
                let a = x1 * mm + t1;
                for x2 in 0..n {
                    let u = units[x1 * n + x2];
                    let x12 = base.op(x1, x2);
                    for t2 in 0..mm {
                        let b = x2 * mm + t2;
                        let t = (t1 as i64 + t2 as i64 - u).rem_euclid(m) as usize;
                        mul[a * order + b] = x12 * mm + t;
                    }
                }
            }
        }
        let identity = base.identity() * mm;
        let group = FiniteGroup::from_tables(order, mul, identity);
        Ok(Arc::new(MackeyGroup {
            base,
            cocycle: cocycle.clone(),
            m,
            units,
            group,
            trivial: OnceLock::new(),
        }))
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    /// The discretization order `m` of the circle factor.
    pub fn phase_order(&self) -> i64 {
        self.m
    }

    /// `G_c` as a plain multiplication-table group of order `|G|·m`.
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn element(&self, x: usize, t: i64) -> usize {
        assert!(x < self.base.order());
        x * self.m as usize + t.rem_euclid(self.m) as usize
    }

    pub fn split(&self, index: usize) -> (usize, i64) {
        (index / self.m as usize, (index % self.m as usize) as i64)
    }

    /// The group law on pairs `(x, t)`.
    pub fn product(&self, a: (usize, i64), b: (usize, i64)) -> (usize, i64) {
        let u = self.units[a.0 * self.base.order() + b.0];
        (
            self.base.op(a.0, b.0),
            (a.1 + b.1 - u).rem_euclid(self.m),
        )
    }

    pub fn inverse(&self, a: (usize, i64)) -> (usize, i64) {
        let xi = self.base.inv(a.0);
        let u = self.units[xi * self.base.order() + a.0];
        (xi, (u - a.1).rem_euclid(self.m))
    }

    /// The root of unity `τ_t = e^{2πit/m}` as an exact phase.
    pub fn phase_of(&self, t: i64) -> Phase {
        Phase::new(t, self.m)
    }

    pub(crate) fn trivial_cocycle(&self) -> &Cocycle {
        self.trivial
            .get_or_init(|| Cocycle::trivial(self.group.clone()))
    }
}

impl PartialEq for MackeyGroup {
    fn eq(&self, other: &Self) -> bool {
        self.cocycle == other.cocycle
    }
}

/// A function on a Mackey group, i.e. an element of `L¹(G_c)` under plain
/// (untwisted) convolution with Haar weight `base_weight/m` per point.
#[derive(Debug, Clone)]
pub struct MackeyFunction {
    mackey: Arc<MackeyGroup>,
    base_weight: Ratio<i64>,
    values: Vec<Complex64>,
}

impl MackeyFunction {
    pub fn new(
        mackey: Arc<MackeyGroup>,
        base_weight: Ratio<i64>,
        values: Vec<Complex64>,
    ) -> Result<Self, MackeyError> {
        if values.len() != mackey.order() {
            return Err(MackeyError::ValueCount {
                expected: mackey.order(),
                got: values.len(),
            });
        }
        Ok(MackeyFunction {
            mackey,
            base_weight,
            values,
        })
    }

    pub fn zero(mackey: Arc<MackeyGroup>, base_weight: Ratio<i64>) -> Self {
        let n = mackey.order();
        MackeyFunction {
            mackey,
            base_weight,
            values: vec![Complex64::ZERO; n],
        }
    }

    pub fn random<R: Rng + ?Sized>(
        mackey: Arc<MackeyGroup>,
        base_weight: Ratio<i64>,
        rng: &mut R,
    ) -> Self {
        let values = (0..mackey.order())
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        MackeyFunction {
            mackey,
            base_weight,
            values,
        }
    }

    /// The grade-`k` lift `F(x, τ) = f(x) τ^k`.
    pub fn grade_lift(
        f: &TwistedElement,
        mackey: &Arc<MackeyGroup>,
        k: i64,
    ) -> Result<Self, MackeyError> {
        if f.group() != mackey.base() {
            return Err(MackeyError::BaseMismatch);
        }
        let m = mackey.phase_order();
        let mut values = Vec::with_capacity(mackey.order());
        for x in 0..mackey.base().order() {
            let fx = f.coeff(x);
            for t in 0..m {
                values.push(fx * Phase::new(t * k, m).to_complex());
            }
        }
        Ok(MackeyFunction {
            mackey: mackey.clone(),
            base_weight: f.weight(),
            values,
        })
    }

    /// The canonical embedding `j(f)(x, τ) = τ f(x)` onto grade one.
    pub fn embed(f: &TwistedElement, mackey: &Arc<MackeyGroup>) -> Result<Self, MackeyError> {
        Self::grade_lift(f, mackey, 1)
    }

    /// Reassembles `F(x, τ) = Σ_k F_k(x) τ^k` from its grades.
    pub fn from_grades(
        mackey: &Arc<MackeyGroup>,
        grades: &[TwistedElement],
    ) -> Result<Self, MackeyError> {
        let m = mackey.phase_order();
        if grades.len() != m as usize {
            return Err(MackeyError::GradeCount {
                expected: m as usize,
                got: grades.len(),
            });
        }
        let base_weight = grades[0].weight();
        for g in grades {
            if g.group() != mackey.base() {
                return Err(MackeyError::BaseMismatch);
            }
            if g.weight() != base_weight {
                return Err(MackeyError::WeightMismatch {
                    left: base_weight,
                    right: g.weight(),
                });
            }
        }
        let mut values = Vec::with_capacity(mackey.order());
        for x in 0..mackey.base().order() {
            for t in 0..m {
                let mut v = Complex64::ZERO;
                for (k, g) in grades.iter().enumerate() {
                    v += g.coeff(x) * Phase::new(t * k as i64, m).to_complex();
                }
                values.push(v);
            }
        }
        Ok(MackeyFunction {
            mackey: mackey.clone(),
            base_weight,
            values,
        })
    }

    pub fn mackey(&self) -> &Arc<MackeyGroup> {
        &self.mackey
    }

    pub fn base_weight(&self) -> Ratio<i64> {
        self.base_weight
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, x: usize, t: i64) -> Complex64 {
        self.values[self.mackey.element(x, t)]
    }

    /// Haar weight per point of `G_c`, `base_weight/m`.
    pub fn point_weight(&self) -> Ratio<i64> {
        self.base_weight / Ratio::from_integer(self.mackey.phase_order())
    }

    pub fn l1_norm(&self) -> f64 {
        let w = self.point_weight().to_f64().expect("finite weight");
        w * self.values.iter().map(|v| v.norm()).sum::<f64>()
    }

    /// The grade-`k` Fourier coefficient
    /// `F_k(x) = (1/m) Σ_t F(x, τ_t) τ_t^{-k}`, an element of `ℓ¹(G, c^k)`.
    pub fn fourier_coefficient(&self, k: i64) -> TwistedElement {
        let m = self.mackey.phase_order();
        let n = self.mackey.base().order();
        let coeffs = (0..n)
            .map(|x| {
                let mut acc = Complex64::ZERO;
                for t in 0..m {
                    acc += self.value(x, t) * Phase::new(-t * k, m).to_complex();
                }
                acc / m as f64
            })
            .collect();
        TwistedElement::new(self.mackey.base().clone(), self.base_weight, coeffs)
            .expect("coefficient count matches base order")
    }

    fn check_compatible(&self, other: &Self) -> Result<(), MackeyError> {
        if !(Arc::ptr_eq(&self.mackey, &other.mackey) || self.mackey == other.mackey) {
            return Err(MackeyError::GroupMismatch);
        }
        if self.base_weight != other.base_weight {
            return Err(MackeyError::WeightMismatch {
                left: self.base_weight,
                right: other.base_weight,
            });
        }
        Ok(())
    }

    /// Plain group convolution on `G_c` with Haar weight `base_weight/m`; the
    /// twist is carried entirely by the group law.
    pub fn convolve(&self, rhs: &Self) -> Result<Self, MackeyError> {
        self.check_compatible(rhs)?;
        let g = self.mackey.group();
        let w = self.point_weight().to_f64().expect("finite weight");
        let mut values = vec![Complex64::ZERO; g.order()];
        for a in 0..g.order() {
            let fa = self.values[a];
            if fa == Complex64::ZERO {
                continue;
            }
            for b in 0..g.order() {
                let hb = rhs.values[b];
                if hb == Complex64::ZERO {
                    continue;
                }
                values[g.op(a, b)] += w * fa * hb;
            }
        }
        Ok(MackeyFunction {
            mackey: self.mackey.clone(),
            base_weight: self.base_weight,
            values,
        })
    }

    /// The involution `F*(z) = conj(F(z⁻¹))` of `L¹(G_c)`.
    pub fn involution(&self) -> Self {
        let g = self.mackey.group();
        let values = (0..g.order())
            .map(|z| self.values[g.inv(z)].conj())
            .collect();
        MackeyFunction {
            mackey: self.mackey.clone(),
            base_weight: self.base_weight,
            values,
        }
    }

    /// The same data as an element of the trivially twisted algebra over the
    /// multiplication-table form of `G_c`.
    pub fn as_twisted(&self) -> TwistedElement {
        TwistedElement::new(
            self.mackey.group().clone(),
            self.point_weight(),
            self.values.clone(),
        )
        .expect("value count matches group order")
    }

    /// Matrix of left convolution by this function on `ℓ²(G_c)`.
    pub fn left_regular_matrix(&self) -> DMatrix<Complex64> {
        self.as_twisted()
            .left_regular_matrix(self.mackey.trivial_cocycle())
            .expect("trivial cocycle lives over the Mackey group")
    }

    /// The dyadic sequence `‖F^{2^k}‖₁^{1/2^k}` in `L¹(G_c)`.
    pub fn spectral_radius_sequence(&self, k_max: usize) -> Result<Vec<f64>, MackeyError> {
        dyadic_radius_sequence(self, k_max, MackeyFunction::l1_norm, |f| f.convolve(f))
    }
}

impl Scalable for MackeyFunction {
    fn scale_by(&self, s: f64) -> Self {
        MackeyFunction {
            mackey: self.mackey.clone(),
            base_weight: self.base_weight,
            values: self.values.iter().map(|&v| v * s).collect(),
        }
    }
}

/// Orthogonal projector of `ℓ²(G_c)` onto the grade-`k` subspace
/// `{v : v(x, τ) = g(x) τ^k}`.
pub fn grade_projector(mackey: &MackeyGroup, k: i64) -> DMatrix<Complex64> {
    let m = mackey.phase_order();
    let n = mackey.order();
    DMatrix::from_fn(n, n, |a, b| {
        let (xa, ta) = mackey.split(a);
        let (xb, tb) = mackey.split(b);
        if xa != xb {
            Complex64::ZERO
        } else {
            Phase::new((ta - tb) * k, m).to_complex() / m as f64
        }
    })
}

/// The block-diagonal representation `π̃(F) = ⊕_k π^{(k)}(F_k)` of `L¹(G_c)`,
/// one verified block per grade.
pub struct ExtendedRepresentation {
    mackey: Arc<MackeyGroup>,
    blocks: Vec<RepresentationSpec>,
    offsets: Vec<usize>,
    dim: usize,
}

impl ExtendedRepresentation {
    /// Uses the left regular representation of `ℓ¹(G, c^k)` for every grade.
    pub fn with_regular_blocks(
        mackey: &Arc<MackeyGroup>,
        weight: Ratio<i64>,
    ) -> Result<Self, MackeyError> {
        let m = mackey.phase_order();
        let blocks = (0..m)
            .map(|k| {
                RepresentationSpec::left_regular(
                    format!("left-regular-grade-{k}"),
                    &mackey.cocycle().power(k),
                    weight,
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(mackey.clone(), blocks)
    }

    /// Assembles a block-diagonal representation from one verified block per
    /// grade; block `k` must represent `ℓ¹(G, c^k)`.
    pub fn new(
        mackey: Arc<MackeyGroup>,
        blocks: Vec<RepresentationSpec>,
    ) -> Result<Self, MackeyError> {
        let m = mackey.phase_order() as usize;
        if blocks.len() != m {
            return Err(MackeyError::GradeCount {
                expected: m,
                got: blocks.len(),
            });
        }
        let weight = blocks[0].weight();
        for (k, b) in blocks.iter().enumerate() {
            if b.cocycle() != &mackey.cocycle().power(k as i64) {
                return Err(MackeyError::BlockCocycle { k });
            }
            if b.weight() != weight {
                return Err(MackeyError::BlockWeight {
                    k,
                    expected: weight,
                    got: b.weight(),
                });
            }
        }
        let mut offsets = Vec::with_capacity(m + 1);
        let mut dim = 0;
        for b in &blocks {
            offsets.push(dim);
            dim += b.dim();
        }
        offsets.push(dim);
        Ok(ExtendedRepresentation {
            mackey,
            blocks,
            offsets,
            dim,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn blocks(&self) -> &[RepresentationSpec] {
        &self.blocks
    }

    pub fn apply(&self, f: &MackeyFunction) -> Result<DMatrix<Complex64>, MackeyError> {
        if !(Arc::ptr_eq(&self.mackey, f.mackey()) || self.mackey == *f.mackey()) {
            return Err(MackeyError::GroupMismatch);
        }
        let mut out = DMatrix::zeros(self.dim, self.dim);
        for (k, block) in self.blocks.iter().enumerate() {
            let img = block.apply(&f.fourier_coefficient(k as i64))?;
            let o = self.offsets[k];
            out.view_mut((o, o), (block.dim(), block.dim()))
                .copy_from(&img);
        }
        Ok(out)
    }

    pub fn operator_norm(&self, f: &MackeyFunction) -> Result<f64, MackeyError> {
        Ok(linalg::operator_norm(&self.apply(f)?))
    }

    /// Rank of the linear map `F ↦ π̃(F)` over the point-mass basis of `G_c`.
    pub fn linearization_rank(&self) -> Result<usize, MackeyError> {
        let n = self.mackey.order();
        let weight = self.blocks[0].weight();
        let mut stacked = DMatrix::zeros(self.dim * self.dim, n);
        for idx in 0..n {
            let mut values = vec![Complex64::ZERO; n];
            values[idx] = Complex64::ONE;
            let f = MackeyFunction::new(self.mackey.clone(), weight, values)?;
            let img = self.apply(&f)?;
            for (r, v) in img.iter().enumerate() {
                stacked[(r, idx)] = *v;
            }
        }
        Ok(linalg::numerical_rank(&stacked))
    }

    /// Whether the linearization rank equals `|G|·m`.
    pub fn is_faithful(&self) -> Result<bool, MackeyError> {
        Ok(self.linearization_rank()? == self.mackey.order())
    }
}

/// The integrated form `Σ_{x,t} (w/m) F(x, τ_t) conj(τ_t) π(x)` of a single
/// projective representation, applied to a function on `G_c`.
///
/// This collapses the grading: it sees only the grade-one coefficient, so it
/// is never faithful once the cocycle order exceeds one.
pub fn naive_integrated(
    f: &MackeyFunction,
    rep: &RepresentationSpec,
) -> Result<DMatrix<Complex64>, MackeyError> {
    if rep.cocycle() != f.mackey().cocycle() {
        return Err(MackeyError::BlockCocycle { k: 1 });
    }
    if rep.side() != Side::Left {
        return Err(MackeyError::Representation(
            RepresentationError::WrongSide,
        ));
    }
    let m = f.mackey().phase_order();
    let n = f.mackey().base().order();
    let w = f.point_weight().to_f64().expect("finite weight");
    let mut out = DMatrix::zeros(rep.dim(), rep.dim());
    for x in 0..n {
        let mut scalar = Complex64::ZERO;
        for t in 0..m {
            scalar += f.value(x, t) * Phase::new(-t, m).to_complex();
        }
        out += rep.image(x) * (w * scalar);
    }
    Ok(out)
}
