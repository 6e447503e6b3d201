//! Gabor analysis on finite abelian groups.
//!
//! Time-frequency shifts `π(x,ω) = M_ω T_x` act on windows over `G`; a
//! lattice `Δ ≤ G×Ĝ` spans the system `(π(z)g)_{z∈Δ}`. The frame operator
//! admits two independent forms: the direct sum of rank-one operators over
//! `Δ`, and the Janssen form, a twisted-algebra element over the adjoint
//! lattice `Δ°` pushed through the right representation
//! `a ↦ (1/s(Δ))·Σ_w a_w·π(w)^*`. Canonical dual and tight atoms are
//! computed by inverting the Janssen coefficients inside `ℓ¹(Δ°, c̄)` and
//! only cross-checked against direct matrix inverses afterwards.

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_rational::Ratio;
use rand::Rng;
use thiserror::Error;

use crate::cocycle::Cocycle;
use crate::finite_group::{FiniteAbelianGroup, FiniteGroup, PhaseSpace, PhaseSubgroup};
use crate::linalg;
use crate::spectral_harness::{RepresentationError, RepresentationSpec, Side};
use crate::twisted_algebra::{AlgebraError, TwistedElement};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GaborError {
    #[error("window has {got} samples, the group has order {expected}")]
    WindowLength { expected: usize, got: usize },
    #[error("windows and lattice live over different groups")]
    GroupMismatch,
    #[error("a Gabor system needs at least one window")]
    EmptyWindows,
    #[error("frame operator is not Hermitian: deviation {deviation:.3e}")]
    NotHermitian { deviation: f64 },
    #[error("not a frame: bounds ({lower:.6e}, {upper:.6e})")]
    NotAFrame { lower: f64, upper: f64 },
    #[error("internal consistency check '{check}' failed with residual {residual:.3e}")]
    InternalConsistency { check: &'static str, residual: f64 },
    #[error("eigenvalue computation failed")]
    Eigen,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Representation(#[from] RepresentationError),
}

/// A vector over `G`, the raw material for Gabor atoms. At finite scale
/// every window lies in the Feichtinger algebra; [`s0_norm`] returns the
/// witnessing norm.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    group: FiniteAbelianGroup,
    values: DVector<Complex64>,
}

impl Window {
    pub fn new(group: FiniteAbelianGroup, values: Vec<Complex64>) -> Result<Self, GaborError> {
        if values.len() != group.order() {
            return Err(GaborError::WindowLength {
                expected: group.order(),
                got: values.len(),
            });
        }
        Ok(Window {
            group,
            values: DVector::from_vec(values),
        })
    }

    pub fn delta(group: FiniteAbelianGroup, x: usize) -> Self {
        let mut values = DVector::zeros(group.order());
        values[x] = Complex64::ONE;
        Window { group, values }
    }

    pub fn random<R: Rng + ?Sized>(group: FiniteAbelianGroup, rng: &mut R) -> Self {
        let values = DVector::from_fn(group.order(), |_, _| {
            Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0))
        });
        Window { group, values }
    }

    pub(crate) fn from_vector(group: FiniteAbelianGroup, values: DVector<Complex64>) -> Self {
        Window { group, values }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        self.values.as_slice()
    }

    pub fn value(&self, t: usize) -> Complex64 {
        self.values[t]
    }

    pub(crate) fn vector(&self) -> &DVector<Complex64> {
        &self.values
    }

    pub fn l2_norm(&self) -> f64 {
        self.values.norm()
    }

    /// `⟨f, g⟩ = Σ_t f(t)·conj(g(t))` for the counting measure on `G`.
    pub fn inner(&self, other: &Self) -> Result<Complex64, GaborError> {
        if self.group != other.group {
            return Err(GaborError::GroupMismatch);
        }
        Ok(other.values.dotc(&self.values))
    }

    pub fn scaled(&self, s: impl Into<Complex64>) -> Self {
        let s = s.into();
        Window {
            group: self.group.clone(),
            values: &self.values * s,
        }
    }
}

fn ratio_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// The time-frequency shift `π(x,ω) = M_ω T_x` as a unitary matrix on
/// `ℂ^G`, with `z` an ambient phase-space index.
pub fn tf_shift(space: &PhaseSpace, z: usize) -> DMatrix<Complex64> {
    let base = space.base();
    let n = base.order();
    let (x, omega) = space.split(z);
    DMatrix::from_fn(n, n, |t, j| {
        if t == base.add(j, x) {
            base.pairing_c(t, omega)
        } else {
            Complex64::ZERO
        }
    })
}

/// Applies `π(z)` to a window without forming the matrix.
pub fn tf_shift_apply(space: &PhaseSpace, z: usize, g: &Window) -> Result<Window, GaborError> {
    let base = space.base();
    if g.group() != base {
        return Err(GaborError::GroupMismatch);
    }
    let (x, omega) = space.split(z);
    let back = base.neg(x);
    let values = DVector::from_fn(base.order(), |t, _| {
        base.pairing_c(t, omega) * g.value(base.add(t, back))
    });
    Ok(Window::from_vector(g.group().clone(), values))
}

/// The short-time Fourier transform `V_g f(z) = ⟨f, π(z)g⟩`, indexed by the
/// ambient phase space.
pub fn stft(f: &Window, g: &Window) -> Result<Vec<Complex64>, GaborError> {
    if f.group() != g.group() {
        return Err(GaborError::GroupMismatch);
    }
    let space = PhaseSpace::new(f.group().clone());
    (0..space.order())
        .map(|z| f.inner(&tf_shift_apply(&space, z, g)?))
        .collect()
}

/// `‖f‖_{S_0} = Σ_z (1/|G|)·|V_f f(z)|`, the Feichtinger norm with respect
/// to the window `f` itself.
pub fn s0_norm(f: &Window) -> f64 {
    let space = PhaseSpace::new(f.group().clone());
    let weight = ratio_f64(space.point_weight());
    stft(f, f)
        .expect("same group by construction")
        .iter()
        .map(|v| v.norm() * weight)
        .sum()
}

fn adjoint_elements(lattice: &PhaseSubgroup, probes: &[usize]) -> Vec<usize> {
    let space = lattice.space();
    let base = space.base();
    (0..space.order())
        .filter(|&w| {
            let (xw, ow) = space.split(w);
            probes.iter().all(|&z| {
                let (xz, oz) = space.split(z);
                base.pairing(xz, ow) == base.pairing(xw, oz)
            })
        })
        .collect()
}

fn adjoint_from(lattice: &PhaseSubgroup, elements: Vec<usize>) -> PhaseSubgroup {
    let generators = elements.clone();
    let weight = lattice.size().recip();
    PhaseSubgroup::from_elements(lattice.space().clone(), elements, generators, weight)
}

/// The adjoint lattice `Δ° = {w : π(z)π(w) = π(w)π(z) for all z ∈ Δ}`,
/// carrying the measure weight `1/s(Δ)`.
///
/// Commutation is equivalent to symmetry of the Heisenberg cocycle, a
/// bilinear condition, so it is tested on the stored generators of `Δ`.
pub fn adjoint_subgroup(lattice: &PhaseSubgroup) -> PhaseSubgroup {
    adjoint_from(lattice, adjoint_elements(lattice, lattice.generators()))
}

/// Same as [`adjoint_subgroup`] but audits the commutation condition
/// against every element of `Δ` instead of trusting bilinearity.
pub fn adjoint_subgroup_audited(lattice: &PhaseSubgroup) -> PhaseSubgroup {
    adjoint_from(lattice, adjoint_elements(lattice, lattice.elements()))
}

/// A family of windows together with a lattice `Δ`.
#[derive(Debug, Clone)]
pub struct GaborSystem {
    windows: Vec<Window>,
    lattice: PhaseSubgroup,
}

impl GaborSystem {
    pub fn new(windows: Vec<Window>, lattice: PhaseSubgroup) -> Result<Self, GaborError> {
        if windows.is_empty() {
            return Err(GaborError::EmptyWindows);
        }
        if windows.iter().any(|w| w.group() != lattice.space().base()) {
            return Err(GaborError::GroupMismatch);
        }
        Ok(GaborSystem { windows, lattice })
    }

    pub fn windows(&self) -> &[Window] {
        &self.windows
    }

    pub fn lattice(&self) -> &PhaseSubgroup {
        &self.lattice
    }

    /// `S = Σ_i Σ_{z∈Δ} π(z)g_i ⟨·, π(z)g_i⟩` with counting measure on `Δ`.
    pub fn frame_operator(&self) -> DMatrix<Complex64> {
        let space = self.lattice.space();
        let n = space.base().order();
        let mut s = DMatrix::zeros(n, n);
        for g in &self.windows {
            for &z in self.lattice.elements() {
                let shifted = tf_shift_apply(space, z, g).expect("checked at construction");
                s += shifted.vector() * shifted.vector().adjoint();
            }
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
    pub is_frame: bool,
}

/// Optimal frame bounds of a Hermitian positive semidefinite operator: the
/// extreme eigenvalues. The system is a frame when the lower bound is
/// bounded away from zero relative to the upper.
pub fn frame_bounds(s: &DMatrix<Complex64>) -> Result<FrameBounds, GaborError> {
    let deviation = linalg::hermitian_deviation(s);
    if deviation > 1e-10 * (1.0 + linalg::frobenius_norm(s)) {
        return Err(GaborError::NotHermitian { deviation });
    }
    let (eigenvalues, _) = linalg::hermitian_eigen(s).ok_or(GaborError::Eigen)?;
    let lower = eigenvalues.first().copied().unwrap_or(0.0);
    let upper = eigenvalues.last().copied().unwrap_or(0.0);
    Ok(FrameBounds {
        lower,
        upper,
        is_frame: lower > 1e-10 * upper.max(0.0),
    })
}

/// The twisted algebra `ℓ¹(Δ°, c̄)` attached to a lattice: the adjoint
/// subgroup, the conjugate Heisenberg cocycle restricted to it, and the
/// right representation `a ↦ (1/s(Δ))·Σ_w a_w·π(w)^*` on `ℂ^G`.
#[derive(Debug, Clone)]
pub struct AdjointAlgebra {
    lattice: PhaseSubgroup,
    adjoint: PhaseSubgroup,
    cocycle: Cocycle,
}

impl AdjointAlgebra {
    pub fn new(lattice: &PhaseSubgroup) -> Self {
        let adjoint = adjoint_subgroup(lattice);
        let ambient = Cocycle::heisenberg(lattice.space()).conjugate();
        let cocycle = ambient.restrict(adjoint.elements(), adjoint.group().clone());
        AdjointAlgebra {
            lattice: lattice.clone(),
            adjoint,
            cocycle,
        }
    }

    pub fn lattice(&self) -> &PhaseSubgroup {
        &self.lattice
    }

    pub fn adjoint(&self) -> &PhaseSubgroup {
        &self.adjoint
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.adjoint.group()
    }

    /// Measure weight per point of `Δ°`, namely `1/s(Δ)`.
    pub fn weight(&self) -> Ratio<i64> {
        self.adjoint.weight()
    }

    pub fn element(&self, coeffs: Vec<Complex64>) -> Result<TwistedElement, GaborError> {
        Ok(TwistedElement::new(
            self.group().clone(),
            self.weight(),
            coeffs,
        )?)
    }

    /// The multiplicative unit `s(Δ)·δ_{(0,0)}`.
    pub fn unit(&self) -> TwistedElement {
        TwistedElement::unit(self.group().clone(), self.weight())
    }

    fn check_member(&self, a: &TwistedElement) -> Result<(), GaborError> {
        if a.group() != self.group() {
            return Err(GaborError::GroupMismatch);
        }
        if a.weight() != self.weight() {
            return Err(GaborError::Algebra(AlgebraError::WeightMismatch {
                left: self.weight(),
                right: a.weight(),
            }));
        }
        Ok(())
    }

    /// Janssen coefficients `a_w = Σ_i ⟨π(w)g_i, g_i⟩`, an element of
    /// `ℓ¹(Δ°, c̄)`. Coefficients of a multiwindow system are the exact
    /// per-window sums, so they add bit for bit.
    pub fn janssen_coefficients(&self, system: &GaborSystem) -> Result<TwistedElement, GaborError> {
        if system.lattice().elements() != self.lattice.elements()
            || system.lattice().space() != self.lattice.space()
        {
            return Err(GaborError::GroupMismatch);
        }
        let space = self.lattice.space();
        let coeffs = self
            .adjoint
            .elements()
            .iter()
            .map(|&w| {
                let mut total = Complex64::ZERO;
                for g in system.windows() {
                    total += tf_shift_apply(space, w, g)?.inner(g)?;
                }
                Ok(total)
            })
            .collect::<Result<Vec<_>, GaborError>>()?;
        self.element(coeffs)
    }

    /// The right representation `rep(a) = (1/s(Δ))·Σ_w a_w·π(w)^*`.
    pub fn represent(&self, a: &TwistedElement) -> Result<DMatrix<Complex64>, GaborError> {
        self.check_member(a)?;
        let space = self.lattice.space();
        let n = space.base().order();
        let w = a.weight_f64();
        let mut out = DMatrix::zeros(n, n);
        for (local, &ambient) in self.adjoint.elements().iter().enumerate() {
            let coeff = a.coeff(local);
            if coeff != Complex64::ZERO {
                out += tf_shift(space, ambient).adjoint() * (coeff * w);
            }
        }
        Ok(out)
    }

    /// Pulls an operator in the range of [`represent`] back to its
    /// coefficients via `a_w = (s(Δ)/|G|)·tr(M·π(w))`.
    pub fn element_from_operator(&self, m: &DMatrix<Complex64>) -> Result<TwistedElement, GaborError> {
        let space = self.lattice.space();
        let base = space.base();
        let n = base.order();
        let scale = ratio_f64(self.lattice.size()) / n as f64;
        let coeffs = self
            .adjoint
            .elements()
            .iter()
            .map(|&ambient| {
                let (x, omega) = space.split(ambient);
                let mut trace = Complex64::ZERO;
                for t in 0..n {
                    let shifted = base.add(t, x);
                    trace += m[(t, shifted)] * base.pairing_c(shifted, omega);
                }
                trace * scale
            })
            .collect();
        self.element(coeffs)
    }

    /// Rank of the linearization of [`represent`]; equals `|Δ°|` exactly
    /// when the representation is injective.
    pub fn representation_rank(&self) -> usize {
        let space = self.lattice.space();
        let n = space.base().order();
        let count = self.adjoint.len();
        let mut stacked = DMatrix::zeros(n * n, count);
        for (local, &ambient) in self.adjoint.elements().iter().enumerate() {
            let image = tf_shift(space, ambient).adjoint();
            for (r, v) in image.iter().enumerate() {
                stacked[(r, local)] = *v;
            }
        }
        linalg::numerical_rank(&stacked)
    }

    /// Packages [`represent`] as a verified right-sided representation of
    /// `ℓ¹(Δ°, c̄)`.
    pub fn representation_spec(
        &self,
        name: impl Into<String>,
    ) -> Result<RepresentationSpec, RepresentationError> {
        let space = self.lattice.space();
        let images = self
            .adjoint
            .elements()
            .iter()
            .map(|&ambient| tf_shift(space, ambient).adjoint())
            .collect();
        RepresentationSpec::new(name, Side::Right, &self.cocycle, self.weight(), images)
    }
}

fn check_window_group(f: &Window, lattice: &PhaseSubgroup) -> Result<(), GaborError> {
    if f.group() != lattice.space().base() {
        return Err(GaborError::GroupMismatch);
    }
    Ok(())
}

/// Residual of the fundamental identity of Gabor analysis for the triple
/// `(f, g, h)` over `Δ`, with both sides evaluated independently:
/// `Σ_{z∈Δ} ⟨f, π(z)g⟩·π(z)h` against
/// `(1/s(Δ))·Σ_{w∈Δ°} ⟨π(w)h, g⟩·π(w)^*f`.
pub fn figa_residual(
    f: &Window,
    g: &Window,
    h: &Window,
    lattice: &PhaseSubgroup,
) -> Result<f64, GaborError> {
    figa_residual_with_size(f, g, h, lattice, lattice.size())
}

/// FIGA residual with an explicit lattice size `s`; any value other than
/// the true `s(Δ)` breaks the identity, which the job runner uses as a
/// negative control.
pub fn figa_residual_with_size(
    f: &Window,
    g: &Window,
    h: &Window,
    lattice: &PhaseSubgroup,
    s: Ratio<i64>,
) -> Result<f64, GaborError> {
    check_window_group(f, lattice)?;
    check_window_group(g, lattice)?;
    check_window_group(h, lattice)?;
    let space = lattice.space();
    let n = space.base().order();

    let mut lhs = DVector::<Complex64>::zeros(n);
    for &z in lattice.elements() {
        let shifted_g = tf_shift_apply(space, z, g)?;
        let shifted_h = tf_shift_apply(space, z, h)?;
        lhs += shifted_h.vector() * f.inner(&shifted_g)?;
    }

    let adjoint = adjoint_subgroup(lattice);
    let scale = Complex64::from(1.0 / ratio_f64(s));
    let mut rhs = DVector::<Complex64>::zeros(n);
    for &w in adjoint.elements() {
        let coeff = tf_shift_apply(space, w, h)?.inner(g)?;
        rhs += tf_shift(space, w).adjoint() * f.vector() * (coeff * scale);
    }

    Ok((lhs - rhs).norm())
}

/// Everything the duality machinery produces for one system: bounds, the
/// Janssen element, canonical dual and tight atoms, and the residuals of
/// every cross-check that was run.
#[derive(Debug, Clone)]
pub struct FrameReport {
    pub bounds: FrameBounds,
    pub janssen: TwistedElement,
    pub algebra: AdjointAlgebra,
    pub dual_atoms: Vec<Window>,
    pub tight_atoms: Vec<Window>,
    pub residuals: BTreeMap<String, f64>,
    pub s0_norms: BTreeMap<String, f64>,
}

fn record(map: &mut BTreeMap<String, f64>, key: &str, value: f64) {
    map.insert(key.to_string(), value);
}

fn gate(
    residuals: &BTreeMap<String, f64>,
    check: &'static str,
    bound: f64,
) -> Result<(), GaborError> {
    let residual = residuals[check];
    if residual > bound {
        return Err(GaborError::InternalConsistency { check, residual });
    }
    Ok(())
}

/// Runs the full duality analysis.
///
/// The frame operator is assembled directly over `Δ` and matched against
/// the Janssen form over `Δ°`. When the system is a frame the Janssen
/// element is inverted inside `ℓ¹(Δ°, c̄)`, its positive square root is
/// taken there as well, and both are pushed back through the right
/// representation to produce `S⁻¹g_i` and `S^{-1/2}g_i`. Matrix-side
/// inverses and square roots serve only as cross-checks. A system that is
/// not a frame returns early with empty atom lists.
pub fn frame_report(system: &GaborSystem) -> Result<FrameReport, GaborError> {
    let lattice = system.lattice();
    let space = lattice.space();
    let n = space.base().order();
    let mut residuals = BTreeMap::new();
    let mut s0_norms = BTreeMap::new();

    let s = system.frame_operator();
    let s_scale = 1.0 + linalg::frobenius_norm(&s);
    record(&mut residuals, "frame-operator-hermitian", linalg::hermitian_deviation(&s));
    let commutation = lattice
        .elements()
        .iter()
        .map(|&z| {
            let pi = tf_shift(space, z);
            linalg::operator_norm(&(&pi * &s - &s * &pi))
        })
        .fold(0.0f64, f64::max);
    record(&mut residuals, "lattice-commutation", commutation);
    let bounds = frame_bounds(&s)?;

    let algebra = AdjointAlgebra::new(lattice);
    let rank = algebra.representation_rank();
    if rank != algebra.adjoint().len() {
        return Err(GaborError::InternalConsistency {
            check: "adjoint-representation-rank",
            residual: (algebra.adjoint().len() - rank) as f64,
        });
    }
    let janssen = algebra.janssen_coefficients(system)?;
    record(
        &mut residuals,
        "janssen-vs-frame-operator",
        linalg::operator_norm(&(algebra.represent(&janssen)? - &s)),
    );
    record(
        &mut residuals,
        "janssen-self-adjoint",
        janssen.self_adjointness_deviation(algebra.cocycle())?,
    );
    gate(&residuals, "janssen-vs-frame-operator", 1e-12 * s_scale)?;
    gate(&residuals, "janssen-self-adjoint", 1e-12 * (1.0 + janssen.l1_norm()))?;
    gate(&residuals, "lattice-commutation", 1e-12 * s_scale)?;

    for (i, g) in system.windows().iter().enumerate() {
        s0_norms.insert(format!("window-{i}"), s0_norm(g));
    }

    if !bounds.is_frame {
        return Ok(FrameReport {
            bounds,
            janssen,
            algebra,
            dual_atoms: Vec::new(),
            tight_atoms: Vec::new(),
            residuals,
            s0_norms,
        });
    }

    let inverse = janssen.invert(algebra.cocycle())?;
    let s_inverse = algebra.represent(&inverse)?;
    let s_inverse_direct = s
        .clone()
        .lu()
        .try_inverse()
        .ok_or(GaborError::InternalConsistency {
            check: "matrix-inverse",
            residual: f64::INFINITY,
        })?;
    let inv_scale = 1.0 + linalg::frobenius_norm(&s_inverse_direct);
    record(
        &mut residuals,
        "dual-inverse-cross-check",
        linalg::operator_norm(&(&s_inverse - &s_inverse_direct)),
    );
    gate(&residuals, "dual-inverse-cross-check", 1e-9 * inv_scale)?;

    let root = inverse.sqrt_positive(algebra.cocycle())?;
    let s_inverse_root = algebra.represent(&root)?;
    let s_inverse_root_direct =
        linalg::hermitian_function(&s, |l| 1.0 / l.sqrt()).ok_or(GaborError::Eigen)?;
    record(
        &mut residuals,
        "tight-sqrt-cross-check",
        linalg::operator_norm(&(&s_inverse_root - &s_inverse_root_direct)),
    );
    gate(&residuals, "tight-sqrt-cross-check", 1e-9 * inv_scale.sqrt())?;

    let dual_atoms: Vec<Window> = system
        .windows()
        .iter()
        .map(|g| Window::from_vector(g.group().clone(), &s_inverse * g.vector()))
        .collect();
    let tight_atoms: Vec<Window> = system
        .windows()
        .iter()
        .map(|g| Window::from_vector(g.group().clone(), &s_inverse_root * g.vector()))
        .collect();

    let mut mixed = DMatrix::<Complex64>::zeros(n, n);
    for (g, d) in system.windows().iter().zip(&dual_atoms) {
        for &z in lattice.elements() {
            let analysis = tf_shift_apply(space, z, g)?;
            let synthesis = tf_shift_apply(space, z, d)?;
            mixed += synthesis.vector() * analysis.vector().adjoint();
        }
    }
    let eye = DMatrix::<Complex64>::identity(n, n);
    record(
        &mut residuals,
        "dual-reconstruction",
        linalg::max_column_norm(&(mixed - &eye)),
    );
    gate(&residuals, "dual-reconstruction", 1e-9)?;

    let tight_system = GaborSystem::new(tight_atoms.clone(), lattice.clone())?;
    record(
        &mut residuals,
        "tight-frame-operator",
        linalg::max_column_norm(&(tight_system.frame_operator() - &eye)),
    );
    gate(&residuals, "tight-frame-operator", 1e-9)?;

    for (i, w) in dual_atoms.iter().enumerate() {
        s0_norms.insert(format!("dual-{i}"), s0_norm(w));
    }
    for (i, w) in tight_atoms.iter().enumerate() {
        s0_norms.insert(format!("tight-{i}"), s0_norm(w));
    }

    Ok(FrameReport {
        bounds,
        janssen,
        algebra,
        dual_atoms,
        tight_atoms,
        residuals,
        s0_norms,
    })
}

/// The canonical dual atoms `S⁻¹g_i`, or an error carrying the offending
/// bounds when the system is not a frame.
pub fn canonical_dual_atoms(system: &GaborSystem) -> Result<Vec<Window>, GaborError> {
    let report = frame_report(system)?;
    if !report.bounds.is_frame {
        return Err(GaborError::NotAFrame {
            lower: report.bounds.lower,
            upper: report.bounds.upper,
        });
    }
    Ok(report.dual_atoms)
}

/// The canonical tight atoms `S^{-1/2}g_i`.
pub fn canonical_tight_atoms(system: &GaborSystem) -> Result<Vec<Window>, GaborError> {
    let report = frame_report(system)?;
    if !report.bounds.is_frame {
        return Err(GaborError::NotAFrame {
            lower: report.bounds.lower,
            upper: report.bounds.upper,
        });
    }
    Ok(report.tight_atoms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn space(n: u32) -> PhaseSpace {
        PhaseSpace::new(FiniteAbelianGroup::cyclic(n).unwrap())
    }

    fn lattice(sp: &PhaseSpace, gens: &[Vec<i64>]) -> PhaseSubgroup {
        PhaseSubgroup::closure_from_tuples(sp, gens).unwrap()
    }

    #[test]
    fn tf_shift_at_origin_is_identity() {
        let sp = space(3);
        assert_eq!(tf_shift(&sp, 0), DMatrix::identity(3, 3));
    }

    #[test]
    fn tf_shift_translation_on_z2_swaps_coordinates() {
        let sp = space(2);
        let z = sp.point(&[1], &[0]).unwrap();
        let expected = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::ZERO,
                Complex64::ONE,
                Complex64::ONE,
                Complex64::ZERO,
            ],
        );
        assert_eq!(tf_shift(&sp, z), expected);
    }

    #[test]
    fn time_and_frequency_shifts_on_z2_anticommute() {
        let sp = space(2);
        let t = tf_shift(&sp, sp.point(&[1], &[0]).unwrap());
        let m = tf_shift(&sp, sp.point(&[0], &[1]).unwrap());
        let defect = &t * &m + &m * &t;
        assert!(linalg::frobenius_norm(&defect) < 1e-15);
    }

    #[test]
    fn tf_shifts_satisfy_the_heisenberg_projective_law() {
        let sp = space(4);
        let c = Cocycle::heisenberg(&sp);
        for z1 in 0..sp.order() {
            for z2 in 0..sp.order() {
                let lhs = tf_shift(&sp, z1) * tf_shift(&sp, z2);
                let sum = sp.ambient().add(z1, z2);
                let rhs = tf_shift(&sp, sum) * c.value_c(z1, z2);
                assert!(linalg::frobenius_norm(&(lhs - rhs)) < 1e-14);
            }
        }
    }

    #[test]
    fn stft_at_origin_is_the_inner_product() {
        let g = FiniteAbelianGroup::cyclic(5).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let f = Window::random(g.clone(), &mut rng);
        let h = Window::random(g, &mut rng);
        let v = stft(&f, &h).unwrap();
        assert_abs_diff_eq!(v[0].re, f.inner(&h).unwrap().re, epsilon = 1e-14);
        assert_abs_diff_eq!(v[0].im, f.inner(&h).unwrap().im, epsilon = 1e-14);
    }

    #[test]
    fn stft_of_delta_against_itself_on_z2() {
        let g = FiniteAbelianGroup::cyclic(2).unwrap();
        let f = Window::delta(g, 0);
        let v = stft(&f, &f).unwrap();
        let moduli: Vec<f64> = v.iter().map(|x| x.norm()).collect();
        assert_eq!(moduli, vec![1.0, 1.0, 0.0, 0.0]);
        assert_abs_diff_eq!(s0_norm(&f), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn stft_satisfies_the_orthogonality_relation() {
        let g = FiniteAbelianGroup::new(&[2, 3]).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let f = Window::random(g.clone(), &mut rng);
        let h = Window::random(g.clone(), &mut rng);
        let v = stft(&f, &h).unwrap();
        let energy: f64 = v.iter().map(|x| x.norm_sqr() / g.order() as f64).sum();
        let expected = f.l2_norm().powi(2) * h.l2_norm().powi(2);
        assert_abs_diff_eq!(energy, expected, epsilon = 1e-10 * expected);
    }

    #[test]
    fn adjoint_of_the_full_lattice_is_trivial() {
        let sp = space(3);
        let full = PhaseSubgroup::full(&sp);
        let adj = adjoint_subgroup(&full);
        assert_eq!(adj.elements(), &[0]);
        assert_eq!(adj.weight(), Ratio::new(3, 1));
    }

    #[test]
    fn adjoint_of_the_time_lattice_is_itself() {
        let sp = space(2);
        let time = lattice(&sp, &[vec![1, 0]]);
        let adj = adjoint_subgroup(&time);
        assert_eq!(adj.elements(), time.elements());
        assert_eq!(adj.weight(), Ratio::new(1, 1));
    }

    #[test]
    fn even_lattice_in_z4_is_self_adjoint() {
        let sp = space(4);
        let even = lattice(&sp, &[vec![2, 0], vec![0, 2]]);
        assert_eq!(even.size(), Ratio::new(1, 1));
        let adj = adjoint_subgroup(&even);
        assert_eq!(adj.elements(), even.elements());
        let double = adjoint_subgroup(&adj);
        assert_eq!(double.elements(), even.elements());
    }

    #[test]
    fn generator_test_matches_the_full_audit() {
        let sp = space(6);
        for gens in [
            vec![vec![1, 2]],
            vec![vec![2, 1]],
            vec![vec![3, 0], vec![0, 2]],
            vec![vec![1, 1]],
        ] {
            let sub = lattice(&sp, &gens);
            let fast = adjoint_subgroup(&sub);
            let audit = adjoint_subgroup_audited(&sub);
            assert_eq!(fast.elements(), audit.elements());
            let n2 = sp.order();
            assert_eq!(fast.len() * sub.len(), n2);
            let double = adjoint_subgroup(&fast);
            assert_eq!(double.elements(), sub.elements());
        }
    }

    #[test]
    fn frame_operator_of_the_full_lattice_on_z2() {
        let sp = space(2);
        let g = Window::delta(sp.base().clone(), 0);
        let system = GaborSystem::new(vec![g], PhaseSubgroup::full(&sp)).unwrap();
        let s = system.frame_operator();
        let expected = DMatrix::identity(2, 2) * Complex64::from(2.0);
        assert!(linalg::frobenius_norm(&(s - expected)) < 1e-14);
    }

    #[test]
    fn frame_operator_of_the_time_lattice_on_z2() {
        let sp = space(2);
        let g = Window::delta(sp.base().clone(), 0);
        let system = GaborSystem::new(vec![g], lattice(&sp, &[vec![1, 0]])).unwrap();
        let s = system.frame_operator();
        assert!(linalg::frobenius_norm(&(s - DMatrix::identity(2, 2))) < 1e-14);
    }

    #[test]
    fn frame_operator_of_the_zero_window_vanishes() {
        let sp = space(3);
        let g = Window::new(sp.base().clone(), vec![Complex64::ZERO; 3]).unwrap();
        let system = GaborSystem::new(vec![g], PhaseSubgroup::full(&sp)).unwrap();
        assert_eq!(linalg::frobenius_norm(&system.frame_operator()), 0.0);
    }

    #[test]
    fn frame_operator_commutes_with_lattice_shifts() {
        let sp = space(6);
        let sub = lattice(&sp, &[vec![1, 1]]);
        let mut rng = ChaCha12Rng::seed_from_u64(21);
        let g = Window::random(sp.base().clone(), &mut rng);
        let system = GaborSystem::new(vec![g], sub.clone()).unwrap();
        let s = system.frame_operator();
        for &z in sub.elements() {
            let pi = tf_shift(&sp, z);
            let defect = &pi * &s - &s * &pi;
            assert!(linalg::operator_norm(&defect) < 1e-12 * (1.0 + linalg::operator_norm(&s)));
        }
    }

    #[test]
    fn frame_bounds_of_simple_operators() {
        let two_eye = DMatrix::<Complex64>::identity(2, 2) * Complex64::from(2.0);
        let b = frame_bounds(&two_eye).unwrap();
        assert_eq!((b.lower, b.upper, b.is_frame), (2.0, 2.0, true));

        let zero = DMatrix::<Complex64>::zeros(2, 2);
        let b = frame_bounds(&zero).unwrap();
        assert!(!b.is_frame);

        let deficient = DMatrix::from_diagonal(&DVector::from_vec(vec![
            Complex64::ZERO,
            Complex64::ONE,
        ]));
        let b = frame_bounds(&deficient).unwrap();
        assert_eq!((b.lower, b.upper), (0.0, 1.0));
        assert!(!b.is_frame);
    }

    #[test]
    fn frame_bounds_reject_non_hermitian_input() {
        let mut m = DMatrix::<Complex64>::zeros(2, 2);
        m[(0, 1)] = Complex64::ONE;
        assert!(matches!(
            frame_bounds(&m),
            Err(GaborError::NotHermitian { .. })
        ));
    }

    #[test]
    fn janssen_coefficients_on_z2_full_lattice() {
        let sp = space(2);
        let full = PhaseSubgroup::full(&sp);
        let g = Window::delta(sp.base().clone(), 0);
        let system = GaborSystem::new(vec![g], full.clone()).unwrap();
        let algebra = AdjointAlgebra::new(&full);
        assert_eq!(algebra.weight(), Ratio::new(2, 1));
        let a = algebra.janssen_coefficients(&system).unwrap();
        assert_eq!(a.coeffs(), &[Complex64::ONE]);
        let s = algebra.represent(&a).unwrap();
        let expected = DMatrix::identity(2, 2) * Complex64::from(2.0);
        assert!(linalg::frobenius_norm(&(s - expected)) < 1e-14);
    }

    #[test]
    fn janssen_coefficients_on_z2_time_lattice() {
        let sp = space(2);
        let time = lattice(&sp, &[vec![1, 0]]);
        let g = Window::delta(sp.base().clone(), 0);
        let system = GaborSystem::new(vec![g], time.clone()).unwrap();
        let algebra = AdjointAlgebra::new(&time);
        let a = algebra.janssen_coefficients(&system).unwrap();
        assert_eq!(a.coeffs(), &[Complex64::ONE, Complex64::ZERO]);
        let s = algebra.represent(&a).unwrap();
        assert!(linalg::frobenius_norm(&(s - DMatrix::identity(2, 2))) < 1e-14);
    }

    #[test]
    fn algebra_unit_represents_as_the_identity() {
        for (n, gens) in [(2u32, vec![vec![1, 0]]), (4, vec![vec![2, 0], vec![0, 2]])] {
            let sp = space(n);
            let sub = lattice(&sp, &gens);
            let algebra = AdjointAlgebra::new(&sub);
            let one = algebra.represent(&algebra.unit()).unwrap();
            let eye = DMatrix::identity(n as usize, n as usize);
            assert!(linalg::frobenius_norm(&(one - eye)) < 1e-13);
        }
    }

    #[test]
    fn represent_is_a_right_star_representation() {
        let sp = space(4);
        let sub = lattice(&sp, &[vec![2, 0], vec![0, 2]]);
        let algebra = AdjointAlgebra::new(&sub);
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a = TwistedElement::random(algebra.group().clone(), algebra.weight(), &mut rng);
            let b = TwistedElement::random(algebra.group().clone(), algebra.weight(), &mut rng);
            let product = a.convolve(&b, algebra.cocycle()).unwrap();
            let lhs = algebra.represent(&product).unwrap();
            let rhs = algebra.represent(&b).unwrap() * algebra.represent(&a).unwrap();
            let scale = 1.0 + a.l1_norm() * b.l1_norm();
            assert!(linalg::operator_norm(&(lhs - rhs)) < 1e-12 * scale);

            let star = algebra.represent(&a.involution(algebra.cocycle()).unwrap()).unwrap();
            let adjoint = algebra.represent(&a).unwrap().adjoint();
            assert!(linalg::operator_norm(&(star - adjoint)) < 1e-12 * (1.0 + a.l1_norm()));
        }
        assert_eq!(algebra.representation_rank(), algebra.adjoint().len());
    }

    #[test]
    fn represent_matches_its_registered_spec() {
        let sp = space(4);
        let sub = lattice(&sp, &[vec![2, 0], vec![0, 2]]);
        let algebra = AdjointAlgebra::new(&sub);
        let spec = algebra.representation_spec("adjoint").unwrap();
        assert_eq!(spec.side(), Side::Right);
        assert!(spec.is_faithful());
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        let a = TwistedElement::random(algebra.group().clone(), algebra.weight(), &mut rng);
        let via_spec = spec.apply(&a).unwrap();
        let direct = algebra.represent(&a).unwrap();
        assert!(linalg::frobenius_norm(&(via_spec - direct)) < 1e-13);
    }

    #[test]
    fn element_pull_back_inverts_represent() {
        let sp = space(6);
        let sub = lattice(&sp, &[vec![0, 1], vec![3, 0]]);
        let algebra = AdjointAlgebra::new(&sub);
        let mut rng = ChaCha12Rng::seed_from_u64(17);
        let a = TwistedElement::random(algebra.group().clone(), algebra.weight(), &mut rng);
        let m = algebra.represent(&a).unwrap();
        let back = algebra.element_from_operator(&m).unwrap();
        let diff: f64 = a
            .coeffs()
            .iter()
            .zip(back.coeffs())
            .map(|(x, y)| (x - y).norm())
            .sum();
        assert!(diff < 1e-12 * (1.0 + a.l1_norm()));
    }

    #[test]
    fn janssen_form_matches_the_direct_frame_operator() {
        let sp = space(6);
        let sub = lattice(&sp, &[vec![2, 1]]);
        let algebra = AdjointAlgebra::new(&sub);
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        let g1 = Window::random(sp.base().clone(), &mut rng);
        let g2 = Window::random(sp.base().clone(), &mut rng);
        let system = GaborSystem::new(vec![g1.clone(), g2.clone()], sub.clone()).unwrap();
        let s = system.frame_operator();
        let a = algebra.janssen_coefficients(&system).unwrap();
        let via_janssen = algebra.represent(&a).unwrap();
        let scale = 1.0 + linalg::operator_norm(&s);
        assert!(linalg::operator_norm(&(via_janssen - &s)) < 1e-12 * scale);

        let single1 = GaborSystem::new(vec![g1], sub.clone()).unwrap();
        let single2 = GaborSystem::new(vec![g2], sub.clone()).unwrap();
        let a1 = algebra.janssen_coefficients(&single1).unwrap();
        let a2 = algebra.janssen_coefficients(&single2).unwrap();
        for w in 0..algebra.adjoint().len() {
            assert_eq!(a.coeff(w), a1.coeff(w) + a2.coeff(w));
        }

        let deviation = a.self_adjointness_deviation(algebra.cocycle()).unwrap();
        assert!(deviation < 1e-12 * (1.0 + a.l1_norm()));
    }

    #[test]
    fn figa_holds_and_fails_under_a_wrong_size() {
        let mut rng = ChaCha12Rng::seed_from_u64(31);

        let sp4 = space(4);
        let sub = lattice(&sp4, &[vec![2, 0], vec![0, 2]]);
        let f = Window::random(sp4.base().clone(), &mut rng);
        let g = Window::random(sp4.base().clone(), &mut rng);
        let h = Window::random(sp4.base().clone(), &mut rng);
        let norms = f.l2_norm() * g.l2_norm() * h.l2_norm();
        let residual = figa_residual(&f, &g, &h, &sub).unwrap();
        assert!(residual <= 1e-10 * norms, "residual {residual}");

        let wrong = figa_residual_with_size(&f, &g, &h, &sub, Ratio::new(2, 1)).unwrap();
        assert!(wrong > 1e-3 * norms, "wrong-size residual {wrong}");

        let sp6 = space(6);
        let full = PhaseSubgroup::full(&sp6);
        let f = Window::random(sp6.base().clone(), &mut rng);
        let g = Window::random(sp6.base().clone(), &mut rng);
        let h = Window::random(sp6.base().clone(), &mut rng);
        let norms = f.l2_norm() * g.l2_norm() * h.l2_norm();
        let residual = figa_residual(&f, &g, &h, &full).unwrap();
        assert!(residual <= 1e-10 * norms, "residual {residual}");
    }

    #[test]
    fn frame_report_on_z2_full_lattice_has_closed_form_atoms() {
        let sp = space(2);
        let g = Window::delta(sp.base().clone(), 0);
        let system = GaborSystem::new(vec![g], PhaseSubgroup::full(&sp)).unwrap();
        let report = frame_report(&system).unwrap();
        assert!(report.bounds.is_frame);
        assert_abs_diff_eq!(report.bounds.lower, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(report.bounds.upper, 2.0, epsilon = 1e-12);

        let dual = &report.dual_atoms[0];
        assert_abs_diff_eq!(dual.value(0).re, 0.5, epsilon = 1e-12);
        assert!(dual.value(0).im.abs() + dual.value(1).norm() < 1e-12);

        let tight = &report.tight_atoms[0];
        assert_abs_diff_eq!(tight.value(0).re, 0.5f64.sqrt(), epsilon = 1e-12);
        assert!(tight.value(0).im.abs() + tight.value(1).norm() < 1e-12);
    }

    #[test]
    fn frame_report_on_an_orthonormal_system_returns_the_window() {
        let sp = space(2);
        let g = Window::delta(sp.base().clone(), 0);
        let system = GaborSystem::new(vec![g.clone()], lattice(&sp, &[vec![1, 0]])).unwrap();
        let report = frame_report(&system).unwrap();
        assert!(report.bounds.is_frame);
        for atom in report.dual_atoms.iter().chain(&report.tight_atoms) {
            let diff: f64 = atom
                .values()
                .iter()
                .zip(g.values())
                .map(|(a, b)| (a - b).norm())
                .sum();
            assert!(diff < 1e-12);
        }
    }

    #[test]
    fn critical_density_constant_window_is_not_a_frame() {
        let sp = space(4);
        let sub = lattice(&sp, &[vec![2, 0], vec![0, 2]]);
        let half = Complex64::from(0.5);
        let g = Window::new(sp.base().clone(), vec![half; 4]).unwrap();
        let system = GaborSystem::new(vec![g], sub).unwrap();
        let report = frame_report(&system).unwrap();
        assert!(!report.bounds.is_frame);
        assert_abs_diff_eq!(report.bounds.upper, 2.0, epsilon = 1e-10);
        assert!(report.bounds.lower.abs() < 1e-10);
        assert!(report.dual_atoms.is_empty() && report.tight_atoms.is_empty());

        match canonical_dual_atoms(&system) {
            Err(GaborError::NotAFrame { lower, upper }) => {
                assert!(lower.abs() < 1e-10 && (upper - 2.0).abs() < 1e-10);
            }
            other => panic!("expected NotAFrame, got {other:?}"),
        }
    }

    #[test]
    fn oversampled_report_passes_every_gate() {
        let sp = space(6);
        let sub = lattice(&sp, &[vec![0, 1], vec![3, 0]]);
        let mut rng = ChaCha12Rng::seed_from_u64(41);
        let g = Window::random(sp.base().clone(), &mut rng);
        let system = GaborSystem::new(vec![g], sub).unwrap();
        let report = frame_report(&system).unwrap();
        assert!(report.bounds.is_frame);
        assert!(report.residuals["dual-reconstruction"] < 1e-9);
        assert!(report.residuals["tight-frame-operator"] < 1e-9);
        assert!(report.s0_norms.contains_key("window-0"));
        assert!(report.s0_norms.contains_key("dual-0"));
        assert!(report.s0_norms.contains_key("tight-0"));
    }

    #[test]
    fn construction_errors_are_reported() {
        let g2 = FiniteAbelianGroup::cyclic(2).unwrap();
        let g3 = FiniteAbelianGroup::cyclic(3).unwrap();
        assert!(matches!(
            Window::new(g2.clone(), vec![Complex64::ONE]),
            Err(GaborError::WindowLength { expected: 2, got: 1 })
        ));
        let sp = PhaseSpace::new(g3);
        assert!(matches!(
            GaborSystem::new(vec![Window::delta(g2, 0)], PhaseSubgroup::full(&sp)),
            Err(GaborError::GroupMismatch)
        ));
        assert!(matches!(
            GaborSystem::new(vec![], PhaseSubgroup::full(&sp)),
            Err(GaborError::EmptyWindows)
        ));
    }
}
