//! The twisted convolution algebra `ℓ¹(G, c)` of a finite group.
//!
//! Elements are finitely supported functions on `G` carrying a uniform Haar
//! weight `w` per point. The product and involution are
//!
//! ```text
//! (f ♮ h)(x) = Σ_y w · f(y) · h(y⁻¹x) · c(y, y⁻¹x)
//! f*(x)      = conj(c(x, x⁻¹) · f(x⁻¹))
//! ```
//!
//! The algebra unit is `(1/w)·δ_e`. The left regular representation acts on
//! `ℓ²(G)` by `L_f h = f ♮ h`; its matrix is the workhorse for spectra,
//! inversion, and square roots, while dyadic powers of the element itself give
//! the spectral radius through `‖f^{2^k}‖₁^{1/2^k}`.

use std::ops::{Add, Sub};
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use rand::Rng;
use thiserror::Error;

use crate::cocycle::Cocycle;
use crate::finite_group::FiniteGroup;
use crate::linalg;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("operands live over different groups")]
    GroupMismatch,
    #[error("operands carry different Haar weights: {left} and {right}")]
    WeightMismatch { left: Ratio<i64>, right: Ratio<i64> },
    #[error("cocycle is defined over a different group")]
    CocycleMismatch,
    #[error("coefficient vector has {got} entries, group has order {expected}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("element is not invertible: smallest spectral magnitude {min_abs_eigenvalue:.3e}")]
    NonInvertible { min_abs_eigenvalue: f64 },
    #[error("element is not self-adjoint: ‖f* − f‖₁ = {deviation:.3e}")]
    NotSelfAdjoint { deviation: f64 },
    #[error("element is not positive: smallest eigenvalue {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },
    #[error("square-root iteration did not converge; residuals {residuals:?}")]
    SqrtDidNotConverge { residuals: Vec<f64> },
    #[error("eigenvalue iteration failed to converge")]
    EigenSolverFailed,
}

/// An element of `ℓ¹(G, c)`: a coefficient per group element plus the Haar
/// weight the group carries.
///
/// Elements over the same group but with different weights are different
/// algebras and refuse to combine.
#[derive(Debug, Clone)]
pub struct TwistedElement {
    group: Arc<FiniteGroup>,
    weight: Ratio<i64>,
    coeffs: Vec<Complex64>,
}

impl TwistedElement {
    pub fn new(
        group: Arc<FiniteGroup>,
        weight: Ratio<i64>,
        coeffs: Vec<Complex64>,
    ) -> Result<Self, AlgebraError> {
        if coeffs.len() != group.order() {
            return Err(AlgebraError::CoefficientCount {
                expected: group.order(),
                got: coeffs.len(),
            });
        }
        Ok(TwistedElement {
            group,
            weight,
            coeffs,
        })
    }

    pub fn zero(group: Arc<FiniteGroup>, weight: Ratio<i64>) -> Self {
        let n = group.order();
        TwistedElement {
            group,
            weight,
            coeffs: vec![Complex64::ZERO; n],
        }
    }

    pub fn delta(group: Arc<FiniteGroup>, weight: Ratio<i64>, x: usize) -> Self {
        assert!(x < group.order());
        let mut el = Self::zero(group, weight);
        el.coeffs[x] = Complex64::ONE;
        el
    }

    /// The multiplicative unit `(1/w)·δ_e`.
    pub fn unit(group: Arc<FiniteGroup>, weight: Ratio<i64>) -> Self {
        let e = group.identity();
        let inv_w = weight.recip().to_f64().expect("finite weight");
        let mut el = Self::zero(group, weight);
        el.coeffs[e] = Complex64::new(inv_w, 0.0);
        el
    }

    /// Coefficients drawn uniformly from the complex square `[-1,1]²`.
    pub fn random<R: Rng + ?Sized>(
        group: Arc<FiniteGroup>,
        weight: Ratio<i64>,
        rng: &mut R,
    ) -> Self {
        let coeffs = (0..group.order())
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        TwistedElement {
            group,
            weight,
            coeffs,
        }
    }

    /// A random element symmetrized to `(g + g*)/2`.
    pub fn random_self_adjoint<R: Rng + ?Sized>(
        group: Arc<FiniteGroup>,
        weight: Ratio<i64>,
        c: &Cocycle,
        rng: &mut R,
    ) -> Result<Self, AlgebraError> {
        let g = Self::random(group, weight, rng);
        Ok((&g + &g.involution(c)?).scaled(0.5))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn weight(&self) -> Ratio<i64> {
        self.weight
    }

    pub fn weight_f64(&self) -> f64 {
        self.weight.to_f64().expect("finite weight")
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, x: usize) -> Complex64 {
        self.coeffs[x]
    }

    /// `‖f‖₁ = w · Σ_x |f(x)|`.
    pub fn l1_norm(&self) -> f64 {
        self.weight_f64() * self.coeffs.iter().map(|v| v.norm()).sum::<f64>()
    }

    /// `‖f‖₂ = (w · Σ_x |f(x)|²)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        (self.weight_f64() * self.coeffs.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt()
    }

    pub fn scaled(&self, s: impl Into<Complex64>) -> Self {
        let s = s.into();
        TwistedElement {
            group: self.group.clone(),
            weight: self.weight,
            coeffs: self.coeffs.iter().map(|&v| v * s).collect(),
        }
    }

    fn check_same_algebra(&self, other: &Self) -> Result<(), AlgebraError> {
        if !(Arc::ptr_eq(&self.group, &other.group) || self.group == other.group) {
            return Err(AlgebraError::GroupMismatch);
        }
        if self.weight != other.weight {
            return Err(AlgebraError::WeightMismatch {
                left: self.weight,
                right: other.weight,
            });
        }
        Ok(())
    }

    fn check_cocycle(&self, c: &Cocycle) -> Result<(), AlgebraError> {
        if !(Arc::ptr_eq(&self.group, c.group()) || self.group.as_ref() == c.group().as_ref()) {
            return Err(AlgebraError::CocycleMismatch);
        }
        Ok(())
    }

    /// The twisted convolution `f ♮ h`.
    pub fn convolve(&self, rhs: &Self, c: &Cocycle) -> Result<Self, AlgebraError> {
        self.check_same_algebra(rhs)?;
        self.check_cocycle(c)?;
        let g = &self.group;
        let w = self.weight_f64();
        let mut out = vec![Complex64::ZERO; g.order()];
        for y in 0..g.order() {
            let fy = self.coeffs[y];
            if fy == Complex64::ZERO {
                continue;
            }
            for z in 0..g.order() {
                let hz = rhs.coeffs[z];
                if hz == Complex64::ZERO {
                    continue;
                }
                out[g.op(y, z)] += w * fy * hz * c.value_c(y, z);
            }
        }
        TwistedElement::new(g.clone(), self.weight, out)
    }

    /// The twisted involution `f*(x) = conj(c(x, x⁻¹) · f(x⁻¹))`.
    pub fn involution(&self, c: &Cocycle) -> Result<Self, AlgebraError> {
        self.check_cocycle(c)?;
        let g = &self.group;
        let coeffs = (0..g.order())
            .map(|x| {
                let xi = g.inv(x);
                (c.value_c(x, xi) * self.coeffs[xi]).conj()
            })
            .collect();
        TwistedElement::new(g.clone(), self.weight, coeffs)
    }

    /// `‖f* − f‖₁`, zero exactly when `f` is self-adjoint.
    pub fn self_adjointness_deviation(&self, c: &Cocycle) -> Result<f64, AlgebraError> {
        Ok((&self.involution(c)? - self).l1_norm())
    }

    /// Matrix of `h ↦ f ♮ h` on `ℓ²(G)` in the point-mass basis:
    /// `M[i,j] = w · f(x_i x_j⁻¹) · c(x_i x_j⁻¹, x_j)`.
    pub fn left_regular_matrix(&self, c: &Cocycle) -> Result<DMatrix<Complex64>, AlgebraError> {
        self.check_cocycle(c)?;
        let g = &self.group;
        let n = g.order();
        let w = self.weight_f64();
        Ok(DMatrix::from_fn(n, n, |i, j| {
            let lead = g.op(i, g.inv(j));
            w * self.coeffs[lead] * c.value_c(lead, j)
        }))
    }

    /// Reads an element back from the matrix of its left regular action,
    /// using the identity column.
    pub fn from_left_regular_matrix(
        m: &DMatrix<Complex64>,
        group: &Arc<FiniteGroup>,
        weight: Ratio<i64>,
    ) -> Result<Self, AlgebraError> {
        let n = group.order();
        if m.nrows() != n || m.ncols() != n {
            return Err(AlgebraError::CoefficientCount {
                expected: n,
                got: m.nrows(),
            });
        }
        let e = group.identity();
        let inv_w = weight.recip().to_f64().expect("finite weight");
        let coeffs = (0..n).map(|i| m[(i, e)] * inv_w).collect();
        TwistedElement::new(group.clone(), weight, coeffs)
    }

    /// Eigenvalues of the left regular matrix, sorted by real then imaginary
    /// part. In this finite setting they are exactly the algebra spectrum.
    pub fn spectrum(&self, c: &Cocycle) -> Result<Vec<Complex64>, AlgebraError> {
        let m = self.left_regular_matrix(c)?;
        linalg::eigenvalues(&m).ok_or(AlgebraError::EigenSolverFailed)
    }

    /// The dyadic sequence `‖f^{2^k}‖₁^{1/2^k}` for `k = 0..=k_max`, computed
    /// by repeated squaring with running renormalization so that very small
    /// and very large norms do not underflow.
    pub fn spectral_radius_sequence(
        &self,
        c: &Cocycle,
        k_max: usize,
    ) -> Result<Vec<f64>, AlgebraError> {
        self.check_cocycle(c)?;
        dyadic_radius_sequence(self, k_max, TwistedElement::l1_norm, |el| {
            el.convolve(el, c)
        })
    }

    /// Solves `self ♮ x = rhs` through an LU factorization of the left
    /// regular matrix.
    fn solve_left(&self, rhs: &Self, c: &Cocycle) -> Option<Self> {
        let m = self.left_regular_matrix(c).ok()?;
        let b = DVector::from_column_slice(&rhs.coeffs);
        let sol = m.lu().solve(&b)?;
        Some(TwistedElement {
            group: self.group.clone(),
            weight: self.weight,
            coeffs: sol.iter().copied().collect(),
        })
    }

    /// The inverse of `f` in `ℓ¹(G, c)`.
    pub fn invert(&self, c: &Cocycle) -> Result<Self, AlgebraError> {
        let spec = self.spectrum(c)?;
        let min_abs = spec.iter().map(|l| l.norm()).fold(f64::INFINITY, f64::min);
        let max_abs = spec.iter().map(|l| l.norm()).fold(0.0f64, f64::max);
        if min_abs <= 1e-12 * max_abs.max(1.0) {
            return Err(AlgebraError::NonInvertible {
                min_abs_eigenvalue: min_abs,
            });
        }
        let unit = Self::unit(self.group.clone(), self.weight);
        self.solve_left(&unit, c)
            .ok_or(AlgebraError::NonInvertible {
                min_abs_eigenvalue: min_abs,
            })
    }

    /// The positive square root of a self-adjoint element with spectrum in
    /// `(0, ∞)`, by the Babylonian iteration
    /// `X_{k+1} = (X_k + X_k⁻¹ ♮ f)/2` started at `X_0 = ‖f‖₁ · unit`.
    pub fn sqrt_positive(&self, c: &Cocycle) -> Result<Self, AlgebraError> {
        let scale = 1.0 + self.l1_norm();
        let deviation = self.self_adjointness_deviation(c)?;
        if deviation > 1e-10 * scale {
            return Err(AlgebraError::NotSelfAdjoint { deviation });
        }
        let m = self.left_regular_matrix(c)?;
        let (vals, _) = linalg::hermitian_eigen(&m).ok_or(AlgebraError::EigenSolverFailed)?;
        let min_eig = *vals.first().expect("nonempty spectrum");
        let max_eig = *vals.last().expect("nonempty spectrum");
        if min_eig <= 1e-12 * max_eig.abs().max(1.0) {
            return Err(AlgebraError::NotPositive {
                min_eigenvalue: min_eig,
            });
        }

        let mut x = Self::unit(self.group.clone(), self.weight).scaled(self.l1_norm());
        let mut residuals = Vec::new();
        let mut best: Option<(f64, TwistedElement)> = None;
        for _ in 0..100 {
            let r = (&x.convolve(&x, c)? - self).l1_norm();
            residuals.push(r);
            if best.as_ref().is_none_or(|(rb, _)| r < *rb) {
                best = Some((r, x.clone()));
            }
            if r <= 1e-13 * scale {
                break;
            }
            let correction = match x.solve_left(self, c) {
                Some(v) => v,
                None => break,
            };
            x = (&x + &correction).scaled(0.5);
        }
        let (best_r, best_x) = best.expect("at least one iteration");
        if best_r <= 1e-10 * scale {
            Ok((&best_x + &best_x.involution(c)?).scaled(0.5))
        } else {
            Err(AlgebraError::SqrtDidNotConverge { residuals })
        }
    }
}

impl Add for &TwistedElement {
    type Output = TwistedElement;
    fn add(self, rhs: &TwistedElement) -> TwistedElement {
        self.check_same_algebra(rhs).expect("same algebra");
        TwistedElement {
            group: self.group.clone(),
            weight: self.weight,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &TwistedElement {
    type Output = TwistedElement;
    fn sub(self, rhs: &TwistedElement) -> TwistedElement {
        self.check_same_algebra(rhs).expect("same algebra");
        TwistedElement {
            group: self.group.clone(),
            weight: self.weight,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// `‖x^{2^k}‖^{1/2^k}` for `k = 0..=k_max` by repeated squaring, tracking the
/// logarithm of the accumulated norm so the terms stay finite.
pub(crate) fn dyadic_radius_sequence<T: Scalable, E>(
    initial: &T,
    k_max: usize,
    norm: impl Fn(&T) -> f64,
    square: impl Fn(&T) -> Result<T, E>,
) -> Result<Vec<f64>, E> {
    let mut out = vec![0.0; k_max + 1];
    let n0 = norm(initial);
    if n0 == 0.0 {
        return Ok(out);
    }
    out[0] = n0;
    let mut g = initial.scale_by(1.0 / n0);
    let mut log_norm = n0.ln();
    for (k, slot) in out.iter_mut().enumerate().skip(1) {
        let sq = square(&g)?;
        let ns = norm(&sq);
        if ns == 0.0 {
            return Ok(out);
        }
        log_norm = 2.0 * log_norm + ns.ln();
        g = sq.scale_by(1.0 / ns);
        *slot = (log_norm / 2f64.powi(k as i32)).exp();
    }
    Ok(out)
}

/// Scalar rescaling hook for the dyadic radius helper.
pub(crate) trait Scalable {
    fn scale_by(&self, s: f64) -> Self;
}

impl Scalable for TwistedElement {
    fn scale_by(&self, s: f64) -> Self {
        self.scaled(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_group::{FiniteAbelianGroup, PhaseSpace, PhaseSubgroup};
    use crate::phase::Phase;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn one() -> Ratio<i64> {
        Ratio::from_integer(1)
    }

    fn z2_sign() -> (Arc<FiniteGroup>, Cocycle) {
        let g = FiniteAbelianGroup::cyclic(2).unwrap();
        let table = vec![Phase::zero(), Phase::zero(), Phase::zero(), Phase::half()];
        let c = Cocycle::from_phases(g.group().clone(), table).unwrap();
        (g.group().clone(), c)
    }

    /// Z_N carrying the cocycle c(x, y) = e^{-2πi x y / N}, obtained by
    /// restricting the Heisenberg cocycle to the diagonal of the phase space.
    fn cyclic_twisted(n: u32) -> (Arc<FiniteGroup>, Cocycle) {
        let space = PhaseSpace::new(FiniteAbelianGroup::cyclic(n).unwrap());
        let c = Cocycle::heisenberg(&space);
        let mut gen = vec![0i64; 2];
        gen[0] = 1;
        gen[1] = 1;
        let diag = PhaseSubgroup::closure_from_tuples(&space, &[gen]).unwrap();
        let sub = diag.group().clone();
        (sub.clone(), c.restrict(diag.elements(), sub))
    }

    #[test]
    fn unit_is_neutral() {
        let (g, c) = z2_sign();
        let u = TwistedElement::unit(g.clone(), one());
        let f = TwistedElement::new(
            g,
            one(),
            vec![Complex64::new(0.3, -1.0), Complex64::new(2.0, 0.5)],
        )
        .unwrap();
        let left = u.convolve(&f, &c).unwrap();
        let right = f.convolve(&u, &c).unwrap();
        assert!((&left - &f).l1_norm() < 1e-15);
        assert!((&right - &f).l1_norm() < 1e-15);
    }

    #[test]
    fn sign_twist_squares_delta_to_minus_unit() {
        let (g, c) = z2_sign();
        let d1 = TwistedElement::delta(g.clone(), one(), 1);
        let sq = d1.convolve(&d1, &c).unwrap();
        assert!((sq.coeff(0) - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        assert!(sq.coeff(1).norm() < 1e-15);

        let inv = d1.involution(&c).unwrap();
        assert!((inv.coeff(1) - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn left_regular_matrix_is_the_rotation_block() {
        let (g, c) = z2_sign();
        let d1 = TwistedElement::delta(g, one(), 1);
        let m = d1.left_regular_matrix(&c).unwrap();
        let expect = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::ZERO,
                Complex64::new(-1.0, 0.0),
                Complex64::ONE,
                Complex64::ZERO,
            ],
        );
        assert!(linalg::frobenius_norm(&(&m - &expect)) < 1e-15);

        let spec = d1.spectrum(&c).unwrap();
        assert!((spec[0] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((spec[1] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn involution_fixes_real_functions_on_exponent_two_groups() {
        let g = FiniteAbelianGroup::new(&[2, 2]).unwrap();
        let c = Cocycle::trivial(g.group().clone());
        let f = TwistedElement::new(
            g.group().clone(),
            one(),
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(-0.25, 0.0),
                Complex64::new(2.0, 0.0),
                Complex64::new(0.5, 0.0),
            ],
        )
        .unwrap();
        let star = f.involution(&c).unwrap();
        assert!((&star - &f).l1_norm() == 0.0);
    }

    #[test]
    fn from_left_regular_matrix_round_trips() {
        let (g, c) = cyclic_twisted(6);
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let f = TwistedElement::random(g.clone(), one(), &mut rng);
        let m = f.left_regular_matrix(&c).unwrap();
        let back = TwistedElement::from_left_regular_matrix(&m, &g, one()).unwrap();
        assert!((&back - &f).l1_norm() < 1e-14);
    }

    #[test]
    fn projector_like_element_is_singular() {
        let (g, c) = z2_sign();
        let f = TwistedElement::new(
            g,
            one(),
            vec![Complex64::ONE, Complex64::new(0.0, 1.0)],
        )
        .unwrap();
        let sq = f.convolve(&f, &c).unwrap();
        assert!((&sq - &f.scaled(2.0)).l1_norm() < 1e-15);

        let spec = f.spectrum(&c).unwrap();
        assert!(spec[0].norm() < 1e-12);
        assert!((spec[1] - Complex64::new(2.0, 0.0)).norm() < 1e-12);

        match f.invert(&c) {
            Err(AlgebraError::NonInvertible { min_abs_eigenvalue }) => {
                assert!(min_abs_eigenvalue < 1e-12);
            }
            other => panic!("expected NonInvertible, got {other:?}"),
        }

        let seq = f.spectral_radius_sequence(&c, 8).unwrap();
        for term in seq {
            assert!((term - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn inverse_of_a_shifted_unit() {
        let (g, c) = z2_sign();
        let f = TwistedElement::new(
            g.clone(),
            one(),
            vec![Complex64::new(2.0, 0.0), Complex64::ONE],
        )
        .unwrap();
        let inv = f.invert(&c).unwrap();
        assert!((inv.coeff(0) - Complex64::new(0.4, 0.0)).norm() < 1e-14);
        assert!((inv.coeff(1) - Complex64::new(-0.2, 0.0)).norm() < 1e-14);
        let u = TwistedElement::unit(g, one());
        assert!((&f.convolve(&inv, &c).unwrap() - &u).l1_norm() < 1e-13);
        assert!((&inv.convolve(&f, &c).unwrap() - &u).l1_norm() < 1e-13);
    }

    #[test]
    fn square_root_of_a_two_point_element_hits_the_quarter_angle() {
        let (g, c) = z2_sign();
        let f = TwistedElement::new(
            g,
            one(),
            vec![Complex64::ONE, Complex64::new(0.0, 0.5)],
        )
        .unwrap();
        let b = f.sqrt_positive(&c).unwrap();
        let theta = std::f64::consts::PI / 12.0;
        assert!((b.coeff(0) - Complex64::new(theta.cos(), 0.0)).norm() < 1e-12);
        assert!((b.coeff(1) - Complex64::new(0.0, theta.sin())).norm() < 1e-12);
        assert!((&b.convolve(&b, &c).unwrap() - &f).l1_norm() < 1e-12);
        assert!(b.self_adjointness_deviation(&c).unwrap() < 1e-12);
    }

    #[test]
    fn sqrt_rejects_non_self_adjoint_and_non_positive_input() {
        let (g, c) = z2_sign();
        let d1 = TwistedElement::delta(g.clone(), one(), 1);
        assert!(matches!(
            d1.sqrt_positive(&c),
            Err(AlgebraError::NotSelfAdjoint { .. })
        ));
        let neg = TwistedElement::unit(g, one()).scaled(-1.0);
        assert!(matches!(
            neg.sqrt_positive(&c),
            Err(AlgebraError::NotPositive { .. })
        ));
    }

    #[test]
    fn algebra_mismatches_are_rejected() {
        let (g2, c2) = z2_sign();
        let (g6, _) = cyclic_twisted(6);
        let a = TwistedElement::delta(g2.clone(), one(), 0);
        let b = TwistedElement::delta(g6, one(), 0);
        assert_eq!(a.convolve(&b, &c2).unwrap_err(), AlgebraError::GroupMismatch);

        let half = TwistedElement::delta(g2, Ratio::new(1, 2), 0);
        assert!(matches!(
            a.convolve(&half, &c2),
            Err(AlgebraError::WeightMismatch { .. })
        ));

        let (_, c6) = cyclic_twisted(6);
        assert_eq!(a.involution(&c6).unwrap_err(), AlgebraError::CocycleMismatch);
    }

    #[test]
    fn radius_sequence_of_the_zero_element_is_zero() {
        let (g, c) = z2_sign();
        let z = TwistedElement::zero(g, one());
        assert_eq!(z.spectral_radius_sequence(&c, 5).unwrap(), vec![0.0; 6]);
    }

    #[test]
    fn involution_is_an_isometry_and_involutive() {
        let (g, c) = cyclic_twisted(8);
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for _ in 0..50 {
            let f = TwistedElement::random(g.clone(), one(), &mut rng);
            let star = f.involution(&c).unwrap();
            assert!((star.l1_norm() - f.l1_norm()).abs() < 1e-12 * (1.0 + f.l1_norm()));
            let back = star.involution(&c).unwrap();
            assert!((&back - &f).l1_norm() < 1e-12 * (1.0 + f.l1_norm()));
        }
    }

    #[test]
    fn convolution_laws_hold_on_random_elements() {
        let (g, c) = cyclic_twisted(6);
        let mut rng = ChaCha12Rng::seed_from_u64(17);
        for _ in 0..50 {
            let f = TwistedElement::random(g.clone(), one(), &mut rng);
            let h = TwistedElement::random(g.clone(), one(), &mut rng);
            let k = TwistedElement::random(g.clone(), one(), &mut rng);
            let scale = f.l1_norm() * h.l1_norm() * k.l1_norm();

            let assoc_l = f.convolve(&h, &c).unwrap().convolve(&k, &c).unwrap();
            let assoc_r = f.convolve(&h.convolve(&k, &c).unwrap(), &c).unwrap();
            assert!((&assoc_l - &assoc_r).l1_norm() <= 1e-12 * scale);

            let anti_l = f.convolve(&h, &c).unwrap().involution(&c).unwrap();
            let anti_r = h
                .involution(&c)
                .unwrap()
                .convolve(&f.involution(&c).unwrap(), &c)
                .unwrap();
            assert!((&anti_l - &anti_r).l1_norm() <= 1e-12 * f.l1_norm() * h.l1_norm());

            let prod = f.convolve(&h, &c).unwrap();
            assert!(prod.l1_norm() <= f.l1_norm() * h.l1_norm() * (1.0 + 1e-12));
        }
    }

    #[test]
    fn left_regular_action_is_a_homomorphism_into_matrices() {
        let (g, c) = cyclic_twisted(4);
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        let f = TwistedElement::random(g.clone(), one(), &mut rng);
        let h = TwistedElement::random(g.clone(), one(), &mut rng);
        let lf = f.left_regular_matrix(&c).unwrap();
        let lh = h.left_regular_matrix(&c).unwrap();
        let lfh = f.convolve(&h, &c).unwrap().left_regular_matrix(&c).unwrap();
        assert!(linalg::frobenius_norm(&(&lf * &lh - &lfh)) < 1e-12);

        let lstar = f.involution(&c).unwrap().left_regular_matrix(&c).unwrap();
        assert!(linalg::frobenius_norm(&(lf.adjoint() - lstar)) < 1e-12);
    }

    #[test]
    fn radius_sequence_matches_spectral_radius_of_matrices() {
        let (g, c) = cyclic_twisted(6);
        let mut rng = ChaCha12Rng::seed_from_u64(31);
        let f = TwistedElement::random(g.clone(), one(), &mut rng);
        let rho_matrix = f
            .spectrum(&c)
            .unwrap()
            .iter()
            .map(|l| l.norm())
            .fold(0.0f64, f64::max);
        let seq = f.spectral_radius_sequence(&c, 22).unwrap();
        let last = *seq.last().unwrap();
        assert!((last - rho_matrix).abs() < 1e-6 * (1.0 + rho_matrix));
    }
}
