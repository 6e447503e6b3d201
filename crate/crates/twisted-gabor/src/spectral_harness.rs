//! Registered matrix representations and cross-representation spectral
//! checks.
//!
//! A [`RepresentationSpec`] stores one unitary image per group element and is
//! only handed out after the integrated axioms are verified on point masses:
//! unitality, the projective product law, and compatibility with the twisted
//! involution. Faithfulness is recorded as the rank of the linearization
//! `f ↦ π(f)`.
//!
//! On top of that the module compares spectra across faithful
//! representations, checks the dyadic norm sequence against operator norms,
//! and checks that the grade-one embedding into the Mackey group preserves
//! spectral radii and operator norms.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Ratio;
use thiserror::Error;

use crate::cocycle::Cocycle;
use crate::linalg;
use crate::mackey::{grade_projector, MackeyError, MackeyFunction, MackeyGroup};
use crate::twisted_algebra::{AlgebraError, TwistedElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepresentationError {
    #[error("expected {expected} images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("image {index} is {rows}×{cols}, expected square of dimension {dim}")]
    ImageShape {
        index: usize,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("image of the identity deviates from the unit matrix by {residual:.3e}")]
    NotUnital { residual: f64 },
    #[error("product law fails at ({x}, {y}) with residual {residual:.3e}")]
    NotMultiplicative { x: usize, y: usize, residual: f64 },
    #[error("involution law fails at {x} with residual {residual:.3e}")]
    NotInvolutive { x: usize, residual: f64 },
    #[error("element belongs to a different algebra than the representation")]
    AlgebraMismatch,
    #[error("element carries weight {got}, representation integrates with {expected}")]
    WeightMismatch {
        expected: Ratio<i64>,
        got: Ratio<i64>,
    },
    #[error("a left-sided representation is required here")]
    WrongSide,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarnessError {
    #[error("representation {name} is not faithful: rank {rank} of {expected}")]
    NotFaithful {
        name: String,
        rank: usize,
        expected: usize,
    },
    #[error("representation acts on a different algebra than the element")]
    RepresentationMismatch,
    #[error("element is not self-adjoint: deviation {deviation:.3e}")]
    NotSelfAdjoint { deviation: f64 },
    #[error("eigenvalue iteration failed to converge")]
    Eigen,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Representation(#[from] RepresentationError),
    #[error(transparent)]
    Mackey(#[from] MackeyError),
}

/// A matrix `*`-representation of `ℓ¹(G, c)`, verified at registration.
///
/// The stored images are the operators assigned to point masses divided by
/// the Haar weight; integration is `π(f) = Σ_x w·f(x)·U_x`. A right-sided
/// spec represents the opposite multiplication order,
/// `π(f ♮ h) = π(h)·π(f)`, which leaves spectra untouched.
#[derive(Debug, Clone)]
pub struct RepresentationSpec {
    name: String,
    side: Side,
    cocycle: Cocycle,
    weight: Ratio<i64>,
    images: Vec<DMatrix<Complex64>>,
    dim: usize,
    rank: usize,
}

impl RepresentationSpec {
    /// Verifies the representation axioms on all point masses and registers
    /// the images. The first violated axiom is reported.
    pub fn new(
        name: impl Into<String>,
        side: Side,
        cocycle: &Cocycle,
        weight: Ratio<i64>,
        images: Vec<DMatrix<Complex64>>,
    ) -> Result<Self, RepresentationError> {
        let group = cocycle.group();
        let n = group.order();
        if images.len() != n {
            return Err(RepresentationError::ImageCount {
                expected: n,
                got: images.len(),
            });
        }
        let dim = images[0].nrows();
        for (index, img) in images.iter().enumerate() {
            if img.nrows() != dim || img.ncols() != dim || dim == 0 {
                return Err(RepresentationError::ImageShape {
                    index,
                    rows: img.nrows(),
                    cols: img.ncols(),
                    dim,
                });
            }
        }

        let eye = DMatrix::<Complex64>::identity(dim, dim);
        let unital_residual = linalg::frobenius_norm(&(&images[group.identity()] - &eye));
        if unital_residual > 1e-12 * (dim as f64).sqrt().max(1.0) {
            return Err(RepresentationError::NotUnital {
                residual: unital_residual,
            });
        }

        for x in 0..n {
            for y in 0..n {
                let expected = &images[group.op(x, y)] * cocycle.value_c(x, y);
                let product = match side {
                    Side::Left => &images[x] * &images[y],
                    Side::Right => &images[y] * &images[x],
                };
                let residual = linalg::frobenius_norm(&(product - expected));
                if residual > 1e-12 * (dim as f64) {
                    return Err(RepresentationError::NotMultiplicative { x, y, residual });
                }
            }
        }

        for x in 0..n {
            let expected = &images[group.inv(x)] * cocycle.value_c(x, group.inv(x)).conj();
            let residual = linalg::frobenius_norm(&(images[x].adjoint() - expected));
            if residual > 1e-12 * (dim as f64) {
                return Err(RepresentationError::NotInvolutive { x, residual });
            }
        }

        let mut stacked = DMatrix::zeros(dim * dim, n);
        for (x, img) in images.iter().enumerate() {
            for (r, v) in img.iter().enumerate() {
                stacked[(r, x)] = *v;
            }
        }
        let rank = linalg::numerical_rank(&stacked);

        Ok(RepresentationSpec {
            name: name.into(),
            side,
            cocycle: cocycle.clone(),
            weight,
            images,
            dim,
            rank,
        })
    }

    /// The left regular representation `h ↦ f ♮ h` on `ℓ²(G)`.
    pub fn left_regular(
        name: impl Into<String>,
        cocycle: &Cocycle,
        weight: Ratio<i64>,
    ) -> Result<Self, RepresentationError> {
        let group = cocycle.group();
        let n = group.order();
        let images = (0..n)
            .map(|y| {
                DMatrix::from_fn(n, n, |i, j| {
                    if i == group.op(y, j) {
                        cocycle.value_c(y, j)
                    } else {
                        Complex64::ZERO
                    }
                })
            })
            .collect();
        Self::new(name, Side::Left, cocycle, weight, images)
    }

    /// The right multiplication `h ↦ h ♮ f` on `ℓ²(G)`, a right-sided
    /// representation with the same spectra as the left regular one.
    pub fn right_multiplication(
        name: impl Into<String>,
        cocycle: &Cocycle,
        weight: Ratio<i64>,
    ) -> Result<Self, RepresentationError> {
        let group = cocycle.group();
        let n = group.order();
        let images = (0..n)
            .map(|y| {
                DMatrix::from_fn(n, n, |i, j| {
                    if i == group.op(j, y) {
                        cocycle.value_c(j, y)
                    } else {
                        Complex64::ZERO
                    }
                })
            })
            .collect();
        Self::new(name, Side::Right, cocycle, weight, images)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn weight(&self) -> Ratio<i64> {
        self.weight
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn image(&self, x: usize) -> &DMatrix<Complex64> {
        &self.images[x]
    }

    /// Rank of the linearization `f ↦ π(f)`; faithful means full rank.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn expected_rank(&self) -> usize {
        self.cocycle.group().order()
    }

    pub fn is_faithful(&self) -> bool {
        self.rank == self.expected_rank()
    }

    /// The integrated operator `π(f) = Σ_x w·f(x)·U_x`.
    pub fn apply(&self, f: &TwistedElement) -> Result<DMatrix<Complex64>, RepresentationError> {
        if f.group().as_ref() != self.cocycle.group().as_ref() {
            return Err(RepresentationError::AlgebraMismatch);
        }
        if f.weight() != self.weight {
            return Err(RepresentationError::WeightMismatch {
                expected: self.weight,
                got: f.weight(),
            });
        }
        let w = f.weight_f64();
        let mut out = DMatrix::zeros(self.dim, self.dim);
        for (x, img) in self.images.iter().enumerate() {
            let fx = f.coeff(x);
            if fx != Complex64::ZERO {
                out += img * (w * fx);
            }
        }
        Ok(out)
    }

    pub fn operator_norm(&self, f: &TwistedElement) -> Result<f64, RepresentationError> {
        Ok(linalg::operator_norm(&self.apply(f)?))
    }
}

/// Per-representation outcome of a spectra comparison.
#[derive(Debug, Clone)]
pub struct RepSpectrum {
    pub name: String,
    pub eigenvalues: Vec<Complex64>,
    pub distinct: Vec<Complex64>,
    pub hausdorff_distance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct SpectraComparison {
    pub reference: Vec<Complex64>,
    pub reference_distinct: Vec<Complex64>,
    pub representations: Vec<RepSpectrum>,
    pub tolerance: f64,
    pub passed: bool,
}

/// Compares the algebra spectrum of `f` (eigenvalues of its left regular
/// matrix) with the spectra of `π(f)` across faithful representations.
///
/// Multiplicities are allowed to differ; the comparison deduplicates at
/// `1e-8` and requires Hausdorff distance at most `1e-8·(1 + ‖f‖₁)`.
pub fn compare_spectra(
    f: &TwistedElement,
    c: &Cocycle,
    reps: &[&RepresentationSpec],
) -> Result<SpectraComparison, HarnessError> {
    let reference = f.spectrum(c)?;
    let reference_distinct = linalg::dedup_complex(&reference, 1e-8);
    let tolerance = 1e-8 * (1.0 + f.l1_norm());
    let mut representations = Vec::with_capacity(reps.len());
    let mut passed = true;
    for rep in reps {
        if rep.cocycle() != c {
            return Err(HarnessError::RepresentationMismatch);
        }
        if !rep.is_faithful() {
            return Err(HarnessError::NotFaithful {
                name: rep.name().to_string(),
                rank: rep.rank(),
                expected: rep.expected_rank(),
            });
        }
        let m = rep.apply(f)?;
        let eigenvalues = linalg::eigenvalues(&m).ok_or(HarnessError::Eigen)?;
        let distinct = linalg::dedup_complex(&eigenvalues, 1e-8);
        let hausdorff_distance = linalg::hausdorff_distance(&reference_distinct, &distinct);
        let ok = hausdorff_distance <= tolerance;
        passed &= ok;
        representations.push(RepSpectrum {
            name: rep.name().to_string(),
            eigenvalues,
            distinct,
            hausdorff_distance,
            passed: ok,
        });
    }
    Ok(SpectraComparison {
        reference,
        reference_distinct,
        representations,
        tolerance,
        passed,
    })
}

#[derive(Debug, Clone)]
pub struct HulanickiReport {
    pub sequence: Vec<f64>,
    pub operator_norm: f64,
    pub monotone: bool,
    pub relative_gap: f64,
    pub passed: bool,
}

/// For self-adjoint `f` under a faithful representation, the dyadic sequence
/// `‖f^{2^k}‖₁^{1/2^k}` decreases to `‖π(f)‖`; the report records the
/// sequence, its limit gap at `k_max`, and monotonicity.
pub fn hulanicki_convergence(
    f: &TwistedElement,
    c: &Cocycle,
    rep: &RepresentationSpec,
    k_max: usize,
) -> Result<HulanickiReport, HarnessError> {
    let deviation = f.self_adjointness_deviation(c)?;
    if deviation > 1e-10 * (1.0 + f.l1_norm()) {
        return Err(HarnessError::NotSelfAdjoint { deviation });
    }
    if rep.cocycle() != c {
        return Err(HarnessError::RepresentationMismatch);
    }
    if !rep.is_faithful() {
        return Err(HarnessError::NotFaithful {
            name: rep.name().to_string(),
            rank: rep.rank(),
            expected: rep.expected_rank(),
        });
    }
    let sequence = f.spectral_radius_sequence(c, k_max)?;
    let operator_norm = rep.operator_norm(f)?;
    let monotone = sequence
        .windows(2)
        .all(|w| w[1] <= w[0] * (1.0 + 1e-12) + 1e-15);
    let relative_gap =
        (sequence.last().copied().unwrap_or(0.0) - operator_norm).abs() / (1.0 + operator_norm);
    let passed = monotone && relative_gap <= 1e-6;
    Ok(HulanickiReport {
        sequence,
        operator_norm,
        monotone,
        relative_gap,
        passed,
    })
}

#[derive(Debug, Clone)]
pub struct CstarNormReport {
    pub norms: Vec<(String, f64)>,
    pub max_relative_spread: f64,
    pub passed: bool,
}

/// Compares `‖π(f)‖` across faithful representations; all of them carry the
/// unique C*-norm of the finite-dimensional algebra, so the spread must stay
/// at rounding level.
pub fn cstar_norm_comparison(
    f: &TwistedElement,
    c: &Cocycle,
    reps: &[&RepresentationSpec],
) -> Result<CstarNormReport, HarnessError> {
    let mut norms = vec![(
        "left-regular".to_string(),
        linalg::operator_norm(&f.left_regular_matrix(c)?),
    )];
    for rep in reps {
        if rep.cocycle() != c {
            return Err(HarnessError::RepresentationMismatch);
        }
        if !rep.is_faithful() {
            return Err(HarnessError::NotFaithful {
                name: rep.name().to_string(),
                rank: rep.rank(),
                expected: rep.expected_rank(),
            });
        }
        norms.push((rep.name().to_string(), rep.operator_norm(f)?));
    }
    let max = norms.iter().map(|(_, n)| *n).fold(0.0f64, f64::max);
    let min = norms.iter().map(|(_, n)| *n).fold(f64::INFINITY, f64::min);
    let max_relative_spread = (max - min) / (1.0 + max);
    let passed = max_relative_spread <= 1e-10;
    Ok(CstarNormReport {
        norms,
        max_relative_spread,
        passed,
    })
}

#[derive(Debug, Clone)]
pub struct TransferSelfAdjointPart {
    pub base_operator_norm: f64,
    pub mackey_operator_norm: f64,
    pub norm_gap: f64,
}

#[derive(Debug, Clone)]
pub struct TransferReport {
    pub sequence_base: Vec<f64>,
    pub sequence_mackey: Vec<f64>,
    pub max_term_gap: f64,
    pub radius_base: f64,
    pub radius_mackey: f64,
    pub radius_gap: f64,
    pub complement_leakage: f64,
    pub self_adjoint_part: Option<TransferSelfAdjointPart>,
    pub passed: bool,
}

/// Checks that the grade-one embedding `j` transfers spectral data from
/// `ℓ¹(G, c)` to `L¹(G_c)`: the dyadic radius sequences agree termwise, the
/// left convolution by `j(f)` vanishes on the complement of the grade-one
/// subspace, and for self-adjoint `f` the operator norms coincide.
pub fn transfer_check(
    f: &TwistedElement,
    c: &Cocycle,
    k_max: usize,
) -> Result<TransferReport, HarnessError> {
    let mackey = MackeyGroup::new(c)?;
    let embedded = MackeyFunction::embed(f, &mackey)?;

    let sequence_base = f.spectral_radius_sequence(c, k_max)?;
    let sequence_mackey = embedded.spectral_radius_sequence(k_max)?;
    let max_term_gap = sequence_base
        .iter()
        .zip(&sequence_mackey)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    let radius_base = *sequence_base.last().expect("nonempty sequence");
    let radius_mackey = *sequence_mackey.last().expect("nonempty sequence");
    let radius_gap = (radius_base - radius_mackey).abs();

    let lj = embedded.left_regular_matrix();
    let n = mackey.order();
    let eye = DMatrix::<Complex64>::identity(n, n);
    let complement = &eye - grade_projector(&mackey, 1);
    let complement_leakage = linalg::operator_norm(&(&lj * complement));

    let scale = 1.0 + f.l1_norm();
    let deviation = f.self_adjointness_deviation(c)?;
    let self_adjoint_part = if deviation <= 1e-10 * scale {
        let base_operator_norm = linalg::operator_norm(&f.left_regular_matrix(c)?);
        let mackey_operator_norm = linalg::operator_norm(&lj);
        let norm_gap = (base_operator_norm - mackey_operator_norm).abs();
        Some(TransferSelfAdjointPart {
            base_operator_norm,
            mackey_operator_norm,
            norm_gap,
        })
    } else {
        None
    };

    let mut passed = radius_gap <= 1e-6 * (1.0 + radius_base)
        && complement_leakage <= 1e-12 * scale;
    if let Some(part) = &self_adjoint_part {
        passed &= part.norm_gap <= 1e-12 * (1.0 + part.base_operator_norm);
    }

    Ok(TransferReport {
        sequence_base,
        sequence_mackey,
        max_term_gap,
        radius_base,
        radius_mackey,
        radius_gap,
        complement_leakage,
        self_adjoint_part,
        passed,
    })
}
