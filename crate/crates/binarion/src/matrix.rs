//! Faithful 2x2 matrix representations of the algebra.
//!
//! Each signature embeds into the real 2x2 matrices:
//! split as symmetric circulants `[[x, y], [y, x]]`,
//! complex as rotation-scalings `[[x, -y], [y, x]]`,
//! parabolic as upper-triangular Jordan blocks `[[x, y], [0, x]]`.
//!
//! Everything here is computed with direct 2x2 formulas (adjugate inverse,
//! quadratic-formula eigenvalues) rather than the closed forms of the
//! algebra kernels, so this module doubles as an independent reference
//! route in tests. Keep it elementary; that independence is the point.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{Binarion, Eigenvalue, Signature, Spectrum};
use crate::error::Error;
use crate::structure;

/// Entry tolerance for recognizing a representation shape.
pub const SHAPE_TOL: f64 = 1e-12;

/// Plain real 2x2 matrix, row major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2 {
    pub m: [[f64; 2]; 2],
}

impl Mat2 {
    pub const fn new(m: [[f64; 2]; 2]) -> Self {
        Self { m }
    }

    pub const fn identity() -> Self {
        Self::new([[1.0, 0.0], [0.0, 1.0]])
    }

    pub fn det(self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(self) -> f64 {
        self.m[0][0] + self.m[1][1]
    }

    /// Largest absolute entry; the residual metric used by [`iso_check`].
    pub fn max_abs(self) -> f64 {
        self.m
            .iter()
            .flatten()
            .fold(0.0f64, |acc, v| acc.max(v.abs()))
    }

    fn frobenius_sq(self) -> f64 {
        self.m.iter().flatten().map(|v| v * v).sum()
    }

    /// Adjugate inverse with a scale-aware singularity cutoff.
    pub fn inv(self) -> Result<Mat2, Error> {
        let det = self.det();
        let tol = 1e-12 * f64::max(1.0, self.frobenius_sq());
        if det.abs() <= tol {
            return Err(Error::Singular { det });
        }
        let [[a, b], [c, d]] = self.m;
        Ok(Mat2::new([
            [d / det, -b / det],
            [-c / det, a / det],
        ]))
    }

    /// Eigenvalues by the quadratic formula on the characteristic polynomial.
    pub fn eig(self) -> Spectrum {
        let tr = self.trace();
        let det = self.det();
        let disc = tr * tr - 4.0 * det;
        if disc >= 0.0 {
            let root = disc.sqrt();
            Spectrum {
                lambda1: Eigenvalue::real(0.5 * (tr + root)),
                lambda2: Eigenvalue::real(0.5 * (tr - root)),
            }
        } else {
            let root = (-disc).sqrt();
            Spectrum {
                lambda1: Eigenvalue {
                    re: 0.5 * tr,
                    im: 0.5 * root,
                },
                lambda2: Eigenvalue {
                    re: 0.5 * tr,
                    im: -0.5 * root,
                },
            }
        }
    }
}

impl std::ops::Add for Mat2 {
    type Output = Mat2;

    fn add(self, rhs: Mat2) -> Mat2 {
        let a = self.m;
        let b = rhs.m;
        Mat2::new([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl std::ops::Sub for Mat2 {
    type Output = Mat2;

    fn sub(self, rhs: Mat2) -> Mat2 {
        let a = self.m;
        let b = rhs.m;
        Mat2::new([
            [a[0][0] - b[0][0], a[0][1] - b[0][1]],
            [a[1][0] - b[1][0], a[1][1] - b[1][1]],
        ])
    }
}

impl std::ops::Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = self.m;
        let b = rhs.m;
        Mat2::new([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Mat2", 1)?;
        st.serialize_field("m", &self.m)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Mat2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            m: [[f64; 2]; 2],
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.m.iter().flatten().any(|v| !v.is_finite()) {
            return Err(D::Error::custom("matrix entries must be finite"));
        }
        Ok(Mat2::new(raw.m))
    }
}

/// Image of `xI + yE` under the faithful representation for its signature.
pub fn to_matrix(a: Binarion) -> Mat2 {
    let (x, y) = a.parts();
    match a.sig() {
        Signature::Split => Mat2::new([[x, y], [y, x]]),
        Signature::Complex => Mat2::new([[x, -y], [y, x]]),
        Signature::Parabolic => Mat2::new([[x, y], [0.0, x]]),
    }
}

/// Inverse of [`to_matrix`]; the matrix must match the shape for `sig`
/// within [`SHAPE_TOL`].
pub fn from_matrix(m: &Mat2, sig: Signature) -> Result<Binarion, Error> {
    let [[a, b], [c, d]] = m.m;
    let shape_ok = match sig {
        Signature::Split => (a - d).abs() <= SHAPE_TOL && (b - c).abs() <= SHAPE_TOL,
        Signature::Complex => (a - d).abs() <= SHAPE_TOL && (b + c).abs() <= SHAPE_TOL,
        Signature::Parabolic => (a - d).abs() <= SHAPE_TOL && c.abs() <= SHAPE_TOL,
    };
    if !shape_ok {
        return Err(Error::ShapeError { expected: sig });
    }
    let y = match sig {
        Signature::Split | Signature::Parabolic => b,
        Signature::Complex => c,
    };
    Binarion::try_new(a, y, sig)
}

/// Residual summary from [`iso_check`]. Failures are reported, not thrown.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct IsoReport {
    pub trials: usize,
    pub seed: u64,
    /// Largest entry residual of map(a + b) vs map(a) + map(b).
    pub max_add_residual: f64,
    /// Largest entry residual of map(a * b) vs map(a) * map(b).
    pub max_mul_residual: f64,
    pub max_det_residual: f64,
    pub max_trace_residual: f64,
    /// Largest sorted-eigenvalue distance between the two routes.
    pub max_spectrum_residual: f64,
    /// Count of membership disagreements in the subgroup spot checks
    /// (split signature only; zero for the other signatures).
    pub subgroup_failures: usize,
}

impl IsoReport {
    /// Largest of the homomorphism and invariant residuals.
    pub fn max_residual(&self) -> f64 {
        self.max_add_residual
            .max(self.max_mul_residual)
            .max(self.max_det_residual)
            .max(self.max_trace_residual)
            .max(self.max_spectrum_residual)
    }
}

/// Randomized check that `to_matrix` is a ring isomorphism onto its image
/// and that det, trace, and spectrum agree along both routes.
///
/// Components are drawn uniformly from [-10, 10] with a seeded generator,
/// so a report is reproducible from (sig, trials, seed). For the split
/// signature each trial also spot-checks the subgroup correspondences:
/// det > 0 marks the invertible double cone, det = 1 its unit-determinant
/// subgroup, and det > 0 with positive corner entry the exponential cone.
pub fn iso_check(sig: Signature, trials: usize, seed: u64) -> IsoReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = IsoReport {
        trials,
        seed,
        max_add_residual: 0.0,
        max_mul_residual: 0.0,
        max_det_residual: 0.0,
        max_trace_residual: 0.0,
        max_spectrum_residual: 0.0,
        subgroup_failures: 0,
    };

    for _ in 0..trials {
        let a = Binarion::new(
            rng.random_range(-10.0..10.0),
            rng.random_range(-10.0..10.0),
            sig,
        );
        let b = Binarion::new(
            rng.random_range(-10.0..10.0),
            rng.random_range(-10.0..10.0),
            sig,
        );
        let (ma, mb) = (to_matrix(a), to_matrix(b));

        let add_res = (to_matrix(a + b) - (ma + mb)).max_abs();
        let mul_res = (to_matrix(a * b) - ma * mb).max_abs();
        let det_res = (a.det() - ma.det()).abs();
        let trace_res = (a.trace() - ma.trace()).abs();
        let spec_res = a.spectrum().dist(ma.eig());

        report.max_add_residual = report.max_add_residual.max(add_res);
        report.max_mul_residual = report.max_mul_residual.max(mul_res);
        report.max_det_residual = report.max_det_residual.max(det_res);
        report.max_trace_residual = report.max_trace_residual.max(trace_res);
        report.max_spectrum_residual = report.max_spectrum_residual.max(spec_res);

        if sig == Signature::Split {
            report.subgroup_failures += subgroup_mismatches(&mut rng, a, ma);
        }
    }
    report
}

/// Membership along the algebra route must match the matrix-side predicate.
fn subgroup_mismatches(rng: &mut ChaCha8Rng, a: Binarion, ma: Mat2) -> usize {
    let mut failures = 0;
    let region = structure::classify(a, structure::DEFAULT_TOL);
    if region.pos_det != (ma.det() > structure::DEFAULT_TOL) {
        failures += 1;
    }
    if region.exp_cone != (ma.det() > structure::DEFAULT_TOL && ma.m[0][0] > 0.0) {
        failures += 1;
    }

    // A constructed unit-determinant element: det(cosh t, sinh t) = 1.
    let t: f64 = rng.random_range(-3.0..3.0);
    let branch = if rng.random_range(0.0..1.0f64) < 0.5 {
        1.0
    } else {
        -1.0
    };
    let u = Binarion::new(branch * t.cosh(), t.sinh(), Signature::Split);
    let mu = to_matrix(u);
    let u_region = structure::classify(u, structure::DEFAULT_TOL);
    if !u_region.unit_det || (mu.det() - 1.0).abs() > 1e-9 {
        failures += 1;
    }
    if (branch > 0.0) != (u_region.exp_cone && mu.m[0][0] > 0.0) {
        failures += 1;
    }
    failures
}
