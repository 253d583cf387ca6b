//! Finite-difference analysis of component fields u(x, y), v(x, y).
//!
//! A field f(xI + yE) = u I + v E is sampled on a uniform grid; the
//! analyses check the two Cauchy-Riemann variants (split sense u_x = v_y,
//! u_y = v_x; complex sense u_x = v_y, u_y = -v_x), the wave and Laplace
//! operators the components must satisfy, and the conjugate derivative
//! dbar f = (u_x - v_y)/2 I + (v_x - u_y)/2 E whose vanishing is the
//! coordinate-free form of the split condition.
//!
//! All stencils are second-order central differences on interior points;
//! boundary points are masked rather than treated one-sidedly, so every
//! reported residual has uniform accuracy and the h^2 convergence claims
//! are testable. Points where sampling failed are masked too, along with
//! any stencil that touches them.

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{Binarion, Signature};
use crate::error::Error;

/// How close a probe direction may come to a direction in which L - L0
/// stays non-invertible (radians).
pub const NULL_DIRECTION_TOL: f64 = 1e-3;

/// Default spread tolerance for the difference-quotient verdict.
pub const PROBE_TOL: f64 = 1e-6;

/// Rectangle and resolution of a sampling grid. Row-major with x varying
/// fastest: index = iy * nx + ix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    pub fn new(
        xmin: f64,
        xmax: f64,
        ymin: f64,
        ymax: f64,
        nx: usize,
        ny: usize,
    ) -> Result<Self, Error> {
        let spec = Self {
            xmin,
            xmax,
            ymin,
            ymax,
            nx,
            ny,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), Error> {
        if !(self.xmin.is_finite()
            && self.xmax.is_finite()
            && self.ymin.is_finite()
            && self.ymax.is_finite())
        {
            return Err(Error::InvalidGrid("non-finite bounds".to_string()));
        }
        if self.xmax <= self.xmin || self.ymax <= self.ymin {
            return Err(Error::InvalidGrid(format!(
                "empty rectangle [{}, {}] x [{}, {}]",
                self.xmin, self.xmax, self.ymin, self.ymax
            )));
        }
        if self.nx < 3 || self.ny < 3 {
            return Err(Error::InvalidGrid(format!(
                "need at least 3 points per axis for central differences, got {} x {}",
                self.nx, self.ny
            )));
        }
        Ok(())
    }

    pub fn hx(&self) -> f64 {
        (self.xmax - self.xmin) / (self.nx - 1) as f64
    }

    pub fn hy(&self) -> f64 {
        (self.ymax - self.ymin) / (self.ny - 1) as f64
    }

    pub fn x(&self, ix: usize) -> f64 {
        self.xmin + ix as f64 * self.hx()
    }

    pub fn y(&self, iy: usize) -> f64 {
        self.ymin + iy as f64 * self.hy()
    }

    fn idx(&self, ix: usize, iy: usize) -> usize {
        iy * self.nx + ix
    }

    fn len(&self) -> usize {
        self.nx * self.ny
    }
}

/// Which Cauchy-Riemann variant to test. Both share r1 = u_x - v_y; the
/// second residual is r2 = u_y - v_x in the split sense and
/// r2 = u_y + v_x in the complex sense.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrSense {
    Split,
    Complex,
}

impl CrSense {
    pub const fn label(self) -> &'static str {
        match self {
            CrSense::Split => "split",
            CrSense::Complex => "complex",
        }
    }
}

/// Component fields u, v sampled over a [`GridSpec`]. Sampling failures
/// are recorded in a mask (stored as zeros) rather than aborting the
/// whole grid; the mask does not survive JSON export.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldGrid {
    spec: GridSpec,
    u: Vec<f64>,
    v: Vec<f64>,
    mask: Vec<bool>,
}

impl FieldGrid {
    /// Wraps existing component arrays; every point counts as valid.
    pub fn from_parts(spec: GridSpec, u: Vec<f64>, v: Vec<f64>) -> Result<Self, Error> {
        spec.validate()?;
        if u.len() != spec.len() || v.len() != spec.len() {
            return Err(Error::InvalidGrid(format!(
                "component arrays must hold {} values, got {} and {}",
                spec.len(),
                u.len(),
                v.len()
            )));
        }
        if u.iter().chain(&v).any(|w| !w.is_finite()) {
            return Err(Error::InvalidGrid("non-finite component sample".to_string()));
        }
        let mask = vec![true; spec.len()];
        Ok(Self { spec, u, v, mask })
    }

    /// Samples u, v from a pointwise function of L = xI + yE in the given
    /// signature. Evaluation failures are masked, not propagated.
    pub fn sample(
        spec: GridSpec,
        sig: Signature,
        f: impl Fn(Binarion) -> Result<Binarion, Error>,
    ) -> Result<Self, Error> {
        spec.validate()?;
        let mut u = vec![0.0; spec.len()];
        let mut v = vec![0.0; spec.len()];
        let mut mask = vec![false; spec.len()];
        for iy in 0..spec.ny {
            for ix in 0..spec.nx {
                let i = spec.idx(ix, iy);
                if let Ok(w) = f(Binarion::new(spec.x(ix), spec.y(iy), sig)) {
                    u[i] = w.x();
                    v[i] = w.y();
                    mask[i] = true;
                }
            }
        }
        Ok(Self { spec, u, v, mask })
    }

    pub fn spec(&self) -> GridSpec {
        self.spec
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    pub fn v(&self) -> &[f64] {
        &self.v
    }

    pub fn valid_at(&self, ix: usize, iy: usize) -> bool {
        self.mask[self.spec.idx(ix, iy)]
    }

    /// Largest component magnitude over valid points; the natural scale
    /// for residual thresholds.
    pub fn field_scale(&self) -> f64 {
        let mut scale = 0.0f64;
        for i in 0..self.spec.len() {
            if self.mask[i] {
                scale = scale.max(self.u[i].abs()).max(self.v[i].abs());
            }
        }
        scale
    }

    /// True at interior points whose whole five-point stencil is valid.
    fn stencil_ok(&self, ix: usize, iy: usize) -> bool {
        ix >= 1
            && iy >= 1
            && ix + 1 < self.spec.nx
            && iy + 1 < self.spec.ny
            && [
                (ix, iy),
                (ix - 1, iy),
                (ix + 1, iy),
                (ix, iy - 1),
                (ix, iy + 1),
            ]
            .iter()
            .all(|&(jx, jy)| self.mask[self.spec.idx(jx, jy)])
    }

    fn partials(&self, ix: usize, iy: usize) -> (f64, f64, f64, f64) {
        let s = &self.spec;
        let (tx, ty) = (2.0 * s.hx(), 2.0 * s.hy());
        let u_x = (self.u[s.idx(ix + 1, iy)] - self.u[s.idx(ix - 1, iy)]) / tx;
        let u_y = (self.u[s.idx(ix, iy + 1)] - self.u[s.idx(ix, iy - 1)]) / ty;
        let v_x = (self.v[s.idx(ix + 1, iy)] - self.v[s.idx(ix - 1, iy)]) / tx;
        let v_y = (self.v[s.idx(ix, iy + 1)] - self.v[s.idx(ix, iy - 1)]) / ty;
        (u_x, u_y, v_x, v_y)
    }

    /// Central-difference Cauchy-Riemann residuals in the chosen sense.
    pub fn cr_residual(&self, sense: CrSense) -> ResidualGrid {
        self.residual_grid(|u_x, u_y, v_x, v_y| {
            let r1 = u_x - v_y;
            let r2 = match sense {
                CrSense::Split => u_y - v_x,
                CrSense::Complex => u_y + v_x,
            };
            (r1, r2)
        })
    }

    /// The conjugate derivative (u_x - v_y)/2 I + (v_x - u_y)/2 E as a
    /// residual grid: r1 is the identity component, r2 the E component.
    /// By construction r1 = cr_r1/2 and r2 = -cr_r2/2 in the split sense.
    pub fn dbar(&self) -> ResidualGrid {
        self.residual_grid(|u_x, u_y, v_x, v_y| (0.5 * (u_x - v_y), 0.5 * (v_x - u_y)))
    }

    fn residual_grid(&self, f: impl Fn(f64, f64, f64, f64) -> (f64, f64)) -> ResidualGrid {
        let spec = self.spec;
        let mut r1 = vec![0.0; spec.len()];
        let mut r2 = vec![0.0; spec.len()];
        let mut mask = vec![false; spec.len()];
        for iy in 1..spec.ny - 1 {
            for ix in 1..spec.nx - 1 {
                if !self.stencil_ok(ix, iy) {
                    continue;
                }
                let (u_x, u_y, v_x, v_y) = self.partials(ix, iy);
                let i = spec.idx(ix, iy);
                (r1[i], r2[i]) = f(u_x, u_y, v_x, v_y);
                mask[i] = true;
            }
        }
        ResidualGrid { spec, r1, r2, mask }
    }

    /// Max interior |u_xx - u_yy| and |v_xx - v_yy|.
    pub fn wave_residual(&self) -> (f64, f64) {
        self.second_order_residual(1.0, -1.0)
    }

    /// Max interior |u_xx + u_yy| and |v_xx + v_yy|.
    pub fn laplace_residual(&self) -> (f64, f64) {
        self.second_order_residual(1.0, 1.0)
    }

    fn second_order_residual(&self, cx: f64, cy: f64) -> (f64, f64) {
        let s = self.spec;
        let (hx2, hy2) = (s.hx() * s.hx(), s.hy() * s.hy());
        let mut max_u = 0.0f64;
        let mut max_v = 0.0f64;
        for iy in 1..s.ny - 1 {
            for ix in 1..s.nx - 1 {
                if !self.stencil_ok(ix, iy) {
                    continue;
                }
                let second = |w: &[f64]| {
                    let c = w[s.idx(ix, iy)];
                    let xx = (w[s.idx(ix + 1, iy)] - 2.0 * c + w[s.idx(ix - 1, iy)]) / hx2;
                    let yy = (w[s.idx(ix, iy + 1)] - 2.0 * c + w[s.idx(ix, iy - 1)]) / hy2;
                    cx * xx + cy * yy
                };
                max_u = max_u.max(second(&self.u).abs());
                max_v = max_v.max(second(&self.v).abs());
            }
        }
        (max_u, max_v)
    }

    /// Verdict on whether the field satisfies the chosen Cauchy-Riemann
    /// system up to discretization error. The threshold
    /// max(1e-6, 10 h^2 scale) separates stencil error, which shrinks
    /// like h^2, from a genuine violation, which stays O(1).
    pub fn analytic_verdict(&self, sense: CrSense) -> AnalyticReport {
        let res = self.cr_residual(sense);
        let h = self.spec.hx().max(self.spec.hy());
        let threshold = (10.0 * h * h * self.field_scale()).max(1e-6);
        let (max_r1, max_r2) = (res.max_r1(), res.max_r2());
        AnalyticReport {
            max_r1,
            max_r2,
            threshold,
            analytic: max_r1 <= threshold && max_r2 <= threshold,
        }
    }
}

impl Serialize for FieldGrid {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("FieldGrid", 8)?;
        st.serialize_field("xmin", &self.spec.xmin)?;
        st.serialize_field("xmax", &self.spec.xmax)?;
        st.serialize_field("ymin", &self.spec.ymin)?;
        st.serialize_field("ymax", &self.spec.ymax)?;
        st.serialize_field("nx", &self.spec.nx)?;
        st.serialize_field("ny", &self.spec.ny)?;
        st.serialize_field("u", &self.u)?;
        st.serialize_field("v", &self.v)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for FieldGrid {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            xmin: f64,
            xmax: f64,
            ymin: f64,
            ymax: f64,
            nx: usize,
            ny: usize,
            u: Vec<f64>,
            v: Vec<f64>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let spec = GridSpec::new(raw.xmin, raw.xmax, raw.ymin, raw.ymax, raw.nx, raw.ny)
            .map_err(D::Error::custom)?;
        FieldGrid::from_parts(spec, raw.u, raw.v).map_err(D::Error::custom)
    }
}

/// Two residual arrays over the interior of a grid. r1 and r2 are zero
/// at masked points; queries skip them.
#[derive(Clone, Debug)]
pub struct ResidualGrid {
    spec: GridSpec,
    r1: Vec<f64>,
    r2: Vec<f64>,
    mask: Vec<bool>,
}

impl ResidualGrid {
    pub fn spec(&self) -> GridSpec {
        self.spec
    }

    pub fn max_r1(&self) -> f64 {
        self.max_of(&self.r1)
    }

    pub fn max_r2(&self) -> f64 {
        self.max_of(&self.r2)
    }

    /// Largest magnitude across both residual components.
    pub fn max_abs(&self) -> f64 {
        self.max_r1().max(self.max_r2())
    }

    fn max_of(&self, r: &[f64]) -> f64 {
        r.iter()
            .zip(&self.mask)
            .filter(|(_, ok)| **ok)
            .fold(0.0f64, |m, (v, _)| m.max(v.abs()))
    }

    /// Valid interior values as (x, y, r1, r2) rows, y-major like storage.
    pub fn interior_values(&self) -> impl Iterator<Item = (f64, f64, f64, f64)> + '_ {
        let spec = self.spec;
        (0..spec.ny).flat_map(move |iy| {
            (0..spec.nx).filter_map(move |ix| {
                let i = spec.idx(ix, iy);
                self.mask[i].then(|| (spec.x(ix), spec.y(iy), self.r1[i], self.r2[i]))
            })
        })
    }

    /// CSV rows `x,y,r1,r2` of the valid interior points.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,r1,r2\n");
        for (x, y, r1, r2) in self.interior_values() {
            out.push_str(&format!("{x},{y},{r1},{r2}\n"));
        }
        out
    }
}

/// Outcome of [`FieldGrid::analytic_verdict`].
#[derive(Clone, Copy, Debug, Serialize)]
pub struct AnalyticReport {
    pub max_r1: f64,
    pub max_r2: f64,
    pub threshold: f64,
    pub analytic: bool,
}

/// Difference quotients (f(L) - f(L0)) / (L - L0) along straight rays.
#[derive(Clone, Debug)]
pub struct ProbeReport {
    /// Probe angles, as given.
    pub directions: Vec<f64>,
    /// Probe radii, decreasing, as given.
    pub radii: Vec<f64>,
    /// quotients[d][r] is the quotient for directions[d] at radii[r].
    pub quotients: Vec<Vec<Binarion>>,
    /// Quotient at the smallest radius, per direction.
    pub limits: Vec<Binarion>,
    /// Max pairwise 2-norm distance between the limits.
    pub spread: f64,
    pub tol: f64,
    /// spread <= tol at the smallest radius.
    pub differentiable: bool,
}

/// Angular distance from phi to the nearest direction along which
/// L - L0 is permanently singular. Split: the diagonals phi = pi/4 mod
/// pi/2. Parabolic: the vertical axis phi = pi/2 mod pi. Complex: none.
fn null_direction_distance(sig: Signature, phi: f64) -> f64 {
    let fold = |offset: f64, period: f64| {
        let r = (phi - offset).rem_euclid(period);
        r.min(period - r)
    };
    match sig {
        Signature::Split => fold(std::f64::consts::FRAC_PI_4, std::f64::consts::FRAC_PI_2),
        Signature::Parabolic => fold(std::f64::consts::FRAC_PI_2, std::f64::consts::PI),
        Signature::Complex => f64::INFINITY,
    }
}

/// Evaluates difference quotients of `f` at `l0` along the given angles
/// and radii. Directions too close to a null direction of the signature
/// are rejected: along those rays L - L0 never becomes invertible and
/// the quotient is undefined, which is exactly why the differentiability
/// notion excludes them.
pub fn diff_quotient_probe(
    f: impl Fn(Binarion) -> Result<Binarion, Error>,
    l0: Binarion,
    directions: &[f64],
    radii: &[f64],
    tol: f64,
) -> Result<ProbeReport, Error> {
    if directions.is_empty() || radii.is_empty() {
        return Err(Error::Domain {
            op: "diff_quotient_probe",
            message: "need at least one direction and one radius".to_string(),
        });
    }
    // NaN fails `*r > 0.0`, so it is rejected along with non-positive radii
    if radii.windows(2).any(|w| w[1] >= w[0]) || !radii.iter().all(|r| *r > 0.0) {
        return Err(Error::Domain {
            op: "diff_quotient_probe",
            message: "radii must be positive and strictly decreasing".to_string(),
        });
    }
    for &phi in directions {
        if null_direction_distance(l0.sig(), phi) <= NULL_DIRECTION_TOL {
            return Err(Error::NullDirection { phi });
        }
    }

    let f0 = f(l0)?;
    let mut quotients = Vec::with_capacity(directions.len());
    for &phi in directions {
        let mut along = Vec::with_capacity(radii.len());
        for &r in radii {
            let step = Binarion::new(r * phi.cos(), r * phi.sin(), l0.sig());
            let q = (f(l0 + step)? - f0).checked_div(step)?;
            along.push(q);
        }
        quotients.push(along);
    }

    let limits: Vec<Binarion> = quotients.iter().map(|q| *q.last().unwrap()).collect();
    let mut spread = 0.0f64;
    for i in 0..limits.len() {
        for j in i + 1..limits.len() {
            spread = spread.max((limits[i] - limits[j]).norm2());
        }
    }
    Ok(ProbeReport {
        directions: directions.to_vec(),
        radii: radii.to_vec(),
        quotients,
        limits,
        spread,
        tol,
        differentiable: spread <= tol,
    })
}
