//! Piecewise-parametric contours and line integrals of operator fields.
//!
//! The integral of f along C is built from f(L(t)) * L'(t) with
//! L'(t) = x'(t) I + y'(t) E, evaluated by composite Gauss-Legendre
//! panels per segment. Circles and line segments use their analytic
//! derivatives; sampled paths use centered differences of the sample
//! polyline with linear interpolation in between (and their sample
//! intervals as panels, ignoring the subdivision setting).
//!
//! Closed-contour integrals of analytic fields vanish; there is no
//! analogue of the residue that would make 1/(L - L0) integrate to
//! anything else. [`Contour::cauchy_probe`] makes that checkable: with
//! positive clearance from the singular lines the integral is computed
//! (and comes out near zero), otherwise the probe reports Divergent
//! rather than integrating through a singularity.

use serde::{Deserialize, Serialize};

use crate::algebra::{Binarion, Signature};
use crate::error::Error;

/// Max endpoint gap between consecutive segments.
pub const CONTINUITY_TOL: f64 = 1e-9;

/// Samples per segment for clearance scans and bounding boxes.
const SCAN_SAMPLES: usize = 2048;

/// One parametric piece of a contour.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Segment {
    /// Counterclockwise full circle, parameter t in [0, 2pi].
    Circle { cx: f64, cy: f64, r: f64 },
    /// Straight segment, parameter t in [0, 1].
    Line { from: [f64; 2], to: [f64; 2] },
    /// Polyline samples (t, x, y) with strictly increasing t.
    Path { points: Vec<[f64; 3]> },
}

impl Segment {
    fn validate(&self) -> Result<(), Error> {
        match self {
            Segment::Circle { cx, cy, r } => {
                if !(cx.is_finite() && cy.is_finite() && r.is_finite()) {
                    return Err(Error::InvalidContour("non-finite circle".to_string()));
                }
                if *r <= 0.0 {
                    return Err(Error::InvalidContour(format!("circle radius {r} not positive")));
                }
            }
            Segment::Line { from, to } => {
                if from.iter().chain(to).any(|v| !v.is_finite()) {
                    return Err(Error::InvalidContour("non-finite line endpoint".to_string()));
                }
            }
            Segment::Path { points } => {
                if points.len() < 2 {
                    return Err(Error::InvalidContour(format!(
                        "path needs at least 2 points, got {}",
                        points.len()
                    )));
                }
                if points.iter().flatten().any(|v| !v.is_finite()) {
                    return Err(Error::InvalidContour("non-finite path point".to_string()));
                }
                if points.windows(2).any(|w| w[1][0] <= w[0][0]) {
                    return Err(Error::InvalidContour(
                        "path parameter must be strictly increasing".to_string(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn param_range(&self) -> (f64, f64) {
        match self {
            Segment::Circle { .. } => (0.0, std::f64::consts::TAU),
            Segment::Line { .. } => (0.0, 1.0),
            Segment::Path { points } => (points[0][0], points[points.len() - 1][0]),
        }
    }

    fn start(&self) -> [f64; 2] {
        match self {
            Segment::Circle { cx, cy, r } => [cx + r, *cy],
            Segment::Line { from, .. } => *from,
            Segment::Path { points } => [points[0][1], points[0][2]],
        }
    }

    fn end(&self) -> [f64; 2] {
        match self {
            Segment::Circle { cx, cy, r } => [cx + r, *cy],
            Segment::Line { to, .. } => *to,
            Segment::Path { points } => {
                let p = points[points.len() - 1];
                [p[1], p[2]]
            }
        }
    }

    /// Position at parameter t (linear interpolation for paths).
    fn point(&self, t: f64) -> [f64; 2] {
        match self {
            Segment::Circle { cx, cy, r } => [cx + r * t.cos(), cy + r * t.sin()],
            Segment::Line { from, to } => [
                from[0] + t * (to[0] - from[0]),
                from[1] + t * (to[1] - from[1]),
            ],
            Segment::Path { points } => {
                let (i, s) = self.locate(t);
                let (p, q) = (points[i], points[i + 1]);
                [p[1] + s * (q[1] - p[1]), p[2] + s * (q[2] - p[2])]
            }
        }
    }

    /// Index of the sample interval containing t and the fraction within
    /// it. Paths only.
    fn locate(&self, t: f64) -> (usize, f64) {
        let Segment::Path { points } = self else {
            unreachable!("locate is only called for paths");
        };
        let i = match points
            .binary_search_by(|p| p[0].partial_cmp(&t).expect("finite parameters"))
        {
            Ok(i) => i.min(points.len() - 2),
            Err(0) => 0,
            Err(i) => (i - 1).min(points.len() - 2),
        };
        let (a, b) = (points[i][0], points[i + 1][0]);
        (i, ((t - a) / (b - a)).clamp(0.0, 1.0))
    }
}

/// Derivative samples for a path segment: centered differences at
/// interior nodes, one-sided at the ends.
fn path_derivatives(points: &[[f64; 3]]) -> Vec<[f64; 2]> {
    let n = points.len();
    (0..n)
        .map(|i| {
            let (a, b) = match i {
                0 => (0, 1),
                i if i == n - 1 => (n - 2, n - 1),
                i => (i - 1, i + 1),
            };
            let dt = points[b][0] - points[a][0];
            [
                (points[b][1] - points[a][1]) / dt,
                (points[b][2] - points[a][2]) / dt,
            ]
        })
        .collect()
}

/// Composite Gauss-Legendre settings: polynomial order per panel and the
/// number of panels per circle or line segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quadrature {
    pub order: usize,
    pub subdivisions: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self {
            order: 8,
            subdivisions: 64,
        }
    }
}

impl Quadrature {
    fn validate(&self) -> Result<(), Error> {
        if self.order == 0 || self.order > 64 {
            return Err(Error::InvalidQuadrature(format!(
                "order must be in 1..=64, got {}",
                self.order
            )));
        }
        if self.subdivisions == 0 {
            return Err(Error::InvalidQuadrature("subdivisions must be positive".to_string()));
        }
        Ok(())
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on
/// the Legendre recurrence.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let step = p / dp;
            x -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    debug_assert!(n >= 1);
    let mut prev = 1.0;
    let mut cur = x;
    for k in 2..=n {
        let next = ((2 * k - 1) as f64 * x * cur - (k - 1) as f64 * prev) / k as f64;
        prev = cur;
        cur = next;
    }
    // Valid for |x| < 1, which holds at every interior node.
    let dp = n as f64 * (x * cur - prev) / (x * x - 1.0);
    (cur, dp)
}

/// Outcome of [`Contour::cauchy_probe`]: either the value of the
/// integral, or a report that the contour comes too close to the
/// singular set of 1/(L - L0) for the integral to mean anything.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum CauchyOutcome {
    Value(Binarion),
    Divergent { clearance: f64, threshold: f64 },
}

/// A chain of segments whose consecutive endpoints coincide.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Contour {
    closed: bool,
    segments: Vec<Segment>,
}

impl Contour {
    pub fn new(segments: Vec<Segment>, closed: bool) -> Result<Self, Error> {
        if segments.is_empty() {
            return Err(Error::InvalidContour("no segments".to_string()));
        }
        for seg in &segments {
            seg.validate()?;
        }
        let gap = |a: [f64; 2], b: [f64; 2]| (a[0] - b[0]).hypot(a[1] - b[1]);
        for (k, pair) in segments.windows(2).enumerate() {
            let g = gap(pair[0].end(), pair[1].start());
            if g > CONTINUITY_TOL {
                return Err(Error::InvalidContour(format!(
                    "segments {k} and {} do not meet: gap {g:e}",
                    k + 1
                )));
            }
        }
        if closed {
            let g = gap(segments[segments.len() - 1].end(), segments[0].start());
            if g > CONTINUITY_TOL {
                return Err(Error::InvalidContour(format!(
                    "marked closed but endpoints differ by {g:e}"
                )));
            }
        }
        Ok(Self { closed, segments })
    }

    /// Counterclockwise circle, closed.
    pub fn circle(cx: f64, cy: f64, r: f64) -> Result<Self, Error> {
        Self::new(vec![Segment::Circle { cx, cy, r }], true)
    }

    /// Closed polygon through the vertices in order.
    pub fn polygon(vertices: &[[f64; 2]]) -> Result<Self, Error> {
        if vertices.len() < 3 {
            return Err(Error::InvalidContour(format!(
                "polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        let segments = (0..vertices.len())
            .map(|i| Segment::Line {
                from: vertices[i],
                to: vertices[(i + 1) % vertices.len()],
            })
            .collect();
        Self::new(segments, true)
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Composite Gauss-Legendre integral of f(L(t)) * L'(t) dt over the
    /// whole contour, with contour points embedded in the given
    /// signature.
    pub fn integrate(
        &self,
        sig: Signature,
        f: impl Fn(Binarion) -> Result<Binarion, Error>,
        quad: Quadrature,
    ) -> Result<Binarion, Error> {
        quad.validate()?;
        let (nodes, weights) = gauss_legendre(quad.order);
        let mut total = Binarion::zero(sig);
        for seg in &self.segments {
            total = total + self.integrate_segment(seg, sig, &f, quad, &nodes, &weights)?;
        }
        Ok(total)
    }

    fn integrate_segment(
        &self,
        seg: &Segment,
        sig: Signature,
        f: &impl Fn(Binarion) -> Result<Binarion, Error>,
        quad: Quadrature,
        nodes: &[f64],
        weights: &[f64],
    ) -> Result<Binarion, Error> {
        // Panels: uniform subdivisions for analytic segments, the sample
        // intervals themselves for paths.
        let panels: Vec<(f64, f64)> = match seg {
            Segment::Path { points } => points.windows(2).map(|w| (w[0][0], w[1][0])).collect(),
            _ => {
                let (a, b) = seg.param_range();
                let h = (b - a) / quad.subdivisions as f64;
                (0..quad.subdivisions)
                    .map(|k| (a + k as f64 * h, a + (k + 1) as f64 * h))
                    .collect()
            }
        };
        let derivs = match seg {
            Segment::Path { points } => Some((points, path_derivatives(points))),
            _ => None,
        };
        let velocity = |t: f64| -> [f64; 2] {
            match seg {
                Segment::Circle { r, .. } => [-r * t.sin(), r * t.cos()],
                Segment::Line { from, to } => [to[0] - from[0], to[1] - from[1]],
                Segment::Path { .. } => {
                    let (points, d) = derivs.as_ref().expect("path derivatives prepared");
                    let (i, s) = seg.locate(t);
                    let _ = points;
                    [
                        d[i][0] + s * (d[i + 1][0] - d[i][0]),
                        d[i][1] + s * (d[i + 1][1] - d[i][1]),
                    ]
                }
            }
        };

        let mut acc = Binarion::zero(sig);
        for (p, q) in panels {
            let mid = 0.5 * (p + q);
            let half = 0.5 * (q - p);
            for (xi, w) in nodes.iter().zip(weights) {
                let t = mid + half * xi;
                let [x, y] = seg.point(t);
                let value = f(Binarion::new(x, y, sig)).map_err(|e| Error::Evaluation {
                    t,
                    message: e.to_string(),
                })?;
                let [dx, dy] = velocity(t);
                acc = acc + (value * Binarion::new(dx, dy, sig)).scale(w * half);
            }
        }
        Ok(acc)
    }

    /// 2-norm of the closed-contour integral; near zero exactly when f
    /// is analytic on and inside the contour.
    pub fn closed_holomorphic_check(
        &self,
        sig: Signature,
        f: impl Fn(Binarion) -> Result<Binarion, Error>,
        quad: Quadrature,
    ) -> Result<f64, Error> {
        if !self.closed {
            return Err(Error::NotClosed);
        }
        Ok(self.integrate(sig, f, quad)?.norm2())
    }

    /// Minimum of |det(L(t) - l0)| over a dense parameter scan, with a
    /// sign change between neighboring samples collapsing the result to
    /// zero. In the split signature this measures how far the contour
    /// stays from the pair of null lines through l0.
    pub fn singular_clearance(&self, l0: Binarion) -> f64 {
        let mut min = f64::INFINITY;
        let mut prev_sign = 0i8;
        for seg in &self.segments {
            let (a, b) = seg.param_range();
            for k in 0..=SCAN_SAMPLES {
                let t = a + (b - a) * k as f64 / SCAN_SAMPLES as f64;
                let [x, y] = seg.point(t);
                let d = (Binarion::new(x, y, l0.sig()) - l0).det();
                let sign = if d > 0.0 {
                    1
                } else if d < 0.0 {
                    -1
                } else {
                    0
                };
                if d == 0.0 || (prev_sign != 0 && sign != 0 && sign != prev_sign) {
                    return 0.0;
                }
                prev_sign = sign;
                min = min.min(d.abs());
            }
        }
        min
    }

    /// Diagonal of the bounding box of the sampled contour.
    fn diameter(&self) -> f64 {
        let (mut xmin, mut xmax) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY);
        for seg in &self.segments {
            let (a, b) = seg.param_range();
            for k in 0..=SCAN_SAMPLES {
                let t = a + (b - a) * k as f64 / SCAN_SAMPLES as f64;
                let [x, y] = seg.point(t);
                xmin = xmin.min(x);
                xmax = xmax.max(x);
                ymin = ymin.min(y);
                ymax = ymax.max(y);
            }
        }
        (xmax - xmin).hypot(ymax - ymin)
    }

    /// Integrates f(L) / (L - l0) if the contour clears the singular set
    /// of the denominator, and reports Divergent otherwise. For analytic
    /// f and positive clearance the value comes out near zero: the
    /// integral does not recover f(l0), in sharp contrast to the complex
    /// Cauchy formula.
    pub fn cauchy_probe(
        &self,
        f: impl Fn(Binarion) -> Result<Binarion, Error>,
        l0: Binarion,
        quad: Quadrature,
    ) -> Result<CauchyOutcome, Error> {
        if !self.closed {
            return Err(Error::NotClosed);
        }
        let clearance = self.singular_clearance(l0);
        let d = self.diameter();
        let threshold = 1e-6 * d * d;
        if clearance <= threshold {
            return Ok(CauchyOutcome::Divergent {
                clearance,
                threshold,
            });
        }
        let value = self.integrate(l0.sig(), |l| Ok(f(l)? * (l - l0).inv()?), quad)?;
        Ok(CauchyOutcome::Value(value))
    }
}

impl<'de> Deserialize<'de> for Contour {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            closed: bool,
            segments: Vec<Segment>,
        }
        let raw = Raw::deserialize(deserializer)?;
        Contour::new(raw.segments, raw.closed).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions;
    use std::f64::consts::TAU;

    fn split(x: f64, y: f64) -> Binarion {
        Binarion::new(x, y, Signature::Split)
    }

    fn unit_triangle() -> Contour {
        Contour::polygon(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap()
    }

    #[test]
    fn construction_validates_continuity() {
        assert!(Contour::new(vec![], true).is_err());
        assert!(Contour::new(
            vec![
                Segment::Line {
                    from: [0.0, 0.0],
                    to: [1.0, 0.0]
                },
                Segment::Line {
                    from: [1.0, 0.1],
                    to: [2.0, 0.0]
                },
            ],
            false,
        )
        .is_err());
        // open chain with a closing flag but a gap
        assert!(Contour::new(
            vec![Segment::Line {
                from: [0.0, 0.0],
                to: [1.0, 0.0]
            }],
            true,
        )
        .is_err());
        assert!(Contour::circle(0.0, 0.0, -1.0).is_err());
        assert!(Contour::new(
            vec![Segment::Path {
                points: vec![[0.0, 0.0, 0.0], [0.0, 1.0, 1.0]]
            }],
            false,
        )
        .is_err());
    }

    #[test]
    fn constant_integrates_to_endpoint_difference() {
        let c = Contour::new(
            vec![Segment::Line {
                from: [0.0, 0.0],
                to: [1.0, 1.0],
            }],
            false,
        )
        .unwrap();
        let one = Binarion::one(Signature::Split);
        let v = c
            .integrate(Signature::Split, |_| Ok(one), Quadrature::default())
            .unwrap();
        assert!((v - split(1.0, 1.0)).norm2() < 1e-12);
    }

    #[test]
    fn closed_integral_of_l_vanishes_over_the_triangle() {
        let v = unit_triangle()
            .integrate(Signature::Split, Ok, Quadrature::default())
            .unwrap();
        assert!(v.norm2() < 1e-12, "{v}");
    }

    #[test]
    fn conjugate_over_a_circle_measures_the_area() {
        for r in [1.0, 2.5] {
            let c = Contour::circle(0.0, 0.0, r).unwrap();
            let v = c
                .integrate(Signature::Split, |l| Ok(l.conj()), Quadrature::default())
                .unwrap();
            assert!(v.x().abs() < 1e-10, "{v}");
            assert!((v.y() - TAU * r * r).abs() < 1e-9, "{v}");
        }
    }

    #[test]
    fn green_identity_on_polygons() {
        // E-component of the conjugate integral = 2 * signed area.
        let square = Contour::polygon(&[[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [0.0, 1.0]]).unwrap();
        let v = square
            .integrate(Signature::Split, |l| Ok(l.conj()), Quadrature::default())
            .unwrap();
        assert!((v.y() - 4.0).abs() < 1e-10);

        let v = unit_triangle()
            .integrate(Signature::Split, |l| Ok(l.conj()), Quadrature::default())
            .unwrap();
        assert!((v.y() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn holomorphic_kernels_close_to_zero() {
        let circle = Contour::circle(0.0, 0.0, 1.0).unwrap();
        let quad = Quadrature::default();
        type K = fn(Binarion) -> Result<Binarion, Error>;
        let checks: [(&str, K); 4] = [
            ("identity", |l| Ok(l)),
            ("square", |l| Ok(l * l)),
            ("exp", |l| Ok(functions::exp(l))),
            ("sin", functions::sin),
        ];
        for (name, f) in checks {
            let r = circle
                .closed_holomorphic_check(Signature::Split, f, quad)
                .unwrap();
            assert!(r <= 1e-8, "{name} over circle: {r:e}");
            let r = unit_triangle()
                .closed_holomorphic_check(Signature::Split, f, quad)
                .unwrap();
            assert!(r <= 1e-8, "{name} over triangle: {r:e}");
        }

        let conj_residual = circle
            .closed_holomorphic_check(Signature::Split, |l| Ok(l.conj()), quad)
            .unwrap();
        assert!((conj_residual - TAU).abs() < 1e-9);

        let open = Contour::new(
            vec![Segment::Line {
                from: [0.0, 0.0],
                to: [1.0, 0.0],
            }],
            false,
        )
        .unwrap();
        assert!(matches!(
            open.closed_holomorphic_check(Signature::Split, Ok, quad),
            Err(Error::NotClosed)
        ));
    }

    #[test]
    fn integral_is_additive_over_concatenation() {
        let a = Segment::Line {
            from: [0.0, 0.0],
            to: [1.0, 0.5],
        };
        let b = Segment::Line {
            from: [1.0, 0.5],
            to: [0.5, 2.0],
        };
        let quad = Quadrature::default();
        let f = |l: Binarion| Ok(functions::exp(l) * l);
        let whole = Contour::new(vec![a.clone(), b.clone()], false)
            .unwrap()
            .integrate(Signature::Split, f, quad)
            .unwrap();
        let first = Contour::new(vec![a], false)
            .unwrap()
            .integrate(Signature::Split, f, quad)
            .unwrap();
        let second = Contour::new(vec![b], false)
            .unwrap()
            .integrate(Signature::Split, f, quad)
            .unwrap();
        assert!((whole - (first + second)).norm2() < 1e-12);
    }

    #[test]
    fn reversing_a_polygon_negates_the_integral() {
        let forward = Contour::polygon(&[[0.0, 0.0], [2.0, 0.0], [1.0, 1.5]]).unwrap();
        let backward = Contour::polygon(&[[1.0, 1.5], [2.0, 0.0], [0.0, 0.0]]).unwrap();
        let f = |l: Binarion| Ok(l.conj() * l);
        let quad = Quadrature::default();
        let v = forward.integrate(Signature::Split, f, quad).unwrap();
        let w = backward.integrate(Signature::Split, f, quad).unwrap();
        assert!((v + w).norm2() < 1e-12);
    }

    #[test]
    fn reversing_a_path_negates_the_integral() {
        let n = 400;
        let circle_pts: Vec<[f64; 3]> = (0..=n)
            .map(|k| {
                let t = TAU * k as f64 / n as f64;
                [t, t.cos(), t.sin()]
            })
            .collect();
        let reversed: Vec<[f64; 3]> = (0..=n)
            .map(|k| {
                let t = TAU * k as f64 / n as f64;
                [t, (TAU - t).cos(), (TAU - t).sin()]
            })
            .collect();
        let quad = Quadrature::default();
        let f = |l: Binarion| Ok(l.conj());
        let v = Contour::new(vec![Segment::Path { points: circle_pts }], true)
            .unwrap()
            .integrate(Signature::Split, f, quad)
            .unwrap();
        let w = Contour::new(vec![Segment::Path { points: reversed }], true)
            .unwrap()
            .integrate(Signature::Split, f, quad)
            .unwrap();
        assert!((v + w).norm2() < 1e-8, "{v} vs {w}");
        // and the forward path approximates the analytic circle value
        assert!((v.y() - TAU).abs() < 5e-3, "{v}");
    }

    #[test]
    fn quadrature_convergence_on_low_order_panels() {
        let circle = Contour::circle(0.0, 0.0, 1.0).unwrap();
        let f = |l: Binarion| Ok(functions::exp(l) * l.conj());
        let reference = circle
            .integrate(Signature::Split, f, Quadrature::default())
            .unwrap();
        let err = |subdivisions: usize| {
            let q = Quadrature {
                order: 2,
                subdivisions,
            };
            (circle.integrate(Signature::Split, f, q).unwrap() - reference).norm2()
        };
        let (e4, e8, e16) = (err(4), err(8), err(16));
        assert!(e8 < e4 / 4.0, "{e4} -> {e8}");
        assert!(e16 < e8 / 4.0 || e16 < 1e-12, "{e8} -> {e16}");
    }

    #[test]
    fn quadrature_settings_are_validated() {
        let c = Contour::circle(0.0, 0.0, 1.0).unwrap();
        for quad in [
            Quadrature {
                order: 0,
                subdivisions: 4,
            },
            Quadrature {
                order: 200,
                subdivisions: 4,
            },
            Quadrature {
                order: 8,
                subdivisions: 0,
            },
        ] {
            assert!(matches!(
                c.integrate(Signature::Split, Ok, quad),
                Err(Error::InvalidQuadrature(_))
            ));
        }
    }

    #[test]
    fn gauss_nodes_integrate_polynomials_exactly() {
        // order-n Gauss-Legendre is exact through degree 2n-1
        let (nodes, weights) = gauss_legendre(5);
        let moment = |p: u32| -> f64 {
            nodes
                .iter()
                .zip(&weights)
                .map(|(x, w)| w * x.powi(p as i32))
                .sum()
        };
        for p in 0..10u32 {
            let exact = if p % 2 == 0 {
                2.0 / (p as f64 + 1.0)
            } else {
                0.0
            };
            assert!((moment(p) - exact).abs() < 1e-14, "degree {p}");
        }
    }

    #[test]
    fn clearance_of_the_offset_circle_is_four() {
        // min over the circle (3 + cos t, sin t) of |x^2 - y^2| is
        // attained at t = pi: |(3 - 1)^2 - 0| = 4.
        let c = Contour::circle(3.0, 0.0, 1.0).unwrap();
        let clearance = c.singular_clearance(Binarion::zero(Signature::Split));
        assert!((clearance - 4.0).abs() < 1e-4, "{clearance}");

        // the null lines cross the unit disk: sign change detected
        let unit = Contour::circle(0.0, 0.0, 1.0).unwrap();
        assert_eq!(unit.singular_clearance(Binarion::zero(Signature::Split)), 0.0);

        // far away from both null lines through l0
        let far = unit.singular_clearance(split(10.0, 0.0));
        assert!(far > 0.0);
    }

    #[test]
    fn cauchy_probe_vanishes_or_diverges() {
        let quad = Quadrature::default();
        let offset = Contour::circle(3.0, 0.0, 1.0).unwrap();
        let l0 = Binarion::zero(Signature::Split);

        let one = Binarion::one(Signature::Split);
        match offset.cauchy_probe(|_| Ok(one), l0, quad).unwrap() {
            CauchyOutcome::Value(v) => assert!(v.norm2() < 1e-6, "{v}"),
            other => panic!("expected a value, got {other:?}"),
        }
        // f = L: still zero; nothing like 2*pi*i*f(l0) appears
        match offset.cauchy_probe(Ok, l0, quad).unwrap() {
            CauchyOutcome::Value(v) => assert!(v.norm2() < 1e-6, "{v}"),
            other => panic!("expected a value, got {other:?}"),
        }

        let unit = Contour::circle(0.0, 0.0, 1.0).unwrap();
        match unit.cauchy_probe(|_| Ok(one), l0, quad).unwrap() {
            CauchyOutcome::Divergent { clearance, .. } => assert_eq!(clearance, 0.0),
            other => panic!("expected divergence, got {other:?}"),
        }

        let open = Contour::new(
            vec![Segment::Line {
                from: [0.0, 0.0],
                to: [1.0, 0.0],
            }],
            false,
        )
        .unwrap();
        assert!(matches!(
            open.cauchy_probe(|_| Ok(one), l0, quad),
            Err(Error::NotClosed)
        ));
    }

    #[test]
    fn evaluation_failures_carry_the_parameter() {
        let c = Contour::circle(0.0, 0.0, 1.0).unwrap();
        // ln fails off the cone x > |y|, which the unit circle leaves
        let err = c
            .integrate(Signature::Split, functions::ln, Quadrature::default())
            .unwrap_err();
        assert!(matches!(err, Error::Evaluation { .. }));
    }

    #[test]
    fn contour_json_round_trip() {
        let c = Contour::new(
            vec![
                Segment::Line {
                    from: [1.0, 0.0],
                    to: [2.0, 0.0],
                },
                Segment::Path {
                    points: vec![[0.0, 2.0, 0.0], [0.5, 2.5, 0.5], [1.0, 1.0, 0.0]],
                },
            ],
            false,
        )
        .unwrap();
        let text = serde_json::to_string(&c).unwrap();
        let back: Contour = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);

        let circle = Contour::circle(3.0, 0.0, 1.0).unwrap();
        let text = serde_json::to_string(&circle).unwrap();
        assert_eq!(
            text,
            r#"{"closed":true,"segments":[{"type":"circle","cx":3.0,"cy":0.0,"r":1.0}]}"#
        );

        // mismatched endpoints must fail at parse time
        let bad = r#"{"closed":false,"segments":[
            {"type":"line","from":[0,0],"to":[1,0]},
            {"type":"line","from":[5,5],"to":[6,5]}]}"#;
        assert!(serde_json::from_str::<Contour>(bad).is_err());
    }
}
