//! Elementary transcendental functions and the hyperbolic polar form.
//!
//! Closed forms throughout: exp splits over signatures as
//! `e^x (cosh y I + sinh y E)` for split, `e^x (cos y I + sin y E)` for
//! complex, and `e^x (I + yE)` for parabolic. The logarithm, circular
//! functions, square root, and polar form are split-signature kernels;
//! the principal argument belongs to the complex signature.
//!
//! [`taylor_oracle`] evaluates the defining power series with nothing but
//! repeated multiplication. It exists as an independent reference route
//! for the closed forms; keep it free of any of the formulas above.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::algebra::{Binarion, Signature};
use crate::error::Error;

/// Closed-form exponential; total in every signature.
///
/// For the split signature the image is exactly the exponential cone
/// det > 0, x > 0, where [`ln`] inverts it.
pub fn exp(a: Binarion) -> Binarion {
    let (x, y) = a.parts();
    let ex = x.exp();
    match a.sig() {
        Signature::Split => Binarion::new(ex * y.cosh(), ex * y.sinh(), a.sig()),
        Signature::Complex => Binarion::new(ex * y.cos(), ex * y.sin(), a.sig()),
        Signature::Parabolic => Binarion::new(ex, ex * y, a.sig()),
    }
}

/// Principal logarithm on the split exponential cone x > |y|:
/// `0.5 ln(det) I + atanh(y/x) E`.
pub fn ln(a: Binarion) -> Result<Binarion, Error> {
    require_split("ln", a)?;
    let (x, y) = a.parts();
    if x <= y.abs() {
        return Err(Error::Domain {
            op: "ln",
            message: format!("({x}, {y}) is outside the principal domain {{ xI + yE : x > |y| }}"),
        });
    }
    Ok(Binarion::new(
        0.5 * a.det().ln(),
        (y / x).atanh(),
        a.sig(),
    ))
}

/// Split sine `sin x cos y I + cos x sin y E`.
///
/// On the shift axis this reduces to sin(yE) = sin(y) E, consistent with
/// the series: even powers of E are scalar, so only the E-part survives
/// with ordinary sine coefficients.
pub fn sin(a: Binarion) -> Result<Binarion, Error> {
    require_split("sin", a)?;
    let (x, y) = a.parts();
    Ok(Binarion::new(
        x.sin() * y.cos(),
        x.cos() * y.sin(),
        a.sig(),
    ))
}

/// Split cosine `cos x cos y I - sin x sin y E`.
pub fn cos(a: Binarion) -> Result<Binarion, Error> {
    require_split("cos", a)?;
    let (x, y) = a.parts();
    Ok(Binarion::new(
        x.cos() * y.cos(),
        -(x.sin() * y.sin()),
        a.sig(),
    ))
}

/// Split square root on the closed cone x + y >= 0, x - y >= 0:
/// components `(sqrt(x+y) +- sqrt(x-y)) / 2`. The result has x >= 0 and
/// squares back to the argument.
pub fn sqrt(a: Binarion) -> Result<Binarion, Error> {
    require_split("sqrt", a)?;
    let (x, y) = a.parts();
    if x + y < 0.0 || x - y < 0.0 {
        return Err(Error::Domain {
            op: "sqrt",
            message: format!("({x}, {y}) needs x + y >= 0 and x - y >= 0"),
        });
    }
    let p = (x + y).sqrt();
    let m = (x - y).sqrt();
    Ok(Binarion::new(0.5 * (p + m), 0.5 * (p - m), a.sig()))
}

/// Hyperbolic polar form `rho (cosh theta I + sinh theta E)` of an
/// exponential-cone element: rho = sqrt(det) > 0, theta = atanh(y/x).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HyperbolicForm {
    rho: f64,
    theta: f64,
}

impl HyperbolicForm {
    pub fn new(rho: f64, theta: f64) -> Result<Self, Error> {
        if !(rho.is_finite() && theta.is_finite()) {
            return Err(Error::NonFinite { x: rho, y: theta });
        }
        if rho <= 0.0 {
            return Err(Error::Domain {
                op: "HyperbolicForm",
                message: format!("rho must be positive, got {rho}"),
            });
        }
        Ok(Self { rho, theta })
    }

    pub const fn rho(self) -> f64 {
        self.rho
    }

    pub const fn theta(self) -> f64 {
        self.theta
    }
}

impl<'de> Deserialize<'de> for HyperbolicForm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            rho: f64,
            theta: f64,
        }
        let raw = Raw::deserialize(deserializer)?;
        HyperbolicForm::new(raw.rho, raw.theta).map_err(D::Error::custom)
    }
}

/// Polar decomposition of a split element of the exponential cone x > |y|.
pub fn to_hyperbolic(a: Binarion) -> Result<HyperbolicForm, Error> {
    require_split("to_hyperbolic", a)?;
    let (x, y) = a.parts();
    if x <= y.abs() {
        return Err(Error::Domain {
            op: "to_hyperbolic",
            message: format!(
                "({x}, {y}) has no real polar angle; the form needs x > |y|"
            ),
        });
    }
    HyperbolicForm::new(a.det().sqrt(), (y / x).atanh())
}

/// Rebuild the split element `rho cosh theta I + rho sinh theta E`.
pub fn from_hyperbolic(h: HyperbolicForm) -> Binarion {
    Binarion::new(
        h.rho * h.theta.cosh(),
        h.rho * h.theta.sinh(),
        Signature::Split,
    )
}

/// Integer power through the polar form: `rho^n (cosh(n theta) I +
/// sinh(n theta) E)`. Requires n >= 1 and an exponential-cone argument;
/// agrees with repeated multiplication there.
pub fn pow_de_moivre(a: Binarion, n: u32) -> Result<Binarion, Error> {
    if n == 0 {
        return Err(Error::Domain {
            op: "pow_de_moivre",
            message: "exponent must be a positive integer".to_string(),
        });
    }
    let h = to_hyperbolic(a)?;
    let nt = n as f64 * h.theta();
    Ok(Binarion::new(
        h.rho().powi(n as i32) * nt.cosh(),
        h.rho().powi(n as i32) * nt.sinh(),
        Signature::Split,
    ))
}

/// Principal argument of a complex-signature element, in [-pi, pi).
///
/// Case split rather than atan2 so that the negative real axis maps to
/// -pi, keeping the half-open range.
pub fn arg_principal(a: Binarion) -> Result<f64, Error> {
    if a.sig() != Signature::Complex {
        return Err(Error::UnsupportedSignature {
            op: "arg_principal",
            required: Signature::Complex,
            got: a.sig(),
        });
    }
    let (x, y) = a.parts();
    if x == 0.0 && y == 0.0 {
        return Err(Error::UndefinedArg);
    }
    let arg = if x > 0.0 {
        (y / x).atan()
    } else if x < 0.0 && y > 0.0 {
        (y / x).atan() + std::f64::consts::PI
    } else if x < 0.0 {
        (y / x).atan() - std::f64::consts::PI
    } else if y > 0.0 {
        std::f64::consts::FRAC_PI_2
    } else {
        -std::f64::consts::FRAC_PI_2
    };
    Ok(arg)
}

/// Which power series [`taylor_oracle`] sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Exp,
    Sin,
    Cos,
}

/// Partial sum of the defining power series, by repeated multiplication
/// only. `terms` counts summands: exp sums a^n/n! for n < terms, sine and
/// cosine sum their alternating odd and even terms respectively.
pub fn taylor_oracle(kind: SeriesKind, a: Binarion, terms: u32) -> Binarion {
    let one = Binarion::one(a.sig());
    match kind {
        SeriesKind::Exp => {
            let mut term = one;
            let mut acc = one;
            for n in 1..terms {
                term = (term * a).scale(1.0 / n as f64);
                acc = acc + term;
            }
            if terms == 0 {
                Binarion::zero(a.sig())
            } else {
                acc
            }
        }
        SeriesKind::Sin => {
            let a2 = a * a;
            let mut term = a;
            let mut acc = if terms == 0 { Binarion::zero(a.sig()) } else { a };
            for k in 1..terms {
                let d = (2 * k) as f64 * (2 * k + 1) as f64;
                term = (term * a2).scale(-1.0 / d);
                acc = acc + term;
            }
            acc
        }
        SeriesKind::Cos => {
            let a2 = a * a;
            let mut term = one;
            let mut acc = if terms == 0 { Binarion::zero(a.sig()) } else { one };
            for k in 1..terms {
                let d = (2 * k - 1) as f64 * (2 * k) as f64;
                term = (term * a2).scale(-1.0 / d);
                acc = acc + term;
            }
            acc
        }
    }
}

fn require_split(op: &'static str, a: Binarion) -> Result<(), Error> {
    if a.sig() == Signature::Split {
        Ok(())
    } else {
        Err(Error::UnsupportedSignature {
            op,
            required: Signature::Split,
            got: a.sig(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2, PI};

    fn s(x: f64, y: f64) -> Binarion {
        Binarion::new(x, y, Signature::Split)
    }

    #[test]
    fn exp_examples_per_signature() {
        let v = exp(s(0.0, LN_2));
        assert!((v.x() - 1.25).abs() < 1e-15 && (v.y() - 0.75).abs() < 1e-15);

        let v = exp(Binarion::new(0.0, FRAC_PI_2, Signature::Complex));
        assert!(v.x().abs() < 1e-15 && (v.y() - 1.0).abs() < 1e-15);

        let v = exp(Binarion::new(1.0, 1.0, Signature::Parabolic));
        let e = std::f64::consts::E;
        assert!((v.x() - e).abs() < 1e-14 && (v.y() - e).abs() < 1e-14);

        for sig in Signature::ALL {
            assert_eq!(exp(Binarion::zero(sig)), Binarion::one(sig));
        }
    }

    #[test]
    fn exp_lands_in_the_exponential_cone() {
        for (x, y) in [(0.0, 0.0), (2.0, -1.5), (-3.0, 2.9), (1.0, 4.0)] {
            let v = exp(s(x, y));
            assert!(v.x() > v.y().abs(), "exp({x}, {y}) = {v:?}");
        }
    }

    #[test]
    fn ln_inverts_exp_on_the_cone() {
        let v = ln(s(1.25, 0.75)).unwrap();
        assert!(v.x().abs() < 1e-15 && (v.y() - LN_2).abs() < 1e-15);

        for (x, y) in [(2.0, 1.0), (5.0, -3.0), (0.5, 0.25)] {
            let a = s(x, y);
            let round = exp(ln(a).unwrap());
            assert!((round - a).norm2() < 1e-12, "({x}, {y})");
            let back = ln(exp(s(y, x * 0.1))).unwrap();
            assert!((back - s(y, x * 0.1)).norm2() < 1e-12);
        }
    }

    #[test]
    fn ln_rejects_points_off_the_cone() {
        for (x, y) in [(1.0, 1.0), (1.0, 2.0), (-2.0, 1.0), (0.0, 0.0)] {
            assert!(matches!(ln(s(x, y)), Err(Error::Domain { .. })), "({x}, {y})");
        }
        assert!(matches!(
            ln(Binarion::new(2.0, 1.0, Signature::Complex)),
            Err(Error::UnsupportedSignature { .. })
        ));
    }

    #[test]
    fn sine_and_cosine_split_componentwise() {
        let v = sin(s(0.0, 2.0)).unwrap();
        assert!(v.x().abs() < 1e-15 && (v.y() - 2.0f64.sin()).abs() < 1e-15);

        let v = cos(s(0.0, 2.0)).unwrap();
        assert!((v.x() - 2.0f64.cos()).abs() < 1e-15 && v.y().abs() < 1e-15);

        let v = sin(s(FRAC_PI_2, 0.0)).unwrap();
        assert!((v.x() - 1.0).abs() < 1e-15 && v.y().abs() < 1e-15);

        assert!(matches!(
            sin(Binarion::new(1.0, 1.0, Signature::Complex)),
            Err(Error::UnsupportedSignature { .. })
        ));
        assert!(matches!(
            cos(Binarion::new(1.0, 1.0, Signature::Parabolic)),
            Err(Error::UnsupportedSignature { .. })
        ));
    }

    #[test]
    fn pythagorean_identity_holds() {
        for (x, y) in [(0.3, 0.2), (1.5, -2.0), (-0.7, 0.9)] {
            let a = s(x, y);
            let id = sin(a).unwrap().powi(2) + cos(a).unwrap().powi(2);
            assert!((id - Binarion::one(Signature::Split)).norm_inf() < 1e-14);
        }
    }

    #[test]
    fn sine_determinant_factors() {
        let a = s(1.2, 0.4);
        let d = sin(a).unwrap().det();
        let expected = (1.2f64 - 0.4).sin() * (1.2f64 + 0.4).sin();
        assert!((d - expected).abs() < 1e-14);
    }

    #[test]
    fn sqrt_examples_and_domain() {
        let v = sqrt(s(5.0, 4.0)).unwrap();
        assert_eq!(v.parts(), (2.0, 1.0));
        assert_eq!((v * v).parts(), (5.0, 4.0));

        let v = sqrt(s(1.0, 1.0)).unwrap();
        assert!((v * v - s(1.0, 1.0)).norm_inf() < 1e-15);
        assert!(v.x() >= 0.0);

        assert!(matches!(sqrt(s(1.0, 2.0)), Err(Error::Domain { .. })));
        assert!(matches!(sqrt(s(-1.0, 0.0)), Err(Error::Domain { .. })));
    }

    #[test]
    fn hyperbolic_form_of_5_3() {
        let h = to_hyperbolic(s(5.0, 3.0)).unwrap();
        assert!((h.rho() - 4.0).abs() < 1e-15);
        assert!((h.theta() - LN_2).abs() < 1e-15);
        let back = from_hyperbolic(h);
        assert!((back - s(5.0, 3.0)).norm2() < 1e-14);
    }

    #[test]
    fn hyperbolic_form_requires_the_cone() {
        for (x, y) in [(3.0, 5.0), (-5.0, 3.0), (1.0, 1.0)] {
            assert!(matches!(
                to_hyperbolic(s(x, y)),
                Err(Error::Domain { .. })
            ));
        }
        assert!(HyperbolicForm::new(0.0, 1.0).is_err());
        assert!(HyperbolicForm::new(-2.0, 1.0).is_err());
    }

    #[test]
    fn de_moivre_matches_repeated_multiplication() {
        let a = s(5.0, 3.0);
        let p2 = pow_de_moivre(a, 2).unwrap();
        assert!((p2 - s(34.0, 30.0)).norm2() < 1e-9 * 34.0);
        let p3 = pow_de_moivre(a, 3).unwrap();
        assert!((p3 - s(260.0, 252.0)).norm2() < 1e-9 * 260.0);

        for n in 1..=10u32 {
            let direct = a.powi(n);
            let polar = pow_de_moivre(a, n).unwrap();
            let rel = (polar - direct).norm2() / direct.norm2();
            assert!(rel < 1e-12, "n = {n}: rel = {rel:e}");
        }

        assert!(pow_de_moivre(a, 0).is_err());
        assert!(pow_de_moivre(s(1.0, 2.0), 2).is_err());
    }

    #[test]
    fn principal_argument_cases() {
        let c = |x, y| Binarion::new(x, y, Signature::Complex);
        assert!((arg_principal(c(1.0, 1.0)).unwrap() - FRAC_PI_4).abs() < 1e-15);
        assert_eq!(arg_principal(c(-1.0, 0.0)).unwrap(), -PI);
        assert_eq!(arg_principal(c(0.0, -2.0)).unwrap(), -FRAC_PI_2);
        assert_eq!(arg_principal(c(0.0, 3.0)).unwrap(), FRAC_PI_2);
        assert!((arg_principal(c(-1.0, 1.0)).unwrap() - 3.0 * FRAC_PI_4).abs() < 1e-15);
        assert!((arg_principal(c(-1.0, -1.0)).unwrap() + 3.0 * FRAC_PI_4).abs() < 1e-15);

        assert!(matches!(arg_principal(c(0.0, 0.0)), Err(Error::UndefinedArg)));
        assert!(matches!(
            arg_principal(s(1.0, 1.0)),
            Err(Error::UnsupportedSignature { .. })
        ));

        // Half-open range: every value sits in [-pi, pi).
        for (x, y) in [(1.0, 0.0), (-1.0, 0.0), (-1.0, -1e-12), (0.5, -0.5)] {
            let arg = arg_principal(c(x, y)).unwrap();
            assert!((-PI..PI).contains(&arg), "({x}, {y}) -> {arg}");
        }
    }

    #[test]
    fn taylor_oracle_tracks_the_closed_forms() {
        for sig in Signature::ALL {
            let a = Binarion::new(0.3, -1.2, sig);
            let series = taylor_oracle(SeriesKind::Exp, a, 60);
            assert!((series - exp(a)).norm2() < 1e-13, "{sig:?}");
        }
        let a = s(1.1, 0.7);
        assert!((taylor_oracle(SeriesKind::Sin, a, 40) - sin(a).unwrap()).norm2() < 1e-13);
        assert!((taylor_oracle(SeriesKind::Cos, a, 40) - cos(a).unwrap()).norm2() < 1e-13);
    }

    #[test]
    fn taylor_oracle_small_term_counts() {
        let a = s(0.5, 0.25);
        assert_eq!(taylor_oracle(SeriesKind::Exp, a, 1), Binarion::one(Signature::Split));
        assert_eq!(taylor_oracle(SeriesKind::Exp, a, 2), Binarion::one(Signature::Split) + a);
        assert_eq!(taylor_oracle(SeriesKind::Sin, a, 1), a);
    }
}
