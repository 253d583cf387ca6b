//! Determinant regions, zero divisors, fixed lines, and geometric series.
//!
//! The split plane decomposes by the sign of det = x^2 - y^2: a positive
//! double cone around the x-axis, a negative one around the y-axis, and the
//! null cone y = +-x of zero divisors between them. Region membership, the
//! zero-divisor pairing, and the fixed-line analysis are split-signature
//! notions; the geometric series helpers work in every signature.

use serde::Serialize;

use crate::algebra::{Binarion, Signature};
use crate::error::Error;

/// Default absolute tolerance for set membership tests.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Primary label for one element; the flags in [`Region`] are not exclusive,
/// the tag picks the most specific one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionTag {
    /// The zero element.
    Zero,
    /// Nonzero with det = 0: a zero divisor on y = +-x.
    NullCone,
    /// det = 1, the unit-determinant subgroup.
    UnitDet,
    /// det > 0 and x > 0, the image of exp and domain of ln.
    ExpCone,
    /// det > 0, the invertible double cone around the x-axis.
    PosDet,
    /// det < 0, the invertible double cone around the y-axis.
    NegDet,
    /// Invertible fallback; unreachable under the current tolerance rules,
    /// kept so the tag set covers every invertible element by construction.
    Invertible,
}

impl RegionTag {
    pub const fn label(self) -> &'static str {
        match self {
            RegionTag::Zero => "zero",
            RegionTag::NullCone => "null_cone",
            RegionTag::UnitDet => "unit_det",
            RegionTag::ExpCone => "exp_cone",
            RegionTag::PosDet => "pos_det",
            RegionTag::NegDet => "neg_det",
            RegionTag::Invertible => "invertible",
        }
    }
}

/// Membership report for one element at a fixed tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Region {
    pub det: f64,
    /// |det| > tol; exactly one of `invertible` and `null` holds.
    pub invertible: bool,
    /// det > tol.
    pub pos_det: bool,
    /// det < -tol.
    pub neg_det: bool,
    /// |det - 1| <= tol.
    pub unit_det: bool,
    /// |det| <= tol.
    pub null: bool,
    /// det > tol and x > 0.
    pub exp_cone: bool,
    pub tag: RegionTag,
}

/// Classify a split element by its determinant at absolute tolerance `tol`.
pub fn classify(a: Binarion, tol: f64) -> Region {
    let det = a.det();
    let null = det.abs() <= tol;
    let pos_det = det > tol;
    let region = Region {
        det,
        invertible: !null,
        pos_det,
        neg_det: det < -tol,
        unit_det: (det - 1.0).abs() <= tol,
        null,
        exp_cone: pos_det && a.x() > 0.0,
        tag: RegionTag::Invertible,
    };
    let tag = if a.x() == 0.0 && a.y() == 0.0 {
        RegionTag::Zero
    } else if region.null {
        RegionTag::NullCone
    } else if region.unit_det {
        RegionTag::UnitDet
    } else if region.exp_cone {
        RegionTag::ExpCone
    } else if region.pos_det {
        RegionTag::PosDet
    } else if region.neg_det {
        RegionTag::NegDet
    } else {
        RegionTag::Invertible
    };
    Region { tag, ..region }
}

/// For a nonzero null-cone element, the canonical partner that multiplies
/// it to zero: t(I + E) pairs with I - E and t(I - E) with I + E.
///
/// The product cancels termwise (x * 1 + y * (-1) and x * (-1) + 1 * y for
/// the partner I - E), so it is exactly zero for exact line members, not
/// merely small. Membership uses [`DEFAULT_TOL`].
pub fn zero_divisor_partner(a: Binarion) -> Result<Binarion, Error> {
    require_split("zero_divisor_partner", a)?;
    let det = a.det();
    let zero = a.x() == 0.0 && a.y() == 0.0;
    if zero || det.abs() > DEFAULT_TOL {
        return Err(Error::NotNull { det });
    }
    let (x, y) = a.parts();
    if (x - y).abs() <= (x + y).abs() {
        // On y = x, annihilated by I - E.
        Ok(Binarion::new(1.0, -1.0, Signature::Split))
    } else {
        Ok(Binarion::new(1.0, 1.0, Signature::Split))
    }
}

/// Membership in the two multiplicative fixed lines and the two null
/// diagonals they act on.
///
/// Elements with x - y = 1 fix every point of the antidiagonal y = -x under
/// multiplication; elements with x + y = 1 fix the diagonal y = x. An
/// element sits on a fixed line exactly when subtracting I lands it on the
/// opposite diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FixedLines {
    /// x - y = 1; multiplication fixes the antidiagonal pointwise.
    pub fixes_antidiagonal: bool,
    /// x + y = 1; multiplication fixes the diagonal pointwise.
    pub fixes_diagonal: bool,
    /// y = -x.
    pub on_antidiagonal: bool,
    /// y = x.
    pub on_diagonal: bool,
}

pub fn fixed_analysis(a: Binarion, tol: f64) -> Result<FixedLines, Error> {
    require_split("fixed_analysis", a)?;
    let (x, y) = a.parts();
    Ok(FixedLines {
        fixes_antidiagonal: (x - y - 1.0).abs() <= tol,
        fixes_diagonal: (x + y - 1.0).abs() <= tol,
        on_antidiagonal: (x + y).abs() <= tol,
        on_diagonal: (x - y).abs() <= tol,
    })
}

/// `n`-th power of an element on the diagonals via the closed form
/// `(2x)^(n-1) a`, valid because a^2 = (2x) a there. Requires n >= 1 and
/// |x| = |y| within [`DEFAULT_TOL`].
pub fn ideal_power(a: Binarion, n: u32) -> Result<Binarion, Error> {
    require_split("ideal_power", a)?;
    let (x, y) = a.parts();
    if (x.abs() - y.abs()).abs() > DEFAULT_TOL {
        return Err(Error::NotOnDiagonal { x, y });
    }
    if n == 0 {
        return Err(Error::Domain {
            op: "ideal_power",
            message: "exponent must be a positive integer".to_string(),
        });
    }
    let factor = (2.0 * x).powi(n as i32 - 1);
    Ok(a.scale(factor))
}

/// Partial sum `I + a + ... + a^n` by literal repeated multiplication.
pub fn geometric_sum(a: Binarion, n: u32) -> Binarion {
    let mut term = Binarion::one(a.sig());
    let mut acc = term;
    for _ in 1..=n {
        term = term * a;
        acc = acc + term;
    }
    acc
}

/// Limit of the geometric series, `inv(I - a)`.
///
/// Requires the 1-norm to be strictly below one; that norm is
/// submultiplicative, so it certifies convergence. The Euclidean and max
/// norms do not certify anything here: 0.9I + 0.3E has Euclidean norm
/// below one yet spectral radius 1.2 and a divergent series.
pub fn geometric_limit(a: Binarion) -> Result<Binarion, Error> {
    let norm = a.norm1();
    if norm >= 1.0 {
        return Err(Error::NormTooLarge { norm });
    }
    (Binarion::one(a.sig()) - a).inv()
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

    fn s(x: f64, y: f64) -> Binarion {
        Binarion::new(x, y, Signature::Split)
    }

    #[test]
    fn classify_examples() {
        let r = classify(s(3.0, 5.0), DEFAULT_TOL);
        assert_eq!(r.det, -16.0);
        assert!(r.neg_det && r.invertible && !r.pos_det && !r.null);
        assert_eq!(r.tag, RegionTag::NegDet);

        let r = classify(s(1.25, 0.75), DEFAULT_TOL);
        assert!(r.unit_det && r.exp_cone && r.pos_det);
        assert_eq!(r.tag, RegionTag::UnitDet);

        let r = classify(s(2.0, 2.0), DEFAULT_TOL);
        assert!(r.null && !r.invertible);
        assert_eq!(r.tag, RegionTag::NullCone);

        let r = classify(s(0.0, 0.0), DEFAULT_TOL);
        assert!(r.null);
        assert_eq!(r.tag, RegionTag::Zero);

        let r = classify(s(-2.0, 0.5), DEFAULT_TOL);
        assert!(r.pos_det && !r.exp_cone, "x < 0 stays out of the exp cone");
        assert_eq!(r.tag, RegionTag::PosDet);
    }

    #[test]
    fn exactly_one_of_invertible_and_null() {
        for (x, y) in [(2.0, 2.0), (3.0, 5.0), (1.0, 0.0), (0.0, 0.0), (1.0 + 1e-12, 1.0)] {
            let r = classify(s(x, y), DEFAULT_TOL);
            assert!(r.invertible != r.null, "({x}, {y})");
        }
    }

    #[test]
    fn zero_divisor_partners_annihilate_exactly() {
        let p = zero_divisor_partner(s(2.0, 2.0)).unwrap();
        assert_eq!(p.parts(), (1.0, -1.0));
        assert_eq!((s(2.0, 2.0) * p).parts(), (0.0, 0.0));

        let p = zero_divisor_partner(s(3.0, -3.0)).unwrap();
        assert_eq!(p.parts(), (1.0, 1.0));
        assert_eq!((s(3.0, -3.0) * p).parts(), (0.0, 0.0));
    }

    #[test]
    fn zero_divisor_partner_rejects_off_cone_and_zero() {
        assert!(matches!(
            zero_divisor_partner(s(2.0, 1.0)),
            Err(Error::NotNull { .. })
        ));
        assert!(matches!(
            zero_divisor_partner(s(0.0, 0.0)),
            Err(Error::NotNull { .. })
        ));
        assert!(matches!(
            zero_divisor_partner(Binarion::new(2.0, 2.0, Signature::Complex)),
            Err(Error::UnsupportedSignature { .. })
        ));
    }

    #[test]
    fn fixed_lines_fix_their_diagonals_pointwise() {
        let a = s(3.0, 2.0);
        let f = fixed_analysis(a, DEFAULT_TOL).unwrap();
        assert!(f.fixes_antidiagonal && !f.fixes_diagonal);
        let m = s(1.0, -1.0);
        let moved = a * m;
        assert!((moved - m).norm_inf() <= 1e-12);

        let a = s(0.5, 0.5);
        let f = fixed_analysis(a, DEFAULT_TOL).unwrap();
        assert!(f.fixes_diagonal && !f.fixes_antidiagonal);
        let m = s(1.0, 1.0);
        assert!((a * m - m).norm_inf() <= 1e-12);

        let f = fixed_analysis(Binarion::one(Signature::Split), DEFAULT_TOL).unwrap();
        assert!(f.fixes_diagonal && f.fixes_antidiagonal);
    }

    #[test]
    fn fixed_line_membership_is_shift_dual_to_the_diagonals() {
        for (x, y) in [(3.0, 2.0), (0.5, 0.5), (1.0, 0.0), (-0.25, -1.25)] {
            let a = s(x, y);
            let f = fixed_analysis(a, DEFAULT_TOL).unwrap();
            let shifted = fixed_analysis(a - Binarion::one(Signature::Split), DEFAULT_TOL).unwrap();
            assert_eq!(f.fixes_antidiagonal, shifted.on_diagonal, "({x}, {y})");
            assert_eq!(f.fixes_diagonal, shifted.on_antidiagonal, "({x}, {y})");
        }
    }

    #[test]
    fn ideal_power_matches_repeated_multiplication() {
        let a = s(3.0, 3.0);
        assert_eq!(ideal_power(a, 2).unwrap().parts(), (18.0, 18.0));
        assert_eq!(ideal_power(a, 2).unwrap(), a * a);

        let b = s(1.0, -1.0);
        assert_eq!(ideal_power(b, 3).unwrap().parts(), (4.0, -4.0));
        assert_eq!(ideal_power(b, 3).unwrap(), b.powi(3));

        assert_eq!(ideal_power(a, 1).unwrap(), a);
    }

    #[test]
    fn ideal_power_rejects_off_diagonal_and_zero_exponent() {
        assert!(matches!(
            ideal_power(s(2.0, 1.0), 2),
            Err(Error::NotOnDiagonal { .. })
        ));
        assert!(matches!(
            ideal_power(s(1.0, 1.0), 0),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn geometric_sum_partial_sums() {
        let a = s(0.5, 0.0);
        assert_eq!(geometric_sum(a, 0), Binarion::one(Signature::Split));
        assert_eq!(geometric_sum(a, 3).parts(), (1.875, 0.0));
    }

    #[test]
    fn geometric_limit_is_the_inverse_of_one_minus_a() {
        let a = s(0.2, 0.3);
        let limit = geometric_limit(a).unwrap();
        let direct = (Binarion::one(Signature::Split) - a).inv().unwrap();
        assert_eq!(limit, direct);
        // The partial sums approach it.
        let s200 = geometric_sum(a, 200);
        assert!((s200 - limit).norm2() < 1e-12);
    }

    #[test]
    fn geometric_limit_requires_small_one_norm() {
        assert!(matches!(
            geometric_limit(s(0.9, 0.3)),
            Err(Error::NormTooLarge { .. })
        ));
        // Euclidean norm below one does not help: the series diverges.
        assert!(s(0.9, 0.3).norm2() < 1.0);
        assert!(geometric_sum(s(0.9, 0.3), 100).norm2() > 1e6);
    }

    #[test]
    fn geometric_limit_works_in_every_signature() {
        for sig in Signature::ALL {
            let a = Binarion::new(0.2, -0.3, sig);
            let limit = geometric_limit(a).unwrap();
            let s200 = geometric_sum(a, 200);
            assert!((s200 - limit).norm2() < 1e-12, "{sig:?}");
        }
    }
}
