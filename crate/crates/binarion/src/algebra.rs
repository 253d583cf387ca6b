//! The value type `L = xI + yE` and its ring operations.
//!
//! `I` is the identity and `E` is a formal generator with `E^2 = eps I`.
//! The three signatures share every formula below; `eps` enters only through
//! the product rule and the determinant.
//!
//! Binary operations require equal signatures. The checked methods return
//! [`Error::SignatureMismatch`]; the operator impls (`+`, `-`, `*`) panic on
//! mixed signatures and exist for internal same-signature arithmetic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::fmt::sig12;

/// Sign of `E^2 = eps I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Signature {
    /// `eps = +1`: hyperbolic variant with zero divisors on the lines y = +-x.
    Split,
    /// `eps = -1`: elliptic variant, isomorphic to the complex numbers.
    Complex,
    /// `eps = 0`: parabolic variant with nilpotent E.
    Parabolic,
}

impl Signature {
    pub const ALL: [Signature; 3] = [Signature::Split, Signature::Complex, Signature::Parabolic];

    /// `eps` as a float, usable directly in the product rule.
    pub const fn eps(self) -> f64 {
        match self {
            Signature::Split => 1.0,
            Signature::Complex => -1.0,
            Signature::Parabolic => 0.0,
        }
    }

    /// `eps` as the integer -1, 0, or +1.
    pub const fn eps_int(self) -> i8 {
        match self {
            Signature::Split => 1,
            Signature::Complex => -1,
            Signature::Parabolic => 0,
        }
    }

    pub fn from_eps(eps: i64) -> Result<Self, Error> {
        match eps {
            1 => Ok(Signature::Split),
            -1 => Ok(Signature::Complex),
            0 => Ok(Signature::Parabolic),
            _ => Err(Error::InvalidSignature { eps }),
        }
    }

    pub const fn label(self) -> &'static str {
        match self {
            Signature::Split => "split",
            Signature::Complex => "complex",
            Signature::Parabolic => "parabolic",
        }
    }
}

/// Element `xI + yE` of the algebra with signature `sig`.
///
/// Components are always finite; constructors reject NaN and infinities.
/// Arithmetic on values of extreme magnitude can still overflow per IEEE
/// semantics, but every value built from user input starts finite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Binarion {
    x: f64,
    y: f64,
    sig: Signature,
}

impl Binarion {
    /// Build a value, panicking on non-finite components.
    ///
    /// Use [`Binarion::try_new`] for untrusted input.
    pub fn new(x: f64, y: f64, sig: Signature) -> Self {
        assert!(
            x.is_finite() && y.is_finite(),
            "non-finite components ({x}, {y})"
        );
        Self { x, y, sig }
    }

    /// Fallible constructor for boundary input (files, FFI, CLI).
    pub fn try_new(x: f64, y: f64, sig: Signature) -> Result<Self, Error> {
        if x.is_finite() && y.is_finite() {
            Ok(Self { x, y, sig })
        } else {
            Err(Error::NonFinite { x, y })
        }
    }

    /// Internal unchecked constructor for results of arithmetic.
    pub(crate) const fn raw(x: f64, y: f64, sig: Signature) -> Self {
        Self { x, y, sig }
    }

    pub const fn zero(sig: Signature) -> Self {
        Self::raw(0.0, 0.0, sig)
    }

    /// The multiplicative identity `I`.
    pub const fn one(sig: Signature) -> Self {
        Self::raw(1.0, 0.0, sig)
    }

    /// The generator `E`.
    pub const fn unit_e(sig: Signature) -> Self {
        Self::raw(0.0, 1.0, sig)
    }

    pub const fn x(self) -> f64 {
        self.x
    }

    pub const fn y(self) -> f64 {
        self.y
    }

    pub const fn sig(self) -> Signature {
        self.sig
    }

    pub const fn parts(self) -> (f64, f64) {
        (self.x, self.y)
    }

    fn same_sig(self, rhs: Self) -> Result<(), Error> {
        if self.sig == rhs.sig {
            Ok(())
        } else {
            Err(Error::SignatureMismatch {
                lhs: self.sig,
                rhs: rhs.sig,
            })
        }
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self, Error> {
        self.same_sig(rhs)?;
        Ok(self + rhs)
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self, Error> {
        self.same_sig(rhs)?;
        Ok(self - rhs)
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self, Error> {
        self.same_sig(rhs)?;
        Ok(self * rhs)
    }

    /// Multiply both components by a real scalar.
    pub fn scale(self, c: f64) -> Self {
        Self::raw(c * self.x, c * self.y, self.sig)
    }

    /// Conjugate `xI - yE`. Multiplicative: conj(ab) = conj(a) conj(b).
    pub fn conj(self) -> Self {
        Self::raw(self.x, -self.y, self.sig)
    }

    /// Determinant `x^2 - eps y^2`; equals the product of the eigenvalues
    /// and satisfies det(ab) = det(a) det(b).
    pub fn det(self) -> f64 {
        self.x * self.x - self.sig.eps() * self.y * self.y
    }

    /// Trace `2x`, the sum of the eigenvalues.
    pub fn trace(self) -> f64 {
        2.0 * self.x
    }

    /// Eigenvalues of the element acting on its faithful 2x2 representation.
    pub fn spectrum(self) -> Spectrum {
        match self.sig {
            Signature::Split => Spectrum {
                lambda1: Eigenvalue::real(self.x + self.y),
                lambda2: Eigenvalue::real(self.x - self.y),
            },
            Signature::Complex => Spectrum {
                lambda1: Eigenvalue {
                    re: self.x,
                    im: self.y,
                },
                lambda2: Eigenvalue {
                    re: self.x,
                    im: -self.y,
                },
            },
            Signature::Parabolic => Spectrum {
                lambda1: Eigenvalue::real(self.x),
                lambda2: Eigenvalue::real(self.x),
            },
        }
    }

    /// Scale-aware cutoff below which the determinant counts as zero.
    pub fn singular_tolerance(self) -> f64 {
        1e-12 * f64::max(1.0, self.x * self.x + self.y * self.y)
    }

    /// Multiplicative inverse `conj(a) / det(a)`.
    pub fn inv(self) -> Result<Self, Error> {
        let det = self.det();
        if det.abs() <= self.singular_tolerance() {
            return Err(Error::Singular { det });
        }
        Ok(Self::raw(self.x / det, -self.y / det, self.sig))
    }

    /// Ring division `a * inv(b)`; satisfies div(a, b) * b = a.
    pub fn checked_div(self, rhs: Self) -> Result<Self, Error> {
        self.same_sig(rhs)?;
        Ok(self * rhs.inv()?)
    }

    pub fn norm(self, kind: NormKind) -> f64 {
        match kind {
            NormKind::One => self.norm1(),
            NormKind::Two => self.norm2(),
            NormKind::Inf => self.norm_inf(),
        }
    }

    /// `|x| + |y|`; submultiplicative in every signature.
    pub fn norm1(self) -> f64 {
        self.x.abs() + self.y.abs()
    }

    /// Euclidean `sqrt(x^2 + y^2)`.
    pub fn norm2(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// `max(|x|, |y|)`.
    pub fn norm_inf(self) -> f64 {
        self.x.abs().max(self.y.abs())
    }

    /// `n`-th power by literal repeated multiplication; `n = 0` gives `I`.
    ///
    /// Kept as a plain loop so it stays an independent reference route for
    /// the closed-form power kernels.
    pub fn powi(self, n: u32) -> Self {
        let mut acc = Self::one(self.sig);
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }
}

/// Which norm [`Binarion::norm`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormKind {
    One,
    Two,
    Inf,
}

/// One eigenvalue as a real pair (re, im).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Eigenvalue {
    pub re: f64,
    pub im: f64,
}

impl Eigenvalue {
    pub const fn real(re: f64) -> Self {
        Self { re, im: 0.0 }
    }

    pub fn dist(self, other: Self) -> f64 {
        (self.re - other.re).hypot(self.im - other.im)
    }
}

/// Eigenvalue pair; lambda1 + lambda2 = trace and lambda1 * lambda2 = det.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub lambda1: Eigenvalue,
    pub lambda2: Eigenvalue,
}

impl Spectrum {
    /// Eigenvalues sorted lexicographically by (re, im), for order-free
    /// comparison against another spectrum.
    pub fn sorted(self) -> [Eigenvalue; 2] {
        let a = self.lambda1;
        let b = self.lambda2;
        if (a.re, a.im) <= (b.re, b.im) {
            [a, b]
        } else {
            [b, a]
        }
    }

    /// Largest distance between matched sorted eigenvalues of two spectra.
    pub fn dist(self, other: Spectrum) -> f64 {
        let s = self.sorted();
        let o = other.sorted();
        s[0].dist(o[0]).max(s[1].dist(o[1]))
    }

    /// Spectral radius max(|lambda1|, |lambda2|).
    pub fn radius(self) -> f64 {
        let m1 = self.lambda1.re.hypot(self.lambda1.im);
        let m2 = self.lambda2.re.hypot(self.lambda2.im);
        m1.max(m2)
    }
}

impl Add for Binarion {
    type Output = Binarion;

    fn add(self, rhs: Binarion) -> Binarion {
        assert_eq!(self.sig, rhs.sig, "signature mismatch in +");
        Binarion::raw(self.x + rhs.x, self.y + rhs.y, self.sig)
    }
}

impl Sub for Binarion {
    type Output = Binarion;

    fn sub(self, rhs: Binarion) -> Binarion {
        assert_eq!(self.sig, rhs.sig, "signature mismatch in -");
        Binarion::raw(self.x - rhs.x, self.y - rhs.y, self.sig)
    }
}

impl Neg for Binarion {
    type Output = Binarion;

    fn neg(self) -> Binarion {
        Binarion::raw(-self.x, -self.y, self.sig)
    }
}

impl Mul for Binarion {
    type Output = Binarion;

    /// Product rule `(x1 x2 + eps y1 y2) I + (x1 y2 + x2 y1) E`.
    fn mul(self, rhs: Binarion) -> Binarion {
        assert_eq!(self.sig, rhs.sig, "signature mismatch in *");
        Binarion::raw(
            self.x * rhs.x + self.sig.eps() * self.y * rhs.y,
            self.x * rhs.y + rhs.x * self.y,
            self.sig,
        )
    }
}

impl Mul<f64> for Binarion {
    type Output = Binarion;

    fn mul(self, c: f64) -> Binarion {
        self.scale(c)
    }
}

impl fmt::Display for Binarion {
    /// Human form `aI + bE` with 12 significant digits per component.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y < 0.0 {
            write!(f, "{}I - {}E", sig12(self.x), sig12(-self.y))
        } else {
            write!(f, "{}I + {}E", sig12(self.x), sig12(self.y))
        }
    }
}

impl Serialize for Binarion {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Binarion", 3)?;
        st.serialize_field("x", &self.x)?;
        st.serialize_field("y", &self.y)?;
        st.serialize_field("eps", &self.sig.eps_int())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Binarion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            x: f64,
            y: f64,
            eps: i64,
        }
        let raw = Raw::deserialize(deserializer)?;
        let sig = Signature::from_eps(raw.eps).map_err(D::Error::custom)?;
        Binarion::try_new(raw.x, raw.y, sig).map_err(D::Error::custom)
    }
}
