//! Sampled 2-periodic and 2-antiperiodic signals with the shift operator
//! realized as an exact index rotation.
//!
//! A signal holds N samples over the half-open interval [0, 2) at spacing
//! 2/N with N even, so the unit shift (by one in t) is a rotation by N/2
//! indices and the operator identities E^2 = I on periodic signals and
//! E^2 = -I on antiperiodic ones hold exactly, not merely to rounding.
//! Fractional shifts are deliberately unsupported; interpolation error
//! would pollute those identities.

use std::io::BufRead;

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{Binarion, Signature};
use crate::error::Error;

/// Transformation law under a full-period shift: periodic signals return
/// to themselves, antiperiodic ones come back negated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignalKind {
    Periodic2,
    Antiperiodic2,
}

impl SignalKind {
    pub const fn label(self) -> &'static str {
        match self {
            SignalKind::Periodic2 => "periodic2",
            SignalKind::Antiperiodic2 => "antiperiodic2",
        }
    }

    fn from_label(label: &str) -> Option<Self> {
        match label {
            "periodic2" => Some(SignalKind::Periodic2),
            "antiperiodic2" => Some(SignalKind::Antiperiodic2),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampledSignal {
    kind: SignalKind,
    samples: Vec<f64>,
}

impl SampledSignal {
    /// Wraps a sample vector. N must be even and positive and every
    /// sample finite.
    pub fn from_samples(kind: SignalKind, samples: Vec<f64>) -> Result<Self, Error> {
        if samples.is_empty() || !samples.len().is_multiple_of(2) {
            return Err(Error::InvalidSignal(format!(
                "sample count must be even and positive, got {}",
                samples.len()
            )));
        }
        if let Some(bad) = samples.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidSignal(format!("non-finite sample {bad}")));
        }
        Ok(Self { kind, samples })
    }

    /// Samples `f` at the grid points t_i = 2i/N.
    pub fn from_fn(kind: SignalKind, n: usize, f: impl Fn(f64) -> f64) -> Result<Self, Error> {
        let samples = (0..n).map(|i| f(2.0 * i as f64 / n as f64)).collect();
        Self::from_samples(kind, samples)
    }

    pub fn kind(&self) -> SignalKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Grid point t_i = 2i/N for index i.
    pub fn t(&self, i: usize) -> f64 {
        2.0 * i as f64 / self.samples.len() as f64
    }

    /// Shift by a number of grid steps: output[i] = input at index
    /// i + steps, reduced mod N, negated once per full-period wrap for
    /// antiperiodic signals. Exact; no arithmetic beyond sign flips.
    pub fn shift(&self, steps: i64) -> Self {
        let n = self.samples.len() as i64;
        let samples = (0..n)
            .map(|i| {
                let j = i + steps;
                let wraps = j.div_euclid(n);
                let v = self.samples[j.rem_euclid(n) as usize];
                match self.kind {
                    SignalKind::Periodic2 => v,
                    SignalKind::Antiperiodic2 if wraps.rem_euclid(2) == 1 => -v,
                    SignalKind::Antiperiodic2 => v,
                }
            })
            .collect();
        Self {
            kind: self.kind,
            samples,
        }
    }

    /// The operator E: shift by one unit of t, i.e. N/2 grid steps.
    pub fn unit_shift(&self) -> Self {
        self.shift(self.samples.len() as i64 / 2)
    }

    /// Acts by xI + yE, i.e. x·s + y·(unit shift of s). The signature
    /// must match the signal: split operators act on periodic signals
    /// (E^2 = I there), complex ones on antiperiodic signals (E^2 = -I).
    pub fn apply_operator(&self, a: Binarion) -> Result<Self, Error> {
        let expected = match self.kind {
            SignalKind::Periodic2 => Signature::Split,
            SignalKind::Antiperiodic2 => Signature::Complex,
        };
        if a.sig() != expected {
            return Err(Error::KindMismatch {
                expected: self.kind.label(),
                got: a.sig().label(),
            });
        }
        let shifted = self.unit_shift();
        let samples = self
            .samples
            .iter()
            .zip(&shifted.samples)
            .map(|(s, es)| a.x() * s + a.y() * es)
            .collect();
        Ok(Self {
            kind: self.kind,
            samples,
        })
    }

    /// Splits a periodic signal into its 1-periodic and 1-antiperiodic
    /// parts: p1 = (s + Es)/2, ap1 = (s - Es)/2. The pieces sum back to
    /// s exactly and are the eigenvectors of every xI + yE, with
    /// eigenvalues x + y and x - y respectively.
    pub fn decompose(&self) -> Result<(Self, Self), Error> {
        if self.kind != SignalKind::Periodic2 {
            return Err(Error::KindMismatch {
                expected: SignalKind::Periodic2.label(),
                got: self.kind.label(),
            });
        }
        let shifted = self.unit_shift();
        let p1 = self
            .samples
            .iter()
            .zip(&shifted.samples)
            .map(|(s, es)| 0.5 * (s + es))
            .collect();
        let ap1 = self
            .samples
            .iter()
            .zip(&shifted.samples)
            .map(|(s, es)| 0.5 * (s - es))
            .collect();
        Ok((
            Self {
                kind: self.kind,
                samples: p1,
            },
            Self {
                kind: self.kind,
                samples: ap1,
            },
        ))
    }

    /// Max-norm residuals of the eigen action on the two halves of the
    /// decomposition: (‖a·p1 - (x+y)p1‖∞, ‖a·ap1 - (x-y)ap1‖∞).
    pub fn eigen_action_residual(&self, a: Binarion) -> Result<(f64, f64), Error> {
        let (p1, ap1) = self.decompose()?;
        let acted_p1 = p1.apply_operator(a)?;
        let acted_ap1 = ap1.apply_operator(a)?;
        let r_plus = acted_p1.max_abs_diff(&p1.scale(a.x() + a.y()));
        let r_minus = acted_ap1.max_abs_diff(&ap1.scale(a.x() - a.y()));
        Ok((r_plus, r_minus))
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            kind: self.kind,
            samples: self.samples.iter().map(|v| c * v).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, Error> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, Error> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self, Error> {
        if self.kind != other.kind {
            return Err(Error::KindMismatch {
                expected: self.kind.label(),
                got: other.kind.label(),
            });
        }
        if self.samples.len() != other.samples.len() {
            return Err(Error::InvalidSignal(format!(
                "length mismatch: {} vs {}",
                self.samples.len(),
                other.samples.len()
            )));
        }
        Ok(Self {
            kind: self.kind,
            samples: self
                .samples
                .iter()
                .zip(&other.samples)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        })
    }

    pub fn norm_inf(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest componentwise distance to another signal of the same shape.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.samples.len(), other.samples.len());
        self.samples
            .iter()
            .zip(&other.samples)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Reads rows of `t,value` in increasing t, taking the values in row
    /// order. A non-numeric first row is treated as a header. The t
    /// column only fixes the ordering; the grid is implied by the count.
    pub fn from_csv(kind: SignalKind, reader: impl BufRead) -> Result<Self, Error> {
        let mut samples = Vec::new();
        let mut last_t = f64::NEG_INFINITY;
        for (lineno, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| Error::InvalidSignal(format!("read failed: {e}")))?;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            let mut cols = trimmed.split(',');
            let t_raw = cols.next().unwrap_or("").trim();
            let v_raw = cols
                .next()
                .ok_or_else(|| {
                    Error::InvalidSignal(format!("line {}: expected t,value", lineno + 1))
                })?
                .trim();
            let t: f64 = match t_raw.parse() {
                Ok(t) => t,
                // allow a single header row
                Err(_) if samples.is_empty() && lineno == 0 => continue,
                Err(_) => {
                    return Err(Error::InvalidSignal(format!(
                        "line {}: bad t value {t_raw:?}",
                        lineno + 1
                    )))
                }
            };
            let v: f64 = v_raw.parse().map_err(|_| {
                Error::InvalidSignal(format!("line {}: bad sample {v_raw:?}", lineno + 1))
            })?;
            if t <= last_t {
                return Err(Error::InvalidSignal(format!(
                    "line {}: t column must be strictly increasing",
                    lineno + 1
                )));
            }
            last_t = t;
            samples.push(v);
        }
        Self::from_samples(kind, samples)
    }

    /// Writes the signal as `t,value` rows matching [`from_csv`].
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,value\n");
        for (i, v) in self.samples.iter().enumerate() {
            out.push_str(&format!("{},{}\n", self.t(i), v));
        }
        out
    }
}

impl Serialize for SampledSignal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("SampledSignal", 3)?;
        st.serialize_field("kind", self.kind.label())?;
        st.serialize_field("n", &self.samples.len())?;
        st.serialize_field("samples", &self.samples)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for SampledSignal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            kind: String,
            n: usize,
            samples: Vec<f64>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let kind = SignalKind::from_label(&raw.kind)
            .ok_or_else(|| D::Error::custom(format!("unknown signal kind {:?}", raw.kind)))?;
        if raw.n != raw.samples.len() {
            return Err(D::Error::custom(format!(
                "n = {} but {} samples given",
                raw.n,
                raw.samples.len()
            )));
        }
        SampledSignal::from_samples(kind, raw.samples).map_err(D::Error::custom)
    }
}
