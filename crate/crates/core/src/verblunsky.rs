//! Verblunsky coefficient sequences with finite support.
//!
//! A sequence is conceptually infinite: entries past the stored support are
//! zero and the entry at index −1 is −1. Neither convention is stored, so
//! serialization cannot corrupt them.

use crate::{Error, Result, C64};
use serde::{Deserialize, Serialize};

/// Entries must satisfy `|α| < 1 - DISK_GUARD` so that ρ stays representable.
pub const DISK_GUARD: f64 = 1e-14;

/// Finitely supported Verblunsky coefficients α₀…α_{N−1}.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerblunskySequence {
    entries: Vec<C64>,
}

impl VerblunskySequence {
    /// Builds a sequence from explicit values; trailing exact zeros are trimmed.
    pub fn explicit(values: &[C64]) -> Result<Self> {
        for (j, v) in values.iter().enumerate() {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFinite(j));
            }
            if v.norm() >= 1.0 - DISK_GUARD {
                return Err(Error::OutOfDisk(j));
            }
        }
        let mut entries = values.to_vec();
        while entries.last() == Some(&C64::new(0.0, 0.0)) {
            entries.pop();
        }
        Ok(Self { entries })
    }

    /// Real-valued convenience constructor.
    pub fn from_real(values: &[f64]) -> Result<Self> {
        let v: Vec<C64> = values.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::explicit(&v)
    }

    /// αⱼ = a·λʲ for 0 ≤ j < n.
    pub fn geometric(a: C64, lambda: f64, n: usize) -> Result<Self> {
        if !a.re.is_finite() || !a.im.is_finite() {
            return Err(Error::NonFinite(0));
        }
        if a.norm() >= 1.0 - DISK_GUARD {
            return Err(Error::OutOfDisk(0));
        }
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(Error::BadDecay(lambda));
        }
        let values: Vec<C64> = (0..n).map(|j| a * lambda.powi(j as i32)).collect();
        Self::explicit(&values)
    }

    /// The zero sequence (Lebesgue measure).
    pub fn zero() -> Self {
        Self::default()
    }

    /// Support length N.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Stored entries α₀…α_{N−1}.
    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    /// αⱼ with α₋₁ = −1 and zero outside the support.
    #[inline]
    pub fn at(&self, j: i64) -> C64 {
        if j == -1 {
            C64::new(-1.0, 0.0)
        } else if j < 0 || j as usize >= self.entries.len() {
            C64::new(0.0, 0.0)
        } else {
            self.entries[j as usize]
        }
    }

    /// |αⱼ|² with the same conventions as [`at`](Self::at).
    #[inline]
    pub fn abs2(&self, j: i64) -> f64 {
        self.at(j).norm_sqr()
    }

    /// ρⱼ = (1 − |αⱼ|²)^{1/2} for j ≥ 0.
    pub fn rho(&self, j: usize) -> f64 {
        self.rho2(j).sqrt()
    }

    /// ρⱼ² = 1 − |αⱼ|².
    #[inline]
    pub fn rho2(&self, j: usize) -> f64 {
        1.0 - self.abs2(j as i64)
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|a| a.conj()).collect(),
        }
    }

    /// max |αⱼ| over the support (0 for the empty sequence).
    pub fn sup_norm(&self) -> f64 {
        self.entries.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// Parses a JSON sequence spec.
    pub fn from_spec_json(text: &str) -> Result<Self> {
        let spec: SequenceSpec = serde_json::from_str(text).map_err(|e| Error::Spec(e.to_string()))?;
        spec.build()
    }
}

/// ℓ² norm of the tail αⱼ = a·λʲ, j ≥ n, dropped by truncating a geometric sequence.
pub fn geometric_tail_l2(a: C64, lambda: f64, n: usize) -> f64 {
    a.norm() * lambda.powi(n as i32) / (1.0 - lambda * lambda).sqrt()
}

/// On-disk description of a sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SequenceSpec {
    Explicit { values: Vec<[f64; 2]> },
    Geometric { a: [f64; 2], lambda: f64, n: usize },
}

impl SequenceSpec {
    pub fn build(&self) -> Result<VerblunskySequence> {
        match self {
            SequenceSpec::Explicit { values } => {
                let v: Vec<C64> = values.iter().map(|p| C64::new(p[0], p[1])).collect();
                VerblunskySequence::explicit(&v)
            }
            SequenceSpec::Geometric { a, lambda, n } => {
                if !lambda.is_finite() {
                    return Err(Error::NonFinite(0));
                }
                VerblunskySequence::geometric(C64::new(a[0], a[1]), *lambda, *n)
            }
        }
    }

    /// Explicit spec that reproduces `seq`.
    pub fn from_sequence(seq: &VerblunskySequence) -> Self {
        SequenceSpec::Explicit {
            values: seq.entries().iter().map(|a| [a.re, a.im]).collect(),
        }
    }
}
