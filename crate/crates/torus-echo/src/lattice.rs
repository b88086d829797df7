//! Primitive rank-1 sublattices of Z² and their associated geometry.
//!
//! A sublattice Λ = Z·v with v = (p, q) coprime indexes a rational direction
//! on the torus. It carries the two linear Hamiltonians H_Λ(ξ) = ⟨ξ, v⟩/L and
//! H_Λ^⊥(ξ) = ⟨ξ, v^⊥⟩/L with L = ‖v‖, and the averaging projector I_Λ which
//! keeps exactly the Fourier modes lying on the line Z·v.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{EchoError, Result};

/// A primitive rank-1 sublattice of Z², stored through its canonical
/// generator.
///
/// Canonical form: `p > 0`, or `p == 0 && q == 1`. Every sublattice has
/// exactly one canonical generator among ±v.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimitiveDirection {
    p: i64,
    q: i64,
}

impl PrimitiveDirection {
    /// Builds the direction generated by (p, q), canonicalizing the sign.
    ///
    /// Fails if (p, q) = (0, 0) or gcd(|p|, |q|) != 1.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(EchoError::Scenario("direction generator (0,0)".into()));
        }
        if gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
            return Err(EchoError::Scenario(format!(
                "({p},{q}) is not primitive (gcd > 1)"
            )));
        }
        let (p, q) = if p > 0 || (p == 0 && q > 0) {
            (p, q)
        } else {
            (-p, -q)
        };
        Ok(Self { p, q })
    }

    /// Canonical primitive generator of the line through `k`, for any
    /// nonzero lattice vector.
    pub fn from_lattice_vector(k: (i64, i64)) -> Result<Self> {
        if k == (0, 0) {
            return Err(EchoError::Scenario("zero lattice vector".into()));
        }
        let g = gcd(k.0.unsigned_abs(), k.1.unsigned_abs()) as i64;
        Self::new(k.0 / g, k.1 / g)
    }

    pub fn generator(&self) -> (i64, i64) {
        (self.p, self.q)
    }

    /// The directly-orthogonal lattice vector (-q, p), same length.
    pub fn perp(&self) -> (i64, i64) {
        (-self.q, self.p)
    }

    /// The direction generated by v^⊥, canonicalized.
    pub fn perp_direction(&self) -> Self {
        Self::new(-self.q, self.p).expect("perp of a primitive vector is primitive")
    }

    /// L = ‖v‖ = ‖v^⊥‖.
    pub fn length(&self) -> f64 {
        ((self.p * self.p + self.q * self.q) as f64).sqrt()
    }

    /// H_Λ(ξ) = ⟨ξ, v⟩ / L.
    pub fn h(&self, xi: [f64; 2]) -> f64 {
        (xi[0] * self.p as f64 + xi[1] * self.q as f64) / self.length()
    }

    /// H_Λ^⊥(ξ) = ⟨ξ, v^⊥⟩ / L.
    pub fn h_perp(&self, xi: [f64; 2]) -> f64 {
        let (a, b) = self.perp();
        (xi[0] * a as f64 + xi[1] * b as f64) / self.length()
    }

    /// Whether a lattice vector lies on the line Z·v.
    pub fn contains(&self, k: (i64, i64)) -> bool {
        self.p * k.1 - self.q * k.0 == 0
    }

    /// The integer j with k = j·v, when `k` lies on the line.
    pub fn lattice_index(&self, k: (i64, i64)) -> Option<i64> {
        if !self.contains(k) {
            return None;
        }
        Some(if self.p != 0 { k.0 / self.p } else { k.1 / self.q })
    }

    /// Unit vector v/L.
    pub fn unit(&self) -> [f64; 2] {
        let l = self.length();
        [self.p as f64 / l, self.q as f64 / l]
    }

    /// Unit vector v^⊥/L.
    pub fn unit_perp(&self) -> [f64; 2] {
        let l = self.length();
        let (a, b) = self.perp();
        [a as f64 / l, b as f64 / l]
    }
}

/// Serialized as "p/q" in configs and manifests.
impl fmt::Display for PrimitiveDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for PrimitiveDirection {
    type Err = EchoError;

    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s
            .split_once('/')
            .ok_or_else(|| EchoError::Scenario(format!("bad direction string {s:?}")))?;
        let p: i64 = p
            .trim()
            .parse()
            .map_err(|_| EchoError::Scenario(format!("bad direction string {s:?}")))?;
        let q: i64 = q
            .trim()
            .parse()
            .map_err(|_| EchoError::Scenario(format!("bad direction string {s:?}")))?;
        Self::new(p, q)
    }
}

impl Serialize for PrimitiveDirection {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PrimitiveDirection {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// All canonical primitive directions with generator norm at most `max_norm`,
/// sorted by (L, p, q). Returns an empty list for `max_norm < 1`.
pub fn enumerate_primitive(max_norm: f64) -> Vec<PrimitiveDirection> {
    let mut out = Vec::new();
    if max_norm < 1.0 {
        return out;
    }
    let bound = max_norm.floor() as i64;
    let max_sq = (max_norm * max_norm).floor() as i64;
    for p in 0..=bound {
        for q in -bound..=bound {
            if p * p + q * q > max_sq {
                continue;
            }
            let canonical = p > 0 || (p == 0 && q == 1);
            if !canonical {
                continue;
            }
            if gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
                continue;
            }
            out.push(PrimitiveDirection { p, q });
        }
    }
    out.sort_by(|a, b| {
        let la = a.p * a.p + a.q * a.q;
        let lb = b.p * b.p + b.q * b.q;
        la.cmp(&lb).then(a.p.cmp(&b.p)).then(a.q.cmp(&b.q))
    });
    out
}
