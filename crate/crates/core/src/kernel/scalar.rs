//! Exact scalars: rationals with an optional nilpotent formal parameter.
//!
//! The coefficient ring is Q[h]/(h^N) for a fixed truncation order N >= 1.
//! N = 1 is the plain rational field. Arithmetic never rounds; products of
//! monomials whose h-degrees sum to N or more are dropped.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// Exact rational number.
pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical string form "a/b" with reduced terms and positive denominator.
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rat_from_string(s: &str) -> Result<Rat> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::from_str(num.trim())
        .map_err(|e| Error::Parse(format!("bad numerator {num:?}: {e}")))?;
    let d = BigInt::from_str(den.trim())
        .map_err(|e| Error::Parse(format!("bad denominator {den:?}: {e}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(n, d))
}

/// The coefficient ring Q[h]/(h^N) with maximal ideal (h).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinRing {
    param: String,
    order: u32,
}

impl ArtinRing {
    /// Ring of truncation order `order` (so h^order = 0). `order = 1` is Q.
    pub fn new(order: u32) -> Self {
        assert!(order >= 1, "Artin ring order must be at least 1");
        ArtinRing {
            param: "h".to_string(),
            order,
        }
    }

    pub fn with_param(param: impl Into<String>, order: u32) -> Self {
        assert!(order >= 1, "Artin ring order must be at least 1");
        ArtinRing {
            param: param.into(),
            order,
        }
    }

    /// The plain rational field Q.
    pub fn rational() -> Self {
        ArtinRing::new(1)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn param(&self) -> &str {
        &self.param
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("param".into(), Value::String(self.param.clone()));
        m.insert("order".into(), Value::from(self.order));
        Value::Object(m)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("ring must be an object".into()))?;
        let order = obj
            .get("order")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("ring.order must be a positive integer".into()))?;
        if order < 1 {
            return Err(Error::Parse("ring.order must be >= 1".into()));
        }
        let param = obj
            .get("param")
            .and_then(Value::as_str)
            .unwrap_or("h")
            .to_string();
        Ok(ArtinRing {
            param,
            order: order as u32,
        })
    }
}

/// Element of Q[h]/(h^N), stored as a sparse map h-exponent -> nonzero rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar {
    order: u32,
    coeffs: BTreeMap<u32, Rat>,
}

impl Scalar {
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1);
        Scalar {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(order: u32) -> Self {
        Scalar::from_rat(Rat::one(), order)
    }

    pub fn from_rat(r: Rat, order: u32) -> Self {
        let mut s = Scalar::zero(order);
        if !r.is_zero() {
            s.coeffs.insert(0, r);
        }
        s
    }

    pub fn from_int(n: i64, order: u32) -> Self {
        Scalar::from_rat(rat_int(n), order)
    }

    /// The class of h^e, which is zero when e >= order.
    pub fn h_power(e: u32, order: u32) -> Self {
        let mut s = Scalar::zero(order);
        if e < order {
            s.coeffs.insert(e, Rat::one());
        }
        s
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of h^e.
    pub fn coeff(&self, e: u32) -> Rat {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Rat)> {
        self.coeffs.iter().map(|(e, r)| (*e, r))
    }

    /// Least h-exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    /// True when the element lies in the maximal ideal (h), i.e. vanishes at h = 0.
    pub fn in_maximal_ideal(&self) -> bool {
        self.valuation().map_or(true, |v| v >= 1)
    }

    fn check_order(&self, other: &Scalar) {
        assert_eq!(
            self.order, other.order,
            "scalar arithmetic across different Artin orders ({} vs {})",
            self.order, other.order
        );
    }

    pub fn scale(&self, r: &Rat) -> Scalar {
        if r.is_zero() {
            return Scalar::zero(self.order);
        }
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, c * r)).collect();
        Scalar {
            order: self.order,
            coeffs,
        }
    }

    /// Multiply by h^e, truncating at the ring order.
    pub fn mul_h_power(&self, e: u32) -> Scalar {
        let mut out = Scalar::zero(self.order);
        for (k, c) in &self.coeffs {
            if k + e < self.order {
                out.coeffs.insert(k + e, c.clone());
            }
        }
        out
    }

    /// JSON object {"h0": "a/b", "h1": "c/d", ...}; only nonzero entries appear.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (e, c) in &self.coeffs {
            m.insert(format!("h{e}"), Value::String(rat_to_string(c)));
        }
        Value::Object(m)
    }

    pub fn from_json(v: &Value, order: u32) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("scalar must be an object".into()))?;
        let mut s = Scalar::zero(order);
        for (k, val) in obj {
            let e: u32 = k
                .strip_prefix('h')
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| {
                    Error::Parse(format!("bad scalar key {k:?}, expected h<exponent>"))
                })?;
            if e >= order {
                return Err(Error::Parse(format!(
                    "exponent h^{e} not below ring order {order}"
                )));
            }
            let txt = val
                .as_str()
                .ok_or_else(|| Error::Parse(format!("scalar entry {k} must be a string")))?;
            let r = rat_from_string(txt)?;
            if !r.is_zero() {
                s.coeffs.insert(e, r);
            }
        }
        Ok(s)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_order(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            let entry = out.coeffs.entry(*e).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                out.coeffs.remove(e);
            }
        }
        out
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, -c)).collect();
        Scalar {
            order: self.order,
            coeffs,
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_order(rhs);
        let mut out = Scalar::zero(self.order);
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                let e = e1 + e2;
                if e >= self.order {
                    continue;
                }
                let entry = out.coeffs.entry(e).or_insert_with(Rat::zero);
                *entry += c1 * c2;
                if entry.is_zero() {
                    out.coeffs.remove(&e);
                }
            }
        }
        out
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*h")?,
                _ => write!(f, "{c}*h^{e}")?,
            }
        }
        Ok(())
    }
}
