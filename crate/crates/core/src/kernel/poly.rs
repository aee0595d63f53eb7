//! Multivariate polynomials with exact Artin-ring coefficients.
//!
//! Terms are kept in canonical form: exponent vectors of fixed length
//! `num_vars`, no zero coefficients, map ordered lexicographically.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::kernel::scalar::{Rat, Scalar};

/// Exponent multi-index of length `num_vars`.
pub type Exponents = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    num_vars: usize,
    order: u32,
    terms: BTreeMap<Exponents, Scalar>,
}

/// Variable display names: x, y, z, w for small charts, x0, x1, ... otherwise.
pub fn var_name(i: usize, num_vars: usize) -> String {
    if num_vars <= 4 {
        ["x", "y", "z", "w"][i].to_string()
    } else {
        format!("x{i}")
    }
}

impl Poly {
    pub fn zero(num_vars: usize, order: u32) -> Self {
        assert!(order >= 1);
        Poly {
            num_vars,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Scalar) -> Self {
        let mut p = Poly::zero(num_vars, c.order());
        if !c.is_zero() {
            p.terms.insert(vec![0; num_vars], c);
        }
        p
    }

    pub fn one(num_vars: usize, order: u32) -> Self {
        Poly::constant(num_vars, Scalar::one(order))
    }

    pub fn from_int(num_vars: usize, n: i64, order: u32) -> Self {
        Poly::constant(num_vars, Scalar::from_int(n, order))
    }

    /// The coordinate monomial x_i.
    pub fn var(num_vars: usize, i: usize, order: u32) -> Self {
        assert!(i < num_vars);
        let mut exp = vec![0; num_vars];
        exp[i] = 1;
        Poly::monomial(num_vars, exp, Scalar::one(order))
    }

    pub fn monomial(num_vars: usize, exp: Exponents, c: Scalar) -> Self {
        assert_eq!(exp.len(), num_vars);
        let mut p = Poly::zero(num_vars, c.order());
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    /// Total degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn coeff(&self, exp: &[u32]) -> Scalar {
        self.terms
            .get(exp)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.order))
    }

    fn check_compat(&self, other: &Poly) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::ChartMismatch {
                expected: self.num_vars,
                got: other.num_vars,
            });
        }
        if self.order != other.order {
            return Err(Error::RingMismatch {
                expected: self.order,
                got: other.order,
            });
        }
        Ok(())
    }

    fn insert_add(&mut self, exp: Exponents, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&exp);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    /// Exact product, truncated at the Artin order.
    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_compat(other)?;
        let mut out = Poly::zero(self.num_vars, self.order);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exp: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert_add(exp, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone());
        }
        Ok(out)
    }

    /// Exact partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Result<Poly> {
        if i >= self.num_vars {
            return Err(Error::IndexOutOfRange {
                index: i,
                num_vars: self.num_vars,
            });
        }
        let mut out = Poly::zero(self.num_vars, self.order);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut exp = e.clone();
            exp[i] -= 1;
            out.insert_add(exp, c.scale(&Rat::from_integer(e[i].into())));
        }
        Ok(out)
    }

    /// Iterated partial derivative per the exponent multi-index `beta`.
    pub fn partial_multi(&self, beta: &[u32]) -> Result<Poly> {
        if beta.len() != self.num_vars {
            return Err(Error::ChartMismatch {
                expected: self.num_vars,
                got: beta.len(),
            });
        }
        let mut out = self.clone();
        for (i, &b) in beta.iter().enumerate() {
            for _ in 0..b {
                out = out.partial(i)?;
                if out.is_zero() {
                    return Ok(out);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, r: &Rat) -> Poly {
        if r.is_zero() {
            return Poly::zero(self.num_vars, self.order);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.scale(r)))
            .collect();
        Poly {
            num_vars: self.num_vars,
            order: self.order,
            terms,
        }
    }

    pub fn scale_scalar(&self, s: &Scalar) -> Poly {
        let mut out = Poly::zero(self.num_vars, self.order);
        for (e, c) in &self.terms {
            out.insert_add(e.clone(), c * s);
        }
        out
    }

    pub fn mul_h_power(&self, e: u32) -> Poly {
        let mut out = Poly::zero(self.num_vars, self.order);
        for (exp, c) in &self.terms {
            out.insert_add(exp.clone(), c.mul_h_power(e));
        }
        out
    }

    /// The polynomial whose coefficients are the rationals at h^k, viewed at h^0.
    pub fn h_coefficient(&self, k: u32) -> Poly {
        let mut out = Poly::zero(self.num_vars, self.order);
        for (exp, c) in &self.terms {
            out.insert_add(exp.clone(), Scalar::from_rat(c.coeff(k), self.order));
        }
        out
    }

    /// True when every coefficient vanishes at h = 0.
    pub fn in_maximal_ideal(&self) -> bool {
        self.terms.values().all(Scalar::in_maximal_ideal)
    }

    /// JSON: {"vars": n, "terms": [{"exp": [..], "coef": {...}}]}.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut m = Map::new();
                m.insert(
                    "exp".into(),
                    Value::Array(e.iter().map(|&x| Value::from(x)).collect()),
                );
                m.insert("coef".into(), c.to_json());
                Value::Object(m)
            })
            .collect();
        let mut m = Map::new();
        m.insert("vars".into(), Value::from(self.num_vars as u64));
        m.insert("terms".into(), Value::Array(terms));
        Value::Object(m)
    }

    pub fn from_json(v: &Value, order: u32) -> Result<Poly> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("poly must be an object".into()))?;
        let n = obj
            .get("vars")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("poly.vars must be an integer".into()))?
            as usize;
        let mut p = Poly::zero(n, order);
        let terms = obj
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("poly.terms must be an array".into()))?;
        for t in terms {
            let tobj = t
                .as_object()
                .ok_or_else(|| Error::Parse("poly term must be an object".into()))?;
            let exp_v = tobj
                .get("exp")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("poly term needs an exp array".into()))?;
            if exp_v.len() != n {
                return Err(Error::Parse(format!(
                    "exp length {} does not match vars {}",
                    exp_v.len(),
                    n
                )));
            }
            let exp: Exponents = exp_v
                .iter()
                .map(|x| {
                    x.as_u64()
                        .map(|u| u as u32)
                        .ok_or_else(|| Error::Parse("exp entries must be integers".into()))
                })
                .collect::<Result<_>>()?;
            let coef = Scalar::from_json(
                tobj.get("coef")
                    .ok_or_else(|| Error::Parse("poly term needs a coef".into()))?,
                order,
            )?;
            p.insert_add(exp, coef);
        }
        Ok(p)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs)
            .expect("polynomial addition across charts")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        Poly {
            num_vars: self.num_vars,
            order: self.order,
            terms,
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs)
            .expect("polynomial product across charts")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    let v = var_name(i, self.num_vars);
                    if p == 1 {
                        v
                    } else {
                        format!("{v}^{p}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}
