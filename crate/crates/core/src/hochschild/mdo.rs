//! Multidifferential operators on the polynomial algebra.
//!
//! An arity-p operator is a finite sum of terms `c * d^{b_1} (x) ... (x) d^{b_p}`
//! acting by `D(a_1, .., a_p) = sum c * (d^{b_1} a_1) ... (d^{b_p} a_p)`.
//! Arity 0 is an element of the algebra itself. Terms are canonical: merged
//! on identical beta tuples, zero coefficients pruned.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde_json::{Map, Value};

use num_traits::One;

use crate::error::{Error, Result};
use crate::kernel::poly::{var_name, Exponents, Poly};
use crate::kernel::scalar::{rat_int, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiDiffOp {
    num_vars: usize,
    order: u32,
    arity: usize,
    terms: BTreeMap<Vec<Exponents>, Poly>,
}

fn factorial_u32(n: u32) -> Rat {
    let mut r = Rat::one();
    for i in 2..=n as i64 {
        r *= rat_int(i);
    }
    r
}

/// Ordered splittings of `total` into `parts` nonnegative summands.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for rest in compositions(total - first, parts - 1) {
            let mut v = Vec::with_capacity(parts);
            v.push(first);
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

/// All splittings of the multi-index `beta` into `parts` buckets, together
/// with the multinomial coefficient of each splitting.
fn multi_splittings(beta: &[u32], parts: usize) -> Vec<(Vec<Exponents>, Rat)> {
    let n = beta.len();
    let mut acc: Vec<(Vec<Exponents>, Rat)> = vec![(vec![vec![0u32; 0]; parts], Rat::one())];
    // build dimension by dimension
    for d in 0..n {
        let dim_splits = compositions(beta[d], parts);
        let mut next = Vec::with_capacity(acc.len() * dim_splits.len());
        for (buckets, coeff) in &acc {
            for split in &dim_splits {
                let mut denom = Rat::one();
                for &s in split {
                    denom *= factorial_u32(s);
                }
                let c = coeff * &(factorial_u32(beta[d]) / denom);
                let mut b2 = buckets.clone();
                for (bucket, &s) in b2.iter_mut().zip(split) {
                    bucket.push(s);
                }
                next.push((b2, c));
            }
        }
        acc = next;
    }
    acc
}

impl MultiDiffOp {
    pub fn zero(num_vars: usize, arity: usize, order: u32) -> Self {
        MultiDiffOp {
            num_vars,
            order,
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// An arity-0 cochain: the element itself.
    pub fn constant(p: Poly) -> Self {
        let mut op = MultiDiffOp::zero(p.num_vars(), 0, p.order());
        if !p.is_zero() {
            op.terms.insert(Vec::new(), p);
        }
        op
    }

    /// The multiplication 2-cochain `(a, b) -> ab`.
    pub fn multiplication(num_vars: usize, order: u32) -> Self {
        let mut op = MultiDiffOp::zero(num_vars, 2, order);
        op.terms.insert(
            vec![vec![0; num_vars], vec![0; num_vars]],
            Poly::one(num_vars, order),
        );
        op
    }

    /// The coordinate derivation d/dx_i as a 1-cochain.
    pub fn derivation(num_vars: usize, i: usize, order: u32) -> Self {
        assert!(i < num_vars);
        let mut beta = vec![0; num_vars];
        beta[i] = 1;
        let mut op = MultiDiffOp::zero(num_vars, 1, order);
        op.terms.insert(vec![beta], Poly::one(num_vars, order));
        op
    }

    /// The identity 1-cochain `a -> a`.
    pub fn identity(num_vars: usize, order: u32) -> Self {
        let mut op = MultiDiffOp::zero(num_vars, 1, order);
        op.terms
            .insert(vec![vec![0; num_vars]], Poly::one(num_vars, order));
        op
    }

    pub fn from_terms(
        num_vars: usize,
        arity: usize,
        order: u32,
        terms: impl IntoIterator<Item = (Vec<Exponents>, Poly)>,
    ) -> Result<Self> {
        let mut op = MultiDiffOp::zero(num_vars, arity, order);
        for (betas, coef) in terms {
            if betas.len() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    got: betas.len(),
                });
            }
            for b in &betas {
                if b.len() != num_vars {
                    return Err(Error::ChartMismatch {
                        expected: num_vars,
                        got: b.len(),
                    });
                }
            }
            if coef.num_vars() != num_vars {
                return Err(Error::ChartMismatch {
                    expected: num_vars,
                    got: coef.num_vars(),
                });
            }
            op.insert_add(betas, coef);
        }
        Ok(op)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Exponents>, &Poly)> {
        self.terms.iter()
    }

    /// Shifted degree in the Gerstenhaber grading.
    pub fn shifted_degree(&self) -> i64 {
        self.arity as i64 - 1
    }

    fn insert_add(&mut self, betas: Vec<Exponents>, coef: Poly) {
        if coef.is_zero() {
            return;
        }
        match self.terms.get_mut(&betas) {
            Some(existing) => {
                let sum = &*existing + &coef;
                if sum.is_zero() {
                    self.terms.remove(&betas);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(betas, coef);
            }
        }
    }

    pub(crate) fn check_compat(&self, other: &MultiDiffOp) -> Result<()> {
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

    /// Exact evaluation on an argument tuple.
    pub fn eval(&self, args: &[Poly]) -> Result<Poly> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: args.len(),
            });
        }
        let mut out = Poly::zero(self.num_vars, self.order);
        for (betas, coef) in &self.terms {
            let mut prod = coef.clone();
            for (beta, arg) in betas.iter().zip(args) {
                if prod.is_zero() {
                    break;
                }
                prod = &prod * &arg.partial_multi(beta)?;
            }
            out = &out + &prod;
        }
        Ok(out)
    }

    /// Insertion composition `self o_i other` (slot is 1-based): substitute
    /// the other operator into argument slot i and expand the derivative
    /// acting on the substituted value by the generalized Leibniz rule.
    pub fn compose_at(&self, other: &MultiDiffOp, slot: usize) -> Result<MultiDiffOp> {
        self.check_compat(other)?;
        if slot == 0 || slot > self.arity {
            return Err(Error::SlotOutOfRange {
                slot,
                arity: self.arity,
            });
        }
        let q = other.arity;
        let mut out = MultiDiffOp::zero(self.num_vars, self.arity + q - 1, self.order);
        for (betas_d, coef_d) in &self.terms {
            let beta_slot = &betas_d[slot - 1];
            for (betas_e, coef_e) in &other.terms {
                for (buckets, multinomial) in multi_splittings(beta_slot, q + 1) {
                    // bucket 0 differentiates the inner coefficient, buckets
                    // 1..=q pile onto the inner argument slots
                    let de = coef_e.partial_multi(&buckets[0])?;
                    if de.is_zero() {
                        continue;
                    }
                    let coef = (coef_d * &de).scale(&multinomial);
                    if coef.is_zero() {
                        continue;
                    }
                    let mut betas = Vec::with_capacity(self.arity + q - 1);
                    betas.extend_from_slice(&betas_d[..slot - 1]);
                    for (j, be) in betas_e.iter().enumerate() {
                        let merged: Exponents =
                            be.iter().zip(&buckets[j + 1]).map(|(a, b)| a + b).collect();
                        betas.push(merged);
                    }
                    betas.extend_from_slice(&betas_d[slot..]);
                    out.insert_add(betas, coef);
                }
            }
        }
        Ok(out)
    }

    /// The pre-Lie composition `D o E = sum_i (-1)^{(i-1)(q-1)} D o_i E`.
    pub fn circle(&self, other: &MultiDiffOp) -> Result<MultiDiffOp> {
        self.check_compat(other)?;
        let q = other.arity as i64;
        if self.arity + other.arity == 0 {
            return Ok(MultiDiffOp::zero(self.num_vars, 0, self.order));
        }
        let mut out = MultiDiffOp::zero(self.num_vars, self.arity + other.arity - 1, self.order);
        for i in 1..=self.arity {
            let part = self.compose_at(other, i)?;
            let sign = ((i as i64 - 1) * (q - 1)).rem_euclid(2) == 1;
            out = if sign { &out - &part } else { &out + &part };
        }
        Ok(out)
    }

    /// Cup product `(D u E)(a_1..a_{p+q}) = D(a_1..a_p) * E(a_{p+1}..)`.
    pub fn cup(&self, other: &MultiDiffOp) -> Result<MultiDiffOp> {
        self.check_compat(other)?;
        let mut out = MultiDiffOp::zero(self.num_vars, self.arity + other.arity, self.order);
        for (betas_d, coef_d) in &self.terms {
            for (betas_e, coef_e) in &other.terms {
                let mut betas = betas_d.clone();
                betas.extend(betas_e.iter().cloned());
                out.insert_add(betas, coef_d * coef_e);
            }
        }
        Ok(out)
    }

    /// Brace `D{E_1, .., E_k}`: sum over order-preserving simultaneous
    /// insertions at slots i_1 < .. < i_k of D with the Gerstenhaber sign
    /// `(-1)^{sum_j (i_j - 1)(q_j - 1)}`.
    pub fn brace(&self, args: &[MultiDiffOp]) -> Result<MultiDiffOp> {
        let k = args.len();
        if k > self.arity {
            return Err(Error::BraceTooManyArguments {
                arity: self.arity,
                got: k,
            });
        }
        for e in args {
            self.check_compat(e)?;
        }
        if k == 0 {
            return Ok(self.clone());
        }
        let result_arity = self.arity - k + args.iter().map(|e| e.arity).sum::<usize>();
        let mut out = MultiDiffOp::zero(self.num_vars, result_arity, self.order);
        for positions in increasing_tuples(self.arity, k) {
            let mut sign_exp = 0i64;
            for (j, &pos) in positions.iter().enumerate() {
                sign_exp += (pos as i64 - 1) * (args[j].arity as i64 - 1);
            }
            // insert right-to-left so earlier slot indices stay valid
            let mut acc = self.clone();
            for j in (0..k).rev() {
                acc = acc.compose_at(&args[j], positions[j])?;
            }
            out = if sign_exp.rem_euclid(2) == 1 {
                &out - &acc
            } else {
                &out + &acc
            };
        }
        Ok(out)
    }

    /// Insertion of a fixed algebra element into every slot:
    /// `i_a D(a_1, .., a_{n-1}) = sum_i (-1)^i D(a_1, .., a_i, a, a_{i+1}, ..)`.
    pub fn insert_element(&self, a: &Poly) -> Result<MultiDiffOp> {
        if self.arity == 0 {
            return Err(Error::ArityZeroComposition);
        }
        if a.num_vars() != self.num_vars {
            return Err(Error::ChartMismatch {
                expected: self.num_vars,
                got: a.num_vars(),
            });
        }
        let mut out = MultiDiffOp::zero(self.num_vars, self.arity - 1, self.order);
        for (betas, coef) in &self.terms {
            for i in 0..self.arity {
                let da = a.partial_multi(&betas[i])?;
                if da.is_zero() {
                    continue;
                }
                let mut c = coef * &da;
                if i % 2 != 0 {
                    c = -&c;
                }
                let mut rest = betas.clone();
                rest.remove(i);
                out.insert_add(rest, c);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, r: &Rat) -> MultiDiffOp {
        let mut out = MultiDiffOp::zero(self.num_vars, self.arity, self.order);
        for (betas, coef) in &self.terms {
            out.insert_add(betas.clone(), coef.scale(r));
        }
        out
    }

    /// JSON: {"vars": n, "arity": p, "terms": [{"coef": Poly, "betas": [[..], ..]}]}.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(betas, coef)| {
                let mut m = Map::new();
                m.insert("coef".into(), coef.to_json());
                m.insert(
                    "betas".into(),
                    Value::Array(
                        betas
                            .iter()
                            .map(|b| Value::Array(b.iter().map(|&e| Value::from(e)).collect()))
                            .collect(),
                    ),
                );
                Value::Object(m)
            })
            .collect();
        let mut m = Map::new();
        m.insert("vars".into(), Value::from(self.num_vars as u64));
        m.insert("arity".into(), Value::from(self.arity as u64));
        m.insert("terms".into(), Value::Array(terms));
        Value::Object(m)
    }

    pub fn from_json(v: &Value, order: u32) -> Result<MultiDiffOp> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("operator must be an object".into()))?;
        let n = obj
            .get("vars")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing vars".into()))? as usize;
        let arity = obj
            .get("arity")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing arity".into()))? as usize;
        let terms = obj
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing terms".into()))?;
        let mut parsed = Vec::new();
        for t in terms {
            let tobj = t
                .as_object()
                .ok_or_else(|| Error::Parse("term must be an object".into()))?;
            let coef = Poly::from_json(
                tobj.get("coef")
                    .ok_or_else(|| Error::Parse("term needs coef".into()))?,
                order,
            )?;
            let betas_v = tobj
                .get("betas")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("term needs betas".into()))?;
            let mut betas = Vec::new();
            for b in betas_v {
                let arr = b
                    .as_array()
                    .ok_or_else(|| Error::Parse("beta must be an array".into()))?;
                let beta: Exponents = arr
                    .iter()
                    .map(|x| {
                        x.as_u64()
                            .map(|u| u as u32)
                            .ok_or_else(|| Error::Parse("beta entries must be integers".into()))
                    })
                    .collect::<Result<_>>()?;
                betas.push(beta);
            }
            parsed.push((betas, coef));
        }
        MultiDiffOp::from_terms(n, arity, order, parsed)
    }
}

/// Strictly increasing k-tuples from {1, .., p}.
fn increasing_tuples(p: usize, k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (1..=p).combinations(k).collect()
}

impl Add for &MultiDiffOp {
    type Output = MultiDiffOp;
    fn add(self, rhs: &MultiDiffOp) -> MultiDiffOp {
        self.check_compat(rhs)
            .expect("sum across incompatible operators");
        assert_eq!(self.arity, rhs.arity, "sum across different arities");
        let mut out = self.clone();
        for (betas, coef) in &rhs.terms {
            out.insert_add(betas.clone(), coef.clone());
        }
        out
    }
}

impl Sub for &MultiDiffOp {
    type Output = MultiDiffOp;
    fn sub(self, rhs: &MultiDiffOp) -> MultiDiffOp {
        self + &(-rhs)
    }
}

impl Neg for &MultiDiffOp {
    type Output = MultiDiffOp;
    fn neg(self) -> MultiDiffOp {
        let terms = self.terms.iter().map(|(b, c)| (b.clone(), -c)).collect();
        MultiDiffOp {
            num_vars: self.num_vars,
            order: self.order,
            arity: self.arity,
            terms,
        }
    }
}

impl fmt::Display for MultiDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (betas, coef) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({coef})")?;
            for beta in betas {
                let factors: Vec<String> = beta
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        let v = var_name(i, self.num_vars);
                        if e == 1 {
                            format!("d{v}")
                        } else {
                            format!("d{v}^{e}")
                        }
                    })
                    .collect();
                if factors.is_empty() {
                    write!(f, " (x) id")?;
                } else {
                    write!(f, " (x) {}", factors.join(""))?;
                }
            }
        }
        Ok(())
    }
}
