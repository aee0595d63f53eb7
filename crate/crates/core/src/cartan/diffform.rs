//! Differential forms with polynomial coefficients, the de Rham differential
//! and the contraction pairing against polyvector fields.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde_json::Value;

use super::{merge_increasing, table_from_json, table_insert_add, table_to_json, Table};
use crate::cartan::MultiVector;
use crate::error::{Error, Result};
use crate::kernel::poly::{var_name, Poly};
use crate::kernel::scalar::Rat;

/// A differential form: sum of terms `f * dx_{i1} ^ ... ^ dx_{ik}` with
/// strictly increasing covector tuples; mixed degree allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffForm {
    num_vars: usize,
    order: u32,
    terms: Table,
}

impl DiffForm {
    pub fn zero(num_vars: usize, order: u32) -> Self {
        DiffForm {
            num_vars,
            order,
            terms: Table::new(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        let mut f = DiffForm::zero(p.num_vars(), p.order());
        if !p.is_zero() {
            f.terms.insert(Vec::new(), p);
        }
        f
    }

    /// The basis form `dx_{covs[0]} ^ ... ^ dx_{covs[k-1]}` (strictly increasing).
    pub fn basis(num_vars: usize, covs: &[usize], order: u32) -> Self {
        for w in covs.windows(2) {
            assert!(w[0] < w[1], "covector tuple must be strictly increasing");
        }
        if let Some(&d) = covs.last() {
            assert!(d < num_vars);
        }
        let mut f = DiffForm::zero(num_vars, order);
        f.terms.insert(covs.to_vec(), Poly::one(num_vars, order));
        f
    }

    pub fn term(num_vars: usize, covs: &[usize], coef: Poly) -> Self {
        DiffForm::basis(num_vars, covs, coef.order()).mul_poly(&coef)
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.terms.iter()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.terms.keys().map(Vec::len).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn homogeneous_degree(&self) -> Option<usize> {
        let ds = self.degrees();
        if ds.len() == 1 {
            Some(ds[0])
        } else {
            None
        }
    }

    pub fn degree_part(&self, k: usize) -> DiffForm {
        let terms = self
            .terms
            .iter()
            .filter(|(d, _)| d.len() == k)
            .map(|(d, p)| (d.clone(), p.clone()))
            .collect();
        DiffForm {
            num_vars: self.num_vars,
            order: self.order,
            terms,
        }
    }

    pub fn components(&self) -> Vec<(usize, DiffForm)> {
        self.degrees()
            .into_iter()
            .map(|k| (k, self.degree_part(k)))
            .collect()
    }

    fn check_compat(&self, other: &DiffForm) -> Result<()> {
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

    pub fn checked_wedge(&self, other: &DiffForm) -> Result<DiffForm> {
        self.check_compat(other)?;
        let mut out = DiffForm::zero(self.num_vars, self.order);
        for (da, pa) in &self.terms {
            for (db, pb) in &other.terms {
                if let Some((sign, covs)) = merge_increasing(da, db) {
                    let mut c = pa * pb;
                    if sign < 0 {
                        c = -&c;
                    }
                    table_insert_add(&mut out.terms, covs, c);
                }
            }
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &DiffForm) -> DiffForm {
        self.checked_wedge(other)
            .expect("wedge across incompatible charts")
    }

    pub fn mul_poly(&self, p: &Poly) -> DiffForm {
        let mut out = DiffForm::zero(self.num_vars, self.order);
        for (d, c) in &self.terms {
            table_insert_add(&mut out.terms, d.clone(), c * p);
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> DiffForm {
        let mut out = DiffForm::zero(self.num_vars, self.order);
        for (d, c) in &self.terms {
            table_insert_add(&mut out.terms, d.clone(), c.scale(r));
        }
        out
    }

    /// The de Rham differential: d(f dx_I) = sum_i (d_i f) dx_i ^ dx_I.
    pub fn de_rham(&self) -> DiffForm {
        let mut out = DiffForm::zero(self.num_vars, self.order);
        for (covs, coef) in &self.terms {
            for i in 0..self.num_vars {
                let df = coef.partial(i).expect("index within chart");
                if df.is_zero() {
                    continue;
                }
                if let Some((sign, merged)) = merge_increasing(&[i], covs) {
                    let c = if sign < 0 { -&df } else { df };
                    table_insert_add(&mut out.terms, merged, c);
                }
            }
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        self.de_rham().is_zero()
    }

    /// Contraction of a 1-form against a polyvector:
    /// `<a, f X_1 ^ .. ^ X_k> = f sum_i (-1)^{i-1} a(X_i) X_1 ^ .. omit i .. ^ X_k`,
    /// extended bilinearly; O-linear in both slots and zero on functions.
    pub fn contract(&self, pi: &MultiVector) -> Result<MultiVector> {
        if self.num_vars != pi.num_vars() {
            return Err(Error::ChartMismatch {
                expected: self.num_vars,
                got: pi.num_vars(),
            });
        }
        if self.order != pi.order() {
            return Err(Error::RingMismatch {
                expected: self.order,
                got: pi.order(),
            });
        }
        for covs in self.terms.keys() {
            if covs.len() != 1 {
                return Err(Error::DegreeMismatch {
                    expected: 1,
                    got: format!("{:?}", self.degrees()),
                });
            }
        }
        let mut out = Table::new();
        for (covs, a_coef) in &self.terms {
            let a = covs[0];
            for (dirs, f) in pi.terms() {
                for (m, &d) in dirs.iter().enumerate() {
                    if d != a {
                        continue;
                    }
                    let mut rest = dirs.clone();
                    rest.remove(m);
                    let mut c = f * a_coef;
                    if m % 2 != 0 {
                        c = -&c;
                    }
                    table_insert_add(&mut out, rest, c);
                }
            }
        }
        Ok(MultiVector::from_table(self.num_vars, self.order, out))
    }

    /// JSON: {"vars": n, "terms": [{"covs": [..], "coef": Poly}]}.
    pub fn to_json(&self) -> Value {
        table_to_json(self.num_vars, &self.terms, "covs")
    }

    pub fn from_json(v: &Value, order: u32) -> Result<DiffForm> {
        let (num_vars, terms) = table_from_json(v, order, "covs")?;
        Ok(DiffForm {
            num_vars,
            order,
            terms,
        })
    }
}

/// Nested contraction, innermost first: the last list element is applied
/// first, so `[b, a]` yields `<b, <a, pi>>`.
pub fn contract_iterated(alphas: &[DiffForm], pi: &MultiVector) -> Result<MultiVector> {
    let mut acc = pi.clone();
    for a in alphas.iter().rev() {
        acc = a.contract(&acc)?;
    }
    Ok(acc)
}

impl Add for &DiffForm {
    type Output = DiffForm;
    fn add(self, rhs: &DiffForm) -> DiffForm {
        self.check_compat(rhs)
            .expect("sum across incompatible charts");
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            table_insert_add(&mut out.terms, d.clone(), c.clone());
        }
        out
    }
}

impl Sub for &DiffForm {
    type Output = DiffForm;
    fn sub(self, rhs: &DiffForm) -> DiffForm {
        self + &(-rhs)
    }
}

impl Neg for &DiffForm {
    type Output = DiffForm;
    fn neg(self) -> DiffForm {
        let terms: BTreeMap<_, _> = self.terms.iter().map(|(d, c)| (d.clone(), -c)).collect();
        DiffForm {
            num_vars: self.num_vars,
            order: self.order,
            terms,
        }
    }
}

impl fmt::Display for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (covs, coef) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if covs.is_empty() {
                write!(f, "[{coef}]")?;
            } else {
                let basis: Vec<String> = covs
                    .iter()
                    .map(|&i| format!("d{}", var_name(i, self.num_vars)))
                    .collect();
                write!(f, "[{coef}] {}", basis.join("^"))?;
            }
        }
        Ok(())
    }
}
