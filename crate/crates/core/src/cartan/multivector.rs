//! Polyvector fields with polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde_json::Value;

use super::{merge_increasing, table_from_json, table_insert_add, table_to_json, Table};
use crate::error::{Error, Result};
use crate::kernel::poly::{var_name, Poly};
use crate::kernel::scalar::{Rat, Scalar};

/// A polyvector field on the chart: a sum of terms `f * d_{i1} ^ ... ^ d_{ik}`
/// with strictly increasing direction tuples. The empty tuple holds the
/// function part; mixed exterior degree is allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiVector {
    num_vars: usize,
    order: u32,
    terms: Table,
}

impl MultiVector {
    pub fn zero(num_vars: usize, order: u32) -> Self {
        MultiVector {
            num_vars,
            order,
            terms: Table::new(),
        }
    }

    /// A degree-0 multivector (a function).
    pub fn from_poly(p: Poly) -> Self {
        let mut mv = MultiVector::zero(p.num_vars(), p.order());
        if !p.is_zero() {
            mv.terms.insert(Vec::new(), p);
        }
        mv
    }

    /// The basis polyvector `d_{dirs[0]} ^ ... ^ d_{dirs[k-1]}` (dirs strictly increasing).
    pub fn basis(num_vars: usize, dirs: &[usize], order: u32) -> Self {
        for w in dirs.windows(2) {
            assert!(w[0] < w[1], "direction tuple must be strictly increasing");
        }
        if let Some(&d) = dirs.last() {
            assert!(d < num_vars);
        }
        let mut mv = MultiVector::zero(num_vars, order);
        mv.terms.insert(dirs.to_vec(), Poly::one(num_vars, order));
        mv
    }

    pub fn term(num_vars: usize, dirs: &[usize], coef: Poly) -> Self {
        MultiVector::basis(num_vars, dirs, coef.order()).mul_poly(&coef)
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

    pub(crate) fn from_table(num_vars: usize, order: u32, terms: Table) -> Self {
        MultiVector {
            num_vars,
            order,
            terms,
        }
    }

    pub fn coeff(&self, dirs: &[usize]) -> Poly {
        self.terms
            .get(dirs)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.num_vars, self.order))
    }

    /// Exterior degrees present, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.terms.keys().map(Vec::len).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// The exterior degree when the value is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let ds = self.degrees();
        if ds.len() == 1 {
            Some(ds[0])
        } else {
            None
        }
    }

    /// The degree-k part.
    pub fn degree_part(&self, k: usize) -> MultiVector {
        let terms = self
            .terms
            .iter()
            .filter(|(d, _)| d.len() == k)
            .map(|(d, p)| (d.clone(), p.clone()))
            .collect();
        MultiVector {
            num_vars: self.num_vars,
            order: self.order,
            terms,
        }
    }

    /// Split into homogeneous components (degree, part), ascending and nonzero.
    pub fn components(&self) -> Vec<(usize, MultiVector)> {
        self.degrees()
            .into_iter()
            .map(|k| (k, self.degree_part(k)))
            .collect()
    }

    pub(crate) fn check_compat(&self, other: &MultiVector) -> Result<()> {
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

    /// Graded-commutative exterior product.
    pub fn checked_wedge(&self, other: &MultiVector) -> Result<MultiVector> {
        self.check_compat(other)?;
        let mut out = MultiVector::zero(self.num_vars, self.order);
        for (da, pa) in &self.terms {
            for (db, pb) in &other.terms {
                if let Some((sign, dirs)) = merge_increasing(da, db) {
                    let mut c = pa * pb;
                    if sign < 0 {
                        c = -&c;
                    }
                    table_insert_add(&mut out.terms, dirs, c);
                }
            }
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &MultiVector) -> MultiVector {
        self.checked_wedge(other)
            .expect("wedge across incompatible charts")
    }

    pub fn mul_poly(&self, p: &Poly) -> MultiVector {
        let mut out = MultiVector::zero(self.num_vars, self.order);
        for (d, c) in &self.terms {
            table_insert_add(&mut out.terms, d.clone(), c * p);
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> MultiVector {
        let mut out = MultiVector::zero(self.num_vars, self.order);
        for (d, c) in &self.terms {
            table_insert_add(&mut out.terms, d.clone(), c.scale(r));
        }
        out
    }

    pub fn scale_scalar(&self, s: &Scalar) -> MultiVector {
        let mut out = MultiVector::zero(self.num_vars, self.order);
        for (d, c) in &self.terms {
            table_insert_add(&mut out.terms, d.clone(), c.scale_scalar(s));
        }
        out
    }

    pub fn mul_h_power(&self, e: u32) -> MultiVector {
        let mut out = MultiVector::zero(self.num_vars, self.order);
        for (d, c) in &self.terms {
            table_insert_add(&mut out.terms, d.clone(), c.mul_h_power(e));
        }
        out
    }

    /// The rational coefficient multivector at h^k (valued at h^0).
    pub fn h_coefficient(&self, k: u32) -> MultiVector {
        let mut out = MultiVector::zero(self.num_vars, self.order);
        for (d, c) in &self.terms {
            table_insert_add(&mut out.terms, d.clone(), c.h_coefficient(k));
        }
        out
    }

    pub fn in_maximal_ideal(&self) -> bool {
        self.terms.values().all(Poly::in_maximal_ideal)
    }

    /// JSON: {"vars": n, "terms": [{"dirs": [..], "coef": Poly}]}.
    pub fn to_json(&self) -> Value {
        table_to_json(self.num_vars, &self.terms, "dirs")
    }

    pub fn from_json(v: &Value, order: u32) -> Result<MultiVector> {
        let (num_vars, terms) = table_from_json(v, order, "dirs")?;
        Ok(MultiVector {
            num_vars,
            order,
            terms,
        })
    }
}

impl Add for &MultiVector {
    type Output = MultiVector;
    fn add(self, rhs: &MultiVector) -> MultiVector {
        self.check_compat(rhs)
            .expect("sum across incompatible charts");
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            table_insert_add(&mut out.terms, d.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiVector {
    type Output = MultiVector;
    fn sub(self, rhs: &MultiVector) -> MultiVector {
        self + &(-rhs)
    }
}

impl Neg for &MultiVector {
    type Output = MultiVector;
    fn neg(self) -> MultiVector {
        let terms: BTreeMap<_, _> = self.terms.iter().map(|(d, c)| (d.clone(), -c)).collect();
        MultiVector {
            num_vars: self.num_vars,
            order: self.order,
            terms,
        }
    }
}

impl fmt::Display for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (dirs, coef) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if dirs.is_empty() {
                write!(f, "[{coef}]")?;
            } else {
                let basis: Vec<String> = dirs
                    .iter()
                    .map(|&i| format!("d{}", var_name(i, self.num_vars)))
                    .collect();
                write!(f, "[{coef}] {}", basis.join("^"))?;
            }
        }
        Ok(())
    }
}
