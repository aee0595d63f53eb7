//! Differential forms and polyvector fields on a polynomial chart.
//!
//! Both kinds of object are sparse tables mapping strictly increasing index
//! tuples (wedge factors) to polynomial coefficients. Mixed exterior degree
//! is allowed everywhere; operations extend bilinearly.

mod diffform;
mod multivector;
mod schouten;

pub use diffform::{contract_iterated, DiffForm};
pub use multivector::MultiVector;
pub use schouten::schouten;

use std::collections::BTreeMap;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::kernel::poly::Poly;

pub(crate) type Table = BTreeMap<Vec<usize>, Poly>;

/// Merge two strictly increasing tuples into one, tracking the sign of the
/// shuffle. Returns None when the tuples share an index (odd square).
pub(crate) fn merge_increasing(a: &[usize], b: &[usize]) -> Option<(i8, Vec<usize>)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut sign = 1i8;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the a.len()-i remaining factors of a
            if (a.len() - i) % 2 != 0 {
                sign = -sign;
            }
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((sign, out))
}

pub(crate) fn table_insert_add(terms: &mut Table, key: Vec<usize>, p: Poly) {
    if p.is_zero() {
        return;
    }
    match terms.get_mut(&key) {
        Some(existing) => {
            let sum = &*existing + &p;
            if sum.is_zero() {
                terms.remove(&key);
            } else {
                *existing = sum;
            }
        }
        None => {
            terms.insert(key, p);
        }
    }
}

pub(crate) fn table_to_json(num_vars: usize, terms: &Table, dirs_key: &str) -> Value {
    let arr: Vec<Value> = terms
        .iter()
        .map(|(dirs, coef)| {
            let mut m = Map::new();
            m.insert(
                dirs_key.into(),
                Value::Array(dirs.iter().map(|&d| Value::from(d as u64)).collect()),
            );
            m.insert("coef".into(), coef.to_json());
            Value::Object(m)
        })
        .collect();
    let mut m = Map::new();
    m.insert("vars".into(), Value::from(num_vars as u64));
    m.insert("terms".into(), Value::Array(arr));
    Value::Object(m)
}

pub(crate) fn table_from_json(v: &Value, order: u32, dirs_key: &str) -> Result<(usize, Table)> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("expected an object".into()))?;
    let n = obj
        .get("vars")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing integer field vars".into()))? as usize;
    let arr = obj
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing array field terms".into()))?;
    let mut terms = Table::new();
    for t in arr {
        let tobj = t
            .as_object()
            .ok_or_else(|| Error::Parse("term must be an object".into()))?;
        let dirs_v = tobj
            .get(dirs_key)
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse(format!("term needs a {dirs_key} array")))?;
        let dirs: Vec<usize> = dirs_v
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|u| u as usize)
                    .ok_or_else(|| Error::Parse("indices must be integers".into()))
            })
            .collect::<Result<_>>()?;
        for w in dirs.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Parse(format!(
                    "{dirs_key} tuple {dirs:?} is not strictly increasing"
                )));
            }
        }
        if let Some(&d) = dirs.last() {
            if d >= n {
                return Err(Error::Parse(format!(
                    "index {d} out of range for {n} variables"
                )));
            }
        }
        let coef = Poly::from_json(
            tobj.get("coef")
                .ok_or_else(|| Error::Parse("term needs a coef".into()))?,
            order,
        )?;
        if coef.num_vars() != n {
            return Err(Error::ChartMismatch {
                expected: n,
                got: coef.num_vars(),
            });
        }
        table_insert_add(&mut terms, dirs, coef);
    }
    Ok((n, terms))
}
