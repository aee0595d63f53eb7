//! The Schouten bracket on polyvector fields.
//!
//! Sign conventions, which the property suite pins down exactly:
//!
//! * shifted antisymmetry `[p, q] = -(-1)^{(|p|-1)(|q|-1)} [q, p]`,
//! * graded Jacobi `[p, [q, r]] = [[p, q], r] + (-1)^{(|p|-1)(|q|-1)} [q, [p, r]]`,
//! * Leibniz `[p, q ^ r] = [p, q] ^ r + (-1)^{(|p|-1)|q|} q ^ [p, r]`,
//! * on generators: `[X, f] = X(f)` and `[X, Y]` is the Lie bracket of
//!   vector fields; `[f, g] = 0` for functions.
//!
//! These axioms determine the bracket uniquely. On a polynomial chart it is
//! computed through the odd-directional-derivative form
//!
//! `[p, q] = sum_j (p <-d_j) ^ (d q / d x_j)
//!           - (-1)^{(|p|-1)(|q|-1)} sum_j (q <-d_j) ^ (d p / d x_j)`
//!
//! where `<-d_j` removes the factor `d_j` from the right of each wedge
//! monomial (zero when absent). Contraction-style expansions of the bracket
//! against decomposables that are written with other sign bookkeeping can
//! differ by a degree-dependent sign in even exterior degree; the axioms
//! above are normative here.

use super::{merge_increasing, table_insert_add, Table};
use crate::cartan::MultiVector;
use crate::error::Result;

/// Remove direction `j` from the increasing tuple by commuting it to the
/// rightmost slot. Returns the sign and the remaining tuple.
fn right_remove(dirs: &[usize], j: usize) -> Option<(i8, Vec<usize>)> {
    let m = dirs.iter().position(|&d| d == j)?;
    let sign = if (dirs.len() - 1 - m) % 2 == 0 { 1 } else { -1 };
    let mut rest = dirs.to_vec();
    rest.remove(m);
    Some((sign, rest))
}

/// `sum_j (pi <-d_j) ^ (d rho / d x_j)` for arbitrary table contents.
fn directional_half(pi: &MultiVector, rho: &MultiVector) -> Table {
    let mut out = Table::new();
    for (dirs_p, f) in pi.terms() {
        for j in dirs_p.iter().copied() {
            let (sign, rest) = match right_remove(dirs_p, j) {
                Some(x) => x,
                None => continue,
            };
            for (dirs_r, g) in rho.terms() {
                let dg = g.partial(j).expect("direction within chart");
                if dg.is_zero() {
                    continue;
                }
                if let Some((msign, merged)) = merge_increasing(&rest, dirs_r) {
                    let mut c = f * &dg;
                    if sign * msign < 0 {
                        c = -&c;
                    }
                    table_insert_add(&mut out, merged, c);
                }
            }
        }
    }
    out
}

fn bracket_homogeneous(pi: &MultiVector, p: usize, rho: &MultiVector, q: usize) -> MultiVector {
    let n = pi.num_vars();
    let order = pi.order();
    let first = MultiVector::from_table(n, order, directional_half(pi, rho));
    let second = MultiVector::from_table(n, order, directional_half(rho, pi));
    let exponent = (p as i64 - 1) * (q as i64 - 1);
    if exponent.rem_euclid(2) == 0 {
        &first - &second
    } else {
        &first + &second
    }
}

/// The Schouten bracket, extended bilinearly over mixed-degree inputs.
/// The result of homogeneous degrees p, q has degree p + q - 1.
pub fn schouten(pi: &MultiVector, rho: &MultiVector) -> Result<MultiVector> {
    pi.check_compat(rho)?;
    let mut out = MultiVector::zero(pi.num_vars(), pi.order());
    for (p, pc) in pi.components() {
        for (q, qc) in rho.components() {
            out = &out + &bracket_homogeneous(&pc, p, &qc, q);
        }
    }
    Ok(out)
}
