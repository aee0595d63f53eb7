//! The L-infinity structure on polyvector fields twisted by a closed 3-form,
//! and its Maurer-Cartan (twisted Poisson) theory over Q[h]/(h^N).
//!
//! The binary operation is the Schouten-derived cochain m, the ternary one is
//! the contraction image of the twist. The generalized Jacobi identities in
//! arities 4 and 5 reduce to the chain-map property of the contraction
//! morphism and to the vanishing of brackets between its images; both are
//! exposed as defect handles that must evaluate to zero.
//!
//! A Maurer-Cartan element is a bivector with coefficients in the maximal
//! ideal (h); it is a twisted Poisson structure when
//! `[pi, pi] = phi(H)(pi, pi, pi)` holds exactly in the truncated ring.

use std::collections::BTreeMap;

use serde_json::{Map, Value};

use crate::cartan::{schouten, DiffForm, MultiVector};
use crate::ce::{self, Cochain};
use crate::error::{Error, Result};
use crate::kernel::poly::Poly;
use crate::kernel::scalar::{ArtinRing, Rat, Scalar};

/// Polyvector fields with the Schouten bracket and the ternary operation
/// induced by a closed 3-form H. H = 0 degenerates to the Schouten algebra
/// with trivial differential.
#[derive(Clone)]
pub struct TwistedLInfty {
    num_vars: usize,
    ring: ArtinRing,
    h_form: DiffForm,
    l3: Cochain,
}

impl TwistedLInfty {
    /// Build the structure, requiring dH = 0.
    pub fn new(num_vars: usize, ring: ArtinRing, h_form: DiffForm) -> Result<Self> {
        if !h_form.is_closed() {
            return Err(Error::NotClosed);
        }
        Self::new_unchecked(num_vars, ring, h_form)
    }

    /// Build the structure without the closedness check. Intended for
    /// negative controls: with dH != 0 the arity-4 defect is nonzero.
    pub fn new_unchecked(num_vars: usize, ring: ArtinRing, h_form: DiffForm) -> Result<Self> {
        if h_form.num_vars() != num_vars {
            return Err(Error::ChartMismatch {
                expected: num_vars,
                got: h_form.num_vars(),
            });
        }
        if h_form.order() != ring.order() {
            return Err(Error::RingMismatch {
                expected: ring.order(),
                got: h_form.order(),
            });
        }
        if !h_form.is_zero() && h_form.homogeneous_degree() != Some(3) {
            return Err(Error::DegreeMismatch {
                expected: 3,
                got: format!("{:?}", h_form.degrees()),
            });
        }
        let l3 = ce::phi_handle(&h_form, 3);
        Ok(TwistedLInfty {
            num_vars,
            ring,
            h_form,
            l3,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn ring(&self) -> &ArtinRing {
        &self.ring
    }

    pub fn h_form(&self) -> &DiffForm {
        &self.h_form
    }

    /// The binary operation m.
    pub fn l2(&self) -> Cochain {
        ce::schouten_cochain(self.num_vars, self.ring.order())
    }

    /// The ternary operation phi(H).
    pub fn l3(&self) -> &Cochain {
        &self.l3
    }

    /// Arity-4 generalized Jacobi defect: the differential of the ternary
    /// operation. Zero on every tuple exactly when dH = 0.
    pub fn jacobi_defect_4(&self) -> Cochain {
        ce::differential(&self.l3)
    }

    /// Arity-5 generalized Jacobi defect: the bracket of the ternary
    /// operation with itself. Zero on every tuple for any 3-form twist.
    pub fn jacobi_defect_5(&self) -> Cochain {
        ce::bracket(&self.l3, &self.l3).expect("l3 has arity 3")
    }

    /// The Maurer-Cartan residual `[pi, pi] - phi(H)(pi, pi, pi)`.
    pub fn mc_residual(&self, pi: &MCElement) -> Result<MultiVector> {
        let p = pi.as_multivector();
        let bracket = schouten(p, p)?;
        let cubic = self.l3.evaluate(&[p.clone(), p.clone(), p.clone()])?;
        Ok(&bracket - &cubic)
    }
}

/// A degree-2 polyvector with all coefficients in the maximal ideal (h).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MCElement {
    pi: MultiVector,
}

impl MCElement {
    pub fn new(pi: MultiVector) -> Result<Self> {
        if !pi.is_zero() && pi.homogeneous_degree() != Some(2) {
            return Err(Error::DegreeMismatch {
                expected: 2,
                got: format!("{:?}", pi.degrees()),
            });
        }
        if !pi.in_maximal_ideal() {
            return Err(Error::NotInMaximalIdeal);
        }
        Ok(MCElement { pi })
    }

    pub fn as_multivector(&self) -> &MultiVector {
        &self.pi
    }

    pub fn into_multivector(self) -> MultiVector {
        self.pi
    }
}

/// Outcome of the order-by-order Maurer-Cartan solver.
#[derive(Clone, Debug)]
pub enum McOutcome {
    /// A solution with zero residual modulo h^max_order.
    Solved { pi: MCElement },
    /// First order at which the linear step has no solution within the
    /// degree cap, together with the residual class at that order (the
    /// h^order coefficient of the residual of the partial solution).
    Obstructed {
        order: u32,
        partial: MCElement,
        residual: MultiVector,
    },
}

/// Greedy order-by-order extension of `h * pi1` to a Maurer-Cartan element
/// with residual zero modulo h^max_order.
///
/// The h^2 coefficient of the residual is `[pi1, pi1]` and no higher
/// correction can reach it, so a nonzero value there is an immediate
/// obstruction. For e >= 3 the h^e equation is linear in the correction
/// pi_{e-1} through `2 [pi1, pi_{e-1}]`; it is solved exactly over the
/// monomial coefficients of bivectors with coefficient degree at most
/// `coeff_degree_cap`, free variables pinned to zero so that runs are
/// reproducible. The first unsolvable order is reported together with the
/// residual class at that order.
pub fn mc_solve(
    structure: &TwistedLInfty,
    pi1: &MultiVector,
    max_order: u32,
    coeff_degree_cap: u32,
) -> Result<McOutcome> {
    let n = structure.num_vars();
    let order = structure.ring().order();
    if max_order > order {
        return Err(Error::Unsupported(format!(
            "max_order {max_order} exceeds the ring truncation order {order}"
        )));
    }
    if !pi1.is_zero() && pi1.homogeneous_degree() != Some(2) {
        return Err(Error::DegreeMismatch {
            expected: 2,
            got: format!("{:?}", pi1.degrees()),
        });
    }
    // layers of the ansatz: pi = sum_k h^k pi_k with rational bivector layers
    let mut layers: Vec<MultiVector> = vec![MultiVector::zero(n, order), pi1.clone()];
    let assemble = |layers: &[MultiVector]| -> MultiVector {
        let mut acc = MultiVector::zero(n, order);
        for (k, layer) in layers.iter().enumerate() {
            acc = &acc + &layer.mul_h_power(k as u32);
        }
        acc
    };
    for e in 2..max_order {
        let partial = assemble(&layers);
        let pi_partial = MCElement::new(partial)?;
        let residual = structure.mc_residual(&pi_partial)?;
        let class = residual.h_coefficient(e);
        if class.is_zero() {
            layers.push(MultiVector::zero(n, order));
            continue;
        }
        if e == 2 {
            // [pi1, pi1] != 0: nothing multiplies into h^2
            return Ok(McOutcome::Obstructed {
                order: 2,
                partial: pi_partial,
                residual: class,
            });
        }
        // the correction pi_{e-1} enters the h^e coefficient as 2 [pi1, pi_{e-1}]
        let rhs = -&class;
        match solve_bracket_system(pi1, &rhs, coeff_degree_cap)? {
            Some(correction) => {
                let last = layers.len() - 1;
                layers[last] = correction;
                layers.push(MultiVector::zero(n, order));
            }
            None => {
                return Ok(McOutcome::Obstructed {
                    order: e,
                    partial: pi_partial,
                    residual: class,
                });
            }
        }
    }
    let pi = MCElement::new(assemble(&layers))?;
    let final_residual = structure.mc_residual(&pi)?;
    if truncated_is_zero(&final_residual, max_order) {
        Ok(McOutcome::Solved { pi })
    } else {
        // residual survives below the requested order; report the first bad order
        for e in 2..max_order {
            let class = final_residual.h_coefficient(e);
            if !class.is_zero() {
                return Ok(McOutcome::Obstructed {
                    order: e,
                    partial: pi,
                    residual: class,
                });
            }
        }
        unreachable!("nonzero truncated residual must have a leading order")
    }
}

fn truncated_is_zero(mv: &MultiVector, max_order: u32) -> bool {
    (0..max_order).all(|k| mv.h_coefficient(k).is_zero())
}

/// Solve `2 [pi1, u] = rhs` for a rational bivector u with monomial
/// coefficients of total degree <= cap. Returns None when inconsistent.
fn solve_bracket_system(
    pi1: &MultiVector,
    rhs: &MultiVector,
    cap: u32,
) -> Result<Option<MultiVector>> {
    let n = pi1.num_vars();
    let order = pi1.order();
    // unknown basis: (monomial exponents, direction pair)
    let mut unknowns: Vec<MultiVector> = Vec::new();
    let monos = monomials_up_to(n, cap);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push(vec![i, j]);
        }
    }
    for dirs in &pairs {
        for mono in &monos {
            let coef = Poly::monomial(n, mono.clone(), Scalar::one(order));
            unknowns.push(MultiVector::term(n, dirs, coef));
        }
    }
    // image of each unknown under 2 [pi1, .]
    let two = Rat::from_integer(2.into());
    let columns: Vec<MultiVector> = unknowns
        .iter()
        .map(|u| schouten(pi1, u).map(|b| b.scale(&two)))
        .collect::<Result<_>>()?;
    // row space: every (dirs, monomial) appearing in any column or in rhs
    let mut rows: BTreeMap<(Vec<usize>, Vec<u32>), usize> = BTreeMap::new();
    let index_rows = |mv: &MultiVector, rows: &mut BTreeMap<(Vec<usize>, Vec<u32>), usize>| {
        for (dirs, poly) in mv.terms() {
            for (exp, _) in poly.terms() {
                let key = (dirs.clone(), exp.clone());
                let next = rows.len();
                rows.entry(key).or_insert(next);
            }
        }
    };
    for c in &columns {
        index_rows(c, &mut rows);
    }
    index_rows(rhs, &mut rows);
    let nrows = rows.len();
    let ncols = columns.len();
    let mut matrix: Vec<Vec<Rat>> = vec![vec![Rat::from_integer(0.into()); ncols + 1]; nrows];
    let entry_of = |mv: &MultiVector, dirs: &[usize], exp: &[u32]| -> Rat {
        mv.coeff(dirs).coeff(exp).coeff(0)
    };
    for ((dirs, exp), r) in &rows {
        for (c, col) in columns.iter().enumerate() {
            matrix[*r][c] = entry_of(col, dirs, exp);
        }
        matrix[*r][ncols] = entry_of(rhs, dirs, exp);
    }
    match solve_exact(&mut matrix, ncols) {
        None => Ok(None),
        Some(solution) => {
            let mut u = MultiVector::zero(n, order);
            for (c, coeff) in solution.iter().enumerate() {
                if !num_traits::Zero::is_zero(coeff) {
                    u = &u + &unknowns[c].scale(coeff);
                }
            }
            Ok(Some(u))
        }
    }
}

fn monomials_up_to(n: usize, cap: u32) -> Vec<Vec<u32>> {
    let mut monos: Vec<Vec<u32>> = vec![vec![0; n]];
    for _ in 0..cap {
        let mut next = Vec::new();
        for m in &monos {
            for i in 0..n {
                let mut e = m.clone();
                e[i] += 1;
                next.push(e);
            }
        }
        monos.extend(next);
        monos.sort();
        monos.dedup();
    }
    monos
}

/// Exact Gaussian elimination on the augmented matrix (ncols unknowns plus
/// one right-hand column). Free variables are set to zero; returns None on
/// inconsistency.
fn solve_exact(matrix: &mut [Vec<Rat>], ncols: usize) -> Option<Vec<Rat>> {
    use num_traits::Zero;
    let nrows = matrix.len();
    let mut pivot_row_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut rank = 0usize;
    for col in 0..ncols {
        let mut pivot = None;
        for row in rank..nrows {
            if !matrix[row][col].is_zero() {
                pivot = Some(row);
                break;
            }
        }
        let Some(p) = pivot else { continue };
        matrix.swap(rank, p);
        let inv = matrix[rank][col].clone().recip();
        for c in col..=ncols {
            let scaled = &matrix[rank][c] * &inv;
            matrix[rank][c] = scaled;
        }
        for row in 0..nrows {
            if row != rank && !matrix[row][col].is_zero() {
                let factor = matrix[row][col].clone();
                for c in col..=ncols {
                    let delta = &factor * &matrix[rank][c];
                    let updated = &matrix[row][c] - &delta;
                    matrix[row][c] = updated;
                }
            }
        }
        pivot_row_of_col[col] = Some(rank);
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    for row in rank..nrows {
        if !matrix[row][ncols].is_zero() {
            return None;
        }
    }
    let mut solution = vec![Rat::zero(); ncols];
    for col in 0..ncols {
        if let Some(row) = pivot_row_of_col[col] {
            solution[col] = matrix[row][ncols].clone();
        }
    }
    Some(solution)
}

/// Untwisted gauge action `exp(ad_lambda)(pi)`, requiring H = 0. The sum
/// truncates by nilpotency of the coefficient h.
pub fn gauge_apply_untwisted(
    structure: &TwistedLInfty,
    lambda: &MultiVector,
    pi: &MCElement,
) -> Result<MCElement> {
    if !structure.h_form().is_zero() {
        return Err(Error::Unsupported(
            "gauge action is only defined for the untwisted (H = 0) structure".into(),
        ));
    }
    if !lambda.is_zero() && lambda.homogeneous_degree() != Some(1) {
        return Err(Error::DegreeMismatch {
            expected: 1,
            got: format!("{:?}", lambda.degrees()),
        });
    }
    if !lambda.in_maximal_ideal() {
        return Err(Error::NotInMaximalIdeal);
    }
    let mut acc = pi.as_multivector().clone();
    let mut term = pi.as_multivector().clone();
    let mut k = 1u64;
    loop {
        term = schouten(lambda, &term)?;
        if term.is_zero() {
            break;
        }
        term = term.scale(&Rat::new(1.into(), k.into()));
        acc = &acc + &term;
        k += 1;
    }
    MCElement::new(acc)
}

/// A Maurer-Cartan problem file: ring, twist, first-order ansatz and the
/// target truncation order.
#[derive(Clone, Debug)]
pub struct McProblem {
    pub ring: ArtinRing,
    pub h_form: DiffForm,
    pub pi1: MultiVector,
    pub max_order: u32,
}

impl McProblem {
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("ring".into(), self.ring.to_json());
        m.insert("H".into(), self.h_form.to_json());
        m.insert("pi1".into(), self.pi1.to_json());
        m.insert("maxOrder".into(), Value::from(self.max_order));
        Value::Object(m)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("problem must be an object".into()))?;
        let ring = ArtinRing::from_json(
            obj.get("ring")
                .ok_or_else(|| Error::Parse("missing ring".into()))?,
        )?;
        let order = ring.order();
        let h_form = DiffForm::from_json(
            obj.get("H")
                .ok_or_else(|| Error::Parse("missing H".into()))?,
            order,
        )?;
        let pi1 = MultiVector::from_json(
            obj.get("pi1")
                .ok_or_else(|| Error::Parse("missing pi1".into()))?,
            order,
        )?;
        let max_order =
            obj.get("maxOrder")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse("missing integer maxOrder".into()))? as u32;
        Ok(McProblem {
            ring,
            h_form,
            pi1,
            max_order,
        })
    }
}
