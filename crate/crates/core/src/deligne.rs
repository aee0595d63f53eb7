//! Gauge calculus for nilpotent differential graded Lie algebras over the
//! Artin ring: Maurer-Cartan residuals, the exponentiated action of degree-0
//! elements, Baker-Campbell-Hausdorff composition of gauge elements, and the
//! target of a 2-cell.
//!
//! Carriers are polyvector fields with coefficients in the maximal ideal (h);
//! in the shifted grading a degree-i element is a polyvector of exterior
//! degree i + 1, so gauge elements are vector fields and Maurer-Cartan
//! elements are bivectors. The bracket and differential are pluggable; the
//! defaults are the Schouten bracket with zero differential.

use std::sync::Arc;

use num_traits::One;

use crate::cartan::{schouten, MultiVector};
use crate::error::{Error, Result};
use crate::kernel::scalar::{rat_int, ArtinRing, Rat};

type Bracket = Arc<dyn Fn(&MultiVector, &MultiVector) -> Result<MultiVector> + Send + Sync>;
type Differential = Arc<dyn Fn(&MultiVector) -> Result<MultiVector> + Send + Sync>;

/// A nilpotent DGLA on polyvector carriers. Nilpotency comes from the
/// h-grading: every element of interest lies in (h), so iterated brackets of
/// length at least the ring order vanish.
#[derive(Clone)]
pub struct NilpotentDgla {
    num_vars: usize,
    ring: ArtinRing,
    bracket: Bracket,
    differential: Differential,
}

impl NilpotentDgla {
    /// The Schouten DGLA with zero differential.
    pub fn schouten(num_vars: usize, ring: ArtinRing) -> Self {
        let order = ring.order();
        NilpotentDgla {
            num_vars,
            ring,
            bracket: Arc::new(|a, b| schouten(a, b)),
            differential: Arc::new(move |a| Ok(MultiVector::zero(a.num_vars(), order))),
        }
    }

    /// The abelian DGLA (zero bracket, zero differential) on the same carrier.
    pub fn abelian(num_vars: usize, ring: ArtinRing) -> Self {
        let order = ring.order();
        NilpotentDgla {
            num_vars,
            ring,
            bracket: Arc::new(move |a, _| Ok(MultiVector::zero(a.num_vars(), order))),
            differential: Arc::new(move |a| Ok(MultiVector::zero(a.num_vars(), order))),
        }
    }

    /// A user-supplied bracket/differential pair.
    pub fn with_operations(
        num_vars: usize,
        ring: ArtinRing,
        bracket: Bracket,
        differential: Differential,
    ) -> Self {
        NilpotentDgla {
            num_vars,
            ring,
            bracket,
            differential,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn ring(&self) -> &ArtinRing {
        &self.ring
    }

    pub fn bracket(&self, a: &MultiVector, b: &MultiVector) -> Result<MultiVector> {
        (self.bracket)(a, b)
    }

    pub fn differential(&self, a: &MultiVector) -> Result<MultiVector> {
        (self.differential)(a)
    }

    fn check_maximal_ideal(&self, v: &MultiVector) -> Result<()> {
        if !v.in_maximal_ideal() {
            return Err(Error::NotInMaximalIdeal);
        }
        Ok(())
    }
}

/// A degree-0 element (vector field) with coefficients in (h).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeElement {
    lambda: MultiVector,
}

impl GaugeElement {
    pub fn new(lambda: MultiVector) -> Result<Self> {
        if !lambda.is_zero() && lambda.homogeneous_degree() != Some(1) {
            return Err(Error::DegreeMismatch {
                expected: 1,
                got: format!("{:?}", lambda.degrees()),
            });
        }
        if !lambda.in_maximal_ideal() {
            return Err(Error::NotInMaximalIdeal);
        }
        Ok(GaugeElement { lambda })
    }

    pub fn zero(num_vars: usize, order: u32) -> Self {
        GaugeElement {
            lambda: MultiVector::zero(num_vars, order),
        }
    }

    pub fn as_multivector(&self) -> &MultiVector {
        &self.lambda
    }

    pub fn negate(&self) -> GaugeElement {
        GaugeElement {
            lambda: -&self.lambda,
        }
    }
}

/// The Maurer-Cartan residual `d gamma + 1/2 [gamma, gamma]`.
pub fn is_mc(g: &NilpotentDgla, gamma: &MultiVector) -> Result<MultiVector> {
    g.check_maximal_ideal(gamma)?;
    let d = g.differential(gamma)?;
    let br = g.bracket(gamma, gamma)?;
    Ok(&d + &br.scale(&Rat::new(1.into(), 2.into())))
}

/// Gauge action of exp(lambda) on a degree-1 element:
///
/// `exp(lambda) . gamma = gamma + sum_{k>=0} ad_lambda^k / (k+1)! ([lambda, gamma] - d lambda)`
///
/// truncated by nilpotency. The Maurer-Cartan residual transforms by
/// `exp(ad_lambda)`, so residual zero is preserved.
pub fn gauge_action(
    g: &NilpotentDgla,
    lambda: &GaugeElement,
    gamma: &MultiVector,
) -> Result<MultiVector> {
    g.check_maximal_ideal(gamma)?;
    let lam = lambda.as_multivector();
    let mut seed = &g.bracket(lam, gamma)? - &g.differential(lam)?;
    let mut acc = gamma + &seed; // k = 0 term has coefficient 1/1!
    let mut k: i64 = 1;
    while !seed.is_zero() {
        seed = g
            .bracket(lam, &seed)?
            .scale(&Rat::new(1.into(), (k + 1).into()));
        acc = &acc + &seed;
        k += 1;
    }
    Ok(acc)
}

/// `exp(ad_lambda)` applied to an arbitrary carrier element.
pub fn exp_ad(g: &NilpotentDgla, lambda: &GaugeElement, v: &MultiVector) -> Result<MultiVector> {
    let lam = lambda.as_multivector();
    let mut acc = v.clone();
    let mut term = v.clone();
    let mut k: i64 = 1;
    loop {
        term = g.bracket(lam, &term)?;
        if term.is_zero() {
            return Ok(acc);
        }
        term = term.scale(&Rat::new(1.into(), k.into()));
        acc = &acc + &term;
        k += 1;
    }
}

fn nested_bracket(g: &NilpotentDgla, word: &[&MultiVector]) -> Result<MultiVector> {
    let mut acc = word[word.len() - 1].clone();
    for w in word[..word.len() - 1].iter().rev() {
        acc = g.bracket(w, &acc)?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// Sequences of blocks (r_i, s_i) with r_i + s_i >= 1 and total letter count
/// exactly `total`.
fn block_sequences(total: u32) -> Vec<Vec<(u32, u32)>> {
    fn extend(remaining: u32, current: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
        if remaining == 0 {
            if !current.is_empty() {
                out.push(current.clone());
            }
            return;
        }
        for r in 0..=remaining {
            for s in 0..=(remaining - r) {
                if r + s == 0 {
                    continue;
                }
                current.push((r, s));
                extend(remaining - r - s, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    extend(total, &mut cur, &mut out);
    out
}

/// Baker-Campbell-Hausdorff composition via the explicit nested-bracket
/// series
///
/// `bch(a, b) = sum_{n>=1} (-1)^{n-1}/n sum_{(r_i,s_i)}
///     [a^{r_1} b^{s_1} .. a^{r_n} b^{s_n}] / ((sum_i r_i + s_i) prod_i r_i! s_i!)`
///
/// with right-nested brackets, truncated at word length `ring order - 1`
/// since every generator lies in (h).
pub fn bch(g: &NilpotentDgla, a: &GaugeElement, b: &GaugeElement) -> Result<GaugeElement> {
    let order = g.ring().order();
    let max_len = order.saturating_sub(1);
    let mut acc = MultiVector::zero(g.num_vars(), order);
    let factorial = |n: u32| -> Rat {
        let mut r = Rat::one();
        for i in 2..=n as i64 {
            r *= rat_int(i);
        }
        r
    };
    for total in 1..=max_len {
        for blocks in block_sequences(total) {
            let n_blocks = blocks.len() as i64;
            let mut word: Vec<&MultiVector> = Vec::with_capacity(total as usize);
            let mut denom = Rat::from_integer((total as i64).into());
            for &(r, s) in &blocks {
                for _ in 0..r {
                    word.push(a.as_multivector());
                }
                for _ in 0..s {
                    word.push(b.as_multivector());
                }
                denom *= factorial(r) * factorial(s);
            }
            let nested = nested_bracket(g, &word)?;
            if nested.is_zero() {
                continue;
            }
            let mut coeff = Rat::new(1.into(), n_blocks.into()) / denom;
            if (n_blocks - 1).rem_euclid(2) == 1 {
                coeff = -coeff;
            }
            acc = &acc + &nested.scale(&coeff);
        }
    }
    GaugeElement::new(acc)
}

/// The 1-morphism connected to `lambda` by the 2-cell `a` at the object
/// `gamma`: `bch(lambda, d_gamma a)` with `d_gamma a = d a + [gamma, a]`.
pub fn two_cell_target(
    g: &NilpotentDgla,
    lambda: &GaugeElement,
    a: &MultiVector,
    gamma: &MultiVector,
) -> Result<GaugeElement> {
    g.check_maximal_ideal(a)?;
    g.check_maximal_ideal(gamma)?;
    let twisted = &g.differential(a)? + &g.bracket(gamma, a)?;
    let shift = GaugeElement::new(twisted)?;
    bch(g, lambda, &shift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::poly::Poly;

    fn vec_field(n: usize, i: usize, order: u32) -> MultiVector {
        MultiVector::basis(n, &[i], order)
    }

    fn x(n: usize, order: u32) -> Poly {
        Poly::var(n, 0, order)
    }

    #[test]
    fn mc_residual_of_constant_bivector() {
        let n = 2;
        let g = NilpotentDgla::schouten(n, ArtinRing::new(3));
        let gamma = MultiVector::basis(n, &[0, 1], 3).mul_h_power(1);
        assert!(is_mc(&g, &gamma).unwrap().is_zero());
        assert!(is_mc(&g, &MultiVector::zero(n, 3)).unwrap().is_zero());
    }

    #[test]
    fn mc_residual_single_bracket() {
        // gamma = h x d/dx^d/dy: residual = (h^2/2)[base, base]
        let n = 3;
        let order = 4;
        let g = NilpotentDgla::schouten(n, ArtinRing::new(order));
        let base = &MultiVector::basis(n, &[0, 1], order)
            + &MultiVector::basis(n, &[0, 2], order).mul_poly(&x(n, order));
        let gamma = base.mul_h_power(1);
        let expected = schouten(&base, &base)
            .unwrap()
            .mul_h_power(2)
            .scale(&crate::kernel::scalar::rat_frac(1, 2));
        assert_eq!(is_mc(&g, &gamma).unwrap(), expected);
    }

    #[test]
    fn abelian_gauge_action_is_translation() {
        // zero differential and zero bracket: gamma stays fixed
        let n = 2;
        let g = NilpotentDgla::abelian(n, ArtinRing::new(3));
        let lambda = GaugeElement::new(vec_field(n, 0, 3).mul_h_power(1)).unwrap();
        let gamma = MultiVector::basis(n, &[0, 1], 3).mul_h_power(1);
        assert_eq!(gauge_action(&g, &lambda, &gamma).unwrap(), gamma);
    }

    #[test]
    fn gauge_action_single_ad_term() {
        // lambda = h x d/dx on gamma = h d/dx^d/dy over Q[h]/(h^3)
        let n = 2;
        let order = 3;
        let g = NilpotentDgla::schouten(n, ArtinRing::new(order));
        let lambda =
            GaugeElement::new(vec_field(n, 0, order).mul_poly(&x(n, order)).mul_h_power(1))
                .unwrap();
        let bxy = MultiVector::basis(n, &[0, 1], order);
        let gamma = bxy.mul_h_power(1);
        let expected = &bxy.mul_h_power(1) - &bxy.mul_h_power(2);
        assert_eq!(gauge_action(&g, &lambda, &gamma).unwrap(), expected);
    }

    #[test]
    fn gauge_identity() {
        let n = 2;
        let g = NilpotentDgla::schouten(n, ArtinRing::new(4));
        let gamma = MultiVector::basis(n, &[0, 1], 4)
            .mul_poly(&x(n, 4))
            .mul_h_power(1);
        let zero = GaugeElement::zero(n, 4);
        assert_eq!(gauge_action(&g, &zero, &gamma).unwrap(), gamma);
    }

    #[test]
    fn bch_truncates_to_the_sum_at_order_two() {
        let n = 2;
        let g = NilpotentDgla::schouten(n, ArtinRing::new(2));
        let a = GaugeElement::new(vec_field(n, 0, 2).mul_poly(&x(n, 2)).mul_h_power(1)).unwrap();
        let b = GaugeElement::new(vec_field(n, 1, 2).mul_h_power(1)).unwrap();
        let c = bch(&g, &a, &b).unwrap();
        assert_eq!(
            c.as_multivector(),
            &(a.as_multivector() + b.as_multivector())
        );
    }

    #[test]
    fn bch_second_order_term() {
        // bch(a, b) = a + b + 1/2 [a, b] at order 3
        let n = 2;
        let order = 3;
        let g = NilpotentDgla::schouten(n, ArtinRing::new(order));
        let a = GaugeElement::new(vec_field(n, 0, order).mul_poly(&x(n, order)).mul_h_power(1))
            .unwrap();
        let b = GaugeElement::new(vec_field(n, 0, order).mul_h_power(1)).unwrap();
        let c = bch(&g, &a, &b).unwrap();
        let half_bracket = schouten(a.as_multivector(), b.as_multivector())
            .unwrap()
            .scale(&crate::kernel::scalar::rat_frac(1, 2));
        let expected = &(a.as_multivector() + b.as_multivector()) + &half_bracket;
        assert_eq!(c.as_multivector(), &expected);
    }

    #[test]
    fn bch_inverse_is_negation() {
        let n = 2;
        let order = 4;
        let g = NilpotentDgla::schouten(n, ArtinRing::new(order));
        let a = GaugeElement::new(
            (&vec_field(n, 0, order).mul_poly(&x(n, order)) + &vec_field(n, 1, order))
                .mul_h_power(1),
        )
        .unwrap();
        let c = bch(&g, &a, &a.negate()).unwrap();
        assert!(c.as_multivector().is_zero());
        // and the fixed-point iteration for the inverse lands on -a
        let mut inv = a.negate();
        for _ in 0..order {
            let defect = bch(&g, &a, &inv).unwrap();
            inv =
                GaugeElement::new(&inv.as_multivector().clone() - defect.as_multivector()).unwrap();
        }
        assert_eq!(inv.as_multivector(), a.negate().as_multivector());
    }

    #[test]
    fn two_cell_with_zero_cell_is_identity() {
        let n = 2;
        let order = 3;
        let g = NilpotentDgla::schouten(n, ArtinRing::new(order));
        let lambda = GaugeElement::new(vec_field(n, 0, order).mul_h_power(1)).unwrap();
        let gamma = MultiVector::basis(n, &[0, 1], order).mul_h_power(1);
        let zero = MultiVector::zero(n, order);
        let target = two_cell_target(&g, &lambda, &zero, &gamma).unwrap();
        assert_eq!(target.as_multivector(), lambda.as_multivector());
    }

    #[test]
    fn two_cell_against_schouten_oracle() {
        // d = 0, gamma = h d/dx^d/dy, a = h f with f = x:
        // d_gamma a = h^2 [d/dx^d/dy, x]
        let n = 2;
        let order = 3;
        let g = NilpotentDgla::schouten(n, ArtinRing::new(order));
        let lambda = GaugeElement::zero(n, order);
        let bxy = MultiVector::basis(n, &[0, 1], order);
        let gamma = bxy.mul_h_power(1);
        let cell = MultiVector::from_poly(x(n, order)).mul_h_power(1);
        let target = two_cell_target(&g, &lambda, &cell, &gamma).unwrap();
        let expected = schouten(&bxy, &MultiVector::from_poly(x(n, order)))
            .unwrap()
            .mul_h_power(2);
        assert_eq!(target.as_multivector(), &expected);
    }
}
