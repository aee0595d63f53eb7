//! Seeded deterministic generation of random algebraic data for the
//! property suites. Coefficients are small integers, exponents are bounded,
//! and everything is reproducible from the seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cartan::{DiffForm, MultiVector};
use crate::hochschild::MultiDiffOp;
use crate::kernel::poly::{Exponents, Poly};
use crate::kernel::scalar::{rat_int, Scalar};

/// Name and revision of the generator; echoed into reports so that runs can
/// be compared across versions.
pub const GENERATOR_VERSION: &str = "chacha8/v1";

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Integer coefficient in [-3, 3].
    pub fn coeff(&mut self) -> i64 {
        self.rng.random_range(-3..=3)
    }

    fn nonzero_coeff(&mut self) -> i64 {
        loop {
            let c = self.coeff();
            if c != 0 {
                return c;
            }
        }
    }

    fn exponents(&mut self, num_vars: usize, max_deg: u32) -> Exponents {
        let total = self.rng.random_range(0..=max_deg);
        let mut exp = vec![0u32; num_vars];
        for _ in 0..total {
            let i = self.rng.random_range(0..num_vars);
            exp[i] += 1;
        }
        exp
    }

    /// A polynomial with 1..=3 monomials, total degree <= max_deg.
    pub fn poly(&mut self, num_vars: usize, max_deg: u32, order: u32) -> Poly {
        let nterms = self.rng.random_range(1..=3);
        let mut p = Poly::zero(num_vars, order);
        for _ in 0..nterms {
            let exp = self.exponents(num_vars, max_deg);
            let coef = Scalar::from_int(self.nonzero_coeff(), order);
            p = &p + &Poly::monomial(num_vars, exp, coef);
        }
        p
    }

    fn dirs(&mut self, num_vars: usize, degree: usize) -> Vec<usize> {
        assert!(degree <= num_vars);
        let mut all: Vec<usize> = (0..num_vars).collect();
        for i in 0..degree {
            let j = self.rng.random_range(i..num_vars);
            all.swap(i, j);
        }
        let mut take: Vec<usize> = all[..degree].to_vec();
        take.sort_unstable();
        take
    }

    /// A homogeneous nonzero polyvector of the given exterior degree with
    /// 1..=2 terms (resampled on the rare full cancellation).
    pub fn multivector(
        &mut self,
        num_vars: usize,
        degree: usize,
        max_deg: u32,
        order: u32,
    ) -> MultiVector {
        loop {
            let nterms = self.rng.random_range(1..=2);
            let mut mv = MultiVector::zero(num_vars, order);
            for _ in 0..nterms {
                let dirs = self.dirs(num_vars, degree);
                mv = &mv + &MultiVector::term(num_vars, &dirs, self.poly(num_vars, max_deg, order));
            }
            if !mv.is_zero() {
                return mv;
            }
        }
    }

    /// A vector field (degree-1 polyvector).
    pub fn vector_field(&mut self, num_vars: usize, max_deg: u32, order: u32) -> MultiVector {
        self.multivector(num_vars, 1, max_deg, order)
    }

    /// A homogeneous nonzero form of the given degree with 1..=2 terms.
    pub fn form(&mut self, num_vars: usize, degree: usize, max_deg: u32, order: u32) -> DiffForm {
        loop {
            let nterms = self.rng.random_range(1..=2);
            let mut w = DiffForm::zero(num_vars, order);
            for _ in 0..nterms {
                let covs = self.dirs(num_vars, degree);
                w = &w + &DiffForm::term(num_vars, &covs, self.poly(num_vars, max_deg, order));
            }
            if !w.is_zero() {
                return w;
            }
        }
    }

    /// A closed 3-form: an exact part d(random 2-form with degree <= 2
    /// coefficients) plus a random constant 3-form, so coefficients are
    /// constant or linear.
    pub fn closed_3form(&mut self, num_vars: usize, order: u32) -> DiffForm {
        assert!(num_vars >= 3);
        let two_form = self.form(num_vars, 2, 2, order);
        let mut h = two_form.de_rham();
        use itertools::Itertools;
        for covs in (0..num_vars).combinations(3) {
            let c = self.coeff();
            if c != 0 {
                h = &h + &DiffForm::term(num_vars, &covs, Poly::from_int(num_vars, c, order));
            }
        }
        h
    }

    /// A multidifferential operator with 1..=3 terms, per-slot derivative
    /// order <= max_op_order, coefficient degree <= max_deg.
    pub fn mdo(
        &mut self,
        num_vars: usize,
        arity: usize,
        max_op_order: u32,
        max_deg: u32,
        order: u32,
    ) -> MultiDiffOp {
        let nterms = self.rng.random_range(1..=3);
        let mut op = MultiDiffOp::zero(num_vars, arity, order);
        for _ in 0..nterms {
            let betas: Vec<Exponents> = (0..arity)
                .map(|_| self.exponents(num_vars, max_op_order))
                .collect();
            let coef = self.poly(num_vars, max_deg, order);
            op = &op
                + &MultiDiffOp::from_terms(num_vars, arity, order, vec![(betas, coef)])
                    .expect("sampled terms are well-formed");
        }
        op
    }

    /// A multivector of the given degree with every coefficient in (h).
    pub fn maximal_ideal_multivector(
        &mut self,
        num_vars: usize,
        degree: usize,
        max_deg: u32,
        order: u32,
    ) -> MultiVector {
        let h_power = self.rng.random_range(1..order.max(2));
        self.multivector(num_vars, degree, max_deg, order)
            .mul_h_power(h_power)
    }

    /// A nonzero rational drawn from the integer coefficient range.
    pub fn rational(&mut self) -> crate::kernel::scalar::Rat {
        rat_int(self.nonzero_coeff())
    }

    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.random_range(lo..=hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinism() {
        let mut a = Sampler::new(42);
        let mut b = Sampler::new(42);
        for _ in 0..10 {
            assert_eq!(a.poly(3, 2, 2), b.poly(3, 2, 2));
            assert_eq!(a.multivector(3, 2, 2, 2), b.multivector(3, 2, 2, 2));
            assert_eq!(a.form(3, 2, 2, 2), b.form(3, 2, 2, 2));
        }
    }

    #[test]
    fn closed_3forms_are_closed() {
        let mut s = Sampler::new(7);
        for _ in 0..20 {
            let h = s.closed_3form(4, 1);
            assert!(h.is_closed());
            if !h.is_zero() {
                assert_eq!(h.homogeneous_degree(), Some(3));
            }
        }
    }

    #[test]
    fn maximal_ideal_samples_vanish_at_h_zero() {
        let mut s = Sampler::new(3);
        for _ in 0..10 {
            let mv = s.maximal_ideal_multivector(3, 2, 1, 3);
            assert!(mv.in_maximal_ideal());
        }
    }
}
