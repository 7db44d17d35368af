//! Polynomials in two commuting variables with rational coefficients.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::Rat;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rat, a: u32, b: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(a, b, c);
        p
    }

    /// `(c0 + c1 v + c2 v^2 + ...)` in the first (`slot = 0`) or second variable.
    pub fn univariate(coeffs: &[Rat], slot: usize) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            let i = i as u32;
            if slot == 0 {
                p.add_term(i, 0, c.clone());
            } else {
                p.add_term(0, i, c.clone());
            }
        }
        p
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((a, b)).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: u32, b: u32) -> Rat {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_assign(&mut self, o: &Self) {
        for ((a, b), c) in &o.terms {
            self.add_term(*a, *b, c.clone());
        }
    }

    pub fn add_scaled(&mut self, o: &Self, r: &Rat) {
        if r.is_zero() {
            return;
        }
        for ((a, b), c) in &o.terms {
            self.add_term(*a, *b, c * r);
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        let mut p = Self::zero();
        p.add_scaled(self, r);
        p
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero();
        for ((a, b), c) in &self.terms {
            for ((x, y), d) in &o.terms {
                p.add_term(a + x, b + y, c * d);
            }
        }
        p
    }

    /// Product keeping only terms of total degree `<= deg`.
    pub fn mul_trunc(&self, o: &Self, deg: u32) -> Self {
        let mut p = Self::zero();
        for ((a, b), c) in &self.terms {
            for ((x, y), d) in &o.terms {
                if a + b + x + y <= deg {
                    p.add_term(a + x, b + y, c * d);
                }
            }
        }
        p
    }

    /// Part of total degree exactly `deg`.
    pub fn homogeneous(&self, deg: u32) -> Self {
        BiPoly { terms: self.terms.iter().filter(|((a, b), _)| a + b == deg).map(|(k, c)| (*k, c.clone())).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn product_and_truncation() {
        let mut p = BiPoly::univariate(&[int(1), int(1)], 0);
        p.add_assign(&BiPoly::monomial(int(1), 0, 1));
        let sq = p.mul(&p);
        assert_eq!(sq.coeff(1, 1), int(2));
        assert_eq!(sq.coeff(0, 0), int(1));
        let t = p.mul_trunc(&p, 1);
        assert!(t.homogeneous(2).is_zero());
        assert_eq!(t.coeff(1, 0), int(2));
    }
}
