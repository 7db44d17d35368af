//! Dense univariate Laurent polynomials over the rationals.
//!
//! Invariant: `coeffs` has no leading or trailing zeros; the zero polynomial
//! has empty `coeffs` and `shift == 0`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

use super::Rat;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    shift: i64,
    coeffs: Vec<Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { shift: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rat, exp: i64) -> Self {
        Self::from_coeffs(exp, vec![c])
    }

    pub fn from_coeffs(shift: i64, coeffs: Vec<Rat>) -> Self {
        let mut p = LaurentPoly { shift, coeffs };
        p.trim();
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(terms: I) -> Self {
        let terms: Vec<(i64, Rat)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![Rat::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::from_coeffs(lo, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.shift += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.shift = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.shift == 0 && self.coeffs.len() == 1)
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Lowest exponent present (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.shift
    }

    /// Highest exponent present (`shift - 1` for the zero polynomial).
    pub fn high(&self) -> i64 {
        self.shift + self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, e: i64) -> Rat {
        let i = e - self.shift;
        if i < 0 || i >= self.coeffs.len() as i64 {
            Rat::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.shift + i as i64, c))
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.shift.min(o.shift);
        let hi = self.high().max(o.high());
        let mut coeffs = vec![Rat::zero(); (hi - lo + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.shift - lo) as usize + i] += c;
        }
        for (i, c) in o.coeffs.iter().enumerate() {
            coeffs[(o.shift - lo) as usize + i] += c;
        }
        Self::from_coeffs(lo, coeffs)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { shift: self.shift, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(self.shift + o.shift, coeffs)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        LaurentPoly { shift: self.shift, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn shifted(&self, by: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { shift: self.shift + by, coeffs: self.coeffs.clone() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Substitutes `h -> h^k` for nonzero `k`.
    pub fn compose_power(&self, k: i64) -> Self {
        assert!(k != 0);
        Self::from_terms(self.terms().map(|(e, c)| (e * k, c.clone())))
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        if self.is_zero() {
            return Rat::zero();
        }
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        if self.shift >= 0 {
            acc * pow_rat(x, self.shift as u64)
        } else {
            acc / pow_rat(x, (-self.shift) as u64)
        }
    }

    /// Polynomial part stripped of the monomial factor: returns `(shift, p)`
    /// with `self = h^shift * p` and `p(0) != 0`.
    pub fn split_monomial(&self) -> (i64, Self) {
        (self.shift, LaurentPoly { shift: 0, coeffs: self.coeffs.clone() })
    }

    pub fn degree(&self) -> i64 {
        self.high()
    }

    pub fn make_monic(&self) -> (Rat, Self) {
        match self.leading() {
            None => (Rat::one(), Self::zero()),
            Some(l) => {
                let l = l.clone();
                let inv = Rat::one() / &l;
                (l, self.scale(&inv))
            }
        }
    }

    /// Euclidean division of ordinary polynomials (both with shift >= 0).
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        assert!(self.shift >= 0 && d.shift >= 0);
        let mut rem = self.dense_from_zero();
        let dd = d.dense_from_zero();
        let dl = dd.len() - 1;
        if rem.len() < dd.len() {
            return (Self::zero(), self.clone());
        }
        let lead_inv = Rat::one() / &dd[dl];
        let mut quot = vec![Rat::zero(); rem.len() - dl];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dl] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in dd.iter().enumerate() {
                if !dc.is_zero() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dl);
        (Self::from_coeffs(0, quot), Self::from_coeffs(0, rem))
    }

    /// Exact division; `None` when the remainder is nonzero.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (ds, dp) = d.split_monomial();
        let (ss, sp) = self.split_monomial();
        let (q, r) = sp.div_rem(&dp);
        if r.is_zero() {
            Some(q.shifted(ss - ds))
        } else {
            None
        }
    }

    fn dense_from_zero(&self) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.shift as usize];
        v.extend(self.coeffs.iter().cloned());
        v
    }

    /// Monic gcd of ordinary polynomials.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r.make_monic().1;
        }
        x.make_monic().1
    }

    /// Exact `n`-th root when one exists with the normalization that the
    /// lowest coefficient's root is the real principal root.
    pub fn root(&self, n: u32) -> Option<Self> {
        if n == 1 || self.is_zero() {
            return Some(self.clone());
        }
        if self.shift % n as i64 != 0 {
            return None;
        }
        let c0 = rat_root(&self.coeffs[0], n)?;
        let m = self.coeffs.len();
        if (m - 1) % n as usize != 0 {
            return None;
        }
        // Solve r^n = p term by term from the bottom.
        let target = LaurentPoly { shift: 0, coeffs: self.coeffs.clone() };
        let deg = (m - 1) / n as usize;
        let mut r = vec![c0.clone()];
        let nr = Rat::from_integer(BigInt::from(n));
        let denom = &nr * pow_rat(&c0, (n - 1) as u64);
        for k in 1..=deg {
            r.push(Rat::zero());
            let cur = LaurentPoly::from_coeffs(0, r.clone()).pow(n);
            let diff = &target.coeff(k as i64) - &cur.coeff(k as i64);
            r[k] = diff / &denom;
        }
        let cand = LaurentPoly::from_coeffs(0, r);
        if cand.pow(n) == target {
            Some(cand.shifted(self.shift / n as i64))
        } else {
            None
        }
    }
}

pub fn pow_rat(x: &Rat, n: u64) -> Rat {
    num_traits::pow::pow(x.clone(), n as usize)
}

/// Exact rational `n`-th root, negative values allowed for odd `n`.
pub fn rat_root(x: &Rat, n: u32) -> Option<Rat> {
    if n == 1 {
        return Some(x.clone());
    }
    let neg = x.is_negative();
    if neg && n % 2 == 0 {
        return None;
    }
    let a = x.abs();
    let num = a.numer().nth_root(n);
    let den = a.denom().nth_root(n);
    if num.pow(n) != *a.numer() || den.pow(n) != *a.denom() {
        return None;
    }
    let r = Rat::new(num, den);
    Some(if neg { -r } else { r })
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(e, c)| format!("({})h^{}", c, e)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
