//! Exact scalar arithmetic: rationals, Laurent polynomials in one variable and
//! rational functions in `y^{1/2}`.

mod bipoly;
mod laurent;
mod ycoeff;

pub use bipoly::BiPoly;
pub use laurent::{pow_rat, rat_root, LaurentPoly};
pub use ycoeff::YCoeff;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

pub type Rat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rat::new(p, q))
            }
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Coefficient ring used by truncated series and the localization engines.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn from_rat(r: &Rat) -> Self;
    fn scale(&self, r: &Rat) -> Self;
    /// Exact `n`-th root, `None` when the value is not a perfect power.
    fn root(&self, n: u32) -> Option<Self>;
    /// Numerator and denominator as `(h-exponent, coefficient)` lists.
    fn to_parts(&self) -> (Vec<(i64, Rat)>, Vec<(i64, Rat)>);
    fn from_parts(num: &[(i64, Rat)], den: &[(i64, Rat)]) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add_assign(&mut self, o: &Self) {
        *self = self.add(o);
    }

    fn pow_i(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        let mut b = base;
        let mut n = k.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b);
            }
        }
        Some(acc)
    }
}

impl Coeff for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn scale(&self, r: &Rat) -> Self {
        self * r
    }
    fn root(&self, n: u32) -> Option<Self> {
        rat_root(self, n)
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn to_parts(&self) -> (Vec<(i64, Rat)>, Vec<(i64, Rat)>) {
        (vec![(0, self.clone())], vec![(0, <Rat as One>::one())])
    }
    fn from_parts(num: &[(i64, Rat)], den: &[(i64, Rat)]) -> Option<Self> {
        let n = LaurentPoly::from_terms(num.iter().cloned());
        let d = LaurentPoly::from_terms(den.iter().cloned());
        if !n.is_constant() || !d.is_constant() || d.is_zero() {
            return None;
        }
        Some(n.coeff(0) / d.coeff(0))
    }
}

impl Coeff for YCoeff {
    fn zero() -> Self {
        YCoeff::zero()
    }
    fn one() -> Self {
        YCoeff::one()
    }
    fn is_zero(&self) -> bool {
        YCoeff::is_zero(self)
    }
    fn is_one(&self) -> bool {
        YCoeff::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        YCoeff::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        YCoeff::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        YCoeff::mul(self, o)
    }
    fn neg(&self) -> Self {
        YCoeff::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        YCoeff::inv(self)
    }
    fn from_rat(r: &Rat) -> Self {
        YCoeff::from_rat(r.clone())
    }
    fn scale(&self, r: &Rat) -> Self {
        YCoeff::scale(self, r)
    }
    fn root(&self, n: u32) -> Option<Self> {
        YCoeff::root(self, n)
    }
    fn to_parts(&self) -> (Vec<(i64, Rat)>, Vec<(i64, Rat)>) {
        let f = |p: &LaurentPoly| p.terms().map(|(e, c)| (e, c.clone())).collect();
        (f(self.numerator()), f(self.denominator()))
    }
    fn from_parts(num: &[(i64, Rat)], den: &[(i64, Rat)]) -> Option<Self> {
        let n = LaurentPoly::from_terms(num.iter().cloned());
        let d = LaurentPoly::from_terms(den.iter().cloned());
        if d.is_zero() {
            return None;
        }
        Some(YCoeff::new(n, d))
    }
}

/// Polynomials in an auxiliary variable, used as a denominator-free ring
/// inside hot loops before mapping into [`YCoeff`].
impl Coeff for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn is_one(&self) -> bool {
        LaurentPoly::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        LaurentPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        LaurentPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        LaurentPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        LaurentPoly::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        if self.is_monomial() {
            let (e, c) = self.terms().next().map(|(e, c)| (e, c.clone()))?;
            Some(LaurentPoly::monomial(c.recip(), -e))
        } else {
            None
        }
    }
    fn from_rat(r: &Rat) -> Self {
        LaurentPoly::constant(r.clone())
    }
    fn scale(&self, r: &Rat) -> Self {
        LaurentPoly::scale(self, r)
    }
    fn root(&self, n: u32) -> Option<Self> {
        LaurentPoly::root(self, n)
    }
    fn to_parts(&self) -> (Vec<(i64, Rat)>, Vec<(i64, Rat)>) {
        (self.terms().map(|(e, c)| (e, c.clone())).collect(), vec![(0, <Rat as One>::one())])
    }
    fn from_parts(num: &[(i64, Rat)], den: &[(i64, Rat)]) -> Option<Self> {
        let d = LaurentPoly::from_terms(den.iter().cloned());
        if !d.is_one() {
            return None;
        }
        Some(LaurentPoly::from_terms(num.iter().cloned()))
    }
}
