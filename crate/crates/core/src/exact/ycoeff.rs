//! Exact rational functions in `h = y^{1/2}`.
//!
//! Invariant: `den` is a monic ordinary polynomial with `den(0) != 0`,
//! coprime to `num`. Powers of `h` always live in `num`'s shift, so the
//! representation is canonical and `==` is value equality.

use num_traits::{One, Zero};
use std::fmt;

use super::laurent::LaurentPoly;
use super::Rat;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct YCoeff {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl YCoeff {
    pub fn zero() -> Self {
        YCoeff { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        YCoeff { num: LaurentPoly::constant(r), den: LaurentPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(n.into()))
    }

    /// `c * h^k`.
    pub fn h_monomial(c: Rat, k: i64) -> Self {
        YCoeff { num: LaurentPoly::monomial(c, k), den: LaurentPoly::one() }
    }

    /// `h^k`.
    pub fn h_pow(k: i64) -> Self {
        Self::h_monomial(Rat::one(), k)
    }

    /// `y^k`, i.e. `h^{2k}`.
    pub fn y_pow(k: i64) -> Self {
        Self::h_pow(2 * k)
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        YCoeff { num: p, den: LaurentPoly::one() }
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let (ds, dp) = den.split_monomial();
        let (lead, dp) = dp.make_monic();
        let num = num.shifted(-ds).scale(&(Rat::one() / lead));
        Self::reduce(num, dp)
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return YCoeff { num, den };
        }
        let (ns, np) = num.split_monomial();
        let g = LaurentPoly::gcd(&np, &den);
        if g.is_one() {
            return YCoeff { num, den };
        }
        let np = np.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        YCoeff { num: np.shifted(ns), den }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = self.num.add(&o.num);
            if self.den.is_one() {
                return YCoeff { num: n, den: LaurentPoly::one() };
            }
            return Self::reduce(n, self.den.clone());
        }
        let g = LaurentPoly::gcd(&self.den, &o.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = o.den.div_exact(&g).unwrap();
        let n = self.num.mul(&b).add(&o.num.mul(&a));
        Self::reduce(n, self.den.mul(&b))
    }

    pub fn neg(&self) -> Self {
        YCoeff { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return YCoeff { num: self.num.mul(&o.num), den: LaurentPoly::one() };
        }
        let (s1, n1) = self.num.split_monomial();
        let (s2, n2) = o.num.split_monomial();
        let g1 = LaurentPoly::gcd(&n1, &o.den);
        let g2 = LaurentPoly::gcd(&n2, &self.den);
        let n1 = n1.div_exact(&g1).unwrap();
        let d2 = o.den.div_exact(&g1).unwrap();
        let n2 = n2.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        YCoeff { num: n1.mul(&n2).shifted(s1 + s2), den: d1.mul(&d2) }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        YCoeff { num: self.num.scale(r), den: self.den.clone() }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::new(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let n = k.unsigned_abs() as u32;
        Some(YCoeff { num: base.num.pow(n), den: base.den.pow(n) })
    }

    /// Exact `n`-th root if the value is a perfect power.
    pub fn root(&self, n: u32) -> Option<Self> {
        let r = self.num.root(n)?;
        let d = self.den.root(n)?;
        Some(Self::new(r, d))
    }

    /// Applies `y -> y^{-1}`, i.e. `h -> h^{-1}`.
    pub fn invert_y(&self) -> Self {
        Self::new(self.num.compose_power(-1), self.den.compose_power(-1))
    }

    /// Substitutes `h -> h^k`.
    pub fn compose_h_power(&self, k: i64) -> Self {
        Self::new(self.num.compose_power(k), self.den.compose_power(k))
    }

    /// Value at a rational `h`, `None` at a pole.
    pub fn eval_h(&self, h: &Rat) -> Option<Rat> {
        if h.is_zero() {
            return self.eval_at_zero();
        }
        let d = self.den.eval(h);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(h) / d)
    }

    /// Value at `h = 0`, `None` when the numerator has negative powers.
    pub fn eval_at_zero(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.num.low() < 0 {
            return None;
        }
        Some(self.num.coeff(0) / self.den.coeff(0))
    }
}

impl fmt::Debug for YCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "[{:?}]", self.num)
        } else {
            write!(f, "[{:?}] / [{:?}]", self.num, self.den)
        }
    }
}

impl fmt::Display for YCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &LaurentPoly| -> String {
            if p.is_zero() {
                return "0".into();
            }
            let parts: Vec<String> = p
                .terms()
                .map(|(e, c)| {
                    let y = if e == 0 {
                        String::new()
                    } else if e % 2 == 0 {
                        format!("y^{}", e / 2)
                    } else {
                        format!("y^({}/2)", e)
                    };
                    if y.is_empty() {
                        format!("{}", c)
                    } else if c.is_one() {
                        y
                    } else if *c == -Rat::one() {
                        format!("-{}", y)
                    } else {
                        format!("{}*{}", c, y)
                    }
                })
                .collect();
            parts.join(" + ").replace("+ -", "- ")
        };
        if self.den.is_one() {
            write!(f, "{}", show(&self.num))
        } else {
            write!(f, "({})/({})", show(&self.num), show(&self.den))
        }
    }
}
