//! Virtual characters of `T x C*`: finite sums `sum c * t1^a t2^b g^k`.

use std::collections::BTreeMap;
use std::fmt;

pub type Weight = [i64; 3];

#[derive(Clone, PartialEq, Eq, Default)]
pub struct EquivChar {
    terms: BTreeMap<Weight, i64>,
}

impl EquivChar {
    pub fn zero() -> Self {
        EquivChar::default()
    }

    pub fn one() -> Self {
        Self::monomial([0, 0, 0], 1)
    }

    pub fn monomial(w: Weight, c: i64) -> Self {
        let mut s = Self::zero();
        s.add_term(w, c);
        s
    }

    /// `t1^a t2^b` with trivial grading.
    pub fn torus(a: i64, b: i64) -> Self {
        Self::monomial([a, b, 0], 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (Weight, i64)>>(it: I) -> Self {
        let mut s = Self::zero();
        for (w, c) in it {
            s.add_term(w, c);
        }
        s
    }

    pub fn add_term(&mut self, w: Weight, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(w).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &i64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Weight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn rank(&self) -> i64 {
        self.terms.values().sum()
    }

    /// True when every multiplicity is nonnegative (a genuine representation).
    pub fn is_genuine(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut s = self.clone();
        for (w, c) in &o.terms {
            s.add_term(*w, *c);
        }
        s
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        EquivChar { terms: self.terms.iter().map(|(w, c)| (*w, c * k)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut s = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                s.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], ca * cb);
            }
        }
        s
    }

    /// Multiplies by the monomial `t^w`.
    pub fn twist(&self, w: Weight) -> Self {
        EquivChar { terms: self.terms.iter().map(|(a, c)| ([a[0] + w[0], a[1] + w[1], a[2] + w[2]], *c)).collect() }
    }

    pub fn dual(&self) -> Self {
        EquivChar { terms: self.terms.iter().map(|(a, c)| ([-a[0], -a[1], -a[2]], *c)).collect() }
    }

    /// Part with grading exponent `k`.
    pub fn graded_part(&self, k: i64) -> Self {
        EquivChar { terms: self.terms.iter().filter(|(w, _)| w[2] == k).map(|(w, c)| (*w, *c)).collect() }
    }

    /// `self / (1 - t^w)` when the division is exact.
    pub fn div_one_minus(&self, w: Weight) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dot = |m: &Weight| m[0] * w[0] + m[1] * w[1] + m[2] * w[2];
        let ww = dot(&w);
        assert!(ww > 0, "division by 1 - 1");
        let maxphi = self.terms.keys().map(dot).max().unwrap();
        // Q = P + t^w Q, resolved in increasing order of <m, w>.
        let mut cands: Vec<Weight> = Vec::new();
        for p in self.terms.keys() {
            let mut m = *p;
            while dot(&m) <= maxphi {
                cands.push(m);
                m = [m[0] + w[0], m[1] + w[1], m[2] + w[2]];
            }
        }
        cands.sort_by_key(|m| (dot(m), *m));
        cands.dedup();
        let mut q: BTreeMap<Weight, i64> = BTreeMap::new();
        for m in cands {
            let prev = [m[0] - w[0], m[1] - w[1], m[2] - w[2]];
            let v = self.coeff(&m) + q.get(&prev).copied().unwrap_or(0);
            if v != 0 {
                q.insert(m, v);
            }
        }
        let q = EquivChar { terms: q };
        let check = q.sub(&q.twist(w));
        if check == *self {
            Some(q)
        } else {
            None
        }
    }
}

impl fmt::Debug for EquivChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{}*t^({},{};{})", c, w[0], w[1], w[2])).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
