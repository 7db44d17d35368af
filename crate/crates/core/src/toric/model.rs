//! Toric surface models loaded from TOML.

use serde::Deserialize;
use std::collections::HashMap;
use std::sync::Mutex;

use super::character::EquivChar;
use crate::error::{Error, Result};

pub const P2_TOML: &str = include_str!("../../data/surfaces/p2.toml");
pub const P1XP1_TOML: &str = include_str!("../../data/surfaces/p1xp1.toml");

#[derive(Debug, Clone, Deserialize)]
struct ChartSpec {
    coords: [[i64; 2]; 2],
}

#[derive(Debug, Clone, Deserialize)]
struct LinSpec {
    divisor: String,
    charts: Vec<[i64; 2]>,
}

#[derive(Debug, Clone, Deserialize)]
struct ModelSpec {
    name: String,
    chi_o: i64,
    basis: Vec<String>,
    intersection: Vec<Vec<i64>>,
    canonical: Vec<i64>,
    charts: Vec<ChartSpec>,
    linearization: Vec<LinSpec>,
}

/// Local chart at a torus fixed point: characters of the two coordinate
/// functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chart {
    pub u: [i64; 2],
    pub v: [i64; 2],
}

/// A divisor class together with a torus linearization, given by the
/// character of its local generator on each chart.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EquivDivisor {
    pub class: Vec<i64>,
    pub lin: Vec<[i64; 2]>,
}

impl EquivDivisor {
    pub fn add(&self, o: &Self) -> Self {
        EquivDivisor {
            class: self.class.iter().zip(&o.class).map(|(a, b)| a + b).collect(),
            lin: self.lin.iter().zip(&o.lin).map(|(a, b)| [a[0] + b[0], a[1] + b[1]]).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        EquivDivisor {
            class: self.class.iter().map(|a| a * k).collect(),
            lin: self.lin.iter().map(|a| [a[0] * k, a[1] * k]).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
}

#[derive(Debug)]
pub struct ToricSurfaceModel {
    pub name: String,
    pub chi_o: i64,
    pub basis: Vec<String>,
    pub intersection: Vec<Vec<i64>>,
    pub canonical_class: Vec<i64>,
    pub charts: Vec<Chart>,
    basis_lin: Vec<Vec<[i64; 2]>>,
    canonical_lin: Vec<[i64; 2]>,
    rgamma_cache: Mutex<HashMap<Vec<[i64; 2]>, EquivChar>>,
}

impl ToricSurfaceModel {
    pub fn from_toml(src: &str) -> Result<Self> {
        let spec: ModelSpec = toml::from_str(src).map_err(|e| Error::Config(format!("surface model: {}", e)))?;
        let nb = spec.basis.len();
        let nc = spec.charts.len();
        if spec.intersection.len() != nb || spec.intersection.iter().any(|r| r.len() != nb) {
            return Err(Error::Config("intersection matrix shape".into()));
        }
        if spec.canonical.len() != nb {
            return Err(Error::Config("canonical class length".into()));
        }
        let charts: Vec<Chart> = spec.charts.iter().map(|c| Chart { u: c.coords[0], v: c.coords[1] }).collect();
        for (i, c) in charts.iter().enumerate() {
            let det = c.u[0] * c.v[1] - c.u[1] * c.v[0];
            if det.abs() != 1 {
                return Err(Error::Config(format!("chart {} is not smooth", i)));
            }
        }
        let mut basis_lin = Vec::new();
        for b in &spec.basis {
            let l = spec
                .linearization
                .iter()
                .find(|l| &l.divisor == b)
                .ok_or_else(|| Error::Config(format!("missing linearization for {}", b)))?;
            if l.charts.len() != nc {
                return Err(Error::Config(format!("linearization of {} has wrong chart count", b)));
            }
            basis_lin.push(l.charts.clone());
        }
        // Canonical bundle: local generator du ^ dv.
        let canonical_lin = charts.iter().map(|c| [c.u[0] + c.v[0], c.u[1] + c.v[1]]).collect();
        let m = ToricSurfaceModel {
            name: spec.name,
            chi_o: spec.chi_o,
            basis: spec.basis,
            intersection: spec.intersection,
            canonical_class: spec.canonical,
            charts,
            basis_lin,
            canonical_lin,
            rgamma_cache: Mutex::new(HashMap::new()),
        };
        m.validate()?;
        Ok(m)
    }

    pub fn p2() -> Self {
        Self::from_toml(P2_TOML).expect("shipped model")
    }

    pub fn p1xp1() -> Self {
        Self::from_toml(P1XP1_TOML).expect("shipped model")
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "p2" => Ok(Self::p2()),
            "p1xp1" => Ok(Self::p1xp1()),
            other => Err(Error::Config(format!("unknown surface {}", other))),
        }
    }

    /// Checks the Riemann-Roch formula on a few classes.
    fn validate(&self) -> Result<()> {
        let nb = self.basis.len();
        let mut probes = vec![vec![0; nb]];
        for i in 0..nb {
            let mut e = vec![0; nb];
            e[i] = 1;
            probes.push(e.clone());
            e[i] = -2;
            probes.push(e);
        }
        let k = self.canonical();
        for p in probes {
            let d = self.divisor(&p);
            let rr = (self.dot(&d.class, &d.class) - self.dot(&d.class, &k.class)) / 2 + self.chi_o;
            let ch = self.rgamma(&d)?;
            if ch.rank() != rr {
                return Err(Error::Config(format!("model {} fails Riemann-Roch on {:?}", self.name, p)));
            }
        }
        let kk = self.rgamma(&k)?;
        if kk != self.rgamma(&self.trivial())?.dual() {
            return Err(Error::Config("canonical linearization inconsistent".into()));
        }
        Ok(())
    }

    pub fn num_charts(&self) -> usize {
        self.charts.len()
    }

    pub fn dot(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..a.len() {
            for j in 0..b.len() {
                s += a[i] * self.intersection[i][j] * b[j];
            }
        }
        s
    }

    /// Divisor of the given class with the linearization induced from the basis.
    pub fn divisor(&self, class: &[i64]) -> EquivDivisor {
        assert_eq!(class.len(), self.basis.len());
        let mut lin = vec![[0i64; 2]; self.charts.len()];
        for (i, &c) in class.iter().enumerate() {
            for (j, l) in self.basis_lin[i].iter().enumerate() {
                lin[j][0] += c * l[0];
                lin[j][1] += c * l[1];
            }
        }
        EquivDivisor { class: class.to_vec(), lin }
    }

    pub fn trivial(&self) -> EquivDivisor {
        self.divisor(&vec![0; self.basis.len()])
    }

    /// Canonical divisor with its natural linearization.
    pub fn canonical(&self) -> EquivDivisor {
        EquivDivisor { class: self.canonical_class.clone(), lin: self.canonical_lin.clone() }
    }

    /// Character of `RGamma(S, O(D))` by summing the local contributions
    /// `t^{lin} / ((1 - t^u)(1 - t^v))` over fixed points.
    pub fn rgamma(&self, d: &EquivDivisor) -> Result<EquivChar> {
        if let Some(c) = self.rgamma_cache.lock().unwrap().get(&d.lin) {
            return Ok(c.clone());
        }
        let one_minus = |w: [i64; 2]| EquivChar::one().sub(&EquivChar::torus(w[0], w[1]));
        let mut num = EquivChar::zero();
        for (s, _) in self.charts.iter().enumerate() {
            let mut term = EquivChar::torus(d.lin[s][0], d.lin[s][1]);
            for (t, ct) in self.charts.iter().enumerate() {
                if t != s {
                    term = term.mul(&one_minus(ct.u)).mul(&one_minus(ct.v));
                }
            }
            num = num.add(&term);
        }
        for c in &self.charts {
            for w in [c.u, c.v] {
                num = num
                    .div_one_minus([w[0], w[1], 0])
                    .ok_or_else(|| Error::Consistency("fixed-point sum is not a Laurent polynomial".into()))?;
            }
        }
        self.rgamma_cache.lock().unwrap().insert(d.lin.clone(), num.clone());
        Ok(num)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sections_of_hyperplane() {
        let m = ToricSurfaceModel::p2();
        let h = m.rgamma(&m.divisor(&[1])).unwrap();
        assert_eq!(h, EquivChar::from_terms([([0, 0, 0], 1), ([1, 0, 0], 1), ([0, 1, 0], 1)]));
        let k = m.rgamma(&m.canonical()).unwrap();
        // H^2(K) is one-dimensional with trivial weight.
        assert_eq!(k, EquivChar::one());
    }

    #[test]
    fn riemann_roch_p1xp1() {
        let m = ToricSurfaceModel::p1xp1();
        for a in -3..4 {
            for b in -3..4 {
                let d = m.divisor(&[a, b]);
                assert_eq!(m.rgamma(&d).unwrap().rank(), (a + 1) * (b + 1));
            }
        }
    }
}
