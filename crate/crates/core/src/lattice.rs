//! Numerical surface data: the lattice `H^2(S, Z)`, the canonical class,
//! `chi(O_S)` and a table of Seiberg-Witten classes.

use serde::Deserialize;

use crate::error::{Error, Result};

pub const K3_TOML: &str = include_str!("../data/lattices/k3.toml");
pub const K3_BLOWUP_TOML: &str = include_str!("../data/lattices/k3-blowup.toml");
pub const GENERAL_TYPE_TOML: &str = include_str!("../data/lattices/general-type-k1-chi2.toml");
pub const QUINTIC_TOML: &str = include_str!("../data/lattices/quintic.toml");

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum ClassSpec {
    Named(String),
    Vector(Vec<i64>),
}

#[derive(Debug, Deserialize)]
struct SwSpec {
    class: ClassSpec,
    value: i64,
}

#[derive(Debug, Deserialize)]
struct LatticeSpec {
    name: String,
    chi_o: i64,
    #[serde(default)]
    blocks: Vec<String>,
    #[serde(default)]
    gram: Vec<Vec<i64>>,
    canonical: ClassSpec,
    #[serde(default)]
    polarization: Option<Vec<i64>>,
    #[serde(default)]
    sw: Vec<SwSpec>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceLattice {
    pub name: String,
    pub chi_o: i64,
    pub gram: Vec<Vec<i64>>,
    pub canonical: Vec<i64>,
    pub polarization: Option<Vec<i64>>,
    /// Seiberg-Witten classes in the convention `SW(a) = SW'(2a - K)`.
    pub sw: Vec<(Vec<i64>, i64)>,
}

fn e8_negative() -> Vec<Vec<i64>> {
    // Cartan matrix of E8, negated.
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)];
    let mut m = vec![vec![0; 8]; 8];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = -2;
    }
    for (a, b) in edges {
        m[a][b] = 1;
        m[b][a] = 1;
    }
    m
}

fn block(name: &str) -> Result<Vec<Vec<i64>>> {
    match name {
        "U" => Ok(vec![vec![0, 1], vec![1, 0]]),
        "E8(-1)" => Ok(e8_negative()),
        s if s.starts_with('<') && s.ends_with('>') => {
            let v: i64 = s[1..s.len() - 1].parse().map_err(|_| Error::Config(format!("bad block {}", s)))?;
            Ok(vec![vec![v]])
        }
        s => Err(Error::Config(format!("unknown lattice block {}", s))),
    }
}

fn direct_sum(blocks: &[Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut g = vec![vec![0; n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                g[off + i][off + j] = *v;
            }
        }
        off += b.len();
    }
    g
}

impl SurfaceLattice {
    pub fn from_toml(src: &str) -> Result<Self> {
        let spec: LatticeSpec = toml::from_str(src).map_err(|e| Error::Config(format!("lattice: {}", e)))?;
        let gram = if !spec.gram.is_empty() {
            if !spec.blocks.is_empty() {
                return Err(Error::Config("give either gram or blocks, not both".into()));
            }
            spec.gram
        } else {
            let bs = spec.blocks.iter().map(|b| block(b)).collect::<Result<Vec<_>>>()?;
            direct_sum(&bs)
        };
        let n = gram.len();
        if n == 0 || gram.iter().any(|r| r.len() != n) {
            return Err(Error::Config("Gram matrix must be square and nonempty".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Config("Gram matrix is not symmetric".into()));
                }
            }
        }
        let resolve = |c: &ClassSpec, k: Option<&Vec<i64>>| -> Result<Vec<i64>> {
            let v = match c {
                ClassSpec::Named(s) if s == "zero" => vec![0; n],
                ClassSpec::Named(s) if s == "canonical" => {
                    k.cloned().ok_or_else(|| Error::Config("canonical class refers to itself".into()))?
                }
                ClassSpec::Named(s) => return Err(Error::Config(format!("unknown class name {}", s))),
                ClassSpec::Vector(v) => v.clone(),
            };
            if v.len() != n {
                return Err(Error::Config(format!("class of length {} in a rank {} lattice", v.len(), n)));
            }
            Ok(v)
        };
        let canonical = resolve(&spec.canonical, None)?;
        let mut sw = Vec::new();
        for s in &spec.sw {
            sw.push((resolve(&s.class, Some(&canonical))?, s.value));
        }
        if let Some(p) = &spec.polarization {
            if p.len() != n {
                return Err(Error::Config("polarization length".into()));
            }
        }
        let lat = SurfaceLattice { name: spec.name, chi_o: spec.chi_o, gram, canonical, polarization: spec.polarization, sw };
        // Wu formula: K is characteristic when the lattice is the full H^2.
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            if (lat.dot(&e, &e) - lat.dot(&e, &lat.canonical)).rem_euclid(2) != 0 {
                return Err(Error::Config(format!("canonical class is not characteristic ({})", lat.name)));
            }
        }
        Ok(lat)
    }

    /// Shipped lattices by short name.
    pub fn builtin(name: &str) -> Result<Self> {
        let src = match name {
            "k3" => K3_TOML,
            "k3-blowup" => K3_BLOWUP_TOML,
            "general-type-k1-chi2" => GENERAL_TYPE_TOML,
            "quintic" => QUINTIC_TOML,
            _ => return Err(Error::Config(format!("unknown lattice {}", name))),
        };
        Self::from_toml(src)
    }

    /// A shipped name or a path to a TOML file.
    pub fn load(name_or_path: &str) -> Result<Self> {
        let stem = name_or_path.trim_end_matches(".toml");
        let short = std::path::Path::new(stem).file_name().and_then(|s| s.to_str()).unwrap_or(stem);
        if !std::path::Path::new(name_or_path).exists() {
            return Self::builtin(short);
        }
        Self::from_toml(&std::fs::read_to_string(name_or_path)?)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn dot(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                s += x * self.gram[i][j] * y;
            }
        }
        s
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }

    pub fn k2(&self) -> i64 {
        self.dot(&self.canonical, &self.canonical)
    }

    /// Number of `g` with `a - b = 2g`: one when every coordinate of `a - b`
    /// is even, zero otherwise.
    pub fn delta(&self, a: &[i64], b: &[i64]) -> i64 {
        if a.iter().zip(b).all(|(x, y)| (x - y).rem_euclid(2) == 0) {
            1
        } else {
            0
        }
    }

    pub fn check_class(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::Config(format!("class has {} entries, lattice {} has rank {}", v.len(), self.name, self.rank())));
        }
        Ok(())
    }

    /// `vd = 4 c2 - c1^2 - 3 chi`, solved for `c2`; `None` when not integral.
    pub fn c2_for(&self, c1: &[i64], vd: i64) -> Option<i64> {
        let t = vd + self.dot(c1, c1) + 3 * self.chi_o;
        if t.rem_euclid(4) == 0 {
            Some(t / 4)
        } else {
            None
        }
    }

    pub fn sw_value(&self, a: &[i64]) -> i64 {
        self.sw.iter().filter(|(c, _)| c == a).map(|(_, v)| v).sum()
    }

    /// Replaces the SW table by `{0: 1, K: (-1)^chi}`.
    pub fn with_general_type_sw(mut self) -> Self {
        let sign = if self.chi_o % 2 == 0 { 1 } else { -1 };
        self.sw = vec![(self.zero(), 1), (self.canonical.clone(), sign)];
        self
    }

    /// The blow-up at one point: `H^2` gains `E` with `E^2 = -1`, `K` becomes
    /// `pi^* K + E`, and each class `a` yields `pi^* a` and `pi^* a + E`.
    pub fn blow_up(&self) -> Self {
        let n = self.rank();
        let mut gram: Vec<Vec<i64>> = self.gram.iter().map(|r| r.iter().copied().chain([0]).collect()).collect();
        let mut last = vec![0; n + 1];
        last[n] = -1;
        gram.push(last);
        let lift = |v: &[i64], e: i64| v.iter().copied().chain([e]).collect::<Vec<_>>();
        let mut sw = Vec::new();
        for (a, v) in &self.sw {
            sw.push((lift(a, 0), *v));
            sw.push((lift(a, 1), *v));
        }
        SurfaceLattice {
            name: format!("{}-blowup", self.name),
            chi_o: self.chi_o,
            gram,
            canonical: lift(&self.canonical, 1),
            polarization: self.polarization.as_ref().map(|p| lift(p, 0)),
            sw,
        }
    }

    /// Lattice whose canonical divisor is a disjoint union of curves `C_i`
    /// with given `h^0(N_{C_i})`. The SW classes are the partial sums `C_I`
    /// with value `prod_{i in I} (-1)^{h^0(N_{C_i})}`, summed over coinciding
    /// classes.
    pub fn disconnected_canonical(
        name: &str,
        chi_o: i64,
        gram: Vec<Vec<i64>>,
        curves: &[(Vec<i64>, i64)],
    ) -> Result<Self> {
        let n = gram.len();
        let mut lat = SurfaceLattice { name: name.into(), chi_o, gram, canonical: vec![0; n], polarization: None, sw: vec![] };
        for (c, _) in curves {
            lat.check_class(c)?;
        }
        for (i, (a, _)) in curves.iter().enumerate() {
            for (b, _) in curves.iter().skip(i + 1) {
                if lat.dot(a, b) != 0 {
                    return Err(Error::Config("canonical components must be disjoint".into()));
                }
            }
        }
        lat.canonical = curves.iter().fold(vec![0; n], |acc, (c, _)| acc.iter().zip(c).map(|(x, y)| x + y).collect());
        let mut table: Vec<(Vec<i64>, i64)> = Vec::new();
        for mask in 0u64..(1 << curves.len()) {
            let mut cls = vec![0; n];
            let mut val = 1;
            for (i, (c, h0)) in curves.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    cls.iter_mut().zip(c).for_each(|(x, y)| *x += y);
                    if h0 % 2 != 0 {
                        val = -val;
                    }
                }
            }
            match table.iter_mut().find(|(c, _)| *c == cls) {
                Some(e) => e.1 += val,
                None => table.push((cls, val)),
            }
        }
        lat.sw = table;
        Ok(lat)
    }
}

/// Parses `"1,0,-2"` (or `"[1,0,-2]"`) into a class vector. A lone `0`
/// expands to the zero class of the given rank.
pub fn parse_class(s: &str, rank: usize) -> Result<Vec<i64>> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    let v: Vec<i64> = t
        .split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad class entry {:?}", x))))
        .collect::<Result<_>>()?;
    if v == [0] && rank != 1 {
        return Ok(vec![0; rank]);
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_lattices() {
        let k3 = SurfaceLattice::builtin("k3").unwrap();
        assert_eq!(k3.rank(), 22);
        assert_eq!(k3.k2(), 0);
        let b = SurfaceLattice::builtin("k3-blowup").unwrap();
        assert_eq!(b.k2(), -1);
        let g = SurfaceLattice::builtin("general-type-k1-chi2").unwrap();
        assert_eq!(g.k2(), 1);
        assert_eq!(g.sw.len(), 2);
        let q = SurfaceLattice::builtin("quintic").unwrap();
        assert_eq!(q.k2(), 5);
    }

    #[test]
    fn delta_parity() {
        let l = SurfaceLattice::from_toml("name='t'\nchi_o=1\nblocks=['U']\ncanonical='zero'\n").unwrap();
        assert_eq!(l.delta(&[2, 4], &[0, 0]), 1);
        assert_eq!(l.delta(&[1, 2], &[0, 0]), 0);
    }
}
