//! One line per acceptance criterion; exits nonzero when any fails.

use std::process::ExitCode;
use std::time::Instant;

use verlinde_core::checks::{self, Engine, Outcome, Target};
use verlinde_core::closed::{self, YSeries};
use verlinde_core::exact::{int, rat, YCoeff};
use verlinde_core::instanton::{self, ChiYGenus, Genus, HolomorphicGenus, InstantonRequest, InstantonTuple};
use verlinde_core::lattice::SurfaceLattice;
use verlinde_core::localize::EpsSpec;
use verlinde_core::monopole::{self, MonopoleRequest, MonopoleTuple};
use verlinde_core::qseries::invert_y;
use verlinde_core::toric::fixed::{local_ext_pair, taylor_ext_pair};
use verlinde_core::toric::{fixed_points, partitions, ToricSurfaceModel};
use verlinde_core::universal::UniversalSeries;
use verlinde_core::Result;

fn lat(name: &str) -> Result<SurfaceLattice> {
    SurfaceLattice::builtin(name)
}

fn unit(rank: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; rank];
    v[i] = 1;
    v
}

fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

/// `(L, c1)` pairs: trivial, odd, and `L = K`.
fn samples(l: &SurfaceLattice) -> Vec<(Vec<i64>, Vec<i64>)> {
    let n = l.rank();
    vec![(l.zero(), l.zero()), (unit(n, 0), unit(n, n.min(2) - 1)), (l.canonical.clone(), l.zero())]
}

fn all(outcomes: &[Outcome]) -> bool {
    outcomes.iter().all(|o| o.passed())
}

fn first_failure(outcomes: &[Outcome]) -> String {
    outcomes.iter().find(|o| !o.passed()).map(|o| o.to_string()).unwrap_or_default()
}

struct Ctx {
    b3: UniversalSeries<YCoeff>,
}

fn localization_matches_closed_c(cx: &Ctx) -> Result<(bool, String)> {
    let cs = monopole::c_from_b(&cx.b3)?;
    let closed = closed::closed_c(3)?;
    let ok = cs.iter().zip(&closed).all(|(a, b)| (0..3).all(|k| a.coeff1(k) == b.coeff1(k)));
    Ok((ok, "C1..C6 from seven localized tuples mod q^3".into()))
}

fn rank_two_diagonal() -> Result<(bool, String)> {
    let o = checks::thm2(24)?;
    Ok((all(&o), "K3 diagonal gives C1, C3 mod q^24".into()))
}

fn solve_and_hold_out<G: Genus>(g: &G) -> Result<bool> {
    let req = InstantonRequest { order: 2, s_window: 4, seed: 3 };
    let (u, zs) = instanton::solve_universal_a(g, &req)?;
    let rebuilt = u.vectors.iter().zip(&zs).all(|(v, z)| u.eval_at(v).map(|s| &s == z).unwrap_or(false));
    let p2 = ToricSurfaceModel::p2();
    let t = instanton::held_out_tuple();
    let direct = instanton::z_inst(&p2, &t, g, &req)?;
    Ok(rebuilt && direct == u.eval_at(&instanton::chern_vector(&p2, &t))?)
}

fn instanton_universality() -> Result<(bool, String)> {
    let ok = solve_and_hold_out(&HolomorphicGenus)? && solve_and_hold_out(&ChiYGenus)?;
    Ok((ok, "11 tuples mod q^2 rebuild inputs and predict (P2, O(1), O(1), O(3))".into()))
}

fn k3_conj1(e: &Engine) -> Result<(bool, String)> {
    let k3 = lat("k3")?;
    let c1 = unit(22, 0);
    let mut l = k3.zero();
    l[0] = 1;
    l[1] = 1;
    let mut out = Vec::new();
    for l in [k3.zero(), l] {
        let t = Target { lattice: k3.clone(), l, c1: c1.clone(), max_vd: 6, strong_form: true };
        out.extend(checks::conj1(&t, e)?);
    }
    let vals: Vec<String> = out.iter().map(|o| o.detail.clone()).collect();
    Ok((all(&out) && out.len() == 4, format!("K3 strong form, L^2 in {{0, 2}}, vd in {{2, 6}}: {}", vals.join(", "))))
}

fn degenerations() -> Result<(bool, String)> {
    let mut out = Vec::new();
    for name in ["k3", "k3-blowup", "general-type-k1-chi2"] {
        let s = lat(name)?;
        for (l, c1) in samples(&s) {
            out.push(checks::degeneration(&s, &l, &c1, 20)?);
        }
    }
    Ok((all(&out), format!("x -> x y^(1/2), y = 0 on K3, blown-up K3, general type mod x^20 {}", first_failure(&out))))
}

fn specialization() -> Result<(bool, String)> {
    let q = ToricSurfaceModel::p1xp1();
    let t = InstantonTuple::new("P1xP1", &[0, 1], &[0, 1], &[0, 2]);
    let req = InstantonRequest { order: 3, s_window: 6, seed: 0 };
    let a = instanton::z_inst_with(&q, &t, &ChiYGenus, &req, &EpsSpec::new(int(2), rat(-1, 3)))?;
    let b = instanton::z_inst_with(&q, &t, &ChiYGenus, &req, &EpsSpec::draw(5, 0))?;
    let p2 = ToricSurfaceModel::p2();
    let mt = MonopoleTuple::new("P2", &[-3], &[-6]);
    let mreq = MonopoleRequest { order: 3, seed: 0 };
    let c = monopole::z_mon_with(&p2, &mt, &mreq, &EpsSpec::new(int(1), int(3)))?;
    let d = monopole::z_mon_with(&p2, &mt, &mreq, &EpsSpec::draw(99, 0))?;
    Ok((a == b && c == d, "poles in eps cancel; two specializations agree for both engines".into()))
}

fn y_symmetry(cx: &Ctx) -> Result<(bool, String)> {
    let bs = monopole::b_series(&cx.b3)?;
    let mut ok = true;
    for name in ["k3", "k3-blowup", "general-type-k1-chi2", "quintic"] {
        let s = lat(name)?;
        for (l, c1) in samples(&s) {
            let f = |l: &[i64]| closed::conj2_series(&s, l, &c1, 14);
            ok &= invert_y(&f(&l)?) == f(&neg(&l))?;
            let g = |l: &[i64]| closed::conj3_series(&s, l, &c1, 14);
            ok &= invert_y(&g(&l)?) == g(&neg(&l))?;
            let m = |l: &[i64]| monopole::lemma_c_series(&bs, &s, l, &c1, 6);
            ok &= invert_y(&m(&l)?) == m(&neg(&l))?;
        }
        let z = s.zero();
        let plain: YSeries = closed::conj2_series(&s, &z, &z, 14)?;
        ok &= invert_y(&plain) == plain;
    }
    Ok((ok, "F(L)(1/y) = F(-L)(y) for chi_y and monopole series, plain at L = O".into()))
}

fn ext_and_nested_class() -> Result<(bool, String)> {
    let mut ok = true;
    for m in [ToricSurfaceModel::p2(), ToricSurfaceModel::p1xp1()] {
        for chart in &m.charts {
            for a in 0..=3 {
                for b in 0..=3 {
                    for z in partitions(a) {
                        for w in partitions(b) {
                            ok &= local_ext_pair(chart, &z, &w) == taylor_ext_pair(chart, &z, &w);
                        }
                    }
                }
            }
        }
        let beta = m.divisor(&vec![1; m.basis.len()]);
        for n in 0..=2u32 {
            for n0 in 0..=n {
                for z0 in fixed_points(&m, n0) {
                    for z1 in fixed_points(&m, n - n0) {
                        let gt = monopole::gt_char(&m, &z0, &z1, &beta)?;
                        let c = monopole::chern_classes(&gt, n + 1)?;
                        ok &= gt.rank() == n as i64 && c[n as usize + 1].is_zero();
                    }
                }
            }
        }
    }
    Ok((ok, "ext pairing equals Taylor oracle for colength <= 3; nested class rank n0+n1, c_{n+1} = 0 for n <= 2".into()))
}

fn applications() -> Result<(bool, String)> {
    let gt = lat("general-type-k1-chi2")?;
    let q = lat("quintic")?;
    let mut out = Vec::new();
    for s in [&gt, &q] {
        for (l, c1) in samples(s) {
            out.push(checks::general_type(s, &l, &c1, 24)?);
        }
    }
    for s in [lat("k3")?, gt.clone()] {
        for (l, c1) in samples(&s) {
            out.extend(checks::blowup(&Target { lattice: s.clone(), l, c1, max_vd: 0, strong_form: true }, 20)?);
        }
    }
    out.push(checks::disconnected(20)?);
    out.extend(checks::limits(30)?);
    let skipped = out.iter().any(|o| o.verdict == checks::Verdict::Skip);
    Ok((all(&out) && !skipped, format!("residue classes mod x^24, blow-up mod x^20, one-curve K, y -> 1 limits mod x^30 {}", first_failure(&out))))
}

fn k3_odd(cx: &Ctx) -> Result<(bool, String)> {
    let s = lat("k3")?;
    let c1 = unit(22, 0);
    let l = unit(22, 1);
    let bs = monopole::b_series(&cx.b3)?;
    let ok = closed::conj3_series(&s, &l, &c1, 24)?.is_zero()
        && monopole::lemma_c_series(&bs, &s, &l, &c1, 12)?.is_zero()
        && [2, 6].iter().all(|vd| monopole::lemma_c_predict(&bs, &s, &l, &c1, *vd).map(|v| v.is_zero()).unwrap_or(false));
    Ok((ok, "K3 with odd c1: closed monopole series and localized contribution vanish".into()))
}

fn jacobi() -> Result<(bool, String)> {
    Ok((checks::jacobi(50)?.passed(), "Jacobi triple product mod x^50".into()))
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let start = Instant::now();
    let b3 = match monopole::solve_universal_b(&MonopoleRequest { order: 3, seed: 0 }) {
        Ok((u, _)) => u,
        Err(e) => {
            println!("FAIL monopole universal solve: {}", e);
            return ExitCode::FAILURE;
        }
    };
    let cx = Ctx { b3 };
    let engine = Engine { cache: None, seed: 1 };
    type Criterion<'a> = (&'a str, Box<dyn Fn() -> Result<(bool, String)> + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("1 monopole localization", Box::new(|| localization_matches_closed_c(&cx))),
        ("2 rank two diagonal", Box::new(rank_two_diagonal)),
        ("3 instanton universality", Box::new(instanton_universality)),
        ("4 conj1 on K3", Box::new(|| k3_conj1(&engine))),
        ("5 chi_y degeneration", Box::new(degenerations)),
        ("6 specialization independence", Box::new(specialization)),
        ("7 y <-> 1/y symmetry", Box::new(|| y_symmetry(&cx))),
        ("8 ext oracle and nested class", Box::new(ext_and_nested_class)),
        ("9 applications", Box::new(applications)),
        ("10 K3 odd c1 vanishing", Box::new(|| k3_odd(&cx))),
        ("11 Jacobi triple product", Box::new(jacobi)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let t = Instant::now();
        let (ok, detail) = run().unwrap_or_else(|e| (false, format!("error: {}", e)));
        if !ok {
            failed += 1;
        }
        println!("{} {}: {} [{:.1}s]", if ok { "PASS" } else { "FAIL" }, name, detail.trim_end(), t.elapsed().as_secs_f64());
    }
    println!("acceptance: {} of {} criteria passed in {:.1}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
