use proptest::prelude::*;

use verlinde_core::cache::{Cache, CacheKey, Entry, Lookup};
use verlinde_core::exact::{int, rat, LaurentPoly, Rat, YCoeff};
use verlinde_core::lattice::SurfaceLattice;
use verlinde_core::qseries::invert_y;
use verlinde_core::series::TruncatedSeries;
use verlinde_core::toric::EquivChar;
use verlinde_core::universal::UniversalSeries;

fn rational() -> impl Strategy<Value = Rat> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| rat(n, d))
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..5, rational()), 0..4).prop_map(LaurentPoly::from_terms)
}

fn ycoeff() -> impl Strategy<Value = YCoeff> {
    (laurent(), laurent()).prop_map(|(n, d)| if d.is_zero() { YCoeff::from_laurent(n) } else { YCoeff::new(n, d) })
}

fn x_series(len: usize) -> impl Strategy<Value = TruncatedSeries<Rat>> {
    prop::collection::vec(rational(), len).prop_map(move |c| TruncatedSeries::univariate("x", 0, len as i64 - 1, c))
}

/// `1 + (terms of positive degree)`.
fn unit_series(len: usize) -> impl Strategy<Value = TruncatedSeries<Rat>> {
    x_series(len).prop_map(|s| {
        let mut c: Vec<Rat> = (0..s.hi1() + 1).map(|k| s.coeff1(k)).collect();
        c[0] = int(1);
        TruncatedSeries::univariate("x", 0, s.hi1(), c)
    })
}

fn y_series() -> impl Strategy<Value = TruncatedSeries<YCoeff>> {
    (prop::collection::vec(ycoeff(), 5), -3i64..2).prop_map(|(c, lo)| TruncatedSeries::univariate("x", lo, lo + 4, c))
}

fn weight() -> impl Strategy<Value = [i64; 3]> {
    [-3i64..4, -3i64..4, -2i64..3]
}

fn character() -> impl Strategy<Value = EquivChar> {
    prop::collection::vec((weight(), -3i64..4), 0..6).prop_map(EquivChar::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_series_json_round_trip(s in x_series(8)) {
        let back = TruncatedSeries::<Rat>::from_json(&s.to_json()).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(back.to_json().to_string(), s.to_json().to_string());
    }

    #[test]
    fn y_series_json_round_trip(s in y_series()) {
        let text = serde_json::to_string(&s.to_json()).unwrap();
        let back = TruncatedSeries::<YCoeff>::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn exp_inverts_log(s in unit_series(9)) {
        prop_assert_eq!(s.log().unwrap().exp().unwrap(), s);
    }

    #[test]
    fn inverse_and_powers(s in unit_series(7), a in -3i64..4, b in -3i64..4) {
        let one = TruncatedSeries::univariate("x", 0, 6, vec![int(1)]);
        prop_assert_eq!(s.mul(&s.invert().unwrap()).unwrap(), one);
        let lhs = s.pow_int(a).unwrap().mul(&s.pow_int(b).unwrap()).unwrap();
        // s^0 is exactly 1, so compare on the common precision
        prop_assert!(lhs.agrees_with(&s.pow_int(a + b).unwrap()));
    }

    #[test]
    fn y_inversion_is_an_involution(s in y_series(), c in ycoeff()) {
        prop_assert_eq!(invert_y(&invert_y(&s)), s);
        prop_assert_eq!(c.invert_y().invert_y(), c);
    }

    #[test]
    fn character_dual_is_an_involution(a in character(), b in character()) {
        prop_assert_eq!(a.dual().dual(), a.clone());
        prop_assert_eq!(a.add(&b).dual(), a.dual().add(&b.dual()));
        prop_assert_eq!(a.mul(&b).dual(), a.dual().mul(&b.dual()));
        prop_assert_eq!(a.dual().rank(), a.rank());
    }

    #[test]
    fn universal_solve_reconstructs(
        diag in prop::collection::vec(prop_oneof![Just(1i64), Just(-1), Just(2)], 3),
        upper in prop::collection::vec(-3i64..4, 3),
        logs in prop::collection::vec(x_series(6), 3),
    ) {
        // log A_j with vanishing constant term; upper-triangular W is invertible
        let logs: Vec<_> = logs.into_iter().map(|l| {
            let c: Vec<Rat> = (0..6).map(|k| if k == 0 { int(0) } else { l.coeff1(k) }).collect();
            TruncatedSeries::univariate("x", 0, 5, c)
        }).collect();
        let truth = UniversalSeries { vectors: vec![], logs };
        let vectors = vec![
            vec![diag[0], 0, 0],
            vec![upper[0], diag[1], 0],
            vec![upper[1], upper[2], diag[2]],
        ];
        let zs: Vec<_> = vectors.iter().map(|v| truth.eval_at(v).unwrap()).collect();
        let solved = UniversalSeries::solve(vectors.clone(), &zs).unwrap();
        prop_assert_eq!(&solved.logs, &truth.logs);
        for (v, z) in vectors.iter().zip(&zs) {
            prop_assert_eq!(&solved.eval_at(v).unwrap(), z);
        }
    }

    #[test]
    fn delta_depends_on_parity_only(
        a in prop::collection::vec(-5i64..6, 4),
        b in prop::collection::vec(-5i64..6, 4),
        g in prop::collection::vec(-3i64..4, 4),
    ) {
        let lat = SurfaceLattice::from_toml("name='t'\nchi_o=1\nblocks=['U','U']\ncanonical='zero'\n").unwrap();
        let shifted: Vec<i64> = a.iter().zip(&g).map(|(x, y)| x + 2 * y).collect();
        prop_assert_eq!(lat.delta(&a, &b), lat.delta(&shifted, &b));
        prop_assert_eq!(lat.delta(&a, &b), lat.delta(&b, &a));
        prop_assert_eq!(lat.delta(&a, &a), 1);
    }

    #[test]
    fn cache_round_trip_is_exact(logs in prop::collection::vec(x_series(5), 2), order in 1usize..5, seed in 0u64..1000) {
        let dir = tempdir();
        let cache = Cache::at(&dir);
        let key = CacheKey { family: "test".into(), tuples: "t".into(), q_order: order, s_window: 0, eps: format!("line-seed-{}", seed) };
        let entry = Entry { vectors: vec![vec![1, 0], vec![0, 1]], logs: logs.clone(), inputs: logs };
        let path = cache.store(&key, &entry).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        match cache.load::<Rat>(&key).unwrap() {
            Lookup::Hit(e) => prop_assert_eq!(e, entry.clone()),
            other => prop_assert!(false, "{:?}", other),
        }
        cache.store(&key, &entry).unwrap();
        prop_assert_eq!(std::fs::read(&path).unwrap(), bytes);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}

fn tempdir() -> std::path::PathBuf {
    use std::sync::atomic::{AtomicUsize, Ordering};
    static N: AtomicUsize = AtomicUsize::new(0);
    let d = std::env::temp_dir().join(format!("verlinde-prop-{}-{}", std::process::id(), N.fetch_add(1, Ordering::SeqCst)));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn stale_entries_are_not_reused() {
    let dir = tempdir();
    let cache = Cache::at(&dir);
    let key = CacheKey { family: "test".into(), tuples: "t".into(), q_order: 2, s_window: 0, eps: "line-seed-0".into() };
    let s = TruncatedSeries::univariate("x", 0, 2, vec![int(0), int(1), rat(1, 2)]);
    let entry = Entry { vectors: vec![vec![1]], logs: vec![s.clone()], inputs: vec![s] };
    let path = cache.store(&key, &entry).unwrap();

    // an entry written under another key at this path
    let other = CacheKey { q_order: 3, ..key.clone() };
    let moved = cache.store(&other, &entry).unwrap();
    std::fs::rename(&moved, &path).unwrap();
    assert!(matches!(cache.load::<Rat>(&key).unwrap(), Lookup::Stale(_)));

    cache.store(&key, &entry).unwrap();
    let text = std::fs::read_to_string(&path).unwrap().replace("\"1/2\"", "\"1/3\"");
    std::fs::write(&path, text).unwrap();
    assert!(matches!(cache.load::<Rat>(&key).unwrap(), Lookup::Stale(_)));

    std::fs::write(&path, "not json").unwrap();
    assert!(matches!(cache.load::<Rat>(&key).unwrap(), Lookup::Stale(_)));
    std::fs::remove_dir_all(&dir).unwrap();
}
