//! Checks against values computed independently of the library: root
//! closure in simple-root coordinates, Weyl groups as permutation groups,
//! SU(3) characters from Gelfand-Tsetlin patterns, and closed forms for the
//! rank-one and SU(2,1) cases.

use std::collections::{BTreeSet, HashSet};
use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Rational64;
use orbint::ktrace::{lds_character, schmid_sum, tau_generator};
use orbint::stable::{formal_degree, stable_tau, tau_e};
use orbint::toruschar::char_quotient;
use orbint::*;

/// All roots in simple-root coordinates by reflection closure.
fn roots_simple(a: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let n = a.len();
    let mut roots: BTreeSet<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    loop {
        let mut grew = false;
        for beta in roots.clone() {
            for i in 0..n {
                let pair: i64 = (0..n).map(|j| beta[j] * a[i][j]).sum();
                let mut next = beta.clone();
                next[i] -= pair;
                grew |= roots.insert(next);
            }
        }
        if !grew {
            return roots;
        }
    }
}

fn to_fundamental(a: &[Vec<i64>], simple: &[i64]) -> Weight {
    let n = a.len();
    Weight::from_fundamental(
        &(0..n)
            .map(|i| (0..n).map(|j| simple[j] * a[i][j]).sum())
            .collect::<Vec<_>>(),
    )
}

fn weyl_order_by_permutations(a: &[Vec<i64>]) -> usize {
    let n = a.len();
    let roots: Vec<Vec<i64>> = roots_simple(a).into_iter().collect();
    let gens: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            roots
                .iter()
                .map(|beta| {
                    let pair: i64 = (0..n).map(|j| beta[j] * a[i][j]).sum();
                    let mut img = beta.clone();
                    img[i] -= pair;
                    roots.iter().position(|r| *r == img).unwrap()
                })
                .collect()
        })
        .collect();
    let identity: Vec<usize> = (0..roots.len()).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([identity.clone()]);
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for g in &gens {
            let q: Vec<usize> = p.iter().map(|&k| g[k]).collect();
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen.len()
}

#[test]
fn roots_match_simple_coordinate_closure() {
    for (name, count) in [
        ("A1", 2),
        ("A2", 6),
        ("B2", 8),
        ("C2", 8),
        ("G2", 12),
        ("A3", 12),
        ("B3", 18),
        ("D4", 24),
    ] {
        let datum = CartanDatum::named(name).unwrap();
        let a = datum.rows();
        let oracle: BTreeSet<Weight> = roots_simple(&a)
            .iter()
            .map(|r| to_fundamental(&a, r))
            .collect();
        let mine: BTreeSet<Weight> = datum.roots().into_iter().collect();
        assert_eq!(oracle.len(), count, "{name}");
        assert_eq!(mine, oracle, "{name}");
    }
}

#[test]
fn weyl_orders_match_permutation_groups() {
    for name in ["A1", "A2", "B2", "C2", "G2", "A3", "B3"] {
        let datum = CartanDatum::named(name).unwrap();
        assert_eq!(
            datum.weyl_group().order(),
            weyl_order_by_permutations(&datum.rows()),
            "{name}"
        );
    }
}

/// SU(3) character of highest weight `a w1 + b w2` by Gelfand-Tsetlin patterns.
fn su3_character(a: i64, b: i64, t: &[f64]) -> Complex64 {
    let (m1, m2) = (a + b, b);
    let mut total = Complex64::new(0.0, 0.0);
    for k1 in m2..=m1 {
        for k2 in 0..=m2 {
            for j in k2..=k1 {
                let w = [j, k1 + k2 - j, m1 + m2 - k1 - k2];
                let mu = [(w[0] - w[1]) as f64, (w[1] - w[2]) as f64];
                total += Complex64::from_polar(1.0, 2.0 * PI * (mu[0] * t[0] + mu[1] * t[1]));
            }
        }
    }
    total
}

#[test]
fn su3_characters_match_gelfand_tsetlin() {
    let spec = RealFormSpec::preset("compact(A2)").unwrap();
    let datum = spec.datum();
    let points = [
        [1, 7, 2, 11],
        [3, 13, 5, 17],
        [2, 19, 9, 23],
        [10, 31, 1, 29],
    ];
    for (a, b) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (3, 0), (2, 2)] {
        let lam = Weight::from_fundamental(&[a, b]);
        assert_eq!(
            datum.weyl_dim(&lam).unwrap(),
            Rational64::from_integer(su3_character(a, b, &[0.0, 0.0]).re.round() as i64)
        );
        for p in points {
            let t = [p[0] as f64 / p[1] as f64, p[2] as f64 / p[3] as f64];
            let g = TorusPoint::exact(vec![
                Rational64::new(p[0], p[1]),
                Rational64::new(p[2], p[3]),
            ]);
            let oracle = su3_character(a, b, &t);
            let hc = &lam + spec.rho();
            let cq = char_quotient(&hc, &g, spec.weyl_group().elements(), spec.positive()).unwrap();
            assert!((cq - oracle).norm() < 1e-10, "({a},{b}) at {g}");
            let key = spec.generator_key(&lam).unwrap();
            assert!((tau_generator(&spec, &key, &g).unwrap().value - oracle).norm() < 1e-10);
        }
    }
}

#[test]
fn g2_fundamental_dimensions() {
    let datum = CartanDatum::named("G2").unwrap();
    let dims: Vec<i64> = [[1, 0], [0, 1]]
        .iter()
        .map(|c| {
            datum
                .weyl_dim(&Weight::from_fundamental(c))
                .unwrap()
                .to_integer()
        })
        .collect();
    let mut sorted = dims.clone();
    sorted.sort();
    assert_eq!(sorted, vec![7, 14]);
    for c in [[1, 0], [0, 1], [1, 1]] {
        let lam = Weight::from_fundamental(&c);
        let total: u64 = datum.weight_multiplicities(&lam).unwrap().values().sum();
        assert_eq!(
            Rational64::from_integer(total as i64),
            datum.weyl_dim(&lam).unwrap()
        );
    }
}

#[test]
fn sl2r_closed_forms() {
    let spec = RealFormSpec::preset("sl2r").unwrap();
    for (p, q) in [(1, 5), (2, 7), (3, 11), (5, 13)] {
        let g = TorusPoint::exact(vec![Rational64::new(p, q)]);
        let phi = 2.0 * PI * p as f64 / q as f64;
        let denom = Complex64::new(0.0, 2.0 * phi.sin());
        for n in 0..5 {
            let key = spec.generator_key(&Weight::from_fundamental(&[n])).unwrap();
            let v = tau_generator(&spec, &key, &g).unwrap();
            let expected = Complex64::from_polar(1.0, n as f64 * phi) / denom;
            assert!((v.value - expected).norm() < 1e-13, "n={n} t={p}/{q}");
            let stable = stable_tau(&spec, &KClass::generator(key), &g).unwrap();
            let two_term = Complex64::new((n as f64 * phi).sin() / phi.sin(), 0.0);
            assert!((stable - two_term).norm() < 1e-12);
        }
        let zero = Weight::zero(1);
        let pos = lds_character(&spec, &zero, spec.positive(), &g).unwrap();
        assert!((pos - Complex64::new(1.0, 0.0) / denom).norm() < 1e-14);
        let neg = lds_character(&spec, &zero, &spec.positive().negated(), &g).unwrap();
        assert!((neg + Complex64::new(1.0, 0.0) / denom).norm() < 1e-14);
        let pair = [spec.positive().clone(), spec.positive().negated()];
        assert!(schmid_sum(&spec, &zero, &pair, &g).unwrap().norm() < 1e-14);
    }
}

/// SU(2,1) with eigenvalues `z_i` and `Lambda` in `epsilon` coordinates.
fn su21_tau(hc: &Weight, t: &[f64]) -> Complex64 {
    let f = hc.fundamental();
    let (a, b) = (
        *f[0].numer() as f64 / *f[0].denom() as f64,
        *f[1].numer() as f64 / *f[1].denom() as f64,
    );
    // w1 = e1, w2 = e1 + e2; angles of z1, z2, z3 with z1 z2 z3 = 1.
    let th = [t[0], t[1] - t[0], -t[1]];
    let lam = [a + b, b, 0.0];
    let e = |x: [f64; 3]| {
        Complex64::from_polar(1.0, 2.0 * PI * (x[0] * th[0] + x[1] * th[1] + x[2] * th[2]))
    };
    let numer = e(lam) - e([lam[1], lam[0], lam[2]]);
    let half = |i: usize, j: usize| Complex64::new(0.0, 2.0 * (PI * (th[i] - th[j])).sin());
    numer / (half(0, 1) * half(1, 2) * half(0, 2))
}

#[test]
fn su21_matches_eigenvalue_formula() {
    let spec = RealFormSpec::preset("su21").unwrap();
    for (p1, q1, p2, q2) in [(1, 7, 2, 11), (3, 13, 1, 5), (4, 17, 9, 19)] {
        let t = [p1 as f64 / q1 as f64, p2 as f64 / q2 as f64];
        let g = TorusPoint::exact(vec![Rational64::new(p1, q1), Rational64::new(p2, q2)]);
        for key in spec.keys_in_box(2) {
            let hc = spec.hc_parameter(&key);
            let v = tau_generator(&spec, &key, &g).unwrap();
            let oracle = su21_tau(&hc, &t);
            assert!(
                (v.value - oracle).norm() < 1e-10 * (1.0 + oracle.norm()),
                "{key} at {g}"
            );
        }
    }
}

#[test]
fn su21_formal_degrees_match_eigenvalue_products() {
    let spec = RealFormSpec::preset("su21").unwrap();
    for key in spec.keys_in_box(2) {
        let hc = spec.hc_parameter(&key);
        let f: Vec<f64> = hc
            .fundamental()
            .iter()
            .map(|r| *r.numer() as f64 / *r.denom() as f64)
            .collect();
        let lam = [f[0] + f[1], f[1], 0.0];
        let oracle = ((lam[0] - lam[1]) * (lam[1] - lam[2]) * (lam[0] - lam[2]) / 2.0).abs();
        let fd = formal_degree(&spec, &hc);
        assert!(
            (*fd.numer() as f64 / *fd.denom() as f64 - oracle).abs() < 1e-12,
            "{key}"
        );
        let expected = if spec.is_regular_param(&hc) {
            oracle
        } else {
            0.0
        };
        assert!((tau_e(&spec, &KClass::generator(key)) - expected).abs() < 1e-12);
    }
}

#[test]
fn preset_shapes() {
    for (name, dim_gk, wk, cosets) in [
        ("sl2r", 2, 1, 2),
        ("su21", 4, 2, 3),
        ("sp4r", 6, 2, 4),
        ("compact(A2)", 0, 6, 1),
        ("compact(G2)", 0, 12, 1),
    ] {
        let spec = RealFormSpec::preset(name).unwrap();
        assert_eq!(spec.dim_gk(), dim_gk, "{name}");
        assert_eq!(spec.weyl_k().len(), wk, "{name}");
        assert_eq!(spec.coset_reps().len(), cosets, "{name}");
    }
}
