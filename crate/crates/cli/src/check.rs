//! The identity suite run by `orbint check`.

use std::collections::BTreeSet;

use num_complex::Complex64;
use orbint::ktrace::{class_is_zero, random_regular_point, tau_at, tau_class, tau_generator};
use orbint::stable::{
    char_identity_check, continuity_check, formal_degree, lpacket_sum, random_direction, stable_tau,
};
use orbint::tannaka::{
    fourier_coefficients, reconstruct, recover_characters, recover_dims, synth_family,
    SampleLayout, DEFAULT_CANDIDATE_BOX, DEFAULT_WEIGHT_BOX,
};
use orbint::toruschar::{
    ab_fixed_sum, char_quotient, delta_p_char, eval_weight, weyl_denominator, weyl_numerator,
};
use orbint::{ConjugacyDescriptor, GeneratorKey, KClass, RealFormSpec, Result, TorusPoint, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    /// Largest observed deviation (or failure count for counting checks).
    pub worst: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

struct Suite<'a> {
    spec: &'a RealFormSpec,
    samples: usize,
    rng: ChaCha8Rng,
    results: Vec<CheckResult>,
}

impl Suite<'_> {
    fn record(&mut self, name: &'static str, worst: f64, tolerance: f64) {
        self.results.push(CheckResult {
            name,
            pass: worst <= tolerance,
            worst,
            tolerance,
            detail: None,
        });
    }

    fn record_outcome(&mut self, name: &'static str, outcome: Result<(f64, f64)>) {
        match outcome {
            Ok((worst, tol)) => self.record(name, worst, tol),
            Err(e) => self.results.push(CheckResult {
                name,
                pass: false,
                worst: f64::INFINITY,
                tolerance: 0.0,
                detail: Some(e.to_string()),
            }),
        }
    }

    fn points(&mut self) -> Vec<TorusPoint> {
        let datum = self.spec.datum().clone();
        (0..self.samples)
            .map(|_| random_regular_point(&mut self.rng, &datum))
            .collect()
    }

    fn keys(&self) -> Vec<GeneratorKey> {
        self.spec.keys_in_box(2)
    }

    fn random_class(&mut self) -> KClass {
        let pool = self.keys();
        let n = self.rng.gen_range(1..=5);
        let mut x = KClass::zero();
        for _ in 0..n {
            let k = pool[self.rng.gen_range(0..pool.len())].clone();
            x.add_term(k, self.rng.gen_range(-3..=3));
        }
        x
    }
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / (1.0 + b.norm())
}

/// Runs every invariant on `spec` and its root datum.
pub fn run_suite(spec: &RealFormSpec, samples: usize, seed: u64) -> Vec<CheckResult> {
    let mut s = Suite {
        spec,
        samples,
        rng: ChaCha8Rng::seed_from_u64(seed),
        results: Vec::new(),
    };
    let datum = spec.datum().clone();
    let group = spec.weyl_group().clone();
    let positive = spec.positive().clone();
    let rho = spec.rho().clone();

    // root systems and Weyl groups
    let roots: BTreeSet<Weight> = datum.roots().into_iter().collect();
    let mut bad = 0usize;
    for a in 0..group.order() {
        for b in 0..group.order() {
            let prod = group.compose(a, b);
            if prod >= group.order() {
                bad += 1;
            }
        }
    }
    let distinct: BTreeSet<&[i64]> = group.elements().iter().map(|w| w.matrix()).collect();
    bad += group.order() - distinct.len();
    bad += usize::from(!group.element(0).is_identity());
    s.record("weyl_group_closed", bad as f64, 0.0);

    let bad = group
        .elements()
        .iter()
        .filter(|w| i64::from(w.sign()) != if w.length() % 2 == 0 { 1 } else { -1 })
        .count();
    s.record("sign_is_length_parity", bad as f64, 0.0);

    let bad = group
        .elements()
        .iter()
        .filter(|w| roots.iter().map(|r| w.act(r)).collect::<BTreeSet<_>>() != roots)
        .count();
    s.record("weyl_permutes_roots", bad as f64, 0.0);

    let sample_weights: Vec<Weight> = (0..8)
        .map(|_| Weight::from_doubled((0..datum.rank()).map(|_| s.rng.gen_range(-6..=6)).collect()))
        .collect();
    let mut bad = 0;
    for a in &sample_weights {
        for b in &sample_weights {
            bad += usize::from(datum.pairing(a, b) != datum.pairing(b, a));
            for w in group.elements() {
                bad += usize::from(datum.pairing(&w.act(a), &w.act(b)) != datum.pairing(a, b));
            }
        }
    }
    s.record("pairing_symmetric_invariant", bad as f64, 0.0);

    let rank = datum.rank();
    let dominant: Vec<Weight> = (0..9i64)
        .map(|i| {
            let mut c = vec![0; rank];
            c[0] = i % 3;
            if rank > 1 {
                c[1] = i / 3;
            }
            Weight::from_fundamental(&c)
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let outcome = (|| {
        let mut bad = 0;
        for lam in &dominant {
            let total: u64 = datum.weight_multiplicities(lam)?.values().sum();
            bad += usize::from(
                num_rational::Rational64::from_integer(total as i64) != datum.weyl_dim(lam)?,
            );
        }
        Ok((bad as f64, 0.0))
    })();
    s.record_outcome("multiplicities_sum_to_dimension", outcome);

    // real forms
    let mut count = vec![0usize; group.order()];
    for r in spec.coset_reps() {
        let ri = group.find(r.matrix()).expect("representative in W");
        for k in spec.weyl_k() {
            count[group.compose(group.find(k.matrix()).expect("W_K in W"), ri)] += 1;
        }
    }
    s.record(
        "cosets_tile_weyl_group",
        count.iter().filter(|&&c| c != 1).count() as f64,
        0.0,
    );

    let bad = s
        .keys()
        .iter()
        .filter(|k| {
            let text = serde_json::to_string(k).expect("keys serialize");
            let back: Weight = serde_json::from_str(&text).expect("keys parse");
            spec.generator_key(&back).as_ref() != Ok(*k)
        })
        .count();
    s.record("key_round_trip", bad as f64, 0.0);

    if spec.is_compact() {
        let bad = dominant
            .iter()
            .filter(|lam| match spec.generator_key(lam) {
                Ok(k) => spec.hc_parameter(&k) != *lam + &rho,
                Err(_) => true,
            })
            .count();
        s.record("compact_keys_and_parameters", bad as f64, 0.0);
    }

    // torus characters
    let points = s.points();
    let worst = points
        .iter()
        .map(|g| {
            (weyl_numerator(&rho, g, group.elements()) - weyl_denominator(g, &positive)).norm()
        })
        .fold(0.0, f64::max);
    s.record("weyl_denominator_formula", worst, 1e-10);

    let mut worst: f64 = 0.0;
    for g in &points {
        for mu in &sample_weights {
            let base = weyl_numerator(mu, g, group.elements());
            for w in group.elements() {
                let moved = weyl_numerator(&w.act(mu), g, group.elements());
                worst = worst.max((moved - f64::from(w.sign()) * base).norm());
            }
        }
    }
    s.record("numerator_antisymmetry", worst, 1e-10);

    let npos = spec.noncompact_positive().roots().to_vec();
    let parity = if npos.len().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    let worst = points
        .iter()
        .map(|g| {
            let lhs: Complex64 = npos
                .iter()
                .flat_map(|a| [a.clone(), -a])
                .map(|a| Complex64::new(1.0, 0.0) - eval_weight(&a, g))
                .product();
            (lhs - parity * delta_p_char(g, spec).powi(2)).norm()
        })
        .fold(0.0, f64::max);
    s.record("wedge_p_identity", worst, 1e-10);

    if spec.is_compact() {
        let outcome = (|| {
            let mut worst: f64 = 0.0;
            for lam in &dominant {
                let mults = datum.weight_multiplicities(lam)?;
                for g in &points {
                    let oracle: Complex64 = mults
                        .iter()
                        .map(|(mu, &m)| m as f64 * eval_weight(mu, g))
                        .sum();
                    let cq = char_quotient(&(lam + &rho), g, group.elements(), &positive)?;
                    worst = worst.max((cq - oracle).norm());
                }
            }
            Ok((worst, 1e-9))
        })();
        s.record_outcome("character_matches_freudenthal", outcome);
    }

    let outcome = (|| {
        let mut worst: f64 = 0.0;
        for lam in &dominant {
            for g in &points {
                let ab = ab_fixed_sum(lam, g, group.elements(), &positive)?;
                let cq = char_quotient(&(lam + &rho), g, group.elements(), &positive)?;
                worst = worst.max(rel(ab, cq));
            }
        }
        Ok((worst, 1e-9))
    })();
    s.record_outcome("localization_matches_character", outcome);

    // the trace
    let keys = s.keys();
    let outcome = (|| {
        let mut worst: f64 = 0.0;
        for k in &keys {
            for g in &points {
                let v = tau_generator(spec, k, g)?;
                worst = worst.max(v.discrepancy() / (1.0 + v.value.norm()));
            }
        }
        Ok((worst, 1e-10))
    })();
    s.record_outcome("dual_path_agreement", outcome);

    let outcome = (|| {
        let mut worst: f64 = 0.0;
        for k in &keys {
            for g in &points {
                let base = tau_generator(spec, k, g)?.value;
                for w in spec.weyl_k() {
                    worst = worst.max(rel(tau_generator(spec, k, &g.transformed(w))?.value, base));
                }
            }
        }
        Ok((worst, 1e-10))
    })();
    s.record_outcome("compact_conjugation_invariance", outcome);

    let classes: Vec<KClass> = (0..20).map(|_| s.random_class()).collect();
    let outcome = (|| {
        let mut worst: f64 = 0.0;
        for pair in classes.windows(2) {
            for g in &points {
                let sum = tau_at(spec, &(&pair[0] + &pair[1]), g)?;
                let parts = tau_at(spec, &pair[0], g)? + tau_at(spec, &pair[1], g)?;
                worst = worst.max(rel(parts, sum));
            }
        }
        Ok((worst, 1e-10))
    })();
    s.record_outcome("linearity", outcome);

    let outcome = (|| {
        let mut bad = 0;
        for (i, x) in classes.iter().enumerate() {
            let v = class_is_zero(spec, x, 20, i as u64)?;
            bad += usize::from(v.zero != x.is_zero());
        }
        bad += usize::from(!class_is_zero(spec, &KClass::zero(), 20, 0)?.zero);
        Ok((bad as f64, 0.0))
    })();
    s.record_outcome("class_distinguishing", outcome);

    let outcome = (|| {
        let mut bad = 0;
        for x in &classes {
            for d in [
                ConjugacyDescriptor::NonElliptic,
                ConjugacyDescriptor::UnequalRankAmbient,
            ] {
                bad += usize::from(tau_class(spec, x, &d)? != Complex64::new(0.0, 0.0));
            }
        }
        Ok((bad as f64, 0.0))
    })();
    s.record_outcome("selberg_vanishing", outcome);

    // stable sums
    let outcome = (|| {
        let mut worst: f64 = 0.0;
        for x in classes.iter().take(5) {
            for g in points.iter().take(5) {
                let base = stable_tau(spec, x, g)?;
                for w in group.elements() {
                    worst = worst.max(rel(stable_tau(spec, x, &g.transformed(w))?, base));
                }
            }
        }
        Ok((worst, 1e-10))
    })();
    s.record_outcome("stable_weyl_invariance", outcome);

    let outcome = (|| {
        let mut worst: f64 = 0.0;
        for k in &keys {
            for g in &points {
                let packet = lpacket_sum(spec, &spec.hc_parameter(k), g)?;
                let stable = stable_tau(spec, &KClass::generator(k.clone()), g)?;
                worst = worst.max(rel(packet, stable));
            }
        }
        Ok((worst, 1e-10))
    })();
    s.record_outcome("packet_stable_agreement", outcome);

    let directions: Vec<Vec<f64>> = (0..3)
        .map(|_| random_direction(&mut s.rng, &datum))
        .collect();
    let outcome = (|| {
        let mut worst: f64 = 0.0;
        for k in spec.keys_in_box(1) {
            let x = KClass::generator(k);
            for d in &directions {
                let rep = continuity_check(spec, &x, d)?;
                worst = worst.max(rep.difference / rep.tolerance);
            }
        }
        // measured in units of the per-class tolerance
        Ok((worst, 1.0))
    })();
    s.record_outcome("continuity_at_identity", outcome);

    let bad = dominant
        .iter()
        .filter(|lam| Ok(formal_degree(spec, &(*lam + &rho))) != datum.weyl_dim(lam))
        .count();
    s.record("formal_degree_is_weyl_dimension", bad as f64, 0.0);

    let outcome = (|| {
        let mut worst: f64 = 0.0;
        for nu in dominant
            .iter()
            .chain(sample_weights.iter().filter(|w| w.is_integral()))
        {
            for g in &points {
                worst = worst.max(char_identity_check(spec, nu, g)?);
            }
        }
        Ok((worst, 1e-10))
    })();
    s.record_outcome("character_identity", outcome);

    // reconstruction, against a one-dimensional reference K-type
    let compact_dim = |k: &GeneratorKey| {
        let hc = spec.hc_parameter(k);
        spec.compact_positive()
            .roots()
            .iter()
            .map(|a| datum.pairing(&hc, a) / datum.pairing(spec.rho_c(), a))
            .product::<num_rational::Rational64>()
    };
    let mut pool = spec.keys_in_box(1);
    pool.sort_by_key(|k| !k.lambda().is_zero());
    let reference = pool
        .iter()
        .position(|k| compact_dim(k) == num_rational::Rational64::from_integer(1));
    if let Some(r) = reference {
        let reference = pool.remove(r);
        let mut family_keys = vec![reference.clone()];
        family_keys.extend(pool.into_iter().take(3));
        let layout = SampleLayout::for_datum(&datum, s.rng.gen());
        let outcome = (|| {
            let rep = reconstruct(
                spec,
                &family_keys,
                &layout,
                DEFAULT_WEIGHT_BOX,
                DEFAULT_CANDIDATE_BOX,
            )?;
            let mut bad = usize::from(rep.j0 != reference);
            for (l, k) in rep.labels.iter().zip(&family_keys) {
                bad += usize::from(l.highest_weight != k.lambda() - reference.lambda());
                bad += usize::from(
                    compact_dim(k) != num_rational::Rational64::from_integer(l.dim as i64),
                );
            }
            let canon = |w: &Weight| {
                if w.coords2()
                    .iter()
                    .find(|&&c| c != 0)
                    .is_some_and(|&c| c > 0)
                {
                    w.clone()
                } else {
                    -w
                }
            };
            let expected: BTreeSet<Weight> = spec
                .noncompact_positive()
                .roots()
                .iter()
                .map(canon)
                .collect();
            let found: BTreeSet<Weight> = rep.noncompact_weights.into_iter().collect();
            bad += usize::from(expected != found);
            Ok((bad as f64, 0.0))
        })();
        s.record_outcome("tannaka_round_trip", outcome);

        let outcome = (|| {
            let family = synth_family(spec, &family_keys, &layout)?;
            let extra = family_keys.last().expect("nonempty").clone();
            let scaled = family.rescaled(|g| {
                tau_generator(spec, &extra, g)
                    .map(|v| v.value)
                    .unwrap_or_default()
            });
            Ok((
                f64::from(u8::from(recover_dims(&family)? != recover_dims(&scaled)?)),
                0.0,
            ))
        })();
        s.record_outcome("dims_scale_invariant", outcome);

        if spec.is_compact() {
            let outcome = (|| {
                let family = synth_family(spec, &family_keys, &layout)?;
                let dims = recover_dims(&family)?;
                let chars = recover_characters(&family, &dims)?;
                let mut worst: f64 = 0.0;
                for (j, k) in family_keys.iter().enumerate() {
                    let mults = datum.weight_multiplicities(k.lambda())?;
                    for (mu, c) in fourier_coefficients(
                        &chars.characters[j],
                        &layout.grid,
                        DEFAULT_WEIGHT_BOX,
                    )? {
                        let m = mults.get(&mu).copied().unwrap_or(0) as f64;
                        worst = worst.max((c - Complex64::new(m, 0.0)).norm());
                    }
                }
                Ok((worst, 1e-6))
            })();
            s.record_outcome("fourier_multiplicities", outcome);
        }
    }

    s.results
}
