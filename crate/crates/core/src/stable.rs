//! Stable orbital integrals, L-packet sums, the limit at the identity,
//! formal degrees and the coset bookkeeping behind the character identity.

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::ktrace::{lds_character, tau_at};
use crate::realform::{KClass, RealFormSpec};
use crate::rootsys::{CartanDatum, Weight};
use crate::toruschar::{
    ab_fixed_sum, check_regular_for, weyl_denominator, weyl_numerator_near_identity, TorusPoint,
};
use crate::{Error, Result};

pub const DEFAULT_START_SCALE: f64 = 1e-2;
pub const DEFAULT_LEVELS: usize = 6;
/// Number of Richardson elimination steps.
pub const RICHARDSON_ORDER: usize = 3;

/// `sum_{w in W_K \ W_G} tau_{w g}(x)`.
///
/// Near the identity on a real point the coset sum is evaluated as the
/// single quotient `trace_sign * sum_{W_G} eps e^{u Lambda} / D`, which it
/// equals term by term because `D(w g) = eps(w) D(g)`.
pub fn stable_tau(spec: &RealFormSpec, x: &KClass, g: &TorusPoint) -> Result<Complex64> {
    if let Some(v) = stable_tau_near_identity(spec, x, g)? {
        return Ok(v);
    }
    spec.coset_reps()
        .iter()
        .map(|w| tau_at(spec, x, &g.transformed(w)))
        .sum()
}

fn stable_tau_near_identity(
    spec: &RealFormSpec,
    x: &KClass,
    g: &TorusPoint,
) -> Result<Option<Complex64>> {
    if g.is_exact() {
        return Ok(None);
    }
    g.check_rank(spec.rank())?;
    check_regular_for(g, spec.positive().roots())?;
    let order = spec.positive().len();
    let mut numer = Complex64::zero();
    for (key, coeff) in x.terms() {
        let hc = spec.hc_parameter(key);
        match weyl_numerator_near_identity(&hc, g, spec.weyl_group().elements(), order) {
            Some(v) => numer += coeff as f64 * v,
            None => return Ok(None),
        }
    }
    Ok(Some(
        spec.trace_sign() * numer / weyl_denominator(g, spec.positive()),
    ))
}

/// Sum of the coherently continued characters `Theta(w Lambda, w R^+)` over
/// the coset representatives.
pub fn lpacket_sum(spec: &RealFormSpec, hc: &Weight, g: &TorusPoint) -> Result<Complex64> {
    spec.coset_reps()
        .iter()
        .map(|w| lds_character(spec, &w.act(hc), &spec.positive().transformed(w), g))
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitSample {
    pub scale: f64,
    #[serde(with = "crate::serde_complex")]
    pub value: Complex64,
}

/// Samples along `s * theta` for decreasing `s` and their extrapolation to `s = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitReport {
    pub direction: TorusPoint,
    pub samples: Vec<LimitSample>,
    #[serde(with = "crate::serde_complex")]
    pub extrapolated: Complex64,
    pub residual: f64,
}

/// Richardson tableau for values at scales halving at each step.  Returns
/// the last diagonal entry of order `RICHARDSON_ORDER` (or less if there are
/// too few samples) and the size of its last correction.
pub fn richardson(values: &[Complex64]) -> (Complex64, f64) {
    let Some(&last) = values.last() else {
        return (Complex64::zero(), 0.0);
    };
    let order = RICHARDSON_ORDER.min(values.len() - 1);
    let mut prev: Vec<Complex64> = values.to_vec();
    let mut prev_best = last;
    let mut best = last;
    for j in 1..=order {
        let factor = f64::from(1u32 << j) - 1.0;
        let next: Vec<Complex64> = prev
            .windows(2)
            .map(|w| w[1] + (w[1] - w[0]) / factor)
            .collect();
        prev_best = best;
        best = *next.last().expect("at least one entry");
        prev = next;
    }
    (best, (best - prev_best).norm())
}

/// Evaluates at `t_k = s0 2^{-k} theta`, `k = 0..=levels`, and extrapolates.
pub fn limit_at_identity<F>(
    evaluator: F,
    direction: &[f64],
    s0: f64,
    levels: usize,
) -> Result<LimitReport>
where
    F: Fn(&TorusPoint) -> Result<Complex64>,
{
    let theta = TorusPoint::real(direction.to_vec());
    let mut samples = Vec::with_capacity(levels + 1);
    for k in 0..=levels {
        let scale = s0 * 0.5f64.powi(k as i32);
        let value = evaluator(&theta.scaled(scale)).map_err(|e| match e {
            Error::Singular { .. } => Error::GuardTripped { scale },
            other => other,
        })?;
        samples.push(LimitSample { scale, value });
    }
    let values: Vec<Complex64> = samples.iter().map(|s| s.value).collect();
    let (extrapolated, residual) = richardson(&values);
    Ok(LimitReport {
        direction: theta,
        samples,
        extrapolated,
        residual,
    })
}

/// A direction whose pairing with every root has magnitude at least 0.1.
pub fn random_direction<R: Rng + ?Sized>(rng: &mut R, datum: &CartanDatum) -> Vec<f64> {
    loop {
        let theta: Vec<f64> = (0..datum.rank())
            .map(|_| rng.gen_range(-1.0..1.0))
            .collect();
        let ok = datum.positive_roots().iter().all(|a| {
            let p: f64 = a
                .coords2()
                .iter()
                .zip(&theta)
                .map(|(&c, &t)| c as f64 * t)
                .sum::<f64>()
                / 2.0;
            p.abs() >= 0.1
        });
        if ok {
            return theta;
        }
    }
}

/// `|prod_{alpha in R^+} <Lambda, alpha> / <rho, alpha>|`.
pub fn formal_degree(spec: &RealFormSpec, hc: &Weight) -> Rational64 {
    let datum = spec.datum();
    spec.positive()
        .roots()
        .iter()
        .map(|a| datum.pairing(hc, a) / datum.pairing(spec.rho(), a))
        .fold(Rational64::one(), |acc, f| acc * f)
        .abs()
}

/// The value at the identity: formal degrees of the discrete-series terms.
pub fn tau_e(spec: &RealFormSpec, x: &KClass) -> f64 {
    let total: Rational64 = x
        .terms()
        .map(|(key, coeff)| {
            let hc = spec.hc_parameter(key);
            if spec.is_regular_param(&hc) {
                formal_degree(spec, &hc) * coeff
            } else {
                Rational64::zero()
            }
        })
        .sum();
    *total.numer() as f64 / *total.denom() as f64
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuityReport {
    pub limit: LimitReport,
    pub tau_e: f64,
    pub limit_magnitude: f64,
    pub difference: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Compares `|lim_{s -> 0} stable_tau(x, s theta)|` with `|tau_e(x)|`.
pub fn continuity_check(
    spec: &RealFormSpec,
    x: &KClass,
    direction: &[f64],
) -> Result<ContinuityReport> {
    let limit = limit_at_identity(
        |g| stable_tau(spec, x, g),
        direction,
        DEFAULT_START_SCALE,
        DEFAULT_LEVELS,
    )?;
    let expected = tau_e(spec, x);
    let limit_magnitude = limit.extrapolated.norm();
    let difference = (limit_magnitude - expected.abs()).abs();
    let tolerance = 1e-6f64.max(1e-6 * expected.abs());
    Ok(ContinuityReport {
        limit,
        tau_e: expected,
        limit_magnitude,
        difference,
        tolerance,
        pass: difference <= tolerance,
    })
}

/// `|AB(nu; W_G, R^+) - sum_w AB(w nu; W_K, w R^+)|` over the coset representatives.
pub fn char_identity_check(spec: &RealFormSpec, nu: &Weight, g: &TorusPoint) -> Result<f64> {
    let full = ab_fixed_sum(nu, g, spec.weyl_group().elements(), spec.positive())?;
    let mut split = Complex64::zero();
    for w in spec.coset_reps() {
        split += ab_fixed_sum(
            &w.act(nu),
            g,
            spec.weyl_k(),
            &spec.positive().transformed(w),
        )?;
    }
    Ok((full - split).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ktrace::random_regular_point;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn pt(c: &[(i64, i64)]) -> TorusPoint {
        TorusPoint::exact(c.iter().map(|&(p, d)| Rational64::new(p, d)).collect())
    }

    fn gen(spec: &RealFormSpec, c: &[i64]) -> KClass {
        KClass::generator(spec.generator_key(&Weight::from_fundamental(c)).unwrap())
    }

    #[test]
    fn sl2r_stable_sums() {
        let spec = RealFormSpec::preset("sl2r").unwrap();
        let g = pt(&[(1, 7)]);
        assert!(stable_tau(&spec, &gen(&spec, &[0]), &g).unwrap().norm() < 1e-15);
        let th = 2.0 * PI / 7.0;
        let v = stable_tau(&spec, &gen(&spec, &[3]), &g).unwrap();
        assert!((v - Complex64::new((3.0 * th).sin() / th.sin(), 0.0)).norm() < 1e-13);
        let lp = lpacket_sum(&spec, &Weight::from_fundamental(&[3]), &g).unwrap();
        assert!((lp - v).norm() < 1e-13);
    }

    #[test]
    fn near_identity_matches_coset_sum() {
        for name in ["sl2r", "su21", "sp4r", "compact(B2)"] {
            let spec = RealFormSpec::preset(name).unwrap();
            let theta: Vec<f64> = [0.37, -0.81]
                .iter()
                .take(spec.rank())
                .map(|c| 0.05 * c)
                .collect();
            let g = TorusPoint::real(theta);
            for key in spec.keys_in_box(1) {
                let x = KClass::generator(key);
                let direct: Complex64 = spec
                    .coset_reps()
                    .iter()
                    .map(|w| tau_at(&spec, &x, &g.transformed(w)).unwrap())
                    .sum();
                let v = stable_tau(&spec, &x, &g).unwrap();
                assert!(
                    (v - direct).norm() < 1e-9 * (1.0 + direct.norm()),
                    "{name}: {v} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn compact_stable_is_tau() {
        let spec = RealFormSpec::preset("compact(A2)").unwrap();
        let x = gen(&spec, &[1, 1]);
        let g = pt(&[(1, 7), (3, 11)]);
        assert_eq!(
            stable_tau(&spec, &x, &g).unwrap(),
            tau_at(&spec, &x, &g).unwrap()
        );
    }

    #[test]
    fn richardson_on_polynomials() {
        let f = |s: f64| Complex64::new(2.0 + s - 3.0 * s * s + 0.5 * s * s * s, s);
        let v: Vec<Complex64> = (0..7).map(|k| f(0.5f64.powi(k))).collect();
        let (x, _) = richardson(&v);
        assert!((x - Complex64::new(2.0, 0.0)).norm() < 1e-13);
        let (c, r) = richardson(&[Complex64::new(4.0, 1.0); 7]);
        assert_eq!(c, Complex64::new(4.0, 1.0));
        assert_eq!(r, 0.0);
    }

    #[test]
    fn sine_ratio_limit() {
        let eval = |g: &TorusPoint| {
            let t = g.to_real()[0];
            Ok(Complex64::new((3.0 * t).sin() / t.sin(), 0.0))
        };
        let rep = limit_at_identity(eval, &[1.0], DEFAULT_START_SCALE, DEFAULT_LEVELS).unwrap();
        assert!((rep.extrapolated.re - 3.0).abs() < 1e-8);
        assert!(rep.samples.windows(2).all(|w| w[1].scale < w[0].scale));
    }

    #[test]
    fn guard_trips_on_zero_direction() {
        let spec = RealFormSpec::preset("sl2r").unwrap();
        let x = gen(&spec, &[0]);
        let err = limit_at_identity(|g| stable_tau(&spec, &x, g), &[0.0], 1e-2, 6).unwrap_err();
        assert!(matches!(err, Error::GuardTripped { .. }));
    }

    #[test]
    fn formal_degrees() {
        let sl2 = RealFormSpec::preset("sl2r").unwrap();
        for n in 0..6 {
            assert_eq!(
                formal_degree(&sl2, &Weight::from_fundamental(&[n])),
                Rational64::from_integer(n)
            );
        }
        assert_eq!(tau_e(&sl2, &gen(&sl2, &[0])), 0.0);
        assert_eq!(tau_e(&sl2, &gen(&sl2, &[3])), 3.0);
        assert_eq!(tau_e(&sl2, &KClass::zero()), 0.0);
        let a2 = RealFormSpec::preset("compact(A2)").unwrap();
        for c in [[0, 0], [1, 0], [1, 1], [2, 1], [0, 3]] {
            let lam = Weight::from_fundamental(&c);
            let hc = &lam + a2.rho();
            assert_eq!(formal_degree(&a2, &hc), a2.datum().weyl_dim(&lam).unwrap());
        }
    }

    #[test]
    fn continuity_on_sl2r() {
        let spec = RealFormSpec::preset("sl2r").unwrap();
        let rep = continuity_check(&spec, &gen(&spec, &[3]), &[0.731]).unwrap();
        assert!(rep.pass, "{rep:?}");
        let rep = continuity_check(&spec, &gen(&spec, &[0]), &[0.731]).unwrap();
        assert!(rep.limit_magnitude < 1e-10);
    }

    #[test]
    fn char_identity_residuals() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for name in ["sl2r", "su21", "sp4r", "compact(B2)"] {
            let spec = RealFormSpec::preset(name).unwrap();
            for _ in 0..10 {
                let g = random_regular_point(&mut rng, spec.datum());
                let r = char_identity_check(&spec, spec.rho(), &g).unwrap();
                assert!(r <= 1e-10, "{name}: {r}");
            }
        }
    }
}
