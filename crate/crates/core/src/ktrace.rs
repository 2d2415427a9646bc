//! The orbital-integral trace `tau_g` on generators and classes, its
//! vanishing off the elliptic set, class distinguishing by random sampling,
//! and (limits of) discrete-series character values.

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::realform::{GeneratorKey, KClass, PositiveSystem, RealFormSpec};
use crate::rootsys::{CartanDatum, Weight};
use crate::toruschar::{
    char_quotient, check_regular_for, delta_p_char, weyl_denominator, weyl_numerator,
    weyl_numerator_near_identity, ConjugacyDescriptor, TorusPoint,
};
use crate::{Error, Result};

/// Values below this magnitude count as zero when looking for a witness.
pub const WITNESS_THRESHOLD: f64 = 1e-8;

/// Primes up to 997, used as denominators of random torus points.
const PRIMES: [i64; 168] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307,
    311, 313, 317, 331, 337, 347, 349, 353, 359, 367, 373, 379, 383, 389, 397, 401, 409, 419, 421,
    431, 433, 439, 443, 449, 457, 461, 463, 467, 479, 487, 491, 499, 503, 509, 521, 523, 541, 547,
    557, 563, 569, 571, 577, 587, 593, 599, 601, 607, 613, 617, 619, 631, 641, 643, 647, 653, 659,
    661, 673, 677, 683, 691, 701, 709, 719, 727, 733, 739, 743, 751, 757, 761, 769, 773, 787, 797,
    809, 811, 821, 823, 827, 829, 839, 853, 857, 859, 863, 877, 881, 883, 887, 907, 911, 919, 929,
    937, 941, 947, 953, 967, 971, 977, 983, 991, 997,
];

/// `tau_g` of one generator, computed along both routes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TauValue {
    #[serde(with = "crate::serde_complex")]
    pub value: Complex64,
    /// Weyl numerator over `W_K` divided by the full Weyl denominator.
    #[serde(with = "crate::serde_complex")]
    pub path_a: Complex64,
    /// `chi_V / chi_{Delta p}` with the parity sign.
    #[serde(with = "crate::serde_complex")]
    pub path_b: Complex64,
}

impl TauValue {
    pub fn discrepancy(&self) -> f64 {
        (self.path_a - self.path_b).norm()
    }
}

fn parity(spec: &RealFormSpec) -> f64 {
    if spec.noncompact_positive().len().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn check_point(spec: &RealFormSpec, g: &TorusPoint) -> Result<()> {
    if g.rank() != spec.rank() {
        return Err(Error::RankMismatch {
            expected: spec.rank(),
            found: g.rank(),
        });
    }
    check_regular_for(g, spec.positive().roots())
}

/// `tau_g(gen(lambda))` at a regular torus point.
pub fn tau_generator(spec: &RealFormSpec, key: &GeneratorKey, g: &TorusPoint) -> Result<TauValue> {
    check_point(spec, g)?;
    let hc = spec.hc_parameter(key);
    let numer = weyl_numerator_near_identity(&hc, g, spec.weyl_k(), spec.compact_positive().len())
        .unwrap_or_else(|| weyl_numerator(&hc, g, spec.weyl_k()));
    let path_a = spec.trace_sign() * numer / weyl_denominator(g, spec.positive());
    let chi_v = char_quotient(&hc, g, spec.weyl_k(), spec.compact_positive())?;
    let path_b = parity(spec) * chi_v / delta_p_char(g, spec);
    Ok(TauValue {
        value: path_a,
        path_a,
        path_b,
    })
}

/// `tau_d(x)`; identically zero on non-elliptic and unequal-rank descriptors.
pub fn tau_class(spec: &RealFormSpec, x: &KClass, d: &ConjugacyDescriptor) -> Result<Complex64> {
    match d {
        ConjugacyDescriptor::NonElliptic | ConjugacyDescriptor::UnequalRankAmbient => {
            Ok(Complex64::zero())
        }
        ConjugacyDescriptor::Elliptic(g) => tau_at(spec, x, g),
    }
}

/// `tau_g(x)` at an elliptic torus point.
pub fn tau_at(spec: &RealFormSpec, x: &KClass, g: &TorusPoint) -> Result<Complex64> {
    check_point(spec, g)?;
    let mut total = Complex64::zero();
    for (key, coeff) in x.terms() {
        total += coeff as f64 * tau_generator(spec, key, g)?.value;
    }
    Ok(total)
}

/// Outcome of [`class_is_zero`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub zero: bool,
    pub witness: Option<TorusPoint>,
    #[serde(with = "crate::serde_complex::option")]
    pub value: Option<Complex64>,
    pub samples_used: usize,
}

/// A uniformly drawn exact-regular point in `[0, 2)^r` with prime denominators.
pub fn random_regular_point<R: Rng + ?Sized>(rng: &mut R, datum: &CartanDatum) -> TorusPoint {
    loop {
        let coords: Vec<Rational64> = (0..datum.rank())
            .map(|_| {
                let q = PRIMES[rng.gen_range(0..PRIMES.len())];
                Rational64::new(rng.gen_range(0..2 * q), q)
            })
            .collect();
        let g = TorusPoint::exact(coords);
        if check_regular_for(&g, datum.positive_roots()).is_ok() {
            return g;
        }
    }
}

/// Decides `x = 0` by evaluating `tau` at `samples` seeded random regular points.
pub fn class_is_zero(
    spec: &RealFormSpec,
    x: &KClass,
    samples: usize,
    seed: u64,
) -> Result<Verdict> {
    if x.is_zero() {
        return Ok(Verdict {
            zero: true,
            witness: None,
            value: None,
            samples_used: 0,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let g = random_regular_point(&mut rng, spec.datum());
        let value = tau_at(spec, x, &g)?;
        if value.norm() > WITNESS_THRESHOLD {
            return Ok(Verdict {
                zero: false,
                witness: Some(g),
                value: Some(value),
                samples_used: i + 1,
            });
        }
    }
    Ok(Verdict {
        zero: true,
        witness: None,
        value: None,
        samples_used: samples,
    })
}

/// Coherently continued character of the (limit of) discrete series with
/// parameter `Lambda` and chamber `R'^+`.
pub fn lds_character(
    spec: &RealFormSpec,
    hc: &Weight,
    positive: &PositiveSystem,
    g: &TorusPoint,
) -> Result<Complex64> {
    spec.datum().check_rank(hc)?;
    if g.rank() != spec.rank() {
        return Err(Error::RankMismatch {
            expected: spec.rank(),
            found: g.rank(),
        });
    }
    check_regular_for(g, positive.roots())?;
    Ok(spec.trace_sign() * weyl_numerator(hc, g, spec.weyl_k()) / weyl_denominator(g, positive))
}

/// Sum of [`lds_character`] over the supplied chambers.
pub fn schmid_sum(
    spec: &RealFormSpec,
    hc: &Weight,
    systems: &[PositiveSystem],
    g: &TorusPoint,
) -> Result<Complex64> {
    systems.iter().map(|p| lds_character(spec, hc, p, g)).sum()
}
