//! Torus points and exponential sums on the maximal torus.
//!
//! A point with coordinates `t` stands for `exp(2 pi sum_j t_j x_j)`, the
//! `x_j` being the simple coroots; a weight with fundamental coordinates
//! `lambda` evaluates to `exp(2 pi i sum_j lambda_j t_j)` there. Pairings
//! are formed exactly (rational mode) and reduced to `(-1/2, 1/2]` before
//! the single transcendental call.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::realform::{PositiveSystem, RealFormSpec};
use crate::rootsys::{CartanDatum, Weight, WeylElement};
use crate::{Error, Result};

/// Per-factor magnitude below which a real-mode point counts as singular.
pub const SINGULAR_GUARD: f64 = 1e-13;

/// A torus point in exact rational or real (limit-path) coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum TorusPoint {
    Exact(Vec<Rational64>),
    Real(Vec<f64>),
}

fn reduce_mod_one(r: Rational64) -> Rational64 {
    r - r.floor()
}

/// Half-integral weights have period 2 in each coordinate.
fn reduce_mod_two(r: Rational64) -> Rational64 {
    let two = Rational64::from_integer(2);
    r - (r / two).floor() * two
}

impl TorusPoint {
    /// Exact point; coordinates are reduced into `[0, 2)`, the period of
    /// the half-weight lattice.
    pub fn exact(coords: Vec<Rational64>) -> Self {
        TorusPoint::Exact(coords.into_iter().map(reduce_mod_two).collect())
    }

    pub fn real(coords: Vec<f64>) -> Self {
        TorusPoint::Real(coords)
    }

    pub fn rank(&self) -> usize {
        match self {
            TorusPoint::Exact(c) => c.len(),
            TorusPoint::Real(c) => c.len(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, TorusPoint::Exact(_))
    }

    /// Parses `"1/5"`, `"1/3, 2/7"` or `"0.01 0.02"`; any decimal entry makes
    /// the whole point real-mode.
    pub fn parse(input: &str) -> Result<Self> {
        let body = input
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        let parts: Vec<&str> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        if parts.is_empty() {
            return Err(Error::parse("torus point", input));
        }
        let exact: Option<Vec<Rational64>> = parts.iter().map(|p| parse_rational(p)).collect();
        if let Some(coords) = exact {
            return Ok(TorusPoint::exact(coords));
        }
        parts
            .iter()
            .map(|p| match parse_rational(p) {
                Some(r) => Some(rational_to_f64(&r)),
                None => p.parse::<f64>().ok().filter(|v| v.is_finite()),
            })
            .collect::<Option<Vec<f64>>>()
            .map(TorusPoint::Real)
            .ok_or_else(|| Error::parse("torus point", input))
    }

    pub fn to_real(&self) -> Vec<f64> {
        match self {
            TorusPoint::Exact(c) => c.iter().map(rational_to_f64).collect(),
            TorusPoint::Real(c) => c.clone(),
        }
    }

    /// `w . g`, the action induced by conjugation.
    pub fn transformed(&self, w: &WeylElement) -> TorusPoint {
        match self {
            TorusPoint::Exact(c) => TorusPoint::exact(w.act_on_rational(c)),
            TorusPoint::Real(c) => TorusPoint::Real(w.act_on_real(c)),
        }
    }

    /// Real point `s * t`.
    pub fn scaled(&self, s: f64) -> TorusPoint {
        TorusPoint::Real(self.to_real().into_iter().map(|x| x * s).collect())
    }

    pub fn coordinate_strings(&self) -> Vec<String> {
        match self {
            TorusPoint::Exact(c) => c.iter().map(|r| r.to_string()).collect(),
            TorusPoint::Real(c) => c.iter().map(|x| format!("{x:?}")).collect(),
        }
    }

    pub(crate) fn check_rank(&self, expected: usize) -> Result<()> {
        if self.rank() == expected {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                expected,
                found: self.rank(),
            })
        }
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coordinate_strings().join(", "))
    }
}

impl Serialize for TorusPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coordinate_strings().serialize(serializer)
    }
}

fn parse_rational(s: &str) -> Option<Rational64> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().ok()?;
            let q: i64 = q.trim().parse().ok()?;
            (q != 0).then(|| Rational64::new(p, q))
        }
        None => s.parse::<i64>().ok().map(Rational64::from_integer),
    }
}

fn rational_to_f64(r: &Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Where a class is evaluated: an elliptic torus point, or one of the two
/// situations in which every index class has vanishing orbital integral.
#[derive(Debug, Clone, PartialEq)]
pub enum ConjugacyDescriptor {
    Elliptic(TorusPoint),
    NonElliptic,
    UnequalRankAmbient,
}

impl ConjugacyDescriptor {
    /// Parses `non-elliptic`, `unequal-rank`, or a torus point (optionally
    /// prefixed `elliptic:`).
    pub fn parse(input: &str) -> Result<Self> {
        let s = input.trim();
        match s.to_ascii_lowercase().as_str() {
            "non-elliptic" | "nonelliptic" => Ok(ConjugacyDescriptor::NonElliptic),
            "unequal-rank" | "unequal-rank-ambient" => Ok(ConjugacyDescriptor::UnequalRankAmbient),
            _ => {
                let point = s.strip_prefix("elliptic:").unwrap_or(s);
                TorusPoint::parse(point).map(ConjugacyDescriptor::Elliptic)
            }
        }
    }
}

/// `<lambda, t>` reduced into `(-1/2, 1/2]`.
enum Phase {
    Exact(Rational64),
    Real(f64),
}

impl Phase {
    /// `(cos, sin)` of `2 pi * phase`, exact at multiples of a quarter turn.
    fn cos_sin(&self) -> (f64, f64) {
        match self {
            Phase::Exact(r) => {
                if *r.denom() <= 4 && (*r * Rational64::from_integer(4)).is_integer() {
                    match (*r * Rational64::from_integer(4)).to_integer() {
                        0 => (1.0, 0.0),
                        1 => (0.0, 1.0),
                        -1 => (0.0, -1.0),
                        _ => (-1.0, 0.0),
                    }
                } else {
                    let (s, c) = (TAU * rational_to_f64(r)).sin_cos();
                    (c, s)
                }
            }
            Phase::Real(x) => {
                let (s, c) = (TAU * x).sin_cos();
                (c, s)
            }
        }
    }
}

fn phase(lambda: &Weight, g: &TorusPoint) -> Phase {
    match g {
        TorusPoint::Exact(t) => {
            let raw: Rational64 = lambda
                .coords2()
                .iter()
                .zip(t)
                .map(|(&c, &x)| Rational64::from_integer(c) * x)
                .sum::<Rational64>()
                / Rational64::from_integer(2);
            let mut r = reduce_mod_one(raw);
            if r > Rational64::new(1, 2) {
                r -= Rational64::one();
            }
            Phase::Exact(r)
        }
        TorusPoint::Real(t) => {
            let raw: f64 = lambda
                .coords2()
                .iter()
                .zip(t)
                .map(|(&c, &x)| c as f64 * x)
                .sum::<f64>()
                / 2.0;
            Phase::Real(raw - raw.round())
        }
    }
}

/// Exact test `<lambda, t> in Z`.
fn pairs_to_integer(lambda: &Weight, t: &[Rational64]) -> bool {
    let raw: Rational64 = lambda
        .coords2()
        .iter()
        .zip(t)
        .map(|(&c, &x)| Rational64::from_integer(c) * x)
        .sum::<Rational64>()
        / Rational64::from_integer(2);
    raw.is_integer()
}

/// `e^lambda(g)`.
pub fn eval_weight(lambda: &Weight, g: &TorusPoint) -> Complex64 {
    debug_assert_eq!(lambda.rank(), g.rank());
    let (c, s) = phase(lambda, g).cos_sin();
    Complex64::new(c, s)
}

/// `e^{alpha/2}(g) - e^{-alpha/2}(g)`, formed as `2i Im e^{alpha/2}(g)`.
pub fn half_root_factor(alpha: &Weight, g: &TorusPoint) -> Complex64 {
    let half = alpha.half().expect("roots are integral");
    Complex64::new(0.0, 2.0 * phase(&half, g).cos_sin().1)
}

/// Exact regularity: no root pairs to an integer with `t`.
pub fn is_regular(g: &TorusPoint, datum: &CartanDatum) -> Result<bool> {
    g.check_rank(datum.rank())?;
    match g {
        TorusPoint::Exact(t) => Ok(datum
            .positive_roots()
            .iter()
            .all(|a| !pairs_to_integer(a, t))),
        TorusPoint::Real(_) => Err(Error::InexactPoint),
    }
}

/// Fails with the first root of `roots` whose factor vanishes at `g`:
/// exactly in rational mode, below [`SINGULAR_GUARD`] in real mode.
pub fn check_regular_for(g: &TorusPoint, roots: &[Weight]) -> Result<()> {
    for alpha in roots {
        let singular = match g {
            TorusPoint::Exact(t) => pairs_to_integer(alpha, t),
            TorusPoint::Real(_) => half_root_factor(alpha, g).norm() < SINGULAR_GUARD,
        };
        if singular {
            return Err(Error::Singular {
                root: alpha.clone(),
            });
        }
    }
    Ok(())
}

/// `sum_{w in W} eps(w) e^{w mu}(g)`.
pub fn weyl_numerator(mu: &Weight, g: &TorusPoint, group: &[WeylElement]) -> Complex64 {
    group
        .iter()
        .map(|w| f64::from(w.sign()) * eval_weight(&w.act(mu), g))
        .sum()
}

/// `weyl_numerator` at a real point near the identity, for `group` the Weyl
/// group of a root system with `order` positive roots. The sum vanishes
/// there to that order, so each exponential is replaced by its Taylor tail
/// from degree `order` on and nothing cancels. `None` at exact points or if
/// some phase is too large for the tail series.
pub fn weyl_numerator_near_identity(
    mu: &Weight,
    g: &TorusPoint,
    group: &[WeylElement],
    order: usize,
) -> Option<Complex64> {
    let TorusPoint::Real(t) = g else {
        return None;
    };
    let mut total = Complex64::zero();
    for w in group {
        let raw: f64 = w
            .act(mu)
            .coords2()
            .iter()
            .zip(t)
            .map(|(&c, &x)| c as f64 * x)
            .sum::<f64>()
            / 2.0;
        let z = Complex64::new(0.0, TAU * raw);
        if z.norm() > 1.0 {
            return None;
        }
        total += f64::from(w.sign()) * exp_tail(z, order);
    }
    Some(total)
}

/// `sum_{n >= order} z^n / n!` for `|z| <= 1`.
fn exp_tail(z: Complex64, order: usize) -> Complex64 {
    let mut term = Complex64::one();
    for n in 1..=order {
        term *= z / n as f64;
    }
    let mut sum = Complex64::zero();
    let mut n = order;
    while term.norm() > 1e-18 * sum.norm() || sum.is_zero() {
        sum += term;
        n += 1;
        term *= z / n as f64;
        if term.is_zero() {
            break;
        }
    }
    sum
}

/// `prod_{alpha in R'^+} (e^{alpha/2} - e^{-alpha/2})(g)`.
pub fn weyl_denominator(g: &TorusPoint, positive: &PositiveSystem) -> Complex64 {
    positive
        .roots()
        .iter()
        .map(|a| half_root_factor(a, g))
        .product()
}

/// Character of the graded spinor module on the torus:
/// `spin_sign * prod_{alpha in R_n^+} (e^{alpha/2} - e^{-alpha/2})`.
pub fn delta_p_char(g: &TorusPoint, spec: &RealFormSpec) -> Complex64 {
    f64::from(spec.spin_sign()) * weyl_denominator(g, spec.noncompact_positive())
}

/// Localization sum over the fixed points `W_fix`:
/// `sum_w e^{w nu}(g) / prod_{alpha in R'^+} (1 - e^{-w alpha}(g))`.
pub fn ab_fixed_sum(
    nu: &Weight,
    g: &TorusPoint,
    fixed: &[WeylElement],
    positive: &PositiveSystem,
) -> Result<Complex64> {
    g.check_rank(nu.rank())?;
    check_regular_for(g, positive.roots())?;
    Ok(fixed
        .iter()
        .map(|w| {
            let numer = eval_weight(&w.act(nu), g);
            let denom: Complex64 = positive
                .roots()
                .iter()
                .map(|a| Complex64::one() - eval_weight(&-w.act(a), g))
                .product();
            numer / denom
        })
        .sum())
}

/// `weyl_numerator(mu, g, W) / weyl_denominator(g, R'^+)`.
pub fn char_quotient(
    mu: &Weight,
    g: &TorusPoint,
    group: &[WeylElement],
    positive: &PositiveSystem,
) -> Result<Complex64> {
    g.check_rank(mu.rank())?;
    check_regular_for(g, positive.roots())?;
    let denom = weyl_denominator(g, positive);
    if denom.is_zero() {
        return Err(Error::Singular {
            root: positive
                .roots()
                .first()
                .cloned()
                .unwrap_or_else(|| Weight::zero(mu.rank())),
        });
    }
    let numer = weyl_numerator_near_identity(mu, g, group, positive.len())
        .unwrap_or_else(|| weyl_numerator(mu, g, group));
    Ok(numer / denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational64 {
        Rational64::new(p, d)
    }

    fn w(c: &[i64]) -> Weight {
        Weight::from_fundamental(c)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn eval_weight_examples() {
        let t = TorusPoint::exact(vec![q(1, 4)]);
        assert!(close(eval_weight(&w(&[1]), &t), Complex64::i(), 1e-15));
        assert!(close(
            eval_weight(&w(&[4]).half().unwrap(), &t),
            Complex64::new(-1.0, 0.0),
            1e-15
        ));
        assert_eq!(eval_weight(&w(&[0]), &t), Complex64::one());
        let a2 = TorusPoint::exact(vec![q(3, 7), q(-5, 11)]);
        assert!((eval_weight(&Weight::from_doubled(vec![3, -1]), &a2).norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn exact_points_reduce_mod_two() {
        let t = TorusPoint::exact(vec![q(11, 5), q(-1, 3)]);
        assert_eq!(t, TorusPoint::Exact(vec![q(1, 5), q(5, 3)]));
        assert_eq!(t.to_string(), "(1/5, 5/3)");
        // e^{omega/2} changes sign under t -> t + 1
        let half = Weight::from_doubled(vec![1]);
        let a = eval_weight(&half, &TorusPoint::exact(vec![q(1, 5)]));
        let b = eval_weight(&half, &TorusPoint::exact(vec![q(6, 5)]));
        assert!((a + b).norm() < 1e-15);
    }

    #[test]
    fn parse_infers_mode() {
        assert!(TorusPoint::parse("1/5").unwrap().is_exact());
        assert!(TorusPoint::parse("(1/3, 2)").unwrap().is_exact());
        assert!(!TorusPoint::parse("0.25, 1/3").unwrap().is_exact());
        assert!(TorusPoint::parse("x").is_err());
        assert!(TorusPoint::parse("1/0").is_err());
    }

    #[test]
    fn regularity_examples() {
        let a1 = CartanDatum::named("A1").unwrap();
        assert!(!is_regular(&TorusPoint::exact(vec![q(1, 2)]), &a1).unwrap());
        assert!(is_regular(&TorusPoint::exact(vec![q(1, 5)]), &a1).unwrap());
        assert_eq!(
            is_regular(&TorusPoint::real(vec![0.2]), &a1),
            Err(Error::InexactPoint)
        );
    }

    /// Brute-force pairing of all six A2 roots against a point.
    fn a2_regular_oracle(t: [Rational64; 2]) -> bool {
        let roots = [[2, -1], [-1, 2], [1, 1], [-2, 1], [1, -2], [-1, -1]];
        roots.iter().all(|r| {
            !(Rational64::from_integer(r[0]) * t[0] + Rational64::from_integer(r[1]) * t[1])
                .is_integer()
        })
    }

    #[test]
    fn a2_regularity_matches_enumeration() {
        let a2 = CartanDatum::named("A2").unwrap();
        for (a, b) in [
            (q(1, 3), q(1, 3)),
            (q(1, 3), q(2, 3)),
            (q(1, 2), q(0, 1)),
            (q(1, 5), q(2, 7)),
            (q(1, 2), q(1, 2)),
        ] {
            let expected = a2_regular_oracle([a, b]);
            assert_eq!(
                is_regular(&TorusPoint::exact(vec![a, b]), &a2).unwrap(),
                expected,
                "({a}, {b})"
            );
        }
        // (1/3, 1/3) is diag(e^{2 pi i/3}, 1, e^{-2 pi i/3}) in SU(3): regular
        assert!(a2_regular_oracle([q(1, 3), q(1, 3)]));
        assert!(!a2_regular_oracle([q(1, 3), q(2, 3)]));
    }

    #[test]
    fn near_identity_numerator_matches_direct_sum() {
        let d = CartanDatum::named("B2").unwrap();
        let g = d.weyl_group();
        let mu = w(&[3, 1]);
        let t = TorusPoint::real(vec![0.004, -0.011]);
        let direct = weyl_numerator(&mu, &t, g.elements());
        let tail = weyl_numerator_near_identity(&mu, &t, g.elements(), 4).unwrap();
        assert!((direct - tail).norm() < 1e-12 * (1.0 + direct.norm()));
        assert!(weyl_numerator_near_identity(
            &mu,
            &TorusPoint::real(vec![0.4, 0.1]),
            g.elements(),
            4
        )
        .is_none());
        assert!(
            (exp_tail(Complex64::new(0.0, 0.5), 0) - Complex64::new(0.0, 0.5).exp()).norm() < 1e-15
        );
    }

    #[test]
    fn numerator_examples() {
        let d = CartanDatum::named("A1").unwrap();
        let g = d.weyl_group();
        let t = TorusPoint::exact(vec![q(1, 4)]);
        let trivial = &g.elements()[..1];
        assert_eq!(
            weyl_numerator(&w(&[1]), &t, trivial),
            eval_weight(&w(&[1]), &t)
        );
        assert!(close(
            weyl_numerator(&w(&[1]), &t, g.elements()),
            Complex64::new(0.0, 2.0),
            1e-15
        ));
        let s = g.element(g.generators()[0]);
        let mu = w(&[3]);
        assert!(close(
            weyl_numerator(&s.act(&mu), &t, g.elements()),
            -weyl_numerator(&mu, &t, g.elements()),
            1e-15
        ));
    }

    #[test]
    fn denominator_examples() {
        let d = CartanDatum::named("A1").unwrap();
        let pos = PositiveSystem::standard(&d);
        let t = TorusPoint::exact(vec![q(1, 4)]);
        assert!(close(
            weyl_denominator(&t, &pos),
            Complex64::new(0.0, 2.0),
            1e-15
        ));
        assert_eq!(
            weyl_denominator(&TorusPoint::exact(vec![q(1, 2)]), &pos).norm(),
            0.0
        );
    }

    #[test]
    fn delta_p_examples() {
        let sl2 = RealFormSpec::preset("sl2r").unwrap();
        let t = TorusPoint::exact(vec![q(1, 5)]);
        let expected = Complex64::new(0.0, -2.0 * (TAU / 5.0).sin());
        assert!(close(delta_p_char(&t, &sl2), expected, 1e-15));
        let c = RealFormSpec::preset("compact(A2)").unwrap();
        assert_eq!(
            delta_p_char(&TorusPoint::exact(vec![q(1, 5), q(1, 7)]), &c),
            Complex64::one()
        );
    }

    #[test]
    fn ab_fixed_sum_examples() {
        let d = CartanDatum::named("A1").unwrap();
        let pos = PositiveSystem::standard(&d);
        let g = d.weyl_group();
        let t = TorusPoint::exact(vec![q(1, 4)]);
        let single = ab_fixed_sum(&w(&[0]), &t, &g.elements()[..1], &pos).unwrap();
        assert!(close(single, Complex64::new(0.5, 0.0), 1e-15));
        let t6 = TorusPoint::exact(vec![q(1, 6)]);
        let full = ab_fixed_sum(&w(&[1]), &t6, g.elements(), &pos).unwrap();
        assert!(close(full, Complex64::new(1.0, 0.0), 1e-14));
        assert!(ab_fixed_sum(
            &w(&[1]),
            &TorusPoint::exact(vec![q(0, 1)]),
            g.elements(),
            &pos
        )
        .is_err());
    }

    #[test]
    fn char_quotient_examples() {
        let d = CartanDatum::named("A1").unwrap();
        let pos = PositiveSystem::standard(&d);
        let g = d.weyl_group();
        let t6 = TorusPoint::exact(vec![q(1, 6)]);
        assert!(close(
            char_quotient(&w(&[2]), &t6, g.elements(), &pos).unwrap(),
            Complex64::one(),
            1e-14
        ));
        let rho = w(&[1]);
        assert!(close(
            char_quotient(&rho, &t6, g.elements(), &pos).unwrap(),
            Complex64::one(),
            1e-14
        ));
        let t5 = TorusPoint::exact(vec![q(1, 5)]);
        let sl2 = char_quotient(&w(&[0]), &t5, &g.elements()[..1], &pos).unwrap();
        let expected = Complex64::new(1.0, 0.0) / Complex64::new(0.0, 2.0 * (TAU / 5.0).sin());
        assert!(close(sl2, expected, 1e-15));
    }

    #[test]
    fn singular_quotient_reports_the_root() {
        let d = CartanDatum::named("A1").unwrap();
        let pos = PositiveSystem::standard(&d);
        let g = d.weyl_group();
        let err = char_quotient(
            &w(&[1]),
            &TorusPoint::exact(vec![q(1, 2)]),
            g.elements(),
            &pos,
        )
        .unwrap_err();
        assert_eq!(err, Error::Singular { root: w(&[2]) });
        let err = char_quotient(&w(&[1]), &TorusPoint::real(vec![1e-15]), g.elements(), &pos)
            .unwrap_err();
        assert!(err.is_singular());
    }

    #[test]
    fn torus_action_matches_weight_action() {
        let d = CartanDatum::named("G2").unwrap();
        let g = d.weyl_group();
        let t = TorusPoint::exact(vec![q(2, 13), q(5, 17)]);
        let lambda = w(&[2, -1]);
        for e in g.elements() {
            let inv = g.element(g.find(e.inverse_matrix()).unwrap());
            let lhs = eval_weight(&lambda, &t.transformed(e));
            let rhs = eval_weight(&inv.act(&lambda), &t);
            assert!(close(lhs, rhs, 1e-14));
        }
    }
}
