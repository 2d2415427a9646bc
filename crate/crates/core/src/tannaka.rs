//! Reconstruction from sampled trace functions: dimensions from ratio limits
//! at the identity, characters from ratios against the one-dimensional
//! label, highest weights by discrete Fourier extraction, and the
//! noncompact roots (up to sign) by fitting the logarithmic derivative of
//! `|psi|`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ktrace::tau_generator;
use crate::realform::{GeneratorKey, PositiveSystem, RealFormSpec};
use crate::rootsys::{CartanDatum, Weight};
use crate::stable::{random_direction, richardson, DEFAULT_LEVELS, DEFAULT_START_SCALE};
use crate::toruschar::TorusPoint;
use crate::{Error, Result};

/// Fourier coefficients above this magnitude count as weights.
pub const WEIGHT_THRESHOLD: f64 = 0.5;
/// Tolerance on recovered dimensions before rounding.
pub const DIM_TOLERANCE: f64 = 1e-3;
/// RMS bound for accepting a noncompact weight fit.
pub const FIT_TOLERANCE: f64 = 1e-6;
pub const DEFAULT_WEIGHT_BOX: i64 = 4;
pub const DEFAULT_CANDIDATE_BOX: i64 = 3;
const PROBE_STEP: f64 = 1e-4;
const PROBE_BASES: usize = 6;

/// Uniform grid `t = offset + 2k/N` on `[0, 2)^r`, which is one full period
/// for weights in the half-weight lattice.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    pub per_axis: usize,
    pub offset: Vec<f64>,
}

impl GridSpec {
    pub fn new(per_axis: usize, offset: Vec<f64>) -> Result<Self> {
        if per_axis < 2 || offset.is_empty() {
            return Err(Error::Reconstruction(
                "grid needs at least 2 points on each of r >= 1 axes".into(),
            ));
        }
        Ok(GridSpec { per_axis, offset })
    }

    /// 64 points per axis up to rank 2, 32 for rank 3 and above, with an
    /// offset chosen to stay far from every root hyperplane.
    pub fn for_datum(datum: &CartanDatum) -> Self {
        let rank = datum.rank();
        let per_axis = if rank <= 2 { 64 } else { 32 };
        let step = 2.0 / per_axis as f64;
        // Kronecker sequence in the cell; keep the draw whose worst root distance is largest.
        let golden: Vec<f64> = (0..rank).map(|j| (2.0 + j as f64).sqrt().fract()).collect();
        let mut best = (f64::NEG_INFINITY, vec![0.0; rank]);
        for k in 1..=64 {
            let cell: Vec<f64> = golden.iter().map(|g| (k as f64 * g).fract()).collect();
            let worst = datum
                .positive_roots()
                .iter()
                .map(|a| {
                    let p = pair_real(a, &cell);
                    let d = p - p.round();
                    d.abs()
                })
                .fold(f64::INFINITY, f64::min);
            if worst > best.0 {
                best = (worst, cell);
            }
        }
        GridSpec {
            per_axis,
            offset: best.1.iter().map(|c| c * step).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.offset.len()
    }

    pub fn len(&self) -> usize {
        self.per_axis.pow(self.rank() as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Grid points with axis 0 varying fastest.
    pub fn points(&self) -> Vec<Vec<f64>> {
        let n = self.per_axis;
        let step = 2.0 / n as f64;
        (0..self.len())
            .map(|mut idx| {
                self.offset
                    .iter()
                    .map(|&o| {
                        let k = idx % n;
                        idx /= n;
                        o + step * k as f64
                    })
                    .collect()
            })
            .collect()
    }
}

/// Base point, unit direction and step for a five-point derivative stencil.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Probe {
    pub base: Vec<f64>,
    pub direction: Vec<f64>,
    pub step: f64,
}

impl Probe {
    const OFFSETS: [f64; 4] = [-2.0, -1.0, 1.0, 2.0];

    fn points(&self) -> Vec<TorusPoint> {
        Self::OFFSETS
            .iter()
            .map(|&k| {
                TorusPoint::real(
                    self.base
                        .iter()
                        .zip(&self.direction)
                        .map(|(b, d)| b + k * self.step * d)
                        .collect(),
                )
            })
            .collect()
    }

    /// Derivative along the direction from values at the four offsets.
    fn derivative(&self, f: [f64; 4]) -> f64 {
        (f[0] - 8.0 * f[1] + 8.0 * f[2] - f[3]) / (12.0 * self.step)
    }
}

/// Near-identity samples `s_k theta`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ray {
    pub direction: Vec<f64>,
    pub scales: Vec<f64>,
}

impl Ray {
    pub fn new(direction: Vec<f64>) -> Self {
        let scales = (0..=DEFAULT_LEVELS)
            .map(|k| DEFAULT_START_SCALE * 0.5f64.powi(k as i32))
            .collect();
        Ray { direction, scales }
    }

    fn points(&self) -> Vec<TorusPoint> {
        let theta = TorusPoint::real(self.direction.clone());
        self.scales.iter().map(|&s| theta.scaled(s)).collect()
    }
}

/// Where the trace functions are sampled.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleLayout {
    pub grid: GridSpec,
    pub ray: Ray,
    pub probes: Vec<Probe>,
}

impl SampleLayout {
    /// Default grid, a seeded generic ray, and probes at seeded base points
    /// along each coordinate axis and one extra generic direction.
    pub fn for_datum(datum: &CartanDatum, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ray = Ray::new(random_direction(&mut rng, datum));
        let rank = datum.rank();
        let mut directions: Vec<Vec<f64>> = (0..rank)
            .map(|j| (0..rank).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        if rank > 1 {
            let d: Vec<f64> = (0..rank).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let norm = d.iter().map(|x| x * x).sum::<f64>().sqrt();
            directions.push(d.iter().map(|x| x / norm).collect());
        }
        let mut probes = Vec::new();
        while probes.len() < PROBE_BASES * directions.len() {
            let base: Vec<f64> = (0..rank).map(|_| rng.gen_range(0.0..1.0)).collect();
            let far = datum
                .positive_roots()
                .iter()
                .all(|a| (PI * pair_real(a, &base)).sin().abs() > 0.2);
            if far {
                for d in &directions {
                    probes.push(Probe {
                        base: base.clone(),
                        direction: d.clone(),
                        step: PROBE_STEP,
                    });
                }
            }
        }
        SampleLayout {
            grid: GridSpec::for_datum(datum),
            ray,
            probes,
        }
    }
}

/// Samples `chi_j(g) = tau_g(e_j)` of a list of generators.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiFamily {
    pub labels: Vec<GeneratorKey>,
    pub layout: SampleLayout,
    /// `[label][grid point]`
    pub grid_values: Vec<Vec<Complex64>>,
    /// `[label][scale]`
    pub ray_values: Vec<Vec<Complex64>>,
    /// `[label][probe][offset]`
    pub probe_values: Vec<Vec<[Complex64; 4]>>,
}

impl ChiFamily {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Multiplies every sample of every label by `f` at the same point.
    pub fn rescaled(&self, f: impl Fn(&TorusPoint) -> Complex64) -> ChiFamily {
        let grid: Vec<Complex64> = self
            .layout
            .grid
            .points()
            .into_iter()
            .map(|p| f(&TorusPoint::real(p)))
            .collect();
        let ray: Vec<Complex64> = self.layout.ray.points().iter().map(&f).collect();
        let probes: Vec<Vec<Complex64>> = self
            .layout
            .probes
            .iter()
            .map(|p| p.points().iter().map(&f).collect())
            .collect();
        let mut out = self.clone();
        for j in 0..self.len() {
            for (v, s) in out.grid_values[j].iter_mut().zip(&grid) {
                *v *= s;
            }
            for (v, s) in out.ray_values[j].iter_mut().zip(&ray) {
                *v *= s;
            }
            for (vals, s) in out.probe_values[j].iter_mut().zip(&probes) {
                for (v, s) in vals.iter_mut().zip(s) {
                    *v *= s;
                }
            }
        }
        out
    }
}

fn pair_real(w: &Weight, t: &[f64]) -> f64 {
    w.coords2()
        .iter()
        .zip(t)
        .map(|(&c, &x)| c as f64 * x)
        .sum::<f64>()
        / 2.0
}

/// Evaluates each generator on the grid, the ray and the probes.
pub fn synth_family(
    spec: &RealFormSpec,
    keys: &[GeneratorKey],
    layout: &SampleLayout,
) -> Result<ChiFamily> {
    let grid: Vec<TorusPoint> = layout
        .grid
        .points()
        .into_iter()
        .map(TorusPoint::real)
        .collect();
    let ray = layout.ray.points();
    let probes: Vec<Vec<TorusPoint>> = layout.probes.iter().map(Probe::points).collect();
    let eval = |k: &GeneratorKey, g: &TorusPoint| tau_generator(spec, k, g).map(|v| v.value);
    let mut family = ChiFamily {
        labels: keys.to_vec(),
        layout: layout.clone(),
        grid_values: Vec::with_capacity(keys.len()),
        ray_values: Vec::with_capacity(keys.len()),
        probe_values: Vec::with_capacity(keys.len()),
    };
    for k in keys {
        family
            .grid_values
            .push(grid.iter().map(|g| eval(k, g)).collect::<Result<_>>()?);
        family
            .ray_values
            .push(ray.iter().map(|g| eval(k, g)).collect::<Result<_>>()?);
        let mut per_probe = Vec::with_capacity(probes.len());
        for pts in &probes {
            let mut vals = [Complex64::zero(); 4];
            for (v, g) in vals.iter_mut().zip(pts) {
                *v = eval(k, g)?;
            }
            per_probe.push(vals);
        }
        family.probe_values.push(per_probe);
    }
    Ok(family)
}

/// Dimensions of the labels, with `j0` the reference label of dimension 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dims {
    pub j0: usize,
    pub dims: Vec<u64>,
}

fn ratio_limit(num: &[Complex64], den: &[Complex64]) -> f64 {
    let r: Vec<Complex64> = num
        .iter()
        .zip(den)
        .map(|(a, b)| Complex64::new((a / b).norm(), 0.0))
        .collect();
    richardson(&r).0.re
}

/// `d_j = lim |chi_j / chi_{j0}|` along the ray, where `j0` minimises the limit.
pub fn recover_dims(family: &ChiFamily) -> Result<Dims> {
    if family.is_empty() {
        return Ok(Dims {
            j0: 0,
            dims: Vec::new(),
        });
    }
    let reference = &family.ray_values[0];
    let against_first: Vec<f64> = family
        .ray_values
        .iter()
        .map(|v| ratio_limit(v, reference))
        .collect();
    let min = against_first.iter().cloned().fold(f64::INFINITY, f64::min);
    let j0 = against_first
        .iter()
        .position(|&r| r <= min * (1.0 + 1e-9))
        .ok_or_else(|| Error::Reconstruction("ratio limits are not finite".into()))?;
    let mut dims = Vec::with_capacity(family.len());
    for (j, v) in family.ray_values.iter().enumerate() {
        let limit = ratio_limit(v, &family.ray_values[j0]);
        let d = limit.round();
        if (limit - d).abs() > DIM_TOLERANCE || d < 1.0 {
            return Err(Error::Reconstruction(format!(
                "ratio limit {limit} for {} is not a positive integer",
                family.labels[j]
            )));
        }
        dims.push(d as u64);
    }
    Ok(Dims { j0, dims })
}

/// `psi = u / |chi_{j0}|` with `u` a fourth root of unity, and the
/// characters `chi_j / chi_{j0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterRecovery {
    pub phase: Complex64,
    pub psi_ray: Vec<Complex64>,
    /// `[label][grid point]`
    pub characters: Vec<Vec<Complex64>>,
}

pub fn recover_characters(family: &ChiFamily, dims: &Dims) -> Result<CharacterRecovery> {
    if family.is_empty() {
        return Ok(CharacterRecovery {
            phase: Complex64::new(1.0, 0.0),
            psi_ray: Vec::new(),
            characters: Vec::new(),
        });
    }
    let ray0 = &family.ray_values[dims.j0];
    let last = *ray0.last().expect("ray has samples");
    if !last.is_finite() || last.norm() < 1e-300 {
        return Err(Error::Reconstruction(
            "reference samples vanish near the identity".into(),
        ));
    }
    // u * chi_{j0} / |chi_{j0}| must be close to 1.
    let arg = (-last.arg() / (PI / 2.0)).round();
    let residue = (-last.arg() - arg * PI / 2.0).abs();
    if residue > 1e-3 {
        return Err(Error::Reconstruction(format!(
            "phase of the reference near the identity is {} rad away from a quarter turn",
            residue
        )));
    }
    let phase = Complex64::from_polar(1.0, arg * PI / 2.0);
    let phase = Complex64::new(phase.re.round(), phase.im.round());
    let psi_ray = ray0.iter().map(|v| phase / v.norm()).collect();
    let reference = &family.grid_values[dims.j0];
    let characters = family
        .grid_values
        .iter()
        .map(|vals| vals.iter().zip(reference).map(|(v, r)| v / r).collect())
        .collect();
    Ok(CharacterRecovery {
        phase,
        psi_ray,
        characters,
    })
}

fn weights_in_box(rank: usize, bound: i64, integral_only: bool) -> Vec<Weight> {
    let step = if integral_only { 2 } else { 1 };
    let values: Vec<i64> = (-2 * bound..=2 * bound).step_by(step).collect();
    let side = values.len();
    (0..side.pow(rank as u32))
        .map(|mut idx| {
            Weight::from_doubled(
                (0..rank)
                    .map(|_| {
                        let c = values[idx % side];
                        idx /= side;
                        c
                    })
                    .collect(),
            )
        })
        .collect()
}

/// `(1/N^r) sum_t chi(t) e^{-mu}(t)` for every `mu` with doubled
/// coordinates in `[-2 bound, 2 bound]`.
pub fn fourier_coefficients(
    samples: &[Complex64],
    grid: &GridSpec,
    bound: i64,
) -> Result<Vec<(Weight, Complex64)>> {
    if samples.len() != grid.len() {
        return Err(Error::Reconstruction(format!(
            "{} samples for a grid of {} points",
            samples.len(),
            grid.len()
        )));
    }
    if 4 * bound >= grid.per_axis as i64 {
        return Err(Error::Reconstruction(format!(
            "weight box {bound} needs more than {} grid points per axis",
            4 * bound
        )));
    }
    let points = grid.points();
    let norm = 1.0 / grid.len() as f64;
    Ok(weights_in_box(grid.rank(), bound, false)
        .into_iter()
        .map(|mu| {
            let c: Complex64 = samples
                .iter()
                .zip(&points)
                .map(|(s, t)| s * Complex64::from_polar(1.0, -2.0 * PI * pair_real(&mu, t)))
                .sum();
            (mu, c * norm)
        })
        .collect())
}

/// Highest weight of each sampled character: the dominant weight with a
/// large Fourier coefficient that is greatest in simple-root coordinates.
pub fn recover_highest_weights(
    characters: &[Vec<Complex64>],
    grid: &GridSpec,
    datum: &CartanDatum,
    positive: &PositiveSystem,
    bound: i64,
) -> Result<Vec<Weight>> {
    characters
        .iter()
        .map(|samples| {
            fourier_coefficients(samples, grid, bound)?
                .into_iter()
                .filter(|(mu, c)| {
                    c.norm() > WEIGHT_THRESHOLD && datum.is_dominant_for(mu, positive.roots())
                })
                .map(|(mu, _)| mu)
                .max_by(|a, b| {
                    datum
                        .simple_root_coords(a)
                        .cmp(&datum.simple_root_coords(b))
                })
                .ok_or_else(|| {
                    Error::Reconstruction("no Fourier coefficient above threshold".into())
                })
        })
        .collect()
}

/// Order of vanishing of `|psi(s theta)|` at `s = 0`.
pub fn decay_order(ray: &Ray, psi: &[Complex64]) -> Result<usize> {
    let n = psi.len();
    if n < 2 {
        return Err(Error::Reconstruction("need two ray samples".into()));
    }
    let slope =
        (psi[n - 1].norm() / psi[n - 2].norm()).ln() / (ray.scales[n - 1] / ray.scales[n - 2]).ln();
    let m = slope.round();
    if (slope - m).abs() > 1e-2 || m < 0.0 {
        return Err(Error::Reconstruction(format!(
            "decay exponent {slope} is not an integer"
        )));
    }
    Ok(m as usize)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoncompactFit {
    pub weights: Vec<Weight>,
    pub residual: f64,
}

fn model(alpha: &Weight, p: &Probe) -> f64 {
    PI * pair_real(alpha, &p.direction) / (PI * pair_real(alpha, &p.base)).tan()
}

fn rms(obs: &[f64], fit: &[f64]) -> f64 {
    (obs.iter()
        .zip(fit)
        .map(|(o, f)| (o - f).powi(2))
        .sum::<f64>()
        / obs.len().max(1) as f64)
        .sqrt()
}

/// Fits `d_Y log|psi|(X) = sum_{alpha in S} pi <alpha, Y> cot(pi <alpha, X>)`
/// over subsets of `size` integral weights (one per sign pair) in the box.
pub fn recover_noncompact_weights(
    probes: &[Probe],
    psi: &[[Complex64; 4]],
    size: usize,
    rank: usize,
    bound: i64,
) -> Result<NoncompactFit> {
    let obs: Vec<f64> = probes
        .iter()
        .zip(psi)
        .map(|(p, v)| {
            p.derivative([
                v[0].norm().ln(),
                v[1].norm().ln(),
                v[2].norm().ln(),
                v[3].norm().ln(),
            ])
        })
        .collect();
    let candidates: Vec<Weight> = weights_in_box(rank, bound, true)
        .into_iter()
        .filter(|w| {
            w.coords2()
                .iter()
                .find(|&&c| c != 0)
                .is_some_and(|&c| c > 0)
        })
        .collect();
    let columns: Vec<Vec<f64>> = candidates
        .iter()
        .map(|a| probes.iter().map(|p| model(a, p)).collect())
        .collect();
    let fit_of = |set: &[usize]| -> f64 {
        let mut sum = vec![0.0; obs.len()];
        for &i in set {
            for (s, c) in sum.iter_mut().zip(&columns[i]) {
                *s += c;
            }
        }
        rms(&obs, &sum)
    };

    let mut chosen: Vec<usize> = Vec::with_capacity(size);
    for _ in 0..size {
        let best = (0..candidates.len())
            .filter(|i| !chosen.contains(i))
            .map(|i| {
                let mut trial = chosen.clone();
                trial.push(i);
                (fit_of(&trial), i)
            })
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .ok_or_else(|| Error::Reconstruction("candidate box too small".into()))?;
        chosen.push(best.1);
    }
    let mut residual = fit_of(&chosen);
    loop {
        let mut improved = false;
        for slot in 0..chosen.len() {
            for i in 0..candidates.len() {
                if chosen.contains(&i) {
                    continue;
                }
                let mut trial = chosen.clone();
                trial[slot] = i;
                let r = fit_of(&trial);
                if r < residual {
                    residual = r;
                    chosen = trial;
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
    if residual.is_nan() || residual >= FIT_TOLERANCE {
        return Err(Error::Reconstruction(format!(
            "best noncompact fit has residual {residual}"
        )));
    }
    let mut weights: Vec<Weight> = chosen.into_iter().map(|i| candidates[i].clone()).collect();
    weights.sort();
    Ok(NoncompactFit { weights, residual })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabelRecovery {
    pub label: GeneratorKey,
    pub dim: u64,
    pub highest_weight: Weight,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecoveryReport {
    pub j0: GeneratorKey,
    pub labels: Vec<LabelRecovery>,
    #[serde(serialize_with = "serialize_complex_list")]
    pub psi_samples: Vec<Complex64>,
    /// One representative of each `+-alpha`, with first nonzero coordinate positive.
    pub noncompact_weights: Vec<Weight>,
    pub fit_residual: f64,
}

fn serialize_complex_list<S: serde::Serializer>(
    v: &[Complex64],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    #[derive(Serialize)]
    struct C(#[serde(with = "crate::serde_complex")] Complex64);
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for z in v {
        seq.serialize_element(&C(*z))?;
    }
    seq.end()
}

/// Synthesises the family of `keys` and runs every recovery step.
pub fn reconstruct(
    spec: &RealFormSpec,
    keys: &[GeneratorKey],
    layout: &SampleLayout,
    weight_box: i64,
    candidate_box: i64,
) -> Result<RecoveryReport> {
    if keys.is_empty() {
        return Err(Error::Reconstruction(
            "no generators to reconstruct from".into(),
        ));
    }
    let family = synth_family(spec, keys, layout)?;
    let dims = recover_dims(&family)?;
    let chars = recover_characters(&family, &dims)?;
    let highest = recover_highest_weights(
        &chars.characters,
        &layout.grid,
        spec.datum(),
        spec.compact_positive(),
        weight_box,
    )?;
    let size = decay_order(&layout.ray, &chars.psi_ray)?;
    let psi_probes: Vec<[Complex64; 4]> = family.probe_values[dims.j0]
        .iter()
        .map(|vals| vals.map(|v| chars.phase / v.norm()))
        .collect();
    let fit = recover_noncompact_weights(
        &layout.probes,
        &psi_probes,
        size,
        spec.rank(),
        candidate_box,
    )?;
    Ok(RecoveryReport {
        j0: keys[dims.j0].clone(),
        labels: keys
            .iter()
            .zip(&dims.dims)
            .zip(highest)
            .map(|((label, &dim), highest_weight)| LabelRecovery {
                label: label.clone(),
                dim,
                highest_weight,
            })
            .collect(),
        psi_samples: chars.psi_ray,
        noncompact_weights: fit.weights,
        fit_residual: fit.residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn keys(spec: &RealFormSpec, list: &[&[i64]]) -> Vec<GeneratorKey> {
        list.iter()
            .map(|c| spec.generator_key(&Weight::from_fundamental(c)).unwrap())
            .collect()
    }

    fn layout(spec: &RealFormSpec) -> SampleLayout {
        SampleLayout::for_datum(spec.datum(), 11)
    }

    #[test]
    fn grid_shape() {
        let g = GridSpec::for_datum(&CartanDatum::named("A2").unwrap());
        assert_eq!(g.per_axis, 64);
        assert_eq!(g.len(), 4096);
        assert_eq!(
            GridSpec::for_datum(&CartanDatum::named("A3").unwrap()).per_axis,
            32
        );
    }

    #[test]
    fn compact_a1_round_trip() {
        let spec = RealFormSpec::preset("compact(A1)").unwrap();
        let ks = keys(&spec, &[&[0], &[1], &[2]]);
        let rep = reconstruct(
            &spec,
            &ks,
            &layout(&spec),
            DEFAULT_WEIGHT_BOX,
            DEFAULT_CANDIDATE_BOX,
        )
        .unwrap();
        let dims: Vec<u64> = rep.labels.iter().map(|l| l.dim).collect();
        assert_eq!(dims, vec![1, 2, 3]);
        for (l, k) in rep.labels.iter().zip(&ks) {
            assert_eq!(&l.highest_weight, k.lambda());
        }
        assert!(rep.noncompact_weights.is_empty());
    }

    #[test]
    fn sl2r_round_trip() {
        let spec = RealFormSpec::preset("sl2r").unwrap();
        let ks = keys(&spec, &[&[0], &[1], &[2]]);
        let lay = layout(&spec);
        let family = synth_family(&spec, &ks, &lay).unwrap();
        let dims = recover_dims(&family).unwrap();
        assert_eq!(
            dims,
            Dims {
                j0: 0,
                dims: vec![1, 1, 1]
            }
        );
        let chars = recover_characters(&family, &dims).unwrap();
        for (p, s) in chars.psi_ray.iter().zip(&lay.ray.scales) {
            let phi = 2.0 * PI * s * lay.ray.direction[0];
            assert!((p.norm() - 2.0 * phi.sin().abs()).abs() < 1e-12);
        }
        let rep = reconstruct(&spec, &ks, &lay, DEFAULT_WEIGHT_BOX, DEFAULT_CANDIDATE_BOX).unwrap();
        assert_eq!(rep.noncompact_weights, vec![spec.datum().simple_root(0)]);
        for (l, k) in rep.labels.iter().zip(&ks) {
            assert_eq!(&l.highest_weight, k.lambda());
        }
    }

    #[test]
    fn su21_round_trip() {
        let spec = RealFormSpec::preset("su21").unwrap();
        let ks = keys(&spec, &[&[0, 0], &[1, 0], &[2, -1], &[1, 1]]);
        let rep = reconstruct(
            &spec,
            &ks,
            &layout(&spec),
            DEFAULT_WEIGHT_BOX,
            DEFAULT_CANDIDATE_BOX,
        )
        .unwrap();
        let dims: Vec<u64> = rep.labels.iter().map(|l| l.dim).collect();
        assert_eq!(dims, vec![1, 2, 3, 2]);
        for (l, k) in rep.labels.iter().zip(&ks) {
            assert_eq!(&l.highest_weight, k.lambda());
        }
        let canonical = |w: &Weight| {
            if w.coords2().iter().find(|&&c| c != 0).unwrap() > &0 {
                w.clone()
            } else {
                -w
            }
        };
        let mut expected: Vec<Weight> = spec
            .noncompact_positive()
            .roots()
            .iter()
            .map(canonical)
            .collect();
        expected.sort();
        assert_eq!(rep.noncompact_weights, expected);
    }

    #[test]
    fn dims_survive_common_rescaling() {
        let spec = RealFormSpec::preset("su21").unwrap();
        let ks = keys(&spec, &[&[0, 0], &[1, 0], &[2, -1]]);
        let family = synth_family(&spec, &ks, &layout(&spec)).unwrap();
        let extra = spec
            .generator_key(&Weight::from_fundamental(&[1, 1]))
            .unwrap();
        let scaled = family.rescaled(|g| tau_generator(&spec, &extra, g).unwrap().value);
        assert_eq!(
            recover_dims(&family).unwrap(),
            recover_dims(&scaled).unwrap()
        );
    }

    #[test]
    fn missing_trivial_type_is_detected() {
        let spec = RealFormSpec::preset("compact(A1)").unwrap();
        let ks = keys(&spec, &[&[1], &[2]]);
        let family = synth_family(&spec, &ks, &layout(&spec)).unwrap();
        assert!(matches!(
            recover_dims(&family),
            Err(Error::Reconstruction(_))
        ));
    }

    #[test]
    fn fourier_recovers_multiplicities() {
        let spec = RealFormSpec::preset("compact(A2)").unwrap();
        let ks = keys(&spec, &[&[0, 0], &[1, 1], &[2, 1]]);
        let lay = layout(&spec);
        let family = synth_family(&spec, &ks, &lay).unwrap();
        let dims = recover_dims(&family).unwrap();
        let chars = recover_characters(&family, &dims).unwrap();
        for (j, k) in ks.iter().enumerate() {
            let mults = spec.datum().weight_multiplicities(k.lambda()).unwrap();
            for (mu, c) in
                fourier_coefficients(&chars.characters[j], &lay.grid, DEFAULT_WEIGHT_BOX).unwrap()
            {
                let m = mults.get(&mu).copied().unwrap_or(0) as f64;
                assert!(
                    (c - Complex64::new(m, 0.0)).norm() < 1e-6,
                    "{mu}: {c} vs {m}"
                );
            }
        }
    }

    #[test]
    fn empty_family() {
        let spec = RealFormSpec::preset("sl2r").unwrap();
        let family = synth_family(&spec, &[], &layout(&spec)).unwrap();
        assert!(family.is_empty());
        assert!(recover_dims(&family).unwrap().dims.is_empty());
    }

    #[test]
    fn box_must_respect_nyquist() {
        let grid = GridSpec::new(16, vec![0.01]).unwrap();
        assert!(fourier_coefficients(&vec![Complex64::zero(); 16], &grid, 4).is_err());
    }
}
