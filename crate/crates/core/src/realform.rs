//! Equal-rank real forms: compact/noncompact root splitting, the compact
//! Weyl group `W_K`, coset representatives for `W_K \ W_G`, and K-theory
//! generators indexed by dominant `K`-weights.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::rootsys::{CartanDatum, Weight, WeylElement, WeylGroup};
use crate::{Error, Result};

/// Lattice that `lambda + rho_n` must lie in for `lambda` to index a generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CharacterLattice {
    /// Integral weights of the torus.
    #[default]
    Integral,
    /// Integral weights together with `rho_n`: the torus of the double cover
    /// on which the spinor module descends.
    SpinCover,
}

impl CharacterLattice {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "integral" => Ok(CharacterLattice::Integral),
            "spin-cover" | "spincover" => Ok(CharacterLattice::SpinCover),
            _ => Err(Error::parse("character lattice", s)),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            CharacterLattice::Integral => "integral",
            CharacterLattice::SpinCover => "spin-cover",
        }
    }

    fn contains(&self, w: &Weight, rho_n: &Weight) -> bool {
        match self {
            CharacterLattice::Integral => w.is_integral(),
            CharacterLattice::SpinCover => w.is_integral() || (w - rho_n).is_integral(),
        }
    }
}

/// A set of positive roots for the full root system (a Weyl chamber), or
/// for a subsystem such as `R_c^+`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveSystem {
    roots: Vec<Weight>,
}

impl PositiveSystem {
    pub fn new(roots: Vec<Weight>) -> Self {
        PositiveSystem { roots }
    }

    pub fn standard(datum: &CartanDatum) -> Self {
        PositiveSystem::new(datum.positive_roots().to_vec())
    }

    pub fn roots(&self) -> &[Weight] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn negated(&self) -> Self {
        PositiveSystem::new(self.roots.iter().map(|r| -r).collect())
    }

    pub fn transformed(&self, w: &WeylElement) -> Self {
        PositiveSystem::new(self.roots.iter().map(|r| w.act(r)).collect())
    }

    /// True if this is `w R^+` for some Weyl group element `w`.
    pub fn is_chamber(&self, datum: &CartanDatum, group: &WeylGroup) -> bool {
        let mine: BTreeSet<&Weight> = self.roots.iter().collect();
        group.elements().iter().any(|w| {
            let image: BTreeSet<Weight> = datum.positive_roots().iter().map(|r| w.act(r)).collect();
            image.len() == mine.len() && image.iter().all(|r| mine.contains(r))
        })
    }
}

/// A validated equal-rank real form.
#[derive(Debug, Clone)]
pub struct RealFormSpec {
    name: String,
    datum: CartanDatum,
    roots: Vec<Weight>,
    compact_indices: Vec<usize>,
    spin_sign: i8,
    lattice: CharacterLattice,
    positive: PositiveSystem,
    compact_positive: PositiveSystem,
    noncompact_positive: PositiveSystem,
    weyl: WeylGroup,
    weyl_k: Vec<WeylElement>,
    coset_reps: Vec<WeylElement>,
    rho: Weight,
    rho_c: Weight,
    rho_n: Weight,
}

impl RealFormSpec {
    /// Builds a real form from indices into [`CartanDatum::roots`] marking
    /// the compact roots.
    pub fn new(datum: CartanDatum, compact_root_indices: &[usize], spin_sign: i8) -> Result<Self> {
        if spin_sign != 1 && spin_sign != -1 {
            return Err(Error::InvalidRealForm(format!(
                "spin sign must be +1 or -1, got {spin_sign}"
            )));
        }
        let roots = datum.roots();
        let mut indices: Vec<usize> = compact_root_indices.to_vec();
        indices.sort_unstable();
        indices.dedup();
        if let Some(&bad) = indices.iter().find(|&&i| i >= roots.len()) {
            return Err(Error::InvalidRealForm(format!(
                "root index {bad} out of range (datum has {} roots)",
                roots.len()
            )));
        }
        let compact: BTreeSet<Weight> = indices.iter().map(|&i| roots[i].clone()).collect();
        for alpha in &compact {
            if !compact.contains(&-alpha) {
                return Err(Error::InvalidRealForm(format!(
                    "compact root set is not symmetric: {alpha} is compact but its negative is not"
                )));
            }
        }
        for a in &compact {
            for b in &compact {
                let sum = a + b;
                if datum.is_root(&sum) && !compact.contains(&sum) {
                    return Err(Error::InvalidRealForm(format!(
                        "compact root set is not closed: {a} + {b} is a noncompact root"
                    )));
                }
            }
        }
        let noncompact_count = roots.len() - compact.len();
        if !noncompact_count.is_multiple_of(2) {
            return Err(Error::InvalidRealForm(format!(
                "dim(G/K) = {noncompact_count} is odd"
            )));
        }

        let positive = PositiveSystem::standard(&datum);
        let (cpos, npos): (Vec<Weight>, Vec<Weight>) = positive
            .roots()
            .iter()
            .cloned()
            .partition(|r| compact.contains(r));

        let weyl = datum.weyl_group();
        let reflections: Vec<usize> = cpos
            .iter()
            .map(|beta| {
                weyl.find(&datum.reflection_matrix(beta))
                    .expect("root reflections lie in the Weyl group")
            })
            .collect();
        let k_indices = weyl.subgroup(&reflections);
        if !weyl.order().is_multiple_of(k_indices.len()) {
            return Err(Error::InvalidRealForm("|W_K| does not divide |W_G|".into()));
        }

        // Right cosets W_K w; scanning by length picks a minimal-length representative.
        let mut order: Vec<usize> = (0..weyl.order()).collect();
        order.sort_by_key(|&i| (weyl.element(i).length(), i));
        let mut covered = vec![false; weyl.order()];
        let mut reps = Vec::new();
        for w in order {
            if covered[w] {
                continue;
            }
            reps.push(weyl.element(w).clone());
            for &k in &k_indices {
                covered[weyl.compose(k, w)] = true;
            }
        }

        let rho = datum.rho(positive.roots());
        let rho_c = datum.rho(&cpos);
        let rho_n = datum.rho(&npos);
        let name = format!(
            "{}[{}]",
            datum.name().unwrap_or("custom"),
            indices
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        Ok(RealFormSpec {
            name,
            weyl_k: k_indices.iter().map(|&i| weyl.element(i).clone()).collect(),
            coset_reps: reps,
            roots,
            compact_indices: indices,
            spin_sign,
            lattice: CharacterLattice::default(),
            positive,
            compact_positive: PositiveSystem::new(cpos),
            noncompact_positive: PositiveSystem::new(npos),
            weyl,
            rho,
            rho_c,
            rho_n,
            datum,
        })
    }

    /// Presets: `sl2r`, `su21`, `sp4r`, and `compact(X)` for a named type `X`.
    pub fn preset(name: &str) -> Result<Self> {
        let key = name.trim().to_ascii_lowercase();
        let spec = match key.as_str() {
            "sl2r" => RealFormSpec::new(CartanDatum::named("A1")?, &[], -1)?,
            "su21" => RealFormSpec::new(CartanDatum::named("A2")?, &[0, 3], 1)?
                .with_lattice(CharacterLattice::SpinCover),
            // C2 with the short simple root compact; K = U(2).
            "sp4r" => RealFormSpec::new(CartanDatum::named("C2")?, &[0, 4], -1)?,
            _ => {
                let inner = key
                    .strip_prefix("compact(")
                    .and_then(|s| s.strip_suffix(')'))
                    .ok_or_else(|| {
                        Error::InvalidRealForm(format!("unknown real-form preset {name:?}"))
                    })?;
                let datum = CartanDatum::named(inner)?;
                let all: Vec<usize> = (0..datum.roots().len()).collect();
                RealFormSpec::new(datum, &all, 1)?
            }
        };
        Ok(spec.with_name(&key))
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn with_lattice(mut self, lattice: CharacterLattice) -> Self {
        self.lattice = lattice;
        self
    }

    pub fn with_spin_sign(mut self, spin_sign: i8) -> Result<Self> {
        if spin_sign != 1 && spin_sign != -1 {
            return Err(Error::InvalidRealForm(format!(
                "spin sign must be +1 or -1, got {spin_sign}"
            )));
        }
        self.spin_sign = spin_sign;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn roots(&self) -> &[Weight] {
        &self.roots
    }

    pub fn compact_indices(&self) -> &[usize] {
        &self.compact_indices
    }

    pub fn spin_sign(&self) -> i8 {
        self.spin_sign
    }

    pub fn lattice(&self) -> CharacterLattice {
        self.lattice
    }

    pub fn positive(&self) -> &PositiveSystem {
        &self.positive
    }

    pub fn compact_positive(&self) -> &PositiveSystem {
        &self.compact_positive
    }

    pub fn noncompact_positive(&self) -> &PositiveSystem {
        &self.noncompact_positive
    }

    /// `dim(G/K) = |R_n|`.
    pub fn dim_gk(&self) -> usize {
        2 * self.noncompact_positive.len()
    }

    pub fn is_compact(&self) -> bool {
        self.noncompact_positive.is_empty()
    }

    /// `(-1)^{dim(G/K)/2} * spin_sign`, the overall sign of the trace formula.
    pub fn trace_sign(&self) -> f64 {
        let parity = if self.noncompact_positive.len().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        parity * f64::from(self.spin_sign)
    }

    pub fn weyl_group(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn weyl_k(&self) -> &[WeylElement] {
        &self.weyl_k
    }

    /// Minimal-length representatives of the right cosets `W_K w`.
    pub fn coset_reps(&self) -> &[WeylElement] {
        &self.coset_reps
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn rho_c(&self) -> &Weight {
        &self.rho_c
    }

    pub fn rho_n(&self) -> &Weight {
        &self.rho_n
    }

    /// Validates `lambda` as a generator label.
    pub fn generator_key(&self, lambda: &Weight) -> Result<GeneratorKey> {
        self.datum.check_rank(lambda)?;
        if !self
            .datum
            .is_dominant_for(lambda, self.compact_positive.roots())
        {
            return Err(Error::InvalidKey {
                key: lambda.clone(),
                reason: "not dominant for the compact positive roots".into(),
            });
        }
        if !self.lattice.contains(&(lambda + &self.rho_n), &self.rho_n) {
            return Err(Error::InvalidKey {
                key: lambda.clone(),
                reason: format!(
                    "lambda + rho_n is not in the {} character lattice",
                    self.lattice.as_str()
                ),
            });
        }
        Ok(GeneratorKey {
            lambda: lambda.clone(),
        })
    }

    /// All valid generator keys with doubled coordinates in `[-2 bound, 2 bound]`.
    pub fn keys_in_box(&self, bound: i64) -> Vec<GeneratorKey> {
        let n = self.rank();
        let side = 4 * bound + 1;
        let total = (side as usize).pow(n as u32);
        (0..total)
            .filter_map(|mut idx| {
                let coords2: Vec<i64> = (0..n)
                    .map(|_| {
                        let c = (idx % side as usize) as i64 - 2 * bound;
                        idx /= side as usize;
                        c
                    })
                    .collect();
                self.generator_key(&Weight::from_doubled(coords2)).ok()
            })
            .collect()
    }

    /// Harish-Chandra parameter `lambda + rho_c`.
    pub fn hc_parameter(&self, key: &GeneratorKey) -> Weight {
        &key.lambda + &self.rho_c
    }

    /// True iff `Lambda` pairs nontrivially with every root.
    pub fn is_regular_param(&self, hc: &Weight) -> bool {
        self.positive
            .roots()
            .iter()
            .all(|a| !self.datum.pairing(hc, a).is_zero())
    }
}

/// A dominant `K`-weight labelling a Dirac-induction generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct GeneratorKey {
    lambda: Weight,
}

impl GeneratorKey {
    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }
}

impl fmt::Display for GeneratorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gen{}", self.lambda)
    }
}

/// One term of a serialized class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTerm {
    pub lambda: Weight,
    pub coeff: i64,
}

/// A finite integer combination of generators; zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KClass {
    terms: BTreeMap<GeneratorKey, i64>,
}

impl KClass {
    pub fn zero() -> Self {
        KClass::default()
    }

    pub fn generator(key: GeneratorKey) -> Self {
        KClass::from_terms([(key, 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (GeneratorKey, i64)>) -> Self {
        let mut class = KClass::zero();
        for (key, coeff) in terms {
            class.add_term(key, coeff);
        }
        class
    }

    /// Validates serialized terms against a real form.
    pub fn from_class_terms(spec: &RealFormSpec, terms: &[ClassTerm]) -> Result<Self> {
        terms
            .iter()
            .map(|t| Ok((spec.generator_key(&t.lambda)?, t.coeff)))
            .collect::<Result<Vec<_>>>()
            .map(KClass::from_terms)
    }

    pub fn to_class_terms(&self) -> Vec<ClassTerm> {
        self.terms
            .iter()
            .map(|(k, &c)| ClassTerm {
                lambda: k.lambda.clone(),
                coeff: c,
            })
            .collect()
    }

    pub fn add_term(&mut self, key: GeneratorKey, coeff: i64) {
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GeneratorKey, i64)> {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Add for &KClass {
    type Output = KClass;
    fn add(self, rhs: &KClass) -> KClass {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k.clone(), c);
        }
        out
    }
}

impl Neg for &KClass {
    type Output = KClass;
    fn neg(self) -> KClass {
        KClass::from_terms(self.terms().map(|(k, c)| (k.clone(), -c)))
    }
}

impl Sub for &KClass {
    type Output = KClass;
    fn sub(self, rhs: &KClass) -> KClass {
        self + &(-rhs)
    }
}
