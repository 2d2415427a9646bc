//! Finite root systems and Weyl groups from Cartan data.
//!
//! Conventions: the Cartan matrix is `A[i][j] = <alpha_i^vee, alpha_j>`, so
//! column `j` holds the simple root `alpha_j` in fundamental-weight
//! coordinates. The symmetrizer `d` makes `d_i A[i][j]` symmetric and sets
//! `(alpha_i, alpha_i) = 2 d_i`. Weights are stored as twice their
//! fundamental coordinates, which keeps half-sums of roots exact.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linalg::{int_det, int_identity, int_matmul, RatMatrix};
use crate::{Error, Result};

/// An element of the half-weight lattice, stored as `2 * lambda` in
/// fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    coords2: Vec<i64>,
}

impl Weight {
    pub fn from_doubled(coords2: Vec<i64>) -> Self {
        Weight { coords2 }
    }

    pub fn from_fundamental(coords: &[i64]) -> Self {
        Weight {
            coords2: coords.iter().map(|c| 2 * c).collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        Weight {
            coords2: vec![0; rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.coords2.len()
    }

    pub fn coords2(&self) -> &[i64] {
        &self.coords2
    }

    pub fn fundamental(&self) -> Vec<Rational64> {
        self.coords2
            .iter()
            .map(|&c| Rational64::new(c, 2))
            .collect()
    }

    /// Integral weights have even doubled coordinates.
    pub fn is_integral(&self) -> bool {
        self.coords2.iter().all(|c| c % 2 == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coords2.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight {
            coords2: self.coords2.iter().map(|c| c * k).collect(),
        }
    }

    /// Half of this weight; `None` when the result leaves the half-weight lattice.
    pub fn half(&self) -> Option<Weight> {
        self.is_integral().then(|| Weight {
            coords2: self.coords2.iter().map(|c| c / 2).collect(),
        })
    }

    /// Parses fundamental coordinates such as `"1,0"`, `"(1/2, 3)"` or `"1 -1"`.
    pub fn parse(input: &str) -> Result<Weight> {
        let trimmed = input
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        if trimmed.trim().is_empty() {
            return Err(Error::parse("weight", input));
        }
        trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| parse_half_integer(s).ok_or_else(|| Error::parse("weight", input)))
            .collect::<Result<Vec<_>>>()
            .map(Weight::from_doubled)
    }
}

/// Parses `"3"`, `"-1/2"` or `"1.5"` into twice its value, if that is an integer.
fn parse_half_integer(s: &str) -> Option<i64> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().ok()?;
        let q: i64 = q.trim().parse().ok()?;
        if q == 0 || (2 * p) % q != 0 {
            return None;
        }
        return Some(2 * p / q);
    }
    if let Ok(v) = s.parse::<i64>() {
        return Some(2 * v);
    }
    let v: f64 = s.parse().ok()?;
    let doubled = 2.0 * v;
    (doubled.fract() == 0.0 && doubled.abs() < 1e15).then_some(doubled as i64)
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords2.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if c % 2 == 0 {
                write!(f, "{}", c / 2)?;
            } else {
                write!(f, "{c}/2")?;
            }
        }
        write!(f, ")")
    }
}

// Serialized as a list of fundamental coordinates; halves become `x.5`.
impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.coords2.len()))?;
        for &c in &self.coords2 {
            if c % 2 == 0 {
                seq.serialize_element(&(c / 2))?;
            } else {
                seq.serialize_element(&(c as f64 / 2.0))?;
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coord {
            Int(i64),
            Float(f64),
            Text(String),
        }
        let raw = Vec::<Coord>::deserialize(deserializer)?;
        raw.into_iter()
            .map(|c| match c {
                Coord::Int(v) => Some(2 * v),
                Coord::Float(v) => parse_half_integer(&v.to_string()),
                Coord::Text(s) => parse_half_integer(&s),
            })
            .collect::<Option<Vec<_>>>()
            .map(Weight::from_doubled)
            .ok_or_else(|| serde::de::Error::custom("weight coordinates must be multiples of 1/2"))
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight {
            coords2: self
                .coords2
                .iter()
                .zip(&rhs.coords2)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight {
            coords2: self
                .coords2
                .iter()
                .zip(&rhs.coords2)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scale(-1)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scale(-1)
    }
}

/// Finite-type Cartan matrix with symmetrizer, plus derived root data.
#[derive(Debug, Clone)]
pub struct CartanDatum {
    name: Option<String>,
    rank: usize,
    matrix: Vec<i64>,
    symmetrizer: Vec<Rational64>,
    inverse: RatMatrix,
    form: RatMatrix,
    positive_roots: Vec<Weight>,
}

impl PartialEq for CartanDatum {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix && self.symmetrizer == other.symmetrizer
    }
}

impl CartanDatum {
    /// Validates an explicit matrix (rows) and symmetrizer.
    pub fn new(rows: Vec<Vec<i64>>, symmetrizer: Vec<Rational64>) -> Result<Self> {
        let rank = rows.len();
        if rank == 0 {
            return Err(Error::InvalidDatum("rank must be positive".into()));
        }
        if rows.iter().any(|r| r.len() != rank) {
            return Err(Error::InvalidDatum("Cartan matrix must be square".into()));
        }
        if symmetrizer.len() != rank {
            return Err(Error::InvalidDatum(format!(
                "symmetrizer has {} entries, expected {rank}",
                symmetrizer.len()
            )));
        }
        let a = |i: usize, j: usize| rows[i][j];
        for i in 0..rank {
            if a(i, i) != 2 {
                return Err(Error::InvalidDatum(format!(
                    "diagonal entry ({i},{i}) is not 2"
                )));
            }
            if !symmetrizer[i].is_positive() {
                return Err(Error::InvalidDatum(format!(
                    "symmetrizer entry {i} is not positive"
                )));
            }
            for j in 0..rank {
                if i == j {
                    continue;
                }
                if a(i, j) > 0 {
                    return Err(Error::InvalidDatum(format!(
                        "off-diagonal entry ({i},{j}) is positive"
                    )));
                }
                if (a(i, j) == 0) != (a(j, i) == 0) {
                    return Err(Error::InvalidDatum(format!(
                        "entries ({i},{j}) and ({j},{i}) have asymmetric support"
                    )));
                }
                let lhs = symmetrizer[i] * Rational64::from_integer(a(i, j));
                let rhs = symmetrizer[j] * Rational64::from_integer(a(j, i));
                if lhs != rhs {
                    return Err(Error::InvalidDatum(format!(
                        "symmetrizer does not symmetrize entries ({i},{j}) and ({j},{i})"
                    )));
                }
            }
        }
        let symmetrized = RatMatrix::from_fn(rank, |i, j| {
            symmetrizer[i] * Rational64::from_integer(a(i, j))
        });
        for k in 1..=rank {
            if !symmetrized.leading_minor(k).is_positive() {
                return Err(Error::InvalidDatum(format!(
                    "not of finite type: leading principal minor of order {k} is not positive"
                )));
            }
        }
        let cartan = RatMatrix::from_fn(rank, |i, j| Rational64::from_integer(a(i, j)));
        let inverse = cartan
            .inverse()
            .expect("positive definite symmetrization implies invertible");
        let form = RatMatrix::from_fn(rank, |i, j| symmetrizer[i] * inverse.get(i, j));
        let mut datum = CartanDatum {
            name: None,
            rank,
            matrix: rows.into_iter().flatten().collect(),
            symmetrizer,
            inverse,
            form,
            positive_roots: Vec::new(),
        };
        datum.positive_roots = datum.generate_positive_roots();
        Ok(datum)
    }

    /// Builds a named type: `A<n>`, `B<n>`, `C<n>`, `D<n>`, `G2`, `F4`.
    pub fn named(name: &str) -> Result<Self> {
        let (rows, symmetrizer) = named_cartan(name.trim())
            .ok_or_else(|| Error::InvalidDatum(format!("unknown Cartan type {name:?}")))?;
        let mut datum = CartanDatum::new(rows, symmetrizer)?;
        datum.name = Some(name.trim().to_ascii_uppercase());
        Ok(datum)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i * self.rank + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.matrix.chunks(self.rank).map(<[i64]>::to_vec).collect()
    }

    pub fn symmetrizer(&self) -> &[Rational64] {
        &self.symmetrizer
    }

    pub fn simple_root(&self, j: usize) -> Weight {
        Weight::from_fundamental(&(0..self.rank).map(|i| self.entry(i, j)).collect::<Vec<_>>())
    }

    pub fn simple_roots(&self) -> Vec<Weight> {
        (0..self.rank).map(|j| self.simple_root(j)).collect()
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut coords = vec![0; self.rank];
        coords[i] = 1;
        Weight::from_fundamental(&coords)
    }

    pub(crate) fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() == self.rank {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                expected: self.rank,
                found: w.rank(),
            })
        }
    }

    /// Coordinates in the basis of simple roots.
    pub fn simple_root_coords(&self, w: &Weight) -> Vec<Rational64> {
        self.inverse.mul_vec(&w.fundamental())
    }

    /// Invariant form with `(alpha_i, alpha_i) = 2 d_i`.
    pub fn pairing(&self, lambda: &Weight, mu: &Weight) -> Rational64 {
        let x = lambda.fundamental();
        let y = mu.fundamental();
        let fy = self.form.mul_vec(&y);
        x.iter().zip(&fy).map(|(a, b)| a * b).sum()
    }

    /// `<lambda, beta^vee> = 2 (lambda, beta) / (beta, beta)`.
    pub fn coroot_pairing(&self, lambda: &Weight, beta: &Weight) -> Rational64 {
        Rational64::from_integer(2) * self.pairing(lambda, beta) / self.pairing(beta, beta)
    }

    /// Reflection of `lambda` in the hyperplane orthogonal to `beta`.
    pub fn reflect(&self, lambda: &Weight, beta: &Weight) -> Weight {
        let k = self.coroot_pairing(lambda, beta);
        // beta has even doubled coordinates, so k * beta.coords2 is integral
        let coords2 = lambda
            .coords2
            .iter()
            .zip(&beta.coords2)
            .map(|(&l, &b)| {
                let v = Rational64::from_integer(l) - k * Rational64::from_integer(b);
                debug_assert!(v.is_integer());
                v.to_integer()
            })
            .collect();
        Weight::from_doubled(coords2)
    }

    /// Integer matrix of the reflection in `beta`, acting on fundamental coordinates.
    pub fn reflection_matrix(&self, beta: &Weight) -> Vec<i64> {
        let n = self.rank;
        let mut m = vec![0; n * n];
        for k in 0..n {
            let image = self.reflect(&self.fundamental_weight(k), beta);
            for i in 0..n {
                m[i * n + k] = image.coords2[i] / 2;
            }
        }
        m
    }

    pub fn is_dominant(&self, lambda: &Weight) -> bool {
        lambda.coords2.iter().all(|&c| c >= 0)
    }

    /// Dominance for an arbitrary set of positive roots.
    pub fn is_dominant_for(&self, lambda: &Weight, positive: &[Weight]) -> bool {
        positive
            .iter()
            .all(|a| !self.pairing(lambda, a).is_negative())
    }

    pub fn height(&self, root: &Weight) -> Rational64 {
        self.simple_root_coords(root).into_iter().sum()
    }

    fn generate_positive_roots(&self) -> Vec<Weight> {
        let simple = self.simple_roots();
        let mut seen: BTreeSet<Weight> = simple.iter().cloned().collect();
        let mut queue: VecDeque<Weight> = simple.iter().cloned().collect();
        while let Some(root) = queue.pop_front() {
            for alpha in &simple {
                let image = self.reflect(&root, alpha);
                if seen.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }
        let mut positive: Vec<(Vec<Rational64>, Weight)> = seen
            .into_iter()
            .map(|r| (self.simple_root_coords(&r), r))
            .filter(|(c, _)| c.iter().all(|x| !x.is_negative()))
            .collect();
        positive.sort_by(|(a, _), (b, _)| {
            let ha: Rational64 = a.iter().sum();
            let hb: Rational64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        positive.into_iter().map(|(_, r)| r).collect()
    }

    /// Positive roots in height order, ties broken by descending simple-root coordinates.
    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// All roots: positive roots followed by their negatives in the same order.
    pub fn roots(&self) -> Vec<Weight> {
        let mut all = self.positive_roots.clone();
        all.extend(self.positive_roots.iter().map(|r| -r));
        all
    }

    pub fn is_root(&self, w: &Weight) -> bool {
        self.positive_roots.contains(w) || self.positive_roots.contains(&-w)
    }

    /// Half-sum of a set of roots.
    pub fn rho(&self, roots: &[Weight]) -> Weight {
        let sum = roots
            .iter()
            .fold(Weight::zero(self.rank), |acc, r| &acc + r);
        sum.half().expect("roots are integral weights")
    }

    /// Breadth-first closure of the simple reflections.
    pub fn weyl_group(&self) -> WeylGroup {
        let n = self.rank;
        let generators: Vec<Vec<i64>> = (0..n)
            .map(|i| self.reflection_matrix(&self.simple_root(i)))
            .collect();
        let mut elements: Vec<(Vec<i64>, usize)> = vec![(int_identity(n), 0)];
        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        index.insert(int_identity(n), 0);
        let mut cursor = 0;
        while cursor < elements.len() {
            let (current, len) = elements[cursor].clone();
            for g in &generators {
                let next = int_matmul(&current, g, n);
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elements.len());
                    elements.push((next, len + 1));
                }
            }
            cursor += 1;
        }
        let elements: Vec<WeylElement> = elements
            .iter()
            .map(|(m, len)| {
                let inverse = elements
                    .iter()
                    .map(|(cand, _)| cand)
                    .find(|cand| int_matmul(m, cand, n) == int_identity(n))
                    .expect("finite group contains inverses")
                    .clone();
                WeylElement {
                    rank: n,
                    sign: int_det(m, n) as i8,
                    matrix: m.clone(),
                    inverse,
                    length: *len,
                }
            })
            .collect();
        let generator_indices = generators.iter().map(|g| index[g]).collect();
        WeylGroup {
            rank: n,
            elements,
            generators: generator_indices,
            index,
        }
    }

    /// Weyl dimension product `prod (lambda + rho, alpha) / (rho, alpha)`.
    pub fn weyl_dim(&self, lambda: &Weight) -> Result<Rational64> {
        self.check_rank(lambda)?;
        if !self.is_dominant(lambda) {
            return Err(Error::InvalidWeight(format!("{lambda} is not dominant")));
        }
        let rho = self.rho(&self.positive_roots);
        let shifted = lambda + &rho;
        Ok(self
            .positive_roots
            .iter()
            .map(|a| self.pairing(&shifted, a) / self.pairing(&rho, a))
            .product())
    }

    /// Weight multiplicities of the irreducible module with highest weight
    /// `lambda`, by Freudenthal's recursion.
    pub fn weight_multiplicities(&self, lambda: &Weight) -> Result<BTreeMap<Weight, u64>> {
        self.check_rank(lambda)?;
        if !self.is_dominant(lambda) || !lambda.is_integral() {
            return Err(Error::InvalidWeight(format!(
                "{lambda} is not dominant integral"
            )));
        }
        let rho = self.rho(&self.positive_roots);
        let top = lambda + &rho;
        let top_norm = self.pairing(&top, &top);
        let simple = self.simple_roots();
        let heights: Vec<i64> = self
            .positive_roots
            .iter()
            .map(|a| self.height(a).to_integer())
            .collect();

        let mut mult: BTreeMap<Weight, u64> = BTreeMap::new();
        mult.insert(lambda.clone(), 1);
        let mut level: BTreeSet<Weight> = BTreeSet::from([lambda.clone()]);
        let mut depth = 0i64;
        while !level.is_empty() {
            depth += 1;
            let candidates: BTreeSet<Weight> = level
                .iter()
                .flat_map(|mu| simple.iter().map(move |a| mu - a))
                .collect();
            let mut next = BTreeSet::new();
            for nu in candidates {
                let shifted = &nu + &rho;
                let denom = top_norm - self.pairing(&shifted, &shifted);
                if denom.is_zero() {
                    continue;
                }
                let mut numer = Rational64::zero();
                for (alpha, &ht) in self.positive_roots.iter().zip(&heights) {
                    let mut k = 1;
                    while depth - k * ht >= 0 {
                        let up = &nu + &alpha.scale(k);
                        if let Some(&m) = mult.get(&up) {
                            numer += Rational64::from_integer(m as i64) * self.pairing(&up, alpha);
                        }
                        k += 1;
                    }
                }
                let m = Rational64::from_integer(2) * numer / denom;
                debug_assert!(
                    m.is_integer() && !m.is_negative(),
                    "Freudenthal gave {m} at {nu}"
                );
                let m = m.to_integer();
                if m > 0 {
                    mult.insert(nu.clone(), m as u64);
                    next.insert(nu);
                }
            }
            level = next;
        }
        Ok(mult)
    }
}

fn integer_symmetrizer(d: &[i64]) -> Vec<Rational64> {
    d.iter().map(|&x| Rational64::from_integer(x)).collect()
}

fn named_cartan(name: &str) -> Option<(Vec<Vec<i64>>, Vec<Rational64>)> {
    let upper = name.to_ascii_uppercase();
    let (family, n) = upper.split_at(1);
    let n: usize = n.parse().ok()?;
    let chain = |n: usize| -> Vec<Vec<i64>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect()
    };
    match (family, n) {
        ("A", n) if n >= 1 => Some((chain(n), integer_symmetrizer(&vec![1; n]))),
        ("B", n) if n >= 2 => {
            let mut a = chain(n);
            a[n - 1][n - 2] = -2;
            let mut d = vec![2; n];
            d[n - 1] = 1;
            Some((a, integer_symmetrizer(&d)))
        }
        ("C", n) if n >= 2 => {
            let mut a = chain(n);
            a[n - 2][n - 1] = -2;
            let mut d = vec![1; n];
            d[n - 1] = 2;
            Some((a, integer_symmetrizer(&d)))
        }
        ("D", n) if n >= 4 => {
            let mut a = chain(n);
            a[n - 2][n - 1] = 0;
            a[n - 1][n - 2] = 0;
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
            Some((a, integer_symmetrizer(&vec![1; n])))
        }
        ("G", 2) => Some((vec![vec![2, -3], vec![-1, 2]], integer_symmetrizer(&[1, 3]))),
        ("F", 4) => {
            let mut a = chain(4);
            a[2][1] = -2;
            Some((a, integer_symmetrizer(&[2, 2, 1, 1])))
        }
        _ => None,
    }
}

/// A Weyl group element as an integer matrix on fundamental coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    rank: usize,
    matrix: Vec<i64>,
    inverse: Vec<i64>,
    sign: i8,
    length: usize,
}

impl WeylElement {
    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &[i64] {
        &self.inverse
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    pub fn act(&self, lambda: &Weight) -> Weight {
        let n = self.rank;
        debug_assert_eq!(lambda.rank(), n);
        let coords2 = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.matrix[i * n + j] * lambda.coords2[j])
                    .sum()
            })
            .collect();
        Weight::from_doubled(coords2)
    }

    /// Acts on torus coordinates so that `e^lambda(w.t) = e^{w^-1 lambda}(t)`.
    pub(crate) fn act_on_rational(&self, t: &[Rational64]) -> Vec<Rational64> {
        let n = self.rank;
        (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| Rational64::from_integer(self.inverse[i * n + j]) * t[i])
                    .sum()
            })
            .collect()
    }

    pub(crate) fn act_on_real(&self, t: &[f64]) -> Vec<f64> {
        let n = self.rank;
        (0..n)
            .map(|j| (0..n).map(|i| self.inverse[i * n + j] as f64 * t[i]).sum())
            .collect()
    }
}

/// The full element list of a Weyl group.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    rank: usize,
    elements: Vec<WeylElement>,
    generators: Vec<usize>,
    index: HashMap<Vec<i64>, usize>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &WeylElement {
        &self.elements[i]
    }

    /// Indices of the simple reflections.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn find(&self, matrix: &[i64]) -> Option<usize> {
        self.index.get(matrix).copied()
    }

    /// Index of `elements[a] * elements[b]`.
    pub fn compose(&self, a: usize, b: usize) -> usize {
        let m = int_matmul(
            &self.elements[a].matrix,
            &self.elements[b].matrix,
            self.rank,
        );
        self.index[&m]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse]
    }

    /// Indices of the subgroup generated by the given element indices, sorted.
    pub fn subgroup(&self, generators: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([0usize]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in generators {
                let y = self.compose(x, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }
}
