//! Rectangular domains `Q = A_1 x ... x A_N`, Hamming balls inside them, and
//! the coding-theory counting functions `Vol` and `H_q`.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Elem, GaloisField};

pub type Point = Vec<Elem>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectangularDomain {
    field: Arc<GaloisField>,
    /// Each set sorted by canonical index.
    sets: Vec<Vec<Elem>>,
}

impl RectangularDomain {
    pub fn new(field: Arc<GaloisField>, sets: Vec<Vec<Elem>>) -> Result<Self> {
        let mut sorted = Vec::with_capacity(sets.len());
        for (i, mut set) in sets.into_iter().enumerate() {
            if set.is_empty() {
                return Err(Error::EmptySet(i));
            }
            if let Some(bad) = set.iter().find(|e| !field.contains(**e)) {
                return Err(Error::ElementOutOfRange { index: bad.index() as u64, order: field.order() });
            }
            set.sort_unstable();
            if let Some(w) = set.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateElement { set: i, elem: w[0].index() });
            }
            sorted.push(set);
        }
        Ok(RectangularDomain { field, sets: sorted })
    }

    /// `S^N`.
    pub fn power(field: Arc<GaloisField>, set: Vec<Elem>, n: usize) -> Result<Self> {
        Self::new(field, vec![set; n])
    }

    /// `×{a_i, b_i}`.
    pub fn two_point(field: Arc<GaloisField>, a: &[Elem], b: &[Elem]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
        }
        Self::new(field, a.iter().zip(b).map(|(&x, &y)| vec![x, y]).collect())
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.sets.len()
    }

    pub fn set(&self, i: usize) -> &[Elem] {
        &self.sets[i]
    }

    pub fn sets(&self) -> &[Vec<Elem>] {
        &self.sets
    }

    /// `|Q| = prod |A_i|`, exactly.
    pub fn size(&self) -> BigUint {
        self.sets.iter().fold(BigUint::one(), |acc, s| acc * BigUint::from(s.len()))
    }

    /// `|Q|` when it fits in a `u64`.
    pub fn size_u64(&self) -> Option<u64> {
        self.sets
            .iter()
            .try_fold(1u64, |acc, s| acc.checked_mul(s.len() as u64))
    }

    pub fn contains(&self, x: &[Elem]) -> bool {
        x.len() == self.sets.len()
            && x.iter().zip(&self.sets).all(|(e, s)| s.binary_search(e).is_ok())
    }

    pub fn contains_zero(&self) -> bool {
        self.sets.iter().any(|s| s.contains(&Elem::ZERO))
    }

    /// True when every `A_i` is the same set, i.e. `Q = S^N`.
    pub fn is_power(&self) -> bool {
        self.sets.windows(2).all(|w| w[0] == w[1])
    }

    /// Every point of `Q` in lexicographic order (last coordinate fastest).
    pub fn points(&self) -> GridPoints<'_> {
        GridPoints { domain: self, idx: vec![0; self.sets.len()], done: false }
    }

    pub fn to_json(&self) -> DomainJson {
        DomainJson {
            field: self.field.name(),
            sets: self
                .sets
                .iter()
                .map(|s| s.iter().map(|e| e.index()).collect())
                .collect(),
        }
    }

    pub fn from_json(json: &DomainJson) -> Result<Self> {
        let field = GaloisField::from_name(&json.field)?;
        let sets = json
            .sets
            .iter()
            .map(|s| s.iter().map(|&i| field.element(i as u64)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, sets)
    }
}

/// `{"field":"GF(q)","sets":[[indices],...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainJson {
    pub field: String,
    pub sets: Vec<Vec<u32>>,
}

pub struct GridPoints<'a> {
    domain: &'a RectangularDomain,
    idx: Vec<usize>,
    done: bool,
}

impl Iterator for GridPoints<'_> {
    type Item = Point;

    fn next(&mut self) -> Option<Point> {
        if self.done {
            return None;
        }
        let sets = &self.domain.sets;
        let point = self.idx.iter().zip(sets).map(|(&i, s)| s[i]).collect();
        self.done = true;
        for pos in (0..self.idx.len()).rev() {
            self.idx[pos] += 1;
            if self.idx[pos] < sets[pos].len() {
                self.done = false;
                break;
            }
            self.idx[pos] = 0;
        }
        Some(point)
    }
}

/// `d_H(a, b) = #{i | a_i != b_i}`.
pub fn hamming_distance(a: &[Elem], b: &[Elem]) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
    }
    Ok(a.iter().zip(b).filter(|(x, y)| x != y).count())
}

/// Lazily enumerates `{x in Q | d_H(x, center) <= radius}`.
///
/// Points come in order of distance. Within one distance the changed
/// positions run through their subsets in lexicographic order, and for each
/// subset the replacement values (which always differ from the center)
/// run in canonical element order, last position fastest. Every point is
/// produced exactly once.
pub fn enumerate_ball(center: &[Elem], radius: usize, domain: &RectangularDomain) -> Result<Ball> {
    if !domain.contains(center) {
        return Err(Error::NotInDomain);
    }
    let alternatives = domain
        .sets
        .iter()
        .zip(center)
        .map(|(s, c)| s.iter().copied().filter(|e| e != c).collect())
        .collect();
    Ok(Ball {
        center: center.to_vec(),
        alternatives,
        radius: radius.min(domain.nvars()),
        dist: 0,
        positions: Vec::new(),
        choice: Vec::new(),
        done: false,
    })
}

pub struct Ball {
    center: Point,
    alternatives: Vec<Vec<Elem>>,
    radius: usize,
    dist: usize,
    positions: Vec<usize>,
    choice: Vec<usize>,
    done: bool,
}

impl Ball {
    fn combination_usable(&self) -> bool {
        self.positions.iter().all(|&p| !self.alternatives[p].is_empty())
    }

    /// Advances `positions` to the next usable d-subset, or returns false.
    fn next_combination(&mut self) -> bool {
        let n = self.center.len();
        loop {
            let d = self.positions.len();
            let mut i = d;
            loop {
                if i == 0 {
                    return false;
                }
                i -= 1;
                if self.positions[i] < n - d + i {
                    break;
                }
                if i == 0 {
                    return false;
                }
            }
            self.positions[i] += 1;
            for j in i + 1..d {
                self.positions[j] = self.positions[j - 1] + 1;
            }
            if self.combination_usable() {
                return true;
            }
        }
    }

    /// Moves to the first usable combination of a larger distance.
    fn next_distance(&mut self) -> bool {
        loop {
            self.dist += 1;
            if self.dist > self.radius {
                return false;
            }
            self.positions = (0..self.dist).collect();
            if self.combination_usable() || self.next_combination() {
                self.choice = vec![0; self.dist];
                return true;
            }
        }
    }

    fn advance(&mut self) {
        for i in (0..self.choice.len()).rev() {
            self.choice[i] += 1;
            if self.choice[i] < self.alternatives[self.positions[i]].len() {
                return;
            }
            self.choice[i] = 0;
        }
        if self.next_combination() {
            return;
        }
        if !self.next_distance() {
            self.done = true;
        }
    }
}

impl Iterator for Ball {
    type Item = Point;

    fn next(&mut self) -> Option<Point> {
        if self.done {
            return None;
        }
        let mut point = self.center.clone();
        for (&pos, &c) in self.positions.iter().zip(&self.choice) {
            point[pos] = self.alternatives[pos][c];
        }
        self.advance();
        Some(point)
    }
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `Vol_s(n, k) = sum_{i=0}^{floor k} C(n, i) (s-1)^i`.
pub fn vol(s: u64, n: u64, k: f64) -> Result<BigUint> {
    if s < 1 {
        return Err(Error::InvalidArgument("alphabet size must be at least 1".into()));
    }
    if k.is_nan() || k < 0.0 {
        return Err(Error::InvalidArgument(format!("radius {k} is negative")));
    }
    let top = if k >= n as f64 { n } else { k.floor() as u64 };
    Ok(vol_exact(s, n, top))
}

/// `Vol_s(n, k)` for an integer radius.
pub fn vol_exact(s: u64, n: u64, k: u64) -> BigUint {
    let base = BigUint::from(s - 1);
    (0..=k.min(n))
        .map(|i| binomial(n, i) * base.pow(i as u32))
        .sum()
}

/// The s-ary entropy function
/// `H_s(x) = x log_s(s-1) - x log_s(x) - (1-x) log_s(1-x)` on `(0, 1)`,
/// with `H_s(0) = H_s(1) = 0`.
pub fn entropy(s: u64, x: f64) -> Result<f64> {
    if s < 2 {
        return Err(Error::InvalidArgument("entropy needs an alphabet of size >= 2".into()));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidArgument(format!("entropy argument {x} is outside [0, 1]")));
    }
    if x == 0.0 || x == 1.0 {
        return Ok(0.0);
    }
    let ln_s = (s as f64).ln();
    Ok((x * ((s - 1) as f64).ln() - x * x.ln() - (1.0 - x) * (1.0 - x).ln()) / ln_s)
}
