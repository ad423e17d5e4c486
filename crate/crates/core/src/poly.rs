//! Sparse multivariate polynomials over a [`GaloisField`].
//!
//! A polynomial is a map from exponent vectors to nonzero coefficients, so
//! `M(f)`, the number of monomials, is just the size of the map.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::domain::RectangularDomain;
use crate::error::{Error, Result};
use crate::gf::{Elem, GaloisField};

/// Exponent vector of a monomial `X_1^e_1 ... X_N^e_N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    /// Indices of the variables that occur with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct SparsePoly {
    field: Arc<GaloisField>,
    nvars: usize,
    terms: BTreeMap<Monomial, Elem>,
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly[{}; {} vars]({})", self.field.name(), self.nvars, self.to_text())
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn check_same(a: &SparsePoly, b: &SparsePoly) -> Result<()> {
    if a.field != b.field {
        return Err(Error::FieldMismatch(a.field.name(), b.field.name()));
    }
    if a.nvars != b.nvars {
        return Err(Error::DimensionMismatch { expected: a.nvars, found: b.nvars });
    }
    Ok(())
}

/// Univariate multiplication modulo a monic polynomial, coefficients low first.
fn mulmod(f: &GaloisField, a: &[Elem], b: &[Elem], modulus: &[Elem]) -> Vec<Elem> {
    let n = modulus.len() - 1;
    let mut prod = vec![Elem::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = f.add(prod[i + j], f.mul(x, y));
        }
    }
    while prod.len() > n {
        let lead = prod.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = prod.len() - n;
        for (j, &c) in modulus[..n].iter().enumerate() {
            prod[shift + j] = f.sub(prod[shift + j], f.mul(lead, c));
        }
    }
    prod.resize(n, Elem::ZERO);
    prod
}

/// `X^e mod modulus`, for a monic modulus of degree at least 1.
fn power_of_x_mod(f: &GaloisField, mut e: u64, modulus: &[Elem]) -> Vec<Elem> {
    let mut x = vec![Elem::ZERO; 2];
    x[1] = Elem::ONE;
    let mut base = mulmod(f, &[Elem::ONE], &x, modulus);
    let mut acc = mulmod(f, &[Elem::ONE], &[Elem::ONE], modulus);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(f, &acc, &base, modulus);
        }
        base = mulmod(f, &base, &base, modulus);
        e >>= 1;
    }
    acc
}

impl SparsePoly {
    pub fn zero(field: Arc<GaloisField>, nvars: usize) -> Self {
        SparsePoly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: Arc<GaloisField>, nvars: usize, c: Elem) -> Self {
        let mut p = Self::zero(field, nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(field: Arc<GaloisField>, nvars: usize) -> Self {
        Self::constant(field, nvars, Elem::ONE)
    }

    /// The variable `X_i` (0-based).
    pub fn variable(field: Arc<GaloisField>, nvars: usize, i: usize) -> Result<Self> {
        if i >= nvars {
            return Err(Error::VariableOutOfRange { index: i, nvars });
        }
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::from_terms(field, nvars, [(exps, Elem::ONE)])
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs. Repeated
    /// monomials are summed and zero coefficients dropped.
    pub fn from_terms<I>(field: Arc<GaloisField>, nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Elem)>,
    {
        let mut p = Self::zero(field, nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: exps.len() });
            }
            if !p.field.contains(c) {
                return Err(Error::ElementOutOfRange { index: c.index() as u64, order: p.field.order() });
            }
            p.accumulate(Monomial(exps), c);
        }
        p.prune();
        Ok(p)
    }

    fn accumulate(&mut self, m: Monomial, c: Elem) {
        if c.is_zero() {
            return;
        }
        let field = &self.field;
        self.terms
            .entry(m)
            .and_modify(|v| *v = field.add(*v, c))
            .or_insert(c);
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// `M(f)`: the number of monomials with nonzero coefficient.
    pub fn monomial_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Elem)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, exps: &[u32]) -> Elem {
        self.terms.get(&Monomial(exps.to_vec())).copied().unwrap_or(Elem::ZERO)
    }

    /// Checks that `x` is a point of the right length over this field.
    pub fn check_point(&self, x: &[Elem]) -> Result<()> {
        if x.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: x.len() });
        }
        if let Some(bad) = x.iter().find(|e| !self.field.contains(**e)) {
            return Err(Error::ElementOutOfRange { index: bad.index() as u64, order: self.field.order() });
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &[Elem]) -> Result<Elem> {
        self.check_point(x)?;
        Ok(self.eval_unchecked(x))
    }

    /// Evaluation for points already known to be valid.
    pub(crate) fn eval_unchecked(&self, x: &[Elem]) -> Elem {
        let f = &*self.field;
        let n = (f.order() - 1) as u64;
        let mut acc = Elem::ZERO;
        'terms: for (m, &c) in &self.terms {
            let mut l = f.log(c).unwrap() as u64;
            for (&xi, &e) in x.iter().zip(&m.0) {
                if e == 0 {
                    continue;
                }
                match f.log(xi) {
                    None => continue 'terms,
                    Some(lx) => l += lx as u64 * (e as u64 % n),
                }
            }
            acc = f.add(acc, f.exp(l));
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same(self, other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.accumulate(m.clone(), c);
        }
        out.prune();
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(*c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, c: Elem) -> Result<Self> {
        if !self.field.contains(c) {
            return Err(Error::ElementOutOfRange { index: c.index() as u64, order: self.field.order() });
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = self.field.mul(*v, c);
        }
        out.prune();
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_same(self, other)?;
        let mut out = Self::zero(self.field.clone(), self.nvars);
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                let exps = ma
                    .0
                    .iter()
                    .zip(&mb.0)
                    .map(|(a, b)| {
                        a.checked_add(*b)
                            .ok_or_else(|| Error::InvalidArgument("exponent overflow".into()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                out.accumulate(Monomial(exps), self.field.mul(ca, cb));
            }
        }
        out.prune();
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> Result<Self> {
        let mut acc = Self::one(self.field.clone(), self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Fixes `X_i = a` (0-based `i`), giving a polynomial in the remaining
    /// `N - 1` variables.
    pub fn substitute(&self, i: usize, a: Elem) -> Result<Self> {
        if i >= self.nvars {
            return Err(Error::VariableOutOfRange { index: i, nvars: self.nvars });
        }
        if !self.field.contains(a) {
            return Err(Error::ElementOutOfRange { index: a.index() as u64, order: self.field.order() });
        }
        let mut out = Self::zero(self.field.clone(), self.nvars - 1);
        for (m, &c) in &self.terms {
            let mut exps = m.0.clone();
            let e = exps.remove(i);
            out.accumulate(Monomial(exps), self.field.mul(c, self.field.pow(a, e as u64)));
        }
        out.prune();
        Ok(out)
    }

    /// Largest exponent of `X_i` (0-based) in the support; `None` for the
    /// zero polynomial.
    pub fn degree_in_variable(&self, i: usize) -> Result<Option<u32>> {
        if i >= self.nvars {
            return Err(Error::VariableOutOfRange { index: i, nvars: self.nvars });
        }
        Ok(self.terms.keys().map(|m| m.0[i]).max())
    }

    /// Replaces every exponent `e` by `e mod d`, i.e. the remainder modulo
    /// `(X_1^d - 1, ..., X_N^d - 1)`.
    pub fn reduce_exponents_mod(&self, d: u32) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidArgument("exponent modulus must be at least 1".into()));
        }
        let mut out = Self::zero(self.field.clone(), self.nvars);
        for (m, &c) in &self.terms {
            out.accumulate(Monomial(m.0.iter().map(|e| e % d).collect()), c);
        }
        out.prune();
        Ok(out)
    }

    /// Normal form modulo the vanishing ideal of `domain`, generated by
    /// `prod_{alpha in A_i} (X_i - alpha)`.
    ///
    /// The generators have pairwise coprime leading monomials, so dividing
    /// one variable at a time yields the unique remainder with
    /// `deg_{X_i} < |A_i|`.
    pub fn reduce_mod_domain(&self, domain: &RectangularDomain) -> Result<Self> {
        if **domain.field() != *self.field {
            return Err(Error::FieldMismatch(domain.field().name(), self.field.name()));
        }
        if domain.nvars() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: domain.nvars() });
        }
        let f = &*self.field;
        let q = f.order() as u64;
        let mut current = self.clone();
        for i in 0..self.nvars {
            let set = domain.set(i);
            let n = set.len() as u32;
            if current.terms.keys().all(|m| m.0[i] < n) {
                continue;
            }
            // prod (X - alpha), low coefficient first
            let mut gen = vec![Elem::ONE];
            for &alpha in set {
                let mut next = vec![Elem::ZERO; gen.len() + 1];
                for (j, &c) in gen.iter().enumerate() {
                    next[j + 1] = f.add(next[j + 1], c);
                    next[j] = f.sub(next[j], f.mul(c, alpha));
                }
                gen = next;
            }
            let mut cache: HashMap<u32, Vec<Elem>> = HashMap::new();
            let mut out = Self::zero(self.field.clone(), self.nvars);
            for (m, &c) in &current.terms {
                let e = m.0[i];
                if e < n {
                    out.accumulate(m.clone(), c);
                    continue;
                }
                let rem = cache.entry(e).or_insert_with(|| {
                    // X^e and X^e' agree on all of F when e ≡ e' (mod q-1),
                    // e, e' >= 1, so they share a normal form.
                    let e = e as u64;
                    let e = if e >= q { (e - 1) % (q - 1) + 1 } else { e };
                    power_of_x_mod(f, e, &gen)
                });
                for (j, &r) in rem.iter().enumerate() {
                    if r.is_zero() {
                        continue;
                    }
                    let mut exps = m.0.clone();
                    exps[i] = j as u32;
                    out.accumulate(Monomial(exps), f.mul(c, r));
                }
            }
            out.prune();
            current = out;
        }
        Ok(current)
    }

    /// Text form: terms `c*x1^e1*x2^e2` joined by `+`, coefficients as
    /// canonical indices, variables 1-based. The zero polynomial is `0`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut s = c.index().to_string();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    s.push_str(&format!("*x{}^{}", i + 1, e));
                }
            }
            parts.push(s);
        }
        parts.join("+")
    }

    /// Parses the text form. Factors may be written in any order, `^1` and
    /// a coefficient of 1 may be omitted, and whitespace is ignored.
    pub fn parse_text(field: Arc<GaloisField>, nvars: usize, text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut p = Self::zero(field.clone(), nvars);
        for term in compact.split('+') {
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in `{text}`")));
            }
            let mut coeff = Elem::ONE;
            let mut exps = vec![0u32; nvars];
            for factor in term.split('*') {
                if let Some(var) = factor.strip_prefix('x').or_else(|| factor.strip_prefix('X')) {
                    let (idx, e) = match var.split_once('^') {
                        Some((idx, e)) => (idx, e),
                        None => (var, "1"),
                    };
                    let idx: usize = idx
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad variable `{factor}`")))?;
                    let e: u32 = e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                    if idx == 0 || idx > nvars {
                        return Err(Error::VariableOutOfRange { index: idx, nvars });
                    }
                    exps[idx - 1] = exps[idx - 1]
                        .checked_add(e)
                        .ok_or_else(|| Error::Parse("exponent overflow".into()))?;
                } else {
                    let c: u64 = factor
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad factor `{factor}`")))?;
                    coeff = field.mul(coeff, field.element(c)?);
                }
            }
            p.accumulate(Monomial(exps), coeff);
        }
        p.prune();
        Ok(p)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            field: Some(self.field.name()),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson { coeff: c.index(), exps: m.0.clone() })
                .collect(),
        }
    }

    /// Builds from the JSON form; `default_field` is used when the record
    /// omits its field (as polynomials nested in a system file may).
    pub fn from_json(json: &PolyJson, default_field: Option<&Arc<GaloisField>>) -> Result<Self> {
        let field = match (&json.field, default_field) {
            (Some(name), default) => {
                let named = GaloisField::from_name(name)?;
                if let Some(d) = default {
                    if **d != *named {
                        return Err(Error::FieldMismatch(d.name(), named.name()));
                    }
                }
                named
            }
            (None, Some(d)) => d.clone(),
            (None, None) => return Err(Error::Parse("polynomial does not name its field".into())),
        };
        let terms = json
            .terms
            .iter()
            .map(|t| Ok((t.exps.clone(), field.element(t.coeff as u64)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(field, json.nvars, terms)
    }
}

/// `{"field":"GF(p^k)","nvars":N,"terms":[{"coeff":c,"exps":[...]}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: u32,
    pub exps: Vec<u32>,
}


#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64, k: u32) -> Arc<GaloisField> {
        GaloisField::shared(p, k).unwrap()
    }

    fn el(f: &GaloisField, i: u64) -> Elem {
        f.element(i).unwrap()
    }

    /// Term-by-term evaluation with repeated multiplication, no log tables.
    fn naive_eval(p: &SparsePoly, x: &[Elem]) -> Elem {
        let f = p.field();
        let mut acc = Elem::ZERO;
        for (m, c) in p.terms() {
            let mut t = c;
            for (&xi, &e) in x.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t = f.mul(t, xi);
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }

    fn random_poly(rng: &mut ChaCha8Rng, f: &Arc<GaloisField>, n: usize, terms: usize, max_e: u32) -> SparsePoly {
        let q = f.order() as u64;
        let t = (0..terms).map(|_| {
            let exps = (0..n).map(|_| rng.gen_range(0..=max_e)).collect();
            (exps, el(f, rng.gen_range(1..q)))
        });
        SparsePoly::from_terms(f.clone(), n, t.collect::<Vec<_>>()).unwrap()
    }

    fn random_point(rng: &mut ChaCha8Rng, f: &GaloisField, n: usize) -> Vec<Elem> {
        (0..n).map(|_| el(f, rng.gen_range(0..f.order() as u64))).collect()
    }

    fn x_plus_one_product(f: &Arc<GaloisField>, n: usize) -> SparsePoly {
        let mut acc = SparsePoly::one(f.clone(), n);
        for i in 0..n {
            let xi = SparsePoly::variable(f.clone(), n, i).unwrap();
            acc = acc.mul(&xi.add(&SparsePoly::one(f.clone(), n)).unwrap()).unwrap();
        }
        acc
    }

    #[test]
    fn monomial_counts() {
        let f = gf(7, 1);
        assert_eq!(SparsePoly::zero(f.clone(), 3).monomial_count(), 0);
        // (X_1 + 1)^m has m + 1 monomials when the characteristic exceeds m
        let big = gf(101, 1);
        let x1p1 = SparsePoly::parse_text(big.clone(), 2, "x1+1").unwrap();
        for m in 0..12 {
            assert_eq!(x1p1.pow(m).unwrap().monomial_count(), m as usize + 1);
        }
        for n in 1..7 {
            assert_eq!(x_plus_one_product(&f, n).monomial_count(), 1 << n);
        }
    }

    #[test]
    fn evaluate_examples() {
        let f = gf(3, 1);
        let one = SparsePoly::one(f.clone(), 2);
        assert_eq!(one.evaluate(&[el(&f, 2), el(&f, 0)]).unwrap(), Elem::ONE);
        let p = SparsePoly::parse_text(f.clone(), 2, "x1^2*x2 + 2").unwrap();
        assert_eq!(p.evaluate(&[el(&f, 2), el(&f, 1)]).unwrap(), Elem::ZERO);
        assert!(matches!(p.evaluate(&[el(&f, 1)]), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(
            p.evaluate(&[el(&gf(5, 1), 4), el(&f, 1)]),
            Err(Error::ElementOutOfRange { .. })
        ));
    }

    #[test]
    fn evaluate_matches_naive_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2), (2, 3), (7, 1)] {
            let f = gf(p, k);
            for _ in 0..60 {
                let n = rng.gen_range(1..5);
                let terms = rng.gen_range(0..8);
                let poly = random_poly(&mut rng, &f, n, terms, 12);
                for _ in 0..10 {
                    let x = random_point(&mut rng, &f, n);
                    assert_eq!(poly.evaluate(&x).unwrap(), naive_eval(&poly, &x));
                }
            }
        }
    }

    #[test]
    fn ring_operations() {
        let f = gf(5, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let a = random_poly(&mut rng, &f, 2, 4, 5);
            let b = random_poly(&mut rng, &f, 2, 4, 5);
            assert!(a.add(&a.neg()).unwrap().is_zero());
            let prod = a.mul(&b).unwrap();
            let sum = a.add(&b).unwrap();
            let c = el(&f, rng.gen_range(0..5));
            let scaled = a.scalar_mul(c).unwrap();
            for x in f.elements() {
                for y in f.elements() {
                    let pt = [x, y];
                    let (va, vb) = (a.evaluate(&pt).unwrap(), b.evaluate(&pt).unwrap());
                    assert_eq!(prod.evaluate(&pt).unwrap(), f.mul(va, vb));
                    assert_eq!(sum.evaluate(&pt).unwrap(), f.add(va, vb));
                    assert_eq!(scaled.evaluate(&pt).unwrap(), f.mul(c, va));
                }
            }
            let cube = a.pow(3).unwrap();
            assert_eq!(cube, a.mul(&a).unwrap().mul(&a).unwrap());
        }
        let g = gf(7, 1);
        let a = SparsePoly::one(f.clone(), 2);
        assert!(matches!(a.add(&SparsePoly::one(g, 2)), Err(Error::FieldMismatch(..))));
        assert!(matches!(a.mul(&SparsePoly::one(f.clone(), 3)), Err(Error::DimensionMismatch { .. })));
        assert_eq!(a.pow(0).unwrap(), a);
    }

    #[test]
    fn substitute_examples() {
        let f = gf(5, 1);
        let p = SparsePoly::parse_text(f.clone(), 2, "x1*x2").unwrap();
        let a = el(&f, 3);
        let s = p.substitute(0, a).unwrap();
        assert_eq!(s.nvars(), 1);
        assert_eq!(s, SparsePoly::parse_text(f.clone(), 1, "3*x1").unwrap());
        assert!(p.substitute(2, a).is_err());

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let p = random_poly(&mut rng, &f, 3, 6, 6);
            let i = rng.gen_range(0..3);
            let a = el(&f, rng.gen_range(0..5));
            let s = p.substitute(i, a).unwrap();
            let x = random_point(&mut rng, &f, 2);
            let mut full = x.clone();
            full.insert(i, a);
            assert_eq!(s.evaluate(&x).unwrap(), p.evaluate(&full).unwrap());
        }
    }

    #[test]
    fn degree_in_variable_examples() {
        let f = gf(3, 1);
        assert_eq!(SparsePoly::one(f.clone(), 2).degree_in_variable(0).unwrap(), Some(0));
        let p = SparsePoly::parse_text(f.clone(), 2, "x1^2*x2").unwrap();
        assert_eq!(p.degree_in_variable(0).unwrap(), Some(2));
        assert_eq!(p.degree_in_variable(1).unwrap(), Some(1));
        assert_eq!(SparsePoly::zero(f.clone(), 2).degree_in_variable(1).unwrap(), None);
        assert!(p.degree_in_variable(2).is_err());
    }

    #[test]
    fn reduce_exponents_examples() {
        let f = gf(2, 2);
        let p = SparsePoly::parse_text(f.clone(), 2, "x1^2*x2 + 3*x2^2").unwrap();
        assert_eq!(p.reduce_exponents_mod(3).unwrap(), p);
        assert!(p.reduce_exponents_mod(0).is_err());

        // X_1^3 -> 1, agreeing on the subgroup {1, w, w^2}
        let cube = SparsePoly::parse_text(f.clone(), 1, "x1^3").unwrap();
        let red = cube.reduce_exponents_mod(3).unwrap();
        assert_eq!(red, SparsePoly::one(f.clone(), 1));
        for s in f.subgroup_of_order(3).unwrap() {
            assert_eq!(cube.evaluate(&[s]).unwrap(), red.evaluate(&[s]).unwrap());
        }

        // X^d + X^{2d} collide on the constant monomial
        let g = gf(7, 1);
        let p = SparsePoly::parse_text(g.clone(), 1, "x1^3 + x1^6").unwrap();
        assert_eq!(p.reduce_exponents_mod(3).unwrap(), SparsePoly::constant(g.clone(), 1, el(&g, 2)));
    }

    #[test]
    fn reduce_mod_domain_f4_example() {
        let f = gf(2, 2);
        let s = vec![el(&f, 2), el(&f, 3)];
        for n in 1..=6 {
            let dom = RectangularDomain::power(f.clone(), s.clone(), n).unwrap();
            let exps = vec![2; n];
            let p = SparsePoly::from_terms(f.clone(), n, [(exps, Elem::ONE)]).unwrap();
            let red = p.reduce_mod_domain(&dom).unwrap();
            assert_eq!(red, x_plus_one_product(&f, n));
            assert_eq!(red.monomial_count(), 1 << n);
        }
    }

    #[test]
    fn reduce_mod_domain_agrees_on_grid() {
        let f = gf(5, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..150 {
            let n = rng.gen_range(1..=3);
            let sets: Vec<Vec<Elem>> = (0..n)
                .map(|_| {
                    let mut s: Vec<Elem> = f.elements().filter(|_| rng.gen_bool(0.5)).collect();
                    if s.is_empty() {
                        s.push(el(&f, rng.gen_range(0..5)));
                    }
                    s
                })
                .collect();
            let dom = RectangularDomain::new(f.clone(), sets).unwrap();
            let p = random_poly(&mut rng, &f, n, 6, 30);
            let red = p.reduce_mod_domain(&dom).unwrap();
            for i in 0..n {
                if let Some(d) = red.degree_in_variable(i).unwrap() {
                    assert!((d as usize) < dom.set(i).len());
                }
            }
            for x in dom.points() {
                assert_eq!(red.evaluate(&x).unwrap(), p.evaluate(&x).unwrap());
            }
            assert_eq!(red.reduce_mod_domain(&dom).unwrap(), red);
        }
    }

    #[test]
    fn reduce_handles_exponents_beyond_field_order() {
        let f = gf(3, 1);
        let dom = RectangularDomain::power(f.clone(), f.elements().collect(), 1).unwrap();
        let p = SparsePoly::parse_text(f.clone(), 1, "x1^1000001").unwrap();
        let red = p.reduce_mod_domain(&dom).unwrap();
        // x^(2k+1) = x on GF(3)
        assert_eq!(red, SparsePoly::parse_text(f.clone(), 1, "x1").unwrap());
    }

    #[test]
    fn text_format() {
        let f = gf(3, 2);
        let p = SparsePoly::parse_text(f.clone(), 3, "5*x1^2*x3 + x2 + 7 + 3*x2^1").unwrap();
        assert_eq!(p.monomial_count(), 3);
        let text = p.to_text();
        assert_eq!(text, "7+4*x2^1+5*x1^2*x3^1");
        assert_eq!(SparsePoly::parse_text(f.clone(), 3, &text).unwrap(), p);
        assert_eq!(SparsePoly::zero(f.clone(), 2).to_text(), "0");
        assert!(SparsePoly::parse_text(f.clone(), 2, "0").unwrap().is_zero());
        assert!(SparsePoly::parse_text(f.clone(), 2, "x3").is_err());
        assert!(SparsePoly::parse_text(f.clone(), 2, "9*x1").is_err());
        assert!(SparsePoly::parse_text(f.clone(), 2, "x1++x2").is_err());
        assert!(SparsePoly::parse_text(f.clone(), 2, "y1").is_err());
        assert!(SparsePoly::parse_text(f.clone(), 2, "").is_err());
    }

    #[test]
    fn json_format() {
        let f = gf(2, 2);
        let p = SparsePoly::parse_text(f.clone(), 2, "x1^2*x2^2 + 3").unwrap();
        let s = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(
            s,
            r#"{"field":"GF(2^2)","nvars":2,"terms":[{"coeff":3,"exps":[0,0]},{"coeff":1,"exps":[2,2]}]}"#
        );
        let back: PolyJson = serde_json::from_str(&s).unwrap();
        assert_eq!(SparsePoly::from_json(&back, None).unwrap(), p);
        let mut nested = back.clone();
        nested.field = None;
        assert!(SparsePoly::from_json(&nested, None).is_err());
        assert_eq!(SparsePoly::from_json(&nested, Some(&f)).unwrap(), p);
        assert!(SparsePoly::from_json(&back, Some(&gf(3, 1))).is_err());
        let bad = PolyJson { field: Some("GF(4)".into()), nvars: 2, terms: vec![TermJson { coeff: 1, exps: vec![1] }] };
        assert!(SparsePoly::from_json(&bad, None).is_err());
    }
}
