//! Exhaustive ground truth for the monomial-count, density and
//! combinatorial bounds the search radii rest on.
//!
//! Everything here scans full domains, so inputs are capped at
//! [`ENUMERATION_CAP`] points. Verifiers first check the hypotheses of the
//! bound they test and return [`Error::Hypothesis`] when one fails; a
//! vacuous pass is never reported. [`generate`] builds random instances that
//! satisfy the hypotheses by construction and [`suite`] runs seeded batches.

pub mod generate;
pub mod suite;

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::domain::{hamming_distance, vol_exact, entropy, Point, RectangularDomain};
use crate::error::{Error, Result};
use crate::gf::{Elem, GaloisField};
use crate::poly::SparsePoly;
use crate::tester::radius_general;

pub use suite::{run_suite, CheckSummary, Counterexample, SuiteReport};

/// Largest domain any exhaustive scan will walk.
pub const ENUMERATION_CAP: u64 = 1_000_000;

/// Relative slack for inequalities between real numbers.
pub const REAL_MARGIN: f64 = 1e-9;

/// `lhs >= rhs` up to [`REAL_MARGIN`], relative to `max(1, |rhs|)`.
pub fn real_at_least(lhs: f64, rhs: f64) -> bool {
    lhs + REAL_MARGIN * rhs.abs().max(1.0) >= rhs
}

/// Outcome of one bound check: the bound as claimed and the observed value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub holds: bool,
    pub claimed: String,
    pub observed: String,
}

impl BoundCheck {
    fn new(holds: bool, claimed: impl Into<String>, observed: impl Into<String>) -> Self {
        BoundCheck { holds, claimed: claimed.into(), observed: observed.into() }
    }
}

fn check_cap(domain: &RectangularDomain) -> Result<u64> {
    match domain.size_u64() {
        Some(n) if n <= ENUMERATION_CAP => Ok(n),
        _ => Err(Error::CapExceeded { size: domain.size().to_string(), cap: ENUMERATION_CAP }),
    }
}

fn check_compatible(f: &SparsePoly, domain: &RectangularDomain) -> Result<()> {
    if **f.field() != **domain.field() {
        return Err(Error::FieldMismatch(f.field().name(), domain.field().name()));
    }
    if f.nvars() != domain.nvars() {
        return Err(Error::DimensionMismatch { expected: domain.nvars(), found: f.nvars() });
    }
    check_cap(domain)?;
    Ok(())
}

fn hypothesis<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Hypothesis(msg.into()))
}

/// `W = {x in Q : f(x) != 0}` in lexicographic order.
pub fn nonzero_set(f: &SparsePoly, domain: &RectangularDomain) -> Result<Vec<Point>> {
    check_compatible(f, domain)?;
    Ok(domain.points().filter(|x| !f.eval_unchecked(x).is_zero()).collect())
}

/// `|W|` without materializing `W`.
pub fn nonzero_count(f: &SparsePoly, domain: &RectangularDomain) -> Result<u64> {
    check_compatible(f, domain)?;
    Ok(domain.points().filter(|x| !f.eval_unchecked(x).is_zero()).count() as u64)
}

/// Whether `f` vanishes on every point of `Q` sharing a coordinate with `a`.
pub fn is_absorbing(f: &SparsePoly, a: &[Elem], domain: &RectangularDomain) -> Result<bool> {
    check_compatible(f, domain)?;
    if !domain.contains(a) {
        return Err(Error::NotInDomain);
    }
    Ok(domain
        .points()
        .filter(|x| x.iter().zip(a).any(|(u, v)| u == v))
        .all(|x| f.eval_unchecked(&x).is_zero()))
}

/// `reduce(g * prod (X_i - a_i), Q)`: absorbing at `a` for `Q` and reduced
/// modulo the vanishing ideal of `Q`.
pub fn make_absorbing(g: &SparsePoly, a: &[Elem], domain: &RectangularDomain) -> Result<SparsePoly> {
    if !domain.contains(a) {
        return Err(Error::NotInDomain);
    }
    let field = domain.field();
    let n = domain.nvars();
    let mut f = g.clone();
    for (i, &ai) in a.iter().enumerate() {
        let factor = SparsePoly::variable(field.clone(), n, i)?.sub(&SparsePoly::constant(field.clone(), n, ai))?;
        f = f.mul(&factor)?;
    }
    f.reduce_mod_domain(domain)
}

/// A polynomial absorbing at `a` for `Q`, optionally with a point `b`
/// where it is nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct AbsorbingInstance {
    pub poly: SparsePoly,
    pub domain: RectangularDomain,
    pub a: Point,
    pub b: Option<Point>,
}

impl AbsorbingInstance {
    pub fn new(poly: SparsePoly, domain: RectangularDomain, a: Point, b: Option<Point>) -> Result<Self> {
        if !is_absorbing(&poly, &a, &domain)? {
            return hypothesis("polynomial is not absorbing at a");
        }
        if let Some(b) = &b {
            if !domain.contains(b) {
                return Err(Error::NotInDomain);
            }
            if poly.eval_unchecked(b).is_zero() {
                return hypothesis("polynomial vanishes at b");
            }
        }
        Ok(AbsorbingInstance { poly, domain, a, b })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "poly": self.poly.to_json(),
            "domain": self.domain.to_json(),
            "a": self.a,
            "b": self.b,
        })
    }
}

/// The other element of a two-element set.
fn opposite(set: &[Elem], x: Elem) -> Option<Elem> {
    match set {
        [u, v] if *u == x => Some(*v),
        [u, v] if *v == x => Some(*u),
        _ => None,
    }
}

/// Monomial count lower bound for absorbing polynomials on two-point
/// products: `M(f) >= prod r_i/(r_i - 1)` whenever `a_i^{r_i} = b_i^{r_i}`,
/// checked as `M(f) prod (r_i - 1) >= prod r_i`.
pub fn verify_coeffs_bound(inst: &AbsorbingInstance, orders: &[u32]) -> Result<BoundCheck> {
    let f = &inst.poly;
    let field = f.field();
    let n = inst.domain.nvars();
    if orders.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: orders.len() });
    }
    if inst.a.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: inst.a.len() });
    }
    let mut b = Vec::with_capacity(n);
    for (i, set) in inst.domain.sets().iter().enumerate() {
        let ai = inst.a[i];
        let bi = opposite(set, ai).ok_or_else(|| Error::Hypothesis(format!("coordinate set {i} is not {{a_i, b_i}}")))?;
        if ai.is_zero() || bi.is_zero() {
            return hypothesis(format!("coordinate {i} has a zero endpoint"));
        }
        if field.pow(ai, orders[i] as u64) != field.pow(bi, orders[i] as u64) {
            return hypothesis(format!("a_{i}^r_{i} != b_{i}^r_{i} for r_{i} = {}", orders[i]));
        }
        b.push(bi);
    }
    if let Some(given) = &inst.b {
        if *given != b {
            return hypothesis("b is not the point opposite to a");
        }
    }
    if !is_absorbing(f, &inst.a, &inst.domain)? {
        return hypothesis("polynomial is not absorbing at a");
    }
    if f.eval_unchecked(&b).is_zero() {
        return hypothesis("polynomial vanishes at b");
    }
    let m = f.monomial_count();
    let num: BigUint = orders.iter().map(|&r| BigUint::from(r)).product();
    let den: BigUint = orders.iter().map(|&r| BigUint::from(r - 1)).product();
    let holds = BigUint::from(m) * &den >= num;
    Ok(BoundCheck::new(holds, format!("M(f) >= {num}/{den}"), format!("M(f) = {m}")))
}

fn is_subgroup(field: &GaloisField, set: &[Elem]) -> bool {
    let members: HashSet<Elem> = set.iter().copied().collect();
    !set.is_empty()
        && set.iter().all(|x| !x.is_zero())
        && set.iter().all(|&x| set.iter().all(|&y| members.contains(&field.mul(x, y))))
}

/// `M(f) >= (d/(d-1))^N` for `f` absorbing on `S^N`, `S` a multiplicative
/// subgroup of order `d`, with a nonzero on `S^N`.
pub fn verify_kw_bound(f: &SparsePoly, subgroup: &[Elem], a: &[Elem]) -> Result<BoundCheck> {
    let field = f.field();
    if !is_subgroup(field, subgroup) {
        return hypothesis("S is not a multiplicative subgroup");
    }
    let n = f.nvars();
    let domain = RectangularDomain::power(field.clone(), subgroup.to_vec(), n)?;
    if !is_absorbing(f, a, &domain)? {
        return hypothesis("polynomial is not absorbing at a");
    }
    if nonzero_count(f, &domain)? == 0 {
        return hypothesis("polynomial vanishes on S^N");
    }
    let d = domain.set(0).len() as u64;
    let m = f.monomial_count();
    let lhs = BigUint::from(m) * BigUint::from(d - 1).pow(n as u32);
    let rhs = BigUint::from(d).pow(n as u32);
    Ok(BoundCheck::new(lhs >= rhs, format!("M(f) >= ({d}/{})^{n}", d - 1), format!("M(f) = {m}")))
}

/// Density on two-point products with a common order `r`
/// (`a_i^r = b_i^r`): `|W| >= 2^(N - log_t M(f))`, `t = r/(r-1)`.
pub fn verify_2elements_density(f: &SparsePoly, domain: &RectangularDomain, r: u32) -> Result<BoundCheck> {
    check_compatible(f, domain)?;
    let field = f.field();
    if r < 2 {
        return hypothesis("common order must be at least 2");
    }
    for (i, set) in domain.sets().iter().enumerate() {
        if set.len() != 2 {
            return hypothesis(format!("coordinate set {i} does not have two elements"));
        }
        if field.pow(set[0], r as u64) != field.pow(set[1], r as u64) {
            return hypothesis(format!("coordinate set {i} does not satisfy a^r = b^r for r = {r}"));
        }
    }
    let w = nonzero_count(f, domain)?;
    if w == 0 {
        return hypothesis("polynomial vanishes on Q");
    }
    let n = domain.nvars() as f64;
    let m = f.monomial_count() as f64;
    let log_t_m = m.ln() / (r as f64 / (r - 1) as f64).ln();
    let rhs = (n - log_t_m).exp2();
    Ok(BoundCheck::new(
        real_at_least(w as f64, rhs),
        format!("|W| >= 2^(N - log_t M) = {rhs:.6}"),
        format!("|W| = {w}, M(f) = {m}"),
    ))
}

/// The density chain on `S^N`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityCheck {
    pub nonzeros: u64,
    pub log_t_m: f64,
    /// `|W| * Vol_s(N, floor(log_t M)) >= s^N`, exact.
    pub volume: BoundCheck,
    /// `|W| >= s^N / (N s)^(log_t M)`.
    pub power: BoundCheck,
    /// `|W| >= s^(N (1 - H_s(log_t M / N)))`, when `M <= t^(N (s-1)/s)`.
    pub entropy_alphabet: Option<BoundCheck>,
    /// As `entropy_alphabet` with the field order `q` in place of `s` in
    /// both the entropy base and the hypothesis.
    pub entropy_field: Option<BoundCheck>,
}

impl DensityCheck {
    /// The volume, power and alphabet-entropy bounds.
    pub fn holds(&self) -> bool {
        self.volume.holds && self.power.holds && self.entropy_alphabet.as_ref().is_none_or(|c| c.holds)
    }
}

fn entropy_check(w: u64, s: u64, n: usize, log_t_m: f64, base: u64) -> Result<Option<BoundCheck>> {
    let nf = n as f64;
    // hypothesis M <= t^(N (base-1)/base), i.e. log_t M / N <= (base-1)/base
    let x = log_t_m / nf;
    let limit = (base - 1) as f64 / base as f64;
    if !(x <= limit + REAL_MARGIN) {
        return Ok(None);
    }
    let h = entropy(base, x.min(limit).max(0.0))?;
    let rhs = (s as f64).powf(nf * (1.0 - h));
    Ok(Some(BoundCheck::new(
        real_at_least(w as f64, rhs),
        format!("|W| >= {s}^(N (1 - H_{base}({x:.6}))) = {rhs:.6}"),
        format!("|W| = {w}"),
    )))
}

/// Density of nonzeros on `S^N` for zero-free `S` with `|S| >= 2`.
/// `t` comes from the largest ratio order within `S`.
pub fn verify_density_bounds(f: &SparsePoly, set: &[Elem], n: usize) -> Result<DensityCheck> {
    let field = f.field();
    let domain = RectangularDomain::power(field.clone(), set.to_vec(), n)?;
    check_compatible(f, &domain)?;
    if domain.contains_zero() {
        return hypothesis("S contains zero");
    }
    let s = domain.set(0).len() as u64;
    if s < 2 {
        return hypothesis("|S| must be at least 2");
    }
    let w = nonzero_count(f, &domain)?;
    if w == 0 {
        return hypothesis("polynomial vanishes on S^N");
    }
    let m = f.monomial_count() as u64;
    let r = field.max_ratio_order(&[domain.set(0)])?;
    let k = radius_general(m, r as u64)?;
    let log_t_m = (m as f64).ln() / (r as f64 / (r - 1) as f64).ln();

    let vol = vol_exact(s, n as u64, k);
    let total = BigUint::from(s).pow(n as u32);
    let volume = BoundCheck::new(
        BigUint::from(w) * &vol >= total,
        format!("|W| >= {total}/Vol_{s}({n}, {k}) = {total}/{vol}"),
        format!("|W| = {w}"),
    );

    let nf = n as f64;
    let power_rhs = (s as f64).powf(nf) / (nf * s as f64).powf(log_t_m);
    let power = BoundCheck::new(
        real_at_least(w as f64, power_rhs),
        format!("|W| >= s^N/(N s)^(log_t M) = {power_rhs:.6}"),
        format!("|W| = {w}"),
    );

    Ok(DensityCheck {
        nonzeros: w,
        log_t_m,
        volume,
        power,
        entropy_alphabet: entropy_check(w, s, n, log_t_m, s)?,
        entropy_field: entropy_check(w, s, n, log_t_m, field.order() as u64)?,
    })
}

/// `M(f) >= 2^N` for `f` with `deg_{X_i} f < |A_i|`, absorbing at a point
/// with nonzero coordinates, and nonzero somewhere on `Q`.
pub fn verify_redcoeffs(f: &SparsePoly, domain: &RectangularDomain, a: &[Elem]) -> Result<BoundCheck> {
    check_compatible(f, domain)?;
    if !domain.contains(a) {
        return Err(Error::NotInDomain);
    }
    if a.iter().any(|x| x.is_zero()) {
        return hypothesis("absorption point has a zero coordinate");
    }
    for i in 0..domain.nvars() {
        if let Some(d) = f.degree_in_variable(i)? {
            if d as usize >= domain.set(i).len() {
                return hypothesis(format!("deg in x{} is {d}, not below |A_{}| = {}", i + 1, i + 1, domain.set(i).len()));
            }
        }
    }
    if !is_absorbing(f, a, domain)? {
        return hypothesis("polynomial is not absorbing at a");
    }
    if nonzero_count(f, domain)? == 0 {
        return hypothesis("polynomial vanishes on Q");
    }
    Ok(at_least_two_pow(f))
}

/// `M(f) >= 2^N` for `f` absorbing at `a` on `×{a_i, 0}` with `f(0) != 0`.
pub fn verify_coeffs2(f: &SparsePoly, domain: &RectangularDomain, a: &[Elem]) -> Result<BoundCheck> {
    check_compatible(f, domain)?;
    if a.len() != domain.nvars() {
        return Err(Error::DimensionMismatch { expected: domain.nvars(), found: a.len() });
    }
    for (i, (set, ai)) in domain.sets().iter().zip(a).enumerate() {
        if ai.is_zero() || set.as_slice() != [Elem::ZERO, *ai] {
            return hypothesis(format!("coordinate set {i} is not {{0, a_{i}}} with a_{i} != 0"));
        }
    }
    if f.eval_unchecked(&vec![Elem::ZERO; domain.nvars()]).is_zero() {
        return hypothesis("polynomial vanishes at the origin");
    }
    if !is_absorbing(f, a, domain)? {
        return hypothesis("polynomial is not absorbing at a");
    }
    Ok(at_least_two_pow(f))
}

fn at_least_two_pow(f: &SparsePoly) -> BoundCheck {
    let n = f.nvars();
    let m = f.monomial_count();
    let holds = BigUint::from(m) >= (BigUint::one() << n);
    BoundCheck::new(holds, format!("M(f) >= 2^{n}"), format!("M(f) = {m}"))
}

/// `sum_{I} (-1)^(N-|I|) p(c^I)` over all subsets `I` of the coordinates,
/// where `c^I` takes `b_i` for `i` in `I` and `a_i` elsewhere.
pub fn alternating_difference(p: &SparsePoly, a: &[Elem], b: &[Elem]) -> Result<Elem> {
    let n = p.nvars();
    p.check_point(a)?;
    p.check_point(b)?;
    if (1u64 << n.min(63)) > ENUMERATION_CAP {
        return Err(Error::CapExceeded { size: format!("2^{n}"), cap: ENUMERATION_CAP });
    }
    let field = p.field();
    let mut acc = Elem::ZERO;
    let mut c = a.to_vec();
    for mask in 0u64..(1 << n) {
        for i in 0..n {
            c[i] = if mask >> i & 1 == 1 { b[i] } else { a[i] };
        }
        let v = p.eval_unchecked(&c);
        let outside = n - mask.count_ones() as usize;
        acc = if outside.is_multiple_of(2) { field.add(acc, v) } else { field.sub(acc, v) };
    }
    Ok(acc)
}

/// Result of [`find_covering_tuple`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringTuple {
    /// The first tuple (lexicographically) agreeing with every member of
    /// `S` in some coordinate.
    pub tuple: Option<Vec<u32>>,
    /// Whether `|S| prod (r_i - 1) < prod r_i`, which guarantees a tuple.
    pub hypothesis: bool,
}

/// Scans `×{0..r_i-1}` for a tuple that shares a coordinate with every
/// member of `tuples`.
pub fn find_covering_tuple(tuples: &[Vec<u32>], radices: &[u32]) -> Result<CoveringTuple> {
    let n = radices.len();
    if let Some(i) = radices.iter().position(|&r| r < 2) {
        return Err(Error::InvalidArgument(format!("radix {i} must be at least 2")));
    }
    for s in tuples {
        if s.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: s.len() });
        }
        if s.iter().zip(radices).any(|(x, r)| x >= r) {
            return Err(Error::InvalidArgument(format!("tuple {s:?} is outside the grid")));
        }
    }
    let size: BigUint = radices.iter().map(|&r| BigUint::from(r)).product();
    if size > BigUint::from(ENUMERATION_CAP) {
        return Err(Error::CapExceeded { size: size.to_string(), cap: ENUMERATION_CAP });
    }
    let excluded: BigUint = radices.iter().map(|&r| BigUint::from(r - 1)).product();
    let hypothesis = BigUint::from(tuples.len()) * excluded < size;

    let mut q = vec![0u32; n];
    loop {
        if tuples.iter().all(|s| s.iter().zip(&q).any(|(x, y)| x == y)) {
            return Ok(CoveringTuple { tuple: Some(q), hypothesis });
        }
        // lexicographic successor, last coordinate fastest
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(CoveringTuple { tuple: None, hypothesis });
            }
            i -= 1;
            q[i] += 1;
            if q[i] < radices[i] {
                break;
            }
            q[i] = 0;
        }
    }
}

/// Result of [`check_comb_property`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CombCheck {
    /// Every member of `E` can be moved along any coordinate to another
    /// member of `E`.
    pub condition: bool,
    pub size: usize,
    /// `|E| >= 2^N` whenever `condition` holds.
    pub holds: bool,
}

/// Tests whether `E ⊆ ×A_i` is closed under "change one coordinate to some
/// other value" and, if so, that `|E| >= 2^N`.
pub fn check_comb_property<T>(e: &[Vec<T>], sets: &[Vec<T>]) -> Result<CombCheck>
where
    T: Clone + Eq + std::hash::Hash,
{
    let n = sets.len();
    for x in e {
        if x.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: x.len() });
        }
        if x.iter().zip(sets).any(|(xi, set)| !set.contains(xi)) {
            return Err(Error::InvalidArgument("E is not contained in the product of the sets".into()));
        }
    }
    let members: HashSet<&[T]> = e.iter().map(Vec::as_slice).collect();
    let mut probe: Vec<T> = Vec::with_capacity(n);
    let condition = members.iter().all(|x| {
        (0..n).all(|j| {
            sets[j].iter().any(|alt| {
                if *alt == x[j] {
                    return false;
                }
                probe.clear();
                probe.extend_from_slice(x);
                probe[j] = alt.clone();
                members.contains(probe.as_slice())
            })
        })
    });
    let size = members.len();
    let holds = !condition || BigUint::from(size) >= (BigUint::one() << n);
    Ok(CombCheck { condition, size, holds })
}

/// Exponent vectors of the monomials of `f`.
pub fn exponent_support(f: &SparsePoly) -> Vec<Vec<u32>> {
    f.terms().map(|(m, _)| m.exponents().to_vec()).collect()
}

/// Exhaustive `min { d_H(anchor, z) : z in points }`.
pub fn nearest_distance<'a>(anchor: &[Elem], points: impl IntoIterator<Item = &'a Point>) -> Result<Option<usize>> {
    let mut best: Option<usize> = None;
    for z in points {
        let d = hamming_distance(anchor, z)?;
        best = Some(best.map_or(d, |b| b.min(d)));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn gf(p: u64, k: u32) -> Arc<GaloisField> {
        GaloisField::shared(p, k).unwrap()
    }

    fn els(f: &GaloisField, idx: &[u64]) -> Vec<Elem> {
        idx.iter().map(|&i| f.element(i).unwrap()).collect()
    }

    fn poly(f: &Arc<GaloisField>, n: usize, text: &str) -> SparsePoly {
        SparsePoly::parse_text(f.clone(), n, text).unwrap()
    }

    /// The one-nonzero absorbing polynomial `reduce(prod (X_i - a_i))`.
    fn canonical(f: &Arc<GaloisField>, a: &[Elem], b: &[Elem]) -> AbsorbingInstance {
        let q = RectangularDomain::two_point(f.clone(), a, b).unwrap();
        let g = SparsePoly::one(f.clone(), a.len());
        let p = make_absorbing(&g, a, &q).unwrap();
        AbsorbingInstance::new(p, q, a.to_vec(), Some(b.to_vec())).unwrap()
    }

    #[test]
    fn nonzero_set_examples() {
        let f = gf(5, 1);
        let q = RectangularDomain::new(f.clone(), vec![els(&f, &[1, 2]), els(&f, &[3, 4])]).unwrap();
        assert_eq!(nonzero_set(&SparsePoly::one(f.clone(), 2), &q).unwrap().len(), 4);
        let p = poly(&f, 2, "x1*x2 + 4*x2 + 2*x1 + 2");
        let w = nonzero_set(&p, &q).unwrap();
        let direct: Vec<Point> = q.points().filter(|x| !p.evaluate(x).unwrap().is_zero()).collect();
        assert_eq!(w, direct);
        let big = RectangularDomain::power(gf(7, 1), gf(7, 1).elements().collect(), 8).unwrap();
        assert!(matches!(
            nonzero_set(&SparsePoly::one(gf(7, 1), 8), &big),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn canonical_instance_has_single_nonzero() {
        let f = gf(2, 2);
        for n in 1..=5 {
            let a = vec![f.element(2).unwrap(); n];
            let b = vec![f.element(3).unwrap(); n];
            let inst = canonical(&f, &a, &b);
            assert_eq!(nonzero_set(&inst.poly, &inst.domain).unwrap(), vec![b.clone()]);
            assert_eq!(inst.poly.monomial_count(), 1 << n);
            let check = verify_coeffs_bound(&inst, &vec![3; n]).unwrap();
            assert!(check.holds, "{check:?}");
        }
    }

    #[test]
    fn absorbing_examples() {
        let f = gf(5, 1);
        let q = RectangularDomain::power(f.clone(), els(&f, &[1, 2, 3]), 2).unwrap();
        let a = els(&f, &[1, 2]);
        assert!(is_absorbing(&SparsePoly::zero(f.clone(), 2), &a, &q).unwrap());
        assert!(!is_absorbing(&SparsePoly::one(f.clone(), 2), &a, &q).unwrap());
        let p = make_absorbing(&SparsePoly::one(f.clone(), 2), &a, &q).unwrap();
        assert!(is_absorbing(&p, &a, &q).unwrap());
        assert!(make_absorbing(&SparsePoly::zero(f.clone(), 2), &a, &q).unwrap().is_zero());
        assert!(matches!(is_absorbing(&p, &els(&f, &[4, 4]), &q), Err(Error::NotInDomain)));
    }

    #[test]
    fn coeffs_bound_rejects_bad_hypotheses() {
        let f = gf(5, 1);
        let inst = canonical(&f, &els(&f, &[1, 2]), &els(&f, &[4, 3]));
        // ord(4/1) = 2, ord(3/2) = ord(4) = 2
        assert!(verify_coeffs_bound(&inst, &[2, 2]).unwrap().holds);
        assert!(verify_coeffs_bound(&inst, &[4, 4]).unwrap().holds);
        assert!(matches!(verify_coeffs_bound(&inst, &[3, 2]), Err(Error::Hypothesis(_))));
        let q = inst.domain.clone();
        let not_abs = AbsorbingInstance { poly: SparsePoly::one(f.clone(), 2), domain: q, a: inst.a.clone(), b: None };
        assert!(matches!(verify_coeffs_bound(&not_abs, &[2, 2]), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn kw_bound_gf4() {
        let f = gf(2, 2);
        let s = f.subgroup_of_order(3).unwrap();
        let q = RectangularDomain::power(f.clone(), s.clone(), 2).unwrap();
        let a = vec![s[0], s[1]];
        let p = make_absorbing(&SparsePoly::one(f.clone(), 2), &a, &q).unwrap();
        let check = verify_kw_bound(&p, &s, &a).unwrap();
        assert!(check.holds);
        assert!(p.monomial_count() >= 3);
        assert!(matches!(verify_kw_bound(&p, &els(&f, &[1, 2]), &a), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn two_element_density_examples() {
        let f = gf(5, 1);
        let q = RectangularDomain::power(f.clone(), els(&f, &[1, 4]), 4).unwrap();
        let c = SparsePoly::constant(f.clone(), 4, els(&f, &[3])[0]);
        assert!(verify_2elements_density(&c, &q, 2).unwrap().holds);
        // tight: one nonzero, M = 2^N, t = 2
        let inst = canonical(&f, &els(&f, &[1, 1, 1, 1]), &els(&f, &[4, 4, 4, 4]));
        let check = verify_2elements_density(&inst.poly, &inst.domain, 2).unwrap();
        assert!(check.holds, "{check:?}");
        assert!(matches!(verify_2elements_density(&c, &q, 3), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn density_examples() {
        let f = gf(2, 2);
        let s = els(&f, &[2, 3]);
        for n in 1..=6 {
            let terms: Vec<(Vec<u32>, Elem)> = vec![(vec![2; n], Elem::ONE)];
            let p = SparsePoly::from_terms(f.clone(), n, terms).unwrap();
            let d = verify_density_bounds(&p, &s, n).unwrap();
            assert_eq!(d.nonzeros, 1 << n);
            assert!(d.holds());
        }
        let g = gf(5, 1);
        let p = poly(&g, 3, "x1 + x2 + x3");
        let d = verify_density_bounds(&p, &els(&g, &[1, 2, 3, 4]), 3).unwrap();
        assert!(d.holds(), "{d:?}");
        assert!(verify_density_bounds(&poly(&g, 1, "x1^4 + 4"), &els(&g, &[1, 2]), 1).is_err());
    }

    #[test]
    fn redcoeffs_and_coeffs2_examples() {
        let f = gf(2, 2);
        let w = els(&f, &[2, 3]);
        for n in 1..=4 {
            let q = RectangularDomain::power(f.clone(), w.clone(), n).unwrap();
            let a = vec![w[0]; n];
            let p = make_absorbing(&SparsePoly::one(f.clone(), n), &a, &q).unwrap();
            let check = verify_redcoeffs(&p, &q, &a).unwrap();
            assert!(check.holds);
            assert_eq!(p.monomial_count(), 1 << n);
        }
        let g = gf(7, 1);
        let a = els(&g, &[3, 5, 6]);
        let q = RectangularDomain::new(g.clone(), a.iter().map(|&x| vec![Elem::ZERO, x]).collect()).unwrap();
        let c = els(&g, &[2])[0];
        let h = make_absorbing(&SparsePoly::constant(g.clone(), 3, c), &a, &q).unwrap();
        let check = verify_coeffs2(&h, &q, &a).unwrap();
        assert!(check.holds);
        assert_eq!(h.monomial_count(), 8);
        let bad = poly(&g, 3, "x1");
        assert!(matches!(verify_coeffs2(&bad, &q, &a), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn alternating_difference_examples() {
        let f = gf(7, 1);
        let a = els(&f, &[2]);
        let b = els(&f, &[5]);
        let p = poly(&f, 1, "x1 + 5"); // x - 2
        assert_eq!(alternating_difference(&p, &a, &b).unwrap(), f.sub(b[0], a[0]));
        let q = poly(&f, 3, "x1*x3 + 4*x1^2 + 1");
        assert_eq!(alternating_difference(&q, &els(&f, &[1, 2, 3]), &els(&f, &[4, 5, 6])).unwrap(), Elem::ZERO);
        let inst = canonical(&f, &els(&f, &[1, 2, 3]), &els(&f, &[4, 5, 6]));
        let b = inst.b.clone().unwrap();
        assert_eq!(alternating_difference(&inst.poly, &inst.a, &b).unwrap(), inst.poly.evaluate(&b).unwrap());
    }

    #[test]
    fn covering_tuple_examples() {
        let empty = find_covering_tuple(&[], &[2, 3]).unwrap();
        assert_eq!(empty.tuple, Some(vec![0, 0]));
        assert!(empty.hypothesis);
        let one = find_covering_tuple(&[vec![0, 0]], &[2, 2]).unwrap();
        assert_eq!(one.tuple, Some(vec![0, 0]));
        assert!(one.hypothesis);
        // every tuple of {0,1}^2 has its opposite in the full set
        let all = find_covering_tuple(&[vec![1, 1], vec![0, 0], vec![0, 1], vec![1, 0]], &[2, 2]).unwrap();
        assert_eq!(all.tuple, None);
        assert!(!all.hypothesis);
        let blocked = find_covering_tuple(&[vec![1, 1], vec![0, 0]], &[2, 2]).unwrap();
        assert_eq!(blocked.tuple, Some(vec![0, 1]));
        assert!(blocked.hypothesis);
        assert!(find_covering_tuple(&[vec![2, 0]], &[2, 2]).is_err());
    }

    #[test]
    fn comb_property_examples() {
        let sets = vec![vec![0u32, 1], vec![5, 7], vec![2, 3, 4]];
        let full: Vec<Vec<u32>> = vec![
            vec![0, 5, 2], vec![0, 5, 3], vec![0, 7, 2], vec![0, 7, 3],
            vec![1, 5, 2], vec![1, 5, 3], vec![1, 7, 2], vec![1, 7, 3],
        ];
        let c = check_comb_property(&full, &sets).unwrap();
        assert!(c.condition && c.holds);
        assert_eq!(c.size, 8);
        let c = check_comb_property(&full[1..], &sets).unwrap();
        assert!(!c.condition && c.holds);
        assert!(check_comb_property(&[vec![9, 5, 2]], &sets).is_err());
    }

    #[test]
    fn nearest_distance_scan() {
        let f = gf(3, 1);
        let pts = vec![els(&f, &[1, 2, 2]), els(&f, &[2, 2, 2])];
        assert_eq!(nearest_distance(&els(&f, &[1, 1, 1]), &pts).unwrap(), Some(2));
        assert_eq!(nearest_distance(&els(&f, &[1, 1, 1]), &[]).unwrap(), None);
    }
}
