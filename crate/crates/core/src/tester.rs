//! Black-box zero testing on `S^N` and nearest-nonzero search on
//! rectangular domains.
//!
//! Every search walks a Hamming ball around an anchor in order of distance,
//! so the first nonzero found is a nearest one. The ball radius comes from a
//! monomial-count bound: a polynomial with at most `M` monomials that is
//! nonzero somewhere on `Q` is nonzero within that radius of every anchor,
//! so exhausting the ball without a nonzero proves vanishing on all of `Q`.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::domain::{binomial, enumerate_ball, hamming_distance, Point, RectangularDomain};
use crate::error::{Error, Result};
use crate::gf::{Elem, GaloisField};
use crate::poly::SparsePoly;

/// Points evaluated per parallel batch.
const BATCH: usize = 1024;

type EvalFn<'a> = dyn Fn(&[Elem]) -> Elem + Send + Sync + 'a;

/// Point-evaluation access to a polynomial with at most `bound` monomials.
///
/// The bound is the caller's promise; the search radii are only sound if it
/// is at least the true monomial count.
pub struct EvaluationOracle<'a> {
    field: Arc<GaloisField>,
    nvars: usize,
    bound: u64,
    func: Box<EvalFn<'a>>,
    concurrent: bool,
    count: AtomicU64,
}

impl<'a> EvaluationOracle<'a> {
    pub fn new<F>(field: Arc<GaloisField>, nvars: usize, bound: u64, func: F) -> Result<Self>
    where
        F: Fn(&[Elem]) -> Elem + Send + Sync + 'a,
    {
        if bound < 1 {
            return Err(Error::InvalidArgument("monomial bound must be at least 1".into()));
        }
        Ok(EvaluationOracle {
            field,
            nvars,
            bound,
            func: Box::new(func),
            concurrent: false,
            count: AtomicU64::new(0),
        })
    }

    /// Wraps an explicit polynomial; the bound is `max(1, M(p))`.
    pub fn from_poly(p: &'a SparsePoly) -> Self {
        EvaluationOracle {
            field: p.field().clone(),
            nvars: p.nvars(),
            bound: p.monomial_count().max(1) as u64,
            func: Box::new(move |x| p.eval_unchecked(x)),
            concurrent: true,
            count: AtomicU64::new(0),
        }
    }

    pub fn with_bound(mut self, bound: u64) -> Result<Self> {
        if bound < 1 {
            return Err(Error::InvalidArgument("monomial bound must be at least 1".into()));
        }
        self.bound = bound;
        Ok(self)
    }

    /// Declares whether the evaluation function may be called from several
    /// threads at once.
    pub fn concurrent(mut self, yes: bool) -> Self {
        self.concurrent = yes;
        self
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn evaluations(&self) -> u64 {
        self.count.load(Ordering::Relaxed)
    }

    pub fn evaluate(&self, x: &[Elem]) -> Result<Elem> {
        if x.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: x.len() });
        }
        if let Some(bad) = x.iter().find(|e| !self.field.contains(**e)) {
            return Err(Error::ElementOutOfRange { index: bad.index() as u64, order: self.field.order() });
        }
        Ok(self.eval_point(x))
    }

    fn eval_point(&self, x: &[Elem]) -> Elem {
        self.count.fetch_add(1, Ordering::Relaxed);
        (self.func)(x)
    }

    fn check_domain(&self, domain: &RectangularDomain) -> Result<()> {
        if **domain.field() != *self.field {
            return Err(Error::FieldMismatch(domain.field().name(), self.field.name()));
        }
        if domain.nvars() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: domain.nvars() });
        }
        Ok(())
    }
}

/// Which monomial-count bound justified a search radius.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    /// `floor(log_t M)`, `t = r/(r-1)`, r the largest coordinate ratio order;
    /// needs a zero-free domain.
    RatioOrder,
    /// `floor(log_2 M)` for `deg_{X_i} p < |A_i|` and an anchor without zeros.
    DegreeBounded,
    /// `floor(log_2 M)` on `×{a_i, 0}` from `(a_1..a_N)` when `p(0) != 0`.
    ZeroDomain,
    /// No bound applies; the whole domain is searched.
    Exhaustive,
    /// GF(2) with `S = {1}`: `S^N` is a single point.
    SinglePoint,
    /// Ratio-order bound applied to the indicator `prod (1 - f_i^(q-1))`.
    IndicatorRatioOrder,
    /// Zero-domain bound applied to the indicator.
    IndicatorZeroDomain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Vanishes,
    Witness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub verdict: Verdict,
    pub witness: Option<Point>,
    pub distance: Option<usize>,
    pub radius: usize,
    pub theorem: Theorem,
    pub evaluations: u64,
}

/// Outcome of [`test_zero_on_power_domain`] with the evaluation budget the
/// run is guaranteed to respect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroTestReport {
    pub report: SearchReport,
    /// `floor(log_t M)` with `t = (q-1)/(q-2)`, before clamping to N.
    pub budget_radius: u64,
    /// `max(1, C(N, k)) * |S|^k` for `k = budget_radius`.
    pub budget: BigUint,
}

fn ln_big(m: &BigUint) -> f64 {
    match m.to_f64() {
        Some(v) if v.is_finite() => v.ln(),
        _ => m.bits() as f64 * std::f64::consts::LN_2,
    }
}

/// `floor(log_t M)` for `t = r/(r-1)`, computed exactly as the largest `k`
/// with `r^k <= M (r-1)^k`.
pub fn radius_general(m: impl Into<BigUint>, r: u64) -> Result<u64> {
    let m: BigUint = m.into();
    if m < BigUint::one() {
        return Err(Error::InvalidArgument("monomial bound must be at least 1".into()));
    }
    if r < 2 {
        return Err(Error::InvalidArgument("ratio order must be at least 2".into()));
    }
    let rb = BigUint::from(r);
    let rm1 = BigUint::from(r - 1);
    let holds = |k: u64| -> bool {
        let k = k as u32;
        rb.pow(k) <= &m * rm1.pow(k)
    };
    let ln_t = (1.0 / (r - 1) as f64).ln_1p();
    let mut k = (ln_big(&m) / ln_t).floor().max(0.0) as u64;
    while k > 0 && !holds(k) {
        k -= 1;
    }
    while holds(k + 1) {
        k += 1;
    }
    Ok(k)
}

/// `floor(log_2 M)`.
pub fn radius_degree_bounded(m: impl Into<BigUint>) -> Result<u64> {
    let m: BigUint = m.into();
    if m < BigUint::one() {
        return Err(Error::InvalidArgument("monomial bound must be at least 1".into()));
    }
    Ok(m.bits() - 1)
}

/// `max(1, C(N, k)) * s^k` with `k = floor(log_t M)`, `t = (q-1)/(q-2)`.
pub fn evaluation_budget(q: u32, n: usize, s: usize, m: u64) -> Result<(u64, BigUint)> {
    if q <= 2 {
        return Ok((0, BigUint::one()));
    }
    let k = radius_general(m, (q - 1) as u64)?;
    let c = binomial(n as u64, k).max(BigUint::one());
    Ok((k, c * BigUint::from(s).pow(k as u32)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RadiusChoice {
    pub radius: usize,
    pub theorem: Theorem,
}

/// The smallest radius some monomial-count bound certifies for searching
/// `domain` around `anchor`, clamped to N.
///
/// `explicit` is the polynomial behind the oracle when it is known; it
/// enables the degree-bounded rule and the exhaustive fallback. The
/// zero-domain rule spends one oracle evaluation at the origin.
pub fn select_radius(
    oracle: &EvaluationOracle,
    explicit: Option<&SparsePoly>,
    domain: &RectangularDomain,
    anchor: &[Elem],
) -> Result<RadiusChoice> {
    oracle.check_domain(domain)?;
    if !domain.contains(anchor) {
        return Err(Error::NotInDomain);
    }
    let n = domain.nvars();
    let m = oracle.bound();
    let mut candidates: Vec<(u64, Theorem)> = Vec::new();

    if !domain.contains_zero() {
        let r = oracle.field().max_ratio_order(domain.sets())?;
        candidates.push((radius_general(m, r as u64)?, Theorem::RatioOrder));
    }

    if let Some(p) = explicit {
        let degrees_ok = (0..n).all(|i| match p.degree_in_variable(i) {
            Ok(Some(d)) => (d as usize) < domain.set(i).len(),
            Ok(None) => true,
            Err(_) => false,
        });
        if degrees_ok && anchor.iter().all(|a| !a.is_zero()) {
            candidates.push((radius_degree_bounded(m)?, Theorem::DegreeBounded));
        }
    }

    let zero_domain_shape = domain
        .sets()
        .iter()
        .zip(anchor)
        .all(|(s, a)| s.len() == 2 && s[0].is_zero() && s[1] == *a);
    if zero_domain_shape && n > 0 && !oracle.eval_point(&vec![Elem::ZERO; n]).is_zero() {
        candidates.push((radius_degree_bounded(m)?, Theorem::ZeroDomain));
    }

    if explicit.is_some() {
        candidates.push((n as u64, Theorem::Exhaustive));
    }

    let (k, theorem) = candidates
        .into_iter()
        .min_by_key(|(k, _)| *k)
        .ok_or_else(|| {
            Error::NoApplicableRadius(
                "domain contains zero and neither the zero-domain shape nor an explicit polynomial is available".into(),
            )
        })?;
    Ok(RadiusChoice { radius: (k as usize).min(n), theorem })
}

/// Runs the searches, optionally evaluating ball points on a thread pool.
///
/// Parallel runs evaluate whole batches of [`BATCH`] points in enumeration
/// order, so the reported witness and evaluation count depend only on the
/// input and on whether `jobs > 1`, never on scheduling.
#[derive(Clone, Copy, Debug)]
pub struct Searcher {
    jobs: usize,
}

impl Default for Searcher {
    fn default() -> Self {
        Searcher { jobs: 1 }
    }
}

impl Searcher {
    pub fn new(jobs: usize) -> Self {
        Searcher { jobs: jobs.max(1) }
    }

    pub fn jobs(&self) -> usize {
        self.jobs
    }

    /// First point of the ball (in enumeration order) where the oracle is
    /// nonzero.
    pub fn search_ball(
        &self,
        oracle: &EvaluationOracle,
        center: &[Elem],
        radius: usize,
        domain: &RectangularDomain,
    ) -> Result<Option<Point>> {
        let mut ball = enumerate_ball(center, radius, domain)?;
        if self.jobs <= 1 || !oracle.concurrent {
            return Ok(ball.find(|pt| !oracle.eval_point(pt).is_zero()));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
        loop {
            let batch: Vec<Point> = ball.by_ref().take(BATCH).collect();
            if batch.is_empty() {
                return Ok(None);
            }
            let values: Vec<Elem> =
                pool.install(|| batch.par_iter().map(|pt| oracle.eval_point(pt)).collect());
            if let Some(i) = values.iter().position(|v| !v.is_zero()) {
                return Ok(Some(batch[i].clone()));
            }
        }
    }

    pub(crate) fn report(
        &self,
        oracle: &EvaluationOracle,
        anchor: &[Elem],
        choice: RadiusChoice,
        domain: &RectangularDomain,
    ) -> Result<SearchReport> {
        let witness = self.search_ball(oracle, anchor, choice.radius, domain)?;
        let distance = witness.as_ref().map(|w| hamming_distance(anchor, w)).transpose()?;
        Ok(SearchReport {
            verdict: if witness.is_some() { Verdict::Witness } else { Verdict::Vanishes },
            witness,
            distance,
            radius: choice.radius,
            theorem: choice.theorem,
            evaluations: oracle.evaluations(),
        })
    }

    /// Decides whether the oracle's polynomial vanishes on `S^N`, evaluating
    /// it only on the ball of radius `floor(log_t M)` around `(s, ..., s)`,
    /// `s` the smallest element of `S`.
    pub fn test_zero_on_power_domain(
        &self,
        oracle: &EvaluationOracle,
        set: &[Elem],
        n: usize,
    ) -> Result<ZeroTestReport> {
        let field = oracle.field().clone();
        let domain = RectangularDomain::power(field.clone(), set.to_vec(), n)?;
        oracle.check_domain(&domain)?;
        if domain.contains_zero() {
            return Err(Error::ZeroInSet(0));
        }
        let q = field.order();
        let s = domain.set(0).len();
        let anchor = vec![domain.set(0)[0]; n];
        let choice = if q == 2 {
            RadiusChoice { radius: 0, theorem: Theorem::SinglePoint }
        } else {
            let r = field.max_ratio_order(&[domain.set(0)])?;
            let k = radius_general(oracle.bound(), r as u64)?;
            RadiusChoice { radius: (k as usize).min(n), theorem: Theorem::RatioOrder }
        };
        let (budget_radius, budget) = evaluation_budget(q, n, s, oracle.bound())?;
        let report = self.report(oracle, &anchor, choice, &domain)?;
        Ok(ZeroTestReport { report, budget_radius, budget })
    }

    /// Nearest nonzero of `p` in `domain`, searched within the smallest
    /// certified radius around `anchor`.
    pub fn find_nonzero_near(
        &self,
        p: &SparsePoly,
        anchor: &[Elem],
        domain: &RectangularDomain,
    ) -> Result<SearchReport> {
        let oracle = EvaluationOracle::from_poly(p);
        self.find_nonzero_near_oracle(&oracle, Some(p), anchor, domain)
    }

    /// As [`find_nonzero_near`](Self::find_nonzero_near) for an arbitrary
    /// oracle, e.g. one carrying an explicit monomial bound.
    pub fn find_nonzero_near_oracle(
        &self,
        oracle: &EvaluationOracle,
        explicit: Option<&SparsePoly>,
        anchor: &[Elem],
        domain: &RectangularDomain,
    ) -> Result<SearchReport> {
        let choice = select_radius(oracle, explicit, domain, anchor)?;
        self.report(oracle, anchor, choice, domain)
    }
}

/// Sequential [`Searcher::test_zero_on_power_domain`].
pub fn test_zero_on_power_domain(
    oracle: &EvaluationOracle,
    set: &[Elem],
    n: usize,
) -> Result<ZeroTestReport> {
    Searcher::default().test_zero_on_power_domain(oracle, set, n)
}

/// Sequential [`Searcher::find_nonzero_near`].
pub fn find_nonzero_near(
    p: &SparsePoly,
    anchor: &[Elem],
    domain: &RectangularDomain,
) -> Result<SearchReport> {
    Searcher::default().find_nonzero_near(p, anchor, domain)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, k: u32) -> Arc<GaloisField> {
        GaloisField::shared(p, k).unwrap()
    }

    fn els(f: &GaloisField, idx: &[u64]) -> Vec<Elem> {
        idx.iter().map(|&i| f.element(i).unwrap()).collect()
    }

    /// Largest k with t^k <= M by plain floating point, for cross-checking
    /// away from the rounding boundary.
    fn float_radius(m: u64, r: u64) -> f64 {
        (m as f64).ln() / (r as f64 / (r - 1) as f64).ln()
    }

    #[test]
    fn radius_general_examples() {
        assert_eq!(radius_general(1u64, 2).unwrap(), 0);
        assert_eq!(radius_general(8u64, 2).unwrap(), 3);
        assert_eq!(radius_general(7u64, 2).unwrap(), 2);
        // 3^3 = 27 <= 5 * 2^3 = 40, but 3^4 = 81 > 5 * 2^4 = 80
        assert_eq!(radius_general(5u64, 3).unwrap(), 3);
        assert!(radius_general(0u64, 3).is_err());
        assert!(radius_general(5u64, 1).is_err());
        for r in 2..12u64 {
            for m in 1..300u64 {
                let k = radius_general(m, r).unwrap();
                let f = float_radius(m, r);
                if (f - f.round()).abs() > 1e-9 {
                    assert_eq!(k, f.floor() as u64, "m={m} r={r}");
                }
                assert!(radius_general(m + 1, r).unwrap() >= k);
                assert!(radius_general(m, r + 1).unwrap() >= k);
            }
        }
    }

    #[test]
    fn radius_general_large_bounds() {
        // M = (3/2)^40 rounded up, so the exact answer is 40
        let num = BigUint::from(3u32).pow(40);
        let den = BigUint::from(2u32).pow(40);
        let m = (&num + &den - 1u32) / &den;
        assert_eq!(radius_general(m.clone(), 3).unwrap(), 40);
        assert_eq!(radius_general(m - 1u32, 3).unwrap(), 39);
    }

    #[test]
    fn radius_degree_bounded_examples() {
        assert_eq!(radius_degree_bounded(1u64).unwrap(), 0);
        assert_eq!(radius_degree_bounded(4u64).unwrap(), 2);
        assert_eq!(radius_degree_bounded(7u64).unwrap(), 2);
        assert_eq!(radius_degree_bounded(1u64 << 9).unwrap(), 9);
        assert!(radius_degree_bounded(0u64).is_err());
    }

    #[test]
    fn select_radius_gf3_both_rules_agree() {
        let f = gf(3, 1);
        let p = SparsePoly::parse_text(f.clone(), 3, "x1 + 2*x2 + x3 + 1").unwrap();
        let q = RectangularDomain::power(f.clone(), els(&f, &[1, 2]), 3).unwrap();
        let oracle = EvaluationOracle::from_poly(&p);
        let anchor = els(&f, &[1, 1, 1]);
        let choice = select_radius(&oracle, Some(&p), &q, &anchor).unwrap();
        assert_eq!(choice, RadiusChoice { radius: 2, theorem: Theorem::RatioOrder });
        assert_eq!(oracle.evaluations(), 0);
    }

    #[test]
    fn select_radius_f4_example_uses_ratio_order() {
        let f = gf(2, 2);
        let p = SparsePoly::parse_text(f.clone(), 2, "x1^2*x2^2").unwrap();
        let q = RectangularDomain::power(f.clone(), els(&f, &[2, 3]), 2).unwrap();
        let oracle = EvaluationOracle::from_poly(&p);
        let choice = select_radius(&oracle, Some(&p), &q, &els(&f, &[2, 3])).unwrap();
        assert_eq!(choice, RadiusChoice { radius: 0, theorem: Theorem::RatioOrder });
    }

    #[test]
    fn select_radius_degree_rule_wins_on_large_ratio_orders() {
        // GF(7) with S = all nonzero: r = 6, t = 6/5, log_t 4 = 7.6 vs log_2 4 = 2
        let f = gf(7, 1);
        let p = SparsePoly::parse_text(f.clone(), 3, "x1*x2 + x3 + 3*x1 + 5").unwrap();
        let q = RectangularDomain::power(f.clone(), els(&f, &[1, 2, 3, 4, 5, 6]), 3).unwrap();
        let oracle = EvaluationOracle::from_poly(&p);
        let choice = select_radius(&oracle, Some(&p), &q, &els(&f, &[1, 1, 1])).unwrap();
        assert_eq!(choice, RadiusChoice { radius: 2, theorem: Theorem::DegreeBounded });
    }

    #[test]
    fn select_radius_zero_domain() {
        let f = gf(5, 1);
        // (x1 - 2)(x2 - 3) = x1 x2 - 3 x1 - 2 x2 + 6, nonzero at the origin
        let p = SparsePoly::parse_text(f.clone(), 2, "x1*x2 + 2*x1 + 3*x2 + 1").unwrap();
        let q = RectangularDomain::new(f.clone(), vec![els(&f, &[0, 2]), els(&f, &[0, 3])]).unwrap();
        let oracle = EvaluationOracle::from_poly(&p);
        let choice = select_radius(&oracle, None, &q, &els(&f, &[2, 3])).unwrap();
        assert_eq!(choice, RadiusChoice { radius: 2, theorem: Theorem::ZeroDomain });
        assert_eq!(oracle.evaluations(), 1);

        // black box, origin a root, zero in the domain: nothing applies
        let p0 = SparsePoly::parse_text(f.clone(), 2, "x1*x2").unwrap();
        let oracle = EvaluationOracle::from_poly(&p0);
        assert!(matches!(
            select_radius(&oracle, None, &q, &els(&f, &[2, 3])),
            Err(Error::NoApplicableRadius(_))
        ));
        // known and degree-bounded: log_2 1 = 0
        let choice = select_radius(&oracle, Some(&p0), &q, &els(&f, &[2, 3])).unwrap();
        assert_eq!(choice, RadiusChoice { radius: 0, theorem: Theorem::DegreeBounded });
        // known but with degree too high: the full domain is searched
        let p1 = SparsePoly::parse_text(f.clone(), 2, "x1^2*x2").unwrap();
        let oracle = EvaluationOracle::from_poly(&p1);
        let choice = select_radius(&oracle, Some(&p1), &q, &els(&f, &[2, 3])).unwrap();
        assert_eq!(choice, RadiusChoice { radius: 2, theorem: Theorem::Exhaustive });
        assert!(matches!(
            select_radius(&oracle, Some(&p1), &q, &els(&f, &[1, 3])),
            Err(Error::NotInDomain)
        ));
    }

    #[test]
    fn zero_test_fermat_vanishes() {
        let f = gf(3, 1);
        let p = SparsePoly::parse_text(f.clone(), 1, "x1^2 + 2").unwrap();
        let oracle = EvaluationOracle::from_poly(&p);
        let rep = test_zero_on_power_domain(&oracle, &els(&f, &[1, 2]), 1).unwrap();
        assert_eq!(rep.report.verdict, Verdict::Vanishes);
        assert_eq!(rep.report.radius, 1);
        assert_eq!(rep.report.evaluations, 2);
        assert!(BigUint::from(rep.report.evaluations) <= rep.budget);
    }

    #[test]
    fn zero_test_constant_has_witness_at_anchor() {
        let f = gf(5, 1);
        let p = SparsePoly::constant(f.clone(), 4, els(&f, &[3])[0]);
        let oracle = EvaluationOracle::from_poly(&p);
        let rep = test_zero_on_power_domain(&oracle, &els(&f, &[4, 2, 3]), 4).unwrap();
        assert_eq!(rep.report.verdict, Verdict::Witness);
        assert_eq!(rep.report.distance, Some(0));
        assert_eq!(rep.report.witness, Some(els(&f, &[2, 2, 2, 2])));
        assert_eq!(rep.report.evaluations, 1);
    }

    #[test]
    fn zero_test_gf2() {
        let f = gf(2, 1);
        let p = SparsePoly::parse_text(f.clone(), 3, "x1*x2 + x3").unwrap();
        let oracle = EvaluationOracle::from_poly(&p);
        let rep = test_zero_on_power_domain(&oracle, &els(&f, &[1]), 3).unwrap();
        assert_eq!(rep.report.verdict, Verdict::Vanishes);
        assert_eq!(rep.report.theorem, Theorem::SinglePoint);
        assert_eq!(rep.report.evaluations, 1);
        assert!(matches!(
            test_zero_on_power_domain(&oracle, &els(&f, &[0, 1]), 3),
            Err(Error::ZeroInSet(_))
        ));
    }

    #[test]
    fn zero_test_rejects_zero_and_bad_arity() {
        let f = gf(5, 1);
        let p = SparsePoly::one(f.clone(), 2);
        let oracle = EvaluationOracle::from_poly(&p);
        assert!(test_zero_on_power_domain(&oracle, &els(&f, &[0, 1]), 2).is_err());
        assert!(test_zero_on_power_domain(&oracle, &els(&f, &[1]), 3).is_err());
        assert!(test_zero_on_power_domain(&oracle, &[], 2).is_err());
    }

    #[test]
    fn find_nonzero_f4_example() {
        let f = gf(2, 2);
        let p = SparsePoly::parse_text(f.clone(), 2, "x1^2*x2^2").unwrap();
        let q = RectangularDomain::power(f.clone(), els(&f, &[2, 3]), 2).unwrap();
        for anchor in q.points() {
            let rep = find_nonzero_near(&p, &anchor, &q).unwrap();
            assert_eq!(rep.distance, Some(0));
            assert_eq!(rep.witness.as_ref(), Some(&anchor));
        }
    }

    #[test]
    fn find_nonzero_planted_far_point() {
        // only nonzero on {1,4}^5 is (4,4,4,1,1); from (1,...,1) that is distance 3
        let f = gf(5, 1);
        let n = 5;
        let q = RectangularDomain::power(f.clone(), els(&f, &[1, 4]), n).unwrap();
        let mut p = SparsePoly::one(f.clone(), n);
        for i in 0..3 {
            let xi = SparsePoly::variable(f.clone(), n, i).unwrap();
            p = p.mul(&xi.sub(&SparsePoly::one(f.clone(), n)).unwrap()).unwrap();
        }
        for i in 3..5 {
            let xi = SparsePoly::variable(f.clone(), n, i).unwrap();
            p = p.mul(&xi.sub(&SparsePoly::constant(f.clone(), n, els(&f, &[4])[0])).unwrap()).unwrap();
        }
        let anchor = els(&f, &[1, 1, 1, 1, 1]);
        let rep = find_nonzero_near(&p, &anchor, &q).unwrap();
        assert_eq!(rep.witness, Some(els(&f, &[4, 4, 4, 1, 1])));
        assert_eq!(rep.distance, Some(3));
        assert!(rep.radius >= 3);
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let f = gf(7, 1);
        let n = 5;
        let q = RectangularDomain::power(f.clone(), els(&f, &[1, 2, 3, 4, 5, 6]), n).unwrap();
        let mut p = SparsePoly::one(f.clone(), n);
        for i in 0..4 {
            let xi = SparsePoly::variable(f.clone(), n, i).unwrap();
            p = p.mul(&xi.sub(&SparsePoly::one(f.clone(), n)).unwrap()).unwrap();
        }
        let anchor = vec![Elem::ONE; n];
        let seq = find_nonzero_near(&p, &anchor, &q).unwrap();
        let par = Searcher::new(4).find_nonzero_near(&p, &anchor, &q).unwrap();
        assert_eq!(seq.witness, par.witness);
        assert_eq!(seq.distance, Some(4));
        let par2 = Searcher::new(3).find_nonzero_near(&p, &anchor, &q).unwrap();
        assert_eq!(par, par2);
    }

    #[test]
    fn oracle_counts_and_validates() {
        let f = gf(5, 1);
        let p = SparsePoly::parse_text(f.clone(), 2, "x1 + x2").unwrap();
        let o = EvaluationOracle::from_poly(&p);
        assert_eq!(o.bound(), 2);
        assert_eq!(o.evaluate(&els(&f, &[1, 4])).unwrap(), Elem::ZERO);
        assert!(o.evaluate(&els(&f, &[1])).is_err());
        assert_eq!(o.evaluations(), 1);
        assert!(EvaluationOracle::from_poly(&p).with_bound(0).is_err());
        let bb = EvaluationOracle::new(f.clone(), 1, 3, |x: &[Elem]| x[0]).unwrap();
        assert_eq!(bb.evaluate(&els(&f, &[3])).unwrap(), els(&f, &[3])[0]);
    }
}
