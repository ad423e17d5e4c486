//! Solving sparse polynomial systems near an anchor.
//!
//! The common zeros of `f_1..f_r` over GF(q) are exactly the points where
//! `g = prod (1 - f_i^(q-1))` equals 1. `g` is never expanded; it is
//! evaluated pointwise and its monomial count is bounded by
//! `M^ = prod (1 + M(f_i)^(q-1))`, which feeds the same ball-search radius
//! bounds as the single-polynomial tester.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::domain::{DomainJson, Point, RectangularDomain};
use crate::error::{Error, Result};
use crate::gf::{Elem, GaloisField};
use crate::poly::{PolyJson, SparsePoly};
use crate::tester::{radius_degree_bounded, radius_general, EvaluationOracle, RadiusChoice, SearchReport, Searcher, Theorem};

#[derive(Clone, Debug, PartialEq)]
pub struct PolySystem {
    field: Arc<GaloisField>,
    nvars: usize,
    polys: Vec<SparsePoly>,
}

impl PolySystem {
    pub fn new(polys: Vec<SparsePoly>) -> Result<Self> {
        let first = polys
            .first()
            .ok_or_else(|| Error::InvalidArgument("a system needs at least one polynomial".into()))?;
        let field = first.field().clone();
        let nvars = first.nvars();
        for (i, p) in polys.iter().enumerate() {
            if **p.field() != *field {
                return Err(Error::FieldMismatch(field.name(), p.field().name()));
            }
            if p.nvars() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: p.nvars() });
            }
            if p.is_zero() {
                return Err(Error::InvalidArgument(format!("polynomial {} of the system is zero", i + 1)));
            }
        }
        Ok(PolySystem { field, nvars, polys })
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn polys(&self) -> &[SparsePoly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn monomial_counts(&self) -> Vec<usize> {
        self.polys.iter().map(SparsePoly::monomial_count).collect()
    }

    /// `prod (1 + M(f_i)^(q-1))`, an upper bound on the monomial count of
    /// the indicator polynomial.
    pub fn indicator_bound(&self) -> BigUint {
        let e = self.field.order() - 1;
        self.polys
            .iter()
            .map(|p| BigUint::one() + BigUint::from(p.monomial_count()).pow(e))
            .product()
    }

    /// `prod (1 - f_i(x)^(q-1))`: 1 on common zeros, 0 elsewhere.
    pub fn indicator_value(&self, x: &[Elem]) -> Result<Elem> {
        self.polys[0].check_point(x)?;
        Ok(self.indicator_unchecked(x))
    }

    fn indicator_unchecked(&self, x: &[Elem]) -> Elem {
        let f = &*self.field;
        let e = (f.order() - 1) as u64;
        let mut acc = Elem::ONE;
        for p in &self.polys {
            acc = f.mul(acc, f.sub(Elem::ONE, f.pow(p.eval_unchecked(x), e)));
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    pub fn is_solution(&self, x: &[Elem]) -> Result<bool> {
        self.polys[0].check_point(x)?;
        Ok(self.polys.iter().all(|p| p.eval_unchecked(x).is_zero()))
    }

    fn oracle(&self) -> EvaluationOracle<'_> {
        let bound = self.indicator_bound().to_u64().unwrap_or(u64::MAX);
        EvaluationOracle::new(self.field.clone(), self.nvars, bound, move |x: &[Elem]| self.indicator_unchecked(x))
            .expect("indicator bound is at least 1")
            .concurrent(true)
    }

    fn check_domain(&self, domain: &RectangularDomain) -> Result<()> {
        if **domain.field() != *self.field {
            return Err(Error::FieldMismatch(self.field.name(), domain.field().name()));
        }
        if domain.nvars() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: domain.nvars() });
        }
        Ok(())
    }
}

/// Free-function form of [`PolySystem::indicator_value`].
pub fn indicator_value(sys: &PolySystem, x: &[Elem]) -> Result<Elem> {
    sys.indicator_value(x)
}

/// Radius bounds for a system searched on a zero-free domain with maximal
/// coordinate ratio order `ratio_order`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SystemRadius {
    pub ratio_order: u32,
    /// `floor(log_t M^)` with `t = ratio_order / (ratio_order - 1)`.
    pub sharp: u64,
    /// `(r + (q-1) * sum log2 M(f_i)) / log2 t`, r the number of equations.
    pub closed_form: f64,
}

fn log2_counts(sys: &PolySystem) -> f64 {
    sys.polys.iter().map(|p| (p.monomial_count() as f64).log2()).sum()
}

pub fn system_radius(sys: &PolySystem, ratio_order: u32) -> Result<SystemRadius> {
    let q = sys.field.order();
    if q == 2 {
        return Err(Error::Unsupported("system solving on zero-free domains needs q > 2".into()));
    }
    if ratio_order < 2 || ratio_order > q - 1 {
        return Err(Error::InvalidArgument(format!("ratio order {ratio_order} out of range for {}", sys.field.name())));
    }
    let sharp = radius_general(sys.indicator_bound(), ratio_order as u64)?;
    let log2_t = (ratio_order as f64 / (ratio_order - 1) as f64).log2();
    let closed_form = (sys.len() as f64 + (q - 1) as f64 * log2_counts(sys)) / log2_t;
    Ok(SystemRadius { ratio_order, sharp, closed_form })
}

/// A system search with both radius forms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveReport {
    #[serde(flatten)]
    pub search: SearchReport,
    pub sharp_radius: u64,
    pub closed_form_radius: f64,
}

impl SolveReport {
    pub fn solution(&self) -> Option<&Point> {
        self.search.witness.as_ref()
    }
}

impl Searcher {
    /// Nearest common zero of the system in the zero-free domain `Q`; when
    /// the ball of the sharp radius holds none, the system has no solution
    /// anywhere in `Q`.
    pub fn solve_near(&self, sys: &PolySystem, anchor: &[Elem], domain: &RectangularDomain) -> Result<SolveReport> {
        sys.check_domain(domain)?;
        if !domain.contains(anchor) {
            return Err(Error::NotInDomain);
        }
        if let Some(i) = domain.sets().iter().position(|s| s.contains(&Elem::ZERO)) {
            return Err(Error::ZeroInSet(i));
        }
        let ratio_order = sys.field.max_ratio_order(domain.sets())?;
        let radii = system_radius(sys, ratio_order)?;
        let oracle = sys.oracle();
        let choice = RadiusChoice {
            radius: (radii.sharp as usize).min(sys.nvars),
            theorem: Theorem::IndicatorRatioOrder,
        };
        let search = self.report(&oracle, anchor, choice, domain)?;
        Ok(SolveReport { search, sharp_radius: radii.sharp, closed_form_radius: radii.closed_form })
    }

    /// For a system solved by the origin, the nearest solution to `a` in
    /// `×{a_i, 0}`; its number of zero entries is at most `floor(log2 M^)`.
    pub fn solve_near_zero_domain(&self, sys: &PolySystem, a: &[Elem]) -> Result<SolveReport> {
        if a.len() != sys.nvars {
            return Err(Error::DimensionMismatch { expected: sys.nvars, found: a.len() });
        }
        if a.iter().any(|x| x.is_zero()) {
            return Err(Error::InvalidArgument("anchor must have only nonzero coordinates".into()));
        }
        let origin = vec![Elem::ZERO; sys.nvars];
        if !sys.is_solution(&origin)? {
            return Err(Error::Hypothesis("the origin does not solve the system".into()));
        }
        let domain = RectangularDomain::new(sys.field.clone(), a.iter().map(|&x| vec![x, Elem::ZERO]).collect())?;
        let sharp = radius_degree_bounded(sys.indicator_bound())?;
        let closed_form = sys.len() as f64 + (sys.field.order() - 1) as f64 * log2_counts(sys);
        let oracle = sys.oracle();
        let choice = RadiusChoice { radius: (sharp as usize).min(sys.nvars), theorem: Theorem::IndicatorZeroDomain };
        let search = self.report(&oracle, a, choice, &domain)?;
        Ok(SolveReport { search, sharp_radius: sharp, closed_form_radius: closed_form })
    }
}

/// Sequential [`Searcher::solve_near`].
pub fn solve_near(sys: &PolySystem, anchor: &[Elem], domain: &RectangularDomain) -> Result<SolveReport> {
    Searcher::default().solve_near(sys, anchor, domain)
}

/// Sequential [`Searcher::solve_near_zero_domain`].
pub fn solve_near_zero_domain(sys: &PolySystem, a: &[Elem]) -> Result<SolveReport> {
    Searcher::default().solve_near_zero_domain(sys, a)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SingletonCheck {
    /// Whether `N > (r + (q-1) sum log2 M(f_i)) / log2 t` holds.
    pub applicable: bool,
    pub ratio_order: u32,
    /// The right-hand side of the inequality, for display.
    pub bound: f64,
}

impl SingletonCheck {
    pub fn conclusion(&self) -> &'static str {
        if self.applicable {
            "the solution set in Q is not a singleton"
        } else {
            "inconclusive"
        }
    }
}

/// Decides whether the sparsity of the system alone rules out a unique
/// solution in `Q`. The inequality is tested exactly as
/// `r^N > (r-1)^N * 2^eqs * prod M(f_i)^(q-1)` with `r` the ratio order.
pub fn check_not_singleton(sys: &PolySystem, domain: &RectangularDomain) -> Result<SingletonCheck> {
    sys.check_domain(domain)?;
    if let Some(i) = domain.sets().iter().position(|s| s.len() < 2) {
        return Err(Error::InvalidArgument(format!("coordinate set {i} has fewer than two elements")));
    }
    if let Some(i) = domain.sets().iter().position(|s| s.contains(&Elem::ZERO)) {
        return Err(Error::ZeroInSet(i));
    }
    let ratio_order = sys.field.max_ratio_order(domain.sets())?;
    let radii = system_radius(sys, ratio_order)?;
    let n = sys.nvars as u32;
    let e = sys.field.order() - 1;
    let lhs = BigUint::from(ratio_order).pow(n);
    let counts: BigUint = sys.polys.iter().map(|p| BigUint::from(p.monomial_count()).pow(e)).product();
    let rhs = BigUint::from(ratio_order - 1).pow(n) * (BigUint::one() << sys.len()) * counts;
    Ok(SingletonCheck { applicable: lhs > rhs, ratio_order, bound: radii.closed_form })
}

/// `{"field":..., "polys":[poly,...], "domain":..., "anchor":[...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub field: String,
    pub polys: Vec<PolyJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<Vec<u32>>,
}

impl SystemJson {
    pub fn system(&self) -> Result<PolySystem> {
        let field = GaloisField::from_name(&self.field)?;
        let polys = self
            .polys
            .iter()
            .map(|p| SparsePoly::from_json(p, Some(&field)))
            .collect::<Result<Vec<_>>>()?;
        PolySystem::new(polys)
    }
}
