//! Seeded randomized verification batches.
//!
//! Each check draws its instances from its own ChaCha stream of the seed, so
//! checks are independent of each other and of the batch sizes of the
//! others. Instances are generated sequentially and verified in parallel;
//! results are collected in generation order, which keeps reports
//! byte-identical across runs and thread counts.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::generate::{self, ZeroTestKind};
use super::*;
use crate::solver::{check_not_singleton, PolySystem};
use crate::tester::{self, EvaluationOracle, Verdict};

/// At most this many counterexamples are kept per check.
const KEPT_COUNTEREXAMPLES: usize = 5;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub instance: Value,
    pub claimed: String,
    pub observed: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub instances: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub stats: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub counterexamples: Vec<Counterexample>,
}

impl CheckSummary {
    fn new(name: &str) -> Self {
        CheckSummary {
            name: name.to_string(),
            instances: 0,
            failed: 0,
            stats: BTreeMap::new(),
            counterexamples: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.instances > 0 && self.failed == 0
    }

    fn record(&mut self, check: &BoundCheck, instance: impl FnOnce() -> Value) {
        self.instances += 1;
        if !check.holds {
            self.failed += 1;
            if self.counterexamples.len() < KEPT_COUNTEREXAMPLES {
                self.counterexamples.push(Counterexample {
                    instance: instance(),
                    claimed: check.claimed.clone(),
                    observed: check.observed.clone(),
                });
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub per_theorem: usize,
    pub passed: bool,
    pub checks: Vec<CheckSummary>,
}

/// Per-instance verifier output: one `BoundCheck` per named property.
type Outcome = Result<Vec<BoundCheck>>;

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

fn error_check(e: &Error) -> BoundCheck {
    BoundCheck::new(false, "verifier runs without error", format!("error: {e}"))
}

/// Verifies `instances` in parallel and tallies each property under its
/// name. Errors count as failures of every property.
fn tally<I, D, V>(names: &[&str], instances: &[I], describe: D, verify: V) -> Vec<CheckSummary>
where
    I: Sync,
    D: Fn(&I) -> Value,
    V: Fn(&I) -> Outcome + Sync,
{
    let outcomes: Vec<Outcome> = instances.par_iter().map(&verify).collect();
    let mut summaries: Vec<CheckSummary> = names.iter().map(|n| CheckSummary::new(n)).collect();
    for (inst, outcome) in instances.iter().zip(&outcomes) {
        match outcome {
            Ok(checks) => {
                for (s, c) in summaries.iter_mut().zip(checks) {
                    s.record(c, || describe(inst));
                }
            }
            Err(e) => {
                let c = error_check(e);
                for s in summaries.iter_mut() {
                    s.record(&c, || describe(inst));
                }
            }
        }
    }
    summaries
}

fn generate_n<T>(count: usize, mut gen: impl FnMut() -> Result<T>) -> Result<Vec<T>> {
    (0..count).map(|_| gen()).collect()
}

fn generation_failure(names: &[&str], e: Error) -> Vec<CheckSummary> {
    names
        .iter()
        .map(|n| {
            let mut s = CheckSummary::new(n);
            s.record(&error_check(&e), || json!("instance generation"));
            s
        })
        .collect()
}

macro_rules! generated {
    ($names:expr, $count:expr, $gen:expr) => {
        match generate_n($count, $gen) {
            Ok(v) => v,
            Err(e) => return generation_failure($names, e),
        }
    };
}

fn poly_domain_json(f: &SparsePoly, domain: &RectangularDomain) -> Value {
    json!({ "poly": f.to_json(), "domain": domain.to_json() })
}

/// Black-box zero test on `S^N` against a full scan, and its evaluation
/// count against the budget.
pub fn check_zero_test(seed: u64, count: usize) -> Vec<CheckSummary> {
    const NAMES: [&str; 2] = ["zero_test_agrees_with_scan", "zero_test_within_budget"];
    let mut rng = stream(seed, 1);
    let instances = generated!(&NAMES, count, || generate::zero_test_instance(&mut rng));
    let mut out = tally(
        &NAMES,
        &instances,
        |(f, s, n, _)| {
            let d = RectangularDomain::power(f.field().clone(), s.clone(), *n).expect("valid");
            poly_domain_json(f, &d)
        },
        |(f, s, n, _)| {
            let domain = RectangularDomain::power(f.field().clone(), s.clone(), *n)?;
            let oracle = EvaluationOracle::from_poly(f);
            let rep = tester::test_zero_on_power_domain(&oracle, s, *n)?;
            let nonzeros = nonzero_count(f, &domain)?;
            let witness_ok = match &rep.report.witness {
                Some(w) => domain.contains(w) && !f.evaluate(w)?.is_zero(),
                None => true,
            };
            let agrees = (rep.report.verdict == Verdict::Witness) == (nonzeros > 0) && witness_ok;
            let agreement = BoundCheck::new(
                agrees,
                format!("verdict matches scan ({} nonzeros)", nonzeros),
                format!("{:?} after {} evaluations", rep.report.verdict, rep.report.evaluations),
            );
            let budget = BoundCheck::new(
                BigUint::from(rep.report.evaluations) <= rep.budget,
                format!("evaluations <= {}", rep.budget),
                format!("evaluations = {}", rep.report.evaluations),
            );
            Ok(vec![agreement, budget])
        },
    );
    let kinds = |k: ZeroTestKind| instances.iter().filter(|i| i.3 == k).count();
    out[0].stats.insert("random".into(), json!(kinds(ZeroTestKind::Random)));
    out[0].stats.insert("vanishing".into(), json!(kinds(ZeroTestKind::Vanishing)));
    out[0].stats.insert("planted".into(), json!(kinds(ZeroTestKind::Planted)));
    out
}

/// Nearest nonzeros: the scanned minimum distance from sampled anchors is
/// within the ratio-order radius, and the search reports exactly it.
pub fn check_sphere(seed: u64, count: usize, anchors: usize) -> Vec<CheckSummary> {
    const NAMES: [&str; 2] = ["nearest_nonzero_within_radius", "search_finds_nearest_nonzero"];
    let mut rng = stream(seed, 2);
    let instances = generated!(&NAMES, count, || {
        let (f, domain) = generate::sphere_instance(&mut rng)?;
        let all: Vec<Point> = domain.points().collect();
        let sample: Vec<Point> = all.choose_multiple(&mut rng, anchors).cloned().collect();
        Ok((f, domain, sample))
    });
    tally(
        &NAMES,
        &instances,
        |(f, d, sample)| {
            let mut v = poly_domain_json(f, d);
            v["anchors"] = json!(sample);
            v
        },
        |(f, domain, sample)| {
            let w = nonzero_set(f, domain)?;
            let r = domain.field().max_ratio_order(domain.sets())?;
            let k = tester::radius_general(f.monomial_count().max(1) as u64, r as u64)?;
            let mut within = BoundCheck::new(true, format!("distance <= {k}"), "all anchors");
            let mut exact = BoundCheck::new(true, "search distance = scanned minimum", "all anchors");
            for anchor in sample {
                let best = nearest_distance(anchor, &w)?.ok_or_else(|| Error::Hypothesis("no nonzero on Q".into()))?;
                if best as u64 > k && within.holds {
                    within = BoundCheck::new(false, format!("distance <= {k}"), format!("distance {best} from {anchor:?}"));
                }
                let rep = tester::find_nonzero_near(f, anchor, domain)?;
                let found_ok = rep.distance == Some(best)
                    && rep.witness.as_ref().is_some_and(|z| !f.eval_unchecked(z).is_zero());
                if !found_ok && exact.holds {
                    exact = BoundCheck::new(
                        false,
                        format!("search distance = {best}"),
                        format!("{:?} at {:?} from {anchor:?}", rep.distance, rep.witness),
                    );
                }
            }
            Ok(vec![within, exact])
        },
    )
}

/// Lower bounds on the monomial count of absorbing polynomials, and the
/// alternating-difference identity on the same two-point instances.
pub fn check_absorbing_bounds(seed: u64, count: usize) -> Vec<CheckSummary> {
    let mut out = Vec::new();

    const TWO_POINT: [&str; 2] = ["absorbing_two_point_bound", "alternating_difference_identity"];
    let mut rng = stream(seed, 3);
    let coeffs = generated!(&TWO_POINT, count, || generate::coeffs_instance(&mut rng));
    out.extend(tally(
        &TWO_POINT,
        &coeffs,
        |(inst, orders)| json!({ "instance": inst.to_json(), "orders": orders }),
        |(inst, orders)| {
            let bound = verify_coeffs_bound(inst, orders)?;
            let b = inst.b.as_ref().expect("generated with b");
            let diff = alternating_difference(&inst.poly, &inst.a, b)?;
            let value = inst.poly.evaluate(b)?;
            let identity = BoundCheck::new(diff == value, format!("sum = f(b) = {value}"), format!("sum = {diff}"));
            Ok(vec![bound, identity])
        },
    ));

    const SUBGROUP: [&str; 1] = ["absorbing_subgroup_bound"];
    let mut rng = stream(seed, 4);
    let kw = generated!(&SUBGROUP, count, || generate::kw_instance(&mut rng));
    out.extend(tally(
        &SUBGROUP,
        &kw,
        |(f, s, a)| json!({ "poly": f.to_json(), "subgroup": s, "a": a }),
        |(f, s, a)| Ok(vec![verify_kw_bound(f, s, a)?]),
    ));

    const DEGREE: [&str; 2] = ["absorbing_degree_bounded_bound", "support_moves_within_itself"];
    let mut rng = stream(seed, 5);
    let red = generated!(&DEGREE, count, || generate::redcoeffs_instance(&mut rng));
    out.extend(tally(
        &DEGREE,
        &red,
        |(f, d, a)| json!({ "poly": f.to_json(), "domain": d.to_json(), "a": a }),
        |(f, domain, a)| {
            let bound = verify_redcoeffs(f, domain, a)?;
            let support = exponent_support(f);
            let sets: Vec<Vec<u32>> = domain.sets().iter().map(|s| (0..s.len() as u32).collect()).collect();
            let comb = check_comb_property(&support, &sets)?;
            let comb = BoundCheck::new(
                comb.condition && comb.holds,
                "support is closed under single-coordinate moves and has >= 2^N members",
                format!("condition = {}, |E| = {}", comb.condition, comb.size),
            );
            Ok(vec![bound, comb])
        },
    ));

    const ZERO: [&str; 1] = ["absorbing_zero_domain_bound"];
    let mut rng = stream(seed, 6);
    let c2 = generated!(&ZERO, count, || generate::coeffs2_instance(&mut rng));
    out.extend(tally(
        &ZERO,
        &c2,
        |(f, d, a)| json!({ "poly": f.to_json(), "domain": d.to_json(), "a": a }),
        |(f, domain, a)| Ok(vec![verify_coeffs2(f, domain, a)?]),
    ));

    const MAKE: [&str; 1] = ["make_absorbing_output_absorbs"];
    let mut rng = stream(seed, 7);
    let inputs = generated!(&MAKE, count, || generate::absorbing_input(&mut rng));
    out.extend(tally(
        &MAKE,
        &inputs,
        |(g, a, d)| json!({ "g": g.to_json(), "a": a, "domain": d.to_json() }),
        |(g, a, domain)| {
            let f = make_absorbing(g, a, domain)?;
            let ok = is_absorbing(&f, a, domain)?;
            Ok(vec![BoundCheck::new(ok, "absorbing at a", format!("absorbing = {ok}"))])
        },
    ));
    out
}

/// Density of nonzeros on `S^N` and on two-point products.
pub fn check_density(seed: u64, count: usize) -> Vec<CheckSummary> {
    let mut out = Vec::new();

    const TWO: [&str; 1] = ["two_point_density"];
    let mut rng = stream(seed, 8);
    let two = generated!(&TWO, count, || generate::two_element_instance(&mut rng));
    out.extend(tally(
        &TWO,
        &two,
        |(f, d, r)| json!({ "poly": f.to_json(), "domain": d.to_json(), "r": r }),
        |(f, domain, r)| Ok(vec![verify_2elements_density(f, domain, *r)?]),
    ));

    const NAMES: [&str; 2] = ["density_volume_form", "density_power_form"];
    let mut rng = stream(seed, 9);
    let inst = generated!(&NAMES, count, || generate::density_instance(&mut rng));
    out.extend(tally(
        &NAMES,
        &inst,
        |(f, s, n)| json!({ "poly": f.to_json(), "set": s, "n": n }),
        |(f, s, n)| {
            let c = verify_density_bounds(f, s, *n)?;
            Ok(vec![c.volume, c.power])
        },
    ));

    // the alphabet-size variant is gated; the field-order variant is only
    // counted, since its hypothesis and base mix q with the alphabet size s
    const ENTROPY: [&str; 1] = ["density_entropy_form"];
    let mut rng = stream(seed, 15);
    let inst = generated!(&ENTROPY, count, || generate::entropy_instance(&mut rng));
    let checks: Vec<Result<DensityCheck>> = inst.par_iter().map(|(f, s, n)| verify_density_bounds(f, s, *n)).collect();
    let paired: Vec<_> = checks.iter().zip(&inst).collect();
    let mut summaries = tally(
        &ENTROPY,
        &paired,
        |(_, (f, s, n))| json!({ "poly": f.to_json(), "set": s, "n": n }),
        |(c, _)| {
            let c = c.as_ref().map_err(|e| Error::Hypothesis(e.to_string()))?;
            let check = c
                .entropy_alphabet
                .clone()
                .ok_or_else(|| Error::Hypothesis("entropy hypothesis not met".into()))?;
            Ok(vec![check])
        },
    );
    let ok: Vec<&DensityCheck> = checks.iter().filter_map(|c| c.as_ref().ok()).collect();
    let applied = ok.iter().filter(|c| c.entropy_field.is_some()).count();
    let violations = ok.iter().filter(|c| c.entropy_field.as_ref().is_some_and(|b| !b.holds)).count();
    summaries[0].stats.insert("field_order_variant_applied".into(), json!(applied));
    summaries[0].stats.insert("field_order_variant_violations".into(), json!(violations));
    out.extend(summaries);
    out
}

/// Lexicographic scan for tuples meeting every member in some coordinate.
pub fn check_covering(seed: u64, count: usize) -> Vec<CheckSummary> {
    const NAMES: [&str; 1] = ["covering_tuple_exists"];
    let mut rng = stream(seed, 10);
    let inst: Vec<_> = (0..count).map(|_| generate::covering_instance(&mut rng)).collect();
    tally(
        &NAMES,
        &inst,
        |(s, r)| json!({ "tuples": s, "radices": r }),
        |(s, r)| {
            let res = find_covering_tuple(s, r)?;
            let ok = res.hypothesis
                && res.tuple.as_ref().is_some_and(|t| s.iter().all(|x| x.iter().zip(t).any(|(a, b)| a == b)));
            Ok(vec![BoundCheck::new(ok, "a covering tuple exists", format!("{:?}", res.tuple))])
        },
    )
}

fn system_json(sys: &PolySystem) -> Value {
    json!({
        "field": sys.field().name(),
        "polys": sys.polys().iter().map(SparsePoly::to_json).collect::<Vec<_>>(),
    })
}

fn solutions(sys: &PolySystem, domain: &RectangularDomain) -> Result<Vec<Point>> {
    check_cap(domain)?;
    Ok(domain.points().filter(|x| sys.is_solution(x).unwrap_or(false)).collect())
}

/// System solving against full scans of the solution set.
pub fn check_systems(seed: u64, count: usize) -> Vec<CheckSummary> {
    let mut out = Vec::new();

    const PLANTED: [&str; 2] = ["system_nearest_solution", "system_sharp_radius_below_closed_form"];
    let mut rng = stream(seed, 11);
    let planted = generated!(&PLANTED, count, || {
        let (sys, domain, z) = generate::planted_system_instance(&mut rng)?;
        let anchor = generate::random_point(&mut rng, &domain);
        Ok((sys, domain, z, anchor))
    });
    out.extend(tally(
        &PLANTED,
        &planted,
        |(sys, d, z, anchor)| json!({ "system": system_json(sys), "domain": d.to_json(), "planted": z, "anchor": anchor }),
        |(sys, domain, _, anchor)| {
            let v = solutions(sys, domain)?;
            let best = nearest_distance(anchor, &v)?;
            let rep = crate::solver::solve_near(sys, anchor, domain)?;
            let ok = rep.search.distance == best
                && rep.solution().is_some_and(|s| sys.is_solution(s).unwrap_or(false))
                && best.is_some_and(|b| b as u64 <= rep.sharp_radius);
            let nearest = BoundCheck::new(
                ok,
                format!("solution at distance {best:?} within {}", rep.sharp_radius),
                format!("{:?} at {:?}", rep.search.distance, rep.solution()),
            );
            let radii = BoundCheck::new(
                real_at_least(rep.closed_form_radius, rep.sharp_radius as f64),
                format!("sharp radius <= closed form {:.6}", rep.closed_form_radius),
                format!("sharp radius = {}", rep.sharp_radius),
            );
            Ok(vec![nearest, radii])
        },
    ));

    const RANDOM: [&str; 1] = ["system_verdict_matches_scan"];
    let mut rng = stream(seed, 12);
    let random = generated!(&RANDOM, count / 2 + 1, || {
        let (sys, domain) = generate::random_system_instance(&mut rng)?;
        let anchor = generate::random_point(&mut rng, &domain);
        Ok((sys, domain, anchor))
    });
    let mut summary = tally(
        &RANDOM,
        &random,
        |(sys, d, anchor)| json!({ "system": system_json(sys), "domain": d.to_json(), "anchor": anchor }),
        |(sys, domain, anchor)| {
            let v = solutions(sys, domain)?;
            let rep = crate::solver::solve_near(sys, anchor, domain)?;
            let ok = rep.search.distance == nearest_distance(anchor, &v)?;
            Ok(vec![BoundCheck::new(ok, format!("{} solutions in Q", v.len()), format!("{:?}", rep.search.verdict))])
        },
    );
    let unsat = random
        .iter()
        .filter(|(s, d, _)| solutions(s, d).is_ok_and(|v| v.is_empty()))
        .count();
    summary[0].stats.insert("unsatisfiable".into(), json!(unsat));
    out.extend(summary);

    const ORIGIN: [&str; 1] = ["system_zero_domain_solution"];
    let mut rng = stream(seed, 13);
    let origin = generated!(&ORIGIN, count, || generate::origin_system_instance(&mut rng));
    out.extend(tally(
        &ORIGIN,
        &origin,
        |(sys, a)| json!({ "system": system_json(sys), "a": a }),
        |(sys, a)| {
            let domain = RectangularDomain::new(sys.field().clone(), a.iter().map(|&x| vec![x, Elem::ZERO]).collect())?;
            let v = solutions(sys, &domain)?;
            let best = nearest_distance(a, &v)?;
            let rep = crate::solver::solve_near_zero_domain(sys, a)?;
            let zeros = rep.solution().map(|s| s.iter().filter(|x| x.is_zero()).count());
            let ok = rep.search.distance == best
                && zeros == best
                && zeros.is_some_and(|z| z as u64 <= rep.sharp_radius)
                && real_at_least(rep.closed_form_radius, rep.sharp_radius as f64);
            Ok(vec![BoundCheck::new(
                ok,
                format!("nearest solution has {best:?} zero entries, at most {}", rep.sharp_radius),
                format!("{zeros:?} zero entries at {:?}", rep.solution()),
            )])
        },
    ));

    const SINGLETON: [&str; 1] = ["system_not_a_singleton"];
    let mut rng = stream(seed, 14);
    let single = generated!(&SINGLETON, count, || generate::singleton_instance(&mut rng));
    let mut summary = tally(
        &SINGLETON,
        &single,
        |(sys, d)| json!({ "system": system_json(sys), "domain": d.to_json() }),
        |(sys, domain)| {
            let check = check_not_singleton(sys, domain)?;
            if !check.applicable {
                return Err(Error::Hypothesis("criterion not applicable".into()));
            }
            let v = solutions(sys, domain)?;
            Ok(vec![BoundCheck::new(v.len() != 1, "|V| != 1", format!("|V| = {}", v.len()))])
        },
    );
    let empty = single.iter().filter(|(s, d)| solutions(s, d).is_ok_and(|v| v.is_empty())).count();
    summary[0].stats.insert("empty_solution_sets".into(), json!(empty));
    out.extend(summary);
    out
}

/// All checks with `per_theorem` instances each (the sphere check samples
/// 20 anchors per instance).
pub fn run_suite(seed: u64, per_theorem: usize) -> SuiteReport {
    let mut checks = Vec::new();
    checks.extend(check_zero_test(seed, per_theorem));
    checks.extend(check_sphere(seed, per_theorem, 20));
    checks.extend(check_absorbing_bounds(seed, per_theorem));
    checks.extend(check_density(seed, per_theorem));
    checks.extend(check_covering(seed, per_theorem));
    checks.extend(check_systems(seed, per_theorem));
    let passed = checks.iter().all(CheckSummary::passed);
    SuiteReport { seed, per_theorem, passed, checks }
}
