//! Seeded random instances that satisfy each bound's hypotheses by
//! construction.
//!
//! Absorbing polynomials are built as `reduce(g * prod (X_i - a_i), Q)`; a
//! nonzero at a chosen point `b` is forced by shifting the constant term of
//! `g`. Where a bound does not need reduced input, random multiples of the
//! vanishing-ideal generators `prod_{alpha in A_i} (X_i - alpha)` are added
//! so the verifier also sees unreduced polynomials.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{make_absorbing, AbsorbingInstance};
use crate::domain::{Point, RectangularDomain};
use crate::error::Result;
use crate::gf::{Elem, GaloisField};
use crate::poly::SparsePoly;
use crate::solver::{check_not_singleton, PolySystem};

/// Fields used by the randomized suites: GF(3), GF(4), GF(5), GF(7), GF(9).
pub const SUITE_FIELDS: [(u64, u32); 5] = [(3, 1), (2, 2), (5, 1), (7, 1), (3, 2)];

/// Domain size limit for generated instances.
pub const INSTANCE_CAP: u64 = 100_000;

const MAX_DIM: usize = 6;

pub fn random_field<R: Rng + ?Sized>(rng: &mut R) -> Arc<GaloisField> {
    let (p, k) = *SUITE_FIELDS.choose(rng).expect("nonempty");
    GaloisField::shared(p, k).expect("suite fields are valid")
}

pub fn random_nonzero<R: Rng + ?Sized>(rng: &mut R, field: &GaloisField) -> Elem {
    field.element(rng.gen_range(1..field.order() as u64)).expect("in range")
}

/// `size` distinct elements of `pool`, sorted.
pub fn random_subset<R: Rng + ?Sized>(rng: &mut R, pool: &[Elem], size: usize) -> Vec<Elem> {
    let mut s: Vec<Elem> = pool.choose_multiple(rng, size).copied().collect();
    s.sort();
    s
}

pub fn random_point<R: Rng + ?Sized>(rng: &mut R, domain: &RectangularDomain) -> Point {
    domain.sets().iter().map(|s| *s.choose(rng).expect("sets are nonempty")).collect()
}

/// A point of `Q` differing from `a` in every coordinate whose set allows it.
fn random_point_avoiding<R: Rng + ?Sized>(rng: &mut R, domain: &RectangularDomain, a: &[Elem]) -> Point {
    domain
        .sets()
        .iter()
        .zip(a)
        .map(|(s, &ai)| {
            let others: Vec<Elem> = s.iter().copied().filter(|&x| x != ai).collect();
            others.choose(rng).copied().unwrap_or(ai)
        })
        .collect()
}

/// Up to `max_terms` random terms with nonzero coefficients and exponents
/// at most `max_exp`; colliding monomials are summed.
pub fn random_sparse_poly<R: Rng + ?Sized>(
    rng: &mut R,
    field: &Arc<GaloisField>,
    nvars: usize,
    max_terms: usize,
    max_exp: u32,
) -> SparsePoly {
    let count = rng.gen_range(1..=max_terms.max(1));
    let terms: Vec<(Vec<u32>, Elem)> = (0..count)
        .map(|_| {
            let exps = (0..nvars).map(|_| rng.gen_range(0..=max_exp)).collect();
            (exps, random_nonzero(rng, field))
        })
        .collect();
    SparsePoly::from_terms(field.clone(), nvars, terms).expect("well-formed terms")
}

fn monomial<R: Rng + ?Sized>(rng: &mut R, field: &Arc<GaloisField>, nvars: usize, max_exp: u32) -> SparsePoly {
    random_sparse_poly(rng, field, nvars, 1, max_exp)
}

/// `prod_{alpha in A_i} (X_i - alpha)`, zero on all of `Q`.
pub fn vanishing_generator(domain: &RectangularDomain, i: usize) -> SparsePoly {
    let field = domain.field();
    let n = domain.nvars();
    let x = SparsePoly::variable(field.clone(), n, i).expect("index in range");
    domain.set(i).iter().fold(SparsePoly::one(field.clone(), n), |acc, &alpha| {
        let factor = x.sub(&SparsePoly::constant(field.clone(), n, alpha)).expect("same ring");
        acc.mul(&factor).expect("same ring")
    })
}

/// Adds up to `max_count` random monomial multiples of the vanishing-ideal
/// generators; the function on `Q` is unchanged.
pub fn add_ideal_noise<R: Rng + ?Sized>(
    rng: &mut R,
    f: &SparsePoly,
    domain: &RectangularDomain,
    max_count: usize,
) -> SparsePoly {
    let n = domain.nvars();
    let q = domain.field().order();
    let mut out = f.clone();
    for _ in 0..rng.gen_range(0..=max_count) {
        let i = rng.gen_range(0..n);
        let h = monomial(rng, domain.field(), n, 2.min(q - 1));
        out = out.add(&h.mul(&vanishing_generator(domain, i)).expect("same ring")).expect("same ring");
    }
    out
}

/// `g`, or `g + c` for a nonzero constant `c` when `g(b) = 0`.
fn nonzero_at<R: Rng + ?Sized>(rng: &mut R, g: &SparsePoly, b: &[Elem]) -> SparsePoly {
    let field = g.field();
    let v = g.eval_unchecked(b);
    if !v.is_zero() {
        return g.clone();
    }
    let target = random_nonzero(rng, field);
    let shift = SparsePoly::constant(field.clone(), g.nvars(), field.sub(target, v));
    g.add(&shift).expect("same ring")
}

/// Largest dimension `<= MAX_DIM` with `size^n <= INSTANCE_CAP`.
fn max_dim(size: usize) -> usize {
    let mut n = 1;
    while n < MAX_DIM && (size as u64).pow(n as u32 + 1) <= INSTANCE_CAP {
        n += 1;
    }
    n
}

/// Absorbing instance on `×{a_i, b_i}` with nonzero coordinates and the
/// ratio orders `r_i = ord(b_i/a_i)`.
pub fn coeffs_instance<R: Rng + ?Sized>(rng: &mut R) -> Result<(AbsorbingInstance, Vec<u32>)> {
    let field = random_field(rng);
    let n = rng.gen_range(1..=MAX_DIM);
    let nonzero: Vec<Elem> = field.nonzero_elements().collect();
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    let mut orders = Vec::with_capacity(n);
    for _ in 0..n {
        let pair = random_subset(rng, &nonzero, 2);
        let (ai, bi) = if rng.gen_bool(0.5) { (pair[0], pair[1]) } else { (pair[1], pair[0]) };
        orders.push(field.mul_order(field.div(bi, ai).expect("ai is nonzero"))?);
        a.push(ai);
        b.push(bi);
    }
    let domain = RectangularDomain::two_point(field.clone(), &a, &b)?;
    let g = random_sparse_poly(rng, &field, n, 4, 2);
    let g = nonzero_at(rng, &g, &b);
    let f = make_absorbing(&g, &a, &domain)?;
    let f = add_ideal_noise(rng, &f, &domain, 3);
    Ok((AbsorbingInstance::new(f, domain, a, Some(b))?, orders))
}

/// `(f, S, a)`: `S` a subgroup of order `d >= 2`, `f` absorbing at `a` on
/// `S^N` with a nonzero there.
pub fn kw_instance<R: Rng + ?Sized>(rng: &mut R) -> Result<(SparsePoly, Vec<Elem>, Point)> {
    let field = random_field(rng);
    let group = field.order() - 1;
    let divisors: Vec<u32> = (2..=group).filter(|d| group.is_multiple_of(*d)).collect();
    let d = *divisors.choose(rng).expect("q - 1 >= 2");
    let subgroup = field.subgroup_of_order(d)?;
    let n = rng.gen_range(1..=max_dim(d as usize));
    let domain = RectangularDomain::power(field.clone(), subgroup.clone(), n)?;
    let a = random_point(rng, &domain);
    let b = random_point_avoiding(rng, &domain, &a);
    let g = random_sparse_poly(rng, &field, n, 4, d);
    let g = nonzero_at(rng, &g, &b);
    let f = make_absorbing(&g, &a, &domain)?;
    let f = add_ideal_noise(rng, &f, &domain, 3);
    Ok((f, subgroup, a))
}

/// `(f, Q, a)`: `f` reduced modulo `Q` (so `deg_{X_i} f < |A_i|`), absorbing
/// at `a` with nonzero coordinates, and nonzero somewhere on `Q`. Sets may
/// contain zero.
pub fn redcoeffs_instance<R: Rng + ?Sized>(rng: &mut R) -> Result<(SparsePoly, RectangularDomain, Point)> {
    let field = random_field(rng);
    let q = field.order() as usize;
    let all: Vec<Elem> = field.elements().collect();
    let n = rng.gen_range(1..=MAX_DIM);
    let per_coord = (INSTANCE_CAP as f64).powf(1.0 / n as f64).floor() as usize;
    let top = per_coord.min(q).max(2);
    let mut sets = Vec::with_capacity(n);
    let mut a = Vec::with_capacity(n);
    for _ in 0..n {
        let size = rng.gen_range(2..=top);
        let mut set = random_subset(rng, &all, size);
        if set.iter().all(|x| x.is_zero()) || set.len() < 2 {
            set = random_subset(rng, &all, 2);
        }
        let nonzero: Vec<Elem> = set.iter().copied().filter(|x| !x.is_zero()).collect();
        a.push(*nonzero.choose(rng).expect("two distinct elements include a nonzero"));
        sets.push(set);
    }
    let domain = RectangularDomain::new(field.clone(), sets)?;
    let b = random_point_avoiding(rng, &domain, &a);
    let g = random_sparse_poly(rng, &field, n, 4, 2);
    let g = nonzero_at(rng, &g, &b);
    let f = make_absorbing(&g, &a, &domain)?;
    Ok((f, domain, a))
}

/// `(f, ×{0, a_i}, a)` with `f` absorbing at `a` and `f(0) != 0`.
pub fn coeffs2_instance<R: Rng + ?Sized>(rng: &mut R) -> Result<(SparsePoly, RectangularDomain, Point)> {
    let field = random_field(rng);
    let n = rng.gen_range(1..=MAX_DIM);
    let a: Point = (0..n).map(|_| random_nonzero(rng, &field)).collect();
    let domain = RectangularDomain::new(field.clone(), a.iter().map(|&x| vec![Elem::ZERO, x]).collect())?;
    let g = random_sparse_poly(rng, &field, n, 4, 3);
    let g = nonzero_at(rng, &g, &vec![Elem::ZERO; n]);
    let f = make_absorbing(&g, &a, &domain)?;
    let f = add_ideal_noise(rng, &f, &domain, 3);
    Ok((f, domain, a))
}

/// `(f, ×{a_i, b_i}, r)` with `b_i = zeta_i a_i`, `zeta_i^r = 1`, and a
/// nonzero of `f` on the domain. A third of the instances are absorbing,
/// which pushes `|W|` down to the bound.
pub fn two_element_instance<R: Rng + ?Sized>(rng: &mut R) -> Result<(SparsePoly, RectangularDomain, u32)> {
    let field = random_field(rng);
    let group = field.order() - 1;
    let divisors: Vec<u32> = (2..=group).filter(|d| group.is_multiple_of(*d)).collect();
    let r = *divisors.choose(rng).expect("q - 1 >= 2");
    let roots: Vec<Elem> = field.subgroup_of_order(r)?.into_iter().filter(|&z| z != Elem::ONE).collect();
    let n = rng.gen_range(1..=MAX_DIM);
    let a: Point = (0..n).map(|_| random_nonzero(rng, &field)).collect();
    let b: Point = a.iter().map(|&x| field.mul(x, *roots.choose(rng).expect("r >= 2"))).collect();
    let domain = RectangularDomain::two_point(field.clone(), &a, &b)?;
    let f = if rng.gen_ratio(1, 3) {
        let g = random_sparse_poly(rng, &field, n, 3, 2);
        let g = nonzero_at(rng, &g, &b);
        make_absorbing(&g, &a, &domain)?
    } else {
        let target = random_point(rng, &domain);
        let g = random_sparse_poly(rng, &field, n, 8, field.order());
        nonzero_at(rng, &g, &target)
    };
    Ok((add_ideal_noise(rng, &f, &domain, 2), domain, r))
}

/// `(f, S, N)` with zero-free `|S| >= 2`, `|S|^N <= INSTANCE_CAP`, and a
/// nonzero of `f` on `S^N`.
pub fn density_instance<R: Rng + ?Sized>(rng: &mut R) -> Result<(SparsePoly, Vec<Elem>, usize)> {
    let field = random_field(rng);
    let nonzero: Vec<Elem> = field.nonzero_elements().collect();
    let s = rng.gen_range(2..=nonzero.len());
    let set = random_subset(rng, &nonzero, s);
    let n = rng.gen_range(1..=max_dim(s));
    let domain = RectangularDomain::power(field.clone(), set.clone(), n)?;
    let target = random_point(rng, &domain);
    let f = match rng.gen_range(0..3) {
        0 => {
            let a = random_point(rng, &domain);
            let b = random_point_avoiding(rng, &domain, &a);
            let g = random_sparse_poly(rng, &field, n, 3, 2);
            let g = nonzero_at(rng, &g, &b);
            make_absorbing(&g, &a, &domain)?
        }
        1 => {
            let g = planted_product(rng, &domain, &target);
            nonzero_at(rng, &g, &target)
        }
        _ => {
            let g = random_sparse_poly(rng, &field, n, 12, field.order());
            nonzero_at(rng, &g, &target)
        }
    };
    Ok((add_ideal_noise(rng, &f, &domain, 2), set, n))
}

/// Like [`density_instance`] with `M(f) <= t^(N (s-1)/s)`, so the entropy
/// form of the density bound applies.
pub fn entropy_instance<R: Rng + ?Sized>(rng: &mut R) -> Result<(SparsePoly, Vec<Elem>, usize)> {
    loop {
        let field = random_field(rng);
        let nonzero: Vec<Elem> = field.nonzero_elements().collect();
        let s = rng.gen_range(2..=nonzero.len());
        let set = random_subset(rng, &nonzero, s);
        let n = rng.gen_range(1..=max_dim(s));
        let r = field.max_ratio_order(&[&set])? as f64;
        let limit = (r / (r - 1.0)).powf(n as f64 * (s - 1) as f64 / s as f64);
        let max_terms = (limit + 1e-9).floor() as usize;
        if max_terms == 0 {
            continue;
        }
        let domain = RectangularDomain::power(field.clone(), set.clone(), n)?;
        let target = random_point(rng, &domain);
        let f = if rng.gen_bool(0.5) {
            planted_product(rng, &domain, &target)
        } else {
            random_sparse_poly(rng, &field, n, max_terms, field.order())
        };
        if f.monomial_count() <= max_terms && !f.eval_unchecked(&target).is_zero() {
            return Ok((f, set, n));
        }
    }
}

/// `prod_{i in J} (X_i - c_i)` for a random coordinate subset `J` and
/// values `c_i` from `A_i` other than `avoid_i`; zero wherever some
/// coordinate in `J` equals `c_i`.
fn planted_product<R: Rng + ?Sized>(rng: &mut R, domain: &RectangularDomain, avoid: &[Elem]) -> SparsePoly {
    let field = domain.field();
    let n = domain.nvars();
    let mut p = SparsePoly::one(field.clone(), n);
    for i in 0..n {
        if !rng.gen_bool(0.5) {
            continue;
        }
        let choices: Vec<Elem> = domain.set(i).iter().copied().filter(|&x| x != avoid[i]).collect();
        if let Some(&c) = choices.choose(rng) {
            let x = SparsePoly::variable(field.clone(), n, i).expect("index in range");
            p = p.mul(&x.sub(&SparsePoly::constant(field.clone(), n, c)).expect("same ring")).expect("same ring");
        }
    }
    p
}

/// Kind of polynomial produced by [`zero_test_instance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroTestKind {
    Random,
    Vanishing,
    /// Vanishing part plus a product of linear factors, nonzero only away
    /// from the chosen values.
    Planted,
}

/// `(f, S, N)` with `|S| >= 2` zero-free, `|S|^N <= INSTANCE_CAP` and
/// `1 <= M(f) <= 50`; a mix of random, vanishing and planted polynomials.
pub fn zero_test_instance<R: Rng + ?Sized>(rng: &mut R) -> Result<(SparsePoly, Vec<Elem>, usize, ZeroTestKind)> {
    loop {
        let field = random_field(rng);
        let nonzero: Vec<Elem> = field.nonzero_elements().collect();
        let s = rng.gen_range(2..=nonzero.len());
        let set = random_subset(rng, &nonzero, s);
        let n = rng.gen_range(1..=max_dim(s));
        let domain = RectangularDomain::power(field.clone(), set.clone(), n)?;
        let kind = match rng.gen_range(0..3) {
            0 => ZeroTestKind::Random,
            1 => ZeroTestKind::Vanishing,
            _ => ZeroTestKind::Planted,
        };
        let q = field.order();
        let f = match kind {
            ZeroTestKind::Random => random_sparse_poly(rng, &field, n, 20, q + 1),
            ZeroTestKind::Vanishing => {
                let zero = SparsePoly::zero(field.clone(), n);
                let mut f = add_ideal_noise(rng, &zero, &domain, 3);
                if f.is_zero() {
                    f = vanishing_generator(&domain, rng.gen_range(0..n));
                }
                f
            }
            ZeroTestKind::Planted => {
                let anchor = vec![set[0]; n];
                let far = random_point_avoiding(rng, &domain, &anchor);
                let base = planted_product(rng, &domain, &far);
                let c = random_nonzero(rng, &field);
                add_ideal_noise(rng, &base.scalar_mul(c)?, &domain, 2)
            }
        };
        if (1..=50).contains(&f.monomial_count()) {
            return Ok((f, set, n, kind));
        }
    }
}

/// `(f, Q)` on a zero-free rectangular domain with a nonzero of `f` on `Q`.
/// Planted instances on two-point sets have a unique nonzero.
pub fn sphere_instance<R: Rng + ?Sized>(rng: &mut R) -> Result<(SparsePoly, RectangularDomain)> {
    let field = random_field(rng);
    let nonzero: Vec<Elem> = field.nonzero_elements().collect();
    let n = rng.gen_range(1..=MAX_DIM);
    let per_coord = (INSTANCE_CAP as f64).powf(1.0 / n as f64).floor() as usize;
    let top = per_coord.min(nonzero.len()).max(1);
    let two_point = rng.gen_bool(0.4);
    let sets: Vec<Vec<Elem>> = (0..n)
        .map(|_| {
            let size = if two_point { 2 } else { rng.gen_range(1..=top) };
            random_subset(rng, &nonzero, size)
        })
        .collect();
    let domain = RectangularDomain::new(field.clone(), sets)?;
    let target = random_point(rng, &domain);
    let f = if two_point && rng.gen_bool(0.5) {
        // unique nonzero at `target`: every coordinate factor kills the other value
        let mut p = SparsePoly::one(field.clone(), n);
        for i in 0..n {
            let other = domain.set(i).iter().copied().find(|&x| x != target[i]).expect("two values");
            let x = SparsePoly::variable(field.clone(), n, i)?;
            p = p.mul(&x.sub(&SparsePoly::constant(field.clone(), n, other))?)?;
        }
        p
    } else if rng.gen_bool(0.5) {
        planted_product(rng, &domain, &target)
    } else {
        random_sparse_poly(rng, &field, n, 10, field.order())
    };
    let f = nonzero_at(rng, &f, &target);
    Ok((add_ideal_noise(rng, &f, &domain, 2), domain))
}

/// A binomial or trinomial with random monomials vanishing at `z`, which
/// must have nonzero coordinates.
fn poly_vanishing_at<R: Rng + ?Sized>(rng: &mut R, field: &Arc<GaloisField>, z: &[Elem]) -> SparsePoly {
    let n = z.len();
    loop {
        let k = rng.gen_range(2..=3);
        let mons: Vec<SparsePoly> = (0..k)
            .map(|_| {
                let exps: Vec<u32> = (0..n).map(|_| rng.gen_range(0..field.order())).collect();
                SparsePoly::from_terms(field.clone(), n, [(exps, Elem::ONE)]).expect("well-formed")
            })
            .collect();
        let mut f = SparsePoly::zero(field.clone(), n);
        for m in &mons[..k - 1] {
            f = f.add(&m.scalar_mul(random_nonzero(rng, field)).expect("scalar")).expect("same ring");
        }
        // last coefficient cancels the value at z; monomials are nonzero at z
        let rest = f.eval_unchecked(z);
        let last = mons[k - 1].eval_unchecked(z);
        let c = field.div(field.neg(rest), last).expect("z has nonzero coordinates");
        f = f.add(&mons[k - 1].scalar_mul(c).expect("scalar")).expect("same ring");
        if f.monomial_count() >= 2 {
            return f;
        }
    }
}

/// `(system, Q, solution)` on a zero-free domain over GF(q), q > 2, with 1
/// to 3 binomials or trinomials sharing the planted solution.
pub fn planted_system_instance<R: Rng + ?Sized>(rng: &mut R) -> Result<(PolySystem, RectangularDomain, Point)> {
    let field = random_field(rng);
    let nonzero: Vec<Elem> = field.nonzero_elements().collect();
    let n = rng.gen_range(1..=MAX_DIM);
    let per_coord = (INSTANCE_CAP as f64).powf(1.0 / n as f64).floor() as usize;
    let top = per_coord.min(nonzero.len()).max(1);
    let sets: Vec<Vec<Elem>> = (0..n)
        .map(|_| {
            let size = rng.gen_range(1..=top);
            random_subset(rng, &nonzero, size)
        })
        .collect();
    let domain = RectangularDomain::new(field.clone(), sets)?;
    let z = random_point(rng, &domain);
    let count = rng.gen_range(1..=3);
    let polys = (0..count).map(|_| poly_vanishing_at(rng, &field, &z)).collect();
    Ok((PolySystem::new(polys)?, domain, z))
}

/// Like [`planted_system_instance`] without a planted solution; such
/// systems are often unsatisfiable on `Q`.
pub fn random_system_instance<R: Rng + ?Sized>(rng: &mut R) -> Result<(PolySystem, RectangularDomain)> {
    let (sys, domain, _) = planted_system_instance(rng)?;
    let field = sys.field().clone();
    let n = sys.nvars();
    let polys = sys
        .polys()
        .iter()
        .map(|p| {
            let shift = SparsePoly::constant(field.clone(), n, random_nonzero(rng, &field));
            let shifted = p.add(&shift).expect("same ring");
            if shifted.is_zero() { p.clone() } else { shifted }
        })
        .collect();
    Ok((PolySystem::new(polys)?, domain))
}

/// `(system, a)`: binomials and trinomials without constant terms, so the
/// origin solves the system, and an anchor with nonzero coordinates.
pub fn origin_system_instance<R: Rng + ?Sized>(rng: &mut R) -> Result<(PolySystem, Point)> {
    let field = random_field(rng);
    let n = rng.gen_range(1..=MAX_DIM);
    let count = rng.gen_range(1..=3);
    let polys = (0..count)
        .map(|_| loop {
            let k = rng.gen_range(2..=3);
            let terms: Vec<(Vec<u32>, Elem)> = (0..k)
                .map(|_| {
                    let mut exps: Vec<u32> = (0..n).map(|_| rng.gen_range(0..field.order())).collect();
                    if exps.iter().all(|&e| e == 0) {
                        exps[rng.gen_range(0..n)] = 1;
                    }
                    (exps, random_nonzero(rng, &field))
                })
                .collect();
            let f = SparsePoly::from_terms(field.clone(), n, terms).expect("well-formed");
            if !f.is_zero() {
                break f;
            }
        })
        .collect();
    let a = (0..n).map(|_| random_nonzero(rng, &field)).collect();
    Ok((PolySystem::new(polys)?, a))
}

/// `(system, Q)` for which the sparsity criterion rules out a unique
/// solution: GF(3) on `{1,2}^N`, GF(5) on two-point sets with ratio order
/// 2, or GF(4) on two-point sets, with enough variables.
pub fn singleton_instance<R: Rng + ?Sized>(rng: &mut R) -> Result<(PolySystem, RectangularDomain)> {
    loop {
        let (field, set_choices): (Arc<GaloisField>, Vec<Vec<u64>>) = match rng.gen_range(0..3) {
            0 => (GaloisField::shared(3, 1)?, vec![vec![1, 2]]),
            1 => (GaloisField::shared(5, 1)?, vec![vec![1, 4], vec![2, 3]]),
            _ => (GaloisField::shared(2, 2)?, vec![vec![1, 2], vec![1, 3], vec![2, 3]]),
        };
        let n = rng.gen_range(4..=14);
        let sets: Vec<Vec<Elem>> = (0..n)
            .map(|_| {
                set_choices
                    .choose(rng)
                    .expect("nonempty")
                    .iter()
                    .map(|&i| field.element(i).expect("in range"))
                    .collect()
            })
            .collect();
        let domain = RectangularDomain::new(field.clone(), sets)?;
        if domain.size_u64().is_none_or(|s| s > INSTANCE_CAP) {
            continue;
        }
        let count = rng.gen_range(1..=3);
        let polys: Vec<SparsePoly> = (0..count)
            .map(|_| loop {
                let f = random_sparse_poly(rng, &field, n, 2, field.order() - 1);
                if !f.is_zero() {
                    break f;
                }
            })
            .collect();
        let sys = PolySystem::new(polys)?;
        if check_not_singleton(&sys, &domain)?.applicable {
            return Ok((sys, domain));
        }
    }
}

/// `(g, a, Q)` for exercising [`make_absorbing`] on arbitrary domains,
/// zero allowed.
pub fn absorbing_input<R: Rng + ?Sized>(rng: &mut R) -> Result<(SparsePoly, Point, RectangularDomain)> {
    let field = random_field(rng);
    let all: Vec<Elem> = field.elements().collect();
    let n = rng.gen_range(1..=4);
    let sets: Vec<Vec<Elem>> = (0..n)
        .map(|_| {
            let size = rng.gen_range(1..=all.len().min(5));
            random_subset(rng, &all, size)
        })
        .collect();
    let domain = RectangularDomain::new(field.clone(), sets)?;
    let a = random_point(rng, &domain);
    let g = random_sparse_poly(rng, &field, n, 6, field.order() + 1);
    Ok((g, a, domain))
}

/// `(tuples, radices)` meeting `|S| prod (r_i - 1) < prod r_i`.
pub fn covering_instance<R: Rng + ?Sized>(rng: &mut R) -> (Vec<Vec<u32>>, Vec<u32>) {
    let n = rng.gen_range(1..=5);
    let radices: Vec<u32> = (0..n).map(|_| rng.gen_range(2..=4)).collect();
    let total: u64 = radices.iter().map(|&r| r as u64).product();
    let excluded: u64 = radices.iter().map(|&r| r as u64 - 1).product();
    // largest |S| with |S| * excluded < total
    let max_len = (total - 1) / excluded;
    let len = rng.gen_range(0..=max_len) as usize;
    let tuples = (0..len).map(|_| radices.iter().map(|&r| rng.gen_range(0..r)).collect()).collect();
    (tuples, radices)
}
