//! Arithmetic in finite fields GF(p^k).
//!
//! Elements are encoded by their canonical index: the coefficient vector of
//! the element in the polynomial basis `1, X, ..., X^(k-1)`, read as a base-p
//! integer with the constant coefficient as the least significant digit.
//! Index 0 is the zero element and index 1 is the one element, so for prime
//! fields the index is simply the residue.
//!
//! The defining modulus is the lexicographically smallest monic irreducible
//! polynomial of degree k (coefficients compared from the constant term
//! upwards), which makes every index portable between runs. Multiplication
//! goes through exp/log tables built from the smallest primitive element.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 20;

/// A field element, identified by its canonical index.
///
/// The element does not carry its field; containers such as
/// [`SparsePoly`](crate::poly::SparsePoly) and
/// [`RectangularDomain`](crate::domain::RectangularDomain) do.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An immutable finite field GF(p^k) with precomputed exp/log tables.
pub struct GaloisField {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, coefficients from the constant term upwards (length k+1).
    modulus: Vec<u32>,
    generator: Elem,
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`; doubled to skip a reduction in `mul`.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k
    }
}

impl Eq for GaloisField {}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaloisField")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl fmt::Display for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Remainder of `num` modulo the monic polynomial `den` over GF(p).
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dd;
            for (j, &c) in den[..dd].iter().enumerate() {
                let sub = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + j] = (r[shift + j] + p - sub) % p;
            }
        }
    }
    r
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    for d in 1..=k / 2 {
        // every monic polynomial of degree d
        let count = (p as u64).pow(d as u32);
        for n in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut m = n;
            for _ in 0..d {
                g.push((m % p as u64) as u32);
                m /= p as u64;
            }
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl GaloisField {
    /// Builds GF(p^k) with the canonical modulus.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k < 1 {
            return Err(Error::InvalidDegree);
        }
        let mut order: u128 = 1;
        for _ in 0..k {
            order *= p as u128;
            if order > MAX_ORDER as u128 {
                return Err(Error::FieldTooLarge(order));
            }
        }
        let p = p as u32;
        let q = order as u32;
        let modulus = Self::canonical_modulus(p, k);

        let mut field = GaloisField {
            p,
            k,
            q,
            modulus,
            generator: Elem::ONE,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_tables();
        Ok(field)
    }

    /// Shared handle, the form every other module works with.
    pub fn shared(p: u64, k: u32) -> Result<Arc<Self>> {
        Self::new(p, k).map(Arc::new)
    }

    /// Parses "GF(p^k)", "GF(p)" or "GF(q)" with q a prime power.
    pub fn from_name(name: &str) -> Result<Arc<Self>> {
        let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix("GF(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("field name `{name}` is not of the form GF(...)")))?;
        let parse_int = |s: &str| {
            s.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad integer `{s}` in field name `{name}`")))
        };
        if let Some((p, k)) = inner.split_once('^') {
            let k = parse_int(k)?;
            let k = u32::try_from(k).map_err(|_| Error::FieldTooLarge(u128::MAX))?;
            return Self::shared(parse_int(p)?, k);
        }
        let q = parse_int(inner)?;
        if q < 2 {
            return Err(Error::NotPrime(q));
        }
        let p = prime_factors(q.min(u32::MAX as u64) as u32)
            .first()
            .copied()
            .unwrap_or(q as u32) as u64;
        let mut k = 0;
        let mut rest = q;
        while rest % p == 0 {
            rest /= p;
            k += 1;
        }
        if rest != 1 {
            return Err(Error::Parse(format!("{q} is not a prime power")));
        }
        Self::shared(p, k)
    }

    fn canonical_modulus(p: u32, k: u32) -> Vec<u32> {
        let total = (p as u64).pow(k);
        for n in 0..total {
            // c_0 is the most significant digit of n, so counting up visits
            // coefficient tuples in lexicographic order.
            let mut coeffs = vec![0u32; k as usize + 1];
            let mut m = n;
            for j in (0..k as usize).rev() {
                coeffs[j] = (m % p as u64) as u32;
                m /= p as u64;
            }
            coeffs[k as usize] = 1;
            if is_irreducible(&coeffs, p) {
                return coeffs;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    fn digits(&self, mut x: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            d.push(x % self.p);
            x /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// Table-free multiplication, used only while building the tables.
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let da = self.digits(a);
        let db = self.digits(b);
        let p = self.p as u64;
        let mut prod = vec![0u32; 2 * self.k as usize - 1];
        for (j, &y) in db.iter().enumerate() {
            if y == 0 {
                continue;
            }
            for (i, &x) in da.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p) as u32;
            }
        }
        let r = poly_rem(&prod, &self.modulus, self.p);
        let mut out = vec![0u32; self.k as usize];
        out[..r.len()].copy_from_slice(&r);
        self.undigits(&out)
    }

    fn pow_slow(&self, base: u32, mut e: u64) -> u32 {
        let mut acc = 1;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, b);
            }
            b = self.mul_slow(b, b);
            e >>= 1;
        }
        acc
    }

    fn build_tables(&mut self) {
        let n = self.q - 1;
        let factors = prime_factors(n);
        let generator = (1..self.q)
            .find(|&g| factors.iter().all(|&l| self.pow_slow(g, (n / l) as u64) != 1))
            .expect("the multiplicative group of a finite field is cyclic");
        self.generator = Elem(generator);

        let mut exp = Vec::with_capacity(2 * n as usize);
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp.push(x);
            log[x as usize] = i;
            x = self.mul_slow(x, generator);
        }
        debug_assert_eq!(x, 1);
        exp.extend_from_within(..);
        self.exp = exp;
        self.log = log;
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Number of elements q = p^k.
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Monic modulus, constant coefficient first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive element the exp/log tables are keyed by.
    pub fn generator(&self) -> Elem {
        self.generator
    }

    /// "GF(p)" for prime fields, "GF(p^k)" otherwise.
    pub fn name(&self) -> String {
        if self.k == 1 {
            format!("GF({})", self.p)
        } else {
            format!("GF({}^{})", self.p, self.k)
        }
    }

    pub fn element(&self, index: u64) -> Result<Elem> {
        if index < self.q as u64 {
            Ok(Elem(index as u32))
        } else {
            Err(Error::ElementOutOfRange { index, order: self.q })
        }
    }

    pub fn contains(&self, x: Elem) -> bool {
        x.0 < self.q
    }

    /// All elements in canonical (index) order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> {
        (1..self.q).map(Elem)
    }

    /// The image of an integer under Z -> GF(p) -> GF(p^k).
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.k == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= self.p { s - self.p } else { s });
        }
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut w) = (0, 1);
        while x > 0 || y > 0 {
            out += (x % self.p + y % self.p) % self.p * w;
            x /= self.p;
            y /= self.p;
            w *= self.p;
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        if self.k == 1 {
            return Elem((self.p - a.0) % self.p);
        }
        let mut x = a.0;
        let (mut out, mut w) = (0, 1);
        while x > 0 {
            out += (self.p - x % self.p) % self.p * w;
            x /= self.p;
            w *= self.p;
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        Elem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(Elem(self.exp[((n - self.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// `a^e`, with the convention `0^0 = 1`.
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64 * (e % n) % n;
        Elem(self.exp[l as usize])
    }

    /// Discrete logarithm to the base [`generator`](Self::generator).
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    pub fn exp(&self, i: u64) -> Elem {
        Elem(self.exp[(i % (self.q - 1) as u64) as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn mul_order(&self, x: Elem) -> Result<u32> {
        let l = self.log(x).ok_or(Error::ZeroElement)?;
        let n = self.q - 1;
        Ok(n / gcd(l as u64, n as u64) as u32)
    }

    /// `max({ord(u/v) | u, v in A_i} ∪ {2})` over all coordinate sets.
    pub fn max_ratio_order<S: AsRef<[Elem]>>(&self, sets: &[S]) -> Result<u32> {
        let n = self.q - 1;
        let mut r = 2;
        for (i, set) in sets.iter().enumerate() {
            let set = set.as_ref();
            if set.is_empty() {
                return Err(Error::EmptySet(i));
            }
            let logs = set
                .iter()
                .map(|&x| self.log(x).ok_or(Error::ZeroInSet(i)))
                .collect::<Result<Vec<_>>>()?;
            for &lu in &logs {
                for &lv in &logs {
                    let diff = (lu + n - lv) % n;
                    r = r.max(n / gcd(diff as u64, n as u64) as u32);
                }
            }
        }
        Ok(r)
    }

    /// The unique multiplicative subgroup of order `d`, sorted by index.
    pub fn subgroup_of_order(&self, d: u32) -> Result<Vec<Elem>> {
        let n = self.q - 1;
        if d == 0 || !n.is_multiple_of(d) {
            return Err(Error::NotDivisor { d, group: n });
        }
        let step = (n / d) as u64;
        let mut out: Vec<Elem> = (0..d as u64).map(|j| self.exp(step * j)).collect();
        out.sort_unstable();
        Ok(out)
    }
}
