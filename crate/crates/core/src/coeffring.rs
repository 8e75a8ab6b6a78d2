//! Coefficient rings: finite fields `F_{p^r}`, truncated Witt vectors `Z/p^m`
//! of `F_p`, and the relative base `(Z/p^m)[t]/(t^D)` with a Frobenius lift.
//!
//! Every ring is a context object implementing [`Ring`]; elements are plain
//! values and all arithmetic goes through the context.

use std::fmt::Debug;
use std::sync::Arc;

use rand::Rng as RandRng;
use serde::{Deserialize, Serialize};

use crate::error::{AlgError, Result};

/// A commutative ring with a distinguished Frobenius endomorphism.
pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_unit(&self, a: &Self::Elem) -> bool;
    /// Inverse of a unit; `NonUnit` otherwise.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn from_int(&self, n: i64) -> Self::Elem;
    /// The Frobenius of the ring: `x^p` on fields, the identity on `Z/p^m`,
    /// the chosen lift on the relative base.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem;
    fn characteristic_prime(&self) -> u64;
    fn random<G: RandRng + ?Sized>(&self, rng: &mut G) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Whether `a` may be dropped from sums and products without affecting
    /// precision bookkeeping.
    fn is_exact_zero(&self, a: &Self::Elem) -> bool {
        self.is_zero(a)
    }

    fn random_unit<G: RandRng + ?Sized>(&self, rng: &mut G) -> Self::Elem {
        loop {
            let x = self.random(rng);
            if self.is_unit(&x) {
                return x;
            }
        }
    }

    /// Pivot quality for elimination: `Some(w)` when `a` can be inverted,
    /// smaller `w` preferred.
    fn pivot_rank(&self, a: &Self::Elem) -> Option<i64> {
        if self.is_unit(a) {
            Some(0)
        } else {
            None
        }
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// A ring whose Frobenius is bijective.
pub trait PerfectRing: Ring {
    fn frobenius_inverse(&self, a: &Self::Elem) -> Self::Elem;
}

pub fn is_prime(n: u64) -> bool {
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

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(AlgError::NotPrime(p))
    }
}

// ---------------------------------------------------------------------------
// Polynomials over F_p (low degree first), used to pick the field modulus.

fn poly_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = modinv(m[dm], p).expect("nonzero leading coefficient");
    while r.len() > dm {
        let k = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            r[k + i] = (r[k + i] + p - c * mi % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn monic_polys(p: u64, d: usize) -> impl Iterator<Item = Vec<u64>> {
    // Lexicographic over (c_0, c_1, ..., c_{d-1}) with c_0 most significant.
    let count = p.pow(d as u32);
    (0..count).map(move |mut k| {
        let mut c = vec![0u64; d + 1];
        for i in (0..d).rev() {
            c[i] = k % p;
            k /= p;
        }
        c[d] = 1;
        c
    })
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    for e in 1..=d / 2 {
        for g in monic_polys(p, e) {
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The lexicographically smallest monic irreducible of degree `r` over `F_p`,
/// coefficients compared low degree first.
pub fn smallest_irreducible(p: u64, r: usize) -> Result<Vec<u64>> {
    check_prime(p)?;
    if r == 0 {
        return Err(AlgError::InvalidParameter("extension degree must be at least 1".into()));
    }
    monic_polys(p, r)
        .find(|f| is_irreducible(f, p))
        .ok_or_else(|| AlgError::InvalidParameter("no irreducible polynomial found".into()))
}

pub(crate) fn modinv(a: u64, m: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    if t < 0 {
        t += m as i128;
    }
    Some(t as u64)
}

// ---------------------------------------------------------------------------
// Finite fields

/// Parameters of `F_{p^r}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub r: usize,
    /// Monic modulus, low degree first, length `r + 1`.
    pub modulus: Vec<u64>,
}

impl FieldSpec {
    pub fn new(p: u64, r: usize) -> Result<Self> {
        let modulus = smallest_irreducible(p, r)?;
        Ok(FieldSpec { p, r, modulus })
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.r as u32)
    }
}

/// An element of `F_{p^r}`: base-`p` digits of the encoding are the
/// polynomial coefficients, low degree first.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FfElem(pub u32);

#[derive(Debug)]
struct GfTables {
    spec: FieldSpec,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Vec<u32>,
    neg: Vec<u32>,
    frob: Vec<u32>,
    frob_inv: Vec<u32>,
    primitive: u32,
}

/// The field `F_{p^r}` with table-driven arithmetic.
#[derive(Clone, Debug)]
pub struct Gf {
    t: Arc<GfTables>,
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.t.spec == other.t.spec
    }
}

const GF_MAX_ORDER: u64 = 1 << 16;

impl Gf {
    pub fn new(p: u64, r: usize) -> Result<Self> {
        Self::from_spec(FieldSpec::new(p, r)?)
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn from_spec(spec: FieldSpec) -> Result<Self> {
        let q64 = spec.order();
        if q64 > GF_MAX_ORDER {
            return Err(AlgError::GuardExceeded {
                what: "field order".into(),
                size: q64 as u128,
                limit: GF_MAX_ORDER as u128,
            });
        }
        let q = q64 as u32;
        let p = spec.p;
        let r = spec.r;
        let digits = |x: u32| -> Vec<u64> {
            let mut v = vec![0u64; r];
            let mut x = x as u64;
            for d in v.iter_mut() {
                *d = x % p;
                x /= p;
            }
            v
        };
        let encode = |v: &[u64]| -> u32 {
            let mut x = 0u64;
            for &d in v.iter().rev() {
                x = x * p + d;
            }
            x as u32
        };
        let slow_mul = |a: u32, b: u32| -> u32 {
            let (da, db) = (digits(a), digits(b));
            let mut prod = vec![0u64; 2 * r];
            for i in 0..r {
                for j in 0..r {
                    prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                }
            }
            let mut rem = poly_rem(&prod, &spec.modulus, p);
            rem.resize(r, 0);
            encode(&rem)
        };
        let mut add = vec![0u32; (q as usize) * (q as usize)];
        let mut neg = vec![0u32; q as usize];
        for a in 0..q {
            let da = digits(a);
            neg[a as usize] = encode(&da.iter().map(|&x| (p - x) % p).collect::<Vec<_>>());
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&s);
            }
        }
        // Smallest primitive element by encoding.
        let mut primitive = 0;
        let mut exp = Vec::new();
        for cand in 1..q {
            let mut pows = Vec::with_capacity(q as usize - 1);
            let mut x = 1u32;
            let mut ok = true;
            for k in 0..(q - 1) {
                if k > 0 && x == 1 {
                    ok = false;
                    break;
                }
                pows.push(x);
                x = slow_mul(x, cand);
            }
            if ok && x == 1 {
                primitive = cand;
                exp = pows;
                break;
            }
        }
        if q == 2 {
            primitive = 1;
            exp = vec![1];
        }
        let mut log = vec![0u32; q as usize];
        for (k, &x) in exp.iter().enumerate() {
            log[x as usize] = k as u32;
        }
        let ext: Vec<u32> = exp.iter().chain(exp.iter()).copied().collect();
        let mut tables = GfTables {
            spec: spec.clone(),
            q,
            exp: ext,
            log,
            add,
            neg,
            frob: Vec::new(),
            frob_inv: Vec::new(),
            primitive,
        };
        let mut frob = vec![0u32; q as usize];
        for a in 0..q {
            frob[a as usize] = tables_pow(&tables, a, p);
        }
        let mut frob_inv = vec![0u32; q as usize];
        for a in 0..q {
            frob_inv[frob[a as usize] as usize] = a;
        }
        tables.frob = frob;
        tables.frob_inv = frob_inv;
        Ok(Gf { t: Arc::new(tables) })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.t.spec
    }

    pub fn p(&self) -> u64 {
        self.t.spec.p
    }

    pub fn degree(&self) -> usize {
        self.t.spec.r
    }

    pub fn order(&self) -> u32 {
        self.t.q
    }

    /// The generator of `F_q^*` used for torus elements.
    pub fn primitive(&self) -> FfElem {
        FfElem(self.t.primitive)
    }

    /// `x^k` for the polynomial variable `x`, i.e. the `k`-th power-basis vector.
    pub fn basis(&self, k: usize) -> FfElem {
        FfElem(self.p().pow(k as u32) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FfElem> {
        (0..self.t.q).map(FfElem)
    }

    /// Coordinates over `F_p` in the power basis.
    pub fn coords(&self, a: FfElem) -> Vec<u64> {
        let p = self.p();
        let mut x = a.0 as u64;
        (0..self.degree())
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    }

    pub fn from_coords(&self, c: &[u64]) -> FfElem {
        let p = self.p();
        let mut x = 0u64;
        for &d in c.iter().rev() {
            x = x * p + d % p;
        }
        FfElem(x as u32)
    }

    pub fn elem(&self, v: u32) -> Result<FfElem> {
        if v < self.t.q {
            Ok(FfElem(v))
        } else {
            Err(AlgError::InvalidParameter(format!("{v} is not an element of F_{}", self.t.q)))
        }
    }

    /// Embedding of `self` into `big`, as the image of every element.
    /// Requires `self.degree()` to divide `big.degree()`.
    pub fn embedding_into(&self, big: &Gf) -> Result<Vec<FfElem>> {
        if self.p() != big.p() || !big.degree().is_multiple_of(self.degree()) {
            return Err(AlgError::InvalidParameter("field is not a subfield".into()));
        }
        // Find a root of our modulus in the big field.
        let m = &self.t.spec.modulus;
        let root = big
            .elements()
            .find(|&z| {
                let mut acc = FfElem(0);
                for &c in m.iter().rev() {
                    acc = big.add(&big.mul(&acc, &z), &big.from_int(c as i64));
                }
                acc == FfElem(0)
            })
            .ok_or_else(|| AlgError::InvalidParameter("modulus has no root".into()))?;
        let mut pows = vec![FfElem(1)];
        for _ in 1..self.degree() {
            pows.push(big.mul(pows.last().unwrap(), &root));
        }
        Ok(self
            .elements()
            .map(|a| {
                let c = self.coords(a);
                c.iter().zip(&pows).fold(FfElem(0), |acc, (&d, pw)| {
                    big.add(&acc, &big.mul(&big.from_int(d as i64), pw))
                })
            })
            .collect())
    }
}

fn tables_pow(t: &GfTables, a: u32, e: u64) -> u32 {
    if a == 0 {
        return if e == 0 { 1 } else { 0 };
    }
    let n = (t.q - 1) as u64;
    let k = (t.log[a as usize] as u64 * (e % n)) % n;
    t.exp[k as usize]
}

impl Ring for Gf {
    type Elem = FfElem;

    fn zero(&self) -> FfElem {
        FfElem(0)
    }
    fn one(&self) -> FfElem {
        FfElem(1)
    }
    fn add(&self, a: &FfElem, b: &FfElem) -> FfElem {
        FfElem(self.t.add[(a.0 * self.t.q + b.0) as usize])
    }
    fn neg(&self, a: &FfElem) -> FfElem {
        FfElem(self.t.neg[a.0 as usize])
    }
    fn mul(&self, a: &FfElem, b: &FfElem) -> FfElem {
        if a.0 == 0 || b.0 == 0 {
            return FfElem(0);
        }
        let k = self.t.log[a.0 as usize] + self.t.log[b.0 as usize];
        FfElem(self.t.exp[k as usize])
    }
    fn is_zero(&self, a: &FfElem) -> bool {
        a.0 == 0
    }
    fn is_unit(&self, a: &FfElem) -> bool {
        a.0 != 0
    }
    fn inv(&self, a: &FfElem) -> Result<FfElem> {
        if a.0 == 0 {
            return Err(AlgError::NonUnit);
        }
        let n = self.t.q - 1;
        let k = (n - self.t.log[a.0 as usize]) % n;
        Ok(FfElem(self.t.exp[k as usize]))
    }
    fn from_int(&self, n: i64) -> FfElem {
        FfElem(n.rem_euclid(self.p() as i64) as u32)
    }
    fn frobenius(&self, a: &FfElem) -> FfElem {
        FfElem(self.t.frob[a.0 as usize])
    }
    fn characteristic_prime(&self) -> u64 {
        self.p()
    }
    fn random<G: RandRng + ?Sized>(&self, rng: &mut G) -> FfElem {
        FfElem(rng.gen_range(0..self.t.q))
    }
    fn pow(&self, a: &FfElem, e: u64) -> FfElem {
        FfElem(tables_pow(&self.t, a.0, e))
    }
}

impl PerfectRing for Gf {
    fn frobenius_inverse(&self, a: &FfElem) -> FfElem {
        FfElem(self.t.frob_inv[a.0 as usize])
    }
}

/// `x ↦ x^p` on `F_{p^r}`.
pub fn ff_frobenius(field: &Gf, x: FfElem) -> FfElem {
    field.frobenius(&x)
}

/// The unique `y` with `y^p = x`.
pub fn ff_frobenius_inverse(field: &Gf, x: FfElem) -> FfElem {
    field.frobenius_inverse(&x)
}

// ---------------------------------------------------------------------------
// Z/p^m

/// The truncated Witt vectors `W_m(F_p) = Z/p^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zpm {
    p: u64,
    m: u32,
    pm: u64,
}

impl Zpm {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        check_prime(p)?;
        if m == 0 {
            return Err(AlgError::InvalidParameter("p-adic precision must be at least 1".into()));
        }
        let pm = p
            .checked_pow(m)
            .filter(|&v| v < (1 << 31))
            .ok_or_else(|| AlgError::InvalidParameter("p^m too large".into()))?;
        Ok(Zpm { p, m, pm })
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn precision(&self) -> u32 {
        self.m
    }
    pub fn modulus(&self) -> u64 {
        self.pm
    }
    pub fn reduce_mod_p(&self, x: u64) -> u64 {
        x % self.p
    }
    /// Lift of a residue mod `p` by its standard representative.
    pub fn lift_from_fp(&self, x: u64) -> u64 {
        x % self.p
    }
}

impl Ring for Zpm {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.pm
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.pm
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.pm - a % self.pm) % self.pm
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.pm
    }
    fn is_zero(&self, a: &u64) -> bool {
        (*a).is_multiple_of(self.pm)
    }
    fn is_unit(&self, a: &u64) -> bool {
        !a.is_multiple_of(self.p)
    }
    fn inv(&self, a: &u64) -> Result<u64> {
        if !self.is_unit(a) {
            return Err(AlgError::NonUnit);
        }
        modinv(*a, self.pm).ok_or(AlgError::NonUnit)
    }
    fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.pm as i64) as u64
    }
    fn frobenius(&self, a: &u64) -> u64 {
        *a
    }
    fn characteristic_prime(&self) -> u64 {
        self.p
    }
    fn random<G: RandRng + ?Sized>(&self, rng: &mut G) -> u64 {
        rng.gen_range(0..self.pm)
    }
}

// ---------------------------------------------------------------------------
// (Z/p^m)[t]/(t^D) with a Frobenius lift

/// The lift `t ↦ t^p + p·t·h(t)`; `h` has degree below `D − 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrobLiftSpec {
    pub h: Vec<u64>,
}

impl FrobLiftSpec {
    /// The standard lift `t ↦ t^p`.
    pub fn standard() -> Self {
        FrobLiftSpec { h: Vec::new() }
    }

    pub fn new(h: Vec<u64>) -> Self {
        let mut h = h;
        poly_trim(&mut h);
        FrobLiftSpec { h }
    }
}

/// An element of `(Z/p^m)[t]/(t^D)`: `D` coefficients, low degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RelElem(pub Vec<u64>);

#[derive(Debug)]
struct RelTables {
    zp: Zpm,
    d: usize,
    lift: FrobLiftSpec,
    /// `φ(t)^i` for `i < D`.
    phi_pows: Vec<Vec<u64>>,
}

/// The relative base ring `R_D = (Z/p^m)[t]/(t^D)` with its Frobenius lift.
#[derive(Clone, Debug)]
pub struct RelBase {
    t: Arc<RelTables>,
}

impl PartialEq for RelBase {
    fn eq(&self, other: &Self) -> bool {
        self.t.zp == other.t.zp && self.t.d == other.t.d && self.t.lift == other.t.lift
    }
}

impl RelBase {
    pub fn new(p: u64, m: u32, d: usize, lift: FrobLiftSpec) -> Result<Self> {
        let zp = Zpm::new(p, m)?;
        if d == 0 {
            return Err(AlgError::InvalidParameter("t-adic precision must be at least 1".into()));
        }
        let mut h: Vec<u64> = lift.h.iter().map(|&c| c % zp.modulus()).collect();
        poly_trim(&mut h);
        if m == 1 {
            // p·t·h(t) vanishes mod p; normalize.
            h.clear();
        }
        if !h.is_empty() && h.len() > d.saturating_sub(1) {
            return Err(AlgError::InvalidParameter(format!(
                "lift polynomial must have degree below D - 1 = {}",
                d as i64 - 1
            )));
        }
        let lift = FrobLiftSpec { h };
        let mut tables = RelTables { zp, d, lift, phi_pows: Vec::new() };
        let mut phi_t = vec![0u64; d];
        if p < d as u64 {
            phi_t[p as usize] = 1;
        }
        for (i, &c) in tables.lift.h.iter().enumerate() {
            if i + 1 < d {
                phi_t[i + 1] = (phi_t[i + 1] + p * c) % tables.zp.modulus();
            }
        }
        let mut pows = vec![one_vec(d, &tables.zp)];
        for i in 1..d {
            let next = poly_mul_trunc(&pows[i - 1], &phi_t, &tables.zp, d);
            pows.push(next);
        }
        tables.phi_pows = pows;
        Ok(RelBase { t: Arc::new(tables) })
    }

    /// `F_p[t]/(t^D)`, the reduction mod `p` of any relative base.
    pub fn mod_p(p: u64, d: usize) -> Result<Self> {
        Self::new(p, 1, d, FrobLiftSpec::standard())
    }

    pub fn p(&self) -> u64 {
        self.t.zp.p()
    }
    pub fn precision(&self) -> u32 {
        self.t.zp.precision()
    }
    pub fn t_order(&self) -> usize {
        self.t.d
    }
    pub fn lift(&self) -> &FrobLiftSpec {
        &self.t.lift
    }
    pub fn coeff_ring(&self) -> &Zpm {
        &self.t.zp
    }

    pub fn t_var(&self) -> RelElem {
        let mut v = vec![0u64; self.t.d];
        if self.t.d > 1 {
            v[1] = 1;
        }
        RelElem(v)
    }

    pub fn constant(&self, c: u64) -> RelElem {
        let mut v = vec![0u64; self.t.d];
        v[0] = c % self.t.zp.modulus();
        RelElem(v)
    }

    pub fn from_coeffs(&self, c: &[u64]) -> Result<RelElem> {
        if c.len() > self.t.d {
            return Err(AlgError::SizeMismatch { expected: self.t.d, got: c.len() });
        }
        let mut v: Vec<u64> = c.iter().map(|&x| x % self.t.zp.modulus()).collect();
        v.resize(self.t.d, 0);
        Ok(RelElem(v))
    }

    /// Coefficientwise reduction into `F_p[t]/(t^D)`.
    pub fn reduce_mod_p(&self, x: &RelElem) -> RelElem {
        RelElem(x.0.iter().map(|&c| c % self.p()).collect())
    }

    /// Specialization `t ↦ 0`.
    pub fn eval_t_zero(&self, x: &RelElem) -> u64 {
        x.0[0]
    }

    fn check(&self, x: &RelElem) {
        assert_eq!(x.0.len(), self.t.d, "relative base element has wrong t-adic precision");
    }
}

fn one_vec(d: usize, zp: &Zpm) -> Vec<u64> {
    let mut v = vec![0u64; d];
    v[0] = zp.one();
    v
}

fn poly_mul_trunc(a: &[u64], b: &[u64], zp: &Zpm, d: usize) -> Vec<u64> {
    let mut out = vec![0u64; d];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(d - i) {
            out[i + j] = (out[i + j] + x * y) % zp.modulus();
        }
    }
    out
}

impl Ring for RelBase {
    type Elem = RelElem;

    fn zero(&self) -> RelElem {
        RelElem(vec![0; self.t.d])
    }
    fn one(&self) -> RelElem {
        RelElem(one_vec(self.t.d, &self.t.zp))
    }
    fn add(&self, a: &RelElem, b: &RelElem) -> RelElem {
        self.check(a);
        self.check(b);
        RelElem(a.0.iter().zip(&b.0).map(|(x, y)| self.t.zp.add(x, y)).collect())
    }
    fn neg(&self, a: &RelElem) -> RelElem {
        self.check(a);
        RelElem(a.0.iter().map(|x| self.t.zp.neg(x)).collect())
    }
    fn mul(&self, a: &RelElem, b: &RelElem) -> RelElem {
        self.check(a);
        self.check(b);
        RelElem(poly_mul_trunc(&a.0, &b.0, &self.t.zp, self.t.d))
    }
    fn is_zero(&self, a: &RelElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }
    fn is_unit(&self, a: &RelElem) -> bool {
        self.t.zp.is_unit(&a.0[0])
    }
    fn inv(&self, a: &RelElem) -> Result<RelElem> {
        self.check(a);
        let c0 = self.t.zp.inv(&a.0[0])?;
        // Solve a·b = 1 coefficient by coefficient.
        let d = self.t.d;
        let mut b = vec![0u64; d];
        b[0] = c0;
        for k in 1..d {
            let mut s = 0u64;
            for i in 1..=k {
                s = self.t.zp.add(&s, &self.t.zp.mul(&a.0[i], &b[k - i]));
            }
            b[k] = self.t.zp.mul(&self.t.zp.neg(&s), &c0);
        }
        Ok(RelElem(b))
    }
    fn from_int(&self, n: i64) -> RelElem {
        self.constant(self.t.zp.from_int(n))
    }
    fn frobenius(&self, a: &RelElem) -> RelElem {
        self.check(a);
        let zp = &self.t.zp;
        let mut out = vec![0u64; self.t.d];
        for (i, &c) in a.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &v) in out.iter_mut().zip(&self.t.phi_pows[i]) {
                *o = zp.add(o, &zp.mul(&c, &v));
            }
        }
        RelElem(out)
    }
    fn characteristic_prime(&self) -> u64 {
        self.p()
    }
    fn random<G: RandRng + ?Sized>(&self, rng: &mut G) -> RelElem {
        RelElem((0..self.t.d).map(|_| self.t.zp.random(rng)).collect())
    }
}

/// Apply the Frobenius lift of `base` to `x`.
pub fn frob_lift_apply(base: &RelBase, x: &RelElem) -> RelElem {
    base.frobenius(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn moduli_are_smallest_irreducibles() {
        assert_eq!(smallest_irreducible(2, 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(smallest_irreducible(2, 3).unwrap(), vec![1, 0, 1, 1]);
        assert_eq!(smallest_irreducible(3, 2).unwrap(), vec![1, 0, 1]);
        assert_eq!(smallest_irreducible(3, 1).unwrap(), vec![0, 1]);
        assert!(smallest_irreducible(4, 1).is_err());
    }

    #[test]
    fn f4_frobenius_examples() {
        let f = Gf::new(2, 2).unwrap();
        let g = f.basis(1);
        let g1 = f.add(&g, &f.one());
        // g^2 = g + 1
        assert_eq!(f.mul(&g, &g), g1);
        assert_eq!(ff_frobenius(&f, g), g1);
        assert_eq!(ff_frobenius_inverse(&f, g1), g);
        assert_eq!(ff_frobenius(&f, f.one()), f.one());
    }

    #[test]
    fn prime_field_frobenius_is_identity() {
        let f = Gf::prime(3).unwrap();
        for x in f.elements() {
            assert_eq!(ff_frobenius(&f, x), x);
            assert_eq!(ff_frobenius_inverse(&f, x), x);
        }
    }

    #[test]
    fn frobenius_is_automorphism_on_small_fields() {
        for (p, r) in [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 2)] {
            let f = Gf::new(p, r).unwrap();
            if f.order() > 64 {
                continue;
            }
            for a in f.elements() {
                let mut x = a;
                for _ in 0..r {
                    x = ff_frobenius(&f, x);
                }
                assert_eq!(x, a);
                assert_eq!(ff_frobenius_inverse(&f, ff_frobenius(&f, a)), a);
                for b in f.elements() {
                    assert_eq!(
                        f.frobenius(&f.add(&a, &b)),
                        f.add(&f.frobenius(&a), &f.frobenius(&b))
                    );
                    assert_eq!(
                        f.frobenius(&f.mul(&a, &b)),
                        f.mul(&f.frobenius(&a), &f.frobenius(&b))
                    );
                }
            }
        }
    }

    #[test]
    fn field_inverse_and_primitive() {
        let f = Gf::new(3, 2).unwrap();
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        }
        assert_eq!(f.inv(&f.zero()), Err(AlgError::NonUnit));
        let z = f.primitive();
        let mut seen = std::collections::HashSet::new();
        let mut x = f.one();
        for _ in 0..8 {
            seen.insert(x);
            x = f.mul(&x, &z);
        }
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let small = Gf::new(2, 2).unwrap();
        let big = Gf::new(2, 4).unwrap();
        let e = small.embedding_into(&big).unwrap();
        for a in small.elements() {
            for b in small.elements() {
                assert_eq!(e[small.add(&a, &b).0 as usize], big.add(&e[a.0 as usize], &e[b.0 as usize]));
                assert_eq!(e[small.mul(&a, &b).0 as usize], big.mul(&e[a.0 as usize], &e[b.0 as usize]));
            }
        }
        assert!(small.embedding_into(&Gf::new(2, 3).unwrap()).is_err());
    }

    #[test]
    fn zpm_arithmetic() {
        let z = Zpm::new(3, 2).unwrap();
        assert_eq!(z.inv(&2).unwrap(), 5);
        assert_eq!(z.inv(&3), Err(AlgError::NonUnit));
        assert_eq!(z.neg(&1), 8);
        assert_eq!(z.frobenius(&7), 7);
        assert!(Zpm::new(6, 2).is_err());
    }

    #[test]
    fn lift_examples() {
        let std3 = RelBase::new(3, 2, 9, FrobLiftSpec::standard()).unwrap();
        let t = std3.t_var();
        let mut t3 = vec![0u64; 9];
        t3[3] = 1;
        assert_eq!(frob_lift_apply(&std3, &t), RelElem(t3.clone()));
        let c = std3.constant(7);
        assert_eq!(frob_lift_apply(&std3, &c), c);

        let h1 = RelBase::new(3, 2, 9, FrobLiftSpec::new(vec![1])).unwrap();
        let mut expect = t3;
        expect[1] = 3;
        assert_eq!(frob_lift_apply(&h1, &h1.t_var()), RelElem(expect));
    }

    #[test]
    fn lift_rejects_high_degree_h() {
        assert!(RelBase::new(3, 2, 3, FrobLiftSpec::new(vec![0, 0, 1])).is_err());
        assert!(RelBase::new(3, 2, 3, FrobLiftSpec::new(vec![1, 1])).is_ok());
    }

    #[test]
    fn lift_is_a_ring_endomorphism_reducing_to_frobenius() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, m, d) in [(2, 3, 6), (3, 2, 9), (5, 2, 4), (3, 3, 5)] {
            for _ in 0..20 {
                let h: Vec<u64> = (0..d - 1).map(|_| rng.gen_range(0..p)).collect();
                let base = RelBase::new(p, m, d, FrobLiftSpec::new(h)).unwrap();
                let fp = RelBase::mod_p(p, d).unwrap();
                for _ in 0..10 {
                    let a = base.random(&mut rng);
                    let b = base.random(&mut rng);
                    assert_eq!(
                        base.frobenius(&base.mul(&a, &b)),
                        base.mul(&base.frobenius(&a), &base.frobenius(&b))
                    );
                    assert_eq!(
                        base.frobenius(&base.add(&a, &b)),
                        base.add(&base.frobenius(&a), &base.frobenius(&b))
                    );
                    let lhs = base.reduce_mod_p(&base.frobenius(&a));
                    let abar = base.reduce_mod_p(&a);
                    assert_eq!(lhs, fp.pow(&abar, p));
                }
            }
        }
    }

    #[test]
    fn distinct_lifts_agree_mod_p() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let h1: Vec<u64> = (0..3).map(|_| rng.gen_range(0..9)).collect();
            let h2: Vec<u64> = (0..3).map(|_| rng.gen_range(0..9)).collect();
            let b1 = RelBase::new(3, 2, 5, FrobLiftSpec::new(h1)).unwrap();
            let b2 = RelBase::new(3, 2, 5, FrobLiftSpec::new(h2)).unwrap();
            let x = b1.random(&mut rng);
            let gap = b1.sub(&b1.frobenius(&x), &b2.frobenius(&x));
            assert!(gap.0.iter().all(|c| c % 3 == 0));
        }
    }

    #[test]
    fn relbase_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b = RelBase::new(2, 3, 5, FrobLiftSpec::standard()).unwrap();
        for _ in 0..50 {
            let x = b.random_unit(&mut rng);
            assert_eq!(b.mul(&x, &b.inv(&x).unwrap()), b.one());
        }
        assert!(b.inv(&b.t_var()).is_err());
    }
}
