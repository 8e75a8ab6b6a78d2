//! Truncated power and Laurent series in `u`, matrices over them, and the two
//! Frobenii: `σ` (coefficients only) and `φ` (coefficients and `u ↦ u^p`).
//!
//! A series is an element of `A((u))` known modulo `u^prec`, where the
//! precision `prec` never exceeds the nominal order `N` of its ring. Products
//! and inverses track the precision they can certify; see [`SeriesRing::mul`].

use rand::Rng as RandRng;

use crate::coeffring::{PerfectRing, Ring};
use crate::error::{AlgError, Result};
use crate::matrix::Matrix;

/// A truncated Laurent series: coefficients of `u^val .. u^(prec-1)`.
///
/// Canonical form: `val <= 0`, and when `val < 0` the lowest stored
/// coefficient is nonzero.
#[derive(Clone, Debug)]
pub struct TruncSeries<E> {
    n: usize,
    val: i64,
    prec: i64,
    coeffs: Vec<E>,
}

pub type MatSeries<E> = Matrix<TruncSeries<E>>;

impl<E> TruncSeries<E> {
    /// Nominal truncation order `N` of the ring this series lives in.
    pub fn order(&self) -> usize {
        self.n
    }
    /// Lowest stored degree (`<= 0`).
    pub fn val_offset(&self) -> i64 {
        self.val
    }
    /// Absolute precision: the series is known modulo `u^prec`.
    pub fn prec(&self) -> i64 {
        self.prec
    }
    pub fn stored(&self) -> &[E] {
        &self.coeffs
    }
}

impl<E: PartialEq> PartialEq for TruncSeries<E> {
    /// Coefficientwise within the common window; `false` across orders.
    fn eq(&self, other: &Self) -> bool {
        if self.n != other.n {
            return false;
        }
        let w = self.prec.min(other.prec);
        let lo = self.val.min(other.val);
        if lo >= w {
            return true;
        }
        if self.val != other.val {
            return false;
        }
        let len = (w - self.val) as usize;
        self.coeffs[..len] == other.coeffs[..len]
    }
}

/// `A((u))` truncated at nominal order `N`, over the coefficient ring `A`.
#[derive(Clone, Debug)]
pub struct SeriesRing<R: Ring> {
    base: R,
    n: usize,
}

impl<R: Ring> SeriesRing<R> {
    pub fn new(base: R, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(AlgError::InvalidParameter("truncation order must be at least 1".into()));
        }
        Ok(SeriesRing { base, n })
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.n
    }

    fn cap(&self) -> i64 {
        self.n as i64
    }

    fn canonical(&self, mut val: i64, prec: i64, mut coeffs: Vec<R::Elem>) -> TruncSeries<R::Elem> {
        let prec = prec.min(self.cap());
        let want = (prec - val).max(0) as usize;
        coeffs.truncate(want);
        while coeffs.len() < want {
            coeffs.push(self.base.zero());
        }
        if val > 0 {
            let pad = if prec > 0 { val.min(prec) } else { 0 } as usize;
            let mut c = vec![self.base.zero(); pad];
            c.extend(coeffs);
            coeffs = c;
            val = if prec > 0 { 0 } else { prec.min(val) };
            coeffs.truncate((prec - val).max(0) as usize);
        }
        let mut lead = 0;
        while val < 0 && lead < coeffs.len() && self.base.is_zero(&coeffs[lead]) {
            lead += 1;
            val += 1;
        }
        if lead > 0 {
            coeffs.drain(..lead);
        }
        if val < 0 && coeffs.is_empty() {
            val = prec.min(0);
        }
        TruncSeries { n: self.n, val, prec, coeffs }
    }

    fn check(&self, f: &TruncSeries<R::Elem>) {
        assert_eq!(f.n, self.n, "series truncation orders differ: {} vs {}", f.n, self.n);
    }

    /// Power series from coefficients of `u^0, u^1, ...`, exact mod `u^N`.
    pub fn from_coeffs(&self, c: &[R::Elem]) -> TruncSeries<R::Elem> {
        self.canonical(0, self.cap(), c.to_vec())
    }

    /// Laurent series `Σ c_i u^(val+i)`, exact mod `u^N`.
    pub fn from_laurent(&self, val: i64, c: &[R::Elem]) -> TruncSeries<R::Elem> {
        self.canonical(val, self.cap(), c.to_vec())
    }

    /// Build with an explicit absolute precision.
    pub fn with_prec(&self, val: i64, prec: i64, c: &[R::Elem]) -> TruncSeries<R::Elem> {
        self.canonical(val, prec, c.to_vec())
    }

    pub fn constant(&self, c: R::Elem) -> TruncSeries<R::Elem> {
        self.from_coeffs(&[c])
    }

    /// `c·u^k`.
    pub fn monomial(&self, c: R::Elem, k: i64) -> TruncSeries<R::Elem> {
        self.canonical(k, self.cap(), vec![c])
    }

    pub fn u(&self) -> TruncSeries<R::Elem> {
        self.monomial(self.base.one(), 1)
    }

    /// Coefficient of `u^k`, or `None` beyond the known precision.
    pub fn coeff(&self, f: &TruncSeries<R::Elem>, k: i64) -> Option<R::Elem> {
        if k >= f.prec {
            None
        } else if k < f.val {
            Some(self.base.zero())
        } else {
            Some(f.coeffs[(k - f.val) as usize].clone())
        }
    }

    /// Lowest degree with a nonzero known coefficient.
    pub fn valuation(&self, f: &TruncSeries<R::Elem>) -> Option<i64> {
        f.coeffs
            .iter()
            .position(|c| !self.base.is_zero(c))
            .map(|i| f.val + i as i64)
    }

    fn val_or_prec(&self, f: &TruncSeries<R::Elem>) -> i64 {
        self.valuation(f).unwrap_or(f.prec)
    }

    /// Exact multiplication by `u^k`.
    pub fn shift(&self, f: &TruncSeries<R::Elem>, k: i64) -> TruncSeries<R::Elem> {
        self.check(f);
        self.canonical(f.val + k, f.prec + k, f.coeffs.clone())
    }

    /// Forget coefficients at degree `>= prec`.
    pub fn truncate(&self, f: &TruncSeries<R::Elem>, prec: i64) -> TruncSeries<R::Elem> {
        self.canonical(f.val, f.prec.min(prec), f.coeffs.clone())
    }

    /// Declare unknown coefficients zero, raising the precision to `N`.
    pub fn pad_to_nominal(&self, f: &TruncSeries<R::Elem>) -> TruncSeries<R::Elem> {
        self.canonical(f.val, self.cap(), f.coeffs.clone())
    }

    pub fn constant_term(&self, f: &TruncSeries<R::Elem>) -> Result<R::Elem> {
        if let Some(v) = self.valuation(f) {
            if v < 0 {
                return Err(AlgError::Pole);
            }
        }
        self.coeff(f, 0)
            .ok_or_else(|| AlgError::WindowExhausted("constant term beyond precision".into()))
    }

    /// Equality that refuses to compare series of different orders.
    pub fn try_eq(&self, f: &TruncSeries<R::Elem>, g: &TruncSeries<R::Elem>) -> Result<bool> {
        if f.n != g.n {
            return Err(AlgError::PrecisionMismatch(format!("truncation orders {} and {}", f.n, g.n)));
        }
        Ok(f == g)
    }

    /// `σ(f) = Σ F(a_i) u^i` with `F` the coefficient Frobenius.
    pub fn sigma(&self, f: &TruncSeries<R::Elem>) -> TruncSeries<R::Elem> {
        self.check(f);
        let c: Vec<_> = f.coeffs.iter().map(|a| self.base.frobenius(a)).collect();
        self.canonical(f.val, f.prec, c)
    }

    fn spread(&self, f: &TruncSeries<R::Elem>, frob: bool) -> (TruncSeries<R::Elem>, bool) {
        self.check(f);
        let p = self.base.characteristic_prime() as i64;
        let val = p * f.val;
        let prec = (p * f.prec).min(self.cap());
        let mut lost = false;
        let len = (prec - val).max(0) as usize;
        let mut out = vec![self.base.zero(); len];
        for (i, a) in f.coeffs.iter().enumerate() {
            let deg = p * (f.val + i as i64);
            if deg >= prec {
                if deg >= self.cap() && !self.base.is_zero(a) {
                    lost = true;
                }
                continue;
            }
            out[(deg - val) as usize] = if frob { self.base.frobenius(a) } else { a.clone() };
        }
        (self.canonical(val, prec, out), lost)
    }

    /// `φ(f) = Σ F(a_i) u^(p·i)`; the flag reports nonzero terms pushed past `u^N`.
    pub fn phi(&self, f: &TruncSeries<R::Elem>) -> (TruncSeries<R::Elem>, bool) {
        self.spread(f, true)
    }

    /// `u ↦ u^p` with coefficients untouched; the flag is as for [`Self::phi`].
    pub fn subst_u_to_up(&self, f: &TruncSeries<R::Elem>) -> (TruncSeries<R::Elem>, bool) {
        self.spread(f, false)
    }

    pub fn random_power_series<G: RandRng + ?Sized>(&self, rng: &mut G, degree_bound: usize) -> TruncSeries<R::Elem> {
        let c: Vec<_> = (0..degree_bound.min(self.n)).map(|_| self.base.random(rng)).collect();
        self.from_coeffs(&c)
    }
}

impl<R: PerfectRing> SeriesRing<R> {
    /// Coefficientwise inverse Frobenius.
    pub fn sigma_inverse(&self, f: &TruncSeries<R::Elem>) -> TruncSeries<R::Elem> {
        self.check(f);
        let c: Vec<_> = f.coeffs.iter().map(|a| self.base.frobenius_inverse(a)).collect();
        self.canonical(f.val, f.prec, c)
    }
}

impl<R: Ring> Ring for SeriesRing<R> {
    type Elem = TruncSeries<R::Elem>;

    fn zero(&self) -> Self::Elem {
        self.from_coeffs(&[])
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn add(&self, f: &Self::Elem, g: &Self::Elem) -> Self::Elem {
        self.check(f);
        self.check(g);
        let val = f.val.min(g.val);
        let prec = f.prec.min(g.prec);
        let len = (prec - val).max(0) as usize;
        let z = self.base.zero();
        let mut out = Vec::with_capacity(len);
        for k in val..prec {
            let a = if k < f.val { &z } else { &f.coeffs[(k - f.val) as usize] };
            let b = if k < g.val { &z } else { &g.coeffs[(k - g.val) as usize] };
            out.push(self.base.add(a, b));
        }
        self.canonical(val, prec, out)
    }
    fn neg(&self, f: &Self::Elem) -> Self::Elem {
        self.check(f);
        let c: Vec<_> = f.coeffs.iter().map(|a| self.base.neg(a)).collect();
        self.canonical(f.val, f.prec, c)
    }
    /// Precision of `f·g` is `min(prec f + v(g), prec g + v(f), N)`.
    fn mul(&self, f: &Self::Elem, g: &Self::Elem) -> Self::Elem {
        self.check(f);
        self.check(g);
        let vf = self.val_or_prec(f);
        let vg = self.val_or_prec(g);
        let prec = (f.prec + vg).min(g.prec + vf).min(self.cap());
        let low = vf + vg;
        let val = low.min(0).min(prec);
        let len = (prec - val).max(0) as usize;
        let mut out = vec![self.base.zero(); len];
        for k in low.max(val)..prec {
            let mut acc = self.base.zero();
            for i in vf..=(k - vg) {
                let a = &f.coeffs[(i - f.val) as usize];
                if self.base.is_zero(a) {
                    continue;
                }
                let b = &g.coeffs[(k - i - g.val) as usize];
                acc = self.base.add(&acc, &self.base.mul(a, b));
            }
            out[(k - val) as usize] = acc;
        }
        self.canonical(val, prec, out)
    }
    fn is_zero(&self, f: &Self::Elem) -> bool {
        f.coeffs.iter().all(|c| self.base.is_zero(c))
    }
    fn is_exact_zero(&self, _f: &Self::Elem) -> bool {
        false
    }
    /// Unit of the power series ring: valuation 0 with a unit constant term.
    fn is_unit(&self, f: &Self::Elem) -> bool {
        matches!(self.valuation(f), Some(0)) && self.base.is_unit(&f.coeffs[(0 - f.val) as usize])
    }
    /// Inverse in `A((u))` when the leading coefficient is a unit; a series
    /// of valuation `v` known mod `u^P` has an inverse known mod `u^(P-2v)`.
    fn inv(&self, f: &Self::Elem) -> Result<Self::Elem> {
        self.check(f);
        let v = self.valuation(f).ok_or(AlgError::NonUnit)?;
        let w: Vec<R::Elem> = f.coeffs[(v - f.val) as usize..].to_vec();
        let c0 = self.base.inv(&w[0])?;
        let prec = (f.prec - 2 * v).min(self.cap());
        let need = (prec + v).max(0) as usize;
        let need = need.min(w.len());
        let mut b = Vec::with_capacity(need);
        if need > 0 {
            b.push(c0.clone());
        }
        for k in 1..need {
            let mut s = self.base.zero();
            for i in 1..=k {
                s = self.base.add(&s, &self.base.mul(&w[i], &b[k - i]));
            }
            b.push(self.base.mul(&self.base.neg(&s), &c0));
        }
        Ok(self.canonical(-v, prec, b))
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_int(n))
    }
    /// The coefficientwise Frobenius `σ`.
    fn frobenius(&self, f: &Self::Elem) -> Self::Elem {
        self.sigma(f)
    }
    fn characteristic_prime(&self) -> u64 {
        self.base.characteristic_prime()
    }
    fn random<G: RandRng + ?Sized>(&self, rng: &mut G) -> Self::Elem {
        self.random_power_series(rng, self.n)
    }
    fn random_unit<G: RandRng + ?Sized>(&self, rng: &mut G) -> Self::Elem {
        let mut c: Vec<_> = (0..self.n).map(|_| self.base.random(rng)).collect();
        c[0] = self.base.random_unit(rng);
        self.from_coeffs(&c)
    }
    fn pivot_rank(&self, f: &Self::Elem) -> Option<i64> {
        let v = self.valuation(f)?;
        if self.base.is_unit(&f.coeffs[(v - f.val) as usize]) {
            Some(v)
        } else {
            None
        }
    }
}

/// `φ` on series (free-function form).
pub fn phi_series<R: Ring>(ring: &SeriesRing<R>, f: &TruncSeries<R::Elem>) -> (TruncSeries<R::Elem>, bool) {
    ring.phi(f)
}

/// `σ` on series (free-function form).
pub fn sigma_series<R: Ring>(ring: &SeriesRing<R>, f: &TruncSeries<R::Elem>) -> TruncSeries<R::Elem> {
    ring.sigma(f)
}

/// `u ↦ u^p` on series (free-function form).
pub fn subst_u_to_up<R: Ring>(ring: &SeriesRing<R>, f: &TruncSeries<R::Elem>) -> (TruncSeries<R::Elem>, bool) {
    ring.subst_u_to_up(f)
}

// ---------------------------------------------------------------------------
// Matrices over series

pub fn mat_from_constant<R: Ring>(ring: &SeriesRing<R>, m: &Matrix<R::Elem>) -> MatSeries<R::Elem> {
    m.map(|c| ring.constant(c.clone()))
}

/// Reduction mod `u`; fails on poles.
pub fn mat_constant_term<R: Ring>(ring: &SeriesRing<R>, m: &MatSeries<R::Elem>) -> Result<Matrix<R::Elem>> {
    let data = m.entries().iter().map(|f| ring.constant_term(f)).collect::<Result<Vec<_>>>()?;
    Matrix::from_vec(m.rows(), m.cols(), data)
}

/// Smallest absolute precision among the entries.
pub fn mat_prec<E: Clone>(m: &MatSeries<E>) -> i64 {
    m.entries().iter().map(|f| f.prec()).min().unwrap_or(i64::MAX)
}

/// Smallest valuation among the entries (`None` for the zero matrix).
pub fn mat_valuation<R: Ring>(ring: &SeriesRing<R>, m: &MatSeries<R::Elem>) -> Option<i64> {
    m.entries().iter().filter_map(|f| ring.valuation(f)).min()
}

pub fn mat_is_integral<R: Ring>(ring: &SeriesRing<R>, m: &MatSeries<R::Elem>) -> bool {
    mat_valuation(ring, m).is_none_or(|v| v >= 0)
}

/// `M ≡ I mod u`; a pole is an error.
pub fn mat_is_in_k1<R: Ring>(ring: &SeriesRing<R>, m: &MatSeries<R::Elem>) -> Result<bool> {
    if !mat_is_integral(ring, m) {
        return Err(AlgError::Pole);
    }
    Ok(mat_constant_term(ring, m)?.is_identity(ring.base()))
}

pub fn mat_phi<R: Ring>(ring: &SeriesRing<R>, m: &MatSeries<R::Elem>) -> (MatSeries<R::Elem>, bool) {
    let mut lost = false;
    let out = m.map(|f| {
        let (g, l) = ring.phi(f);
        lost |= l;
        g
    });
    (out, lost)
}

pub fn mat_sigma<R: Ring>(ring: &SeriesRing<R>, m: &MatSeries<R::Elem>) -> MatSeries<R::Elem> {
    m.map(|f| ring.sigma(f))
}

pub fn mat_sigma_inverse<R: PerfectRing>(ring: &SeriesRing<R>, m: &MatSeries<R::Elem>) -> MatSeries<R::Elem> {
    m.map(|f| ring.sigma_inverse(f))
}

pub fn mat_subst_u_to_up<R: Ring>(ring: &SeriesRing<R>, m: &MatSeries<R::Elem>) -> (MatSeries<R::Elem>, bool) {
    let mut lost = false;
    let out = m.map(|f| {
        let (g, l) = ring.subst_u_to_up(f);
        lost |= l;
        g
    });
    (out, lost)
}

pub fn mat_pad_to_nominal<R: Ring>(ring: &SeriesRing<R>, m: &MatSeries<R::Elem>) -> MatSeries<R::Elem> {
    m.map(|f| ring.pad_to_nominal(f))
}

/// `D·M·D^{-1}` for `D = diag(u^(s·a_i))`: entry `(i,j)` is multiplied by
/// `u^(s·(a_i - a_j))`. Exact.
pub fn mat_conj_by_cochar<R: Ring>(
    ring: &SeriesRing<R>,
    m: &MatSeries<R::Elem>,
    weights: &[i64],
    s: i64,
) -> MatSeries<R::Elem> {
    Matrix::from_fn(m.rows(), m.cols(), |i, j| ring.shift(m.get(i, j), s * (weights[i] - weights[j])))
}

/// Inverse of a matrix in `GL_n(A[u]/u^N)`: invert the constant term, then
/// Newton iteration `X ← X(2I − MX)`.
pub fn mat_invert<R: Ring>(ring: &SeriesRing<R>, m: &MatSeries<R::Elem>) -> Result<MatSeries<R::Elem>> {
    if !m.is_square() {
        return Err(AlgError::SizeMismatch { expected: m.rows(), got: m.cols() });
    }
    if !mat_is_integral(ring, m) {
        return Err(AlgError::Pole);
    }
    let c = mat_constant_term(ring, m)?;
    let c_inv = c.inverse(ring.base()).map_err(|_| AlgError::NonUnitConstantTerm)?;
    let n = m.rows();
    let two = Matrix::identity(ring, n).scale(ring, &ring.from_int(2));
    let mut x = mat_from_constant(ring, &c_inv);
    let mut known = 1usize;
    while known < ring.order() {
        let mx = m.mul(ring, &x);
        x = x.mul(ring, &two.sub(ring, &mx));
        known *= 2;
    }
    Ok(x)
}

/// Inverse in `GL_n(A((u)))` by elimination on minimal-valuation pivots,
/// falling back to the adjugate when no pivot has a unit leading coefficient.
pub fn mat_laurent_inverse<R: Ring>(ring: &SeriesRing<R>, m: &MatSeries<R::Elem>) -> Result<MatSeries<R::Elem>> {
    match m.inverse(ring) {
        Ok(x) => Ok(x),
        Err(AlgError::NonUnit) => mat_adjugate_inverse(ring, m),
        Err(e) => Err(e),
    }
}

/// `adj(M)·det(M)^{-1}`.
pub fn mat_adjugate_inverse<R: Ring>(ring: &SeriesRing<R>, m: &MatSeries<R::Elem>) -> Result<MatSeries<R::Elem>> {
    let d = m.det(ring);
    let dinv = ring.inv(&d)?;
    Ok(m.adjugate(ring).scale(ring, &dinv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::{Gf, Zpm};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f3(n: usize) -> SeriesRing<Gf> {
        SeriesRing::new(Gf::prime(3).unwrap(), n).unwrap()
    }

    #[test]
    fn phi_of_u_is_u_cubed() {
        let s = f3(10);
        let (g, lost) = s.phi(&s.u());
        assert!(!lost);
        assert_eq!(g, s.monomial(s.base().one(), 3));
    }

    #[test]
    fn phi_of_constant_and_binomial() {
        let f4 = Gf::new(2, 2).unwrap();
        let s = SeriesRing::new(f4.clone(), 6).unwrap();
        let g = f4.basis(1);
        let (img, _) = s.phi(&s.constant(g));
        assert_eq!(img, s.constant(f4.pow(&g, 2)));

        let s2 = SeriesRing::new(Gf::prime(2).unwrap(), 4).unwrap();
        let one = s2.base().one();
        let f = s2.from_coeffs(&[one, one]);
        assert_eq!(s2.phi(&f).0, s2.from_coeffs(&[one, s2.base().zero(), one]));
    }

    #[test]
    fn sigma_examples() {
        let f4 = Gf::new(2, 2).unwrap();
        let s = SeriesRing::new(f4.clone(), 5).unwrap();
        let g = f4.basis(1);
        let g1 = f4.add(&g, &f4.one());
        assert_eq!(s.sigma(&s.u()), s.u());
        assert_eq!(s.sigma(&s.monomial(g, 1)), s.monomial(g1, 1));
        let t = f3(5);
        let f = t.from_coeffs(&[t.base().one(), t.base().from_int(2)]);
        assert_eq!(t.sigma(&f), f);
    }

    #[test]
    fn subst_examples() {
        let s = SeriesRing::new(Gf::prime(2).unwrap(), 8).unwrap();
        let one = s.base().one();
        let z = s.base().zero();
        let f = s.from_coeffs(&[one, one, one]);
        assert_eq!(s.subst_u_to_up(&f).0, s.from_coeffs(&[one, z, one, z, one]));
        assert_eq!(s.subst_u_to_up(&s.u()).0, s.monomial(one, 2));
        assert_eq!(s.subst_u_to_up(&s.constant(one)).0, s.constant(one));
    }

    #[test]
    fn phi_reports_loss() {
        let s = f3(4);
        let one = s.base().one();
        let (_, lost) = s.phi(&s.monomial(one, 2));
        assert!(lost);
        let (_, lost) = s.phi(&s.monomial(one, 1));
        assert!(!lost);
    }

    #[test]
    fn laurent_precision_tracking() {
        let s = f3(10);
        let one = s.base().one();
        let pole = s.monomial(one, -3);
        let f = s.random(&mut ChaCha8Rng::seed_from_u64(1));
        let g = s.mul(&pole, &f);
        assert_eq!(g.prec(), 7);
        let back = s.mul(&s.monomial(one, 3), &g);
        assert_eq!(back.prec(), 7);
        assert_eq!(s.truncate(&back, 7), s.truncate(&f, 7));
        let inv = s.inv(&pole).unwrap();
        assert_eq!(inv, s.monomial(one, 3));
    }

    #[test]
    fn series_inverse_roundtrip() {
        let s = SeriesRing::new(Zpm::new(3, 2).unwrap(), 12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let f = s.random_unit(&mut rng);
            let g = s.inv(&f).unwrap();
            assert!(s.mul(&f, &g) == s.one());
        }
        assert_eq!(s.inv(&s.zero()), Err(AlgError::NonUnit));
        assert_eq!(s.inv(&s.constant(3)), Err(AlgError::NonUnit));
    }

    #[test]
    fn equality_across_orders() {
        let a = f3(4);
        let b = f3(5);
        assert!(a.u() != b.u());
        assert!(a.try_eq(&a.u(), &b.u()).is_err());
        assert!(a.try_eq(&a.u(), &a.u()).unwrap());
    }

    #[test]
    fn k1_membership_examples() {
        let s = f3(8);
        let (one, zero) = (s.one(), s.zero());
        let id = Matrix::identity(&s, 2);
        assert!(mat_is_in_k1(&s, &id).unwrap());
        let u3 = s.monomial(s.base().one(), 3);
        let m = Matrix::from_rows(vec![vec![one.clone(), u3], vec![zero.clone(), one.clone()]]).unwrap();
        assert!(mat_is_in_k1(&s, &m).unwrap());
        let w = Matrix::from_rows(vec![vec![zero.clone(), one.clone()], vec![one.clone(), zero.clone()]]).unwrap();
        assert!(!mat_is_in_k1(&s, &w).unwrap());
        let pole = Matrix::diag(&s, &[s.monomial(s.base().one(), -1), one]);
        assert_eq!(mat_is_in_k1(&s, &pole), Err(AlgError::Pole));
    }

    #[test]
    fn invert_examples() {
        let s = f3(8);
        let (one, zero) = (s.one(), s.zero());
        let id = Matrix::identity(&s, 2);
        assert_eq!(mat_invert(&s, &id).unwrap(), id);
        let m = Matrix::from_rows(vec![vec![one.clone(), s.u()], vec![zero.clone(), one.clone()]]).unwrap();
        let expect = Matrix::from_rows(vec![vec![one.clone(), s.neg(&s.u())], vec![zero, one.clone()]]).unwrap();
        assert_eq!(mat_invert(&s, &m).unwrap(), expect);
        let d = Matrix::diag(&s, &[s.monomial(s.base().one(), 3), one]);
        assert_eq!(mat_invert(&s, &d), Err(AlgError::NonUnitConstantTerm));
    }

    #[test]
    fn laurent_inverse_of_diagonal() {
        let s = f3(8);
        let d = Matrix::diag(&s, &[s.monomial(s.base().one(), 3), s.one()]);
        let inv = mat_laurent_inverse(&s, &d).unwrap();
        assert_eq!(inv, Matrix::diag(&s, &[s.monomial(s.base().one(), -3), s.one()]));
        let adj = mat_adjugate_inverse(&s, &d).unwrap();
        assert_eq!(adj, inv);
    }
}
