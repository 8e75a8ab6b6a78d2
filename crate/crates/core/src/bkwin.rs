//! Windows over the truncated frame ring `𝔖 = R[u]/(u^N)` with `E = u + p`.
//!
//! A window is stored through its normal decomposition `M = N ⊕ L` of ranks
//! `(r1, r2)` and an invertible matrix `Γ` over the base. Its Frobenius is
//! `Φ = Γ·diag(φ(E)·I_{r1}, I_{r2})`, so `Φ ≡ Γ·diag(p, 1) mod u` and
//! `Φ ≡ Γ̄·μ(u) mod p`. Semilinear maps are kept as matrices in the fixed
//! basis; the Frobenius of `𝔖` is applied to inputs explicitly.

use serde::{Deserialize, Serialize};

use crate::coeffring::{FfElem, Gf, RelBase, Ring, Zpm};
use crate::error::{AlgError, Result};
use crate::grp::{frobenius_twist, levi_component, membership, mu_matrix, Cochar, GroupSpec};
use crate::loopgrp::{coset_equal_mod_k1, kdiamond_act, omega, refactor_gl, CosetCmp, CosetElem};
use crate::matrix::Matrix;
use crate::series::{
    mat_adjugate_inverse, mat_conj_by_cochar, mat_constant_term, mat_from_constant, mat_is_in_k1,
    mat_is_integral, mat_laurent_inverse, mat_prec, MatSeries, SeriesRing, TruncSeries,
};
use crate::zip::{zeta_class, OrbitTable, ZetaLabel};

/// A base ring with a reduction map to characteristic `p`.
pub trait Residue: Ring {
    type Res: Ring + PartialEq;
    fn residue_ring(&self) -> Result<Self::Res>;
    fn residue(&self, res: &Self::Res, x: &Self::Elem) -> <Self::Res as Ring>::Elem;
}

impl Residue for Zpm {
    type Res = Gf;
    fn residue_ring(&self) -> Result<Gf> {
        Gf::prime(self.p())
    }
    fn residue(&self, res: &Gf, x: &u64) -> FfElem {
        res.from_coords(&[x % self.p()])
    }
}

impl Residue for RelBase {
    type Res = RelBase;
    fn residue_ring(&self) -> Result<RelBase> {
        RelBase::mod_p(self.p(), self.t_order())
    }
    fn residue(&self, _res: &RelBase, x: &crate::coeffring::RelElem) -> crate::coeffring::RelElem {
        self.reduce_mod_p(x)
    }
}

/// Map the coefficients of a series into another series ring of the same order.
pub fn map_series<A: Ring, B: Ring>(
    target: &SeriesRing<B>,
    f: &TruncSeries<A::Elem>,
    mut g: impl FnMut(&A::Elem) -> B::Elem,
) -> TruncSeries<B::Elem> {
    let c: Vec<_> = f.stored().iter().map(&mut g).collect();
    target.with_prec(f.val_offset(), f.prec(), &c)
}

/// Ranks `(r1, r2)` of the weight-1 and weight-0 blocks of a 0/1 cocharacter.
pub fn window_ranks(chi: &Cochar) -> Result<(usize, usize)> {
    let w = chi.weights();
    if w.iter().any(|&a| a != 0 && a != 1) || w.windows(2).any(|v| v[0] < v[1]) {
        return Err(AlgError::InvalidParameter(format!("weights {w:?} are not descending 0/1")));
    }
    let r1 = w.iter().filter(|&&a| a == 1).count();
    Ok((r1, w.len() - r1))
}

fn weights_for(r1: usize, r2: usize) -> Vec<i64> {
    let mut w = vec![1; r1];
    w.extend(std::iter::repeat_n(0, r2));
    w
}

/// `𝔖 = R[u]/(u^N)` with `φ` extending the Frobenius of `R` by `u ↦ u^p`.
#[derive(Clone, Debug)]
pub struct FrameRing<R: Ring> {
    series: SeriesRing<R>,
}

impl<R: Ring> FrameRing<R> {
    pub fn new(base: R, n: usize) -> Result<Self> {
        let p = base.characteristic_prime() as usize;
        if n <= p {
            return Err(AlgError::WindowTooSmall { needed: p, have: n });
        }
        Ok(FrameRing { series: SeriesRing::new(base, n)? })
    }

    pub fn series(&self) -> &SeriesRing<R> {
        &self.series
    }

    pub fn base(&self) -> &R {
        self.series.base()
    }

    pub fn p(&self) -> u64 {
        self.base().characteristic_prime()
    }

    /// `E = u + p`.
    pub fn e(&self) -> TruncSeries<R::Elem> {
        let s = &self.series;
        s.add(&s.u(), &s.from_int(self.p() as i64))
    }

    /// `ϖ = φ(E) = u^p + p`.
    pub fn varpi(&self) -> TruncSeries<R::Elem> {
        self.phi(&self.e())
    }

    pub fn phi(&self, f: &TruncSeries<R::Elem>) -> TruncSeries<R::Elem> {
        self.series.phi(f).0
    }

    /// `φ` applied entrywise.
    pub fn phi_matrix(&self, m: &MatSeries<R::Elem>) -> MatSeries<R::Elem> {
        m.map(|f| self.phi(f))
    }

    fn block_diag(&self, r1: usize, r2: usize, top: &TruncSeries<R::Elem>) -> MatSeries<R::Elem> {
        let s = &self.series;
        let d: Vec<_> = (0..r1 + r2).map(|i| if i < r1 { top.clone() } else { s.one() }).collect();
        Matrix::diag(s, &d)
    }
}

/// A window given by a normal decomposition and the matrix `Γ`.
#[derive(Clone, Debug)]
pub struct WindowData<R: Ring> {
    pub r1: usize,
    pub r2: usize,
    pub gamma: Matrix<R::Elem>,
    pub frame: FrameRing<R>,
    /// `Φ = Γ·diag(ϖ·I_{r1}, I_{r2})`.
    pub phi: MatSeries<R::Elem>,
}

impl<R: Ring> WindowData<R> {
    pub fn rank(&self) -> usize {
        self.r1 + self.r2
    }

    /// `φ_{M,1} = ϖ^{-1}·φ_M` on the weight-1 part: the first `r1` columns of `Γ`.
    pub fn divided_frobenius_on_n(&self) -> MatSeries<R::Elem> {
        let g = mat_from_constant(self.frame.series(), &self.gamma);
        g.submatrix(0..self.rank(), 0..self.r1)
    }

    /// `φ_M(v) = Φ·φ(v)` for a column vector `v`.
    pub fn apply_frobenius(&self, v: &MatSeries<R::Elem>) -> MatSeries<R::Elem> {
        self.phi.mul(self.frame.series(), &self.frame.phi_matrix(v))
    }

    /// `Γ·diag(p·I_{r1}, I_{r2})` assembled over the base.
    pub fn f_lin(&self) -> Matrix<R::Elem> {
        let b = self.frame.base();
        let p = b.from_int(self.frame.p() as i64);
        Matrix::from_fn(self.rank(), self.rank(), |i, j| {
            let g = self.gamma.get(i, j);
            if j < self.r1 {
                b.mul(g, &p)
            } else {
                g.clone()
            }
        })
    }
}

/// Build the adapted window of `Γ` with normal decomposition ranks `(r1, r2)`.
pub fn build_adapted<R: Ring>(frame: &FrameRing<R>, gamma: &Matrix<R::Elem>, r1: usize, r2: usize) -> Result<WindowData<R>> {
    let n = r1 + r2;
    if gamma.rows() != n || gamma.cols() != n {
        return Err(AlgError::SizeMismatch { expected: n, got: gamma.rows() });
    }
    let b = frame.base();
    if !b.is_unit(&gamma.det(b)) {
        return Err(AlgError::NonInvertibleGamma);
    }
    let s = frame.series();
    let phi = mat_from_constant(s, gamma).mul(s, &frame.block_diag(r1, r2, &frame.varpi()));
    Ok(WindowData { r1, r2, gamma: gamma.clone(), frame: frame.clone(), phi })
}

/// `Φ mod u`.
pub fn reduce_mod_u<R: Ring>(w: &WindowData<R>) -> Result<Matrix<R::Elem>> {
    mat_constant_term(w.frame.series(), &w.phi)
}

/// Recover `ᾱ` from `Φ₀ = ᾱ·μ(u)` by clearing `u^p` from the weight-1 columns.
pub fn split_mu<S: Ring>(ring: &SeriesRing<S>, phi0: &MatSeries<S::Elem>, r1: usize) -> Result<Matrix<S::Elem>> {
    let p = ring.base().characteristic_prime() as i64;
    let n = phi0.rows();
    let mut alpha = Matrix::zeros(ring.base(), n, n);
    for i in 0..n {
        for j in 0..n {
            let f = phi0.get(i, j);
            let deg = if j < r1 { p } else { 0 };
            if f.prec() <= deg {
                return Err(AlgError::WindowExhausted(format!("entry ({i},{j}) known only below u^{}", f.prec())));
            }
            for k in f.val_offset()..f.prec() {
                let c = ring.coeff(f, k).expect("within precision");
                if k != deg && !ring.base().is_zero(&c) {
                    return Err(AlgError::FactorizationMismatch(format!(
                        "entry ({i},{j}) has a u^{k} term outside the cocharacter"
                    )));
                }
            }
            alpha.set(i, j, ring.coeff(f, deg).expect("within precision"));
        }
    }
    Ok(alpha)
}

/// The mod-`p` reduction `Φ₀` of a window with its factorization.
#[derive(Clone, Debug)]
pub struct ModPReduction<S: Ring> {
    pub ring: SeriesRing<S>,
    pub phi0: MatSeries<S::Elem>,
    pub alpha_bar: Matrix<S::Elem>,
    pub mu: MatSeries<S::Elem>,
}

/// `Φ₀ = Φ mod p`, checked to factor exactly as `(Γ mod p)·μ(u)`.
pub fn reduce_mod_p<R: Residue>(w: &WindowData<R>) -> Result<ModPReduction<R::Res>> {
    let b = w.frame.base();
    let res = b.residue_ring()?;
    let ring = SeriesRing::new(res.clone(), w.frame.series().order())?;
    let phi0 = w.phi.map(|f| map_series::<R, R::Res>(&ring, f, |x| b.residue(&res, x)));
    let alpha_bar = split_mu(&ring, &phi0, w.r1)?;
    let gamma_bar = w.gamma.map(|x| b.residue(&res, x));
    if !alpha_bar.ring_eq(&res, &gamma_bar) {
        return Err(AlgError::FactorizationMismatch("recovered factor differs from Gamma mod p".into()));
    }
    let chi = Cochar::new(weights_for(w.r1, w.r2))?;
    let mu = mu_matrix(&chi, w.frame.p(), &ring)?;
    if !mat_from_constant(&ring, &alpha_bar).mul(&ring, &mu).ring_eq(&ring, &phi0) {
        return Err(AlgError::FactorizationMismatch("alpha·mu(u) does not reassemble".into()));
    }
    Ok(ModPReduction { ring, phi0, alpha_bar, mu })
}

/// `η` with `Φ₀(w1) = Φ₀(w2)·η`, computed two ways.
#[derive(Clone, Debug)]
pub struct EtaComparison<S: Ring> {
    pub ring: SeriesRing<S>,
    /// `Φ₀(w2)^{-1}·Φ₀(w1)` via the adjugate in the Laurent window.
    pub eta: MatSeries<S::Elem>,
    /// `μ^{-1}·ᾱ₂^{-1}ᾱ₁·μ` from the factorizations.
    pub eta_factored: MatSeries<S::Elem>,
    pub unique: bool,
    pub congruent_to_identity: bool,
}

/// Compare the mod-`p` Frobenii of two windows with the same ranks.
pub fn eta_compare<R: Residue>(w1: &WindowData<R>, w2: &WindowData<R>) -> Result<EtaComparison<R::Res>> {
    if (w1.r1, w1.r2) != (w2.r1, w2.r2) {
        return Err(AlgError::Hypothesis("normal decompositions have different ranks".into()));
    }
    if w1.frame.series().order() != w2.frame.series().order() {
        return Err(AlgError::PrecisionMismatch("frames have different u-windows".into()));
    }
    let a = reduce_mod_p(w1)?;
    let b = reduce_mod_p(w2)?;
    if a.ring.base() != b.ring.base() {
        return Err(AlgError::Hypothesis("windows live over different residue rings".into()));
    }
    let ring = a.ring;
    let eta = mat_adjugate_inverse(&ring, &b.phi0)?.mul(&ring, &a.phi0);
    let p = w1.frame.p() as i64;
    if !mat_is_integral(&ring, &eta) {
        return Err(AlgError::NonIntegral);
    }
    if mat_prec(&eta) <= p {
        return Err(AlgError::WindowExhausted(format!("eta known only mod u^{}", mat_prec(&eta))));
    }
    let res = ring.base();
    let inner = b.alpha_bar.inverse(res)?.mul(res, &a.alpha_bar);
    let eta_factored = mat_conj_by_cochar(&ring, &mat_from_constant(&ring, &inner), &weights_for(w1.r1, w1.r2), -p);
    let unique = eta.ring_eq(&ring, &eta_factored) && b.phi0.mul(&ring, &eta).ring_eq(&ring, &a.phi0);
    let congruent_to_identity = mat_is_in_k1(&ring, &eta)?;
    Ok(EtaComparison { ring, eta, eta_factored, unique, congruent_to_identity })
}

/// Whether `η = [[I + u(…), 0], [u^p(…), I + u(…)]]` in `(r1, r2)` blocks.
pub fn eta_block_shape<S: Ring>(ring: &SeriesRing<S>, eta: &MatSeries<S::Elem>, r1: usize, r2: usize) -> bool {
    let n = r1 + r2;
    if eta.rows() != n || eta.cols() != n || !mat_is_integral(ring, eta) {
        return false;
    }
    let p = ring.base().characteristic_prime() as i64;
    let vals_at_least = |f: &TruncSeries<S::Elem>, v: i64| ring.valuation(f).is_none_or(|x| x >= v);
    for i in 0..n {
        for j in 0..n {
            let f = eta.get(i, j);
            let ok = match (i < r1, j < r1) {
                (true, false) => ring.is_zero(f),
                (false, true) => vals_at_least(f, p),
                _ => {
                    let c = ring.coeff(f, 0);
                    let want = if i == j { ring.base().one() } else { ring.base().zero() };
                    c.is_some_and(|c| c == want)
                }
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// The pair `(φ_M, φ_{M,1}|_N)` recovered from `Ψ`.
#[derive(Clone, Debug)]
pub struct PsiWindow<E> {
    pub phi_m: MatSeries<E>,
    pub phi_m1_on_n: MatSeries<E>,
}

/// `φ_M(n + l) = ϖΨ(n) + Ψ(l)` and `φ_{M,1}(n) = Ψ(n)`.
pub fn window_from_psi<R: Ring>(frame: &FrameRing<R>, psi: &MatSeries<R::Elem>, r1: usize, r2: usize) -> Result<PsiWindow<R::Elem>> {
    let n = r1 + r2;
    if psi.rows() != n || psi.cols() != n {
        return Err(AlgError::SizeMismatch { expected: n, got: psi.rows() });
    }
    let s = frame.series();
    let c = mat_constant_term(s, psi)?;
    if !s.base().is_unit(&c.det(s.base())) {
        return Err(AlgError::NonUnitConstantTerm);
    }
    let phi_m = psi.mul(s, &frame.block_diag(r1, r2, &frame.varpi()));
    Ok(PsiWindow { phi_m, phi_m1_on_n: psi.submatrix(0..n, 0..r1) })
}

/// `Ψ = φ_{M,1}|_N ⊕ φ_M|_L`.
pub fn psi_from_window<R: Ring>(frame: &FrameRing<R>, w: &PsiWindow<R::Elem>) -> MatSeries<R::Elem> {
    let n = w.phi_m.rows();
    let r1 = w.phi_m1_on_n.cols();
    Matrix::from_fn(n, n, |i, j| {
        if j < r1 {
            w.phi_m1_on_n.get(i, j).clone()
        } else {
            w.phi_m.get(i, j).clone()
        }
    })
    .map(|f| frame.series().truncate(f, f.prec()))
}

/// Outputs of the synthetic point construction for one `Δ`.
#[derive(Clone, Debug)]
pub struct ThetaReport {
    pub phi0: MatSeries<FfElem>,
    pub alpha_bar: Matrix<FfElem>,
    /// `ω` of `ᾱ·μ(u)·I`.
    pub direct: ZetaLabel,
    /// `ω` after re-factoring `Φ₀` by the `u`-adic Smith form (`GL_n` only).
    pub via_snf: Option<ZetaLabel>,
    pub zeta: ZetaLabel,
}

impl ThetaReport {
    pub fn consistent(&self) -> bool {
        self.direct.orbit == self.zeta.orbit && self.via_snf.as_ref().is_none_or(|l| l.orbit == self.zeta.orbit)
    }
}

/// Build the window of `Δ ∈ G(Z/p^m)` and compare the `ω`-label of its
/// `Φ₀` with the zip class of `Δ mod p`.
pub fn theta_synthetic(
    delta: &Matrix<u64>,
    zp: &Zpm,
    spec: &GroupSpec,
    chi: &Cochar,
    table: &OrbitTable,
    n: usize,
) -> Result<ThetaReport> {
    if !membership(spec, zp, delta)? {
        return Err(AlgError::NotInGroup(spec.to_string()));
    }
    let (r1, r2) = window_ranks(chi)?;
    let frame = FrameRing::new(zp.clone(), n)?;
    let w = build_adapted(&frame, delta, r1, r2)?;
    let red = reduce_mod_p(&w)?;
    let ring = &red.ring;
    let id = Matrix::identity(ring, chi.len());
    let direct = omega(ring, &CosetElem::new(ring, mat_from_constant(ring, &red.alpha_bar), id, chi.clone())?, table)?;
    let via_snf = match spec {
        GroupSpec::GL(_) => Some(omega(ring, &refactor_gl(ring, &red.phi0, chi)?, table)?),
        _ => None,
    };
    let zeta = zeta_class(&red.alpha_bar, table)?;
    Ok(ThetaReport { phi0: red.phi0, alpha_bar: red.alpha_bar, direct, via_snf, zeta })
}

/// The element `c = (d, p₊)` moving `θ(x)` to `θ(x·p₊)`.
#[derive(Clone, Debug)]
pub struct CWitness {
    /// `d = Φ₀·σ(u₊)·Φ₀^{-1}`.
    pub d: MatSeries<FfElem>,
    pub pplus: Matrix<FfElem>,
    pub d_in_k1: bool,
    /// Right `K₁`-coset comparison of `p₊^{-1}ᾱσ(m)μ(u)` with the moved point.
    pub translation: CosetCmp,
    /// The two sides agree exactly, not only modulo `K₁`.
    pub exact: bool,
    /// `ᾱ` and `p₊^{-1}ᾱσ(m)` lie in the same zip orbit.
    pub label_invariant: bool,
}

impl CWitness {
    pub fn ok(&self) -> bool {
        self.d_in_k1 && self.translation == CosetCmp::Equal && self.exact && self.label_invariant
    }
}

/// Conjugate `σ(u₊)` by `Φ₀` and verify the translation identity.
///
/// In the `K⁺` convention used here the pair acts through `α = p₊^{-1}·d·p₊`.
pub fn c_witness(
    ring: &SeriesRing<Gf>,
    phi0: &MatSeries<FfElem>,
    pplus: &Matrix<FfElem>,
    chi: &Cochar,
    table: &OrbitTable,
) -> Result<CWitness> {
    let f = ring.base();
    let (r1, _) = window_ranks(chi)?;
    let alpha_bar = split_mu(ring, phi0, r1)?;
    let m = levi_component(chi, f, pplus);
    let uplus = pplus.mul(f, &m.inverse(f)?);
    let phi0_inv = mat_laurent_inverse(ring, phi0)?;
    let d = phi0
        .mul(ring, &mat_from_constant(ring, &frobenius_twist(f, &uplus)))
        .mul(ring, &phi0_inv);
    if mat_prec(&d) < 1 {
        return Err(AlgError::WindowExhausted("d known only below u^1".into()));
    }
    let d_in_k1 = mat_is_integral(ring, &d) && mat_is_in_k1(ring, &d)?;
    let pp = mat_from_constant(ring, pplus);
    let pp_inv = mat_from_constant(ring, &pplus.inverse(f)?);
    let mu = mu_matrix(chi, f.p(), ring)?;
    let moved_point = pplus.inverse(f)?.mul(f, &alpha_bar).mul(f, &frobenius_twist(f, &m));
    let translated = mat_from_constant(ring, &moved_point).mul(ring, &mu);
    let (translation, exact) = if d_in_k1 {
        let alpha = pp_inv.mul(ring, &d).mul(ring, &pp);
        let moved = kdiamond_act(ring, phi0, &alpha, &pp)?;
        (coset_equal_mod_k1(ring, &translated, &moved)?, translated.ring_eq(ring, &moved))
    } else {
        (CosetCmp::Different, false)
    };
    let label_invariant = zeta_class(&alpha_bar, table)?.orbit == zeta_class(&moved_point, table)?.orbit;
    Ok(CWitness { d, pplus: pplus.clone(), d_in_k1, translation, exact, label_invariant })
}

/// How the second window of a gluing instance is produced from the first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GluingMode {
    /// `Γ₂ = C·Γ₁` with `C ≡ I mod p`, same Frobenius lift.
    LeftCongruent,
    /// Change of basis `Q = I + pX` under a second Frobenius lift:
    /// `Γ₂ = Q^{-1}·Γ₁·diag(p,1)·φ₂(Q)·diag(p,1)^{-1}`.
    Gauge,
}

/// `Γ₂` for a gauge change `Q = I + pX` read through the lift of `base2`.
pub fn gauge_gamma(base2: &RelBase, gamma1: &Matrix<crate::coeffring::RelElem>, x: &Matrix<crate::coeffring::RelElem>, r1: usize) -> Result<Matrix<crate::coeffring::RelElem>> {
    let n = gamma1.rows();
    let p = base2.from_int(base2.p() as i64);
    let p2 = base2.mul(&p, &p);
    let id = Matrix::identity(base2, n);
    let q = id.add(base2, &x.scale(base2, &p));
    let fx = frobenius_twist(base2, x);
    let z = Matrix::from_fn(n, n, |i, j| {
        let e = fx.get(i, j);
        let d = if i == j { base2.one() } else { base2.zero() };
        match (i < r1, j < r1) {
            (false, true) => e.clone(),
            (true, false) => base2.mul(&p2, e),
            _ => base2.add(&d, &base2.mul(&p, e)),
        }
    });
    Ok(q.inverse(base2)?.mul(base2, gamma1).mul(base2, &z))
}
