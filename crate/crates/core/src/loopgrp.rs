//! Truncated loop groups: `K = G(F[u]/u^N)`, its congruence subgroup `K₁`,
//! the semidirect product `K⁺` and its action on double cosets `K·μ(u)·K`,
//! the map to zip orbits, and the certificates behind its invariance.

use rand::Rng as RandRng;
use serde::{Deserialize, Serialize};

use crate::coeffring::{FfElem, Gf, PerfectRing, Ring};
use crate::error::{AlgError, Result};
use crate::grp::{
    levi_component, membership, mu_matrix, parabolic_membership, random_group_element, root_element,
    torus_element, Cochar, GroupSpec, Part,
};
use crate::matrix::Matrix;
use crate::series::{
    mat_conj_by_cochar, mat_constant_term, mat_from_constant, mat_invert, mat_is_integral, mat_is_in_k1,
    mat_laurent_inverse, mat_phi, mat_prec, mat_sigma, mat_sigma_inverse, MatSeries, SeriesRing,
};
use crate::zip::{transporter, zeta_class, OrbitTable, ZetaLabel};

/// An element `(α, β, γ)` of `K⁺ = (K₁ × K₁) ⋊ K`.
#[derive(Clone, Debug, PartialEq)]
pub struct KPlusElem<E> {
    pub alpha: MatSeries<E>,
    pub beta: MatSeries<E>,
    pub gamma: MatSeries<E>,
}

impl<E: Clone> KPlusElem<E> {
    pub fn identity<R: Ring<Elem = E>>(ring: &SeriesRing<R>, n: usize) -> Self {
        let id = Matrix::identity(ring, n);
        KPlusElem { alpha: id.clone(), beta: id.clone(), gamma: id }
    }
}

/// `(α,β,γ)·(α',β',γ') = (γ⁻¹α'γα, φ(γ)⁻¹β'φ(γ)β, γ'γ)`.
pub fn kplus_mul<R: Ring>(
    ring: &SeriesRing<R>,
    x: &KPlusElem<R::Elem>,
    y: &KPlusElem<R::Elem>,
) -> Result<KPlusElem<R::Elem>> {
    let g_inv = mat_invert(ring, &x.gamma)?;
    let (phi_g, _) = mat_phi(ring, &x.gamma);
    let phi_g_inv = mat_invert(ring, &phi_g)?;
    Ok(KPlusElem {
        alpha: g_inv.mul(ring, &y.alpha).mul(ring, &x.gamma).mul(ring, &x.alpha),
        beta: phi_g_inv.mul(ring, &y.beta).mul(ring, &phi_g).mul(ring, &x.beta),
        gamma: y.gamma.mul(ring, &x.gamma),
    })
}

/// `t ↦ α⁻¹γ⁻¹·t·φ(γ)β`, so that acting by `x·y` is acting by `y` then `x`.
pub fn kplus_act<R: Ring>(
    ring: &SeriesRing<R>,
    x: &KPlusElem<R::Elem>,
    t: &MatSeries<R::Elem>,
) -> Result<MatSeries<R::Elem>> {
    let left = mat_invert(ring, &x.gamma.mul(ring, &x.alpha))?;
    let (phi_g, _) = mat_phi(ring, &x.gamma);
    Ok(left.mul(ring, t).mul(ring, &phi_g).mul(ring, &x.beta))
}

/// `t ↦ α⁻¹γ⁻¹·t·φ(γ)`, read modulo right multiplication by `K₁`.
pub fn kdiamond_act<R: Ring>(
    ring: &SeriesRing<R>,
    t: &MatSeries<R::Elem>,
    alpha: &MatSeries<R::Elem>,
    gamma: &MatSeries<R::Elem>,
) -> Result<MatSeries<R::Elem>> {
    if !mat_is_in_k1(ring, alpha)? {
        return Err(AlgError::NotInGroup("alpha is not in K1".into()));
    }
    let left = mat_invert(ring, &gamma.mul(ring, alpha))?;
    let (phi_g, _) = mat_phi(ring, gamma);
    Ok(left.mul(ring, t).mul(ring, &phi_g))
}

/// Outcome of a right `K₁`-coset comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CosetCmp {
    Equal,
    Different,
    /// Cancellation used up the window before the constant term was known.
    Inconclusive,
}

/// Whether `t1·K₁ = t2·K₁`, by testing `t1⁻¹t2 ∈ K₁` over `F((u))`.
pub fn coset_equal_mod_k1<R: Ring>(
    ring: &SeriesRing<R>,
    t1: &MatSeries<R::Elem>,
    t2: &MatSeries<R::Elem>,
) -> Result<CosetCmp> {
    let q = mat_laurent_inverse(ring, t1)?.mul(ring, t2);
    if !mat_is_integral(ring, &q) {
        return Ok(CosetCmp::Different);
    }
    if mat_prec(&q) < 1 {
        return Ok(CosetCmp::Inconclusive);
    }
    Ok(if mat_constant_term(ring, &q)?.is_identity(ring.base()) { CosetCmp::Equal } else { CosetCmp::Different })
}

/// A double-coset element `h1·μ(u)·h2` with `h1, h2 ∈ K`.
#[derive(Clone, Debug, PartialEq)]
pub struct CosetElem<E> {
    pub h1: MatSeries<E>,
    pub h2: MatSeries<E>,
    pub chi: Cochar,
    pub p: u64,
}

impl<E: Clone> CosetElem<E> {
    pub fn new<R: Ring<Elem = E>>(
        ring: &SeriesRing<R>,
        h1: MatSeries<E>,
        h2: MatSeries<E>,
        chi: Cochar,
    ) -> Result<Self> {
        for h in [&h1, &h2] {
            if h.rows() != chi.len() || h.cols() != chi.len() {
                return Err(AlgError::SizeMismatch { expected: chi.len(), got: h.rows() });
            }
            mat_constant_term(ring, h)?
                .inverse(ring.base())
                .map_err(|_| AlgError::NonUnitConstantTerm)?;
        }
        let p = ring.base().characteristic_prime();
        mu_matrix(&chi, p, ring)?;
        Ok(CosetElem { h1, h2, chi, p })
    }

    pub fn materialize<R: Ring<Elem = E>>(&self, ring: &SeriesRing<R>) -> Result<MatSeries<E>> {
        let mu = mu_matrix(&self.chi, self.p, ring)?;
        Ok(self.h1.mul(ring, &mu).mul(ring, &self.h2))
    }
}

/// `σ⁻¹(h̄₂)·h̄₁` for a factored coset element.
pub fn omega_point(ring: &SeriesRing<Gf>, c: &CosetElem<FfElem>) -> Result<Matrix<FfElem>> {
    let f = ring.base();
    let h1 = mat_constant_term(ring, &c.h1)?;
    let h2 = mat_constant_term(ring, &c.h2)?;
    Ok(h2.map(|x| f.frobenius_inverse(x)).mul(f, &h1))
}

/// The zip-orbit label of `σ⁻¹(h̄₂)·h̄₁`.
pub fn omega(ring: &SeriesRing<Gf>, c: &CosetElem<FfElem>, table: &OrbitTable) -> Result<ZetaLabel> {
    zeta_class(&omega_point(ring, c)?, table)
}

/// Product of root factors and a torus element, with `U₋` coefficients
/// divisible by `u^p`: an element of `K` whose block-lower part vanishes mod `u^p`.
pub fn random_p_plus_congruent<G: RandRng + ?Sized>(
    spec: &GroupSpec,
    chi: &Cochar,
    ring: &SeriesRing<Gf>,
    rng: &mut G,
) -> MatSeries<FfElem> {
    let n = spec.n();
    let p = ring.base().p() as i64;
    let mut m = Matrix::identity(ring, n);
    for _ in 0..2 {
        for root in spec.roots() {
            let mut c = ring.random(rng);
            if chi.root_weight(&root) < 0 {
                c = ring.shift(&c, p);
            }
            m = m.mul(ring, &root_element(ring, n, &root, &c));
        }
    }
    let params: Vec<_> = (0..spec.torus_rank()).map(|_| ring.random_unit(rng)).collect();
    m.mul(ring, &torus_element(spec, ring, &params).expect("unit parameters"))
}

/// A random element of `K₁`.
pub fn random_k1_element<R: Ring, G: RandRng + ?Sized>(
    spec: &GroupSpec,
    ring: &SeriesRing<R>,
    rng: &mut G,
) -> MatSeries<R::Elem> {
    let g = random_group_element(spec, ring, rng);
    let g0 = mat_constant_term(ring, &g).expect("integral");
    let g0_inv = g0.inverse(ring.base()).expect("unit constant term");
    g.mul(ring, &mat_from_constant(ring, &g0_inv))
}

/// Result of re-factoring `h1·μ·h2` as `(h1c1)·μ·(σ(c2)⁻¹h2)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WelldefReport {
    /// `c2 = y⁻¹σ⁻¹(c1)y` holds in the window.
    pub relation_holds: bool,
    pub cosets_equal: bool,
    pub omega_equal: bool,
}

impl WelldefReport {
    pub fn ok(&self) -> bool {
        self.relation_holds && self.cosets_equal && self.omega_equal
    }
}

/// Re-factor `h1·μ(u)·h2` with `c1 = σ(y·c2·y⁻¹)`, `y = χ(u^p)`, for a random
/// `c2 ∈ K` with block-lower part divisible by `u^p`, and compare `ω`.
pub fn omega_welldef_check<G: RandRng + ?Sized>(
    ring: &SeriesRing<Gf>,
    spec: &GroupSpec,
    table: &OrbitTable,
    c: &CosetElem<FfElem>,
    rng: &mut G,
) -> Result<WelldefReport> {
    let p = c.p as i64;
    let w = c.chi.weights();
    let c2 = random_p_plus_congruent(spec, &c.chi, ring, rng);
    let yc2y = mat_conj_by_cochar(ring, &c2, w, p);
    if !mat_is_integral(ring, &yc2y) {
        return Err(AlgError::Hypothesis("y c2 y^-1 has a pole".into()));
    }
    let c1 = mat_sigma(ring, &yc2y);
    let back = mat_conj_by_cochar(ring, &mat_sigma_inverse(ring, &c1), w, -p);
    let relation_holds = back == c2;
    let h1p = c.h1.mul(ring, &c1);
    let h2p = mat_invert(ring, &mat_sigma(ring, &c2))?.mul(ring, &c.h2);
    let c_new = CosetElem::new(ring, h1p, h2p, c.chi.clone())?;
    let cosets_equal = c.materialize(ring)? == c_new.materialize(ring)?;
    let omega_equal = omega(ring, c, table)?.orbit == omega(ring, &c_new, table)?.orbit;
    Ok(WelldefReport { relation_holds, cosets_equal, omega_equal })
}

/// Side of a key inclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// `y·x·y⁻¹`.
    Plus,
    /// `y⁻¹·x·y`.
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusionCheck {
    pub holds: bool,
    /// The conjugate has a negative power of `u`.
    pub pole: bool,
}

/// Whether the conjugate of `elt` by `y = χ(u^p)` lies in `K₁`.
pub fn verify_key_inclusion<R: Ring>(
    ring: &SeriesRing<R>,
    elt: &MatSeries<R::Elem>,
    side: Side,
    chi: &Cochar,
    p: u64,
) -> Result<InclusionCheck> {
    let s = match side {
        Side::Plus => p as i64,
        Side::Minus => -(p as i64),
    };
    let conj = mat_conj_by_cochar(ring, elt, chi.weights(), s);
    if !mat_is_integral(ring, &conj) {
        return Ok(InclusionCheck { holds: false, pole: true });
    }
    Ok(InclusionCheck { holds: mat_is_in_k1(ring, &conj)?, pole: false })
}

/// `φ(g)·K₁ = σ(g)·K₁`.
pub fn two_frobenii_coset<R: Ring>(ring: &SeriesRing<R>, g: &MatSeries<R::Elem>) -> Result<bool> {
    let (phi_g, _) = mat_phi(ring, g);
    let q = mat_invert(ring, &phi_g)?.mul(ring, &mat_sigma(ring, g));
    mat_is_in_k1(ring, &q)
}

/// `t = h1·diag(u^{v_1}, …, u^{v_n})·h2` with `v` descending.
#[derive(Clone, Debug, PartialEq)]
pub struct Snf<E> {
    pub h1: MatSeries<E>,
    pub valuations: Vec<i64>,
    pub h2: MatSeries<E>,
}

impl<E: Clone> Snf<E> {
    pub fn diagonal<R: Ring<Elem = E>>(&self, ring: &SeriesRing<R>) -> MatSeries<E> {
        let d: Vec<_> = self.valuations.iter().map(|&v| ring.monomial(ring.base().one(), v)).collect();
        Matrix::diag(ring, &d)
    }

    pub fn reassemble<R: Ring<Elem = E>>(&self, ring: &SeriesRing<R>) -> MatSeries<E> {
        self.h1.mul(ring, &self.diagonal(ring)).mul(ring, &self.h2)
    }
}

/// `u`-adic Smith normal form over `F[[u]]/u^N` for `GL_n`.
pub fn u_adic_snf<R: Ring>(ring: &SeriesRing<R>, t: &MatSeries<R::Elem>) -> Result<Snf<R::Elem>> {
    let n = t.rows();
    if !t.is_square() {
        return Err(AlgError::SizeMismatch { expected: n, got: t.cols() });
    }
    if !mat_is_integral(ring, t) {
        return Err(AlgError::Pole);
    }
    let mut a = t.clone();
    let mut h1 = Matrix::identity(ring, n);
    let mut h2 = Matrix::identity(ring, n);
    let mut vals = vec![0i64; n];
    for k in 0..n {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in k..n {
            for j in k..n {
                if let Some(v) = ring.pivot_rank(a.get(i, j)) {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else {
            return Err(AlgError::ValuationOverflow(ring.order()));
        };
        a.swap_rows(k, pi);
        h1.swap_cols(k, pi);
        a.swap_cols(k, pj);
        h2.swap_rows(k, pj);
        let pivot_inv = ring.inv(a.get(k, k))?;
        for i in k + 1..n {
            if ring.is_zero(a.get(i, k)) {
                continue;
            }
            let m = ring.pad_to_nominal(&ring.mul(a.get(i, k), &pivot_inv));
            for j in k..n {
                let v = ring.sub(a.get(i, j), &ring.mul(&m, a.get(k, j)));
                a.set(i, j, v);
            }
            a.set(i, k, ring.zero());
            for r in 0..n {
                let v = ring.add(h1.get(r, k), &ring.mul(&m, h1.get(r, i)));
                h1.set(r, k, v);
            }
        }
        for j in k + 1..n {
            if ring.is_zero(a.get(k, j)) {
                continue;
            }
            let m = ring.pad_to_nominal(&ring.mul(a.get(k, j), &pivot_inv));
            for i in k..n {
                let v = ring.sub(a.get(i, j), &ring.mul(&m, a.get(i, k)));
                a.set(i, j, v);
            }
            a.set(k, j, ring.zero());
            for c in 0..n {
                let v = ring.add(h2.get(k, c), &ring.mul(&m, h2.get(j, c)));
                h2.set(k, c, v);
            }
        }
        vals[k] = v;
        let unit = ring.pad_to_nominal(&ring.shift(a.get(k, k), -v));
        for c in 0..n {
            let x = ring.mul(&unit, h2.get(k, c));
            h2.set(k, c, x);
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&k| std::cmp::Reverse(vals[k]));
    let h1 = Matrix::from_fn(n, n, |r, s| h1.get(r, order[s]).clone());
    let h2 = Matrix::from_fn(n, n, |s, c| h2.get(order[s], c).clone());
    let valuations = order.iter().map(|&k| vals[k]).collect();
    Ok(Snf { h1, valuations, h2 })
}

/// Refactor a materialized element of `K·μ(u)·K` for `GL_n`.
pub fn refactor_gl<R: Ring>(ring: &SeriesRing<R>, t: &MatSeries<R::Elem>, chi: &Cochar) -> Result<CosetElem<R::Elem>> {
    let snf = u_adic_snf(ring, t)?;
    let p = ring.base().characteristic_prime() as i64;
    let expect: Vec<i64> = chi.weights().iter().map(|&a| p * a).collect();
    if snf.valuations != expect {
        return Err(AlgError::FactorizationMismatch(format!(
            "elementary divisors {:?}, expected {:?}",
            snf.valuations, expect
        )));
    }
    CosetElem::new(ring, snf.h1, snf.h2, chi.clone())
}

/// Decomposition `p₊ = u₊·m`, `p₋ = u₋·σ(m)` of a zip-group element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZipWitness {
    pub uplus: Matrix<FfElem>,
    pub levi: Matrix<FfElem>,
    pub uminus: Matrix<FfElem>,
}

impl ZipWitness {
    pub fn pplus(&self, f: &Gf) -> Matrix<FfElem> {
        self.uplus.mul(f, &self.levi)
    }

    pub fn pminus(&self, f: &Gf) -> Matrix<FfElem> {
        self.uminus.mul(f, &crate::grp::frobenius_twist(f, &self.levi))
    }

    pub fn from_pair(f: &Gf, chi: &Cochar, pplus: &Matrix<FfElem>, pminus: &Matrix<FfElem>) -> Result<Self> {
        let levi = levi_component(chi, f, pplus);
        let uplus = pplus.mul(f, &levi.inverse(f)?);
        let uminus = pminus.mul(f, &crate::grp::frobenius_twist(f, &levi).inverse(f)?);
        if !parabolic_membership(chi, f, &uplus, Part::UPlus) || !parabolic_membership(chi, f, &uminus, Part::UMinus) {
            return Err(AlgError::NotInGroup("pair does not decompose in the zip group".into()));
        }
        Ok(ZipWitness { uplus, levi, uminus })
    }
}

/// A zip-group element over `F_q` carrying `g1` to `g2`, if any.
pub fn zip_witness(
    spec: &GroupSpec,
    chi: &Cochar,
    f: &Gf,
    g1: &Matrix<FfElem>,
    g2: &Matrix<FfElem>,
) -> Result<Option<ZipWitness>> {
    match transporter(spec, chi, f, g1, g2, 1)? {
        Some(t) => Ok(Some(ZipWitness::from_pair(f, chi, &t.pair.gplus, &t.pair.gminus)?)),
        None => Ok(None),
    }
}

/// One verified link of a move chain.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainStep {
    pub description: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MoveChain {
    pub steps: Vec<ChainStep>,
}

impl MoveChain {
    pub fn all_ok(&self) -> bool {
        self.steps.iter().all(|s| s.ok)
    }
}

/// Connect `[[h2·x]]` to `[[h1·x]]`, `x = μ(u)`, through explicit `K◇`-moves
/// and `K₁`-coset identities, given `h̄2 = p₊·h̄1·p₋⁻¹`.
pub fn orbit_move_chain(
    ring: &SeriesRing<Gf>,
    spec: &GroupSpec,
    chi: &Cochar,
    h1: &MatSeries<FfElem>,
    h2: &MatSeries<FfElem>,
    witness: &ZipWitness,
) -> Result<MoveChain> {
    let f = ring.base();
    let p = f.p();
    let n = spec.n();
    let x = mu_matrix(chi, p, ring)?;
    let lift = |m: &Matrix<FfElem>| mat_from_constant(ring, m);
    let pplus = witness.pplus(f);
    let pminus = witness.pminus(f);
    let h1_bar = mat_constant_term(ring, h1)?;
    let h2_bar = mat_constant_term(ring, h2)?;
    if h2_bar != pplus.mul(f, &h1_bar).mul(f, &pminus.inverse(f)?) {
        return Err(AlgError::Hypothesis("reduction of h2 is not the zip translate of h1".into()));
    }
    let (up, m, um) = (lift(&witness.uplus), lift(&witness.levi), lift(&witness.uminus));
    let sm = mat_sigma(ring, &m);
    let sm_inv = mat_invert(ring, &sm)?;
    let um_inv = mat_invert(ring, &um)?;
    let id = Matrix::identity(ring, n);
    let mut steps = Vec::new();
    let coset = |a: &MatSeries<FfElem>, b: &MatSeries<FfElem>| -> Result<bool> {
        Ok(coset_equal_mod_k1(ring, a, b)? == CosetCmp::Equal)
    };

    // 1. α = h2·(p₊h1p₋⁻¹)⁻¹ ∈ K₁ turns h2·x into p₊h1p₋⁻¹·x.
    let middle = up.mul(ring, &m).mul(ring, h1).mul(ring, &sm_inv).mul(ring, &um_inv);
    let alpha = h2.mul(ring, &mat_invert(ring, &middle)?);
    let t0 = h2.mul(ring, &x);
    let t1 = middle.mul(ring, &x);
    let moved = kdiamond_act(ring, &t0, &alpha, &id)?;
    steps.push(ChainStep { description: "alpha = h2 (p+ h1 p-^-1)^-1 in K1".into(), ok: coset(&moved, &t1)? });

    // 2. x⁻¹u₋⁻¹x ∈ K₁ drops u₋.
    let b = m.mul(ring, h1).mul(ring, &sm_inv);
    let t2 = up.mul(ring, &b).mul(ring, &x);
    let inc = verify_key_inclusion(ring, &um_inv, Side::Minus, chi, p)?;
    steps.push(ChainStep { description: "x^-1 u-^-1 x in K1".into(), ok: inc.holds && coset(&t1, &t2)? });

    // 3. γ = u₊.
    let t3 = b.mul(ring, &x).mul(ring, &mat_sigma(ring, &up));
    let moved = kdiamond_act(ring, &t2, &id, &up)?;
    steps.push(ChainStep { description: "gamma = u+".into(), ok: coset(&moved, &t3)? });

    // 4. α = B·xσ(u₊)x⁻¹·B⁻¹ ∈ K₁.
    let conj = mat_conj_by_cochar(ring, &mat_sigma(ring, &up), chi.weights(), p as i64);
    let inc = verify_key_inclusion(ring, &mat_sigma(ring, &up), Side::Plus, chi, p)?;
    let alpha = b.mul(ring, &conj).mul(ring, &mat_invert(ring, &b)?);
    let t4 = b.mul(ring, &x);
    let moved = kdiamond_act(ring, &t3, &alpha, &id)?;
    steps.push(ChainStep { description: "alpha = B x sigma(u+) x^-1 B^-1".into(), ok: inc.holds && coset(&moved, &t4)? });

    // 5. σ(m) is Levi, so it commutes with x.
    let t5 = m.mul(ring, h1).mul(ring, &x).mul(ring, &sm_inv);
    steps.push(ChainStep { description: "sigma(m) commutes with x".into(), ok: t4 == t5 });

    // 6. γ = m.
    let t6 = h1.mul(ring, &x);
    let moved = kdiamond_act(ring, &t5, &id, &m)?;
    steps.push(ChainStep { description: "gamma = m".into(), ok: coset(&moved, &t6)? });

    Ok(MoveChain { steps })
}

/// A random double-coset element with `h1, h2` sampled in `K`.
pub fn random_coset_elem<R: Ring, G: RandRng + ?Sized>(
    spec: &GroupSpec,
    chi: &Cochar,
    ring: &SeriesRing<R>,
    rng: &mut G,
) -> Result<CosetElem<R::Elem>> {
    let h1 = random_group_element(spec, ring, rng);
    let h2 = random_group_element(spec, ring, rng);
    debug_assert!(membership(spec, ring, &h1).unwrap_or(false));
    CosetElem::new(ring, h1, h2, chi.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{random_k_element, GroupSpec};
    use crate::zip::classify_orbits;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f3_ring(n: usize) -> SeriesRing<Gf> {
        SeriesRing::new(Gf::prime(3).unwrap(), n).unwrap()
    }

    #[test]
    fn kplus_identity_and_associativity() {
        let s = f3_ring(8);
        let spec = GroupSpec::GL(2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rand_kp = |rng: &mut ChaCha8Rng| KPlusElem {
            alpha: random_k1_element(&spec, &s, rng),
            beta: random_k1_element(&spec, &s, rng),
            gamma: random_group_element(&spec, &s, rng),
        };
        let e = KPlusElem::identity(&s, 2);
        for _ in 0..30 {
            let (x, y, z) = (rand_kp(&mut rng), rand_kp(&mut rng), rand_kp(&mut rng));
            assert_eq!(kplus_mul(&s, &e, &x).unwrap(), x);
            assert_eq!(kplus_mul(&s, &x, &e).unwrap(), x);
            let l = kplus_mul(&s, &kplus_mul(&s, &x, &y).unwrap(), &z).unwrap();
            let r = kplus_mul(&s, &x, &kplus_mul(&s, &y, &z).unwrap()).unwrap();
            assert_eq!(l, r);
            let t = random_group_element(&spec, &s, &mut rng);
            let a = kplus_act(&s, &kplus_mul(&s, &x, &y).unwrap(), &t).unwrap();
            let b = kplus_act(&s, &x, &kplus_act(&s, &y, &t).unwrap()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn kplus_pinned_gl2_f2() {
        let s = SeriesRing::new(Gf::prime(2).unwrap(), 6).unwrap();
        let (o, z) = (s.one(), s.zero());
        let u = s.u();
        let alpha = Matrix::from_rows(vec![vec![o.clone(), u.clone()], vec![z.clone(), o.clone()]]).unwrap();
        let gamma = Matrix::from_rows(vec![vec![o.clone(), o.clone()], vec![z.clone(), o.clone()]]).unwrap();
        let x = KPlusElem { alpha: alpha.clone(), beta: Matrix::identity(&s, 2), gamma: gamma.clone() };
        let beta2 = Matrix::from_rows(vec![vec![o.clone(), z.clone()], vec![u.clone(), o.clone()]]).unwrap();
        let y = KPlusElem { alpha: Matrix::identity(&s, 2), beta: beta2.clone(), gamma: Matrix::identity(&s, 2) };
        let xy = kplus_mul(&s, &x, &y).unwrap();
        // γ⁻¹·I·γ·α = α; φ(γ)⁻¹β'φ(γ); γ'γ = γ.
        assert_eq!(xy.alpha, alpha);
        assert_eq!(xy.gamma, gamma);
        let (pg, _) = mat_phi(&s, &gamma);
        assert_eq!(pg, gamma);
        let expect_beta = mat_invert(&s, &gamma).unwrap().mul(&s, &beta2).mul(&s, &gamma);
        assert_eq!(xy.beta, expect_beta);
        let u2 = s.monomial(s.base().one(), 2);
        assert_eq!(*expect_beta.get(0, 0), s.add(&o, &u));
        assert_eq!(*expect_beta.get(0, 1), u.clone());
        assert_eq!(*expect_beta.get(1, 1), s.sub(&o, &u));
        let _ = u2;
    }

    #[test]
    fn kdiamond_examples() {
        let s = f3_ring(8);
        let spec = GroupSpec::GL(2);
        let chi = Cochar::new(vec![1, 0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let c = random_coset_elem(&spec, &chi, &s, &mut rng).unwrap();
        let t = c.materialize(&s).unwrap();
        let id = Matrix::identity(&s, 2);
        assert_eq!(kdiamond_act(&s, &t, &id, &id).unwrap(), t);
        let two = s.constant(s.base().from_int(2));
        let gamma = Matrix::diag(&s, &[two, s.one()]);
        let moved = kdiamond_act(&s, &t, &id, &gamma).unwrap();
        let expect = mat_invert(&s, &gamma).unwrap().mul(&s, &t).mul(&s, &mat_sigma(&s, &gamma));
        assert_eq!(coset_equal_mod_k1(&s, &moved, &expect).unwrap(), CosetCmp::Equal);
        assert!(kdiamond_act(&s, &t, &gamma, &id).is_err());
    }

    #[test]
    fn coset_comparison_examples() {
        let s = f3_ring(10);
        let spec = GroupSpec::GL(2);
        let chi = Cochar::new(vec![1, 0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let t = random_coset_elem(&spec, &chi, &s, &mut rng).unwrap().materialize(&s).unwrap();
            assert_eq!(coset_equal_mod_k1(&s, &t, &t).unwrap(), CosetCmp::Equal);
            let k1 = random_k1_element(&spec, &s, &mut rng);
            assert_eq!(coset_equal_mod_k1(&s, &t, &t.mul(&s, &k1)).unwrap(), CosetCmp::Equal);
        }
        let mu = mu_matrix(&chi, 3, &s).unwrap();
        let g = Matrix::from_rows(vec![vec![s.one(), s.one()], vec![s.zero(), s.one()]]).unwrap();
        assert_eq!(coset_equal_mod_k1(&s, &mu, &g.mul(&s, &mu)).unwrap(), CosetCmp::Different);
        let tiny = f3_ring(4);
        let mut outcomes = std::collections::BTreeSet::new();
        for _ in 0..40 {
            let t = random_coset_elem(&spec, &chi, &tiny, &mut rng).unwrap().materialize(&tiny).unwrap();
            outcomes.insert(format!("{:?}", coset_equal_mod_k1(&tiny, &t, &t).unwrap()));
        }
        assert!(!outcomes.contains("Different"));
        assert!(outcomes.contains("Inconclusive"));
    }

    #[test]
    fn omega_examples() {
        let f = Gf::prime(3).unwrap();
        let s = SeriesRing::new(f.clone(), 8).unwrap();
        let spec = GroupSpec::GL(2);
        let chi = Cochar::new(vec![1, 0]).unwrap();
        let table = classify_orbits(&spec, &chi, &f).unwrap();
        let id = Matrix::identity(&s, 2);
        let c = CosetElem::new(&s, id.clone(), id.clone(), chi.clone()).unwrap();
        assert_eq!(omega(&s, &c, &table).unwrap(), zeta_class(&Matrix::identity(&f, 2), &table).unwrap());
        let g = Matrix::from_rows(vec![vec![f.zero(), f.one()], vec![f.one(), f.one()]]).unwrap();
        let c = CosetElem::new(&s, mat_from_constant(&s, &g), id.clone(), chi.clone()).unwrap();
        assert_eq!(omega(&s, &c, &table).unwrap(), zeta_class(&g, &table).unwrap());
        let d = Matrix::diag(&f, &[f.from_int(2), f.one()]);
        let c = CosetElem::new(&s, id, mat_from_constant(&s, &d), chi).unwrap();
        assert_eq!(omega(&s, &c, &table).unwrap(), zeta_class(&d, &table).unwrap());
    }

    #[test]
    fn omega_welldef_recipe() {
        let f = Gf::new(2, 2).unwrap();
        let s = SeriesRing::new(f.clone(), 8).unwrap();
        let spec = GroupSpec::GL(2);
        let chi = Cochar::new(vec![1, 0]).unwrap();
        let table = classify_orbits(&spec, &chi, &f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..30 {
            let c = random_coset_elem(&spec, &chi, &s, &mut rng).unwrap();
            let rep = omega_welldef_check(&s, &spec, &table, &c, &mut rng).unwrap();
            assert!(rep.ok(), "{rep:?}");
        }
    }

    #[test]
    fn key_inclusion_examples() {
        let s = f3_ring(10);
        let chi = Cochar::new(vec![1, 0]).unwrap();
        let fser = s.from_coeffs(&[s.base().one(), s.base().from_int(2)]);
        let (o, z) = (s.one(), s.zero());
        let up = Matrix::from_rows(vec![vec![o.clone(), fser.clone()], vec![z.clone(), o.clone()]]).unwrap();
        let r = verify_key_inclusion(&s, &up, Side::Plus, &chi, 3).unwrap();
        assert_eq!(r, InclusionCheck { holds: true, pole: false });
        let conj = mat_conj_by_cochar(&s, &up, chi.weights(), 3);
        assert_eq!(*conj.get(0, 1), s.shift(&fser, 3));
        let id = Matrix::identity(&s, 2);
        assert!(verify_key_inclusion(&s, &id, Side::Plus, &chi, 3).unwrap().holds);
        let low = Matrix::from_rows(vec![vec![o.clone(), z.clone()], vec![fser, o]]).unwrap();
        assert_eq!(verify_key_inclusion(&s, &low, Side::Plus, &chi, 3).unwrap(), InclusionCheck { holds: false, pole: true });
        assert!(verify_key_inclusion(&s, &low, Side::Minus, &chi, 3).unwrap().holds);
    }

    #[test]
    fn two_frobenii_examples() {
        let s = f3_ring(9);
        let (o, z) = (s.one(), s.zero());
        let g = Matrix::from_rows(vec![vec![o.clone(), s.u()], vec![z, o]]).unwrap();
        assert!(two_frobenii_coset(&s, &g).unwrap());
        for seed in 0..50 {
            assert!(two_frobenii_coset(&s, &random_k_element(&GroupSpec::GSp(4), &s, seed)).unwrap());
        }
    }

    #[test]
    fn snf_examples() {
        let s = f3_ring(10);
        let (o, z) = (s.one(), s.zero());
        let u3 = s.monomial(s.base().one(), 3);
        let d = Matrix::diag(&s, &[u3.clone(), o.clone()]);
        let r = u_adic_snf(&s, &d).unwrap();
        assert_eq!(r.valuations, vec![3, 0]);
        assert!(r.h1.is_identity(&s) && r.h2.is_identity(&s));
        let t = Matrix::from_rows(vec![vec![u3.clone(), u3.clone()], vec![z.clone(), o.clone()]]).unwrap();
        let r = u_adic_snf(&s, &t).unwrap();
        assert_eq!(r.valuations, vec![3, 0]);
        assert_eq!(r.reassemble(&s), t);
        let zero = Matrix::zeros(&s, 2, 2);
        assert!(matches!(u_adic_snf(&s, &zero), Err(AlgError::ValuationOverflow(_))));
    }

    #[test]
    fn snf_roundtrip() {
        let s = f3_ring(10);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for (spec, w) in [(GroupSpec::GL(2), vec![1, 0]), (GroupSpec::GL(3), vec![1, 1, 0])] {
            let chi = Cochar::new(w).unwrap();
            for _ in 0..20 {
                let c = random_coset_elem(&spec, &chi, &s, &mut rng).unwrap();
                let t = c.materialize(&s).unwrap();
                let r = u_adic_snf(&s, &t).unwrap();
                assert_eq!(r.valuations, chi.weights().iter().map(|a| 3 * a).collect::<Vec<_>>());
                assert_eq!(r.reassemble(&s), t);
            }
        }
    }

    #[test]
    fn move_chain_identity_and_gl2_f2() {
        let f = Gf::prime(2).unwrap();
        let s = SeriesRing::new(f.clone(), 8).unwrap();
        let spec = GroupSpec::GL(2);
        let chi = Cochar::new(vec![1, 0]).unwrap();
        let id = Matrix::identity(&f, 2);
        let trivial = ZipWitness { uplus: id.clone(), levi: id.clone(), uminus: id.clone() };
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let h = random_group_element(&spec, &s, &mut rng);
        assert!(orbit_move_chain(&s, &spec, &chi, &h, &h, &trivial).unwrap().all_ok());
        let uu = Matrix::from_rows(vec![vec![f.one(), f.one()], vec![f.zero(), f.one()]]).unwrap();
        let w = ZipWitness { uplus: uu.clone(), levi: id.clone(), uminus: id.clone() };
        let h1 = random_group_element(&spec, &s, &mut rng);
        let h2 = mat_from_constant(&s, &uu).mul(&s, &h1).mul(&s, &random_k1_element(&spec, &s, &mut rng));
        let chain = orbit_move_chain(&s, &spec, &chi, &h1, &h2, &w).unwrap();
        assert_eq!(chain.steps.len(), 6);
        assert!(chain.all_ok(), "{chain:?}");
    }
}
