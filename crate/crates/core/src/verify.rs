//! Randomized and exhaustive property suites over the whole library.
//!
//! Each check runs a fixed number of seeded instances and records how many
//! failed, together with the first failure.

use std::time::Instant;

use rand::Rng as RandRng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bkwin::{
    build_adapted, c_witness, eta_block_shape, eta_compare, gauge_gamma, map_series, reduce_mod_p, reduce_mod_u,
    theta_synthetic, window_ranks, FrameRing, GluingMode,
};
use crate::coeffring::{FrobLiftSpec, Gf, RelBase, Ring, Zpm};
use crate::error::{AlgError, Result};
use crate::grp::{mu_matrix, random_group_element, root_element, Cochar, GroupSpec};
use crate::loopgrp::{
    kdiamond_act, omega, omega_welldef_check, orbit_move_chain, random_coset_elem, random_k1_element, refactor_gl,
    two_frobenii_coset, u_adic_snf, verify_key_inclusion, zip_witness, Side,
};
use crate::matrix::Matrix;
use crate::series::{mat_from_constant, mat_prec, SeriesRing};
use crate::weyl::{strata_poset, JSubset, WeylGroup};
use crate::zip::{classify_orbits, random_zip_element, resolve_geometric, OrbitTable};

/// Outcome of one property over a batch of instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub anchor: String,
    pub instances: usize,
    pub failures: usize,
    pub detail: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.instances > 0
    }
}

/// Named group of checks with its wall time.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub millis: u128,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

/// Run `f` on `0..instances`; errors count as failures.
pub fn tally(anchor: &str, instances: usize, mut f: impl FnMut(usize) -> Result<bool>) -> Check {
    let mut failures = 0;
    let mut first = None;
    for i in 0..instances {
        let outcome = f(i);
        let bad = match &outcome {
            Ok(true) => None,
            Ok(false) => Some(format!("instance {i} failed")),
            Err(e) => Some(format!("instance {i}: {e}")),
        };
        if let Some(msg) = bad {
            failures += 1;
            first.get_or_insert(msg);
        }
    }
    Check { anchor: anchor.to_string(), instances, failures, detail: first.unwrap_or_default() }
}

fn rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// The three standard configurations.
pub fn standard_configs() -> Vec<(GroupSpec, Cochar)> {
    vec![
        (GroupSpec::GL(2), Cochar::new(vec![1, 0]).expect("weights")),
        (GroupSpec::GL(3), Cochar::new(vec![1, 1, 0]).expect("weights")),
        (GroupSpec::GSp(4), Cochar::new(vec![1, 1, 0, 0]).expect("weights")),
    ]
}

/// `J` for the weights of `chi`.
pub fn j_of(weyl: &WeylGroup, chi: &Cochar) -> Result<JSubset> {
    JSubset::from_weights(&weyl.weyl_type(), chi.weights())
}

// ---------------------------------------------------------------------------
// Coset combinatorics and zip orbits

/// `|^J W|` and the extremal elements of the poset.
pub fn coxeter_check(spec: &GroupSpec, chi: &Cochar, expected: usize) -> Check {
    let outcome = (|| -> Result<(bool, String)> {
        let w = WeylGroup::of_group(spec)?;
        let j = j_of(&w, chi)?;
        let poset = strata_poset(&w, &j)?;
        let count = poset.elements.len();
        let max_ok = poset.elements[poset.max] == w.w_max(&j);
        let min_ok = poset.elements[poset.min] == w.identity();
        Ok((
            count == expected && max_ok && min_ok,
            format!("|JW| = {count}, max {} (len {}), min {}", poset.names[poset.max], poset.lengths[poset.max], poset.names[poset.min]),
        ))
    })();
    match outcome {
        Ok((ok, detail)) => Check { anchor: format!("coset-count/{spec}"), instances: 1, failures: usize::from(!ok), detail },
        Err(e) => Check { anchor: format!("coset-count/{spec}"), instances: 1, failures: 1, detail: e.to_string() },
    }
}

/// Orbit table with geometric classes resolved up to `rmax`.
pub fn resolved_table(spec: &GroupSpec, chi: &Cochar, q: u64, rmax: usize) -> Result<OrbitTable> {
    let f = Gf::prime(q)?;
    let mut t = classify_orbits(spec, chi, &f)?;
    let w = WeylGroup::of_group(spec)?;
    let j = j_of(&w, chi)?;
    resolve_geometric(&mut t, &w, &j, rmax)?;
    Ok(t)
}

/// Geometric class count equals `|^J W|` and `π` is injective on classes.
pub fn zip_bijection_check(spec: &GroupSpec, chi: &Cochar, q: u64, rmax: usize) -> Check {
    let anchor = format!("zip-orbit-bijection/{spec}/F{q}");
    let outcome = (|| -> Result<(bool, String)> {
        let t = resolved_table(spec, chi, q, rmax)?;
        let g = t.geometric.as_ref().expect("resolved");
        let jw = g.pi_orbits.len();
        let ok = g.class_count() == jw && g.pi_reps_distinct();
        Ok((
            ok,
            format!(
                "{} F{q}-orbits, classes by r = {:?}, |JW| = {jw}, pi distinct = {}",
                t.orbits.len(),
                g.counts_by_r,
                g.pi_reps_distinct()
            ),
        ))
    })();
    match outcome {
        Ok((ok, detail)) => Check { anchor, instances: 1, failures: usize::from(!ok), detail },
        Err(e) => Check { anchor, instances: 1, failures: 1, detail: e.to_string() },
    }
}

/// `GL_2(F_2)` splits into orbits of sizes 4 and 2.
pub fn gl2_f2_sizes_check() -> Check {
    let outcome = (|| -> Result<Vec<usize>> {
        let t = classify_orbits(&GroupSpec::GL(2), &Cochar::new(vec![1, 0])?, &Gf::prime(2)?)?;
        let mut s: Vec<usize> = t.orbits.iter().map(|o| o.size).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        Ok(s)
    })();
    let (ok, detail) = match outcome {
        Ok(s) => (s == [4, 2], format!("sizes {s:?}")),
        Err(e) => (false, e.to_string()),
    };
    Check { anchor: "zip-orbit-sizes/gl:2/F2".into(), instances: 1, failures: usize::from(!ok), detail }
}

// ---------------------------------------------------------------------------
// Two Frobenii

/// `φ = σ∘(u ↦ u^p) = (u ↦ u^p)∘σ` on random truncated Laurent series.
pub fn frobenii_series_check(p: u64, r: usize, n: usize, count: usize, seed: u64) -> Check {
    let setup = Gf::new(p, r).and_then(|f| SeriesRing::new(f, n));
    let s = match setup {
        Ok(s) => s,
        Err(e) => return Check { anchor: "two-frobenii/series".into(), instances: 0, failures: 1, detail: e.to_string() },
    };
    let mut g = rng(seed, 31);
    tally(&format!("two-frobenii/series/F{}^{r}/N{n}", p), count, |_| {
        let val = -(g.gen_range(0..2) as i64);
        let len = g.gen_range(0..=n);
        let c: Vec<_> = (0..len).map(|_| s.base().random(&mut g)).collect();
        let f = s.from_laurent(val, &c);
        let (phi, _) = s.phi(&f);
        let (a, _) = s.subst_u_to_up(&s.sigma(&f));
        let b = s.sigma(&s.subst_u_to_up(&f).0);
        Ok(phi == a && phi == b)
    })
}

/// `φ(g)K₁ = σ(g)K₁` on random `K`-elements.
pub fn frobenii_coset_check(spec: &GroupSpec, p: u64, r: usize, n: usize, count: usize, seed: u64) -> Check {
    let anchor = format!("two-frobenii/coset/{spec}/F{p}^{r}");
    let s = match Gf::new(p, r).and_then(|f| SeriesRing::new(f, n)) {
        Ok(s) => s,
        Err(e) => return Check { anchor, instances: 0, failures: 1, detail: e.to_string() },
    };
    let mut g = rng(seed, 37);
    tally(&anchor, count, |_| two_frobenii_coset(&s, &random_group_element(spec, &s, &mut g)))
}

// ---------------------------------------------------------------------------
// Key inclusions

/// `y·U₊·y⁻¹ ⊂ K₁` and `y⁻¹·U₋·y ⊂ K₁` over every root subgroup, with every
/// polynomial coefficient of degree `≤ max_deg` over `F_p`.
pub fn inclusions_check(spec: &GroupSpec, chi: &Cochar, p: u64, max_deg: usize) -> Check {
    let anchor = format!("key-inclusions/{spec}/F{p}");
    let n = p as usize * chi.max_weight().max(1) as usize + max_deg + 2;
    let s = match Gf::prime(p).and_then(|f| SeriesRing::new(f, n)) {
        Ok(s) => s,
        Err(e) => return Check { anchor, instances: 0, failures: 1, detail: e.to_string() },
    };
    let f = s.base().clone();
    let polys: Vec<Vec<_>> = (0..(p as usize).pow(max_deg as u32 + 1))
        .map(|mut k| {
            (0..=max_deg)
                .map(|_| {
                    let c = f.from_coords(&[(k % p as usize) as u64]);
                    k /= p as usize;
                    c
                })
                .collect()
        })
        .collect();
    let roots: Vec<_> = spec.roots().into_iter().filter(|r| chi.root_weight(r) != 0).collect();
    let total = roots.len() * polys.len();
    let mut cases = roots.iter().flat_map(|root| polys.iter().map(move |c| (root, c)));
    tally(&anchor, total, |_| {
        let (root, c) = cases.next().expect("case count");
        let x = root_element(&s, spec.n(), root, &s.from_coeffs(c));
        let side = if chi.root_weight(root) > 0 { Side::Plus } else { Side::Minus };
        let r = verify_key_inclusion(&s, &x, side, chi, p)?;
        Ok(r.holds && !r.pole)
    })
}

// ---------------------------------------------------------------------------
// The ω map

fn f_series(p: u64, n: usize) -> Result<SeriesRing<Gf>> {
    SeriesRing::new(Gf::prime(p)?, n)
}

/// Re-factorizations `(h1c1, σ(c2)⁻¹h2)` preserve the coset and `ω`.
pub fn omega_welldef_suite(spec: &GroupSpec, chi: &Cochar, table: &OrbitTable, n: usize, count: usize, seed: u64) -> Check {
    let anchor = format!("omega-refactorization/{spec}/F{}", table.field.p());
    let s = match f_series(table.field.p(), n) {
        Ok(s) => s,
        Err(e) => return Check { anchor, instances: 0, failures: 1, detail: e.to_string() },
    };
    let mut g = rng(seed, 41);
    tally(&anchor, count, |_| {
        let c = random_coset_elem(spec, chi, &s, &mut g)?;
        Ok(omega_welldef_check(&s, spec, table, &c, &mut g)?.ok())
    })
}

/// A random `K◇`-move followed by a fresh Smith-form factorization keeps `ω`.
pub fn omega_move_snf_suite(spec: &GroupSpec, chi: &Cochar, table: &OrbitTable, n: usize, count: usize, seed: u64) -> Check {
    let anchor = format!("omega-kdiamond-invariance/{spec}/F{}", table.field.p());
    let s = match f_series(table.field.p(), n) {
        Ok(s) => s,
        Err(e) => return Check { anchor, instances: 0, failures: 1, detail: e.to_string() },
    };
    let mut g = rng(seed, 43);
    tally(&anchor, count, |_| {
        let c = random_coset_elem(spec, chi, &s, &mut g)?;
        let alpha = random_k1_element(spec, &s, &mut g);
        let gamma = random_group_element(spec, &s, &mut g);
        let moved = kdiamond_act(&s, &c.materialize(&s)?, &alpha, &gamma)?;
        let c2 = refactor_gl(&s, &moved, chi)?;
        Ok(omega(&s, &c, table)?.orbit == omega(&s, &c2, table)?.orbit)
    })
}

/// Explicit move chains between `h1·μ` and `h2·μ` when `h̄2` is a zip translate of `h̄1`.
pub fn move_chain_suite(spec: &GroupSpec, chi: &Cochar, table: &OrbitTable, n: usize, count: usize, seed: u64) -> Check {
    let anchor = format!("omega-move-chain/{spec}/F{}", table.field.p());
    let s = match f_series(table.field.p(), n) {
        Ok(s) => s,
        Err(e) => return Check { anchor, instances: 0, failures: 1, detail: e.to_string() },
    };
    let f = s.base().clone();
    let mut g = rng(seed, 47);
    tally(&anchor, count, |_| {
        let h1 = random_group_element(spec, &s, &mut g);
        let z = random_zip_element(spec, chi, &f, &mut g);
        let k1 = random_k1_element(spec, &s, &mut g);
        let h2 = mat_from_constant(&s, &z.gplus)
            .mul(&s, &h1)
            .mul(&s, &mat_from_constant(&s, &z.gminus.inverse(&f)?))
            .mul(&s, &k1);
        let h1_bar = crate::series::mat_constant_term(&s, &h1)?;
        let h2_bar = crate::series::mat_constant_term(&s, &h2)?;
        let w = zip_witness(spec, chi, &f, &h1_bar, &h2_bar)?
            .ok_or_else(|| AlgError::Hypothesis("no zip witness for a zip translate".into()))?;
        Ok(orbit_move_chain(&s, spec, chi, &h1, &h2, &w)?.all_ok())
    })
}

// ---------------------------------------------------------------------------
// Windows

fn random_lift<G: RandRng + ?Sized>(p: u64, m: u32, d: usize, g: &mut G) -> FrobLiftSpec {
    let len = g.gen_range(0..d.max(1));
    FrobLiftSpec::new((0..len).map(|_| g.gen_range(0..p.pow(m))).collect())
}

fn random_invertible<R: Ring, G: RandRng + ?Sized>(b: &R, n: usize, g: &mut G) -> Matrix<R::Elem> {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| b.random(g));
        if b.is_unit(&m.det(b)) {
            return m;
        }
    }
}

/// `Φ mod u = Γ·diag(p, 1)` and `Φ mod p = Γ̄·μ(u)` on random `Γ` over a grid.
pub fn adapted_suite(count: usize, seed: u64) -> Check {
    let mut g = rng(seed, 53);
    tally("adapted-deformation/reductions", count, |_| {
        let p = [2u64, 3][g.gen_range(0..2)];
        let m = g.gen_range(1..=3u32);
        let d = [1usize, 2, 4][g.gen_range(0..3)];
        let n = [2 * p as usize + 2, 4 * p as usize + 2][g.gen_range(0..2)];
        let rank = g.gen_range(2..=4usize);
        let r1 = g.gen_range(0..=rank);
        let base = RelBase::new(p, m, d, random_lift(p, m, d, &mut g))?;
        let gamma = random_invertible(&base, rank, &mut g);
        let w = build_adapted(&FrameRing::new(base.clone(), n)?, &gamma, r1, rank - r1)?;
        let scale: Vec<_> = (0..rank).map(|i| base.from_int(if i < r1 { p as i64 } else { 1 })).collect();
        let f_lin = gamma.mul(&base, &Matrix::diag(&base, &scale));
        let red = reduce_mod_p(&w)?;
        Ok(reduce_mod_u(&w)? == f_lin && red.alpha_bar == gamma.map(|x| base.reduce_mod_p(x)))
    })
}

/// Building over `R_D` then setting `t = 0` equals building over `Z/p^m`.
pub fn base_change_suite(count: usize, seed: u64) -> Check {
    let mut g = rng(seed, 59);
    tally("adapted-deformation/base-change", count, |_| {
        let p = [2u64, 3][g.gen_range(0..2)];
        let m = g.gen_range(1..=3u32);
        let d = g.gen_range(1..=4usize);
        let n = 4 * p as usize + 2;
        let rank = g.gen_range(2..=4usize);
        let r1 = g.gen_range(0..=rank);
        let base = RelBase::new(p, m, d, random_lift(p, m, d, &mut g))?;
        let gamma = random_invertible(&base, rank, &mut g);
        let w = build_adapted(&FrameRing::new(base.clone(), n)?, &gamma, r1, rank - r1)?;
        let zp = Zpm::new(p, m)?;
        let frame0 = FrameRing::new(zp.clone(), n)?;
        let reduced = w.phi.map(|f| map_series::<RelBase, Zpm>(frame0.series(), f, |x| base.eval_t_zero(x)));
        let gamma0 = gamma.map(|x| base.eval_t_zero(x));
        let direct = build_adapted(&frame0, &gamma0, r1, rank - r1)?;
        Ok(reduced.ring_eq(frame0.series(), &direct.phi) && mat_prec(&reduced) == n as i64)
    })
}

/// One hypothesis-satisfying gluing instance and its checks.
pub fn gluing_instance<G: RandRng + ?Sized>(p: u64, m: u32, d: usize, mode: GluingMode, g: &mut G) -> Result<bool> {
    if m < 2 {
        return Err(AlgError::InvalidParameter("gluing needs p-adic precision m >= 2".into()));
    }
    let rank = g.gen_range(2..=3usize);
    let r1 = g.gen_range(0..=rank);
    let n = (4 * p as usize + 2).max(2 * p as usize * r1 + p as usize + 2);
    let b1 = RelBase::new(p, m, d, random_lift(p, m, d, g))?;
    let gamma1 = random_invertible(&b1, rank, g);
    let w1 = build_adapted(&FrameRing::new(b1.clone(), n)?, &gamma1, r1, rank - r1)?;
    let w2 = match mode {
        GluingMode::LeftCongruent => {
            let pp = b1.from_int(p as i64);
            let c = Matrix::identity(&b1, rank).add(&b1, &Matrix::from_fn(rank, rank, |_, _| b1.mul(&pp, &b1.random(g))));
            build_adapted(&FrameRing::new(b1.clone(), n)?, &c.mul(&b1, &gamma1), r1, rank - r1)?
        }
        GluingMode::Gauge => {
            let b2 = RelBase::new(p, m, d, random_lift(p, m, d, g))?;
            let x = Matrix::from_fn(rank, rank, |_, _| b2.random(g));
            let gamma1_b2 = gamma1.clone();
            let gamma2 = gauge_gamma(&b2, &gamma1_b2, &x, r1)?;
            build_adapted(&FrameRing::new(b2, n)?, &gamma2, r1, rank - r1)?
        }
    };
    let e = eta_compare(&w1, &w2)?;
    Ok(e.unique && e.congruent_to_identity && eta_block_shape(&e.ring, &e.eta, r1, rank - r1))
}

/// `η` is integral, trivial mod `u`, unique and block lower-triangular.
pub fn gluing_suite(p: Option<u64>, m: u32, d: Option<usize>, count: usize, seed: u64) -> Check {
    let mut g = rng(seed, 61);
    tally("gluing/eta", count, |i| {
        let p = p.unwrap_or([2u64, 3][g.gen_range(0..2)]);
        let d = d.unwrap_or(g.gen_range(2..=4usize));
        let mode = if i % 2 == 0 { GluingMode::Gauge } else { GluingMode::LeftCongruent };
        gluing_instance(p, m, d, mode, &mut g)
    })
}

/// `ω` of the synthetic point of `Δ` equals the zip class of `Δ mod p`.
pub fn theta_suite(spec: &GroupSpec, chi: &Cochar, table: &OrbitTable, m: u32, n: usize, count: usize, seed: u64) -> Check {
    let p = table.field.p();
    let anchor = format!("theta-triangle/{spec}/Z/{p}^{m}");
    let zp = match Zpm::new(p, m) {
        Ok(z) => z,
        Err(e) => return Check { anchor, instances: 0, failures: 1, detail: e.to_string() },
    };
    let mut g = rng(seed, 67);
    tally(&anchor, count, |_| {
        let delta = random_group_element(spec, &zp, &mut g);
        Ok(theta_synthetic(&delta, &zp, spec, chi, table, n)?.consistent())
    })
}

/// `d = Φ₀σ(u₊)Φ₀⁻¹ ∈ K₁` and `θ(x·p₊) = θ(x)·c`.
pub fn c_witness_suite(spec: &GroupSpec, chi: &Cochar, table: &OrbitTable, m: u32, n: usize, count: usize, seed: u64) -> Check {
    let p = table.field.p();
    let anchor = format!("c-witness/{spec}/F{p}");
    let setup = Zpm::new(p, m).and_then(|zp| Ok((zp.clone(), FrameRing::new(zp, n)?)));
    let (zp, frame) = match setup {
        Ok(x) => x,
        Err(e) => return Check { anchor, instances: 0, failures: 1, detail: e.to_string() },
    };
    let f = table.field.clone();
    let mut g = rng(seed, 71);
    tally(&anchor, count, |_| {
        let (r1, r2) = window_ranks(chi)?;
        let delta = random_group_element(spec, &zp, &mut g);
        let red = reduce_mod_p(&build_adapted(&frame, &delta, r1, r2)?)?;
        let pplus = random_zip_element(spec, chi, &f, &mut g).gplus;
        Ok(c_witness(&red.ring, &red.phi0, &pplus, chi, table)?.ok())
    })
}

/// `u_adic_snf(h1·μ(u)·h2)` has valuations `p·χ` and reassembles exactly.
pub fn snf_suite(spec: &GroupSpec, chi: &Cochar, p: u64, n: usize, count: usize, seed: u64) -> Check {
    let anchor = format!("smith-form-roundtrip/{spec}/F{p}");
    let s = match f_series(p, n) {
        Ok(s) => s,
        Err(e) => return Check { anchor, instances: 0, failures: 1, detail: e.to_string() },
    };
    let mut g = rng(seed, 73);
    let expect: Vec<i64> = chi.weights().iter().map(|&a| p as i64 * a).collect();
    tally(&anchor, count, |_| {
        let mu = mu_matrix(chi, p, &s)?;
        let h1 = random_group_element(spec, &s, &mut g);
        let h2 = random_group_element(spec, &s, &mut g);
        let t = h1.mul(&s, &mu).mul(&s, &h2);
        let snf = u_adic_snf(&s, &t)?;
        let back = snf.reassemble(&s);
        Ok(snf.valuations == expect && back == t && mat_prec(&back) >= mat_prec(&t))
    })
}

// ---------------------------------------------------------------------------
// Named suites

/// Parameters shared by the named suites.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteParams {
    pub spec: GroupSpec,
    pub chi: Cochar,
    pub p: u64,
    pub r: usize,
    pub m: u32,
    pub d: usize,
    pub n: usize,
    pub seed: u64,
    /// Instance count of each randomized check.
    pub count: usize,
}

pub const SUITES: [&str; 5] = ["frobenii", "omega", "inclusions", "gluing", "theta"];

/// Run one named suite, or all of them in fixed order.
pub fn run_suite(name: &str, params: &SuiteParams) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        return SUITES.iter().map(|s| run_one(s, params)).collect();
    }
    Ok(vec![run_one(name, params)?])
}

fn run_one(name: &str, q: &SuiteParams) -> Result<SuiteReport> {
    let start = Instant::now();
    let table = || classify_orbits(&q.spec, &q.chi, &Gf::prime(q.p)?);
    let checks = match name {
        "frobenii" => vec![
            frobenii_series_check(q.p, q.r, q.n, q.count, q.seed),
            frobenii_coset_check(&q.spec, q.p, q.r, q.n, q.count, q.seed),
        ],
        "inclusions" => vec![inclusions_check(&q.spec, &q.chi, q.p, 4)],
        "omega" => {
            let t = table()?;
            let mut v = vec![omega_welldef_suite(&q.spec, &q.chi, &t, q.n, q.count, q.seed)];
            if matches!(q.spec, GroupSpec::GL(_)) {
                v.push(omega_move_snf_suite(&q.spec, &q.chi, &t, q.n, q.count, q.seed));
                v.push(snf_suite(&q.spec, &q.chi, q.p, q.n, q.count, q.seed));
            }
            v.push(move_chain_suite(&q.spec, &q.chi, &t, q.n, q.count.min(100), q.seed));
            v
        }
        "gluing" => {
            if q.m < 2 {
                return Err(AlgError::InvalidParameter("gluing needs p-adic precision m >= 2".into()));
            }
            vec![
                gluing_suite(Some(q.p), q.m, Some(q.d), q.count, q.seed),
                adapted_suite(q.count, q.seed),
                base_change_suite(q.count, q.seed),
            ]
        }
        "theta" => {
            let t = table()?;
            vec![
                theta_suite(&q.spec, &q.chi, &t, q.m, q.n, q.count, q.seed),
                c_witness_suite(&q.spec, &q.chi, &t, q.m, q.n, q.count, q.seed),
            ]
        }
        other => return Err(AlgError::InvalidParameter(format!("unknown suite {other:?}"))),
    };
    Ok(SuiteReport { suite: name.to_string(), checks, millis: start.elapsed().as_millis() })
}
