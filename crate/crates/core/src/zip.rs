//! Zip-group orbits on `G(F_q)`.
//!
//! The zip group `E_χ` acts by `(p₊, p₋)·g = p₊·g·p₋⁻¹`. Orbits over `F_q` are
//! enumerated exhaustively; orbits over extensions are compared by solving
//! the transporter equation, which is `F_p`-linear in `p₊`.

use std::collections::{HashMap, VecDeque};

use rand::Rng as RandRng;
use serde::{Deserialize, Serialize};

use crate::coeffring::{FfElem, Gf, Ring};
use crate::error::{AlgError, Result};
use crate::grp::{
    levi_component, membership, root_element, torus_element, Cochar, GroupSpec, Part, ZipPair,
};
use crate::matrix::Matrix;
use crate::weyl::{pi_rep, JSubset, WeylGroup};

/// Largest `|G(F_q)|` that `classify_orbits` will enumerate.
pub const GROUP_GUARD: u128 = 10_000_000;
/// Largest transporter kernel that `geometric_equal` will enumerate.
pub const KERNEL_GUARD: u128 = 1 << 26;

/// `|G(F_q)|` from the standard order formulas.
pub fn group_order(spec: &GroupSpec, q: u64) -> u128 {
    let q = q as u128;
    match *spec {
        GroupSpec::GL(n) => (0..n as u32).map(|i| q.pow(n as u32) - q.pow(i)).product(),
        GroupSpec::SL(n) => group_order(&GroupSpec::GL(n), q as u64) / (q - 1),
        GroupSpec::GSp(n) => {
            let g = (n / 2) as u32;
            (q - 1) * q.pow(g * g) * (1..=g).map(|i| q.pow(2 * i) - 1).product::<u128>()
        }
    }
}

/// Packs matrices over `F_q` into `u128`, row-major with the first entry most
/// significant, so numeric order is the canonical total order.
#[derive(Clone, Debug)]
pub struct MatrixPacker {
    n: usize,
    bits: u32,
}

impl MatrixPacker {
    pub fn new(n: usize, q: u32) -> Result<Self> {
        let bits = 32 - (q - 1).leading_zeros();
        if (n * n) as u32 * bits > 128 {
            return Err(AlgError::InvalidParameter(format!("{n}x{n} matrices over a field of size {q} do not pack")));
        }
        Ok(MatrixPacker { n, bits })
    }

    pub fn pack(&self, m: &Matrix<FfElem>) -> u128 {
        m.entries().iter().fold(0u128, |acc, e| (acc << self.bits) | e.0 as u128)
    }

    pub fn unpack(&self, mut k: u128) -> Matrix<FfElem> {
        let nn = self.n * self.n;
        let mask = (1u128 << self.bits) - 1;
        let mut data = vec![FfElem(0); nn];
        for slot in (0..nn).rev() {
            data[slot] = FfElem((k & mask) as u32);
            k >>= self.bits;
        }
        Matrix::from_vec(self.n, self.n, data).expect("square")
    }
}

fn torus_generators(spec: &GroupSpec, field: &Gf) -> Vec<Matrix<FfElem>> {
    let k = spec.torus_rank();
    (0..k)
        .map(|slot| {
            let params: Vec<FfElem> =
                (0..k).map(|i| if i == slot { field.primitive() } else { field.one() }).collect();
            torus_element(spec, field, &params).expect("unit parameters")
        })
        .collect()
}

/// Generators of `G(F_q)`: root elements with `F_p`-basis coefficients and
/// torus elements built from the primitive element.
pub fn group_generators(spec: &GroupSpec, field: &Gf) -> Vec<Matrix<FfElem>> {
    let n = spec.n();
    let mut gens = Vec::new();
    for root in spec.roots() {
        for k in 0..field.degree() {
            gens.push(root_element(field, n, &root, &field.basis(k)));
        }
    }
    gens.extend(torus_generators(spec, field));
    gens
}

/// Generators of `E_χ(F_q)`: `(u, I)` for `U₊`, `(I, u)` for `U₋`, and
/// `(m, σ(m))` for Levi roots and the torus.
pub fn zip_generators(spec: &GroupSpec, chi: &Cochar, field: &Gf) -> Vec<ZipPair<FfElem>> {
    let n = spec.n();
    let id = Matrix::identity(field, n);
    let mut gens = Vec::new();
    for root in spec.roots() {
        let wt = chi.root_weight(&root);
        for k in 0..field.degree() {
            let u = root_element(field, n, &root, &field.basis(k));
            gens.push(match wt.signum() {
                1 => ZipPair { gplus: u, gminus: id.clone() },
                -1 => ZipPair { gplus: id.clone(), gminus: u },
                _ => ZipPair { gminus: crate::grp::frobenius_twist(field, &u), gplus: u },
            });
        }
    }
    for t in torus_generators(spec, field) {
        gens.push(ZipPair { gminus: crate::grp::frobenius_twist(field, &t), gplus: t });
    }
    gens
}

/// A random element of `E_χ(A)`.
pub fn random_zip_element<R: Ring, G: RandRng + ?Sized>(
    spec: &GroupSpec,
    chi: &Cochar,
    ring: &R,
    rng: &mut G,
) -> ZipPair<R::Elem> {
    let n = spec.n();
    let roots = spec.roots();
    let mut levi = Matrix::identity(ring, n);
    let mut uplus = Matrix::identity(ring, n);
    let mut uminus = Matrix::identity(ring, n);
    for _ in 0..2 {
        for root in &roots {
            let x = root_element(ring, n, root, &ring.random(rng));
            match chi.root_weight(root).signum() {
                1 => uplus = uplus.mul(ring, &x),
                -1 => uminus = uminus.mul(ring, &x),
                _ => levi = levi.mul(ring, &x),
            }
        }
    }
    let params: Vec<_> = (0..spec.torus_rank()).map(|_| ring.random_unit(rng)).collect();
    levi = levi.mul(ring, &torus_element(spec, ring, &params).expect("unit parameters"));
    ZipPair {
        gplus: uplus.mul(ring, &levi),
        gminus: uminus.mul(ring, &crate::grp::frobenius_twist(ring, &levi)),
    }
}

/// `(p₊, p₋)·g = p₊·g·p₋⁻¹`, after checking both memberships.
pub fn zip_act<R: Ring>(
    ring: &R,
    spec: &GroupSpec,
    chi: &Cochar,
    z: &ZipPair<R::Elem>,
    g: &Matrix<R::Elem>,
) -> Result<Matrix<R::Elem>> {
    if !crate::grp::zip_membership(ring, z, chi) {
        return Err(AlgError::NotInGroup("pair is not in the zip group".into()));
    }
    if !membership(spec, ring, g)? {
        return Err(AlgError::NotInGroup("matrix is not in the group".into()));
    }
    Ok(z.gplus.mul(ring, g).mul(ring, &z.gminus.inverse(ring)?))
}

/// One `E_χ(F_q)`-orbit.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Orbit {
    pub rep: Matrix<FfElem>,
    pub size: usize,
}

/// Merging of `F_q`-orbits into geometric classes by extension search.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeometricResolution {
    pub rmax: usize,
    /// Class index of every orbit, classes numbered by smallest orbit.
    pub class_of_orbit: Vec<usize>,
    /// Number of classes after allowing extensions of degree `≤ r`, for `r = 1..=rmax`.
    pub counts_by_r: Vec<usize>,
    /// Least `r` from which the count no longer changes up to `rmax`.
    pub stabilized_at: usize,
    /// Orbit containing `π(w)` for each `w ∈ ^J W`, as `(weyl index, orbit)`.
    pub pi_orbits: Vec<(usize, usize)>,
    /// Weyl label of each class, when some `π(w)` lies in it.
    pub class_labels: Vec<Option<usize>>,
}

impl GeometricResolution {
    pub fn class_count(&self) -> usize {
        self.class_labels.len()
    }

    /// `π(w)` for distinct `w` land in distinct classes.
    pub fn pi_reps_distinct(&self) -> bool {
        let mut seen: Vec<usize> = self.pi_orbits.iter().map(|&(_, o)| self.class_of_orbit[o]).collect();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }
}

/// The partition of `G(F_q)` into `E_χ(F_q)`-orbits.
#[derive(Clone, Debug)]
pub struct OrbitTable {
    pub spec: GroupSpec,
    pub chi: Cochar,
    pub field: Gf,
    /// Sorted by canonical representative.
    pub orbits: Vec<Orbit>,
    pub geometric: Option<GeometricResolution>,
    packer: MatrixPacker,
    member: HashMap<u128, usize>,
}

/// Result of `zeta_class`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaLabel {
    pub orbit: usize,
    pub rep: Matrix<FfElem>,
    pub class: Option<usize>,
    pub weyl: Option<usize>,
}

impl OrbitTable {
    pub fn group_size(&self) -> usize {
        self.member.len()
    }

    pub fn orbit_of(&self, g: &Matrix<FfElem>) -> Option<usize> {
        if g.rows() != self.spec.n() || g.cols() != self.spec.n() {
            return None;
        }
        self.member.get(&self.packer.pack(g)).copied()
    }

    /// All members of an orbit, in canonical order.
    pub fn members(&self, orbit: usize) -> Vec<Matrix<FfElem>> {
        let mut keys: Vec<u128> = self.member.iter().filter(|&(_, &o)| o == orbit).map(|(&k, _)| k).collect();
        keys.sort_unstable();
        keys.into_iter().map(|k| self.packer.unpack(k)).collect()
    }
}

/// Every element of `G(F_q)`, in canonical order.
pub fn enumerate_group(spec: &GroupSpec, field: &Gf) -> Result<Vec<Matrix<FfElem>>> {
    let (packer, keys) = enumerate_keys(spec, field)?;
    Ok(keys.into_iter().map(|k| packer.unpack(k)).collect())
}

fn enumerate_keys(spec: &GroupSpec, field: &Gf) -> Result<(MatrixPacker, Vec<u128>)> {
    let size = group_order(spec, field.order() as u64);
    if size > GROUP_GUARD {
        return Err(AlgError::GuardExceeded { what: "group order".into(), size, limit: GROUP_GUARD });
    }
    let n = spec.n();
    let packer = MatrixPacker::new(n, field.order())?;
    let gens = group_generators(spec, field);
    let id = Matrix::identity(field, n);
    let mut seen = std::collections::HashSet::new();
    seen.insert(packer.pack(&id));
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in &gens {
            let h = s.mul(field, &g);
            if seen.insert(packer.pack(&h)) {
                queue.push_back(h);
            }
        }
    }
    let mut keys: Vec<u128> = seen.into_iter().collect();
    keys.sort_unstable();
    Ok((packer, keys))
}

/// Exhaustive `E_χ(F_q)`-orbit partition of `G(F_q)`.
pub fn classify_orbits(spec: &GroupSpec, chi: &Cochar, field: &Gf) -> Result<OrbitTable> {
    chi.validate_for(spec)?;
    let (packer, keys) = enumerate_keys(spec, field)?;
    let gens: Vec<(Matrix<FfElem>, Matrix<FfElem>)> = zip_generators(spec, chi, field)
        .into_iter()
        .map(|z| Ok((z.gplus, z.gminus.inverse(field)?)))
        .collect::<Result<_>>()?;
    let mut member: HashMap<u128, usize> = HashMap::with_capacity(keys.len());
    let mut orbits = Vec::new();
    for &k in &keys {
        if member.contains_key(&k) {
            continue;
        }
        let id = orbits.len();
        let start = packer.unpack(k);
        member.insert(k, id);
        let mut size = 1;
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(g) = queue.pop_front() {
            for (a, binv) in &gens {
                let h = a.mul(field, &g).mul(field, binv);
                let hk = packer.pack(&h);
                if let std::collections::hash_map::Entry::Vacant(e) = member.entry(hk) {
                    e.insert(id);
                    size += 1;
                    queue.push_back(h);
                }
            }
        }
        orbits.push(Orbit { rep: start, size });
    }
    if member.len() != keys.len() {
        return Err(AlgError::NotInGroup("zip action left the group".into()));
    }
    Ok(OrbitTable { spec: *spec, chi: chi.clone(), field: field.clone(), orbits, geometric: None, packer, member })
}

/// The canonical label of `g`'s orbit, with its geometric class and Weyl
/// label when resolved.
pub fn zeta_class(g: &Matrix<FfElem>, table: &OrbitTable) -> Result<ZetaLabel> {
    let orbit = table
        .orbit_of(g)
        .ok_or_else(|| AlgError::NotInGroup("matrix is not in the tabulated group".into()))?;
    let (class, weyl) = match &table.geometric {
        Some(geo) => {
            let c = geo.class_of_orbit[orbit];
            (Some(c), geo.class_labels[c])
        }
        None => (None, None),
    };
    Ok(ZetaLabel { orbit, rep: table.orbits[orbit].rep.clone(), class, weyl })
}

/// A witness `(A, B) ∈ E_χ(F_{q^r})` with `A·g1·B⁻¹ = g2`.
#[derive(Clone, Debug)]
pub struct Transporter {
    pub field: Gf,
    pub pair: ZipPair<FfElem>,
}

/// Kernel basis of a matrix over `F_p` given by rows.
fn kernel_mod_p(mut rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, pr);
        let inv = crate::coeffring::modinv(rows[r][c], p).expect("nonzero mod p");
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for k in 0..ncols {
                    rows[i][k] = (rows[i][k] + (p - f) * rows[r][k]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; ncols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - rows[i][fc]) % p;
            }
            v
        })
        .collect()
}

/// Search `E_χ(F_{q^r})` for an element carrying `g1` to `g2`.
pub fn transporter(
    spec: &GroupSpec,
    chi: &Cochar,
    field: &Gf,
    g1: &Matrix<FfElem>,
    g2: &Matrix<FfElem>,
    r: usize,
) -> Result<Option<Transporter>> {
    let n = spec.n();
    let p = field.p();
    let big = if r == 1 { field.clone() } else { Gf::new(p, field.degree() * r)? };
    let emb = field.embedding_into(&big)?;
    let lift = |m: &Matrix<FfElem>| m.map(|x| emb[x.0 as usize]);
    let (g1, g2) = (lift(g1), lift(g2));
    let g2inv = g2.inverse(&big)?;
    let blocks = chi.blocks();
    let d = big.degree();
    let pos: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| blocks[i] <= blocks[j]).collect();
    let cons: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| blocks[i] <= blocks[j]).collect();
    let ncols = pos.len() * d;
    let mut rows = vec![vec![0u64; ncols]; cons.len() * d];
    for (pi, &(i, j)) in pos.iter().enumerate() {
        for c in 0..d {
            let col = pi * d + c;
            let e = big.basis(c);
            let sigma_e = big.frobenius(&e);
            for (ci, &(a, b)) in cons.iter().enumerate() {
                let mut v = big.mul(&big.mul(g2inv.get(a, i), &e), g1.get(j, b));
                if blocks[a] == blocks[b] && (a, b) == (i, j) {
                    v = big.sub(&v, &sigma_e);
                }
                for (k, x) in big.coords(v).into_iter().enumerate() {
                    rows[ci * d + k][col] = x;
                }
            }
        }
    }
    let basis = kernel_mod_p(rows, ncols, p);
    if basis.is_empty() {
        return Ok(None);
    }
    // Echelonize with Levi coordinates leading: rows with a Levi pivot span a
    // complement, the rest only move the unipotent block.
    let levi_cols: Vec<usize> =
        (0..ncols).filter(|&c| blocks[pos[c / d].0] == blocks[pos[c / d].1]).collect();
    let (lead, fiber) = split_by_columns(basis, &levi_cols, p);
    let size = (p as u128).checked_pow(lead.len() as u32).unwrap_or(u128::MAX);
    if size > KERNEL_GUARD {
        return Err(AlgError::GuardExceeded { what: "transporter kernel".into(), size, limit: KERNEL_GUARD });
    }
    let to_matrix = |v: &[u64]| {
        let mut m = Matrix::zeros(&big, n, n);
        for (pi, &(i, j)) in pos.iter().enumerate() {
            m.set(i, j, big.from_coords(&v[pi * d..(pi + 1) * d]));
        }
        m
    };
    let fiber_mats: Vec<Matrix<FfElem>> = fiber.iter().map(|v| to_matrix(v)).collect();
    let mut cur = vec![0u64; ncols];
    let mut digits = vec![0u64; lead.len()];
    loop {
        let mut t = 0;
        loop {
            if t == digits.len() {
                return Ok(None);
            }
            for (x, y) in cur.iter_mut().zip(&lead[t]) {
                *x = (*x + y) % p;
            }
            digits[t] += 1;
            if digits[t] < p {
                break;
            }
            digits[t] = 0;
            t += 1;
        }
        let a0 = to_matrix(&cur);
        if big.is_zero(&a0.det(&big)) {
            continue;
        }
        let Some(a) = complete_in_group(spec, &big, &a0, &fiber_mats)? else { continue };
        let b = g2inv.mul(&big, &a).mul(&big, &g1);
        debug_assert!(crate::grp::parabolic_membership(chi, &big, &b, Part::PMinus));
        debug_assert!(levi_component(chi, &big, &b)
            .ring_eq(&big, &crate::grp::frobenius_twist(&big, &levi_component(chi, &big, &a))));
        return Ok(Some(Transporter { field: big, pair: ZipPair { gplus: a, gminus: b } }));
    }
}

/// Row-reduce `vecs` with the given columns leading; returns the rows with a
/// pivot among `cols` and the rows vanishing on `cols`.
fn split_by_columns(mut vecs: Vec<Vec<u64>>, cols: &[usize], p: u64) -> (Vec<Vec<u64>>, Vec<Vec<u64>>) {
    let mut r = 0;
    for &c in cols {
        let Some(pr) = (r..vecs.len()).find(|&i| vecs[i][c] != 0) else { continue };
        vecs.swap(r, pr);
        let inv = crate::coeffring::modinv(vecs[r][c], p).expect("nonzero mod p");
        for x in vecs[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..vecs.len() {
            if i != r && vecs[i][c] != 0 {
                let f = vecs[i][c];
                let pivot = vecs[r].clone();
                for (x, y) in vecs[i].iter_mut().zip(&pivot) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        r += 1;
    }
    let fiber = vecs.split_off(r);
    (vecs, fiber)
}

/// Some `a0 + Σ x_k·f_k` in `G`, where the `f_k` only touch the unipotent
/// block. Membership is affine in the `x_k` since the block squares to zero
/// against the form.
fn complete_in_group(
    spec: &GroupSpec,
    big: &Gf,
    a0: &Matrix<FfElem>,
    fiber: &[Matrix<FfElem>],
) -> Result<Option<Matrix<FfElem>>> {
    let Some(form) = spec.form() else {
        return Ok(if membership(spec, big, a0)? { Some(a0.clone()) } else { None });
    };
    let n = spec.n();
    let form = Matrix::from_ints(big, &form);
    let defect = |a: &Matrix<FfElem>| {
        let m = a.transpose().mul(big, &form).mul(big, a);
        let c = *m.get(0, n - 1);
        m.sub(big, &form.scale(big, &c))
    };
    let base = defect(a0);
    if base.is_zero_matrix(big) {
        return Ok(Some(a0.clone()));
    }
    let d = big.degree();
    let p = big.p();
    let flatten = |m: &Matrix<FfElem>| m.entries().iter().flat_map(|&x| big.coords(x)).collect::<Vec<u64>>();
    let mut cols: Vec<Vec<u64>> = Vec::with_capacity(fiber.len() * d);
    for f in fiber {
        for c in 0..d {
            let step = f.scale(big, &big.basis(c));
            cols.push(flatten(&defect(&a0.add(big, &step)).sub(big, &base)));
        }
    }
    let rhs: Vec<u64> = flatten(&base).into_iter().map(|x| (p - x) % p).collect();
    let Some(x) = solve_mod_p(&cols, &rhs, p) else { return Ok(None) };
    let mut a = a0.clone();
    for (k, f) in fiber.iter().enumerate() {
        let coef = big.from_coords(&x[k * d..(k + 1) * d]);
        a = a.add(big, &f.scale(big, &coef));
    }
    Ok(if membership(spec, big, &a)? { Some(a) } else { None })
}

/// A solution of `Σ x_k·cols[k] = rhs` over `F_p`.
fn solve_mod_p(cols: &[Vec<u64>], rhs: &[u64], p: u64) -> Option<Vec<u64>> {
    let m = rhs.len();
    let k = cols.len();
    let mut rows: Vec<Vec<u64>> = (0..m).map(|i| cols.iter().map(|c| c[i]).chain([rhs[i]]).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(pr) = (r..m).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, pr);
        let inv = crate::coeffring::modinv(rows[r][c], p).expect("nonzero mod p");
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| row[k] != 0) {
        return None;
    }
    let mut x = vec![0u64; k];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][k];
    }
    Some(x)
}

/// Whether `g1` and `g2` are related by `E_χ(F_{q^r})` for some `r ≤ rmax`.
pub fn geometric_equal(
    spec: &GroupSpec,
    chi: &Cochar,
    field: &Gf,
    g1: &Matrix<FfElem>,
    g2: &Matrix<FfElem>,
    rmax: usize,
) -> Result<bool> {
    for r in 1..=rmax {
        if transporter(spec, chi, field, g1, g2, r)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut y = x;
    while parent[y] != root {
        let next = parent[y];
        parent[y] = root;
        y = next;
    }
    root
}

/// Merge orbits that become equal over extensions of degree `≤ rmax` and
/// attach Weyl labels through `π`.
pub fn resolve_geometric(table: &mut OrbitTable, weyl: &WeylGroup, j: &JSubset, rmax: usize) -> Result<()> {
    let k = table.orbits.len();
    let mut parent: Vec<usize> = (0..k).collect();
    let mut counts_by_r = Vec::with_capacity(rmax);
    for r in 1..=rmax {
        for a in 0..k {
            for b in a + 1..k {
                if find(&mut parent, a) == find(&mut parent, b) {
                    continue;
                }
                let (g1, g2) = (&table.orbits[a].rep, &table.orbits[b].rep);
                if transporter(&table.spec, &table.chi, &table.field, g1, g2, r)?.is_some() {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        counts_by_r.push((0..k).filter(|&x| find(&mut parent, x) == x).count());
    }
    let mut class_id = vec![usize::MAX; k];
    let mut next = 0;
    let mut class_of_orbit = vec![0; k];
    for o in 0..k {
        let root = find(&mut parent, o);
        if class_id[root] == usize::MAX {
            class_id[root] = next;
            next += 1;
        }
        class_of_orbit[o] = class_id[root];
    }
    let mut class_labels = vec![None; next];
    let mut pi_orbits = Vec::new();
    for w in weyl.enum_jw(j) {
        let g = pi_rep(weyl, &table.spec, j, &table.field, w)?;
        let o = table.orbit_of(&g).ok_or_else(|| AlgError::NotInGroup("pi representative".into()))?;
        pi_orbits.push((w, o));
        class_labels[class_of_orbit[o]].get_or_insert(w);
    }
    let last = counts_by_r.last().copied();
    let stabilized_at = counts_by_r.iter().position(|&c| Some(c) == last).map_or(0, |i| i + 1);
    table.geometric =
        Some(GeometricResolution { rmax, class_of_orbit, counts_by_r, stabilized_at, pi_orbits, class_labels });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gl2_f2() -> (GroupSpec, Cochar, Gf) {
        (GroupSpec::GL(2), Cochar::new(vec![1, 0]).unwrap(), Gf::prime(2).unwrap())
    }

    /// Orbits by brute force over the whole zip group.
    fn brute_orbits(spec: &GroupSpec, chi: &Cochar, f: &Gf) -> Vec<usize> {
        let g = enumerate_group(spec, f).unwrap();
        let zips: Vec<ZipPair<FfElem>> = g
            .iter()
            .flat_map(|a| g.iter().map(move |b| ZipPair { gplus: a.clone(), gminus: b.clone() }))
            .filter(|z| crate::grp::zip_membership(f, z, chi))
            .collect();
        let mut done = vec![false; g.len()];
        let mut sizes = Vec::new();
        for i in 0..g.len() {
            if done[i] {
                continue;
            }
            let mut size = 0;
            for (k, h) in g.iter().enumerate() {
                let hit = zips.iter().any(|z| z.gplus.mul(f, &g[i]).mul(f, &z.gminus.inverse(f).unwrap()) == *h);
                if hit && !done[k] {
                    done[k] = true;
                    size += 1;
                }
            }
            sizes.push(size);
        }
        sizes.sort_unstable();
        sizes
    }

    #[test]
    fn group_orders_match_enumeration() {
        let f2 = Gf::prime(2).unwrap();
        let f3 = Gf::prime(3).unwrap();
        let f4 = Gf::new(2, 2).unwrap();
        for (spec, f) in [
            (GroupSpec::GL(2), &f2),
            (GroupSpec::GL(2), &f3),
            (GroupSpec::GL(2), &f4),
            (GroupSpec::SL(2), &f3),
            (GroupSpec::GL(3), &f2),
            (GroupSpec::GSp(4), &f2),
        ] {
            let g = enumerate_group(&spec, f).unwrap();
            assert_eq!(g.len() as u128, group_order(&spec, f.order() as u64), "{spec}");
            assert!(g.iter().all(|m| membership(&spec, f, m).unwrap()));
        }
        assert_eq!(group_order(&GroupSpec::GSp(4), 3), 103_680);
    }

    #[test]
    fn packing_roundtrip_and_order() {
        let f = Gf::prime(3).unwrap();
        let pk = MatrixPacker::new(2, 3).unwrap();
        let a = Matrix::from_rows(vec![vec![FfElem(0), FfElem(2)], vec![FfElem(1), FfElem(0)]]).unwrap();
        let b = Matrix::from_rows(vec![vec![FfElem(1), FfElem(0)], vec![FfElem(0), FfElem(0)]]).unwrap();
        assert_eq!(pk.unpack(pk.pack(&a)), a);
        assert!(pk.pack(&a) < pk.pack(&b));
        assert_eq!(pk.pack(&Matrix::zeros(&f, 2, 2)), 0);
    }

    #[test]
    fn zip_act_examples() {
        let (spec, chi, f) = gl2_f2();
        let id = Matrix::identity(&f, 2);
        let u = Matrix::from_rows(vec![vec![f.one(), f.one()], vec![f.zero(), f.one()]]).unwrap();
        let z = ZipPair { gplus: u.clone(), gminus: id.clone() };
        assert_eq!(zip_act(&f, &spec, &chi, &z, &id).unwrap(), u);
        assert_eq!(zip_act(&f, &spec, &chi, &ZipPair::identity(&f, 2), &u).unwrap(), u);
        let bad = ZipPair { gplus: id.clone(), gminus: u.clone() };
        assert!(zip_act(&f, &spec, &chi, &bad, &id).is_err());
    }

    #[test]
    fn action_composes() {
        let spec = GroupSpec::GSp(4);
        let chi = Cochar::new(vec![1, 1, 0, 0]).unwrap();
        let f = Gf::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let z1 = random_zip_element(&spec, &chi, &f, &mut rng);
            let z2 = random_zip_element(&spec, &chi, &f, &mut rng);
            let g = crate::grp::random_group_element(&spec, &f, &mut rng);
            let lhs = zip_act(&f, &spec, &chi, &z1, &zip_act(&f, &spec, &chi, &z2, &g).unwrap()).unwrap();
            let rhs = zip_act(&f, &spec, &chi, &z1.mul(&f, &z2), &g).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn gl2_f2_orbits() {
        let (spec, chi, f) = gl2_f2();
        let t = classify_orbits(&spec, &chi, &f).unwrap();
        let mut sizes: Vec<usize> = t.orbits.iter().map(|o| o.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 4]);
        assert_eq!(sizes, brute_orbits(&spec, &chi, &f));
        let id = Matrix::identity(&f, 2);
        let w0 = Matrix::from_rows(vec![vec![f.zero(), f.one()], vec![f.one(), f.zero()]]).unwrap();
        assert_eq!(t.orbits[zeta_class(&id, &t).unwrap().orbit].size, 4);
        assert_eq!(t.orbits[zeta_class(&w0, &t).unwrap().orbit].size, 2);
        assert!(!geometric_equal(&spec, &chi, &f, &id, &w0, 3).unwrap());
        assert!(geometric_equal(&spec, &chi, &f, &id, &id, 1).unwrap());
    }

    #[test]
    fn orbits_match_brute_force() {
        let f2 = Gf::prime(2).unwrap();
        let f3 = Gf::prime(3).unwrap();
        for (spec, w, f) in [
            (GroupSpec::GL(2), vec![0, 0], &f2),
            (GroupSpec::GL(2), vec![1, 0], &f3),
            (GroupSpec::SL(2), vec![1, 0], &f3),
            (GroupSpec::GL(3), vec![1, 1, 0], &f2),
        ] {
            let chi = Cochar::new(w).unwrap();
            let t = classify_orbits(&spec, &chi, f).unwrap();
            let mut sizes: Vec<usize> = t.orbits.iter().map(|o| o.size).collect();
            sizes.sort_unstable();
            assert_eq!(sizes, brute_orbits(&spec, &chi, f), "{spec}");
            assert_eq!(sizes.iter().sum::<usize>() as u128, group_order(&spec, f.order() as u64));
        }
    }

    #[test]
    fn twisted_conjugacy_collapses_geometrically() {
        let f = Gf::prime(2).unwrap();
        let spec = GroupSpec::GL(2);
        let chi = Cochar::new(vec![0, 0]).unwrap();
        let mut t = classify_orbits(&spec, &chi, &f).unwrap();
        assert_eq!(t.orbits.len(), 3);
        let w = WeylGroup::of_group(&spec).unwrap();
        let j = JSubset::from_weights(&w.weyl_type(), chi.weights()).unwrap();
        resolve_geometric(&mut t, &w, &j, 3).unwrap();
        assert_eq!(t.geometric.as_ref().unwrap().class_count(), 1);
    }

    #[test]
    fn transporter_witness_is_valid() {
        let spec = GroupSpec::GL(2);
        let chi = Cochar::new(vec![1, 0]).unwrap();
        let f = Gf::prime(3).unwrap();
        let t = classify_orbits(&spec, &chi, &f).unwrap();
        for a in 0..t.orbits.len() {
            for b in 0..t.orbits.len() {
                for r in 1..=2 {
                    let (g1, g2) = (&t.orbits[a].rep, &t.orbits[b].rep);
                    if let Some(w) = transporter(&spec, &chi, &f, g1, g2, r).unwrap() {
                        let big = &w.field;
                        assert!(crate::grp::zip_membership(big, &w.pair, &chi));
                        let emb = f.embedding_into(big).unwrap();
                        let g1b = g1.map(|x| emb[x.0 as usize]);
                        let g2b = g2.map(|x| emb[x.0 as usize]);
                        assert_eq!(zip_act(big, &spec, &chi, &w.pair, &g1b).unwrap(), g2b);
                    }
                    if a == b {
                        assert!(transporter(&spec, &chi, &f, &t.orbits[a].rep, &t.orbits[b].rep, r).unwrap().is_some());
                    }
                }
            }
        }
    }

    #[test]
    fn zeta_is_constant_on_orbits() {
        let spec = GroupSpec::GL(3);
        let chi = Cochar::new(vec![1, 1, 0]).unwrap();
        let f = Gf::prime(2).unwrap();
        let t = classify_orbits(&spec, &chi, &f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for o in 0..t.orbits.len() {
            for g in t.members(o) {
                let z = random_zip_element(&spec, &chi, &f, &mut rng);
                let h = zip_act(&f, &spec, &chi, &z, &g).unwrap();
                assert_eq!(zeta_class(&h, &t).unwrap(), zeta_class(&g, &t).unwrap());
                assert_eq!(zeta_class(&g, &t).unwrap().rep, t.orbits[o].rep);
            }
        }
    }
}
