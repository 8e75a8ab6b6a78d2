//! Weyl groups of types A and C realized as permutation groups, with lengths,
//! Bruhat order, minimal coset representatives, the twisted order on them,
//! and the representative map into the group.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::coeffring::Ring;
use crate::error::{AlgError, Result};
use crate::grp::GroupSpec;
use crate::matrix::Matrix;

const WEYL_GUARD: u128 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeylType {
    /// `S_{r+1}` acting on `r + 1` points.
    A(usize),
    /// Centrally symmetric permutations of `2g` points.
    C(usize),
}

impl WeylType {
    pub fn of_group(spec: &GroupSpec) -> Self {
        match *spec {
            GroupSpec::GL(n) | GroupSpec::SL(n) => WeylType::A(n - 1),
            GroupSpec::GSp(n) => WeylType::C(n / 2),
        }
    }

    pub fn degree(&self) -> usize {
        match *self {
            WeylType::A(r) => r + 1,
            WeylType::C(g) => 2 * g,
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            WeylType::A(r) => r,
            WeylType::C(g) => g,
        }
    }

    pub fn order(&self) -> u128 {
        let fact = |k: usize| (1..=k as u128).product::<u128>();
        match *self {
            WeylType::A(r) => fact(r + 1),
            WeylType::C(g) => fact(g) << g,
        }
    }

    /// Simple reflections as permutations (images of `0..degree`).
    pub fn simple_reflections(&self) -> Vec<WeylElem> {
        let n = self.degree();
        let swap = |pairs: &[(usize, usize)]| {
            let mut p: Vec<usize> = (0..n).collect();
            for &(a, b) in pairs {
                p.swap(a, b);
            }
            WeylElem { perm: p }
        };
        match *self {
            WeylType::A(r) => (0..r).map(|i| swap(&[(i, i + 1)])).collect(),
            WeylType::C(g) => {
                let mut out: Vec<WeylElem> =
                    (0..g.saturating_sub(1)).map(|i| swap(&[(i, i + 1), (n - 1 - i, n - 2 - i)])).collect();
                if g > 0 {
                    out.push(swap(&[(g - 1, g)]));
                }
                out
            }
        }
    }
}

/// A permutation `w` of `0..n`, acting on basis vectors by `e_i ↦ e_{w(i)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylElem {
    pub perm: Vec<usize>,
}

impl WeylElem {
    pub fn identity(n: usize) -> Self {
        WeylElem { perm: (0..n).collect() }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        WeylElem { perm: other.perm.iter().map(|&i| self.perm[i]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &w) in self.perm.iter().enumerate() {
            inv[w] = i;
        }
        WeylElem { perm: inv }
    }

    pub fn sign(&self) -> i64 {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut s = 1;
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.perm[j];
                len += 1;
            }
            if len % 2 == 0 {
                s = -s;
            }
        }
        s
    }
}

/// A set of simple reflections, by 0-based index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct JSubset {
    pub simples: BTreeSet<usize>,
}

impl JSubset {
    pub fn new(simples: impl IntoIterator<Item = usize>) -> Self {
        JSubset { simples: simples.into_iter().collect() }
    }

    pub fn contains(&self, s: usize) -> bool {
        self.simples.contains(&s)
    }

    /// Simple reflections preserving a weight vector.
    pub fn from_weights(ty: &WeylType, weights: &[i64]) -> Result<Self> {
        if weights.len() != ty.degree() {
            return Err(AlgError::SizeMismatch { expected: ty.degree(), got: weights.len() });
        }
        let simples = ty
            .simple_reflections()
            .iter()
            .enumerate()
            .filter(|(_, s)| (0..weights.len()).all(|i| weights[s.perm[i]] == weights[i]))
            .map(|(k, _)| k)
            .collect();
        Ok(JSubset { simples })
    }
}

/// The full group with Cayley tables for simple reflections.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    ty: WeylType,
    simples: Vec<WeylElem>,
    elements: Vec<WeylElem>,
    index: HashMap<Vec<usize>, usize>,
    length: Vec<usize>,
    word: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
    left: Vec<Vec<usize>>,
    w0: usize,
}

impl WeylGroup {
    pub fn new(ty: WeylType) -> Result<Self> {
        let size = ty.order();
        if size > WEYL_GUARD {
            return Err(AlgError::GuardExceeded { what: "Weyl group".into(), size, limit: WEYL_GUARD });
        }
        let n = ty.degree();
        let simples = ty.simple_reflections();
        let id = WeylElem::identity(n);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id.perm.clone(), 0);
        let mut length = vec![0];
        let mut word = vec![vec![]];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (k, s) in simples.iter().enumerate() {
                let y = elements[x].compose(s);
                if !index.contains_key(&y.perm) {
                    let id = elements.len();
                    index.insert(y.perm.clone(), id);
                    length.push(length[x] + 1);
                    let mut w = word[x].clone();
                    w.push(k);
                    word.push(w);
                    elements.push(y);
                    queue.push_back(id);
                }
            }
        }
        let right = elements
            .iter()
            .map(|x| simples.iter().map(|s| index[&x.compose(s).perm]).collect())
            .collect();
        let left = elements
            .iter()
            .map(|x| simples.iter().map(|s| index[&s.compose(x).perm]).collect())
            .collect();
        let w0 = (0..elements.len()).max_by_key(|&i| length[i]).unwrap_or(0);
        Ok(WeylGroup { ty, simples, elements, index, length, word, right, left, w0 })
    }

    pub fn of_group(spec: &GroupSpec) -> Result<Self> {
        Self::new(WeylType::of_group(spec))
    }

    pub fn weyl_type(&self) -> WeylType {
        self.ty
    }
    pub fn size(&self) -> usize {
        self.elements.len()
    }
    pub fn rank(&self) -> usize {
        self.simples.len()
    }
    pub fn element(&self, i: usize) -> &WeylElem {
        &self.elements[i]
    }
    pub fn elements(&self) -> &[WeylElem] {
        &self.elements
    }
    pub fn identity(&self) -> usize {
        0
    }
    pub fn longest(&self) -> usize {
        self.w0
    }
    pub fn length(&self, i: usize) -> usize {
        self.length[i]
    }
    /// A reduced word (0-based simple indices), product read left to right.
    pub fn reduced_word(&self, i: usize) -> &[usize] {
        &self.word[i]
    }
    pub fn simple(&self, k: usize) -> usize {
        self.right[0][k]
    }
    pub fn index_of(&self, w: &WeylElem) -> Option<usize> {
        self.index.get(&w.perm).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b]).perm]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse().perm]
    }

    pub fn from_word(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &k| self.right[acc][k])
    }

    /// Name from the reduced word, `e` for the identity, e.g. `s2s1`.
    pub fn name(&self, i: usize) -> String {
        if self.word[i].is_empty() {
            "e".to_string()
        } else {
            self.word[i].iter().map(|k| format!("s{}", k + 1)).collect()
        }
    }

    pub fn left_descents(&self, w: usize) -> Vec<usize> {
        (0..self.rank()).filter(|&k| self.length[self.left[w][k]] < self.length[w]).collect()
    }

    pub fn right_descents(&self, w: usize) -> Vec<usize> {
        (0..self.rank()).filter(|&k| self.length[self.right[w][k]] < self.length[w]).collect()
    }

    /// Bruhat order via `x ≤ w ⇔ min(x, xs) ≤ ws` for a right descent `s` of `w`.
    pub fn bruhat_leq(&self, x: usize, w: usize) -> bool {
        let (mut x, mut w) = (x, w);
        loop {
            if self.length[x] > self.length[w] {
                return false;
            }
            if self.length[w] == 0 {
                return x == 0;
            }
            let s = (0..self.rank())
                .find(|&k| self.length[self.right[w][k]] < self.length[w])
                .expect("nonidentity element has a right descent");
            w = self.right[w][s];
            let xs = self.right[x][s];
            if self.length[xs] < self.length[x] {
                x = xs;
            }
        }
    }

    /// Elements of the parabolic subgroup `W_J`.
    pub fn parabolic_subgroup(&self, j: &JSubset) -> Vec<usize> {
        let mut seen = vec![false; self.size()];
        let mut out = vec![0];
        seen[0] = true;
        let mut k = 0;
        while k < out.len() {
            let x = out[k];
            for &s in &j.simples {
                let y = self.right[x][s];
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            k += 1;
        }
        out
    }

    /// Longest element of `W_J`.
    pub fn longest_in(&self, j: &JSubset) -> usize {
        self.parabolic_subgroup(j).into_iter().max_by_key(|&i| self.length[i]).unwrap_or(0)
    }

    /// `x_J = w₀·w_{0,J}`.
    pub fn x_j(&self, j: &JSubset) -> usize {
        self.mul(self.w0, self.longest_in(j))
    }

    /// `w_max = w_{0,J}·w₀`.
    pub fn w_max(&self, j: &JSubset) -> usize {
        self.mul(self.longest_in(j), self.w0)
    }

    pub fn is_min_rep(&self, j: &JSubset, w: usize) -> bool {
        j.simples.iter().all(|&s| self.length[self.left[w][s]] > self.length[w])
    }

    /// Minimal-length representatives of `W_J \ W`, sorted by length then index.
    pub fn enum_jw(&self, j: &JSubset) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.size()).filter(|&w| self.is_min_rep(j, w)).collect();
        v.sort_by_key(|&w| (self.length[w], w));
        v
    }

    /// `w' ⪯ w`: some `y ∈ W_J` has `y⁻¹·w'·x_J·y·x_J⁻¹ ≤ w` (trivial Frobenius on `W`).
    pub fn preceq(&self, j: &JSubset, w1: usize, w2: usize) -> Result<bool> {
        if !self.is_min_rep(j, w1) || !self.is_min_rep(j, w2) {
            return Err(AlgError::NotMinimalRepresentative);
        }
        Ok(self.preceq_unchecked(j, &self.parabolic_subgroup(j), self.x_j(j), w1, w2))
    }

    fn preceq_unchecked(&self, _j: &JSubset, wj: &[usize], xj: usize, w1: usize, w2: usize) -> bool {
        let xj_inv = self.inverse(xj);
        wj.iter().any(|&y| {
            let t = self.mul(self.mul(self.mul(self.inverse(y), w1), self.mul(xj, y)), xj_inv);
            self.bruhat_leq(t, w2)
        })
    }

    /// Signed permutation matrix lifting `w` into `spec`, as integers.
    pub fn lift_int(&self, spec: &GroupSpec, w: usize) -> Matrix<i64> {
        let perm = &self.elements[w].perm;
        let n = perm.len();
        let build = |signs: &[i64]| Matrix::from_fn(n, n, |r, c| if perm[c] == r { signs[c] } else { 0 });
        match spec {
            GroupSpec::GL(_) => build(&vec![1; n]),
            GroupSpec::SL(_) => {
                let mut s = vec![1; n];
                s[0] = self.elements[w].sign();
                build(&s)
            }
            GroupSpec::GSp(_) => {
                let form = spec.form().unwrap();
                let mul = |a: &Matrix<i64>, b: &Matrix<i64>| {
                    Matrix::from_fn(n, n, |i, j| (0..n).map(|k| a.get(i, k) * b.get(k, j)).sum::<i64>())
                };
                for mask in 0u32..(1 << n) {
                    let signs: Vec<i64> = (0..n).map(|i| if mask & (1 << i) != 0 { -1 } else { 1 }).collect();
                    let m = build(&signs);
                    let lhs = mul(&mul(&m.transpose(), &form), &m);
                    let c = *lhs.get(0, n - 1);
                    if c.abs() == 1 && (0..n).all(|i| (0..n).all(|j| *lhs.get(i, j) == c * form.get(i, j))) {
                        return m;
                    }
                }
                unreachable!("every type C permutation has a symplectic signing")
            }
        }
    }

    /// Lift of `w` as a matrix over `ring`.
    pub fn lift<R: Ring>(&self, spec: &GroupSpec, ring: &R, w: usize) -> Matrix<R::Elem> {
        Matrix::from_ints(ring, &self.lift_int(spec, w))
    }
}

/// All elements of the Weyl group of the given type, identity first.
pub fn enumerate_weyl(ty: WeylType) -> Result<Vec<WeylElem>> {
    Ok(WeylGroup::new(ty)?.elements)
}

/// The poset `(^J W, ⪯)` with its Hasse diagram.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StrataPoset {
    /// Indices into the Weyl group.
    pub elements: Vec<usize>,
    pub names: Vec<String>,
    pub lengths: Vec<usize>,
    /// `relation[a][b]` iff `elements[a] ⪯ elements[b]`.
    pub relation: Vec<Vec<bool>>,
    /// Covering pairs `(a, b)` with `a ⪯ b`, as positions in `elements`.
    pub hasse: Vec<(usize, usize)>,
    pub max: usize,
    pub min: usize,
}

/// Build `(^J W, ⪯)`, verify the partial-order axioms and the extremal
/// elements, and compute covering relations.
pub fn strata_poset(w: &WeylGroup, j: &JSubset) -> Result<StrataPoset> {
    let elems = w.enum_jw(j);
    let wj = w.parabolic_subgroup(j);
    let xj = w.x_j(j);
    let k = elems.len();
    let rel: Vec<Vec<bool>> = elems
        .iter()
        .map(|&a| elems.iter().map(|&b| w.preceq_unchecked(j, &wj, xj, a, b)).collect())
        .collect();
    for a in 0..k {
        if !rel[a][a] {
            return Err(AlgError::PosetAxiom(format!("{} is not below itself", w.name(elems[a]))));
        }
        for b in 0..k {
            if a != b && rel[a][b] && rel[b][a] {
                return Err(AlgError::PosetAxiom(format!(
                    "{} and {} are mutually below each other",
                    w.name(elems[a]),
                    w.name(elems[b])
                )));
            }
            for c in 0..k {
                if rel[a][b] && rel[b][c] && !rel[a][c] {
                    return Err(AlgError::PosetAxiom("transitivity fails".into()));
                }
            }
        }
    }
    let wmax = w.w_max(j);
    let max = elems
        .iter()
        .position(|&x| x == wmax)
        .ok_or_else(|| AlgError::PosetAxiom("w_max is not a minimal representative".into()))?;
    let min = elems
        .iter()
        .position(|&x| x == 0)
        .ok_or_else(|| AlgError::PosetAxiom("identity missing".into()))?;
    if !(0..k).all(|a| rel[a][max] && rel[min][a]) {
        return Err(AlgError::PosetAxiom("extremal elements are not extremal".into()));
    }
    let mut hasse = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if a != b && rel[a][b] && !(0..k).any(|c| c != a && c != b && rel[a][c] && rel[c][b]) {
                hasse.push((a, b));
            }
        }
    }
    Ok(StrataPoset {
        names: elems.iter().map(|&x| w.name(x)).collect(),
        lengths: elems.iter().map(|&x| w.length(x)).collect(),
        elements: elems,
        relation: rel,
        hasse,
        max,
        min,
    })
}

/// `π(w) = ẇ·ẇ₀·ẇ_{0,J}` over `ring` (Frobenius fixes signed permutation matrices).
pub fn pi_rep<R: Ring>(w: &WeylGroup, spec: &GroupSpec, j: &JSubset, ring: &R, x: usize) -> Result<Matrix<R::Elem>> {
    if !w.is_min_rep(j, x) {
        return Err(AlgError::NotMinimalRepresentative);
    }
    let a = w.lift(spec, ring, x);
    let b = w.lift(spec, ring, w.longest());
    let c = w.lift(spec, ring, w.longest_in(j));
    Ok(a.mul(ring, &b).mul(ring, &c))
}
