//! The classical groups `GL_n`, `SL_n`, `GSp_2g`, cocharacters as weight
//! vectors, parabolic block patterns, zip pairs, and sampling of group
//! elements over coefficient and series rings.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng as RandRng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coeffring::Ring;
use crate::error::{AlgError, Result};
use crate::matrix::Matrix;
use crate::series::{MatSeries, SeriesRing};

/// A split classical group with its standard representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupSpec {
    GL(usize),
    SL(usize),
    /// Symplectic similitudes of size `2g`, stored as the matrix size.
    GSp(usize),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::GL(n) => write!(f, "gl:{n}"),
            GroupSpec::SL(n) => write!(f, "sl:{n}"),
            GroupSpec::GSp(n) => write!(f, "gsp:{n}"),
        }
    }
}

/// One root subgroup: `x(c) = I + c·X` with `X` a signed 0/1 pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub i: usize,
    pub j: usize,
    pub pattern: Vec<(usize, usize, i64)>,
}

impl GroupSpec {
    pub fn gl(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(AlgError::InvalidParameter("GL needs n >= 1".into()));
        }
        Ok(GroupSpec::GL(n))
    }

    pub fn sl(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(AlgError::InvalidParameter("SL needs n >= 1".into()));
        }
        Ok(GroupSpec::SL(n))
    }

    pub fn gsp(n: usize) -> Result<Self> {
        if n == 0 || !n.is_multiple_of(2) {
            return Err(AlgError::InvalidParameter(format!("GSp needs an even positive size, got {n}")));
        }
        Ok(GroupSpec::GSp(n))
    }

    pub fn n(&self) -> usize {
        match *self {
            GroupSpec::GL(n) | GroupSpec::SL(n) | GroupSpec::GSp(n) => n,
        }
    }

    /// The antidiagonal symplectic form: `+1` in the upper half, `-1` below.
    pub fn form(&self) -> Option<Matrix<i64>> {
        match *self {
            GroupSpec::GSp(n) => Some(Matrix::from_fn(n, n, |i, j| {
                if j == n - 1 - i {
                    if i < n / 2 {
                        1
                    } else {
                        -1
                    }
                } else {
                    0
                }
            })),
            _ => None,
        }
    }

    /// Root subgroups, one per root.
    pub fn roots(&self) -> Vec<Root> {
        let n = self.n();
        let mut out = Vec::new();
        match self {
            GroupSpec::GL(_) | GroupSpec::SL(_) => {
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            out.push(Root { i, j, pattern: vec![(i, j, 1)] });
                        }
                    }
                }
            }
            GroupSpec::GSp(_) => {
                let form = self.form().unwrap();
                let bar = |k: usize| n - 1 - k;
                for i in 0..n {
                    for j in 0..n {
                        if i == j {
                            continue;
                        }
                        if j == bar(i) {
                            out.push(Root { i, j, pattern: vec![(i, j, 1)] });
                            continue;
                        }
                        if (bar(j), bar(i)) < (i, j) {
                            continue;
                        }
                        for s in [1i64, -1] {
                            let pattern = vec![(i, j, 1), (bar(j), bar(i), s)];
                            if in_symplectic_lie_algebra(&form, &pattern) {
                                out.push(Root { i, j, pattern });
                                break;
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Number of torus parameters accepted by [`torus_element`].
    pub fn torus_rank(&self) -> usize {
        match *self {
            GroupSpec::GL(n) => n,
            GroupSpec::SL(n) => n - 1,
            GroupSpec::GSp(n) => n / 2 + 1,
        }
    }

    pub fn is_symplectic(&self) -> bool {
        matches!(self, GroupSpec::GSp(_))
    }
}

fn in_symplectic_lie_algebra(form: &Matrix<i64>, pattern: &[(usize, usize, i64)]) -> bool {
    let n = form.rows();
    let x = Matrix::from_fn(n, n, |a, b| {
        pattern.iter().filter(|&&(i, j, _)| (i, j) == (a, b)).map(|&(_, _, s)| s).sum::<i64>()
    });
    let mul = |a: &Matrix<i64>, b: &Matrix<i64>| {
        Matrix::from_fn(n, n, |i, j| (0..n).map(|k| a.get(i, k) * b.get(k, j)).sum::<i64>())
    };
    let lhs = mul(&x.transpose(), form);
    let rhs = mul(form, &x);
    (0..n).all(|i| (0..n).all(|j| lhs.get(i, j) + rhs.get(i, j) == 0))
}

/// `I + c·X` for a root pattern `X`.
pub fn root_element<R: Ring>(ring: &R, n: usize, root: &Root, c: &R::Elem) -> Matrix<R::Elem> {
    let mut m = Matrix::identity(ring, n);
    for &(i, j, s) in &root.pattern {
        let v = ring.mul(&ring.from_int(s), c);
        let old = m.get(i, j).clone();
        m.set(i, j, ring.add(&old, &v));
    }
    m
}

/// Diagonal torus element from `spec.torus_rank()` unit parameters.
pub fn torus_element<R: Ring>(spec: &GroupSpec, ring: &R, params: &[R::Elem]) -> Result<Matrix<R::Elem>> {
    if params.len() != spec.torus_rank() {
        return Err(AlgError::SizeMismatch { expected: spec.torus_rank(), got: params.len() });
    }
    let n = spec.n();
    let d: Vec<R::Elem> = match spec {
        GroupSpec::GL(_) => params.to_vec(),
        GroupSpec::SL(_) => {
            let mut d = vec![ring.one(); n];
            for (i, t) in params.iter().enumerate() {
                d[i] = ring.mul(&d[i], t);
                d[i + 1] = ring.mul(&d[i + 1], &ring.inv(t)?);
            }
            d
        }
        GroupSpec::GSp(_) => {
            let g = n / 2;
            let c = &params[g];
            let mut d = vec![ring.one(); n];
            for i in 0..g {
                d[i] = params[i].clone();
                d[n - 1 - i] = ring.mul(c, &ring.inv(&params[i])?);
            }
            d
        }
    };
    Ok(Matrix::diag(ring, &d))
}

/// For `GSp`: the unit `c` with `MᵀJM = cJ`, if any.
pub fn similitude<R: Ring>(spec: &GroupSpec, ring: &R, m: &Matrix<R::Elem>) -> Option<R::Elem> {
    let form = Matrix::from_ints(ring, &spec.form()?);
    let n = spec.n();
    let lhs = m.transpose().mul(ring, &form).mul(ring, m);
    let c = lhs.get(0, n - 1).clone();
    if !ring.is_unit(&c) {
        return None;
    }
    if lhs.ring_eq(ring, &form.scale(ring, &c)) {
        Some(c)
    } else {
        None
    }
}

/// Membership in `G(A)`: unit determinant (GL), determinant one (SL),
/// or `MᵀJM = cJ` with `c` a unit (GSp).
pub fn membership<R: Ring>(spec: &GroupSpec, ring: &R, m: &Matrix<R::Elem>) -> Result<bool> {
    let n = spec.n();
    if m.rows() != n || m.cols() != n {
        return Err(AlgError::SizeMismatch { expected: n, got: m.rows().max(m.cols()) });
    }
    Ok(match spec {
        GroupSpec::GL(_) => ring.is_unit(&m.det(ring)),
        GroupSpec::SL(_) => ring.is_one(&m.det(ring)) || ring.is_zero(&ring.sub(&m.det(ring), &ring.one())),
        GroupSpec::GSp(_) => similitude(spec, ring, m).is_some(),
    })
}

/// A cocharacter of the diagonal torus, as descending integer weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cochar {
    weights: Vec<i64>,
}

impl Cochar {
    pub fn new(weights: Vec<i64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(AlgError::InvalidParameter("cocharacter needs at least one weight".into()));
        }
        if weights.windows(2).any(|w| w[0] < w[1]) {
            return Err(AlgError::InvalidParameter(format!("weights {weights:?} are not descending")));
        }
        Ok(Cochar { weights })
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn max_weight(&self) -> i64 {
        self.weights[0]
    }

    /// Number of entries equal to the top weight.
    pub fn top_block_size(&self) -> usize {
        self.weights.iter().take_while(|&&a| a == self.weights[0]).count()
    }

    /// Block index of every coordinate (0 for the highest weight).
    pub fn blocks(&self) -> Vec<usize> {
        let mut b = Vec::with_capacity(self.weights.len());
        let mut cur = 0;
        for k in 0..self.weights.len() {
            if k > 0 && self.weights[k] != self.weights[k - 1] {
                cur += 1;
            }
            b.push(cur);
        }
        b
    }

    /// Check that the cocharacter is usable for zip data in `spec`.
    pub fn validate_for(&self, spec: &GroupSpec) -> Result<()> {
        let n = spec.n();
        if self.weights.len() != n {
            return Err(AlgError::SizeMismatch { expected: n, got: self.weights.len() });
        }
        if self.weights.iter().any(|&a| a != 0 && a != 1) {
            return Err(AlgError::InvalidParameter("weights must be 0 or 1".into()));
        }
        if spec.is_symplectic() {
            for i in 0..n {
                if self.weights[i] + self.weights[n - 1 - i] != 1 {
                    return Err(AlgError::InvalidParameter(
                        "symplectic weights must pair to 1 (use 1^g 0^g)".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Sign of the root through `(i, j)` against the cocharacter.
    pub fn root_weight(&self, root: &Root) -> i64 {
        self.weights[root.i] - self.weights[root.j]
    }
}

/// Parts of the parabolic decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Part {
    PPlus,
    PMinus,
    UPlus,
    UMinus,
    Levi,
}

/// Block-pattern test: `P₊` block upper, `P₋` block lower, `U_±` strictly
/// block unitriangular, Levi block diagonal.
pub fn parabolic_membership<R: Ring>(chi: &Cochar, ring: &R, m: &Matrix<R::Elem>, part: Part) -> bool {
    let b = chi.blocks();
    let n = b.len();
    if m.rows() != n || m.cols() != n {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            let x = m.get(i, j);
            let ok = match part {
                Part::PPlus => b[i] <= b[j] || ring.is_zero(x),
                Part::PMinus => b[i] >= b[j] || ring.is_zero(x),
                Part::Levi => b[i] == b[j] || ring.is_zero(x),
                Part::UPlus | Part::UMinus => {
                    let off = if part == Part::UPlus { b[i] > b[j] } else { b[i] < b[j] };
                    if off {
                        ring.is_zero(x)
                    } else if b[i] == b[j] {
                        if i == j {
                            ring.is_zero(&ring.sub(x, &ring.one()))
                        } else {
                            ring.is_zero(x)
                        }
                    } else {
                        true
                    }
                }
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Block-diagonal part of `m`.
pub fn levi_component<R: Ring>(chi: &Cochar, ring: &R, m: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let b = chi.blocks();
    Matrix::from_fn(m.rows(), m.cols(), |i, j| if b[i] == b[j] { m.get(i, j).clone() } else { ring.zero() })
}

/// An element `(g₊, g₋)` of the zip group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZipPair<E> {
    pub gplus: Matrix<E>,
    pub gminus: Matrix<E>,
}

impl<E: Clone> ZipPair<E> {
    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        ZipPair { gplus: Matrix::identity(ring, n), gminus: Matrix::identity(ring, n) }
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        ZipPair { gplus: self.gplus.mul(ring, &other.gplus), gminus: self.gminus.mul(ring, &other.gminus) }
    }

    pub fn inverse<R: Ring<Elem = E>>(&self, ring: &R) -> Result<Self> {
        Ok(ZipPair { gplus: self.gplus.inverse(ring)?, gminus: self.gminus.inverse(ring)? })
    }
}

/// `g₊ ∈ P₊`, `g₋ ∈ P₋`, and the Levi part of `g₋` is the Frobenius twist
/// of the Levi part of `g₊`.
pub fn zip_membership<R: Ring>(ring: &R, z: &ZipPair<R::Elem>, chi: &Cochar) -> bool {
    parabolic_membership(chi, ring, &z.gplus, Part::PPlus)
        && parabolic_membership(chi, ring, &z.gminus, Part::PMinus)
        && levi_component(chi, ring, &z.gminus)
            .ring_eq(ring, &frobenius_twist(ring, &levi_component(chi, ring, &z.gplus)))
}

/// Entrywise Frobenius.
pub fn frobenius_twist<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    m.map(|x| ring.frobenius(x))
}

/// `μ(u) = diag(u^(p·a_i))`.
pub fn mu_matrix<R: Ring>(chi: &Cochar, p: u64, ring: &SeriesRing<R>) -> Result<MatSeries<R::Elem>> {
    let top = p as i64 * chi.max_weight();
    if top >= ring.order() as i64 {
        return Err(AlgError::WindowTooSmall { needed: top as usize, have: ring.order() });
    }
    let d: Vec<_> = chi.weights().iter().map(|&a| ring.monomial(ring.base().one(), p as i64 * a)).collect();
    Ok(Matrix::diag(ring, &d))
}

/// A random element of `G(A)`: root-subgroup factors with random
/// coefficients over two shuffled passes, then a random torus element.
pub fn random_group_element<R: Ring, G: RandRng + ?Sized>(spec: &GroupSpec, ring: &R, rng: &mut G) -> Matrix<R::Elem> {
    let n = spec.n();
    let roots = spec.roots();
    let mut m = Matrix::identity(ring, n);
    for _ in 0..2 {
        let mut order: Vec<usize> = (0..roots.len()).collect();
        order.shuffle(rng);
        for k in order {
            let c = ring.random(rng);
            m = m.mul(ring, &root_element(ring, n, &roots[k], &c));
        }
    }
    let params: Vec<_> = (0..spec.torus_rank()).map(|_| ring.random_unit(rng)).collect();
    let t = torus_element(spec, ring, &params).expect("unit torus parameters");
    m.mul(ring, &t)
}

/// A seeded element of `K = G(A[u]/u^N)`.
pub fn random_k_element<R: Ring>(spec: &GroupSpec, ring: &SeriesRing<R>, seed: u64) -> MatSeries<R::Elem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_group_element(spec, ring, &mut rng)
}
