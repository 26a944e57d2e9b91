//! Minimal simplicial models of Eilenberg–MacLane spaces.
//!
//! An `m`-simplex of `E(π,n)` is a normalized `π`-valued `n`-cochain on `Δ^m`; the simplices of
//! `K(π,n)` are the cocycles among them and `δ: E(π,n) -> K(π,n+1)` is the coboundary.

mod expr;

use itertools::Itertools;
use num_bigint::BigInt;

use crate::abelian::{FgAbelian, LinearSystem, Subquotient, IntegerMatrix};
use crate::error::{Error, Result};

pub use expr::{KExpr, KInvariant};

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Position of a strictly increasing vertex list among the `(k-1)`-faces of `Δ^m` in
/// lexicographic order.
pub fn face_rank(m: usize, face: &[usize]) -> usize {
    let k = face.len();
    let mut rank = 0;
    let mut start = 0;
    for (pos, &v) in face.iter().enumerate() {
        for skipped in start..v {
            rank += binomial(m - skipped, k - pos - 1);
        }
        start = v + 1;
    }
    rank
}

/// All `n`-faces of `Δ^m` as increasing vertex lists, in rank order.
pub fn faces(m: usize, n: usize) -> Vec<Vec<usize>> {
    (0..=m).combinations(n + 1).collect()
}

/// A normalized `n`-cochain on `Δ^m` with values in `π = ⊕ Z/q_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EMSimplex {
    m: usize,
    n: usize,
    width: usize,
    values: Vec<i64>,
}

impl EMSimplex {
    pub fn zero(pi: &FgAbelian, n: usize, m: usize) -> Self {
        EMSimplex { m, n, width: pi.rank(), values: vec![0; pi.rank() * binomial(m + 1, n + 1)] }
    }

    /// Builds a cochain from its values on the nondegenerate `n`-faces, reducing into `π`.
    pub fn from_fn(pi: &FgAbelian, n: usize, m: usize, mut f: impl FnMut(&[usize]) -> Vec<i64>) -> Self {
        let mut values = Vec::with_capacity(pi.rank() * binomial(m + 1, n + 1));
        for face in (0..=m).combinations(n + 1) {
            let mut v = f(&face);
            assert_eq!(v.len(), pi.rank(), "value width mismatch");
            pi.reduce(&mut v);
            values.extend(v);
        }
        EMSimplex { m, n, width: pi.rank(), values }
    }

    /// Simplex dimension `m`.
    pub fn dim(&self) -> usize {
        self.m
    }

    /// Cochain degree `n`.
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }

    /// Value on the face spanned by `vertices`; zero when the list repeats a vertex.
    pub fn value(&self, vertices: &[usize]) -> Vec<i64> {
        assert_eq!(vertices.len(), self.n + 1);
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return vec![0; self.width];
        }
        let r = face_rank(self.m, vertices);
        self.values[r * self.width..(r + 1) * self.width].to_vec()
    }

    /// Value on the top face of `Δ^n` (only for `m = n`).
    pub fn top(&self) -> &[i64] {
        assert_eq!(self.m, self.n);
        &self.values[..self.width]
    }

    /// `θ^* c` for a monotone `θ: [k] -> [m]` given by its values.
    pub fn pullback(&self, theta: &[usize], pi: &FgAbelian) -> EMSimplex {
        let k = theta.len() - 1;
        Self::from_fn(pi, self.n, k, |face| {
            let image: Vec<usize> = face.iter().map(|&v| theta[v]).collect();
            self.value(&image)
        })
    }

    pub fn face(&self, i: usize, pi: &FgAbelian) -> Result<EMSimplex> {
        if self.m == 0 || i > self.m {
            return Err(Error::OperatorIndex { index: i, dim: self.m });
        }
        let theta: Vec<usize> = (0..=self.m).filter(|&v| v != i).collect();
        Ok(self.pullback(&theta, pi))
    }

    pub fn degeneracy(&self, i: usize, pi: &FgAbelian) -> Result<EMSimplex> {
        if i > self.m {
            return Err(Error::OperatorIndex { index: i, dim: self.m });
        }
        let theta: Vec<usize> = (0..=self.m + 1).map(|v| if v <= i { v } else { v - 1 }).collect();
        Ok(self.pullback(&theta, pi))
    }

    /// `(δc)(v_0..v_{n+1}) = Σ (-1)^k c(v_0..v̂_k..v_{n+1})`.
    pub fn coboundary(&self, pi: &FgAbelian) -> EMSimplex {
        Self::from_fn(pi, self.n + 1, self.m, |face| {
            let mut acc = vec![0; self.width];
            for k in 0..face.len() {
                let sub: Vec<usize> = face.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &v)| v).collect();
                let sign = if k % 2 == 0 { 1 } else { -1 };
                for (a, x) in acc.iter_mut().zip(self.value(&sub)) {
                    *a += sign * x;
                }
            }
            acc
        })
    }

    pub fn is_cocycle(&self, pi: &FgAbelian) -> bool {
        self.coboundary(pi).is_zero()
    }

    pub fn add(&self, other: &EMSimplex, pi: &FgAbelian) -> EMSimplex {
        assert_eq!((self.m, self.n), (other.m, other.n));
        let mut values: Vec<i64> = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        for chunk in values.chunks_mut(self.width.max(1)) {
            pi.reduce(chunk);
        }
        EMSimplex { values, ..*self }
    }

    pub fn scale(&self, k: i64, pi: &FgAbelian) -> EMSimplex {
        let mut values: Vec<i64> = self.values.iter().map(|a| a * k).collect();
        for chunk in values.chunks_mut(self.width.max(1)) {
            pi.reduce(chunk);
        }
        EMSimplex { values, ..*self }
    }

    pub fn neg(&self, pi: &FgAbelian) -> EMSimplex {
        self.scale(-1, pi)
    }
}

/// The fibration `δ: E(π,n) -> K(π,n+1)`.
pub fn delta_fibration(c: &EMSimplex, pi: &FgAbelian) -> EMSimplex {
    c.coboundary(pi)
}

/// The coboundary `C^n(Δ^m) -> C^{n+1}(Δ^m)` on normalized cochains, one coefficient.
fn simplex_coboundary(m: usize, n: usize) -> IntegerMatrix {
    let mut a = IntegerMatrix::zeros(binomial(m + 1, n + 2), binomial(m + 1, n + 1));
    for (r, face) in faces(m, n + 1).iter().enumerate() {
        for k in 0..face.len() {
            let sub: Vec<usize> = face.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &v)| v).collect();
            a.add_to(r, face_rank(m, &sub), if k % 2 == 0 { 1 } else { -1 });
        }
    }
    a
}

/// The group of `m`-simplices of `K(π,n)`, i.e. `Z^n(Δ^m; π)`.
pub fn count_simplices_k(pi: &FgAbelian, n: usize, m: usize) -> FgAbelian {
    if m < n {
        return FgAbelian::trivial();
    }
    let a = simplex_coboundary(m, n);
    let cols = a.cols();
    let mut orders = Vec::new();
    for &q in pi.orders() {
        let l = LinearSystem::new(&a, &vec![q; a.rows()]).kernel_generators();
        let relations: Vec<Vec<BigInt>> = if q == 0 {
            Vec::new()
        } else {
            (0..cols)
                .map(|k| {
                    let mut e = vec![BigInt::from(0); cols];
                    e[k] = BigInt::from(q);
                    e
                })
                .collect()
        };
        orders.extend_from_slice(Subquotient::new(cols, &l, &relations).orders().orders());
    }
    FgAbelian::new(orders).expect("valid orders")
}
