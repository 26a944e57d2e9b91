use crate::simplicial::{SimplicialMap, SimplicialSet, Subcomplex};

use super::FgAbelian;

/// A normalized cochain on a finite simplicial set: one value in `⊕ Z/q_i` per nondegenerate
/// simplex of the given degree (degenerate simplices implicitly carry `0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    degree: usize,
    width: usize,
    values: Vec<i64>,
}

impl Cochain {
    pub fn zero(set: &SimplicialSet, degree: usize, pi: &FgAbelian) -> Self {
        Self::zeros(degree, pi.rank(), set.count(degree))
    }

    pub fn zeros(degree: usize, width: usize, len: usize) -> Self {
        Cochain { degree, width, values: vec![0; width * len] }
    }

    pub fn from_values(degree: usize, width: usize, values: Vec<i64>) -> Self {
        assert!(width == 0 && values.is_empty() || width > 0 && values.len().is_multiple_of(width));
        Cochain { degree, width, values }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Number of simplices the cochain is defined on.
    pub fn len(&self) -> usize {
        self.values.len().checked_div(self.width).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, index: usize) -> &[i64] {
        &self.values[index * self.width..(index + 1) * self.width]
    }

    pub fn get_component(&self, index: usize, j: usize) -> i64 {
        self.values[index * self.width + j]
    }

    pub fn set(&mut self, index: usize, value: &[i64]) {
        self.values[index * self.width..(index + 1) * self.width].copy_from_slice(value);
    }

    pub fn set_component(&mut self, index: usize, j: usize, value: i64) {
        self.values[index * self.width + j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }

    pub fn reduce(&mut self, pi: &FgAbelian) {
        for chunk in self.values.chunks_mut(self.width.max(1)) {
            pi.reduce(chunk);
        }
    }

    fn zip_with(&self, other: &Cochain, pi: &FgAbelian, f: impl Fn(i64, i64) -> i64) -> Cochain {
        assert_eq!((self.degree, self.width, self.values.len()), (other.degree, other.width, other.values.len()));
        let mut out = Cochain {
            degree: self.degree,
            width: self.width,
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        };
        out.reduce(pi);
        out
    }

    pub fn add(&self, other: &Cochain, pi: &FgAbelian) -> Cochain {
        self.zip_with(other, pi, |a, b| a + b)
    }

    pub fn sub(&self, other: &Cochain, pi: &FgAbelian) -> Cochain {
        self.zip_with(other, pi, |a, b| a - b)
    }

    pub fn neg(&self, pi: &FgAbelian) -> Cochain {
        self.scale(-1, pi)
    }

    pub fn scale(&self, k: i64, pi: &FgAbelian) -> Cochain {
        let mut out = Cochain {
            degree: self.degree,
            width: self.width,
            values: self.values.iter().map(|&a| a * k).collect(),
        };
        out.reduce(pi);
        out
    }

    /// `(δc)(σ) = Σ (-1)^i c(d_i σ)`.
    pub fn coboundary(&self, set: &SimplicialSet, pi: &FgAbelian) -> Cochain {
        let n = self.degree;
        let mut out = Cochain::zero(set, n + 1, pi);
        for sigma in set.simplices(n + 1) {
            for (i, face) in set.faces_of(sigma).iter().enumerate() {
                if let Some(f) = face.as_nondegenerate() {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    for j in 0..self.width {
                        out.values[sigma.index * self.width + j] += sign * self.get_component(f.index, j);
                    }
                }
            }
        }
        out.reduce(pi);
        out
    }

    /// `f^* c` for `f: Z -> set(c)`.
    pub fn pullback(&self, map: &SimplicialMap) -> Cochain {
        let n = self.degree;
        let mut out = Cochain::zeros(n, self.width, map.source().count(n));
        for id in map.source().simplices(n) {
            if let Some(img) = map.get(id).as_nondegenerate() {
                out.set(id.index, self.get(img.index));
            }
        }
        out
    }

    /// Writes `c` through an injective map `ι: P -> Z` into `self` (a cochain on `Z`).
    pub fn push_forward_into(&mut self, map: &SimplicialMap, c: &Cochain) {
        let n = self.degree;
        for id in map.source().simplices(n) {
            let img = map.get(id).as_nondegenerate().expect("map is injective");
            self.set(img.index, c.get(id.index));
        }
    }

    pub fn vanishes_on(&self, sub: &Subcomplex) -> bool {
        sub.iter().filter(|id| id.dim == self.degree).all(|id| self.get(id.index).iter().all(|&x| x == 0))
    }

    pub fn agrees_on(&self, other: &Cochain, sub: &Subcomplex) -> bool {
        sub.iter().filter(|id| id.dim == self.degree).all(|id| self.get(id.index) == other.get(id.index))
    }

    /// Copies the values of `other` on the simplices of `sub`.
    pub fn overwrite_on(&mut self, other: &Cochain, sub: &Subcomplex) {
        let n = self.degree;
        for id in sub.iter().filter(|id| id.dim == n) {
            self.set(id.index, other.get(id.index));
        }
    }
}
