//! Finite simplicial sets stored through their nondegenerate simplices.
//!
//! Every simplex is written uniquely as `s_{j1} ... s_{jk} x` with `j1 > ... > jk` and `x`
//! nondegenerate (Eilenberg–Zilber). Face and degeneracy operators act on these canonical forms
//! through the surjection encoding of the degeneracy word, so equality of simplices is plain
//! structural equality.

mod constructions;
pub mod format;
mod map;
mod product;
mod standard;

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub use constructions::{
    cube_pair, disjoint_union, fibrewise_suspension, mapping_cylinder, pushout, Cylinder, Pushout,
    Suspension,
};
pub use map::{SimplicialMap, SimplicialPair, Subcomplex};
pub use product::{product, Product};
pub use standard::{
    boundary_simplex, circle, horn, interval, point, sphere, standard_simplex,
    subdivided_circle, torus, wedge_of_circles,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexId {
    pub dim: usize,
    pub index: usize,
}

impl SimplexId {
    pub fn new(dim: usize, index: usize) -> Self {
        SimplexId { dim, index }
    }
}

/// A simplex in canonical form: a strictly decreasing degeneracy word applied to a
/// nondegenerate base simplex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegenerateSimplex {
    word: Vec<usize>,
    base: SimplexId,
}

impl DegenerateSimplex {
    pub fn nondegenerate(base: SimplexId) -> Self {
        DegenerateSimplex { word: Vec::new(), base }
    }

    /// Builds a canonical simplex, rejecting words that are not strictly decreasing or that
    /// reference indices outside the resulting dimension.
    pub fn new(word: Vec<usize>, base: SimplexId) -> Result<Self> {
        let dim = base.dim + word.len();
        if word.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidInput(format!(
                "degeneracy word {word:?} is not strictly decreasing"
            )));
        }
        if let Some(&j) = word.first() {
            if j >= dim {
                return Err(Error::OperatorIndex { index: j, dim: dim - 1 });
            }
        }
        Ok(DegenerateSimplex { word, base })
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn base(&self) -> SimplexId {
        self.base
    }

    pub fn dim(&self) -> usize {
        self.base.dim + self.word.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }

    /// The nondegenerate simplex itself, if this simplex is nondegenerate.
    pub fn as_nondegenerate(&self) -> Option<SimplexId> {
        self.word.is_empty().then_some(self.base)
    }

    /// The monotone surjection `[dim] -> [base.dim]` encoded by the degeneracy word.
    pub fn surjection(&self) -> Vec<usize> {
        let m = self.dim();
        let mut eta = Vec::with_capacity(m + 1);
        let mut value = 0;
        eta.push(0);
        for j in 0..m {
            if !self.word.contains(&j) {
                value += 1;
            }
            eta.push(value);
        }
        eta
    }

    /// Inverse of [`DegenerateSimplex::surjection`]; `eta` must be a monotone surjection onto
    /// `[base.dim]`.
    pub fn from_surjection(eta: &[usize], base: SimplexId) -> Self {
        debug_assert_eq!(eta.last().copied().unwrap_or(0), base.dim);
        let word = word_of_surjection(eta);
        DegenerateSimplex { word, base }
    }
}

/// Collapse positions of a monotone surjection, listed in decreasing order.
pub(crate) fn word_of_surjection(eta: &[usize]) -> Vec<usize> {
    let mut word: Vec<usize> = (0..eta.len().saturating_sub(1))
        .filter(|&j| eta[j] == eta[j + 1])
        .collect();
    word.reverse();
    word
}

/// A face or degeneracy operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Face(usize),
    Degeneracy(usize),
}

/// A finite simplicial set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    name: String,
    labels: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<DegenerateSimplex>>>,
}

impl SimplicialSet {
    pub fn builder(name: impl Into<String>) -> SimplicialSetBuilder {
        SimplicialSetBuilder {
            name: name.into(),
            labels: Vec::new(),
            faces: Vec::new(),
            by_label: HashMap::new(),
        }
    }

    pub fn empty(name: impl Into<String>) -> Self {
        SimplicialSet { name: name.into(), labels: Vec::new(), faces: Vec::new() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Highest dimension carrying a nondegenerate simplex, `None` for the empty set.
    pub fn dim(&self) -> Option<usize> {
        (0..self.faces.len()).rev().find(|&d| !self.faces[d].is_empty())
    }

    pub fn count(&self, dim: usize) -> usize {
        self.faces.get(dim).map_or(0, Vec::len)
    }

    pub fn total_count(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total_count() == 0
    }

    pub fn simplices(&self, dim: usize) -> impl Iterator<Item = SimplexId> + '_ {
        (0..self.count(dim)).map(move |index| SimplexId { dim, index })
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = SimplexId> + '_ {
        (0..self.faces.len()).flat_map(move |d| self.simplices(d))
    }

    pub fn label(&self, id: SimplexId) -> &str {
        &self.labels[id.dim][id.index]
    }

    pub fn find(&self, label: &str) -> Option<SimplexId> {
        self.labels.iter().enumerate().find_map(|(dim, ls)| {
            ls.iter().position(|l| l == label).map(|index| SimplexId { dim, index })
        })
    }

    pub fn label_of(&self, s: &DegenerateSimplex) -> String {
        let base = self.label(s.base);
        if s.word.is_empty() {
            base.to_string()
        } else {
            let w: String = s.word.iter().map(|j| format!("s{j}")).collect();
            format!("{w}:{base}")
        }
    }

    /// The `i`-th face of a nondegenerate simplex as stored in the face table.
    pub fn nondegenerate_face(&self, id: SimplexId, i: usize) -> &DegenerateSimplex {
        &self.faces[id.dim][id.index][i]
    }

    pub fn faces_of(&self, id: SimplexId) -> &[DegenerateSimplex] {
        &self.faces[id.dim][id.index]
    }

    /// Applies the simplicial operator induced by a monotone map `theta: [k] -> [dim s]`.
    pub fn apply(&self, s: &DegenerateSimplex, theta: &[usize]) -> DegenerateSimplex {
        let eta = s.surjection();
        let phi: Vec<usize> = theta.iter().map(|&t| eta[t]).collect();
        let mut image = phi.clone();
        image.dedup();
        if image.len() == s.base.dim + 1 {
            return DegenerateSimplex::from_surjection(&phi, s.base);
        }
        let face = self.restrict(s.base, &image);
        let eps: Vec<usize> = phi
            .iter()
            .map(|v| image.binary_search(v).expect("value lies in image"))
            .collect();
        self.apply(&face, &eps)
    }

    /// The face of a nondegenerate simplex spanned by the given (sorted) vertex set.
    fn restrict(&self, x: SimplexId, image: &[usize]) -> DegenerateSimplex {
        let mut cur = DegenerateSimplex::nondegenerate(x);
        for v in (0..=x.dim).rev() {
            if image.binary_search(&v).is_err() {
                cur = self.face(&cur, v);
            }
        }
        cur
    }

    /// `d_i s`. Panics when `i > dim s` or `s` is a vertex.
    pub fn face(&self, s: &DegenerateSimplex, i: usize) -> DegenerateSimplex {
        let m = s.dim();
        assert!(m >= 1 && i <= m, "face index {i} out of range in dimension {m}");
        if s.word.is_empty() {
            return self.faces[s.base.dim][s.base.index][i].clone();
        }
        let theta: Vec<usize> = (0..=m).filter(|&j| j != i).collect();
        self.apply(s, &theta)
    }

    /// `s_i s`. Panics when `i > dim s`.
    pub fn degeneracy(&self, s: &DegenerateSimplex, i: usize) -> DegenerateSimplex {
        let m = s.dim();
        assert!(i <= m, "degeneracy index {i} out of range in dimension {m}");
        let theta: Vec<usize> = (0..=m + 1).map(|j| if j <= i { j } else { j - 1 }).collect();
        self.apply(s, &theta)
    }

    /// Applies a sequence of operators, first element first, returning the canonical form.
    pub fn canonicalize(&self, start: &DegenerateSimplex, ops: &[Op]) -> Result<DegenerateSimplex> {
        let mut cur = start.clone();
        for op in ops {
            let m = cur.dim();
            cur = match *op {
                Op::Face(i) => {
                    if m == 0 || i > m {
                        return Err(Error::OperatorIndex { index: i, dim: m });
                    }
                    self.face(&cur, i)
                }
                Op::Degeneracy(i) => {
                    if i > m {
                        return Err(Error::OperatorIndex { index: i, dim: m });
                    }
                    self.degeneracy(&cur, i)
                }
            };
        }
        Ok(cur)
    }

    /// Applies the degeneracy word of `outer` (viewed as an operator) to an arbitrary simplex of
    /// matching dimension, i.e. computes `eta^* s` for the surjection `eta` of `outer`.
    pub fn degenerate_by(&self, eta: &[usize], s: &DegenerateSimplex) -> DegenerateSimplex {
        self.apply(s, eta)
    }

    /// The iterated degeneracy `s_0 ... s_0 v` of a vertex into dimension `m`.
    pub fn constant(&self, vertex: SimplexId, m: usize) -> DegenerateSimplex {
        debug_assert_eq!(vertex.dim, 0);
        DegenerateSimplex { word: (0..m).rev().collect(), base: vertex }
    }

    /// Checks `d_i d_j = d_{j-1} d_i` for `i < j` on every nondegenerate simplex.
    pub fn check_identities(&self) -> Result<()> {
        for id in self.all_simplices() {
            let m = id.dim;
            if m < 2 {
                continue;
            }
            let s = DegenerateSimplex::nondegenerate(id);
            for j in 1..=m {
                let dj = self.face(&s, j);
                for i in 0..j {
                    let lhs = self.face(&dj, i);
                    let rhs = self.face(&self.face(&s, i), j - 1);
                    if lhs != rhs {
                        return Err(Error::InvalidSimplicialSet {
                            name: self.name.clone(),
                            reason: format!(
                                "d{i} d{j} != d{} d{i} on `{}`",
                                j - 1,
                                self.label(id)
                            ),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for SimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<String> = (0..self.faces.len()).map(|d| self.count(d).to_string()).collect();
        write!(f, "{} [{}]", self.name, counts.join(", "))
    }
}

pub struct SimplicialSetBuilder {
    name: String,
    labels: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<DegenerateSimplex>>>,
    by_label: HashMap<String, SimplexId>,
}

impl SimplicialSetBuilder {
    fn ensure_dim(&mut self, dim: usize) {
        while self.labels.len() <= dim {
            self.labels.push(Vec::new());
            self.faces.push(Vec::new());
        }
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> Result<SimplexId> {
        self.add(label, Vec::new())
    }

    /// Adds a nondegenerate simplex of dimension `faces.len() - 1` (or a vertex for no faces).
    pub fn add(&mut self, label: impl Into<String>, faces: Vec<DegenerateSimplex>) -> Result<SimplexId> {
        let label = label.into();
        let dim = if faces.is_empty() { 0 } else { faces.len() - 1 };
        if faces.len() == 1 {
            return Err(self.invalid(format!("`{label}` has exactly one face")));
        }
        for (i, f) in faces.iter().enumerate() {
            if f.dim() + 1 != dim {
                return Err(self.invalid(format!("face {i} of `{label}` has dimension {}", f.dim())));
            }
            if f.base.dim >= self.faces.len() || f.base.index >= self.faces[f.base.dim].len() {
                return Err(self.invalid(format!("face {i} of `{label}` references an unknown simplex")));
            }
        }
        if self.by_label.contains_key(&label) {
            return Err(self.invalid(format!("duplicate simplex label `{label}`")));
        }
        self.ensure_dim(dim);
        let id = SimplexId { dim, index: self.faces[dim].len() };
        self.faces[dim].push(faces);
        self.labels[dim].push(label.clone());
        self.by_label.insert(label, id);
        Ok(id)
    }

    pub fn lookup(&self, label: &str) -> Option<SimplexId> {
        self.by_label.get(label).copied()
    }

    fn invalid(&self, reason: String) -> Error {
        Error::InvalidSimplicialSet { name: self.name.clone(), reason }
    }

    /// Finishes the set and verifies the simplicial identities.
    pub fn build(self) -> Result<SimplicialSet> {
        let set = self.build_unchecked();
        set.check_identities()?;
        Ok(set)
    }

    pub(crate) fn snapshot(&self) -> SimplicialSet {
        SimplicialSet { name: self.name.clone(), labels: self.labels.clone(), faces: self.faces.clone() }
    }

    pub(crate) fn build_unchecked(mut self) -> SimplicialSet {
        while self.labels.last().is_some_and(Vec::is_empty) {
            self.labels.pop();
            self.faces.pop();
        }
        SimplicialSet { name: self.name, labels: self.labels, faces: self.faces }
    }
}
