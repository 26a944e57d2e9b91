use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;

use super::effective::{EffectiveAbelian, GroupOps, Subquotient};
use super::matrix::{to_small, IntegerMatrix, LinearSystem};
use super::{Cochain, FgAbelian};
use crate::error::{Error, Result};
use crate::simplicial::{SimplexId, SimplicialPair, SimplicialSet, Subcomplex};

/// Group structure on `π`-valued cochains of a fixed degree on a fixed set.
#[derive(Clone, Debug)]
pub struct CochainOps {
    pi: FgAbelian,
    degree: usize,
    len: usize,
}

impl CochainOps {
    pub fn new(set: &SimplicialSet, degree: usize, pi: &FgAbelian) -> Self {
        CochainOps { pi: pi.clone(), degree, len: set.count(degree) }
    }
}

impl GroupOps<Cochain> for CochainOps {
    fn zero(&self) -> Cochain {
        Cochain::zeros(self.degree, self.pi.rank(), self.len)
    }

    fn add(&self, a: &Cochain, b: &Cochain) -> Cochain {
        a.add(b, &self.pi)
    }

    fn neg(&self, a: &Cochain) -> Cochain {
        a.neg(&self.pi)
    }
}

/// A finite simplicial pair `(Z, S)` with cached coboundary factorizations, used for relative
/// cohomology and for every cochain-extension problem on `Z` with data prescribed on `S`.
pub struct RelativeComplex {
    set: Arc<SimplicialSet>,
    sub: Subcomplex,
    free: Vec<Vec<usize>>,
    position: Vec<Vec<Option<usize>>>,
    systems: Mutex<HashMap<(usize, i64), Arc<LinearSystem>>>,
    groups: Mutex<HashMap<(usize, FgAbelian), Arc<Cohomology>>>,
}

impl fmt::Debug for RelativeComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RelativeComplex({}, {} in subset)", self.set, self.sub.len())
    }
}

impl RelativeComplex {
    pub fn new(set: Arc<SimplicialSet>, sub: Subcomplex) -> Self {
        let top = set.dim().map_or(0, |d| d + 1);
        let mut free = Vec::new();
        let mut position = Vec::new();
        for d in 0..top {
            let mut f = Vec::new();
            let mut p = vec![None; set.count(d)];
            for id in set.simplices(d) {
                if !sub.contains(id) {
                    p[id.index] = Some(f.len());
                    f.push(id.index);
                }
            }
            free.push(f);
            position.push(p);
        }
        RelativeComplex {
            set,
            sub,
            free,
            position,
            systems: Mutex::new(HashMap::new()),
            groups: Mutex::new(HashMap::new()),
        }
    }

    pub fn from_pair(pair: &SimplicialPair) -> Self {
        Self::new(pair.total.clone(), pair.sub.clone())
    }

    pub fn set(&self) -> &Arc<SimplicialSet> {
        &self.set
    }

    pub fn sub(&self) -> &Subcomplex {
        &self.sub
    }

    /// Indices of the `dim`-simplices outside the subset.
    pub fn free(&self, dim: usize) -> &[usize] {
        self.free.get(dim).map_or(&[], Vec::as_slice)
    }

    fn position(&self, dim: usize, index: usize) -> Option<usize> {
        self.position.get(dim).and_then(|p| p[index])
    }

    /// The relative coboundary `C^n(Z,S) -> C^{n+1}(Z,S)` in the bases of free simplices.
    pub fn coboundary_matrix(&self, n: usize) -> IntegerMatrix {
        let rows = self.free(n + 1);
        let mut m = IntegerMatrix::zeros(rows.len(), self.free(n).len());
        for (r, &index) in rows.iter().enumerate() {
            let sigma = SimplexId::new(n + 1, index);
            for (i, face) in self.set.faces_of(sigma).iter().enumerate() {
                if let Some(f) = face.as_nondegenerate() {
                    if let Some(c) = self.position(n, f.index) {
                        m.add_to(r, c, if i % 2 == 0 { 1 } else { -1 });
                    }
                }
            }
        }
        m
    }

    fn system(&self, n: usize, q: i64) -> Arc<LinearSystem> {
        if let Some(s) = self.systems.lock().unwrap().get(&(n, q)) {
            return s.clone();
        }
        let m = self.coboundary_matrix(n);
        let system = Arc::new(LinearSystem::new(&m, &vec![q; m.rows()]));
        self.systems.lock().unwrap().entry((n, q)).or_insert(system).clone()
    }

    /// `κ - δ(p)` where `p` is `prescribed` restricted to the subset and extended by zero.
    pub fn defect(&self, prescribed: &Cochain, kappa: &Cochain, pi: &FgAbelian) -> Cochain {
        let mut ext = Cochain::zeros(prescribed.degree(), prescribed.width(), prescribed.len());
        ext.overwrite_on(prescribed, &self.sub);
        kappa.sub(&ext.coboundary(&self.set, pi), pi)
    }

    /// Finds `c ∈ C^n(Z;π)` with `c|S = prescribed|S` and `δc = κ`.
    ///
    /// Returns `Ok(None)` when no such cochain exists and an error when the prescribed data
    /// already violates `δc = κ` inside `S`.
    pub fn solve(&self, n: usize, pi: &FgAbelian, prescribed: &Cochain, kappa: &Cochain) -> Result<Option<Cochain>> {
        assert_eq!(prescribed.degree(), n);
        assert_eq!(kappa.degree(), n + 1);
        let defect = self.defect(prescribed, kappa, pi);
        if !defect.vanishes_on(&self.sub) {
            return Err(Error::Inconsistent(format!(
                "prescribed degree-{n} data does not satisfy the coboundary condition on the subset"
            )));
        }
        let mut out = Cochain::zeros(n, pi.rank(), self.set.count(n));
        out.overwrite_on(prescribed, &self.sub);
        for (j, &q) in pi.orders().iter().enumerate() {
            let b: Vec<BigInt> = self
                .free(n + 1)
                .iter()
                .map(|&index| BigInt::from(defect.get_component(index, j)))
                .collect();
            let Some(x) = self.system(n, q).solve(&b) else {
                return Ok(None);
            };
            for (k, &index) in self.free(n).iter().enumerate() {
                let v = to_small(std::slice::from_ref(&x[k]))[0];
                out.set_component(index, j, FgAbelian::reduce_value(q, v));
            }
        }
        Ok(Some(out))
    }

    /// `H^n(Z, S; π)` with relative cocycles as representatives.
    pub fn cohomology(&self, n: usize, pi: &FgAbelian) -> Arc<Cohomology> {
        if let Some(h) = self.groups.lock().unwrap().get(&(n, pi.clone())) {
            return h.clone();
        }
        let h = Arc::new(self.compute_cohomology(n, pi));
        self.groups.lock().unwrap().entry((n, pi.clone())).or_insert(h).clone()
    }

    fn compute_cohomology(&self, n: usize, pi: &FgAbelian) -> Cohomology {
        let cols = self.free(n).to_vec();
        let count = self.set.count(n);
        let mut parts = Vec::new();
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        for (j, &q) in pi.orders().iter().enumerate() {
            let l = self.system(n, q).kernel_generators();
            let mut m: Vec<Vec<BigInt>> = Vec::new();
            if n > 0 {
                let prev = self.coboundary_matrix(n - 1);
                m.extend((0..prev.cols()).map(|c| prev.column(c)));
            }
            if q != 0 {
                for k in 0..cols.len() {
                    let mut e = vec![BigInt::zero(); cols.len()];
                    e[k] = BigInt::from(q);
                    m.push(e);
                }
            }
            let sq = Subquotient::new(cols.len(), &l, &m);
            for v in sq.generators() {
                let mut c = Cochain::zeros(n, pi.rank(), count);
                for (k, &index) in cols.iter().enumerate() {
                    let x = to_small(std::slice::from_ref(&v[k]))[0];
                    c.set_component(index, j, FgAbelian::reduce_value(q, x));
                }
                generators.push(c);
            }
            orders.extend_from_slice(sq.orders().orders());
            parts.push((j, sq));
        }
        let ops = Arc::new(CochainOps::new(&self.set, n, pi));
        let parts = Arc::new(parts);
        let extract_parts = parts.clone();
        let group = EffectiveAbelian::new(
            ops,
            generators,
            FgAbelian::new(orders).expect("valid orders"),
            Arc::new(move |c: &Cochain| {
                let mut z = Vec::new();
                for (j, sq) in extract_parts.iter() {
                    let x: Vec<BigInt> = cols.iter().map(|&index| BigInt::from(c.get_component(index, *j))).collect();
                    z.extend(sq.coordinates(&x).expect("representative is a relative cocycle"));
                }
                z
            }),
        );
        Cohomology { degree: n, pi: pi.clone(), group }
    }
}

/// A relative cohomology group as a fully effective abelian group.
#[derive(Clone, Debug)]
pub struct Cohomology {
    degree: usize,
    pi: FgAbelian,
    group: EffectiveAbelian<Cochain>,
}

impl Cohomology {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients_group(&self) -> &FgAbelian {
        &self.pi
    }

    pub fn group(&self) -> &EffectiveAbelian<Cochain> {
        &self.group
    }

    pub fn orders(&self) -> &FgAbelian {
        self.group.orders()
    }
}

/// `H^n(X, A; π)` of a pair.
pub fn cohomology_group(pair: &SimplicialPair, pi: &FgAbelian, n: usize) -> Cohomology {
    RelativeComplex::from_pair(pair).cohomology(n, pi).as_ref().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{
        boundary_simplex, circle, fibrewise_suspension, point, product, sphere, torus, wedge_of_circles,
        SimplicialMap,
    };
    use itertools::Itertools;
    use rand::{Rng, SeedableRng};

    fn orders(pair: &SimplicialPair, pi: &FgAbelian, n: usize) -> Vec<i64> {
        cohomology_group(pair, pi, n).orders().orders().to_vec()
    }

    #[test]
    fn spheres_and_tori() {
        let z = FgAbelian::integers();
        let s2 = Arc::new(sphere(2));
        assert_eq!(orders(&SimplicialPair::absolute(s2.clone()), &z, 2), vec![0]);
        assert_eq!(orders(&SimplicialPair::absolute(s2.clone()), &z, 1), Vec::<i64>::new());
        assert_eq!(orders(&SimplicialPair::full(s2.clone()), &z, 2), Vec::<i64>::new());
        let s1 = Arc::new(circle());
        let pointed = SimplicialPair::pointed(s1.clone(), s1.find("*").unwrap());
        assert_eq!(orders(&pointed, &z, 1), vec![0]);
        assert_eq!(orders(&pointed, &z, 0), Vec::<i64>::new());
        assert_eq!(orders(&SimplicialPair::absolute(s1), &z, 0), vec![0]);
        let t = Arc::new(torus());
        assert_eq!(orders(&SimplicialPair::absolute(t.clone()), &z, 1), vec![0, 0]);
        assert_eq!(orders(&SimplicialPair::absolute(t.clone()), &z, 2), vec![0]);
        let z2 = FgAbelian::cyclic(2);
        assert_eq!(orders(&SimplicialPair::absolute(t), &z2, 1), vec![2, 2]);
        let d = Arc::new(boundary_simplex(3));
        assert_eq!(orders(&SimplicialPair::absolute(d), &z, 2), vec![0]);
    }

    #[test]
    fn suspension_of_circle() {
        let s1 = Arc::new(circle());
        let beta = SimplicialMap::to_point(s1, Arc::new(point())).unwrap();
        let susp = fibrewise_suspension(&beta);
        let z = FgAbelian::integers();
        let pair = SimplicialPair::absolute(susp.set.clone());
        assert_eq!(orders(&pair, &z, 2), vec![0]);
        assert_eq!(orders(&pair, &z, 1), Vec::<i64>::new());
        // iterated: the double suspension has the cohomology of S3
        let beta2 = SimplicialMap::to_point(susp.set.clone(), Arc::new(point())).unwrap();
        let susp2 = fibrewise_suspension(&beta2);
        let pair2 = SimplicialPair::absolute(susp2.set.clone());
        assert_eq!(orders(&pair2, &z, 3), vec![0]);
        assert_eq!(orders(&pair2, &z, 2), Vec::<i64>::new());
        assert_eq!(orders(&pair2, &z, 1), Vec::<i64>::new());
        assert_eq!(orders(&pair2, &z, 0), vec![0]);
    }

    /// Brute-force `|H^n(Z,S;Z/q)|` by enumerating all relative cochains.
    fn brute_force_size(rel: &RelativeComplex, n: usize, q: i64) -> usize {
        let set = rel.set();
        let pi = FgAbelian::cyclic(q);
        let free_n = rel.free(n).to_vec();
        let all = |free: &[usize], degree: usize| -> Vec<Cochain> {
            free.iter()
                .map(|_| 0..q)
                .multi_cartesian_product()
                .map(|vals| {
                    let mut c = Cochain::zero(set, degree, &pi);
                    for (k, &index) in free.iter().enumerate() {
                        c.set(index, &[vals[k]]);
                    }
                    c
                })
                .collect()
        };
        let cocycles: Vec<Cochain> = if free_n.is_empty() {
            vec![Cochain::zero(set, n, &pi)]
        } else {
            all(&free_n, n).into_iter().filter(|c| c.coboundary(set, &pi).is_zero()).collect()
        };
        let boundaries: std::collections::HashSet<Cochain> = if n == 0 || rel.free(n - 1).is_empty() {
            [Cochain::zero(set, n, &pi)].into_iter().collect()
        } else {
            all(rel.free(n - 1), n - 1).iter().map(|c| c.coboundary(set, &pi)).collect()
        };
        cocycles.len() / boundaries.len()
    }

    #[test]
    fn agrees_with_enumeration() {
        let i = Arc::new(crate::simplicial::interval());
        let cases: Vec<(Arc<SimplicialSet>, Subcomplex)> = {
            let t = Arc::new(torus());
            let w = Arc::new(wedge_of_circles(2));
            let cyl = product(i.clone(), Arc::new(circle()));
            let ends = cyl.left_restricted(&Subcomplex::generated_by(&i, [i.find("0").unwrap(), i.find("1").unwrap()]));
            let d3 = Arc::new(boundary_simplex(3));
            let small_sub = Subcomplex::generated_by(&d3, [d3.find("01").unwrap()]);
            vec![
                (t.clone(), Subcomplex::empty(&t)),
                (w.clone(), Subcomplex::generated_by(&w, [w.find("*").unwrap()])),
                (cyl.set().clone(), ends),
                (d3.clone(), small_sub),
            ]
        };
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for (set, sub) in cases {
            let rel = RelativeComplex::new(set.clone(), sub);
            for q in [2, 3] {
                let pi = FgAbelian::cyclic(q);
                for n in 0..=2 {
                    if rel.free(n).len() > 7 || (n > 0 && rel.free(n - 1).len() > 7) {
                        continue;
                    }
                    let h = rel.cohomology(n, &pi);
                    let size = h.orders().size().unwrap() as usize;
                    assert_eq!(size, brute_force_size(&rel, n, q), "{} n={n} q={q}", set.name());
                    let g = h.group();
                    for (k, gen) in g.generators().iter().enumerate() {
                        let mut e = vec![0; g.rank()];
                        e[k] = 1;
                        assert_eq!(g.coefficients(gen), e);
                    }
                    for _ in 0..10 {
                        let a: Vec<i64> = (0..g.rank()).map(|_| rng.gen_range(0..q)).collect();
                        let b: Vec<i64> = (0..g.rank()).map(|_| rng.gen_range(0..q)).collect();
                        let ga = g.element(&a);
                        let gb = g.element(&b);
                        assert_eq!(g.coefficients(&g.add(&ga, &gb)), h.orders().add(&a, &b));
                    }
                }
            }
        }
    }

    #[test]
    fn relative_solve() {
        // extend a 1-cochain from the ends of a cylinder so that its coboundary is zero
        let i = Arc::new(crate::simplicial::interval());
        let s1 = Arc::new(circle());
        let cyl = product(i.clone(), s1.clone());
        let ends = cyl.left_restricted(&Subcomplex::generated_by(&i, [i.find("0").unwrap(), i.find("1").unwrap()]));
        let rel = RelativeComplex::new(cyl.set().clone(), ends.clone());
        let z = FgAbelian::integers();
        let mut prescribed = Cochain::zero(cyl.set(), 1, &z);
        // value 1 on the circle edge at end 0 and at end 1: extendable
        for id in ends.iter().filter(|id| id.dim == 1) {
            prescribed.set(id.index, &[1]);
        }
        let kappa = Cochain::zero(cyl.set(), 2, &z);
        let c = rel.solve(1, &z, &prescribed, &kappa).unwrap().unwrap();
        assert!(c.coboundary(cyl.set(), &z).is_zero());
        assert!(c.agrees_on(&prescribed, &ends));
        // values 1 and 2: not cohomologous, no extension
        let end1 = ends.iter().find(|id| id.dim == 1).unwrap();
        prescribed.set(end1.index, &[2]);
        assert!(rel.solve(1, &z, &prescribed, &kappa).unwrap().is_none());
    }
}
