//! Homotopy classes of maps into a Moore–Postnikov tower.
//!
//! Levels: `L_0 = (X, A)` and `L_{q+1} = I × L_q` with subset `∂I × L_q ∪ I × S_q`. The group
//! `G_n^q` consists of maps `L_q -> P_n` over `B` that are zero on `S_q`, up to homotopy rel
//! `S_q`; for `q ≥ 1` it is a group under concatenation along the first interval factor.
//! Homotopies of maps on `L_q` are maps on `L_{q+1}`.
//!
//! For every `n` there is the exact sequence
//!
//! ```text
//! G_{n-1}^{q+1} -∂-> H^n(L_q, S_q; π_n) -j-> G_n^q -p-> G_{n-1}^q -k-> H^{n+1}(L_q, S_q; π_n)
//! ```
//!
//! and `H^n(L_q, S_q) ≅ H^{n-q}(X, A)`. The base case is `P_0 = B`: a map over `B` into `P_0` is
//! unique, so `G_0^q` is trivial and every map into `P_0` is nullhomotopic by the constant
//! homotopy.

mod certificate;
mod instance;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, Weak};

use crate::abelian::{
    cokernel_from_generators, combination, kernel_generators_abelianized, Cochain, Cohomology, Cokernel, GroupOps,
    RelativeComplex,
};
use crate::error::{Error, Result};
use crate::polycyclic::{extension, kernel_to_abelian, ExtensionInput, Polycyclic};
use crate::simplicial::{SimplicialMap, SimplicialPair, SimplicialSet, Subcomplex};
use crate::tower::{concatenate, lift_homotopy, Lift, Prism, Tower, TowerMap, Triangle};

pub use certificate::check_homotopy;
pub use instance::ProblemInstance;

/// `(L_q, S_q)` over `β_q: L_q -> B`, with its prism and triangle built on demand.
pub struct Level {
    q: usize,
    rel: Arc<RelativeComplex>,
    beta: SimplicialMap,
    prism: OnceLock<Prism>,
    triangle: OnceLock<Triangle>,
}

impl Level {
    fn new(q: usize, rel: Arc<RelativeComplex>, beta: SimplicialMap) -> Self {
        Level { q, rel, beta, prism: OnceLock::new(), triangle: OnceLock::new() }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn set(&self) -> &Arc<SimplicialSet> {
        self.rel.set()
    }

    pub fn sub(&self) -> &Subcomplex {
        self.rel.sub()
    }

    pub fn rel(&self) -> &RelativeComplex {
        &self.rel
    }

    pub fn beta(&self) -> &SimplicialMap {
        &self.beta
    }

    pub fn pair(&self) -> SimplicialPair {
        SimplicialPair { total: self.set().clone(), sub: self.sub().clone() }
    }

    /// `I × L_q`.
    pub fn prism(&self) -> &Prism {
        self.prism.get_or_init(|| Prism::new(self.set().clone(), self.sub().clone(), &self.beta))
    }

    /// `Δ² × L_q`.
    pub fn triangle(&self) -> &Triangle {
        self.triangle.get_or_init(|| Triangle::new(self.prism()))
    }
}

type GroupTable = Memo<Polycyclic<TowerMap>>;

type Memo<T> = HashMap<(usize, usize), Arc<T>>;

struct Inner {
    instance: ProblemInstance,
    tower: Tower,
    levels: Mutex<Vec<Arc<Level>>>,
    groups: Mutex<GroupTable>,
    generators: Mutex<Memo<Vec<TowerMap>>>,
    cokernels: Mutex<Memo<Cokernel<Cochain>>>,
}

/// The engine for one problem instance. Cloning is cheap; results are memoized per `(n, q)`.
#[derive(Clone)]
pub struct Engine {
    inner: Arc<Inner>,
}

/// Concatenation structure on `G_n^q`.
struct MapOps {
    engine: Weak<Inner>,
    n: usize,
    q: usize,
}

impl MapOps {
    fn engine(&self) -> Engine {
        Engine { inner: self.engine.upgrade().expect("the engine outlives its groups") }
    }
}

impl GroupOps<TowerMap> for MapOps {
    fn zero(&self) -> TowerMap {
        self.engine().zero(self.n, self.q)
    }

    fn add(&self, a: &TowerMap, b: &TowerMap) -> TowerMap {
        let e = self.engine();
        let below = e.level(self.q - 1);
        concatenate(&e.inner.tower, below.triangle(), 1, [Some(b), None, Some(a)], self.n)
            .expect("horns over the cube levels always fill")
    }

    fn neg(&self, a: &TowerMap) -> TowerMap {
        let e = self.engine();
        let below = e.level(self.q - 1);
        let zero = e.zero(self.n, self.q);
        concatenate(&e.inner.tower, below.triangle(), 0, [None, Some(&zero), Some(a)], self.n)
            .expect("horns over the cube levels always fill")
    }
}

/// The answer of a homotopy decision.
#[derive(Clone, Debug)]
pub struct Decision {
    pub homotopic: bool,
    /// A homotopy `I × X -> P_n` from `g` to `f`, constant on `I × A`, when they are homotopic.
    pub certificate: Option<TowerMap>,
    /// The number of stages used, `dim X`.
    pub stages: usize,
}

/// `G_n^q` with the engine that realizes its operations.
#[derive(Clone)]
pub struct SuspensionGroup {
    engine: Engine,
    n: usize,
    q: usize,
    group: Arc<Polycyclic<TowerMap>>,
}

impl SuspensionGroup {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn group(&self) -> &Polycyclic<TowerMap> {
        &self.group
    }

    pub fn orders(&self) -> &[i64] {
        self.group.orders()
    }

    pub fn generators(&self) -> &[TowerMap] {
        self.group.generators()
    }

    pub fn coefficients(&self, h: &TowerMap) -> Vec<i64> {
        self.group.coefficients(h)
    }

    pub fn element(&self, z: &[i64]) -> TowerMap {
        self.group.element(z)
    }

    /// `L_q`, the domain of the representatives.
    pub fn domain(&self) -> Arc<Level> {
        self.engine.level(self.q)
    }
}

/// Outcome of the exactness checks at `(n, q)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExactnessReport {
    /// Generators `h` of `G_{n-1}^{q+1}` for which `j ∂ h` was shown to be nullhomotopic.
    pub boundary_checked: usize,
    /// Generators of `G_n^q` for which `k_n p_n` was shown to vanish.
    pub obstruction_checked: usize,
}

impl Engine {
    /// An engine using `stages` stages of the tower; fails if the tower is too short.
    pub fn new(instance: ProblemInstance, stages: usize) -> Result<Engine> {
        let tower = instance.tower().require(stages)?;
        let rel = Arc::new(RelativeComplex::from_pair(instance.pair()));
        let level0 = Arc::new(Level::new(0, rel, instance.beta().clone()));
        Ok(Engine {
            inner: Arc::new(Inner {
                instance,
                tower,
                levels: Mutex::new(vec![level0]),
                groups: Mutex::new(HashMap::new()),
                generators: Mutex::new(HashMap::new()),
                cokernels: Mutex::new(HashMap::new()),
            }),
        })
    }

    pub fn instance(&self) -> &ProblemInstance {
        &self.inner.instance
    }

    pub fn tower(&self) -> &Tower {
        &self.inner.tower
    }

    pub fn stages(&self) -> usize {
        self.inner.tower.len()
    }

    fn check_stage(&self, n: usize) -> Result<()> {
        if n > self.stages() {
            return Err(Error::MissingStage { required: n, available: self.stages() });
        }
        Ok(())
    }

    pub fn level(&self, q: usize) -> Arc<Level> {
        loop {
            let last = {
                let levels = self.inner.levels.lock().unwrap();
                if q < levels.len() {
                    return levels[q].clone();
                }
                levels.last().unwrap().clone()
            };
            let prism = last.prism();
            let next = Arc::new(Level::new(last.q + 1, prism.rel_both().clone(), prism.base_map().clone()));
            let mut levels = self.inner.levels.lock().unwrap();
            if levels.len() == last.q + 1 {
                levels.push(next);
            }
        }
    }

    /// The zero map `L_q -> P_n`.
    pub fn zero(&self, n: usize, q: usize) -> TowerMap {
        self.inner.tower.zero_map(self.level(q).beta(), n)
    }

    /// Concatenation on `G_n^q` (`q ≥ 1`).
    pub fn ops(&self, n: usize, q: usize) -> Arc<dyn GroupOps<TowerMap>> {
        assert!(q >= 1, "G_n^0 carries no group structure");
        Arc::new(MapOps { engine: Arc::downgrade(&self.inner), n, q })
    }

    /// `H^d(L_q, S_q; π_n)`.
    pub fn cohomology(&self, n: usize, q: usize, d: usize) -> Arc<Cohomology> {
        self.level(q).rel().cohomology(d, self.inner.tower.pi(n))
    }

    /// The obstruction cocycle to lifting `g: L_q -> P_{n-1}` to `P_n` rel `S_q`; zero when a
    /// lift exists. Its class is `k_{n*}[g] ∈ H^{n+1}(L_q, S_q; π_n)`.
    pub fn obstruction(&self, n: usize, q: usize, g: &TowerMap) -> Result<Cochain> {
        self.check_stage(n)?;
        let level = self.level(q);
        let prescribed = self.zero(n, q).coord(n).clone();
        Ok(match self.inner.tower.lift_one_stage(level.rel(), &g.truncate(n - 1), &prescribed)? {
            Lift::Found(_) => Cochain::zero(level.set(), n + 1, self.inner.tower.pi(n)),
            Lift::Obstructed(c) => c,
        })
    }

    /// A lift of `g: L_q -> P_{n-1}` to `P_n` that is zero on `S_q`, if one exists.
    pub fn section(&self, n: usize, q: usize, g: &TowerMap) -> Result<Option<TowerMap>> {
        self.check_stage(n)?;
        let level = self.level(q);
        let prescribed = self.zero(n, q).coord(n).clone();
        Ok(self.inner.tower.lift_one_stage(level.rel(), &g.truncate(n - 1), &prescribed)?.found())
    }

    /// `∂[h]` for `h ∈ G_{n-1}^{q+1}`: lift `h` to `P_n` with zero on `0 × L_q ∪ I × S_q` and read
    /// the `1`-end through `j`. Returns a cocycle in `Z^n(L_q, S_q; π_n)`.
    pub fn boundary(&self, n: usize, q: usize, h: &TowerMap) -> Result<Cochain> {
        self.check_stage(n)?;
        let level = self.level(q);
        let prism = level.prism();
        let zero = self.zero(n, q);
        let lifted = lift_homotopy(&self.inner.tower, prism, h, Some(&zero), None, n)?;
        let end = lifted.pullback(prism.end(1));
        Ok(self.inner.tower.difference(&end, &zero))
    }

    /// `coker(∂: G_{n-1}^{q+1} -> H^n(L_q, S_q; π_n))`, with images listed in the order of
    /// [`Engine::generators`]`(n - 1, q + 1)`.
    pub fn cokernel(&self, n: usize, q: usize) -> Result<Arc<Cokernel<Cochain>>> {
        if let Some(c) = self.inner.cokernels.lock().unwrap().get(&(n, q)) {
            return Ok(c.clone());
        }
        let h = self.cohomology(n, q, n);
        let images = if h.group().rank() == 0 {
            Vec::new()
        } else {
            let gens = self.generators(n - 1, q + 1)?;
            gens.iter().map(|g| self.boundary(n, q, g)).collect::<Result<Vec<_>>>()?
        };
        let c = Arc::new(cokernel_from_generators(h.group(), images));
        Ok(self.inner.cokernels.lock().unwrap().entry((n, q)).or_insert(c).clone())
    }

    /// A homotopy `I × L_q -> P_n` from the zero map to `f`, zero on `I × S_q`, or `None` when
    /// `f: L_q -> P_n` is not nullhomotopic rel `S_q`.
    pub fn nullhomotopy(&self, n: usize, q: usize, f: &TowerMap) -> Result<Option<TowerMap>> {
        self.check_stage(n)?;
        if f.stage() < n {
            return Err(Error::MissingStage { required: n, available: f.stage() });
        }
        let f = f.truncate(n);
        let level = self.level(q);
        let prism = level.prism();
        let tower = &self.inner.tower;
        if n == 0 {
            return Ok(Some(tower.zero_map(prism.base_map(), 0)));
        }
        let Some(h1) = self.nullhomotopy(n - 1, q, &f)? else {
            return Ok(None);
        };
        // h1 lifted to a homotopy f' ~ f with p f' = o
        let ht1 = lift_homotopy(tower, prism, &h1, None, Some(&f), n)?;
        let f1 = ht1.pullback(prism.end(0));
        let zero = self.zero(n, q);
        let z = tower.difference(&f1, &zero);
        let h2 = if z.is_zero() {
            self.zero(n - 1, q + 1)
        } else {
            let coh = self.cohomology(n, q, n);
            if coh.group().coefficients(&z).iter().all(|&x| x == 0) {
                self.zero(n - 1, q + 1)
            } else {
                let Some(w) = self.cokernel(n, q)?.witness(&z) else {
                    return Ok(None);
                };
                let gens = self.generators(n - 1, q + 1)?;
                combination(self.ops(n - 1, q + 1).as_ref(), &gens, &w)
            }
        };
        // h2 lifted to a homotopy o ~ f'
        let ht2 = lift_homotopy(tower, prism, &h2, Some(&zero), Some(&f1), n)?;
        let h = concatenate(tower, level.triangle(), 1, [Some(&ht1), None, Some(&ht2)], n)?;
        Ok(Some(h))
    }

    /// Generators of `G_n^q` (`q ≥ 1`).
    pub fn generators(&self, n: usize, q: usize) -> Result<Arc<Vec<TowerMap>>> {
        if q == 0 {
            return Err(Error::InvalidInput("generators are defined for q ≥ 1".into()));
        }
        self.check_stage(n)?;
        if let Some(g) = self.inner.generators.lock().unwrap().get(&(n, q)) {
            return Ok(g.clone());
        }
        let gens = if n == 0 {
            Vec::new()
        } else if q == 1 {
            self.group(n, q)?.generators().to_vec()
        } else {
            let zero = self.zero(n, q);
            let mut gens: Vec<TowerMap> = self
                .cohomology(n, q, n)
                .group()
                .generators()
                .iter()
                .map(|z| self.inner.tower.j(&zero, z))
                .collect::<Result<_>>()?;
            let lower = self.generators(n - 1, q)?;
            let hk = self.cohomology(n, q, n + 1);
            let classes = lower
                .iter()
                .map(|g| Ok(hk.group().coefficients(&self.obstruction(n, q, g)?)))
                .collect::<Result<Vec<_>>>()?;
            let words = kernel_generators_abelianized(&classes, hk.orders(), |c| c.clone());
            let ops = self.ops(n - 1, q);
            for w in words {
                let g = combination(ops.as_ref(), &lower, &w);
                let lift = self
                    .section(n, q, &g)?
                    .ok_or_else(|| Error::Inconsistent(format!("kernel element of k_{n} does not lift at q = {q}")))?;
                gens.push(lift);
            }
            gens
        };
        let gens = Arc::new(gens);
        Ok(self.inner.generators.lock().unwrap().entry((n, q)).or_insert(gens).clone())
    }

    /// `G_n^q` as a fully effective polycyclic group (`q ≥ 1`).
    pub fn group(&self, n: usize, q: usize) -> Result<Arc<Polycyclic<TowerMap>>> {
        if q == 0 {
            return Err(Error::InvalidInput("G_n^q is a group only for q ≥ 1".into()));
        }
        self.check_stage(n)?;
        if let Some(g) = self.inner.groups.lock().unwrap().get(&(n, q)) {
            return Ok(g.clone());
        }
        let ops = self.ops(n, q);
        let group = if n == 0 {
            Polycyclic::trivial(ops)
        } else {
            self.build_group(n, q, ops)?
        };
        let group = Arc::new(group);
        Ok(self.inner.groups.lock().unwrap().entry((n, q)).or_insert(group).clone())
    }

    fn build_group(&self, n: usize, q: usize, ops: Arc<dyn GroupOps<TowerMap>>) -> Result<Polycyclic<TowerMap>> {
        let lower = self.group(n - 1, q)?;
        let hk = self.cohomology(n, q, n + 1);
        let weak = Arc::downgrade(&self.inner);
        let upgrade = |w: &Weak<Inner>| Engine { inner: w.upgrade().expect("the engine outlives its groups") };
        let w = weak.clone();
        let quotient = kernel_to_abelian(&lower, hk.group(), move |g: &TowerMap| {
            upgrade(&w).obstruction(n, q, g).expect("obstructions of stored representatives are computable")
        });
        let coker = self.cokernel(n, q)?;
        let kernel = Polycyclic::from_abelian(coker.group());
        let trivial_kernel = kernel.is_empty();
        let (w1, w2, w3) = (weak.clone(), weak.clone(), weak);
        let pi_n = self.inner.tower.pi(n).clone();
        extension(ExtensionInput {
            kernel,
            quotient,
            ops,
            f: Arc::new(move |z: &Cochain| {
                let e = upgrade(&w1);
                e.inner.tower.j(&e.zero(n, q), z).expect("cocycles of the right degree")
            }),
            g: Arc::new(move |x: &TowerMap| x.truncate(n - 1)),
            t: Arc::new(move |x: &TowerMap| {
                let e = upgrade(&w2);
                let level = e.level(q);
                if trivial_kernel {
                    return Cochain::zero(level.set(), n, &pi_n);
                }
                let h1 = e
                    .nullhomotopy(n - 1, q, x)
                    .expect("stages are available")
                    .expect("the projection of a kernel element is nullhomotopic");
                let ht = lift_homotopy(&e.inner.tower, level.prism(), &h1, None, Some(x), n).expect("one-ended lifts exist");
                e.inner.tower.difference(&ht.pullback(level.prism().end(0)), &e.zero(n, q))
            }),
            section: Arc::new(move |g: &TowerMap| {
                upgrade(&w3)
                    .section(n, q, g)
                    .expect("stages are available")
                    .expect("kernel elements of k_n lift")
            }),
        })
    }

    /// `G_n^q` packaged with this engine.
    pub fn suspension_group_full(&self, n: usize, q: usize) -> Result<SuspensionGroup> {
        Ok(SuspensionGroup { engine: self.clone(), n, q, group: self.group(n, q)? })
    }

    /// Checks `j ∂ = 0` on the generators of `G_{n-1}^{q+1}` (with verified nullhomotopies) and
    /// `k_n p_n = 0` on the generators of `G_n^q`.
    pub fn check_exactness(&self, n: usize, q: usize) -> Result<ExactnessReport> {
        let mut report = ExactnessReport::default();
        if n == 0 {
            return Ok(report);
        }
        let zero = self.zero(n, q);
        for h in self.generators(n - 1, q + 1)?.iter() {
            let z = self.boundary(n, q, h)?;
            let jz = self.inner.tower.j(&zero, &z)?;
            let null = self
                .nullhomotopy(n, q, &jz)?
                .ok_or_else(|| Error::Inconsistent("j ∂ h is not nullhomotopic".into()))?;
            self.check_nullhomotopy(q, &jz, &null)?;
            report.boundary_checked += 1;
        }
        if q >= 1 {
            let hk = self.cohomology(n, q, n + 1);
            for g in self.group(n, q)?.generators() {
                let obs = self.obstruction(n, q, &g.truncate(n - 1))?;
                if !hk.group().is_zero(&obs) {
                    return Err(Error::Inconsistent("k_n p_n does not vanish on a generator".into()));
                }
                report.obstruction_checked += 1;
            }
        }
        Ok(report)
    }

    /// Verifies that `h` is a homotopy from zero to `f` on `L_q`, constant on `I × S_q`.
    pub fn check_nullhomotopy(&self, q: usize, f: &TowerMap, h: &TowerMap) -> Result<()> {
        let level = self.level(q);
        let zero = self.zero(f.stage(), q);
        check_homotopy(&self.inner.tower, &level.pair(), level.beta(), &zero, f, h)
    }
}

/// `[Σ_B X, Y]^{Σ_B A}_B ≅ G_{1 + dim X}^1` as a fully effective polycyclic group.
pub fn suspension_group_top(instance: &ProblemInstance) -> Result<SuspensionGroup> {
    let n = 1 + instance.dim();
    Engine::new(instance.clone(), n)?.suspension_group_full(n, 1)
}

/// Decides whether `f, g: X -> P_n` (`n = dim X`) are homotopic rel `A` over `B`.
///
/// Works in the stage pulled back along `β` with section `g`, where the question becomes
/// whether `f` is nullhomotopic. The certificate is checked before it is returned.
pub fn decide_homotopic(instance: &ProblemInstance, f: &TowerMap, g: &TowerMap) -> Result<Decision> {
    let n = instance.dim();
    let f = instance.adapt(f);
    let g = instance.adapt(g);
    for (name, m) in [("f", &f), ("g", &g)] {
        if m.stage() < n {
            return Err(Error::MissingStage { required: n, available: m.stage() });
        }
        instance.check_map(m).map_err(|e| Error::InvalidMap(format!("{name}: {e}")))?;
    }
    let tower = instance.tower().require(n)?;
    let (f, g) = (f.truncate(n), g.truncate(n));
    let sub = &instance.pair().sub;
    if !f.agrees_on(&g, sub) {
        return Err(Error::InvalidMap("f and g differ on A".into()));
    }
    let x = instance.space().clone();
    let pulled = tower.pullback(instance.beta(), &g)?;
    let id = SimplicialMap::identity(x.clone());
    let local = ProblemInstance::new(instance.pair().clone(), id.clone(), pulled)?;
    let engine = Engine::new(local, n)?;
    let f_local = TowerMap::new(id, f.coords().to_vec());
    let Some(h) = engine.nullhomotopy(n, 0, &f_local)? else {
        return Ok(Decision { homotopic: false, certificate: None, stages: n });
    };
    let level = engine.level(0);
    let base = level.prism().base_map().compose(instance.beta());
    let certificate = TowerMap::new(base, h.coords().to_vec());
    check_homotopy(&tower, instance.pair(), instance.beta(), &g, &f, &certificate)?;
    Ok(Decision { homotopic: true, certificate: Some(certificate), stages: n })
}

#[cfg(test)]
mod tests;
