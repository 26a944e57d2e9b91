//! Fully effective polycyclic groups.
//!
//! A group is given by representatives with `zero`/`add`/`neg`, elements `g_1..g_r` and orders
//! `q_1..q_r` (`0` meaning infinite cyclic) such that `G_i = ⟨g_1..g_i⟩` is a subnormal series with
//! `G_i / G_{i-1}` cyclic of order `q_i` generated by `g_i`. Every element is uniquely
//! `z_1 g_1 + ... + z_r g_r` with `z_i ∈ Z/q_i`, summed left to right.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::abelian::{
    balanced, cokernel_from_generators, combination, multiple, EffectiveAbelian, Extractor, FgAbelian, GroupOps,
};
use crate::error::{Error, Result};

pub struct Polycyclic<R> {
    ops: Arc<dyn GroupOps<R>>,
    generators: Vec<R>,
    orders: Vec<i64>,
    extract: Extractor<R>,
}

impl<R: Clone> Clone for Polycyclic<R> {
    fn clone(&self) -> Self {
        Polycyclic {
            ops: self.ops.clone(),
            generators: self.generators.clone(),
            orders: self.orders.clone(),
            extract: self.extract.clone(),
        }
    }
}

impl<R> fmt::Debug for Polycyclic<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polycyclic(length {}, orders {:?})", self.orders.len(), self.orders)
    }
}

impl<R: Clone + Send + Sync + 'static> Polycyclic<R> {
    /// `extract` must return the coefficient tuple reduced into `Z/q_i`.
    pub fn new(ops: Arc<dyn GroupOps<R>>, generators: Vec<R>, orders: Vec<i64>, extract: Extractor<R>) -> Self {
        assert_eq!(generators.len(), orders.len(), "one order per generator");
        Polycyclic { ops, generators, orders, extract }
    }

    pub fn trivial(ops: Arc<dyn GroupOps<R>>) -> Self {
        Polycyclic { ops, generators: Vec::new(), orders: Vec::new(), extract: Arc::new(|_| Vec::new()) }
    }

    /// The series `⟨g_1⟩ ≤ ⟨g_1, g_2⟩ ≤ ...` of an abelian group.
    pub fn from_abelian(group: &EffectiveAbelian<R>) -> Self {
        let g = group.clone();
        Polycyclic {
            ops: group.ops().clone(),
            generators: group.generators().to_vec(),
            orders: group.orders().orders().to_vec(),
            extract: Arc::new(move |x| g.coefficients(x)),
        }
    }

    pub fn ops(&self) -> &Arc<dyn GroupOps<R>> {
        &self.ops
    }

    pub fn generators(&self) -> &[R] {
        &self.generators
    }

    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    /// Series length `r`.
    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    /// Number of elements, if finite.
    pub fn size(&self) -> Option<i64> {
        self.orders.iter().all(|&q| q > 0).then(|| self.orders.iter().product())
    }

    pub fn extractor(&self) -> &Extractor<R> {
        &self.extract
    }

    /// The unique `z_i ∈ Z/q_i` with `[γ] = z_1 g_1 + ... + z_r g_r`.
    pub fn coefficients(&self, g: &R) -> Vec<i64> {
        (self.extract)(g)
    }

    /// `z_1 g_1 + ... + z_r g_r` with balanced coefficients.
    pub fn element(&self, z: &[i64]) -> R {
        let z: Vec<i64> = z.iter().zip(&self.orders).map(|(&x, &q)| balanced(q, x)).collect();
        combination(self.ops.as_ref(), &self.generators, &z)
    }

    pub fn zero(&self) -> R {
        self.ops.zero()
    }

    pub fn add(&self, a: &R, b: &R) -> R {
        self.ops.add(a, b)
    }

    pub fn neg(&self, a: &R) -> R {
        self.ops.neg(a)
    }

    pub fn equal(&self, a: &R, b: &R) -> bool {
        self.coefficients(a) == self.coefficients(b)
    }

    pub fn is_zero(&self, a: &R) -> bool {
        self.coefficients(a).iter().all(|&z| z == 0)
    }

    /// The group as an abelian group, assuming it is abelian.
    pub fn to_abelian(&self) -> EffectiveAbelian<R> {
        EffectiveAbelian::new(
            self.ops.clone(),
            self.generators.clone(),
            FgAbelian::new(self.orders.clone()).expect("orders are 0 or at least 2"),
            self.extract.clone(),
        )
    }

    /// Power and conjugation relations of the series.
    pub fn presentation(&self) -> Presentation {
        let r = self.len();
        let powers = (0..r)
            .filter(|&i| self.orders[i] > 0)
            .map(|i| (i, self.coefficients(&multiple(self.ops.as_ref(), &self.generators[i], self.orders[i]))))
            .collect();
        let mut conjugates = Vec::new();
        for i in 0..r {
            for j in i + 1..r {
                let gi = &self.generators[i];
                let c = self.ops.add(&self.ops.add(gi, &self.generators[j]), &self.ops.neg(gi));
                conjugates.push((i, j, self.coefficients(&c)));
            }
        }
        Presentation { orders: self.orders.clone(), powers, conjugates }
    }
}

/// Relations `q_i g_i = w` and `g_i + g_j - g_i = w` as coefficient tuples.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Presentation {
    pub orders: Vec<i64>,
    pub powers: Vec<(usize, Vec<i64>)>,
    pub conjugates: Vec<(usize, usize, Vec<i64>)>,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn word(z: &[i64]) -> String {
            let terms: Vec<String> = z
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(k, &c)| if c == 1 { format!("g{}", k + 1) } else { format!("{c}*g{}", k + 1) })
                .collect();
            if terms.is_empty() {
                "0".into()
            } else {
                terms.join(" + ")
            }
        }
        writeln!(f, "series length {}, orders {:?}", self.orders.len(), self.orders)?;
        for (i, w) in &self.powers {
            writeln!(f, "  {}*g{} = {}", self.orders[*i], i + 1, word(w))?;
        }
        for (i, j, w) in &self.conjugates {
            writeln!(f, "  g{a} + g{b} - g{a} = {}", word(w), a = i + 1, b = j + 1)?;
        }
        Ok(())
    }
}

/// Order of an element with the given coefficients in `⊕ Z/q_i`; `0` when infinite.
fn element_order(orders: &FgAbelian, z: &[i64]) -> i64 {
    let mut acc = 1i64;
    for (&q, &x) in orders.orders().iter().zip(z) {
        if x == 0 {
            continue;
        }
        if q == 0 {
            return 0;
        }
        acc = acc.lcm(&(q / q.gcd(&x)));
    }
    acc
}

/// A level of a kernel series: generator `k = -h + t g_i` covering `t · (G_i/G_{i-1})`.
struct KernelLevel {
    level: usize,
    t: i64,
}

/// `ker f` for `f: G -> H`, `G` polycyclic and `H` abelian, by induction along the series of `G`.
pub fn kernel_to_abelian<R, S>(
    source: &Polycyclic<R>,
    target: &EffectiveAbelian<S>,
    f: impl Fn(&R) -> S + Send + Sync + 'static,
) -> Polycyclic<R>
where
    R: Clone + Send + Sync + 'static,
    S: Clone + Send + Sync + 'static,
{
    let ops = source.ops().clone();
    let mut generators = Vec::new();
    let mut orders = Vec::new();
    let mut levels: Vec<KernelLevel> = Vec::new();
    for i in 0..source.len() {
        let gi = &source.generators()[i];
        let lower: Vec<S> = source.generators()[..i].iter().map(&f).collect();
        let coker = cokernel_from_generators(target, lower);
        let image = f(gi);
        let order = element_order(coker.group().orders(), &coker.group().coefficients(&image));
        let q = source.orders()[i];
        // t generates the kernel of Z/q -> coker; no new generator when that kernel is trivial
        let t = match (q, order) {
            (0, 0) => continue,
            (_, 0) => q,
            (_, o) => o,
        };
        if q > 0 && t == q {
            continue;
        }
        let tg = multiple(ops.as_ref(), gi, t);
        let w = coker.witness(&f(&tg)).expect("t kills the class in the cokernel");
        let h = combination(ops.as_ref(), &source.generators()[..i], &w);
        generators.push(ops.add(&ops.neg(&h), &tg));
        orders.push(if q == 0 { 0 } else { q / t });
        levels.push(KernelLevel { level: i, t });
    }
    let src = source.clone();
    let gens = generators.clone();
    let ords = orders.clone();
    let extract: Extractor<R> = Arc::new(move |g: &R| {
        let mut g = g.clone();
        let mut out = vec![0; gens.len()];
        let mut next = levels.len();
        for i in (0..src.len()).rev() {
            let z = src.coefficients(&g)[i];
            if next > 0 && levels[next - 1].level == i {
                next -= 1;
                let lv = &levels[next];
                assert_eq!(z % lv.t, 0, "element is not in the kernel");
                let c = FgAbelian::reduce_value(ords[next], z / lv.t);
                out[next] = c;
                let ck = multiple(src.ops().as_ref(), &gens[next], balanced(ords[next], c));
                g = src.ops().sub(&g, &ck);
            } else {
                assert_eq!(z, 0, "element is not in the kernel");
            }
        }
        out
    });
    Polycyclic::new(ops, generators, orders, extract)
}

/// `ker f` for `f: G -> H` between polycyclic groups, through `K_j = f^{-1}(H_j)`.
pub fn kernel_polycyclic<R, S>(
    source: &Polycyclic<R>,
    target: &Polycyclic<S>,
    f: impl Fn(&R) -> S + Send + Sync + 'static,
) -> Polycyclic<R>
where
    R: Clone + Send + Sync + 'static,
    S: Clone + Send + Sync + 'static,
{
    let f = Arc::new(f);
    let mut k = source.clone();
    for j in (0..target.len()).rev() {
        let factor = FgAbelian::new(vec![target.orders()[j]]).expect("valid order");
        let quotient = EffectiveAbelian::standard(&factor);
        let (h, f) = (target.clone(), f.clone());
        k = kernel_to_abelian(&k, &quotient, move |g| vec![h.coefficients(&f(g))[j]]);
    }
    k
}

/// The maps of a short exact sequence `K -f-> G -g-> H` with a partial inverse `t` of `f` on
/// its image and a set-theoretic section `σ` of `g`.
pub struct ExtensionInput<RK, R, RH> {
    pub kernel: Polycyclic<RK>,
    pub quotient: Polycyclic<RH>,
    pub ops: Arc<dyn GroupOps<R>>,
    pub f: Arc<dyn Fn(&RK) -> R + Send + Sync>,
    pub g: Arc<dyn Fn(&R) -> RH + Send + Sync>,
    pub t: Arc<dyn Fn(&R) -> RK + Send + Sync>,
    pub section: Arc<dyn Fn(&RH) -> R + Send + Sync>,
}

/// `G` with the series `f(K_1) ≤ ... ≤ f(K) ≤ g^{-1}(H_1) ≤ ... ≤ G`.
pub fn extension<RK, R, RH>(input: ExtensionInput<RK, R, RH>) -> Result<Polycyclic<R>>
where
    RK: Clone + Send + Sync + 'static,
    R: Clone + Send + Sync + 'static,
    RH: Clone + Send + Sync + 'static,
{
    let ExtensionInput { kernel, quotient, ops, f, g, t, section } = input;
    let lifts: Vec<R> = quotient.generators().iter().map(|eta| section(eta)).collect();
    for (j, (eta, lift)) in quotient.generators().iter().zip(&lifts).enumerate() {
        if !quotient.equal(&g(lift), eta) {
            return Err(Error::InvalidInput(format!("section does not lift quotient generator {}", j + 1)));
        }
    }
    let mut generators: Vec<R> = kernel.generators().iter().map(|k| f(k)).collect();
    generators.extend(lifts.iter().cloned());
    let mut orders = kernel.orders().to_vec();
    orders.extend_from_slice(quotient.orders());
    let ops2 = ops.clone();
    let extract: Extractor<R> = Arc::new(move |x: &R| {
        let mut x = x.clone();
        let s = quotient.len();
        let mut top = vec![0; s];
        for j in (0..s).rev() {
            let z = quotient.coefficients(&g(&x))[j];
            top[j] = z;
            let q = quotient.orders()[j];
            x = ops2.sub(&x, &multiple(ops2.as_ref(), &lifts[j], balanced(q, z)));
        }
        let mut out = kernel.coefficients(&t(&x));
        out.extend(top);
        out
    });
    Ok(Polycyclic::new(ops, generators, orders, extract))
}
