use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::matrix::{smith_normal_form, to_big, to_small, IntegerMatrix, LinearSystem, Smith};
use super::FgAbelian;

/// Group structure on a set of representatives: the semi-effective interface.
pub trait GroupOps<R>: Send + Sync {
    fn zero(&self) -> R;
    fn add(&self, a: &R, b: &R) -> R;
    fn neg(&self, a: &R) -> R;

    fn sub(&self, a: &R, b: &R) -> R {
        self.add(a, &self.neg(b))
    }
}

/// `k * g` by doubling.
pub fn multiple<R: Clone>(ops: &dyn GroupOps<R>, g: &R, k: i64) -> R {
    if k < 0 {
        return ops.neg(&multiple(ops, g, -k));
    }
    let mut result: Option<R> = None;
    let mut base = g.clone();
    let mut k = k as u64;
    while k > 0 {
        if k & 1 == 1 {
            result = Some(match result {
                None => base.clone(),
                Some(r) => ops.add(&r, &base),
            });
        }
        k >>= 1;
        if k > 0 {
            base = ops.add(&base, &base);
        }
    }
    result.unwrap_or_else(|| ops.zero())
}

/// `z_1 g_1 + ... + z_r g_r`, summed left to right.
pub fn combination<R: Clone>(ops: &dyn GroupOps<R>, gens: &[R], coeffs: &[i64]) -> R {
    assert_eq!(gens.len(), coeffs.len(), "one coefficient per generator");
    let mut acc: Option<R> = None;
    for (g, &z) in gens.iter().zip(coeffs) {
        if z == 0 {
            continue;
        }
        let term = multiple(ops, g, z);
        acc = Some(match acc {
            None => term,
            Some(a) => ops.add(&a, &term),
        });
    }
    acc.unwrap_or_else(|| ops.zero())
}

/// Representative of `z mod q` with the smallest absolute value.
pub fn balanced(q: i64, z: i64) -> i64 {
    if q == 0 {
        return z;
    }
    let r = z.rem_euclid(q);
    if 2 * r > q {
        r - q
    } else {
        r
    }
}

pub type Extractor<R> = Arc<dyn Fn(&R) -> Vec<i64> + Send + Sync>;

/// A fully effective abelian group: generators `g_i` of orders `q_i` and an algorithm returning
/// the unique coefficients `z_i ∈ Z/q_i` with `[γ] = Σ z_i g_i`.
pub struct EffectiveAbelian<R> {
    ops: Arc<dyn GroupOps<R>>,
    generators: Vec<R>,
    orders: FgAbelian,
    extract: Extractor<R>,
}

impl<R> Clone for EffectiveAbelian<R>
where
    R: Clone,
{
    fn clone(&self) -> Self {
        EffectiveAbelian {
            ops: self.ops.clone(),
            generators: self.generators.clone(),
            orders: self.orders.clone(),
            extract: self.extract.clone(),
        }
    }
}

impl<R> fmt::Debug for EffectiveAbelian<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EffectiveAbelian({})", self.orders)
    }
}

impl<R: Clone + 'static> EffectiveAbelian<R> {
    pub fn new(ops: Arc<dyn GroupOps<R>>, generators: Vec<R>, orders: FgAbelian, extract: Extractor<R>) -> Self {
        assert_eq!(generators.len(), orders.rank(), "one order per generator");
        EffectiveAbelian { ops, generators, orders, extract }
    }

    pub fn trivial(ops: Arc<dyn GroupOps<R>>) -> Self {
        EffectiveAbelian {
            ops,
            generators: Vec::new(),
            orders: FgAbelian::trivial(),
            extract: Arc::new(|_| Vec::new()),
        }
    }

    pub fn ops(&self) -> &Arc<dyn GroupOps<R>> {
        &self.ops
    }

    pub fn generators(&self) -> &[R] {
        &self.generators
    }

    pub fn orders(&self) -> &FgAbelian {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn extractor(&self) -> &Extractor<R> {
        &self.extract
    }

    /// Coefficients reduced into `0..q_i` (unreduced for `q_i = 0`).
    pub fn coefficients(&self, g: &R) -> Vec<i64> {
        let mut z = (self.extract)(g);
        self.orders.reduce(&mut z);
        z
    }

    /// A representative of `Σ z_i g_i`.
    pub fn element(&self, z: &[i64]) -> R {
        let coeffs: Vec<i64> = z.iter().zip(self.orders.orders()).map(|(&x, &q)| balanced(q, x)).collect();
        combination(self.ops.as_ref(), &self.generators, &coeffs)
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
        self.coefficients(a).iter().all(|&x| x == 0)
    }
}

/// The standard model of `⊕ Z/q_i` on coordinate vectors.
impl GroupOps<Vec<i64>> for FgAbelian {
    fn zero(&self) -> Vec<i64> {
        FgAbelian::zero(self)
    }

    fn add(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        FgAbelian::add(self, a, b)
    }

    fn neg(&self, a: &Vec<i64>) -> Vec<i64> {
        FgAbelian::neg(self, a)
    }
}

impl EffectiveAbelian<Vec<i64>> {
    /// `⊕ Z/q_i` with unit generators.
    pub fn standard(group: &FgAbelian) -> Self {
        let r = group.rank();
        let generators = (0..r)
            .map(|i| {
                let mut e = vec![0; r];
                e[i] = 1;
                e
            })
            .collect();
        let g = group.clone();
        EffectiveAbelian::new(Arc::new(group.clone()), generators, group.clone(), Arc::new(move |v: &Vec<i64>| {
            let mut v = v.clone();
            g.reduce(&mut v);
            v
        }))
    }
}

/// `L / M` for lattices `M ⊆ L ⊆ Z^N` given by generating vectors, with generators of the
/// quotient in normal form and a coordinate map.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient: usize,
    generators: Vec<Vec<BigInt>>,
    orders: FgAbelian,
    lift: Smith,
    relations: Smith,
    kept: Vec<(usize, BigInt)>,
}

impl Subquotient {
    pub fn new(ambient: usize, l_gens: &[Vec<BigInt>], m_gens: &[Vec<BigInt>]) -> Self {
        let k = l_gens.len();
        let g = IntegerMatrix::from_columns(ambient, l_gens);
        let neg_m: Vec<Vec<BigInt>> = m_gens.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
        let joint = g.hstack(&IntegerMatrix::from_columns(ambient, &neg_m));
        let rels: Vec<Vec<BigInt>> = smith_normal_form(&joint)
            .kernel_basis()
            .into_iter()
            .map(|mut v| {
                v.truncate(k);
                v
            })
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        let relations = smith_normal_form(&IntegerMatrix::from_columns(k, &rels));
        let mut kept = Vec::new();
        let mut orders = Vec::new();
        let mut generators = Vec::new();
        for i in 0..k {
            let d = relations.diagonal().get(i).cloned().unwrap_or_else(BigInt::zero);
            if d.is_one() {
                continue;
            }
            let mut e = vec![BigInt::zero(); k];
            e[i] = BigInt::one();
            generators.push(g.mul_vec(&relations.apply_u_inverse(&e)));
            orders.push(d.to_i64().expect("order fits in 64 bits"));
            kept.push((i, d));
        }
        Subquotient {
            ambient,
            generators,
            orders: FgAbelian::new(orders).expect("invariant factors are valid orders"),
            lift: smith_normal_form(&g),
            relations,
            kept,
        }
    }

    pub fn orders(&self) -> &FgAbelian {
        &self.orders
    }

    /// Generators as vectors of the ambient lattice.
    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Coordinates of `x ∈ L` modulo `M`; `None` if `x ∉ L`.
    pub fn coordinates(&self, x: &[BigInt]) -> Option<Vec<i64>> {
        let y = self.lift.solve(x)?;
        let u = self.relations.apply_u(&y);
        Some(
            self.kept
                .iter()
                .map(|(i, d)| {
                    let z = if d.is_zero() { u[*i].clone() } else { u[*i].mod_floor(d) };
                    z.to_i64().expect("coordinate fits in 64 bits")
                })
                .collect(),
        )
    }
}

fn unit_vectors_scaled(group: &FgAbelian) -> Vec<Vec<BigInt>> {
    let r = group.rank();
    group
        .orders()
        .iter()
        .enumerate()
        .filter(|(_, &q)| q != 0)
        .map(|(i, &q)| {
            let mut v = vec![BigInt::zero(); r];
            v[i] = BigInt::from(q);
            v
        })
        .collect()
}

/// `ker f` for a computable homomorphism between fully effective abelian groups.
pub fn kernel_abelian<R, S>(
    source: &EffectiveAbelian<R>,
    target: &EffectiveAbelian<S>,
    f: impl Fn(&R) -> S,
) -> EffectiveAbelian<R>
where
    R: Clone + Send + Sync + 'static,
    S: Clone + 'static,
{
    let r = source.rank();
    let columns: Vec<Vec<BigInt>> =
        source.generators().iter().map(|g| to_big(&target.coefficients(&f(g)))).collect();
    let matrix = IntegerMatrix::from_columns(target.rank(), &columns);
    let l = LinearSystem::new(&matrix, target.orders().orders()).kernel_generators();
    let sq = Subquotient::new(r, &l, &unit_vectors_scaled(source.orders()));
    let generators = sq.generators().iter().map(|v| source.element(&to_small(v))).collect();
    let src = source.clone();
    let orders = sq.orders().clone();
    EffectiveAbelian::new(
        source.ops().clone(),
        generators,
        orders,
        Arc::new(move |g: &R| {
            sq.coordinates(&to_big(&src.coefficients(g)))
                .expect("element lies in the source lattice")
        }),
    )
}

/// `H / ⟨images⟩` together with membership witnesses in the image subgroup.
pub struct Cokernel<R> {
    group: EffectiveAbelian<R>,
    target: EffectiveAbelian<R>,
    images: Vec<R>,
    system: LinearSystem,
}

impl<R: Clone + Send + Sync + 'static> Cokernel<R> {
    pub fn group(&self) -> &EffectiveAbelian<R> {
        &self.group
    }

    pub fn images(&self) -> &[R] {
        &self.images
    }

    /// Integers `w` with `[h] = Σ w_j [images_j]`, if `h` lies in the image subgroup.
    pub fn witness(&self, h: &R) -> Option<Vec<i64>> {
        let x = to_big(&self.target.coefficients(h));
        self.system.solve(&x).map(|w| to_small(&w))
    }
}

pub fn cokernel_from_generators<R: Clone + Send + Sync + 'static>(
    target: &EffectiveAbelian<R>,
    images: Vec<R>,
) -> Cokernel<R> {
    let s = target.rank();
    let columns: Vec<Vec<BigInt>> = images.iter().map(|g| to_big(&target.coefficients(g))).collect();
    let matrix = IntegerMatrix::from_columns(s, &columns);
    let identity: Vec<Vec<BigInt>> = (0..s)
        .map(|i| {
            let mut e = vec![BigInt::zero(); s];
            e[i] = BigInt::one();
            e
        })
        .collect();
    let mut m = columns.clone();
    m.extend(unit_vectors_scaled(target.orders()));
    let sq = Subquotient::new(s, &identity, &m);
    let generators = sq.generators().iter().map(|v| target.element(&to_small(v))).collect();
    let orders = sq.orders().clone();
    let h = target.clone();
    let group = EffectiveAbelian::new(
        target.ops().clone(),
        generators,
        orders,
        Arc::new(move |g: &R| {
            sq.coordinates(&to_big(&h.coefficients(g))).expect("identity lattice contains everything")
        }),
    );
    Cokernel {
        group,
        target: target.clone(),
        images,
        system: LinearSystem::new(&matrix, target.orders().orders()),
    }
}

/// Integer words in the given generators spanning the kernel of `f`, computed as if the source
/// were free abelian on the generators.
pub fn kernel_generators_abelianized<R>(
    generators: &[R],
    target: &FgAbelian,
    f: impl Fn(&R) -> Vec<i64>,
) -> Vec<Vec<i64>> {
    let columns: Vec<Vec<BigInt>> = generators.iter().map(|g| to_big(&f(g))).collect();
    let matrix = IntegerMatrix::from_columns(target.rank(), &columns);
    LinearSystem::new(&matrix, target.orders())
        .kernel_generators()
        .iter()
        .map(|v| to_small(v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn std_group(orders: &[i64]) -> EffectiveAbelian<Vec<i64>> {
        EffectiveAbelian::standard(&FgAbelian::new(orders.to_vec()).unwrap())
    }

    /// Linear map given by a matrix (rows = target coordinates).
    fn linear(matrix: Vec<Vec<i64>>, target: FgAbelian) -> impl Fn(&Vec<i64>) -> Vec<i64> {
        move |v: &Vec<i64>| {
            let mut out: Vec<i64> = matrix.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect();
            target.reduce(&mut out);
            out
        }
    }

    #[test]
    fn kernel_examples() {
        let z = std_group(&[0]);
        let k = kernel_abelian(&z, &z, linear(vec![vec![2]], FgAbelian::integers()));
        assert!(k.orders().is_trivial());

        let z2 = std_group(&[2]);
        let k = kernel_abelian(&z, &z2, linear(vec![vec![1]], FgAbelian::cyclic(2)));
        assert_eq!(k.orders().orders(), &[0]);
        assert_eq!(k.generators()[0][0].abs(), 2);

        let z6 = std_group(&[6]);
        let k = kernel_abelian(&z6, &z, |_| vec![0]);
        assert_eq!(k.orders().orders(), &[6]);
    }

    #[test]
    fn cokernel_examples() {
        let z = std_group(&[0]);
        let c = cokernel_from_generators(&z, vec![vec![2]]);
        assert_eq!(c.group().orders().orders(), &[2]);
        assert_eq!(c.witness(&vec![4]), Some(vec![2]));
        assert_eq!(c.witness(&vec![3]), None);

        let z2 = std_group(&[0, 0]);
        let c = cokernel_from_generators(&z2, vec![vec![2, 0], vec![0, 3]]);
        assert_eq!(c.group().orders().orders(), &[6]);
        assert_eq!(c.group().orders().size(), Some(6));

        let c = cokernel_from_generators(&z2, Vec::new());
        assert_eq!(c.group().orders().orders(), &[0, 0]);
    }

    #[test]
    fn abelianized_kernel() {
        let gens = vec![vec![1i64], vec![1]];
        let ker = kernel_generators_abelianized(&gens, &FgAbelian::integers(), |g| g.clone());
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0][0], -ker[0][1]);
        let ker = kernel_generators_abelianized(&gens, &FgAbelian::integers(), |_| vec![0]);
        assert_eq!(ker.len(), 2);
    }

    fn random_finite(rng: &mut impl Rng) -> FgAbelian {
        let choices = [2, 3, 4, 5, 6];
        loop {
            let r = rng.gen_range(0..=3);
            let orders: Vec<i64> = (0..r).map(|_| choices[rng.gen_range(0..choices.len())]).collect();
            let g = FgAbelian::new(orders).unwrap();
            if g.size().unwrap() <= 200 {
                return g;
            }
        }
    }

    /// A random homomorphism `⊕Z/a_j -> ⊕Z/b_i`: column j must be killed by `a_j`.
    fn random_hom(rng: &mut impl Rng, src: &FgAbelian, tgt: &FgAbelian) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; src.rank()]; tgt.rank()];
        for (j, &a) in src.orders().iter().enumerate() {
            for (i, &b) in tgt.orders().iter().enumerate() {
                let step = b / num_integer::gcd(a, b);
                m[i][j] = step * rng.gen_range(0..b.max(1));
            }
        }
        m
    }

    #[test]
    fn kernels_and_cokernels_match_enumeration() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..60 {
            let src = random_finite(&mut rng);
            let tgt = random_finite(&mut rng);
            let m = random_hom(&mut rng, &src, &tgt);
            let f = linear(m, tgt.clone());
            let g = EffectiveAbelian::standard(&src);
            let h = EffectiveAbelian::standard(&tgt);
            let k = kernel_abelian(&g, &h, &f);
            let members: Vec<Vec<i64>> =
                src.elements().into_iter().filter(|x| f(x).iter().all(|&c| c == 0)).collect();
            assert_eq!(k.orders().size().unwrap() as usize, members.len());
            for gen in k.generators() {
                assert!(f(gen).iter().all(|&c| c == 0));
            }
            let mut seen = std::collections::HashSet::new();
            for x in &members {
                let z = k.coefficients(x);
                let mut back = k.element(&z);
                src.reduce(&mut back);
                assert_eq!(back, *x);
                assert!(seen.insert(z));
            }

            let images: Vec<Vec<i64>> = g.generators().iter().map(&f).collect();
            let c = cokernel_from_generators(&h, images.clone());
            let image_set: std::collections::HashSet<Vec<i64>> = src.elements().iter().map(&f).collect();
            assert_eq!(c.group().orders().size().unwrap() as usize * image_set.len(), tgt.size().unwrap() as usize);
            for y in tgt.elements() {
                match c.witness(&y) {
                    Some(w) => {
                        let back = combination(h.ops().as_ref(), &images, &w);
                        assert_eq!(back, y);
                    }
                    None => assert!(!image_set.contains(&y)),
                }
            }
        }
    }
}
