use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use postnikov_core::abelian::{smith_normal_form, EffectiveAbelian, IntegerMatrix};
use postnikov_core::polycyclic::kernel_to_abelian;
use postnikov_core::simplicial::format::{set_from_json, set_to_json};
use postnikov_core::simplicial::{
    circle, product, sphere, standard_simplex, subdivided_circle, torus, wedge_of_circles, DegenerateSimplex,
};
use postnikov_core::tower::Lift;
use postnikov_core::{
    catalog, cohomology_group, suspension_group_top, Cochain, FgAbelian, Polycyclic, ProblemInstance,
    RelativeComplex, SimplexId, SimplicialMap, SimplicialPair, SimplicialSet, SuspensionGroup, TowerMap,
};
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=12, 1usize..=12)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-50i64..=50, c), r))
}

fn orders() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop_oneof![Just(0i64), 2i64..=7], 0..=4)
}

fn tuple(orders: &[i64]) -> impl Strategy<Value = Vec<i64>> {
    orders
        .iter()
        .map(|&q| if q == 0 { (-20i64..=20).boxed() } else { (0..q).boxed() })
        .collect::<Vec<_>>()
}

fn small_set() -> impl Strategy<Value = SimplicialSet> {
    prop_oneof![
        Just(circle()),
        Just(sphere(2)),
        Just(torus()),
        Just(standard_simplex(2)),
        (2usize..=4).prop_map(subdivided_circle),
        (1usize..=3).prop_map(wedge_of_circles),
    ]
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Nondegenerate m-simplices of `X × Y`: pairs `(s_I x, s_J y)` of degenerated nondegenerate
/// simplices with disjoint index sets `I, J ⊆ {0..m-1}`.
fn shuffle_count(x: &SimplicialSet, y: &SimplicialSet, m: usize) -> usize {
    let mut total = 0;
    for p in 0..=m {
        for q in 0..=m {
            if p + q < m {
                continue;
            }
            // I has m - p indices, J has m - q indices, disjoint subsets of {0..m-1}
            let (i, j) = (m - p, m - q);
            if i + j > m {
                continue;
            }
            let ways = binomial(m, i) * binomial(m - i, j);
            total += ways * x.count(p) * y.count(q);
        }
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_identities(rows in matrix()) {
        let a = IntegerMatrix::from_rows(&rows);
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u().mul(&a).mul(&s.v()), s.d());
        prop_assert!(s.u().determinant().abs().is_one());
        prop_assert!(s.v().determinant().abs().is_one());
        let d = s.diagonal();
        prop_assert!(d.iter().all(|x| x > &BigInt::from(0)));
        prop_assert!(d.windows(2).all(|w| (&w[1] % &w[0]) == BigInt::from(0)));
    }

    #[test]
    fn product_counts_follow_the_shuffle_formula(x in small_set(), y in small_set()) {
        let p = product(Arc::new(x.clone()), Arc::new(y.clone()));
        let top = x.dim().unwrap_or(0) + y.dim().unwrap_or(0);
        for m in 0..=top {
            prop_assert_eq!(p.set().count(m), shuffle_count(&x, &y, m), "dimension {}", m);
        }
        p.set().check_identities().unwrap();
    }

    #[test]
    fn set_documents_round_trip(x in small_set(), y in small_set()) {
        let p = product(Arc::new(x), Arc::new(y));
        let text = set_to_json(p.set());
        let back = set_from_json(&text).unwrap();
        prop_assert_eq!(&back, &**p.set());
        prop_assert_eq!(set_to_json(&back), text);
    }

    #[test]
    fn cohomology_extraction_is_additive(
        x in small_set(),
        pi in prop_oneof![Just(vec![0i64]), Just(vec![2]), Just(vec![0, 3])],
        degree in 0usize..=2,
        seed in prop::collection::vec(-4i64..=4, 8),
        bound in prop::collection::vec(-4i64..=4, 40),
    ) {
        let pi = FgAbelian::new(pi).unwrap();
        let pair = SimplicialPair::absolute(Arc::new(x));
        let h = cohomology_group(&pair, &pi, degree);
        let g = h.group();
        for (i, gen) in g.generators().iter().enumerate() {
            let mut e = vec![0; g.rank()];
            e[i] = 1;
            h.orders().reduce(&mut e);
            prop_assert_eq!(g.coefficients(gen), e);
        }
        // random classes, each shifted by a random coboundary
        let set = pair.total.clone();
        let shift = |k: usize| {
            if degree == 0 {
                return g.zero();
            }
            let mut c = Cochain::zero(&set, degree - 1, &pi);
            for j in 0..c.len() {
                let v: Vec<i64> = (0..pi.rank()).map(|r| bound[(k * 7 + j * pi.rank() + r) % bound.len()]).collect();
                c.set(j, &v);
            }
            c.coboundary(&set, &pi)
        };
        let z1: Vec<i64> = (0..g.rank()).map(|i| seed[i % seed.len()]).collect();
        let z2: Vec<i64> = (0..g.rank()).map(|i| seed[(i + 3) % seed.len()]).collect();
        let a = g.element(&z1).add(&shift(1), &pi);
        let b = g.element(&z2).add(&shift(2), &pi);
        let sum = g.coefficients(&a.add(&b, &pi));
        prop_assert_eq!(sum, h.orders().add(&g.coefficients(&a), &g.coefficients(&b)));
        let mut r1 = z1.clone();
        h.orders().reduce(&mut r1);
        prop_assert_eq!(g.coefficients(&a), r1);
    }
}

fn standard(orders: &[i64]) -> Polycyclic<Vec<i64>> {
    Polycyclic::from_abelian(&EffectiveAbelian::standard(&FgAbelian::new(orders.to_vec()).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn polycyclic_round_trip_and_laws((orders, z, w, v) in orders().prop_flat_map(|o| {
        let (a, b, c) = (tuple(&o), tuple(&o), tuple(&o));
        (Just(o), a, b, c)
    })) {
        let g = standard(&orders);
        let mut reduced = z.clone();
        FgAbelian::new(orders.clone()).unwrap().reduce(&mut reduced);
        prop_assert_eq!(g.coefficients(&g.element(&z)), reduced);
        prop_assert_eq!(g.coefficients(&g.zero()), vec![0; orders.len()]);
        let x = g.element(&z);
        prop_assert!(g.is_zero(&g.add(&x, &g.neg(&x))));
        let (y, u) = (g.element(&w), g.element(&v));
        prop_assert_eq!(
            g.coefficients(&g.add(&g.add(&x, &y), &u)),
            g.coefficients(&g.add(&x, &g.add(&y, &u)))
        );
        for (i, gen) in g.generators().iter().enumerate() {
            let mut e = vec![0; orders.len()];
            e[i] = 1;
            prop_assert_eq!(g.coefficients(gen), e);
        }
    }

    #[test]
    fn kernel_generators_map_to_zero(
        (orders, rows) in orders().prop_flat_map(|o| {
            let r = o.len();
            (Just(o), prop::collection::vec(prop::collection::vec(-3i64..=3, r), 1..=3))
        }),
        target in prop::collection::vec(2i64..=6, 3),
    ) {
        // f(x)_k = Σ_i rows[k][i] x_i mod target[k], well defined when target[k] divides the
        // row entries times each finite order
        let source = standard(&orders);
        let target: Vec<i64> = target[..rows.len()].to_vec();
        let rows: Vec<Vec<i64>> = rows
            .iter()
            .zip(&target)
            .map(|(row, &t)| {
                row.iter().zip(&orders).map(|(&a, &q)| if q == 0 || (a * q) % t == 0 { a } else { 0 }).collect()
            })
            .collect();
        let h = EffectiveAbelian::standard(&FgAbelian::new(target.clone()).unwrap());
        let (r2, t2) = (rows.clone(), target.clone());
        let f = move |x: &Vec<i64>| -> Vec<i64> {
            r2.iter().zip(&t2).map(|(row, &t)| row.iter().zip(x).map(|(a, b)| a * b).sum::<i64>().rem_euclid(t)).collect()
        };
        let k = kernel_to_abelian(&source, &h, f.clone());
        for gen in k.generators() {
            prop_assert!(f(gen).iter().all(|&c| c == 0));
        }
        // finite sources: the kernel has the right size
        if orders.iter().all(|&q| q > 0) {
            let size: i64 = orders.iter().product();
            let all: Vec<Vec<i64>> = (0..size)
                .map(|mut n| orders.iter().map(|&q| { let d = n % q; n /= q; d }).collect())
                .collect();
            let expected = all.iter().filter(|x| f(x).iter().all(|&c| c == 0)).count() as i64;
            prop_assert_eq!(k.orders().iter().product::<i64>(), expected);
        }
    }
}

/// `a x + b y` on `S² × S²` through the cup-square stage: lifts iff `2ab = 0`, and otherwise
/// the obstruction is `2ab` times the cross product class.
fn product_of_spheres() -> &'static (Arc<SimplicialSet>, Cochain, Cochain, i64) {
    static DATA: OnceLock<(Arc<SimplicialSet>, Cochain, Cochain, i64)> = OnceLock::new();
    DATA.get_or_init(|| {
        let s2 = Arc::new(sphere(2));
        let p = product(s2.clone(), s2.clone());
        let z = FgAbelian::integers();
        let mut u = Cochain::zero(&s2, 2, &z);
        u.set(0, &[1]);
        let (x, y) = (u.pullback(&p.pr1()), u.pullback(&p.pr2()));
        let set = p.set().clone();
        // Alexander–Whitney x ∪ y on each 4-simplex
        let mut cross = Cochain::zero(&set, 4, &z);
        let value = |c: &Cochain, s: &DegenerateSimplex| s.as_nondegenerate().map_or(0, |id| c.get(id.index)[0]);
        for id in set.simplices(4) {
            let s = DegenerateSimplex::nondegenerate(id);
            let v = value(&x, &set.apply(&s, &[0, 1, 2])) * value(&y, &set.apply(&s, &[2, 3, 4]));
            cross.set(id.index, &[v]);
        }
        let h4 = cohomology_group(&SimplicialPair::absolute(set.clone()), &z, 4);
        let class = h4.group().coefficients(&cross)[0];
        (set, x, y, class)
    })
}

fn engines() -> &'static Vec<SuspensionGroup> {
    static GROUPS: OnceLock<Vec<SuspensionGroup>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        let pointed = |s: SimplicialSet| SimplicialPair::pointed(Arc::new(s), SimplexId::new(0, 0));
        [("K(Z+Z/3,2)", pointed(wedge_of_circles(2))), ("K(Z,3)", pointed(torus())), ("S2-stage3", pointed(sphere(2)))]
            .into_iter()
            .map(|(t, pair)| suspension_group_top(&ProblemInstance::over_point(pair, catalog(t).unwrap()).unwrap()).unwrap())
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn one_stage_lifts_of_sphere_products(a in -3i64..=3, b in -3i64..=3) {
        let (set, x, y, cross) = product_of_spheres();
        prop_assert_eq!(cross.abs(), 1);
        let z = FgAbelian::integers();
        let tower = catalog("S2-stage3").unwrap();
        let base = SimplicialMap::to_point(set.clone(), tower.base().clone()).unwrap();
        let c2 = x.scale(a, &z).add(&y.scale(b, &z), &z);
        let f = TowerMap::new(base, vec![Cochain::zero(set, 1, tower.pi(1)), c2]);
        let rel = RelativeComplex::from_pair(&SimplicialPair::absolute(set.clone()));
        match tower.lift_one_stage(&rel, &f, &Cochain::zero(set, 3, tower.pi(3))).unwrap() {
            Lift::Found(g) => {
                prop_assert_eq!(a * b, 0);
                prop_assert!(g.truncate(2).same_values(&f));
                tower.check_map(&g).unwrap();
            }
            Lift::Obstructed(ob) => {
                prop_assert_ne!(a * b, 0);
                let h4 = cohomology_group(&SimplicialPair::absolute(set.clone()), &z, 4);
                prop_assert_eq!(h4.group().coefficients(&ob)[0], 2 * a * b * cross);
            }
        }
    }

    #[test]
    fn suspension_group_laws(which in 0usize..3, seed in prop::collection::vec(-9i64..=9, 9)) {
        let g = &engines()[which];
        let r = g.orders().len();
        let pick = |k: usize| -> Vec<i64> {
            g.orders()
                .iter()
                .enumerate()
                .map(|(i, &q)| { let v = seed[(k * r + i) % seed.len()]; if q == 0 { v } else { v.rem_euclid(q) } })
                .collect()
        };
        let (x, y, u) = (g.element(&pick(0)), g.element(&pick(1)), g.element(&pick(2)));
        prop_assert_eq!(g.coefficients(&x), pick(0));
        let grp = g.group();
        prop_assert!(grp.is_zero(&grp.add(&x, &grp.neg(&x))));
        prop_assert_eq!(g.coefficients(&grp.add(&grp.zero(), &x)), pick(0));
        prop_assert_eq!(
            g.coefficients(&grp.add(&grp.add(&x, &y), &u)),
            g.coefficients(&grp.add(&x, &grp.add(&y, &u)))
        );
        let engine = g.engine();
        // every sum is nullhomotopic against its recomputation with a verified homotopy
        let s = grp.add(&x, &y);
        let d = grp.add(&s, &grp.neg(&grp.add(&x, &y)));
        let h = engine.nullhomotopy(g.n(), g.q(), &d).unwrap().expect("s - s is null");
        engine.check_nullhomotopy(g.q(), &d, &h).unwrap();
    }
}

#[test]
fn shuffle_oracle_matches_known_products() {
    // Δ¹ × Δ¹ has 4 vertices, 5 edges, 2 triangles
    let i = standard_simplex(1);
    assert_eq!((0..=2).map(|m| shuffle_count(&i, &i, m)).collect::<Vec<_>>(), vec![4, 5, 2]);
}
