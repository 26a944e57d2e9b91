use super::*;
use crate::abelian::FgAbelian;
use crate::simplicial::{circle, point, sphere, torus, wedge_of_circles, SimplexId};
use crate::tower::catalog;

fn pointed(set: crate::simplicial::SimplicialSet) -> SimplicialPair {
    let set = Arc::new(set);
    SimplicialPair::pointed(set, SimplexId::new(0, 0))
}

fn instance(pair: SimplicialPair, tower: &str) -> ProblemInstance {
    ProblemInstance::over_point(pair, catalog(tower).unwrap()).unwrap()
}

/// The map `X -> K(π,2)` with the given value on every 2-simplex.
fn cocycle_map(inst: &ProblemInstance, n: usize, value: &[i64], on: &[usize]) -> TowerMap {
    let tower = inst.tower().require(n).unwrap();
    let zero = tower.zero_map(inst.beta(), n);
    let mut z = Cochain::zero(inst.space(), n, tower.pi(n));
    for &i in on {
        z.set(i, value);
    }
    tower.j(&zero, &z).unwrap()
}

#[test]
fn group_operations_on_a_single_stage() {
    let inst = instance(pointed(circle()), "K(Z,2)");
    let engine = Engine::new(inst, 2).unwrap();
    let ops = engine.ops(2, 1);
    let zero = ops.zero();
    let h2 = engine.cohomology(2, 1, 2);
    let class = |m: &TowerMap| h2.group().coefficients(&engine.tower().difference(m, &engine.zero(2, 1)));
    assert_eq!(class(&ops.add(&zero, &zero)), vec![0]);
    let level = engine.level(1);
    let top: Vec<usize> = level.set().simplices(2).map(|id| id.index).collect();
    let tz = |k: i64, i: usize| {
        let mut z = Cochain::zero(level.set(), 2, engine.tower().pi(2));
        z.set(top[i], &[k]);
        engine.tower().j(&engine.zero(2, 1), &z).unwrap()
    };
    let (a, b) = (tz(2, 0), tz(-5, top.len() - 1));
    let sum = ops.add(&a, &b);
    assert_eq!(class(&sum), vec![class(&a)[0] + class(&b)[0]]);
    let cancel = ops.add(&a, &ops.neg(&a));
    let null = engine.nullhomotopy(2, 1, &cancel).unwrap().expect("h - h is nullhomotopic");
    engine.check_nullhomotopy(1, &cancel, &null).unwrap();
}

#[test]
fn boundary_of_zero_and_of_trivial_lower_stages() {
    let inst = instance(pointed(circle()), "K(Z,2)");
    let engine = Engine::new(inst, 2).unwrap();
    let z = engine.boundary(2, 1, &engine.zero(1, 2)).unwrap();
    assert!(z.is_zero());
    // P_1 is a point here, so G_1^2 is trivial and ∂ vanishes
    assert!(engine.generators(1, 2).unwrap().is_empty());
    assert!(engine.cokernel(2, 1).unwrap().images().is_empty());
}

#[test]
fn nullhomotopies_on_the_sphere_and_torus() {
    let inst = instance(SimplicialPair::absolute(Arc::new(sphere(2))), "K(Z,2)");
    let engine = Engine::new(inst.clone(), 2).unwrap();
    let zero = engine.zero(2, 0);
    let h = engine.nullhomotopy(2, 0, &zero).unwrap().unwrap();
    engine.check_nullhomotopy(0, &zero, &h).unwrap();
    assert!(h.same_values(&engine.zero(2, 1)));
    let gen = cocycle_map(&inst, 2, &[1], &[0]);
    assert!(engine.nullhomotopy(2, 0, &gen).unwrap().is_none());

    let inst = instance(SimplicialPair::absolute(Arc::new(torus())), "K(Z,2)");
    let engine = Engine::new(inst.clone(), 2).unwrap();
    let t = inst.space();
    let mut c1 = Cochain::zero(t, 1, &FgAbelian::integers());
    c1.set(0, &[3]);
    c1.set(2, &[-1]);
    let dc = c1.coboundary(t, &FgAbelian::integers());
    assert!(!dc.is_zero());
    let f = engine.tower().j(&engine.zero(2, 0), &dc).unwrap();
    let h = engine.nullhomotopy(2, 0, &f).unwrap().expect("a coboundary is nullhomotopic");
    engine.check_nullhomotopy(0, &f, &h).unwrap();
    assert!(h.pullback(engine.level(0).prism().end(1)).same_values(&f));
}

#[test]
fn generators_and_groups_of_the_circle() {
    let inst = instance(pointed(circle()), "K(Z,2)");
    let engine = Engine::new(inst, 2).unwrap();
    let gens = engine.generators(2, 1).unwrap();
    assert_eq!(gens.len(), 1);
    let h2 = engine.cohomology(2, 1, 2);
    assert_eq!(h2.orders().orders(), &[0]);
    let class = h2.group().coefficients(&engine.tower().difference(&gens[0], &engine.zero(2, 1)));
    assert_eq!(class[0].abs(), 1);
    let g = engine.suspension_group_full(2, 1).unwrap();
    assert_eq!(g.orders(), &[0]);
    assert!(engine.group(0, 1).unwrap().is_trivial());
    // below the first nontrivial stage
    assert!(engine.generators(1, 1).unwrap().is_empty());
    assert!(engine.generators(1, 3).unwrap().is_empty());
}

#[test]
fn hopf_value_from_the_cup_square_stage() {
    let inst = instance(pointed(sphere(2)), "S2-stage3");
    let g = suspension_group_top(&inst).unwrap();
    assert_eq!(g.orders(), &[0]);
    // both flanking groups of the exact sequence vanish
    let engine = g.engine();
    assert!(engine.group(2, 1).unwrap().is_trivial());
    assert!(engine.cohomology(2, 2, 2).orders().is_trivial());
    let x = g.element(&[3]);
    assert_eq!(g.coefficients(&x), vec![3]);
    let report = engine.check_exactness(3, 1).unwrap();
    assert_eq!(report.obstruction_checked, 1);
}

#[test]
fn top_groups_of_small_spaces() {
    let g = suspension_group_top(&instance(SimplicialPair::full(Arc::new(point())), "K(Z,2)")).unwrap();
    assert!(g.orders().is_empty());
    let g = suspension_group_top(&instance(pointed(circle()), "K(Z,2)")).unwrap();
    assert_eq!(g.orders(), &[0]);

    let g = suspension_group_top(&instance(pointed(wedge_of_circles(2)), "K(Z,2)")).unwrap();
    assert_eq!(g.orders(), &[0, 0]);
    let engine = g.engine();
    let level = engine.level(1);
    let level0 = engine.level(0);
    let product = level0.prism().product();
    let over_edge = |e: usize| {
        let sigma = level
            .set()
            .simplices(2)
            .find(|&id| product.components(id).1.base() == SimplexId::new(1, e))
            .unwrap();
        let mut z = Cochain::zero(level.set(), 2, engine.tower().pi(2));
        z.set(sigma.index, &[1]);
        g.coefficients(&engine.tower().j(&engine.zero(2, 1), &z).unwrap())
    };
    let (a, b) = (over_edge(0), over_edge(1));
    assert_eq!((a[0] * b[1] - a[1] * b[0]).abs(), 1, "{a:?} {b:?}");
}

#[test]
fn decisions_with_certificates() {
    let inst = instance(SimplicialPair::absolute(Arc::new(sphere(2))), "K(Z,2)");
    let one = cocycle_map(&inst, 2, &[1], &[0]);
    let two = cocycle_map(&inst, 2, &[2], &[0]);
    let d = decide_homotopic(&inst, &one, &one).unwrap();
    assert!(d.homotopic);
    assert!(d.certificate.is_some());
    assert!(!decide_homotopic(&inst, &one, &two).unwrap().homotopic);

    // S^1 into a simply connected stage: everything is homotopic
    let inst = instance(pointed(circle()), "S2-stage3");
    let zero = inst.tower().zero_map(inst.beta(), 3);
    assert!(decide_homotopic(&inst, &zero, &zero).unwrap().homotopic);

    let inst = instance(SimplicialPair::absolute(Arc::new(circle())), "K(Z,1)xK(Z,2)");
    let a = cocycle_map(&inst, 1, &[1], &[0]);
    let b = cocycle_map(&inst, 1, &[2], &[0]);
    assert!(!decide_homotopic(&inst, &a, &b).unwrap().homotopic);
}

#[test]
fn missing_stages_are_reported() {
    let inst = instance(pointed(torus()), "S2-stage3");
    let tall = ProblemInstance::over_point(pointed(crate::simplicial::standard_simplex(3)), inst.tower().clone()).unwrap();
    assert!(matches!(suspension_group_top(&tall), Err(Error::MissingStage { required: 4, available: 3 })));
    let engine = Engine::new(inst, 2).unwrap();
    assert!(matches!(engine.group(3, 1), Err(Error::MissingStage { required: 3, .. })));
    assert!(engine.group(2, 0).is_err());
}
