//! Input families for timing runs.

use std::sync::Arc;

use postnikov_core::simplicial::subdivided_circle;
use postnikov_core::{catalog, Cochain, ProblemInstance, SimplexId, SimplicialPair, TowerMap};

/// The circle with `k` edges, pointed at `v0`, into the catalog tower `tower`.
pub fn circle_instance(k: usize, tower: &str) -> ProblemInstance {
    let pair = SimplicialPair::pointed(Arc::new(subdivided_circle(k)), SimplexId::new(0, 0));
    ProblemInstance::over_point(pair, catalog(tower).expect("catalog tower")).expect("valid instance")
}

/// The degree-one map into `K(Z,1)` that winds along edge `e`.
pub fn winding_map(inst: &ProblemInstance, e: usize) -> TowerMap {
    let tower = inst.tower();
    let zero = tower.zero_map(inst.beta(), 1);
    let mut z = Cochain::zero(inst.space(), 1, tower.pi(1));
    z.set(e, &[1]);
    tower.j(&zero, &z).expect("a 1-cochain on a circle is a cocycle")
}

/// `(instance, f, g)` with `f` winding along the first edge and `g` along the last.
pub fn decide_input(k: usize) -> (ProblemInstance, TowerMap, TowerMap) {
    let inst = circle_instance(k, "K(Z,1)");
    let f = winding_map(&inst, 0);
    let g = winding_map(&inst, k - 1);
    (inst, f, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use postnikov_core::{decide_homotopic, suspension_group_top};

    #[test]
    fn inputs_are_well_formed() {
        for k in [1, 3] {
            let (inst, f, g) = decide_input(k);
            assert!(decide_homotopic(&inst, &f, &g).unwrap().homotopic);
            let g = suspension_group_top(&circle_instance(k, "K(Z,2)")).unwrap();
            assert_eq!(g.orders(), &[0]);
        }
    }
}
