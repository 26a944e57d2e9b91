//! Independent verification of homotopy certificates.
//!
//! Rebuilds `I × X` from scratch and checks every simplex: the pullback equations, the base
//! map, both ends and the relative side. Nothing here reuses the engine's cached structures.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::simplicial::{interval, product, SimplexId, SimplicialMap, SimplicialPair};
use crate::tower::{Tower, TowerMap};

/// Checks that `h: I × X -> P_n` is a homotopy over `β` from `from` (at `0 × X`) to `to`
/// (at `1 × X`) that is constant on `I × A`.
pub fn check_homotopy(
    tower: &Tower,
    pair: &SimplicialPair,
    beta: &SimplicialMap,
    from: &TowerMap,
    to: &TowerMap,
    h: &TowerMap,
) -> Result<()> {
    let i = Arc::new(interval());
    let cyl = product(i.clone(), pair.total.clone());
    let set = cyl.set();
    if **h.source() != **set {
        return Err(Error::InvalidMap("certificate is not defined on I × X".into()));
    }
    let n = h.stage();
    if from.stage() < n || to.stage() < n {
        return Err(Error::MissingStage { required: n, available: from.stage().min(to.stage()) });
    }
    for id in set.all_simplices() {
        let (_, x) = cyl.components(id);
        if *h.base_map().get(id) != beta.image(x) {
            return Err(Error::InvalidMap(format!("certificate leaves the fibre over {}", set.label(id))));
        }
    }
    tower.check_map(h)?;
    for (v, end) in [(0, from), (1, to)] {
        let vertex = SimplexId::new(0, v);
        for (k, c) in h.coords().iter().enumerate() {
            let expected = end.coord(k + 1);
            for x in pair.total.simplices(k + 1) {
                let s = cyl.pair(&i.constant(vertex, x.dim), &crate::simplicial::DegenerateSimplex::nondegenerate(x));
                let id = s.as_nondegenerate().expect("an end simplex is nondegenerate");
                if c.get(id.index) != expected.get(x.index) {
                    return Err(Error::InvalidMap(format!(
                        "certificate differs from the {} map at {} in coordinate {}",
                        if v == 0 { "initial" } else { "final" },
                        pair.total.label(x),
                        k + 1
                    )));
                }
            }
        }
    }
    let pr = cyl.pr2();
    let side = cyl.right_restricted(&pair.sub);
    for (k, c) in h.coords().iter().enumerate() {
        let constant = from.coord(k + 1).pullback(&pr);
        if !c.agrees_on(&constant, &side) {
            return Err(Error::InvalidMap(format!("certificate is not constant on I × A in coordinate {}", k + 1)));
        }
    }
    Ok(())
}
