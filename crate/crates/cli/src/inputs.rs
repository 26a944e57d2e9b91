use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use postnikov_core::simplicial::format::{map_from_doc, pair_from_doc, MapDoc, PairDoc};
use postnikov_core::simplicial::{circle, point, sphere, subdivided_circle, torus, wedge_of_circles};
use postnikov_core::tower::TowerMapDoc;
use postnikov_core::{catalog, ProblemInstance, SimplexId, SimplicialMap, SimplicialPair, SimplicialSet, Tower, TowerMap};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// A tower file, or a catalog name such as `K(Z,2)` or `S2-stage3`.
pub fn load_tower(input: &str) -> Result<Tower> {
    let path = Path::new(input);
    if path.is_file() {
        return Tower::from_json(&read(path)?).with_context(|| format!("in tower file {}", path.display()));
    }
    catalog(input).with_context(|| format!("`{input}` is neither a tower file nor a catalog tower"))
}

/// Built-in pointed spaces: `pt`, `S<n>`, `T2`, `W<k>` (wedge of `k` circles), `C<k>` (circle
/// with `k` edges).
pub fn builtin_space(name: &str) -> Option<SimplicialSet> {
    let num = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok());
    match name {
        "pt" => Some(point()),
        "T2" => Some(torus()),
        "S1" => Some(circle()),
        _ => {
            if let Some(n) = num("S").filter(|&n| n >= 1) {
                Some(sphere(n))
            } else if let Some(k) = num("W").filter(|&k| k >= 1) {
                Some(wedge_of_circles(k))
            } else {
                num("C").filter(|&k| k >= 1).map(subdivided_circle)
            }
        }
    }
}

/// A pair file, or a built-in space pointed at its first vertex.
pub fn load_pair(input: &str) -> Result<SimplicialPair> {
    let path = Path::new(input);
    if path.is_file() {
        let doc: PairDoc = serde_json::from_str(&read(path)?).with_context(|| format!("in pair file {}", path.display()))?;
        return pair_from_doc(&doc).with_context(|| format!("in pair file {}", path.display()));
    }
    match builtin_space(input) {
        Some(set) => Ok(SimplicialPair::pointed(Arc::new(set), SimplexId::new(0, 0))),
        None => bail!("`{input}` is neither a pair file nor a built-in space"),
    }
}

/// The instance `(X, A)` over `β`; without a base-map file the tower base must be a point.
pub fn load_instance(tower: &str, pair: &str, base_map: Option<&Path>) -> Result<ProblemInstance> {
    let tower = load_tower(tower)?;
    let pair = load_pair(pair)?;
    match base_map {
        Some(path) => {
            let doc: MapDoc = serde_json::from_str(&read(path)?).with_context(|| format!("in map file {}", path.display()))?;
            let beta = map_from_doc(&doc, pair.total.clone(), tower.base().clone())
                .with_context(|| format!("in base map file {}", path.display()))?;
            Ok(ProblemInstance::new(pair, beta, tower)?)
        }
        None => Ok(ProblemInstance::over_point(pair, tower)?),
    }
}

/// A tower map file (`{"coords": ...}`) or a simplicial map into the comparison target.
pub fn load_map(inst: &ProblemInstance, path: &Path) -> Result<TowerMap> {
    let text = read(path)?;
    let value: serde_json::Value = serde_json::from_str(&text).with_context(|| format!("in map file {}", path.display()))?;
    let located = |e: postnikov_core::Error| anyhow::Error::new(e).context(format!("in map file {}", path.display()));
    if value.get("coords").is_some() {
        let doc: TowerMapDoc = serde_json::from_value(value).with_context(|| format!("in map file {}", path.display()))?;
        let map = inst.tower().map_from_doc(inst.space(), &doc).map_err(located)?;
        inst.check_map(&map).map_err(located)?;
        return Ok(map);
    }
    let doc: MapDoc = serde_json::from_value(value).with_context(|| format!("in map file {}", path.display()))?;
    let phi = inst
        .tower()
        .phi()
        .with_context(|| format!("{} has no comparison map; give the map as tower coordinates", inst.tower().name()))?;
    let f: SimplicialMap = map_from_doc(&doc, inst.space().clone(), phi.target.clone()).map_err(located)?;
    inst.compose_phi(&f).map_err(located)
}

/// Refuses jobs that need more stages than the cap or the tower allow.
pub fn check_stages(inst: &ProblemInstance, required: usize, cap: Option<usize>) -> Result<()> {
    if let Some(cap) = cap {
        if required > cap {
            bail!("stage {required} is required, above the stage cap {cap}");
        }
    }
    inst.tower().require(required)?;
    Ok(())
}
