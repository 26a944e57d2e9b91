use std::sync::Arc;

use super::Tower;
use crate::abelian::{Cochain, FgAbelian};
use crate::em::KExpr;
use crate::error::{Error, Result};
use crate::simplicial::{point, sphere};

pub fn catalog_names() -> &'static [&'static str] {
    &["K(pi,n)", "K(pi,n)xK(rho,m)x...", "S2-stage3"]
}

/// Parses `Z`, `Z/q` and direct sums written with `+` or `⊕`, e.g. `Z+Z/3`; `0` is trivial.
pub fn parse_group(text: &str) -> Result<FgAbelian> {
    let text = text.trim();
    if text == "0" {
        return Ok(FgAbelian::trivial());
    }
    let mut orders = Vec::new();
    for part in text.split(['+', '⊕']) {
        let part = part.trim();
        let q = if part == "Z" {
            0
        } else if let Some(q) = part.strip_prefix("Z/") {
            q.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad cyclic order in `{part}`")))?
        } else {
            return Err(Error::Parse(format!("cannot read `{part}` as a cyclic group")));
        };
        orders.push(q);
    }
    FgAbelian::new(orders)
}

fn parse_em(text: &str) -> Result<(FgAbelian, usize)> {
    let inner = text
        .trim()
        .strip_prefix("K(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::UnknownCatalog(text.to_string()))?;
    let (group, n) = inner.rsplit_once(',').ok_or_else(|| Error::UnknownCatalog(text.to_string()))?;
    let n: usize = n.trim().parse().map_err(|_| Error::UnknownCatalog(text.to_string()))?;
    if n == 0 {
        return Err(Error::UnknownCatalog(format!("{text}: degree must be positive")));
    }
    Ok((parse_group(group)?, n))
}

/// Built-in towers over a point.
///
/// * `K(pi,n)`: the single nontrivial stage `π` in degree `n`; complete.
/// * `K(pi,n)xK(rho,m)x...`: a product of such stages (distinct degrees); complete.
/// * `S2-stage3`: `π_2 = Z`, `π_3 = Z` with `k_3 = x ⌣ x`, and `φ: S² -> P_3` sending the
///   2-simplex to the generator.
pub fn catalog(name: &str) -> Result<Tower> {
    let pt = Arc::new(point());
    if name == "S2-stage3" {
        let z = FgAbelian::integers();
        let stages = vec![
            (FgAbelian::trivial(), KExpr::Zero),
            (z.clone(), KExpr::Zero),
            (z.clone(), KExpr::cup(KExpr::coord(2), KExpr::coord(2))),
        ];
        let tower = Tower::new(name, pt, stages, false)?;
        let s2 = Arc::new(sphere(2));
        let mut x = Cochain::zero(&s2, 2, &z);
        x.set(0, &[1]);
        let coords = vec![Cochain::zero(&s2, 1, &FgAbelian::trivial()), x, Cochain::zero(&s2, 3, &z)];
        return tower.with_phi(s2, coords);
    }
    let mut degrees: Vec<(usize, FgAbelian)> = Vec::new();
    for factor in name.split('x') {
        let (pi, n) = parse_em(factor)?;
        if degrees.iter().any(|(m, _)| *m == n) {
            return Err(Error::UnknownCatalog(format!("{name}: two factors in degree {n}")));
        }
        degrees.push((n, pi));
    }
    let top = degrees.iter().map(|(n, _)| *n).max().unwrap_or(0);
    let stages = (1..=top)
        .map(|n| {
            let pi = degrees.iter().find(|(m, _)| *m == n).map_or_else(FgAbelian::trivial, |(_, g)| g.clone());
            (pi, KExpr::Zero)
        })
        .collect();
    Tower::new(name, pt, stages, true)
}
