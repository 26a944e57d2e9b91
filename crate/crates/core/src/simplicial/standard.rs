use std::collections::HashMap;

use itertools::Itertools;

use super::{DegenerateSimplex, SimplexId, SimplicialSet};

fn subset_label(vs: &[usize]) -> String {
    vs.iter().map(|v| v.to_string()).join("")
}

/// Simplicial set of an ordered simplicial complex given by its facets (vertex lists sorted
/// increasingly). Vertex labels are the decimal vertex numbers.
pub(crate) fn from_facets(name: &str, facets: &[Vec<usize>]) -> SimplicialSet {
    let mut by_dim: Vec<Vec<Vec<usize>>> = Vec::new();
    for facet in facets {
        for k in 1..=facet.len() {
            for sub in facet.iter().copied().combinations(k) {
                while by_dim.len() < k {
                    by_dim.push(Vec::new());
                }
                by_dim[k - 1].push(sub);
            }
        }
    }
    let mut b = SimplicialSet::builder(name);
    let mut ids: HashMap<Vec<usize>, SimplexId> = HashMap::new();
    for simplices in by_dim.iter_mut() {
        simplices.sort();
        simplices.dedup();
        for s in simplices.iter() {
            let faces = if s.len() == 1 {
                Vec::new()
            } else {
                (0..s.len())
                    .map(|i| {
                        let mut f = s.clone();
                        f.remove(i);
                        DegenerateSimplex::nondegenerate(ids[&f])
                    })
                    .collect()
            };
            let id = b.add(subset_label(s), faces).expect("valid complex");
            ids.insert(s.clone(), id);
        }
    }
    b.build_unchecked()
}

/// The standard simplex `Δⁿ`.
pub fn standard_simplex(n: usize) -> SimplicialSet {
    from_facets(&format!("Delta{n}"), &[(0..=n).collect()])
}

/// The boundary `∂Δⁿ` (`n ≥ 1`).
pub fn boundary_simplex(n: usize) -> SimplicialSet {
    let facets: Vec<Vec<usize>> = (0..=n).map(|i| (0..=n).filter(|&j| j != i).collect()).collect();
    from_facets(&format!("dDelta{n}"), &facets)
}

/// The horn `Λⁿ_k` spanned by the faces `d_j Δⁿ`, `j ≠ k`.
pub fn horn(n: usize, k: usize) -> SimplicialSet {
    let facets: Vec<Vec<usize>> = (0..=n)
        .filter(|&i| i != k)
        .map(|i| (0..=n).filter(|&j| j != i).collect())
        .collect();
    from_facets(&format!("Horn{n}_{k}"), &facets)
}

/// The interval `I = Δ¹` with vertices `0`, `1` and edge `01`.
pub fn interval() -> SimplicialSet {
    standard_simplex(1).with_name("I")
}

pub fn point() -> SimplicialSet {
    standard_simplex(0).with_name("pt")
}

/// `Sⁿ = Δⁿ/∂Δⁿ`: one vertex `*` and one nondegenerate `n`-simplex `e` with degenerate faces.
pub fn sphere(n: usize) -> SimplicialSet {
    let mut b = SimplicialSet::builder(format!("S{n}"));
    let v = b.add_vertex("*").unwrap();
    if n > 0 {
        let mut faces = Vec::new();
        for _ in 0..=n {
            let word: Vec<usize> = (0..n - 1).rev().collect();
            faces.push(DegenerateSimplex::new(word, v).unwrap());
        }
        b.add("e", faces).unwrap();
    }
    b.build_unchecked()
}

/// The minimal circle: one vertex and one edge.
pub fn circle() -> SimplicialSet {
    sphere(1)
}

/// A circle subdivided into `k ≥ 1` edges.
pub fn subdivided_circle(k: usize) -> SimplicialSet {
    assert!(k >= 1);
    let mut b = SimplicialSet::builder(format!("C{k}"));
    let vs: Vec<SimplexId> = (0..k).map(|i| b.add_vertex(format!("v{i}")).unwrap()).collect();
    for i in 0..k {
        let from = vs[i];
        let to = vs[(i + 1) % k];
        b.add(
            format!("e{i}"),
            vec![DegenerateSimplex::nondegenerate(to), DegenerateSimplex::nondegenerate(from)],
        )
        .unwrap();
    }
    b.build_unchecked()
}

/// A wedge of `k` minimal circles at a single vertex.
pub fn wedge_of_circles(k: usize) -> SimplicialSet {
    let mut b = SimplicialSet::builder(format!("Wedge{k}S1"));
    let v = b.add_vertex("*").unwrap();
    for i in 0..k {
        let nd = DegenerateSimplex::nondegenerate(v);
        b.add(format!("a{i}"), vec![nd.clone(), nd]).unwrap();
    }
    b.build_unchecked()
}

/// The torus as a Δ-complex: one vertex, edges `a`, `b`, `c` (diagonal) and two triangles.
pub fn torus() -> SimplicialSet {
    let mut b = SimplicialSet::builder("T2");
    let v = b.add_vertex("*").unwrap();
    let nd = DegenerateSimplex::nondegenerate;
    let a = b.add("a", vec![nd(v), nd(v)]).unwrap();
    let bb = b.add("b", vec![nd(v), nd(v)]).unwrap();
    let c = b.add("c", vec![nd(v), nd(v)]).unwrap();
    // upper: 01 = a, 12 = b, 02 = c ; lower: 01 = b, 12 = a, 02 = c
    b.add("U", vec![nd(bb), nd(c), nd(a)]).unwrap();
    b.add("L", vec![nd(a), nd(c), nd(bb)]).unwrap();
    b.build_unchecked()
}
