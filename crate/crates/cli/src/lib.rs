//! Command implementations behind the `postnikov` binary.
//!
//! Every command returns a serializable report; `main` only parses flags, prints and maps
//! outcomes to exit codes.

pub mod inputs;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use postnikov_core::abelian::matrix::to_small;
use postnikov_core::abelian::{smith_normal_form, IntegerMatrix};
use postnikov_core::polycyclic::Presentation;
use postnikov_core::simplicial::format::{map_from_doc, map_to_doc, pair_from_doc, pair_to_doc, MapDoc, PairDoc};
use postnikov_core::simplicial::{interval, product, subdivided_circle};
use postnikov_core::tower::{parse_group, TowerDoc, TowerMapDoc};
use postnikov_core::{
    catalog, check_homotopy, cohomology_group, decide_homotopic, suspension_group_top, Cochain, FgAbelian,
    ProblemInstance, SimplexId, SimplicialMap, SimplicialPair, SuspensionGroup, Tower, TowerMap,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

pub use inputs::{builtin_space, check_stages, load_instance, load_map, load_pair, load_tower};

/// Where the instance comes from.
#[derive(Clone, Debug)]
pub struct InstanceArgs {
    pub tower: String,
    pub pair: String,
    pub base_map: Option<PathBuf>,
    pub stage_cap: Option<usize>,
}

impl InstanceArgs {
    fn load(&self) -> Result<ProblemInstance> {
        load_instance(&self.tower, &self.pair, self.base_map.as_deref())
    }
}

/// A homotopy `h: I × X -> P_n` from `from` to `to`, rel `A`, over `β`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub tower: TowerDoc,
    pub pair: PairDoc,
    /// `None` when the base is a point.
    #[serde(default)]
    pub base_map: Option<MapDoc>,
    pub stages: usize,
    pub from: TowerMapDoc,
    pub to: TowerMapDoc,
    pub homotopy: TowerMapDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecideReport {
    pub homotopic: bool,
    pub stages: usize,
    pub certificate: Option<PathBuf>,
    pub verified: bool,
}

impl DecideReport {
    pub fn verdict(&self) -> &'static str {
        if self.homotopic {
            "HOMOTOPIC"
        } else {
            "NOT-HOMOTOPIC"
        }
    }
}

/// Builds the certificate document for a homotopy found by the engine.
pub fn certificate_doc(inst: &ProblemInstance, stages: usize, from: &TowerMap, to: &TowerMap, h: &TowerMap) -> CertificateDoc {
    let tower = inst.tower();
    let base_map = (tower.base().total_count() > 1).then(|| map_to_doc(inst.beta()));
    CertificateDoc {
        tower: tower.to_doc(),
        pair: pair_to_doc(inst.pair()),
        base_map,
        stages,
        from: tower.map_to_doc(from),
        to: tower.map_to_doc(to),
        homotopy: tower.map_to_doc(h),
    }
}

/// Re-reads a certificate from scratch and runs the independent homotopy checker on it.
pub fn check_certificate(doc: &CertificateDoc) -> Result<()> {
    let tower = Tower::from_doc(&doc.tower).context("certificate tower")?;
    let tower = tower.require(doc.stages).context("certificate tower")?;
    let pair = pair_from_doc(&doc.pair).context("certificate pair")?;
    let beta = match &doc.base_map {
        Some(m) => map_from_doc(m, pair.total.clone(), tower.base().clone()).context("certificate base map")?,
        None => SimplicialMap::to_point(pair.total.clone(), tower.base().clone()).context("certificate base map")?,
    };
    let from = tower.map_from_doc(&pair.total, &doc.from).context("certificate initial map")?;
    let to = tower.map_from_doc(&pair.total, &doc.to).context("certificate final map")?;
    let cyl = product(Arc::new(interval()), pair.total.clone());
    let h = tower.map_from_doc(cyl.set(), &doc.homotopy).context("certificate homotopy")?;
    check_homotopy(&tower, &pair, &beta, &from, &to, &h).context("certificate rejected")?;
    Ok(())
}

pub fn read_certificate(path: &Path) -> Result<CertificateDoc> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("in certificate {}", path.display()))
}

/// Decides `f ≃ g`; on success writes the certificate to `out`, reads it back and checks it.
pub fn cmd_decide(args: &InstanceArgs, map_f: &Path, map_g: &Path, out: &Path) -> Result<DecideReport> {
    let inst = args.load()?;
    let n = inst.dim();
    check_stages(&inst, n, args.stage_cap)?;
    let f = load_map(&inst, map_f)?;
    let g = load_map(&inst, map_g)?;
    let decision = decide_homotopic(&inst, &f, &g)?;
    let Some(h) = decision.certificate else {
        return Ok(DecideReport { homotopic: false, stages: n, certificate: None, verified: false });
    };
    // the engine's homotopy runs from g to f
    let from = inst.adapt(&g).truncate(n);
    let to = inst.adapt(&f).truncate(n);
    let doc = certificate_doc(&inst, n, &from, &to, &h);
    let text = serde_json::to_string(&doc)?;
    fs::write(out, text).with_context(|| format!("cannot write {}", out.display()))?;
    check_certificate(&read_certificate(out)?)?;
    Ok(DecideReport { homotopic: true, stages: n, certificate: Some(out.to_path_buf()), verified: true })
}

/// Seeded self-checks of a computed group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupChecks {
    pub seed: u64,
    pub samples: usize,
    pub boundary_checked: usize,
    pub obstruction_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuspReport {
    pub space: String,
    pub tower: String,
    pub n: usize,
    pub q: usize,
    /// `trivial group`, an abelian group such as `Z ⊕ Z/2`, or `polycyclic` for a
    /// non-commutative series.
    pub group: String,
    pub orders: Vec<i64>,
    pub generators: Vec<TowerMapDoc>,
    pub presentation: Presentation,
    #[serde(default)]
    pub checks: Option<GroupChecks>,
}

fn is_commutative(p: &Presentation) -> bool {
    p.conjugates.iter().all(|(_, j, w)| w.iter().enumerate().all(|(k, &c)| c == i64::from(k == *j)))
}

/// A readable name for the group with the given presentation.
pub fn group_name(p: &Presentation) -> String {
    if p.orders.is_empty() {
        return "trivial group".into();
    }
    if !is_commutative(p) {
        return "polycyclic".into();
    }
    // an abelian polycyclic group is Z^r / (power relations)
    let r = p.orders.len();
    let rows: Vec<Vec<i64>> = p
        .powers
        .iter()
        .map(|(i, w)| {
            let mut row: Vec<i64> = w.iter().map(|&c| -c).collect();
            row[*i] += p.orders[*i];
            row
        })
        .collect();
    let g = quotient_of_free(r, &rows);
    if g.is_trivial() {
        "trivial group".into()
    } else {
        g.to_string()
    }
}

/// `Z^r / ⟨rows⟩` in invariant-factor form.
fn quotient_of_free(r: usize, rows: &[Vec<i64>]) -> FgAbelian {
    let mut orders = vec![0i64; r];
    if !rows.is_empty() {
        let snf = smith_normal_form(&IntegerMatrix::from_rows(rows));
        for (o, d) in orders.iter_mut().zip(to_small(snf.diagonal())) {
            *o = d.abs();
        }
    }
    orders.retain(|&q| q != 1);
    FgAbelian::new(orders).map(|g| g.invariant_factors()).unwrap_or_else(|_| FgAbelian::trivial())
}

fn sample_checks(g: &SuspensionGroup, seed: u64, samples: usize) -> Result<GroupChecks> {
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..samples {
        let z: Vec<i64> = g
            .orders()
            .iter()
            .map(|&q| if q == 0 { rng.gen_range(-5..=5) } else { rng.gen_range(0..q) })
            .collect();
        let back = g.coefficients(&g.element(&z));
        if back != z {
            bail!("extraction returned {back:?} for the element with coefficients {z:?}");
        }
    }
    let report = g.engine().check_exactness(g.n(), g.q())?;
    Ok(GroupChecks {
        seed,
        samples,
        boundary_checked: report.boundary_checked,
        obstruction_checked: report.obstruction_checked,
    })
}

/// `[Σ_B X, Y]` relative to `Σ_B A` as a polycyclic group; `seed` enables the self-checks.
pub fn cmd_susp_group(args: &InstanceArgs, seed: Option<u64>) -> Result<SuspReport> {
    let inst = args.load()?;
    check_stages(&inst, 1 + inst.dim(), args.stage_cap)?;
    let g = suspension_group_top(&inst)?;
    let tower = inst.tower();
    let presentation = g.group().presentation();
    let checks = seed.map(|s| sample_checks(&g, s, 25)).transpose()?;
    Ok(SuspReport {
        space: inst.space().name().to_string(),
        tower: tower.name().to_string(),
        n: g.n(),
        q: g.q(),
        group: group_name(&presentation),
        orders: g.orders().to_vec(),
        generators: g.generators().iter().map(|m| tower.map_to_doc(m)).collect(),
        presentation,
        checks,
    })
}

impl SuspReport {
    /// Orders, generator tables (non-zero values only) and the presentation.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "group: {}", self.group);
        let _ = writeln!(s, "orders: {:?}", self.orders);
        for (k, g) in self.generators.iter().enumerate() {
            let _ = writeln!(s, "generator g{}:", k + 1);
            for (c, coord) in g.coords.iter().enumerate() {
                let nonzero: Vec<String> = coord
                    .iter()
                    .filter(|(_, v)| v.iter().any(|&x| x != 0))
                    .map(|(label, v)| format!("{label}={v:?}"))
                    .collect();
                if !nonzero.is_empty() {
                    let _ = writeln!(s, "  c{}: {}", c + 1, nonzero.join(" "));
                }
            }
        }
        let _ = write!(s, "presentation: {}", self.presentation);
        if let Some(c) = &self.checks {
            let _ = writeln!(
                s,
                "checks: seed {} samples {} boundary {} obstruction {}",
                c.seed, c.samples, c.boundary_checked, c.obstruction_checked
            );
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub space: String,
    pub degree: usize,
    pub coefficients: String,
    pub group: String,
    pub orders: Vec<i64>,
}

/// `H^n(X, A; π)` with `π` written like `Z`, `Z/2` or `Z+Z/3`.
pub fn cmd_cohomology(pair: &str, degree: usize, coefficients: &str) -> Result<CohomologyReport> {
    let pair = load_pair(pair)?;
    let pi = parse_group(coefficients)?;
    let h = cohomology_group(&pair, &pi, degree);
    let orders = h.orders().invariant_factors();
    Ok(CohomologyReport {
        space: pair.total.name().to_string(),
        degree,
        coefficients: pi.to_string(),
        group: orders.to_string(),
        orders: orders.orders().to_vec(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageInfo {
    pub n: usize,
    pub pi: String,
    pub k: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerInfo {
    pub name: String,
    pub base_simplices: usize,
    pub complete: bool,
    pub stages: Vec<StageInfo>,
    pub comparison_target: Option<String>,
}

pub fn cmd_tower_info(input: &str) -> Result<TowerInfo> {
    let tower = load_tower(input)?;
    let stages = tower
        .stages()
        .iter()
        .enumerate()
        .map(|(i, s)| StageInfo { n: i + 1, pi: s.group().to_string(), k: s.k_invariant().expr().to_string() })
        .collect();
    Ok(TowerInfo {
        name: tower.name().to_string(),
        base_simplices: tower.base().total_count(),
        complete: tower.is_complete(),
        stages,
        comparison_target: tower.phi().map(|p| p.target.name().to_string()),
    })
}

impl TowerInfo {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "tower: {}", self.name);
        let _ = writeln!(s, "base simplices: {}", self.base_simplices);
        let _ = writeln!(s, "complete: {}", self.complete);
        for st in &self.stages {
            let _ = writeln!(s, "stage {}: π = {}, k = {}", st.n, st.pi, st.k);
        }
        if let Some(t) = &self.comparison_target {
            let _ = writeln!(s, "comparison map from {t}");
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub edges: usize,
    pub simplices: usize,
    pub decide_ms: f64,
    pub susp_group_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchTable {
    pub reps: usize,
    pub rows: Vec<BenchRow>,
}

impl BenchTable {
    pub const HEADER: [&'static str; 4] = ["edges", "simplices", "decide_ms", "susp_group_ms"];

    pub fn render(&self) -> String {
        let mut s = format!("{:>8} {:>10} {:>12} {:>14}\n", Self::HEADER[0], Self::HEADER[1], Self::HEADER[2], Self::HEADER[3]);
        for r in &self.rows {
            let _ = writeln!(s, "{:>8} {:>10} {:>12.3} {:>14.3}", r.edges, r.simplices, r.decide_ms, r.susp_group_ms);
        }
        s
    }
}

/// The pointed circle with `k` edges.
pub fn bench_circle(k: usize) -> SimplicialPair {
    SimplicialPair::pointed(Arc::new(subdivided_circle(k)), SimplexId::new(0, 0))
}

/// The map `C_k -> K(Z,1)` sending edge `e` to 1 and every other edge to 0.
pub fn edge_map(inst: &ProblemInstance, edge: usize) -> Result<TowerMap> {
    let tower = inst.tower();
    let zero = tower.zero_map(inst.beta(), 1);
    let mut z = Cochain::zero(inst.space(), 1, tower.pi(1));
    z.set(edge, &[1]);
    Ok(tower.j(&zero, &z)?)
}

/// Times one decision (`e_0` against `e_{k-1}` into `K(Z,1)`) and one group computation
/// (`K(Z,2)`) per circle size; each time is the mean over `reps` runs.
pub fn cmd_bench(sizes: &[usize], reps: usize) -> Result<BenchTable> {
    let reps = reps.max(1);
    let mut sizes: Vec<usize> = sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    let mut rows = Vec::new();
    for k in sizes {
        if k == 0 {
            bail!("a subdivided circle needs at least one edge");
        }
        let pair = bench_circle(k);
        let simplices = pair.total.total_count();
        let inst = ProblemInstance::over_point(pair.clone(), catalog("K(Z,1)")?)?;
        let (f, g) = (edge_map(&inst, 0)?, edge_map(&inst, k - 1)?);
        let start = Instant::now();
        for _ in 0..reps {
            let d = decide_homotopic(&inst, &f, &g)?;
            if !d.homotopic {
                bail!("degree-one maps on C{k} were not identified");
            }
        }
        let decide_ms = start.elapsed().as_secs_f64() * 1e3 / reps as f64;
        let inst = ProblemInstance::over_point(pair, catalog("K(Z,2)")?)?;
        let start = Instant::now();
        for _ in 0..reps {
            let g = suspension_group_top(&inst)?;
            if g.orders() != [0] {
                bail!("unexpected group {:?} for C{k}", g.orders());
            }
        }
        let susp_group_ms = start.elapsed().as_secs_f64() * 1e3 / reps as f64;
        rows.push(BenchRow { edges: k, simplices, decide_ms, susp_group_ms });
    }
    Ok(BenchTable { reps, rows })
}

/// Parses a group name for `--coefficients`; exposed for argument validation.
pub fn parse_coefficients(s: &str) -> Result<FgAbelian> {
    Ok(parse_group(s)?)
}
