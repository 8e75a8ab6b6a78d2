//! The `strata`, `orbits` and `verify` commands.

use eostrata_core::verify::{run_suite, SuiteParams, SUITES};
use eostrata_core::weyl::strata_poset;
use eostrata_core::zip::{classify_orbits, group_order, resolve_geometric};
use eostrata_core::{Gf, JSubset, WeylGroup};
use serde::Serialize;

use crate::config::{CliError, CliResult, RunConfig};
use crate::json::{Int, Report};

/// The one place where weights become a set of simple reflections.
pub fn derive_j(weyl: &WeylGroup, cfg: &RunConfig) -> CliResult<JSubset> {
    Ok(JSubset::from_weights(&weyl.weyl_type(), cfg.chi.weights())?)
}

#[derive(Clone, Debug, Serialize)]
pub struct StratumNode {
    pub name: String,
    pub length: usize,
    pub is_max: bool,
    pub is_min: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverEdge {
    pub lower: String,
    pub upper: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct StrataResult {
    /// 1-based indices of the simple reflections in `J`.
    pub j: Vec<usize>,
    pub coset_count: usize,
    pub max_length: usize,
    pub elements: Vec<StratumNode>,
    pub hasse: Vec<CoverEdge>,
}

pub fn cmd_strata(cfg: &RunConfig) -> CliResult<Report<StrataResult>> {
    let weyl = WeylGroup::of_group(&cfg.group)?;
    let j = derive_j(&weyl, cfg)?;
    let poset = strata_poset(&weyl, &j)?;
    let elements: Vec<StratumNode> = (0..poset.elements.len())
        .map(|a| StratumNode {
            name: poset.names[a].clone(),
            length: poset.lengths[a],
            is_max: a == poset.max,
            is_min: a == poset.min,
        })
        .collect();
    let hasse = poset
        .hasse
        .iter()
        .map(|&(a, b)| CoverEdge { lower: poset.names[a].clone(), upper: poset.names[b].clone() })
        .collect();
    let results = StrataResult {
        j: j.simples.iter().map(|k| k + 1).collect(),
        coset_count: elements.len(),
        max_length: poset.lengths[poset.max],
        elements,
        hasse,
    };
    let anchors = vec!["closure-relations".to_string(), "extremal-strata".to_string()];
    Ok(Report { config: cfg.echo(), results, anchors })
}

/// Digraph with one node per coset representative and an edge per cover.
pub fn strata_dot(result: &StrataResult) -> String {
    let mut s = String::from("digraph strata {\n  rankdir=BT;\n");
    for e in &result.elements {
        s.push_str(&format!("  \"{}\" [label=\"{} (len={})\"];\n", e.name, e.name, e.length));
    }
    for e in &result.hasse {
        s.push_str(&format!("  \"{}\" -> \"{}\";\n", e.lower, e.upper));
    }
    s.push_str("}\n");
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitEntry {
    pub index: usize,
    pub size: Int,
    pub rep: Vec<Vec<u32>>,
    pub class: Option<usize>,
    pub label: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PiLabel {
    pub name: String,
    pub length: usize,
    pub orbit: usize,
    pub class: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Resolution {
    /// False when no extension search ran; classes and labels are then absent.
    pub resolved: bool,
    pub rmax: usize,
    pub counts_by_r: Vec<usize>,
    pub stabilized_at: Option<usize>,
    pub class_count: Option<usize>,
    pub matches_coset_count: Option<bool>,
    pub pi_injective: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitsResult {
    pub field_order: Int,
    pub group_order: Int,
    pub coset_count: usize,
    pub orbit_count: usize,
    pub orbits: Vec<OrbitEntry>,
    pub resolution: Resolution,
    pub pi_labels: Vec<PiLabel>,
}

pub fn cmd_orbits(cfg: &RunConfig) -> CliResult<Report<OrbitsResult>> {
    let field = Gf::new(cfg.p, cfg.r)?;
    let weyl = WeylGroup::of_group(&cfg.group)?;
    let j = derive_j(&weyl, cfg)?;
    let mut table = classify_orbits(&cfg.group, &cfg.chi, &field)?;
    resolve_geometric(&mut table, &weyl, &j, cfg.ext_rmax)?;
    let geo = table.geometric.as_ref().ok_or_else(|| CliError::Config("no resolution computed".into()))?;
    let resolved = cfg.ext_rmax > 0;
    let coset_count = weyl.enum_jw(&j).len();
    let orbits = table
        .orbits
        .iter()
        .enumerate()
        .map(|(i, o)| {
            let class = geo.class_of_orbit[i];
            OrbitEntry {
                index: i,
                size: Int(o.size as u128),
                rep: (0..o.rep.rows()).map(|r| o.rep.row(r).iter().map(|x| x.0).collect()).collect(),
                class: resolved.then_some(class),
                label: if resolved { geo.class_labels[class].map(|w| weyl.name(w)) } else { None },
            }
        })
        .collect();
    let pi_labels = geo
        .pi_orbits
        .iter()
        .map(|&(w, o)| PiLabel {
            name: weyl.name(w),
            length: weyl.length(w),
            orbit: o,
            class: resolved.then(|| geo.class_of_orbit[o]),
        })
        .collect();
    let resolution = Resolution {
        resolved,
        rmax: cfg.ext_rmax,
        counts_by_r: geo.counts_by_r.clone(),
        stabilized_at: resolved.then_some(geo.stabilized_at),
        class_count: resolved.then(|| geo.class_count()),
        matches_coset_count: resolved.then(|| geo.class_count() == coset_count),
        pi_injective: resolved.then(|| geo.pi_reps_distinct()),
    };
    let results = OrbitsResult {
        field_order: Int(field.order() as u128),
        group_order: Int(group_order(&cfg.group, field.order() as u64)),
        coset_count,
        orbit_count: table.orbits.len(),
        orbits,
        resolution,
        pi_labels,
    };
    let mut anchors = vec!["zip-orbits".to_string(), "orbit-sizes".to_string()];
    if resolved {
        anchors.push("orbit-coset-bijection".to_string());
    }
    Ok(Report { config: cfg.echo(), results, anchors })
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub anchor: String,
    pub passed: bool,
    pub instances: usize,
    pub failures: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteEntry {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyResult {
    pub passed: bool,
    pub suites: Vec<SuiteEntry>,
}

/// Run a named suite or `all`. Wall times are left out so reports are reproducible.
pub fn cmd_verify(cfg: &RunConfig, suite: &str) -> CliResult<Report<VerifyResult>> {
    if suite != "all" && !SUITES.contains(&suite) {
        return Err(CliError::Config(format!("unknown suite {suite:?}; expected one of {} or all", SUITES.join(", "))));
    }
    if (suite == "gluing" || suite == "all") && cfg.prec_m < 2 {
        return Err(CliError::Config("the gluing suite needs --prec of at least 2".into()));
    }
    let params = SuiteParams {
        spec: cfg.group,
        chi: cfg.chi.clone(),
        p: cfg.p,
        r: cfg.r,
        m: cfg.prec_m,
        d: cfg.base_d,
        n: cfg.trunc_n,
        seed: cfg.seed,
        count: cfg.count,
    };
    let reports = run_suite(suite, &params)?;
    let suites: Vec<SuiteEntry> = reports
        .into_iter()
        .map(|r| SuiteEntry {
            passed: r.ok(),
            suite: r.suite,
            checks: r
                .checks
                .into_iter()
                .map(|c| CheckEntry {
                    passed: c.passed(),
                    anchor: c.anchor,
                    instances: c.instances,
                    failures: c.failures,
                    detail: c.detail,
                })
                .collect(),
        })
        .collect();
    let anchors = suites.iter().flat_map(|s| s.checks.iter().map(|c| c.anchor.clone())).collect();
    let results = VerifyResult { passed: suites.iter().all(|s| s.passed), suites };
    Ok(Report { config: cfg.echo(), results, anchors })
}
