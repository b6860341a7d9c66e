//! Corpus specifications and the corpus runner.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashSet};
use std::hash::{Hash, Hasher};
use std::sync::Arc;
use std::time::Instant;

use hall_core::{FiniteGroup, Limits, Origin};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::doc::GroupDoc;
use crate::suites::{Suite, SuiteResult};
use crate::LabError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SuiteLevel {
    Fast,
    Slow,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closure_ceiling: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub automorphism_ceiling: Option<usize>,
}

impl Bounds {
    pub fn limits(&self) -> Result<Limits, LabError> {
        let d = Limits::DEFAULT;
        let limits = Limits {
            closure_ceiling: self.closure_ceiling.unwrap_or(d.closure_ceiling),
            automorphism_ceiling: self.automorphism_ceiling.unwrap_or(d.automorphism_ceiling),
        };
        if limits.closure_ceiling > d.closure_ceiling || limits.automorphism_ceiling > d.automorphism_ceiling {
            return Err(LabError::Usage(format!(
                "bounds exceed the library ceilings ({} / {})",
                d.closure_ceiling, d.automorphism_ceiling
            )));
        }
        Ok(limits)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusSpec {
    /// Prepend the default corpus for the chosen suite level.
    #[serde(default)]
    pub include_default: bool,
    #[serde(default)]
    pub entries: Vec<GroupDoc>,
    #[serde(default)]
    pub bounds: Bounds,
    /// Suite levels this spec is meant for; empty means any.
    #[serde(default)]
    pub suites: Vec<SuiteLevel>,
}

/// Cyclic groups up to order 24, dihedral groups up to order 24, the small
/// symmetric and alternating groups, the Klein four-group, the quaternion
/// group and `(F2)^3`; the slow level adds `Alt(7)` and `Sym(7)`.
pub fn default_corpus(level: SuiteLevel) -> Vec<GroupDoc> {
    let mut docs: Vec<GroupDoc> = (1..=24).map(|n| GroupDoc::family("cyclic", n)).collect();
    docs.extend((3..=12).map(|n| GroupDoc::family("dihedral", n)));
    docs.push(GroupDoc::family("klein", 0));
    docs.push(GroupDoc::family("quaternion", 0));
    docs.push(GroupDoc::Family {
        name: None,
        family: "elementary-abelian".into(),
        n: 3,
        p: Some(2),
    });
    docs.push(GroupDoc::family("alternating", 4));
    docs.extend((3..=6).map(|n| GroupDoc::family("symmetric", n)));
    if level == SuiteLevel::Slow {
        docs.push(GroupDoc::family("alternating", 7));
        docs.push(GroupDoc::family("symmetric", 7));
    }
    docs
}

/// Hash of the element list (permutation images, or the Cayley table).
fn canonical_hash(g: &FiniteGroup) -> u64 {
    let mut h = DefaultHasher::new();
    g.order().hash(&mut h);
    match g.origin() {
        Origin::Permutation { degree, .. } => {
            degree.hash(&mut h);
            for x in g.elements() {
                g.permutation(x).expect("permutation group").images().hash(&mut h);
            }
        }
        Origin::Table => {
            for x in g.elements() {
                for y in g.elements() {
                    g.mul(x, y).hash(&mut h);
                }
            }
        }
    }
    h.finish()
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub order: usize,
    pub suites: Vec<SuiteResult>,
}

pub struct CorpusOptions {
    pub level: SuiteLevel,
    pub jobs: Option<usize>,
    pub timing: bool,
}

/// Builds every entry (failing on the first malformed one), drops duplicate
/// presentations, runs the suites in parallel and merges in input order.
pub fn run_corpus(spec: &CorpusSpec, options: &CorpusOptions) -> Result<(Value, bool), LabError> {
    let start = Instant::now();
    let limits = spec.bounds.limits()?;
    let mut docs = if spec.include_default {
        default_corpus(options.level)
    } else {
        Vec::new()
    };
    docs.extend(spec.entries.iter().cloned());
    let mut seen = HashSet::new();
    let mut groups: Vec<(String, Arc<FiniteGroup>)> = Vec::new();
    for (i, doc) in docs.iter().enumerate() {
        let g = doc.build(&limits).map_err(|e| match e {
            LabError::Core(e) => LabError::Usage(format!("entry {i} ({}): {}: {e}", doc.name(), crate::error_kind(&e))),
            LabError::Usage(msg) => LabError::Usage(format!("entry {i} ({}): {msg}", doc.name())),
            other => other,
        })?;
        if seen.insert(canonical_hash(&g)) {
            groups.push((doc.name(), Arc::new(g)));
        }
    }
    let suites: Vec<Suite> = match options.level {
        SuiteLevel::Fast => Suite::FAST.to_vec(),
        SuiteLevel::Slow => Suite::FAST.iter().chain(Suite::SLOW.iter()).copied().collect(),
    };
    let run_entry = |(name, g): &(String, Arc<FiniteGroup>)| EntryReport {
        name: name.clone(),
        order: g.order(),
        suites: suites.iter().filter_map(|s| s.run(g, &limits)).collect(),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs.unwrap_or(0))
        .build()
        .map_err(|e| LabError::Usage(format!("--jobs: {e}")))?;
    let entries: Vec<EntryReport> = pool.install(|| groups.par_iter().map(run_entry).collect());

    let mut totals: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for e in &entries {
        for s in &e.suites {
            let t = totals.entry(s.suite.clone()).or_default();
            t.0 += s.passed;
            t.1 += s.failed;
        }
    }
    let failures: usize = totals.values().map(|t| t.1).sum();
    let mut report = json!({
        "level": options.level,
        "entries": entries,
        "totals": totals
            .iter()
            .map(|(k, (p, f))| (k.clone(), json!({ "passed": p, "failed": f })))
            .collect::<serde_json::Map<_, _>>(),
        "failures": failures,
    });
    if options.timing {
        report["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    Ok((report, failures == 0))
}
