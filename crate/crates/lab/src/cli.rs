//! Argument grammar and command dispatch.
//!
//! Every command writes one JSON document to standard output. Exit codes:
//! 0 on success, 1 on a well-formed negative result (not isomorphic, no
//! witness, a map that does not extend), 2 on malformed input.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use hall_core::discriminators::{self, AlternatingOutcome, Answer, LatticeData};
use hall_core::exaut::{self, ExAutStructure, SubgroupLayer};
use hall_core::homogeneity::{self, SubgroupIsomorphism};
use hall_core::reconstruction::{self, InvolutionMap};
use hall_core::subgroup::{center, centralizer, subgroups, SubgroupHandle};
use hall_core::{search, tower, Budget, Error, FiniteGroup, Limits, Morphism};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::corpus::{self, CorpusOptions, CorpusSpec, SuiteLevel};
use crate::doc::{self, ElementRef, GroupDoc, InvolutionMapDoc, IsoDoc};
use crate::fixtures;
use crate::{budget_from_env, error_kind, is_negative_result, LabError};

#[derive(Parser, Debug)]
#[command(name = "hall-lab", version, about = "Finite stages of Hall's universal locally finite group")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Basic group computations.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Stages of the tower and their embeddings.
    #[command(subcommand)]
    Tower(TowerCmd),
    /// Conjugators realizing subgroup isomorphisms.
    #[command(subcommand)]
    Homog(HomogCmd),
    /// The bounded subgroup/automorphism structure.
    #[command(subcommand)]
    Exaut(ExautCmd),
    /// Lattice-based recognition of group properties.
    Discriminate(DiscriminateArgs),
    /// Rebuild an automorphism from its action on involutions.
    Reconstruct {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Commutator orders, involution pairs and the Sym(6) fixture.
    #[command(subcommand)]
    Probe(ProbeCmd),
    /// Run the invariant suites over a corpus.
    #[command(subcommand)]
    Corpus(CorpusCmd),
}

#[derive(Subcommand, Debug)]
enum GroupCmd {
    Info {
        #[arg(long = "in")]
        input: PathBuf,
    },
    Subgroups {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        max_order: Option<usize>,
    },
    Auts {
        #[arg(long = "in")]
        input: PathBuf,
    },
    Iso {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        other: PathBuf,
    },
    Centralizer {
        #[arg(long = "in")]
        input: PathBuf,
        /// JSON array of elements (indices or image arrays).
        #[arg(long)]
        elements: String,
    },
}

#[derive(Subcommand, Debug)]
enum TowerCmd {
    Stage { k: usize },
    /// Embed a group into stage `k`, or into `Alt(2|K|)` with `--alternating`.
    Embed {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, required_unless_present = "alternating")]
        stage: Option<usize>,
        #[arg(long)]
        alternating: bool,
    },
    Involutions {
        #[arg(long, conflicts_with = "input")]
        stage: Option<usize>,
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum HomogCmd {
    Conjugate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        iso: PathBuf,
    },
    Extend {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        iso: PathBuf,
    },
    Lift {
        #[arg(long = "in")]
        input: PathBuf,
        /// Image array of one automorphism; all of them when omitted.
        #[arg(long)]
        aut: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum ExautCmd {
    Build {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Type {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "top")]
        node: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DiscriminatorKind {
    Order,
    Cyclic,
    Prime,
    Abelian,
    Characteristic,
    Alternating,
    Complete,
}

#[derive(clap::Args, Debug)]
struct DiscriminateArgs {
    kind: DiscriminatorKind,
    /// A structure document or a group document.
    #[arg(long = "in")]
    input: PathBuf,
    /// Node id, `top` or `bottom`.
    #[arg(long, conflicts_with = "subgroup")]
    node: Option<String>,
    /// Generators of the subgroup, as a JSON array.
    #[arg(long)]
    subgroup: Option<String>,
    /// The second group for `complete`.
    #[arg(long)]
    other: Option<PathBuf>,
    /// Overgroup bound for `abelian`.
    #[arg(long)]
    max_overgroup_order: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum ProbeCmd {
    Commutator {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    Pair {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        f: String,
        /// Generators of K (JSON array); trivial when omitted.
        #[arg(long)]
        k: Option<String>,
    },
    OuterS6 {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum CorpusCmd {
    Run {
        /// Corpus specification; the default corpus when omitted.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "fast")]
        suite: SuiteLevel,
        #[arg(long)]
        jobs: Option<usize>,
        /// Include wall-clock time (makes the output run-dependent).
        #[arg(long)]
        timing: bool,
    },
}

/// What a run produced: the exit code and both output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((v, positive)) => Outcome {
            code: if positive { 0 } else { 1 },
            stdout: render(&v),
            stderr: String::new(),
        },
        Err(LabError::Negative(v)) => Outcome { code: 1, stdout: render(&v), stderr: String::new() },
        Err(LabError::Core(e)) if is_negative_result(&e) => Outcome {
            code: 1,
            stdout: render(&json!({ "error": error_kind(&e), "detail": e.to_string() })),
            stderr: String::new(),
        },
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("hall-lab: {e}\n") },
    }
}

type Reply = Result<(Value, bool), LabError>;

fn ok(v: Value) -> Reply {
    Ok((v, true))
}

fn limits() -> Limits {
    Limits::DEFAULT
}

fn load(path: &Path) -> Result<Arc<FiniteGroup>, LabError> {
    Ok(doc::load_group(path, &limits())?.1)
}

fn elements(g: &FiniteGroup, what: &str, text: &str) -> Result<Vec<usize>, LabError> {
    let refs: Vec<ElementRef> = doc::parse_arg(what, text)?;
    doc::resolve_all(&refs, g)
}

/// A full image array given inline, checked to be an automorphism.
fn automorphism_arg(g: &Arc<FiniteGroup>, what: &str, text: &str) -> Result<Morphism, LabError> {
    let images: Vec<usize> = doc::parse_arg(what, text)?;
    let f = Morphism::new(g.clone(), g.clone(), images)?;
    if !f.is_bijective() {
        return Err(Error::NotIsomorphism(format!("--{what} is not bijective")).into());
    }
    Ok(f)
}

fn write_or_return(out: Option<&Path>, v: Value) -> Reply {
    match out {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(|e| LabError::Usage(format!("{}: {e}", dir.display())))?;
            }
            fs::write(path, render(&v)).map_err(|e| LabError::Usage(format!("{}: {e}", path.display())))?;
            ok(json!({ "written": path.display().to_string() }))
        }
        None => ok(v),
    }
}

fn dispatch(command: Command) -> Reply {
    match command {
        Command::Group(cmd) => group(cmd),
        Command::Tower(cmd) => tower_cmd(cmd),
        Command::Homog(cmd) => homog(cmd),
        Command::Exaut(cmd) => exaut_cmd(cmd),
        Command::Discriminate(args) => discriminate(args),
        Command::Reconstruct { input, map } => reconstruct(&input, &map),
        Command::Probe(cmd) => probe(cmd),
        Command::Corpus(CorpusCmd::Run { spec, suite, jobs, timing }) => {
            let spec = match spec {
                Some(path) => doc::read_json::<CorpusSpec>(&path)?,
                None => CorpusSpec {
                    include_default: true,
                    ..Default::default()
                },
            };
            if !spec.suites.is_empty() && !spec.suites.contains(&suite) {
                return Err(LabError::Usage(format!("spec is not meant for the {suite:?} suite")));
            }
            corpus::run_corpus(&spec, &CorpusOptions { level: suite, jobs, timing })
        }
    }
}

fn group(cmd: GroupCmd) -> Reply {
    let mut budget = budget_from_env()?;
    match cmd {
        GroupCmd::Info { input } => {
            let g = load(&input)?;
            let mut orders: BTreeMap<usize, usize> = BTreeMap::new();
            for &o in g.element_orders() {
                *orders.entry(o).or_default() += 1;
            }
            ok(json!({
                "order": g.order(),
                "abelian": g.is_abelian(),
                "involutions": g.involutions().len(),
                "center_order": center(&g).order(),
                "element_orders": orders,
                "generators": g.generators().iter().map(|&x| g.element_name(x)).collect::<Vec<_>>(),
            }))
        }
        GroupCmd::Subgroups { input, max_order } => {
            let g = load(&input)?;
            let subs = subgroups(&g, max_order.unwrap_or(g.order()));
            ok(json!({
                "count": subs.len(),
                "subgroups": subs.iter().map(|h| json!({
                    "order": h.order(),
                    "normal": h.is_normal(),
                    "members": h.members(),
                })).collect::<Vec<_>>(),
            }))
        }
        GroupCmd::Auts { input } => {
            let g = load(&input)?;
            let auts = search::automorphisms_with(&g, &limits(), &mut budget)?;
            let inner = auts.iter().filter(|f| search::inner_conjugator(&g, f).is_some()).count();
            ok(json!({
                "count": auts.len(),
                "inner": inner,
                "automorphisms": auts.iter().map(|f| f.images()).collect::<Vec<_>>(),
            }))
        }
        GroupCmd::Iso { input, other } => {
            let (a, b) = (load(&input)?, load(&other)?);
            match search::isomorphism_with(&a, &b, &mut budget)? {
                Some(f) => ok(json!({ "isomorphic": true, "images": f.images() })),
                None => Ok((json!({ "isomorphic": false }), false)),
            }
        }
        GroupCmd::Centralizer { input, elements: text } => {
            let g = load(&input)?;
            let set = elements(&g, "elements", &text)?;
            let c = centralizer(&g, &set)?;
            ok(json!({ "order": c.order(), "members": c.members() }))
        }
    }
}

fn tower_cmd(cmd: TowerCmd) -> Reply {
    match cmd {
        TowerCmd::Stage { k } => {
            let stage = tower::build_stage(k)?;
            ok(json!({
                "stage": k,
                "order": stage.order(),
                "degree": stage.degree(),
                "symbolic": stage.is_symbolic(),
            }))
        }
        TowerCmd::Embed { input, stage, alternating } => {
            let k = load(&input)?;
            if alternating {
                let rep = tower::embed_into_alternating(&k);
                return ok(json!({
                    "degree": rep.degree(),
                    "even": rep.all_even(),
                    "injective": rep.is_injective(),
                    "homomorphism": rep.is_homomorphism(),
                    "images": rep.images().iter().map(|p| p.images()).collect::<Vec<_>>(),
                }));
            }
            let stage = tower::build_stage(stage.expect("required unless --alternating"))?;
            if stage.index() >= 2 {
                let rep = tower::embed_into_stage_permutations(&k, &stage)?;
                let indices: Option<Vec<usize>> = stage
                    .group()
                    .map(|g| rep.images().iter().map(|p| g.index_of(p).expect("full symmetric group")).collect());
                ok(json!({
                    "stage": stage.index(),
                    "degree": rep.degree(),
                    "injective": rep.is_injective(),
                    "homomorphism": rep.is_homomorphism(),
                    "images": rep.images().iter().map(|p| p.images()).collect::<Vec<_>>(),
                    "indices": indices,
                }))
            } else {
                let m = tower::embed_finite_group(&k, &stage)?;
                ok(json!({ "stage": 1, "indices": m.images() }))
            }
        }
        TowerCmd::Involutions { stage, input } => {
            let g = match (stage, input) {
                (_, Some(path)) => load(&path)?,
                (Some(k), None) => tower::build_stage(k)?
                    .group()
                    .cloned()
                    .ok_or_else(|| LabError::Usage("stage 4 is symbolic".into()))?,
                (None, None) => return Err(LabError::Usage("give --stage or --in".into())),
            };
            let inv = tower::involutions(&g);
            ok(json!({ "count": inv.elements.len(), "generating": inv.generating, "elements": inv.elements }))
        }
    }
}

fn subgroup_isomorphism(g: &Arc<FiniteGroup>, path: &Path) -> Result<SubgroupIsomorphism, LabError> {
    let d: IsoDoc = doc::read_json(path)?;
    let source_gens = doc::resolve_all(&d.source, g)?;
    let target_gens = doc::resolve_all(&d.target, g)?;
    let gen_images = doc::resolve_all(&d.images, g)?;
    if gen_images.len() != source_gens.len() {
        return Err(LabError::Usage("one image per source generator required".into()));
    }
    let source = SubgroupHandle::generated(g.clone(), &source_gens)?;
    let target = SubgroupHandle::generated(g.clone(), &target_gens)?;
    let images = search::extend_generator_images(g, &source_gens, &gen_images, g, true)
        .ok_or_else(|| Error::NotIsomorphism("generator images do not extend".into()))?;
    let images = source.members().iter().map(|&x| images[x]).collect();
    Ok(SubgroupIsomorphism::new(source, target, images)?)
}

fn homog(cmd: HomogCmd) -> Reply {
    match cmd {
        HomogCmd::Conjugate { input, iso } | HomogCmd::Extend { input, iso } => {
            let g = load(&input)?;
            let iso = subgroup_isomorphism(&g, &iso)?;
            let cert = homogeneity::conjugator(&iso)?;
            ok(json!({
                "degree": cert.ambient_degree,
                "sigma": doc::permutation_json(&cert.sigma),
                "source": iso.source().members(),
                "target": iso.target().members(),
                "phi": iso.images(),
                "verified": cert.verify(),
            }))
        }
        HomogCmd::Lift { input, aut } => {
            let g = load(&input)?;
            if let Some(text) = aut {
                let f = automorphism_arg(&g, "aut", &text)?;
                let p = homogeneity::lift(&f)?;
                return ok(json!({ "lift": doc::permutation_json(&p) }));
            }
            let lift = homogeneity::coherent_lift_with(&g, &limits(), &mut budget_from_env()?)?;
            let n = lift.automorphisms.len();
            let homomorphism = (0..n).all(|i| (0..n).all(|j| lift.respects_composition(i, j)));
            ok(json!({
                "automorphisms": n,
                "homomorphism": homomorphism,
                "injective": lift.is_injective(),
                "lifts": lift.lifts.iter().map(|p| p.images()).collect::<Vec<_>>(),
            }))
        }
    }
}

/// The stored form of an [`ExAutStructure`]. Only `ambient` and `max_order`
/// are read back; the rest is rebuilt deterministically.
#[derive(Debug, Serialize, Deserialize)]
struct StructureHeader {
    ambient: GroupDoc,
    max_order: usize,
}

fn structure_json(ambient: &GroupDoc, s: &ExAutStructure) -> Value {
    let count = s.subgroup_count();
    json!({
        "ambient": ambient,
        "max_order": s.max_order(),
        "automorphisms": s.automorphisms().iter().map(|f| f.images()).collect::<Vec<_>>(),
        "labels": s.layer().label_groups.iter().map(|a| a.order()).collect::<Vec<_>>(),
        "subgroups": (0..count).map(|i| {
            let n = s.node(i);
            json!({
                "id": i,
                "order": n.subgroup.order(),
                "members": n.subgroup.members(),
                "label": n.label,
                "minimal": n.minimal,
                "aut_order": n.aut_order(),
                "below": (0..count).filter(|&j| j != i && s.leq_a(j, i)).collect::<Vec<_>>(),
                "pairs": s.pairs_of(i).collect::<Vec<_>>(),
            })
        }).collect::<Vec<_>>(),
        "pairs": s.pairs().iter().enumerate().map(|(p, pair)| json!({
            "id": p,
            "subgroup": s.pair_subgroup(p),
            "maps": pair.maps(),
        })).collect::<Vec<_>>(),
    })
}

/// A structure document or a bare group document (then `max_order = |G|`).
fn load_structure_header(path: &Path) -> Result<(GroupDoc, Arc<FiniteGroup>, usize), LabError> {
    let v: Value = doc::read_json(path)?;
    let (ambient, max_order) = if v.get("ambient").is_some() {
        let h: StructureHeader =
            serde_json::from_value(v).map_err(|e| LabError::Usage(format!("{}: {e}", path.display())))?;
        (h.ambient, Some(h.max_order))
    } else {
        let d: GroupDoc = serde_json::from_value(v).map_err(|e| LabError::Usage(format!("{}: {e}", path.display())))?;
        (d, None)
    };
    let g = Arc::new(ambient.build(&limits())?);
    let max_order = max_order.unwrap_or(g.order());
    Ok((ambient, g, max_order))
}

fn node_index(node: &str, count: usize, members: impl Fn(usize) -> usize, whole: usize) -> Result<usize, LabError> {
    match node {
        "top" => (0..count)
            .find(|&i| members(i) == whole)
            .ok_or_else(|| LabError::Usage("the whole group is not a node (raise max_order)".into())),
        "bottom" => Ok(0),
        id => id
            .parse::<usize>()
            .ok()
            .filter(|&i| i < count)
            .ok_or_else(|| LabError::Usage(format!("no node {id:?} (there are {count})"))),
    }
}

fn exaut_cmd(cmd: ExautCmd) -> Reply {
    let mut budget = budget_from_env()?;
    match cmd {
        ExautCmd::Build { input, max_order, out } => {
            let (d, g) = doc::load_group(&input, &limits())?;
            let s = exaut::build_exaut_with(&g, max_order, &limits(), &mut budget)?;
            write_or_return(out.as_deref(), structure_json(&d, &s))
        }
        ExautCmd::Type { input, node } => {
            let (_, g, max_order) = load_structure_header(&input)?;
            let s = exaut::build_exaut_with(&g, max_order, &limits(), &mut budget)?;
            let i = node_index(&node, s.subgroup_count(), |i| s.subgroup(i).order(), g.order())?;
            let t = s.qf_type(i);
            ok(json!({
                "node": i,
                "members": s.subgroup(i).members(),
                "order_class": t.order_class,
                "minimal": t.minimal,
                "lattice_fingerprint": t.lattice_fingerprint.iter().map(|(dir, label, minimal)| json!({
                    "direction": match dir { exaut::Direction::Below => "below", exaut::Direction::Above => "above" },
                    "label": label,
                    "minimal": minimal,
                })).collect::<Vec<_>>(),
            }))
        }
    }
}

fn verdict_json<W>(v: &discriminators::Verdict<W>, witness: Value) -> Value {
    json!({ "verdict": v.answer.as_str(), "witness": witness, "ground_truth": v.ground_truth })
}

fn discriminate(args: DiscriminateArgs) -> Reply {
    let mut budget = budget_from_env()?;
    let lim = limits();
    if args.kind == DiscriminatorKind::Complete {
        let other = args.other.as_deref().ok_or_else(|| LabError::Usage("complete needs --other".into()))?;
        let (k1, k2) = (load(&args.input)?, load(other)?);
        let v = discriminators::complete_centerless_match_with(&k1, &k2, &lim, &mut budget)?;
        let witness = v.witness.as_ref().map(|m| json!(m.images())).unwrap_or(Value::Null);
        return Ok((verdict_json(&v, witness), v.answer == Answer::True));
    }
    let (_, g, max_order) = load_structure_header(&args.input)?;
    let explicit = match &args.subgroup {
        Some(text) => Some(SubgroupHandle::generated(g.clone(), &elements(&g, "subgroup", text)?)?),
        None => None,
    };
    let node_name = args.node.clone().unwrap_or_else(|| "top".into());
    // The node's lattice and index; from the subgroup's own lattice when it
    // was given by generators.
    let lattice = |budget: &mut Budget| -> Result<(LatticeData, usize, Vec<usize>), LabError> {
        match &explicit {
            Some(k) => {
                let local = Arc::new(k.to_group());
                let layer = SubgroupLayer::build(&local, local.order(), &lim, budget)?;
                let d = LatticeData::from_layer(&layer);
                let top = d.top().expect("whole group present");
                Ok((d, top, k.members().to_vec()))
            }
            None => {
                let layer = SubgroupLayer::build(&g, max_order, &lim, budget)?;
                let i = node_index(&node_name, layer.len(), |i| layer.nodes[i].subgroup.order(), g.order())?;
                let members = layer.nodes[i].subgroup.members().to_vec();
                Ok((LatticeData::from_layer(&layer), i, members))
            }
        }
    };
    let subgroup = |budget: &mut Budget| -> Result<SubgroupHandle, LabError> {
        match &explicit {
            Some(k) => Ok(k.clone()),
            None if node_name == "top" => Ok(SubgroupHandle::whole(g.clone())),
            None => {
                let (_, _, members) = lattice(budget)?;
                Ok(SubgroupHandle::new(g.clone(), members)?)
            }
        }
    };
    match args.kind {
        DiscriminatorKind::Order => {
            let (d, i, members) = lattice(&mut budget)?;
            let order = discriminators::order_qf(&d, i)?;
            ok(json!({ "node": i, "members": members, "order_qf": order, "ground_truth": d.node(i).ground.order }))
        }
        DiscriminatorKind::Cyclic => {
            let (d, i, members) = lattice(&mut budget)?;
            let v = discriminators::is_cyclic_qf(&d, i)?;
            let order = match v.answer {
                Answer::True => Some(discriminators::cyclic_order_qf(&d, i)?),
                _ => None,
            };
            let mut out = verdict_json(&v, Value::Null);
            out["node"] = json!(i);
            out["members"] = json!(members);
            out["cyclic_order_qf"] = json!(order);
            Ok((out, v.answer == Answer::True))
        }
        DiscriminatorKind::Prime => {
            let (d, i, members) = lattice(&mut budget)?;
            let v = discriminators::is_prime_order_qf(&d, i);
            let mut out = verdict_json(&v, json!(v.witness));
            out["node"] = json!(i);
            out["members"] = json!(members);
            Ok((out, v.answer == Answer::True))
        }
        DiscriminatorKind::Abelian => {
            let s = exaut::build_exaut_with(&g, max_order, &lim, &mut budget)?;
            let i = match &explicit {
                Some(k) => s
                    .subgroup_index(k.members())
                    .ok_or_else(|| LabError::Usage("subgroup exceeds max_order".into()))?,
                None => node_index(&node_name, s.subgroup_count(), |i| s.subgroup(i).order(), g.order())?,
            };
            let v = discriminators::abelian_witness_search(&s, i, args.max_overgroup_order);
            let witness = v.witness.map(|w| {
                json!({
                    "l1": { "pair": w.l1, "maps": s.pair(w.l1).maps() },
                    "overgroup": { "id": w.overgroup, "members": s.subgroup(w.overgroup).members() },
                })
            });
            let mut out = verdict_json(&v, witness.unwrap_or(Value::Null));
            out["node"] = json!(i);
            out["members"] = json!(s.subgroup(i).members());
            Ok((out, v.answer == Answer::True))
        }
        DiscriminatorKind::Characteristic => {
            let k = subgroup(&mut budget)?;
            let local = Arc::new(k.to_group());
            let mut v = discriminators::has_characteristic_subgroup_with(&local, &lim, &mut budget)?;
            if local.order() <= 120 {
                let auts = search::automorphisms_with(&local, &lim, &mut budget)?;
                v.ground_truth = Some(subgroups(&local, local.order()).iter().any(|h| {
                    !h.is_trivial()
                        && h.order() < local.order()
                        && auts.iter().all(|f| h.members().iter().all(|&x| h.contains(f.apply(x))))
                }));
            }
            let witness = v
                .witness
                .as_ref()
                .map(|w| json!(w.iter().map(|&x| k.members()[x]).collect::<Vec<_>>()))
                .unwrap_or(Value::Null);
            let mut out = verdict_json(&v, witness);
            out["members"] = json!(k.members());
            Ok((out, v.answer == Answer::True))
        }
        DiscriminatorKind::Alternating => {
            let k = subgroup(&mut budget)?;
            match discriminators::alternating_certificate_with(&k, &lim, &mut budget)? {
                AlternatingOutcome::Certificate(c) => ok(json!({
                    "verdict": "true",
                    "certificate": {
                        "order": c.subgroup.order(),
                        "noncommuting": [c.noncommuting.0, c.noncommuting.1],
                        "orbit_count": c.orbit_count,
                        "overgroup_order": c.overgroup.order(),
                        "overgroup_aut_order": c.overgroup_aut_order,
                        "squares_span": c.squares_span,
                    },
                    "ground_truth": null,
                })),
                AlternatingOutcome::Failure { missing, detail } => Ok((
                    json!({
                        "verdict": "false",
                        "missing": missing.letter().to_string(),
                        "ingredient": missing.name(),
                        "detail": detail,
                        "ground_truth": null,
                    }),
                    false,
                )),
            }
        }
        DiscriminatorKind::Complete => unreachable!("handled above"),
    }
}

fn reconstruct(input: &Path, map: &Path) -> Reply {
    let g = load(input)?;
    let d: InvolutionMapDoc = doc::read_json(map)?;
    let mut assignment = BTreeMap::new();
    for (from, to) in &d.assignment {
        let (x, y) = (from.resolve(&g)?, to.resolve(&g)?);
        if assignment.insert(x, y).is_some() {
            return Err(LabError::Usage(format!("involution {x} assigned twice")));
        }
    }
    let m = InvolutionMap::new(g.clone(), assignment)?;
    let f = reconstruction::reconstruct_from_involutions(&m)?;
    ok(json!({
        "images": f.images(),
        "inner_conjugator": search::inner_conjugator(&g, &f),
    }))
}

fn probe(cmd: ProbeCmd) -> Reply {
    match cmd {
        ProbeCmd::Commutator { input, f, g: g_text } => {
            let g = load(&input)?;
            let f = automorphism_arg(&g, "f", &f)?;
            let h = automorphism_arg(&g, "g", &g_text)?;
            ok(json!({ "order": reconstruction::commutator_order_probe(&f, &h)? }))
        }
        ProbeCmd::Pair { input, f, k } => {
            let g = load(&input)?;
            let f = automorphism_arg(&g, "f", &f)?;
            let k = match k {
                Some(text) => SubgroupHandle::generated(g.clone(), &elements(&g, "k", &text)?)?,
                None => SubgroupHandle::trivial(g.clone()),
            };
            let r = reconstruction::find_commuting_involution_pair(&f, &k)?;
            Ok((fixtures::pair_json(&g, &r), r.found))
        }
        ProbeCmd::OuterS6 { out } => {
            let v = fixtures::outer_s6_document(&mut budget_from_env()?)?;
            write_or_return(out.as_deref(), v)
        }
    }
}
