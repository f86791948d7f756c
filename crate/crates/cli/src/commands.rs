use std::sync::Arc;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use cshom::fraisse::{self, AgeSample};
use cshom::graph::GraphPattern;
use cshom::homogeneity::{self, Violation};
use cshom::rms_morphism::{enumerate_rms_morphisms, RmsMorphism};
use cshom::semigroup::{enumerate_isomorphisms, is_homogeneous, DEFAULT_SUBSEMIGROUP_CAP};
use cshom::{
    EdgeColouredBipartiteGraph, ElemSet, FiniteGroup, FiniteSemigroup, ReesMatrixSemigroup,
};

use crate::workspace::{graph_block, rms_block, Item, Workspace};

#[derive(Debug, Parser)]
#[command(
    name = "cshom",
    version,
    about = "Homogeneity of finite completely simple semigroups"
)]
pub struct Cli {
    /// Emit a JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Stop long searches after this many seconds.
    #[arg(long, global = true)]
    pub deadline_secs: Option<u64>,
    /// Maximum number of subsemigroup orbits visited.
    #[arg(long, global = true, default_value_t = DEFAULT_SUBSEMIGROUP_CAP)]
    pub cap: usize,
    /// Input files, read after the built-in corpus.
    #[arg(long = "file", global = true)]
    pub files: Vec<std::path::PathBuf>,
    /// Do not load the built-in corpus.
    #[arg(long, global = true)]
    pub no_corpus: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HomMethod {
    Brute,
    Classify,
    Decompose,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AutMethod {
    Rees,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Product of two elements (`i:g:λ` for rms).
    Multiply { name: String, x: String, y: String },
    /// Normalization along a row and a column.
    Normalize {
        name: String,
        #[arg(long)]
        row: Option<String>,
        #[arg(long)]
        col: Option<String>,
    },
    /// The idempotent-generated subsemigroup.
    Egens { name: String },
    /// Green's R-, L- and H-classes.
    Green { name: String },
    /// Rees coordinates of a completely simple table.
    Coordinatize { name: String },
    /// Automorphisms.
    Automorphisms {
        name: String,
        #[arg(long, value_enum, default_value_t = AutMethod::Rees)]
        method: AutMethod,
    },
    /// Whether two structures are isomorphic.
    Isomorphic { a: String, b: String },
    /// Whether a structure is homogeneous.
    Homogeneous {
        name: String,
        #[arg(long, value_enum, default_value_t = HomMethod::Brute)]
        method: HomMethod,
    },
    /// Structural classification.
    Classify { name: String },
    /// Necessary-condition screen.
    Screen { name: String },
    /// The induced graph of an rms, or a declared graph.
    Graph { name: String },
    /// Pattern and brute-force homogeneity of a graph.
    GraphClassify { name: String },
    /// Isomorphism classes of small subsemigroups.
    Age {
        name: String,
        #[arg(long)]
        max: usize,
    },
    /// Joint embedding within the age.
    Jep {
        name: String,
        #[arg(long)]
        max: usize,
        /// Size bound for witnesses (default: the whole structure).
        #[arg(long)]
        within: Option<usize>,
    },
    /// Amalgamation within the age.
    Ap {
        name: String,
        #[arg(long)]
        max: usize,
        #[arg(long)]
        within: Option<usize>,
    },
    /// Completely simple amalgam of CORE ⊆ WING1, WING2, or a random one.
    Amalgamate {
        names: Vec<String>,
        #[arg(long)]
        group: String,
        /// Subgroup for random sampling: a group name or comma-separated labels.
        #[arg(long)]
        sub: Option<String>,
        #[arg(long, default_value_t = 8)]
        bound: usize,
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 3)]
        max_index: usize,
    },
    /// Grow a generic Rees matrix semigroup.
    GrowGeneric {
        #[arg(long)]
        group: String,
        #[arg(long)]
        sub: String,
        #[arg(long)]
        level: usize,
        /// Seed rms to grow from.
        #[arg(long)]
        from: Option<String>,
    },
    /// Compare brute force, classification and decomposition.
    Sweep {
        #[arg(long)]
        max_group: usize,
        #[arg(long)]
        max_index: usize,
        /// Only groups of exactly this order.
        #[arg(long)]
        order: Option<usize>,
    },
}

/// A finished command: text report, JSON report and exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

fn outcome(command: &str, text: String, mut json: Value, code: i32) -> Outcome {
    if let Value::Object(map) = &mut json {
        map.insert("schema_version".into(), json!("1"));
        map.insert("command".into(), json!(command));
    }
    Outcome { text, json, code }
}

fn predicate(command: &str, value: bool, text: String, mut json: Value) -> Outcome {
    if let Value::Object(map) = &mut json {
        map.insert("result".into(), json!(value));
    }
    outcome(command, text, json, if value { 0 } else { 1 })
}

struct Ctx<'a> {
    ws: &'a Workspace,
    cap: usize,
    deadline: Option<Instant>,
    seed: u64,
}

impl Ctx<'_> {
    fn item(&self, name: &str) -> Result<Item> {
        self.ws
            .item(name)
            .ok_or_else(|| anyhow!("no declaration named `{name}`"))
    }

    fn table(&self, name: &str) -> Result<FiniteSemigroup> {
        match self.item(name)? {
            Item::Graph(_) => bail!("`{name}` is a graph, not a semigroup"),
            Item::Rms(r) => Ok(r.try_to_semigroup()?),
            other => Ok(other.table().expect("tables exist for non-graphs")),
        }
    }

    fn rms(&self, name: &str) -> Result<Arc<ReesMatrixSemigroup>> {
        match self.item(name)? {
            Item::Rms(r) => Ok(r),
            Item::Graph(_) => bail!("`{name}` is a graph, not a semigroup"),
            other => {
                let t = other.table().expect("tables exist for non-graphs");
                Ok(Arc::new(
                    t.rees_coordinatize()
                        .with_context(|| format!("coordinatizing `{name}`"))?
                        .rms,
                ))
            }
        }
    }

    fn group(&self, name: &str) -> Result<Arc<FiniteGroup>> {
        self.ws
            .group(name)
            .ok_or_else(|| anyhow!("no group named `{name}`"))
    }

    fn group_name(&self, g: &FiniteGroup) -> Option<&str> {
        self.ws
            .groups
            .iter()
            .find(|(_, h)| **h == *g)
            .map(|(n, _)| n.as_str())
    }

    /// Text block for an rms, with a group block when its group is not declared.
    fn render_rms(&self, name: &str, s: &ReesMatrixSemigroup) -> String {
        match self.group_name(s.group()) {
            Some(g) => rms_block(name, g, s),
            None => {
                let gname = format!("{name}_G");
                let mut ws = Workspace::default();
                ws.groups.push((gname.clone(), s.group().clone()));
                format!("{}{}", ws.serialize(), rms_block(name, &gname, s))
            }
        }
    }

    fn subgroup(&self, g: &FiniteGroup, sub: &str) -> Result<ElemSet> {
        let labels: Vec<String> = match self.ws.group(sub) {
            Some(h) => h.labels().to_vec(),
            None => sub.split(',').map(|s| s.trim().to_string()).collect(),
        };
        let set = labels
            .iter()
            .map(|l| {
                g.index_of(l)
                    .map_err(|_| anyhow!("`{l}` is not an element of the group"))
            })
            .collect::<Result<ElemSet>>()?;
        if !g.is_subgroup(set) {
            bail!("{{{}}} is not a subgroup", labels.join(","));
        }
        Ok(set)
    }
}

fn rms_json(s: &ReesMatrixSemigroup) -> Value {
    let m = s.matrix();
    let rows: Vec<Vec<&str>> = (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| s.group().label(m.get(r, c)))
                .collect()
        })
        .collect();
    json!({
        "group": s.group().labels(),
        "I": m.col_labels(),
        "L": m.row_labels(),
        "matrix": rows,
        "normalized_at": s.normalized_at().map(|(c, r)| json!([m.col_labels()[c], m.row_labels()[r]])),
    })
}

fn graph_json(g: &EdgeColouredBipartiteGraph) -> Value {
    let rows: Vec<Vec<&str>> = (0..g.left().len())
        .map(|l| {
            (0..g.right().len())
                .map(|r| g.colour_label(g.colour(l, r)))
                .collect()
        })
        .collect();
    json!({ "colours": g.colours(), "left": g.left(), "right": g.right(), "matrix": rows })
}

fn morphism_json(phi: &RmsMorphism) -> Value {
    let (s, t) = (phi.source(), phi.target());
    let h = t.group();
    json!({
        "theta": s.group().elements().map(|g| json!([s.group().label(g), h.label(phi.theta().apply(g))])).collect::<Vec<_>>(),
        "psi_I": phi.psi_i().iter().enumerate().map(|(i, &j)| json!([s.matrix().col_labels()[i], t.matrix().col_labels()[j]])).collect::<Vec<_>>(),
        "psi_L": phi.psi_l().iter().enumerate().map(|(l, &m)| json!([s.matrix().row_labels()[l], t.matrix().row_labels()[m]])).collect::<Vec<_>>(),
        "u": phi.u().iter().map(|&x| h.label(x)).collect::<Vec<_>>(),
        "v": phi.v().iter().map(|&x| h.label(x)).collect::<Vec<_>>(),
    })
}

fn morphism_text(phi: &RmsMorphism) -> String {
    let j = morphism_json(phi);
    let pairs = |v: &Value| {
        v.as_array()
            .unwrap()
            .iter()
            .map(|p| format!("{}->{}", p[0].as_str().unwrap(), p[1].as_str().unwrap()))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let list = |v: &Value| {
        v.as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_str().unwrap())
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!(
        "[theta: {} | psi_I: {} | psi_L: {} | u: {} | v: {}]",
        pairs(&j["theta"]),
        pairs(&j["psi_I"]),
        pairs(&j["psi_L"]),
        list(&j["u"]),
        list(&j["v"])
    )
}

fn class_labels(s: &FiniteSemigroup, classes: &[ElemSet]) -> Vec<Vec<String>> {
    classes.iter().map(|&c| s.set_labels(c)).collect()
}

fn violation_text(s: &ReesMatrixSemigroup, v: &Violation) -> String {
    let g = s.group();
    let m = s.matrix();
    let set = |x: ElemSet| format!("{{{}}}", g.set_labels(x).join(","));
    match v {
        Violation::NotClosed { a, b, product } => {
            format!(
                "(a) {}·{} = {} lies outside G^P",
                g.label(*a),
                g.label(*b),
                g.label(*product)
            )
        }
        Violation::NoInverse { a } => {
            format!("(a) the inverse of {} lies outside G^P", g.label(*a))
        }
        Violation::Column { col, entries } => format!(
            "(b) C({}) = {} differs from G^P",
            m.col_labels()[*col],
            set(*entries)
        ),
        Violation::Row { row, entries } => format!(
            "(b) R({}) = {} differs from G^P",
            m.row_labels()[*row],
            set(*entries)
        ),
        Violation::NotCharacteristic { witness } => {
            format!("(c) G^P is moved by the automorphism {witness:?}")
        }
    }
}

fn pattern_name(p: GraphPattern) -> &'static str {
    match p {
        GraphPattern::Monochromatic => "Monochromatic",
        GraphPattern::MatchingPlusComplement => "MatchingPlusComplement",
        GraphPattern::Other => "Other",
    }
}

fn age_json(a: &AgeSample) -> Value {
    json!(a
        .members
        .iter()
        .map(|m| json!({"size": m.len(), "elements": m.labels()}))
        .collect::<Vec<_>>())
}

/// Loads the workspace named by the flags.
pub fn load_workspace(cli: &Cli) -> Result<Workspace> {
    let mut ws = if cli.no_corpus {
        Workspace::default()
    } else {
        Workspace::parse(crate::CORPUS)?
    };
    for path in &cli.files {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        ws.extend(&text)
            .with_context(|| format!("in {}", path.display()))?;
    }
    Ok(ws)
}

pub fn run(cli: &Cli, ws: &Workspace) -> Result<Outcome> {
    let ctx = Ctx {
        ws,
        cap: cli.cap,
        deadline: cli
            .deadline_secs
            .map(|s| Instant::now() + Duration::from_secs(s)),
        seed: cli.seed,
    };
    match &cli.command {
        Command::Multiply { name, x, y } => multiply(&ctx, name, x, y),
        Command::Normalize { name, row, col } => {
            normalize(&ctx, name, row.as_deref(), col.as_deref())
        }
        Command::Egens { name } => {
            let s = ctx.rms(name)?;
            let e = s.idempotent_generated()?;
            let text = ctx.render_rms(&format!("{name}_E"), &e);
            Ok(outcome("egens", text, json!({ "rms": rms_json(&e) }), 0))
        }
        Command::Green { name } => {
            let s = ctx.table(name)?;
            let g = s.green();
            let (r, l, h) = (
                class_labels(&s, &g.r_classes),
                class_labels(&s, &g.l_classes),
                class_labels(&s, &g.h_classes),
            );
            let fmt = |cs: &[Vec<String>]| {
                cs.iter()
                    .map(|c| format!("{{{}}}", c.join(",")))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let text = format!("R: {}\nL: {}\nH: {}", fmt(&r), fmt(&l), fmt(&h));
            Ok(outcome(
                "green",
                text,
                json!({ "r_classes": r, "l_classes": l, "h_classes": h }),
                0,
            ))
        }
        Command::Coordinatize { name } => {
            let s = ctx.table(name)?;
            let c = s.rees_coordinatize()?;
            let pairs: Vec<(String, String)> = (0..s.len())
                .map(|x| {
                    (
                        s.label(x).to_string(),
                        c.rms.element_label(c.rms.element_at(c.iso[x])),
                    )
                })
                .collect();
            let mut text = ctx.render_rms(&format!("{name}_R"), &c.rms);
            for (a, b) in &pairs {
                text.push_str(&format!("{a} -> {b}\n"));
            }
            Ok(outcome(
                "coordinatize",
                text,
                json!({ "rms": rms_json(&c.rms), "iso": pairs }),
                0,
            ))
        }
        Command::Automorphisms { name, method } => automorphisms(&ctx, name, *method),
        Command::Isomorphic { a, b } => {
            let (x, y) = (ctx.item(a)?, ctx.item(b)?);
            let value = match (&x, &y) {
                (Item::Graph(g), Item::Graph(h)) => !g.isomorphisms_to(h).is_empty(),
                (Item::Graph(_), _) | (_, Item::Graph(_)) => false,
                _ => fraisse::are_isomorphic(&ctx.table(a)?, &ctx.table(b)?),
            };
            Ok(predicate("isomorphic", value, value.to_string(), json!({})))
        }
        Command::Homogeneous { name, method } => homogeneous(&ctx, name, *method),
        Command::Classify { name } => {
            let out = match ctx.item(name)? {
                Item::Rms(r) => homogeneity::classify_homogeneous(&r)?,
                Item::Graph(_) => bail!("`{name}` is a graph"),
                other => homogeneity::classify_table(&other.table().unwrap())?,
            };
            let text = out.verdict.to_string();
            let json = json!({
                "verdict": text,
                "normalization": [out.normalization_labels.0, out.normalization_labels.1],
                "idempotent": out.idempotent_label,
                "entry_set": out.entry_set,
                "characteristic": out.characteristic,
                "pattern": pattern_name(out.pattern),
            });
            Ok(predicate(
                "classify",
                out.verdict.is_homogeneous(),
                text,
                json,
            ))
        }
        Command::Screen { name } => {
            let s = ctx.rms(name)?;
            let report = homogeneity::screen_necessary(&s)?;
            let lines: Vec<String> = report
                .violations
                .iter()
                .map(|v| violation_text(&s, v))
                .collect();
            let text = if report.passed() {
                "pass".to_string()
            } else {
                lines.join("\n")
            };
            Ok(predicate(
                "screen",
                report.passed(),
                text,
                json!({ "violations": lines }),
            ))
        }
        Command::Graph { name } => {
            let g = match ctx.item(name)? {
                Item::Graph(g) => g,
                _ => ctx.rms(name)?.induced_graphs()?.1,
            };
            Ok(outcome(
                "graph",
                graph_block(&format!("{name}_graph"), &g),
                json!({ "graph": graph_json(&g) }),
                0,
            ))
        }
        Command::GraphClassify { name } => {
            let g = match ctx.item(name)? {
                Item::Graph(g) => g,
                _ => ctx.rms(name)?.induced_graphs()?.1,
            };
            let pattern = pattern_name(g.classify_pattern());
            let h = g.is_homogeneous();
            let text = format!("{pattern}\nhomogeneous: {}", h.homogeneous);
            let json = json!({ "pattern": pattern, "homogeneous": h.homogeneous, "automorphisms": h.automorphism_count });
            Ok(predicate("graph-classify", h.homogeneous, text, json))
        }
        Command::Age { name, max } => {
            let a = fraisse::age(&ctx.table(name)?, *max, ctx.cap)?;
            let sizes: Vec<String> = a.members.iter().map(|m| m.len().to_string()).collect();
            let text = format!("{} classes; sizes {}", a.members.len(), sizes.join(" "));
            Ok(outcome(
                "age",
                text,
                json!({ "classes": a.members.len(), "members": age_json(&a) }),
                0,
            ))
        }
        Command::Jep { name, max, within } => {
            let s = ctx.table(name)?;
            let k = fraisse::age(&s, *max, ctx.cap)?;
            let w = fraisse::age(&s, within.unwrap_or(s.len()), ctx.cap)?;
            let report = fraisse::check_jep(&k.members, &w);
            let failed = report.witnesses.iter().filter(|(_, w)| w.is_none()).count();
            let text = format!(
                "{}\n{} pairs, {failed} without a joint extension",
                report.holds,
                report.witnesses.len()
            );
            Ok(predicate(
                "jep",
                report.holds,
                text,
                json!({ "pairs": report.witnesses.len(), "failed": failed }),
            ))
        }
        Command::Ap { name, max, within } => {
            let s = ctx.table(name)?;
            let k = fraisse::age(&s, *max, ctx.cap)?;
            let w = fraisse::age(&s, within.unwrap_or(s.len()), ctx.cap)?;
            let amalgams = fraisse::amalgams_among(&k.members);
            let mut failed = 0;
            let mut checked = 0;
            for a in &amalgams {
                if ctx.deadline.is_some_and(|d| Instant::now() >= d) {
                    break;
                }
                checked += 1;
                if fraisse::find_amalgam(a, &w).is_none() {
                    failed += 1;
                }
            }
            let holds = failed == 0 && checked == amalgams.len();
            let text = format!(
                "{holds}\n{checked} of {} amalgams checked, {failed} failed",
                amalgams.len()
            );
            Ok(predicate(
                "ap",
                holds,
                text,
                json!({ "amalgams": amalgams.len(), "checked": checked, "failed": failed }),
            ))
        }
        Command::Amalgamate {
            names,
            group,
            sub,
            bound,
            random,
            max_index,
        } => amalgamate(
            &ctx,
            names,
            group,
            sub.as_deref(),
            *bound,
            *random,
            *max_index,
        ),
        Command::GrowGeneric {
            group,
            sub,
            level,
            from,
        } => {
            let g = ctx.group(group)?;
            let h = ctx.subgroup(&g, sub)?;
            let seed = from.as_deref().map(|n| ctx.rms(n)).transpose()?;
            let s = fraisse::grow_generic_rms(&g, h, *level, seed.as_deref())?;
            let text = ctx.render_rms("Generic", &s);
            Ok(outcome(
                "grow-generic",
                text,
                json!({ "rms": rms_json(&s) }),
                0,
            ))
        }
        Command::Sweep {
            max_group,
            max_index,
            order,
        } => {
            let groups: Vec<_> = homogeneity::groups_up_to(*max_group)?
                .into_iter()
                .filter(|g| order.is_none_or(|o| g.order() == o))
                .collect();
            let report = homogeneity::sweep(&groups, *max_index, ctx.deadline)?;
            let dis: Vec<Value> = report
                .disagreements
                .iter()
                .map(|d| {
                    json!({
                        "rms": rms_json(&d.rms),
                        "brute": d.brute,
                        "classify": d.classified.to_string(),
                        "decompose": d.decomposition.homogeneous,
                    })
                })
                .collect();
            let ok = dis.is_empty() && report.invariant_failures.is_empty() && !report.interrupted;
            let text = format!(
                "{} instances, {} homogeneous, {} disagreements, {} invariant failures{}",
                report.instances,
                report.homogeneous,
                dis.len(),
                report.invariant_failures.len(),
                if report.interrupted {
                    " (interrupted)"
                } else {
                    ""
                }
            );
            let json = json!({
                "instances": report.instances,
                "homogeneous": report.homogeneous,
                "disagreements": dis,
                "invariant_failures": report.invariant_failures.iter().map(|(_, w)| *w).collect::<Vec<_>>(),
                "regular_not_completely_simple": report.regular_not_completely_simple,
                "interrupted": report.interrupted,
            });
            Ok(predicate("sweep", ok, text, json))
        }
    }
}

fn multiply(ctx: &Ctx, name: &str, x: &str, y: &str) -> Result<Outcome> {
    let label = match ctx.item(name)? {
        Item::Rms(s) => {
            let z = s.multiply(s.parse_element(x)?, s.parse_element(y)?)?;
            s.element_label(z)
        }
        Item::Graph(_) => bail!("`{name}` is a graph"),
        other => {
            let t = other.table().unwrap();
            t.label(t.mul(t.index_of(x)?, t.index_of(y)?)).to_string()
        }
    };
    Ok(outcome(
        "multiply",
        label.clone(),
        json!({ "product": label }),
        0,
    ))
}

fn normalize(ctx: &Ctx, name: &str, row: Option<&str>, col: Option<&str>) -> Result<Outcome> {
    let s = ctx.rms(name)?;
    let m = s.matrix();
    let r = row.map_or(Ok(0), |l| m.row_index(l))?;
    let c = col.map_or(Ok(0), |l| m.col_index(l))?;
    let (t, phi) = s.normalize(c, r)?;
    let text = format!(
        "{}{}",
        ctx.render_rms(&format!("{name}_N"), &t),
        morphism_text(&phi)
    );
    Ok(outcome(
        "normalize",
        text,
        json!({ "rms": rms_json(&t), "morphism": morphism_json(&phi) }),
        0,
    ))
}

fn automorphisms(ctx: &Ctx, name: &str, method: AutMethod) -> Result<Outcome> {
    match method {
        AutMethod::Rees => {
            let s = ctx.rms(name)?;
            let all = enumerate_rms_morphisms(&s, &s, true)?;
            let mut text = format!("{} automorphisms", all.len());
            for phi in &all {
                text.push('\n');
                text.push_str(&morphism_text(phi));
            }
            let list: Vec<Value> = all.iter().map(morphism_json).collect();
            Ok(outcome(
                "automorphisms",
                text,
                json!({ "count": all.len(), "automorphisms": list }),
                0,
            ))
        }
        AutMethod::Table => {
            let t = ctx.table(name)?;
            let all = enumerate_isomorphisms(&t, &t);
            let maps: Vec<Vec<&str>> = all
                .iter()
                .map(|m| m.iter().map(|&x| t.label(x)).collect())
                .collect();
            let mut text = format!("{} automorphisms", all.len());
            for m in &maps {
                text.push('\n');
                text.push_str(&m.join(" "));
            }
            Ok(outcome(
                "automorphisms",
                text,
                json!({ "count": all.len(), "automorphisms": maps }),
                0,
            ))
        }
    }
}

fn homogeneous(ctx: &Ctx, name: &str, method: HomMethod) -> Result<Outcome> {
    let item = ctx.item(name)?;
    let (value, json) = match (method, &item) {
        (HomMethod::Brute, Item::Graph(g)) => {
            let h = g.is_homogeneous();
            (
                h.homogeneous,
                json!({ "method": "brute", "automorphisms": h.automorphism_count }),
            )
        }
        (HomMethod::Brute, _) => {
            let t = ctx.table(name)?;
            let cert = is_homogeneous(&t, ctx.cap)?;
            let counter = cert.counterexample.as_ref().map(|c| {
                json!({
                    "domain": t.set_labels(c.domain),
                    "codomain": t.set_labels(c.codomain),
                    "map": c.map.iter().map(|&(a, b)| json!([t.label(a), t.label(b)])).collect::<Vec<_>>(),
                })
            });
            (
                cert.homogeneous,
                json!({
                    "method": "brute",
                    "automorphisms": cert.automorphism_count,
                    "subsemigroups": cert.subsemigroup_count,
                    "orbits": cert.orbits.len(),
                    "counterexample": counter,
                }),
            )
        }
        (_, Item::Graph(_)) => bail!("only brute force applies to graphs"),
        (HomMethod::Classify, _) => {
            let out = match &item {
                Item::Rms(r) => homogeneity::classify_homogeneous(r)?,
                other => homogeneity::classify_table(&other.table().unwrap())?,
            };
            (
                out.verdict.is_homogeneous(),
                json!({ "method": "classify", "verdict": out.verdict.to_string() }),
            )
        }
        (HomMethod::Decompose, _) => {
            let s = ctx.rms(name)?;
            let d = homogeneity::decompose_check(&s)?;
            (
                d.homogeneous,
                json!({
                    "method": "decompose",
                    "group_homogeneous": d.group_homogeneous,
                    "idempotent_generated_homogeneous": d.idempotent_generated_homogeneous,
                    "characteristic": d.characteristic,
                }),
            )
        }
    };
    Ok(predicate("homogeneous", value, value.to_string(), json))
}

fn amalgamate(
    ctx: &Ctx,
    names: &[String],
    group: &str,
    sub: Option<&str>,
    bound: usize,
    random: bool,
    max_index: usize,
) -> Result<Outcome> {
    let g = ctx.group(group)?;
    let parts: [ReesMatrixSemigroup; 3] = if random {
        let h = match sub {
            Some(sub) => ctx.subgroup(&g, sub)?,
            None => ElemSet::full(g.order()),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
        fraisse::random_cs_amalgam(&mut rng, &g, h, max_index)?
    } else {
        let [a, b, c] = names else {
            bail!("amalgamate needs CORE WING1 WING2 or --random")
        };
        [
            (*ctx.rms(a)?).clone(),
            (*ctx.rms(b)?).clone(),
            (*ctx.rms(c)?).clone(),
        ]
    };
    let out = fraisse::amalgamate_cs(&parts[0], &parts[1], &parts[2], &g, bound)?;
    let mut text = ctx.render_rms("T", &out.t);
    text.push_str(&format!(
        "g1 {}\ng2 {}",
        morphism_text(&out.g1),
        morphism_text(&out.g2)
    ));
    let json = json!({
        "core": rms_json(&parts[0]),
        "wings": [rms_json(&parts[1]), rms_json(&parts[2])],
        "t": rms_json(&out.t),
        "g1": morphism_json(&out.g1),
        "g2": morphism_json(&out.g2),
    });
    Ok(outcome("amalgamate", text, json, 0))
}
