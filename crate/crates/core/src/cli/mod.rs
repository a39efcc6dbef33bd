//! The `manysorted` command line: loads workspace files, runs one command
//! and prints a report, as text or as JSON.
//!
//! Exit codes: 0 success or verdict true, 1 verdict false, 2 usage or
//! validation error, 3 a resource bound exceeded.

pub mod workspace;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::algebra::{FiniteAlgebra, Limits};
use crate::error::Error;
use crate::formations::{
    bps_axioms_check, formation_closure, is_formation, language_formation_membership, theta_roundtrip,
    vartheta_roundtrip, AlgebraPool, FormationMode, Universe,
};
use crate::signature::Signature;
use crate::sorted::{SortedEquivalence, SortedSubset};
use crate::syntactic::{
    lang_boolean, lang_inverse_hom, lang_inverse_translation, omega_finite, BooleanOp, Context, Recognizer,
};
use crate::term::{parse_term, GeneratorSet, Substitution};
use crate::union_find::UnionFind;

pub use workspace::{LoadError, Object, PoolSpec, Workspace};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BOUND: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "manysorted", version, about = "Finite many-sorted algebras, syntactic congruences and formations")]
pub struct Cli {
    /// Workspace files to load, in order.
    #[arg(short = 'w', long = "workspace", global = true)]
    pub workspace: Vec<PathBuf>,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest total carrier accepted by enumerations; also the default
    /// formation bound.
    #[arg(long, global = true)]
    pub max_carrier: Option<usize>,
    /// Largest homomorphism search space.
    #[arg(long, global = true)]
    pub max_homs: Option<u128>,
    /// Order in which pool members are listed.
    #[arg(long, global = true, value_enum, default_value_t = SeedOrder::Canonical)]
    pub seed_order: SeedOrder,
    /// Leave timings out of the report.
    #[arg(long, global = true)]
    pub no_timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeedOrder {
    Canonical,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load and validate the workspace.
    Check,
    /// List every congruence of an algebra.
    Congruences { algebra: String },
    /// The greatest congruence saturating a subset.
    Omega {
        algebra: String,
        /// Accepted elements of one sort, as `SORT:e1,e2`; repeatable.
        #[arg(long)]
        accept: Vec<String>,
    },
    /// Syntactic algebra of a recognizer's language.
    Syntactic {
        #[arg(long)]
        recognizer: String,
        /// Also decide membership of this term.
        #[arg(long)]
        term: Option<String>,
    },
    /// Saturate a subset by the equivalence generated by pairs.
    Saturate {
        algebra: String,
        /// Elements of one sort, as `SORT:e1,e2`; repeatable.
        #[arg(long)]
        subset: Vec<String>,
        /// Identified elements, as `SORT:x,y`; repeatable.
        #[arg(long)]
        pair: Vec<String>,
        /// Close the pairs under the operations as well.
        #[arg(long)]
        congruence: bool,
    },
    /// Operations on recognizable languages.
    #[command(subcommand)]
    Lang(LangCommand),
    /// Formations of finite algebras.
    #[command(subcommand)]
    Formation(FormationCommand),
    /// Bounded checks of the formation correspondences.
    #[command(subcommand)]
    Eilenberg(EilenbergCommand),
}

#[derive(Debug, Args)]
pub struct OutName {
    /// Name given to the resulting objects.
    #[arg(long, default_value = "result")]
    pub name: String,
}

#[derive(Debug, Subcommand)]
pub enum LangCommand {
    Union {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[command(flatten)]
        out: OutName,
    },
    Inter {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[command(flatten)]
        out: OutName,
    },
    Compl {
        #[arg(long)]
        recognizer: String,
        #[command(flatten)]
        out: OutName,
    },
    /// Inverse image under a context with one hole `(_)`.
    InvCtx {
        #[arg(long)]
        recognizer: String,
        #[arg(long)]
        hole_sort: String,
        #[arg(long)]
        context: String,
        #[command(flatten)]
        out: OutName,
    },
    /// Inverse image under a substitution `VAR=TERM`.
    InvHom {
        #[arg(long)]
        recognizer: String,
        /// Source generator set; defaults to the recognizer's.
        #[arg(long)]
        source: Option<String>,
        #[arg(long = "map")]
        map: Vec<String>,
        #[command(flatten)]
        out: OutName,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Standard,
    Shsk,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum FormationCommand {
    /// Close a seed under homomorphic images and subdirect products.
    Close {
        #[arg(long)]
        seed: Vec<String>,
        #[arg(long)]
        pool: Option<String>,
        /// Carrier bound; defaults to the pool bound, then --max-carrier, then 4.
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long)]
        signature: Option<String>,
        #[command(flatten)]
        out: OutName,
    },
    /// Whether an algebra or a recognizer's language belongs to a pool.
    Member {
        #[arg(long)]
        pool: String,
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        recognizer: Option<String>,
    },
    IsFormation {
        #[arg(long)]
        pool: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum EilenbergCommand {
    Theta {
        #[arg(long)]
        pool: String,
        #[arg(long)]
        gens: Vec<String>,
    },
    Vartheta {
        #[arg(long)]
        pool: String,
        #[arg(long)]
        gens: Vec<String>,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
    Bps {
        #[arg(long)]
        pool: String,
        #[arg(long)]
        gens: String,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
}

/// Why a command did not produce a verdict.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Bound(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BoundExceeded { .. } => Failure::Bound(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(Value, bool), Failure>;

/// Printed output and exit code of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses arguments and runs the command.
pub fn run_from<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Output {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Output {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Output {
    let start = Instant::now();
    let outcome = Workspace::load(&cli.workspace)
        .map_err(Failure::from)
        .and_then(|ws| Session::new(cli, ws).dispatch(&cli.command));
    let mut report = Map::new();
    report.insert("command".into(), Value::String(command_name(&cli.command)));
    let code = match outcome {
        Ok((result, verdict)) => {
            report.insert("result".into(), result);
            report.insert("verdict".into(), Value::Bool(verdict));
            if verdict {
                EXIT_OK
            } else {
                EXIT_FALSE
            }
        }
        Err(Failure::Usage(m)) => {
            report.insert("error".into(), json!({"kind": "usage", "message": m}));
            EXIT_USAGE
        }
        Err(Failure::Bound(m)) => {
            report.insert("error".into(), json!({"kind": "bound", "message": m}));
            EXIT_BOUND
        }
    };
    if !cli.no_timings {
        report.insert("timings".into(), json!({"elapsed_ms": start.elapsed().as_millis() as u64}));
    }
    let report = Value::Object(report);
    let stdout = if cli.json {
        serde_json::to_string_pretty(&report).expect("serializable") + "\n"
    } else {
        render_text(&report)
    };
    let stderr = match report.get("error") {
        Some(e) if !cli.json => format!("error: {}\n", e["message"].as_str().unwrap_or_default()),
        _ => String::new(),
    };
    Output { stdout, stderr, code }
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Check => "check".into(),
        Command::Congruences { .. } => "congruences".into(),
        Command::Omega { .. } => "omega".into(),
        Command::Syntactic { .. } => "syntactic".into(),
        Command::Saturate { .. } => "saturate".into(),
        Command::Lang(l) => format!(
            "lang {}",
            match l {
                LangCommand::Union { .. } => "union",
                LangCommand::Inter { .. } => "inter",
                LangCommand::Compl { .. } => "compl",
                LangCommand::InvCtx { .. } => "inv-ctx",
                LangCommand::InvHom { .. } => "inv-hom",
            }
        ),
        Command::Formation(f) => format!(
            "formation {}",
            match f {
                FormationCommand::Close { .. } => "close",
                FormationCommand::Member { .. } => "member",
                FormationCommand::IsFormation { .. } => "is-formation",
            }
        ),
        Command::Eilenberg(e) => format!(
            "eilenberg {}",
            match e {
                EilenbergCommand::Theta { .. } => "theta",
                EilenbergCommand::Vartheta { .. } => "vartheta",
                EilenbergCommand::Bps { .. } => "bps",
            }
        ),
    }
}

/// Plain text: one `key: value` line per field, multi-line strings (the
/// workspace-format witnesses) printed verbatim.
fn render_text(report: &Value) -> String {
    fn walk(out: &mut String, prefix: &str, v: &Value) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(out, &p, x);
                }
            }
            Value::String(s) if s.contains('\n') || s.starts_with('(') => {
                out.push_str(&format!("{prefix}:\n{s}\n"));
            }
            Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
            other => out.push_str(&format!("{prefix}: {other}\n")),
        }
    }
    let mut out = String::new();
    walk(&mut out, "", report);
    out
}

struct Session<'a> {
    cli: &'a Cli,
    ws: Workspace,
    limits: Limits,
}

fn usage(m: impl Into<String>) -> Failure {
    Failure::Usage(m.into())
}

impl<'a> Session<'a> {
    fn new(cli: &'a Cli, ws: Workspace) -> Self {
        let mut limits = Limits::default();
        if let Some(n) = cli.max_carrier {
            limits.max_carrier = n;
        }
        if let Some(n) = cli.max_homs {
            limits.max_homs = n;
        }
        Session { cli, ws, limits }
    }

    fn algebra(&self, name: &str) -> Result<&FiniteAlgebra, Failure> {
        self.ws.algebra(name).ok_or_else(|| usage(format!("unknown algebra `{name}`")))
    }

    fn recognizer(&self, name: &str) -> Result<&Recognizer, Failure> {
        self.ws.recognizer(name).ok_or_else(|| usage(format!("unknown recognizer `{name}`")))
    }

    fn generators(&self, name: &str) -> Result<&GeneratorSet, Failure> {
        self.ws.generators(name).ok_or_else(|| usage(format!("unknown generator set `{name}`")))
    }

    fn sig_name_of(&self, sig: &Signature) -> String {
        self.ws
            .names()
            .iter()
            .find(|n| self.ws.signature(n) == Some(sig))
            .cloned()
            .unwrap_or_else(|| sig.name().to_string())
    }

    /// The workspace name of the generator set a recognizer is over.
    fn gens_name_of(&self, g: &GeneratorSet) -> String {
        self.ws
            .names()
            .iter()
            .find(|n| self.ws.generators(n) == Some(g))
            .cloned()
            .unwrap_or_else(|| "X".into())
    }

    fn dispatch(&self, c: &Command) -> Outcome {
        match c {
            Command::Check => self.check(),
            Command::Congruences { algebra } => self.congruences(algebra),
            Command::Omega { algebra, accept } => self.omega(algebra, accept),
            Command::Syntactic { recognizer, term } => self.syntactic(recognizer, term.as_deref()),
            Command::Saturate {
                algebra,
                subset,
                pair,
                congruence,
            } => self.saturate(algebra, subset, pair, *congruence),
            Command::Lang(l) => self.lang(l),
            Command::Formation(f) => self.formation(f),
            Command::Eilenberg(e) => self.eilenberg(e),
        }
    }

    fn check(&self) -> Outcome {
        let objects: Vec<Value> = self
            .ws
            .names()
            .iter()
            .map(|n| {
                let o = self.ws.get(n).expect("listed");
                let mut m = Map::new();
                m.insert("name".into(), json!(n));
                m.insert("kind".into(), json!(o.kind()));
                match o {
                    Object::Algebra(a) => {
                        m.insert("sizes".into(), json!(a.sizes()));
                        m.insert("subfinal".into(), json!(a.is_subfinal()));
                    }
                    Object::Recognizer(r) => {
                        m.insert("states".into(), json!(r.algebra().total_size()));
                    }
                    Object::Pool(p) => {
                        m.insert("bound".into(), json!(p.bound));
                        m.insert("members".into(), json!(p.algebras));
                    }
                    Object::Signature(s) => {
                        m.insert("sorts".into(), json!(s.sorts().iter().map(|s| s.as_str()).collect::<Vec<_>>()));
                        m.insert("ops".into(), json!(s.ops().len()));
                    }
                    Object::Generators(g) => {
                        m.insert("vars".into(), json!(g.len()));
                    }
                }
                Value::Object(m)
            })
            .collect();
        Ok((json!({"counts": self.ws.counts(), "objects": objects}), true))
    }

    fn congruences(&self, name: &str) -> Outcome {
        let a = self.algebra(name)?;
        let list: Vec<Value> = a
            .congruences(&self.limits)?
            .iter()
            .map(|c| blocks_json(a, c.equivalence()))
            .collect();
        Ok((json!({"algebra": name, "count": list.len(), "congruences": list}), true))
    }

    fn omega(&self, name: &str, accept: &[String]) -> Outcome {
        let a = self.algebra(name)?;
        let l = parse_subset(a, accept)?;
        let omega = omega_finite(a, &l)?;
        let (q, _) = a.quotient(&omega)?;
        let sig = self.sig_name_of(a.sig());
        Ok((
            json!({
                "algebra": name,
                "accept": subset_json(a, &l),
                "omega": blocks_json(a, omega.equivalence()),
                "class_counts": omega.class_counts(),
                "identity": omega.is_identity(),
                "quotient": workspace::print_algebra(&format!("{name}-omega"), &sig, &q),
            }),
            true,
        ))
    }

    fn syntactic(&self, name: &str, term: Option<&str>) -> Outcome {
        let r = self.recognizer(name)?;
        let sq = r.syntactic_quotient()?;
        let sig = self.sig_name_of(r.sig());
        let gens = self.gens_name_of(r.generators());
        let qname = format!("{name}-syn");
        let minimal = sq.as_recognizer(r.generators())?;
        let mut result = json!({
            "recognizer": name,
            "index": sq.index,
            "class_counts": sq.class_counts,
            "image_sizes": sq.image.sizes(),
            "omega": blocks_json(&sq.image, sq.omega.equivalence()),
            "accept": subset_json(&sq.quotient, &sq.accept),
            "quotient": workspace::print_algebra(&qname, &sig, &sq.quotient),
            "minimal": workspace::print_recognizer(&format!("{name}-min"), &qname, &gens, &minimal),
        });
        if let Some(t) = term {
            let t = parse_term(t, r.sig(), r.generators()).map_err(|e| usage(e.to_string()))?;
            result["member"] = json!(r.contains(&t)?);
        }
        Ok((result, true))
    }

    fn saturate(&self, name: &str, subset: &[String], pairs: &[String], congruence: bool) -> Outcome {
        let a = self.algebra(name)?;
        let x = parse_subset(a, subset)?;
        let mut triples = Vec::new();
        for p in pairs {
            let (s, xs) = parse_sorted_list(a, p)?;
            if xs.len() != 2 {
                return Err(usage(format!("`{p}`: a pair names exactly two elements")));
            }
            triples.push((s, xs[0], xs[1]));
        }
        let eq = if congruence {
            a.congruence_generated(&triples)?.into_equivalence()
        } else {
            let labels = (0..a.num_sorts())
                .map(|s| {
                    let mut uf = UnionFind::new(a.size(s));
                    for &(t, x, y) in &triples {
                        if t == s {
                            uf.union(x, y);
                        }
                    }
                    uf.labels()
                })
                .collect();
            SortedEquivalence::from_labels(a.carriers(), labels)?
        };
        let sat = eq.saturate(&x)?;
        Ok((
            json!({
                "algebra": name,
                "subset": subset_json(a, &x),
                "equivalence": blocks_json(a, &eq),
                "saturation": subset_json(a, &sat),
                "was_saturated": eq.is_saturated(&x)?,
            }),
            true,
        ))
    }

    fn emit_recognizer(&self, r: &Recognizer, name: &str) -> Result<Value, Failure> {
        let sig = self.sig_name_of(r.sig());
        let gens = self.gens_name_of(r.generators());
        let alg_name = format!("{name}-alg");
        let sq = r.syntactic_quotient()?;
        let mut text = String::new();
        if !self.ws.names().contains(&gens) {
            text.push_str(&workspace::print_generators(&gens, &sig, r.generators()));
            text.push('\n');
        }
        text.push_str(&workspace::print_algebra(&alg_name, &sig, r.algebra()));
        text.push('\n');
        text.push_str(&workspace::print_recognizer(name, &alg_name, &gens, r));
        Ok(json!({
            "name": name,
            "states": r.algebra().total_size(),
            "syntactic_index": sq.index,
            "class_counts": sq.class_counts,
            "text": text,
        }))
    }

    fn lang(&self, l: &LangCommand) -> Outcome {
        let (r, out) = match l {
            LangCommand::Union { left, right, out } | LangCommand::Inter { left, right, out } => {
                let op = if matches!(l, LangCommand::Union { .. }) {
                    BooleanOp::Union
                } else {
                    BooleanOp::Intersection
                };
                let r1 = self.recognizer(left)?;
                let r2 = self.recognizer(right)?;
                (lang_boolean(op, r1, Some(r2), &self.limits)?, out)
            }
            LangCommand::Compl { recognizer, out } => (
                lang_boolean(BooleanOp::Complement, self.recognizer(recognizer)?, None, &self.limits)?,
                out,
            ),
            LangCommand::InvCtx {
                recognizer,
                hole_sort,
                context,
                out,
            } => {
                let r = self.recognizer(recognizer)?;
                let t = r
                    .sig()
                    .sort_index(hole_sort)
                    .ok_or_else(|| usage(format!("unknown sort `{hole_sort}`")))?;
                let ctx = Context::parse(r.sig(), r.generators(), t, context)?;
                (lang_inverse_translation(r, &ctx)?, out)
            }
            LangCommand::InvHom {
                recognizer,
                source,
                map,
                out,
            } => {
                let r = self.recognizer(recognizer)?;
                let src = match source {
                    Some(g) => self.generators(g)?.clone(),
                    None => r.generators().clone(),
                };
                let pairs: Vec<(&str, &str)> = map
                    .iter()
                    .map(|m| m.split_once('=').ok_or_else(|| usage(format!("`{m}`: expected VAR=TERM"))))
                    .collect::<Result<_, _>>()?;
                let g = Substitution::parse(r.sig(), &src, r.generators(), &pairs)?;
                (lang_inverse_hom(r, &g)?, out)
            }
        };
        Ok((self.emit_recognizer(&r, &out.name)?, true))
    }

    /// The universe and pool of a workspace pool, with display names for
    /// universe positions.
    fn resolve_pool(&self, name: &str) -> Result<Resolved, Failure> {
        let spec = self.ws.pool(name).ok_or_else(|| usage(format!("unknown pool `{name}`")))?;
        let sig = self.pool_signature(spec)?;
        self.resolve(&sig, spec.bound, &spec.algebras)
    }

    fn pool_signature(&self, spec: &PoolSpec) -> Result<Signature, Failure> {
        let sig_name = match (&spec.signature, spec.algebras.first()) {
            (Some(s), _) => s.clone(),
            (None, Some(a)) => self.ws.signature_of(a).expect("algebra").to_string(),
            (None, None) => return Err(usage("an empty pool needs `:signature`")),
        };
        Ok(self.ws.signature(&sig_name).expect("resolved on load").clone())
    }

    fn resolve(&self, sig: &Signature, bound: usize, members: &[String]) -> Result<Resolved, Failure> {
        let universe = Universe::enumerate(sig, bound, &self.limits)?;
        let algs: Vec<FiniteAlgebra> = members
            .iter()
            .map(|m| self.algebra(m).cloned())
            .collect::<Result<_, _>>()?;
        let pool = AlgebraPool::from_algebras(&universe, bound, &algs, &self.limits)?;
        let mut names = BTreeMap::new();
        for n in self.ws.names() {
            if let Some(a) = self.ws.algebra(n) {
                if a.sig() == sig {
                    if let Some(i) = universe.locate(a, &self.limits)? {
                        names.entry(i).or_insert_with(|| n.clone());
                    }
                }
            }
        }
        Ok(Resolved {
            sig_name: self.sig_name_of(sig),
            universe,
            pool,
            names,
        })
    }

    fn formation(&self, f: &FormationCommand) -> Outcome {
        match f {
            FormationCommand::Close {
                seed,
                pool,
                bound,
                signature,
                out,
            } => {
                let spec = match pool {
                    Some(p) => Some(self.ws.pool(p).ok_or_else(|| usage(format!("unknown pool `{p}`")))?),
                    None => None,
                };
                let mut members: Vec<String> = spec.map(|s| s.algebras.clone()).unwrap_or_default();
                members.extend(seed.iter().cloned());
                let bound = bound
                    .or(spec.map(|s| s.bound))
                    .or(self.cli.max_carrier)
                    .unwrap_or(4);
                let sig = match (signature, spec, members.first()) {
                    (Some(s), _, _) => self
                        .ws
                        .signature(s)
                        .cloned()
                        .ok_or_else(|| usage(format!("unknown signature `{s}`")))?,
                    (None, Some(sp), _) if sp.signature.is_some() || !sp.algebras.is_empty() => {
                        self.pool_signature(sp)?
                    }
                    (None, _, Some(a)) => self.algebra(a)?.sig().clone(),
                    _ => return Err(usage("an empty seed needs --signature")),
                };
                for m in &members {
                    if self.algebra(m)?.sig() != &sig {
                        return Err(usage(format!("`{m}` is over another signature")));
                    }
                }
                let res = self.resolve(&sig, bound, &members)?;
                let report = formation_closure(&res.pool, &res.universe, &self.limits)?;
                let closed = &report.closed;
                let list: Vec<Value> = closed.indices().map(|i| res.describe(i)).collect();
                let mut text = String::new();
                for i in closed.indices() {
                    if !res.names.contains_key(&i) {
                        text.push_str(&workspace::print_algebra(&res.name(i), &res.sig_name, res.universe.member(i)));
                        text.push('\n');
                    }
                }
                let spec = PoolSpec {
                    bound,
                    signature: Some(res.sig_name.clone()),
                    algebras: closed.indices().map(|i| res.name(i)).collect(),
                };
                text.push_str(&workspace::print_pool(&out.name, &spec));
                let trace: Vec<Value> = report
                    .trace
                    .iter()
                    .map(|t| {
                        json!({
                            "round": t.round,
                            "rule": t.rule.to_string(),
                            "added": res.name(t.added),
                            "from": t.parents.iter().map(|&p| res.name(p)).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                let escape = report.escape.as_ref().map(|e| {
                    json!({
                        "factors": [res.name(e.factors.0), res.name(e.factors.1)],
                        "sizes": e.algebra.sizes(),
                        "algebra": workspace::print_algebra("escape", &res.sig_name, &e.algebra),
                    })
                });
                Ok((
                    json!({
                        "bound": bound,
                        "universe": res.universe.len(),
                        "members": list,
                        "count": closed.len(),
                        "saturated_at_bound": report.saturated_at_bound,
                        "escape": escape,
                        "rounds": report.rounds,
                        "trace": trace,
                        "pool": text,
                    }),
                    true,
                ))
            }
            FormationCommand::Member {
                pool,
                algebra,
                recognizer,
            } => {
                let res = self.resolve_pool(pool)?;
                match (algebra, recognizer) {
                    (Some(a), None) => {
                        let alg = self.algebra(a)?;
                        if alg.sig() != res.universe.sig() {
                            return Err(usage(format!("`{a}` is over another signature")));
                        }
                        let at = res.universe.locate(alg, &self.limits)?;
                        let member = at.is_some_and(|i| res.pool.contains_index(i));
                        Ok((
                            json!({
                                "algebra": a,
                                "within_bound": at.is_some(),
                                "matches": at.filter(|_| member).map(|i| res.name(i)),
                                "member": member,
                            }),
                            member,
                        ))
                    }
                    (None, Some(r)) => {
                        let rec = self.recognizer(r)?;
                        if rec.sig() != res.universe.sig() {
                            return Err(usage(format!("`{r}` is over another signature")));
                        }
                        let v = language_formation_membership(&res.pool, &res.universe, rec, &self.limits)?;
                        Ok((
                            json!({
                                "recognizer": r,
                                "syntactic_index": v.syntactic_index,
                                "class_counts": v.class_counts,
                                "within_bound": v.quotient.is_some(),
                                "syntactic_algebra": v.quotient.map(|i| res.name(i)),
                                "member": v.member,
                            }),
                            v.member,
                        ))
                    }
                    _ => Err(usage("give exactly one of --algebra and --recognizer")),
                }
            }
            FormationCommand::IsFormation { pool, mode } => {
                let res = self.resolve_pool(pool)?;
                let modes: Vec<FormationMode> = match mode {
                    ModeArg::Standard => vec![FormationMode::Standard],
                    ModeArg::Shsk => vec![FormationMode::ShSk],
                    ModeArg::Both => vec![FormationMode::Standard, FormationMode::ShSk],
                };
                let mut verdicts = Map::new();
                let mut all = true;
                for m in modes {
                    let v = is_formation(&res.pool, &res.universe, m);
                    all &= v.holds;
                    verdicts.insert(
                        match m {
                            FormationMode::Standard => "standard".into(),
                            FormationMode::ShSk => "shsk".into(),
                        },
                        json!({
                            "holds": v.holds,
                            "failed": v.failed.map(|c| c.to_string()),
                            "witness": v.witness.map(|i| workspace::print_algebra(&res.name(i), &res.sig_name, res.universe.member(i))),
                            "source": v.source.map(|i| res.name(i)),
                        }),
                    );
                }
                Ok((json!({"pool": pool, "bound": res.pool.bound(), "modes": verdicts}), all))
            }
        }
    }

    fn eilenberg(&self, e: &EilenbergCommand) -> Outcome {
        match e {
            EilenbergCommand::Theta { pool, gens } => {
                let res = self.resolve_pool(pool)?;
                let samples: Vec<GeneratorSet> = gens
                    .iter()
                    .map(|g| self.generators(g).cloned())
                    .collect::<Result<_, _>>()?;
                let r = theta_roundtrip(&res.pool, &res.universe, &samples, &self.limits)?;
                let samples: Vec<Value> = r
                    .samples
                    .iter()
                    .map(|s| {
                        json!({
                            "profile": s.profile,
                            "automatic": s.automatic,
                            "filter": res.filter_json(&s.filter),
                        })
                    })
                    .collect();
                let uncovered: Vec<String> = r.uncovered.iter().map(|&i| res.name(i)).collect();
                Ok((json!({"pool": pool, "samples": samples, "uncovered": uncovered, "holds": r.holds}), r.holds))
            }
            EilenbergCommand::Vartheta { pool, gens, budget } => {
                let res = self.resolve_pool(pool)?;
                let samples: Vec<GeneratorSet> = gens
                    .iter()
                    .map(|g| self.generators(g).cloned())
                    .collect::<Result<_, _>>()?;
                let r = vartheta_roundtrip(&res.pool, &res.universe, &samples, *budget, &self.limits)?;
                let mut v = serde_json::to_value(&r).expect("serializable");
                v["pool"] = json!(pool);
                Ok((v, r.holds))
            }
            EilenbergCommand::Bps { pool, gens, budget } => {
                let res = self.resolve_pool(pool)?;
                let g = self.generators(gens)?;
                let r = bps_axioms_check(&res.pool, &res.universe, g, *budget, &self.limits)?;
                let mut v = serde_json::to_value(&r).expect("serializable");
                v["pool"] = json!(pool);
                Ok((v, r.holds))
            }
        }
    }
}

struct Resolved {
    sig_name: String,
    universe: Universe,
    pool: AlgebraPool,
    /// Workspace names of universe positions.
    names: BTreeMap<usize, String>,
}

impl Resolved {
    fn name(&self, i: usize) -> String {
        self.names.get(&i).cloned().unwrap_or_else(|| format!("U{i}"))
    }

    fn describe(&self, i: usize) -> Value {
        let a = self.universe.member(i);
        json!({"name": self.name(i), "sizes": a.sizes(), "subfinal": a.is_subfinal()})
    }

    fn filter_json(&self, f: &crate::formations::FilterReport) -> Value {
        let mut v = serde_json::to_value(f).expect("serializable");
        v["meet_failures"] = f
            .meet_failures
            .iter()
            .map(|&(a, b, q)| json!({"kernels": [a, b], "meet": self.name(q)}))
            .collect();
        v["coarsening_failures"] = f
            .coarsening_failures
            .iter()
            .map(|&(k, q)| json!({"kernel": k, "quotient": self.name(q)}))
            .collect();
        v
    }
}

fn parse_sorted_list(a: &FiniteAlgebra, text: &str) -> Result<(usize, Vec<usize>), Failure> {
    let (sort, elems) = text
        .split_once(':')
        .ok_or_else(|| usage(format!("`{text}`: expected SORT:e1,e2")))?;
    let s = a
        .carriers()
        .sort_index(sort)
        .ok_or_else(|| usage(format!("unknown sort `{sort}`")))?;
    let xs = elems
        .split(',')
        .filter(|e| !e.is_empty())
        .map(|e| {
            a.carriers()
                .element_index(s, e)
                .ok_or_else(|| usage(format!("`{e}` is not in the carrier of `{sort}`")))
        })
        .collect::<Result<_, _>>()?;
    Ok((s, xs))
}

fn parse_subset(a: &FiniteAlgebra, parts: &[String]) -> Result<SortedSubset, Failure> {
    let mut l = SortedSubset::empty(a.carriers());
    for p in parts {
        let (s, xs) = parse_sorted_list(a, p)?;
        for x in xs {
            l.insert(s, x);
        }
    }
    Ok(l)
}

fn subset_json(a: &FiniteAlgebra, l: &SortedSubset) -> Value {
    let c = a.carriers();
    let m: Map<String, Value> = (0..c.num_sorts())
        .map(|s| {
            let xs: Vec<&str> = l.members(s).iter().map(|&x| c.element_name(s, x)).collect();
            (c.sorts()[s].to_string(), json!(xs))
        })
        .collect();
    Value::Object(m)
}

fn blocks_json(a: &FiniteAlgebra, eq: &SortedEquivalence) -> Value {
    let c = a.carriers();
    let m: Map<String, Value> = (0..c.num_sorts())
        .map(|s| {
            let blocks: Vec<Vec<&str>> = eq
                .blocks(s)
                .iter()
                .map(|b| b.iter().map(|&x| c.element_name(s, x)).collect())
                .collect();
            (c.sorts()[s].to_string(), json!(blocks))
        })
        .collect();
    Value::Object(m)
}
