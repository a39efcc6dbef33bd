//! The workspace text format: named signatures, algebras, generator sets,
//! recognizers and pools, written as s-expressions.
//!
//! ```text
//! (signature SIG1 (sorts s) (op c () -> s) (op f (s) -> s))
//! (algebra CYC2 :signature SIG1 (carrier s (0 1))
//!   (table c (() -> 0)) (table f ((0) -> 1) ((1) -> 0)))
//! (generators X :signature SIG1 (var x s))
//! (recognizer evenF :algebra CYC2 :generators X (assign x -> 0) (accept s (0)))
//! (pool P :bound 4 (algebras CYC2))
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use itertools::Itertools;

use crate::algebra::{AlgebraDraft, FiniteAlgebra};
use crate::error::Error;
use crate::sexp::{self, Pos, Sexp};
use crate::signature::Signature;
use crate::sorted::SortedSet;
use crate::syntactic::Recognizer;
use crate::term::GeneratorSet;

/// A load or validation failure, located in its source file.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{file}:{pos}: {message}")]
pub struct LoadError {
    pub file: String,
    pub pos: Pos,
    pub message: String,
}

/// A pool as written: member names, resolved against a universe on use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoolSpec {
    pub bound: usize,
    pub signature: Option<String>,
    pub algebras: Vec<String>,
}

#[derive(Debug, Clone)]
pub enum Object {
    Signature(Signature),
    Algebra(FiniteAlgebra),
    Generators(GeneratorSet),
    Recognizer(Recognizer),
    Pool(PoolSpec),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Signature(_) => "signature",
            Object::Algebra(_) => "algebra",
            Object::Generators(_) => "generators",
            Object::Recognizer(_) => "recognizer",
            Object::Pool(_) => "pool",
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Workspace {
    order: Vec<String>,
    objects: BTreeMap<String, Object>,
    /// Signature name of every generator set.
    generator_sigs: BTreeMap<String, String>,
    algebra_sigs: BTreeMap<String, String>,
}

struct Ctx<'a> {
    file: &'a str,
}

impl Ctx<'_> {
    fn err(&self, pos: Pos, message: impl Into<String>) -> LoadError {
        LoadError {
            file: self.file.to_string(),
            pos,
            message: message.into(),
        }
    }

    fn lib(&self, pos: Pos, e: Error) -> LoadError {
        self.err(pos, e.to_string())
    }

    fn atom<'s>(&self, e: &'s Sexp, what: &str) -> Result<&'s str, LoadError> {
        e.as_atom().ok_or_else(|| self.err(e.pos(), format!("expected {what}")))
    }

    fn list<'s>(&self, e: &'s Sexp, what: &str) -> Result<&'s [Sexp], LoadError> {
        e.as_list().ok_or_else(|| self.err(e.pos(), format!("expected {what}")))
    }

    fn head<'s>(&self, e: &'s Sexp, keyword: &str) -> Result<&'s [Sexp], LoadError> {
        let items = self.list(e, &format!("`({keyword} ...)`"))?;
        match items.first().and_then(Sexp::as_atom) {
            Some(k) if k == keyword => Ok(&items[1..]),
            _ => Err(self.err(e.pos(), format!("expected `({keyword} ...)`"))),
        }
    }

    /// Splits `:key value` pairs off the front of a form body.
    fn keywords<'s>(&self, items: &'s [Sexp]) -> Result<(BTreeMap<&'s str, &'s Sexp>, &'s [Sexp]), LoadError> {
        let mut keys = BTreeMap::new();
        let mut rest = items;
        while let Some(k) = rest.first().and_then(Sexp::as_atom).filter(|k| k.starts_with(':')) {
            let v = rest
                .get(1)
                .ok_or_else(|| self.err(rest[0].pos(), format!("`{k}` needs a value")))?;
            if keys.insert(k, v).is_some() {
                return Err(self.err(rest[0].pos(), format!("`{k}` given twice")));
            }
            rest = &rest[2..];
        }
        Ok((keys, rest))
    }

    fn arrow(&self, e: &Sexp) -> Result<(), LoadError> {
        match e.as_atom() {
            Some("->") => Ok(()),
            _ => Err(self.err(e.pos(), "expected `->`")),
        }
    }
}

impl Workspace {
    pub fn new() -> Self {
        Workspace::default()
    }

    pub fn load(paths: &[impl AsRef<Path>]) -> Result<Self, LoadError> {
        let mut ws = Workspace::new();
        for p in paths {
            let p = p.as_ref();
            let text = std::fs::read_to_string(p).map_err(|e| LoadError {
                file: p.display().to_string(),
                pos: Pos::default(),
                message: e.to_string(),
            })?;
            ws.add_text(&p.display().to_string(), &text)?;
        }
        Ok(ws)
    }

    pub fn parse(file: &str, text: &str) -> Result<Self, LoadError> {
        let mut ws = Workspace::new();
        ws.add_text(file, text)?;
        Ok(ws)
    }

    /// Adds every form of `text`; names must be new.
    pub fn add_text(&mut self, file: &str, text: &str) -> Result<(), LoadError> {
        let cx = Ctx { file };
        let forms = sexp::parse_all(text).map_err(|e| cx.err(e.pos, e.message))?;
        for form in &forms {
            self.add_form(&cx, form)?;
        }
        Ok(())
    }

    fn insert(&mut self, cx: &Ctx, pos: Pos, name: &str, obj: Object) -> Result<(), LoadError> {
        if self.objects.contains_key(name) {
            return Err(cx.err(pos, format!("duplicate name `{name}`")));
        }
        self.order.push(name.to_string());
        self.objects.insert(name.to_string(), obj);
        Ok(())
    }

    fn add_form(&mut self, cx: &Ctx, form: &Sexp) -> Result<(), LoadError> {
        let items = cx.list(form, "a top-level form")?;
        let kind = items
            .first()
            .and_then(Sexp::as_atom)
            .ok_or_else(|| cx.err(form.pos(), "expected a form keyword"))?;
        let name_expr = items
            .get(1)
            .ok_or_else(|| cx.err(form.pos(), format!("`{kind}` needs a name")))?;
        let name = cx.atom(name_expr, "a name")?.to_string();
        let body = &items[2..];
        let obj = match kind {
            "signature" => Object::Signature(self.read_signature(cx, &name, body)?),
            "algebra" => {
                let (sig_name, alg) = self.read_algebra(cx, form.pos(), body)?;
                self.algebra_sigs.insert(name.clone(), sig_name);
                Object::Algebra(alg)
            }
            "generators" => {
                let (sig_name, g) = self.read_generators(cx, form.pos(), body)?;
                self.generator_sigs.insert(name.clone(), sig_name);
                Object::Generators(g)
            }
            "recognizer" => Object::Recognizer(self.read_recognizer(cx, form.pos(), body)?),
            "pool" => Object::Pool(self.read_pool(cx, form.pos(), body)?),
            other => return Err(cx.err(items[0].pos(), format!("unknown form `{other}`"))),
        };
        self.insert(cx, name_expr.pos(), &name, obj)
    }

    fn read_signature(&self, cx: &Ctx, name: &str, body: &[Sexp]) -> Result<Signature, LoadError> {
        let mut b = Signature::builder(name);
        let first = body.first().ok_or_else(|| cx.err(Pos::default(), "signature needs `(sorts ...)`"))?;
        for s in cx.head(first, "sorts")? {
            b = b.sort(cx.atom(s, "a sort name")?);
        }
        for op in &body[1..] {
            let parts = cx.head(op, "op")?;
            if parts.len() != 4 {
                return Err(cx.err(op.pos(), "expected `(op NAME (SORT ...) -> SORT)`"));
            }
            let arity: Vec<&str> = cx
                .list(&parts[1], "an argument sort list")?
                .iter()
                .map(|s| cx.atom(s, "a sort name"))
                .collect::<Result<_, _>>()?;
            cx.arrow(&parts[2])?;
            b = b.op(cx.atom(&parts[0], "an operation name")?, &arity, cx.atom(&parts[3], "a sort name")?);
        }
        b.build().map_err(|e| cx.lib(body[0].pos(), e))
    }

    fn lookup_sig(&self, cx: &Ctx, e: Option<&&Sexp>, pos: Pos) -> Result<(String, Signature), LoadError> {
        let e = e.ok_or_else(|| cx.err(pos, "missing `:signature`"))?;
        let name = cx.atom(e, "a signature name")?;
        match self.objects.get(name) {
            Some(Object::Signature(s)) => Ok((name.to_string(), s.clone())),
            Some(o) => Err(cx.err(e.pos(), format!("`{name}` is a {}, not a signature", o.kind()))),
            None => Err(cx.err(e.pos(), format!("unknown signature `{name}`"))),
        }
    }

    fn read_algebra(&self, cx: &Ctx, pos: Pos, body: &[Sexp]) -> Result<(String, FiniteAlgebra), LoadError> {
        let (keys, rest) = cx.keywords(body)?;
        let (sig_name, sig) = self.lookup_sig(cx, keys.get(":signature"), pos)?;
        let mut carriers: Vec<Option<Vec<String>>> = vec![None; sig.num_sorts()];
        let mut tables: Vec<Option<&Sexp>> = vec![None; sig.ops().len()];
        for part in rest {
            let items = cx.list(part, "`(carrier ...)` or `(table ...)`")?;
            match items.first().and_then(Sexp::as_atom) {
                Some("carrier") => {
                    if items.len() != 3 {
                        return Err(cx.err(part.pos(), "expected `(carrier SORT (ELEM ...))`"));
                    }
                    let sort = cx.atom(&items[1], "a sort name")?;
                    let s = sig
                        .sort_index(sort)
                        .ok_or_else(|| cx.err(items[1].pos(), format!("unknown sort `{sort}`")))?;
                    if carriers[s].is_some() {
                        return Err(cx.err(part.pos(), format!("carrier of `{sort}` given twice")));
                    }
                    let elems = cx
                        .list(&items[2], "an element list")?
                        .iter()
                        .map(|e| cx.atom(e, "an element name").map(str::to_string))
                        .collect::<Result<_, _>>()?;
                    carriers[s] = Some(elems);
                }
                Some("table") => {
                    let op = items.get(1).map(|e| cx.atom(e, "an operation name")).transpose()?;
                    let op = op.ok_or_else(|| cx.err(part.pos(), "table needs an operation"))?;
                    let o = sig
                        .op_index(op)
                        .ok_or_else(|| cx.err(items[1].pos(), format!("unknown operation `{op}`")))?;
                    if tables[o].is_some() {
                        return Err(cx.err(part.pos(), format!("table of `{op}` given twice")));
                    }
                    tables[o] = Some(part);
                }
                _ => return Err(cx.err(part.pos(), "expected `(carrier ...)` or `(table ...)`")),
            }
        }
        let names: Vec<Vec<String>> = carriers
            .into_iter()
            .enumerate()
            .map(|(s, c)| c.ok_or_else(|| cx.err(pos, format!("missing carrier of sort `{}`", sig.sort_name(s)))))
            .collect::<Result<_, _>>()?;
        let carriers = SortedSet::new(sig.sorts().to_vec(), names).map_err(|e| cx.lib(pos, e))?;
        let mut draft = AlgebraDraft {
            sig: sig.clone(),
            carriers: carriers.clone(),
            tables: Vec::new(),
        };
        for (o, table) in tables.iter().enumerate() {
            let decl = sig.op(o);
            let len: usize = decl.arity.iter().map(|&s| carriers.size(s)).product();
            let mut entries = vec![None; len];
            if let Some(form) = table {
                for entry in &form.as_list().expect("checked")[2..] {
                    let parts = cx.list(entry, "`((ARG ...) -> VALUE)`")?;
                    if parts.len() != 3 {
                        return Err(cx.err(entry.pos(), "expected `((ARG ...) -> VALUE)`"));
                    }
                    let args = cx.list(&parts[0], "an argument list")?;
                    if args.len() != decl.arity.len() {
                        return Err(cx.err(
                            parts[0].pos(),
                            format!("`{}` takes {} arguments, found {}", decl.name, decl.arity.len(), args.len()),
                        ));
                    }
                    let mut idx = 0;
                    for (a, &s) in args.iter().zip(&decl.arity) {
                        let name = cx.atom(a, "an element name")?;
                        let x = carriers.element_index(s, name).ok_or_else(|| {
                            cx.err(a.pos(), format!("`{name}` is not in the carrier of `{}`", sig.sort_name(s)))
                        })?;
                        idx = idx * carriers.size(s) + x;
                    }
                    cx.arrow(&parts[1])?;
                    let v = cx.atom(&parts[2], "an element name")?;
                    let y = carriers.element_index(decl.coarity, v).ok_or_else(|| {
                        cx.err(
                            parts[2].pos(),
                            format!("`{v}` is not in the carrier of `{}`", sig.sort_name(decl.coarity)),
                        )
                    })?;
                    if entries[idx].replace(y).is_some() {
                        return Err(cx.err(entry.pos(), "table entry given twice"));
                    }
                }
            }
            draft.tables.push(entries);
        }
        let alg = FiniteAlgebra::from_draft(&draft).map_err(|e| cx.lib(pos, e))?;
        Ok((sig_name, alg))
    }

    fn read_generators(&self, cx: &Ctx, pos: Pos, body: &[Sexp]) -> Result<(String, GeneratorSet), LoadError> {
        let (keys, rest) = cx.keywords(body)?;
        let (sig_name, sig) = self.lookup_sig(cx, keys.get(":signature"), pos)?;
        let mut vars = Vec::new();
        for v in rest {
            let parts = cx.head(v, "var")?;
            if parts.len() != 2 {
                return Err(cx.err(v.pos(), "expected `(var NAME SORT)`"));
            }
            vars.push((cx.atom(&parts[0], "a variable")?, cx.atom(&parts[1], "a sort name")?));
        }
        let g = GeneratorSet::new(&sig, &vars).map_err(|e| cx.lib(pos, e))?;
        Ok((sig_name, g))
    }

    fn read_recognizer(&self, cx: &Ctx, pos: Pos, body: &[Sexp]) -> Result<Recognizer, LoadError> {
        let (keys, rest) = cx.keywords(body)?;
        let alg_expr = keys.get(":algebra").ok_or_else(|| cx.err(pos, "missing `:algebra`"))?;
        let gens_expr = keys.get(":generators").ok_or_else(|| cx.err(pos, "missing `:generators`"))?;
        let alg_name = cx.atom(alg_expr, "an algebra name")?;
        let alg = match self.objects.get(alg_name) {
            Some(Object::Algebra(a)) => a.clone(),
            _ => return Err(cx.err(alg_expr.pos(), format!("unknown algebra `{alg_name}`"))),
        };
        let gens_name = cx.atom(gens_expr, "a generator set name")?;
        let gens = match self.objects.get(gens_name) {
            Some(Object::Generators(g)) => g.clone(),
            _ => return Err(cx.err(gens_expr.pos(), format!("unknown generator set `{gens_name}`"))),
        };
        if self.generator_sigs.get(gens_name) != self.algebra_sigs.get(alg_name) {
            return Err(cx.err(pos, "algebra and generators use different signatures"));
        }
        let set = gens.as_sorted_set();
        let carriers = alg.carriers();
        let mut images: Vec<Vec<Option<usize>>> = (0..set.num_sorts()).map(|s| vec![None; set.size(s)]).collect();
        let mut accept = vec![BTreeSet::new(); carriers.num_sorts()];
        for part in rest {
            let items = cx.list(part, "`(assign ...)` or `(accept ...)`")?;
            match items.first().and_then(Sexp::as_atom) {
                Some("assign") => {
                    if items.len() != 4 {
                        return Err(cx.err(part.pos(), "expected `(assign VAR -> ELEM)`"));
                    }
                    let var = cx.atom(&items[1], "a variable")?;
                    let (s, i) = (0..set.num_sorts())
                        .find_map(|s| set.element_index(s, var).map(|i| (s, i)))
                        .ok_or_else(|| cx.err(items[1].pos(), format!("unknown variable `{var}`")))?;
                    cx.arrow(&items[2])?;
                    let v = cx.atom(&items[3], "an element name")?;
                    let x = carriers.element_index(s, v).ok_or_else(|| {
                        cx.err(items[3].pos(), format!("`{v}` is not in the carrier of `{}`", carriers.sorts()[s]))
                    })?;
                    if images[s][i].replace(x).is_some() {
                        return Err(cx.err(part.pos(), format!("`{var}` assigned twice")));
                    }
                }
                Some("accept") => {
                    if items.len() != 3 {
                        return Err(cx.err(part.pos(), "expected `(accept SORT (ELEM ...))`"));
                    }
                    let sort = cx.atom(&items[1], "a sort name")?;
                    let s = carriers
                        .sort_index(sort)
                        .ok_or_else(|| cx.err(items[1].pos(), format!("unknown sort `{sort}`")))?;
                    for e in cx.list(&items[2], "an element list")? {
                        let v = cx.atom(e, "an element name")?;
                        let x = carriers
                            .element_index(s, v)
                            .ok_or_else(|| cx.err(e.pos(), format!("`{v}` is not in the carrier of `{sort}`")))?;
                        accept[s].insert(x);
                    }
                }
                _ => return Err(cx.err(part.pos(), "expected `(assign ...)` or `(accept ...)`")),
            }
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(s, imgs)| {
                imgs.into_iter()
                    .enumerate()
                    .map(|(i, x)| x.ok_or_else(|| cx.err(pos, format!("`{}` is not assigned", set.element_name(s, i)))))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Recognizer::from_parts(&gens, &alg, images, accept).map_err(|e| cx.lib(pos, e))
    }

    fn read_pool(&self, cx: &Ctx, pos: Pos, body: &[Sexp]) -> Result<PoolSpec, LoadError> {
        let (keys, rest) = cx.keywords(body)?;
        let bound_expr = keys.get(":bound").ok_or_else(|| cx.err(pos, "missing `:bound`"))?;
        let bound: usize = cx
            .atom(bound_expr, "a bound")?
            .parse()
            .map_err(|_| cx.err(bound_expr.pos(), "the bound must be a natural number"))?;
        let signature = match keys.get(":signature") {
            Some(e) => Some(self.lookup_sig(cx, Some(e), pos)?.0),
            None => None,
        };
        let mut algebras = Vec::new();
        for part in rest {
            for a in cx.head(part, "algebras")? {
                let name = cx.atom(a, "an algebra name")?;
                match self.objects.get(name) {
                    Some(Object::Algebra(alg)) => {
                        if alg.total_size() > bound {
                            return Err(cx.err(a.pos(), format!("`{name}` exceeds the pool bound {bound}")));
                        }
                    }
                    _ => return Err(cx.err(a.pos(), format!("unknown algebra `{name}`"))),
                }
                algebras.push(name.to_string());
            }
        }
        let sigs: BTreeSet<&String> = algebras
            .iter()
            .map(|a| &self.algebra_sigs[a])
            .chain(signature.as_ref())
            .collect();
        if sigs.len() > 1 {
            return Err(cx.err(pos, "pool members use different signatures"));
        }
        Ok(PoolSpec {
            bound,
            signature,
            algebras,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.order
    }

    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.get(name)
    }

    pub fn signature(&self, name: &str) -> Option<&Signature> {
        match self.objects.get(name) {
            Some(Object::Signature(s)) => Some(s),
            _ => None,
        }
    }

    pub fn algebra(&self, name: &str) -> Option<&FiniteAlgebra> {
        match self.objects.get(name) {
            Some(Object::Algebra(a)) => Some(a),
            _ => None,
        }
    }

    pub fn generators(&self, name: &str) -> Option<&GeneratorSet> {
        match self.objects.get(name) {
            Some(Object::Generators(g)) => Some(g),
            _ => None,
        }
    }

    pub fn recognizer(&self, name: &str) -> Option<&Recognizer> {
        match self.objects.get(name) {
            Some(Object::Recognizer(r)) => Some(r),
            _ => None,
        }
    }

    pub fn pool(&self, name: &str) -> Option<&PoolSpec> {
        match self.objects.get(name) {
            Some(Object::Pool(p)) => Some(p),
            _ => None,
        }
    }

    /// Name of the signature an algebra or generator set was declared over.
    pub fn signature_of(&self, name: &str) -> Option<&str> {
        self.algebra_sigs
            .get(name)
            .or_else(|| self.generator_sigs.get(name))
            .map(String::as_str)
    }

    /// Per-kind object counts.
    pub fn counts(&self) -> BTreeMap<&'static str, usize> {
        let mut out = BTreeMap::new();
        for o in self.objects.values() {
            *out.entry(o.kind()).or_insert(0) += 1;
        }
        out
    }
}

fn atom_ok(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || c == '(' || c == ')' || c == ';')
}

/// Element names that cannot be written as atoms are replaced by indices.
fn printable(alg: &FiniteAlgebra) -> FiniteAlgebra {
    let c = alg.carriers();
    let ok = (0..c.num_sorts()).all(|s| c.carrier(s).iter().all(|e| atom_ok(e)));
    if ok {
        return alg.clone();
    }
    alg.with_carrier_names(&SortedSet::from_sizes(c.sorts().to_vec(), &c.sizes()))
        .expect("same shape")
}

pub fn print_signature(name: &str, sig: &Signature) -> String {
    let mut out = format!("(signature {name} (sorts {})", sig.sorts().iter().join(" "));
    for decl in sig.ops() {
        let arity = decl.arity.iter().map(|&s| sig.sort_name(s)).join(" ");
        write!(out, "\n  (op {} ({arity}) -> {})", decl.name, sig.sort_name(decl.coarity)).unwrap();
    }
    out.push(')');
    out
}

/// Writes an algebra in the workspace format. Names that are not valid
/// atoms are replaced by element indices.
pub fn print_algebra(name: &str, sig_name: &str, alg: &FiniteAlgebra) -> String {
    let alg = printable(alg);
    let sig = alg.sig();
    let c = alg.carriers();
    let mut out = format!("(algebra {name} :signature {sig_name}");
    for s in 0..c.num_sorts() {
        write!(out, "\n  (carrier {} ({}))", sig.sort_name(s), c.carrier(s).join(" ")).unwrap();
    }
    for (o, decl) in sig.ops().iter().enumerate() {
        write!(out, "\n  (table {}", decl.name).unwrap();
        alg.for_each_entry(o, |args, v| {
            let a = args.iter().zip(&decl.arity).map(|(&x, &s)| c.element_name(s, x)).join(" ");
            write!(out, " (({a}) -> {})", c.element_name(decl.coarity, v)).unwrap();
        });
        out.push(')');
    }
    out.push(')');
    out
}

pub fn print_generators(name: &str, sig_name: &str, g: &GeneratorSet) -> String {
    let mut out = format!("(generators {name} :signature {sig_name}");
    for (s, i) in g.vars() {
        write!(out, " (var {} {})", g.var_name(s, i), g.sorts()[s]).unwrap();
    }
    out.push(')');
    out
}

/// Writes a recognizer that refers to already written algebra and
/// generator forms.
pub fn print_recognizer(name: &str, alg_name: &str, gens_name: &str, r: &Recognizer) -> String {
    let alg = printable(r.algebra());
    let c = alg.carriers();
    let g = r.generators();
    let mut out = format!("(recognizer {name} :algebra {alg_name} :generators {gens_name}");
    for (s, i) in g.vars() {
        write!(out, "\n  (assign {} -> {})", g.var_name(s, i), c.element_name(s, r.assign().apply(s, i))).unwrap();
    }
    for s in 0..c.num_sorts() {
        let acc = r.accept().members(s).iter().map(|&x| c.element_name(s, x)).join(" ");
        write!(out, "\n  (accept {} ({acc}))", c.sorts()[s]).unwrap();
    }
    out.push(')');
    out
}

pub fn print_pool(name: &str, spec: &PoolSpec) -> String {
    let sig = spec.signature.as_ref().map(|s| format!(" :signature {s}")).unwrap_or_default();
    format!("(pool {name} :bound {}{sig} (algebras {}))", spec.bound, spec.algebras.join(" "))
}
