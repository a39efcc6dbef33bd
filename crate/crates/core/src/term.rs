//! Terms of the free algebra `T_Σ(X)` over a finite generator set.
//!
//! Terms are trees. The concrete syntax is fully parenthesized prefix
//! notation: `term := '(' IDENT term* ')'`, where a leaf `(x)` is a variable
//! exactly when `x` is declared in the generator set and a nullary
//! operation otherwise.

use std::fmt;

use crate::algebra::{FiniteAlgebra, Homomorphism};
use crate::error::{Error, Result};
use crate::sexp::{self, Pos, Sexp};
use crate::signature::Signature;
use crate::sorted::{SortId, SortedMap, SortedSet};

/// A finite set of variables, one carrier per sort of the signature.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSet(SortedSet);

impl GeneratorSet {
    pub fn new(sig: &Signature, vars: &[(&str, &str)]) -> Result<Self> {
        let mut carriers = vec![Vec::new(); sig.num_sorts()];
        for (name, sort) in vars {
            let s = sig
                .sort_index(sort)
                .ok_or_else(|| Error::SortMismatch(format!("undeclared sort `{sort}`")))?;
            carriers[s].push(name.to_string());
        }
        Ok(GeneratorSet(SortedSet::new(sig.sorts().to_vec(), carriers)?))
    }

    pub fn from_sorted_set(sig: &Signature, set: SortedSet) -> Result<Self> {
        if set.sorts() != sig.sorts() {
            return Err(Error::SortMismatch(
                "generator sorts differ from the signature".into(),
            ));
        }
        Ok(GeneratorSet(set))
    }

    /// No generators at all.
    pub fn empty(sig: &Signature) -> Self {
        GeneratorSet(sig.empty_set())
    }

    pub fn as_sorted_set(&self) -> &SortedSet {
        &self.0
    }

    pub fn sorts(&self) -> &[SortId] {
        self.0.sorts()
    }

    pub fn var_name(&self, sort: usize, index: usize) -> &str {
        self.0.element_name(sort, index)
    }

    /// All `(sort, index)` pairs in canonical order.
    pub fn vars(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.0.num_sorts()).flat_map(move |s| (0..self.0.size(s)).map(move |i| (s, i)))
    }

    pub fn len(&self) -> usize {
        self.0.total_size()
    }

    pub fn is_empty(&self) -> bool {
        self.0.total_size() == 0
    }

    /// Adds one fresh variable; returns the extended set and its index.
    pub fn with_var(&self, name: &str, sort: usize) -> Result<(GeneratorSet, usize)> {
        let mut carriers: Vec<Vec<String>> = (0..self.0.num_sorts())
            .map(|s| self.0.carrier(s).to_vec())
            .collect();
        let index = carriers[sort].len();
        carriers[sort].push(name.to_string());
        Ok((
            GeneratorSet(SortedSet::new(self.0.sorts().to_vec(), carriers)?),
            index,
        ))
    }
}

/// A term: a variable leaf or an operation applied to argument terms
/// (nullary operations have no arguments).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var { sort: usize, index: usize },
    App { op: usize, args: Vec<Term> },
}

/// The three mutually exclusive ways a term can be built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermShape<'a> {
    Variable { sort: usize, index: usize },
    Constant { op: usize },
    Composite { op: usize, args: &'a [Term] },
}

impl Term {
    pub fn var(sort: usize, index: usize) -> Term {
        Term::Var { sort, index }
    }

    pub fn app(op: usize, args: Vec<Term>) -> Term {
        Term::App { op, args }
    }

    pub fn shape(&self) -> TermShape<'_> {
        match self {
            Term::Var { sort, index } => TermShape::Variable {
                sort: *sort,
                index: *index,
            },
            Term::App { op, args } if args.is_empty() => TermShape::Constant { op: *op },
            Term::App { op, args } => TermShape::Composite { op: *op, args },
        }
    }

    pub fn sort(&self, sig: &Signature) -> usize {
        match self {
            Term::Var { sort, .. } => *sort,
            Term::App { op, .. } => sig.op(*op).coarity,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var { .. } => 1,
            Term::App { args, .. } => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var { .. } => 1,
            Term::App { args, .. } => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    /// Checks well-sortedness over `(sig, gens)` and returns the term's sort.
    pub fn check(&self, sig: &Signature, gens: &GeneratorSet) -> Result<usize> {
        match self {
            Term::Var { sort, index } => {
                if *sort >= gens.0.num_sorts() || *index >= gens.0.size(*sort) {
                    return Err(Error::SortMismatch("unknown variable".into()));
                }
                Ok(*sort)
            }
            Term::App { op, args } => {
                let decl = sig
                    .ops()
                    .get(*op)
                    .ok_or_else(|| Error::SortMismatch("unknown operation".into()))?;
                if decl.arity.len() != args.len() {
                    return Err(Error::SortMismatch(format!(
                        "`{}` expects {} arguments, got {}",
                        decl.name,
                        decl.arity.len(),
                        args.len()
                    )));
                }
                for (i, (a, &want)) in args.iter().zip(&decl.arity).enumerate() {
                    let got = a.check(sig, gens)?;
                    if got != want {
                        return Err(Error::SortMismatch(format!(
                            "argument {i} of `{}` has sort `{}`, expected `{}`",
                            decl.name,
                            sig.sort_name(got),
                            sig.sort_name(want)
                        )));
                    }
                }
                Ok(decl.coarity)
            }
        }
    }

    /// Number of occurrences of the variable `(sort, index)`.
    pub fn occurrences(&self, sort: usize, index: usize) -> usize {
        match self {
            Term::Var { sort: s, index: i } => usize::from(*s == sort && *i == index),
            Term::App { args, .. } => args.iter().map(|a| a.occurrences(sort, index)).sum(),
        }
    }

    /// Renders the term in the canonical concrete syntax.
    pub fn display<'a>(&'a self, sig: &'a Signature, gens: &'a GeneratorSet) -> DisplayTerm<'a> {
        DisplayTerm {
            term: self,
            sig,
            gens,
        }
    }
}

pub struct DisplayTerm<'a> {
    term: &'a Term,
    sig: &'a Signature,
    gens: &'a GeneratorSet,
}

impl fmt::Display for DisplayTerm<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.term {
            Term::Var { sort, index } => write!(f, "({})", self.gens.var_name(*sort, *index)),
            Term::App { op, args } => {
                write!(f, "({}", self.sig.op(*op).name)?;
                for a in args {
                    write!(f, " {}", a.display(self.sig, self.gens))?;
                }
                write!(f, ")")
            }
        }
    }
}

pub fn print_term(t: &Term, sig: &Signature, gens: &GeneratorSet) -> String {
    t.display(sig, gens).to_string()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical(String),
    Syntax(String),
    UnknownSymbol(String),
    AmbiguousVariable(String),
    ArityMismatch {
        op: String,
        expected: usize,
        found: usize,
    },
    SortMismatch {
        found: String,
        expected: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {}", describe(.kind))]
pub struct ParseError {
    pub pos: Pos,
    pub kind: ParseErrorKind,
}

fn describe(kind: &ParseErrorKind) -> String {
    match kind {
        ParseErrorKind::Lexical(m) => format!("lexical error: {m}"),
        ParseErrorKind::Syntax(m) => format!("syntax error: {m}"),
        ParseErrorKind::UnknownSymbol(s) => format!("unknown symbol `{s}`"),
        ParseErrorKind::AmbiguousVariable(s) => {
            format!("variable `{s}` is declared at several sorts")
        }
        ParseErrorKind::ArityMismatch {
            op,
            expected,
            found,
        } => format!("`{op}` expects {expected} arguments, found {found}"),
        ParseErrorKind::SortMismatch { found, expected } => {
            format!("sort mismatch: found `{found}`, expected `{expected}`")
        }
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'' || c == '-')
}

/// Parses a term in the canonical syntax.
pub fn parse_term(text: &str, sig: &Signature, gens: &GeneratorSet) -> Result<Term, ParseError> {
    let expr = sexp::parse_one(text).map_err(|e| ParseError {
        pos: e.pos,
        kind: ParseErrorKind::Syntax(e.message),
    })?;
    from_sexp(&expr, sig, gens, None)
}

/// Parses a term and requires it to have the given sort.
pub fn parse_term_at(
    text: &str,
    sig: &Signature,
    gens: &GeneratorSet,
    sort: usize,
) -> Result<Term, ParseError> {
    let expr = sexp::parse_one(text).map_err(|e| ParseError {
        pos: e.pos,
        kind: ParseErrorKind::Syntax(e.message),
    })?;
    from_sexp(&expr, sig, gens, Some(sort))
}

pub(crate) fn from_sexp(
    expr: &Sexp,
    sig: &Signature,
    gens: &GeneratorSet,
    expected: Option<usize>,
) -> Result<Term, ParseError> {
    let err = |pos, kind| Err(ParseError { pos, kind });
    let items = match expr {
        Sexp::Atom(a, pos) => {
            return err(
                *pos,
                ParseErrorKind::Syntax(format!("expected `(`, found `{a}`")),
            )
        }
        Sexp::List(items, _) => items,
    };
    let head = match items.first() {
        Some(Sexp::Atom(name, pos)) => {
            if !is_ident(name) {
                return err(*pos, ParseErrorKind::Lexical(format!("bad identifier `{name}`")));
            }
            (name.as_str(), *pos)
        }
        Some(Sexp::List(_, pos)) => {
            return err(
                *pos,
                ParseErrorKind::Syntax("expected an identifier after `(`".into()),
            )
        }
        None => {
            return err(
                expr.pos(),
                ParseErrorKind::Syntax("empty application `()`".into()),
            )
        }
    };
    let (name, pos) = head;
    let check_sort = |got: usize| -> Result<(), ParseError> {
        match expected {
            Some(want) if want != got => Err(ParseError {
                pos,
                kind: ParseErrorKind::SortMismatch {
                    found: sig.sort_name(got).to_string(),
                    expected: sig.sort_name(want).to_string(),
                },
            }),
            _ => Ok(()),
        }
    };

    if items.len() == 1 {
        let set = gens.as_sorted_set();
        let candidates: Vec<(usize, usize)> = (0..set.num_sorts())
            .filter_map(|s| set.element_index(s, name).map(|i| (s, i)))
            .collect();
        let chosen = match (candidates.len(), expected) {
            (0, _) => None,
            (1, _) => Some(candidates[0]),
            (_, Some(want)) => candidates.iter().copied().find(|(s, _)| *s == want),
            (_, None) => {
                return err(pos, ParseErrorKind::AmbiguousVariable(name.to_string()));
            }
        };
        if let Some((sort, index)) = chosen {
            check_sort(sort)?;
            return Ok(Term::Var { sort, index });
        }
    }

    let Some(op) = sig.op_index(name) else {
        return err(pos, ParseErrorKind::UnknownSymbol(name.to_string()));
    };
    let decl = sig.op(op);
    let args_src = &items[1..];
    if args_src.len() != decl.arity.len() {
        return err(
            pos,
            ParseErrorKind::ArityMismatch {
                op: decl.name.clone(),
                expected: decl.arity.len(),
                found: args_src.len(),
            },
        );
    }
    check_sort(decl.coarity)?;
    let args = args_src
        .iter()
        .zip(&decl.arity)
        .map(|(a, &want)| from_sexp(a, sig, gens, Some(want)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Term::App { op, args })
}

/// Evaluates `t` in `alg` under the generator assignment `assign`
/// (the unique homomorphic extension of `assign`, applied to `t`).
///
/// Uses an explicit stack, so term depth is not limited by the call stack.
pub fn evaluate(t: &Term, alg: &FiniteAlgebra, assign: &SortedMap) -> usize {
    enum Frame<'a> {
        Visit(&'a Term),
        Apply(usize, usize),
    }
    let mut work = vec![Frame::Visit(t)];
    let mut values: Vec<usize> = Vec::new();
    while let Some(frame) = work.pop() {
        match frame {
            Frame::Visit(Term::Var { sort, index }) => values.push(assign.apply(*sort, *index)),
            Frame::Visit(Term::App { op, args }) => {
                work.push(Frame::Apply(*op, args.len()));
                for a in args.iter().rev() {
                    work.push(Frame::Visit(a));
                }
            }
            Frame::Apply(op, n) => {
                let start = values.len() - n;
                let v = alg.apply(op, &values[start..]);
                values.truncate(start);
                values.push(v);
            }
        }
    }
    values.pop().expect("evaluation leaves one value")
}

/// All terms of depth at most `depth`, grouped by sort, in order of depth
/// then term order; at most `cap` terms per sort. Variables and constants
/// have depth 1.
pub fn terms_up_to_depth(sig: &Signature, gens: &GeneratorSet, depth: usize, cap: usize) -> Vec<Vec<Term>> {
    let mut by_sort: Vec<Vec<Term>> = vec![Vec::new(); sig.num_sorts()];
    let mut seen: std::collections::BTreeSet<Term> = std::collections::BTreeSet::new();
    for level in 1..=depth {
        let mut fresh: Vec<std::collections::BTreeSet<Term>> = vec![Default::default(); sig.num_sorts()];
        if level == 1 {
            for (s, i) in gens.vars() {
                fresh[s].insert(Term::var(s, i));
            }
        }
        for (op, decl) in sig.ops().iter().enumerate() {
            if decl.is_nullary() {
                if level == 1 {
                    fresh[decl.coarity].insert(Term::app(op, vec![]));
                }
                continue;
            }
            if level == 1 {
                continue;
            }
            let pools: Vec<&Vec<Term>> = decl.arity.iter().map(|&s| &by_sort[s]).collect();
            if pools.iter().any(|p| p.is_empty()) {
                continue;
            }
            let mut idx = vec![0usize; pools.len()];
            'outer: loop {
                if fresh[decl.coarity].len() + by_sort[decl.coarity].len() >= cap {
                    break;
                }
                let args: Vec<Term> = idx.iter().zip(&pools).map(|(&i, p)| p[i].clone()).collect();
                // only terms reaching exactly this depth are new
                if args.iter().any(|a| a.depth() == level - 1) {
                    fresh[decl.coarity].insert(Term::app(op, args));
                }
                for k in (0..idx.len()).rev() {
                    idx[k] += 1;
                    if idx[k] < pools[k].len() {
                        continue 'outer;
                    }
                    idx[k] = 0;
                }
                break;
            }
        }
        for (s, f) in fresh.into_iter().enumerate() {
            for t in f {
                if by_sort[s].len() < cap && seen.insert(t.clone()) {
                    by_sort[s].push(t);
                }
            }
        }
    }
    by_sort
}

/// A sorted map from the variables of `source` to terms over `target`;
/// its homomorphic extension `T_Σ(source) → T_Σ(target)` is substitution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    sig: Signature,
    source: GeneratorSet,
    target: GeneratorSet,
    images: Vec<Vec<Term>>,
}

impl Substitution {
    pub fn new(
        sig: &Signature,
        source: &GeneratorSet,
        target: &GeneratorSet,
        images: Vec<Vec<Term>>,
    ) -> Result<Self> {
        let set = source.as_sorted_set();
        if images.len() != set.num_sorts() {
            return Err(Error::SortMismatch("substitution sorts".into()));
        }
        for (s, imgs) in images.iter().enumerate() {
            if imgs.len() != set.size(s) {
                return Err(Error::SortMismatch(format!(
                    "substitution is not total at sort `{}`",
                    sig.sort_name(s)
                )));
            }
            for (i, t) in imgs.iter().enumerate() {
                let got = t.check(sig, target)?;
                if got != s {
                    return Err(Error::SortMismatch(format!(
                        "variable `{}` of sort `{}` mapped to a term of sort `{}`",
                        set.element_name(s, i),
                        sig.sort_name(s),
                        sig.sort_name(got)
                    )));
                }
            }
        }
        Ok(Substitution {
            sig: sig.clone(),
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    /// Builds a substitution from `(variable, term text)` pairs; variables not
    /// listed map to themselves when `source == target`.
    pub fn parse(
        sig: &Signature,
        source: &GeneratorSet,
        target: &GeneratorSet,
        pairs: &[(&str, &str)],
    ) -> Result<Self> {
        let set = source.as_sorted_set();
        let mut images: Vec<Vec<Option<Term>>> = (0..set.num_sorts())
            .map(|s| vec![None; set.size(s)])
            .collect();
        for (var, text) in pairs {
            let (s, i) = (0..set.num_sorts())
                .find_map(|s| set.element_index(s, var).map(|i| (s, i)))
                .ok_or_else(|| Error::GeneratorMismatch(format!("unknown variable `{var}`")))?;
            images[s][i] = Some(parse_term_at(text, sig, target, s)?);
        }
        let same = source == target;
        let images = images
            .into_iter()
            .enumerate()
            .map(|(s, imgs)| {
                imgs.into_iter()
                    .enumerate()
                    .map(|(i, t)| match t {
                        Some(t) => Ok(t),
                        None if same => Ok(Term::var(s, i)),
                        None => Err(Error::GeneratorMismatch(format!(
                            "no image for variable `{}`",
                            set.element_name(s, i)
                        ))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(sig, source, target, images)
    }

    /// The generator injection, whose extension is the identity.
    pub fn identity(sig: &Signature, gens: &GeneratorSet) -> Self {
        let set = gens.as_sorted_set();
        Substitution {
            sig: sig.clone(),
            source: gens.clone(),
            target: gens.clone(),
            images: (0..set.num_sorts())
                .map(|s| (0..set.size(s)).map(|i| Term::var(s, i)).collect())
                .collect(),
        }
    }

    pub fn source(&self) -> &GeneratorSet {
        &self.source
    }

    pub fn target(&self) -> &GeneratorSet {
        &self.target
    }

    pub fn image(&self, sort: usize, index: usize) -> &Term {
        &self.images[sort][index]
    }

    pub fn apply(&self, t: &Term) -> Term {
        match t {
            Term::Var { sort, index } => self.images[*sort][*index].clone(),
            Term::App { op, args } => Term::App {
                op: *op,
                args: args.iter().map(|a| self.apply(a)).collect(),
            },
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Substitution) -> Result<Substitution> {
        if self.target != other.source {
            return Err(Error::GeneratorMismatch(
                "substitutions do not compose".into(),
            ));
        }
        Ok(Substitution {
            sig: self.sig.clone(),
            source: self.source.clone(),
            target: other.target.clone(),
            images: self
                .images
                .iter()
                .map(|imgs| imgs.iter().map(|t| other.apply(t)).collect())
                .collect(),
        })
    }

    /// The generator assignment `x ↦ evaluate(self(x))` in `alg`.
    pub fn evaluate_into(&self, alg: &FiniteAlgebra, assign: &SortedMap) -> SortedMap {
        let images = self
            .images
            .iter()
            .map(|imgs| imgs.iter().map(|t| evaluate(t, alg, assign)).collect())
            .collect();
        SortedMap::new(self.source.as_sorted_set(), alg.carriers(), images)
            .expect("evaluation lands in the carriers")
    }
}

/// Lifts a generator assignment `g: X → C` through a surjective
/// homomorphism `f: B → C`, choosing for every generator the least
/// preimage in carrier order. The result `h` satisfies `f ∘ h = g`.
pub fn lift_through_epi(f: &Homomorphism, g: &SortedMap) -> Result<SortedMap> {
    let target = f.target().carriers();
    if g.codomain() != target {
        return Err(Error::AmbientMismatch(
            "assignment does not land in the codomain of the homomorphism".into(),
        ));
    }
    let images = g
        .images()
        .iter()
        .enumerate()
        .map(|(s, img)| {
            img.iter()
                .map(|&c| {
                    f.map()
                        .images()[s]
                        .iter()
                        .position(|&y| y == c)
                        .ok_or_else(|| Error::NoPreimage {
                            sort: target.sorts()[s].to_string(),
                            element: target.element_name(s, c).to_string(),
                        })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SortedMap::new(g.domain(), f.source().carriers(), images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parse_examples() {
        let sig = fixtures::sig1();
        let none = GeneratorSet::empty(&sig);
        let c = parse_term("(c)", &sig, &none).unwrap();
        assert!(matches!(c.shape(), TermShape::Constant { .. }));
        assert_eq!(c.sort(&sig), 0);
        let t = parse_term("(f (f (c)))", &sig, &none).unwrap();
        assert_eq!(t.depth(), 3);
        let gens = GeneratorSet::new(&sig, &[("x", "s")]).unwrap();
        let t = parse_term("(f (x))", &sig, &gens).unwrap();
        assert_eq!(t.occurrences(0, 0), 1);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let sig = fixtures::sig1();
        let gens = GeneratorSet::new(&sig, &[("x", "s")]).unwrap();
        let e = parse_term("(f (y))", &sig, &gens).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownSymbol("y".into()));
        assert_eq!(e.pos.col, 5);
        let e = parse_term("(f (c) (c))", &sig, &gens).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::ArityMismatch { expected: 1, found: 2, .. }));
        let e = parse_term("(f 9x)", &sig, &gens).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        let e = parse_term("(9x)", &sig, &gens).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Lexical(_)));

        let sig2 = fixtures::sig2();
        let g2 = GeneratorSet::new(&sig2, &[("v", "e")]).unwrap();
        let e = parse_term("(g (tt))", &sig2, &g2).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::SortMismatch { .. }));
    }

    #[test]
    fn printing_is_canonical() {
        let sig = fixtures::sig1();
        let gens = GeneratorSet::new(&sig, &[("x", "s")]).unwrap();
        let t = parse_term("(f\n  (f\t(x) ) )", &sig, &gens).unwrap();
        assert_eq!(print_term(&t, &sig, &gens), "(f (f (x)))");
    }

    #[test]
    fn evaluate_examples() {
        let sig = fixtures::sig1();
        let cyc2 = fixtures::cyc2();
        let none = GeneratorSet::empty(&sig);
        let empty_assign = SortedMap::new(none.as_sorted_set(), cyc2.carriers(), vec![vec![]]).unwrap();
        let t = parse_term("(c)", &sig, &none).unwrap();
        assert_eq!(evaluate(&t, &cyc2, &empty_assign), 0);
        let t = parse_term("(f (f (c)))", &sig, &none).unwrap();
        assert_eq!(evaluate(&t, &cyc2, &empty_assign), 0);

        let gens = GeneratorSet::new(&sig, &[("x", "s")]).unwrap();
        let assign = SortedMap::new(gens.as_sorted_set(), cyc2.carriers(), vec![vec![1]]).unwrap();
        let t = parse_term("(f (x))", &sig, &gens).unwrap();
        assert_eq!(evaluate(&t, &cyc2, &assign), 0);
    }

    #[test]
    fn deep_terms_evaluate_without_recursion() {
        let sig = fixtures::sig1();
        let cyc2 = fixtures::cyc2();
        let none = GeneratorSet::empty(&sig);
        let assign = SortedMap::new(none.as_sorted_set(), cyc2.carriers(), vec![vec![]]).unwrap();
        let mut t = Term::app(0, vec![]);
        for _ in 0..100_001 {
            t = Term::app(1, vec![t]);
        }
        assert_eq!(evaluate(&t, &cyc2, &assign), 1);
        // iterative drop
        let mut cur = t;
        while let Term::App { mut args, .. } = cur {
            match args.pop() {
                Some(next) => cur = next,
                None => break,
            }
        }
    }

    #[test]
    fn substitution_examples() {
        let sig = fixtures::sig1();
        let gens = GeneratorSet::new(&sig, &[("x", "s")]).unwrap();
        let t = parse_term("(f (x))", &sig, &gens).unwrap();

        let none = GeneratorSet::empty(&sig);
        let to_c = Substitution::parse(&sig, &gens, &none, &[("x", "(c)")]).unwrap();
        assert_eq!(print_term(&to_c.apply(&t), &sig, &none), "(f (c))");

        let grow = Substitution::parse(&sig, &gens, &gens, &[("x", "(f (x))")]).unwrap();
        assert_eq!(print_term(&grow.apply(&t), &sig, &gens), "(f (f (x)))");

        let ys = GeneratorSet::new(&sig, &[("y", "s")]).unwrap();
        let rename = Substitution::parse(&sig, &gens, &ys, &[("x", "(y)")]).unwrap();
        let r = rename.apply(&t);
        assert_eq!(r.size(), t.size());
        assert_eq!(print_term(&r, &sig, &ys), "(f (y))");

        assert_eq!(Substitution::identity(&sig, &gens).apply(&t), t);
    }

    #[test]
    fn substitution_sort_errors() {
        let sig = fixtures::sig2();
        let gens = GeneratorSet::new(&sig, &[("v", "e")]).unwrap();
        assert!(Substitution::parse(&sig, &gens, &gens, &[("v", "(tt)")]).is_err());
    }

    #[test]
    fn lift_examples() {
        let cyc4 = fixtures::cyc4();
        let cyc2 = fixtures::cyc2();
        let sig = fixtures::sig1();
        let gens = GeneratorSet::new(&sig, &[("x", "s")]).unwrap();
        let id = Homomorphism::identity(&cyc2);
        let g = SortedMap::new(gens.as_sorted_set(), cyc2.carriers(), vec![vec![1]]).unwrap();
        assert_eq!(lift_through_epi(&id, &g).unwrap(), g);

        let collapse = Homomorphism::new(&cyc4, &cyc2, vec![vec![0, 1, 0, 1]]).unwrap();
        let h = lift_through_epi(&collapse, &g).unwrap();
        assert_eq!(h.apply(0, 0), 1);

        // ID3 → ID3 collapsing everything onto the constant misses 2
        let id3 = fixtures::id3();
        let fix0 = Homomorphism::new(&id3, &id3, vec![vec![0, 0, 0]]).unwrap();
        let g = SortedMap::new(gens.as_sorted_set(), id3.carriers(), vec![vec![2]]).unwrap();
        assert!(matches!(lift_through_epi(&fix0, &g), Err(Error::NoPreimage { .. })));
    }
}
