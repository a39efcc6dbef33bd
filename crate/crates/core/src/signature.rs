use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sorted::{SortId, SortedSet, Support};

/// An operation symbol `σ: w → s`, with sorts given as indices into the
/// signature's sort list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpDecl {
    pub name: String,
    pub arity: Vec<usize>,
    pub coarity: usize,
}

impl OpDecl {
    pub fn is_nullary(&self) -> bool {
        self.arity.is_empty()
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct SignatureData {
    name: String,
    sorts: Vec<SortId>,
    ops: Vec<OpDecl>,
}

/// A many-sorted signature. Cheap to clone; equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature(Arc<SignatureData>);

impl Signature {
    pub fn builder(name: impl Into<String>) -> SignatureBuilder {
        SignatureBuilder {
            name: name.into(),
            sorts: Vec::new(),
            ops: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn sorts(&self) -> &[SortId] {
        &self.0.sorts
    }

    pub fn num_sorts(&self) -> usize {
        self.0.sorts.len()
    }

    pub fn sort_index(&self, name: &str) -> Option<usize> {
        self.0.sorts.iter().position(|s| s.as_str() == name)
    }

    pub fn sort_name(&self, sort: usize) -> &str {
        self.0.sorts[sort].as_str()
    }

    pub fn ops(&self) -> &[OpDecl] {
        &self.0.ops
    }

    pub fn op(&self, index: usize) -> &OpDecl {
        &self.0.ops[index]
    }

    pub fn op_index(&self, name: &str) -> Option<usize> {
        self.0.ops.iter().position(|o| o.name == name)
    }

    pub fn ptr_eq(&self, other: &Signature) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// An empty sorted set over this signature's sorts.
    pub fn empty_set(&self) -> SortedSet {
        SortedSet::from_sizes(self.sorts().to_vec(), &vec![0; self.num_sorts()])
    }

    /// Support of the free algebra over a set of generators with the given
    /// support: the least set of sorts containing `generators` and closed
    /// under operations whose arity sorts are all present.
    pub fn free_support(&self, generators: &Support) -> Support {
        let mut supp: BTreeSet<usize> = generators.clone();
        loop {
            let before = supp.len();
            for op in self.ops() {
                if op.arity.iter().all(|s| supp.contains(s)) {
                    supp.insert(op.coarity);
                }
            }
            if supp.len() == before {
                return supp;
            }
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

pub struct SignatureBuilder {
    name: String,
    sorts: Vec<String>,
    ops: Vec<(String, Vec<String>, String)>,
}

impl SignatureBuilder {
    pub fn sort(mut self, name: &str) -> Self {
        self.sorts.push(name.to_string());
        self
    }

    pub fn op(mut self, name: &str, arity: &[&str], coarity: &str) -> Self {
        self.ops.push((
            name.to_string(),
            arity.iter().map(|s| s.to_string()).collect(),
            coarity.to_string(),
        ));
        self
    }

    pub fn build(self) -> Result<Signature> {
        if self.sorts.is_empty() {
            return Err(Error::InvalidSignature("no sorts declared".into()));
        }
        let mut seen = BTreeSet::new();
        for s in &self.sorts {
            if s.is_empty() {
                return Err(Error::InvalidSignature("empty sort name".into()));
            }
            if !seen.insert(s.as_str()) {
                return Err(Error::InvalidSignature(format!("duplicate sort `{s}`")));
            }
        }
        let lookup = |s: &str| {
            self.sorts
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| Error::InvalidSignature(format!("undeclared sort `{s}`")))
        };
        let mut names = BTreeSet::new();
        let mut ops = Vec::with_capacity(self.ops.len());
        for (name, arity, coarity) in &self.ops {
            if !names.insert(name.as_str()) {
                return Err(Error::InvalidSignature(format!(
                    "duplicate operation `{name}`"
                )));
            }
            ops.push(OpDecl {
                name: name.clone(),
                arity: arity.iter().map(|s| lookup(s)).collect::<Result<_>>()?,
                coarity: lookup(coarity)?,
            });
        }
        Ok(Signature(Arc::new(SignatureData {
            name: self.name,
            sorts: self.sorts.into_iter().map(SortId::new).collect(),
            ops,
        })))
    }
}
