//! Formations of finite algebras on bounded universes.
//!
//! Everything here is relative to a carrier bound: a [`Universe`] holds
//! every algebra over a signature with total carrier at most the bound, up
//! to isomorphism, and pools are subsets of it. Closure under finite
//! subdirect products is only ever decided inside the universe; products
//! that escape the bound are reported, not followed.

mod kernels;
mod languages;

pub use kernels::{
    congruence_formation_query, filter_laws_check, joint_image, minimal_generating_profiles, theta_roundtrip,
    FilterReport, JointImage, KernelPresentation, KernelSet, ThetaReport,
};
pub use languages::{
    bps_axioms_check, language_formation_membership, vartheta_roundtrip, AxiomReport, BpsReport,
    MembershipVerdict, VarthetaReport,
};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::algebra::{Congruence, FiniteAlgebra, Limits};
use crate::error::{Error, Result};
use crate::iso::{canonical_form, canonical_key, CanonicalKey};
use crate::signature::Signature;
use crate::sorted::{SortedEquivalence, SortedSet};

/// Every algebra over `sig` with total carrier at most `bound`, up to
/// isomorphism, in canonical order, together with each member's
/// congruences and the canonical keys of the corresponding quotients.
#[derive(Debug, Clone)]
pub struct Universe {
    sig: Signature,
    bound: usize,
    members: Vec<FiniteAlgebra>,
    keys: Vec<CanonicalKey>,
    index: BTreeMap<CanonicalKey, usize>,
    quotients: Vec<Vec<(Congruence, usize)>>,
}

fn size_vectors(sorts: usize, bound: usize) -> Vec<Vec<usize>> {
    (0..sorts)
        .map(|_| 0..=bound)
        .multi_cartesian_product()
        .filter(|v| v.iter().sum::<usize>() <= bound)
        .collect()
}

impl Universe {
    /// Enumerates all tables for every size profile, keeping one canonical
    /// representative per isomorphism class.
    pub fn enumerate(sig: &Signature, bound: usize, limits: &Limits) -> Result<Universe> {
        if bound > limits.max_carrier {
            return Err(Error::BoundExceeded {
                what: "universe carrier bound".into(),
                needed: bound as u128,
                limit: limits.max_carrier as u128,
            });
        }
        let nsorts = sig.num_sorts();
        // sizes[0] == 0 first keeps profiles in a fixed order
        let profiles = size_vectors(nsorts, bound);
        let mut plans = Vec::new();
        let mut total: u128 = 0;
        for sizes in profiles {
            let carriers = SortedSet::from_sizes(sig.sorts().to_vec(), &sizes);
            let mut choices: Vec<usize> = Vec::new();
            let mut possible = true;
            for decl in sig.ops() {
                let tuples: usize = decl.arity.iter().map(|&s| sizes[s]).product();
                let target = sizes[decl.coarity];
                if tuples > 0 && target == 0 {
                    possible = false;
                    break;
                }
                choices.extend(std::iter::repeat_n(target, tuples));
            }
            if !possible {
                continue;
            }
            let count = choices
                .iter()
                .fold(1u128, |acc, &n| acc.saturating_mul(n as u128));
            total = total.saturating_add(count);
            if total > limits.max_candidates {
                return Err(Error::BoundExceeded {
                    what: "candidate tables".into(),
                    needed: total,
                    limit: limits.max_candidates,
                });
            }
            plans.push((carriers, choices));
        }
        let mut found: BTreeMap<CanonicalKey, FiniteAlgebra> = BTreeMap::new();
        for (carriers, choices) in plans {
            let lens: Vec<usize> = sig
                .ops()
                .iter()
                .map(|d| d.arity.iter().map(|&s| carriers.size(s)).product())
                .collect();
            let mut digits = vec![0usize; choices.len()];
            'tables: loop {
                let mut tables = Vec::with_capacity(lens.len());
                let mut at = 0;
                for &len in &lens {
                    tables.push(digits[at..at + len].to_vec());
                    at += len;
                }
                let alg = FiniteAlgebra::new(sig, &carriers, tables)?;
                let form = canonical_form(&alg, limits)?;
                found.entry(form.key).or_insert(form.algebra);
                let mut i = digits.len();
                loop {
                    if i == 0 {
                        break 'tables;
                    }
                    i -= 1;
                    digits[i] += 1;
                    if digits[i] < choices[i] {
                        continue 'tables;
                    }
                    digits[i] = 0;
                }
            }
        }
        let keys: Vec<CanonicalKey> = found.keys().cloned().collect();
        let members: Vec<FiniteAlgebra> = found.into_values().collect();
        let index: BTreeMap<CanonicalKey, usize> =
            keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        let mut quotients = Vec::with_capacity(members.len());
        for a in &members {
            let mut qs = Vec::new();
            for c in a.congruences(limits)? {
                let (q, _) = a.quotient(&c)?;
                let k = canonical_key(&q, limits)?;
                qs.push((c, index[&k]));
            }
            quotients.push(qs);
        }
        Ok(Universe {
            sig: sig.clone(),
            bound,
            members,
            keys,
            index,
            quotients,
        })
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[FiniteAlgebra] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &FiniteAlgebra {
        &self.members[i]
    }

    pub fn key(&self, i: usize) -> &CanonicalKey {
        &self.keys[i]
    }

    /// Position of `a`'s isomorphism class.
    pub fn locate(&self, a: &FiniteAlgebra, limits: &Limits) -> Result<Option<usize>> {
        if a.sig() != &self.sig {
            return Err(Error::SignatureMismatch("algebra over another signature".into()));
        }
        if a.total_size() > self.bound {
            return Ok(None);
        }
        Ok(self.index.get(&canonical_key(a, limits)?).copied())
    }

    pub fn index_of_key(&self, key: &CanonicalKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Congruences of member `i` with the universe position of each quotient.
    pub fn quotients(&self, i: usize) -> &[(Congruence, usize)] {
        &self.quotients[i]
    }

    fn quotient_index(&self, i: usize, c: &SortedEquivalence) -> usize {
        self.quotients[i]
            .iter()
            .find(|(d, _)| d.equivalence() == c)
            .map(|(_, q)| *q)
            .expect("meets of congruences are congruences")
    }
}

/// A set of algebras up to isomorphism, all within a carrier bound, held
/// as positions in a [`Universe`]. Iteration follows canonical order
/// (carrier profile, then tables).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraPool {
    bound: usize,
    members: BTreeSet<usize>,
}

impl AlgebraPool {
    pub fn empty(bound: usize) -> Self {
        AlgebraPool {
            bound,
            members: BTreeSet::new(),
        }
    }

    /// A pool from explicit algebras; each must fit the bound.
    pub fn from_algebras(universe: &Universe, bound: usize, algs: &[FiniteAlgebra], limits: &Limits) -> Result<Self> {
        if bound > universe.bound {
            return Err(Error::BoundExceeded {
                what: "pool bound beyond the universe".into(),
                needed: bound as u128,
                limit: universe.bound as u128,
            });
        }
        let mut pool = AlgebraPool::empty(bound);
        for a in algs {
            if a.total_size() > bound {
                return Err(Error::BoundExceeded {
                    what: "pool member carrier".into(),
                    needed: a.total_size() as u128,
                    limit: bound as u128,
                });
            }
            let i = universe.locate(a, limits)?.expect("every algebra within the bound is enumerated");
            pool.members.insert(i);
        }
        Ok(pool)
    }

    pub fn from_indices(bound: usize, members: impl IntoIterator<Item = usize>) -> Self {
        AlgebraPool {
            bound,
            members: members.into_iter().collect(),
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + Clone + '_ {
        self.members.iter().copied()
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    pub fn contains(&self, universe: &Universe, a: &FiniteAlgebra, limits: &Limits) -> Result<bool> {
        Ok(universe.locate(a, limits)?.is_some_and(|i| self.members.contains(&i)))
    }

    pub fn insert_index(&mut self, i: usize) -> bool {
        self.members.insert(i)
    }

    pub fn remove_index(&mut self, i: usize) -> bool {
        self.members.remove(&i)
    }

    pub fn algebras<'a>(&'a self, universe: &'a Universe) -> impl Iterator<Item = &'a FiniteAlgebra> + 'a {
        self.members.iter().map(move |&i| universe.member(i))
    }

    pub fn intersection(&self, other: &AlgebraPool) -> AlgebraPool {
        AlgebraPool {
            bound: self.bound.min(other.bound),
            members: self.members.intersection(&other.members).copied().collect(),
        }
    }

    pub fn union(&self, other: &AlgebraPool) -> AlgebraPool {
        AlgebraPool {
            bound: self.bound.max(other.bound),
            members: self.members.union(&other.members).copied().collect(),
        }
    }

    pub fn is_subset(&self, other: &AlgebraPool) -> bool {
        self.members.is_subset(&other.members)
    }
}

/// Which closure rule produced a pool member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Rule {
    Seed,
    H,
    Pfsd,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Seed => "seed",
            Rule::H => "H",
            Rule::Pfsd => "P_fsd",
        })
    }
}

/// One addition during a closure run; `parents` are universe positions
/// (the algebra a quotient was taken of, or the subdirect factors).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub round: usize,
    pub rule: Rule,
    pub added: usize,
    pub parents: Vec<usize>,
}

/// An algebra outside the bound that is a subdirect product of members.
#[derive(Debug, Clone)]
pub struct Escape {
    pub factors: (usize, usize),
    pub algebra: FiniteAlgebra,
}

#[derive(Debug, Clone)]
pub struct ClosureReport {
    pub closed: AlgebraPool,
    /// True when no subdirect product of two members escapes the bound, so
    /// the bounded closure is the full generated formation.
    pub saturated_at_bound: bool,
    pub escape: Option<Escape>,
    pub trace: Vec<TraceEntry>,
    pub rounds: usize,
}

/// Adds every quotient of every member.
pub fn h_closure_step(pool: &AlgebraPool, universe: &Universe) -> (AlgebraPool, Vec<(usize, usize)>) {
    let mut next = pool.clone();
    let mut added = Vec::new();
    for i in pool.indices() {
        for &(_, q) in universe.quotients(i) {
            if next.insert_index(q) {
                added.push((q, i));
            }
        }
    }
    (next, added)
}

/// The members of `pool` usable as subdirect factors of universe member
/// `i`: congruences whose quotient lies in the pool. Returns a reduced
/// family with meet Δ, or `None`.
fn pfsd_family(universe: &Universe, pool: &AlgebraPool, i: usize) -> Option<Vec<(Congruence, usize)>> {
    let a = universe.member(i);
    if a.is_subfinal() {
        return Some(Vec::new());
    }
    let mut good: Vec<(Congruence, usize)> = universe
        .quotients(i)
        .iter()
        .filter(|(_, q)| pool.contains_index(*q))
        .cloned()
        .collect();
    if let Some(d) = good.iter().find(|(c, _)| c.is_identity()) {
        return Some(vec![d.clone()]);
    }
    let meet = |family: &[(Congruence, usize)]| {
        SortedEquivalence::meet_all(a.carriers(), family.iter().map(|(c, _)| c.equivalence()))
            .expect("same ambient")
    };
    if !meet(&good).is_identity() {
        return None;
    }
    let mut k = 0;
    while k < good.len() {
        let mut without = good.clone();
        without.remove(k);
        if meet(&without).is_identity() {
            good = without;
        } else {
            k += 1;
        }
    }
    Some(good)
}

/// Adds every universe algebra within the pool bound that embeds
/// subdirectly in a finite product of members. The empty family makes
/// every subfinal algebra qualify.
pub fn pfsd_closure_step(pool: &AlgebraPool, universe: &Universe) -> (AlgebraPool, Vec<(usize, Vec<usize>)>) {
    let mut next = pool.clone();
    let mut added = Vec::new();
    for i in 0..universe.len() {
        if pool.contains_index(i) || universe.member(i).total_size() > pool.bound {
            continue;
        }
        if let Some(family) = pfsd_family(universe, pool, i) {
            next.insert_index(i);
            added.push((i, family.iter().map(|(_, q)| *q).collect()));
        }
    }
    (next, added)
}

fn smallest_escape(pool: &AlgebraPool, universe: &Universe, limits: &Limits) -> Result<Option<Escape>> {
    let mut best: Option<(usize, (usize, usize))> = None;
    for (a, b) in pool.indices().tuple_combinations().chain(pool.indices().map(|i| (i, i))) {
        let (x, y) = (universe.member(a), universe.member(b));
        if x.carriers().support() != y.carriers().support() {
            continue;
        }
        let size: usize = x.sizes().iter().zip(y.sizes()).map(|(p, q)| p * q).sum();
        if size > pool.bound && best.is_none_or(|(s, f)| (size, (a, b)) < (s, f)) {
            best = Some((size, (a.min(b), a.max(b))));
        }
    }
    match best {
        None => Ok(None),
        Some((_, (a, b))) => {
            let prod = crate::algebra::product(
                universe.sig(),
                &[universe.member(a).clone(), universe.member(b).clone()],
                limits,
            )?;
            Ok(Some(Escape {
                factors: (a, b),
                algebra: prod.algebra,
            }))
        }
    }
}

/// Alternates H and P_fsd steps until nothing is added.
pub fn formation_closure(seed: &AlgebraPool, universe: &Universe, limits: &Limits) -> Result<ClosureReport> {
    let mut trace: Vec<TraceEntry> = seed
        .indices()
        .map(|i| TraceEntry {
            round: 0,
            rule: Rule::Seed,
            added: i,
            parents: vec![],
        })
        .collect();
    let mut pool = seed.clone();
    let mut round = 0;
    loop {
        round += 1;
        let (after_h, h_added) = h_closure_step(&pool, universe);
        trace.extend(h_added.into_iter().map(|(q, from)| TraceEntry {
            round,
            rule: Rule::H,
            added: q,
            parents: vec![from],
        }));
        let (after_p, p_added) = pfsd_closure_step(&after_h, universe);
        trace.extend(p_added.iter().map(|(i, fam)| TraceEntry {
            round,
            rule: Rule::Pfsd,
            added: *i,
            parents: fam.clone(),
        }));
        let changed = after_p != pool;
        pool = after_p;
        if !changed {
            break;
        }
    }
    let escape = smallest_escape(&pool, universe, limits)?;
    Ok(ClosureReport {
        closed: pool,
        saturated_at_bound: escape.is_none(),
        escape,
        trace,
        rounds: round,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FormationMode {
    Standard,
    ShSk,
}

/// The first failed condition of a formation check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Condition {
    Nonempty,
    Abstract,
    HomomorphicImages,
    SubdirectProducts,
    MeetQuotients,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Nonempty => "nonempty",
            Condition::Abstract => "abstract",
            Condition::HomomorphicImages => "closed under homomorphic images",
            Condition::SubdirectProducts => "closed under finite subdirect products",
            Condition::MeetQuotients => "closed under meet quotients",
        })
    }
}

#[derive(Debug, Clone)]
pub struct FormationVerdict {
    pub holds: bool,
    pub failed: Option<Condition>,
    /// Universe position of the smallest missing algebra.
    pub witness: Option<usize>,
    /// The algebra the witness was derived from, when there is one.
    pub source: Option<usize>,
}

impl FormationVerdict {
    fn pass() -> Self {
        FormationVerdict {
            holds: true,
            failed: None,
            witness: None,
            source: None,
        }
    }

    fn fail(c: Condition, witness: Option<usize>, source: Option<usize>) -> Self {
        FormationVerdict {
            holds: false,
            failed: Some(c),
            witness,
            source,
        }
    }
}

/// Checks the formation conditions inside the universe, up to the pool
/// bound. Abstractness holds by construction since pools are sets of
/// isomorphism classes.
pub fn is_formation(pool: &AlgebraPool, universe: &Universe, mode: FormationMode) -> FormationVerdict {
    if pool.is_empty() {
        return FormationVerdict::fail(Condition::Nonempty, None, None);
    }
    // (missing, source) pairs; the smallest missing position wins
    let smallest = |found: Vec<(usize, usize)>| found.into_iter().min();
    let missing_quotients: Vec<(usize, usize)> = pool
        .indices()
        .flat_map(|i| universe.quotients(i).iter().map(move |&(_, q)| (q, i)))
        .filter(|(q, _)| !pool.contains_index(*q))
        .collect();
    if let Some((q, i)) = smallest(missing_quotients) {
        return FormationVerdict::fail(Condition::HomomorphicImages, Some(q), Some(i));
    }
    let in_bound = (0..universe.len()).filter(|&i| universe.member(i).total_size() <= pool.bound);
    match mode {
        FormationMode::Standard => {
            for i in in_bound {
                if !pool.contains_index(i) && pfsd_family(universe, pool, i).is_some() {
                    return FormationVerdict::fail(Condition::SubdirectProducts, Some(i), None);
                }
            }
        }
        FormationMode::ShSk => {
            let mut missing = Vec::new();
            for i in in_bound {
                let good: Vec<&Congruence> = universe
                    .quotients(i)
                    .iter()
                    .filter(|(_, q)| pool.contains_index(*q))
                    .map(|(c, _)| c)
                    .collect();
                for (phi, psi) in good.iter().tuple_combinations() {
                    let meet = phi.meet(psi).expect("same ambient");
                    let q = universe.quotient_index(i, meet.equivalence());
                    if !pool.contains_index(q) {
                        missing.push((q, i));
                    }
                }
            }
            if let Some((q, i)) = smallest(missing) {
                return FormationVerdict::fail(Condition::MeetQuotients, Some(q), Some(i));
            }
        }
    }
    FormationVerdict::pass()
}

/// Names pool members `M0, M1, …` in canonical order.
pub fn member_names(pool: &AlgebraPool) -> BTreeMap<usize, String> {
    pool.indices().enumerate().map(|(n, i)| (i, format!("M{n}"))).collect()
}
