//! Congruence formations on free algebras, presented by finite kernels.
//!
//! A congruence of finite index on `T_Σ(A)` is presented by a pool member
//! `B` and a generator assignment whose image generates `B`; the
//! congruence is the kernel of the induced epimorphism. Kernels are
//! compared through the joint image of their assignments.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use serde::Serialize;

use super::{AlgebraPool, Universe};
use crate::algebra::{FiniteAlgebra, Homomorphism, Limits};
use crate::error::{Error, Result};
use crate::signature::Signature;
use crate::sorted::{SortedMap, SortedSet, SortedSubset};
use crate::syntactic::Recognizer;
use crate::term::GeneratorSet;

/// The kernel of `assign^♯: T_Σ(generators) ↠ algebra`.
#[derive(Debug, Clone)]
pub struct KernelPresentation {
    pub generators: GeneratorSet,
    pub algebra: FiniteAlgebra,
    pub assign: SortedMap,
}

impl KernelPresentation {
    pub fn new(generators: &GeneratorSet, algebra: &FiniteAlgebra, assign: SortedMap) -> Result<Self> {
        if assign.domain() != generators.as_sorted_set() || assign.codomain() != algebra.carriers() {
            return Err(Error::AmbientMismatch("assignment is not generators → carriers".into()));
        }
        if !algebra.is_generated_by(&assign)? {
            return Err(Error::NotHomomorphism("assignment does not generate the algebra".into()));
        }
        Ok(KernelPresentation {
            generators: generators.clone(),
            algebra: algebra.clone(),
            assign,
        })
    }

    /// The recognizer accepting `accept` through this presentation.
    pub fn recognizer(&self, accept: SortedSubset) -> Result<Recognizer> {
        Recognizer::new(&self.generators, &self.algebra, self.assign.clone(), accept)
    }

    /// `Ker(self) ⊆ Ker(other)`.
    pub fn refines(&self, other: &KernelPresentation) -> Result<bool> {
        let j = joint_image(&[self, other])?;
        Ok(j.projections[0].is_injective())
    }

    pub fn same_kernel(&self, other: &KernelPresentation) -> Result<bool> {
        if self.algebra.sizes() != other.algebra.sizes() {
            return Ok(false);
        }
        let j = joint_image(&[self, other])?;
        Ok(j.projections.iter().all(Homomorphism::is_injective))
    }
}

/// The subalgebra of `∏ B_k` generated by the paired generator images; its
/// kernel presentation is the meet of the given kernels.
#[derive(Debug, Clone)]
pub struct JointImage {
    pub algebra: FiniteAlgebra,
    pub assign: SortedMap,
    pub projections: Vec<Homomorphism>,
}

impl JointImage {
    pub fn presentation(&self, generators: &GeneratorSet) -> KernelPresentation {
        KernelPresentation {
            generators: generators.clone(),
            algebra: self.algebra.clone(),
            assign: self.assign.clone(),
        }
    }
}

pub fn joint_image(parts: &[&KernelPresentation]) -> Result<JointImage> {
    let first = parts
        .first()
        .ok_or_else(|| Error::GeneratorMismatch("joint image of no presentations".into()))?;
    let sig: Signature = first.algebra.sig().clone();
    for p in parts {
        if p.generators != first.generators || p.algebra.sig() != &sig {
            return Err(Error::GeneratorMismatch("presentations over different generators".into()));
        }
    }
    let nsorts = sig.num_sorts();
    let gens = first.generators.as_sorted_set();
    let mut elems: Vec<Vec<Vec<usize>>> = vec![Vec::new(); nsorts];
    let mut seen: Vec<HashMap<Vec<usize>, usize>> = vec![HashMap::new(); nsorts];
    let mut add = |s: usize, t: Vec<usize>, elems: &mut Vec<Vec<Vec<usize>>>| -> bool {
        if seen[s].contains_key(&t) {
            return false;
        }
        seen[s].insert(t.clone(), elems[s].len());
        elems[s].push(t);
        true
    };
    for s in 0..nsorts {
        for i in 0..gens.size(s) {
            let t = parts.iter().map(|p| p.assign.apply(s, i)).collect();
            add(s, t, &mut elems);
        }
    }
    let eval = |op: usize, args: &[&Vec<usize>]| -> Vec<usize> {
        parts
            .iter()
            .enumerate()
            .map(|(k, p)| {
                let a: Vec<usize> = args.iter().map(|t| t[k]).collect();
                p.algebra.apply(op, &a)
            })
            .collect()
    };
    loop {
        let mut changed = false;
        for (op, decl) in sig.ops().iter().enumerate() {
            let pools: Vec<Vec<Vec<usize>>> = decl.arity.iter().map(|&s| elems[s].clone()).collect();
            let results: Vec<Vec<usize>> = if pools.is_empty() {
                vec![eval(op, &[])]
            } else {
                pools
                    .iter()
                    .map(|p| p.iter())
                    .multi_cartesian_product()
                    .map(|args| eval(op, &args))
                    .collect()
            };
            for r in results {
                changed |= add(decl.coarity, r, &mut elems);
            }
        }
        if !changed {
            break;
        }
    }
    for e in elems.iter_mut() {
        e.sort();
    }
    let position: Vec<HashMap<&Vec<usize>, usize>> = elems
        .iter()
        .map(|e| e.iter().enumerate().map(|(i, t)| (t, i)).collect())
        .collect();
    let names = elems
        .iter()
        .enumerate()
        .map(|(s, e)| {
            e.iter()
                .map(|t| {
                    t.iter()
                        .zip(parts)
                        .map(|(&c, p)| p.algebra.carriers().element_name(s, c))
                        .join(".")
                })
                .collect()
        })
        .collect();
    let carriers = SortedSet::new(sig.sorts().to_vec(), names)
        .or_else(|_| Ok::<_, Error>(SortedSet::from_sizes(sig.sorts().to_vec(), &elems.iter().map(Vec::len).collect::<Vec<_>>())))?;
    let algebra = FiniteAlgebra::from_fn(&sig, &carriers, |op, args| {
        let decl = sig.op(op);
        let tuples: Vec<&Vec<usize>> = args.iter().zip(&decl.arity).map(|(&a, &s)| &elems[s][a]).collect();
        position[decl.coarity][&eval(op, &tuples)]
    })?;
    let assign_images = (0..nsorts)
        .map(|s| {
            (0..gens.size(s))
                .map(|i| {
                    let t: Vec<usize> = parts.iter().map(|p| p.assign.apply(s, i)).collect();
                    position[s][&t]
                })
                .collect()
        })
        .collect();
    let assign = SortedMap::new(gens, algebra.carriers(), assign_images)?;
    let projections = (0..parts.len())
        .map(|k| {
            let images = (0..nsorts).map(|s| elems[s].iter().map(|t| t[k]).collect()).collect();
            Homomorphism::new(&algebra, &parts[k].algebra, images)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(JointImage {
        algebra,
        assign,
        projections,
    })
}

/// The congruences of finite index on `T_Σ(generators)` whose quotient is
/// a pool member of total size at most the query bound, one presentation
/// per distinct kernel.
#[derive(Debug, Clone)]
pub struct KernelSet {
    pub generators: GeneratorSet,
    pub quotient_bound: usize,
    pub kernels: Vec<KernelPresentation>,
    /// Universe position of each kernel's quotient.
    pub members: Vec<usize>,
}

impl KernelSet {
    /// Position of a kernel equal to `p`, searching only presentations
    /// onto universe member `member`.
    pub fn find(&self, p: &KernelPresentation, member: usize) -> Result<Option<usize>> {
        for (k, q) in self.kernels.iter().enumerate() {
            if self.members[k] == member && q.same_kernel(p)? {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }
}

pub(crate) fn all_assignments(gens: &SortedSet, b: &FiniteAlgebra, limits: &Limits) -> Result<Vec<Vec<Vec<usize>>>> {
    let mut space: u128 = 1;
    for s in 0..gens.num_sorts() {
        for _ in 0..gens.size(s) {
            space = space.saturating_mul(b.size(s) as u128);
        }
    }
    if space > limits.max_homs {
        return Err(Error::BoundExceeded {
            what: "generator assignments".into(),
            needed: space,
            limit: limits.max_homs,
        });
    }
    let slots: Vec<usize> = (0..gens.num_sorts())
        .flat_map(|s| std::iter::repeat_n(s, gens.size(s)))
        .collect();
    let rebuild = |flat: &[usize]| -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); gens.num_sorts()];
        for (&s, &v) in slots.iter().zip(flat) {
            out[s].push(v);
        }
        out
    };
    if slots.is_empty() {
        return Ok(vec![rebuild(&[])]);
    }
    Ok(slots
        .iter()
        .map(|&s| 0..b.size(s))
        .multi_cartesian_product()
        .map(|flat| rebuild(&flat))
        .collect())
}

pub fn congruence_formation_query(
    pool: &AlgebraPool,
    universe: &Universe,
    generators: &GeneratorSet,
    quotient_bound: usize,
    limits: &Limits,
) -> Result<KernelSet> {
    if quotient_bound > pool.bound() {
        return Err(Error::BoundExceeded {
            what: "query bound beyond the pool bound".into(),
            needed: quotient_bound as u128,
            limit: pool.bound() as u128,
        });
    }
    if generators.sorts() != universe.sig().sorts() {
        return Err(Error::GeneratorMismatch("generator sorts differ from the signature".into()));
    }
    let gens = generators.as_sorted_set();
    let mut set = KernelSet {
        generators: generators.clone(),
        quotient_bound,
        kernels: Vec::new(),
        members: Vec::new(),
    };
    for i in pool.indices() {
        let b = universe.member(i);
        if b.total_size() > quotient_bound {
            continue;
        }
        // a sort with generators but an empty carrier admits no assignment
        if (0..gens.num_sorts()).any(|s| gens.size(s) > 0 && b.size(s) == 0) {
            continue;
        }
        let mut found: Vec<KernelPresentation> = Vec::new();
        for images in all_assignments(gens, b, limits)? {
            let assign = SortedMap::new(gens, b.carriers(), images)?;
            if !b.is_generated_by(&assign)? {
                continue;
            }
            let p = KernelPresentation {
                generators: generators.clone(),
                algebra: b.clone(),
                assign,
            };
            let mut duplicate = false;
            for q in &found {
                if q.same_kernel(&p)? {
                    duplicate = true;
                    break;
                }
            }
            if !duplicate {
                found.push(p);
            }
        }
        set.members.extend(std::iter::repeat_n(i, found.len()));
        set.kernels.extend(found);
    }
    Ok(set)
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct FilterReport {
    pub kernels: usize,
    pub nabla_present: bool,
    pub meets_checked: usize,
    pub meets_in_set: usize,
    /// Meets whose quotient exceeds the query bound and so cannot be
    /// represented; counted, not failed.
    pub meets_out_of_bound: usize,
    /// `(kernel, kernel, universe position of the meet quotient)`.
    pub meet_failures: Vec<(usize, usize, usize)>,
    pub coarsenings_checked: usize,
    /// `(kernel, universe position of the coarser quotient)`.
    pub coarsening_failures: Vec<(usize, usize)>,
    pub holds: bool,
}

/// Checks that a kernel set is a filter: it contains ∇, is closed under
/// meets (realized by joint images) and under coarsening (quotients of
/// the presenting algebra).
pub fn filter_laws_check(
    set: &KernelSet,
    pool: &AlgebraPool,
    universe: &Universe,
    limits: &Limits,
) -> Result<FilterReport> {
    let mut report = FilterReport {
        kernels: set.kernels.len(),
        ..FilterReport::default()
    };
    report.nabla_present = set.kernels.iter().any(|k| k.algebra.is_subfinal());
    for (a, b) in (0..set.kernels.len()).tuple_combinations() {
        report.meets_checked += 1;
        let j = joint_image(&[&set.kernels[a], &set.kernels[b]])?;
        if j.algebra.total_size() > set.quotient_bound {
            report.meets_out_of_bound += 1;
            continue;
        }
        let q = universe
            .locate(&j.algebra, limits)?
            .expect("within the universe bound");
        let present = pool.contains_index(q) && set.find(&j.presentation(&set.generators), q)?.is_some();
        if present {
            report.meets_in_set += 1;
        } else {
            report.meet_failures.push((a, b, q));
        }
    }
    for (k, p) in set.kernels.iter().enumerate() {
        let i = set.members[k];
        for (theta, q) in universe.quotients(i) {
            if theta.is_identity() {
                continue;
            }
            report.coarsenings_checked += 1;
            let (quotient, pr) = p.algebra.quotient(theta)?;
            let coarser = KernelPresentation {
                generators: set.generators.clone(),
                algebra: quotient,
                assign: p.assign.then(pr.map())?,
            };
            let present = pool.contains_index(*q) && set.find(&coarser, *q)?.is_some();
            if !present {
                report.coarsening_failures.push((k, *q));
            }
        }
    }
    report.holds = report.nabla_present && report.meet_failures.is_empty() && report.coarsening_failures.is_empty();
    Ok(report)
}

/// For each pool member, the per-sort generator counts of a smallest
/// generating subset (lexicographically least profile among the
/// smallest), as generator sets named `x0, x1, …`; duplicates dropped.
pub fn minimal_generating_profiles(pool: &AlgebraPool, universe: &Universe) -> Result<Vec<GeneratorSet>> {
    generating_profiles(pool, universe)?
        .into_iter()
        .map(|p| profile_generators(universe.sig(), &p))
        .collect()
}

pub(crate) fn generating_profiles(pool: &AlgebraPool, universe: &Universe) -> Result<Vec<Vec<usize>>> {
    let mut profiles: Vec<Vec<usize>> = Vec::new();
    for b in pool.algebras(universe) {
        let elements: Vec<(usize, usize)> = (0..b.num_sorts())
            .flat_map(|s| (0..b.size(s)).map(move |x| (s, x)))
            .collect();
        let full = SortedSubset::full(b.carriers());
        let mut best: Option<Vec<usize>> = None;
        for k in 0..=elements.len() {
            for chosen in elements.iter().combinations(k) {
                let mut seeds = SortedSubset::empty(b.carriers());
                for &&(s, x) in &chosen {
                    seeds.insert(s, x);
                }
                if b.subalgebra_generated(&seeds)? == full {
                    let mut profile = vec![0; b.num_sorts()];
                    for &&(s, _) in &chosen {
                        profile[s] += 1;
                    }
                    if best.as_ref().is_none_or(|p| profile < *p) {
                        best = Some(profile);
                    }
                }
            }
            if best.is_some() {
                break;
            }
        }
        let profile = best.expect("the whole carrier generates");
        if !profiles.contains(&profile) {
            profiles.push(profile);
        }
    }
    profiles.sort();
    Ok(profiles)
}

/// A generator set with `counts[s]` variables of sort `s`, named `x0, x1, …`.
pub(crate) fn profile_generators(sig: &Signature, counts: &[usize]) -> Result<GeneratorSet> {
    let mut n = 0;
    let mut vars = Vec::new();
    for (s, &c) in counts.iter().enumerate() {
        for _ in 0..c {
            vars.push((format!("x{n}"), sig.sort_name(s).to_string()));
            n += 1;
        }
    }
    let borrowed: Vec<(&str, &str)> = vars.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    GeneratorSet::new(sig, &borrowed)
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleReport {
    /// Variables per sort.
    pub profile: Vec<usize>,
    pub automatic: bool,
    pub filter: FilterReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct ThetaReport {
    pub samples: Vec<SampleReport>,
    /// Pool members (universe positions) not presented by any sampled
    /// kernel.
    pub uncovered: Vec<usize>,
    pub holds: bool,
}

/// Bounded check of the correspondence between the pool and the
/// congruence formation it induces: on every sample, the induced kernels
/// form a filter, and every pool member is the quotient of some sampled
/// kernel. Besides the given samples, a smallest generating profile of
/// every universe algebra within the bound is queried, so coverage and
/// meet failures do not depend on the caller's choice.
pub fn theta_roundtrip(
    pool: &AlgebraPool,
    universe: &Universe,
    samples: &[GeneratorSet],
    limits: &Limits,
) -> Result<ThetaReport> {
    let queue = super::languages::sample_generators(pool, universe, samples)?;
    let mut covered: BTreeMap<usize, bool> = pool.indices().map(|i| (i, false)).collect();
    let mut reports = Vec::new();
    for (g, automatic) in queue {
        let set = congruence_formation_query(pool, universe, &g, pool.bound(), limits)?;
        for &m in &set.members {
            covered.insert(m, true);
        }
        let filter = filter_laws_check(&set, pool, universe, limits)?;
        reports.push(SampleReport {
            profile: g.as_sorted_set().sizes(),
            automatic,
            filter,
        });
    }
    let uncovered: Vec<usize> = covered.into_iter().filter(|(_, c)| !c).map(|(i, _)| i).collect();
    let holds = !pool.is_empty() && uncovered.is_empty() && reports.iter().all(|r| r.filter.holds);
    Ok(ThetaReport {
        samples: reports,
        uncovered,
        holds,
    })
}
