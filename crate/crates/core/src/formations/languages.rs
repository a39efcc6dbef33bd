//! Language formations: the regular languages whose syntactic algebra
//! lies in a pool, and the bounded checks relating them to congruence
//! formations.

use itertools::Itertools;
use serde::Serialize;

use super::kernels::{congruence_formation_query, profile_generators, KernelPresentation};
use super::{AlgebraPool, Universe};
use crate::algebra::{FiniteAlgebra, Limits};
use crate::error::Result;
use crate::sorted::{SortedEquivalence, SortedMap, SortedSubset};
use crate::syntactic::{lang_boolean, lang_inverse_hom, lang_inverse_translation, BooleanOp, Context, Recognizer, HOLE};
use crate::term::{print_term, terms_up_to_depth, GeneratorSet, Substitution};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembershipVerdict {
    pub member: bool,
    /// Universe position of the syntactic algebra, if within the bound.
    pub quotient: Option<usize>,
    pub syntactic_index: usize,
    pub class_counts: Vec<usize>,
}

/// Whether the syntactic algebra of `r`'s language is a pool member.
pub fn language_formation_membership(
    pool: &AlgebraPool,
    universe: &Universe,
    r: &Recognizer,
    limits: &Limits,
) -> Result<MembershipVerdict> {
    let sq = r.syntactic_quotient()?;
    let quotient = universe.locate(&sq.quotient, limits)?;
    Ok(MembershipVerdict {
        member: quotient.is_some_and(|q| pool.contains_index(q)),
        quotient,
        syntactic_index: sq.index,
        class_counts: sq.class_counts,
    })
}

fn is_member(pool: &AlgebraPool, universe: &Universe, r: &Recognizer, limits: &Limits) -> Result<bool> {
    Ok(language_formation_membership(pool, universe, r, limits)?.member)
}

/// The samples queried by the roundtrips: the caller's, then a smallest
/// generating profile of every universe algebra within the pool bound.
pub(crate) fn sample_generators(
    pool: &AlgebraPool,
    universe: &Universe,
    samples: &[GeneratorSet],
) -> Result<Vec<(GeneratorSet, bool)>> {
    let mut queue: Vec<(GeneratorSet, bool)> = samples.iter().map(|g| (g.clone(), false)).collect();
    let mut profiles: Vec<Vec<usize>> = samples.iter().map(|g| g.as_sorted_set().sizes()).collect();
    let candidates = AlgebraPool::from_indices(
        pool.bound(),
        (0..universe.len()).filter(|&i| universe.member(i).total_size() <= pool.bound()),
    );
    for p in super::kernels::generating_profiles(&candidates, universe)? {
        if !profiles.contains(&p) {
            queue.push((profile_generators(universe.sig(), &p)?, true));
            profiles.push(p);
        }
    }
    Ok(queue)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum LanguageFailure {
    /// A language saturated by a kernel of the set is not a member.
    SaturatedNotMember { sample: usize, kernel: usize, accept: Vec<Vec<usize>> },
    /// The meet of the class-delta omegas differs from the kernel.
    MeetNotKernel { sample: usize, kernel: usize },
    /// A member language whose syntactic kernel is not in the set.
    SyntacticKernelMissing { sample: usize, kernel: usize, accept: Vec<Vec<usize>> },
    /// An algebra outside the pool all of whose class-delta languages are
    /// members; its kernel is a finite meet of member kernels.
    MeetOutsidePool { sample: usize, algebra: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct VarthetaReport {
    pub samples: Vec<Vec<usize>>,
    pub kernels: usize,
    pub languages_checked: usize,
    pub failures: Vec<LanguageFailure>,
    pub truncated: bool,
    pub holds: bool,
}

fn accept_lists(l: &SortedSubset) -> Vec<Vec<usize>> {
    (0..l.ambient().num_sorts())
        .map(|s| l.members(s).iter().copied().collect())
        .collect()
}

fn delta(k: &KernelPresentation, sort: usize, b: usize) -> SortedSubset {
    let mut l = SortedSubset::empty(k.algebra.carriers());
    l.insert(sort, b);
    l
}

/// Bounded check of the correspondence between congruence formations and
/// language formations. For every sampled kernel: each class-delta
/// language is a member and the meet of their omegas gives back the
/// kernel; every language it saturates is a member whose syntactic kernel
/// is in the set. Algebras outside the pool are then probed: if all
/// class-delta languages of one of their kernels are members, the pool
/// misses a finite meet. `sample_budget` caps the languages examined.
pub fn vartheta_roundtrip(
    pool: &AlgebraPool,
    universe: &Universe,
    samples: &[GeneratorSet],
    sample_budget: usize,
    limits: &Limits,
) -> Result<VarthetaReport> {
    let queue = sample_generators(pool, universe, samples)?;
    let mut report = VarthetaReport {
        samples: queue.iter().map(|(g, _)| g.as_sorted_set().sizes()).collect(),
        kernels: 0,
        languages_checked: 0,
        failures: Vec::new(),
        truncated: false,
        holds: false,
    };
    let mut budget = sample_budget;
    let mut spend = |report: &mut VarthetaReport| -> bool {
        if budget == 0 {
            report.truncated = true;
            return false;
        }
        budget -= 1;
        report.languages_checked += 1;
        true
    };
    'samples: for (n, (g, _)) in queue.iter().enumerate() {
        let set = congruence_formation_query(pool, universe, g, pool.bound(), limits)?;
        report.kernels += set.kernels.len();
        for (k, p) in set.kernels.iter().enumerate() {
            let b = &p.algebra;
            let mut omegas = Vec::new();
            for s in 0..b.num_sorts() {
                for x in 0..b.size(s) {
                    if !spend(&mut report) {
                        break 'samples;
                    }
                    let l = delta(p, s, x);
                    omegas.push(crate::syntactic::omega_finite(b, &l)?.into_equivalence());
                    if !is_member(pool, universe, &p.recognizer(l.clone())?, limits)? {
                        report.failures.push(LanguageFailure::SaturatedNotMember {
                            sample: n,
                            kernel: k,
                            accept: accept_lists(&l),
                        });
                    }
                }
            }
            if !SortedEquivalence::meet_all(b.carriers(), omegas.iter())?.is_identity() {
                report.failures.push(LanguageFailure::MeetNotKernel { sample: n, kernel: k });
            }
            for l in SortedSubset::all_subsets(b.carriers()) {
                if !spend(&mut report) {
                    break 'samples;
                }
                let r = p.recognizer(l.clone())?;
                let v = language_formation_membership(pool, universe, &r, limits)?;
                let Some(q) = v.quotient.filter(|_| v.member) else {
                    report.failures.push(LanguageFailure::SaturatedNotMember {
                        sample: n,
                        kernel: k,
                        accept: accept_lists(&l),
                    });
                    continue;
                };
                let sq = r.syntactic_quotient()?;
                let syntactic = KernelPresentation::new(g, &sq.quotient, sq.assign.clone())?;
                if set.find(&syntactic, q)?.is_none() {
                    report.failures.push(LanguageFailure::SyntacticKernelMissing {
                        sample: n,
                        kernel: k,
                        accept: accept_lists(&l),
                    });
                }
            }
        }
        if let Some(i) = meet_outside_pool(pool, universe, g, &mut || spend(&mut report), limits)? {
            report.failures.push(LanguageFailure::MeetOutsidePool { sample: n, algebra: i });
        }
        if report.truncated {
            break;
        }
    }
    report.holds = !pool.is_empty() && report.failures.is_empty() && !report.truncated;
    Ok(report)
}

/// The smallest universe algebra outside the pool with a kernel over `g`
/// all of whose class-delta languages are members.
fn meet_outside_pool(
    pool: &AlgebraPool,
    universe: &Universe,
    g: &GeneratorSet,
    spend: &mut dyn FnMut() -> bool,
    limits: &Limits,
) -> Result<Option<usize>> {
    let gens = g.as_sorted_set();
    for i in 0..universe.len() {
        let m = universe.member(i);
        if pool.contains_index(i) || m.total_size() > pool.bound() {
            continue;
        }
        if (0..gens.num_sorts()).any(|s| gens.size(s) > 0 && m.size(s) == 0) {
            continue;
        }
        for images in super::kernels::all_assignments(gens, m, limits)? {
            let assign = SortedMap::new(gens, m.carriers(), images)?;
            if !m.is_generated_by(&assign)? {
                continue;
            }
            if !spend() {
                return Ok(None);
            }
            let p = KernelPresentation::new(g, m, assign)?;
            let mut all = true;
            'deltas: for s in 0..m.num_sorts() {
                for x in 0..m.size(s) {
                    if !is_member(pool, universe, &p.recognizer(delta(&p, s, x))?, limits)? {
                        all = false;
                        break 'deltas;
                    }
                }
            }
            if all {
                return Ok(Some(i));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub axiom: String,
    pub checked: usize,
    /// Results whose syntactic algebra exceeds the universe bound, so
    /// membership cannot be decided there.
    pub undecided: usize,
    /// Constructions whose result is not a member, described in text.
    pub failures: Vec<String>,
    pub holds: bool,
}

impl AxiomReport {
    fn new(axiom: &str) -> Self {
        AxiomReport {
            axiom: axiom.into(),
            checked: 0,
            undecided: 0,
            failures: Vec::new(),
            holds: true,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.holds = false;
            self.failures.push(what());
        }
    }

    fn record_verdict(&mut self, v: &MembershipVerdict, what: impl FnOnce() -> String) {
        self.checked += 1;
        if v.quotient.is_none() {
            self.undecided += 1;
        } else if !v.member {
            self.holds = false;
            self.failures.push(what());
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BpsReport {
    pub languages: usize,
    pub axioms: Vec<AxiomReport>,
    /// The budget ran out before every construction was tried.
    pub truncated: bool,
    pub holds: bool,
}

fn describe(r: &Recognizer) -> String {
    let alg = r.algebra();
    let parts = (0..alg.num_sorts())
        .map(|s| {
            let xs = r.accept().members(s).iter().map(|&x| alg.carriers().element_name(s, x)).join(" ");
            format!("{}:{{{}}}", alg.sig().sort_name(s), xs)
        })
        .join(" ");
    format!("accept {parts} over an algebra of sizes {:?}", alg.sizes())
}

/// The subfinal algebra `T_Σ(gens)/∇` as a universe member.
fn nabla_algebra(universe: &Universe, g: &GeneratorSet, limits: &Limits) -> Result<Option<FiniteAlgebra>> {
    let sig = universe.sig();
    let support = sig.free_support(&g.as_sorted_set().support());
    let sizes: Vec<usize> = (0..sig.num_sorts()).map(|s| usize::from(support.contains(&s))).collect();
    let carriers = crate::sorted::SortedSet::from_sizes(sig.sorts().to_vec(), &sizes);
    let alg = FiniteAlgebra::from_fn(sig, &carriers, |_, _| 0)?;
    Ok(universe.locate(&alg, limits)?.map(|i| universe.member(i).clone()))
}

/// Checks the closure properties of the language family recognised by the
/// pool, on the member languages saturated by kernels over `g`:
/// BPS1 languages saturated by `∇`, BPS2 inverse images under elementary
/// contexts with frozen arguments among the depth-1 terms, BPS3 Boolean
/// operations, BPS4 inverse images under substitutions by terms of depth
/// at most 2 whenever the composite onto the syntactic algebra is onto.
pub fn bps_axioms_check(
    pool: &AlgebraPool,
    universe: &Universe,
    g: &GeneratorSet,
    sample_budget: usize,
    limits: &Limits,
) -> Result<BpsReport> {
    let sig = universe.sig().clone();
    let mut budget = sample_budget;
    let mut truncated = false;
    let mut spend = || {
        if budget == 0 {
            truncated = true;
            false
        } else {
            budget -= 1;
            true
        }
    };
    let mut bps1 = AxiomReport::new("BPS1");
    let mut bps2 = AxiomReport::new("BPS2");
    let mut bps3 = AxiomReport::new("BPS3");
    let mut bps4 = AxiomReport::new("BPS4");

    if let Some(nabla) = nabla_algebra(universe, g, limits)? {
        let images = (0..sig.num_sorts()).map(|s| vec![0; g.as_sorted_set().size(s)]).collect();
        let assign = SortedMap::new(g.as_sorted_set(), nabla.carriers(), images)?;
        for l in SortedSubset::all_subsets(nabla.carriers()) {
            if !spend() {
                break;
            }
            let r = Recognizer::new(g, &nabla, assign.clone(), l)?;
            let ok = is_member(pool, universe, &r, limits)?;
            bps1.record(ok, || describe(&r));
        }
    } else {
        bps1.record(false, || "the ∇ quotient is outside the universe".into());
    }

    let set = congruence_formation_query(pool, universe, g, pool.bound(), limits)?;
    let mut languages: Vec<Recognizer> = Vec::new();
    for p in &set.kernels {
        for l in SortedSubset::all_subsets(p.algebra.carriers()) {
            // one presentation per language: the one by its syntactic kernel
            if crate::syntactic::omega_finite(&p.algebra, &l)?.is_identity() {
                languages.push(p.recognizer(l)?);
            }
        }
    }

    let depth1 = terms_up_to_depth(&sig, g, 1, 16);
    let mut contexts = Vec::new();
    for (op, decl) in sig.ops().iter().enumerate() {
        for (pos, &hole) in decl.arity.iter().enumerate() {
            let others: Vec<&Vec<_>> = decl
                .arity
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != pos)
                .map(|(_, &s)| &depth1[s])
                .collect();
            let fillings: Vec<Vec<_>> = if others.is_empty() {
                vec![vec![]]
            } else {
                others.iter().map(|v| v.iter()).multi_cartesian_product().collect()
            };
            for fill in fillings {
                let mut args: Vec<String> = fill.iter().map(|t| print_term(t, &sig, g)).collect();
                args.insert(pos, format!("({HOLE})"));
                let text = format!("({} {})", sig.op(op).name, args.join(" "));
                contexts.push(Context::parse(&sig, g, hole, &text)?);
            }
        }
    }

    let depth2 = terms_up_to_depth(&sig, g, 2, 8);
    let gens = g.as_sorted_set();
    let slots: Vec<usize> = (0..gens.num_sorts())
        .flat_map(|s| std::iter::repeat_n(s, gens.size(s)))
        .collect();
    let substitutions: Vec<Substitution> = if slots.is_empty() {
        Vec::new()
    } else {
        slots
            .iter()
            .map(|&s| depth2[s].iter())
            .multi_cartesian_product()
            .take(64)
            .map(|choice| {
                let mut images = vec![Vec::new(); gens.num_sorts()];
                for (&s, t) in slots.iter().zip(choice) {
                    images[s].push(t.clone());
                }
                Substitution::new(&sig, g, g, images)
            })
            .collect::<Result<_>>()?
    };

    'langs: for r in &languages {
        for ctx in &contexts {
            if !spend() {
                break 'langs;
            }
            let inv = lang_inverse_translation(r, ctx)?;
            let ok = is_member(pool, universe, &inv, limits)?;
            bps2.record(ok, || format!("{} under {}", describe(r), print_term(ctx.term(), &sig, g)));
        }
        if !spend() {
            break;
        }
        let c = lang_boolean(BooleanOp::Complement, r, None, limits)?;
        let ok = is_member(pool, universe, &c, limits)?;
        bps3.record(ok, || format!("complement of {}", describe(r)));
        let sq = r.syntactic_quotient()?;
        for sub in &substitutions {
            if !spend() {
                break 'langs;
            }
            let composite = sub.evaluate_into(&sq.quotient, &sq.assign);
            if !sq.quotient.is_generated_by(&composite)? {
                continue;
            }
            let inv = lang_inverse_hom(r, sub)?;
            let ok = is_member(pool, universe, &inv, limits)?;
            bps4.record(ok, || format!("{} under a substitution", describe(r)));
        }
    }
    'pairs: for (r1, r2) in languages.iter().tuple_combinations() {
        for op in [BooleanOp::Union, BooleanOp::Intersection] {
            if !spend() {
                break 'pairs;
            }
            let r = lang_boolean(op, r1, Some(r2), limits)?;
            let v = language_formation_membership(pool, universe, &r, limits)?;
            bps3.record_verdict(&v, || format!("{op:?} of {} and {}", describe(r1), describe(r2)));
        }
    }

    let axioms = vec![bps1, bps2, bps3, bps4];
    let holds = !truncated && axioms.iter().all(|a| a.holds);
    Ok(BpsReport {
        languages: languages.len(),
        axioms,
        truncated,
        holds,
    })
}
