//! The acceptance suite: one line per criterion, exit status nonzero if any
//! criterion fails.

mod common;

use std::collections::{BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use itertools::Itertools;
use manysorted::algebra::{enumerate_homs, HomFilter};
use manysorted::fixtures::*;
use manysorted::formations::*;
use manysorted::iso::are_isomorphic;
use manysorted::sorted::SortedEquivalence;
use manysorted::syntactic::{
    class_description, lang_boolean, lang_inverse_translation, omega_finite, BooleanOp, Context, Recognizer,
};
use manysorted::translations::{closed_under_elementary, closed_under_translations};
use manysorted::{FiniteAlgebra, GeneratorSet, Limits, SortedSet, SortedSubset};

fn limits() -> Limits {
    Limits::default()
}

fn c1_omega_oracle() -> Result<String, String> {
    let start = Instant::now();
    let fixtures = small_fixtures();
    let sorts: BTreeSet<usize> = fixtures.iter().map(|(_, a)| a.num_sorts()).collect();
    if fixtures.len() < 6 || sorts.len() < 2 {
        return Err("fixture corpus too narrow".into());
    }
    if !fixtures.iter().any(|(_, a)| a.sizes().contains(&0)) {
        return Err("no fixture with an empty carrier".into());
    }
    let mut cases = 0;
    for (name, a) in &fixtures {
        assert!(a.total_size() <= 5);
        for l in common::subsets(a) {
            let fast = omega_finite(a, &l).unwrap();
            let slow = common::omega(a, &l);
            if !common::same_partition(&common::labels_of(&fast), &slow) {
                return Err(format!("{name}: omega differs from the oracle"));
            }
            cases += 1;
        }
    }
    let took = start.elapsed();
    if took > Duration::from_secs(60) {
        return Err(format!("took {took:?}"));
    }
    Ok(format!("{} fixtures, {cases} subsets, {:.1}s", fixtures.len(), took.as_secs_f64()))
}

fn c2_decider_agreement() -> Result<String, String> {
    let mut cases = 0;
    for (name, a) in small_fixtures() {
        for labels in common::sorted_partitions(&a.sizes()) {
            let eq = SortedEquivalence::from_labels(a.carriers(), labels.clone()).unwrap();
            let literal = a.is_congruence(&eq).unwrap();
            let elementary = closed_under_elementary(&a, &eq, &limits()).unwrap();
            let translations = closed_under_translations(&a, &eq, &limits()).unwrap();
            let oracle = common::is_congruence(&a, &labels);
            if literal != elementary || literal != translations || literal != oracle {
                return Err(format!("{name}: deciders disagree on {labels:?}"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} partitions"))
}

fn c3_class_reconstruction() -> Result<String, String> {
    let mut cases = 0;
    for (name, a) in small_fixtures() {
        for l in common::subsets(&a) {
            let omega = omega_finite(&a, &l).unwrap();
            for t in 0..a.num_sorts() {
                for x in 0..a.size(t) {
                    let d = class_description(&a, &l, t, x, &limits()).unwrap();
                    if d.class != omega.class(t, x) {
                        return Err(format!("{name}: class of {x} at sort {t} not reconstructed"));
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} classes"))
}

fn c4_pullback_law() -> Result<String, String> {
    let fixtures = small_fixtures();
    let mut epis = 0;
    let mut checks = 0;
    let mut non_epi_checked = 0;
    let mut strict = 0;
    for ((_, a), (_, b)) in fixtures.iter().cartesian_product(&fixtures) {
        if a.sig() != b.sig() {
            continue;
        }
        for f in enumerate_homs(a, b, HomFilter::All, &limits()).unwrap() {
            let epi = f.is_surjective();
            if epi {
                epis += 1;
            } else if non_epi_checked >= 200 {
                continue;
            } else {
                non_epi_checked += 1;
            }
            for m in common::subsets(b) {
                let pulled = SortedEquivalence::pullback(f.map(), &omega_finite(b, &m).unwrap()).unwrap();
                let direct = omega_finite(a, &f.map().inverse_image(&m).unwrap()).unwrap();
                checks += 1;
                if epi && &pulled != direct.equivalence() {
                    return Err("pullback law fails for an epimorphism".into());
                }
                if !pulled.refines(direct.equivalence()) {
                    return Err("inclusion fails for a homomorphism".into());
                }
                if !epi && &pulled != direct.equivalence() {
                    strict += 1;
                }
            }
        }
    }
    if epis > 200 {
        return Err(format!("{epis} epimorphisms exceed the sample cap"));
    }
    if strict == 0 {
        return Err("no strict inclusion found for non-epimorphisms".into());
    }
    Ok(format!("{epis} epis, {non_epi_checked} non-epis, {checks} subsets, {strict} strict"))
}

fn c5_congruence_recovery() -> Result<String, String> {
    let mut cases = 0;
    for (name, a) in small_fixtures() {
        for c in a.congruences(&limits()).unwrap() {
            let mut omegas = Vec::new();
            for t in 0..a.num_sorts() {
                for x in c.representatives(t) {
                    let mut delta = SortedSubset::empty(a.carriers());
                    for y in c.class(t, x) {
                        delta.insert(t, y);
                    }
                    omegas.push(omega_finite(&a, &delta).unwrap().into_equivalence());
                }
            }
            let meet = SortedEquivalence::meet_all(a.carriers(), omegas.iter()).unwrap();
            if &meet != c.equivalence() {
                return Err(format!("{name}: congruence not recovered"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} congruences"))
}

fn sorted_sets_up_to(total: usize) -> Vec<SortedSet> {
    let mut out = Vec::new();
    for n in 0..=total {
        out.push(SortedSet::from_sizes(vec!["s".into()], &[n]));
    }
    for (x, y) in (0..=total).cartesian_product(0..=total) {
        if x + y <= total {
            out.push(SortedSet::from_sizes(vec!["a".into(), "b".into()], &[x, y]));
        }
    }
    out
}

fn c6_saturation_laws() -> Result<String, String> {
    let mut checks = 0usize;
    for c in sorted_sets_up_to(5) {
        let eqs: Vec<SortedEquivalence> = common::sorted_partitions(&c.sizes())
            .into_iter()
            .map(|l| SortedEquivalence::from_labels(&c, l).unwrap())
            .collect();
        let subs = SortedSubset::all_subsets(&c);
        let nabla = SortedEquivalence::total(&c);
        for x in &subs {
            let expected = (0..c.num_sorts()).all(|s| x.members(s).is_empty() || x.members(s).len() == c.size(s));
            if nabla.is_saturated(x).unwrap() != expected {
                return Err("∇-saturated characterization fails".into());
            }
        }
        for phi in &eqs {
            let sat: Vec<SortedSubset> = subs.iter().map(|x| phi.saturate(x).unwrap()).collect();
            for (i, x) in subs.iter().enumerate() {
                let sx = &sat[i];
                if !x.is_subset(sx) || &phi.saturate(sx).unwrap() != sx {
                    return Err("saturation is not extensive and idempotent".into());
                }
                if phi.is_saturated(x).unwrap() && !phi.is_saturated(&x.complement()).unwrap() {
                    return Err("complement of a saturated set is not saturated".into());
                }
                for (j, y) in subs.iter().enumerate() {
                    checks += 1;
                    if x.is_subset(y) && !sx.is_subset(&sat[j]) {
                        return Err("saturation is not monotone".into());
                    }
                    if phi.saturate(&x.union(y).unwrap()).unwrap() != sx.union(&sat[j]).unwrap() {
                        return Err("saturation is not additive".into());
                    }
                    let meet = phi.saturate(&x.intersection(y).unwrap()).unwrap();
                    if !meet.is_subset(&sx.intersection(&sat[j]).unwrap()) {
                        return Err("saturation of an intersection is too large".into());
                    }
                }
            }
            // the saturated sets form a Boolean algebra whose atoms are the class deltas
            let saturated: HashSet<&SortedSubset> = subs.iter().filter(|x| phi.is_saturated(x).unwrap()).collect();
            for (x, y) in saturated.iter().cartesian_product(&saturated) {
                if !saturated.contains(&x.union(y).unwrap()) || !saturated.contains(&x.intersection(y).unwrap()) {
                    return Err("saturated sets not closed under union and intersection".into());
                }
            }
            let atoms: HashSet<&SortedSubset> = saturated
                .iter()
                .filter(|x| !x.is_empty() && saturated.iter().all(|y| !y.is_subset(x) || y.is_empty() || y == *x))
                .copied()
                .collect();
            let deltas: HashSet<SortedSubset> = (0..c.num_sorts())
                .flat_map(|t| {
                    let c = &c;
                    phi.representatives(t).into_iter().map(move |x| {
                        let mut d = SortedSubset::empty(c);
                        for y in phi.class(t, x) {
                            d.insert(t, y);
                        }
                        d
                    })
                })
                .collect();
            if atoms.into_iter().cloned().collect::<HashSet<_>>() != deltas {
                return Err("atoms differ from the class deltas".into());
            }
            for psi in &eqs {
                let refines = phi.refines(psi);
                let absorbs = subs
                    .iter()
                    .all(|x| phi.saturate(&psi.saturate(x).unwrap()).unwrap() == psi.saturate(x).unwrap());
                if refines != absorbs {
                    return Err("refinement and saturation absorption disagree".into());
                }
            }
        }
    }
    Ok(format!("{checks} subset pairs"))
}

fn sig1_universe(bound: usize) -> Universe {
    Universe::enumerate(&sig1(), bound, &limits()).unwrap()
}

fn closure_of(u: &Universe, bound: usize, seed: &[FiniteAlgebra]) -> ClosureReport {
    let pool = AlgebraPool::from_algebras(u, bound, seed, &limits()).unwrap();
    formation_closure(&pool, u, &limits()).unwrap()
}

fn c7_shsk_equivalence() -> Result<String, String> {
    let u = sig1_universe(4);
    let mut pools: BTreeSet<Vec<usize>> = BTreeSet::new();
    for i in 0..u.len() {
        let closed = closure_of(&u, 4, &[u.member(i).clone()]).closed;
        pools.insert(closed.indices().collect());
        for j in closed.indices() {
            let mut broken = closed.clone();
            broken.remove_index(j);
            pools.insert(broken.indices().collect());
        }
        let mut missing_quotient = closed.clone();
        missing_quotient.insert_index(i);
        pools.insert(missing_quotient.indices().collect());
    }
    pools.insert(Vec::new());
    let mut formations = 0;
    for p in &pools {
        let pool = AlgebraPool::from_indices(4, p.iter().copied());
        let a = is_formation(&pool, &u, FormationMode::Standard);
        let b = is_formation(&pool, &u, FormationMode::ShSk);
        if a.holds != b.holds {
            return Err(format!("verdicts differ on pool {p:?}"));
        }
        if !a.holds && a.witness.is_none() && a.failed != Some(Condition::Nonempty) {
            return Err("failure without a witness".into());
        }
        formations += usize::from(a.holds);
    }
    if pools.len() < 50 {
        return Err(format!("only {} pools", pools.len()));
    }
    Ok(format!("{} pools, {formations} formations", pools.len()))
}

/// Members of the closure of {CYC4} at bound 4 as `(c, f)` tables over
/// `0..n`, canonical order; frozen from a reviewed run.
const CYC4_CLOSURE: &[(usize, &[usize])] = &[
    (0, &[0]),
    (0, &[0, 1]),
    (0, &[1, 0]),
    (0, &[0, 1, 2]),
    (0, &[0, 2, 1]),
    (0, &[1, 0, 2]),
    (0, &[0, 1, 2, 3]),
    (0, &[0, 1, 3, 2]),
    (0, &[1, 0, 2, 3]),
    (0, &[1, 0, 3, 2]),
    (0, &[2, 0, 3, 1]),
];

fn c8_closure_correctness() -> Result<String, String> {
    let start = Instant::now();
    let u = sig1_universe(4);
    let report = closure_of(&u, 4, &[cyc4()]);
    let closed = &report.closed;
    let cyc2_sq = manysorted::algebra::product(&sig1(), &[cyc2(), cyc2()], &limits()).unwrap().algebra;
    for (name, a) in [("one-point", one_point(&sig1())), ("CYC2", cyc2()), ("CYC4", cyc4()), ("CYC2²", cyc2_sq)] {
        if !closed.contains(&u, &a, &limits()).unwrap() {
            return Err(format!("{name} missing"));
        }
    }
    let again = formation_closure(closed, &u, &limits()).unwrap();
    if &again.closed != closed {
        return Err("closure is not idempotent".into());
    }
    for mode in [FormationMode::Standard, FormationMode::ShSk] {
        if !is_formation(closed, &u, mode).holds {
            return Err(format!("not a formation in {mode:?} mode"));
        }
    }
    let snapshot: Vec<FiniteAlgebra> = CYC4_CLOSURE
        .iter()
        .map(|&(c, f)| {
            let carriers = SortedSet::from_sizes(vec!["s".into()], &[f.len()]);
            FiniteAlgebra::new(&sig1(), &carriers, vec![vec![c], f.to_vec()]).unwrap()
        })
        .collect();
    let frozen = AlgebraPool::from_algebras(&u, 4, &snapshot, &limits()).unwrap();
    if &frozen != closed {
        let actual: Vec<String> = closed
            .algebras(&u)
            .map(|a| format!("({}, &{:?})", a.table(0)[0], a.table(1)))
            .collect();
        return Err(format!("member list differs from the snapshot: {}", actual.join(", ")));
    }
    let took = start.elapsed();
    if took > Duration::from_secs(120) {
        return Err(format!("took {took:?}"));
    }
    Ok(format!("{} members, {:.1}s", closed.len(), took.as_secs_f64()))
}

fn one_gen() -> GeneratorSet {
    GeneratorSet::new(&sig1(), &[("x", "s")]).unwrap()
}

fn two_gens() -> GeneratorSet {
    GeneratorSet::new(&sig1(), &[("x", "s"), ("y", "s")]).unwrap()
}

fn closures(u: &Universe) -> Vec<(&'static str, AlgebraPool)> {
    [("CYC2", cyc2()), ("CYC4", cyc4()), ("ID3", id3())]
        .into_iter()
        .map(|(n, a)| (n, closure_of(u, 4, &[a]).closed))
        .collect()
}

fn c9_theta_roundtrip() -> Result<String, String> {
    let u = sig1_universe(4);
    let mut breaking = 0;
    for (name, closed) in closures(&u) {
        for samples in [vec![one_gen()], vec![two_gens()]] {
            let r = theta_roundtrip(&closed, &u, &samples, &limits()).unwrap();
            if !r.holds {
                return Err(format!("θ fails on the closure of {name}"));
            }
        }
        let mut broke_here = 0;
        for i in closed.indices() {
            let mut broken = closed.clone();
            broken.remove_index(i);
            let formation = is_formation(&broken, &u, FormationMode::Standard).holds;
            let r = theta_roundtrip(&broken, &u, &[one_gen()], &limits()).unwrap();
            if r.holds != formation {
                return Err(format!("{name} without member {i}: θ verdict {} but formation {formation}", r.holds));
            }
            if !r.holds {
                let witnessed = !r.uncovered.is_empty()
                    || r.samples.iter().any(|s| {
                        !s.filter.nabla_present
                            || !s.filter.meet_failures.is_empty()
                            || !s.filter.coarsening_failures.is_empty()
                    });
                if !witnessed {
                    return Err(format!("{name} without member {i}: failure without a witness"));
                }
                broke_here += 1;
            }
        }
        if broke_here == 0 {
            return Err(format!("no breaking removal for {name}"));
        }
        breaking += broke_here;
    }
    Ok(format!("3 closures pass, {breaking} breaking removals detected"))
}

fn even_f() -> Recognizer {
    Recognizer::from_parts(&one_gen(), &cyc2(), vec![vec![0]], vec![[0].into()]).unwrap()
}

fn c10_vartheta_bps() -> Result<String, String> {
    let u = sig1_universe(4);
    for (name, closed) in closures(&u) {
        let v = vartheta_roundtrip(&closed, &u, &[one_gen()], 1_000_000, &limits()).unwrap();
        if !v.holds {
            return Err(format!("ϑ fails on the closure of {name}: {:?}", v.failures));
        }
        let b = bps_axioms_check(&closed, &u, &one_gen(), 1_000_000, &limits()).unwrap();
        if !b.holds {
            return Err(format!("BPS fails on the closure of {name}"));
        }
    }
    let closed = closure_of(&u, 4, &[cyc2()]).closed;
    let member = |r: &Recognizer| language_formation_membership(&closed, &u, r, &limits()).unwrap();
    let even = member(&even_f());
    if !even.member || even.syntactic_index != 2 {
        return Err("even-f is not a member of index 2".into());
    }
    let ctx = Context::parse(&sig1(), &one_gen(), 0, "(f (_))").unwrap();
    let odd = lang_inverse_translation(&even_f(), &ctx).unwrap();
    if !member(&odd).member {
        return Err("odd-f is not a member".into());
    }
    let langs = [even_f(), odd.clone()];
    let mut combos = 0;
    for (r1, r2) in langs.iter().cartesian_product(&langs) {
        for op in [BooleanOp::Union, BooleanOp::Intersection] {
            let r = lang_boolean(op, r1, Some(r2), &limits()).unwrap();
            if !member(&r).member {
                return Err(format!("{op:?} of members is not a member"));
            }
            combos += 1;
        }
    }
    for r in &langs {
        if !member(&lang_boolean(BooleanOp::Complement, r, None, &limits()).unwrap()).member {
            return Err("complement of a member is not a member".into());
        }
        combos += 1;
    }
    Ok(format!("3 closures pass ϑ and BPS, {combos} Boolean combinations"))
}

fn c11_filter_laws() -> Result<String, String> {
    let u = sig1_universe(4);
    let mut views = 0;
    for (name, closed) in closures(&u) {
        for g in [one_gen(), two_gens()] {
            let set = congruence_formation_query(&closed, &u, &g, 4, &limits()).unwrap();
            let f = filter_laws_check(&set, &closed, &u, &limits()).unwrap();
            if !f.holds {
                return Err(format!("filter laws fail on the closure of {name}"));
            }
            views += 1;
        }
    }
    let closed = closure_of(&u, 4, &[cyc2()]).closed;
    let set = congruence_formation_query(&closed, &u, &one_gen(), 4, &limits()).unwrap();
    let at_cyc2 = u.locate(&cyc2(), &limits()).unwrap().unwrap();
    let kernels: Vec<&KernelPresentation> = set
        .kernels
        .iter()
        .zip(&set.members)
        .filter(|(_, &m)| m == at_cyc2)
        .map(|(k, _)| k)
        .collect();
    if kernels.len() != 2 {
        return Err(format!("{} one-generator CYC2 kernels", kernels.len()));
    }
    let meet = joint_image(&[kernels[0], kernels[1]]).unwrap();
    let r1 = kernels[0].recognizer(SortedSubset::empty(kernels[0].algebra.carriers())).unwrap();
    let r2 = kernels[1].recognizer(SortedSubset::empty(kernels[1].algebra.carriers())).unwrap();
    let prod = lang_boolean(BooleanOp::Union, &r1, Some(&r2), &limits()).unwrap();
    let (image, _) = prod.algebra().image_of(prod.assign()).unwrap();
    if are_isomorphic(&image, &meet.algebra, &limits()).unwrap().is_none() {
        return Err("the product recognizer does not realize the meet".into());
    }
    let at = u.locate(&meet.algebra, &limits()).unwrap().unwrap();
    if set.find(&meet.presentation(&one_gen()), at).unwrap().is_none() {
        return Err("the meet is not in the set".into());
    }
    Ok(format!("{views} views; meet of the CYC2 kernels has {} elements", meet.algebra.total_size()))
}

fn run_cli(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_manysorted"))
        .args(args)
        .output()
        .expect("the CLI runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn c12_cli_determinism() -> Result<String, String> {
    let ws = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/workspace.ms");
    let commands: Vec<Vec<&str>> = vec![
        vec!["check"],
        vec!["congruences", "CYC4"],
        vec!["omega", "CYC4", "--accept", "s:0,2"],
        vec!["syntactic", "--recognizer", "evenF"],
        vec!["saturate", "CYC4", "--subset", "s:0", "--pair", "s:0,1", "--congruence"],
        vec!["lang", "union", "--left", "evenF", "--right", "xIsOne"],
        vec!["lang", "inter", "--left", "evenF", "--right", "xIsOne"],
        vec!["lang", "compl", "--recognizer", "evenF"],
        vec!["lang", "inv-ctx", "--recognizer", "evenF", "--hole-sort", "s", "--context", "(f (_))"],
        vec!["lang", "inv-hom", "--recognizer", "evenF", "--map", "x=(f (x))"],
        vec!["formation", "close", "--seed", "CYC4", "--max-carrier", "4"],
        vec!["formation", "member", "--pool", "P", "--recognizer", "evenF"],
        vec!["formation", "is-formation", "--pool", "P"],
        vec!["eilenberg", "theta", "--pool", "P2", "--gens", "X"],
        vec!["eilenberg", "vartheta", "--pool", "P2", "--gens", "X"],
        vec!["eilenberg", "bps", "--pool", "P2", "--gens", "X"],
    ];
    for cmd in &commands {
        let mut args = vec!["-w", ws, "--json", "--no-timings"];
        args.extend(cmd);
        let (first, code1) = run_cli(&args);
        let (second, code2) = run_cli(&args);
        if first != second || code1 != code2 {
            return Err(format!("`{}` is not deterministic", cmd.join(" ")));
        }
        if code1 > 1 || serde_json::from_slice::<serde_json::Value>(&first).is_err() {
            return Err(format!("`{}` failed with exit {code1}", cmd.join(" ")));
        }
    }
    Ok(format!("{} commands byte-identical", commands.len()))
}

type Check = fn() -> Result<String, String>;

fn main() {
    let criteria: Vec<(&str, Check)> = vec![
        ("omega equals the brute-force greatest saturating congruence", c1_omega_oracle),
        ("congruence deciders agree", c2_decider_agreement),
        ("classes are rebuilt from translation preimages", c3_class_reconstruction),
        ("omega pulls back along epimorphisms", c4_pullback_law),
        ("congruences are meets of class-delta omegas", c5_congruence_recovery),
        ("saturation laws", c6_saturation_laws),
        ("standard and meet-quotient formation verdicts agree", c7_shsk_equivalence),
        ("closure of CYC4 at bound 4", c8_closure_correctness),
        ("algebra and congruence formations correspond", c9_theta_roundtrip),
        ("congruence and language formations correspond", c10_vartheta_bps),
        ("induced kernel sets are filters", c11_filter_laws),
        ("CLI output is deterministic", c12_cli_determinism),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.into_iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail})", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", n + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
