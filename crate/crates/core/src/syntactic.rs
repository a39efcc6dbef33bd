//! The syntactic congruence `Ω^A(L)` on finite algebras, and regular
//! languages over free algebras presented by finite recognizers.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::algebra::{product, Congruence, FiniteAlgebra, Homomorphism, Limits};
use crate::error::{Error, Result};
use crate::signature::Signature;
use crate::sorted::{SortedEquivalence, SortedMap, SortedSet, SortedSubset};
use crate::term::{evaluate, parse_term_at, GeneratorSet, Substitution, Term};
use crate::translations::{enumerate_translations_as_functions, inverse_image_translation};

/// The greatest congruence on `alg` saturating `l`.
///
/// Moore-style refinement: starting from the two-block kernel of the
/// characteristic map of `l`, every element is re-keyed by its block
/// together with the blocks of its images under all elementary
/// translations, until the number of blocks stops growing.
pub fn omega_finite(alg: &FiniteAlgebra, l: &SortedSubset) -> Result<Congruence> {
    if l.ambient() != alg.carriers() {
        return Err(Error::AmbientMismatch("subset is not on the algebra's carriers".into()));
    }
    let sig = alg.sig().clone();
    let mut eq = SortedEquivalence::characteristic_kernel(l);
    let mut blocks: usize = eq.class_counts().iter().sum();
    loop {
        let mut keys: Vec<Vec<Vec<usize>>> = (0..alg.num_sorts())
            .map(|s| (0..alg.size(s)).map(|x| vec![eq.class_of(s, x)]).collect())
            .collect();
        // table order fixes the frozen arguments in lexicographic order, so
        // each key lists T(x)'s block for every elementary translation T
        for (op, decl) in sig.ops().iter().enumerate() {
            for (i, &t) in decl.arity.iter().enumerate() {
                alg.for_each_entry(op, |args, v| {
                    keys[t][args[i]].push(eq.class_of(decl.coarity, v));
                });
            }
        }
        let labels = keys
            .into_iter()
            .map(|per_sort| {
                let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
                per_sort
                    .into_iter()
                    .map(|k| {
                        let next = ids.len();
                        *ids.entry(k).or_insert(next)
                    })
                    .collect()
            })
            .collect();
        let next = SortedEquivalence::from_labels(alg.carriers(), labels)?;
        let n: usize = next.class_counts().iter().sum();
        eq = next;
        if n == blocks {
            return Ok(Congruence::trusted(eq));
        }
        blocks = n;
    }
}

/// A regular language over `T_Σ(generators)`: the terms whose value under
/// `assign` lies in `accept`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recognizer {
    generators: GeneratorSet,
    algebra: FiniteAlgebra,
    assign: SortedMap,
    accept: SortedSubset,
}

impl Recognizer {
    pub fn new(
        generators: &GeneratorSet,
        algebra: &FiniteAlgebra,
        assign: SortedMap,
        accept: SortedSubset,
    ) -> Result<Self> {
        if generators.sorts() != algebra.sig().sorts() {
            return Err(Error::GeneratorMismatch("generator sorts differ from the signature".into()));
        }
        if assign.domain() != generators.as_sorted_set() || assign.codomain() != algebra.carriers() {
            return Err(Error::AmbientMismatch("assignment is not generators → carriers".into()));
        }
        if accept.ambient() != algebra.carriers() {
            return Err(Error::AmbientMismatch("accepting set is not on the carriers".into()));
        }
        Ok(Recognizer {
            generators: generators.clone(),
            algebra: algebra.clone(),
            assign,
            accept,
        })
    }

    /// Convenience constructor from per-generator images and per-sort
    /// accepting element indices.
    pub fn from_parts(
        generators: &GeneratorSet,
        algebra: &FiniteAlgebra,
        images: Vec<Vec<usize>>,
        accept: Vec<BTreeSet<usize>>,
    ) -> Result<Self> {
        let assign = SortedMap::new(generators.as_sorted_set(), algebra.carriers(), images)?;
        let accept = SortedSubset::new(algebra.carriers(), accept)?;
        Recognizer::new(generators, algebra, assign, accept)
    }

    pub fn sig(&self) -> &Signature {
        self.algebra.sig()
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.generators
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn assign(&self) -> &SortedMap {
        &self.assign
    }

    pub fn accept(&self) -> &SortedSubset {
        &self.accept
    }

    /// Whether `t` belongs to the presented language.
    pub fn contains(&self, t: &Term) -> Result<bool> {
        let sort = t.check(self.sig(), &self.generators)?;
        Ok(self.accept.contains(sort, evaluate(t, &self.algebra, &self.assign)))
    }

    pub fn syntactic_quotient(&self) -> Result<SyntacticQuotient> {
        syntactic_quotient(self)
    }
}

/// `membership(R, t)`.
pub fn membership(r: &Recognizer, t: &Term) -> Result<bool> {
    r.contains(t)
}

/// The syntactic algebra of a recognizer's language with everything needed
/// to relate it back to the recognizer.
#[derive(Debug, Clone)]
pub struct SyntacticQuotient {
    /// The subalgebra reached from the generators.
    pub image: FiniteAlgebra,
    pub inclusion: Homomorphism,
    /// `Ω` of the accepted part of the image.
    pub omega: Congruence,
    pub quotient: FiniteAlgebra,
    pub projection: Homomorphism,
    /// Generators to quotient classes.
    pub assign: SortedMap,
    pub accept: SortedSubset,
    pub class_counts: Vec<usize>,
    /// Total number of classes. Always finite for recognizer-presented
    /// languages.
    pub index: usize,
}

impl SyntacticQuotient {
    /// The minimal recognizer: quotient algebra, induced assignment and
    /// accepting classes. Presents the same language.
    pub fn as_recognizer(&self, generators: &GeneratorSet) -> Result<Recognizer> {
        Recognizer::new(generators, &self.quotient, self.assign.clone(), self.accept.clone())
    }
}

pub fn syntactic_quotient(r: &Recognizer) -> Result<SyntacticQuotient> {
    let (image, inclusion) = r.algebra.image_of(&r.assign)?;
    let accept_image = inclusion.map().inverse_image(&r.accept)?;
    let omega = omega_finite(&image, &accept_image)?;
    let (quotient, projection) = image.quotient(&omega)?;
    // generators → image → quotient
    let images = (0..image.num_sorts())
        .map(|s| {
            r.assign.images()[s]
                .iter()
                .map(|&b| {
                    let x = inclusion.map().images()[s].iter().position(|&y| y == b).expect("in image");
                    projection.apply(s, x)
                })
                .collect()
        })
        .collect();
    let assign = SortedMap::new(r.generators.as_sorted_set(), quotient.carriers(), images)?;
    let accept = projection.map().direct_image(&accept_image)?;
    let class_counts = omega.class_counts();
    let index = class_counts.iter().sum();
    Ok(SyntacticQuotient {
        image,
        inclusion,
        omega,
        quotient,
        projection,
        assign,
        accept,
        class_counts,
        index,
    })
}

/// The contexts separating `a` relative to `l`, and the class rebuilt from
/// them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassDescription {
    /// Distinct sets `T^{-1}[L_s]` over translations with `T(a) ∈ L_s`.
    pub positive: Vec<BTreeSet<usize>>,
    /// Distinct sets `T^{-1}[L_s]` over translations with `T(a) ∉ L_s`.
    pub negative: Vec<BTreeSet<usize>>,
    /// `⋂ positive − ⋃ negative`, with the empty intersection read as the
    /// whole carrier.
    pub class: BTreeSet<usize>,
}

pub fn class_description(
    alg: &FiniteAlgebra,
    l: &SortedSubset,
    t: usize,
    a: usize,
    limits: &Limits,
) -> Result<ClassDescription> {
    if l.ambient() != alg.carriers() {
        return Err(Error::AmbientMismatch("subset is not on the algebra's carriers".into()));
    }
    if a >= alg.size(t) {
        return Err(Error::AmbientMismatch(format!("element {a} outside the carrier")));
    }
    let mut positive = BTreeSet::new();
    let mut negative = BTreeSet::new();
    for group in enumerate_translations_as_functions(alg, t, limits)? {
        for tr in group {
            let pre = inverse_image_translation(&tr, l)?.members(t).clone();
            if l.contains(tr.target_sort(), tr.apply(a)) {
                positive.insert(pre);
            } else {
                negative.insert(pre);
            }
        }
    }
    let mut class: BTreeSet<usize> = (0..alg.size(t)).collect();
    for p in &positive {
        class = class.intersection(p).copied().collect();
    }
    for n in &negative {
        class = class.difference(n).copied().collect();
    }
    Ok(ClassDescription {
        positive: positive.into_iter().collect(),
        negative: negative.into_iter().collect(),
        class,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BooleanOp {
    Union,
    Intersection,
    Complement,
}

/// Union and intersection through the product recognizer; complement flips
/// the accepting set.
pub fn lang_boolean(
    op: BooleanOp,
    r1: &Recognizer,
    r2: Option<&Recognizer>,
    limits: &Limits,
) -> Result<Recognizer> {
    if op == BooleanOp::Complement {
        return Recognizer::new(&r1.generators, &r1.algebra, r1.assign.clone(), r1.accept.complement());
    }
    let r2 = r2.ok_or_else(|| Error::GeneratorMismatch("a second recognizer is required".into()))?;
    if r1.sig() != r2.sig() {
        return Err(Error::SignatureMismatch("recognizers over different signatures".into()));
    }
    if r1.generators != r2.generators {
        return Err(Error::GeneratorMismatch("recognizers over different generators".into()));
    }
    let prod = product(r1.sig(), &[r1.algebra.clone(), r2.algebra.clone()], limits)?;
    let images = (0..r1.algebra.num_sorts())
        .map(|s| {
            r1.assign.images()[s]
                .iter()
                .zip(&r2.assign.images()[s])
                .map(|(&x, &y)| prod.encode(s, &[x, y]))
                .collect()
        })
        .collect();
    let accept = (0..r1.algebra.num_sorts())
        .map(|s| {
            (0..prod.algebra.size(s))
                .filter(|&z| {
                    let c = prod.decode(s, z);
                    let (a, b) = (r1.accept.contains(s, c[0]), r2.accept.contains(s, c[1]));
                    match op {
                        BooleanOp::Union => a || b,
                        _ => a && b,
                    }
                })
                .collect()
        })
        .collect();
    Recognizer::from_parts(&r1.generators, &prod.algebra, images, accept)
}

/// The name reserved for the hole of a context.
pub const HOLE: &str = "_";

/// A term over the generators plus one hole variable occurring exactly
/// once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    generators: GeneratorSet,
    extended: GeneratorSet,
    hole_sort: usize,
    hole_index: usize,
    term: Term,
}

impl Context {
    /// Parses a context; the hole is written `(_)` and has sort `hole_sort`.
    pub fn parse(sig: &Signature, generators: &GeneratorSet, hole_sort: usize, text: &str) -> Result<Self> {
        let (extended, hole_index) = generators.with_var(HOLE, hole_sort)?;
        let term = crate::term::parse_term(text, sig, &extended)?;
        Context::new(sig, generators, &extended, hole_sort, hole_index, term)
    }

    fn new(
        sig: &Signature,
        generators: &GeneratorSet,
        extended: &GeneratorSet,
        hole_sort: usize,
        hole_index: usize,
        term: Term,
    ) -> Result<Self> {
        term.check(sig, extended)?;
        let n = term.occurrences(hole_sort, hole_index);
        if n != 1 {
            return Err(Error::SortMismatch(format!(
                "a context needs exactly one hole, found {n}"
            )));
        }
        Ok(Context {
            generators: generators.clone(),
            extended: extended.clone(),
            hole_sort,
            hole_index,
            term,
        })
    }

    /// The bare hole.
    pub fn hole(sig: &Signature, generators: &GeneratorSet, hole_sort: usize) -> Result<Self> {
        let (extended, hole_index) = generators.with_var(HOLE, hole_sort)?;
        let term = Term::var(hole_sort, hole_index);
        Context::new(sig, generators, &extended, hole_sort, hole_index, term)
    }

    pub fn hole_sort(&self) -> usize {
        self.hole_sort
    }

    pub fn target_sort(&self, sig: &Signature) -> usize {
        self.term.sort(sig)
    }

    pub fn term(&self) -> &Term {
        &self.term
    }

    /// `C[u]`.
    pub fn fill(&self, sig: &Signature, u: &Term) -> Result<Term> {
        let images = (0..self.extended.sorts().len())
            .map(|s| {
                (0..self.extended.as_sorted_set().size(s))
                    .map(|i| {
                        if (s, i) == (self.hole_sort, self.hole_index) {
                            u.clone()
                        } else {
                            Term::var(s, i)
                        }
                    })
                    .collect()
            })
            .collect();
        Substitution::new(sig, &self.extended, &self.generators, images).map(|sub| sub.apply(&self.term))
    }
}

/// `C^{-1}[L]`: the terms `u` of the hole sort with `C[u] ∈ L`.
pub fn lang_inverse_translation(r: &Recognizer, ctx: &Context) -> Result<Recognizer> {
    if ctx.generators != r.generators {
        return Err(Error::GeneratorMismatch("context over different generators".into()));
    }
    let alg = &r.algebra;
    let target = ctx.target_sort(alg.sig());
    let t = ctx.hole_sort;
    let mut accept = vec![BTreeSet::new(); alg.num_sorts()];
    for b in 0..alg.size(t) {
        let mut images = r.assign.images().to_vec();
        images[t].insert(ctx.hole_index, b);
        let assign = SortedMap::new(ctx.extended.as_sorted_set(), alg.carriers(), images)?;
        if r.accept.contains(target, evaluate(&ctx.term, alg, &assign)) {
            accept[t].insert(b);
        }
    }
    Recognizer::new(
        &r.generators,
        alg,
        r.assign.clone(),
        SortedSubset::new(alg.carriers(), accept)?,
    )
}

/// `(g^♯)^{-1}[L]` for a substitution `g` into the recognizer's generators.
pub fn lang_inverse_hom(r: &Recognizer, g: &Substitution) -> Result<Recognizer> {
    if g.target() != &r.generators {
        return Err(Error::GeneratorMismatch(
            "substitution does not land in the recognizer's generators".into(),
        ));
    }
    let assign = g.evaluate_into(&r.algebra, &r.assign);
    Recognizer::new(g.source(), &r.algebra, assign, r.accept.clone())
}

/// A recognizer for a finite list of terms: one state per distinct subterm
/// plus a sink per sort.
pub fn recognizer_from_terms(sig: &Signature, generators: &GeneratorSet, terms: &[Term]) -> Result<Recognizer> {
    let mut states: Vec<BTreeSet<Term>> = vec![BTreeSet::new(); sig.num_sorts()];
    let mut stack: Vec<&Term> = Vec::new();
    for t in terms {
        t.check(sig, generators)?;
        stack.push(t);
    }
    while let Some(t) = stack.pop() {
        if states[t.sort(sig)].insert(t.clone()) {
            if let Term::App { args, .. } = t {
                stack.extend(args.iter());
            }
        }
    }
    let index: Vec<BTreeMap<&Term, usize>> = states
        .iter()
        .map(|set| set.iter().enumerate().map(|(i, t)| (t, i)).collect())
        .collect();
    let sink: Vec<usize> = states.iter().map(BTreeSet::len).collect();
    let names: Vec<Vec<String>> = states
        .iter()
        .map(|set| {
            set.iter()
                .map(|t| t.display(sig, generators).to_string())
                .chain(["⊥".to_string()])
                .collect()
        })
        .collect();
    let carriers = SortedSet::new(sig.sorts().to_vec(), names)?;
    let as_terms: Vec<Vec<&Term>> = states.iter().map(|s| s.iter().collect()).collect();
    let algebra = FiniteAlgebra::from_fn(sig, &carriers, |op, args| {
        let decl = sig.op(op);
        let mut sub = Vec::with_capacity(args.len());
        for (&a, &s) in args.iter().zip(&decl.arity) {
            if a == sink[s] {
                return sink[decl.coarity];
            }
            sub.push(as_terms[s][a].clone());
        }
        let t = Term::app(op, sub);
        index[decl.coarity].get(&t).copied().unwrap_or(sink[decl.coarity])
    })?;
    let images = (0..sig.num_sorts())
        .map(|s| {
            (0..generators.as_sorted_set().size(s))
                .map(|i| index[s].get(&Term::var(s, i)).copied().unwrap_or(sink[s]))
                .collect()
        })
        .collect();
    let mut accept = vec![BTreeSet::new(); sig.num_sorts()];
    for t in terms {
        accept[t.sort(sig)].insert(index[t.sort(sig)][t]);
    }
    Recognizer::from_parts(generators, &algebra, images, accept)
}

/// Parses `text` as a term of `sort` and tests membership.
pub fn membership_text(r: &Recognizer, text: &str, sort: usize) -> Result<bool> {
    let t = parse_term_at(text, r.sig(), &r.generators, sort)?;
    r.contains(&t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::term::{parse_term, terms_up_to_depth};

    fn brute_omega(alg: &FiniteAlgebra, l: &SortedSubset) -> Congruence {
        let ker = SortedEquivalence::characteristic_kernel(l);
        alg.congruences(&Limits::default())
            .unwrap()
            .into_iter()
            .filter(|c| c.refines(&ker))
            .reduce(|acc, c| if acc.refines(&c) { c } else { acc })
            .unwrap()
    }

    fn even_f() -> Recognizer {
        let sig = fixtures::sig1();
        let gens = GeneratorSet::new(&sig, &[("x", "s")]).unwrap();
        Recognizer::from_parts(&gens, &fixtures::cyc2(), vec![vec![0]], vec![[0].into()]).unwrap()
    }

    #[test]
    fn omega_examples() {
        let id3 = fixtures::id3();
        let full = SortedSubset::full(id3.carriers());
        assert!(omega_finite(&id3, &full).unwrap().is_total());
        let l = SortedSubset::delta(id3.carriers(), 0, [0]).unwrap();
        let o = omega_finite(&id3, &l).unwrap();
        assert_eq!(o.blocks(0), vec![vec![0], vec![1, 2]]);
        assert_eq!(o, brute_omega(&id3, &l));

        let cyc4 = fixtures::cyc4();
        let l = SortedSubset::delta(cyc4.carriers(), 0, [0]).unwrap();
        assert!(omega_finite(&cyc4, &l).unwrap().is_identity());
    }

    #[test]
    fn omega_matches_brute_force_on_fixtures() {
        for (name, a) in fixtures::small_fixtures() {
            for l in SortedSubset::all_subsets(a.carriers()) {
                let o = omega_finite(&a, &l).unwrap();
                assert_eq!(o, brute_omega(&a, &l), "{name}");
                assert_eq!(o, omega_finite(&a, &l.complement()).unwrap(), "{name}");
            }
        }
    }

    #[test]
    fn syntactic_examples() {
        let r = even_f();
        let q = r.syntactic_quotient().unwrap();
        assert_eq!(q.image.total_size(), 2);
        assert!(q.omega.is_identity());
        assert_eq!(q.index, 2);
        assert!(crate::iso::are_isomorphic(&q.quotient, &fixtures::cyc2(), &Limits::default())
            .unwrap()
            .is_some());

        for accept in [vec![BTreeSet::new()], vec![[0, 1].into()]] {
            let r2 = Recognizer::from_parts(r.generators(), r.algebra(), vec![vec![0]], accept).unwrap();
            let q = r2.syntactic_quotient().unwrap();
            assert!(q.omega.is_total());
            assert!(q.quotient.is_subfinal());
        }
    }

    #[test]
    fn syntactic_recognizer_presents_same_language() {
        let r = even_f();
        let q = r.syntactic_quotient().unwrap();
        let minimal = q.as_recognizer(r.generators()).unwrap();
        for t in terms_up_to_depth(r.sig(), r.generators(), 5, 100).concat() {
            assert_eq!(r.contains(&t).unwrap(), minimal.contains(&t).unwrap());
        }
    }

    #[test]
    fn membership_examples() {
        let r = even_f();
        let none = r.generators();
        assert!(r.contains(&parse_term("(c)", r.sig(), none).unwrap()).unwrap());
        assert!(!r.contains(&parse_term("(f (c))", r.sig(), none).unwrap()).unwrap());
        let empty = Recognizer::from_parts(none, r.algebra(), vec![vec![0]], vec![BTreeSet::new()]).unwrap();
        assert!(!empty.contains(&parse_term("(c)", r.sig(), none).unwrap()).unwrap());
    }

    #[test]
    fn class_description_examples() {
        let limits = Limits::default();
        let id3 = fixtures::id3();
        let full = SortedSubset::full(id3.carriers());
        let d = class_description(&id3, &full, 0, 1, &limits).unwrap();
        assert!(d.negative.is_empty());
        assert_eq!(d.class, [0, 1, 2].into());

        let l = SortedSubset::delta(id3.carriers(), 0, [0]).unwrap();
        let d = class_description(&id3, &l, 0, 1, &limits).unwrap();
        assert!(d.positive.is_empty());
        assert!(d.negative.contains(&[0].into()));
        assert_eq!(d.class, [1, 2].into());

        let cyc4 = fixtures::cyc4();
        let l = SortedSubset::delta(cyc4.carriers(), 0, [0]).unwrap();
        assert_eq!(class_description(&cyc4, &l, 0, 0, &limits).unwrap().class, [0].into());
    }

    #[test]
    fn boolean_examples() {
        let limits = Limits::default();
        let r = even_f();
        let odd = lang_boolean(BooleanOp::Complement, &r, None, &limits).unwrap();
        let all = lang_boolean(BooleanOp::Union, &r, Some(&odd), &limits).unwrap();
        let same = lang_boolean(BooleanOp::Intersection, &r, Some(&r), &limits).unwrap();
        let none = lang_boolean(BooleanOp::Intersection, &r, Some(&odd), &limits).unwrap();
        for t in terms_up_to_depth(r.sig(), r.generators(), 6, 100).concat() {
            assert!(all.contains(&t).unwrap());
            assert_eq!(same.contains(&t).unwrap(), r.contains(&t).unwrap());
            assert!(!none.contains(&t).unwrap());
        }
        let q = all.syntactic_quotient().unwrap();
        assert!(q.accept == SortedSubset::full(q.quotient.carriers()));
    }

    #[test]
    fn inverse_translation_examples() {
        let r = even_f();
        let sig = r.sig().clone();
        let gens = r.generators().clone();
        let hole = Context::hole(&sig, &gens, 0).unwrap();
        let same = lang_inverse_translation(&r, &hole).unwrap();
        let f1 = Context::parse(&sig, &gens, 0, "(f (_))").unwrap();
        let odd = lang_inverse_translation(&r, &f1).unwrap();
        let f2 = Context::parse(&sig, &gens, 0, "(f (f (_)))").unwrap();
        let even = lang_inverse_translation(&r, &f2).unwrap();
        for t in terms_up_to_depth(&sig, &gens, 6, 100).concat() {
            let m = r.contains(&t).unwrap();
            assert_eq!(same.contains(&t).unwrap(), m);
            assert_eq!(odd.contains(&t).unwrap(), !m);
            assert_eq!(even.contains(&t).unwrap(), m);
            assert_eq!(odd.contains(&t).unwrap(), r.contains(&f1.fill(&sig, &t).unwrap()).unwrap());
        }
        assert!(Context::parse(&sig, &gens, 0, "(f (x))").is_err());
    }

    #[test]
    fn inverse_hom_examples() {
        let r = even_f();
        let sig = r.sig().clone();
        let gens = r.generators().clone();
        let id = Substitution::identity(&sig, &gens);
        assert_eq!(lang_inverse_hom(&r, &id).unwrap(), r);

        let fx = Substitution::parse(&sig, &gens, &gens, &[("x", "(f (x))")]).unwrap();
        let odd = lang_inverse_hom(&r, &fx).unwrap();
        assert_eq!(odd.assign().apply(0, 0), 1);
        let c = Substitution::parse(&sig, &gens, &gens, &[("x", "(c)")]).unwrap();
        let pulled = lang_inverse_hom(&r, &c).unwrap();
        for t in terms_up_to_depth(&sig, &gens, 6, 100).concat() {
            assert_eq!(odd.contains(&t).unwrap(), r.contains(&fx.apply(&t)).unwrap());
            assert_eq!(pulled.contains(&t).unwrap(), r.contains(&c.apply(&t)).unwrap());
        }
    }

    #[test]
    fn finite_term_lists() {
        let sig = fixtures::sig2();
        let gens = GeneratorSet::new(&sig, &[("v", "e")]).unwrap();
        let listed: Vec<Term> = ["(p (g (v)))", "(tt)", "(g (g (v)))"]
            .iter()
            .map(|s| parse_term(s, &sig, &gens).unwrap())
            .collect();
        let r = recognizer_from_terms(&sig, &gens, &listed).unwrap();
        for t in terms_up_to_depth(&sig, &gens, 5, 200).concat() {
            assert_eq!(r.contains(&t).unwrap(), listed.contains(&t), "{}", t.display(&sig, &gens));
        }
    }
}
