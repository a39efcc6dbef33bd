//! One-hole contexts on finite algebras and their compositions.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::algebra::{FiniteAlgebra, Homomorphism, Limits};
use crate::error::{Error, Result};
use crate::sorted::{SortedEquivalence, SortedSubset};

/// `σ(a_0, …, □, …, a_{n-1})`: operation `op` with argument `hole` left
/// open and every other argument frozen. `frozen` lists the frozen
/// arguments in position order, skipping the hole.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementaryTranslation {
    pub op: usize,
    pub hole: usize,
    pub frozen: Vec<usize>,
}

impl ElementaryTranslation {
    pub fn hole_sort(&self, alg: &FiniteAlgebra) -> usize {
        alg.sig().op(self.op).arity[self.hole]
    }

    pub fn target_sort(&self, alg: &FiniteAlgebra) -> usize {
        alg.sig().op(self.op).coarity
    }

    fn args_with(&self, x: usize) -> Vec<usize> {
        let mut args = Vec::with_capacity(self.frozen.len() + 1);
        args.extend_from_slice(&self.frozen[..self.hole]);
        args.push(x);
        args.extend_from_slice(&self.frozen[self.hole..]);
        args
    }

    pub fn apply(&self, alg: &FiniteAlgebra, x: usize) -> usize {
        alg.apply(self.op, &self.args_with(x))
    }

    fn check(&self, alg: &FiniteAlgebra) -> Result<()> {
        let sig = alg.sig();
        let bad = || Error::SortMismatch("malformed elementary translation".into());
        let decl = sig.ops().get(self.op).ok_or_else(bad)?;
        if self.hole >= decl.arity.len() || self.frozen.len() + 1 != decl.arity.len() {
            return Err(bad());
        }
        let sorts = decl.arity.iter().enumerate().filter(|(i, _)| *i != self.hole);
        for ((_, &s), &a) in sorts.zip(&self.frozen) {
            if a >= alg.size(s) {
                return Err(bad());
            }
        }
        Ok(())
    }

    fn render(&self, alg: &FiniteAlgebra, inner: &str) -> String {
        let decl = alg.sig().op(self.op);
        let args: Vec<String> = self
            .args_with(usize::MAX)
            .iter()
            .zip(&decl.arity)
            .map(|(&a, &s)| {
                if a == usize::MAX {
                    inner.to_string()
                } else {
                    alg.carriers().element_name(s, a).to_string()
                }
            })
            .collect();
        format!("{}({})", decl.name, args.join(", "))
    }
}

/// How a translation is built: the identity at a sort, or a nonempty chain
/// of elementary translations applied first to last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Steps {
    Identity,
    Chain(Vec<ElementaryTranslation>),
}

/// A translation `A_t → A_s` together with the function it induces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Translation {
    hole_sort: usize,
    target_sort: usize,
    steps: Steps,
    function: Vec<usize>,
}

impl Translation {
    pub fn identity(alg: &FiniteAlgebra, sort: usize) -> Self {
        Translation {
            hole_sort: sort,
            target_sort: sort,
            steps: Steps::Identity,
            function: (0..alg.size(sort)).collect(),
        }
    }

    pub fn elementary(alg: &FiniteAlgebra, e: ElementaryTranslation) -> Result<Self> {
        e.check(alg)?;
        let t = e.hole_sort(alg);
        Ok(Translation {
            hole_sort: t,
            target_sort: e.target_sort(alg),
            function: (0..alg.size(t)).map(|x| e.apply(alg, x)).collect(),
            steps: Steps::Chain(vec![e]),
        })
    }

    /// Builds a translation from a chain; an empty chain is rejected.
    pub fn chain(alg: &FiniteAlgebra, chain: Vec<ElementaryTranslation>) -> Result<Self> {
        let mut it = chain.into_iter();
        let first = it
            .next()
            .ok_or_else(|| Error::SortMismatch("empty translation chain".into()))?;
        let mut t = Translation::elementary(alg, first)?;
        for e in it {
            t = t.then(alg, e)?;
        }
        Ok(t)
    }

    /// `e ∘ self`.
    pub fn then(&self, alg: &FiniteAlgebra, e: ElementaryTranslation) -> Result<Self> {
        e.check(alg)?;
        if e.hole_sort(alg) != self.target_sort {
            return Err(Error::SortMismatch("translation chain sorts do not compose".into()));
        }
        let mut chain = match &self.steps {
            Steps::Identity => Vec::new(),
            Steps::Chain(c) => c.clone(),
        };
        let function = self.function.iter().map(|&y| e.apply(alg, y)).collect();
        let target_sort = e.target_sort(alg);
        chain.push(e);
        Ok(Translation {
            hole_sort: self.hole_sort,
            target_sort,
            steps: Steps::Chain(chain),
            function,
        })
    }

    pub fn hole_sort(&self) -> usize {
        self.hole_sort
    }

    pub fn target_sort(&self) -> usize {
        self.target_sort
    }

    pub fn steps(&self) -> &Steps {
        &self.steps
    }

    pub fn is_identity(&self) -> bool {
        self.steps == Steps::Identity
    }

    /// The induced function as a vector over the hole-sort carrier.
    pub fn function(&self) -> &[usize] {
        &self.function
    }

    pub fn apply(&self, x: usize) -> usize {
        self.function[x]
    }

    /// The context as nested applications around `□`.
    pub fn display<'a>(&'a self, alg: &'a FiniteAlgebra) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Translation, &'a FiniteAlgebra);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let mut s = "□".to_string();
                if let Steps::Chain(c) = &self.0.steps {
                    for e in c {
                        s = e.render(self.1, &s);
                    }
                }
                f.write_str(&s)
            }
        }
        D(self, alg)
    }
}

/// Every elementary translation with hole sort `t`, grouped by target sort.
/// Within a group: by operation, hole position, then frozen tuple in
/// lexicographic order.
pub fn enumerate_elementary(
    alg: &FiniteAlgebra,
    t: usize,
    limits: &Limits,
) -> Result<Vec<Vec<ElementaryTranslation>>> {
    let sig = alg.sig();
    let mut out = vec![Vec::new(); alg.num_sorts()];
    let mut total: u128 = 0;
    for (op, decl) in sig.ops().iter().enumerate() {
        for (hole, &s) in decl.arity.iter().enumerate() {
            if s != t {
                continue;
            }
            let frozen_sorts: Vec<usize> = decl
                .arity
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != hole)
                .map(|(_, &w)| w)
                .collect();
            let count = frozen_sorts
                .iter()
                .fold(1u128, |acc, &w| acc.saturating_mul(alg.size(w) as u128));
            total = total.saturating_add(count);
            if total > limits.max_homs {
                return Err(Error::BoundExceeded {
                    what: "elementary translations".into(),
                    needed: total,
                    limit: limits.max_homs,
                });
            }
            let ranges = frozen_sorts.iter().map(|&w| 0..alg.size(w));
            if frozen_sorts.is_empty() {
                out[decl.coarity].push(ElementaryTranslation {
                    op,
                    hole,
                    frozen: vec![],
                });
            } else {
                for frozen in itertools::Itertools::multi_cartesian_product(ranges) {
                    out[decl.coarity].push(ElementaryTranslation { op, hole, frozen });
                }
            }
        }
    }
    Ok(out)
}

/// The distinct functions induced by translations with hole sort `t`,
/// grouped by target sort and sorted by function vector. Each comes with a
/// shortest chain inducing it; the identity at `t` is always present.
pub fn enumerate_translations_as_functions(
    alg: &FiniteAlgebra,
    t: usize,
    limits: &Limits,
) -> Result<Vec<Vec<Translation>>> {
    let elementary: Vec<Vec<ElementaryTranslation>> = (0..alg.num_sorts())
        .map(|s| enumerate_elementary(alg, s, limits).map(|g| g.into_iter().flatten().collect()))
        .collect::<Result<_>>()?;
    let mut found: Vec<BTreeMap<Vec<usize>, Translation>> = vec![BTreeMap::new(); alg.num_sorts()];
    let id = Translation::identity(alg, t);
    found[t].insert(id.function.clone(), id.clone());
    let mut queue = VecDeque::from([id]);
    let mut total: u128 = 1;
    while let Some(cur) = queue.pop_front() {
        for e in &elementary[cur.target_sort] {
            let next = cur.then(alg, e.clone())?;
            let slot = &mut found[next.target_sort];
            if !slot.contains_key(&next.function) {
                total += 1;
                if total > limits.max_homs {
                    return Err(Error::BoundExceeded {
                        what: "translation functions".into(),
                        needed: total,
                        limit: limits.max_homs,
                    });
                }
                slot.insert(next.function.clone(), next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(found.into_iter().map(|m| m.into_values().collect()).collect())
}

fn map_steps(
    steps: &Steps,
    src: &FiniteAlgebra,
    mut map: impl FnMut(usize, usize) -> Result<usize>,
) -> Result<Vec<ElementaryTranslation>> {
    let Steps::Chain(chain) = steps else {
        return Ok(Vec::new());
    };
    let sig = src.sig();
    chain
        .iter()
        .map(|e| {
            let decl = sig.op(e.op);
            let sorts = decl.arity.iter().enumerate().filter(|(i, _)| *i != e.hole);
            let frozen = sorts
                .zip(&e.frozen)
                .map(|((_, &s), &a)| map(s, a))
                .collect::<Result<_>>()?;
            Ok(ElementaryTranslation {
                op: e.op,
                hole: e.hole,
                frozen,
            })
        })
        .collect()
}

/// `T^f`: the same context on the target with frozen arguments mapped
/// through `f`. Satisfies `f_s ∘ T = T^f ∘ f_t`.
pub fn transport(f: &Homomorphism, t: &Translation) -> Result<Translation> {
    let b = f.target();
    if t.function.len() != f.source().size(t.hole_sort) {
        return Err(Error::AmbientMismatch("translation is not on the source algebra".into()));
    }
    let chain = map_steps(&t.steps, f.source(), |s, x| Ok(f.apply(s, x)))?;
    if chain.is_empty() {
        Ok(Translation::identity(b, t.hole_sort))
    } else {
        Translation::chain(b, chain)
    }
}

/// A translation `T` on the source of an epimorphism with `T^f = U`;
/// frozen arguments take their least preimage.
pub fn lift_translation(f: &Homomorphism, u: &Translation) -> Result<Translation> {
    let (a, b) = (f.source(), f.target());
    if !f.is_surjective() {
        return Err(Error::NotHomomorphism("lifting needs a surjective homomorphism".into()));
    }
    if u.function.len() != b.size(u.hole_sort) {
        return Err(Error::AmbientMismatch("translation is not on the target algebra".into()));
    }
    let chain = map_steps(&u.steps, b, |s, y| {
        (0..a.size(s))
            .find(|&x| f.apply(s, x) == y)
            .ok_or_else(|| Error::NoPreimage {
                sort: b.sig().sort_name(s).to_string(),
                element: b.carriers().element_name(s, y).to_string(),
            })
    })?;
    if chain.is_empty() {
        Ok(Translation::identity(a, u.hole_sort))
    } else {
        Translation::chain(a, chain)
    }
}

/// `T^{-1}[L]`: the delta at the hole sort of the elements `T` sends into `L`.
pub fn inverse_image_translation(t: &Translation, l: &SortedSubset) -> Result<SortedSubset> {
    let ambient = l.ambient();
    if t.function.len() != ambient.size(t.hole_sort) {
        return Err(Error::AmbientMismatch("subset is not on the translation's algebra".into()));
    }
    let members: Vec<usize> = (0..ambient.size(t.hole_sort))
        .filter(|&x| l.contains(t.target_sort, t.apply(x)))
        .collect();
    SortedSubset::delta(ambient, t.hole_sort, members)
}

fn preserves(eq: &SortedEquivalence, t: usize, s: usize, function: &[usize]) -> bool {
    // compare each element with its block's representative
    (0..function.len()).all(|x| {
        let rep = eq.representatives(t)[eq.class_of(t, x)];
        eq.related(s, function[x], function[rep])
    })
}

/// Whether `eq` is preserved by every elementary translation.
pub fn closed_under_elementary(alg: &FiniteAlgebra, eq: &SortedEquivalence, limits: &Limits) -> Result<bool> {
    if eq.ambient() != alg.carriers() {
        return Err(Error::AmbientMismatch("equivalence is not on the algebra's carriers".into()));
    }
    for t in 0..alg.num_sorts() {
        for (s, group) in enumerate_elementary(alg, t, limits)?.iter().enumerate() {
            for e in group {
                let f: Vec<usize> = (0..alg.size(t)).map(|x| e.apply(alg, x)).collect();
                if !preserves(eq, t, s, &f) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Whether `eq` is preserved by every translation.
pub fn closed_under_translations(alg: &FiniteAlgebra, eq: &SortedEquivalence, limits: &Limits) -> Result<bool> {
    if eq.ambient() != alg.carriers() {
        return Err(Error::AmbientMismatch("equivalence is not on the algebra's carriers".into()));
    }
    for t in 0..alg.num_sorts() {
        for (s, group) in enumerate_translations_as_functions(alg, t, limits)?.iter().enumerate() {
            if !group.iter().all(|tr| preserves(eq, t, s, tr.function())) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::sorted::SortedSet;
    use std::collections::BTreeSet;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn elementary_examples() {
        let cyc2 = fixtures::cyc2();
        let e = enumerate_elementary(&cyc2, 0, &limits()).unwrap();
        assert_eq!(e[0], vec![ElementaryTranslation { op: 1, hole: 0, frozen: vec![] }]);

        let a = fixtures::sig2_algebra();
        let e = enumerate_elementary(&a, 0, &limits()).unwrap();
        assert_eq!(e[1].len(), 1);
        assert_eq!(a.sig().op(e[1][0].op).name, "p");
        assert_eq!(e[0].len(), 1);
        assert_eq!(a.sig().op(e[0][0].op).name, "g");
        assert!(enumerate_elementary(&a, 1, &limits()).unwrap().iter().all(Vec::is_empty));

        let z2 = fixtures::z2();
        let e = enumerate_elementary(&z2, 0, &limits()).unwrap();
        let shown: Vec<String> = e[0]
            .iter()
            .map(|e| Translation::elementary(&z2, e.clone()).unwrap().display(&z2).to_string())
            .collect();
        assert_eq!(shown, ["m(□, 0)", "m(□, 1)", "m(0, □)", "m(1, □)"]);
    }

    #[test]
    fn apply_examples() {
        let cyc2 = fixtures::cyc2();
        assert_eq!(Translation::identity(&cyc2, 0).apply(1), 1);
        let f = ElementaryTranslation { op: 1, hole: 0, frozen: vec![] };
        let t = Translation::elementary(&cyc2, f.clone()).unwrap();
        assert_eq!(t.apply(0), 1);
        let ff = t.then(&cyc2, f).unwrap();
        assert_eq!(ff.apply(0), 0);
        assert_eq!(ff.display(&cyc2).to_string(), "f(f(□))");
    }

    #[test]
    fn function_closure_examples() {
        let fns = |a: &FiniteAlgebra| -> Vec<Vec<usize>> {
            enumerate_translations_as_functions(a, 0, &limits()).unwrap()[0]
                .iter()
                .map(|t| t.function().to_vec())
                .collect()
        };
        assert_eq!(fns(&fixtures::cyc2()), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(fns(&fixtures::id3()), vec![vec![0, 1, 2]]);
        let sig = fixtures::sig1();
        let const0 = FiniteAlgebra::from_fn(&sig, &SortedSet::from_sizes(sig.sorts().to_vec(), &[2]), |_, _| 0).unwrap();
        assert_eq!(fns(&const0), vec![vec![0, 0], vec![0, 1]]);
    }

    #[test]
    fn closure_contains_every_short_chain() {
        // oracle: all chains of length ≤ 3 built directly
        for (_, a) in fixtures::small_fixtures() {
            for t in 0..a.num_sorts() {
                let found = enumerate_translations_as_functions(&a, t, &limits()).unwrap();
                let set: Vec<BTreeSet<Vec<usize>>> = found
                    .iter()
                    .map(|g| g.iter().map(|t| t.function().to_vec()).collect())
                    .collect();
                let mut frontier = vec![Translation::identity(&a, t)];
                for _ in 0..3 {
                    let mut next = Vec::new();
                    for cur in &frontier {
                        assert!(set[cur.target_sort()].contains(cur.function()));
                        for e in enumerate_elementary(&a, cur.target_sort(), &limits()).unwrap().concat() {
                            next.push(cur.then(&a, e).unwrap());
                        }
                    }
                    frontier = next;
                }
                // closed under one more elementary step
                for (s, g) in found.iter().enumerate() {
                    for tr in g {
                        for e in enumerate_elementary(&a, s, &limits()).unwrap().concat() {
                            let n = tr.then(&a, e).unwrap();
                            assert!(set[n.target_sort()].contains(n.function()));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn transport_and_lift() {
        let cyc4 = fixtures::cyc4();
        let cyc2 = fixtures::cyc2();
        let f = Homomorphism::new(&cyc4, &cyc2, vec![vec![0, 1, 0, 1]]).unwrap();
        let fe = ElementaryTranslation { op: 1, hole: 0, frozen: vec![] };
        let t = Translation::elementary(&cyc4, fe.clone()).unwrap();
        let tf = transport(&f, &t).unwrap();
        assert_eq!(tf, Translation::elementary(&cyc2, fe.clone()).unwrap());
        for x in 0..4 {
            assert_eq!(f.apply(0, t.apply(x)), tf.apply(f.apply(0, x)));
        }
        let id = Translation::identity(&cyc4, 0);
        assert!(transport(&f, &id).unwrap().is_identity());

        let u = Translation::elementary(&cyc2, fe).unwrap();
        assert_eq!(lift_translation(&f, &u).unwrap(), t);
        assert!(lift_translation(&f, &Translation::identity(&cyc2, 0)).unwrap().is_identity());
        let idh = Homomorphism::identity(&cyc2);
        assert_eq!(lift_translation(&idh, &u).unwrap(), u);
    }

    #[test]
    fn lift_then_transport_roundtrips() {
        let z2 = fixtures::z2();
        let sig = z2.sig().clone();
        let z4 = FiniteAlgebra::from_fn(&sig, &SortedSet::from_sizes(sig.sorts().to_vec(), &[4]), |op, a| match op {
            0 => 0,
            _ => (a[0] + a[1]) % 4,
        })
        .unwrap();
        let f = Homomorphism::new(&z4, &z2, vec![vec![0, 1, 0, 1]]).unwrap();
        for u in enumerate_translations_as_functions(&z2, 0, &limits()).unwrap().concat() {
            let lifted = lift_translation(&f, &u).unwrap();
            assert_eq!(transport(&f, &lifted).unwrap().function(), u.function());
        }
    }

    #[test]
    fn inverse_image_examples() {
        let cyc2 = fixtures::cyc2();
        let l = SortedSubset::delta(cyc2.carriers(), 0, [0]).unwrap();
        let id = Translation::identity(&cyc2, 0);
        assert_eq!(inverse_image_translation(&id, &l).unwrap(), l);
        let t = Translation::elementary(&cyc2, ElementaryTranslation { op: 1, hole: 0, frozen: vec![] }).unwrap();
        assert_eq!(
            inverse_image_translation(&t, &l).unwrap(),
            SortedSubset::delta(cyc2.carriers(), 0, [1]).unwrap()
        );

        let a = fixtures::sig2_algebra();
        let p = Translation::elementary(&a, ElementaryTranslation { op: 1, hole: 0, frozen: vec![] }).unwrap();
        let only_e = SortedSubset::delta(a.carriers(), 0, [0, 1]).unwrap();
        assert!(inverse_image_translation(&p, &only_e).unwrap().is_empty());
    }

    #[test]
    fn deciders_agree_on_all_partitions() {
        for (name, a) in fixtures::small_fixtures() {
            for eq in SortedEquivalence::enumerate_all(a.carriers()) {
                let by_tables = a.is_congruence(&eq).unwrap();
                assert_eq!(by_tables, closed_under_elementary(&a, &eq, &limits()).unwrap(), "{name}");
                assert_eq!(by_tables, closed_under_translations(&a, &eq, &limits()).unwrap(), "{name}");
            }
        }
    }
}
