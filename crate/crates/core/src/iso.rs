//! Isomorphism testing and canonical forms.
//!
//! Both start from colour refinement: every element is coloured by its sort
//! and repeatedly recoloured by the multiset of table entries it takes part
//! in (operation, position, colours of the entry). Colours are ranks of
//! sorted signatures, so they are invariant under isomorphism.

use std::collections::BTreeMap;

use crate::algebra::{search_maps, FiniteAlgebra, Homomorphism, Limits};
use crate::error::{Error, Result};
use crate::sorted::SortedSet;

/// Colours indexed `[algebra][sort][element]`.
type Colouring = Vec<Vec<Vec<usize>>>;

type Event = (usize, usize, Vec<usize>, usize);

fn initial(algs: &[&FiniteAlgebra]) -> Colouring {
    algs.iter()
        .map(|a| (0..a.num_sorts()).map(|s| vec![s; a.size(s)]).collect())
        .collect()
}

fn count(colours: &Colouring) -> usize {
    let mut all: Vec<usize> = colours.iter().flatten().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn refine_round(algs: &[&FiniteAlgebra], colours: &Colouring) -> Colouring {
    let mut events: Vec<Vec<Vec<Vec<Event>>>> = algs
        .iter()
        .map(|a| (0..a.num_sorts()).map(|s| vec![Vec::new(); a.size(s)]).collect())
        .collect();
    for (k, a) in algs.iter().enumerate() {
        let sig = a.sig();
        for (op, decl) in sig.ops().iter().enumerate() {
            a.for_each_entry(op, |args, v| {
                let tuple: Vec<usize> = args
                    .iter()
                    .zip(&decl.arity)
                    .map(|(&x, &s)| colours[k][s][x])
                    .collect();
                let out = colours[k][decl.coarity][v];
                for (i, (&x, &s)) in args.iter().zip(&decl.arity).enumerate() {
                    events[k][s][x].push((op, i, tuple.clone(), out));
                }
                events[k][decl.coarity][v].push((op, decl.arity.len(), tuple, out));
            });
        }
    }
    // (sort, current colour, sorted events) per element
    type Sig = (usize, usize, Vec<Event>);
    let mut keys: BTreeMap<Sig, usize> = BTreeMap::new();
    let mut sigs: Vec<Vec<Vec<Sig>>> = Vec::new();
    for (k, per_alg) in events.into_iter().enumerate() {
        let mut alg_sigs = Vec::new();
        for (s, per_sort) in per_alg.into_iter().enumerate() {
            let mut sort_sigs = Vec::new();
            for (x, mut ev) in per_sort.into_iter().enumerate() {
                ev.sort_unstable();
                let key = (s, colours[k][s][x], ev);
                keys.insert(key.clone(), 0);
                sort_sigs.push(key);
            }
            alg_sigs.push(sort_sigs);
        }
        sigs.push(alg_sigs);
    }
    for (rank, v) in keys.values_mut().enumerate() {
        *v = rank;
    }
    sigs.iter()
        .map(|a| a.iter().map(|s| s.iter().map(|key| keys[key]).collect()).collect())
        .collect()
}

/// Refines jointly until the number of colours stops growing.
fn refine(algs: &[&FiniteAlgebra], mut colours: Colouring) -> Colouring {
    let mut n = count(&colours);
    loop {
        let next = refine_round(algs, &colours);
        let m = count(&next);
        colours = next;
        if m == n {
            return colours;
        }
        n = m;
    }
}

fn histogram(colours: &[Vec<usize>]) -> Vec<Vec<usize>> {
    colours
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            c
        })
        .collect()
}

fn factorial_product(cells: impl Iterator<Item = usize>) -> u128 {
    cells.fold(1u128, |acc, n| {
        (1..=n as u128).fold(acc, |a, k| a.saturating_mul(k))
    })
}

/// A witness isomorphism `a → b`, or `None`.
pub fn are_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra, limits: &Limits) -> Result<Option<Homomorphism>> {
    if a.sig() != b.sig() {
        return Err(Error::SignatureMismatch("isomorphism test".into()));
    }
    if a.sizes() != b.sizes() {
        return Ok(None);
    }
    let colours = refine(&[a, b], initial(&[a, b]));
    if histogram(&colours[0]) != histogram(&colours[1]) {
        return Ok(None);
    }
    let mut cell_sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in colours[0].iter().flatten() {
        *cell_sizes.entry(c).or_default() += 1;
    }
    let space = factorial_product(cell_sizes.values().copied());
    if space > limits.max_homs {
        return Err(Error::BoundExceeded {
            what: "isomorphism search space".into(),
            needed: space,
            limit: limits.max_homs,
        });
    }
    let candidates: Vec<Vec<Vec<usize>>> = (0..a.num_sorts())
        .map(|s| {
            (0..a.size(s))
                .map(|x| {
                    (0..b.size(s))
                        .filter(|&y| colours[1][s][y] == colours[0][s][x])
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut found = None;
    search_maps(a, b, &candidates, true, &mut |images| {
        found = Some(images.to_vec());
        false
    });
    found
        .map(|images| Homomorphism::new(a, b, images))
        .transpose()
}

/// An isomorphism-invariant key: carrier sizes followed by the tables of a
/// canonically relabelled copy. Two algebras over the same signature are
/// isomorphic exactly when their keys are equal. The derived order sorts by
/// carrier profile first, then by table contents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    pub sizes: Vec<usize>,
    pub tables: Vec<Vec<usize>>,
}

/// A canonical relabelling of an algebra.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub key: CanonicalKey,
    /// The relabelled algebra, elements named by position.
    pub algebra: FiniteAlgebra,
    /// The isomorphism from the original onto `algebra`.
    pub iso: Homomorphism,
}

struct Canon<'a> {
    alg: &'a FiniteAlgebra,
    leaves: u128,
    limit: u128,
    best: Option<(CanonicalKey, Vec<Vec<usize>>)>,
}

impl Canon<'_> {
    fn leaf(&mut self, colours: &[Vec<usize>]) {
        let a = self.alg;
        // position of each element among its sort's colours
        let perm: Vec<Vec<usize>> = colours
            .iter()
            .map(|c| {
                let mut sorted: Vec<usize> = c.clone();
                sorted.sort_unstable();
                c.iter().map(|x| sorted.binary_search(x).unwrap()).collect()
            })
            .collect();
        let sig = a.sig();
        let tables: Vec<Vec<usize>> = (0..sig.ops().len())
            .map(|op| {
                let decl = sig.op(op);
                let mut t = vec![0; a.table(op).len()];
                a.for_each_entry(op, |args, v| {
                    let mapped: Vec<usize> = args
                        .iter()
                        .zip(&decl.arity)
                        .map(|(&x, &s)| perm[s][x])
                        .collect();
                    t[a.tuple_index(op, &mapped)] = perm[decl.coarity][v];
                });
                t
            })
            .collect();
        let key = CanonicalKey {
            sizes: a.sizes(),
            tables,
        };
        if self.best.as_ref().is_none_or(|(b, _)| key < *b) {
            self.best = Some((key, perm));
        }
    }

    fn search(&mut self, colours: Vec<Vec<usize>>) -> Result<()> {
        let refined = refine(&[self.alg], vec![colours]).pop().unwrap();
        // first non-singleton cell, smallest colour
        let mut sizes: BTreeMap<usize, (usize, Vec<usize>)> = BTreeMap::new();
        for (s, c) in refined.iter().enumerate() {
            for (x, &col) in c.iter().enumerate() {
                sizes.entry(col).or_insert((s, Vec::new())).1.push(x);
            }
        }
        let target = sizes.into_iter().find(|(_, (_, xs))| xs.len() > 1);
        match target {
            None => {
                self.leaves += 1;
                if self.leaves > self.limit {
                    return Err(Error::BoundExceeded {
                        what: "canonical form search leaves".into(),
                        needed: self.leaves,
                        limit: self.limit,
                    });
                }
                self.leaf(&refined);
                Ok(())
            }
            Some((col, (sort, xs))) => {
                for x in xs {
                    let individual: Vec<Vec<usize>> = refined
                        .iter()
                        .enumerate()
                        .map(|(s, c)| {
                            c.iter()
                                .enumerate()
                                .map(|(y, &d)| if s == sort && y == x && d == col { 2 * d } else { 2 * d + 1 })
                                .collect()
                        })
                        .collect();
                    self.search(individual)?;
                }
                Ok(())
            }
        }
    }
}

/// Computes the canonical form by individualisation and refinement.
pub fn canonical_form(a: &FiniteAlgebra, limits: &Limits) -> Result<CanonicalForm> {
    let mut canon = Canon {
        alg: a,
        leaves: 0,
        limit: limits.max_homs,
        best: None,
    };
    canon.search(initial(&[a]).pop().unwrap())?;
    let (key, perm) = canon.best.expect("at least one leaf");
    let carriers = SortedSet::from_sizes(a.carriers().sorts().to_vec(), &key.sizes);
    let algebra = FiniteAlgebra::new(a.sig(), &carriers, key.tables.clone())?;
    let iso = Homomorphism::new(a, &algebra, perm)?;
    Ok(CanonicalForm { key, algebra, iso })
}

pub fn canonical_key(a: &FiniteAlgebra, limits: &Limits) -> Result<CanonicalKey> {
    canonical_form(a, limits).map(|f| f.key)
}
