//! Brute-force oracles shared by the integration tests. They use only the
//! raw operation tables and never the library's own enumerators.

#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use manysorted::sorted::SortedEquivalence;
use manysorted::{FiniteAlgebra, SortedSubset};

/// All set partitions of `0..n` as restricted growth strings.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur.push(b);
            go(i + 1, n, max.max(b), cur, out);
            cur.pop();
        }
    }
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut cur = vec![0];
    go(1, n, 0, &mut cur, &mut out);
    out
}

/// Every per-sort combination of partitions, as label vectors.
pub fn sorted_partitions(sizes: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let per: Vec<Vec<Vec<usize>>> = sizes.iter().map(|&n| partitions(n)).collect();
    if per.is_empty() {
        return vec![vec![]];
    }
    per.iter().map(|p| p.iter().cloned()).multi_cartesian_product().collect()
}

/// Every argument tuple of an operation.
pub fn tuples(a: &FiniteAlgebra, op: usize) -> Vec<Vec<usize>> {
    let arity = &a.sig().op(op).arity;
    if arity.is_empty() {
        return vec![vec![]];
    }
    arity.iter().map(|&s| 0..a.size(s)).multi_cartesian_product().collect()
}

/// The literal compatibility condition, checked on every pair of
/// related argument tuples.
pub fn is_congruence(a: &FiniteAlgebra, labels: &[Vec<usize>]) -> bool {
    for (op, decl) in a.sig().ops().iter().enumerate() {
        let ts = tuples(a, op);
        for x in &ts {
            for y in &ts {
                let related = x
                    .iter()
                    .zip(y)
                    .zip(&decl.arity)
                    .all(|((&u, &v), &s)| labels[s][u] == labels[s][v]);
                if related && labels[decl.coarity][a.apply(op, x)] != labels[decl.coarity][a.apply(op, y)] {
                    return false;
                }
            }
        }
    }
    true
}

pub fn refines(fine: &[Vec<usize>], coarse: &[Vec<usize>]) -> bool {
    fine.iter().zip(coarse).all(|(f, c)| {
        (0..f.len()).all(|x| (0..f.len()).all(|y| f[x] != f[y] || c[x] == c[y]))
    })
}

/// Whether `labels` saturates `l`: no block meets both `l` and its complement.
pub fn saturates(labels: &[Vec<usize>], l: &SortedSubset) -> bool {
    labels.iter().enumerate().all(|(s, lab)| {
        (0..lab.len()).all(|x| (0..lab.len()).all(|y| lab[x] != lab[y] || l.contains(s, x) == l.contains(s, y)))
    })
}

/// All congruences, by filtering every per-sort partition combination.
pub fn congruences(a: &FiniteAlgebra) -> Vec<Vec<Vec<usize>>> {
    sorted_partitions(&a.sizes())
        .into_iter()
        .filter(|p| is_congruence(a, p))
        .collect()
}

/// The greatest congruence saturating `l`, found by scanning all
/// congruences for the one every other saturating congruence refines.
pub fn omega(a: &FiniteAlgebra, l: &SortedSubset) -> Vec<Vec<usize>> {
    let sat: Vec<Vec<Vec<usize>>> = congruences(a).into_iter().filter(|c| saturates(c, l)).collect();
    sat.iter()
        .find(|c| sat.iter().all(|d| refines(d, c)))
        .expect("the saturating congruences have a greatest element")
        .clone()
}

pub fn labels_of(eq: &SortedEquivalence) -> Vec<Vec<usize>> {
    eq.labels().to_vec()
}

/// Same partition, ignoring label names.
pub fn same_partition(x: &[Vec<usize>], y: &[Vec<usize>]) -> bool {
    refines(x, y) && refines(y, x)
}

/// Every sorted subset of the carriers of `a`.
pub fn subsets(a: &FiniteAlgebra) -> Vec<SortedSubset> {
    let c = a.carriers();
    let per: Vec<Vec<BTreeSet<usize>>> = (0..c.num_sorts())
        .map(|s| (0..c.size(s)).powerset().map(|v| v.into_iter().collect()).collect())
        .collect();
    per.iter()
        .map(|p| p.iter().cloned())
        .multi_cartesian_product()
        .map(|m| SortedSubset::new(c, m).unwrap())
        .collect()
}
