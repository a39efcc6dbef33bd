//! Finite sorted sets and the machinery built directly on them: subsets,
//! sorted mappings, sorted equivalences, saturation, kernels and quotients.
//!
//! Elements are addressed by `(sort index, element index)` pairs. Element
//! names are carried for display only; all algorithms work on indices, and
//! the order of a carrier is the canonical iteration order.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A sort name.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SortId(String);

impl SortId {
    pub fn new(name: impl Into<String>) -> Self {
        SortId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for SortId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for SortId {
    fn from(s: &str) -> Self {
        SortId(s.to_string())
    }
}

/// Set of sort indices.
pub type Support = BTreeSet<usize>;

#[derive(Debug, PartialEq, Eq, Hash)]
struct SortedSetData {
    sorts: Vec<SortId>,
    carriers: Vec<Vec<String>>,
}

/// A finite family of carriers indexed by sort. Empty carriers are legal.
///
/// Cloning is cheap; equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SortedSet(Arc<SortedSetData>);

impl SortedSet {
    pub fn new(sorts: Vec<SortId>, carriers: Vec<Vec<String>>) -> Result<Self> {
        if sorts.len() != carriers.len() {
            return Err(Error::InvalidSortedSet(format!(
                "{} sorts but {} carriers",
                sorts.len(),
                carriers.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for s in &sorts {
            if !seen.insert(s) {
                return Err(Error::InvalidSortedSet(format!("duplicate sort `{s}`")));
            }
        }
        for (s, carrier) in sorts.iter().zip(&carriers) {
            let mut names = BTreeSet::new();
            for e in carrier {
                if !names.insert(e) {
                    return Err(Error::InvalidSortedSet(format!(
                        "duplicate element `{e}` in carrier of sort `{s}`"
                    )));
                }
            }
        }
        Ok(SortedSet(Arc::new(SortedSetData { sorts, carriers })))
    }

    /// Carriers named `0..n` at each sort.
    pub fn from_sizes(sorts: Vec<SortId>, sizes: &[usize]) -> Self {
        assert_eq!(sorts.len(), sizes.len());
        let carriers = sizes
            .iter()
            .map(|&n| (0..n).map(|i| i.to_string()).collect())
            .collect();
        SortedSet(Arc::new(SortedSetData { sorts, carriers }))
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

    pub fn carrier(&self, sort: usize) -> &[String] {
        &self.0.carriers[sort]
    }

    pub fn size(&self, sort: usize) -> usize {
        self.0.carriers[sort].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.0.carriers.iter().map(Vec::len).collect()
    }

    pub fn total_size(&self) -> usize {
        self.0.carriers.iter().map(Vec::len).sum()
    }

    pub fn element_index(&self, sort: usize, name: &str) -> Option<usize> {
        self.0.carriers[sort].iter().position(|e| e == name)
    }

    pub fn element_name(&self, sort: usize, index: usize) -> &str {
        &self.0.carriers[sort][index]
    }

    /// The sorts with a nonempty carrier.
    pub fn support(&self) -> Support {
        (0..self.num_sorts()).filter(|&s| self.size(s) > 0).collect()
    }

    /// At most one element per sort.
    pub fn is_subfinal(&self) -> bool {
        self.0.carriers.iter().all(|c| c.len() <= 1)
    }

    /// Same sorts and carrier sizes. Element names may differ.
    pub fn same_shape(&self, other: &SortedSet) -> bool {
        self.sorts() == other.sorts() && self.sizes() == other.sizes()
    }

    pub fn ptr_eq(&self, other: &SortedSet) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    fn check_same(&self, other: &SortedSet, what: &str) -> Result<()> {
        if self.ptr_eq(other) || self == other {
            Ok(())
        } else {
            Err(Error::AmbientMismatch(what.to_string()))
        }
    }
}

/// A sorted subset `X ⊆ A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SortedSubset {
    ambient: SortedSet,
    members: Vec<BTreeSet<usize>>,
}

impl SortedSubset {
    pub fn new(ambient: &SortedSet, members: Vec<BTreeSet<usize>>) -> Result<Self> {
        if members.len() != ambient.num_sorts() {
            return Err(Error::AmbientMismatch(format!(
                "subset has {} sorts, ambient has {}",
                members.len(),
                ambient.num_sorts()
            )));
        }
        for (s, m) in members.iter().enumerate() {
            if let Some(&x) = m.iter().next_back() {
                if x >= ambient.size(s) {
                    return Err(Error::AmbientMismatch(format!(
                        "element index {x} outside carrier of sort `{}`",
                        ambient.sorts()[s]
                    )));
                }
            }
        }
        Ok(SortedSubset {
            ambient: ambient.clone(),
            members,
        })
    }

    pub fn empty(ambient: &SortedSet) -> Self {
        SortedSubset {
            ambient: ambient.clone(),
            members: vec![BTreeSet::new(); ambient.num_sorts()],
        }
    }

    pub fn full(ambient: &SortedSet) -> Self {
        SortedSubset {
            ambient: ambient.clone(),
            members: (0..ambient.num_sorts())
                .map(|s| (0..ambient.size(s)).collect())
                .collect(),
        }
    }

    /// The Kronecker delta: `elems` at `sort`, empty elsewhere.
    pub fn delta(
        ambient: &SortedSet,
        sort: usize,
        elems: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut members = vec![BTreeSet::new(); ambient.num_sorts()];
        members[sort] = elems.into_iter().collect();
        SortedSubset::new(ambient, members)
    }

    pub fn ambient(&self) -> &SortedSet {
        &self.ambient
    }

    pub fn members(&self, sort: usize) -> &BTreeSet<usize> {
        &self.members[sort]
    }

    pub fn contains(&self, sort: usize, x: usize) -> bool {
        self.members[sort].contains(&x)
    }

    pub fn insert(&mut self, sort: usize, x: usize) -> bool {
        assert!(x < self.ambient.size(sort), "element outside carrier");
        self.members[sort].insert(x)
    }

    pub fn is_empty(&self) -> bool {
        self.members.iter().all(BTreeSet::is_empty)
    }

    pub fn len(&self) -> usize {
        self.members.iter().map(BTreeSet::len).sum()
    }

    pub fn support(&self) -> Support {
        (0..self.members.len())
            .filter(|&s| !self.members[s].is_empty())
            .collect()
    }

    pub fn is_subset(&self, other: &SortedSubset) -> bool {
        self.members
            .iter()
            .zip(&other.members)
            .all(|(a, b)| a.is_subset(b))
    }

    pub fn union(&self, other: &SortedSubset) -> Result<Self> {
        self.ambient.check_same(&other.ambient, "union")?;
        Ok(self.zip_with(other, |a, b| a.union(b).copied().collect()))
    }

    pub fn intersection(&self, other: &SortedSubset) -> Result<Self> {
        self.ambient.check_same(&other.ambient, "intersection")?;
        Ok(self.zip_with(other, |a, b| a.intersection(b).copied().collect()))
    }

    pub fn difference(&self, other: &SortedSubset) -> Result<Self> {
        self.ambient.check_same(&other.ambient, "difference")?;
        Ok(self.zip_with(other, |a, b| a.difference(b).copied().collect()))
    }

    pub fn complement(&self) -> Self {
        SortedSubset {
            ambient: self.ambient.clone(),
            members: (0..self.members.len())
                .map(|s| {
                    (0..self.ambient.size(s))
                        .filter(|x| !self.members[s].contains(x))
                        .collect()
                })
                .collect(),
        }
    }

    fn zip_with(
        &self,
        other: &SortedSubset,
        f: impl Fn(&BTreeSet<usize>, &BTreeSet<usize>) -> BTreeSet<usize>,
    ) -> Self {
        SortedSubset {
            ambient: self.ambient.clone(),
            members: self
                .members
                .iter()
                .zip(&other.members)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// Every subset of `ambient`, in binary-counter order. Intended for
    /// exhaustive checks on small carriers.
    pub fn all_subsets(ambient: &SortedSet) -> Vec<SortedSubset> {
        let total = ambient.total_size();
        assert!(total < 24, "too many subsets to enumerate");
        let slots: Vec<(usize, usize)> = (0..ambient.num_sorts())
            .flat_map(|s| (0..ambient.size(s)).map(move |x| (s, x)))
            .collect();
        (0u32..1 << total)
            .map(|mask| {
                let mut sub = SortedSubset::empty(ambient);
                for (bit, &(s, x)) in slots.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        sub.members[s].insert(x);
                    }
                }
                sub
            })
            .collect()
    }
}

/// A sorted mapping `f = (f_s)_s` between two sorted sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SortedMap {
    domain: SortedSet,
    codomain: SortedSet,
    images: Vec<Vec<usize>>,
}

impl SortedMap {
    pub fn new(domain: &SortedSet, codomain: &SortedSet, images: Vec<Vec<usize>>) -> Result<Self> {
        if domain.sorts() != codomain.sorts() {
            return Err(Error::AmbientMismatch(
                "domain and codomain have different sorts".into(),
            ));
        }
        if images.len() != domain.num_sorts() {
            return Err(Error::AmbientMismatch(format!(
                "map has {} sorts, domain has {}",
                images.len(),
                domain.num_sorts()
            )));
        }
        for (s, img) in images.iter().enumerate() {
            if img.len() != domain.size(s) {
                return Err(Error::AmbientMismatch(format!(
                    "map is not total at sort `{}`",
                    domain.sorts()[s]
                )));
            }
            if img.iter().any(|&y| y >= codomain.size(s)) {
                return Err(Error::AmbientMismatch(format!(
                    "map leaves the codomain at sort `{}`",
                    domain.sorts()[s]
                )));
            }
        }
        Ok(SortedMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            images,
        })
    }

    pub fn identity(set: &SortedSet) -> Self {
        SortedMap {
            domain: set.clone(),
            codomain: set.clone(),
            images: (0..set.num_sorts())
                .map(|s| (0..set.size(s)).collect())
                .collect(),
        }
    }

    pub fn domain(&self) -> &SortedSet {
        &self.domain
    }

    pub fn codomain(&self) -> &SortedSet {
        &self.codomain
    }

    pub fn images(&self) -> &[Vec<usize>] {
        &self.images
    }

    pub fn apply(&self, sort: usize, x: usize) -> usize {
        self.images[sort][x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SortedMap) -> Result<SortedMap> {
        self.codomain.check_same(&other.domain, "composition")?;
        Ok(SortedMap {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            images: self
                .images
                .iter()
                .enumerate()
                .map(|(s, img)| img.iter().map(|&y| other.images[s][y]).collect())
                .collect(),
        })
    }

    pub fn is_injective_at(&self, sort: usize) -> bool {
        let mut seen = BTreeSet::new();
        self.images[sort].iter().all(|y| seen.insert(*y))
    }

    pub fn is_surjective_at(&self, sort: usize) -> bool {
        let hit: BTreeSet<_> = self.images[sort].iter().collect();
        hit.len() == self.codomain.size(sort)
    }

    pub fn is_injective(&self) -> bool {
        (0..self.images.len()).all(|s| self.is_injective_at(s))
    }

    pub fn is_surjective(&self) -> bool {
        (0..self.images.len()).all(|s| self.is_surjective_at(s))
    }

    pub fn direct_image(&self, x: &SortedSubset) -> Result<SortedSubset> {
        self.domain.check_same(&x.ambient, "direct image")?;
        let members = x
            .members
            .iter()
            .enumerate()
            .map(|(s, m)| m.iter().map(|&a| self.images[s][a]).collect())
            .collect();
        Ok(SortedSubset {
            ambient: self.codomain.clone(),
            members,
        })
    }

    pub fn inverse_image(&self, y: &SortedSubset) -> Result<SortedSubset> {
        self.codomain.check_same(&y.ambient, "inverse image")?;
        let members = self
            .images
            .iter()
            .enumerate()
            .map(|(s, img)| {
                (0..img.len())
                    .filter(|&a| y.members[s].contains(&img[a]))
                    .collect()
            })
            .collect();
        Ok(SortedSubset {
            ambient: self.domain.clone(),
            members,
        })
    }

    /// Fibers of the map as a sorted equivalence on the domain.
    pub fn kernel(&self) -> SortedEquivalence {
        SortedEquivalence::from_labels(&self.domain, self.images.clone())
            .expect("images are total on the domain")
    }
}

/// A sorted equivalence in canonical form.
///
/// Per sort, each element carries the index of its block; blocks are
/// numbered in order of their least element, so two equivalences are equal
/// exactly when their label vectors are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SortedEquivalence {
    ambient: SortedSet,
    labels: Vec<Vec<usize>>,
}

fn canonical_labels(raw: &[usize]) -> Vec<usize> {
    let mut remap: HashMap<usize, usize> = HashMap::new();
    raw.iter()
        .map(|&r| {
            let next = remap.len();
            *remap.entry(r).or_insert(next)
        })
        .collect()
}

impl SortedEquivalence {
    /// Builds an equivalence from arbitrary per-element keys: elements with
    /// equal keys share a block.
    pub fn from_labels(ambient: &SortedSet, labels: Vec<Vec<usize>>) -> Result<Self> {
        if labels.len() != ambient.num_sorts() {
            return Err(Error::AmbientMismatch("label vector sorts".into()));
        }
        for (s, l) in labels.iter().enumerate() {
            if l.len() != ambient.size(s) {
                return Err(Error::AmbientMismatch(format!(
                    "labels do not cover the carrier of sort `{}`",
                    ambient.sorts()[s]
                )));
            }
        }
        Ok(SortedEquivalence {
            ambient: ambient.clone(),
            labels: labels.iter().map(|l| canonical_labels(l)).collect(),
        })
    }

    /// Builds an equivalence from explicit blocks, which must partition each
    /// carrier.
    pub fn from_blocks(ambient: &SortedSet, blocks: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        if blocks.len() != ambient.num_sorts() {
            return Err(Error::AmbientMismatch("block list sorts".into()));
        }
        let mut labels = Vec::with_capacity(blocks.len());
        for (s, bs) in blocks.iter().enumerate() {
            let n = ambient.size(s);
            let mut l = vec![usize::MAX; n];
            for (b, block) in bs.iter().enumerate() {
                if block.is_empty() {
                    return Err(Error::InvalidSortedSet("empty block".into()));
                }
                for &x in block {
                    if x >= n || l[x] != usize::MAX {
                        return Err(Error::InvalidSortedSet(format!(
                            "blocks at sort `{}` are not a partition",
                            ambient.sorts()[s]
                        )));
                    }
                    l[x] = b;
                }
            }
            if l.contains(&usize::MAX) {
                return Err(Error::InvalidSortedSet(format!(
                    "blocks at sort `{}` do not cover the carrier",
                    ambient.sorts()[s]
                )));
            }
            labels.push(l);
        }
        Self::from_labels(ambient, labels)
    }

    /// Δ, the identity relation.
    pub fn identity(ambient: &SortedSet) -> Self {
        SortedEquivalence {
            ambient: ambient.clone(),
            labels: (0..ambient.num_sorts())
                .map(|s| (0..ambient.size(s)).collect())
                .collect(),
        }
    }

    /// ∇, the total relation.
    pub fn total(ambient: &SortedSet) -> Self {
        SortedEquivalence {
            ambient: ambient.clone(),
            labels: (0..ambient.num_sorts())
                .map(|s| vec![0; ambient.size(s)])
                .collect(),
        }
    }

    /// Kernel of the characteristic map of `subset`: per sort, the members
    /// and the non-members (empty blocks dropped).
    pub fn characteristic_kernel(subset: &SortedSubset) -> Self {
        let ambient = subset.ambient();
        let labels = (0..ambient.num_sorts())
            .map(|s| {
                (0..ambient.size(s))
                    .map(|x| usize::from(subset.contains(s, x)))
                    .collect::<Vec<_>>()
            })
            .collect();
        Self::from_labels(ambient, labels).expect("labels sized from ambient")
    }

    pub fn ambient(&self) -> &SortedSet {
        &self.ambient
    }

    pub fn labels(&self) -> &[Vec<usize>] {
        &self.labels
    }

    /// Block index of `x` at `sort`.
    pub fn class_of(&self, sort: usize, x: usize) -> usize {
        self.labels[sort][x]
    }

    pub fn related(&self, sort: usize, x: usize, y: usize) -> bool {
        self.labels[sort][x] == self.labels[sort][y]
    }

    pub fn num_classes(&self, sort: usize) -> usize {
        self.labels[sort].iter().max().map_or(0, |m| m + 1)
    }

    pub fn class_counts(&self) -> Vec<usize> {
        (0..self.labels.len()).map(|s| self.num_classes(s)).collect()
    }

    /// Blocks at `sort`, ordered by least element.
    pub fn blocks(&self, sort: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_classes(sort)];
        for (x, &b) in self.labels[sort].iter().enumerate() {
            out[b].push(x);
        }
        out
    }

    /// `[x]` at `sort`.
    pub fn class(&self, sort: usize, x: usize) -> BTreeSet<usize> {
        let b = self.labels[sort][x];
        self.labels[sort]
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == b)
            .map(|(y, _)| y)
            .collect()
    }

    /// Least element of each block at `sort`.
    pub fn representatives(&self, sort: usize) -> Vec<usize> {
        self.blocks(sort).into_iter().map(|b| b[0]).collect()
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &SortedEquivalence) -> bool {
        if self.ambient != other.ambient {
            return false;
        }
        self.labels.iter().zip(&other.labels).all(|(mine, theirs)| {
            let mut image: Vec<Option<usize>> = vec![None; mine.len()];
            mine.iter().zip(theirs).all(|(&a, &b)| match image[a] {
                Some(prev) => prev == b,
                None => {
                    image[a] = Some(b);
                    true
                }
            })
        })
    }

    pub fn is_identity(&self) -> bool {
        (0..self.labels.len()).all(|s| self.num_classes(s) == self.ambient.size(s))
    }

    pub fn is_total(&self) -> bool {
        self.labels.iter().all(|l| l.iter().all(|&b| b == 0))
    }

    pub fn meet(&self, other: &SortedEquivalence) -> Result<SortedEquivalence> {
        self.ambient.check_same(&other.ambient, "meet")?;
        let labels = self
            .labels
            .iter()
            .zip(&other.labels)
            .map(|(a, b)| {
                let width = b.iter().max().map_or(1, |m| m + 1);
                a.iter().zip(b).map(|(&x, &y)| x * width + y).collect()
            })
            .collect();
        Self::from_labels(&self.ambient, labels)
    }

    /// Meet of a family; the empty family gives ∇.
    pub fn meet_all<'a>(
        ambient: &SortedSet,
        family: impl IntoIterator<Item = &'a SortedEquivalence>,
    ) -> Result<SortedEquivalence> {
        family
            .into_iter()
            .try_fold(SortedEquivalence::total(ambient), |acc, e| acc.meet(e))
    }

    /// `[X]^Φ`: the union of the blocks meeting `X`.
    pub fn saturate(&self, x: &SortedSubset) -> Result<SortedSubset> {
        self.ambient.check_same(x.ambient(), "saturation")?;
        let members = (0..self.labels.len())
            .map(|s| {
                let hit: BTreeSet<usize> = x.members(s).iter().map(|&a| self.labels[s][a]).collect();
                (0..self.labels[s].len())
                    .filter(|&y| hit.contains(&self.labels[s][y]))
                    .collect()
            })
            .collect();
        Ok(SortedSubset {
            ambient: self.ambient.clone(),
            members,
        })
    }

    pub fn is_saturated(&self, x: &SortedSubset) -> Result<bool> {
        Ok(&self.saturate(x)? == x)
    }

    /// The quotient sorted set (each block named by its representative) and
    /// the projection onto it.
    pub fn quotient_set(&self) -> (SortedSet, SortedMap) {
        let carriers = (0..self.labels.len())
            .map(|s| {
                self.representatives(s)
                    .into_iter()
                    .map(|r| self.ambient.element_name(s, r).to_string())
                    .collect()
            })
            .collect();
        let quotient = SortedSet::new(self.ambient.sorts().to_vec(), carriers)
            .expect("representatives are distinct");
        let projection = SortedMap {
            domain: self.ambient.clone(),
            codomain: quotient.clone(),
            images: self.labels.clone(),
        };
        (quotient, projection)
    }

    /// `Ψ/Φ` on `A/Φ`, for `self = Φ ⊆ Ψ = coarser`.
    pub fn quotient_equiv(&self, coarser: &SortedEquivalence) -> Result<SortedEquivalence> {
        if !self.refines(coarser) {
            return Err(Error::NotRefinement(
                "the dividing equivalence must refine the divided one".into(),
            ));
        }
        let (quotient, _) = self.quotient_set();
        let labels = (0..self.labels.len())
            .map(|s| {
                self.representatives(s)
                    .into_iter()
                    .map(|r| coarser.labels[s][r])
                    .collect()
            })
            .collect();
        Self::from_labels(&quotient, labels)
    }

    /// Pulls an equivalence on `f.codomain` back along `f`.
    pub fn pullback(f: &SortedMap, eq: &SortedEquivalence) -> Result<SortedEquivalence> {
        f.codomain.check_same(&eq.ambient, "pullback")?;
        let labels = f
            .images
            .iter()
            .enumerate()
            .map(|(s, img)| img.iter().map(|&y| eq.labels[s][y]).collect())
            .collect();
        Self::from_labels(&f.domain, labels)
    }

    /// Every sorted equivalence on `ambient`. Exhaustive; small carriers only.
    pub fn enumerate_all(ambient: &SortedSet) -> Vec<SortedEquivalence> {
        let per_sort: Vec<Vec<Vec<usize>>> = (0..ambient.num_sorts())
            .map(|s| set_partitions(ambient.size(s)))
            .collect();
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(per_sort.len());
        fn rec(
            per_sort: &[Vec<Vec<usize>>],
            current: &mut Vec<Vec<usize>>,
            ambient: &SortedSet,
            out: &mut Vec<SortedEquivalence>,
        ) {
            if current.len() == per_sort.len() {
                out.push(SortedEquivalence {
                    ambient: ambient.clone(),
                    labels: current.clone(),
                });
                return;
            }
            for p in &per_sort[current.len()] {
                current.push(p.clone());
                rec(per_sort, current, ambient, out);
                current.pop();
            }
        }
        rec(&per_sort, &mut current, ambient, &mut out);
        out
    }
}

/// All partitions of `{0..n}` as restricted growth strings, which are
/// exactly the canonical label vectors.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn rec(n: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        let limit = if current.is_empty() { 0 } else { max + 1 };
        for b in 0..=limit {
            current.push(b);
            rec(n, max.max(b), current, out);
            current.pop();
        }
    }
    rec(n, 0, &mut current, &mut out);
    out
}
