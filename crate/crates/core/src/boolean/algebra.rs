//! Finite Boolean algebras `2^atoms`, their elements and subalgebras.
//!
//! An element is a set of atom indices. A subalgebra is a partition of the
//! atoms; its elements are the unions of blocks.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Largest number of atoms an algebra may have.
pub const MAX_ATOMS: usize = 128;

/// Largest number of blocks for which a subalgebra will enumerate its elements.
pub const MAX_ENUMERATED_BLOCKS: usize = 24;

/// A set of atom indices, i.e. an element of `2^atoms`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AtomSet(pub u128);

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);

    pub fn full(n: usize) -> AtomSet {
        if n >= 128 {
            AtomSet(u128::MAX)
        } else {
            AtomSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> AtomSet {
        AtomSet(1u128 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> AtomSet {
        AtomSet(it.into_iter().fold(0u128, |acc, i| acc | (1u128 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 128 && self.0 >> i & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn join(self, o: AtomSet) -> AtomSet {
        AtomSet(self.0 | o.0)
    }

    pub fn meet(self, o: AtomSet) -> AtomSet {
        AtomSet(self.0 & o.0)
    }

    pub fn minus(self, o: AtomSet) -> AtomSet {
        AtomSet(self.0 & !o.0)
    }

    /// Complement relative to an algebra with `n` atoms.
    pub fn complement(self, n: usize) -> AtomSet {
        AtomSet(!self.0 & AtomSet::full(n).0)
    }

    pub fn subset_of(self, o: AtomSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn disjoint(self, o: AtomSet) -> bool {
        self.0 & o.0 == 0
    }

    pub fn min_index(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.indices()).finish()
    }
}

/// A finite Boolean algebra, identified with the power set of its atoms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FiniteBoolAlg {
    atoms: Vec<String>,
}

impl FiniteBoolAlg {
    pub fn new<S: Into<String>>(atoms: impl IntoIterator<Item = S>) -> Result<Self> {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        if atoms.is_empty() {
            return Err(domain("a Boolean algebra needs at least one atom"));
        }
        if atoms.len() > MAX_ATOMS {
            return Err(Error::Limit(format!(
                "{} atoms exceeds the limit of {MAX_ATOMS}",
                atoms.len()
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for a in &atoms {
            if !seen.insert(a.as_str()) {
                return Err(domain(format!("duplicate atom label {a:?}")));
            }
        }
        Ok(FiniteBoolAlg { atoms })
    }

    /// Algebra with atoms labelled `0..n`.
    pub fn numbered(n: usize) -> Result<Self> {
        FiniteBoolAlg::new((0..n).map(|i| i.to_string()))
    }

    pub fn trivial() -> Self {
        FiniteBoolAlg {
            atoms: vec!["*".into()],
        }
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn top(&self) -> AtomSet {
        AtomSet::full(self.len())
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == label)
    }

    pub fn element<'a>(&self, labels: impl IntoIterator<Item = &'a str>) -> Result<AtomSet> {
        let mut e = AtomSet::EMPTY;
        for l in labels {
            let i = self
                .index_of(l)
                .ok_or_else(|| domain(format!("{l:?} is not an atom of the algebra")))?;
            e = e.join(AtomSet::singleton(i));
        }
        Ok(e)
    }

    pub fn check_element(&self, e: AtomSet) -> Result<()> {
        if e.subset_of(self.top()) {
            Ok(())
        } else {
            Err(domain(format!("element {e:?} is not in an algebra with {} atoms", self.len())))
        }
    }

    pub fn complement(&self, e: AtomSet) -> AtomSet {
        e.complement(self.len())
    }

    pub fn labels_of(&self, e: AtomSet) -> Vec<String> {
        e.indices().map(|i| self.atoms[i].clone()).collect()
    }
}

/// A subalgebra of an algebra with `parent_atoms` atoms, as a partition.
///
/// Blocks are kept sorted by their least atom, so equal subalgebras compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Subalgebra {
    parent_atoms: usize,
    blocks: Vec<AtomSet>,
}

impl Subalgebra {
    pub fn from_blocks(parent_atoms: usize, mut blocks: Vec<AtomSet>) -> Result<Self> {
        let mut seen = AtomSet::EMPTY;
        for &b in &blocks {
            if b.is_empty() {
                return Err(domain("empty block in partition"));
            }
            if !b.disjoint(seen) {
                return Err(domain("blocks of a partition overlap"));
            }
            seen = seen.join(b);
        }
        if seen != AtomSet::full(parent_atoms) {
            return Err(domain("blocks do not cover the atoms of the parent algebra"));
        }
        blocks.sort_by_key(|b| b.min_index());
        Ok(Subalgebra {
            parent_atoms,
            blocks,
        })
    }

    /// Partition induced by a labelling of atoms; atoms with equal keys share a block.
    pub fn from_labelling<K: Ord>(keys: impl IntoIterator<Item = K>) -> Self {
        let mut classes: BTreeMap<K, AtomSet> = BTreeMap::new();
        let mut n = 0;
        for (i, k) in keys.into_iter().enumerate() {
            let e = classes.entry(k).or_default();
            *e = e.join(AtomSet::singleton(i));
            n = i + 1;
        }
        let mut blocks: Vec<AtomSet> = classes.into_values().collect();
        blocks.sort_by_key(|b| b.min_index());
        Subalgebra {
            parent_atoms: n,
            blocks,
        }
    }

    pub fn trivial(n: usize) -> Self {
        Subalgebra {
            parent_atoms: n,
            blocks: vec![AtomSet::full(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        Subalgebra {
            parent_atoms: n,
            blocks: (0..n).map(AtomSet::singleton).collect(),
        }
    }

    pub fn parent_atoms(&self) -> usize {
        self.parent_atoms
    }

    pub fn blocks(&self) -> &[AtomSet] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, atom: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(atom))
            .expect("atom outside parent algebra")
    }

    /// Atom-to-block labelling.
    pub fn labelling(&self) -> Vec<usize> {
        let mut out = vec![0; self.parent_atoms];
        for (k, b) in self.blocks.iter().enumerate() {
            for i in b.indices() {
                out[i] = k;
            }
        }
        out
    }

    pub fn is_full(&self) -> bool {
        self.blocks.len() == self.parent_atoms
    }

    pub fn contains(&self, e: AtomSet) -> bool {
        self.blocks.iter().all(|&b| b.subset_of(e) || b.disjoint(e))
    }

    /// `self ⊆ other` as subalgebras: every block of `other` lies inside a block of `self`.
    pub fn is_subalgebra_of(&self, other: &Subalgebra) -> bool {
        self.parent_atoms == other.parent_atoms && self.blocks.iter().all(|&b| other.contains(b))
    }

    /// Union of the blocks selected by the bits of `mask`.
    pub fn element_from_mask(&self, mask: u64) -> AtomSet {
        self.blocks
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .fold(AtomSet::EMPTY, |acc, (_, &b)| acc.join(b))
    }

    pub fn elements(&self) -> Result<Vec<AtomSet>> {
        let k = self.blocks.len();
        if k > MAX_ENUMERATED_BLOCKS {
            return Err(Error::Limit(format!(
                "refusing to enumerate 2^{k} elements"
            )));
        }
        Ok((0..1u64 << k).map(|m| self.element_from_mask(m)).collect())
    }

    /// Largest element of the subalgebra below `e`.
    pub fn below(&self, e: AtomSet) -> AtomSet {
        self.blocks
            .iter()
            .filter(|b| b.subset_of(e))
            .fold(AtomSet::EMPTY, |acc, &b| acc.join(b))
    }

    /// Smallest element of the subalgebra above `e`.
    pub fn above(&self, e: AtomSet) -> AtomSet {
        self.blocks
            .iter()
            .filter(|b| !b.disjoint(e))
            .fold(AtomSet::EMPTY, |acc, &b| acc.join(b))
    }

    /// `⟨self ∪ other⟩`: the common refinement.
    pub fn join(&self, other: &Subalgebra) -> Subalgebra {
        assert_eq!(self.parent_atoms, other.parent_atoms);
        let mut blocks = Vec::new();
        for &a in &self.blocks {
            for &b in &other.blocks {
                let c = a.meet(b);
                if !c.is_empty() {
                    blocks.push(c);
                }
            }
        }
        blocks.sort_by_key(|b| b.min_index());
        Subalgebra {
            parent_atoms: self.parent_atoms,
            blocks,
        }
    }

    /// `self ∩ other`: the finest common coarsening.
    pub fn meet(&self, other: &Subalgebra) -> Subalgebra {
        assert_eq!(self.parent_atoms, other.parent_atoms);
        let mut blocks: Vec<AtomSet> = Vec::new();
        let mut pending: Vec<AtomSet> = self.blocks.clone();
        while let Some(mut cur) = pending.pop() {
            loop {
                let grown = other
                    .blocks
                    .iter()
                    .chain(self.blocks.iter())
                    .filter(|b| !b.disjoint(cur))
                    .fold(cur, |acc, &b| acc.join(b));
                if grown == cur {
                    break;
                }
                cur = grown;
            }
            pending.retain(|b| b.disjoint(cur));
            blocks.push(cur);
        }
        blocks.sort_by_key(|b| b.min_index());
        Subalgebra {
            parent_atoms: self.parent_atoms,
            blocks,
        }
    }

    /// Re-expresses `self ⊆ within` as a subalgebra of the algebra whose atoms
    /// are the blocks of `within`.
    pub fn relative_to(&self, within: &Subalgebra) -> Result<Subalgebra> {
        if !self.is_subalgebra_of(within) {
            return Err(domain("subalgebra is not contained in the ambient subalgebra"));
        }
        let blocks = self
            .blocks
            .iter()
            .map(|&b| {
                AtomSet::from_indices(
                    within
                        .blocks
                        .iter()
                        .enumerate()
                        .filter(|(_, w)| w.subset_of(b))
                        .map(|(k, _)| k),
                )
            })
            .collect();
        Subalgebra::from_blocks(within.num_blocks(), blocks)
    }

    /// Translates an element of `within` into the block-indexed coordinates of `relative_to`.
    pub fn to_relative(within: &Subalgebra, e: AtomSet) -> AtomSet {
        AtomSet::from_indices(
            within
                .blocks
                .iter()
                .enumerate()
                .filter(|(_, w)| w.subset_of(e))
                .map(|(k, _)| k),
        )
    }

    /// Inverse of [`Subalgebra::to_relative`].
    pub fn from_relative(within: &Subalgebra, e: AtomSet) -> AtomSet {
        e.indices()
            .fold(AtomSet::EMPTY, |acc, k| acc.join(within.blocks[k]))
    }
}

/// The subalgebra of `B` generated by `generators`.
pub fn generated_subalgebra(b: &FiniteBoolAlg, generators: &[AtomSet]) -> Result<Subalgebra> {
    for &h in generators {
        b.check_element(h)?;
    }
    Ok(generated_by(b.len(), generators))
}

pub(crate) fn generated_by(n: usize, generators: &[AtomSet]) -> Subalgebra {
    Subalgebra::from_labelling((0..n).map(|i| {
        generators
            .iter()
            .map(|h| h.contains(i))
            .collect::<Vec<bool>>()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> AtomSet {
        AtomSet::from_indices(xs.iter().copied())
    }

    /// Closure of a generator set under ∨, ∧ and complement, by brute force.
    fn closure(n: usize, gens: &[AtomSet]) -> std::collections::BTreeSet<AtomSet> {
        let mut s: std::collections::BTreeSet<AtomSet> =
            [AtomSet::EMPTY, AtomSet::full(n)].into_iter().chain(gens.iter().copied()).collect();
        loop {
            let cur: Vec<AtomSet> = s.iter().copied().collect();
            let before = s.len();
            for &x in &cur {
                s.insert(x.complement(n));
                for &y in &cur {
                    s.insert(x.join(y));
                    s.insert(x.meet(y));
                }
            }
            if s.len() == before {
                return s;
            }
        }
    }

    #[test]
    fn generated_examples() {
        let b = FiniteBoolAlg::new(["1", "2", "3"]).unwrap();
        assert_eq!(generated_subalgebra(&b, &[]).unwrap().blocks(), &[set(&[0, 1, 2])]);
        assert_eq!(
            generated_subalgebra(&b, &[set(&[0])]).unwrap().blocks(),
            &[set(&[0]), set(&[1, 2])]
        );
        let g = generated_subalgebra(&b, &[set(&[0]), set(&[1])]).unwrap();
        let brute = closure(3, &[set(&[0]), set(&[1])]);
        assert_eq!(brute.len(), 8);
        assert_eq!(g.elements().unwrap().into_iter().collect::<std::collections::BTreeSet<_>>(), brute);
    }

    #[test]
    fn generated_matches_closure_on_four_atoms() {
        for g1 in 0..16u128 {
            for g2 in [0b0011u128, 0b0101, 0b1001] {
                let gens = [AtomSet(g1), AtomSet(g2)];
                let sub = generated_by(4, &gens);
                let els: std::collections::BTreeSet<_> = sub.elements().unwrap().into_iter().collect();
                assert_eq!(els, closure(4, &gens));
            }
        }
    }

    #[test]
    fn element_outside_algebra_is_rejected() {
        let b = FiniteBoolAlg::numbered(3).unwrap();
        assert!(generated_subalgebra(&b, &[set(&[5])]).is_err());
    }

    #[test]
    fn projections() {
        let a = Subalgebra::from_blocks(4, vec![set(&[0, 1]), set(&[2, 3])]).unwrap();
        assert_eq!(a.below(set(&[0, 1, 2])), set(&[0, 1]));
        assert_eq!(a.above(set(&[0, 1, 2])), set(&[0, 1, 2, 3]));
        assert_eq!(a.below(set(&[0])), AtomSet::EMPTY);
        assert_eq!(a.above(set(&[0])), set(&[0, 1]));
        let top = AtomSet::full(4);
        assert_eq!((a.below(top), a.above(top)), (top, top));
    }

    #[test]
    fn join_and_meet_of_partitions() {
        let a = Subalgebra::from_blocks(4, vec![set(&[0, 1]), set(&[2, 3])]).unwrap();
        let b = Subalgebra::from_blocks(4, vec![set(&[0, 2]), set(&[1, 3])]).unwrap();
        assert!(a.join(&b).is_full());
        assert_eq!(a.meet(&b), Subalgebra::trivial(4));
        let c = Subalgebra::from_blocks(4, vec![set(&[0]), set(&[1]), set(&[2, 3])]).unwrap();
        assert_eq!(a.meet(&c), a);
        assert!(a.is_subalgebra_of(&c));
        assert!(!c.is_subalgebra_of(&a));
    }

    #[test]
    fn relative_round_trip() {
        let within = Subalgebra::from_blocks(4, vec![set(&[0]), set(&[1]), set(&[2, 3])]).unwrap();
        let a = Subalgebra::from_blocks(4, vec![set(&[0, 1]), set(&[2, 3])]).unwrap();
        let rel = a.relative_to(&within).unwrap();
        assert_eq!(rel.blocks(), &[set(&[0, 1]), set(&[2])]);
        let e = set(&[0, 2, 3]);
        assert_eq!(Subalgebra::from_relative(&within, Subalgebra::to_relative(&within, e)), e);
    }
}
