//! Posex witnesses, ideal-completeness witnesses and the `≤_A` relation.

use serde::{Deserialize, Serialize};

use super::algebra::{generated_by, AtomSet, FiniteBoolAlg, Subalgebra};
use super::pushout::{is_internal_pushout, PushoutVerdict};
use crate::error::{domain, precondition, Error, Result};

/// A subalgebra `S` with `B = PO[S, A]`, as produced by [`posex_witness`].
#[derive(Clone, Debug)]
pub struct PosexWitness {
    pub s: Subalgebra,
    /// Number of closure rounds that changed `S`.
    pub iterations: usize,
    pub verdict: PushoutVerdict,
}

/// Closes `⟨Q⟩` under projections into `A` until `B = PO[S, A]`.
///
/// Each round adjoins `max{a ∈ A : a ≤ b}` for every `b` in the current
/// `S`; the lower projection of a complement is the complement of the upper
/// projection, so the dual filters come for free. Since every `b` is a join
/// of minimal elements `⌈α⌉_S` over blocks `α` of `A`, it suffices to adjoin
/// `⌊⌈α⌉_S⌋_A` for each block.
pub fn posex_witness(b: &FiniteBoolAlg, a: &Subalgebra, q: &[AtomSet]) -> Result<PosexWitness> {
    let n = b.len();
    if a.parent_atoms() != n {
        return Err(domain("A is not a subalgebra of B"));
    }
    for &x in q {
        b.check_element(x)?;
    }
    let mut s = generated_by(n, q);
    if !s.join(a).is_full() {
        return Err(precondition("Q does not generate B over A"));
    }
    let mut iterations = 0;
    loop {
        let mut gens: Vec<AtomSet> = s.blocks().to_vec();
        gens.extend(a.blocks().iter().map(|&alpha| a.below(s.above(alpha))));
        let next = generated_by(n, &gens);
        if next == s {
            break;
        }
        s = next;
        iterations += 1;
        if iterations > n {
            return Err(Error::Internal("posex closure failed to stabilize".into()));
        }
    }
    let verdict = is_internal_pushout(b, &s, a)?;
    if !verdict.holds() {
        return Err(Error::Internal("closure is not a push-out witness".into()));
    }
    Ok(PosexWitness {
        s,
        iterations,
        verdict,
    })
}

/// Checks that `elems` is an ideal of `A` and returns its generator.
fn ideal_generator(a: &Subalgebra, elems: &[AtomSet], name: &str) -> Result<AtomSet> {
    let mut set: Vec<AtomSet> = elems.to_vec();
    set.push(AtomSet::EMPTY);
    set.sort_unstable();
    set.dedup();
    if let Some(x) = set.iter().find(|x| !a.contains(**x)) {
        return Err(precondition(format!("{name} contains {x:?}, which is not in A")));
    }
    let top = set.iter().fold(AtomSet::EMPTY, |acc, &x| acc.join(x));
    let blocks_below = a.blocks().iter().filter(|blk| blk.subset_of(top)).count();
    if blocks_below >= 63 || set.len() as u64 != 1u64 << blocks_below {
        return Err(precondition(format!("{name} is not an ideal of A (not downward and join closed)")));
    }
    Ok(top)
}

/// Finds `c ∈ B` with `{a ∈ A : a ≤ c} = I` and `{a ∈ A : a ≤ c̄} = J`.
///
/// Ideals of a finite algebra are principal, so `c` must contain `⋁I`,
/// avoid `⋁J`, and split every other block of `A`. Returns `None` when some
/// remaining block is an atom of `B`. The returned `c` takes the lowest
/// atom of each remaining block.
pub fn ideal_complete_witness(
    b: &FiniteBoolAlg,
    a: &Subalgebra,
    i: &[AtomSet],
    j: &[AtomSet],
) -> Result<Option<AtomSet>> {
    if a.parent_atoms() != b.len() {
        return Err(domain("A is not a subalgebra of B"));
    }
    let i0 = ideal_generator(a, i, "I")?;
    let j0 = ideal_generator(a, j, "J")?;
    if !i0.disjoint(j0) {
        return Err(precondition("I and J are not orthogonal"));
    }
    let mut c = i0;
    for &blk in a.blocks() {
        if blk.subset_of(i0) || blk.subset_of(j0) {
            continue;
        }
        if blk.len() < 2 {
            return Ok(None);
        }
        c = c.join(AtomSet::singleton(blk.min_index().unwrap()));
    }
    Ok(Some(c))
}

/// Which side of `≤_A` to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LeqSide {
    /// `b ≤_A Q`: the filter above `b` in `A` is generated by `Q`.
    BBelowQ,
    /// `Q ≤_A b`: the ideal below `b` in `A` is generated by `Q`.
    QBelowB,
}

/// The relation `b ≤_A Q` (or `Q ≤_A b`) with `Q ⊆ A`.
pub fn leq_rel(a: &Subalgebra, b: AtomSet, q: &[AtomSet], side: LeqSide) -> Result<bool> {
    if let Some(x) = q.iter().find(|x| !a.contains(**x)) {
        return Err(domain(format!("{x:?} is not an element of A")));
    }
    let n = a.parent_atoms();
    Ok(match side {
        LeqSide::BBelowQ => {
            let m = q.iter().fold(AtomSet::full(n), |acc, &x| acc.meet(x));
            a.above(b) == m
        }
        LeqSide::QBelowB => {
            let m = q.iter().fold(AtomSet::EMPTY, |acc, &x| acc.join(x));
            a.below(b) == m
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> AtomSet {
        AtomSet::from_indices(xs.iter().copied())
    }

    /// The closure as literally stated: adjoin both projections of every element.
    fn closure_oracle(n: usize, a: &Subalgebra, q: &[AtomSet]) -> Subalgebra {
        let mut s = generated_by(n, q);
        loop {
            let mut gens = s.blocks().to_vec();
            for x in s.elements().unwrap() {
                gens.push(a.below(x));
                gens.push(a.above(x));
            }
            let next = generated_by(n, &gens);
            if next == s {
                return s;
            }
            s = next;
        }
    }

    #[test]
    fn trivial_when_a_is_everything() {
        let b = FiniteBoolAlg::numbered(3).unwrap();
        let w = posex_witness(&b, &Subalgebra::full(3), &[]).unwrap();
        assert_eq!(w.s, Subalgebra::trivial(3));
    }

    #[test]
    fn free_pair_adds_nothing() {
        // atoms of the free algebra on x, y: index 2x + y
        let b = FiniteBoolAlg::numbered(4).unwrap();
        let a = generated_by(4, &[set(&[2, 3])]);
        let y = set(&[1, 3]);
        let w = posex_witness(&b, &a, &[y]).unwrap();
        assert_eq!(w.s, generated_by(4, &[y]));
        assert_eq!(w.iterations, 0);
    }

    #[test]
    fn four_atom_example_matches_oracle() {
        let b = FiniteBoolAlg::numbered(4).unwrap();
        let a = Subalgebra::from_blocks(4, vec![set(&[0, 1]), set(&[2, 3])]).unwrap();
        let q = [set(&[0, 2])];
        let w = posex_witness(&b, &a, &q).unwrap();
        assert_eq!(w.s, closure_oracle(4, &a, &q));
        assert!(w.verdict.holds());
    }

    #[test]
    fn closure_matches_oracle_on_all_small_inputs() {
        let b = FiniteBoolAlg::numbered(5).unwrap();
        for code in 0..5usize.pow(5) {
            let a = Subalgebra::from_labelling((0..5).map(|i| code / 5usize.pow(i as u32) % 5));
            for qm in [0b10110u128, 0b00011, 0b11001] {
                let q = [AtomSet(qm), AtomSet(qm >> 1)];
                match posex_witness(&b, &a, &q) {
                    Ok(w) => assert_eq!(w.s, closure_oracle(5, &a, &q)),
                    Err(Error::Precondition(_)) => assert!(!generated_by(5, &q).join(&a).is_full()),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn non_generating_q_is_rejected() {
        let b = FiniteBoolAlg::numbered(4).unwrap();
        let a = Subalgebra::trivial(4);
        assert!(matches!(posex_witness(&b, &a, &[set(&[0])]), Err(Error::Precondition(_))));
    }

    /// Exhaustive search for `c`.
    fn ideal_oracle(n: usize, a: &Subalgebra, i0: AtomSet, j0: AtomSet) -> Vec<AtomSet> {
        (0..1u128 << n)
            .map(AtomSet)
            .filter(|&c| a.below(c) == i0 && a.below(c.complement(n)) == j0)
            .collect()
    }

    #[test]
    fn ideal_witness_agrees_with_exhaustive_search() {
        let b = FiniteBoolAlg::numbered(6).unwrap();
        let a = Subalgebra::from_blocks(6, vec![set(&[0, 1]), set(&[2, 3, 4]), set(&[5])]).unwrap();
        let cases: [(&[AtomSet], &[AtomSet]); 4] = [
            (&[], &[]),
            (&[set(&[0, 1])], &[set(&[5])]),
            (&[set(&[5])], &[]),
            (&[set(&[0, 1]), set(&[2, 3, 4]), set(&[0, 1, 2, 3, 4])], &[set(&[5])]),
        ];
        for (i, j) in cases {
            let got = ideal_complete_witness(&b, &a, i, j).unwrap();
            let i0 = i.iter().fold(AtomSet::EMPTY, |x, &y| x.join(y));
            let j0 = j.iter().fold(AtomSet::EMPTY, |x, &y| x.join(y));
            let all = ideal_oracle(6, &a, i0, j0);
            match got {
                Some(c) => assert!(all.contains(&c)),
                None => assert!(all.is_empty()),
            }
        }
    }

    #[test]
    fn principal_pair_returns_the_generator() {
        let b = FiniteBoolAlg::numbered(4).unwrap();
        let a = Subalgebra::from_blocks(4, vec![set(&[0, 1]), set(&[2, 3])]).unwrap();
        let a0 = set(&[0, 1]);
        let c = ideal_complete_witness(&b, &a, &[a0], &[set(&[2, 3])]).unwrap();
        assert_eq!(c, Some(a0));
    }

    #[test]
    fn ideal_preconditions() {
        let b = FiniteBoolAlg::numbered(4).unwrap();
        let a = Subalgebra::from_blocks(4, vec![set(&[0, 1]), set(&[2, 3])]).unwrap();
        let x = set(&[0, 1]);
        assert!(ideal_complete_witness(&b, &a, &[x], &[x]).is_err());
        // {1} without the elements below it is not an ideal
        assert!(ideal_complete_witness(&b, &a, &[set(&[0, 1, 2, 3])], &[]).is_err());
        assert!(ideal_complete_witness(&b, &a, &[set(&[0])], &[]).is_err());
    }

    #[test]
    fn leq_rel_basics() {
        let a = Subalgebra::from_blocks(4, vec![set(&[0, 1]), set(&[2, 3])]).unwrap();
        let b = set(&[1, 2]);
        assert!(leq_rel(&a, b, &[AtomSet::full(4)], LeqSide::BBelowQ).unwrap());
        assert!(leq_rel(&a, b, &[a.above(b)], LeqSide::BBelowQ).unwrap());
        assert!(leq_rel(&a, b, &[a.below(b)], LeqSide::QBelowB).unwrap());
        assert!(leq_rel(&a, set(&[0, 1, 2]), &[set(&[0, 1])], LeqSide::QBelowB).unwrap());
        assert!(!leq_rel(&a, set(&[0, 1, 2]), &[], LeqSide::QBelowB).unwrap());
        assert!(leq_rel(&a, b, &[set(&[0])], LeqSide::QBelowB).is_err());
    }
}
