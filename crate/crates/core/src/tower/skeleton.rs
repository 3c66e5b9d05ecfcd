//! Saturated sets of steps and the skeleton push-out check.
//!
//! `E(Γ)` is the substructure generated by the `S_γ`, `γ ∈ Γ`. A set is
//! saturated when `R_α ⊆ E(Γ ∩ α)` for each `α ∈ Γ`.

use serde::Serialize;

use super::banach::BanachTower;
use super::boolean::BoolTower;
use super::Tower;
use crate::banach::is_internal_pushout_banach;
use crate::boolean::{posex_witness, AtomSet, FiniteBoolAlg, Subalgebra};
use crate::error::{precondition, Result};
use crate::geometry::matrix::{rank_of, Matrix};
use crate::geometry::Vector;

/// `E(Γ)`: a subalgebra of the top, or a basis of a subspace of the top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Skeleton {
    Boolean(Subalgebra),
    Banach(Vec<Vector>),
}

impl Skeleton {
    /// Number of atoms, or the dimension.
    pub fn size(&self) -> usize {
        match self {
            Skeleton::Boolean(s) => s.num_blocks(),
            Skeleton::Banach(b) => b.len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturatedSet {
    pub ordinals: Vec<usize>,
    pub generated: Skeleton,
}

fn gen_bool(t: &BoolTower, set: &[usize]) -> Subalgebra {
    t.generated(set)
}

fn r_inside(t: &Tower, alpha: usize, set: &[usize]) -> bool {
    match t {
        Tower::Boolean(t) => t.r_image(alpha).is_subalgebra_of(&gen_bool(t, set)),
        Tower::Banach(t) => {
            let e = t.generated(set);
            let dim = t.top().dim();
            let mut all = e.clone();
            all.extend(t.r_image(alpha));
            rank_of(&all, dim) == e.len()
        }
    }
}

/// The least `T ⊆ {0, …, α-1}` (by size, then lexicographically) with
/// `R_α ⊆ E(T)`. `E({0, …, α-1})` is the whole stage, so one exists.
fn dependency(t: &Tower, alpha: usize) -> Vec<usize> {
    for size in 0..=alpha {
        let mut found = None;
        for_each_subset(alpha, size, &mut |set| {
            if r_inside(t, alpha, set) {
                found = Some(set.to_vec());
                true
            } else {
                false
            }
        });
        if let Some(f) = found {
            return f;
        }
    }
    unreachable!("the full prefix generates the stage")
}

/// Visits `size`-subsets of `0..n` in lexicographic order until `f` returns true.
fn for_each_subset(n: usize, size: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == size {
            return f(cur);
        }
        for i in start..n {
            cur.push(i);
            if go(i + 1, n, size, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    go(0, n, size, &mut Vec::new(), f);
}

fn skeleton(t: &Tower, set: &[usize]) -> Skeleton {
    match t {
        Tower::Boolean(t) => Skeleton::Boolean(gen_bool(t, set)),
        Tower::Banach(t) => Skeleton::Banach(t.generated(set)),
    }
}

/// Whether `R_α ⊆ E(Γ ∩ α)` for every `α ∈ Γ`.
pub fn is_saturated(t: &Tower, gamma: &[usize]) -> bool {
    gamma.iter().all(|&a| {
        let below: Vec<usize> = gamma.iter().copied().filter(|&g| g < a).collect();
        r_inside(t, a, &below)
    })
}

/// Closes `Γ` downward under the fixed dependency sets of its members.
pub fn saturate(t: &Tower, gamma: &[usize]) -> Result<SaturatedSet> {
    if let Some(&g) = gamma.iter().find(|&&g| g >= t.len()) {
        return Err(precondition(format!("step {g} is not in the tower")));
    }
    let mut set: Vec<usize> = gamma.to_vec();
    set.sort_unstable();
    set.dedup();
    let mut work = set.clone();
    while let Some(a) = work.pop() {
        for d in dependency(t, a) {
            if let Err(pos) = set.binary_search(&d) {
                set.insert(pos, d);
                work.push(d);
            }
        }
    }
    debug_assert!(is_saturated(t, &set));
    Ok(SaturatedSet {
        generated: skeleton(t, &set),
        ordinals: set,
    })
}

/// Result of [`skeleton_posex_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkeletonCheck {
    pub holds: bool,
    /// Atoms or dimension of the witness `S`.
    pub witness_size: usize,
    /// Closure rounds (boolean) or `0`/`1` for the `span(S_δ)` / whole-space
    /// candidate (banach).
    pub iterations: usize,
}

/// Searches for `S` with `E(Γ ∪ Δ) = PO[S, E(Γ)]`, starting from the `S_δ`.
pub fn skeleton_posex_check(t: &Tower, gamma: &[usize], delta: &[usize]) -> Result<SkeletonCheck> {
    if let Some(&g) = gamma.iter().chain(delta).find(|&&g| g >= t.len()) {
        return Err(precondition(format!("step {g} is not in the tower")));
    }
    if !is_saturated(t, gamma) {
        return Err(precondition("Γ is not saturated"));
    }
    let mut both: Vec<usize> = gamma.iter().chain(delta).copied().collect();
    both.sort_unstable();
    both.dedup();
    match t {
        Tower::Boolean(t) => bool_check(t, gamma, delta, &both),
        Tower::Banach(t) => banach_check(t, gamma, delta, &both),
    }
}

fn bool_check(t: &BoolTower, gamma: &[usize], delta: &[usize], both: &[usize]) -> Result<SkeletonCheck> {
    let big = t.generated(both);
    let a = t.generated(gamma).relative_to(&big)?;
    let b = FiniteBoolAlg::numbered(big.num_blocks())?;
    let mut q: Vec<AtomSet> = Vec::new();
    for &d in delta {
        let s = t.s_image(d).relative_to(&big)?;
        q.extend(s.blocks().iter().copied());
    }
    let w = posex_witness(&b, &a, &q)?;
    Ok(SkeletonCheck {
        holds: w.verdict.holds(),
        witness_size: w.s.num_blocks(),
        iterations: w.iterations,
    })
}

fn banach_check(t: &BanachTower, gamma: &[usize], delta: &[usize], both: &[usize]) -> Result<SkeletonCheck> {
    let dim = t.top().dim();
    let big = t.generated(both);
    let y = t.top().restrict(&big)?;
    let coords = Matrix::from_columns(&big, dim);
    let local = |vs: Vec<Vector>| -> Vec<Vector> {
        vs.iter()
            .map(|v| coords.solve(v).expect("E(Γ) and S_δ lie in E(Γ ∪ Δ)"))
            .collect()
    };
    let x = local(t.generated(gamma));
    let s_delta: Vec<Vector> = delta.iter().flat_map(|&d| t.s_image(d)).collect();
    let s1 = local(crate::geometry::matrix::span_basis(&s_delta, dim));
    let whole: Vec<Vector> = (0..big.len()).map(|i| crate::geometry::unit(big.len(), i)).collect();
    for (i, s) in [s1, whole].into_iter().enumerate() {
        if is_internal_pushout_banach(&y, &s, &x)?.holds() {
            return Ok(SkeletonCheck {
                holds: true,
                witness_size: s.len(),
                iterations: i,
            });
        }
    }
    Ok(SkeletonCheck {
        holds: false,
        witness_size: 0,
        iterations: 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::boolean::BoolStepSpec;

    /// Step 2 sits over the split of step 0 only.
    fn dependent() -> Tower {
        // B_1 = {0,1}; B_2 = B_1 ⊗ 2 atoms: atoms (b1, s1) ordered, 4 atoms.
        // R_2 = the S_0 partition, which in B_2 is {0,1} | {2,3}.
        Tower::Boolean(
            BoolTower::build(&[
                BoolStepSpec::free(2),
                BoolStepSpec::free(2),
                BoolStepSpec {
                    r_blocks: vec![vec![0, 1], vec![2, 3]],
                    s_over: vec![0, 0, 1],
                    s_labels: None,
                },
            ])
            .unwrap(),
        )
    }

    #[test]
    fn saturation_examples() {
        let t = dependent();
        let s = saturate(&t, &[]).unwrap();
        assert!(s.ordinals.is_empty());
        assert_eq!(s.generated.size(), 1);
        assert_eq!(saturate(&t, &[2]).unwrap().ordinals, vec![0, 2]);
        assert_eq!(saturate(&t, &[1]).unwrap().ordinals, vec![1]);
        let free = Tower::Boolean(BoolTower::build(&[BoolStepSpec::free(2), BoolStepSpec::free(3)]).unwrap());
        assert_eq!(saturate(&free, &[1]).unwrap().ordinals, vec![1]);
    }

    #[test]
    fn saturate_is_a_closure() {
        let t = dependent();
        let all: Vec<Vec<usize>> = (0..8u32).map(|m| (0..3).filter(|i| m >> i & 1 == 1).collect()).collect();
        for g in &all {
            let s = saturate(&t, g).unwrap().ordinals;
            assert_eq!(saturate(&t, &s).unwrap().ordinals, s);
            assert!(is_saturated(&t, &s));
            assert_eq!(s.iter().max(), g.iter().max());
            for h in &all {
                if g.iter().all(|x| h.contains(x)) {
                    let sh = saturate(&t, h).unwrap().ordinals;
                    assert!(s.iter().all(|x| sh.contains(x)));
                }
            }
        }
    }

    #[test]
    fn skeleton_checks() {
        let t = dependent();
        assert!(skeleton_posex_check(&t, &[0, 1], &[0]).unwrap().holds);
        let c = skeleton_posex_check(&t, &[0], &[2]).unwrap();
        assert!(c.holds);
        assert!(matches!(skeleton_posex_check(&t, &[2], &[1]), Err(crate::Error::Precondition(_))));
    }
}
