//! Boolean towers `{0,1} = B_0 ⊂ B_1 ⊂ … ⊂ B_n`, each step a push-out
//! `B_{α+1} = PO_{R_α}[S_α, B_α]`, diagram completion, and back-and-forth.

use serde::{Deserialize, Serialize};

use crate::boolean::{pushout, AtomSet, DualSurjection, FiniteBoolAlg, PushoutSquare, Subalgebra};
use crate::error::{domain, precondition, Error, Result};

/// One step: `R_α` as blocks of the current top atoms, and the atoms of
/// `S_α` listed by the `R_α` block they lie over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoolStepSpec {
    /// Partition of the current atoms; empty means the trivial subalgebra.
    #[serde(default)]
    pub r_blocks: Vec<Vec<usize>>,
    pub s_over: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_labels: Option<Vec<String>>,
}

impl BoolStepSpec {
    /// Adjoins a free `k`-atom algebra over the trivial subalgebra.
    pub fn free(k: usize) -> Self {
        BoolStepSpec {
            r_blocks: Vec::new(),
            s_over: vec![0; k],
            s_labels: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BoolStep {
    pub spec: BoolStepSpec,
    /// `R_α` inside `B_α`.
    pub r: Subalgebra,
    pub s: FiniteBoolAlg,
    /// Square with `B_α` in the first slot and `S_α` in the second.
    pub square: PushoutSquare,
}

#[derive(Clone, Debug)]
pub struct BoolTower {
    stages: Vec<FiniteBoolAlg>,
    steps: Vec<BoolStep>,
    /// `to_stage[k][t]`: the atom of `B_k` below top atom `t`.
    to_stage: Vec<Vec<usize>>,
    s_images: Vec<Subalgebra>,
    r_images: Vec<Subalgebra>,
}

impl BoolTower {
    pub fn build(steps: &[BoolStepSpec]) -> Result<Self> {
        let mut stages = vec![FiniteBoolAlg::trivial()];
        let mut built = Vec::with_capacity(steps.len());
        for (alpha, spec) in steps.iter().enumerate() {
            let cur = stages.last().unwrap().clone();
            let n = cur.len();
            let r = if spec.r_blocks.is_empty() {
                Subalgebra::trivial(n)
            } else {
                let blocks = spec
                    .r_blocks
                    .iter()
                    .map(|b| {
                        if let Some(&i) = b.iter().find(|&&i| i >= n) {
                            Err(precondition(format!("step {alpha}: atom {i} is not in the current stage")))
                        } else {
                            Ok(AtomSet::from_indices(b.iter().copied()))
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                Subalgebra::from_blocks(n, blocks)
                    .map_err(|e| precondition(format!("step {alpha}: R is not a subalgebra of the current stage: {e}")))?
            };
            let labels: Vec<String> = match &spec.s_labels {
                Some(l) if l.len() == spec.s_over.len() => l.clone(),
                Some(_) => return Err(domain(format!("step {alpha}: one label per S atom required"))),
                None => (0..spec.s_over.len()).map(|i| format!("s{alpha}.{i}")).collect(),
            };
            let r_alg = FiniteBoolAlg::new((0..r.num_blocks()).map(|k| format!("r{k}")))?;
            let s = FiniteBoolAlg::new(labels)
                .map_err(|e| precondition(format!("step {alpha}: {e}")))?;
            let u = DualSurjection::new(r_alg.clone(), s.clone(), spec.s_over.clone())
                .map_err(|e| precondition(format!("step {alpha}: S does not extend R: {e}")))?;
            let v = DualSurjection::new(r_alg, cur, r.labelling())?;
            let square = pushout(&v, &u)?;
            stages.push(square.b().clone());
            built.push(BoolStep {
                spec: spec.clone(),
                r,
                s,
                square,
            });
        }
        let top_n = stages.last().unwrap().len();
        let mut to_stage = vec![Vec::new(); stages.len()];
        to_stage[stages.len() - 1] = (0..top_n).collect();
        for k in (0..built.len()).rev() {
            let inc = built[k].square.s_to_b.atom_map();
            to_stage[k] = to_stage[k + 1].iter().map(|&t| inc[t]).collect();
        }
        let s_images = built
            .iter()
            .enumerate()
            .map(|(k, st)| {
                let m = st.square.a_to_b.atom_map();
                Subalgebra::from_labelling(to_stage[k + 1].iter().map(|&t| m[t]))
            })
            .collect();
        let r_images = built
            .iter()
            .enumerate()
            .map(|(k, st)| Subalgebra::from_labelling(to_stage[k].iter().map(|&t| st.r.block_of(t))))
            .collect();
        Ok(BoolTower {
            stages,
            steps: built,
            to_stage,
            s_images,
            r_images,
        })
    }

    pub fn stages(&self) -> &[FiniteBoolAlg] {
        &self.stages
    }

    pub fn steps(&self) -> &[BoolStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn top(&self) -> &FiniteBoolAlg {
        self.stages.last().unwrap()
    }

    /// `B_k` as a subalgebra of the top.
    pub fn stage_in_top(&self, k: usize) -> Subalgebra {
        Subalgebra::from_labelling(self.to_stage[k].iter().copied())
    }

    /// Embedding `B_k → top`.
    pub fn stage_embedding(&self, k: usize) -> DualSurjection {
        DualSurjection::new(self.stages[k].clone(), self.top().clone(), self.to_stage[k].clone())
            .expect("stage projections are surjective")
    }

    pub fn s_image(&self, alpha: usize) -> &Subalgebra {
        &self.s_images[alpha]
    }

    pub fn r_image(&self, alpha: usize) -> &Subalgebra {
        &self.r_images[alpha]
    }

    /// `E(Γ) = ⟨⋃_{γ∈Γ} S_γ⟩` inside the top.
    pub fn generated(&self, gamma: &[usize]) -> Subalgebra {
        gamma
            .iter()
            .fold(Subalgebra::trivial(self.top().len()), |acc, &g| acc.join(&self.s_images[g]))
    }

    /// Every step certificate is a push-out diagram.
    pub fn verify(&self) -> bool {
        self.steps.iter().all(|s| s.square.is_pushout_diagram())
    }
}

/// Lexicographically least dual assignment of `top` atoms to `B` atoms
/// that respects the labels (`base[t]` must equal `over[g(t)]`).
///
/// Without quotas every `B` atom is hit at least once; with quotas atom `b`
/// receives exactly `quota[b]` top atoms. `pin = (b, t)` forces `g(t) = b`.
fn assign(base: &[usize], over: &[usize], quota: Option<&[usize]>, pin: Option<(usize, usize)>) -> Option<Vec<usize>> {
    let labels = base.iter().chain(over).copied().max().map_or(0, |m| m + 1);
    let mut fiber_b: Vec<Vec<usize>> = vec![Vec::new(); labels];
    for (b, &l) in over.iter().enumerate() {
        fiber_b[l].push(b);
    }
    let mut fiber_t: Vec<Vec<usize>> = vec![Vec::new(); labels];
    for (t, &l) in base.iter().enumerate() {
        fiber_t[l].push(t);
    }
    if let Some((b, t)) = pin {
        if base[t] != over[b] {
            return None;
        }
    }
    let mut g = vec![usize::MAX; base.len()];
    for l in 0..labels {
        let bs = &fiber_b[l];
        let ts = &fiber_t[l];
        if bs.is_empty() {
            if ts.is_empty() {
                continue;
            }
            return None;
        }
        let pinned = pin.filter(|&(_, t)| base[t] == l);
        match quota {
            Some(qs) => {
                let mut left: Vec<usize> = bs.iter().map(|&b| qs[b]).collect();
                if left.iter().sum::<usize>() != ts.len() {
                    return None;
                }
                let pb = pinned.map(|(b, _)| bs.iter().position(|&x| x == b).unwrap());
                let mut reserved = pb.is_some();
                for &t in ts {
                    let k = if pinned.map(|(_, pt)| pt) == Some(t) {
                        reserved = false;
                        pb.unwrap()
                    } else {
                        (0..bs.len()).find(|&k| {
                            let avail = left[k] - usize::from(reserved && Some(k) == pb);
                            avail > 0
                        })?
                    };
                    if left[k] == 0 {
                        return None;
                    }
                    left[k] -= 1;
                    g[t] = bs[k];
                }
            }
            None => {
                if ts.len() < bs.len() {
                    return None;
                }
                let pb = pinned.map(|(b, _)| bs.iter().position(|&x| x == b).unwrap());
                let pt = pinned.map(|(_, t)| t);
                let mut covered = vec![false; bs.len()];
                for (i, &t) in ts.iter().enumerate() {
                    let k = if pt == Some(t) {
                        pb.unwrap()
                    } else {
                        let pin_later = pt.is_some_and(|p| p > t);
                        let free_after = ts.len() - i - 1 - usize::from(pin_later);
                        (0..bs.len()).find(|&k| {
                            let missing = (0..bs.len())
                                .filter(|&x| !covered[x] && x != k && !(pin_later && Some(x) == pb))
                                .count();
                            missing <= free_after
                        })?
                    };
                    covered[k] = true;
                    g[t] = bs[k];
                }
                let uncovered = covered.iter().filter(|c| !**c).count();
                if uncovered > 0 {
                    return None;
                }
            }
        }
    }
    Some(g)
}

/// Extends `A → top` along a push-out extension `A → B` to `B → top`.
///
/// `ext` must be a push-out diagram with `A` in its second slot. Dually
/// the completion assigns each top atom over an atom `α` of `A` to an atom
/// of `B` over `α`, surjectively. Fibers are split as evenly as possible,
/// so later extensions keep room; among even splits the lexicographically
/// least assignment is returned. `None` when some fiber of `top` is too small.
pub fn complete_diagram(a_in_top: &DualSurjection, ext: &PushoutSquare) -> Result<Option<DualSurjection>> {
    if !ext.is_pushout_diagram() {
        return Err(precondition("extension does not carry a push-out certificate"));
    }
    if ext.a_to_b.source() != a_in_top.source() {
        return Err(precondition("extension does not start at A"));
    }
    let over = ext.a_to_b.atom_map();
    let base = a_in_top.atom_map();
    let mut quota = vec![0; over.len()];
    for l in 0..a_in_top.source().len() {
        let m = base.iter().filter(|&&x| x == l).count();
        let bs: Vec<usize> = (0..over.len()).filter(|&b| over[b] == l).collect();
        if m < bs.len() {
            return Ok(None);
        }
        for (j, &b) in bs.iter().enumerate() {
            quota[b] = m / bs.len() + usize::from(j < m % bs.len());
        }
    }
    Ok(assign(base, over, Some(&quota), None).map(|g| {
        DualSurjection::new(ext.b().clone(), a_in_top.target().clone(), g).expect("assignment is surjective")
    }))
}

/// One round of the back-and-forth: the partial isomorphism after it,
/// as paired blocks (left top atoms, right top atoms).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub round: usize,
    /// `forward` extends the map along the left tower, `back` its inverse along the right.
    pub side: String,
    pub stage: usize,
    pub pairs: Vec<(Vec<usize>, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub rounds: Vec<Round>,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    /// `atom_map[t']` is the left atom matched with right atom `t'`.
    Isomorphism { atom_map: Vec<usize> },
    Failure { round: usize, side: String, stage: usize, reason: String },
}

/// Result of a back-and-forth run.
#[derive(Clone, Debug)]
pub struct BackAndForth {
    /// `top(T) → top(T')` on success.
    pub iso: Option<DualSurjection>,
    pub transcript: Transcript,
}

fn blocks_of(pairs: &[(AtomSet, AtomSet)], left: bool) -> Vec<usize> {
    // label of each atom: the index of the pair containing it
    let n: usize = pairs.iter().map(|(l, r)| if left { l.len() } else { r.len() }).sum();
    let mut out = vec![0; n];
    for (k, (l, r)) in pairs.iter().enumerate() {
        for i in (if left { *l } else { *r }).indices() {
            out[i] = k;
        }
    }
    out
}

/// Extends the partial isomorphism `pairs` so that its domain (left, or
/// right when `flip`) contains `refine`.
fn extend(
    pairs: &[(AtomSet, AtomSet)],
    refine: &Subalgebra,
    flip: bool,
    points: Option<(usize, usize)>,
) -> std::result::Result<Vec<(AtomSet, AtomSet)>, String> {
    let (dom_side, rng_side) = (!flip, flip);
    let dom_labels = blocks_of(pairs, dom_side);
    let rng_labels = blocks_of(pairs, rng_side);
    let dom = Subalgebra::from_labelling(dom_labels.iter().copied()).join(refine);
    // new domain blocks, each over the pair that contains it
    let new_blocks: Vec<AtomSet> = dom.blocks().to_vec();
    let over: Vec<usize> = new_blocks.iter().map(|b| dom_labels[b.min_index().unwrap()]).collect();
    let quota: Vec<usize> = new_blocks.iter().map(|b| b.len()).collect();
    let pin = points.map(|(p_dom, p_rng)| (dom.block_of(p_dom), p_rng));
    let g = assign(&rng_labels, &over, Some(&quota), pin)
        .ok_or_else(|| "no size-preserving extension".to_string())?;
    let mut images = vec![AtomSet::EMPTY; new_blocks.len()];
    for (t, &b) in g.iter().enumerate() {
        images[b] = images[b].join(AtomSet::singleton(t));
    }
    Ok(new_blocks
        .into_iter()
        .zip(images)
        .map(|(d, r)| if flip { (r, d) } else { (d, r) })
        .collect())
}

fn to_round(round: usize, side: &str, stage: usize, pairs: &[(AtomSet, AtomSet)]) -> Round {
    let mut ps: Vec<(Vec<usize>, Vec<usize>)> = pairs
        .iter()
        .map(|(l, r)| (l.indices().collect(), r.indices().collect()))
        .collect();
    ps.sort();
    Round {
        round,
        side: side.to_string(),
        stage,
        pairs: ps,
    }
}

fn run(left: &BoolTower, right: &BoolTower, points: Option<(usize, usize)>) -> Result<BackAndForth> {
    let (nl, nr) = (left.top().len(), right.top().len());
    if let Some((p, q)) = points {
        if p >= nl || q >= nr {
            return Err(domain("designated atom outside the top algebra"));
        }
    }
    let fail = |rounds: Vec<Round>, round: usize, side: &str, stage: usize, reason: String| BackAndForth {
        iso: None,
        transcript: Transcript {
            rounds,
            outcome: Outcome::Failure {
                round,
                side: side.to_string(),
                stage,
                reason,
            },
        },
    };
    let mut rounds = Vec::new();
    if nl != nr {
        return Ok(fail(rounds, 0, "forward", 0, format!("top sizes differ: {nl} vs {nr} atoms")));
    }
    let mut pairs = vec![(AtomSet::full(nl), AtomSet::full(nr))];
    let (mut i, mut j) = (0, 0);
    let mut round = 0;
    while i < left.len() || j < right.len() {
        let forward = round % 2 == 0 && i < left.len() || j >= right.len();
        let (side, stage, refine, flip) = if forward {
            i += 1;
            ("forward", i, left.stage_in_top(i), false)
        } else {
            j += 1;
            ("back", j, right.stage_in_top(j), true)
        };
        let pts = points.map(|(p, q)| if flip { (q, p) } else { (p, q) });
        match extend(&pairs, &refine, flip, pts) {
            Ok(next) => pairs = next,
            Err(reason) => return Ok(fail(rounds, round, side, stage, reason)),
        }
        rounds.push(to_round(round, side, stage, &pairs));
        round += 1;
    }
    let mut atom_map = vec![usize::MAX; nr];
    for (l, r) in &pairs {
        if l.len() != 1 || r.len() != 1 {
            return Ok(fail(rounds, round, "forward", left.len(), "towers do not separate all atoms".into()));
        }
        atom_map[r.min_index().unwrap()] = l.min_index().unwrap();
    }
    let iso = DualSurjection::new(left.top().clone(), right.top().clone(), atom_map.clone())?;
    if let Some((p, q)) = points {
        if atom_map[q] != p {
            return Err(Error::Internal("designated atoms not matched".into()));
        }
    }
    Ok(BackAndForth {
        iso: Some(iso),
        transcript: Transcript {
            rounds,
            outcome: Outcome::Isomorphism { atom_map },
        },
    })
}

/// Alternating extension along both towers with exact size quotas.
pub fn back_and_forth(left: &BoolTower, right: &BoolTower) -> Result<BackAndForth> {
    run(left, right, None)
}

/// As [`back_and_forth`], with every extension sending the block of the
/// designated atom `p` onto a block containing `q`.
pub fn pointed_back_and_forth(left: &BoolTower, p: usize, right: &BoolTower, q: usize) -> Result<BackAndForth> {
    run(left, right, Some((p, q)))
}

/// Re-runs the search and checks the transcript round by round: each
/// round's partial map must restrict to the previous one, and the final
/// map must be the recorded isomorphism.
pub fn replay(left: &BoolTower, right: &BoolTower, points: Option<(usize, usize)>, transcript: &Transcript) -> Result<bool> {
    let fresh = run(left, right, points)?;
    if fresh.transcript != *transcript {
        return Ok(false);
    }
    let mut prev: Vec<(AtomSet, AtomSet)> = vec![(AtomSet::full(left.top().len()), AtomSet::full(right.top().len()))];
    for r in &transcript.rounds {
        let cur: Vec<(AtomSet, AtomSet)> = r
            .pairs
            .iter()
            .map(|(l, rr)| (AtomSet::from_indices(l.iter().copied()), AtomSet::from_indices(rr.iter().copied())))
            .collect();
        for (pl, pr) in &prev {
            let (ul, ur) = cur
                .iter()
                .filter(|(l, _)| l.subset_of(*pl))
                .fold((AtomSet::EMPTY, AtomSet::EMPTY), |(a, b), (l, r)| (a.join(*l), b.join(*r)));
            if ul != *pl || ur != *pr {
                return Ok(false);
            }
        }
        prev = cur;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free_tower(sizes: &[usize]) -> BoolTower {
        BoolTower::build(&sizes.iter().map(|&k| BoolStepSpec::free(k)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn free_steps_multiply() {
        let t = free_tower(&[2, 2]);
        let sizes: Vec<usize> = t.stages().iter().map(|s| s.len()).collect();
        assert_eq!(sizes, vec![1, 2, 4]);
        assert!(t.verify());
        assert_eq!(free_tower(&[]).top().len(), 1);
    }

    #[test]
    fn fiber_counting_per_step() {
        // step 2 splits the first of two atoms: 1 + 3
        let t = BoolTower::build(&[
            BoolStepSpec::free(2),
            BoolStepSpec {
                r_blocks: vec![vec![0], vec![1]],
                s_over: vec![0, 0, 0, 1],
                s_labels: None,
            },
        ])
        .unwrap();
        assert_eq!(t.top().len(), 4);
        assert!(t.verify());
    }

    #[test]
    fn bad_r_is_a_precondition_error() {
        let r = BoolTower::build(&[
            BoolStepSpec::free(2),
            BoolStepSpec {
                r_blocks: vec![vec![0]],
                s_over: vec![0],
                s_labels: None,
            },
        ]);
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn stage_blocks_are_intervals() {
        let t = free_tower(&[2, 3, 2]);
        for k in 0..=t.len() {
            for b in t.stage_in_top(k).blocks() {
                let idx: Vec<usize> = b.indices().collect();
                assert_eq!(idx.last().unwrap() - idx[0] + 1, idx.len());
            }
        }
    }

    #[test]
    fn assign_variants() {
        // fiber 0 has top atoms 0,1,2 and B atoms 0,1
        assert_eq!(assign(&[0, 0, 0], &[0, 0], None, None), Some(vec![0, 0, 1]));
        assert_eq!(assign(&[0, 0, 0], &[0, 0], None, Some((1, 0))), Some(vec![1, 0, 0]));
        assert_eq!(assign(&[0, 0, 0], &[0, 0], Some(&[1, 2]), None), Some(vec![0, 1, 1]));
        assert_eq!(assign(&[0, 0, 0], &[0, 0], Some(&[1, 2]), Some((0, 2))), Some(vec![1, 1, 0]));
        assert_eq!(assign(&[0], &[0, 0], None, None), None);
    }

    #[test]
    fn completion_cases() {
        let t = free_tower(&[2]);
        let a = t.stage_embedding(1);
        // B = A
        let id = DualSurjection::identity(t.top());
        let same = pushout(&id, &id).unwrap();
        assert_eq!(complete_diagram(&a, &same).unwrap().unwrap().atom_map(), a.atom_map());
        // B strictly larger than top
        let t2 = free_tower(&[2, 2]);
        let ext = t2.steps()[1].square.swapped();
        let none = complete_diagram(&DualSurjection::identity(t.top()), &ext).unwrap();
        assert!(none.is_none());
        // top is exactly the extension: coordinate embedding
        let got = complete_diagram(&t2.stage_embedding(1), &ext).unwrap().unwrap();
        assert!(got.is_isomorphism());
        assert_eq!(got.atom_map(), &[0, 1, 2, 3]);
    }

    #[test]
    fn identity_and_failure() {
        let t = free_tower(&[2, 3]);
        let r = back_and_forth(&t, &t).unwrap();
        let iso = r.iso.unwrap();
        assert_eq!(iso.atom_map(), (0..6).collect::<Vec<_>>().as_slice());
        assert!(iso.verify_homomorphism(64));
        let big = free_tower(&[2, 4]);
        let f = back_and_forth(&t, &big).unwrap();
        assert!(f.iso.is_none());
        assert!(matches!(f.transcript.outcome, Outcome::Failure { .. }));
    }

    #[test]
    fn permuted_free_steps_and_replay() {
        let a = free_tower(&[2, 3]);
        let b = free_tower(&[3, 2]);
        let r = back_and_forth(&a, &b).unwrap();
        assert!(r.iso.is_some());
        assert!(replay(&a, &b, None, &r.transcript).unwrap());
    }

    #[test]
    fn pointed_swap() {
        let t = free_tower(&[2]);
        let r = pointed_back_and_forth(&t, 0, &t, 1).unwrap();
        assert_eq!(r.iso.unwrap().atom_map(), &[1, 0]);
    }
}
