//! Push-out laws and posex facts for finite Boolean algebras.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::gen::{delete_entry, labelling, surjection};
use super::{run_cases, Case, Checked, SuiteConfig, SuiteReport};
use crate::boolean::{
    generated_subalgebra, ideal_complete_witness, is_internal_pushout, leq_rel, posex_witness, pushout, AtomSet,
    DualSurjection, FiniteBoolAlg, LeqSide, PushoutSquare, PushoutVerdict, Subalgebra,
};
use crate::error::Result;

/// `B = PO_R[S_N, A]` built from `R → S → S_2 → … → S_N` and `R → A`, plus
/// coarsenings of `S` and `A` for the laws that need smaller subalgebras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareCase {
    /// Law exercised: 1 chain union, 2 enlarged sides, 3 transitivity,
    /// 4 directed union, 5 tower composition, 6 amalgamation.
    pub shape: u8,
    pub r: usize,
    /// `s_over[i]`: the atom of `R` below atom `i` of `S`.
    pub s_over: Vec<usize>,
    pub a_over: Vec<usize>,
    /// `chain[k][i]`: the atom of `S_{k+1}` below atom `i` of `S_{k+2}`.
    pub chain: Vec<Vec<usize>>,
    /// Labellings of the atoms of `S` (resp. `A`); each is a coarsening.
    pub s_coarse: Vec<Vec<usize>>,
    pub a_coarse: Vec<Vec<usize>>,
}

impl SquareCase {
    pub fn generate(rng: &mut ChaCha8Rng, cfg: &SuiteConfig, shape: u8) -> Self {
        let m = cfg.max_atoms.max(1);
        let r = rng.gen_range(1..=m.min(3));
        let ns = rng.gen_range(r..=m);
        let na = rng.gen_range(r..=m);
        let levels = match shape {
            3 => 1,
            4 | 5 => rng.gen_range(1..=2),
            _ => 0,
        };
        let mut chain = Vec::new();
        let mut prev = ns;
        for _ in 0..levels {
            let next = rng.gen_range(prev..=m.max(prev));
            chain.push(surjection(rng, next, prev));
            prev = next;
        }
        let coarse = |rng: &mut ChaCha8Rng, n: usize| -> Vec<Vec<usize>> {
            (0..2)
                .map(|_| {
                    let k = rng.gen_range(1..=n);
                    labelling(rng, n, k)
                })
                .collect()
        };
        SquareCase {
            shape,
            r,
            s_over: surjection(rng, ns, r),
            a_over: surjection(rng, na, r),
            chain,
            s_coarse: coarse(rng, ns),
            a_coarse: coarse(rng, na),
        }
    }

    /// Atom counts of `S = S_1, S_2, …`.
    fn level_sizes(&self) -> Vec<usize> {
        std::iter::once(self.s_over.len()).chain(self.chain.iter().map(|c| c.len())).collect()
    }
}

impl Case for SquareCase {
    fn shrink(&self) -> Vec<Self> {
        let mut out = Vec::new();
        let sizes = self.level_sizes();
        let top = sizes.len() - 1;
        // delete an atom of A
        for i in 0..self.a_over.len() {
            if let Some(a_over) = delete_entry(&self.a_over, i, self.r) {
                let mut c = self.clone();
                c.a_over = a_over;
                for l in &mut c.a_coarse {
                    l.remove(i);
                }
                out.push(c);
            }
        }
        // delete an atom of the top level S_N
        for i in 0..sizes[top] {
            let mut c = self.clone();
            if top == 0 {
                match delete_entry(&self.s_over, i, self.r) {
                    Some(s) => c.s_over = s,
                    None => continue,
                }
                for l in &mut c.s_coarse {
                    l.remove(i);
                }
            } else {
                match delete_entry(&self.chain[top - 1], i, sizes[top - 1]) {
                    Some(s) => c.chain[top - 1] = s,
                    None => continue,
                }
            }
            out.push(c);
        }
        // drop the last level
        if !self.chain.is_empty() {
            let mut c = self.clone();
            c.chain.pop();
            out.push(c);
        }
        // merge two atoms of R
        if self.r > 1 {
            let j = self.r - 1;
            let mut c = self.clone();
            c.r -= 1;
            c.s_over = self.s_over.iter().map(|&x| if x == j { 0 } else { x }).collect();
            c.a_over = self.a_over.iter().map(|&x| if x == j { 0 } else { x }).collect();
            out.push(c);
        }
        out
    }
}

/// Subalgebra of `B` pulled back from a labelling of the atoms of a factor.
fn pulled(to_factor: &[usize], label: &[usize]) -> Subalgebra {
    Subalgebra::from_labelling(to_factor.iter().map(|&i| label[i]))
}

/// `⟨S ∪ A⟩ = PO[S, A]` decided inside `⟨S ∪ A⟩`.
fn po_within(s: &Subalgebra, a: &Subalgebra) -> Result<PushoutVerdict> {
    let big = s.join(a);
    let b = FiniteBoolAlg::numbered(big.num_blocks())?;
    is_internal_pushout(&b, &s.relative_to(&big)?, &a.relative_to(&big)?)
}

/// Prefix joins `c_0, c_0 ∨ c_1, …` of labellings pulled back to `B`.
fn prefix_chain(to_factor: &[usize], coarse: &[Vec<usize>]) -> Vec<Subalgebra> {
    let mut out: Vec<Subalgebra> = Vec::new();
    for l in coarse {
        let next = pulled(to_factor, l);
        let next = match out.last() {
            Some(p) => p.join(&next),
            None => next,
        };
        out.push(next);
    }
    out
}

struct Built {
    square: PushoutSquare,
    /// `levels[k][t]`: the atom of `S_k` below atom `t` of `B` (`S_0 = R`).
    levels: Vec<Vec<usize>>,
    to_a: Vec<usize>,
}

fn build(case: &SquareCase) -> Result<Built> {
    let r_alg = FiniteBoolAlg::numbered(case.r)?;
    // composite S_N → R
    let sizes = case.level_sizes();
    let mut down: Vec<Vec<usize>> = Vec::new(); // down[k][i]: S_k atom below S_N atom i
    let n_top = *sizes.last().unwrap();
    let mut cur: Vec<usize> = (0..n_top).collect();
    for k in (0..case.chain.len()).rev() {
        down.push(cur.clone());
        cur = cur.iter().map(|&i| case.chain[k][i]).collect();
    }
    down.push(cur.clone());
    let to_r: Vec<usize> = cur.iter().map(|&i| case.s_over[i]).collect();
    down.push(to_r.clone());
    down.reverse(); // down[0] = R, down[1] = S_1, …
    let s_top = FiniteBoolAlg::numbered(n_top)?;
    let u = DualSurjection::new(r_alg.clone(), s_top, to_r)?;
    let v = DualSurjection::new(r_alg, FiniteBoolAlg::numbered(case.a_over.len())?, case.a_over.clone())?;
    let square = pushout(&u, &v)?;
    let to_s = square.s_to_b.atom_map().to_vec();
    let levels = down.iter().map(|d| to_s.iter().map(|&t| d[t]).collect()).collect();
    let to_a = square.a_to_b.atom_map().to_vec();
    Ok(Built { square, levels, to_a })
}

fn check_square(case: &SquareCase) -> Result<Checked> {
    let mut ch = Checked::default();
    let bt = build(case)?;
    let sq = &bt.square;
    let n = sq.b().len();
    let verdict = sq.verdict();
    ch.law("construction", verdict.holds() && verdict.intersection == sq.r_image(), || {
        format!("pushout output fails its own certificate: {verdict:?}")
    });
    ch.law("forms_agree", verdict.forms_agree(), || format!("{verdict:?}"));
    let swapped = pushout(&sq.r_to_a, &sq.r_to_s)?;
    ch.law("symmetry", swapped.isomorphic_to(&sq.swapped()), || {
        "pushout(v, u) is not the swapped square".into()
    });
    let b = sq.b();
    let lvl = |k: usize| Subalgebra::from_labelling(bt.levels[k].iter().copied());
    let s = lvl(bt.levels.len() - 1);
    let a = sq.a_image();
    let to_s1 = &bt.levels[1];
    match case.shape {
        1 => {
            // S_k = S ∨ A'_k for an increasing chain A'_k ⊆ A
            let chain: Vec<Subalgebra> = prefix_chain(&bt.to_a, &case.a_coarse).iter().map(|x| s.join(x)).collect();
            let hyp = chain.iter().try_fold(true, |acc, sk| Ok::<_, crate::Error>(acc && is_internal_pushout(b, sk, &a)?.holds()))?;
            if hyp {
                let union = chain.iter().fold(s.clone(), |acc, x| acc.join(x));
                let v = is_internal_pushout(b, &union, &a)?;
                ch.law("chain_union", v.holds(), || format!("{v:?}"));
            }
        }
        2 => {
            let s_small = pulled(to_s1, &case.s_coarse[0]);
            let a_small = pulled(&bt.to_a, &case.a_coarse[0]);
            let v = is_internal_pushout(b, &s.join(&a_small), &a.join(&s_small))?;
            ch.law("enlarge_sides", v.holds(), || format!("S'={s_small:?} A'={a_small:?}: {v:?}"));
        }
        3 | 5 => {
            // B_k = ⟨S_k ∪ A⟩; hypotheses B_{k+1} = PO_{S_k}[S_{k+1}, B_k]
            let levels = bt.levels.len();
            let mut hyp = true;
            for k in 1..levels - 1 {
                let bk = lvl(k).join(&a);
                let sk1 = lvl(k + 1);
                let v = po_within(&sk1, &bk)?;
                hyp &= v.holds() && v.intersection == lvl(k).relative_to(&sk1.join(&bk))?;
            }
            if hyp {
                let v = is_internal_pushout(b, &s, &a)?;
                let law = if case.shape == 3 { "transitivity" } else { "tower_composition" };
                ch.law(law, v.holds() && v.intersection == lvl(0), || format!("{v:?}"));
            }
        }
        4 => {
            // B_k = PO_{S_0}[S_k, B_0] for each k ⇒ the union
            let mut hyp = true;
            for k in 1..bt.levels.len() {
                let sk = lvl(k);
                let v = po_within(&sk, &a)?;
                hyp &= v.holds() && v.intersection == lvl(0).relative_to(&sk.join(&a))?;
            }
            if hyp {
                let union = (1..bt.levels.len()).fold(Subalgebra::trivial(n), |acc, k| acc.join(&lvl(k).join(&a)));
                let v = is_internal_pushout(b, &s, &a)?;
                ch.law("directed_union", union.is_full() && v.holds() && v.intersection == lvl(0), || format!("{v:?}"));
            }
        }
        _ => {
            // directed families A_i ⊆ A, S_j ⊆ S
            let ai = prefix_chain(&bt.to_a, &case.a_coarse);
            let sj = prefix_chain(to_s1, &case.s_coarse);
            let mut hyp = true;
            for x in &ai {
                for y in &sj {
                    hyp &= po_within(y, x)?.holds();
                }
            }
            if hyp {
                let (x, y) = (ai.last().unwrap(), sj.last().unwrap());
                let v = po_within(y, x)?;
                ch.law("amalgamation", v.holds(), || format!("{v:?}"));
            }
        }
    }
    Ok(ch)
}

/// Push-out laws 1 to 6, cycling through the items by instance.
pub fn pushout_laws(cfg: &SuiteConfig) -> SuiteReport {
    run_cases(
        "boolean",
        cfg,
        |rng, cfg| {
            let shape = rng.gen_range(1..=6u8);
            SquareCase::generate(rng, cfg, shape)
        },
        check_square,
    )
}

/// Checks one stored push-out law case; for replaying counterexamples.
pub fn replay_square_case(case: &SquareCase) -> Result<Checked> {
    check_square(case)
}

/// `A ⊆ B = 2^n` by a labelling, and `Q` generating `B` over `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosexCase {
    pub n: usize,
    pub a_labels: Vec<usize>,
    pub q: Vec<AtomSet>,
    /// An element of `B` for the `≤_A` checks.
    pub b: AtomSet,
}

impl PosexCase {
    pub fn generate(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Self {
        let n = rng.gen_range(1..=cfg.max_atoms.clamp(1, 16));
        let k = rng.gen_range(1..=n);
        let a_labels = labelling(rng, n, k);
        let a = Subalgebra::from_labelling(a_labels.iter().copied());
        let random_elem = |rng: &mut ChaCha8Rng| AtomSet::from_indices((0..n).filter(|_| rng.gen_bool(0.5)));
        let mut q: Vec<AtomSet> = (0..rng.gen_range(0..=2)).map(|_| random_elem(rng)).collect();
        loop {
            let s = generated_subalgebra(&FiniteBoolAlg::numbered(n).unwrap(), &q).unwrap();
            let joint = s.join(&a);
            let Some(blk) = joint.blocks().iter().find(|b| b.len() > 1) else {
                break;
            };
            let atoms: Vec<usize> = blk.indices().collect();
            let k = rng.gen_range(1..atoms.len());
            let mut pick = AtomSet::from_indices(atoms[..k].iter().copied());
            pick = pick.join(random_elem(rng).minus(*blk));
            q.push(pick);
        }
        let b = random_elem(rng);
        PosexCase { n, a_labels, q, b }
    }
}

impl Case for PosexCase {
    fn shrink(&self) -> Vec<Self> {
        // drop generators that are not needed for generation
        (0..self.q.len())
            .filter_map(|i| {
                let mut c = self.clone();
                c.q.remove(i);
                let s = generated_subalgebra(&FiniteBoolAlg::numbered(c.n).ok()?, &c.q).ok()?;
                s.join(&Subalgebra::from_labelling(c.a_labels.iter().copied())).is_full().then_some(c)
            })
            .collect()
    }
}

fn check_posex(case: &PosexCase) -> Result<Checked> {
    let mut ch = Checked::default();
    let n = case.n;
    let b = FiniteBoolAlg::numbered(n)?;
    let a = Subalgebra::from_labelling(case.a_labels.iter().copied());
    let w = posex_witness(&b, &a, &case.q)?;
    let independent = is_internal_pushout(&b, &w.s, &a)?;
    ch.law("witness_is_pushout", w.verdict.holds() && independent.holds(), || format!("{independent:?}"));
    ch.law("witness_contains_q", case.q.iter().all(|x| w.s.contains(*x)), || "Q ⊄ S".into());
    ch.law("closure_terminates", w.iterations <= n, || format!("{} iterations for {n} atoms", w.iterations));

    // ≤_A coherence
    let below = a.below(case.b);
    ch.law("leq_projection", leq_rel(&a, case.b, &[below], LeqSide::QBelowB)?, || "Q = {below(b)}".into());
    ch.law("leq_above", leq_rel(&a, case.b, &[a.above(case.b)], LeqSide::BBelowQ)?, || "Q = {above(b)}".into());
    let smaller: Vec<AtomSet> = a.blocks().iter().copied().filter(|blk| blk.subset_of(case.b)).collect();
    let mut q = vec![below];
    q.extend(smaller);
    ch.law("leq_monotone", leq_rel(&a, case.b, &q, LeqSide::QBelowB)?, || format!("Q = {q:?}"));

    // rephrasing: for b ∈ S, {r ∈ R: r ≤ b} ≤_A b and b ≤_A {r ∈ R: b ≤ r}
    let r = &w.verdict.intersection;
    let s_elem = w.s.above(case.b);
    let ok = leq_rel(&a, s_elem, &[r.below(s_elem)], LeqSide::QBelowB)?
        && leq_rel(&a, s_elem, &[r.above(s_elem)], LeqSide::BBelowQ)?;
    ch.law("leq_pushout_rephrasing", ok, || format!("b = {s_elem:?}"));

    // ideal completion: I below a0, J below a disjoint a1
    if a.num_blocks() <= 10 {
        let blocks = a.blocks();
        let i0 = blocks.iter().step_by(3).fold(AtomSet::EMPTY, |acc, x| acc.join(*x));
        let j0 = blocks.iter().skip(1).step_by(3).fold(AtomSet::EMPTY, |acc, x| acc.join(*x));
        let ideal = |top: AtomSet| -> Vec<AtomSet> {
            let inside: Vec<AtomSet> = blocks.iter().copied().filter(|x| x.subset_of(top)).collect();
            (0..1u32 << inside.len())
                .map(|m| {
                    inside
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| m >> k & 1 == 1)
                        .fold(AtomSet::EMPTY, |acc, (_, x)| acc.join(*x))
                })
                .collect()
        };
        let got = ideal_complete_witness(&b, &a, &ideal(i0), &ideal(j0))?;
        let rest_splittable = blocks.iter().all(|x| x.subset_of(i0.join(j0)) || x.len() > 1);
        let ok = match got {
            Some(c) => rest_splittable && a.below(c) == i0 && a.below(c.complement(n)) == j0,
            None => !rest_splittable,
        };
        ch.law("ideal_completion", ok, || format!("I = ↓{i0:?}, J = ↓{j0:?}: {got:?}"));
    }
    Ok(ch)
}

/// Posex witness soundness and the `≤_A` and ideal-completion facts.
pub fn posex_laws(cfg: &SuiteConfig) -> SuiteReport {
    run_cases("posex", cfg, PosexCase::generate, check_posex)
}

pub fn replay_posex_case(case: &PosexCase) -> Result<Checked> {
    check_posex(case)
}
