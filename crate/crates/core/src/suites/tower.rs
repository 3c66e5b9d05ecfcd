//! Back-and-forth between permuted free towers, embedding into larger
//! towers, and the exhaustive skeleton suite.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{run_cases, run_indexed, Case, Checked, SuiteConfig, SuiteReport};
use crate::boolean::DualSurjection;
use crate::error::Result;
use crate::tower::boolean::{back_and_forth, complete_diagram, pointed_back_and_forth, replay, BoolStepSpec, BoolTower};
use crate::tower::skeleton::{is_saturated, saturate, skeleton_posex_check};
use crate::tower::Tower;

/// Free steps of the given sizes, and a permutation of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutedCase {
    pub sizes: Vec<usize>,
    pub order: Vec<usize>,
    /// Designated atoms of the two tops.
    pub p: usize,
    pub q: usize,
    /// An extra free step for the larger tower.
    pub extra: usize,
}

impl PermutedCase {
    pub fn generate(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Self {
        let mut sizes = Vec::new();
        let mut top = 1;
        let cap = cfg.max_atoms.max(2) * 4;
        for _ in 0..rng.gen_range(1..=4) {
            let k = rng.gen_range(2..=3);
            if top * k > cap {
                break;
            }
            top *= k;
            sizes.push(k);
        }
        if sizes.is_empty() {
            sizes.push(2);
            top = 2;
        }
        let mut order: Vec<usize> = (0..sizes.len()).collect();
        order.shuffle(rng);
        PermutedCase {
            p: rng.gen_range(0..top),
            q: rng.gen_range(0..top),
            sizes,
            order,
            extra: rng.gen_range(2..=3),
        }
    }

    fn towers(&self) -> Result<(BoolTower, BoolTower)> {
        let a: Vec<BoolStepSpec> = self.sizes.iter().map(|&k| BoolStepSpec::free(k)).collect();
        let b: Vec<BoolStepSpec> = self.order.iter().map(|&i| BoolStepSpec::free(self.sizes[i])).collect();
        Ok((BoolTower::build(&a)?, BoolTower::build(&b)?))
    }
}

impl Case for PermutedCase {
    fn shrink(&self) -> Vec<Self> {
        if self.sizes.len() <= 1 {
            return Vec::new();
        }
        // drop the last step of the first tower, and its image in the order
        let last = self.sizes.len() - 1;
        let mut c = self.clone();
        c.sizes.pop();
        c.order.retain(|&i| i != last);
        let top: usize = c.sizes.iter().product();
        c.p %= top;
        c.q %= top;
        vec![c]
    }
}

fn check_permuted(case: &PermutedCase) -> Result<Checked> {
    let mut ch = Checked::default();
    let (a, b) = case.towers()?;
    let run = back_and_forth(&a, &b)?;
    let again = back_and_forth(&a, &b)?;
    match &run.iso {
        Some(iso) => {
            ch.law("iso_found", true, String::new);
            ch.law("iso_is_isomorphism", iso.is_isomorphism() && iso.verify_homomorphism(64), || {
                "returned map is not a Boolean isomorphism".into()
            });
        }
        None => ch.law("iso_found", false, || format!("{:?}", run.transcript.outcome)),
    }
    ch.law("transcript_replays", replay(&a, &b, None, &run.transcript)?, || "replay differs".into());
    ch.law("deterministic", again.transcript == run.transcript, || "second run differs".into());

    let pointed = pointed_back_and_forth(&a, case.p, &b, case.q)?;
    match &pointed.iso {
        Some(iso) => {
            ch.law("pointed_maps_point", iso.atom_map()[case.q] == case.p, || {
                format!("atom {} of the right top goes to {}", case.q, iso.atom_map()[case.q])
            });
            ch.law("pointed_implies_plain", run.iso.is_some(), || "pointed run succeeded alone".into());
        }
        None => ch.law("pointed_maps_point", false, || format!("{:?}", pointed.transcript.outcome)),
    }
    ch.law(
        "pointed_replays",
        replay(&a, &b, Some((case.p, case.q)), &pointed.transcript)?,
        || "pointed replay differs".into(),
    );

    // T embeds into any tower extending its step multiset
    let mut bigger: Vec<BoolStepSpec> = case.order.iter().map(|&i| BoolStepSpec::free(case.sizes[i])).collect();
    bigger.insert(bigger.len() / 2, BoolStepSpec::free(case.extra));
    let big = BoolTower::build(&bigger)?;
    let mut f = DualSurjection::from_trivial(big.top());
    let mut ok = true;
    for step in a.steps() {
        match complete_diagram(&f, &step.square.swapped())? {
            Some(g) => {
                // g extends f along the stage inclusion
                let back = step.square.s_to_b.then(&g)?;
                ok &= back == f;
                f = g;
            }
            None => {
                ok = false;
                break;
            }
        }
    }
    ch.law("universality", ok && f.verify_homomorphism(64), || "top does not embed".into());
    Ok(ch)
}

/// Back-and-forth over permuted free towers, pointed variant, replay.
pub fn back_and_forth_laws(cfg: &SuiteConfig) -> SuiteReport {
    run_cases("tower", cfg, PermutedCase::generate, check_permuted)
}

/// A tower whose step `α` has `R_α = E(deps[α])` and two atoms of `S_α`
/// over each block of `R_α`, so the top has `2^len` atoms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonCase {
    pub deps: Vec<Vec<usize>>,
}

impl SkeletonCase {
    /// The `id`-th tower of length `len` in mixed-radix order.
    fn nth(len: usize, mut id: usize) -> Self {
        let mut deps = Vec::with_capacity(len);
        for alpha in 0..len {
            let mask = id % (1 << alpha);
            id >>= alpha;
            deps.push((0..alpha).filter(|i| mask >> i & 1 == 1).collect());
        }
        SkeletonCase { deps }
    }

    pub fn build(&self) -> Result<BoolTower> {
        let mut specs: Vec<BoolStepSpec> = Vec::new();
        for deps in &self.deps {
            let cur = BoolTower::build(&specs)?;
            let r = cur.generated(deps);
            specs.push(BoolStepSpec {
                r_blocks: r.blocks().iter().map(|b| b.indices().collect()).collect(),
                s_over: (0..r.num_blocks()).flat_map(|k| [k, k]).collect(),
                s_labels: None,
            });
        }
        BoolTower::build(&specs)
    }
}

impl Case for SkeletonCase {
    fn shrink(&self) -> Vec<Self> {
        let mut out = Vec::new();
        if !self.deps.is_empty() {
            let mut c = self.clone();
            c.deps.pop();
            out.push(c);
        }
        for a in 0..self.deps.len() {
            if !self.deps[a].is_empty() {
                let mut c = self.clone();
                c.deps[a].pop();
                out.push(c);
            }
        }
        out
    }
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0..1u32 << n).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

fn check_skeleton(case: &SkeletonCase) -> Result<Checked> {
    let mut ch = Checked::default();
    let t = Tower::Boolean(case.build()?);
    let n = t.len();
    let all = subsets(n);
    let sat: Vec<Vec<usize>> = all.iter().map(|g| saturate(&t, g).map(|s| s.ordinals)).collect::<Result<_>>()?;
    for (g, s) in all.iter().zip(&sat) {
        ch.law("saturated", is_saturated(&t, s), || format!("saturate({g:?}) = {s:?}"));
        ch.law("idempotent", saturate(&t, s)?.ordinals == *s, || format!("Γ = {g:?}"));
        ch.law("contains_gamma", g.iter().all(|x| s.contains(x)), || format!("Γ = {g:?}"));
        ch.law("keeps_max", g.iter().max() == s.iter().max(), || format!("Γ = {g:?}"));
    }
    let as_mask = |v: &[usize]| v.iter().fold(0u32, |m, &i| m | 1 << i);
    for (i, g) in all.iter().enumerate() {
        for (j, h) in all.iter().enumerate() {
            let (mg, mh) = (as_mask(g), as_mask(h));
            if mg & mh == mg {
                let (sg, sh) = (as_mask(&sat[i]), as_mask(&sat[j]));
                ch.law("monotone", sg & sh == sg, || format!("Γ = {g:?} ⊆ Γ' = {h:?}"));
            }
        }
    }
    for g in all.iter().filter(|g| is_saturated(&t, g)) {
        for d in &all {
            let c = skeleton_posex_check(&t, g, d)?;
            ch.law("skeleton_posex", c.holds, || format!("Γ = {g:?}, Δ = {d:?}"));
        }
    }
    Ok(ch)
}

/// Every tower of the `SkeletonCase` family with `2^len ≤ max_atoms`.
pub fn skeleton_towers(max_atoms: usize) -> Vec<SkeletonCase> {
    let mut out = Vec::new();
    let mut len = 0;
    while 1usize << len <= max_atoms.max(1) {
        let count: usize = (0..len).map(|a| 1usize << a).product();
        out.extend((0..count).map(|id| SkeletonCase::nth(len, id)));
        len += 1;
    }
    out
}

/// Saturation laws and the skeleton push-out check, exhaustively.
pub fn skeleton_laws(cfg: &SuiteConfig) -> SuiteReport {
    let towers = skeleton_towers(cfg.max_atoms);
    run_indexed("skeleton", cfg, towers.len(), |id| towers[id].clone(), check_skeleton)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tower_family_sizes() {
        assert_eq!(skeleton_towers(8).len(), 1 + 1 + 2 + 8);
        let t = SkeletonCase::nth(3, 7).build().unwrap();
        assert_eq!(t.top().len(), 8);
        assert!(t.verify());
    }

    #[test]
    fn small_runs_pass() {
        let cfg = SuiteConfig {
            seed: 2,
            instances: 30,
            max_atoms: 8,
            ..SuiteConfig::default()
        };
        let r = back_and_forth_laws(&cfg);
        assert!(r.passed(), "{:?}", r.failures);
        let r = skeleton_laws(&cfg);
        assert!(r.passed(), "{:?}", r.failures);
    }
}
