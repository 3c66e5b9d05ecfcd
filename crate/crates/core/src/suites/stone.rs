//! Push-out squares against pull-back squares of finite spaces.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::gen::{labelling, surjection};
use super::{run_cases, Case, Checked, SuiteConfig, SuiteReport};
use crate::boolean::{FiniteBoolAlg, PushoutSquare, Subalgebra};
use crate::error::Result;
use crate::stone::{
    clopen_square, dual_square, duality_square_check, is_pullback_diagram, FiniteSpace, SquareOfSpaces,
    SurjectionMap,
};

/// Both directions from one draw.
///
/// Boolean side: subalgebras `S`, `A` of `2^n` by labellings, `R = S ∩ A`.
/// Space side: `S → R ← L` and `K` as a list of compatible pairs (repeats
/// allowed) that covers `S` and `L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityCase {
    pub n: usize,
    pub s_labels: Vec<usize>,
    pub a_labels: Vec<usize>,
    pub r: usize,
    pub s_over: Vec<usize>,
    pub l_over: Vec<usize>,
    pub k: Vec<(usize, usize)>,
}

impl DualityCase {
    pub fn generate(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Self {
        let m = cfg.max_atoms.max(1);
        let n = rng.gen_range(1..=m);
        let (ks, ka) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
        let s_labels = labelling(rng, n, ks);
        let a_labels = labelling(rng, n, ka);
        let r = rng.gen_range(1..=m.min(3));
        let (ns, nl) = (rng.gen_range(r..=m.min(4).max(r)), rng.gen_range(r..=m.min(4).max(r)));
        let s_over = surjection(rng, ns, r);
        let l_over = surjection(rng, nl, r);
        let pairs: Vec<(usize, usize)> = (0..s_over.len())
            .flat_map(|s| (0..l_over.len()).map(move |l| (s, l)))
            .filter(|&(s, l)| s_over[s] == l_over[l])
            .collect();
        // the exact fiber product, or a mutation of it
        let mut k = pairs.clone();
        match rng.gen_range(0..3) {
            0 => {}
            1 => {
                let i = rng.gen_range(0..k.len());
                let p = k[i];
                k.insert(i, p);
            }
            _ => {
                // drop pairs while S and L stay covered
                for _ in 0..rng.gen_range(1..=2) {
                    let i = rng.gen_range(0..k.len());
                    let mut t = k.clone();
                    t.remove(i);
                    if covers(&t, s_over.len(), l_over.len()) {
                        k = t;
                    }
                }
            }
        }
        DualityCase {
            n,
            s_labels,
            a_labels,
            r,
            s_over,
            l_over,
            k,
        }
    }

    fn square_of_spaces(&self) -> Result<SquareOfSpaces> {
        let pts = |p: &str, n: usize| FiniteSpace::new((0..n).map(|i| format!("{p}{i}")));
        let r = pts("r", self.r)?;
        let s = pts("s", self.s_over.len())?;
        let l = pts("l", self.l_over.len())?;
        let k = pts("k", self.k.len())?;
        let u = SurjectionMap::new(s.clone(), r.clone(), self.s_over.clone())?;
        let v = SurjectionMap::new(l.clone(), r, self.l_over.clone())?;
        let f = SurjectionMap::new(k.clone(), l, self.k.iter().map(|p| p.1).collect())?;
        let g = SurjectionMap::new(k, s, self.k.iter().map(|p| p.0).collect())?;
        SquareOfSpaces::new(f, g, u, v)
    }
}

fn covers(k: &[(usize, usize)], ns: usize, nl: usize) -> bool {
    super::gen::is_onto(&k.iter().map(|p| p.0).collect::<Vec<_>>(), ns)
        && super::gen::is_onto(&k.iter().map(|p| p.1).collect::<Vec<_>>(), nl)
}

impl Case for DualityCase {
    fn shrink(&self) -> Vec<Self> {
        let mut out = Vec::new();
        if self.n > 1 {
            let mut c = self.clone();
            c.n -= 1;
            c.s_labels.pop();
            c.a_labels.pop();
            out.push(c);
        }
        for i in 0..self.k.len() {
            let mut c = self.clone();
            c.k.remove(i);
            if covers(&c.k, c.s_over.len(), c.l_over.len()) {
                out.push(c);
            }
        }
        out
    }
}

fn check_duality(case: &DualityCase) -> Result<Checked> {
    let mut ch = Checked::default();
    // Boolean → spaces
    let b = FiniteBoolAlg::numbered(case.n)?;
    let s = Subalgebra::from_labelling(case.s_labels.iter().copied());
    let a = Subalgebra::from_labelling(case.a_labels.iter().copied());
    let po = PushoutSquare::from_subalgebras(&b, &s, &a)?;
    let po_verdict = po.is_pushout_diagram();
    let pb_verdict = is_pullback_diagram(&dual_square(&po))?.holds();
    ch.law("pushout_iff_dual_pullback", po_verdict == pb_verdict, || {
        format!("push-out {po_verdict}, dual pull-back {pb_verdict}")
    });
    if po_verdict {
        ch.law("duality_round_trip", duality_square_check(&po), || "dual square does not round-trip".into());
    }
    // spaces → Boolean
    let sq = case.square_of_spaces()?;
    let pb = is_pullback_diagram(&sq)?.holds();
    let clop = clopen_square(&sq)?.is_pushout_diagram();
    ch.law("pullback_iff_clopen_pushout", pb == clop, || format!("pull-back {pb}, clopen push-out {clop}"));
    ch.exercised.push(if po_verdict { "verdict_pushout" } else { "verdict_not_pushout" });
    ch.exercised.push(if pb { "verdict_pullback" } else { "verdict_not_pullback" });
    Ok(ch)
}

/// Push-out verdicts against dual pull-back verdicts, both directions.
pub fn duality_laws(cfg: &SuiteConfig) -> SuiteReport {
    run_cases("stone", cfg, DualityCase::generate, check_duality)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_sees_both_verdicts() {
        let cfg = SuiteConfig {
            seed: 11,
            instances: 80,
            max_atoms: 5,
            ..SuiteConfig::default()
        };
        let r = duality_laws(&cfg);
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.stats["pullback_iff_clopen_pushout"], 80);
        for v in ["verdict_pushout", "verdict_not_pushout", "verdict_pullback", "verdict_not_pullback"] {
            assert!(r.stats.get(v).copied().unwrap_or(0) > 0, "{v}: {:?}", r.stats);
        }
    }
}
