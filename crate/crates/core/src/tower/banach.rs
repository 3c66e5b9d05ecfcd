//! Towers of polytopal spaces `0 = X_0 ⊂ X_1 ⊂ … ⊂ X_n` built by push-outs.

use serde::{Deserialize, Serialize};

use crate::banach::{pushout_banach, BanachPushout, LinearEmbedding, PolytopeSpace, MAX_EXACT_DIM};
use crate::error::{precondition, Error, Result};
use crate::geometry::matrix::{rank_of, span_basis, Matrix};
use crate::geometry::{neg, unit, Vector};

/// One step: `R_α` by a basis in current coordinates, the extension `S_α`,
/// and the isometric embedding `u: R_α → S_α` (`s.dim × r_basis.len()`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BanachStepSpec {
    pub r_basis: Vec<Vector>,
    pub s: PolytopeSpace,
    pub u: Matrix,
}

impl BanachStepSpec {
    /// Adjoins `s` over the zero subspace.
    pub fn free(s: PolytopeSpace) -> Self {
        let d = s.dim();
        BanachStepSpec {
            r_basis: Vec::new(),
            s,
            u: Matrix::zero(d, 0),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BanachStep {
    pub spec: BanachStepSpec,
    /// Square with `X_α` in the first slot and `S_α` in the second.
    pub square: BanachPushout,
}

#[derive(Clone, Debug)]
pub struct BanachTower {
    stages: Vec<PolytopeSpace>,
    steps: Vec<BanachStep>,
    /// `to_top[k]`: matrix of `X_k → top`.
    to_top: Vec<Matrix>,
}

impl BanachTower {
    pub fn build(steps: &[BanachStepSpec]) -> Result<Self> {
        let mut stages = vec![PolytopeSpace::zero()];
        let mut built = Vec::with_capacity(steps.len());
        for (alpha, spec) in steps.iter().enumerate() {
            let cur = stages.last().unwrap().clone();
            if spec.r_basis.iter().any(|b| b.len() != cur.dim()) || rank_of(&spec.r_basis, cur.dim()) < spec.r_basis.len() {
                return Err(precondition(format!(
                    "step {alpha}: R is not given by an independent basis of the current stage"
                )));
            }
            if cur.dim() + spec.s.dim() - spec.r_basis.len() > MAX_EXACT_DIM {
                return Err(Error::Limit(format!("step {alpha}: tower dimension would exceed {MAX_EXACT_DIM}")));
            }
            let r = cur.restrict(&spec.r_basis)?;
            let v = LinearEmbedding::new(r.clone(), cur.clone(), Matrix::from_columns(&spec.r_basis, cur.dim()))?;
            let u = LinearEmbedding::new(r, spec.s.clone(), spec.u.clone())
                .map_err(|e| precondition(format!("step {alpha}: R → S is not an isometric embedding: {e}")))?;
            let square = pushout_banach(&v, &u)?;
            stages.push(square.y().clone());
            built.push(BanachStep {
                spec: spec.clone(),
                square,
            });
        }
        let n = built.len();
        let mut to_top = vec![Matrix::identity(stages[n].dim()); n + 1];
        for k in (0..n).rev() {
            to_top[k] = to_top[k + 1].mul(built[k].square.s_to_y.matrix());
        }
        Ok(BanachTower {
            stages,
            steps: built,
            to_top,
        })
    }

    pub fn stages(&self) -> &[PolytopeSpace] {
        &self.stages
    }

    pub fn steps(&self) -> &[BanachStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn top(&self) -> &PolytopeSpace {
        self.stages.last().unwrap()
    }

    pub fn stage_embedding(&self, k: usize) -> LinearEmbedding {
        LinearEmbedding::new(self.stages[k].clone(), self.top().clone(), self.to_top[k].clone())
            .expect("compositions of isometries are isometries")
    }

    /// Columns spanning `S_α` inside the top.
    pub fn s_image(&self, alpha: usize) -> Vec<Vector> {
        self.to_top[alpha + 1].mul(self.steps[alpha].square.x_to_y.matrix()).columns()
    }

    /// Columns spanning `R_α` inside the top.
    pub fn r_image(&self, alpha: usize) -> Vec<Vector> {
        self.to_top[alpha].mul(&Matrix::from_columns(&self.steps[alpha].spec.r_basis, self.stages[alpha].dim())).columns()
    }

    /// Canonical basis of `E(Γ) = span ⋃_{γ∈Γ} S_γ` in the top.
    pub fn generated(&self, gamma: &[usize]) -> Vec<Vector> {
        let all: Vec<Vector> = gamma.iter().flat_map(|&g| self.s_image(g)).collect();
        span_basis(&all, self.top().dim())
    }

    pub fn verify(&self) -> Result<bool> {
        for s in &self.steps {
            if !s.square.commutes() || !s.square.verdict()?.holds() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Extends `A → top` along a push-out `B = PO_R[S, A]` (A in the second slot).
///
/// Searches images for the basis of `S` among `±` top unit vectors, `±`
/// columns of `A → top`, and `±` the given extra candidates, in
/// lexicographic order, trying at most `budget` assignments. The first
/// assignment that agrees with `A` on `R` and makes `B → top` isometric is
/// returned.
pub fn complete_diagram_banach(
    a_in_top: &LinearEmbedding,
    ext: &BanachPushout,
    extra: &[Vector],
    budget: usize,
) -> Result<Option<LinearEmbedding>> {
    let mut budget = budget;
    let mut found = None;
    completions(a_in_top, ext, extra, &mut budget, &mut |e| {
        found = Some(e);
        false
    })?;
    Ok(found)
}

/// Calls `visit` on each completion in search order until it returns `false`
/// or `budget` assignments have been tried. Returns `false` if stopped early.
fn completions(
    a_in_top: &LinearEmbedding,
    ext: &BanachPushout,
    extra: &[Vector],
    budget: &mut usize,
    visit: &mut dyn FnMut(LinearEmbedding) -> bool,
) -> Result<bool> {
    if ext.x_to_y.source() != a_in_top.source() {
        return Err(precondition("extension does not start at A"));
    }
    if !ext.verdict()?.holds() {
        return Err(precondition("extension does not carry a push-out certificate"));
    }
    let top = a_in_top.target();
    let n = top.dim();
    let s = ext.s_to_y.source();
    let ds = s.dim();
    let mut cands: Vec<Vector> = Vec::new();
    let pool = (0..n).map(|i| unit(n, i)).chain(a_in_top.columns()).chain(extra.iter().cloned());
    for c in pool {
        if crate::geometry::is_zero(&c) {
            continue;
        }
        for w in [c.clone(), neg(&c)] {
            if !cands.contains(&w) {
                cands.push(w);
            }
        }
    }
    cands.sort();
    // Each basis vector of S must land on a vector of the same norm.
    let per_slot: Vec<Vec<usize>> = (0..ds)
        .map(|j| {
            let nj = s.norm_unchecked(&unit(ds, j));
            (0..cands.len()).filter(|&c| top.norm_unchecked(&cands[c]) == nj).collect()
        })
        .collect();
    if per_slot.iter().any(|p| p.is_empty()) {
        return Ok(true);
    }
    let target_on_r = a_in_top.matrix().mul(ext.r_to_x.matrix());
    let u = ext.r_to_s.matrix();
    let w = &ext.quotient;
    let wt = w.transpose();
    let mut idx = vec![0usize; ds];
    loop {
        if *budget == 0 {
            return Ok(false);
        }
        *budget -= 1;
        let phi = Matrix::from_columns(&idx.iter().enumerate().map(|(j, &k)| cands[per_slot[j][k]].clone()).collect::<Vec<_>>(), n);
        if phi.mul(u) == target_on_r {
            // M W = [φ | ι]; solve row by row through Wᵀ.
            let p = phi.hcat(a_in_top.matrix());
            let rows: Option<Vec<Vector>> = p.rows.iter().map(|row| wt.solve(row)).collect();
            if let Some(rows) = rows {
                let m = Matrix::new(rows, w.nrows());
                if m.mul(w) == p {
                    if let Ok(e) = LinearEmbedding::new(ext.y().clone(), top.clone(), m) {
                        if !visit(e) {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        // next index tuple, last slot fastest
        let mut j = ds;
        loop {
            if j == 0 {
                return Ok(true);
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < per_slot[j].len() {
                break;
            }
            idx[j] = 0;
        }
    }
}

/// Embeds `left.top()` into `right.top()` stage by stage, backtracking over
/// completions in search order; with equal dimensions the result is a
/// bijective isometry.
pub fn banach_back_and_forth(left: &BanachTower, right: &BanachTower, budget: usize) -> Result<BanachIsoOutcome> {
    if left.top().dim() != right.top().dim() {
        return Ok(BanachIsoOutcome::Failure {
            stage: 0,
            reason: format!("dimensions differ: {} vs {}", left.top().dim(), right.top().dim()),
        });
    }
    let extra: Vec<Vector> = (0..right.len()).flat_map(|g| right.s_image(g)).collect();
    let exts: Vec<BanachPushout> = left.steps().iter().map(|s| swap(&s.square)).collect();
    let f0 = LinearEmbedding::new(PolytopeSpace::zero(), right.top().clone(), Matrix::zero(right.top().dim(), 0))?;
    let mut budget = budget;
    let mut deepest = 0;
    let found = dfs(&exts, &extra, f0, 0, &mut budget, &mut deepest)?;
    Ok(match found {
        Some(f) => BanachIsoOutcome::Isometry(f),
        None => BanachIsoOutcome::Failure {
            stage: deepest + 1,
            reason: if budget == 0 { "search budget exhausted" } else { "no completion" }.into(),
        },
    })
}

fn dfs(
    exts: &[BanachPushout],
    extra: &[Vector],
    f: LinearEmbedding,
    k: usize,
    budget: &mut usize,
    deepest: &mut usize,
) -> Result<Option<LinearEmbedding>> {
    if k == exts.len() {
        return Ok(Some(f));
    }
    *deepest = (*deepest).max(k);
    let mut options = Vec::new();
    completions(&f, &exts[k], extra, budget, &mut |e| {
        options.push(e);
        true
    })?;
    for g in options {
        if let Some(done) = dfs(exts, extra, g, k + 1, budget, deepest)? {
            return Ok(Some(done));
        }
        if *budget == 0 {
            break;
        }
    }
    Ok(None)
}

/// Outcome of [`banach_back_and_forth`].
#[derive(Clone, Debug)]
pub enum BanachIsoOutcome {
    Isometry(LinearEmbedding),
    Failure { stage: usize, reason: String },
}

/// The same square with the two middle spaces exchanged.
pub fn swap(po: &BanachPushout) -> BanachPushout {
    let ds = po.s_to_y.source().dim();
    let w = &po.quotient;
    let rows = w
        .rows
        .iter()
        .map(|r| r[ds..].iter().chain(&r[..ds]).cloned().collect())
        .collect();
    BanachPushout {
        r_to_s: po.r_to_x.clone(),
        r_to_x: po.r_to_s.clone(),
        s_to_y: po.x_to_y.clone(),
        x_to_y: po.s_to_y.clone(),
        quotient: Matrix::new(rows, w.cols),
    }
}

/// JSON form of a step: rationals as strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BanachStepLit {
    #[serde(default)]
    pub r_basis: Vec<Vec<crate::io::json::Q>>,
    pub s: crate::io::json::SpaceLit,
    #[serde(default)]
    pub u: Vec<Vec<crate::io::json::Q>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::q;

    #[test]
    fn free_line_steps() {
        let line = PolytopeSpace::from_ints(1, &[&[1]]).unwrap();
        let t = BanachTower::build(&[BanachStepSpec::free(line.clone()), BanachStepSpec::free(line)]).unwrap();
        assert_eq!(t.top().dim(), 2);
        assert_eq!(t.top(), &PolytopeSpace::l1_norm(2));
        assert!(t.verify().unwrap());
        assert_eq!(t.generated(&[0, 1]).len(), 2);
    }

    #[test]
    fn amalgam_over_a_line() {
        let line = PolytopeSpace::from_ints(1, &[&[1]]).unwrap();
        let sup = PolytopeSpace::sup_norm(2);
        let t = BanachTower::build(&[
            BanachStepSpec::free(line),
            BanachStepSpec {
                r_basis: vec![vec![q(1)]],
                s: sup,
                u: Matrix::from_columns(&[vec![q(1), q(0)]], 2),
            },
        ])
        .unwrap();
        assert_eq!(t.top().dim(), 2);
        assert!(t.verify().unwrap());
    }

    #[test]
    fn non_isometric_step_is_rejected() {
        let line = PolytopeSpace::from_ints(1, &[&[1]]).unwrap();
        let r = BanachTower::build(&[
            BanachStepSpec::free(line.clone()),
            BanachStepSpec {
                r_basis: vec![vec![q(1)]],
                s: line,
                u: Matrix::from_columns(&[vec![q(2)]], 1),
            },
        ]);
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn completion_and_iso() {
        let line = PolytopeSpace::from_ints(1, &[&[1]]).unwrap();
        let hex = PolytopeSpace::from_ints(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let a = BanachTower::build(&[BanachStepSpec::free(line.clone()), BanachStepSpec::free(hex.clone())]).unwrap();
        let b = BanachTower::build(&[BanachStepSpec::free(hex), BanachStepSpec::free(line)]).unwrap();
        match banach_back_and_forth(&a, &b, 10_000).unwrap() {
            BanachIsoOutcome::Isometry(f) => assert_eq!(f.matrix().rank(), 3),
            BanachIsoOutcome::Failure { reason, .. } => panic!("{reason}"),
        }
    }
}
