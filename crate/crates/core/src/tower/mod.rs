//! Finite successor towers of push-outs, saturated skeletons, diagram
//! completion and back-and-forth.

pub mod banach;
pub mod boolean;
pub mod skeleton;

use serde::{Deserialize, Serialize};

use crate::error::{precondition, Result};
use crate::geometry::matrix::Matrix;
use crate::io::json::from_qs;
use banach::{BanachStepLit, BanachStepSpec, BanachTower};
use boolean::{BoolStepSpec, BoolTower};

pub use skeleton::{saturate, skeleton_posex_check, SaturatedSet, Skeleton, SkeletonCheck};

#[derive(Clone, Debug)]
pub enum Tower {
    Boolean(BoolTower),
    Banach(BanachTower),
}

impl Tower {
    pub fn kind(&self) -> &'static str {
        match self {
            Tower::Boolean(_) => "boolean",
            Tower::Banach(_) => "banach",
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Tower::Boolean(t) => t.len(),
            Tower::Banach(t) => t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Atom counts or dimensions of the stages.
    pub fn stage_sizes(&self) -> Vec<usize> {
        match self {
            Tower::Boolean(t) => t.stages().iter().map(|b| b.len()).collect(),
            Tower::Banach(t) => t.stages().iter().map(|x| x.dim()).collect(),
        }
    }
}

/// A tower in JSON: `{"kind": "boolean", "steps": [...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TowerSpec {
    Boolean { steps: Vec<BoolStepSpec> },
    Banach { steps: Vec<BanachStepLit> },
}

pub fn build_tower(spec: &TowerSpec) -> Result<Tower> {
    match spec {
        TowerSpec::Boolean { steps } => Ok(Tower::Boolean(BoolTower::build(steps)?)),
        TowerSpec::Banach { steps } => {
            let steps = steps
                .iter()
                .enumerate()
                .map(|(alpha, lit)| {
                    let s = lit.s.build()?;
                    let r_basis: Vec<_> = lit.r_basis.iter().map(|b| from_qs(b)).collect();
                    if lit.u.len() != s.dim() && !(r_basis.is_empty() && lit.u.is_empty()) {
                        return Err(precondition(format!("step {alpha}: u needs one row per coordinate of S")));
                    }
                    let u = if lit.u.is_empty() {
                        Matrix::zero(s.dim(), r_basis.len())
                    } else {
                        Matrix::new(lit.u.iter().map(|r| from_qs(r)).collect(), r_basis.len())
                    };
                    Ok(BanachStepSpec { r_basis, s, u })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Tower::Banach(BanachTower::build(&steps)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::json::parse;

    #[test]
    fn specs_from_json() {
        let t: TowerSpec = parse("t", r#"{"kind":"boolean","steps":[{"s_over":[0,0]},{"s_over":[0,0]}]}"#).unwrap();
        assert_eq!(build_tower(&t).unwrap().stage_sizes(), vec![1, 2, 4]);
        let t: TowerSpec = parse("t", r#"{"kind":"banach","steps":[]}"#).unwrap();
        let t = build_tower(&t).unwrap();
        assert!(t.is_empty());
        assert_eq!(t.stage_sizes(), vec![0]);
        let t: TowerSpec = parse(
            "t",
            r#"{"kind":"banach","steps":[
                {"s":{"dim":1,"dual_gens":[["1"]]}},
                {"r_basis":[["1"]],"s":{"dim":2,"dual_gens":[["1","0"],["0","1"]]},"u":[["1"],["0"]]}]}"#,
        )
        .unwrap();
        assert_eq!(build_tower(&t).unwrap().stage_sizes(), vec![0, 1, 2]);
    }
}
