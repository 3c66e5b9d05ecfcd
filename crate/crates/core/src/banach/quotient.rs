use num::{One, Zero};
use serde::Serialize;

use super::space::PolytopeSpace;
use crate::error::{precondition, Error, Result};
use crate::geometry::lp::{maximize, LpOutcome};
use crate::geometry::matrix::rank_of;
use crate::geometry::{add, dot, Rational, Vector};

/// `inf_{v ∈ V} ‖y + v‖` together with a minimizer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientNorm {
    #[serde(serialize_with = "crate::io::json::ser_rational")]
    pub value: Rational,
    /// Coefficients `λ` with `‖y + Σ λ_i v_i‖ = value`.
    #[serde(serialize_with = "crate::io::json::ser_vector")]
    pub lambda: Vector,
}

/// Quotient norm of `y` modulo `span(v_basis)`.
///
/// Solved through the dual program `max Σ μ_f f·y` over probability weights
/// `μ` on the generators with `Σ μ_f f|_V = 0`; the simplex multipliers of
/// that program are `(t, -λ)` for the primal `min t, f·(y + Vλ) ≤ t`.
/// The minimizer is re-checked by evaluating the norm.
pub fn quotient_norm(space: &PolytopeSpace, v_basis: &[Vector], y: &[Rational]) -> Result<QuotientNorm> {
    let dim = space.dim();
    if y.len() != dim {
        return Err(Error::Dimension {
            expected: dim,
            actual: y.len(),
        });
    }
    if let Some(v) = v_basis.iter().find(|v| v.len() != dim) {
        return Err(Error::Dimension {
            expected: dim,
            actual: v.len(),
        });
    }
    if rank_of(v_basis, dim) < v_basis.len() {
        return Err(precondition("quotient subspace basis is not independent"));
    }
    if v_basis.is_empty() {
        return Ok(QuotientNorm {
            value: space.norm_unchecked(y),
            lambda: Vec::new(),
        });
    }
    let gens = space.dual_gens();
    let c: Vector = gens.iter().map(|f| dot(f, y)).collect();
    let mut rows = vec![vec![Rational::one(); gens.len()]];
    let mut rhs = vec![Rational::one()];
    for v in v_basis {
        rows.push(gens.iter().map(|f| dot(f, v)).collect());
        rhs.push(Rational::zero());
    }
    let LpOutcome::Optimal { value, duals, .. } = maximize(&c, &rows, &rhs) else {
        return Err(Error::Internal("quotient program has no optimum".into()));
    };
    let lambda: Vector = duals[1..].iter().map(|w| -w).collect();
    let shifted = v_basis
        .iter()
        .zip(&lambda)
        .fold(y.to_vec(), |acc, (v, l)| add(&acc, &crate::geometry::scale(l, v)));
    if space.norm_unchecked(&shifted) != value {
        return Err(Error::Internal("quotient minimizer does not attain the optimum".into()));
    }
    Ok(QuotientNorm { value, lambda })
}
