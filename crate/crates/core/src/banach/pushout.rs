//! Push-outs of polytopal spaces and the internal push-out norm identity
//! `‖x + s‖ = inf{‖x + r‖ + ‖s − r‖ : r ∈ S ∩ X}`.
//!
//! Everything is done on the dual side. For `Y = S + X` the functionals on
//! `Y` are exactly the pairs `(φ|S, φ|X)` that agree on `R = S ∩ X`, so
//! parametrizing by `φ` turns the fiber polytope
//! `{(g, f) ∈ B_{S*} × B_{X*} : g|R = f|R}` into the polytope
//! `{φ : φ(S h) ≤ 1, φ(X k) ≤ 1}` over the facets `h`, `k` of the two
//! dual balls. The identity holds iff that polytope is `B_{Y*}`.

use serde::Serialize;

use super::embedding::LinearEmbedding;
use super::quotient::quotient_norm;
use super::space::{l1_sum, PolytopeSpace};
use crate::error::{precondition, Error, Result};
use crate::geometry::matrix::{intersection_coords, rank_of, Matrix};
use crate::geometry::polytope::{vertices, HalfSpace};
use crate::geometry::{neg, q, unit, Rational, Vector};

/// A push-out square of isometric embeddings `R → S → Y`, `R → X → Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BanachPushout {
    pub r_to_s: LinearEmbedding,
    pub r_to_x: LinearEmbedding,
    pub s_to_y: LinearEmbedding,
    pub x_to_y: LinearEmbedding,
    /// Rows span the annihilator of `{(u r, −v r)}`; `Y`-coordinates of `(s, x)` are `W (s, x)`.
    pub quotient: Matrix,
}

impl BanachPushout {
    pub fn y(&self) -> &PolytopeSpace {
        self.s_to_y.target()
    }

    pub fn commutes(&self) -> bool {
        let a = self.s_to_y.matrix().mul(self.r_to_s.matrix());
        let b = self.x_to_y.matrix().mul(self.r_to_x.matrix());
        a == b
    }

    /// Internal verdict for the images of `S` and `X` inside `Y`.
    pub fn verdict(&self) -> Result<BanachVerdict> {
        is_internal_pushout_banach(self.y(), &self.s_to_y.columns(), &self.x_to_y.columns())
    }
}

fn sum_of(basis: &[Vector], coords: &[Rational], dim: usize) -> Vector {
    basis
        .iter()
        .zip(coords)
        .fold(vec![q(0); dim], |acc, (b, c)| crate::geometry::add(&acc, &crate::geometry::scale(c, b)))
}

/// Half-spaces `φ · (B h) ≤ 1` for the facets `h` of `space`'s dual ball.
fn pulled_facets(space: &PolytopeSpace, basis_cols: &Matrix, out: &mut Vec<HalfSpace>) -> Result<()> {
    for h in &space.dual_ball()?.facet_normals {
        out.push(HalfSpace {
            normal: basis_cols.mul_vec(h),
            rhs: q(1),
        });
    }
    Ok(())
}

/// `Y = (S ⊕_ℓ1 X) / {(u r, −v r)}` with its dual ball computed exactly.
pub fn pushout_banach(u: &LinearEmbedding, v: &LinearEmbedding) -> Result<BanachPushout> {
    if u.source() != v.source() {
        return Err(precondition("pushout needs two embeddings with a common source"));
    }
    let s = u.target();
    let x = v.target();
    let (ds, dx) = (s.dim(), x.dim());
    let m = ds + dx;
    let anti: Vec<Vector> = u
        .columns()
        .into_iter()
        .zip(v.columns())
        .map(|(a, b)| a.into_iter().chain(neg(&b)).collect())
        .collect();
    let w = Matrix::new(Matrix::new(anti, m).nullspace(), m);
    let dy = w.nrows();
    let ws = Matrix::new(w.rows.iter().map(|r| r[..ds].to_vec()).collect(), ds);
    let wx = Matrix::new(w.rows.iter().map(|r| r[ds..].to_vec()).collect(), dx);
    let mut hs = Vec::new();
    pulled_facets(s, &ws, &mut hs)?;
    pulled_facets(x, &wx, &mut hs)?;
    let gens = vertices(dy, &hs)?;
    let y = PolytopeSpace::new(dy, gens)?;
    let s_to_y = LinearEmbedding::new(s.clone(), y.clone(), ws)?;
    let x_to_y = LinearEmbedding::new(x.clone(), y, wx)?;
    let po = BanachPushout {
        r_to_s: u.clone(),
        r_to_x: v.clone(),
        s_to_y,
        x_to_y,
        quotient: w,
    };
    debug_assert!(po.commutes());
    Ok(po)
}

/// Both sides of the norm identity at one pair, with the minimizing `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormWitness {
    #[serde(serialize_with = "crate::io::json::ser_vector")]
    pub x: Vector,
    #[serde(serialize_with = "crate::io::json::ser_vector")]
    pub s: Vector,
    #[serde(serialize_with = "crate::io::json::ser_rational")]
    pub lhs: Rational,
    #[serde(serialize_with = "crate::io::json::ser_rational")]
    pub rhs: Rational,
    #[serde(serialize_with = "crate::io::json::ser_vector")]
    pub r: Vector,
}

/// Outcome of [`is_internal_pushout_banach`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BanachVerdict {
    /// A vector of `Y` outside `S + X`.
    pub span_gap: Option<Vector>,
    /// Basis of `R = S ∩ X` in `Y`-coordinates.
    pub intersection: Vec<Vector>,
    /// A pair with `‖x + s‖ < inf_r ‖x + r‖ + ‖s − r‖`.
    pub witness: Option<NormWitness>,
}

impl BanachVerdict {
    pub fn holds(&self) -> bool {
        self.span_gap.is_none() && self.witness.is_none()
    }
}

fn check_basis(y: &PolytopeSpace, basis: &[Vector], name: &str) -> Result<()> {
    if let Some(b) = basis.iter().find(|b| b.len() != y.dim()) {
        return Err(Error::Dimension {
            expected: y.dim(),
            actual: b.len(),
        });
    }
    if rank_of(basis, y.dim()) < basis.len() {
        return Err(precondition(format!("basis of {name} is not independent")));
    }
    Ok(())
}

/// Evaluates `‖x + s‖` and `inf_{r ∈ S∩X} ‖x + r‖ + ‖s − r‖` for
/// `s = Σ a_i S_i`, `x = Σ b_j X_j`.
pub fn norm_identity_at(
    y: &PolytopeSpace,
    s_basis: &[Vector],
    x_basis: &[Vector],
    a: &[Rational],
    b: &[Rational],
) -> Result<NormWitness> {
    check_basis(y, s_basis, "S")?;
    check_basis(y, x_basis, "X")?;
    if a.len() != s_basis.len() || b.len() != x_basis.len() {
        return Err(precondition("coordinate vectors do not match the bases"));
    }
    let dim = y.dim();
    let s = sum_of(s_basis, a, dim);
    let x = sum_of(x_basis, b, dim);
    let lhs = y.norm_unchecked(&crate::geometry::add(&x, &s));
    let s_sp = y.restrict(s_basis)?;
    let x_sp = y.restrict(x_basis)?;
    let inter = intersection_coords(s_basis, x_basis, dim);
    let anti: Vec<Vector> = inter
        .iter()
        .map(|(ak, bk)| bk.iter().cloned().chain(neg(ak)).collect())
        .collect();
    let point: Vector = b.iter().chain(a).cloned().collect();
    let qn = quotient_norm(&l1_sum(&x_sp, &s_sp), &anti, &point)?;
    let r_coords: Vector = inter
        .iter()
        .zip(&qn.lambda)
        .fold(vec![q(0); x_basis.len()], |acc, ((_, bk), l)| {
            crate::geometry::add(&acc, &crate::geometry::scale(l, bk))
        });
    Ok(NormWitness {
        x,
        s,
        lhs,
        rhs: qn.value,
        r: sum_of(x_basis, &r_coords, dim),
    })
}

/// Decides whether `Y = PO[S, X]` for subspaces given by bases.
pub fn is_internal_pushout_banach(y: &PolytopeSpace, s_basis: &[Vector], x_basis: &[Vector]) -> Result<BanachVerdict> {
    check_basis(y, s_basis, "S")?;
    check_basis(y, x_basis, "X")?;
    let dim = y.dim();
    let inter = intersection_coords(s_basis, x_basis, dim);
    let intersection: Vec<Vector> = inter.iter().map(|(a, _)| sum_of(s_basis, a, dim)).collect();
    let both: Vec<Vector> = s_basis.iter().chain(x_basis).cloned().collect();
    let rank = rank_of(&both, dim);
    if rank < dim {
        let gap = (0..dim)
            .map(|i| unit(dim, i))
            .find(|e| {
                let mut t = both.clone();
                t.push(e.clone());
                rank_of(&t, dim) > rank
            })
            .expect("some unit vector leaves a proper subspace");
        return Ok(BanachVerdict {
            span_gap: Some(gap),
            intersection,
            witness: None,
        });
    }
    let s_sp = y.restrict(s_basis)?;
    let x_sp = y.restrict(x_basis)?;
    let mut hs = Vec::new();
    pulled_facets(&s_sp, &Matrix::from_columns(s_basis, dim), &mut hs)?;
    pulled_facets(&x_sp, &Matrix::from_columns(x_basis, dim), &mut hs)?;
    let fiber = vertices(dim, &hs)?;
    let ball = y.dual_ball()?;
    let violated = fiber.iter().find_map(|phi| ball.violated_facet(phi));
    let witness = match violated {
        None => None,
        Some(h) => {
            // h is a unit vector of Y with quotient norm above 1.
            let y0 = match h.iter().find(|c| **c != q(0)) {
                Some(c) if *c < q(0) => neg(h),
                _ => h.clone(),
            };
            let t = Matrix::from_columns(&both, dim);
            let coords = t
                .solve(&y0)
                .ok_or_else(|| Error::Internal("S + X = Y but decomposition failed".into()))?;
            let (a, b) = coords.split_at(s_basis.len());
            let w = norm_identity_at(y, s_basis, x_basis, a, b)?;
            if w.lhs >= w.rhs {
                return Err(Error::Internal("dual certificate did not produce a strict gap".into()));
            }
            Some(w)
        }
    };
    Ok(BanachVerdict {
        span_gap: None,
        intersection,
        witness,
    })
}

/// Checks `B_{Y*} = {(g, f) ∈ B_{S*} × B_{X*} : g∘u = f∘v}` by mutual containment.
pub fn dualball_pullback_check(po: &BanachPushout) -> Result<bool> {
    let y = po.y();
    let (s, x) = (po.s_to_y.source(), po.x_to_y.source());
    let (js, jx) = (po.s_to_y.matrix(), po.x_to_y.matrix());
    let (u, v) = (po.r_to_s.matrix(), po.r_to_x.matrix());
    let (sb, xb) = (s.dual_ball()?, x.dual_ball()?);

    // φ ↦ (φ j_S, φ j_X) is injective and onto the agreement subspace.
    if js.hcat(jx).rank() != y.dim() || s.dim() + x.dim() - u.cols != y.dim() {
        return Ok(false);
    }
    // B_{Y*} lands in the fiber polytope.
    for phi in &y.dual_ball()?.vertices {
        let g = js.vec_mul(phi);
        let f = jx.vec_mul(phi);
        if !sb.contains(&g) || !xb.contains(&f) || u.vec_mul(&g) != v.vec_mul(&f) {
            return Ok(false);
        }
    }
    // Every vertex of the fiber polytope comes from B_{Y*}.
    let mut hs = Vec::new();
    pulled_facets(s, js, &mut hs)?;
    pulled_facets(x, jx, &mut hs)?;
    let yb = y.dual_ball()?;
    Ok(vertices(y.dim(), &hs)?.iter().all(|phi| yb.contains(phi)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn free_amalgam_is_the_l1_sum() {
        let r = PolytopeSpace::zero();
        let s = PolytopeSpace::sup_norm(2);
        let x = PolytopeSpace::from_ints(1, &[&[1]]).unwrap();
        let u = LinearEmbedding::new(r.clone(), s.clone(), Matrix::zero(2, 0)).unwrap();
        let w = LinearEmbedding::new(r, x.clone(), Matrix::zero(1, 0)).unwrap();
        let po = pushout_banach(&u, &w).unwrap();
        assert_eq!(po.y(), &l1_sum(&s, &x).pruned().unwrap());
        assert!(po.verdict().unwrap().holds());
        assert!(dualball_pullback_check(&po).unwrap());
    }

    #[test]
    fn one_dimensional_amalgam() {
        let line = PolytopeSpace::from_ints(1, &[&[1]]).unwrap();
        let id = LinearEmbedding::identity(&line);
        let po = pushout_banach(&id, &id).unwrap();
        assert_eq!(po.y().dim(), 1);
        // class of (s, x) has norm |s + x|: compare with a direct minimization
        let (sv, xv) = (q(3), q(-5));
        let y = po.quotient.mul_vec(&[sv.clone(), xv.clone()]);
        let oracle = (-20..=20)
            .map(|t: i64| q((3 + t).abs() + (-5 - t).abs()))
            .min()
            .unwrap();
        assert_eq!(po.y().norm(&y).unwrap(), oracle);
        assert!(dualball_pullback_check(&po).unwrap());
        assert_eq!(po.y().dual_ball().unwrap().vertices.len(), 2);
    }

    #[test]
    fn sup_plane_is_not_an_internal_pushout() {
        let sup = PolytopeSpace::sup_norm(2);
        let verdict = is_internal_pushout_banach(&sup, &[v(&[1, 0])], &[v(&[0, 1])]).unwrap();
        let w = verdict.witness.unwrap();
        assert_eq!((w.x, w.s), (v(&[0, 1]), v(&[1, 0])));
        assert_eq!((w.lhs, w.rhs), (q(1), q(2)));
        let l1 = PolytopeSpace::l1_norm(2);
        assert!(is_internal_pushout_banach(&l1, &[v(&[1, 0])], &[v(&[0, 1])]).unwrap().holds());
    }

    #[test]
    fn span_gap_is_reported() {
        let l1 = PolytopeSpace::l1_norm(3);
        let verdict = is_internal_pushout_banach(&l1, &[v(&[1, 0, 0])], &[v(&[0, 1, 0])]).unwrap();
        assert_eq!(verdict.span_gap, Some(v(&[0, 0, 1])));
    }

    #[test]
    fn isomorphism_edge_gives_the_other_side() {
        let x = PolytopeSpace::from_ints(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let r = x.clone();
        let id = LinearEmbedding::identity(&r);
        let po = pushout_banach(&id, &id).unwrap();
        assert_eq!(po.y().dim(), 2);
        assert!(po.x_to_y.matrix().rank() == 2);
        assert!(po.verdict().unwrap().holds());
        assert!(dualball_pullback_check(&po).unwrap());
    }

    #[test]
    fn identity_at_a_pair() {
        let l1 = PolytopeSpace::l1_norm(2);
        let w = norm_identity_at(&l1, &[v(&[1, 0])], &[v(&[0, 1])], &v(&[2]), &v(&[-1])).unwrap();
        assert_eq!((w.lhs, w.rhs), (q(3), q(3)));
        // a skew complement: S ∩ X = 0 but the sum is not an ℓ1-sum
        let w = norm_identity_at(&l1, &[v(&[1, 0])], &[v(&[1, 1])], &v(&[2]), &v(&[-1])).unwrap();
        assert_eq!((w.lhs, w.rhs), (q(2), q(4)));
    }
}
