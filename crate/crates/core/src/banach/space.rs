use std::sync::OnceLock;

use crate::error::{precondition, Error, Result};
use crate::geometry::matrix::rank_of;
use crate::geometry::polytope::SymmetricPolytope;
use crate::geometry::{dot, neg, q, unit, Rational, Vector};

/// Largest dimension for which dual balls are enumerated exactly.
pub const MAX_EXACT_DIM: usize = 6;

/// `ℝ^dim` normed by `‖x‖ = max_{f ∈ F} f·x` for a symmetric spanning set `F`.
#[derive(Debug)]
pub struct PolytopeSpace {
    dim: usize,
    dual_gens: Vec<Vector>,
    ball: OnceLock<SymmetricPolytope>,
}

impl Clone for PolytopeSpace {
    fn clone(&self) -> Self {
        PolytopeSpace {
            dim: self.dim,
            dual_gens: self.dual_gens.clone(),
            ball: self.ball.clone(),
        }
    }
}

impl PartialEq for PolytopeSpace {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.dual_gens == other.dual_gens
    }
}

impl Eq for PolytopeSpace {}

impl PolytopeSpace {
    /// Validates symmetry and spanning; generators are sorted and deduplicated.
    pub fn new(dim: usize, dual_gens: Vec<Vector>) -> Result<Self> {
        if let Some(f) = dual_gens.iter().find(|f| f.len() != dim) {
            return Err(Error::Dimension {
                expected: dim,
                actual: f.len(),
            });
        }
        let mut gens = dual_gens;
        if dim == 0 {
            gens = vec![Vec::new()];
        }
        gens.sort();
        gens.dedup();
        for f in &gens {
            if gens.binary_search(&neg(f)).is_err() {
                return Err(precondition(format!(
                    "dual generators are not symmetric: {:?} has no negative",
                    crate::geometry::fmt_vec(f)
                )));
            }
        }
        if rank_of(&gens, dim) < dim {
            return Err(precondition("dual generators do not span the dual space; this is only a seminorm"));
        }
        Ok(PolytopeSpace {
            dim,
            dual_gens: gens,
            ball: OnceLock::new(),
        })
    }

    /// Integer generators; the negatives are added automatically.
    pub fn from_ints(dim: usize, gens: &[&[i64]]) -> Result<Self> {
        let mut all = Vec::new();
        for g in gens {
            let v: Vector = g.iter().map(|&x| q(x)).collect();
            all.push(neg(&v));
            all.push(v);
        }
        PolytopeSpace::new(dim, all)
    }

    /// `ℓ∞^n`.
    pub fn sup_norm(n: usize) -> Self {
        let gens = (0..n).flat_map(|i| [unit(n, i), neg(&unit(n, i))]).collect();
        PolytopeSpace::new(n, gens).expect("coordinate functionals span")
    }

    /// `ℓ1^n`.
    pub fn l1_norm(n: usize) -> Self {
        let gens = (0..1usize << n)
            .map(|m| (0..n).map(|i| if m >> i & 1 == 1 { q(-1) } else { q(1) }).collect())
            .collect();
        PolytopeSpace::new(n, gens).expect("sign vectors span")
    }

    /// The zero space.
    pub fn zero() -> Self {
        PolytopeSpace::new(0, Vec::new()).expect("zero space is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn dual_gens(&self) -> &[Vector] {
        &self.dual_gens
    }

    pub fn norm(&self, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                actual: x.len(),
            });
        }
        Ok(self.norm_unchecked(x))
    }

    pub(crate) fn norm_unchecked(&self, x: &[Rational]) -> Rational {
        self.dual_gens
            .iter()
            .map(|f| dot(f, x))
            .max()
            .unwrap_or_else(|| q(0))
    }

    /// The dual unit ball `conv(F)` with pruned vertices and exact facets.
    pub fn dual_ball(&self) -> Result<&SymmetricPolytope> {
        if let Some(b) = self.ball.get() {
            return Ok(b);
        }
        if self.dim > MAX_EXACT_DIM {
            return Err(Error::Limit(format!(
                "dual ball enumeration capped at dimension {MAX_EXACT_DIM}, got {}",
                self.dim
            )));
        }
        let ball = SymmetricPolytope::hull(self.dim, &self.dual_gens)?;
        Ok(self.ball.get_or_init(|| ball))
    }

    /// The same norm with redundant generators removed.
    pub fn pruned(&self) -> Result<PolytopeSpace> {
        let ball = self.dual_ball()?.clone();
        let mut out = PolytopeSpace::new(self.dim, ball.vertices.clone())?;
        out.ball = OnceLock::from(ball);
        Ok(out)
    }

    /// The subspace spanned by `basis`, in coordinates with respect to it.
    pub fn restrict(&self, basis: &[Vector]) -> Result<PolytopeSpace> {
        if let Some(b) = basis.iter().find(|b| b.len() != self.dim) {
            return Err(Error::Dimension {
                expected: self.dim,
                actual: b.len(),
            });
        }
        if rank_of(basis, self.dim) < basis.len() {
            return Err(precondition("subspace basis is not linearly independent"));
        }
        let gens = self
            .dual_gens
            .iter()
            .map(|f| basis.iter().map(|b| dot(f, b)).collect())
            .collect();
        PolytopeSpace::new(basis.len(), gens)
    }
}

/// `‖x‖` in `space`.
pub fn norm_eval(space: &PolytopeSpace, x: &[Rational]) -> Result<Rational> {
    space.norm(x)
}

/// `X ⊕_ℓ1 S` with coordinates `(x, s)`; its dual generators are all pairs `(f, g)`.
pub fn l1_sum(x: &PolytopeSpace, s: &PolytopeSpace) -> PolytopeSpace {
    let mut gens = Vec::with_capacity(x.dual_gens.len() * s.dual_gens.len());
    for f in &x.dual_gens {
        for g in &s.dual_gens {
            let mut v = f.clone();
            v.extend(g.iter().cloned());
            gens.push(v);
        }
    }
    PolytopeSpace::new(x.dim + s.dim, gens).expect("products of symmetric spanning sets are symmetric and spanning")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn classical_norms() {
        assert_eq!(PolytopeSpace::sup_norm(2).norm(&v(&[3, -4])).unwrap(), q(4));
        assert_eq!(PolytopeSpace::l1_norm(2).norm(&v(&[3, -4])).unwrap(), q(7));
        assert_eq!(PolytopeSpace::l1_norm(2).norm(&v(&[0, 0])).unwrap(), q(0));
        assert!(PolytopeSpace::l1_norm(2).norm(&v(&[1])).is_err());
    }

    #[test]
    fn invariants_are_checked() {
        assert!(PolytopeSpace::new(2, vec![v(&[1, 0]), v(&[-1, 0])]).is_err());
        assert!(PolytopeSpace::new(1, vec![v(&[1])]).is_err());
        assert!(PolytopeSpace::new(2, vec![v(&[1, 0, 0])]).is_err());
    }

    #[test]
    fn l1_sums() {
        let y = l1_sum(&PolytopeSpace::sup_norm(2), &PolytopeSpace::sup_norm(1));
        assert_eq!(y.norm(&v(&[1, 2, 3])).unwrap(), q(5));
        assert_eq!(y.dual_gens().len(), 4 * 2);
        let z = l1_sum(&PolytopeSpace::zero(), &PolytopeSpace::l1_norm(2));
        assert_eq!(z, PolytopeSpace::l1_norm(2));
    }

    #[test]
    fn dual_balls() {
        let sup = PolytopeSpace::sup_norm(2);
        assert_eq!(sup.dual_ball().unwrap().vertices.len(), 4);
        let l1 = PolytopeSpace::l1_norm(2);
        assert_eq!(l1.dual_ball().unwrap().vertices, vec![v(&[-1, -1]), v(&[-1, 1]), v(&[1, -1]), v(&[1, 1])]);
        let hex = PolytopeSpace::from_ints(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert_eq!(hex.dual_ball().unwrap().vertices.len(), 6);
    }

    #[test]
    fn restriction_to_a_line() {
        let l1 = PolytopeSpace::l1_norm(2);
        let line = l1.restrict(&[v(&[1, 1])]).unwrap();
        assert_eq!(line.norm(&v(&[1])).unwrap(), q(2));
    }
}
