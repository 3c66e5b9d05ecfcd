use super::space::PolytopeSpace;
use crate::error::{precondition, Error, Result};
use crate::geometry::matrix::Matrix;
use crate::geometry::polytope::SymmetricPolytope;
use crate::geometry::{dot, fmt_vec, q, Rational, Vector};

/// An isometric linear embedding, stored as a `target.dim × source.dim` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearEmbedding {
    source: PolytopeSpace,
    target: PolytopeSpace,
    matrix: Matrix,
}

impl LinearEmbedding {
    /// Checks shape, injectivity and isometry.
    pub fn new(source: PolytopeSpace, target: PolytopeSpace, matrix: Matrix) -> Result<Self> {
        if matrix.nrows() != target.dim() || matrix.cols != source.dim() {
            return Err(Error::Dimension {
                expected: target.dim() * source.dim(),
                actual: matrix.nrows() * matrix.cols,
            });
        }
        if matrix.rank() < source.dim() {
            return Err(precondition("embedding matrix is not injective"));
        }
        if let Some(w) = isometry_failure(&source, &target, &matrix)? {
            return Err(Error::NotIsometric { witness: fmt_vec(&w) });
        }
        Ok(LinearEmbedding { source, target, matrix })
    }

    pub fn identity(space: &PolytopeSpace) -> Self {
        LinearEmbedding {
            source: space.clone(),
            target: space.clone(),
            matrix: Matrix::identity(space.dim()),
        }
    }

    pub fn source(&self) -> &PolytopeSpace {
        &self.source
    }

    pub fn target(&self) -> &PolytopeSpace {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Rational]) -> Vector {
        self.matrix.mul_vec(x)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &LinearEmbedding) -> Result<LinearEmbedding> {
        if self.target != other.source {
            return Err(precondition("embeddings do not compose"));
        }
        Ok(LinearEmbedding {
            source: self.source.clone(),
            target: other.target.clone(),
            matrix: other.matrix.mul(&self.matrix),
        })
    }

    /// Image basis: the columns of the matrix.
    pub fn columns(&self) -> Vec<Vector> {
        self.matrix.columns()
    }
}

/// A vector `x` with `‖Mx‖ ≠ ‖x‖`, or `None` when `M` is isometric.
///
/// Compares `conv{f M : f ∈ F_target}` with the source dual ball through
/// their facets, in both directions. Facet normals of a dual ball are unit
/// vectors of the primal norm, so a violated facet is itself the witness.
pub fn isometry_failure(source: &PolytopeSpace, target: &PolytopeSpace, m: &Matrix) -> Result<Option<Vector>> {
    if source.dim() == 0 {
        return Ok(None);
    }
    let one = q(1);
    let pulled: Vec<Vector> = target.dual_gens().iter().map(|f| m.vec_mul(f)).collect();
    let src_ball = source.dual_ball()?;
    for p in &pulled {
        if let Some(h) = src_ball.violated_facet(p) {
            return Ok(Some(h.clone()));
        }
    }
    let img = SymmetricPolytope::hull(source.dim(), &pulled)?;
    for g in &src_ball.vertices {
        if let Some(k) = img.facet_normals.iter().find(|k| dot(k, g) > one) {
            return Ok(Some(k.clone()));
        }
    }
    Ok(None)
}
