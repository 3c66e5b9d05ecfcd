use super::embedding::LinearEmbedding;
use super::space::PolytopeSpace;
use crate::error::Result;
use crate::geometry::matrix::Matrix;

/// `x ↦ (f(x))_f` over the extreme points `f` of the dual ball, into `ℓ∞^k`.
///
/// Finite analog of embedding a space into `C(K)` by evaluation on the
/// dual ball. The isometry is certified by [`LinearEmbedding::new`].
pub fn embed_into_sup_space(x: &PolytopeSpace) -> Result<LinearEmbedding> {
    let ext = x.dual_ball()?.vertices.clone();
    let k = ext.len();
    LinearEmbedding::new(x.clone(), PolytopeSpace::sup_norm(k), Matrix::new(ext, x.dim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{q, Vector};

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn l1_plane_into_sup_four() {
        let l1 = PolytopeSpace::l1_norm(2);
        let e = embed_into_sup_space(&l1).unwrap();
        assert_eq!(e.target().dim(), 4);
        let img = e.apply(&v(&[3, -4]));
        assert_eq!(img.iter().max().unwrap(), &q(7));
        assert_eq!(e.target().norm(&img).unwrap(), q(7));
        assert_eq!(e.apply(&v(&[0, 0])), v(&[0, 0, 0, 0]));
    }

    #[test]
    fn sup_plane_and_zero_space() {
        let sup = PolytopeSpace::sup_norm(2);
        let e = embed_into_sup_space(&sup).unwrap();
        assert_eq!(e.target().dim(), 4);
        let z = embed_into_sup_space(&PolytopeSpace::zero()).unwrap();
        assert_eq!(z.target().norm(&z.apply(&[])).unwrap(), q(0));
    }
}
