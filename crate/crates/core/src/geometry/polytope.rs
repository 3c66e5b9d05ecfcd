//! Vertex and facet enumeration for bounded rational polytopes.
//!
//! Vertex enumeration is the double description method on the
//! homogenized cone `{(x, t) : b t - A x ≥ 0, t ≥ 0}`, run over primitive
//! integer rays with the combinatorial adjacency test. Facet enumeration
//! of a centrally symmetric hull goes through the polar body.

use fixedbitset::FixedBitSet;
use num::{BigInt, Signed, Zero};

use super::matrix::Matrix;
use super::{normalize_ints, primitive, Rational, Vector};
use crate::error::{Error, Result};

/// Half-space `normal · x ≤ rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSpace {
    pub normal: Vector,
    pub rhs: Rational,
}

impl HalfSpace {
    pub fn contains(&self, x: &[Rational]) -> bool {
        super::dot(&self.normal, x) <= self.rhs
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        super::dot(&self.normal, x) == self.rhs
    }
}

struct Ray {
    coords: Vec<BigInt>,
    zeros: FixedBitSet,
}

fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Extreme rays of the pointed cone `{y : rows · y ≥ 0}` in dimension `d`.
fn cone_extreme_rays(rows: &[Vec<BigInt>], d: usize) -> Result<Vec<Vec<BigInt>>> {
    let m = rows.len();
    // Initial simplicial cone from the first d independent rows.
    let mut chosen: Vec<usize> = Vec::with_capacity(d);
    let mut basis_rows: Vec<Vector> = Vec::with_capacity(d);
    for (i, r) in rows.iter().enumerate() {
        let rq: Vector = r.iter().map(|x| Rational::from_integer(x.clone())).collect();
        let mut trial = basis_rows.clone();
        trial.push(rq.clone());
        if Matrix::new(trial, d).rank() == basis_rows.len() + 1 {
            basis_rows.push(rq);
            chosen.push(i);
            if chosen.len() == d {
                break;
            }
        }
    }
    if chosen.len() < d {
        return Err(Error::Precondition(
            "constraint system does not describe a pointed cone (polytope unbounded or lower-dimensional)".into(),
        ));
    }
    let inv = Matrix::new(basis_rows, d)
        .inverse()
        .ok_or_else(|| Error::Internal("singular initial basis".into()))?;
    let mut rays: Vec<Ray> = (0..d)
        .map(|j| {
            let mut zeros = FixedBitSet::with_capacity(m);
            for (k, &ci) in chosen.iter().enumerate() {
                if k != j {
                    zeros.insert(ci);
                }
            }
            Ray {
                coords: primitive(&inv.column(j)),
                zeros,
            }
        })
        .collect();

    let mut processed = FixedBitSet::with_capacity(m);
    for &ci in &chosen {
        processed.insert(ci);
    }
    for (k, row) in rows.iter().enumerate() {
        if processed.contains(k) {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| int_dot(row, &r.coords)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let negs: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &negs {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[n].zeros);
                if common.count_ones(..) + 2 < d {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(i, r)| {
                    i == p || i == n || !common.is_subset(&r.zeros)
                });
                if !adjacent {
                    continue;
                }
                let coords: Vec<BigInt> = rays[n]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(nc, pc)| &vals[p] * nc - &vals[n] * pc)
                    .collect();
                let mut zeros = common;
                zeros.insert(k);
                next.push(Ray {
                    coords: normalize_ints(coords),
                    zeros,
                });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + next.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            if vals[i].is_zero() {
                r.zeros.insert(k);
            }
            kept.push(r);
        }
        kept.extend(next);
        rays = kept;
        processed.insert(k);
    }
    Ok(rays.into_iter().map(|r| r.coords).collect())
}

/// Vertices of the bounded polytope `{x : h.normal · x ≤ h.rhs}` in dimension `dim`,
/// sorted and deduplicated.
pub fn vertices(dim: usize, halfspaces: &[HalfSpace]) -> Result<Vec<Vector>> {
    if dim == 0 {
        if halfspaces.iter().any(|h| h.rhs.is_negative()) {
            return Ok(Vec::new());
        }
        return Ok(vec![Vec::new()]);
    }
    // Homogenized rows over (x, t): rhs·t - normal·x ≥ 0, plus t ≥ 0.
    let mut rows: Vec<Vec<BigInt>> = halfspaces
        .iter()
        .map(|h| {
            let mut v: Vector = h.normal.iter().map(|x| -x).collect();
            v.push(h.rhs.clone());
            primitive(&v)
        })
        .collect();
    let mut t_row = vec![BigInt::zero(); dim + 1];
    t_row[dim] = BigInt::from(1);
    rows.push(t_row);
    let rays = match cone_extreme_rays(&rows, dim + 1) {
        Ok(r) => r,
        Err(Error::Precondition(_)) if !halfspaces.is_empty() => {
            return Err(Error::Precondition(
                "half-space system is unbounded or not full-dimensional".into(),
            ))
        }
        Err(e) => return Err(e),
    };
    let mut out = Vec::with_capacity(rays.len());
    for r in rays {
        let t = &r[dim];
        if t.is_zero() {
            return Err(Error::Precondition("half-space system is unbounded".into()));
        }
        out.push(
            r[..dim]
                .iter()
                .map(|x| Rational::new(x.clone(), t.clone()))
                .collect(),
        );
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// A centrally symmetric, full-dimensional polytope containing 0 in its
/// interior, in both representations. Facets are `normal · x ≤ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricPolytope {
    pub dim: usize,
    pub vertices: Vec<Vector>,
    pub facet_normals: Vec<Vector>,
}

impl SymmetricPolytope {
    /// Convex hull of a symmetric spanning point set.
    pub fn hull(dim: usize, points: &[Vector]) -> Result<Self> {
        if dim == 0 {
            return Ok(SymmetricPolytope {
                dim,
                vertices: vec![Vec::new()],
                facet_normals: Vec::new(),
            });
        }
        if super::matrix::rank_of(points, dim) < dim {
            return Err(Error::Precondition(
                "point set does not span the space".into(),
            ));
        }
        let polar: Vec<HalfSpace> = points
            .iter()
            .map(|p| HalfSpace {
                normal: p.clone(),
                rhs: super::q(1),
            })
            .collect();
        let facet_normals = vertices(dim, &polar)?;
        let mut verts: Vec<Vector> = points
            .iter()
            .filter(|p| {
                let tight: Vec<Vector> = facet_normals
                    .iter()
                    .filter(|y| super::dot(y, p) == super::q(1))
                    .cloned()
                    .collect();
                super::matrix::rank_of(&tight, dim) == dim
            })
            .cloned()
            .collect();
        verts.sort();
        verts.dedup();
        Ok(SymmetricPolytope {
            dim,
            vertices: verts,
            facet_normals,
        })
    }

    /// Polytope given by symmetric facets `normal · x ≤ 1`.
    pub fn from_facets(dim: usize, normals: &[Vector]) -> Result<Self> {
        let hs: Vec<HalfSpace> = normals
            .iter()
            .map(|n| HalfSpace {
                normal: n.clone(),
                rhs: super::q(1),
            })
            .collect();
        let verts = vertices(dim, &hs)?;
        SymmetricPolytope::hull(dim, &verts)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.violated_facet(x).is_none()
    }

    /// First facet normal `h` with `h · x > 1`, if any.
    pub fn violated_facet(&self, x: &[Rational]) -> Option<&Vector> {
        let one = super::q(1);
        self.facet_normals.iter().find(|h| super::dot(h, x) > one)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{q, qf};

    fn pts(xs: &[&[i64]]) -> Vec<Vector> {
        xs.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn square_vertices() {
        let hs: Vec<HalfSpace> = pts(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]])
            .into_iter()
            .map(|normal| HalfSpace { normal, rhs: q(1) })
            .collect();
        assert_eq!(vertices(2, &hs).unwrap(), pts(&[&[-1, -1], &[-1, 1], &[1, -1], &[1, 1]]));
    }

    #[test]
    fn cross_polytope_facets_are_sign_vectors() {
        let p = SymmetricPolytope::hull(2, &pts(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]])).unwrap();
        assert_eq!(p.facet_normals, pts(&[&[-1, -1], &[-1, 1], &[1, -1], &[1, 1]]));
        assert_eq!(p.vertices.len(), 4);
    }

    #[test]
    fn redundant_points_are_pruned() {
        let mut points = pts(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        points.push(vec![qf(1, 2), qf(1, 2)]);
        points.push(vec![qf(-1, 2), qf(-1, 2)]);
        points.push(vec![q(0), q(0)]);
        let p = SymmetricPolytope::hull(2, &points).unwrap();
        assert_eq!(p.vertices.len(), 4);
    }

    #[test]
    fn hexagon_has_six_vertices() {
        let p = SymmetricPolytope::hull(
            2,
            &pts(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[1, 1], &[-1, -1]]),
        )
        .unwrap();
        assert_eq!(p.vertices.len(), 6);
        assert_eq!(p.facet_normals.len(), 6);
    }

    #[test]
    fn cube_in_three_dimensions() {
        let mut hs = Vec::new();
        for i in 0..3 {
            for s in [1, -1] {
                let mut n = vec![q(0); 3];
                n[i] = q(s);
                hs.push(HalfSpace { normal: n, rhs: q(1) });
            }
        }
        assert_eq!(vertices(3, &hs).unwrap().len(), 8);
    }

    #[test]
    fn unbounded_is_rejected() {
        let hs = vec![HalfSpace { normal: vec![q(1), q(0)], rhs: q(1) }];
        assert!(vertices(2, &hs).is_err());
    }
}
