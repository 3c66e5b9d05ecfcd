//! Random structures for the suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::banach::PolytopeSpace;
use crate::geometry::{q, Rational, Vector};

/// A surjection `0..n → 0..k` as a list of images, `n ≥ k ≥ 1`.
pub fn surjection<R: Rng>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    debug_assert!(n >= k && k >= 1);
    let mut m: Vec<usize> = (0..k).chain((k..n).map(|_| rng.gen_range(0..k))).collect();
    m.shuffle(rng);
    m
}

/// A labelling of `0..n` into at most `k` classes (any coarsening).
pub fn labelling<R: Rng>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..k.max(1))).collect()
}

/// Whether `m` hits all of `0..k`.
pub fn is_onto(m: &[usize], k: usize) -> bool {
    let mut seen = vec![false; k];
    for &x in m {
        if x < k {
            seen[x] = true;
        }
    }
    seen.into_iter().all(|b| b)
}

/// Deletes entry `i` of a map into `0..k`, if the rest stays onto.
pub fn delete_entry(m: &[usize], i: usize, k: usize) -> Option<Vec<usize>> {
    let mut out = m.to_vec();
    out.remove(i);
    is_onto(&out, k).then_some(out)
}

/// Deletes target `j` of a map: the entries over `j` go, later targets shift down.
pub fn delete_target(m: &[usize], j: usize) -> Vec<usize> {
    m.iter()
        .filter(|&&x| x != j)
        .map(|&x| if x > j { x - 1 } else { x })
        .collect()
}

pub fn small_int<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    q(rng.gen_range(-bound..=bound))
}

pub fn int_vector<R: Rng>(rng: &mut R, dim: usize, bound: i64) -> Vector {
    (0..dim).map(|_| small_int(rng, bound)).collect()
}

/// A rational vector with small numerators and denominators.
pub fn rational_vector<R: Rng>(rng: &mut R, dim: usize) -> Vector {
    (0..dim)
        .map(|_| Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into()))
        .collect()
}

/// Integer dual generators (one of each `±` pair) spanning the dual of `Q^dim`.
pub fn space_gens<R: Rng>(rng: &mut R, dim: usize, pairs: usize) -> Vec<Vector> {
    if dim == 0 {
        return Vec::new();
    }
    let pairs = pairs.max(dim);
    loop {
        let gens: Vec<Vector> = (0..pairs)
            .map(|_| loop {
                let g = int_vector(rng, dim, 2);
                if !crate::geometry::is_zero(&g) {
                    break g;
                }
            })
            .collect();
        if crate::geometry::matrix::rank_of(&gens, dim) == dim {
            return gens;
        }
    }
}

/// A random polytopal space with at most `max_gens` dual generators.
pub fn space<R: Rng>(rng: &mut R, dim: usize, max_gens: usize) -> PolytopeSpace {
    if dim == 0 {
        return PolytopeSpace::zero();
    }
    let max_pairs = (max_gens / 2).max(dim);
    let pairs = rng.gen_range(dim..=max_pairs);
    symmetric(dim, &space_gens(rng, dim, pairs))
}

pub fn symmetric(dim: usize, gens: &[Vector]) -> PolytopeSpace {
    let all = gens.iter().flat_map(|g| [g.clone(), crate::geometry::neg(g)]).collect();
    PolytopeSpace::new(dim, all).expect("spanning symmetric generators")
}

/// Dual generators of a space `R ⊕ T` (`dim T = extra`) whose restriction to
/// the first `R.dim()` coordinates is `R`: every generator of `R` is extended
/// by a random tail, and functionals `(½f, h)` or `(0, h)` span the rest.
pub fn extension_gens<R: Rng>(rng: &mut R, r: &PolytopeSpace, extra: usize) -> Vec<Vector> {
    loop {
        let gens = try_extension_gens(rng, r, extra);
        if crate::geometry::matrix::rank_of(&gens, r.dim() + extra) == r.dim() + extra {
            return gens;
        }
    }
}

fn try_extension_gens<R: Rng>(rng: &mut R, r: &PolytopeSpace, extra: usize) -> Vec<Vector> {
    let d = r.dim();
    if extra == 0 {
        return r.dual_gens().to_vec();
    }
    let mut gens: Vec<Vector> = Vec::new();
    let half = Rational::new(1.into(), 2.into());
    if d > 0 {
        for f in r.dual_gens() {
            let mut g = f.clone();
            g.extend(int_vector(rng, extra, 1));
            gens.push(g);
        }
    }
    let pairs = extra + rng.gen_range(0..=1);
    let tails = space_gens(rng, extra, pairs);
    for h in tails {
        let mut g: Vector = if d > 0 && rng.gen_bool(0.5) {
            let f = &r.dual_gens()[rng.gen_range(0..r.dual_gens().len())];
            f.iter().map(|x| x * &half).collect()
        } else {
            vec![q(0); d]
        };
        g.extend(h);
        gens.push(g);
    }
    gens
}
