//! Quotient norms, push-outs of polytopal spaces, and sup-space embeddings.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::gen::{extension_gens, int_vector, rational_vector, space, symmetric};
use super::{run_cases, Case, Checked, SuiteConfig, SuiteReport};
use crate::banach::{
    dualball_pullback_check, embed_into_sup_space, is_internal_pushout_banach, pushout_banach, quotient_norm,
    BanachPushout, LinearEmbedding, PolytopeSpace,
};
use crate::error::Result;
use crate::geometry::matrix::{intersection_coords, rank_of, Matrix};
use crate::geometry::polytope::{vertices, HalfSpace};
use crate::geometry::{dot, q, Vector};
use crate::io::json::{from_qs, to_qs, SpaceLit, Q};

fn vecs(v: &[Vec<Q>]) -> Vec<Vector> {
    v.iter().map(|x| from_qs(x)).collect()
}

fn lits(v: &[Vector]) -> Vec<Vec<Q>> {
    v.iter().map(|x| to_qs(x)).collect()
}

/// Quotient of a random space by a random subspace, at a random point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientCase {
    pub space: SpaceLit,
    pub v_basis: Vec<Vec<Q>>,
    pub y: Vec<Q>,
}

impl QuotientCase {
    pub fn generate(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Self {
        let dim = rng.gen_range(1..=cfg.max_dim.clamp(1, 4));
        let x = space(rng, dim, cfg.max_gens);
        let k = rng.gen_range(0..dim);
        let mut basis: Vec<Vector> = Vec::new();
        while basis.len() < k {
            let v = int_vector(rng, dim, 3);
            let mut t = basis.clone();
            t.push(v.clone());
            if rank_of(&t, dim) == t.len() {
                basis = t;
            }
        }
        QuotientCase {
            space: SpaceLit::of(&x),
            v_basis: lits(&basis),
            y: to_qs(&rational_vector(rng, dim)),
        }
    }
}

impl Case for QuotientCase {
    fn shrink(&self) -> Vec<Self> {
        // drop a dual generator pair, keeping the rest a norm
        let gens = vecs(&self.space.dual_gens);
        let mut out = Vec::new();
        for i in 0..gens.len() {
            let rest: Vec<Vector> = gens.iter().enumerate().filter(|(j, g)| *j != i && **g != crate::geometry::neg(&gens[i])).map(|(_, g)| g.clone()).collect();
            if rank_of(&rest, self.space.dim) == self.space.dim && !rest.is_empty() {
                let mut c = self.clone();
                c.space = SpaceLit::of(&symmetric(self.space.dim, &rest));
                out.push(c);
            }
        }
        if !self.v_basis.is_empty() {
            let mut c = self.clone();
            c.v_basis.pop();
            out.push(c);
        }
        out
    }
}

/// `max φ·y` over the vertices of `B_{X*} ∩ V^⊥`, with `V^⊥` parametrized
/// by a basis `N`: the dual side of the quotient norm.
pub fn quotient_norm_dual(x: &PolytopeSpace, v_basis: &[Vector], y: &[crate::geometry::Rational]) -> Result<crate::geometry::Rational> {
    let dim = x.dim();
    let n = if v_basis.is_empty() {
        Matrix::identity(dim).rows
    } else {
        Matrix::new(v_basis.to_vec(), dim).nullspace()
    };
    if n.is_empty() {
        return Ok(q(0));
    }
    let nm = Matrix::new(n.clone(), dim);
    let ball = x.dual_ball()?;
    let hs: Vec<HalfSpace> = ball
        .facet_normals
        .iter()
        .map(|h| HalfSpace {
            normal: nm.mul_vec(h),
            rhs: q(1),
        })
        .collect();
    let verts = vertices(n.len(), &hs)?;
    let ny = nm.mul_vec(y);
    Ok(verts.iter().map(|c| dot(c, &ny)).max().expect("a bounded slice has vertices"))
}

fn check_quotient(case: &QuotientCase) -> Result<Checked> {
    let mut ch = Checked::default();
    let x = case.space.build()?;
    let basis = vecs(&case.v_basis);
    let y = from_qs(&case.y);
    let qn = quotient_norm(&x, &basis, &y)?;
    let shifted = basis
        .iter()
        .zip(&qn.lambda)
        .fold(y.clone(), |acc, (v, l)| crate::geometry::add(&acc, &crate::geometry::scale(l, v)));
    ch.law("minimizer_attains", x.norm(&shifted)? == qn.value, || "‖y + Vλ‖ ≠ value".into());
    let dual = quotient_norm_dual(&x, &basis, &y)?;
    ch.law("primal_equals_dual", dual == qn.value, || format!("primal {}, dual {}", qn.value, dual));
    Ok(ch)
}

/// LP quotient norm against its dual description.
pub fn quotient_laws(cfg: &SuiteConfig) -> SuiteReport {
    run_cases("quotient", cfg, QuotientCase::generate, check_quotient)
}

/// `R ⊆ S`, `R ⊆ X` as coordinate embeddings into extensions, plus a second
/// step `S ⊆ S_2` and two random vectors for the enlargement laws.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PushoutCase {
    pub r: SpaceLit,
    pub s: SpaceLit,
    pub x: SpaceLit,
    pub s2: SpaceLit,
    pub y1: Vec<Q>,
    pub y2: Vec<Q>,
}

impl PushoutCase {
    pub fn generate(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Self {
        let cap = cfg.max_dim.clamp(1, 6);
        let rd = rng.gen_range(0..=2.min(cap));
        let ds = rng.gen_range(0..=2);
        let dx = rng.gen_range(0..=2);
        let (ds, dx) = if rd + ds + dx > cap { (ds.min(cap - rd), 0) } else { (ds, dx) };
        let r = space(rng, rd, 6);
        let s = symmetric(rd + ds, &extension_gens(rng, &r, ds));
        let x = symmetric(rd + dx, &extension_gens(rng, &r, dx));
        let d2 = usize::from(rd + ds + dx < cap && rng.gen_bool(0.5));
        let s2 = symmetric(rd + ds + d2, &extension_gens(rng, &s, d2));
        let ydim = rd + ds + dx;
        PushoutCase {
            r: SpaceLit::of(&r),
            s: SpaceLit::of(&s),
            x: SpaceLit::of(&x),
            s2: SpaceLit::of(&s2),
            y1: to_qs(&int_vector(rng, ydim, 2)),
            y2: to_qs(&int_vector(rng, ydim, 2)),
        }
    }
}

impl Case for PushoutCase {
    fn shrink(&self) -> Vec<Self> {
        Vec::new()
    }
}

/// The embedding of the first coordinates.
fn coordinate(r: &PolytopeSpace, s: &PolytopeSpace) -> Result<LinearEmbedding> {
    let m = Matrix::new(
        (0..s.dim())
            .map(|i| (0..r.dim()).map(|j| if i == j { q(1) } else { q(0) }).collect())
            .collect(),
        r.dim(),
    );
    LinearEmbedding::new(r.clone(), s.clone(), m)
}

/// The isometry `PO(u, v) → PO(v, u)` swapping the two summands.
fn swap_isometry(a: &BanachPushout, b: &BanachPushout) -> Result<bool> {
    let ds = a.s_to_y.source().dim();
    let w = &a.quotient;
    let target = Matrix::new(
        b.quotient.rows.iter().map(|r| r[r.len() - ds..].iter().chain(&r[..r.len() - ds]).cloned().collect()).collect(),
        w.cols,
    );
    let wt = w.transpose();
    let rows: Option<Vec<Vector>> = target.rows.iter().map(|row| wt.solve(row)).collect();
    let Some(rows) = rows else { return Ok(false) };
    let phi = Matrix::new(rows, w.nrows());
    if phi.mul(w) != target {
        return Ok(false);
    }
    Ok(LinearEmbedding::new(a.y().clone(), b.y().clone(), phi).is_ok())
}

fn check_pushout(case: &PushoutCase) -> Result<Checked> {
    let mut ch = Checked::default();
    let (r, s, x, s2) = (case.r.build()?, case.s.build()?, case.x.build()?, case.s2.build()?);
    let u = coordinate(&r, &s)?;
    let v = coordinate(&r, &x)?;
    let po = pushout_banach(&u, &v)?;
    let y = po.y();
    let dim = y.dim();
    let verdict = po.verdict()?;
    ch.law("internal_pushout", verdict.holds() && verdict.intersection.len() == r.dim(), || format!("{verdict:?}"));
    ch.law("dual_ball_pullback", dualball_pullback_check(&po)?, || "dual ball is not the pull-back".into());
    ch.law("commutes", po.commutes(), || "square does not commute".into());
    let other = pushout_banach(&v, &u)?;
    ch.law("symmetry", swap_isometry(&po, &other)?, || "no swap isometry".into());

    let s_basis = po.s_to_y.columns();
    let x_basis = po.x_to_y.columns();
    let y1 = from_qs(&case.y1);
    let y2 = from_qs(&case.y2);
    // enlarge S by a vector
    let mut s_big = s_basis.clone();
    s_big.push(y1.clone());
    if rank_of(&s_big, dim) == s_big.len() {
        let v = is_internal_pushout_banach(y, &s_big, &x_basis)?;
        ch.law("enlarge", v.holds(), || format!("{v:?}"));
    }
    // X ⊆ Y' = X + span(y2) ⊆ Y gives Y' = PO[S ∩ Y', X]
    let mut yp = x_basis.clone();
    yp.push(y2.clone());
    if rank_of(&yp, dim) == yp.len() && yp.len() < dim {
        let coords = Matrix::from_columns(&yp, dim);
        let sub = y.restrict(&yp)?;
        let s_cap: Vec<Vector> = intersection_coords(&s_basis, &yp, dim).into_iter().map(|(_, b)| b).collect();
        let x_loc: Vec<Vector> = x_basis.iter().map(|b| coords.solve(b).expect("X ⊆ Y'")).collect();
        let v = is_internal_pushout_banach(&sub, &s_cap, &x_loc)?;
        ch.law("intermediate", v.holds(), || format!("{v:?}"));
    }
    // a second step S ⊆ S_2 over Y gives Z = PO_R[S_2, X]
    let u2 = coordinate(&s, &s2)?;
    let po2 = pushout_banach(&u2, &po.s_to_y)?;
    let z = po2.y();
    let s2_in_z = po2.s_to_y.columns();
    let x_in_z: Vec<Vector> = x_basis.iter().map(|c| po2.x_to_y.apply(c)).collect();
    let v = is_internal_pushout_banach(z, &s2_in_z, &x_in_z)?;
    ch.law("transitivity", v.holds() && v.intersection.len() == r.dim(), || format!("{v:?}"));
    Ok(ch)
}

/// Push-out construction and the push-out laws for spaces.
pub fn pushout_laws(cfg: &SuiteConfig) -> SuiteReport {
    run_cases("banach", cfg, PushoutCase::generate, check_pushout)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupCase {
    pub space: SpaceLit,
    pub probes: Vec<Vec<Q>>,
}

impl Case for SupCase {
    fn shrink(&self) -> Vec<Self> {
        (0..self.probes.len())
            .map(|i| {
                let mut c = self.clone();
                c.probes = vec![self.probes[i].clone()];
                c
            })
            .filter(|c| c.probes.len() < self.probes.len())
            .collect()
    }
}

fn check_sup(case: &SupCase) -> Result<Checked> {
    let mut ch = Checked::default();
    let x = case.space.build()?;
    let e = embed_into_sup_space(&x)?;
    for p in &case.probes {
        let p = from_qs(p);
        let a = x.norm(&p)?;
        let b = e.target().norm(&e.apply(&p))?;
        ch.law("norm_preserved", a == b, || format!("‖x‖ = {a}, ‖Tx‖∞ = {b}"));
    }
    Ok(ch)
}

/// Evaluation on dual-ball vertices is an isometry into `ℓ∞^k`.
pub fn sup_laws(cfg: &SuiteConfig) -> SuiteReport {
    run_cases(
        "sup",
        cfg,
        |rng, cfg| {
            let dim = rng.gen_range(1..=cfg.max_dim.clamp(1, 4));
            SupCase {
                space: SpaceLit::of(&space(rng, dim, cfg.max_gens)),
                probes: (0..100).map(|_| to_qs(&rational_vector(rng, dim))).collect(),
            }
        },
        check_sup,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        let cfg = SuiteConfig {
            seed: 5,
            instances: 20,
            ..SuiteConfig::default()
        };
        for r in [quotient_laws(&cfg), pushout_laws(&cfg), sup_laws(&cfg)] {
            assert!(r.passed(), "{}: {:?}", r.suite, r.failures);
        }
    }

    #[test]
    fn dual_quotient_on_l1() {
        let l1 = PolytopeSpace::l1_norm(2);
        let v = vec![vec![q(1), q(-1)]];
        assert_eq!(quotient_norm_dual(&l1, &v, &[q(3), q(-4)]).unwrap(), q(1));
        assert_eq!(quotient_norm_dual(&l1, &[], &[q(3), q(-4)]).unwrap(), q(7));
    }
}
