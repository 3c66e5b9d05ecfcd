//! Amalgamating two planes over a common line, then checking the norm
//! identity `‖x + s‖ = inf_r ‖x + r‖ + ‖s − r‖` and the dual ball.

use amalgam::banach::{dualball_pullback_check, pushout_banach, LinearEmbedding, PolytopeSpace};
use amalgam::geometry::matrix::Matrix;
use amalgam::geometry::{fmt_vec, q};

fn main() -> amalgam::Result<()> {
    let line = PolytopeSpace::from_ints(1, &[&[1]])?;
    let e1 = Matrix::new(vec![vec![q(1)], vec![q(0)]], 1);
    let u = LinearEmbedding::new(line.clone(), PolytopeSpace::sup_norm(2), e1.clone())?;
    let v = LinearEmbedding::new(line, PolytopeSpace::from_ints(2, &[&[1, 0], &[0, 1], &[1, 1]])?, e1)?;

    let po = pushout_banach(&u, &v)?;
    println!("Y has dimension {} and {} dual generators", po.y().dim(), po.y().dual_gens().len());
    let verdict = po.verdict()?;
    println!("internal push-out: {}", verdict.holds());
    println!("dual ball is the pull-back: {}", dualball_pullback_check(&po)?);
    for g in po.y().dual_gens().iter().take(4) {
        println!("  {:?}", fmt_vec(g));
    }
    Ok(())
}
