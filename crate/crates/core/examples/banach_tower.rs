//! Towers of polytopal spaces: a line then a hexagonal plane, and the other
//! way round. The search finds an isometry between the tops.

use amalgam::banach::PolytopeSpace;
use amalgam::geometry::fmt_vec;
use amalgam::tower::banach::{banach_back_and_forth, BanachIsoOutcome, BanachStepSpec, BanachTower};

fn main() -> amalgam::Result<()> {
    let line = PolytopeSpace::from_ints(1, &[&[1]])?;
    let hex = PolytopeSpace::from_ints(2, &[&[1, 0], &[0, 1], &[1, 1]])?;
    let a = BanachTower::build(&[BanachStepSpec::free(line.clone()), BanachStepSpec::free(hex.clone())])?;
    let b = BanachTower::build(&[BanachStepSpec::free(hex), BanachStepSpec::free(line)])?;
    println!("verified: {} {}", a.verify()?, b.verify()?);

    match banach_back_and_forth(&a, &b, 10_000)? {
        BanachIsoOutcome::Isometry(f) => {
            for row in &f.matrix().rows {
                println!("  {:?}", fmt_vec(row));
            }
        }
        BanachIsoOutcome::Failure { stage, reason } => println!("failed at stage {stage}: {reason}"),
    }
    Ok(())
}
