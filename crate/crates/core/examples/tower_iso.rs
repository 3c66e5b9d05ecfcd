//! Back-and-forth between two towers that adjoin the same free steps in a
//! different order, plain and pointed.

use amalgam::tower::boolean::{back_and_forth, pointed_back_and_forth, BoolStepSpec, BoolTower};

fn main() -> amalgam::Result<()> {
    let left = BoolTower::build(&[BoolStepSpec::free(2), BoolStepSpec::free(3), BoolStepSpec::free(2)])?;
    let right = BoolTower::build(&[BoolStepSpec::free(3), BoolStepSpec::free(2), BoolStepSpec::free(2)])?;
    println!("tops: {} and {} atoms", left.top().len(), right.top().len());

    let run = back_and_forth(&left, &right)?;
    for round in &run.transcript.rounds {
        println!("round {} ({} stage {}): {} blocks", round.round, round.side, round.stage, round.pairs.len());
    }
    let iso = run.iso.expect("permuted free steps are isomorphic");
    println!("isomorphism verified: {}", iso.verify_homomorphism(usize::MAX));

    let pointed = pointed_back_and_forth(&left, 5, &right, 0)?;
    let f = pointed.iso.expect("tops are homogeneous");
    println!("pointed: right atom 0 goes to left atom {}", f.atom_map()[0]);
    Ok(())
}
