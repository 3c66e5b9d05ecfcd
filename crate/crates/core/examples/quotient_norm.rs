//! `inf_{v ∈ V} ‖y + v‖` in a polytopal norm, exactly.

use amalgam::banach::{quotient_norm, PolytopeSpace};
use amalgam::geometry::{fmt_vec, q, qf};

fn main() -> amalgam::Result<()> {
    // hexagonal norm on Q^2 modulo the diagonal
    let hex = PolytopeSpace::from_ints(2, &[&[1, 0], &[0, 1], &[1, 1]])?;
    let qn = quotient_norm(&hex, &[vec![q(1), q(1)]], &[q(3), qf(-1, 2)])?;
    println!("quotient norm = {}, lambda = {:?}", qn.value, fmt_vec(&qn.lambda));

    let l1 = PolytopeSpace::l1_norm(3);
    let qn = quotient_norm(&l1, &[vec![q(1), q(-1), q(0)]], &[q(2), q(1), q(-1)])?;
    println!("l1: {} at lambda {:?}", qn.value, fmt_vec(&qn.lambda));
    Ok(())
}
