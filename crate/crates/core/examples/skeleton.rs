//! Saturated index sets of a tower and the push-out check between the
//! subalgebras they generate.

use amalgam::tower::boolean::{BoolStepSpec, BoolTower};
use amalgam::tower::{saturate, skeleton_posex_check, Tower};

fn main() -> amalgam::Result<()> {
    // step 2 amalgamates over the subalgebra generated by step 0
    let t = BoolTower::build(&[
        BoolStepSpec::free(2),
        BoolStepSpec::free(2),
        BoolStepSpec {
            r_blocks: vec![vec![0, 1], vec![2, 3]],
            s_over: vec![0, 0, 1],
            s_labels: None,
        },
    ])?;
    let t = Tower::Boolean(t);

    for gamma in [vec![], vec![1], vec![2], vec![1, 2]] {
        let s = saturate(&t, &gamma)?;
        println!("saturate({gamma:?}) = {:?}, {} atoms", s.ordinals, s.generated.size());
    }
    let c = skeleton_posex_check(&t, &[0, 2], &[1])?;
    println!("E(0,2) ⊆ E(0,1,2) has a witness: {} (size {})", c.holds, c.witness_size);
    Ok(())
}
