//! Closing a set `Q` under projections into `A` until `B = PO[S, A]`.

use amalgam::boolean::{generated_subalgebra, is_internal_pushout, posex_witness, FiniteBoolAlg};

fn main() -> amalgam::Result<()> {
    let b = FiniteBoolAlg::numbered(16)?;
    let bit = |k: usize| b.element((0..16).filter(|i| i >> k & 1 == 1).map(|i| b.atoms()[i].as_str())).unwrap();
    let a = generated_subalgebra(&b, &[bit(0), bit(1)])?;

    // Q ∪ A generates B; x2 + x0 (symmetric difference) mixes A into a new generator
    let x2_plus_x0 = bit(2).minus(bit(0)).join(bit(0).minus(bit(2)));
    let q = [x2_plus_x0, bit(3)];
    let w = posex_witness(&b, &a, &q)?;
    println!("S has {} atoms after {} rounds", w.s.num_blocks(), w.iterations);
    println!("B = PO[S, A]: {}", w.verdict.holds());
    assert!(is_internal_pushout(&b, &w.s, &a)?.holds());
    Ok(())
}
