//! Push-out of two embeddings `R → S`, `R → A` as a fiber product of atoms.
//!
//! ```bash
//! cargo run --example boolean_pushout
//! ```

use amalgam::boolean::{pushout, DualSurjection, FiniteBoolAlg};

fn main() -> amalgam::Result<()> {
    let r = FiniteBoolAlg::new(["r1", "r2"])?;
    let s = FiniteBoolAlg::new(["s1", "s2", "s3"])?;
    let a = FiniteBoolAlg::new(["a1", "a2", "a3"])?;
    // embeddings are given dually: each atom of the bigger algebra names the atom of R below it
    let u = DualSurjection::from_labels(r.clone(), s, [("s1", "r1"), ("s2", "r2"), ("s3", "r2")])?;
    let v = DualSurjection::from_labels(r, a, [("a1", "r1"), ("a2", "r1"), ("a3", "r2")])?;

    let sq = pushout(&u, &v)?;
    println!("atoms of B: {:?}", sq.b().atoms());
    println!("internal push-out: {}", sq.is_pushout_diagram());

    let b = sq.b();
    for row in sq.interpolant_table()?.iter().filter(|r| !r.a.is_empty() && !r.s.is_empty()).take(6) {
        println!("{:?} ∧ {:?} = 0, separated by {:?}", b.labels_of(row.a), b.labels_of(row.s), b.labels_of(row.r));
    }
    Ok(())
}
