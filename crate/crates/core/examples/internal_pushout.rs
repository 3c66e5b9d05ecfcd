//! Free algebra on `x1, x2, y`: `B` is the push-out of `⟨y⟩` and `⟨x1, x2⟩`,
//! but not of `⟨y⟩` and `D = ⟨x1, x2, x1∧y, x2∧y⟩`.

use amalgam::boolean::{generated_subalgebra, is_internal_pushout, FiniteBoolAlg};

fn main() -> amalgam::Result<()> {
    let b = FiniteBoolAlg::numbered(8)?; // atom i has bits (x1, x2, y)
    let gen = |f: fn(usize) -> bool| b.element((0..8).filter(|&i| f(i)).map(|i| b.atoms()[i].as_str())).unwrap();
    let x1 = gen(|i| i & 4 != 0);
    let x2 = gen(|i| i & 2 != 0);
    let y = gen(|i| i & 1 != 0);

    let s = generated_subalgebra(&b, &[y])?;
    let a = generated_subalgebra(&b, &[x1, x2])?;
    let d = generated_subalgebra(&b, &[x1, x2, x1.meet(y), x2.meet(y)])?;

    println!("B = PO[<y>, A]: {}", is_internal_pushout(&b, &s, &a)?.holds());

    let v = is_internal_pushout(&b, &s, &d)?;
    println!("B = PO[<y>, D]: {}", v.holds());
    if let Some((p, q)) = v.order_violation {
        println!("  {:?} <= {:?} with nothing of S∩D in between", b.labels_of(p), b.labels_of(q));
    }

    let s_cap_d = s.meet(&d);
    let regenerated = s_cap_d.join(&a);
    println!("D = <(S∩D) ∪ A>: {}", regenerated == d);
    Ok(())
}
