//! Push-out squares of algebras against pull-back squares of their atom spaces.

use amalgam::boolean::{FiniteBoolAlg, PushoutSquare, Subalgebra};
use amalgam::stone::{clopen_square, dual_square, is_pullback_diagram, pullback, FiniteSpace, SurjectionMap};

fn main() -> amalgam::Result<()> {
    let b = FiniteBoolAlg::numbered(6)?;
    let s = Subalgebra::from_labelling([0, 0, 1, 1, 2, 2]);
    let a = Subalgebra::from_labelling([0, 1, 0, 1, 0, 1]);
    let sq = PushoutSquare::from_subalgebras(&b, &s, &a)?;
    let dual = dual_square(&sq);
    println!("push-out: {}, dual pull-back: {}", sq.is_pushout_diagram(), is_pullback_diagram(&dual)?.holds());

    // and back: a fiber product of finite spaces
    let r = FiniteSpace::new(["p", "q"])?;
    let u = SurjectionMap::new(FiniteSpace::new(["s0", "s1", "s2"])?, r.clone(), vec![0, 1, 1])?;
    let v = SurjectionMap::new(FiniteSpace::new(["l0", "l1"])?, r, vec![0, 1])?;
    let k = pullback(&u, &v)?;
    println!("K = {:?}", k.k().points());
    println!("clopen square is a push-out: {}", clopen_square(&k)?.is_pushout_diagram());
    Ok(())
}
