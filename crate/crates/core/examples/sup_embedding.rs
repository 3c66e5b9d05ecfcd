//! Isometric embedding into `ℓ∞^m`, one coordinate per extreme dual functional.

use amalgam::banach::{embed_into_sup_space, PolytopeSpace};
use amalgam::geometry::{fmt_vec, qf};

fn main() -> amalgam::Result<()> {
    let x = PolytopeSpace::from_ints(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, -2]])?;
    let j = embed_into_sup_space(&x)?;
    println!("into l_inf^{}", j.target().dim());
    let v = vec![qf(3, 2), qf(-1, 3)];
    let image = j.apply(&v);
    println!("{:?} -> {:?}", fmt_vec(&v), fmt_vec(&image));
    println!("norms: {} = {}", x.norm(&v)?, j.target().norm(&image)?);
    Ok(())
}
