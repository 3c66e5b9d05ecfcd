//! Vertices and facets of a dual ball, as exported by `amalgam export`.

use amalgam::banach::PolytopeSpace;
use amalgam::io::json::{to_pretty, PolytopeLit};

fn main() -> amalgam::Result<()> {
    let x = PolytopeSpace::from_ints(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]])?;
    let ball = x.dual_ball()?;
    println!("{} vertices, {} facets", ball.vertices.len(), ball.facet_normals.len());
    print!("{}", to_pretty(&PolytopeLit::of(ball)));
    Ok(())
}
