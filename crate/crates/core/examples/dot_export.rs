//! Graphviz for a push-out square and a tower. Pipe into `dot -Tsvg`.

use amalgam::boolean::{FiniteBoolAlg, PushoutSquare, Subalgebra};
use amalgam::io::dot;
use amalgam::tower::boolean::{BoolStepSpec, BoolTower};

fn main() -> amalgam::Result<()> {
    let b = FiniteBoolAlg::numbered(4)?;
    let sq = PushoutSquare::from_subalgebras(&b, &Subalgebra::from_labelling([0, 0, 1, 1]), &Subalgebra::from_labelling([0, 1, 0, 1]))?;
    print!("{}", dot::bool_square(&sq));

    let t = BoolTower::build(&[BoolStepSpec::free(2), BoolStepSpec::free(2)])?;
    print!("{}", dot::bool_tower(&t));
    Ok(())
}
