//! Does a given invertible map preserve the ideal?

use nullcone::ideals::{map_preserves_ideal, GradedIdeal, IdealRef};
use nullcone::invariants::{adjoint_trace_generators, transposition_map};
use nullcone::{AffineMap, GeneratorSet, VarNames};

fn main() -> nullcone::Result<()> {
    for n in [2, 3] {
        let ideal = GradedIdeal::new(adjoint_trace_generators(n, false)?)?;
        let verdict = map_preserves_ideal(&transposition_map(n, true), IdealRef::Graded(&ideal), 0)?;
        println!("transpose on sl{n}: {verdict:?}");
    }

    let names = VarNames::new(["x", "y", "z"])?;
    let ideal = GradedIdeal::new(GeneratorSet::parse(names.clone(), &["x*y", "x^2*z"])?)?;
    let swap = AffineMap::permutation(&[1, 0, 2]);
    match map_preserves_ideal(&swap, IdealRef::Graded(&ideal), 0)? {
        nullcone::ideals::Preservation::NotPreserved { generator, image } => {
            println!("swap x <-> y sends generator {generator} to {}, outside the ideal", image.to_string_with(&names));
        }
        other => println!("swap x <-> y: {other:?}"),
    }
    Ok(())
}
