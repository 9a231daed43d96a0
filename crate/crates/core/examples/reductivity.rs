//! Radicals, nilpotent parts and reductivity verdicts with witnesses.

use nullcone::ideals::GradedIdeal;
use nullcone::invariants::{adjoint_trace_generators, pfaffian_scenario_generators};
use nullcone::liealg::{nilpotent_part, reductivity_verdict, MatrixLieAlgebra, ReductivityVerdict};
use nullcone::stabilizer::ideal_stabilizer_algebra;
use nullcone::{GeneratorSet, VarNames};
use num_traits::Zero;

fn report(label: &str, gens: GeneratorSet) -> nullcone::Result<()> {
    let h0 = ideal_stabilizer_algebra(&GradedIdeal::new(gens)?)?;
    let l = MatrixLieAlgebra::from_space(h0.space)?;
    let rad = l.radical()?;
    let nil = nilpotent_part(&rad).map(|s| s.dim());
    println!("{label}: dim h0 = {}, radical {}, nilpotent part {:?}", l.dim(), rad.dim(), nil);
    match reductivity_verdict(&l)? {
        ReductivityVerdict::NonReductive { witness } => {
            let support: Vec<(usize, usize)> = (0..witness.dim())
                .flat_map(|i| (0..witness.dim()).map(move |j| (i, j)))
                .filter(|&(i, j)| !witness.get(i, j).is_zero())
                .collect();
            println!("    non-reductive, nilpotent radical witness supported at {support:?}");
        }
        v => println!("    {}", v.label()),
    }
    Ok(())
}

fn main() -> nullcone::Result<()> {
    report("Z/4", GeneratorSet::parse(VarNames::new(["x", "y"])?, &["x^2", "x*y^2", "y^4"])?)?;
    report("adjoint sl2", adjoint_trace_generators(2, false)?)?;
    report("Pfaffian", pfaffian_scenario_generators())?;
    Ok(())
}
