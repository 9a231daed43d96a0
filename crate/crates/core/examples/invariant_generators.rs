//! Generating invariants: monomial invariants of diagonal actions and the
//! classical families.

use nullcone::invariants::{
    adjoint_trace_generators, contraction_generators, minimal_monomial_generators, monomial_generation_complete,
    pfaffian_scenario_generators, sym2_vector_generators,
};
use nullcone::{GeneratorSet, VarNames, WeightSystem};

fn show(label: &str, gens: &GeneratorSet) {
    println!("{label:<24} degrees {:?}", gens.degrees());
    for g in gens.to_strings() {
        println!("    {g}");
    }
}

fn main() -> nullcone::Result<()> {
    // Z/4 acting with weights 2 and 1.
    let z4 = WeightSystem::cyclic(4, &[2, 1])?;
    let gens = minimal_monomial_generators(&z4, VarNames::new(["x", "y"])?, 8)?;
    show("Z/4 on C^2", &gens);
    println!("    generates all invariants up to degree 8: {}", monomial_generation_complete(&z4, &gens, 8)?);

    let cstar = WeightSystem::torus(&[1, -1, -2]);
    show("C* weights 1, -1, -2", &minimal_monomial_generators(&cstar, VarNames::new(["x", "y", "z"])?, 6)?);

    show("GL2 on W + 2W*", &contraction_generators(2, 1, 2)?);
    show("adjoint sl3", &adjoint_trace_generators(3, false)?);
    show("SL2 on S^2 + C^2", &sym2_vector_generators(2)?);
    show("SL4 on wedge^2 + C^4", &pfaffian_scenario_generators());
    Ok(())
}
