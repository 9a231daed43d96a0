//! Fibers of the quotient map: regular-sequence check, leading forms against
//! the null cone ideal, truncated membership and Koszul reduction.
//!
//! Runs the cofree adjoint sl2 fiber next to the non-cofree pair `xy, x^2 z`.

use nullcone::ideals::{
    graded_comparison, koszul_reduce, Comparison, regular_sequence_check, truncated_membership, FiberIdeal, TruncatedMembership,
};
use nullcone::invariants::adjoint_trace_generators;
use nullcone::scalar::int;
use nullcone::{Error, GeneratorSet, Polynomial, VarNames};

fn main() -> nullcone::Result<()> {
    let sl2 = adjoint_trace_generators(2, false)?;
    println!("adjoint sl2: {:?}", regular_sequence_check(&sl2, 6)?);
    let fiber = FiberIdeal::new(sl2, vec![int(1)])?;
    println!("    leading forms vs null cone: {:?}", graded_comparison(&fiber, 6, 0)?);

    let names = VarNames::new(["x", "y", "z"])?;
    let gens = GeneratorSet::parse(names.clone(), &["x*y", "x^2*z"])?;
    println!("xy, x^2 z: {:?}", regular_sequence_check(&gens, 4)?);
    let fiber = FiberIdeal::new(gens.clone(), vec![int(1), int(0)])?;
    match graded_comparison(&fiber, 2, 3)? {
        Comparison::Witness { degree, form } => {
            println!("    leading form {} of degree {degree} lies outside the null cone ideal", form.to_string_with(&names))
        }
        other => println!("    leading forms vs null cone: {other:?}"),
    }

    let z = Polynomial::parse("z", &names)?;
    for headroom in [0, 3] {
        match truncated_membership(&z, &fiber, headroom)? {
            TruncatedMembership::Member(cert) => {
                let parts: Vec<String> = cert.coefficients.iter().map(|a| a.to_string_with(&names)).collect();
                println!("    z in I_F at headroom {headroom}: z = [{}] . (xy - 1, x^2 z)", parts.join(", "));
            }
            TruncatedMembership::UndeterminedAtHeadroom { cap, .. } => {
                println!("    z undetermined at headroom {headroom} (products up to degree {cap})");
            }
        }
    }

    let a = [Polynomial::parse("-(x*y + 1)*z", &names)?, Polynomial::parse("y^2", &names)?];
    match koszul_reduce(&a, &gens, &[int(1), int(0)], 1) {
        Err(Error::SyzygyNotKoszul { degree }) => println!("    top syzygy of degree {degree} is not Koszul"),
        other => println!("    koszul reduction: {other:?}"),
    }
    Ok(())
}
