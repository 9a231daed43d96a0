//! Lie algebras fixing the invariants (g0) and preserving the null cone
//! ideal (h0), plus the commutant check for isotypic blocks.

use nullcone::ideals::GradedIdeal;
use nullcone::invariants::contraction_generators;
use nullcone::stabilizer::{annihilator_algebra, commutant_check, ideal_stabilizer_algebra};

fn main() -> nullcone::Result<()> {
    for (p, q) in [(1, 1), (1, 2), (2, 2)] {
        let gens = contraction_generators(2, p, q)?;
        let g0 = annihilator_algebra(&gens)?;
        let h0 = ideal_stabilizer_algebra(&GradedIdeal::new(gens)?)?;
        println!(
            "GL2 on {p}W + {q}W*: dim g0 = {}, dim h0 = {} ({} equations, {} unknowns)",
            g0.dimension(),
            h0.dimension(),
            h0.summary.equations,
            h0.summary.unknowns
        );
        if p == 2 && q == 2 {
            let ok = commutant_check(&h0, &g0, &[(2, 2), (2, 2)])?;
            println!("    h0 = g0 + commutant of 2W + 2W*: {ok}");
        }
    }
    Ok(())
}
