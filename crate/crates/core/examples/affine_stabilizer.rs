//! Infinitesimal affine symmetries of a fiber.

use nullcone::ideals::FiberIdeal;
use nullcone::invariants::adjoint_trace_generators;
use nullcone::scalar::int;
use nullcone::stabilizer::{affine_stabilizer_algebra, linear_fiber_stabilizer};

fn main() -> nullcone::Result<()> {
    let cases = [
        ("sl2, q = 1", adjoint_trace_generators(2, false)?, vec![int(1)], 0),
        ("gl2, tr = 3, tr X^2 = 5", adjoint_trace_generators(2, true)?, vec![int(3), int(5)], 4),
    ];
    for (label, gens, constants, headroom) in cases {
        let fiber = FiberIdeal::new(gens, constants)?;
        let aff = affine_stabilizer_algebra(&fiber, headroom)?;
        let linear = linear_fiber_stabilizer(&fiber, headroom)?;
        println!("{label} (headroom {headroom}, products up to degree {})", aff.cap);
        println!(
            "    dim {}, vanishing on the fiber {}, effective {}",
            aff.dimension(),
            aff.vanishing_dimension(),
            aff.effective_dimension()
        );
        println!(
            "    translation rank {}, effective {}; linear stabilizer dim {}",
            aff.translation_rank(),
            aff.effective_translation_rank(),
            linear.dimension()
        );
    }
    Ok(())
}
