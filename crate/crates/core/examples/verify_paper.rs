//! The bundled golden suite, with a deliberately broken copy as a control.

use nullcone::scenario::{bundled_scenarios, perturb_dimension, render_suite, run_suite, verify_paper};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let suite = verify_paper()?;
    print!("{}", render_suite(&suite));

    let mut scenarios = bundled_scenarios()?;
    let (bad, item) = perturb_dimension(&scenarios[0]).ok_or("nothing to perturb")?;
    scenarios[0] = bad;
    let control = run_suite(&scenarios)?;
    println!("\nwith {item} of {} off by one: {:?}", scenarios[0].name, control.failing_items());
    Ok(())
}
