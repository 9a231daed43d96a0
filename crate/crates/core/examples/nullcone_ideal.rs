//! Graded pieces of the null cone ideal and membership certificates.

use nullcone::ideals::{nullcone_ideal, Membership};
use nullcone::{GeneratorSet, Polynomial, VarNames};

fn main() -> nullcone::Result<()> {
    let names = VarNames::new(["x", "y"])?;
    let gens = GeneratorSet::parse(names.clone(), &["x^2", "x*y^2", "y^4"])?;
    let ideal = nullcone_ideal(gens)?;

    println!("degree  dim I_d  dim R_d/I_d");
    for d in 0..=6 {
        println!("{d:>6}  {:>7}  {:>11}", ideal.dim(d), ideal.quotient_dim(d));
    }

    for text in ["x^3*y + 2*x*y^3", "x*y^2 - 3*x^2*y", "y^3 + x*y^2"] {
        let f = Polynomial::parse(text, &names)?;
        match ideal.membership(&f)? {
            Membership::Member(cert) => {
                let parts: Vec<String> = cert.coefficients.iter().map(|a| a.to_string_with(&names)).collect();
                println!("{text}: member, coefficients [{}]", parts.join(", "));
                assert!(cert.verifies(&f, ideal.generators().generators()));
            }
            Membership::NotMember { residual } => {
                println!("{text}: not a member, normal form {}", residual.to_string_with(&names));
            }
        }
    }
    Ok(())
}
