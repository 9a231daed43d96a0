//! Exact polynomial arithmetic and the derivation action of matrices.
//!
//! ```text
//! cargo run --example polynomials
//! ```

use nullcone::scalar::ratio;
use nullcone::{derivation_apply, Matrix, Polynomial, VarNames};

fn main() -> nullcone::Result<()> {
    let names = VarNames::new(["x", "y", "z"])?;
    let f = Polynomial::parse("x^2*z - 3/2*x*y + 1", &names)?;
    let g = Polynomial::parse("(x + y)^2", &names)?;

    println!("f       = {}", f.to_string_with(&names));
    println!("g       = {}", g.to_string_with(&names));
    println!("f * g   = {}", (&f * &g).to_string_with(&names));
    println!("df/dx   = {}", f.partial_derivative(0)?.to_string_with(&names));
    println!("f(1,2,3) = {}", f.evaluate(&[ratio(1, 1), ratio(2, 1), ratio(3, 1)])?);

    // E_ij acts as x_j d/dx_i, so unit(3, 1, 0) is x d/dy.
    let x_d_dy = Matrix::unit(3, 1, 0);
    let image = derivation_apply(&x_d_dy, &g)?;
    println!("x d/dy (g) = {}", image.to_string_with(&names));

    let lhs = derivation_apply(&x_d_dy, &(&f * &g))?;
    let rhs = &(&derivation_apply(&x_d_dy, &f)? * &g) + &(&f * &image);
    assert_eq!(lhs, rhs);
    println!("Leibniz rule holds on f * g");
    Ok(())
}
