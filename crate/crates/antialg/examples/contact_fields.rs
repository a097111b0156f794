//! Contact vector fields on the 1|1-superspace realize the conformal
//! superalgebra, after calibrating the coefficient of the SUSY term.

use antialg::algebra::Window;
use antialg::rational::fmt_rat;
use antialg::representations::{check_contact_k1, contact_convention, contact_field};
use antialg::superspace::Poly11;

fn main() -> antialg::Result<()> {
    let conv = contact_convention();
    println!(
        "calibrated contact coefficient κ = {} (with parity sign: {}), odd scale {}, flipped: {}",
        fmt_rat(&conv.kappa),
        conv.parity_sign,
        fmt_rat(&conv.odd_scale),
        conv.odd_odd_flipped,
    );

    // h = 1 gives plain translation
    let x = contact_field(&Poly11::one())?;
    println!("X_1(x^4) = {}", x.apply(&Poly11::x_pow(4)));

    // h = x gives the grading field
    let x = contact_field(&Poly11::x_pow(1))?;
    println!("X_x(x^3) = {}", x.apply(&Poly11::x_pow(3)));
    println!("X_x(ξ) = {}", x.apply(&Poly11::xi_x_pow(0)));

    println!("{}", check_contact_k1(Window::symmetric(3), 6)?);
    Ok(())
}
