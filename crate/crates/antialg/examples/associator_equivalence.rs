//! Antialgebra axioms as the partial skew-symmetrization of associativity:
//! the four split identity families vanish exactly when the paired axioms
//! do, witness by witness.

use antialg::algebra::Window;
use antialg::associator::{bracket_to_m, gerstenhaber_square, skew_equivalence};
use antialg::catalog::{build_ah1, build_ak1, build_asl2};
use antialg::rational::int;

fn main() -> antialg::Result<()> {
    for algebra in [build_asl2(), build_ah1(&int(1))] {
        let m = bracket_to_m(&algebra)?;
        println!("square of the dictionary map vanishes: {}", gerstenhaber_square(&m)?.is_zero());
        println!("{}", skew_equivalence(&m, None)?);
    }
    let m = bracket_to_m(&build_ak1(Window::symmetric(4)))?;
    println!("{}", skew_equivalence(&m, Some(Window::symmetric(4)))?);
    Ok(())
}
