//! The odd bivector on the symplectic 2|1-superspace: the bracket it defines
//! on degree-one Laurent functions reproduces the conformal antialgebra, and
//! the linear functions form the simple 1|2-dimensional algebra.

use antialg::algebra::Window;
use antialg::geometry::{
    anti_bracket, contraction_convention, linear_asl2, taylor_e, taylor_ell, verify_ak1_origin,
};
use antialg::graded::HalfInt;

fn main() -> antialg::Result<()> {
    let conv = contraction_convention();
    println!(
        "calibrated contraction: global sign −1: {}, Koszul swap: {}, flipped order: {}",
        conv.global_neg, conv.koszul_swap, conv.flip_order
    );

    println!("{}", verify_ak1_origin(Window::symmetric(5))?);

    let e2 = taylor_e(2);
    let e3 = taylor_e(3);
    println!("]e2, e3[ = {}  (should be the e5 function)", anti_bracket(&e2, &e3));
    let l = taylor_ell(HalfInt::int_plus_half(0));
    println!("]l(1/2), l(1/2)[ = {}", anti_bracket(&l, &l));

    let (report, scalars) = linear_asl2()?;
    println!("{report}");
    for (name, c) in scalars {
        println!("  {name} scaled by {c}");
    }
    Ok(())
}
