//! The polynomial superspace model: scalar calibration, the anticommutator
//! law, the quadratic relations with their ghost Casimir, and the
//! certificate that exact finite solutions are trivial.

use antialg::algebra::Window;
use antialg::graded::{BasisLabel, Parity};
use antialg::rational::{fmt_rat, int, rat};
use antialg::representations::{
    build_frep, check_asl2_rep, check_poly_rep, finite_triviality_certificate,
    frep_asl2_matrix_rep, ghost_casimir, GradedMatrix, PolySuperModule,
};

fn main() -> antialg::Result<()> {
    let w = Window::symmetric(3);
    let rep = build_frep(w)?;
    println!(
        "calibrated scalars: c_ℓ = {}, c_e = {}, flipped odd-odd constant: {}",
        fmt_rat(&rep.c_ell),
        fmt_rat(&rep.c_e),
        rep.odd_odd_flipped
    );
    println!("{}", check_poly_rep(&rep, w, 5)?);

    // the embedded 1|2 subalgebra on a monomial window
    let module = PolySuperModule::new(-6, 6, 2);
    let snap = frep_asl2_matrix_rep(&rep, &module)?;
    let a = snap.chi[&BasisLabel::plain("a")].scale(&int(2));
    let b = snap.chi[&BasisLabel::plain("b")].scale(&int(2));
    let e = a.compose(&b).sub(&b.compose(&a));
    let interior = module.interior_columns(4);
    println!("{}", check_asl2_rep(&e, &a, &b, Some(&interior))?);

    let gamma = ghost_casimir(&a, &b);
    let q = gamma
        .compose(&gamma)
        .sub(&GradedMatrix::identity(snap.d0, snap.d1).scale(&rat(1, 4)));
    println!(
        "ghost Casimir squares to ¼·identity on the interior: {}",
        q.vanishes_on(&module.interior_columns(6))
    );

    // every exact finite-dimensional solution is zero
    let e0 = GradedMatrix::zero(Parity::Even, 2, 2);
    let a0 = GradedMatrix::zero(Parity::Odd, 2, 2);
    let b0 = GradedMatrix::zero(Parity::Odd, 2, 2);
    let cert = finite_triviality_certificate(&e0, &a0, &b0)?;
    println!("triviality certificate:");
    for (step, ok) in &cert.steps {
        println!("  {step}: {}", if *ok { "verified" } else { "FAILED" });
    }
    Ok(())
}
