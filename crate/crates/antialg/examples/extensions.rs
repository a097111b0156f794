//! Low-degree cohomology as extensions: one-cocycles extend module
//! structures, two-cocycles build central extensions, and coboundaries give
//! extensions that split through an explicit base change.

use antialg::catalog::{build_ah1, build_asl2, AntiModule};
use antialg::cohomology::{
    check_module, equivalence_to_direct_sum, extend_module, extension_algebra,
    split_extension_base_change, Cochain, CochainComplex, OneCochain, TwoCochain,
};
use antialg::graded::{BasisLabel, GradedVector, Parity};
use antialg::rational::int;

fn lab(s: &str) -> BasisLabel {
    BasisLabel::parse(s).unwrap()
}

fn main() -> antialg::Result<()> {
    // a module extension equivalent to the direct sum
    let heis = build_ah1(&int(0));
    let coad = AntiModule::coadjoint(&heis)?;
    let mut c = OneCochain::zero();
    let w0 = GradedVector::basis(lab("alpha*"));
    for u in heis.ordered_basis(None) {
        let v = coad.rho(&GradedVector::basis(u.clone()), &w0)?;
        if !v.is_zero() {
            match heis.label_parity(&u)? {
                Parity::Even => c.on_even.insert(u, v),
                Parity::Odd => c.on_odd.insert(u, v),
            };
        }
    }
    let ext = extend_module(&coad, &c)?;
    println!("{}", check_module(&ext)?);
    match equivalence_to_direct_sum(&coad, &c)? {
        Some(w) => println!("split by the base change w = {w}"),
        None => println!("no base change exists"),
    }

    // an inequivalent extension on the trivial odd line
    let triv_odd = AntiModule::trivial(&heis, 0, 1);
    let mut c = OneCochain::zero();
    c.on_odd.insert(lab("a"), GradedVector::basis(lab("s:0")));
    let ext = extend_module(&triv_odd, &c)?;
    println!("{}", check_module(&ext)?);
    println!(
        "intertwiner with the direct sum exists: {}",
        equivalence_to_direct_sum(&triv_odd, &c)?.is_some()
    );

    // a split central extension of the simple algebra
    let asl2 = build_asl2();
    let triv = AntiModule::trivial(&asl2, 1, 0);
    let complex = CochainComplex::trivial_even(&asl2);
    let mut eta = OneCochain::zero();
    eta.on_even.insert(lab("eps"), GradedVector::basis(lab("t:0")));
    let mut eta_c = Cochain::new(1, 0);
    eta_c.add_term((vec![lab("eps")], vec![], lab("t:0")), &int(1));
    let (d10, _, dm12) = complex.coboundary(&eta_c, None)?;
    let mut omega = TwoCochain::default();
    for ((xs, _, out), v) in &d10.coeffs {
        omega
            .on_ee
            .entry((xs[0].clone(), xs[1].clone()))
            .or_insert_with(GradedVector::zero)
            .add_term(out, v);
    }
    for ((_, ys, out), v) in &dm12.coeffs {
        omega
            .on_oo
            .entry((ys[0].clone(), ys[1].clone()))
            .or_insert_with(GradedVector::zero)
            .add_term(out, v);
    }
    let ext = extension_algebra(&asl2, &triv, &omega)?;
    println!("{}", ext.check_antialgebra(None)?);
    println!(
        "splits through (a, b) ↦ (a, b + η(a)): {}",
        split_extension_base_change(&asl2, &triv, &omega, &eta)?
    );
    Ok(())
}
