//! The superization functor: the symmetric square of the odd part over the
//! even part carries a Lie superalgebra bracket.

use antialg::catalog::{build_ah1, build_asl2};
use antialg::graded::{BasisLabel, GradedVector};
use antialg::rational::int;
use antialg::superization::{compare_to_derivations, superize};

fn main() -> antialg::Result<()> {
    let sup = superize(&build_asl2())?;
    let (d0, d1) = sup.dims();
    println!("superization of asl2: dimension {d0}|{d1}");
    println!("{}", sup.table.check_superalgebra(None)?);

    let a = GradedVector::basis(BasisLabel::plain("a"));
    let b = GradedVector::basis(BasisLabel::plain("b"));
    println!("[a, b] = {}", sup.odd_square(&a, &b)?);
    println!("[a, a] = {}", sup.odd_square(&a, &a)?);

    // the deformation kills one square in the quotient
    let sup = superize(&build_ah1(&int(1)))?;
    let (d0, d1) = sup.dims();
    println!("superization of ah1(1): dimension {d0}|{d1}");
    println!("[b, b] = {}", sup.odd_square(&b, &b)?);

    let cmp = compare_to_derivations(&build_asl2())?;
    println!(
        "asl2: superization {:?} vs derivations {:?}, identified through osp(1|2): {}",
        cmp.superization_dims, cmp.derivation_dims, cmp.isomorphic_via_osp12
    );
    let cmp = compare_to_derivations(&build_ah1(&int(0)))?;
    println!(
        "ah1(0): superization {:?} vs derivations {:?} (no identification claimed)",
        cmp.superization_dims, cmp.derivation_dims
    );
    Ok(())
}
