//! Verify the defining identities of the catalog algebras, then mutate one
//! structure constant and watch the checker name the exact failure.

use antialg::algebra::{AlgebraKind, AlgebraTable, Window};
use antialg::catalog::{build_ah1, build_ak1, build_asl2, build_k1, build_osp12};
use antialg::graded::{BasisLabel, GradedVector};
use antialg::rational::{int, rat};

fn main() -> antialg::Result<()> {
    for algebra in [build_asl2(), build_ah1(&int(0)), build_ah1(&rat(-2, 1))] {
        println!("{}", algebra.check_antialgebra(None)?);
    }
    println!("{}", build_ak1(Window::symmetric(6)).check_antialgebra(None)?);
    println!("{}", build_k1(Window::symmetric(4)).check_superalgebra(None)?);
    println!("{}", build_osp12().check_superalgebra(None)?);

    // now break the weight-½ action of the unit on one odd generator
    let asl2 = build_asl2();
    let mut products: Vec<_> = asl2
        .stored_products()
        .unwrap()
        .iter()
        .map(|((l, r), v)| (l.clone(), r.clone(), v.clone()))
        .collect();
    for (l, r, v) in products.iter_mut() {
        if (l.family == "eps" && r.family == "a") || (l.family == "a" && r.family == "eps") {
            *v = GradedVector::basis(BasisLabel::plain("a"));
        }
    }
    let mutated = AlgebraTable::finite(
        "asl2 with a weight-1 action",
        AlgebraKind::Antialgebra,
        asl2.even_basis(None),
        asl2.odd_basis(None),
        products,
    )?;
    println!("{}", mutated.check_antialgebra(None)?);
    Ok(())
}
