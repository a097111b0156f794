//! Solve for all super-derivations of the simple 1|2-dimensional algebra,
//! identify the result with osp(1|2) by an explicit base change, and verify
//! the conformal symmetry action on a window.

use antialg::algebra::Window;
use antialg::catalog::build_asl2;
use antialg::derivations::{check_k1_action, derivation_algebra, match_derivations_to_osp12};
use antialg::osp::verify_iso;

fn main() -> antialg::Result<()> {
    let der = derivation_algebra(&build_asl2())?;
    let (d0, d1) = der.dims();
    println!("derivations of asl2: graded dimension {d0}|{d1}");
    println!("{}", der.table.check_superalgebra(None)?);

    let iso = match_derivations_to_osp12(&der)?;
    println!("base change to osp(1|2) verified: {}", verify_iso(&der.table, &iso)?);
    for (l, v) in &iso.images {
        println!("  {l} ↦ {v}");
    }

    println!("{}", check_k1_action(Window::symmetric(5))?);
    Ok(())
}
