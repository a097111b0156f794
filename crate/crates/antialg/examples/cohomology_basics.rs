//! The cochain complex: the coboundary squares to zero, the two components
//! form a bicomplex for trivial coefficients, and the simple algebra has no
//! low-degree cohomology.

use antialg::catalog::{build_asl2, AntiModule};
use antialg::cohomology::{CochainComplex, CoefficientComplex};

fn main() -> antialg::Result<()> {
    let asl2 = build_asl2();
    let trivial = CochainComplex::trivial_even(&asl2);
    println!("{}", trivial.verify_d2(3, None)?);
    println!("{}", trivial.bicomplex_check(3, None)?);

    for module in [AntiModule::adjoint(&asl2)?, AntiModule::coadjoint(&asl2)?] {
        let complex = CoefficientComplex::new(&module)?;
        println!("{}", complex.verify_d2(3)?);
    }

    for k in 0..=2 {
        let (even, odd) = trivial.cohomology_dims(k)?;
        println!("H^{k}(asl2; trivial) = ({even}, {odd})");
    }
    Ok(())
}
