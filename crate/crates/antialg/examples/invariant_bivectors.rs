//! Both canonical bivectors are invariant along the linear symplectic
//! fields, and nothing else with low-degree coefficients is.

use antialg::geometry::{
    hamiltonian_field, invariance_report, invariant_bivector_space, lambda_bivector,
    osp_hamiltonians, poisson_bivector, quadratic_osp_table,
};
use antialg::linalg::RatMatrix;
use antialg::osp::match_osp12;

fn main() -> antialg::Result<()> {
    let table = quadratic_osp_table()?;
    println!("{}", table.check_superalgebra(None)?);
    println!("quadratic hamiltonians match osp(1|2): {}", match_osp12(&table).is_ok());

    for (name, h) in osp_hamiltonians() {
        let x = hamiltonian_field(&h)?;
        let p = invariance_report(&format!("P along {name}"), &x, &poisson_bivector(), 4);
        let l = invariance_report(&format!("Λ along {name}"), &x, &lambda_bivector(), 4);
        println!("{p}");
        println!("{l}");
    }

    let space = invariant_bivector_space(1, false)?;
    println!("invariant bivectors with degree ≤ 1 coefficients: dimension {}", space.dim());
    let mut rows = space.basis.clone();
    rows.push(space.coordinates_of(&poisson_bivector()).unwrap());
    rows.push(space.coordinates_of(&lambda_bivector()).unwrap());
    println!(
        "spanned by the two canonical bivectors: {}",
        RatMatrix::from_rows(rows).rank() == space.dim()
    );
    Ok(())
}
