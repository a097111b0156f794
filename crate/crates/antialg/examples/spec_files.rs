//! Algebras round-trip through the on-disk spec format with exact
//! coefficients; malformed inputs are rejected with a pointed error.

use antialg::catalog::{build_ak1, build_asl2, load_spec, save_spec};
use antialg::algebra::Window;

fn main() -> antialg::Result<()> {
    let dir = std::env::temp_dir().join("antialg-example-specs");
    std::fs::create_dir_all(&dir).expect("temp dir");

    let path = dir.join("asl2.alg.json");
    save_spec(&build_asl2(), &path)?;
    let loaded = load_spec(&path)?;
    println!("{}", loaded.check_antialgebra(None)?);
    println!("round-tripped {} through {}", loaded.name, path.display());

    let path = dir.join("ak1.alg.json");
    save_spec(&build_ak1(Window::symmetric(4)), &path)?;
    let loaded = load_spec(&path)?;
    println!("{}", loaded.check_antialgebra(None)?);

    let bad = dir.join("bad.alg.json");
    std::fs::write(&bad, r#"{"name":"bad","kind":"antialgebra","even_basis":["u"],
      "products":[{"left":"u","right":"u","result":[{"coeff":"1","basis":"w"}]}]}"#)
        .expect("write");
    match load_spec(&bad) {
        Err(e) => println!("malformed spec rejected: {e}"),
        Ok(_) => println!("unexpectedly loaded"),
    }
    Ok(())
}
