//! The dual one-cocycle on the conformal antialgebra: closed on every tested
//! window, and not the coboundary of any window-supported dual element.

use antialg::algebra::Window;
use antialg::cohomology::{gamma_cocycle, gamma_value};
use antialg::graded::BasisLabel;

fn main() -> antialg::Result<()> {
    for s in ["e:0", "e:2", "l:1/2", "l:5/2"] {
        let l = BasisLabel::parse(s).unwrap();
        println!("γ({s}) = {}", gamma_value(&l)?);
    }
    let g = gamma_cocycle(Window::symmetric(6))?;
    println!("{}", g.closedness);
    println!(
        "δc = γ has no window-supported solution: {}",
        g.nontrivial_on_window
    );
    Ok(())
}
