//! Recognition of osp(1|2) structure in a 3|2-dimensional superalgebra table.
//!
//! Both the derivation superalgebra of asl(2) and its superization are copies
//! of osp(1|2); the comparison tests need an *explicit* base change, not just
//! matching dimensions. The matcher picks an odd element y₊, forms
//! e = ½[y₊,y₊] (squares of odd elements act nilpotently in a genuine
//! osp(1|2) table, so any nonzero odd vector will do), solves a small linear
//! system for the opposite odd vector y₋, and then verifies the full set of
//! structure relations exactly.

use crate::algebra::{AlgebraKind, AlgebraTable};
use crate::error::{AlgError, Result};
use crate::graded::{BasisLabel, GradedVector, HalfInt};
use crate::linalg::RatMatrix;
use crate::rational::{int, rat, Rat};
use std::collections::BTreeMap;

/// An explicit isomorphism from the standard osp(1|2) table onto a target
/// superalgebra, given by the images of x_{−1}, x_0, x_1, ξ_{−½}, ξ_{½}.
#[derive(Clone, Debug)]
pub struct OspIso {
    pub images: BTreeMap<BasisLabel, GradedVector>,
}

impl OspIso {
    pub fn image_of(&self, l: &BasisLabel) -> &GradedVector {
        &self.images[l]
    }

    /// Map an osp(1|2) vector through the base change.
    pub fn map(&self, v: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero();
        for (l, c) in v.terms() {
            out.add_scaled(&self.images[l], c);
        }
        out
    }
}

fn osp_labels() -> (Vec<BasisLabel>, Vec<BasisLabel>) {
    let evens = (-1..=1).map(|n| BasisLabel::int_indexed("x", n)).collect();
    let odds = [-1i64, 1]
        .iter()
        .map(|&t| BasisLabel::indexed("xi", HalfInt::from_twice(t)))
        .collect();
    (evens, odds)
}

/// Find an explicit isomorphism osp(1|2) → `target`, or report failure.
///
/// The target must be a finite superalgebra of graded dimension 3|2 whose
/// bracket is the candidate osp structure; all relations are verified
/// exactly before the base change is returned.
pub fn match_osp12(target: &AlgebraTable) -> Result<OspIso> {
    if target.kind != AlgebraKind::Superalgebra {
        return Err(AlgError::Precondition(format!("{} is not a superalgebra", target.name)));
    }
    if target.dims() != Some((3, 2)) {
        return Err(AlgError::NoIsomorphism(format!(
            "{} has graded dimension {:?}, need 3|2",
            target.name,
            target.dims()
        )));
    }
    let odds = target.odd_basis(None);
    let evens = target.even_basis(None);

    // candidate highest odd vectors: basis vectors, then small combinations
    let mut candidates: Vec<GradedVector> = odds.iter().cloned().map(GradedVector::basis).collect();
    for c in [int(1), -int(1), int(2), rat(1, 2), -rat(1, 2), -int(2)] {
        let mut v = GradedVector::basis(odds[0].clone());
        v.add_term(&odds[1], &c);
        candidates.push(v);
    }

    for y_plus in candidates {
        if let Some(iso) = try_candidate(target, &evens, &odds, &y_plus)? {
            return Ok(iso);
        }
    }
    Err(AlgError::NoIsomorphism(target.name.clone()))
}

fn try_candidate(
    target: &AlgebraTable,
    evens: &[BasisLabel],
    odds: &[BasisLabel],
    y_plus: &GradedVector,
) -> Result<Option<OspIso>> {
    let br = |a: &GradedVector, b: &GradedVector| target.product(a, b);
    let e = br(y_plus, y_plus)?.scale(&rat(1, 2));
    if e.is_zero() {
        return Ok(None);
    }

    // Solve [½[y₊, y₋], y₊] = ½ y₊ for y₋ = c₀·odd₀ + c₁·odd₁: two unknowns,
    // equations indexed by the odd coordinates of the result.
    let gen0 = GradedVector::basis(odds[0].clone());
    let gen1 = GradedVector::basis(odds[1].clone());
    let col = |g: &GradedVector| -> Result<Vec<Rat>> {
        let h = br(y_plus, g)?.scale(&rat(1, 2));
        let v = br(&h, y_plus)?;
        v.coordinates(odds)
    };
    let c0 = col(&gen0)?;
    let c1 = col(&gen1)?;
    let rhs = y_plus.scale(&rat(1, 2)).coordinates(odds)?;
    let mat = RatMatrix::from_rows((0..odds.len()).map(|i| vec![c0[i].clone(), c1[i].clone()]).collect());
    let Some(sol) = mat.solve(&rhs)? else {
        return Ok(None);
    };
    let mut y_minus = GradedVector::zero();
    y_minus.add_term(&odds[0], &sol[0]);
    y_minus.add_term(&odds[1], &sol[1]);
    if y_minus.is_zero() {
        return Ok(None);
    }

    let h = br(y_plus, &y_minus)?.scale(&rat(1, 2)); // image of x_0
    let f = br(&y_minus, &y_minus)?.scale(&rat(1, 2)); // image of x_{−1}
    let _ = evens;

    let images: BTreeMap<BasisLabel, GradedVector> = [
        (BasisLabel::int_indexed("x", 1), e),
        (BasisLabel::int_indexed("x", 0), h),
        (BasisLabel::int_indexed("x", -1), f),
        (BasisLabel::indexed("xi", HalfInt::from_twice(1)), y_plus.clone()),
        (BasisLabel::indexed("xi", HalfInt::from_twice(-1)), y_minus),
    ]
    .into_iter()
    .collect();
    let iso = OspIso { images };

    // the images must span: [e, h, f] independent and [y₊, y₋] independent
    let ordered = target.ordered_basis(None);
    let rows: Vec<Vec<Rat>> = iso
        .images
        .values()
        .map(|v| v.coordinates(&ordered))
        .collect::<Result<_>>()?;
    if RatMatrix::from_rows(rows).rank() != 5 {
        return Ok(None);
    }

    if verify_iso(target, &iso)? {
        Ok(Some(iso))
    } else {
        Ok(None)
    }
}

/// Check every product of the standard osp(1|2) table through the base change.
pub fn verify_iso(target: &AlgebraTable, iso: &OspIso) -> Result<bool> {
    let osp = crate::catalog::build_osp12();
    let (evens, odds) = osp_labels();
    let all: Vec<BasisLabel> = evens.iter().chain(odds.iter()).cloned().collect();
    for l in &all {
        for r in &all {
            let expect = iso.map(&osp.product_labels(l, r)?);
            let got = target.product(iso.image_of(l), iso.image_of(r))?;
            if expect != got {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build_osp12;

    #[test]
    fn identifies_the_standard_table() {
        let osp = build_osp12();
        let iso = match_osp12(&osp).unwrap();
        assert!(verify_iso(&osp, &iso).unwrap());
    }

    #[test]
    fn identifies_a_rescaled_copy() {
        // scale the odd basis: an isomorphic but not identical table
        let osp = build_osp12();
        let scaled = {
            let evens = osp.even_basis(None);
            let odds = osp.odd_basis(None);
            let mut products = Vec::new();
            for ((l, r), v) in osp.stored_products().unwrap() {
                // ξ → 3ξ scales the odd-odd structure constants by 9
                let c = if odds.contains(l) && odds.contains(r) { int(9) } else { int(1) };
                products.push((l.clone(), r.clone(), v.scale(&c)));
            }
            AlgebraTable::finite("osp-scaled", AlgebraKind::Superalgebra, evens, odds, products)
                .unwrap()
        };
        assert!(scaled.check_superalgebra(None).unwrap().passed());
        let iso = match_osp12(&scaled).unwrap();
        assert!(verify_iso(&scaled, &iso).unwrap());
    }

    #[test]
    fn rejects_wrong_dimensions() {
        let k1 = crate::catalog::build_k1(crate::algebra::Window::symmetric(2));
        assert!(match_osp12(&k1).is_err());
    }
}
