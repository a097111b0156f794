//! ℤ₂-graded algebras given by structure constants, and the axiom checkers
//! for the two kinds of object this crate manipulates.
//!
//! A *Lie antialgebra* is a graded commutative algebra (in the signed sense:
//! even-even and even-odd products are symmetric, odd-odd products are
//! antisymmetric) whose even part is associative and commutative, acting on
//! the odd part by a half-weight action and a Leibniz rule, with a cyclic
//! Jacobi-type identity on three odd arguments. A *Lie superalgebra* carries
//! the usual super-anticommutativity and the graded Jacobi identity.
//!
//! Finite algebras are closed structure-constant tables. Infinite families
//! are represented by total index rules, never by truncated tables: an axiom
//! check quantifies its witnesses over a finite index window but every
//! product inside the check is evaluated exactly, so no spurious boundary
//! failures can occur.

use crate::error::{AlgError, Result};
use crate::graded::{BasisLabel, GradedVector, HalfInt, Parity};
use crate::rational::{int, rat, Rat};
use crate::report::Report;
use num_traits::Zero;
use std::collections::BTreeMap;

pub const ID_SUPERCOMM: &str = "supercommutativity";
pub const ID_EVEN_ASSOC: &str = "even-associativity";
pub const ID_HALF_ACTION: &str = "half-action";
pub const ID_ODD_LEIBNIZ: &str = "odd-leibniz";
pub const ID_ODD_JACOBI: &str = "odd-jacobi";
pub const ID_SUPER_SKEW: &str = "super-anticommutativity";
pub const ID_SUPER_JACOBI: &str = "super-jacobi";

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    Antialgebra,
    Superalgebra,
}

/// Inclusive index window used to enumerate witnesses on family algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub min: HalfInt,
    pub max: HalfInt,
}

impl Window {
    pub fn symmetric(bound: i64) -> Window {
        Window { min: HalfInt::from_int(-bound), max: HalfInt::from_int(bound) }
    }

    pub fn contains(&self, i: HalfInt) -> bool {
        self.min <= i && i <= self.max
    }

    /// Integer indices inside the window, ascending.
    pub fn integers(&self) -> Vec<HalfInt> {
        let lo = (self.min.twice() + 1).div_euclid(2);
        let hi = self.max.twice().div_euclid(2);
        (lo..=hi).map(HalfInt::from_int).collect()
    }

    /// Proper half-integer indices inside the window, ascending.
    pub fn half_integers(&self) -> Vec<HalfInt> {
        (self.min.twice()..=self.max.twice())
            .filter(|t| t.rem_euclid(2) != 0)
            .map(HalfInt::from_twice)
            .collect()
    }
}

impl std::fmt::Display for Window {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.min, self.max)
    }
}

/// The two built-in infinite families.
///
/// `Ak1 { flip_odd_odd: true }` is the variant with the opposite sign on the
/// odd-odd structure constant. It is not isomorphic to the standard table
/// over ℚ (the change of basis would need √−1) and is exactly the real form
/// realized by the polynomial superspace representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyRule {
    Ak1 { flip_odd_odd: bool },
    K1,
}

#[derive(Clone, Debug)]
pub struct FiniteTable {
    pub even_basis: Vec<BasisLabel>,
    pub odd_basis: Vec<BasisLabel>,
    products: BTreeMap<(BasisLabel, BasisLabel), GradedVector>,
}

#[derive(Clone, Debug)]
enum Backend {
    Finite(FiniteTable),
    Family { rule: FamilyRule, window: Window },
}

/// A ℤ₂-graded algebra with a bilinear, parity-preserving product.
#[derive(Clone, Debug)]
pub struct AlgebraTable {
    pub name: String,
    pub kind: AlgebraKind,
    backend: Backend,
}

impl AlgebraTable {
    /// Build a finite table from one orientation of each product.
    ///
    /// The companion orientation demanded by (super)commutativity is generated
    /// automatically; supplying both orientations is allowed but they must be
    /// consistent. Products whose symmetry forces them to vanish (odd-odd
    /// diagonal of an antialgebra, even-even diagonal of a superalgebra) are
    /// rejected when given nonzero.
    pub fn finite(
        name: &str,
        kind: AlgebraKind,
        even_basis: Vec<BasisLabel>,
        odd_basis: Vec<BasisLabel>,
        products: Vec<(BasisLabel, BasisLabel, GradedVector)>,
    ) -> Result<AlgebraTable> {
        let mut all = even_basis.clone();
        all.extend(odd_basis.iter().cloned());
        {
            let mut seen = std::collections::BTreeSet::new();
            for l in &all {
                if !seen.insert(l.clone()) {
                    return Err(AlgError::InvalidTable(format!("duplicate basis label `{l}`")));
                }
            }
        }
        let parity_of = |l: &BasisLabel| -> Result<Parity> {
            if even_basis.contains(l) {
                Ok(Parity::Even)
            } else if odd_basis.contains(l) {
                Ok(Parity::Odd)
            } else {
                Err(AlgError::UnknownLabel(l.to_string()))
            }
        };

        let mut table: BTreeMap<(BasisLabel, BasisLabel), GradedVector> = BTreeMap::new();
        let mut insert = |l: BasisLabel, r: BasisLabel, v: GradedVector| -> Result<()> {
            if let Some(prev) = table.get(&(l.clone(), r.clone())) {
                if *prev != v {
                    return Err(AlgError::InvalidTable(format!(
                        "inconsistent product for ({l}, {r})"
                    )));
                }
                return Ok(());
            }
            if !v.is_zero() {
                table.insert((l, r), v);
            }
            Ok(())
        };

        for (l, r, v) in products {
            let pl = parity_of(&l)?;
            let pr = parity_of(&r)?;
            let expect = pl + pr;
            for (out, _) in v.terms() {
                if parity_of(out)? != expect {
                    return Err(AlgError::InvalidTable(format!(
                        "product ({l}, {r}) has a term `{out}` of wrong parity"
                    )));
                }
            }
            // symmetry factor for the companion orientation
            let companion_sign = match kind {
                AlgebraKind::Antialgebra => int(pl.koszul(pr) as i64),
                AlgebraKind::Superalgebra => -int(pl.koszul(pr) as i64),
            };
            if l == r && companion_sign == -int(1) && !v.is_zero() {
                return Err(AlgError::InvalidTable(format!(
                    "product ({l}, {l}) must vanish by symmetry"
                )));
            }
            let comp = v.scale(&companion_sign);
            insert(l.clone(), r.clone(), v)?;
            insert(r, l, comp)?;
        }

        // closure: every result label must be declared
        for v in table.values() {
            for (out, _) in v.terms() {
                parity_of(out)?;
            }
        }

        Ok(AlgebraTable {
            name: name.to_string(),
            kind,
            backend: Backend::Finite(FiniteTable { even_basis, odd_basis, products: table }),
        })
    }

    pub fn family(name: &str, kind: AlgebraKind, rule: FamilyRule, window: Window) -> AlgebraTable {
        AlgebraTable { name: name.to_string(), kind, backend: Backend::Family { rule, window } }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.backend, Backend::Finite(_))
    }

    pub fn family_rule(&self) -> Option<FamilyRule> {
        match &self.backend {
            Backend::Family { rule, .. } => Some(*rule),
            Backend::Finite(_) => None,
        }
    }

    pub fn default_window(&self) -> Option<Window> {
        match &self.backend {
            Backend::Family { window, .. } => Some(*window),
            Backend::Finite(_) => None,
        }
    }

    /// Parity of a basis label; errors on labels outside the algebra.
    pub fn label_parity(&self, l: &BasisLabel) -> Result<Parity> {
        match &self.backend {
            Backend::Finite(t) => {
                if t.even_basis.contains(l) {
                    Ok(Parity::Even)
                } else if t.odd_basis.contains(l) {
                    Ok(Parity::Odd)
                } else {
                    Err(AlgError::UnknownLabel(format!("{l} in {}", self.name)))
                }
            }
            Backend::Family { rule, .. } => family_label_parity(*rule, l)
                .ok_or_else(|| AlgError::UnknownLabel(format!("{l} in {}", self.name))),
        }
    }

    pub fn contains_label(&self, l: &BasisLabel) -> bool {
        self.label_parity(l).is_ok()
    }

    /// Even basis labels (finite table order, or ascending window order).
    pub fn even_basis(&self, window: Option<Window>) -> Vec<BasisLabel> {
        match &self.backend {
            Backend::Finite(t) => t.even_basis.clone(),
            Backend::Family { rule, window: w } => {
                let w = window.unwrap_or(*w);
                let fam = match rule {
                    FamilyRule::Ak1 { .. } => "e",
                    FamilyRule::K1 => "x",
                };
                w.integers().into_iter().map(|i| BasisLabel::indexed(fam, i)).collect()
            }
        }
    }

    pub fn odd_basis(&self, window: Option<Window>) -> Vec<BasisLabel> {
        match &self.backend {
            Backend::Finite(t) => t.odd_basis.clone(),
            Backend::Family { rule, window: w } => {
                let w = window.unwrap_or(*w);
                let fam = match rule {
                    FamilyRule::Ak1 { .. } => "l",
                    FamilyRule::K1 => "xi",
                };
                w.half_integers().into_iter().map(|i| BasisLabel::indexed(fam, i)).collect()
            }
        }
    }

    /// Ordered basis (evens then odds) used for matrix forms of operators.
    pub fn ordered_basis(&self, window: Option<Window>) -> Vec<BasisLabel> {
        let mut b = self.even_basis(window);
        b.extend(self.odd_basis(window));
        b
    }

    pub fn dims(&self) -> Option<(usize, usize)> {
        match &self.backend {
            Backend::Finite(t) => Some((t.even_basis.len(), t.odd_basis.len())),
            Backend::Family { .. } => None,
        }
    }

    /// Product of two basis labels. Family rules are total in the index, so
    /// results may carry indices outside any window; they are still exact.
    pub fn product_labels(&self, l: &BasisLabel, r: &BasisLabel) -> Result<GradedVector> {
        match &self.backend {
            Backend::Finite(t) => {
                self.label_parity(l)?;
                self.label_parity(r)?;
                Ok(t.products.get(&(l.clone(), r.clone())).cloned().unwrap_or_default())
            }
            Backend::Family { rule, .. } => family_product(*rule, l, r).ok_or_else(|| {
                AlgError::UnknownLabel(format!("({l}, {r}) in {}", self.name))
            }),
        }
    }

    /// Bilinear extension of the table to formal linear combinations.
    pub fn product(&self, u: &GradedVector, v: &GradedVector) -> Result<GradedVector> {
        let mut out = GradedVector::zero();
        for (lu, cu) in u.terms() {
            for (lv, cv) in v.terms() {
                let p = self.product_labels(lu, lv)?;
                out.add_scaled(&p, &(cu * cv));
            }
        }
        Ok(out)
    }

    /// Parity of a vector: `Some(p)` when homogeneous, `None` when mixed.
    pub fn parity_of(&self, v: &GradedVector) -> Result<Option<Parity>> {
        let mut seen: Option<Parity> = None;
        for l in v.labels() {
            let p = self.label_parity(l)?;
            match seen {
                None => seen = Some(p),
                Some(q) if q != p => return Ok(None),
                _ => {}
            }
        }
        Ok(Some(seen.unwrap_or(Parity::Even)))
    }

    /// Rescale the odd basis by λ ≠ 0 (for a finite antialgebra this scales
    /// the odd-odd structure constants by λ²; nothing else changes).
    pub fn scale_odd_basis(&self, lambda: &Rat) -> Result<AlgebraTable> {
        assert!(!lambda.is_zero(), "odd rescaling must be invertible");
        let Backend::Finite(t) = &self.backend else {
            return Err(AlgError::InvalidTable("odd rescaling needs a finite table".into()));
        };
        let sq = lambda * lambda;
        let mut products = t.products.clone();
        for ((l, r), v) in products.iter_mut() {
            let pl = self.label_parity(l)?;
            let pr = self.label_parity(r)?;
            if pl == Parity::Odd && pr == Parity::Odd {
                *v = v.scale(&sq);
            }
        }
        Ok(AlgebraTable {
            name: format!("{}(odd×{lambda})", self.name),
            kind: self.kind,
            backend: Backend::Finite(FiniteTable {
                even_basis: t.even_basis.clone(),
                odd_basis: t.odd_basis.clone(),
                products,
            }),
        })
    }

    /// Stored products, one entry per ordered pair (finite tables only).
    pub fn stored_products(&self) -> Option<&BTreeMap<(BasisLabel, BasisLabel), GradedVector>> {
        match &self.backend {
            Backend::Finite(t) => Some(&t.products),
            Backend::Family { .. } => None,
        }
    }

    /// Check the five antialgebra identity families on every (pair/triple of)
    /// basis label(s) with indices inside `window`.
    pub fn check_antialgebra(&self, window: Option<Window>) -> Result<Report> {
        if self.kind != AlgebraKind::Antialgebra {
            return Err(AlgError::Precondition(format!(
                "{} is not declared as an antialgebra",
                self.name
            )));
        }
        let mut report = Report::new(&self.name);
        if let Some(w) = window.or(self.default_window()) {
            if !self.is_finite() {
                report = report.with_window(w.to_string());
            }
        }
        let evens = self.even_basis(window);
        let odds = self.odd_basis(window);
        let all: Vec<BasisLabel> = evens.iter().chain(odds.iter()).cloned().collect();

        let bv = |l: &BasisLabel| GradedVector::basis(l.clone());
        let prod = |a: &GradedVector, b: &GradedVector| self.product(a, b);

        // supercommutativity on all ordered pairs
        for x in &all {
            for y in &all {
                let sign = int(self.label_parity(x)?.koszul(self.label_parity(y)?) as i64);
                let lhs = prod(&bv(x), &bv(y))?;
                let rhs = prod(&bv(y), &bv(x))?.scale(&sign);
                report.record(ID_SUPERCOMM, vec![x.to_string(), y.to_string()], &(&lhs - &rhs));
            }
        }

        // even part is associative
        for x1 in &evens {
            for x2 in &evens {
                for x3 in &evens {
                    let lhs = prod(&bv(x1), &prod(&bv(x2), &bv(x3))?)?;
                    let rhs = prod(&prod(&bv(x1), &bv(x2))?, &bv(x3))?;
                    report.record(
                        ID_EVEN_ASSOC,
                        vec![x1.to_string(), x2.to_string(), x3.to_string()],
                        &(&lhs - &rhs),
                    );
                }
            }
        }

        // half-action of the even part on the odd part; enumerating all
        // ordered pairs (x1, x2) covers both argument orders
        for x1 in &evens {
            for x2 in &evens {
                for y in &odds {
                    let lhs = prod(&bv(x1), &prod(&bv(x2), &bv(y))?)?;
                    let rhs = prod(&prod(&bv(x1), &bv(x2))?, &bv(y))?.scale(&rat(1, 2));
                    report.record(
                        ID_HALF_ACTION,
                        vec![x1.to_string(), x2.to_string(), y.to_string()],
                        &(&lhs - &rhs),
                    );
                }
            }
        }

        // Leibniz rule of the even part over odd-odd products
        for x in &evens {
            for y1 in &odds {
                for y2 in &odds {
                    let lhs = prod(&bv(x), &prod(&bv(y1), &bv(y2))?)?;
                    let rhs = &prod(&prod(&bv(x), &bv(y1))?, &bv(y2))?
                        + &prod(&bv(y1), &prod(&bv(x), &bv(y2))?)?;
                    report.record(
                        ID_ODD_LEIBNIZ,
                        vec![x.to_string(), y1.to_string(), y2.to_string()],
                        &(&lhs - &rhs),
                    );
                }
            }
        }

        // cyclic Jacobi-type identity on odd triples
        for y1 in &odds {
            for y2 in &odds {
                for y3 in &odds {
                    let mut defect = GradedVector::zero();
                    for (a, b, c) in [(y1, y2, y3), (y2, y3, y1), (y3, y1, y2)] {
                        defect.add_scaled(&prod(&bv(a), &prod(&bv(b), &bv(c))?)?, &int(1));
                    }
                    report.record(
                        ID_ODD_JACOBI,
                        vec![y1.to_string(), y2.to_string(), y3.to_string()],
                        &defect,
                    );
                }
            }
        }

        // unitality of the even part is an observed property, not an axiom
        if self.is_finite() {
            if let Some(u) = self.find_even_unit()? {
                report.notes.insert("even-unit".into(), u.to_string());
            }
        }
        Ok(report)
    }

    /// Check super-anticommutativity and the graded Jacobi identity on all
    /// basis pairs/triples inside `window`.
    pub fn check_superalgebra(&self, window: Option<Window>) -> Result<Report> {
        if self.kind != AlgebraKind::Superalgebra {
            return Err(AlgError::Precondition(format!(
                "{} is not declared as a superalgebra",
                self.name
            )));
        }
        let mut report = Report::new(&self.name);
        if let Some(w) = window.or(self.default_window()) {
            if !self.is_finite() {
                report = report.with_window(w.to_string());
            }
        }
        let all = self.ordered_basis(window);
        let bv = |l: &BasisLabel| GradedVector::basis(l.clone());
        let prod = |a: &GradedVector, b: &GradedVector| self.product(a, b);
        let p = |l: &BasisLabel| self.label_parity(l);

        for x in &all {
            for y in &all {
                let sign = int(p(x)?.koszul(p(y)?) as i64);
                let lhs = prod(&bv(x), &bv(y))?;
                let rhs = prod(&bv(y), &bv(x))?.scale(&-sign);
                report.record(ID_SUPER_SKEW, vec![x.to_string(), y.to_string()], &(&lhs - &rhs));
            }
        }

        // [x, [y, z]] = [[x, y], z] + (−1)^{p(x)p(y)} [y, [x, z]]
        for x in &all {
            for y in &all {
                for z in &all {
                    let sign = int(p(x)?.koszul(p(y)?) as i64);
                    let lhs = prod(&bv(x), &prod(&bv(y), &bv(z))?)?;
                    let rhs = &prod(&prod(&bv(x), &bv(y))?, &bv(z))?
                        + &prod(&bv(y), &prod(&bv(x), &bv(z))?)?.scale(&sign);
                    report.record(
                        ID_SUPER_JACOBI,
                        vec![x.to_string(), y.to_string(), z.to_string()],
                        &(&lhs - &rhs),
                    );
                }
            }
        }
        Ok(report)
    }

    /// A two-sided unit of the even subalgebra acting with weight ½ on the
    /// odd part, when one exists.
    fn find_even_unit(&self) -> Result<Option<GradedVector>> {
        let evens = self.even_basis(None);
        let odds = self.odd_basis(None);
        if evens.is_empty() {
            return Ok(None);
        }
        // solve u · e_j = e_j for all j, u · y = ½ y for odd y
        let n = evens.len();
        let targets: Vec<BasisLabel> = evens.iter().chain(odds.iter()).cloned().collect();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for t in &targets {
            let pt = self.label_parity(t)?;
            let want = match pt {
                Parity::Even => GradedVector::basis(t.clone()),
                Parity::Odd => GradedVector::term(t.clone(), rat(1, 2)),
            };
            for out in &targets {
                let mut row = Vec::with_capacity(n);
                for e in &evens {
                    row.push(self.product_labels(e, t)?.coeff(out));
                }
                rows.push(row);
                rhs.push(want.coeff(out));
            }
        }
        let m = crate::linalg::RatMatrix::from_rows(rows);
        Ok(m.solve(&rhs)?.map(|c| GradedVector::from_coordinates(&evens, &c)))
    }
}

fn family_label_parity(rule: FamilyRule, l: &BasisLabel) -> Option<Parity> {
    let idx = l.index?;
    match rule {
        FamilyRule::Ak1 { .. } => match l.family.as_str() {
            "e" if idx.is_integer() => Some(Parity::Even),
            "l" if !idx.is_integer() => Some(Parity::Odd),
            _ => None,
        },
        FamilyRule::K1 => match l.family.as_str() {
            "x" if idx.is_integer() => Some(Parity::Even),
            "xi" if !idx.is_integer() => Some(Parity::Odd),
            _ => None,
        },
    }
}

fn family_product(rule: FamilyRule, l: &BasisLabel, r: &BasisLabel) -> Option<GradedVector> {
    let pl = family_label_parity(rule, l)?;
    let pr = family_label_parity(rule, r)?;
    let i = l.index?;
    let j = r.index?;
    let s = i + j;
    Some(match rule {
        FamilyRule::Ak1 { flip_odd_odd } => match (pl, pr) {
            (Parity::Even, Parity::Even) => GradedVector::basis(BasisLabel::indexed("e", s)),
            (Parity::Even, Parity::Odd) | (Parity::Odd, Parity::Even) => {
                GradedVector::term(BasisLabel::indexed("l", s), rat(1, 2))
            }
            (Parity::Odd, Parity::Odd) => {
                // ½(i−j), or ½(j−i) for the flipped real form
                let diff = if flip_odd_odd { j - i } else { i - j };
                GradedVector::term(BasisLabel::indexed("e", s), rat(diff.twice(), 4))
            }
        },
        FamilyRule::K1 => match (pl, pr) {
            (Parity::Even, Parity::Even) => {
                GradedVector::term(BasisLabel::indexed("x", s), rat((j - i).twice(), 2))
            }
            (Parity::Even, Parity::Odd) => {
                // (j − i/2) ξ_{i+j}
                let c = j.to_rat() - i.to_rat() * rat(1, 2);
                GradedVector::term(BasisLabel::indexed("xi", s), c)
            }
            (Parity::Odd, Parity::Even) => {
                // super-anticommutativity companion of the line above
                let c = -(i.to_rat() - j.to_rat() * rat(1, 2));
                GradedVector::term(BasisLabel::indexed("xi", s), c)
            }
            (Parity::Odd, Parity::Odd) => GradedVector::term(BasisLabel::indexed("x", s), int(2)),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn lab(s: &str) -> BasisLabel {
        BasisLabel::parse(s).unwrap()
    }

    #[test]
    fn parity_of_vectors() {
        let asl2 = catalog::build_asl2();
        let eps = GradedVector::basis(lab("eps"));
        let a = GradedVector::basis(lab("a"));
        let b = GradedVector::basis(lab("b"));
        assert_eq!(asl2.parity_of(&eps).unwrap(), Some(Parity::Even));
        assert_eq!(asl2.parity_of(&(&a + &b)).unwrap(), Some(Parity::Odd));
        assert_eq!(asl2.parity_of(&(&eps + &a)).unwrap(), None);
        assert_eq!(asl2.parity_of(&GradedVector::zero()).unwrap(), Some(Parity::Even));
    }

    #[test]
    fn family_products_match_defining_relations() {
        let ak1 = catalog::build_ak1(Window::symmetric(4));
        let e = |n: i64| GradedVector::basis(BasisLabel::int_indexed("e", n));
        let l = |t: i64| GradedVector::basis(BasisLabel::indexed("l", HalfInt::from_twice(t)));

        assert_eq!(ak1.product(&e(2), &e(3)).unwrap(), e(5));
        // products may leave the window; evaluation is still exact
        assert_eq!(ak1.product(&e(4), &e(4)).unwrap(), e(8));
        assert_eq!(
            ak1.product(&e(1), &l(1)).unwrap(),
            l(3).scale(&rat(1, 2))
        );
        // ½(i−j) with i=½, j=3/2
        assert_eq!(
            ak1.product(&l(1), &l(3)).unwrap(),
            e(2).scale(&rat(-1, 2))
        );

        let k1 = catalog::build_k1(Window::symmetric(4));
        let xi = |t: i64| GradedVector::basis(BasisLabel::indexed("xi", HalfInt::from_twice(t)));
        let x = |n: i64| GradedVector::basis(BasisLabel::int_indexed("x", n));
        assert_eq!(k1.product(&xi(1), &xi(1)).unwrap(), x(1).scale(&int(2)));
        assert_eq!(k1.product(&x(0), &xi(1)).unwrap(), xi(1).scale(&rat(1, 2)));
    }

    #[test]
    fn unknown_labels_are_errors() {
        let asl2 = catalog::build_asl2();
        let bad = GradedVector::basis(lab("zz"));
        assert!(asl2.product(&bad, &bad).is_err());

        let ak1 = catalog::build_ak1(Window::symmetric(2));
        // an integer index on the odd family is malformed
        let bad = GradedVector::basis(lab("l:1"));
        assert!(ak1.product(&bad, &bad).is_err());
    }

    #[test]
    fn finite_builder_rejects_bad_tables() {
        // nonzero odd-odd diagonal contradicts antisymmetry
        let r = AlgebraTable::finite(
            "bad",
            AlgebraKind::Antialgebra,
            vec![lab("u")],
            vec![lab("y")],
            vec![(lab("y"), lab("y"), GradedVector::basis(lab("u")))],
        );
        assert!(r.is_err());

        // parity-violating product
        let r = AlgebraTable::finite(
            "bad2",
            AlgebraKind::Antialgebra,
            vec![lab("u")],
            vec![lab("y")],
            vec![(lab("u"), lab("y"), GradedVector::basis(lab("u")))],
        );
        assert!(r.is_err());
    }

    #[test]
    fn window_enumeration() {
        let w = Window::symmetric(2);
        assert_eq!(w.integers().len(), 5);
        assert_eq!(w.half_integers().len(), 4);
        let w = Window { min: HalfInt::from_twice(-3), max: HalfInt::from_twice(2) };
        assert_eq!(w.integers(), vec![HalfInt::from_int(-1), HalfInt::from_int(0), HalfInt::from_int(1)]);
        assert_eq!(w.half_integers().len(), 3);
    }

    #[test]
    fn mutated_asl2_fails_half_action_with_expected_defect() {
        // replace the weight-½ action on `a` by weight 1
        let asl2 = catalog::build_asl2();
        let mut products: Vec<(BasisLabel, BasisLabel, GradedVector)> = asl2
            .stored_products()
            .unwrap()
            .iter()
            .map(|((l, r), v)| (l.clone(), r.clone(), v.clone()))
            .collect();
        for (l, r, v) in products.iter_mut() {
            if (l.family == "eps" && r.family == "a") || (l.family == "a" && r.family == "eps") {
                *v = GradedVector::basis(lab("a"));
            }
        }
        let mutated = AlgebraTable::finite(
            "asl2-mutated",
            AlgebraKind::Antialgebra,
            asl2.even_basis(None),
            asl2.odd_basis(None),
            products,
        )
        .unwrap();
        let report = mutated.check_antialgebra(None).unwrap();
        assert!(!report.passed());
        let hit = report
            .violations
            .iter()
            .find(|v| v.identity == ID_HALF_ACTION && v.witness == vec!["eps", "eps", "a"])
            .expect("half-action violation at (eps, eps, a)");
        // defect = ]eps,]eps,a[[ − ½]]eps,eps[,a[ = a − ½a = ½a
        assert_eq!(hit.defect.get("a").map(String::as_str), Some("1/2"));
    }

    #[test]
    fn odd_rescaling_preserves_axioms() {
        let asl2 = catalog::build_asl2();
        for lam in [int(2), rat(-1, 3), rat(7, 2)] {
            let scaled = asl2.scale_odd_basis(&lam).unwrap();
            assert!(scaled.check_antialgebra(None).unwrap().passed());
        }
    }
}
