//! Builders for the named algebras, module structures over them, the
//! semidirect product, and the on-disk `.alg.json` / `.mod.json` formats.

use crate::algebra::{AlgebraKind, AlgebraTable, FamilyRule, Window};
use crate::error::{AlgError, Result};
use crate::graded::{BasisLabel, GradedVector, HalfInt, Parity};
use crate::rational::{fmt_rat, int, parse_rat, rat, Rat};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

fn lab(s: &str) -> BasisLabel {
    BasisLabel::parse(s).expect("static label")
}

/// The simple 1|2-dimensional antialgebra on {ε; a, b}.
///
/// Defining products: ]ε,ε[ = ε, ]ε,a[ = ½a, ]ε,b[ = ½b, ]a,b[ = ½ε; the
/// remaining orientations follow from graded commutativity.
pub fn build_asl2() -> AlgebraTable {
    let eps = lab("eps");
    let a = lab("a");
    let b = lab("b");
    AlgebraTable::finite(
        "asl2",
        AlgebraKind::Antialgebra,
        vec![eps.clone()],
        vec![a.clone(), b.clone()],
        vec![
            (eps.clone(), eps.clone(), GradedVector::basis(eps.clone())),
            (eps.clone(), a.clone(), GradedVector::term(a.clone(), rat(1, 2))),
            (eps.clone(), b.clone(), GradedVector::term(b.clone(), rat(1, 2))),
            (a.clone(), b.clone(), GradedVector::term(eps.clone(), rat(1, 2))),
        ],
    )
    .expect("asl2 table is well formed")
}

/// The Heisenberg antialgebra ah₁ (κ = 0) and its deformations: basis
/// {α; a, b} with ]α,a[ = κ·b and ]a,b[ = ½α; all other defining products
/// vanish.
pub fn build_ah1(kappa: &Rat) -> AlgebraTable {
    let alpha = lab("alpha");
    let a = lab("a");
    let b = lab("b");
    AlgebraTable::finite(
        &format!("ah1({})", fmt_rat(kappa)),
        AlgebraKind::Antialgebra,
        vec![alpha.clone()],
        vec![a.clone(), b.clone()],
        vec![
            (alpha.clone(), a.clone(), GradedVector::term(b.clone(), kappa.clone())),
            (a.clone(), b.clone(), GradedVector::term(alpha.clone(), rat(1, 2))),
        ],
    )
    .expect("ah1 table is well formed")
}

/// The conformal Lie antialgebra: basis e_n (n ∈ ℤ, even) and ℓ_i
/// (i ∈ ℤ+½, odd) with ]e_n,e_m[ = e_{n+m}, ]e_n,ℓ_i[ = ½ℓ_{n+i},
/// ]ℓ_i,ℓ_j[ = ½(i−j)e_{i+j}. The window only bounds which witnesses the
/// checkers enumerate; the product rule is total.
pub fn build_ak1(window: Window) -> AlgebraTable {
    AlgebraTable::family("ak1", AlgebraKind::Antialgebra, FamilyRule::Ak1 { flip_odd_odd: false }, window)
}

/// The real form of the conformal antialgebra with the opposite sign on the
/// odd-odd constant, ]ℓ_i,ℓ_j[ = ½(j−i)e_{i+j}. Not isomorphic to [`build_ak1`]
/// over ℚ; it is the form acting on the polynomial superspace model.
pub fn build_ak1_flipped(window: Window) -> AlgebraTable {
    AlgebraTable::family(
        "ak1-flipped",
        AlgebraKind::Antialgebra,
        FamilyRule::Ak1 { flip_odd_odd: true },
        window,
    )
}

/// The Neveu-Schwarz conformal Lie superalgebra: x_n (even), ξ_i (odd) with
/// [x_i,x_j] = (j−i)x_{i+j}, [x_i,ξ_j] = (j−i/2)ξ_{i+j}, [ξ_i,ξ_j] = 2x_{i+j}.
pub fn build_k1(window: Window) -> AlgebraTable {
    AlgebraTable::family("k1", AlgebraKind::Superalgebra, FamilyRule::K1, window)
}

/// osp(1|2) as the finite subtable of the conformal superalgebra on
/// {x_{−1}, x_0, x_1; ξ_{−½}, ξ_{½}}.
pub fn build_osp12() -> AlgebraTable {
    let k1 = build_k1(Window::symmetric(1));
    let evens: Vec<BasisLabel> = (-1..=1).map(|n| BasisLabel::int_indexed("x", n)).collect();
    let odds: Vec<BasisLabel> = [-1i64, 1]
        .iter()
        .map(|&t| BasisLabel::indexed("xi", HalfInt::from_twice(t)))
        .collect();
    let all: Vec<BasisLabel> = evens.iter().chain(odds.iter()).cloned().collect();
    let mut products = Vec::new();
    for l in &all {
        for r in &all {
            let p = k1.product_labels(l, r).expect("k1 rule is total");
            // closure under the restriction is part of what the tests verify
            products.push((l.clone(), r.clone(), p));
        }
    }
    AlgebraTable::finite("osp12", AlgebraKind::Superalgebra, evens, odds, products)
        .expect("osp(1|2) table is closed and well formed")
}

/// A module structure over an antialgebra: a graded space B together with a
/// parity-preserving action ρ. By definition this is the data making the
/// semidirect sum 𝔞 ⊕ B into an antialgebra with B abelian, which is exactly
/// what `check_module` verifies.
#[derive(Clone, Debug)]
pub struct AntiModule {
    pub name: String,
    pub algebra: AlgebraTable,
    pub even_basis: Vec<BasisLabel>,
    pub odd_basis: Vec<BasisLabel>,
    /// action of algebra basis labels on module basis labels
    rho: BTreeMap<(BasisLabel, BasisLabel), GradedVector>,
}

impl AntiModule {
    pub fn new(
        name: &str,
        algebra: AlgebraTable,
        even_basis: Vec<BasisLabel>,
        odd_basis: Vec<BasisLabel>,
        rho: BTreeMap<(BasisLabel, BasisLabel), GradedVector>,
    ) -> Result<AntiModule> {
        let m = AntiModule { name: name.to_string(), algebra, even_basis, odd_basis, rho };
        // ρ must preserve parity: p(ρ_u b) = p(u) + p(b)
        for ((u, b), v) in &m.rho {
            let pu = m.algebra.label_parity(u)?;
            let pb = m.label_parity(b)?;
            for (out, _) in v.terms() {
                if m.label_parity(out)? != pu + pb {
                    return Err(AlgError::InvalidTable(format!(
                        "module action rho_{u}({b}) has a term `{out}` of wrong parity"
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn label_parity(&self, l: &BasisLabel) -> Result<Parity> {
        if self.even_basis.contains(l) {
            Ok(Parity::Even)
        } else if self.odd_basis.contains(l) {
            Ok(Parity::Odd)
        } else {
            Err(AlgError::UnknownLabel(format!("{l} in module {}", self.name)))
        }
    }

    pub fn basis(&self) -> Vec<BasisLabel> {
        self.even_basis.iter().chain(self.odd_basis.iter()).cloned().collect()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.even_basis.len(), self.odd_basis.len())
    }

    /// ρ on basis labels.
    pub fn rho_labels(&self, u: &BasisLabel, b: &BasisLabel) -> Result<GradedVector> {
        self.algebra.label_parity(u)?;
        self.label_parity(b)?;
        Ok(self.rho.get(&(u.clone(), b.clone())).cloned().unwrap_or_default())
    }

    /// Bilinear extension of ρ to vectors.
    pub fn rho(&self, u: &GradedVector, b: &GradedVector) -> Result<GradedVector> {
        let mut out = GradedVector::zero();
        for (lu, cu) in u.terms() {
            for (lb, cb) in b.terms() {
                out.add_scaled(&self.rho_labels(lu, lb)?, &(cu * cb));
            }
        }
        Ok(out)
    }

    /// The trivial module of the given graded dimension (zero action).
    pub fn trivial(algebra: &AlgebraTable, even_dim: usize, odd_dim: usize) -> AntiModule {
        let even_basis = (0..even_dim).map(|i| BasisLabel::int_indexed("t", i as i64)).collect();
        let odd_basis =
            (0..odd_dim).map(|i| BasisLabel::int_indexed("s", i as i64)).collect();
        AntiModule {
            name: "trivial".into(),
            algebra: algebra.clone(),
            even_basis,
            odd_basis,
            rho: BTreeMap::new(),
        }
    }

    /// The adjoint module: B is a copy of the algebra itself and ρ = ad.
    pub fn adjoint(algebra: &AlgebraTable) -> Result<AntiModule> {
        let evens = algebra.even_basis(None);
        let odds = algebra.odd_basis(None);
        let tag =
            |l: &BasisLabel| BasisLabel { family: format!("ad.{}", l.family), index: l.index };
        let untag = |l: &BasisLabel| -> GradedVector {
            GradedVector::basis(l.clone())
        };
        let _ = untag;
        let mut rho = BTreeMap::new();
        let all: Vec<BasisLabel> = evens.iter().chain(odds.iter()).cloned().collect();
        for u in &all {
            for v in &all {
                let prod = algebra.product_labels(u, v)?;
                let mapped = GradedVector::from_terms(
                    prod.terms().map(|(l, c)| (tag(l), c.clone())),
                );
                if !mapped.is_zero() {
                    rho.insert((u.clone(), tag(v)), mapped);
                }
            }
        }
        AntiModule::new(
            "adjoint",
            algebra.clone(),
            evens.iter().map(&tag).collect(),
            odds.iter().map(&tag).collect(),
            rho,
        )
    }

    /// The coadjoint module on the dual space.
    ///
    /// The dual action here is the graded pullback ⟨ad*_u φ, c⟩ =
    /// (−1)^{p(u)p(φ)} ⟨φ, ]u,c[⟩ (no classical minus sign: the bracket is
    /// supercommutative, so the dual of a commutative-type action is again an
    /// action), twisted by the extra parity sign: ρ_u = (−1)^{p(u)} ad*_u.
    /// Dropping every sign (a plain transpose) fails the module axioms; see
    /// the tests.
    pub fn coadjoint(algebra: &AlgebraTable) -> Result<AntiModule> {
        Self::coadjoint_with_signs(algebra, true)
    }

    pub fn dual_label(&self, l: &BasisLabel) -> BasisLabel {
        BasisLabel { family: format!("{}*", l.family), index: l.index }
    }

    /// The dual module B*, with the same graded-pullback signs as the
    /// coadjoint: ⟨ρ*_u φ, v⟩ = (−1)^{p(u)(1+p(φ))} ⟨φ, ρ_u v⟩. Dualizing
    /// twice gives back the original action (the signs square away), and the
    /// dual of a module is again a module, which the tests verify through
    /// the semidirect checker.
    pub fn dual(&self) -> Result<AntiModule> {
        let all = self.basis();
        let alg_basis = self.algebra.ordered_basis(None);
        let mut rho: BTreeMap<(BasisLabel, BasisLabel), GradedVector> = BTreeMap::new();
        for u in &alg_basis {
            let pu = self.algebra.label_parity(u)?;
            for w in &all {
                let pw = self.label_parity(w)?; // p(w*) = p(w)
                let sign = if pu == Parity::Odd && pw == Parity::Even { -int(1) } else { int(1) };
                let mut image = GradedVector::zero();
                for v in &all {
                    let c = self.rho_labels(u, v)?.coeff(w);
                    if !c.is_zero() {
                        image.add_term(&self.dual_label(v), &(c * &sign));
                    }
                }
                if !image.is_zero() {
                    rho.insert((u.clone(), self.dual_label(w)), image);
                }
            }
        }
        AntiModule::new(
            &format!("{}*", self.name),
            self.algebra.clone(),
            self.even_basis.iter().map(|l| self.dual_label(l)).collect(),
            self.odd_basis.iter().map(|l| self.dual_label(l)).collect(),
            rho,
        )
    }

    /// Coadjoint candidate with or without the sign twists; `signed = false`
    /// is the plain transpose of the multiplication operators, kept as a
    /// deliberately failing reference point.
    pub fn coadjoint_with_signs(algebra: &AlgebraTable, signed: bool) -> Result<AntiModule> {
        let evens = algebra.even_basis(None);
        let odds = algebra.odd_basis(None);
        let all: Vec<BasisLabel> = evens.iter().chain(odds.iter()).cloned().collect();
        let dual = |l: &BasisLabel| BasisLabel { family: format!("{}*", l.family), index: l.index };

        let mut rho: BTreeMap<(BasisLabel, BasisLabel), GradedVector> = BTreeMap::new();
        for u in &all {
            let pu = algebra.label_parity(u)?;
            for w in &all {
                // ρ_u(w*) = Σ_c sign(u, w*) ⟨w*, ]u,c[⟩ c*
                let pw = algebra.label_parity(w)?; // p(w*) = p(w)
                let sign = if signed {
                    // (−1)^{p(u)} (−1)^{p(u)p(φ)} = (−1)^{p(u)(1 + p(φ))}
                    if pu == Parity::Odd && pw == Parity::Even {
                        -int(1)
                    } else {
                        int(1)
                    }
                } else {
                    int(1)
                };
                let mut image = GradedVector::zero();
                for c in &all {
                    let coeff = algebra.product_labels(u, c)?.coeff(w);
                    if !coeff.is_zero() {
                        image.add_term(&dual(c), &(coeff * &sign));
                    }
                }
                if !image.is_zero() {
                    rho.insert((u.clone(), dual(w)), image);
                }
            }
        }
        AntiModule::new(
            if signed { "coadjoint" } else { "coadjoint-unsigned" },
            algebra.clone(),
            evens.iter().map(&dual).collect(),
            odds.iter().map(&dual).collect(),
            rho,
        )
    }
}

/// The semidirect product 𝔞 ⋉ B: products on 𝔞 ⊕ B given by
/// ](a,b),(a′,b′)[ = (]a,a′[, ρ_a b′ + (−1)^{p(a′)p(b)} ρ_{a′} b), with B
/// abelian. The sign exponent uses the parity function.
pub fn semidirect(algebra: &AlgebraTable, module: &AntiModule) -> Result<AlgebraTable> {
    if !algebra.is_finite() {
        return Err(AlgError::InvalidTable("semidirect products need a finite algebra".into()));
    }
    let a_evens = algebra.even_basis(None);
    let a_odds = algebra.odd_basis(None);
    for l in module.basis() {
        if algebra.contains_label(&l) {
            return Err(AlgError::InvalidTable(format!(
                "module label `{l}` collides with an algebra label"
            )));
        }
    }

    let mut products = Vec::new();
    let a_all: Vec<BasisLabel> = a_evens.iter().chain(a_odds.iter()).cloned().collect();
    // algebra × algebra
    for l in &a_all {
        for r in &a_all {
            products.push((l.clone(), r.clone(), algebra.product_labels(l, r)?));
        }
    }
    // algebra × module: ](a,0),(0,b)[ = ρ_a b
    for u in &a_all {
        for b in module.basis() {
            products.push((u.clone(), b.clone(), module.rho_labels(u, &b)?));
            // companion orientation: ](0,b),(a,0)[ = (−1)^{p(a)p(b)} ρ_a b
            let s = algebra.label_parity(u)?.koszul(module.label_parity(&b)?);
            products.push((b.clone(), u.clone(), module.rho_labels(u, &b)?.scale(&int(s as i64))));
        }
    }
    // module × module: abelian

    let mut evens = a_evens;
    evens.extend(module.even_basis.clone());
    let mut odds = a_odds;
    odds.extend(module.odd_basis.clone());
    AlgebraTable::finite(
        &format!("{}⋉{}", algebra.name, module.name),
        AlgebraKind::Antialgebra,
        evens,
        odds,
        products,
    )
}

/// The scalar c making {e_0; ℓ_i, c·ℓ_{−i}} a copy of asl2 inside the
/// conformal antialgebra, together with the embedding images (ε, a, b).
pub fn asl2_embedding_in_ak1(i: HalfInt) -> (GradedVector, GradedVector, GradedVector) {
    assert!(!i.is_integer(), "the odd generators carry half-integer indices");
    // ]ℓ_i, c ℓ_{−i}[ = c·i·e_0 must equal ½ e_0
    let c = rat(1, 2) / i.to_rat();
    (
        GradedVector::basis(BasisLabel::int_indexed("e", 0)),
        GradedVector::basis(BasisLabel::indexed("l", i)),
        GradedVector::term(BasisLabel::indexed("l", -i), c),
    )
}

// ---------------------------------------------------------------------------
// on-disk formats
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
pub struct CoeffTerm {
    pub coeff: String,
    pub basis: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub result: Vec<CoeffTerm>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FamilySpec {
    pub rule_name: String,
    pub window: WindowSpec,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WindowSpec {
    pub min: String,
    pub max: String,
}

/// The `.alg.json` file format: either an explicit finite table (one
/// orientation of each product suffices) or one of the built-in family rules
/// with a window.
#[derive(Debug, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub name: String,
    pub kind: AlgebraKind,
    #[serde(default)]
    pub even_basis: Vec<String>,
    #[serde(default)]
    pub odd_basis: Vec<String>,
    #[serde(default)]
    pub products: Vec<ProductEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySpec>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RhoEntry {
    pub algebra_label: String,
    pub module_label: String,
    pub result: Vec<CoeffTerm>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ModuleBasisEntry {
    pub label: String,
    pub parity: Parity,
}

/// The `.mod.json` file format.
#[derive(Debug, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub name: String,
    pub algebra: String,
    pub module_basis: Vec<ModuleBasisEntry>,
    #[serde(default)]
    pub rho: Vec<RhoEntry>,
}

fn parse_vector(terms: &[CoeffTerm], path: &str) -> Result<GradedVector> {
    let mut v = GradedVector::zero();
    for t in terms {
        let c = parse_rat(&t.coeff).map_err(|_| AlgError::InvalidSpec {
            path: path.to_string(),
            message: format!("bad coefficient `{}`", t.coeff),
        })?;
        let l = BasisLabel::parse(&t.basis).map_err(|_| AlgError::InvalidSpec {
            path: path.to_string(),
            message: format!("bad basis label `{}`", t.basis),
        })?;
        v.add_term(&l, &c);
    }
    Ok(v)
}

fn vector_to_terms(v: &GradedVector) -> Vec<CoeffTerm> {
    v.terms()
        .map(|(l, c)| CoeffTerm { coeff: fmt_rat(c), basis: l.to_string() })
        .collect()
}

pub fn algebra_from_spec(spec: &AlgebraSpec, path: &str) -> Result<AlgebraTable> {
    if let Some(f) = &spec.family {
        let min = HalfInt::parse(&f.window.min).map_err(|_| AlgError::InvalidSpec {
            path: path.into(),
            message: format!("bad window bound `{}`", f.window.min),
        })?;
        let max = HalfInt::parse(&f.window.max).map_err(|_| AlgError::InvalidSpec {
            path: path.into(),
            message: format!("bad window bound `{}`", f.window.max),
        })?;
        let w = Window { min, max };
        return match f.rule_name.as_str() {
            "AK1" => Ok(build_ak1(w)),
            "K1" => Ok(build_k1(w)),
            other => Err(AlgError::InvalidSpec {
                path: path.into(),
                message: format!("unknown family rule `{other}`"),
            }),
        };
    }
    let parse_labels = |ls: &[String]| -> Result<Vec<BasisLabel>> {
        ls.iter()
            .map(|s| {
                BasisLabel::parse(s).map_err(|_| AlgError::InvalidSpec {
                    path: path.into(),
                    message: format!("bad basis label `{s}`"),
                })
            })
            .collect()
    };
    let evens = parse_labels(&spec.even_basis)?;
    let odds = parse_labels(&spec.odd_basis)?;
    let declared: Vec<BasisLabel> = evens.iter().chain(odds.iter()).cloned().collect();
    let mut products = Vec::new();
    for p in &spec.products {
        let l = BasisLabel::parse(&p.left).map_err(|_| AlgError::InvalidSpec {
            path: path.into(),
            message: format!("bad label `{}`", p.left),
        })?;
        let r = BasisLabel::parse(&p.right).map_err(|_| AlgError::InvalidSpec {
            path: path.into(),
            message: format!("bad label `{}`", p.right),
        })?;
        let v = parse_vector(&p.result, path)?;
        for used in [&l, &r].into_iter().chain(v.labels()) {
            if !declared.contains(used) {
                return Err(AlgError::InvalidSpec {
                    path: path.into(),
                    message: format!("undeclared basis label `{used}` in products"),
                });
            }
        }
        products.push((l, r, v));
    }
    AlgebraTable::finite(&spec.name, spec.kind, evens, odds, products).map_err(|e| {
        AlgError::InvalidSpec { path: path.into(), message: e.to_string() }
    })
}

pub fn algebra_to_spec(a: &AlgebraTable) -> AlgebraSpec {
    if let Some(rule) = a.family_rule() {
        let w = a.default_window().expect("family algebras carry a window");
        let rule_name = match rule {
            FamilyRule::Ak1 { .. } => "AK1",
            FamilyRule::K1 => "K1",
        };
        return AlgebraSpec {
            name: a.name.clone(),
            kind: a.kind,
            even_basis: vec![],
            odd_basis: vec![],
            products: vec![],
            family: Some(FamilySpec {
                rule_name: rule_name.into(),
                window: WindowSpec { min: w.min.to_string(), max: w.max.to_string() },
            }),
        };
    }
    let evens = a.even_basis(None);
    let odds = a.odd_basis(None);
    let ordered = a.ordered_basis(None);
    let pos = |l: &BasisLabel| ordered.iter().position(|x| x == l).unwrap();
    // store only one orientation; the loader regenerates companions
    let mut products = Vec::new();
    for ((l, r), v) in a.stored_products().expect("finite table") {
        if pos(l) <= pos(r) {
            products.push(ProductEntry {
                left: l.to_string(),
                right: r.to_string(),
                result: vector_to_terms(v),
            });
        }
    }
    AlgebraSpec {
        name: a.name.clone(),
        kind: a.kind,
        even_basis: evens.iter().map(|l| l.to_string()).collect(),
        odd_basis: odds.iter().map(|l| l.to_string()).collect(),
        products,
        family: None,
    }
}

pub fn load_spec(path: &Path) -> Result<AlgebraTable> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AlgError::Io { path: path.display().to_string(), source: e })?;
    let spec: AlgebraSpec = serde_json::from_str(&text)?;
    algebra_from_spec(&spec, &path.display().to_string())
}

pub fn save_spec(a: &AlgebraTable, path: &Path) -> Result<()> {
    let spec = algebra_to_spec(a);
    let text = serde_json::to_string_pretty(&spec)?;
    std::fs::write(path, text)
        .map_err(|e| AlgError::Io { path: path.display().to_string(), source: e })
}

/// Load a module spec; the algebra field must name a built-in algebra.
pub fn load_module_spec(path: &Path) -> Result<AntiModule> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AlgError::Io { path: path.display().to_string(), source: e })?;
    let spec: ModuleSpec = serde_json::from_str(&text)?;
    let algebra = builtin_algebra(&spec.algebra, None).ok_or_else(|| AlgError::InvalidSpec {
        path: path.display().to_string(),
        message: format!("unknown algebra `{}`", spec.algebra),
    })?;
    let mut evens = Vec::new();
    let mut odds = Vec::new();
    for e in &spec.module_basis {
        let l = BasisLabel::parse(&e.label).map_err(|_| AlgError::InvalidSpec {
            path: path.display().to_string(),
            message: format!("bad module label `{}`", e.label),
        })?;
        match e.parity {
            Parity::Even => evens.push(l),
            Parity::Odd => odds.push(l),
        }
    }
    let mut rho = BTreeMap::new();
    for r in &spec.rho {
        let u = BasisLabel::parse(&r.algebra_label).map_err(|_| AlgError::InvalidSpec {
            path: path.display().to_string(),
            message: format!("bad label `{}`", r.algebra_label),
        })?;
        let b = BasisLabel::parse(&r.module_label).map_err(|_| AlgError::InvalidSpec {
            path: path.display().to_string(),
            message: format!("bad label `{}`", r.module_label),
        })?;
        let v = parse_vector(&r.result, &path.display().to_string())?;
        rho.insert((u, b), v);
    }
    AntiModule::new(&spec.name, algebra, evens, odds, rho)
}

/// Resolve the built-in algebra names used by the command line:
/// `asl2`, `ah1:<kappa>`, `ak1:<window>`, `k1:<window>`, `osp12`.
pub fn builtin_algebra(name: &str, window: Option<i64>) -> Option<AlgebraTable> {
    let w = Window::symmetric(window.unwrap_or(4));
    match name {
        "asl2" => Some(build_asl2()),
        "osp12" => Some(build_osp12()),
        "ak1" => Some(build_ak1(w)),
        "k1" => Some(build_k1(w)),
        "ah1" => Some(build_ah1(&int(0))),
        _ => {
            let (head, arg) = name.split_once(':')?;
            match head {
                "ah1" => Some(build_ah1(&parse_rat(arg).ok()?)),
                "ak1" => Some(build_ak1(Window::symmetric(arg.parse().ok()?))),
                "k1" => Some(build_k1(Window::symmetric(arg.parse().ok()?))),
                _ => None,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn asl2_products() {
        let asl2 = build_asl2();
        let eps = GradedVector::basis(lab("eps"));
        let a = GradedVector::basis(lab("a"));
        let b = GradedVector::basis(lab("b"));
        assert_eq!(asl2.product(&eps, &eps).unwrap(), eps);
        // companion orientation of an odd-odd product is antisymmetric
        assert_eq!(asl2.product(&b, &a).unwrap(), eps.scale(&rat(-1, 2)));
        assert_eq!(asl2.product(&a, &eps).unwrap(), a.scale(&rat(1, 2)));
        assert!(asl2.product(&a, &a).unwrap().is_zero());
        assert!(asl2.check_antialgebra(None).unwrap().passed());
    }

    #[test]
    fn asl2_reports_even_unit() {
        let report = build_asl2().check_antialgebra(None).unwrap();
        assert_eq!(report.notes.get("even-unit").map(String::as_str), Some("1·eps"));
    }

    #[test]
    fn ah1_family_products_and_axioms() {
        let heis = build_ah1(&int(0));
        let alpha = GradedVector::basis(lab("alpha"));
        let a = GradedVector::basis(lab("a"));
        assert!(heis.product(&alpha, &a).unwrap().is_zero());

        let deformed = build_ah1(&int(1));
        assert_eq!(deformed.product(&alpha, &a).unwrap(), GradedVector::basis(lab("b")));

        for kappa in [int(0), int(1), int(-2), rat(3, 7)] {
            assert!(build_ah1(&kappa).check_antialgebra(None).unwrap().passed());
        }
    }

    #[test]
    fn osp12_closes_and_satisfies_super_axioms() {
        let osp = build_osp12();
        assert_eq!(osp.dims(), Some((3, 2)));
        let x = |n: i64| GradedVector::basis(BasisLabel::int_indexed("x", n));
        let xi = |t: i64| GradedVector::basis(BasisLabel::indexed("xi", HalfInt::from_twice(t)));
        assert_eq!(osp.product(&x(-1), &x(1)).unwrap(), x(0).scale(&int(2)));
        assert_eq!(osp.product(&x(0), &xi(1)).unwrap(), xi(1).scale(&rat(1, 2)));
        assert!(osp.check_superalgebra(None).unwrap().passed());
    }

    #[test]
    fn k1_window_checks_pass() {
        let k1 = build_k1(Window::symmetric(4));
        assert!(k1.check_superalgebra(None).unwrap().passed());
    }

    #[test]
    fn mutated_k1_weight_fails_super_jacobi() {
        // replace the weight of the even action on odd generators:
        // [x_i, ξ_j] = (j − i) ξ_{i+j} instead of (j − i/2). The defect shows
        // up on mixed triples such as (x_1, ξ_{1/2}, ξ_{−1/2}).
        let w = Window::symmetric(2);
        let k1 = build_k1(w);
        let basis = k1.ordered_basis(None);
        let mut products = Vec::new();
        for l in &basis {
            for r in &basis {
                let pl = k1.label_parity(l).unwrap();
                let pr = k1.label_parity(r).unwrap();
                let v = if pl != pr {
                    let (xi_lab, x_idx, xi_idx, sign) = if pl == Parity::Even {
                        (r, l.index.unwrap(), r.index.unwrap(), int(1))
                    } else {
                        (l, r.index.unwrap(), l.index.unwrap(), -int(1))
                    };
                    let c = (xi_idx.to_rat() - x_idx.to_rat()) * sign;
                    GradedVector::term(
                        BasisLabel::indexed(&xi_lab.family, x_idx + xi_idx),
                        c,
                    )
                } else {
                    k1.product_labels(l, r).unwrap()
                };
                products.push((l.clone(), r.clone(), v));
            }
        }
        // keep only in-window outputs to stay closed; drop escaping products
        let in_window = |v: &GradedVector| v.labels().all(|l| w.contains(l.index.unwrap()));
        let products: Vec<_> =
            products.into_iter().filter(|(_, _, v)| in_window(v)).collect();
        let evens = k1.even_basis(None);
        let odds = k1.odd_basis(None);
        let mutated =
            AlgebraTable::finite("k1-weight-mutated", AlgebraKind::Superalgebra, evens, odds, products)
                .unwrap();
        let report = mutated.check_superalgebra(None).unwrap();
        assert!(report.violated_identities().contains(&ID_SUPER_JACOBI.to_string()));
        assert!(report.violations.iter().any(|v| {
            v.identity == ID_SUPER_JACOBI
                && v.witness.contains(&"x:1".to_string())
                && v.witness.iter().any(|w| w.starts_with("xi:"))
        }));
    }

    use crate::algebra::ID_SUPER_JACOBI;

    #[test]
    fn semidirect_adjoint_and_coadjoint_pass() {
        let asl2 = build_asl2();
        let adj = AntiModule::adjoint(&asl2).unwrap();
        assert!(semidirect(&asl2, &adj).unwrap().check_antialgebra(None).unwrap().passed());

        let coadj = AntiModule::coadjoint(&asl2).unwrap();
        assert!(semidirect(&asl2, &coadj).unwrap().check_antialgebra(None).unwrap().passed());

        let triv = AntiModule::trivial(&asl2, 1, 0);
        let sd = semidirect(&asl2, &triv).unwrap();
        assert!(sd.check_antialgebra(None).unwrap().passed());

        // restriction to the algebra part is the algebra: projection is a
        // homomorphism by construction, checked on all pairs
        let a_basis = asl2.ordered_basis(None);
        for l in &a_basis {
            for r in &a_basis {
                assert_eq!(
                    sd.product_labels(l, r).unwrap(),
                    asl2.product_labels(l, r).unwrap()
                );
            }
        }
    }

    #[test]
    fn unsigned_coadjoint_fails_with_witness() {
        let asl2 = build_asl2();
        let plain = AntiModule::coadjoint_with_signs(&asl2, false).unwrap();
        let report = semidirect(&asl2, &plain).unwrap().check_antialgebra(None).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn ak1_subalgebras_isomorphic_to_asl2() {
        let ak1 = build_ak1(Window::symmetric(8));
        let asl2 = build_asl2();
        for i in [HalfInt::int_plus_half(0), HalfInt::int_plus_half(1), HalfInt::int_plus_half(2)] {
            let (eps, a, b) = asl2_embedding_in_ak1(i);
            let images = [
                (lab("eps"), eps.clone()),
                (lab("a"), a.clone()),
                (lab("b"), b.clone()),
            ];
            for (l1, v1) in &images {
                for (l2, v2) in &images {
                    let expect = asl2.product_labels(l1, l2).unwrap();
                    let mut mapped = GradedVector::zero();
                    for (l, c) in expect.terms() {
                        let img = images.iter().find(|(k, _)| k == l).unwrap();
                        mapped.add_scaled(&img.1, c);
                    }
                    assert_eq!(ak1.product(v1, v2).unwrap(), mapped, "at index {i}");
                }
            }
        }
    }

    #[test]
    fn spec_round_trip_and_errors() {
        let dir = std::env::temp_dir().join("antialg-spec-tests");
        std::fs::create_dir_all(&dir).unwrap();

        let asl2 = build_asl2();
        let path = dir.join("asl2.alg.json");
        save_spec(&asl2, &path).unwrap();
        let loaded = load_spec(&path).unwrap();
        assert_eq!(loaded.ordered_basis(None), asl2.ordered_basis(None));
        assert_eq!(loaded.stored_products(), asl2.stored_products());

        // exact rational coefficients survive the trip
        let third = AlgebraTable::finite(
            "third",
            AlgebraKind::Antialgebra,
            vec![lab("u")],
            vec![],
            vec![(lab("u"), lab("u"), GradedVector::term(lab("u"), rat(1, 3)))],
        )
        .unwrap();
        let path = dir.join("third.alg.json");
        save_spec(&third, &path).unwrap();
        let loaded = load_spec(&path).unwrap();
        assert_eq!(
            loaded.product_labels(&lab("u"), &lab("u")).unwrap(),
            GradedVector::term(lab("u"), rat(1, 3))
        );

        // undeclared label in products is a load error naming the label
        let bad = r#"{"name":"bad","kind":"antialgebra","even_basis":["u"],"odd_basis":[],
                      "products":[{"left":"u","right":"u","result":[{"coeff":"1","basis":"w"}]}]}"#;
        let path = dir.join("bad.alg.json");
        std::fs::write(&path, bad).unwrap();
        let err = load_spec(&path).unwrap_err();
        assert!(err.to_string().contains('w'));

        // family round trip
        let ak1 = build_ak1(Window::symmetric(3));
        let path = dir.join("ak1.alg.json");
        save_spec(&ak1, &path).unwrap();
        let loaded = load_spec(&path).unwrap();
        assert_eq!(loaded.family_rule(), ak1.family_rule());
        assert_eq!(loaded.default_window(), ak1.default_window());
    }

    #[test]
    fn builtin_names() {
        assert!(builtin_algebra("asl2", None).is_some());
        assert!(builtin_algebra("ah1:-2", None).is_some());
        assert!(builtin_algebra("ah1:1/2", None).is_some());
        assert!(builtin_algebra("ak1:6", None).is_some());
        assert!(builtin_algebra("k1:3", None).is_some());
        assert!(builtin_algebra("osp12", None).is_some());
        assert!(builtin_algebra("nope", None).is_none());
    }
}
