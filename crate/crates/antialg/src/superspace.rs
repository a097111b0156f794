//! Exact calculus on the 1|1-dimensional superspace with coordinates (x, ξ),
//! ξ² = 0, and first-order differential operators built from the odd vector
//! field D = ∂_ξ + ξ∂_x (so D² = ∂_x).
//!
//! Polynomials here are finite sums c·x^k ξ^e with integer (possibly
//! negative) exponents k and e ∈ {0, 1}. Coefficients are exact rationals;
//! products and derivatives never truncate.

use crate::error::{AlgError, Result};
use crate::graded::Parity;
use crate::rational::{int, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// A finite sum Σ c · x^k ξ^e.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly11 {
    terms: BTreeMap<(i64, bool), Rat>,
}

impl Poly11 {
    pub fn zero() -> Poly11 {
        Poly11::default()
    }

    pub fn monomial(k: i64, xi: bool, coeff: Rat) -> Poly11 {
        let mut p = Poly11::zero();
        p.add_term(k, xi, &coeff);
        p
    }

    pub fn one() -> Poly11 {
        Poly11::monomial(0, false, int(1))
    }

    pub fn x_pow(k: i64) -> Poly11 {
        Poly11::monomial(k, false, int(1))
    }

    pub fn xi_x_pow(k: i64) -> Poly11 {
        Poly11::monomial(k, true, int(1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, bool), &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: i64, xi: bool) -> Rat {
        self.terms.get(&(k, xi)).cloned().unwrap_or_else(crate::rational::zero)
    }

    pub fn add_term(&mut self, k: i64, xi: bool, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((k, xi)).or_insert_with(crate::rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(k, xi));
        }
    }

    pub fn add(&self, other: &Poly11) -> Poly11 {
        let mut out = self.clone();
        for (&(k, xi), c) in other.terms() {
            out.add_term(k, xi, c);
        }
        out
    }

    pub fn sub(&self, other: &Poly11) -> Poly11 {
        self.add(&other.scale(&-int(1)))
    }

    pub fn scale(&self, c: &Rat) -> Poly11 {
        let mut out = Poly11::zero();
        for (&(k, xi), v) in self.terms() {
            out.add_term(k, xi, &(v * c));
        }
        out
    }

    /// Product; ξ·ξ = 0, and the even coordinate commutes with everything.
    pub fn mul(&self, other: &Poly11) -> Poly11 {
        let mut out = Poly11::zero();
        for (&(k1, x1), c1) in self.terms() {
            for (&(k2, x2), c2) in other.terms() {
                if x1 && x2 {
                    continue;
                }
                out.add_term(k1 + k2, x1 || x2, &(c1 * c2));
            }
        }
        out
    }

    pub fn d_x(&self) -> Poly11 {
        let mut out = Poly11::zero();
        for (&(k, xi), c) in self.terms() {
            out.add_term(k - 1, xi, &(c * &int(k)));
        }
        out
    }

    /// Left derivative with respect to ξ.
    pub fn d_xi(&self) -> Poly11 {
        let mut out = Poly11::zero();
        for (&(k, xi), c) in self.terms() {
            if xi {
                out.add_term(k, false, c);
            }
        }
        out
    }

    /// D = ∂_ξ + ξ∂_x.
    pub fn d_susy(&self) -> Poly11 {
        self.d_xi().add(&Poly11::monomial(0, true, int(1)).mul(&self.d_x()))
    }

    /// `Some(parity)` when all monomials share a ξ-degree, `None` when mixed.
    pub fn parity(&self) -> Option<Parity> {
        let mut seen = None;
        for (&(_, xi), _) in self.terms() {
            let p = if xi { Parity::Odd } else { Parity::Even };
            match seen {
                None => seen = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(seen.unwrap_or(Parity::Even))
    }
}

impl fmt::Display for Poly11 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&(k, xi), c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            if xi {
                write!(f, " ξ")?;
            }
            if k != 0 {
                write!(f, " x^{k}")?;
            }
        }
        Ok(())
    }
}

/// A first-order operator c_x·∂_x + c_ξ·∂_ξ with polynomial coefficients,
/// parity-homogeneous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Op11 {
    pub coeff_x: Poly11,
    pub coeff_xi: Poly11,
    pub parity: Parity,
}

impl Op11 {
    pub fn new(coeff_x: Poly11, coeff_xi: Poly11) -> Result<Op11> {
        // parity of the operator: p(c_x) for the ∂_x part, p(c_ξ)+1 for ∂_ξ
        let px = coeff_x.parity();
        let pxi = coeff_xi.parity().map(Parity::flip);
        let parity = match (px, pxi) {
            (Some(a), Some(b)) => {
                if !coeff_x.is_zero() && !coeff_xi.is_zero() && a != b {
                    return Err(AlgError::Precondition(
                        "operator is not parity-homogeneous".into(),
                    ));
                }
                if coeff_x.is_zero() {
                    b
                } else {
                    a
                }
            }
            _ => {
                return Err(AlgError::Precondition(
                    "operator coefficients are not parity-homogeneous".into(),
                ))
            }
        };
        Ok(Op11 { coeff_x, coeff_xi, parity })
    }

    pub fn zero() -> Op11 {
        Op11 { coeff_x: Poly11::zero(), coeff_xi: Poly11::zero(), parity: Parity::Even }
    }

    pub fn apply(&self, f: &Poly11) -> Poly11 {
        self.coeff_x.mul(&f.d_x()).add(&self.coeff_xi.mul(&f.d_xi()))
    }

    pub fn scale(&self, c: &Rat) -> Op11 {
        Op11 {
            coeff_x: self.coeff_x.scale(c),
            coeff_xi: self.coeff_xi.scale(c),
            parity: self.parity,
        }
    }
}

/// f·D as an operator: f·∂_ξ + f·ξ·∂_x.
pub fn coeff_times_susy(f: &Poly11) -> Result<Op11> {
    let xi = Poly11::monomial(0, true, int(1));
    Op11::new(f.mul(&xi), f.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn susy_derivative_is_a_square_root_of_d_x() {
        for k in -3..4 {
            for xi in [false, true] {
                let f = Poly11::monomial(k, xi, rat(3, 2));
                assert_eq!(f.d_susy().d_susy(), f.d_x(), "k={k} xi={xi}");
            }
        }
    }

    #[test]
    fn susy_on_monomials() {
        // D(x^k) = k ξ x^{k−1}, D(ξ x^k) = x^k
        let f = Poly11::x_pow(3);
        assert_eq!(f.d_susy(), Poly11::monomial(2, true, int(3)));
        let g = Poly11::xi_x_pow(5);
        assert_eq!(g.d_susy(), Poly11::x_pow(5));
    }

    #[test]
    fn negative_exponents_differentiate_exactly() {
        let f = Poly11::x_pow(-2);
        assert_eq!(f.d_x(), Poly11::monomial(-3, false, int(-2)));
    }

    #[test]
    fn operator_parity_checks() {
        // ξ x ∂_x + x ∂_ξ is odd
        let op = Op11::new(Poly11::xi_x_pow(1), Poly11::x_pow(1)).unwrap();
        assert_eq!(op.parity, Parity::Odd);
        // mixing parities is rejected
        assert!(Op11::new(Poly11::x_pow(1), Poly11::x_pow(1)).is_err());
    }
}
