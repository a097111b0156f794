//! The convention ledger.
//!
//! Several sign and scalar conventions are not fixed by the defining
//! relations alone; each is selected mechanically by requiring ground-truth
//! relations to hold (never guessed), and the winners are collected here so
//! a run can be pinned against a previously recorded ledger.
//!
//! Set `ANTIALG_CONVENTIONS=<path>` to a ledger JSON file to verify that the
//! calibrations of the current build agree with a recorded one; any mismatch
//! is an error, which makes cross-run and cross-machine comparisons honest.

use crate::error::{AlgError, Result};
use crate::rational::fmt_rat;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConventionLedger {
    /// normalization of the pair symmetrization in the superization bracket
    pub superization_sym_normalization: String,
    /// geometric pairing ⟨X∧Y, dF∧dG⟩: global sign, Koszul swap weight, order
    pub contraction_global_negated: bool,
    pub contraction_koszul_swap: bool,
    pub contraction_flipped_order: bool,
    /// scalars of the polynomial superspace model
    pub superspace_c_ell: String,
    pub superspace_c_e: String,
    /// the model realizes the flipped-sign real form of the odd-odd constant
    pub superspace_odd_odd_flipped: bool,
    /// contact field coefficient, parity sign, odd generator scale, form
    pub contact_kappa: String,
    pub contact_parity_sign: bool,
    pub contact_odd_scale: String,
    pub contact_odd_odd_flipped: bool,
    /// cochain parity rule validated on the complexes
    pub cochain_parity_rule: String,
}

/// Run every calibration and collect the winners.
pub fn resolve() -> Result<ConventionLedger> {
    let sym = crate::superization::sym_normalization();
    let conv = crate::geometry::contraction_convention();
    let frep = crate::representations::build_frep(crate::algebra::Window::symmetric(2))?;
    let contact = crate::representations::contact_convention();
    Ok(ConventionLedger {
        superization_sym_normalization: fmt_rat(&sym),
        contraction_global_negated: conv.global_neg,
        contraction_koszul_swap: conv.koszul_swap,
        contraction_flipped_order: conv.flip_order,
        superspace_c_ell: fmt_rat(&frep.c_ell),
        superspace_c_e: fmt_rat(&frep.c_e),
        superspace_odd_odd_flipped: frep.odd_odd_flipped,
        contact_kappa: fmt_rat(&contact.kappa),
        contact_parity_sign: contact.parity_sign,
        contact_odd_scale: fmt_rat(&contact.odd_scale),
        contact_odd_odd_flipped: contact.odd_odd_flipped,
        cochain_parity_rule: "q + value parity".into(),
    })
}

/// Resolve the ledger and, when `ANTIALG_CONVENTIONS` is set, verify it
/// against the recorded file.
pub fn resolve_pinned() -> Result<ConventionLedger> {
    let ledger = resolve()?;
    if let Ok(path) = std::env::var("ANTIALG_CONVENTIONS") {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| AlgError::Io { path: path.clone(), source: e })?;
        let recorded: ConventionLedger = serde_json::from_str(&text)?;
        if recorded != ledger {
            return Err(AlgError::Calibration(format!(
                "conventions diverge from the pinned ledger {path}"
            )));
        }
    }
    Ok(ledger)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ledger_matches_the_calibrated_winners() {
        let l = resolve().unwrap();
        assert_eq!(l.superization_sym_normalization, "1/2");
        assert!(l.contraction_global_negated);
        assert!(l.contraction_koszul_swap);
        assert!(!l.contraction_flipped_order);
        assert_eq!(l.superspace_c_ell, "1/2");
        assert_eq!(l.superspace_c_e, "1/2");
        assert!(l.superspace_odd_odd_flipped);
        assert_eq!(l.contact_kappa, "1/2");
        assert!(l.contact_parity_sign);
        assert_eq!(l.contact_odd_scale, "2");
        assert!(l.contact_odd_odd_flipped);
    }

    #[test]
    fn pinning_round_trip() {
        let l = resolve().unwrap();
        let dir = std::env::temp_dir().join("antialg-conv");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("ledger.json");
        std::fs::write(&path, serde_json::to_string_pretty(&l).unwrap()).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let back: ConventionLedger = serde_json::from_str(&text).unwrap();
        assert_eq!(back, l);
    }
}
