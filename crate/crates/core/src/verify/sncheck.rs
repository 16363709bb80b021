//! Direct check of the support-in-`S_n` characterization.
//!
//! For `supp f ⊆ S_n` and `b = |f|`, `f` is a wavelet iff
//!
//! 1. `b = 1` a.e. on `[a,e) ∪ [-e,-a)`;
//! 2. `b²(ξ) + b²(2^{n-1}ξ) = 1` on `[e,b)`;
//! 3. `b²(ξ) + b²(ξ-2π) = 1` on `[e,b)`;
//! 4. `b(ξ) = b(2^{n-1}(ξ-2π))` on `[e,b)`;
//! 5. the phase of `f` turns by an odd multiple of π around the four points
//!    `ξ, 2^{n-1}(ξ-2π), ξ-2π, 2^{n-1}ξ` wherever `b(ξ) b(2^{n-1}ξ) ≠ 0`.
//!
//! With real values the phase is `0` or `π`, and the last condition says the
//! product of the four signs is `-1`.

use serde::Serialize;

use super::{deviations, CellValue};
use crate::construct::{sn_constants, SnConstants};
use crate::error::Result;
use crate::interval::{Interval, IntervalSet, StepFunction};
use crate::scalar::{QuadReal, Sign};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub holds: bool,
    pub violations: Vec<CellValue>,
}

impl ConditionReport {
    fn from_violations(violations: Vec<CellValue>) -> Self {
        ConditionReport {
            holds: violations.is_empty(),
            violations,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnCharacterization {
    pub n: u32,
    /// Pieces of `f` outside `S_n`, with their values.
    pub support_in_template: ConditionReport,
    /// Cells of `[a,e) ∪ [-e,-a)` where `|f| ≠ 1`, with `|f|`.
    pub unit_amplitude: ConditionReport,
    /// Cells of `[e,b)` where `b²(ξ) + b²(2^{n-1}ξ) ≠ 1`, with the sum.
    pub dilation_complement: ConditionReport,
    /// Cells of `[e,b)` where `b²(ξ) + b²(ξ-2π) ≠ 1`, with the sum.
    pub translation_complement: ConditionReport,
    /// Cells of `[e,b)` where `b(ξ) ≠ b(2^{n-1}(ξ-2π))`, with the difference.
    pub dilation_translation_match: ConditionReport,
    /// Active cells where the four-point sign product is `+1`, with the
    /// product of the four values.
    pub phase_product: ConditionReport,
    /// `[e,b) ∩ supp b ∩ 2^{-(n-1)} supp b`.
    pub phase_active: IntervalSet,
    pub all_hold: bool,
}

impl SnCharacterization {
    /// The five conditions in order, without the support check.
    pub fn conditions(&self) -> [&ConditionReport; 5] {
        [
            &self.unit_amplitude,
            &self.dilation_complement,
            &self.translation_complement,
            &self.dilation_translation_match,
            &self.phase_product,
        ]
    }
}

fn interval_set(pairs: &[(&crate::scalar::QPiScalar, &crate::scalar::QPiScalar)]) -> IntervalSet {
    IntervalSet::from_intervals(
        pairs
            .iter()
            .filter_map(|(lo, hi)| Interval::new((*lo).clone(), (*hi).clone()).ok())
            .collect(),
    )
}

pub fn check_sn_characterization(f: &StepFunction, n: u32) -> Result<SnCharacterization> {
    let k: SnConstants = sn_constants(n)?;
    let one = QuadReal::one();
    let amp = f.abs();
    let amp_sq = f.square();

    let outside = f.support().difference(&k.s_n());
    let support_in_template = ConditionReport::from_violations(
        f.restrict(&outside)
            .pieces()
            .iter()
            .map(|p| CellValue {
                cell: p.interval.clone(),
                value: p.value.clone(),
            })
            .collect(),
    );

    let unit_zone = interval_set(&[(&k.a, &k.e), (&-&k.e, &-&k.a)]);
    let unit_amplitude = ConditionReport::from_violations(deviations(&amp, &one, &unit_zone));

    let profile = IntervalSet::from(k.profile_domain());
    let dilate = k.dilate_map();
    let translate = k.translate_map();
    let dilate_translate = k.dilate_translate_map();

    let dilation_complement = ConditionReport::from_violations(deviations(
        &amp_sq.add(&amp_sq.pullback(&dilate)),
        &one,
        &profile,
    ));
    let translation_complement = ConditionReport::from_violations(deviations(
        &amp_sq.add(&amp_sq.pullback(&translate)),
        &one,
        &profile,
    ));
    let dilation_translation_match = ConditionReport::from_violations(deviations(
        &amp.sub(&amp.pullback(&dilate_translate)),
        &QuadReal::zero(),
        &profile,
    ));

    let at_dilate = f.pullback(&dilate);
    let phase_active = f
        .support()
        .intersect(&at_dilate.support())
        .intersect(&profile);
    let product = f
        .mul(&f.pullback(&dilate_translate))
        .mul(&f.pullback(&translate))
        .mul(&at_dilate)
        .restrict(&phase_active);
    let phase_product = ConditionReport::from_violations(
        product
            .pieces()
            .iter()
            .filter(|p| p.value.sign() == Sign::Positive)
            .map(|p| CellValue {
                cell: p.interval.clone(),
                value: p.value.clone(),
            })
            .collect(),
    );

    let all_hold = support_in_template.holds
        && unit_amplitude.holds
        && dilation_complement.holds
        && translation_complement.holds
        && dilation_translation_match.holds
        && phase_product.holds;
    Ok(SnCharacterization {
        n,
        support_in_template,
        unit_amplitude,
        dilation_complement,
        translation_complement,
        dilation_translation_match,
        phase_product,
        phase_active,
        all_hold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{gamma_n, psi_n, w_n};

    #[test]
    fn w3_passes_with_phase_active_on_e_to_pi() {
        let r = check_sn_characterization(&w_n(3).unwrap(), 3).unwrap();
        assert!(r.all_hold, "{r:#?}");
        assert_eq!(
            r.phase_active,
            IntervalSet::from(Interval::frac((6, 7), (1, 1)))
        );
    }

    #[test]
    fn gamma3_has_empty_phase_zone() {
        let r = check_sn_characterization(&gamma_n(3).unwrap(), 3).unwrap();
        assert!(r.all_hold);
        assert!(r.phase_active.is_empty());
    }

    #[test]
    fn flipped_w3_breaks_only_phase() {
        let f = w_n(3)
            .unwrap()
            .with_value_on(&Interval::frac((6, 7), (1, 1)), QuadReal::inv_sqrt2());
        let r = check_sn_characterization(&f, 3).unwrap();
        assert!(!r.phase_product.holds);
        assert_eq!(
            r.phase_product.violations[0].cell,
            Interval::frac((6, 7), (1, 1))
        );
        assert!(r.unit_amplitude.holds && r.dilation_complement.holds);
        assert!(r.translation_complement.holds && r.dilation_translation_match.holds);
    }

    #[test]
    fn psi_is_outside_template() {
        let r = check_sn_characterization(&psi_n(3).unwrap(), 3).unwrap();
        assert!(!r.support_in_template.holds);
        let outside: Vec<_> = r
            .support_in_template
            .violations
            .iter()
            .map(|v| v.cell.clone())
            .collect();
        assert_eq!(
            outside,
            vec![
                Interval::frac((2, 7), (3, 7)),
                Interval::frac((60, 7), (62, 7))
            ]
        );
    }

    #[test]
    fn n2_is_accepted_and_n1_rejected() {
        assert!(check_sn_characterization(&StepFunction::zero(), 2).is_ok());
        assert!(check_sn_characterization(&StepFunction::zero(), 1).is_err());
    }
}
