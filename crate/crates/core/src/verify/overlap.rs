//! Overlap sets `E(ψ,k) = supp ψ̂ ∩ (supp ψ̂ + 2kπ)`, the translation-invariance
//! class they determine, and per-piece translate/dilate hit tables.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::verify_wavelet;
use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalSet, StepFunction};
use crate::scalar::{
    floor_log2, integers_strictly_between, pow2, two_adic_valuation, QPiScalar, QuadReal,
};

/// All `k` for which `support + 2kπ` meets `support` in positive measure.
///
/// Computed pairwise: `[p.lo + 2kπ, p.hi + 2kπ)` meets `[r.lo, r.hi)` iff
/// `2kπ ∈ (r.lo - p.hi, r.hi - p.lo)`.
pub fn overlap_indices(support: &IntervalSet) -> Vec<i64> {
    let mut ks = std::collections::BTreeSet::new();
    let half = crate::scalar::Rational::new(1.into(), 2.into());
    for p in support.pieces() {
        for r in support.pieces() {
            let lo = (r.lo() - p.hi()).coeff() * &half;
            let hi = (r.hi() - p.lo()).coeff() * &half;
            ks.extend(integers_strictly_between(&lo, &hi));
        }
    }
    ks.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OverlapEntry {
    pub k: i64,
    pub set: IntervalSet,
}

/// `k ↦ E(ψ,k)` for every `k` with a positive-measure overlap.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OverlapIndexSet {
    entries: BTreeMap<i64, IntervalSet>,
}

impl OverlapIndexSet {
    pub fn indices(&self) -> Vec<i64> {
        self.entries.keys().copied().collect()
    }

    pub fn get(&self, k: i64) -> Option<&IntervalSet> {
        self.entries.get(&k)
    }

    pub fn contains(&self, k: i64) -> bool {
        self.entries.contains_key(&k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &IntervalSet)> {
        self.entries.iter().map(|(k, s)| (*k, s))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl Serialize for OverlapIndexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            entries: Vec<OverlapEntry>,
        }
        Repr {
            entries: self
                .entries
                .iter()
                .map(|(k, set)| OverlapEntry {
                    k: *k,
                    set: set.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

pub fn overlap_sets(f: &StepFunction) -> OverlapIndexSet {
    let support = f.support();
    let entries = overlap_indices(&support)
        .into_iter()
        .filter_map(|k| {
            let e = support.intersect(&support.translate(&QPiScalar::two_k_pi(k)));
            (!e.is_empty()).then_some((k, e))
        })
        .collect();
    OverlapIndexSet { entries }
}

/// `|f| ∈ {0, 1}` everywhere.
pub fn is_msf(f: &StepFunction) -> bool {
    f.pieces()
        .iter()
        .all(|p| p.value.square() == QuadReal::one())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassIndex {
    Finite(u32),
    Infinite,
}

impl fmt::Display for ClassIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassIndex::Finite(n) => write!(f, "M_{n}"),
            ClassIndex::Infinite => f.write_str("M_inf"),
        }
    }
}

impl Serialize for ClassIndex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassLabel {
    #[serde(rename = "class")]
    pub class_index: ClassIndex,
    /// Smallest positive overlap index attaining the minimal 2-adic valuation.
    pub witness: Option<i64>,
    pub overlap_indices: Vec<i64>,
}

/// Class read off the overlap indices: `M_∞` when only `k = 0` overlaps,
/// otherwise `M_v` with `v` the least 2-adic valuation of a nonzero index.
pub fn class_of(overlaps: &OverlapIndexSet) -> ClassLabel {
    let best = overlaps
        .indices()
        .into_iter()
        .filter(|&k| k > 0)
        .map(|k| (two_adic_valuation(k), k))
        .min();
    ClassLabel {
        class_index: best.map_or(ClassIndex::Infinite, |(v, _)| ClassIndex::Finite(v)),
        witness: best.map(|(_, k)| k),
        overlap_indices: overlaps.indices(),
    }
}

/// Classifies a wavelet; fails with [`Error::NotVerified`] for non-wavelets.
pub fn classify(f: &StepFunction) -> Result<ClassLabel> {
    if !verify_wavelet(f)?.overall {
        return Err(Error::NotVerified);
    }
    Ok(class_of(&overlap_sets(f)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HitRow {
    #[serde(flatten)]
    pub piece: Interval,
    /// `k` with `piece + 2kπ` meeting the support.
    pub translate_hits: Vec<i64>,
    /// `j` with `2^j · piece` meeting the support.
    pub dilate_hits: Vec<i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HitTable {
    pub rows: Vec<HitRow>,
}

fn translate_candidates(piece: &Interval, support: &IntervalSet) -> Vec<i64> {
    let half = crate::scalar::Rational::new(1.into(), 2.into());
    let mut ks: Vec<i64> = support
        .pieces()
        .iter()
        .flat_map(|r| {
            let lo = (r.lo() - piece.hi()).coeff() * &half;
            let hi = (r.hi() - piece.lo()).coeff() * &half;
            integers_strictly_between(&lo, &hi)
        })
        .collect();
    ks.sort_unstable();
    ks.dedup();
    ks
}

/// `j` with `2^j · piece` meeting some support piece on the same side of 0.
fn dilate_candidates(piece: &Interval, support: &IntervalSet) -> Vec<i64> {
    let positive = piece.lo().signum() > 0;
    let (plo, phi) = if positive {
        (piece.lo().coeff().clone(), piece.hi().coeff().clone())
    } else {
        (-piece.hi().coeff(), -piece.lo().coeff())
    };
    let mut js = Vec::new();
    for r in support.pieces() {
        let same_side = if positive {
            r.lo().signum() > 0
        } else {
            r.hi().signum() < 0
        };
        if !same_side {
            continue;
        }
        let (rlo, rhi) = if positive {
            (r.lo().coeff().clone(), r.hi().coeff().clone())
        } else {
            (-r.hi().coeff(), -r.lo().coeff())
        };
        // overlap needs 2^j plo < rhi and 2^j phi > rlo
        let j_min = floor_log2(&(&rlo / &phi));
        let j_max = floor_log2(&(&rhi / &plo));
        for j in j_min..=j_max {
            let s = pow2(j);
            if &s * &plo < rhi && &s * &phi > rlo {
                js.push(j);
            }
        }
    }
    js.sort_unstable();
    js.dedup();
    js
}

/// One row per constant piece of `f`, listing which lattice translates and
/// dyadic dilates of the piece land back in the support. A piece whose hit
/// sets change across its interior is split where they change.
pub fn hit_table(f: &StepFunction) -> Result<HitTable> {
    if let Some(p) = f
        .pieces()
        .iter()
        .find(|p| p.interval.lo().signum() <= 0 && p.interval.hi().signum() >= 0)
    {
        return Err(Error::SupportTouchesOrigin {
            lo: Box::new(p.interval.lo().clone()),
            hi: Box::new(p.interval.hi().clone()),
        });
    }
    let support = f.support();
    let mut rows = Vec::new();
    for p in f.pieces() {
        let piece = &p.interval;
        let whole = IntervalSet::from(piece.clone());
        let translate: Vec<(i64, IntervalSet)> = translate_candidates(piece, &support)
            .into_iter()
            .map(|k| {
                let hit = whole.intersect(&support.translate(&-QPiScalar::two_k_pi(k)));
                (k, hit)
            })
            .filter(|(_, hit)| !hit.is_empty())
            .collect();
        let dilate: Vec<(i64, IntervalSet)> = dilate_candidates(piece, &support)
            .into_iter()
            .map(|j| {
                let hit =
                    whole.intersect(&support.image(&crate::interval::AffineMap::dilation(-j)));
                (j, hit)
            })
            .filter(|(_, hit)| !hit.is_empty())
            .collect();

        let mut cuts: Vec<QPiScalar> = vec![piece.lo().clone(), piece.hi().clone()];
        for (_, hit) in translate.iter().chain(&dilate) {
            for iv in hit.pieces() {
                cuts.push(iv.lo().clone());
                cuts.push(iv.hi().clone());
            }
        }
        cuts.sort();
        cuts.dedup();

        let mut piece_rows: Vec<HitRow> = Vec::new();
        for w in cuts.windows(2) {
            let cell = Interval::new(w[0].clone(), w[1].clone()).expect("cuts are increasing");
            let hits = |list: &[(i64, IntervalSet)]| -> Vec<i64> {
                list.iter()
                    .filter(|(_, hit)| hit.contains(cell.lo()))
                    .map(|(i, _)| *i)
                    .collect()
            };
            let row = HitRow {
                translate_hits: hits(&translate),
                dilate_hits: hits(&dilate),
                piece: cell,
            };
            match piece_rows.last_mut() {
                Some(last)
                    if last.translate_hits == row.translate_hits
                        && last.dilate_hits == row.dilate_hits =>
                {
                    last.piece = Interval::new(last.piece.lo().clone(), row.piece.hi().clone())
                        .expect("merged cells are nonempty");
                }
                _ => piece_rows.push(row),
            }
        }
        rows.extend(piece_rows);
    }
    Ok(HitTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{gamma_n, psi_n, shannon, w_n};

    fn row_for(t: &HitTable, lo: (i64, i64), hi: (i64, i64)) -> &HitRow {
        let iv = Interval::frac(lo, hi);
        t.rows.iter().find(|r| r.piece == iv).expect("row present")
    }

    #[test]
    fn psi_overlaps() {
        for n in 3..=6u32 {
            let e = overlap_sets(&psi_n(n).unwrap());
            let h = 1i64 << (n - 2);
            assert_eq!(e.indices(), vec![-2 * h, -h, 0, h, 2 * h], "n={n}");
        }
    }

    #[test]
    fn overlap_symmetry() {
        let e = overlap_sets(&w_n(4).unwrap());
        for (k, set) in e.iter() {
            let mirror = e.get(-k).expect("symmetric");
            assert_eq!(mirror, &set.translate(&-QPiScalar::two_k_pi(k)));
        }
        assert_eq!(e.get(0).unwrap(), &w_n(4).unwrap().support());
    }

    #[test]
    fn wavelet_sets_have_trivial_overlaps() {
        assert_eq!(overlap_sets(&gamma_n(3).unwrap()).indices(), vec![0]);
        assert_eq!(overlap_sets(&shannon()).indices(), vec![0]);
        assert!(overlap_sets(&w_n(3).unwrap()).contains(1));
    }

    #[test]
    fn classes() {
        assert_eq!(
            classify(&psi_n(3).unwrap()).unwrap().class_index,
            ClassIndex::Finite(1)
        );
        let c = classify(&psi_n(3).unwrap()).unwrap();
        assert_eq!(c.witness, Some(2));
        assert_eq!(
            classify(&w_n(3).unwrap()).unwrap().class_index,
            ClassIndex::Finite(0)
        );
        assert_eq!(
            classify(&gamma_n(3).unwrap()).unwrap().class_index,
            ClassIndex::Infinite
        );
        assert_eq!(
            classify(&shannon()).unwrap().class_index,
            ClassIndex::Infinite
        );
        let half = StepFunction::indicator(&Interval::frac((1, 1), (2, 1)).into(), QuadReal::one());
        assert_eq!(classify(&half), Err(Error::NotVerified));
    }

    #[test]
    fn msf_flags() {
        assert!(is_msf(&gamma_n(3).unwrap()));
        assert!(!is_msf(&psi_n(3).unwrap()));
        assert!(is_msf(&StepFunction::zero()));
    }

    #[test]
    fn psi_3_hit_rows() {
        let t = hit_table(&psi_n(3).unwrap()).unwrap();
        assert_eq!(t.rows.len(), 7);
        let r = row_for(&t, (4, 7), (6, 7));
        assert_eq!(
            (r.translate_hits.clone(), r.dilate_hits.clone()),
            (vec![0, 4], vec![-1, 0])
        );
        let r = row_for(&t, (-8, 7), (-4, 7));
        assert_eq!(
            (r.translate_hits.clone(), r.dilate_hits.clone()),
            (vec![0], vec![0])
        );
        let r = row_for(&t, (60, 7), (62, 7));
        assert_eq!(
            (r.translate_hits.clone(), r.dilate_hits.clone()),
            (vec![-4, 0], vec![-1, 0])
        );
    }

    #[test]
    fn non_uniform_piece_is_split() {
        // support [1/2, 3)π; on the piece [1, 3)π the -2π translate only hits
        // for ξ >= 5π/2, the 2^1 dilate only for ξ < 3π/2, the 2^-2 dilate
        // only for ξ >= 2π
        let f = StepFunction::from_pieces(vec![
            (Interval::frac((1, 2), (1, 1)), QuadReal::from_int(2)),
            (Interval::frac((1, 1), (3, 1)), QuadReal::one()),
        ])
        .unwrap();
        let t = hit_table(&f).unwrap();
        let tails: Vec<_> = t
            .rows
            .iter()
            .filter(|r| r.piece.lo() >= &QPiScalar::pi())
            .map(|r| {
                (
                    r.piece.clone(),
                    r.translate_hits.clone(),
                    r.dilate_hits.clone(),
                )
            })
            .collect();
        assert_eq!(
            tails,
            vec![
                (Interval::frac((1, 1), (3, 2)), vec![0], vec![-1, 0, 1]),
                (Interval::frac((3, 2), (2, 1)), vec![0], vec![-1, 0]),
                (Interval::frac((2, 1), (5, 2)), vec![0], vec![-2, -1, 0]),
                (Interval::frac((5, 2), (3, 1)), vec![-1, 0], vec![-2, -1, 0]),
            ]
        );
    }

    #[test]
    fn origin_rejected() {
        let f = StepFunction::indicator(&Interval::frac((-1, 1), (1, 1)).into(), QuadReal::one());
        assert!(hit_table(&f).is_err());
    }
}
