//! Independent checks on the closed-form classification.
//!
//! [`build_filling_map`] never looks at the four closed-form conditions. It
//! walks every allowable tuple with a terminal position in `{1, q, p-q, p-1}`
//! and records the braid each one produces, which gives the complete
//! braid → slopes map for `w ≤ max_w` directly. [`check_equivalence`] then
//! compares that map with [`fillings_of`] triple by triple.
//!
//! The transit simulation realizes the arc `α` of a tuple as a spiral on the
//! cut-open torus and reads `w` and `t` off the order in which it crosses the
//! meridian circle, giving a second derivation of those two parameters that
//! shares no code with the modular formulas.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Rational64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::braids::{AllowableTuple, Braid, Slope};
use crate::classify::{filling_slopes, terminal_tuples, tuple_params, tuple_to_braid};
use crate::error::{guard, Result};
use crate::residues::{bar_pair, gcd, phi_direct, PhiShape};

pub const MIN_ORACLE_W: i64 = 3;
pub const MAX_ORACLE_W: i64 = 200;

/// Braid → every `(slope, tuple)` that realizes it, for all `w ≤ max_w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FillingMap {
    pub max_w: i64,
    pub entries: BTreeMap<Braid, BTreeSet<(Slope, AllowableTuple)>>,
}

impl FillingMap {
    /// Distinct slopes recorded for `braid`; empty when it has no entry.
    pub fn slopes(&self, braid: &Braid) -> Vec<Slope> {
        let mut slopes: Vec<Slope> = self
            .entries
            .get(braid)
            .into_iter()
            .flatten()
            .map(|(s, _)| *s)
            .collect();
        slopes.dedup();
        slopes
    }

    /// The map cut down to `w ≤ max_w`.
    pub fn restrict(&self, max_w: i64) -> FillingMap {
        FillingMap {
            max_w,
            entries: self
                .entries
                .iter()
                .filter(|(b, _)| b.w() <= max_w)
                .map(|(b, s)| (*b, s.clone()))
                .collect(),
        }
    }
}

fn coprime_slopes(max_p: i64) -> Vec<Slope> {
    (2..=max_p)
        .flat_map(|p| (1..p).map(move |q| (p, q)))
        .filter(|&(p, q)| gcd(p, q) == 1)
        .map(|(p, q)| Slope::new(p, q).expect("coprime"))
        .collect()
}

fn realized_braids(slope: Slope, max_w: i64) -> Vec<(Braid, AllowableTuple)> {
    terminal_tuples(slope, max_w)
        .filter_map(|tuple| tuple_to_braid(&tuple).braid().map(|b| (b, tuple)))
        .collect()
}

fn assemble(max_w: i64, parts: Vec<Vec<(Braid, AllowableTuple)>>) -> FillingMap {
    let mut entries: BTreeMap<Braid, BTreeSet<(Slope, AllowableTuple)>> = BTreeMap::new();
    for (braid, tuple) in parts.into_iter().flatten() {
        entries
            .entry(braid)
            .or_default()
            .insert((tuple.slope(), tuple));
    }
    FillingMap { max_w, entries }
}

/// Exhaustive enumeration over all coprime `0 < q < p ≤ max_w + 1`.
pub fn build_filling_map(max_w: i64) -> Result<FillingMap> {
    guard(max_w, MIN_ORACLE_W, MAX_ORACLE_W)?;
    let parts = coprime_slopes(max_w + 1)
        .into_iter()
        .map(|s| realized_braids(s, max_w))
        .collect();
    Ok(assemble(max_w, parts))
}

/// [`build_filling_map`] split across the current rayon pool.
pub fn build_filling_map_parallel(max_w: i64) -> Result<FillingMap> {
    guard(max_w, MIN_ORACLE_W, MAX_ORACLE_W)?;
    let parts = coprime_slopes(max_w + 1)
        .into_par_iter()
        .map(|s| realized_braids(s, max_w))
        .collect();
    Ok(assemble(max_w, parts))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceMismatch {
    pub w: i64,
    pub b: i64,
    pub t: i64,
    pub closed_form: Vec<Slope>,
    pub oracle: Vec<Slope>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub max_w: i64,
    pub triples_checked: usize,
    pub mismatches: Vec<EquivalenceMismatch>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn compare(map: &FillingMap, braid: Braid) -> Option<EquivalenceMismatch> {
    let closed_form = filling_slopes(&braid);
    let oracle = map.slopes(&braid);
    (closed_form != oracle).then(|| EquivalenceMismatch {
        w: braid.w(),
        b: braid.b(),
        t: braid.t(),
        closed_form,
        oracle,
    })
}

/// Closed form vs. enumeration on every valid triple with `w ≤ max_w`,
/// knots and links alike.
pub fn check_equivalence(max_w: i64) -> Result<EquivalenceReport> {
    let map = build_filling_map(max_w)?;
    let mut triples_checked = 0;
    let mut mismatches = Vec::new();
    for braid in Braid::all_up_to(max_w) {
        triples_checked += 1;
        mismatches.extend(compare(&map, braid));
    }
    Ok(EquivalenceReport {
        max_w,
        triples_checked,
        mismatches,
    })
}

pub fn check_equivalence_parallel(max_w: i64) -> Result<EquivalenceReport> {
    let map = build_filling_map_parallel(max_w)?;
    let braids: Vec<Braid> = Braid::all_up_to(max_w).collect();
    let mismatches = braids
        .par_iter()
        .filter_map(|&b| compare(&map, b))
        .collect();
    Ok(EquivalenceReport {
        max_w,
        triples_checked: braids.len(),
        mismatches,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiMismatch {
    pub p: i64,
    pub q: i64,
    pub shape: PhiShape,
    pub closed: i64,
    pub direct: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiReport {
    pub max_p: i64,
    pub pairs_checked: usize,
    pub mismatches: Vec<PhiMismatch>,
}

impl PhiReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Closed forms of `φ` against direct enumeration, for every coprime
/// `0 < q < p` with `2 ≤ p ≤ max_p` and every tabulated shape.
pub fn check_phi_closed_forms(max_p: i64) -> PhiReport {
    let slopes = coprime_slopes(max_p);
    let mismatches = slopes
        .iter()
        .flat_map(|s| {
            let (p, q) = (s.p(), s.q());
            let bars = bar_pair(p, q).expect("coprime");
            PhiShape::ALL.into_iter().filter_map(move |shape| {
                let (x, y) = shape.args(p, q);
                let direct = phi_direct(p, q, x, y).expect("valid phi arguments");
                let closed = shape.value(&bars);
                (direct != closed).then_some(PhiMismatch {
                    p,
                    q,
                    shape,
                    closed,
                    direct,
                })
            })
        })
        .collect();
    PhiReport {
        max_p,
        pairs_checked: slopes.len(),
        mismatches,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum DiagramError {
    #[error("transit positions are not distinct")]
    NotDistinct,
    #[error("path has no transits")]
    Empty,
    #[error("rank shift is not constant: {shifts:?}")]
    NonConstantShift { shifts: Vec<i64> },
}

/// The arc `α` of a tuple drawn as a spiral on the cut-open torus.
///
/// Positions live on a circle of circumference `p`; the rectangle `R_i` is
/// the interval `(i, i+1)`. Transit `j` (for `j = 1..=N`, `N = kp + q̄_x`) is
/// where the arc crosses the meridian circle for the `j`-th time, at
/// `1/2 + j·(q + δ) mod p`; the spiral offset `δ = 1 / (2(N+1))` keeps every
/// crossing inside its rectangle and all crossings distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitPath {
    pub tuple: AllowableTuple,
    pub offset: Rational64,
    pub positions: Vec<Rational64>,
    /// Interior endpoint of `α` in `R_0`.
    pub start_pos: Rational64,
    /// Horizontal position of the final arc, inside `R_x`.
    pub end_pos: Rational64,
}

fn reduce(r: Rational64, p: i64) -> Rational64 {
    let p = Rational64::from_integer(p);
    r - p * (r / p).floor()
}

pub fn simulate_transits(tuple: &AllowableTuple) -> std::result::Result<TransitPath, DiagramError> {
    let (p, q) = (tuple.p(), tuple.q());
    let (n, _, _) = tuple_params(tuple);
    let offset = Rational64::new(1, 2 * (n + 1));
    let start_pos = Rational64::new(1, 2);
    let step = Rational64::from_integer(q) + offset;
    let positions: Vec<Rational64> = (1..=n).map(|j| reduce(start_pos + step * j, p)).collect();

    let distinct: BTreeSet<_> = positions.iter().chain([&start_pos]).collect();
    if distinct.len() != positions.len() + 1 {
        return Err(DiagramError::NotDistinct);
    }
    let end_pos = positions.last().copied().unwrap_or(start_pos);
    Ok(TransitPath {
        tuple: *tuple,
        offset,
        positions,
        start_pos,
        end_pos,
    })
}

fn ranks(points: &[Rational64]) -> Vec<i64> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].cmp(&points[b]));
    let mut rank = vec![0; points.len()];
    for (r, i) in order.into_iter().enumerate() {
        rank[i] = r as i64;
    }
    rank
}

/// Reads `(w, t)` off a transit path.
///
/// The top edge of the cut-open annulus carries the `w` crossings; the bottom
/// edge carries the start point and every crossing but the last. Each bottom
/// point is glued to the next crossing along `α`, and `t` is the (constant)
/// difference between its rank among top points and its rank among bottom
/// points, mod `w`.
pub fn measure_w_t(path: &TransitPath) -> std::result::Result<(i64, i64), DiagramError> {
    let n = path.positions.len();
    if n == 0 {
        return Err(DiagramError::Empty);
    }
    let w = n as i64;
    let top = &path.positions;
    let bottom: Vec<Rational64> = std::iter::once(path.start_pos)
        .chain(top[..n - 1].iter().copied())
        .collect();
    let top_rank = ranks(top);
    let bottom_rank = ranks(&bottom);
    let shifts: Vec<i64> = (0..n)
        .map(|j| (top_rank[j] - bottom_rank[j]).rem_euclid(w))
        .collect();
    if shifts.iter().any(|&s| s != shifts[0]) {
        return Err(DiagramError::NonConstantShift { shifts });
    }
    Ok((w, shifts[0]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramMismatch {
    pub tuple: AllowableTuple,
    /// `(w, t mod w)` from the modular formulas.
    pub formula: (i64, i64),
    pub measured: std::result::Result<(i64, i64), DiagramError>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramReport {
    pub tuples_checked: usize,
    pub mismatches: Vec<DiagramMismatch>,
}

impl DiagramReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Diagram measurement vs. formulas on the given tuples. Tuples with no
/// transits are skipped.
pub fn check_transits<I>(tuples: I) -> DiagramReport
where
    I: IntoIterator<Item = AllowableTuple>,
{
    let mut tuples_checked = 0;
    let mut mismatches = Vec::new();
    for tuple in tuples {
        let (w, _, t) = tuple_params(&tuple);
        if w < 1 {
            continue;
        }
        tuples_checked += 1;
        let formula = (w, t.rem_euclid(w));
        let measured = simulate_transits(&tuple).and_then(|path| measure_w_t(&path));
        if measured.as_ref() != Ok(&formula) {
            mismatches.push(DiagramMismatch {
                tuple,
                formula,
                measured,
            });
        }
    }
    DiagramReport {
        tuples_checked,
        mismatches,
    }
}

/// All tuples with `p ≤ max_p`, `k ≤ max_k` and a terminal position in
/// `{1, q, p-q, p-1}`.
pub fn tuples_by_k(max_p: i64, max_k: i64) -> Vec<AllowableTuple> {
    coprime_slopes(max_p)
        .into_iter()
        .flat_map(|s| {
            crate::classify::terminal_positions(&s)
                .into_iter()
                .flat_map(move |x| {
                    (0..=max_k).flat_map(move |k| {
                        let signs: &'static [i64] = if k == 0 { &[1] } else { &[1, -1] };
                        signs.iter().map(move |&eps| {
                            AllowableTuple::new(s.p(), s.q(), k, x, eps).expect("allowable")
                        })
                    })
                })
        })
        .collect()
}

/// All tuples with a terminal position in `{1, q, p-q, p-1}` and `w ≤ max_w`.
pub fn tuples_by_w(max_w: i64) -> Vec<AllowableTuple> {
    coprime_slopes(max_w + 1)
        .into_iter()
        .flat_map(|s| terminal_tuples(s, max_w))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tuple(p: i64, q: i64, k: i64, x: i64, eps: i64) -> AllowableTuple {
        AllowableTuple::new(p, q, k, x, eps).unwrap()
    }

    fn slope(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    #[test]
    fn filling_map_examples() {
        let map = build_filling_map(7).unwrap();
        let k724 = Braid::new(7, 2, 4).unwrap();
        assert_eq!(
            map.slopes(&k724),
            vec![slope(3, 2), slope(5, 3), slope(8, 5)]
        );

        let map = build_filling_map(8).unwrap();
        assert!(!map.entries.contains_key(&Braid::new(8, 3, 6).unwrap()));

        let map = build_filling_map(4).unwrap();
        let k412 = Braid::new(4, 1, 2).unwrap();
        assert_eq!(map.slopes(&k412), vec![slope(3, 2), slope(5, 3)]);
    }

    #[test]
    fn filling_map_guard() {
        assert!(build_filling_map(2).is_err());
        assert!(build_filling_map(201).is_err());
        assert!(check_equivalence(2).is_err());
    }

    #[test]
    fn equivalence_small() {
        let report = check_equivalence(10).unwrap();
        assert_eq!(report.triples_checked, 240);
        assert!(report.passed(), "{:?}", report.mismatches);

        let report = check_equivalence(3).unwrap();
        assert_eq!(report.triples_checked, 2);
        assert!(report.passed());
    }

    #[test]
    fn transit_single_crossing() {
        let path = simulate_transits(&tuple(3, 2, 0, 2, 1)).unwrap();
        assert_eq!(path.positions.len(), 1);
        // 1/2 + (2 + 1/4) = 11/4, inside R_2 = (2, 3)
        assert_eq!(path.positions[0], Rational64::new(11, 4));
        assert!(path.end_pos > Rational64::from_integer(2));
        assert!(path.end_pos < Rational64::from_integer(3));
    }

    #[test]
    fn transit_counts() {
        let path = simulate_transits(&tuple(5, 3, 1, 1, 1)).unwrap();
        assert_eq!(path.positions.len(), 7);
        let fractional: Vec<_> = path.positions.iter().map(|r| r.fract()).collect();
        assert!(fractional.windows(2).all(|w| w[0] < w[1]));

        let path = simulate_transits(&tuple(2, 1, 1, 1, 1)).unwrap();
        assert_eq!(path.positions.len(), 3);
    }

    #[test]
    fn measure_examples() {
        for t in [
            tuple(3, 2, 2, 2, -1),
            tuple(5, 3, 1, 1, 1),
            tuple(8, 5, 0, 3, 1),
        ] {
            let path = simulate_transits(&t).unwrap();
            assert_eq!(measure_w_t(&path), Ok((7, 4)), "tuple {t}");
        }
    }

    #[test]
    fn successive_transits_step_by_q_plus_offset() {
        let path = simulate_transits(&tuple(8, 5, 2, 3, -1)).unwrap();
        let step = Rational64::from_integer(5) + path.offset;
        let mut prev = path.start_pos;
        for &pos in &path.positions {
            assert_eq!(pos, reduce(prev + step, 8));
            prev = pos;
        }
        let x = Rational64::from_integer(3);
        assert!(x < path.end_pos && path.end_pos < x + 1);
    }

    #[test]
    fn phi_sweep_small() {
        let report = check_phi_closed_forms(30);
        assert!(report.passed(), "{:?}", report.mismatches);
    }
}
