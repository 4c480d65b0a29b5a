//! Which Dehn fillings on the outer torus of `K(w, b, t)` give a solid torus.
//!
//! Two directions are provided:
//!
//! * [`tuple_to_braid`] turns an allowable 5-tuple `(p, q, k, x, ε)` into its
//!   braid parameters, `w = kp + q̄_x`, `t = kq + φ(x, q)`,
//!   `b = k(x + ε) + φ(x, x)`.
//! * [`fillings_of`] goes the other way for a fixed braid. Only terminal
//!   positions `x ∈ {1, q, p-q, p-1}` matter, and each of them collapses to a
//!   closed-form condition on `(w, b, t)`:
//!
//!   1. `qw - pt = 1` with `p, q < w`, and `b = 2⌊w/p⌋`;
//!   2. `k = gcd(w-1, t)`, `p = (w-1)/k`, `q = t/k`, and `b = k(q ± 1)`;
//!   3. `k = gcd(w+1, t+1) - 1`, `p = (w+1)/(k+1)`, `q = (t+1)/(k+1)`, and
//!      `b = k(p-q+ε) + (p-q-1)` with `ε = 1` forced when `k = 0`;
//!   4. `p(t+1) - qw = 1` with `p, q < w`, and `b = ⌊w/p⌋(p-2) + (p-q̄-1)`.
//!
//! [`knots_for_slope`] enumerates the braids admitting a given slope.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::braids::{AllowableTuple, Braid, Slope, MAX_WINDING};
use crate::error::{guard, Result};
use crate::residues::{bar_pair, gcd, mod_inverse, phi_direct, q_bar_x};

/// Which of the four closed-form conditions certified a slope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FillingCase {
    /// `x = 1`
    One,
    /// `x = q`
    Two,
    /// `x = p - q`
    Three,
    /// `x = p - 1`
    Four,
}

impl FillingCase {
    pub fn number(self) -> u8 {
        match self {
            FillingCase::One => 1,
            FillingCase::Two => 2,
            FillingCase::Three => 3,
            FillingCase::Four => 4,
        }
    }

    /// The terminal position `x` this case corresponds to.
    pub fn terminal_position(self, slope: &Slope) -> i64 {
        let (p, q) = (slope.p(), slope.q());
        match self {
            FillingCase::One => 1,
            FillingCase::Two => q,
            FillingCase::Three => p - q,
            FillingCase::Four => p - 1,
        }
    }
}

impl fmt::Display for FillingCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case {}", self.number())
    }
}

impl Serialize for FillingCase {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u8(self.number())
    }
}

/// One certificate for a solid torus filling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FillingWitness {
    pub case: FillingCase,
    pub eps: i64,
    pub tuple: AllowableTuple,
}

/// A slope together with every case that certifies it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Filling {
    pub slope: Slope,
    pub witnesses: Vec<FillingWitness>,
}

impl Filling {
    pub fn cases(&self) -> impl Iterator<Item = FillingCase> + '_ {
        self.witnesses.iter().map(|w| w.case)
    }
}

/// What an allowable tuple turns into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TupleImage {
    Braid {
        braid: Braid,
    },
    /// Parameters outside the 1-bridge braid range (0-bridge knots, `t = 0`,
    /// or `w < 3`).
    Degenerate {
        w: i64,
        b: i64,
        t: i64,
        bound: &'static str,
    },
}

impl TupleImage {
    pub fn braid(&self) -> Option<Braid> {
        match *self {
            TupleImage::Braid { braid } => Some(braid),
            TupleImage::Degenerate { .. } => None,
        }
    }

    /// Raw `(w, b, t)` whether or not it is a valid braid.
    pub fn params(&self) -> (i64, i64, i64) {
        match *self {
            TupleImage::Braid { braid } => (braid.w(), braid.b(), braid.t()),
            TupleImage::Degenerate { w, b, t, .. } => (w, b, t),
        }
    }
}

/// Raw `(w, b, t)` of an allowable tuple, before any range check.
pub fn tuple_params(tuple: &AllowableTuple) -> (i64, i64, i64) {
    let (p, q, k, x, eps) = (tuple.p(), tuple.q(), tuple.k(), tuple.x(), tuple.eps());
    // An allowable tuple always satisfies the residue preconditions.
    let w = k * p + q_bar_x(p, q, x).expect("allowable tuple");
    let t = k * q + phi_direct(p, q, x, q).expect("allowable tuple");
    let b = k * (x + eps) + phi_direct(p, q, x, x).expect("allowable tuple");
    (w, b, t)
}

pub fn tuple_to_braid(tuple: &AllowableTuple) -> TupleImage {
    let (w, b, t) = tuple_params(tuple);
    match Braid::violated_bound(w, b, t) {
        None => TupleImage::Braid {
            braid: Braid::exact(w, b, t).expect("bounds checked"),
        },
        Some(bound) => TupleImage::Degenerate { w, b, t, bound },
    }
}

/// The distinct terminal positions `{1, q, p-q, p-1}` for a slope.
pub fn terminal_positions(slope: &Slope) -> BTreeSet<i64> {
    let (p, q) = (slope.p(), slope.q());
    [1, q, p - q, p - 1].into_iter().collect()
}

/// Every allowable tuple for `slope` with a terminal position in
/// `{1, q, p-q, p-1}` and `w = kp + q̄_x ≤ max_w`. Ordered by `x`, then `k`,
/// then `ε = +1` before `ε = -1`.
pub fn terminal_tuples(slope: Slope, max_w: i64) -> impl Iterator<Item = AllowableTuple> {
    let (p, q) = (slope.p(), slope.q());
    terminal_positions(&slope).into_iter().flat_map(move |x| {
        let start = q_bar_x(p, q, x).expect("slope is coprime");
        let k_max = if start > max_w {
            -1
        } else {
            (max_w - start) / p
        };
        (0..=k_max).flat_map(move |k| {
            let signs: &'static [i64] = if k == 0 { &[1] } else { &[1, -1] };
            signs
                .iter()
                .map(move |&eps| AllowableTuple::new(p, q, k, x, eps).expect("allowable"))
        })
    })
}

/// All slopes `p/q` for which filling `K(w, b, t)` along `p/q` yields a solid
/// torus, sorted by `(p, q)`. Connectivity is not checked here.
pub fn fillings_of(braid: &Braid) -> Vec<Filling> {
    let mut found: BTreeMap<Slope, Vec<FillingWitness>> = BTreeMap::new();
    let mut record = |case, eps, tuple: AllowableTuple| {
        found
            .entry(tuple.slope())
            .or_default()
            .push(FillingWitness { case, eps, tuple });
    };
    let (w, b, t) = (braid.w(), braid.b(), braid.t());

    // qw - pt = 1  ⇔  p ≡ -t⁻¹ (mod w)
    if let Some(inv) = mod_inverse(t, w) {
        let p = (-inv).rem_euclid(w);
        let num = 1 + p * t;
        if p >= 2 && num % w == 0 {
            let q = num / w;
            let k = w / p;
            if 0 < q && q < p && b == 2 * k {
                let tuple = AllowableTuple::new(p, q, k, 1, 1).expect("case 1 tuple");
                record(FillingCase::One, 1, tuple);
            }
        }
    }

    let k = gcd(w - 1, t);
    let (p, q) = ((w - 1) / k, t / k);
    if p > q {
        for eps in [1, -1] {
            if b == k * (q + eps) {
                let tuple = AllowableTuple::new(p, q, k, q, eps).expect("case 2 tuple");
                record(FillingCase::Two, eps, tuple);
            }
        }
    }

    let k = gcd(w + 1, t + 1) - 1;
    let (p, q) = ((w + 1) / (k + 1), (t + 1) / (k + 1));
    if p > q {
        let signs: &[i64] = if k == 0 { &[1] } else { &[1, -1] };
        for &eps in signs {
            if b == k * (p - q + eps) + (p - q - 1) {
                let tuple = AllowableTuple::new(p, q, k, p - q, eps).expect("case 3 tuple");
                record(FillingCase::Three, eps, tuple);
            }
        }
    }

    // p(t+1) - qw = 1  ⇔  p ≡ (t+1)⁻¹ (mod w)
    if let Some(p) = mod_inverse(t + 1, w) {
        let num = p * (t + 1) - 1;
        if p >= 2 && num % w == 0 {
            let q = num / w;
            if 0 < q && q < p {
                let bars = bar_pair(p, q).expect("p(t+1) - qw = 1 forces coprimality");
                let k = w / p;
                if b == k * (p - 2) + (p - bars.q_bar - 1) {
                    let tuple = AllowableTuple::new(p, q, k, p - 1, -1).expect("case 4 tuple");
                    record(FillingCase::Four, -1, tuple);
                }
            }
        }
    }

    found
        .into_iter()
        .map(|(slope, mut witnesses)| {
            witnesses.sort();
            Filling { slope, witnesses }
        })
        .collect()
}

/// Just the slopes of [`fillings_of`].
pub fn filling_slopes(braid: &Braid) -> Vec<Slope> {
    fillings_of(braid).into_iter().map(|f| f.slope).collect()
}

/// Every valid braid with `w ≤ max_w` admitting a solid torus filling along
/// `slope`, each paired with the first tuple that produced it. Sorted by
/// `(w, b, t)`.
pub fn knots_for_slope(slope: Slope, max_w: i64) -> Result<Vec<(Braid, AllowableTuple)>> {
    guard(max_w, 3, MAX_WINDING)?;
    let mut out: BTreeMap<Braid, AllowableTuple> = BTreeMap::new();
    for tuple in terminal_tuples(slope, max_w) {
        if let Some(braid) = tuple_to_braid(&tuple).braid() {
            out.entry(braid).or_insert(tuple);
        }
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn braid(w: i64, b: i64, t: i64) -> Braid {
        Braid::new(w, b, t).unwrap()
    }

    fn slopes(list: &[(i64, i64)]) -> Vec<Slope> {
        list.iter()
            .map(|&(p, q)| Slope::new(p, q).unwrap())
            .collect()
    }

    #[test]
    fn tuple_to_braid_examples() {
        let cases = [(3, 2, 2, 2, -1), (5, 3, 1, 1, 1), (8, 5, 0, 3, 1)];
        for (p, q, k, x, eps) in cases {
            let tuple = AllowableTuple::new(p, q, k, x, eps).unwrap();
            assert_eq!(tuple_to_braid(&tuple).braid(), Some(braid(7, 2, 4)));
        }
    }

    #[test]
    fn tuple_to_braid_reports_degenerate() {
        // b = w - 1: a 0-bridge knot
        let tuple = AllowableTuple::new(2, 1, 1, 1, 1).unwrap();
        assert_eq!(
            tuple_to_braid(&tuple),
            TupleImage::Degenerate {
                w: 3,
                b: 2,
                t: 1,
                bound: crate::braids::BOUND_B
            }
        );
        let tiny = AllowableTuple::new(3, 2, 0, 2, 1).unwrap();
        assert!(matches!(
            tuple_to_braid(&tiny),
            TupleImage::Degenerate { w: 1, .. }
        ));
    }

    #[test]
    fn fillings_of_examples() {
        assert_eq!(
            filling_slopes(&braid(7, 2, 4)),
            slopes(&[(3, 2), (5, 3), (8, 5)])
        );
        assert!(fillings_of(&braid(8, 3, 6)).is_empty());
        assert_eq!(filling_slopes(&braid(6, 2, 3)), slopes(&[(5, 3), (7, 4)]));
        assert_eq!(filling_slopes(&braid(9, 4, 2)), slopes(&[(4, 1)]));
    }

    #[test]
    fn witnesses_match_their_case() {
        for f in fillings_of(&braid(7, 2, 4)) {
            for wit in &f.witnesses {
                assert_eq!(wit.tuple.slope(), f.slope);
                assert_eq!(wit.tuple.x(), wit.case.terminal_position(&f.slope));
                assert_eq!(wit.tuple.eps(), wit.eps);
                assert_eq!(tuple_to_braid(&wit.tuple).braid(), Some(braid(7, 2, 4)));
            }
        }
    }

    #[test]
    fn shared_slope_merges_cases() {
        // 3/1 on K(4, 2, 1) arises from both x = 1 and x = q.
        let fillings = fillings_of(&braid(4, 2, 1));
        let three_one = fillings
            .iter()
            .find(|f| f.slope == Slope::new(3, 1).unwrap())
            .unwrap();
        let cases: Vec<_> = three_one.cases().collect();
        assert_eq!(cases, vec![FillingCase::One, FillingCase::Two]);
    }

    #[test]
    fn knots_for_slope_examples() {
        let s31 = knots_for_slope(Slope::new(3, 1).unwrap(), 8).unwrap();
        let braids: Vec<_> = s31.iter().map(|(b, _)| *b).collect();
        assert!(braids.contains(&braid(5, 2, 1)));
        assert!(braids.contains(&braid(8, 3, 2)));

        let s32 = knots_for_slope(Slope::new(3, 2).unwrap(), 7).unwrap();
        let braids: Vec<_> = s32.iter().map(|(b, _)| *b).collect();
        for expected in [braid(4, 1, 2), braid(5, 2, 3), braid(7, 2, 4)] {
            assert!(braids.contains(&expected), "missing {expected}");
        }
        assert!(braids.windows(2).all(|w| w[0] < w[1]));

        assert!(knots_for_slope(Slope::new(2, 1).unwrap(), 40)
            .unwrap()
            .is_empty());
        assert!(knots_for_slope(Slope::new(3, 1).unwrap(), 2).is_err());
    }
}
