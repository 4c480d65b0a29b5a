//! Parameter triples `K(w, b, t)`, slopes, allowable 5-tuples, braid words
//! and closure connectivity.
//!
//! A triple names the closure of `σ_b ⋯ σ_1 (σ_{w-1} ⋯ σ_1)^t` on `w`
//! strands. The strand permutation of the closure is taken as
//! `π = γ_b ∘ ρ^t`, where `ρ(i) = i + 1 (mod w)` and `γ_b` is the cycle
//! `1 → 2 → ⋯ → b+1 → 1`; the closure is a knot iff `π` is one `w`-cycle.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::residues::{gcd, MAX_MODULUS};

/// Largest winding number accepted anywhere in the crate.
pub const MAX_WINDING: i64 = 1_000_000;

pub const BOUND_W: &str = "3 ≤ w ≤ 1000000";
pub const BOUND_B: &str = "1 ≤ b ≤ w−2";
pub const BOUND_T: &str = "1 ≤ t ≤ w−1";

#[derive(Deserialize)]
struct BraidParams {
    w: i64,
    b: i64,
    t: i64,
}

/// A 1-bridge braid `K(w, b, t)` with `1 ≤ b ≤ w-2` and `1 ≤ t ≤ w-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "BraidParams")]
pub struct Braid {
    w: i64,
    b: i64,
    t: i64,
}

impl TryFrom<BraidParams> for Braid {
    type Error = Error;

    fn try_from(raw: BraidParams) -> Result<Self> {
        Braid::exact(raw.w, raw.b, raw.t)
    }
}

impl Braid {
    /// Builds a braid, reducing the twist into `0..w` first (twisting along a
    /// meridian disk changes `t` by multiples of `w`).
    pub fn new(w: i64, b: i64, t: i64) -> Result<Self> {
        if !(3..=MAX_WINDING).contains(&w) {
            return Err(Error::InvalidBraid {
                w,
                b,
                t,
                bound: BOUND_W,
            });
        }
        Braid::exact(w, b, t.rem_euclid(w))
    }

    /// Builds a braid without twist normalization.
    pub fn exact(w: i64, b: i64, t: i64) -> Result<Self> {
        match Braid::violated_bound(w, b, t) {
            None => Ok(Braid { w, b, t }),
            Some(bound) => Err(Error::InvalidBraid { w, b, t, bound }),
        }
    }

    /// The first bound the raw triple violates, if any.
    pub fn violated_bound(w: i64, b: i64, t: i64) -> Option<&'static str> {
        if !(3..=MAX_WINDING).contains(&w) {
            Some(BOUND_W)
        } else if !(1..=w - 2).contains(&b) {
            Some(BOUND_B)
        } else if !(1..w).contains(&t) {
            Some(BOUND_T)
        } else {
            None
        }
    }

    pub fn w(&self) -> i64 {
        self.w
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    /// Every valid triple with `3 ≤ w ≤ max_w`, in lexicographic order.
    pub fn all_up_to(max_w: i64) -> impl Iterator<Item = Braid> {
        (3..=max_w).flat_map(Braid::all_with_winding)
    }

    /// Every valid triple with winding number `w`, in lexicographic order.
    pub fn all_with_winding(w: i64) -> impl Iterator<Item = Braid> {
        (1..=w - 2).flat_map(move |b| (1..w).map(move |t| Braid { w, b, t }))
    }
}

impl fmt::Display for Braid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K({}, {}, {})", self.w, self.b, self.t)
    }
}

#[derive(Deserialize)]
struct SlopeParams {
    p: i64,
    q: i64,
}

/// A `(p, q)` curve on the outer torus with `p > q > 0` and `gcd(p, q) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "SlopeParams")]
pub struct Slope {
    p: i64,
    q: i64,
}

impl TryFrom<SlopeParams> for Slope {
    type Error = Error;

    fn try_from(raw: SlopeParams) -> Result<Self> {
        Slope::new(raw.p, raw.q)
    }
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if !(q > 0 && p > q) {
            return Err(Error::InvalidSlope {
                p,
                q,
                bound: "p > q > 0",
            });
        }
        if p > MAX_MODULUS {
            return Err(Error::InvalidSlope {
                p,
                q,
                bound: "p ≤ 1000001",
            });
        }
        if gcd(p, q) != 1 {
            return Err(Error::InvalidSlope {
                p,
                q,
                bound: "gcd(p, q) = 1",
            });
        }
        Ok(Slope { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSlope {
            p: 0,
            q: 0,
            bound: "text of the form p/q",
        };
        let (p, q) = s.trim().split_once('/').ok_or_else(bad)?;
        let p = p.trim().parse().map_err(|_| bad())?;
        let q = q.trim().parse().map_err(|_| bad())?;
        Slope::new(p, q)
    }
}

#[derive(Deserialize)]
struct TupleParams {
    p: i64,
    q: i64,
    k: i64,
    x: i64,
    eps: i64,
}

/// An allowable 5-tuple `(p, q, k, x, ε)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "TupleParams")]
pub struct AllowableTuple {
    p: i64,
    q: i64,
    k: i64,
    x: i64,
    eps: i64,
}

impl TryFrom<TupleParams> for AllowableTuple {
    type Error = Error;

    fn try_from(raw: TupleParams) -> Result<Self> {
        AllowableTuple::new(raw.p, raw.q, raw.k, raw.x, raw.eps)
    }
}

impl AllowableTuple {
    pub fn new(p: i64, q: i64, k: i64, x: i64, eps: i64) -> Result<Self> {
        let clause = if !(q > 0 && p > q) || gcd(p, q) != 1 {
            Some("(1) p > q > 0 and gcd(p, q) = 1")
        } else if p > MAX_MODULUS || k > MAX_WINDING {
            Some("p ≤ 1000001 and k ≤ 1000000")
        } else if k < 0 {
            Some("(2) k ≥ 0")
        } else if !(0..p).contains(&x) {
            Some("(3) p > x ≥ 0")
        } else if k == 0 && eps != 1 {
            Some("(4) ε = 1 if k = 0")
        } else if eps != 1 && eps != -1 {
            Some("(4) ε ∈ {1, −1} if k > 0")
        } else {
            None
        };
        match clause {
            Some(clause) => Err(Error::NotAllowable { clause }),
            None => Ok(AllowableTuple { p, q, k, x, eps }),
        }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn x(&self) -> i64 {
        self.x
    }

    pub fn eps(&self) -> i64 {
        self.eps
    }

    pub fn slope(&self) -> Slope {
        Slope {
            p: self.p,
            q: self.q,
        }
    }
}

impl fmt::Display for AllowableTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {}, {})",
            self.p, self.q, self.k, self.x, self.eps
        )
    }
}

/// Generator indices of `σ_b ⋯ σ_1 (σ_{w-1} ⋯ σ_1)^t`. All positive.
pub fn braid_word(braid: &Braid) -> Vec<i64> {
    let w = braid.w;
    let mut word = Vec::with_capacity((braid.b + braid.t * (w - 1)) as usize);
    word.extend((1..=braid.b).rev());
    for _ in 0..braid.t {
        word.extend((1..w).rev());
    }
    word
}

/// The braid word as a JSON array of signed generator indices.
pub fn braid_word_json(braid: &Braid) -> String {
    serde_json::to_string(&braid_word(braid)).expect("integer arrays always serialize")
}

/// A permutation of `{1, ..., n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    // images[i - 1] = π(i)
    images: Vec<usize>,
}

impl Permutation {
    /// From the image list `[π(1), ..., π(n)]`; `None` unless it is a bijection
    /// onto `1..=n`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img == 0 || img > n || seen[img - 1] {
                return None;
            }
            seen[img - 1] = true;
        }
        Some(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "degree mismatch");
        Permutation {
            images: other.images.iter().map(|&i| self.apply(i)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Disjoint cycles including fixed points, each starting at its smallest
    /// element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if seen[start - 1] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i - 1] {
                seen[i - 1] = true;
                cycle.push(i);
                i = self.apply(i);
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Cycle lengths in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lengths: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            let parts: Vec<String> = cycle.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Strand permutation of the closure: `π(i) = γ_b(ρ^t(i))`.
pub fn closure_permutation(braid: &Braid) -> Permutation {
    let w = braid.w as usize;
    let b = braid.b as usize;
    let t = braid.t as usize;
    let images = (1..=w)
        .map(|i| {
            let shifted = (i - 1 + t) % w + 1;
            match shifted {
                j if j <= b => j + 1,
                j if j == b + 1 => 1,
                j => j,
            }
        })
        .collect();
    Permutation { images }
}

/// Number of components of the closure.
pub fn components(braid: &Braid) -> usize {
    closure_permutation(braid).cycles().len()
}

pub fn is_knot(braid: &Braid) -> bool {
    components(braid) == 1
}

/// Result of the orientation-reversing mirror on parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MirrorImage {
    InRange {
        braid: Braid,
    },
    /// The mirrored twist reduces to `0`.
    OutOfRange {
        w: i64,
        b: i64,
        t: i64,
    },
}

/// `K(w, b, t) ↦ K(w, w-b-1, w-t-1)`. An involution on triples; the twist
/// leaves `1..w` only when `t = w-1`.
pub fn mirror(braid: &Braid) -> MirrorImage {
    let w = braid.w;
    let b = w - braid.b - 1;
    let t = (w - braid.t - 1).rem_euclid(w);
    match Braid::exact(w, b, t) {
        Ok(braid) => MirrorImage::InRange { braid },
        Err(_) => MirrorImage::OutOfRange { w, b, t },
    }
}

/// `(p, q) ↦ (p, p-q)`.
pub fn mirror_slope(slope: &Slope) -> Slope {
    Slope {
        p: slope.p,
        q: slope.p - slope.q,
    }
}

/// One representative per mirror pair: `b < w/2`, and `t < w/2` when
/// `b = (w-1)/2`.
pub fn is_canonical(braid: &Braid) -> bool {
    let Braid { w, b, t } = *braid;
    2 * b < w && (2 * b != w - 1 || 2 * t < w)
}
