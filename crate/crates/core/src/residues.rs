//! Exact modular arithmetic over `Z_p = {0, 1, ..., p-1}`.
//!
//! Everything here works on non-negative representatives: the inverse pair
//! `(q̄, p̄)` with `q̄·q = p̄·p + 1`, the solution `q̄_x` of `q·q̄_x ≡ x`, the
//! residue run `S_x = {[q], [2q], ..., [q̄_x·q]}` and the counting function
//! `φ(x, y) = #{z ∈ S_x : 0 < z < y}` together with its closed forms at the
//! seven tabulated `(x, y)` positions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted by the checked entry points. Keeps every
/// intermediate product well inside `i64`.
pub const MAX_MODULUS: i64 = 1_000_001;

/// Bézout coefficients: `u·a + v·b = gcd`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bezout {
    pub gcd: i64,
    pub u: i64,
    pub v: i64,
}

/// Extended Euclid. The returned gcd is always positive.
pub fn ext_gcd(a: i64, b: i64) -> Result<Bezout> {
    if a == 0 && b == 0 {
        return Err(Error::ZeroGcd);
    }
    let (mut r0, mut r1) = (a, b);
    let (mut u0, mut u1) = (1i64, 0i64);
    let (mut v0, mut v1) = (0i64, 1i64);
    while r1 != 0 {
        let quot = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - quot * r1);
        (u0, u1) = (u1, u0 - quot * u1);
        (v0, v1) = (v1, v0 - quot * v1);
    }
    if r0 < 0 {
        (r0, u0, v0) = (-r0, -u0, -v0);
    }
    Ok(Bezout {
        gcd: r0,
        u: u0,
        v: v0,
    })
}

pub fn gcd(a: i64, b: i64) -> i64 {
    ext_gcd(a, b).map(|bz| bz.gcd).unwrap_or(0)
}

/// Inverse of `a` modulo `m` in `0..m`, if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m < 1 {
        return None;
    }
    let bz = ext_gcd(a.rem_euclid(m), m).ok()?;
    (bz.gcd == 1).then(|| bz.u.rem_euclid(m))
}

fn check_pair(p: i64, q: i64) -> Result<()> {
    if !(2..=MAX_MODULUS).contains(&p) {
        return Err(Error::OutOfRange {
            value: p,
            bound: "2 ≤ p ≤ 1000001",
        });
    }
    if !(1..p).contains(&q) {
        return Err(Error::OutOfRange {
            value: q,
            bound: "0 < q < p",
        });
    }
    if gcd(p, q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    Ok(())
}

fn check_residue(p: i64, x: i64) -> Result<()> {
    if (0..p).contains(&x) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            value: x,
            bound: "0 ≤ x < p",
        })
    }
}

/// The pair `(q̄, p̄) ∈ Z_p × Z_p` with `q̄·q = p̄·p + 1` as integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarPair {
    pub p: i64,
    pub q: i64,
    pub q_bar: i64,
    pub p_bar: i64,
}

pub fn bar_pair(p: i64, q: i64) -> Result<BarPair> {
    check_pair(p, q)?;
    let q_bar = mod_inverse(q, p).ok_or(Error::NotCoprime { p, q })?;
    let p_bar = (q_bar * q - 1) / p;
    Ok(BarPair { p, q, q_bar, p_bar })
}

/// `q̄_x ∈ Z_p` with `q·q̄_x ≡ x (mod p)`; zero exactly when `x = 0`.
pub fn q_bar_x(p: i64, q: i64, x: i64) -> Result<i64> {
    check_pair(p, q)?;
    check_residue(p, x)?;
    let q_bar = mod_inverse(q, p).ok_or(Error::NotCoprime { p, q })?;
    Ok((q_bar * x).rem_euclid(p))
}

/// `S_x` listed in generation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSet {
    pub p: i64,
    pub x: i64,
    pub q_bar_x: i64,
    pub elements: Vec<i64>,
}

pub fn residue_set(p: i64, q: i64, x: i64) -> Result<ResidueSet> {
    let q_bar_x = q_bar_x(p, q, x)?;
    let elements = (1..=q_bar_x).map(|i| (i * q).rem_euclid(p)).collect();
    Ok(ResidueSet {
        p,
        x,
        q_bar_x,
        elements,
    })
}

/// `φ(x, y)` by walking `i = 1..=q̄_x` and counting `0 < [i·q] < y`.
pub fn phi_direct(p: i64, q: i64, x: i64, y: i64) -> Result<i64> {
    let q_bar_x = q_bar_x(p, q, x)?;
    if !(0..=p).contains(&y) {
        return Err(Error::OutOfRange {
            value: y,
            bound: "0 ≤ y ≤ p",
        });
    }
    let mut z = 0;
    let mut count = 0;
    for _ in 0..q_bar_x {
        z += q;
        if z >= p {
            z -= p;
        }
        if 0 < z && z < y {
            count += 1;
        }
    }
    Ok(count)
}

/// The seven `(x, y)` positions at which `φ` has a closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PhiShape {
    /// `φ(1, 1) = 0`
    OneOne,
    /// `φ(1, q) = p̄`
    OneQ,
    /// `φ(q, q) = 0`
    QQ,
    /// `φ(p-q, p-q) = p-q-1`
    CoQCoQ,
    /// `φ(p-q, q) = q-1`
    CoQQ,
    /// `φ(p-1, p-1) = p-q̄-1`
    PredPred,
    /// `φ(p-1, q) = q-p̄-1`
    PredQ,
}

impl PhiShape {
    pub const ALL: [PhiShape; 7] = [
        PhiShape::OneOne,
        PhiShape::OneQ,
        PhiShape::QQ,
        PhiShape::CoQCoQ,
        PhiShape::CoQQ,
        PhiShape::PredPred,
        PhiShape::PredQ,
    ];

    /// The `(x, y)` arguments this shape denotes for a given `(p, q)`.
    pub fn args(self, p: i64, q: i64) -> (i64, i64) {
        match self {
            PhiShape::OneOne => (1, 1),
            PhiShape::OneQ => (1, q),
            PhiShape::QQ => (q, q),
            PhiShape::CoQCoQ => (p - q, p - q),
            PhiShape::CoQQ => (p - q, q),
            PhiShape::PredPred => (p - 1, p - 1),
            PhiShape::PredQ => (p - 1, q),
        }
    }

    pub fn value(self, bars: &BarPair) -> i64 {
        let BarPair {
            p, q, q_bar, p_bar, ..
        } = *bars;
        match self {
            PhiShape::OneOne | PhiShape::QQ => 0,
            PhiShape::OneQ => p_bar,
            PhiShape::CoQCoQ => p - q - 1,
            PhiShape::CoQQ => q - 1,
            PhiShape::PredPred => p - q_bar - 1,
            PhiShape::PredQ => q - p_bar - 1,
        }
    }
}

/// `φ(x, y)` from the closed forms; `(x, y)` must be one of the tabulated
/// shapes for this `(p, q)`.
pub fn phi_closed(p: i64, q: i64, x: i64, y: i64) -> Result<i64> {
    let bars = bar_pair(p, q)?;
    PhiShape::ALL
        .iter()
        .find(|shape| shape.args(p, q) == (x, y))
        .map(|shape| shape.value(&bars))
        .ok_or(Error::UnknownPhiShape { x, y })
}

/// `min(x, p-x)`, the jumping-number class of the terminal position `x`.
pub fn jump(p: i64, x: i64) -> Result<i64> {
    if !(1..p).contains(&x) {
        return Err(Error::OutOfRange {
            value: x,
            bound: "0 < x < p",
        });
    }
    Ok(x.min(p - x))
}
