//! Explicit constructions: antisymmetric splits of a set, nested split
//! pairs, the disjoint-difference quotient check, and the two sharpness
//! examples over the quadratic extension (subfield product, isotropic line).

use crate::distance::PointSet;
use crate::error::{Error, Result};
use crate::field::Ctx;
use crate::fset::FSet;

/// X subset of S \ {0} with X and -X disjoint and |X| >= |S \ {0}| / 2.
///
/// Deterministic rule: for each pair {t, -t}, keep the smaller canonical
/// index when both are present, or whichever one is. Returns the empty set
/// when S has no nonzero element (downstream checks are then vacuous).
pub fn antisymmetric_split(s: &FSet) -> FSet {
    let ctx = s.ctx();
    let mut out = FSet::empty(ctx);
    for x in s.iter() {
        if x == 0 {
            continue;
        }
        let y = ctx.neg(x);
        if !s.contains(y) || x < y {
            out.insert(x);
        }
    }
    out
}

/// B inside C, both antisymmetric, each capturing at least half of its
/// source's nonzero elements.
#[derive(Debug, Clone)]
pub struct SplitPair {
    pub b: FSet,
    pub c: FSet,
}

/// Builds B = split(S_small) and extends it to C over S_big, preferring the
/// pair member already in B so that B stays inside C.
pub fn nested_antisymmetric_pair(s_small: &FSet, s_big: &FSet) -> Result<SplitPair> {
    s_small.ctx().ensure_same(s_big.ctx())?;
    if !s_small.is_subset_of(s_big)? {
        return Err(Error::InvalidArgument(
            "nested split needs S_small to be a subset of S_big".into(),
        ));
    }
    let ctx = s_big.ctx();
    let b = antisymmetric_split(s_small);
    let mut c = FSet::empty(ctx);
    for x in s_big.iter() {
        if x == 0 {
            continue;
        }
        let y = ctx.neg(x);
        if !s_big.contains(y) {
            c.insert(x);
        } else if b.contains(x) {
            c.insert(x);
        } else if b.contains(y) {
            // the mirror will be inserted when y is visited
        } else if x < y {
            c.insert(x);
        }
    }
    Ok(SplitPair { b, c })
}

/// Size of (B-C)/(B-C) against the q/3 target, for disjoint B and C.
#[derive(Debug, Clone, Copy)]
pub struct BalogReport {
    pub diff_quotient_size: u64,
    pub target: u64,
    pub passes_q_over_3: bool,
}

pub fn balog_quotient_check(b: &FSet, c: &FSet) -> Result<BalogReport> {
    b.ctx().ensure_same(c.ctx())?;
    if b.is_empty() || c.is_empty() {
        return Err(Error::EmptySet("quotient-check operand"));
    }
    if !b.is_disjoint_from(c)? {
        return Err(Error::InvalidArgument(
            "quotient check needs B and C disjoint".into(),
        ));
    }
    // B and C disjoint means 0 is not in B - C, so quotients are defined.
    let diff = b.difference_set(c)?;
    let quot = diff.quotient_set()?;
    let q = b.ctx().order();
    let target = (q + 2) / 3;
    let size = quot.card() as u64;
    Ok(BalogReport {
        diff_quotient_size: size,
        target,
        passes_q_over_3: size >= target,
    })
}

/// E = F_p^d embedded in F_{p^2}^d; |E| = q^(d/2) with |Δ(E)/Δ(E)| = q^(1/2).
pub fn subfield_product(p: u64, d: usize) -> Result<PointSet> {
    if d < 2 {
        return Err(Error::InvalidArgument(
            "subfield product needs dimension >= 2".into(),
        ));
    }
    let ctx = Ctx::ext(p)?;
    // base-field elements have extension index a + 0*p = a
    let base = FSet::from_elems(&ctx, 0..p)?;
    PointSet::from_product(&base, d)
}

/// E = {(t, i t) : t in F_p} with i^2 = -1; every pairwise distance is zero.
pub fn isotropic_line(p: u64) -> Result<PointSet> {
    let ctx = Ctx::prime(p)?;
    let f = ctx.as_prime()?;
    let i = f.sqrt_of_minus_one().ok_or_else(|| {
        Error::InvalidArgument(format!(
            "no square root of -1 mod {p} (p = 3 mod 4); no isotropic line exists"
        ))
    })?;
    let pts = (0..p).map(|t| vec![t, f.mul(i, t)]).collect();
    PointSet::new(&ctx, 2, pts)
}
