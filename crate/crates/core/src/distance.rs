//! Distance sets Δ(E) over F_p and F_{p^2}.
//!
//! The brute-force pair loop is the oracle of record; Cartesian powers A^d
//! take the fast path through the squared-difference set and d-fold sumsets,
//! which must agree with brute force bit-exactly.

use crate::error::{Error, Result};
use crate::field::Ctx;
use crate::fset::FSet;

/// Dimension cap for point sets.
pub const MAX_DIM: usize = 12;
/// Brute-force guard: |E|^2 pairs beyond this need an explicit override.
pub const MAX_BRUTE_PAIRS: u128 = 100_000_000;
/// Cap on materializing A^d as explicit points.
pub const MAX_PRODUCT_POINTS: u128 = 10_000_000;

/// A deduplicated list of d-dimensional points with coordinates in the field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    ctx: Ctx,
    dim: usize,
    coords: Vec<u64>, // row-major, len * dim
}

impl PointSet {
    pub fn new(ctx: &Ctx, dim: usize, points: Vec<Vec<u64>>) -> Result<PointSet> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidArgument(format!(
                "dimension {dim} outside 1..={MAX_DIM}"
            )));
        }
        let order = ctx.order();
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(points.len());
        for pt in points {
            if pt.len() != dim {
                return Err(Error::DimensionMismatch(pt.len(), dim));
            }
            for &c in &pt {
                if c >= order {
                    return Err(Error::InvalidArgument(format!(
                        "coordinate {c} out of range for field of order {order}"
                    )));
                }
            }
            rows.push(pt);
        }
        rows.sort_unstable();
        rows.dedup();
        let mut coords = Vec::with_capacity(rows.len() * dim);
        for row in rows {
            coords.extend(row);
        }
        Ok(PointSet {
            ctx: ctx.clone(),
            dim,
            coords,
        })
    }

    /// E = A^d, materialized.
    pub fn from_product(a: &FSet, d: usize) -> Result<PointSet> {
        if a.is_empty() {
            return Err(Error::EmptySet("point-set base"));
        }
        if d == 0 || d > MAX_DIM {
            return Err(Error::InvalidArgument(format!(
                "dimension {d} outside 1..={MAX_DIM}"
            )));
        }
        let count = (a.card() as u128)
            .checked_pow(d as u32)
            .ok_or_else(|| Error::SizeCapExceeded("|A|^d overflows".into()))?;
        if count > MAX_PRODUCT_POINTS {
            return Err(Error::SizeCapExceeded(format!(
                "|A|^d = {count} exceeds the {MAX_PRODUCT_POINTS}-point cap"
            )));
        }
        let elems = a.elems();
        let mut coords = Vec::with_capacity((count as usize) * d);
        let mut idx = vec![0usize; d];
        loop {
            for &i in &idx {
                coords.push(elems[i]);
            }
            let mut j = d;
            loop {
                if j == 0 {
                    return Ok(PointSet {
                        ctx: a.ctx().clone(),
                        dim: d,
                        coords,
                    });
                }
                j -= 1;
                idx[j] += 1;
                if idx[j] < elems.len() {
                    break;
                }
                idx[j] = 0;
            }
        }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[u64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter_points(&self) -> impl Iterator<Item = &[u64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    /// E + v, the translate of every point by `v`.
    pub fn translate(&self, v: &[u64]) -> Result<PointSet> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(v.len(), self.dim));
        }
        let pts = self
            .iter_points()
            .map(|pt| {
                pt.iter()
                    .zip(v)
                    .map(|(&x, &s)| self.ctx.add(x, s))
                    .collect()
            })
            .collect();
        PointSet::new(&self.ctx, self.dim, pts)
    }
}

/// ||x - y|| = (x1-y1)^2 + ... + (xd-yd)^2 in the given field.
pub fn distance(ctx: &Ctx, x: &[u64], y: &[u64]) -> Result<u64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(x.len(), y.len()));
    }
    let mut acc = 0u64;
    for (&a, &b) in x.iter().zip(y) {
        acc = ctx.add(acc, ctx.sqr(ctx.sub(a, b)));
    }
    Ok(acc)
}

/// Exact Δ(E) over all pairs; rejects |E|^2 beyond the pair guard.
pub fn distance_set_bruteforce(e: &PointSet) -> Result<FSet> {
    distance_set_bruteforce_with(e, false)
}

/// As above, with `allow_large` overriding the pair guard.
pub fn distance_set_bruteforce_with(e: &PointSet, allow_large: bool) -> Result<FSet> {
    if e.is_empty() {
        return Err(Error::EmptySet("point set"));
    }
    let n = e.len() as u128;
    if n * n > MAX_BRUTE_PAIRS && !allow_large {
        return Err(Error::SizeCapExceeded(format!(
            "|E|^2 = {} exceeds the {MAX_BRUTE_PAIRS}-pair guard",
            n * n
        )));
    }
    let ctx = &e.ctx;
    let mut out = FSet::empty(ctx);
    out.insert(0); // x = y pairs
    for i in 0..e.len() {
        let pi = e.point(i);
        for j in (i + 1)..e.len() {
            let mut acc = 0u64;
            for (&a, &b) in pi.iter().zip(e.point(j)) {
                acc = ctx.add(acc, ctx.sqr(ctx.sub(a, b)));
            }
            out.insert(acc);
        }
    }
    Ok(out)
}

/// E = A^d for A a subset of the prime field.
#[derive(Debug, Clone)]
pub struct ProductSpec {
    pub a: FSet,
    pub d: usize,
}

impl ProductSpec {
    pub fn new(a: FSet, d: usize) -> Result<ProductSpec> {
        if a.is_empty() {
            return Err(Error::EmptySet("product-spec base"));
        }
        if d == 0 || d > MAX_DIM {
            return Err(Error::InvalidArgument(format!(
                "dimension {d} outside 1..={MAX_DIM}"
            )));
        }
        Ok(ProductSpec { a, d })
    }
}

/// Δ(A^d) = the d-fold sumset of D(A); bit-exact equal to brute force.
pub fn distance_set_product(spec: &ProductSpec) -> Result<FSet> {
    let d_a = spec.a.squared_difference_set()?;
    d_a.k_fold_sumset(spec.d as u32)
}

/// Δ(E) for a point set over the quadratic extension.
pub fn distance_set_ext(e: &PointSet) -> Result<FSet> {
    e.ctx.as_ext()?;
    distance_set_bruteforce(e)
}
