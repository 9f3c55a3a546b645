//! Subsets of a field as bit arrays, plus exact counting convolutions.
//!
//! Set arithmetic over the prime field uses word-level bit rotation for
//! sumsets; over the quadratic extension it falls back to elementwise loops.
//! Counting convolutions have a naive quadratic path (the oracle, used below
//! a crossover) and an NTT-backed path that must agree with it exactly.

use crate::error::{Error, Result};
use crate::field::Ctx;
use crate::ntt::cyclic_convolution_exact;

/// Moduli below this run the naive quadratic convolution; larger ones go
/// through the transform.
pub const CONV_CROSSOVER: u64 = 256;

fn words_for(bits: u64) -> usize {
    ((bits + 63) / 64) as usize
}

/// Logical right shift of a bit array by `k`, keeping the word count.
fn shr_bits(src: &[u64], k: usize) -> Vec<u64> {
    let nw = src.len();
    let wk = k / 64;
    let bk = (k % 64) as u32;
    let mut out = vec![0u64; nw];
    for i in 0..nw {
        let lo = src.get(i + wk).copied().unwrap_or(0);
        if bk == 0 {
            out[i] = lo;
        } else {
            let hi = src.get(i + wk + 1).copied().unwrap_or(0);
            out[i] = (lo >> bk) | (hi << (64 - bk));
        }
    }
    out
}

/// Logical left shift by `k`, truncated to `n_bits`.
fn shl_trunc_bits(src: &[u64], k: usize, n_bits: u64) -> Vec<u64> {
    let nw = src.len();
    let wk = k / 64;
    let bk = (k % 64) as u32;
    let mut out = vec![0u64; nw];
    for i in wk..nw {
        let lo = src[i - wk];
        out[i] = if bk == 0 {
            lo
        } else {
            let hi = if i > wk { src[i - wk - 1] } else { 0 };
            (lo << bk) | (hi >> (64 - bk))
        };
    }
    let rem = (n_bits % 64) as u32;
    if rem != 0 {
        out[nw - 1] &= (1u64 << rem) - 1;
    }
    out
}

/// Cyclic left rotation of an `n_bits`-bit array: dst[(i+k) mod n] = src[i].
fn rotl_bits(src: &[u64], n_bits: u64, k: u64) -> Vec<u64> {
    let k = (k % n_bits) as usize;
    if k == 0 {
        return src.to_vec();
    }
    let mut out = shl_trunc_bits(src, k, n_bits);
    let wrap = shr_bits(src, n_bits as usize - k);
    for (o, w) in out.iter_mut().zip(&wrap) {
        *o |= w;
    }
    out
}

/// A subset of a field, stored as a bit array over canonical element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FSet {
    ctx: Ctx,
    bits: Vec<u64>,
    card: usize,
}

impl FSet {
    pub fn empty(ctx: &Ctx) -> FSet {
        FSet {
            ctx: ctx.clone(),
            bits: vec![0u64; words_for(ctx.order())],
            card: 0,
        }
    }

    pub fn full(ctx: &Ctx) -> FSet {
        let n = ctx.order();
        let mut s = FSet::empty(ctx);
        for w in s.bits.iter_mut() {
            *w = u64::MAX;
        }
        let rem = (n % 64) as u32;
        if rem != 0 {
            *s.bits.last_mut().unwrap() &= (1u64 << rem) - 1;
        }
        s.card = n as usize;
        s
    }

    pub fn from_elems<I: IntoIterator<Item = u64>>(ctx: &Ctx, elems: I) -> Result<FSet> {
        let mut s = FSet::empty(ctx);
        let n = ctx.order();
        for x in elems {
            if x >= n {
                return Err(Error::InvalidArgument(format!(
                    "element {x} out of range for field of order {n}"
                )));
            }
            s.insert(x);
        }
        Ok(s)
    }

    pub fn singleton(ctx: &Ctx, x: u64) -> Result<FSet> {
        FSet::from_elems(ctx, [x])
    }

    /// Nonzero squares of the field.
    pub fn nonzero_squares(ctx: &Ctx) -> FSet {
        let mut s = FSet::empty(ctx);
        for x in 1..ctx.order() {
            if ctx.is_square(x) {
                s.insert(x);
            }
        }
        s
    }

    pub(crate) fn insert(&mut self, x: u64) {
        let w = (x / 64) as usize;
        let b = x % 64;
        if self.bits[w] & (1 << b) == 0 {
            self.bits[w] |= 1 << b;
            self.card += 1;
        }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn card(&self) -> usize {
        self.card
    }

    pub fn is_empty(&self) -> bool {
        self.card == 0
    }

    #[inline]
    pub fn contains(&self, x: u64) -> bool {
        if x >= self.ctx.order() {
            return false;
        }
        self.bits[(x / 64) as usize] & (1 << (x % 64)) != 0
    }

    /// Elements in increasing canonical order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter().enumerate().flat_map(|(wi, &w)| {
            let base = wi as u64 * 64;
            BitIter { word: w, base }
        })
    }

    pub fn elems(&self) -> Vec<u64> {
        self.iter().collect()
    }

    pub fn is_subset_of(&self, other: &FSet) -> Result<bool> {
        self.ctx.ensure_same(&other.ctx)?;
        Ok(self
            .bits
            .iter()
            .zip(&other.bits)
            .all(|(a, b)| a & !b == 0))
    }

    pub fn is_disjoint_from(&self, other: &FSet) -> Result<bool> {
        self.ctx.ensure_same(&other.ctx)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0))
    }

    fn or_assign(&mut self, other_bits: &[u64]) {
        for (a, b) in self.bits.iter_mut().zip(other_bits) {
            *a |= b;
        }
    }

    fn recount(&mut self) {
        self.card = self.bits.iter().map(|w| w.count_ones() as usize).sum();
    }

    /// {s + t : s in S, t in T}.
    ///
    /// Over the prime field this ORs rotated copies of the larger operand's
    /// bit array, one rotation per element of the smaller operand.
    pub fn sumset(&self, other: &FSet) -> Result<FSet> {
        self.ctx.ensure_same(&other.ctx)?;
        if self.is_empty() || other.is_empty() {
            return Err(Error::EmptySet("sumset operand"));
        }
        match &self.ctx {
            Ctx::Prime(_) => {
                let (small, large) = if self.card <= other.card {
                    (self, other)
                } else {
                    (other, self)
                };
                let n = self.ctx.order();
                let mut out = FSet::empty(&self.ctx);
                for s in small.iter() {
                    out.or_assign(&rotl_bits(&large.bits, n, s));
                }
                out.recount();
                Ok(out)
            }
            Ctx::Ext(_) => {
                let mut out = FSet::empty(&self.ctx);
                for s in self.iter() {
                    for t in other.iter() {
                        out.insert(self.ctx.add(s, t));
                    }
                }
                Ok(out)
            }
        }
    }

    /// S + S + ... + S with k summands; k = 0 is rejected.
    pub fn k_fold_sumset(&self, k: u32) -> Result<FSet> {
        if k == 0 {
            return Err(Error::InvalidArgument(
                "k-fold sumset needs k >= 1".into(),
            ));
        }
        if self.is_empty() {
            return Err(Error::EmptySet("k-fold sumset operand"));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.sumset(self)?;
        }
        Ok(acc)
    }

    /// {-s : s in S}.
    pub fn negate_set(&self) -> FSet {
        let mut out = FSet::empty(&self.ctx);
        for s in self.iter() {
            out.insert(self.ctx.neg(s));
        }
        out
    }

    /// {a - b : a in A, b in B}.
    pub fn difference_set(&self, other: &FSet) -> Result<FSet> {
        self.ctx.ensure_same(&other.ctx)?;
        if self.is_empty() || other.is_empty() {
            return Err(Error::EmptySet("difference-set operand"));
        }
        self.sumset(&other.negate_set())
    }

    /// D(A) = {(a - b)^2 : a, b in A}; always contains 0.
    pub fn squared_difference_set(&self) -> Result<FSet> {
        if self.is_empty() {
            return Err(Error::EmptySet("squared-difference operand"));
        }
        let diffs = self.difference_set(self)?;
        let mut out = FSet::empty(&self.ctx);
        for x in diffs.iter() {
            out.insert(self.ctx.sqr(x));
        }
        Ok(out)
    }

    /// {s * t : s in S, t in T}.
    pub fn product_set(&self, other: &FSet) -> Result<FSet> {
        self.ctx.ensure_same(&other.ctx)?;
        if self.is_empty() || other.is_empty() {
            return Err(Error::EmptySet("product-set operand"));
        }
        let mut out = FSet::empty(&self.ctx);
        for s in self.iter() {
            for t in other.iter() {
                out.insert(self.ctx.mul(s, t));
            }
        }
        Ok(out)
    }

    /// {a / b : a, b in S, b != 0}; rejects sets with no nonzero element.
    pub fn quotient_set(&self) -> Result<FSet> {
        let has_nonzero = self.iter().any(|x| x != 0);
        if !has_nonzero {
            return Err(Error::ZeroOnlySet);
        }
        let mut out = FSet::empty(&self.ctx);
        for b in self.iter() {
            if b == 0 {
                continue;
            }
            let ib = self.ctx.inv(b)?;
            for a in self.iter() {
                out.insert(self.ctx.mul(a, ib));
            }
        }
        Ok(out)
    }

    /// Multiplicity-1 count vector over the same context.
    pub fn indicator(&self) -> CountVector {
        let mut counts = vec![0u64; self.ctx.order() as usize];
        for x in self.iter() {
            counts[x as usize] = 1;
        }
        CountVector {
            ctx: self.ctx.clone(),
            counts,
        }
    }
}

struct BitIter {
    word: u64,
    base: u64,
}

impl Iterator for BitIter {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        if self.word == 0 {
            return None;
        }
        let tz = self.word.trailing_zeros() as u64;
        self.word &= self.word - 1;
        Some(self.base + tz)
    }
}

/// Integer multiplicities per field element; totals and entries are exact,
/// with overflow reported as an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountVector {
    ctx: Ctx,
    counts: Vec<u64>,
}

impl CountVector {
    pub fn zeros(ctx: &Ctx) -> CountVector {
        CountVector {
            ctx: ctx.clone(),
            counts: vec![0u64; ctx.order() as usize],
        }
    }

    pub fn from_counts(ctx: &Ctx, counts: Vec<u64>) -> Result<CountVector> {
        if counts.len() != ctx.order() as usize {
            return Err(Error::InvalidArgument(format!(
                "count vector length {} does not match field order {}",
                counts.len(),
                ctx.order()
            )));
        }
        Ok(CountVector {
            ctx: ctx.clone(),
            counts,
        })
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    #[inline]
    pub fn get(&self, x: u64) -> u64 {
        self.counts[x as usize]
    }

    pub(crate) fn add_at(&mut self, x: u64, v: u64) -> Result<()> {
        let slot = &mut self.counts[x as usize];
        *slot = slot.checked_add(v).ok_or(Error::CountOverflow)?;
        Ok(())
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).sum()
    }

    /// Elements with nonzero multiplicity, as a set.
    pub fn support(&self) -> FSet {
        let mut s = FSet::empty(&self.ctx);
        for (x, &c) in self.counts.iter().enumerate() {
            if c > 0 {
                s.insert(x as u64);
            }
        }
        s
    }
}

/// Which convolution implementation to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvPath {
    /// Naive below [`CONV_CROSSOVER`], transform above.
    Auto,
    Naive,
    Transform,
}

fn pick_path(path: ConvPath, p: u64) -> ConvPath {
    match path {
        ConvPath::Auto => {
            if p < CONV_CROSSOVER {
                ConvPath::Naive
            } else {
                ConvPath::Transform
            }
        }
        other => other,
    }
}

/// h[t] = sum over x of f[x] * g[t - x], indices cyclic mod p.
pub fn additive_count_convolution(f: &CountVector, g: &CountVector) -> Result<CountVector> {
    additive_count_convolution_with(f, g, ConvPath::Auto)
}

pub fn additive_count_convolution_with(
    f: &CountVector,
    g: &CountVector,
    path: ConvPath,
) -> Result<CountVector> {
    f.ctx.ensure_same(&g.ctx)?;
    let prime = f.ctx.as_prime()?;
    let p = prime.p();
    match pick_path(path, p) {
        ConvPath::Naive => {
            let mut h = CountVector::zeros(&f.ctx);
            for x in 0..p {
                let fx = f.counts[x as usize];
                if fx == 0 {
                    continue;
                }
                for y in 0..p {
                    let gy = g.counts[y as usize];
                    if gy == 0 {
                        continue;
                    }
                    let t = prime.add(x, y);
                    h.add_at(t, fx.checked_mul(gy).ok_or(Error::CountOverflow)?)?;
                }
            }
            Ok(h)
        }
        ConvPath::Transform => {
            let counts = cyclic_convolution_exact(&f.counts, &g.counts)?;
            CountVector::from_counts(&f.ctx, counts)
        }
        ConvPath::Auto => unreachable!(),
    }
}

/// h[t] = sum over x*y = t of f[x] * g[y]; pairs with x = 0 or y = 0 land in
/// h[0]. The transform path reindexes nonzero entries by discrete log and
/// runs a cyclic additive convolution of length p - 1.
pub fn multiplicative_count_convolution(
    f: &CountVector,
    g: &CountVector,
) -> Result<CountVector> {
    multiplicative_count_convolution_with(f, g, ConvPath::Auto)
}

pub fn multiplicative_count_convolution_with(
    f: &CountVector,
    g: &CountVector,
    path: ConvPath,
) -> Result<CountVector> {
    f.ctx.ensure_same(&g.ctx)?;
    let prime = f.ctx.as_prime()?;
    let p = prime.p();
    match pick_path(path, p) {
        ConvPath::Naive => {
            let mut h = CountVector::zeros(&f.ctx);
            for x in 0..p {
                let fx = f.counts[x as usize];
                if fx == 0 {
                    continue;
                }
                for y in 0..p {
                    let gy = g.counts[y as usize];
                    if gy == 0 {
                        continue;
                    }
                    let t = prime.mul(x, y);
                    h.add_at(t, fx.checked_mul(gy).ok_or(Error::CountOverflow)?)?;
                }
            }
            Ok(h)
        }
        ConvPath::Transform => {
            let total_f = f.total();
            let total_g = g.total();
            let f0 = f.counts[0] as u128;
            let g0 = g.counts[0] as u128;
            // x = 0 or y = 0: f0*total_g + total_f*g0 - f0*g0, exactly.
            let zero_mass = f0
                .checked_mul(total_g)
                .and_then(|a| a.checked_add(total_f.checked_mul(g0)?))
                .and_then(|a| a.checked_sub(f0.checked_mul(g0)?))
                .ok_or(Error::CountOverflow)?;
            if zero_mass > u64::MAX as u128 {
                return Err(Error::CountOverflow);
            }

            let m = (p - 1) as usize;
            let mut u = vec![0u64; m];
            let mut v = vec![0u64; m];
            for k in 0..m {
                let e = prime.exp(k as u64);
                u[k] = f.counts[e as usize];
                v[k] = g.counts[e as usize];
            }
            let w = cyclic_convolution_exact(&u, &v)?;
            let mut h = CountVector::zeros(&f.ctx);
            h.add_at(0, zero_mass as u64)?;
            for (k, &wk) in w.iter().enumerate() {
                if wk > 0 {
                    h.add_at(prime.exp(k as u64), wk)?;
                }
            }
            Ok(h)
        }
        ConvPath::Auto => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pctx(p: u64) -> Ctx {
        Ctx::prime(p).unwrap()
    }

    fn set(ctx: &Ctx, elems: &[u64]) -> FSet {
        FSet::from_elems(ctx, elems.iter().copied()).unwrap()
    }

    #[test]
    fn rotl_matches_elementwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &n in &[3u64, 5, 63, 64, 65, 127, 128, 1009] {
            let words = words_for(n);
            let mut bits = vec![0u64; words];
            for i in 0..n {
                if rng.random_range(0..2u32) == 1 {
                    bits[(i / 64) as usize] |= 1 << (i % 64);
                }
            }
            for _ in 0..8 {
                let k = rng.random_range(0..n);
                let rotated = rotl_bits(&bits, n, k);
                for i in 0..n {
                    let src = bits[(i / 64) as usize] >> (i % 64) & 1;
                    let j = (i + k) % n;
                    let dst = rotated[(j / 64) as usize] >> (j % 64) & 1;
                    assert_eq!(src, dst, "n={n} k={k} i={i}");
                }
            }
        }
    }

    #[test]
    fn difference_set_examples() {
        let c7 = pctx(7);
        let a = set(&c7, &[0, 1]);
        let b = set(&c7, &[3]);
        assert_eq!(a.difference_set(&b).unwrap().elems(), vec![4, 5]);

        let z = set(&c7, &[0]);
        assert_eq!(z.difference_set(&z).unwrap().elems(), vec![0]);

        let c5 = pctx(5);
        let full = FSet::full(&c5);
        assert_eq!(full.difference_set(&full).unwrap(), full);
    }

    #[test]
    fn squared_difference_examples() {
        let c7 = pctx(7);
        let a = set(&c7, &[0, 1, 2]);
        assert_eq!(a.squared_difference_set().unwrap().elems(), vec![0, 1, 4]);

        let c5 = pctx(5);
        assert_eq!(
            set(&c5, &[0]).squared_difference_set().unwrap().elems(),
            vec![0]
        );
        assert_eq!(
            FSet::full(&c5).squared_difference_set().unwrap().elems(),
            vec![0, 1, 4]
        );
    }

    #[test]
    fn sumset_examples() {
        let c7 = pctx(7);
        let d = set(&c7, &[0, 1, 4]);
        assert_eq!(d.sumset(&d).unwrap().elems(), vec![0, 1, 2, 4, 5]);
        assert_eq!(d.sumset(&set(&c7, &[0])).unwrap(), d);
        let full = FSet::full(&c7);
        assert_eq!(full.sumset(&set(&c7, &[3])).unwrap(), full);
    }

    #[test]
    fn k_fold_sumset_examples() {
        let c7 = pctx(7);
        let d = set(&c7, &[0, 1, 4]);
        assert_eq!(d.k_fold_sumset(1).unwrap(), d);
        assert_eq!(d.k_fold_sumset(2).unwrap().elems(), vec![0, 1, 2, 4, 5]);
        assert_eq!(d.k_fold_sumset(3).unwrap(), FSet::full(&c7));
        assert!(d.k_fold_sumset(0).is_err());
    }

    #[test]
    fn product_set_examples() {
        let c7 = pctx(7);
        let d = set(&c7, &[0, 1, 4]);
        assert_eq!(d.product_set(&d).unwrap().elems(), vec![0, 1, 2, 4]);
        assert_eq!(d.product_set(&set(&c7, &[1])).unwrap(), d);
        assert_eq!(d.product_set(&set(&c7, &[0])).unwrap().elems(), vec![0]);
    }

    #[test]
    fn quotient_set_examples() {
        let c5 = pctx(5);
        assert_eq!(
            set(&c5, &[1, 2]).quotient_set().unwrap().elems(),
            vec![1, 2, 3]
        );
        assert_eq!(
            set(&c5, &[0, 3]).quotient_set().unwrap().elems(),
            vec![0, 1]
        );
        let c7 = pctx(7);
        let nonzero = set(&c7, &[1, 2, 3, 4, 5, 6]);
        assert_eq!(nonzero.quotient_set().unwrap(), nonzero);
        assert_eq!(
            set(&c7, &[0]).quotient_set().unwrap_err(),
            Error::ZeroOnlySet
        );
    }

    #[test]
    fn negate_examples() {
        let c7 = pctx(7);
        assert_eq!(set(&c7, &[1, 2]).negate_set().elems(), vec![5, 6]);
        assert_eq!(set(&c7, &[0]).negate_set().elems(), vec![0]);
        let sym = set(&c7, &[1, 6]);
        assert_eq!(sym.negate_set(), sym);
    }

    #[test]
    fn context_mixing_is_rejected() {
        let a = set(&pctx(5), &[1]);
        let b = set(&pctx(7), &[1]);
        assert_eq!(a.sumset(&b).unwrap_err(), Error::ContextMismatch);
        assert_eq!(a.product_set(&b).unwrap_err(), Error::ContextMismatch);
        assert_eq!(a.difference_set(&b).unwrap_err(), Error::ContextMismatch);
    }

    #[test]
    fn additive_convolution_examples() {
        let c5 = pctx(5);
        let f = set(&c5, &[0, 1]).indicator();
        let h = additive_count_convolution(&f, &f).unwrap();
        assert_eq!(h.counts(), &[1, 2, 1, 0, 0]);

        let delta = set(&c5, &[0]).indicator();
        let g = CountVector::from_counts(&c5, vec![3, 1, 4, 1, 5]).unwrap();
        assert_eq!(additive_count_convolution(&delta, &g).unwrap(), g);

        let ones = CountVector::from_counts(&c5, vec![1; 5]).unwrap();
        let hh = additive_count_convolution(&ones, &ones).unwrap();
        assert_eq!(hh.counts(), &[5, 5, 5, 5, 5]);
    }

    #[test]
    fn multiplicative_convolution_examples() {
        let c5 = pctx(5);
        // difference counts of {0,1} mod 5
        let f = CountVector::from_counts(&c5, vec![2, 1, 0, 0, 1]).unwrap();
        let h = multiplicative_count_convolution(&f, &f).unwrap();
        assert_eq!(h.counts(), &[12, 2, 0, 0, 2]);

        let one = set(&c5, &[1]).indicator();
        assert_eq!(multiplicative_count_convolution(&f, &one).unwrap(), f);

        let delta0 = set(&c5, &[0]).indicator();
        let h0 = multiplicative_count_convolution(&delta0, &f).unwrap();
        assert_eq!(h0.counts(), &[4, 0, 0, 0, 0]);
    }

    #[test]
    fn convolutions_require_prime_ctx() {
        let e = Ctx::ext(3).unwrap();
        let f = FSet::from_elems(&e, [0, 1]).unwrap().indicator();
        assert_eq!(
            additive_count_convolution(&f, &f).unwrap_err(),
            Error::PrimeFieldRequired
        );
        assert_eq!(
            multiplicative_count_convolution(&f, &f).unwrap_err(),
            Error::PrimeFieldRequired
        );
    }

    #[test]
    fn transform_matches_naive_paths() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for &p in &[3u64, 5, 7, 13, 31, 97, 257, 521] {
            let ctx = pctx(p);
            for _ in 0..10 {
                let f = CountVector::from_counts(
                    &ctx,
                    (0..p).map(|_| rng.random_range(0..50u64)).collect(),
                )
                .unwrap();
                let g = CountVector::from_counts(
                    &ctx,
                    (0..p).map(|_| rng.random_range(0..50u64)).collect(),
                )
                .unwrap();
                let a1 = additive_count_convolution_with(&f, &g, ConvPath::Naive).unwrap();
                let a2 = additive_count_convolution_with(&f, &g, ConvPath::Transform).unwrap();
                assert_eq!(a1, a2, "additive p={p}");
                let m1 = multiplicative_count_convolution_with(&f, &g, ConvPath::Naive).unwrap();
                let m2 =
                    multiplicative_count_convolution_with(&f, &g, ConvPath::Transform).unwrap();
                assert_eq!(m1, m2, "multiplicative p={p}");
            }
        }
    }

    #[test]
    fn seeded_set_ops_match_naive_oracles() {
        // 200 random pairs per small prime, every set op against a double loop.
        let mut rng = ChaCha8Rng::seed_from_u64(20_240_101);
        for &p in &[3u64, 5, 7, 11, 13] {
            let ctx = pctx(p);
            for _ in 0..200 {
                let a: Vec<u64> = (0..p).filter(|_| rng.random_range(0..3u32) == 0).collect();
                let b: Vec<u64> = (0..p).filter(|_| rng.random_range(0..3u32) == 0).collect();
                if a.is_empty() || b.is_empty() {
                    continue;
                }
                let sa = set(&ctx, &a);
                let sb = set(&ctx, &b);

                let mut sum = std::collections::BTreeSet::new();
                let mut diff = std::collections::BTreeSet::new();
                let mut prod = std::collections::BTreeSet::new();
                for &x in &a {
                    for &y in &b {
                        sum.insert((x + y) % p);
                        diff.insert((x + p - y) % p);
                        prod.insert(x * y % p);
                    }
                }
                assert_eq!(
                    sa.sumset(&sb).unwrap().elems(),
                    sum.into_iter().collect::<Vec<_>>()
                );
                assert_eq!(
                    sa.difference_set(&sb).unwrap().elems(),
                    diff.into_iter().collect::<Vec<_>>()
                );
                assert_eq!(
                    sa.product_set(&sb).unwrap().elems(),
                    prod.into_iter().collect::<Vec<_>>()
                );

                if a.iter().any(|&x| x != 0) {
                    let mut quot = std::collections::BTreeSet::new();
                    for &x in &a {
                        for &y in &a {
                            if y != 0 {
                                let yi = (1..p).find(|&z| y * z % p == 1).unwrap();
                                quot.insert(x * yi % p);
                            }
                        }
                    }
                    assert_eq!(
                        sa.quotient_set().unwrap().elems(),
                        quot.into_iter().collect::<Vec<_>>()
                    );
                }

                let mut sqd = std::collections::BTreeSet::new();
                for &x in &a {
                    for &y in &a {
                        let d = (x + p - y) % p;
                        sqd.insert(d * d % p);
                    }
                }
                assert_eq!(
                    sa.squared_difference_set().unwrap().elems(),
                    sqd.into_iter().collect::<Vec<_>>()
                );
            }
        }
    }

    #[test]
    fn ext_field_set_ops() {
        let e = Ctx::ext(3).unwrap();
        // base field embedded: {0, 1, 2}
        let base = FSet::from_elems(&e, [0, 1, 2]).unwrap();
        let s = base.sumset(&base).unwrap();
        assert_eq!(s, base); // closed under addition
        let q = base.quotient_set().unwrap();
        assert_eq!(q, base); // closed under division, includes 0/b
        let ext3 = e.as_ext().unwrap();
        let w = ext3.index_of(0, 1);
        let sw = FSet::from_elems(&e, [w]).unwrap();
        let prod = sw.product_set(&sw).unwrap();
        assert_eq!(prod.elems(), vec![ext3.nonresidue()]); // w^2 = n
    }

    #[test]
    fn mass_conservation_and_support() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for &p in &[5u64, 13, 31] {
            let ctx = pctx(p);
            for _ in 0..20 {
                let f = CountVector::from_counts(
                    &ctx,
                    (0..p).map(|_| rng.random_range(0..9u64)).collect(),
                )
                .unwrap();
                let g = CountVector::from_counts(
                    &ctx,
                    (0..p).map(|_| rng.random_range(0..9u64)).collect(),
                )
                .unwrap();
                let h = additive_count_convolution(&f, &g).unwrap();
                assert_eq!(h.total(), f.total() * g.total());
                let m = multiplicative_count_convolution(&f, &g).unwrap();
                assert_eq!(m.total(), f.total() * g.total());

                let sf = f.support();
                let sg = g.support();
                if !sf.is_empty() && !sg.is_empty() {
                    assert_eq!(sf.sumset(&sg).unwrap(), h.support());
                }
            }
        }
    }

    #[test]
    fn count_overflow_is_reported() {
        let ctx = pctx(5);
        let f = CountVector::from_counts(&ctx, vec![u64::MAX, 0, 0, 0, 0]).unwrap();
        let g = CountVector::from_counts(&ctx, vec![2, 0, 0, 0, 0]).unwrap();
        assert_eq!(
            additive_count_convolution(&f, &g).unwrap_err(),
            Error::CountOverflow
        );
        assert_eq!(
            multiplicative_count_convolution(&f, &g).unwrap_err(),
            Error::CountOverflow
        );
    }
}
