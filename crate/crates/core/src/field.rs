//! Exact arithmetic in F_p and in the quadratic extension F_{p^2}.
//!
//! Elements are canonical integers in `[0, |F|)`. An extension element
//! `a + b*w` (with `w^2 = n`, `n` a quadratic nonresidue) is carried as the
//! index `a + b*p`, so bit arrays over either field index the same way.
//!
//! Contexts are immutable after construction; every operation is pure.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest admissible field order. Tables are dense arrays, so the cap keeps
/// context construction at desk scale.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Arithmetic context for a prime field F_p with precomputed tables.
///
/// Holds multiplicative inverses, squares, residue classification, and the
/// discrete-log/exponential pair for the smallest generator of F_p^*.
#[derive(Debug)]
pub struct FieldCtx {
    p: u64,
    inv_table: Vec<u64>,
    sqr_table: Vec<u64>,
    legendre: Vec<i8>,
    generator: u64,
    dlog: Vec<u32>,
    exp: Vec<u64>,
}

impl FieldCtx {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_FIELD_ORDER {
            return Err(Error::OrderTooLarge(p, MAX_FIELD_ORDER));
        }
        if p < 3 || p % 2 == 0 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        let pu = p as usize;

        let mut sqr_table = vec![0u64; pu];
        for x in 0..p {
            sqr_table[x as usize] = x * x % p;
        }

        // Smallest generator of F_p^*, found by walking candidate powers.
        // A candidate generates iff its powers first return to 1 after p-1 steps.
        let mut generator = 0;
        let mut exp = vec![0u64; pu - 1];
        let mut dlog = vec![0u32; pu];
        'cand: for g in 2..p {
            let mut x = 1u64;
            for i in 0..(p - 1) {
                exp[i as usize] = x;
                dlog[x as usize] = i as u32;
                x = x * g % p;
                if x == 1 && i + 1 < p - 1 {
                    continue 'cand;
                }
            }
            generator = g;
            break;
        }
        debug_assert!(generator != 0);

        // Quadratic residues are exactly the even powers of the generator.
        let mut legendre = vec![0i8; pu];
        for x in 1..p {
            legendre[x as usize] = if dlog[x as usize] % 2 == 0 { 1 } else { -1 };
        }

        // inv(g^k) = g^(p-1-k).
        let mut inv_table = vec![0u64; pu];
        for x in 1..p {
            let k = dlog[x as usize] as u64;
            inv_table[x as usize] = exp[((p - 1 - k) % (p - 1)) as usize];
        }

        Ok(FieldCtx {
            p,
            inv_table,
            sqr_table,
            legendre,
            generator,
            dlog,
            exp,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Field order; equal to `p` for the prime field.
    pub fn order(&self) -> u64 {
        self.p
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    #[inline]
    pub fn add(&self, x: u64, y: u64) -> u64 {
        let s = x + y;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, x: u64, y: u64) -> u64 {
        if x >= y {
            x - y
        } else {
            x + self.p - y
        }
    }

    #[inline]
    pub fn neg(&self, x: u64) -> u64 {
        if x == 0 {
            0
        } else {
            self.p - x
        }
    }

    #[inline]
    pub fn mul(&self, x: u64, y: u64) -> u64 {
        x * y % self.p
    }

    #[inline]
    pub fn sqr(&self, x: u64) -> u64 {
        self.sqr_table[x as usize]
    }

    pub fn inv(&self, x: u64) -> Result<u64> {
        if x == 0 {
            return Err(Error::ZeroInverse(self.p));
        }
        Ok(self.inv_table[x as usize])
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }

    /// Euler's criterion, evaluated by table: true iff x is 0 or a square.
    #[inline]
    pub fn is_square(&self, x: u64) -> bool {
        self.legendre[x as usize] >= 0
    }

    /// Discrete log of a nonzero element with respect to the generator.
    #[inline]
    pub fn dlog(&self, x: u64) -> Result<u32> {
        if x == 0 {
            return Err(Error::ZeroInverse(self.p));
        }
        Ok(self.dlog[x as usize])
    }

    /// generator^k, with k taken mod p-1.
    #[inline]
    pub fn exp(&self, k: u64) -> u64 {
        self.exp[(k % (self.p - 1)) as usize]
    }

    /// Smallest positive quadratic nonresidue.
    pub fn find_nonresidue(&self) -> u64 {
        (1..self.p)
            .find(|&x| self.legendre[x as usize] < 0)
            .expect("every odd prime field has a nonresidue")
    }

    /// The smaller square root of -1 when p = 1 mod 4, absent otherwise.
    pub fn sqrt_of_minus_one(&self) -> Option<u64> {
        if self.p % 4 != 1 {
            return None;
        }
        // g^((p-1)/4) squares to g^((p-1)/2) = -1.
        let i = self.exp[((self.p - 1) / 4) as usize];
        Some(i.min(self.p - i))
    }
}

/// Arithmetic context for F_{p^2} = F_p[w] / (w^2 - n), with n the smallest
/// positive nonresidue mod p. Element (a, b) means a + b*w and is carried as
/// the canonical index a + b*p.
#[derive(Debug)]
pub struct ExtFieldCtx {
    base: FieldCtx,
    nonresidue: u64,
}

impl ExtFieldCtx {
    pub fn new(p: u64) -> Result<Self> {
        let base = FieldCtx::new(p)?;
        if p * p > MAX_FIELD_ORDER {
            return Err(Error::OrderTooLarge(p * p, MAX_FIELD_ORDER));
        }
        let nonresidue = base.find_nonresidue();
        Ok(ExtFieldCtx { base, nonresidue })
    }

    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    pub fn p(&self) -> u64 {
        self.base.p
    }

    pub fn nonresidue(&self) -> u64 {
        self.nonresidue
    }

    /// q = p^2.
    pub fn order(&self) -> u64 {
        self.base.p * self.base.p
    }

    #[inline]
    pub fn index_of(&self, a: u64, b: u64) -> u64 {
        a + b * self.base.p
    }

    #[inline]
    pub fn coords(&self, x: u64) -> (u64, u64) {
        (x % self.base.p, x / self.base.p)
    }

    #[inline]
    pub fn add(&self, x: u64, y: u64) -> u64 {
        let (a, b) = self.coords(x);
        let (c, d) = self.coords(y);
        self.index_of(self.base.add(a, c), self.base.add(b, d))
    }

    #[inline]
    pub fn sub(&self, x: u64, y: u64) -> u64 {
        let (a, b) = self.coords(x);
        let (c, d) = self.coords(y);
        self.index_of(self.base.sub(a, c), self.base.sub(b, d))
    }

    #[inline]
    pub fn neg(&self, x: u64) -> u64 {
        let (a, b) = self.coords(x);
        self.index_of(self.base.neg(a), self.base.neg(b))
    }

    /// (a + bw)(c + dw) = (ac + n·bd) + (ad + bc)w.
    #[inline]
    pub fn mul(&self, x: u64, y: u64) -> u64 {
        let f = &self.base;
        let (a, b) = self.coords(x);
        let (c, d) = self.coords(y);
        let re = f.add(f.mul(a, c), f.mul(self.nonresidue, f.mul(b, d)));
        let im = f.add(f.mul(a, d), f.mul(b, c));
        self.index_of(re, im)
    }

    #[inline]
    pub fn sqr(&self, x: u64) -> u64 {
        self.mul(x, x)
    }

    /// (a + bw)^-1 = (a - bw) / (a^2 - n·b^2); the norm vanishes only at 0
    /// because n is a nonresidue.
    pub fn inv(&self, x: u64) -> Result<u64> {
        if x == 0 {
            return Err(Error::ZeroInverse(self.order()));
        }
        let f = &self.base;
        let (a, b) = self.coords(x);
        let norm = f.sub(f.sqr(a), f.mul(self.nonresidue, f.sqr(b)));
        let ninv = f.inv(norm)?;
        Ok(self.index_of(f.mul(a, ninv), f.mul(f.neg(b), ninv)))
    }

    pub fn pow(&self, base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64; // index of 1 + 0w
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Euler's criterion over F_q: true iff x = 0 or x^((q-1)/2) = 1.
    pub fn is_square(&self, x: u64) -> bool {
        x == 0 || self.pow(x, (self.order() - 1) / 2) == 1
    }

    /// Frobenius map x -> x^p; fixes exactly the base-field elements.
    pub fn frobenius(&self, x: u64) -> u64 {
        self.pow(x, self.base.p)
    }
}

/// A shareable field context, prime or quadratic-extension.
///
/// Sets, point sets, and count vectors all hold one of these; operations
/// reject operands whose contexts differ.
#[derive(Debug, Clone)]
pub enum Ctx {
    Prime(Arc<FieldCtx>),
    Ext(Arc<ExtFieldCtx>),
}

impl PartialEq for Ctx {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Ctx::Prime(a), Ctx::Prime(b)) => a.p() == b.p(),
            (Ctx::Ext(a), Ctx::Ext(b)) => a.p() == b.p() && a.nonresidue() == b.nonresidue(),
            _ => false,
        }
    }
}

impl Eq for Ctx {}

impl Ctx {
    pub fn prime(p: u64) -> Result<Ctx> {
        Ok(Ctx::Prime(Arc::new(FieldCtx::new(p)?)))
    }

    pub fn ext(p: u64) -> Result<Ctx> {
        Ok(Ctx::Ext(Arc::new(ExtFieldCtx::new(p)?)))
    }

    pub fn order(&self) -> u64 {
        match self {
            Ctx::Prime(f) => f.order(),
            Ctx::Ext(f) => f.order(),
        }
    }

    /// The prime p underlying the context (= order for the prime field).
    pub fn p(&self) -> u64 {
        match self {
            Ctx::Prime(f) => f.p(),
            Ctx::Ext(f) => f.p(),
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, Ctx::Prime(_))
    }

    pub fn as_prime(&self) -> Result<&FieldCtx> {
        match self {
            Ctx::Prime(f) => Ok(f),
            Ctx::Ext(_) => Err(Error::PrimeFieldRequired),
        }
    }

    pub fn as_ext(&self) -> Result<&ExtFieldCtx> {
        match self {
            Ctx::Ext(f) => Ok(f),
            Ctx::Prime(_) => Err(Error::ExtFieldRequired),
        }
    }

    #[inline]
    pub fn add(&self, x: u64, y: u64) -> u64 {
        match self {
            Ctx::Prime(f) => f.add(x, y),
            Ctx::Ext(f) => f.add(x, y),
        }
    }

    #[inline]
    pub fn sub(&self, x: u64, y: u64) -> u64 {
        match self {
            Ctx::Prime(f) => f.sub(x, y),
            Ctx::Ext(f) => f.sub(x, y),
        }
    }

    #[inline]
    pub fn neg(&self, x: u64) -> u64 {
        match self {
            Ctx::Prime(f) => f.neg(x),
            Ctx::Ext(f) => f.neg(x),
        }
    }

    #[inline]
    pub fn mul(&self, x: u64, y: u64) -> u64 {
        match self {
            Ctx::Prime(f) => f.mul(x, y),
            Ctx::Ext(f) => f.mul(x, y),
        }
    }

    #[inline]
    pub fn sqr(&self, x: u64) -> u64 {
        match self {
            Ctx::Prime(f) => f.sqr(x),
            Ctx::Ext(f) => f.sqr(x),
        }
    }

    pub fn inv(&self, x: u64) -> Result<u64> {
        match self {
            Ctx::Prime(f) => f.inv(x),
            Ctx::Ext(f) => f.inv(x),
        }
    }

    pub fn is_square(&self, x: u64) -> bool {
        match self {
            Ctx::Prime(f) => f.is_square(x),
            Ctx::Ext(f) => f.is_square(x),
        }
    }

    pub(crate) fn ensure_same(&self, other: &Ctx) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }
}
