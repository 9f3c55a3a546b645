//! Exact integer cyclic convolution of arbitrary length.
//!
//! Inputs are zero-padded to a power of two, transformed under two word-size
//! NTT primes, multiplied pointwise, lifted back with the CRT, and folded to
//! the cyclic length. Counts stay exact: any coefficient past the 64-bit
//! budget is an error, never a wraparound.

use crate::error::{Error, Result};

// 29 * 2^57 + 1 and 27 * 2^56 + 1, both prime with ample two-adicity.
const P1: u64 = 4_179_340_454_199_820_289;
const G1: u64 = 3;
const P2: u64 = 1_945_555_039_024_054_273;
const G2: u64 = 5;

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// In-place iterative radix-2 NTT. `root` must generate the full
/// multiplicative group mod `m`; pass its inverse and scale by 1/n outside
/// for the inverse transform.
fn ntt_in_place(a: &mut [u64], m: u64, root: u64) {
    let n = a.len();
    debug_assert!(n.is_power_of_two());
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2usize;
    while len <= n {
        let w_len = pow_mod(root, (m - 1) / len as u64, m);
        for start in (0..n).step_by(len) {
            let mut w = 1u64;
            for i in start..start + len / 2 {
                let u = a[i];
                let v = mul_mod(a[i + len / 2], w, m);
                a[i] = if u + v >= m { u + v - m } else { u + v };
                a[i + len / 2] = if u >= v { u - v } else { u + m - v };
                w = mul_mod(w, w_len, m);
            }
        }
        len <<= 1;
    }
}

/// Linear convolution of `a` and `b` modulo `m`, length `2n - 1`, computed
/// at padded power-of-two size `l`.
fn conv_mod(a: &[u64], b: &[u64], l: usize, m: u64, g: u64) -> Vec<u64> {
    let mut fa: Vec<u64> = a.iter().map(|&x| x % m).collect();
    let mut fb: Vec<u64> = b.iter().map(|&x| x % m).collect();
    fa.resize(l, 0);
    fb.resize(l, 0);
    ntt_in_place(&mut fa, m, g);
    ntt_in_place(&mut fb, m, g);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = mul_mod(*x, *y, m);
    }
    let g_inv = pow_mod(g, m - 2, m);
    ntt_in_place(&mut fa, m, g_inv);
    let n_inv = pow_mod(l as u64, m - 2, m);
    for x in fa.iter_mut() {
        *x = mul_mod(*x, n_inv, m);
    }
    fa
}

/// h[t] = sum over i of a[i] * b[(t - i) mod n], exact.
///
/// Errors with `CountOverflow` if any output coefficient would exceed u64.
pub(crate) fn cyclic_convolution_exact(a: &[u64], b: &[u64]) -> Result<Vec<u64>> {
    debug_assert_eq!(a.len(), b.len());
    let n = a.len();
    let total_a: u128 = a.iter().map(|&x| x as u128).sum();
    let total_b: u128 = b.iter().map(|&x| x as u128).sum();
    // Every output coefficient is at most total_a * total_b; reconstruction
    // is unambiguous as long as that bound stays below P1 * P2.
    let bound = total_a
        .checked_mul(total_b)
        .ok_or(Error::CountOverflow)?;
    if bound >= P1 as u128 * P2 as u128 {
        return Err(Error::CountOverflow);
    }

    if n == 1 {
        let v = bound; // = a[0] * b[0]
        return if v <= u64::MAX as u128 {
            Ok(vec![v as u64])
        } else {
            Err(Error::CountOverflow)
        };
    }

    let l = (2 * n - 1).next_power_of_two();
    let r1 = conv_mod(a, b, l, P1, G1);
    let r2 = conv_mod(a, b, l, P2, G2);

    let p1_inv_mod_p2 = pow_mod(P1 % P2, P2 - 2, P2);
    let mut out = vec![0u128; n];
    for k in 0..(2 * n - 1) {
        let x1 = r1[k];
        let x2 = r2[k];
        let diff = if x2 >= x1 % P2 {
            x2 - x1 % P2
        } else {
            x2 + P2 - x1 % P2
        };
        let t = mul_mod(diff, p1_inv_mod_p2, P2);
        let lifted = x1 as u128 + P1 as u128 * t as u128;
        out[k % n] += lifted;
    }
    out.into_iter()
        .map(|v| {
            if v <= u64::MAX as u128 {
                Ok(v as u64)
            } else {
                Err(Error::CountOverflow)
            }
        })
        .collect()
}
