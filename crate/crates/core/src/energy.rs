//! The 8-tuple energy N(A,B,C,D), its representation function, the
//! Cauchy-Schwarz lower bound on |(A-B)(C-D)|, and the four-term upper-bound
//! evaluator used for regime diagnostics.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::fset::{
    additive_count_convolution, multiplicative_count_convolution, CountVector, FSet,
};

/// Cap keeping N = sum of r[t]^2 below 2^126.
const MAX_SIZE_PRODUCT: u128 = 1 << 63;

/// f[x] = #{(a, b) in A x B : a - b = x}.
pub fn diff_count(a: &FSet, b: &FSet) -> Result<CountVector> {
    a.ctx().ensure_same(b.ctx())?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet("difference-count operand"));
    }
    additive_count_convolution(&a.indicator(), &b.negate_set().indicator())
}

/// Representation counts of (A-B)(C-D) with the derived energy statistics.
#[derive(Debug, Clone)]
pub struct EnergyReport {
    r: CountVector,
    n_tuples: u128,
    support_size: u64,
    sizes: [u64; 4],
}

impl EnergyReport {
    /// r[t] = #{(a,b,c,d) : (a-b)(c-d) = t}.
    pub fn r(&self) -> &CountVector {
        &self.r
    }

    /// N = number of 8-tuples with (a-b)(c-d) = (a'-b')(c'-d') = sum of r[t]^2.
    pub fn n_tuples(&self) -> u128 {
        self.n_tuples
    }

    /// |(A-B)(C-D)|.
    pub fn support_size(&self) -> u64 {
        self.support_size
    }

    pub fn sizes(&self) -> [u64; 4] {
        self.sizes
    }

    /// Total mass of r; equals |A||B||C||D|.
    pub fn mass(&self) -> u128 {
        self.r.total()
    }

    /// Exact rational (|A||B||C||D|)^2 / N; at most the support size.
    pub fn cs_lower_bound(&self) -> BigRational {
        let mass = BigUint::from(self.mass());
        BigRational::new(
            (mass.clone() * mass).into(),
            BigUint::from(self.n_tuples).into(),
        )
    }

    /// cs_lower_bound as a "num/den" string in lowest terms.
    pub fn cs_lower_bound_string(&self) -> String {
        let b = self.cs_lower_bound();
        format!("{}/{}", b.numer(), b.denom())
    }
}

/// Computes r = the multiplicative convolution of the two difference-count
/// vectors, and from it N and the support size. Exact throughout.
pub fn energy_report(a: &FSet, b: &FSet, c: &FSet, d: &FSet) -> Result<EnergyReport> {
    let sizes = [
        a.card() as u64,
        b.card() as u64,
        c.card() as u64,
        d.card() as u64,
    ];
    let size_product = sizes.iter().map(|&s| s as u128).product::<u128>();
    if size_product >= MAX_SIZE_PRODUCT {
        return Err(Error::SizeCapExceeded(format!(
            "|A||B||C||D| = {size_product} exceeds the energy cap"
        )));
    }
    let f = diff_count(a, b)?;
    let g = diff_count(c, d)?;
    let r = multiplicative_count_convolution(&f, &g)?;
    let mut n_tuples = 0u128;
    let mut support_size = 0u64;
    for &rt in r.counts() {
        if rt > 0 {
            n_tuples += (rt as u128) * (rt as u128);
            support_size += 1;
        }
    }
    debug_assert_eq!(r.total(), size_product);
    Ok(EnergyReport {
        r,
        n_tuples,
        support_size,
        sizes,
    })
}

/// Convenience: the Cauchy-Schwarz bound of a report.
pub fn cs_lower_bound(report: &EnergyReport) -> BigRational {
    report.cs_lower_bound()
}

/// The four-term upper bound on N for |A|=|C|, |B|=|D|, |A| <= |B|,
/// evaluated with implicit constant 1. Diagnostic only: never asserted
/// against a measured N.
#[derive(Debug, Clone, Copy)]
pub struct MmBound {
    pub terms: [f64; 4],
    pub dominant: usize,
}

pub const MM_TERM_NAMES: [&str; 4] = [
    "(abcd)^2/p",
    "p^(1/2)*(abcd)^(11/8)",
    "a^(11/4)*b^4/p^(1/4)",
    "(acd)^2",
];

impl MmBound {
    pub fn dominant_name(&self) -> &'static str {
        MM_TERM_NAMES[self.dominant]
    }

    pub fn total(&self) -> f64 {
        self.terms.iter().sum()
    }
}

pub fn mm_bound(sizes: [u64; 4], p: u64) -> Result<MmBound> {
    let [a, b, c, d] = sizes;
    if a != c || b != d || a > b {
        return Err(Error::InvalidArgument(format!(
            "energy bound needs |A|=|C|, |B|=|D|, |A|<=|B|; got {sizes:?}"
        )));
    }
    let (af, bf, cf, df, pf) = (a as f64, b as f64, c as f64, d as f64, p as f64);
    let abcd = af * bf * cf * df;
    let terms = [
        abcd * abcd / pf,
        pf.sqrt() * abcd.powf(11.0 / 8.0),
        af.powf(11.0 / 4.0) * bf.powi(4) / pf.powf(0.25),
        (af * cf * df).powi(2),
    ];
    let dominant = terms
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.partial_cmp(y.1).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    Ok(MmBound { terms, dominant })
}

/// Ratio N * p / (|A||B||C||D|)^2 as f64, the empirical constant of the
/// dominant-regime bound.
pub fn energy_ratio(report: &EnergyReport, p: u64) -> f64 {
    let mass = BigUint::from(report.mass());
    let num = BigUint::from(report.n_tuples) * BigUint::from(p);
    let den = mass.clone() * mass;
    BigRational::new(num.into(), den.into())
        .to_f64()
        .unwrap_or(f64::NAN)
}
