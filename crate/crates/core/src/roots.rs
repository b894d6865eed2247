//! Exact real-root analysis of rational univariate polynomials via Sturm
//! sequences.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::univariate::sign;
use crate::poly::UvPoly;
use crate::rational::Q;

/// Interval endpoint, possibly infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(Q),
    PosInf,
}

impl From<Q> for Bound {
    fn from(q: Q) -> Self {
        Bound::Finite(q)
    }
}

/// Sturm chain of the square-free part of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<UvPoly>,
}

impl SturmChain {
    /// Built on `f / gcd(f, f')`, so counts are of distinct roots.
    pub fn new(f: &UvPoly) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::Contract("Sturm chain of the zero polynomial".into()));
        }
        let s = f.square_free_part();
        let mut chain = vec![s.clone()];
        if s.degree() > Some(0) {
            chain.push(s.derivative().primitive());
            loop {
                let n = chain.len();
                let r = chain[n - 2].div_rem(&chain[n - 1]).1;
                if r.is_zero() {
                    break;
                }
                chain.push((-&r).primitive());
            }
        }
        Ok(SturmChain { chain })
    }

    /// The square-free polynomial heading the chain.
    pub fn base(&self) -> &UvPoly {
        &self.chain[0]
    }

    fn variations(&self, at: &Bound) -> usize {
        let signs = self.chain.iter().map(|p| match at {
            Bound::Finite(t) => p.sign_at(t),
            Bound::PosInf => sign(&p.leading()),
            Bound::NegInf => {
                let s = sign(&p.leading());
                if p.degree().unwrap_or(0) % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
        });
        let mut count = 0;
        let mut last = 0i8;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}

/// Number of distinct real roots of `a` in `(lo, hi]`.
pub fn sturm_count(a: &UvPoly, lo: &Bound, hi: &Bound) -> Result<usize> {
    Ok(SturmChain::new(a)?.count(lo, hi))
}

/// True iff every complex root of `a` is real (counted with multiplicity).
pub fn all_roots_real(a: &UvPoly) -> Result<bool> {
    let Some(deg) = a.degree() else {
        return Err(Error::Contract("all_roots_real of the zero polynomial".into()));
    };
    let mut real = 0;
    for (k, f) in a.square_free_factors().iter().enumerate() {
        real += (k + 1) * sturm_count(f, &Bound::NegInf, &Bound::PosInf)?;
    }
    Ok(real == deg)
}

/// One distinct real root `r` with `lo <= r <= hi`, and `lo < r` unless the
/// interval is a single exact point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Q,
    pub hi: Q,
    pub multiplicity: usize,
}

impl RootInterval {
    pub fn midpoint(&self) -> Q {
        (&self.lo + &self.hi) / Q::from_integer(2.into())
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

/// Isolated distinct real roots, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootIsolation {
    pub intervals: Vec<RootInterval>,
}

impl RootIsolation {
    pub fn total_multiplicity(&self) -> usize {
        self.intervals.iter().map(|r| r.multiplicity).sum()
    }
}

/// Encloses every distinct real root of `a` in an interval of length at
/// most `width`, with its exact multiplicity.
pub fn isolate_roots(a: &UvPoly, width: &Q) -> Result<RootIsolation> {
    if !width.is_positive() {
        return Err(Error::Contract("isolation width must be positive".into()));
    }
    let chain = SturmChain::new(a)?;
    let s = chain.base().clone();
    let mut found = Vec::new();
    if s.degree() > Some(0) {
        let b = s.root_bound();
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            let n = chain.count(&Bound::Finite(lo.clone()), &Bound::Finite(hi.clone()));
            if n == 0 {
                continue;
            }
            if n == 1 {
                found.push(refine_with(&chain, lo, hi, width));
                continue;
            }
            let mid = (&lo + &hi) / Q::from_integer(2.into());
            stack.push((mid.clone(), hi));
            stack.push((lo, mid));
        }
    }
    found.sort_by(|x, y| x.0.cmp(&y.0));
    let factors = a.square_free_factors();
    let intervals = found
        .into_iter()
        .map(|(lo, hi)| {
            let multiplicity = factors
                .iter()
                .position(|f| root_of_factor(f, &lo, &hi))
                .map_or(1, |k| k + 1);
            RootInterval { lo, hi, multiplicity }
        })
        .collect();
    Ok(RootIsolation { intervals })
}

fn root_of_factor(f: &UvPoly, lo: &Q, hi: &Q) -> bool {
    if lo == hi {
        f.eval(lo).is_zero()
    } else {
        sturm_count(f, &Bound::Finite(lo.clone()), &Bound::Finite(hi.clone())).unwrap_or(0) == 1
    }
}

/// Bisects `(lo, hi]`, known to hold exactly one root of the chain's base,
/// down to `width`.
fn refine_with(chain: &SturmChain, mut lo: Q, mut hi: Q, width: &Q) -> (Q, Q) {
    let s = chain.base();
    let two = Q::from_integer(2.into());
    loop {
        if s.eval(&hi).is_zero() {
            return (hi.clone(), hi);
        }
        if &(&hi - &lo) <= width {
            return (lo, hi);
        }
        let mid = (&lo + &hi) / &two;
        // the base is square-free, so a sign change locates the root
        let sm = s.sign_at(&mid);
        if sm == 0 {
            return (mid.clone(), mid);
        }
        if sm == s.sign_at(&hi) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

/// Shrinks an interval from [`isolate_roots`] of `a` to at most `width`.
pub fn refine_root(a: &UvPoly, root: &RootInterval, width: &Q) -> Result<RootInterval> {
    if root.is_exact() {
        return Ok(root.clone());
    }
    let chain = SturmChain::new(a)?;
    let (lo, hi) = refine_with(&chain, root.lo.clone(), root.hi.clone(), width);
    Ok(RootInterval { lo, hi, multiplicity: root.multiplicity })
}

/// Helper for tests and callers that want an `f64` view of the roots.
pub fn approximate_roots(iso: &RootIsolation) -> Vec<(f64, usize)> {
    iso.intervals
        .iter()
        .map(|r| (crate::rational::to_f64(&r.midpoint()), r.multiplicity))
        .collect()
}
