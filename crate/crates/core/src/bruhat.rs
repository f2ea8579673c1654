//! Rank functions, Bruhat-order comparison, enumeration, suprema, and
//! minimal/maximal element queries for symmetric groups and `W_n`.
//!
//! Comparisons go through rank-matrix dominance: `v <= v'` iff the count of
//! dots weakly southwest of every box for `v` is bounded by the count for
//! `v'`.  For signed permutations this is applied to the `iota` images, which
//! is equivalent to Bruhat order on `W_n`.

use itertools::Itertools;

use crate::perm_core::{SignedPermutation, WindowPermutation};
use crate::{Error, Result};

/// Default guard for exhaustive enumeration; `W_8` has about 10.3M elements.
pub const ENUM_BUDGET: usize = 8;

/// Which type A rank convention a query uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConventionA {
    /// Centered interval `[-n, n]`: `r_v(p,q) = #{i <= -p | v(i) >= q}`.
    Centered,
    /// `S_n` acting on `1..=n`: `r_v(p,q) = #{i <= p | v(i) > q}`.
    Small,
}

/// `r_w(p,q) = #{i >= p | w(i) <= -q}` for `1 <= p <= n`, `-n <= q <= n`.
pub fn rank_b(w: &SignedPermutation, p: i64, q: i64) -> Result<usize> {
    let n = w.n() as i64;
    if p < 1 || p > n || q < -n || q > n {
        return Err(Error::Range(format!("(p, q) = ({p}, {q}) outside 1..={n} x -{n}..={n}")));
    }
    Ok(rank_b_unchecked(w, p, q))
}

pub(crate) fn rank_b_unchecked(w: &SignedPermutation, p: i64, q: i64) -> usize {
    let n = w.n() as i64;
    (p..=n).filter(|&i| w.value(i) <= -q).count()
}

/// Type A rank function in either convention.
pub fn rank_a(v: &WindowPermutation, p: i64, q: i64, convention: ConventionA) -> Result<usize> {
    match convention {
        ConventionA::Centered => {
            let hi = v.hi();
            let lo = v.lo();
            if p < lo || p > hi || q < lo || q > hi {
                return Err(Error::Range(format!("(p, q) = ({p}, {q}) outside [{lo}, {hi}]^2")));
            }
            // Count i <= -p with v(i) >= q; positions outside the window are
            // fixed, so they contribute exactly the integers of [q, -p] that
            // miss [lo, hi].
            let inside = (lo..=hi.min(-p)).filter(|&i| v.value(i) >= q).count();
            let outside = (q..=-p).filter(|&i| i < lo || i > hi).count();
            Ok(inside + outside)
        }
        ConventionA::Small => {
            let n = v.hi();
            if v.lo() != 1 {
                return Err(Error::Range("small convention needs a window on 1..=n".into()));
            }
            if p < 1 || p > n || q < 1 || q > n {
                return Err(Error::Range(format!("(p, q) = ({p}, {q}) outside 1..={n} x 1..={n}")));
            }
            Ok((1..=p).filter(|&i| v.value(i) > q).count())
        }
    }
}

/// Cumulative dot counts `c[a][b] = #{i in [lo, a] | v(i) >= b}` for a fixed
/// window; two permutations on the same interval compare in Bruhat order by
/// entrywise dominance of these tables.
pub struct RankTable {
    lo: i64,
    size: usize,
    counts: Vec<u16>,
}

impl RankTable {
    pub fn build(v: &WindowPermutation) -> Self {
        let lo = v.lo();
        let size = (v.hi() - lo + 1) as usize;
        let mut counts = vec![0u16; size * size];
        for (ai, a) in (lo..=v.hi()).enumerate() {
            for (bi, b) in (lo..=v.hi()).enumerate() {
                let prev = if ai == 0 { 0 } else { counts[(ai - 1) * size + bi] };
                counts[ai * size + bi] = prev + u16::from(v.value(a) >= b);
            }
        }
        RankTable { lo, size, counts }
    }

    pub fn dominated_by(&self, other: &RankTable) -> bool {
        assert_eq!((self.lo, self.size), (other.lo, other.size));
        self.counts.iter().zip(&other.counts).all(|(a, b)| a <= b)
    }
}

/// Bruhat order on window permutations, by rank-matrix dominance.
pub fn leq_a(v1: &WindowPermutation, v2: &WindowPermutation) -> bool {
    let lo = v1.lo().min(v2.lo());
    let hi = v1.hi().max(v2.hi());
    let a = RankTable::build(&v1.pad_to(lo, hi));
    let b = RankTable::build(&v2.pad_to(lo, hi));
    a.dominated_by(&b)
}

/// Bruhat order on signed permutations: `w1 <= w2` iff `iota(w1) <= iota(w2)`.
pub fn leq_b(w1: &SignedPermutation, w2: &SignedPermutation) -> bool {
    let n = w1.n().max(w2.n());
    leq_a(&w1.pad_to(n).iota(), &w2.pad_to(n).iota())
}

/// All `2^n n!` elements of `W_n`, in a deterministic order: the underlying
/// permutations of `1..=n` in lexicographic order, and for each, all sign
/// masks in ascending binary order (bit `i` negates position `i+1`).
pub fn enumerate_w(n: usize, override_budget: bool) -> Result<Vec<SignedPermutation>> {
    if n > ENUM_BUDGET && !override_budget {
        return Err(Error::Budget(n, ENUM_BUDGET));
    }
    let mut out = Vec::new();
    for perm in (1..=n as i64).permutations(n) {
        for mask in 0u32..(1 << n) {
            let window = perm
                .iter()
                .enumerate()
                .map(|(i, &v)| if mask >> i & 1 == 1 { -v } else { v })
                .collect();
            out.push(SignedPermutation::new(window).expect("valid window"));
        }
    }
    Ok(out)
}

/// All permutations of `[lo, hi]`, lexicographic by one-line notation.
pub fn enumerate_s(lo: i64, hi: i64, override_budget: bool) -> Result<Vec<WindowPermutation>> {
    let len = (hi - lo + 1) as usize;
    if len > ENUM_BUDGET && !override_budget {
        return Err(Error::Budget(len, ENUM_BUDGET));
    }
    Ok((lo..=hi)
        .permutations(len)
        .map(|values| WindowPermutation::new(lo, values).expect("valid window"))
        .collect())
}

/// Least upper bound of a set in `W_n`, by brute force, with a uniqueness
/// certificate: the returned element is checked to be below every other
/// upper bound.  `sup(∅)` is the identity.
pub fn supremum(elems: &[SignedPermutation], n: usize) -> Result<SignedPermutation> {
    let all = enumerate_w(n, false)?;
    let padded: Vec<_> = elems.iter().map(|w| w.pad_to(n)).collect();
    let uppers: Vec<_> = all
        .into_iter()
        .filter(|x| padded.iter().all(|y| leq_b(y, x)))
        .collect();
    let min = uppers
        .iter()
        .find(|m| uppers.iter().all(|x| leq_b(m, x)))
        .ok_or(Error::NoSupremum)?;
    Ok(min.clone())
}

/// All Bruhat-minimal elements of `{t in W_n | t not<= w}`; empty for the
/// longest element.
pub fn minimal_not_below(w: &SignedPermutation) -> Result<Vec<SignedPermutation>> {
    let n = w.n();
    let all = enumerate_w(n, false)?;
    let outside: Vec<_> = all.into_iter().filter(|t| !leq_b(t, w)).collect();
    let mut minimal: Vec<_> = outside
        .iter()
        .filter(|t| !outside.iter().any(|s| s != *t && leq_b(s, t)))
        .cloned()
        .collect();
    minimal.sort_by(|a, b| a.window().cmp(b.window()));
    Ok(minimal)
}

/// Ordinary-permutation analogue on `S_n` in the `1..=n` convention.
pub fn minimal_not_below_s(v: &WindowPermutation, n: usize) -> Result<Vec<WindowPermutation>> {
    let v = v.pad_to(1, n as i64);
    let all = enumerate_s(1, n as i64, false)?;
    let outside: Vec<_> = all.into_iter().filter(|t| !leq_a(t, &v)).collect();
    let mut minimal: Vec<_> = outside
        .iter()
        .filter(|t| !outside.iter().any(|s| s != *t && leq_a(s, t)))
        .cloned()
        .collect();
    minimal.sort_by(|a, b| a.values().cmp(b.values()));
    Ok(minimal)
}

/// Brute-force unique Bruhat maximum of `{w in W_n | r_w(p,q) < k}`, with
/// uniqueness certified against every member of the set.
pub fn max_with_rank_below(k: i64, p: i64, q: i64, n: usize) -> Result<SignedPermutation> {
    let triple = crate::essential::BasicTriple::new_b(k, p, q)?;
    if (n as i64) < triple.n_min() {
        return Err(Error::Range(format!("n = {n} < n_min = {}", triple.n_min())));
    }
    let all = enumerate_w(n, false)?;
    let members: Vec<_> = all
        .into_iter()
        .filter(|w| (rank_b_unchecked(w, p, q) as i64) < k)
        .collect();
    let max = members
        .iter()
        .find(|m| members.iter().all(|x| leq_b(x, m)))
        .ok_or(Error::NoUniqueMax)?;
    Ok(max.clone())
}
