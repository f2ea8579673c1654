//! Signed and ordinary permutation values, arithmetic, embeddings, and basic
//! statistics.
//!
//! A [`SignedPermutation`] stores its one-line window `w(1),...,w(n)` and
//! implicitly extends to all integers by `w(-i) = -w(i)`, `w(0) = 0`, and
//! `w(m) = m` for `|m| > n`.  A [`WindowPermutation`] is an ordinary
//! permutation of a contiguous integer interval, again extended by the
//! identity outside its window; images of the embedding `iota` live on the
//! centered interval `[-n, n]`.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Element of the hyperoctahedral group `W_n`, stored as its window on `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    window: Vec<i64>,
}

impl SignedPermutation {
    /// Builds from a one-line window; the absolute values must be a
    /// permutation of `1..=n` with no zero entries.
    pub fn new(window: Vec<i64>) -> Result<Self> {
        let n = window.len() as i64;
        let mut seen = vec![false; window.len()];
        for &v in &window {
            if v == 0 {
                return Err(Error::Parse("zero entry in window".into()));
            }
            let a = v.abs();
            if a > n {
                return Err(Error::Parse(format!("entry {v} out of range for n = {n}")));
            }
            if seen[(a - 1) as usize] {
                return Err(Error::Parse(format!("duplicate absolute value {a}")));
            }
            seen[(a - 1) as usize] = true;
        }
        Ok(SignedPermutation { window })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation { window: (1..=n as i64).collect() }
    }

    /// The longest element `(-1, -2, ..., -n)`, of length `n^2`.
    pub fn longest_element(n: usize) -> Self {
        SignedPermutation { window: (1..=n as i64).map(|i| -i).collect() }
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    /// The value `w(i)` for any integer `i`, using the implicit extension.
    pub fn value(&self, i: i64) -> i64 {
        let n = self.window.len() as i64;
        match i {
            0 => 0,
            i if i > 0 => {
                if i <= n {
                    self.window[(i - 1) as usize]
                } else {
                    i
                }
            }
            i => -self.value(-i),
        }
    }

    /// Embeds into `W_m` by appending fixed points; `m >= n`.
    pub fn pad_to(&self, m: usize) -> Self {
        assert!(m >= self.n());
        let mut window = self.window.clone();
        window.extend(self.n() as i64 + 1..=m as i64);
        SignedPermutation { window }
    }

    /// Drops trailing fixed points, returning the window of the smallest
    /// `W_m` containing this element.
    pub fn shrink(&self) -> Self {
        let mut window = self.window.clone();
        while let Some(&last) = window.last() {
            if last == window.len() as i64 {
                window.pop();
            } else {
                break;
            }
        }
        SignedPermutation { window }
    }

    /// Number of inversions with the type B counting rule:
    /// `#{0<i<j | w(i)>w(j)} + #{0<i<=j | w(i)+w(j)<0}`.
    pub fn length(&self) -> usize {
        let n = self.window.len() as i64;
        let mut len = 0usize;
        for i in 1..=n {
            for j in i..=n {
                if i < j && self.value(i) > self.value(j) {
                    len += 1;
                }
                if self.value(i) + self.value(j) < 0 {
                    len += 1;
                }
            }
        }
        len
    }

    /// `(self * other)(i) = self(other(i))`: the left factor is applied last.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.n().max(other.n());
        let window = (1..=n as i64).map(|i| self.value(other.value(i))).collect();
        SignedPermutation { window }
    }

    pub fn inverse(&self) -> Self {
        let n = self.n();
        let mut window = vec![0i64; n];
        for i in 1..=n as i64 {
            let v = self.value(i);
            if v > 0 {
                window[(v - 1) as usize] = i;
            } else {
                window[(-v - 1) as usize] = -i;
            }
        }
        SignedPermutation { window }
    }

    /// The embedding into `S_{2n+1}` as a permutation of `[-n, n]`.
    pub fn iota(&self) -> WindowPermutation {
        let n = self.n() as i64;
        let values = (-n..=n).map(|i| self.value(i)).collect();
        WindowPermutation::new(-n, values).expect("iota image is a bijection")
    }

    /// The embedding into `S_{2n}` with the `w(0) = 0` slot omitted.
    ///
    /// Positions and values on `{-n..-1, 1..n}` are made contiguous by
    /// shifting positives down by one, giving a permutation of `[-n, n-1]`.
    pub fn iota_prime(&self) -> WindowPermutation {
        let n = self.n() as i64;
        let shift = |x: i64| if x > 0 { x - 1 } else { x };
        let values = (-n..=-1)
            .chain(1..=n)
            .map(|i| shift(self.value(i)))
            .collect();
        WindowPermutation::new(-n, values).expect("iota' image is a bijection")
    }

    /// Descent positions `i >= 0` with `w(i) > w(i+1)`; a descent at 0 means
    /// `w(1) < 0`.
    pub fn descents(&self) -> Vec<i64> {
        let n = self.n() as i64;
        (0..n).filter(|&i| self.value(i) > self.value(i + 1)).collect()
    }

    pub fn is_grassmannian(&self) -> bool {
        self.descents().len() == 1
    }

    pub fn is_bigrassmannian(&self) -> bool {
        self.is_grassmannian() && self.inverse().is_grassmannian()
    }

    /// One-line form with overbars for negative entries, e.g. `2̄ 3 1`.
    pub fn display_bar(&self) -> String {
        self.window
            .iter()
            .map(|&v| {
                if v < 0 {
                    format!("{}\u{0304}", -v)
                } else {
                    v.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedPermutation({self})")
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let tokens: Vec<&str> = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        if tokens.is_empty() {
            return Err(Error::Parse("empty input".into()));
        }
        let mut window = Vec::with_capacity(tokens.len());
        for t in &tokens {
            let v: i64 = t
                .parse()
                .map_err(|_| Error::Parse(format!("bad token {t:?}")))?;
            window.push(v);
        }
        SignedPermutation::new(window)
    }
}

/// Ordinary permutation of a contiguous integer interval `[lo, hi]`,
/// extended by the identity outside it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WindowPermutation {
    lo: i64,
    values: Vec<i64>,
}

impl WindowPermutation {
    pub fn new(lo: i64, values: Vec<i64>) -> Result<Self> {
        let hi = lo + values.len() as i64 - 1;
        let mut seen = vec![false; values.len()];
        for &v in &values {
            if v < lo || v > hi {
                return Err(Error::Parse(format!("value {v} outside [{lo}, {hi}]")));
            }
            if seen[(v - lo) as usize] {
                return Err(Error::Parse(format!("duplicate value {v}")));
            }
            seen[(v - lo) as usize] = true;
        }
        Ok(WindowPermutation { lo, values })
    }

    pub fn identity(lo: i64, hi: i64) -> Self {
        WindowPermutation { lo, values: (lo..=hi).collect() }
    }

    /// The reversal of `[1, n]`, longest element of `S_n` in the `1..=n`
    /// convention.
    pub fn longest_s(n: usize) -> Self {
        WindowPermutation { lo: 1, values: (1..=n as i64).rev().collect() }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.values.len() as i64 - 1
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, i: i64) -> i64 {
        if i < self.lo || i > self.hi() {
            i
        } else {
            self.values[(i - self.lo) as usize]
        }
    }

    pub fn pad_to(&self, lo: i64, hi: i64) -> Self {
        assert!(lo <= self.lo && hi >= self.hi());
        let values = (lo..=hi).map(|i| self.value(i)).collect();
        WindowPermutation { lo, values }
    }

    pub fn inverse(&self) -> Self {
        let mut values = vec![0i64; self.values.len()];
        for (j, &v) in self.values.iter().enumerate() {
            values[(v - self.lo) as usize] = self.lo + j as i64;
        }
        WindowPermutation { lo: self.lo, values }
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let values = (lo..=hi).map(|i| self.value(other.value(i))).collect();
        WindowPermutation { lo, values }
    }

    /// All positions `i` with `v(i) > v(i+1)`; these lie in `[lo, hi-1]`.
    pub fn descents(&self) -> Vec<i64> {
        (self.lo..self.hi())
            .filter(|&i| self.value(i) > self.value(i + 1))
            .collect()
    }

    pub fn is_grassmannian(&self) -> bool {
        self.descents().len() == 1
    }

    pub fn is_bigrassmannian(&self) -> bool {
        self.is_grassmannian() && self.inverse().is_grassmannian()
    }

    /// Inversion count of the window.
    pub fn length(&self) -> usize {
        let mut len = 0;
        for i in 0..self.values.len() {
            for j in i + 1..self.values.len() {
                if self.values[i] > self.values[j] {
                    len += 1;
                }
            }
        }
        len
    }
}

impl fmt::Display for WindowPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for WindowPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WindowPermutation[{}..{}]({self})", self.lo, self.hi())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(text: &str) -> SignedPermutation {
        text.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(sp("-2 3 1").window(), &[-2, 3, 1]);
        assert_eq!(sp("1 2 3"), SignedPermutation::identity(3));
        assert!("-2 -2 1".parse::<SignedPermutation>().is_err());
        assert!("0 1".parse::<SignedPermutation>().is_err());
        assert!("4 1".parse::<SignedPermutation>().is_err());
        assert_eq!(sp("-2, 3, 1"), sp("-2 3 1"));
    }

    #[test]
    fn length_examples() {
        assert_eq!(sp("-2 3 1").length(), 3);
        assert_eq!(SignedPermutation::identity(5).length(), 0);
        assert_eq!(sp("-1 -2 -3").length(), 9);
        assert_eq!(SignedPermutation::longest_element(4).length(), 16);
    }

    #[test]
    fn longest_element_window() {
        assert_eq!(SignedPermutation::longest_element(2).window(), &[-1, -2]);
        assert_eq!(SignedPermutation::longest_element(1).window(), &[-1]);
    }

    #[test]
    fn compose_and_inverse() {
        let a = SignedPermutation::longest_element(2);
        let b = sp("2 1");
        assert_eq!(a.compose(&b), sp("-2 -1"));
        assert_eq!(sp("4 -3 1 2").inverse(), sp("3 4 -2 1"));
        let id = SignedPermutation::identity(3);
        assert_eq!(id.inverse(), id);
        let w = sp("-2 3 1");
        assert_eq!(w.compose(&w.inverse()), id);
    }

    #[test]
    fn iota_examples() {
        let w = sp("-2 3 1");
        let v = w.iota();
        assert_eq!(v.lo(), -3);
        assert_eq!(v.values(), &[-1, -3, 2, 0, -2, 3, 1]);
        let id = SignedPermutation::identity(2);
        assert_eq!(id.iota(), WindowPermutation::identity(-2, 2));
        let vp = w.iota_prime();
        // 0 slot dropped, positives shifted down to keep the interval contiguous
        assert_eq!(vp.lo(), -3);
        assert_eq!(vp.values(), &[-1, -3, 1, -2, 2, 0]);
    }

    #[test]
    fn descents_and_grassmannian() {
        assert_eq!(sp("-2 1 -3").descents(), vec![0, 2]);
        assert!(sp("1 4 -3 2").is_bigrassmannian());
        assert!(!SignedPermutation::identity(3).is_grassmannian());
        let w = sp("-2 1 -3");
        let v = w.iota();
        assert_eq!(v.descents(), vec![-3, -1, 0, 2]);
    }

    #[test]
    fn padding_preserves_statistics() {
        let w = sp("-2 3 1");
        let padded = w.pad_to(5);
        assert_eq!(padded.length(), w.length());
        assert_eq!(padded.descents(), w.descents());
        assert_eq!(padded.shrink(), w);
    }

    #[test]
    fn display_round_trip() {
        let w = sp("-5 6 4 -3 -1 2");
        assert_eq!(w.to_string().parse::<SignedPermutation>().unwrap(), w);
        assert_eq!(sp("-2 3 1").display_bar(), "2\u{0304} 3 1");
    }
}
