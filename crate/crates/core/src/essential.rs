//! Basic triples and the permutations they name, essential sets in types
//! A/B/C, dissecting elements, the base (join-irreducibles) of `W_n`, and the
//! bijection onto Bruhat-minimal elements not below a given one.
//!
//! A basic triple `(k, p, q)` names the rank condition "at least `k` values
//! `<= -q` at positions `>= p`" (type B) or its type A analogues; the basic
//! permutation of a triple is the Bruhat-minimal element satisfying it.  The
//! essential set of `w` is the minimal list of such conditions cutting out
//! `{x | x >= w}`, read off the SE corners of the extended diagram.

use std::collections::BTreeSet;
use std::fmt;

use crate::bruhat::{leq_a, leq_b, rank_a, rank_b_unchecked, ConventionA, RankTable};
use crate::diagrams::{board_a, board_b, board_c, Board, BoardKind};
use crate::perm_core::{SignedPermutation, WindowPermutation};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TripleFlavor {
    ACentered,
    ASmall,
    B,
}

impl TripleFlavor {
    fn name(self) -> &'static str {
        match self {
            TripleFlavor::ACentered => "A-centered",
            TripleFlavor::ASmall => "A-small",
            TripleFlavor::B => "B",
        }
    }
}

/// A validated rank-condition triple `(k, p, q)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasicTriple {
    k: i64,
    p: i64,
    q: i64,
    flavor: TripleFlavor,
}

impl fmt::Debug for BasicTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})[{}]", self.k, self.p, self.q, self.flavor.name())
    }
}

impl fmt::Display for BasicTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.k, self.p, self.q)
    }
}

impl BasicTriple {
    /// Centered type A triple: any integers with `k > max(0, 1-p-q)`.
    pub fn new_a_centered(k: i64, p: i64, q: i64) -> Result<Self> {
        if k > 0.max(1 - p - q) {
            Ok(BasicTriple { k, p, q, flavor: TripleFlavor::ACentered })
        } else {
            Err(Error::InvalidTriple { k, p, q, flavor: "A-centered" })
        }
    }

    /// Small type A triple: `k, p, q > 0` and `p >= k > p - q`.
    pub fn new_a_small(k: i64, p: i64, q: i64) -> Result<Self> {
        if k > 0 && p > 0 && q > 0 && p >= k && k > p - q {
            Ok(BasicTriple { k, p, q, flavor: TripleFlavor::ASmall })
        } else {
            Err(Error::InvalidTriple { k, p, q, flavor: "A-small" })
        }
    }

    /// Type B triple: the centered condition plus `p > 0`, `q != 0`, and
    /// `q > 0` whenever `p = 1`.
    pub fn new_b(k: i64, p: i64, q: i64) -> Result<Self> {
        if k > 0.max(1 - p - q) && p > 0 && q != 0 && (p != 1 || q > 0) {
            Ok(BasicTriple { k, p, q, flavor: TripleFlavor::B })
        } else {
            Err(Error::InvalidTriple { k, p, q, flavor: "B" })
        }
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn flavor(&self) -> TripleFlavor {
        self.flavor
    }

    /// Smallest group the triple's basic permutation lives in: the window
    /// half-width `N` for the centered flavor, `n` otherwise.
    pub fn n_min(&self) -> i64 {
        let BasicTriple { k, p, q, .. } = *self;
        match self.flavor {
            TripleFlavor::ACentered => (-p - k + 1)
                .abs()
                .max(p.abs())
                .max(q.abs())
                .max((q + k - 1).abs()),
            TripleFlavor::ASmall => q + k,
            TripleFlavor::B => (p + k - 1).max(q + k - 1),
        }
    }
}

/// `(k,p,q) -> (k+p+q-1, -p+1, -q+1)`, an involution on centered triples.
pub fn reflect(t: &BasicTriple) -> Result<BasicTriple> {
    if t.flavor != TripleFlavor::ACentered {
        return Err(Error::InvalidTriple { k: t.k, p: t.p, q: t.q, flavor: "A-centered" });
    }
    BasicTriple::new_a_centered(t.k + t.p + t.q - 1, -t.p + 1, -t.q + 1)
}

/// Basic permutation of a centered triple: on the window `[-N, N]`,
/// positions `-p-k+1 ..= -p` carry `q ..= q+k-1` and the rest is filled in
/// increasing order.  Bruhat-minimal with `#{i <= -p | v(i) >= q} >= k`.
pub fn basic_perm_a_centered(t: &BasicTriple) -> Result<WindowPermutation> {
    if t.flavor != TripleFlavor::ACentered {
        return Err(Error::InvalidTriple { k: t.k, p: t.p, q: t.q, flavor: "A-centered" });
    }
    let BasicTriple { k, p, q, .. } = *t;
    let big = t.n_min();
    let block_lo = -p - k + 1;
    let block: BTreeSet<i64> = (q..q + k).collect();
    let mut fill = (-big..=big).filter(|v| !block.contains(v));
    let values = (-big..=big)
        .map(|i| {
            if i >= block_lo && i <= -p {
                q + (i - block_lo)
            } else {
                fill.next().expect("complement fills remaining positions")
            }
        })
        .collect();
    WindowPermutation::new(-big, values)
}

/// Basic permutation of a small triple, in one line on `1 ..= q+k`:
/// `1, ..., p-k, q+1, ..., q+k, p-k+1, ..., q`.
pub fn basic_perm_a_small(t: &BasicTriple) -> Result<WindowPermutation> {
    if t.flavor != TripleFlavor::ASmall {
        return Err(Error::InvalidTriple { k: t.k, p: t.p, q: t.q, flavor: "A-small" });
    }
    let BasicTriple { k, p, q, .. } = *t;
    let mut values: Vec<i64> = (1..=p - k).collect();
    values.extend(q + 1..=q + k);
    values.extend(p - k + 1..=q);
    WindowPermutation::new(1, values)
}

/// The four-case window table, shared by [`basic_signed`] and the dissecting
/// elements (whose inner triples may have `p = 1, q < 0`).
fn signed_from_table(k: i64, p: i64, q: i64) -> SignedPermutation {
    debug_assert!(k > 0.max(1 - p - q) && p >= 1 && q != 0);
    let mut window: Vec<i64> = Vec::new();
    if q >= p {
        window.extend(1..p);
        window.extend(-(q + k - 1)..=-q);
        window.extend(p..q);
    } else if q > 0 {
        window.extend(1..q);
        window.extend(q + k..p + k);
        window.extend(-(q + k - 1)..=-q);
    } else if k > -q {
        window.extend(k + 1..p + k);
        window.extend(-k..q);
        window.extend(1..=-q);
    } else {
        window.extend(1..=-q - k);
        window.extend(-q + 1..p + k);
        window.extend(-q - k + 1..=-q);
    }
    SignedPermutation::new(window).expect("table rows are valid windows")
}

/// Basic signed permutation of a B triple: Bruhat-minimal `w` with
/// `rank_B(w, p, q) >= k`, in `W_{n_min}`.
pub fn basic_signed(t: &BasicTriple) -> Result<SignedPermutation> {
    if t.flavor != TripleFlavor::B {
        return Err(Error::InvalidTriple { k: t.k, p: t.p, q: t.q, flavor: "B" });
    }
    Ok(signed_from_table(t.k, t.p, t.q))
}

/// `l(basic_signed(t))` in closed form, case-split on the sign of `q`.
pub fn basic_length(t: &BasicTriple) -> Result<i64> {
    if t.flavor != TripleFlavor::B {
        return Err(Error::InvalidTriple { k: t.k, p: t.p, q: t.q, flavor: "B" });
    }
    let BasicTriple { k, p, q, .. } = *t;
    let choose2 = |m: i64| m * (m - 1) / 2;
    Ok(if q > 0 {
        (p + q - 1) * k + choose2(k)
    } else if k > -q {
        p * k + choose2(k) - choose2(-q + 1)
    } else {
        (p + q + k - 1) * k
    })
}

/// Triple of the inverse basic element: `(k, q, p)` when `q > 0`, else
/// `(p+q+k-1, 1-q, 1-p)`.
pub fn basic_inverse(t: &BasicTriple) -> Result<BasicTriple> {
    if t.flavor != TripleFlavor::B {
        return Err(Error::InvalidTriple { k: t.k, p: t.p, q: t.q, flavor: "B" });
    }
    let BasicTriple { k, p, q, .. } = *t;
    if q > 0 {
        BasicTriple::new_b(k, q, p)
    } else {
        BasicTriple::new_b(p + q + k - 1, 1 - q, 1 - p)
    }
}

/// All B triples with `n_min <= n`, iterated `k` outer, `p` middle, `q`
/// inner.
pub fn enumerate_basic(n: usize) -> Vec<BasicTriple> {
    let n = n as i64;
    let mut out = Vec::new();
    for k in 1..=n {
        for p in 1..=n - k + 1 {
            for q in 2 - p - k..=n - k + 1 {
                if let Ok(t) = BasicTriple::new_b(k, p, q) {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// `(2n^3 + n) / 3`, the number of basic elements of `W_n`.
pub fn count_basic(n: usize) -> usize {
    let n = n as u64;
    ((2 * n * n * n + n) / 3) as usize
}

/// A canonically sorted set of rank-condition triples.
#[derive(Clone, PartialEq, Eq)]
pub struct EssentialSet {
    triples: Vec<BasicTriple>,
}

impl EssentialSet {
    pub fn from_triples(mut triples: Vec<BasicTriple>) -> Self {
        triples.sort_by_key(|t| (t.p, t.q, t.k));
        triples.dedup();
        EssentialSet { triples }
    }

    pub fn triples(&self) -> &[BasicTriple] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, t: &BasicTriple) -> bool {
        self.triples.contains(t)
    }
}

impl fmt::Display for EssentialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.triples.iter().map(|t| t.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for EssentialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn corner_triples_signed(w: &SignedPermutation, board: &Board, kind: BoardKind) -> EssentialSet {
    let corners = board.se_corners();
    let corner_set: BTreeSet<(i64, i64)> = corners.iter().copied().collect();
    let mut triples = Vec::new();
    for &(a, b) in &corners {
        let p = -b;
        let q = board.row_succ(a);
        let k = rank_b_unchecked(w, p, q) as i64;
        // Exception (i): the condition at (1, q) with q < 0 follows from the
        // one reflected across the center row.
        if p == 1 && q < 0 {
            continue;
        }
        // Exception (ii): a corner pair straddling the center row forces only
        // one independent condition; the positive-q one is dropped when its
        // rank is determined by the opposite corner's.
        if p > 1 && q > 0 {
            let opposite = (-q, -p);
            if opposite != (a, b)
                && corner_set.contains(&opposite)
                && k == rank_b_unchecked(w, p, 1 - q) as i64 - (q - 1)
            {
                continue;
            }
        }
        let t = BasicTriple::new_b(k, p, q).expect("essential corner yields a basic triple");
        debug_assert_eq!(kind == BoardKind::C, board.row_succ(-1) == 1);
        triples.push(t);
    }
    EssentialSet::from_triples(triples)
}

/// Essential set of `w` read off the type B board.
pub fn essential_set_b(w: &SignedPermutation) -> EssentialSet {
    corner_triples_signed(w, &board_b(w), BoardKind::B)
}

/// Essential set of `w` read off the type C board (0 row omitted, strict
/// crosses); `q = 1` stands in for the missing `q - 1 = 0` row.
pub fn essential_set_c(w: &SignedPermutation) -> EssentialSet {
    corner_triples_signed(w, &board_c(w), BoardKind::C)
}

/// Essential set of an ordinary permutation on a centered window: SE corner
/// `(q-1, -p)` of the diagram contributes `(rank_A(v,p,q), p, q)`.
pub fn essential_set_a_centered(v: &WindowPermutation) -> EssentialSet {
    let board = board_a(v);
    let triples = board
        .se_corners()
        .into_iter()
        .map(|(a, b)| {
            let (p, q) = (-b, a + 1);
            let k = rank_a(v, p, q, ConventionA::Centered).expect("corner in range") as i64;
            BasicTriple::new_a_centered(k, p, q).expect("corner yields a valid triple")
        })
        .collect();
    EssentialSet::from_triples(triples)
}

/// Essential set in the `1..=n` convention: SE corner `(q, p)` of the
/// diagram contributes `(#{i <= p | v(i) > q}, p, q)`.
pub fn essential_set_a_small(v: &WindowPermutation) -> EssentialSet {
    let board = board_a(v);
    let triples = board
        .se_corners()
        .into_iter()
        .map(|(a, b)| {
            let k = rank_a(v, b, a, ConventionA::Small).expect("corner in range") as i64;
            BasicTriple::new_a_small(k, b, a).expect("corner yields a valid triple")
        })
        .collect();
    EssentialSet::from_triples(triples)
}

/// Triples whose basic elements are Bruhat-maximal among basic elements
/// `<= w`; an independent oracle for [`essential_set_b`].
pub fn maximal_basic_below(w: &SignedPermutation) -> EssentialSet {
    let below: Vec<(BasicTriple, SignedPermutation)> = enumerate_basic(w.n())
        .into_iter()
        .map(|t| {
            let b = basic_signed(&t).expect("enumerated triples are valid");
            (t, b)
        })
        .filter(|(_, b)| leq_b(b, w))
        .collect();
    let maximal = below
        .iter()
        .filter(|(_, b)| {
            !below.iter().any(|(_, b2)| b != b2 && leq_b(b, b2))
        })
        .map(|(t, _)| *t)
        .collect();
    EssentialSet::from_triples(maximal)
}

/// The dissecting element of a B triple in `W_n`: the unique maximum of
/// `{x | rank_B(x, p, q) < k}`, via the closed form
/// `w(n+2-p-k, p, 1-q) * w_longest` (third argument `1` when `q = 1`).
pub fn dissecting_u(t: &BasicTriple, n: usize) -> Result<SignedPermutation> {
    if t.flavor != TripleFlavor::B {
        return Err(Error::InvalidTriple { k: t.k, p: t.p, q: t.q, flavor: "B" });
    }
    if (n as i64) < t.n_min() {
        return Err(Error::Range(format!("n = {n} < n_min = {}", t.n_min())));
    }
    let q_inner = if t.q == 1 { 1 } else { 1 - t.q };
    let inner = signed_from_table(n as i64 + 2 - t.p - t.k, t.p, q_inner);
    Ok(inner.pad_to(n).compose(&SignedPermutation::longest_element(n)))
}

/// Type A analogue in `S_n` (small convention): the unique maximum of
/// `{x | rank(x, p, q) < k}`, via `v(n+1-q-k, n-p, q) * w_longest`.
pub fn dissecting_t_a(t: &BasicTriple, n: usize) -> Result<WindowPermutation> {
    if t.flavor != TripleFlavor::ASmall {
        return Err(Error::InvalidTriple { k: t.k, p: t.p, q: t.q, flavor: "A-small" });
    }
    let n = n as i64;
    if n < t.q + t.k {
        return Err(Error::Range(format!("n = {n} < n_min = {}", t.q + t.k)));
    }
    let inner = BasicTriple::new_a_small(n + 1 - t.q - t.k, n - t.p, t.q)?;
    let v = basic_perm_a_small(&inner)?.pad_to(1, n);
    Ok(v.compose(&WindowPermutation::longest_s(n as usize)))
}

/// The Bruhat-minimal elements of `W_n` not below `w`, computed through the
/// essential set of `w * w_longest` rather than by enumeration.
pub fn rwy_via_bijection(w: &SignedPermutation, n: usize) -> Result<Vec<SignedPermutation>> {
    let top = SignedPermutation::longest_element(n);
    let flipped = w.pad_to(n).compose(&top);
    let mut out = Vec::new();
    for t in essential_set_b(&flipped).triples() {
        out.push(dissecting_u(t, n)?.compose(&top));
    }
    out.sort_by(|a, b| a.window().cmp(b.window()));
    Ok(out)
}

/// Ordinary-permutation analogue of [`rwy_via_bijection`] on `S_n`.
pub fn rwy_via_bijection_a(v: &WindowPermutation, n: usize) -> Result<Vec<WindowPermutation>> {
    let top = WindowPermutation::longest_s(n);
    let flipped = v.pad_to(1, n as i64).compose(&top);
    let mut out = Vec::new();
    for t in essential_set_a_small(&flipped).triples() {
        out.push(dissecting_t_a(t, n)?.compose(&top));
    }
    out.sort_by(|a, b| a.values().cmp(b.values()));
    Ok(out)
}

/// Which comparison certifies `basic_signed(t) <= basic_signed(t2)` when the
/// direct type A comparison of `v(t) <= v(t2)` does not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExceptionCase {
    CaseI,
    CaseII,
    None,
}

fn centered_of(t: &BasicTriple) -> WindowPermutation {
    let c = BasicTriple::new_a_centered(t.k, t.p, t.q).expect("B triples are centered triples");
    basic_perm_a_centered(&c).expect("valid centered triple")
}

fn case_i_witness(t2: &BasicTriple) -> Option<WindowPermutation> {
    if t2.q >= 0 {
        return None;
    }
    let c = BasicTriple::new_a_centered(t2.k + t2.q, t2.p, -t2.q + 1).ok()?;
    basic_perm_a_centered(&c).ok()
}

fn case_ii_witness(t2: &BasicTriple) -> WindowPermutation {
    let c = BasicTriple::new_a_centered(t2.k, t2.p, t2.q).expect("B triples are centered triples");
    let r = reflect(&c).expect("reflection of a centered triple");
    basic_perm_a_centered(&r).expect("reflected triple is valid")
}

/// Decides `basic_signed(t) <= basic_signed(t2)` purely through type A
/// comparisons of centered basic permutations: directly, against the
/// reflection of `v(t2)`, or against the shifted witness `v(k2+q2, p2,
/// 1-q2)` when `q2 < 0`.
pub fn basic_leq_via_type_a(t: &BasicTriple, t2: &BasicTriple) -> Result<bool> {
    if t.flavor != TripleFlavor::B || t2.flavor != TripleFlavor::B {
        return Err(Error::InvalidTriple { k: t.k, p: t.p, q: t.q, flavor: "B" });
    }
    let v = centered_of(t);
    if leq_a(&v, &centered_of(t2)) {
        return Ok(true);
    }
    if let Some(w) = case_i_witness(t2) {
        if leq_a(&v, &w) {
            return Ok(true);
        }
    }
    Ok(leq_a(&v, &case_ii_witness(t2)))
}

/// Reports which comparison rescues a B-order relation invisible to the
/// direct type A comparison; `None` when the direct comparison settles it
/// (either way).
pub fn classify_exception(t: &BasicTriple, t2: &BasicTriple) -> Result<ExceptionCase> {
    if t.flavor != TripleFlavor::B || t2.flavor != TripleFlavor::B {
        return Err(Error::InvalidTriple { k: t.k, p: t.p, q: t.q, flavor: "B" });
    }
    let v = centered_of(t);
    if leq_a(&v, &centered_of(t2)) {
        return Ok(ExceptionCase::None);
    }
    if let Some(w) = case_i_witness(t2) {
        if leq_a(&v, &w) {
            return Ok(ExceptionCase::CaseI);
        }
    }
    if leq_a(&v, &case_ii_witness(t2)) {
        return Ok(ExceptionCase::CaseII);
    }
    Ok(ExceptionCase::None)
}

/// Join-irreducible elements of `W_n`, from first principles: `x` belongs to
/// the base iff `x != id` and some `u` has `x` not below it while everything
/// strictly below `x` is.  Must coincide with the basic elements.
pub fn base_of(n: usize, override_budget: bool) -> Result<Vec<SignedPermutation>> {
    let all = crate::bruhat::enumerate_w(n, override_budget)?;
    let m = all.len();
    let tables: Vec<RankTable> = all.iter().map(|w| RankTable::build(&w.iota())).collect();
    let mut leq = vec![false; m * m];
    for i in 0..m {
        for j in 0..m {
            leq[i * m + j] = tables[i].dominated_by(&tables[j]);
        }
    }
    let id = SignedPermutation::identity(n);
    let mut base = Vec::new();
    for (xi, x) in all.iter().enumerate() {
        if *x == id {
            continue;
        }
        let strictly_below: Vec<usize> = (0..m)
            .filter(|&z| z != xi && leq[z * m + xi])
            .collect();
        let witness = (0..m).any(|u| {
            !leq[xi * m + u] && strictly_below.iter().all(|&z| leq[z * m + u])
        });
        if witness {
            base.push(x.clone());
        }
    }
    base.sort_by(|a, b| a.window().cmp(b.window()));
    Ok(base)
}
