//! Named verification suites: each one checks a structural claim across an
//! exhaustive or seeded-random sweep and reports pass/fail with details.
//!
//! Suites precompute the Bruhat order on `W_n` as a boolean matrix (via the
//! dominance tables) so exhaustive sweeps stay fast.

use std::collections::{BTreeMap, BTreeSet};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::bruhat::{
    enumerate_s, enumerate_w, minimal_not_below, minimal_not_below_s, rank_b, RankTable,
};
use crate::diagrams::{board_b, board_c, BoardKind, RenderFormat};
use crate::essential::{
    base_of, basic_leq_via_type_a, basic_signed, classify_exception, count_basic, dissecting_u,
    enumerate_basic, essential_set_b, essential_set_c, rwy_via_bijection, rwy_via_bijection_a,
    BasicTriple, EssentialSet, ExceptionCase,
};
use crate::matrix_model::{
    sample_cell, satisfies_triple, verify_rank_function, verify_theorem_a, PrimeField,
};
use crate::perm_core::SignedPermutation;
use crate::{Error, Result};

/// Suite names in their fixed execution order for `all`.
pub const SUITES: &[&str] = &[
    "ess-maximal",
    "sup",
    "minimality",
    "base",
    "counts",
    "bigrassmannian",
    "rwy",
    "lemma-compare",
    "matrix-rank",
    "theorem-a",
    "type-c-match",
];

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Exhaustive sweep size; each suite has its own default.
    pub n: Option<usize>,
    /// Random sample count; each suite has its own default.
    pub samples: Option<usize>,
    pub seed: u64,
    pub modulus: u64,
    pub override_budget: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { n: None, samples: None, seed: 0, modulus: 10007, override_budget: false }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub details: Vec<String>,
    /// Notable observations that do not fail the suite (e.g. a documented
    /// counterexample the suite is designed to surface).
    pub findings: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport { name: name.to_string(), passed: true, details: Vec::new(), findings: Vec::new() }
    }

    fn fail(&mut self, line: String) {
        self.passed = false;
        // Cap the failure spam; the count still tells the whole story.
        if self.details.iter().filter(|d| d.starts_with("FAIL")).count() < 8 {
            self.details.push(format!("FAIL {line}"));
        }
    }

    fn note(&mut self, line: String) {
        self.details.push(line);
    }
}

pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<Vec<SuiteReport>> {
    match name {
        "all" => SUITES.iter().map(|s| run_one(s, opts)).collect(),
        other => Ok(vec![run_one(other, opts)?]),
    }
}

fn run_one(name: &str, opts: &VerifyOptions) -> Result<SuiteReport> {
    match name {
        "ess-maximal" => suite_ess_maximal(opts),
        "sup" => suite_sup(opts),
        "minimality" => suite_minimality(opts),
        "base" => suite_base(opts),
        "counts" => suite_counts(opts),
        "bigrassmannian" => suite_bigrassmannian(opts),
        "rwy" => suite_rwy(opts),
        "lemma-compare" => suite_lemma_compare(opts),
        "matrix-rank" => suite_matrix_rank(opts),
        "theorem-a" => suite_theorem_a(opts),
        "type-c-match" => suite_type_c_match(opts),
        other => Err(Error::Parse(format!("unknown suite: {other}"))),
    }
}

/// The Bruhat order on `W_n`, precomputed as a boolean matrix.
struct Poset {
    elems: Vec<SignedPermutation>,
    index: BTreeMap<Vec<i64>, usize>,
    leq: Vec<bool>,
}

impl Poset {
    fn build(n: usize, override_budget: bool) -> Result<Poset> {
        let elems = enumerate_w(n, override_budget)?;
        let tables: Vec<RankTable> = elems.iter().map(|w| RankTable::build(&w.iota())).collect();
        let m = elems.len();
        let mut leq = vec![false; m * m];
        for i in 0..m {
            for j in 0..m {
                leq[i * m + j] = tables[i].dominated_by(&tables[j]);
            }
        }
        let index = elems
            .iter()
            .enumerate()
            .map(|(i, w)| (w.window().to_vec(), i))
            .collect();
        Ok(Poset { elems, index, leq })
    }

    fn len(&self) -> usize {
        self.elems.len()
    }

    fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.elems.len() + j]
    }

    fn idx(&self, w: &SignedPermutation) -> usize {
        self.index[w.window()]
    }
}

/// Basic elements of `W_n` with their triples and pairwise order.
struct BasicFamily {
    triples: Vec<BasicTriple>,
    elems: Vec<SignedPermutation>,
    tables: Vec<RankTable>,
    leq: Vec<bool>,
}

impl BasicFamily {
    fn build(n: usize) -> Result<BasicFamily> {
        let triples = enumerate_basic(n);
        let elems: Vec<SignedPermutation> = triples
            .iter()
            .map(|t| Ok(basic_signed(t)?.pad_to(n)))
            .collect::<Result<_>>()?;
        let tables: Vec<RankTable> = elems.iter().map(|w| RankTable::build(&w.iota())).collect();
        let m = elems.len();
        let mut leq = vec![false; m * m];
        for i in 0..m {
            for j in 0..m {
                leq[i * m + j] = tables[i].dominated_by(&tables[j]);
            }
        }
        Ok(BasicFamily { triples, elems, tables, leq })
    }

    /// Triples of the basic elements below `w` that are maximal among them.
    fn maximal_below(&self, w_table: &RankTable) -> EssentialSet {
        let below: Vec<usize> = (0..self.elems.len())
            .filter(|&i| self.tables[i].dominated_by(w_table))
            .collect();
        let maximal: Vec<BasicTriple> = below
            .iter()
            .filter(|&&i| {
                !below
                    .iter()
                    .any(|&j| j != i && self.leq[i * self.elems.len() + j])
            })
            .map(|&i| self.triples[i])
            .collect();
        EssentialSet::from_triples(maximal)
    }
}

fn random_w(rng: &mut ChaCha8Rng, n: usize) -> SignedPermutation {
    let mut values: Vec<i64> = (1..=n as i64).collect();
    values.shuffle(rng);
    for v in values.iter_mut() {
        if rng.gen_bool(0.5) {
            *v = -*v;
        }
    }
    SignedPermutation::new(values).expect("valid window")
}

/// The essential set is exactly the maximal basic elements below `w`:
/// exhaustive at `n`, seeded-random at `n + 1`.
fn suite_ess_maximal(opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("ess-maximal");
    let n = opts.n.unwrap_or(4);
    let family = BasicFamily::build(n)?;
    let elems = enumerate_w(n, opts.override_budget)?;
    for w in &elems {
        let got = family.maximal_below(&RankTable::build(&w.iota()));
        let expected = essential_set_b(w);
        if got.triples() != expected.triples() {
            report.fail(format!("w = {w}: Ess = {expected} but maximal basic = {got}"));
        }
    }
    report.note(format!("exhaustive: {} elements of W_{n}", elems.len()));

    let n2 = n + 1;
    let samples = opts.samples.unwrap_or(500);
    let family2 = BasicFamily::build(n2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..samples {
        let w = random_w(&mut rng, n2);
        let got = family2.maximal_below(&RankTable::build(&w.iota()));
        let expected = essential_set_b(&w);
        if got.triples() != expected.triples() {
            report.fail(format!("w = {w}: Ess = {expected} but maximal basic = {got}"));
        }
    }
    report.note(format!("random: {samples} elements of W_{n2}, seed {}", opts.seed));
    Ok(report)
}

/// `sup(Ess(w)) = w`, with the least upper bound certified unique.
fn suite_sup(opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("sup");
    let n = opts.n.unwrap_or(4);
    let poset = Poset::build(n, opts.override_budget)?;
    for wi in 0..poset.len() {
        let w = &poset.elems[wi];
        let members: Vec<usize> = essential_set_b(w)
            .triples()
            .iter()
            .map(|t| Ok(poset.idx(&basic_signed(t)?.pad_to(n))))
            .collect::<Result<_>>()?;
        let uppers: Vec<usize> = (0..poset.len())
            .filter(|&x| members.iter().all(|&e| poset.leq(e, x)))
            .collect();
        let minimum = uppers
            .iter()
            .copied()
            .find(|&x| uppers.iter().all(|&y| poset.leq(x, y)));
        match minimum {
            Some(x) if x == wi => {}
            Some(x) => report.fail(format!("w = {w}: sup(Ess(w)) = {}", poset.elems[x])),
            None => report.fail(format!("w = {w}: no unique least upper bound")),
        }
    }
    report.note(format!("{} elements of W_{n}, supremum unique throughout", poset.len()));
    Ok(report)
}

/// Every essential condition is needed: the dissecting element of `t0`
/// satisfies all other essential conditions of `w` and fails `t0`, the
/// dissecting element is the unique maximum of `{x | r_x(p,q) < k}` (and the
/// `(q,p)` argument order is reported for comparison), and sampled matrices
/// in its cell witness the failure numerically.
fn suite_minimality(opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("minimality");
    let n = opts.n.unwrap_or(4);
    let poset = Poset::build(n, opts.override_budget)?;
    let mut seen: BTreeSet<(i64, i64, i64)> = BTreeSet::new();
    let mut witnesses = 0usize;
    for w in &poset.elems {
        let ess = essential_set_b(w);
        for t0 in ess.triples() {
            let u = dissecting_u(t0, n)?;
            for t in ess.triples() {
                let r = rank_b(&u, t.p(), t.q())? as i64;
                if t == t0 {
                    if r >= t.k() {
                        report.fail(format!("w = {w}, t0 = {t0}: u = {u} still satisfies t0"));
                    }
                } else if r < t.k() {
                    report.fail(format!("w = {w}, t0 = {t0}: u = {u} fails {t}"));
                }
            }
            witnesses += 1;
            seen.insert((t0.k(), t0.p(), t0.q()));
        }
    }
    report.note(format!("{witnesses} dissecting witnesses over W_{n}"));

    // Unique-maximum characterization, probing both argument orders of the
    // rank function to settle which one the construction realizes.
    let (mut pq_ok, mut qp_ok, mut qp_invalid) = (0usize, 0usize, 0usize);
    for &(k, p, q) in &seen {
        let t = BasicTriple::new_b(k, p, q)?;
        let u = dissecting_u(&t, n)?;
        let ui = poset.idx(&u);
        let unique_max = |members: &[usize]| -> Option<usize> {
            members
                .iter()
                .copied()
                .find(|&m| members.iter().all(|&x| poset.leq(x, m)))
        };
        let members: Vec<usize> = (0..poset.len())
            .filter(|&x| (rank_b(&poset.elems[x], p, q).unwrap() as i64) < k)
            .collect();
        if unique_max(&members) == Some(ui) {
            pq_ok += 1;
        } else {
            report.fail(format!("t = {t}: u is not the unique max for order (p,q)"));
        }
        if (1..=n as i64).contains(&q) && p.unsigned_abs() <= n as u64 {
            let members: Vec<usize> = (0..poset.len())
                .filter(|&x| (rank_b(&poset.elems[x], q, p).unwrap() as i64) < k)
                .collect();
            if unique_max(&members) == Some(ui) {
                qp_ok += 1;
            }
        } else {
            qp_invalid += 1;
        }
    }
    report.note(format!(
        "argument order: (p,q) validates {pq_ok}/{} triples; (q,p) validates {qp_ok}/{} \
         ({qp_invalid} out of range)",
        seen.len(),
        seen.len()
    ));

    // Numeric half at n = 3: sampled points of the cell of u fail t0 alone.
    let field = PrimeField::new(opts.modulus)?;
    let samples = opts.samples.unwrap_or(2).max(1);
    let mut numeric = 0usize;
    for w in enumerate_w(3, false)? {
        let ess = essential_set_b(&w);
        for t0 in ess.triples() {
            let u = dissecting_u(t0, 3)?;
            for s in 0..samples {
                let m = sample_cell(&u, BoardKind::B, field, opts.seed.wrapping_add(s as u64))?;
                if satisfies_triple(&m, t0)? {
                    report.fail(format!("w = {w}, t0 = {t0}: sampled cell of u satisfies t0"));
                }
                for t in ess.triples().iter().filter(|t| *t != t0) {
                    if !satisfies_triple(&m, t)? {
                        report.fail(format!("w = {w}, t0 = {t0}: sampled cell of u fails {t}"));
                    }
                }
                numeric += 1;
            }
        }
    }
    report.note(format!("{numeric} sampled matrices over W_3 confirm the failures"));
    Ok(report)
}

/// The base of the Bruhat order is the basic elements, and each basic
/// element dissects `W_n` into `{>= w(t)} ⊔ {<= u(t,n)}`.
fn suite_base(opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("base");
    let n = opts.n.unwrap_or(3);
    let base = base_of(n, opts.override_budget)?;
    let mut basics: Vec<SignedPermutation> = enumerate_basic(n)
        .iter()
        .map(|t| Ok(basic_signed(t)?.pad_to(n)))
        .collect::<Result<_>>()?;
    basics.sort_by(|a, b| a.window().cmp(b.window()));
    if base != basics {
        report.fail(format!("base_of({n}) has {} elements, basics {}", base.len(), basics.len()));
    }
    report.note(format!("base_of({n}) = the {} basic elements", base.len()));

    for m in [3usize, 4] {
        let poset = Poset::build(m, opts.override_budget)?;
        for t in enumerate_basic(m) {
            let wt = poset.idx(&basic_signed(&t)?.pad_to(m));
            let ut = poset.idx(&dissecting_u(&t, m)?);
            for x in 0..poset.len() {
                if poset.leq(wt, x) == poset.leq(x, ut) {
                    report.fail(format!(
                        "t = {t}, x = {}: not dissected in W_{m}",
                        poset.elems[x]
                    ));
                }
            }
        }
        report.note(format!("dissection holds for all {} triples in W_{m}", count_basic(m)));
    }
    Ok(report)
}

/// `|enumerate_basic(n)| = (2n^3 + n)/3`.
fn suite_counts(opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("counts");
    let top = opts.n.unwrap_or(6);
    for n in 1..=top {
        let got = enumerate_basic(n).len();
        let expected = count_basic(n);
        if got != expected {
            report.fail(format!("n = {n}: {got} basic triples, expected {expected}"));
        } else {
            report.note(format!("n = {n}: {got} basic triples"));
        }
    }
    Ok(report)
}

/// Census of bigrassmannian elements against the basic ones.
fn suite_bigrassmannian(opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("bigrassmannian");
    let expected_nonbasic: BTreeMap<usize, Vec<Vec<i64>>> = BTreeMap::from([
        (4usize, vec![vec![1, 4, -3, 2]]),
        (
            5usize,
            vec![
                vec![1, 2, 5, -4, 3],
                vec![1, 4, -3, 2, 5],
                vec![1, 4, 5, -3, 2],
                vec![1, 5, -4, -3, 2],
                vec![1, 5, -4, 2, 3],
            ],
        ),
    ]);
    for n in [4usize, 5] {
        let basics: BTreeSet<Vec<i64>> = enumerate_basic(n)
            .iter()
            .map(|t| Ok(basic_signed(t)?.pad_to(n).window().to_vec()))
            .collect::<Result<_>>()?;
        let bigrassmannians: Vec<SignedPermutation> = enumerate_w(n, opts.override_budget)?
            .into_iter()
            .filter(|w| w.is_bigrassmannian())
            .collect();
        let nonbasic: Vec<Vec<i64>> = bigrassmannians
            .iter()
            .map(|w| w.window().to_vec())
            .filter(|win| !basics.contains(win))
            .collect();
        let expected_total = count_basic(n) + expected_nonbasic[&n].len();
        if bigrassmannians.len() != expected_total {
            report.fail(format!(
                "W_{n}: {} bigrassmannians, expected {expected_total}",
                bigrassmannians.len()
            ));
        }
        let mut sorted = nonbasic.clone();
        sorted.sort();
        if sorted != expected_nonbasic[&n] {
            report.fail(format!("W_{n}: non-basic bigrassmannians {sorted:?}"));
        }
        report.note(format!(
            "W_{n}: {} bigrassmannians, {} non-basic",
            bigrassmannians.len(),
            nonbasic.len()
        ));
    }
    Ok(report)
}

/// The dissecting-element bijection reproduces the minimal elements not
/// below `w`, in both the signed and the ordinary settings.
fn suite_rwy(opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("rwy");
    let n = opts.n.unwrap_or(3);
    for w in enumerate_w(n, opts.override_budget)? {
        let via = rwy_via_bijection(&w, n)?;
        let direct = minimal_not_below(&w)?;
        if via != direct {
            report.fail(format!("w = {w}: bijection {via:?} vs direct {direct:?}"));
        }
    }
    report.note(format!("W_{n}: bijection matches minimal-not-below"));
    for v in enumerate_s(1, 5, opts.override_budget)? {
        let via = rwy_via_bijection_a(&v, 5)?;
        let direct = minimal_not_below_s(&v, 5)?;
        if via != direct {
            report.fail(format!("v = {v:?}: bijection {via:?} vs direct {direct:?}"));
        }
    }
    report.note("S_5: bijection matches minimal-not-below".to_string());
    Ok(report)
}

/// Comparing basic elements through their ordinary-permutation images agrees
/// with the signed order, with every needed exception classified.
fn suite_lemma_compare(opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("lemma-compare");
    let n = opts.n.unwrap_or(4);
    let family = BasicFamily::build(n)?;
    let m = family.triples.len();
    let (mut direct, mut case_i, mut case_ii) = (0usize, 0usize, 0usize);
    for i in 0..m {
        for j in 0..m {
            let t = &family.triples[i];
            let t2 = &family.triples[j];
            let via_a = basic_leq_via_type_a(t, t2)?;
            let in_w = family.leq[i * m + j];
            if via_a != in_w {
                report.fail(format!("{t} vs {t2}: type-A comparison {via_a}, order {in_w}"));
                continue;
            }
            if in_w {
                match classify_exception(t, t2)? {
                    ExceptionCase::None => direct += 1,
                    ExceptionCase::CaseI => case_i += 1,
                    ExceptionCase::CaseII => case_ii += 1,
                }
            }
        }
    }
    report.note(format!(
        "{m}x{m} pairs: {direct} direct, {case_i} case-i, {case_ii} case-ii"
    ));
    if case_i == 0 || case_ii == 0 {
        report.fail("expected both exception cases to occur".to_string());
    }
    Ok(report)
}

/// Sampled matrices reproduce the rank function exactly, kinds B and C.
fn suite_matrix_rank(opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("matrix-rank");
    let n = opts.n.unwrap_or(3);
    let samples = opts.samples.unwrap_or(20);
    let field = PrimeField::new(opts.modulus)?;
    let mut checks = 0usize;
    for kind in [BoardKind::B, BoardKind::C] {
        for w in enumerate_w(n, opts.override_budget)? {
            let r = verify_rank_function(&w, kind, field, samples, opts.seed)?;
            checks += r.checks;
            for line in r.json_lines().lines() {
                report.fail(format!("{kind:?}: {line}"));
            }
        }
    }
    report.note(format!(
        "W_{n}, kinds B and C, {samples} samples each, modulus {}: {checks} checks",
        opts.modulus
    ));
    Ok(report)
}

/// Essential conditions, full rank conditions, and the Bruhat order give the
/// same verdict on random pairs.
fn suite_theorem_a(opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("theorem-a");
    let n = opts.n.unwrap_or(4);
    let pairs = opts.samples.unwrap_or(200);
    let field = PrimeField::new(opts.modulus)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut below = 0usize;
    for i in 0..pairs {
        let w = random_w(&mut rng, n);
        let wprime = random_w(&mut rng, n);
        let r = verify_theorem_a(
            &w,
            &wprime,
            BoardKind::B,
            field,
            1,
            opts.seed.wrapping_add(i as u64),
        )?;
        below += usize::from(crate::bruhat::leq_b(&w, &wprime));
        for line in r.json_lines().lines() {
            report.fail(line.to_string());
        }
    }
    report.note(format!(
        "{pairs} random pairs in W_{n}, seed {}: {below} comparable, verdicts coincide",
        opts.seed
    ));
    Ok(report)
}

/// Whether the type C essential set ever differs from the type B one.  A
/// mismatch is a reported finding (with both boards rendered), not a
/// failure.
fn suite_type_c_match(opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("type-c-match");
    let n = opts.n.unwrap_or(4);
    let elems = enumerate_w(n, opts.override_budget)?;
    let total = elems.len();
    let mut mismatches = 0usize;
    for w in elems {
        let b = essential_set_b(&w);
        let c = essential_set_c(&w);
        if b.triples() != c.triples() {
            mismatches += 1;
            if report.findings.len() < 4 {
                let board_b_text = board_b(&w).render(RenderFormat::Ascii)?;
                let board_c_text = board_c(&w).render(RenderFormat::Ascii)?;
                report.findings.push(format!(
                    "w = {w}: Ess_B = {b}, Ess_C = {c}\ntype B board:\n{board_b_text}\
                     type C board:\n{board_c_text}"
                ));
            }
        }
    }
    report.note(format!("{total} elements of W_{n}: {mismatches} mismatches"));
    if mismatches == 0 {
        report.note("type C essential sets agree with type B throughout".to_string());
    }
    Ok(report)
}
