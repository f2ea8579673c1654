//! Finite-field matrices parametrizing isotropic subspaces attached to a
//! signed permutation, and numeric verification that the essential-set rank
//! conditions cut out exactly the elements below it in Bruhat order.
//!
//! A cell matrix has one column per negative index, a pivot 1 at row `w(b)`
//! of column `b`, zeros below each pivot and in pivot rows of columns to the
//! left, free entries on the diagram boxes, and forced entries on the crossed
//! unstruck boxes.  The forced entries are the unique solution of the
//! isotropy equations for the fixed bilinear form — symmetric pairing rows
//! `a` against `-a` for kind B, the alternating analogue for kind C.

use std::collections::BTreeMap;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bruhat::{leq_b, rank_b};
use crate::diagrams::{board_b, board_c, Board, BoardKind, Cell};
use crate::essential::{essential_set_b, essential_set_c, BasicTriple};
use crate::perm_core::SignedPermutation;
use crate::{Error, Result};

/// Arithmetic modulo an odd prime.  Characteristic 2 is rejected because the
/// self-pairing of a kind-B column is `x_0^2 + 2*sum x_a x_{-a}`, which
/// degenerates mod 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p % 2 == 0 {
            return Err(Error::Range(format!("modulus {p} is not an odd prime")));
        }
        let mut d = 3;
        while d * d <= p {
            if p % d == 0 {
                return Err(Error::Range(format!("modulus {p} is not an odd prime")));
            }
            d += 2;
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, x: u64) -> u64 {
        x % self.p
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        (x + y) % self.p
    }

    pub fn sub(&self, x: u64, y: u64) -> u64 {
        (x + self.p - y) % self.p
    }

    pub fn neg(&self, x: u64) -> u64 {
        (self.p - x) % self.p
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        ((x as u128 * y as u128) % self.p as u128) as u64
    }

    pub fn inv(&self, x: u64) -> u64 {
        debug_assert!(x % self.p != 0, "inverse of zero");
        self.pow(x, self.p - 2)
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

/// A fully solved representative matrix.  Rows run top to bottom in
/// increasing index order; columns are `-n..=-1`.
#[derive(Debug, Clone)]
pub struct CellMatrix {
    kind: BoardKind,
    n: usize,
    field: PrimeField,
    rows: Vec<i64>,
    cols: Vec<i64>,
    entries: BTreeMap<Cell, u64>,
    free: Vec<Cell>,
    forced: Vec<Cell>,
}

impl CellMatrix {
    pub fn kind(&self) -> BoardKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn entry(&self, cell: Cell) -> u64 {
        *self.entries.get(&cell).unwrap_or(&0)
    }

    pub fn free_positions(&self) -> &[Cell] {
        &self.free
    }

    pub fn forced_positions(&self) -> &[Cell] {
        &self.forced
    }

    /// Value of the fixed form on columns `c` and `b`:
    /// `sum_a s(a) * M[a][c] * M[-a][b]` with `s = 1` for kind B and
    /// `s(a) = sign(-a)` for kind C.
    pub fn pairing(&self, c: i64, b: i64) -> u64 {
        let f = self.field;
        let mut acc = 0;
        for &a in &self.rows {
            let term = f.mul(self.entry((a, c)), self.entry((-a, b)));
            let term = f.mul(form_sign(self.kind, f, a), term);
            acc = f.add(acc, term);
        }
        acc
    }

    /// Rank of the submatrix on columns `-n..=-p` and rows `>= q`.  This is
    /// the numeric realization of the corner rank condition: it equals
    /// `rank_b(w, p, q)` at every point of the cell of `w`, because columns
    /// whose pivot row sits above `q` vanish on the selected rows while the
    /// others stay in echelon position.
    pub fn corner_nullity(&self, p: i64, q: i64) -> Result<usize> {
        let n = self.n as i64;
        if !(1..=n).contains(&p) || !(-n..=n).contains(&q) {
            return Err(Error::Range(format!(
                "(p,q) = ({p},{q}) outside 1..={n} x -{n}..={n}"
            )));
        }
        if self.kind == BoardKind::C && q == 0 {
            return Err(Error::Range("q = 0 has no row on a type C board".into()));
        }
        let rows: Vec<i64> = self.rows.iter().copied().filter(|&a| a >= q).collect();
        let cols: Vec<i64> = self.cols.iter().copied().filter(|&b| b <= -p).collect();
        let sub: Vec<Vec<u64>> = rows
            .iter()
            .map(|&a| cols.iter().map(|&b| self.entry((a, b))).collect())
            .collect();
        Ok(matrix_rank(self.field, sub))
    }
}

fn form_sign(kind: BoardKind, field: PrimeField, a: i64) -> u64 {
    match kind {
        BoardKind::B => 1,
        BoardKind::C => {
            if a < 0 {
                1
            } else {
                field.p - 1
            }
        }
        BoardKind::A => unreachable!("cell matrices exist for kinds B and C only"),
    }
}

fn board_of(w: &SignedPermutation, kind: BoardKind) -> Result<Board> {
    match kind {
        BoardKind::B => Ok(board_b(w)),
        BoardKind::C => Ok(board_c(w)),
        BoardKind::A => Err(Error::Range("cell matrices require kind B or C".into())),
    }
}

/// Builds the matrix for `w` from an assignment of field elements to every
/// free position, solving the forced entries column by column.
pub fn build_cell(
    w: &SignedPermutation,
    kind: BoardKind,
    field: PrimeField,
    free_values: &BTreeMap<Cell, u64>,
) -> Result<CellMatrix> {
    let board = board_of(w, kind)?;
    let rows = board.rows().to_vec();
    let cols = board.cols().to_vec();
    let diagram = board.diagram();
    let extended = board.extended_diagram();
    let free: Vec<Cell> = diagram.iter().copied().collect();
    let forced: Vec<Cell> = extended.difference(&diagram).copied().collect();
    debug_assert_eq!(free.len(), w.length());

    let mut entries: BTreeMap<Cell, u64> = BTreeMap::new();
    for &b in &cols {
        entries.insert((w.value(b), b), 1);
    }
    for &cell in &free {
        let value = free_values
            .get(&cell)
            .ok_or_else(|| Error::Range(format!("no free value for cell {cell:?}")))?;
        entries.insert(cell, field.reduce(*value));
    }

    // Forced entries in a column are constrained only by columns weakly to
    // the left, so a single left-to-right pass solves everything.
    for &b in &cols {
        let unknowns: Vec<Cell> = forced.iter().copied().filter(|&(_, c)| c == b).collect();
        let index = |cell: Cell| unknowns.iter().position(|&u| u == cell);
        let mut system: Vec<Vec<u64>> = Vec::new();
        if kind == BoardKind::B {
            // Self-isotropy; the alternating kind-C form vanishes on any
            // (x, x) identically, so it contributes nothing there.
            let mut row = vec![0u64; unknowns.len() + 1];
            for &a in &rows {
                match (index((a, b)), index((-a, b))) {
                    (Some(_), Some(_)) => {
                        return Err(Error::Invariant(format!(
                            "two unknowns paired at rows ({a},{}) of column {b}",
                            -a
                        )))
                    }
                    (Some(j), None) => {
                        let y = entries.get(&(-a, b)).copied().unwrap_or(0);
                        row[j] = field.add(row[j], y);
                    }
                    (None, Some(j)) => {
                        let x = entries.get(&(a, b)).copied().unwrap_or(0);
                        row[j] = field.add(row[j], x);
                    }
                    (None, None) => {
                        let x = entries.get(&(a, b)).copied().unwrap_or(0);
                        let y = entries.get(&(-a, b)).copied().unwrap_or(0);
                        let len = row.len();
                        row[len - 1] = field.sub(row[len - 1], field.mul(x, y));
                    }
                }
            }
            system.push(row);
        }
        let mut push_pair_equation = |c: i64| -> Result<()> {
            // sum_a s(a) * M[a][c] * M[-a][b] = 0, columns c < b known.
            let mut row = vec![0u64; unknowns.len() + 1];
            for &a in &rows {
                let known = entries.get(&(a, c)).copied().unwrap_or(0);
                let coef = field.mul(form_sign(kind, field, a), known);
                match index((-a, b)) {
                    Some(j) => row[j] = field.add(row[j], coef),
                    None => {
                        let y = entries.get(&(-a, b)).copied().unwrap_or(0);
                        let len = row.len();
                        row[len - 1] = field.sub(row[len - 1], field.mul(coef, y));
                    }
                }
            }
            system.push(row);
            Ok(())
        };
        for &c in cols.iter().filter(|&&c| c < b) {
            push_pair_equation(c)?;
        }
        let solution = solve_unique(field, system, unknowns.len()).map_err(|e| {
            Error::Invariant(format!("column {b} of {w}: {e}"))
        })?;
        for (cell, value) in unknowns.into_iter().zip(solution) {
            entries.insert(cell, value);
        }
    }

    let m = CellMatrix { kind, n: w.n(), field, rows, cols, entries, free, forced };
    debug_assert!(pairings_vanish(&m));
    Ok(m)
}

fn pairings_vanish(m: &CellMatrix) -> bool {
    m.cols.iter().all(|&c| {
        m.cols
            .iter()
            .filter(|&&b| b > c || (b == c && m.kind == BoardKind::B))
            .all(|&b| m.pairing(c, b) == 0)
    })
}

/// Builds the matrix for `w` with free entries drawn from a seeded generator.
pub fn sample_cell(
    w: &SignedPermutation,
    kind: BoardKind,
    field: PrimeField,
    seed: u64,
) -> Result<CellMatrix> {
    let board = board_of(w, kind)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: BTreeMap<Cell, u64> = board
        .diagram()
        .into_iter()
        .map(|cell| (cell, rng.gen::<u64>() % field.p))
        .collect();
    build_cell(w, kind, field, &values)
}

/// Unique solution of an affine system `coeffs * u = rhs` given as augmented
/// rows; errors if the system is inconsistent or underdetermined.
fn solve_unique(field: PrimeField, mut rows: Vec<Vec<u64>>, m: usize) -> Result<Vec<u64>> {
    let mut pivot_row_of = vec![usize::MAX; m];
    let mut next = 0;
    for j in 0..m {
        let Some(r) = (next..rows.len()).find(|&r| rows[r][j] != 0) else {
            return Err(Error::Invariant(format!("forced entry {j} underdetermined")));
        };
        rows.swap(next, r);
        let inv = field.inv(rows[next][j]);
        for x in rows[next].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for r in 0..rows.len() {
            if r != next && rows[r][j] != 0 {
                let factor = rows[r][j];
                for k in 0..=m {
                    let delta = field.mul(factor, rows[next][k]);
                    rows[r][k] = field.sub(rows[r][k], delta);
                }
            }
        }
        pivot_row_of[j] = next;
        next += 1;
    }
    if rows.iter().skip(next).any(|row| row[m] != 0) {
        return Err(Error::Invariant("isotropy system inconsistent".into()));
    }
    Ok(pivot_row_of.iter().map(|&r| rows[r][m]).collect())
}

fn matrix_rank(field: PrimeField, mut rows: Vec<Vec<u64>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for j in 0..width {
        let Some(r) = (rank..rows.len()).find(|&r| rows[r][j] != 0) else {
            continue;
        };
        rows.swap(rank, r);
        let inv = field.inv(rows[rank][j]);
        for x in rows[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for r in rank + 1..rows.len() {
            if rows[r][j] != 0 {
                let factor = rows[r][j];
                for k in j..width {
                    let delta = field.mul(factor, rows[rank][k]);
                    rows[r][k] = field.sub(rows[r][k], delta);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// True when the sampled point satisfies the single rank condition of `t`.
pub fn satisfies_triple(m: &CellMatrix, t: &BasicTriple) -> Result<bool> {
    Ok(m.corner_nullity(t.p(), t.q())? >= t.k() as usize)
}

/// True when the sampled point satisfies every rank condition of `w`, over
/// the full `(p, q)` grid.
pub fn satisfies_all_ranks(m: &CellMatrix, w: &SignedPermutation) -> Result<bool> {
    let n = m.n as i64;
    for p in 1..=n {
        for q in -n..=n {
            if q == 0 && m.kind == BoardKind::C {
                continue;
            }
            if m.corner_nullity(p, q)? < rank_b(w, p, q)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub w: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wprime: Option<String>,
    pub seed: u64,
    pub p: i64,
    pub q: i64,
    pub expected: usize,
    pub got: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelReport {
    pub checks: usize,
    pub violations: Vec<Violation>,
}

impl ModelReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// One JSON object per line, one line per violation.
    pub fn json_lines(&self) -> String {
        self.violations
            .iter()
            .map(|v| serde_json::to_string(v).expect("violation serializes") + "\n")
            .collect()
    }

    pub fn summary(&self) -> String {
        format!(
            "{{\"checks\":{},\"violations\":{}}}",
            self.checks,
            self.violations.len()
        )
    }
}

/// Checks that the corner rank statistic reproduces the rank function of `w`
/// exactly, at `samples` random points of its cell.
pub fn verify_rank_function(
    w: &SignedPermutation,
    kind: BoardKind,
    field: PrimeField,
    samples: usize,
    seed: u64,
) -> Result<ModelReport> {
    let n = w.n() as i64;
    let mut report = ModelReport { checks: 0, violations: Vec::new() };
    for s in 0..samples {
        let sample_seed = seed.wrapping_add(s as u64);
        let m = sample_cell(w, kind, field, sample_seed)?;
        report.checks += 1;
        if m.free_positions().len() != w.length() {
            report.violations.push(Violation {
                w: w.to_string(),
                wprime: None,
                seed: sample_seed,
                p: 0,
                q: 0,
                expected: w.length(),
                got: m.free_positions().len(),
            });
        }
        for p in 1..=n {
            for q in -n..=n {
                if q == 0 && kind == BoardKind::C {
                    continue;
                }
                let expected = rank_b(w, p, q)?;
                let got = m.corner_nullity(p, q)?;
                report.checks += 1;
                if got != expected {
                    report.violations.push(Violation {
                        w: w.to_string(),
                        wprime: None,
                        seed: sample_seed,
                        p,
                        q,
                        expected,
                        got,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Checks, at `samples` random points of the cell of `w'`, that three
/// verdicts coincide: the essential conditions of `w` hold, the full grid of
/// rank conditions of `w` holds, and `w <= w'` in Bruhat order.  A mismatch
/// is recorded with `q` naming the offending verdict (1: essential, 2: full
/// grid) and `expected`/`got` the Bruhat and numeric verdicts as 0/1.
pub fn verify_theorem_a(
    w: &SignedPermutation,
    wprime: &SignedPermutation,
    kind: BoardKind,
    field: PrimeField,
    samples: usize,
    seed: u64,
) -> Result<ModelReport> {
    let essential = match kind {
        BoardKind::B => essential_set_b(w),
        BoardKind::C => essential_set_c(w),
        BoardKind::A => return Err(Error::Range("cell matrices require kind B or C".into())),
    };
    let below = leq_b(w, wprime);
    let mut report = ModelReport { checks: 0, violations: Vec::new() };
    for s in 0..samples {
        let sample_seed = seed.wrapping_add(s as u64);
        let m = sample_cell(wprime, kind, field, sample_seed)?;
        let mut essential_holds = true;
        for t in essential.triples() {
            if !satisfies_triple(&m, t)? {
                essential_holds = false;
                break;
            }
        }
        let grid_holds = satisfies_all_ranks(&m, w)?;
        report.checks += 2;
        for (which, verdict) in [(1, essential_holds), (2, grid_holds)] {
            if verdict != below {
                report.violations.push(Violation {
                    w: w.to_string(),
                    wprime: Some(wprime.to_string()),
                    seed: sample_seed,
                    p: 0,
                    q: which,
                    expected: below as usize,
                    got: verdict as usize,
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bruhat::enumerate_w;

    fn sp(text: &str) -> SignedPermutation {
        text.parse().unwrap()
    }

    fn field() -> PrimeField {
        PrimeField::new(10007).unwrap()
    }

    #[test]
    fn field_validation_and_arithmetic() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1).is_err());
        let f = PrimeField::new(3).unwrap();
        assert_eq!(f.modulus(), 3);
        let f = field();
        for x in [1, 2, 17, 10006] {
            assert_eq!(f.mul(x, f.inv(x)), 1);
        }
        assert_eq!(f.add(10006, 1), 0);
        assert_eq!(f.sub(0, 1), 10006);
    }

    #[test]
    fn bar231_structure_and_forced_values() {
        let w = sp("-2 3 1");
        let f = field();
        // Free boxes are the diagram; name them a, b, s as in the column
        // pattern (a, b, 1, 0, ...) for column -3 and (..., s, *, 1, 0) for
        // column -1.
        let (a, b, s) = (5u64, 7u64, 3u64);
        let values: BTreeMap<Cell, u64> =
            [((-3, -3), a), ((-2, -3), b), ((0, -1), s)].into_iter().collect();
        let m = build_cell(&w, BoardKind::B, f, &values).unwrap();
        assert_eq!(m.free_positions(), &[(-3, -3), (-2, -3), (0, -1)]);
        assert_eq!(m.forced_positions(), &[(-2, -1), (1, -1)]);
        // Pivots of columns (-3, -2, -1) at rows (-1, -3, 2).
        assert_eq!(m.entry((-1, -3)), 1);
        assert_eq!(m.entry((-3, -2)), 1);
        assert_eq!(m.entry((2, -1)), 1);
        // Self-isotropy of column -1 gives s^2 + 2 x = 0; orthogonality with
        // column -3 gives b + y = 0.
        let half = f.inv(2);
        assert_eq!(m.entry((-2, -1)), f.neg(f.mul(f.mul(s, s), half)));
        assert_eq!(m.entry((1, -1)), f.neg(b));
        assert!(pairings_vanish(&m));
    }

    #[test]
    fn identity_matrix_is_basis_columns() {
        let w = SignedPermutation::identity(3);
        let m = build_cell(&w, BoardKind::B, field(), &BTreeMap::new()).unwrap();
        assert!(m.free_positions().is_empty());
        assert!(m.forced_positions().is_empty());
        for b in -3..=-1i64 {
            for a in -3..=3i64 {
                assert_eq!(m.entry((a, b)), (a == b) as u64);
            }
        }
        assert_eq!(m.corner_nullity(1, -3).unwrap(), 3);
    }

    #[test]
    fn missing_free_value_is_a_range_error() {
        let w = sp("-2 3 1");
        let err = build_cell(&w, BoardKind::B, field(), &BTreeMap::new());
        assert!(matches!(err, Err(Error::Range(_))));
        assert!(build_cell(&w, BoardKind::A, field(), &BTreeMap::new()).is_err());
    }

    #[test]
    fn zero_frees_force_zeros() {
        let f = field();
        for w in enumerate_w(3, false).unwrap() {
            for kind in [BoardKind::B, BoardKind::C] {
                let board = board_of(&w, kind).unwrap();
                let values: BTreeMap<Cell, u64> =
                    board.diagram().into_iter().map(|c| (c, 0)).collect();
                let m = build_cell(&w, kind, f, &values).unwrap();
                for &cell in m.forced_positions() {
                    assert_eq!(m.entry(cell), 0, "{w} {kind:?} {cell:?}");
                }
            }
        }
    }

    #[test]
    fn sampled_columns_are_isotropic_and_orthogonal() {
        let f = field();
        for w in enumerate_w(3, false).unwrap() {
            for kind in [BoardKind::B, BoardKind::C] {
                let m = sample_cell(&w, kind, f, 42).unwrap();
                assert!(pairings_vanish(&m), "{w} {kind:?}");
                assert_eq!(m.free_positions().len(), w.length());
            }
        }
    }

    #[test]
    fn corner_nullity_examples() {
        let f = field();
        let m = sample_cell(&sp("-2 3 1"), BoardKind::B, f, 1).unwrap();
        assert_eq!(m.corner_nullity(3, -1).unwrap(), 1);
        assert_eq!(m.corner_nullity(1, -3).unwrap(), 3);
        assert!(m.corner_nullity(0, 1).is_err());
        assert!(m.corner_nullity(1, 4).is_err());

        let m = sample_cell(&sp("-5 6 4 -3 -1 2"), BoardKind::B, f, 1).unwrap();
        assert_eq!(m.corner_nullity(4, 1).unwrap(), 2);

        let m = sample_cell(&sp("-2 3 1"), BoardKind::C, f, 1).unwrap();
        assert!(m.corner_nullity(1, 0).is_err());
    }

    #[test]
    fn rank_function_verified_on_w3() {
        let f = field();
        for w in enumerate_w(3, false).unwrap() {
            for kind in [BoardKind::B, BoardKind::C] {
                let report = verify_rank_function(&w, kind, f, 3, 0).unwrap();
                assert!(report.ok(), "{w} {kind:?}: {}", report.json_lines());
            }
        }
    }

    #[test]
    fn theorem_a_trivial_cases() {
        let f = field();
        let w = sp("-2 3 1");
        let top = SignedPermutation::longest_element(3);
        let report = verify_theorem_a(&w, &top, BoardKind::B, f, 4, 0).unwrap();
        assert!(report.ok(), "{}", report.json_lines());
        // Against the identity all three verdicts are false, hence coincide.
        let id = SignedPermutation::identity(3);
        let m = sample_cell(&id, BoardKind::B, f, 0).unwrap();
        assert!(!satisfies_all_ranks(&m, &w).unwrap());
        let ess = essential_set_b(&w);
        assert!(ess.triples().iter().any(|t| !satisfies_triple(&m, t).unwrap()));
        let report = verify_theorem_a(&w, &id, BoardKind::B, f, 4, 0).unwrap();
        assert!(report.ok(), "{}", report.json_lines());
    }

    #[test]
    fn violation_serializes_as_json_line() {
        let v = Violation {
            w: "-2 3 1".into(),
            wprime: None,
            seed: 7,
            p: 1,
            q: 2,
            expected: 1,
            got: 0,
        };
        let report = ModelReport { checks: 1, violations: vec![v] };
        assert_eq!(
            report.json_lines(),
            "{\"w\":\"-2 3 1\",\"seed\":7,\"p\":1,\"q\":2,\"expected\":1,\"got\":0}\n"
        );
        assert_eq!(report.summary(), "{\"checks\":1,\"violations\":1}");
    }
}
