//! Acceptance gate: one pass/fail line per criterion, all of which must
//! hold for the crate to be considered correct.

use std::time::{Duration, Instant};

use signedperm::bruhat::{enumerate_w, minimal_not_below_s};
use signedperm::diagrams::{board_a, board_b, board_c};
use signedperm::essential::{
    basic_inverse, basic_length, basic_perm_a_centered, basic_signed, dissecting_t_a,
    enumerate_basic, essential_set_a_centered, essential_set_a_small, essential_set_b, reflect,
    rwy_via_bijection_a, BasicTriple, EssentialSet,
};
use signedperm::perm_core::{SignedPermutation, WindowPermutation};
use signedperm::verify::{run_suite, SuiteReport, VerifyOptions};

fn sp(text: &str) -> SignedPermutation {
    text.parse().unwrap()
}

fn ess_b_triples(pairs: &[(i64, i64, i64)]) -> EssentialSet {
    EssentialSet::from_triples(
        pairs
            .iter()
            .map(|&(k, p, q)| BasicTriple::new_b(k, p, q).unwrap())
            .collect(),
    )
}

fn check(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn suite_passes(name: &str) -> Result<Vec<SuiteReport>, String> {
    let reports = run_suite(name, &VerifyOptions::default()).map_err(|e| e.to_string())?;
    for r in &reports {
        if !r.passed {
            return Err(format!("suite {} failed: {:?}", r.name, r.details));
        }
    }
    Ok(reports)
}

fn golden_examples() -> Result<(), String> {
    let w = sp("-2 3 1");
    check(w.length() == 3, "l(-2 3 1) = 3")?;
    check(
        essential_set_b(&w) == ess_b_triples(&[(1, 3, -1), (1, 1, 2)]),
        "Ess_B(-2 3 1)",
    )?;
    let a_triples: Vec<BasicTriple> = [(1, 3, -1), (1, 1, 2), (3, 0, -1), (2, -2, 2)]
        .iter()
        .map(|&(k, p, q)| BasicTriple::new_a_centered(k, p, q).unwrap())
        .collect();
    check(
        essential_set_a_centered(&w.iota()) == EssentialSet::from_triples(a_triples),
        "four-triple ordinary essential set of -2 3 1",
    )?;
    check(
        essential_set_b(&sp("-5 6 4 -3 -1 2"))
            == ess_b_triples(&[(2, 4, 1), (3, 4, -2), (4, 3, -4), (1, 1, 5), (2, 1, 3), (3, 1, 1)]),
        "six essential conditions of -5 6 4 -3 -1 2",
    )?;
    check(
        essential_set_b(&sp("4 5 -3 1 2")) == ess_b_triples(&[(3, 3, -2)]),
        "Ess_B(4 5 -3 1 2)",
    )?;
    check(
        essential_set_b(&sp("1 5 -4 -3 2")) == ess_b_triples(&[(3, 3, -2), (2, 3, 3)]),
        "Ess_B(1 5 -4 -3 2)",
    )?;

    let t = BasicTriple::new_a_centered(3, -1, 2).unwrap();
    check(
        basic_perm_a_centered(&t).unwrap().values() == [-4, -3, -2, 2, 3, 4, -1, 0, 1],
        "one-line form of v(3,-1,2)",
    )?;
    let t = BasicTriple::new_a_small(3, 4, 2).unwrap();
    check(
        signedperm::essential::basic_perm_a_small(&t).unwrap().values() == [1, 3, 4, 5, 2],
        "one-line form of v(3,4,2)",
    )?;
    check(
        basic_signed(&BasicTriple::new_b(2, 2, 3).unwrap()).unwrap() == sp("1 -4 -3 2"),
        "one-line form of w(2,2,3)",
    )?;
    check(
        basic_signed(&BasicTriple::new_b(3, 2, -2).unwrap()).unwrap() == sp("4 -3 1 2"),
        "one-line form of w(3,2,-2)",
    )?;

    // Worked example: v = 4 2 5 1 6 3 in S_6; composing with the longest
    // element reverses the one-line form, and the four dissecting elements
    // reproduce the minimal elements not below v.
    let v = WindowPermutation::new(1, vec![4, 2, 5, 1, 6, 3]).unwrap();
    let vw0 = WindowPermutation::new(1, vec![3, 6, 1, 5, 2, 4]).unwrap();
    let expected: Vec<BasicTriple> = [(1, 2, 5), (2, 2, 2), (2, 4, 4), (3, 4, 2)]
        .iter()
        .map(|&(k, p, q)| BasicTriple::new_a_small(k, p, q).unwrap())
        .collect();
    check(
        essential_set_a_small(&vw0) == EssentialSet::from_triples(expected),
        "Ess(v w0) of the worked example",
    )?;
    let t = BasicTriple::new_a_small(1, 2, 5).unwrap();
    check(
        dissecting_t_a(&t, 6).unwrap().values() == [5, 4, 6, 3, 2, 1],
        "dissecting element of (1,2,5)",
    )?;
    let t = BasicTriple::new_a_small(3, 4, 2).unwrap();
    check(
        dissecting_t_a(&t, 6).unwrap().values() == [6, 5, 2, 1, 4, 3],
        "dissecting element of (3,4,2)",
    )?;
    let rwy = rwy_via_bijection_a(&v, 6).map_err(|e| e.to_string())?;
    let vals: Vec<Vec<i64>> = rwy.iter().map(|t| t.values().to_vec()).collect();
    check(
        vals == vec![
            vec![1, 2, 3, 6, 4, 5],
            vec![1, 3, 4, 5, 2, 6],
            vec![1, 5, 2, 3, 4, 6],
            vec![3, 4, 1, 2, 5, 6],
        ],
        "E_RWY of the worked example",
    )?;
    check(
        rwy == minimal_not_below_s(&v, 6).unwrap(),
        "E_RWY equals the minimal elements not below v",
    )?;
    Ok(())
}

fn essential_equals_maximal_basic() -> Result<(), String> {
    suite_passes("ess-maximal").map(|_| ())
}

fn supremum_and_minimality() -> Result<(), String> {
    suite_passes("sup")?;
    let reports = suite_passes("minimality")?;
    let order_line = reports[0]
        .details
        .iter()
        .find(|d| d.starts_with("argument order"))
        .ok_or("no argument-order report")?;
    check(
        order_line.contains("(p,q) validates 44/44"),
        "the (p,q) argument order validates every triple",
    )?;
    println!("    {order_line}");
    Ok(())
}

fn counts_and_census() -> Result<(), String> {
    suite_passes("counts")?;
    suite_passes("bigrassmannian").map(|_| ())
}

fn base_and_dissection() -> Result<(), String> {
    suite_passes("base").map(|_| ())
}

fn rwy_bijection() -> Result<(), String> {
    suite_passes("rwy").map(|_| ())
}

fn comparison_machinery() -> Result<(), String> {
    suite_passes("lemma-compare").map(|_| ())
}

fn reflection_closure() -> Result<(), String> {
    for w in enumerate_w(4, false).unwrap() {
        let ess = essential_set_a_centered(&w.iota());
        for t in ess.triples() {
            let r = reflect(t).map_err(|e| e.to_string())?;
            check(ess.contains(&r), &format!("w = {w}: {t} reflects outside the set"))?;
        }
    }
    Ok(())
}

fn diagram_and_length() -> Result<(), String> {
    for w in enumerate_w(4, false).unwrap() {
        let b = board_b(&w);
        check(b.diagram().len() == w.length(), &format!("|D_B({w})| = l"))?;
        check(
            board_c(&w).diagram().len() == w.length(),
            &format!("|D_C({w})| = l"),
        )?;
        let restricted: std::collections::BTreeSet<(i64, i64)> = board_a(&w.iota())
            .diagram()
            .into_iter()
            .filter(|&(_, col)| col <= -1)
            .collect();
        check(
            b.extended_diagram() == restricted,
            &format!("D+({w}) is the column restriction"),
        )?;
    }
    for t in enumerate_basic(6) {
        let w = basic_signed(&t).unwrap();
        check(
            basic_length(&t).unwrap() == w.length() as i64,
            &format!("length formula at {t}"),
        )?;
        check(
            basic_signed(&basic_inverse(&t).unwrap()).unwrap() == w.inverse().shrink(),
            &format!("inverse formula at {t}"),
        )?;
    }
    Ok(())
}

fn matrix_model() -> Result<(), String> {
    suite_passes("matrix-rank")?;
    suite_passes("theorem-a").map(|_| ())
}

fn type_c_conjecture() -> Result<(), String> {
    let reports = suite_passes("type-c-match")?;
    for finding in &reports[0].findings {
        println!("    finding: {finding}");
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, Duration, fn() -> Result<(), String>)> = vec![
        ("golden examples", Duration::from_secs(1), golden_examples),
        ("essential = maximal basic", Duration::from_secs(60), essential_equals_maximal_basic),
        ("supremum and minimality", Duration::from_secs(120), supremum_and_minimality),
        ("counts and bigrassmannian census", Duration::from_secs(60), counts_and_census),
        ("base and dissection", Duration::from_secs(60), base_and_dissection),
        ("minimal-not-below bijection", Duration::from_secs(60), rwy_bijection),
        ("comparison machinery", Duration::from_secs(60), comparison_machinery),
        ("reflection closure", Duration::from_secs(60), reflection_closure),
        ("diagram and length formulas", Duration::from_secs(60), diagram_and_length),
        ("matrix model", Duration::from_secs(120), matrix_model),
        ("type C conjecture check", Duration::from_secs(60), type_c_conjecture),
    ];
    let mut failures = Vec::new();
    for (i, (desc, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let timely = elapsed <= *budget;
        let status = if result.is_ok() && timely { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2}: {status} ({:.2}s) — {desc}",
            i + 1,
            elapsed.as_secs_f64()
        );
        if let Err(e) = result {
            failures.push(format!("criterion {}: {e}", i + 1));
        }
        if !timely {
            failures.push(format!(
                "criterion {}: exceeded {:?} budget ({:?})",
                i + 1,
                budget,
                elapsed
            ));
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}
