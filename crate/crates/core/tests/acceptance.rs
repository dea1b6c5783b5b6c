//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.
//!
//! Run with `cargo test -p grt-core --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use grt_core::identities::{
    ashley_check_in, ashley_mod_check_in, column_diff_check_in, even_diamond_check, odd_diamond_check,
    row_sum_direct, Entries,
};
use grt_core::{
    boundary_from_params, classify, closed_form_entry, detect_addition_rule, detect_multiplication_rule,
    embed_in_rascal, fit_grt, generate_by_addition, generate_by_multiplication, generate_closed_form,
    multiple_of_rascal, mult_constant, row_sum_formula, t_meg_check, AshleyVariant, BigInt, Boundary,
    GrtParams, TriangleGrid, Verdict,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn ints(values: &[i64]) -> Vec<BigInt> {
    values.iter().copied().map(BigInt::from).collect()
}

/// All (c, d, d1, d2) in [-3, 3]^4.
fn sweep() -> impl Iterator<Item = GrtParams> {
    let range = -3i64..=3;
    range.clone().flat_map(move |c| {
        let range = range.clone();
        range.clone().flat_map(move |d| {
            let range = range.clone();
            range.clone().flat_map(move |d1| range.clone().map(move |d2| GrtParams::new(c, d, d1, d2)))
        })
    })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn rascal_reproduction() -> Outcome {
    let expected = "1\n1 1\n1 2 1\n1 3 3 1\n1 4 5 4 1\n1 5 7 7 5 1\n";
    let start = Instant::now();
    for rule in ["closed", "add", "mul"] {
        let out = Command::new(env!("CARGO_BIN_EXE_grt"))
            .args(["generate", "--c", "1", "--d", "1", "--d1", "0", "--d2", "0", "--rows", "6", "--rule", rule])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.code() == Some(0), || format!("rule {rule}: exit {:?}", out.status.code()))?;
        let text = String::from_utf8_lossy(&out.stdout);
        ensure(text == expected, || format!("rule {rule} printed {text:?}"))?;
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("3 rules identical in {:?}", start.elapsed()))
}

fn generator_equivalence() -> Outcome {
    let start = Instant::now();
    let (mut points, mut skipped) = (0, 0);
    for p in sweep() {
        let closed = generate_closed_form(&p, 12);
        let boundary = boundary_from_params(&p, 12);
        ensure(generate_by_addition(&boundary, &p.d) == closed, || format!("addition differs at {p}"))?;
        if closed.cells().any(|(_, _, v)| *v == BigInt::default()) {
            skipped += 1;
        } else {
            let mult = generate_by_multiplication(&boundary, &mult_constant(&p));
            ensure(mult.as_ref() == Ok(&closed), || format!("multiplication differs at {p}: {mult:?}"))?;
        }
        points += 1;
    }
    ensure(points == 2401, || format!("swept {points} points"))?;
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!(
        "{points} points, multiplication skipped on {skipped} with zero entries, {:?}",
        start.elapsed()
    ))
}

fn polynomial_identity() -> Outcome {
    let mut instances = 0;
    for p in sweep() {
        let mult = mult_constant(&p);
        for r in 1..=8 {
            for k in 1..=8 {
                let t = |r, k| closed_form_entry(&p, r, k);
                let lhs = t(r, k - 1) * t(r - 1, k) + &mult;
                let rhs = t(r, k) * t(r - 1, k - 1);
                ensure(lhs == rhs, || format!("{p} at ({r},{k}): {lhs} != {rhs}"))?;
                instances += 1;
            }
        }
    }
    Ok(format!("{instances} instances, 0 failures"))
}

fn fit_round_trip() -> Outcome {
    for p in sweep() {
        let grid = generate_closed_form(&p, 8);
        let fitted = fit_grt(&grid).map_err(|e| format!("{p}: {e}"))?;
        ensure(fitted == p, || format!("{p} fitted as {fitted}"))?;
        let add = detect_addition_rule(&grid).map_err(|e| e.to_string())?;
        ensure(add.constant() == Some(&p.d), || format!("{p}: addition {add:?}"))?;
        let mult = detect_multiplication_rule(&grid).map_err(|e| e.to_string())?;
        ensure(mult.constant() == Some(&mult_constant(&p)), || format!("{p}: multiplication {mult:?}"))?;
    }
    Ok("2401 points recovered with both rule constants".into())
}

fn worked_instances() -> Outcome {
    let s = generate_closed_form(&GrtParams::new(2, 2, 3, 1), 6);
    ensure(detect_addition_rule(&s).unwrap().constant() == Some(&big(2)), || "S additive".into())?;
    ensure(detect_multiplication_rule(&s).unwrap().constant() == Some(&big(1)), || "S multiplicative".into())?;

    let w = generate_closed_form(&GrtParams::new(1, 5, 2, 3), 8);
    ensure(detect_addition_rule(&w).unwrap().constant() == Some(&big(5)), || "W additive".into())?;
    ensure(detect_multiplication_rule(&w).unwrap().constant() == Some(&big(-1)), || "W multiplicative".into())?;
    let major = |r: usize, n: usize| w.major_diagonal(r).take(n).cloned().collect::<Vec<_>>();
    let minor = |k: usize, n: usize| w.minor_diagonal(k).take(n).cloned().collect::<Vec<_>>();
    let expectations = [
        (major(0, 5), ints(&[1, 3, 5, 7, 9])),
        (major(1, 4), ints(&[4, 11, 18, 25])),
        (major(2, 4), ints(&[7, 19, 31, 43])),
        (minor(0, 5), ints(&[1, 4, 7, 10, 13])),
        (minor(1, 4), ints(&[3, 11, 19, 27])),
        (minor(2, 4), ints(&[5, 18, 31, 44])),
    ];
    for (i, (got, want)) in expectations.iter().enumerate() {
        ensure(got == want, || format!("W diagonal #{i}: {got:?} != {want:?}"))?;
    }

    let t = GrtParams::new(3, 1, 0, 0);
    let terms = [t.entry(3, 3), t.entry(2, 2), t.entry(0, 4), t.entry(1, 3)];
    ensure(terms == [12, 7, 3, 6].map(big), || format!("T-Meg terms {terms:?}"))?;
    ensure(big(7) + big(3) + big(6) + big(2) * (big(1) - big(3)) == big(12), || "12 = 7+3+6-4".into())?;
    ensure(t_meg_check(&t, 3, 3).unwrap().holds(), || "T-Meg check".into())?;
    Ok("S (+2, +1), W (+5, -1, six diagonals), T-Meg 12 = 7+3+6-4".into())
}

fn row_sums() -> Outcome {
    let start = Instant::now();
    for p in sweep() {
        let grid = generate_closed_form(&p, 41);
        for n in 0..=40 {
            let formula = row_sum_formula(&p, n);
            let direct = row_sum_direct(&grid, n);
            ensure(formula == direct, || format!("{p} row {n}: {formula} != {direct}"))?;
        }
    }
    within(start.elapsed(), Duration::from_secs(5))?;
    Ok(format!("2401 points x 41 rows in {:?}", start.elapsed()))
}

fn diamonds() -> Outcome {
    let rascal = GrtParams::rascal();
    let cells = [(6, 6), (7, 6), (8, 6), (8, 7), (8, 8), (7, 8), (6, 8), (6, 7)];
    let sum: BigInt = cells.iter().map(|&(r, k)| rascal.entry(r, k)).sum();
    ensure(sum == big(400) && rascal.entry(7, 7) == big(50), || format!("Rascal boundary sum {sum}"))?;
    ensure(odd_diamond_check(&rascal, 6, 6, 1).unwrap().holds(), || "Rascal odd diamond".into())?;

    let mut instances = 0;
    for p in sweep() {
        for r in 0..=6 {
            for k in 0..=6 {
                for n in 1..=3 {
                    let odd = odd_diamond_check(&p, r, k, n).unwrap();
                    ensure(odd.holds(), || format!("odd {p} ({r},{k},{n}): {:?}", odd.first_failure))?;
                    instances += 1;
                    if n <= r.min(k) + 1 {
                        let even = even_diamond_check(&p, r, k, n).unwrap();
                        ensure(even.holds(), || format!("even {p} ({r},{k},{n}): {:?}", even.first_failure))?;
                        instances += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{instances} diamonds exact; Rascal 400/8 = 50 = R(7,7)"))
}

/// A stored grid with one cell bumped by +1.
struct Mutated<'a> {
    grid: &'a TriangleGrid,
    at: (usize, usize),
}

impl Entries for Mutated<'_> {
    fn entry(&self, r: usize, k: usize) -> BigInt {
        let v = self.grid.entry(r, k);
        if (r, k) == self.at {
            v + 1
        } else {
            v
        }
    }
}

fn ashley_family() -> Outcome {
    let (mut checks, mut mutations) = (0usize, 0usize);
    for p in sweep() {
        let grid = generate_closed_form(&p, 18);
        for r in 0..=8usize {
            for k in 0..=8usize {
                if r >= 2 && k >= 1 {
                    let cells = [(r, k), (r - 1, k), (r, k - 1), (r - 2, k - 1)];
                    ensure(ashley_check_in(&grid, &p.d, &p.d2, r, k).unwrap().holds(), || format!("ashley {p} ({r},{k})"))?;
                    for at in cells {
                        let m = Mutated { grid: &grid, at };
                        ensure(!ashley_check_in(&m, &p.d, &p.d2, r, k).unwrap().holds(), || {
                            format!("ashley mutation {p} ({r},{k}) at {at:?}")
                        })?;
                    }
                    let cells = [(r, k), (r - 1, k + 1), (r - 1, k - 1), (r - 2, k)];
                    ensure(column_diff_check_in(&grid, &p, r, k).unwrap().holds(), || format!("column {p} ({r},{k})"))?;
                    for at in cells {
                        let m = Mutated { grid: &grid, at };
                        ensure(!column_diff_check_in(&m, &p, r, k).unwrap().holds(), || {
                            format!("column mutation {p} ({r},{k}) at {at:?}")
                        })?;
                    }
                    checks += 2;
                    mutations += 8;
                }
                for v in AshleyVariant::ALL {
                    let (min_r, min_k) = v.min_indices();
                    if r < min_r || k < min_k {
                        continue;
                    }
                    ensure(ashley_mod_check_in(&grid, v, r, k).unwrap().holds(), || format!("{v:?} {p} ({r},{k})"))?;
                    let cells: Vec<(usize, usize)> = match v {
                        AshleyVariant::One => vec![(r, k), (r - 1, k), (r, k - 1), (r - 2, k - 1), (r - 2, k - 2), (r - 3, k - 2)],
                        AshleyVariant::Two => vec![(r, k), (r, k - 1), (r - 1, k - 1), (r - 2, k - 2), (r - 2, k - 3), (r - 3, k - 3)],
                        AshleyVariant::Three => vec![(r, k), (r - 1, k), (r - 1, k - 1), (r - 2, k - 2), (r - 3, k - 2), (r - 3, k - 3)],
                    };
                    for at in cells {
                        let m = Mutated { grid: &grid, at };
                        ensure(!ashley_mod_check_in(&m, v, r, k).unwrap().holds(), || {
                            format!("{v:?} mutation {p} ({r},{k}) at {at:?}")
                        })?;
                        mutations += 1;
                    }
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} identity instances hold, {mutations} single-cell mutations all detected"))
}

fn negative_classification() -> Outcome {
    // U: addition rule (d = 1) over an all-ones major edge and a doubling minor edge.
    let u_boundary = Boundary::new(ints(&[1; 6]), ints(&[1, 2, 4, 8, 16, 32])).unwrap();
    let u = classify(&generate_by_addition(&u_boundary, &big(1))).unwrap();
    ensure(u.verdict == Verdict::AdditionOnly(big(1)), || format!("U verdict {:?}", u.verdict))?;
    let [a, b] = u.multiplication.witnesses().ok_or("U has no multiplication witnesses")?;
    ensure(a.implied != b.implied, || "U witnesses agree".into())?;

    // V: multiplication rule (D = 0) over edges 2^k and 3^r.
    let v_boundary = Boundary::new(ints(&[1, 2, 4, 8, 16, 32]), ints(&[1, 3, 9, 27, 81, 243])).unwrap();
    let v_grid = generate_by_multiplication(&v_boundary, &big(0)).map_err(|e| e.to_string())?;
    let v = classify(&v_grid).unwrap();
    ensure(v.verdict == Verdict::MultiplicationOnly(big(0)), || format!("V verdict {:?}", v.verdict))?;
    let [c, d] = v.addition.witnesses().ok_or("V has no addition witnesses")?;
    ensure(c.implied != d.implied, || "V witnesses agree".into())?;

    Ok(format!(
        "U: multiplication implied {} at {:?} vs {} at {:?}; V: addition implied {} at {:?} vs {} at {:?}",
        a.implied,
        a.south(),
        b.implied,
        b.south(),
        c.implied,
        c.south(),
        d.implied,
        d.south()
    ))
}

fn embedding_and_multiples() -> Outcome {
    let p = GrtParams::new(7, 1, 2, 3);
    ensure(embed_in_rascal(&p) == Some((2, 3)), || format!("embedding {:?}", embed_in_rascal(&p)))?;
    for r in 0..10 {
        for k in 0..10 {
            ensure(p.entry(r, k) == BigInt::from(1 + (2 + r) * (3 + k)), || format!("window ({r},{k})"))?;
        }
    }
    let q = GrtParams::new(5, 5, 0, 0);
    ensure(multiple_of_rascal(&q) == Some(big(5)), || "multiple".into())?;
    for r in 0..10 {
        for k in 0..10 {
            ensure(q.entry(r, k) == big(5) * BigInt::from(1 + r * k), || format!("multiple window ({r},{k})"))?;
        }
    }
    Ok("(7,1,2,3) = R shifted by (2,3); (5,5,0,0) = 5R on 10x10 windows".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Rascal reproduction under closed/add/mul", rascal_reproduction),
        ("Three-way generator equivalence", generator_equivalence),
        ("Polynomial identity E*W + cd - d1*d2 = S*N", polynomial_identity),
        ("Fit round trip and rule constants", fit_round_trip),
        ("Worked instances (S, W, T-Meg)", worked_instances),
        ("Row-sum formula vs direct summation", row_sums),
        ("Odd/even diamond patterns", diamonds),
        ("Ashley, modifications, column differences, mutation sensitivity", ashley_family),
        ("Negative classification (U-style, V-style)", negative_classification),
        ("Embedding and multiples of the Rascal Triangle", embedding_and_multiples),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("[PASS] {:>2}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {:>2}. {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
