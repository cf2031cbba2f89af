//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use carlitz_core::carlitz_basics::CarlitzCache;
use carlitz_core::carlitz_numbers::{CarlitzNumbers, StirlingKind};
use carlitz_core::classical::{CauchyMethod, CauchyOrderMethod, ClassicalNumbers};
use carlitz_core::exact_arith::{make_field, parse_rational, Poly, RatFunc};
use carlitz_core::identities::{
    run_all, verify_ht_rules, verify_ht_rules_rational, verify_log_pattern, IdentityReport, SuiteConfig,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ensure_eq<T: PartialEq + std::fmt::Display>(what: &str, want: &T, got: &T) -> Outcome {
    ensure(want == got, || format!("{what}: expected {want}, got {got}"))
}

fn reports_pass(reports: &[IdentityReport]) -> Outcome {
    for r in reports {
        if !r.passed() {
            let f = &r.failures[0];
            return Err(format!(
                "{} (r={:?}) failed at {}: expected {}, got {}",
                r.identity_id, r.params.r, f.indices, f.expected, f.actual
            ));
        }
    }
    Ok(())
}

fn goldens_r3() -> Outcome {
    let c = CarlitzNumbers::for_field(make_field(3, 1, None).unwrap());
    let l1 = "1 / (T^3 + 2*T)";
    let str_of = |v: carlitz_core::Result<RatFunc>| v.map(|x| x.to_string()).map_err(|e| e.to_string());
    for n in [2, 4, 6] {
        ensure_eq(&format!("CC_{n}"), &l1.to_string(), &str_of(c.cauchy_carlitz(n))?)?;
    }
    let f = c.field();
    let cc8 = RatFunc::new(
        Poly::one(f),
        &Poly::parse(f, "T^3 + 2*T").unwrap() * &Poly::parse(f, "T^9 + 2*T").unwrap(),
    )
    .unwrap();
    ensure_eq("CC_8 product form", &cc8.to_string(), &str_of(c.cauchy_carlitz(8))?)?;
    ensure_eq(
        "CC_8",
        &"1 / (T^12 + 2*T^10 + 2*T^4 + T^2)".to_string(),
        &str_of(c.cauchy_carlitz(8))?,
    )?;
    for (n, want) in [
        (2, "2 / (T^3 + 2*T)"),
        (4, "1 / (T^3 + 2*T)"),
        (6, "2 / (T^3 + 2*T)"),
        (8, "1 / (T^6 + T^4 + T^2 + 1)"),
    ] {
        ensure_eq(&format!("BC_{n}"), &want.to_string(), &str_of(c.bernoulli_carlitz(n))?)?;
    }
    for (kind, n, want) in [
        (StirlingKind::First, 4, "1"),
        (StirlingKind::First, 6, "1"),
        (StirlingKind::First, 8, "0"),
        (StirlingKind::Second, 4, "2"),
        (StirlingKind::Second, 6, "1"),
        (StirlingKind::Second, 8, "0"),
    ] {
        ensure_eq(
            &format!("{kind:?}({n}, 2)"),
            &want.to_string(),
            &str_of(c.stirling_carlitz(kind, n, 2))?,
        )?;
    }
    Ok(())
}

fn goldens_classical() -> Outcome {
    let c = ClassicalNumbers::new();
    let cauchy = ["1/2", "-1/6", "1/4", "-19/30", "9/4", "-863/84", "1375/24"];
    for (i, w) in cauchy.iter().enumerate() {
        let n = i as u64 + 1;
        let want = parse_rational(w).unwrap();
        for m in CauchyMethod::ALL {
            let got = c.cauchy_classical(n, m).map_err(|e| e.to_string())?;
            ensure_eq(&format!("c_{n} by {m:?}"), &want, &got)?;
        }
    }
    let order3 = ["3/2", "1", "0", "1/10", "-1/4", "16/21", "-11/4", "329/30"];
    for (i, w) in order3.iter().enumerate() {
        let n = i as u64 + 1;
        let want = parse_rational(w).unwrap();
        for m in CauchyOrderMethod::ALL {
            let got = c.cauchy_order_classical(n, 3, m).map_err(|e| e.to_string())?;
            ensure_eq(&format!("c_{n}^(3) by {m:?}"), &want, &got)?;
        }
    }
    Ok(())
}

fn enumerator_example() -> Outcome {
    let c = CarlitzNumbers::for_field(make_field(3, 1, None).unwrap());
    let found = c.ht_multisets(8);
    ensure(found == vec![(1, vec![vec![2]]), (4, vec![vec![1, 1, 1, 1]])], || {
        format!("multisets for n=8: {found:?}")
    })?;
    let f = c.field();
    let want = RatFunc::new(
        Poly::one(f),
        &Poly::parse(f, "T^3 - T").unwrap() * &Poly::parse(f, "T^9 - T").unwrap(),
    )
    .unwrap();
    let got = c.cauchy_carlitz_ht(8).map_err(|e| e.to_string())?;
    ensure_eq("assembled CC_8", &want, &got)
}

fn cross_method() -> Outcome {
    for (p, n_max) in [(3u64, 26u64), (2, 30), (5, 24)] {
        let c = CarlitzNumbers::for_field(make_field(p, 1, None).unwrap());
        for n in 0..=n_max {
            let e = |x: carlitz_core::Error| format!("r={p} n={n}: {x}");
            let cc = c.cauchy_carlitz(n).map_err(e)?;
            ensure_eq(
                &format!("r={p} CC_{n} series"),
                &cc,
                &c.cauchy_carlitz_direct(n).map_err(e)?,
            )?;
            if n >= 1 {
                ensure_eq(
                    &format!("r={p} CC_{n} compositions"),
                    &cc,
                    &c.cauchy_carlitz_ht(n).map_err(e)?,
                )?;
            }
            ensure_eq(
                &format!("r={p} BC_{n}"),
                &c.bernoulli_carlitz(n).map_err(e)?,
                &c.bernoulli_carlitz_direct(n).map_err(e)?,
            )?;
        }
    }
    Ok(())
}

fn identity_suite_cli() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_carlitz");
    for (p, n) in [(2, 16), (3, 16), (5, 10)] {
        let out = Command::new(bin)
            .args([
                "verify",
                "--p",
                &p.to_string(),
                "--max-n",
                &n.to_string(),
                "--prec",
                "33",
            ])
            .output()
            .map_err(|e| e.to_string())?;
        let stdout = String::from_utf8_lossy(&out.stdout);
        let reports: Vec<IdentityReport> = stdout
            .lines()
            .map(serde_json::from_str)
            .collect::<Result<_, _>>()
            .map_err(|e| format!("unreadable report: {e}"))?;
        reports_pass(&reports)?;
        for id in [
            "orthogonality",
            "cc_annihilation",
            "bc_annihilation",
            "transmutation",
            "closed_forms",
            "digit_vanishing",
            "factorial",
            "functional_equations",
            "h_relations",
        ] {
            ensure(
                reports.iter().any(|r| r.identity_id == id && r.cases_checked > 0),
                || format!("r={p}: no cases for {id}"),
            )?;
        }
        ensure(out.status.code() == Some(0), || {
            format!("r={p}: exit status {:?}", out.status.code())
        })?;
    }
    Ok(())
}

fn ht_machinery() -> Outcome {
    let mut reports = vec![verify_ht_rules_rational(20, 6, 11)];
    for p in [2, 3] {
        let field = make_field(p, 1, None).unwrap();
        reports.push(verify_ht_rules(&field, 20, 6, 11));
        reports.push(verify_log_pattern(&CarlitzCache::new(field), 30));
    }
    reports_pass(&reports)
}

fn extension_field() -> Outcome {
    let cfg = SuiteConfig {
        fields: vec![(2, 2)],
        max_n: 10,
        include_classical: false,
        ..SuiteConfig::default()
    };
    let reports = run_all(&cfg).map_err(|e| e.to_string())?;
    reports_pass(&reports)?;
    let c = CarlitzNumbers::new(Arc::new(CarlitzCache::new(make_field(2, 2, None).unwrap())));
    ensure(c.r() == 4, || "field size is not 4".into())?;
    ensure(
        reports
            .iter()
            .any(|r| r.identity_id == "cauchy_agreement" && r.cases_checked > 0),
        || "no cross-method checks ran".into(),
    )
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("golden values over F_3(T)", Duration::from_secs(1), goldens_r3),
        (
            "classical golden values by every method",
            Duration::from_secs(5),
            goldens_classical,
        ),
        (
            "composition enumerator worked example",
            Duration::from_secs(1),
            enumerator_example,
        ),
        (
            "cross-method agreement for r = 2, 3, 5",
            Duration::from_secs(60),
            cross_method,
        ),
        (
            "identity suite through the CLI",
            Duration::from_secs(120),
            identity_suite_cli,
        ),
        (
            "Hasse-Teichmüller rules and log pattern",
            Duration::from_secs(60),
            ht_machinery,
        ),
        ("extension field r = 4", Duration::from_secs(60), extension_field),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > *limit {
            outcome = Err(format!(
                "took {:.2}s, limit {:.0}s",
                elapsed.as_secs_f64(),
                limit.as_secs_f64()
            ));
        }
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name} ({:.2}s)", i + 1, elapsed.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!(
                    "criterion {}: FAIL  {name} ({:.2}s): {msg}",
                    i + 1,
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
