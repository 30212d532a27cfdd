//! Runs every acceptance criterion and prints one PASS/FAIL line for each.
//!
//! Criteria that depend on the binary (golden table, configuration errors)
//! get their extra checks here; the rest come from `ffcn_core::verify`.

use std::process::{Command, ExitCode};

use ffcn_core::verify::CRITERIA;
use ffcn_core::DEFAULT_SEED;

const GOLDEN: &str = include_str!("golden/theta_lambda_q3.json");

fn ffcn(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_ffcn"))
        .args(args)
        .env_remove("FFCN_SEED")
        .output()
        .expect("ffcn runs")
}

/// Extra (description, passed) pairs checked through the CLI.
fn cli_checks(id: &str) -> Vec<(String, bool)> {
    match id {
        "theta-tables" => {
            let out = ffcn(&["theta-lambda", "--q", "3", "--frakd", "t^2+1", "--frakn", "t+1", "--max-deg", "2"]);
            vec![("golden theta-lambda table byte-identical".into(), out.status.success() && out.stdout == GOLDEN.as_bytes())]
        }
        "level-splitting-parity" => {
            let out = ffcn(&["theta-lambda", "--q", "3", "--frakd", "t^2+1", "--frakn", "t", "--max-deg", "2"]);
            let stderr = String::from_utf8_lossy(&out.stderr);
            vec![(
                "degenerate level exits 2 naming the precondition".into(),
                out.status.code() == Some(2) && stderr.contains("deg(d⁻n⁻) = 0 violates level assumption"),
            )]
        }
        "order-class-numbers" => {
            let out = ffcn(&["class-number", "--q", "3", "--d", "t^3", "--output", "csv"]);
            let text = String::from_utf8_lossy(&out.stdout);
            vec![("class-number t^3 gives h=3, w=1".into(), text.contains("\nh,3\n") && text.contains("\nw,1\n"))]
        }
        _ => Vec::new(),
    }
}

fn main() -> ExitCode {
    let mut all = true;
    for criterion in CRITERIA {
        let checks = criterion.run(DEFAULT_SEED);
        let extra = cli_checks(criterion.id);
        let failures: Vec<String> = checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: expected {}, got {}", c.case, c.expected, c.actual))
            .chain(extra.iter().filter(|(_, ok)| !ok).map(|(d, _)| d.clone()))
            .collect();
        let total = checks.len() + extra.len();
        let passed = !checks.is_empty() && failures.is_empty();
        all &= passed;
        println!(
            "{} {} ({}/{} checks) {}",
            if passed { "PASS" } else { "FAIL" },
            criterion.id,
            total - failures.len(),
            total,
            criterion.description
        );
        for f in &failures {
            println!("    {f}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
