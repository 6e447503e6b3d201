//! Drives the batch job layer programmatically: the same configs the
//! command-line binary reads from JSON files, constructed in code.

use twisted_gabor::cli::{run, JobConfig};

fn job(text: &str) -> JobConfig {
    serde_json::from_str(text).expect("valid job")
}

fn main() {
    let frame = job(r#"{
        "command": "frame-analyze",
        "group": {"abelian": [2]},
        "lattice": [[1, 0], [0, 1]],
        "windows": [[[1.0, 0.0], [0.0, 0.0]]]
    }"#);
    let report = run(&frame).unwrap();
    println!(
        "frame-analyze on Z_2, full lattice, delta window: passed = {}",
        report.passed
    );
    println!("  bounds: {}", report.payload["bounds"]);
    println!("  dual atom: {}", report.payload["dual"][0]);

    let figa = job(r#"{
        "command": "figa",
        "group": {"abelian": [4]},
        "lattice": [[2, 0], [0, 2]],
        "seed": 3,
        "windows": [
            [[0.3, 0.1], [0.2, -0.4], [0.9, 0.0], [-0.5, 0.2]],
            [[1.0, 0.0], [0.4, 0.3], [-0.2, 0.1], [0.0, -0.6]],
            [[0.1, 0.1], [0.7, -0.2], [0.3, 0.3], [-0.4, 0.0]]
        ]
    }"#);
    let report = run(&figa).unwrap();
    let check = &report.checks[0];
    println!();
    println!(
        "figa identity: residual {:.3e} against gate {:.3e} -> {}",
        check.residual.unwrap(),
        check.gate.unwrap(),
        if check.passed { "pass" } else { "FAIL" }
    );

    let mut corrupted = figa.clone();
    corrupted.s_override = Some([2, 1]);
    let report = run(&corrupted).unwrap();
    println!(
        "figa with corrupted lattice size: residual {:.3e} -> {}",
        report.checks[0].residual.unwrap(),
        if report.passed { "pass" } else { "fails as it must" }
    );

    let spectra = job(r#"{
        "command": "spectra-compare",
        "group": {"abelian": [6]},
        "cocycle": "heisenberg",
        "seed": 12
    }"#);
    let report = run(&spectra).unwrap();
    println!();
    println!("spectra-compare on the Heisenberg twist of Z_6 phase space:");
    println!("{}", serde_json::to_string_pretty(&report.checks).unwrap());
}
