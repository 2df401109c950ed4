//! Command examples checked literally, with their stated tolerances.

use std::process::Command;

use lifted_walk_cli::dataset;

#[test]
fn finite_line_example_with_four_digit_amplitudes() {
    let o = Command::new(env!("CARGO_BIN_EXE_lifted-walk"))
        .args([
            "run",
            "--steps",
            "65",
            "--sites",
            "25",
            "--boundary",
            "reflect1",
            "--initial",
            "uniform:2-24:(0.1474,0),(\u{2212}0.1474,0)",
        ])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let rows = dataset::read_csv(o.stdout.as_slice()).unwrap();
    let sum: f64 = rows.iter().map(|r| r.prob_total).sum();
    // 23 sites of |0.1474|^2 + |0.1474|^2 hold 0.999431 of the probability,
    // and the walk is unitary, so the sum cannot come closer to 1 than 5.7e-4.
    assert!((sum - 1.0).abs() < 1e-4, "sum of prob_total = {sum}");
}
