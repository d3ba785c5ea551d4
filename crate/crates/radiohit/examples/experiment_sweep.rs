//! Driving the experiment harness from code: sweep the hitting game over k,
//! summarize, and compare growth-shape fits. The `radiohit` binary runs the
//! same machinery from JSON configs.
//!
//! ```bash
//! cargo run --release --example experiment_sweep
//! ```

use radiohit::harness::{run_experiment, summarize, ExperimentConfig};

fn fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let coefficient =
        xs.iter().zip(ys).map(|(x, y)| x * y).sum::<f64>() / xs.iter().map(|x| x * x).sum::<f64>();
    let sse = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - coefficient * x).powi(2))
        .sum::<f64>();
    (coefficient, sse)
}

fn main() {
    let config = ExperimentConfig::from_json(
        r#"{
            "scenario": "hitting",
            "points": [16, 32, 64, 128, 256, 512, 1024],
            "player": "basic:decay",
            "referee": "density",
            "trials": 300,
            "base_seed": 42
        }"#,
    )
    .unwrap();
    let rows = run_experiment(&config).unwrap();
    let summary = summarize(&rows).unwrap();

    println!("k      median  p95  high-prob(1-1/k)");
    for row in &summary {
        println!(
            "{:<6} {:<7} {:<4} {}",
            row.point,
            row.median_rounds.unwrap(),
            row.p95_rounds.unwrap(),
            row.high_prob_round.unwrap()
        );
    }

    let logs: Vec<f64> = summary.iter().map(|s| (s.point as f64).log2()).collect();
    let log_squares: Vec<f64> = logs.iter().map(|l| l * l).collect();
    let medians: Vec<f64> = summary
        .iter()
        .map(|s| s.median_rounds.unwrap() as f64)
        .collect();
    let high_prob: Vec<f64> = summary
        .iter()
        .map(|s| s.high_prob_round.unwrap() as f64)
        .collect();

    let (b, med_lin) = fit(&logs, &medians);
    let (_, med_sq) = fit(&log_squares, &medians);
    let (a, hp_sq) = fit(&log_squares, &high_prob);
    let (_, hp_lin) = fit(&logs, &high_prob);
    println!("\nmedian ~ {b:.2}*log2(k)        (sse {med_lin:.1} linear vs {med_sq:.1} squared)");
    println!("high-prob ~ {a:.2}*log2(k)^2  (sse {hp_sq:.1} squared vs {hp_lin:.1} linear)");
    println!("\nexpected-time shape is logarithmic, high-probability shape is log-squared");
}
