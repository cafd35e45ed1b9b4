//! Compare the partition formula with brute force over correspondences.

use gh_simplex::correspondence::min_distortion;
use gh_simplex::generate::random_metric;
use gh_simplex::{gh_to_simplex, FiniteMetricSpace, DEFAULT_CAP};

fn main() -> gh_simplex::Result<()> {
    let x = random_metric(5, 9)?;
    let mut worst: f64 = 0.0;
    for m in 1..=7 {
        for k in 1..=8 {
            let lambda = k as f64 * x.diam() / 4.0;
            let formula = gh_to_simplex(&x, m, lambda)?;
            let simplex = FiniteMetricSpace::simplex(m, lambda)?;
            let o = min_distortion(&simplex, &x, DEFAULT_CAP)?;
            worst = worst.max((formula - o.min_distortion).abs());
            println!(
                "m={m} λ={lambda:.3}: formula {formula:.6} oracle {:.6} over {} correspondences",
                o.min_distortion, o.visited
            );
        }
    }
    println!("largest difference {worst:e}");
    Ok(())
}
