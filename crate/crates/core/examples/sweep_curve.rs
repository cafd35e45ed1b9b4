//! The curve λ ↦ 2·dGH(λΔ_m, X) for a finite space and for the circle preset.

use gh_simplex::generate::random_integer_metric;
use gh_simplex::simplex::{lambda_range, sweep_characteristics, sweep_space, Preset};
use gh_simplex::{Tolerance, DEFAULT_CAP};

fn main() -> gh_simplex::Result<()> {
    let x = random_integer_metric(6, 4, 11)?;
    let grid = lambda_range(0.5, 2.0 * x.diam(), 0.5)?;
    println!("random space, n=6, m=3");
    for r in sweep_space(&x, 3, &grid, Tolerance::DEFAULT, DEFAULT_CAP)? {
        println!(
            "{:>5} [{}, {}] value {} case {} {}",
            r.lambda,
            r.bound.lo(),
            r.bound.hi(),
            r.value.unwrap(),
            r.bound.case,
            r.bound.region
        );
    }

    let circle: Preset = "circle-m2".parse()?;
    println!("circle, m=2");
    for r in sweep_characteristics(&circle.characteristics(None)?, &lambda_range(0.5, 4.0, 0.5)?, Tolerance::DEFAULT)? {
        println!("{:>5} {}", r.lambda, r.bound.lo());
    }
    Ok(())
}
