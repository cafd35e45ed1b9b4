//! Validate a distance matrix and report diameter and smallest distance.
//!
//!     cargo run --example validate_space -- path/to/matrix.csv

use gh_simplex::io::read_input;
use gh_simplex::io::Input;
use gh_simplex::metric::triangle_violations;
use gh_simplex::{Tolerance, Validation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "tests/fixtures/not_metric.csv".into());
    let Input::Matrix(raw) = read_input(path.as_ref())? else {
        return Err("expected a distance matrix".into());
    };
    match raw.clone().validate(Validation::default()) {
        Ok(x) => println!("{path}: n={} diam={} eps={}", x.len(), x.diam(), x.eps()),
        Err(e) => {
            println!("{path}: {e}");
            for (i, j, k) in triangle_violations(&raw.rows, Tolerance::DEFAULT) {
                println!("  d({}, {}) > d({0}, {}) + d({2}, {1})", raw.labels[i], raw.labels[k], raw.labels[j]);
            }
        }
    }
    Ok(())
}
