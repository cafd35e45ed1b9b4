//! Exact distance from a three-point space to the two-point simplex, with the
//! minimizing partition.

use gh_simplex::simplex::gh_to_simplex_with;
use gh_simplex::{FiniteMetricSpace, DEFAULT_CAP};

fn main() -> gh_simplex::Result<()> {
    let x = FiniteMetricSpace::from_rows(vec![
        vec![0.0, 1.0, 2.0],
        vec![1.0, 0.0, 2.0],
        vec![2.0, 2.0, 0.0],
    ])?
    .with_labels(vec!["a".into(), "b".into(), "c".into()])?;

    for m in 1..=4 {
        for lambda in [0.5, 1.0, 3.0, 5.0] {
            let r = gh_to_simplex_with(&x, m, lambda, DEFAULT_CAP)?;
            print!("m={m} λ={lambda}: 2dGH={} ({})", r.twice_gh, r.branch);
            if let Some(d) = &r.argmin {
                print!(" via {}", d.display_with(&x));
            }
            println!();
        }
    }
    Ok(())
}
