//! Restricted growth strings, Stirling counts and block statistics.

use gh_simplex::{partition_count, FiniteMetricSpace, Partitions};

fn main() -> gh_simplex::Result<()> {
    let x = FiniteMetricSpace::from_rows(vec![
        vec![0.0, 1.0, 2.0, 3.0],
        vec![1.0, 0.0, 1.0, 2.0],
        vec![2.0, 1.0, 0.0, 1.0],
        vec![3.0, 2.0, 1.0, 0.0],
    ])?;
    println!("S(4,2) = {}", partition_count(4, 2)?);
    for d in Partitions::new(4, 2)? {
        println!(
            "{:?} {:?} diam={} alpha={} beta={}",
            d.rgs(),
            d.blocks(),
            d.diam(&x),
            d.alpha(&x),
            d.beta(&x)
        );
    }
    println!("S(20,5) = {}", partition_count(20, 5)?);
    Ok(())
}
