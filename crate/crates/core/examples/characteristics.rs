//! Partition characteristics of a random space and the case they select.

use gh_simplex::generate::random_metric;
use gh_simplex::simplex::{alpha_plus_via_mst, mst};
use gh_simplex::{characteristics, classify_case, Tolerance};

fn main() -> gh_simplex::Result<()> {
    let x = random_metric(7, 3)?;
    println!("n={} diam={:.3} eps={:.3}", x.len(), x.diam(), x.eps());
    for e in mst(&x) {
        println!("  mst edge {}-{} {:.3}", e.i, e.j, e.weight);
    }
    for m in 1..=x.len() {
        let c = characteristics(&x, m)?;
        let case = classify_case(&c, Tolerance::DEFAULT)?;
        println!(
            "m={m}: alpha-={} alpha+={} (mst {}) d-={:.3} d+={:.3} case {case}",
            c.alpha_minus,
            c.alpha_plus,
            alpha_plus_via_mst(&x, m)?,
            c.d_minus,
            c.d_plus
        );
    }
    Ok(())
}
