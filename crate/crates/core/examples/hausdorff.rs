//! Hausdorff distance between subsets of a finite metric space.

use gh_simplex::FiniteMetricSpace;

fn main() -> gh_simplex::Result<()> {
    // five points on a line
    let pos = [0.0, 1.0, 3.0, 4.0, 8.0];
    let rows = pos.iter().map(|a| pos.iter().map(|b| f64::abs(a - b)).collect()).collect();
    let x = FiniteMetricSpace::from_rows(rows)?;

    let a = x.point_set([0, 1])?;
    let b = x.point_set([2, 3])?;
    let c = x.point_set([4])?;
    println!("d_H(A, B) = {}", x.hausdorff(&a, &b));
    println!("d_H(A, C) = {}", x.hausdorff(&a, &c));
    println!("d_H(A, X) = {}", x.hausdorff(&a, &x.all_points()));
    println!("inf |AB| = {}, sup |AB| = {}", x.set_dist_inf(&a, &b), x.set_dist_sup(&a, &b));
    Ok(())
}
