//! Write generated spaces to disk and read them back.

use gh_simplex::generate::{circle_sample, lp_points, random_metric};
use gh_simplex::io::{read_space, write_space};
use gh_simplex::{FiniteMetricSpace, Validation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("gh-simplex-example");
    std::fs::create_dir_all(&dir)?;
    let spaces: [(&str, FiniteMetricSpace); 4] = [
        ("simplex.csv", FiniteMetricSpace::simplex(4, 2.0)?),
        ("random.json", random_metric(6, 1)?),
        ("l1.csv", lp_points(5, 3, 1.0, 2)?),
        ("circle.csv", circle_sample(8, false)?),
    ];
    for (name, x) in spaces {
        let path = dir.join(name);
        write_space(&x, &path)?;
        let back = read_space(&path, Validation::default())?;
        assert_eq!(back, x);
        println!("{}: n={} diam={:.4}", path.display(), back.len(), back.diam());
    }
    Ok(())
}
