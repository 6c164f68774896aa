//! Compare the trellis conflict graph and greedy selection against the
//! brute-force oracle on random instances.
//!
//! ```text
//! cargo run --release --example oracle_check -- 50
//! ```

use std::collections::BTreeSet;

use labelgrid::oracle::{oracle_graph, reference_select};
use labelgrid::{cost, datasets, EngineOptions, LabelDims, Labeler, NeighborhoodTestTable, Trellis, Viewport};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let instances: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(20);
    let view = Viewport::identity(770, 840)?;
    let dims = LabelDims::new(150.0, 12.0)?;
    let labeler = Labeler::new(dims, EngineOptions::default())?;
    let table = NeighborhoodTestTable::builtin();

    let mut mismatches = 0;
    for seed in 0..instances {
        let features = if seed % 2 == 0 { datasets::uniform(500, seed) } else { datasets::clustered(500, 6, seed) };
        let result = labeler.label(&features, &view);
        let pts = result.points();

        let mut trellis = Trellis::new(770.0, 840.0, dims);
        trellis.populate(&pts);
        let mut edges = BTreeSet::new();
        for a in 0..pts.len() as u32 {
            trellis.test_neighborhood(a, &pts, table, true, |i, p| {
                edges.insert((a, i, p.feature, p.candidate));
            });
        }
        let graph = oracle_graph(&pts, dims);
        let same_graph = edges == graph.forward_edges();
        let same_choice = result.chosen()
            == reference_select(&graph, &pts, dims, &cost::spread_values(pts.len()), &EngineOptions::default());
        if !(same_graph && same_choice) {
            mismatches += 1;
        }
        println!("seed {seed:>3}  edges {:>6}  graph {}  selection {}", edges.len(), ok(same_graph), ok(same_choice));
    }
    println!("{mismatches} mismatching instances of {instances}");
    Ok(())
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "DIFF"
    }
}
