//! Label a point file and print each placement.
//!
//! ```text
//! cargo run --example label_xml -- crates/core/data/sample.xml
//! ```

use labelgrid::io::read_feature_file;
use labelgrid::{EngineOptions, LabelDims, Labeler, Outcome, Viewport};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "crates/core/data/sample.xml".into());
    let file = read_feature_file(path.as_ref())?;
    for w in &file.warnings {
        eprintln!("warning: {w}");
    }

    let labeler = Labeler::new(LabelDims::new(150.0, 12.0)?, EngineOptions::default())?;
    let result = labeler.label(&file.features, &Viewport::identity(770, 840)?);

    for (f, outcome) in file.features.iter().zip(&result.outcomes) {
        match outcome {
            Outcome::Labeled { corner, rect } => {
                println!("{:>5} {:<24} {:?} at ({:.1}, {:.1})", f.rank, f.primary_text, corner, rect.left, rect.top)
            }
            Outcome::Unlabeled(reason) => println!("{:>5} {:<24} none ({})", f.rank, f.primary_text, reason.as_str()),
        }
    }
    println!("{} of {} labeled in {:.3} ms", result.labels_placed, result.features_processed, result.timings.total_ms);
    Ok(())
}
