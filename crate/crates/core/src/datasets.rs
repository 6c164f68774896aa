//! Synthetic point sets and benchmark dataset loading.
//!
//! Generated features live in the unit world square and are ranked in
//! generation order. External datasets are looked up under
//! `$LABELGRID_DATA_DIR` (default `./datasets`); `scripts/fetch_datasets.sh`
//! downloads them there.

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::model::Feature;

pub const DATA_DIR_ENV: &str = "LABELGRID_DATA_DIR";

/// Site count of the Munich drill-hole benchmark set.
pub const MUNICH_SITES: usize = 19_446;
pub const MUNICH_FILE: &str = "munich_drillholes.txt";

/// `n` points drawn uniformly from the unit square.
pub fn uniform(n: usize, seed: u64) -> Vec<Feature> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|i| Feature::new(i as u32, i as u32 + 1, rng.random(), rng.random(), format!("P{i}"))).collect()
}

/// `n` points in `clusters` Gaussian blobs with a sprinkling of uniform
/// background noise. Cluster spreads vary between 0.01 and 0.08.
pub fn clustered(n: usize, clusters: usize, seed: u64) -> Vec<Feature> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clusters = clusters.max(1);
    let centers: Vec<(f64, f64, f64)> = (0..clusters)
        .map(|_| (rng.random_range(0.1..0.9), rng.random_range(0.1..0.9), rng.random_range(0.01..0.08)))
        .collect();
    (0..n)
        .map(|i| {
            let (x, y) = if rng.random::<f64>() < 0.1 {
                (rng.random(), rng.random())
            } else {
                let (cx, cy, sd) = centers[rng.random_range(0..clusters)];
                let normal = Normal::new(0.0, sd).expect("positive spread");
                loop {
                    let p = (cx + normal.sample(&mut rng), cy + normal.sample(&mut rng));
                    if (0.0..1.0).contains(&p.0) && (0.0..1.0).contains(&p.1) {
                        break p;
                    }
                }
            };
            Feature::new(i as u32, i as u32 + 1, x, y, format!("C{i}"))
        })
        .collect()
}

/// A clustered stand-in with the Munich set's size, for when the real file
/// is not available.
pub fn munich_proxy(seed: u64) -> Vec<Feature> {
    clustered(MUNICH_SITES, 40, seed)
}

/// Parses whitespace- or comma-separated coordinates, one point per line.
///
/// The first two numeric fields of a line are taken as x and y; lines with
/// fewer (headers, counts) and lines starting with `#` are skipped. Points
/// are ranked in file order and scaled uniformly into the unit square, with
/// y flipped so north is up on screen.
pub fn parse_xy(text: &str) -> Result<Vec<Feature>> {
    let mut pts = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums: Vec<f64> = line
            .split(|c: char| c.is_whitespace() || c == ',' || c == ';')
            .filter(|t| !t.is_empty())
            .filter_map(|t| t.parse::<f64>().ok())
            .filter(|v| v.is_finite())
            .take(2)
            .collect();
        if nums.len() == 2 {
            pts.push((nums[0], nums[1]));
        }
    }
    if pts.is_empty() {
        return Err(Error::Format("no coordinate pairs found".into()));
    }
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    // Keep the far edge inside the half-open window.
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE) * (1.0 + 1e-9);
    Ok(pts
        .iter()
        .enumerate()
        .map(|(i, &(x, y))| {
            Feature::new(i as u32, i as u32 + 1, (x - x0) / span, (y1 - y) / span + 0.5e-9, format!("S{i}"))
        })
        .collect())
}

pub fn load_xy(path: &Path) -> Result<Vec<Feature>> {
    parse_xy(&std::fs::read_to_string(path)?)
}

pub fn data_dir() -> PathBuf {
    std::env::var_os(DATA_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("datasets"))
}

/// Path of a named dataset file, or an error telling how to fetch it.
pub fn locate(name: &str) -> Result<PathBuf> {
    let path = data_dir().join(name);
    if path.is_file() {
        Ok(path)
    } else {
        Err(Error::MissingDataset(format!(
            "dataset {} not found; run scripts/fetch_datasets.sh or set {DATA_DIR_ENV}",
            path.display()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_seeded() {
        assert_eq!(uniform(100, 3), uniform(100, 3));
        assert_ne!(uniform(100, 3), uniform(100, 4));
        assert_eq!(clustered(500, 5, 1), clustered(500, 5, 1));
    }

    #[test]
    fn points_stay_in_the_unit_square() {
        for f in uniform(2000, 1).iter().chain(&clustered(5000, 8, 2)) {
            assert!((0.0..1.0).contains(&f.world_x) && (0.0..1.0).contains(&f.world_y));
        }
    }

    #[test]
    fn xy_parsing() {
        let f = parse_xy("# sites\n3\n10 20\n30,40\n  20 30 extra\n").unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f[0].world_x, 0.0);
        assert!(f[1].world_x < 1.0 && f[1].world_x > 0.999);
        // North up: the largest y lands at the top.
        assert!(f[1].world_y < f[0].world_y);
        assert!(parse_xy("nothing here").is_err());
    }
}
