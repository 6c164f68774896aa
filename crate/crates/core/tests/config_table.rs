//! The configuration codes and the 9x9 decision table against brute force
//! geometry and against a hand-written reference listing.

use labelgrid::oracle::candidate_pairs;
use labelgrid::trellis::Zone;
use labelgrid::{ConfigCode, LabelDims, NeighborhoodTestTable, Trellis};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sample_in(zone: Zone, rng: &mut ChaCha8Rng) -> f64 {
    let (lo, hi) = zone.bounds();
    // Open interval; also keep clear of zero so the side is unambiguous.
    let lo = if lo == 0.0 { 1e-6 } else { lo + 1e-6 };
    let hi = if hi == 0.0 { -1e-6 } else { hi - 1e-6 };
    rng.random_range(lo..hi)
}

#[test]
fn pair_lists_match_brute_force_under_perturbation() {
    let table = NeighborhoodTestTable::builtin();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for code in ConfigCode::ALL {
        for _ in 0..1000 {
            let dims = LabelDims::new(rng.random_range(0.5..300.0), rng.random_range(0.2..40.0)).unwrap();
            let a = (rng.random_range(-1e3..1e3), rng.random_range(-1e3..1e3));
            let (zx, zy) = code.zones();
            let b = (a.0 + sample_in(zx, &mut rng) * dims.width, a.1 + sample_in(zy, &mut rng) * dims.height);
            assert_eq!(candidate_pairs(a, b, dims), table.pairs(code), "{code} a={a:?} b={b:?} dims={dims:?}");
        }
    }
}

#[test]
fn family_sizes() {
    let table = NeighborhoodTestTable::builtin();
    for code in ConfigCode::ALL {
        let want = match code.family() {
            'α' => 0,
            'β' => 1,
            'γ' => 3,
            _ => 9,
        };
        assert_eq!(table.pairs(code).len(), want, "{code}");
    }
}

fn parse_pairs(s: &str) -> Vec<(u8, u8)> {
    let mut v: Vec<(u8, u8)> = s
        .split(',')
        .map(|p| {
            let p = p.trim();
            let (a, b) = p.split_once(':').unwrap();
            (a.trim_start_matches('A').parse().unwrap(), b.trim_start_matches('B').parse().unwrap())
        })
        .collect();
    v.sort();
    v
}

#[test]
fn pair_lists_match_the_reference_listing() {
    // Transcribed from the label-pair configuration table. The near-near
    // entries list the four shared diagonal pairs once and five extra pairs
    // per code.
    let diagonal = "A0:B0, A1:B1, A2:B2, A3:B3";
    let reference = [
        ("b0", "A0:B3".to_string()),
        ("b1", "A1:B2".to_string()),
        ("b2", "A2:B1".to_string()),
        ("b3", "A3:B0".to_string()),
        ("g10", "A0:B2, A1:B2, A1:B3".to_string()),
        ("g13", "A1:B0, A1:B2, A3:B2".to_string()),
        ("g31", "A1:B0, A3:B0, A3:B2".to_string()),
        ("g32", "A2:B0, A3:B0, A3:B1".to_string()),
        ("g01", "A0:B2, A0:B3, A1:B3".to_string()),
        ("g02", "A0:B1, A0:B3, A2:B3".to_string()),
        ("g20", "A0:B1, A2:B1, A2:B3".to_string()),
        ("g23", "A2:B0, A2:B1, A3:B1".to_string()),
        ("d0", format!("{diagonal}, A0:B1, A1:B3, A0:B2, A2:B3, A0:B3")),
        ("d1", format!("{diagonal}, A1:B3, A3:B2, A1:B2, A0:B2, A1:B0")),
        ("d2", format!("{diagonal}, A2:B0, A3:B1, A2:B1, A0:B1, A2:B3")),
        ("d3", format!("{diagonal}, A3:B0, A1:B0, A3:B1, A2:B0, A3:B2")),
    ];
    let table = NeighborhoodTestTable::builtin();
    for (name, pairs) in &reference {
        let code = ConfigCode::parse_ascii(name).unwrap();
        assert_eq!(table.pairs(code), parse_pairs(pairs), "{name}");
    }
}

#[test]
fn upper_left_quadrant_matches_the_reference_outline() {
    // (dcol, drow, tree) for the upper-left quadrant; the central
    // cell is (0, 0).
    let outline = [
        (-4, -4, "DY>2 ? a1 : (DX>2 ? a0 : b1)"),
        (-3, -4, "DY>2 ? a1 : b1"),
        (-2, -4, "DY>2 ? a1 : (DX>1 ? b1 : g13)"),
        (-1, -4, "DY>2 ? a1 : g13"),
        (0, -4, "DY>2 ? a1 : (XA>XB ? g13 : g31)"),
        (-4, -3, "DX>2 ? a0 : b1"),
        (-3, -3, "b1"),
        (-2, -3, "DX>1 ? b1 : g13"),
        (-1, -3, "g13"),
        (0, -3, "XA>XB ? g13 : g31"),
        (-4, -2, "DX>2 ? a0 : (DY>1 ? b1 : g10)"),
        (-3, -2, "DY>1 ? b1 : g10"),
        (-2, -2, "DX>1 ? (DY>1 ? b1 : g10) : (DY>1 ? g13 : d1)"),
        (-1, -2, "DY>1 ? g13 : d1"),
        (0, -2, "DY>1 ? (XA>XB ? g13 : g31) : (XA>XB ? d1 : d3)"),
        (-4, -1, "DX>2 ? a0 : g10"),
        (-3, -1, "g10"),
        (-2, -1, "DX>1 ? g10 : d1"),
        (-1, -1, "d1"),
        (0, -1, "XA>XB ? d1 : d3"),
        (-4, 0, "DX>2 ? a0 : (YA>YB ? g01 : g10)"),
        (-3, 0, "YA>YB ? g01 : g10"),
        (-2, 0, "DX>1 ? (YA>YB ? g01 : g10) : (YA>YB ? d0 : d1)"),
        (-1, 0, "YA>YB ? d0 : d1"),
        (0, 0, "XA>XB ? (YA>YB ? d0 : d1) : (YA>YB ? d2 : d3)"),
    ];
    let table = NeighborhoodTestTable::builtin();
    for (dcol, drow, tree) in outline {
        assert_eq!(table.tree(dcol, drow).to_text(), tree, "cell ({dcol}, {drow})");
    }
}

#[test]
fn tree_classification_matches_zone_geometry() {
    // Random pairs placed through a real trellis: the table's answer must be
    // the code of the true per-axis zones.
    let table = NeighborhoodTestTable::builtin();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let zone = |d: f64| {
        let negative = d < 0.0;
        match d.abs() {
            m if m > 2.0 => Zone::Beyond { negative },
            m if m > 1.0 => Zone::Far { negative },
            _ => Zone::Near { negative },
        }
    };
    for _ in 0..200_000 {
        let dims = LabelDims::new(rng.random_range(1.0..200.0), rng.random_range(0.5..30.0)).unwrap();
        let t = Trellis::new(10.0 * dims.width, 10.0 * dims.height, dims);
        let a = (rng.random_range(4.0..6.0) * dims.width, rng.random_range(4.0..6.0) * dims.height);
        let b = (a.0 + rng.random_range(-2.5..2.5) * dims.width, a.1 + rng.random_range(-2.5..2.5) * dims.height);
        let (ca, cb) = (t.coords(a.0, a.1).unwrap(), t.coords(b.0, b.1).unwrap());
        let (dcol, drow) = (cb.0 as i32 - ca.0 as i32, cb.1 as i32 - ca.1 as i32);
        if dcol.abs() > 4 || drow.abs() > 4 {
            continue;
        }
        let mut n = 0;
        let got = table.classify(dcol, drow, a, b, dims, &mut n);
        let want = ConfigCode::from_zones(zone((b.0 - a.0) / dims.width), zone((b.1 - a.1) / dims.height));
        assert_eq!(got, want, "cell ({dcol}, {drow}) a={a:?} b={b:?}");
        assert!(n <= 2);
        assert_eq!(candidate_pairs(a, b, dims), table.pairs(got));
    }
}
