use std::path::Path;

use labelgrid::io::{
    emit_svg, parse_feature_xml, parse_placements_json, placement_document, read_feature_file, write_feature_xml,
    SvgOptions,
};
use labelgrid::{datasets, validate, EngineOptions, LabelDims, Labeler, Viewport};

fn data(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

#[test]
fn sample_fixture_parses_with_a_warning() {
    let file = read_feature_file(&data("sample.xml")).unwrap();
    assert_eq!(file.features.len(), 5);
    assert_eq!(file.nodes, Some(1000));
    assert_eq!(file.warnings.len(), 1);
    assert_eq!(file.features[0].primary_text, "NEW YORK");
    assert_eq!(file.features[0].secondary_text.as_deref(), Some("NEW YORK"));
    // Ranks are compacted to processing order.
    let ranks: Vec<u32> = file.features.iter().map(|f| f.rank).collect();
    assert_eq!(ranks, [1, 2, 3, 4, 5]);
}

#[test]
fn synthetic_fixture_is_complete() {
    let file = read_feature_file(&data("synthetic_1000.xml")).unwrap();
    assert_eq!(file.features.len(), 1000);
    assert!(file.warnings.is_empty(), "{:?}", file.warnings);
    assert!(file.features.iter().all(|f| (0.0..1.0).contains(&f.world_x) && (0.0..1.0).contains(&f.world_y)));
}

#[test]
fn feature_xml_round_trips() {
    let f = datasets::clustered(300, 4, 12);
    let back = parse_feature_xml(&write_feature_xml(&f)).unwrap();
    assert!(back.warnings.is_empty());
    assert_eq!(back.features.len(), 300);
    for (a, b) in f.iter().zip(&back.features) {
        assert_eq!((a.rank, &a.primary_text), (b.rank, &b.primary_text));
        assert!((a.world_x - b.world_x).abs() < 1e-9 && (a.world_y - b.world_y).abs() < 1e-9);
    }
}

#[test]
fn placement_json_round_trips_and_labels_stay_valid() {
    let f = read_feature_file(&data("synthetic_1000.xml")).unwrap().features;
    let view = Viewport::new(770, 840, 0.2, 0.2, 1.7).unwrap();
    let r = Labeler::new(LabelDims::new(80.0, 11.0).unwrap(), EngineOptions::default()).unwrap().label(&f, &view);
    assert!(validate::is_valid(&r));
    let doc = placement_document(&r, &f);
    let back = parse_placements_json(&doc.to_json()).unwrap();
    assert_eq!(back, doc);
    assert_eq!(back.placements.len(), 1000);
    let placed = back.placements.iter().filter(|p| p.rect.is_some()).count();
    assert_eq!(placed, r.labels_placed);
    assert!(back.placements.iter().any(|p| p.reason.is_some()));
}

#[test]
fn malformed_json_is_rejected() {
    assert!(parse_placements_json("{").is_err());
    assert!(parse_placements_json("{\"viewport\": 3}").is_err());
}

#[test]
fn svg_is_well_formed() {
    let f = read_feature_file(&data("sample.xml")).unwrap().features;
    let r = Labeler::new(LabelDims::new(150.0, 12.0).unwrap(), EngineOptions::default())
        .unwrap()
        .label(&f, &Viewport::identity(770, 840).unwrap());
    for show_trellis in [false, true] {
        let svg = emit_svg(&r, &f, &SvgOptions { show_trellis, ..Default::default() });
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let root = doc.root_element();
        assert_eq!(root.tag_name().name(), "svg");
        assert_eq!(root.attribute("width"), Some("770"));
        let labels = doc.descendants().filter(|n| n.attribute("class") == Some("label")).count();
        assert_eq!(labels, r.labels_placed);
        let circles = doc.descendants().filter(|n| n.has_tag_name("circle")).count();
        assert_eq!(circles, 5);
        assert_eq!(doc.descendants().any(|n| n.attribute("id") == Some("trellis")), show_trellis);
    }
}
