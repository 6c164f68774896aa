//! The point-file XML format.
//!
//! ```xml
//! <ViewData>
//!   <Data>
//!     <Feature_Points nodes="2" width="522" height="380">
//!       <point rank="1" key1="NEW YORK" key2="NEW YORK" data="7333253"
//!              lat="40.71416" lon="-74.006386" x="0.8587972" y="0.2525217"/>
//!       ...
//! ```
//!
//! `x` and `y` are world coordinates, normally in the unit square.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::Feature;

/// One `<point>` element as written in the file.
#[derive(Debug, Clone, PartialEq)]
pub struct PointRecord {
    /// Rank as declared, before re-ranking.
    pub rank: u32,
    pub key1: String,
    pub key2: Option<String>,
    pub data: Option<f64>,
    pub lat: Option<f64>,
    pub lon: Option<f64>,
    pub x: f64,
    pub y: f64,
    /// Attributes outside the known set, kept verbatim.
    pub extra: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FeatureFile {
    pub nodes: Option<usize>,
    pub width_hint: Option<f64>,
    pub height_hint: Option<f64>,
    pub records: Vec<PointRecord>,
    /// Features in document order, re-ranked to unique ranks `1..=n`.
    pub features: Vec<Feature>,
    pub warnings: Vec<String>,
}

const KNOWN: [&str; 8] = ["rank", "key1", "key2", "data", "lat", "lon", "x", "y"];

pub fn parse_feature_xml(text: &str) -> Result<FeatureFile> {
    let doc = roxmltree::Document::parse(text).map_err(|e| {
        let pos = e.pos();
        Error::Xml { line: pos.row, column: pos.col, message: e.to_string() }
    })?;
    let root = doc.root_element();
    let located = |node: roxmltree::Node, message: String| {
        let pos = doc.text_pos_at(node.range().start);
        Error::Xml { line: pos.row, column: pos.col, message }
    };
    if root.tag_name().name() != "ViewData" {
        return Err(located(root, format!("expected <ViewData> root, found <{}>", root.tag_name().name())));
    }
    let data = child(root, "Data").ok_or_else(|| located(root, "missing <Data> element".into()))?;
    let points =
        child(data, "Feature_Points").ok_or_else(|| located(data, "missing <Feature_Points> element".into()))?;

    let mut file = FeatureFile::default();
    let hint = |name: &str| -> Result<Option<f64>> {
        points
            .attribute(name)
            .map(|v| v.trim().parse::<f64>().map_err(|_| located(points, format!("bad {name} attribute {v:?}"))))
            .transpose()
    };
    file.nodes = points
        .attribute("nodes")
        .map(|v| v.trim().parse::<usize>().map_err(|_| located(points, format!("bad nodes attribute {v:?}"))))
        .transpose()?;
    file.width_hint = hint("width")?;
    file.height_hint = hint("height")?;

    for (index, node) in points.children().filter(|n| n.is_element()).enumerate() {
        if node.tag_name().name() != "point" {
            return Err(located(node, format!("unexpected <{}> inside <Feature_Points>", node.tag_name().name())));
        }
        file.records.push(parse_record(index, node)?);
    }

    if let Some(n) = file.nodes {
        if n != file.records.len() {
            file.warnings.push(format!("nodes=\"{n}\" but {} point records were found", file.records.len()));
        }
    }
    let (features, duplicates) = rerank(&file.records);
    if duplicates > 0 {
        file.warnings.push(format!("{duplicates} duplicate rank values; re-ranked in document order"));
    }
    file.features = features;
    Ok(file)
}

fn child<'a, 'i>(node: roxmltree::Node<'a, 'i>, name: &str) -> Option<roxmltree::Node<'a, 'i>> {
    node.children().find(|c| c.is_element() && c.tag_name().name() == name)
}

fn parse_record(index: usize, node: roxmltree::Node) -> Result<PointRecord> {
    let rank_text = node.attribute("rank").unwrap_or("?").to_string();
    let err = |message: String| Error::Record { index, rank: rank_text.clone(), message };
    let number = |name: &str| -> Result<Option<f64>> {
        match node.attribute(name) {
            None => Ok(None),
            Some(v) => match v.trim().parse::<f64>() {
                Ok(f) if f.is_finite() => Ok(Some(f)),
                _ => Err(err(format!("{name}={v:?} is not a finite number"))),
            },
        }
    };
    let rank = match node.attribute("rank") {
        None => return Err(err("missing rank".into())),
        Some(v) => match v.trim().parse::<u32>() {
            Ok(r) if r > 0 => r,
            _ => return Err(err(format!("rank={v:?} is not a positive integer"))),
        },
    };
    let x = number("x")?.ok_or_else(|| err("missing x".into()))?;
    let y = number("y")?.ok_or_else(|| err("missing y".into()))?;
    let extra = node
        .attributes()
        .filter(|a| !KNOWN.contains(&a.name()))
        .map(|a| (a.name().to_string(), a.value().to_string()))
        .collect();
    Ok(PointRecord {
        rank,
        key1: node.attribute("key1").unwrap_or_default().to_string(),
        key2: node.attribute("key2").map(str::to_string),
        data: number("data")?,
        lat: number("lat")?,
        lon: number("lon")?,
        x,
        y,
        extra,
    })
}

/// Stable sort by declared rank, then assign `1..=n`. Returns the features in
/// document order and the number of records that shared a rank.
fn rerank(records: &[PointRecord]) -> (Vec<Feature>, usize) {
    let mut order: Vec<usize> = (0..records.len()).collect();
    order.sort_by_key(|&i| records[i].rank);
    let duplicates = order.windows(2).filter(|w| records[w[0]].rank == records[w[1]].rank).count();
    let mut rank = vec![0u32; records.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r as u32 + 1;
    }
    let features = records
        .iter()
        .enumerate()
        .map(|(i, rec)| Feature {
            id: i as u32,
            rank: rank[i],
            world_x: rec.x,
            world_y: rec.y,
            primary_text: rec.key1.clone(),
            secondary_text: rec.key2.clone(),
            data_value: rec.data,
        })
        .collect();
    (features, duplicates)
}

/// Writes features back out in the same grammar.
pub fn write_feature_xml(features: &[Feature]) -> String {
    let mut out = String::from("<?xml version=\"1.0\"?>\n<ViewData>\n  <Data>\n");
    out.push_str(&format!("    <Feature_Points nodes=\"{}\">\n", features.len()));
    for f in features {
        out.push_str(&format!("      <point rank=\"{}\" key1=\"{}\"", f.rank, escape(&f.primary_text)));
        if let Some(k2) = &f.secondary_text {
            out.push_str(&format!(" key2=\"{}\"", escape(k2)));
        }
        if let Some(d) = f.data_value {
            out.push_str(&format!(" data=\"{d}\""));
        }
        out.push_str(&format!(" x=\"{}\" y=\"{}\"/>\n", f.world_x, f.world_y));
    }
    out.push_str("    </Feature_Points>\n  </Data>\n</ViewData>\n");
    out
}

pub(crate) fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}
