//! The 9x9 neighborhood test table.
//!
//! For every cell offset `(dcol, drow)` in `[-4, 4]^2` the table holds a
//! decision tree over at most two coordinate comparisons whose leaves are
//! configuration codes, plus the conflicting candidate pairs for each of the
//! twenty codes. The table is data: it is generated from first principles
//! (zone analysis for the trees, brute-force rectangle tests for the pair
//! lists), written to `data/trellis_table.txt`, and loaded from there.

use std::fmt::Write as _;
use std::sync::OnceLock;

use super::config::{ConfigCode, Zone};
use crate::error::{Error, Result};
use crate::model::LabelDims;
use crate::oracle;

pub const TABLE_VERSION: u32 = 1;
pub const RADIUS: i32 = 4;
const SIDE: usize = (2 * RADIUS + 1) as usize;

static BUILTIN_TEXT: &str = include_str!("../../data/trellis_table.txt");

/// One of the six atomic comparisons between feature A and feature B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Test {
    /// `|xA - xB| > W`
    DxGt1,
    /// `|xA - xB| > 2W`
    DxGt2,
    /// `|yA - yB| > H`
    DyGt1,
    /// `|yA - yB| > 2H`
    DyGt2,
    /// `xA > xB`: B is to the left.
    XaGtXb,
    /// A is above B in y-up terms, i.e. `yA < yB` on screen: B is below.
    YaGtYb,
}

impl Test {
    pub const ALL: [Test; 6] = [Test::DxGt1, Test::DxGt2, Test::DyGt1, Test::DyGt2, Test::XaGtXb, Test::YaGtYb];

    pub fn name(self) -> &'static str {
        match self {
            Test::DxGt1 => "DX>1",
            Test::DxGt2 => "DX>2",
            Test::DyGt1 => "DY>1",
            Test::DyGt2 => "DY>2",
            Test::XaGtXb => "XA>XB",
            Test::YaGtYb => "YA>YB",
        }
    }

    pub fn parse(s: &str) -> Option<Test> {
        Test::ALL.into_iter().find(|t| t.name() == s)
    }

    #[inline]
    pub fn eval(self, a: (f64, f64), b: (f64, f64), dims: LabelDims) -> bool {
        match self {
            Test::DxGt1 => (a.0 - b.0).abs() > dims.width,
            Test::DxGt2 => (a.0 - b.0).abs() > 2.0 * dims.width,
            Test::DyGt1 => (a.1 - b.1).abs() > dims.height,
            Test::DyGt2 => (a.1 - b.1).abs() > 2.0 * dims.height,
            Test::XaGtXb => a.0 > b.0,
            Test::YaGtYb => a.1 < b.1,
        }
    }
}

/// All six comparisons evaluated at once.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Predicates {
    pub dx_gt_1: bool,
    pub dx_gt_2: bool,
    pub dy_gt_1: bool,
    pub dy_gt_2: bool,
    pub xa_gt_xb: bool,
    pub ya_gt_yb: bool,
}

pub fn atomic_predicates(a: (f64, f64), b: (f64, f64), dims: LabelDims) -> Predicates {
    Predicates {
        dx_gt_1: Test::DxGt1.eval(a, b, dims),
        dx_gt_2: Test::DxGt2.eval(a, b, dims),
        dy_gt_1: Test::DyGt1.eval(a, b, dims),
        dy_gt_2: Test::DyGt2.eval(a, b, dims),
        xa_gt_xb: Test::XaGtXb.eval(a, b, dims),
        ya_gt_yb: Test::YaGtYb.eval(a, b, dims),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TestTree {
    Leaf(ConfigCode),
    Branch { test: Test, if_true: Box<TestTree>, if_false: Box<TestTree> },
}

impl TestTree {
    fn branch(test: Test, if_true: TestTree, if_false: TestTree) -> TestTree {
        TestTree::Branch { test, if_true: Box::new(if_true), if_false: Box::new(if_false) }
    }

    pub fn depth(&self) -> usize {
        match self {
            TestTree::Leaf(_) => 0,
            TestTree::Branch { if_true, if_false, .. } => 1 + if_true.depth().max(if_false.depth()),
        }
    }

    pub fn leaves(&self) -> Vec<ConfigCode> {
        match self {
            TestTree::Leaf(c) => vec![*c],
            TestTree::Branch { if_true, if_false, .. } => {
                let mut v = if_true.leaves();
                v.extend(if_false.leaves());
                v
            }
        }
    }

    /// Tests along the tree in pre-order.
    pub fn tests(&self) -> Vec<Test> {
        match self {
            TestTree::Leaf(_) => Vec::new(),
            TestTree::Branch { test, if_true, if_false } => {
                let mut v = vec![*test];
                v.extend(if_true.tests());
                v.extend(if_false.tests());
                v
            }
        }
    }

    /// Walks the tree, adding one to `evaluated` per comparison.
    #[inline]
    pub fn classify(&self, a: (f64, f64), b: (f64, f64), dims: LabelDims, evaluated: &mut u64) -> ConfigCode {
        let mut node = self;
        loop {
            match node {
                TestTree::Leaf(c) => return *c,
                TestTree::Branch { test, if_true, if_false } => {
                    *evaluated += 1;
                    node = if test.eval(a, b, dims) { if_true } else { if_false };
                }
            }
        }
    }

    fn write_text(&self, out: &mut String, nested: bool) {
        match self {
            TestTree::Leaf(c) => out.push_str(&c.ascii()),
            TestTree::Branch { test, if_true, if_false } => {
                if nested {
                    out.push('(');
                }
                let _ = write!(out, "{} ? ", test.name());
                if_true.write_text(out, true);
                out.push_str(" : ");
                if_false.write_text(out, true);
                if nested {
                    out.push(')');
                }
            }
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        self.write_text(&mut s, false);
        s
    }
}

/// The per-offset decision trees and the per-code conflict pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborhoodTestTable {
    trees: Vec<TestTree>,
    pairs: Vec<Vec<(u8, u8)>>,
}

fn slot(dcol: i32, drow: i32) -> usize {
    debug_assert!(dcol.abs() <= RADIUS && drow.abs() <= RADIUS, "offset ({dcol},{drow}) outside the neighborhood");
    ((drow + RADIUS) as usize) * SIDE + (dcol + RADIUS) as usize
}

enum AxisStep {
    Fixed(Zone),
    Split { test: Test, if_true: Zone, if_false: Zone, rank: u8 },
}

/// What a cell offset along one axis reveals about B's zone, and which
/// comparison (if any) settles the rest. An offset of `k` cells puts the
/// coordinate difference strictly between `(|k|-1)/2` and `(|k|+1)/2` label
/// sizes.
fn axis_step(k: i32, x_axis: bool) -> AxisStep {
    let negative = k < 0;
    let (gt1, gt2) = if x_axis { (Test::DxGt1, Test::DxGt2) } else { (Test::DyGt1, Test::DyGt2) };
    match k.abs() {
        4 => {
            AxisStep::Split { test: gt2, if_true: Zone::Beyond { negative }, if_false: Zone::Far { negative }, rank: 0 }
        }
        3 => AxisStep::Fixed(Zone::Far { negative }),
        2 => AxisStep::Split { test: gt1, if_true: Zone::Far { negative }, if_false: Zone::Near { negative }, rank: 1 },
        1 => AxisStep::Fixed(Zone::Near { negative }),
        0 if x_axis => AxisStep::Split {
            test: Test::XaGtXb,
            if_true: Zone::Near { negative: true },
            if_false: Zone::Near { negative: false },
            rank: 2,
        },
        0 => AxisStep::Split {
            test: Test::YaGtYb,
            if_true: Zone::Near { negative: false },
            if_false: Zone::Near { negative: true },
            rank: 2,
        },
        _ => unreachable!("offset {k} outside the neighborhood"),
    }
}

fn leaf(x: Zone, y: Zone) -> TestTree {
    TestTree::Leaf(ConfigCode::from_zones(x, y))
}

/// Decision tree for one cell offset. Two-comparison cells test the
/// reach-limiting comparison first (y before x), then the one-label-size
/// comparison (x before y), then the sign comparison (x before y); an
/// outcome that puts B beyond reach ends the walk.
fn tree_for(dcol: i32, drow: i32) -> TestTree {
    use AxisStep::*;
    match (axis_step(dcol, true), axis_step(drow, false)) {
        (Fixed(x), Fixed(y)) => leaf(x, y),
        (Split { test, if_true, if_false, .. }, Fixed(y)) => {
            TestTree::branch(test, leaf(if_true, y), leaf(if_false, y))
        }
        (Fixed(x), Split { test, if_true, if_false, .. }) => {
            TestTree::branch(test, leaf(x, if_true), leaf(x, if_false))
        }
        (
            Split { test: xt, if_true: xa, if_false: xb, rank: xr },
            Split { test: yt, if_true: ya, if_false: yb, rank: yr },
        ) => {
            let y_first = yr < xr || (yr == xr && yr == 0);
            if y_first {
                let sub = |y: Zone| match y {
                    Zone::Beyond { .. } => leaf(xb, y),
                    _ => TestTree::branch(xt, leaf(xa, y), leaf(xb, y)),
                };
                TestTree::branch(yt, sub(ya), sub(yb))
            } else {
                let sub = |x: Zone| match x {
                    Zone::Beyond { .. } => leaf(x, yb),
                    _ => TestTree::branch(yt, leaf(x, ya), leaf(x, yb)),
                };
                TestTree::branch(xt, sub(xa), sub(xb))
            }
        }
    }
}

/// Conflict pairs for `code`, computed by brute-force intersection of the
/// sixteen candidate pairs at the code's witness geometry.
pub fn witness_pairs(code: ConfigCode) -> Vec<(u8, u8)> {
    let dims = LabelDims { width: 2.0, height: 1.0 };
    let (x, y) = code.zones();
    let b = (x.witness() * dims.width, y.witness() * dims.height);
    oracle::candidate_pairs((0.0, 0.0), b, dims)
}

impl NeighborhoodTestTable {
    /// The checked-in table, parsed once.
    pub fn builtin() -> &'static NeighborhoodTestTable {
        static TABLE: OnceLock<NeighborhoodTestTable> = OnceLock::new();
        TABLE.get_or_init(|| NeighborhoodTestTable::parse(BUILTIN_TEXT).expect("data/trellis_table.txt is malformed"))
    }

    /// Builds the table from zone analysis and the brute-force oracle.
    pub fn generate() -> NeighborhoodTestTable {
        let mut trees = Vec::with_capacity(SIDE * SIDE);
        for drow in -RADIUS..=RADIUS {
            for dcol in -RADIUS..=RADIUS {
                trees.push(tree_for(dcol, drow));
            }
        }
        let pairs = ConfigCode::ALL.iter().map(|&c| witness_pairs(c)).collect();
        NeighborhoodTestTable { trees, pairs }
    }

    pub fn tree(&self, dcol: i32, drow: i32) -> &TestTree {
        &self.trees[slot(dcol, drow)]
    }

    #[inline]
    pub fn pairs(&self, code: ConfigCode) -> &[(u8, u8)] {
        &self.pairs[code.ordinal()]
    }

    #[inline]
    pub fn classify(
        &self,
        dcol: i32,
        drow: i32,
        a: (f64, f64),
        b: (f64, f64),
        dims: LabelDims,
        evaluated: &mut u64,
    ) -> ConfigCode {
        self.trees[slot(dcol, drow)].classify(a, b, dims, evaluated)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("# labelgrid trellis neighborhood table\n");
        out.push_str("#\n");
        out.push_str("# pairs <code> <A:B>...    conflicting candidate pairs for a configuration\n");
        out.push_str("#                          (candidates: 0 lower-left, 1 upper-left,\n");
        out.push_str("#                          2 lower-right, 3 upper-right; '-' for none)\n");
        out.push_str("# cell <dcol> <drow> <tree> decision tree for B's cell offset from A's cell\n");
        out.push_str("#\n");
        out.push_str("# tree := code | TEST ? tree : tree | ( tree )\n");
        out.push_str("# DX>1 |xA-xB| > W    DX>2 |xA-xB| > 2W    XA>XB xA > xB\n");
        out.push_str("# DY>1 |yA-yB| > H    DY>2 |yA-yB| > 2H    YA>YB A above B (screen yA < yB)\n");
        out.push_str("# codes: a0..a3 no conflict, b<d>, g<d><k>, d<d>\n");
        let _ = writeln!(out, "version {TABLE_VERSION}");
        for code in ConfigCode::ALL {
            let list = self.pairs(code);
            let body = if list.is_empty() {
                "-".to_string()
            } else {
                list.iter().map(|(a, b)| format!("{a}:{b}")).collect::<Vec<_>>().join(" ")
            };
            let _ = writeln!(out, "pairs {} {}", code.ascii(), body);
        }
        for drow in -RADIUS..=RADIUS {
            for dcol in -RADIUS..=RADIUS {
                let _ = writeln!(out, "cell {dcol} {drow} {}", self.tree(dcol, drow).to_text());
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<NeighborhoodTestTable> {
        let mut version = None;
        let mut pairs: Vec<Option<Vec<(u8, u8)>>> = vec![None; ConfigCode::ALL.len()];
        let mut trees: Vec<Option<TestTree>> = vec![None; SIDE * SIDE];
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let err = |message: String| Error::Table { line: line_no, message };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            match words.next() {
                Some("version") => {
                    let v: u32 = words
                        .next()
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| err("expected a version number".into()))?;
                    if v != TABLE_VERSION {
                        return Err(err(format!("unsupported version {v}")));
                    }
                    version = Some(v);
                }
                Some("pairs") => {
                    let name = words.next().ok_or_else(|| err("missing code".into()))?;
                    let code = ConfigCode::parse_ascii(name).ok_or_else(|| err(format!("unknown code {name}")))?;
                    let mut list = Vec::new();
                    for w in words {
                        if w == "-" {
                            continue;
                        }
                        let (a, b) = w.split_once(':').ok_or_else(|| err(format!("bad pair {w}")))?;
                        let parse = |s: &str| s.parse::<u8>().ok().filter(|v| *v < 4);
                        match (parse(a), parse(b)) {
                            (Some(a), Some(b)) => list.push((a, b)),
                            _ => return Err(err(format!("bad pair {w}"))),
                        }
                    }
                    pairs[code.ordinal()] = Some(list);
                }
                Some("cell") => {
                    let mut coord = || -> Result<i32> {
                        words
                            .next()
                            .and_then(|w| w.parse::<i32>().ok())
                            .filter(|v| v.abs() <= RADIUS)
                            .ok_or_else(|| err("expected an offset in -4..=4".into()))
                    };
                    let (dcol, drow) = (coord()?, coord()?);
                    let rest = line.split_whitespace().skip(3).collect::<Vec<_>>().join(" ");
                    let tree = parse_tree(&rest).map_err(err)?;
                    trees[slot(dcol, drow)] = Some(tree);
                }
                Some(other) => return Err(err(format!("unknown directive {other}"))),
                None => {}
            }
        }
        if version.is_none() {
            return Err(Error::Table { line: 0, message: "missing version line".into() });
        }
        let pairs = pairs
            .into_iter()
            .zip(ConfigCode::ALL)
            .map(|(p, c)| p.ok_or_else(|| Error::Table { line: 0, message: format!("no pairs for {}", c.ascii()) }))
            .collect::<Result<Vec<_>>>()?;
        let trees = trees
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                t.ok_or_else(|| Error::Table {
                    line: 0,
                    message: format!("no tree for cell {} {}", (i % SIDE) as i32 - RADIUS, (i / SIDE) as i32 - RADIUS),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(NeighborhoodTestTable { trees, pairs })
    }
}

fn parse_tree(text: &str) -> std::result::Result<TestTree, String> {
    let spaced = text.replace('(', " ( ").replace(')', " ) ");
    let tokens: Vec<&str> = spaced.split_whitespace().collect();
    let mut pos = 0;
    let tree = parse_node(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(format!("trailing tokens after tree: {}", tokens[pos..].join(" ")));
    }
    Ok(tree)
}

fn parse_node(tokens: &[&str], pos: &mut usize) -> std::result::Result<TestTree, String> {
    let tok = *tokens.get(*pos).ok_or("unexpected end of tree")?;
    *pos += 1;
    if tok == "(" {
        let inner = parse_node(tokens, pos)?;
        if tokens.get(*pos) != Some(&")") {
            return Err("missing ')'".into());
        }
        *pos += 1;
        return Ok(inner);
    }
    if let Some(test) = Test::parse(tok) {
        if tokens.get(*pos) != Some(&"?") {
            return Err(format!("expected '?' after {tok}"));
        }
        *pos += 1;
        let if_true = parse_node(tokens, pos)?;
        if tokens.get(*pos) != Some(&":") {
            return Err("expected ':'".into());
        }
        *pos += 1;
        let if_false = parse_node(tokens, pos)?;
        return Ok(TestTree::branch(test, if_true, if_false));
    }
    ConfigCode::parse_ascii(tok).map(TestTree::Leaf).ok_or_else(|| format!("unknown token {tok}"))
}
