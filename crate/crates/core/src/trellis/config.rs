//! The twenty label-pair configurations.
//!
//! A configuration names where feature B sits relative to feature A along
//! each axis. Per axis, B is either beyond reach (more than two label sizes
//! away), far (between one and two label sizes) or near (within one label
//! size), on the negative side (left, up) or the positive side (right, down).
//!
//! * `α`: some axis is beyond reach; no candidate pair conflicts.
//! * `β_d`: far on both axes; one pair conflicts.
//! * `γ_dk`: far on one axis, near on the other; three pairs conflict.
//! * `δ_d`: near on both axes; nine pairs conflict.
//!
//! `d` is the corner of A pointing toward B and `k` the other corner of A on
//! the far side.

use std::fmt;

use crate::model::Corner;

/// Which way B lies from A along one axis. `negative` means left (x) or up (y).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Zone {
    Beyond { negative: bool },
    Far { negative: bool },
    Near { negative: bool },
}

impl Zone {
    pub fn negative(self) -> bool {
        match self {
            Zone::Beyond { negative } | Zone::Far { negative } | Zone::Near { negative } => negative,
        }
    }

    /// A representative offset, in label sizes, from A to B inside this zone.
    pub fn witness(self) -> f64 {
        let (mag, negative) = match self {
            Zone::Beyond { negative } => (3.0, negative),
            Zone::Far { negative } => (1.5, negative),
            Zone::Near { negative } => (0.5, negative),
        };
        if negative {
            -mag
        } else {
            mag
        }
    }

    /// Bounds of the zone in label sizes, as an open interval.
    pub fn bounds(self) -> (f64, f64) {
        let (lo, hi) = match self {
            Zone::Beyond { .. } => (2.0, 4.0),
            Zone::Far { .. } => (1.0, 2.0),
            Zone::Near { .. } => (0.0, 1.0),
        };
        if self.negative() {
            (-hi, -lo)
        } else {
            (lo, hi)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConfigCode {
    /// 0 = beyond left, 1 = beyond up, 2 = beyond right, 3 = beyond down.
    Alpha(u8),
    Beta(Corner),
    Gamma(Corner, Corner),
    Delta(Corner),
}

impl ConfigCode {
    pub const ALL: [ConfigCode; 20] = {
        use ConfigCode::*;
        use Corner::*;
        [
            Alpha(0),
            Alpha(1),
            Alpha(2),
            Alpha(3),
            Beta(LowerLeft),
            Beta(UpperLeft),
            Beta(LowerRight),
            Beta(UpperRight),
            Gamma(LowerLeft, UpperLeft),
            Gamma(LowerLeft, LowerRight),
            Gamma(UpperLeft, LowerLeft),
            Gamma(UpperLeft, UpperRight),
            Gamma(LowerRight, LowerLeft),
            Gamma(LowerRight, UpperRight),
            Gamma(UpperRight, UpperLeft),
            Gamma(UpperRight, LowerRight),
            Delta(LowerLeft),
            Delta(UpperLeft),
            Delta(LowerRight),
            Delta(UpperRight),
        ]
    };

    /// Position of this code in [`ConfigCode::ALL`].
    pub fn ordinal(self) -> usize {
        match self {
            ConfigCode::Alpha(k) => k as usize,
            ConfigCode::Beta(d) => 4 + d.index() as usize,
            ConfigCode::Gamma(d, k) => {
                // Each primary corner has two secondaries, listed in index order.
                let second = usize::from(k.index() > other_secondary(d, k).index());
                8 + 2 * d.index() as usize + second
            }
            ConfigCode::Delta(d) => 16 + d.index() as usize,
        }
    }

    /// Code for B's placement given its x and y zones. When both axes are
    /// beyond reach the y axis names the code.
    pub fn from_zones(x: Zone, y: Zone) -> ConfigCode {
        let toward = Corner::from_sides(x.negative(), y.negative());
        match (x, y) {
            (_, Zone::Beyond { negative }) => ConfigCode::Alpha(if negative { 1 } else { 3 }),
            (Zone::Beyond { negative }, _) => ConfigCode::Alpha(if negative { 0 } else { 2 }),
            (Zone::Far { .. }, Zone::Far { .. }) => ConfigCode::Beta(toward),
            (Zone::Near { .. }, Zone::Near { .. }) => ConfigCode::Delta(toward),
            (Zone::Far { .. }, Zone::Near { .. }) => {
                ConfigCode::Gamma(toward, Corner::from_sides(x.negative(), !y.negative()))
            }
            (Zone::Near { .. }, Zone::Far { .. }) => {
                ConfigCode::Gamma(toward, Corner::from_sides(!x.negative(), y.negative()))
            }
        }
    }

    /// A zone pair that produces this code.
    pub fn zones(self) -> (Zone, Zone) {
        let side = |c: Corner| (c.is_left(), c.is_upper());
        match self {
            ConfigCode::Alpha(k) => {
                let negative = k < 2;
                let beyond = Zone::Beyond { negative };
                let near = Zone::Near { negative: true };
                if k % 2 == 0 {
                    (beyond, near)
                } else {
                    (near, beyond)
                }
            }
            ConfigCode::Beta(d) => {
                let (l, u) = side(d);
                (Zone::Far { negative: l }, Zone::Far { negative: u })
            }
            ConfigCode::Delta(d) => {
                let (l, u) = side(d);
                (Zone::Near { negative: l }, Zone::Near { negative: u })
            }
            ConfigCode::Gamma(d, k) => {
                let (l, u) = side(d);
                if d.is_left() == k.is_left() {
                    // Secondary flips y, so y is the near axis.
                    (Zone::Far { negative: l }, Zone::Near { negative: u })
                } else {
                    (Zone::Near { negative: l }, Zone::Far { negative: u })
                }
            }
        }
    }

    /// Short ASCII name used in the table file: `a0`, `b1`, `g13`, `d2`.
    pub fn ascii(self) -> String {
        match self {
            ConfigCode::Alpha(k) => format!("a{k}"),
            ConfigCode::Beta(d) => format!("b{}", d.index()),
            ConfigCode::Gamma(d, k) => format!("g{}{}", d.index(), k.index()),
            ConfigCode::Delta(d) => format!("d{}", d.index()),
        }
    }

    pub fn parse_ascii(s: &str) -> Option<ConfigCode> {
        let mut chars = s.chars();
        let family = chars.next()?;
        let digits: Vec<u8> = chars.map(|c| c.to_digit(10).map(|d| d as u8)).collect::<Option<_>>()?;
        let corner = |i: usize| digits.get(i).copied().and_then(Corner::from_index);
        let code = match (family, digits.len()) {
            ('a', 1) if digits[0] < 4 => ConfigCode::Alpha(digits[0]),
            ('b', 1) => ConfigCode::Beta(corner(0)?),
            ('d', 1) => ConfigCode::Delta(corner(0)?),
            ('g', 2) => ConfigCode::Gamma(corner(0)?, corner(1)?),
            _ => return None,
        };
        ConfigCode::ALL.contains(&code).then_some(code)
    }

    pub fn family(self) -> char {
        match self {
            ConfigCode::Alpha(_) => 'α',
            ConfigCode::Beta(_) => 'β',
            ConfigCode::Gamma(..) => 'γ',
            ConfigCode::Delta(_) => 'δ',
        }
    }
}

fn other_secondary(d: Corner, k: Corner) -> Corner {
    // The two secondaries of `d` flip x or flip y.
    let flip_x = Corner::from_sides(!d.is_left(), d.is_upper());
    let flip_y = Corner::from_sides(d.is_left(), !d.is_upper());
    if k == flip_x {
        flip_y
    } else {
        flip_x
    }
}

impl fmt::Display for ConfigCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ascii = self.ascii();
        write!(f, "{}{}", self.family(), &ascii[1..])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordinals_follow_all() {
        for (i, c) in ConfigCode::ALL.iter().enumerate() {
            assert_eq!(c.ordinal(), i, "{c}");
        }
    }

    #[test]
    fn ascii_round_trips() {
        for c in ConfigCode::ALL {
            assert_eq!(ConfigCode::parse_ascii(&c.ascii()), Some(c));
        }
        assert_eq!(ConfigCode::parse_ascii("g12"), None);
        assert_eq!(ConfigCode::parse_ascii("a4"), None);
        assert_eq!(ConfigCode::parse_ascii("x"), None);
    }

    #[test]
    fn zones_round_trip() {
        for c in ConfigCode::ALL {
            let (x, y) = c.zones();
            assert_eq!(ConfigCode::from_zones(x, y), c);
        }
    }

    #[test]
    fn greek_names() {
        assert_eq!(ConfigCode::Gamma(Corner::UpperLeft, Corner::UpperRight).to_string(), "γ13");
        assert_eq!(ConfigCode::Alpha(1).to_string(), "α1");
    }

    #[test]
    fn gamma_names_match_their_zones() {
        // B up and slightly left: primary upper-left, secondary upper-right.
        let c = ConfigCode::from_zones(Zone::Near { negative: true }, Zone::Far { negative: true });
        assert_eq!(c.ascii(), "g13");
        // B far left and slightly up: primary upper-left, secondary lower-left.
        let c = ConfigCode::from_zones(Zone::Far { negative: true }, Zone::Near { negative: true });
        assert_eq!(c.ascii(), "g10");
    }
}
