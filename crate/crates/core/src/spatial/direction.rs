use std::fmt;

use serde::{Deserialize, Serialize};

/// Bearings are stored on a grid of 2^-30 degree (about 1e-9 degree). Every
/// grid value below 720 is exact in an f64 with bits to spare, so adding or
/// removing a half turn never rounds and sector boundaries can be compared
/// with integer arithmetic.
const UNITS_PER_DEGREE: i64 = 1 << 30;
const FULL_TURN: i64 = 360 * UNITS_PER_DEGREE;

/// Compass bearing in degrees clockwise from north, `0 <= degrees < 360`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Bearing(f64);

impl Bearing {
    pub fn from_degrees(degrees: f64) -> Bearing {
        let d = degrees.rem_euclid(360.0);
        let units = (d * UNITS_PER_DEGREE as f64).round() as i64;
        Bearing::from_units(units)
    }

    fn from_units(units: i64) -> Bearing {
        Bearing(units.rem_euclid(FULL_TURN) as f64 / UNITS_PER_DEGREE as f64)
    }

    fn units(self) -> i64 {
        (self.0 * UNITS_PER_DEGREE as f64) as i64
    }

    pub fn degrees(self) -> f64 {
        self.0
    }

    /// The reverse direction. Exact: `b.opposite().opposite() == b`.
    pub fn opposite(self) -> Bearing {
        Bearing::from_units(self.units() + 180 * UNITS_PER_DEGREE)
    }

    /// Folds the bearing onto `[0, 180)`, for undirected axes.
    pub fn axis(self) -> Bearing {
        Bearing::from_units(self.units().rem_euclid(180 * UNITS_PER_DEGREE))
    }
}

/// Index of the half-open sector of width `sector` degrees centered on
/// multiples of `sector`. Bearings exactly on a boundary go clockwise.
fn sector_index(b: Bearing, sector_half_units: i64) -> i64 {
    (b.units() + sector_half_units) / (2 * sector_half_units)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClockResolution {
    Hour,
    HalfHour,
}

/// A clock-face direction, 12 o'clock being north.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClockPhrase {
    pub hour: u8,
    pub half: bool,
}

impl fmt::Display for ClockPhrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.half {
            write!(f, "{}:30 o'clock", self.hour)
        } else {
            write!(f, "{} o'clock", self.hour)
        }
    }
}

pub fn quantize_clock(b: Bearing, resolution: ClockResolution) -> ClockPhrase {
    let hour_of = |k: i64| if k == 0 { 12 } else { k as u8 };
    match resolution {
        ClockResolution::Hour => {
            let k = sector_index(b, 15 * UNITS_PER_DEGREE) % 12;
            ClockPhrase {
                hour: hour_of(k),
                half: false,
            }
        }
        ClockResolution::HalfHour => {
            let k = sector_index(b, 15 * UNITS_PER_DEGREE / 2) % 24;
            ClockPhrase {
                hour: hour_of(k / 2),
                half: k % 2 == 1,
            }
        }
    }
}

/// The eight compass directions, clockwise from north.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cardinal {
    North,
    Northeast,
    East,
    Southeast,
    South,
    Southwest,
    West,
    Northwest,
}

impl Cardinal {
    pub const ALL: [Cardinal; 8] = [
        Cardinal::North,
        Cardinal::Northeast,
        Cardinal::East,
        Cardinal::Southeast,
        Cardinal::South,
        Cardinal::Southwest,
        Cardinal::West,
        Cardinal::Northwest,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Cardinal {
        Cardinal::ALL[i % 8]
    }

    pub fn opposite(self) -> Cardinal {
        Cardinal::from_index(self.index() + 4)
    }

    pub fn word(self) -> &'static str {
        match self {
            Cardinal::North => "north",
            Cardinal::Northeast => "northeast",
            Cardinal::East => "east",
            Cardinal::Southeast => "southeast",
            Cardinal::South => "south",
            Cardinal::Southwest => "southwest",
            Cardinal::West => "west",
            Cardinal::Northwest => "northwest",
        }
    }

    /// Typed command token: n, ne, e, ...
    pub fn token(self) -> &'static str {
        match self {
            Cardinal::North => "n",
            Cardinal::Northeast => "ne",
            Cardinal::East => "e",
            Cardinal::Southeast => "se",
            Cardinal::South => "s",
            Cardinal::Southwest => "sw",
            Cardinal::West => "w",
            Cardinal::Northwest => "nw",
        }
    }

    pub fn from_token(token: &str) -> Option<Cardinal> {
        Cardinal::ALL
            .into_iter()
            .find(|c| c.token() == token || c.word() == token)
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.word())
    }
}

pub fn quantize_cardinal(b: Bearing) -> Cardinal {
    Cardinal::from_index(sector_index(b, 45 * UNITS_PER_DEGREE / 2) as usize)
}
