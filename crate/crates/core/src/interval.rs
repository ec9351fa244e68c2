use std::fmt;

/// Open interval `(lo, hi)`; either endpoint may be infinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const REAL_LINE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };
    pub const POSITIVE: Interval = Interval {
        lo: 0.0,
        hi: f64::INFINITY,
    };

    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo < hi, "empty interval ({lo}, {hi})");
        Interval { lo, hi }
    }

    pub fn contains(&self, y: f64) -> bool {
        y > self.lo && y < self.hi
    }

    pub fn contains_closed(&self, y: f64) -> bool {
        y >= self.lo && y <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}
