use atam_core::Dir;

/// Sides in counterclockwise order, starting from south.
pub const CCW: [Dir; 4] = [Dir::S, Dir::E, Dir::N, Dir::W];

pub fn ccw_next(d: Dir) -> Dir {
    match d {
        Dir::S => Dir::E,
        Dir::E => Dir::N,
        Dir::N => Dir::W,
        Dir::W => Dir::S,
    }
}

pub fn ccw_prev(d: Dir) -> Dir {
    match d {
        Dir::S => Dir::W,
        Dir::E => Dir::S,
        Dir::N => Dir::E,
        Dir::W => Dir::N,
    }
}

/// Ends of a side, as seen from inside the supertile. A crawler runs along
/// each side from its left end to its right end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Left,
    Right,
}

impl End {
    pub const BOTH: [End; 2] = [End::Left, End::Right];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn other(self) -> End {
        match self {
            End::Left => End::Right,
            End::Right => End::Left,
        }
    }

    /// The side sharing this end's corner with `side`.
    pub fn neighbor(self, side: Dir) -> Dir {
        match self {
            End::Left => ccw_prev(side),
            End::Right => ccw_next(side),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Corner {
    NW,
    SW,
    SE,
    NE,
}

impl Corner {
    /// Highest precedence first.
    pub const PRECEDENCE: [Corner; 4] = [Corner::NW, Corner::SW, Corner::SE, Corner::NE];

    pub fn of(side: Dir, end: End) -> Corner {
        match (side, end) {
            (Dir::S, End::Left) | (Dir::W, End::Right) => Corner::SW,
            (Dir::S, End::Right) | (Dir::E, End::Left) => Corner::SE,
            (Dir::E, End::Right) | (Dir::N, End::Left) => Corner::NE,
            (Dir::N, End::Right) | (Dir::W, End::Left) => Corner::NW,
        }
    }

    /// `(side, end)` pairs meeting at this corner: the side whose right end it
    /// is comes first.
    pub fn sides(self) -> [(Dir, End); 2] {
        match self {
            Corner::SE => [(Dir::S, End::Right), (Dir::E, End::Left)],
            Corner::NE => [(Dir::E, End::Right), (Dir::N, End::Left)],
            Corner::NW => [(Dir::N, End::Right), (Dir::W, End::Left)],
            Corner::SW => [(Dir::W, End::Right), (Dir::S, End::Left)],
        }
    }

    /// Lower rank is higher precedence.
    pub fn rank(self) -> usize {
        self as usize
    }

    /// Image under a quarter turn counterclockwise.
    pub fn rotate(self) -> Corner {
        match self {
            Corner::SW => Corner::SE,
            Corner::SE => Corner::NE,
            Corner::NE => Corner::NW,
            Corner::NW => Corner::SW,
        }
    }
}
