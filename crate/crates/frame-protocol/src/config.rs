use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use atam_core::Dir;

use crate::geometry::{ccw_next, Corner, End, CCW};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    Win,
    Lose,
}

/// Competition outcomes at a side's left and right ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SideWl {
    pub left: Outcome,
    pub right: Outcome,
}

impl SideWl {
    pub const WW: SideWl = SideWl { left: Outcome::Win, right: Outcome::Win };
    pub const WL: SideWl = SideWl { left: Outcome::Win, right: Outcome::Lose };
    pub const LW: SideWl = SideWl { left: Outcome::Lose, right: Outcome::Win };
    pub const LL: SideWl = SideWl { left: Outcome::Lose, right: Outcome::Lose };

    pub fn at(self, end: End) -> Outcome {
        match end {
            End::Left => self.left,
            End::Right => self.right,
        }
    }
}

impl fmt::Display for SideWl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |o: Outcome| if o == Outcome::Win { 'W' } else { 'L' };
        write!(f, "{}{}", c(self.left), c(self.right))
    }
}

/// Present sides with their win/lose pattern, indexed by [`Dir::index`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FrameConfig {
    pub sides: [Option<SideWl>; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CornerOutcome {
    pub corner: Corner,
    pub winner: Option<Dir>,
    pub loser: Option<Dir>,
}

impl FrameConfig {
    pub fn from_sides(sides: &[(Dir, SideWl)]) -> Self {
        let mut c = FrameConfig::default();
        for (d, wl) in sides {
            c.sides[d.index()] = Some(*wl);
        }
        c
    }

    pub fn get(&self, d: Dir) -> Option<SideWl> {
        self.sides[d.index()]
    }

    pub fn is_present(&self, d: Dir) -> bool {
        self.get(d).is_some()
    }

    pub fn present(&self) -> BTreeSet<Dir> {
        Dir::ALL.into_iter().filter(|d| self.is_present(*d)).collect()
    }

    pub fn corner_outcome(&self, corner: Corner) -> CornerOutcome {
        let [(a, ea), (b, eb)] = corner.sides();
        let side = |d: Dir, e: End| self.get(d).map(|wl| (d, wl.at(e)));
        let mut out = CornerOutcome { corner, winner: None, loser: None };
        for (d, o) in [side(a, ea), side(b, eb)].into_iter().flatten() {
            match o {
                Outcome::Win => out.winner = Some(d),
                Outcome::Lose => out.loser = Some(d),
            }
        }
        out
    }

    /// One winner at every corner shared by two present sides; every other
    /// end of a present side is a win.
    pub fn is_valid(&self) -> bool {
        if self.present().is_empty() {
            return false;
        }
        [Corner::NW, Corner::SW, Corner::SE, Corner::NE].into_iter().all(|c| {
            let [(a, _), (b, _)] = c.sides();
            let o = self.corner_outcome(c);
            if self.is_present(a) && self.is_present(b) {
                o.winner.is_some() && o.loser.is_some()
            } else {
                o.loser.is_none()
            }
        })
    }

    /// Quarter turn counterclockwise.
    pub fn rotate(&self) -> FrameConfig {
        let mut out = FrameConfig::default();
        for d in Dir::ALL {
            out.sides[ccw_next(d).index()] = self.get(d);
        }
        out
    }

    pub fn label(&self) -> String {
        CCW.iter()
            .filter_map(|d| self.get(*d).map(|wl| format!("{}:{}", d.letter(), wl)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Arrival permutation of the present sides plus a tie bit per shared
/// corner. With the bit clear the earlier arrival wins the corner; with it
/// set the later arrival does (both reached the corner together and the
/// later one placed its competition tile first).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ArrivalOrder {
    pub order: Vec<Dir>,
    pub ties: BTreeMap<Corner, bool>,
}

impl ArrivalOrder {
    pub fn new(order: Vec<Dir>) -> Self {
        ArrivalOrder { order, ties: BTreeMap::new() }
    }

    pub fn with_tie(mut self, corner: Corner, later_wins: bool) -> Self {
        self.ties.insert(corner, later_wins);
        self
    }
}

pub fn resolve_competitions(present: &BTreeSet<Dir>, order: &ArrivalOrder) -> FrameConfig {
    assert!(!present.is_empty(), "no sides present");
    let rank = |d: Dir| {
        order
            .order
            .iter()
            .position(|x| *x == d)
            .unwrap_or_else(|| panic!("side {d:?} missing from arrival order"))
    };
    let mut out = FrameConfig::default();
    for d in present {
        let mut wl = SideWl::WW;
        for end in End::BOTH {
            let nb = end.neighbor(*d);
            if !present.contains(&nb) {
                continue;
            }
            let corner = Corner::of(*d, end);
            let earlier = rank(*d) < rank(nb);
            let later_wins = order.ties.get(&corner).copied().unwrap_or(false);
            if earlier == later_wins {
                match end {
                    End::Left => wl.left = Outcome::Lose,
                    End::Right => wl.right = Outcome::Lose,
                }
            }
        }
        out.sides[d.index()] = Some(wl);
    }
    out
}

/// Every valid configuration: each nonempty subset of sides with every
/// choice of winner at each shared corner.
pub fn all_configs() -> Vec<FrameConfig> {
    let mut out = Vec::new();
    for mask in 1u8..16 {
        let present: BTreeSet<Dir> =
            Dir::ALL.into_iter().filter(|d| mask >> d.index() & 1 == 1).collect();
        let shared: Vec<Corner> = Corner::PRECEDENCE
            .into_iter()
            .filter(|c| c.sides().iter().all(|(d, _)| present.contains(d)))
            .collect();
        for bits in 0u32..(1 << shared.len()) {
            let mut cfg = FrameConfig::default();
            for d in &present {
                cfg.sides[d.index()] = Some(SideWl::WW);
            }
            for (i, c) in shared.iter().enumerate() {
                // bit set: the side whose right end this is loses
                let (d, e) = c.sides()[if bits >> i & 1 == 1 { 0 } else { 1 }];
                let wl = cfg.sides[d.index()].as_mut().expect("present");
                match e {
                    End::Left => wl.left = Outcome::Lose,
                    End::Right => wl.right = Outcome::Lose,
                }
            }
            out.push(cfg);
        }
    }
    out
}

/// One of the fourteen win/lose scenarios in its reference orientation,
/// with the corners its crawlers start from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Case {
    pub label: &'static str,
    pub config: FrameConfig,
    pub crawlers: Vec<Corner>,
}

pub fn reference_cases() -> Vec<Case> {
    use Dir::*;
    let (ww, wl, lw, ll) = (SideWl::WW, SideWl::WL, SideWl::LW, SideWl::LL);
    let case = |label, sides: &[(Dir, SideWl)], crawlers: &[Corner]| Case {
        label,
        config: FrameConfig::from_sides(sides),
        crawlers: crawlers.to_vec(),
    };
    vec![
        case("1.1", &[(S, ww)], &[]),
        case("2.1", &[(N, ww), (S, ww)], &[]),
        case("2.2", &[(S, lw), (W, ww)], &[Corner::SW]),
        case("2.3", &[(S, ww), (W, wl)], &[Corner::SW]),
        case("3.1", &[(W, ww), (S, lw), (N, wl)], &[Corner::NW, Corner::SW]),
        case("3.2", &[(S, ww), (N, wl), (W, wl)], &[Corner::NW, Corner::SW]),
        case("3.3", &[(N, ww), (S, lw), (W, lw)], &[Corner::NW]),
        case("3.4", &[(N, ww), (S, ww), (W, ll)], &[Corner::NW]),
        case("4.1", &[(S, ll), (E, ww), (N, ll), (W, ww)], &[Corner::SW, Corner::NE]),
        case("4.2", &[(S, ll), (E, wl), (N, wl), (W, ww)], &[Corner::NE, Corner::NW]),
        case("4.3", &[(S, lw), (E, lw), (N, ll), (W, ww)], &[Corner::SW]),
        case("4.4", &[(S, lw), (E, ll), (N, wl), (W, ww)], &[Corner::NW, Corner::SW]),
        case("4.5", &[(S, wl), (E, wl), (N, wl), (W, wl)], &[Corner::NW]),
        case("4.6", &[(S, lw), (E, lw), (N, lw), (W, lw)], &[Corner::NW]),
    ]
}

/// Case label and number of counterclockwise quarter turns taking the
/// reference orientation to `config`. 4.5 and 4.6 only match unrotated
/// since every rotation of them is the same configuration.
pub fn classify(config: &FrameConfig) -> Option<(&'static str, u8)> {
    for case in reference_cases() {
        let mut c = case.config;
        for k in 0..4u8 {
            if c == *config {
                return Some((case.label, k));
            }
            c = c.rotate();
        }
    }
    None
}
