use std::collections::{BTreeMap, BTreeSet, HashSet};

use atam_core::Dir;

use crate::config::{resolve_competitions, ArrivalOrder, FrameConfig, Outcome, SideWl};
use crate::geometry::End;
use crate::FrameError;

/// Win/lose facts a frame has gathered about sides of its supertile.
pub type Knowledge = BTreeMap<Dir, SideWl>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Wai {
    #[default]
    None,
    /// Started here (west only).
    Sent,
    /// Arrived at a losing end.
    Received,
    /// Forwarded out of the winning end.
    Passed,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FrameSideState {
    pub side: Dir,
    pub present: bool,
    pub wl: [Option<Outcome>; 2],
    pub layer1: [bool; 2],
    pub layer2: [bool; 2],
    /// West took the fast path on its losing end.
    pub fast: bool,
    /// The layer-2 half at this end grew from a WAI signal.
    pub layer2_wai: Option<End>,
    pub middle2: bool,
    pub layer3: [bool; 2],
    pub middle3: bool,
    pub layer4: [bool; 2],
    pub knowledge: Knowledge,
    pub wai: Wai,
    /// WAI signals that reached each end.
    pub wai_in: [Option<Knowledge>; 2],
    /// WAI signal waiting at the winning end to be picked up by the neighbour.
    pub wai_out: Option<Knowledge>,
}

impl FrameSideState {
    fn new(side: Dir, present: bool) -> Self {
        FrameSideState {
            side,
            present,
            wl: [None; 2],
            layer1: [false; 2],
            layer2: [false; 2],
            fast: false,
            layer2_wai: None,
            middle2: false,
            layer3: [false; 2],
            middle3: false,
            layer4: [false; 2],
            knowledge: Knowledge::new(),
            wai: Wai::None,
            wai_in: [None, None],
            wai_out: None,
        }
    }

    pub fn side_wl(&self) -> Option<SideWl> {
        Some(SideWl { left: self.wl[0]?, right: self.wl[1]? })
    }

    pub fn is_complete(&self) -> bool {
        self.layer4 == [true, true]
    }

    fn won(&self, end: End) -> bool {
        self.wl[end.index()] == Some(Outcome::Win)
    }

    /// The single winning end of a WL or LW side.
    fn win_end(&self) -> Option<End> {
        match self.side_wl()? {
            SideWl::WL => Some(End::Left),
            SideWl::LW => Some(End::Right),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FrameEvent {
    PlaceCompetitionTile { side: Dir, end: End },
    GrowHalf { layer: u8, side: Dir, end: End },
    PlaceMiddle { layer: u8, side: Dir },
    /// West's fast losing half: grows without waiting and starts a WAI signal.
    EmitWai { side: Dir },
    /// A WAI signal crosses the corner at `end` of `side`.
    ReceiveWai { side: Dir, end: End },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FrameState {
    pub sides: [FrameSideState; 4],
}

impl FrameState {
    pub fn new(present: &BTreeSet<Dir>) -> Self {
        FrameState { sides: Dir::ALL.map(|d| FrameSideState::new(d, present.contains(&d))) }
    }

    pub fn side(&self, d: Dir) -> &FrameSideState {
        &self.sides[d.index()]
    }

    fn side_mut(&mut self, d: Dir) -> &mut FrameSideState {
        &mut self.sides[d.index()]
    }

    /// The neighbour at `end` of `d` has finished layer 4 on the shared end.
    fn neighbor_complete(&self, d: Dir, end: End) -> bool {
        let nb = self.side(end.neighbor(d));
        nb.present && nb.layer4[end.other().index()]
    }

    pub fn config(&self) -> Option<FrameConfig> {
        let mut out = FrameConfig::default();
        for s in self.sides.iter().filter(|s| s.present) {
            out.sides[s.side.index()] = Some(s.side_wl()?);
        }
        Some(out)
    }

    pub fn knowledge(&self) -> [Knowledge; 4] {
        self.sides.clone().map(|s| s.knowledge)
    }

    pub fn incomplete(&self) -> Vec<Dir> {
        self.sides.iter().filter(|s| s.present && !s.is_complete()).map(|s| s.side).collect()
    }

    pub fn is_enabled(&self, ev: FrameEvent) -> bool {
        let side = match ev {
            FrameEvent::PlaceCompetitionTile { side, .. }
            | FrameEvent::GrowHalf { side, .. }
            | FrameEvent::PlaceMiddle { side, .. }
            | FrameEvent::EmitWai { side }
            | FrameEvent::ReceiveWai { side, .. } => side,
        };
        let s = self.side(side);
        if !s.present {
            return false;
        }
        match ev {
            FrameEvent::PlaceCompetitionTile { end, .. } => s.wl[end.index()].is_none(),
            FrameEvent::GrowHalf { layer: 1, end, .. } => {
                s.wl[end.index()].is_some() && !s.layer1[end.index()]
            }
            FrameEvent::GrowHalf { layer: 2, end, .. } => {
                let i = end.index();
                if s.layer2[i] || !s.layer1[i] {
                    return false;
                }
                if s.won(end) {
                    return true;
                }
                // West only ever waits for completed neighbours here; its
                // WAI-driven path is EmitWai.
                self.neighbor_complete(side, end) || (side != Dir::W && s.wai_in[i].is_some())
            }
            FrameEvent::EmitWai { .. } => {
                let Some(w) = s.win_end() else { return false };
                let l = w.other().index();
                side == Dir::W && s.layer1[l] && !s.layer2[l]
            }
            FrameEvent::PlaceMiddle { layer: 2, .. } => s.layer2 == [true, true] && !s.middle2,
            FrameEvent::GrowHalf { layer: 3, end, .. } => {
                s.middle2 && !s.layer3[end.index()] && self.layer3_ready(side, end)
            }
            FrameEvent::PlaceMiddle { layer: 3, .. } => s.layer3 == [true, true] && !s.middle3,
            FrameEvent::GrowHalf { layer: 4, end, .. } => s.middle3 && !s.layer4[end.index()],
            FrameEvent::ReceiveWai { end, .. } => {
                let sender = self.side(end.neighbor(side));
                sender.present
                    && sender.wai_out.is_some()
                    && sender.win_end() == Some(end.other())
                    && s.wai_in[end.index()].is_none()
            }
            _ => false,
        }
    }

    fn layer3_ready(&self, side: Dir, end: End) -> bool {
        let s = self.side(side);
        let wl = s.side_wl().expect("middle placed");
        if wl == SideWl::WW {
            return true;
        }
        if side == Dir::W {
            if wl == SideWl::LL {
                return self.neighbor_complete(side, end);
            }
            if s.fast && !s.won(end) {
                return s.wai_in[end.index()].is_some() || self.neighbor_complete(side, end);
            }
            return true;
        }
        match s.layer2_wai {
            Some(x) if x == end => self.neighbor_complete(side, end),
            _ => true,
        }
    }

    pub fn enabled(&self) -> Vec<FrameEvent> {
        let mut out = Vec::new();
        for d in Dir::ALL {
            for end in End::BOTH {
                out.push(FrameEvent::PlaceCompetitionTile { side: d, end });
                out.push(FrameEvent::ReceiveWai { side: d, end });
                for layer in 1..=4 {
                    out.push(FrameEvent::GrowHalf { layer, side: d, end });
                }
            }
            out.push(FrameEvent::EmitWai { side: d });
            out.push(FrameEvent::PlaceMiddle { layer: 2, side: d });
            out.push(FrameEvent::PlaceMiddle { layer: 3, side: d });
        }
        out.retain(|e| self.is_enabled(*e));
        out
    }

    fn merge_from_neighbor(&mut self, side: Dir, end: End) {
        let k = self.side(end.neighbor(side)).knowledge.clone();
        self.side_mut(side).knowledge.extend(k);
    }

    /// One atomic step of frame growth.
    pub fn step(&mut self, ev: FrameEvent) -> Result<(), FrameError> {
        if !self.is_enabled(ev) {
            return Err(FrameError::NotEnabled(ev));
        }
        match ev {
            FrameEvent::PlaceCompetitionTile { side, end } => {
                let nb = self.side(end.neighbor(side));
                let lost = nb.present && nb.wl[end.other().index()].is_some();
                self.side_mut(side).wl[end.index()] =
                    Some(if lost { Outcome::Lose } else { Outcome::Win });
            }
            FrameEvent::GrowHalf { layer: 1, side, end } => {
                self.side_mut(side).layer1[end.index()] = true;
            }
            FrameEvent::GrowHalf { layer: 2, side, end } => {
                let i = end.index();
                if !self.side(side).won(end) {
                    if self.neighbor_complete(side, end) {
                        self.merge_from_neighbor(side, end);
                    } else {
                        let s = self.side_mut(side);
                        let k = s.wai_in[i].clone().expect("enabled by WAI");
                        s.knowledge.extend(k);
                        s.layer2_wai = Some(end);
                        s.wai = Wai::Received;
                    }
                }
                self.side_mut(side).layer2[i] = true;
            }
            FrameEvent::EmitWai { side } => {
                let s = self.side_mut(side);
                let l = s.win_end().expect("one losing end").other();
                s.layer2[l.index()] = true;
                s.fast = true;
                s.wai = Wai::Sent;
            }
            FrameEvent::PlaceMiddle { layer: 2, side } => {
                let s = self.side_mut(side);
                let wl = s.side_wl().expect("both ends decided");
                s.knowledge.insert(side, wl);
                s.middle2 = true;
            }
            FrameEvent::GrowHalf { layer: 3, side, end } => {
                let i = end.index();
                let s = self.side(side);
                let carries_wai = s.win_end() == Some(end)
                    && ((side == Dir::W && s.fast) || (side != Dir::W && s.layer2_wai.is_some()));
                if !s.won(end) {
                    if side == Dir::W && s.fast && !self.neighbor_complete(side, end) {
                        let k = s.wai_in[i].clone().expect("enabled by returning WAI");
                        self.side_mut(side).knowledge.extend(k);
                        self.side_mut(side).wai = Wai::Received;
                    } else if self.neighbor_complete(side, end) {
                        self.merge_from_neighbor(side, end);
                    }
                }
                let s = self.side_mut(side);
                if carries_wai {
                    s.wai_out = Some(s.knowledge.clone());
                    if side != Dir::W {
                        s.wai = Wai::Passed;
                    }
                }
                s.layer3[i] = true;
            }
            FrameEvent::PlaceMiddle { layer: 3, side } => {
                self.side_mut(side).middle3 = true;
            }
            FrameEvent::GrowHalf { layer: 4, side, end } => {
                self.side_mut(side).layer4[end.index()] = true;
            }
            FrameEvent::ReceiveWai { side, end } => {
                let sender = end.neighbor(side);
                let k = self.side_mut(sender).wai_out.take().expect("enabled");
                self.side_mut(side).wai_in[end.index()] = Some(k);
            }
            _ => unreachable!("enabled events are covered"),
        }
        Ok(())
    }

    /// One line per present side for traces.
    pub fn dump(&self) -> String {
        let bits = |b: [bool; 2]| format!("{}{}", b[0] as u8, b[1] as u8);
        let mut out = String::new();
        for s in self.sides.iter().filter(|s| s.present) {
            let wl = s.side_wl().map(|w| w.to_string()).unwrap_or_else(|| "??".into());
            let knows: Vec<String> =
                s.knowledge.iter().map(|(d, w)| format!("{}:{}", d.letter(), w)).collect();
            out.push_str(&format!(
                "{} {} L1={} L2={} M2={} L3={} M3={} L4={} wai={:?} knows={}\n",
                s.side.letter(),
                wl,
                bits(s.layer1),
                bits(s.layer2),
                s.middle2 as u8,
                bits(s.layer3),
                s.middle3 as u8,
                bits(s.layer4),
                s.wai,
                knows.join(",")
            ));
        }
        out
    }
}

/// Places competition tiles so that `order` decides every shared corner,
/// then runs the remaining events in a fixed order until nothing is enabled.
pub fn frame_fixpoint(
    present: &BTreeSet<Dir>,
    order: &ArrivalOrder,
) -> Result<(FrameConfig, [Knowledge; 4]), FrameError> {
    let target = resolve_competitions(present, order);
    let mut state = FrameState::new(present);
    // winners first, then losers
    for pass in [Outcome::Win, Outcome::Lose] {
        for d in present {
            let wl = target.get(*d).expect("present");
            for end in End::BOTH {
                if wl.at(end) == pass {
                    state.step(FrameEvent::PlaceCompetitionTile { side: *d, end })?;
                }
            }
        }
    }
    while let Some(ev) = state.enabled().first().copied() {
        state.step(ev)?;
    }
    finish(&state)
}

fn finish(state: &FrameState) -> Result<(FrameConfig, [Knowledge; 4]), FrameError> {
    let incomplete = state.incomplete();
    if !incomplete.is_empty() {
        return Err(FrameError::Deadlock(incomplete));
    }
    Ok((state.config().expect("all ends decided"), state.knowledge()))
}

/// Every interleaving of frame events for one set of present sides.
#[derive(Debug, Default)]
pub struct Exploration {
    pub states: usize,
    /// Distinct quiescent states.
    pub terminals: Vec<FrameState>,
}

pub fn explore_frames(present: &BTreeSet<Dir>) -> Exploration {
    let start = FrameState::new(present);
    let mut seen: HashSet<FrameState> = HashSet::from([start.clone()]);
    let mut stack = vec![start];
    let mut out = Exploration::default();
    while let Some(s) = stack.pop() {
        out.states += 1;
        let evs = s.enabled();
        if evs.is_empty() {
            out.terminals.push(s);
            continue;
        }
        for ev in evs {
            let mut t = s.clone();
            t.step(ev).expect("enabled");
            if seen.insert(t.clone()) {
                stack.push(t);
            }
        }
    }
    out
}
