use std::collections::BTreeMap;
use std::fmt;

use atam_core::{Dir, GlueId, TileId};
use frame_protocol::{ccw_next, ccw_prev, initiation_rule, Corner, End, FrameConfig, Outcome, SideWl};
use iu_tables::lookup;

use crate::ctx::Ctx;

/// What one side of a supertile currently holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SideState {
    Absent,
    /// A neighbour's output superside carrying this glue.
    Input(GlueId),
    /// This supertile's own output superside.
    Output,
}

/// 0 for the north/south axis, 1 for east/west.
pub fn axis(d: Dir) -> usize {
    match d {
        Dir::N | Dir::S => 0,
        Dir::E | Dir::W => 1,
    }
}

fn axis_sides(a: usize) -> [Dir; 2] {
    if a == 0 {
        [Dir::N, Dir::S]
    } else {
        [Dir::E, Dir::W]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Origin {
    Corner(Corner),
    /// Started by the strength-τ probe of this side.
    TauProbe(Dir),
    /// Started by a probe meeting; it only visits `side`.
    Pair { axis: usize, side: Dir },
}

impl Origin {
    /// Precedence rank among ring crawlers. Pair crawlers have none.
    pub fn rank(self) -> Option<usize> {
        match self {
            Origin::Corner(c) => Some(c.rank()),
            Origin::TauProbe(d) => Some(Corner::of(d, End::Right).rank()),
            Origin::Pair { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CrawlerState {
    Unfilled,
    Full,
    Output,
    Dead,
}

/// Where a crawler's random number comes from. Crawlers sharing a source
/// share the chosen entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Source {
    Own(usize),
    Probe(Dir),
    Axis(usize),
}

impl Source {
    fn is_probe(self) -> bool {
        !matches!(self, Source::Own(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Crawler {
    pub origin: Origin,
    pub state: CrawlerState,
    pub collected: [Option<GlueId>; 4],
    pub entries: Vec<TileId>,
    pub chosen: Option<TileId>,
    /// Sides still to visit, next first.
    pub path: Vec<Dir>,
    pub source: Source,
    /// Index of the parked crawler this one rides on.
    pub riding: Option<usize>,
    /// Output crawler that has finished its path or halted.
    pub done: bool,
}

impl Crawler {
    pub fn live(&self) -> bool {
        matches!(self.state, CrawlerState::Unfilled | CrawlerState::Full)
    }
}

/// Probes grown from a WW side.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Probe {
    Tau,
    Glue(Vec<u16>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SiteEvent {
    /// A pending neighbour output reaches this side (single-site runs only).
    Arrive(Dir),
    ClaimCorner(Corner, Dir),
    GrowProbes(Dir),
    /// The τ probe of this side reaches the center of its axis.
    TauCenter(Dir),
    GlueMeet(usize),
    Step(usize),
    /// Crawler claims its current side and emits an output superside. `choice`
    /// is the random number when the crawler picks its tile here.
    Claim { crawler: usize, choice: Option<u32> },
    /// Crawler outputs without emitting (all its remaining sides are inputs).
    Record { crawler: usize, choice: Option<u32> },
}

impl SiteEvent {
    /// Events that change what the site represents or what its neighbours see.
    pub fn is_visible(&self) -> bool {
        matches!(self, SiteEvent::Claim { .. } | SiteEvent::Record { .. })
    }

    pub fn with_choice(self, e: u32) -> SiteEvent {
        match self {
            SiteEvent::Claim { crawler, .. } => SiteEvent::Claim { crawler, choice: Some(e) },
            SiteEvent::Record { crawler, .. } => SiteEvent::Record { crawler, choice: Some(e) },
            other => other,
        }
    }
}

impl fmt::Display for SiteEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SiteEvent::Arrive(d) => write!(f, "arrive {}", d.letter()),
            SiteEvent::ClaimCorner(c, d) => write!(f, "corner {:?} by {}", c, d.letter()),
            SiteEvent::GrowProbes(d) => write!(f, "probes {}", d.letter()),
            SiteEvent::TauCenter(d) => write!(f, "tau-center {}", d.letter()),
            SiteEvent::GlueMeet(a) => write!(f, "glue-meet {}", if *a == 0 { "NS" } else { "EW" }),
            SiteEvent::Step(i) => write!(f, "step c{i}"),
            SiteEvent::Claim { crawler, choice } => match choice {
                Some(e) => write!(f, "claim c{crawler} e{e}"),
                None => write!(f, "claim c{crawler}"),
            },
            SiteEvent::Record { crawler, choice } => match choice {
                Some(e) => write!(f, "record c{crawler} e{e}"),
                None => write!(f, "record c{crawler}"),
            },
        }
    }
}

/// Result of applying an event.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Effect {
    /// Output superside emitted on this side with this glue.
    pub emitted: Option<(Dir, GlueId)>,
    /// Tile represented after the event, if it changed.
    pub resolved: Option<TileId>,
    pub note: String,
}

/// Protocol state of one supertile position.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Site {
    pub sides: [SideState; 4],
    /// Winner of each corner competition, indexed by [`Corner::rank`].
    pub corners: [Option<Dir>; 4],
    pub initiated: [bool; 4],
    pub probes: [Option<Probe>; 4],
    pub tau_fired: [bool; 4],
    /// Side whose τ probe took the axis center.
    pub centers: [Option<Dir>; 2],
    pub met: [bool; 2],
    pub crawlers: Vec<Crawler>,
    pub draws: BTreeMap<Source, u32>,
    pub resolved: Option<TileId>,
    pub seed: bool,
    /// Neighbour outputs that will still arrive (single-site runs only).
    pub pending: [Option<GlueId>; 4],
    /// Set if two outputs ever disagreed on the tile.
    pub conflict: bool,
    /// Settled for good: internal detail has been dropped.
    pub frozen: bool,
}

impl Default for Site {
    fn default() -> Self {
        Site {
            sides: [SideState::Absent; 4],
            corners: [None; 4],
            initiated: [false; 4],
            probes: Default::default(),
            tau_fired: [false; 4],
            centers: [None; 2],
            met: [false; 2],
            crawlers: vec![],
            draws: BTreeMap::new(),
            resolved: None,
            seed: false,
            pending: [None; 4],
            conflict: false,
            frozen: false,
        }
    }
}

impl Site {
    pub fn seed_site(tile: TileId) -> Site {
        Site { sides: [SideState::Output; 4], resolved: Some(tile), seed: true, ..Site::default() }
    }

    /// Canonical form of a site that can never change again: every side is
    /// taken and nothing is enabled. Sites that break an invariant are kept
    /// as they are.
    pub fn freeze(&self, ctx: &Ctx) -> Option<Site> {
        if self.seed
            || self.frozen
            || self.conflict
            || self.outputs() > 2
            || !meetings_sound(self, ctx)
            || self.sides.contains(&SideState::Absent)
            || !self.enabled(ctx).is_empty()
        {
            return None;
        }
        Some(Site { sides: [SideState::Output; 4], resolved: self.resolved, frozen: true, ..Site::default() })
    }

    pub fn input(&self, d: Dir) -> Option<GlueId> {
        match self.sides[d.index()] {
            SideState::Input(g) => Some(g),
            _ => None,
        }
    }

    pub fn inputs(&self) -> [Option<GlueId>; 4] {
        Dir::ALL.map(|d| self.input(d))
    }

    pub fn corner_winner(&self, c: Corner) -> Option<Dir> {
        self.corners[c.rank()]
    }

    /// Both corners of an input side have been decided.
    pub fn side_settled(&self, d: Dir) -> bool {
        self.input(d).is_some() && End::BOTH.iter().all(|&e| self.corner_winner(Corner::of(d, e)).is_some())
    }

    pub fn settled(&self) -> bool {
        Dir::ALL.iter().all(|&d| self.input(d).is_none() || self.side_settled(d))
    }

    pub fn wl(&self, d: Dir) -> Option<SideWl> {
        if !self.side_settled(d) {
            return None;
        }
        let at = |e: End| {
            if self.corner_winner(Corner::of(d, e)) == Some(d) {
                Outcome::Win
            } else {
                Outcome::Lose
            }
        };
        Some(SideWl { left: at(End::Left), right: at(End::Right) })
    }

    /// Frame configuration of the settled input sides.
    pub fn config(&self) -> FrameConfig {
        FrameConfig { sides: Dir::ALL.map(|d| self.wl(d)) }
    }

    fn ww(&self, d: Dir) -> bool {
        self.wl(d) == Some(SideWl::WW)
    }

    pub fn tau_side(&self, ctx: &Ctx, d: Dir) -> bool {
        self.ww(d) && self.input(d).is_some_and(|g| ctx.tau_probe(d, g))
    }

    /// Both sides of the axis are settled WW sides whose probes will meet.
    pub fn meeting_predicted(&self, ctx: &Ctx, a: usize) -> bool {
        let [x, y] = axis_sides(a);
        match (self.input(x), self.input(y)) {
            (Some(gx), Some(gy)) => self.ww(x) && self.ww(y) && ctx.probes_meet(x, gx, gy),
            _ => false,
        }
    }

    /// A ring crawler crossing this side dies there: its probes will meet the
    /// opposite side's, or it grows a strength-τ probe.
    fn kills(&self, ctx: &Ctx, d: Dir) -> bool {
        self.ww(d) && (self.meeting_predicted(ctx, axis(d)) || self.tau_side(ctx, d))
    }

    pub fn outputs(&self) -> usize {
        self.crawlers.iter().filter(|c| c.state == CrawlerState::Output).count()
    }

    pub fn meeting_happened(&self) -> bool {
        self.met.iter().any(|&m| m)
    }

    /// Random numbers a crawler may draw when it first outputs, one per
    /// distinct entry.
    pub fn choices(&self, ctx: &Ctx, i: usize) -> Vec<u32> {
        let c = &self.crawlers[i];
        if c.chosen.is_some() {
            return vec![];
        }
        if let Some(&e) = self.draws.get(&c.source) {
            return vec![e];
        }
        let n = c.entries.len() as u32;
        let mut out: Vec<u32> = if c.source.is_probe() {
            (0..ctx.probe_range()).map(|r| r % n).collect()
        } else {
            (0..n).collect()
        };
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Whether the event needs a random number to be applied.
    pub fn needs_choice(&self, ev: &SiteEvent) -> bool {
        match *ev {
            SiteEvent::Claim { crawler, choice: None } | SiteEvent::Record { crawler, choice: None } => {
                self.crawlers[crawler].chosen.is_none()
            }
            _ => false,
        }
    }

    /// Would this ring crawler reach the end of its path full, with every side
    /// present?
    fn predicted_survivor(&self, ctx: &Ctx, c: &Crawler) -> bool {
        if !c.live() || c.origin.rank().is_none() {
            return false;
        }
        let mut full = c.state == CrawlerState::Full;
        let mut collected = c.collected;
        for &s in &c.path {
            let Some(g) = self.input(s) else { return false };
            if self.kills(ctx, s) {
                return false;
            }
            if !full {
                collected[s.index()] = Some(g);
                full = !ctx.entries(collected).is_empty();
            }
        }
        full
    }

    fn outranked(&self, ctx: &Ctx, i: usize) -> bool {
        let rank = self.crawlers[i].origin.rank().unwrap_or(usize::MAX);
        self.crawlers.iter().enumerate().any(|(j, other)| {
            j != i && other.origin.rank().is_some_and(|r| r < rank) && self.predicted_survivor(ctx, other)
        })
    }

    /// The crawler is a τ crawler facing the strength-τ side across its axis:
    /// the two probes meet and it outputs on behalf of the pair.
    fn tau_pair_member(&self, ctx: &Ctx, c: &Crawler, s: Dir) -> bool {
        matches!(c.origin, Origin::TauProbe(p) if p.opposite() == s) && self.tau_side(ctx, s)
    }

    /// The crawler it rides on is still parked in front of it.
    fn blocked_by_rider(&self, c: &Crawler) -> bool {
        c.riding.is_some_and(|j| {
            let below = &self.crawlers[j];
            below.state == CrawlerState::Unfilled && below.path.first() == c.path.first()
        })
    }

    fn crawler_event(&self, ctx: &Ctx, i: usize) -> Option<SiteEvent> {
        let c = &self.crawlers[i];
        if c.state == CrawlerState::Dead || c.done {
            return None;
        }
        let claim = SiteEvent::Claim { crawler: i, choice: None };
        let record = SiteEvent::Record { crawler: i, choice: None };
        if let Origin::Pair { side, .. } = c.origin {
            return Some(match self.sides[side.index()] {
                SideState::Absent => claim,
                SideState::Input(_) => record,
                SideState::Output => SiteEvent::Step(i),
            });
        }
        let Some(&s) = c.path.first() else {
            return Some(match c.state {
                CrawlerState::Full if self.outputs() == 0 && !self.outranked(ctx, i) => record,
                _ => SiteEvent::Step(i),
            });
        };
        if c.riding.is_some() && self.blocked_by_rider(c) && self.input(s).is_some() {
            return None;
        }
        match self.sides[s.index()] {
            SideState::Input(_) if !self.side_settled(s) => None,
            SideState::Input(_) => {
                if c.state == CrawlerState::Full && self.tau_pair_member(ctx, c, s) {
                    Some(record)
                } else {
                    Some(SiteEvent::Step(i))
                }
            }
            SideState::Absent => match c.state {
                CrawlerState::Unfilled => self.rider_target(i).map(|_| SiteEvent::Step(i)),
                _ => Some(claim),
            },
            SideState::Output => Some(SiteEvent::Step(i)),
        }
    }

    /// An unfilled crawler parked at an absent side may climb onto another
    /// unfilled crawler parked at the same side.
    fn rider_target(&self, i: usize) -> Option<usize> {
        let c = &self.crawlers[i];
        if c.riding.is_some() {
            return None;
        }
        let s = c.path.first()?;
        self.crawlers.iter().position(|o| {
            o.state == CrawlerState::Unfilled && o.riding.is_none() && o.path.first() == Some(s)
        }).filter(|&j| j < i)
    }

    pub fn enabled(&self, ctx: &Ctx) -> Vec<SiteEvent> {
        let mut out = vec![];
        if self.seed || self.frozen {
            return out;
        }
        for d in Dir::ALL {
            if self.pending[d.index()].is_some() && self.sides[d.index()] == SideState::Absent {
                out.push(SiteEvent::Arrive(d));
            }
        }
        for d in Dir::ALL {
            if self.input(d).is_none() {
                continue;
            }
            for e in End::BOTH {
                let c = Corner::of(d, e);
                if self.corner_winner(c).is_none() {
                    out.push(SiteEvent::ClaimCorner(c, d));
                }
            }
            if self.ww(d) && self.probes[d.index()].is_none() {
                out.push(SiteEvent::GrowProbes(d));
            }
            if self.probes[d.index()] == Some(Probe::Tau) && !self.tau_fired[d.index()] {
                out.push(SiteEvent::TauCenter(d));
            }
        }
        for a in 0..2 {
            let [x, y] = axis_sides(a);
            if let (Some(Probe::Glue(px)), Some(Probe::Glue(py))) = (&self.probes[x.index()], &self.probes[y.index()])
            {
                if !self.met[a] && px.iter().any(|s| py.contains(s)) {
                    out.push(SiteEvent::GlueMeet(a));
                }
            }
        }
        for i in 0..self.crawlers.len() {
            if let Some(ev) = self.crawler_event(ctx, i) {
                out.push(ev);
            }
        }
        out
    }

    fn spawn(&mut self, ctx: &Ctx, origin: Origin, collected: [Option<GlueId>; 4], start: Dir, source: Option<Source>) {
        let entries = ctx.entries(collected);
        let path = match origin {
            Origin::Pair { side, .. } => vec![side],
            _ => vec![start, ccw_next(start), ccw_next(ccw_next(start))],
        };
        let id = self.crawlers.len();
        self.crawlers.push(Crawler {
            origin,
            state: if entries.is_empty() { CrawlerState::Unfilled } else { CrawlerState::Full },
            collected,
            entries,
            chosen: None,
            path,
            source: source.unwrap_or(Source::Own(id)),
            riding: None,
            done: false,
        });
    }

    /// Starts the corner crawlers the current frame calls for.
    fn settle(&mut self, ctx: &Ctx) {
        if !self.settled() {
            return;
        }
        for init in initiation_rule(&self.config()) {
            let k = init.corner.rank();
            if self.initiated[k] {
                continue;
            }
            self.initiated[k] = true;
            if self.tau_side(ctx, init.side) {
                continue;
            }
            let glue = self.input(init.side).expect("initiating side is an input");
            self.spawn(ctx, Origin::Corner(init.corner), Ctx::only(init.side, glue), ccw_next(init.side), None);
        }
    }

    fn choose(&mut self, ctx: &Ctx, i: usize, choice: Option<u32>) -> TileId {
        if let Some(t) = self.crawlers[i].chosen {
            return t;
        }
        let source = self.crawlers[i].source;
        let r = self.draws.get(&source).copied().or(choice).expect("first output needs a random number");
        self.draws.insert(source, r);
        let c = &mut self.crawlers[i];
        let (t, _) = lookup(&ctx.table, c.collected, r as u64).expect("full crawler has entries");
        c.chosen = Some(t);
        t
    }

    fn output(&mut self, ctx: &Ctx, i: usize, choice: Option<u32>, eff: &mut Effect) -> TileId {
        let t = self.choose(ctx, i, choice);
        self.crawlers[i].state = CrawlerState::Output;
        match self.resolved {
            None => {
                self.resolved = Some(t);
                eff.resolved = Some(t);
            }
            Some(prev) if prev != t => self.conflict = true,
            _ => {}
        }
        t
    }

    fn advance(&mut self, i: usize) {
        let c = &mut self.crawlers[i];
        c.path.remove(0);
        c.riding = None;
        if c.state == CrawlerState::Output && c.path.is_empty() {
            c.done = true;
        }
    }

    fn kill(&mut self, i: usize) {
        self.crawlers[i].state = CrawlerState::Dead;
        for c in &mut self.crawlers {
            if c.riding == Some(i) {
                c.riding = None;
            }
        }
    }

    /// Unfilled riders die once the crawler below them fills.
    fn drop_riders(&mut self, i: usize) {
        if self.crawlers[i].state != CrawlerState::Full {
            return;
        }
        let riders: Vec<usize> = (0..self.crawlers.len())
            .filter(|&j| self.crawlers[j].riding == Some(i) && self.crawlers[j].state == CrawlerState::Unfilled)
            .collect();
        for j in riders {
            self.kill(j);
        }
    }

    fn step_crawler(&mut self, ctx: &Ctx, i: usize, eff: &mut Effect) {
        let c = self.crawlers[i].clone();
        if let Origin::Pair { .. } = c.origin {
            self.kill(i);
            eff.note = "dead: side taken".into();
            return;
        }
        let Some(&s) = c.path.first() else {
            self.kill(i);
            eff.note = "dead: path end".into();
            return;
        };
        match self.sides[s.index()] {
            SideState::Output => {
                if c.state == CrawlerState::Output {
                    self.crawlers[i].done = true;
                    eff.note = "halt: side taken".into();
                } else {
                    self.kill(i);
                    eff.note = "dead: side taken".into();
                }
            }
            SideState::Absent => {
                let j = self.rider_target(i).expect("step at an absent side is a ride");
                let below = self.crawlers[j].collected;
                let me = &mut self.crawlers[i];
                for d in Dir::ALL {
                    if me.collected[d.index()].is_none() {
                        me.collected[d.index()] = below[d.index()];
                    }
                }
                me.riding = Some(j);
                eff.note = format!("ride c{j}");
            }
            SideState::Input(g) => {
                let killed = self.kills(ctx, s);
                match c.state {
                    CrawlerState::Unfilled => {
                        self.crawlers[i].collected[s.index()] = Some(g);
                        if killed {
                            self.kill(i);
                            eff.note = "dead: probes".into();
                            return;
                        }
                        let entries = ctx.entries(self.crawlers[i].collected);
                        if !entries.is_empty() {
                            eff.note = format!("full n={}", entries.len());
                            self.crawlers[i].entries = entries;
                            self.crawlers[i].state = CrawlerState::Full;
                            self.drop_riders(i);
                        } else {
                            eff.note = "collect".into();
                        }
                        self.advance(i);
                    }
                    CrawlerState::Full if killed => {
                        self.kill(i);
                        eff.note = "dead: probes".into();
                    }
                    CrawlerState::Output if killed => {
                        self.crawlers[i].done = true;
                        eff.note = "halt: probes".into();
                    }
                    _ => {
                        eff.note = "cross".into();
                        self.advance(i);
                    }
                }
            }
        }
    }

    /// Applies an enabled event. Emission toward a neighbour is reported in the
    /// effect; the caller delivers it.
    pub fn apply(&mut self, ctx: &Ctx, ev: SiteEvent) -> Effect {
        let mut eff = Effect::default();
        match ev {
            SiteEvent::Arrive(d) => {
                let g = self.pending[d.index()].take().expect("arrival was pending");
                self.sides[d.index()] = SideState::Input(g);
            }
            SiteEvent::ClaimCorner(c, d) => {
                self.corners[c.rank()] = Some(d);
            }
            SiteEvent::GrowProbes(d) => {
                let g = self.input(d).expect("probes grow from inputs");
                self.probes[d.index()] = Some(if ctx.tau_probe(d, g) {
                    Probe::Tau
                } else {
                    Probe::Glue(ctx.glue_probes(d, g).into_iter().collect())
                });
            }
            SiteEvent::TauCenter(d) => {
                self.tau_fired[d.index()] = true;
                let a = axis(d);
                match self.centers[a] {
                    None => {
                        self.centers[a] = Some(d);
                        let g = self.input(d).expect("probe side is an input");
                        self.spawn(ctx, Origin::TauProbe(d), Ctx::only(d, g), ccw_next(d), Some(Source::Probe(d)));
                        eff.note = "center".into();
                    }
                    Some(w) => {
                        self.met[a] = true;
                        let g = self.input(w).expect("probe side is an input");
                        let side = ccw_prev(w);
                        self.spawn(ctx, Origin::Pair { axis: a, side }, Ctx::only(w, g), side, Some(Source::Probe(w)));
                        eff.note = "meet".into();
                    }
                }
            }
            SiteEvent::GlueMeet(a) => {
                self.met[a] = true;
                let [x, y] = axis_sides(a);
                let mut collected = [None; 4];
                collected[x.index()] = self.input(x);
                collected[y.index()] = self.input(y);
                for side in axis_sides(1 - a) {
                    self.spawn(ctx, Origin::Pair { axis: a, side }, collected, side, Some(Source::Axis(a)));
                }
            }
            SiteEvent::Step(i) => self.step_crawler(ctx, i, &mut eff),
            SiteEvent::Claim { crawler, choice } => {
                let s = self.crawlers[crawler].path[0];
                let t = self.output(ctx, crawler, choice, &mut eff);
                self.sides[s.index()] = SideState::Output;
                self.pending[s.index()] = None;
                eff.emitted = Some((s, ctx.sys.tile(t).glue(s)));
                eff.note = format!("emit {} tile {}", s.letter(), ctx.sys.tile(t).name);
                self.advance(crawler);
                if matches!(self.crawlers[crawler].origin, Origin::Pair { .. }) {
                    self.crawlers[crawler].done = true;
                }
            }
            SiteEvent::Record { crawler, choice } => {
                let t = self.output(ctx, crawler, choice, &mut eff);
                self.crawlers[crawler].done = true;
                eff.note = format!("record tile {}", ctx.sys.tile(t).name);
            }
        }
        self.settle(ctx);
        eff
    }

    /// One line per side and crawler.
    pub fn dump(&self, ctx: &Ctx) -> String {
        let mut out = String::new();
        for d in Dir::ALL {
            let s = match self.sides[d.index()] {
                SideState::Absent => "-".to_string(),
                SideState::Input(g) => format!("in {}", ctx.sys.glue(g).label),
                SideState::Output => "out".to_string(),
            };
            let wl = self.wl(d).map(|w| w.to_string()).unwrap_or_default();
            out.push_str(&format!("  {} {} {}\n", d.letter(), s, wl));
        }
        for (i, c) in self.crawlers.iter().enumerate() {
            let path: String = c.path.iter().map(|d| d.letter()).collect();
            out.push_str(&format!("  c{} {:?} {:?} path={} n={}\n", i, c.origin, c.state, path, c.entries.len()));
        }
        out
    }
}

/// Summary of a quiescent site for the per-site output cases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SiteCase {
    /// Probes met: exactly two outputs with the same tile.
    Meeting,
    /// Some tile binds to the inputs: exactly one output.
    Binds,
    /// Nothing binds: no output.
    Nothing,
}

pub fn expected_case(site: &Site, ctx: &Ctx) -> SiteCase {
    if site.meeting_happened() {
        SiteCase::Meeting
    } else if !ctx.entries(site.inputs()).is_empty() {
        SiteCase::Binds
    } else {
        SiteCase::Nothing
    }
}

/// Checks a quiescent site against its case. Returns a description of the
/// violation.
pub fn check_case(site: &Site, ctx: &Ctx) -> Result<SiteCase, String> {
    let case = expected_case(site, ctx);
    let outputs = site.outputs();
    let want = match case {
        SiteCase::Meeting => 2,
        SiteCase::Binds => 1,
        SiteCase::Nothing => 0,
    };
    if site.conflict {
        return Err("outputs disagree on the tile".into());
    }
    if outputs != want {
        return Err(format!("{case:?} wants {want} outputs, got {outputs}"));
    }
    Ok(case)
}

/// Probe meetings happen only between opposite WW sides whose probes match.
pub fn meetings_sound(site: &Site, ctx: &Ctx) -> bool {
    (0..2).all(|a| !site.met[a] || site.meeting_predicted(ctx, a))
}
