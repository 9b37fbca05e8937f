use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use atam_core::{is_tau_stable, Assembly, Dir, GlueId, Pos, TileId};
use block_sim::{explore, SimError, Simulator};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ctx::Ctx;
use crate::EngineError;
use crate::site::{meetings_sound, SideState, Site, SiteEvent, Source};

/// Protocol state of every supertile position touched so far.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LatticeState {
    /// Shared between states; unchanged sites are not copied.
    pub sites: BTreeMap<Pos, Arc<Site>>,
}

/// Seed supertiles with their outputs already emitted on every side facing
/// an empty position.
pub fn encode_seed(ctx: &Ctx) -> Result<LatticeState, EngineError> {
    if !is_tau_stable(&ctx.sys, &ctx.sys.seed) {
        return Err(EngineError::UnstableSeed);
    }
    let mut state = LatticeState::default();
    for (p, t) in ctx.sys.seed.iter() {
        state.sites.insert(p, Arc::new(Site::seed_site(t)));
    }
    for (p, t) in ctx.sys.seed.iter() {
        for (d, q) in p.neighbors() {
            if ctx.sys.seed.contains(q) {
                continue;
            }
            deliver(&mut state, q, d.opposite(), ctx.sys.tile(t).glue(d));
        }
    }
    Ok(state)
}

fn deliver(state: &mut LatticeState, q: Pos, side: Dir, glue: GlueId) {
    let site = state.sites.entry(q).or_default();
    if site.sides[side.index()] == SideState::Absent {
        Arc::make_mut(site).sides[side.index()] = SideState::Input(glue);
    }
}

/// Tile a site represents, if any.
pub fn represent_site(site: &Site) -> Option<TileId> {
    site.resolved
}

impl LatticeState {
    pub fn image(&self) -> Assembly {
        let mut a = Assembly::new();
        for (&p, s) in &self.sites {
            if let Some(t) = represent_site(s) {
                a.insert(p, t);
            }
        }
        a
    }

    /// Applies one event at `p` and delivers any emission.
    pub fn apply(&mut self, ctx: &Ctx, p: Pos, ev: SiteEvent) -> String {
        let site = Arc::make_mut(self.sites.get_mut(&p).expect("event at a known site"));
        let eff = site.apply(ctx, ev);
        if let Some(f) = site.freeze(ctx) {
            *site = f;
        }
        let mut payload = eff.note.clone();
        if let Some((d, g)) = eff.emitted {
            payload.push_str(&format!(" record={}", superside_record(ctx, g)));
            deliver(self, p.step(d), d.opposite(), g);
        }
        let payload = payload.trim();
        format!("site({},{}) | {} | {}", p.x, p.y, ev, if payload.is_empty() { "-" } else { payload })
    }

    pub fn events(&self, ctx: &Ctx) -> Vec<(Pos, SiteEvent)> {
        let mut out = vec![];
        for (&p, s) in &self.sites {
            out.extend(s.enabled(ctx).into_iter().map(|e| (p, e)));
        }
        out
    }

    /// Successors for exhaustive exploration. A site with internal work
    /// pending runs it to quiescence in one macro step; these steps interleave
    /// with every claim and record. Tile choices are expanded.
    pub fn reduced_successors(&self, ctx: &Ctx) -> Vec<LatticeState> {
        let mut out = vec![];
        for (&p, s) in &self.sites {
            if s.enabled(ctx).iter().any(|e| !e.is_visible()) {
                for site in run_internal(ctx, s) {
                    let mut next = self.clone();
                    let site = site.freeze(ctx).unwrap_or(site);
                    next.sites.insert(p, Arc::new(site));
                    out.push(next);
                }
            }
        }
        for (p, e) in self.events(ctx) {
            if !e.is_visible() {
                continue;
            }
            let site = &self.sites[&p];
            let choices: Vec<SiteEvent> = if site.needs_choice(&e) {
                let i = match e {
                    SiteEvent::Claim { crawler, .. } | SiteEvent::Record { crawler, .. } => crawler,
                    _ => unreachable!(),
                };
                site.choices(ctx, i).into_iter().map(|c| e.with_choice(c)).collect()
            } else {
                vec![e]
            };
            for e in choices {
                let mut next = self.clone();
                next.apply(ctx, p, e);
                out.push(next);
            }
        }
        out
    }

    /// Invariants that must hold in every reachable state.
    pub fn invariant_violation(&self, ctx: &Ctx) -> Option<String> {
        for (p, s) in &self.sites {
            if s.conflict {
                return Some(format!("site {p}: outputs disagree"));
            }
            if !meetings_sound(s, ctx) {
                return Some(format!("site {p}: probes met without matching WW sides"));
            }
            if s.outputs() > 2 {
                return Some(format!("site {p}: {} outputs", s.outputs()));
            }
        }
        None
    }

    pub fn maps_cleanly(&self) -> bool {
        self.sites.iter().all(|(p, s)| {
            s.resolved.is_some()
                || p.neighbors().any(|(_, q)| self.sites.get(&q).is_some_and(|n| n.resolved.is_some()))
        })
    }

    pub fn dump(&self, ctx: &Ctx) -> String {
        let mut out = String::new();
        for (p, s) in &self.sites {
            let tile = s.resolved.map(|t| ctx.sys.tile(t).name.clone()).unwrap_or_else(|| "-".into());
            let tag = if s.seed { " seed" } else if s.frozen { " frozen" } else { "" };
            out.push_str(&format!("site {} {}{}\n", p, tile, tag));
            if !s.seed && !s.frozen {
                out.push_str(&s.dump(ctx));
            }
        }
        out
    }
}

/// Alternatives of the first contested internal event, if any: the claimants
/// of the first open corner, else the τ probes that can reach a free center.
fn competing(internal: &[SiteEvent]) -> Option<Vec<SiteEvent>> {
    let first = internal.iter().find_map(|e| match e {
        SiteEvent::ClaimCorner(c, _) => Some(*c),
        _ => None,
    });
    if let Some(c) = first {
        return Some(internal.iter().copied().filter(|e| matches!(e, SiteEvent::ClaimCorner(k, _) if *k == c)).collect());
    }
    let centers: Vec<SiteEvent> = internal.iter().copied().filter(|e| matches!(e, SiteEvent::TauCenter(_))).collect();
    (!centers.is_empty()).then_some(centers)
}

/// Every quiescent result of running a site's internal events. Only
/// competing events branch; the rest commute and fire in a fixed order.
pub fn run_internal(ctx: &Ctx, site: &Site) -> Vec<Site> {
    let mut done = vec![];
    let mut seen = HashSet::new();
    let mut stack = vec![site.clone()];
    while let Some(s) = stack.pop() {
        let internal: Vec<SiteEvent> = s.enabled(ctx).into_iter().filter(|e| !e.is_visible()).collect();
        let Some(branch) = competing(&internal).or_else(|| internal.first().map(|&e| vec![e])) else {
            done.push(s);
            continue;
        };
        for e in branch {
            let mut next = s.clone();
            next.apply(ctx, e);
            if seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    done
}

/// What an output superside carries: its glue code and strength-τ flag,
/// with the table regions copied along every superside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupersideRecord {
    pub glue_bits: String,
    pub tau: bool,
    pub lookup_len: usize,
    pub probe_table_len: usize,
    pub m: usize,
}

impl fmt::Display for SupersideRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.glue_bits, if self.tau { "+tau" } else { "" })
    }
}

pub fn superside_record(ctx: &Ctx, glue: GlueId) -> SupersideRecord {
    let region = |name: &str| ctx.layout.region(name).map_or(0, |r| r.len);
    SupersideRecord {
        glue_bits: ctx.glues().glue_bin(glue).expect("emitted glues are in the table"),
        tau: ctx.sys.strength(glue) >= ctx.tau(),
        lookup_len: region("lookup"),
        probe_table_len: region("probe-table"),
        m: ctx.layout.m,
    }
}

/// Simulator over lattice states, explored with the reduction of
/// [`LatticeState::reduced_successors`].
pub struct LatticeSim {
    pub ctx: Ctx,
    start: LatticeState,
}

impl LatticeSim {
    pub fn new(ctx: Ctx) -> Result<Self, EngineError> {
        let start = encode_seed(&ctx)?;
        Ok(LatticeSim { ctx, start })
    }
}

impl Simulator for LatticeSim {
    type State = LatticeState;

    fn initial(&self) -> LatticeState {
        self.start.clone()
    }

    fn successors(&self, s: &LatticeState) -> Vec<LatticeState> {
        s.reduced_successors(&self.ctx)
    }

    fn image(&self, s: &LatticeState) -> Assembly {
        s.image()
    }

    fn maps_cleanly(&self, s: &LatticeState) -> bool {
        s.maps_cleanly()
    }

    fn expand(&self, _s: &LatticeState, image_steps: usize, depth: usize) -> bool {
        image_steps < depth
    }

    fn dump(&self, s: &LatticeState) -> String {
        s.dump(&self.ctx)
    }
}

/// Outcome of one randomly scheduled run.
#[derive(Debug, Clone)]
pub struct Run {
    pub trace: Vec<String>,
    pub state: LatticeState,
    /// Images after each change, starting from the seed.
    pub images: Vec<Assembly>,
    pub steps: usize,
}

fn site_stream(seed: u64, p: Pos) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((p.x as u32 as u64) << 32) | p.y as u32 as u64);
    rng
}

/// Runs until `depth` simulated tiles have resolved, nothing is enabled, or
/// `max_steps` events have fired. The scheduler and every site draw from
/// streams derived from `seed`.
pub fn run_once(ctx: &Ctx, seed: u64, depth: usize, max_steps: usize) -> Result<Run, EngineError> {
    let mut sched = ChaCha8Rng::seed_from_u64(seed);
    let mut streams: HashMap<Pos, ChaCha8Rng> = HashMap::new();
    let mut state = encode_seed(ctx)?;
    let seed_size = ctx.sys.seed.len();
    let mut images = vec![state.image()];
    let mut trace = vec![];
    let mut steps = 0;
    while steps < max_steps && images.last().map_or(0, |a| a.len()) - seed_size < depth {
        let events = state.events(ctx);
        if events.is_empty() {
            break;
        }
        let (p, mut ev) = events[sched.gen_range(0..events.len())];
        let site = &state.sites[&p];
        if site.needs_choice(&ev) {
            let i = match ev {
                SiteEvent::Claim { crawler, .. } | SiteEvent::Record { crawler, .. } => crawler,
                _ => unreachable!(),
            };
            let c = &site.crawlers[i];
            let n = c.entries.len() as u32;
            let rng = streams.entry(p).or_insert_with(|| site_stream(seed, p));
            let e = match c.source {
                Source::Own(_) => rng.gen_range(0..n),
                _ => rng.gen_range(0..ctx.probe_range()),
            };
            ev = ev.with_choice(e);
        }
        trace.push(state.apply(ctx, p, ev));
        steps += 1;
        let img = state.image();
        if img != *images.last().expect("seed image") {
            images.push(img);
        }
    }
    Ok(Run { trace, state, images, steps })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    OneRun,
    Exhaustive,
}

/// Resolved configurations over every explored interleaving.
#[derive(Debug, Clone)]
pub struct Exhaustive {
    pub configurations: BTreeSet<Assembly>,
    pub states: usize,
    /// States breaking a lattice invariant, in dump form.
    pub violations: Vec<String>,
}

#[derive(Debug, Clone)]
pub enum LatticeRun {
    One(Run),
    All(Exhaustive),
}

/// Default bound on one-run events.
pub const MAX_STEPS: usize = 1_000_000;

/// Runs the lattice to `depth` simulated attachments, once with the given
/// scheduler seed or over all interleavings up to `cap` states.
pub fn run_lattice(ctx: &Ctx, depth: usize, seed: u64, mode: Mode, cap: usize) -> Result<LatticeRun, EngineError> {
    match mode {
        Mode::OneRun => run_once(ctx, seed, depth, MAX_STEPS).map(LatticeRun::One),
        Mode::Exhaustive => {
            let sim = LatticeSim::new(ctx.clone())?;
            let graph = explore(&sim, ctx.sys.seed.len(), depth, cap).map_err(|e| match e {
                SimError::BudgetExceeded { cap } => EngineError::BudgetExceeded { cap },
            })?;
            let violations = graph
                .states
                .iter()
                .filter_map(|s| s.invariant_violation(ctx).map(|why| format!("{why}\n{}", s.dump(ctx))))
                .collect();
            Ok(LatticeRun::All(Exhaustive {
                configurations: graph.images.iter().cloned().collect(),
                states: graph.len(),
                violations,
            }))
        }
    }
}
