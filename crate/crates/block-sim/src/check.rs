use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;

use atam_core::{dump_assembly, frontier, is_producible, producible_set_capped, produces, Assembly, Tas};

use crate::rep::{maps_cleanly, represent, BlockRep};
use crate::SimError;

/// A system whose states can be read as assemblies of the simulated system.
pub trait Simulator {
    type State: Clone + Eq + Hash;

    fn initial(&self) -> Self::State;
    fn successors(&self, s: &Self::State) -> Vec<Self::State>;
    /// R* applied to a state.
    fn image(&self, s: &Self::State) -> Assembly;
    fn maps_cleanly(&self, s: &Self::State) -> bool;
    /// Whether exploration continues past `s` when checking to `depth`
    /// simulated attachments. `image_steps` is |R*(s)| minus the seed size.
    fn expand(&self, s: &Self::State, image_steps: usize, depth: usize) -> bool;
    /// Replayable text form used in counterexamples.
    fn dump(&self, s: &Self::State) -> String;
}

/// Explored portion of a simulator's state graph.
pub struct StateGraph<S> {
    pub states: Vec<S>,
    pub images: Vec<Assembly>,
    pub succ: Vec<Vec<usize>>,
    pub expanded: Vec<bool>,
}

impl<S> StateGraph<S> {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

pub fn explore<Sim: Simulator>(
    sim: &Sim,
    seed_size: usize,
    depth: usize,
    cap: usize,
) -> Result<StateGraph<Sim::State>, SimError> {
    let start = sim.initial();
    let mut index: HashMap<Sim::State, usize> = HashMap::new();
    let mut g = StateGraph { states: vec![], images: vec![], succ: vec![], expanded: vec![] };
    index.insert(start.clone(), 0);
    g.images.push(sim.image(&start));
    g.states.push(start);
    g.succ.push(vec![]);
    g.expanded.push(false);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let steps = g.images[i].len().saturating_sub(seed_size);
        if !sim.expand(&g.states[i], steps, depth) {
            continue;
        }
        g.expanded[i] = true;
        let next = sim.successors(&g.states[i]);
        let mut out = Vec::with_capacity(next.len());
        for s in next {
            let j = match index.get(&s) {
                Some(&j) => j,
                None => {
                    let j = g.states.len();
                    if j >= cap {
                        return Err(SimError::BudgetExceeded { cap });
                    }
                    index.insert(s.clone(), j);
                    g.images.push(sim.image(&s));
                    g.states.push(s);
                    g.succ.push(vec![]);
                    g.expanded.push(false);
                    queue.push_back(j);
                    j
                }
            };
            out.push(j);
        }
        out.sort_unstable();
        out.dedup();
        g.succ[i] = out;
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub what: String,
    /// Simulator side, in its dump format.
    pub simulator: String,
    /// Simulated side, in the assembly dump format.
    pub simulated: String,
}

/// Outcome of the bounded checks. A field is `None` when its check was not
/// run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimReport {
    pub production_ok: Option<bool>,
    pub clean_ok: Option<bool>,
    pub dynamics_forward_ok: Option<bool>,
    pub dynamics_backward_ok: Option<bool>,
    pub counterexample: Option<Counterexample>,
    pub depth: usize,
    pub states_explored: usize,
    /// Forward obligations that could not be decided inside the explored
    /// bound.
    pub forward_unresolved: usize,
}

impl SimReport {
    pub fn passed(&self) -> bool {
        [self.production_ok, self.clean_ok, self.dynamics_forward_ok, self.dynamics_backward_ok]
            .iter()
            .all(|f| f.unwrap_or(true))
    }

    fn merge(mut self, other: SimReport) -> SimReport {
        self.production_ok = self.production_ok.or(other.production_ok);
        self.clean_ok = self.clean_ok.or(other.clean_ok);
        self.dynamics_forward_ok = self.dynamics_forward_ok.or(other.dynamics_forward_ok);
        self.dynamics_backward_ok = self.dynamics_backward_ok.or(other.dynamics_backward_ok);
        self.counterexample = self.counterexample.or(other.counterexample);
        self.forward_unresolved += other.forward_unresolved;
        self
    }
}

impl fmt::Display for SimReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: Option<bool>| match v {
            Some(true) => "pass",
            Some(false) => "FAIL",
            None => "skipped",
        };
        writeln!(f, "depth {}", self.depth)?;
        writeln!(f, "states {}", self.states_explored)?;
        writeln!(f, "production {}", show(self.production_ok))?;
        writeln!(f, "clean {}", show(self.clean_ok))?;
        writeln!(f, "dynamics-forward {}", show(self.dynamics_forward_ok))?;
        writeln!(f, "dynamics-backward {}", show(self.dynamics_backward_ok))?;
        writeln!(f, "forward-unresolved {}", self.forward_unresolved)?;
        if let Some(c) = &self.counterexample {
            writeln!(f, "counterexample {}", c.what)?;
            writeln!(f, "--- simulator")?;
            write!(f, "{}", c.simulator)?;
            writeln!(f, "--- simulated")?;
            write!(f, "{}", c.simulated)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CheckConfig {
    /// Simulator attachments allowed per simulated attachment, per m^2.
    pub depth_multiplier: usize,
    pub cap: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { depth_multiplier: 4, cap: 2_000_000 }
    }
}

/// Images of explored states equal the simulated producible set at `depth`,
/// and every explored state maps cleanly.
pub fn check_equivalent_production<Sim: Simulator>(
    sim: &Sim,
    target: &Tas,
    graph: &StateGraph<Sim::State>,
    depth: usize,
    cap: usize,
) -> Result<SimReport, SimError> {
    let mut report = SimReport { depth, states_explored: graph.len(), ..SimReport::default() };
    let wanted = producible_set_capped(target, depth, cap).map_err(|_| SimError::BudgetExceeded { cap })?;
    let mut seen: HashSet<&Assembly> = HashSet::new();
    let mut production = true;
    for (i, img) in graph.images.iter().enumerate() {
        if seen.insert(img) && !(wanted.contains(img) && is_producible(target, img)) {
            production = false;
            report.counterexample.get_or_insert(Counterexample {
                what: "image is not a producible assembly within the depth".into(),
                simulator: sim.dump(&graph.states[i]),
                simulated: dump_assembly(target, img),
            });
        }
    }
    if let Some(missing) = wanted.iter().find(|a| !seen.contains(a)) {
        production = false;
        report.counterexample.get_or_insert(Counterexample {
            what: "producible assembly never represented".into(),
            simulator: String::new(),
            simulated: dump_assembly(target, missing),
        });
    }
    let mut clean = true;
    for s in &graph.states {
        if !sim.maps_cleanly(s) {
            clean = false;
            report.counterexample.get_or_insert(Counterexample {
                what: "state does not map cleanly".into(),
                simulator: sim.dump(s),
                simulated: dump_assembly(target, &sim.image(s)),
            });
            break;
        }
    }
    report.production_ok = Some(production);
    report.clean_ok = Some(clean);
    Ok(report)
}

/// Forward: from every explored state whose image is α, each simulated step
/// α -> β is realizable by some path of simulator steps. Backward: every
/// simulator step maps to zero or more simulated steps.
pub fn check_equivalent_dynamics<Sim: Simulator>(
    sim: &Sim,
    target: &Tas,
    graph: &StateGraph<Sim::State>,
    depth: usize,
) -> SimReport {
    let mut report = SimReport { depth, states_explored: graph.len(), ..SimReport::default() };
    let seed_size = target.seed.len();

    let mut backward = true;
    'outer: for (i, next) in graph.succ.iter().enumerate() {
        for &j in next {
            if graph.images[i] != graph.images[j] && !produces(target, &graph.images[i], &graph.images[j]) {
                backward = false;
                report.counterexample = Some(Counterexample {
                    what: "simulator step does not map to a simulated step".into(),
                    simulator: format!("{}--- after\n{}", sim.dump(&graph.states[i]), sim.dump(&graph.states[j])),
                    simulated: format!(
                        "{}--- after\n{}",
                        dump_assembly(target, &graph.images[i]),
                        dump_assembly(target, &graph.images[j])
                    ),
                });
                break 'outer;
            }
        }
    }

    let mut classes: HashMap<&Assembly, Vec<usize>> = HashMap::new();
    for (i, img) in graph.images.iter().enumerate() {
        classes.entry(img).or_default().push(i);
    }
    let mut forward = true;
    let mut class_list: Vec<(&Assembly, Vec<usize>)> = classes.into_iter().collect();
    class_list.sort_by(|a, b| a.0.cmp(b.0));
    for (alpha, members) in class_list {
        if alpha.len().saturating_sub(seed_size) >= depth {
            continue;
        }
        let member_set: HashSet<usize> = members.iter().copied().collect();
        let complete = members.iter().all(|&i| graph.expanded[i]);
        let mut pred: HashMap<usize, Vec<usize>> = HashMap::new();
        for &i in &members {
            for &j in &graph.succ[i] {
                if member_set.contains(&j) {
                    pred.entry(j).or_default().push(i);
                }
            }
        }
        for (p, t) in frontier(target, alpha) {
            let mut beta = alpha.clone();
            beta.insert(p, t);
            let mut reach: HashSet<usize> = members
                .iter()
                .copied()
                .filter(|&i| graph.succ[i].iter().any(|&j| graph.images[j] == beta))
                .collect();
            let mut stack: Vec<usize> = reach.iter().copied().collect();
            while let Some(j) = stack.pop() {
                for &i in pred.get(&j).map(Vec::as_slice).unwrap_or(&[]) {
                    if reach.insert(i) {
                        stack.push(i);
                    }
                }
            }
            if let Some(&stuck) = members.iter().find(|i| !reach.contains(i)) {
                if !complete {
                    report.forward_unresolved += 1;
                    continue;
                }
                forward = false;
                report.counterexample.get_or_insert(Counterexample {
                    what: format!("simulated step to {} at {} cannot be realized", target.tile(t).name, p),
                    simulator: sim.dump(&graph.states[stuck]),
                    simulated: format!("{}--- after\n{}", dump_assembly(target, alpha), dump_assembly(target, &beta)),
                });
            }
        }
    }
    report.dynamics_forward_ok = Some(forward);
    report.dynamics_backward_ok = Some(backward);
    report
}

/// Explores once and runs both checks.
pub fn check_simulation<Sim: Simulator>(
    sim: &Sim,
    target: &Tas,
    depth: usize,
    cap: usize,
) -> Result<SimReport, SimError> {
    let graph = explore(sim, target.seed.len(), depth, cap)?;
    let prod = check_equivalent_production(sim, target, &graph, depth, cap)?;
    let dynamics = check_equivalent_dynamics(sim, target, &graph, depth);
    Ok(prod.merge(dynamics))
}

/// A tile system S read through an m-block representation.
pub struct BlockSimulator<R: BlockRep> {
    pub sys: Tas,
    pub rep: R,
    pub config: CheckConfig,
}

impl<R: BlockRep> BlockSimulator<R> {
    /// `simulator_temperature` overrides the temperature S runs at (τ').
    pub fn new(mut sys: Tas, rep: R, config: CheckConfig, simulator_temperature: Option<u32>) -> Self {
        if let Some(t) = simulator_temperature {
            sys.temperature = t;
        }
        BlockSimulator { sys, rep, config }
    }

    fn budget(&self, depth: usize) -> usize {
        let m = self.rep.m() as usize;
        self.config.depth_multiplier * m * m * depth
    }
}

impl<R: BlockRep> Simulator for BlockSimulator<R> {
    type State = Assembly;

    fn initial(&self) -> Assembly {
        self.sys.seed.clone()
    }

    fn successors(&self, s: &Assembly) -> Vec<Assembly> {
        frontier(&self.sys, s)
            .into_iter()
            .map(|(p, t)| {
                let mut b = s.clone();
                b.insert(p, t);
                b
            })
            .collect()
    }

    fn image(&self, s: &Assembly) -> Assembly {
        represent(&self.rep, s)
    }

    fn maps_cleanly(&self, s: &Assembly) -> bool {
        maps_cleanly(&self.rep, s)
    }

    fn expand(&self, s: &Assembly, image_steps: usize, depth: usize) -> bool {
        image_steps < depth && s.len() - self.sys.seed.len() < self.budget(depth)
    }

    fn dump(&self, s: &Assembly) -> String {
        dump_assembly(&self.sys, s)
    }
}
