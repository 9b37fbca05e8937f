use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::Pos;
use crate::model::{Assembly, Tas, TileId};
use crate::stability::binding_strength;
use crate::AtamError;

pub const DEFAULT_ASSEMBLY_CAP: usize = 250_000;

/// All `(position, tile)` pairs that can attach stably to `a`, ascending.
pub fn frontier(sys: &Tas, a: &Assembly) -> Vec<(Pos, TileId)> {
    let mut out = Vec::new();
    for p in a.perimeter() {
        for t in sys.tile_ids() {
            if binding_strength(sys, a, p, t) >= sys.temperature {
                out.push((p, t));
            }
        }
    }
    out
}

pub fn attach(sys: &Tas, a: &Assembly, p: Pos, t: TileId) -> Result<Assembly, AtamError> {
    if a.contains(p) || binding_strength(sys, a, p, t) < sys.temperature {
        return Err(AtamError::NotInFrontier { pos: p, tile: sys.tile(t).name.clone() });
    }
    let mut b = a.clone();
    b.insert(p, t);
    Ok(b)
}

pub fn is_terminal(sys: &Tas, a: &Assembly) -> bool {
    frontier(sys, a).is_empty()
}

/// Producible assemblies grouped by number of attachments beyond the seed.
fn levels(sys: &Tas, depth: usize, cap: usize) -> Result<Vec<BTreeSet<Assembly>>, AtamError> {
    let mut levels = vec![BTreeSet::from([sys.seed.clone()])];
    let mut total = 1;
    for _ in 0..depth {
        let mut next = BTreeSet::new();
        for a in levels.last().expect("nonempty") {
            for (p, t) in frontier(sys, a) {
                let mut b = a.clone();
                b.insert(p, t);
                if next.insert(b) {
                    total += 1;
                    if total > cap {
                        return Err(AtamError::BudgetExceeded { cap });
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    Ok(levels)
}

/// Every assembly reachable from the seed by at most `depth` attachments.
pub fn producible_set(sys: &Tas, depth: usize) -> Result<BTreeSet<Assembly>, AtamError> {
    producible_set_capped(sys, depth, DEFAULT_ASSEMBLY_CAP)
}

pub fn producible_set_capped(
    sys: &Tas,
    depth: usize,
    cap: usize,
) -> Result<BTreeSet<Assembly>, AtamError> {
    Ok(levels(sys, depth, cap)?.into_iter().flatten().collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Directedness {
    /// No disagreement, and every branch terminated within the depth.
    DirectedSoFar,
    /// Two producible assemblies place different tiles at one position.
    NotDirected,
    /// No disagreement seen, but growth continues past the depth or the
    /// budget ran out.
    Inconclusive,
}

pub fn is_directed_up_to(sys: &Tas, depth: usize) -> Directedness {
    let levels = match levels(sys, depth, DEFAULT_ASSEMBLY_CAP) {
        Ok(l) => l,
        Err(_) => return Directedness::Inconclusive,
    };
    let mut seen: BTreeMap<Pos, TileId> = BTreeMap::new();
    for a in levels.iter().flatten() {
        for (p, t) in a.iter() {
            if *seen.entry(p).or_insert(t) != t {
                return Directedness::NotDirected;
            }
        }
    }
    let closed = levels.len() <= depth
        || levels
            .last()
            .expect("nonempty")
            .iter()
            .all(|a| is_terminal(sys, a));
    if closed {
        Directedness::DirectedSoFar
    } else {
        Directedness::Inconclusive
    }
}

/// An assembly sequence from the seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssemblySequence {
    pub steps: Vec<(Pos, TileId)>,
}

impl AssemblySequence {
    /// The assemblies after each prefix, starting with the seed.
    pub fn prefixes(&self, sys: &Tas) -> Vec<Assembly> {
        let mut a = sys.seed.clone();
        let mut out = vec![a.clone()];
        for &(p, t) in &self.steps {
            a.insert(p, t);
            out.push(a.clone());
        }
        out
    }

    pub fn result(&self, sys: &Tas) -> Assembly {
        self.prefixes(sys).pop().expect("seed")
    }
}

/// A seeded random assembly sequence. With `fair`, the location that entered
/// the frontier earliest is always serviced next, so no location starves.
pub fn run_sequence(sys: &Tas, scheduler_seed: u64, max_steps: usize, fair: bool) -> AssemblySequence {
    let mut rng = ChaCha8Rng::seed_from_u64(scheduler_seed);
    let mut a = sys.seed.clone();
    let mut steps = Vec::new();
    let mut arrival: BTreeMap<Pos, usize> = BTreeMap::new();
    let mut clock = 0usize;
    while steps.len() < max_steps {
        let front = frontier(sys, &a);
        if front.is_empty() {
            break;
        }
        let (p, t) = if fair {
            for (p, _) in &front {
                arrival.entry(*p).or_insert_with(|| {
                    clock += 1;
                    clock
                });
            }
            let oldest = front
                .iter()
                .map(|(p, _)| *p)
                .min_by_key(|p| (arrival[p], *p))
                .expect("nonempty");
            let choices: Vec<_> = front.iter().filter(|(p, _)| *p == oldest).collect();
            *choices[rng.gen_range(0..choices.len())]
        } else {
            front[rng.gen_range(0..front.len())]
        };
        arrival.remove(&p);
        a.insert(p, t);
        steps.push((p, t));
    }
    AssemblySequence { steps }
}

/// `to` is reachable from `from` by single stable attachments. Attachment
/// only gains strength as neighbors fill in, so a greedy order suffices.
pub fn produces(sys: &Tas, from: &Assembly, to: &Assembly) -> bool {
    if !from.is_subassembly_of(to) {
        return false;
    }
    let mut cur = from.clone();
    let mut pending: Vec<(Pos, TileId)> = to.iter().filter(|(p, _)| !from.contains(*p)).collect();
    loop {
        let before = pending.len();
        pending.retain(|&(p, t)| {
            if binding_strength(sys, &cur, p, t) >= sys.temperature {
                cur.insert(p, t);
                false
            } else {
                true
            }
        });
        if pending.is_empty() {
            return true;
        }
        if pending.len() == before {
            return false;
        }
    }
}

/// `a` is producible from the seed.
pub fn is_producible(sys: &Tas, a: &Assembly) -> bool {
    produces(sys, &sys.seed, a)
}
