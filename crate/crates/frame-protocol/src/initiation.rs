use std::collections::BTreeSet;

use atam_core::Dir;

use crate::config::{all_configs, classify, reference_cases, FrameConfig, Outcome};
use crate::geometry::{ccw_next, Corner, End};
use crate::machine::Knowledge;
use crate::FrameError;

/// A corner crawler starting at the right corner of `side`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Initiation {
    pub side: Dir,
    pub corner: Corner,
}

impl Initiation {
    pub fn at(side: Dir) -> Self {
        Initiation { side, corner: Corner::of(side, End::Right) }
    }
}

/// The right corner of `D` starts a crawler iff `D` won its left end and the
/// next side counterclockwise is present (the first crawler tile needs both
/// frames). Exceptions: in case 4.2 the WW side does not initiate, and in
/// cases 4.5 and 4.6 only north does.
pub fn initiation_rule(config: &FrameConfig) -> BTreeSet<Initiation> {
    let label = classify(config).map(|(l, _)| l);
    let mut out = BTreeSet::new();
    for d in Dir::ALL {
        let Some(wl) = config.get(d) else { continue };
        if !config.is_present(ccw_next(d)) {
            continue;
        }
        let fires = match label {
            Some("4.5") | Some("4.6") => d == Dir::N,
            Some("4.2") if wl == crate::SideWl::WW => false,
            _ => wl.left == Outcome::Win,
        };
        if fires {
            out.insert(Initiation::at(d));
        }
    }
    out
}

/// Corners of the reference table's crawlers, rotated onto `config`.
pub fn reference_initiations(config: &FrameConfig) -> Option<BTreeSet<Corner>> {
    let (label, k) = classify(config)?;
    let case = reference_cases().into_iter().find(|c| c.label == label)?;
    Some(
        case.crawlers
            .into_iter()
            .map(|mut c| {
                for _ in 0..k {
                    c = c.rotate();
                }
                c
            })
            .collect(),
    )
}

/// Decides each corner from what its two frames know: every configuration
/// consistent with their combined knowledge (and with both being present)
/// must agree on whether the corner initiates.
pub fn crawler_initiations(
    config: &FrameConfig,
    knowledge: &[Knowledge; 4],
) -> Result<BTreeSet<Initiation>, FrameError> {
    let candidates = all_configs();
    let mut out = BTreeSet::new();
    for d in Dir::ALL {
        let nb = ccw_next(d);
        if !(config.is_present(d) && config.is_present(nb)) {
            continue;
        }
        let known: Vec<(Dir, crate::SideWl)> = knowledge[d.index()]
            .iter()
            .chain(knowledge[nb.index()].iter())
            .map(|(k, v)| (*k, *v))
            .collect();
        let mut verdicts = candidates
            .iter()
            .filter(|c| c.is_present(d) && c.is_present(nb))
            .filter(|c| known.iter().all(|(k, v)| c.get(*k) == Some(*v)))
            .map(|c| initiation_rule(c).contains(&Initiation::at(d)));
        let first = verdicts.next().expect("the true configuration is a candidate");
        if verdicts.any(|v| v != first) {
            return Err(FrameError::Undecided(Corner::of(d, End::Right)));
        }
        if first {
            out.insert(Initiation::at(d));
        }
    }
    Ok(out)
}
