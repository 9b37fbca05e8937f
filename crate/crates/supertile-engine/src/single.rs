use std::collections::HashSet;

use atam_core::{Dir, GlueId};

use crate::ctx::Ctx;
use crate::site::{check_case, meetings_sound, Site, SiteCase, SiteEvent};

/// Every interleaving of one supertile's events, arrivals included.
#[derive(Debug, Clone, Default)]
pub struct SiteExploration {
    pub states: usize,
    pub terminals: usize,
    /// Terminal states per case.
    pub cases: [usize; 3],
    pub violations: Vec<String>,
}

/// Explores a site whose neighbours will emit `arrivals` (one optional glue
/// per side, indexed by [`Dir::index`]). Stops collecting after `max_violations`.
pub fn explore_site(ctx: &Ctx, arrivals: [Option<GlueId>; 4], max_violations: usize) -> SiteExploration {
    let start = Site { pending: arrivals, ..Site::default() };
    let mut seen: HashSet<Site> = HashSet::new();
    let mut stack = vec![(start.clone(), vec![])];
    seen.insert(start);
    let mut out = SiteExploration::default();
    while let Some((site, path)) = stack.pop() {
        out.states += 1;
        if !meetings_sound(&site, ctx) || site.outputs() > 2 || site.conflict {
            record(&mut out, ctx, &site, &path, "invariant", max_violations);
        }
        let mut events = vec![];
        for e in site.enabled(ctx) {
            if site.needs_choice(&e) {
                let i = match e {
                    SiteEvent::Claim { crawler, .. } | SiteEvent::Record { crawler, .. } => crawler,
                    _ => unreachable!(),
                };
                events.extend(site.choices(ctx, i).into_iter().map(|c| e.with_choice(c)));
            } else {
                events.push(e);
            }
        }
        if events.is_empty() {
            out.terminals += 1;
            match check_case(&site, ctx) {
                Ok(SiteCase::Meeting) => out.cases[0] += 1,
                Ok(SiteCase::Binds) => out.cases[1] += 1,
                Ok(SiteCase::Nothing) => out.cases[2] += 1,
                Err(why) => record(&mut out, ctx, &site, &path, &why, max_violations),
            }
            continue;
        }
        for e in events {
            let mut next = site.clone();
            next.apply(ctx, e);
            if seen.insert(next.clone()) {
                let mut p = path.clone();
                p.push(e);
                stack.push((next, p));
            }
        }
    }
    out
}

fn record(out: &mut SiteExploration, ctx: &Ctx, site: &Site, path: &[SiteEvent], why: &str, max: usize) {
    if out.violations.len() >= max {
        return;
    }
    let events: Vec<String> = path.iter().map(|e| e.to_string()).collect();
    out.violations.push(format!("{why}\nevents: {}\n{}", events.join(", "), site.dump(ctx)));
}

/// All `(side, glue)` arrival patterns over the given glues, with at least one
/// side present.
pub fn arrival_patterns(glues: &[GlueId]) -> Vec<[Option<GlueId>; 4]> {
    let mut out = vec![];
    let choices: Vec<Option<GlueId>> = std::iter::once(None).chain(glues.iter().copied().map(Some)).collect();
    let k = choices.len();
    for code in 0..k.pow(4) {
        let mut a = [None; 4];
        let mut c = code;
        for d in Dir::ALL {
            a[d.index()] = choices[c % k];
            c /= k;
        }
        if a.iter().any(Option::is_some) {
            out.push(a);
        }
    }
    out
}
