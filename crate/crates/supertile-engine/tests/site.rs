use atam_core::gen::{random_tas, GenParams};
use atam_core::{parse_tas, Dir, GlueId, Tas};
use supertile_engine::{arrival_patterns, explore_site, Ctx, SiteExploration};

fn ctx(text: &str) -> (Tas, Ctx) {
    let sys = parse_tas(text).unwrap();
    (sys.clone(), Ctx::new(sys).unwrap())
}

fn explore(text: &str, arrivals: &[(Dir, &str)]) -> SiteExploration {
    let (sys, ctx) = ctx(text);
    let mut a: [Option<GlueId>; 4] = [None; 4];
    for &(d, label) in arrivals {
        a[d.index()] = Some(sys.glue_by_label(label).unwrap());
    }
    let ex = explore_site(&ctx, a, 1);
    assert!(ex.violations.is_empty(), "{}", ex.violations[0]);
    assert!(ex.terminals > 0);
    ex
}

#[test]
fn lone_strong_side_binds_once() {
    let ex = explore("temperature 2\nglue a 2\ntile s E=a\ntile r W=a\nseed 0 0 s\n", &[(Dir::W, "a")]);
    assert_eq!(ex.cases, [0, ex.terminals, 0]);
}

#[test]
fn opposite_strong_sides_meet_unless_one_finishes_first() {
    let text = "temperature 2\nglue a 2\nglue b 2\ntile s E=a\ntile x W=a E=b\nseed 0 0 s\n";
    let ex = explore(text, &[(Dir::W, "a"), (Dir::E, "b")]);
    assert!(ex.cases[0] > 0 && ex.cases[1] > 0);
    assert_eq!(ex.cases[2], 0);
}

#[test]
fn opposite_weak_sides_meet_on_shared_slot() {
    let text = "temperature 2\nglue b 1\nglue c 1\ntile s\ntile x W=b E=c\nseed 0 0 s\n";
    let ex = explore(text, &[(Dir::W, "b"), (Dir::E, "c")]);
    assert_eq!(ex.cases, [ex.terminals, 0, 0]);
}

#[test]
fn opposite_weak_sides_without_common_tile_stay_silent() {
    let text = "temperature 2\nglue b 1\nglue c 1\ntile s\ntile x W=b\ntile y E=c\nseed 0 0 s\n";
    let ex = explore(text, &[(Dir::W, "b"), (Dir::E, "c")]);
    assert_eq!(ex.cases, [0, 0, ex.terminals]);
}

#[test]
fn adjacent_weak_sides_cooperate() {
    let text = "temperature 2\nglue b 1\nglue c 1\ntile s\ntile x S=b W=c\nseed 0 0 s\n";
    let ex = explore(text, &[(Dir::S, "b"), (Dir::W, "c")]);
    assert_eq!(ex.cases, [0, ex.terminals, 0]);
}

#[test]
fn single_weak_side_binds_nothing() {
    let ex = explore("temperature 2\nglue b 1\ntile s\ntile x W=b\nseed 0 0 s\n", &[(Dir::W, "b")]);
    assert_eq!(ex.cases, [0, 0, ex.terminals]);
}

#[test]
fn generated_systems_respect_cases_over_all_arrivals() {
    let mut seen = [0usize; 3];
    for seed in 0..20u64 {
        let ctx = Ctx::new(random_tas(seed, GenParams::default())).unwrap();
        let glues: Vec<GlueId> = ctx.glues().glues().to_vec();
        for a in arrival_patterns(&glues) {
            let ex = explore_site(&ctx, a, 1);
            assert!(ex.violations.is_empty(), "seed {seed} {a:?}\n{}", ex.violations[0]);
            for (s, c) in seen.iter_mut().zip(ex.cases) {
                *s += c;
            }
        }
    }
    assert!(seen.iter().all(|&c| c > 0), "{seen:?}");
}
