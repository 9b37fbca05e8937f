use atam_core::gen::{random_tas, GenParams};
use atam_core::{parse_tas, producible_set, Assembly, Pos, Tas};
use block_sim::*;

fn sys(text: &str) -> Tas {
    parse_tas(text).unwrap()
}

const TARGET: &str = "temperature 2\nglue a 2\ntile s E=a\ntile r W=a\nseed 0 0 s\n";

/// Scale-2 version of TARGET: each tile becomes a 2x2 block glued
/// internally with strength 2.
const SCALED: &str = "temperature 2\n\
    glue x 2\nglue i1 2\nglue i2 2\nglue i3 2\nglue j1 2\nglue j2 2\nglue j3 2\n\
    tile s00 N=j1 E=j2\ntile s01 S=j1\ntile s10 W=j2 N=j3 E=x\ntile s11 S=j3\n\
    tile r00 W=x N=i1 E=i2\ntile r01 S=i1\ntile r10 W=i2 N=i3\ntile r11 S=i3\n\
    seed 0 0 s00\nseed 0 1 s01\nseed 1 0 s10\nseed 1 1 s11\n";

const SCALED_REP: &str = "m 2\nclosure on\nrule s 0,0=s00\nrule r 0,0=r00\n";

#[test]
fn block_examples() {
    let t = sys(TARGET);
    assert!(block_at(&t.seed, 2, 5, 5).is_empty());
    let b = block_at(&t.seed, 1, 0, 0);
    assert_eq!(b.cells.len(), 1);
    assert_eq!(b.cells[&(0, 0)], t.tile_by_name("s").unwrap());
    let s = sys(SCALED);
    let b = block_at(&s.seed, 2, 0, 0);
    assert_eq!(b.cells.len(), 4);
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        assert_eq!(Some(b.cells[&(i, j)]), s.seed.get(Pos::new(i as i32, j as i32)));
    }
}

#[test]
fn validate_examples() {
    let t = sys(TARGET);
    let universe: Vec<MBlock> = producible_set(&t, 2)
        .unwrap()
        .iter()
        .flat_map(|a| a.positions().map(|p| block_at(a, 1, p.x, p.y)).collect::<Vec<_>>())
        .chain([MBlock::empty(1)])
        .collect();
    assert!(validate_rep(&IdentityRep, &universe));

    let s = sys(SCALED);
    let s00 = s.tile_by_name("s00").unwrap();
    let s01 = s.tile_by_name("s01").unwrap();
    let mut small = MBlock::empty(2);
    small.cells.insert((0, 0), s00);
    let mut big = small.clone();
    big.cells.insert((0, 1), s01);
    let bad = ExtensionalRep {
        m: 2,
        rules: vec![(small.clone(), t.tile_by_name("s").unwrap()), (big.clone(), t.tile_by_name("r").unwrap())],
        monotone_closure: false,
    };
    assert!(!validate_rep(&bad, &[small.clone(), big.clone()]));
    let good = parse_rep(SCALED_REP, &s, &t).unwrap();
    assert!(validate_rep(&good, &[small, big]));
}

#[test]
fn represent_examples() {
    let t = sys(TARGET);
    for a in producible_set(&t, 2).unwrap() {
        assert_eq!(represent(&IdentityRep, &a), a);
    }
    // A supertile whose defining cell has not formed stays undefined.
    let s = sys(SCALED);
    let rep = parse_rep(SCALED_REP, &s, &t).unwrap();
    let mut partial = s.seed.clone();
    partial.insert(Pos::new(3, 1), s.tile_by_name("r11").unwrap());
    let img = represent(&rep, &partial);
    assert_eq!(img.len(), 1);
    assert_eq!(img.get(Pos::new(0, 0)), t.tile_by_name("s"));
    assert!(maps_cleanly(&rep, &partial));
}

#[test]
fn clean_mapping_examples() {
    let t = sys(TARGET);
    for a in producible_set(&t, 2).unwrap() {
        assert!(maps_cleanly(&IdentityRep, &a));
    }
    let s = sys(SCALED);
    let rep = parse_rep(SCALED_REP, &s, &t).unwrap();
    let mut stray = s.seed.clone();
    stray.insert(Pos::new(5, 1), s.tile_by_name("r11").unwrap());
    assert!(!maps_cleanly(&rep, &stray));
    // A lone unmapped block at the origin is allowed.
    let lone = Assembly::single(Pos::new(1, 1), s.tile_by_name("r11").unwrap());
    assert!(maps_cleanly(&rep, &lone));
}

#[test]
fn identity_self_simulation_passes() {
    for seed in 0..40 {
        let t = random_tas(seed, GenParams::default());
        let sim = BlockSimulator::new(t.clone(), IdentityRep, CheckConfig::default(), None);
        let report = check_simulation(&sim, &t, 3, 1_000_000).unwrap();
        assert!(report.passed(), "seed {seed}\n{report}");
        assert_eq!(report.forward_unresolved, 0);
    }
}

#[test]
fn scaled_system_simulates_target() {
    let t = sys(TARGET);
    let s = sys(SCALED);
    let rep = parse_rep(SCALED_REP, &s, &t).unwrap();
    let sim = BlockSimulator::new(s, rep, CheckConfig::default(), None);
    let report = check_simulation(&sim, &t, 1, 100_000).unwrap();
    assert!(report.passed(), "{report}");
}

#[test]
fn missing_tile_breaks_production() {
    let t = sys(TARGET);
    let s = sys(&SCALED.replace("tile r00 W=x N=i1 E=i2\n", ""));
    let rep = parse_rep(&SCALED_REP.replace("rule r 0,0=r00\n", ""), &s, &t).unwrap();
    let sim = BlockSimulator::new(s, rep, CheckConfig::default(), None);
    let report = check_simulation(&sim, &t, 1, 100_000).unwrap();
    assert_eq!(report.production_ok, Some(false));
    let c = report.counterexample.unwrap();
    assert_eq!(c.simulated, "0 0 s\n1 0 r\n");
}

#[test]
fn inconsistent_rep_breaks_backward_dynamics() {
    let t = sys("temperature 2\nglue a 2\ntile s E=a\ntile x W=a\ntile y W=a N=a\ntile z\nseed 0 0 s\n");
    let rep = parse_rep("m 1\nclosure off\nrule s 0,0=s\nrule x 0,0=x\nrule z 0,0=y\n", &t, &t).unwrap();
    let sim = BlockSimulator::new(t.clone(), rep, CheckConfig::default(), None);
    let report = check_simulation(&sim, &t, 1, 10_000).unwrap();
    assert_eq!(report.dynamics_backward_ok, Some(false));
    assert!(!report.passed());
    assert!(report.to_string().contains("counterexample"));
}

#[test]
fn temperature_override_is_applied() {
    let t = sys(TARGET);
    let sim = BlockSimulator::new(t.clone(), IdentityRep, CheckConfig::default(), Some(3));
    let report = check_simulation(&sim, &t, 1, 1000).unwrap();
    assert_eq!(report.production_ok, Some(false));
}

#[test]
fn represent_is_monotone() {
    for seed in 0..30 {
        let t = random_tas(seed, GenParams::default());
        let set: Vec<Assembly> = producible_set(&t, 3).unwrap().into_iter().collect();
        for a in &set {
            for b in set.iter().filter(|b| a.is_subassembly_of(b)) {
                assert!(represent(&IdentityRep, a).is_subassembly_of(&represent(&IdentityRep, b)));
            }
        }
    }
}

#[test]
fn parse_rep_errors() {
    let t = sys(TARGET);
    assert!(parse_rep("rule s 0,0=s\n", &t, &t).is_err());
    assert!(parse_rep("m 1\nrule s 1,0=s\n", &t, &t).is_err());
    assert!(parse_rep("m 1\nrule q 0,0=s\n", &t, &t).is_err());
    assert!(parse_rep("m 1\nclosure maybe\n", &t, &t).is_err());
}
