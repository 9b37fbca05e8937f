use std::collections::BTreeSet;

use atam_core::gen::{random_tas, GenParams};
use atam_core::*;

fn sys(text: &str) -> Tas {
    parse_tas(text).unwrap()
}

const LINEAR: &str = "temperature 2\nglue a 2\ntile s E=a\ntile r W=a\nseed 0 0 s\n";

#[test]
fn minimal_document() {
    let t = sys("temperature 2\ntile only\nseed 0 0 only\n");
    assert_eq!(t.tiles.len(), 1);
    assert_eq!(t.temperature, 2);
}

#[test]
fn unequal_strengths_rejected() {
    let err = parse_tas("temperature 2\nglue a 1\nglue a 2\ntile x\nseed 0 0 x\n").unwrap_err();
    assert!(matches!(err, TasError::UnequalStrengths { line: 3, .. }));
    assert!(err.to_string().contains("label shared between unequal strengths"));
}

#[test]
fn unstable_seed_rejected() {
    let text = "temperature 2\nglue a 1\ntile l E=a\ntile r W=a\nseed 0 0 l\nseed 1 0 r\n";
    let err = parse_tas(text).unwrap_err();
    assert!(err.to_string().contains("seed not τ-stable"));
    assert_eq!(err.line(), 6);
}

#[test]
fn other_parse_errors_carry_lines() {
    let cases = [
        ("temperature 2\ntile x\ntile x N=null\nseed 0 0 x\n", 3),
        ("temperature 2\nglue a 1\ntile x N=a\ntile y N=a\nseed 0 0 x\n", 4),
        ("temperature 1\nglue a 2\ntile x\nseed 0 0 x\n", 2),
        ("temperature 2\ntile x Q=a\nseed 0 0 x\n", 2),
        ("temperature 2\ntile x N=zz\nseed 0 0 x\n", 2),
        ("temperature 2\ntile x\nseed 0 zero x\n", 3),
        ("temperature 2\ntile x\nbogus\nseed 0 0 x\n", 3),
    ];
    for (text, line) in cases {
        let err = parse_tas(text).unwrap_err();
        assert_eq!(err.line(), line, "{text:?} gave {err}");
    }
    assert!(matches!(
        parse_tas("temperature 2\ntile x\ntile x\nseed 0 0 x\n"),
        Err(TasError::DuplicateTileName { .. })
    ));
    assert!(matches!(
        parse_tas("temperature 2\nglue a 1\ntile x N=a\ntile y N=a\nseed 0 0 x\n"),
        Err(TasError::DuplicateQuadruple { .. })
    ));
    assert!(matches!(
        parse_tas("temperature 1\nglue a 2\ntile x\nseed 0 0 x\n"),
        Err(TasError::StrengthAboveTemperature { .. })
    ));
}

#[test]
fn write_then_parse_round_trips() {
    for seed in 0..50 {
        let t = random_tas(seed, GenParams::default());
        assert_eq!(parse_tas(&write_tas(&t)).unwrap(), t);
    }
}

#[test]
fn stability_examples() {
    let one = sys("temperature 2\ntile x\nseed 0 0 x\n");
    assert!(is_tau_stable(&one, &one.seed));

    let pair = sys("temperature 2\nglue a 1\ntile l E=a\ntile r W=a\nseed 0 0 l\n");
    let mut a = pair.seed.clone();
    a.insert(Pos::new(1, 0), pair.tile_by_name("r").unwrap());
    assert!(!is_tau_stable(&pair, &a));
    assert_eq!(min_cut(&pair, &a), Some(1));

    // 2x2 square bound by strength-1 glues all round: cutting off any
    // single tile or any half severs two bonds.
    let sq = sys("temperature 2\nglue h 1\nglue v 1\n\
        tile sw N=v E=h\ntile se N=v W=h\ntile nw S=v E=h\ntile ne S=v W=h\n\
        seed 0 0 sw\nseed 1 0 se\nseed 0 1 nw\nseed 1 1 ne\n");
    assert!(is_tau_stable(&sq, &sq.seed));
    assert_eq!(min_cut(&sq, &sq.seed), Some(2));
}

/// Cut weights over all bipartitions, enumerated by recursion rather than
/// bit masks.
fn brute_min_cut(sys: &Tas, a: &Assembly) -> Option<u32> {
    let cells: Vec<Pos> = a.positions().collect();
    if cells.len() < 2 {
        return None;
    }
    fn go(sys: &Tas, a: &Assembly, cells: &[Pos], k: usize, side: &mut Vec<bool>, best: &mut u32) {
        if k == cells.len() {
            if side.iter().all(|s| *s) || side.iter().all(|s| !*s) {
                return;
            }
            let mut w = 0;
            for (i, p) in cells.iter().enumerate() {
                for (j, q) in cells.iter().enumerate() {
                    if i < j && side[i] != side[j] {
                        for d in Dir::ALL {
                            if p.step(d) == *q {
                                let tp = sys.tile(a.get(*p).unwrap());
                                let tq = sys.tile(a.get(*q).unwrap());
                                let (gp, gq) = (tp.glue(d), tq.glue(d.opposite()));
                                if sys.glue(gp).label == sys.glue(gq).label {
                                    w += sys.glue(gp).strength;
                                }
                            }
                        }
                    }
                }
            }
            *best = (*best).min(w);
            return;
        }
        for s in [false, true] {
            side.push(s);
            go(sys, a, cells, k + 1, side, best);
            side.pop();
        }
    }
    let mut best = u32::MAX;
    go(sys, a, &cells, 0, &mut Vec::new(), &mut best);
    Some(best)
}

#[test]
fn min_cut_matches_brute_force_and_flow() {
    for seed in 0..60 {
        let t = random_tas(seed, GenParams { temperature: 1, ..GenParams::default() });
        let seq = run_sequence(&t, seed, 9, false);
        for a in seq.prefixes(&t) {
            assert_eq!(min_cut(&t, &a), brute_min_cut(&t, &a));
            assert_eq!(min_cut_by_flow(&t, &a), brute_min_cut(&t, &a));
        }
    }
}

#[test]
fn large_assemblies_use_flow() {
    let t = sys("temperature 2\nglue a 2\ntile r W=a E=a\nseed 0 0 r\n");
    let seq = run_sequence(&t, 1, 30, true);
    let a = seq.result(&t);
    assert_eq!(a.len(), 31);
    assert_eq!(min_cut(&t, &a), Some(2));
    assert!(is_tau_stable(&t, &a));
}

#[test]
fn frontier_examples() {
    let dead = sys("temperature 2\ntile x\nseed 0 0 x\n");
    assert!(frontier(&dead, &dead.seed).is_empty());

    let lin = sys(LINEAR);
    assert_eq!(frontier(&lin, &lin.seed), vec![(Pos::new(1, 0), lin.tile_by_name("r").unwrap())]);

}

#[test]
fn frontier_l_shape_corner() {
    // Three seed tiles form an L; the notch receives one strength-1 glue from
    // each arm.
    let notch = sys("temperature 2\nglue a 1\nglue b 1\nglue s 2\n\
        tile low E=s N=a\ntile mid W=s N=s\ntile high S=s W=b\ntile fill S=a E=b\n\
        seed 0 0 low\nseed 1 0 mid\nseed 1 1 high\n");
    let f = frontier(&notch, &notch.seed);
    assert_eq!(f, vec![(Pos::new(0, 1), notch.tile_by_name("fill").unwrap())]);
    assert_eq!(f, brute_frontier(&notch, &notch.seed));
}

fn brute_frontier(sys: &Tas, a: &Assembly) -> Vec<(Pos, TileId)> {
    let (mut x0, mut x1, mut y0, mut y1) = (i32::MAX, i32::MIN, i32::MAX, i32::MIN);
    for p in a.positions() {
        x0 = x0.min(p.x);
        x1 = x1.max(p.x);
        y0 = y0.min(p.y);
        y1 = y1.max(p.y);
    }
    let mut out = Vec::new();
    for x in x0 - 1..=x1 + 1 {
        for y in y0 - 1..=y1 + 1 {
            let p = Pos::new(x, y);
            if a.contains(p) {
                continue;
            }
            for t in sys.tile_ids() {
                let mut s = 0;
                for (d, (dx, dy)) in [(0, (0, 1)), (1, (1, 0)), (2, (0, -1)), (3, (-1, 0))] {
                    if let Some(u) = a.get(Pos::new(x + dx, y + dy)) {
                        let mine = sys.tile(t).glues[d];
                        let theirs = sys.tile(u).glues[(d + 2) % 4];
                        if mine == theirs {
                            s += sys.strength(mine);
                        }
                    }
                }
                if s >= sys.temperature {
                    out.push((p, t));
                }
            }
        }
    }
    out.sort();
    out
}

#[test]
fn frontier_matches_brute_force() {
    for seed in 0..120 {
        let tau = 1 + (seed % 3) as u32;
        let t = random_tas(seed, GenParams { temperature: tau, max_tiles: 5, ..GenParams::default() });
        for a in producible_set(&t, 3).unwrap() {
            assert_eq!(frontier(&t, &a), brute_frontier(&t, &a));
        }
    }
}

#[test]
fn attach_examples() {
    let lin = sys(LINEAR);
    let r = lin.tile_by_name("r").unwrap();
    let b = attach(&lin, &lin.seed, Pos::new(1, 0), r).unwrap();
    assert_eq!(b.len(), 2);
    assert!(attach(&lin, &b, Pos::new(1, 0), r).is_err());
    let weak = sys("temperature 2\nglue a 1\ntile s E=a\ntile r W=a\nseed 0 0 s\n");
    let err = attach(&weak, &weak.seed, Pos::new(1, 0), weak.tile_by_name("r").unwrap());
    assert!(matches!(err, Err(AtamError::NotInFrontier { .. })));
}

#[test]
fn producible_examples() {
    let lin = sys(LINEAR);
    assert_eq!(producible_set(&lin, 0).unwrap(), BTreeSet::from([lin.seed.clone()]));
    assert_eq!(producible_set(&lin, 1).unwrap().len(), 2);
    let two = sys("temperature 2\nglue a 2\ntile s E=a\ntile x W=a\ntile y W=a N=a\nseed 0 0 s\n");
    assert_eq!(producible_set(&two, 1).unwrap().len(), 3);
    assert!(matches!(
        producible_set_capped(&two, 1, 2),
        Err(AtamError::BudgetExceeded { cap: 2 })
    ));
}

#[test]
fn terminal_examples() {
    let dead = sys("temperature 2\ntile x\nseed 0 0 x\n");
    assert!(is_terminal(&dead, &dead.seed));
    let lin = sys(LINEAR);
    assert!(!is_terminal(&lin, &lin.seed));
    let all = producible_set(&lin, 5).unwrap();
    let maximal: Vec<_> = all.iter().filter(|a| all.iter().all(|b| b == *a || !a.is_subassembly_of(b))).collect();
    assert!(maximal.iter().all(|a| is_terminal(&lin, a)));
}

#[test]
fn directedness_examples() {
    assert_eq!(is_directed_up_to(&sys(LINEAR), 3), Directedness::DirectedSoFar);
    let two = sys("temperature 2\nglue a 2\ntile s E=a\ntile x W=a\ntile y W=a N=a\nseed 0 0 s\n");
    assert_eq!(is_directed_up_to(&two, 2), Directedness::NotDirected);
    let grow = sys("temperature 2\nglue a 2\ntile r W=a E=a\nseed 0 0 r\n");
    assert_eq!(is_directed_up_to(&grow, 3), Directedness::Inconclusive);
}

#[test]
fn directedness_matches_direct_scan() {
    for seed in 0..80 {
        let t = random_tas(seed, GenParams::default());
        let set = producible_set(&t, 3).unwrap();
        let disagree = set.iter().any(|a| {
            set.iter().any(|b| a.iter().any(|(p, x)| b.get(p).is_some_and(|y| y != x)))
        });
        let d = is_directed_up_to(&t, 3);
        assert_eq!(d == Directedness::NotDirected, disagree, "seed {seed}");
    }
}

#[test]
fn sequence_examples() {
    let lin = sys(LINEAR);
    assert!(run_sequence(&lin, 3, 0, false).steps.is_empty());
    for seed in 0..20 {
        let t = random_tas(seed, GenParams::default());
        assert_eq!(run_sequence(&t, 99, 10, false), run_sequence(&t, 99, 10, false));
        assert_eq!(run_sequence(&t, 99, 10, true), run_sequence(&t, 99, 10, true));
    }
    let end = run_sequence(&lin, 5, 1000, true).result(&lin);
    let closure = producible_set(&lin, 10).unwrap();
    let terminal: Vec<_> = closure.iter().filter(|a| is_terminal(&lin, a)).collect();
    assert_eq!(terminal, vec![&end]);
}

#[test]
fn prefixes_are_producible_and_stable() {
    for seed in 0..60 {
        let tau = 1 + (seed % 3) as u32;
        let t = random_tas(seed, GenParams { temperature: tau, max_tiles: 5, ..GenParams::default() });
        let seq = run_sequence(&t, seed * 7 + 1, 4, seed % 2 == 0);
        let set = producible_set(&t, 4).unwrap();
        for a in seq.prefixes(&t) {
            assert!(set.contains(&a));
            assert!(is_tau_stable(&t, &a));
        }
    }
}

#[test]
fn fair_scheduler_serves_oldest_location() {
    // Two independent arms; fairness alternates between them instead of
    // letting one arm run away.
    let t = sys("temperature 2\nglue e 2\nglue w 2\n\
        tile s E=e W=w\ntile re W=e E=e\ntile rw E=w W=w\nseed 0 0 s\n");
    let seq = run_sequence(&t, 11, 10, true);
    let xs: Vec<i32> = seq.steps.iter().map(|(p, _)| p.x.abs()).collect();
    for w in xs.chunks(2) {
        assert_eq!(w[0], w[1]);
    }
}

#[test]
fn dump_is_row_major() {
    let sq = sys("temperature 1\nglue h 1\ntile a E=h N=h\ntile b W=h N=h\ntile c S=h E=h\ntile d S=h W=h\n\
        seed 1 1 d\nseed 0 0 a\nseed 1 0 b\nseed 0 1 c\n");
    assert_eq!(dump_assembly(&sq, &sq.seed), "0 0 a\n1 0 b\n0 1 c\n1 1 d\n");
}

#[test]
fn greedy_producibility_agrees_with_enumeration() {
    for seed in 0..60 {
        let t = random_tas(seed, GenParams { max_tiles: 5, ..GenParams::default() });
        let set = producible_set(&t, 3).unwrap();
        for a in set.iter().filter(|a| a.len() <= 3).take(40) {
            assert!(is_producible(&t, a));
            for p in a.perimeter() {
                for u in t.tile_ids() {
                    let mut b = a.clone();
                    b.insert(p, u);
                    assert_eq!(is_producible(&t, &b), set.contains(&b), "seed {seed}");
                }
            }
            for b in set.iter().step_by(7).take(300) {
                assert_eq!(produces(&t, a, b), a.is_subassembly_of(b));
            }
        }
    }
}
