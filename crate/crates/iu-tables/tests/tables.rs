use std::collections::BTreeSet;

use atam_core::gen::{random_tas, GenParams};
use atam_core::{parse_tas, Assembly, Dir, Glue, GlueId, Pos, Tas, TileId, TileType};
use iu_tables::*;

fn sys(text: &str) -> Tas {
    parse_tas(text).unwrap()
}

/// `n` glues `x0..`, one tile per glue on its north side, plus `extra` tiles
/// that mix glues around the sides.
fn system_with_glues(n: usize, extra: usize, tau: u32) -> Tas {
    let glues: Vec<Glue> = (0..n).map(|i| Glue::new(format!("x{i}"), 1 + (i as u32 % tau))).collect();
    let id = |i: usize| GlueId(1 + (i % n) as u16);
    let mut tiles: Vec<TileType> =
        (0..n).map(|i| TileType::new(format!("n{i}"), [id(i), GlueId::NULL, GlueId::NULL, GlueId::NULL])).collect();
    for k in 0..extra {
        tiles.push(TileType::new(format!("m{k}"), [id(k), id(k + 1), id(2 * k + 1), id(3 * k + 2)]));
    }
    let mut seen = BTreeSet::new();
    tiles.retain(|t| seen.insert(t.glues));
    Tas::new(tau, glues, tiles, Assembly::single(Pos::new(0, 0), TileId(0))).unwrap()
}

fn all_quads(g: u16) -> impl Iterator<Item = [u16; 4]> {
    (0..g).flat_map(move |n| (0..g).flat_map(move |e| (0..g).flat_map(move |s| (0..g).map(move |w| [n, e, s, w]))))
}

#[test]
fn glue_table_sizes() {
    let t = sys("temperature 2\nglue b 1\nglue a 2\ntile x N=b E=a\nseed 0 0 x\n");
    let gt = build_glue_table(&t);
    assert_eq!((gt.g(), gt.bits()), (3, 2));
    assert_eq!(gt.glues()[0], GlueId::NULL);
    assert_eq!(t.glue(gt.glues()[1]).label, "a");

    let bare = sys("temperature 2\ntile x\nseed 0 0 x\n");
    let gt = build_glue_table(&bare);
    assert_eq!((gt.g(), gt.bits()), (1, 1));

    let five = system_with_glues(5, 0, 2);
    let gt = build_glue_table(&five);
    assert_eq!((gt.g(), gt.bits()), (6, 3));
}

#[test]
fn glue_table_skips_unused_glues() {
    let t = sys("temperature 2\nglue a 2\nglue unused 1\ntile x N=a\nseed 0 0 x\n");
    assert_eq!(build_glue_table(&t).g(), 2);
}

#[test]
fn glue_bin_examples() {
    let t = sys("temperature 2\nglue a 1\nglue b 2\ntile x N=a S=b\nseed 0 0 x\n");
    let gt = build_glue_table(&t);
    assert_eq!(gt.glue_bin(GlueId::NULL).unwrap(), "00");
    assert_eq!(gt.glue_bin(t.glue_by_label("a").unwrap()).unwrap(), "01");
    let five = system_with_glues(5, 0, 2);
    let gt5 = build_glue_table(&five);
    assert_eq!(gt5.glue_bin(gt5.glues()[5]).unwrap(), "101");
    assert_eq!(gt.glue_bin(GlueId(9)), Err(TableError::UnknownGlue(GlueId(9))));
}

#[test]
fn address_examples() {
    let t = sys("temperature 2\nglue a 1\nglue b 2\ntile x N=a S=b\nseed 0 0 x\n");
    let gt = build_glue_table(&t);
    let a = t.glue_by_label("a").unwrap();
    let b = t.glue_by_label("b").unwrap();
    let n = GlueId::NULL;
    assert_eq!(gt.address_of([n, n, n, n]).unwrap().digits(), &[0, 0]);
    let addr = gt.address_of([a, n, b, n]).unwrap();
    assert_eq!(addr.digits(), &[0x2, 0x8]);
    assert_eq!(addr.hex(), "28");
    assert_eq!(addr.slot(), 0x28);
    assert!(gt.address_of([GlueId(7), n, n, n]).is_err());
}

#[test]
fn address_round_trip_up_to_six_glues() {
    for n in 1..=5 {
        let t = system_with_glues(n, 0, 2);
        let gt = build_glue_table(&t);
        assert_eq!(gt.g(), n + 1);
        let mut seen = BTreeSet::new();
        for idx in all_quads(gt.g() as u16) {
            let quad = idx.map(|i| gt.glue_at(i).unwrap());
            let addr = gt.address_of(quad).unwrap();
            assert_eq!(addr.indices(), idx);
            assert_eq!(gt.address_to_quadruple(&addr), Some(quad));
            assert_eq!(Address::from_slot(addr.slot(), gt.bits()), addr);
            assert!(seen.insert(addr.slot()));
        }
    }
}

#[test]
fn slot_order_is_lexicographic_by_bit() {
    let t = system_with_glues(3, 0, 2);
    let gt = build_glue_table(&t);
    let mut quads: Vec<[u16; 4]> = all_quads(4).collect();
    // most significant glue bit first, north before east before south before west
    let key = |q: &[u16; 4]| -> Vec<u16> { (0..2).rev().flat_map(|b| q.map(|i| i >> b & 1)).collect() };
    quads.sort_by_key(key);
    let slots: Vec<u64> = quads.iter().map(|q| Address::from_indices(*q, gt.bits()).slot()).collect();
    assert!(slots.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn validly_addresses_examples() {
    let t = sys("temperature 2\nglue a 1\nglue b 2\ntile x N=a E=a S=b\nseed 0 0 x\n");
    let a = t.glue_by_label("a").unwrap();
    let n = GlueId::NULL;
    let tile = &t.tiles[0];
    assert!(validly_addresses(&t, &[a, a, n, n], tile));
    assert!(!validly_addresses(&t, &[a, n, n, n], tile));
    assert!(validly_addresses(&t, &tile.glues, tile));
}

#[test]
fn single_tile_own_address_has_one_entry() {
    let t = sys(
        "temperature 2\nglue a 2\nglue b 2\nglue c 2\nglue d 2\ntile x N=a E=b S=c W=d\nseed 0 0 x\n",
    );
    let table = build_lookup_table(&t).unwrap();
    let addr = table.glue_table().address_of(t.tiles[0].glues).unwrap();
    assert_eq!(table.entries(&addr), &[TileId(0)]);
}

#[test]
fn counts_section_has_one_hash_per_slot() {
    for n in [1, 2, 3, 4] {
        let t = system_with_glues(n, 2, 2);
        let table = build_lookup_table(&t).unwrap();
        let slots = table.glue_table().slot_count() as usize;
        assert!(slots >= table.glue_table().g().pow(4));
        let (tape, geo) = table.tape(&t);
        assert_eq!(geo.hashes.len(), 2 * slots);
        assert_eq!(tape.matches('#').count(), 2 * slots);
        let counts_end = geo.rng_region.0;
        assert_eq!(geo.hashes.iter().filter(|h| **h < counts_end).count(), slots);
        assert_eq!(geo.len, tape.len());
        assert!(tape.chars().all(|c| "#.01_".contains(c) || c.is_ascii_hexdigit()));
        // every information cell is followed by a spacer
        let cells: Vec<char> = tape.chars().collect();
        for h in &geo.hashes {
            assert_eq!(cells[h + 1], '_');
        }
        let dots = geo.dots.len();
        let expected: usize = table.iter().map(|(_, e)| e.len().saturating_sub(1)).sum();
        assert_eq!(dots, expected);
    }
}

#[test]
fn tape_counts_decode() {
    let t = system_with_glues(2, 2, 1);
    let table = build_lookup_table(&t).unwrap();
    let (tape, geo) = table.tape(&t);
    let cells: Vec<char> = tape.chars().collect();
    for (i, (_, entries)) in table.iter().enumerate() {
        let start = geo.hashes[i] + 2;
        let bits: String = (0..geo.count_bits).map(|k| cells[start + 2 * k]).collect();
        assert_eq!(usize::from_str_radix(&bits, 2).unwrap(), entries.len());
    }
}

#[test]
fn table_cap() {
    let t = system_with_glues(4, 0, 2);
    assert_eq!(
        build_lookup_table_capped(&t, 100).unwrap_err(),
        TableError::TooLarge { slots: 4096, cap: 100 }
    );
}

#[test]
fn membership_matches_brute_force() {
    let params = GenParams { max_tiles: 6, max_glues: 3, temperature: 2, null_bias: 0.3 };
    for seed in 0..60 {
        let t = random_tas(seed, params);
        let table = build_lookup_table(&t).unwrap();
        let gt = table.glue_table();
        assert!(gt.g() <= 4);
        for (slot, entries) in table.iter() {
            let addr = Address::from_slot(slot, gt.bits());
            let Some(quad) = gt.address_to_quadruple(&addr) else {
                assert!(entries.is_empty());
                continue;
            };
            let want: Vec<TileId> =
                t.tile_ids().filter(|id| validly_addresses(&t, &quad, t.tile(*id))).collect();
            let mut got = entries.to_vec();
            got.sort();
            assert_eq!(got, want, "seed {seed} slot {slot:x}");
        }
    }
}

#[test]
fn entries_sorted_by_tile_address() {
    let t = system_with_glues(3, 4, 1);
    let table = build_lookup_table(&t).unwrap();
    let gt = table.glue_table();
    for (_, entries) in table.iter() {
        let slots: Vec<u64> = entries.iter().map(|e| gt.address_of(t.tile(*e).glues).unwrap().slot()).collect();
        assert!(slots.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn scale_formula_at_small_g() {
    assert_eq!(max_entries_formula(2), 65);
    for g in [2u16, 3, 4] {
        let cats = category_entries(g);
        let total: u64 = cats.iter().map(|c| c.1).sum();
        assert_eq!(total, max_entries_formula(g as u64), "g={g}");
        let g = g as u64;
        let caps = [0, g.pow(3), g.pow(2), g, 1];
        for k in 1..=4 {
            assert_eq!(cats[k].0, caps[k], "g={g} k={k}");
        }
    }
}

#[test]
fn complete_tile_set_on_one_glue_reaches_65() {
    // Every quadruple over {null, a}; with τ=1 and a of strength 1 an address
    // is charged exactly the tiles that carry all of its glues.
    let n = GlueId::NULL;
    let a = GlueId(1);
    let tiles: Vec<TileType> = all_quads(2)
        .filter(|q| q.iter().any(|i| *i != 0))
        .map(|q| TileType::new(format!("{q:?}"), q.map(|i| if i == 1 { a } else { n })))
        .collect();
    let t = Tas::new(1, vec![Glue::new("a", 1)], tiles, Assembly::single(Pos::new(0, 0), TileId(0))).unwrap();
    let table = build_lookup_table(&t).unwrap();
    let gt = table.glue_table();
    let mut total = 0;
    for idx in all_quads(2) {
        let addr = Address::from_indices(idx, gt.bits());
        let quad = gt.address_to_quadruple(&addr).unwrap();
        let agreeing = table
            .entries(&addr)
            .iter()
            .filter(|e| (0..4).all(|d| quad[d] == n || t.tile(**e).glues[d] == quad[d]))
            .count();
        total += agreeing;
    }
    assert_eq!(total, 65);
}

#[test]
fn mismatch_tolerant_addressing_can_exceed_category_caps() {
    // Under the addressing rule a strength-τ glue alone admits the tile, so
    // the all-a address (k=4, cap 1) lists both tiles.
    let t = sys("temperature 2\nglue a 2\ntile x N=a\ntile y N=a E=a\nseed 0 0 x\n");
    let table = build_lookup_table(&t).unwrap();
    let a = t.glue_by_label("a").unwrap();
    let addr = table.glue_table().address_of([a; 4]).unwrap();
    assert_eq!(table.count(&addr), 2);
}

#[test]
fn lookup_examples() {
    let t = sys("temperature 1\nglue a 1\nglue b 1\ntile t1 N=a\ntile t2 N=a E=b\ntile t3 N=a S=b\nseed 0 0 t1\n");
    let table = build_lookup_table(&t).unwrap();
    let a = t.glue_by_label("a");
    // slots 0x08, 0x48, 0x28 for t1, t2, t3
    let (tile, n) = lookup(&table, [a, None, None, None], 5).unwrap();
    assert_eq!((t.tile(tile).name.as_str(), n), ("t2", 3));
    assert_eq!(lookup(&table, [a, None, None, None], 0).unwrap().0, TileId(0));

    let t2 = sys("temperature 3\nglue a 1\nglue b 1\nglue c 2\ntile x N=a S=b W=c\nseed 0 0 x\n");
    let table2 = build_lookup_table(&t2).unwrap();
    let (a, b) = (t2.glue_by_label("a"), t2.glue_by_label("b"));
    assert_eq!(lookup(&table2, [a, None, b, None], 0), None);
    for r in 0..7 {
        assert_eq!(lookup(&table2, [a, None, None, t2.glue_by_label("c")], r), Some((TileId(0), 1)));
    }
}

#[test]
fn lookup_result_is_validly_addressed() {
    let params = GenParams { max_tiles: 6, max_glues: 3, temperature: 2, null_bias: 0.3 };
    for seed in 0..40 {
        let t = random_tas(seed, params);
        let table = build_lookup_table(&t).unwrap();
        for tile in &t.tiles {
            for mask in 1u8..16 {
                let collected: [Option<GlueId>; 4] =
                    std::array::from_fn(|d| (mask >> d & 1 == 1).then_some(tile.glues[d]));
                let sum: u32 = (0..4).filter(|d| mask >> d & 1 == 1).map(|d| t.strength(tile.glues[d])).sum();
                if sum < t.temperature {
                    continue;
                }
                let quad = collected.map(|g| g.unwrap_or(GlueId::NULL));
                for r in 0..4 {
                    let (got, n) = lookup(&table, collected, r).expect("a matching tile exists");
                    assert!(n >= 1);
                    assert!(validly_addresses(&t, &quad, t.tile(got)));
                }
            }
        }
    }
}

#[test]
fn dual_lookup_examples() {
    let t = sys(
        "temperature 2\nglue n 1\nglue s 1\nglue e 1\nglue w 2\ntile x N=n S=s E=e\ntile y W=w\nseed 0 0 x\n",
    );
    let table = build_lookup_table(&t).unwrap();
    let g = |l: &str| t.glue_by_label(l);
    let (hit, pair) = dual_lookup(&table, [g("n"), None, g("s"), None], Dir::N, 0);
    assert!(pair);
    assert_eq!(hit.unwrap().0, TileId(0));

    let (_, pair) = dual_lookup(&table, [g("n"), None, g("e"), None], Dir::N, 0);
    assert!(!pair);

    // three glues address x, the north/south pair alone does not
    let (hit, pair) = dual_lookup(&table, [g("n"), g("e"), g("w"), None], Dir::N, 0);
    assert_eq!(hit.map(|h| h.0), Some(TileId(0)));
    assert!(!pair);
}

#[test]
fn probe_table_examples() {
    let t = sys(
        "temperature 2\nglue n 2\nglue s 1\nglue h1 1\nglue h2 1\nglue lone 1\n\
         tile x N=h1 S=s\ntile y N=h2 S=s\ntile z N=n\ntile w S=lone E=h1\nseed 0 0 x\n",
    );
    let gt = build_glue_table(&t);
    let g = |l: &str| t.glue_by_label(l).unwrap();
    let slot = |l: &str| ProbeSlot::Glue(gt.index_of(g(l)).unwrap());
    assert_eq!(
        build_probe_table(&t, &gt, Dir::N, g("n")).unwrap(),
        BTreeSet::from([slot("n"), ProbeSlot::Tau])
    );
    assert_eq!(build_probe_table(&t, &gt, Dir::N, g("h1")).unwrap(), BTreeSet::from([slot("h1")]));
    assert!(build_probe_table(&t, &gt, Dir::S, g("lone")).unwrap().is_empty());
    assert_eq!(
        build_probe_table(&t, &gt, Dir::S, g("s")).unwrap(),
        BTreeSet::from([slot("h1"), slot("h2")])
    );
}

#[test]
fn probe_slots_meet_iff_opposite_pair_binds() {
    let params = GenParams { max_tiles: 6, max_glues: 4, temperature: 2, null_bias: 0.3 };
    for seed in 0..80 {
        let t = random_tas(seed, params);
        let gt = build_glue_table(&t);
        for (side, opp) in [(Dir::N, Dir::S), (Dir::E, Dir::W)] {
            for &x in gt.glues() {
                for &y in gt.glues() {
                    let a: BTreeSet<ProbeSlot> = build_probe_table(&t, &gt, side, x)
                        .unwrap()
                        .into_iter()
                        .filter(|s| *s != ProbeSlot::Tau)
                        .collect();
                    let b = build_probe_table(&t, &gt, opp, y).unwrap();
                    let meet = a.iter().any(|s| b.contains(s));
                    let binds = t.tiles.iter().any(|tile| {
                        tile.glue(side) == x
                            && tile.glue(opp) == y
                            && t.strength(x) + t.strength(y) >= t.temperature
                    });
                    assert_eq!(meet, binds, "seed {seed} {side:?} {x:?} {y:?}");
                }
            }
        }
    }
}

#[test]
fn probe_spacing_and_offsets() {
    for seed in 0..40 {
        let t = random_tas(seed, GenParams { max_tiles: 8, max_glues: 6, ..GenParams::default() });
        let gt = build_glue_table(&t);
        let pt = ProbeTable::new(&gt, t.tiles.len());
        assert!(pt.spacing >= 2 * pt.crawler_width);
        assert!(pt.spacing >= t.tiles.len());
        let mut offsets: Vec<usize> =
            (0..gt.g() as u16).map(|i| pt.offset(ProbeSlot::Glue(i))).collect();
        offsets.push(pt.offset(ProbeSlot::Tau));
        assert!(offsets.windows(2).all(|w| w[1] - w[0] >= pt.spacing));
        assert!(*offsets.last().unwrap() < pt.region_len());
        assert_eq!(pt.render(&t, &gt).lines().count(), gt.g() + 1);
    }
}

#[test]
fn layout_regions_in_order() {
    let t = system_with_glues(3, 3, 2);
    let layout = superside_layout(&t).unwrap();
    let names: Vec<&str> = layout.regions.iter().map(|r| r.name).collect();
    assert_eq!(
        &names[..11],
        ["frame", "glue", "glue", "lookup", "blank", "probe-region", "probe-table", "lookup", "glue", "glue", "frame"]
    );
    for w in layout.regions.windows(2) {
        assert_eq!(w[0].start + w[0].len, w[1].start);
    }
    let len = |i: usize| layout.regions[i].len;
    assert_eq!(len(4), len(5) + len(6));
    assert_eq!(len(3), len(7));
    let last = layout.regions.last().unwrap();
    assert_eq!(last.start + last.len, layout.m);
    assert_eq!(layout.render().lines().count(), layout.regions.len());
}

#[test]
fn m_is_odd() {
    for seed in 0..60 {
        let t = random_tas(seed, GenParams::default());
        assert_eq!(superside_layout(&t).unwrap().m % 2, 1);
    }
    for n in 1..6 {
        assert_eq!(superside_layout(&system_with_glues(n, n, 2)).unwrap().m % 2, 1);
    }
}

#[test]
fn m_over_g4_log_g_is_bounded() {
    let mut ratios = Vec::new();
    for g in 2..=8usize {
        let t = system_with_glues(g - 1, g, 2);
        let layout = superside_layout(&t).unwrap();
        let gt = layout.lookup.glue_table();
        assert_eq!(gt.g(), g);
        let ratio = layout.m as f64 / (g.pow(4) as f64 * gt.bits() as f64);
        ratios.push(ratio);
    }
    // padding to 2^(4L) slots makes the ratio jump at g = 5
    assert!(ratios.iter().all(|r| *r < 100.0), "{ratios:?}");
}
