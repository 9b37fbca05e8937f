//! Seeded random tile assembly systems for oracle and property tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::Pos;
use crate::model::{Assembly, Glue, GlueId, Tas, TileId, TileType};

#[derive(Debug, Clone, Copy)]
pub struct GenParams {
    pub max_tiles: usize,
    pub max_glues: usize,
    pub temperature: u32,
    /// Chance that a side carries null instead of a drawn glue.
    pub null_bias: f64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams { max_tiles: 4, max_glues: 3, temperature: 2, null_bias: 0.35 }
    }
}

/// Draws a system whose seed is a single tile at the origin. The same seed
/// always yields the same system.
pub fn random_tas(seed: u64, params: GenParams) -> Tas {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tau = params.temperature.max(1);
    let n_glues = rng.gen_range(1..=params.max_glues.max(1));
    let glues: Vec<Glue> = (0..n_glues)
        .map(|i| Glue::new(format!("g{i}"), rng.gen_range(1..=tau)))
        .collect();
    let n_tiles = rng.gen_range(1..=params.max_tiles.max(1));
    let mut tiles: Vec<TileType> = Vec::new();
    let mut attempts = 0;
    while tiles.len() < n_tiles && attempts < 200 {
        attempts += 1;
        let mut sides = [GlueId::NULL; 4];
        for s in sides.iter_mut() {
            if !rng.gen_bool(params.null_bias) {
                *s = GlueId(rng.gen_range(1..=n_glues as u16));
            }
        }
        if tiles.iter().all(|t| t.glues != sides) {
            tiles.push(TileType::new(format!("t{}", tiles.len()), sides));
        }
    }
    tiles.shuffle(&mut rng);
    for (i, t) in tiles.iter_mut().enumerate() {
        t.name = format!("t{i}");
    }
    let seed_tile = Assembly::single(Pos::new(0, 0), TileId(0));
    Tas::new(tau, glues, tiles, seed_tile).expect("generated system is valid")
}
