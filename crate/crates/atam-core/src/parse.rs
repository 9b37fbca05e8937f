use std::fmt::Write as _;

use thiserror::Error;

use crate::geom::Pos;
use crate::model::{Assembly, Glue, GlueId, Tas, TileType};

/// Errors from reading a TAS document. Line numbers are 1-based; line 0 marks
/// systems built programmatically.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TasError {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: duplicate tile name {name}")]
    DuplicateTileName { line: usize, name: String },
    #[error("line {line}: tile {name} repeats the glue quadruple of an earlier tile")]
    DuplicateQuadruple { line: usize, name: String },
    #[error("line {line}: glue {label}: label shared between unequal strengths")]
    UnequalStrengths { line: usize, label: String },
    #[error("line {line}: glue {label} has strength above the temperature")]
    StrengthAboveTemperature { line: usize, label: String },
    #[error("line {line}: seed not τ-stable")]
    UnstableSeed { line: usize },
}

impl TasError {
    pub(crate) fn syntax(line: usize, msg: impl Into<String>) -> Self {
        TasError::Syntax { line, msg: msg.into() }
    }

    pub fn line(&self) -> usize {
        match self {
            TasError::Syntax { line, .. }
            | TasError::DuplicateTileName { line, .. }
            | TasError::DuplicateQuadruple { line, .. }
            | TasError::UnequalStrengths { line, .. }
            | TasError::StrengthAboveTemperature { line, .. }
            | TasError::UnstableSeed { line } => *line,
        }
    }

    fn at(self, line: usize) -> Self {
        match self {
            TasError::Syntax { msg, .. } => TasError::Syntax { line, msg },
            TasError::DuplicateTileName { name, .. } => TasError::DuplicateTileName { line, name },
            TasError::DuplicateQuadruple { name, .. } => TasError::DuplicateQuadruple { line, name },
            TasError::UnequalStrengths { label, .. } => TasError::UnequalStrengths { line, label },
            TasError::StrengthAboveTemperature { label, .. } => {
                TasError::StrengthAboveTemperature { line, label }
            }
            TasError::UnstableSeed { .. } => TasError::UnstableSeed { line },
        }
    }
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, TasError> {
    let tok = tok.ok_or_else(|| TasError::syntax(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| TasError::syntax(line, format!("bad {what} {tok:?}")))
}

/// Parses the line-oriented TAS format.
///
/// ```text
/// temperature 2
/// glue a 2
/// tile seed E=a
/// tile right W=a
/// seed 0 0 seed
/// ```
pub fn parse_tas(text: &str) -> Result<Tas, TasError> {
    let mut temperature: Option<(u32, usize)> = None;
    let mut glues: Vec<(Glue, usize)> = vec![(Glue::null(), 0)];
    let mut tiles: Vec<(TileType, usize)> = Vec::new();
    let mut seeds: Vec<(Pos, String, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        let keyword = toks.next().unwrap_or_default();
        match keyword {
            "temperature" => {
                if temperature.is_some() {
                    return Err(TasError::syntax(line, "temperature given twice"));
                }
                let tau: u32 = parse_num(toks.next(), line, "temperature")?;
                if tau == 0 {
                    return Err(TasError::syntax(line, "temperature must be positive"));
                }
                temperature = Some((tau, line));
            }
            "glue" => {
                let label = toks
                    .next()
                    .ok_or_else(|| TasError::syntax(line, "missing glue label"))?;
                let strength: u32 = parse_num(toks.next(), line, "strength")?;
                if label == "null" {
                    if strength != 0 {
                        return Err(TasError::UnequalStrengths { line, label: label.into() });
                    }
                    continue;
                }
                match glues.iter().find(|(g, _)| g.label == label) {
                    Some((g, _)) if g.strength != strength => {
                        return Err(TasError::UnequalStrengths { line, label: label.into() })
                    }
                    Some(_) => {}
                    None => glues.push((Glue::new(label, strength), line)),
                }
            }
            "tile" => {
                let name = toks
                    .next()
                    .ok_or_else(|| TasError::syntax(line, "missing tile name"))?;
                let mut sides = [GlueId::NULL; 4];
                let mut given = [false; 4];
                for tok in toks.by_ref() {
                    let (key, label) = tok
                        .split_once('=')
                        .ok_or_else(|| TasError::syntax(line, format!("bad side {tok:?}")))?;
                    let d = match key {
                        "N" => 0,
                        "E" => 1,
                        "S" => 2,
                        "W" => 3,
                        _ => return Err(TasError::syntax(line, format!("bad side {key:?}"))),
                    };
                    if given[d] {
                        return Err(TasError::syntax(line, format!("side {key} given twice")));
                    }
                    given[d] = true;
                    let gid = glues
                        .iter()
                        .position(|(g, _)| g.label == label)
                        .ok_or_else(|| TasError::syntax(line, format!("undeclared glue {label:?}")))?;
                    sides[d] = GlueId(gid as u16);
                }
                if let Some((_, _)) = tiles.iter().find(|(t, _)| t.name == name) {
                    return Err(TasError::DuplicateTileName { line, name: name.into() });
                }
                if tiles.iter().any(|(t, _)| t.glues == sides) {
                    return Err(TasError::DuplicateQuadruple { line, name: name.into() });
                }
                tiles.push((TileType::new(name, sides), line));
            }
            "seed" => {
                let x: i32 = parse_num(toks.next(), line, "x")?;
                let y: i32 = parse_num(toks.next(), line, "y")?;
                let name = toks
                    .next()
                    .ok_or_else(|| TasError::syntax(line, "missing seed tile"))?;
                seeds.push((Pos::new(x, y), name.to_string(), line));
            }
            other => return Err(TasError::syntax(line, format!("unknown keyword {other:?}"))),
        }
        if let Some(extra) = toks.next() {
            return Err(TasError::syntax(line, format!("unexpected token {extra:?}")));
        }
    }

    let (tau, _) = temperature.ok_or_else(|| TasError::syntax(0, "missing temperature"))?;
    if let Some((g, line)) = glues.iter().find(|(g, _)| g.strength > tau) {
        return Err(TasError::StrengthAboveTemperature { line: *line, label: g.label.clone() });
    }
    let mut seed = Assembly::new();
    let mut last_seed_line = 0;
    for (p, name, line) in &seeds {
        let t = tiles
            .iter()
            .position(|(t, _)| &t.name == name)
            .ok_or_else(|| TasError::syntax(*line, format!("unknown seed tile {name:?}")))?;
        if seed.insert(*p, crate::model::TileId(t as u16)).is_some() {
            return Err(TasError::syntax(*line, format!("seed position {p} used twice")));
        }
        last_seed_line = *line;
    }
    if seed.is_empty() {
        return Err(TasError::syntax(0, "missing seed"));
    }
    let glue_list = glues.into_iter().skip(1).map(|(g, _)| g).collect();
    let tile_list = tiles.into_iter().map(|(t, _)| t).collect();
    Tas::new(tau, glue_list, tile_list, seed).map_err(|e| e.at(last_seed_line))
}

/// One `<x> <y> <tile>` line per tile, sorted by (y, x).
pub fn dump_assembly(sys: &Tas, a: &Assembly) -> String {
    let mut rows: Vec<_> = a.iter().collect();
    rows.sort_by_key(|(p, _)| p.row_major());
    let mut out = String::new();
    for (p, t) in rows {
        let _ = writeln!(out, "{} {} {}", p.x, p.y, sys.tile(t).name);
    }
    out
}

/// Writes a system back in the text format accepted by [`parse_tas`].
pub fn write_tas(sys: &Tas) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "temperature {}", sys.temperature);
    for g in sys.glues.iter().skip(1) {
        let _ = writeln!(out, "glue {} {}", g.label, g.strength);
    }
    for t in &sys.tiles {
        let _ = write!(out, "tile {}", t.name);
        for (k, g) in ["N", "E", "S", "W"].iter().zip(t.glues) {
            if g != GlueId::NULL {
                let _ = write!(out, " {}={}", k, sys.glue(g).label);
            }
        }
        out.push('\n');
    }
    let mut seeds: Vec<_> = sys.seed.iter().collect();
    seeds.sort_by_key(|(p, _)| p.row_major());
    for (p, t) in seeds {
        let _ = writeln!(out, "seed {} {} {}", p.x, p.y, sys.tile(t).name);
    }
    out
}
