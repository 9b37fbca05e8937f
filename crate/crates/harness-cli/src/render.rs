//! SVG pictures of assemblies and lattice states.

use std::fmt::Write as _;

use atam_core::{Assembly, Pos, Tas, TileId};
use supertile_engine::{represent_site, Ctx, LatticeState};

const PALETTE: [&str; 8] = ["#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948", "#b07aa1", "#9c755f"];
const UNRESOLVED: &str = "#d9d9d9";
const FRAME_ONLY: &str = "#ffffff";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellState {
    /// Some input arrived but the frame is not finished.
    Unresolved,
    /// Frame complete, no tile chosen.
    FrameOnly,
    Resolved(TileId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub pos: Pos,
    pub state: CellState,
    pub seed: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct Style {
    /// Side length of one cell in pixels.
    pub cell: u32,
    pub labels: bool,
}

impl Default for Style {
    fn default() -> Self {
        Style { cell: 32, labels: true }
    }
}

pub fn assembly_cells(sys: &Tas, a: &Assembly) -> Vec<Cell> {
    a.iter()
        .map(|(pos, t)| Cell { pos, state: CellState::Resolved(t), seed: sys.seed.get(pos) == Some(t) })
        .collect()
}

pub fn lattice_cells(state: &LatticeState) -> Vec<Cell> {
    state
        .sites
        .iter()
        .map(|(&pos, site)| {
            let state = match represent_site(site) {
                Some(t) => CellState::Resolved(t),
                None if site.frozen || site.settled() => CellState::FrameOnly,
                None => CellState::Unresolved,
            };
            Cell { pos, state, seed: site.seed }
        })
        .collect()
}

fn tile_color(t: TileId) -> &'static str {
    PALETTE[t.index() % PALETTE.len()]
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Draws cells on a grid with north up, followed by a legend of states and
/// the tiles that appear.
pub fn render_svg(sys: &Tas, cells: &[Cell], style: Style) -> String {
    let mut cells = cells.to_vec();
    cells.sort_by_key(|c| c.pos.row_major());
    let c = style.cell as i32;
    let (x0, x1, y0, y1) = cells.iter().fold((0, 0, 0, 0), |(a, b, d, e), cell| {
        (a.min(cell.pos.x), b.max(cell.pos.x), d.min(cell.pos.y), e.max(cell.pos.y))
    });
    let grid_w = (x1 - x0 + 1) * c;
    let grid_h = (y1 - y0 + 1) * c;

    let mut tiles: Vec<TileId> = cells
        .iter()
        .filter_map(|cell| match cell.state {
            CellState::Resolved(t) => Some(t),
            _ => None,
        })
        .collect();
    tiles.sort();
    tiles.dedup();
    let legend_rows = 2 + tiles.len() as i32;
    let row = 18;
    let width = (grid_w + 24).max(200);
    let height = grid_h + 24 + legend_rows * row + 12;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="monospace" font-size="11">"#
    );
    let _ = writeln!(out, r##"<rect width="{width}" height="{height}" fill="#fafafa"/>"##);
    out.push_str("<g id=\"grid\">\n");
    for cell in &cells {
        let x = 12 + (cell.pos.x - x0) * c;
        let y = 12 + (y1 - cell.pos.y) * c;
        let (fill, dash) = match cell.state {
            CellState::Unresolved => (UNRESOLVED, ""),
            CellState::FrameOnly => (FRAME_ONLY, r#" stroke-dasharray="4 2""#),
            CellState::Resolved(t) => (tile_color(t), ""),
        };
        let stroke = if cell.seed { 3 } else { 1 };
        let _ = writeln!(
            out,
            r##"<rect x="{x}" y="{y}" width="{c}" height="{c}" fill="{fill}" stroke="#333" stroke-width="{stroke}"{dash}/>"##
        );
        if let (true, CellState::Resolved(t)) = (style.labels, &cell.state) {
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
                x + c / 2,
                y + c / 2 + 4,
                escape(&sys.tile(*t).name)
            );
        }
    }
    out.push_str("</g>\n<g id=\"legend\">\n");
    let mut y = grid_h + 24;
    let mut entry = |out: &mut String, fill: &str, dash: &str, label: &str| {
        let _ = writeln!(
            out,
            r##"<rect x="12" y="{}" width="12" height="12" fill="{fill}" stroke="#333"{dash}/><text x="30" y="{}">{}</text>"##,
            y,
            y + 10,
            escape(label)
        );
        y += row;
    };
    entry(&mut out, UNRESOLVED, "", "unresolved");
    entry(&mut out, FRAME_ONLY, r#" stroke-dasharray="4 2""#, "frame only");
    for t in tiles {
        entry(&mut out, tile_color(t), "", &format!("tile {}", sys.tile(t).name));
    }
    out.push_str("</g>\n</svg>\n");
    out
}

/// Renders the current state of a lattice run.
pub fn render_lattice(ctx: &Ctx, state: &LatticeState, style: Style) -> String {
    render_svg(&ctx.sys, &lattice_cells(state), style)
}
