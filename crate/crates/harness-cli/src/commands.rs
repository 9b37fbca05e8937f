use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use atam_core::{dump_assembly, parse_tas, GlueId, producible_set_capped, run_sequence, Assembly, Pos, Tas};
use block_sim::{check_simulation, parse_rep, BlockSimulator, CheckConfig, IdentityRep, SimReport};
use iu_tables::{build_lookup_table_capped, max_entries_formula, superside_layout, Address, LookupTable};
use supertile_engine::{run_lattice, run_once, Ctx, LatticeRun, LatticeSim, Mode};

use crate::cli::{CheckSimArgs, IuRunArgs, IuTablesArgs, ModeArg, RenderArgs, RunArgs};
use crate::error::CliError;
use crate::render::{assembly_cells, render_lattice, render_svg, Style};

/// Verdict of a subcommand that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Failed,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Failed => 1,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

pub fn load_tas(path: &Path) -> Result<Tas, CliError> {
    parse_tas(&read(path)?).map_err(|source| CliError::Tas { path: path.into(), source })
}

/// Writes `name` under `out`, or prints it to stdout when there is no
/// output directory.
fn emit(out: Option<&Path>, name: &str, content: &str) -> Result<(), CliError> {
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.into(), source })?;
            let path = dir.join(name);
            fs::write(&path, content).map_err(|source| CliError::Io { path, source })
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Reads `<x> <y> <tile>` lines back into an assembly.
pub fn parse_dump(sys: &Tas, text: &str) -> Result<Assembly, String> {
    let mut a = Assembly::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let parsed = match parts.as_slice() {
            [x, y, name] => x.parse().ok().zip(y.parse().ok()).zip(sys.tile_by_name(name)),
            _ => None,
        };
        let ((x, y), t) = parsed.ok_or_else(|| format!("line {}: expected `<x> <y> <tile>`", i + 1))?;
        a.insert(Pos::new(x, y), t);
    }
    Ok(a)
}

pub fn cmd_run(args: &RunArgs) -> Result<Status, CliError> {
    let sys = load_tas(&args.system)?;
    let out = args.config.out.as_deref();
    let last = if args.all {
        let all = producible_set_capped(&sys, args.config.depth, args.config.cap_assemblies)?;
        let mut text = String::new();
        for (i, a) in all.iter().enumerate() {
            let _ = writeln!(text, "# assembly {i} ({} tiles)", a.len());
            text.push_str(&dump_assembly(&sys, a));
        }
        emit(out, "assemblies.txt", &text)?;
        all.into_iter().max_by_key(Assembly::len).expect("the seed is producible")
    } else {
        let seq = run_sequence(&sys, args.config.seed, args.steps.unwrap_or(args.config.depth), false);
        let mut text = String::new();
        for (i, (p, t)) in seq.steps.iter().enumerate() {
            let _ = writeln!(text, "step {} {} {} {}", i + 1, p.x, p.y, sys.tile(*t).name);
        }
        let result = seq.result(&sys);
        if out.is_some() {
            emit(out, "sequence.txt", &text)?;
        }
        emit(out, "assembly.txt", &dump_assembly(&sys, &result))?;
        result
    };
    if args.svg {
        let svg = render_svg(&sys, &assembly_cells(&sys, &last), Style::default());
        emit(Some(out.unwrap_or(Path::new("."))), "run.svg", &svg)?;
    }
    Ok(Status::Pass)
}

pub fn cmd_check_sim(args: &CheckSimArgs) -> Result<(Status, SimReport), CliError> {
    let target = load_tas(&args.target)?;
    let depth = args.config.depth;
    let cap = args.config.cap_assemblies;
    let report = if args.iu {
        let sim = LatticeSim::new(Ctx::new(target.clone())?)?;
        check_simulation(&sim, &target, depth, cap)?
    } else if args.identity {
        let sim = BlockSimulator::new(target.clone(), IdentityRep, CheckConfig::default(), args.temperature);
        check_simulation(&sim, &target, depth, cap)?
    } else {
        let (Some(s_path), Some(r_path)) = (&args.simulator, &args.rep) else {
            return Err(CliError::Usage("check-sim needs --iu, --identity, or --simulator with --rep".into()));
        };
        let simulator = load_tas(s_path)?;
        let rep = parse_rep(&read(r_path)?, &simulator, &target)
            .map_err(|source| CliError::Rep { path: r_path.clone(), source })?;
        let config = CheckConfig { cap, ..CheckConfig::default() };
        let sim = BlockSimulator::new(simulator, rep, config, args.temperature);
        check_simulation(&sim, &target, depth, cap)?
    };
    let status = if report.passed() { Status::Pass } else { Status::Failed };
    if let Some(dir) = args.config.out.as_deref() {
        emit(Some(dir), "report.txt", &report.to_string())?;
        if let Some(c) = &report.counterexample {
            emit(Some(dir), "counterexample-simulator.txt", &c.simulator)?;
            emit(Some(dir), "counterexample-simulated.txt", &c.simulated)?;
        }
    }
    Ok((status, report))
}

pub fn cmd_iu_tables(args: &IuTablesArgs) -> Result<Status, CliError> {
    let sys = load_tas(&args.system)?;
    build_lookup_table_capped(&sys, args.cap_slots)?;
    let layout = superside_layout(&sys)?;
    let glues = layout.lookup.glue_table();
    let (tape, geometry) = layout.lookup.tape(&sys);
    let g = glues.g() as u64;
    let mut sizes = String::new();
    let _ = writeln!(sizes, "g {g}");
    let _ = writeln!(sizes, "L {}", glues.bits());
    let _ = writeln!(sizes, "m {}", layout.m);
    let _ = writeln!(sizes, "tiles {}", sys.tiles.len());
    let _ = writeln!(sizes, "slots {}", glues.slot_count());
    let _ = writeln!(sizes, "entries {}", layout.lookup.total_entries());
    let _ = writeln!(sizes, "entries-agreeing {}", agreeing_entries(&sys, &layout.lookup));
    let _ = writeln!(sizes, "entries-bound {}", max_entries_formula(g));
    let _ = writeln!(sizes, "tape-length {}", geometry.len);
    let out = args.out.as_deref();
    if out.is_some() {
        let mut tape = tape;
        tape.push('\n');
        emit(out, "lookup.tape", &tape)?;
        emit(out, "probes.txt", &layout.probes.render(&sys, glues))?;
        emit(out, "layout.txt", &layout.render())?;
    }
    emit(out, "sizes.txt", &sizes)?;
    Ok(Status::Pass)
}

/// Entries whose tile carries every non-null glue of its address. The
/// closed-form bound counts these.
fn agreeing_entries(sys: &Tas, table: &LookupTable) -> usize {
    let glues = table.glue_table();
    table
        .iter()
        .map(|(slot, entries)| {
            let Some(quad) = glues.address_to_quadruple(&Address::from_slot(slot, glues.bits())) else {
                return 0;
            };
            entries
                .iter()
                .filter(|t| (0..4).all(|d| quad[d] == GlueId::NULL || sys.tile(**t).glues[d] == quad[d]))
                .count()
        })
        .sum()
}

/// Resolved configurations are written as assembly dumps whose coordinates
/// are supertile positions.
pub fn cmd_iu_run(args: &IuRunArgs) -> Result<Status, CliError> {
    let sys = load_tas(&args.system)?;
    let ctx = Ctx::new(sys.clone())?;
    let out = args.config.out.as_deref();
    let cfg = &args.config;
    match args.mode {
        ModeArg::One => {
            let run = run_once(&ctx, cfg.seed, cfg.depth, args.steps)?;
            let resolved = dump_assembly(&sys, &run.state.image());
            if out.is_some() {
                emit(out, "trace.txt", &(run.trace.join("\n") + "\n"))?;
                emit(out, "state.txt", &run.state.dump(&ctx))?;
            }
            emit(out, "resolved.txt", &resolved)?;
            if args.svg {
                emit(Some(out.unwrap_or(Path::new("."))), "lattice.svg", &render_lattice(&ctx, &run.state, Style::default()))?;
            }
            Ok(Status::Pass)
        }
        ModeArg::Exhaustive => {
            let LatticeRun::All(ex) = run_lattice(&ctx, cfg.depth, cfg.seed, Mode::Exhaustive, cfg.cap_assemblies)? else {
                unreachable!("exhaustive mode returns all configurations")
            };
            let mut text = String::new();
            for (i, a) in ex.configurations.iter().enumerate() {
                let _ = writeln!(text, "# configuration {i} ({} sites)", a.len());
                text.push_str(&dump_assembly(&sys, a));
            }
            emit(out, "configurations.txt", &text)?;
            let summary = format!(
                "states {}\nconfigurations {}\nviolations {}\n",
                ex.states,
                ex.configurations.len(),
                ex.violations.len()
            );
            emit(out, "summary.txt", &summary)?;
            if ex.violations.is_empty() {
                Ok(Status::Pass)
            } else {
                emit(out, "violations.txt", &ex.violations.join("\n---\n"))?;
                Ok(Status::Failed)
            }
        }
    }
}

pub fn cmd_render(args: &RenderArgs) -> Result<Status, CliError> {
    let sys = load_tas(&args.system)?;
    let style = Style { labels: !args.no_labels, ..Style::default() };
    let svg = match &args.assembly {
        Some(path) => {
            let a = parse_dump(&sys, &read(path)?).map_err(|msg| CliError::Usage(format!("{}: {msg}", path.display())))?;
            render_svg(&sys, &assembly_cells(&sys, &a), style)
        }
        None => {
            let ctx = Ctx::new(sys)?;
            let run = run_once(&ctx, args.seed, args.depth, args.steps)?;
            render_lattice(&ctx, &run.state, style)
        }
    };
    match &args.out {
        Some(path) => fs::write(path, svg).map_err(|source| CliError::Io { path: PathBuf::from(path), source })?,
        None => print!("{svg}"),
    }
    Ok(Status::Pass)
}
