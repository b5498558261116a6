use std::fs;
use std::path::{Path, PathBuf};

use coop_operad::classes::{analyze, BalanceCertificate};
use coop_operad::io::*;
use coop_operad::operad::{build_unanimity_from_generators, simple_compound, total_compose};
use coop_operad::rational::int;
use coop_operad::solutions::{
    banzhaf, banzhaf_unanimity_scaled, composite_shapley, core_description, imputation_vertices,
    shapley,
};
use coop_operad::{partial_compose_nongrounded, Allocation, Game, PlayerSet};
use serde_json::{json, Map, Value};

use crate::error::{CliError, Result};
use crate::suites::{run_suite, SuiteConfig};
use crate::{Format, Output, SolveArgs, TransformOp};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_game(path: &Path) -> Result<Game> {
    Ok(parse_game(&read(path)?)?)
}

fn render(format: Format, value: &Value, table: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("JSON values serialize"),
        Format::Table => table(),
    }
}

/// One `key  value` line per entry of a JSON object, nested values inline.
fn object_table(value: &Value) -> String {
    let Some(map) = value.as_object() else {
        return format!("{value}\n");
    };
    let width = map.keys().map(String::len).max().unwrap_or(0);
    map.iter()
        .map(|(k, v)| match v {
            Value::String(s) => format!("{k:<width$}  {s}\n"),
            other => format!("{k:<width$}  {other}\n"),
        })
        .collect()
}

fn game_output(format: Format, g: &Game) -> Output {
    Output::ok(render(format, &game_to_value(g), || game_table(g)))
}

pub fn compose(
    format: Format,
    at: Option<&str>,
    total: bool,
    files: &[PathBuf],
    out: Option<&Path>,
) -> Result<Output> {
    let games = files
        .iter()
        .map(|p| load_game(p))
        .collect::<Result<Vec<_>>>()?;
    let composite = match (at, total) {
        (Some(player), false) => {
            let [host, guest] = games.as_slice() else {
                return Err(CliError::Usage(
                    "compose --at takes exactly two game files".into(),
                ));
            };
            partial_compose_nongrounded(host, player, guest)?
        }
        (None, true) => {
            let (quotient, comps) = games
                .split_first()
                .ok_or_else(|| CliError::Usage("no game files".into()))?;
            total_compose(quotient, comps)?
        }
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --at <player> or --total".into(),
            ))
        }
    };
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&game_to_value(&composite))
            .expect("JSON values serialize");
        fs::write(path, text + "\n").map_err(|source| CliError::Write {
            path: path.to_path_buf(),
            source,
        })?;
    }
    Ok(game_output(format, &composite))
}

pub fn analyze_file(format: Format, file: &Path, k: usize) -> Result<Output> {
    let g = load_game(file)?;
    let report = analyze(&g, k)?;
    let value = class_report_to_value(g.players(), &report);
    Ok(Output::ok(render(format, &value, || object_table(&value))))
}

pub fn solve(format: Format, file: &Path, args: &SolveArgs) -> Result<Output> {
    let g = load_game(file)?;
    let mut out = Map::new();
    let mut tables = Vec::new();
    let mut allocation = |name: &str, x: Allocation| {
        tables.push(format!("{name}\n{}", allocation_table(&x)));
        out.insert(name.to_string(), allocation_to_value(&x));
    };
    if args.shapley {
        allocation("shapley", shapley(&g));
    }
    if args.banzhaf {
        allocation("banzhaf", banzhaf(&g));
        allocation("banzhaf_unanimity_scaled", banzhaf_unanimity_scaled(&g));
    }
    if args.core {
        let core = core_description(&g)?;
        let value = core_to_value(&core);
        let summary = match &core.certificate {
            BalanceCertificate::NotBalanced { lp_optimum, .. } => {
                format!(
                    "empty (LP optimum {lp_optimum} > v(N) = {})",
                    core.grand_value
                )
            }
            BalanceCertificate::Balanced { .. } => "non-empty".to_string(),
        };
        let vertices = core
            .vertices
            .iter()
            .flatten()
            .map(|v| format!("  {v}\n"))
            .collect::<String>();
        tables.push(format!("core: {summary}\n{vertices}"));
        out.insert("core".into(), value);
    }
    if args.imputations {
        let simplex = imputation_vertices(&g)?;
        let vertices = simplex
            .vertices
            .iter()
            .map(|v| format!("  {v}\n"))
            .collect::<String>();
        tables.push(format!(
            "imputations: {}\n{vertices}",
            if simplex.empty { "empty" } else { "vertices" }
        ));
        out.insert("imputations".into(), imputations_to_value(&simplex));
    }
    let value = Value::Object(out);
    Ok(Output::ok(render(format, &value, || tables.join("\n"))))
}

pub fn transform(format: Format, op: TransformOp, file: &Path, at: Option<&str>) -> Result<Output> {
    if op == TransformOp::Zeta {
        let m = parse_mobius(&read(file)?)?;
        return Ok(game_output(format, &m.zeta()));
    }
    let g = load_game(file)?;
    match op {
        TransformOp::Mobius => {
            let m = g.mobius();
            Ok(Output::ok(render(format, &mobius_to_value(&m), || {
                mobius_table(&m)
            })))
        }
        TransformOp::Dual => Ok(game_output(format, &g.dual())),
        TransformOp::Derivative => {
            let at = at.ok_or_else(|| {
                CliError::Usage("derivative needs --at <player>[,<player>...]".into())
            })?;
            let k = g.players().parse_coalition(at)?;
            Ok(game_output(format, &g.derivative_coalition(k)?))
        }
        TransformOp::Zeta => unreachable!("handled above"),
    }
}

pub fn decompose(format: Format, n: usize, coalition: &str) -> Result<Output> {
    let s = PlayerSet::numbered(n).parse_coalition(coalition)?;
    let (expr, game) = build_unanimity_from_generators(n, s)?;
    let verified = game == Game::unanimity(PlayerSet::numbered(n), s)?;
    let value = json!({ "n": n, "coalition": s.to_string(), "expression": expr.to_string(), "verified": verified });
    let text = render(format, &value, || format!("{expr}\n"));
    Ok(Output {
        text,
        violation: !verified,
    })
}

pub fn verify(format: Format, suite: crate::suites::Suite, config: &SuiteConfig) -> Result<Output> {
    let report = run_suite(suite, config)?;
    let text = render(format, &report.to_value(), || report.to_table());
    Ok(Output {
        text,
        violation: report.violation(),
    })
}

/// A national vote over three districts of three voters each; district 1 carries double weight.
pub fn demo_voting(format: Format) -> Result<Output> {
    let quotient = Game::weighted_majority(&[int(2), int(1), int(1)], &int(3))?;
    let districts: Vec<Game> = (1..=3)
        .map(|d| {
            let players = PlayerSet::new((1..=3).map(|v| format!("d{d}v{v}")))?;
            Ok(Game::weighted_majority(&[int(1), int(1), int(1)], &int(2))?
                .with_players(players)?)
        })
        .collect::<Result<_>>()?;
    let compound = simple_compound(&quotient, &districts)?;
    let by_operad = total_compose(&quotient, &districts)?;
    let power = shapley(&compound);
    let district_level = shapley(&quotient);
    let first_step = composite_shapley(&quotient, 0, &districts[0])?;
    let consistent = compound == by_operad;
    let value = json!({
        "quotient": game_to_value(&quotient),
        "compound_equals_total_composition": consistent,
        "district_shapley": allocation_to_value(&district_level),
        "shapley": allocation_to_value(&power),
        "banzhaf": allocation_to_value(&banzhaf(&compound)),
        "first_district_expanded_shapley": allocation_to_value(&first_step),
    });
    let text = render(format, &value, || {
        format!(
            "compound equals total composition: {consistent}\ndistrict shapley\n{}shapley\n{}banzhaf\n{}",
            allocation_table(&district_level),
            allocation_table(&power),
            allocation_table(&banzhaf(&compound)),
        )
    });
    Ok(Output {
        text,
        violation: !consistent,
    })
}
