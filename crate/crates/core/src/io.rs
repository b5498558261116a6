//! JSON and plain-text formats.
//!
//! Games: `{"players": ["a1","a2"], "grounded": true, "values": {"": "0", "a1": "1", "a1,a2": "3"}}`,
//! keyed by comma-joined labels; omitted coalitions are 0. Unanimity coefficients use the same
//! layout with a `"coefficients"` map. Rationals are written as `p/q` strings.

use serde_json::{json, Map, Value};

use crate::allocation::Allocation;
use crate::classes::{BalanceCertificate, ClassReport, Membership, Witness};
use crate::coalition::Coalition;
use crate::error::{GameError, Result};
use crate::game::{Game, MobiusGame};
use crate::players::PlayerSet;
use crate::rational::{parse_rational, Rational};
use crate::solutions::{CoreDescription, ImputationSimplex};

fn parse_error(msg: impl Into<String>) -> GameError {
    GameError::Parse(msg.into())
}

fn rational_text(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(GameError::UnparsableRational(other.to_string())),
    }
}

fn parse_players(obj: &Map<String, Value>) -> Result<Vec<String>> {
    let players = obj
        .get("players")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_error("missing `players` array"))?;
    players
        .iter()
        .map(|p| {
            p.as_str()
                .map(str::to_string)
                .ok_or_else(|| parse_error("player labels must be strings"))
        })
        .collect()
}

fn parse_table(obj: &Map<String, Value>, key: &str) -> Result<Vec<(String, String)>> {
    match obj.get(key) {
        None => Ok(Vec::new()),
        Some(Value::Object(map)) => map
            .iter()
            .map(|(k, v)| Ok((k.clone(), rational_text(v)?)))
            .collect(),
        Some(_) => Err(parse_error(format!("`{key}` must be an object"))),
    }
}

pub fn game_from_value(value: &Value) -> Result<Game> {
    let obj = value
        .as_object()
        .ok_or_else(|| parse_error("game must be a JSON object"))?;
    let grounded = match obj.get("grounded") {
        None => false,
        Some(Value::Bool(b)) => *b,
        Some(_) => return Err(parse_error("`grounded` must be a boolean")),
    };
    Game::new_game(parse_players(obj)?, parse_table(obj, "values")?, grounded)
}

pub fn parse_game(text: &str) -> Result<Game> {
    let value: Value = serde_json::from_str(text).map_err(|e| parse_error(e.to_string()))?;
    game_from_value(&value)
}

pub fn parse_mobius(text: &str) -> Result<MobiusGame> {
    let value: Value = serde_json::from_str(text).map_err(|e| parse_error(e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| parse_error("expected a JSON object"))?;
    let players = PlayerSet::new(parse_players(obj)?)?;
    let mut coeffs = vec![Rational::from_integer(0.into()); 1 << players.len()];
    for (key, text) in parse_table(obj, "coefficients")? {
        coeffs[players.parse_coalition(&key)?.index()] = parse_rational(&text)?;
    }
    MobiusGame::new(players, coeffs)
}

fn table_value(players: &PlayerSet, entries: &[Rational]) -> Value {
    let map: Map<String, Value> = entries
        .iter()
        .enumerate()
        .map(|(k, v)| {
            (
                players.format_coalition(Coalition::from_bits(k as u64)),
                Value::String(v.to_string()),
            )
        })
        .collect();
    Value::Object(map)
}

pub fn game_to_value(g: &Game) -> Value {
    json!({
        "players": g.players().labels(),
        "grounded": g.is_grounded(),
        "values": table_value(g.players(), g.values()),
    })
}

pub fn mobius_to_value(m: &MobiusGame) -> Value {
    json!({
        "players": m.players().labels(),
        "coefficients": table_value(m.players(), m.coeffs()),
    })
}

pub fn allocation_to_value(x: &Allocation) -> Value {
    let map: Map<String, Value> = x
        .players()
        .labels()
        .iter()
        .zip(x.coords())
        .map(|(l, c)| (l.clone(), Value::String(c.to_string())))
        .collect();
    Value::Object(map)
}

pub fn parse_allocation(players: &PlayerSet, value: &Value) -> Result<Allocation> {
    let obj = value
        .as_object()
        .ok_or_else(|| parse_error("allocation must be a JSON object"))?;
    let coords = players
        .labels()
        .iter()
        .map(|l| {
            let v = obj
                .get(l)
                .ok_or_else(|| GameError::UnknownPlayer(l.clone()))?;
            parse_rational(&rational_text(v)?)
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(extra) = obj.keys().find(|k| players.position(k).is_none()) {
        return Err(GameError::UnknownPlayer(extra.clone()));
    }
    Allocation::new(players.clone(), coords)
}

fn coalition_value(players: &PlayerSet, s: Coalition) -> Value {
    json!(s.members().map(|k| players.label(k)).collect::<Vec<_>>())
}

pub fn witness_to_value(players: &PlayerSet, w: &Witness) -> Value {
    let c = |s: &Coalition| coalition_value(players, *s);
    match w {
        Witness::EmptyValue { value } => json!({"kind": "empty-value", "value": value.to_string()}),
        Witness::GrandValue { value } => json!({"kind": "grand-value", "value": value.to_string()}),
        Witness::NegativeValue { coalition, value } => {
            json!({"kind": "negative-value", "coalition": c(coalition), "value": value.to_string()})
        }
        Witness::NotBinary { coalition, value } => {
            json!({"kind": "not-binary", "coalition": c(coalition), "value": value.to_string()})
        }
        Witness::Decrease {
            coalition,
            player,
            derivative,
        } => json!({
            "kind": "decrease",
            "coalition": c(coalition),
            "player": players.label(*player),
            "derivative": derivative.to_string(),
        }),
        Witness::NonAdditive {
            coalition,
            value,
            expected,
        } => json!({
            "kind": "non-additive",
            "coalition": c(coalition),
            "value": value.to_string(),
            "singleton_sum": expected.to_string(),
        }),
        Witness::Difference {
            set,
            base,
            value,
            sign,
        } => json!({
            "kind": "difference",
            "derivative_set": c(set),
            "at": c(base),
            "value": value.to_string(),
            "required_sign": if *sign > 0 { "non-negative" } else { "non-positive" },
        }),
        Witness::Unbalanced {
            weights,
            weighted_sum,
        } => json!({
            "kind": "unbalanced-collection",
            "weights": weights.iter().map(|(s, w)| json!({"coalition": c(s), "weight": w.to_string()})).collect::<Vec<_>>(),
            "weighted_sum": weighted_sum.to_string(),
        }),
    }
}

fn membership_value(players: &PlayerSet, m: &Membership) -> Value {
    match &m.witness {
        None => json!({"holds": m.holds}),
        Some(w) => json!({"holds": m.holds, "witness": witness_to_value(players, w)}),
    }
}

pub fn certificate_to_value(players: &PlayerSet, c: &BalanceCertificate) -> Value {
    match c {
        BalanceCertificate::Balanced { core_point } => {
            let x =
                Allocation::new(players.clone(), core_point.clone()).expect("core point dimension");
            json!({"holds": true, "core_point": allocation_to_value(&x)})
        }
        BalanceCertificate::NotBalanced {
            witness,
            lp_optimum,
        } => json!({
            "holds": false,
            "lp_optimum": lp_optimum.to_string(),
            "witness": witness_to_value(players, witness),
        }),
    }
}

pub fn class_report_to_value(players: &PlayerSet, r: &ClassReport) -> Value {
    let m = |x: &Membership| membership_value(players, x);
    json!({
        "k": r.k,
        "grounded": m(&r.grounded),
        "normalized": m(&r.normalized),
        "nonnegative": m(&r.nonnegative),
        "monotone": m(&r.monotone),
        "simple": m(&r.simple),
        "additive": m(&r.additive),
        "capacity": m(&r.capacity),
        "convex": m(&r.convex),
        "k_monotone": m(&r.k_monotone),
        "k_alternating": m(&r.k_alternating),
        "totally_monotone": m(&r.totally_monotone),
        "totally_alternating": m(&r.totally_alternating),
        "balanced": r.balanced.as_ref().map_or(Value::Null, |c| certificate_to_value(players, c)),
    })
}

pub fn imputations_to_value(s: &ImputationSimplex) -> Value {
    json!({
        "players": s.players.labels(),
        "empty": s.empty,
        "vertices": s.vertices.iter().map(allocation_to_value).collect::<Vec<_>>(),
    })
}

pub fn core_to_value(c: &CoreDescription) -> Value {
    let constraints: Vec<Value> = c
        .constraints
        .iter()
        .map(|(s, v)| json!({"coalition": coalition_value(&c.players, *s), "at_least": v.to_string()}))
        .collect();
    json!({
        "players": c.players.labels(),
        "empty": c.empty,
        "grand_value": c.grand_value.to_string(),
        "constraints": constraints,
        "certificate": certificate_to_value(&c.players, &c.certificate),
        "vertices": c.vertices.as_ref().map(|vs| vs.iter().map(allocation_to_value).collect::<Vec<_>>()),
    })
}

/// Two-column value table with `p/q` entries.
pub fn game_table(g: &Game) -> String {
    value_table(g.players(), g.values(), "value")
}

pub fn mobius_table(m: &MobiusGame) -> String {
    value_table(m.players(), m.coeffs(), "coefficient")
}

fn value_table(players: &PlayerSet, entries: &[Rational], header: &str) -> String {
    let rows: Vec<(String, String)> = entries
        .iter()
        .enumerate()
        .map(|(k, v)| {
            (
                format!(
                    "{{{}}}",
                    players.format_coalition(Coalition::from_bits(k as u64))
                ),
                v.to_string(),
            )
        })
        .collect();
    let width = rows
        .iter()
        .map(|(c, _)| c.len())
        .max()
        .unwrap_or(0)
        .max("coalition".len());
    let mut out = format!("{:<width$}  {header}\n", "coalition");
    for (c, v) in rows {
        out.push_str(&format!("{c:<width$}  {v}\n"));
    }
    out
}

pub fn allocation_table(x: &Allocation) -> String {
    let width = x
        .players()
        .labels()
        .iter()
        .map(String::len)
        .max()
        .unwrap_or(0)
        .max("player".len());
    let mut out = format!("{:<width$}  payoff\n", "player");
    for (l, c) in x.players().labels().iter().zip(x.coords()) {
        out.push_str(&format!("{l:<width$}  {c}\n"));
    }
    out
}
