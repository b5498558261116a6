//! Expressions built from the generator games by partial composition.

use std::fmt;

use super::{bargaining, dictator, one, partial_compose_nongrounded, v_empty};
use crate::coalition::Coalition;
use crate::error::{GameError, Result};
use crate::game::Game;
use crate::linalg::rank;
use crate::players::PlayerSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    B,
    D1,
    D2,
    One,
    VEmpty,
}

impl Generator {
    pub fn arity(self) -> usize {
        match self {
            Generator::B | Generator::D1 | Generator::D2 => 2,
            Generator::One => 1,
            Generator::VEmpty => 0,
        }
    }

    pub fn game(self) -> Game {
        match self {
            Generator::B => bargaining(),
            Generator::D1 => dictator(1).expect("valid dictator"),
            Generator::D2 => dictator(2).expect("valid dictator"),
            Generator::One => one(),
            Generator::VEmpty => v_empty(),
        }
    }

    fn token(self) -> &'static str {
        match self {
            Generator::B => "B",
            Generator::D1 => "d1",
            Generator::D2 => "d2",
            Generator::One => "ONE",
            Generator::VEmpty => "V_EMPTY",
        }
    }

    fn from_token(token: &str) -> Option<Self> {
        Some(match token {
            "B" => Generator::B,
            "d1" => Generator::D1,
            "d2" => Generator::D2,
            "ONE" => Generator::One,
            "V_EMPTY" => Generator::VEmpty,
            _ => return None,
        })
    }
}

/// A composition tree; positions inside `Comp` are 1-based, as in the text form `(comp x i y)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GeneratorExpr {
    Leaf(Generator),
    Comp(Box<GeneratorExpr>, usize, Box<GeneratorExpr>),
}

impl GeneratorExpr {
    /// Composes, checking the position against the arity of `left`.
    pub fn comp(left: GeneratorExpr, position: usize, right: GeneratorExpr) -> Result<Self> {
        let arity = left.arity();
        if position == 0 || position > arity {
            return Err(GameError::IndexOutOfRange {
                index: position,
                arity,
            });
        }
        Ok(GeneratorExpr::Comp(
            Box::new(left),
            position,
            Box::new(right),
        ))
    }

    pub fn arity(&self) -> usize {
        match self {
            GeneratorExpr::Leaf(g) => g.arity(),
            GeneratorExpr::Comp(l, _, r) => l.arity() + r.arity() - 1,
        }
    }

    /// Evaluates to a game on players `"1"..="n"`.
    pub fn eval(&self) -> Result<Game> {
        match self {
            GeneratorExpr::Leaf(g) => Ok(g.game()),
            GeneratorExpr::Comp(l, position, r) => {
                let left = l.eval()?;
                if *position == 0 || *position > left.n() {
                    return Err(GameError::IndexOutOfRange {
                        index: *position,
                        arity: left.n(),
                    });
                }
                let composite = partial_compose_nongrounded(&left, position - 1, &r.eval()?)?;
                composite.with_players(PlayerSet::numbered(composite.n()))
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let tokens = tokenize(text);
        let mut cursor = 0;
        let expr = parse_expr(&tokens, &mut cursor)?;
        if cursor != tokens.len() {
            return Err(GameError::Parse(format!(
                "trailing input after expression: `{}`",
                tokens[cursor..].join(" ")
            )));
        }
        Ok(expr)
    }
}

impl fmt::Display for GeneratorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorExpr::Leaf(g) => write!(f, "{}", g.token()),
            GeneratorExpr::Comp(l, position, r) => write!(f, "(comp {l} {position} {r})"),
        }
    }
}

fn tokenize(text: &str) -> Vec<String> {
    text.replace('(', " ( ")
        .replace(')', " ) ")
        .split_whitespace()
        .map(str::to_string)
        .collect()
}

fn parse_expr(tokens: &[String], cursor: &mut usize) -> Result<GeneratorExpr> {
    let token = tokens
        .get(*cursor)
        .ok_or_else(|| GameError::Parse("unexpected end of expression".into()))?;
    *cursor += 1;
    if token != "(" {
        return Generator::from_token(token)
            .map(GeneratorExpr::Leaf)
            .ok_or_else(|| GameError::Parse(format!("unknown generator `{token}`")));
    }
    match tokens.get(*cursor).map(String::as_str) {
        Some("comp") => *cursor += 1,
        other => {
            return Err(GameError::Parse(format!(
                "expected `comp`, found `{}`",
                other.unwrap_or("end of input")
            )))
        }
    }
    let left = parse_expr(tokens, cursor)?;
    let position_token = tokens
        .get(*cursor)
        .ok_or_else(|| GameError::Parse("missing position".into()))?;
    let position: usize = position_token
        .parse()
        .map_err(|_| GameError::Parse(format!("bad position `{position_token}`")))?;
    *cursor += 1;
    let right = parse_expr(tokens, cursor)?;
    match tokens.get(*cursor).map(String::as_str) {
        Some(")") => *cursor += 1,
        other => {
            return Err(GameError::Parse(format!(
                "expected `)`, found `{}`",
                other.unwrap_or("end of input")
            )))
        }
    }
    GeneratorExpr::comp(left, position, right)
}

fn extend(expr: Option<GeneratorExpr>, position: usize, g: Generator) -> GeneratorExpr {
    let leaf = GeneratorExpr::Leaf(g);
    match expr {
        None => leaf,
        Some(e) => GeneratorExpr::Comp(Box::new(e), position, Box::new(leaf)),
    }
}

/// An expression over the generators evaluating to `u_S` on `n` players (`s` 0-based).
///
/// Walks positions left to right keeping a veto player at the frontier: `B` there adds another
/// veto player, `d2` turns the frontier into a null player followed by a veto one, and once the
/// last member of `s` is placed, `d1` appends the trailing null players.
pub fn build_unanimity_from_generators(n: usize, s: Coalition) -> Result<(GeneratorExpr, Game)> {
    if s.is_empty() {
        return Err(GameError::EmptySupport);
    }
    crate::game::check_within(&PlayerSet::numbered(n), s)?;
    let last = s.members().last().expect("nonempty");
    let mut expr = None;
    for frontier in 0..last {
        let g = if s.contains(frontier) {
            Generator::B
        } else {
            Generator::D2
        };
        expr = Some(extend(expr, frontier + 1, g));
    }
    for _ in last + 1..n {
        expr = Some(extend(expr, last + 1, Generator::D1));
    }
    let expr = expr.unwrap_or(GeneratorExpr::Leaf(Generator::One));
    let game = expr.eval()?;
    Ok((expr, game))
}

/// All expressions of arity `n` obtained from `ONE` by repeatedly composing `B`, `d1` or `d2`
/// into some position.
pub fn generator_expressions(n: usize) -> Vec<GeneratorExpr> {
    let mut level = vec![GeneratorExpr::Leaf(Generator::One)];
    for arity in 1..n.max(1) {
        level = level
            .iter()
            .flat_map(|e| {
                (1..=arity).flat_map(move |p| {
                    [Generator::B, Generator::D1, Generator::D2]
                        .into_iter()
                        .map(move |g| {
                            GeneratorExpr::Comp(
                                Box::new(e.clone()),
                                p,
                                Box::new(GeneratorExpr::Leaf(g)),
                            )
                        })
                })
            })
            .collect();
    }
    level
}

/// Exact dimension of the span of the evaluated arity-`n` generator expressions.
pub fn generator_span_rank(n: usize) -> Result<usize> {
    let rows = generator_expressions(n)
        .iter()
        .map(|e| e.eval().map(|g| g.values().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    Ok(rank(rows))
}
