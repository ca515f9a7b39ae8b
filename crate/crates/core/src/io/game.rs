use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::FiniteGame;
use crate::Rational;

/// Exact number written as an integer or as text: `"3/2"`, `"-4"`, `"0.125"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExactValue {
    Int(i64),
    Text(String),
}

impl ExactValue {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            ExactValue::Int(n) => Ok(Rational::from_integer(*n)),
            ExactValue::Text(t) => parse_rational(t),
        }
    }
}

impl From<Rational> for ExactValue {
    fn from(r: Rational) -> Self {
        if r.is_integer() {
            ExactValue::Int(*r.numer())
        } else {
            ExactValue::Text(r.to_string())
        }
    }
}

/// Parses `a/b`, integers and plain decimals exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Config(format!("not an exact number: {text:?}"));
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if (int.is_empty() && frac.is_empty()) || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let numer: i64 = digits.parse().map_err(|_| bad())?;
    let denom = 10i64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
    let r = Rational::new(numer, denom);
    Ok(if neg { -r } else { r })
}

fn exact_list(name: &str, v: &[ExactValue]) -> Result<Vec<Rational>> {
    v.iter()
        .map(|e| e.to_rational().map_err(|err| Error::Config(format!("{name}: {err}"))))
        .collect()
}

type Table = Vec<Vec<Vec<ExactValue>>>;

/// Sender utility specification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case", deny_unknown_fields)]
pub enum SenderSpec {
    /// `u = t - a s / z`
    CostOverType { a: ExactValue },
    /// `values[t][s][z]`
    Table { values: Table },
}

/// Receiver utility specification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case", deny_unknown_fields)]
pub enum ReceiverSpec {
    /// `g = -(t - b z)^2`
    QuadraticLoss { b: ExactValue },
    /// `values[t][s][z]`
    Table { values: Table },
}

/// On-disk finite game, TOML or JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameFile {
    pub types: Vec<ExactValue>,
    pub prior: Vec<ExactValue>,
    pub actions: Vec<ExactValue>,
    pub reactions: Vec<ExactValue>,
    pub sender: SenderSpec,
    pub receiver: ReceiverSpec,
}

fn table(name: &str, values: &Table, dims: (usize, usize, usize)) -> Result<Vec<Vec<Vec<Rational>>>> {
    let shape_err = || Error::Config(format!("{name} table must have shape {}x{}x{} ([t][s][z])", dims.0, dims.1, dims.2));
    if values.len() != dims.0 {
        return Err(shape_err());
    }
    values
        .iter()
        .map(|by_s| {
            if by_s.len() != dims.1 {
                return Err(shape_err());
            }
            by_s.iter()
                .map(|by_z| {
                    if by_z.len() != dims.2 {
                        return Err(shape_err());
                    }
                    exact_list(name, by_z)
                })
                .collect()
        })
        .collect()
}

impl GameFile {
    pub fn build(&self) -> Result<FiniteGame<Rational>> {
        let types = exact_list("types", &self.types)?;
        let prior = exact_list("prior", &self.prior)?;
        let actions = exact_list("actions", &self.actions)?;
        let reactions = exact_list("reactions", &self.reactions)?;
        let dims = (reactions.len(), actions.len(), types.len());
        let sender = match &self.sender {
            SenderSpec::CostOverType { a } => {
                let a = a.to_rational()?;
                if types.iter().any(|z| *z == Rational::from_integer(0)) {
                    return Err(Error::Config("cost_over_type needs nonzero types".into()));
                }
                tabulate(&types, &actions, &reactions, |t, s, z| t - a * s / z)
            }
            SenderSpec::Table { values } => table("sender", values, dims)?,
        };
        let receiver = match &self.receiver {
            ReceiverSpec::QuadraticLoss { b } => {
                let b = b.to_rational()?;
                tabulate(&types, &actions, &reactions, |t, _s, z| -(t - b * z) * (t - b * z))
            }
            ReceiverSpec::Table { values } => table("receiver", values, dims)?,
        };
        FiniteGame::from_tables(types, prior, actions, reactions, sender, receiver)
    }

    pub fn from_game(game: &FiniteGame<Rational>) -> Self {
        let list = |v: &[Rational]| v.iter().map(|&r| ExactValue::from(r)).collect();
        let grid = |f: &dyn Fn(usize, usize, usize) -> Rational| -> Table {
            (0..game.n_reactions())
                .map(|t| {
                    (0..game.n_actions())
                        .map(|s| (0..game.n_types()).map(|z| ExactValue::from(f(t, s, z))).collect())
                        .collect()
                })
                .collect()
        };
        GameFile {
            types: list(game.types()),
            prior: list(game.prior()),
            actions: list(game.actions()),
            reactions: list(game.reactions()),
            sender: SenderSpec::Table { values: grid(&|t, s, z| game.u(t, s, z)) },
            receiver: ReceiverSpec::Table { values: grid(&|t, s, z| game.g(t, s, z)) },
        }
    }
}

fn tabulate(
    types: &[Rational],
    actions: &[Rational],
    reactions: &[Rational],
    f: impl Fn(Rational, Rational, Rational) -> Rational,
) -> Vec<Vec<Vec<Rational>>> {
    reactions
        .iter()
        .map(|&t| actions.iter().map(|&s| types.iter().map(|&z| f(t, s, z)).collect()).collect())
        .collect()
}

/// Reads a game from `.json` or TOML (any other extension).
pub fn load_game(path: &Path) -> Result<FiniteGame<Rational>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("cannot read game file {}: {e}", path.display())))?;
    let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
    let file: GameFile = if is_json {
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
    } else {
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
    };
    file.build()
}
