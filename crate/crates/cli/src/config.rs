//! Experiment configuration files.
//!
//! One `key = value` pair per line; `#` starts a comment. Keys:
//!
//! | key        | value                                                       |
//! |------------|-------------------------------------------------------------|
//! | algebra    | `sl2`, `sl`, `gl`, `so`, `sp`                               |
//! | size       | matrix size `N` (implied for `sl2`)                         |
//! | weights    | factor highest weights, `1,0 \| 1,1 \| 1,0`                 |
//! | points     | distinct nonzero rationals, default `1, 2, …, n`            |
//! | operators  | `;`-separated operator specs, e.g. `omega_lk(1,2); T(2; P1, P2)` |
//! | weight     | `all`, `top`, `top - 2 a1 - a2`, or an explicit tuple       |
//! | seed       | `top`, `w(k)`, `z(k,l)`, `A(k,l)`                            |
//! | root       | simple root index used by `seed` and `weight`, default 1    |
//! | cg         | `m, n` for `cg-table`                                       |
//! | triple     | `m, n, k` for `anti-diagonal`                               |
//! | format     | `json` or `table`                                           |
//! | max_terms  | bound on Gelfand index cycles `N^k`, default 100000         |
//! | max_power  | largest tensor power searched for a factor, default 6       |
//! | max_rank   | largest `r` of `T_r`/`S_r` generators in `t-decompose`, default `N` |

use std::collections::BTreeMap;

use casimir_core::exactla::parse_scalar;
use casimir_core::{AlgebraKind, OperatorSpec, Scalar};
use thiserror::Error;

use crate::OutputFormat;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{key}: {message}")]
pub struct ConfigError {
    pub key: String,
    pub message: String,
}

impl ConfigError {
    fn new(key: &str, message: impl Into<String>) -> Self {
        ConfigError {
            key: key.to_string(),
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum WeightSelector {
    All,
    /// Top weight minus `Σ c_j α_j`.
    BelowTop(Vec<(Scalar, usize)>),
    Explicit(Vec<Scalar>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Seed {
    Top,
    W(usize),
    Z(usize, usize),
    A(usize, usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub algebra: Option<AlgebraKind>,
    pub size: Option<usize>,
    pub weights: Vec<Vec<Scalar>>,
    pub points: Option<Vec<Scalar>>,
    pub operators: Vec<OperatorSpec>,
    pub weight: WeightSelector,
    pub seed: Option<Seed>,
    pub root: usize,
    pub cg: Option<(usize, usize)>,
    pub triple: Option<(usize, usize, usize)>,
    pub format: Option<OutputFormat>,
    pub max_terms: u128,
    pub max_power: usize,
    pub max_rank: Option<usize>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            algebra: None,
            size: None,
            weights: Vec::new(),
            points: None,
            operators: Vec::new(),
            weight: WeightSelector::All,
            seed: None,
            root: 1,
            cg: None,
            triple: None,
            format: None,
            max_terms: casimir_core::centralops::DEFAULT_TERM_BUDGET,
            max_power: casimir_core::reps::DEFAULT_MAX_POWER,
            max_rank: None,
        }
    }
}

const KEYS: &[&str] = &[
    "algebra", "size", "weights", "points", "operators", "weight", "seed", "root", "cg", "triple", "format",
    "max_terms", "max_power", "max_rank",
];

fn scalars(key: &str, text: &str) -> Result<Vec<Scalar>, ConfigError> {
    text.split(',')
        .map(|t| parse_scalar(t.trim()).map_err(|_| ConfigError::new(key, format!("malformed rational {:?}", t.trim()))))
        .collect()
}

fn integers<const K: usize>(key: &str, text: &str) -> Result<[usize; K], ConfigError> {
    let xs: Vec<usize> = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| ConfigError::new(key, format!("expected a nonnegative integer, got {:?}", t.trim())))
        })
        .collect::<Result<_, _>>()?;
    xs.try_into()
        .map_err(|xs: Vec<usize>| ConfigError::new(key, format!("expected {K} integers, got {}", xs.len())))
}

fn parse_selector(text: &str) -> Result<WeightSelector, ConfigError> {
    let t = text.trim();
    if t == "all" {
        return Ok(WeightSelector::All);
    }
    let Some(rest) = t.strip_prefix("top") else {
        return scalars("weight", t).map(WeightSelector::Explicit);
    };
    let bad = || ConfigError::new("weight", format!("expected `top - c a<j> ...`, got {t:?}"));
    let mut terms = Vec::new();
    let rest = rest.replace('-', " - ").replace('+', " + ");
    let mut tokens = rest.split_whitespace();
    while let Some(sign) = tokens.next() {
        let negative = match sign {
            "-" => true,
            "+" => false,
            _ => return Err(bad()),
        };
        let mut tok = tokens.next().ok_or_else(bad)?;
        let mut coeff = Scalar::from_integer(1.into());
        if !tok.starts_with('a') {
            // `2 a1` or `2a1`
            let (c, rest) = match tok.find('a') {
                Some(p) => (&tok[..p], &tok[p..]),
                None => (tok, tokens.next().ok_or_else(bad)?),
            };
            coeff = parse_scalar(c).map_err(|_| bad())?;
            tok = rest;
        }
        let j: usize = tok.strip_prefix('a').and_then(|x| x.parse().ok()).ok_or_else(bad)?;
        // the selector subtracts roots; a `+` term adds one back
        terms.push((if negative { coeff } else { -coeff }, j));
    }
    Ok(WeightSelector::BelowTop(terms))
}

fn parse_seed(text: &str) -> Result<Seed, ConfigError> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || ConfigError::new("seed", format!("expected top, w(k), z(k,l) or A(k,l), got {text:?}"));
    if t == "top" {
        return Ok(Seed::Top);
    }
    let open = t.find('(').ok_or_else(bad)?;
    let args = t[open + 1..].strip_suffix(')').ok_or_else(bad)?;
    let idx: Vec<usize> = args
        .split(',')
        .map(|x| x.parse::<usize>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    match (&t[..open], idx.as_slice()) {
        ("w", &[k]) => Ok(Seed::W(k)),
        ("z", &[k, l]) => Ok(Seed::Z(k, l)),
        ("A", &[k, l]) => Ok(Seed::A(k, l)),
        _ => Err(bad()),
    }
}

/// Splits `;`-separated operator specs, ignoring separators inside parentheses.
fn split_operators(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ';' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out.into_iter().map(str::trim).filter(|s| !s.is_empty()).collect()
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let mut raw: BTreeMap<String, String> = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| ConfigError::new(&format!("line {}", lineno + 1), "expected `key = value`"))?;
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(ConfigError::new(key, "unknown key"));
        }
        if raw.insert(key.to_string(), value.trim().to_string()).is_some() {
            return Err(ConfigError::new(key, "given more than once"));
        }
    }

    let mut cfg = ExperimentConfig::default();
    for (key, value) in &raw {
        let key = key.as_str();
        match key {
            "algebra" => {
                cfg.algebra = Some(value.parse().map_err(|_| ConfigError::new(key, format!("unknown algebra {value:?}")))?)
            }
            "size" => cfg.size = Some(integers::<1>(key, value)?[0]),
            "weights" => {
                cfg.weights = value
                    .split('|')
                    .map(|w| scalars(key, w))
                    .collect::<Result<_, _>>()?
            }
            "points" => {
                let pts = scalars(key, value)?;
                for (i, p) in pts.iter().enumerate() {
                    if pts[..i].contains(p) {
                        return Err(ConfigError::new(key, format!("duplicate point {p}")));
                    }
                    if *p == Scalar::from_integer(0.into()) {
                        return Err(ConfigError::new(key, "points must be nonzero"));
                    }
                }
                cfg.points = Some(pts);
            }
            "operators" => {
                cfg.operators = split_operators(value)
                    .into_iter()
                    .map(|s| s.parse::<OperatorSpec>().map_err(|e| ConfigError::new(key, e.to_string())))
                    .collect::<Result<_, _>>()?
            }
            "weight" => cfg.weight = parse_selector(value)?,
            "seed" => cfg.seed = Some(parse_seed(value)?),
            "root" => cfg.root = integers::<1>(key, value)?[0],
            "cg" => {
                let [m, n] = integers::<2>(key, value)?;
                cfg.cg = Some((m, n));
            }
            "triple" => {
                let [m, n, k] = integers::<3>(key, value)?;
                cfg.triple = Some((m, n, k));
            }
            "format" => {
                cfg.format = Some(match value.as_str() {
                    "json" => OutputFormat::Json,
                    "table" => OutputFormat::Table,
                    _ => return Err(ConfigError::new(key, format!("expected json or table, got {value:?}"))),
                })
            }
            "max_terms" => {
                cfg.max_terms = value
                    .parse()
                    .map_err(|_| ConfigError::new(key, format!("expected a positive integer, got {value:?}")))?
            }
            "max_power" => cfg.max_power = integers::<1>(key, value)?[0],
            "max_rank" => cfg.max_rank = Some(integers::<1>(key, value)?[0]),
            _ => unreachable!("keys are validated above"),
        }
    }
    if let Some(points) = &cfg.points {
        if !cfg.weights.is_empty() && points.len() != cfg.weights.len() {
            return Err(ConfigError::new(
                "points",
                format!("{} points for {} factors", points.len(), cfg.weights.len()),
            ));
        }
    }
    Ok(cfg)
}
