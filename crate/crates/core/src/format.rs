//! Plain-text input files.
//!
//! A distribution file is either eight whitespace-separated reals giving
//! `p(a0,a1,b)` in lexicographic `(a0, a1, b)` order, or `key=value` lines:
//!
//! ```text
//! # key-card question
//! kind=rkb
//! p0_prime=0.5
//! p1_prime=0.55
//! q=0.75
//! bypass_probability=0
//! ```
//!
//! `#` starts a comment. `p0` and `p1` are accepted for `p0_prime` and
//! `p1_prime`. `kind` and `bypass_probability` are only meaningful for
//! scenario files.

use crate::bridge::{ScenarioConfig, ScenarioKind};
use crate::error::{Error, Result};
use crate::strategy::{JointInputDistribution, ProductForm};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistributionFile {
    Joint(JointInputDistribution),
    Product(ProductForm),
}

impl DistributionFile {
    pub fn joint(&self) -> JointInputDistribution {
        match self {
            DistributionFile::Joint(d) => *d,
            DistributionFile::Product(f) => f.expand(),
        }
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn is_key_value(text: &str) -> bool {
    content_lines(text).any(|(_, l)| l.contains('='))
}

fn parse_real(line: usize, token: &str) -> Result<f64> {
    token.parse::<f64>().map_err(|_| Error::Parse {
        line,
        message: format!("`{token}` is not a number"),
    })
}

pub fn parse_joint(text: &str) -> Result<JointInputDistribution> {
    let mut values = Vec::with_capacity(8);
    let mut last_line = 0;
    for (line, content) in content_lines(text) {
        last_line = line;
        for token in content.split_whitespace() {
            values.push(parse_real(line, token)?);
        }
    }
    let probs: [f64; 8] = values.as_slice().try_into().map_err(|_| Error::Parse {
        line: last_line,
        message: format!("expected 8 probabilities, found {}", values.len()),
    })?;
    JointInputDistribution::new(probs)
}

fn key_values(text: &str) -> Result<Vec<(usize, String, String)>> {
    content_lines(text)
        .map(|(line, content)| {
            let (k, v) = content.split_once('=').ok_or_else(|| Error::Parse {
                line,
                message: format!("expected key=value, found `{content}`"),
            })?;
            Ok((line, k.trim().to_ascii_lowercase(), v.trim().to_string()))
        })
        .collect()
}

pub fn parse_scenario(text: &str) -> Result<ScenarioConfig> {
    let pairs = key_values(text)?;
    let kind = match pairs.iter().find(|(_, k, _)| k == "kind") {
        Some((line, _, v)) => parse_kind(*line, v)?,
        None => ScenarioKind::Rkb,
    };
    let mut config = ScenarioConfig::default_for(kind);
    for (line, key, value) in &pairs {
        match key.as_str() {
            "kind" => {}
            "p0_prime" | "p0" => config.p0_prime = parse_real(*line, value)?,
            "p1_prime" | "p1" => config.p1_prime = parse_real(*line, value)?,
            "q" => config.q = parse_real(*line, value)?,
            "bypass_probability" => config.bypass_probability = parse_real(*line, value)?,
            other => {
                return Err(Error::Parse {
                    line: *line,
                    message: format!("unknown key `{other}`"),
                })
            }
        }
    }
    config.validate()?;
    Ok(config)
}

pub fn parse_kind(line: usize, value: &str) -> Result<ScenarioKind> {
    match value.to_ascii_lowercase().as_str() {
        "rkb" => Ok(ScenarioKind::Rkb),
        "defense" | "defence" => Ok(ScenarioKind::Defense),
        other => Err(Error::Parse {
            line,
            message: format!("unknown scenario kind `{other}`"),
        }),
    }
}

/// Product form from `key=value` lines. Missing keys default to the
/// key-card estimates.
pub fn parse_product(text: &str) -> Result<ProductForm> {
    parse_scenario(text)?.product_form()
}

pub fn parse_distribution(text: &str) -> Result<DistributionFile> {
    if is_key_value(text) {
        parse_product(text).map(DistributionFile::Product)
    } else {
        parse_joint(text).map(DistributionFile::Joint)
    }
}
