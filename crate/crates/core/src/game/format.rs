//! Flat text form of a [`GameSpec`]:
//!
//! ```text
//! n=3 noise=bernoulli
//! 0 0.0000000000000000e0
//! 1 1.6666666666666666e-1
//! ...
//! ```
//!
//! One `mask value` line per coalition in ascending mask order; values carry
//! 17 significant digits so they parse back to the same `f64`.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::game::GameSpec;
use crate::oracle::NoiseModel;

impl GameSpec {
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(32 * self.table().len());
        writeln!(out, "n={} noise={}", self.n(), self.noise()).unwrap();
        for (mask, v) in self.table().iter().enumerate() {
            writeln!(out, "{mask} {v:.16e}").unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let (n, noise) = parse_header(header)?;
        if !(2..=super::MAX_PLAYERS).contains(&n) {
            return Err(Error::PlayerCount(n));
        }
        let mut mu = Vec::with_capacity(1 << n);
        for (idx, line) in lines {
            let lineno = idx + 1;
            let bad = |msg: String| Error::Parse { line: lineno, msg };
            let mut parts = line.split_whitespace();
            let (Some(mask), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(bad(format!("expected `mask value`, got {line:?}")));
            };
            let mask: usize = mask
                .parse()
                .map_err(|e| bad(format!("bad mask {mask:?}: {e}")))?;
            if mask != mu.len() {
                return Err(bad(format!("mask {mask} out of order, expected {}", mu.len())));
            }
            let value: f64 = value
                .parse()
                .map_err(|e| bad(format!("bad value {value:?}: {e}")))?;
            mu.push(value);
        }
        GameSpec::new(n, mu, noise)
    }
}

fn parse_header(header: &str) -> Result<(usize, NoiseModel)> {
    let bad = |msg: String| Error::Parse { line: 1, msg };
    let mut n = None;
    let mut noise = None;
    for field in header.split_whitespace() {
        match field.split_once('=') {
            Some(("n", v)) => {
                n = Some(v.parse().map_err(|e| bad(format!("bad n {v:?}: {e}")))?)
            }
            Some(("noise", v)) => noise = Some(NoiseModel::from_str(v).map_err(|e| bad(e.to_string()))?),
            _ => return Err(bad(format!("unexpected header field {field:?}"))),
        }
    }
    match (n, noise) {
        (Some(n), Some(noise)) => Ok((n, noise)),
        _ => Err(bad(format!("header must be `n=<n> noise=<tag>`, got {header:?}"))),
    }
}
