use std::fmt;

use crate::error::{Error, Result};

/// A parameter grid such as `a=3..12;d=1..4;k=1..4`.
///
/// Each key takes a single value, an inclusive range `lo..hi`, or a comma list.
/// Keys keep the order they were written in; points iterate the last key
/// fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    axes: Vec<(String, Vec<i64>)>,
}

fn parse_int(text: &str, grid: &str) -> Result<i64> {
    text.trim()
        .parse()
        .map_err(|_| Error::Grid(format!("'{text}' is not an integer in '{grid}'")))
}

impl Grid {
    pub fn parse(grid: &str) -> Result<Grid> {
        let mut axes: Vec<(String, Vec<i64>)> = Vec::new();
        for part in grid.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Grid(format!("expected key=value, got '{part}'")))?;
            let key = key.trim().to_string();
            if key.is_empty() {
                return Err(Error::Grid(format!("empty key in '{part}'")));
            }
            if axes.iter().any(|(k, _)| *k == key) {
                return Err(Error::Grid(format!("key '{key}' given twice")));
            }
            let values = if let Some((lo, hi)) = value.split_once("..") {
                let (lo, hi) = (parse_int(lo, grid)?, parse_int(hi, grid)?);
                if lo > hi {
                    return Err(Error::Grid(format!("empty range {lo}..{hi} for '{key}'")));
                }
                (lo..=hi).collect()
            } else {
                value.split(',').map(|v| parse_int(v, grid)).collect::<Result<Vec<_>>>()?
            };
            axes.push((key, values));
        }
        Ok(Grid { axes })
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.axes.iter().map(|(k, _)| k.as_str())
    }

    pub fn get(&self, key: &str) -> Option<&[i64]> {
        self.axes.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_slice())
    }

    /// Rejects keys outside `allowed`.
    pub fn expect_keys(&self, allowed: &[&str]) -> Result<()> {
        match self.keys().find(|k| !allowed.contains(k)) {
            Some(k) => Err(Error::Grid(format!("unknown key '{k}', expected one of {allowed:?}"))),
            None => Ok(()),
        }
    }

    /// Values of `key`, or `default` when absent.
    pub fn values_or(&self, key: &str, default: &[i64]) -> Vec<i64> {
        self.get(key).map(<[i64]>::to_vec).unwrap_or_else(|| default.to_vec())
    }

    /// The single value of `key`, or `default` when absent.
    pub fn single_or(&self, key: &str, default: i64) -> Result<i64> {
        match self.get(key) {
            None => Ok(default),
            Some([v]) => Ok(*v),
            Some(_) => Err(Error::Grid(format!("'{key}' takes a single value"))),
        }
    }

    /// Non-negative single value.
    pub fn single_u64_or(&self, key: &str, default: u64) -> Result<u64> {
        let v = self.single_or(key, default as i64)?;
        u64::try_from(v).map_err(|_| Error::Grid(format!("'{key}' must be non-negative")))
    }

    /// Cartesian product over `keys`, each with a default axis when absent.
    pub fn product(&self, keys: &[(&str, &[i64])]) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for (key, default) in keys {
            let values = self.values_or(key, default);
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    values.iter().map(move |&v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .axes
            .iter()
            .map(|(k, v)| {
                let contiguous = v.windows(2).all(|w| w[1] == w[0] + 1);
                if v.len() > 1 && contiguous {
                    format!("{k}={}..{}", v[0], v[v.len() - 1])
                } else {
                    format!("{k}={}", v.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
                }
            })
            .collect();
        f.write_str(&parts.join(";"))
    }
}
