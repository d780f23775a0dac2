//! Parsing of grid arguments: `lo:hi:n` ranges or comma-separated lists.

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

fn parse_f64(text: &str, what: &str) -> Result<f64, CliError> {
    text.trim()
        .parse::<f64>()
        .map_err(|e| CliError::Usage(format!("{what}: cannot parse {text:?} as a number: {e}")))
}

/// `lo:hi:n` gives `n` points from `lo` to `hi` inclusive; anything else is
/// read as a comma-separated list.
pub fn parse_float_grid(text: &str, spacing: Spacing, what: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let grid = match parts.as_slice() {
        [lo, hi, n] => {
            let lo = parse_f64(lo, what)?;
            let hi = parse_f64(hi, what)?;
            let n: usize = n
                .trim()
                .parse()
                .map_err(|e| CliError::Usage(format!("{what}: bad point count {n:?}: {e}")))?;
            if n == 0 {
                return Err(CliError::Usage(format!("{what}: point count must be >= 1")));
            }
            match spacing {
                Spacing::Log => {
                    if !(lo > 0.0 && hi > 0.0) {
                        return Err(CliError::Invalid(format!(
                            "{what}: log grid needs positive bounds"
                        )));
                    }
                    cavity_cat::catstate::log_grid(lo, hi, n)
                }
                Spacing::Linear if n == 1 => vec![lo],
                Spacing::Linear => {
                    let step = (hi - lo) / (n - 1) as f64;
                    (0..n)
                        .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
                        .collect()
                }
            }
        }
        [_] => text
            .split(',')
            .map(|s| parse_f64(s, what))
            .collect::<Result<Vec<_>, _>>()?,
        _ => {
            return Err(CliError::Usage(format!(
                "{what}: expected lo:hi:n or a comma list, got {text:?}"
            )))
        }
    };
    if let Some(bad) = grid.iter().find(|v| !v.is_finite()) {
        return Err(CliError::Invalid(format!("{what}: non-finite value {bad}")));
    }
    Ok(grid)
}

/// `lo:hi` gives every integer from `lo` to `hi`; otherwise a comma list.
pub fn parse_int_grid(text: &str, what: &str) -> Result<Vec<usize>, CliError> {
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|e| CliError::Usage(format!("{what}: cannot parse {s:?} as a count: {e}")))
    };
    match text.split_once(':') {
        Some((lo, hi)) => {
            let (lo, hi) = (parse(lo)?, parse(hi)?);
            if hi < lo {
                return Err(CliError::Usage(format!("{what}: empty range {lo}:{hi}")));
            }
            Ok((lo..=hi).collect())
        }
        None => text.split(',').map(parse).collect(),
    }
}

/// Three comma-separated values, as for the cloud radii.
pub fn parse_triple(text: &str, what: &str) -> Result<[f64; 3], CliError> {
    let values = text
        .split(',')
        .map(|s| parse_f64(s, what))
        .collect::<Result<Vec<_>, _>>()?;
    values.try_into().map_err(|v: Vec<f64>| {
        CliError::Usage(format!("{what}: expected 3 values, got {}", v.len()))
    })
}
