//! Ordinary least squares on a straight line.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_se: f64,
    pub intercept_se: f64,
    /// Residual sum of squares.
    pub rss: f64,
}

/// Fits `y = intercept + slope·x`. Standard errors use the residual variance
/// with `n − 2` degrees of freedom and are NaN for two points.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> Result<LineFit> {
    if xs.len() != ys.len() {
        return Err(Error::FitFailed(format!(
            "length mismatch: {} x values, {} y values",
            xs.len(),
            ys.len()
        )));
    }
    let n = xs.len();
    if n < 2 {
        return Err(Error::FitFailed(format!("need at least 2 points, got {n}")));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(Error::FitFailed("non-finite data".into()));
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::FitFailed("all x values coincide".into()));
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let e = y - intercept - slope * x;
            e * e
        })
        .sum();
    let (slope_se, intercept_se) = if n > 2 {
        let s2 = rss / (nf - 2.0);
        ((s2 / sxx).sqrt(), (s2 * (1.0 / nf + mx * mx / sxx)).sqrt())
    } else {
        (f64::NAN, f64::NAN)
    };
    Ok(LineFit {
        slope,
        intercept,
        slope_se,
        intercept_se,
        rss,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 - 0.5 * x).collect();
        let fit = fit_line(&xs, &ys).unwrap();
        assert!((fit.slope + 0.5).abs() < 1e-15);
        assert!((fit.intercept - 2.0).abs() < 1e-15);
        assert!(fit.slope_se < 1e-15);
    }

    #[test]
    fn textbook_standard_errors() {
        // y = 1 + x with residuals (+1, −1, −1, +1)
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys = [2.0, 1.0, 2.0, 5.0];
        let fit = fit_line(&xs, &ys).unwrap();
        assert!((fit.slope - 1.0).abs() < 1e-15);
        assert!((fit.intercept - 1.0).abs() < 1e-15);
        assert!((fit.rss - 4.0).abs() < 1e-14);
        assert!((fit.slope_se - (2.0f64 / 5.0).sqrt()).abs() < 1e-14);
        assert!((fit.intercept_se - (2.0f64 * (0.25 + 2.25 / 5.0)).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(fit_line(&[1.0], &[1.0]).is_err());
        assert!(fit_line(&[1.0, 1.0], &[1.0, 2.0]).is_err());
        assert!(fit_line(&[1.0, 2.0], &[1.0]).is_err());
        assert!(fit_line(&[1.0, f64::NAN], &[1.0, 2.0]).is_err());
    }
}
