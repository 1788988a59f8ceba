//! Piecewise-linear membership functions written as knot lists `[x1:y1 … xn:yn]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A membership function given by knots with strictly increasing abscissae.
///
/// Between two knots the function is the straight line through them. Left of
/// the first knot and right of the last one it stays at the endpoint degree,
/// so shoulder shapes such as `[7:0, 8:1, 10:1]` keep their value up to the
/// edge of the universe while triangles drop to zero outside their support.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(f64, f64)>", into = "Vec<(f64, f64)>")]
pub struct PiecewiseLinear {
    knots: Vec<(f64, f64)>,
}

impl PiecewiseLinear {
    pub fn new(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::InvalidMembership(format!(
                "need at least 2 knots, got {}",
                knots.len()
            )));
        }
        for (i, &(x, y)) in knots.iter().enumerate() {
            if !x.is_finite() {
                return Err(Error::InvalidMembership(format!("knot {} has non-finite x", i + 1)));
            }
            if !(0.0..=1.0).contains(&y) {
                return Err(Error::InvalidMembership(format!(
                    "knot {} has degree {y} outside [0, 1]",
                    i + 1
                )));
            }
        }
        if let Some(i) = knots.windows(2).position(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidMembership(format!(
                "knot x-coordinates must strictly increase ({} then {})",
                knots[i].0,
                knots[i + 1].0
            )));
        }
        // -0.0 would otherwise survive into hashed degree vectors.
        let knots = knots.into_iter().map(|(x, y)| (x, y + 0.0)).collect();
        Ok(Self { knots })
    }

    pub fn knots(&self) -> &[(f64, f64)] {
        &self.knots
    }

    pub fn first_x(&self) -> f64 {
        self.knots[0].0
    }

    pub fn last_x(&self) -> f64 {
        self.knots[self.knots.len() - 1].0
    }

    /// Degree at `x`. Exact at every knot.
    pub fn eval(&self, x: f64) -> f64 {
        let (x0, y0) = self.knots[0];
        let (xn, yn) = self.knots[self.knots.len() - 1];
        if x <= x0 {
            return y0;
        }
        if x >= xn {
            return yn;
        }
        match self.knots.binary_search_by(|k| k.0.total_cmp(&x)) {
            Ok(i) => self.knots[i].1,
            Err(i) => {
                let (xa, ya) = self.knots[i - 1];
                let (xb, yb) = self.knots[i];
                if ya == yb {
                    ya
                } else {
                    ya + (x - xa) * (yb - ya) / (xb - xa)
                }
            }
        }
    }
}

impl TryFrom<Vec<(f64, f64)>> for PiecewiseLinear {
    type Error = Error;

    fn try_from(knots: Vec<(f64, f64)>) -> Result<Self> {
        Self::new(knots)
    }
}

impl From<PiecewiseLinear> for Vec<(f64, f64)> {
    fn from(f: PiecewiseLinear) -> Self {
        f.knots
    }
}

impl fmt::Display for PiecewiseLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (x, y)) in self.knots.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}:{y}")?;
        }
        f.write_str("]")
    }
}
