//! Signed-margin verdicts shared by the scalar and matrix checks.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Orientation of an asserted inequality `lhs ? rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Direction {
    /// `lhs <= rhs`
    Leq,
    /// `lhs >= rhs`
    Geq,
}

impl Direction {
    pub fn flipped(self) -> Self {
        match self {
            Direction::Leq => Direction::Geq,
            Direction::Geq => Direction::Leq,
        }
    }

    /// `Leq` when `cond` holds, `Geq` otherwise.
    pub fn leq_if(cond: bool) -> Self {
        if cond {
            Direction::Leq
        } else {
            Direction::Geq
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Leq => "<=",
            Direction::Geq => ">=",
        })
    }
}

/// Outcome of evaluating one inequality at one parameter point.
///
/// For scalar checks `margin` is `rhs - lhs` (`Leq`) or `lhs - rhs` (`Geq`).
/// For Löwner-order checks `lhs`/`rhs` carry the Hilbert–Schmidt norms of the
/// two sides and `margin` is the smallest eigenvalue of the oriented difference.
/// `holds` is always `margin >= -tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityVerdict {
    pub check_id: String,
    pub lhs: f64,
    pub rhs: f64,
    pub direction: Direction,
    pub margin: f64,
    pub tolerance: f64,
    pub holds: bool,
    pub params: BTreeMap<String, f64>,
}

impl InequalityVerdict {
    /// Scalar verdict with tolerance `tol_rel * (|lhs| + |rhs|)`.
    pub fn scalar(
        check_id: impl Into<String>,
        lhs: f64,
        rhs: f64,
        direction: Direction,
        tol_rel: f64,
    ) -> Result<Self> {
        let margin = match direction {
            Direction::Leq => rhs - lhs,
            Direction::Geq => lhs - rhs,
        };
        Self::with_margin(
            check_id,
            lhs,
            rhs,
            direction,
            margin,
            tol_rel * (lhs.abs() + rhs.abs()),
        )
    }

    /// Verdict whose margin is computed elsewhere (e.g. an eigenvalue).
    pub fn with_margin(
        check_id: impl Into<String>,
        lhs: f64,
        rhs: f64,
        direction: Direction,
        margin: f64,
        tolerance: f64,
    ) -> Result<Self> {
        let check_id = check_id.into();
        if !margin.is_finite() || !tolerance.is_finite() || !lhs.is_finite() || !rhs.is_finite()
        {
            return Err(Error::NonFinite(format!("verdict {check_id}")));
        }
        Ok(InequalityVerdict {
            check_id,
            lhs,
            rhs,
            direction,
            margin,
            tolerance,
            holds: margin >= -tolerance,
            params: BTreeMap::new(),
        })
    }

    pub fn param(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn params<'a>(mut self, entries: impl IntoIterator<Item = (&'a str, f64)>) -> Self {
        for (k, v) in entries {
            self.params.insert(k.to_string(), v);
        }
        self
    }

    pub fn renamed(mut self, check_id: impl Into<String>) -> Self {
        self.check_id = check_id.into();
        self
    }

    /// `margin + tolerance`: nonnegative exactly when the verdict holds.
    pub fn slack(&self) -> f64 {
        self.margin + self.tolerance
    }

    /// The same comparison asserted the other way round.
    pub fn flipped(&self) -> Self {
        let margin = -self.margin;
        InequalityVerdict {
            direction: self.direction.flipped(),
            margin,
            holds: margin >= -self.tolerance,
            ..self.clone()
        }
    }

    /// Collapse the links of a chain into the link with the least slack,
    /// relabelled with `check_id`. Params of every link are merged.
    pub fn worst_of(check_id: &str, links: Vec<InequalityVerdict>) -> InequalityVerdict {
        assert!(!links.is_empty(), "worst_of needs at least one link");
        let mut params = BTreeMap::new();
        for link in &links {
            params.extend(link.params.iter().map(|(k, v)| (k.clone(), *v)));
        }
        let worst = links
            .into_iter()
            .min_by(|x, y| x.slack().total_cmp(&y.slack()))
            .unwrap();
        InequalityVerdict {
            check_id: check_id.to_string(),
            params,
            ..worst
        }
    }
}

impl fmt::Display for InequalityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {:.12e} {} {:.12e} (margin {:.3e}, tol {:.1e})",
            self.check_id,
            if self.holds { "holds" } else { "FAILS" },
            self.lhs,
            self.direction,
            self.rhs,
            self.margin,
            self.tolerance
        )
    }
}
