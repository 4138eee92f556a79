use serde::Serialize;

use crate::error::Result;
use crate::rings::Ring;
use crate::series::{Mismatch, QSeries};

/// Result of comparing two sides of an identity through a fixed order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub order: i64,
    pub mismatch: Option<Mismatch>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }

    /// Combines several outcomes; the first failure wins.
    pub fn all(outcomes: impl IntoIterator<Item = CheckOutcome>) -> CheckOutcome {
        let mut order = i64::MAX;
        for o in outcomes {
            if !o.passed() {
                return o;
            }
            order = order.min(o.order);
        }
        CheckOutcome {
            order,
            mismatch: None,
        }
    }
}

/// Compares `lhs` and `rhs` exactly below `order`.
pub fn compare<R: Ring>(lhs: &QSeries<R>, rhs: &QSeries<R>, order: i64) -> Result<CheckOutcome> {
    Ok(CheckOutcome {
        order,
        mismatch: lhs.compare_through(rhs, order)?,
    })
}
