//! Verification records: one named comparison with both sides and its margin.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Eq,
    Le,
    Lt,
    Ge,
    Gt,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        })
    }
}

/// `lhs relation rhs`, evaluated once at construction.
///
/// Values are kept as decimal strings so arbitrarily large integers survive
/// serialization. `margin` is `rhs - lhs` for integer comparisons (`lhs - rhs`
/// for `>=`/`>`), so a passing inequality has a non-negative margin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub lhs: String,
    pub relation: Relation,
    pub rhs: String,
    pub margin: String,
    pub passed: bool,
}

impl Check {
    pub fn int(name: impl Into<String>, lhs: impl Into<BigInt>, relation: Relation, rhs: impl Into<BigInt>) -> Self {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        let passed = match relation {
            Relation::Eq => lhs == rhs,
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
        };
        let margin = match relation {
            Relation::Ge | Relation::Gt => &lhs - &rhs,
            _ => &rhs - &lhs,
        };
        Self {
            name: name.into(),
            lhs: lhs.to_string(),
            relation,
            rhs: rhs.to_string(),
            margin: margin.to_string(),
            passed,
        }
    }

    pub fn le(name: impl Into<String>, lhs: impl Into<BigInt>, rhs: impl Into<BigInt>) -> Self {
        Self::int(name, lhs, Relation::Le, rhs)
    }

    pub fn ge(name: impl Into<String>, lhs: impl Into<BigInt>, rhs: impl Into<BigInt>) -> Self {
        Self::int(name, lhs, Relation::Ge, rhs)
    }

    pub fn eq(name: impl Into<String>, lhs: impl Into<BigInt>, rhs: impl Into<BigInt>) -> Self {
        Self::int(name, lhs, Relation::Eq, rhs)
    }

    /// Real comparison printed with six decimals.
    pub fn real(name: impl Into<String>, lhs: f64, relation: Relation, rhs: f64) -> Self {
        let passed = match relation {
            Relation::Eq => lhs == rhs,
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
        };
        let margin = match relation {
            Relation::Ge | Relation::Gt => lhs - rhs,
            _ => rhs - lhs,
        };
        Self {
            name: name.into(),
            lhs: format!("{lhs:.6}"),
            relation,
            rhs: format!("{rhs:.6}"),
            margin: format!("{margin:.6}"),
            passed,
        }
    }

    /// A yes/no property; `lhs` and `rhs` are `true`/`expected`.
    pub fn holds(name: impl Into<String>, value: bool) -> Self {
        Self {
            name: name.into(),
            lhs: value.to_string(),
            relation: Relation::Eq,
            rhs: "true".into(),
            margin: "0".into(),
            passed: value,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "pass" } else { "FAIL" };
        write!(f, "[{status}] {}: {} {} {}", self.name, self.lhs, self.relation, self.rhs)
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn margins_are_signed_by_direction() {
        let c = Check::le("a", 3, 5);
        assert!(c.passed);
        assert_eq!(c.margin, "2");
        let c = Check::ge("b", 3, 5);
        assert!(!c.passed);
        assert_eq!(c.margin, "-2");
        assert!(Check::eq("c", 7u64, 7u32).passed);
        assert!(Check::real("d", 16.0, Relation::Gt, 13.5).passed);
    }
}
