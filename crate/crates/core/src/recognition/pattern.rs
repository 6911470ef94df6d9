use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A forbidden subgraph: a cycle `C_len`, or `copies` disjoint paths `P_len`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum ForbiddenPattern {
    Cycle { len: usize },
    PathUnion { copies: usize, len: usize },
}

impl ForbiddenPattern {
    pub fn cycle(len: usize) -> Result<Self> {
        if len < 3 {
            return Err(Error::InvalidPattern(format!(
                "C{len}: a cycle needs at least 3 vertices"
            )));
        }
        Ok(ForbiddenPattern::Cycle { len })
    }

    pub fn path_union(copies: usize, len: usize) -> Result<Self> {
        if copies == 0 {
            return Err(Error::InvalidPattern(
                "path unions need at least one copy".into(),
            ));
        }
        if len < 2 {
            return Err(Error::InvalidPattern(format!(
                "P{len}: paths need at least 2 vertices"
            )));
        }
        Ok(ForbiddenPattern::PathUnion { copies, len })
    }

    /// Number of vertices of the pattern graph.
    pub fn order(&self) -> usize {
        match *self {
            ForbiddenPattern::Cycle { len } => len,
            ForbiddenPattern::PathUnion { copies, len } => copies * len,
        }
    }
}

impl fmt::Display for ForbiddenPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ForbiddenPattern::Cycle { len } => write!(f, "C{len}"),
            ForbiddenPattern::PathUnion { copies: 1, len } => write!(f, "P{len}"),
            ForbiddenPattern::PathUnion { copies, len } => write!(f, "{copies}P{len}"),
        }
    }
}

/// Accepts `C<l>`, `P<l>`, `<t>P<l>` and `<t>K2` (an alias of `<t>P2`).
impl FromStr for ForbiddenPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || {
            Error::InvalidPattern(format!(
                "cannot parse pattern {s:?} (expected C<l> or <t>P<l>)"
            ))
        };
        if let Some(rest) = s.strip_prefix(['C', 'c']) {
            let len = rest.parse().map_err(|_| bad())?;
            return ForbiddenPattern::cycle(len);
        }
        let split = s.find(|c: char| !c.is_ascii_digit()).ok_or_else(bad)?;
        let (count, rest) = s.split_at(split);
        let copies = if count.is_empty() {
            1
        } else {
            count.parse().map_err(|_| bad())?
        };
        if let Some(len) = rest.strip_prefix(['P', 'p']) {
            return ForbiddenPattern::path_union(copies, len.parse().map_err(|_| bad())?);
        }
        if rest.eq_ignore_ascii_case("K2") {
            return ForbiddenPattern::path_union(copies, 2);
        }
        Err(bad())
    }
}

impl TryFrom<String> for ForbiddenPattern {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ForbiddenPattern> for String {
    fn from(p: ForbiddenPattern) -> String {
        p.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(
            "C4".parse::<ForbiddenPattern>().unwrap(),
            ForbiddenPattern::Cycle { len: 4 }
        );
        assert_eq!(
            "2P3".parse::<ForbiddenPattern>().unwrap(),
            ForbiddenPattern::PathUnion { copies: 2, len: 3 }
        );
        assert_eq!(
            "P4".parse::<ForbiddenPattern>().unwrap(),
            ForbiddenPattern::PathUnion { copies: 1, len: 4 }
        );
        assert_eq!(
            "2K2".parse::<ForbiddenPattern>().unwrap(),
            ForbiddenPattern::PathUnion { copies: 2, len: 2 }
        );
        for s in ["C4", "2P3", "P4", "C10", "3P2"] {
            assert_eq!(s.parse::<ForbiddenPattern>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn rejects_invalid() {
        for s in ["C2", "0P3", "P1", "X4", "", "2Q3", "C", "2P"] {
            assert!(s.parse::<ForbiddenPattern>().is_err(), "{s}");
        }
    }
}
