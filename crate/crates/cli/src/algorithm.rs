use std::fmt;
use std::str::FromStr;

use cddohs_core::{Cddo, CddoHs, HarmonySearch, Optimizer};

/// Algorithms the runner knows by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    CddoHs,
    Cddo,
    Hs,
}

impl Algorithm {
    /// Canonical order, also used for output rows.
    pub const ALL: [Algorithm; 3] = [Algorithm::CddoHs, Algorithm::Cddo, Algorithm::Hs];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::CddoHs => "cddo-hs",
            Algorithm::Cddo => "cddo",
            Algorithm::Hs => "hs",
        }
    }

    /// The optimizer with default parameters.
    pub fn optimizer(self) -> Box<dyn Optimizer> {
        match self {
            Algorithm::CddoHs => Box::new(CddoHs::default()),
            Algorithm::Cddo => Box::new(Cddo::default()),
            Algorithm::Hs => Box::new(HarmonySearch::default()),
        }
    }

    /// Parses a comma-separated list; `all` expands to every algorithm.
    /// Duplicates are dropped and the result is in canonical order.
    pub fn parse_list(spec: &str) -> Result<Vec<Algorithm>, UnknownAlgorithm> {
        let mut out = Vec::new();
        for part in spec.split(',').map(str::trim) {
            if part.eq_ignore_ascii_case("all") {
                out.extend(Self::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownAlgorithm(pub String);

impl fmt::Display for UnknownAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown algorithm `{}` (expected cddo, hs, cddo-hs or all)", self.0)
    }
}

impl std::error::Error for UnknownAlgorithm {}

impl FromStr for Algorithm {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace(['_', '–'], "-");
        Self::ALL
            .into_iter()
            .find(|a| a.name() == key)
            .ok_or_else(|| UnknownAlgorithm(s.to_string()))
    }
}
