use serde::{Deserialize, Serialize};

use super::PairingDiagram;
use crate::error::{Error, Result};

/// The three categories of pairings `NC₂ ⊂ P₂* ⊂ P₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "nc")]
    Noncrossing,
    #[serde(rename = "matching")]
    Matching,
    #[serde(rename = "all")]
    All,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Noncrossing, Family::Matching, Family::All];

    pub fn name(self) -> &'static str {
        match self {
            Family::Noncrossing => "nc",
            Family::Matching => "matching",
            Family::All => "all",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nc" | "NC" => Ok(Family::Noncrossing),
            "matching" | "MATCHING" => Ok(Family::Matching),
            "all" | "ALL" => Ok(Family::All),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

/// All pairings of shape `(k, l)` in `family`, in canonical order.
pub fn enumerate(k: usize, l: usize, family: Family) -> Result<Vec<PairingDiagram>> {
    if (k + l) % 2 == 1 {
        return Err(Error::OddTotal { upper: k, lower: l });
    }
    let mut out = Vec::new();
    let mut mate = vec![usize::MAX; k + l];
    fill(&mut mate, k, family, &mut out);
    out.sort();
    Ok(out)
}

fn fill(mate: &mut [usize], upper: usize, family: Family, out: &mut Vec<PairingDiagram>) {
    let Some(first) = mate.iter().position(|&m| m == usize::MAX) else {
        let diagram = PairingDiagram::from_mate(upper, mate.to_vec());
        if diagram.is_in(family) {
            out.push(diagram);
        }
        return;
    };
    for other in first + 1..mate.len() {
        if mate[other] != usize::MAX {
            continue;
        }
        mate[first] = other;
        mate[other] = first;
        fill(mate, upper, family, out);
        mate[first] = usize::MAX;
        mate[other] = usize::MAX;
    }
}
