//! Deciding which of the three possible objects a set of generators
//! produces: monomial spheres, monomial projective spaces, easy and
//! projectively easy quantum groups.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pairing::PairingDiagram;
use crate::perm::{ClosureOptions, Derivation, FilteredClosure, Permutation};

macro_rules! verdict_display {
    ($ty:ty, $($variant:path => $name:literal),+ $(,)?) => {
        impl $ty {
            pub fn name(self) -> &'static str {
                match self {
                    $($variant => $name),+
                }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }
    };
}

/// Monomial spheres, ordered by inclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SphereClass {
    Classical,
    HalfLiberated,
    Free,
}

verdict_display!(SphereClass,
    SphereClass::Classical => "classical",
    SphereClass::HalfLiberated => "half-liberated",
    SphereClass::Free => "free",
);

/// Monomial projective spaces, ordered by inclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProjClass {
    RealProjective,
    ComplexProjective,
    FreeProjective,
}

verdict_display!(ProjClass,
    ProjClass::RealProjective => "real-projective",
    ProjClass::ComplexProjective => "complex-projective",
    ProjClass::FreeProjective => "free-projective",
);

/// Easy quantum groups `O_N ⊂ O_N* ⊂ O_N^+`, ordered by inclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum QGClass {
    #[serde(rename = "o")]
    O,
    #[serde(rename = "o*")]
    OStar,
    #[serde(rename = "o+")]
    OPlus,
}

verdict_display!(QGClass,
    QGClass::O => "o",
    QGClass::OStar => "o*",
    QGClass::OPlus => "o+",
);

impl QGClass {
    /// The projective version `G → PG`.
    pub fn projective(self) -> ProjQGClass {
        match self {
            QGClass::O => ProjQGClass::PO,
            QGClass::OStar => ProjQGClass::PU,
            QGClass::OPlus => ProjQGClass::POPlus,
        }
    }
}

/// Projectively easy quantum groups `PO_N ⊂ PU_N ⊂ PO_N^+`, ordered by
/// inclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ProjQGClass {
    #[serde(rename = "po")]
    PO,
    #[serde(rename = "pu")]
    PU,
    #[serde(rename = "po+")]
    POPlus,
}

verdict_display!(ProjQGClass,
    ProjQGClass::PO => "po",
    ProjQGClass::PU => "pu",
    ProjQGClass::POPlus => "po+",
);

/// The sphere cut out by `x_{i1}…x_{ik} = x_{iσ(1)}…x_{iσ(k)}` for the given
/// permutations. Identities impose nothing and are ignored.
pub fn classify_sphere(generators: &[Permutation]) -> SphereClass {
    let mut relevant = generators.iter().filter(|g| !g.is_identity()).peekable();
    if relevant.peek().is_none() {
        SphereClass::Free
    } else if relevant.all(Permutation::is_parity_preserving) {
        SphereClass::HalfLiberated
    } else {
        SphereClass::Classical
    }
}

/// Verdict for a projective space together with whether the generator set
/// was already closed under `σ → |σ|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProjectiveVerdict {
    pub verdict: ProjClass,
    pub input_shift_stable: bool,
}

/// Adds `|σ|`, `||σ||`, … for every non-identity generator, up to the
/// largest generator size.
pub fn shift_completion(generators: &[Permutation]) -> BTreeSet<Permutation> {
    let max = generators.iter().map(Permutation::len).max().unwrap_or(0);
    let mut out = BTreeSet::new();
    for g in generators.iter().filter(|g| !g.is_identity()) {
        let mut p = g.clone();
        while p.len() <= max {
            let next = p.pad_left().pad_right();
            out.insert(p);
            p = next;
        }
    }
    out
}

/// The projective space defined by the shift completion of the given
/// permutations, all of even size.
pub fn classify_projective(generators: &[Permutation]) -> Result<ProjectiveVerdict> {
    if let Some(odd) = generators.iter().find(|g| g.len() % 2 == 1) {
        return Err(Error::OddSize(odd.len()));
    }
    let given: BTreeSet<Permutation> = generators
        .iter()
        .filter(|g| !g.is_identity())
        .cloned()
        .collect();
    let completed = shift_completion(generators);
    let completed: Vec<Permutation> = completed.into_iter().collect();
    let verdict = match classify_sphere(&completed) {
        SphereClass::Classical => ProjClass::RealProjective,
        SphereClass::HalfLiberated => ProjClass::ComplexProjective,
        SphereClass::Free => ProjClass::FreeProjective,
    };
    Ok(ProjectiveVerdict {
        verdict,
        input_shift_stable: completed.len() == given.len(),
    })
}

/// The easy quantum group whose category of pairings is generated by the
/// given diagrams.
pub fn classify_easy(generators: &[PairingDiagram]) -> QGClass {
    if generators.iter().all(PairingDiagram::is_noncrossing) {
        QGClass::OPlus
    } else if generators.iter().all(PairingDiagram::is_matching) {
        QGClass::OStar
    } else {
        QGClass::O
    }
}

/// The projectively easy quantum group whose projective category is
/// generated by the given diagrams, all of even shape.
pub fn classify_projectively_easy(generators: &[PairingDiagram]) -> Result<ProjQGClass> {
    if let Some(odd) = generators
        .iter()
        .find(|g| g.upper() % 2 == 1 || g.lower() % 2 == 1)
    {
        return Err(Error::OddShape {
            upper: odd.upper(),
            lower: odd.lower(),
        });
    }
    Ok(classify_easy(generators).projective())
}

/// Corroborating evidence from the closure engine.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Witness {
    Found {
        target: Permutation,
        derivation: Derivation,
    },
    NotFoundWithinCap {
        target: Permutation,
    },
}

impl Witness {
    pub fn target(&self) -> &Permutation {
        match self {
            Witness::Found { target, .. } | Witness::NotFoundWithinCap { target } => target,
        }
    }

    pub fn derivation(&self) -> Option<&Derivation> {
        match self {
            Witness::Found { derivation, .. } => Some(derivation),
            Witness::NotFoundWithinCap { .. } => None,
        }
    }
}

/// Searches the closure for the basic crossing `[2,1]` (when some generator
/// is not parity preserving) or the half-liberated crossing `[3,2,1]`, and
/// returns a derivation of it from the generators.
pub fn witness(generators: &[Permutation], level_cap: usize) -> Result<Witness> {
    let target: Permutation = match classify_sphere(generators) {
        SphereClass::Free => return Err(Error::NoNonIdentityGenerator),
        SphereClass::Classical => Permutation::cycle(2, &[1, 2])?,
        SphereClass::HalfLiberated => Permutation::cycle(3, &[1, 3])?,
    };
    let closure =
        FilteredClosure::with_options(generators, level_cap, ClosureOptions { provenance: true })?;
    Ok(match closure.derivation(&target) {
        Some(derivation) => Witness::Found { target, derivation },
        None => Witness::NotFoundWithinCap { target },
    })
}
