//! Projective categories of pairings and their correspondence with ordinary
//! categories of pairings.
//!
//! A projective category `E` stores, for each `(k, l)`, a set of pairings of
//! shape `(2k, 2l)`. The affine category `D` with `D(2k, 2l) = E(k, l)` has
//! odd cells `D(k, l) = {σ : |σ ∈ E((k+1)/2, (l+1)/2)}`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::pairing::{
    enumerate, parse_cell_key, parse_in_shape, saturate, CategoryTruncation, Family,
    PairingDiagram, TruncationJson,
};

/// `|σ`: a through string added at the far left of both rows.
pub fn pad_through_left(a: &PairingDiagram) -> PairingDiagram {
    PairingDiagram::tensor(&PairingDiagram::identity(1), a)
}

/// `σ|`: a through string added at the far right of both rows.
pub fn pad_through_right(a: &PairingDiagram) -> PairingDiagram {
    PairingDiagram::tensor(a, &PairingDiagram::identity(1))
}

/// `|σ|`: through strings added on both sides.
pub fn pad_through_both(a: &PairingDiagram) -> PairingDiagram {
    pad_through_right(&pad_through_left(a))
}

/// Two consecutive one-leg rotations, which keep both rows even.
fn rotate_two(
    x: &PairingDiagram,
    rotate: fn(&PairingDiagram) -> Result<PairingDiagram>,
) -> Option<PairingDiagram> {
    rotate(x).and_then(|y| rotate(&y)).ok()
}

/// Every half shape `(k, l)` with `k + l ≤ half_size_cap`.
fn half_shapes(half_size_cap: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=half_size_cap).flat_map(move |total| (0..=total).map(move |k| (k, total - k)))
}

fn half_shape_of(d: &PairingDiagram) -> Result<(usize, usize)> {
    let (k, l) = d.shape();
    if k % 2 == 1 || l % 2 == 1 {
        return Err(Error::OddShape { upper: k, lower: l });
    }
    Ok((k / 2, l / 2))
}

/// A projective category of pairings truncated to cells `(k, l)` with
/// `k + l ≤ half_size_cap`. Cell `(k, l)` holds pairings of shape
/// `(2k, 2l)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveCategoryTruncation {
    half_size_cap: usize,
    cells: BTreeMap<(usize, usize), BTreeSet<PairingDiagram>>,
}

impl ProjectiveCategoryTruncation {
    /// The smallest truncated projective category containing `generators`:
    /// it contains every noncrossing pairing of even shape and is closed
    /// within the cap under tensor, composition, upside-down turning and
    /// `σ → |σ|`.
    ///
    /// Moving two legs around the left corner, which is composition with a
    /// nested cup or cap tensored with identities, is applied as a single
    /// step. Cells with `k + l = half_size_cap` can still miss diagrams
    /// whose every derivation passes through larger ones; computing with a
    /// larger cap and calling [`restrict`](Self::restrict) recovers them.
    pub fn closure(generators: &[PairingDiagram], half_size_cap: usize) -> Result<Self> {
        for g in generators {
            half_shape_of(g)?;
        }
        let required = generators
            .iter()
            .map(|g| g.points() / 2)
            .max()
            .unwrap_or(0);
        if half_size_cap < required {
            return Err(Error::CapTooSmall {
                cap: half_size_cap,
                required,
            });
        }

        let mut seeds = Vec::new();
        for (k, l) in half_shapes(half_size_cap) {
            seeds.extend(enumerate(2 * k, 2 * l, Family::Noncrossing)?);
        }
        seeds.extend(generators.iter().cloned());
        let size_cap = 2 * half_size_cap;
        let list = saturate(seeds, size_cap, |x| {
            let mut found = vec![x.involution()];
            if x.points() + 4 <= size_cap {
                found.push(pad_through_both(x));
            }
            found.extend(rotate_two(x, PairingDiagram::rotate_ccw));
            found.extend(rotate_two(x, PairingDiagram::rotate_cw));
            found
        });

        let mut cells = Self::empty_cells(half_size_cap);
        for d in list {
            let shape = half_shape_of(&d).expect("even shapes are closed under every rule");
            cells.entry(shape).or_default().insert(d);
        }
        Ok(ProjectiveCategoryTruncation {
            half_size_cap,
            cells,
        })
    }

    /// The even-shape part of `NC₂`, `P₂*` or `P₂`, by enumeration.
    pub fn from_family(family: Family, half_size_cap: usize) -> Self {
        let cells = half_shapes(half_size_cap)
            .map(|(k, l)| {
                let diagrams = enumerate(2 * k, 2 * l, family).expect("even total");
                ((k, l), diagrams.into_iter().collect())
            })
            .collect();
        ProjectiveCategoryTruncation {
            half_size_cap,
            cells,
        }
    }

    fn empty_cells(half_size_cap: usize) -> BTreeMap<(usize, usize), BTreeSet<PairingDiagram>> {
        half_shapes(half_size_cap).map(|s| (s, BTreeSet::new())).collect()
    }

    /// The cells with `k + l ≤ half_size_cap`.
    pub fn restrict(&self, half_size_cap: usize) -> Self {
        ProjectiveCategoryTruncation {
            half_size_cap: half_size_cap.min(self.half_size_cap),
            cells: self
                .cells
                .iter()
                .filter(|((k, l), _)| k + l <= half_size_cap)
                .map(|(s, c)| (*s, c.clone()))
                .collect(),
        }
    }

    pub fn half_size_cap(&self) -> usize {
        self.half_size_cap
    }

    pub fn cell(&self, k: usize, l: usize) -> Option<&BTreeSet<PairingDiagram>> {
        self.cells.get(&(k, l))
    }

    pub fn cells(&self) -> impl Iterator<Item = (&(usize, usize), &BTreeSet<PairingDiagram>)> {
        self.cells.iter()
    }

    pub fn contains(&self, d: &PairingDiagram) -> bool {
        half_shape_of(d)
            .ok()
            .and_then(|s| self.cells.get(&s))
            .is_some_and(|cell| cell.contains(d))
    }

    pub fn diagrams(&self) -> impl Iterator<Item = &PairingDiagram> {
        self.cells.values().flatten()
    }

    pub fn len(&self) -> usize {
        self.cells.values().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Checks the defining properties: every cell within the cap is stored
    /// with diagrams of the right shape, `NC₂(2k, 2l) ⊆ E(k, l)`, and the
    /// truncation is closed under upside-down turning, `σ → |σ|`, tensor
    /// products and composition wherever the results fit under the cap.
    pub fn validate(&self) -> Result<()> {
        let size_cap = 2 * self.half_size_cap;
        for shape in half_shapes(self.half_size_cap) {
            if !self.cells.contains_key(&shape) {
                return Err(Error::Invalid(format!("missing cell {},{}", shape.0, shape.1)));
            }
        }
        for (&(k, l), cell) in &self.cells {
            if k + l > self.half_size_cap {
                return Err(Error::Invalid(format!("cell {k},{l} exceeds the cap")));
            }
            if let Some(d) = cell.iter().find(|d| d.shape() != (2 * k, 2 * l)) {
                return Err(Error::Invalid(format!("{d} is stored in cell {k},{l}")));
            }
            for nc in enumerate(2 * k, 2 * l, Family::Noncrossing)? {
                if !cell.contains(&nc) {
                    return Err(Error::Invalid(format!("noncrossing {nc} missing")));
                }
            }
        }

        let missing = |d: PairingDiagram, how: &str| -> Result<()> {
            if d.points() <= size_cap && !self.contains(&d) {
                return Err(Error::Invalid(format!("not closed under {how}: {d} missing")));
            }
            Ok(())
        };
        let all: Vec<&PairingDiagram> = self.diagrams().collect();
        for x in &all {
            missing(x.involution(), "involution")?;
            missing(pad_through_both(x), "|σ|")?;
            for y in &all {
                if x.points() + y.points() <= size_cap {
                    missing(PairingDiagram::tensor(x, y), "tensor")?;
                }
                if let Ok((d, _)) = PairingDiagram::compose(x, y) {
                    missing(d, "composition")?;
                }
            }
        }
        Ok(())
    }

    /// Wire form; the `cap` field is the half size cap and cell keys are
    /// half shapes.
    pub fn to_json(&self) -> TruncationJson {
        TruncationJson::from_cells(self.half_size_cap, &self.cells)
    }

    pub fn from_json(json: &TruncationJson) -> Result<Self> {
        let mut cells = BTreeMap::new();
        for (key, items) in &json.cells {
            let (k, l) = parse_cell_key(key)?;
            let cell = items
                .iter()
                .map(|item| parse_in_shape(item, (2 * k, 2 * l)))
                .collect::<Result<BTreeSet<_>>>()?;
            cells.insert((k, l), cell);
        }
        Ok(ProjectiveCategoryTruncation {
            half_size_cap: json.cap,
            cells,
        })
    }
}

/// `E(k, l) = D(2k, 2l)` for `k + l ≤ cap / 2`.
pub fn affine_to_projective(d: &CategoryTruncation) -> Result<ProjectiveCategoryTruncation> {
    if d.size_cap() < 4 {
        return Err(Error::CapTooSmall {
            cap: d.size_cap(),
            required: 4,
        });
    }
    let half_size_cap = d.size_cap() / 2;
    let mut cells = BTreeMap::new();
    for (k, l) in half_shapes(half_size_cap) {
        let cell = d
            .cell(2 * k, 2 * l)
            .ok_or_else(|| Error::Invalid(format!("cell {},{} is not stored", 2 * k, 2 * l)))?;
        cells.insert((k, l), cell.clone());
    }
    Ok(ProjectiveCategoryTruncation {
        half_size_cap,
        cells,
    })
}

/// Rebuilds the affine category: even cells are copied and an odd cell
/// `(k, l)` holds the `σ` with `|σ` in `E`. Odd cells with
/// `k + l = 2 · half_size_cap` would need `|σ` beyond the cap and are not
/// stored.
pub fn projective_to_affine(e: &ProjectiveCategoryTruncation) -> CategoryTruncation {
    let size_cap = 2 * e.half_size_cap;
    let mut cells = BTreeMap::new();
    for (&(k, l), cell) in &e.cells {
        cells.insert((2 * k, 2 * l), cell.clone());
    }
    for total in (2..=size_cap.saturating_sub(2)).step_by(2) {
        for k in (1..total).step_by(2) {
            let l = total - k;
            let Some(target) = e.cell(k.div_ceil(2), l.div_ceil(2)) else {
                continue;
            };
            let cell = enumerate(k, l, Family::All)
                .expect("even total")
                .into_iter()
                .filter(|s| target.contains(&pad_through_left(s)))
                .collect();
            cells.insert((k, l), cell);
        }
    }
    CategoryTruncation::from_cells(size_cap, cells)
}

/// Whether `D → E → D` gives back `D` on every shape the projective side can
/// represent.
pub fn round_trip_check(d: &CategoryTruncation) -> bool {
    let Ok(e) = affine_to_projective(d) else {
        return false;
    };
    let back = projective_to_affine(&e);
    let agrees = back
        .cells()
        .all(|(&(k, l), cell)| d.cell(k, l) == Some(cell));
    agrees
}

/// Whether `E → D → E` gives back `E`.
pub fn round_trip_check_proj(e: &ProjectiveCategoryTruncation) -> bool {
    affine_to_projective(&projective_to_affine(e)).is_ok_and(|back| back == *e)
}
