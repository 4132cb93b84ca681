use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::{enumerate, Family, PairingDiagram};
use crate::error::{Error, Result};

/// A category of pairings truncated to diagrams with at most `size_cap`
/// points.
///
/// Cells are keyed by shape `(k, l)`. A truncation built by saturation stores
/// every shape with `k + l` even and at most the cap; truncations rebuilt
/// from a projective category may omit some boundary shapes, which is why
/// [`cell`](Self::cell) returns an `Option`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryTruncation {
    size_cap: usize,
    cells: BTreeMap<(usize, usize), BTreeSet<PairingDiagram>>,
}

/// Every shape `(k, l)` with `k + l` even and `k + l ≤ cap`.
pub(crate) fn even_shapes(cap: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=cap).flat_map(move |total| {
        (0..=total)
            .filter(move |_| total % 2 == 0)
            .map(move |k| (k, total - k))
    })
}

/// Closes `seeds` under `unary`, tensor products and composition, keeping
/// only diagrams with at most `size_cap` points. Results are returned in
/// discovery order.
pub(crate) fn saturate(
    seeds: Vec<PairingDiagram>,
    size_cap: usize,
    unary: impl Fn(&PairingDiagram) -> Vec<PairingDiagram>,
) -> Vec<PairingDiagram> {
    let mut seen: HashSet<PairingDiagram> = HashSet::new();
    let mut list: Vec<PairingDiagram> = Vec::new();
    let push = |d: PairingDiagram, seen: &mut HashSet<_>, list: &mut Vec<_>| {
        if d.points() <= size_cap && seen.insert(d.clone()) {
            list.push(d);
        }
    };
    for d in seeds {
        push(d, &mut seen, &mut list);
    }

    // Each new element is combined with everything found before it
    // (itself included), in both orders.
    let mut next = 0;
    while next < list.len() {
        let x = list[next].clone();
        let mut found = unary(&x);
        for y in &list[..=next] {
            if x.points() + y.points() <= size_cap {
                found.push(PairingDiagram::tensor(&x, y));
                found.push(PairingDiagram::tensor(y, &x));
            }
            if let Ok((d, _)) = PairingDiagram::compose(&x, y) {
                found.push(d);
            }
            if let Ok((d, _)) = PairingDiagram::compose(y, &x) {
                found.push(d);
            }
        }
        for d in found {
            push(d, &mut seen, &mut list);
        }
        next += 1;
    }
    list
}

impl CategoryTruncation {
    pub(crate) fn from_cells(
        size_cap: usize,
        cells: BTreeMap<(usize, usize), BTreeSet<PairingDiagram>>,
    ) -> Self {
        CategoryTruncation { size_cap, cells }
    }

    /// The smallest truncated category containing `generators`: closed
    /// within the cap under tensor, composition, upside-down turning and
    /// rotation, and containing identities and the semicircle.
    pub fn closure(generators: &[PairingDiagram], size_cap: usize) -> Result<Self> {
        let required = generators
            .iter()
            .map(PairingDiagram::points)
            .max()
            .unwrap_or(0)
            .max(2);
        if size_cap < required {
            return Err(Error::CapTooSmall {
                cap: size_cap,
                required,
            });
        }

        let mut seeds: Vec<PairingDiagram> =
            (0..=size_cap / 2).map(PairingDiagram::identity).collect();
        seeds.push(PairingDiagram::cup());
        seeds.extend(generators.iter().cloned());
        let list = saturate(seeds, size_cap, |x| {
            let mut found = vec![x.involution()];
            found.extend(x.rotate_ccw().ok());
            found.extend(x.rotate_cw().ok());
            found
        });

        let mut cells: BTreeMap<_, BTreeSet<_>> =
            even_shapes(size_cap).map(|s| (s, BTreeSet::new())).collect();
        for d in list {
            cells.entry(d.shape()).or_default().insert(d);
        }
        Ok(CategoryTruncation { size_cap, cells })
    }

    /// `NC₂`, `P₂*` or `P₂` truncated to `size_cap` points, by enumeration.
    pub fn from_family(family: Family, size_cap: usize) -> Self {
        let cells = even_shapes(size_cap)
            .map(|(k, l)| {
                let diagrams = enumerate(k, l, family).expect("even total");
                ((k, l), diagrams.into_iter().collect())
            })
            .collect();
        CategoryTruncation { size_cap, cells }
    }

    pub fn size_cap(&self) -> usize {
        self.size_cap
    }

    pub fn cell(&self, k: usize, l: usize) -> Option<&BTreeSet<PairingDiagram>> {
        self.cells.get(&(k, l))
    }

    pub fn cells(&self) -> impl Iterator<Item = (&(usize, usize), &BTreeSet<PairingDiagram>)> {
        self.cells.iter()
    }

    pub fn contains(&self, d: &PairingDiagram) -> bool {
        self.cells
            .get(&d.shape())
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

    /// Shapes stored in both truncations whose cells differ.
    pub fn differing_cells(&self, other: &CategoryTruncation) -> Vec<(usize, usize)> {
        self.cells
            .iter()
            .filter_map(|(shape, cell)| match other.cells.get(shape) {
                Some(theirs) if theirs != cell => Some(*shape),
                _ => None,
            })
            .collect()
    }

    /// Equality on the shapes both truncations store.
    pub fn agrees_with(&self, other: &CategoryTruncation) -> bool {
        self.differing_cells(other).is_empty()
    }

    pub fn to_json(&self) -> TruncationJson {
        TruncationJson::from_cells(self.size_cap, &self.cells)
    }

    pub fn from_json(json: &TruncationJson) -> Result<Self> {
        Ok(CategoryTruncation {
            size_cap: json.cap,
            cells: json.parse_cells()?,
        })
    }
}

/// Wire form of a truncation: `{"cap": n, "cells": {"k,l": [pairings]}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationJson {
    pub cap: usize,
    pub cells: BTreeMap<String, Vec<String>>,
}

impl TruncationJson {
    pub(crate) fn from_cells(
        cap: usize,
        cells: &BTreeMap<(usize, usize), BTreeSet<PairingDiagram>>,
    ) -> Self {
        TruncationJson {
            cap,
            cells: cells
                .iter()
                .map(|((k, l), cell)| {
                    (
                        format!("{k},{l}"),
                        cell.iter().map(ToString::to_string).collect(),
                    )
                })
                .collect(),
        }
    }

    pub(crate) fn parse_cells(
        &self,
    ) -> Result<BTreeMap<(usize, usize), BTreeSet<PairingDiagram>>> {
        let mut out = BTreeMap::new();
        for (key, items) in &self.cells {
            let shape = parse_cell_key(key)?;
            let mut cell = BTreeSet::new();
            for item in items {
                cell.insert(parse_in_shape(item, shape)?);
            }
            out.insert(shape, cell);
        }
        Ok(out)
    }
}

/// Parses a `"k,l"` cell key.
pub(crate) fn parse_cell_key(key: &str) -> Result<(usize, usize)> {
    key.split_once(',')
        .and_then(|(k, l)| Some((k.trim().parse().ok()?, l.trim().parse().ok()?)))
        .ok_or_else(|| Error::Parse(format!("bad cell key {key:?}")))
}

/// Parses a pairing string and checks it sits in the cell it is listed under.
pub(crate) fn parse_in_shape(s: &str, (k, l): (usize, usize)) -> Result<PairingDiagram> {
    let d: PairingDiagram = s.parse()?;
    if d.shape() != (k, l) {
        return Err(Error::Parse(format!("{s:?} does not have shape ({k},{l})")));
    }
    Ok(d)
}
