//! Permutations drawn as two-row diagrams.
//!
//! A permutation `σ ∈ S_k` is stored in one-line notation with 1-based
//! values: `images[i - 1] = σ(i)`. As a diagram, upper point `i` is joined to
//! lower point `σ(i)` and diagrams act downwards, so stacking `q` on top of
//! `p` gives the map "apply `q`, then `p`", written [`Permutation::compose`]`(p, q)`.

mod closure;

pub use closure::{ClosureOptions, Derivation, DerivationStep, FilteredClosure, Provenance};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation {
    images: Vec<usize>,
}

/// How the two strings of a removable neighbor pair run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// `σ(i + 1) = σ(i) + 1`, the pattern `XabY = ZabT`.
    Parallel,
    /// `σ(i) = σ(i + 1) + 1`, the pattern `XabY = ZbaT`.
    Crossed,
}

impl Permutation {
    /// Builds a permutation from one-line notation, checking bijectivity.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &v in &images {
            if v == 0 || v > k || seen[v - 1] {
                return Err(Error::Parse(format!(
                    "{images:?} is not a permutation of 1..={k}"
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn identity(k: usize) -> Self {
        Permutation {
            images: (1..=k).collect(),
        }
    }

    /// The permutation of `1..=k` moving `cycle[0] → cycle[1] → … → cycle[0]`.
    pub fn cycle(k: usize, cycle: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=k).collect();
        for (idx, &from) in cycle.iter().enumerate() {
            let to = cycle[(idx + 1) % cycle.len()];
            if from == 0 || from > k || to == 0 || to > k {
                return Err(Error::IndexRange {
                    index: from.max(to),
                    n: k,
                });
            }
            images[from - 1] = to;
        }
        Permutation::new(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `σ(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Points `i` with `σ(i) ≠ i`.
    pub fn support(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &v)| v != i + 1)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// `r(i) = p(q(i))`: `q` on top, `p` below.
    pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
        if p.len() != q.len() {
            return Err(Error::SizeMismatch {
                left: p.len(),
                right: q.len(),
            });
        }
        Ok(Permutation {
            images: q.images.iter().map(|&j| p.images[j - 1]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Horizontal concatenation `p ⊗ q`.
    pub fn tensor(p: &Permutation, q: &Permutation) -> Permutation {
        let shift = p.len();
        let images = p
            .images
            .iter()
            .copied()
            .chain(q.images.iter().map(|&v| v + shift))
            .collect();
        Permutation { images }
    }

    /// `σ|`: a fixed point appended at position `k + 1`.
    pub fn pad_right(&self) -> Permutation {
        let mut images = self.images.clone();
        images.push(self.len() + 1);
        Permutation { images }
    }

    /// `|σ`: a fixed point inserted at position 1.
    pub fn pad_left(&self) -> Permutation {
        let images = std::iter::once(1)
            .chain(self.images.iter().map(|&v| v + 1))
            .collect();
        Permutation { images }
    }

    pub(crate) fn pad_right_by(&self, n: usize) -> Permutation {
        Permutation::tensor(self, &Permutation::identity(n))
    }

    /// Strips fixed points from both ends until neither end is fixed.
    pub fn remove_outer_strings(&self) -> Permutation {
        let mut lo = 0;
        let mut hi = self.len();
        // Once the last string is dropped the renumbering is trivial, so the
        // outer strings at both ends can be located on the original numbering.
        while hi > lo && self.images[hi - 1] == hi {
            hi -= 1;
        }
        while lo < hi && self.images[lo] == lo + 1 {
            lo += 1;
        }
        Permutation {
            images: self.images[lo..hi].iter().map(|&v| v - lo).collect(),
        }
    }

    /// Every `i` such that `{σ(i), σ(i + 1)}` are consecutive integers.
    pub fn removable_neighbor_pairs(&self) -> Vec<(usize, Orientation)> {
        self.images
            .windows(2)
            .enumerate()
            .filter_map(|(i, w)| {
                if w[1] == w[0] + 1 {
                    Some((i + 1, Orientation::Parallel))
                } else if w[0] == w[1] + 1 {
                    Some((i + 1, Orientation::Crossed))
                } else {
                    None
                }
            })
            .collect()
    }

    /// Deletes upper points `{i, i + 1}` and their lower endpoints, renumbering
    /// both rows order-preservingly.
    pub fn remove_neighbor_pair(&self, upper_pos: usize) -> Result<Permutation> {
        let invalid = || Error::InvalidPosition {
            permutation: self.to_string(),
            position: upper_pos,
        };
        if upper_pos == 0 || upper_pos >= self.len() {
            return Err(invalid());
        }
        let a = self.images[upper_pos - 1];
        let b = self.images[upper_pos];
        if a.abs_diff(b) != 1 {
            return Err(invalid());
        }
        let low = a.min(b);
        let images = self
            .images
            .iter()
            .enumerate()
            .filter(|&(i, _)| i + 1 != upper_pos && i != upper_pos)
            .map(|(_, &v)| if v > low { v - 2 } else { v })
            .collect();
        Ok(Permutation { images })
    }

    /// `σ(i) ≡ i (mod 2)` for every `i`.
    pub fn is_parity_preserving(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &v)| (i + 1) % 2 == v % 2)
    }

    /// The commutator `σ⁻¹π⁻¹σπ` (with `π = p`, `σ = q`, diagram `π` on top)
    /// of two permutations whose supports meet in exactly one point `i`.
    ///
    /// The shorter permutation is padded on the right first. The result is
    /// checked against the 3-cycle `i → σ⁻¹(i) → π⁻¹(i) → i`.
    pub fn commutator_three_cycle(p: &Permutation, q: &Permutation) -> Result<Permutation> {
        let k = p.len().max(q.len());
        let p = p.pad_right_by(k - p.len());
        let q = q.pad_right_by(k - q.len());
        let supp_q = q.support();
        let common: Vec<usize> = p
            .support()
            .into_iter()
            .filter(|i| supp_q.contains(i))
            .collect();
        if common.len() != 1 {
            return Err(Error::SupportOverlap {
                overlap: common.len(),
            });
        }
        let i = common[0];
        let (p_inv, q_inv) = (p.inverse(), q.inverse());
        let mut result = Permutation::compose(&q, &p)?;
        result = Permutation::compose(&p_inv, &result)?;
        result = Permutation::compose(&q_inv, &result)?;

        let expected = Permutation::cycle(k, &[i, q_inv.apply(i), p_inv.apply(i)])?;
        assert_eq!(
            result, expected,
            "commutator of {p} and {q} is not the expected 3-cycle"
        );
        Ok(result)
    }

    /// Removes outer strings, then adjacent pairs of vertical strings, until
    /// nothing more can be removed.
    pub fn reduce_canonical(&self) -> Permutation {
        let mut current = self.remove_outer_strings();
        loop {
            let vertical_pair = current
                .images
                .windows(2)
                .enumerate()
                .find(|&(i, w)| w[0] == i + 1 && w[1] == i + 2)
                .map(|(i, _)| i + 1);
            match vertical_pair {
                Some(pos) => {
                    current = current
                        .remove_neighbor_pair(pos)
                        .expect("vertical pair is removable")
                        .remove_outer_strings();
                }
                None => return current,
            }
        }
    }

    /// All of `S_k` in lexicographic order.
    pub fn all(k: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (1..=k).collect();
        loop {
            out.push(Permutation {
                images: current.clone(),
            });
            if !next_permutation(&mut current) {
                return out;
            }
        }
    }

    /// Parses a `;`-separated list; empty items are skipped.
    pub fn parse_list(s: &str) -> Result<Vec<Permutation>> {
        s.split(';')
            .map(str::trim)
            .filter(|item| !item.is_empty())
            .map(str::parse)
            .collect()
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, v) in self.images.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Permutation::identity(0));
        }
        let images = s
            .split(',')
            .map(|item| {
                item.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad image {item:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(images)
    }
}

impl serde::Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
