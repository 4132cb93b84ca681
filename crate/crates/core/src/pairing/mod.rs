//! Pairings between an upper row of `k` points and a lower row of `l` points.
//!
//! Points are addressed internally by a flat index: `0..k` are the upper
//! points left to right, `k..k + l` the lower points left to right. A diagram
//! is stored as the involution `mate` on those indices, which is already a
//! canonical form, so equality and hashing are structural.

mod category;
mod enumerate;

pub use category::{CategoryTruncation, TruncationJson};
pub(crate) use category::{parse_cell_key, parse_in_shape, saturate};
pub use enumerate::{enumerate, Family};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A point of a two-row diagram, 1-based within its row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Upper(usize),
    Lower(usize),
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Upper(i) => write!(f, "u{i}"),
            Point::Lower(j) => write!(f, "l{j}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairingDiagram {
    upper: usize,
    mate: Vec<usize>,
}

impl PairingDiagram {
    pub fn new(upper: usize, lower: usize, pairs: &[(Point, Point)]) -> Result<Self> {
        if (upper + lower) % 2 == 1 {
            return Err(Error::OddTotal { upper, lower });
        }
        let n = upper + lower;
        let mut mate = vec![usize::MAX; n];
        let index = |p: Point| -> Result<usize> {
            match p {
                Point::Upper(i) if (1..=upper).contains(&i) => Ok(i - 1),
                Point::Lower(j) if (1..=lower).contains(&j) => Ok(upper + j - 1),
                _ => Err(Error::Parse(format!(
                    "point {p} outside a ({upper},{lower}) diagram"
                ))),
            }
        };
        for &(a, b) in pairs {
            let (x, y) = (index(a)?, index(b)?);
            if x == y || mate[x] != usize::MAX || mate[y] != usize::MAX {
                return Err(Error::Parse(format!(
                    "pair {a}-{b} reuses a point or joins a point to itself"
                )));
            }
            mate[x] = y;
            mate[y] = x;
        }
        if let Some(free) = mate.iter().position(|&m| m == usize::MAX) {
            return Err(Error::Parse(format!(
                "point {} is not paired",
                point_of(upper, free)
            )));
        }
        Ok(PairingDiagram { upper, mate })
    }

    fn from_mate(upper: usize, mate: Vec<usize>) -> Self {
        debug_assert!(mate.iter().enumerate().all(|(i, &m)| m != i && mate[m] == i));
        PairingDiagram { upper, mate }
    }

    pub fn empty() -> Self {
        PairingDiagram::from_mate(0, Vec::new())
    }

    pub fn identity(k: usize) -> Self {
        let mate = (0..2 * k).map(|i| if i < k { i + k } else { i - k }).collect();
        PairingDiagram::from_mate(k, mate)
    }

    /// The semicircle `⊔`, shape (0,2).
    pub fn cup() -> Self {
        PairingDiagram::from_mate(0, vec![1, 0])
    }

    /// The upside-down semicircle `⊓`, shape (2,0).
    pub fn cap() -> Self {
        PairingDiagram::from_mate(2, vec![1, 0])
    }

    /// The basic crossing, shape (2,2).
    pub fn crossing() -> Self {
        PairingDiagram::from_permutation(&Permutation::from_images_unchecked(vec![2, 1]))
    }

    /// `{u1-u2, l1-l2}`, shape (2,2).
    pub fn cupcap() -> Self {
        PairingDiagram::from_mate(2, vec![1, 0, 3, 2])
    }

    /// The (k,k) diagram with through strings `u_i - l_σ(i)`.
    pub fn from_permutation(p: &Permutation) -> Self {
        let k = p.len();
        let mut mate = vec![0; 2 * k];
        for i in 1..=k {
            let j = p.apply(i);
            mate[i - 1] = k + j - 1;
            mate[k + j - 1] = i - 1;
        }
        PairingDiagram::from_mate(k, mate)
    }

    /// The permutation this diagram draws, if every string goes through.
    pub fn to_permutation(&self) -> Option<Permutation> {
        if self.upper != self.lower() {
            return None;
        }
        let images = (0..self.upper)
            .map(|i| self.mate[i].checked_sub(self.upper).map(|j| j + 1))
            .collect::<Option<Vec<_>>>()?;
        Some(Permutation::from_images_unchecked(images))
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    pub fn lower(&self) -> usize {
        self.mate.len() - self.upper
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.upper, self.lower())
    }

    pub fn points(&self) -> usize {
        self.mate.len()
    }

    pub(crate) fn mate(&self) -> &[usize] {
        &self.mate
    }

    pub fn point(&self, index: usize) -> Point {
        point_of(self.upper, index)
    }

    /// Pairs in canonical order: within a pair upper before lower, then by
    /// position; pairs sorted.
    pub fn pairs(&self) -> Vec<(Point, Point)> {
        (0..self.points())
            .filter(|&i| i < self.mate[i])
            .map(|i| (self.point(i), self.point(self.mate[i])))
            .collect()
    }

    /// Number of strings joining the two rows.
    pub fn through_strings(&self) -> usize {
        (0..self.upper).filter(|&i| self.mate[i] >= self.upper).count()
    }

    /// Horizontal concatenation, `b` to the right of `a`.
    pub fn tensor(a: &PairingDiagram, b: &PairingDiagram) -> PairingDiagram {
        let (ka, la) = a.shape();
        let (kb, lb) = b.shape();
        let k = ka + kb;
        // Maps a flat index of `a` or `b` to the flat index in the result.
        let from_a = |i: usize| if i < ka { i } else { k + (i - ka) };
        let from_b = |i: usize| if i < kb { ka + i } else { k + la + (i - kb) };
        let mut mate = vec![0; k + la + lb];
        for (i, &m) in a.mate.iter().enumerate() {
            mate[from_a(i)] = from_a(m);
        }
        for (i, &m) in b.mate.iter().enumerate() {
            mate[from_b(i)] = from_b(m);
        }
        PairingDiagram::from_mate(k, mate)
    }

    /// Stacks `b` on top of `a` (so `b` acts first) and returns the surviving
    /// strings together with the number of closed loops removed from the
    /// middle row.
    pub fn compose(a: &PairingDiagram, b: &PairingDiagram) -> Result<(PairingDiagram, usize)> {
        if a.upper != b.lower() {
            return Err(Error::SizeMismatch {
                left: a.upper,
                right: b.lower(),
            });
        }
        let middle = a.upper;
        let top = b.upper;
        let bottom = a.lower();
        let mut seen_middle = vec![false; middle];
        let mut mate = vec![usize::MAX; top + bottom];

        // Walks from an outer point until the string exits on an outer point.
        // Outer indices: `0..top` are b's upper row, `top..` a's lower row.
        let walk = |start: usize, seen: &mut [bool]| -> usize {
            let (mut in_b, mut idx) = if start < top {
                (true, start)
            } else {
                (false, middle + (start - top))
            };
            loop {
                if in_b {
                    let t = b.mate[idx];
                    if t < top {
                        return t;
                    }
                    let j = t - top;
                    seen[j] = true;
                    in_b = false;
                    idx = j;
                } else {
                    let t = a.mate[idx];
                    if t >= middle {
                        return top + (t - middle);
                    }
                    seen[t] = true;
                    in_b = true;
                    idx = top + t;
                }
            }
        };

        for start in 0..top + bottom {
            if mate[start] == usize::MAX {
                let end = walk(start, &mut seen_middle);
                mate[start] = end;
                mate[end] = start;
            }
        }

        let mut loops = 0;
        for j in 0..middle {
            if seen_middle[j] {
                continue;
            }
            loops += 1;
            let mut cur = j;
            loop {
                seen_middle[cur] = true;
                let t = a.mate[cur];
                seen_middle[t] = true;
                cur = b.mate[top + t] - top;
                if cur == j {
                    break;
                }
            }
        }
        Ok((PairingDiagram::from_mate(top, mate), loops))
    }

    /// Upside-down turning.
    pub fn involution(&self) -> PairingDiagram {
        let (k, l) = self.shape();
        let flip = |i: usize| if i < k { l + i } else { i - k };
        let mut mate = vec![0; k + l];
        for (i, &m) in self.mate.iter().enumerate() {
            mate[flip(i)] = flip(m);
        }
        PairingDiagram::from_mate(l, mate)
    }

    /// Moves upper point 1 to lower point 1, keeping the cyclic boundary
    /// order: upper positions shift down by one, lower positions up by one.
    pub fn rotate_ccw(&self) -> Result<PairingDiagram> {
        let k = self.upper;
        if k == 0 {
            return Err(Error::EmptyRow("upper"));
        }
        // Old flat index → new flat index with upper count k - 1.
        let map = |i: usize| {
            if i == 0 {
                k - 1
            } else if i < k {
                i - 1
            } else {
                i
            }
        };
        Ok(self.relabel(k - 1, map))
    }

    /// Inverse of [`rotate_ccw`](Self::rotate_ccw): lower point 1 becomes
    /// upper point 1.
    pub fn rotate_cw(&self) -> Result<PairingDiagram> {
        let k = self.upper;
        if self.lower() == 0 {
            return Err(Error::EmptyRow("lower"));
        }
        let map = |i: usize| {
            if i == k {
                0
            } else if i < k {
                i + 1
            } else {
                i
            }
        };
        Ok(self.relabel(k + 1, map))
    }

    fn relabel(&self, upper: usize, map: impl Fn(usize) -> usize) -> PairingDiagram {
        let mut mate = vec![0; self.points()];
        for (i, &m) in self.mate.iter().enumerate() {
            mate[map(i)] = map(m);
        }
        PairingDiagram::from_mate(upper, mate)
    }

    /// Position on the boundary circle, read `u1 … uk` then `l_l … l1`.
    fn boundary_position(&self, index: usize) -> usize {
        if index < self.upper {
            index
        } else {
            self.points() - 1 - (index - self.upper)
        }
    }

    pub fn is_noncrossing(&self) -> bool {
        let chords: Vec<(usize, usize)> = (0..self.points())
            .filter(|&i| i < self.mate[i])
            .map(|i| {
                let (x, y) = (
                    self.boundary_position(i),
                    self.boundary_position(self.mate[i]),
                );
                (x.min(y), x.max(y))
            })
            .collect();
        chords.iter().enumerate().all(|(idx, &(a, b))| {
            chords[idx + 1..]
                .iter()
                .all(|&(c, d)| !((a < c && c < b && b < d) || (c < a && a < d && d < b)))
        })
    }

    /// Through strings join positions of equal parity and same-row strings
    /// positions of opposite parity. On the boundary circle this says every
    /// string joins positions of opposite parity.
    pub fn is_matching(&self) -> bool {
        (0..self.points()).all(|i| {
            (self.boundary_position(i) + self.boundary_position(self.mate[i])) % 2 == 1
        })
    }

    pub fn is_in(&self, family: Family) -> bool {
        match family {
            Family::All => true,
            Family::Noncrossing => self.is_noncrossing(),
            Family::Matching => self.is_matching(),
        }
    }

    /// Number of closed loops obtained by gluing `a` to `b` along all of their
    /// boundary points, equivalently by closing up `b*` stacked under `a`.
    pub fn glued_loops(a: &PairingDiagram, b: &PairingDiagram) -> Result<usize> {
        if a.shape() != b.shape() {
            return Err(Error::SizeMismatch {
                left: a.points(),
                right: b.points(),
            });
        }
        let mut seen = vec![false; a.points()];
        let mut loops = 0;
        for start in 0..a.points() {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut cur = start;
            loop {
                seen[cur] = true;
                let other = a.mate[cur];
                seen[other] = true;
                cur = b.mate[other];
                if cur == start {
                    break;
                }
            }
        }
        Ok(loops)
    }

    /// Parses a `;`-separated list; empty items are skipped.
    pub fn parse_list(s: &str) -> Result<Vec<PairingDiagram>> {
        s.split(';')
            .map(str::trim)
            .filter(|item| !item.is_empty())
            .map(str::parse)
            .collect()
    }
}

fn point_of(upper: usize, index: usize) -> Point {
    if index < upper {
        Point::Upper(index + 1)
    } else {
        Point::Lower(index - upper + 1)
    }
}

impl fmt::Display for PairingDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, (a, b)) in self.pairs().into_iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}-{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PairingDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (k, l) = self.shape();
        write!(f, "({k},{l})[{self}]")
    }
}

fn parse_point(token: &str) -> Result<Point> {
    let token = token.trim();
    let bad = || Error::Parse(format!("bad point {token:?}"));
    let (ctor, digits): (fn(usize) -> Point, &str) = if let Some(rest) = token.strip_prefix('u') {
        (Point::Upper, rest)
    } else if let Some(rest) = token.strip_prefix('l') {
        (Point::Lower, rest)
    } else {
        (Point::Lower, token)
    };
    let n: usize = digits.parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    Ok(ctor(n))
}

impl FromStr for PairingDiagram {
    type Err = Error;

    /// `"u1-l2,u2-l1"`; bare integers denote lower points, so `"1-2,3-4"`
    /// is a one-row (0,4) diagram. The shape is read off the largest index
    /// in each row.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(PairingDiagram::empty());
        }
        let pairs = s
            .split(',')
            .map(|item| {
                let (a, b) = item
                    .split_once('-')
                    .ok_or_else(|| Error::Parse(format!("bad pair {item:?}")))?;
                Ok((parse_point(a)?, parse_point(b)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut upper = 0;
        let mut lower = 0;
        for p in pairs.iter().flat_map(|&(a, b)| [a, b]) {
            match p {
                Point::Upper(i) => upper = upper.max(i),
                Point::Lower(j) => lower = lower.max(j),
            }
        }
        PairingDiagram::new(upper, lower, &pairs).map_err(|e| match e {
            Error::OddTotal { upper, lower } => Error::Parse(format!(
                "{s:?} leaves points unpaired in a ({upper},{lower}) diagram"
            )),
            e => e,
        })
    }
}

impl serde::Serialize for PairingDiagram {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
