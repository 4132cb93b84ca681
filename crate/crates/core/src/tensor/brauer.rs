//! Kronecker symbols, Brauer maps `T_π` and Hom-space dimensions.
//!
//! A basis tensor `e_{i_1} ⊗ … ⊗ e_{i_k}` of `(C^N)^{⊗k}` is indexed by the
//! number `Σ (i_t - 1) N^{k-t}`, so tuples are ordered lexicographically.

use std::collections::BTreeMap;
use std::ops::AddAssign;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{power, rank_fraction_free, Matrix};
use crate::error::{Error, Result};
use crate::pairing::{enumerate, Family, PairingDiagram};

/// The orthogonal (quantum) groups `O_N ⊂ O_N^* ⊂ O_N^+` and the diagram
/// families spanning their Hom spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Model {
    #[serde(rename = "o")]
    O,
    #[serde(rename = "o*")]
    OStar,
    #[serde(rename = "o+")]
    OPlus,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::O, Model::OStar, Model::OPlus];

    pub fn family(self) -> Family {
        match self {
            Model::O => Family::All,
            Model::OStar => Family::Matching,
            Model::OPlus => Family::Noncrossing,
        }
    }
}

impl std::str::FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "o" | "O" => Ok(Model::O),
            "o*" | "O*" | "o_star" | "O_STAR" => Ok(Model::OStar),
            "o+" | "O+" | "o_plus" | "O_PLUS" => Ok(Model::OPlus),
            _ => Err(Error::Parse(format!("unknown model {s:?}"))),
        }
    }
}

fn tuple_index(tuple: &[usize], n: usize) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * n + (i - 1))
}

fn tuple_of(mut index: usize, len: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = index % n + 1;
        index /= n;
    }
    out
}

/// `δ_π`: 1 when every string of `π` joins equal indices, else 0.
pub fn delta(pi: &PairingDiagram, upper: &[usize], lower: &[usize], n: usize) -> Result<u8> {
    let (k, l) = pi.shape();
    if upper.len() != k || lower.len() != l {
        return Err(Error::Arity {
            upper: upper.len(),
            lower: lower.len(),
            k,
            l,
        });
    }
    if let Some(&bad) = upper.iter().chain(lower).find(|&&i| i == 0 || i > n) {
        return Err(Error::IndexRange { index: bad, n });
    }
    let value = |idx: usize| if idx < k { upper[idx] } else { lower[idx - k] };
    let mate = pi.mate();
    Ok(u8::from((0..k + l).all(|i| value(i) == value(mate[i]))))
}

/// `T_π` as a sparse 0/1 matrix of size `N^l × N^k`: column `c` lists the
/// rows holding a 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrauerMap {
    n: usize,
    upper: usize,
    lower: usize,
    columns: Vec<Vec<usize>>,
}

impl BrauerMap {
    pub fn new(pi: &PairingDiagram, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("N must be at least 1".into()));
        }
        let (k, l) = pi.shape();
        let mate = pi.mate();
        let free: Vec<usize> = (0..l)
            .filter(|&j| mate[k + j] > k + j)
            .collect();
        let n_cols = n.pow(k as u32);
        let mut columns = Vec::with_capacity(n_cols);
        let mut lower = vec![0; l];
        for c in 0..n_cols {
            let upper = tuple_of(c, k, n);
            let mut rows = Vec::new();
            let consistent = (0..k).all(|i| mate[i] >= k || upper[i] == upper[mate[i]]);
            if consistent {
                for (i, &u) in upper.iter().enumerate() {
                    if mate[i] >= k {
                        lower[mate[i] - k] = u;
                    }
                }
                // Each lower-lower string carries one free index.
                for assignment in 0..n.pow(free.len() as u32) {
                    let values = tuple_of(assignment, free.len(), n);
                    for (&j, &v) in free.iter().zip(&values) {
                        lower[j] = v;
                        lower[mate[k + j] - k] = v;
                    }
                    rows.push(tuple_index(&lower, n));
                }
                rows.sort_unstable();
            }
            columns.push(rows);
        }
        Ok(BrauerMap {
            n,
            upper: k,
            lower: l,
            columns,
        })
    }

    pub fn rows(&self) -> usize {
        self.n.pow(self.lower as u32)
    }

    pub fn cols(&self) -> usize {
        self.n.pow(self.upper as u32)
    }

    /// Row indices holding a 1 in column `c`.
    pub fn column(&self, c: usize) -> &[usize] {
        &self.columns[c]
    }

    pub fn nonzeros(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn to_matrix<T: Clone + Zero + One>(&self) -> Matrix<T> {
        let mut m = Matrix::zeros(self.rows(), self.cols());
        for (c, rows) in self.columns.iter().enumerate() {
            for &r in rows {
                m[(r, c)] = T::one();
            }
        }
        m
    }

    /// Flattened `N^{k+l}` vector, entry `r * N^k + c`.
    pub fn to_vector<T: Clone + Zero + One>(&self) -> Vec<T> {
        let mut v = vec![T::zero(); self.rows() * self.cols()];
        for (c, rows) in self.columns.iter().enumerate() {
            for &r in rows {
                v[r * self.cols() + c] = T::one();
            }
        }
        v
    }

    /// `Tr(T_other^t T_self)`, the number of positions where both are 1.
    pub fn trace_pairing(&self, other: &BrauerMap) -> Result<u64> {
        if (self.n, self.upper, self.lower) != (other.n, other.upper, other.lower) {
            return Err(Error::SizeMismatch {
                left: self.upper + self.lower,
                right: other.upper + other.lower,
            });
        }
        let mut total = 0u64;
        for (a, b) in self.columns.iter().zip(&other.columns) {
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        total += 1;
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
        Ok(total)
    }

    /// `self · first` (apply `first`, then `self`), column by column.
    pub fn product<T>(&self, first: &BrauerMap) -> Result<Vec<BTreeMap<usize, T>>>
    where
        T: Clone + Zero + One + AddAssign,
    {
        if self.n != first.n || self.upper != first.lower {
            return Err(Error::SizeMismatch {
                left: self.upper,
                right: first.lower,
            });
        }
        Ok(first
            .columns
            .iter()
            .map(|mid_rows| {
                let mut col: BTreeMap<usize, T> = BTreeMap::new();
                for &m in mid_rows {
                    for &r in &self.columns[m] {
                        *col.entry(r).or_insert_with(T::zero) += T::one();
                    }
                }
                col
            })
            .collect())
    }
}

pub fn t_map(pi: &PairingDiagram, n: usize) -> Result<BrauerMap> {
    BrauerMap::new(pi, n)
}

/// Gram matrix `⟨T_a, T_b⟩ = N^{loops(a, b)}` of a list of diagrams sharing a
/// shape.
pub fn gram_matrix<T>(diagrams: &[PairingDiagram], n: usize) -> Result<Matrix<T>>
where
    T: Clone + Zero + One + FromPrimitive,
{
    if let Some(first) = diagrams.first() {
        if let Some(bad) = diagrams.iter().find(|d| d.shape() != first.shape()) {
            return Err(Error::SizeMismatch {
                left: first.points(),
                right: bad.points(),
            });
        }
    }
    let base = T::from_usize(n).ok_or_else(|| Error::Invalid(format!("N = {n} overflows")))?;
    let len = diagrams.len();
    let mut m = Matrix::zeros(len, len);
    for a in 0..len {
        for b in a..len {
            let loops = PairingDiagram::glued_loops(&diagrams[a], &diagrams[b])?;
            let v = power(&base, loops);
            m[(a, b)] = v.clone();
            m[(b, a)] = v;
        }
    }
    Ok(m)
}

/// `dim Hom(u^{⊗k}, u^{⊗l})` for the model's group at dimension `N`, as the
/// exact rank of the Gram matrix of its diagrams.
pub fn hom_dimension(model: Model, n: usize, k: usize, l: usize) -> Result<usize> {
    if (k + l) % 2 == 1 {
        return Ok(0);
    }
    if n == 0 {
        return Err(Error::Invalid("N must be at least 1".into()));
    }
    let diagrams = enumerate(k, l, model.family())?;
    let gram: Matrix<BigInt> = gram_matrix(&diagrams, n)?;
    Ok(rank_fraction_free(&gram))
}

/// Rank of the `T_π` vectors of the model's diagrams, stacked as rows.
pub fn stacked_rank(model: Model, n: usize, k: usize, l: usize) -> Result<usize> {
    if (k + l) % 2 == 1 {
        return Ok(0);
    }
    let rows = enumerate(k, l, model.family())?
        .iter()
        .map(|d| Ok(BrauerMap::new(d, n)?.to_vector::<BigInt>()))
        .collect::<Result<Vec<_>>>()?;
    Ok(rank_fraction_free(&Matrix::from_rows(rows)?))
}

/// Checks `T_π T_σ = N^c T_{π∘σ}` exactly, where `σ` sits on top and `c` is
/// the number of loops the composition removes.
pub fn verify_composition_rule(
    pi: &PairingDiagram,
    sigma: &PairingDiagram,
    n: usize,
) -> Result<bool> {
    let (composed, loops) = PairingDiagram::compose(pi, sigma)?;
    verify_composition_with(
        &BrauerMap::new(pi, n)?,
        &BrauerMap::new(sigma, n)?,
        &BrauerMap::new(&composed, n)?,
        loops,
    )
}

/// The same check on precomputed maps.
pub fn verify_composition_with(
    pi: &BrauerMap,
    sigma: &BrauerMap,
    composed: &BrauerMap,
    loops: usize,
) -> Result<bool> {
    let product: Vec<BTreeMap<usize, BigInt>> = pi.product(sigma)?;
    let factor = power(&BigInt::from(pi.n), loops);
    Ok(product.len() == composed.columns.len()
        && product.iter().zip(&composed.columns).all(|(got, rows)| {
            got.len() == rows.len()
                && rows
                    .iter()
                    .all(|r| got.get(r).is_some_and(|v| *v == factor))
        }))
}
