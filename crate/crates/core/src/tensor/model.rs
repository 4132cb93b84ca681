//! Floating-point checks of the half-liberated matrix model and of the
//! relations satisfied by projective coordinates.

use num_complex::Complex;
use num_traits::{Float, FromPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

type Mat2<T> = [[Complex<T>; 2]; 2];

/// Outcome of a sampled identity check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelReport {
    pub pass: bool,
    pub max_dev: f64,
    pub samples: usize,
    pub tolerance: f64,
}

impl ModelReport {
    fn new(max_dev: f64, samples: usize, tolerance: f64) -> Self {
        ModelReport {
            pass: max_dev < tolerance,
            max_dev,
            samples,
            tolerance,
        }
    }
}

/// Negative control: perturbs one model matrix entry so the checks must fail.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Corruption {
    #[default]
    None,
    Perturb(f64),
}

fn norm_tolerance<T: Float + FromPrimitive>() -> T {
    T::from_f64(1e-12)
        .unwrap()
        .max(T::epsilon() * T::from_u32(64).unwrap())
}

fn check_unit<T: Float + FromPrimitive>(norm_sqr: T) -> Result<()> {
    if (norm_sqr - T::one()).abs() > norm_tolerance::<T>() {
        return Err(Error::Invalid(format!(
            "vector is not a unit vector: |z|^2 = {}",
            norm_sqr.to_f64().unwrap_or(f64::NAN)
        )));
    }
    Ok(())
}

/// A unit vector drawn by normalizing independent standard Gaussians.
pub fn random_unit_complex<T, R>(n: usize, rng: &mut R) -> Vec<Complex<T>>
where
    T: Float,
    StandardNormal: Distribution<T>,
    R: Rng + ?Sized,
{
    let z: Vec<Complex<T>> = (0..n)
        .map(|_| Complex::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
        .collect();
    let norm = z.iter().fold(T::zero(), |acc, c| acc + c.norm_sqr()).sqrt();
    z.into_iter().map(|c| c / norm).collect()
}

pub fn random_unit_real<T, R>(n: usize, rng: &mut R) -> Vec<T>
where
    T: Float,
    StandardNormal: Distribution<T>,
    R: Rng + ?Sized,
{
    let z: Vec<T> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
    let norm = z.iter().fold(T::zero(), |acc, &v| acc + v * v).sqrt();
    z.into_iter().map(|v| v / norm).collect()
}

fn mat_mul<T: Float>(a: &Mat2<T>, b: &Mat2<T>) -> Mat2<T> {
    let mut out = [[Complex::new(T::zero(), T::zero()); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn mat_dist<T: Float>(a: &Mat2<T>, b: &Mat2<T>) -> T {
    let mut worst = T::zero();
    for i in 0..2 {
        for j in 0..2 {
            worst = worst.max((a[i][j] - b[i][j]).norm());
        }
    }
    worst
}

/// The 2×2 matrix model `x_i = ((0, z_i), (z̄_i, 0))` of the half-liberated
/// sphere over a unit vector `z ∈ C^N`.
#[derive(Debug, Clone)]
pub struct HalfLibModel<T> {
    z: Vec<Complex<T>>,
    x: Vec<Mat2<T>>,
}

impl<T: Float + FromPrimitive> HalfLibModel<T> {
    pub fn new(z: Vec<Complex<T>>) -> Result<Self> {
        check_unit(z.iter().fold(T::zero(), |acc, c| acc + c.norm_sqr()))?;
        let zero = Complex::new(T::zero(), T::zero());
        let x = z.iter().map(|&zi| [[zero, zi], [zi.conj(), zero]]).collect();
        Ok(HalfLibModel { z, x })
    }

    pub fn sample<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self
    where
        StandardNormal: Distribution<T>,
    {
        HalfLibModel::new(random_unit_complex(n, rng)).expect("normalized sample")
    }

    pub fn dimension(&self) -> usize {
        self.z.len()
    }

    pub fn generators(&self) -> &[Mat2<T>] {
        &self.x
    }

    fn corrupt(&mut self, by: T) {
        if let Some(first) = self.x.first_mut() {
            first[0][0] = first[0][0] + Complex::new(by, T::zero());
        }
    }

    /// Largest deviation over `x_i = x_i*`, `Σ x_i² = 1` and
    /// `x_i x_j x_k = x_k x_j x_i` for all triples.
    pub fn max_deviation(&self) -> T {
        let one = Complex::new(T::one(), T::zero());
        let zero = Complex::new(T::zero(), T::zero());
        let mut worst = T::zero();
        let mut sum_sq = [[zero; 2]; 2];
        for x in &self.x {
            let adjoint = [[x[0][0].conj(), x[1][0].conj()], [x[0][1].conj(), x[1][1].conj()]];
            worst = worst.max(mat_dist(x, &adjoint));
            let sq = mat_mul(x, x);
            for i in 0..2 {
                for j in 0..2 {
                    sum_sq[i][j] = sum_sq[i][j] + sq[i][j];
                }
            }
        }
        worst = worst.max(mat_dist(&sum_sq, &[[one, zero], [zero, one]]));
        for a in &self.x {
            for b in &self.x {
                let ab = mat_mul(a, b);
                for c in &self.x {
                    let abc = mat_mul(&ab, c);
                    let cba = mat_mul(&mat_mul(c, b), a);
                    worst = worst.max(mat_dist(&abc, &cba));
                }
            }
        }
        worst
    }
}

/// Samples `samples` models in `C^N` and reports the largest deviation from
/// the half-liberated sphere relations.
pub fn halflib_model_check(n: usize, samples: usize, tol: f64, seed: u64) -> Result<ModelReport> {
    halflib_model_check_with::<f64>(n, samples, tol, seed, Corruption::None)
}

pub fn halflib_model_check_with<T>(
    n: usize,
    samples: usize,
    tol: f64,
    seed: u64,
    corruption: Corruption,
) -> Result<ModelReport>
where
    T: Float + FromPrimitive,
    StandardNormal: Distribution<T>,
{
    check_sizes(n, samples)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let mut model = HalfLibModel::<T>::sample(n, &mut rng);
        if let Corruption::Perturb(by) = corruption {
            model.corrupt(T::from_f64(by).unwrap());
        }
        worst = worst.max(model.max_deviation().to_f64().unwrap_or(f64::INFINITY));
    }
    Ok(ModelReport::new(worst, samples, tol))
}

fn check_sizes(n: usize, samples: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Invalid("N must be at least 1".into()));
    }
    if samples == 0 {
        return Err(Error::Invalid("need at least one sample".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProjectiveKind {
    Real,
    Complex,
}

/// Projective coordinates `p_ab = z_a z_b` (real) or `p_ab = z_a z̄_b`
/// (complex) of a unit vector, stored as an `N × N` complex matrix.
#[derive(Debug, Clone)]
pub struct ProjectiveModel<T> {
    kind: ProjectiveKind,
    n: usize,
    p: Vec<Complex<T>>,
}

impl<T: Float + FromPrimitive> ProjectiveModel<T> {
    pub fn real(z: &[T]) -> Result<Self> {
        check_unit(z.iter().fold(T::zero(), |acc, &v| acc + v * v))?;
        let n = z.len();
        let p = (0..n * n)
            .map(|idx| Complex::new(z[idx / n] * z[idx % n], T::zero()))
            .collect();
        Ok(ProjectiveModel {
            kind: ProjectiveKind::Real,
            n,
            p,
        })
    }

    pub fn complex(z: &[Complex<T>]) -> Result<Self> {
        check_unit(z.iter().fold(T::zero(), |acc, c| acc + c.norm_sqr()))?;
        let n = z.len();
        let p = (0..n * n)
            .map(|idx| z[idx / n] * z[idx % n].conj())
            .collect();
        Ok(ProjectiveModel {
            kind: ProjectiveKind::Complex,
            n,
            p,
        })
    }

    /// `p_ab` with 0-based indices.
    pub fn entry(&self, a: usize, b: usize) -> Complex<T> {
        self.p[a * self.n + b]
    }

    fn corrupt(&mut self, by: T) {
        if let Some(first) = self.p.first_mut() {
            *first = *first + Complex::new(by, T::zero());
        }
    }

    /// Largest deviation over the projector laws `p = p* = p²`, `Tr p = 1`,
    /// plus symmetry and `p_ab p_cd = p_ac p_bd` (real) or
    /// `p_ab p_cd = p_ad p_cb` (complex).
    pub fn max_deviation(&self) -> T {
        let n = self.n;
        let p = |a: usize, b: usize| self.entry(a, b);
        let mut worst = T::zero();
        let mut trace = Complex::new(T::zero(), T::zero());
        for a in 0..n {
            trace = trace + p(a, a);
            for b in 0..n {
                worst = worst.max((p(a, b) - p(b, a).conj()).norm());
                if self.kind == ProjectiveKind::Real {
                    worst = worst.max((p(a, b) - p(b, a)).norm());
                }
                let sq = (0..n).fold(Complex::new(T::zero(), T::zero()), |acc, c| {
                    acc + p(a, c) * p(c, b)
                });
                worst = worst.max((sq - p(a, b)).norm());
            }
        }
        worst = worst.max((trace - Complex::new(T::one(), T::zero())).norm());
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let rhs = match self.kind {
                            ProjectiveKind::Real => p(a, c) * p(b, d),
                            ProjectiveKind::Complex => p(a, d) * p(c, b),
                        };
                        worst = worst.max((p(a, b) * p(c, d) - rhs).norm());
                    }
                }
            }
        }
        worst
    }
}

pub fn projective_relation_check(
    kind: ProjectiveKind,
    n: usize,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<ModelReport> {
    projective_relation_check_with::<f64>(kind, n, samples, tol, seed, Corruption::None)
}

pub fn projective_relation_check_with<T>(
    kind: ProjectiveKind,
    n: usize,
    samples: usize,
    tol: f64,
    seed: u64,
    corruption: Corruption,
) -> Result<ModelReport>
where
    T: Float + FromPrimitive,
    StandardNormal: Distribution<T>,
{
    check_sizes(n, samples)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let mut model = match kind {
            ProjectiveKind::Real => ProjectiveModel::real(&random_unit_real::<T, _>(n, &mut rng)),
            ProjectiveKind::Complex => {
                ProjectiveModel::complex(&random_unit_complex::<T, _>(n, &mut rng))
            }
        }
        .expect("normalized sample");
        if let Corruption::Perturb(by) = corruption {
            model.corrupt(T::from_f64(by).unwrap());
        }
        worst = worst.max(model.max_deviation().to_f64().unwrap_or(f64::INFINITY));
    }
    Ok(ModelReport::new(worst, samples, tol))
}
