//! Seeded random points for property checks and CLI scans.
//!
//! Over ℚ entries are drawn uniformly from the integer box
//! `[-RATIONAL_BOX, RATIONAL_BOX]`; over 𝔽_p uniformly from the field.
//! Samplers that must land on a locus (stable, commuting, moment map zero)
//! retry up to [`MAX_ATTEMPTS`] times and then fail loudly.

use alloc::vec::Vec;

use rand::Rng;

use crate::adhm::{eta_embed, is_stable_adhm, moment, AdhmDatum};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::rep::{etale_point, gauge_act, FramedRep, GaugeElement};
use crate::scalar::{Field, Scalar};

pub const RATIONAL_BOX: i64 = 3;
pub const MAX_ATTEMPTS: usize = 256;

pub fn random_scalar<R: Rng + ?Sized>(field: Field, rng: &mut R) -> Scalar {
    random_scalar_in_box(field, RATIONAL_BOX, rng)
}

fn random_scalar_in_box<R: Rng + ?Sized>(field: Field, bound: i64, rng: &mut R) -> Scalar {
    match field {
        Field::Rationals => Scalar::from_i64(field, rng.gen_range(-bound..=bound)),
        Field::Prime(p) => Scalar::from_u64(field, u64::from(rng.gen_range(0..p))),
    }
}

pub fn random_vector<R: Rng + ?Sized>(field: Field, len: usize, rng: &mut R) -> Vector {
    (0..len).map(|_| random_scalar(field, rng)).collect()
}

pub fn random_matrix<R: Rng + ?Sized>(
    field: Field,
    rows: usize,
    cols: usize,
    rng: &mut R,
) -> Matrix {
    Matrix::new(rows, cols, field, random_vector(field, rows * cols, rng))
        .expect("shape by construction")
}

pub fn random_gauge<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> Result<GaugeElement> {
    for _ in 0..MAX_ATTEMPTS {
        if let Ok(g) = GaugeElement::new(random_matrix(field, n, n, rng)) {
            return Ok(g);
        }
    }
    Err(Error::SamplingFailed(MAX_ATTEMPTS))
}

/// Arbitrary representation; neither commuting nor stable in general.
pub fn random_rep<R: Rng + ?Sized>(
    field: Field,
    m: usize,
    n: usize,
    r: usize,
    rng: &mut R,
) -> Result<FramedRep> {
    let matrices = (0..m).map(|_| random_matrix(field, n, n, rng)).collect();
    let vectors = (0..r).map(|_| random_vector(field, n, rng)).collect();
    FramedRep::new(field, n, matrices, vectors)
}

/// Diagonal point with `n` distinct random supports in `𝔸^m` and a random
/// framing index per support.
pub fn random_etale_point<R: Rng + ?Sized>(
    field: Field,
    m: usize,
    n: usize,
    r: usize,
    rng: &mut R,
) -> Result<FramedRep> {
    let bound = RATIONAL_BOX.max(n as i64);
    let available = match field.order() {
        Some(q) => (q as u128).checked_pow(m as u32),
        None => ((2 * bound + 1) as u128).checked_pow(m as u32),
    };
    if available.is_some_and(|a| a < n as u128) {
        return Err(Error::ParameterOutOfRange(alloc::format!(
            "cannot place {n} distinct points in 𝔸^{m} over {field}"
        )));
    }
    let mut supports: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    let mut attempts = 0;
    while supports.len() < n {
        attempts += 1;
        if attempts > MAX_ATTEMPTS * n.max(1) {
            return Err(Error::SamplingFailed(attempts));
        }
        let p: Vec<Scalar> = (0..m)
            .map(|_| random_scalar_in_box(field, bound, rng))
            .collect();
        if !supports.contains(&p) {
            supports.push(p);
        }
    }
    let assignment: Vec<usize> = (0..n).map(|_| rng.gen_range(0..r)).collect();
    etale_point(field, m, r, &supports, &assignment)
}

fn polynomial_in<R: Rng + ?Sized>(base: &Matrix, rng: &mut R) -> Result<Matrix> {
    let field = base.field();
    let n = base.rows();
    let mut acc = Matrix::zeros(field, n, n);
    let mut power = Matrix::identity(field, n);
    for _ in 0..n {
        acc = acc.add(&power.scale(&random_scalar(field, rng))?)?;
        power = power.mul(base)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Strategy {
    Etale,
    Polynomial,
    Punctual,
    Scalar,
}

/// Random stable point of the commuting locus.
///
/// Mixes reduced points (conjugated diagonal tuples), polynomials in a single
/// random or nilpotent matrix, and scalar tuples with generating framings,
/// so that both smooth and singular points show up.
pub fn random_stable_commuting<R: Rng + ?Sized>(
    field: Field,
    m: usize,
    n: usize,
    r: usize,
    rng: &mut R,
) -> Result<FramedRep> {
    let mut strategies = alloc::vec![Strategy::Etale, Strategy::Polynomial, Strategy::Punctual];
    if n <= r {
        strategies.push(Strategy::Scalar);
    }
    for _ in 0..MAX_ATTEMPTS {
        let strategy = strategies[rng.gen_range(0..strategies.len())];
        let candidate = match strategy {
            Strategy::Etale => match random_etale_point(field, m, n, r, rng) {
                Ok(p) => gauge_act(&random_gauge(field, n, rng)?, &p)?,
                Err(Error::ParameterOutOfRange(_)) => continue,
                Err(e) => return Err(e),
            },
            Strategy::Polynomial | Strategy::Punctual => {
                let base = if strategy == Strategy::Polynomial {
                    random_matrix(field, n, n, rng)
                } else {
                    let shift = Matrix::from_fn(field, n, n, |i, j| {
                        if i == j + 1 {
                            field.one()
                        } else {
                            field.zero()
                        }
                    })?;
                    random_gauge(field, n, rng)?.conjugate(&shift)?
                };
                let matrices = (0..m)
                    .map(|_| polynomial_in(&base, rng))
                    .collect::<Result<Vec<_>>>()?;
                let vectors = (0..r).map(|_| random_vector(field, n, rng)).collect();
                FramedRep::new(field, n, matrices, vectors)?
            }
            Strategy::Scalar => {
                let matrices = (0..m)
                    .map(|_| Matrix::identity(field, n).scale(&random_scalar(field, rng)))
                    .collect::<Result<Vec<_>>>()?;
                let vectors = (0..r).map(|_| random_vector(field, n, rng)).collect();
                FramedRep::new(field, n, matrices, vectors)?
            }
        };
        if candidate.is_stable() && candidate.is_commuting() {
            return Ok(candidate);
        }
    }
    Err(Error::SamplingFailed(MAX_ATTEMPTS))
}

/// Random stable solution of `[B₁,B₂] + ij = 0`, usually with `j ≠ 0`.
///
/// Picks `B₁` and `i`, then `j` with `tr(B₁ᵏ i j) = 0` for `k < n` (the
/// condition for `−ij` to lie in the image of `ad B₁` when `B₁` is regular),
/// then solves `[B₁,B₂] = −ij` for `B₂` and adds a random element of the
/// centraliser. A quarter of the samples are instead images of random
/// commuting two-loop points under the `j = 0` embedding.
pub fn random_adhm_stable<R: Rng + ?Sized>(
    field: Field,
    n: usize,
    r: usize,
    rng: &mut R,
) -> Result<AdhmDatum> {
    for _ in 0..MAX_ATTEMPTS {
        let candidate = if rng.gen_range(0..4) == 0 {
            eta_embed(&random_stable_commuting(field, 2, n, r, rng)?)?
        } else {
            match adhm_candidate(field, n, r, rng)? {
                Some(d) => d,
                None => continue,
            }
        };
        if moment(&candidate).is_zero() && is_stable_adhm(&candidate) {
            return Ok(candidate);
        }
    }
    Err(Error::SamplingFailed(MAX_ATTEMPTS))
}

fn random_combination<R: Rng + ?Sized>(
    field: Field,
    len: usize,
    basis: &[Vector],
    rng: &mut R,
) -> Vector {
    let mut out = alloc::vec![field.zero(); len];
    for b in basis {
        let c = random_scalar(field, rng);
        for (x, y) in out.iter_mut().zip(b) {
            *x = &*x + &(&c * y);
        }
    }
    out
}

fn adhm_candidate<R: Rng + ?Sized>(
    field: Field,
    n: usize,
    r: usize,
    rng: &mut R,
) -> Result<Option<AdhmDatum>> {
    let b1 = random_matrix(field, n, n, rng);
    let i = random_matrix(field, n, r, rng);

    // tr(M j) = Σ M_ab j_ba with M = B₁ᵏ i; j is r×n, coordinate b·n + a.
    let mut constraints = Vec::with_capacity(n * r * n);
    let mut power = i.clone();
    for _ in 0..n {
        for b in 0..r {
            for a in 0..n {
                constraints.push(power.get(a, b).clone());
            }
        }
        power = b1.mul(&power)?;
    }
    let constraint = Matrix::new(n, r * n, field, constraints)?;
    let j_coords = random_combination(field, r * n, &constraint.kernel_basis(), rng);
    let j = Matrix::new(r, n, field, j_coords)?;

    let ad = Matrix::from_columns(
        field,
        n * n,
        &(0..n * n)
            .map(|c| {
                Ok(b1
                    .commutator(&Matrix::elementary(field, n, c / n, c % n))?
                    .into_entries())
            })
            .collect::<Result<Vec<_>>>()?,
    )?;
    let rhs: Vec<Scalar> = i.mul(&j)?.entries().iter().map(|x| -x).collect();
    let Some(particular) = ad.solve(&rhs)? else {
        return Ok(None);
    };
    let shift = random_combination(field, n * n, &ad.kernel_basis(), rng);
    let b2_coords: Vec<Scalar> = particular.iter().zip(&shift).map(|(x, y)| x + y).collect();
    let b2 = Matrix::new(n, n, field, b2_coords)?;
    Ok(Some(AdhmDatum::new(b1, b2, i, j)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn stable_commuting_samples_land_on_the_locus() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for field in [Field::Rationals, Field::Prime(7), Field::Prime(2)] {
            for (m, n, r) in [(2, 3, 1), (3, 2, 2), (1, 4, 1), (4, 1, 3), (2, 0, 1)] {
                let x = random_stable_commuting(field, m, n, r, &mut rng).unwrap();
                assert!(x.is_stable() && x.is_commuting());
                assert_eq!((x.m(), x.n(), x.r()), (m, n, r));
            }
        }
    }

    #[test]
    fn etale_needs_room() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(random_etale_point(Field::Prime(2), 1, 3, 1, &mut rng).is_err());
        assert!(random_etale_point(Field::Prime(2), 2, 4, 1, &mut rng).is_ok());
    }

    #[test]
    fn adhm_samples_solve_the_moment_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut nonzero_j = 0;
        for _ in 0..20 {
            let d = random_adhm_stable(Field::Rationals, 3, 2, &mut rng).unwrap();
            assert!(moment(&d).is_zero() && is_stable_adhm(&d));
            if !d.j().is_zero() {
                nonzero_j += 1;
            }
        }
        assert!(nonzero_j > 0);
    }
}
