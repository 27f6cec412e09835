//! Brute-force oracle over prime fields: count the invariant d-subspaces
//! of a matrix by streaming reduced-echelon bases, and recover the
//! dimension of the fixed-point variety by exact polynomial interpolation
//! of the counts across primes.

use std::fmt::Write as _;
use std::thread;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::Error;
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::scalar::{FieldSpec, Scalar};
use crate::variety::{fixed_dim_formula, VarietyDescriptor};

/// Guardrails for the enumeration; the default refuses Grassmannians with
/// more than 5e7 points.
#[derive(Clone, Copy, Debug)]
pub struct CountOptions {
    pub max_points: u64,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            max_points: 50_000_000,
        }
    }
}

/// Number of d-dimensional subspaces of F_q^n, exactly.
pub fn gaussian_binomial(n: usize, d: usize, q: u64) -> BigUint {
    assert!(d <= n, "need 0 <= d <= n");
    let q = BigUint::from(q);
    let mut acc = BigUint::one();
    // multiply-then-divide in this order keeps every partial product integral
    for i in 1..=d {
        let num = q.pow((n - d + i) as u32) - 1u32;
        let den = q.pow(i as u32) - 1u32;
        acc = acc * num / den;
    }
    acc
}

/// The same count as a polynomial in q, by the Pascal-style recurrence
/// `[n,k] = [n-1,k-1] + q^k [n-1,k]`. Integer coefficients throughout.
pub fn gaussian_binomial_poly(n: usize, d: usize) -> Poly {
    assert!(d <= n);
    let f = FieldSpec::Rational;
    // row r holds [r, k] for k = 0..=min(r, d)
    let mut row: Vec<Poly> = vec![Poly::one(f)];
    for r in 1..=n {
        let mut next = Vec::with_capacity(d.min(r) + 1);
        for k in 0..=d.min(r) {
            let mut entry = Poly::zero(f);
            if k >= 1 && k - 1 < row.len() {
                entry = entry.add(&row[k - 1]);
            }
            if k < row.len() && k < r {
                // q^k * [r-1, k]
                let mut shifted = vec![f.zero(); k];
                shifted.extend(row[k].coeffs().iter().cloned());
                entry = entry.add(&Poly::from_coeffs(f, shifted));
            }
            next.push(entry);
        }
        row = next;
    }
    row[d].clone()
}

/// A single point-count record.
#[derive(Clone, Debug, Serialize)]
pub struct FixedCountSample {
    pub descriptor: String,
    pub d: usize,
    pub q: u64,
    pub count: u64,
}

impl FixedCountSample {
    pub fn tsv_header() -> &'static str {
        "descriptor\td\tq\tcount"
    }

    pub fn to_tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}",
            self.descriptor, self.d, self.q, self.count
        )
    }
}

/// Counts the d-dimensional subspaces W of F_q^n with AW contained in W,
/// with the default guardrail.
pub fn count_fixed_subspaces(a: &Matrix, d: usize) -> Result<u64, Error> {
    count_fixed_subspaces_with(a, d, &CountOptions::default())
}

/// Counting core: enumerate reduced-echelon bases by pivot-column pattern
/// and test invariance of each basis vector by elimination against the
/// echelon rows. Patterns are independent, so they are counted on worker
/// threads and summed; the total is schedule-independent.
pub fn count_fixed_subspaces_with(a: &Matrix, d: usize, opts: &CountOptions) -> Result<u64, Error> {
    if !a.is_square() {
        return Err(Error::NotSquare);
    }
    let FieldSpec::Prime(p) = a.field() else {
        return Err(Error::PrimeFieldRequired(a.field()));
    };
    let n = a.rows();
    if d > n {
        return Err(Error::InfeasibleDimension { e: d, total: n });
    }
    // the counting loop accumulates n products of residues in a u64
    if p >= 1 << 26 {
        return Err(Error::ModulusTooLarge { p });
    }
    let total = gaussian_binomial(n, d, p);
    if total > BigUint::from(opts.max_points) {
        return Err(Error::GuardrailExceeded {
            points: total.to_string(),
            limit: opts.max_points,
        });
    }
    if d == 0 || d == n {
        return Ok(1);
    }
    // column-major copy of A as raw residues
    let mut a_cols = vec![0u64; n * n];
    for i in 0..n {
        for j in 0..n {
            let Scalar::Prime { value, .. } = a.get(i, j) else {
                unreachable!()
            };
            a_cols[j * n + i] = *value;
        }
    }
    let patterns = pivot_patterns(n, d);
    let workers = thread::available_parallelism()
        .map(|w| w.get())
        .unwrap_or(1)
        .min(patterns.len())
        .max(1);
    let chunk = patterns.len().div_ceil(workers);
    let a_cols = &a_cols;
    let counts: Vec<u64> = thread::scope(|scope| {
        let handles: Vec<_> = patterns
            .chunks(chunk)
            .map(|mine| {
                scope.spawn(move || {
                    mine.iter()
                        .map(|pat| count_pattern(a_cols, n, p, pat))
                        .sum::<u64>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let count = counts.iter().sum();
    debug_assert!(BigUint::from(count) <= total);
    Ok(count)
}

fn pivot_patterns(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn go(n: usize, d: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == d {
            out.push(current.clone());
            return;
        }
        for c in start..n {
            current.push(c);
            go(n, d, c + 1, current, out);
            current.pop();
        }
    }
    go(n, d, 0, &mut current, &mut out);
    out
}

/// Counts invariant subspaces whose echelon basis has the given pivot
/// columns. Arithmetic is raw u64 mod p; products stay below 2^64 because
/// the guardrail keeps p small.
fn count_pattern(a_cols: &[u64], n: usize, p: u64, pivots: &[usize]) -> u64 {
    let d = pivots.len();
    // free coordinates: (row, col) with col after the row's pivot and not a pivot
    let mut free: Vec<(usize, usize)> = Vec::new();
    for (i, &pc) in pivots.iter().enumerate() {
        for c in (pc + 1)..n {
            if !pivots.contains(&c) {
                free.push((i, c));
            }
        }
    }
    let mut rows = vec![0u64; d * n];
    for (i, &pc) in pivots.iter().enumerate() {
        rows[i * n + pc] = 1;
    }
    let mut digits = vec![0u64; free.len()];
    let mut image = vec![0u64; n];
    let mut count = 0u64;
    loop {
        for (k, &(i, c)) in free.iter().enumerate() {
            rows[i * n + c] = digits[k];
        }
        if pattern_is_invariant(a_cols, n, p, d, &rows, pivots, &mut image) {
            count += 1;
        }
        // odometer in base p
        let mut k = 0;
        while k < digits.len() {
            digits[k] += 1;
            if digits[k] < p {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
        if k == digits.len() {
            break;
        }
    }
    count
}

fn pattern_is_invariant(
    a_cols: &[u64],
    n: usize,
    p: u64,
    d: usize,
    rows: &[u64],
    pivots: &[usize],
    image: &mut [u64],
) -> bool {
    for i in 0..d {
        let v = &rows[i * n..(i + 1) * n];
        // image = A v, accumulating whole products; p is small enough that
        // n * (p-1)^2 cannot overflow
        image.fill(0);
        for (k, &vk) in v.iter().enumerate() {
            if vk == 0 {
                continue;
            }
            let col = &a_cols[k * n..(k + 1) * n];
            for (j, &ajk) in col.iter().enumerate() {
                image[j] += vk * ajk;
            }
        }
        for x in image.iter_mut() {
            *x %= p;
        }
        // eliminate against the echelon rows, then require zero
        for (t, &pc) in pivots.iter().enumerate() {
            let c = image[pc] % p;
            if c == 0 {
                continue;
            }
            let f = p - c;
            let row = &rows[t * n..(t + 1) * n];
            for (j, &rj) in row.iter().enumerate() {
                if rj != 0 {
                    image[j] = (image[j] + f * rj) % p;
                }
            }
        }
        if image.iter().any(|&x| x % p != 0) {
            return false;
        }
    }
    true
}

/// Exact count of invariant d-subspaces of a semisimple matrix with
/// eigenspace dimensions `dims`, as a polynomial in q: the sum over
/// compositions of products of Gaussian binomials. The degree must equal
/// the closed-form fixed dimension, which is asserted.
pub fn semisimple_count_polynomial(dims: &[usize], d: usize) -> Result<Poly, Error> {
    let total: usize = dims.iter().sum();
    if d > total {
        return Err(Error::InfeasibleDimension { e: d, total });
    }
    let f = FieldSpec::Rational;
    fn go(dims: &[usize], d: usize, f: FieldSpec) -> Poly {
        if dims.is_empty() {
            return if d == 0 { Poly::one(f) } else { Poly::zero(f) };
        }
        let mut acc = Poly::zero(f);
        for e0 in 0..=dims[0].min(d) {
            let head = gaussian_binomial_poly(dims[0], e0);
            let tail = go(&dims[1..], d - e0, f);
            acc = acc.add(&head.mul(&tail));
        }
        acc
    }
    let poly = go(dims, d, f);
    let expected_degree = fixed_dim_formula(dims, d)?;
    assert_eq!(
        poly.degree(),
        Some(expected_degree),
        "count polynomial degree must match the closed-form dimension"
    );
    Ok(poly)
}

/// Result of certifying a fixed-space dimension by interpolation.
#[derive(Clone, Debug, Serialize)]
pub struct InterpolationOutcome {
    pub descriptor: String,
    pub d: usize,
    pub dimension: usize,
    /// True when at least one held-out prime confirmed the interpolant.
    pub certified: bool,
    pub samples: Vec<FixedCountSample>,
    /// The interpolating polynomial, printed in q.
    pub count_polynomial: String,
}

/// Counts invariant subspaces of the descriptor's canonical representative
/// at each admissible prime, fits the interpolating polynomial through the
/// first d(n-d)+1 samples (or all but one, when fewer are admissible), and
/// certifies it against the held-out primes. The returned dimension is the
/// exact degree of the fit.
///
/// Primes not exceeding the representative's eigenvalue count cannot carry
/// the canonical eigenvalues and are skipped.
pub fn dimension_by_interpolation(
    desc: &VarietyDescriptor,
    d: usize,
    primes: &[u64],
    opts: &CountOptions,
) -> Result<InterpolationOutcome, Error> {
    let n = desc.n();
    if d > n {
        return Err(Error::InfeasibleDimension { e: d, total: n });
    }
    let m = desc.eigenvalue_count() as u64;
    let mut admissible: Vec<u64> = Vec::new();
    for &q in primes {
        if !crate::scalar::is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        // eigenvalues 1..m must stay distinct and nonzero mod q
        let enough = match desc {
            VarietyDescriptor::U(_) => true,
            _ => q > m,
        };
        if enough && !admissible.contains(&q) {
            admissible.push(q);
        }
    }
    admissible.sort_unstable();
    if admissible.len() < 2 {
        return Err(Error::TooFewPrimes {
            have: admissible.len(),
            need: 2,
        });
    }
    let mut samples = Vec::with_capacity(admissible.len());
    for &q in &admissible {
        let rep = desc.representative(FieldSpec::Prime(q))?;
        let count = count_fixed_subspaces_with(&rep, d, opts)?;
        samples.push(FixedCountSample {
            descriptor: desc.to_string(),
            d,
            q,
            count,
        });
    }
    let rational = FieldSpec::Rational;
    let bound = d * (n - d) + 1;
    let k_fit = bound.min(samples.len() - 1);
    let points: Vec<(Scalar, Scalar)> = samples[..k_fit]
        .iter()
        .map(|s| {
            (
                rational.from_i64(s.q as i64),
                rational.from_i64(s.count as i64),
            )
        })
        .collect();
    let fit = Poly::interpolate(rational, &points);
    for s in &samples[k_fit..] {
        let predicted = fit.eval(&rational.from_i64(s.q as i64));
        if predicted != rational.from_i64(s.count as i64) {
            return Err(Error::NotPolynomial {
                q: s.q,
                observed: s.count,
                predicted: predicted.to_string(),
            });
        }
    }
    let mut poly_str = String::new();
    write!(poly_str, "{fit}").unwrap();
    Ok(InterpolationOutcome {
        descriptor: desc.to_string(),
        d,
        dimension: fit.degree().unwrap_or(0),
        certified: samples.len() > k_fit,
        samples,
        count_polynomial: poly_str,
    })
}
