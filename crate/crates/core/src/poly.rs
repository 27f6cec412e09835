//! Dense univariate polynomials over an exact field, with root splitting
//! and exact interpolation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::scalar::{FieldSpec, Scalar};

/// Polynomial stored by ascending powers, with no trailing zero
/// coefficients; the zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn from_coeffs(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Poly {
        assert!(coeffs.iter().all(|c| c.field() == field), "mixed fields");
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    /// Coefficients given from the highest power down.
    pub fn from_descending(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Poly {
        coeffs.reverse();
        Poly::from_coeffs(field, coeffs)
    }

    pub fn zero(field: FieldSpec) -> Poly {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: FieldSpec) -> Poly {
        Poly::from_coeffs(field, vec![field.one()])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == self.field.one())
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k).add(&rhs.coeff(k))).collect();
        Poly::from_coeffs(self.field, coeffs)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k).sub(&rhs.coeff(k))).collect();
        Poly::from_coeffs(self.field, coeffs)
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Poly::from_coeffs(self.field, coeffs)
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::from_coeffs(self.field, self.coeffs.iter().map(|c| c.mul(s)).collect())
    }

    /// Product of (x - r)^m over the given roots; for building expected
    /// values in tests and reports.
    pub fn from_roots(field: FieldSpec, roots: &[(Scalar, usize)]) -> Poly {
        let mut acc = Poly::one(field);
        for (r, m) in roots {
            let lin = Poly::from_coeffs(field, vec![r.neg(), field.one()]);
            for _ in 0..*m {
                acc = acc.mul(&lin);
            }
        }
        acc
    }

    /// Synthetic division by (x - root); `None` when the remainder is
    /// nonzero, i.e. `root` is not a root.
    pub fn deflate(&self, root: &Scalar) -> Option<Poly> {
        if self.is_zero() {
            return None;
        }
        let mut quotient = vec![self.field.zero(); self.coeffs.len() - 1];
        let mut carry = self.field.zero();
        for k in (0..self.coeffs.len()).rev() {
            let v = self.coeffs[k].add(&carry.mul(root));
            if k == 0 {
                if !v.is_zero() {
                    return None;
                }
            } else {
                quotient[k - 1] = v.clone();
                carry = v;
            }
        }
        Some(Poly::from_coeffs(self.field, quotient))
    }

    /// Splits a monic polynomial into linear factors over its field,
    /// returning root/multiplicity pairs. Prime fields are handled by
    /// trying every residue; the rationals by integer-scaled rational root
    /// search. A spectrum that does not split is a hard error, never
    /// approximated.
    pub fn split_roots(&self) -> Result<Vec<(Scalar, usize)>, Error> {
        assert!(self.is_monic(), "split_roots expects a monic polynomial");
        assert!(self.degree().unwrap_or(0) >= 1, "degree must be >= 1");
        let mut roots: Vec<(Scalar, usize)> = Vec::new();
        let mut rem = self.clone();
        let candidates: Vec<Scalar> = match self.field {
            FieldSpec::Prime(p) => (0..p as i64).map(|v| self.field.from_i64(v)).collect(),
            FieldSpec::Rational => rational_root_candidates(self),
        };
        for cand in candidates {
            let mut mult = 0;
            while let Some(q) = rem.deflate(&cand) {
                mult += 1;
                rem = q;
                if rem.degree() == Some(0) {
                    break;
                }
            }
            if mult > 0 {
                roots.push((cand, mult));
            }
            if rem.degree() == Some(0) {
                break;
            }
        }
        if rem.degree() != Some(0) {
            return Err(Error::NonSplit(self.field));
        }
        roots.sort_by_key(|(r, _)| r.sort_key());
        debug_assert_eq!(
            roots.iter().map(|(_, m)| m).sum::<usize>(),
            self.degree().unwrap()
        );
        Ok(roots)
    }

    /// Unique interpolating polynomial through the given points (Newton's
    /// divided differences); the x-values must be pairwise distinct.
    pub fn interpolate(field: FieldSpec, points: &[(Scalar, Scalar)]) -> Poly {
        assert!(!points.is_empty());
        let n = points.len();
        // divided-difference table, collapsed in place
        let xs: Vec<&Scalar> = points.iter().map(|(x, _)| x).collect();
        let mut dd: Vec<Scalar> = points.iter().map(|(_, y)| y.clone()).collect();
        let mut newton_coeffs = vec![dd[0].clone()];
        for level in 1..n {
            for i in 0..n - level {
                let num = dd[i + 1].sub(&dd[i]);
                let den = xs[i + level].sub(xs[i]);
                assert!(!den.is_zero(), "interpolation nodes must be distinct");
                dd[i] = num.div(&den);
            }
            dd.truncate(n - level);
            newton_coeffs.push(dd[0].clone());
        }
        // expand the Newton form
        let mut acc = Poly::zero(field);
        let mut basis = Poly::one(field);
        for (k, c) in newton_coeffs.iter().enumerate() {
            acc = acc.add(&basis.scale(c));
            if k + 1 < n {
                let lin = Poly::from_coeffs(field, vec![xs[k].neg(), field.one()]);
                basis = basis.mul(&lin);
            }
        }
        acc
    }
}

/// Candidate rational roots of a monic rational polynomial. Substituting
/// y = Dx for D the common denominator gives a monic integer polynomial
/// whose rational roots are integers dividing its constant term.
fn rational_root_candidates(f: &Poly) -> Vec<Scalar> {
    let n = f.degree().expect("nonzero");
    let rat = |s: &Scalar| match s {
        Scalar::Rational(r) => r.clone(),
        _ => unreachable!(),
    };
    let mut lcm_den = BigInt::one();
    for c in f.coeffs() {
        lcm_den = lcm_den.lcm(rat(c).denom());
    }
    // b_i = a_i * D^{n-i}, integer coefficients, still monic
    let mut b: Vec<BigInt> = Vec::with_capacity(n + 1);
    let mut pow = BigInt::one();
    for i in (0..=n).rev() {
        let v = rat(&f.coeff(i)) * BigRational::from_integer(pow.clone());
        debug_assert!(v.denom().is_one());
        b.push(v.numer().clone());
        pow *= &lcm_den;
    }
    b.reverse();
    // strip roots at zero, then divisors of the constant term
    let mut k = 0;
    while k <= n && b[k].is_zero() {
        k += 1;
    }
    let mut candidates = vec![Scalar::Rational(BigRational::zero())];
    if k <= n {
        let c0 = b[k].abs();
        let mut divs: Vec<BigInt> = Vec::new();
        let mut t = BigInt::one();
        while &t * &t <= c0 {
            if (&c0 % &t).is_zero() {
                divs.push(t.clone());
                divs.push(&c0 / &t);
            }
            t += 1;
        }
        for d in divs {
            for signed in [d.clone(), -d] {
                let root = BigRational::new(signed, lcm_den.clone());
                candidates.push(Scalar::Rational(root));
            }
        }
    }
    candidates.sort_by_key(Scalar::sort_key);
    candidates.dedup();
    candidates
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rational;

    fn q(v: i64) -> Scalar {
        Q.from_i64(v)
    }

    #[test]
    fn eval_and_arith() {
        // (x - 1)(x - 4) = x^2 - 5x + 4
        let f = Poly::from_roots(Q, &[(q(1), 1), (q(4), 1)]);
        assert_eq!(f, Poly::from_descending(Q, vec![q(1), q(-5), q(4)]));
        assert_eq!(f.eval(&q(2)), q(-2));
        assert!(f.eval(&q(4)).is_zero());
    }

    #[test]
    fn split_rational_examples() {
        // (x-1)^2 (x-4)
        let f = Poly::from_roots(Q, &[(q(1), 2), (q(4), 1)]);
        let roots = f.split_roots().unwrap();
        assert_eq!(roots, vec![(q(1), 2), (q(4), 1)]);

        // non-integer rational roots: (x - 1/2)(x + 3/2)
        let half = Q.parse("1/2").unwrap();
        let mth = Q.parse("-3/2").unwrap();
        let g = Poly::from_roots(Q, &[(half.clone(), 1), (mth.clone(), 1)]);
        let roots = g.split_roots().unwrap();
        assert_eq!(roots, vec![(mth, 1), (half, 1)]);

        // x^2 + 1 has no rational roots
        let h = Poly::from_coeffs(Q, vec![q(1), q(0), q(1)]);
        assert!(matches!(h.split_roots(), Err(Error::NonSplit(_))));

        // root at zero: x^2 (x - 3)
        let z = Poly::from_roots(Q, &[(q(0), 2), (q(3), 1)]);
        assert_eq!(z.split_roots().unwrap(), vec![(q(0), 2), (q(3), 1)]);
    }

    #[test]
    fn split_prime_examples() {
        let f3 = FieldSpec::Prime(3);
        // x^2 + 1 over F_3: exhausting residues 0,1,2 finds no root
        let f = Poly::from_coeffs(f3, vec![f3.one(), f3.zero(), f3.one()]);
        assert!(matches!(f.split_roots(), Err(Error::NonSplit(_))));

        let f5 = FieldSpec::Prime(5);
        // x^2 + 1 over F_5 = (x - 2)(x - 3)
        let g = Poly::from_coeffs(f5, vec![f5.one(), f5.zero(), f5.one()]);
        let roots = g.split_roots().unwrap();
        assert_eq!(roots, vec![(f5.from_i64(2), 1), (f5.from_i64(3), 1)]);
    }

    #[test]
    fn interpolate_exact() {
        // through (0,3), (1,6), (2,11): x^2 + 2x + 3
        let pts = vec![(q(0), q(3)), (q(1), q(6)), (q(2), q(11))];
        let f = Poly::interpolate(Q, &pts);
        assert_eq!(f, Poly::from_descending(Q, vec![q(1), q(2), q(3)]));
        // degenerate: constant data stays degree 0
        let c = Poly::interpolate(Q, &[(q(2), q(6)), (q(3), q(6)), (q(5), q(6))]);
        assert_eq!(c.degree(), Some(0));
        // rational-valued nodes
        let f = Poly::interpolate(Q, &[(q(1), Q.parse("1/2").unwrap()), (q(3), q(4))]);
        assert_eq!(f.eval(&q(3)), q(4));
    }

    #[test]
    fn deflate_rejects_non_roots() {
        let f = Poly::from_roots(Q, &[(q(2), 1)]);
        assert!(f.deflate(&q(3)).is_none());
        assert_eq!(f.deflate(&q(2)).unwrap(), Poly::one(Q));
    }
}
