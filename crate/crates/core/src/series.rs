//! Truncated bivariate power series in `x` and `y` with exact rational
//! coefficients.
//!
//! Storage is a dense triangle: row `n` holds the coefficients of
//! `x^n y^0 ..= x^n y^n`. Every series arising here has `deg_y <= deg_x` in
//! each monomial; any operation that would leave that triangle errors
//! with [`Error::DegreeBound`] instead of silently dropping terms. As a
//! consequence the `x^0` row is a scalar, which is what makes division and
//! square roots simple recurrences in `x`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    trunc: usize,
    coeffs: Vec<Vec<BigRational>>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl BivariateSeries {
    pub fn zero(trunc: usize) -> Self {
        BivariateSeries {
            trunc,
            coeffs: (0..=trunc)
                .map(|n| vec![BigRational::zero(); n + 1])
                .collect(),
        }
    }

    pub fn constant(trunc: usize, value: BigRational) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0][0] = value;
        s
    }

    pub fn one(trunc: usize) -> Self {
        Self::constant(trunc, BigRational::one())
    }

    /// `c x^dx y^dy`, dropped when `dx > trunc`.
    pub fn monomial(trunc: usize, dx: usize, dy: usize, c: BigRational) -> Result<Self> {
        Self::from_terms(trunc, [(dx, dy, c)])
    }

    /// Sum of `c x^dx y^dy`; terms with `dx > trunc` are dropped.
    pub fn from_terms<I>(trunc: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, BigRational)>,
    {
        let mut s = Self::zero(trunc);
        for (dx, dy, c) in terms {
            if dy > dx {
                return Err(Error::DegreeBound { dx, dy });
            }
            if dx <= trunc {
                s.coeffs[dx][dy] += c;
            }
        }
        Ok(s)
    }

    /// Integer-coefficient shorthand for [`from_terms`](Self::from_terms).
    pub fn from_int_terms(trunc: usize, terms: &[(usize, usize, i64)]) -> Result<Self> {
        Self::from_terms(trunc, terms.iter().map(|&(dx, dy, c)| (dx, dy, rat(c))))
    }

    /// The series `x` itself.
    pub fn x(trunc: usize) -> Self {
        Self::from_int_terms(trunc, &[(1, 0, 1)]).expect("within bound")
    }

    /// The series `x y`.
    pub fn xy(trunc: usize) -> Self {
        Self::from_int_terms(trunc, &[(1, 1, 1)]).expect("within bound")
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(Zero::is_zero)
    }

    /// `[x^n y^k]`, zero when `k > n`.
    pub fn coefficient(&self, n: usize, k: usize) -> Result<BigRational> {
        if n > self.trunc {
            return Err(Error::BeyondTruncation {
                requested: n,
                trunc: self.trunc,
            });
        }
        Ok(self.coeffs[n]
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero))
    }

    /// Row `n` as a polynomial in `y`.
    pub fn row(&self, n: usize) -> &[BigRational] {
        &self.coeffs[n]
    }

    /// Nonzero coefficients in `(n, k)` order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(n, row)| row.iter().enumerate().map(move |(k, c)| (n, k, c)))
            .filter(|(_, _, c)| !c.is_zero())
    }

    /// Nonzero coefficients as integers, erroring on the first fractional one.
    pub fn to_integer_table(&self) -> Result<Vec<(usize, usize, BigInt)>> {
        self.terms()
            .map(|(n, k, c)| {
                if c.is_integer() {
                    Ok((n, k, c.to_integer()))
                } else {
                    Err(Error::NonInteger {
                        n,
                        k,
                        value: c.to_string(),
                    })
                }
            })
            .collect()
    }

    /// Every coefficient is a non-negative integer.
    pub fn is_nonnegative_integral(&self) -> bool {
        self.coeffs
            .iter()
            .flatten()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    /// Drops rows above `trunc`. Raising the truncation is not possible.
    pub fn truncate(&self, trunc: usize) -> Self {
        let trunc = trunc.min(self.trunc);
        BivariateSeries {
            trunc,
            coeffs: self.coeffs[..=trunc].to_vec(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        BivariateSeries {
            trunc: self.trunc,
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(|v| v * c).collect())
                .collect(),
        }
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Self {
        let trunc = self.trunc.min(other.trunc);
        BivariateSeries {
            trunc,
            coeffs: (0..=trunc)
                .map(|n| {
                    self.coeffs[n]
                        .iter()
                        .zip(&other.coeffs[n])
                        .map(|(a, b)| f(a, b))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    /// Cauchy product, parallel over output rows.
    pub fn mul(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let coeffs = (0..=trunc)
            .into_par_iter()
            .map(|n| {
                let mut row = vec![BigRational::zero(); n + 1];
                for i in 0..=n {
                    mul_rows_into(&mut row, &self.coeffs[i], &other.coeffs[n - i]);
                }
                row
            })
            .collect();
        BivariateSeries { trunc, coeffs }
    }

    /// `self / other`; the divisor needs a nonzero constant term.
    pub fn divide(&self, other: &Self) -> Result<Self> {
        let g0 = other.coeffs[0][0].clone();
        if g0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv = g0.recip();
        let trunc = self.trunc.min(other.trunc);
        let mut h: Vec<Vec<BigRational>> = Vec::with_capacity(trunc + 1);
        for n in 0..=trunc {
            let mut row = self.coeffs[n].clone();
            let mut acc = vec![BigRational::zero(); n + 1];
            for i in 1..=n {
                mul_rows_into(&mut acc, &other.coeffs[i], &h[n - i]);
            }
            for (r, a) in row.iter_mut().zip(acc) {
                *r = (&*r - a) * &inv;
            }
            h.push(row);
        }
        Ok(BivariateSeries { trunc, coeffs: h })
    }

    /// `1 / sqrt(self)` by Newton iteration `h <- h (3 - f h^2) / 2`, doubling
    /// the number of correct rows each step.
    pub fn inv_sqrt(&self) -> Result<Self> {
        if !self.coeffs[0][0].is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let three = rat(3);
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut h = Self::one(0);
        let mut correct = 1; // rows 0..correct are exact
        while correct <= self.trunc {
            correct = (2 * correct).min(self.trunc + 1);
            let t = correct - 1;
            let h_ext = h.extend_zero(t);
            let f = self.truncate(t);
            let fhh = f.mul(&h_ext.mul(&h_ext));
            let corr = Self::constant(t, three.clone()).sub(&fhh);
            h = h_ext.mul(&corr).scale(&half);
        }
        Ok(h)
    }

    /// Re-embeds with a larger truncation, padding with zero rows. Only
    /// meaningful for polynomials or as a Newton seed.
    fn extend_zero(&self, trunc: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(trunc + 1);
        for n in coeffs.len()..=trunc {
            coeffs.push(vec![BigRational::zero(); n + 1]);
        }
        BivariateSeries { trunc, coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.trunc);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplication by `x^e`.
    pub fn shift_x(&self, e: usize) -> Self {
        let mut s = Self::zero(self.trunc);
        for n in e..=self.trunc {
            let src = &self.coeffs[n - e];
            s.coeffs[n][..src.len()].clone_from_slice(src);
        }
        s
    }

    /// Multiplication by `y^e`, which must stay inside the storage triangle.
    pub fn shift_y(&self, e: usize) -> Result<Self> {
        let mut s = Self::zero(self.trunc);
        for (n, row) in self.coeffs.iter().enumerate() {
            for (k, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if k + e > n {
                    return Err(Error::DegreeBound { dx: n, dy: k + e });
                }
                s.coeffs[n][k + e] = c.clone();
            }
        }
        Ok(s)
    }

    /// Formal `d/dx`. Loses one row of truncation, so `trunc = 0` has no
    /// known derivative and errors.
    pub fn partial_x(&self) -> Result<Self> {
        if self.trunc == 0 {
            return Err(Error::BeyondTruncation {
                requested: 1,
                trunc: 0,
            });
        }
        let trunc = self.trunc - 1;
        let mut s = Self::zero(trunc);
        for n in 0..=trunc {
            let m = rat(n as i64 + 1);
            for (k, c) in self.coeffs[n + 1].iter().enumerate() {
                if k <= n {
                    s.coeffs[n][k] = c * &m;
                } else if !c.is_zero() {
                    return Err(Error::DegreeBound { dx: n, dy: k });
                }
            }
        }
        Ok(s)
    }

    /// `x d/dx`, which keeps the truncation.
    pub fn x_partial_x(&self) -> Self {
        BivariateSeries {
            trunc: self.trunc,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, row)| {
                    let m = rat(n as i64);
                    row.iter().map(|c| c * &m).collect()
                })
                .collect(),
        }
    }

    /// `self(g, y)`. `g` must have no `x^0` term.
    pub fn substitute_x(&self, g: &Self) -> Result<Self> {
        if !g.coeffs[0][0].is_zero() {
            return Err(Error::NonzeroXOrder);
        }
        let trunc = self.trunc.min(g.trunc);
        let g = g.truncate(trunc);
        let mut out = Self::zero(trunc);
        let mut g_pow = Self::one(trunc);
        for n in 0..=trunc {
            for (k, c) in self.coeffs[n].iter().enumerate() {
                if !c.is_zero() {
                    out = out.add(&g_pow.shift_y(k)?.scale(c));
                }
            }
            if n < trunc {
                g_pow = g_pow.mul(&g);
            }
        }
        Ok(out)
    }
}

/// `acc += a * b` for polynomials in `y`, clipped to `acc`'s length.
fn mul_rows_into(acc: &mut [BigRational], a: &[BigRational], b: &[BigRational]) {
    for (j, u) in a.iter().enumerate() {
        if u.is_zero() {
            continue;
        }
        for (l, v) in b.iter().enumerate() {
            if let Some(slot) = acc.get_mut(j + l) {
                if !v.is_zero() {
                    *slot += u * v;
                }
            }
        }
    }
}

impl fmt::Debug for BivariateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivariateSeries(trunc={}; ", self.trunc)?;
        let mut first = true;
        for (n, k, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c}*x^{n}*y^{k}")?;
        }
        if first {
            f.write_str("0")?;
        }
        f.write_str(")")
    }
}

impl Add for &BivariateSeries {
    type Output = BivariateSeries;
    fn add(self, rhs: Self) -> BivariateSeries {
        BivariateSeries::add(self, rhs)
    }
}

impl Sub for &BivariateSeries {
    type Output = BivariateSeries;
    fn sub(self, rhs: Self) -> BivariateSeries {
        BivariateSeries::sub(self, rhs)
    }
}

impl Mul for &BivariateSeries {
    type Output = BivariateSeries;
    fn mul(self, rhs: Self) -> BivariateSeries {
        BivariateSeries::mul(self, rhs)
    }
}

impl Neg for &BivariateSeries {
    type Output = BivariateSeries;
    fn neg(self) -> BivariateSeries {
        self.scale(&rat(-1))
    }
}

/// The noncrossing-partition series `D(x, y)`: the power series solution of
/// `D = 1 + x y D + x (D - 1) D` with constant term 1.
pub fn solve_d(trunc: usize) -> BivariateSeries {
    let mut rows: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]];
    for n in 1..=trunc {
        // [x^n] D = y [x^(n-1)] D + sum_{i=1}^{n-1} [x^i] D * [x^(n-1-i)] D
        let mut row = vec![BigRational::zero(); n + 1];
        for (k, c) in rows[n - 1].iter().enumerate() {
            row[k + 1] += c;
        }
        for i in 1..n {
            mul_rows_into(&mut row, &rows[i], &rows[n - 1 - i]);
        }
        rows.push(row);
    }
    BivariateSeries {
        trunc,
        coeffs: rows,
    }
}

/// `(x + x y - 1)^2 - 4 x^2 y = 1 - 2(1+y)x + (1-y)^2 x^2`.
pub fn radicand(trunc: usize) -> BivariateSeries {
    BivariateSeries::from_int_terms(
        trunc,
        &[
            (0, 0, 1),
            (1, 0, -2),
            (1, 1, -2),
            (2, 0, 1),
            (2, 1, -2),
            (2, 2, 1),
        ],
    )
    .expect("within bound")
}

/// `(1 - x)^2 - y x^2`, the common denominator of the reduced series.
fn reduced_denominator(trunc: usize) -> BivariateSeries {
    BivariateSeries::from_int_terms(trunc, &[(0, 0, 1), (1, 0, -2), (2, 0, 1), (2, 1, -1)])
        .expect("within bound")
}

/// `(1 - x)^e`.
fn one_minus_x_pow(trunc: usize, e: u32) -> BivariateSeries {
    BivariateSeries::from_int_terms(trunc, &[(0, 0, 1), (1, 0, -1)])
        .expect("within bound")
        .pow(e)
}

/// `radicand^(-5/2)`.
fn radicand_pow_neg_five_halves(trunc: usize) -> BivariateSeries {
    radicand(trunc)
        .inv_sqrt()
        .expect("unit constant term")
        .pow(5)
}

/// The named closed forms. Names are case-sensitive:
/// `R0 R1 R2 Rstar P0 P1 P2 Pstar D Dfactor`.
pub fn expand_named(name: &str, trunc: usize) -> Result<BivariateSeries> {
    let t = trunc;
    let poly = |terms: &[(usize, usize, i64)]| BivariateSeries::from_int_terms(t, terms);
    let reduced = |numerator: BivariateSeries| numerator.divide(&reduced_denominator(t).pow(4));
    Ok(match name {
        "R0" => reduced(poly(&[(4, 2, 1)])?.mul(&one_minus_x_pow(t, 3)))?,
        "R1" => {
            let inner = one_minus_x_pow(t, 2).add(&poly(&[(2, 1, 1)])?);
            reduced(poly(&[(3, 1, 1)])?.mul(&one_minus_x_pow(t, 2)).mul(&inner))?
        }
        "R2" => reduced(poly(&[(4, 1, 1)])?.mul(&one_minus_x_pow(t, 3)))?,
        "Rstar" => {
            let inner = poly(&[(0, 0, 1), (1, 0, -1), (1, 1, 1)])?;
            reduced(poly(&[(3, 1, 1)])?.mul(&one_minus_x_pow(t, 2)).mul(&inner))?
        }
        "P0" => poly(&[(4, 2, 1)])?.mul(&radicand_pow_neg_five_halves(t)),
        "P1" => poly(&[(3, 1, 1), (4, 1, -1), (4, 2, -1)])?.mul(&radicand_pow_neg_five_halves(t)),
        "P2" => poly(&[(4, 1, 1)])?.mul(&radicand_pow_neg_five_halves(t)),
        "Pstar" => poly(&[(3, 1, 1)])?.mul(&radicand_pow_neg_five_halves(t)),
        "D" => solve_d(t),
        "Dfactor" => {
            let d = solve_d(t);
            BivariateSeries::one(t)
                .sub(&d.shift_x(1))
                .mul(&radicand(t).inv_sqrt()?)
        }
        other => return Err(Error::UnknownSeries(other.to_string())),
    })
}

pub const SERIES_NAMES: [&str; 10] = [
    "R0", "R1", "R2", "Rstar", "P0", "P1", "P2", "Pstar", "D", "Dfactor",
];

/// `1 + x D_x / D`.
pub fn lift_factor(trunc: usize) -> BivariateSeries {
    let d = solve_d(trunc);
    let ratio = d.x_partial_x().divide(&d).expect("D has constant term 1");
    BivariateSeries::one(trunc).add(&ratio)
}

/// `R(x D, y) (1 + x D_x / D)` to x-degree `trunc`: the generating function
/// of every permutation whose reduced form lies in the class counted by `r`.
pub fn lift_reduced_to_full(r: &BivariateSeries, trunc: usize) -> Result<BivariateSeries> {
    if r.trunc() < trunc {
        return Err(Error::BeyondTruncation {
            requested: trunc,
            trunc: r.trunc(),
        });
    }
    let xd = solve_d(trunc).shift_x(1);
    let substituted = r.truncate(trunc).substitute_x(&xd)?;
    Ok(substituted.mul(&lift_factor(trunc)))
}

/// Integer coefficient, for tables known to be integral.
pub fn integer_coefficient(f: &BivariateSeries, n: usize, k: usize) -> Result<BigUint> {
    let c = f.coefficient(n, k)?;
    if !c.is_integer() || c.is_negative() {
        return Err(Error::NonInteger {
            n,
            k,
            value: c.to_string(),
        });
    }
    Ok(c.to_integer().to_biguint().expect("non-negative"))
}
