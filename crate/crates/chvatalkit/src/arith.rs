//! Exact rational scalars, vectors and matrices.
//!
//! Everything in this crate computes over arbitrary-precision rationals in
//! canonical form (positive denominator, reduced fraction), so structural
//! equality of systems is meaningful and no rounding happens anywhere.

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::{Error, Result};

/// Exact rational number in canonical form.
///
/// The canonical-form invariants (denominator positive, gcd of numerator and
/// denominator equal to one) are maintained by the wrapped `BigRational` on
/// every operation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::domain("rational with zero denominator"));
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// True when the denominator is one.
    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The integer value, if the denominator is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        Ok(Rational(self.0.recip()))
    }

    /// Smallest integer no less than this value.
    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }
}

/// Smallest integer no less than `x`.
pub fn ceil_rational(x: &Rational) -> BigInt {
    x.ceil()
}

/// Least common multiple of the absolute values of a list of nonzero integers.
///
/// The inputs are rationals that must all be integral; an empty list or a zero
/// entry is a domain error.
pub fn lcm_list(values: &[Rational]) -> Result<BigInt> {
    if values.is_empty() {
        return Err(Error::domain("lcm of empty list"));
    }
    let mut acc = BigInt::one();
    for v in values {
        let n = v
            .to_integer()
            .ok_or_else(|| Error::domain(format!("lcm of non-integer {v}")))?;
        if n.is_zero() {
            return Err(Error::domain("lcm of zero"));
        }
        acc = acc.lcm(&n.abs());
    }
    Ok(acc)
}

/// Reduce `z` modulo `m` to the unique representative in `{0, 1, ..., m-1}`.
pub fn mod_reduce(z: &BigInt, m: &BigInt) -> Result<BigInt> {
    if m.sign() != Sign::Plus {
        return Err(Error::domain(format!("modulus {m} must be positive")));
    }
    Ok(z.mod_floor(m))
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parses `p/q` or `p` with optional sign.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |s: &str| Error::domain(format!("invalid rational literal {s:?}"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(|_| bad(s))?;
                let q = BigInt::from_str(q.trim()).map_err(|_| bad(s))?;
                if q.is_zero() {
                    return Err(bad(s));
                }
                Rational::new(p, q)
            }
            None => {
                let p = BigInt::from_str(s).map_err(|_| bad(s))?;
                Ok(Rational::from_int(p))
            }
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        (&self).div(&rhs)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

/// Shorthand used pervasively in tests: `rat("3/4")`.
pub fn rat(s: &str) -> Rational {
    Rational::from_str(s).expect("valid rational literal")
}

/// Fixed-length vector of rationals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RationalVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        RationalVector(vec![Rational::zero(); dim])
    }

    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[index] = Rational::one();
        v
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        RationalVector(entries.iter().map(|&n| Rational::from(n)).collect())
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    pub fn set(&mut self, i: usize, value: Rational) {
        self.0[i] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn dot(&self, other: &RationalVector) -> Result<Rational> {
        if self.dimension() != other.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                got: other.dimension(),
            });
        }
        let mut acc = Rational::zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            acc += &(a * b);
        }
        Ok(acc)
    }

    pub fn scale(&self, factor: &Rational) -> RationalVector {
        RationalVector(self.0.iter().map(|e| e * factor).collect())
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        assert_eq!(self.dimension(), other.dimension());
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        assert_eq!(self.dimension(), other.dimension());
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> RationalVector {
        RationalVector(self.0.iter().map(|e| -e).collect())
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    /// All entries integral.
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Rational::is_integer)
    }

    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.0.iter().map(Rational::to_integer).collect()
    }

    /// Scales to the unique proportional vector with coprime integer entries
    /// and positive first nonzero entry. Returns the zero vector unchanged.
    pub fn primitive_normalize(&self) -> RationalVector {
        let Some(first) = self.0.iter().find(|e| !e.is_zero()) else {
            return self.clone();
        };
        let sign = if first.is_negative() {
            -Rational::one()
        } else {
            Rational::one()
        };
        let mut denom_lcm = BigInt::one();
        for e in &self.0 {
            denom_lcm = denom_lcm.lcm(e.denom());
        }
        let scaled: Vec<BigInt> = self
            .0
            .iter()
            .map(|e| {
                let r = e * &Rational::from_int(denom_lcm.clone()) * &sign;
                r.to_integer().expect("integral after lcm scaling")
            })
            .collect();
        let mut g = BigInt::zero();
        for n in &scaled {
            g = g.gcd(n);
        }
        RationalVector(
            scaled
                .into_iter()
                .map(|n| Rational::from_int(n / &g))
                .collect(),
        )
    }

    /// True when `self` is a strictly positive multiple of `other`.
    pub fn is_positive_multiple_of(&self, other: &RationalVector) -> bool {
        if self.dimension() != other.dimension() || self.is_zero() || other.is_zero() {
            return false;
        }
        let mut ratio: Option<Rational> = None;
        for (a, b) in self.0.iter().zip(&other.0) {
            match (a.is_zero(), b.is_zero()) {
                (true, true) => continue,
                (true, false) | (false, true) => return false,
                (false, false) => {
                    let r = a / b;
                    if !r.is_positive() {
                        return false;
                    }
                    match &ratio {
                        None => ratio = Some(r),
                        Some(prev) => {
                            if *prev != r {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        ratio.is_some()
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

impl FromIterator<Rational> for RationalVector {
    fn from_iter<T: IntoIterator<Item = Rational>>(iter: T) -> Self {
        RationalVector(iter.into_iter().collect())
    }
}

/// Dense matrix of rationals; all rows share the column count.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RationalMatrix {
    rows: Vec<RationalVector>,
    cols: usize,
}

impl RationalMatrix {
    pub fn new(rows: Vec<RationalVector>, cols: usize) -> Result<Self> {
        for row in &rows {
            if row.dimension() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: row.dimension(),
                });
            }
        }
        Ok(RationalMatrix { rows, cols })
    }

    pub fn from_ints(rows: &[&[i64]], cols: usize) -> Self {
        RationalMatrix::new(
            rows.iter().map(|r| RationalVector::from_ints(r)).collect(),
            cols,
        )
        .expect("consistent row widths")
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[RationalVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &RationalVector {
        &self.rows[i]
    }

    pub fn push_row(&mut self, row: RationalVector) -> Result<()> {
        if row.dimension() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: row.dimension(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    /// Matrix-vector product `A x`.
    pub fn mul_vector(&self, x: &RationalVector) -> Result<RationalVector> {
        self.rows.iter().map(|r| r.dot(x)).collect()
    }

    /// Row-vector times matrix, `u A`.
    pub fn vector_mul(&self, u: &RationalVector) -> Result<RationalVector> {
        if u.dimension() != self.rows.len() {
            return Err(Error::DimensionMismatch {
                expected: self.rows.len(),
                got: u.dimension(),
            });
        }
        let mut out = RationalVector::zeros(self.cols);
        for (coef, row) in u.iter().zip(&self.rows) {
            if coef.is_zero() {
                continue;
            }
            out = out.add(&row.scale(coef));
        }
        Ok(out)
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> RationalVector {
        self.rows.iter().map(|r| r.get(j).clone()).collect()
    }

    /// Rank via Gaussian elimination (exact).
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .map(|r| r.entries().to_vec())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot);
            let inv = m[rank][col].recip().expect("nonzero pivot");
            for j in col..self.cols {
                m[rank][j] = &m[rank][j] * &inv;
            }
            for i in 0..m.len() {
                if i == rank || m[i][col].is_zero() {
                    continue;
                }
                let factor = m[i][col].clone();
                for j in col..self.cols {
                    let t = &m[rank][j] * &factor;
                    m[i][j] = &m[i][j] - &t;
                }
            }
            rank += 1;
            if rank == m.len() {
                break;
            }
        }
        rank
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r:?}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcm_matches_appendix_values() {
        // l.c.m(2, 5, 1) = 10 and l.c.m(15, 30) = 30 from the worked
        // projection example; identity on a singleton.
        let v = |ns: &[i64]| ns.iter().map(|&n| Rational::from(n)).collect::<Vec<_>>();
        assert_eq!(lcm_list(&v(&[2, 5, 1])).unwrap(), BigInt::from(10));
        assert_eq!(lcm_list(&v(&[15, 30])).unwrap(), BigInt::from(30));
        assert_eq!(lcm_list(&v(&[1])).unwrap(), BigInt::from(1));
        assert_eq!(lcm_list(&v(&[-2, 5])).unwrap(), BigInt::from(10));
    }

    #[test]
    fn lcm_rejects_bad_input() {
        assert!(lcm_list(&[]).is_err());
        assert!(lcm_list(&[Rational::zero()]).is_err());
        assert!(lcm_list(&[rat("1/2")]).is_err());
    }

    #[test]
    fn ceil_examples() {
        assert_eq!(ceil_rational(&rat("1/5")), BigInt::from(1));
        assert_eq!(ceil_rational(&rat("-4/5")), BigInt::from(0));
        assert_eq!(ceil_rational(&rat("7")), BigInt::from(7));
    }

    #[test]
    fn mod_reduce_examples() {
        let m = |z: i64, m: i64| mod_reduce(&BigInt::from(z), &BigInt::from(m));
        assert_eq!(m(17, 10).unwrap(), BigInt::from(7));
        assert_eq!(m(-3, 10).unwrap(), BigInt::from(7));
        assert_eq!(m(5, 1).unwrap(), BigInt::from(0));
        assert!(m(5, 0).is_err());
        assert!(m(5, -3).is_err());
    }

    #[test]
    fn rational_parsing_round_trips() {
        for s in ["3/4", "-3/4", "7", "0", "-12"] {
            let r = rat(s);
            assert_eq!(rat(&r.to_string()), r);
        }
        assert_eq!(rat("6/8"), rat("3/4"));
        assert_eq!(rat("-6/-8"), rat("3/4"));
        assert!(Rational::from_str("1/0").is_err());
        assert!(Rational::from_str("x").is_err());
    }

    #[test]
    fn primitive_normalization() {
        let v = RationalVector::new(vec![rat("2"), rat("2"), rat("1/2"), rat("0"), rat("3/10")]);
        let p = v.primitive_normalize();
        assert_eq!(p, RationalVector::from_ints(&[20, 20, 5, 0, 3]));
        let n = RationalVector::from_ints(&[-4, 2]).primitive_normalize();
        assert_eq!(n, RationalVector::from_ints(&[2, -1]));
        assert!(v.is_positive_multiple_of(&p));
        assert!(!v.is_positive_multiple_of(&p.neg()));
    }

    #[test]
    fn matrix_products() {
        let a = RationalMatrix::from_ints(&[&[1, 2], &[3, 4]], 2);
        let x = RationalVector::from_ints(&[1, -1]);
        assert_eq!(a.mul_vector(&x).unwrap(), RationalVector::from_ints(&[-1, -1]));
        let u = RationalVector::from_ints(&[1, 1]);
        assert_eq!(a.vector_mul(&u).unwrap(), RationalVector::from_ints(&[4, 6]));
        assert_eq!(a.rank(), 2);
        let s = RationalMatrix::from_ints(&[&[1, 2], &[2, 4]], 2);
        assert_eq!(s.rank(), 1);
    }
}
