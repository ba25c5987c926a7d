//! Brute-force ground truth over bounded boxes.
//!
//! Deliberately naive: enumerate every integer point of an explicit box and
//! test each constraint exactly. Every nontrivial algorithm in this crate is
//! accepted only after agreeing with these enumerations on test windows.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::arith::{Rational, RationalVector};
use crate::caps::Caps;
use crate::{Error, Result};

pub use crate::fm::rational_feasible;

/// Axis-aligned integer box `lower <= x <= upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Box {
    pub lower: Vec<BigInt>,
    pub upper: Vec<BigInt>,
}

impl Box {
    pub fn new(lower: Vec<BigInt>, upper: Vec<BigInt>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                got: upper.len(),
            });
        }
        if lower.iter().zip(&upper).any(|(l, u)| l > u) {
            return Err(Error::domain("box lower bound exceeds upper bound"));
        }
        Ok(Box { lower, upper })
    }

    pub fn from_ints(bounds: &[(i64, i64)]) -> Result<Self> {
        Box::new(
            bounds.iter().map(|(l, _)| BigInt::from(*l)).collect(),
            bounds.iter().map(|(_, u)| BigInt::from(*u)).collect(),
        )
    }

    /// Same bounds in every coordinate.
    pub fn cube(dim: usize, lo: i64, hi: i64) -> Result<Self> {
        Box::from_ints(&vec![(lo, hi); dim])
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn volume(&self) -> BigInt {
        let mut v = BigInt::one();
        for (l, u) in self.lower.iter().zip(&self.upper) {
            v *= u - l + BigInt::one();
        }
        v
    }

    /// Lexicographic iteration over all integer points.
    pub fn points(&self) -> BoxIter {
        BoxIter {
            boxx: self.clone(),
            current: self.lower.clone(),
            done: self.dimension() == 0,
            first: true,
        }
    }
}

pub struct BoxIter {
    boxx: Box,
    current: Vec<BigInt>,
    done: bool,
    first: bool,
}

impl Iterator for BoxIter {
    type Item = Vec<BigInt>;

    fn next(&mut self) -> Option<Vec<BigInt>> {
        if self.done {
            // Zero-dimensional boxes contain exactly the empty point.
            if self.boxx.dimension() == 0 && self.first {
                self.first = false;
                return Some(Vec::new());
            }
            return None;
        }
        if self.first {
            self.first = false;
            return Some(self.current.clone());
        }
        let dim = self.boxx.dimension();
        let mut i = dim;
        while i > 0 {
            i -= 1;
            if self.current[i] < self.boxx.upper[i] {
                self.current[i] += 1;
                for j in i + 1..dim {
                    self.current[j] = self.boxx.lower[j].clone();
                }
                return Some(self.current.clone());
            }
        }
        self.done = true;
        None
    }
}

/// Sorted, deduplicated set of integer points.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PointSet {
    points: Vec<Vec<BigInt>>,
}

impl PointSet {
    pub fn from_points(mut points: Vec<Vec<BigInt>>) -> Self {
        points.sort();
        points.dedup();
        PointSet { points }
    }

    pub fn points(&self) -> &[Vec<BigInt>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[BigInt]) -> bool {
        self.points.binary_search_by(|q| q.as_slice().cmp(p)).is_ok()
    }

    pub fn contains_ints(&self, p: &[i64]) -> bool {
        let q: Vec<BigInt> = p.iter().map(|&n| BigInt::from(n)).collect();
        self.contains(&q)
    }

    /// Coordinate projection, deduplicated.
    pub fn project(&self, keep: &[usize]) -> PointSet {
        PointSet::from_points(
            self.points
                .iter()
                .map(|p| keep.iter().map(|&i| p[i].clone()).collect())
                .collect(),
        )
    }
}

/// Anything that can answer pointwise membership for integer points.
pub trait Constrains {
    fn dimension(&self) -> usize;
    fn satisfied_by_point(&self, point: &RationalVector) -> Result<bool>;
}

impl Constrains for crate::chvatal::ACSystem {
    fn dimension(&self) -> usize {
        self.dimension
    }
    fn satisfied_by_point(&self, point: &RationalVector) -> Result<bool> {
        self.satisfied_by(point)
    }
}

pub fn point_to_vector(p: &[BigInt]) -> RationalVector {
    p.iter().map(|n| Rational::from_int(n.clone())).collect()
}

/// All integer points of `bounds` satisfying every constraint.
pub fn enumerate_feasible<C: Constrains + ?Sized>(
    constraints: &C,
    bounds: &Box,
    caps: &Caps,
) -> Result<PointSet> {
    if bounds.dimension() != constraints.dimension() {
        return Err(Error::DimensionMismatch {
            expected: constraints.dimension(),
            got: bounds.dimension(),
        });
    }
    let volume = bounds.volume();
    let requested = volume.to_u128().unwrap_or(u128::MAX);
    caps.check("oracle box volume", requested, caps.enum_points)?;
    let mut found = Vec::new();
    for p in bounds.points() {
        let v = point_to_vector(&p);
        if constraints.satisfied_by_point(&v)? {
            found.push(p);
        }
    }
    Ok(PointSet::from_points(found))
}

/// Coordinate projection of the feasible set.
pub fn project_bruteforce<C: Constrains + ?Sized>(
    constraints: &C,
    bounds: &Box,
    keep: &[usize],
    caps: &Caps,
) -> Result<PointSet> {
    let feasible = enumerate_feasible(constraints, bounds, caps)?;
    Ok(feasible.project(keep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::chvatal::{ACFunction, ACInequality, ACSystem};

    fn batch_system() -> ACSystem {
        // x/200 + ceil(-x/50) <= 0 and x <= 200.
        let f = ACFunction::linear(RationalVector::new(vec![rat("1/200")]))
            .plus(&ACFunction::ceil(&ACFunction::linear(RationalVector::new(
                vec![rat("-1/50")],
            ))))
            .unwrap();
        let mut sys = ACSystem::new(1);
        sys.push(ACInequality::new(f, rat("0"))).unwrap();
        sys.push(ACInequality::new(
            ACFunction::linear(RationalVector::from_ints(&[1])),
            rat("200"),
        ))
        .unwrap();
        sys
    }

    #[test]
    fn batch_size_feasible_set() {
        let caps = Caps::default();
        let sys = batch_system();
        let bounds = Box::from_ints(&[(-10, 250)]).unwrap();
        let set = enumerate_feasible(&sys, &bounds, &caps).unwrap();
        let expected: Vec<Vec<BigInt>> = std::iter::once(0i64)
            .chain(50..=200)
            .map(|n| vec![BigInt::from(n)])
            .collect();
        assert_eq!(set, PointSet::from_points(expected));
    }

    #[test]
    fn empty_system_counts_all_points() {
        let caps = Caps::default();
        let sys = ACSystem::new(1);
        let bounds = Box::from_ints(&[(0, 2)]).unwrap();
        let set = enumerate_feasible(&sys, &bounds, &caps).unwrap();
        assert_eq!(set.len(), 3);
    }

    #[test]
    fn volume_cap_is_enforced() {
        let mut caps = Caps::default();
        caps.enum_points = 10;
        let sys = ACSystem::new(2);
        let bounds = Box::from_ints(&[(0, 10), (0, 10)]).unwrap();
        assert!(matches!(
            enumerate_feasible(&sys, &bounds, &caps),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn projection_identity_and_subset() {
        let caps = Caps::default();
        let sys = ACSystem::new(2);
        let bounds = Box::from_ints(&[(0, 1), (0, 1)]).unwrap();
        let all = project_bruteforce(&sys, &bounds, &[0, 1], &caps).unwrap();
        assert_eq!(all.len(), 4);
        let first = project_bruteforce(&sys, &bounds, &[0], &caps).unwrap();
        assert_eq!(first.len(), 2);
    }

    #[test]
    fn box_iterator_is_lexicographic() {
        let bounds = Box::from_ints(&[(0, 1), (5, 6)]).unwrap();
        let pts: Vec<Vec<BigInt>> = bounds.points().collect();
        let expect: Vec<Vec<BigInt>> = vec![
            vec![0.into(), 5.into()],
            vec![0.into(), 6.into()],
            vec![1.into(), 5.into()],
            vec![1.into(), 6.into()],
        ];
        assert_eq!(pts, expect);
        assert_eq!(bounds.volume(), BigInt::from(4));
    }

    #[test]
    fn zero_dimensional_box_has_one_point() {
        let bounds = Box::new(vec![], vec![]).unwrap();
        assert_eq!(bounds.points().count(), 1);
        assert_eq!(bounds.volume(), BigInt::one());
    }
}
