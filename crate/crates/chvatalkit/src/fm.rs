//! Fourier-Motzkin elimination over exact rationals.
//!
//! Systems are stored in `>=` orientation (`A x >= b`). The right-hand side is
//! an affine form in symbolic parameters `b_1..b_m`, which degenerates to a
//! plain constant for concrete systems; the symbolic mode drives the
//! consistency testers, where the multipliers must survive as linear forms in
//! the right-hand side.
//!
//! Before pairing, rows are rescaled so the eliminated coefficient is `+-1`,
//! and exact duplicates plus vacuous constant rows are dropped after each
//! step. Rows that are merely redundant over the polyhedron are kept: the
//! ceilingized testers need them.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::One;

use crate::arith::{Rational, RationalMatrix, RationalVector};
use crate::chvatal::{ACFunction, ACInequality, ACSystem};
use crate::{Error, Result};

/// Affine form `constant + params . b` over the symbolic right-hand side.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct RhsForm {
    pub constant: Rational,
    pub params: RationalVector,
}

impl RhsForm {
    pub fn constant(c: Rational, param_dim: usize) -> Self {
        RhsForm {
            constant: c,
            params: RationalVector::zeros(param_dim),
        }
    }

    pub fn parameter(index: usize, param_dim: usize) -> Self {
        RhsForm {
            constant: Rational::zero(),
            params: RationalVector::unit(param_dim, index),
        }
    }

    pub fn param_dim(&self) -> usize {
        self.params.dimension()
    }

    pub fn scale(&self, factor: &Rational) -> RhsForm {
        RhsForm {
            constant: &self.constant * factor,
            params: self.params.scale(factor),
        }
    }

    pub fn add(&self, other: &RhsForm) -> RhsForm {
        RhsForm {
            constant: &self.constant + &other.constant,
            params: self.params.add(&other.params),
        }
    }

    pub fn eval(&self, b: &RationalVector) -> Result<Rational> {
        Ok(&self.constant + &self.params.dot(b)?)
    }

    pub fn is_concrete(&self) -> bool {
        self.params.is_zero()
    }
}

/// One inequality `coeffs . x >= rhs`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinRow {
    pub coeffs: RationalVector,
    pub rhs: RhsForm,
}

impl LinRow {
    pub fn scale(&self, factor: &Rational) -> LinRow {
        LinRow {
            coeffs: self.coeffs.scale(factor),
            rhs: self.rhs.scale(factor),
        }
    }
}

/// Linear system `A x >= b`, optionally with a symbolic right-hand side.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearSystem {
    rows: Vec<LinRow>,
    dimension: usize,
    param_dim: usize,
}

impl LinearSystem {
    pub fn new(dimension: usize, param_dim: usize) -> Self {
        LinearSystem {
            rows: Vec::new(),
            dimension,
            param_dim,
        }
    }

    /// Concrete system from matrix and right-hand side vector.
    pub fn concrete(a: &RationalMatrix, b: &RationalVector) -> Result<Self> {
        if a.row_count() != b.dimension() {
            return Err(Error::DimensionMismatch {
                expected: a.row_count(),
                got: b.dimension(),
            });
        }
        let rows = a
            .rows()
            .iter()
            .zip(b.iter())
            .map(|(r, c)| LinRow {
                coeffs: r.clone(),
                rhs: RhsForm::constant(c.clone(), 0),
            })
            .collect();
        Ok(LinearSystem {
            rows,
            dimension: a.col_count(),
            param_dim: 0,
        })
    }

    /// Symbolic system `A x >= b` with `b` treated as formal parameters.
    pub fn symbolic(a: &RationalMatrix) -> Self {
        let m = a.row_count();
        let rows = a
            .rows()
            .iter()
            .enumerate()
            .map(|(i, r)| LinRow {
                coeffs: r.clone(),
                rhs: RhsForm::parameter(i, m),
            })
            .collect();
        LinearSystem {
            rows,
            dimension: a.col_count(),
            param_dim: m,
        }
    }

    pub fn push_row(&mut self, row: LinRow) -> Result<()> {
        if row.coeffs.dimension() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: row.coeffs.dimension(),
            });
        }
        if row.rhs.param_dim() != self.param_dim {
            return Err(Error::DimensionMismatch {
                expected: self.param_dim,
                got: row.rhs.param_dim(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn rows(&self) -> &[LinRow] {
        &self.rows
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn param_dim(&self) -> usize {
        self.param_dim
    }

    pub fn matrix(&self) -> RationalMatrix {
        RationalMatrix::new(
            self.rows.iter().map(|r| r.coeffs.clone()).collect(),
            self.dimension,
        )
        .expect("rows validated at insertion")
    }
}

/// Nonnegative multipliers certifying each output row of an elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FMCertificate {
    /// One multiplier vector over the input system's rows per output row.
    pub multipliers: Vec<RationalVector>,
    /// Variable indices eliminated, in elimination order.
    pub eliminated_order: Vec<usize>,
}

impl FMCertificate {
    fn identity(rows: usize) -> Self {
        FMCertificate {
            multipliers: (0..rows).map(|i| RationalVector::unit(rows, i)).collect(),
            eliminated_order: Vec::new(),
        }
    }

    /// Chains `self` (applied first) with `next` (applied to self's output).
    pub fn compose(&self, next: &FMCertificate) -> FMCertificate {
        let multipliers = next
            .multipliers
            .iter()
            .map(|u| {
                let mut acc = RationalVector::zeros(self.input_rows());
                for (c, base) in u.iter().zip(&self.multipliers) {
                    if !c.is_zero() {
                        acc = acc.add(&base.scale(c));
                    }
                }
                acc
            })
            .collect();
        let mut order = self.eliminated_order.clone();
        order.extend_from_slice(&next.eliminated_order);
        FMCertificate {
            multipliers,
            eliminated_order: order,
        }
    }

    fn input_rows(&self) -> usize {
        self.multipliers
            .first()
            .map(|u| u.dimension())
            .unwrap_or(0)
    }
}

/// Splits row indices by the sign of the coefficient on `var`.
pub fn sign_partition(system: &LinearSystem, var: usize) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut zero = Vec::new();
    for (i, row) in system.rows.iter().enumerate() {
        let c = row.coeffs.get(var);
        if c.is_positive() {
            pos.push(i);
        } else if c.is_negative() {
            neg.push(i);
        } else {
            zero.push(i);
        }
    }
    (pos, neg, zero)
}

/// Vacuous constant rows `0 >= c` with concrete `c <= 0` carry no information.
fn is_vacuous(row: &LinRow) -> bool {
    row.coeffs.is_zero()
        && row.rhs.is_concrete()
        && !row.rhs.constant.is_positive()
}

/// Eliminates one variable, returning the projected system and the
/// multipliers over the input rows.
pub fn fm_eliminate(system: &LinearSystem, var: usize) -> Result<(LinearSystem, FMCertificate)> {
    if var >= system.dimension {
        return Err(Error::domain(format!("variable index {var} out of range")));
    }
    let (pos, neg, zero) = sign_partition(system, var);
    let mut out = LinearSystem::new(system.dimension, system.param_dim);
    let mut multipliers: Vec<RationalVector> = Vec::new();
    let n_rows = system.rows.len();

    let push = |row: LinRow, mult: RationalVector, out: &mut LinearSystem,
                    multipliers: &mut Vec<RationalVector>| {
        if is_vacuous(&row) {
            return;
        }
        if out
            .rows
            .iter()
            .any(|r| r.coeffs == row.coeffs && r.rhs == row.rhs)
        {
            return;
        }
        out.rows.push(row);
        multipliers.push(mult);
    };

    for &i in &zero {
        push(
            system.rows[i].clone(),
            RationalVector::unit(n_rows, i),
            &mut out,
            &mut multipliers,
        );
    }
    // Rows scaled so the eliminated coefficient is +-1 before pairing.
    for &p in &pos {
        let ap = system.rows[p].coeffs.get(var).clone();
        let sp = ap.recip()?;
        let row_p = system.rows[p].scale(&sp);
        for &q in &neg {
            let aq = system.rows[q].coeffs.get(var).clone();
            let sq = aq.abs().recip()?;
            let row_q = system.rows[q].scale(&sq);
            let mut coeffs = row_p.coeffs.add(&row_q.coeffs);
            coeffs.set(var, Rational::zero());
            let rhs = row_p.rhs.add(&row_q.rhs);
            let mut mult = RationalVector::zeros(n_rows);
            mult.set(p, sp.clone());
            mult.set(q, sq);
            push(LinRow { coeffs, rhs }, mult, &mut out, &mut multipliers);
        }
    }

    Ok((
        out,
        FMCertificate {
            multipliers,
            eliminated_order: vec![var],
        },
    ))
}

/// Eliminates the listed variables in order; the certificate is over the
/// original system's rows.
pub fn fm_eliminate_all(
    system: &LinearSystem,
    order: &[usize],
) -> Result<(LinearSystem, FMCertificate)> {
    let mut current = system.clone();
    let mut cert = FMCertificate::identity(system.rows.len());
    for &var in order {
        let (next, step) = fm_eliminate(&current, var)?;
        cert = cert.compose(&step);
        current = next;
    }
    Ok((current, cert))
}

/// The projection cone `{u : u A = 0, u >= 0}` with its extreme rays.
#[derive(Clone, Debug)]
pub struct ProjectionCone {
    pub matrix: RationalMatrix,
    /// Primitive-integer extreme rays, pairwise non-proportional.
    pub rays: Vec<RationalVector>,
}

/// Complete extreme-ray enumeration of the projection cone, by support
/// subsets. Desk scale: `2^m` subsets.
pub fn projection_cone_rays(a: &RationalMatrix) -> Result<ProjectionCone> {
    let m = a.row_count();
    if m > 16 {
        return Err(Error::Capacity {
            what: "projection cone support enumeration",
            requested: m as u128,
            limit: 16,
        });
    }
    let mut rays: Vec<RationalVector> = Vec::new();
    for mask in 1u32..(1 << m) {
        let support: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        // Kernel of A_S^T: vectors v with v^T A_S = 0.
        let sub = RationalMatrix::new(
            support.iter().map(|&i| a.row(i).clone()).collect(),
            a.col_count(),
        )?;
        let kernel = left_kernel(&sub);
        if kernel.len() != 1 {
            continue;
        }
        let v = &kernel[0];
        let all_pos = v.iter().all(|e| e.is_positive());
        let all_neg = v.iter().all(|e| e.is_negative());
        if !(all_pos || all_neg) {
            continue;
        }
        let mut full = RationalVector::zeros(m);
        for (k, &i) in support.iter().enumerate() {
            let e = v.get(k).clone();
            full.set(i, if all_neg { -&e } else { e });
        }
        let full = full.primitive_normalize();
        if !rays.contains(&full) {
            rays.push(full);
        }
    }
    rays.sort_by(|a, b| {
        a.entries()
            .iter()
            .map(|e| e.clone())
            .collect::<Vec<_>>()
            .cmp(&b.entries().iter().map(|e| e.clone()).collect::<Vec<_>>())
    });
    Ok(ProjectionCone {
        matrix: a.clone(),
        rays,
    })
}

/// Basis of `{v : v^T M = 0}` (left kernel) via Gaussian elimination.
pub fn left_kernel(m: &RationalMatrix) -> Vec<RationalVector> {
    // Work on M^T and find the right kernel of it.
    let rows = m.row_count();
    let cols = m.col_count();
    // tableau: cols x rows matrix = M^T
    let mut t: Vec<Vec<Rational>> = (0..cols)
        .map(|j| (0..rows).map(|i| m.row(i).get(j).clone()).collect())
        .collect();
    let mut pivot_col_of_row: Vec<Option<usize>> = vec![None; cols.max(1)];
    let mut rank = 0;
    for col in 0..rows {
        let Some(p) = (rank..t.len()).find(|&i| !t[i][col].is_zero()) else {
            continue;
        };
        t.swap(rank, p);
        let inv = t[rank][col].recip().expect("nonzero pivot");
        for x in t[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..t.len() {
            if i == rank || t[i][col].is_zero() {
                continue;
            }
            let f = t[i][col].clone();
            for j in 0..rows {
                let s = &t[rank][j] * &f;
                t[i][j] = &t[i][j] - &s;
            }
        }
        if rank < pivot_col_of_row.len() {
            pivot_col_of_row[rank] = Some(col);
        }
        rank += 1;
        if rank == t.len() {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row.iter().flatten().copied().collect();
    let free_cols: Vec<usize> = (0..rows).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free_cols {
        let mut v = RationalVector::zeros(rows);
        v.set(fc, Rational::one());
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v.set(pc, -&t[r][fc]);
        }
        basis.push(v);
    }
    basis
}

/// Single-variable integer elimination: pairs each lower bound (ceiled, since
/// the variable is integer) with each upper bound, producing affine Chvatal
/// inequalities over the remaining coordinates.
///
/// The output system keeps the input's coordinate layout (the eliminated
/// variable's column is dropped) and marks every remaining variable integer.
/// Symbolic parameters, when present, are appended as extra coordinates of
/// the AC functions, after the surviving variables.
pub fn integer_fm_step(system: &LinearSystem, var: usize) -> Result<ACSystem> {
    if var >= system.dimension {
        return Err(Error::domain(format!("variable index {var} out of range")));
    }
    let (pos, neg, zero) = sign_partition(system, var);
    let keep: Vec<usize> = (0..system.dimension).filter(|&j| j != var).collect();
    let out_dim = keep.len() + system.param_dim;
    let mut out = ACSystem::new(out_dim);
    out.integer_vars = (0..keep.len()).collect();

    // row -> affine function of (kept vars, params) equal to
    //   rhs - sum_{j != var} a_j x_j, all divided by |a_var|.
    let bound_expr = |i: usize| -> ACFunction {
        let row = &system.rows[i];
        let a = row.coeffs.get(var).abs();
        let inv = a.recip().expect("nonzero coefficient on var");
        let mut coeffs = RationalVector::zeros(out_dim);
        for (k, &j) in keep.iter().enumerate() {
            coeffs.set(k, -(&(row.coeffs.get(j) * &inv)));
        }
        for p in 0..system.param_dim {
            coeffs.set(keep.len() + p, row.rhs.params.get(p) * &inv);
        }
        ACFunction::leaf(coeffs, &row.rhs.constant * &inv)
    };

    // H0 rows pass through as linear inequalities (negated into <= 0 form):
    //   a_-1 x >= rhs  <=>  rhs - a_-1 x <= 0.
    for &i in &zero {
        let row = &system.rows[i];
        let mut coeffs = RationalVector::zeros(out_dim);
        for (k, &j) in keep.iter().enumerate() {
            coeffs.set(k, -row.coeffs.get(j).clone());
        }
        for p in 0..system.param_dim {
            coeffs.set(keep.len() + p, row.rhs.params.get(p).clone());
        }
        out.push(ACInequality::new(
            ACFunction::leaf(coeffs, row.rhs.constant.clone()),
            Rational::zero(),
        ))?;
    }

    // ceil(lower_p) - upper_q <= 0 for every lower/upper pair.
    for &p in &pos {
        let lower = bound_expr(p);
        for &q in &neg {
            // bound_expr(q) computes (rhs_q - a x)/|a_q| which for a negative
            // coefficient is the negated upper bound: x <= -bound_expr(q).
            let neg_upper = bound_expr(q);
            let f = ACFunction::ceil(&lower).plus(&neg_upper)?;
            out.push(ACInequality::new(f, Rational::zero()))?;
        }
    }
    Ok(out)
}

/// Decides `{x : A x >= b} != empty` by eliminating every variable and
/// checking the surviving constant rows. Concrete systems only.
pub fn rational_feasible(system: &LinearSystem) -> Result<bool> {
    if system.param_dim != 0 {
        return Err(Error::domain(
            "feasibility check requires a concrete right-hand side",
        ));
    }
    let order: Vec<usize> = (0..system.dimension).collect();
    let (projected, _) = fm_eliminate_all(system, &order)?;
    for row in projected.rows() {
        debug_assert!(row.coeffs.is_zero());
        if row.rhs.constant.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact minimum of `c . x` over `{x : A x >= b}`.
///
/// Returns `None` when the system is infeasible; `Some(None)` would be
/// ambiguous so unboundedness is reported as an error.
pub fn exact_minimum(system: &LinearSystem, c: &RationalVector) -> Result<Option<Rational>> {
    if system.param_dim != 0 {
        return Err(Error::domain("exact LP requires a concrete system"));
    }
    if !rational_feasible(system)? {
        return Ok(None);
    }
    // Append t >= c.x and eliminate x. The achievable t form [min c.x, inf),
    // so the largest surviving lower bound on t is the minimum.
    let n = system.dimension;
    let mut ext = LinearSystem::new(n + 1, 0);
    for row in system.rows() {
        let mut coeffs = row.coeffs.entries().to_vec();
        coeffs.push(Rational::zero());
        ext.push_row(LinRow {
            coeffs: RationalVector::new(coeffs),
            rhs: row.rhs.clone(),
        })?;
    }
    let mut t_row: Vec<Rational> = c.iter().map(|e| -e).collect();
    t_row.push(Rational::one());
    ext.push_row(LinRow {
        coeffs: RationalVector::new(t_row),
        rhs: RhsForm::constant(Rational::zero(), 0),
    })?;
    let order: Vec<usize> = (0..n).collect();
    let (projected, _) = fm_eliminate_all(&ext, &order)?;
    let mut best: Option<Rational> = None;
    for row in projected.rows() {
        let alpha = row.coeffs.get(n).clone();
        if alpha.is_positive() {
            let bound = &row.rhs.constant / &alpha;
            if best.as_ref().map(|b| bound > *b).unwrap_or(true) {
                best = Some(bound);
            }
        } else if alpha.is_zero() && row.rhs.constant.is_positive() {
            return Ok(None);
        }
    }
    match best {
        Some(v) => Ok(Some(v)),
        None => Err(Error::domain("objective unbounded below")),
    }
}

/// An explicit rational solution of `A x >= b`, or `None` when infeasible.
///
/// Eliminates the variables back to front, then back-substitutes, picking the
/// midpoint of each feasibility interval (or its finite endpoint).
pub fn find_feasible_point(system: &LinearSystem) -> Result<Option<RationalVector>> {
    if system.param_dim != 0 {
        return Err(Error::domain("feasible point needs a concrete system"));
    }
    let n = system.dimension;
    if n == 0 {
        for row in system.rows() {
            if row.rhs.constant.is_positive() {
                return Ok(None);
            }
        }
        return Ok(Some(RationalVector::zeros(0)));
    }
    // stages[k] = system with variables k+1..n eliminated (vars 0..=k live).
    let mut stages: Vec<LinearSystem> = vec![system.clone()];
    for var in (1..n).rev() {
        let (next, _) = fm_eliminate(stages.last().unwrap(), var)?;
        stages.push(next);
    }
    stages.reverse();
    let mut x = RationalVector::zeros(n);
    for (var, stage) in stages.iter().enumerate() {
        let mut lower: Option<Rational> = None;
        let mut upper: Option<Rational> = None;
        for row in stage.rows() {
            let a = row.coeffs.get(var);
            // Residual constraint a * x_var >= rhs - (fixed part).
            let mut fixed = Rational::zero();
            for j in 0..var {
                fixed += &(row.coeffs.get(j) * x.get(j));
            }
            let residual = &row.rhs.constant - &fixed;
            if a.is_zero() {
                if residual.is_positive() {
                    return Ok(None);
                }
                continue;
            }
            let bound = &residual / a;
            if a.is_positive() {
                if lower.as_ref().map(|l| bound > *l).unwrap_or(true) {
                    lower = Some(bound);
                }
            } else if upper.as_ref().map(|u| bound < *u).unwrap_or(true) {
                upper = Some(bound);
            }
        }
        let value = match (lower, upper) {
            (Some(l), Some(u)) => {
                if l > u {
                    return Ok(None);
                }
                &(&l + &u) / &Rational::from(2)
            }
            (Some(l), None) => l,
            (None, Some(u)) => u,
            (None, None) => Rational::zero(),
        };
        x.set(var, value);
    }
    Ok(Some(x))
}

/// Scales a concrete-rhs system to integer coefficients and integer rhs,
/// row by row.
pub fn integer_normalized(system: &LinearSystem) -> Result<LinearSystem> {
    if system.param_dim != 0 {
        return Err(Error::domain("integer normalization needs concrete rhs"));
    }
    let mut out = LinearSystem::new(system.dimension, 0);
    for row in system.rows() {
        let mut l: BigInt = BigInt::one();
        for e in row.coeffs.iter() {
            l = l.lcm(e.denom());
        }
        l = l.lcm(row.rhs.constant.denom());
        let f = Rational::from_int(l);
        out.push_row(row.scale(&f))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    /// The five-row system of the order-sensitivity example, symbolic rhs.
    pub fn example_44() -> LinearSystem {
        let a = RationalMatrix::new(
            vec![
                RationalVector::new(vec![rat("-1"), rat("1/2"), rat("-1/10")]),
                RationalVector::new(vec![rat("1"), rat("-1/4"), rat("0")]),
                RationalVector::new(vec![rat("0"), rat("-1"), rat("1")]),
                RationalVector::new(vec![rat("0"), rat("0"), rat("1")]),
                RationalVector::new(vec![rat("0"), rat("0"), rat("-1")]),
            ],
            3,
        )
        .unwrap();
        LinearSystem::symbolic(&a)
    }

    fn forms_of(system: &LinearSystem) -> Vec<RationalVector> {
        let mut v: Vec<RationalVector> = system
            .rows()
            .iter()
            .map(|r| r.rhs.params.primitive_normalize())
            .collect();
        v.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
        v
    }

    #[test]
    fn example_44_order_123() {
        let sys = example_44();
        let (projected, cert) = fm_eliminate_all(&sys, &[0, 1, 2]).unwrap();
        // 2b1 + 2b2 + 1/2 b3 + 3/10 b5 and 1/10 b4 + 1/10 b5, up to scaling.
        let expected = vec![
            RationalVector::new(vec![rat("2"), rat("2"), rat("1/2"), rat("0"), rat("3/10")])
                .primitive_normalize(),
            RationalVector::from_ints(&[0, 0, 0, 1, 1]),
        ];
        let mut got = forms_of(&projected);
        got.sort_by_key(|v| !v.get(0).is_zero());
        assert_eq!(got.len(), 2);
        assert!(got.contains(&expected[0]));
        assert!(got.contains(&expected[1]));
        // Certificate soundness on original rows.
        let a = sys.matrix();
        for (row, u) in projected.rows().iter().zip(&cert.multipliers) {
            assert!(u.iter().all(|e| !e.is_negative()));
            let ua = a.vector_mul(u).unwrap();
            assert!(ua.is_zero());
            assert_eq!(&row.rhs.params, u);
            assert!(row.coeffs.is_zero());
        }
    }

    #[test]
    fn example_44_order_231() {
        let sys = example_44();
        let (projected, _) = fm_eliminate_all(&sys, &[1, 2, 0]).unwrap();
        let got = forms_of(&projected);
        assert_eq!(got.len(), 3);
        // The three forms from the alternate-order run; the middle one is the
        // corrected value (the published display has a typo in the b3 term
        // that fails u A = 0).
        let expected = [
            RationalVector::new(vec![rat("4"), rat("4"), rat("1"), rat("1/5"), rat("4/5")])
                .primitive_normalize(),
            RationalVector::new(vec![rat("16/3"), rat("16/3"), rat("4/3"), rat("0"), rat("4/5")])
                .primitive_normalize(),
            RationalVector::from_ints(&[0, 0, 0, 1, 1]),
        ];
        for e in &expected {
            assert!(got.contains(e), "missing {e:?} in {got:?}");
        }
    }

    #[test]
    fn absent_variable_is_noop() {
        let a = RationalMatrix::from_ints(&[&[0, 1], &[0, -1]], 2);
        let b = RationalVector::from_ints(&[0, -5]);
        let sys = LinearSystem::concrete(&a, &b).unwrap();
        let (projected, cert) = fm_eliminate(&sys, 0).unwrap();
        assert_eq!(projected.rows().len(), 2);
        assert_eq!(projected.rows()[0].coeffs, sys.rows()[0].coeffs);
        assert_eq!(cert.multipliers[0], RationalVector::from_ints(&[1, 0]));
    }

    #[test]
    fn one_sided_variable_keeps_h0_only() {
        // x unbounded above: only the x-free row survives.
        let a = RationalMatrix::from_ints(&[&[1, 0], &[0, 1]], 2);
        let b = RationalVector::from_ints(&[3, 1]);
        let sys = LinearSystem::concrete(&a, &b).unwrap();
        let (projected, _) = fm_eliminate(&sys, 0).unwrap();
        assert_eq!(projected.rows().len(), 1);
        assert_eq!(projected.rows()[0].coeffs, RationalVector::from_ints(&[0, 1]));
    }

    #[test]
    fn projection_cone_of_opposite_pair() {
        let a = RationalMatrix::from_ints(&[&[1], &[-1]], 1);
        let cone = projection_cone_rays(&a).unwrap();
        assert_eq!(cone.rays, vec![RationalVector::from_ints(&[1, 1])]);
    }

    #[test]
    fn projection_cone_example_44() {
        let a = example_44().matrix();
        let cone = projection_cone_rays(&a).unwrap();
        assert_eq!(cone.rays.len(), 2);
        assert!(cone
            .rays
            .contains(&RationalVector::from_ints(&[20, 20, 5, 0, 3])));
        assert!(cone.rays.contains(&RationalVector::from_ints(&[0, 0, 0, 1, 1])));
    }

    #[test]
    fn extreme_rays_appear_among_multipliers() {
        let sys = example_44();
        let (_, cert) = fm_eliminate_all(&sys, &[0, 1, 2]).unwrap();
        let cone = projection_cone_rays(&sys.matrix()).unwrap();
        for ray in &cone.rays {
            assert!(
                cert.multipliers
                    .iter()
                    .any(|u| u.is_positive_multiple_of(ray)),
                "ray {ray:?} missing"
            );
        }
    }

    #[test]
    fn integer_step_interval() {
        // 1/2 <= x <= 3/2 over the integers: feasible via x = 1, and the
        // projected constant inequality evaluates to ceil(1/2) - 3/2 <= 0.
        let a = RationalMatrix::from_ints(&[&[1], &[-1]], 1);
        let b = RationalVector::new(vec![rat("1/2"), rat("-3/2")]);
        let sys = LinearSystem::concrete(&a, &b).unwrap();
        let ac = integer_fm_step(&sys, 0).unwrap();
        assert_eq!(ac.inequalities.len(), 1);
        let v = ac.inequalities[0]
            .function
            .evaluate(&RationalVector::zeros(0))
            .unwrap();
        assert_eq!(v, rat("-1/2"));
        assert!(ac.satisfied_by(&RationalVector::zeros(0)).unwrap());
    }

    #[test]
    fn integer_step_redundant_row_pairing() {
        // Pairing x1 >= b1 + 2 b2 + b4/10 (ceiled) against the upper bound
        // -x1 >= b1 + 1/2 b3 + 2/5 b5 yields
        // ceil(b1 + 2 b2 + 1/10 b4) + b1 + 1/2 b3 + 2/5 b5 <= 0.
        let mut sys = LinearSystem::new(1, 5);
        sys.push_row(LinRow {
            coeffs: RationalVector::from_ints(&[1]),
            rhs: RhsForm {
                constant: rat("0"),
                params: RationalVector::new(vec![rat("1"), rat("2"), rat("0"), rat("1/10"), rat("0")]),
            },
        })
        .unwrap();
        sys.push_row(LinRow {
            coeffs: RationalVector::from_ints(&[-1]),
            rhs: RhsForm {
                constant: rat("0"),
                params: RationalVector::new(vec![rat("1"), rat("0"), rat("1/2"), rat("0"), rat("2/5")]),
            },
        })
        .unwrap();
        let ac = integer_fm_step(&sys, 0).unwrap();
        assert_eq!(ac.inequalities.len(), 1);
        let f = &ac.inequalities[0].function;
        assert_eq!(f.ceiling_count(), 1);
        // At b = (0,0,0,10,0): ceil(1) + 0 = 1 > 0.
        let b = RationalVector::from_ints(&[0, 0, 0, 10, 0]);
        assert_eq!(f.evaluate(&b).unwrap(), rat("1"));
        // At b = (-1,0,0,0,0): ceil(-1) + (-1) = -2 <= 0.
        let b = RationalVector::from_ints(&[-1, 0, 0, 0, 0]);
        assert_eq!(f.evaluate(&b).unwrap(), rat("-2"));
    }

    #[test]
    fn feasibility_and_minimum() {
        let a = RationalMatrix::from_ints(&[&[2], &[-2]], 1);
        let b = RationalVector::from_ints(&[1, -3]);
        let sys = LinearSystem::concrete(&a, &b).unwrap();
        assert!(rational_feasible(&sys).unwrap());
        let min = exact_minimum(&sys, &RationalVector::from_ints(&[1]))
            .unwrap()
            .unwrap();
        assert_eq!(min, rat("1/2"));

        let bad = LinearSystem::concrete(&a, &RationalVector::from_ints(&[1, -0])).unwrap();
        assert!(!rational_feasible(&bad).unwrap());
        assert_eq!(exact_minimum(&bad, &RationalVector::from_ints(&[1])).unwrap(), None);
    }

    #[test]
    fn example_44_b1_is_lp_feasible() {
        // b1 = (0,0,0,1,-1) admits rational solutions (x3 = 1, x1 in
        // [1/10, 4/10]) even though no integer point exists.
        let a = example_44().matrix();
        let b = RationalVector::from_ints(&[0, 0, 0, 1, -1]);
        let sys = LinearSystem::concrete(&a, &b).unwrap();
        assert!(rational_feasible(&sys).unwrap());
    }
}
