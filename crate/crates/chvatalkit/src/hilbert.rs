//! Hilbert bases of rational cones, TDI-ification, Chvatal closures, and
//! iterated closure to the integer hull.
//!
//! The TDI construction stacks, for subsets of the constraint rows, a Hilbert
//! basis of the cone those rows generate, together with nonnegative
//! multipliers expressing each basis element over the rows. Ceiling the
//! multiplied right-hand side then yields the Chvatal closure, and iterating
//! reaches the integer hull (or detects emptiness) within the rank bound.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use std::collections::{HashMap, HashSet};

use crate::arith::{Rational, RationalMatrix, RationalVector};
use crate::caps::Caps;
use crate::fm::{rational_feasible, LinRow, LinearSystem, RhsForm};
use crate::{Error, Result};

/// A rational polyhedral cone given by integer generators.
///
/// Generators may be linearly dependent and the cone need not be pointed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub generators: Vec<RationalVector>,
    pub dimension: usize,
}

impl Cone {
    pub fn new(generators: Vec<RationalVector>, dimension: usize) -> Result<Self> {
        for g in &generators {
            if g.dimension() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    got: g.dimension(),
                });
            }
            if !g.is_integral() {
                return Err(Error::domain("cone generators must be integral"));
            }
        }
        Ok(Cone {
            generators,
            dimension,
        })
    }

    pub fn from_ints(generators: &[&[i64]], dimension: usize) -> Self {
        Cone::new(
            generators
                .iter()
                .map(|g| RationalVector::from_ints(g))
                .collect(),
            dimension,
        )
        .expect("integer generators")
    }
}

/// Divides by the gcd of the entries, keeping the direction.
fn primitive_direction(v: &RationalVector) -> RationalVector {
    if v.is_zero() {
        return v.clone();
    }
    let ints = v.to_integers().expect("integral vector");
    let mut g = BigInt::zero();
    for n in &ints {
        g = num_integer::gcd(g, n.clone());
    }
    ints.iter()
        .map(|n| Rational::from_int(n / &g))
        .collect()
}

/// Expresses `target` as a nonnegative rational combination of `generators`,
/// searching supports of size at most the ambient dimension.
pub fn find_nonneg_combination(
    target: &RationalVector,
    generators: &[RationalVector],
) -> Option<RationalVector> {
    let dim = target.dimension();
    let k = generators.len();
    if target.is_zero() {
        return Some(RationalVector::zeros(k));
    }
    let max_support = dim.min(k);
    let mut support: Vec<usize> = Vec::new();
    fn search(
        start: usize,
        support: &mut Vec<usize>,
        max: usize,
        target: &RationalVector,
        generators: &[RationalVector],
    ) -> Option<RationalVector> {
        if !support.is_empty() {
            if let Some(c) = solve_nonneg_on_support(target, generators, support) {
                return Some(c);
            }
        }
        if support.len() == max {
            return None;
        }
        for i in start..generators.len() {
            support.push(i);
            if let Some(c) = search(i + 1, support, max, target, generators) {
                return Some(c);
            }
            support.pop();
        }
        None
    }
    search(0, &mut support, max_support, target, generators)
}

/// Solves `target = sum u_i g_i` over the given support exactly; `None` when
/// inconsistent, not unique, or a coefficient is negative.
fn solve_nonneg_on_support(
    target: &RationalVector,
    generators: &[RationalVector],
    support: &[usize],
) -> Option<RationalVector> {
    let dim = target.dimension();
    let k = support.len();
    // Gaussian elimination of the dim x k system (columns = generators).
    let mut a: Vec<Vec<Rational>> = (0..dim)
        .map(|r| {
            support
                .iter()
                .map(|&i| generators[i].get(r).clone())
                .collect()
        })
        .collect();
    let mut rhs: Vec<Rational> = target.entries().to_vec();
    let mut pivot_rows: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..dim).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        rhs.swap(row, p);
        let inv = a[row][col].recip().ok()?;
        for x in a[row].iter_mut() {
            *x = &*x * &inv;
        }
        rhs[row] = &rhs[row] * &inv;
        for i in 0..dim {
            if i == row || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..k {
                let s = &a[row][j] * &f;
                a[i][j] = &a[i][j] - &s;
            }
            let s = &rhs[row] * &f;
            rhs[i] = &rhs[i] - &s;
        }
        pivot_rows.push((row, col));
        row += 1;
        if row == dim {
            break;
        }
    }
    // Unique solution required: every support column must be a pivot.
    if pivot_rows.len() != k {
        return None;
    }
    // Consistency on the remaining rows.
    for i in row..dim {
        if !rhs[i].is_zero() {
            return None;
        }
    }
    let mut u = vec![Rational::zero(); k];
    for &(r, c) in &pivot_rows {
        u[c] = rhs[r].clone();
    }
    if u.iter().any(|x| x.is_negative()) {
        return None;
    }
    let mut full = RationalVector::zeros(generators.len());
    for (slot, &i) in support.iter().enumerate() {
        full.set(i, u[slot].clone());
    }
    // Verify (the elimination above only used rank-many equations).
    let mut check = RationalVector::zeros(dim);
    for (c, g) in full.iter().zip(generators) {
        if !c.is_zero() {
            check = check.add(&g.scale(c));
        }
    }
    (check == *target).then_some(full)
}

/// Membership `p in cone(generators)` via bounded-support solves.
fn in_cone(p: &RationalVector, generators: &[RationalVector]) -> bool {
    find_nonneg_combination(p, generators).is_some()
}

/// A functional strictly positive on every generator, if one exists; its
/// existence is exactly pointedness of the generated cone.
fn pointed_functional(generators: &[RationalVector], dim: usize) -> Option<RationalVector> {
    let live: Vec<&RationalVector> = generators.iter().filter(|g| !g.is_zero()).collect();
    if live.is_empty() {
        return Some(RationalVector::zeros(dim));
    }
    let a = RationalMatrix::new(live.iter().map(|g| (*g).clone()).collect(), dim).ok()?;
    let b: RationalVector = live.iter().map(|_| Rational::one()).collect();
    let sys = LinearSystem::concrete(&a, &b).ok()?;
    crate::fm::find_feasible_point(&sys).ok()?
}

/// A finite integral generating set for the integer points of the cone.
///
/// For pointed cones this is the (minimal) Hilbert basis, computed by
/// enumerating integer candidates in the fundamental zonotope and reducing.
/// For non-pointed cones in dimension at most two, an explicit generating set
/// is returned; higher-dimensional non-pointed cones are out of desk scale.
pub fn hilbert_basis(cone: &Cone) -> Result<Vec<RationalVector>> {
    let dim = cone.dimension;
    let mut gens: Vec<RationalVector> = Vec::new();
    for g in &cone.generators {
        if g.is_zero() {
            continue;
        }
        let p = primitive_direction(g);
        if !gens.contains(&p) {
            gens.push(p);
        }
    }
    if gens.is_empty() {
        return Ok(Vec::new());
    }

    if let Some(w) = pointed_functional(&gens, dim) {
        return pointed_hilbert(&gens, dim, &w);
    }

    // Non-pointed cones.
    match dim {
        1 => Ok(vec![
            RationalVector::from_ints(&[1]),
            RationalVector::from_ints(&[-1]),
        ]),
        2 => nonpointed_2d(&gens),
        _ => Err(Error::Unsupported(format!(
            "Hilbert generating set for a non-pointed cone in dimension {dim}"
        ))),
    }
}

fn pointed_hilbert(
    gens: &[RationalVector],
    dim: usize,
    w: &RationalVector,
) -> Result<Vec<RationalVector>> {
    // Bounding box of the zonotope sum of [0,1]-segments.
    let mut lo = vec![BigInt::zero(); dim];
    let mut hi = vec![BigInt::zero(); dim];
    for g in gens {
        let ints = g.to_integers().expect("primitive integral");
        for (j, n) in ints.iter().enumerate() {
            if n.is_negative() {
                lo[j] += n;
            } else {
                hi[j] += n;
            }
        }
    }
    let bounds = crate::oracle::Box::new(lo, hi)?;
    let mut candidates: Vec<(Rational, Vec<BigInt>)> = Vec::new();
    for p in bounds.points() {
        if p.iter().all(|n| n.is_zero()) {
            continue;
        }
        let v = crate::oracle::point_to_vector(&p);
        if in_cone(&v, gens) {
            let height = w.dot(&v)?;
            candidates.push((height, p));
        }
    }
    candidates.sort();
    let mut basis: Vec<RationalVector> = Vec::new();
    for (_, p) in candidates {
        let v = crate::oracle::point_to_vector(&p);
        if !is_nonneg_integer_combo(&v, &basis, w) {
            basis.push(v);
        }
    }
    Ok(basis)
}

/// Can `target` be written as a nonnegative integer combination of `basis`?
/// `w` is strictly positive on all basis elements, which bounds the search.
pub fn is_nonneg_integer_combo(
    target: &RationalVector,
    basis: &[RationalVector],
    w: &RationalVector,
) -> bool {
    fn dfs(
        rem: &RationalVector,
        basis: &[RationalVector],
        w: &RationalVector,
        seen: &mut HashSet<Vec<Rational>>,
    ) -> bool {
        if rem.is_zero() {
            return true;
        }
        let h = w.dot(rem).unwrap();
        if h.is_negative() {
            return false;
        }
        let key: Vec<Rational> = rem.entries().to_vec();
        if !seen.insert(key) {
            return false;
        }
        for b in basis {
            let hb = w.dot(b).unwrap();
            if hb > h {
                continue;
            }
            let next = rem.sub(b);
            if in_cone_cached(&next, basis) && dfs(&next, basis, w, seen) {
                return true;
            }
        }
        false
    }
    fn in_cone_cached(p: &RationalVector, basis: &[RationalVector]) -> bool {
        p.is_zero() || in_cone(p, basis)
    }
    let mut seen = HashSet::new();
    dfs(target, basis, w, &mut seen)
}

fn nonpointed_2d(gens: &[RationalVector]) -> Result<Vec<RationalVector>> {
    // Plane: no closed halfplane contains every generator.
    let halfplane_normals = gens.iter().flat_map(|g| {
        let perp = RationalVector::new(vec![-g.get(1).clone(), g.get(0).clone()]);
        [perp.clone(), perp.neg()]
    });
    let mut normal: Option<RationalVector> = None;
    for w in halfplane_normals {
        if gens.iter().all(|g| !w.dot(g).unwrap().is_negative()) {
            normal = Some(w);
            break;
        }
    }
    let Some(w) = normal else {
        return Ok(vec![
            RationalVector::from_ints(&[1, 0]),
            RationalVector::from_ints(&[-1, 0]),
            RationalVector::from_ints(&[0, 1]),
            RationalVector::from_ints(&[0, -1]),
        ]);
    };
    let boundary: Vec<&RationalVector> =
        gens.iter().filter(|g| w.dot(g).unwrap().is_zero()).collect();
    let interior: Vec<&RationalVector> = gens
        .iter()
        .filter(|g| w.dot(g).unwrap().is_positive())
        .collect();
    let d = primitive_direction(boundary[0]);
    if interior.is_empty() {
        // A full line (pointed cases were handled earlier).
        return Ok(vec![d.clone(), d.neg()]);
    }
    // Halfplane { x : w.x >= 0 }: the boundary lattice is generated by +-d,
    // and one primitive step into the interior reaches every layer.
    let w = primitive_direction(&w);
    let (w0, w1) = (
        w.get(0).to_integer().expect("primitive"),
        w.get(1).to_integer().expect("primitive"),
    );
    let gcd = num_integer::Integer::extended_gcd(&w0, &w1);
    let v = RationalVector::new(vec![
        Rational::from_int(gcd.x.clone()),
        Rational::from_int(gcd.y.clone()),
    ]);
    debug_assert_eq!(w.dot(&v).unwrap(), Rational::one());
    let mut out = vec![d.clone(), d.neg(), v];
    for g in interior {
        let p = primitive_direction(g);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    Ok(out)
}

/// The TDI-ification data: nonnegative multipliers `U`, the stacked integral
/// matrix `M = U A`, and the row subset each multiplier came from.
#[derive(Clone, Debug)]
pub struct TDIMultipliers {
    pub u: Vec<RationalVector>,
    pub m: RationalMatrix,
    pub source_subsets: Vec<Vec<usize>>,
}

/// Builds the TDI multipliers for `A x >= b` (independent of `b`): for every
/// nonempty subset of rows, a Hilbert basis of the cone they generate plus
/// one nonnegative multiplier per basis element, supported on the subset.
pub fn build_tdi(a: &RationalMatrix, caps: &Caps) -> Result<TDIMultipliers> {
    let m = a.row_count();
    caps.check("TDI power-set construction", m as u128, caps.tdi_rows)?;
    build_tdi_from_subsets(a, subsets_all(m))
}

/// Same output contract as [`build_tdi`], but enumerating only subsets of
/// size at most the column count. By conic Caratheodory every Hilbert-basis
/// multiplier can be supported on such a subset, so the stacked system is
/// TDI for every right-hand side just the same; this keeps closure
/// iterations polynomial in the row count.
pub fn build_tdi_small_support(a: &RationalMatrix, caps: &Caps) -> Result<TDIMultipliers> {
    let m = a.row_count();
    caps.check("TDI bounded-support construction", m as u128, caps.closure_rows)?;
    let max = a.col_count().min(m);
    build_tdi_from_subsets(a, subsets_up_to(m, max))
}

fn subsets_all(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u64..(1 << m) {
        out.push((0..m).filter(|i| mask & (1 << i) != 0).collect());
    }
    out
}

fn subsets_up_to(m: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..m).map(|i| vec![i]).collect();
    while let Some(s) = stack.pop() {
        if s.len() < max {
            for j in (s.last().copied().unwrap_or(0) + 1)..m {
                let mut t = s.clone();
                t.push(j);
                stack.push(t);
            }
        }
        out.push(s);
    }
    out.sort();
    out
}

fn build_tdi_from_subsets(a: &RationalMatrix, subsets: Vec<Vec<usize>>) -> Result<TDIMultipliers> {
    let n = a.col_count();
    let mut u_rows: Vec<RationalVector> = Vec::new();
    let mut m_rows: Vec<RationalVector> = Vec::new();
    let mut sources: Vec<Vec<usize>> = Vec::new();
    // The Hilbert computation depends only on the primitive generator set.
    let mut memo: HashMap<Vec<Vec<BigInt>>, Vec<RationalVector>> = HashMap::new();

    for subset in subsets {
        // Integer generators: scale each rational row primitive.
        let gens: Vec<RationalVector> = subset
            .iter()
            .map(|&i| row_primitive(a.row(i)))
            .collect();
        let mut key: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| g.to_integers().expect("primitive"))
            .collect();
        key.sort();
        key.dedup();
        let basis = match memo.get(&key) {
            Some(b) => b.clone(),
            None => {
                let cone = Cone::new(gens.clone(), n)?;
                let b = hilbert_basis(&cone)?;
                memo.insert(key, b.clone());
                b
            }
        };
        for h in basis {
            // Multiplier over the subset generators, then re-scaled onto the
            // original (possibly non-primitive) rows of A.
            let Some(combo) = find_nonneg_combination(&h, &gens) else {
                return Err(Error::domain(
                    "Hilbert element not expressible over its own cone generators",
                ));
            };
            let mut u = RationalVector::zeros(a.row_count());
            for (slot, &i) in subset.iter().enumerate() {
                let c = combo.get(slot);
                if c.is_zero() {
                    continue;
                }
                // gens[slot] = row_i * s_i with s_i > 0.
                let s = primitive_scale(a.row(i));
                u.set(i, &(c * &s) + u.get(i));
            }
            debug_assert_eq!(a.vector_mul(&u)?, h);
            u_rows.push(u);
            m_rows.push(h);
            sources.push(subset.clone());
        }
    }
    Ok(TDIMultipliers {
        u: u_rows,
        m: RationalMatrix::new(m_rows, n)?,
        source_subsets: sources,
    })
}

/// Scale factor `s > 0` with `row * s` primitive integral.
fn primitive_scale(row: &RationalVector) -> Rational {
    let p = row_primitive(row);
    for (a, b) in p.iter().zip(row.iter()) {
        if !b.is_zero() {
            return a / b;
        }
    }
    Rational::one()
}

fn row_primitive(row: &RationalVector) -> RationalVector {
    if row.is_zero() {
        return row.clone();
    }
    let normalized = row.primitive_normalize();
    // primitive_normalize forces a positive leading entry; keep direction.
    let first = row.iter().find(|e| !e.is_zero()).unwrap();
    if first.is_negative() {
        normalized.neg()
    } else {
        normalized
    }
}

/// One Chvatal closure step: `P' = { x : M x >= ceil(U b) }`.
pub fn chvatal_closure_step(
    tdi: &TDIMultipliers,
    b: &RationalVector,
) -> Result<(RationalMatrix, RationalVector)> {
    let mut rhs = Vec::with_capacity(tdi.u.len());
    for u in &tdi.u {
        let v = u.dot(b)?;
        rhs.push(Rational::from_int(v.ceil()));
    }
    Ok((tdi.m.clone(), RationalVector::new(rhs)))
}

/// Terminal condition of an iterated-closure run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureStatus {
    /// The last iterate equals its own closure.
    FixedPoint,
    /// The iterate became (rationally) empty.
    Empty,
    /// The rank bound was reached without stabilizing.
    BoundExhausted,
}

/// The iterates of a closure run, oldest first, plus the terminal status.
#[derive(Clone, Debug)]
pub struct ClosureTrace {
    pub iterations: Vec<(RationalMatrix, RationalVector)>,
    pub status: ClosureStatus,
}

impl ClosureTrace {
    /// Number of proper closure steps taken.
    pub fn steps(&self) -> usize {
        self.iterations.len() - 1
    }

    pub fn final_system(&self) -> (&RationalMatrix, &RationalVector) {
        let (m, b) = self.iterations.last().expect("nonempty trace");
        (m, b)
    }
}

/// Normalizes rows primitive and deduplicates equal coefficient rows,
/// keeping the largest right-hand side.
fn simplify_system(m: &RationalMatrix, b: &RationalVector) -> (RationalMatrix, RationalVector) {
    let mut rows: Vec<RationalVector> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    for (row, c) in m.rows().iter().zip(b.iter()) {
        if row.is_zero() {
            // 0 >= c is either vacuous or a permanent contradiction; keep
            // contradictions so emptiness stays visible.
            if c.is_positive() {
                rows.push(row.clone());
                rhs.push(c.clone());
            }
            continue;
        }
        let p = row_primitive(row);
        let s = primitive_scale(row);
        let c = c * &s;
        match rows.iter().position(|r| *r == p) {
            Some(i) => {
                if c > rhs[i] {
                    rhs[i] = c;
                }
            }
            None => {
                rows.push(p);
                rhs.push(c);
            }
        }
    }
    (
        RationalMatrix::new(rows, m.col_count()).expect("widths preserved"),
        RationalVector::new(rhs),
    )
}

/// Iterates the Chvatal closure until fixed point, emptiness, or the rank
/// bound for the dimension is exhausted.
pub fn integer_hull(a: &RationalMatrix, b: &RationalVector, caps: &Caps) -> Result<ClosureTrace> {
    let n = a.col_count();
    let bound = rank_bound_u64(n.max(1)).unwrap_or(u64::MAX);
    let mut iterations = vec![(a.clone(), b.clone())];
    let (mut cur_m, mut cur_b) = simplify_system(a, b);
    let mut tdi: Option<(RationalMatrix, TDIMultipliers)> = None;

    // One extra pass so that a run using exactly the bound's worth of steps
    // can still conclude with a verified fixed point.
    for step in 0..=bound {
        let sys = LinearSystem::concrete(&cur_m, &cur_b)?;
        if !rational_feasible(&sys)? {
            return Ok(ClosureTrace {
                iterations,
                status: ClosureStatus::Empty,
            });
        }
        let last_pass = step == bound;
        let rebuilt = match &tdi {
            Some((m, t)) if *m == cur_m => t.clone(),
            _ => {
                let t = build_tdi_small_support(&cur_m, caps)?;
                tdi = Some((cur_m.clone(), t.clone()));
                t
            }
        };
        let (next_m, next_b) = chvatal_closure_step(&rebuilt, &cur_b)?;
        // Fixed point when no ceiling bit: the closure adds nothing.
        let mut moved = false;
        for (u, c) in rebuilt.u.iter().zip(next_b.iter()) {
            if *c != u.dot(&cur_b)? {
                moved = true;
                break;
            }
        }
        if !moved {
            return Ok(ClosureTrace {
                iterations,
                status: ClosureStatus::FixedPoint,
            });
        }
        let (sm, sb) = simplify_system(&next_m, &next_b);
        if sm == cur_m && sb == cur_b {
            return Ok(ClosureTrace {
                iterations,
                status: ClosureStatus::FixedPoint,
            });
        }
        if last_pass {
            break;
        }
        caps.check(
            "closure iterate rows",
            sm.row_count() as u128,
            caps.closure_rows,
        )?;
        iterations.push((sm.clone(), sb.clone()));
        cur_m = sm;
        cur_b = sb;
    }
    Ok(ClosureTrace {
        iterations,
        status: ClosureStatus::BoundExhausted,
    })
}

/// Rank bound `t(n)`: `t(1) = 1`, `t(n) = c + 2 + (c + 1) t(n-1)` with
/// `c = ceil(n^{5/2})`.
pub fn rank_bound(n: u32) -> BigUint {
    assert!(n >= 1, "rank bound needs n >= 1");
    let mut t = BigUint::one();
    for k in 2..=n {
        let c = ceil_pow_5_2(k);
        t = &c + 2u32 + (&c + 1u32) * t;
    }
    t
}

fn rank_bound_u64(n: usize) -> Option<u64> {
    use num_traits::ToPrimitive;
    rank_bound(n as u32).to_u64()
}

/// ceil(k^(5/2)) = smallest integer c with c^2 >= k^5.
fn ceil_pow_5_2(k: u32) -> BigUint {
    let k5 = BigUint::from(k).pow(5);
    let root = k5.sqrt();
    if &root * &root == k5 {
        root
    } else {
        root + BigUint::one()
    }
}

/// Positive result: an explicit nonnegative integral dual solution proving
/// the TDI property for objective `c` on the system `M x >= b`.
///
/// Finds an optimal vertex by brute-force over row subsets, takes the active
/// rows, and writes `c` as a nonnegative integer combination of them. By
/// complementary slackness that combination is an optimal integral dual.
pub fn dual_integrality_witness(
    m: &RationalMatrix,
    b: &RationalVector,
    c: &RationalVector,
) -> Result<Option<Vec<(usize, BigInt)>>> {
    let sys = LinearSystem::concrete(m, b)?;
    let Some(optimum) = crate::fm::exact_minimum(&sys, c).transpose() else {
        // Infeasible: nothing to witness; TDI quantifies over finite optima.
        return Ok(None);
    };
    let optimum = optimum?;
    let n = m.col_count();
    // Optimal point: vertex enumeration over subsets of size <= n, falling
    // back to the optimal face via FM when the polyhedron has no vertex.
    let point = find_optimal_point(m, b, c, &optimum)?;
    let active: Vec<usize> = (0..m.row_count())
        .filter(|&i| m.row(i).dot(&point).unwrap() == *b.get(i))
        .collect();
    let active_rows: Vec<RationalVector> = active.iter().map(|&i| m.row(i).clone()).collect();
    // A functional positive on the active cone bounds the search; without
    // one (lineality in the active set) a node-capped search still finds
    // desk-scale witnesses.
    let w = pointed_functional(&active_rows, n);
    let combo = integer_combo_search(c, &active_rows, w.as_ref());
    Ok(combo.map(|ys| {
        active
            .iter()
            .zip(ys)
            .filter(|(_, y)| !y.is_zero())
            .map(|(&i, y)| (i, y))
            .collect()
    }))
}

/// A point on the optimal face `{ x : M x >= b, c x = optimum }`.
fn find_optimal_point(
    m: &RationalMatrix,
    b: &RationalVector,
    c: &RationalVector,
    optimum: &Rational,
) -> Result<RationalVector> {
    let n = m.col_count();
    let mut sys = LinearSystem::new(n, 0);
    for (row, bb) in m.rows().iter().zip(b.iter()) {
        sys.push_row(LinRow {
            coeffs: row.clone(),
            rhs: RhsForm::constant(bb.clone(), 0),
        })?;
    }
    // c x <= optimum as -c x >= -optimum; the other direction is implied.
    sys.push_row(LinRow {
        coeffs: c.neg(),
        rhs: RhsForm::constant(-optimum, 0),
    })?;
    crate::fm::find_feasible_point(&sys)?
        .ok_or_else(|| Error::domain("optimal face unexpectedly empty"))
}

/// Writes `c` as a nonnegative *integer* combination of `rows`, or `None`.
fn integer_combo_search(
    c: &RationalVector,
    rows: &[RationalVector],
    w: Option<&RationalVector>,
) -> Option<Vec<BigInt>> {
    const NODE_CAP: usize = 200_000;
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        rem: RationalVector,
        rows: &[RationalVector],
        w: Option<&RationalVector>,
        acc: &mut Vec<BigInt>,
        seen: &mut HashSet<Vec<Rational>>,
        nodes: &mut usize,
    ) -> bool {
        if rem.is_zero() {
            return true;
        }
        *nodes += 1;
        if *nodes > NODE_CAP {
            return false;
        }
        if let Some(w) = w {
            if w.dot(&rem).unwrap().is_negative() {
                return false;
            }
        }
        if !in_cone(&rem, rows) {
            return false;
        }
        if !seen.insert(rem.entries().to_vec()) {
            return false;
        }
        for (i, r) in rows.iter().enumerate() {
            let next = rem.sub(r);
            acc[i] += 1;
            if dfs(next, rows, w, acc, seen, nodes) {
                return true;
            }
            acc[i] -= 1;
        }
        false
    }
    let mut acc = vec![BigInt::zero(); rows.len()];
    let mut seen = HashSet::new();
    let mut nodes = 0;
    dfs(c.clone(), rows, w, &mut acc, &mut seen, &mut nodes).then_some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn vecs(vs: &[&[i64]]) -> Vec<RationalVector> {
        vs.iter().map(|v| RationalVector::from_ints(v)).collect()
    }

    #[test]
    fn hilbert_unimodular_cone() {
        let cone = Cone::from_ints(&[&[1, 0], &[0, 1]], 2);
        let mut h = hilbert_basis(&cone).unwrap();
        h.sort_by_key(|v| format!("{v:?}"));
        assert_eq!(h, vecs(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn hilbert_needs_interior_point() {
        let cone = Cone::from_ints(&[&[1, 0], &[1, 2]], 2);
        let mut h = hilbert_basis(&cone).unwrap();
        h.sort_by_key(|v| format!("{v:?}"));
        assert_eq!(h, vecs(&[&[1, 0], &[1, 1], &[1, 2]]));
    }

    #[test]
    fn hilbert_symmetric_cone() {
        let cone = Cone::from_ints(&[&[1, 2], &[2, 1]], 2);
        let mut h = hilbert_basis(&cone).unwrap();
        h.sort_by_key(|v| format!("{v:?}"));
        assert_eq!(h, vecs(&[&[1, 1], &[1, 2], &[2, 1]]));
    }

    #[test]
    fn hilbert_zero_cone_is_empty() {
        let cone = Cone::from_ints(&[&[0, 0]], 2);
        assert!(hilbert_basis(&cone).unwrap().is_empty());
    }

    #[test]
    fn hilbert_line_generates_both_directions() {
        let cone = Cone::from_ints(&[&[3, 2], &[-3, -2]], 2);
        let h = hilbert_basis(&cone).unwrap();
        assert!(h.contains(&RationalVector::from_ints(&[3, 2])));
        assert!(h.contains(&RationalVector::from_ints(&[-3, -2])));
    }

    #[test]
    fn hilbert_generates_lattice_points_in_box() {
        // Generation property, brute-forced on a window.
        let gens = [&[1i64, 0][..], &[1, 2][..]];
        let cone = Cone::from_ints(&gens, 2);
        let h = hilbert_basis(&cone).unwrap();
        let gen_vecs = vecs(&gens);
        let w = pointed_functional(&gen_vecs, 2).unwrap();
        for x in 0..=4i64 {
            for y in -4..=4i64 {
                let p = RationalVector::from_ints(&[x, y]);
                if p.is_zero() || !in_cone(&p, &gen_vecs) {
                    continue;
                }
                assert!(
                    is_nonneg_integer_combo(&p, &h, &w),
                    "{p:?} not generated by {h:?}"
                );
            }
        }
    }

    #[test]
    fn build_tdi_single_row() {
        let a = RationalMatrix::from_ints(&[&[1, 0]], 2);
        let tdi = build_tdi(&a, &Caps::default()).unwrap();
        assert_eq!(tdi.m.row_count(), 1);
        assert_eq!(tdi.m.row(0), &RationalVector::from_ints(&[1, 0]));
        assert_eq!(tdi.u[0], RationalVector::from_ints(&[1]));
    }

    #[test]
    fn build_tdi_opposite_pair() {
        let a = RationalMatrix::from_ints(&[&[1], &[-1]], 1);
        let tdi = build_tdi(&a, &Caps::default()).unwrap();
        let rows: Vec<&RationalVector> = tdi.m.rows().iter().collect();
        assert!(rows.contains(&&RationalVector::from_ints(&[1])));
        assert!(rows.contains(&&RationalVector::from_ints(&[-1])));
        for (u, h) in tdi.u.iter().zip(tdi.m.rows()) {
            assert!(u.iter().all(|e| !e.is_negative()));
            assert_eq!(&a.vector_mul(u).unwrap(), h);
        }
    }

    #[test]
    fn closure_step_shrinks_interval_to_integer_hull() {
        let a = RationalMatrix::from_ints(&[&[2], &[-2]], 1);
        let b = RationalVector::new(vec![rat("1"), rat("-3")]);
        let tdi = build_tdi(&a, &Caps::default()).unwrap();
        let (m, b2) = chvatal_closure_step(&tdi, &b).unwrap();
        // All rows are +-1 after the Hilbert construction; x >= 1 and -x >= -1.
        for (row, c) in m.rows().iter().zip(b2.iter()) {
            if row == &RationalVector::from_ints(&[1]) {
                assert_eq!(c, &rat("1"));
            } else {
                assert_eq!(row, &RationalVector::from_ints(&[-1]));
                assert_eq!(c, &rat("-1"));
            }
        }
    }

    #[test]
    fn integer_hull_interval() {
        let a = RationalMatrix::from_ints(&[&[2], &[-2]], 1);
        let b = RationalVector::new(vec![rat("1"), rat("-3")]);
        let trace = integer_hull(&a, &b, &Caps::default()).unwrap();
        assert_eq!(trace.status, ClosureStatus::FixedPoint);
        assert_eq!(trace.steps(), 1);
        let (m, bb) = trace.final_system();
        let sys = LinearSystem::concrete(m, bb).unwrap();
        assert!(rational_feasible(&sys).unwrap());
        // x = 1 is the only point left.
        let min = crate::fm::exact_minimum(&sys, &RationalVector::from_ints(&[1]))
            .unwrap()
            .unwrap();
        let max = crate::fm::exact_minimum(&sys, &RationalVector::from_ints(&[-1]))
            .unwrap()
            .unwrap();
        assert_eq!(min, rat("1"));
        assert_eq!(max, rat("-1"));
    }

    #[test]
    fn integer_hull_integral_polytope_is_immediate() {
        let a = RationalMatrix::from_ints(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], 2);
        let b = RationalVector::from_ints(&[0, -1, 0, -1]);
        let trace = integer_hull(&a, &b, &Caps::default()).unwrap();
        assert_eq!(trace.status, ClosureStatus::FixedPoint);
        assert_eq!(trace.steps(), 0);
        assert_eq!(trace.iterations.len(), 1);
    }

    #[test]
    fn integer_hull_detects_empty_mirror_system() {
        // 3x+2y etc. with the right-hand side that excludes all lattice
        // points; the iterated closure must empty out.
        let a = RationalMatrix::from_ints(&[&[3, 2], &[-3, -2], &[3, -2], &[-3, 2]], 2);
        let b = RationalVector::from_ints(&[1, -4, -1, -2]);
        let trace = integer_hull(&a, &b, &Caps::default()).unwrap();
        assert_eq!(trace.status, ClosureStatus::Empty);
    }

    #[test]
    fn rank_bound_values() {
        assert_eq!(rank_bound(1), BigUint::from(1u32));
        assert_eq!(rank_bound(2), BigUint::from(15u32));
        // ceil(3^{5/2}) = 16; 16 + 2 + 17*15 = 273.
        assert_eq!(rank_bound(3), BigUint::from(273u32));
    }

    #[test]
    fn dual_integrality_holds_for_tdi_output() {
        let a = RationalMatrix::from_ints(&[&[3, 2], &[-3, -2], &[3, -2], &[-3, 2]], 2);
        let b = RationalVector::new(vec![rat("1"), rat("-4"), rat("-1"), rat("-2")]);
        let tdi = build_tdi(&a, &Caps::default()).unwrap();
        let bp = RationalVector::new(
            tdi.u
                .iter()
                .map(|u| u.dot(&b).unwrap())
                .collect::<Vec<_>>(),
        );
        for c in [[1i64, 0], [0, 1], [1, 1], [2, -1], [-1, 2]] {
            let c = RationalVector::from_ints(&c);
            let witness = dual_integrality_witness(&tdi.m, &bp, &c).unwrap();
            assert!(witness.is_some(), "no integral dual for {c:?}");
            if let Some(ys) = witness {
                let mut acc = RationalVector::zeros(2);
                for (i, y) in &ys {
                    acc = acc.add(&tdi.m.row(*i).scale(&Rational::from_int(y.clone())));
                }
                assert_eq!(acc, c);
            }
        }
    }

    #[test]
    fn raw_system_fails_dual_integrality() {
        // min x over 2x >= 1, -2x >= -3 has value 1/2; the only dual support
        // is the first row, needing y = 1/2: no integral dual exists.
        let m = RationalMatrix::from_ints(&[&[2], &[-2]], 1);
        let b = RationalVector::new(vec![rat("1"), rat("-3")]);
        let c = RationalVector::from_ints(&[1]);
        let witness = dual_integrality_witness(&m, &b, &c).unwrap();
        assert!(witness.is_none());
    }
}
