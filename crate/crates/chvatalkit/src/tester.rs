//! LP- and IP-consistency testers.
//!
//! A tester for a matrix `A` is a pointwise maximum of functions of the
//! right-hand side `b` whose sign decides feasibility of `A x >= b` over the
//! rationals (LP kind, linear forms) or over the integers (IP kind, Chvatal
//! functions). LP testers come from symbolic Fourier-Motzkin runs; IP testers
//! from symbolically iterating the TDI-based Chvatal closure and then
//! eliminating the integer variables.

use num_traits::ToPrimitive;
use std::sync::Arc;

use crate::arith::{Rational, RationalMatrix, RationalVector};
use crate::caps::Caps;
use crate::chvatal::{ceilingize, ACFunction, ACNode, CeilPattern};
use crate::fm::{fm_eliminate_all, projection_cone_rays, rational_feasible, LinearSystem};
use crate::hilbert::{hilbert_basis, rank_bound, Cone};
use crate::oracle::Box;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TesterKind {
    Lp,
    Ip,
}

/// Pointwise maximum of functions of the right-hand side; the verdict is
/// "feasible" exactly when the maximum is nonpositive.
#[derive(Clone, Debug)]
pub struct MaxTester {
    pub functions: Vec<ACFunction>,
    pub kind: TesterKind,
    /// Arity of the right-hand-side space the functions consume.
    pub rhs_dimension: usize,
}

impl MaxTester {
    pub fn new(functions: Vec<ACFunction>, kind: TesterKind, rhs_dimension: usize) -> Result<Self> {
        for f in &functions {
            if f.dimension() != rhs_dimension {
                return Err(Error::DimensionMismatch {
                    expected: rhs_dimension,
                    got: f.dimension(),
                });
            }
            if kind == TesterKind::Lp && f.ceiling_count() != 0 {
                return Err(Error::domain("LP tester functions must be ceiling-free"));
            }
        }
        Ok(MaxTester {
            functions,
            kind,
            rhs_dimension,
        })
    }

    pub fn value(&self, b: &RationalVector) -> Result<Rational> {
        let mut best: Option<Rational> = None;
        for f in &self.functions {
            let v = f.evaluate(b)?;
            if best.as_ref().map(|m| v > *m).unwrap_or(true) {
                best = Some(v);
            }
        }
        Ok(best.unwrap_or_else(Rational::zero))
    }

    /// `true` = the tester calls the system feasible at `b`.
    pub fn accepts(&self, b: &RationalVector) -> Result<bool> {
        Ok(!self.value(b)?.is_positive())
    }
}

/// FM-based LP-consistency tester: eliminate every variable symbolically and
/// keep the surviving forms of `b`, normalized primitive-integer.
pub fn lp_tester_from_fm(a: &RationalMatrix, order: &[usize]) -> Result<MaxTester> {
    let sys = LinearSystem::symbolic(a);
    let (projected, _) = fm_eliminate_all(&sys, order)?;
    let mut functions: Vec<ACFunction> = Vec::new();
    for row in projected.rows() {
        debug_assert!(row.coeffs.is_zero());
        // 0 >= params . b + const, i.e. params . b + const <= 0.
        let coeffs = row.rhs.params.primitive_normalize();
        debug_assert!(row.rhs.constant.is_zero());
        let f = ACFunction::linear(coeffs);
        if !functions.contains(&f) {
            functions.push(f);
        }
    }
    MaxTester::new(functions, TesterKind::Lp, a.row_count())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormLabel {
    ExtremeRay,
    Redundant,
}

/// Labels of a tester's linear forms against the projection cone, plus the
/// extreme rays the tester fails to cover (a valid tester covers all).
#[derive(Clone, Debug)]
pub struct Classification {
    pub labels: Vec<FormLabel>,
    pub missing_rays: Vec<RationalVector>,
}

impl Classification {
    pub fn is_valid(&self) -> bool {
        self.missing_rays.is_empty()
    }

    pub fn redundant_count(&self) -> usize {
        self.labels
            .iter()
            .filter(|l| **l == FormLabel::Redundant)
            .count()
    }
}

/// Marks each linear form of an LP tester as an extreme ray of the projection
/// cone or as redundant, and reports any extreme ray the tester misses.
pub fn classify_redundant(tester: &MaxTester, a: &RationalMatrix) -> Result<Classification> {
    if tester.kind != TesterKind::Lp {
        return Err(Error::domain("classification applies to LP testers"));
    }
    let cone = projection_cone_rays(a)?;
    let mut labels = Vec::new();
    let mut covered = vec![false; cone.rays.len()];
    for f in &tester.functions {
        let (coeffs, _) = f.carrier_parts();
        let mut label = FormLabel::Redundant;
        for (k, ray) in cone.rays.iter().enumerate() {
            if coeffs.is_positive_multiple_of(ray) {
                label = FormLabel::ExtremeRay;
                covered[k] = true;
            }
        }
        labels.push(label);
    }
    let missing_rays = cone
        .rays
        .into_iter()
        .zip(covered)
        .filter(|(_, c)| !c)
        .map(|(r, _)| r)
        .collect();
    Ok(Classification {
        labels,
        missing_rays,
    })
}

/// Applies a ceiling pattern to every function of an LP tester. One pattern
/// is broadcast; otherwise one pattern per function. The result is only a
/// candidate: validity must be checked against an oracle.
pub fn ceilingize_tester(tester: &MaxTester, patterns: &[CeilPattern]) -> Result<MaxTester> {
    if tester.kind != TesterKind::Lp {
        return Err(Error::domain("ceilingization starts from an LP tester"));
    }
    if patterns.len() != 1 && patterns.len() != tester.functions.len() {
        return Err(Error::domain(
            "pattern count must be one or match the function count",
        ));
    }
    let mut functions = Vec::new();
    for (i, f) in tester.functions.iter().enumerate() {
        let p = if patterns.len() == 1 {
            &patterns[0]
        } else {
            &patterns[i]
        };
        functions.push(ceilingize(f, p)?);
    }
    MaxTester::new(functions, TesterKind::Ip, tester.rhs_dimension)
}

/// Strips every ceiling: the carrier tester of an IP tester is an LP-tester
/// candidate (validated elsewhere).
pub fn carrier_tester(tester: &MaxTester) -> Result<MaxTester> {
    if tester.kind != TesterKind::Ip {
        return Err(Error::domain("carrier tester starts from an IP tester"));
    }
    let functions = tester.functions.iter().map(|f| f.carrier()).collect();
    MaxTester::new(functions, TesterKind::Lp, tester.rhs_dimension)
}

/// Is `{ z integer : A z >= b }` nonempty within the search window?
pub fn lattice_feasible(
    a: &RationalMatrix,
    b: &RationalVector,
    z_window: &Box,
    caps: &Caps,
) -> Result<bool> {
    if z_window.dimension() != a.col_count() {
        return Err(Error::DimensionMismatch {
            expected: a.col_count(),
            got: z_window.dimension(),
        });
    }
    caps.check(
        "lattice search window",
        z_window.volume().to_u128().unwrap_or(u128::MAX),
        caps.enum_points,
    )?;
    for p in z_window.points() {
        let z = crate::oracle::point_to_vector(&p);
        let az = a.mul_vector(&z)?;
        if az.iter().zip(b.iter()).all(|(l, r)| l >= r) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Outcome of checking a tester against ground truth on a grid of rhs values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validation {
    Pass,
    Counterexample {
        b: RationalVector,
        tester_accepts: bool,
        oracle_feasible: bool,
    },
}

impl Validation {
    pub fn passed(&self) -> bool {
        matches!(self, Validation::Pass)
    }
}

/// Rational grid `p / denominator` for `p` in the box, in lexicographic order.
pub fn rational_grid(bounds: &Box, denominator: i64) -> Vec<RationalVector> {
    let d = Rational::from(denominator);
    bounds
        .points()
        .map(|p| {
            crate::oracle::point_to_vector(&p)
                .iter()
                .map(|e| e / &d)
                .collect()
        })
        .collect()
}

/// Compares the tester verdict against exact feasibility for every `b` in
/// the grid; the first disagreement (grid order) is returned.
pub fn validate_tester(
    tester: &MaxTester,
    a: &RationalMatrix,
    grid: &[RationalVector],
    z_window: &Box,
    caps: &Caps,
) -> Result<Validation> {
    for b in grid {
        let accepts = tester.accepts(b)?;
        let feasible = match tester.kind {
            TesterKind::Lp => {
                let sys = LinearSystem::concrete(a, b)?;
                rational_feasible(&sys)?
            }
            TesterKind::Ip => lattice_feasible(a, b, z_window, caps)?,
        };
        if accepts != feasible {
            return Ok(Validation::Counterexample {
                b: b.clone(),
                tester_accepts: accepts,
                oracle_feasible: feasible,
            });
        }
    }
    Ok(Validation::Pass)
}

// ---------------------------------------------------------------------------
// Symbolic closure pipeline (IP tester construction)
// ---------------------------------------------------------------------------

type PairMemo = std::collections::HashMap<(*const ACNode, *const ACNode), bool>;

/// Structural equality with a pointer shortcut and pair memoization, so
/// comparisons stay linear in the shared-DAG size.
fn node_eq(a: &Arc<ACNode>, b: &Arc<ACNode>, memo: &mut PairMemo) -> bool {
    if Arc::ptr_eq(a, b) {
        return true;
    }
    let key = (Arc::as_ptr(a), Arc::as_ptr(b));
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let v = match (&**a, &**b) {
        (
            ACNode::Leaf {
                coeffs: ca,
                constant: ka,
            },
            ACNode::Leaf {
                coeffs: cb,
                constant: kb,
            },
        ) => ca == cb && ka == kb,
        (ACNode::Ceil(x), ACNode::Ceil(y)) => node_eq(x, y, memo),
        (
            ACNode::Scale {
                factor: fa,
                child: xa,
            },
            ACNode::Scale {
                factor: fb,
                child: xb,
            },
        ) => fa == fb && node_eq(xa, xb, memo),
        (
            ACNode::Sum {
                left_factor: la,
                left: xla,
                right_factor: ra,
                right: xra,
            },
            ACNode::Sum {
                left_factor: lb,
                left: xlb,
                right_factor: rb,
                right: xrb,
            },
        ) => la == lb && ra == rb && node_eq(xla, xlb, memo) && node_eq(xra, xrb, memo),
        _ => false,
    };
    memo.insert(key, v);
    v
}

fn functions_equal(a: &ACFunction, b: &ACFunction) -> bool {
    a.dimension() == b.dimension() && node_eq(a.root(), b.root(), &mut PairMemo::new())
}

/// Syntactic proof that `a >= b` pointwise. Sound, not complete.
fn prove_ge(a: &ACFunction, b: &ACFunction) -> bool {
    fn ge(a: &Arc<ACNode>, b: &Arc<ACNode>, dim: usize, eq: &mut PairMemo, memo: &mut PairMemo) -> bool {
        if node_eq(a, b, eq) {
            return true;
        }
        let key = (Arc::as_ptr(a), Arc::as_ptr(b));
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let mut v = false;
        if let ACNode::Ceil(inner) = &**a {
            // ceil(x) >= x >= b.
            v = ge(inner, b, dim, eq, memo);
        }
        if !v {
            if let ACNode::Ceil(inner) = &**b {
                // a integral and a >= x imply a >= ceil(x).
                let a_fn = ACFunction::from_root(a.clone(), dim).expect("validated tree");
                if a_fn.is_syntactically_integral() {
                    v = ge(a, inner, dim, eq, memo);
                }
            }
        }
        if !v {
            v = match (&**a, &**b) {
                (
                    ACNode::Leaf {
                        coeffs: ca,
                        constant: ka,
                    },
                    ACNode::Leaf {
                        coeffs: cb,
                        constant: kb,
                    },
                ) => ca == cb && ka >= kb,
                _ => false,
            };
        }
        memo.insert(key, v);
        v
    }
    a.dimension() == b.dimension()
        && ge(
            a.root(),
            b.root(),
            a.dimension(),
            &mut PairMemo::new(),
            &mut PairMemo::new(),
        )
}

/// One coefficient group of the symbolic closure system: a primitive integer
/// row with the set of right-hand-side functions attached to it.
#[derive(Clone, Debug)]
struct SymGroup {
    coeffs: RationalVector,
    variants: Vec<ACFunction>,
}

/// Adds a variant unless a stronger one is present; drops weaker ones.
fn insert_variant(variants: &mut Vec<ACFunction>, f: ACFunction) -> bool {
    if variants.iter().any(|v| prove_ge(v, &f)) {
        return false;
    }
    variants.retain(|v| !prove_ge(&f, v));
    variants.push(f);
    true
}

/// IP-consistency tester via the TDI closure pipeline: symbolically iterate
/// `b -> ceil(U b)` on the stacked Hilbert system until the inequality set
/// stabilizes (or the rank bound is hit), then eliminate the integer
/// variables by Fourier-Motzkin over the symbolic right-hand sides.
pub fn ip_tester(a: &RationalMatrix, caps: &Caps) -> Result<MaxTester> {
    let n = a.col_count();
    let m = a.row_count();
    caps.check("IP tester integer columns", n as u128, caps.ip_columns)?;

    // Constant constraints (zero rows) act on b directly.
    let mut direct_functions: Vec<ACFunction> = Vec::new();
    let mut groups: Vec<SymGroup> = Vec::new();
    for (i, row) in a.rows().iter().enumerate() {
        if row.is_zero() {
            direct_functions.push(ACFunction::linear(RationalVector::unit(m, i)));
            continue;
        }
        let p = primitive_row(row);
        let scale = scale_to_primitive(row);
        let rhs = ACFunction::linear(RationalVector::unit(m, i).scale(&scale));
        match groups.iter_mut().find(|g| g.coeffs == p) {
            Some(g) => {
                insert_variant(&mut g.variants, rhs);
            }
            None => groups.push(SymGroup {
                coeffs: p,
                variants: vec![rhs],
            }),
        }
    }

    if n == 0 || groups.is_empty() {
        return MaxTester::new(direct_functions, TesterKind::Ip, m);
    }

    let rounds = rank_bound(n as u32).to_u64().unwrap_or(u64::MAX);
    for _round in 0..rounds {
        let (next, changed) = closure_round(&groups, n)?;
        groups = next;
        let total: usize = groups.iter().map(|g| g.variants.len()).sum();
        if std::env::var_os("CHVATALKIT_TRACE").is_some() {
            eprintln!(
                "closure round {_round}: {} coefficient rows, {} inequalities",
                groups.len(),
                total
            );
        }
        caps.check(
            "symbolic closure inequalities",
            total as u128,
            caps.closure_inequalities,
        )?;
        caps.check(
            "symbolic closure coefficient rows",
            groups.len() as u128,
            caps.closure_rows,
        )?;
        if !changed {
            break;
        }
    }

    // Final projection of the integer variables over symbolic right-hand
    // sides: rows are coeffs . z >= rhs(b).
    let mut rows: Vec<(RationalVector, ACFunction)> = Vec::new();
    for g in &groups {
        for v in &g.variants {
            rows.push((g.coeffs.clone(), v.clone()));
        }
    }
    for var in 0..n {
        rows = ac_fm_step(rows, var)?;
    }
    let mut functions = direct_functions;
    for (coeffs, rhs) in rows {
        debug_assert!(coeffs.is_zero());
        if functions.iter().any(|f| prove_ge(f, &rhs)) {
            continue;
        }
        functions.retain(|f| !prove_ge(&rhs, f));
        functions.push(rhs);
    }
    MaxTester::new(functions, TesterKind::Ip, m)
}

fn primitive_row(row: &RationalVector) -> RationalVector {
    let normalized = row.primitive_normalize();
    let first = row.iter().find(|e| !e.is_zero()).expect("nonzero row");
    if first.is_negative() {
        normalized.neg()
    } else {
        normalized
    }
}

fn scale_to_primitive(row: &RationalVector) -> Rational {
    let p = primitive_row(row);
    for (a, b) in p.iter().zip(row.iter()) {
        if !b.is_zero() {
            return a / b;
        }
    }
    Rational::one()
}

/// One symbolic closure round: for every subset of coefficient groups of size
/// at most the variable count, every Hilbert element of the subset cone, and
/// every choice of right-hand-side variant on the support, produce the ceiled
/// cut. Returns the merged groups and whether anything new appeared.
fn closure_round(groups: &[SymGroup], n: usize) -> Result<(Vec<SymGroup>, bool)> {
    let gens: Vec<RationalVector> = groups.iter().map(|g| g.coeffs.clone()).collect();
    let mut next: Vec<SymGroup> = groups.to_vec();
    let mut changed = false;

    let subset_max = n.min(groups.len());
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    collect_subsets(groups.len(), subset_max, &mut Vec::new(), 0, &mut subsets);

    for subset in subsets {
        let sub_gens: Vec<RationalVector> = subset.iter().map(|&i| gens[i].clone()).collect();
        let cone = Cone::new(sub_gens.clone(), n)?;
        let basis = match hilbert_basis(&cone) {
            Ok(b) => b,
            // Non-pointed cones beyond the supported dimension add nothing
            // essential: Caratheodory subsets are pointed and already cover
            // the TDI family.
            Err(Error::Unsupported(_)) => continue,
            Err(e) => return Err(e),
        };
        for h in basis {
            let Some(u) = crate::hilbert::find_nonneg_combination(&h, &sub_gens) else {
                continue;
            };
            let slots: Vec<(usize, Rational)> = subset
                .iter()
                .enumerate()
                .filter_map(|(k, &gi)| {
                    let c = u.get(k).clone();
                    (!c.is_zero()).then_some((gi, c))
                })
                .collect();
            if slots.is_empty() {
                continue;
            }
            let mut combos: Vec<ACFunction> = vec![];
            build_combos(&slots, groups, 0, None, &mut combos)?;
            for rhs in combos {
                // A combination whose ceiling simplifies away is implied by
                // summing the source rows, and an integral dual using it can
                // be rewritten over those rows, so it adds nothing.
                if rhs.is_syntactically_integral() {
                    continue;
                }
                let cut = ACFunction::ceil(&rhs);
                let group = match next.iter_mut().find(|g| g.coeffs == h) {
                    Some(g) => g,
                    None => {
                        next.push(SymGroup {
                            coeffs: h.clone(),
                            variants: Vec::new(),
                        });
                        changed = true;
                        next.last_mut().unwrap()
                    }
                };
                if insert_variant(&mut group.variants, cut) {
                    changed = true;
                }
            }
        }
    }
    Ok((next, changed))
}

fn collect_subsets(
    len: usize,
    max: usize,
    current: &mut Vec<usize>,
    start: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if !current.is_empty() {
        out.push(current.clone());
    }
    if current.len() == max {
        return;
    }
    for i in start..len {
        current.push(i);
        collect_subsets(len, max, current, i + 1, out);
        current.pop();
    }
}

fn build_combos(
    slots: &[(usize, Rational)],
    groups: &[SymGroup],
    index: usize,
    acc: Option<ACFunction>,
    out: &mut Vec<ACFunction>,
) -> Result<()> {
    if index == slots.len() {
        if let Some(f) = acc {
            out.push(f);
        }
        return Ok(());
    }
    let (gi, coef) = &slots[index];
    for v in &groups[*gi].variants {
        let term = ACFunction::scale(coef.clone(), v)?;
        let next = match &acc {
            None => term,
            Some(f) => f.plus(&term)?,
        };
        build_combos(slots, groups, index + 1, Some(next), out)?;
    }
    Ok(())
}

/// Fourier-Motzkin step over rows with symbolic AC right-hand sides.
fn ac_fm_step(
    rows: Vec<(RationalVector, ACFunction)>,
    var: usize,
) -> Result<Vec<(RationalVector, ACFunction)>> {
    let mut out: Vec<(RationalVector, ACFunction)> = Vec::new();
    let mut pos: Vec<(RationalVector, ACFunction)> = Vec::new();
    let mut neg: Vec<(RationalVector, ACFunction)> = Vec::new();
    for (coeffs, rhs) in rows {
        let c = coeffs.get(var).clone();
        if c.is_zero() {
            push_unique(&mut out, (coeffs, rhs));
        } else {
            let inv = c.abs().recip()?;
            let scaled_coeffs = coeffs.scale(&inv);
            let scaled_rhs = ACFunction::scale(inv, &rhs)?;
            if c.is_positive() {
                pos.push((scaled_coeffs, scaled_rhs));
            } else {
                neg.push((scaled_coeffs, scaled_rhs));
            }
        }
    }
    for (pc, pr) in &pos {
        for (nc, nr) in &neg {
            let mut coeffs = pc.add(nc);
            coeffs.set(var, Rational::zero());
            let rhs = pr.plus(nr)?;
            push_unique(&mut out, (coeffs, rhs));
        }
    }
    Ok(out)
}

fn push_unique(rows: &mut Vec<(RationalVector, ACFunction)>, row: (RationalVector, ACFunction)) {
    if rows
        .iter()
        .any(|(c, r)| *c == row.0 && functions_equal(r, &row.1))
    {
        return;
    }
    rows.push(row);
}

// ---------------------------------------------------------------------------
// Naive ceilingized FM scheme
// ---------------------------------------------------------------------------

/// Fourier-Motzkin with the simple ceilingization rule: rescale the pivot
/// coefficient to +-1 at each stage, and whenever a derived row that still
/// contains variables has all-integer coefficients, ceil its right-hand side.
/// The result is an IP-tester *candidate*; it is generally not valid.
pub fn fm_ceiling_tester(a: &RationalMatrix, order: &[usize]) -> Result<MaxTester> {
    let m = a.row_count();
    let mut rows: Vec<(RationalVector, ACFunction)> = a
        .rows()
        .iter()
        .enumerate()
        .map(|(i, row)| (row.clone(), ACFunction::linear(RationalVector::unit(m, i))))
        .collect();
    // Integer rows bound an integer combination, so the rhs rounds up.
    rows = rows
        .into_iter()
        .map(|(c, r)| {
            if c.is_integral() && !c.is_zero() {
                let ceiled = ACFunction::ceil_simplified(&r);
                (c, ceiled)
            } else {
                (c, r)
            }
        })
        .collect();
    for &var in order {
        let mut staged: Vec<(RationalVector, ACFunction)> = Vec::new();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (coeffs, rhs) in rows {
            let c = coeffs.get(var).clone();
            if c.is_zero() {
                push_unique(&mut staged, (coeffs, rhs));
                continue;
            }
            let inv = c.abs().recip()?;
            let scaled_coeffs = coeffs.scale(&inv);
            let mut scaled_rhs = ACFunction::scale(inv, &rhs)?;
            if scaled_coeffs.is_integral() {
                scaled_rhs = ACFunction::ceil_simplified(&scaled_rhs);
            }
            if c.is_positive() {
                pos.push((scaled_coeffs, scaled_rhs));
            } else {
                neg.push((scaled_coeffs, scaled_rhs));
            }
        }
        for (pc, pr) in &pos {
            for (nc, nr) in &neg {
                let mut coeffs = pc.add(nc);
                coeffs.set(var, Rational::zero());
                let rhs = pr.plus(nr)?;
                push_unique(&mut staged, (coeffs, rhs));
            }
        }
        rows = staged;
    }
    let functions = rows
        .into_iter()
        .map(|(c, r)| {
            debug_assert!(c.is_zero());
            r
        })
        .collect();
    MaxTester::new(functions, TesterKind::Ip, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn example_44_matrix() -> RationalMatrix {
        RationalMatrix::new(
            vec![
                RationalVector::new(vec![rat("-1"), rat("1/2"), rat("-1/10")]),
                RationalVector::new(vec![rat("1"), rat("-1/4"), rat("0")]),
                RationalVector::new(vec![rat("0"), rat("-1"), rat("1")]),
                RationalVector::new(vec![rat("0"), rat("0"), rat("1")]),
                RationalVector::new(vec![rat("0"), rat("0"), rat("-1")]),
            ],
            3,
        )
        .unwrap()
    }

    fn example_410_matrix() -> RationalMatrix {
        RationalMatrix::from_ints(&[&[3, 2], &[-3, -2], &[3, -2], &[-3, 2]], 2)
    }

    #[test]
    fn lp_tester_matches_projection_forms() {
        let a = example_44_matrix();
        let t = lp_tester_from_fm(&a, &[0, 1, 2]).unwrap();
        assert_eq!(t.functions.len(), 2);
        let forms: Vec<RationalVector> = t
            .functions
            .iter()
            .map(|f| f.carrier_parts().0)
            .collect();
        assert!(forms.contains(&RationalVector::from_ints(&[20, 20, 5, 0, 3])));
        assert!(forms.contains(&RationalVector::from_ints(&[0, 0, 0, 1, 1])));
        // Feasibility at b = 0 and at the split right-hand side.
        assert!(t.accepts(&RationalVector::zeros(5)).unwrap());
        assert!(t.accepts(&RationalVector::from_ints(&[0, 0, 0, 1, -1])).unwrap());
    }

    #[test]
    fn lp_tester_classification() {
        let a = example_44_matrix();
        let minimal = lp_tester_from_fm(&a, &[0, 1, 2]).unwrap();
        let c = classify_redundant(&minimal, &a).unwrap();
        assert!(c.is_valid());
        assert_eq!(c.redundant_count(), 0);

        let wide = lp_tester_from_fm(&a, &[1, 2, 0]).unwrap();
        assert_eq!(wide.functions.len(), 3);
        let c = classify_redundant(&wide, &a).unwrap();
        assert!(c.is_valid());
        assert_eq!(c.redundant_count(), 1);
    }

    #[test]
    fn single_pair_tester_is_extreme() {
        let a = RationalMatrix::from_ints(&[&[1], &[-1]], 1);
        let t = lp_tester_from_fm(&a, &[0]).unwrap();
        assert_eq!(t.functions.len(), 1);
        let c = classify_redundant(&t, &a).unwrap();
        assert!(c.is_valid());
        assert_eq!(c.labels, vec![FormLabel::ExtremeRay]);
    }

    #[test]
    fn lp_tester_agrees_with_rational_feasibility() {
        let a = example_44_matrix();
        let t = lp_tester_from_fm(&a, &[0, 1, 2]).unwrap();
        let grid = rational_grid(&Box::cube(5, -1, 1).unwrap(), 1);
        let v = validate_tester(&t, &a, &grid, &Box::cube(3, -10, 10).unwrap(), &Caps::default())
            .unwrap();
        assert!(v.passed());
    }

    #[test]
    fn ip_tester_opposite_pair() {
        let a = RationalMatrix::from_ints(&[&[1], &[-1]], 1);
        let caps = Caps::default();
        let t = ip_tester(&a, &caps).unwrap();
        // Equivalent to ceil(b1) + ceil(b2) <= 0 on integer and half-integer
        // points: feasible iff floor(-b2) >= ceil(b1).
        let grid = rational_grid(&Box::cube(2, -10, 10).unwrap(), 2);
        for b in &grid {
            let expected =
                Rational::from_int((-b.get(1)).floor()) >= Rational::from_int(b.get(0).ceil());
            assert_eq!(t.accepts(b).unwrap(), expected, "b = {b:?}");
        }
    }

    #[test]
    fn ip_tester_rejects_empty_mirror_rhs() {
        let a = example_410_matrix();
        let caps = Caps::default();
        let t = ip_tester(&a, &caps).unwrap();
        let b = RationalVector::from_ints(&[1, -4, -1, -2]);
        assert!(!t.accepts(&b).unwrap(), "tester must reject the empty system");
        // Homogeneous side: z = 0 is feasible for b = 0.
        assert!(t.accepts(&RationalVector::zeros(4)).unwrap());
    }

    #[test]
    fn ip_tester_matches_lattice_oracle_on_window() {
        let a = example_410_matrix();
        let caps = Caps::default();
        let t = ip_tester(&a, &caps).unwrap();
        let grid = rational_grid(&Box::cube(4, -3, 3).unwrap(), 1);
        let v = validate_tester(&t, &a, &grid, &Box::cube(2, -12, 12).unwrap(), &caps).unwrap();
        assert!(matches!(v, Validation::Pass), "{v:?}");
    }

    #[test]
    fn carrier_of_ip_tester_is_lp_valid() {
        let a = RationalMatrix::from_ints(&[&[1], &[-1]], 1);
        let caps = Caps::default();
        let t = ip_tester(&a, &caps).unwrap();
        let lp = carrier_tester(&t).unwrap();
        let grid = rational_grid(&Box::cube(2, -6, 6).unwrap(), 2);
        let v = validate_tester(&lp, &a, &grid, &Box::cube(1, -10, 10).unwrap(), &caps).unwrap();
        assert!(v.passed());
    }

    #[test]
    fn naive_ceiling_testers_accept_the_counterexample() {
        let a = example_410_matrix();
        let b = RationalVector::from_ints(&[1, -4, -1, -2]);
        let caps = Caps::default();
        for order in [[0usize, 1], [1usize, 0]] {
            let t = fm_ceiling_tester(&a, &order).unwrap();
            assert!(
                t.accepts(&b).unwrap(),
                "naive scheme with order {order:?} was expected to accept"
            );
        }
        // ... but the window is truly lattice-free.
        assert!(!lattice_feasible(&a, &b, &Box::cube(2, -10, 10).unwrap(), &caps).unwrap());
    }

    #[test]
    fn example_44_no_pattern_separates() {
        let a = example_44_matrix();
        let t = lp_tester_from_fm(&a, &[0, 1, 2]).unwrap();
        let b1 = RationalVector::from_ints(&[0, 0, 0, 1, -1]);
        let b2 = RationalVector::from_ints(&[-1, 0, 0, 1, -1]);
        let caps = Caps::default();
        // b1 is IP-infeasible, b2 is IP-feasible.
        let window = Box::cube(3, -10, 10).unwrap();
        assert!(!lattice_feasible(&a, &b1, &window, &caps).unwrap());
        assert!(lattice_feasible(&a, &b2, &window, &caps).unwrap());
        let library = CeilPattern::library();
        for p1 in &library {
            for p2 in &library {
                let cand = ceilingize_tester(&t, &[p1.clone(), p2.clone()]).unwrap();
                let rejects_b1 = !cand.accepts(&b1).unwrap();
                let accepts_b2 = cand.accepts(&b2).unwrap();
                assert!(
                    !(rejects_b1 && accepts_b2),
                    "pattern ({p1:?}, {p2:?}) unexpectedly separates"
                );
            }
        }
    }

    #[test]
    fn alternate_order_ceilingization_separates() {
        // The first form of the alternate elimination order admits a
        // ceilingization rejecting b1 while keeping b2 feasible.
        let b1 = RationalVector::from_ints(&[0, 0, 0, 1, -1]);
        let b2 = RationalVector::from_ints(&[-1, 0, 0, 1, -1]);
        let mut v4 = RationalVector::zeros(5);
        v4.set(3, rat("1/5"));
        let mut v5 = RationalVector::zeros(5);
        v5.set(4, rat("4/5"));
        let lin = ACFunction::leaf(
            RationalVector::new(vec![rat("4"), rat("4"), rat("1"), rat("0"), rat("0")]),
            rat("0"),
        );
        let f = lin
            .plus(&ACFunction::ceil(&ACFunction::linear(v4)))
            .unwrap()
            .plus(&ACFunction::ceil(&ACFunction::linear(v5)))
            .unwrap();
        let full = ACFunction::leaf(
            RationalVector::new(vec![rat("4"), rat("4"), rat("1"), rat("1/5"), rat("4/5")]),
            rat("0"),
        );
        assert_eq!(f.carrier(), full);
        assert!(f.evaluate(&b1).unwrap().is_positive());
        assert!(!f.evaluate(&b2).unwrap().is_positive());
    }

    #[test]
    fn validate_finds_counterexample_for_naive_schemes() {
        let a = example_410_matrix();
        let caps = Caps::default();
        let grid = vec![RationalVector::from_ints(&[1, -4, -1, -2])];
        for order in [[0usize, 1], [1usize, 0]] {
            let t = fm_ceiling_tester(&a, &order).unwrap();
            let v = validate_tester(&t, &a, &grid, &Box::cube(2, -10, 10).unwrap(), &caps)
                .unwrap();
            match v {
                Validation::Counterexample {
                    b,
                    tester_accepts,
                    oracle_feasible,
                } => {
                    assert_eq!(b, RationalVector::from_ints(&[1, -4, -1, -2]));
                    assert!(tester_accepts);
                    assert!(!oracle_feasible);
                }
                Validation::Pass => panic!("naive scheme must fail validation"),
            }
        }
    }
}
