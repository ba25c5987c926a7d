//! Affine Chvatal functions as binary trees.
//!
//! A function is built from affine leaves by nonnegative scaling, nonnegative
//! binary combination, and the ceiling operator. The tree is the
//! representation: ceiling count and depth are properties of the tree, not of
//! the function it denotes, so no automatic simplification happens.
//!
//! Subtrees are shared through [`std::sync::Arc`]; the symbolic closure
//! pipeline produces heavily shared DAGs whose unfolded tree would be
//! exponentially large, and evaluation memoizes on node identity.

use std::collections::HashMap;
use std::sync::Arc;

use crate::arith::{Rational, RationalMatrix, RationalVector};
use crate::{Error, Result};

/// One node of the binary-tree representation.
#[derive(Debug, PartialEq, Eq, Hash)]
pub enum ACNode {
    /// Affine function `coeffs . x + constant`.
    Leaf {
        coeffs: RationalVector,
        constant: Rational,
    },
    /// Ceiling of the child.
    Ceil(Arc<ACNode>),
    /// `factor * child` with `factor >= 0`.
    Scale { factor: Rational, child: Arc<ACNode> },
    /// `left_factor * left + right_factor * right`, both factors `>= 0`.
    Sum {
        left_factor: Rational,
        left: Arc<ACNode>,
        right_factor: Rational,
        right: Arc<ACNode>,
    },
}

/// An affine Chvatal function of a fixed input arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ACFunction {
    root: Arc<ACNode>,
    dimension: usize,
}

impl ACFunction {
    pub fn leaf(coeffs: RationalVector, constant: Rational) -> Self {
        let dimension = coeffs.dimension();
        ACFunction {
            root: Arc::new(ACNode::Leaf { coeffs, constant }),
            dimension,
        }
    }

    pub fn zero(dimension: usize) -> Self {
        ACFunction::leaf(RationalVector::zeros(dimension), Rational::zero())
    }

    pub fn constant(dimension: usize, c: Rational) -> Self {
        ACFunction::leaf(RationalVector::zeros(dimension), c)
    }

    /// Linear function `coeffs . x`.
    pub fn linear(coeffs: RationalVector) -> Self {
        ACFunction::leaf(coeffs, Rational::zero())
    }

    pub fn ceil(f: &ACFunction) -> Self {
        ACFunction {
            root: Arc::new(ACNode::Ceil(f.root.clone())),
            dimension: f.dimension,
        }
    }

    pub fn scale(factor: Rational, f: &ACFunction) -> Result<Self> {
        if factor.is_negative() {
            return Err(Error::domain("scale factor must be nonnegative"));
        }
        Ok(ACFunction {
            root: Arc::new(ACNode::Scale {
                factor,
                child: f.root.clone(),
            }),
            dimension: f.dimension,
        })
    }

    pub fn sum(a: Rational, f: &ACFunction, b: Rational, g: &ACFunction) -> Result<Self> {
        if a.is_negative() || b.is_negative() {
            return Err(Error::domain("sum factors must be nonnegative"));
        }
        if f.dimension != g.dimension {
            return Err(Error::DimensionMismatch {
                expected: f.dimension,
                got: g.dimension,
            });
        }
        Ok(ACFunction {
            root: Arc::new(ACNode::Sum {
                left_factor: a,
                left: f.root.clone(),
                right_factor: b,
                right: g.root.clone(),
            }),
            dimension: f.dimension,
        })
    }

    /// `f + g` with unit factors.
    pub fn plus(&self, g: &ACFunction) -> Result<Self> {
        ACFunction::sum(Rational::one(), self, Rational::one(), g)
    }

    pub fn from_root(root: Arc<ACNode>, dimension: usize) -> Result<Self> {
        validate_node(&root, dimension)?;
        Ok(ACFunction { root, dimension })
    }

    pub fn root(&self) -> &Arc<ACNode> {
        &self.root
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Exact recursive evaluation, memoized on shared subtrees.
    pub fn evaluate(&self, x: &RationalVector) -> Result<Rational> {
        if x.dimension() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: x.dimension(),
            });
        }
        let mut memo: HashMap<*const ACNode, Rational> = HashMap::new();
        eval_node(&self.root, x, &mut memo)
    }

    /// Number of ceiling-labeled edges of the (unfolded) tree.
    pub fn ceiling_count(&self) -> u64 {
        let mut memo = HashMap::new();
        cc_node(&self.root, &mut memo)
    }

    /// Length of the longest root-to-node path of the (unfolded) tree.
    pub fn depth(&self) -> u64 {
        let mut memo = HashMap::new();
        depth_node(&self.root, &mut memo)
    }

    /// The affine function left after deleting every ceiling operator.
    pub fn carrier(&self) -> ACFunction {
        let mut memo = HashMap::new();
        let (coeffs, constant) = carrier_node(&self.root, self.dimension, &mut memo);
        ACFunction::leaf(coeffs, constant)
    }

    /// Coefficients and constant of the carrier.
    pub fn carrier_parts(&self) -> (RationalVector, Rational) {
        let mut memo = HashMap::new();
        carrier_node(&self.root, self.dimension, &mut memo)
    }

    /// True when the tree denotes an integer for every argument: an integer
    /// combination of ceilings and integer constants, with no free affine
    /// part. Used to drop provably redundant ceilings.
    pub fn is_syntactically_integral(&self) -> bool {
        let mut memo = HashMap::new();
        integral_node(&self.root, &mut memo)
    }

    /// `ceil(f)`, except when `f` already provably takes integer values.
    pub fn ceil_simplified(f: &ACFunction) -> ACFunction {
        if f.is_syntactically_integral() {
            f.clone()
        } else {
            ACFunction::ceil(f)
        }
    }

    /// Substitutes the affine map `x -> matrix * x + offset` into every leaf.
    ///
    /// The returned function `g` satisfies `g(x) = f(matrix x + offset)`; the
    /// tree structure (and so the ceiling count) is preserved.
    pub fn compose_affine(
        &self,
        matrix: &RationalMatrix,
        offset: &RationalVector,
    ) -> Result<ACFunction> {
        if matrix.row_count() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: matrix.row_count(),
            });
        }
        if offset.dimension() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: offset.dimension(),
            });
        }
        let mut memo: HashMap<*const ACNode, Arc<ACNode>> = HashMap::new();
        let root = compose_node(&self.root, matrix, offset, &mut memo)?;
        Ok(ACFunction {
            root,
            dimension: matrix.col_count(),
        })
    }

    /// Extends the input arity to `new_dim`, keeping existing coordinates.
    pub fn extend_dimension(&self, new_dim: usize) -> ACFunction {
        assert!(new_dim >= self.dimension);
        let mut memo = HashMap::new();
        let root = extend_node(&self.root, new_dim, &mut memo);
        ACFunction {
            root,
            dimension: new_dim,
        }
    }

    /// The total linear coefficient of `var` contributed by leaves that are
    /// *not* under any ceiling, together with the function with those
    /// occurrences removed. Returns `None` when `var` occurs under a ceiling.
    pub fn split_uncovered_variable(&self, var: usize) -> Option<(Rational, ACFunction)> {
        if self.variable_under_ceiling(var) {
            return None;
        }
        let coeff = uncovered_coeff(&self.root, var);
        let root = zero_out_var(&self.root, var, &mut HashMap::new());
        Some((
            coeff,
            ACFunction {
                root,
                dimension: self.dimension,
            },
        ))
    }

    /// True when `var` has a nonzero coefficient in a leaf below a ceiling.
    pub fn variable_under_ceiling(&self, var: usize) -> bool {
        fn walk(node: &Arc<ACNode>, var: usize, under: bool) -> bool {
            match &**node {
                ACNode::Leaf { coeffs, .. } => under && !coeffs.get(var).is_zero(),
                ACNode::Ceil(c) => walk(c, var, true),
                ACNode::Scale { child, .. } => walk(child, var, under),
                ACNode::Sum { left, right, .. } => {
                    walk(left, var, under) || walk(right, var, under)
                }
            }
        }
        walk(&self.root, var, false)
    }

    /// True when `var` occurs (with nonzero coefficient) anywhere in the tree.
    pub fn uses_variable(&self, var: usize) -> bool {
        fn walk(node: &Arc<ACNode>, var: usize) -> bool {
            match &**node {
                ACNode::Leaf { coeffs, .. } => !coeffs.get(var).is_zero(),
                ACNode::Ceil(c) => walk(c, var),
                ACNode::Scale { child, .. } => walk(child, var),
                ACNode::Sum { left, right, .. } => walk(left, var) || walk(right, var),
            }
        }
        walk(&self.root, var)
    }
}

fn validate_node(node: &Arc<ACNode>, dimension: usize) -> Result<()> {
    match &**node {
        ACNode::Leaf { coeffs, .. } => {
            if coeffs.dimension() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    got: coeffs.dimension(),
                });
            }
        }
        ACNode::Ceil(c) => validate_node(c, dimension)?,
        ACNode::Scale { factor, child } => {
            if factor.is_negative() {
                return Err(Error::domain("scale factor must be nonnegative"));
            }
            validate_node(child, dimension)?;
        }
        ACNode::Sum {
            left_factor,
            left,
            right_factor,
            right,
        } => {
            if left_factor.is_negative() || right_factor.is_negative() {
                return Err(Error::domain("sum factors must be nonnegative"));
            }
            validate_node(left, dimension)?;
            validate_node(right, dimension)?;
        }
    }
    Ok(())
}

fn eval_node(
    node: &Arc<ACNode>,
    x: &RationalVector,
    memo: &mut HashMap<*const ACNode, Rational>,
) -> Result<Rational> {
    let key = Arc::as_ptr(node);
    if let Some(v) = memo.get(&key) {
        return Ok(v.clone());
    }
    let value = match &**node {
        ACNode::Leaf { coeffs, constant } => &coeffs.dot(x)? + constant,
        ACNode::Ceil(c) => Rational::from_int(eval_node(c, x, memo)?.ceil()),
        ACNode::Scale { factor, child } => factor * &eval_node(child, x, memo)?,
        ACNode::Sum {
            left_factor,
            left,
            right_factor,
            right,
        } => {
            let l = eval_node(left, x, memo)?;
            let r = eval_node(right, x, memo)?;
            &(left_factor * &l) + &(right_factor * &r)
        }
    };
    memo.insert(key, value.clone());
    Ok(value)
}

fn cc_node(node: &Arc<ACNode>, memo: &mut HashMap<*const ACNode, u64>) -> u64 {
    let key = Arc::as_ptr(node);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let value = match &**node {
        ACNode::Leaf { .. } => 0,
        ACNode::Ceil(c) => 1 + cc_node(c, memo),
        ACNode::Scale { child, .. } => cc_node(child, memo),
        ACNode::Sum { left, right, .. } => cc_node(left, memo) + cc_node(right, memo),
    };
    memo.insert(key, value);
    value
}

fn depth_node(node: &Arc<ACNode>, memo: &mut HashMap<*const ACNode, u64>) -> u64 {
    let key = Arc::as_ptr(node);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let value = match &**node {
        ACNode::Leaf { .. } => 0,
        ACNode::Ceil(c) => 1 + depth_node(c, memo),
        ACNode::Scale { child, .. } => 1 + depth_node(child, memo),
        ACNode::Sum { left, right, .. } => 1 + depth_node(left, memo).max(depth_node(right, memo)),
    };
    memo.insert(key, value);
    value
}

#[allow(clippy::type_complexity)]
fn carrier_node(
    node: &Arc<ACNode>,
    dim: usize,
    memo: &mut HashMap<*const ACNode, (RationalVector, Rational)>,
) -> (RationalVector, Rational) {
    let key = Arc::as_ptr(node);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let value = match &**node {
        ACNode::Leaf { coeffs, constant } => (coeffs.clone(), constant.clone()),
        ACNode::Ceil(c) => carrier_node(c, dim, memo),
        ACNode::Scale { factor, child } => {
            let (v, c) = carrier_node(child, dim, memo);
            (v.scale(factor), factor * &c)
        }
        ACNode::Sum {
            left_factor,
            left,
            right_factor,
            right,
        } => {
            let (lv, lc) = carrier_node(left, dim, memo);
            let (rv, rc) = carrier_node(right, dim, memo);
            (
                lv.scale(left_factor).add(&rv.scale(right_factor)),
                &(left_factor * &lc) + &(right_factor * &rc),
            )
        }
    };
    memo.insert(key, value.clone());
    value
}

fn integral_node(node: &Arc<ACNode>, memo: &mut HashMap<*const ACNode, bool>) -> bool {
    let key = Arc::as_ptr(node);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let value = match &**node {
        ACNode::Leaf { coeffs, constant } => coeffs.is_zero() && constant.is_integer(),
        ACNode::Ceil(_) => true,
        ACNode::Scale { factor, child } => {
            factor.is_zero() || (factor.is_integer() && integral_node(child, memo))
        }
        ACNode::Sum {
            left_factor,
            left,
            right_factor,
            right,
        } => {
            let l = left_factor.is_zero() || (left_factor.is_integer() && integral_node(left, memo));
            let r = right_factor.is_zero()
                || (right_factor.is_integer() && integral_node(right, memo));
            l && r
        }
    };
    memo.insert(key, value);
    value
}

fn compose_node(
    node: &Arc<ACNode>,
    matrix: &RationalMatrix,
    offset: &RationalVector,
    memo: &mut HashMap<*const ACNode, Arc<ACNode>>,
) -> Result<Arc<ACNode>> {
    let key = Arc::as_ptr(node);
    if let Some(v) = memo.get(&key) {
        return Ok(v.clone());
    }
    let out: Arc<ACNode> = match &**node {
        ACNode::Leaf { coeffs, constant } => {
            // coeffs . (M x + t) + constant = (coeffs M) . x + coeffs . t + constant
            let new_coeffs = matrix.vector_mul(coeffs)?;
            let new_const = &coeffs.dot(offset)? + constant;
            Arc::new(ACNode::Leaf {
                coeffs: new_coeffs,
                constant: new_const,
            })
        }
        ACNode::Ceil(c) => Arc::new(ACNode::Ceil(compose_node(c, matrix, offset, memo)?)),
        ACNode::Scale { factor, child } => Arc::new(ACNode::Scale {
            factor: factor.clone(),
            child: compose_node(child, matrix, offset, memo)?,
        }),
        ACNode::Sum {
            left_factor,
            left,
            right_factor,
            right,
        } => Arc::new(ACNode::Sum {
            left_factor: left_factor.clone(),
            left: compose_node(left, matrix, offset, memo)?,
            right_factor: right_factor.clone(),
            right: compose_node(right, matrix, offset, memo)?,
        }),
    };
    memo.insert(key, out.clone());
    Ok(out)
}

fn extend_node(
    node: &Arc<ACNode>,
    new_dim: usize,
    memo: &mut HashMap<*const ACNode, Arc<ACNode>>,
) -> Arc<ACNode> {
    let key = Arc::as_ptr(node);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let out: Arc<ACNode> = match &**node {
        ACNode::Leaf { coeffs, constant } => {
            let mut entries = coeffs.entries().to_vec();
            entries.resize(new_dim, Rational::zero());
            Arc::new(ACNode::Leaf {
                coeffs: RationalVector::new(entries),
                constant: constant.clone(),
            })
        }
        ACNode::Ceil(c) => Arc::new(ACNode::Ceil(extend_node(c, new_dim, memo))),
        ACNode::Scale { factor, child } => Arc::new(ACNode::Scale {
            factor: factor.clone(),
            child: extend_node(child, new_dim, memo),
        }),
        ACNode::Sum {
            left_factor,
            left,
            right_factor,
            right,
        } => Arc::new(ACNode::Sum {
            left_factor: left_factor.clone(),
            left: extend_node(left, new_dim, memo),
            right_factor: right_factor.clone(),
            right: extend_node(right, new_dim, memo),
        }),
    };
    memo.insert(key, out.clone());
    out
}

fn uncovered_coeff(node: &Arc<ACNode>, var: usize) -> Rational {
    match &**node {
        ACNode::Leaf { coeffs, .. } => coeffs.get(var).clone(),
        ACNode::Ceil(_) => Rational::zero(),
        ACNode::Scale { factor, child } => factor * &uncovered_coeff(child, var),
        ACNode::Sum {
            left_factor,
            left,
            right_factor,
            right,
        } => {
            &(left_factor * &uncovered_coeff(left, var))
                + &(right_factor * &uncovered_coeff(right, var))
        }
    }
}

fn zero_out_var(
    node: &Arc<ACNode>,
    var: usize,
    memo: &mut HashMap<*const ACNode, Arc<ACNode>>,
) -> Arc<ACNode> {
    let key = Arc::as_ptr(node);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let out: Arc<ACNode> = match &**node {
        ACNode::Leaf { coeffs, constant } => {
            let mut c = coeffs.clone();
            c.set(var, Rational::zero());
            Arc::new(ACNode::Leaf {
                coeffs: c,
                constant: constant.clone(),
            })
        }
        // Leaves under ceilings keep their coefficients; callers must check
        // variable_under_ceiling first.
        ACNode::Ceil(_) => node.clone(),
        ACNode::Scale { factor, child } => Arc::new(ACNode::Scale {
            factor: factor.clone(),
            child: zero_out_var(child, var, memo),
        }),
        ACNode::Sum {
            left_factor,
            left,
            right_factor,
            right,
        } => Arc::new(ACNode::Sum {
            left_factor: left_factor.clone(),
            left: zero_out_var(left, var, memo),
            right_factor: right_factor.clone(),
            right: zero_out_var(right, var, memo),
        }),
    };
    memo.insert(key, out.clone());
    out
}

/// Outcome of the structure theorem for affine Chvatal trees: either the tree
/// is ceiling-free (and collapses to its affine carrier), or it splits as
/// `gamma * ceil(g1) + g2` with a strict drop in total ceiling count.
#[derive(Debug, Clone)]
pub enum Decomposition {
    Affine(ACFunction),
    CeilSplit {
        gamma: Rational,
        g1: ACFunction,
        g2: ACFunction,
    },
}

/// Which child a `Sum` node prefers when both admit a ceiling split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitPreference {
    Left,
    Right,
}

/// Decomposes `f` per the structure theorem, preferring the left child of a
/// sum when both sides carry ceilings.
pub fn decompose(f: &ACFunction) -> Decomposition {
    decompose_with(f, SplitPreference::Left)
}

pub fn decompose_with(f: &ACFunction, pref: SplitPreference) -> Decomposition {
    let d = f.dimension();
    match decompose_node(f.root(), d, pref) {
        NodeDecomp::Affine => Decomposition::Affine(f.carrier()),
        NodeDecomp::Split { gamma, g1, g2 } => Decomposition::CeilSplit {
            gamma,
            g1: ACFunction { root: g1, dimension: d },
            g2: ACFunction { root: g2, dimension: d },
        },
    }
}

enum NodeDecomp {
    Affine,
    Split {
        gamma: Rational,
        g1: Arc<ACNode>,
        g2: Arc<ACNode>,
    },
}

fn zero_node(dim: usize) -> Arc<ACNode> {
    Arc::new(ACNode::Leaf {
        coeffs: RationalVector::zeros(dim),
        constant: Rational::zero(),
    })
}

fn decompose_node(node: &Arc<ACNode>, dim: usize, pref: SplitPreference) -> NodeDecomp {
    match &**node {
        ACNode::Leaf { .. } => NodeDecomp::Affine,
        ACNode::Ceil(c) => NodeDecomp::Split {
            gamma: Rational::one(),
            g1: c.clone(),
            g2: zero_node(dim),
        },
        ACNode::Scale { factor, child } => {
            // A zero label annihilates the subtree: the function is zero
            // pointwise, so a trivial split discharges any ceilings below.
            if factor.is_zero() {
                return if cc_node(node, &mut HashMap::new()) == 0 {
                    NodeDecomp::Affine
                } else {
                    NodeDecomp::Split {
                        gamma: Rational::one(),
                        g1: zero_node(dim),
                        g2: zero_node(dim),
                    }
                };
            }
            match decompose_node(child, dim, pref) {
                NodeDecomp::Affine => NodeDecomp::Affine,
                NodeDecomp::Split { gamma, g1, g2 } => NodeDecomp::Split {
                    gamma: factor * &gamma,
                    g1,
                    g2: Arc::new(ACNode::Scale {
                        factor: factor.clone(),
                        child: g2,
                    }),
                },
            }
        }
        ACNode::Sum {
            left_factor,
            left,
            right_factor,
            right,
        } => {
            let left_live = !left_factor.is_zero();
            let right_live = !right_factor.is_zero();
            let dl = if left_live {
                decompose_node(left, dim, pref)
            } else {
                NodeDecomp::Affine
            };
            let dr = if right_live {
                decompose_node(right, dim, pref)
            } else {
                NodeDecomp::Affine
            };
            // Annihilated subtrees may still hold structural ceilings; the
            // zero split below keeps the cc inequality valid in that case.
            let dead_ceilings = (!left_live && cc_node(left, &mut HashMap::new()) > 0)
                || (!right_live && cc_node(right, &mut HashMap::new()) > 0);
            match (dl, dr) {
                (NodeDecomp::Affine, NodeDecomp::Affine) => {
                    if dead_ceilings {
                        NodeDecomp::Split {
                            gamma: Rational::one(),
                            g1: zero_node(dim),
                            g2: strip_dead(node, dim),
                        }
                    } else {
                        NodeDecomp::Affine
                    }
                }
                (NodeDecomp::Split { gamma, g1, g2 }, NodeDecomp::Affine) => NodeDecomp::Split {
                    gamma: left_factor * &gamma,
                    g1,
                    g2: Arc::new(ACNode::Sum {
                        left_factor: left_factor.clone(),
                        left: g2,
                        right_factor: right_factor.clone(),
                        right: if right_live {
                            right.clone()
                        } else {
                            zero_node(dim)
                        },
                    }),
                },
                (NodeDecomp::Affine, NodeDecomp::Split { gamma, g1, g2 }) => NodeDecomp::Split {
                    gamma: right_factor * &gamma,
                    g1,
                    g2: Arc::new(ACNode::Sum {
                        left_factor: left_factor.clone(),
                        left: if left_live { left.clone() } else { zero_node(dim) },
                        right_factor: right_factor.clone(),
                        right: g2,
                    }),
                },
                (
                    NodeDecomp::Split {
                        gamma: gl,
                        g1: g1l,
                        g2: g2l,
                    },
                    NodeDecomp::Split {
                        gamma: gr,
                        g1: g1r,
                        g2: g2r,
                    },
                ) => match pref {
                    SplitPreference::Left => NodeDecomp::Split {
                        gamma: left_factor * &gl,
                        g1: g1l,
                        g2: Arc::new(ACNode::Sum {
                            left_factor: left_factor.clone(),
                            left: g2l,
                            right_factor: right_factor.clone(),
                            right: right.clone(),
                        }),
                    },
                    SplitPreference::Right => NodeDecomp::Split {
                        gamma: right_factor * &gr,
                        g1: g1r,
                        g2: Arc::new(ACNode::Sum {
                            left_factor: left_factor.clone(),
                            left: left.clone(),
                            right_factor: right_factor.clone(),
                            right: g2r,
                        }),
                    },
                },
            }
        }
    }
}

/// Replaces zero-scaled subtrees by zero leaves so the result is ceiling-free.
fn strip_dead(node: &Arc<ACNode>, dim: usize) -> Arc<ACNode> {
    match &**node {
        ACNode::Leaf { .. } => node.clone(),
        ACNode::Ceil(_) => node.clone(),
        ACNode::Scale { factor, child } => {
            if factor.is_zero() {
                zero_node(dim)
            } else {
                Arc::new(ACNode::Scale {
                    factor: factor.clone(),
                    child: strip_dead(child, dim),
                })
            }
        }
        ACNode::Sum {
            left_factor,
            left,
            right_factor,
            right,
        } => Arc::new(ACNode::Sum {
            left_factor: left_factor.clone(),
            left: if left_factor.is_zero() {
                zero_node(dim)
            } else {
                strip_dead(left, dim)
            },
            right_factor: right_factor.clone(),
            right: if right_factor.is_zero() {
                zero_node(dim)
            } else {
                strip_dead(right, dim)
            },
        }),
    }
}

/// Ceiling insertion patterns for an affine function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CeilPattern {
    /// Leave the function alone.
    None,
    /// One ceiling around the whole function.
    Whole,
    /// One ceiling around each nonzero term (and the constant, if nonzero).
    PerTerm,
    /// `|a_i| * ceil(sign(a_i) x_i)` per variable, plus a ceiled constant.
    PerVariable,
    /// An explicit tree whose carrier must equal the given affine function.
    Template(ACFunction),
}

impl CeilPattern {
    pub fn library() -> Vec<CeilPattern> {
        vec![
            CeilPattern::None,
            CeilPattern::Whole,
            CeilPattern::PerTerm,
            CeilPattern::PerVariable,
        ]
    }
}

/// Builds a Chvatal function whose carrier is the affine function `g`.
pub fn ceilingize(g: &ACFunction, pattern: &CeilPattern) -> Result<ACFunction> {
    let (coeffs, constant) = g.carrier_parts();
    if g.ceiling_count() != 0 {
        return Err(Error::domain("ceilingize input must be affine"));
    }
    let dim = g.dimension();
    let affine = ACFunction::leaf(coeffs.clone(), constant.clone());
    let result = match pattern {
        CeilPattern::None => affine,
        CeilPattern::Whole => ACFunction::ceil(&affine),
        CeilPattern::PerTerm => {
            let mut terms: Vec<ACFunction> = Vec::new();
            for (i, a) in coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let mut v = RationalVector::zeros(dim);
                v.set(i, a.clone());
                terms.push(ACFunction::ceil(&ACFunction::linear(v)));
            }
            if !constant.is_zero() || terms.is_empty() {
                terms.push(ACFunction::ceil(&ACFunction::constant(
                    dim,
                    constant.clone(),
                )));
            }
            fold_sum(terms)
        }
        CeilPattern::PerVariable => {
            let mut terms: Vec<ACFunction> = Vec::new();
            for (i, a) in coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let mut v = RationalVector::zeros(dim);
                v.set(
                    i,
                    if a.is_negative() {
                        -Rational::one()
                    } else {
                        Rational::one()
                    },
                );
                let ceiled = ACFunction::ceil(&ACFunction::linear(v));
                terms.push(ACFunction::scale(a.abs(), &ceiled)?);
            }
            if !constant.is_zero() || terms.is_empty() {
                terms.push(ACFunction::ceil(&ACFunction::constant(
                    dim,
                    constant.clone(),
                )));
            }
            fold_sum(terms)
        }
        CeilPattern::Template(t) => {
            let (tc, tk) = t.carrier_parts();
            if tc != coeffs || tk != constant {
                return Err(Error::domain(
                    "template carrier does not match the affine function",
                ));
            }
            t.clone()
        }
    };
    Ok(result)
}

fn fold_sum(mut terms: Vec<ACFunction>) -> ACFunction {
    let mut acc = terms.pop().expect("at least one term");
    while let Some(t) = terms.pop() {
        acc = t.plus(&acc).expect("matching dimensions");
    }
    acc
}

/// An affine Chvatal inequality `function(x) <= bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ACInequality {
    pub function: ACFunction,
    pub bound: Rational,
}

impl ACInequality {
    pub fn new(function: ACFunction, bound: Rational) -> Self {
        ACInequality { function, bound }
    }

    pub fn holds_at(&self, x: &RationalVector) -> Result<bool> {
        Ok(self.function.evaluate(x)? <= self.bound)
    }
}

/// Finitely many affine Chvatal inequalities plus integrality markers.
///
/// An empty `integer_vars` set describes an AC set, a nonempty one a MIAC set.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ACSystem {
    pub inequalities: Vec<ACInequality>,
    pub dimension: usize,
    pub integer_vars: std::collections::BTreeSet<usize>,
}

impl ACSystem {
    pub fn new(dimension: usize) -> Self {
        ACSystem {
            inequalities: Vec::new(),
            dimension,
            integer_vars: Default::default(),
        }
    }

    pub fn push(&mut self, ineq: ACInequality) -> Result<()> {
        if ineq.function.dimension() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: ineq.function.dimension(),
            });
        }
        self.inequalities.push(ineq);
        Ok(())
    }

    pub fn total_ceiling_count(&self) -> u64 {
        self.inequalities
            .iter()
            .map(|i| i.function.ceiling_count())
            .sum()
    }

    /// Pointwise satisfaction; integrality markers are checked too.
    pub fn satisfied_by(&self, x: &RationalVector) -> Result<bool> {
        if x.dimension() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: x.dimension(),
            });
        }
        for &j in &self.integer_vars {
            if !x.get(j).is_integer() {
                return Ok(false);
            }
        }
        for ineq in &self.inequalities {
            if !ineq.holds_at(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Convenience: leaf with integer coefficients.
pub fn linear_leaf(coeffs: &[i64]) -> ACFunction {
    ACFunction::linear(RationalVector::from_ints(coeffs))
}

pub use crate::arith::rat;
