//! Continuous piecewise-linear functions with exact rational slopes.
//!
//! A [`PwlFunction`] is kept in canonical form at all times: breakpoints are
//! strictly increasing and adjacent slopes always differ, so the breakpoints
//! are exactly the tropical roots (the points of non-differentiability).
//! Structural equality of two values therefore coincides with pointwise
//! equality of the functions they denote.

mod algebra;
pub use algebra::compose_all;
mod classify;
mod monomial;

pub use classify::{Block, FunctionClass, FunctionTag, SlopeSign};
pub use monomial::{Monomial, MonomialForm, MonomialMode};

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Continuous piecewise-linear function `R -> R`.
///
/// Piece `i` carries slope `slopes[i]` and lives on `[x_i, x_{i+1}]` with
/// `x_0 = -inf` and `x_{k+1} = +inf`. The additive level is fixed by the
/// anchor: the value at the first breakpoint, or at `0` for a linear function.
/// Values at every breakpoint are cached alongside so evaluation is a binary
/// search.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PwlFunction<T> {
    breaks: Vec<T>,
    slopes: Vec<T>,
    values: Vec<T>,
    anchor_value: T,
}

impl<T: Scalar> PwlFunction<T> {
    /// Builds a function from raw breakpoint/slope data plus one known value
    /// `(x, f(x))`, merging equal adjacent slopes.
    pub fn new(breaks: Vec<T>, slopes: Vec<T>, anchor: (T, T)) -> Result<Self> {
        if slopes.len() != breaks.len() + 1 {
            return Err(Error::SlopeCountMismatch {
                breakpoints: breaks.len(),
                expected: breaks.len() + 1,
                got: slopes.len(),
            });
        }
        if let Some(i) = breaks.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::UnsortedBreakpoints { index: i + 1 });
        }
        let (ax, av) = anchor;
        if breaks.is_empty() {
            let s = slopes[0].clone();
            return Ok(Self::linear(s.clone(), av - s * ax));
        }

        // values relative to f(x_1) = 0, then shift to match the anchor
        let mut rel = Vec::with_capacity(breaks.len());
        rel.push(T::zero());
        for i in 1..breaks.len() {
            let step = slopes[i].clone() * (breaks[i].clone() - breaks[i - 1].clone());
            let next = rel[i - 1].clone() + step;
            rel.push(next);
        }
        let at_anchor = eval_raw(&breaks, &slopes, &rel, &ax);
        let offset = av - at_anchor;
        let values = rel.into_iter().map(|v| v + offset.clone()).collect();
        Ok(Self::canonical(breaks, slopes, values))
    }

    /// `x -> slope * x + intercept`.
    pub fn linear(slope: T, intercept: T) -> Self {
        PwlFunction {
            breaks: Vec::new(),
            slopes: vec![slope],
            values: Vec::new(),
            anchor_value: intercept,
        }
    }

    pub fn identity() -> Self {
        Self::linear(T::one(), T::zero())
    }

    pub fn constant(c: T) -> Self {
        Self::linear(T::zero(), c)
    }

    /// Interpolates the given vertices (strictly increasing abscissae) and
    /// extends with the two tail slopes. An empty vertex list is not allowed.
    pub fn from_vertices(xs: Vec<T>, vs: Vec<T>, left_slope: T, right_slope: T) -> Self {
        assert!(!xs.is_empty(), "from_vertices needs at least one vertex");
        debug_assert_eq!(xs.len(), vs.len());
        debug_assert!(xs.windows(2).all(|w| w[0] < w[1]));
        let mut slopes = Vec::with_capacity(xs.len() + 1);
        slopes.push(left_slope);
        for i in 1..xs.len() {
            let rise = vs[i].clone() - vs[i - 1].clone();
            let run = xs[i].clone() - xs[i - 1].clone();
            slopes.push(rise / run);
        }
        slopes.push(right_slope);
        Self::canonical(xs, slopes, vs)
    }

    /// Drops every breakpoint whose neighbouring slopes coincide.
    pub(crate) fn canonical(breaks: Vec<T>, slopes: Vec<T>, values: Vec<T>) -> Self {
        debug_assert_eq!(slopes.len(), breaks.len() + 1);
        debug_assert_eq!(values.len(), breaks.len());
        let first_point = breaks.first().cloned().zip(values.first().cloned());
        let mut out_b = Vec::with_capacity(breaks.len());
        let mut out_v = Vec::with_capacity(values.len());
        let mut slope_iter = slopes.into_iter();
        let mut out_s = vec![slope_iter.next().expect("at least one slope")];
        for ((b, v), s) in breaks.into_iter().zip(values).zip(slope_iter) {
            if *out_s.last().unwrap() == s {
                continue;
            }
            out_b.push(b);
            out_v.push(v);
            out_s.push(s);
        }
        if out_b.is_empty() {
            let s = out_s.pop().unwrap();
            let intercept = match first_point {
                Some((b, v)) => v - s.clone() * b,
                None => panic!("canonical() needs a value to fix a linear function"),
            };
            return Self::linear(s, intercept);
        }
        let anchor_value = out_v[0].clone();
        PwlFunction {
            breaks: out_b,
            slopes: out_s,
            values: out_v,
            anchor_value,
        }
    }

    pub fn breakpoints(&self) -> &[T] {
        &self.breaks
    }

    pub fn slopes(&self) -> &[T] {
        &self.slopes
    }

    /// Values at the breakpoints, in order.
    pub fn breakpoint_values(&self) -> &[T] {
        &self.values
    }

    /// `(x_ref, f(x_ref))` with `x_ref` the first breakpoint, or `0` for a
    /// linear function.
    pub fn anchor(&self) -> (T, T) {
        let x = self.breaks.first().cloned().unwrap_or_else(T::zero);
        (x, self.anchor_value.clone())
    }

    /// Tropical roots: exactly the breakpoints of the canonical form.
    pub fn roots(&self) -> &[T] {
        &self.breaks
    }

    pub fn num_roots(&self) -> usize {
        self.breaks.len()
    }

    pub fn num_edges(&self) -> usize {
        self.slopes.len()
    }

    pub fn is_linear(&self) -> bool {
        self.breaks.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.is_linear() && self.slopes[0].is_one() && self.anchor_value.is_zero()
    }

    pub fn first_slope(&self) -> &T {
        &self.slopes[0]
    }

    pub fn last_slope(&self) -> &T {
        self.slopes.last().unwrap()
    }

    pub fn eval(&self, x: &T) -> T {
        if self.breaks.is_empty() {
            return self.slopes[0].clone() * x.clone() + self.anchor_value.clone();
        }
        eval_raw(&self.breaks, &self.slopes, &self.values, x)
    }

    /// Slope of the piece immediately to the left of `x`.
    pub fn slope_left_of(&self, x: &T) -> &T {
        let idx = self.breaks.partition_point(|b| b < x);
        &self.slopes[idx]
    }

    /// Slope of the piece immediately to the right of `x`.
    pub fn slope_right_of(&self, x: &T) -> &T {
        let idx = self.breaks.partition_point(|b| b <= x);
        &self.slopes[idx]
    }

    /// `a * f + b`.
    pub fn post_affine(&self, a: &T, b: &T) -> Self {
        let map = |v: &T| a.clone() * v.clone() + b.clone();
        if a.is_zero() {
            return Self::constant(b.clone());
        }
        PwlFunction {
            breaks: self.breaks.clone(),
            slopes: self.slopes.iter().map(|s| a.clone() * s.clone()).collect(),
            values: self.values.iter().map(map).collect(),
            anchor_value: map(&self.anchor_value),
        }
    }

    /// `f(a * x + b)` for `a != 0`.
    pub fn pre_affine(&self, a: &T, b: &T) -> Self {
        assert!(!a.is_zero(), "pre_affine needs a nonzero scale");
        if self.is_linear() {
            let s = self.slopes[0].clone();
            let c = s.clone() * b.clone() + self.anchor_value.clone();
            return Self::linear(s * a.clone(), c);
        }
        let pre = |y: &T| (y.clone() - b.clone()) / a.clone();
        let mut xs: Vec<T> = self.breaks.iter().map(pre).collect();
        let mut vs = self.values.clone();
        let mut slopes: Vec<T> = self.slopes.iter().map(|s| s.clone() * a.clone()).collect();
        if a.is_negative() {
            xs.reverse();
            vs.reverse();
            slopes.reverse();
        }
        let anchor_value = vs[0].clone();
        PwlFunction {
            breaks: xs,
            slopes,
            values: vs,
            anchor_value,
        }
    }

    pub fn neg(&self) -> Self {
        self.post_affine(&-T::one(), &T::zero())
    }

    /// Points for external plotting: every breakpoint plus one point at
    /// distance 1 beyond each extreme breakpoint (or `-1, 0, 1` when linear).
    pub fn sample_points(&self) -> Vec<(T, T)> {
        let mut xs = Vec::with_capacity(self.breaks.len() + 2);
        match (self.breaks.first(), self.breaks.last()) {
            (Some(first), Some(last)) => {
                xs.push(first.clone() - T::one());
                xs.extend(self.breaks.iter().cloned());
                xs.push(last.clone() + T::one());
            }
            _ => xs.extend([-T::one(), T::zero(), T::one()]),
        }
        xs.into_iter()
            .map(|x| {
                let y = self.eval(&x);
                (x, y)
            })
            .collect()
    }

    /// Breakpoints, midpoints between consecutive breakpoints and one
    /// sentinel beyond each end.
    pub fn probe_points(&self) -> Vec<T> {
        probe_points(&self.breaks)
    }
}

/// Probe grid over a sorted breakpoint list: breakpoints, midpoints and one
/// sentinel at distance 1 beyond each end (`-1, 0, 1` for an empty list).
pub fn probe_points<T: Scalar>(breaks: &[T]) -> Vec<T> {
    let (Some(first), Some(last)) = (breaks.first(), breaks.last()) else {
        return vec![-T::one(), T::zero(), T::one()];
    };
    let mut out = Vec::with_capacity(2 * breaks.len() + 1);
    out.push(first.clone() - T::one());
    for (i, b) in breaks.iter().enumerate() {
        if i > 0 {
            out.push((breaks[i - 1].clone() + b.clone()).half());
        }
        out.push(b.clone());
    }
    out.push(last.clone() + T::one());
    out
}

fn eval_raw<T: Scalar>(breaks: &[T], slopes: &[T], values: &[T], x: &T) -> T {
    // number of breakpoints <= x
    let idx = breaks.partition_point(|b| b <= x);
    if idx == 0 {
        values[0].clone() + slopes[0].clone() * (x.clone() - breaks[0].clone())
    } else {
        values[idx - 1].clone() + slopes[idx].clone() * (x.clone() - breaks[idx - 1].clone())
    }
}

impl<T: Scalar> fmt::Display for PwlFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pwl[")?;
        for (i, s) in self.slopes.iter().enumerate() {
            if i > 0 {
                write!(f, " |{}->{}| ", self.breaks[i - 1], self.values[i - 1])?;
            }
            write!(f, "{s}")?;
        }
        if self.breaks.is_empty() {
            write!(f, "; f(0)={}", self.anchor_value)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(p: i64) -> Q {
        Q::from_int(p)
    }

    fn fr(p: i64, d: i64) -> Q {
        Q::from_frac(p, d)
    }

    fn pwl(breaks: &[i64], slopes: &[i64], anchor: (i64, i64)) -> PwlFunction<Q> {
        PwlFunction::new(
            breaks.iter().map(|&b| q(b)).collect(),
            slopes.iter().map(|&s| q(s)).collect(),
            (q(anchor.0), q(anchor.1)),
        )
        .unwrap()
    }

    // Direct evaluation of raw (possibly non-canonical) data, walking from
    // the anchor piece by piece.
    fn oracle_eval(breaks: &[i64], slopes: &[i64], anchor: (i64, i64), x: &Q) -> Q {
        let value_at = |target: &Q| -> Q {
            // integrate slope from anchor.0 to target
            let (a, b, sign) = if *target >= q(anchor.0) {
                (q(anchor.0), target.clone(), 1)
            } else {
                (target.clone(), q(anchor.0), -1)
            };
            let mut cuts = vec![a.clone()];
            cuts.extend(breaks.iter().map(|&b| q(b)).filter(|c| *c > a && *c < b));
            cuts.push(b.clone());
            let mut acc = Q::from_int(0);
            for w in cuts.windows(2) {
                let mid = (w[0].clone() + w[1].clone()) / q(2);
                let idx = breaks.iter().filter(|&&bk| q(bk) <= mid).count();
                acc += q(slopes[idx]) * (w[1].clone() - w[0].clone());
            }
            q(anchor.1) + acc * q(sign)
        };
        value_at(x)
    }

    #[test]
    fn normalize_merges_equal_slopes() {
        let f = pwl(&[0, 1], &[1, 1, 2], (0, 0));
        assert_eq!(f.breakpoints(), &[q(1)]);
        assert_eq!(f.slopes(), &[q(1), q(2)]);
        assert_eq!(f.anchor(), (q(1), q(1)));
    }

    #[test]
    fn normalize_keeps_canonical_linear() {
        let f = pwl(&[], &[3], (0, 5));
        assert!(f.is_linear());
        assert_eq!(f.slopes(), &[q(3)]);
        assert_eq!(f.anchor(), (q(0), q(5)));
    }

    #[test]
    fn normalize_plateau_against_oracle() {
        let raw_b = [0, 2, 5];
        let raw_s = [2, 0, 0, -1];
        let f = pwl(&raw_b, &raw_s, (0, 0));
        assert_eq!(f.breakpoints(), &[q(0), q(5)]);
        assert_eq!(f.slopes(), &[q(2), q(0), q(-1)]);
        assert_eq!(f.anchor(), (q(0), q(0)));
        for x in [-3, -1, 0, 1, 2, 3, 5, 7] {
            assert_eq!(f.eval(&q(x)), oracle_eval(&raw_b, &raw_s, (0, 0), &q(x)));
        }
        assert_eq!(f.eval(&fr(7, 2)), oracle_eval(&raw_b, &raw_s, (0, 0), &fr(7, 2)));
    }

    #[test]
    fn anchor_away_from_first_breakpoint() {
        let f = pwl(&[1, 2], &[2, 1, 0], (5, 3));
        assert_eq!(f.eval(&q(5)), q(3));
        assert_eq!(f.eval(&q(1)), q(2));
        assert_eq!(f.eval(&q(-1)), q(-2));
    }

    #[test]
    fn normalize_errors() {
        let e = PwlFunction::new(vec![q(1), q(1)], vec![q(0), q(1), q(2)], (q(0), q(0)));
        assert_eq!(e, Err(Error::UnsortedBreakpoints { index: 1 }));
        let e = PwlFunction::new(vec![q(1)], vec![q(0)], (q(0), q(0)));
        assert!(matches!(e, Err(Error::SlopeCountMismatch { .. })));
    }

    #[test]
    fn eval_examples() {
        // min{x+1, -x+1}
        let g = pwl(&[0], &[1, -1], (0, 1));
        assert_eq!(g.eval(&q(0)), q(1));
        assert_eq!(g.eval(&q(2)), q(-1));
        // min{2x, x+1, 3} at 3/2
        let f = pwl(&[1, 2], &[2, 1, 0], (1, 2));
        assert_eq!(f.eval(&fr(3, 2)), fr(5, 2));
    }

    #[test]
    fn affine_maps() {
        let f = pwl(&[1, 2], &[2, 1, 0], (1, 2));
        let g = f.pre_affine(&q(-2), &q(1));
        for x in [-2, -1, 0, 1, 2] {
            assert_eq!(g.eval(&q(x)), f.eval(&(q(-2) * q(x) + q(1))));
        }
        let h = f.post_affine(&fr(1, 3), &q(4));
        assert_eq!(h.eval(&q(7)), f.eval(&q(7)) / q(3) + q(4));
        assert_eq!(f.post_affine(&q(0), &q(9)), PwlFunction::constant(q(9)));
    }

    #[test]
    fn one_sided_slopes() {
        let f = pwl(&[1, 2], &[2, 1, 0], (1, 2));
        assert_eq!(f.slope_left_of(&q(1)), &q(2));
        assert_eq!(f.slope_right_of(&q(1)), &q(1));
        assert_eq!(f.slope_right_of(&q(9)), &q(0));
    }

    #[test]
    fn probe_grid() {
        let pts = probe_points(&[q(0), q(2)]);
        assert_eq!(pts, vec![q(-1), q(0), q(1), q(2), q(3)]);
    }
}
