use super::PwlFunction;
use crate::error::{Error, Result};
use crate::interval::{Extended, Interval};
use crate::scalar::Scalar;

/// Sorted union of two strictly increasing lists, without duplicates.
fn merge_sorted<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl<T: Scalar> PwlFunction<T> {
    /// Pointwise `f + g`.
    pub fn add(&self, other: &Self) -> Self {
        self.combine_linear(other, |a, b| a + b)
    }

    /// Pointwise `f - g`.
    pub fn sub(&self, other: &Self) -> Self {
        self.combine_linear(other, |a, b| a - b)
    }

    // `op` must be additive so that slopes combine like values.
    fn combine_linear(&self, other: &Self, op: impl Fn(T, T) -> T) -> Self {
        let xs = merge_sorted(&self.breaks, &other.breaks);
        let left = op(self.slopes[0].clone(), other.slopes[0].clone());
        let right = op(self.last_slope().clone(), other.last_slope().clone());
        if xs.is_empty() {
            let c = op(self.anchor_value.clone(), other.anchor_value.clone());
            return Self::linear(left, c);
        }
        let vs = xs.iter().map(|x| op(self.eval(x), other.eval(x))).collect();
        Self::from_vertices(xs, vs, left, right)
    }

    /// Points where `self - other` changes sign strictly inside one of its pieces.
    fn crossings(&self, other: &Self) -> Vec<T> {
        let d = self.sub(other);
        let mut out = Vec::new();
        let n = d.breaks.len();
        for piece in 0..=n {
            let s = &d.slopes[piece];
            if s.is_zero() {
                continue;
            }
            // reference point on this piece
            let (rx, rv) = if d.breaks.is_empty() {
                (T::zero(), d.anchor_value.clone())
            } else if piece == 0 {
                (d.breaks[0].clone(), d.values[0].clone())
            } else {
                (d.breaks[piece - 1].clone(), d.values[piece - 1].clone())
            };
            let z = rx - rv / s.clone();
            let above_lo = piece == 0 || z > d.breaks[piece - 1];
            let below_hi = piece == n || z < d.breaks[piece];
            if above_lo && below_hi {
                out.push(z);
            }
        }
        out
    }

    /// Pointwise minimum (tropical sum).
    pub fn tropical_min(&self, other: &Self) -> Self {
        self.envelope(other, |a, b| a <= b)
    }

    /// Pointwise maximum.
    pub fn tropical_max(&self, other: &Self) -> Self {
        self.envelope(other, |a, b| a >= b)
    }

    // `prefer_self(a, b)` is true when value `a` of self should win over `b`.
    fn envelope(&self, other: &Self, prefer_self: impl Fn(&T, &T) -> bool) -> Self {
        let xs = merge_sorted(&merge_sorted(&self.breaks, &other.breaks), &{
            let mut c = self.crossings(other);
            c.sort();
            c
        });
        if xs.is_empty() {
            // both linear and parallel
            let a = self.eval(&T::zero());
            let b = other.eval(&T::zero());
            return if prefer_self(&a, &b) {
                self.clone()
            } else {
                other.clone()
            };
        }
        let pick_tail = |x: T| {
            let a = self.eval(&x);
            let b = other.eval(&x);
            prefer_self(&a, &b)
        };
        let first = xs[0].clone();
        let last = xs[xs.len() - 1].clone();
        let left = if pick_tail(first - T::one()) {
            self.slopes[0].clone()
        } else {
            other.slopes[0].clone()
        };
        let right = if pick_tail(last + T::one()) {
            self.last_slope().clone()
        } else {
            other.last_slope().clone()
        };
        let vs = xs
            .iter()
            .map(|x| {
                let a = self.eval(x);
                let b = other.eval(x);
                if prefer_self(&a, &b) {
                    a
                } else {
                    b
                }
            })
            .collect();
        Self::from_vertices(xs, vs, left, right)
    }

    /// `self ∘ inner`, i.e. `x -> self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        let outer = self;
        let h = inner;
        let n = h.breaks.len();
        let mut xs: Vec<T> = Vec::with_capacity(n + outer.breaks.len());
        let mut vs: Vec<T> = Vec::with_capacity(n + outer.breaks.len());

        for piece in 0..=n {
            let t = &h.slopes[piece];
            let lo = (piece > 0).then(|| (&h.breaks[piece - 1], &h.values[piece - 1]));
            let hi = (piece < n).then(|| (&h.breaks[piece], &h.values[piece]));
            if !t.is_zero() {
                // image of the open piece, as an open range of outer's domain
                let (ref_x, ref_v) = match (lo, hi) {
                    (Some(p), _) | (None, Some(p)) => (p.0.clone(), p.1.clone()),
                    (None, None) => (T::zero(), h.anchor_value.clone()),
                };
                let lo_img = lo.map(|p| p.1.clone());
                let hi_img = hi.map(|p| p.1.clone());
                let (img_lo, img_hi) = if t.is_positive() {
                    (lo_img, hi_img)
                } else {
                    (hi_img, lo_img)
                };
                let start = match &img_lo {
                    Some(y) => outer.breaks.partition_point(|b| b <= y),
                    None => 0,
                };
                let end = match &img_hi {
                    Some(y) => outer.breaks.partition_point(|b| b < y),
                    None => outer.breaks.len(),
                };
                if start < end {
                    let mut pre: Vec<(T, T)> = (start..end)
                        .map(|j| {
                            let y = &outer.breaks[j];
                            let x = ref_x.clone() + (y.clone() - ref_v.clone()) / t.clone();
                            (x, outer.values[j].clone())
                        })
                        .collect();
                    if t.is_negative() {
                        pre.reverse();
                    }
                    for (x, v) in pre {
                        xs.push(x);
                        vs.push(v);
                    }
                }
            }
            if let Some((bx, bv)) = hi {
                xs.push(bx.clone());
                vs.push(outer.eval(bv));
            }
        }

        let tail_slope = |t: &T, toward_plus: bool| -> T {
            // toward_plus: the inner image runs to +inf on this tail
            if t.is_zero() {
                T::zero()
            } else if toward_plus {
                t.clone() * outer.last_slope().clone()
            } else {
                t.clone() * outer.slopes[0].clone()
            }
        };
        let t0 = &h.slopes[0];
        let tn = h.last_slope();
        let left = tail_slope(t0, t0.is_negative());
        let right = tail_slope(tn, tn.is_positive());

        if xs.is_empty() {
            let c = outer.eval(&h.eval(&T::zero()));
            return Self::linear(left, c);
        }
        Self::from_vertices(xs, vs, left, right)
    }

    /// `k`-fold self-composition; `iterate(0)` is the identity.
    pub fn iterate(&self, k: usize) -> Self {
        let mut acc = Self::identity();
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    /// Compositional inverse of a strictly increasing function.
    pub fn inverse(&self) -> Result<Self> {
        if self.slopes.iter().any(|s| !s.is_positive()) {
            return Err(Error::NotStrictlyIncreasing);
        }
        let recip = |s: &T| T::one() / s.clone();
        if self.is_linear() {
            let s = &self.slopes[0];
            return Ok(Self::linear(recip(s), -self.anchor_value.clone() / s.clone()));
        }
        Ok(Self::from_vertices(
            self.values.clone(),
            self.breaks.clone(),
            recip(&self.slopes[0]),
            recip(self.last_slope()),
        ))
    }

    /// Structural equality of canonical forms (equivalently, pointwise equality).
    pub fn equals(&self, other: &Self) -> bool {
        self == other
    }

    /// Whether the two functions agree at every point of `interval`.
    pub fn equals_on_interval(&self, other: &Self, interval: &Interval<T>) -> bool {
        let (lo, hi) = (interval.lo(), interval.hi());
        if matches!((lo, hi), (Extended::NegInf, Extended::PosInf)) {
            return self == other;
        }
        let mut pts: Vec<T> = merge_sorted(&self.breaks, &other.breaks)
            .into_iter()
            .filter(|x| interval.contains_interior(x))
            .collect();
        if let Extended::Finite(l) = lo {
            pts.insert(0, l.clone());
        }
        if let Extended::Finite(h) = hi {
            if pts.last() != Some(h) {
                pts.push(h.clone());
            }
        }
        if pts.iter().any(|x| self.eval(x) != other.eval(x)) {
            return false;
        }
        if matches!(lo, Extended::NegInf) && self.slope_left_of(&pts[0]) != other.slope_left_of(&pts[0]) {
            return false;
        }
        if matches!(hi, Extended::PosInf) {
            let last = pts.last().unwrap();
            if self.slope_right_of(last) != other.slope_right_of(last) {
                return false;
            }
        }
        true
    }

    /// Supremum and infimum of the function over `interval`.
    pub fn range_on(&self, interval: &Interval<T>) -> (Extended<T>, Extended<T>) {
        let mut pts: Vec<T> = self.breaks.iter().filter(|x| interval.contains_interior(x)).cloned().collect();
        if let Extended::Finite(l) = interval.lo() {
            pts.push(l.clone());
        }
        if let Extended::Finite(h) = interval.hi() {
            pts.push(h.clone());
        }
        let mut sup = pts.iter().map(|x| self.eval(x)).max().map(Extended::Finite);
        let mut inf = pts.iter().map(|x| self.eval(x)).min().map(Extended::Finite);
        let mut widen = |slope: &T, toward_minus: bool| {
            // direction in which values run off along an unbounded end
            let up = if toward_minus { slope.is_negative() } else { slope.is_positive() };
            let down = if toward_minus { slope.is_positive() } else { slope.is_negative() };
            if up {
                sup = Some(Extended::PosInf);
            }
            if down {
                inf = Some(Extended::NegInf);
            }
        };
        if matches!(interval.lo(), Extended::NegInf) {
            widen(&self.slopes[0], true);
        }
        if matches!(interval.hi(), Extended::PosInf) {
            widen(self.last_slope(), false);
        }
        match (sup, inf) {
            (Some(s), Some(i)) => (s, i),
            // whole line, linear and flat
            _ => {
                let c = Extended::Finite(self.anchor_value.clone());
                (c.clone(), c)
            }
        }
    }

    /// Leftmost point where the two functions differ, if any.
    ///
    /// When they differ only along the left tail the reported point is one
    /// unit left of the first breakpoint of either function.
    pub fn first_difference(&self, other: &Self) -> Option<T> {
        if self == other {
            return None;
        }
        let xs = merge_sorted(&self.breaks, &other.breaks);
        let probes = super::probe_points(&xs);
        probes.into_iter().find(|x| self.eval(x) != other.eval(x))
    }
}

/// Composes `fs[0] ∘ fs[1] ∘ ... ∘ fs[n-1]` (last element innermost),
/// pairing neighbours in a balanced tree. The empty product is the identity.
pub fn compose_all<T: Scalar>(fs: &[PwlFunction<T>]) -> PwlFunction<T> {
    match fs.len() {
        0 => PwlFunction::identity(),
        1 => fs[0].clone(),
        n => {
            let mid = n / 2;
            compose_all(&fs[..mid]).compose(&compose_all(&fs[mid..]))
        }
    }
}
