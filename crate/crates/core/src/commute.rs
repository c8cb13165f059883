//! Commuting pairs of increasing functions: fixed-point sets, exact
//! commutation tests and certificates of the form `f = h^k, g = h^m` or
//! `f, g` linear about a common fixed point.

use crate::error::{precondition, Error, Result};
use crate::interval::{Extended, Interval};
use crate::pwl::PwlFunction;
use crate::scalar::{gcd, Scalar};

/// `f . g == g . f`, compared as canonical forms.
pub fn commutes<T: Scalar>(f: &PwlFunction<T>, g: &PwlFunction<T>) -> bool {
    f.compose(g) == g.compose(f)
}

/// Sorted, disjoint, maximal closed intervals on which `f(x) = x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointSet<T> {
    intervals: Vec<Interval<T>>,
}

impl<T: Scalar> FixedPointSet<T> {
    pub fn intervals(&self) -> &[Interval<T>] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: &T) -> bool {
        self.intervals.iter().any(|i| i.contains(x))
    }

    /// Finite interval endpoints, in increasing order.
    pub fn endpoints(&self) -> Vec<T> {
        let mut out = Vec::new();
        for i in &self.intervals {
            for e in [i.lo(), i.hi()] {
                if let Extended::Finite(x) = e {
                    if out.last() != Some(x) {
                        out.push(x.clone());
                    }
                }
            }
        }
        out
    }
}

pub fn fixed_points<T: Scalar>(f: &PwlFunction<T>) -> FixedPointSet<T> {
    let b = f.breakpoints();
    let mut raw: Vec<(Extended<T>, Extended<T>)> = Vec::new();
    for (e, s) in f.slopes().iter().enumerate() {
        let lo = if e == 0 { Extended::NegInf } else { Extended::Finite(b[e - 1].clone()) };
        let hi = if e == b.len() { Extended::PosInf } else { Extended::Finite(b[e].clone()) };
        // a point on this piece
        let p = match (&lo, &hi) {
            (Extended::Finite(x), _) | (_, Extended::Finite(x)) => x.clone(),
            _ => T::zero(),
        };
        let fp = f.eval(&p);
        if s.is_one() {
            if fp == p {
                raw.push((lo, hi));
            }
            continue;
        }
        let x = (s.clone() * p - fp) / (s.clone() - T::one());
        let xe = Extended::Finite(x.clone());
        if lo <= xe && xe <= hi {
            raw.push((xe.clone(), xe));
        }
    }
    let mut merged: Vec<(Extended<T>, Extended<T>)> = Vec::new();
    for (lo, hi) in raw {
        match merged.last_mut() {
            Some(last) if last.1 >= lo => {
                if hi > last.1 {
                    last.1 = hi;
                }
            }
            _ => merged.push((lo, hi)),
        }
    }
    let intervals = merged
        .into_iter()
        .map(|(lo, hi)| Interval::new(lo, hi).expect("ordered by construction"))
        .collect();
    FixedPointSet { intervals }
}

/// Certificate for one side of the common fixed point `x0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SideWitness<T> {
    /// `f = h^k` and `g = h^m` on the side.
    SharedRoot { h: PwlFunction<T>, k: u32, m: u32 },
    /// `f = a(x - x0) + x0` and `g = b(x - x0) + x0` on the side.
    LinearPair { a: T, b: T },
    /// Both functions are the identity on the side.
    IdentitySide,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommutationWitness<T> {
    /// No finite common fixed point: `f = x + c1`, `g = x + c2`.
    Translation { c1: T, c2: T },
    Sides {
        x0: T,
        left: SideWitness<T>,
        right: SideWitness<T>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessOutcome<T> {
    Witness(CommutationWitness<T>),
    /// The pair does not commute (`first_disagreement` is the leftmost probe
    /// point where `f . g` and `g . f` differ), or no certificate was found.
    NoWitness {
        first_disagreement: Option<T>,
        reason: String,
    },
}

impl<T: Scalar> CommutationWitness<T> {
    /// Rebuilds `f` and `g` from the certificate and compares exactly on each side.
    pub fn verify(&self, f: &PwlFunction<T>, g: &PwlFunction<T>) -> bool {
        match self {
            CommutationWitness::Translation { c1, c2 } => {
                *f == PwlFunction::linear(T::one(), c1.clone()) && *g == PwlFunction::linear(T::one(), c2.clone())
            }
            CommutationWitness::Sides { x0, left, right } => {
                if f.eval(x0) != *x0 || g.eval(x0) != *x0 {
                    return false;
                }
                side_holds(f, g, x0, left, &Interval::up_to(x0.clone()))
                    && side_holds(f, g, x0, right, &Interval::from(x0.clone()))
            }
        }
    }
}

fn about<T: Scalar>(slope: &T, x0: &T) -> PwlFunction<T> {
    PwlFunction::linear(slope.clone(), x0.clone() * (T::one() - slope.clone()))
}

fn side_holds<T: Scalar>(
    f: &PwlFunction<T>,
    g: &PwlFunction<T>,
    x0: &T,
    w: &SideWitness<T>,
    side: &Interval<T>,
) -> bool {
    match w {
        SideWitness::SharedRoot { h, k, m } => {
            h.iterate(*k as usize).equals_on_interval(f, side) && h.iterate(*m as usize).equals_on_interval(g, side)
        }
        SideWitness::LinearPair { a, b } => {
            about(a, x0).equals_on_interval(f, side) && about(b, x0).equals_on_interval(g, side)
        }
        SideWitness::IdentitySide => {
            let id = PwlFunction::identity();
            id.equals_on_interval(f, side) && id.equals_on_interval(g, side)
        }
    }
}

/// Smallest `(r, s)` (by `r + s`, then `r`) with `1 <= r, s <= max_exponent`
/// and `g^s = f^r` on `interval`. Both functions must map the interval into itself.
pub fn find_power_relation<T: Scalar>(
    f: &PwlFunction<T>,
    g: &PwlFunction<T>,
    interval: &Interval<T>,
    max_exponent: u32,
) -> Option<(u32, u32)> {
    let n = max_exponent as usize;
    let mut fp = vec![PwlFunction::identity()];
    let mut gp = vec![PwlFunction::identity()];
    for i in 1..=n {
        fp.push(f.compose(&fp[i - 1]));
        gp.push(g.compose(&gp[i - 1]));
    }
    for total in 2..=2 * n {
        for r in 1..total {
            let s = total - r;
            if r > n || s > n {
                continue;
            }
            if gp[s].equals_on_interval(&fp[r], interval) {
                return Some((r as u32, s as u32));
            }
        }
    }
    None
}

fn is_polynomial_without_free_term<T: Scalar>(f: &PwlFunction<T>) -> bool {
    let s = f.slopes();
    s.iter().all(|x| x.is_integer()) && s.windows(2).all(|w| w[0] > w[1]) && s.last().is_some_and(|x| *x >= T::one())
}

fn bit_len<T: Scalar>(x: &T) -> u32 {
    let floor = |v: &T| {
        let (p, q) = (v.numer_part(), v.denom_part());
        (p.clone() - p % q.clone()) / q
    };
    let mut v = floor(&x.abs());
    let mut n = 0;
    while v >= T::one() {
        v = floor(&v.half());
        n += 1;
    }
    n
}

fn roots_inside<T: Scalar>(f: &PwlFunction<T>, g: &PwlFunction<T>, side: &Interval<T>) -> usize {
    let mut r: Vec<&T> = f
        .roots()
        .iter()
        .chain(g.roots())
        .filter(|x| side.contains_interior(x))
        .collect();
    r.sort();
    r.dedup();
    r.len()
}

fn side_witness<T: Scalar>(
    f: &PwlFunction<T>,
    g: &PwlFunction<T>,
    x0: &T,
    side: &Interval<T>,
) -> Result<Option<SideWitness<T>>> {
    let id = PwlFunction::identity();
    let f_id = id.equals_on_interval(f, side);
    let g_id = id.equals_on_interval(g, side);
    match (f_id, g_id) {
        (true, true) => return Ok(Some(SideWitness::IdentitySide)),
        (true, false) => {
            return Ok(Some(SideWitness::SharedRoot {
                h: g.clone(),
                k: 0,
                m: 1,
            }))
        }
        (false, true) => {
            return Ok(Some(SideWitness::SharedRoot {
                h: f.clone(),
                k: 1,
                m: 0,
            }))
        }
        _ => {}
    }
    let nodes = roots_inside(f, g, side);
    // a cycle in the root graph has at most `nodes` arrows; without roots the
    // relation a^r = b^s between the two slopes bounds the exponents instead
    let probe = match side.lo() {
        Extended::NegInf => x0.clone() - T::one(),
        _ => x0.clone() + T::one(),
    };
    let (sf, sg) = (f.slope_left_of(&probe).clone(), g.slope_left_of(&probe).clone());
    let bound = if nodes > 0 {
        nodes as u32 + 1
    } else {
        bit_len(&sf).max(bit_len(&sg)) + 1
    };
    if let Some((r, s)) = find_power_relation(f, g, side, bound) {
        let n = gcd(&T::from_int(r as i64), &T::from_int(s as i64)).to_i64().unwrap_or(1) as u32;
        let (rr, ss) = (r / n, s / n);
        // 1 = j*rr - i*ss with j >= 1, i >= 0
        let j = (1..=ss.max(1)).find(|j| (j * rr - 1) % ss == 0).unwrap_or(1);
        let i = (j * rr - 1) / ss;
        let f_inv = f.inverse()?;
        let h = g.iterate(j as usize).compose(&f_inv.iterate(i as usize));
        let w = SideWitness::SharedRoot { h, k: ss, m: rr };
        if !side_holds(f, g, x0, &w, side) {
            return Err(Error::Verification("power relation did not yield a shared root".into()));
        }
        return Ok(Some(w));
    }
    if nodes == 0 {
        return Ok(Some(SideWitness::LinearPair { a: sf, b: sg }));
    }
    Ok(None)
}

/// Certificate that two tropical polynomials without free term commute.
pub fn commuting_witness<T: Scalar>(f: &PwlFunction<T>, g: &PwlFunction<T>) -> Result<WitnessOutcome<T>> {
    if !is_polynomial_without_free_term(f) || !is_polynomial_without_free_term(g) {
        return precondition("inputs must be tropical polynomials without free term");
    }
    let fg = f.compose(g);
    let gf = g.compose(f);
    if fg != gf {
        return Ok(WitnessOutcome::NoWitness {
            first_disagreement: fg.first_difference(&gf),
            reason: "f and g do not commute".into(),
        });
    }
    if f.is_linear() && f.slopes()[0].is_one() && g.is_linear() && g.slopes()[0].is_one() {
        let w = CommutationWitness::Translation {
            c1: f.eval(&T::zero()),
            c2: g.eval(&T::zero()),
        };
        return Ok(WitnessOutcome::Witness(w));
    }
    let pivot = if f.is_identity() { g } else { f };
    let fixed = fixed_points(pivot);
    let x0 = match fixed.intervals().first().map(|i| i.lo().clone()) {
        Some(Extended::Finite(x)) => x,
        _ => {
            return Ok(WitnessOutcome::NoWitness {
                first_disagreement: None,
                reason: "no finite common fixed point".into(),
            })
        }
    };
    if f.eval(&x0) != x0 || g.eval(&x0) != x0 {
        return Ok(WitnessOutcome::NoWitness {
            first_disagreement: None,
            reason: "fixed point is not shared".into(),
        });
    }
    let left = side_witness(f, g, &x0, &Interval::up_to(x0.clone()))?;
    let right = side_witness(f, g, &x0, &Interval::from(x0.clone()))?;
    match (left, right) {
        (Some(left), Some(right)) => Ok(WitnessOutcome::Witness(CommutationWitness::Sides { x0, left, right })),
        _ => Ok(WitnessOutcome::NoWitness {
            first_disagreement: None,
            reason: "no power relation within the search bound".into(),
        }),
    }
}

/// A commuting pair of increasing integer-slope functions fixing `0`:
/// `g` has slopes `(a, b, a)` with roots `(alpha t, alpha a t)`, `f` has slopes
/// `(alpha, b alpha / a, alpha)` with roots `(a t, alpha a t)`; both are
/// linear through `0` on the negative half-line. Returns `(f, g)`.
pub fn build_example_pair<T: Scalar>(t: &T, alpha: i64, a: i64, b: i64) -> Result<(PwlFunction<T>, PwlFunction<T>)> {
    if !t.is_positive() {
        return precondition("t must be positive");
    }
    if !(a > alpha && alpha > 1) {
        return precondition("need a > alpha > 1");
    }
    if b < 1 || a == b {
        return precondition("need b >= 1 and a != b");
    }
    if (b * alpha) % a != 0 {
        return precondition("a must divide b * alpha");
    }
    let (al, aa, bb) = (T::from_int(alpha), T::from_int(a), T::from_int(b));
    let u = al.clone() * t.clone();
    let v = aa.clone() * t.clone();
    let w = al.clone() * aa.clone() * t.clone();
    let g = PwlFunction::new(
        vec![u, w.clone()],
        vec![aa.clone(), bb.clone(), aa.clone()],
        (T::zero(), T::zero()),
    )?;
    let f = PwlFunction::new(
        vec![v, w],
        vec![al.clone(), bb * al.clone() / aa, al],
        (T::zero(), T::zero()),
    )?;
    Ok((f, g))
}
