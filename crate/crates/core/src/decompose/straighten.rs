use super::{first_nonzero_slope, remap_regions, Composant, ComposantKind, Decomposition, Stage};
use crate::error::{precondition, Error, Result};
use crate::interval::{Extended, Interval};
use crate::pwl::PwlFunction;
use crate::scalar::Scalar;

/// Order in which roots are removed by the binomial decomposers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RootOrder {
    #[default]
    LeftToRight,
    RightToLeft,
}

/// Removes the root with index `root_index` (0-based, left to right):
/// returns `(g, h)` with `f = g . h`, `h` equal to `f` on one side of the root
/// and rescaled on the other, `g` a binomial that undoes the rescaling.
pub fn straighten<T: Scalar>(f: &PwlFunction<T>, root_index: usize) -> Result<(PwlFunction<T>, PwlFunction<T>)> {
    if root_index >= f.num_roots() {
        return precondition(format!("no root with index {root_index} ({} roots)", f.num_roots()));
    }
    let l = root_index;
    let x = f.breakpoints()[l].clone();
    let c = f.breakpoint_values()[l].clone();
    let a = f.slopes()[l].clone();
    let b = f.slopes()[l + 1].clone();
    if a.is_zero() || b.is_zero() {
        return precondition("an edge next to the root has zero slope");
    }
    if a.is_positive() != b.is_positive() {
        return precondition("slopes next to the root have opposite signs");
    }
    let c_ext = Extended::Finite(c.clone());
    let (left_sup, left_inf) = f.range_on(&Interval::up_to(x.clone()));
    let (right_sup, right_inf) = f.range_on(&Interval::from(x));
    let separated = if a.is_positive() {
        left_sup <= c_ext && right_inf >= c_ext
    } else {
        left_inf >= c_ext && right_sup <= c_ext
    };
    if !separated {
        return precondition("values on the two sides of the root overlap");
    }

    let r = a / b;
    let h = remap_regions(
        f,
        &[l],
        &[(T::one(), T::zero()), (r.clone(), c.clone() * (T::one() - r.clone()))],
    );
    let inv = T::one() / r;
    let g = if inv_side_right(&f.slopes()[l]) {
        PwlFunction::from_vertices(vec![c.clone()], vec![c], T::one(), inv)
    } else {
        PwlFunction::from_vertices(vec![c.clone()], vec![c], inv, T::one())
    };
    Ok((g, h))
}

// increasing functions keep the identity below f(x_l), decreasing ones above
fn inv_side_right<T: Scalar>(left_slope: &T) -> bool {
    left_slope.is_positive()
}

fn binomial_chain<T: Scalar>(
    f: &PwlFunction<T>,
    order: RootOrder,
    kind: ComposantKind,
) -> Result<Decomposition<T>> {
    if f.is_linear() {
        let d = Decomposition::new(vec![Composant::new(f.clone(), ComposantKind::Linear, Stage::Monotone)]);
        return Ok(d);
    }
    let mut steps = 0u64;
    let mut comps = Vec::with_capacity(f.num_roots());
    let mut cur = f.clone();
    while cur.num_roots() > 1 {
        let idx = match order {
            RootOrder::LeftToRight => 0,
            RootOrder::RightToLeft => cur.num_roots() - 1,
        };
        let before = cur.num_roots();
        steps += cur.num_edges() as u64;
        let (g, h) = straighten(&cur, idx)?;
        if h.num_roots() + 1 != before {
            return Err(Error::Verification("straightening did not remove exactly one root".into()));
        }
        comps.push(Composant::new(g, kind, Stage::Monotone));
        cur = h;
    }
    comps.push(Composant::new(cur, kind, Stage::Monotone));
    for c in &comps {
        if !c.kind.holds_for(&c.function) {
            return Err(Error::Verification(format!("composant is not a {}", c.kind.name())));
        }
    }
    Ok(Decomposition::new(comps).with_meta(false, steps))
}

/// Splits a min of linear functions with nonnegative rational slopes into one
/// min-type binomial per root. A linear input yields a single linear composant.
pub fn decompose_algebraic_polynomial<T: Scalar>(f: &PwlFunction<T>) -> Result<Decomposition<T>> {
    if !f.classify().is_tropical_algebraic() {
        return precondition("slopes must be strictly decreasing and nonnegative");
    }
    binomial_chain(f, RootOrder::LeftToRight, ComposantKind::AlgebraicBinomial)
}

/// Splits a strictly increasing function into one increasing binomial per root.
pub fn decompose_monotone_algebraic<T: Scalar>(f: &PwlFunction<T>) -> Result<Decomposition<T>> {
    decompose_monotone_algebraic_ordered(f, RootOrder::LeftToRight)
}

pub fn decompose_monotone_algebraic_ordered<T: Scalar>(
    f: &PwlFunction<T>,
    order: RootOrder,
) -> Result<Decomposition<T>> {
    if !f.slopes().iter().all(|s| s.is_positive()) {
        return precondition("all slopes must be positive");
    }
    binomial_chain(f, order, ComposantKind::MonotoneRationalBinomial)
}

/// How the outer stage rescales the pieces next to the pivot roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum OuterSlopes {
    /// Match slopes exactly so the pivot roots disappear.
    Rational,
    /// Only reflections and shifts, so every outer composant has slopes `+-1`.
    Unit,
}

/// Removes negative blocks one or two at a time. Returns the outer composants
/// (outermost first) and the non-decreasing remainder.
pub(crate) fn outer_stage<T: Scalar>(
    f: &PwlFunction<T>,
    mode: OuterSlopes,
    steps: &mut u64,
) -> Result<(Vec<Composant<T>>, PwlFunction<T>)> {
    let mut comps = Vec::new();
    let mut cur = f.clone();
    while let Some(last_neg) = cur.slopes().iter().rposition(|s| s.is_negative()) {
        *steps += cur.num_edges() as u64;
        let vals = cur.breakpoint_values();
        let slopes = cur.slopes();
        // roots with a negative edge somewhere to their right
        let i0 = (0..last_neg)
            .max_by(|&i, &j| vals[i].cmp(&vals[j]).then(j.cmp(&i)))
            .ok_or_else(|| Error::Precondition("first nonzero slope must be positive".into()))?;
        let x0 = cur.breakpoints()[i0].clone();
        let c0 = vals[i0].clone();
        let blocks_before = cur.blocks().len();
        let two_c0 = T::two() * c0.clone();

        let (sup_right, _) = cur.range_on(&Interval::from(x0));
        let (g, h, kind) = if sup_right <= Extended::Finite(c0.clone()) {
            let (s0, s1) = (&slopes[i0], &slopes[i0 + 1]);
            let (ratio, map) = if mode == OuterSlopes::Rational && !s0.is_zero() && !s1.is_zero() {
                let rho = s1.clone() / s0.clone();
                let inv = T::one() / rho.clone();
                let shift = c0.clone() * (T::one() - inv.clone());
                (rho, (inv, shift))
            } else {
                (-T::one(), (-T::one(), two_c0.clone()))
            };
            let g = PwlFunction::from_vertices(vec![c0.clone()], vec![c0.clone()], T::one(), ratio);
            let h = remap_regions(&cur, &[i0], &[(T::one(), T::zero()), map]);
            (g, h, ComposantKind::NonMonotoneRationalBinomial)
        } else {
            let i1 = (i0 + 1..cur.num_roots())
                .min_by(|&i, &j| vals[i].cmp(&vals[j]).then(i.cmp(&j)))
                .ok_or_else(|| Error::Verification("no root to the right of the pivot".into()))?;
            let c1 = vals[i1].clone();
            let top = two_c0.clone() - c1.clone();

            let (sp, sm) = (&slopes[i0], &slopes[i0 + 1]);
            let (left_map, g_left) = if mode == OuterSlopes::Rational && !sp.is_zero() && !sm.is_zero() {
                let lambda = -(sm.clone() / sp.clone());
                let shift = c0.clone() * (T::one() - lambda.clone());
                let g_slope = T::one() / lambda.clone();
                ((lambda, shift), g_slope)
            } else {
                ((T::one(), T::zero()), T::one())
            };
            let (tm, tp) = (&slopes[i1], &slopes[i1 + 1]);
            let (right_map, g_right) = if mode == OuterSlopes::Rational && !tm.is_zero() && !tp.is_zero() {
                let mu = -(tm.clone() / tp.clone());
                let shift = top.clone() - mu.clone() * c1.clone();
                let g_slope = T::one() / mu.clone();
                ((mu, shift), g_slope)
            } else {
                ((T::one(), two_c0.clone() - T::two() * c1.clone()), T::one())
            };
            let g = PwlFunction::from_vertices(vec![c0.clone(), top], vec![c0.clone(), c1], g_left, g_right);
            let h = remap_regions(&cur, &[i0, i1], &[left_map, (-T::one(), two_c0), right_map]);
            (g, h, ComposantKind::RegularTrinomial)
        };

        let dropped = match kind {
            ComposantKind::RegularTrinomial => 2,
            _ => 1,
        };
        if h.blocks().len() + dropped != blocks_before {
            return Err(Error::Verification("outer step did not remove the expected blocks".into()));
        }
        if !kind.holds_for(&g) {
            return Err(Error::Verification(format!("outer composant is not a {}", kind.name())));
        }
        comps.push(Composant::new(g, kind, Stage::Outer));
        cur = h;
    }
    Ok((comps, cur))
}

/// Straightens every non-extremal root of a non-decreasing function.
fn monotone_stage<T: Scalar>(f: &PwlFunction<T>, steps: &mut u64) -> Result<(Vec<Composant<T>>, PwlFunction<T>)> {
    let mut comps = Vec::new();
    let mut cur = f.clone();
    while let Some(i) = cur
        .slopes()
        .windows(2)
        .position(|w| w[0].is_positive() && w[1].is_positive())
    {
        *steps += cur.num_edges() as u64;
        let (g, h) = straighten(&cur, i)?;
        comps.push(Composant::new(g, ComposantKind::MonotoneRationalBinomial, Stage::Monotone));
        cur = h;
    }
    Ok((comps, cur))
}

/// How a singular step re-attaches the part of the function right of a plateau.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SingularScaling {
    /// Rescale so the remainder keeps the slope left of the plateau.
    Scaled,
    /// Translate only, keeping integer slopes.
    Shift,
}

/// Peels off zero-slope edges of a non-decreasing function, leftmost first.
/// Returns the singular composants innermost first and the remainder `r` with
/// `f = r . s_k . ... . s_1`.
pub(crate) fn singular_stage<T: Scalar>(
    f: &PwlFunction<T>,
    scaling: SingularScaling,
    steps: &mut u64,
) -> (Vec<Composant<T>>, PwlFunction<T>) {
    let mut out = Vec::new();
    let mut cur = f.clone();
    while let Some(e) = cur.slopes().iter().position(|s| s.is_zero()) {
        *steps += cur.num_edges() as u64;
        let last = cur.num_edges() - 1;
        let (g1, rest) = if cur.is_linear() {
            (cur.clone(), PwlFunction::identity())
        } else if e == 0 {
            // plateau from -inf up to x1
            let x1 = cur.breakpoints()[0].clone();
            let g1 = PwlFunction::from_vertices(vec![x1.clone()], vec![x1], T::zero(), T::one());
            let mut slopes = cur.slopes().to_vec();
            slopes[0] = slopes[1].clone();
            let rest = PwlFunction::canonical(cur.breakpoints().to_vec(), slopes, cur.breakpoint_values().to_vec());
            (g1, rest)
        } else if e == last {
            let x0 = cur.breakpoints()[e - 1].clone();
            let g1 = PwlFunction::from_vertices(vec![x0.clone()], vec![x0], T::one(), T::zero());
            let mut slopes = cur.slopes().to_vec();
            slopes[e] = slopes[e - 1].clone();
            let rest = PwlFunction::canonical(cur.breakpoints().to_vec(), slopes, cur.breakpoint_values().to_vec());
            (g1, rest)
        } else {
            let b = cur.breakpoints();
            let (x0, x1) = (b[e - 1].clone(), b[e].clone());
            let s = cur.slopes()[e - 1].clone();
            let p = cur.slopes()[e + 1].clone();
            let (stretch, right_slope) = match scaling {
                SingularScaling::Scaled => (p.clone() / s.clone(), p / s),
                SingularScaling::Shift => (T::one(), T::one()),
            };
            let g1 = PwlFunction::from_vertices(
                vec![x0.clone(), x1.clone()],
                vec![x0.clone(), x0.clone()],
                T::one(),
                right_slope,
            );
            let mut breaks: Vec<T> = b[..e].to_vec();
            let mut slopes: Vec<T> = cur.slopes()[..e].to_vec();
            let mut values: Vec<T> = cur.breakpoint_values()[..e].to_vec();
            for j in e + 1..b.len() {
                breaks.push(x0.clone() + stretch.clone() * (b[j].clone() - x1.clone()));
                values.push(cur.breakpoint_values()[j].clone());
            }
            for s_j in &cur.slopes()[e + 1..] {
                slopes.push(s_j.clone() / stretch.clone());
            }
            (g1, PwlFunction::canonical(breaks, slopes, values))
        };
        let degenerate = g1.num_edges() < 3;
        out.push(Composant::new(g1, ComposantKind::SingularTrinomial { degenerate }, Stage::Singular));
        cur = rest;
    }
    (out, cur)
}

/// Three-stage decomposition of an arbitrary piecewise-linear function with
/// rational slopes: outer non-monotone binomials and regular trinomials,
/// monotone binomials, then singular trinomials.
pub fn decompose_algebraic_rational<T: Scalar>(f: &PwlFunction<T>) -> Result<Decomposition<T>> {
    let negated = first_nonzero_slope(f).is_some_and(|s| s.is_negative());
    let base = if negated { f.neg() } else { f.clone() };
    let mut steps = 0u64;
    let (outer, f0) = outer_stage(&base, OuterSlopes::Rational, &mut steps)?;
    let (monotone, f1) = monotone_stage(&f0, &mut steps)?;
    let (singular, rest) = singular_stage(&f1, SingularScaling::Scaled, &mut steps);
    if !rest.is_linear() {
        return Err(Error::Verification("remainder after the singular stage is not linear".into()));
    }

    let mut comps: Vec<Composant<T>> = outer;
    comps.extend(monotone);
    let n_before_singular = comps.len();
    comps.extend(singular.into_iter().rev());
    absorb_linear(&mut comps, n_before_singular, rest);
    let d = finish_sign(comps, negated, f);
    let d = d.with_meta(negated, steps);
    check_rational_counts(&d, &base)?;
    Ok(d)
}

/// Folds a linear remainder into its neighbours: into the outermost singular
/// composant when there is one (at index `at`), otherwise into the innermost
/// composant; a lone remainder becomes a linear composant.
pub(crate) fn absorb_linear<T: Scalar>(comps: &mut Vec<Composant<T>>, at: usize, rest: PwlFunction<T>) {
    if rest.is_identity() {
        return;
    }
    if at < comps.len() {
        comps[at].function = rest.compose(&comps[at].function);
    } else if let Some(last) = comps.last_mut() {
        last.function = last.function.compose(&rest);
    } else {
        comps.push(Composant::new(rest, ComposantKind::Linear, Stage::Monotone));
    }
}

/// Prepends `y -> -y` for negated inputs; a purely linear result is negated
/// in place instead.
pub(crate) fn finish_sign<T: Scalar>(mut comps: Vec<Composant<T>>, negated: bool, f: &PwlFunction<T>) -> Decomposition<T> {
    if negated {
        if f.is_linear() {
            comps = vec![Composant::new(f.clone(), ComposantKind::Linear, Stage::Monotone)];
        } else {
            let flip = PwlFunction::linear(-T::one(), T::zero());
            comps.insert(0, Composant::new(flip, ComposantKind::Linear, Stage::Sign));
        }
    }
    Decomposition::new(comps)
}

/// Count relations that hold for every output of the three-stage algorithm.
fn check_rational_counts<T: Scalar>(d: &Decomposition<T>, f: &PwlFunction<T>) -> Result<()> {
    let c = d.counts();
    let blocks = f.blocks().len();
    let expected_outer = blocks.saturating_sub(1);
    if 2 * c.k3 + c.k2 != expected_outer {
        return Err(Error::Verification(format!(
            "2*k3 + k2 = {} but the function has {blocks} blocks",
            2 * c.k3 + c.k2
        )));
    }
    if c.k0 != f.zero_slope_edges() {
        return Err(Error::Verification("k0 differs from the number of zero-slope edges".into()));
    }
    if c.k1 + c.k2 + 2 * c.k3 > f.nonzero_slope_edges() {
        return Err(Error::Verification("too many non-singular composants".into()));
    }
    Ok(())
}
