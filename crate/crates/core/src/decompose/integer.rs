use super::straighten::{absorb_linear, finish_sign, outer_stage, singular_stage, OuterSlopes, SingularScaling};
use super::{first_nonzero_slope, monotone_kind, Composant, ComposantKind, Decomposition, Stage};
use crate::error::{precondition, Error, Result};
use crate::pwl::PwlFunction;
use crate::scalar::Scalar;

/// Splits a strictly increasing integer-slope function into monotone
/// binomials and trinomials, at most one composant per root. Functions with
/// four or more edges are cut at a middle root and both halves recurse.
pub fn decompose_monotone_integer<T: Scalar>(f: &PwlFunction<T>) -> Result<Decomposition<T>> {
    if !f.slopes().iter().all(|s| s.is_integer()) {
        return precondition("slopes must be integers");
    }
    if !f.slopes().iter().all(|s| s.is_positive()) {
        return precondition("slopes must be positive");
    }
    let mut steps = 0u64;
    let mut out = Vec::new();
    split_monotone(f.clone(), &mut out, &mut steps);
    Ok(Decomposition::new(out).with_meta(false, steps))
}

fn split_monotone<T: Scalar>(f: PwlFunction<T>, out: &mut Vec<Composant<T>>, steps: &mut u64) {
    // explicit stack keeps the outer-to-inner order without deep recursion
    let mut stack = vec![f];
    while let Some(f) = stack.pop() {
        *steps += f.num_edges() as u64;
        if f.num_edges() <= 3 {
            let kind = monotone_kind(&f);
            out.push(Composant::new(f, kind, Stage::Monotone));
            continue;
        }
        let (g, h) = split_at_root(&f, f.num_roots() / 2);
        // g is outer, so it must be emitted first: push h below it
        stack.push(h);
        stack.push(g);
    }
}

/// `f = g . h` with `h` following `f` up to root `l` and then `x + f(x_l) - x_l`,
/// and `g` the identity up to `f(x_l)` and a translate of the rest of `f` beyond.
fn split_at_root<T: Scalar>(f: &PwlFunction<T>, l: usize) -> (PwlFunction<T>, PwlFunction<T>) {
    let b = f.breakpoints();
    let v = f.breakpoint_values();
    let s = f.slopes();
    let x0 = b[l].clone();
    let c = v[l].clone();

    let mut h_slopes = s[..=l].to_vec();
    h_slopes.push(T::one());
    let h = PwlFunction::canonical(b[..=l].to_vec(), h_slopes, v[..=l].to_vec());

    let shift = c.clone() - x0;
    let mut g_breaks = vec![c.clone()];
    let mut g_values = vec![c];
    for j in l + 1..b.len() {
        g_breaks.push(b[j].clone() + shift.clone());
        g_values.push(v[j].clone());
    }
    let mut g_slopes = vec![T::one()];
    g_slopes.extend_from_slice(&s[l + 1..]);
    let g = PwlFunction::canonical(g_breaks, g_slopes, g_values);
    (g, h)
}

/// Decomposition of an integer-slope function: outer composants with slopes
/// `+-1` only, then monotone integer binomials and trinomials, then singular
/// trinomials that shift rather than rescale.
pub fn decompose_integer_rational<T: Scalar>(f: &PwlFunction<T>) -> Result<Decomposition<T>> {
    if !f.slopes().iter().all(|s| s.is_integer()) {
        return precondition("slopes must be integers");
    }
    let negated = first_nonzero_slope(f).is_some_and(|s| s.is_negative());
    let base = if negated { f.neg() } else { f.clone() };
    let mut steps = 0u64;
    let (outer, f0) = outer_stage(&base, OuterSlopes::Unit, &mut steps)?;
    let (singular, m) = singular_stage(&f0, SingularScaling::Shift, &mut steps);
    if !m.slopes().iter().all(|s| s.is_positive()) {
        return Err(Error::Verification("remainder after the singular stage is not increasing".into()));
    }

    let mut comps = outer;
    if m.is_linear() {
        let at = comps.len();
        comps.extend(singular.into_iter().rev());
        if at < comps.len() {
            absorb_linear(&mut comps, at, m);
        } else if !m.is_identity() {
            comps.push(Composant::new(m, ComposantKind::Linear, Stage::Monotone));
        }
    } else {
        let mut middle = Vec::new();
        split_monotone(m, &mut middle, &mut steps);
        comps.extend(middle);
        comps.extend(singular.into_iter().rev());
    }
    let d = finish_sign(comps, negated, f).with_meta(negated, steps);
    check_integer_counts(&d, &base)?;
    Ok(d)
}

fn check_integer_counts<T: Scalar>(d: &Decomposition<T>, f: &PwlFunction<T>) -> Result<()> {
    let c = d.counts();
    if c.k2 + 2 * c.k3 > f.blocks().len() {
        return Err(Error::Verification("outer stage larger than the block count".into()));
    }
    if c.k1 > f.num_edges() {
        return Err(Error::Verification("middle stage larger than the edge count".into()));
    }
    if c.k0 != f.zero_slope_edges() {
        return Err(Error::Verification("k0 differs from the number of zero-slope edges".into()));
    }
    for comp in d.composants() {
        if comp.stage == Stage::Outer && !comp.function.slopes().iter().all(|s| s.abs().is_one()) {
            return Err(Error::Verification("outer composant with a slope other than +-1".into()));
        }
        if !comp.function.slopes().iter().all(|s| s.is_integer()) {
            return Err(Error::Verification("composant with a non-integer slope".into()));
        }
    }
    Ok(())
}
