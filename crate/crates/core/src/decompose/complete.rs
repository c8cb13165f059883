use super::{Composant, ComposantKind, Decomposition, Stage};
use crate::error::{precondition, Error, Result};
use crate::pwl::PwlFunction;
use crate::scalar::Scalar;

/// Verdict of the complete-decomposability test together with the reduced
/// denominators `q_i` of `a_i / a_{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteCriterion<T> {
    pub decomposable: bool,
    pub q: Vec<T>,
}

/// Whether a strictly increasing function with positive integer slopes
/// `a_0, ..., a_n` is a composition of binomials: `q_1 * ... * q_n` divides `a_0`.
pub fn complete_decomposability<T: Scalar>(slopes: &[T]) -> Result<CompleteCriterion<T>> {
    if slopes.is_empty() {
        return precondition("empty slope sequence");
    }
    if !slopes.iter().all(|a| a.is_integer() && a.is_positive()) {
        return precondition("slopes must be positive integers");
    }
    let q: Vec<T> = slopes
        .windows(2)
        .map(|w| (w[1].clone() / w[0].clone()).denom_part())
        .collect();
    let prod = q.iter().fold(T::one(), |acc, x| acc * x.clone());
    let decomposable = (slopes[0].clone() / prod).is_integer();
    Ok(CompleteCriterion { decomposable, q })
}

/// Equivalent two-root form of the criterion: `a_1` divides `a_0 * a_2`.
pub fn trinomial_criterion<T: Scalar>(a0: &T, a1: &T, a2: &T) -> bool {
    (a0.clone() * a2.clone() / a1.clone()).is_integer()
}

/// Builds `f = g_1 . ... . g_n` from integer binomials, one per root, when the
/// criterion holds. `g_n` fixes its root `t_n`; each `g_m` is placed at the
/// image of `t_m` under the binomials already built, and `g_1` absorbs the
/// final additive shift.
pub fn decompose_complete<T: Scalar>(f: &PwlFunction<T>) -> Result<Decomposition<T>> {
    let a = f.slopes();
    let crit = complete_decomposability(a)?;
    if !crit.decomposable {
        return precondition("product of the q_i does not divide the first slope");
    }
    let n = f.num_roots();
    if n == 0 {
        return Ok(Decomposition::new(vec![Composant::new(f.clone(), ComposantKind::Linear, Stage::Monotone)]));
    }
    let kind = if f.classify().is_tropical_algebraic() {
        ComposantKind::AlgebraicBinomial
    } else {
        ComposantKind::MonotoneRationalBinomial
    };

    let head: T = crit.q[..n - 1].iter().fold(T::one(), |acc, x| acc * x.clone());
    let mut b: Vec<T> = crit.q[..n - 1].to_vec();
    b.push(a[0].clone() / head);
    let c: Vec<T> = (0..n)
        .map(|j| b[j].clone() * a[j + 1].clone() / a[j].clone())
        .collect();
    if !c.iter().all(|x| x.is_integer()) {
        return Err(Error::Verification("binomial slope is not an integer".into()));
    }

    let t = f.roots();
    let mut gs: Vec<PwlFunction<T>> = Vec::with_capacity(n);
    let mut inner = PwlFunction::identity();
    let mut steps = 0u64;
    for m in (0..n).rev() {
        let r = inner.eval(&t[m]);
        let g = PwlFunction::from_vertices(vec![r.clone()], vec![r], b[m].clone(), c[m].clone());
        inner = g.compose(&inner);
        steps += inner.num_edges() as u64;
        gs.push(g);
    }
    gs.reverse();
    let shift = f.eval(&t[0]) - inner.eval(&t[0]);
    gs[0] = gs[0].post_affine(&T::one(), &shift);

    let comps = gs.into_iter().map(|g| Composant::new(g, kind, Stage::Monotone)).collect();
    Ok(Decomposition::new(comps).with_meta(false, steps))
}
