//! Decomposition of piecewise-linear functions into binomials and trinomials.
//!
//! Every decomposer returns a [`Decomposition`]: an ordered list of composants
//! whose composition (first element outermost, last element innermost)
//! equals the input exactly.

mod complete;
mod integer;
mod straighten;

pub use complete::{complete_decomposability, decompose_complete, trinomial_criterion, CompleteCriterion};
pub use integer::{decompose_integer_rational, decompose_monotone_integer};
pub use straighten::{
    decompose_algebraic_polynomial, decompose_algebraic_rational, decompose_monotone_algebraic,
    decompose_monotone_algebraic_ordered, straighten, RootOrder,
};

use crate::pwl::{compose_all, PwlFunction};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComposantKind {
    /// One root, min-type: left slope greater than right slope, both `>= 0`.
    AlgebraicBinomial,
    /// One root, both slopes positive.
    MonotoneRationalBinomial,
    /// One root, nonzero slopes of opposite signs.
    NonMonotoneRationalBinomial,
    /// Two roots, three nonzero slopes.
    RegularTrinomial,
    /// Exactly one zero-slope edge, in the middle unless `degenerate`
    /// (one or both outer edges missing).
    SingularTrinomial { degenerate: bool },
    /// No roots.
    Linear,
}

impl ComposantKind {
    /// Whether `f` has the shape this kind promises.
    pub fn holds_for<T: Scalar>(&self, f: &PwlFunction<T>) -> bool {
        let s = f.slopes();
        match self {
            ComposantKind::AlgebraicBinomial => {
                s.len() == 2 && s[0] > s[1] && !s[1].is_negative()
            }
            ComposantKind::MonotoneRationalBinomial => s.len() == 2 && s.iter().all(|x| x.is_positive()),
            ComposantKind::NonMonotoneRationalBinomial => {
                s.len() == 2 && (s[0].is_positive() && s[1].is_negative() || s[0].is_negative() && s[1].is_positive())
            }
            ComposantKind::RegularTrinomial => s.len() == 3 && s.iter().all(|x| !x.is_zero()),
            ComposantKind::SingularTrinomial { degenerate } => {
                let zeros = s.iter().filter(|x| x.is_zero()).count();
                if zeros != 1 {
                    return false;
                }
                if *degenerate {
                    s.len() <= 2
                } else {
                    s.len() == 3 && s[1].is_zero()
                }
            }
            ComposantKind::Linear => s.len() == 1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ComposantKind::AlgebraicBinomial => "algebraic-binomial",
            ComposantKind::MonotoneRationalBinomial => "monotone-binomial",
            ComposantKind::NonMonotoneRationalBinomial => "non-monotone-binomial",
            ComposantKind::RegularTrinomial => "regular-trinomial",
            ComposantKind::SingularTrinomial { degenerate: false } => "singular-trinomial",
            ComposantKind::SingularTrinomial { degenerate: true } => "degenerate-singular-trinomial",
            ComposantKind::Linear => "linear",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "algebraic-binomial" => ComposantKind::AlgebraicBinomial,
            "monotone-binomial" => ComposantKind::MonotoneRationalBinomial,
            "non-monotone-binomial" => ComposantKind::NonMonotoneRationalBinomial,
            "regular-trinomial" => ComposantKind::RegularTrinomial,
            "singular-trinomial" => ComposantKind::SingularTrinomial { degenerate: false },
            "degenerate-singular-trinomial" => ComposantKind::SingularTrinomial { degenerate: true },
            "linear" => ComposantKind::Linear,
            _ => return None,
        })
    }
}

/// Which part of a staged decomposition produced a composant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    /// Non-monotone binomials and trinomials that remove blocks of edges.
    Outer,
    /// Monotone binomials (and, for integer slopes, trinomials).
    Monotone,
    /// Singular trinomials, one per zero-slope edge.
    Singular,
    /// The `y -> -y` factor added when the first nonzero slope is negative.
    Sign,
}

impl Stage {
    pub fn name(&self) -> &'static str {
        match self {
            Stage::Outer => "outer",
            Stage::Monotone => "monotone",
            Stage::Singular => "singular",
            Stage::Sign => "sign",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "outer" => Stage::Outer,
            "monotone" => Stage::Monotone,
            "singular" => Stage::Singular,
            "sign" => Stage::Sign,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composant<T> {
    pub function: PwlFunction<T>,
    pub kind: ComposantKind,
    pub stage: Stage,
}

impl<T: Scalar> Composant<T> {
    pub fn new(function: PwlFunction<T>, kind: ComposantKind, stage: Stage) -> Self {
        Composant { function, kind, stage }
    }
}

/// Stage tallies: `k2` non-monotone binomials and `k3` trinomials of the
/// outer stage, `k1` non-linear monotone composants, `k0` singular trinomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct StageCounts {
    pub k2: usize,
    pub k3: usize,
    pub k1: usize,
    pub k0: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decomposition<T> {
    composants: Vec<Composant<T>>,
    negated: bool,
    steps: u64,
}

impl<T: Scalar> Decomposition<T> {
    pub fn new(composants: Vec<Composant<T>>) -> Self {
        Decomposition {
            composants,
            negated: false,
            steps: 0,
        }
    }

    pub fn empty() -> Self {
        Self::new(Vec::new())
    }

    pub(crate) fn with_meta(mut self, negated: bool, steps: u64) -> Self {
        self.negated = negated;
        self.steps = steps;
        self
    }

    /// Outermost first.
    pub fn composants(&self) -> &[Composant<T>] {
        &self.composants
    }

    pub fn composants_mut(&mut self) -> &mut Vec<Composant<T>> {
        &mut self.composants
    }

    pub fn len(&self) -> usize {
        self.composants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.composants.is_empty()
    }

    /// True when the input was negated before decomposing; the decomposition
    /// then starts with the linear composant `y -> -y`.
    pub fn negated(&self) -> bool {
        self.negated
    }

    /// Number of elementary edge operations spent building the decomposition.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn functions(&self) -> Vec<PwlFunction<T>> {
        self.composants.iter().map(|c| c.function.clone()).collect()
    }

    pub fn compose(&self) -> PwlFunction<T> {
        compose_all(&self.functions())
    }

    pub fn counts(&self) -> StageCounts {
        let mut c = StageCounts::default();
        for comp in &self.composants {
            match (comp.stage, comp.kind) {
                (_, ComposantKind::Linear) | (Stage::Sign, _) => {}
                (Stage::Outer, ComposantKind::RegularTrinomial) => c.k3 += 1,
                (Stage::Outer, _) => c.k2 += 1,
                (Stage::Monotone, _) => c.k1 += 1,
                (Stage::Singular, _) => c.k0 += 1,
            }
        }
        c
    }

    /// Composants that are not linear.
    pub fn nonlinear_len(&self) -> usize {
        self.composants.iter().filter(|c| c.kind != ComposantKind::Linear).count()
    }
}

/// Exact check: the composition equals `f` and every composant has its
/// declared shape.
pub fn verify<T: Scalar>(d: &Decomposition<T>, f: &PwlFunction<T>) -> bool {
    d.composants.iter().all(|c| c.kind.holds_for(&c.function)) && d.compose() == *f
}

/// Applies the affine map `maps[r]` to the values of `f` on region `r`, where
/// the regions are separated by the breakpoints with indices `cuts`.
/// The maps must agree at each cut so the result stays continuous.
pub(crate) fn remap_regions<T: Scalar>(f: &PwlFunction<T>, cuts: &[usize], maps: &[(T, T)]) -> PwlFunction<T> {
    debug_assert_eq!(maps.len(), cuts.len() + 1);
    let region = |i: usize| cuts.iter().filter(|&&c| c < i).count();
    let values = f
        .breakpoint_values()
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let (a, b) = &maps[region(j)];
            a.clone() * v.clone() + b.clone()
        })
        .collect();
    let slopes = f
        .slopes()
        .iter()
        .enumerate()
        .map(|(e, s)| maps[region(e)].0.clone() * s.clone())
        .collect();
    PwlFunction::canonical(f.breakpoints().to_vec(), slopes, values)
}

pub(crate) fn first_nonzero_slope<T: Scalar>(f: &PwlFunction<T>) -> Option<&T> {
    f.slopes().iter().find(|s| !s.is_zero())
}

/// Kind of a leaf composant produced by splitting a strictly increasing function.
pub(crate) fn monotone_kind<T: Scalar>(f: &PwlFunction<T>) -> ComposantKind {
    match f.num_edges() {
        1 => ComposantKind::Linear,
        2 => ComposantKind::MonotoneRationalBinomial,
        _ => ComposantKind::RegularTrinomial,
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

    #[test]
    fn kind_shapes() {
        let b = PwlFunction::from_vertices(vec![q(0)], vec![q(0)], q(2), q(1));
        assert!(ComposantKind::AlgebraicBinomial.holds_for(&b));
        assert!(ComposantKind::MonotoneRationalBinomial.holds_for(&b));
        assert!(!ComposantKind::NonMonotoneRationalBinomial.holds_for(&b));
        let tent = PwlFunction::from_vertices(vec![q(0)], vec![q(1)], q(1), q(-1));
        assert!(ComposantKind::NonMonotoneRationalBinomial.holds_for(&tent));
        let s = PwlFunction::from_vertices(vec![q(0), q(1)], vec![q(0), q(0)], q(1), q(2));
        assert!(ComposantKind::SingularTrinomial { degenerate: false }.holds_for(&s));
        assert!(!ComposantKind::SingularTrinomial { degenerate: true }.holds_for(&s));
        let d = PwlFunction::from_vertices(vec![q(0)], vec![q(0)], q(0), q(1));
        assert!(ComposantKind::SingularTrinomial { degenerate: true }.holds_for(&d));
        assert!(ComposantKind::SingularTrinomial { degenerate: true }.holds_for(&PwlFunction::constant(q(3))));
        assert!(ComposantKind::Linear.holds_for(&PwlFunction::<Q>::identity()));
    }

    #[test]
    fn names_round_trip() {
        for k in [
            ComposantKind::AlgebraicBinomial,
            ComposantKind::MonotoneRationalBinomial,
            ComposantKind::NonMonotoneRationalBinomial,
            ComposantKind::RegularTrinomial,
            ComposantKind::SingularTrinomial { degenerate: false },
            ComposantKind::SingularTrinomial { degenerate: true },
            ComposantKind::Linear,
        ] {
            assert_eq!(ComposantKind::from_name(k.name()), Some(k));
        }
        for s in [Stage::Outer, Stage::Monotone, Stage::Singular, Stage::Sign] {
            assert_eq!(Stage::from_name(s.name()), Some(s));
        }
    }

    #[test]
    fn empty_decomposition_is_identity() {
        assert!(verify(&Decomposition::<Q>::empty(), &PwlFunction::identity()));
        assert!(!verify(&Decomposition::<Q>::empty(), &PwlFunction::linear(q(1), q(1))));
    }

    #[test]
    fn remap_three_regions() {
        // tent with slopes 1, -1, 1; flip the middle and shift the right
        let f = PwlFunction::from_vertices(vec![q(0), q(2)], vec![q(2), q(0)], q(1), q(1));
        let h = remap_regions(&f, &[0, 1], &[(q(1), q(0)), (q(-1), q(4)), (q(1), q(4))]);
        assert!(h.is_linear());
        assert_eq!(h.eval(&q(5)), q(7));
    }
}
