use super::PwlFunction;
use crate::scalar::Scalar;

/// Most specific shape of a function, decided from its slope sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionTag {
    /// Integer slopes, strictly decreasing left to right, the last one `>= 0`.
    TropicalPolynomial,
    /// Integer slopes, strictly decreasing, some negative.
    TropicalLaurentPolynomial,
    MonotoneIncreasing,
    MonotoneDecreasing,
    /// All slopes `>= 0`, at least one zero.
    NonDecreasing,
    /// Any function with rational slopes (every function here).
    AlgebraicRational,
    /// Any function with integer slopes.
    IntegerRational,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FunctionClass {
    pub tag: FunctionTag,
    pub slopes_integer: bool,
    decreasing: bool,
    nonnegative: bool,
    positive: bool,
    negative: bool,
}

impl FunctionClass {
    /// Membership test for any tag, not only the most specific one.
    pub fn satisfies(&self, tag: FunctionTag) -> bool {
        match tag {
            FunctionTag::TropicalPolynomial => self.slopes_integer && self.decreasing && self.nonnegative,
            FunctionTag::TropicalLaurentPolynomial => self.slopes_integer && self.decreasing,
            FunctionTag::MonotoneIncreasing => self.positive,
            FunctionTag::MonotoneDecreasing => self.negative,
            FunctionTag::NonDecreasing => self.nonnegative,
            FunctionTag::AlgebraicRational | FunctionTag::General => true,
            FunctionTag::IntegerRational => self.slopes_integer,
        }
    }

    /// Strictly decreasing nonnegative rational slopes (a min of linear
    /// functions with nonnegative rational slopes).
    pub fn is_tropical_algebraic(&self) -> bool {
        self.decreasing && self.nonnegative
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SlopeSign {
    Positive,
    Negative,
}

/// Maximal run of edges whose nonzero slopes share a sign; zero-slope edges
/// inside the run are skipped over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Block {
    pub sign: SlopeSign,
    /// Index of the first and last nonzero edge of the run.
    pub first_edge: usize,
    pub last_edge: usize,
}

impl<T: Scalar> PwlFunction<T> {
    pub fn classify(&self) -> FunctionClass {
        let s = self.slopes();
        let slopes_integer = s.iter().all(|x| x.is_integer());
        let decreasing = s.windows(2).all(|w| w[0] > w[1]);
        let nonnegative = s.iter().all(|x| !x.is_negative());
        let positive = s.iter().all(|x| x.is_positive());
        let negative = s.iter().all(|x| x.is_negative());
        let tag = if slopes_integer && decreasing && nonnegative {
            FunctionTag::TropicalPolynomial
        } else if slopes_integer && decreasing {
            FunctionTag::TropicalLaurentPolynomial
        } else if positive {
            FunctionTag::MonotoneIncreasing
        } else if negative {
            FunctionTag::MonotoneDecreasing
        } else if nonnegative {
            FunctionTag::NonDecreasing
        } else {
            FunctionTag::General
        };
        FunctionClass {
            tag,
            slopes_integer,
            decreasing,
            nonnegative,
            positive,
            negative,
        }
    }

    pub fn blocks(&self) -> Vec<Block> {
        let mut out: Vec<Block> = Vec::new();
        for (i, s) in self.slopes().iter().enumerate() {
            let sign = if s.is_positive() {
                SlopeSign::Positive
            } else if s.is_negative() {
                SlopeSign::Negative
            } else {
                continue;
            };
            match out.last_mut() {
                Some(b) if b.sign == sign => b.last_edge = i,
                _ => out.push(Block {
                    sign,
                    first_edge: i,
                    last_edge: i,
                }),
            }
        }
        out
    }

    pub fn zero_slope_edges(&self) -> usize {
        self.slopes().iter().filter(|s| s.is_zero()).count()
    }

    pub fn nonzero_slope_edges(&self) -> usize {
        self.num_edges() - self.zero_slope_edges()
    }

    /// Roots whose two adjacent edges have nonzero slopes of the same sign.
    pub fn non_extremal_roots(&self) -> usize {
        self.slopes()
            .windows(2)
            .filter(|w| (w[0].is_positive() && w[1].is_positive()) || (w[0].is_negative() && w[1].is_negative()))
            .count()
    }
}
