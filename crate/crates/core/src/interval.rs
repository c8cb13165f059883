use std::fmt;

use crate::error::{Error, Result};

/// A point of the extended real line.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended<T> {
    NegInf,
    Finite(T),
    PosInf,
}

impl<T> Extended<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            Extended::Finite(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Extended::Finite(_))
    }
}

impl<T: fmt::Display> fmt::Display for Extended<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInf => write!(f, "-inf"),
            Extended::Finite(x) => write!(f, "{x}"),
            Extended::PosInf => write!(f, "inf"),
        }
    }
}

/// Closed interval of the extended line; infinite ends are open in the usual sense.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval<T> {
    lo: Extended<T>,
    hi: Extended<T>,
}

impl<T: Ord> Interval<T> {
    pub fn new(lo: Extended<T>, hi: Extended<T>) -> Result<Self> {
        if lo > hi || lo == Extended::PosInf || hi == Extended::NegInf {
            return Err(Error::EmptyInterval);
        }
        Ok(Interval { lo, hi })
    }

    pub fn whole_line() -> Self {
        Interval {
            lo: Extended::NegInf,
            hi: Extended::PosInf,
        }
    }

    pub fn closed(lo: T, hi: T) -> Result<Self> {
        Self::new(Extended::Finite(lo), Extended::Finite(hi))
    }

    pub fn up_to(hi: T) -> Self {
        Interval {
            lo: Extended::NegInf,
            hi: Extended::Finite(hi),
        }
    }

    pub fn from(lo: T) -> Self {
        Interval {
            lo: Extended::Finite(lo),
            hi: Extended::PosInf,
        }
    }

    pub fn point(x: T) -> Self
    where
        T: Clone,
    {
        Interval {
            lo: Extended::Finite(x.clone()),
            hi: Extended::Finite(x),
        }
    }

    pub fn lo(&self) -> &Extended<T> {
        &self.lo
    }

    pub fn hi(&self) -> &Extended<T> {
        &self.hi
    }

    pub fn contains(&self, x: &T) -> bool {
        let above = match &self.lo {
            Extended::NegInf => true,
            Extended::Finite(l) => l <= x,
            Extended::PosInf => false,
        };
        let below = match &self.hi {
            Extended::PosInf => true,
            Extended::Finite(h) => x <= h,
            Extended::NegInf => false,
        };
        above && below
    }

    /// Strict interior membership.
    pub fn contains_interior(&self, x: &T) -> bool {
        let above = match &self.lo {
            Extended::NegInf => true,
            Extended::Finite(l) => l < x,
            Extended::PosInf => false,
        };
        let below = match &self.hi {
            Extended::PosInf => true,
            Extended::Finite(h) => x < h,
            Extended::NegInf => false,
        };
        above && below
    }

    pub fn is_point(&self) -> bool {
        matches!((&self.lo, &self.hi), (Extended::Finite(a), Extended::Finite(b)) if a == b)
    }
}

impl<T: fmt::Display> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo.is_finite() { '[' } else { '(' };
        let close = if self.hi.is_finite() { ']' } else { ')' };
        write!(f, "{open}{}, {}{close}", self.lo, self.hi)
    }
}
