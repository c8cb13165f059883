//! Polygonal lines in `Q^n` and their parametrizations by integer-slope
//! piecewise-linear functions of one variable.

use crate::error::{Error, Result};
use crate::pwl::PwlFunction;
use crate::scalar::{gcd, lcm, Scalar};

/// Vertices `v_1..v_k` joined by segments, with one incoming and one outgoing
/// ray. Ray vectors point in the direction of increasing parameter and are
/// stored as integer vectors with coprime entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolygonalLine<T> {
    vertices: Vec<Vec<T>>,
    ray_in: Vec<T>,
    ray_out: Vec<T>,
}

fn positively_proportional<T: Scalar>(u: &[T], w: &[T]) -> bool {
    let Some(i) = u.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    let lambda = w[i].clone() / u[i].clone();
    lambda.is_positive() && u.iter().zip(w).all(|(a, b)| a.clone() * lambda.clone() == *b)
}

/// Scales a nonzero rational vector to integers with gcd 1, keeping direction.
fn primitive<T: Scalar>(v: &[T]) -> Vec<T> {
    let den = v.iter().fold(T::one(), |acc, x| lcm(&acc, &x.denom_part()));
    let ints: Vec<T> = v.iter().map(|x| x.clone() * den.clone()).collect();
    let g = ints.iter().fold(T::zero(), |acc, x| gcd(&acc, x));
    ints.into_iter().map(|x| x / g.clone()).collect()
}

impl<T: Scalar> PolygonalLine<T> {
    pub fn new(vertices: Vec<Vec<T>>, ray_in: Vec<T>, ray_out: Vec<T>) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidPolyline(m.into()));
        if vertices.is_empty() {
            return bad("at least one vertex is required");
        }
        let n = ray_in.len();
        if n == 0 {
            return bad("dimension must be positive");
        }
        if ray_out.len() != n || vertices.iter().any(|v| v.len() != n) {
            return bad("inconsistent dimensions");
        }
        if ray_in.iter().all(|x| x.is_zero()) || ray_out.iter().all(|x| x.is_zero()) {
            return bad("ray vectors must be nonzero");
        }
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return bad("consecutive vertices coincide");
        }
        let line = PolygonalLine {
            vertices,
            ray_in: primitive(&ray_in),
            ray_out: primitive(&ray_out),
        };
        let a = line.slope_vectors();
        if let Some(i) = a.windows(2).position(|w| positively_proportional(&w[0], &w[1])) {
            return bad(&format!("vertex {} can be discarded", i + 1));
        }
        Ok(line)
    }

    pub fn vertices(&self) -> &[Vec<T>] {
        &self.vertices
    }

    pub fn ray_in(&self) -> &[T] {
        &self.ray_in
    }

    pub fn ray_out(&self) -> &[T] {
        &self.ray_out
    }

    pub fn dimension(&self) -> usize {
        self.ray_in.len()
    }

    /// Number of vertices `k`.
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// `a_0 = ray_in`, `a_i = v_{i+1} - v_i`, `a_k = ray_out`.
    pub fn slope_vectors(&self) -> Vec<Vec<T>> {
        let mut out = vec![self.ray_in.clone()];
        for w in self.vertices.windows(2) {
            out.push(w[1].iter().zip(&w[0]).map(|(x, y)| x.clone() - y.clone()).collect());
        }
        out.push(self.ray_out.clone());
        out
    }

    /// Coordinates stay nonnegative and, once zero, stay zero.
    pub fn can_parametrize_polynomial(&self) -> bool {
        let a = self.slope_vectors();
        (0..self.dimension()).all(|j| {
            let col: Vec<&T> = a.iter().map(|v| &v[j]).collect();
            col.iter().all(|x| !x.is_negative())
                && col
                    .iter()
                    .position(|x| x.is_zero())
                    .is_none_or(|i| col[i..].iter().all(|x| x.is_zero()))
        })
    }

    pub fn can_parametrize_laurent(&self) -> bool {
        let a = self.slope_vectors();
        let n = self.dimension();
        a.windows(2).all(|w| {
            let (p, q) = (&w[0], &w[1]);
            let signs = (0..n).all(|j| {
                (!p[j].is_negative() || q[j].is_negative()) && (!q[j].is_positive() || p[j].is_positive())
            });
            let ratios = (0..n).all(|j0| {
                (0..n).all(|j| {
                    j == j0
                        || !(p[j0].is_positive() && q[j0].is_positive() && p[j].is_negative() && q[j].is_negative())
                        || p[j0].clone() / p[j].clone() <= q[j0].clone() / q[j].clone()
                })
            });
            signs && ratios
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParametrizationKind {
    Rational,
    LaurentPolynomial,
    Polynomial,
}

impl ParametrizationKind {
    pub fn name(&self) -> &'static str {
        match self {
            ParametrizationKind::Rational => "rational",
            ParametrizationKind::LaurentPolynomial => "laurent",
            ParametrizationKind::Polynomial => "polynomial",
        }
    }

    /// Slope shape each coordinate function must have.
    pub fn holds_for<T: Scalar>(&self, f: &PwlFunction<T>) -> bool {
        let s = f.slopes();
        let integer = s.iter().all(|x| x.is_integer());
        let decreasing = s.windows(2).all(|w| w[0] > w[1]);
        match self {
            ParametrizationKind::Rational => integer,
            ParametrizationKind::LaurentPolynomial => integer && decreasing,
            ParametrizationKind::Polynomial => integer && decreasing && s.iter().all(|x| !x.is_negative()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parametrization<T> {
    pub functions: Vec<PwlFunction<T>>,
    pub kind: ParametrizationKind,
    /// Per-interval speed factors `c_0..c_k`.
    pub chain: Vec<T>,
    /// Common denominator that makes every slope `m * c_i * a_ij` an integer.
    pub m: T,
}

/// Integer-slope functions with slopes `M c_i a_i` on interval `i`. Roots
/// start at `1/M` and interval `i` has length `1/(M c_i)`, so the joint map
/// crosses each segment exactly once.
pub fn parametrize_with_chain<T: Scalar>(
    line: &PolygonalLine<T>,
    chain: &[T],
    kind: ParametrizationKind,
) -> Result<Parametrization<T>> {
    let a = line.slope_vectors();
    if chain.len() != a.len() || !chain.iter().all(|c| c.is_positive()) {
        return Err(Error::Precondition("need one positive factor per interval".into()));
    }
    let m = a
        .iter()
        .zip(chain)
        .flat_map(|(v, c)| v.iter().map(move |x| (x.clone() * c.clone()).denom_part()))
        .fold(T::one(), |acc, d| lcm(&acc, &d));
    let k = line.num_vertices();
    let mut ts = Vec::with_capacity(k);
    ts.push(T::one() / m.clone());
    for i in 1..k {
        let next = ts[i - 1].clone() + T::one() / (m.clone() * chain[i].clone());
        ts.push(next);
    }
    let functions = (0..line.dimension())
        .map(|j| {
            let vs = line.vertices().iter().map(|v| v[j].clone()).collect();
            let left = m.clone() * chain[0].clone() * a[0][j].clone();
            let right = m.clone() * chain[k].clone() * a[k][j].clone();
            PwlFunction::from_vertices(ts.clone(), vs, left, right)
        })
        .collect();
    Ok(Parametrization {
        functions,
        kind,
        chain: chain.to_vec(),
        m,
    })
}

pub fn parametrize_rational<T: Scalar>(line: &PolygonalLine<T>) -> Parametrization<T> {
    let chain = vec![T::one(); line.num_vertices() + 1];
    parametrize_with_chain(line, &chain, ParametrizationKind::Rational).expect("unit chain is valid")
}

fn chain_is_monotone<T: Scalar>(a: &[Vec<T>], chain: &[T], nonnegative: bool) -> bool {
    let scaled: Vec<Vec<T>> = a
        .iter()
        .zip(chain)
        .map(|(v, c)| v.iter().map(|x| x.clone() * c.clone()).collect())
        .collect();
    let n = a[0].len();
    (0..n).all(|j| {
        scaled.windows(2).all(|w| w[0][j] >= w[1][j]) && (!nonnegative || scaled.iter().all(|v| !v[j].is_negative()))
    })
}

/// Greedy speed factors: each `c_{i+1}` as large as the coordinates positive on
/// both intervals allow. Without such a coordinate the smallest value that
/// keeps the negative coordinates non-increasing is used.
fn greedy_chain<T: Scalar>(a: &[Vec<T>]) -> Vec<T> {
    let mut chain = vec![T::one()];
    for w in a.windows(2) {
        let c = chain.last().unwrap().clone();
        let (p, q) = (&w[0], &w[1]);
        let upper = p
            .iter()
            .zip(q)
            .filter(|(x, y)| x.is_positive() && y.is_positive())
            .map(|(x, y)| c.clone() * x.clone() / y.clone())
            .min();
        let next = upper.unwrap_or_else(|| {
            p.iter()
                .zip(q)
                .filter(|(x, y)| x.is_negative() && y.is_negative())
                .map(|(x, y)| c.clone() * x.clone() / y.clone())
                .max()
                .unwrap_or(c.clone())
        });
        chain.push(next);
    }
    chain
}

pub fn parametrize_polynomial<T: Scalar>(line: &PolygonalLine<T>) -> Result<Parametrization<T>> {
    let a = line.slope_vectors();
    if a.iter().flatten().any(|x| x.is_negative()) {
        return Err(Error::Precondition("negative slope coordinate".into()));
    }
    let chain = greedy_chain(&a);
    if !chain_is_monotone(&a, &chain, true) {
        return Err(Error::Precondition("no non-increasing speed chain".into()));
    }
    parametrize_with_chain(line, &chain, ParametrizationKind::Polynomial)
}

pub fn parametrize_laurent<T: Scalar>(line: &PolygonalLine<T>) -> Result<Parametrization<T>> {
    let a = line.slope_vectors();
    let chain = greedy_chain(&a);
    if !chain_is_monotone(&a, &chain, false) {
        return Err(Error::Precondition("no non-increasing speed chain".into()));
    }
    parametrize_with_chain(line, &chain, ParametrizationKind::LaurentPolynomial)
}

/// The joint map `t -> (f_1(t), .., f_n(t))` runs through `line`: the union of
/// roots has exactly `k` points, they map to `v_1..v_k` in order, and the joint
/// slope on every interval is a positive multiple of the line's slope vector.
pub fn verify_functions<T: Scalar>(line: &PolygonalLine<T>, functions: &[PwlFunction<T>]) -> bool {
    if functions.len() != line.dimension() {
        return false;
    }
    let mut ts: Vec<T> = functions.iter().flat_map(|f| f.roots().iter().cloned()).collect();
    ts.sort();
    ts.dedup();
    if ts.len() != line.num_vertices() {
        return false;
    }
    let hits = ts
        .iter()
        .zip(line.vertices())
        .all(|(t, v)| functions.iter().zip(v).all(|(f, x)| f.eval(t) == *x));
    if !hits {
        return false;
    }
    let a = line.slope_vectors();
    (0..a.len()).all(|i| {
        let joint: Vec<T> = functions
            .iter()
            .map(|f| {
                if i == 0 {
                    f.slope_left_of(&ts[0]).clone()
                } else {
                    f.slope_right_of(&ts[i - 1]).clone()
                }
            })
            .collect();
        positively_proportional(&a[i], &joint)
    })
}

pub fn verify_parametrization<T: Scalar>(line: &PolygonalLine<T>, p: &Parametrization<T>) -> bool {
    p.functions.iter().all(|f| p.kind.holds_for(f)) && verify_functions(line, &p.functions)
}
