//! Ternary forms, linear forms, affine bivariate polynomials and
//! truncated univariate series.
//!
//! Monomials of a fixed degree are indexed in lexicographic order: the
//! exponent of `x0` descending, then the exponent of `x1` descending. For
//! degree 3 this starts `x0^3, x0^2*x1, x0^2*x2, x0*x1^2, ...`. Every
//! coefficient index in the crate refers to this order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::Error;
use crate::exactalg::Matrix;
use crate::scalar::Field;

/// Exponents of `x0, x1, x2`.
pub type Exponents = [u32; 3];

pub fn monomial_count(degree: usize) -> usize {
    (degree + 1) * (degree + 2) / 2
}

/// All degree-`d` monomials in lexicographic order.
pub fn monomials(degree: usize) -> Vec<Exponents> {
    let d = degree as u32;
    let mut out = Vec::with_capacity(monomial_count(degree));
    for e0 in (0..=d).rev() {
        for e1 in (0..=d - e0).rev() {
            out.push([e0, e1, d - e0 - e1]);
        }
    }
    out
}

/// Position of a monomial in [`monomials`] of its own degree.
pub fn monomial_index(e: Exponents) -> usize {
    let d = (e[0] + e[1] + e[2]) as usize;
    let r = d - e[0] as usize;
    r * (r + 1) / 2 + (r - e[1] as usize)
}

fn pow<T: Field>(x: &T, k: u32) -> T {
    let mut acc = T::one();
    for _ in 0..k {
        acc = acc * x.clone();
    }
    acc
}

/// Homogeneous polynomial in `x0, x1, x2`.
#[derive(Clone, PartialEq, Eq)]
pub struct HomPoly<T> {
    degree: usize,
    coeffs: Vec<T>,
}

impl<T: Field> HomPoly<T> {
    pub fn zero(degree: usize) -> Self {
        HomPoly {
            degree,
            coeffs: vec![T::zero(); monomial_count(degree)],
        }
    }

    pub fn from_coeffs(degree: usize, coeffs: Vec<T>) -> Result<Self, Error> {
        if coeffs.len() != monomial_count(degree) {
            return Err(Error::Shape(format!(
                "{} coefficients for degree {degree} (need {})",
                coeffs.len(),
                monomial_count(degree)
            )));
        }
        Ok(HomPoly { degree, coeffs })
    }

    pub fn monomial(e: Exponents, c: T) -> Self {
        let degree = (e[0] + e[1] + e[2]) as usize;
        let mut p = Self::zero(degree);
        p.coeffs[monomial_index(e)] = c;
        p
    }

    /// Builds a form from `(coefficient, exponents)` pairs, summing repeats.
    pub fn from_terms(degree: usize, terms: &[(T, Exponents)]) -> Result<Self, Error> {
        let mut p = Self::zero(degree);
        for (c, e) in terms {
            let deg = (e[0] + e[1] + e[2]) as usize;
            if deg != degree {
                return Err(Error::Inhomogeneous {
                    monomial: format_monomial(*e),
                    found: deg,
                    expected: degree,
                });
            }
            let i = monomial_index(*e);
            p.coeffs[i] = p.coeffs[i].clone() + c.clone();
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, e: Exponents) -> T {
        if (e[0] + e[1] + e[2]) as usize != self.degree {
            return T::zero();
        }
        self.coeffs[monomial_index(e)].clone()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Nonzero terms in monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponents, &T)> + '_ {
        monomials(self.degree)
            .into_iter()
            .zip(self.coeffs.iter())
            .filter(|(_, c)| !c.is_zero())
    }

    /// Value at the given representative of a projective point.
    pub fn eval(&self, pt: &[T; 3]) -> T {
        let powers: Vec<Vec<T>> = pt
            .iter()
            .map(|x| {
                let mut v = Vec::with_capacity(self.degree + 1);
                let mut acc = T::one();
                for _ in 0..=self.degree {
                    v.push(acc.clone());
                    acc = acc * x.clone();
                }
                v
            })
            .collect();
        self.terms().fold(T::zero(), |acc, (e, c)| {
            acc + c.clone()
                * powers[0][e[0] as usize].clone()
                * powers[1][e[1] as usize].clone()
                * powers[2][e[2] as usize].clone()
        })
    }

    pub fn partial(&self, var: usize) -> Self {
        assert!(var < 3, "variable index {var} out of range");
        if self.degree == 0 {
            return Self::zero(0);
        }
        let mut out = Self::zero(self.degree - 1);
        for (e, c) in self.terms() {
            if e[var] == 0 {
                continue;
            }
            let mut f = e;
            f[var] -= 1;
            out.coeffs[monomial_index(f)] = c.clone() * T::from_i64(e[var] as i64);
        }
        out
    }

    pub fn gradient_at(&self, pt: &[T; 3]) -> [T; 3] {
        [
            self.partial(0).eval(pt),
            self.partial(1).eval(pt),
            self.partial(2).eval(pt),
        ]
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        HomPoly {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-T::one())
    }

    pub fn scale(&self, c: &T) -> Self {
        HomPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        let rhs: Vec<(Exponents, T)> = other.terms().map(|(e, c)| (e, c.clone())).collect();
        for (e, a) in self.terms() {
            for (f, b) in &rhs {
                let i = monomial_index([e[0] + f[0], e[1] + f[1], e[2] + f[2]]);
                out.coeffs[i] = out.coeffs[i].clone() + a.clone() * b.clone();
            }
        }
        out
    }

    /// The pulled-back form `x ↦ p(g·x)`: each `x_i` is replaced by
    /// `Σ_j g[i][j]·x_j`. Composition: `p∘(g·h) = (p∘g)∘h`.
    pub fn substitute_linear(&self, g: &Matrix<T>) -> Result<Self, Error> {
        if g.rows() != 3 || g.cols() != 3 {
            return Err(Error::Shape("coordinate change must be 3x3".into()));
        }
        if g.det()?.is_zero() {
            return Err(Error::SingularTransform);
        }
        let forms: Vec<HomPoly<T>> = (0..3)
            .map(|i| LinForm::new([g[(i, 0)].clone(), g[(i, 1)].clone(), g[(i, 2)].clone()]).to_hom())
            .collect();
        let powers: Vec<Vec<HomPoly<T>>> = forms
            .iter()
            .map(|l| {
                let mut v = vec![HomPoly::monomial([0, 0, 0], T::one())];
                for k in 1..=self.degree {
                    v.push(v[k - 1].mul(l));
                }
                v
            })
            .collect();
        let mut out = Self::zero(self.degree);
        for (e, c) in self.terms() {
            let t = powers[0][e[0] as usize]
                .mul(&powers[1][e[1] as usize])
                .mul(&powers[2][e[2] as usize]);
            out = out.add(&t.scale(c));
        }
        Ok(out)
    }

    /// Dehomogenizes at `x0 = 1` with local coordinates `x = x2`, `y = x1`.
    pub fn dehomogenize_chart(&self) -> LocalPoly<T> {
        let mut lp = LocalPoly::zero();
        for (e, c) in self.terms() {
            lp.add_term((e[2], e[1]), c.clone());
        }
        lp
    }
}

pub fn format_monomial(e: Exponents) -> String {
    let parts: Vec<String> = (0..3)
        .filter(|&i| e[i] > 0)
        .map(|i| {
            if e[i] == 1 {
                format!("x{i}")
            } else {
                format!("x{i}^{}", e[i])
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn write_terms<T: Field>(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (String, T)>) -> fmt::Result {
    let mut first = true;
    for (mono, c) in terms {
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        first = false;
        match (mono.as_str(), a.is_one()) {
            ("1", _) => write!(f, "{a}")?,
            (m, true) => write!(f, "{m}")?,
            (m, false) => write!(f, "{a}*{m}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl<T: Field> fmt::Display for HomPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms().map(|(e, c)| (format_monomial(e), c.clone())))
    }
}

impl<T: Field> fmt::Debug for HomPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomPoly[{}]({self})", self.degree)
    }
}

/// `a0*x0 + a1*x1 + a2*x2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinForm<T> {
    pub coeffs: [T; 3],
}

impl<T: Field> LinForm<T> {
    pub fn new(coeffs: [T; 3]) -> Self {
        LinForm { coeffs }
    }

    pub fn zero() -> Self {
        LinForm::new([T::zero(), T::zero(), T::zero()])
    }

    pub fn var(i: usize) -> Self {
        let mut l = Self::zero();
        l.coeffs[i] = T::one();
        l
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &T) -> Self {
        LinForm::new(self.coeffs.clone().map(|a| a * c.clone()))
    }

    pub fn to_hom(&self) -> HomPoly<T> {
        // monomials(1) is [x0, x1, x2].
        HomPoly::from_coeffs(1, self.coeffs.to_vec()).expect("three coefficients")
    }
}

/// Product of truncated power series in one variable, keeping terms of
/// degree at most `order`.
pub fn series_mul<T: Field>(a: &[T], b: &[T], order: usize) -> Vec<T> {
    let mut out = vec![T::zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            if !y.is_zero() {
                out[i + j] = out[i + j].clone() + x.clone() * y.clone();
            }
        }
    }
    out
}

pub fn series_pow<T: Field>(a: &[T], k: u32, order: usize) -> Vec<T> {
    let mut acc = vec![T::zero(); order + 1];
    acc[0] = T::one();
    for _ in 0..k {
        acc = series_mul(&acc, a, order);
    }
    acc
}

/// Polynomial in affine coordinates `x, y`, stored sparsely by `(i, j)`
/// for the monomial `x^i*y^j`.
#[derive(Clone, PartialEq, Eq)]
pub struct LocalPoly<T> {
    terms: BTreeMap<(u32, u32), T>,
}

impl<T: Field> LocalPoly<T> {
    pub fn zero() -> Self {
        LocalPoly { terms: BTreeMap::new() }
    }

    pub fn from_terms(terms: &[(T, (u32, u32))]) -> Self {
        let mut p = Self::zero();
        for (c, e) in terms {
            p.add_term(*e, c.clone());
        }
        p
    }

    pub fn add_term(&mut self, e: (u32, u32), c: T) {
        let v = self.terms.remove(&e).unwrap_or_else(T::zero) + c;
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }

    pub fn coeff(&self, e: (u32, u32)) -> T {
        self.terms.get(&e).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &T)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(|(i, j)| (i + j) as usize).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> T {
        self.coeff((0, 0))
    }

    /// Coefficients of `x` and `y`.
    pub fn linear_part(&self) -> [T; 2] {
        [self.coeff((1, 0)), self.coeff((0, 1))]
    }

    pub fn eval(&self, x: &T, y: &T) -> T {
        self.terms
            .iter()
            .fold(T::zero(), |acc, ((i, j), c)| acc + c.clone() * pow(x, *i) * pow(y, *j))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::zero();
        for (e, a) in &self.terms {
            out.add_term(*e, a.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &other.terms {
                out.add_term((i + k, j + l), a.clone() * b.clone());
            }
        }
        out
    }

    /// `f(h(y), y)` as a univariate coefficient list (index = power of `y`).
    pub fn substitute_x(&self, h: &[T]) -> Vec<T> {
        let max_x = self.terms.keys().map(|(i, _)| *i).max().unwrap_or(0);
        let mut h_pows: Vec<Vec<T>> = vec![vec![T::one()]];
        for k in 1..=max_x as usize {
            let prev = &h_pows[k - 1];
            let mut next = vec![T::zero(); prev.len() + h.len().saturating_sub(1)];
            for (a, x) in prev.iter().enumerate() {
                for (b, y) in h.iter().enumerate() {
                    next[a + b] = next[a + b].clone() + x.clone() * y.clone();
                }
            }
            h_pows.push(next);
        }
        let mut out: Vec<T> = Vec::new();
        for ((i, j), c) in &self.terms {
            let hp = &h_pows[*i as usize];
            let need = hp.len() + *j as usize;
            if out.len() < need {
                out.resize(need, T::zero());
            }
            for (k, v) in hp.iter().enumerate() {
                let idx = k + *j as usize;
                out[idx] = out[idx].clone() + c.clone() * v.clone();
            }
        }
        while out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        out
    }
}

fn format_local_monomial(i: u32, j: u32) -> String {
    let mut parts = Vec::new();
    for (name, e) in [("x", i), ("y", j)] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl<T: Field> fmt::Display for LocalPoly<T> {
    /// Terms by ascending total degree, then descending power of `x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|(i, j)| (i + j, std::cmp::Reverse(*i)));
        write_terms(
            f,
            keys.into_iter()
                .map(|&(i, j)| (format_local_monomial(i, j), self.terms[&(i, j)].clone())),
        )
    }
}

impl<T: Field> fmt::Debug for LocalPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalPoly({self})")
    }
}

/// Determinant of a square matrix of forms by cofactor expansion,
/// memoized on column subsets.
///
/// Entry degrees must split as `deg(m[i][j]) = r_i + c_j` so that every
/// expansion term has the same degree.
pub fn det_poly_matrix<T: Field>(m: &[Vec<HomPoly<T>>]) -> Result<HomPoly<T>, Error> {
    let n = m.len();
    if n == 0 {
        return Ok(HomPoly::monomial([0, 0, 0], T::one()));
    }
    if n > 16 {
        return Err(Error::Shape(format!("{n}x{n} polynomial matrix is too large")));
    }
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Shape(format!(
                "row {i} has {} entries in a {n}x{n} matrix",
                row.len()
            )));
        }
    }
    let deg = |i: usize, j: usize| m[i][j].degree() as i64;
    for i in 0..n {
        for j in 0..n {
            if deg(i, j) != deg(i, 0) + deg(0, j) - deg(0, 0) {
                return Err(Error::DegreeShape(format!(
                    "entry ({i},{j}) has degree {}, expected {}",
                    deg(i, j),
                    deg(i, 0) + deg(0, j) - deg(0, 0)
                )));
            }
        }
    }
    // memo[S] = det of rows 0..|S| restricted to the columns in S.
    let mut memo: HashMap<u32, HomPoly<T>> = HashMap::new();
    memo.insert(0, HomPoly::monomial([0, 0, 0], T::one()));
    let mut layer: Vec<u32> = vec![0];
    for k in 1..=n {
        let row = k - 1;
        let mut next: Vec<u32> = Vec::new();
        for &s in &layer {
            for c in 0..n {
                let t = s | (1 << c);
                if t != s && !memo.contains_key(&t) {
                    memo.insert(t, HomPoly::zero(0));
                    next.push(t);
                }
            }
        }
        for &t in &next {
            let cols: Vec<usize> = (0..n).filter(|c| t & (1 << c) != 0).collect();
            let mut acc: Option<HomPoly<T>> = None;
            for (pos, &c) in cols.iter().enumerate() {
                let minor = &memo[&(t & !(1 << c))];
                let mut term = m[row][c].mul(minor);
                if (pos + row) % 2 == 1 {
                    term = term.neg();
                }
                acc = Some(match acc {
                    None => term,
                    Some(a) => a.add(&term),
                });
            }
            memo.insert(t, acc.expect("nonempty column set"));
        }
        for s in layer {
            memo.remove(&s);
        }
        layer = next;
    }
    Ok(memo.remove(&((1u32 << n) - 1)).expect("full column set"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_traits::Zero;

    type P = HomPoly<Rational>;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    #[test]
    fn monomial_order() {
        assert_eq!(monomials(1), vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        let m3 = monomials(3);
        assert_eq!(&m3[..3], &[[3, 0, 0], [2, 1, 0], [2, 0, 1]]);
        assert_eq!(monomials(6).len(), 28);
        for d in 0..8 {
            for (i, e) in monomials(d).into_iter().enumerate() {
                assert_eq!(monomial_index(e), i);
            }
        }
    }

    #[test]
    fn eval_and_partials() {
        let d = 5;
        let p = P::monomial([d, 0, 0], q(1));
        assert_eq!(p.eval(&[q(1), q(0), q(0)]), q(1));

        let p = P::monomial([d - 1, 1, 0], q(1));
        assert_eq!(p.partial(1), P::monomial([d - 1, 0, 0], q(1)));

        let p = P::monomial([0, d, 0], q(1));
        let g = p.gradient_at(&[q(1), q(0), q(0)]);
        assert!(g.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn substitute_identity_and_swap() {
        let p = P::monomial([4, 1, 0], q(1));
        assert_eq!(p.substitute_linear(&Matrix::identity(3)).unwrap(), p);
        let swap = Matrix::from_i64_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(p.substitute_linear(&swap).unwrap(), P::monomial([1, 4, 0], q(1)));
        let singular = Matrix::from_i64_rows(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        assert_eq!(p.substitute_linear(&singular), Err(Error::SingularTransform));
    }

    #[test]
    fn det_small() {
        let x0 = LinForm::<Rational>::var(0).to_hom();
        assert_eq!(det_poly_matrix(&[vec![x0.clone()]]).unwrap(), x0);

        let x1 = LinForm::<Rational>::var(1).to_hom();
        let m = vec![vec![x0.clone(), x1.clone()], vec![x1.clone(), x0.clone()]];
        let d = det_poly_matrix(&m).unwrap();
        assert_eq!(d, x0.mul(&x0).sub(&x1.mul(&x1)));
    }

    #[test]
    fn det_rejects_bad_shape() {
        let x0 = LinForm::<Rational>::var(0).to_hom();
        let one = P::monomial([0, 0, 0], q(1));
        let m = vec![vec![x0.clone(), x0.clone()], vec![x0.clone(), one]];
        assert!(matches!(det_poly_matrix(&m), Err(Error::DegreeShape(_))));
    }

    #[test]
    fn local_substitution() {
        // f = x^2 - y^3 at x = y/2: y^2/4 - y^3
        let f = LocalPoly::from_terms(&[(q(1), (2, 0)), (q(-1), (0, 3))]);
        let h = vec![q(0), Rational::from_ratio_i64(1, 2)];
        assert_eq!(
            f.substitute_x(&h),
            vec![q(0), q(0), Rational::from_ratio_i64(1, 4), q(-1)]
        );
    }

    #[test]
    fn printing() {
        let p = P::from_terms(3, &[(q(1), [2, 1, 0]), (Rational::from_ratio_i64(-3, 2), [0, 0, 3])]).unwrap();
        assert_eq!(p.to_string(), "x0^2*x1 - 3/2*x2^3");
        assert_eq!(P::zero(2).to_string(), "0");
        let f = LocalPoly::from_terms(&[(q(1), (0, 2)), (q(-1), (3, 0))]);
        assert_eq!(f.to_string(), "y^2 - x^3");
    }
}
