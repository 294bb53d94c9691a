//! Zero-dimensional subschemes of the plane made of simple points and
//! curvilinear fat points.
//!
//! A fat point carries a *chart*: an invertible 3x3 matrix `g` with
//! `original = g · chart_coordinates`. Its first column is the support. In
//! chart coordinates the point sits at `(1:0:0)` and, with affine
//! coordinates `x = x2/x0`, `y = x1/x0`, has ideal `(x - h(y), y^m)`. For
//! `m = 2`, `h = 0` this is the ideal `(x2, x1^2)`.

use rand::Rng;

use crate::error::Error;
use crate::exactalg::Matrix;
use crate::poly::{monomial_count, monomials, series_mul, series_pow, HomPoly};
use crate::scalar::Field;

/// Bound on coordinates drawn by the samplers.
pub const SAMPLE_BOUND: i64 = 20;
/// Rejections allowed before a sampler gives up.
pub const MAX_REJECTIONS: usize = 10_000;

/// `l = (d-1)(d-2)/2`.
pub fn expected_length(degree: usize) -> usize {
    degree.saturating_sub(1) * degree.saturating_sub(2) / 2
}

#[derive(Clone, Debug)]
pub struct SimplePoint<T> {
    coords: [T; 3],
}

impl<T: Field> SimplePoint<T> {
    pub fn new(coords: [T; 3]) -> Result<Self, Error> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidPoint("all coordinates are zero".into()));
        }
        Ok(SimplePoint { coords })
    }

    pub fn from_i64(c: [i64; 3]) -> Result<Self, Error> {
        Self::new(c.map(T::from_i64))
    }

    pub fn coords(&self) -> &[T; 3] {
        &self.coords
    }

    /// Degree-`k` evaluation functional.
    pub fn conditions(&self, k: usize) -> Matrix<T> {
        let row: Vec<T> = monomials(k)
            .into_iter()
            .map(|e| {
                (0..3).fold(T::one(), |acc, i| {
                    let mut v = acc;
                    for _ in 0..e[i] {
                        v = v * self.coords[i].clone();
                    }
                    v
                })
            })
            .collect();
        Matrix::from_rows(vec![row], monomial_count(k)).expect("row length")
    }

    pub fn transform(&self, g: &Matrix<T>) -> Self {
        let v = g.mul_vec(&self.coords).expect("3x3 transform");
        SimplePoint::new([v[0].clone(), v[1].clone(), v[2].clone()]).expect("invertible transform")
    }
}

/// Equality of projective points: proportional coordinates.
impl<T: Field> PartialEq for SimplePoint<T> {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (&self.coords, &other.coords);
        (0..3).all(|i| {
            let j = (i + 1) % 3;
            (a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone()).is_zero()
        })
    }
}

/// `true` iff the three points lie on a line.
pub fn collinear<T: Field>(p: &SimplePoint<T>, q: &SimplePoint<T>, r: &SimplePoint<T>) -> bool {
    let m = Matrix::from_rows(vec![p.coords.to_vec(), q.coords.to_vec(), r.coords.to_vec()], 3).expect("3x3");
    m.det().expect("square").is_zero()
}

/// Curvilinear fat point of length `mult`.
#[derive(Clone, PartialEq)]
pub struct FatPoint<T: Field> {
    chart: Matrix<T>,
    /// Coefficients of `h(y)`, index = power of `y`; `h[0] = 0`.
    h: Vec<T>,
    mult: usize,
}

impl<T: Field> std::fmt::Debug for FatPoint<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FatPoint")
            .field("chart", &self.chart)
            .field("h", &self.h.iter().map(|c| c.to_string()).collect::<Vec<_>>())
            .field("mult", &self.mult)
            .finish()
    }
}

impl<T: Field> FatPoint<T> {
    pub fn new(chart: Matrix<T>, h: Vec<T>, mult: usize) -> Result<Self, Error> {
        if chart.rows() != 3 || chart.cols() != 3 {
            return Err(Error::InvalidPoint("chart must be 3x3".into()));
        }
        if chart.det()?.is_zero() {
            return Err(Error::InvalidPoint("chart is singular".into()));
        }
        if mult < 2 {
            return Err(Error::InvalidPoint(format!("multiplicity {mult} < 2")));
        }
        let mut h = h;
        while h.last().is_some_and(|c| c.is_zero()) {
            h.pop();
        }
        if h.first().is_some_and(|c| !c.is_zero()) {
            return Err(Error::InvalidPoint("h(0) must be 0".into()));
        }
        if h.len() > mult {
            return Err(Error::InvalidPoint(format!(
                "deg h = {} is not below the multiplicity {mult}",
                h.len() - 1
            )));
        }
        if h.is_empty() {
            h.push(T::zero());
        }
        Ok(FatPoint { chart, h, mult })
    }

    /// Double point at `support` pointing towards `direction`, with `third`
    /// completing the chart. In chart coordinates the ideal is `(x2, x1^2)`.
    pub fn double(support: [T; 3], direction: [T; 3], third: [T; 3]) -> Result<Self, Error> {
        let chart = Matrix::from_columns(&[support.to_vec(), direction.to_vec(), third.to_vec()], 3)?;
        Self::new(chart, vec![], 2)
    }

    pub fn chart(&self) -> &Matrix<T> {
        &self.chart
    }

    pub fn h(&self) -> &[T] {
        &self.h
    }

    pub fn mult(&self) -> usize {
        self.mult
    }

    pub fn support(&self) -> SimplePoint<T> {
        let c = self.chart.column(0);
        SimplePoint::new([c[0].clone(), c[1].clone(), c[2].clone()]).expect("invertible chart")
    }

    /// Rows `0..=order`: the coefficient of `y^r` in `(f∘chart)(1, y, h(y))`
    /// as a functional on degree-`k` forms `f`.
    pub fn jet_functionals(&self, k: usize, order: usize) -> Matrix<T> {
        let lines: Vec<Vec<T>> = (0..3)
            .map(|i| {
                let mut s = vec![self.chart[(i, 0)].clone(), self.chart[(i, 1)].clone()];
                s.resize(order + 1, T::zero());
                let third = self.chart[(i, 2)].clone();
                for (p, c) in self.h.iter().enumerate().take(order + 1) {
                    s[p] = s[p].clone() + third.clone() * c.clone();
                }
                s.truncate(order + 1);
                s
            })
            .collect();
        let powers: Vec<Vec<Vec<T>>> = lines
            .iter()
            .map(|l| (0..=k as u32).map(|e| series_pow(l, e, order)).collect())
            .collect();
        let mons = monomials(k);
        let mut m = Matrix::zeros(order + 1, mons.len());
        for (j, e) in mons.iter().enumerate() {
            let s = series_mul(
                &series_mul(&powers[0][e[0] as usize], &powers[1][e[1] as usize], order),
                &powers[2][e[2] as usize],
                order,
            );
            for (r, v) in s.into_iter().enumerate() {
                m[(r, j)] = v;
            }
        }
        m
    }

    /// The `mult` conditions for a degree-`k` form to contain this point.
    pub fn conditions(&self, k: usize) -> Matrix<T> {
        self.jet_functionals(k, self.mult - 1)
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Point<'a, T: Field> {
    Simple(&'a SimplePoint<T>),
    Fat(&'a FatPoint<T>),
}

impl<T: Field> Point<'_, T> {
    pub fn support(&self) -> SimplePoint<T> {
        match self {
            Point::Simple(p) => (*p).clone(),
            Point::Fat(f) => f.support(),
        }
    }

    pub fn length(&self) -> usize {
        match self {
            Point::Simple(_) => 1,
            Point::Fat(f) => f.mult,
        }
    }

    pub fn conditions(&self, k: usize) -> Matrix<T> {
        match self {
            Point::Simple(p) => p.conditions(k),
            Point::Fat(f) => f.conditions(k),
        }
    }
}

/// Which stratum of point schemes a configuration belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stratum {
    /// All points simple and distinct.
    Distinct,
    /// One double point, all others simple.
    OneDouble,
    /// Anything else; no codimension claims apply.
    Other,
}

impl Stratum {
    pub fn name(&self) -> &'static str {
        match self {
            Stratum::Distinct => "distinct",
            Stratum::OneDouble => "one-double",
            Stratum::Other => "other",
        }
    }
}

/// A scheme of length `(d-1)(d-2)/2` for curves of degree `d >= 4`.
///
/// Point ids run over the simple points first, then the fat points.
#[derive(Clone, Debug)]
pub struct PointConfig<T: Field> {
    degree: usize,
    simple: Vec<SimplePoint<T>>,
    fat: Vec<FatPoint<T>>,
}

impl<T: Field> PartialEq for PointConfig<T> {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.simple == other.simple && self.fat == other.fat
    }
}

impl<T: Field> PointConfig<T> {
    pub fn new(degree: usize, simple: Vec<SimplePoint<T>>, fat: Vec<FatPoint<T>>) -> Result<Self, Error> {
        if degree < 4 {
            return Err(Error::DegreeTooSmall(degree));
        }
        let cfg = PointConfig { degree, simple, fat };
        let expected = expected_length(degree);
        if cfg.length() != expected {
            return Err(Error::LengthMismatch {
                degree,
                expected,
                actual: cfg.length(),
            });
        }
        let supports = cfg.supports();
        for i in 0..supports.len() {
            for j in 0..i {
                if supports[i] == supports[j] {
                    return Err(Error::InvalidPoint(format!("points {j} and {i} have the same support")));
                }
            }
        }
        Ok(cfg)
    }

    pub fn from_i64_points(degree: usize, pts: &[[i64; 3]]) -> Result<Self, Error> {
        let simple = pts
            .iter()
            .map(|&p| SimplePoint::from_i64(p))
            .collect::<Result<_, _>>()?;
        Self::new(degree, simple, vec![])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn simple(&self) -> &[SimplePoint<T>] {
        &self.simple
    }

    pub fn fat(&self) -> &[FatPoint<T>] {
        &self.fat
    }

    pub fn num_points(&self) -> usize {
        self.simple.len() + self.fat.len()
    }

    pub fn point(&self, id: usize) -> Result<Point<'_, T>, Error> {
        let s = self.simple.len();
        if id < s {
            Ok(Point::Simple(&self.simple[id]))
        } else if id < s + self.fat.len() {
            Ok(Point::Fat(&self.fat[id - s]))
        } else {
            Err(Error::BadIndex {
                index: id,
                count: self.num_points(),
            })
        }
    }

    pub fn points(&self) -> impl Iterator<Item = Point<'_, T>> {
        self.simple
            .iter()
            .map(Point::Simple)
            .chain(self.fat.iter().map(Point::Fat))
    }

    pub fn supports(&self) -> Vec<SimplePoint<T>> {
        self.points().map(|p| p.support()).collect()
    }

    /// Total length: one per simple point plus the multiplicities.
    pub fn length(&self) -> usize {
        self.points().map(|p| p.length()).sum()
    }

    pub fn stratum(&self) -> Stratum {
        match self.fat.as_slice() {
            [] => Stratum::Distinct,
            [f] if f.mult == 2 => Stratum::OneDouble,
            _ => Stratum::Other,
        }
    }

    /// Conditions on degree-`k` forms for containing the points in `ids`.
    pub fn conditions_for(&self, ids: &[usize], k: usize) -> Result<Matrix<T>, Error> {
        let mut m = Matrix::zeros(0, monomial_count(k));
        for &id in ids {
            m = m.vstack(&self.point(id)?.conditions(k))?;
        }
        Ok(m)
    }

    /// One row per unit of length, one column per degree-`k` monomial. A
    /// form contains the scheme iff its coefficients lie in the kernel.
    pub fn membership_conditions(&self, k: usize) -> Matrix<T> {
        let ids: Vec<usize> = (0..self.num_points()).collect();
        self.conditions_for(&ids, k).expect("valid ids")
    }

    /// `true` iff no nonzero degree-`k` form contains the scheme.
    pub fn not_on_curve_of_degree(&self, k: usize) -> bool {
        self.membership_conditions(k).rank() == self.length()
    }

    /// A nonzero degree-`k` form containing the scheme, if one exists.
    pub fn vanishing_form(&self, k: usize) -> Option<HomPoly<T>> {
        let ker = self.membership_conditions(k).kernel();
        if ker.cols() == 0 {
            return None;
        }
        Some(HomPoly::from_coeffs(k, ker.column(0)).expect("kernel vector length"))
    }

    /// Applies `x ↦ g_inv · x` to every point.
    fn transformed(&self, g_inv: &Matrix<T>) -> Self {
        PointConfig {
            degree: self.degree,
            simple: self.simple.iter().map(|p| p.transform(g_inv)).collect(),
            fat: self
                .fat
                .iter()
                .map(|f| FatPoint {
                    chart: g_inv.mul(&f.chart).expect("3x3"),
                    h: f.h.clone(),
                    mult: f.mult,
                })
                .collect(),
        }
    }

    /// Moves point `target` to `(1:0:0)` (for a fat point: into its own
    /// chart's standard position). Returns the new configuration and `g`
    /// such that `f` contains the old scheme iff `f∘g` contains the new one.
    pub fn normalize(&self, target: usize) -> Result<(Self, Matrix<T>), Error> {
        let g = match self.point(target)? {
            Point::Fat(f) => f.chart.clone(),
            Point::Simple(p) => completing_basis(p.coords()),
        };
        let g_inv = g.inverse()?;
        Ok((self.transformed(&g_inv), g))
    }

    /// Applies an invertible coordinate change to every point, so that `f`
    /// contains the old scheme iff `f∘g` contains the returned one.
    pub fn pull_back(&self, g: &Matrix<T>) -> Result<Self, Error> {
        Ok(self.transformed(&g.inverse()?))
    }
}

/// Invertible matrix whose first column is `p` and whose other columns are
/// the first pair of unit vectors making it invertible.
fn completing_basis<T: Field>(p: &[T; 3]) -> Matrix<T> {
    let unit = |i: usize| {
        let mut v = vec![T::zero(); 3];
        v[i] = T::one();
        v
    };
    for (a, b) in [(1, 2), (0, 2), (0, 1)] {
        let m = Matrix::from_columns(&[p.to_vec(), unit(a), unit(b)], 3).expect("3x3");
        if !m.det().expect("square").is_zero() {
            return m;
        }
    }
    unreachable!("a nonzero vector extends to a basis")
}

/// The ten points of a degree-6 configuration on which four singular loci
/// meet transversally but five do not.
pub fn nontransversal_sextic<T: Field>() -> PointConfig<T> {
    PointConfig::from_i64_points(
        6,
        &[
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [0, 1, 1],
            [0, 1, -1],
            [1, -2, 0],
            [1, 2, -1],
            [1, 1, -2],
            [1, -1, 1],
            [1, 1, -1],
        ],
    )
    .expect("valid configuration")
}

fn random_coords<R: Rng + ?Sized>(rng: &mut R) -> [i64; 3] {
    loop {
        let c = [0; 3].map(|_| rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND));
        if c != [0, 0, 0] {
            return c;
        }
    }
}

fn random_simple<T: Field, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<SimplePoint<T>> {
    (0..n)
        .map(|_| SimplePoint::from_i64(random_coords(rng)).expect("nonzero"))
        .collect()
}

/// Samples `l` distinct simple points with integer coordinates in
/// `[-20, 20]` not lying on a curve of degree `d - 3`.
pub fn sample_distinct<T: Field, R: Rng + ?Sized>(degree: usize, rng: &mut R) -> Result<PointConfig<T>, Error> {
    if degree < 4 {
        return Err(Error::DegreeTooSmall(degree));
    }
    let l = expected_length(degree);
    for _ in 0..MAX_REJECTIONS {
        let simple = random_simple(rng, l);
        if let Ok(cfg) = PointConfig::new(degree, simple, vec![]) {
            if cfg.not_on_curve_of_degree(degree - 3) {
                return Ok(cfg);
            }
        }
    }
    Err(Error::SamplerExhausted(MAX_REJECTIONS))
}

/// Samples one double point plus `l - 2` simple points, not lying on a
/// curve of degree `d - 3`.
pub fn sample_one_double<T: Field, R: Rng + ?Sized>(degree: usize, rng: &mut R) -> Result<PointConfig<T>, Error> {
    if degree < 4 {
        return Err(Error::DegreeTooSmall(degree));
    }
    let l = expected_length(degree);
    for _ in 0..MAX_REJECTIONS {
        let [p, t, w] = [0; 3].map(|_| random_coords(rng).map(T::from_i64));
        let Ok(fat) = FatPoint::double(p, t, w) else { continue };
        let simple = random_simple(rng, l - 2);
        if let Ok(cfg) = PointConfig::new(degree, simple, vec![fat]) {
            if cfg.not_on_curve_of_degree(degree - 3) {
                return Ok(cfg);
            }
        }
    }
    Err(Error::SamplerExhausted(MAX_REJECTIONS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::monomial_index;
    use crate::scalar::Rational;
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type Cfg = PointConfig<Rational>;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn standard_double(degree: usize, extra: &[[i64; 3]]) -> Result<Cfg, Error> {
        let fat = FatPoint::new(Matrix::identity(3), vec![], 2)?;
        let simple = extra
            .iter()
            .map(|&p| SimplePoint::from_i64(p))
            .collect::<Result<_, _>>()?;
        PointConfig::new(degree, simple, vec![fat])
    }

    #[test]
    fn lengths() {
        let c = Cfg::from_i64_points(4, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        assert_eq!(c.length(), 3);
        assert_eq!(nontransversal_sextic::<Rational>().length(), 10);
        let extra: Vec<[i64; 3]> = (1..=8).map(|i| [1, i, i * i + 1]).collect();
        let c = standard_double(6, &extra).unwrap();
        assert_eq!(c.length(), 10);
        assert_eq!(c.stratum(), Stratum::OneDouble);
    }

    #[test]
    fn length_mismatch_reports_both_numbers() {
        let e = Cfg::from_i64_points(4, &[[1, 0, 0], [0, 1, 0]]).unwrap_err();
        assert_eq!(
            e,
            Error::LengthMismatch {
                degree: 4,
                expected: 3,
                actual: 2
            }
        );
    }

    #[test]
    fn duplicate_supports_rejected() {
        assert!(Cfg::from_i64_points(4, &[[1, 0, 0], [2, 0, 0], [0, 0, 1]]).is_err());
    }

    #[test]
    fn simple_point_row_is_indicator() {
        let d = 5;
        let row = SimplePoint::<Rational>::from_i64([1, 0, 0]).unwrap().conditions(d);
        let mut expected = vec![q(0); monomial_count(d)];
        expected[0] = q(1);
        assert_eq!(row.row(0), expected.as_slice());
    }

    #[test]
    fn standard_double_point_rows() {
        let d = 5u32;
        let fat = FatPoint::<Rational>::new(Matrix::identity(3), vec![], 2).unwrap();
        let m = fat.conditions(d as usize);
        assert_eq!(m.rows(), 2);
        for (r, e) in [[d, 0, 0], [d - 1, 1, 0]].into_iter().enumerate() {
            let mut expected = vec![q(0); monomial_count(d as usize)];
            expected[monomial_index(e)] = q(1);
            assert_eq!(m.row(r), expected.as_slice());
        }
    }

    #[test]
    fn sextic_not_on_cubic() {
        let c = nontransversal_sextic::<Rational>();
        let m = c.membership_conditions(3);
        assert_eq!((m.rows(), m.cols()), (10, 10));
        assert_eq!(m.rank(), 10);
        assert!(!m.det().unwrap().is_zero());
        assert!(c.not_on_curve_of_degree(3));
        assert!(c.vanishing_form(3).is_none());
    }

    #[test]
    fn collinearity() {
        let p = |c| SimplePoint::<Rational>::from_i64(c).unwrap();
        assert!(!collinear(&p([1, 0, 0]), &p([0, 1, 0]), &p([0, 0, 1])));
        assert!(collinear(&p([1, 0, 0]), &p([0, 1, 0]), &p([1, 1, 0])));
        let c = nontransversal_sextic::<Rational>();
        let s = c.supports();
        assert!(collinear(&s[0], &s[1], &s[5]));
    }

    #[test]
    fn collinear_points_lie_on_a_line() {
        let c = Cfg::from_i64_points(4, &[[1, 0, 0], [0, 1, 0], [1, 1, 0]]).unwrap();
        assert!(!c.not_on_curve_of_degree(1));
        let line = c.vanishing_form(1).unwrap();
        assert_eq!(line, HomPoly::monomial([0, 0, 1], line.coeff([0, 0, 1])));
        let c = Cfg::from_i64_points(4, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        assert!(c.not_on_curve_of_degree(1));
    }

    #[test]
    fn normalize_positions() {
        let c = Cfg::from_i64_points(4, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let (n, g) = c.normalize(0).unwrap();
        assert_eq!(g, Matrix::identity(3));
        assert_eq!(n, c);

        let (n, g) = c.normalize(2).unwrap();
        assert_eq!(n.simple()[2], SimplePoint::from_i64([1, 0, 0]).unwrap());
        // a permutation matrix
        assert!(g.entries().iter().all(|x| x.is_zero() || *x == q(1)));
    }

    #[test]
    fn normalize_preserves_membership_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in [4, 5, 6] {
            let cfg: Cfg = sample_one_double(d, &mut rng).unwrap();
            for target in 0..cfg.num_points() {
                let (n, g) = cfg.normalize(target).unwrap();
                for k in [d - 3, d - 2, d] {
                    assert_eq!(n.membership_conditions(k).rank(), cfg.membership_conditions(k).rank());
                }
                // curves through the old scheme pull back to curves through the new one
                let f = cfg.vanishing_form(d).unwrap();
                let pulled = f.substitute_linear(&g).unwrap();
                let vals = n.membership_conditions(d).mul_vec(pulled.coeffs()).unwrap();
                assert!(vals.iter().all(|v| v.is_zero()));
            }
        }
    }

    #[test]
    fn fat_point_with_curved_h_normalizes() {
        // support (1:1:1), tangent along (0:1:0), h(y) = 3y + y^2, m = 3
        let chart = Matrix::from_i64_rows(&[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1]]);
        let fat = FatPoint::new(chart, vec![q(0), q(3), q(1)], 3).unwrap();
        let cfg = PointConfig::new(
            5,
            vec![
                SimplePoint::from_i64([1, 0, 0]).unwrap(),
                SimplePoint::from_i64([0, 1, 0]).unwrap(),
                SimplePoint::from_i64([0, 0, 1]).unwrap(),
            ],
            vec![fat],
        )
        .unwrap();
        assert_eq!(cfg.stratum(), Stratum::Other);
        let (n, g) = cfg.normalize(3).unwrap();
        assert_eq!(n.fat()[0].chart(), &Matrix::identity(3));
        assert_eq!(g.column(0), vec![q(1), q(1), q(1)]);
        for k in 0..=6 {
            assert_eq!(n.membership_conditions(k).rank(), cfg.membership_conditions(k).rank());
        }
    }

    #[test]
    fn fat_point_validation() {
        let id = Matrix::<Rational>::identity(3);
        assert!(FatPoint::new(id.clone(), vec![q(1)], 2).is_err());
        assert!(FatPoint::new(id.clone(), vec![q(0), q(0), q(1)], 2).is_err());
        assert!(FatPoint::new(id.clone(), vec![], 1).is_err());
        assert!(FatPoint::new(Matrix::<Rational>::zeros(3, 3), vec![], 2).is_err());
        assert!(FatPoint::new(id, vec![q(0), q(5)], 2).is_ok());
    }

    #[test]
    fn sampler_is_deterministic() {
        let a: Cfg = sample_distinct(5, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let b: Cfg = sample_distinct(5, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let c: Cfg = sample_distinct(5, &mut ChaCha8Rng::seed_from_u64(4)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.not_on_curve_of_degree(2));
    }

    #[test]
    fn degree_below_four_rejected() {
        assert_eq!(
            Cfg::from_i64_points(3, &[[1, 0, 0]]).unwrap_err(),
            Error::DegreeTooSmall(3)
        );
    }
}
