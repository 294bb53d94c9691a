//! Linear systems of plane curves: projective subspaces of the space of
//! degree-`d` forms, and the fibre of curves through a point scheme.
//!
//! Subspaces are kept as the common zero set of linear functionals on the
//! coefficient space, reduced to echelon form. Codimensions are then just
//! ranks.

use crate::error::Error;
use crate::exactalg::{dot, Matrix};
use crate::poly::{monomial_count, monomial_index, HomPoly};
use crate::scalar::Field;
use crate::schemes::{Point, PointConfig};

/// Projective subspace of `P(S^d V*)` cut out by linear functionals.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjSubspace<T: Field> {
    ambient_dim: usize,
    functionals: Matrix<T>,
}

impl<T: Field> ProjSubspace<T> {
    /// `functionals` need not be independent; they are reduced here.
    pub fn new(ambient_dim: usize, functionals: &Matrix<T>) -> Result<Self, Error> {
        if functionals.cols() != ambient_dim + 1 {
            return Err(Error::Shape(format!(
                "functionals have {} columns for a projective space of dimension {ambient_dim}",
                functionals.cols()
            )));
        }
        Ok(ProjSubspace {
            ambient_dim,
            functionals: functionals.row_basis(),
        })
    }

    pub fn whole(ambient_dim: usize) -> Self {
        ProjSubspace {
            ambient_dim,
            functionals: Matrix::zeros(0, ambient_dim + 1),
        }
    }

    /// The full space of degree-`d` curves.
    pub fn curves_of_degree(degree: usize) -> Self {
        Self::whole(monomial_count(degree) - 1)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Echelon-form functionals, one per unit of codimension.
    pub fn functionals(&self) -> &Matrix<T> {
        &self.functionals
    }

    pub fn codim(&self) -> usize {
        self.functionals.rows()
    }

    /// Projective dimension; `-1` for the empty subspace.
    pub fn dim(&self) -> isize {
        self.ambient_dim as isize - self.codim() as isize
    }

    pub fn is_empty(&self) -> bool {
        self.dim() < 0
    }

    pub fn contains(&self, v: &[T]) -> bool {
        v.len() == self.ambient_dim + 1
            && (0..self.functionals.rows()).all(|i| dot(self.functionals.row(i), v).is_zero())
    }

    pub fn contains_curve(&self, f: &HomPoly<T>) -> bool {
        self.contains(f.coeffs())
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, Error> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        let out = Self::new(self.ambient_dim, &self.functionals.vstack(&other.functionals)?)?;
        debug_assert!(out.codim() <= self.codim() + other.codim());
        Ok(out)
    }

    /// Intersection with the zero set of additional functionals.
    pub fn with_conditions(&self, extra: &Matrix<T>) -> Result<Self, Error> {
        Self::new(self.ambient_dim, &self.functionals.vstack(extra)?)
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.functionals.vstack(&other.functionals).expect("same width").rank() == self.codim()
    }

    /// Spanning vectors of the underlying linear subspace, as columns.
    pub fn basis(&self) -> Matrix<T> {
        self.functionals.kernel()
    }
}

/// Curves of degree `d` through a scheme of length `(d-1)(d-2)/2`.
#[derive(Clone, Debug)]
pub struct Fibre<T: Field> {
    config: PointConfig<T>,
    space: ProjSubspace<T>,
}

impl<T: Field> Fibre<T> {
    /// Requires that the scheme lies on no curve of degree `d - 3`; the
    /// error then carries such a curve.
    pub fn new(config: PointConfig<T>) -> Result<Self, Error> {
        let d = config.degree();
        if let Some(cert) = config.vanishing_form(d - 3) {
            return Err(Error::NotGeneric {
                degree: d - 3,
                certificate: cert.to_string(),
            });
        }
        let space = ProjSubspace::new(monomial_count(d) - 1, &config.membership_conditions(d))?;
        let expected = 3 * d - 1;
        if space.dim() != expected as isize {
            return Err(Error::UnexpectedDimension {
                what: "fibre",
                expected,
                actual: space.dim().max(0) as usize,
            });
        }
        Ok(Fibre { config, space })
    }

    pub fn config(&self) -> &PointConfig<T> {
        &self.config
    }

    pub fn space(&self) -> &ProjSubspace<T> {
        &self.space
    }

    pub fn degree(&self) -> usize {
        self.config.degree()
    }

    pub fn dim(&self) -> usize {
        self.space.dim() as usize
    }

    pub fn contains(&self, f: &HomPoly<T>) -> bool {
        f.degree() == self.degree() && self.space.contains_curve(f)
    }
}

/// Builds the fibre over `cfg`; see [`Fibre::new`].
pub fn fibre<T: Field>(cfg: &PointConfig<T>) -> Result<Fibre<T>, Error> {
    Fibre::new(cfg.clone())
}

/// A form `q` of degree `d - 3` vanishing on every point except `i`, with
/// coefficient 1 on `x0^(d-3)`. Point `i` must be a simple point at
/// `(1:0:0)`. Then `x0^2*x1*q` and `x0^2*x2*q` contain the whole scheme and
/// each has exactly one of the monomials `x0^(d-1)*x1`, `x0^(d-1)*x2`.
pub fn separating_form<T: Field>(cfg: &PointConfig<T>, i: usize) -> Result<HomPoly<T>, Error> {
    match cfg.point(i)? {
        Point::Simple(p) => {
            let c = p.coords();
            if c[0].is_zero() || !c[1].is_zero() || !c[2].is_zero() {
                return Err(Error::NotNormalized { point: i });
            }
        }
        Point::Fat(_) => return Err(Error::NotNormalized { point: i }),
    }
    let k = cfg.degree() - 3;
    let others: Vec<usize> = (0..cfg.num_points()).filter(|&j| j != i).collect();
    let mut unit = Matrix::zeros(1, monomial_count(k));
    unit[(0, monomial_index([k as u32, 0, 0]))] = T::one();
    let system = cfg.conditions_for(&others, k)?.vstack(&unit)?;
    let mut rhs = vec![T::zero(); system.rows()];
    rhs[system.rows() - 1] = T::one();
    match system.solve(&rhs)? {
        Some(x) => HomPoly::from_coeffs(k, x),
        None => Err(Error::NotGeneric {
            degree: k,
            certificate: cfg.vanishing_form(k).map_or_else(|| "?".into(), |f| f.to_string()),
        }),
    }
}
