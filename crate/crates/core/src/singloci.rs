//! Loci in the fibre of curves singular at a given point of the scheme.
//!
//! A curve through a simple point is singular there when its gradient
//! vanishes. At a fat point it is singular when the gradient vanishes at
//! the support and the ideal of the point is not free, which is one more
//! linear condition (see [`crate::localfree`]). Each locus is therefore a
//! linear subspace of the fibre, and all codimensions here are ranks.

use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactalg::{modp, Matrix};
use crate::linsys::{separating_form, Fibre, ProjSubspace};
use crate::poly::{monomial_index, monomials, HomPoly};
use crate::scalar::Field;
use crate::schemes::{collinear, Point, PointConfig, Stratum};

/// Linear functionals on degree-`d` coefficient vectors whose common zeros
/// are the curves singular at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct SingConditions<T: Field> {
    pub point: usize,
    pub functionals: Matrix<T>,
}

/// Rows `f ↦ ∂f/∂x_j (p)` on degree-`k` forms.
pub fn gradient_functionals<T: Field>(p: &[T; 3], k: usize) -> Matrix<T> {
    let mons = monomials(k);
    let mut m = Matrix::zeros(3, mons.len());
    for (col, e) in mons.iter().enumerate() {
        let grad = HomPoly::monomial(*e, T::one()).gradient_at(p);
        for (j, g) in grad.into_iter().enumerate() {
            m[(j, col)] = g;
        }
    }
    m
}

pub fn singular_conditions<T: Field>(cfg: &PointConfig<T>, i: usize) -> Result<SingConditions<T>, Error> {
    let d = cfg.degree();
    let functionals = match cfg.point(i)? {
        Point::Simple(p) => gradient_functionals(p.coords(), d),
        Point::Fat(fat) => {
            let grad = gradient_functionals(fat.support().coords(), d);
            let m = fat.mult();
            let jet = fat.jet_functionals(d, m).select_rows(&[m]);
            grad.vstack(&jet)?
        }
    };
    Ok(SingConditions { point: i, functionals })
}

fn asserts_codims(stratum: Stratum) -> bool {
    matches!(stratum, Stratum::Distinct | Stratum::OneDouble)
}

/// The locus `F_i` of fibre curves singular at point `i`. On the strata
/// with all points simple or a single double point, a codimension other
/// than 2 is reported as an error.
pub fn singular_subspace<T: Field>(fib: &Fibre<T>, i: usize) -> Result<ProjSubspace<T>, Error> {
    let cond = singular_conditions(fib.config(), i)?;
    let sub = fib.space().with_conditions(&cond.functionals)?;
    let codim = sub.codim() - fib.space().codim();
    if codim != 2 && asserts_codims(fib.config().stratum()) {
        return Err(Error::CodimViolation { point: i, codim });
    }
    Ok(sub)
}

fn check_ids<T: Field>(cfg: &PointConfig<T>, ids: &[usize]) -> Result<(), Error> {
    match ids.iter().find(|&&i| i >= cfg.num_points()) {
        Some(&index) => Err(Error::BadIndex {
            index,
            count: cfg.num_points(),
        }),
        None => Ok(()),
    }
}

/// Codimension of `∩_{i ∈ ids} F_i` in the fibre, from the stacked
/// functionals in the full coefficient space.
pub fn stratum_codim<T: Field>(fib: &Fibre<T>, ids: &[usize]) -> Result<usize, Error> {
    check_ids(fib.config(), ids)?;
    let mut sub = fib.space().clone();
    for &i in ids {
        sub = sub.with_conditions(&singular_conditions(fib.config(), i)?.functionals)?;
    }
    Ok(sub.codim() - fib.space().codim())
}

pub fn transversality<T: Field>(fib: &Fibre<T>, ids: &[usize]) -> Result<bool, Error> {
    Ok(stratum_codim(fib, ids)? == 2 * ids.len())
}

/// Points at which the sheaf given by `f` is singular.
pub fn classify_curve<T: Field>(fib: &Fibre<T>, f: &HomPoly<T>) -> Result<BTreeSet<usize>, Error> {
    if !fib.contains(f) {
        return Err(Error::NotInFibre);
    }
    let mut out = BTreeSet::new();
    for i in 0..fib.config().num_points() {
        let cond = singular_conditions(fib.config(), i)?;
        if cond.functionals.mul_vec(f.coeffs())?.iter().all(|v| v.is_zero()) {
            out.insert(i);
        }
    }
    Ok(out)
}

/// Dimension of the normal space to `F_i` in the fibre. It is compared with
/// the codimension of the curves singular at point `i` among all curves
/// containing that point; the two must agree.
pub fn normal_space_dim<T: Field>(fib: &Fibre<T>, i: usize) -> Result<usize, Error> {
    let cfg = fib.config();
    let sub = singular_subspace(fib, i)?;
    if sub.is_empty() {
        return Err(Error::EmptyLocus { point: i });
    }
    let in_fibre = sub.codim() - fib.space().codim();
    let cond = singular_conditions(cfg, i)?.functionals;
    let through = ProjSubspace::new(fib.space().ambient_dim(), &cfg.conditions_for(&[i], cfg.degree())?)?;
    let ambient = through.with_conditions(&cond)?.codim() - through.codim();
    if ambient != in_fibre {
        return Err(Error::NormalSpaceMismatch {
            point: i,
            fibre: in_fibre,
            ambient,
        });
    }
    Ok(in_fibre)
}

/// Precomputed singular conditions restricted to a basis of the fibre, so
/// that codimensions of intersections are ranks of small matrices.
///
/// The restricted entries are large rationals. [`SingularAnalysis::codim`]
/// first compares the rank modulo a large prime, a lower bound, with the
/// sum of the per-point ranks, an upper bound; only when they differ does
/// it fall back to elimination over the rationals.
#[derive(Clone, Debug)]
pub struct SingularAnalysis<T: Field> {
    fibre: Fibre<T>,
    basis: Matrix<T>,
    restricted: Vec<Matrix<T>>,
    residues: Vec<Option<Vec<Vec<u64>>>>,
}

impl<T: Field> SingularAnalysis<T> {
    pub fn new(fibre: Fibre<T>) -> Result<Self, Error> {
        let basis = fibre.space().basis();
        let restricted = (0..fibre.config().num_points())
            .map(|i| {
                let cond = singular_conditions(fibre.config(), i)?;
                Ok(cond.functionals.mul(&basis)?.row_basis())
            })
            .collect::<Result<Vec<Matrix<T>>, Error>>()?;
        let residues = restricted.iter().map(|m| m.residues(modp::PRIME)).collect();
        Ok(SingularAnalysis {
            fibre,
            basis,
            restricted,
            residues,
        })
    }

    pub fn fibre(&self) -> &Fibre<T> {
        &self.fibre
    }

    /// Fibre basis as columns of degree-`d` coefficient vectors.
    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn num_points(&self) -> usize {
        self.restricted.len()
    }

    fn stacked(&self, ids: &[usize]) -> Result<Matrix<T>, Error> {
        check_ids(self.fibre.config(), ids)?;
        let mut out = Matrix::zeros(0, self.basis.cols());
        for &i in ids {
            out = out.vstack(&self.restricted[i])?;
        }
        Ok(out)
    }

    pub fn codim(&self, ids: &[usize]) -> Result<usize, Error> {
        check_ids(self.fibre.config(), ids)?;
        let upper = ids
            .iter()
            .map(|&i| self.restricted[i].rows())
            .sum::<usize>()
            .min(self.basis.cols());
        let reduced: Option<Vec<Vec<u64>>> = ids
            .iter()
            .map(|&i| self.residues[i].clone())
            .collect::<Option<Vec<_>>>()
            .map(|blocks| blocks.concat());
        if let Some(rows) = reduced {
            if modp::rank(rows, modp::PRIME) == upper {
                return Ok(upper);
            }
        }
        self.exact_codim(ids)
    }

    /// [`Self::codim`] by elimination over the rationals only.
    pub fn exact_codim(&self, ids: &[usize]) -> Result<usize, Error> {
        Ok(self.stacked(ids)?.rank())
    }

    pub fn transversal(&self, ids: &[usize]) -> Result<bool, Error> {
        Ok(self.codim(ids)? == 2 * ids.len())
    }

    /// Fibre curves singular at every point of `ids`, as coordinate
    /// vectors in the fibre basis.
    pub fn locus_basis(&self, ids: &[usize]) -> Result<Matrix<T>, Error> {
        Ok(self.stacked(ids)?.kernel())
    }

    /// A random curve singular at every point of `ids`, with integer
    /// weights in `[-bound, bound]` on a basis of that locus.
    pub fn random_curve_in<R: Rng + ?Sized>(
        &self,
        ids: &[usize],
        bound: i64,
        rng: &mut R,
    ) -> Result<HomPoly<T>, Error> {
        let k = self.locus_basis(ids)?;
        let weights: Vec<T> = (0..k.cols())
            .map(|_| T::from_i64(rng.gen_range(-bound..=bound)))
            .collect();
        let coords = k.mul_vec(&weights)?;
        HomPoly::from_coeffs(self.fibre.degree(), self.basis.mul_vec(&coords)?)
    }
}

/// A fibre curve singular at simple point `i`, obtained from `f` by
/// cancelling its two linear terms at that point with multiples of a
/// separating form. Works in coordinates that put point `i` at `(1:0:0)`.
pub fn make_singular_at<T: Field>(fib: &Fibre<T>, i: usize, f: &HomPoly<T>) -> Result<HomPoly<T>, Error> {
    if !fib.contains(f) {
        return Err(Error::NotInFibre);
    }
    let cfg = fib.config();
    let (norm, g) = cfg.normalize(i)?;
    let q = separating_form(&norm, i)?;
    let d = cfg.degree() as u32;
    let local = f.substitute_linear(&g)?;
    let one = T::one();
    let along_x1 = HomPoly::monomial([2, 1, 0], one.clone()).mul(&q);
    let along_x2 = HomPoly::monomial([2, 0, 1], one).mul(&q);
    let fixed = local
        .sub(&along_x1.scale(&local.coeff([d - 1, 1, 0])))
        .sub(&along_x2.scale(&local.coeff([d - 1, 0, 1])));
    fixed.substitute_linear(&g.inverse()?)
}

/// One row of a report; ids are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocusEntry {
    pub point: usize,
    pub codim: usize,
    pub normal_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionEntry {
    pub set: Vec<usize>,
    pub codim: usize,
    pub transversal: bool,
    /// Present for triples of simple points.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collinear: Option<bool>,
}

/// Codimensions of the singular loci and their intersections. Point ids
/// are 1-based, in the order of the configuration file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularLocusReport {
    pub degree: usize,
    pub stratum: String,
    pub fibre_dim: usize,
    pub loci: Vec<LocusEntry>,
    pub intersections: Vec<IntersectionEntry>,
    pub violations: Vec<String>,
}

impl SingularLocusReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn intersection(&self, set: &[usize]) -> Option<&IntersectionEntry> {
        self.intersections.iter().find(|e| e.set == set)
    }
}

/// All pairs and triples of `0..n`, followed by `extra` (0-based, sorted
/// and deduplicated).
pub fn report_subsets(n: usize, extra: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            out.push(vec![a, b]);
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                out.push(vec![a, b, c]);
            }
        }
    }
    for s in extra {
        let set: Vec<usize> = s.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        if !set.is_empty() && !out.contains(&set) {
            out.push(set);
        }
    }
    out
}

fn triple_collinear<T: Field>(cfg: &PointConfig<T>, set: &[usize]) -> Option<bool> {
    if set.len() != 3 {
        return None;
    }
    let pts: Vec<_> = set
        .iter()
        .map(|&i| match cfg.point(i) {
            Ok(Point::Simple(p)) => Some(p.clone()),
            _ => None,
        })
        .collect::<Option<_>>()?;
    Some(collinear(&pts[0], &pts[1], &pts[2]))
}

impl SingularLocusReport {
    /// Assembles a report from per-point normal dimensions and precomputed
    /// intersection codimensions (one per entry of `subsets`, 0-based).
    pub fn assemble<T: Field>(
        analysis: &SingularAnalysis<T>,
        normal_dims: &[usize],
        subsets: &[Vec<usize>],
        codims: &[usize],
    ) -> Result<Self, Error> {
        let cfg = analysis.fibre().config();
        let stratum = cfg.stratum();
        let checked = asserts_codims(stratum);
        let mut violations = Vec::new();
        let mut loci = Vec::new();
        for (i, &normal_dim) in normal_dims.iter().enumerate() {
            let codim = analysis.codim(&[i])?;
            if checked && codim != 2 {
                violations.push(format!("locus of point {} has codimension {codim}", i + 1));
            }
            if checked && normal_dim != 2 {
                violations.push(format!("normal space at point {} has dimension {normal_dim}", i + 1));
            }
            loci.push(LocusEntry {
                point: i + 1,
                codim,
                normal_dim,
            });
        }
        let mut intersections = Vec::new();
        for (set, &codim) in subsets.iter().zip(codims) {
            let collinear = triple_collinear(cfg, set);
            if stratum == Stratum::Distinct {
                let expected = match (set.len(), collinear) {
                    (2, _) => Some(4),
                    (3, Some(false)) => Some(6),
                    _ => None,
                };
                if let Some(e) = expected.filter(|&e| e != codim) {
                    violations.push(format!(
                        "intersection {:?} has codimension {codim}, expected {e}",
                        one_based(set)
                    ));
                }
            }
            intersections.push(IntersectionEntry {
                set: one_based(set),
                codim,
                transversal: codim == 2 * set.len(),
                collinear,
            });
        }
        Ok(SingularLocusReport {
            degree: cfg.degree(),
            stratum: stratum.name().to_string(),
            fibre_dim: analysis.fibre().dim(),
            loci,
            intersections,
            violations,
        })
    }
}

fn one_based(set: &[usize]) -> Vec<usize> {
    set.iter().map(|i| i + 1).collect()
}

/// Normal-space dimension at each point; on strata without asserted
/// codimensions an empty locus or a mismatch yields the fibre-side value.
pub fn normal_dims<T: Field>(fib: &Fibre<T>) -> Result<Vec<usize>, Error> {
    let checked = asserts_codims(fib.config().stratum());
    (0..fib.config().num_points())
        .map(|i| match normal_space_dim(fib, i) {
            Ok(v) => Ok(v),
            Err(Error::CodimViolation { codim, .. }) => Ok(codim),
            Err(Error::NormalSpaceMismatch { fibre, .. }) if !checked => Ok(fibre),
            Err(Error::EmptyLocus { .. }) if !checked => Ok(fib.dim() + 1),
            Err(e) => Err(e),
        })
        .collect()
}

/// Sequential report over all pairs, triples and `extra` subsets.
pub fn analyze<T: Field>(fib: Fibre<T>, extra: &[Vec<usize>]) -> Result<SingularLocusReport, Error> {
    let normal = normal_dims(&fib)?;
    let analysis = SingularAnalysis::new(fib)?;
    let subsets = report_subsets(analysis.num_points(), extra);
    let codims = subsets
        .iter()
        .map(|s| analysis.codim(s))
        .collect::<Result<Vec<_>, _>>()?;
    SingularLocusReport::assemble(&analysis, &normal, &subsets, &codims)
}

/// Index of the monomial `x0^(d-1) x_j` in degree `d`.
pub fn linear_term_index(d: usize, j: usize) -> usize {
    let mut e = [d as u32 - 1, 0, 0];
    e[j] += 1;
    monomial_index(e)
}
