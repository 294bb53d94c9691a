//! Kronecker modules: `n x (n-1)` matrices of linear forms, `n = d - 1`.
//!
//! For a generic scheme `Z` of length `n(n-1)/2` the maximal minors of the
//! module built from `Z` generate the ideal of `Z` in degree `n - 1`, and
//! the sheaves over the module correspond to curves `det [q | Φ]` through
//! `Z`, where `q` is a column of quadrics.
//!
//! Orientation: `Φ` has `n` rows and `n - 1` columns. Minor `i` is
//! `(-1)^i · det(Φ without row i)`, so `det [q | Φ] = Σ q_i·d_i`.

use crate::error::Error;
use crate::exactalg::Matrix;
use crate::poly::{det_poly_matrix, monomial_count, monomials, HomPoly, LinForm};
use crate::scalar::Field;
use crate::schemes::PointConfig;

#[derive(Clone, Debug, PartialEq)]
pub struct KroneckerModule<T: Field> {
    entries: Vec<Vec<LinForm<T>>>,
}

impl<T: Field> KroneckerModule<T> {
    pub fn new(entries: Vec<Vec<LinForm<T>>>) -> Result<Self, Error> {
        let n = entries.len();
        if n < 2 {
            return Err(Error::Shape(format!("Kronecker module needs n >= 2 rows, got {n}")));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n - 1 {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    n - 1
                )));
            }
        }
        Ok(KroneckerModule { entries })
    }

    /// Builds a module from integer coefficient triples.
    pub fn from_i64(entries: &[&[[i64; 3]]]) -> Result<Self, Error> {
        Self::new(
            entries
                .iter()
                .map(|row| row.iter().map(|c| LinForm::new(c.map(T::from_i64))).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<LinForm<T>>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &LinForm<T> {
        &self.entries[i][j]
    }

    fn forms(&self) -> Vec<Vec<HomPoly<T>>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|l| l.to_hom()).collect())
            .collect()
    }
}

/// The `n` signed maximal minors, each of degree `n - 1`.
pub fn maximal_minors<T: Field>(phi: &KroneckerModule<T>) -> Vec<HomPoly<T>> {
    let forms = phi.forms();
    (0..phi.n())
        .map(|i| {
            let sub: Vec<Vec<HomPoly<T>>> = forms
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != i)
                .map(|(_, row)| row.clone())
                .collect();
            let det = det_poly_matrix(&sub).expect("linear entries have a consistent shape");
            if i % 2 == 1 {
                det.neg()
            } else {
                det
            }
        })
        .collect()
}

/// Coefficient vectors of forms of equal degree, one per row.
pub fn coefficient_matrix<T: Field>(forms: &[HomPoly<T>]) -> Matrix<T> {
    let cols = forms.first().map_or(0, |f| monomial_count(f.degree()));
    Matrix::from_rows(forms.iter().map(|f| f.coeffs().to_vec()).collect(), cols).expect("forms of equal degree")
}

/// Columns `(i, v)` hold the coefficients of `x_v · forms[i]`; a kernel
/// vector is a tuple of linear forms `L` with `Σ L_i·forms[i] = 0`.
fn linear_syzygy_matrix<T: Field>(forms: &[HomPoly<T>]) -> Matrix<T> {
    let deg = forms.first().map_or(0, |f| f.degree()) + 1;
    let mut cols = Vec::with_capacity(3 * forms.len());
    for g in forms {
        for v in 0..3 {
            cols.push(LinForm::var(v).to_hom().mul(g).into_coeffs());
        }
    }
    Matrix::from_columns(&cols, monomial_count(deg)).expect("uniform degree")
}

/// Builds the Kronecker module of a scheme not lying on a curve of degree
/// `d - 3`: a basis `g_0..g_{n-1}` of the degree-`(d-2)` forms through the
/// scheme, and the `n - 1` independent linear relations among them as the
/// columns of `Φ`.
pub fn kronecker_from_points<T: Field>(cfg: &PointConfig<T>) -> Result<KroneckerModule<T>, Error> {
    let d = cfg.degree();
    let n = d - 1;
    if let Some(cert) = cfg.vanishing_form(d - 3) {
        return Err(Error::NotGeneric {
            degree: d - 3,
            certificate: cert.to_string(),
        });
    }
    let gens = cfg.membership_conditions(d - 2).kernel();
    if gens.cols() != n {
        return Err(Error::UnexpectedDimension {
            what: "forms of degree d-2 through the scheme",
            expected: n,
            actual: gens.cols(),
        });
    }
    let g: Vec<HomPoly<T>> = gens
        .columns()
        .into_iter()
        .map(|c| HomPoly::from_coeffs(d - 2, c).expect("kernel vector length"))
        .collect();
    let syz = linear_syzygy_matrix(&g).kernel();
    if syz.cols() != n - 1 {
        return Err(Error::UnexpectedDimension {
            what: "linear syzygies",
            expected: n - 1,
            actual: syz.cols(),
        });
    }
    let entries = (0..n)
        .map(|i| {
            (0..n - 1)
                .map(|j| {
                    LinForm::new([
                        syz[(3 * i, j)].clone(),
                        syz[(3 * i + 1, j)].clone(),
                        syz[(3 * i + 2, j)].clone(),
                    ])
                })
                .collect()
        })
        .collect();
    KroneckerModule::new(entries)
}

/// `Σ_i d_i·Φ_ij = 0` for every column `j`.
pub fn resolution_check<T: Field>(phi: &KroneckerModule<T>) -> bool {
    let minors = maximal_minors(phi);
    (0..phi.n() - 1).all(|j| {
        let mut acc = HomPoly::zero(phi.n());
        for (i, d) in minors.iter().enumerate() {
            acc = acc.add(&d.mul(&phi.entry(i, j).to_hom()));
        }
        acc.is_zero()
    })
}

/// `true` iff `L ↦ Φ·L` is injective on tuples of `n - 1` linear forms.
pub fn injectivity_check<T: Field>(phi: &KroneckerModule<T>) -> bool {
    injectivity_kernel(phi).cols() == 0
}

/// Tuples `L` of linear forms with `Φ·L = 0`, as columns indexed by
/// `(j, v)` for the coefficient of `x_v` in `L_j`.
pub fn injectivity_kernel<T: Field>(phi: &KroneckerModule<T>) -> Matrix<T> {
    let n = phi.n();
    let quad = monomial_count(2);
    let mut m = Matrix::zeros(n * quad, 3 * (n - 1));
    for i in 0..n {
        for j in 0..n - 1 {
            let entry = phi.entry(i, j).to_hom();
            for v in 0..3 {
                let prod = entry.mul(&LinForm::var(v).to_hom());
                for (r, c) in prod.coeffs().iter().enumerate() {
                    m[(i * quad + r, 3 * j + v)] = c.clone();
                }
            }
        }
    }
    m.kernel()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilityVerdict {
    /// The maximal minors are linearly independent, which forces stability.
    Stable,
    /// The sufficient test failed; stability is undecided.
    Inconclusive,
}

impl StabilityVerdict {
    pub fn is_stable(self) -> bool {
        self == StabilityVerdict::Stable
    }
}

pub fn stability_sufficient<T: Field>(phi: &KroneckerModule<T>) -> StabilityVerdict {
    if coefficient_matrix(&maximal_minors(phi)).rank() == phi.n() {
        StabilityVerdict::Stable
    } else {
        StabilityVerdict::Inconclusive
    }
}

/// A Kronecker module together with a column of `n` quadrics.
#[derive(Clone, Debug, PartialEq)]
pub struct SheafMatrix<T: Field> {
    phi: KroneckerModule<T>,
    q: Vec<HomPoly<T>>,
}

impl<T: Field> SheafMatrix<T> {
    pub fn new(phi: KroneckerModule<T>, q: Vec<HomPoly<T>>) -> Result<Self, Error> {
        if q.len() != phi.n() {
            return Err(Error::Shape(format!("{} quadrics for n = {}", q.len(), phi.n())));
        }
        if let Some(bad) = q.iter().find(|f| f.degree() != 2) {
            return Err(Error::DegreeShape(format!("`{bad}` is not a quadric")));
        }
        Ok(SheafMatrix { phi, q })
    }

    pub fn phi(&self) -> &KroneckerModule<T> {
        &self.phi
    }

    pub fn q(&self) -> &[HomPoly<T>] {
        &self.q
    }

    /// The `n x n` matrix `[q | Φ]`.
    pub fn assembled(&self) -> Vec<Vec<HomPoly<T>>> {
        self.phi
            .forms()
            .into_iter()
            .zip(&self.q)
            .map(|(row, q)| std::iter::once(q.clone()).chain(row).collect())
            .collect()
    }
}

/// `det [q | Φ]`, a curve of degree `d = n + 1`.
pub fn curve_from_pair<T: Field>(s: &SheafMatrix<T>) -> Result<HomPoly<T>, Error> {
    let det = det_poly_matrix(&s.assembled())?;
    if det.is_zero() {
        return Err(Error::DegenerateDeterminant);
    }
    Ok(det)
}

/// The linear map `q ↦ Σ q_i·d_i` from `n` quadrics to degree-`d` forms;
/// column `6i + r` is the image of the `r`-th quadric monomial in slot `i`.
pub fn quadric_column_map<T: Field>(phi: &KroneckerModule<T>) -> Matrix<T> {
    let minors = maximal_minors(phi);
    let d = phi.n() + 1;
    let mut cols = Vec::with_capacity(6 * minors.len());
    for m in &minors {
        for e in monomials(2) {
            cols.push(HomPoly::monomial(e, T::one()).mul(m).into_coeffs());
        }
    }
    Matrix::from_columns(&cols, monomial_count(d)).expect("uniform degree")
}

/// Finds quadrics `q` with `det [q | Φ] = f`.
pub fn pair_from_curve<T: Field>(phi: &KroneckerModule<T>, f: &HomPoly<T>) -> Result<SheafMatrix<T>, Error> {
    let d = phi.n() + 1;
    if f.degree() != d {
        return Err(Error::DegreeShape(format!(
            "curve has degree {}, expected {d}",
            f.degree()
        )));
    }
    let x = quadric_column_map(phi).solve(f.coeffs())?.ok_or(Error::NotInFibre)?;
    let q = x
        .chunks(6)
        .map(|c| HomPoly::from_coeffs(2, c.to_vec()).expect("six quadric coefficients"))
        .collect();
    SheafMatrix::new(phi.clone(), q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use crate::schemes::{nontransversal_sextic, sample_distinct, sample_one_double};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use num_traits::Zero;

    type K = KroneckerModule<Rational>;
    type Cfg = PointConfig<Rational>;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn standard4() -> Cfg {
        Cfg::from_i64_points(4, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap()
    }

    #[test]
    fn two_by_one_minors() {
        let phi = K::from_i64(&[&[[1, 0, 0]], &[[0, 1, 0]]]).unwrap();
        let m = maximal_minors(&phi);
        assert_eq!(m[0], LinForm::var(1).to_hom());
        assert_eq!(m[1], LinForm::var(0).to_hom().neg());
        assert!(resolution_check(&phi));
    }

    #[test]
    fn shape_validation() {
        assert!(K::from_i64(&[&[[1, 0, 0]]]).is_err());
        assert!(K::from_i64(&[&[[1, 0, 0], [0, 1, 0]], &[[0, 0, 1]]]).is_err());
    }

    #[test]
    fn standard_triangle_module() {
        let cfg = standard4();
        let gens = cfg.membership_conditions(2).kernel();
        assert_eq!(gens.cols(), 3);
        // the kernel is spanned by x0x1, x0x2, x1x2
        let span: Vec<HomPoly<Rational>> = [[1, 1, 0], [1, 0, 1], [0, 1, 1]]
            .into_iter()
            .map(|e| HomPoly::monomial(e, q(1)))
            .collect();
        let a = coefficient_matrix(&span);
        assert_eq!(a.vstack(&gens.transpose()).unwrap().rank(), 3);

        let phi = kronecker_from_points(&cfg).unwrap();
        assert_eq!((phi.n(), phi.entries()[0].len()), (3, 2));
        assert!(resolution_check(&phi));
        assert!(injectivity_check(&phi));
        assert!(stability_sufficient(&phi).is_stable());
        for m in maximal_minors(&phi) {
            assert_eq!(m.degree(), 2);
            for p in cfg.supports() {
                assert!(m.eval(p.coords()).is_zero());
            }
        }
    }

    #[test]
    fn sextic_module_minors_vanish() {
        let cfg = nontransversal_sextic::<Rational>();
        let phi = kronecker_from_points(&cfg).unwrap();
        assert_eq!((phi.n(), phi.entries()[0].len()), (5, 4));
        let minors = maximal_minors(&phi);
        let zeros = minors
            .iter()
            .flat_map(|m| cfg.supports().into_iter().map(move |p| m.eval(p.coords())))
            .filter(|v| v.is_zero())
            .count();
        assert_eq!(zeros, 50);
        assert!(resolution_check(&phi));
    }

    #[test]
    fn duplicated_row_still_resolves_but_is_not_stable() {
        let phi = K::from_i64(&[
            &[[1, 0, 0], [0, 1, 0]],
            &[[1, 0, 0], [0, 1, 0]],
            &[[0, 0, 1], [1, 1, 0]],
        ])
        .unwrap();
        assert!(resolution_check(&phi));
        assert_eq!(stability_sufficient(&phi), StabilityVerdict::Inconclusive);
    }

    #[test]
    fn injectivity_failure_families() {
        // a zero column: L = (l, 0) is killed for every linear l
        let zero_col = K::from_i64(&[
            &[[0, 0, 0], [0, 1, 0]],
            &[[0, 0, 0], [1, 0, 0]],
            &[[0, 0, 0], [0, 0, 1]],
        ])
        .unwrap();
        assert!(!injectivity_check(&zero_col));
        assert_eq!(injectivity_kernel(&zero_col).cols(), 3);
        assert_eq!(stability_sufficient(&zero_col), StabilityVerdict::Inconclusive);

        // first two columns rowwise proportional to (l2, -l1): L = (l1, l2, 0)
        let (l1, l2) = ([1, 0, 0], [0, 1, 0]);
        let neg = |c: [i64; 3]| c.map(|x| -x);
        let scale = |c: [i64; 3], s: i64| c.map(|x| s * x);
        let phi = K::from_i64(&[
            &[l2, neg(l1), [0, 0, 1]],
            &[scale(l2, 2), scale(neg(l1), 2), [1, 0, 0]],
            &[scale(l2, -1), l1, [0, 1, 0]],
            &[scale(l2, 3), scale(neg(l1), 3), [1, 1, 1]],
        ])
        .unwrap();
        assert!(!injectivity_check(&phi));
        let k = injectivity_kernel(&phi);
        assert_eq!(k.cols(), 1);
        // the kernel vector is proportional to (x0, x1, 0)
        let v = k.column(0);
        assert!(v[6..].iter().all(|c| c.is_zero()));
        assert_eq!(v[0].clone() * q(1), v[4].clone());
    }

    #[test]
    fn curve_from_pair_cases() {
        let cfg = standard4();
        let phi = kronecker_from_points(&cfg).unwrap();
        let zero = SheafMatrix::new(phi.clone(), vec![HomPoly::zero(2); 3]).unwrap();
        assert_eq!(curve_from_pair(&zero), Err(Error::DegenerateDeterminant));

        let minors = maximal_minors(&phi);
        let quad = HomPoly::monomial([2, 0, 0], q(1));
        for i in 0..3 {
            let mut qs = vec![HomPoly::zero(2); 3];
            qs[i] = quad.clone();
            let s = SheafMatrix::new(phi.clone(), qs).unwrap();
            let f = curve_from_pair(&s).unwrap();
            assert_eq!(f, quad.mul(&minors[i]));
            assert_eq!(f.degree(), 4);
            for p in cfg.supports() {
                assert!(f.eval(p.coords()).is_zero());
            }
        }
    }

    #[test]
    fn rows_of_phi_do_not_change_the_curve() {
        let cfg = standard4();
        let phi = kronecker_from_points(&cfg).unwrap();
        let q0: Vec<HomPoly<Rational>> = vec![
            HomPoly::monomial([2, 0, 0], q(1)),
            HomPoly::monomial([0, 1, 1], q(3)),
            HomPoly::monomial([0, 0, 2], q(-2)),
        ];
        // add Φ·L for L = (x1, 2x0 - x2)
        let l = [LinForm::var(1).to_hom(), LinForm::new([q(2), q(0), q(-1)]).to_hom()];
        let q1: Vec<HomPoly<Rational>> = (0..3)
            .map(|i| {
                let shift = phi.entries()[i]
                    .iter()
                    .zip(&l)
                    .fold(HomPoly::zero(2), |acc, (e, lj)| acc.add(&e.to_hom().mul(lj)));
                q0[i].add(&shift)
            })
            .collect();
        let a = curve_from_pair(&SheafMatrix::new(phi.clone(), q0).unwrap()).unwrap();
        let b = curve_from_pair(&SheafMatrix::new(phi, q1).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn pair_from_curve_round_trip_and_rejection() {
        let cfg = Cfg::from_i64_points(4, &[[0, 1, 0], [0, 0, 1], [1, 1, 1]]).unwrap();
        let phi = kronecker_from_points(&cfg).unwrap();
        let qs = vec![
            HomPoly::monomial([1, 1, 0], q(1)),
            HomPoly::monomial([2, 0, 0], q(5)),
            HomPoly::monomial([0, 0, 2], q(-1)),
        ];
        let f = curve_from_pair(&SheafMatrix::new(phi.clone(), qs).unwrap()).unwrap();
        let back = pair_from_curve(&phi, &f).unwrap();
        assert_eq!(curve_from_pair(&back).unwrap(), f);

        let x0d = HomPoly::monomial([4, 0, 0], q(1));
        assert_eq!(pair_from_curve(&phi, &x0d), Err(Error::NotInFibre));
        assert_eq!(quadric_column_map(&phi).rank(), 3 * 4);
    }

    #[test]
    fn non_generic_points_rejected() {
        let cfg = Cfg::from_i64_points(4, &[[1, 0, 0], [0, 1, 0], [1, 1, 0]]).unwrap();
        assert!(matches!(kronecker_from_points(&cfg), Err(Error::NotGeneric { .. })));
    }

    #[test]
    fn dependent_minors_are_inconclusive() {
        let phi = K::from_i64(&[&[[1, 0, 0]], &[[1, 0, 0]]]).unwrap();
        assert_eq!(stability_sufficient(&phi), StabilityVerdict::Inconclusive);
    }

    #[test]
    fn minors_span_the_ideal_in_degree_d_minus_2() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in 4..=6 {
            let cfg: Cfg = sample_distinct(d, &mut rng).unwrap();
            let phi = kronecker_from_points(&cfg).unwrap();
            let minors = coefficient_matrix(&maximal_minors(&phi));
            let kernel = cfg.membership_conditions(d - 2).kernel().transpose();
            assert_eq!(minors.row_basis(), kernel.row_basis());
        }
    }

    #[test]
    fn curves_from_double_point_module_contain_the_fat_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let cfg: Cfg = sample_one_double(5, &mut rng).unwrap();
        let phi = kronecker_from_points(&cfg).unwrap();
        assert!(resolution_check(&phi));
        assert!(injectivity_check(&phi));
        let qs: Vec<HomPoly<Rational>> = (0..4)
            .map(|i| HomPoly::monomial([i as u32 % 3, 2 - i as u32 % 3, 0], q(i as i64 + 1)))
            .collect();
        let f = curve_from_pair(&SheafMatrix::new(phi, qs).unwrap()).unwrap();
        let fat = &cfg.fat()[0];
        assert!(fat
            .conditions(5)
            .mul_vec(f.coeffs())
            .unwrap()
            .iter()
            .all(|v| v.is_zero()));
    }
}
