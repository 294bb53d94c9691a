//! Local freeness of ideals of points on a plane curve germ.
//!
//! A germ is a polynomial `f(x, y)` through the origin. A curvilinear fat
//! point of length `m` has ideal `I = (x - h(y), y^m)` with `h(0) = 0` and
//! `deg h < m`. Writing `f(h(y), y) = -y^m·u(y)`, the ideal is free on the
//! curve iff the germ is regular or `u(0) != 0`. Both conditions are
//! polynomial identities in the input coefficients, so verdicts computed
//! over the rationals hold over the algebraic closure.
//!
//! [`jet_principality_oracle`] decides the same question independently by
//! computing `dim I/mI` in a truncation of the local ring.

use rand::Rng;

use crate::error::Error;
use crate::exactalg::Matrix;
use crate::poly::{HomPoly, LocalPoly};
use crate::scalar::Field;
use crate::schemes::FatPoint;

#[derive(Clone, Debug, PartialEq)]
pub struct CurveGerm<T: Field> {
    f: LocalPoly<T>,
}

impl<T: Field> CurveGerm<T> {
    pub fn new(f: LocalPoly<T>) -> Result<Self, Error> {
        if f.is_zero() {
            return Err(Error::InvalidGerm("the zero polynomial is not a curve".into()));
        }
        if !f.constant_term().is_zero() {
            return Err(Error::InvalidGerm(format!("`{f}` does not pass through the origin")));
        }
        Ok(CurveGerm { f })
    }

    pub fn f(&self) -> &LocalPoly<T> {
        &self.f
    }
}

/// The ideal `(x - h(y), y^m)`; `h[k]` is the coefficient of `y^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct FatIdealData<T: Field> {
    h: Vec<T>,
    mult: usize,
}

impl<T: Field> FatIdealData<T> {
    pub fn new(mut h: Vec<T>, mult: usize) -> Result<Self, Error> {
        if mult == 0 {
            return Err(Error::InvalidGerm("multiplicity must be at least 1".into()));
        }
        while h.last().is_some_and(|c| c.is_zero()) {
            h.pop();
        }
        if h.first().is_some_and(|c| !c.is_zero()) {
            return Err(Error::InvalidGerm("h(0) must vanish".into()));
        }
        if h.len() > mult {
            return Err(Error::InvalidGerm(format!(
                "deg h = {} is not below the multiplicity {mult}",
                h.len() - 1
            )));
        }
        Ok(FatIdealData { h, mult })
    }

    /// The maximal ideal `(x, y)`.
    pub fn maximal() -> Self {
        FatIdealData { h: vec![], mult: 1 }
    }

    pub fn h(&self) -> &[T] {
        &self.h
    }

    pub fn mult(&self) -> usize {
        self.mult
    }

    fn generators(&self) -> [LocalPoly<T>; 2] {
        let mut g = LocalPoly::from_terms(&[(T::one(), (1, 0))]);
        for (k, c) in self.h.iter().enumerate() {
            g.add_term((0, k as u32), -c.clone());
        }
        [g, LocalPoly::from_terms(&[(T::one(), (0, self.mult as u32))])]
    }
}

pub fn is_regular<T: Field>(g: &CurveGerm<T>) -> bool {
    g.f.linear_part().iter().any(|c| !c.is_zero())
}

/// The maximal ideal of a curve germ is free exactly when the germ is
/// regular.
pub fn maximal_ideal_free<T: Field>(g: &CurveGerm<T>) -> bool {
    is_regular(g)
}

/// `f ∈ (x - h(y), y^m)`, i.e. `y^m` divides `f(h(y), y)`.
pub fn membership<T: Field>(g: &CurveGerm<T>, z: &FatIdealData<T>) -> bool {
    g.f.substitute_x(&z.h).iter().take(z.mult).all(|c| c.is_zero())
}

/// `u(0) = -[y^m] f(h(y), y)`.
pub fn u_at_zero<T: Field>(g: &CurveGerm<T>, z: &FatIdealData<T>) -> Result<T, Error> {
    if !membership(g, z) {
        return Err(Error::NotMember);
    }
    let s = g.f.substitute_x(&z.h);
    Ok(-s.get(z.mult).cloned().unwrap_or_else(T::zero))
}

pub fn fat_ideal_free<T: Field>(g: &CurveGerm<T>, z: &FatIdealData<T>) -> Result<bool, Error> {
    let u0 = u_at_zero(g, z)?;
    Ok(is_regular(g) || !u0.is_zero())
}

/// Smallest truncation order accepted by the oracle.
pub fn default_truncation<T: Field>(g: &CurveGerm<T>, z: &FatIdealData<T>) -> usize {
    2 * z.mult + g.f.total_degree() + 2
}

fn jet_index(i: u32, j: u32) -> usize {
    let t = (i + j) as usize;
    t * (t + 1) / 2 + j as usize
}

/// Rows `x^a y^b · p` truncated below total degree `order`, for all shifts
/// of total degree `a + b` in `shifts`.
fn shifted_rows<T: Field>(p: &LocalPoly<T>, shifts: std::ops::Range<usize>, order: usize, out: &mut Vec<Vec<T>>) {
    let width = order * (order + 1) / 2;
    for t in shifts {
        for b in 0..=t as u32 {
            let a = t as u32 - b;
            let mut row = vec![T::zero(); width];
            let mut any = false;
            for ((i, j), c) in p.terms() {
                if (i + j + t as u32) < order as u32 {
                    row[jet_index(i + a, j + b)] = c.clone();
                    any = true;
                }
            }
            if any {
                out.push(row);
            }
        }
    }
}

/// `dim I/mI` in `k[x,y] / ((f) + m^order)`.
pub fn jet_quotient_dim<T: Field>(g: &CurveGerm<T>, z: &FatIdealData<T>, order: usize) -> usize {
    let width = order * (order + 1) / 2;
    let mut relations = Vec::new();
    shifted_rows(&g.f, 0..order, order, &mut relations);
    let gens = z.generators();
    let mut small = relations.clone();
    for p in &gens {
        shifted_rows(p, 1..order, order, &mut small);
    }
    let reduced = Matrix::from_rows(small, width).expect("uniform width").row_basis();
    let mut top = Vec::new();
    for p in &gens {
        shifted_rows(p, 0..1, order, &mut top);
    }
    let top = Matrix::from_rows(top, width).expect("uniform width");
    reduced.vstack(&top).expect("uniform width").rank() - reduced.rows()
}

/// `true` iff `I` needs a single generator in the truncated local ring.
pub fn jet_principality_oracle<T: Field>(g: &CurveGerm<T>, z: &FatIdealData<T>, order: usize) -> Result<bool, Error> {
    let required = default_truncation(g, z);
    if order < required {
        return Err(Error::TruncationTooLow { given: order, required });
    }
    Ok(jet_quotient_dim(g, z, order) == 1)
}

/// Runs the oracle at `order` and `order + 2` and insists on agreement.
pub fn jet_principality_checked<T: Field>(
    g: &CurveGerm<T>,
    z: &FatIdealData<T>,
    order: Option<usize>,
) -> Result<bool, Error> {
    let n = order.unwrap_or_else(|| default_truncation(g, z));
    let a = jet_principality_oracle(g, z, n)?;
    let b = jet_principality_oracle(g, z, n + 2)?;
    if a != b {
        return Err(Error::UnstableTruncation(n, n + 2));
    }
    Ok(a)
}

/// A global form in the affine chart of a fat point: `f∘chart` at `x0 = 1`,
/// with `x = x2` and `y = x1`.
pub fn local_germ<T: Field>(f: &HomPoly<T>, fat: &FatPoint<T>) -> LocalPoly<T> {
    f.substitute_linear(fat.chart())
        .expect("fat point charts are invertible")
        .dehomogenize_chart()
}

/// The ideal of a fat point in its own chart.
pub fn chart_ideal<T: Field>(fat: &FatPoint<T>) -> FatIdealData<T> {
    FatIdealData::new(fat.h().to_vec(), fat.mult()).expect("fat points are validated")
}

fn small<T: Field, R: Rng + ?Sized>(rng: &mut R) -> T {
    T::from_i64(rng.gen_range(-3..=3))
}

fn random_local<T: Field, R: Rng + ?Sized>(rng: &mut R, max_deg: u32, constant: bool) -> LocalPoly<T> {
    let mut p = LocalPoly::zero();
    for t in 0..=max_deg {
        for j in 0..=t {
            if t > 0 || constant {
                p.add_term((t - j, j), small(rng));
            }
        }
    }
    p
}

/// A random germ lying on a random curvilinear ideal, built as
/// `f = (x - h(y))·v - y^m·u`. Each of `u(0)` and `v(0)` is forced to zero
/// half of the time so that singular germs and both verdicts are common.
pub fn sample_member_germ<T: Field, R: Rng + ?Sized>(rng: &mut R) -> (CurveGerm<T>, FatIdealData<T>) {
    loop {
        let mult = rng.gen_range(1..=3usize);
        let mut h = vec![T::zero()];
        h.extend((1..mult).map(|_| small(rng)));
        let z = FatIdealData::new(h, mult).expect("valid by construction");
        let (v_unit, u_unit) = (rng.gen_bool(0.5), rng.gen_bool(0.5));
        let v = random_local(rng, 2, v_unit);
        let u = random_local(rng, 2, u_unit);
        let [g1, g2] = z.generators();
        let f = g1.mul(&v).add(&g2.mul(&u).scale(&-T::one()));
        if let Ok(g) = CurveGerm::new(f) {
            return (g, z);
        }
    }
}
