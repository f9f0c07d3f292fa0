//! Semistandard tableaux on two-row shapes and the `X_T` basis.
//!
//! A tableau of shape `(m+n, n)` has `n` columns of height two and `m`
//! single boxes. Each column `(r, t)` contributes a point variable
//! (`(2,3) -> x1`, `(1,3) -> -x2`, `(1,2) -> x3`), each single box `s` a line
//! variable `u_s`. So `X_T` has bidegree `(n, m)` in `(x, u)`.
//!
//! Bihomogeneous `(x, u)` polynomials split uniquely as
//! `h + (x.u) r` with `h` harmonic, i.e. killed by `sum_i d/dx_i d/du_i`.
//! [`harmonic_project`] returns that split; [`straighten`] expresses the class
//! of a polynomial modulo the trace in the `X_T` basis.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactla::{self, Matrix, Rationals};
use crate::polyring::{Family, Monomial, Poly, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableauError {
    #[error("polynomial is not bihomogeneous")]
    Inhomogeneous,
    #[error("X_T monomials do not span the quotient in bidegree ({0}, {1})")]
    Degenerate(u32, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tableau {
    pub row1: Vec<u8>,
    pub row2: Vec<u8>,
}

impl Tableau {
    /// `(m, n)`: single boxes and full columns.
    pub fn mn(&self) -> (usize, usize) {
        (self.row1.len() - self.row2.len(), self.row2.len())
    }

    pub fn is_semistandard(&self) -> bool {
        let n = self.row2.len();
        self.row1.len() >= n
            && self
                .row1
                .iter()
                .chain(&self.row2)
                .all(|&e| (1..=3).contains(&e))
            && self.row1.windows(2).all(|w| w[0] <= w[1])
            && self.row2.windows(2).all(|w| w[0] <= w[1])
            && (0..n).all(|i| self.row1[i] < self.row2[i])
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r1: Vec<String> = self.row1.iter().map(u8::to_string).collect();
        let r2: Vec<String> = self.row2.iter().map(u8::to_string).collect();
        write!(f, "[{}|{}]", r1.join(" "), r2.join(" "))
    }
}

fn multisets(len: usize, lo: u8) -> Vec<Vec<u8>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in lo..=3 {
        for mut rest in multisets(len - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All semistandard tableaux of shape `(m+n, n)`, lexicographic in `(row1, row2)`.
pub fn enumerate(m: usize, n: usize) -> Vec<Tableau> {
    let mut out = Vec::new();
    for row1 in multisets(m + n, 1) {
        for row2 in multisets(n, 1) {
            let t = Tableau {
                row1: row1.clone(),
                row2,
            };
            if t.is_semistandard() {
                out.push(t);
            }
        }
    }
    out
}

/// Signed monomial `X_T` in the given point and line families.
pub fn tableau_monomial_in(t: &Tableau, point: Family, line: Family) -> (i8, Monomial) {
    let n = t.row2.len();
    let mut m = Monomial::one();
    let mut sign = 1i8;
    for i in 0..n {
        let (var, s) = match (t.row1[i], t.row2[i]) {
            (2, 3) => (0, 1),
            (1, 3) => (1, -1),
            (1, 2) => (2, 1),
            other => panic!("column {other:?} is not strictly increasing"),
        };
        let v = point.var(var);
        m.set_exp(v, m.exp(v) + 1);
        sign *= s;
    }
    for &s in &t.row1[n..] {
        let v = line.var(s as usize - 1);
        m.set_exp(v, m.exp(v) + 1);
    }
    (sign, m)
}

pub fn tableau_monomial(t: &Tableau) -> (i8, Monomial) {
    tableau_monomial_in(t, Family::X, Family::U)
}

pub fn tableau_poly_in(t: &Tableau, point: Family, line: Family) -> Poly {
    let (s, m) = tableau_monomial_in(t, point, line);
    Poly::term(m, Rational::from_integer(s.into()))
}

/// Monomials of bidegree `(dp, dl)` in `(point, line)`, in graded-lex order.
pub fn bidegree_basis(point: Family, line: Family, dp: u32, dl: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for p in exponent_vectors(dp) {
        for l in exponent_vectors(dl) {
            let mut m = Monomial::one();
            for i in 0..3 {
                m.set_exp(point.var(i), p[i]);
                m.set_exp(line.var(i), l[i]);
            }
            out.push(m);
        }
    }
    out.sort();
    out
}

fn exponent_vectors(d: u32) -> Vec<[u8; 3]> {
    let d = d as u8;
    let mut out = Vec::new();
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

/// `x1 u1 + x2 u2 + x3 u3` in the given families.
pub fn trace(point: Family, line: Family) -> Poly {
    (0..3).fold(Poly::zero(), |acc, i| {
        &acc + &(&Poly::var(point.var(i)) * &Poly::var(line.var(i)))
    })
}

/// `sum_i d/dpoint_i d/dline_i`.
pub fn laplacian(p: &Poly, point: Family, line: Family) -> Poly {
    (0..3).fold(Poly::zero(), |acc, i| {
        &acc + &p.derivative(point.var(i)).derivative(line.var(i))
    })
}

/// The pair of families an element is graded by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bigrading {
    pub point: Family,
    pub line: Family,
}

impl Bigrading {
    pub const XU: Bigrading = Bigrading {
        point: Family::X,
        line: Family::U,
    };
    pub const YV: Bigrading = Bigrading {
        point: Family::Y,
        line: Family::V,
    };

    fn families(&self) -> [Family; 2] {
        [self.point, self.line]
    }

    /// Bidegree of a polynomial if it is bihomogeneous in these families.
    pub fn bidegree(&self, p: &Poly) -> Option<(u32, u32)> {
        Some((p.family_degree(self.point)?, p.family_degree(self.line)?))
    }
}

/// Harmonic part `h` and trace cofactor `r` with `p = h + (x.u) r`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicElement {
    pub bidegree: (u32, u32),
    pub harmonic: Poly,
    /// Coordinates of the class of `p` modulo the trace on
    /// `enumerate(dl, dp)` (tableaux with `dp` columns and `dl` boxes).
    /// Empty when `p` has coefficients outside the bigrading; use
    /// [`straighten`] for those.
    pub coords: Vec<Rational>,
}

fn to_vector(p: &Poly, index: &BTreeMap<Monomial, usize>) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); index.len()];
    for (m, c) in p.terms() {
        v[index[m]] = c.clone();
    }
    v
}

fn from_vector(v: &[Rational], basis: &[Monomial]) -> Poly {
    Poly::from_terms(basis.iter().zip(v).map(|(m, c)| (*m, c.clone())))
}

/// Linear data for one bidegree: the harmonic projector on basis monomials
/// and the straightening coordinates of each basis monomial.
struct BidegreeProjector {
    basis: Vec<Monomial>,
    harmonic_of: Vec<Poly>,
    cofactor_of: Vec<Poly>,
    coords_of: Vec<Vec<Rational>>,
}

impl BidegreeProjector {
    fn new(g: Bigrading, dp: u32, dl: u32) -> Result<Self, TableauError> {
        let basis = bidegree_basis(g.point, g.line, dp, dl);
        let index: BTreeMap<Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let tr = trace(g.point, g.line);
        let lower = if dp > 0 && dl > 0 {
            bidegree_basis(g.point, g.line, dp - 1, dl - 1)
        } else {
            Vec::new()
        };
        let lower_index: BTreeMap<Monomial, usize> =
            lower.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        // r -> laplacian(tr * r) is invertible on the lower bidegree.
        let op_cols: Vec<Vec<Rational>> = lower
            .iter()
            .map(|m| {
                to_vector(
                    &laplacian(&(&tr * &Poly::term(*m, Rational::one())), g.point, g.line),
                    &lower_index,
                )
            })
            .collect();
        let op = transpose_matrix(&op_cols, lower.len());
        let tableaux = enumerate(dl as usize, dp as usize);
        let mut span_cols: Vec<Vec<Rational>> = tableaux
            .iter()
            .map(|t| to_vector(&tableau_poly_in(t, g.point, g.line), &index))
            .collect();
        span_cols.extend(
            lower
                .iter()
                .map(|m| to_vector(&(&tr * &Poly::term(*m, Rational::one())), &index)),
        );
        let span = transpose_matrix(&span_cols, basis.len());

        let mut harmonic_of = Vec::with_capacity(basis.len());
        let mut cofactor_of = Vec::with_capacity(basis.len());
        let mut coords_of = Vec::with_capacity(basis.len());
        for m in &basis {
            let e = Poly::term(*m, Rational::one());
            let rhs = to_vector(&laplacian(&e, g.point, g.line), &lower_index);
            let r = if lower.is_empty() {
                Vec::new()
            } else {
                exactla::solve(&Rationals, &op, &rhs)
                    .expect("square system")
                    .ok_or(TableauError::Degenerate(dp, dl))?
            };
            let r = from_vector(&r, &lower);
            harmonic_of.push(&e - &(&tr * &r));
            cofactor_of.push(r);
            let c = exactla::solve(&Rationals, &span, &to_vector(&e, &index))
                .expect("square system")
                .ok_or(TableauError::Degenerate(dp, dl))?;
            coords_of.push(c[..tableaux.len()].to_vec());
        }
        Ok(Self {
            basis,
            harmonic_of,
            cofactor_of,
            coords_of,
        })
    }
}

fn transpose_matrix(cols: &[Vec<Rational>], nrows: usize) -> Matrix<Rational> {
    let rows: Vec<Vec<Rational>> = (0..nrows)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    Matrix::from_rows(&Rationals, cols.len(), rows).expect("rectangular")
}

/// Split `p`, bihomogeneous of bidegree `(dp, dl)` in `(x, u)`, as
/// `harmonic + (x.u) * remainder`.
pub fn harmonic_project(p: &Poly) -> Result<(HarmonicElement, Poly), TableauError> {
    harmonic_project_in(p, Bigrading::XU)
}

pub fn harmonic_project_in(
    p: &Poly,
    g: Bigrading,
) -> Result<(HarmonicElement, Poly), TableauError> {
    let (dp, dl) = match g.bidegree(p) {
        Some(d) => d,
        None if p.is_zero() => (0, 0),
        None => return Err(TableauError::Inhomogeneous),
    };
    let proj = BidegreeProjector::new(g, dp, dl)?;
    let index: BTreeMap<Monomial, usize> = proj
        .basis
        .iter()
        .enumerate()
        .map(|(i, m)| (*m, i))
        .collect();
    let ntab = enumerate(dl as usize, dp as usize).len();
    let mut harmonic = Poly::zero();
    let mut remainder = Poly::zero();
    let mut coords = vec![Rational::zero(); ntab];
    let pure = p.terms().all(|(m, _)| m.split(&g.families()).1.is_one());
    for (mono, coeff) in p.collect(&g.families()) {
        let i = index[&mono];
        harmonic = &harmonic + &(&proj.harmonic_of[i] * &coeff);
        remainder = &remainder + &(&proj.cofactor_of[i] * &coeff);
        if pure {
            let c = coeff.constant_term();
            for (k, v) in proj.coords_of[i].iter().enumerate() {
                coords[k] += v * &c;
            }
        }
    }
    if !pure {
        coords.clear();
    }
    Ok((
        HarmonicElement {
            bidegree: (dp, dl),
            harmonic,
            coords,
        },
        remainder,
    ))
}

/// Coefficients of `p` on the `X_T` basis modulo the trace, where `p` may
/// carry other variables: `p == sum_T coeff_T * X_T  (mod x.u)`.
pub fn straighten(p: &Poly, g: Bigrading) -> Result<Vec<(Tableau, Poly)>, TableauError> {
    let (dp, dl) = g.bidegree(p).ok_or(TableauError::Inhomogeneous)?;
    let proj = BidegreeProjector::new(g, dp, dl)?;
    let index: BTreeMap<Monomial, usize> = proj
        .basis
        .iter()
        .enumerate()
        .map(|(i, m)| (*m, i))
        .collect();
    let tableaux = enumerate(dl as usize, dp as usize);
    let mut out = vec![Poly::zero(); tableaux.len()];
    for (mono, coeff) in p.collect(&g.families()) {
        for (k, v) in proj.coords_of[index[&mono]].iter().enumerate() {
            if !v.is_zero() {
                out[k] = &out[k] + &coeff.scale(v);
            }
        }
    }
    Ok(tableaux.into_iter().zip(out).collect())
}

/// Harmonic projection of the `g`-part of `p`, other variables riding along.
pub fn harmonic_part(p: &Poly, g: Bigrading) -> Result<Poly, TableauError> {
    Ok(harmonic_project_in(p, g)?.0.harmonic)
}

/// Convenience: is the polynomial killed by the Laplacian?
pub fn is_harmonic(p: &Poly, g: Bigrading) -> bool {
    laplacian(p, g.point, g.line).is_zero()
}

pub fn one_third() -> Rational {
    Rational::new(One::one(), 3.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rank;
    use crate::polyring::{weight_of, Var};
    use crate::repcalc::{dim_irrep, weyl_character, Character, DominantWeight};

    fn x(i: usize) -> Var {
        Family::X.var(i - 1)
    }
    fn u(i: usize) -> Var {
        Family::U.var(i - 1)
    }

    #[test]
    fn counts_match_dimension_formula() {
        for m in 0..=8usize {
            for n in 0..=8usize {
                let d = dim_irrep(DominantWeight::of((m + n) as u32, n as u32));
                assert_eq!(enumerate(m, n).len() as u64, d, "({m},{n})");
            }
        }
        assert_eq!(enumerate(1, 0).len(), 3);
        assert_eq!(enumerate(2, 2).len(), 27);
        assert_eq!(enumerate(1, 1).len(), 8);
    }

    #[test]
    fn enumeration_is_sorted_and_semistandard() {
        let ts = enumerate(2, 2);
        assert!(ts
            .windows(2)
            .all(|w| (&w[0].row1, &w[0].row2) < (&w[1].row1, &w[1].row2)));
        assert!(ts.iter().all(Tableau::is_semistandard));
    }

    #[test]
    fn basis_monomials() {
        let t = Tableau {
            row1: vec![1, 2, 2, 2, 3],
            row2: vec![2, 3, 3],
        };
        let m = Monomial::from_pairs([(x(1), 2), (x(3), 1), (u(2), 1), (u(3), 1)]);
        assert_eq!(tableau_monomial(&t), (1, m));
        let t = Tableau {
            row1: vec![1],
            row2: vec![2],
        };
        assert_eq!(tableau_monomial(&t), (1, Monomial::var(x(3))));
        let t = Tableau {
            row1: vec![1],
            row2: vec![3],
        };
        assert_eq!(tableau_monomial(&t), (-1, Monomial::var(x(2))));
    }

    #[test]
    fn basis_monomials_independent() {
        for m in 0..=8usize {
            for n in 0..=(8 - m) {
                let mons: Vec<Monomial> = enumerate(m, n)
                    .iter()
                    .map(|t| tableau_monomial(t).1)
                    .collect();
                let distinct: std::collections::BTreeSet<_> = mons.iter().collect();
                assert_eq!(distinct.len(), mons.len(), "({m},{n})");
            }
        }
    }

    #[test]
    fn projection_examples() {
        let p = &Poly::var(x(1)) * &Poly::var(u(2));
        let (h, r) = harmonic_project(&p).unwrap();
        assert_eq!(h.harmonic, p);
        assert!(r.is_zero());

        let p = &Poly::var(x(1)) * &Poly::var(u(1));
        let (h, r) = harmonic_project(&p).unwrap();
        let tr = trace(Family::X, Family::U);
        assert_eq!(h.harmonic, &p - &tr.scale(&one_third()));
        assert_eq!(r, Poly::constant(one_third()));

        let (h, r) = harmonic_project(&tr).unwrap();
        assert!(h.harmonic.is_zero());
        assert_eq!(r, Poly::one());
        assert!(h.coords.iter().all(Zero::is_zero));
    }

    #[test]
    fn inhomogeneous_rejected() {
        let p = &Poly::var(x(1)) + &Poly::var(u(1));
        assert_eq!(harmonic_project(&p), Err(TableauError::Inhomogeneous));
    }

    #[test]
    fn projection_idempotent_and_kills_trace() {
        let tr = trace(Family::X, Family::U);
        for (dp, dl) in [(2u32, 2u32), (3, 1), (1, 3), (2, 3)] {
            for m in bidegree_basis(Family::X, Family::U, dp, dl)
                .into_iter()
                .step_by(7)
            {
                let p = Poly::term(m, Rational::one());
                let (h, r) = harmonic_project(&p).unwrap();
                assert!(is_harmonic(&h.harmonic, Bigrading::XU));
                assert_eq!(&h.harmonic + &(&tr * &r), p);
                assert_eq!(
                    harmonic_project(&h.harmonic).unwrap().0.harmonic,
                    h.harmonic
                );
            }
        }
        let p = &tr * &(&Poly::var(x(2)) * &Poly::var(u(3)));
        assert!(harmonic_project(&p).unwrap().0.harmonic.is_zero());
    }

    #[test]
    fn harmonic_character_matches_weyl() {
        for (dp, dl) in [(1u32, 1u32), (2, 2), (3, 1), (1, 4), (3, 2)] {
            let basis = bidegree_basis(Family::X, Family::U, dp, dl);
            let harmonics: Vec<Poly> = basis
                .iter()
                .map(|m| harmonic_part(&Poly::term(*m, Rational::one()), Bigrading::XU).unwrap())
                .collect();
            let index: BTreeMap<Monomial, usize> =
                basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
            let rows: Vec<Vec<Rational>> = harmonics.iter().map(|h| to_vector(h, &index)).collect();
            let mat = Matrix::from_rows(&Rationals, basis.len(), rows).unwrap();
            let w = DominantWeight::of(dp + dl, dp);
            assert_eq!(rank(&Rationals, &mat) as u64, dim_irrep(w));
            // Harmonic weight multiplicity = monomials of that weight minus trace multiples.
            let mut ch = Character::zero();
            for m in &basis {
                ch.add_weight(weight_of(m), 1);
            }
            for m in bidegree_basis(
                Family::X,
                Family::U,
                dp.saturating_sub(1),
                dl.saturating_sub(1),
            ) {
                if dp > 0 && dl > 0 {
                    ch.add_weight(weight_of(&m), -1);
                }
            }
            assert_eq!(ch, weyl_character(w));
        }
    }

    #[test]
    fn straightening_reconstructs_modulo_trace() {
        for (dp, dl) in [(2u32, 2u32), (1, 3), (3, 0)] {
            for m in bidegree_basis(Family::X, Family::U, dp, dl)
                .into_iter()
                .step_by(5)
            {
                let p = Poly::term(m, Rational::one());
                let coords = straighten(&p, Bigrading::XU).unwrap();
                let back = coords.iter().fold(Poly::zero(), |acc, (t, c)| {
                    &acc + &(&tableau_poly_in(t, Family::X, Family::U) * c)
                });
                let diff = &p - &back;
                let (h, _) = harmonic_project(&diff).unwrap();
                assert!(h.harmonic.is_zero(), "{p}");
            }
        }
    }
}
