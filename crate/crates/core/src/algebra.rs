//! The elementary filiform Lie algebra `f_{n+2}`.
//!
//! Basis `e_1, ..., e_{n+2}` with `[e_1, e_i] = (n+2-i) e_{i+1}` for
//! `2 <= i <= n+1`; every other bracket of basis vectors vanishes.
//! Indices in the public API are 1-based to match that basis.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, null_space, rref, RatMatrix, Rational};

/// Coefficient vector over `e_1, ..., e_{n+2}`; `coeffs[i-1]` is the `e_i` coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawElement")]
pub struct AlgebraElement {
    n: usize,
    coeffs: Vec<Rational>,
}

#[derive(Deserialize)]
struct RawElement {
    n: usize,
    coeffs: Vec<Rational>,
}

impl TryFrom<RawElement> for AlgebraElement {
    type Error = Error;
    fn try_from(raw: RawElement) -> Result<Self> {
        AlgebraElement::new(raw.n, raw.coeffs)
    }
}

impl AlgebraElement {
    pub fn new(n: usize, coeffs: Vec<Rational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("n must be at least 1".into()));
        }
        if coeffs.len() != n + 2 {
            return Err(Error::DimensionMismatch {
                expected: n + 2,
                found: coeffs.len(),
            });
        }
        Ok(AlgebraElement { n, coeffs })
    }

    pub fn from_ints(n: usize, coeffs: &[i64]) -> Result<Self> {
        AlgebraElement::new(n, coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn zero(n: usize) -> Self {
        AlgebraElement {
            n,
            coeffs: vec![Rational::zero(); n + 2],
        }
    }

    /// The basis vector `e_index`, `1 <= index <= n+2`.
    pub fn basis(n: usize, index: usize) -> Self {
        assert!((1..=n + 2).contains(&index), "basis index {index} out of range");
        let mut e = AlgebraElement::zero(n);
        e.coeffs[index - 1] = Rational::one();
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n + 2
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `e_index`.
    pub fn coeff(&self, index: usize) -> &Rational {
        &self.coeffs[index - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn add(&self, rhs: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_same(rhs)?;
        Ok(self.zip(rhs, |a, b| a + b))
    }

    pub fn sub(&self, rhs: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_same(rhs)?;
        Ok(self.zip(rhs, |a, b| a - b))
    }

    pub fn scale(&self, c: &Rational) -> AlgebraElement {
        AlgebraElement {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Lie bracket, extended bilinearly and antisymmetrically from the table.
    pub fn bracket(&self, rhs: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_same(rhs)?;
        let n = self.n;
        let mut out = AlgebraElement::zero(n);
        let x1 = &self.coeffs[0];
        let y1 = &rhs.coeffs[0];
        if x1.is_zero() && y1.is_zero() {
            return Ok(out);
        }
        for i in 2..=n + 1 {
            // [X, Y] picks up (x_1 y_i - y_1 x_i) [e_1, e_i]
            let c = x1 * &rhs.coeffs[i - 1] - y1 * &self.coeffs[i - 1];
            if !c.is_zero() {
                out.coeffs[i] = c * Rational::from(n + 2 - i);
            }
        }
        Ok(out)
    }

    fn check_same(&self, rhs: &AlgebraElement) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: rhs.n,
            });
        }
        Ok(())
    }

    fn zip(&self, rhs: &AlgebraElement, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        AlgebraElement {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "e{}", i + 1)?;
            } else {
                write!(f, "({c})e{}", i + 1)?;
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Free-standing form of [`AlgebraElement::bracket`].
pub fn bracket(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    x.bracket(y)
}

/// A subspace of `f_{n+2}` held as a reduced row-echelon basis.
///
/// Two subspaces are equal iff their bases are equal. Construction through
/// [`SubalgebraBasis::span`] does not check bracket closure; use
/// [`SubalgebraBasis::is_closed`] or [`subalgebra_closure`] for that.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<AlgebraElement>", try_from = "Vec<AlgebraElement>")]
pub struct SubalgebraBasis {
    n: usize,
    basis: Vec<AlgebraElement>,
}

impl From<SubalgebraBasis> for Vec<AlgebraElement> {
    fn from(s: SubalgebraBasis) -> Self {
        s.basis
    }
}

impl TryFrom<Vec<AlgebraElement>> for SubalgebraBasis {
    type Error = Error;
    fn try_from(elems: Vec<AlgebraElement>) -> Result<Self> {
        let n = elems
            .first()
            .map(AlgebraElement::n)
            .ok_or_else(|| Error::Parse("empty basis list carries no dimension".into()))?;
        SubalgebraBasis::span(n, &elems)
    }
}

impl SubalgebraBasis {
    /// Reduced basis of the span of `elems`.
    pub fn span(n: usize, elems: &[AlgebraElement]) -> Result<Self> {
        if let Some(bad) = elems.iter().find(|e| e.n != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.n,
            });
        }
        if elems.is_empty() {
            return Ok(SubalgebraBasis::zero(n));
        }
        let rows: Vec<Vec<Rational>> = elems.iter().map(|e| e.coeffs.clone()).collect();
        let m = RatMatrix::from_rows(rows)?;
        let reduced = rref(&m);
        let basis = (0..reduced.pivots.len())
            .map(|r| AlgebraElement {
                n,
                coeffs: reduced.matrix.row(r).to_vec(),
            })
            .collect();
        Ok(SubalgebraBasis { n, basis })
    }

    pub fn zero(n: usize) -> Self {
        SubalgebraBasis {
            n,
            basis: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        SubalgebraBasis {
            n,
            basis: (1..=n + 2).map(|i| AlgebraElement::basis(n, i)).collect(),
        }
    }

    /// `span{e_from, ..., e_to}` (1-based, inclusive); empty when `from > to`.
    pub fn coordinate(n: usize, from: usize, to: usize) -> Self {
        SubalgebraBasis {
            n,
            basis: (from..=to).map(|i| AlgebraElement::basis(n, i)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[AlgebraElement] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.n + 2
    }

    pub fn contains(&self, x: &AlgebraElement) -> bool {
        if x.n != self.n {
            return false;
        }
        let mut elems = self.basis.clone();
        elems.push(x.clone());
        SubalgebraBasis::span(self.n, &elems).is_ok_and(|s| s.dim() == self.dim())
    }

    pub fn contains_space(&self, other: &SubalgebraBasis) -> bool {
        other.basis.iter().all(|x| self.contains(x))
    }

    /// Every pairwise bracket of basis vectors lies back in the space.
    pub fn is_closed(&self) -> bool {
        self.pairs().all(|(x, y)| {
            x.bracket(y).is_ok_and(|b| self.contains(&b))
        })
    }

    /// Every pairwise bracket of basis vectors vanishes.
    pub fn is_abelian(&self) -> bool {
        self.pairs().all(|(x, y)| x.bracket(y).is_ok_and(|b| b.is_zero()))
    }

    /// `[f_{n+2}, self] ⊆ self`.
    pub fn is_ideal(&self) -> bool {
        (1..=self.n + 2).all(|i| {
            let e = AlgebraElement::basis(self.n, i);
            self.basis
                .iter()
                .all(|x| e.bracket(x).is_ok_and(|b| self.contains(&b)))
        })
    }

    fn pairs(&self) -> impl Iterator<Item = (&AlgebraElement, &AlgebraElement)> {
        self.basis
            .iter()
            .enumerate()
            .flat_map(move |(i, x)| self.basis[i + 1..].iter().map(move |y| (x, y)))
    }
}

impl fmt::Debug for SubalgebraBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (k, b) in self.basis.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ">")
    }
}

/// `g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ ... ⊇ 0`, ending with the zero space.
pub fn lower_central_series(n: usize) -> Result<Vec<SubalgebraBasis>> {
    if n == 0 {
        return Err(Error::InvalidSpec("n must be at least 1".into()));
    }
    let mut series = vec![SubalgebraBasis::full(n)];
    loop {
        let last = series.last().expect("nonempty");
        if last.is_zero() {
            break;
        }
        let mut brackets = Vec::new();
        for i in 1..=n + 2 {
            let e = AlgebraElement::basis(n, i);
            for x in last.basis() {
                brackets.push(e.bracket(x)?);
            }
        }
        let next = SubalgebraBasis::span(n, &brackets)?;
        series.push(next);
    }
    Ok(series)
}

/// Smallest bracket-closed subspace containing `generators`.
pub fn subalgebra_closure(n: usize, generators: &[AlgebraElement]) -> Result<SubalgebraBasis> {
    let mut current = SubalgebraBasis::span(n, generators)?;
    loop {
        let mut elems = current.basis.clone();
        for (x, y) in current.pairs() {
            elems.push(x.bracket(y)?);
        }
        let next = SubalgebraBasis::span(n, &elems)?;
        if next.dim() == current.dim() {
            return Ok(next);
        }
        current = next;
    }
}

/// Normal form of a subalgebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SubalgebraClass {
    /// All brackets inside the subalgebra vanish.
    Commutative,
    /// `V = span{e_1 + t1, e_index, ..., e_{n+2}}` with `t1 ∈ span{e_2, ..., e_{index-1}}`.
    NonCommutative { index: usize, t1: AlgebraElement },
}

/// Classify a bracket-closed subspace into the non-commutative normal form
/// `span{e_1 + t1, e_i, ..., e_{n+2}}`.
///
/// Fails with [`Error::NotClosed`] when `v` is not a subalgebra. A closed
/// subspace whose brackets all vanish is reported as commutative whatever
/// its shape.
pub fn classify_subalgebra(v: &SubalgebraBasis) -> Result<SubalgebraClass> {
    if !v.is_closed() {
        return Err(Error::NotClosed);
    }
    if v.is_abelian() {
        return Ok(SubalgebraClass::Commutative);
    }
    let n = v.n;
    // A non-abelian subalgebra needs an e_1 component; the reduced basis then
    // puts it in the first row with pivot on e_1.
    let head = &v.basis[0];
    if head.coeffs[0].is_zero() {
        return Err(Error::NotClosed);
    }
    let index = n + 4 - v.dim();
    let tail = SubalgebraBasis::span(n, &v.basis[1..])?;
    if tail != SubalgebraBasis::coordinate(n, index, n + 2) {
        return Err(Error::NotClosed);
    }
    let t1 = head.sub(&AlgebraElement::basis(n, 1))?;
    debug_assert!(t1.coeffs[index - 1..].iter().all(Rational::is_zero));
    Ok(SubalgebraClass::NonCommutative { index, t1 })
}

/// Rebuild `span{e_1 + t1, e_index, ..., e_{n+2}}`.
pub fn normal_form_space(n: usize, index: usize, t1: &AlgebraElement) -> Result<SubalgebraBasis> {
    let mut elems = vec![AlgebraElement::basis(n, 1).add(t1)?];
    elems.extend((index..=n + 2).map(|i| AlgebraElement::basis(n, i)));
    SubalgebraBasis::span(n, &elems)
}

/// Largest ideal of `f_{n+2}` contained in `h`.
///
/// Iterates `K_{m+1} = {X ∈ K_m : [e_j, X] ∈ K_m for all j}` from `K_0 = h`.
pub fn core_ideal(h: &SubalgebraBasis) -> Result<SubalgebraBasis> {
    let n = h.n;
    let dim = n + 2;
    let mut current = h.clone();
    loop {
        if current.is_zero() {
            return Ok(current);
        }
        // Functionals vanishing on K_m.
        let k_rows: Vec<Vec<Rational>> = current.basis.iter().map(|b| b.coeffs.clone()).collect();
        let annihilator = null_space(&RatMatrix::from_rows(k_rows)?);
        if annihilator.is_empty() {
            // K_m is everything, hence an ideal.
            return Ok(current);
        }
        // Linear conditions on the coordinates λ of X = Σ λ_r B_r.
        let mut conditions = Vec::new();
        for j in 1..=dim {
            let e = AlgebraElement::basis(n, j);
            let images: Vec<AlgebraElement> = current
                .basis
                .iter()
                .map(|b| e.bracket(b))
                .collect::<Result<_>>()?;
            for f in &annihilator {
                conditions.push(
                    images
                        .iter()
                        .map(|img| img.coeffs.iter().zip(f).map(|(a, b)| a * b).sum())
                        .collect::<Vec<Rational>>(),
                );
            }
        }
        let lambdas = null_space(&RatMatrix::from_rows(conditions)?);
        let elems: Vec<AlgebraElement> = lambdas
            .iter()
            .map(|lam| {
                let mut x = AlgebraElement::zero(n);
                for (l, b) in lam.iter().zip(&current.basis) {
                    x = x.add(&b.scale(l)).expect("same n");
                }
                x
            })
            .collect();
        let next = SubalgebraBasis::span(n, &elems)?;
        if next.dim() == current.dim() {
            return Ok(next);
        }
        current = next;
    }
}

/// `span{e_2 + a_1 e_{n+2}, e_3 + a_2 e_{n+2}, ..., e_{n+1} + a_n e_{n+2}}`.
pub fn inn_subalgebra(a: &[Rational]) -> Result<SubalgebraBasis> {
    let n = a.len();
    if n == 0 {
        return Err(Error::InvalidSpec("parameter vector must be nonempty".into()));
    }
    let top = AlgebraElement::basis(n, n + 2);
    let elems: Vec<AlgebraElement> = a
        .iter()
        .enumerate()
        .map(|(k, ak)| AlgebraElement::basis(n, k + 2).add(&top.scale(ak)))
        .collect::<Result<_>>()?;
    SubalgebraBasis::span(n, &elems)
}

/// Linear endomorphism of `f_{n+2}`; column `j-1` of `matrix` is the image of `e_j`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearMap {
    n: usize,
    matrix: RatMatrix,
}

impl LinearMap {
    pub fn new(n: usize, matrix: RatMatrix) -> Result<Self> {
        if matrix.rows() != n + 2 || matrix.cols() != n + 2 {
            return Err(Error::DimensionMismatch {
                expected: n + 2,
                found: matrix.rows().max(matrix.cols()),
            });
        }
        Ok(LinearMap { n, matrix })
    }

    pub fn identity(n: usize) -> Self {
        LinearMap {
            n,
            matrix: RatMatrix::identity(n + 2),
        }
    }

    /// Map sending `e_j` to `images[j-1]`.
    pub fn from_images(n: usize, images: &[AlgebraElement]) -> Result<Self> {
        if images.len() != n + 2 {
            return Err(Error::DimensionMismatch {
                expected: n + 2,
                found: images.len(),
            });
        }
        let mut matrix = RatMatrix::zeros(n + 2, n + 2);
        for (j, img) in images.iter().enumerate() {
            if img.n != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: img.n,
                });
            }
            for (i, c) in img.coeffs.iter().enumerate() {
                matrix[(i, j)] = c.clone();
            }
        }
        Ok(LinearMap { n, matrix })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        if x.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.n,
            });
        }
        AlgebraElement::new(self.n, self.matrix.mul_vec(&x.coeffs)?)
    }

    /// Image of `e_index`.
    pub fn image_of_basis(&self, index: usize) -> AlgebraElement {
        AlgebraElement {
            n: self.n,
            coeffs: self.matrix.column(index - 1),
        }
    }

    pub fn image_space(&self, v: &SubalgebraBasis) -> Result<SubalgebraBasis> {
        let images: Vec<AlgebraElement> = v.basis.iter().map(|x| self.apply(x)).collect::<Result<_>>()?;
        SubalgebraBasis::span(self.n, &images)
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_map();
        for j in 1..=self.n + 2 {
            list.entry(&format_args!("e{j}"), &self.image_of_basis(j));
        }
        list.finish()
    }
}

/// The automorphism `φ` with `φ(e_1) = e_1`, `φ(e_{n+2}) = e_{n+2}` and
///
/// ```text
/// φ(e_j) = e_j - Σ_{r=1}^{n+2-j} C(n+2-j, r) a_{n+1-r} e_{j+r},   2 <= j <= n+1
/// ```
///
/// so that `φ(e_j + a_{j-1} e_{n+2}) ∈ span{e_2, ..., e_{n+1}}`. The
/// binomial weights are the ones that make `φ` commute with `ad e_1`.
pub fn phi_automorphism(a: &[Rational]) -> Result<LinearMap> {
    let n = a.len();
    if n == 0 {
        return Err(Error::InvalidSpec("parameter vector must be nonempty".into()));
    }
    let mut matrix = RatMatrix::identity(n + 2);
    for j in 2..=n + 1 {
        let span = n + 2 - j;
        for r in 1..=span {
            let coeff = binomial(span, r) * &a[n - r];
            // row j+r, column j (both 1-based)
            matrix[(j + r - 1, j - 1)] = -coeff;
        }
    }
    LinearMap::new(n, matrix)
}

/// Invertible and `m([e_i, e_j]) = [m(e_i), m(e_j)]` for all basis pairs.
pub fn is_bracket_automorphism(m: &LinearMap) -> bool {
    if m.matrix.inverse().is_none() {
        return false;
    }
    let n = m.n;
    for i in 1..=n + 2 {
        for j in i + 1..=n + 2 {
            let ei = AlgebraElement::basis(n, i);
            let ej = AlgebraElement::basis(n, j);
            let lhs = ei.bracket(&ej).and_then(|b| m.apply(&b));
            let rhs = m.image_of_basis(i).bracket(&m.image_of_basis(j));
            match (lhs, rhs) {
                (Ok(l), Ok(r)) if l == r => {}
                _ => return false,
            }
        }
    }
    true
}
