//! The simply connected elementary filiform group `F_{n+2}` as unipotent
//! `(n+2)×(n+2)` matrices `g(c, a_1, ..., a_n, b)`.
//!
//! Matrix layout (0-based indices, `m = n+1` is the last index):
//!
//! ```text
//! row 0      : 1, a_1, ..., a_n, b
//! row k<=n   : (k, j) = C(k, j) (-c)^(k-j) for 1 <= j <= k,   (k, m) = (-c)^k
//! row m      : 0, ..., 0, 1
//! ```
//!
//! Writing `W(t) = b + a_1 t + ... + a_n t^n`, the group law reads
//! `(c1, W1)(c2, W2) = (c1 + c2, W2(t) + W1(t - c2))`; this gives an
//! independent route to the product used to cross-check the matrix route.
//!
//! The tangent vectors of `c`, `a_i`, `b` at the identity realize the
//! algebra basis as `e_1 ↔ c`, `e_i ↔ a_{n+2-i}` (`2 <= i <= n+1`),
//! `e_{n+2} ↔ b`, with no rescaling: `[E_c, E_{a_i}] = i E_{a_{i-1}}`.

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::exact::{binomial, Poly, RatMatrix, Rational};

/// Parametric element `g(c, a_1, ..., a_n, b)` of `F_{n+2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawElement")]
pub struct GroupElement {
    n: usize,
    c: Rational,
    a: Vec<Rational>,
    b: Rational,
}

#[derive(Deserialize)]
struct RawElement {
    n: usize,
    c: Rational,
    a: Vec<Rational>,
    b: Rational,
}

impl TryFrom<RawElement> for GroupElement {
    type Error = Error;
    fn try_from(raw: RawElement) -> Result<Self> {
        if raw.a.len() != raw.n {
            return Err(Error::DimensionMismatch {
                expected: raw.n,
                found: raw.a.len(),
            });
        }
        GroupElement::new(raw.c, raw.a, raw.b)
    }
}

impl GroupElement {
    /// `n` is taken from `a.len()`, which must be at least 1.
    pub fn new(c: Rational, a: Vec<Rational>, b: Rational) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidSpec("group elements need n >= 1".into()));
        }
        Ok(GroupElement { n: a.len(), c, a, b })
    }

    pub fn from_ints(c: i64, a: &[i64], b: i64) -> Result<Self> {
        GroupElement::new(
            c.into(),
            a.iter().map(|&x| Rational::from(x)).collect(),
            b.into(),
        )
    }

    pub fn identity(n: usize) -> Self {
        GroupElement {
            n,
            c: Rational::zero(),
            a: vec![Rational::zero(); n],
            b: Rational::zero(),
        }
    }

    /// `g(0, ..., 0, b)`, an element of the centre.
    pub fn central(n: usize, b: Rational) -> Self {
        GroupElement {
            b,
            ..GroupElement::identity(n)
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn a(&self) -> &[Rational] {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_identity(&self) -> bool {
        self.c.is_zero() && self.b.is_zero() && self.a.iter().all(Rational::is_zero)
    }

    /// The polynomial `b + a_1 t + ... + a_n t^n`.
    pub fn profile(&self) -> Poly<Rational> {
        let mut coeffs = Vec::with_capacity(self.n + 1);
        coeffs.push(self.b.clone());
        coeffs.extend(self.a.iter().cloned());
        Poly::new(coeffs)
    }

    fn from_profile(n: usize, c: Rational, w: &Poly<Rational>) -> Result<Self> {
        if w.degree().is_some_and(|d| d > n) {
            return Err(Error::PatternMatch { row: 0, col: n + 1 });
        }
        Ok(GroupElement {
            n,
            c,
            a: (1..=n).map(|k| w.coeff(k)).collect(),
            b: w.coeff(0),
        })
    }

    /// The `(n+2)×(n+2)` matrix realization.
    pub fn to_matrix(&self) -> RatMatrix {
        let n = self.n;
        let last = n + 1;
        let mut m = RatMatrix::identity(n + 2);
        for (i, ai) in self.a.iter().enumerate() {
            m[(0, i + 1)] = ai.clone();
        }
        m[(0, last)] = self.b.clone();
        let neg_c = -&self.c;
        let powers: Vec<Rational> = (0..=n).map(|k| neg_c.pow(k as u32)).collect();
        for k in 1..=n {
            for j in 1..k {
                m[(k, j)] = binomial(k, j) * &powers[k - j];
            }
            m[(k, last)] = powers[k].clone();
        }
        m
    }

    /// Recover the parameters from a matrix, rejecting anything outside the family.
    pub fn from_matrix(m: &RatMatrix) -> Result<Self> {
        if !m.is_square() || m.rows() < 3 {
            return Err(Error::DimensionMismatch {
                expected: 3.max(m.cols()),
                found: m.rows(),
            });
        }
        let n = m.rows() - 2;
        let last = n + 1;
        let candidate = GroupElement {
            n,
            c: -&m[(1, last)],
            a: (1..=n).map(|j| m[(0, j)].clone()).collect(),
            b: m[(0, last)].clone(),
        };
        let expected = candidate.to_matrix();
        for row in 0..m.rows() {
            for col in 0..m.cols() {
                if m[(row, col)] != expected[(row, col)] {
                    return Err(Error::PatternMatch { row, col });
                }
            }
        }
        Ok(candidate)
    }

    /// Group product through the matrix realization.
    pub fn mul(&self, rhs: &GroupElement) -> Result<GroupElement> {
        self.check_same(rhs)?;
        GroupElement::from_matrix(&self.to_matrix().mul(&rhs.to_matrix())?)
    }

    /// Group product through `(c1 + c2, W2(t) + W1(t - c2))`.
    pub fn mul_parametric(&self, rhs: &GroupElement) -> Result<GroupElement> {
        self.check_same(rhs)?;
        let shift = Poly::new(vec![-&rhs.c, Rational::one()]);
        let w = &rhs.profile() + &self.profile().compose(&shift);
        GroupElement::from_profile(self.n, &self.c + &rhs.c, &w)
    }

    /// Inverse through the terminating series `(I + N)^{-1} = Σ (-N)^k`.
    pub fn inv(&self) -> GroupElement {
        let size = self.n + 2;
        let m = self.to_matrix();
        let neg_nil = RatMatrix::identity(size).sub(&m).expect("square");
        let mut term = RatMatrix::identity(size);
        let mut acc = RatMatrix::identity(size);
        for _ in 1..size {
            term = term.mul(&neg_nil).expect("square");
            acc = acc.add(&term).expect("square");
        }
        GroupElement::from_matrix(&acc).expect("inverse stays in the family")
    }

    /// `self^{-1} rhs^{-1} self rhs`.
    pub fn commutator(&self, rhs: &GroupElement) -> Result<GroupElement> {
        self.inv().mul(&rhs.inv())?.mul(self)?.mul(rhs)
    }

    /// Membership in `H = {g(0, a, 0)}`.
    pub fn in_h(&self) -> bool {
        self.c.is_zero() && self.b.is_zero()
    }

    /// Split `g(c, a, b) = g(c, 0, b) · g(0, a, 0)`.
    pub fn decompose(&self) -> (GroupElement, HElement) {
        let slice = GroupElement {
            n: self.n,
            c: self.c.clone(),
            a: vec![Rational::zero(); self.n],
            b: self.b.clone(),
        };
        let h = HElement(GroupElement {
            n: self.n,
            c: Rational::zero(),
            a: self.a.clone(),
            b: Rational::zero(),
        });
        (slice, h)
    }

    /// Logarithm through `log(I + N) = Σ_{k=1}^{n+1} (-1)^{k+1} N^k / k`,
    /// expressed in the `e_1, ..., e_{n+2}` coordinates.
    pub fn log(&self) -> Result<AlgebraElement> {
        let size = self.n + 2;
        let nil = self.to_matrix().sub(&RatMatrix::identity(size))?;
        let mut power = nil.clone();
        let mut acc = nil.clone();
        for k in 2..size {
            power = power.mul(&nil)?;
            let coeff = Rational::sign_power(k + 1) / Rational::from(k);
            acc = acc.add(&power.scale(&coeff))?;
        }
        matrix_to_algebra(&acc)
    }

    /// Exponential through the terminating series `Σ_{k=0}^{n+1} X^k / k!`.
    pub fn exp(x: &AlgebraElement) -> Result<GroupElement> {
        let size = x.n() + 2;
        let generator = algebra_to_matrix(x);
        let mut term = RatMatrix::identity(size);
        let mut acc = RatMatrix::identity(size);
        for k in 1..size {
            term = term.mul(&generator)?.scale(&(Rational::one() / Rational::from(k)));
            acc = acc.add(&term)?;
        }
        GroupElement::from_matrix(&acc)
    }

    fn check_same(&self, rhs: &GroupElement) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: rhs.n,
            });
        }
        Ok(())
    }
}

/// An element of the stabilizer subgroup `H = {g(0, a_1, ..., a_n, 0)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct HElement(GroupElement);

impl HElement {
    pub fn new(a: Vec<Rational>) -> Result<Self> {
        GroupElement::new(Rational::zero(), a, Rational::zero()).map(HElement)
    }

    pub fn as_element(&self) -> &GroupElement {
        &self.0
    }

    pub fn into_element(self) -> GroupElement {
        self.0
    }
}

impl TryFrom<GroupElement> for HElement {
    type Error = GroupElement;
    fn try_from(g: GroupElement) -> std::result::Result<Self, GroupElement> {
        if g.in_h() {
            Ok(HElement(g))
        } else {
            Err(g)
        }
    }
}

/// Free-standing product through the matrix route.
pub fn gmul(x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
    x.mul(y)
}

pub fn ginv(x: &GroupElement) -> GroupElement {
    x.inv()
}

pub fn commutator(x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
    x.commutator(y)
}

pub fn in_h(x: &GroupElement) -> bool {
    x.in_h()
}

pub fn decompose(x: &GroupElement) -> (GroupElement, HElement) {
    x.decompose()
}

pub fn glog(x: &GroupElement) -> Result<AlgebraElement> {
    x.log()
}

/// Tangent matrix of the basis vector `e_index` (1-based).
pub fn tangent_matrix(n: usize, index: usize) -> RatMatrix {
    algebra_to_matrix(&AlgebraElement::basis(n, index))
}

/// Matrix realization of an algebra element.
pub fn algebra_to_matrix(x: &AlgebraElement) -> RatMatrix {
    let n = x.n();
    let last = n + 1;
    let mut m = RatMatrix::zeros(n + 2, n + 2);
    let c = x.coeff(1);
    if !c.is_zero() {
        m[(1, last)] = -c;
        for k in 2..=n {
            m[(k, k - 1)] = -(Rational::from(k) * c);
        }
    }
    for i in 2..=n + 1 {
        m[(0, n + 2 - i)] = x.coeff(i).clone();
    }
    m[(0, last)] = x.coeff(n + 2).clone();
    m
}

/// Inverse of [`algebra_to_matrix`]; rejects matrices outside the realization.
pub fn matrix_to_algebra(m: &RatMatrix) -> Result<AlgebraElement> {
    let n = m.rows() - 2;
    let last = n + 1;
    let mut coeffs = vec![Rational::zero(); n + 2];
    coeffs[0] = -&m[(1, last)];
    for i in 2..=n + 1 {
        coeffs[i - 1] = m[(0, n + 2 - i)].clone();
    }
    coeffs[n + 1] = m[(0, last)].clone();
    let x = AlgebraElement::new(n, coeffs)?;
    let rebuilt = algebra_to_matrix(&x);
    for row in 0..m.rows() {
        for col in 0..m.cols() {
            if m[(row, col)] != rebuilt[(row, col)] {
                return Err(Error::LogCoordinates { row, col });
            }
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(c: i64, a: &[i64], b: i64) -> GroupElement {
        GroupElement::from_ints(c, a, b).unwrap()
    }

    fn q(x: i64) -> Rational {
        Rational::from(x)
    }

    #[test]
    fn matrix_n1() {
        let (c, a, b) = (Rational::new(2, 3), q(5), q(-1));
        let m = GroupElement::new(c.clone(), vec![a.clone()], b.clone())
            .unwrap()
            .to_matrix();
        let expected = RatMatrix::from_rows(vec![
            vec![q(1), a, b],
            vec![q(0), q(1), -c],
            vec![q(0), q(0), q(1)],
        ])
        .unwrap();
        assert_eq!(m, expected);
    }

    #[test]
    fn matrix_n2_row_three() {
        let m = g(1, &[0, 0], 0).to_matrix();
        assert_eq!(m.row(2), &[q(0), q(-2), q(1), q(1)]);
        assert_eq!(GroupElement::identity(4).to_matrix(), RatMatrix::identity(6));
    }

    #[test]
    fn matrix_n3_matches_displayed_rows() {
        // row 3: (0, 3c^2, -3c, 1, -c^3)
        let c = q(2);
        let m = GroupElement::new(c, vec![q(0); 3], q(0)).unwrap().to_matrix();
        assert_eq!(m.row(3), &[q(0), q(12), q(-6), q(1), q(-8)]);
        assert_eq!(m.row(2), &[q(0), q(-4), q(1), q(0), q(4)]);
    }

    #[test]
    fn one_parameter_closure_in_c() {
        for n in 1..=6 {
            let x = GroupElement::new(Rational::new(3, 2), vec![q(0); n], q(0)).unwrap();
            let y = GroupElement::new(Rational::new(-5, 7), vec![q(0); n], q(0)).unwrap();
            let sum = GroupElement::new(Rational::new(3, 2) + Rational::new(-5, 7), vec![q(0); n], q(0)).unwrap();
            assert_eq!(x.mul(&y).unwrap(), sum);
        }
    }

    #[test]
    fn gmul_examples() {
        assert_eq!(g(0, &[1], 0).mul(&g(1, &[0], 0)).unwrap(), g(1, &[1], -1));
        assert_eq!(g(1, &[0], 0).mul(&g(0, &[1], 0)).unwrap(), g(1, &[1], 0));
        let x = g(3, &[1, -2, 4], 5);
        assert_eq!(x.mul(&GroupElement::identity(3)).unwrap(), x);
    }

    #[test]
    fn parametric_route_agrees() {
        let x = g(2, &[1, -1, 3], 4);
        let y = g(-1, &[0, 5, 2], 1);
        assert_eq!(x.mul(&y).unwrap(), x.mul_parametric(&y).unwrap());
    }

    #[test]
    fn mismatched_n_is_an_error() {
        assert!(g(1, &[1], 1).mul(&g(1, &[1, 1], 1)).is_err());
        assert!(g(1, &[1], 1).mul_parametric(&g(1, &[1, 1], 1)).is_err());
    }

    #[test]
    fn inverse_examples() {
        let (c, a, b) = (q(2), q(3), q(7));
        let x = GroupElement::new(c.clone(), vec![a.clone()], b.clone()).unwrap();
        let expected = GroupElement::new(-&c, vec![-&a], -&b - &a * &c).unwrap();
        assert_eq!(x.inv(), expected);
        assert_eq!(GroupElement::identity(2).inv(), GroupElement::identity(2));
        let y = g(-3, &[1, 2, 3, 4], 5);
        assert_eq!(y.inv().inv(), y);
        assert!(y.mul(&y.inv()).unwrap().is_identity());
    }

    #[test]
    fn commutator_examples() {
        let k = g(1, &[0], 0).commutator(&g(0, &[1], 0)).unwrap();
        assert_eq!(k, g(0, &[0], 1));
        assert!(!k.in_h());
        let x = g(2, &[1, 3], -1);
        assert!(x.commutator(&x).unwrap().is_identity());
        assert!(x.commutator(&GroupElement::identity(2)).unwrap().is_identity());
    }

    #[test]
    fn h_membership() {
        assert!(g(0, &[1, 2], 0).in_h());
        assert!(!g(1, &[0], 0).in_h());
        assert!(HElement::try_from(g(0, &[1], 1)).is_err());
    }

    #[test]
    fn decompose_examples() {
        let x = g(3, &[-1, 2], 5);
        let (slice, h) = x.decompose();
        assert_eq!(slice, g(3, &[0, 0], 5));
        assert_eq!(h.as_element(), &g(0, &[-1, 2], 0));
        assert_eq!(slice.mul(h.as_element()).unwrap(), x);
        let (s, h) = GroupElement::identity(2).decompose();
        assert!(s.is_identity() && h.as_element().is_identity());
        let (s, h) = g(0, &[4, 1], 0).decompose();
        assert!(s.is_identity());
        assert_eq!(h.into_element(), g(0, &[4, 1], 0));
    }

    #[test]
    fn tangent_matrices_realize_the_bracket_table() {
        for n in 1..=6 {
            for i in 1..=n + 2 {
                for j in 1..=n + 2 {
                    let lhs = tangent_matrix(n, i).commutator(&tangent_matrix(n, j)).unwrap();
                    let br = AlgebraElement::basis(n, i)
                        .bracket(&AlgebraElement::basis(n, j))
                        .unwrap();
                    assert_eq!(lhs, algebra_to_matrix(&br), "n={n} [e{i}, e{j}]");
                }
            }
        }
    }

    #[test]
    fn tangent_matrices_are_derivatives_of_coordinate_curves() {
        // g(c,0,0) = I + c E_c + O(c^2): the linear part of the entries matches.
        let n = 4;
        let t = Rational::new(1, 1000);
        let m = GroupElement::new(t.clone(), vec![q(0); n], q(0)).unwrap().to_matrix();
        let e1 = tangent_matrix(n, 1);
        for k in 1..n + 2 {
            for j in 0..n + 2 {
                let entry = &m[(k, j)] - &RatMatrix::identity(n + 2)[(k, j)];
                let linear = &e1[(k, j)] * &t;
                // entries of order t^2 and beyond are at most ~ C(n,2) t^2
                let diff = (&entry - &linear).abs();
                assert!(diff <= Rational::new(10, 1_000_000), "({k},{j})");
            }
        }
    }

    #[test]
    fn log_examples() {
        assert!(GroupElement::identity(3).log().unwrap().is_zero());
        let central = GroupElement::central(1, q(5)).log().unwrap();
        assert_eq!(central, AlgebraElement::basis(1, 3).scale(&q(5)));
    }

    #[test]
    fn exp_inverts_log() {
        let x = g(2, &[1, -3, 4, 2], -7);
        assert_eq!(GroupElement::exp(&x.log().unwrap()).unwrap(), x);
    }

    #[test]
    fn json_shape() {
        let x = GroupElement::new(Rational::new(1, 2), vec![q(1), q(-2)], q(3)).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"n":2,"c":"1/2","a":["1","-2"],"b":"3"}"#);
        assert_eq!(serde_json::from_str::<GroupElement>(&s).unwrap(), x);
        assert!(serde_json::from_str::<GroupElement>(r#"{"n":3,"c":"0","a":["1"],"b":"0"}"#).is_err());
    }

    #[test]
    fn pattern_match_rejects_foreign_matrix() {
        let mut m = g(1, &[1, 1], 1).to_matrix();
        m[(2, 2)] = q(2);
        assert_eq!(GroupElement::from_matrix(&m), Err(Error::PatternMatch { row: 2, col: 2 }));
    }
}
