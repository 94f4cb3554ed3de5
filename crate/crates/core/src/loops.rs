//! Two-dimensional loops on `F_{n+2}/H` defined by polynomial data `v_1, ..., v_n`.
//!
//! In the chart `(u, z) ↦ g(u, 0, ..., 0, z) H` the section is
//! `σ(u, z) = g(u, v_1(u), ..., v_n(u), z)` and the product is
//!
//! ```text
//! (u1, z1) * (u2, z2) = (u1 + u2, z1 + z2 + Σ_k (-1)^k u2^k v_k(u1))
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{NestedPoly, Poly, PolyClass, RatMatrix, Rational};
use crate::group::GroupElement;

/// Polynomial data `v_1, ..., v_n` of a loop over `F_{n+2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct LoopSpec {
    n: usize,
    v: Vec<Poly<Rational>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    n: usize,
    v: Vec<Poly<Rational>>,
}

impl TryFrom<RawSpec> for LoopSpec {
    type Error = Error;
    fn try_from(raw: RawSpec) -> Result<Self> {
        if raw.v.len() != raw.n {
            return Err(Error::InvalidSpec(format!(
                "n = {} but {} functions were given",
                raw.n,
                raw.v.len()
            )));
        }
        LoopSpec::new(raw.v)
    }
}

/// Outcome of [`LoopSpec::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub identity_ok: bool,
    pub proper: bool,
    pub reasons: Vec<String>,
}

impl LoopSpec {
    pub fn new(v: Vec<Poly<Rational>>) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::InvalidSpec("at least one function v_1 is required".into()));
        }
        Ok(LoopSpec { n: v.len(), v })
    }

    pub fn from_ints(v: &[&[i64]]) -> Result<Self> {
        LoopSpec::new(v.iter().map(|c| Poly::from_ints(c)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn v(&self) -> &[Poly<Rational>] {
        &self.v
    }

    /// `v_k` with 1-based `k`.
    pub fn v_k(&self, k: usize) -> &Poly<Rational> {
        &self.v[k - 1]
    }

    pub fn identity_ok(&self) -> bool {
        self.v.iter().all(Poly::vanishes_at_zero)
    }

    pub fn is_proper(&self) -> bool {
        self.validate().proper
    }

    /// Identity holds iff every `v_i(0) = 0`; the loop is proper iff in
    /// addition every `v_i` is nonconstant and `v_n` is nonlinear.
    pub fn validate(&self) -> ValidationReport {
        let mut reasons = Vec::new();
        for (i, p) in self.v.iter().enumerate() {
            let c0 = p.coeff(0);
            if !c0.is_zero() {
                reasons.push(format!("v_{}(0) = {} is not zero", i + 1, c0));
            }
        }
        let identity_ok = reasons.is_empty();
        for (i, p) in self.v.iter().enumerate() {
            if matches!(p.classify(), PolyClass::Zero | PolyClass::ConstantNonzero) {
                reasons.push(format!("v_{} is constant", i + 1));
            }
        }
        let last = &self.v[self.n - 1];
        if last.classify() != PolyClass::Nonlinear {
            reasons.push(format!("v_{} is not nonlinear", self.n));
        }
        ValidationReport {
            identity_ok,
            proper: reasons.is_empty(),
            reasons,
        }
    }

    /// `Σ_k (-1)^k u2^k v_k(u1)`, the correction term of the product.
    pub fn twist(&self, u1: &Rational, u2: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let mut power = Rational::one();
        for (k, p) in self.v.iter().enumerate() {
            power *= u2;
            let term = &power * p.eval(u1);
            if k % 2 == 0 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        acc
    }

    /// The section value `σ(u, z) = g(u, v_1(u), ..., v_n(u), z)`.
    pub fn left_translation(&self, a: &LoopPoint) -> GroupElement {
        GroupElement::new(
            a.u.clone(),
            self.v.iter().map(|p| p.eval(&a.u)).collect(),
            a.z.clone(),
        )
        .expect("n >= 1")
    }

    pub fn lmul(&self, a: &LoopPoint, b: &LoopPoint) -> LoopPoint {
        LoopPoint {
            u: &a.u + &b.u,
            z: &a.z + &b.z + self.twist(&a.u, &b.u),
        }
    }

    /// The unique `y` with `a * y = b`.
    pub fn ldiv(&self, a: &LoopPoint, b: &LoopPoint) -> LoopPoint {
        let u = &b.u - &a.u;
        let z = &b.z - &a.z - self.twist(&a.u, &u);
        LoopPoint { u, z }
    }

    /// The unique `x` with `x * a = b`.
    pub fn rdiv(&self, b: &LoopPoint, a: &LoopPoint) -> LoopPoint {
        let u = &b.u - &a.u;
        let z = &b.z - &a.z - self.twist(&u, &a.u);
        LoopPoint { u, z }
    }

    /// Product computed in the group: apply `σ(a)` to the coset of `b` and
    /// read off the representative `g(u', 0, z')` of the image coset.
    pub fn coset_action(&self, a: &LoopPoint, b: &LoopPoint) -> Result<LoopPoint> {
        let image = self.left_translation(a).mul(&b.coset_representative(self.n))?;
        let (slice, _) = image.decompose();
        Ok(LoopPoint::from_slice(&slice))
    }

    /// Solve `σ(u, z) · g(u1, 0, z1) ∈ g(u2, 0, z2) H` for `(u, z)`.
    ///
    /// `u = u2 - u1` is forced; the remaining scalar condition is affine in
    /// `z` because the `v_i` do not depend on `z`. Returns `None` unless that
    /// affine map is bijective.
    pub fn section_solution(&self, from: &LoopPoint, to: &LoopPoint) -> Result<Option<LoopPoint>> {
        let u = &to.u - &from.u;
        let target = from.coset_representative(self.n);
        let residual = |z: &Rational| -> Result<Rational> {
            let g = self.left_translation(&LoopPoint::new(u.clone(), z.clone())).mul(&target)?;
            let (slice, _) = g.decompose();
            debug_assert_eq!(slice.c(), &to.u);
            Ok(slice.b() - &to.z)
        };
        let r0 = residual(&Rational::zero())?;
        let r1 = residual(&Rational::one())?;
        let r2 = residual(&Rational::from(2))?;
        let slope = &r1 - &r0;
        if slope.is_zero() || &r2 - &r1 != slope {
            return Ok(None);
        }
        let z = -(&r0 / &slope);
        if !residual(&z)?.is_zero() {
            return Ok(None);
        }
        Ok(Some(LoopPoint::new(u, z)))
    }

    /// `section_solution` exists for every sample pair and maps `to` back
    /// under the loop product.
    pub fn section_sharply_transitive(&self, samples: &[(LoopPoint, LoopPoint)]) -> Result<bool> {
        for (from, to) in samples {
            match self.section_solution(from, to)? {
                Some(x) if self.lmul(&x, from) == *to => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    /// `Σ_k (-1)^k [u2^k v_k(u1) - u1^k v_k(u2)]` as a polynomial in the outer
    /// variable `u2` with coefficients in the inner variable `u1`.
    ///
    /// The loop is commutative iff this is the zero polynomial.
    pub fn comm_defect(&self) -> NestedPoly {
        let mut acc = NestedPoly::zero();
        for (idx, p) in self.v.iter().enumerate() {
            let k = idx + 1;
            let sign = Rational::sign_power(k);
            // u2^k v_k(u1)
            let first = NestedPoly::monomial(p.clone(), k);
            // u1^k v_k(u2)
            let second = p.map(|c| Poly::monomial(c.clone(), k));
            let term = &first - &second;
            acc = &acc + &term.map(|c| c.scale(&sign));
        }
        acc
    }

    pub fn is_commutative(&self) -> bool {
        self.comm_defect().is_zero()
    }
}

/// A point `(u, z)` of the loop.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LoopPoint {
    pub u: Rational,
    pub z: Rational,
}

impl LoopPoint {
    pub fn new(u: Rational, z: Rational) -> Self {
        LoopPoint { u, z }
    }

    pub fn from_ints(u: i64, z: i64) -> Self {
        LoopPoint::new(u.into(), z.into())
    }

    pub fn identity() -> Self {
        LoopPoint::new(Rational::zero(), Rational::zero())
    }

    /// `g(u, 0, ..., 0, z)` in `F_{n+2}`.
    pub fn coset_representative(&self, n: usize) -> GroupElement {
        GroupElement::new(self.u.clone(), vec![Rational::zero(); n], self.z.clone()).expect("n >= 1")
    }

    fn from_slice(slice: &GroupElement) -> Self {
        LoopPoint::new(slice.c().clone(), slice.b().clone())
    }
}

impl fmt::Display for LoopPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.u, self.z)
    }
}

impl FromStr for LoopPoint {
    type Err = Error;

    /// `"u,z"`.
    fn from_str(s: &str) -> Result<Self> {
        let (u, z) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("point {s:?} must look like \"u,z\"")))?;
        Ok(LoopPoint::new(u.parse()?, z.parse()?))
    }
}

/// Square matrix `A` with `(v_1, ..., v_n)^T = A (x, x^2, ..., x^n)^T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommMatrix {
    n: usize,
    a: RatMatrix,
}

impl CommMatrix {
    pub fn new(a: RatMatrix) -> Result<Self> {
        if !a.is_square() || a.rows() == 0 {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                found: a.cols(),
            });
        }
        Ok(CommMatrix { n: a.rows(), a })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.a
    }

    /// First 1-based pair `(i, j)` with `a_ij != (-1)^(i+j) a_ji`.
    pub fn signed_symmetry_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                let mirrored = Rational::sign_power(i + j) * &self.a[(j, i)];
                if self.a[(i, j)] != mirrored {
                    return Some((i + 1, j + 1));
                }
            }
        }
        None
    }

    pub fn is_signed_symmetric(&self) -> bool {
        self.signed_symmetry_violation().is_none()
    }

    /// `v_i(x) = Σ_j a_ij x^j` without checking signed symmetry.
    pub fn to_spec_unchecked(&self) -> LoopSpec {
        let v = (0..self.n)
            .map(|i| {
                let mut coeffs = vec![Rational::zero()];
                coeffs.extend((0..self.n).map(|j| self.a[(i, j)].clone()));
                Poly::new(coeffs)
            })
            .collect();
        LoopSpec::new(v).expect("n >= 1")
    }
}

/// Loop data read off a signed-symmetric matrix; such loops are commutative.
pub fn spec_from_comm_matrix(a: &CommMatrix) -> Result<LoopSpec> {
    if let Some((i, j)) = a.signed_symmetry_violation() {
        return Err(Error::NotSignedSymmetric { i, j });
    }
    Ok(a.to_spec_unchecked())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> Rational {
        Rational::from(x)
    }

    fn p(u: i64, z: i64) -> LoopPoint {
        LoopPoint::from_ints(u, z)
    }

    fn square() -> LoopSpec {
        LoopSpec::from_ints(&[&[0, 0, 1]]).unwrap()
    }

    fn commutative_f4() -> LoopSpec {
        LoopSpec::from_ints(&[&[0, 0, 1], &[0, -1, 1]]).unwrap()
    }

    #[test]
    fn validate_examples() {
        let r = square().validate();
        assert!(r.identity_ok && r.proper, "{r:?}");
        let r = LoopSpec::from_ints(&[&[0, 3]]).unwrap().validate();
        assert!(r.identity_ok && !r.proper);
        assert_eq!(r.reasons, vec!["v_1 is not nonlinear".to_string()]);
        let r = LoopSpec::from_ints(&[&[1, 0, 1]]).unwrap().validate();
        assert!(!r.identity_ok && !r.proper);
        let r = LoopSpec::from_ints(&[&[0, 0, 1], &[]]).unwrap().validate();
        assert!(r.identity_ok && !r.proper);
        assert_eq!(r.reasons.len(), 2);
    }

    #[test]
    fn lmul_examples() {
        let s = square();
        assert_eq!(s.lmul(&LoopPoint::identity(), &p(4, -3)), p(4, -3));
        assert_eq!(s.lmul(&p(1, 0), &p(1, 0)), p(2, -1));
        assert_eq!(commutative_f4().lmul(&p(1, 0), &p(2, 0)), p(3, -2));
    }

    #[test]
    fn lmul_agrees_with_coset_action() {
        let s = commutative_f4();
        assert_eq!(s.coset_action(&p(1, 0), &p(2, 0)).unwrap(), p(3, -2));
        let s = square();
        assert_eq!(s.coset_action(&p(1, 0), &p(1, 0)).unwrap(), p(2, -1));
    }

    #[test]
    fn division_examples() {
        let s = square();
        let e = LoopPoint::identity();
        assert_eq!(s.ldiv(&e, &e), e);
        assert_eq!(s.ldiv(&p(1, 0), &p(2, -1)), p(1, 0));
        assert_eq!(s.rdiv(&p(5, 7), &e), p(5, 7));
        assert_eq!(s.rdiv(&p(2, -1), &p(1, 0)), p(1, 0));
    }

    #[test]
    fn left_translation_examples() {
        let s = square();
        assert!(s.left_translation(&LoopPoint::identity()).is_identity());
        assert_eq!(
            s.left_translation(&p(1, 5)),
            GroupElement::from_ints(1, &[1], 5).unwrap()
        );
        let image = GroupElement::from_ints(1, &[1], 0)
            .unwrap()
            .mul(&GroupElement::from_ints(1, &[0], 0).unwrap())
            .unwrap();
        let (slice, _) = image.decompose();
        assert_eq!((slice.c(), slice.b()), (&q(2), &q(-1)));
    }

    #[test]
    fn section_examples() {
        let s = square();
        let e = LoopPoint::identity();
        assert_eq!(s.section_solution(&e, &e).unwrap(), Some(e.clone()));
        assert_eq!(s.section_solution(&p(1, 0), &p(2, -1)).unwrap(), Some(p(1, 0)));
        let samples = vec![(p(1, 0), p(2, -1)), (p(-3, 2), p(5, 1)), (e.clone(), p(1, 1))];
        assert!(s.section_sharply_transitive(&samples).unwrap());
        assert!(commutative_f4().section_sharply_transitive(&samples).unwrap());
    }

    #[test]
    fn comm_matrix_examples() {
        let a = CommMatrix::new(RatMatrix::from_int_rows(&[&[0, 1], &[-1, 1]])).unwrap();
        let spec = spec_from_comm_matrix(&a).unwrap();
        assert_eq!(spec, commutative_f4());
        assert!(spec.comm_defect().is_zero());

        let zero = CommMatrix::new(RatMatrix::zeros(3, 3)).unwrap();
        let spec = spec_from_comm_matrix(&zero).unwrap();
        assert!(spec.v().iter().all(Poly::is_zero));
        assert!(!spec.validate().proper);

        let five = CommMatrix::new(RatMatrix::from_int_rows(&[&[5]])).unwrap();
        let spec = spec_from_comm_matrix(&five).unwrap();
        assert_eq!(spec.v_k(1), &Poly::from_ints(&[0, 5]));
        assert!(!spec.validate().proper);

        let bad = CommMatrix::new(RatMatrix::from_int_rows(&[&[0, 1], &[1, 1]])).unwrap();
        assert_eq!(
            spec_from_comm_matrix(&bad),
            Err(Error::NotSignedSymmetric { i: 1, j: 2 })
        );
    }

    #[test]
    fn comm_defect_examples() {
        // -u2 u1^2 + u1 u2^2
        let d = square().comm_defect();
        let expected: NestedPoly = Poly::new(vec![
            Poly::zero(),
            Poly::from_ints(&[0, 0, -1]),
            Poly::from_ints(&[0, 1]),
        ]);
        assert_eq!(d, expected);
        assert!(!square().is_commutative());
        let zeros = LoopSpec::new(vec![Poly::zero(), Poly::zero()]).unwrap();
        assert!(zeros.comm_defect().is_zero());
    }

    #[test]
    fn comm_defect_evaluates_to_product_difference() {
        let s = LoopSpec::from_ints(&[&[0, 1, 2], &[0, -1, 0, 3]]).unwrap();
        let d = s.comm_defect();
        for (u1, u2) in [(1, 2), (-3, 5), (4, -1)] {
            let (a, b) = (p(u1, 0), p(u2, 0));
            let diff = s.lmul(&a, &b).z - s.lmul(&b, &a).z;
            assert_eq!(d.eval2(&q(u1), &q(u2)), diff);
        }
    }

    #[test]
    fn json_shapes() {
        let s: LoopSpec = serde_json::from_str(r#"{"n":2,"v":[["0","0","1"],["0","-1","1"]]}"#).unwrap();
        assert_eq!(s, commutative_f4());
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"n":2,"v":[["0","0","1"],["0","-1","1"]]}"#
        );
        assert!(serde_json::from_str::<LoopSpec>(r#"{"n":2,"v":[["0","1"]]}"#).is_err());
        assert!(serde_json::from_str::<LoopSpec>(r#"{"n":0,"v":[]}"#).is_err());
        let pt = LoopPoint::new(Rational::new(1, 2), q(-3));
        assert_eq!(serde_json::to_string(&pt).unwrap(), r#"{"u":"1/2","z":"-3"}"#);
        assert_eq!("1/2,-3".parse::<LoopPoint>().unwrap(), pt);
        assert!("1/2".parse::<LoopPoint>().is_err());
    }
}
