//! Multiplication groups of the loops in [`crate::loops`].
//!
//! Three decision procedures live here:
//!
//! * the companion equation deciding whether `Mult(L)` equals the group
//!   `F_{n+2}` generated by the left translations, solved by coefficient
//!   matching in `Q[u][x]`;
//! * the `F_3` case, where the transversal `T = {g(x, a_1 x, ..., a_m x, y)}`
//!   built from `v_1` is checked against the left translations for
//!   `H`-connectedness and joint generation of `F_{m+2}`;
//! * the inner mapping algebra correspondence under `φ`.
//!
//! Generation is decided in the Lie algebra: the logarithms of sampled
//! elements are closed under the bracket, and a second batch of random
//! probe samples must not enlarge the result.

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::algebra::{core_ideal, inn_subalgebra, is_bracket_automorphism, phi_automorphism, subalgebra_closure, SubalgebraBasis};
use crate::error::{Error, Result};
use crate::exact::{NestedPoly, Poly, PolyClass, Rational};
use crate::group::GroupElement;
use crate::loops::LoopSpec;
use crate::report::{Certificate, Report};
use crate::sample::{random_rational, SampleGrid};

/// Fewest commutator pairs an `H`-connectedness certificate accepts.
pub const MIN_COMMUTATOR_PAIRS: usize = 25;

/// Random probe samples drawn per family when confirming that a generated
/// span has stabilized.
pub const PROBES_PER_FAMILY: usize = 5;

/// Default seed for probe samples.
pub const DEFAULT_PROBE_SEED: u64 = 0x5eed_f11f;

/// Functions `s_1, ..., s_n` solving the companion equation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompanionSolution {
    pub s: Vec<Poly<Rational>>,
}

impl CompanionSolution {
    pub fn is_zero(&self) -> bool {
        self.s.iter().all(Poly::is_zero)
    }
}

/// Result of coefficient matching, with the blocking coefficient when there
/// is no solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompanionAnalysis {
    pub solution: Option<CompanionSolution>,
    /// `(power of x, coefficient in u)` of the first right-hand coefficient
    /// the left-hand side cannot match.
    pub obstruction: Option<(usize, Poly<Rational>)>,
}

/// `Σ_k (-1)^k u^k v_k(x)` with outer variable `x`, inner variable `u`.
fn companion_rhs(spec: &LoopSpec) -> NestedPoly {
    let mut rhs = NestedPoly::zero();
    for (idx, v) in spec.v().iter().enumerate() {
        let k = idx + 1;
        let sign = Rational::sign_power(k);
        rhs = &rhs + &v.map(|c| Poly::monomial(c * &sign, k));
    }
    rhs
}

/// `Σ_j (-1)^j x^j (s_j(u) + v_j(u))` with outer variable `x`.
fn companion_lhs(spec: &LoopSpec, s: &[Poly<Rational>]) -> NestedPoly {
    let mut lhs = NestedPoly::zero();
    for (idx, (sj, vj)) in s.iter().zip(spec.v()).enumerate() {
        let j = idx + 1;
        let coeff = (sj + vj).scale(&Rational::sign_power(j));
        lhs = &lhs + &NestedPoly::monomial(coeff, j);
    }
    lhs
}

/// Left side minus right side of the companion equation for a candidate `s`.
pub fn companion_residual(spec: &LoopSpec, s: &[Poly<Rational>]) -> NestedPoly {
    &companion_lhs(spec, s) - &companion_rhs(spec)
}

/// Match coefficients of `x^j` on both sides of
///
/// ```text
/// Σ_j (-1)^j x^j (s_j(u) + v_j(u)) = Σ_k (-1)^k u^k v_k(x)
/// ```
///
/// The left side only reaches `x^1, ..., x^n`, so `s_j` is forced for
/// `j <= n` and every other right-hand coefficient must vanish.
pub fn companion_analysis(spec: &LoopSpec) -> CompanionAnalysis {
    let rhs = companion_rhs(spec);
    let n = spec.n();
    let blocked = rhs
        .coeffs()
        .iter()
        .enumerate()
        .find(|(j, c)| (*j == 0 || *j > n) && !c.is_zero());
    if let Some((j, c)) = blocked {
        return CompanionAnalysis {
            solution: None,
            obstruction: Some((j, c.clone())),
        };
    }
    let s = (1..=n)
        .map(|j| &rhs.coeff(j).scale(&Rational::sign_power(j)) - spec.v_k(j))
        .collect();
    CompanionAnalysis {
        solution: Some(CompanionSolution { s }),
        obstruction: None,
    }
}

/// `Some(s)` iff the companion equation is solvable, i.e. iff `Mult(L)`
/// coincides with the group generated by the left translations.
pub fn solve_companions(spec: &LoopSpec) -> Option<CompanionSolution> {
    companion_analysis(spec).solution
}

/// Loop data `(v_1, ..., v_n)` read as a matrix against `(x, ..., x^n)`,
/// when every `v_i` has zero constant term and degree at most `n`.
pub fn comm_matrix_of(spec: &LoopSpec) -> Option<crate::loops::CommMatrix> {
    let n = spec.n();
    if spec.v().iter().any(|v| !v.vanishes_at_zero() || v.degree().is_some_and(|d| d > n)) {
        return None;
    }
    let rows = spec
        .v()
        .iter()
        .map(|v| (1..=n).map(|j| v.coeff(j)).collect())
        .collect();
    let m = crate::exact::RatMatrix::from_rows(rows).ok()?;
    crate::loops::CommMatrix::new(m).ok()
}

/// Two-parameter family of group elements sampled on a grid.
pub trait ElementFamily {
    fn n(&self) -> usize;
    fn element(&self, s: &Rational, t: &Rational) -> GroupElement;

    fn sample(&self, grid: &SampleGrid) -> Vec<GroupElement> {
        grid.points().map(|(s, t)| self.element(&s, &t)).collect()
    }
}

/// Left translations of a loop: `σ(u, z) = g(u, v_1(u), ..., v_n(u), z)`.
impl ElementFamily for LoopSpec {
    fn n(&self) -> usize {
        LoopSpec::n(self)
    }

    fn element(&self, u: &Rational, z: &Rational) -> GroupElement {
        self.left_translation(&crate::loops::LoopPoint::new(u.clone(), z.clone()))
    }
}

/// `T = {g(x, a_1 x, ..., a_m x, y)}` inside `F_{m+2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransversalSpec {
    pub m: usize,
    pub a: Vec<Rational>,
}

impl TransversalSpec {
    pub fn new(a: Vec<Rational>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidSpec("transversal needs m >= 1".into()));
        }
        Ok(TransversalSpec { m: a.len(), a })
    }

    /// Same family with `a_m` set to zero.
    pub fn degenerate(&self) -> TransversalSpec {
        let mut a = self.a.clone();
        *a.last_mut().expect("m >= 1") = Rational::zero();
        TransversalSpec { m: self.m, a }
    }
}

impl ElementFamily for TransversalSpec {
    fn n(&self) -> usize {
        self.m
    }

    fn element(&self, x: &Rational, y: &Rational) -> GroupElement {
        GroupElement::new(x.clone(), self.a.iter().map(|ak| ak * x).collect(), y.clone()).expect("m >= 1")
    }
}

/// `Λ_{v_1} = {g(u, v_1(u), 0, ..., 0, -v_1(u) u / 2 + z)}` inside `F_{m+2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaEmbedding {
    pub m: usize,
    pub v1: Poly<Rational>,
}

impl LambdaEmbedding {
    pub fn new(m: usize, v1: Poly<Rational>) -> Result<Self> {
        let deg = v1.degree().unwrap_or(0);
        if m == 0 || m < deg {
            return Err(Error::InvalidSpec(format!(
                "ambient F_{} is too small for v_1 of degree {deg}",
                m + 2
            )));
        }
        Ok(LambdaEmbedding { m, v1 })
    }
}

impl ElementFamily for LambdaEmbedding {
    fn n(&self) -> usize {
        self.m
    }

    fn element(&self, u: &Rational, z: &Rational) -> GroupElement {
        let v = self.v1.eval(u);
        let b = z - &(&v * u) / Rational::from(2);
        let mut a = vec![Rational::zero(); self.m];
        a[0] = v;
        GroupElement::new(u.clone(), a, b).expect("m >= 1")
    }
}

pub fn lambda_embedding_elements(emb: &LambdaEmbedding, samples: &[(Rational, Rational)]) -> Vec<GroupElement> {
    samples.iter().map(|(u, z)| emb.element(u, z)).collect()
}

fn check_profile(v1: &Poly<Rational>) -> Result<usize> {
    if !v1.vanishes_at_zero() {
        return Err(Error::InvalidProfile(format!("{v1} does not vanish at 0")));
    }
    if v1.classify() != PolyClass::Nonlinear {
        return Err(Error::InvalidProfile(format!("{v1} is not nonlinear")));
    }
    Ok(v1.degree().expect("nonlinear"))
}

/// The linear transversal solving `x v_1(u) = Σ_k (-1)^{k+1} u^k h_k(x, y)`
/// with `h_k = a_k x`, i.e. `a_k = (-1)^{k+1} [u^k] v_1`.
pub fn thm3_transversal(v1: &Poly<Rational>) -> Result<TransversalSpec> {
    let m = check_profile(v1)?;
    TransversalSpec::new((1..=m).map(|k| Rational::sign_power(k + 1) * v1.coeff(k)).collect())
}

/// `x v_1(u) - Σ_k (-1)^{k+1} u^k (a_k x)` with outer variable `x`, inner `u`;
/// zero iff `T` makes every commutator with `Λ_{v_1}` land in `H`.
pub fn transversal_residual(v1: &Poly<Rational>, t: &TransversalSpec) -> NestedPoly {
    let mut inner = v1.clone();
    for (idx, ak) in t.a.iter().enumerate() {
        let k = idx + 1;
        inner = &inner - &Poly::monomial(Rational::sign_power(k + 1) * ak, k);
    }
    NestedPoly::monomial(inner, 1)
}

/// Dimension of `Mult(L) ≅ F_{deg v_1 + 2}` for the loop with `v_1` alone.
pub fn mult_group_dimension(v1: &Poly<Rational>) -> Result<usize> {
    Ok(check_profile(v1)? + 2)
}

/// A pair whose commutator leaves `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HWitness {
    pub left: GroupElement,
    pub right: GroupElement,
    pub commutator: GroupElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HConnectivity {
    pub connected: bool,
    pub pairs_checked: usize,
    pub witness: Option<HWitness>,
}

/// Whether `a^{-1} b^{-1} a b ∈ H` for every `a ∈ left`, `b ∈ right`.
pub fn check_h_connected(left: &[GroupElement], right: &[GroupElement]) -> Result<HConnectivity> {
    let mut pairs_checked = 0;
    for a in left {
        for b in right {
            let k = a.commutator(b)?;
            pairs_checked += 1;
            if !k.in_h() {
                return Ok(HConnectivity {
                    connected: false,
                    pairs_checked,
                    witness: Some(HWitness {
                        left: a.clone(),
                        right: b.clone(),
                        commutator: k,
                    }),
                });
            }
        }
    }
    Ok(HConnectivity {
        connected: true,
        pairs_checked,
        witness: None,
    })
}

/// Bracket closure of the logarithms of `elements`.
pub fn log_closure(n: usize, elements: &[GroupElement]) -> Result<SubalgebraBasis> {
    let logs = elements.iter().map(GroupElement::log).collect::<Result<Vec<_>>>()?;
    subalgebra_closure(n, &logs)
}

/// Lie algebra of the group generated by `samples`, confirmed by `probes`:
/// adding the probes must not enlarge the closure.
pub fn generated_subalgebra_of(n: usize, samples: &[GroupElement], probes: &[GroupElement]) -> Result<SubalgebraBasis> {
    let base = log_closure(n, samples)?;
    let mut all = samples.to_vec();
    all.extend_from_slice(probes);
    let extended = log_closure(n, &all)?;
    if extended.dim() != base.dim() {
        return Err(Error::Unstable {
            before: base.dim(),
            after: extended.dim(),
        });
    }
    Ok(base)
}

/// [`generated_subalgebra_of`] for families: grid samples plus
/// [`PROBES_PER_FAMILY`] seeded random probes from each family.
pub fn generated_by_families(families: &[&dyn ElementFamily], grid: &SampleGrid, seed: u64) -> Result<SubalgebraBasis> {
    let n = families
        .first()
        .map(|f| f.n())
        .ok_or_else(|| Error::InvalidSpec("no families given".into()))?;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut samples = Vec::new();
    let mut probes = Vec::new();
    for fam in families {
        if fam.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: fam.n(),
            });
        }
        samples.extend(fam.sample(grid));
        for _ in 0..PROBES_PER_FAMILY {
            let s = random_rational(&mut rng, 9, 7);
            let t = random_rational(&mut rng, 9, 7);
            probes.push(fam.element(&s, &t));
        }
    }
    generated_subalgebra_of(n, &samples, &probes)
}

/// Options shared by the report builders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub grid: SampleGrid,
    pub seed: u64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            grid: SampleGrid::default(),
            seed: DEFAULT_PROBE_SEED,
        }
    }
}

fn generation_certificate(name: &str, result: Result<SubalgebraBasis>, want_full: bool) -> Result<Certificate> {
    match result {
        Ok(span) => {
            let pass = span.is_full() == want_full;
            Ok(Certificate::new(name, pass, Some(json!({ "dimension": span.dim() }))))
        }
        Err(Error::Unstable { before, after }) => Ok(Certificate::new(
            name,
            false,
            Some(json!({ "unstable": { "before": before, "after": after } })),
        )),
        Err(e) => Err(e),
    }
}

/// Certify `Mult(L) ≅ F_{m+2}` for the `F_3`-loop with profile `v_1` of degree `m >= 2`.
///
/// Certificates, sorted by name:
/// * `core_trivial`: the algebra `span{e_2, ..., e_{m+1}}` of `H` contains no nonzero ideal;
/// * `degenerate_transversal_rejected`: zeroing `a_m` loses generation;
/// * `full_generation`: `Λ_{v_1} ∪ T` generates the full algebra, stably;
/// * `h_connected`: every sampled commutator of `T` with `Λ_{v_1}` lies in `H`
///   (at least [`MIN_COMMUTATOR_PAIRS`] pairs);
/// * `left_translation_algebra`: `Λ_{v_1}` alone generates a 3-dimensional algebra;
/// * `transversal_identity`: the defining identity of `T` holds formally.
pub fn thm3_pipeline(v1: &Poly<Rational>, opts: &AnalysisOptions) -> Result<Report> {
    let t = thm3_transversal(v1)?;
    let m = t.m;
    let lambda = LambdaEmbedding::new(m, v1.clone())?;
    let mut certs = Vec::new();

    let residual = transversal_residual(v1, &t);
    certs.push(Certificate::new(
        "transversal_identity",
        residual.is_zero(),
        Some(json!({ "a": t.a, "residual": residual })),
    ));

    let lam = lambda.sample(&opts.grid);
    let tra = t.sample(&opts.grid);
    let hc = check_h_connected(&tra, &lam)?;
    let h_pass = hc.connected && hc.pairs_checked >= MIN_COMMUTATOR_PAIRS;
    certs.push(Certificate::new(
        "h_connected",
        h_pass,
        Some(serde_json::to_value(&hc).expect("serializable")),
    ));

    let full = generated_by_families(&[&lambda, &t], &opts.grid, opts.seed);
    certs.push(generation_certificate("full_generation", full, true)?);

    let left_only = generated_by_families(&[&lambda], &opts.grid, opts.seed);
    certs.push(match left_only {
        Ok(span) => Certificate::new(
            "left_translation_algebra",
            span.dim() == 3,
            Some(json!({ "dimension": span.dim() })),
        ),
        Err(Error::Unstable { before, after }) => Certificate::new(
            "left_translation_algebra",
            false,
            Some(json!({ "unstable": { "before": before, "after": after } })),
        ),
        Err(e) => return Err(e),
    });

    let degenerate = t.degenerate();
    let degen = generated_by_families(&[&lambda, &degenerate], &opts.grid, opts.seed);
    certs.push(generation_certificate("degenerate_transversal_rejected", degen, false)?);

    let h_algebra = SubalgebraBasis::coordinate(m, 2, m + 1);
    let core = core_ideal(&h_algebra)?;
    certs.push(Certificate::new(
        "core_trivial",
        core.is_zero(),
        Some(json!({ "core_dimension": core.dim() })),
    ));

    let dim = m + 2;
    let report = Report::new(format!("Mult(L) is isomorphic to F_{dim}"), certs, None);
    let verified = report.all_pass();
    Ok(Report {
        mult_dimension: verified.then_some(dim),
        ..report
    })
}

/// Decide whether `Mult(L)` equals the group `F_{n+2}` generated by the left
/// translations, with certificates for the coefficient matching.
///
/// Certificates, sorted by name:
/// * `coefficient_matching`: a returned solution substitutes back to zero, or
///   the reported obstruction coefficient is genuinely nonzero;
/// * `commutativity_consistency`: when a solution exists, it is zero exactly
///   when the loop is commutative;
/// * `identity`: every `v_i(0) = 0`.
pub fn mult_group_report(spec: &LoopSpec) -> Report {
    let analysis = companion_analysis(spec);
    let n = spec.n();
    let mut certs = vec![Certificate::new("identity", spec.identity_ok(), None)];
    match &analysis.solution {
        Some(sol) => {
            let residual = companion_residual(spec, &sol.s);
            certs.push(Certificate::new(
                "coefficient_matching",
                residual.is_zero(),
                Some(json!({ "residual": residual })),
            ));
            let commutative = spec.is_commutative();
            certs.push(Certificate::new(
                "commutativity_consistency",
                commutative == sol.is_zero(),
                Some(json!({ "commutative": commutative, "companions_zero": sol.is_zero() })),
            ));
        }
        None => {
            let (power, coeff) = analysis.obstruction.clone().expect("obstruction when unsolvable");
            certs.push(Certificate::new(
                "coefficient_matching",
                !coeff.is_zero() && (power == 0 || power > n),
                Some(json!({ "x_power": power, "coefficient": coeff })),
            ));
        }
    }
    let equal = analysis.solution.is_some();
    let claim = if equal {
        format!("Mult(L) coincides with F_{}", n + 2)
    } else {
        format!("Mult(L) is strictly larger than F_{}", n + 2)
    };
    let report = Report::new(claim, certs, None);
    let dim = (equal && report.all_pass()).then_some(n + 2);
    Report {
        mult_dimension: dim,
        ..report
    }
}

/// `φ(a)` maps the inner mapping algebra `inn(a)` onto `span{e_2, ..., e_{n+1}}`.
pub fn inn_correspondence_check(a: &[Rational]) -> Result<bool> {
    let n = a.len();
    let phi = phi_automorphism(a)?;
    let image = phi.image_space(&inn_subalgebra(a)?)?;
    Ok(image == SubalgebraBasis::coordinate(n, 2, n + 1))
}

/// Structural checks on the inner mapping algebra for parameters `a`.
///
/// Certificates: `automorphism` (φ respects the bracket), `correspondence`
/// (φ maps `inn(a)` onto `span{e_2, ..., e_{n+1}}`), `core_trivial`
/// (`inn(a)` contains no nonzero ideal).
pub fn inn_report(a: &[Rational]) -> Result<Report> {
    let n = a.len();
    let phi = phi_automorphism(a)?;
    let inn = inn_subalgebra(a)?;
    let core = core_ideal(&inn)?;
    let certs = vec![
        Certificate::new("automorphism", is_bracket_automorphism(&phi), None),
        Certificate::new(
            "correspondence",
            inn_correspondence_check(a)?,
            Some(json!({ "image": phi.image_space(&inn)? })),
        ),
        Certificate::new(
            "core_trivial",
            core.is_zero(),
            Some(json!({ "core_dimension": core.dim() })),
        ),
    ];
    Ok(Report::new(
        format!("Inn(L) corresponds to <e_2, ..., e_{}> in f_{}", n + 1, n + 2),
        certs,
        None,
    ))
}
