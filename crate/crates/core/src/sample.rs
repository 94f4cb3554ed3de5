//! Deterministic sample grids and seeded random generators of exact data.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exact::{Poly, Rational};

/// Parameter grid for two-parameter families: `primary` ranges over the
/// `u`/`x` coordinate, `secondary` over the `z`/`y` coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleGrid {
    pub primary: Vec<Rational>,
    pub secondary: Vec<Rational>,
}

impl Default for SampleGrid {
    fn default() -> Self {
        SampleGrid {
            primary: [-2, -1, 1, 2, 3].map(Rational::from).to_vec(),
            secondary: [0, 1].map(Rational::from).to_vec(),
        }
    }
}

impl SampleGrid {
    /// All `(primary, secondary)` pairs in row-major order.
    pub fn points(&self) -> impl Iterator<Item = (Rational, Rational)> + '_ {
        self.primary
            .iter()
            .flat_map(move |p| self.secondary.iter().map(move |s| (p.clone(), s.clone())))
    }

    pub fn len(&self) -> usize {
        self.primary.len() * self.secondary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for SampleGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[Rational]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{}:{}", join(&self.primary), join(&self.secondary))
    }
}

impl FromStr for SampleGrid {
    type Err = Error;

    /// `"u1,u2,...:z1,z2,..."`, e.g. `"-2,-1,1,2,3:0,1"`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let (p, q) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("grid {s:?} must look like \"u1,u2:z1,z2\"")))?;
        let parse = |part: &str| -> Result<Vec<Rational>, Error> {
            part.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect()
        };
        let grid = SampleGrid {
            primary: parse(p)?,
            secondary: parse(q)?,
        };
        if grid.is_empty() {
            return Err(Error::Parse(format!("grid {s:?} has no points")));
        }
        Ok(grid)
    }
}

/// Random rational `p/q` with `|p| <= max_numer`, `1 <= q <= max_denom`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, max_numer: i64, max_denom: i64) -> Rational {
    Rational::new(rng.gen_range(-max_numer..=max_numer), rng.gen_range(1..=max_denom))
}

/// Random nonzero rational with the same bounds.
pub fn random_nonzero_rational<R: Rng + ?Sized>(rng: &mut R, max_numer: i64, max_denom: i64) -> Rational {
    loop {
        let r = random_rational(rng, max_numer, max_denom);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, len: usize, max_numer: i64, max_denom: i64) -> Vec<Rational> {
    (0..len).map(|_| random_rational(rng, max_numer, max_denom)).collect()
}

/// Random polynomial of exact degree `degree` with zero constant term.
pub fn random_poly_vanishing_at_zero<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> Poly<Rational> {
    let mut coeffs = vec![Rational::zero()];
    for k in 1..=degree {
        coeffs.push(if k == degree {
            random_nonzero_rational(rng, 4, 3)
        } else {
            random_rational(rng, 4, 3)
        });
    }
    Poly::new(coeffs)
}
