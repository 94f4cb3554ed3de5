//! Fixed inputs shared by the benchmarks.

use filiform_core::group::GroupElement;
use filiform_core::loops::{LoopPoint, LoopSpec};
use filiform_core::{Poly, Rational};

/// A dense element of `F_{n+2}` with small non-integral coordinates.
pub fn element(n: usize, seed: i64) -> GroupElement {
    let q = |k: i64| Rational::new(seed + k, 3 + k.rem_euclid(4));
    GroupElement::new(q(1), (0..n as i64).map(|k| q(k - 2)).collect(), q(5)).expect("n >= 1")
}

/// Proper spec over `F_{n+2}` with every `v_i` of degree `n + 1`.
pub fn spec(n: usize) -> LoopSpec {
    let v = (1..=n)
        .map(|i| {
            let mut c = vec![Rational::zero()];
            c.extend((1..=n + 1).map(|k| Rational::new((i + k) as i64, 2)));
            Poly::new(c)
        })
        .collect();
    LoopSpec::new(v).expect("n >= 1")
}

pub fn point(u: (i64, i64), z: (i64, i64)) -> LoopPoint {
    LoopPoint::new(Rational::new(u.0, u.1), Rational::new(z.0, z.1))
}
