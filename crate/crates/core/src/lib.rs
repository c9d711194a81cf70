//! Exact-arithmetic construction and verification of Jacobi polynomials for
//! parabolic subgroups of Weyl groups: Steinberg generator bases, partial
//! orders on weights, Cherednik operators, the nonsymmetric polynomials
//! `E(lambda, k)`, the parabolic polynomials `p_I(lambda, k)`, their
//! vector-valued forms, and the derived matrix-valued orthogonal polynomials.
//!
//! All coefficients are exact rationals; there is no floating point anywhere.

pub mod cherednik;
pub mod error;
pub mod jacobi;
pub mod laurent;
pub mod linalg;
pub mod multipoly;
pub mod mvop;
pub mod parabolic;
pub mod rootsys;
pub mod vectorize;
pub mod verify;
pub mod weylgroup;

/// The scalar type of the whole crate: exact arbitrary-precision rationals.
pub type Q = num::BigRational;

pub use error::{Error, Result};
pub use rootsys::{Family, Multiplicity, RatVec, RootSystem, Rs, Weight};
pub use weylgroup::WeylElt;

use num::BigInt;

/// Rational `n/d` from machine integers.
pub fn qq(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Rational from an integer.
pub fn qz(n: i64) -> Q {
    Q::from(BigInt::from(n))
}

/// Parse a rational from `"p"` or `"p/q"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if d == BigInt::from(0) {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Q::new(n, d))
}

/// Render a rational as `"p"` or `"p/q"`.
pub fn q_str(x: &Q) -> String {
    if num::One::is_one(x.denom()) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
