//! Exact computations in lattice vertex operator algebras.
//!
//! The crate is organised bottom-up: [`lattice`] holds Gram data, cocycles and
//! submonoids; [`fock`] the Fock space states; [`vertex`] the mode algorithm and
//! axiom checks; [`azalg`] the presented Zhu algebras; [`zhu`] the Zhu products
//! and normal-form maps; [`modvoa`] module actions; [`bilform`] the invariant
//! bilinear form.

pub mod azalg;
pub mod bilform;
pub mod error;
pub mod fock;
pub mod lattice;
pub mod linalg;
pub mod modvoa;
pub mod vertex;
pub mod zhu;

pub use error::{Error, Result};

use num::{BigInt, BigRational, One, ToPrimitive, Zero};

/// Exact scalar.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Generalized binomial coefficient `C(n, j)` for any integer `n` and `j >= 0`.
pub fn binom(n: i64, j: i64) -> Q {
    if j < 0 {
        return Q::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..j {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    Q::new(num, den)
}

pub fn factorial(n: u32) -> Q {
    (1..=n as i64).fold(Q::one(), |acc, i| acc * q(i))
}

pub fn to_int(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

pub(crate) fn sign_pow(e: i64) -> Q {
    if e.rem_euclid(2) == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

/// `floor(x)` as an `i64`.
pub(crate) fn floor_i64(x: &Q) -> i64 {
    x.floor().to_integer().to_i64().expect("weight out of range")
}

/// Renders a rational the way the expression grammar reads it.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
