//! Radix maps between coordinate vectors and integers.
//!
//! A cell of a D-dimensional array of side `q` is a vector `i` in `[0, q)^D`;
//! its linear index is `sum_t i_t q^t`, with coordinate 0 the fastest-varying
//! digit. The same map is applied to difference vectors with negative entries,
//! where it stays injective on `{-(q-1), ..., q-1}^D` and vanishes only at the
//! zero vector. That injectivity is what the decoders rely on.

use crate::{Error, Result};

/// A D-vector of integers indexing a cell (or a cell difference).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coord(pub Vec<i64>);

impl Coord {
    pub fn zero(d: usize) -> Self {
        Coord(vec![0; d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Coord) -> Coord {
        Coord(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Coord) -> Coord {
        Coord(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// True when every entry lies in `[0, side)`.
    pub fn in_box(&self, side: i64) -> bool {
        self.0.iter().all(|&x| x >= 0 && x < side)
    }
}

impl std::fmt::Display for Coord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// `sum_t i_t q^t`, computed in 128-bit arithmetic so overflow is detected
/// rather than silent.
pub fn to_value(i: &Coord, q: i64) -> Result<i64> {
    debug_assert!(q >= 2);
    let mut acc: i128 = 0;
    let mut pw: i128 = 1;
    for &x in &i.0 {
        acc = acc
            .checked_add((x as i128).checked_mul(pw).ok_or(Error::Overflow)?)
            .ok_or(Error::Overflow)?;
        pw = pw.checked_mul(q as i128).ok_or(Error::Overflow)?;
    }
    i64::try_from(acc).map_err(|_| Error::Overflow)
}

/// Inverse of [`to_value`] on `[0, q^D)`: the base-q digit vector.
pub fn from_value(v: i64, q: i64, d: usize) -> Result<Coord> {
    debug_assert!(q >= 2);
    let bound = (q as i128).checked_pow(d as u32).ok_or(Error::Overflow)?;
    if v < 0 || (v as i128) >= bound {
        return Err(Error::ValueRange {
            value: v as i128,
            bound,
        });
    }
    let mut v = v;
    let mut out = Vec::with_capacity(d);
    for _ in 0..d {
        out.push(v % q);
        v /= q;
    }
    Ok(Coord(out))
}

/// Entry-wise Euclidean remainder; results lie in `[0, m)`.
pub fn vec_mod(i: &Coord, m: i64) -> Coord {
    debug_assert!(m >= 1);
    Coord(i.0.iter().map(|&x| x.rem_euclid(m)).collect())
}

/// Entry-wise floor division, matching [`vec_mod`] so that
/// `i = m * vec_div_floor(i, m) + vec_mod(i, m)` entry-wise.
pub fn vec_div_floor(i: &Coord, m: i64) -> Coord {
    debug_assert!(m >= 1);
    Coord(i.0.iter().map(|&x| x.div_euclid(m)).collect())
}
