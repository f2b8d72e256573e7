//! GF(2^m) in polynomial basis with eager log/antilog tables.

use crate::{Error, Result};

/// Largest supported extension degree; bounds log-table memory.
pub const MAX_DEGREE: u32 = 24;

/// `PRIMITIVE_POLYS[m]` is the lexicographically smallest primitive polynomial
/// of degree `m` over GF(2), encoded with bit `k` holding the coefficient of
/// `x^k` (so `0xb` is `x^3 + x + 1`). Index 0 is unused. Smallest here means
/// smallest as an integer under this encoding, which orders polynomials of
/// equal degree lexicographically by coefficients from high power to low.
pub const PRIMITIVE_POLYS: [u32; 25] = [
    0, 0x3, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11d, 0x211, 0x409, 0x805, 0x1053, 0x201b, 0x402b,
    0x8003, 0x1002d, 0x20009, 0x40027, 0x80027, 0x100009, 0x200005, 0x400003, 0x800021, 0x100001b,
];

/// The field GF(2^m) with the canonical modulus from [`PRIMITIVE_POLYS`] and
/// primitive element `alpha = x` (`alpha = 1` for m = 1).
///
/// Elements are bit masks over the polynomial basis. Multiplication, inversion
/// and discrete logs go through the tables built at construction, so each
/// operation is O(1).
pub struct BinaryExtField {
    m: u32,
    modulus: u32,
    log: Vec<u32>,
    antilog: Vec<u32>,
}

impl BinaryExtField {
    /// Build GF(2^m), 1 <= m <= 24.
    ///
    /// Construction walks the powers of `x` and checks they cycle with period
    /// exactly `2^m - 1`, which certifies the modulus primitive.
    pub fn new(m: u32) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&m) {
            return Err(Error::Param(format!(
                "extension degree m = {m} outside 1..={MAX_DEGREE}"
            )));
        }
        let modulus = PRIMITIVE_POLYS[m as usize];
        let order = (1u64 << m) - 1;
        let mut antilog = vec![0u32; order as usize];
        let mut log = vec![u32::MAX; 1usize << m];
        let mut v: u32 = 1;
        for k in 0..order {
            if log[v as usize] != u32::MAX {
                return Err(Error::Param(format!(
                    "modulus {modulus:#x} is not primitive for m = {m}"
                )));
            }
            antilog[k as usize] = v;
            log[v as usize] = k as u32;
            v <<= 1;
            if v >> m & 1 == 1 {
                v ^= modulus;
            }
        }
        if v != 1 {
            return Err(Error::Param(format!(
                "order check failed for modulus {modulus:#x}, m = {m}"
            )));
        }
        Ok(BinaryExtField {
            m,
            modulus,
            log,
            antilog,
        })
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Number of field elements, `2^m`.
    pub fn size(&self) -> u64 {
        1u64 << self.m
    }

    /// Multiplicative order of `alpha`, `2^m - 1`.
    pub fn order(&self) -> u64 {
        (1u64 << self.m) - 1
    }

    /// The fixed primitive element: the class of `x` (which is 1 when m = 1).
    pub fn alpha(&self) -> u32 {
        self.antilog[1 % self.antilog.len()]
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % self.order();
        self.antilog[e as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::InverseOfZero);
        }
        let e = (self.order() - self.log[a as usize] as u64) % self.order();
        Ok(self.antilog[e as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for a possibly huge or negative exponent (reduced mod `2^m - 1`).
    pub fn pow(&self, a: u32, e: i128) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let ord = self.order() as i128;
        let e = ((self.log[a as usize] as i128 * (e % ord)) % ord).rem_euclid(ord);
        self.antilog[e as usize]
    }

    /// `alpha^e`, the workhorse of every column rule; `e` is reduced mod `2^m - 1`.
    pub fn alpha_pow(&self, e: i128) -> u32 {
        let e = e.rem_euclid(self.order() as i128) as usize;
        self.antilog[e]
    }

    pub fn cube(&self, a: u32) -> u32 {
        self.mul(self.mul(a, a), a)
    }

    /// Discrete log base `alpha`; errors on zero.
    pub fn dlog(&self, x: u32) -> Result<u64> {
        if x == 0 {
            return Err(Error::DlogOfZero);
        }
        Ok(self.log[x as usize] as u64)
    }

    /// All field elements in integer order, 0..2^m.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..(1u32 << self.m)
    }
}
