//! Prime fields F_p, prime-power extensions F_{p^s}, and Lee weights.

use crate::{Error, Result};

/// Trial-division primality test; the moduli here are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Lee value of a residue: `min(a, p - a)`.
pub fn lee_value(a: u64, p: u64) -> u64 {
    debug_assert!(a < p);
    a.min(p - a)
}

/// Lee weight of a residue vector: the sum of Lee values over the integers.
pub fn lee_weight(v: &[u64], p: u64) -> u64 {
    v.iter().map(|&a| lee_value(a, p)).sum()
}

/// The prime field F_p for an odd prime p. Elements are residues in `[0, p)`.
#[derive(Debug, Clone)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p == 2 {
            return Err(Error::Param(format!("{p} is not an odd prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.p;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a.is_multiple_of(self.p) {
            return Err(Error::InverseOfZero);
        }
        Ok(self.pow(a, self.p - 2))
    }
}

/// The field F_{p^s} realized as `F_p[x]` modulo the smallest root-free monic
/// polynomial of degree s (order-checked, so it is in fact irreducible), with
/// a fixed primitive element `gamma` found by smallest-element search.
///
/// Elements are packed radix-p: the element with coefficients `c_0..c_{s-1}`
/// is the integer `sum c_t p^t`, so elements range over `[0, p^s)`.
#[derive(Debug, Clone)]
pub struct PrimeExtField {
    p: u64,
    s: u32,
    modulus: Vec<u64>,
    gamma: u64,
    size: u64,
}

impl PrimeExtField {
    pub fn new(p: u64, s: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Param(format!("{p} is not prime")));
        }
        if s == 0 {
            return Err(Error::Param("extension degree s must be >= 1".into()));
        }
        let size = (p as u128).checked_pow(s).and_then(|v| {
            if v <= u64::MAX as u128 / 2 {
                Some(v as u64)
            } else {
                None
            }
        });
        let size = size.ok_or(Error::Overflow)?;
        if s == 1 {
            // F_p itself; modulus x, no reduction work to do
            let mut f = PrimeExtField {
                p,
                s,
                modulus: vec![0],
                gamma: 0,
                size,
            };
            f.gamma = f
                .find_generator()
                .ok_or_else(|| Error::Param(format!("no generator found for F_{p}")))?;
            return Ok(f);
        }
        // lower-coefficient vectors in packed order; first candidate whose
        // polynomial is root-free and admits a generator wins
        for low in 0..size {
            let modulus: Vec<u64> = Self::digits_of(low, p, s as usize);
            let cand = PrimeExtField {
                p,
                s,
                modulus,
                gamma: 0,
                size,
            };
            if !cand.modulus_root_free() {
                continue;
            }
            if let Some(g) = cand.find_generator() {
                let mut f = cand;
                f.gamma = g;
                return Ok(f);
            }
        }
        Err(Error::Param(format!(
            "no irreducible modulus found for p = {p}, s = {s}"
        )))
    }

    fn digits_of(v: u64, p: u64, len: usize) -> Vec<u64> {
        let mut v = v;
        (0..len)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    fn modulus_root_free(&self) -> bool {
        // Horner evaluation of x^s + sum modulus[t] x^t at every r in F_p
        (0..self.p).all(|r| {
            let mut acc = 1u64;
            for t in (0..self.s as usize).rev() {
                acc = (acc * r + self.modulus[t]) % self.p;
            }
            acc != 0
        })
    }

    fn find_generator(&self) -> Option<u64> {
        let order = self.size - 1;
        if order == 1 {
            return Some(1);
        }
        let prime_factors = distinct_prime_factors(order);
        (2..self.size).find(|&g| {
            self.pow(g, order) == 1 && prime_factors.iter().all(|&q| self.pow(g, order / q) != 1)
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// Number of field elements, p^s.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// The fixed primitive element.
    pub fn gamma(&self) -> u64 {
        self.gamma
    }

    /// Coefficient of x^k in the packed element.
    pub fn coeff(&self, el: u64, k: u32) -> u64 {
        let mut v = el;
        for _ in 0..k {
            v /= self.p;
        }
        v % self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let da = Self::digits_of(a, self.p, self.s as usize);
        let db = Self::digits_of(b, self.p, self.s as usize);
        let mut out = 0u64;
        let mut pw = 1u64;
        for t in 0..self.s as usize {
            out += (da[t] + db[t]) % self.p * pw;
            pw *= self.p;
        }
        out
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let s = self.s as usize;
        let da = Self::digits_of(a, self.p, s);
        let db = Self::digits_of(b, self.p, s);
        let mut conv = vec![0u64; 2 * s - 1];
        for i in 0..s {
            if da[i] == 0 {
                continue;
            }
            for j in 0..s {
                conv[i + j] = (conv[i + j] + da[i] * db[j]) % self.p;
            }
        }
        // reduce x^k = -modulus * x^(k-s) for k from high to s
        for k in (s..2 * s - 1).rev() {
            let c = conv[k];
            if c == 0 {
                continue;
            }
            conv[k] = 0;
            for t in 0..s {
                let sub = c * self.modulus[t] % self.p;
                conv[k - s + t] = (conv[k - s + t] + self.p - sub) % self.p;
            }
        }
        let mut out = 0u64;
        let mut pw = 1u64;
        for item in conv.iter().take(s) {
            out += item * pw;
            pw *= self.p;
        }
        out
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// All field elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.size
    }
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
