//! Lee-metric BCH codes over F_p.
//!
//! The parity-check matrix has rows `1, alpha_i, alpha_i^2, ..., alpha_i^(b-1)`
//! over F_{p^s} with distinct locators `alpha_i = gamma^i`; expanding each
//! F_{p^s} row into s rows over F_p and dropping dependent rows gives a code of
//! redundancy at most `1 + (b-1)s` and Lee distance at least `2b`, so every
//! error of Lee weight below `b` has its own syndrome. Decoding is a coset
//! table: at these lengths the table of all low-Lee-weight vectors is small,
//! which sidesteps the algebraic decoder entirely.

use std::collections::HashMap;

use crate::algebra::{is_prime, lee_weight, PrimeExtField};
use crate::{Error, Result};

/// A Lee-metric BCH code over F_p of length D correcting Lee weight <= b - 1.
pub struct LeeBchCode {
    p: u64,
    b: i64,
    len: usize,
    s: u32,
    a_mat: Vec<Vec<u64>>,
    table: HashMap<u64, Vec<u64>>,
}

impl LeeBchCode {
    /// Build the code; requires p prime, p >= 2b + 1.
    ///
    /// The extension degree is `s = ceil(log_p(D + 1))` so the locator field
    /// holds D distinct powers of its primitive element.
    pub fn new(p: u64, b: i64, d: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Param(format!("{p} is not prime")));
        }
        if b < 2 {
            return Err(Error::Param(format!("b = {b} must be >= 2")));
        }
        if (p as i64) < 2 * b + 1 {
            return Err(Error::Param(format!(
                "need p >= 2b + 1, got p = {p}, b = {b}"
            )));
        }
        if d == 0 {
            return Err(Error::Param("length D must be >= 1".into()));
        }
        let s = smallest_power_at_least(p, d as u64 + 1);
        let field = PrimeExtField::new(p, s)?;
        let gamma = field.gamma();
        let locators: Vec<u64> = {
            let mut acc = 1u64;
            (0..d)
                .map(|_| {
                    let cur = acc;
                    acc = field.mul(acc, gamma);
                    cur
                })
                .collect()
        };
        // rows over F_p: the all-ones row once, then each power r in 1..b
        // expanded into s coordinate rows
        let mut rows: Vec<Vec<u64>> = vec![vec![1u64; d]];
        for r in 1..b as u64 {
            for k in 0..s {
                rows.push(
                    locators
                        .iter()
                        .map(|&al| field.coeff(field.pow(al, r), k))
                        .collect(),
                );
            }
        }
        let a_mat = row_reduce_mod_p(&rows, p);
        debug_assert!(a_mat.len() as i64 <= 1 + (b - 1) * s as i64);

        let mut code = LeeBchCode {
            p,
            b,
            len: d,
            s,
            a_mat,
            table: HashMap::new(),
        };
        code.build_table()?;
        Ok(code)
    }

    /// Enumerate every integer vector with `sum |eps_t| <= b - 1`, reduce mod p
    /// and file its syndrome. A collision would mean the Lee distance is below
    /// 2b, i.e. a broken construction, and aborts loudly.
    fn build_table(&mut self) -> Result<()> {
        let mut eps = vec![0i64; self.len];
        let mut table = HashMap::new();
        self.enumerate_low_lee(&mut eps, 0, self.b - 1, &mut |residues| {
            let key = self.syndrome_key(&self.syndrome(residues));
            if let Some(prev) = table.insert(key, residues.to_vec()) {
                if prev != residues {
                    return Err(Error::SyndromeCollision(format!(
                        "Lee code p={}, b={}, D={}: {:?} vs {:?}",
                        self.p, self.b, self.len, prev, residues
                    )));
                }
            }
            Ok(())
        })?;
        self.table = table;
        Ok(())
    }

    fn enumerate_low_lee(
        &self,
        eps: &mut Vec<i64>,
        pos: usize,
        budget: i64,
        f: &mut impl FnMut(&[u64]) -> Result<()>,
    ) -> Result<()> {
        if pos == self.len {
            let residues: Vec<u64> = eps
                .iter()
                .map(|&e| e.rem_euclid(self.p as i64) as u64)
                .collect();
            return f(&residues);
        }
        for e in -budget..=budget {
            eps[pos] = e;
            self.enumerate_low_lee(eps, pos + 1, budget - e.abs(), f)?;
        }
        eps[pos] = 0;
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Locator-field extension degree.
    pub fn s(&self) -> u32 {
        self.s
    }

    /// Redundancy: number of (independent) parity rows.
    pub fn rank(&self) -> usize {
        self.a_mat.len()
    }

    /// The full-rank parity-check matrix over F_p.
    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.a_mat
    }

    /// Number of coset leaders in the decode table.
    pub fn table_len(&self) -> usize {
        self.table.len()
    }

    /// `A v mod p`.
    pub fn syndrome(&self, v: &[u64]) -> Vec<u64> {
        debug_assert_eq!(v.len(), self.len);
        self.a_mat
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &x)| (acc + a * x) % self.p)
            })
            .collect()
    }

    /// Pack a syndrome vector radix-p into a table key.
    pub fn syndrome_key(&self, syn: &[u64]) -> u64 {
        syn.iter().rev().fold(0u64, |acc, &x| acc * self.p + x)
    }

    /// The coset leader of Lee weight <= b - 1 with this syndrome, or None.
    pub fn decode(&self, syn: &[u64]) -> Option<&Vec<u64>> {
        self.table.get(&self.syndrome_key(syn))
    }

    /// Exact minimum Lee weight over nonzero codewords; None when the kernel
    /// is trivial.
    pub fn min_distance_bruteforce(&self, cap: u64) -> Result<Option<u64>> {
        let total = (self.p as u128)
            .checked_pow(self.len as u32)
            .ok_or(Error::Overflow)?;
        if total > cap as u128 {
            return Err(Error::CapExceeded {
                what: "kernel vectors",
                value: total,
                cap: cap as u128,
            });
        }
        let mut best: Option<u64> = None;
        let mut v = vec![0u64; self.len];
        for idx in 1..total as u64 {
            let mut x = idx;
            for slot in v.iter_mut() {
                *slot = x % self.p;
                x /= self.p;
            }
            if self.syndrome(&v).iter().all(|&s| s == 0) {
                let w = lee_weight(&v, self.p);
                best = Some(best.map_or(w, |cur| cur.min(w)));
            }
        }
        Ok(best)
    }
}

/// Lift residues known to have Lee weight <= b - 1 back to the unique integer
/// vector with entries in `[-(b-1), b-1]`.
pub fn lift_residues(eps_mod_p: &[u64], b: i64, p: u64) -> Result<Vec<i64>> {
    eps_mod_p
        .iter()
        .map(|&e| {
            if (e as i64) < b {
                Ok(e as i64)
            } else if e as i64 > p as i64 - b {
                Ok(e as i64 - p as i64)
            } else {
                Err(Error::ForbiddenResidue(e))
            }
        })
        .collect()
}

/// Smallest s with p^s >= target.
fn smallest_power_at_least(p: u64, target: u64) -> u32 {
    let mut s = 1u32;
    let mut pw = p as u128;
    while pw < target as u128 {
        pw *= p as u128;
        s += 1;
    }
    s
}

/// Gaussian elimination mod p, returning the nonzero rows in reduced form.
fn row_reduce_mod_p(rows: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    if rows.is_empty() {
        return vec![];
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let inv = |a: u64| -> u64 {
        // Fermat; p prime
        let mut e = p - 2;
        let mut base = a % p;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    };
    let mut next = 0usize;
    for c in 0..cols {
        let Some(piv) = (next..m.len()).find(|&r| !m[r][c].is_multiple_of(p)) else {
            continue;
        };
        m.swap(next, piv);
        let scale = inv(m[next][c]);
        for x in m[next].iter_mut() {
            *x = *x * scale % p;
        }
        let pivot_row = m[next].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != next && !row[c].is_multiple_of(p) {
                let factor = row[c] % p;
                for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                    let sub = factor * pv % p;
                    *x = (*x + p - sub) % p;
                }
            }
        }
        next += 1;
        if next == m.len() {
            break;
        }
    }
    m.truncate(next);
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::lee_weight;

    #[test]
    fn small_code_shape() {
        // p=5, b=2, D=4: s=1, at most 1 + 1*1 = 2 parity rows
        let code = LeeBchCode::new(5, 2, 4).unwrap();
        assert_eq!(code.s(), 1);
        assert!(code.rank() <= 2);
    }

    #[test]
    fn redundancy_bound_holds() {
        for (p, b, d) in [
            (5u64, 2i64, 2usize),
            (5, 2, 4),
            (7, 3, 4),
            (7, 3, 6),
            (11, 4, 3),
        ] {
            let code = LeeBchCode::new(p, b, d).unwrap();
            assert!(code.rank() as i64 <= 1 + (b - 1) * code.s() as i64);
        }
    }

    #[test]
    fn min_distance_reaches_two_b() {
        for (p, b, d) in [(5u64, 2i64, 2usize), (5, 2, 4), (7, 3, 4)] {
            let code = LeeBchCode::new(p, b, d).unwrap();
            // None means a trivial kernel
            if let Some(dist) = code.min_distance_bruteforce(1 << 20).unwrap() {
                assert!(dist >= 2 * b as u64, "p={p} b={b} d={d} dist={dist}");
            }
        }
    }

    #[test]
    fn trivial_kernel_reports_none() {
        // p=5, b=2, D=2 has a 2x2 full-rank parity check
        let code = LeeBchCode::new(5, 2, 2).unwrap();
        assert_eq!(code.rank(), 2);
        assert_eq!(code.min_distance_bruteforce(1 << 20).unwrap(), None);
    }

    #[test]
    fn table_counts_low_lee_vectors() {
        // #{eps : wt_L(eps) <= 2} over F_7^6: 1 + 12 + 12 + 60 = 85
        let code = LeeBchCode::new(7, 3, 6).unwrap();
        assert_eq!(code.table_len(), 85);
    }

    #[test]
    fn syndrome_linear_and_zero_on_codewords() {
        let code = LeeBchCode::new(5, 2, 4).unwrap();
        assert!(code.syndrome(&[0, 0, 0, 0]).iter().all(|&s| s == 0));
        let p = code.p();
        for ua in 0..5u64 {
            for ub in 0..5u64 {
                let u = [ua, ub, 3, 1];
                let v = [ub, 2, ua, 4];
                let sum: Vec<u64> = u.iter().zip(&v).map(|(&a, &b)| (a + b) % p).collect();
                let su = code.syndrome(&u);
                let sv = code.syndrome(&v);
                let ssum = code.syndrome(&sum);
                for k in 0..su.len() {
                    assert_eq!((su[k] + sv[k]) % p, ssum[k]);
                }
            }
        }
    }

    #[test]
    fn decode_round_trip_exhaustive() {
        for (p, b, d) in [(5u64, 2i64, 4usize), (7, 3, 4), (11, 5, 2), (7, 3, 2)] {
            let code = LeeBchCode::new(p, b, d).unwrap();
            let mut eps = vec![0i64; d];
            fn walk(
                code: &LeeBchCode,
                eps: &mut Vec<i64>,
                pos: usize,
                budget: i64,
                p: u64,
                b: i64,
            ) {
                if pos == eps.len() {
                    let residues: Vec<u64> =
                        eps.iter().map(|&e| e.rem_euclid(p as i64) as u64).collect();
                    let syn = code.syndrome(&residues);
                    let decoded = code.decode(&syn).expect("in-radius syndrome decodes");
                    assert_eq!(decoded, &residues);
                    let lifted = lift_residues(decoded, b, p).unwrap();
                    assert_eq!(&lifted, eps);
                    assert!(lifted.iter().map(|e| e.unsigned_abs()).sum::<u64>() <= (b - 1) as u64);
                    return;
                }
                for e in -budget..=budget {
                    eps[pos] = e;
                    walk(code, eps, pos + 1, budget - e.abs(), p, b);
                }
                eps[pos] = 0;
            }
            walk(&code, &mut eps, 0, b - 1, p, b);
        }
    }

    #[test]
    fn decode_zero_syndrome() {
        let code = LeeBchCode::new(5, 2, 4).unwrap();
        let zero = vec![0u64; code.rank()];
        assert_eq!(code.decode(&zero).unwrap(), &vec![0u64; 4]);
    }

    #[test]
    fn out_of_radius_syndrome_fails() {
        // weight-b vectors whose coset has no light leader must miss the table
        let code = LeeBchCode::new(5, 2, 4).unwrap();
        let mut missed = 0;
        let heavy = [2u64, 0, 0, 0]; // Lee weight 2 = b
        let syn = code.syndrome(&heavy);
        if code.decode(&syn).is_none() {
            missed += 1;
        }
        assert_eq!(missed, 1);
    }

    #[test]
    fn lift_rules() {
        assert_eq!(lift_residues(&[4, 0], 2, 5).unwrap(), vec![-1, 0]);
        assert_eq!(lift_residues(&[1, 0], 2, 5).unwrap(), vec![1, 0]);
        assert_eq!(lift_residues(&[6, 1], 3, 7).unwrap(), vec![-1, 1]);
        assert!(matches!(
            lift_residues(&[2, 0], 2, 5),
            Err(Error::ForbiddenResidue(2))
        ));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(LeeBchCode::new(4, 2, 2).is_err()); // not prime
        assert!(LeeBchCode::new(5, 3, 2).is_err()); // p < 2b+1
        assert!(LeeBchCode::new(5, 1, 2).is_err()); // b < 2
    }

    #[test]
    fn lee_weight_of_table_entries_bounded() {
        let code = LeeBchCode::new(7, 3, 4).unwrap();
        for leader in code.table.values() {
            assert!(lee_weight(leader, 7) <= 2);
        }
    }
}
