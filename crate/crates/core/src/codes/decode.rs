//! Algorithmic decoders for the constructions, plus the generic
//! syndrome-table decoder used as the reference oracle.
//!
//! Each decoder splits on the weight signature of the syndrome, recovers the
//! candidate positions segment by segment, and confirms the candidate by
//! recomputing its full syndrome. The two-error path cannot tell from the
//! component code which recovered residue belongs to which position, so both
//! role assignments are tried; for in-model errors both succeed and produce
//! the same unordered pair.

use std::collections::HashMap;

use crate::algebra::BinaryExtField;
use crate::bch2::{Bch2Component, Bch2Outcome, ShortenedBch2Matrix};
use crate::designs::PackingDesign;
use crate::indexing::{from_value, to_value, Coord};
use crate::leecode::{lift_residues, LeeBchCode};
use crate::models::{visit_errors, ErrorPattern};
use crate::{Caps, Error, Result};

use super::{ArrayWord, BurstCode, DecodeOutcome, Machinery, Syndrome, Variant};

impl BurstCode {
    /// Decode from a syndrome alone (every decoder is syndrome-driven).
    pub fn decode_syndrome(&self, syn: &Syndrome) -> DecodeOutcome {
        if syn.is_zero() {
            return DecodeOutcome::NoError;
        }
        match &self.machinery {
            Machinery::Linf { bch } => self.decode_linf(syn, bch),
            Machinery::L1 { bch, lee, gamma, p } => self.decode_l1(syn, bch, lee, gamma, *p),
            Machinery::L1B3 { table, .. } => table.decode(syn),
            Machinery::Straight { amat, design } => self.decode_straight(syn, amat, design),
        }
    }

    /// Decode against an explicit syndrome table instead of the algorithmic
    /// path.
    pub fn decode_with_table(
        &self,
        word: &ArrayWord,
        table: &SyndromeTable,
    ) -> Result<DecodeOutcome> {
        Ok(table.decode(&self.syndrome(word)?))
    }

    fn confirm_single(&self, syn: &Syndrome, i: Coord) -> DecodeOutcome {
        if self.syndrome_of_pattern(&ErrorPattern::single(i.clone())) == *syn {
            DecodeOutcome::Single(i)
        } else {
            DecodeOutcome::Uncorrectable
        }
    }

    fn confirm_double(&self, syn: &Syndrome, i: Coord, j: Coord) -> Option<DecodeOutcome> {
        if !i.in_box(self.side) || !j.in_box(self.side) || i == j {
            return None;
        }
        let pat = ErrorPattern::pair(i.clone(), j.clone());
        if self.syndrome_of_pattern(&pat) == *syn {
            Some(DecodeOutcome::double(i, j))
        } else {
            None
        }
    }

    /// Theorem: Linf decoding (basic, extended, and extended-pow2 variants).
    fn decode_linf(&self, syn: &Syndrome, bch: &Bch2Component) -> DecodeOutcome {
        let (n, b, d) = (self.spec.n, self.spec.b, self.spec.d);
        let pow2 = self.spec.variant == Variant::LinfExtPow2;
        let extended_length = self.spec.variant != Variant::LinfBasic;
        let (s0, s1, s2, s3, parity) = if pow2 {
            (
                self.seg_value(syn, 1) as u32,
                self.seg_value(syn, 2) as u32,
                self.seg_value(syn, 3),
                self.seg_value(syn, 4) as u32,
                Some(self.seg_value(syn, 0) == 1),
            )
        } else {
            (
                self.seg_value(syn, 0) as u32,
                self.seg_value(syn, 1) as u32,
                self.seg_value(syn, 2),
                self.seg_value(syn, 3) as u32,
                None,
            )
        };
        let f = bch.field();
        let order = self.alpha.order() as i128;
        let b_pow = (b as u128).pow(d as u32);
        let n_pow = (n as u128).pow(d as u32);

        let single = match parity {
            Some(par) => par,
            None => s0 != 0 && s1 == f.cube(s0),
        };
        if single {
            let t = if pow2 {
                if s1 != f.cube(s0) {
                    return DecodeOutcome::Uncorrectable;
                }
                s0 as u64
            } else {
                f.dlog(s0).expect("s0 nonzero in single branch")
            };
            if t as u128 >= b_pow {
                return DecodeOutcome::Uncorrectable;
            }
            let r = from_value(t as i64, b, d).expect("range checked");
            let Ok(e) = self.alpha.dlog(s3) else {
                return DecodeOutcome::Uncorrectable;
            };
            let i = if !extended_length {
                if e as u128 >= n_pow {
                    return DecodeOutcome::Uncorrectable;
                }
                from_value(e as i64, n, d).expect("range checked")
            } else {
                let r_n = to_value(&r, n).expect("small") as i128;
                let b_inv = mod_inverse(b as i128, order).expect("gcd checked at build");
                let zv = ((e as i128 - r_n).rem_euclid(order) * b_inv).rem_euclid(order);
                if zv as u128 >= n_pow {
                    return DecodeOutcome::Uncorrectable;
                }
                let z = from_value(zv as i64, n, d).expect("range checked");
                combine(&z, &r, b)
            };
            if !i.in_box(self.side) {
                return DecodeOutcome::Uncorrectable;
            }
            return self.confirm_single(syn, i);
        }

        let located = match parity {
            Some(_) => bch.decode_extended(false, s0, s1),
            None => bch.decode(s0, s1),
        };
        let Bch2Outcome::Two(t1, t2) = located else {
            return DecodeOutcome::Uncorrectable;
        };
        for (ti, tj) in [(t1, t2), (t2, t1)] {
            if ti as u128 >= b_pow || tj as u128 >= b_pow {
                continue;
            }
            let ri = from_value(ti as i64, b, d).expect("range checked");
            let rj = from_value(tj as i64, b, d).expect("range checked");
            let Some(delta) = resolve_offsets(&ri, &rj, s2, b) else {
                continue;
            };
            let dv = to_value(&delta, n).expect("small") as i128;
            let step = self.alpha.add(1, self.alpha.alpha_pow(dv));
            if step == 0 {
                continue;
            }
            let ri_n = to_value(&ri, n).expect("small") as i128;
            let denom = self.alpha.mul(self.alpha.alpha_pow(ri_n), step);
            let Ok(rhs) = self.alpha.div(s3, denom) else {
                continue;
            };
            let Ok(e) = self.alpha.dlog(rhs) else {
                continue;
            };
            let i = if !extended_length {
                // e equals [bz]_n exactly; its base-n digits are the entries
                // of bz and must all be multiples of b
                if e as u128 >= n_pow {
                    continue;
                }
                let bz = from_value(e as i64, n, d).expect("range checked");
                if bz.0.iter().any(|&x| x % b != 0) {
                    continue;
                }
                bz.add(&ri)
            } else {
                let b_inv = mod_inverse(b as i128, order).expect("gcd checked at build");
                let zv = ((e as i128) * b_inv).rem_euclid(order);
                if zv as u128 >= n_pow {
                    continue;
                }
                let z = from_value(zv as i64, n, d).expect("range checked");
                combine(&z, &ri, b)
            };
            let j = i.add(&delta);
            if let Some(out) = self.confirm_double(syn, i, j) {
                return out;
            }
        }
        DecodeOutcome::Uncorrectable
    }

    /// L1 decoding: BCH locates the Lee syndromes, the Lee code pins down the
    /// offset, the tiling bits lift it, and the two position fields finish.
    fn decode_l1(
        &self,
        syn: &Syndrome,
        bch: &Bch2Component,
        lee: &LeeBchCode,
        gamma: &BinaryExtField,
        p: i64,
    ) -> DecodeOutcome {
        let (n, b, d) = (self.spec.n, self.spec.b, self.spec.d);
        let s0 = self.seg_value(syn, 0) as u32;
        let s1 = self.seg_value(syn, 1) as u32;
        let s2 = self.seg_value(syn, 2);
        let s3 = self.seg_value(syn, 3) as u32;
        let s4 = self.seg_value(syn, 4) as u32;
        let f = bch.field();
        let order = self.alpha.order() as i128;
        let p_pow_d = (p as u128).pow(d as u32);
        let n_pow = (n as u128).pow(d as u32);
        let p_inv = mod_inverse(p as i128, order).expect("gcd checked at build");

        if s0 != 0 && s1 == f.cube(s0) {
            let Ok(v3) = gamma.dlog(s3) else {
                return DecodeOutcome::Uncorrectable;
            };
            if v3 as u128 >= p_pow_d {
                return DecodeOutcome::Uncorrectable;
            }
            let imodp = from_value(v3 as i64, p, d).expect("range checked");
            let Ok(e) = self.alpha.dlog(s4) else {
                return DecodeOutcome::Uncorrectable;
            };
            let r_n = to_value(&imodp, n).expect("small") as i128;
            let zv = ((e as i128 - r_n).rem_euclid(order) * p_inv).rem_euclid(order);
            if zv as u128 >= n_pow {
                return DecodeOutcome::Uncorrectable;
            }
            let z = from_value(zv as i64, n, d).expect("range checked");
            let i = combine(&z, &imodp, p);
            if !i.in_box(self.side) {
                return DecodeOutcome::Uncorrectable;
            }
            return self.confirm_single(syn, i);
        }

        let Bch2Outcome::Two(t1, t2) = bch.decode(s0, s1) else {
            return DecodeOutcome::Uncorrectable;
        };
        let r_l = lee.rank();
        let p_pow_r = (p as u128).pow(r_l as u32);
        'role: for (ti, tj) in [(t1, t2), (t2, t1)] {
            if ti as u128 >= p_pow_r || tj as u128 >= p_pow_r {
                continue;
            }
            let syn_i = radix_digits(ti, p as u64, r_l);
            let syn_j = radix_digits(tj, p as u64, r_l);
            let diff: Vec<u64> = syn_j
                .iter()
                .zip(&syn_i)
                .map(|(&a, &bb)| (a + p as u64 - bb) % p as u64)
                .collect();
            let Some(eps_modp) = lee.decode(&diff) else {
                continue;
            };
            let Ok(eps) = lift_residues(eps_modp, b, p as u64) else {
                continue;
            };
            if eps.iter().all(|&x| x == 0) {
                continue;
            }
            // tiling bits turn eps into the residue-level offset
            let mut epsbar = Vec::with_capacity(d);
            for (t, &et) in eps.iter().enumerate() {
                let wrapped = s2 >> t & 1 == 1;
                epsbar.push(match (wrapped, et.signum()) {
                    (false, _) => et,
                    (true, 1) => et - p,
                    (true, -1) => et + p,
                    (true, _) => continue 'role,
                });
            }
            let ebar = Coord(epsbar);
            let ebar_p = to_value(&ebar, p).expect("small") as i128;
            let gstep = gamma.add(1, gamma.alpha_pow(ebar_p));
            if gstep == 0 {
                continue;
            }
            let Ok(g3) = gamma.div(s3, gstep) else {
                continue;
            };
            let Ok(v3) = gamma.dlog(g3) else {
                continue;
            };
            if v3 as u128 >= p_pow_d {
                continue;
            }
            let imodp = from_value(v3 as i64, p, d).expect("range checked");
            if imodp
                .0
                .iter()
                .zip(&ebar.0)
                .any(|(&a, &e)| a + e < 0 || a + e >= p)
            {
                continue;
            }
            let epsc = Coord(eps.clone());
            let eps_n = to_value(&epsc, n).expect("small") as i128;
            let astep = self.alpha.add(1, self.alpha.alpha_pow(eps_n));
            if astep == 0 {
                continue;
            }
            let imodp_n = to_value(&imodp, n).expect("small") as i128;
            let denom = self.alpha.mul(self.alpha.alpha_pow(imodp_n), astep);
            let Ok(rhs) = self.alpha.div(s4, denom) else {
                continue;
            };
            let Ok(e) = self.alpha.dlog(rhs) else {
                continue;
            };
            let zv = ((e as i128) * p_inv).rem_euclid(order);
            if zv as u128 >= n_pow {
                continue;
            }
            let z = from_value(zv as i64, n, d).expect("range checked");
            let i = combine(&z, &imodp, p);
            let j = i.add(&epsc);
            if let Some(out) = self.confirm_double(syn, i, j) {
                return out;
            }
        }
        DecodeOutcome::Uncorrectable
    }

    /// Straight-model decoding: the design block identifies the axis, the
    /// block positions give both residues, and the position field finishes.
    fn decode_straight(
        &self,
        syn: &Syndrome,
        amat: &ShortenedBch2Matrix,
        design: &PackingDesign,
    ) -> DecodeOutcome {
        let (n, b, d) = (self.spec.n, self.spec.b, self.spec.d);
        let s0 = self.seg_value(syn, 0);
        let s1 = self.seg_value(syn, 1);
        let s2 = self.seg_value(syn, 2);
        let s3 = self.seg_value(syn, 3) as u32;
        let n_pow = (n as u128).pow(d as u32);

        if s0 == 1 {
            let Ok(e) = self.alpha.dlog(s3) else {
                return DecodeOutcome::Uncorrectable;
            };
            if e as u128 >= n_pow {
                return DecodeOutcome::Uncorrectable;
            }
            let i = from_value(e as i64, n, d).expect("range checked");
            return self.confirm_single(syn, i);
        }

        let Bch2Outcome::Two(u, w) = amat.decode(s1) else {
            return DecodeOutcome::Uncorrectable;
        };
        let Some(axis) = design.pair_to_block(u as u32, w as u32) else {
            return DecodeOutcome::Uncorrectable;
        };
        let ru = design
            .position_in_block(axis, u as u32)
            .expect("point in its block");
        let rw = design
            .position_in_block(axis, w as u32)
            .expect("point in its block");
        let axis = axis as usize;
        for (ri, rj) in [(ru, rw), (rw, ru)] {
            let mu_raw = rj as i64 - ri as i64;
            let mu = match (s2 == 1, mu_raw.signum()) {
                (false, _) => mu_raw,
                (true, -1) => mu_raw + b,
                (true, 1) => mu_raw - b,
                (true, _) => continue,
            };
            if mu == 0 {
                continue;
            }
            let expo = mu as i128 * (n as i128).pow(axis as u32);
            let step = self.alpha.add(1, self.alpha.alpha_pow(expo));
            if step == 0 {
                continue;
            }
            let Ok(rhs) = self.alpha.div(s3, step) else {
                continue;
            };
            let Ok(e) = self.alpha.dlog(rhs) else {
                continue;
            };
            if e as u128 >= n_pow {
                continue;
            }
            let i = from_value(e as i64, n, d).expect("range checked");
            let mut j = i.clone();
            j.0[axis] += mu;
            if let Some(out) = self.confirm_double(syn, i, j) {
                return out;
            }
        }
        DecodeOutcome::Uncorrectable
    }
}

/// Recover the offset vector from the two residues and the block-parity bits:
/// same block means the raw difference, adjacent blocks shift it by +-b.
fn resolve_offsets(ri: &Coord, rj: &Coord, s2: u64, b: i64) -> Option<Coord> {
    let mut delta = Vec::with_capacity(ri.dim());
    for (t, (&a, &c)) in ri.0.iter().zip(&rj.0).enumerate() {
        let raw = c - a;
        let wrapped = s2 >> t & 1 == 1;
        delta.push(match (wrapped, raw.signum()) {
            (false, _) => raw,
            (true, -1) => raw + b,
            (true, 1) => raw - b,
            // adjacent blocks force distinct residues
            (true, _) => return None,
        });
    }
    Some(Coord(delta))
}

/// `q * z + r` entry-wise: rebuild a position from block index and residue.
fn combine(z: &Coord, r: &Coord, q: i64) -> Coord {
    Coord(z.0.iter().zip(&r.0).map(|(&zt, &rt)| q * zt + rt).collect())
}

fn radix_digits(v: u64, p: u64, len: usize) -> Vec<u64> {
    let mut v = v;
    (0..len)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

/// Modular inverse by extended Euclid; None when gcd != 1.
fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m))
}

/// A table mapping every in-model pattern's syndrome to the pattern.
///
/// Building it fails loudly on any collision, so a successful build is itself
/// a distinctness certificate.
pub struct SyndromeTable {
    map: HashMap<Syndrome, ErrorPattern>,
    patterns: u64,
}

impl SyndromeTable {
    pub(crate) fn empty() -> Self {
        SyndromeTable {
            map: HashMap::new(),
            patterns: 0,
        }
    }

    pub fn build(code: &BurstCode, caps: &Caps) -> Result<Self> {
        Self::build_raw(code, caps)
    }

    pub(crate) fn build_raw(code: &BurstCode, caps: &Caps) -> Result<Self> {
        let model = code.model();
        let total = visit_errors(code.side, code.spec.d, &model, caps.max_cells, &mut |_| {})?;
        if total > caps.max_patterns {
            return Err(Error::CapExceeded {
                what: "error patterns",
                value: total as u128,
                cap: caps.max_patterns as u128,
            });
        }
        let mut map = HashMap::with_capacity(total as usize);
        let mut collision: Option<(ErrorPattern, ErrorPattern)> = None;
        visit_errors(code.side, code.spec.d, &model, caps.max_cells, &mut |pat| {
            if collision.is_some() {
                return;
            }
            let syn = code.syndrome_of_pattern(pat);
            if let Some(prev) = map.insert(syn, pat.clone()) {
                collision = Some((prev, pat.clone()));
            }
        })?;
        if let Some((a, b)) = collision {
            return Err(Error::SyndromeCollision(format!("{a} vs {b}")));
        }
        Ok(SyndromeTable {
            map,
            patterns: total,
        })
    }

    /// Number of in-model patterns the table covers.
    pub fn patterns(&self) -> u64 {
        self.patterns
    }

    pub fn decode(&self, syn: &Syndrome) -> DecodeOutcome {
        self.map
            .get(syn)
            .map(DecodeOutcome::from_pattern)
            .unwrap_or(DecodeOutcome::Uncorrectable)
    }
}
