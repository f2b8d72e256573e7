//! Construction of the parity-check matrices for every variant.

use crate::algebra::{is_prime, BinaryExtField, Gf2Matrix};
use crate::bch2::{Bch2Component, ShortenedBch2Matrix};
use crate::designs::PackingDesign;
use crate::leecode::LeeBchCode;
use crate::{Caps, Error, Result};

use super::{BurstCode, CodeSpec, DesignChoice, Machinery, Segment, SyndromeTable, Variant};

/// Smallest m with 2^m >= v.
pub(crate) fn ceil_log2(v: u128) -> u32 {
    if v <= 1 {
        0
    } else {
        128 - (v - 1).leading_zeros()
    }
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// Smallest prime p >= 2b + 1.
pub(crate) fn l1_prime(b: i64) -> i64 {
    (2 * b + 1..)
        .find(|&p| is_prime(p as u64))
        .expect("primes unbounded")
}

fn segments(parts: &[(&'static str, usize)]) -> Vec<Segment> {
    let mut lo = 0usize;
    parts
        .iter()
        .map(|&(name, len)| {
            let seg = Segment { name, lo, len };
            lo += len;
            seg
        })
        .collect()
}

struct Layout {
    side: i64,
    m: u32,
    segs: Vec<Segment>,
    machinery: Machinery,
}

fn validate_common(spec: &CodeSpec) -> Result<()> {
    let CodeSpec { n, b, d, .. } = *spec;
    if d == 0 {
        return Err(Error::Param("dimension D must be >= 1".into()));
    }
    if d > 64 {
        return Err(Error::Param(format!("dimension D = {d} exceeds 64")));
    }
    if b < 2 || n < b {
        return Err(Error::Param(format!(
            "need n >= b >= 2, got n = {n}, b = {b}"
        )));
    }
    if spec.design.is_some() && spec.variant != Variant::Straight {
        return Err(Error::Param(
            "design choice only applies to the straight model".into(),
        ));
    }
    Ok(())
}

/// Derive side length, field degrees, segment layout and decoder machinery.
fn layout(spec: &CodeSpec) -> Result<Layout> {
    validate_common(spec)?;
    let CodeSpec { n, b, d, .. } = *spec;
    let n_pow = (n as u128).checked_pow(d as u32).ok_or(Error::Overflow)?;
    let m = ceil_log2(n_pow + 1);
    let two_m_1 = (1i64 << m) - 1;

    match spec.variant {
        Variant::LinfBasic | Variant::LinfExt => {
            if spec.variant == Variant::LinfExt {
                let g = gcd(b, two_m_1);
                if g != 1 {
                    return Err(Error::GcdViolation {
                        factor: b,
                        m,
                        gcd: g,
                    });
                }
            }
            let b_pow = (b as u128).checked_pow(d as u32).ok_or(Error::Overflow)?;
            let a = ceil_log2(b_pow + 1);
            let side = if spec.variant == Variant::LinfBasic {
                n
            } else {
                b * n
            };
            Ok(Layout {
                side,
                m,
                segs: segments(&[
                    ("s0", a as usize),
                    ("s1", a as usize),
                    ("s2", d),
                    ("s3", m as usize),
                ]),
                machinery: Machinery::Linf {
                    bch: Bch2Component::new(a, false)?,
                },
            })
        }
        Variant::LinfExtPow2 => {
            if b.count_ones() != 1 {
                return Err(Error::Param(format!(
                    "extended-pow2 needs b a power of 2, got b = {b}"
                )));
            }
            debug_assert_eq!(gcd(b, two_m_1), 1, "2^m - 1 is odd");
            let a = d as u32 * b.trailing_zeros();
            if a < 2 {
                return Err(Error::Param(format!(
                    "extended-pow2 needs D*log2(b) >= 2, got {a}"
                )));
            }
            Ok(Layout {
                side: b * n,
                m,
                segs: segments(&[
                    ("par", 1),
                    ("s0", a as usize),
                    ("s1", a as usize),
                    ("s2", d),
                    ("s3", m as usize),
                ]),
                machinery: Machinery::Linf {
                    bch: Bch2Component::new(a, true)?,
                },
            })
        }
        Variant::L1 => {
            let p = l1_prime(b);
            let g = gcd(p, two_m_1);
            if g != 1 {
                return Err(Error::GcdViolation {
                    factor: p,
                    m,
                    gcd: g,
                });
            }
            let lee = LeeBchCode::new(p as u64, b, d)?;
            let p_pow_r = (p as u128)
                .checked_pow(lee.rank() as u32)
                .ok_or(Error::Overflow)?;
            let a = ceil_log2(p_pow_r + 1);
            let p_pow_d = (p as u128).checked_pow(d as u32).ok_or(Error::Overflow)?;
            let a_prime = ceil_log2(p_pow_d + 1);
            Ok(Layout {
                side: n * p,
                m,
                segs: segments(&[
                    ("s0", a as usize),
                    ("s1", a as usize),
                    ("s2", d),
                    ("s3", a_prime as usize),
                    ("s4", m as usize),
                ]),
                machinery: Machinery::L1 {
                    bch: Bch2Component::new(a, false)?,
                    lee,
                    gamma: BinaryExtField::new(a_prime)?,
                    p,
                },
            })
        }
        Variant::L1B3 => {
            if b != 3 {
                return Err(Error::Param(format!(
                    "the b3 variant fixes b = 3, got b = {b}"
                )));
            }
            if d < 2 {
                return Err(Error::Param("the b3 variant needs D >= 2".into()));
            }
            let a1 = ceil_log2(d as u128 + 1);
            let b_rows = ceil_log2(d as u128);
            let amat = ShortenedBch2Matrix::new(a1, d as u64)?;
            Ok(Layout {
                side: n,
                m,
                segs: segments(&[
                    ("par", 1),
                    ("sA", 2 * a1 as usize),
                    ("sum", 1),
                    ("sB", b_rows as usize),
                    ("s3", m as usize),
                ]),
                machinery: Machinery::L1B3 {
                    amat,
                    b_rows,
                    table: SyndromeTable::empty(),
                },
            })
        }
        Variant::Straight => {
            let design = match spec.design.unwrap_or(DesignChoice::Trivial) {
                DesignChoice::Trivial => PackingDesign::trivial(d, b as u32),
                DesignChoice::Steiner => PackingDesign::steiner(d, b as u32)?,
            };
            let a = ceil_log2(design.v() as u128 + 1);
            let amat = ShortenedBch2Matrix::new(a, design.v() as u64)?;
            Ok(Layout {
                side: n,
                m,
                segs: segments(&[
                    ("s0", 1),
                    ("s1", 2 * a as usize),
                    ("s2", 1),
                    ("s3", m as usize),
                ]),
                machinery: Machinery::Straight { amat, design },
            })
        }
    }
}

/// Fresh machinery for an existing spec (used when cloning a code with an
/// injected fault).
pub(crate) fn rebuild_machinery(spec: &CodeSpec, _m: u32) -> Result<Machinery> {
    Ok(layout(spec)?.machinery)
}

pub(crate) fn build(spec: &CodeSpec, caps: &Caps) -> Result<BurstCode> {
    let Layout {
        side,
        m,
        segs,
        machinery,
    } = layout(spec)?;

    let rows: usize = segs.iter().map(|s| s.len).sum();
    let ncells_wide = (side as u128)
        .checked_pow(spec.d as u32)
        .ok_or(Error::Overflow)?;
    let matrix_bits = ncells_wide
        .checked_mul(rows as u128)
        .ok_or(Error::Overflow)?;
    if matrix_bits > caps.max_matrix_bits as u128 {
        return Err(Error::CapExceeded {
            what: "parity-check matrix bits",
            value: matrix_bits,
            cap: caps.max_matrix_bits as u128,
        });
    }
    let ncells = ncells_wide as usize;

    let mut code = BurstCode {
        spec: spec.clone(),
        side,
        ncells,
        m,
        alpha: BinaryExtField::new(m)?,
        rows,
        segs,
        machinery,
        h: Gf2Matrix::new(0, 0),
        ht: Gf2Matrix::new(0, 0),
        rank: 0,
        pivots: vec![],
        rref: Gf2Matrix::new(0, 0),
    };

    let mut h = Gf2Matrix::new(rows, ncells);
    let mut ht = Gf2Matrix::new(ncells, rows);
    for cell in 0..ncells {
        let col = code.column_rule(cell);
        for r in 0..rows {
            if col[r / 64] >> (r % 64) & 1 == 1 {
                h.set(r, cell, true);
                ht.set(cell, r, true);
            }
        }
    }
    let (rref, pivots) = h.row_reduce();
    code.h = h;
    code.ht = ht;
    code.rank = pivots.len();
    code.pivots = pivots;
    code.rref = rref;

    if let Machinery::L1B3 { .. } = code.machinery {
        let table = SyndromeTable::build_raw(&code, caps)?;
        if let Machinery::L1B3 { table: slot, .. } = &mut code.machinery {
            *slot = table;
        }
    }
    Ok(code)
}

/// Build the Linf basic construction on `[n]^D`.
pub fn build_linf(n: i64, b: i64, d: usize) -> Result<BurstCode> {
    BurstCode::build(
        &CodeSpec {
            variant: Variant::LinfBasic,
            n,
            b,
            d,
            design: None,
        },
        &Caps::default(),
    )
}

/// Build the extended-length Linf construction on `[bn]^D`.
pub fn build_linf_ext(n: i64, b: i64, d: usize) -> Result<BurstCode> {
    BurstCode::build(
        &CodeSpec {
            variant: Variant::LinfExt,
            n,
            b,
            d,
            design: None,
        },
        &Caps::default(),
    )
}

/// Build the extended-BCH Linf construction (b a power of 2) on `[bn]^D`.
pub fn build_linf_ext_pow2(n: i64, b: i64, d: usize) -> Result<BurstCode> {
    BurstCode::build(
        &CodeSpec {
            variant: Variant::LinfExtPow2,
            n,
            b,
            d,
            design: None,
        },
        &Caps::default(),
    )
}

/// Build the L1 construction on `[np]^D`, p the smallest prime >= 2b + 1.
pub fn build_l1(n: i64, b: i64, d: usize) -> Result<BurstCode> {
    BurstCode::build(
        &CodeSpec {
            variant: Variant::L1,
            n,
            b,
            d,
            design: None,
        },
        &Caps::default(),
    )
}

/// Build the dedicated b = 3 L1 code on `[n]^D`.
pub fn build_l1_b3(n: i64, d: usize) -> Result<BurstCode> {
    BurstCode::build(
        &CodeSpec {
            variant: Variant::L1B3,
            n,
            b: 3,
            d,
            design: None,
        },
        &Caps::default(),
    )
}

/// Build the straight-model construction on `[n]^D` over a packing design.
pub fn build_straight(n: i64, b: i64, d: usize, design: DesignChoice) -> Result<BurstCode> {
    BurstCode::build(
        &CodeSpec {
            variant: Variant::Straight,
            n,
            b,
            d,
            design: Some(design),
        },
        &Caps::default(),
    )
}
