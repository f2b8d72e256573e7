//! Burst-closeness models, error-pattern enumeration, and pattern counts.
//!
//! An error pattern has Hamming weight at most 2; when the weight is 2 the two
//! positions must be `b`-close in the chosen model. The three models are
//! nested: straight implies L1 implies Linf.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::indexing::{from_value, to_value, Coord};
use crate::{Error, Result};

/// The closeness model for weight-2 patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    /// Chebyshev distance < b.
    Linf,
    /// Manhattan distance < b.
    L1,
    /// Same axis-parallel line, distance < b.
    Straight,
}

impl ModelKind {
    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::Linf => "linf",
            ModelKind::L1 => "l1",
            ModelKind::Straight => "straight",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "linf" => Ok(ModelKind::Linf),
            "l1" => Ok(ModelKind::L1),
            "straight" => Ok(ModelKind::Straight),
            other => Err(Error::Parse(format!("unknown model '{other}'"))),
        }
    }
}

/// A closeness model together with its burst size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BurstModel {
    pub kind: ModelKind,
    pub b: i64,
}

impl BurstModel {
    pub fn new(kind: ModelKind, b: i64) -> Result<Self> {
        if b < 2 {
            return Err(Error::Param(format!("burst size b = {b} must be >= 2")));
        }
        Ok(BurstModel { kind, b })
    }
}

/// Whether `i` and `j` are b-close in the given model.
pub fn b_close(i: &Coord, j: &Coord, model: &BurstModel) -> Result<bool> {
    if i.dim() != j.dim() {
        return Err(Error::DimensionMismatch(i.dim(), j.dim()));
    }
    let diffs = i.0.iter().zip(&j.0).map(|(a, b)| (a - b).abs());
    Ok(match model.kind {
        ModelKind::Linf => diffs.max().unwrap_or(0) < model.b,
        ModelKind::L1 => diffs.sum::<i64>() < model.b,
        ModelKind::Straight => {
            let nonzero: Vec<i64> = diffs.filter(|&d| d != 0).collect();
            nonzero.len() == 1 && nonzero[0] < model.b
        }
    })
}

/// An unordered set of 0, 1, or 2 distinct error positions.
///
/// Positions are kept in linear-index order so patterns compare and hash
/// canonically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ErrorPattern {
    positions: Vec<Coord>,
}

impl ErrorPattern {
    pub fn empty() -> Self {
        ErrorPattern { positions: vec![] }
    }

    pub fn single(c: Coord) -> Self {
        ErrorPattern { positions: vec![c] }
    }

    pub fn pair(a: Coord, b: Coord) -> Self {
        assert_ne!(a, b, "pair positions must be distinct");
        // last coordinate is the most significant digit of the linear index
        let swap = a.0.iter().rev().cmp(b.0.iter().rev()) == std::cmp::Ordering::Greater;
        let positions = if swap { vec![b, a] } else { vec![a, b] };
        ErrorPattern { positions }
    }

    pub fn weight(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[Coord] {
        &self.positions
    }
}

impl std::fmt::Display for ErrorPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.positions.len() {
            0 => write!(f, "weight 0"),
            1 => write!(f, "weight 1 at {}", self.positions[0]),
            _ => write!(f, "weight 2 at {} {}", self.positions[0], self.positions[1]),
        }
    }
}

/// Difference vectors reachable from a cell in one burst, excluding zero,
/// sorted by their linear-index value so pair enumeration is deterministic.
fn ball_offsets(model: &BurstModel, d: usize, side: i64) -> Vec<(i64, Coord)> {
    let b = model.b;
    let mut out = Vec::new();
    let mut idx = vec![-(b - 1); d];
    loop {
        let c = Coord(idx.clone());
        if !c.is_zero() {
            let close = b_close(&c, &Coord::zero(d), model).expect("same dim");
            if close {
                let v = to_value(&c, side).expect("offset value fits");
                out.push((v, c));
            }
        }
        let mut k = 0;
        loop {
            if k == d {
                break;
            }
            idx[k] += 1;
            if idx[k] < b {
                break;
            }
            idx[k] = -(b - 1);
            k += 1;
        }
        if k == d {
            break;
        }
    }
    out.sort_by_key(|(v, _)| *v);
    out
}

/// Visit every 2-weight-limited burst pattern on a `side^d` array exactly once:
/// the zero pattern, then singletons in linear-index order, then pairs (i, j)
/// with index(i) < index(j), ordered by (index(i), index(j)).
///
/// Returns the number of patterns visited.
pub fn visit_errors(
    side: i64,
    d: usize,
    model: &BurstModel,
    cap_cells: u64,
    f: &mut dyn FnMut(&ErrorPattern),
) -> Result<u64> {
    if side < model.b {
        return Err(Error::Param(format!(
            "side {side} smaller than burst size {}",
            model.b
        )));
    }
    let ncells = (side as u128)
        .checked_pow(d as u32)
        .ok_or(Error::Overflow)?;
    if ncells > cap_cells as u128 {
        return Err(Error::CapExceeded {
            what: "cells",
            value: ncells,
            cap: cap_cells as u128,
        });
    }
    let ncells = ncells as i64;
    let mut count = 0u64;
    f(&ErrorPattern::empty());
    count += 1;
    for v in 0..ncells {
        f(&ErrorPattern::single(from_value(v, side, d)?));
        count += 1;
    }
    let offsets = ball_offsets(model, d, side);
    for vi in 0..ncells {
        let i = from_value(vi, side, d)?;
        for (dv, delta) in &offsets {
            if *dv <= 0 {
                continue;
            }
            let j = i.add(delta);
            if j.in_box(side) {
                f(&ErrorPattern::pair(i.clone(), j));
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Collect the full pattern list; see [`visit_errors`] for the order.
pub fn enumerate_errors(
    side: i64,
    d: usize,
    model: &BurstModel,
    cap_cells: u64,
) -> Result<Vec<ErrorPattern>> {
    let mut out = Vec::new();
    visit_errors(side, d, model, cap_cells, &mut |p| out.push(p.clone()))?;
    Ok(out)
}

/// Exact number of Linf patterns:
/// `1 + n^D + ((2nb - n - b^2 + b)^D - n^D) / 2`.
pub fn count_linf(n: i64, b: i64, d: usize) -> Result<u128> {
    check_count_params(n, b)?;
    let nd = (n as u128).checked_pow(d as u32).ok_or(Error::Overflow)?;
    let base = (2 * n * b - n - b * b + b) as u128;
    let pairs = (base.checked_pow(d as u32).ok_or(Error::Overflow)? - nd) / 2;
    Ok(1 + nd + pairs)
}

/// Exact number of straight patterns:
/// `1 + ((b-1)D + 1) n^D - D n^(D-1) b(b-1)/2`.
pub fn count_straight(n: i64, b: i64, d: usize) -> Result<u128> {
    check_count_params(n, b)?;
    let nd = (n as u128).checked_pow(d as u32).ok_or(Error::Overflow)?;
    let nd1 = (n as u128)
        .checked_pow(d as u32 - 1)
        .ok_or(Error::Overflow)?;
    let with = ((b - 1) as u128 * d as u128 + 1) * nd;
    let cut = d as u128 * nd1 * (b * (b - 1) / 2) as u128;
    Ok(1 + with - cut)
}

/// Exact number of L1 patterns, by enumeration (no closed form is used).
pub fn count_l1(n: i64, b: i64, d: usize, cap_cells: u64) -> Result<u128> {
    check_count_params(n, b)?;
    let model = BurstModel::new(ModelKind::L1, b)?;
    let mut count = 0u128;
    visit_errors(n, d, &model, cap_cells, &mut |_| count += 1)?;
    Ok(count)
}

fn check_count_params(n: i64, b: i64) -> Result<()> {
    if b < 2 || n < b {
        return Err(Error::Param(format!(
            "need n >= b >= 2, got n = {n}, b = {b}"
        )));
    }
    Ok(())
}

/// Draw one pattern uniformly from the full pattern set, deterministically in
/// the seed.
pub fn sample_error(
    side: i64,
    d: usize,
    model: &BurstModel,
    cap_cells: u64,
    seed: u64,
) -> Result<ErrorPattern> {
    let total = visit_errors(side, d, model, cap_cells, &mut |_| {})?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = rng.gen_range(0..total);
    let mut k = 0u64;
    let mut picked = None;
    visit_errors(side, d, model, cap_cells, &mut |p| {
        if k == target {
            picked = Some(p.clone());
        }
        k += 1;
    })?;
    Ok(picked.expect("target index within count"))
}
