//! (2,b,v)-packing designs: every pair of points lies in at most one block.
//!
//! Two families cover the straight-model construction: the trivial partition
//! of `[Db]` into D disjoint blocks, and the lines of the affine geometry
//! AG(s, q) (a Steiner system) truncated to D blocks of b points each.

use std::collections::HashMap;

use crate::algebra::PrimeExtField;
use crate::{Error, Result};

/// A packing design on points `[v]` with `D` blocks of `block_size` points.
#[derive(Debug, Clone)]
pub struct PackingDesign {
    v: u32,
    block_size: u32,
    blocks: Vec<Vec<u32>>,
    pair_map: HashMap<(u32, u32), u32>,
}

impl PackingDesign {
    fn assemble(v: u32, block_size: u32, blocks: Vec<Vec<u32>>) -> Result<Self> {
        let mut pair_map = HashMap::new();
        for (idx, block) in blocks.iter().enumerate() {
            debug_assert!(block.windows(2).all(|w| w[0] < w[1]), "blocks sorted");
            for i in 0..block.len() {
                for j in i + 1..block.len() {
                    if pair_map.insert((block[i], block[j]), idx as u32).is_some() {
                        return Err(Error::Param(format!(
                            "pair ({}, {}) appears in two blocks",
                            block[i], block[j]
                        )));
                    }
                }
            }
        }
        Ok(PackingDesign {
            v,
            block_size,
            blocks,
            pair_map,
        })
    }

    /// The disjoint-block packing: v = D*b, block i is {ib, ..., ib + b - 1}.
    pub fn trivial(d: usize, b: u32) -> Self {
        let blocks: Vec<Vec<u32>> = (0..d as u32)
            .map(|i| (i * b..(i + 1) * b).collect())
            .collect();
        Self::assemble(d as u32 * b, b, blocks).expect("disjoint blocks cannot collide")
    }

    /// The Steiner packing: lines of AG(s, q) for the smallest prime power
    /// q >= b and the smallest s >= 2 supplying at least D lines, keeping the
    /// first D lines in deterministic order and the b smallest points of each.
    pub fn steiner(d: usize, b: u32) -> Result<Self> {
        if b < 2 || d == 0 {
            return Err(Error::Param(format!(
                "need b >= 2 and D >= 1, got b = {b}, D = {d}"
            )));
        }
        let (q, s) = steiner_parameters(b as u64, d)?;
        let lines = affine_lines(q, s)?;
        if lines.len() < d {
            return Err(Error::DesignTooSmall {
                need: d,
                have: lines.len(),
            });
        }
        let blocks: Vec<Vec<u32>> = lines[..d]
            .iter()
            .map(|line| line[..b as usize].to_vec())
            .collect();
        let v = q.pow(s) as u32;
        Self::assemble(v, b, blocks)
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn block_size(&self) -> u32 {
        self.block_size
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Re-scan all blocks and confirm every pair occurs at most once.
    pub fn verify(&self) -> bool {
        let mut seen = HashMap::new();
        for (idx, block) in self.blocks.iter().enumerate() {
            if block.len() != self.block_size as usize {
                return false;
            }
            for i in 0..block.len() {
                if block[i] >= self.v {
                    return false;
                }
                for j in i + 1..block.len() {
                    if block[i] == block[j] {
                        return false;
                    }
                    if seen.insert((block[i], block[j]), idx).is_some() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The unique block containing both points, or None.
    pub fn pair_to_block(&self, u: u32, w: u32) -> Option<u32> {
        debug_assert_ne!(u, w);
        self.pair_map.get(&(u.min(w), u.max(w))).copied()
    }

    /// Index of a point within a block.
    pub fn position_in_block(&self, block: u32, point: u32) -> Option<usize> {
        self.blocks[block as usize].iter().position(|&p| p == point)
    }

    /// Text export: header "v b D", then one sorted block per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.v, self.block_size, self.blocks.len());
        for block in &self.blocks {
            let line: Vec<String> = block.iter().map(|p| p.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty design file".into()))?;
        let head: Vec<u32> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Parse(format!("bad header '{header}'")))
            })
            .collect::<Result<_>>()?;
        if head.len() != 3 {
            return Err(Error::Parse("design header needs 'v b D'".into()));
        }
        let blocks: Vec<Vec<u32>> = lines
            .map(|l| {
                l.split_whitespace()
                    .map(|t| {
                        t.parse()
                            .map_err(|_| Error::Parse(format!("bad point '{t}'")))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<_>>()?;
        if blocks.len() != head[2] as usize {
            return Err(Error::Parse(format!(
                "expected {} blocks, found {}",
                head[2],
                blocks.len()
            )));
        }
        Self::assemble(head[0], head[1], blocks)
    }
}

/// Smallest prime power q >= b, and smallest s >= 2 such that AG(s, q) has at
/// least D lines. The line count of AG(s, q) is `q^(s-1) (q^s - 1)/(q - 1)`.
pub fn steiner_parameters(b: u64, d: usize) -> Result<(u64, u32)> {
    let q = (b.max(2)..)
        .find(|&q| prime_power(q).is_some())
        .expect("prime powers are unbounded");
    let mut s = 2u32;
    loop {
        if line_count(q, s) >= d as u128 {
            return Ok((q, s));
        }
        s += 1;
        if s > 20 {
            return Err(Error::DesignTooSmall { need: d, have: 0 });
        }
    }
}

/// Number of lines of AG(s, q).
pub fn line_count(q: u64, s: u32) -> u128 {
    let qs = (q as u128).pow(s);
    (q as u128).pow(s - 1) * ((qs - 1) / (q as u128 - 1))
}

/// All lines of the affine geometry AG(s, q) as sorted point sets, where a
/// point `(x_0, ..., x_{s-1})` in F_q^s is labeled `sum x_t q^t`. Lines are
/// the cosets of the 1-dimensional subspaces; the list is sorted
/// lexicographically so "keep the first D" is reproducible.
pub fn affine_lines(q: u64, s: u32) -> Result<Vec<Vec<u32>>> {
    let (p, e) = prime_power(q).ok_or_else(|| Error::Param(format!("{q} is not a prime power")))?;
    let field = PrimeExtField::new(p, e)?;
    let dim = s as usize;
    let npoints = (q as u128).pow(s);
    if npoints > u32::MAX as u128 {
        return Err(Error::Overflow);
    }
    let npoints = npoints as u64;

    let decode = |label: u64| -> Vec<u64> {
        let mut v = label;
        (0..dim)
            .map(|_| {
                let c = v % q;
                v /= q;
                c
            })
            .collect()
    };
    let encode = |pt: &[u64]| -> u64 { pt.iter().rev().fold(0u64, |acc, &c| acc * q + c) };

    // canonical directions: the smallest-labeled nonzero multiple survives
    let mut directions = Vec::new();
    for label in 1..npoints {
        let dvec = decode(label);
        let is_canonical = (1..q).all(|lc| {
            let scaled: Vec<u64> = dvec.iter().map(|&c| field.mul(lc, c)).collect();
            encode(&scaled) >= label
        });
        if is_canonical {
            directions.push(dvec);
        }
    }
    debug_assert_eq!(
        directions.len() as u128,
        (npoints as u128 - 1) / (q as u128 - 1)
    );

    let mut lines = Vec::new();
    let mut covered = vec![false; npoints as usize];
    for dir in &directions {
        covered.iter_mut().for_each(|c| *c = false);
        for base in 0..npoints {
            if covered[base as usize] {
                continue;
            }
            let bvec = decode(base);
            let mut line: Vec<u32> = (0..q)
                .map(|t| {
                    let pt: Vec<u64> = bvec
                        .iter()
                        .zip(dir)
                        .map(|(&bc, &dc)| field.add(bc, field.mul(t, dc)))
                        .collect();
                    let label = encode(&pt);
                    covered[label as usize] = true;
                    label as u32
                })
                .collect();
            line.sort_unstable();
            lines.push(line);
        }
    }
    lines.sort();
    Ok(lines)
}

/// Decompose q = p^e; None when q is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut n = q;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0u32;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            return if n == 1 { Some((p, e)) } else { None };
        }
        p += 1;
    }
    Some((n, 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_packing_partitions() {
        let d = PackingDesign::trivial(2, 3);
        assert_eq!(d.v(), 6);
        assert_eq!(d.blocks(), &[vec![0, 1, 2], vec![3, 4, 5]]);
        assert!(d.verify());

        let one = PackingDesign::trivial(1, 2);
        assert_eq!(one.blocks(), &[vec![0, 1]]);
        assert!(one.verify());
    }

    #[test]
    fn ag22_lines_are_all_pairs() {
        let lines = affine_lines(2, 2).unwrap();
        assert_eq!(lines.len(), 6);
        let expect: Vec<Vec<u32>> = vec![
            vec![0, 1],
            vec![0, 2],
            vec![0, 3],
            vec![1, 2],
            vec![1, 3],
            vec![2, 3],
        ];
        assert_eq!(lines, expect);
    }

    #[test]
    fn steiner_b2_d6() {
        let d = PackingDesign::steiner(6, 2).unwrap();
        assert_eq!(d.v(), 4);
        assert_eq!(d.num_blocks(), 6);
        assert!(d.verify());
    }

    #[test]
    fn steiner_b3_d9() {
        // AG(2,3) has 3 * (1 + 3) = 12 lines on 9 points
        let lines = affine_lines(3, 2).unwrap();
        assert_eq!(lines.len(), 12);
        let d = PackingDesign::steiner(9, 3).unwrap();
        assert_eq!(d.v(), 9);
        assert_eq!(d.num_blocks(), 9);
        assert!(d.verify());
    }

    #[test]
    fn line_counts_match_formula() {
        for (q, s) in [(2u64, 2u32), (3, 2), (2, 3), (4, 2), (5, 2)] {
            let lines = affine_lines(q, s).unwrap();
            assert_eq!(lines.len() as u128, line_count(q, s));
            // every line has exactly q points
            assert!(lines.iter().all(|l| l.len() == q as usize));
        }
    }

    #[test]
    fn steiner_lines_pairwise_once() {
        // in a Steiner system every pair is covered exactly once
        for (q, s) in [(2u64, 2u32), (3, 2), (2, 3)] {
            let lines = affine_lines(q, s).unwrap();
            let npoints = q.pow(s);
            let mut pairs = HashMap::new();
            for (idx, line) in lines.iter().enumerate() {
                for i in 0..line.len() {
                    for j in i + 1..line.len() {
                        assert!(pairs.insert((line[i], line[j]), idx).is_none());
                    }
                }
            }
            assert_eq!(pairs.len() as u64, npoints * (npoints - 1) / 2);
        }
    }

    #[test]
    fn verify_rejects_duplicate_pair() {
        let bad = PackingDesign::assemble(2, 2, vec![vec![0, 1], vec![0, 1]]);
        assert!(bad.is_err());
    }

    #[test]
    fn pair_lookup() {
        let d = PackingDesign::trivial(2, 3);
        assert_eq!(d.pair_to_block(3, 5), Some(1));
        assert_eq!(d.pair_to_block(5, 3), Some(1));
        assert_eq!(d.pair_to_block(0, 3), None);

        let s = PackingDesign::steiner(6, 2).unwrap();
        let idx = s.pair_to_block(0, 3).unwrap();
        assert_eq!(s.blocks()[idx as usize], vec![0, 3]);
    }

    #[test]
    fn steiner_parameter_choice() {
        assert_eq!(steiner_parameters(2, 6).unwrap(), (2, 2));
        assert_eq!(steiner_parameters(2, 7).unwrap(), (2, 3)); // 6 lines not enough
        assert_eq!(steiner_parameters(3, 9).unwrap(), (3, 2));
        assert_eq!(steiner_parameters(4, 2).unwrap(), (4, 2)); // q = 4 = 2^2
        assert_eq!(steiner_parameters(6, 2).unwrap(), (7, 2)); // 6 is not a prime power
    }

    #[test]
    fn steiner_point_bound() {
        // v = q^s <= sqrt(D) * q^2 for the chosen s
        for (b, d) in [(2u32, 5usize), (2, 20), (3, 9), (3, 30), (4, 10)] {
            let (q, s) = steiner_parameters(b as u64, d).unwrap();
            let v = (q as f64).powi(s as i32);
            assert!(v <= (d as f64).sqrt() * (q as f64) * (q as f64) + 1e-9);
        }
    }

    #[test]
    fn text_round_trip() {
        let d = PackingDesign::steiner(6, 2).unwrap();
        let text = d.to_text();
        let back = PackingDesign::from_text(&text).unwrap();
        assert_eq!(back.v(), d.v());
        assert_eq!(back.blocks(), d.blocks());
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
