//! Double-error-correcting binary BCH building blocks.
//!
//! The constructions only ever need to recognize a sum of at most two columns
//! of the classical parity-check family `(beta^t, beta^{3t})` (or its extended
//! variant indexed by all field elements). Locators are found by solving the
//! Peterson relations with an exhaustive root scan; fields here are tiny.

use std::collections::HashMap;

use crate::algebra::BinaryExtField;
use crate::{Error, Result};

/// Result of decoding a syndrome against a column family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bch2Outcome {
    Zero,
    One(u64),
    /// Two column indices, ascending.
    Two(u64, u64),
    Fail,
}

/// The column family of a primitive 2-error-correcting BCH code over GF(2^a):
/// column `t` is `(beta^t, beta^{3t})` for `t` in `[2^a - 1]`. With `extended`
/// set, columns are `(beta_t, beta_t^3)` for all `2^a` field elements `beta_t`
/// (in integer order) and carry an implicit leading parity 1 handled by the
/// caller.
pub struct Bch2Component {
    field: BinaryExtField,
    extended: bool,
}

impl Bch2Component {
    pub fn new(a: u32, extended: bool) -> Result<Self> {
        if a < 2 {
            return Err(Error::Param(format!(
                "BCH field degree a = {a} must be >= 2"
            )));
        }
        Ok(Bch2Component {
            field: BinaryExtField::new(a)?,
            extended,
        })
    }

    pub fn field(&self) -> &BinaryExtField {
        &self.field
    }

    pub fn extended(&self) -> bool {
        self.extended
    }

    pub fn num_columns(&self) -> u64 {
        if self.extended {
            self.field.size()
        } else {
            self.field.order()
        }
    }

    /// The pair `(first, cube)` at column `t`.
    pub fn column(&self, t: u64) -> (u32, u32) {
        debug_assert!(t < self.num_columns());
        let x = if self.extended {
            t as u32
        } else {
            self.field.alpha_pow(t as i128)
        };
        (x, self.field.cube(x))
    }

    /// Decode a syndrome of the primitive family (not extended).
    ///
    /// `One(t)` exactly when `s0 != 0` and `s1 = s0^3`; `Two` via the Peterson
    /// relations `X1 + X2 = s0`, `X1 X2 = s1/s0 + s0^2` with roots found by a
    /// field scan.
    pub fn decode(&self, s0: u32, s1: u32) -> Bch2Outcome {
        debug_assert!(!self.extended);
        if s0 == 0 && s1 == 0 {
            return Bch2Outcome::Zero;
        }
        if s0 != 0 && s1 == self.field.cube(s0) {
            return Bch2Outcome::One(self.field.dlog(s0).expect("nonzero"));
        }
        if s0 == 0 {
            // X1 = X2 in characteristic 2; no two distinct locators sum to zero
            return Bch2Outcome::Fail;
        }
        match self.locator_roots(s0, s1) {
            // locators of the primitive family are nonzero
            Some((r1, r2)) if r1 != 0 && r2 != 0 => {
                let t1 = self.field.dlog(r1).expect("nonzero");
                let t2 = self.field.dlog(r2).expect("nonzero");
                Bch2Outcome::Two(t1.min(t2), t1.max(t2))
            }
            _ => Bch2Outcome::Fail,
        }
    }

    /// Decode a syndrome of the extended family; `parity` is the leading bit.
    pub fn decode_extended(&self, parity: bool, s0: u32, s1: u32) -> Bch2Outcome {
        debug_assert!(self.extended);
        if !parity && s0 == 0 && s1 == 0 {
            return Bch2Outcome::Zero;
        }
        if parity {
            if s1 == self.field.cube(s0) {
                return Bch2Outcome::One(s0 as u64);
            }
            return Bch2Outcome::Fail;
        }
        if s0 == 0 {
            return Bch2Outcome::Fail;
        }
        match self.locator_roots(s0, s1) {
            Some((r1, r2)) => {
                let (t1, t2) = (r1 as u64, r2 as u64);
                Bch2Outcome::Two(t1.min(t2), t1.max(t2))
            }
            None => Bch2Outcome::Fail,
        }
    }

    /// Distinct roots of `z^2 + s0 z + (s1/s0 + s0^2)`, if there are two.
    fn locator_roots(&self, s0: u32, s1: u32) -> Option<(u32, u32)> {
        let f = &self.field;
        let product = f.add(f.div(s1, s0).expect("s0 nonzero"), f.mul(s0, s0));
        let mut roots = [0u32; 2];
        let mut found = 0usize;
        for z in f.elements() {
            let val = f.add(f.add(f.mul(z, z), f.mul(s0, z)), product);
            if val == 0 {
                if found == 2 {
                    return None;
                }
                roots[found] = z;
                found += 1;
            }
        }
        if found == 2 {
            Some((roots[0], roots[1]))
        } else {
            None
        }
    }
}

/// A 2a x v parity-check matrix of a shortened double-error-correcting BCH
/// code: column `i` packs the bits of `(beta^i, beta^{3i})`, `i` in `[v]`.
///
/// Decoding identifies the unique subset of at most two columns with a given
/// sum, through a table of all `C(v,2) + v + 1` syndromes built up front.
pub struct ShortenedBch2Matrix {
    a: u32,
    v: u64,
    columns: Vec<u64>,
    table: HashMap<u64, Bch2Outcome>,
}

impl ShortenedBch2Matrix {
    pub fn new(a: u32, v: u64) -> Result<Self> {
        let field = BinaryExtField::new(a)?;
        if v > field.order() {
            return Err(Error::Param(format!(
                "shortened length v = {v} exceeds 2^{a} - 1"
            )));
        }
        let columns: Vec<u64> = (0..v)
            .map(|i| {
                let x = field.alpha_pow(i as i128);
                x as u64 | (field.cube(x) as u64) << a
            })
            .collect();
        let mut table = HashMap::new();
        table.insert(0u64, Bch2Outcome::Zero);
        for (i, &col) in columns.iter().enumerate() {
            if table.insert(col, Bch2Outcome::One(i as u64)).is_some() {
                return Err(Error::SyndromeCollision(format!(
                    "single column {i} collides (a = {a}, v = {v})"
                )));
            }
        }
        for i in 0..v as usize {
            for j in i + 1..v as usize {
                let s = columns[i] ^ columns[j];
                if table
                    .insert(s, Bch2Outcome::Two(i as u64, j as u64))
                    .is_some()
                {
                    return Err(Error::SyndromeCollision(format!(
                        "pair ({i},{j}) collides (a = {a}, v = {v})"
                    )));
                }
            }
        }
        Ok(ShortenedBch2Matrix {
            a,
            v,
            columns,
            table,
        })
    }

    /// Number of binary rows, 2a.
    pub fn bit_rows(&self) -> u32 {
        2 * self.a
    }

    pub fn len(&self) -> u64 {
        self.v
    }

    pub fn is_empty(&self) -> bool {
        self.v == 0
    }

    /// Column `i` as a packed 2a-bit word.
    pub fn column_bits(&self, i: u64) -> u64 {
        self.columns[i as usize]
    }

    /// Identify the subset of at most two columns summing to `s`.
    pub fn decode(&self, s: u64) -> Bch2Outcome {
        self.table.get(&s).copied().unwrap_or(Bch2Outcome::Fail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_columns() {
        let c = Bch2Component::new(2, false).unwrap();
        assert_eq!(c.num_columns(), 3);
        // beta^0 = 1, beta^1 = x, beta^2 = x + 1; cubes are all 1 in GF(4)
        assert_eq!(c.column(0), (1, 1));
        assert_eq!(c.column(1), (2, 1));
        assert_eq!(c.column(2), (3, 1));
    }

    #[test]
    fn extended_has_all_field_elements() {
        let c = Bch2Component::new(3, true).unwrap();
        assert_eq!(c.num_columns(), 8);
        let firsts: Vec<u32> = (0..8).map(|t| c.column(t).0).collect();
        assert_eq!(firsts, (0..8).collect::<Vec<u32>>());
    }

    #[test]
    fn columns_distinct_small_degrees() {
        for a in 2..=6 {
            for ext in [false, true] {
                let c = Bch2Component::new(a, ext).unwrap();
                let cols: Vec<(u32, u32)> = (0..c.num_columns()).map(|t| c.column(t)).collect();
                for i in 0..cols.len() {
                    for j in 0..i {
                        assert_ne!(cols[i], cols[j], "a={a} ext={ext}");
                    }
                }
            }
        }
    }

    #[test]
    fn decode_zero_and_single() {
        let c = Bch2Component::new(3, false).unwrap();
        assert_eq!(c.decode(0, 0), Bch2Outcome::Zero);
        let f = c.field();
        let (s0, s1) = (f.alpha_pow(2), f.alpha_pow(6));
        assert_eq!(c.decode(s0, s1), Bch2Outcome::One(2));
    }

    #[test]
    fn decode_pair_in_gf8() {
        let c = Bch2Component::new(3, false).unwrap();
        let (x0, y0) = c.column(0);
        let (x1, y1) = c.column(1);
        assert_eq!(c.decode(x0 ^ x1, y0 ^ y1), Bch2Outcome::Two(0, 1));
    }

    #[test]
    fn exhaustive_decode_inverts_all_small_syndromes() {
        for a in 2..=6 {
            let c = Bch2Component::new(a, false).unwrap();
            let n = c.num_columns();
            let mut seen = HashMap::new();
            assert!(seen.insert((0u32, 0u32), Bch2Outcome::Zero).is_none());
            for t in 0..n {
                let (x, y) = c.column(t);
                assert!(seen.insert((x, y), Bch2Outcome::One(t)).is_none());
                assert_eq!(c.decode(x, y), Bch2Outcome::One(t));
            }
            for t1 in 0..n {
                for t2 in t1 + 1..n {
                    let (x1, y1) = c.column(t1);
                    let (x2, y2) = c.column(t2);
                    let s = (x1 ^ x2, y1 ^ y2);
                    // syndromes of distinct <=2-subsets are pairwise distinct
                    assert!(seen.insert(s, Bch2Outcome::Two(t1, t2)).is_none(), "a={a}");
                    assert_eq!(c.decode(s.0, s.1), Bch2Outcome::Two(t1, t2));
                }
            }
        }
    }

    #[test]
    fn exhaustive_decode_extended() {
        for a in 2..=6 {
            let c = Bch2Component::new(a, true).unwrap();
            let n = c.num_columns();
            let mut seen = HashMap::new();
            assert!(seen
                .insert((false, 0u32, 0u32), Bch2Outcome::Zero)
                .is_none());
            for t in 0..n {
                let (x, y) = c.column(t);
                assert!(seen.insert((true, x, y), Bch2Outcome::One(t)).is_none());
                assert_eq!(c.decode_extended(true, x, y), Bch2Outcome::One(t));
            }
            for t1 in 0..n {
                for t2 in t1 + 1..n {
                    let (x1, y1) = c.column(t1);
                    let (x2, y2) = c.column(t2);
                    let s = (false, x1 ^ x2, y1 ^ y2);
                    assert!(seen.insert(s, Bch2Outcome::Two(t1, t2)).is_none(), "a={a}");
                    assert_eq!(c.decode_extended(false, s.1, s.2), Bch2Outcome::Two(t1, t2));
                }
            }
        }
    }

    #[test]
    fn single_and_double_signatures_disjoint() {
        // no two-column sum ever satisfies s1 = s0^3 with s0 nonzero
        for a in 2..=6 {
            let c = Bch2Component::new(a, false).unwrap();
            let f = c.field();
            let n = c.num_columns();
            for t1 in 0..n {
                for t2 in t1 + 1..n {
                    let (x1, y1) = c.column(t1);
                    let (x2, y2) = c.column(t2);
                    let (s0, s1) = (x1 ^ x2, y1 ^ y2);
                    assert!(!(s0 != 0 && s1 == f.cube(s0)), "a={a} t1={t1} t2={t2}");
                }
            }
        }
    }

    #[test]
    fn shortened_matrix_decodes_column_sums() {
        let m = ShortenedBch2Matrix::new(3, 6).unwrap();
        assert_eq!(m.decode(0), Bch2Outcome::Zero);
        assert_eq!(m.decode(m.column_bits(3)), Bch2Outcome::One(3));
        let s = m.column_bits(1) ^ m.column_bits(4);
        assert_eq!(m.decode(s), Bch2Outcome::Two(1, 4));
        // a syndrome outside the table fails
        let mut alien = 1u64;
        while m.decode(alien) != Bch2Outcome::Fail {
            alien += 1;
        }
        assert!(alien < 64);
    }

    #[test]
    fn shortened_matrix_rejects_overlong() {
        assert!(ShortenedBch2Matrix::new(3, 8).is_err());
        assert!(ShortenedBch2Matrix::new(3, 7).is_ok());
    }

    #[test]
    fn degree_one_rejected() {
        assert!(Bch2Component::new(1, false).is_err());
    }
}
