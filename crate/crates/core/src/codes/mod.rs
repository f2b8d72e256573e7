//! The burst-code constructions: parity-check column rules, systematic
//! encoding, syndrome computation, and decoding.
//!
//! Every code is specified by a column rule assigning a binary column to each
//! cell of the `side^D` array. The rule is available both as a pure function
//! (for streaming syndromes) and materialized as a matrix (for rank
//! measurement and encoding). Decoders recover candidate error positions from
//! syndrome segments and always confirm them by recomputing the full
//! syndrome, so out-of-model inputs surface as `Uncorrectable` rather than a
//! wrong answer.

mod build;
mod decode;
mod word;

pub use build::{
    build_l1, build_l1_b3, build_linf, build_linf_ext, build_linf_ext_pow2, build_straight,
};
pub use decode::SyndromeTable;
pub use word::ArrayWord;

use crate::algebra::{BinaryExtField, Gf2Matrix};
use crate::bch2::{Bch2Component, ShortenedBch2Matrix};
use crate::designs::PackingDesign;
use crate::indexing::{from_value, to_value, vec_mod, Coord};
use crate::leecode::LeeBchCode;
use crate::models::{BurstModel, ErrorPattern, ModelKind};
use crate::{Caps, Error, Result};

/// Which construction a code uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Cells `[n]^D`.
    LinfBasic,
    /// Cells `[bn]^D`; needs gcd(b, 2^m - 1) = 1.
    LinfExt,
    /// The extended-BCH variant of `LinfExt` for b a power of 2; one bit less.
    LinfExtPow2,
    /// Cells `[np]^D` for the smallest prime p >= 2b + 1; Lee-metric core.
    L1,
    /// The dedicated b = 3 L1 code on `[n]^D`, decoded by syndrome table.
    L1B3,
    /// Packing-design construction on `[n]^D`.
    Straight,
}

impl Variant {
    pub fn model_kind(&self) -> ModelKind {
        match self {
            Variant::LinfBasic | Variant::LinfExt | Variant::LinfExtPow2 => ModelKind::Linf,
            Variant::L1 | Variant::L1B3 => ModelKind::L1,
            Variant::Straight => ModelKind::Straight,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Variant::LinfBasic => "basic",
            Variant::LinfExt => "extended",
            Variant::LinfExtPow2 => "extended-pow2",
            Variant::L1 => "basic",
            Variant::L1B3 => "b3",
            Variant::Straight => "basic",
        }
    }

    pub fn parse(model: &str, variant: &str) -> Result<Self> {
        match (model, variant) {
            ("linf", "basic") => Ok(Variant::LinfBasic),
            ("linf", "extended") => Ok(Variant::LinfExt),
            ("linf", "extended-pow2") => Ok(Variant::LinfExtPow2),
            ("l1", "basic") => Ok(Variant::L1),
            ("l1", "b3") => Ok(Variant::L1B3),
            ("straight", "basic") => Ok(Variant::Straight),
            _ => Err(Error::Parse(format!(
                "unknown model/variant pair '{model}/{variant}'"
            ))),
        }
    }
}

/// Which packing design backs a straight-model code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DesignChoice {
    Trivial,
    Steiner,
}

impl DesignChoice {
    pub fn name(&self) -> &'static str {
        match self {
            DesignChoice::Trivial => "trivial",
            DesignChoice::Steiner => "steiner",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "trivial" => Ok(DesignChoice::Trivial),
            "steiner" => Ok(DesignChoice::Steiner),
            other => Err(Error::Parse(format!("unknown design '{other}'"))),
        }
    }
}

/// The parameters that determine a code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSpec {
    pub variant: Variant,
    pub n: i64,
    pub b: i64,
    pub d: usize,
    /// Only meaningful for the straight model.
    pub design: Option<DesignChoice>,
}

impl CodeSpec {
    pub fn model_kind(&self) -> ModelKind {
        self.variant.model_kind()
    }

    pub fn model(&self) -> Result<BurstModel> {
        BurstModel::new(self.model_kind(), self.b)
    }

    /// Flat key-value serialization; one `key value` pair per line.
    pub fn to_kv(&self) -> String {
        format!(
            "model {}\nvariant {}\nn {}\nb {}\nD {}\ndesign {}\n",
            self.model_kind().name(),
            self.variant.name(),
            self.n,
            self.b,
            self.d,
            self.design.map_or("-", |d| d.name()),
        )
    }

    pub fn parse_kv(text: &str) -> Result<Self> {
        let mut fields = std::collections::HashMap::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| Error::Parse(format!("bad spec line '{line}'")))?;
            fields.insert(key.to_string(), value.trim().to_string());
        }
        let get = |key: &str| -> Result<&String> {
            fields
                .get(key)
                .ok_or_else(|| Error::Parse(format!("missing spec key '{key}'")))
        };
        let int = |key: &str| -> Result<i64> {
            get(key)?
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer for '{key}'")))
        };
        let variant = Variant::parse(get("model")?, get("variant")?)?;
        let design = match fields.get("design").map(String::as_str) {
            None | Some("-") => None,
            Some(s) => Some(DesignChoice::parse(s)?),
        };
        Ok(CodeSpec {
            variant,
            n: int("n")?,
            b: int("b")?,
            d: int("D")? as usize,
            design,
        })
    }
}

/// One named bit range of the syndrome.
#[derive(Debug, Clone, Copy)]
pub struct Segment {
    pub name: &'static str,
    pub lo: usize,
    pub len: usize,
}

/// A syndrome: `rows` bits, packed little-endian into words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Syndrome(pub Vec<u64>);

impl Syndrome {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
}

/// Variant-specific decoding machinery, built once per code.
pub(crate) enum Machinery {
    Linf {
        bch: Bch2Component,
    },
    L1 {
        bch: Bch2Component,
        lee: LeeBchCode,
        gamma: BinaryExtField,
        p: i64,
    },
    L1B3 {
        amat: ShortenedBch2Matrix,
        b_rows: u32,
        table: SyndromeTable,
    },
    Straight {
        amat: ShortenedBch2Matrix,
        design: PackingDesign,
    },
}

/// Decoder verdict for a received word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeOutcome {
    NoError,
    Single(Coord),
    Double(Coord, Coord),
    Uncorrectable,
}

impl DecodeOutcome {
    /// Canonical Double with positions in linear-index order.
    pub fn double(a: Coord, b: Coord) -> Self {
        let pat = ErrorPattern::pair(a, b);
        let pos = pat.positions();
        DecodeOutcome::Double(pos[0].clone(), pos[1].clone())
    }

    /// The outcome a perfect decoder must return for a known pattern.
    pub fn from_pattern(pat: &ErrorPattern) -> Self {
        match pat.positions() {
            [] => DecodeOutcome::NoError,
            [c] => DecodeOutcome::Single(c.clone()),
            [a, b] => DecodeOutcome::Double(a.clone(), b.clone()),
            _ => unreachable!("patterns have weight <= 2"),
        }
    }
}

impl std::fmt::Display for DecodeOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DecodeOutcome::NoError => write!(f, "no-error"),
            DecodeOutcome::Single(c) => write!(f, "single {c}"),
            DecodeOutcome::Double(a, b) => write!(f, "double {a} {b}"),
            DecodeOutcome::Uncorrectable => write!(f, "uncorrectable"),
        }
    }
}

/// A built code: column rule, materialized parity-check matrix, and the
/// machinery its decoder needs. Immutable after construction.
pub struct BurstCode {
    spec: CodeSpec,
    side: i64,
    ncells: usize,
    m: u32,
    alpha: BinaryExtField,
    rows: usize,
    segs: Vec<Segment>,
    machinery: Machinery,
    h: Gf2Matrix,
    ht: Gf2Matrix,
    rank: usize,
    pivots: Vec<usize>,
    rref: Gf2Matrix,
}

impl BurstCode {
    /// Build the code described by `spec` under the given size caps.
    pub fn build(spec: &CodeSpec, caps: &Caps) -> Result<Self> {
        build::build(spec, caps)
    }

    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    pub fn model(&self) -> BurstModel {
        self.spec.model().expect("validated at build")
    }

    /// Array side length (n, bn, or np depending on the variant).
    pub fn side(&self) -> i64 {
        self.side
    }

    /// Total number of cells, `side^D`.
    pub fn ncells(&self) -> usize {
        self.ncells
    }

    /// Number of binary rows of H before rank reduction.
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Code dimension `k = N - rank(H)`.
    pub fn dimension(&self) -> usize {
        self.ncells - self.rank
    }

    /// Measured excess redundancy `rank(H) - ceil(log2 N)`.
    pub fn xi(&self) -> i64 {
        self.rank as i64 - (usize::BITS - (self.ncells - 1).leading_zeros()) as i64
    }

    /// Degree of the position field GF(2^m).
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn alpha_field(&self) -> &BinaryExtField {
        &self.alpha
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segs
    }

    /// The materialized parity-check matrix.
    pub fn h(&self) -> &Gf2Matrix {
        &self.h
    }

    /// For the L1 variant: the prime p of the inner Lee code.
    pub fn lee_prime(&self) -> Option<i64> {
        match &self.machinery {
            Machinery::L1 { p, .. } => Some(*p),
            _ => None,
        }
    }

    /// For the straight variant: the packing design in use.
    pub fn design(&self) -> Option<&PackingDesign> {
        match &self.machinery {
            Machinery::Straight { design, .. } => Some(design),
            _ => None,
        }
    }

    pub(crate) fn words_per_col(&self) -> usize {
        self.rows.div_ceil(64)
    }

    /// The column of H at a cell, recomputed from the construction formula
    /// (independent of the materialized matrix).
    pub fn column_rule(&self, cell: usize) -> Vec<u64> {
        let coord = from_value(cell as i64, self.side, self.spec.d).expect("cell in range");
        self.column_of_coord(&coord)
    }

    /// Column rule evaluated at a coordinate.
    pub fn column_of_coord(&self, i: &Coord) -> Vec<u64> {
        let mut words = vec![0u64; self.words_per_col()];
        let n = self.spec.n;
        let b = self.spec.b;
        let d = self.spec.d;
        let i_n = to_value(i, n).expect("checked at build");
        match &self.machinery {
            Machinery::Linf { bch } => {
                let t = to_value(&vec_mod(i, b), b).expect("small");
                if self.spec.variant == Variant::LinfExtPow2 {
                    let el = t as u32;
                    self.put(&mut words, 0, 1);
                    self.put(&mut words, 1, el as u64);
                    self.put(&mut words, 2, bch.field().cube(el) as u64);
                    self.put_block_parities(&mut words, 3, i, b);
                    self.put(&mut words, 4, self.alpha.alpha_pow(i_n as i128) as u64);
                } else {
                    self.put(&mut words, 0, bch.field().alpha_pow(t as i128) as u64);
                    self.put(&mut words, 1, bch.field().alpha_pow(3 * t as i128) as u64);
                    self.put_block_parities(&mut words, 2, i, b);
                    self.put(&mut words, 3, self.alpha.alpha_pow(i_n as i128) as u64);
                }
            }
            Machinery::L1 { bch, lee, gamma, p } => {
                let imodp = vec_mod(i, *p);
                let residues: Vec<u64> = imodp.0.iter().map(|&x| x as u64).collect();
                let t = lee.syndrome_key(&lee.syndrome(&residues)) as i128;
                self.put(&mut words, 0, bch.field().alpha_pow(t) as u64);
                self.put(&mut words, 1, bch.field().alpha_pow(3 * t) as u64);
                self.put_block_parities(&mut words, 2, i, *p);
                let v3 = to_value(&imodp, *p).expect("small");
                self.put(&mut words, 3, gamma.alpha_pow(v3 as i128) as u64);
                self.put(&mut words, 4, self.alpha.alpha_pow(i_n as i128) as u64);
            }
            Machinery::L1B3 { amat, b_rows, .. } => {
                self.put(&mut words, 0, 1);
                let mut sa = 0u64;
                for (t, &x) in i.0.iter().enumerate() {
                    if x & 1 == 1 {
                        sa ^= amat.column_bits(t as u64);
                    }
                }
                self.put(&mut words, 1, sa);
                let total: i64 = i.0.iter().sum();
                self.put(&mut words, 2, (total / 2 % 2) as u64);
                let mut sb = 0u64;
                for k in 0..*b_rows {
                    let dot: i64 =
                        i.0.iter()
                            .enumerate()
                            .filter(|(t, _)| (*t >> k) & 1 == 1)
                            .map(|(_, &x)| x)
                            .sum();
                    sb |= ((dot / 2 % 2) as u64) << k;
                }
                self.put(&mut words, 3, sb);
                self.put(&mut words, 4, self.alpha.alpha_pow(i_n as i128) as u64);
            }
            Machinery::Straight { amat, design } => {
                self.put(&mut words, 0, 1);
                let mut s1 = 0u64;
                for (ell, &x) in i.0.iter().enumerate() {
                    let point = design.blocks()[ell][(x % b) as usize];
                    s1 ^= amat.column_bits(point as u64);
                }
                self.put(&mut words, 1, s1);
                let total: i64 = i.0.iter().map(|&x| x / b).sum();
                self.put(&mut words, 2, (total % 2) as u64);
                self.put(&mut words, 3, self.alpha.alpha_pow(i_n as i128) as u64);
            }
        }
        debug_assert_eq!(d, i.dim());
        words
    }

    fn put(&self, words: &mut [u64], seg_idx: usize, val: u64) {
        let seg = self.segs[seg_idx];
        set_bits(words, seg.lo, seg.len, val);
    }

    /// The `floor(i/q) mod 2` block: one bit per dimension.
    fn put_block_parities(&self, words: &mut [u64], seg_idx: usize, i: &Coord, q: i64) {
        let mut val = 0u64;
        for (t, &x) in i.0.iter().enumerate() {
            val |= ((x / q % 2) as u64) << t;
        }
        self.put(words, seg_idx, val);
    }

    /// Column of the materialized matrix (reflects injected faults).
    pub fn column(&self, cell: usize) -> &[u64] {
        self.ht.row(cell)
    }

    /// H y^T, from the materialized matrix.
    pub fn syndrome(&self, word: &ArrayWord) -> Result<Syndrome> {
        if word.len() != self.ncells {
            return Err(Error::LengthMismatch {
                expected: self.ncells,
                got: word.len(),
            });
        }
        let mut acc = vec![0u64; self.words_per_col()];
        for cell in word.ones() {
            for (a, &c) in acc.iter_mut().zip(self.ht.row(cell)) {
                *a ^= c;
            }
        }
        Ok(Syndrome(acc))
    }

    /// H y^T recomputed from the column rule, without the materialized
    /// matrix. Streaming counterpart of [`BurstCode::syndrome`]; the two
    /// agree unless a fault has been injected into the matrix.
    pub fn syndrome_from_rule(&self, word: &ArrayWord) -> Result<Syndrome> {
        if word.len() != self.ncells {
            return Err(Error::LengthMismatch {
                expected: self.ncells,
                got: word.len(),
            });
        }
        let mut acc = vec![0u64; self.words_per_col()];
        for cell in word.ones() {
            for (a, c) in acc.iter_mut().zip(self.column_rule(cell)) {
                *a ^= c;
            }
        }
        Ok(Syndrome(acc))
    }

    /// Syndrome of an error pattern alone (the sum of its columns).
    pub fn syndrome_of_pattern(&self, pat: &ErrorPattern) -> Syndrome {
        let mut acc = vec![0u64; self.words_per_col()];
        for pos in pat.positions() {
            let cell = to_value(pos, self.side).expect("in box") as usize;
            for (a, &c) in acc.iter_mut().zip(self.ht.row(cell)) {
                *a ^= c;
            }
        }
        Syndrome(acc)
    }

    /// Value of a named syndrome segment.
    pub fn seg_value(&self, syn: &Syndrome, seg_idx: usize) -> u64 {
        let seg = self.segs[seg_idx];
        extract_bits(&syn.0, seg.lo, seg.len)
    }

    /// Systematic encoding: message bits go verbatim to the non-pivot cells,
    /// pivot cells are solved from the reduced matrix.
    pub fn encode(&self, message: &[bool]) -> Result<ArrayWord> {
        let k = self.dimension();
        if message.len() != k {
            return Err(Error::LengthMismatch {
                expected: k,
                got: message.len(),
            });
        }
        let mut word = ArrayWord::zero(self.side, self.spec.d)?;
        let pivot_set: std::collections::HashSet<usize> = self.pivots.iter().copied().collect();
        let mut msg = message.iter();
        for cell in 0..self.ncells {
            if !pivot_set.contains(&cell) && *msg.next().expect("k message bits") {
                word.set(cell, true);
            }
        }
        // each reduced row forces its pivot bit to the sum of its other bits
        for (row, &p) in self.pivots.iter().enumerate() {
            let mut acc = false;
            for cell in self.row_support(row) {
                if cell != p && word.get(cell) {
                    acc = !acc;
                }
            }
            word.set(p, acc);
        }
        Ok(word)
    }

    fn row_support(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        let words = self.rref.row(row);
        words.iter().enumerate().flat_map(move |(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }

    /// A uniformly random codeword from the given RNG.
    pub fn random_codeword(&self, rng: &mut impl rand::Rng) -> ArrayWord {
        let msg: Vec<bool> = (0..self.dimension()).map(|_| rng.gen()).collect();
        self.encode(&msg).expect("length matches")
    }

    /// A random codeword drawn deterministically from a seed.
    pub fn random_codeword_seeded(&self, seed: u64) -> ArrayWord {
        use rand_chacha::rand_core::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        self.random_codeword(&mut rng)
    }

    /// Decode a received word with the variant's algorithmic decoder
    /// (the syndrome table for the b = 3 variant).
    pub fn decode(&self, word: &ArrayWord) -> Result<DecodeOutcome> {
        Ok(self.decode_syndrome(&self.syndrome(word)?))
    }

    /// Apply an outcome to a word, flipping the identified positions.
    pub fn correct(&self, word: &ArrayWord, outcome: &DecodeOutcome) -> ArrayWord {
        let mut out = word.clone();
        let mut flip = |c: &Coord| {
            let cell = to_value(c, self.side).expect("in box") as usize;
            out.flip(cell);
        };
        match outcome {
            DecodeOutcome::Single(c) => flip(c),
            DecodeOutcome::Double(a, b) => {
                flip(a);
                flip(b);
            }
            _ => {}
        }
        out
    }

    /// A copy with one column of H zeroed, for fault-injection tests. The
    /// rank data and any internal table are rebuilt against the damaged
    /// matrix; the column rule keeps reporting the intact formula.
    pub fn with_zeroed_column(&self, cell: usize, caps: &Caps) -> Result<Self> {
        let mut h = self.h.clone();
        let mut ht = self.ht.clone();
        for r in 0..self.rows {
            h.set(r, cell, false);
            ht.set(cell, r, false);
        }
        let (rref, pivots) = h.row_reduce();
        let rank = pivots.len();
        let mut code = BurstCode {
            spec: self.spec.clone(),
            side: self.side,
            ncells: self.ncells,
            m: self.m,
            alpha: BinaryExtField::new(self.m)?,
            rows: self.rows,
            segs: self.segs.clone(),
            machinery: build::rebuild_machinery(&self.spec, self.m)?,
            h,
            ht,
            rank,
            pivots,
            rref,
        };
        if matches!(code.machinery, Machinery::L1B3 { .. }) {
            // table against the damaged matrix; collisions surface as errors
            let table = SyndromeTable::build_raw(&code, caps)?;
            if let Machinery::L1B3 { table: slot, .. } = &mut code.machinery {
                *slot = table;
            }
        }
        Ok(code)
    }
}

pub(crate) fn extract_bits(words: &[u64], lo: usize, len: usize) -> u64 {
    debug_assert!(len <= 64);
    if len == 0 {
        return 0;
    }
    let w = lo / 64;
    let off = lo % 64;
    let mut v = words[w] >> off;
    if off + len > 64 {
        v |= words[w + 1] << (64 - off);
    }
    if len == 64 {
        v
    } else {
        v & ((1u64 << len) - 1)
    }
}

pub(crate) fn set_bits(words: &mut [u64], lo: usize, len: usize, val: u64) {
    debug_assert!(len <= 64);
    if len == 0 {
        return;
    }
    debug_assert!(len == 64 || val < (1u64 << len));
    let w = lo / 64;
    let off = lo % 64;
    words[w] |= val << off;
    if off + len > 64 {
        words[w + 1] |= val >> (64 - off);
    }
}
