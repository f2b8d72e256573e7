//! Binary array words and their hex file format.

use crate::{Error, Result};

/// A binary word laid out on a `side^D` array in linear-index order
/// (coordinate 0 is the fastest-varying digit).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrayWord {
    side: i64,
    d: usize,
    len: usize,
    bits: Vec<u64>,
}

impl ArrayWord {
    pub fn zero(side: i64, d: usize) -> Result<Self> {
        if side < 1 || d == 0 {
            return Err(Error::Param(format!("bad word shape side={side}, D={d}")));
        }
        let len = (side as u128)
            .checked_pow(d as u32)
            .ok_or(Error::Overflow)?;
        let len = usize::try_from(len).map_err(|_| Error::Overflow)?;
        Ok(ArrayWord {
            side,
            d,
            len,
            bits: vec![0; len.div_ceil(64)],
        })
    }

    pub fn side(&self) -> i64 {
        self.side
    }

    pub fn dims(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, cell: usize) -> bool {
        debug_assert!(cell < self.len);
        self.bits[cell / 64] >> (cell % 64) & 1 == 1
    }

    pub fn set(&mut self, cell: usize, v: bool) {
        debug_assert!(cell < self.len);
        if v {
            self.bits[cell / 64] |= 1 << (cell % 64);
        } else {
            self.bits[cell / 64] &= !(1 << (cell % 64));
        }
    }

    pub fn flip(&mut self, cell: usize) {
        debug_assert!(cell < self.len);
        self.bits[cell / 64] ^= 1 << (cell % 64);
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of the set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(wi, &w)| {
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

    /// File format: header `BW1 side=<s> D=<d>`, then `ceil(N/4)` hex digits,
    /// least-significant bit of each digit first.
    pub fn to_text(&self) -> String {
        let ndigits = self.len.div_ceil(4);
        let mut out = format!("BW1 side={} D={}\n", self.side, self.d);
        out.reserve(ndigits + 1);
        for g in 0..ndigits {
            let mut nibble = 0u8;
            for k in 0..4 {
                let cell = 4 * g + k;
                if cell < self.len && self.get(cell) {
                    nibble |= 1 << k;
                }
            }
            out.push(char::from_digit(nibble as u32, 16).expect("nibble"));
        }
        out.push('\n');
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty word file".into()))?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("BW1") {
            return Err(Error::Parse("word file must start with 'BW1'".into()));
        }
        let mut side = None;
        let mut d = None;
        for part in parts {
            if let Some(v) = part.strip_prefix("side=") {
                side = v.parse::<i64>().ok();
            } else if let Some(v) = part.strip_prefix("D=") {
                d = v.parse::<usize>().ok();
            }
        }
        let (side, d) = match (side, d) {
            (Some(s), Some(d)) => (s, d),
            _ => return Err(Error::Parse(format!("bad word header '{header}'"))),
        };
        let mut word = ArrayWord::zero(side, d)?;
        let ndigits = word.len.div_ceil(4);
        let mut seen = 0usize;
        for line in lines {
            for ch in line.trim().chars() {
                let nibble = ch
                    .to_digit(16)
                    .ok_or_else(|| Error::Parse(format!("bad hex digit '{ch}'")))?;
                if seen >= ndigits {
                    return Err(Error::Parse("too many hex digits".into()));
                }
                for k in 0..4 {
                    let cell = 4 * seen + k;
                    if cell < word.len && nibble >> k & 1 == 1 {
                        word.set(cell, true);
                    }
                }
                seen += 1;
            }
        }
        if seen != ndigits {
            return Err(Error::Parse(format!(
                "expected {ndigits} hex digits, found {seen}"
            )));
        }
        Ok(word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_flip() {
        let mut w = ArrayWord::zero(4, 2).unwrap();
        assert_eq!(w.len(), 16);
        w.set(5, true);
        w.flip(9);
        w.flip(5);
        assert!(!w.get(5));
        assert!(w.get(9));
        assert_eq!(w.weight(), 1);
        assert_eq!(w.ones().collect::<Vec<_>>(), vec![9]);
    }

    #[test]
    fn text_round_trip() {
        let mut w = ArrayWord::zero(3, 3).unwrap(); // 27 cells -> 7 digits
        for cell in [0, 1, 4, 13, 26] {
            w.set(cell, true);
        }
        let text = w.to_text();
        assert!(text.starts_with("BW1 side=3 D=3\n"));
        assert_eq!(ArrayWord::from_text(&text).unwrap(), w);
    }

    #[test]
    fn nibble_order_lsb_first() {
        let mut w = ArrayWord::zero(8, 1).unwrap();
        w.set(0, true); // digit 0 bit 0
        w.set(5, true); // digit 1 bit 1
        let text = w.to_text();
        assert_eq!(text.lines().nth(1).unwrap(), "12");
    }

    #[test]
    fn rejects_malformed() {
        assert!(ArrayWord::from_text("").is_err());
        assert!(ArrayWord::from_text("BW1 side=4\nff").is_err());
        assert!(ArrayWord::from_text("BW1 side=4 D=1\nzz").is_err());
        assert!(ArrayWord::from_text("BW1 side=8 D=1\nf").is_err()); // short
        assert!(ArrayWord::from_text("BW1 side=8 D=1\nfff").is_err()); // long
    }
}
