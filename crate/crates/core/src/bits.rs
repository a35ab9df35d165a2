use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A fixed-width bit string, most significant bit first.
///
/// Ordering is lexicographic on the rendered string, so a shorter string
/// sorts before any of its extensions and equal-width strings sort numerically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct BitString {
    len: u8,
    bits: u64,
}

impl BitString {
    pub const MAX_LEN: u8 = 64;

    pub const fn empty() -> Self {
        BitString { len: 0, bits: 0 }
    }

    pub fn new(bits: u64, len: u8) -> Self {
        assert!(len <= Self::MAX_LEN, "bit string longer than 64");
        assert!(len == 64 || bits >> len == 0, "value {bits} does not fit in {len} bits");
        BitString { len, bits }
    }

    pub fn len(&self) -> u8 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn value(&self) -> u64 {
        self.bits
    }

    /// Bit at string index `i` (0 = leftmost).
    fn at(&self, i: u8) -> bool {
        (self.bits >> (self.len - 1 - i)) & 1 == 1
    }
}

impl Ord for BitString {
    fn cmp(&self, other: &Self) -> Ordering {
        let common = self.len.min(other.len);
        for i in 0..common {
            match self.at(i).cmp(&other.at(i)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for BitString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.at(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.len() > Self::MAX_LEN as usize {
            return Err(Error::Parse(format!("bit string of length {} exceeds 64", s.len())));
        }
        let mut bits = 0u64;
        for c in s.chars() {
            bits = (bits << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    _ => return Err(Error::Parse(format!("invalid bit character {c:?}"))),
                };
        }
        Ok(BitString { len: s.len() as u8, bits })
    }
}
