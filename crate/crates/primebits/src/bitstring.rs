//! Packed bit strings addressed by 1-based position.
//!
//! Position `k` stands for the natural number `k`, so a string of prime
//! occurrences has a 1 exactly where `k` is prime. The operations here are
//! the ones the sieve and pairing constructions need: positionwise OR/AND,
//! reversal, shift by one, block append, and set-bit extraction.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

const WORD_BITS: u64 = 64;

/// A finite sequence of bits, position 1 first.
///
/// Bit `k` lives at bit `(k - 1) % 64` of word `(k - 1) / 64`, least
/// significant bit first. Bits beyond `len` are kept zero, so equality and
/// hashing work on the words directly. The same layout cut into bytes is the
/// packed serialization format (see [`BitString::to_packed`]).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    len: u64,
    words: Vec<u64>,
}

impl BitString {
    /// All-zero string of the given length.
    pub fn zeros(len: u64) -> Self {
        let words = vec![0u64; len.div_ceil(WORD_BITS) as usize];
        BitString { len, words }
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bit at 1-based position `pos`.
    pub fn get(&self, pos: u64) -> Result<bool, Error> {
        if pos == 0 || pos > self.len {
            return Err(Error::PositionOutOfRange {
                pos,
                len: self.len,
            });
        }
        Ok(self.bit(pos))
    }

    /// Unchecked variant of [`get`](Self::get) for hot paths.
    #[inline]
    pub(crate) fn bit(&self, pos: u64) -> bool {
        debug_assert!(pos >= 1 && pos <= self.len);
        let idx = pos - 1;
        self.words[(idx / WORD_BITS) as usize] >> (idx % WORD_BITS) & 1 == 1
    }

    /// Sets position `pos` to `value`, leaving every other position unchanged.
    pub fn set(&mut self, pos: u64, value: bool) -> Result<(), Error> {
        if pos == 0 || pos > self.len {
            return Err(Error::PositionOutOfRange {
                pos,
                len: self.len,
            });
        }
        self.set_bit(pos, value);
        Ok(())
    }

    #[inline]
    pub(crate) fn set_bit(&mut self, pos: u64, value: bool) {
        debug_assert!(pos >= 1 && pos <= self.len);
        let idx = pos - 1;
        let word = &mut self.words[(idx / WORD_BITS) as usize];
        if value {
            *word |= 1 << (idx % WORD_BITS);
        } else {
            *word &= !(1 << (idx % WORD_BITS));
        }
    }

    /// Positionwise OR of two equal-length strings.
    pub fn or(&self, other: &BitString) -> Result<BitString, Error> {
        self.check_same_len(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        Ok(BitString {
            len: self.len,
            words,
        })
    }

    /// Positionwise AND of two equal-length strings.
    pub fn and(&self, other: &BitString) -> Result<BitString, Error> {
        self.check_same_len(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        Ok(BitString {
            len: self.len,
            words,
        })
    }

    fn check_same_len(&self, other: &BitString) -> Result<(), Error> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(())
    }

    /// String with position `k` holding the bit of position `len + 1 - k`.
    pub fn reverse(&self) -> BitString {
        if self.len == 0 {
            return self.clone();
        }
        // Reversing word order and the bits inside each word reverses the
        // whole padded buffer; the former padding then sits in front and is
        // shifted off.
        let mut words: Vec<u64> = self.words.iter().rev().map(|w| w.reverse_bits()).collect();
        let pad = (words.len() as u64 * WORD_BITS - self.len) as u32;
        if pad > 0 {
            for i in 0..words.len() {
                let hi = words.get(i + 1).copied().unwrap_or(0);
                words[i] = words[i] >> pad | hi << (64 - pad);
            }
        }
        let mut out = BitString {
            len: self.len,
            words,
        };
        out.mask_tail();
        out
    }

    /// Inserts a 0 in front and drops the last position; length is preserved.
    pub fn shift_right_one(&self) -> BitString {
        let mut words = Vec::with_capacity(self.words.len());
        let mut carry = 0u64;
        for &w in &self.words {
            words.push(w << 1 | carry);
            carry = w >> 63;
        }
        let mut out = BitString {
            len: self.len,
            words,
        };
        out.mask_tail();
        out
    }

    /// `self` followed by `copies` repetitions of `block`.
    pub fn append_copies(&self, block: &BitString, copies: u64) -> BitString {
        let mut out = self.clone();
        for _ in 0..copies {
            out.append(block);
        }
        out
    }

    /// Appends another string's bits after position `len`.
    pub fn append(&mut self, other: &BitString) {
        let new_len = self.len + other.len;
        let shift = (self.len % WORD_BITS) as u32;
        if shift == 0 {
            self.words.extend_from_slice(&other.words);
        } else {
            for &w in &other.words {
                *self.words.last_mut().expect("shift != 0 implies nonempty") |= w << shift;
                self.words.push(w >> (64 - shift));
            }
        }
        self.len = new_len;
        self.words.truncate(new_len.div_ceil(WORD_BITS) as usize);
        self.mask_tail();
    }

    /// Extends with zero positions up to `new_len`.
    pub(crate) fn grow_zeros(&mut self, new_len: u64) {
        debug_assert!(new_len >= self.len);
        self.words
            .resize(new_len.div_ceil(WORD_BITS) as usize, 0);
        self.len = new_len;
    }

    /// Copy of the first `len` positions.
    ///
    /// Panics when `len` exceeds the string length, mirroring slice indexing.
    pub fn prefix(&self, len: u64) -> BitString {
        assert!(len <= self.len, "prefix {len} of string of length {}", self.len);
        let mut out = BitString {
            len,
            words: self.words[..len.div_ceil(WORD_BITS) as usize].to_vec(),
        };
        out.mask_tail();
        out
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Positions holding a 1, ascending.
    pub fn ones_positions(&self) -> Vec<u64> {
        self.iter_ones().collect()
    }

    /// Iterator over the positions holding a 1, ascending.
    pub fn iter_ones(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    fn mask_tail(&mut self) {
        let used = (self.len % WORD_BITS) as u32;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }

    /// One '0'/'1' character per position, position 1 first.
    pub fn to_ascii_string(&self) -> String {
        (1..=self.len)
            .map(|k| if self.bit(k) { '1' } else { '0' })
            .collect()
    }

    /// Parses '0'/'1' text; one trailing newline is tolerated.
    pub fn from_ascii_text(text: &str) -> Result<BitString, Error> {
        let body = text.strip_suffix('\n').unwrap_or(text);
        body.parse()
    }

    /// Packed form: 8-byte little-endian length, then `ceil(len / 8)` payload
    /// bytes with position `k` at bit `(k - 1) % 8` of byte `(k - 1) / 8`.
    pub fn to_packed(&self) -> Vec<u8> {
        let n_bytes = self.len.div_ceil(8) as usize;
        let mut out = Vec::with_capacity(8 + n_bytes);
        out.extend_from_slice(&self.len.to_le_bytes());
        for w in &self.words {
            out.extend_from_slice(&w.to_le_bytes());
        }
        out.truncate(8 + n_bytes);
        out
    }

    /// Inverse of [`to_packed`](Self::to_packed).
    pub fn from_packed(bytes: &[u8]) -> Result<BitString, Error> {
        if bytes.len() < 8 {
            return Err(Error::TruncatedPacked {
                expected: 8,
                actual: bytes.len(),
            });
        }
        let len = u64::from_le_bytes(bytes[..8].try_into().expect("8 bytes"));
        let n_bytes = len.div_ceil(8) as usize;
        let payload = &bytes[8..];
        if payload.len() < n_bytes {
            return Err(Error::TruncatedPacked {
                expected: n_bytes,
                actual: payload.len(),
            });
        }
        let mut words = vec![0u64; len.div_ceil(WORD_BITS) as usize];
        for (i, &b) in payload[..n_bytes].iter().enumerate() {
            words[i / 8] |= (b as u64) << (8 * (i % 8));
        }
        let mut out = BitString { len, words };
        out.mask_tail();
        Ok(out)
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.current == 0 {
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
        let bit = self.current.trailing_zeros() as u64;
        self.current &= self.current - 1;
        Some(self.word_idx as u64 * WORD_BITS + bit + 1)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii_string())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len <= 80 {
            write!(f, "BitString({}, {})", self.len, self.to_ascii_string())
        } else {
            write!(
                f,
                "BitString({}, {}…)",
                self.len,
                self.prefix(80).to_ascii_string()
            )
        }
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut out = BitString::zeros(s.len() as u64);
        for (i, b) in s.bytes().enumerate() {
            match b {
                b'0' => {}
                b'1' => out.set_bit(i as u64 + 1, true),
                _ => return Err(Error::InvalidAscii { byte: b, at: i }),
            }
        }
        Ok(out)
    }
}
