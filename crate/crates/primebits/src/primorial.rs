//! Primorial segments: quasi-periodic sieving with wheel growth.
//!
//! A segment of index `n` is the occurrence string over one full period of
//! the wheel spanned by the first `n` primes, i.e. `primorial(n)` positions.
//! Growing a segment appends transformed copies of itself and then clears
//! the few composite survivors whose prime factors all exceed the wheel —
//! the products of what this module calls distracting numbers.

use serde::Serialize;

use crate::arith;
use crate::bitstring::BitString;
use crate::error::{packed_mib, Error};
use crate::incremental;

/// Product of the first `n` primes, with explicit overflow detection.
pub fn primorial(n: u32) -> Result<u64, Error> {
    if n < 1 {
        return Err(Error::IndexTooSmall { n, min: 1 });
    }
    arith::first_primes(n)
        .iter()
        .try_fold(1u64, |acc, &p| acc.checked_mul(p))
        .ok_or(Error::PrimorialOverflow { n })
}

/// Index `n` with `primorial(n) == limit`, or the two nearest primorials.
pub fn primorial_index(limit: u64) -> Result<u32, Error> {
    let mut below = 2;
    let mut n = 1;
    loop {
        match primorial(n) {
            Ok(p) if p == limit => return Ok(n),
            Ok(p) if p < limit => {
                below = p;
                n += 1;
            }
            Ok(above) => {
                return Err(Error::NotAPrimorial {
                    limit,
                    below,
                    above,
                })
            }
            Err(_) => {
                return Err(Error::NotAPrimorial {
                    limit,
                    below,
                    above: u64::MAX,
                })
            }
        }
    }
}

/// Superposition of the multiple chains of the first `n` primes over
/// `1..=limit`; 1 marks a position excluded by the wheel.
pub fn cyclic_mask(n: u32, limit: u64) -> Result<BitString, Error> {
    if n < 1 {
        return Err(Error::IndexTooSmall { n, min: 1 });
    }
    if limit < 2 {
        return Err(Error::LimitTooSmall { limit, min: 2 });
    }
    let mut mask = BitString::zeros(limit);
    for p in arith::first_primes(n) {
        let mut multiple = p;
        while multiple <= limit {
            mask.set_bit(multiple, true);
            multiple += p;
        }
    }
    Ok(mask)
}

/// Primes in `(z_n, sqrt(primorial(n))]`: the survivors of the index-`n`
/// wheel whose multiples still need explicit elimination.
///
/// The n-th prime itself is left out; the wheel already covers its
/// multiples.
pub fn distracting_numbers(n: u32) -> Result<Vec<u64>, Error> {
    if n < 1 {
        return Err(Error::IndexTooSmall { n, min: 1 });
    }
    let z = arith::nth_prime(n);
    let cap = primorial(n)?.isqrt();
    Ok((z + 1..=cap).filter(|&d| arith::is_prime(d)).collect())
}

/// Block transformation applied before appending: position 1 becomes 1 and
/// the positions of the first `n` primes become 0.
pub fn transform_block(segment_bits: &BitString, n: u32) -> Result<BitString, Error> {
    let expected = primorial(n)?;
    if segment_bits.len() != expected {
        return Err(Error::SegmentLengthMismatch {
            expected,
            actual: segment_bits.len(),
        });
    }
    let mut out = segment_bits.clone();
    out.set_bit(1, true);
    for p in arith::first_primes(n) {
        out.set_bit(p, false);
    }
    Ok(out)
}

/// Runs the tail of a sieve over positions already thinned by a wheel:
/// every still-set position `d` in `from..=cap` has its multiples cleared
/// from `d*d` on. Set positions reached by the scan are prime because any
/// composite survivor has a smaller set factor in range.
fn eliminate_survivors(bits: &mut BitString, from: u64, cap: u64) {
    let len = bits.len();
    for d in from..=cap {
        if !bits.bit(d) {
            continue;
        }
        let mut multiple = d * d;
        while multiple <= len {
            bits.set_bit(multiple, false);
            multiple += d;
        }
    }
}

/// One full period of the index-`n` wheel with its survivors fully sieved:
/// the set positions are exactly the primes up to `primorial(n)`.
#[derive(Clone, Debug)]
pub struct PrimorialSegment {
    n: u32,
    z_n: u64,
    segment_length: u64,
    bits: BitString,
    distracting: Vec<u64>,
}

/// Metadata emitted next to a serialized segment.
#[derive(Clone, Debug, Serialize)]
pub struct SegmentHeader {
    pub n: u32,
    pub z_n: u64,
    pub segment_length: u64,
    pub distracting: Vec<u64>,
}

impl PrimorialSegment {
    /// The starting segment of index 2: length 6, primes 2 and 3 set.
    pub fn base() -> PrimorialSegment {
        let mut bits = BitString::zeros(6);
        bits.set_bit(2, true);
        bits.set_bit(3, true);
        PrimorialSegment {
            n: 2,
            z_n: 3,
            segment_length: 6,
            bits,
            distracting: Vec::new(),
        }
    }

    /// Segment of index `n >= 2`, grown step by step from [`base`](Self::base).
    pub fn build(n: u32) -> Result<PrimorialSegment, Error> {
        if n < 2 {
            return Err(Error::IndexTooSmall { n, min: 2 });
        }
        let mut segment = PrimorialSegment::base();
        while segment.n < n {
            segment = segment.extend_variant1()?;
        }
        Ok(segment)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The n-th prime, the largest one folded into the wheel.
    pub fn z_n(&self) -> u64 {
        self.z_n
    }

    pub fn segment_length(&self) -> u64 {
        self.segment_length
    }

    pub fn bits(&self) -> &BitString {
        &self.bits
    }

    pub fn distracting(&self) -> &[u64] {
        &self.distracting
    }

    pub fn header(&self) -> SegmentHeader {
        SegmentHeader {
            n: self.n,
            z_n: self.z_n,
            segment_length: self.segment_length,
            distracting: self.distracting.clone(),
        }
    }

    /// Grows the segment one index: transform, append `z - 1` copies, then
    /// eliminate the multiples of the new prime and of every distracting
    /// number, starting at their squares.
    pub fn extend_variant1(&self) -> Result<PrimorialSegment, Error> {
        let n = self.n + 1;
        let segment_length = primorial(n)?;
        let z_n = arith::nth_prime(n);
        let block = transform_block(&self.bits, self.n)?;
        let mut bits = self.bits.append_copies(&block, z_n - 1);
        debug_assert_eq!(bits.len(), segment_length);
        eliminate_survivors(&mut bits, z_n, segment_length.isqrt());
        let distracting = distracting_numbers(n)?;
        Ok(PrimorialSegment {
            n,
            z_n,
            segment_length,
            bits,
            distracting,
        })
    }

    /// Bulk extension: the transformed segment is appended `q` times and all
    /// multiples of primes in `(z_n, sqrt((q+1) * primorial(n))]` are cleared
    /// in one pass. The result covers `1..=(q+1) * primorial(n)`.
    pub fn extend_variant2(&self, q: u64) -> Result<BitString, Error> {
        if q == 0 {
            return Err(Error::ZeroCopies);
        }
        let total = (q + 1)
            .checked_mul(self.segment_length)
            .ok_or(Error::LengthOverflow)?;
        let block = transform_block(&self.bits, self.n)?;
        let mut bits = self.bits.append_copies(&block, q);
        debug_assert_eq!(bits.len(), total);
        eliminate_survivors(&mut bits, self.z_n + 1, total.isqrt());
        Ok(bits)
    }
}

/// Occurrence string for `1..=len`, routed to whichever sieve suits the
/// length: the incremental sieve for short strings, bulk extension of the
/// index-6 segment for long ones (`len` must then be a multiple of 30030,
/// which every primorial beyond index 6 is).
pub(crate) fn prime_occurrences_to(len: u64) -> Result<BitString, Error> {
    const BULK_SEED_INDEX: u32 = 6;
    let seed_length = 30_030;
    if len <= 510_510 || len % seed_length != 0 {
        return incremental::sieve_to(len);
    }
    let seed = PrimorialSegment::build(BULK_SEED_INDEX)?;
    seed.extend_variant2(len / seed_length - 1)
}

/// Guard for one big allocation: `required` positions against a budget.
pub(crate) fn check_budget(required: u64, budget: u64) -> Result<(), Error> {
    if required > budget {
        return Err(Error::BudgetExceeded {
            required,
            budget,
            required_mib: packed_mib(required),
        });
    }
    Ok(())
}
