//! One-prime-at-a-time sieving over an occurrence string.
//!
//! The state keeps, for every confirmed prime, a cursor at its smallest
//! multiple not yet examined. A candidate position is prime exactly when no
//! cursor lands on it; the chains of multiples are never materialized as
//! whole strings (see [`sieve_string`] for the materialized form used by
//! tests and the CLI).

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::bitstring::BitString;
use crate::error::Error;

/// Resumable sieve state covering positions `1..=limit`.
///
/// `find_next_prime` confirms primes in ascending order. Running past the
/// last prime below `limit` is a recoverable signal (`None`); the limit can
/// then be raised with [`grow_to`](Self::grow_to) and the search resumed
/// with the cursors it already has.
pub struct IncrementalSieveState {
    limit: u64,
    occurrences: BitString,
    primes: Vec<u64>,
    // (next unexamined multiple, prime); u128 keeps p*p exact for any u64 p.
    cursors: BinaryHeap<Reverse<(u128, u64)>>,
    next_candidate: u64,
}

impl IncrementalSieveState {
    pub fn new(limit: u64) -> Result<Self, Error> {
        if limit < 2 {
            return Err(Error::LimitTooSmall { limit, min: 2 });
        }
        Ok(IncrementalSieveState {
            limit,
            occurrences: BitString::zeros(limit),
            primes: Vec::new(),
            cursors: BinaryHeap::new(),
            next_candidate: 2,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Occurrence string over `1..=limit`; 1 marks every prime confirmed so far.
    pub fn occurrences(&self) -> &BitString {
        &self.occurrences
    }

    pub fn into_occurrences(self) -> BitString {
        self.occurrences
    }

    /// Primes confirmed so far, ascending.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Confirms and returns the next prime, or `None` once the next prime
    /// would exceed the limit.
    pub fn find_next_prime(&mut self) -> Option<u64> {
        while self.next_candidate <= self.limit {
            let candidate = self.next_candidate;
            self.next_candidate += 1;
            let mut composite = false;
            while let Some(&Reverse((multiple, prime))) = self.cursors.peek() {
                debug_assert!(multiple >= candidate as u128);
                if multiple > candidate as u128 {
                    break;
                }
                self.cursors.pop();
                self.cursors.push(Reverse((multiple + prime as u128, prime)));
                composite = true;
            }
            if !composite {
                self.occurrences.set_bit(candidate, true);
                self.primes.push(candidate);
                // Multiples below candidate^2 carry a smaller prime factor
                // and are covered by existing cursors.
                let square = candidate as u128 * candidate as u128;
                self.cursors.push(Reverse((square, candidate)));
                return Some(candidate);
            }
        }
        None
    }

    /// Raises the limit so an exhausted search can resume.
    pub fn grow_to(&mut self, new_limit: u64) -> Result<(), Error> {
        if new_limit < self.limit {
            return Err(Error::LimitTooSmall {
                limit: new_limit,
                min: self.limit,
            });
        }
        self.occurrences.grow_zeros(new_limit);
        self.limit = new_limit;
        Ok(())
    }
}

/// Occurrence string for `1..=limit`: 1 exactly at prime positions.
pub fn sieve_to(limit: u64) -> Result<BitString, Error> {
    let mut state = IncrementalSieveState::new(limit)?;
    while state.find_next_prime().is_some() {}
    Ok(state.into_occurrences())
}

/// Chain of multiples of `prime` within `1..=limit`, the prime itself included.
pub fn sieve_string(prime: u64, limit: u64) -> Result<BitString, Error> {
    if prime < 2 {
        return Err(Error::LimitTooSmall {
            limit: prime,
            min: 2,
        });
    }
    if limit < prime {
        return Err(Error::LimitTooSmall { limit, min: prime });
    }
    let mut out = BitString::zeros(limit);
    let mut multiple = prime;
    while multiple <= limit {
        out.set_bit(multiple, true);
        multiple += prime;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_is_prime(x: u64) -> bool {
        if x < 2 {
            return false;
        }
        (2..x).take_while(|d| d * d <= x).all(|d| x % d != 0)
    }

    #[test]
    fn fresh_state_is_empty() {
        let state = IncrementalSieveState::new(8).unwrap();
        assert_eq!(state.occurrences().to_ascii_string(), "00000000");
        assert!(state.primes().is_empty());
        assert_eq!(
            IncrementalSieveState::new(1).unwrap_err(),
            Error::LimitTooSmall { limit: 1, min: 2 }
        );
        assert_eq!(IncrementalSieveState::new(2).unwrap().occurrences().len(), 2);
        assert_eq!(IncrementalSieveState::new(30).unwrap().occurrences().len(), 30);
    }

    #[test]
    fn first_primes_come_out_in_order() {
        let mut state = IncrementalSieveState::new(8).unwrap();
        assert_eq!(state.find_next_prime(), Some(2));
        assert_eq!(state.occurrences().to_ascii_string(), "01000000");
        assert_eq!(state.find_next_prime(), Some(3));
        assert_eq!(state.find_next_prime(), Some(5));
        assert_eq!(state.find_next_prime(), Some(7));
        assert_eq!(state.find_next_prime(), None);
    }

    #[test]
    fn next_prime_after_thirteen_is_seventeen() {
        let mut state = IncrementalSieveState::new(50).unwrap();
        for _ in 0..6 {
            state.find_next_prime();
        }
        assert_eq!(state.primes(), &[2, 3, 5, 7, 11, 13]);
        assert_eq!(state.find_next_prime(), Some(17));
    }

    #[test]
    fn exhaustion_is_resumable() {
        let mut state = IncrementalSieveState::new(10).unwrap();
        while state.find_next_prime().is_some() {}
        assert_eq!(state.primes(), &[2, 3, 5, 7]);
        assert_eq!(state.find_next_prime(), None, "still exhausted");

        state.grow_to(20).unwrap();
        assert_eq!(state.find_next_prime(), Some(11));
        assert_eq!(state.find_next_prime(), Some(13));
        assert!(state.grow_to(5).is_err(), "shrinking is rejected");
    }

    #[test]
    fn occurrences_match_confirmed_primes_mid_run() {
        let mut state = IncrementalSieveState::new(100).unwrap();
        for _ in 0..10 {
            state.find_next_prime();
        }
        assert_eq!(state.occurrences().ones_positions(), state.primes());
        let expected: Vec<u64> = (2..=state.primes().last().copied().unwrap())
            .filter(|&x| trial_is_prime(x))
            .collect();
        assert_eq!(state.primes(), expected);
    }

    #[test]
    fn sieve_to_produces_known_strings() {
        assert_eq!(sieve_to(6).unwrap().to_ascii_string(), "011010");
        assert_eq!(
            sieve_to(30).unwrap().to_ascii_string(),
            "011010100010100010100010000010"
        );
        let expected_count = (2..=100u64).filter(|&x| trial_is_prime(x)).count() as u64;
        assert_eq!(sieve_to(100).unwrap().count_ones(), expected_count);
        assert!(sieve_to(1).is_err());
    }

    #[test]
    fn sieve_strings_mark_multiples() {
        assert_eq!(sieve_string(2, 8).unwrap().to_ascii_string(), "01010101");
        assert_eq!(sieve_string(3, 8).unwrap().to_ascii_string(), "00100100");
        assert_eq!(sieve_string(7, 7).unwrap().to_ascii_string(), "0000001");
        assert!(sieve_string(1, 8).is_err());
        assert!(sieve_string(5, 4).is_err());
    }

    #[test]
    fn discovered_sequence_is_strictly_increasing() {
        let mut state = IncrementalSieveState::new(500).unwrap();
        let mut last = 0;
        while let Some(p) = state.find_next_prime() {
            assert!(p > last);
            last = p;
        }
        assert_eq!(last, 499);
    }
}
