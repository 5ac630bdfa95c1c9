//! Pairing primes that sum to an even target, directly on occurrence strings.
//!
//! For an even `n`, reversing the shifted occurrence string lines position
//! `k` up with its complement `n - k`; a conjunction of the two strings then
//! marks every prime pair at once. The classification splits the remaining
//! primes by the reason they cannot participate.

use serde::Serialize;

use crate::bitstring::BitString;
use crate::error::Error;
use crate::primorial::{self, primorial, PrimorialSegment};

/// Default ceiling for one occurrence-string allocation: the index-9
/// primorial, about 27 MiB packed.
pub const DEFAULT_BUDGET_POSITIONS: u64 = 223_092_870;

/// All prime pairs summing to an even `n`, plus the primes below `n` that
/// cannot take part and why.
#[derive(Clone, Debug, Serialize)]
pub struct GoldbachReport {
    pub n: u64,
    /// Pairs `(p, p')` with `p <= p'` and `p + p' = n`, ascending in `p`.
    pub pairs: Vec<(u64, u64)>,
    /// Primes dividing `n` (except when `n = 2p`: that prime pairs with itself).
    pub excluded_factor_primes: Vec<u64>,
    /// Primes whose complement `n - p` is composite (or 1).
    pub excluded_complement_composite: Vec<u64>,
    pub is_sum_of_two_primes: bool,
}

fn check_even_target(n: u64) -> Result<(), Error> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::InvalidEvenTarget { n });
    }
    Ok(())
}

fn check_occurrence_len(n: u64, prime_bits: &BitString) -> Result<(), Error> {
    if prime_bits.len() != n {
        return Err(Error::LengthMismatch {
            left: n,
            right: prime_bits.len(),
        });
    }
    Ok(())
}

/// String whose position `k` is 1 exactly when `n - k` is prime, where `n`
/// is the (even) length of the input occurrence string.
///
/// This is the shifted string read in reverse: `reverse(shift_right_one(s))`.
pub fn complement_mask(prime_bits: &BitString) -> Result<BitString, Error> {
    check_even_target(prime_bits.len())?;
    Ok(prime_bits.shift_right_one().reverse())
}

/// All pairs of primes summing to `n`, computed as the conjunction of the
/// occurrence string with its complement mask.
pub fn goldbach_pairs(n: u64, prime_bits: &BitString) -> Result<Vec<(u64, u64)>, Error> {
    check_even_target(n)?;
    check_occurrence_len(n, prime_bits)?;
    let both = prime_bits.and(&complement_mask(prime_bits)?)?;
    Ok(both
        .iter_ones()
        .take_while(|&p| p <= n / 2)
        .map(|p| (p, n - p))
        .collect())
}

/// First pair of [`goldbach_pairs`] without materializing the mask.
///
/// `prime_bits` may be longer than `n`; only positions `1..=n` are read,
/// which lets one long string serve a whole sweep.
pub fn first_goldbach_pair(n: u64, prime_bits: &BitString) -> Result<Option<(u64, u64)>, Error> {
    check_even_target(n)?;
    if prime_bits.len() < n {
        return Err(Error::LengthMismatch {
            left: n,
            right: prime_bits.len(),
        });
    }
    for p in prime_bits.iter_ones() {
        if p > n / 2 {
            break;
        }
        if prime_bits.bit(n - p) {
            return Ok(Some((p, n - p)));
        }
    }
    Ok(None)
}

/// Even numbers in `lo..=hi` (rounded inward to even) without any prime
/// pair. An empty result verifies the range.
pub fn verify_goldbach_range(lo: u64, hi: u64, prime_bits: &BitString) -> Result<Vec<u64>, Error> {
    if lo < 4 {
        return Err(Error::InvalidEvenTarget { n: lo });
    }
    if prime_bits.len() < hi {
        return Err(Error::LengthMismatch {
            left: hi,
            right: prime_bits.len(),
        });
    }
    let mut counterexamples = Vec::new();
    let mut n = lo + lo % 2;
    while n <= hi {
        if first_goldbach_pair(n, prime_bits)?.is_none() {
            counterexamples.push(n);
        }
        n += 2;
    }
    Ok(counterexamples)
}

/// A pair of odd numbers `>= 3` summing to `n`; the canonical choice is
/// `(3, n - 3)`. Defined for even `n > 4` only.
pub fn odd_sum_decomposition(n: u64) -> Result<(u64, u64), Error> {
    if n <= 4 || n % 2 != 0 {
        return Err(Error::NoOddDecomposition { n });
    }
    Ok((3, n - 3))
}

/// Buckets every prime below `n`: pairing, factor of `n`, or complement
/// composite.
pub fn classify_primes(n: u64, prime_bits: &BitString) -> Result<GoldbachReport, Error> {
    check_even_target(n)?;
    check_occurrence_len(n, prime_bits)?;
    let mut pairs = Vec::new();
    let mut factor = Vec::new();
    let mut complement_composite = Vec::new();
    for p in prime_bits.iter_ones() {
        if p >= n {
            break;
        }
        let complement = n - p;
        if prime_bits.bit(complement) {
            if p <= complement {
                pairs.push((p, complement));
            }
        } else if n % p == 0 {
            // n != 2p here: that case lands in the pairing branch.
            factor.push(p);
        } else {
            complement_composite.push(p);
        }
    }
    let is_sum_of_two_primes = !pairs.is_empty();
    Ok(GoldbachReport {
        n,
        pairs,
        excluded_factor_primes: factor,
        excluded_complement_composite: complement_composite,
        is_sum_of_two_primes,
    })
}

/// Full report for `n` over a freshly built occurrence string.
pub fn goldbach_report(n: u64, budget: u64) -> Result<GoldbachReport, Error> {
    check_even_target(n)?;
    primorial::check_budget(n, budget)?;
    let bits = primorial::prime_occurrences_to(n)?;
    classify_primes(n, &bits)
}

/// Report for the index-`n` primorial, within the default budget.
pub fn primorial_goldbach(n: u32) -> Result<GoldbachReport, Error> {
    primorial_goldbach_with_budget(n, DEFAULT_BUDGET_POSITIONS)
}

/// Report for the index-`n` primorial against an explicit position budget.
///
/// The occurrence string comes from the incremental sieve for short targets
/// and from bulk segment extension beyond index 6; either way the string is
/// the full `1..=primorial(n)` occurrence string.
pub fn primorial_goldbach_with_budget(n: u32, budget: u64) -> Result<GoldbachReport, Error> {
    let target = primorial(n)?;
    primorial::check_budget(target, budget)?;
    if target < 4 {
        // primorial(1) = 2: no two primes can sum to it.
        return Ok(GoldbachReport {
            n: target,
            pairs: Vec::new(),
            excluded_factor_primes: Vec::new(),
            excluded_complement_composite: Vec::new(),
            is_sum_of_two_primes: false,
        });
    }
    let bits = if n <= 6 {
        crate::incremental::sieve_to(target)?
    } else {
        let seed = PrimorialSegment::build(6)?;
        seed.extend_variant2(target / seed.segment_length() - 1)?
    };
    classify_primes(target, &bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incremental::sieve_to;

    fn trial_is_prime(x: u64) -> bool {
        x >= 2 && (2..x).take_while(|d| d * d <= x).all(|d| x % d != 0)
    }

    fn brute_pairs(n: u64) -> Vec<(u64, u64)> {
        (2..=n / 2)
            .filter(|&p| trial_is_prime(p) && trial_is_prime(n - p))
            .map(|p| (p, n - p))
            .collect()
    }

    #[test]
    fn complement_mask_pairs_position_with_its_complement() {
        let bits = sieve_to(24).unwrap();
        assert_eq!(
            bits.shift_right_one().to_ascii_string(),
            "001101010001010001010001"
        );
        let mask = complement_mask(&bits).unwrap();
        for k in 1..=24u64 {
            assert_eq!(mask.bit(k), k < 24 && bits.bit(24 - k), "k = {k}");
        }

        let bits30 = sieve_to(30).unwrap();
        assert_eq!(
            bits30.reverse().to_ascii_string(),
            "010000010001010001010001010110"
        );

        let zeros = BitString::zeros(10);
        assert_eq!(complement_mask(&zeros).unwrap(), zeros);

        assert!(complement_mask(&BitString::zeros(7)).is_err());
        assert!(complement_mask(&BitString::zeros(2)).is_err());
    }

    #[test]
    fn pairs_for_small_targets_match_brute_force() {
        for n in [4u64, 24, 30] {
            let bits = sieve_to(n).unwrap();
            assert_eq!(goldbach_pairs(n, &bits).unwrap(), brute_pairs(n), "n = {n}");
        }
        assert_eq!(
            goldbach_pairs(30, &sieve_to(30).unwrap()).unwrap(),
            vec![(7, 23), (11, 19), (13, 17)]
        );
        assert_eq!(
            goldbach_pairs(4, &sieve_to(4).unwrap()).unwrap(),
            vec![(2, 2)]
        );
        assert_eq!(
            goldbach_pairs(24, &sieve_to(24).unwrap()).unwrap(),
            vec![(5, 19), (7, 17), (11, 13)]
        );
        assert!(goldbach_pairs(7, &sieve_to(7).unwrap()).is_err());
    }

    #[test]
    fn first_pair_agrees_with_full_enumeration() {
        let bits = sieve_to(2000).unwrap();
        let mut n = 4;
        while n <= 2000 {
            let full = goldbach_pairs(n, &bits.prefix(n)).unwrap();
            assert_eq!(
                first_goldbach_pair(n, &bits).unwrap(),
                full.first().copied(),
                "n = {n}"
            );
            n += 2;
        }
    }

    #[test]
    fn sweep_reports_no_counterexamples_at_desk_scale() {
        let bits = sieve_to(10_000).unwrap();
        assert_eq!(verify_goldbach_range(6, 10_000, &bits).unwrap(), vec![]);
    }

    #[test]
    fn odd_sum_decomposition_is_canonical() {
        assert_eq!(odd_sum_decomposition(6), Ok((3, 3)));
        assert_eq!(odd_sum_decomposition(100), Ok((3, 97)));
        let (a, b) = odd_sum_decomposition(24).unwrap();
        assert!(a % 2 == 1 && b % 2 == 1 && a >= 3 && b >= 3 && a + b == 24);
        // (5, 19) is another witness of the same contract.
        assert_eq!(5 + 19, 24);
        assert_eq!(
            odd_sum_decomposition(4),
            Err(Error::NoOddDecomposition { n: 4 })
        );
        assert!(odd_sum_decomposition(9).is_err());
    }

    #[test]
    fn classification_buckets_each_prime_once() {
        let report = classify_primes(30, &sieve_to(30).unwrap()).unwrap();
        assert_eq!(report.excluded_factor_primes, vec![2, 3, 5]);
        assert_eq!(report.pairs, vec![(7, 23), (11, 19), (13, 17)]);
        assert_eq!(report.excluded_complement_composite, vec![29]);
        assert!(report.is_sum_of_two_primes);
    }

    #[test]
    fn twice_a_prime_pairs_with_itself() {
        let report = classify_primes(26, &sieve_to(26).unwrap()).unwrap();
        assert!(report.pairs.contains(&(13, 13)));
        assert!(!report.excluded_factor_primes.contains(&13));
        assert_eq!(report.excluded_factor_primes, vec![2]);
    }

    #[test]
    fn classification_of_210_catches_distracting_products() {
        let report = classify_primes(210, &sieve_to(210).unwrap()).unwrap();
        assert_eq!(report.excluded_factor_primes, vec![2, 3, 5, 7]);
        for p in [23, 41, 67, 89] {
            assert!(
                report.excluded_complement_composite.contains(&p),
                "210 - {p} is a product of distracting numbers"
            );
        }
        // 209 = 11 * 19 has the non-prime complement 1 and must not pair.
        assert!(!report.pairs.iter().any(|&(p, q)| p == 1 || q == 209));
    }

    #[test]
    fn factor_primes_never_pair_unless_doubled() {
        let bits = sieve_to(5000).unwrap();
        let mut n = 6;
        while n <= 5000 {
            let report = classify_primes(n, &bits.prefix(n)).unwrap();
            for &(p, q) in &report.pairs {
                assert!(!(n % p == 0 && n != 2 * p), "{p} divides {n}");
                assert!(!(n % q == 0 && n != 2 * q), "{q} divides {n}");
            }
            n += 2;
        }
    }

    #[test]
    fn report_json_shape() {
        let report = classify_primes(30, &sieve_to(30).unwrap()).unwrap();
        assert_eq!(
            serde_json::to_string(&report).unwrap(),
            r#"{"n":30,"pairs":[[7,23],[11,19],[13,17]],"excluded_factor_primes":[2,3,5],"excluded_complement_composite":[29],"is_sum_of_two_primes":true}"#
        );
    }

    #[test]
    fn primorial_targets_decompose() {
        let three = primorial_goldbach(3).unwrap();
        assert!(three.pairs.contains(&(7, 23)));
        let four = primorial_goldbach(4).unwrap();
        assert!(four.pairs.contains(&(11, 199)));
        let degenerate = primorial_goldbach(1).unwrap();
        assert!(!degenerate.is_sum_of_two_primes);
        assert_eq!(degenerate.n, 2);
    }

    #[test]
    fn primorial_budget_is_enforced() {
        match primorial_goldbach(10) {
            Err(Error::BudgetExceeded {
                required, budget, ..
            }) => {
                assert_eq!(required, 6_469_693_230);
                assert_eq!(budget, DEFAULT_BUDGET_POSITIONS);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
        assert!(primorial_goldbach_with_budget(5, u64::MAX).is_ok());
    }
}
