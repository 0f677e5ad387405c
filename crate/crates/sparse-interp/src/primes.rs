//! Deterministic prime supply: first-K primes, next prime at or above a
//! bound, and the smallest N whose prime product reaches a bound.
//!
//! The product comparisons are exact big-integer arithmetic, never floating
//! logarithms — an off-by-one in these counts breaks the term-test
//! thresholds downstream.

use num_bigint::BigUint;
use num_traits::One;

/// Ascending cache of the primes generated so far; `primes()[i]` is the
/// `(i+1)`-th prime. Extension is deterministic trial division against the
/// cached primes.
#[derive(Clone, Debug, Default)]
pub struct PrimeStream {
    cache: Vec<u64>,
}

impl PrimeStream {
    pub fn new() -> Self {
        PrimeStream { cache: vec![2, 3] }
    }

    pub fn primes(&self) -> &[u64] {
        &self.cache
    }

    /// The `(i+1)`-th prime (0-based index), extending the cache on demand.
    pub fn nth(&mut self, i: usize) -> u64 {
        while self.cache.len() <= i {
            self.grow();
        }
        self.cache[i]
    }

    fn grow(&mut self) {
        let mut candidate = self.cache.last().copied().unwrap_or(1) + 2;
        loop {
            if self.is_prime_by_cache(candidate) {
                self.cache.push(candidate);
                return;
            }
            candidate += 2;
        }
    }

    fn is_prime_by_cache(&self, candidate: u64) -> bool {
        for &p in &self.cache {
            if p as u128 * p as u128 > candidate as u128 {
                break;
            }
            if candidate.is_multiple_of(p) {
                return false;
            }
        }
        true
    }
}

/// The first `k` primes in ascending order.
pub fn first_primes(k: usize) -> Vec<u64> {
    let mut stream = PrimeStream::new();
    if k == 0 {
        return Vec::new();
    }
    stream.nth(k - 1);
    stream.primes()[..k].to_vec()
}

/// Deterministic primality for machine-word integers.
pub fn is_prime_u64(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    if x.is_multiple_of(2) {
        return x == 2;
    }
    let mut d = 3u64;
    while (d as u128) * (d as u128) <= x as u128 {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime `>= b`. Total: inputs below 2 return 2.
pub fn next_prime_geq(b: u64) -> u64 {
    let mut candidate = b.max(2);
    loop {
        if is_prime_u64(candidate) {
            return candidate;
        }
        candidate += 1;
    }
}

/// Smallest `N >= 1` with `p_1 * p_2 * ... * p_N >= bound`, decided by exact
/// products.
pub fn smallest_count_with_product_geq(bound: &BigUint) -> usize {
    let mut stream = PrimeStream::new();
    let mut product = BigUint::one();
    let mut count = 0usize;
    loop {
        product *= stream.nth(count);
        count += 1;
        if product >= *bound {
            return count;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn first_primes_examples() {
        assert_eq!(first_primes(5), vec![2, 3, 5, 7, 11]);
        assert_eq!(first_primes(1), vec![2]);
        // Sieve of Eratosthenes to 100 puts 97 in position 25.
        let p25 = first_primes(25);
        assert_eq!(p25.len(), 25);
        assert_eq!(*p25.last().unwrap(), 97);
        assert_eq!(first_primes(0), Vec::<u64>::new());
    }

    #[test]
    fn next_prime_examples() {
        assert_eq!(next_prime_geq(5), 5);
        assert_eq!(next_prime_geq(6), 7);
        assert_eq!(next_prime_geq(90), 97);
        assert_eq!(next_prime_geq(0), 2);
        assert_eq!(next_prime_geq(2), 2);
    }

    #[test]
    fn smallest_count_examples() {
        assert_eq!(smallest_count_with_product_geq(&BigUint::from(4u32)), 2);
        assert_eq!(smallest_count_with_product_geq(&BigUint::from(1u32)), 1);
        // 2*3*5*7 = 210 < 256 <= 2310.
        assert_eq!(smallest_count_with_product_geq(&BigUint::from(256u32)), 5);
        assert_eq!(smallest_count_with_product_geq(&BigUint::from(2u32)), 1);
        assert_eq!(smallest_count_with_product_geq(&BigUint::from(3u32)), 2);
    }

    #[test]
    fn smallest_count_monotone_and_tight() {
        let mut previous = 0usize;
        for bound in 1u64..2000 {
            let bound_big = BigUint::from(bound);
            let n = smallest_count_with_product_geq(&bound_big);
            assert!(n >= previous, "monotonicity failed at bound {bound}");
            previous = n;
            // Definitional: the product over the first N reaches the bound,
            // and dropping the last prime falls short (for N >= 2).
            let primes = first_primes(n);
            let product: BigUint = primes.iter().map(|&p| BigUint::from(p)).product();
            assert!(product >= bound_big);
            if n >= 2 {
                let shorter: BigUint = primes[..n - 1].iter().map(|&p| BigUint::from(p)).product();
                assert!(shorter < bound_big);
            }
        }
    }

    #[test]
    fn is_prime_u64_matches_stream() {
        let primes = first_primes(60);
        let limit = *primes.last().unwrap();
        for x in 0..=limit {
            assert_eq!(is_prime_u64(x), primes.contains(&x), "x={x}");
        }
    }
}
