//! Explicit, deliberately loose bound functions for the finiteness results.

use num_bigint::BigUint;
use num_traits::One;

fn factorial(m: u64) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, k| acc * k)
}

/// Classes X ~ X o mu of degree m with a fixed induced orbifold of the
/// infinite series: z^n o mu for {n, n}; 1/2(z^n + z^-n) o mu or
/// +-T_n o mu for {2, 2, n}.
pub fn series_classes(signature: &[u64]) -> Option<u64> {
    match signature {
        [a, b] if a == b => Some(1),
        [2, 2, _] => Some(3),
        _ => None,
    }
}

/// Upper bound on the classes of degree-m maps with a given orbifold of
/// nonnegative Euler characteristic. Orbifold groups of such signatures
/// have at most three generators, and a k-generated group has at most
/// m (m!)^(k-1) subgroups of index m.
pub fn bound_kappa(m: u64) -> BigUint {
    assert!(m >= 1);
    let general = BigUint::from(m) * factorial(m).pow(2);
    general.max(BigUint::from(3u32))
}

/// 10 signatures times the subsets of critical values of A^3.
pub fn bound_c(m: u64) -> BigUint {
    assert!(m >= 2);
    BigUint::from(10u32) << (2 * m.pow(3) - 2) as usize
}

/// Least k with m^k >= x.
fn ceil_log(m: u64, x: u64) -> u64 {
    let (m, x) = (BigUint::from(m), BigUint::from(x));
    let mut k = 0;
    let mut p = BigUint::one();
    while p < x {
        p *= &m;
        k += 1;
    }
    k
}

/// ceil(log_m(84 (n - 2))) + C(m) kappa(m) + 1, the log term dropped for n <= 2.
pub fn bound_psi(m: u64, n: u64) -> BigUint {
    assert!(m >= 2 && n >= 1);
    let log = if n <= 2 { 0 } else { ceil_log(m, 84 * (n - 2)) };
    BigUint::from(log) + bound_c(m) * bound_kappa(m) + 1u32
}

/// psi(m, n) (n - 1) + 1.
pub fn bound_phi(m: u64, n: u64) -> BigUint {
    bound_psi(m, n) * (n - 1) + 1u32
}

/// g > (m - 84 n + 168) / 84, in exact integer form.
pub fn theorem_m2_gate(n: u64, m: u64, g: u64) -> bool {
    assert!(n >= 1 && m >= 1);
    84 * g as i128 > m as i128 - 84 * n as i128 + 168
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_bounds() {
        assert_eq!(bound_phi(2, 1), BigUint::one());
        assert_eq!(bound_phi(7, 1), BigUint::one());
        assert_eq!(bound_c(2), BigUint::from(163_840u32));
        assert_eq!(bound_kappa(2), BigUint::from(8u32));
        assert_eq!(bound_kappa(1), BigUint::from(3u32));
        assert_eq!(bound_psi(2, 2), BigUint::from(1u32 + 163_840 * 8));
        // 84 * 1 = 84 <= 2^7.
        assert_eq!(bound_psi(2, 3), BigUint::from(7u32 + 163_840 * 8 + 1));
        assert_eq!(bound_phi(2, 3), bound_psi(2, 3) * 2u32 + 1u32);
    }

    #[test]
    fn series() {
        assert_eq!(series_classes(&[5, 5]), Some(1));
        assert_eq!(series_classes(&[2, 2, 7]), Some(3));
        assert_eq!(series_classes(&[2, 3, 5]), None);
    }

    #[test]
    fn m2_gate() {
        assert!(!theorem_m2_gate(2, 1000, 0));
        assert!(theorem_m2_gate(2, 2, 5));
        assert!(!theorem_m2_gate(3, 84, 0));
        assert!(theorem_m2_gate(3, 84, 1));
    }
}
