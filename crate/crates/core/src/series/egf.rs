//! Exponential generating functions: `a_k ↦ Σ a_k q^k / k!`.

use super::power::PowerSeries;
use super::rational::{big, factorial, Rational};

/// Packs `values[k]` into the coefficient `values[k] / k!`.
pub fn egf_pack(values: &[Rational]) -> PowerSeries {
    assert!(!values.is_empty(), "need at least a_0");
    PowerSeries::from_coeffs(
        values.iter().enumerate().map(|(k, a)| a / big(factorial(k))).collect(),
    )
}

/// Inverse of [`egf_pack`]: `k! [q^k] s`.
pub fn egf_unpack(s: &PowerSeries) -> Vec<Rational> {
    s.coeffs().iter().enumerate().map(|(k, c)| c * big(factorial(k))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::{frac, int};

    #[test]
    fn pack_unpack() {
        let p = egf_pack(&[int(1), int(1), int(1)]);
        assert_eq!(p, PowerSeries::from_coeffs(vec![int(1), int(1), frac(1, 2)]));
        let sq = PowerSeries::from_ints(&[1, 2, 1, 0]);
        assert_eq!(egf_unpack(&sq), vec![int(1), int(2), int(2), int(0)]);
    }

    #[test]
    fn injective_pairs_on_two_points() {
        // (1 + q)^2 as an EGF counts injective tuples from a 2-element set.
        let s = PowerSeries::from_ints(&[1, 1, 0]).pow(2).unwrap();
        let counts = egf_unpack(&s);
        // brute force: tuples of length k over {0,1} with no repeated entry
        let brute: Vec<i64> = (0..3u32)
            .map(|k| {
                let total = 2usize.pow(k);
                (0..total)
                    .filter(|&code| {
                        let digits: Vec<usize> = (0..k).map(|i| (code >> i) & 1).collect();
                        (0..digits.len()).all(|i| (i + 1..digits.len()).all(|j| digits[i] != digits[j]))
                    })
                    .count() as i64
            })
            .collect();
        assert_eq!(counts, brute.iter().map(|&x| int(x)).collect::<Vec<_>>());
        assert_eq!(brute, vec![1, 2, 2]);
    }
}
