use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::map::{FiniteSelfMap, PointedMap};
use crate::error::{Error, Result};
use crate::series::rational::{format_rational, serde_bigint_vec, Rational};

/// Dold indices `(D_1, .., D_N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SequenceJson", into = "SequenceJson")]
pub struct DoldProfile {
    counts: Vec<BigInt>,
}

/// Lefschetz numbers of the iterates `(L(f), .., L(f^N))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SequenceJson", into = "SequenceJson")]
pub struct LefschetzSequence {
    values: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct SequenceJson {
    horizon: usize,
    #[serde(with = "serde_bigint_vec")]
    values: Vec<BigInt>,
}

fn check_json(j: &SequenceJson) -> Result<()> {
    if j.horizon != j.values.len() {
        return Err(Error::Parse(format!(
            "horizon is {} but {} values were given",
            j.horizon,
            j.values.len()
        )));
    }
    Ok(())
}

impl TryFrom<SequenceJson> for DoldProfile {
    type Error = Error;
    fn try_from(j: SequenceJson) -> Result<Self> {
        check_json(&j)?;
        Ok(DoldProfile { counts: j.values })
    }
}

impl From<DoldProfile> for SequenceJson {
    fn from(d: DoldProfile) -> Self {
        SequenceJson { horizon: d.counts.len(), values: d.counts }
    }
}

impl TryFrom<SequenceJson> for LefschetzSequence {
    type Error = Error;
    fn try_from(j: SequenceJson) -> Result<Self> {
        check_json(&j)?;
        Ok(LefschetzSequence { values: j.values })
    }
}

impl From<LefschetzSequence> for SequenceJson {
    fn from(l: LefschetzSequence) -> Self {
        SequenceJson { horizon: l.values.len(), values: l.values }
    }
}

impl DoldProfile {
    /// `counts[m-1] = D_m`.
    pub fn new(counts: Vec<BigInt>) -> Self {
        DoldProfile { counts }
    }

    pub fn from_i64(counts: &[i64]) -> Self {
        DoldProfile { counts: counts.iter().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn zeros(horizon: usize) -> Self {
        DoldProfile { counts: vec![BigInt::zero(); horizon] }
    }

    pub fn horizon(&self) -> usize {
        self.counts.len()
    }

    /// `D_m` for `1 ≤ m ≤ horizon`.
    pub fn get(&self, m: usize) -> &BigInt {
        &self.counts[m - 1]
    }

    pub fn values(&self) -> &[BigInt] {
        &self.counts
    }

    /// Every index nonnegative, as for the orbit counts of an actual map.
    pub fn is_realizable(&self) -> bool {
        self.counts.iter().all(|c| !c.is_negative())
    }

    /// `D_1 - 1`, other indices unchanged.
    pub fn reduced(&self) -> Self {
        let mut c = self.counts.clone();
        if let Some(first) = c.first_mut() {
            *first -= 1;
        }
        DoldProfile { counts: c }
    }

    /// Inverse of [`DoldProfile::reduced`].
    pub fn unreduced(&self) -> Self {
        let mut c = self.counts.clone();
        if let Some(first) = c.first_mut() {
            *first += 1;
        }
        DoldProfile { counts: c }
    }

    pub fn truncate(&self, horizon: usize) -> Result<Self> {
        if horizon > self.horizon() {
            return Err(Error::HorizonTooShort { needed: horizon, have: self.horizon() });
        }
        Ok(DoldProfile { counts: self.counts[..horizon].to_vec() })
    }

    /// Dold indices of the `j`-th iterate, up to `horizon`:
    /// `D_i(f^j) = Σ gcd(n, j) D_n(f)` over `n` with `n / gcd(n, j) = i`.
    ///
    /// The same linear relation holds for reduced indices.
    pub fn iterate(&self, j: usize, horizon: usize) -> Result<Self> {
        assert!(j >= 1, "iterate exponent must be positive");
        let needed = j * horizon;
        if self.horizon() < needed {
            return Err(Error::HorizonTooShort { needed, have: self.horizon() });
        }
        let counts = (1..=horizon)
            .map(|i| {
                let mut acc = BigInt::zero();
                for g in divisors(j) {
                    if (j / g).gcd(&i) == 1 {
                        acc += self.get(i * g) * BigInt::from(g);
                    }
                }
                acc
            })
            .collect();
        Ok(DoldProfile { counts })
    }

    /// Lefschetz numbers `L(f^k) = Σ_{m | k} m D_m`.
    pub fn to_lefschetz(&self) -> LefschetzSequence {
        lefschetz_from_dold(self)
    }
}

impl LefschetzSequence {
    pub fn new(values: Vec<BigInt>) -> Self {
        LefschetzSequence { values }
    }

    pub fn from_i64(values: &[i64]) -> Self {
        LefschetzSequence { values: values.iter().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn horizon(&self) -> usize {
        self.values.len()
    }

    /// `L(f^k)` for `1 ≤ k ≤ horizon`.
    pub fn get(&self, k: usize) -> &BigInt {
        &self.values[k - 1]
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// `L(f^k) - 1` for every `k`.
    pub fn reduced(&self) -> Self {
        LefschetzSequence { values: self.values.iter().map(|v| v - 1).collect() }
    }

    pub fn truncate(&self, horizon: usize) -> Result<Self> {
        if horizon > self.horizon() {
            return Err(Error::HorizonTooShort { needed: horizon, have: self.horizon() });
        }
        Ok(LefschetzSequence { values: self.values[..horizon].to_vec() })
    }

    /// `Σ_{d | m} μ(m/d) L(f^d)` for `m = 1..=horizon` (which equals `m D_m`).
    pub fn mobius_sums(&self) -> Vec<BigInt> {
        (1..=self.horizon())
            .map(|m| {
                divisors(m).into_iter().fold(BigInt::zero(), |acc, d| {
                    acc + self.get(d) * BigInt::from(mobius(m / d))
                })
            })
            .collect()
    }

    /// The divisibility `m | Σ_{d | m} μ(m/d) L(f^d)` holds for every `m`.
    pub fn satisfies_congruences(&self) -> bool {
        self.mobius_sums()
            .iter()
            .enumerate()
            .all(|(i, s)| (s % BigInt::from(i + 1)).is_zero())
    }

    pub fn to_dold(&self) -> Result<DoldProfile> {
        dold_from_lefschetz(self)
    }
}

/// `D_m` of a finite map: the number of cycles of length `m`.
pub fn cycle_profile(f: &FiniteSelfMap, horizon: usize) -> DoldProfile {
    let mut counts = vec![BigInt::zero(); horizon];
    for len in f.cycle_lengths() {
        if len <= horizon {
            counts[len - 1] += 1;
        }
    }
    DoldProfile { counts }
}

/// Reduced Dold indices of a pointed map (the basepoint's own cycle removed).
pub fn reduced_cycle_profile(f: &PointedMap, horizon: usize) -> DoldProfile {
    cycle_profile(f.inner(), horizon).reduced()
}

/// `#Fix(f^k)` for `k = 1..=horizon`, by explicit iteration.
pub fn lefschetz_sequence(f: &FiniteSelfMap, horizon: usize) -> LefschetzSequence {
    let mut cur = FiniteSelfMap::identity(f.size());
    let mut values = Vec::with_capacity(horizon);
    for _ in 0..horizon {
        cur = f.compose(&cur).expect("same size");
        values.push(BigInt::from(cur.fixed_point_count()));
    }
    LefschetzSequence { values }
}

/// Möbius inversion `D_m = (1/m) Σ_{d | m} μ(m/d) L(f^d)`.
pub fn dold_from_lefschetz(l: &LefschetzSequence) -> Result<DoldProfile> {
    let counts = l
        .mobius_sums()
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            let m = BigInt::from(i + 1);
            let (q, r) = s.div_rem(&m);
            if r.is_zero() {
                Ok(q)
            } else {
                Err(Error::NotRealizable {
                    period: i + 1,
                    value: format_rational(&Rational::new(s, m)),
                })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DoldProfile { counts })
}

/// `L(f^k) = Σ_{m | k} m D_m`.
pub fn lefschetz_from_dold(d: &DoldProfile) -> LefschetzSequence {
    let values = (1..=d.horizon())
        .map(|k| {
            divisors(k)
                .into_iter()
                .fold(BigInt::zero(), |acc, m| acc + d.get(m) * BigInt::from(m))
        })
        .collect();
    LefschetzSequence { values }
}

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn mobius(n: usize) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}
