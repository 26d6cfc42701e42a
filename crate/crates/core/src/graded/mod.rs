//! Graded endomorphisms of finite-dimensional rational vector spaces, their
//! characteristic rational functions and zeta functions, the bivariate
//! generating function of the induced maps on graded symmetric powers, and
//! an explicit sign-twisted trace over tensor powers to check it against.

mod det;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::Perm;
use crate::series::rational::{factorial, serde_rational};
use crate::series::{BivariateSeries, Poly, PowerSeries, Rational, RationalFunction, SeriesComparison};

pub use det::{det_one_minus_t, poly_determinant};

/// Largest number of basis tensors the sign-twisted trace will visit.
pub const MAX_TENSOR_BASIS: u128 = 100_000;

/// One square rational matrix per degree `j ≥ 0`; zero-dimensional degrees
/// are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedEndomorphism {
    blocks: BTreeMap<usize, Vec<Vec<Rational>>>,
}

impl GradedEndomorphism {
    pub fn new(blocks: BTreeMap<usize, Vec<Vec<Rational>>>) -> Result<Self> {
        for (j, a) in &blocks {
            if let Some(row) = a.iter().find(|r| r.len() != a.len()) {
                return Err(Error::InvalidGraded(format!(
                    "degree {j}: row of length {} in a {}x{} matrix",
                    row.len(),
                    a.len(),
                    a.len()
                )));
            }
        }
        Ok(GradedEndomorphism { blocks: blocks.into_iter().filter(|(_, a)| !a.is_empty()).collect() })
    }

    pub fn from_ints(blocks: &[(usize, Vec<Vec<i64>>)]) -> Result<Self> {
        Self::new(
            blocks
                .iter()
                .map(|(j, a)| (*j, a.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect()))
                .collect(),
        )
    }

    /// The identity in degree 0 on a space of dimension `chi`.
    pub fn identity_in_degree_zero(chi: usize) -> Self {
        let a = (0..chi)
            .map(|i| (0..chi).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        Self::new(BTreeMap::from([(0, a)])).expect("square")
    }

    pub fn blocks(&self) -> &BTreeMap<usize, Vec<Vec<Rational>>> {
        &self.blocks
    }

    pub fn total_dimension(&self) -> usize {
        self.blocks.values().map(Vec::len).sum()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.blocks.keys().next_back().copied()
    }

    /// Block diagonal sum, degree by degree.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut blocks = self.blocks.clone();
        for (j, b) in &other.blocks {
            let a = blocks.remove(j).unwrap_or_default();
            let (n, m) = (a.len(), b.len());
            let mut s = vec![vec![Rational::zero(); n + m]; n + m];
            for i in 0..n {
                s[i][..n].clone_from_slice(&a[i]);
            }
            for i in 0..m {
                s[n + i][n..].clone_from_slice(&b[i]);
            }
            blocks.insert(*j, s);
        }
        GradedEndomorphism { blocks }
    }

    /// `Π_j det(1 - tA_j)^{(-1)^j}`; even degrees in the numerator.
    pub fn characteristic_rational_function(&self) -> RationalFunction {
        let (mut num, mut den) = (Poly::one(), Poly::one());
        for (j, a) in &self.blocks {
            let d = det_one_minus_t(a);
            if j % 2 == 0 {
                num = &num * &d;
            } else {
                den = &den * &d;
            }
        }
        RationalFunction::new(num, den).expect("determinants have constant term 1")
    }

    /// `Σ_j (-1)^j tr(A_j^k)`.
    pub fn lefschetz(&self, k: usize) -> Rational {
        self.blocks.iter().fold(Rational::zero(), |acc, (j, a)| {
            let t = trace(&mat_pow(a, k));
            if j % 2 == 0 {
                acc + t
            } else {
                acc - t
            }
        })
    }

    pub fn lefschetz_sequence(&self, horizon: usize) -> Vec<Rational> {
        let mut out = Vec::with_capacity(horizon);
        let mut powers: Vec<(usize, Vec<Vec<Rational>>)> =
            self.blocks.iter().map(|(j, a)| (*j, a.clone())).collect();
        for _ in 0..horizon {
            let l = powers.iter().fold(Rational::zero(), |acc, (j, p)| {
                if j % 2 == 0 {
                    acc + trace(p)
                } else {
                    acc - trace(p)
                }
            });
            out.push(l);
            for (j, p) in &mut powers {
                *p = mat_mul(p, &self.blocks[j]);
            }
        }
        out
    }

    /// Zeta function to `order`, from the determinants and from the traces of
    /// powers; the two must agree.
    pub fn zeta(&self, order: usize) -> Result<PowerSeries> {
        let by_det = self.characteristic_rational_function().expand(order);
        let by_trace = PowerSeries::exp_neg_weighted(&self.lefschetz_sequence(order));
        match by_det.compare(&by_trace) {
            SeriesComparison::Differ { index } => Err(Error::Invariant(format!(
                "determinant and trace forms of the zeta function differ at q^{index}"
            ))),
            _ => Ok(by_det),
        }
    }

    /// `P(A; q, T) = Π_j det(1 - q T^j A_j)^{-(-1)^j}` to q-order `order`.
    pub fn poincare_generating(&self, order: usize) -> BivariateSeries {
        let mut out = BivariateSeries::one(order);
        for (j, a) in &self.blocks {
            let d = det_one_minus_t(a);
            let coeffs: Vec<Poly> =
                (0..=d.degree().unwrap_or(0)).map(|i| Poly::monomial(d.coeff(i), i * j)).collect();
            let f = BivariateSeries::from_q_polynomial(&coeffs, order);
            let f = if j % 2 == 0 { f.try_invert().expect("constant term is 1") } else { f };
            out = out.mul(&f);
        }
        out
    }

    /// `Σ_i (-T)^i tr` of `⊗^k A` composed with the projection onto the
    /// invariants of the sign-twisted `S_k` action, restricted to total
    /// degree `i`, by explicit enumeration of the tensor basis.
    pub fn koszul_invariant_trace(&self, k: usize) -> Result<Poly> {
        let basis: Vec<(usize, usize)> =
            self.blocks.iter().flat_map(|(j, a)| (0..a.len()).map(move |i| (*j, i))).collect();
        let d = basis.len();
        let size = (d as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        if size > MAX_TENSOR_BASIS {
            return Err(Error::TooLarge { what: "tensor power basis".into(), size, limit: MAX_TENSOR_BASIS });
        }
        let parities: Vec<bool> = basis.iter().map(|(j, _)| j % 2 == 1).collect();
        let entry = |r: usize, c: usize| -> Rational {
            let ((jr, ir), (jc, ic)) = (basis[r], basis[c]);
            if jr == jc {
                self.blocks[&jr][ir][ic].clone()
            } else {
                Rational::zero()
            }
        };
        let mut by_degree: BTreeMap<usize, Rational> = BTreeMap::new();
        let perms = Perm::all(k);
        let mut tensor = vec![0usize; k];
        for _ in 0..size {
            let degree: usize = tensor.iter().map(|&b| basis[b].0).sum();
            let mut acc = Rational::zero();
            for sigma in &perms {
                let (sign, moved) = koszul_permute(sigma, &tensor, &parities);
                let mut term = Rational::from_integer(sign.into());
                for q in 0..k {
                    term *= entry(tensor[q], moved[q]);
                    if term.is_zero() {
                        break;
                    }
                }
                acc += term;
            }
            *by_degree.entry(degree).or_insert_with(Rational::zero) += acc;
            for x in tensor.iter_mut() {
                *x += 1;
                if *x < d {
                    break;
                }
                *x = 0;
            }
        }
        let kf = Rational::from_integer(factorial(k));
        Ok(by_degree.into_iter().fold(Poly::zero(), |acc, (i, c)| {
            let c = if i % 2 == 0 { c } else { -c };
            &acc + &Poly::monomial(c / &kf, i)
        }))
    }
}

/// `ρ(σ)` on a basis tensor: the factor in position `p` moves to `σ(p)`,
/// with sign `-1` for each inverted pair of odd factors. Returns the sign
/// and the permuted tensor.
pub fn koszul_permute(sigma: &Perm, tensor: &[usize], odd: &[bool]) -> (i64, Vec<usize>) {
    let k = tensor.len();
    let mut moved = vec![0; k];
    for p in 0..k {
        moved[sigma.apply(p)] = tensor[p];
    }
    let mut sign = 1;
    for p in 0..k {
        for r in p + 1..k {
            if sigma.apply(p) > sigma.apply(r) && odd[tensor[p]] && odd[tensor[r]] {
                sign = -sign;
            }
        }
    }
    (sign, moved)
}

fn trace(a: &[Vec<Rational>]) -> Rational {
    (0..a.len()).fold(Rational::zero(), |acc, i| acc + &a[i][i])
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(Rational::zero(), |acc, l| acc + &a[i][l] * &b[l][j])).collect())
        .collect()
}

fn mat_pow(a: &[Vec<Rational>], k: usize) -> Vec<Vec<Rational>> {
    let n = a.len();
    let id: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    (0..k).fold(id, |acc, _| mat_mul(&acc, a))
}

#[derive(Serialize, Deserialize)]
struct Entry(#[serde(with = "serde_rational")] Rational);

#[derive(Serialize, Deserialize)]
struct GradedJson {
    degrees: BTreeMap<String, Vec<Vec<Entry>>>,
}

impl Serialize for GradedEndomorphism {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let degrees = self
            .blocks
            .iter()
            .map(|(j, a)| (j.to_string(), a.iter().map(|r| r.iter().cloned().map(Entry).collect()).collect()))
            .collect();
        GradedJson { degrees }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedEndomorphism {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GradedJson::deserialize(d)?;
        let mut blocks = BTreeMap::new();
        for (key, a) in j.degrees {
            let deg: i64 = key
                .trim()
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("degree '{key}' is not an integer")))?;
            if deg < 0 {
                return Err(serde::de::Error::custom(format!("negative degree {deg}")));
            }
            let a: Vec<Vec<Rational>> = a.into_iter().map(|r| r.into_iter().map(|e| e.0).collect()).collect();
            if blocks.insert(deg as usize, a).is_some() {
                return Err(serde::de::Error::custom(format!("degree {deg} given twice")));
            }
        }
        GradedEndomorphism::new(blocks).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::int;

    fn ge(blocks: &[(usize, Vec<Vec<i64>>)]) -> GradedEndomorphism {
        GradedEndomorphism::from_ints(blocks).unwrap()
    }

    #[test]
    fn characteristic_functions() {
        let pt = ge(&[(0, vec![vec![1]])]);
        let r = pt.characteristic_rational_function();
        assert_eq!((r.numerator(), r.denominator()), (&Poly::from_ints(&[1, -1]), &Poly::one()));
        let sphere = ge(&[(0, vec![vec![1]]), (3, vec![vec![2]])]);
        let r = sphere.characteristic_rational_function();
        assert_eq!(r.expand(3), PowerSeries::from_ints(&[1, 1, 2, 4]));
        let torus = ge(&[(0, vec![vec![1]]), (1, vec![vec![1]])]);
        assert!(torus.characteristic_rational_function().is_one());
        assert!(torus.lefschetz_sequence(5).iter().all(Zero::is_zero));
    }

    #[test]
    fn zeta_examples() {
        let id = GradedEndomorphism::identity_in_degree_zero(3);
        assert_eq!(id.lefschetz(4), int(3));
        assert_eq!(id.zeta(4).unwrap(), PowerSeries::from_ints(&[1, -3, 3, -1, 0]));
        let conj = ge(&[(0, vec![vec![1]]), (1, vec![vec![-1]])]);
        assert_eq!(conj.lefschetz_sequence(4), vec![int(2), int(0), int(2), int(0)]);
        assert_eq!(conj.zeta(4).unwrap(), PowerSeries::from_ints(&[1, -2, 2, -2, 2]));
        let empty = GradedEndomorphism::default();
        assert_eq!(empty.lefschetz(3), int(0));
        assert_eq!(empty.zeta(3).unwrap(), PowerSeries::one(3));
    }

    #[test]
    fn poincare_lines() {
        let even = ge(&[(0, vec![vec![3]])]);
        let p = even.poincare_generating(4);
        for k in 0..=4 {
            assert_eq!(p.coeff(k), &Poly::constant(int(3i64.pow(k as u32))));
        }
        let odd = ge(&[(1, vec![vec![3]])]);
        let p = odd.poincare_generating(3);
        assert_eq!(p.coeff(1), &Poly::monomial(int(-3), 1));
        assert!(p.coeff(2).is_zero() && p.coeff(3).is_zero());
        let sphere = ge(&[(0, vec![vec![1]]), (3, vec![vec![2]])]);
        let inv = sphere.poincare_generating(5).eval_t(&int(1)).try_invert().unwrap();
        assert_eq!(inv, sphere.zeta(5).unwrap());
    }

    #[test]
    fn koszul_examples() {
        let a = ge(&[(0, vec![vec![1, 2], vec![0, 3]]), (1, vec![vec![5]]), (2, vec![vec![-1]])]);
        let k1 = a.koszul_invariant_trace(1).unwrap();
        assert_eq!(k1, Poly::from_ints(&[4, -5, -1]));
        let odd = ge(&[(1, vec![vec![7]])]);
        assert!(odd.koszul_invariant_trace(2).unwrap().is_zero());
        let even = ge(&[(0, vec![vec![2]])]);
        assert_eq!(even.koszul_invariant_trace(3).unwrap(), Poly::constant(int(8)));
        for k in 0..=3 {
            assert_eq!(&a.koszul_invariant_trace(k).unwrap(), a.poincare_generating(3).coeff(k), "k={k}");
        }
        let big = GradedEndomorphism::identity_in_degree_zero(20);
        assert!(matches!(big.koszul_invariant_trace(4), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn json() {
        let g: GradedEndomorphism = serde_json::from_str(r#"{"degrees":{"0":[["1"]],"1":[["-1/2"]]}}"#).unwrap();
        assert_eq!(g.lefschetz(1), Rational::new(3.into(), 2.into()));
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"degrees":{"0":[["1"]],"1":[["-1/2"]]}}"#);
        assert!(serde_json::from_str::<GradedEndomorphism>(r#"{"degrees":{"-1":[["1"]]}}"#).is_err());
        assert!(serde_json::from_str::<GradedEndomorphism>(r#"{"degrees":{"0":[["1","2"]]}}"#).is_err());
    }
}
