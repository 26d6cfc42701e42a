//! Power series in `q` whose coefficients are polynomials in `t_1, t_2, ..`,
//! used to expand zeta-type products with symbolic exponents.

use num_traits::One;

use crate::oracle::Bound;
use crate::series::rational::{int, Rational};
use crate::series::MultiPoly;

/// Coefficients of `q^0..=q^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicSeries {
    coeffs: Vec<MultiPoly>,
}

impl SymbolicSeries {
    pub fn one(nvars: usize, order: usize) -> Self {
        let mut coeffs = vec![MultiPoly::zero(nvars); order + 1];
        coeffs[0] = MultiPoly::one(nvars);
        SymbolicSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &MultiPoly {
        &self.coeffs[k]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let nvars = self.coeffs[0].nvars().max(other.coeffs[0].nvars());
        let mut out = vec![MultiPoly::zero(nvars); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if !other.coeffs[j].is_zero() {
                    out[i + j] = &out[i + j] + &(&self.coeffs[i] * &other.coeffs[j]);
                }
            }
        }
        SymbolicSeries { coeffs: out }
    }

    /// `(1 + a q^m)^e = Σ_j C(e, j) a^j q^{mj}` for a polynomial exponent `e`.
    pub fn binomial(e: &MultiPoly, a: &Rational, m: usize, order: usize) -> Self {
        let nvars = e.nvars();
        let mut out = Self::one(nvars, order);
        let mut c = MultiPoly::one(nvars);
        let mut apow = Rational::one();
        for j in 1..=order / m {
            // C(e, j) = C(e, j-1) (e - j + 1) / j
            let factor = &*e - &MultiPoly::constant(nvars, int(j as i64 - 1));
            c = (&c * &factor).scale(&Rational::new(1.into(), (j as i64).into()));
            apow *= a;
            out.coeffs[m * j] = c.scale(&apow);
        }
        out
    }
}

/// `Π_{m ≤ order} (1 + a q^m)^{s·t_m}` in `order` variables.
pub fn symbolic_product(a: &Rational, s: &Rational, order: usize) -> SymbolicSeries {
    let nvars = order;
    (1..=order).fold(SymbolicSeries::one(nvars, order), |acc, m| {
        let e = MultiPoly::var(nvars, m - 1).scale(s);
        acc.mul(&SymbolicSeries::binomial(&e, a, m, order))
    })
}

/// `Z(q)` with `Z = Π (1 - q^m)^{t_m}` symbolic, to `order`.
pub fn symbolic_zeta(order: usize) -> SymbolicSeries {
    symbolic_product(&int(-1), &int(1), order)
}

/// `[q^k] Z(q^{l+1}) Z(q)^{-1}` (`Z(q)^{-1}` for `l = ∞`): the polynomial of
/// the bounded symmetric power `S^k_l`, in `k` variables.
pub fn symmetric_power_polynomial(k: usize, l: Bound) -> MultiPoly {
    let inv = symbolic_product(&int(-1), &int(-1), k);
    let series = match l {
        Bound::Finite(l) if l < k => {
            let step = l + 1;
            let nvars = k;
            let num = (1..=k / step).fold(SymbolicSeries::one(nvars, k), |acc, m| {
                acc.mul(&SymbolicSeries::binomial(&MultiPoly::var(nvars, m - 1), &int(-1), m * step, k))
            });
            num.mul(&inv)
        }
        _ => inv,
    };
    series.coeff(k).clone()
}
