use num_traits::{One, Zero};

use crate::series::{Poly, Rational};

/// Determinant over `ℚ[t]` by fraction-free (Bareiss) elimination.
pub fn poly_determinant(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss quotients are exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// `det(1 - tA)`.
pub fn det_one_minus_t(a: &[Vec<Rational>]) -> Poly {
    let m = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, x)| {
                    let one = if i == j { Rational::one() } else { Rational::zero() };
                    Poly::new(vec![one, -x.clone()])
                })
                .collect()
        })
        .collect();
    poly_determinant(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Perm;
    use crate::series::rational::int;

    /// Leibniz expansion.
    fn leibniz(m: &[Vec<Poly>]) -> Poly {
        let n = m.len();
        Perm::all(n).iter().fold(Poly::zero(), |acc, p| {
            let term = (0..n).fold(Poly::one(), |t, i| &t * &m[i][p.apply(i)]);
            let term = if p.sign() < 0 { -&term } else { term };
            &acc + &term
        })
    }

    #[test]
    fn matches_leibniz() {
        let vals = [[0, 1, -2], [2, 0, 1], [1, 1, 0]];
        let a: Vec<Vec<Rational>> = vals.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        let m: Vec<Vec<Poly>> = a
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.iter()
                    .enumerate()
                    .map(|(j, x)| Poly::new(vec![if i == j { int(1) } else { int(0) }, -x.clone()]))
                    .collect()
            })
            .collect();
        assert_eq!(det_one_minus_t(&a), leibniz(&m));
        // zero pivot forces a row swap
        let z = vec![
            vec![Poly::zero(), Poly::x()],
            vec![Poly::one(), Poly::from_ints(&[1, 1])],
        ];
        assert_eq!(poly_determinant(z.clone()), leibniz(&z));
        assert_eq!(det_one_minus_t(&[]), Poly::one());
    }
}
