use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `u * m * v == d` with `u`, `v` unimodular and `d` diagonal,
/// `d[0][0] | d[1][1] | ...` and all diagonal entries non-negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    /// Non-zero diagonal entries.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }
}

/// Smith normal form by elementary row and column operations.
///
/// The pivot at each stage is the entry of least non-zero absolute value in
/// the trailing submatrix, ties going to the lowest `(row, col)`, which makes
/// the transforms deterministic.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for k in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = find_pivot(&d, k) else {
                return finish(u, v, d);
            };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);

            let pivot = d.get(k, k).clone();
            let mut dirty = false;
            for i in k + 1..rows {
                let q = d.get(i, k).div_floor(&pivot);
                if !q.is_zero() {
                    d.add_row_multiple(i, k, &-q.clone());
                    u.add_row_multiple(i, k, &-q);
                }
                dirty |= !d.get(i, k).is_zero();
            }
            for j in k + 1..cols {
                let q = d.get(k, j).div_floor(&pivot);
                if !q.is_zero() {
                    d.add_col_multiple(j, k, &-q.clone());
                    v.add_col_multiple(j, k, &-q);
                }
                dirty |= !d.get(k, j).is_zero();
            }
            if dirty {
                // a non-zero remainder is now smaller than the pivot
                continue;
            }

            let offender = (k + 1..rows)
                .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d.get(i, j).is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    d.add_row_multiple(k, i, &BigInt::one());
                    u.add_row_multiple(k, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d.get(k, k).is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
    }
    finish(u, v, d)
}

fn finish(u: IntMatrix, v: IntMatrix, d: IntMatrix) -> SnfResult {
    SnfResult { u, v, d }
}

fn find_pivot(d: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in k..d.rows() {
        for j in k..d.cols() {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|(b, _, _)| a < *b) {
                best = Some((a, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SnfResult {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d, "U*M*V != D for\n{m}");
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let divs = s.elementary_divisors();
        for w in divs.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn one_by_one() {
        let s = check(&IntMatrix::from_rows(&[[2]]));
        assert_eq!(s.d, IntMatrix::from_rows(&[[2]]));
        assert!(s.u.is_identity() && s.v.is_identity());
    }

    #[test]
    fn zero_matrix_stays_zero() {
        let s = check(&IntMatrix::zeros(2, 2));
        assert!(s.d.is_zero());
        assert_eq!(s.rank(), 0);
    }

    /// d_1 * ... * d_k = gcd of all k x k minors.
    fn determinantal_divisors(m: &IntMatrix) -> Vec<BigInt> {
        use combos::combinations;
        let mut out = Vec::new();
        let mut prev = BigInt::one();
        for k in 1..=m.rows().min(m.cols()) {
            let mut g = BigInt::zero();
            for rs in combinations(m.rows(), k) {
                for cs in combinations(m.cols(), k) {
                    let minor = IntMatrix::from_fn(k, k, |i, j| m.get(rs[i], cs[j]).clone());
                    g = g.gcd(&minor.determinant().unwrap());
                }
            }
            if g.is_zero() {
                break;
            }
            out.push(&g / &prev);
            prev = g;
        }
        out
    }

    mod combos {
        pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            (k - 1..n)
                .flat_map(|last| {
                    combinations(last, k - 1).into_iter().map(move |mut c| {
                        c.push(last);
                        c
                    })
                })
                .collect()
        }
    }

    #[test]
    fn two_by_two_example() {
        let m = IntMatrix::from_rows(&[[2, 4], [6, 8]]);
        let expected = determinantal_divisors(&m);
        assert_eq!(expected, vec![BigInt::from(2), BigInt::from(4)]);
        let s = check(&m);
        assert_eq!(s.d, IntMatrix::from_rows(&[[2, 0], [0, 4]]));
    }

    #[test]
    fn agrees_with_determinantal_divisors() {
        let cases = [
            IntMatrix::from_rows(&[[3, -4, 0], [5, 2, -1], [0, 6, 9]]),
            IntMatrix::from_rows(&[[4, 4], [-2, 6], [0, 8]]),
            IntMatrix::from_rows(&[[12, 18, 6], [30, 0, 6]]),
        ];
        for m in &cases {
            assert_eq!(check(m).elementary_divisors(), determinantal_divisors(m));
        }
    }

    #[test]
    fn divisibility_fix_up_is_applied() {
        // diag(2, 3) is diagonal but not in Smith form.
        let s = check(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn rectangular_and_negative() {
        let s = check(&IntMatrix::from_rows(&[[-3, 0], [0, 0], [6, -9], [1, 1]]));
        assert_eq!(s.rank(), 2);
        check(&IntMatrix::from_rows(&[[0, 0, -4]]));
        check(&IntMatrix::from_rows(&[[1, -1]]));
    }
}
