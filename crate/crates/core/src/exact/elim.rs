//! Fraction-free Gaussian elimination.
//!
//! Rows are scaled to primitive integer vectors and combined with
//! `row <- (p/g)·row - (a/g)·pivot_row`, where `g = gcd(p, a)`. Entries stay
//! integral throughout. The elimination first runs on `i128` with checked
//! arithmetic and restarts on `BigInt` if any step would overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub(crate) trait ElimInt: Clone + Sized {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, other: &Self) -> Self;
    fn from_big(value: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl ElimInt for i128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn from_big(value: &BigInt) -> Option<Self> {
        i128::try_from(value).ok().filter(|v| v.unsigned_abs() < (1u128 << 100))
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ElimInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn from_big(value: &BigInt) -> Option<Self> {
        Some(value.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Result of an elimination: pivot columns in order, and the pivot rows.
///
/// With `full` elimination every pivot column is zero outside its pivot row
/// (a scaled reduced row echelon form).
pub(crate) struct Echelon {
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<BigInt>>,
}

pub(crate) fn eliminate(rows: &[Vec<BigInt>], ncols: usize, full: bool) -> Echelon {
    let small: Option<Vec<Vec<i128>>> = rows
        .iter()
        .map(|r| r.iter().map(i128::from_big).collect::<Option<Vec<_>>>())
        .collect();
    if let Some(small) = small {
        if let Some((pivots, reduced)) = run(small, ncols, full) {
            let rows = reduced
                .into_iter()
                .take(pivots.len())
                .map(|r| r.iter().map(ElimInt::to_big).collect())
                .collect();
            return Echelon { pivots, rows };
        }
    }
    let (pivots, mut reduced) =
        run(rows.to_vec(), ncols, full).expect("BigInt elimination cannot overflow");
    reduced.truncate(pivots.len());
    Echelon { pivots, rows: reduced }
}

fn run<T: ElimInt>(mut rows: Vec<Vec<T>>, ncols: usize, full: bool) -> Option<(Vec<usize>, Vec<Vec<T>>)> {
    let m = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let support: Vec<usize> = (col..ncols).filter(|&j| !rows[r][j].is_zero()).collect();
        let start = if full { 0 } else { r + 1 };
        for i in start..m {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let (pivot_row, row) = if i < r {
                let (lo, hi) = rows.split_at_mut(r);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = rows.split_at_mut(i);
                (&lo[r], &mut hi[0])
            };
            let pv = &pivot_row[col];
            let a = &row[col];
            let g = pv.gcd(a);
            let mp = pv.div_exact(&g);
            let ma = a.div_exact(&g);
            if mp.is_one() {
                for &j in &support {
                    let t = pivot_row[j].mul(&ma)?;
                    row[j] = row[j].sub(&t)?;
                }
            } else {
                // rows above the pivot may carry entries in earlier free columns
                let from = if i < r { 0 } else { col };
                for j in from..ncols {
                    let scaled = if row[j].is_zero() { T::zero() } else { row[j].mul(&mp)? };
                    row[j] = if pivot_row[j].is_zero() {
                        scaled
                    } else {
                        scaled.sub(&pivot_row[j].mul(&ma)?)?
                    };
                }
                make_primitive(row);
            }
        }
        pivots.push(col);
        r += 1;
    }
    Some((pivots, rows))
}

fn make_primitive<T: ElimInt>(row: &mut [T]) {
    let mut content = T::zero();
    for x in row.iter().filter(|x| !x.is_zero()) {
        content = content.gcd(x);
        if content.is_one() {
            return;
        }
    }
    if content.is_zero() || content.is_one() {
        return;
    }
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x = x.div_exact(&content);
        }
    }
}

/// Scales a row of rationals by the lcm of its denominators.
pub(crate) fn integer_row(row: &[crate::Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .filter(|q| !Zero::is_zero(*q))
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter()
        .map(|q| {
            if Zero::is_zero(q) {
                <BigInt as Zero>::zero()
            } else {
                q.numer() * (&lcm / q.denom())
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let huge = 1i64 << 62;
        let rows = big(&[&[huge, huge - 1, 3], &[huge - 1, huge, 5], &[7, 11, huge]]);
        let e = eliminate(&rows, 3, true);
        assert_eq!(e.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn full_elimination_clears_pivot_columns() {
        let rows = big(&[&[1, 2, 3], &[2, 4, 7], &[0, 0, 1]]);
        let e = eliminate(&rows, 3, true);
        assert_eq!(e.pivots, vec![0, 2]);
        for (k, &c) in e.pivots.iter().enumerate() {
            for (other, row) in e.rows.iter().enumerate() {
                if other != k {
                    assert!(Zero::is_zero(&row[c]));
                }
            }
        }
    }
}
