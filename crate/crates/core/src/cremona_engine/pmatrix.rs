//! Fraction-free (Bareiss) elimination for matrices whose entries are
//! polynomials in the parameters. Every intermediate entry is a minor of the
//! input, so the divisions are exact.

use super::poly::MultiPoly;

pub type PMatrix = Vec<Vec<MultiPoly>>;

struct Echelon {
    rank: usize,
    /// Original indices of the pivot rows, in pivot order.
    pivot_rows: Vec<usize>,
    last_pivot: MultiPoly,
    swaps: usize,
}

fn eliminate(mut m: PMatrix) -> Echelon {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut perm: Vec<usize> = (0..rows).collect();
    let mut prev = MultiPoly::one();
    let mut r = 0;
    let mut swaps = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            perm.swap(p, r);
            swaps += 1;
        }
        let pivot = m[r][c].clone();
        for i in r + 1..rows {
            let factor = m[i][c].clone();
            let (top, bottom) = m.split_at_mut(i);
            let pivot_row = &top[r];
            for (j, entry) in bottom[0].iter_mut().enumerate().skip(c + 1) {
                let num = &(&pivot * &*entry) - &(&factor * &pivot_row[j]);
                *entry = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][c] = MultiPoly::zero();
        }
        prev = pivot;
        r += 1;
    }
    Echelon {
        rank: r,
        pivot_rows: perm[..r].to_vec(),
        last_pivot: prev,
        swaps,
    }
}

/// Rank over the parameter fraction field.
pub fn rank(m: &PMatrix) -> usize {
    eliminate(m.clone()).rank
}

pub fn determinant(m: &PMatrix) -> MultiPoly {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix");
    if n == 0 {
        return MultiPoly::one();
    }
    let e = eliminate(m.clone());
    if e.rank < n {
        return MultiPoly::zero();
    }
    if e.swaps % 2 == 1 {
        -e.last_pivot
    } else {
        e.last_pivot
    }
}

/// A maximal set of independent rows, as original indices.
pub fn independent_rows(m: &PMatrix) -> Vec<usize> {
    let mut idx = eliminate(m.clone()).pivot_rows;
    idx.sort_unstable();
    idx
}

/// Right kernel when it is one-dimensional; otherwise `Err(dimension)`.
/// The vector is given by signed maximal minors.
pub fn kernel_line(m: &PMatrix) -> Result<Vec<MultiPoly>, usize> {
    let cols = m.first().map_or(0, |r| r.len());
    let rows = independent_rows(m);
    let dim = cols - rows.len();
    if dim != 1 {
        return Err(dim);
    }
    let sub: PMatrix = rows.iter().map(|&i| m[i].clone()).collect();
    let mut out = Vec::with_capacity(cols);
    for j in 0..cols {
        let minor: PMatrix = sub
            .iter()
            .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let d = determinant(&minor);
        out.push(if j % 2 == 1 { -d } else { d });
    }
    Ok(out)
}

pub fn transpose(m: &PMatrix) -> PMatrix {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Determinant by Laplace expansion along rows, memoizing minors of the
/// bottom rows by column subset. Cheaper than elimination for small
/// matrices of large coordinate polynomials.
pub fn laplace_determinant(m: &PMatrix) -> MultiPoly {
    let n = m.len();
    assert!(n <= 8 && m.iter().all(|r| r.len() == n));
    // minors[mask] = det of rows (n − |mask|)..n on columns in mask.
    let mut minors: std::collections::HashMap<u32, MultiPoly> = std::collections::HashMap::new();
    minors.insert(0, MultiPoly::one());
    for size in 1..=n {
        let row = n - size;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let mut acc = MultiPoly::zero();
            let mut sign_pos = 0;
            for col in 0..n {
                if mask & (1 << col) == 0 {
                    continue;
                }
                let rest = &minors[&(mask & !(1 << col))];
                if !m[row][col].is_zero() && !rest.is_zero() {
                    let t = &m[row][col] * rest;
                    acc = if sign_pos % 2 == 0 { &acc + &t } else { &acc - &t };
                }
                sign_pos += 1;
            }
            minors.insert(mask, acc);
        }
    }
    minors.remove(&((1u32 << n) - 1)).expect("full minor")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cremona_engine::poly::{A, B};

    fn c(v: i64) -> MultiPoly {
        MultiPoly::int(v)
    }

    #[test]
    fn rank_and_determinant() {
        let m = vec![vec![c(1), c(2), c(3)], vec![c(4), c(5), c(6)], vec![c(7), c(8), c(10)]];
        assert_eq!(rank(&m), 3);
        assert_eq!(determinant(&m), c(-3));
        assert_eq!(laplace_determinant(&m), c(-3));
        let s = vec![vec![c(0), c(1)], vec![c(1), c(0)]];
        assert_eq!(determinant(&s), c(-1));
    }

    #[test]
    fn symbolic_kernel() {
        let a = MultiPoly::var(A);
        let b = MultiPoly::var(B);
        // [a, b, 1] · v = 0 and [1, 1, 1] · v = 0
        let m = vec![vec![a.clone(), b.clone(), c(1)], vec![c(1), c(1), c(1)]];
        let k = kernel_line(&m).unwrap();
        for row in &m {
            let s = row.iter().zip(&k).fold(MultiPoly::zero(), |acc, (x, y)| &acc + &(x * y));
            assert!(s.is_zero());
        }
        assert_eq!(kernel_line(&vec![vec![c(1), c(1), c(1)]]), Err(2));
    }
}
