use super::lu::det_submatrix;
use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Hard cap on compound matrix side length `C(n, k)`.
pub const COMPOUND_CAP: usize = 10_000;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// All k-element subsets of `{0, .., n-1}` as sorted tuples, enumerated in
/// lexicographic order. Rows and columns of compound matrices are indexed by
/// this enumeration.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, k));
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn check_compound_args(m: &ComplexMatrix, k: usize) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::Shape("compound of non-square matrix".into()));
    }
    let n = m.rows();
    if k == 0 || k > n {
        return Err(Error::Domain(format!("compound order k={k} out of range 1..={n}")));
    }
    let size = binomial(n, k);
    if size > COMPOUND_CAP {
        return Err(Error::CapExceeded(format!(
            "compound size C({n},{k}) = {size} exceeds cap {COMPOUND_CAP}"
        )));
    }
    Ok(size)
}

/// k-th multiplicative compound: entry `(I, J)` is the minor `det M(I, J)`,
/// with index sets in lexicographic order. Multiplicative by Binet-Cauchy.
pub fn compound(m: &ComplexMatrix, k: usize) -> Result<ComplexMatrix> {
    let size = check_compound_args(m, k)?;
    let sets = k_subsets(m.rows(), k);
    let mut out = ComplexMatrix::zeros(size, size);
    for (a, rows) in sets.iter().enumerate() {
        for (b, cols) in sets.iter().enumerate() {
            out[(a, b)] = det_submatrix(m, rows, cols);
        }
    }
    Ok(out)
}

/// k-th additive compound: the coefficient of `t` in `(I + tC)^(k)`.
/// Its eigenvalues are the k-fold sums of eigenvalues of `C`.
pub fn additive_compound(c: &ComplexMatrix, k: usize) -> Result<ComplexMatrix> {
    let size = check_compound_args(c, k)?;
    let sets = k_subsets(c.rows(), k);
    let mut out = ComplexMatrix::zeros(size, size);
    for (a, si) in sets.iter().enumerate() {
        for (b, sj) in sets.iter().enumerate() {
            if a == b {
                out[(a, b)] = si.iter().map(|&i| c[(i, i)]).sum();
                continue;
            }
            // nonzero only when the sets differ in exactly one element
            let extra_i: Vec<usize> = (0..k).filter(|&p| !sj.contains(&si[p])).collect();
            if extra_i.len() != 1 {
                continue;
            }
            let extra_j: Vec<usize> = (0..k).filter(|&p| !si.contains(&sj[p])).collect();
            debug_assert_eq!(extra_j.len(), 1);
            let r = extra_i[0];
            let s = extra_j[0];
            let sign = if (r + s) % 2 == 0 { 1.0 } else { -1.0 };
            out[(a, b)] = sign * c[(si[r], sj[s])];
        }
    }
    Ok(out)
}
