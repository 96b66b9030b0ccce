//! Lexicographic enumeration of column subsets and multisets.

use matrix_core::ColumnMultiset;

use crate::error::{Result, SamplingError};
use crate::ENUMERATION_CAP;

/// C(m, n) as u128, saturating.
pub fn binomial(m: u64, n: u64) -> u128 {
    if n > m {
        return 0;
    }
    let n = n.min(m - n);
    let mut acc: u128 = 1;
    for k in 0..n {
        acc = acc.saturating_mul((m - k) as u128) / (k as u128 + 1);
    }
    acc
}

/// Number of n-subsets of m columns, checked against the enumeration cap.
pub fn subset_count(n: usize, m: usize) -> Result<u64> {
    let count = binomial(m as u64, n as u64);
    if count > ENUMERATION_CAP as u128 {
        return Err(SamplingError::EnumerationCap {
            what: "column subsets",
            count,
            cap: ENUMERATION_CAP,
        });
    }
    Ok(count as u64)
}

/// Number of n-multisets of m columns, checked against the enumeration cap.
pub fn multiset_count(n: usize, m: usize) -> Result<u64> {
    let count = binomial((m + n - 1) as u64, n as u64);
    if count > ENUMERATION_CAP as u128 {
        return Err(SamplingError::EnumerationCap {
            what: "column multisets",
            count,
            cap: ENUMERATION_CAP,
        });
    }
    Ok(count as u64)
}

/// All n-subsets of m columns in lexicographic order of their index tuples.
pub fn subsets(n: usize, m: usize) -> Result<Vec<ColumnMultiset>> {
    check_dims(n, m)?;
    let expected = subset_count(n, m)?;
    let mut out = Vec::with_capacity(expected as usize);
    let mut indices: Vec<usize> = (0..n).collect();
    loop {
        out.push(ColumnMultiset::from_indices(m, &indices).expect("indices in range"));
        // advance to the next lexicographic combination
        let mut i = n;
        loop {
            if i == 0 {
                debug_assert_eq!(out.len() as u64, expected);
                return Ok(out);
            }
            i -= 1;
            if indices[i] != i + m - n {
                break;
            }
        }
        indices[i] += 1;
        for j in (i + 1)..n {
            indices[j] = indices[j - 1] + 1;
        }
    }
}

/// All n-multisets of m columns as non-decreasing index tuples in
/// lexicographic order: {1,1} < {1,2} < ... < {m,m}.
pub fn multisets(n: usize, m: usize) -> Result<Vec<ColumnMultiset>> {
    check_dims(n, m)?;
    let expected = multiset_count(n, m)?;
    let mut out = Vec::with_capacity(expected as usize);
    let mut indices = vec![0usize; n];
    loop {
        out.push(ColumnMultiset::from_indices(m, &indices).expect("indices in range"));
        let mut i = n;
        loop {
            if i == 0 {
                debug_assert_eq!(out.len() as u64, expected);
                return Ok(out);
            }
            i -= 1;
            if indices[i] != m - 1 {
                break;
            }
        }
        indices[i] += 1;
        for j in (i + 1)..n {
            indices[j] = indices[i];
        }
    }
}

fn check_dims(n: usize, m: usize) -> Result<()> {
    if n == 0 || m == 0 || n > m {
        return Err(SamplingError::InvalidArgument(format!(
            "need 1 <= n <= m, got n={n}, m={m}"
        )));
    }
    Ok(())
}
