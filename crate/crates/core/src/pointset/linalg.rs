use crate::error::{Error, Result};

/// Rank over `Q` of an integer matrix, by fraction-free (Bareiss) elimination.
///
/// After eliminating with pivot `k`, every remaining entry is a `(k+1)`-minor
/// of the input, so the division by the previous pivot is exact.
pub fn integer_rank(rows: &[Vec<i64>]) -> Result<usize> {
    let Some(first) = rows.first() else {
        return Ok(0);
    };
    let cols = first.len();
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let n = m.len();
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..cols {
        if rank == n {
            break;
        }
        let Some(pivot_row) = (rank..n).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let pivot = m[rank][col];
        for r in rank + 1..n {
            let factor = m[r][col];
            for c in col + 1..cols {
                let num = pivot
                    .checked_mul(m[r][c])
                    .and_then(|x| {
                        factor
                            .checked_mul(m[rank][c])
                            .and_then(|y| x.checked_sub(y))
                    })
                    .ok_or(Error::Overflow)?;
                debug_assert_eq!(num % prev, 0, "Bareiss division must be exact");
                m[r][c] = num / prev;
            }
            m[r][col] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    Ok(rank)
}
