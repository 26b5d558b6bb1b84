//! Subset enumeration and ranking helpers.

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).unwrap_or(u64::MAX)
}

/// All `k`-subsets of `0..n` as sorted index vectors, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                cur = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// Masks of all `k`-subsets of `0..n` in colexicographic order
/// (equivalently, increasing numeric order of the mask).
pub fn colex_masks(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = if n >= 64 { u64::MAX } else { 1u64 << n };
    let mut cur: Option<u64> = if k == 0 {
        Some(0)
    } else if k <= n {
        Some((1u64 << k) - 1)
    } else {
        None
    };
    std::iter::from_fn(move || {
        let out = cur?;
        cur = if out == 0 {
            None
        } else {
            // Gosper's hack
            let c = out & out.wrapping_neg();
            let r = out + c;
            let next = (((r ^ out) >> 2) / c) | r;
            (next < limit && r != 0).then_some(next)
        };
        Some(out)
    })
}

/// Rank of a mask among masks of the same popcount in colex order.
pub fn colex_rank(mask: u64) -> u64 {
    let mut rank = 0;
    let mut i = 0;
    let mut m = mask;
    while m != 0 {
        let b = m.trailing_zeros() as usize;
        i += 1;
        rank += binomial(b, i);
        m &= m - 1;
    }
    rank
}
