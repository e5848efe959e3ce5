//! Lexicographic k-subset enumeration and binomial counting.

/// Number of k-subsets of an n-set, or `None` if the count overflows `u64`.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc.checked_mul((n - j) as u128)?;
        acc /= (j + 1) as u128;
    }
    u64::try_from(acc).ok()
}

/// Calls `f` once per k-subset of `{0, .., n-1}`, in lexicographic order.
///
/// The index buffer passed to `f` is reused between calls; the enumeration
/// order is fixed so that summations over combinations are bit-reproducible.
pub fn for_each_combination<F: FnMut(&[usize])>(n: usize, k: usize, mut f: F) {
    if k > n {
        return;
    }
    if k == 0 {
        f(&[]);
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // advance to the lexicographic successor
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
