//! Word-level helpers shared by the bitset types.

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

#[inline]
pub(crate) fn get(words: &[u64], i: usize) -> bool {
    words[i / 64] >> (i % 64) & 1 == 1
}

#[inline]
pub(crate) fn set(words: &mut [u64], i: usize) {
    words[i / 64] |= 1 << (i % 64);
}

#[inline]
pub(crate) fn clear(words: &mut [u64], i: usize) {
    words[i / 64] &= !(1 << (i % 64));
}

#[inline]
pub(crate) fn count(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// Iterates the indices of set bits in increasing order.
pub(crate) fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(wi * 64 + b)
        })
    })
}

/// Mask with the low `n` bits of a bitset of `words` words set.
pub(crate) fn full(n: usize) -> Vec<u64> {
    let mut v = vec![0u64; words_for(n)];
    for (wi, w) in v.iter_mut().enumerate() {
        let lo = wi * 64;
        if n >= lo + 64 {
            *w = u64::MAX;
        } else if n > lo {
            *w = (1u64 << (n - lo)) - 1;
        }
    }
    v
}
