//! Word-level helpers over `&[u64]` bitsets.

pub(crate) fn iter_ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + t)
            }
        })
    })
}

#[inline]
pub(crate) fn count_and(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

#[inline]
pub(crate) fn intersects(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

pub(crate) fn and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

#[inline]
pub(crate) fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// `a ⊊ b`
#[inline]
pub(crate) fn is_proper_subset(a: &[u64], b: &[u64]) -> bool {
    is_subset(a, b) && a != b
}

pub(crate) fn from_indices(n_words: usize, idx: impl IntoIterator<Item = usize>) -> Vec<u64> {
    let mut out = vec![0u64; n_words];
    for i in idx {
        out[i / 64] |= 1 << (i % 64);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_round_trip() {
        let s = from_indices(2, [0, 3, 64, 100]);
        assert_eq!(iter_ones(&s).collect::<Vec<_>>(), vec![0, 3, 64, 100]);
        let t = from_indices(2, [3, 100]);
        assert!(is_proper_subset(&t, &s));
        assert!(!is_proper_subset(&s, &s));
        assert_eq!(count_and(&s, &t), 2);
    }
}
