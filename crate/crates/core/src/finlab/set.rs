//! Subsets of a structure with at most 64 elements, as bit masks.

pub type Set = u64;

#[inline]
pub fn single(e: u8) -> Set {
    1 << e
}

#[inline]
pub fn has(s: Set, e: u8) -> bool {
    s >> e & 1 == 1
}

pub fn full(n: usize) -> Set {
    if n >= 64 {
        u64::MAX
    } else {
        (1 << n) - 1
    }
}

pub fn count(s: Set) -> usize {
    s.count_ones() as usize
}

pub fn subset(a: Set, b: Set) -> bool {
    a & !b == 0
}

/// Members in increasing order.
pub fn bits(mut s: Set) -> impl Iterator<Item = u8> {
    std::iter::from_fn(move || {
        if s == 0 {
            None
        } else {
            let e = s.trailing_zeros() as u8;
            s &= s - 1;
            Some(e)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_helpers() {
        let s = single(0) | single(5) | single(63);
        assert_eq!(bits(s).collect::<Vec<_>>(), vec![0, 5, 63]);
        assert!(has(s, 63) && !has(s, 1));
        assert_eq!(count(full(64)), 64);
        assert_eq!(full(3), 0b111);
        assert!(subset(single(5), s) && !subset(full(2), s));
    }
}
