//! Shared enumerators for the integration suites: raw recursive
//! enumeration, independent of the library's closed-form paths.
//! Each test binary uses its own subset.
#![allow(dead_code)]

/// Every distribution of exactly `pebbles` pebbles over `slots` positions.
/// The callback sees one counts slice per distribution.
pub fn for_each_distribution(slots: usize, pebbles: u128, f: &mut impl FnMut(&[u128])) {
    let mut counts = vec![0u128; slots];
    fn rec(counts: &mut [u128], at: usize, left: u128, f: &mut impl FnMut(&[u128])) {
        if at + 1 == counts.len() {
            counts[at] = left;
            f(counts);
            counts[at] = 0;
            return;
        }
        for here in 0..=left {
            counts[at] = here;
            rec(counts, at + 1, left - here, f);
        }
        counts[at] = 0;
    }
    rec(&mut counts, 0, pebbles, f);
}

/// Every even symmetric level vector `{f_0, 2g_1, …, 2g_h}` holding exactly
/// `pebbles` pebbles on the height-`h` tree.
pub fn for_each_even_symmetric(h: u32, pebbles: u128, f: &mut impl FnMut(&[u128])) {
    let mut levels = vec![0u128; h as usize + 1];
    fn rec(levels: &mut [u128], level: usize, left: u128, f: &mut impl FnMut(&[u128])) {
        if level == 0 {
            levels[0] = left;
            f(levels);
            return;
        }
        let weight = 1u128 << (level + 1);
        for g in 0..=left / weight {
            levels[level] = 2 * g;
            rec(levels, level - 1, left - g * weight, f);
        }
        levels[level] = 0;
    }
    rec(&mut levels, h as usize, pebbles, f);
}
