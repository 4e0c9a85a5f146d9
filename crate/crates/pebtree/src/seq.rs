//! Integer sequences behind the pebbling formulas.
//!
//! * `a(n)` — the limit of the lists `A₁ = {5}`, `A_k = join[A_{k−1}, A_{k−1}, {1}]`,
//!   a sequence of 1s and 5s with `a₀ = 0`;
//! * `s(n)` — its partial sums, computed in closed form as
//!   `s_n = 3n + 2σ(⟨n⟩_M)` rather than by summation;
//! * `s_inverse(m) = max{n : s_n ≤ m}`, read off the μ-expansion of `m`;
//! * `phi(m)` — the μ-digit sum of `m` (remainder excluded);
//! * `d(n)` / `conolly_fox(n)` — the 0/1 difference list `D₁ = {1}`,
//!   `D_k = join[D_{k−1}, D_{k−1}, {0}]` and the Conolly-Fox sequence
//!   `c(n) = c(n − c(n−1)) + c(n−1 − c(n−2))`, `c(1) = 1`, `c(2) = 2`
//!   (OEIS A046699 variant). The fast route uses `s_n = 4·c_n + n`; the
//!   memoized recurrence is retained as a cross-check oracle;
//! * `w(k)` — the weight sequence `w₁ = 2`, `w_k = 3·2^k − 2`, satisfying
//!   `w_{j+1} = 2·μ_j`;
//! * `t(m)` — the largest value of `3·n(f) − c(f)` over even symmetric
//!   configurations with `m` pebbles, evaluated from the binary digits of
//!   `m` as `(δ₀ + 2δ₁)·w₁ + Σ_{i≥2} δ_i·w_i`.
//!
//! Indexing: `a` and `s` are 0-based with `a₀ = s₀ = 0`; `c`, `d`, `w`, `t`
//! are 1-based. Accessors validate offsets rather than silently shifting.
//! All values are exact `u128`.

use crate::error::{Error, Result};
use crate::expansion::{self, mersenne_raw};

/// Element `a_n` of the 1-and-5 list, with `a₀ = 0`.
///
/// Runs in O(log n) by block descent: `A_ℓ` has `M_ℓ` entries, so position
/// `n` either lies in one of the two `A_{ℓ−1}` copies or is the filler at
/// `n = M_ℓ`.
pub fn a(n: u128) -> Result<u128> {
    if n == 0 {
        return Ok(0);
    }
    limit_list_element(n, 5, 1)
}

/// Element `d_n` of the 0/1 difference list (1-based).
pub fn d(n: u128) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidArgument("d is 1-based; n must be >= 1".into()));
    }
    limit_list_element(n, 1, 0)
}

/// Shared block descent for the two self-similar limit lists.
/// `first` is the single entry of the base list, `filler` the entry
/// appended at every block boundary `n = M_ℓ`, `ℓ ≥ 2`.
fn limit_list_element(mut n: u128, first: u128, filler: u128) -> Result<u128> {
    if n > mersenne_raw(126) {
        return Err(Error::Overflow("limit list index beyond M_126"));
    }
    loop {
        // The smallest block containing position n is A_ℓ with ℓ = bitlen(n).
        let l = 128 - n.leading_zeros();
        if l == 1 {
            return Ok(first);
        }
        if n == mersenne_raw(l) {
            return Ok(filler);
        }
        let half = mersenne_raw(l - 1);
        if n > half {
            n -= half;
        }
    }
}

/// Partial sum `s_n = a₁ + ⋯ + a_n`, in closed form `3n + 2σ(⟨n⟩_M)`.
pub fn s(n: u128) -> Result<u128> {
    let triple = n.checked_mul(3).ok_or(Error::Overflow("s(n): 3n"))?;
    let correction = 2 * expansion::sigma(&expansion::m_expand(n));
    triple
        .checked_add(correction)
        .ok_or(Error::Overflow("s(n): sum"))
}

/// `s_inverse(m) = max{n : s_n ≤ m}`, read off the μ-expansion of `m` by
/// replacing each coefficient on `μ_i` with the same coefficient on `M_i`
/// and dropping the remainder.
pub fn s_inverse(m: u128) -> u128 {
    let x = expansion::mu_expand(m);
    let mut total: u128 = 0;
    for (idx, &dgt) in x.digits().digits().iter().enumerate() {
        if dgt != 0 {
            total += dgt as u128 * mersenne_raw(idx as u32 + 1);
        }
    }
    total
}

/// μ-digit sum `φ(m)` (remainder excluded).
pub fn phi(m: u128) -> u128 {
    expansion::sigma(expansion::mu_expand(m).digits())
}

/// Conolly-Fox value `c_n` by memoized evaluation of the nested recurrence.
///
/// Reference implementation for cross-checks; O(n) time and space per call.
pub fn conolly_fox_slow(n: u128) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "conolly_fox is 1-based; n must be >= 1".into(),
        ));
    }
    let table = conolly_fox_slow_prefix(n)?;
    Ok(table[n as usize])
}

/// The memo table `c₁..c_n` (slot 0 unused) for sweep-style cross-checks.
///
/// Any recurrence index leaving the already-computed range is surfaced as
/// an error, never clamped.
pub fn conolly_fox_slow_prefix(n: u128) -> Result<Vec<u128>> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "conolly_fox is 1-based; n must be >= 1".into(),
        ));
    }
    if n > 10_000_000 {
        return Err(Error::InvalidArgument(
            "conolly_fox_slow_prefix capped at 10^7 entries".into(),
        ));
    }
    let n = n as usize;
    let mut c = vec![0u128; n + 1];
    c[1] = 1;
    if n >= 2 {
        c[2] = 2;
    }
    for i in 3..=n {
        let i_u = i as u128;
        let j1 = i_u
            .checked_sub(c[i - 1])
            .filter(|&j| (1..i_u).contains(&j))
            .ok_or_else(|| {
                Error::Inconsistency(format!("conolly_fox recurrence index n - c(n-1) at n={i}"))
            })?;
        let j2 = (i_u - 1)
            .checked_sub(c[i - 2])
            .filter(|&j| (1..i_u).contains(&j))
            .ok_or_else(|| {
                Error::Inconsistency(format!(
                    "conolly_fox recurrence index n-1 - c(n-2) at n={i}"
                ))
            })?;
        c[i] = c[j1 as usize] + c[j2 as usize];
    }
    Ok(c)
}

/// Fast Conolly-Fox value via `c_n = (s_n − n) / 4`.
///
/// Divisibility by 4 is checked; a failure is an internal inconsistency.
pub fn conolly_fox(n: u128) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "conolly_fox is 1-based; n must be >= 1".into(),
        ));
    }
    let diff = s(n)? - n;
    if !diff.is_multiple_of(4) {
        return Err(Error::Inconsistency(format!(
            "s({n}) - {n} = {diff} is not divisible by 4"
        )));
    }
    Ok(diff / 4)
}

/// Weight sequence: `w₁ = 2`, `w_k = 3·2^k − 2` for `k ≥ 2`.
pub fn w(k: u32) -> Result<u128> {
    if k == 0 {
        return Err(Error::InvalidArgument("w is 1-based; k must be >= 1".into()));
    }
    if k == 1 {
        return Ok(2);
    }
    if k > 125 {
        return Err(Error::Overflow("w(k) with k > 125"));
    }
    Ok(3 * (1u128 << k) - 2)
}

/// The largest value of `3·n(f) − c(f)` over even symmetric configurations
/// with `m` pebbles: binary-expand `m = Σ δ_i·2^i` and evaluate
/// `(δ₀ + 2δ₁)·w₁ + Σ_{i≥2} δ_i·w_i`. Depends only on `m`.
pub fn t(m: u128) -> Result<u128> {
    if m == 0 {
        return Err(Error::InvalidArgument("t is 1-based; m must be >= 1".into()));
    }
    let bit = |i: u32| (m >> i) & 1;
    let mut total = (bit(0) + 2 * bit(1)) * w(1)?;
    let top = 128 - m.leading_zeros();
    for i in 2..top {
        if bit(i) == 1 {
            total = total
                .checked_add(w(i)?)
                .ok_or(Error::Overflow("t(m): sum"))?;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Streams the first `len` entries of the limit list by the join
    /// recursion; oracle for the block descent.
    fn stream_limit_list(len: usize, first: u128, filler: u128) -> Vec<u128> {
        let mut list = vec![first];
        while list.len() < len {
            let mut next = list.clone();
            next.extend_from_slice(&list);
            next.push(filler);
            list = next;
        }
        list.truncate(len);
        list
    }

    const TABLE_A: [u128; 16] = [0, 5, 5, 1, 5, 5, 1, 1, 5, 5, 1, 5, 5, 1, 1, 1];
    const TABLE_S: [u128; 16] = [0, 5, 10, 11, 16, 21, 22, 23, 28, 33, 34, 39, 44, 45, 46, 47];

    #[test]
    fn a_examples() {
        assert_eq!(a(0).unwrap(), 0);
        assert_eq!(a(1).unwrap(), 5);
        assert_eq!(a(13).unwrap(), 1);
        // a(47) against streaming generation of A_6.
        let a6 = stream_limit_list(63, 5, 1);
        assert_eq!(a(47).unwrap(), a6[46]);
        assert_eq!(a(47).unwrap(), 5);
    }

    #[test]
    fn a_matches_stream_prefix() {
        let stream = stream_limit_list(2_000, 5, 1);
        for (i, &v) in stream.iter().enumerate() {
            assert_eq!(a(i as u128 + 1).unwrap(), v, "a at n={}", i + 1);
        }
    }

    #[test]
    fn d_matches_stream_prefix() {
        let stream = stream_limit_list(2_000, 1, 0);
        for (i, &v) in stream.iter().enumerate() {
            assert_eq!(d(i as u128 + 1).unwrap(), v, "d at n={}", i + 1);
        }
        assert_eq!(d(3).unwrap(), 0);
        assert_eq!(d(8).unwrap(), 1);
        assert_eq!(d(15).unwrap(), 0);
        assert!(d(0).is_err());
    }

    #[test]
    fn s_examples() {
        assert_eq!(s(8).unwrap(), 28);
        assert_eq!(s(15).unwrap(), 47);
        assert_eq!(s(0).unwrap(), 0);
        for n in 0..16 {
            assert_eq!(a(n).unwrap(), TABLE_A[n as usize]);
            assert_eq!(s(n).unwrap(), TABLE_S[n as usize]);
        }
    }

    #[test]
    fn s_matches_running_sum() {
        let mut sum: u128 = 0;
        for n in 1..=20_000u128 {
            sum += a(n).unwrap();
            assert_eq!(s(n).unwrap(), sum, "s at n={n}");
        }
    }

    #[test]
    fn s_inverse_examples() {
        assert_eq!(s_inverse(32), 8);
        assert_eq!(s_inverse(5), 1);
        assert_eq!(s_inverse(4), 0);
        assert_eq!(s_inverse(0), 0);
    }

    #[test]
    fn s_inverse_bracket_dense() {
        for m in 1..=5_000u128 {
            let n = s_inverse(m);
            assert!(s(n).unwrap() <= m, "s(s_inverse({m})) too big");
            assert!(s(n + 1).unwrap() > m, "s(s_inverse({m})+1) not above");
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(236), 4);
        assert_eq!(phi(253), 3);
        assert_eq!(phi(4), 0);
    }

    #[test]
    fn conolly_fox_examples() {
        assert_eq!(conolly_fox_slow(1).unwrap(), 1);
        assert_eq!(conolly_fox_slow(5).unwrap(), 4);
        assert_eq!(conolly_fox_slow(15).unwrap(), 8);
        assert_eq!(conolly_fox(9).unwrap(), 6);
        assert_eq!(conolly_fox(1).unwrap(), 1);
        assert!(conolly_fox(0).is_err());

        const TABLE_D: [u128; 15] = [1, 1, 0, 1, 1, 0, 0, 1, 1, 0, 1, 1, 0, 0, 0];
        const TABLE_C: [u128; 15] = [1, 2, 2, 3, 4, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8];
        for n in 1..=15u128 {
            assert_eq!(d(n).unwrap(), TABLE_D[n as usize - 1]);
            assert_eq!(conolly_fox(n).unwrap(), TABLE_C[n as usize - 1]);
        }
    }

    #[test]
    fn conolly_fox_fast_matches_slow() {
        let table = conolly_fox_slow_prefix(10_000).unwrap();
        for n in 1..=10_000u128 {
            assert_eq!(conolly_fox(n).unwrap(), table[n as usize], "c at n={n}");
        }
    }

    #[test]
    fn w_examples() {
        assert_eq!(w(1).unwrap(), 2);
        assert_eq!(w(2).unwrap(), 10);
        assert_eq!(w(5).unwrap(), 94);
        assert_eq!(w(5).unwrap(), 2 * crate::expansion::mu(4).unwrap());
        assert!(w(0).is_err());
        assert!(w(126).is_err());
    }

    #[test]
    fn t_examples() {
        assert_eq!(t(23).unwrap(), 62);
        assert_eq!(t(1).unwrap(), 2);
        assert_eq!(t(12).unwrap(), 32);
        assert!(t(0).is_err());
    }
}
