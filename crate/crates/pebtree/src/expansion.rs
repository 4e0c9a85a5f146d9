//! Digit expansions over Mersenne numbers.
//!
//! Two greedy numeration systems drive everything else in this crate:
//!
//! * the **M-expansion** writes `n = ε₁·M₁ + ⋯ + ε_ℓ·M_ℓ` over the Mersenne
//!   numbers `M_i = 2^i − 1`;
//! * the **μ-expansion** writes `n = r + ε₁·μ₁ + ⋯ + ε_ℓ·μ_ℓ` over
//!   `μ_i = 3·M_i + 2` with a remainder `r ∈ {0,…,4}`.
//!
//! Digits lie in `{0,1,2}`, and a digit 2 forces every lower digit (and, for
//! the μ-expansion, the remainder) to zero. Both expansions are produced by
//! greedy subtraction with two stopping rules: an exact hit (`r = 0`, final
//! digit 1) and a double hit (`r` equals the base element, final digit 2).
//!
//! The list utilities `sigma` (digit sum), `pick` (k-th digit), `shift_left`
//! and the integer reduction `reduce` (whose M-digits are the left-shift of
//! the input's M-digits) complete the toolkit.

use std::fmt;

use crate::error::{Error, Result};

/// `M_i = 2^i − 1` without range checks. Valid for `1 ≤ i ≤ 128`.
pub(crate) fn mersenne_raw(i: u32) -> u128 {
    debug_assert!((1..=128).contains(&i));
    u128::MAX >> (128 - i)
}

/// `μ_i = 3·M_i + 2` without range checks. Valid for `1 ≤ i ≤ 126`.
pub(crate) fn mu_raw(i: u32) -> u128 {
    debug_assert!((1..=126).contains(&i));
    3 * mersenne_raw(i) + 2
}

/// The `i`th Mersenne number `2^i − 1`.
pub fn mersenne(i: u32) -> Result<u128> {
    if i == 0 {
        return Err(Error::InvalidArgument("mersenne index must be >= 1".into()));
    }
    if i > 126 {
        return Err(Error::Overflow("mersenne(i) with i > 126"));
    }
    Ok(mersenne_raw(i))
}

/// `μ_i = 3·M_i + 2 = 2^{i+1} + 2^i − 1`. Both closed forms are evaluated
/// and must agree.
pub fn mu(i: u32) -> Result<u128> {
    if i == 0 {
        return Err(Error::InvalidArgument("mu index must be >= 1".into()));
    }
    if i > 125 {
        return Err(Error::Overflow("mu(i) with i > 125"));
    }
    let by_mersenne = 3 * mersenne_raw(i) + 2;
    let by_powers = (1u128 << (i + 1)) + (1u128 << i) - 1;
    if by_mersenne != by_powers {
        return Err(Error::Inconsistency(format!(
            "mu({i}): closed forms disagree ({by_mersenne} vs {by_powers})"
        )));
    }
    Ok(by_mersenne)
}

/// Canonical coefficient list of an M- or μ-expansion.
///
/// Entry `k` (1-based, via [`pick`]) is the coefficient of `M_k` resp. `μ_k`.
/// Canonical form: digits in `{0,1,2}`, no trailing zeros (zero is the empty
/// list), and a digit 2 only with all lower digits zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitList(Vec<u8>);

impl DigitList {
    /// The empty list, encoding 0.
    pub fn empty() -> Self {
        DigitList(Vec::new())
    }

    /// Builds a list from raw digits, validating canonical form.
    pub fn from_digits(digits: Vec<u8>) -> Result<Self> {
        if let Some(&last) = digits.last() {
            if last == 0 {
                return Err(Error::InvalidArgument(
                    "digit list has a trailing zero".into(),
                ));
            }
        }
        let mut seen_nonzero_below = false;
        for (idx, &d) in digits.iter().enumerate() {
            if d > 2 {
                return Err(Error::InvalidArgument(format!(
                    "digit {d} at position {} outside {{0,1,2}}",
                    idx + 1
                )));
            }
            if d == 2 && seen_nonzero_below {
                return Err(Error::InvalidArgument(format!(
                    "digit 2 at position {} above a nonzero digit",
                    idx + 1
                )));
            }
            if d != 0 {
                seen_nonzero_below = true;
            }
        }
        Ok(DigitList(digits))
    }

    /// Digits in ascending index order (`digits()[0]` is `ε₁`).
    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Internal constructor for lists already in canonical form.
    pub(crate) fn from_canonical(digits: Vec<u8>) -> Self {
        debug_assert!(DigitList::from_digits(digits.clone()).is_ok());
        DigitList(digits)
    }
}

impl fmt::Display for DigitList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "}}")
    }
}

/// A μ-expansion: remainder `r ∈ {0,…,4}` plus the μ-digit list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuExpansion {
    remainder: u8,
    digits: DigitList,
}

impl MuExpansion {
    /// Builds an expansion from parts, validating the side conditions.
    pub fn from_parts(remainder: u8, digits: DigitList) -> Result<Self> {
        if remainder > 4 {
            return Err(Error::InvalidArgument(format!(
                "mu remainder {remainder} outside {{0,...,4}}"
            )));
        }
        if remainder != 0 && digits.digits().contains(&2) {
            return Err(Error::InvalidArgument(
                "mu expansion with digit 2 must have remainder 0".into(),
            ));
        }
        Ok(MuExpansion { remainder, digits })
    }

    pub fn remainder(&self) -> u8 {
        self.remainder
    }

    pub fn digits(&self) -> &DigitList {
        &self.digits
    }
}

impl fmt::Display for MuExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={} digits={}", self.remainder, self.digits)
    }
}

/// Largest `i` with `M_i ≤ n`, for `n ≥ 1`.
fn greedy_mersenne_index(n: u128) -> u32 {
    debug_assert!(n >= 1);
    let bits = 128 - n.leading_zeros();
    // M_bits = 2^bits − 1 ≥ n, with equality iff n is itself a Mersenne number.
    if bits <= 128 && n == mersenne_raw(bits) {
        bits
    } else {
        bits - 1
    }
}

/// Largest `i` with `μ_i ≤ n`, for `n ≥ 5`.
fn greedy_mu_index(n: u128) -> u32 {
    debug_assert!(n >= 5);
    let bits = 128 - n.leading_zeros();
    // μ_i has i+2 bits, so the candidate index is near bits − 1.
    let mut i = (bits - 1).min(126);
    while mu_raw(i) > n {
        i -= 1;
    }
    i
}

/// Greedy M-expansion of `n`.
///
/// Follows the subtraction loop exactly, including both stopping rules:
/// `r = 0` writes a final digit 1, and `r = M_ℓ` writes a final digit 2.
pub fn m_expand(n: u128) -> DigitList {
    if n == 0 {
        return DigitList::empty();
    }
    let top = greedy_mersenne_index(n);
    let mut digits = vec![0u8; top as usize];
    let mut rest = n;
    loop {
        let l = greedy_mersenne_index(rest);
        let m = mersenne_raw(l);
        let r = rest - m;
        if r == 0 {
            digits[l as usize - 1] = 1;
            break;
        }
        if r == m {
            digits[l as usize - 1] = 2;
            break;
        }
        digits[l as usize - 1] = 1;
        rest = r;
    }
    DigitList::from_canonical(digits)
}

/// Evaluates a canonical M-digit list: `Σ ε_i·M_i`.
pub fn m_value(digits: &DigitList) -> Result<u128> {
    let mut total: u128 = 0;
    for (idx, &d) in digits.digits().iter().enumerate() {
        if d == 0 {
            continue;
        }
        let i = idx as u32 + 1;
        if i > 128 {
            return Err(Error::Overflow("m_value digit index"));
        }
        let term = (d as u128)
            .checked_mul(mersenne_raw(i))
            .ok_or(Error::Overflow("m_value term"))?;
        total = total.checked_add(term).ok_or(Error::Overflow("m_value sum"))?;
    }
    Ok(total)
}

/// Greedy μ-expansion of `n`.
///
/// Stops immediately when `n ≤ 4` (pure remainder); otherwise subtracts
/// greedily with the same two stopping rules as [`m_expand`]. A remainder
/// surfacing mid-loop (value ≤ 4 after a subtraction) ends the expansion.
pub fn mu_expand(n: u128) -> MuExpansion {
    if n <= 4 {
        return MuExpansion {
            remainder: n as u8,
            digits: DigitList::empty(),
        };
    }
    let top = greedy_mu_index(n);
    let mut digits = vec![0u8; top as usize];
    let mut remainder = 0u8;
    let mut rest = n;
    loop {
        let l = greedy_mu_index(rest);
        let m = mu_raw(l);
        let r = rest - m;
        if r == 0 {
            digits[l as usize - 1] = 1;
            break;
        }
        if r == m {
            digits[l as usize - 1] = 2;
            break;
        }
        digits[l as usize - 1] = 1;
        if r <= 4 {
            remainder = r as u8;
            break;
        }
        rest = r;
    }
    MuExpansion {
        remainder,
        digits: DigitList::from_canonical(digits),
    }
}

/// Evaluates a μ-expansion: `r + Σ ε_i·μ_i`.
pub fn mu_value(x: &MuExpansion) -> Result<u128> {
    let mut total: u128 = x.remainder() as u128;
    for (idx, &d) in x.digits().digits().iter().enumerate() {
        if d == 0 {
            continue;
        }
        let i = idx as u32 + 1;
        if i > 126 {
            return Err(Error::Overflow("mu_value digit index"));
        }
        let term = (d as u128)
            .checked_mul(mu_raw(i))
            .ok_or(Error::Overflow("mu_value term"))?;
        total = total
            .checked_add(term)
            .ok_or(Error::Overflow("mu_value sum"))?;
    }
    Ok(total)
}

/// Sum of the entries of a digit list.
pub fn sigma(digits: &DigitList) -> u128 {
    digits.digits().iter().map(|&d| d as u128).sum()
}

/// The `k`-th entry of a digit list, 1-based.
pub fn pick(k: usize, digits: &DigitList) -> Result<u8> {
    if k == 0 || k > digits.len() {
        return Err(Error::InvalidArgument(format!(
            "pick index {k} out of range 1..={}",
            digits.len()
        )));
    }
    Ok(digits.digits()[k - 1])
}

/// Drops the first entry and re-canonicalizes trailing zeros.
pub fn shift_left(digits: &DigitList) -> Result<DigitList> {
    if digits.is_empty() {
        return Err(Error::InvalidArgument("cannot shift an empty list".into()));
    }
    let mut rest: Vec<u8> = digits.digits()[1..].to_vec();
    while rest.last() == Some(&0) {
        rest.pop();
    }
    Ok(DigitList::from_canonical(rest))
}

/// The reduction `r(n)`: the integer whose M-digits are the left-shift of
/// `n`'s M-digits, with `r(1) = r(2) = 0`.
pub fn reduce(n: u128) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidArgument("reduce requires n >= 1".into()));
    }
    if n <= 2 {
        return Ok(0);
    }
    m_value(&shift_left(&m_expand(n))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mersenne_values() {
        assert_eq!(mersenne(1).unwrap(), 1);
        assert_eq!(mersenne(5).unwrap(), 31);
        assert_eq!(mersenne(7).unwrap(), 127);
        assert!(mersenne(0).is_err());
        assert!(mersenne(127).is_err());
    }

    #[test]
    fn mu_values() {
        assert_eq!(mu(1).unwrap(), 5);
        assert_eq!(mu(3).unwrap(), 23);
        assert_eq!(mu(5).unwrap(), 95);
        assert!(mu(126).is_err());
    }

    #[test]
    fn m_expand_examples() {
        assert_eq!(m_expand(47).digits(), &[1, 0, 0, 1, 1]);
        assert_eq!(m_expand(157).digits(), &[0, 0, 0, 2, 0, 0, 1]);
        assert_eq!(m_expand(2).digits(), &[2]);
        assert_eq!(m_expand(0).digits(), &[] as &[u8]);
        assert_eq!(m_expand(5).digits(), &[2, 1]);
        assert_eq!(m_expand(40).digits(), &[2, 0, 1, 0, 1]);
        assert_eq!(m_expand(18).digits(), &[0, 1, 0, 1]);
    }

    #[test]
    fn m_value_examples() {
        let d = DigitList::from_digits(vec![1, 0, 0, 1, 1]).unwrap();
        assert_eq!(m_value(&d).unwrap(), 47);
        assert_eq!(m_value(&DigitList::empty()).unwrap(), 0);
        let d = DigitList::from_digits(vec![0, 1, 0, 1]).unwrap();
        assert_eq!(m_value(&d).unwrap(), 18);
    }

    #[test]
    fn mu_expand_examples() {
        let x = mu_expand(409);
        assert_eq!(x.remainder(), 3);
        assert_eq!(x.digits().digits(), &[0, 0, 1, 0, 0, 0, 1]);

        let x = mu_expand(140);
        assert_eq!(x.remainder(), 0);
        assert_eq!(x.digits().digits(), &[0, 2, 1, 0, 1]);

        let x = mu_expand(4);
        assert_eq!(x.remainder(), 4);
        assert!(x.digits().is_empty());
    }

    #[test]
    fn mu_value_examples() {
        let x = MuExpansion::from_parts(
            0,
            DigitList::from_digits(vec![0, 2, 1, 0, 1]).unwrap(),
        )
        .unwrap();
        assert_eq!(mu_value(&x).unwrap(), 140);

        let x = MuExpansion::from_parts(0, DigitList::empty()).unwrap();
        assert_eq!(mu_value(&x).unwrap(), 0);

        let x = MuExpansion::from_parts(2, DigitList::from_digits(vec![1]).unwrap()).unwrap();
        assert_eq!(mu_value(&x).unwrap(), 7);
    }

    #[test]
    fn sigma_pick_shift() {
        let d47 = m_expand(47);
        assert_eq!(sigma(&d47), 3);
        assert_eq!(sigma(&DigitList::empty()), 0);
        let d40 = m_expand(40);
        assert_eq!(sigma(&d40), 4);

        assert_eq!(pick(1, &d47).unwrap(), 1);
        assert_eq!(pick(1, &d40).unwrap(), 2);
        let d = DigitList::from_digits(vec![0, 1]).unwrap();
        assert_eq!(pick(2, &d).unwrap(), 1);
        assert!(pick(3, &d).is_err());
        assert!(pick(0, &d).is_err());

        assert_eq!(shift_left(&d47).unwrap().digits(), &[0, 0, 1, 1]);
        assert_eq!(
            shift_left(&DigitList::from_digits(vec![1]).unwrap())
                .unwrap()
                .digits(),
            &[] as &[u8]
        );
        assert_eq!(shift_left(&d40).unwrap().digits(), &[0, 1, 0, 1]);
        assert!(shift_left(&DigitList::empty()).is_err());
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(40).unwrap(), 18);
        assert_eq!(reduce(1).unwrap(), 0);
        assert_eq!(reduce(2).unwrap(), 0);
        assert_eq!(reduce(5).unwrap(), 1);
        assert!(reduce(0).is_err());
    }

    #[test]
    fn canonical_form_rejections() {
        assert!(DigitList::from_digits(vec![1, 0]).is_err()); // trailing zero
        assert!(DigitList::from_digits(vec![3]).is_err()); // digit out of range
        assert!(DigitList::from_digits(vec![1, 2]).is_err()); // 2 above a nonzero
        assert!(DigitList::from_digits(vec![0, 2, 1]).is_ok());
        assert!(MuExpansion::from_parts(5, DigitList::empty()).is_err());
        assert!(
            MuExpansion::from_parts(1, DigitList::from_digits(vec![2]).unwrap()).is_err()
        );
    }

    #[test]
    fn round_trip_small_dense() {
        for n in 0u128..=100_000 {
            assert_eq!(m_value(&m_expand(n)).unwrap(), n, "M round trip at {n}");
            assert_eq!(mu_value(&mu_expand(n)).unwrap(), n, "mu round trip at {n}");
        }
    }

    #[test]
    fn round_trip_extremes() {
        for n in [
            u128::MAX,
            u128::MAX - 1,
            1u128 << 127,
            (1u128 << 127) - 1,
            (1u128 << 100) + 12345,
        ] {
            assert_eq!(m_value(&m_expand(n)).unwrap(), n);
            assert_eq!(mu_value(&mu_expand(n)).unwrap(), n);
        }
    }
}
