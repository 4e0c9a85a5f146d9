//! Asymptotic behavior of `k(h)`.
//!
//! From the μ-expansion `2^h = r + Σ ε_i·μ_i` follows the exact identity
//! `3·k(h) = 2^h − 2·φ(2^h) − r`, so the growth of `k(h)` is controlled by
//! the μ-digit sum `φ(2^h)`. The normalized third-order term
//!
//! ```text
//! α(h) = (2·φ(2^h) − (h + 2)) / log₂(h + 2)
//! ```
//!
//! oscillates; two explicit height families exhibit the extremes:
//!
//! * **empty-top**, `h = 2^{k+1} + k − 1`: the optimal configuration has no
//!   pebbles above level k, `φ(2^h) = 2^k`, and `α → −1`;
//! * **full-top**, `h = 2^{k+2} − k`: pebbles at every level 1..k−1,
//!   `φ(2^h) = 2^{k+1}`, and `α → 1`.
//!
//! The crossover level is governed by `j* = min{j : j ≥ 2^{h−2j−1} − 1}`,
//! the integer form of the root `x*` of `h − 2x − 1 − log₂(x+1) = 0`;
//! `j* = ⌈x*⌉` is checked diagnostically, not assumed.
//!
//! For `h > 126` the value `2^h` leaves u128, but its greedy μ-expansion
//! has a rigid prefix: while the running value is `2^e + t` with `t` tiny,
//! the greedy step subtracts `μ_{e−2}` and leaves `2^{e−2} + (t+1)`. The
//! expansion is therefore computed symbolically on the pair `(e, t)` until
//! the value fits u128, then finished concretely — exact arithmetic
//! throughout, no big integers on this path. Each row's digits are
//! round-tripped through `BigUint` to confirm they reconstruct `2^h`.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::expansion::{self, DigitList};

/// Largest height the asymptotic table supports.
pub const MAX_TABLE_HEIGHT: u32 = 2000;

/// One row of the asymptotic table.
#[derive(Clone, Debug)]
pub struct AsymptoticRow {
    pub h: u32,
    /// `k(h)`, exact (arbitrary precision; `k(h) ≈ 2^h/3` outgrows u128
    /// beyond h = 127).
    pub k: BigUint,
    /// μ-digit sum `φ(2^h)`.
    pub phi: u128,
    /// μ-remainder of `2^h`.
    pub remainder: u8,
    pub alpha: f64,
    /// The identity `3k = 2^h − 2φ − r` was verified for this row.
    pub residual_exact: bool,
    /// `|alpha| > 1`.
    pub exception: bool,
}

/// Which extremal height family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// `h = 2^{k+1} + k − 1`; no pebbles above level k.
    EmptyTop,
    /// `h = 2^{k+2} − k`; pebbles at every level 1..k−1.
    FullTop,
}

impl FamilyKind {
    pub fn label(&self) -> &'static str {
        match self {
            FamilyKind::EmptyTop => "EMPTY_TOP",
            FamilyKind::FullTop => "FULL_TOP",
        }
    }
}

/// One member of an extremal family.
#[derive(Clone, Debug)]
pub struct FamilyPoint {
    pub kind: FamilyKind,
    pub k: u32,
    pub h: u32,
    pub predicted_phi: u128,
    pub alpha: f64,
}

/// μ-expansion of `2^h` for any `h ≥ 1`, without materializing `2^h`.
pub fn mu_expand_pow2(h: u32) -> Result<(DigitList, u8)> {
    if h == 0 {
        return Err(Error::InvalidArgument(
            "mu_expand_pow2 requires h >= 1".into(),
        ));
    }
    if h <= 126 {
        let x = expansion::mu_expand(1u128 << h);
        return Ok((x.digits().clone(), x.remainder()));
    }

    // Symbolic prefix: value = 2^e + t. While e is large the greedy index
    // is e − 2 (μ_{e−1} = 3·2^{e−1} − 1 exceeds the value once 2^{e−1} >
    // t + 1), and subtracting μ_{e−2} leaves 2^{e−2} + (t + 1).
    let mut e = h;
    let mut t: u128 = 0;
    let mut high_indices = Vec::new();
    while e > 126 {
        high_indices.push(e - 2);
        e -= 2;
        t += 1;
    }
    debug_assert!(t + 1 < 1u128 << (e - 1));

    let tail = expansion::mu_expand((1u128 << e) + t);
    let tail_digits = tail.digits().digits();
    // Greedy continues strictly below every symbolic index.
    debug_assert!(tail_digits.len() < *high_indices.last().unwrap() as usize);

    let mut digits = vec![0u8; h as usize - 2];
    for &idx in &high_indices {
        digits[idx as usize - 1] = 1;
    }
    digits[..tail_digits.len()].copy_from_slice(tail_digits);
    while digits.last() == Some(&0) {
        digits.pop();
    }
    Ok((DigitList::from_digits(digits)?, tail.remainder()))
}

/// μ-digit sum `φ(2^h)`.
pub fn phi_pow2(h: u32) -> Result<u128> {
    let (digits, _) = mu_expand_pow2(h)?;
    Ok(expansion::sigma(&digits))
}

/// `j* = min{j : j ≥ 2^{h−2j−1} − 1}` by ascending scan (the predicate is
/// monotone in j).
pub fn j_star(h: u32) -> u128 {
    let mut j: u128 = 0;
    loop {
        if j_star_predicate(h, j) {
            return j;
        }
        j += 1;
    }
}

/// The defining predicate `j ≥ 2^{h−2j−1} − 1`, exact for any exponent.
pub fn j_star_predicate(h: u32, j: u128) -> bool {
    let e = h as i64 - 2 * j as i64 - 1;
    if e <= 0 {
        // 2^e ≤ 1, so the right side is at most 0.
        return true;
    }
    if e >= 128 {
        return false;
    }
    j >= (1u128 << e) - 1
}

/// The unique positive root of `h − 2x − 1 − log₂(x + 1) = 0`, by
/// bisection on `[0, h/2]` to absolute tolerance 1e−9. The left side is
/// strictly decreasing in x.
pub fn x_star(h: u32) -> f64 {
    let g = |x: f64| h as f64 - 2.0 * x - 1.0 - (x + 1.0).log2();
    let mut lo = 0.0f64;
    let mut hi = h as f64 / 2.0;
    debug_assert!(g(lo) > 0.0 && g(hi) < 0.0);
    while hi - lo > 1e-9 {
        let mid = (lo + hi) / 2.0;
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = (lo + hi) / 2.0;
    // Exact integer roots exist (e.g. h = 9 has x* = 3); snap to them so the
    // bracketing interval does not land an ulp past the true root.
    let snapped = x.round();
    if (snapped - x).abs() <= 1e-9 && g(snapped) == 0.0 {
        return snapped;
    }
    x
}

/// `α(h) = (2·φ(2^h) − (h + 2)) / log₂(h + 2)`, exact integer numerator,
/// floating-point division only at the end.
pub fn alpha(h: u32) -> Result<f64> {
    if h < 2 {
        return Err(Error::InvalidArgument("alpha requires h >= 2".into()));
    }
    let phi = phi_pow2(h)?;
    let numerator = 2 * phi as i128 - (h as i128 + 2);
    Ok(numerator as f64 / ((h as f64 + 2.0).log2()))
}

/// Builds one verified table row: recovers `k(h)` and `φ(2^h)` from the
/// μ-expansion of `2^h` and checks `3k + 2φ + r = 2^h` in exact arbitrary
/// precision. An identity failure aborts.
pub fn expansion_row(h: u32) -> Result<AsymptoticRow> {
    if h < 2 {
        return Err(Error::InvalidArgument(
            "expansion_row requires h >= 2".into(),
        ));
    }
    let (digits, remainder) = mu_expand_pow2(h)?;
    let phi = expansion::sigma(&digits);

    let mut k = BigUint::ZERO;
    for (idx, &d) in digits.digits().iter().enumerate() {
        if d != 0 {
            let mersenne = (BigUint::from(1u8) << (idx + 1)) - 1u8;
            k += mersenne * d;
        }
    }

    let reconstructed = 3u8 * &k + 2 * phi + u128::from(remainder);
    let two_h = BigUint::from(1u8) << h;
    if reconstructed != two_h {
        return Err(Error::Inconsistency(format!(
            "3k + 2phi + r = {reconstructed} differs from 2^{h}"
        )));
    }

    let a = alpha(h)?;
    Ok(AsymptoticRow {
        h,
        k,
        phi,
        remainder,
        alpha: a,
        residual_exact: true,
        exception: a.abs() > 1.0,
    })
}

/// Verified rows for `h = 2..=h_max`.
pub fn table(h_max: u32) -> Result<Vec<AsymptoticRow>> {
    if !(2..=MAX_TABLE_HEIGHT).contains(&h_max) {
        return Err(Error::InvalidArgument(format!(
            "table range is 2..={MAX_TABLE_HEIGHT}; got {h_max}"
        )));
    }
    (2..=h_max).map(expansion_row).collect()
}

/// Heights in `[h_min, h_max]` where `|α(h)| > 1`.
pub fn exception_list(h_min: u32, h_max: u32) -> Result<Vec<u32>> {
    if h_min < 2 || h_max > MAX_TABLE_HEIGHT || h_min > h_max {
        return Err(Error::InvalidArgument(format!(
            "exception scan range [{h_min}, {h_max}] invalid"
        )));
    }
    let mut out = Vec::new();
    for h in h_min..=h_max {
        if alpha(h)?.abs() > 1.0 {
            out.push(h);
        }
    }
    Ok(out)
}

/// Builds a family member: derives `h` from `k`, computes `φ(2^h)`, and
/// checks it against the family's closed form. A mismatch aborts.
pub fn family(kind: FamilyKind, k: u32) -> Result<FamilyPoint> {
    if k == 0 {
        return Err(Error::InvalidArgument("family index starts at 1".into()));
    }
    let h = match kind {
        FamilyKind::EmptyTop => 2u64.pow(k + 1) + k as u64 - 1,
        FamilyKind::FullTop => 2u64.pow(k + 2) - k as u64,
    };
    if h > MAX_TABLE_HEIGHT as u64 {
        return Err(Error::InvalidArgument(format!(
            "{} member k={k} has height {h} above {MAX_TABLE_HEIGHT}",
            kind.label()
        )));
    }
    let h = h as u32;
    let predicted_phi: u128 = match kind {
        FamilyKind::EmptyTop => 1u128 << k,
        FamilyKind::FullTop => 1u128 << (k + 1),
    };
    let actual = phi_pow2(h)?;
    if actual != predicted_phi {
        return Err(Error::Inconsistency(format!(
            "{} k={k}: phi(2^{h}) = {actual}, closed form predicts {predicted_phi}",
            kind.label()
        )));
    }
    Ok(FamilyPoint {
        kind,
        k,
        h,
        predicted_phi,
        alpha: alpha(h)?,
    })
}
