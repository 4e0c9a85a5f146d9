//! Optimal pebbling numbers of complete binary trees.
//!
//! With `k(h) = max{k : s_k ≤ 2^h}`, the optimal pebbling number is
//! `π*(T^h) = 2^h − k(h)`, attained by the explicit configuration
//! `f_{h,k} = join[{2^h − s_k}, 2·pad_h(⟨k⟩_M)]` at `k = k(h)`.
//!
//! * [`optimize`] bundles `k(h)`, `π*`, and the optimal configuration,
//!   checking pebblability (for `h ≤ 40`) and the lower-bound certificate.
//! * [`certificate`] reproduces the lower-bound argument: with
//!   `m = 2^h − k(h)`, the weight maximum `t_{m−1}` must fall strictly
//!   below `2^{h+1}`, with a case-specific closed-form slack read off the
//!   μ-expansion of `2^h`.
//! * [`brute_force_pi_star`] is the independent oracle: exhaustive search
//!   over all configurations (`h ≤ 3`) or all even symmetric ones
//!   (`h ≤ 9`) for the minimum pebble count that pebbles the tree.
//!
//! `k(h)` is computed through the μ-expansion of `2^h`, never by streaming
//! the partial sums, so [`optimize`] is O(h) and reaches `h = 100`.

use crate::error::{Error, Result};
use crate::expansion;
use crate::pebbling::{ExplicitConfig, SymmetricConfig};
use crate::seq;

/// Largest height accepted by the closed-form routines (`2^h` and the
/// certificate threshold `2^{h+1}` must stay inside u128 with headroom).
pub const MAX_HEIGHT: u32 = 100;

/// Largest height [`enumerate_family`] will materialize
/// (`|F_h| = k(h) + 1 ≈ 2^h/3` configurations).
pub const MAX_FAMILY_HEIGHT: u32 = 20;

/// `k(h)`, `π*(T^h)`, and the optimal configuration `f_{h,k(h)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptimalResult {
    pub h: u32,
    pub k: u128,
    pub pi_star: u128,
    pub config: SymmetricConfig,
}

/// Which case of the lower-bound analysis applies, from the μ-expansion of
/// `2^h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateCase {
    /// Remainder 0, no digit 2: `t` attains `2^{h+1}` exactly at
    /// `m = 2^h − k(h)`.
    NoTwoRZero,
    /// Remainder 0 with a digit 2 at position `two_index`: slack is
    /// `2·(two_index + 1)`.
    HasTwoRZero { two_index: u32 },
    /// Remainder in `{1,…,4}`: slack is exactly 2.
    RPositive { remainder: u8 },
}

impl CertificateCase {
    pub fn label(&self) -> &'static str {
        match self {
            CertificateCase::NoTwoRZero => "NO_TWO_R_ZERO",
            CertificateCase::HasTwoRZero { .. } => "HAS_TWO_R_ZERO",
            CertificateCase::RPositive { .. } => "R_POSITIVE",
        }
    }
}

/// Lower-bound evidence for one height: `t_{2^h − k(h) − 1} < 2^{h+1}`,
/// with the case-specific slack verified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub h: u32,
    pub case: CertificateCase,
    /// `t(2^h − k(h) − 1)`.
    pub t_value: u128,
    /// `2^{h+1}`.
    pub threshold: u128,
    /// `threshold − t_value`, at least 1.
    pub slack: u128,
}

fn check_height(h: u32, max: u32) -> Result<()> {
    if h > max {
        return Err(Error::InvalidArgument(format!(
            "height {h} above supported maximum {max}"
        )));
    }
    Ok(())
}

/// `k(h) = s_inverse(2^h)`, via the μ-expansion of `2^h`. Accepts
/// `0 ≤ h ≤ 100` (height 0 is the single-vertex tree).
pub fn k_of_h(h: u32) -> Result<u128> {
    check_height(h, MAX_HEIGHT)?;
    Ok(seq::s_inverse(1u128 << h))
}

/// `π*(T^h) = 2^h − k(h)`.
pub fn pi_star(h: u32) -> Result<u128> {
    Ok((1u128 << h) - k_of_h(h)?)
}

/// The configuration `f_{h,k}`: head `2^h − s_k` followed by the doubled,
/// zero-padded M-digits of `k`. Requires `s_k ≤ 2^h`; the digit list then
/// fits in the `h` non-root slots.
pub fn build_config(h: u32, k: u128) -> Result<SymmetricConfig> {
    check_height(h, MAX_HEIGHT)?;
    let budget = 1u128 << h;
    let s_k = seq::s(k)?;
    if s_k > budget {
        return Err(Error::InvalidArgument(format!(
            "s({k}) = {s_k} exceeds 2^{h}; f_{{{h},{k}}} is undefined"
        )));
    }
    let digits = expansion::m_expand(k);
    if digits.len() > h as usize {
        return Err(Error::Inconsistency(format!(
            "digit list of k={k} does not fit height {h}"
        )));
    }
    let mut levels = Vec::with_capacity(h as usize + 1);
    levels.push(budget - s_k);
    for i in 0..h as usize {
        let digit = digits.digits().get(i).copied().unwrap_or(0);
        levels.push(2 * digit as u128);
    }
    SymmetricConfig::new(levels)
}

/// The family `F_h = {f_{h,k} : s_k ≤ 2^h}` in order of `k`.
pub fn enumerate_family(h: u32) -> Result<Vec<SymmetricConfig>> {
    if h == 0 {
        return Err(Error::InvalidArgument(
            "family enumeration starts at height 1".into(),
        ));
    }
    check_height(h, MAX_FAMILY_HEIGHT)?;
    let top = k_of_h(h)?;
    (0..=top).map(|k| build_config(h, k)).collect()
}

/// Builds and verifies the lower-bound certificate for `2 ≤ h ≤ 100`.
///
/// Any failure of the strict inequality or of the case-specific closed
/// form is a [`Error::CertificateViolation`], not a boolean.
pub fn certificate(h: u32) -> Result<Certificate> {
    if h < 2 {
        return Err(Error::InvalidArgument(
            "certificate requires h >= 2".into(),
        ));
    }
    check_height(h, MAX_HEIGHT)?;

    let two_h = 1u128 << h;
    let expansion = expansion::mu_expand(two_h);
    let remainder = expansion.remainder();
    let digits = expansion.digits().digits();
    let k = seq::s_inverse(two_h);
    let m = two_h - k;
    let t_value = seq::t(m - 1)?;
    let threshold = 1u128 << (h + 1);

    let violation = |detail: String| Error::CertificateViolation { h, detail };

    if t_value >= threshold {
        return Err(violation(format!(
            "t({}) = {t_value} is not below 2^{} = {threshold}",
            m - 1,
            h + 1
        )));
    }
    let slack = threshold - t_value;

    let case = if remainder > 0 {
        if digits.contains(&2) {
            return Err(violation(
                "positive remainder together with a digit 2".into(),
            ));
        }
        if slack != 2 {
            return Err(violation(format!(
                "remainder case expects slack 2, found {slack}"
            )));
        }
        CertificateCase::RPositive { remainder }
    } else if let Some(pos) = digits.iter().position(|&d| d == 2) {
        let two_index = pos as u32 + 1;
        let expected = 2 * (two_index as u128 + 1);
        if slack != expected {
            return Err(violation(format!(
                "digit-2 case at index {two_index} expects slack {expected}, found {slack}"
            )));
        }
        CertificateCase::HasTwoRZero { two_index }
    } else {
        let attained = seq::t(m)?;
        if attained != threshold {
            return Err(violation(format!(
                "plain case expects t({m}) = {threshold}, found {attained}"
            )));
        }
        CertificateCase::NoTwoRZero
    };

    Ok(Certificate {
        h,
        case,
        t_value,
        threshold,
        slack,
    })
}

/// Computes `k(h)`, `π*(T^h)`, and `f_{h,k(h)}`; checks pebblability of the
/// configuration for `h ≤ 40` and the certificate for `h ≥ 2`.
pub fn optimize(h: u32) -> Result<OptimalResult> {
    check_height(h, MAX_HEIGHT)?;
    let k = k_of_h(h)?;
    let pi = (1u128 << h) - k;
    let config = build_config(h, k)?;
    if config.pebble_count()? != pi {
        return Err(Error::Inconsistency(format!(
            "f_{{{h},{k}}} holds {} pebbles, expected {pi}",
            config.pebble_count()?
        )));
    }
    if h <= 40 && !config.pebbles() {
        return Err(Error::Inconsistency(format!(
            "f_{{{h},{k}}} fails to pebble the height-{h} tree"
        )));
    }
    if h >= 2 {
        certificate(h)?;
    }
    Ok(OptimalResult {
        h,
        k,
        pi_star: pi,
        config,
    })
}

/// Exhaustive minimum pebble count that pebbles `T^h`.
///
/// For `h ≤ 3` the search runs over all configurations on the explicit
/// tree; for `4 ≤ h ≤ 9` it is restricted to even symmetric ones. `budget`
/// bounds the number of configurations tested.
pub fn brute_force_pi_star(h: u32, budget: u64) -> Result<u128> {
    let mut remaining = budget;
    brute_force_pi_star_with_counter(h, &mut remaining)
}

/// Same as [`brute_force_pi_star`], drawing from a shared budget counter.
pub fn brute_force_pi_star_with_counter(h: u32, remaining: &mut u64) -> Result<u128> {
    match h {
        1..=3 => brute_unrestricted(h, remaining),
        4..=9 => brute_even_symmetric(h, remaining),
        _ => Err(Error::InvalidArgument(format!(
            "brute force supports 1 <= h <= 9; got {h}"
        ))),
    }
}

fn spend(remaining: &mut u64) -> Result<()> {
    if *remaining == 0 {
        return Err(Error::BudgetExceeded(
            "configuration budget exhausted".into(),
        ));
    }
    *remaining -= 1;
    Ok(())
}

/// All distributions of `pebbles` over vertices `at..=vcount`, writing into
/// `config`; calls `test` for each completed distribution and stops early
/// when it returns `Ok(true)`.
fn distribute(
    config: &mut ExplicitConfig,
    at: u32,
    pebbles: u128,
    test: &mut impl FnMut(&ExplicitConfig) -> Result<bool>,
) -> Result<bool> {
    let vcount = config.vertex_count();
    if at == vcount {
        config.set_count(at, pebbles)?;
        let hit = test(config)?;
        config.set_count(at, 0)?;
        return Ok(hit);
    }
    for here in (0..=pebbles).rev() {
        config.set_count(at, here)?;
        if distribute(config, at + 1, pebbles - here, test)? {
            config.set_count(at, 0)?;
            return Ok(true);
        }
    }
    config.set_count(at, 0)?;
    Ok(false)
}

fn brute_unrestricted(h: u32, remaining: &mut u64) -> Result<u128> {
    let mut config = ExplicitConfig::new(h)?;
    for p in 1..=(1u128 << h) {
        let mut test = |c: &ExplicitConfig| -> Result<bool> {
            spend(remaining)?;
            c.pebbles()
        };
        if distribute(&mut config, 1, p, &mut test)? {
            return Ok(p);
        }
    }
    Err(Error::Inconsistency(format!(
        "no configuration with up to 2^{h} pebbles pebbles the tree"
    )))
}

/// All even symmetric configurations with exactly `pebbles` pebbles:
/// choose doubled counts for levels `h` down to 1, then the head absorbs
/// the rest. Stops early when `test` returns `Ok(true)`.
fn each_even_symmetric(
    levels: &mut Vec<u128>,
    level: usize,
    pebbles_left: u128,
    test: &mut impl FnMut(&[u128]) -> Result<bool>,
) -> Result<bool> {
    if level == 0 {
        levels[0] = pebbles_left;
        return test(levels);
    }
    let weight = 1u128 << (level + 1); // each increment of g adds 2 pebbles per vertex
    let max_g = pebbles_left / weight;
    for g in 0..=max_g {
        levels[level] = 2 * g;
        if each_even_symmetric(levels, level - 1, pebbles_left - g * weight, test)? {
            return Ok(true);
        }
    }
    levels[level] = 0;
    Ok(false)
}

fn brute_even_symmetric(h: u32, remaining: &mut u64) -> Result<u128> {
    for p in 1..=(1u128 << h) {
        let mut levels = vec![0u128; h as usize + 1];
        let mut test = |levels: &[u128]| -> Result<bool> {
            spend(remaining)?;
            Ok(SymmetricConfig::new(levels.to_vec())?.pebbles())
        };
        if each_even_symmetric(&mut levels, h as usize, p, &mut test)? {
            return Ok(p);
        }
    }
    Err(Error::Inconsistency(format!(
        "no even symmetric configuration with up to 2^{h} pebbles pebbles the tree"
    )))
}
