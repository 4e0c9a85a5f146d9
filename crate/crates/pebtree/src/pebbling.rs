//! Pebbling configurations on complete binary trees.
//!
//! A pebbling move removes two pebbles from a vertex and places one on a
//! neighbor. A configuration pebbles the tree when every vertex can receive
//! a pebble by some move sequence.
//!
//! Two representations:
//!
//! * [`SymmetricConfig`] stores one pebble count per level (every vertex of
//!   a level holds the same count). Pebblability is decided by a re-rooted
//!   tree DP in O(h²) for all targets: a subtree delivers `⌊available/2⌋`
//!   across its bridge edge, and level symmetry collapses all subtrees
//!   rooted at the same level.
//! * [`ExplicitConfig`] materializes a small tree in heap order (root = 1,
//!   children of `v` are `2v` and `2v+1`) and carries the same greedy DP
//!   plus an exhaustive breadth-first search over entire move sequences
//!   ([`ExplicitConfig::oracle_deliver`]), the ground truth the DP is
//!   validated against in the test suite.
//!
//! The liquid relaxation treats pebbles as infinitely divisible: a unit at
//! distance `d` from a target leaf delivers `1/2^d`. For a symmetric
//! configuration the total equals `(3·n(f) − c(f)) / 2^{h+1}`, giving the
//! necessary condition `3·n(f) − c(f) ≥ 2^{h+1}` reported by
//! [`SymmetricConfig::liquid`]. [`psi`] builds the even symmetric
//! configuration maximizing `3·n(f) − c(f)` for a given pebble count.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest height an [`ExplicitConfig`] will materialize (≈ 2M vertices).
pub const MAX_EXPLICIT_HEIGHT: u32 = 20;

/// Serialized form of a symmetric configuration:
/// `{"height": h, "levels": [f_0, ..., f_h]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigDoc {
    height: u32,
    levels: Vec<u128>,
}

/// Per-level pebble counts `{f_0, …, f_h}` on the complete binary tree of
/// height `h`; every vertex at level `i` holds `f_i` pebbles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricConfig {
    levels: Vec<u128>,
}

impl SymmetricConfig {
    /// Builds a configuration from per-level counts (`levels[i]` = count at
    /// level `i`; length is `h + 1`). The total pebble count must fit u128.
    pub fn new(levels: Vec<u128>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidArgument(
                "a configuration needs at least the root level".into(),
            ));
        }
        if levels.len() > 127 {
            return Err(Error::Overflow("configuration height above 126"));
        }
        let cfg = SymmetricConfig { levels };
        cfg.pebble_count()?;
        Ok(cfg)
    }

    pub fn height(&self) -> u32 {
        (self.levels.len() - 1) as u32
    }

    pub fn levels(&self) -> &[u128] {
        &self.levels
    }

    /// The head `f_0`.
    pub fn head(&self) -> u128 {
        self.levels[0]
    }

    /// True when every non-root count is even.
    pub fn is_even(&self) -> bool {
        self.levels[1..].iter().all(|f| f % 2 == 0)
    }

    /// Total pebbles `n(f) = Σ 2^i·f_i`.
    pub fn pebble_count(&self) -> Result<u128> {
        let mut total: u128 = 0;
        for (i, &f) in self.levels.iter().enumerate() {
            let term = f
                .checked_mul(1u128 << i)
                .ok_or(Error::Overflow("pebble count term"))?;
            total = total
                .checked_add(term)
                .ok_or(Error::Overflow("pebble count sum"))?;
        }
        Ok(total)
    }

    /// Column sum `c(f) = Σ f_i`: the largest number of pebbles an even
    /// configuration can amass at the root.
    pub fn column_sum(&self) -> u128 {
        // Bounded by pebble_count, which new() validated.
        self.levels.iter().sum()
    }

    /// The left-shift `{f_1, …, f_h}`: the configuration induced on either
    /// subtree of the root.
    pub fn shift(&self) -> Result<SymmetricConfig> {
        if self.height() == 0 {
            return Err(Error::InvalidArgument(
                "cannot shift a height-0 configuration".into(),
            ));
        }
        Ok(SymmetricConfig {
            levels: self.levels[1..].to_vec(),
        })
    }

    /// The configuration reduction: transport the maximum number of pebbles
    /// from the root and the right subtree onto the left subtree's root,
    /// giving `{f_0', f_2, …, f_h}` with
    /// `f_0' = f_1 + ⌊(f_0 + c(S(f))/2) / 2⌋`.
    ///
    /// Requires an even configuration so `c(S(f))/2` is exact; odd non-root
    /// counts are a hard error.
    pub fn reduce(&self) -> Result<SymmetricConfig> {
        if self.height() == 0 {
            return Err(Error::InvalidArgument(
                "cannot reduce a height-0 configuration".into(),
            ));
        }
        if !self.is_even() {
            return Err(Error::InvalidArgument(
                "reduction requires even non-root counts".into(),
            ));
        }
        let shifted_sum: u128 = self.levels[1..].iter().sum();
        let head = self.levels[1] + (self.levels[0] + shifted_sum / 2) / 2;
        let mut levels = Vec::with_capacity(self.levels.len() - 1);
        levels.push(head);
        levels.extend_from_slice(&self.levels[2..]);
        SymmetricConfig::new(levels)
    }

    /// `avail[i]`: pebbles collectible at the root of any height `h − i`
    /// subtree using only that subtree.
    fn avail_by_level(&self) -> Vec<u128> {
        let h = self.levels.len() - 1;
        let mut avail = vec![0u128; h + 1];
        avail[h] = self.levels[h];
        for i in (0..h).rev() {
            avail[i] = self.levels[i] + 2 * (avail[i + 1] / 2);
        }
        avail
    }

    fn deliver_with_avail(&self, avail: &[u128], target_level: usize) -> u128 {
        let h = self.levels.len() - 1;
        if target_level == 0 {
            return avail[0];
        }
        // Walk the spine from the root to the target's parent. `up` is the
        // maximum collectible at spine vertex i from everything outside the
        // subtree of spine vertex i+1.
        let mut up = self.levels[0] + avail[1] / 2;
        for i in 1..target_level {
            up = self.levels[i] + avail[i + 1] / 2 + up / 2;
        }
        let below = if target_level < h {
            2 * (avail[target_level + 1] / 2)
        } else {
            0
        };
        self.levels[target_level] + below + up / 2
    }

    /// Maximum pebbles any move sequence can place on one fixed vertex at
    /// `target_level`. Validated against the exhaustive move-sequence
    /// oracle in the test suite.
    pub fn max_deliver(&self, target_level: u32) -> Result<u128> {
        if target_level > self.height() {
            return Err(Error::InvalidArgument(format!(
                "target level {target_level} above height {}",
                self.height()
            )));
        }
        Ok(self.deliver_with_avail(&self.avail_by_level(), target_level as usize))
    }

    /// True when the configuration pebbles the tree: every level can
    /// receive a pebble (one representative vertex per level suffices by
    /// symmetry). Deepest levels are checked first since they fail first.
    pub fn pebbles(&self) -> bool {
        let avail = self.avail_by_level();
        (0..self.levels.len())
            .rev()
            .all(|t| self.deliver_with_avail(&avail, t) >= 1)
    }

    /// Evaluates the liquid necessary condition `3·n(f) − c(f) ≥ 2^{h+1}`.
    pub fn liquid(&self) -> Result<LiquidReport> {
        let pebbles = self.pebble_count()?;
        let column_sum = self.column_sum();
        let weight = pebbles
            .checked_mul(3)
            .ok_or(Error::Overflow("liquid weight"))?
            - column_sum;
        let shift = self.height() + 1;
        if shift > 127 {
            return Err(Error::Overflow("liquid threshold"));
        }
        let threshold = 1u128 << shift;
        Ok(LiquidReport {
            pebbles,
            column_sum,
            weight,
            threshold,
            satisfied: weight >= threshold,
        })
    }

    /// Materializes the configuration on an explicit tree (heights up to
    /// [`MAX_EXPLICIT_HEIGHT`]).
    pub fn materialize(&self) -> Result<ExplicitConfig> {
        let mut explicit = ExplicitConfig::new(self.height())?;
        for v in 1..=explicit.vertex_count() {
            let level = ExplicitConfig::level_of(v);
            explicit.set_count(v, self.levels[level as usize])?;
        }
        Ok(explicit)
    }

    /// Parses the JSON document `{"height": h, "levels": [...]}`.
    /// Unknown fields are rejected and the length must be `h + 1`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ConfigDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.levels.len() != doc.height as usize + 1 {
            return Err(Error::Parse(format!(
                "height {} needs {} levels, document has {}",
                doc.height,
                doc.height as usize + 1,
                doc.levels.len()
            )));
        }
        SymmetricConfig::new(doc.levels)
    }

    /// Renders the JSON document form.
    pub fn to_json(&self) -> String {
        let doc = ConfigDoc {
            height: self.height(),
            levels: self.levels.clone(),
        };
        serde_json::to_string(&doc).expect("config document serializes")
    }
}

impl fmt::Display for SymmetricConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.levels.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Result of the liquid (fractional) necessary condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiquidReport {
    /// Total pebbles `n(f)`.
    pub pebbles: u128,
    /// Column sum `c(f)`.
    pub column_sum: u128,
    /// `3·n(f) − c(f)`.
    pub weight: u128,
    /// `2^{h+1}`.
    pub threshold: u128,
    /// `weight ≥ threshold`.
    pub satisfied: bool,
}

/// The even symmetric configuration with `m` pebbles maximizing
/// `3·n(f) − c(f)`: from the binary digits `m = Σ δ_i·2^i`, the levels are
/// `{δ_0 + 2δ_1, 2δ_2, …, 2δ_{h+1}}`. Requires `1 ≤ m < 2^{h+2}`.
pub fn psi(h: u32, m: u128) -> Result<SymmetricConfig> {
    if m == 0 {
        return Err(Error::InvalidArgument("psi requires m >= 1".into()));
    }
    if h > 126 {
        return Err(Error::Overflow("psi height above 126"));
    }
    // h = 126 admits every u128 (2^{h+2} tops the type).
    let in_range = h + 2 >= 128 || m < (1u128 << (h + 2));
    if !in_range {
        return Err(Error::InvalidArgument(format!(
            "psi requires m < 2^(h+2); got m={m}, h={h}"
        )));
    }
    let bit = |i: u32| (m >> i) & 1;
    let mut levels = Vec::with_capacity(h as usize + 1);
    levels.push(bit(0) + 2 * bit(1));
    for i in 1..=h {
        levels.push(2 * bit(i + 1));
    }
    SymmetricConfig::new(levels)
}

/// Exact dyadic rational `num / 2^log2_den`, normalized so the numerator is
/// odd (or zero with denominator 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: u128,
    log2_den: u32,
}

impl Dyadic {
    pub fn new(num: u128, log2_den: u32) -> Dyadic {
        let mut d = Dyadic { num, log2_den };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.num == 0 {
            self.log2_den = 0;
            return;
        }
        while self.log2_den > 0 && self.num.is_multiple_of(2) {
            self.num /= 2;
            self.log2_den -= 1;
        }
    }

    pub fn numerator(&self) -> u128 {
        self.num
    }

    pub fn log2_denominator(&self) -> u32 {
        self.log2_den
    }

    pub fn is_at_least_one(&self) -> bool {
        self.log2_den < 128 && self.num >= (1u128 << self.log2_den)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.log2_den == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.log2_den)
        }
    }
}

/// Per-vertex pebble counts on an explicitly materialized tree, heap order:
/// root = 1, children of `v` are `2v` and `2v+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitConfig {
    height: u32,
    counts: Vec<u128>, // slot 0 unused
}

impl ExplicitConfig {
    /// An all-zero configuration on the tree of the given height.
    pub fn new(height: u32) -> Result<Self> {
        if height > MAX_EXPLICIT_HEIGHT {
            return Err(Error::InvalidArgument(format!(
                "explicit trees capped at height {MAX_EXPLICIT_HEIGHT}; got {height}"
            )));
        }
        let size = (1usize << (height + 1)) - 1;
        Ok(ExplicitConfig {
            height,
            counts: vec![0; size + 1],
        })
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Number of vertices, `2^{h+1} − 1`.
    pub fn vertex_count(&self) -> u32 {
        (1u32 << (self.height + 1)) - 1
    }

    /// Level of vertex `v` (root = level 0).
    pub fn level_of(v: u32) -> u32 {
        debug_assert!(v >= 1);
        31 - v.leading_zeros()
    }

    fn check_vertex(&self, v: u32) -> Result<()> {
        if v == 0 || v > self.vertex_count() {
            return Err(Error::InvalidArgument(format!(
                "vertex id {v} out of range 1..={}",
                self.vertex_count()
            )));
        }
        Ok(())
    }

    pub fn count(&self, v: u32) -> u128 {
        self.counts[v as usize]
    }

    pub fn set_count(&mut self, v: u32, pebbles: u128) -> Result<()> {
        self.check_vertex(v)?;
        self.counts[v as usize] = pebbles;
        Ok(())
    }

    /// Total pebbles on the tree.
    pub fn total(&self) -> Result<u128> {
        let mut sum: u128 = 0;
        for &c in &self.counts[1..] {
            sum = sum.checked_add(c).ok_or(Error::Overflow("explicit total"))?;
        }
        Ok(sum)
    }

    fn neighbors(&self, v: u32) -> impl Iterator<Item = u32> {
        let max = self.vertex_count();
        let parent = if v > 1 { Some(v / 2) } else { None };
        let left = if 2 * v <= max { Some(2 * v) } else { None };
        let right = if 2 * v < max { Some(2 * v + 1) } else { None };
        parent.into_iter().chain(left).chain(right)
    }

    /// Pebbles collectible at `v` from its side of the edge toward `from`
    /// (`from = 0` means no exclusion).
    fn gather(&self, v: u32, from: u32) -> u128 {
        let mut acc = self.counts[v as usize];
        for u in self.neighbors(v) {
            if u != from {
                acc += self.gather(u, v) / 2;
            }
        }
        acc
    }

    /// Greedy DP: maximum pebbles any move sequence can place on `target`.
    /// Same collect-toward-the-target scheme as
    /// [`SymmetricConfig::max_deliver`], validated against
    /// [`ExplicitConfig::oracle_deliver`].
    pub fn deliver(&self, target: u32) -> Result<u128> {
        self.check_vertex(target)?;
        self.total()?; // validates that partial sums cannot overflow
        Ok(self.gather(target, 0))
    }

    /// True when every vertex can receive a pebble (deepest vertices are
    /// tried first).
    pub fn pebbles(&self) -> Result<bool> {
        self.total()?;
        for v in (1..=self.vertex_count()).rev() {
            if self.gather(v, 0) == 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exhaustive breadth-first search over all pebbling-move sequences:
    /// the maximum pebbles placeable on `target` over every reachable
    /// state. Ground truth for the greedy DP.
    ///
    /// Guarded: requires `h ≤ 3` or at most 8 pebbles, and gives up with a
    /// budget error after visiting `max_states` distinct states.
    pub fn oracle_deliver(&self, target: u32, max_states: u64) -> Result<u128> {
        self.check_vertex(target)?;
        let total = self.total()?;
        if self.height > 3 && total > 8 {
            return Err(Error::BudgetExceeded(format!(
                "exhaustive oracle limited to height <= 3 or <= 8 pebbles \
                 (height {}, {} pebbles)",
                self.height, total
            )));
        }

        // Dense states pack into a u128 when counts fit one byte each.
        let vcount = self.vertex_count() as usize;
        let packed = vcount <= 16 && total <= 0xFF;
        let key_of = |counts: &[u128]| -> StateKey {
            if packed {
                let mut key: u128 = 0;
                for &c in &counts[1..] {
                    key = (key << 8) | c;
                }
                StateKey::Packed(key)
            } else {
                StateKey::Sparse(
                    counts[1..]
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c > 0)
                        .map(|(i, &c)| (i as u32 + 1, c))
                        .collect(),
                )
            }
        };

        let start = self.counts.clone();
        let mut best = start[target as usize];
        let mut seen = HashSet::new();
        seen.insert(key_of(&start));
        let mut queue = VecDeque::new();
        queue.push_back(start);

        while let Some(state) = queue.pop_front() {
            for v in 1..=vcount as u32 {
                if state[v as usize] < 2 {
                    continue;
                }
                for u in self.neighbors(v) {
                    let mut next = state.clone();
                    next[v as usize] -= 2;
                    next[u as usize] += 1;
                    if seen.insert(key_of(&next)) {
                        if seen.len() as u64 > max_states {
                            return Err(Error::BudgetExceeded(format!(
                                "exhaustive oracle visited more than {max_states} states"
                            )));
                        }
                        best = best.max(next[target as usize]);
                        queue.push_back(next);
                    }
                }
            }
        }
        Ok(best)
    }

    /// Liquid delivery `Σ_v f(v) / 2^{dist(v, leaf)}` to a leaf, as an
    /// exact dyadic rational. For a materialized symmetric configuration
    /// this equals `(3·n(f) − c(f)) / 2^{h+1}`.
    pub fn fractional_deliver(&self, leaf: u32) -> Result<Dyadic> {
        self.check_vertex(leaf)?;
        if Self::level_of(leaf) != self.height {
            return Err(Error::InvalidArgument(format!(
                "vertex {leaf} is not a leaf of the height-{} tree",
                self.height
            )));
        }
        let scale = 2 * self.height; // largest possible distance
        let mut num: u128 = 0;
        for v in 1..=self.vertex_count() {
            let c = self.counts[v as usize];
            if c == 0 {
                continue;
            }
            let dist = tree_distance(v, leaf);
            let term = c
                .checked_mul(1u128 << (scale - dist))
                .ok_or(Error::Overflow("fractional term"))?;
            num = num
                .checked_add(term)
                .ok_or(Error::Overflow("fractional sum"))?;
        }
        Ok(Dyadic::new(num, scale))
    }
}

/// Edge distance between two vertices in heap order.
fn tree_distance(mut a: u32, mut b: u32) -> u32 {
    let mut dist = 0;
    let (mut da, mut db) = (ExplicitConfig::level_of(a), ExplicitConfig::level_of(b));
    while da > db {
        a /= 2;
        da -= 1;
        dist += 1;
    }
    while db > da {
        b /= 2;
        db -= 1;
        dist += 1;
    }
    while a != b {
        a /= 2;
        b /= 2;
        dist += 2;
    }
    dist
}

#[derive(Hash, PartialEq, Eq)]
enum StateKey {
    Packed(u128),
    Sparse(Vec<(u32, u128)>),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq;

    fn cfg(levels: &[u128]) -> SymmetricConfig {
        SymmetricConfig::new(levels.to_vec()).unwrap()
    }

    #[test]
    fn pebble_count_examples() {
        assert_eq!(cfg(&[4, 2, 0, 2, 0, 0]).pebble_count().unwrap(), 24);
        assert_eq!(cfg(&[16, 0, 0, 0, 0]).pebble_count().unwrap(), 16);
        assert_eq!(cfg(&[0, 0, 0, 0]).pebble_count().unwrap(), 0);
    }

    #[test]
    fn column_sum_examples() {
        assert_eq!(cfg(&[4, 2, 0, 2, 0, 0]).column_sum(), 8);
        assert_eq!(cfg(&[16, 0, 0, 0, 0]).column_sum(), 16);
        assert_eq!(cfg(&[0, 2, 2, 0, 0]).column_sum(), 4);
    }

    #[test]
    fn shift_examples() {
        assert_eq!(
            cfg(&[4, 2, 0, 2, 0, 0]).shift().unwrap(),
            cfg(&[2, 0, 2, 0, 0])
        );
        assert_eq!(cfg(&[2, 0]).shift().unwrap(), cfg(&[0]));
        assert_eq!(cfg(&[0, 2, 2, 0, 0]).shift().unwrap(), cfg(&[2, 2, 0, 0]));
        assert!(cfg(&[1]).shift().is_err());
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(
            cfg(&[4, 2, 0, 2, 0, 0]).reduce().unwrap(),
            cfg(&[5, 0, 2, 0, 0])
        );
        assert_eq!(cfg(&[2, 0]).reduce().unwrap(), cfg(&[1]));
        assert_eq!(cfg(&[0, 2, 2, 0, 0]).reduce().unwrap(), cfg(&[3, 2, 0, 0]));
        assert!(cfg(&[2, 1, 0]).reduce().is_err());
    }

    #[test]
    fn max_deliver_examples() {
        assert_eq!(cfg(&[2, 0]).max_deliver(1).unwrap(), 1);
        assert_eq!(cfg(&[4, 2, 0, 2, 0, 0]).max_deliver(0).unwrap(), 8);
        assert_eq!(cfg(&[0, 2, 2, 0, 0]).max_deliver(4).unwrap(), 1);
        assert!(cfg(&[2, 0]).max_deliver(2).is_err());
    }

    #[test]
    fn max_deliver_at_root_is_column_sum_for_even() {
        for levels in [
            vec![4u128, 2, 0, 2, 0, 0],
            vec![0, 2, 2, 0, 0],
            vec![3, 2, 4, 0, 2],
        ] {
            let c = cfg(&levels);
            assert_eq!(c.max_deliver(0).unwrap(), c.column_sum());
        }
    }

    #[test]
    fn pebbles_examples() {
        assert!(cfg(&[2, 0]).pebbles());
        assert!(!cfg(&[1, 0]).pebbles());
        assert!(cfg(&[0, 2, 2, 0, 0]).pebbles());
        assert!(cfg(&[1]).pebbles());
        assert!(!cfg(&[0]).pebbles());
    }

    #[test]
    fn liquid_examples() {
        let r = cfg(&[4, 2, 0, 2, 0, 0]).liquid().unwrap();
        assert_eq!((r.weight, r.threshold, r.satisfied), (64, 64, true));

        let r = cfg(&[1, 0]).liquid().unwrap();
        assert_eq!((r.weight, r.threshold, r.satisfied), (2, 4, false));

        let r = cfg(&[16, 0, 0, 0, 0]).liquid().unwrap();
        assert_eq!((r.weight, r.threshold, r.satisfied), (32, 32, true));
    }

    #[test]
    fn liquid_satisfied_but_not_pebbling_witness() {
        // All-singleton configuration: no vertex can ever move a pebble.
        let c = cfg(&[1, 1, 1, 0]);
        assert!(c.liquid().unwrap().satisfied);
        assert!(!c.pebbles());
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(4, 12).unwrap(), cfg(&[0, 2, 2, 0, 0]));
        assert_eq!(psi(5, 1).unwrap(), cfg(&[1, 0, 0, 0, 0, 0]));
        assert_eq!(psi(5, 23).unwrap(), cfg(&[3, 2, 0, 2, 0, 0]));
        assert!(psi(4, 64).is_err());
        assert!(psi(4, 0).is_err());
        assert!(psi(127, 1).is_err());
        assert!(psi(126, u128::MAX).is_ok());
    }

    #[test]
    fn psi_pebble_count_and_weight() {
        for h in 1..=6u32 {
            let cap = 1u128 << (h + 2);
            for m in 1..cap.min(200) {
                let p = psi(h, m).unwrap();
                assert_eq!(p.pebble_count().unwrap(), m, "psi({h},{m}) count");
                let weight = 3 * m - p.column_sum();
                assert_eq!(weight, seq::t(m).unwrap(), "psi({h},{m}) weight");
            }
        }
    }

    #[test]
    fn oracle_deliver_examples() {
        let mut g = ExplicitConfig::new(1).unwrap();
        g.set_count(1, 2).unwrap();
        assert_eq!(g.oracle_deliver(2, 100_000).unwrap(), 1);

        let mut g = ExplicitConfig::new(2).unwrap();
        g.set_count(1, 4).unwrap();
        assert_eq!(g.oracle_deliver(7, 100_000).unwrap(), 1);

        let mut g = ExplicitConfig::new(1).unwrap();
        g.set_count(2, 1).unwrap();
        g.set_count(3, 1).unwrap();
        assert_eq!(g.oracle_deliver(1, 100_000).unwrap(), 0);
    }

    #[test]
    fn oracle_budget_guard() {
        let mut g = ExplicitConfig::new(2).unwrap();
        g.set_count(1, 6).unwrap();
        assert!(matches!(
            g.oracle_deliver(7, 3),
            Err(Error::BudgetExceeded(_))
        ));

        let mut g = ExplicitConfig::new(4).unwrap();
        g.set_count(1, 9).unwrap();
        assert!(matches!(
            g.oracle_deliver(1, 1_000_000),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn dp_matches_oracle_spot_checks() {
        // A lopsided configuration on T^2 where pebbles must merge en route.
        let mut g = ExplicitConfig::new(2).unwrap();
        g.set_count(4, 3).unwrap();
        g.set_count(5, 2).unwrap();
        g.set_count(2, 1).unwrap();
        for v in 1..=7 {
            assert_eq!(
                g.deliver(v).unwrap(),
                g.oracle_deliver(v, 1_000_000).unwrap(),
                "target {v}"
            );
        }
    }

    #[test]
    fn fractional_deliver_examples() {
        let mut g = ExplicitConfig::new(1).unwrap();
        g.set_count(1, 2).unwrap();
        assert_eq!(g.fractional_deliver(2).unwrap(), Dyadic::new(1, 0));

        let c = cfg(&[4, 2, 0, 2, 0, 0]).materialize().unwrap();
        assert_eq!(c.fractional_deliver(32).unwrap(), Dyadic::new(1, 0));

        let mut g = ExplicitConfig::new(2).unwrap();
        g.set_count(5, 1).unwrap();
        assert_eq!(g.fractional_deliver(5).unwrap(), Dyadic::new(1, 0));
    }

    #[test]
    fn fractional_matches_liquid_weight() {
        for levels in [
            vec![4u128, 2, 0, 2, 0, 0],
            vec![1, 2, 4, 0, 2, 2],
            vec![0, 0, 2, 2],
            vec![7, 0],
        ] {
            let c = cfg(&levels);
            let h = c.height();
            let report = c.liquid().unwrap();
            let g = c.materialize().unwrap();
            let leaf = 1u32 << h;
            assert_eq!(
                g.fractional_deliver(leaf).unwrap(),
                Dyadic::new(report.weight, h + 1),
                "levels {levels:?}"
            );
        }
    }

    #[test]
    fn config_document_round_trip() {
        let c = cfg(&[4, 2, 0, 2, 0, 0]);
        let text = c.to_json();
        assert_eq!(text, r#"{"height":5,"levels":[4,2,0,2,0,0]}"#);
        assert_eq!(SymmetricConfig::from_json(&text).unwrap(), c);

        assert!(SymmetricConfig::from_json(r#"{"height":1,"levels":[1]}"#).is_err());
        assert!(
            SymmetricConfig::from_json(r#"{"height":1,"levels":[1,0],"extra":3}"#).is_err()
        );
        assert!(SymmetricConfig::from_json("not json").is_err());
        assert!(SymmetricConfig::from_json(r#"{"height":1,"levels":[-1,0]}"#).is_err());
        assert!(SymmetricConfig::from_json(r#"{"height":1,"levels":[1.5,0]}"#).is_err());
        assert!(SymmetricConfig::from_json(r#"{"height":1,"levels":["2",0]}"#).is_err());
        assert!(SymmetricConfig::from_json(r#"{"levels":[1,0]}"#).is_err());

        // heads beyond 64 bits survive the round trip exactly
        let big = cfg(&[1u128 << 100, 0]);
        assert_eq!(SymmetricConfig::from_json(&big.to_json()).unwrap(), big);
    }

    #[test]
    fn tree_distance_cases() {
        assert_eq!(tree_distance(1, 1), 0);
        assert_eq!(tree_distance(1, 2), 1);
        assert_eq!(tree_distance(2, 3), 2);
        assert_eq!(tree_distance(4, 7), 4);
        assert_eq!(tree_distance(4, 5), 2);
        assert_eq!(tree_distance(8, 15), 6);
    }

    #[test]
    fn dyadic_normalization() {
        assert_eq!(Dyadic::new(4, 2), Dyadic::new(1, 0));
        assert_eq!(Dyadic::new(6, 3), Dyadic::new(3, 2));
        assert_eq!(Dyadic::new(0, 7), Dyadic::new(0, 0));
        assert!(Dyadic::new(5, 2).is_at_least_one());
        assert!(!Dyadic::new(3, 2).is_at_least_one());
    }
}
