//! Exhaustive enumeration of irreducible {0,1}-valued step-function
//! solutions of a given depth, their classification against the
//! two-parameter family, and the built-in table of the 29 exceptional
//! stable quintuples of Mori-Morrison-Morrison.
//!
//! The search runs over signed tuples (d positives, d+1 negatives, equal
//! sums, entries bounded by `height`). Entries are placed in descending
//! order; once the running minimum placed value is v, the floor sum B is
//! fully determined on [0, 1/v) - unplaced entries are too small to
//! contribute - so every breakpoint there is checked incrementally and
//! failing prefixes prune whole subtrees. Two cheap necessary conditions
//! come for free: the largest entry is positive and unique (B at its first
//! breakpoint must land in {0,1}), so positive multisets are enumerated
//! first and the negative side is filled in by depth-first descent indexed
//! by the remaining sum.

use serde::{Deserialize, Serialize};

use crate::bridge::SignedTuple;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolutionClass {
    /// The two-parameter family (a, -2a, b, -2b, a+b): for positive
    /// parameters the shape (2a,2b; a,b,a+b) whose values are Catalan's
    /// ratios, for mixed signs the shape (2b,a; b,2a,b-a).
    #[serde(rename = "CATALAN_DERIVED")]
    CatalanDerived,
    /// A value occurs on both sides.
    #[serde(rename = "REDUCIBLE")]
    Reducible,
    #[serde(rename = "SPORADIC")]
    Sporadic,
}

impl std::fmt::Display for SolutionClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            SolutionClass::CatalanDerived => "CATALAN_DERIVED",
            SolutionClass::Reducible => "REDUCIBLE",
            SolutionClass::Sporadic => "SPORADIC",
        };
        write!(f, "{name}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionRecord {
    pub tuple: SignedTuple,
    pub depth: usize,
    pub classification: SolutionClass,
    pub height: u64,
}

impl SolutionRecord {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "tuple": self.tuple.to_string(),
            "depth": self.depth,
            "class": self.classification.to_string(),
            "height": self.height,
        })
    }
}

/// Classify a stable tuple: REDUCIBLE when a value repeats across sides,
/// CATALAN_DERIVED when it is an instance of the two-parameter family,
/// SPORADIC otherwise.
pub fn classify_solution(tuple: &SignedTuple) -> SolutionClass {
    if !tuple.is_irreducible() {
        return SolutionClass::Reducible;
    }
    if is_two_parameter_family(tuple) {
        return SolutionClass::CatalanDerived;
    }
    SolutionClass::Sporadic
}

/// Match against (a, -2a, b, -2b, a+b) up to order, sign normalization and
/// scaling. Tuples are stored primitive, so scaling never needs trying.
fn is_two_parameter_family(tuple: &SignedTuple) -> bool {
    if tuple.positives().len() != 2 || tuple.negatives().len() != 3 {
        return false;
    }
    let pos = tuple.positives();
    let mut neg = tuple.negatives().to_vec();
    neg.sort_unstable();
    for (doubled, other) in [(pos[0], pos[1]), (pos[1], pos[0])] {
        if doubled % 2 != 0 {
            continue;
        }
        let b = doubled / 2;
        // Positive parameters: (2a, 2b; a, b, a+b).
        if other % 2 == 0 {
            let a = other / 2;
            let mut expect = [a, b, a + b];
            expect.sort_unstable();
            if expect == neg[..] {
                return true;
            }
        }
        // Mixed signs: (2b, a; b, 2a, b-a) with b > a.
        let a = other;
        if b > a {
            let mut expect = [b, 2 * a, b - a];
            expect.sort_unstable();
            if expect == neg[..] {
                return true;
            }
        }
    }
    false
}

/// The 29 exceptional stable quintuples, in table order. The printed third
/// entry is defective in the source table (it does not sum to zero); the
/// enumeration at height 30 pins it down uniquely as (12,3;4,5,6).
pub fn mmm29() -> Vec<SignedTuple> {
    const TABLE: [(&[u64], &[u64]); 29] = [
        (&[9, 1], &[2, 3, 5]),
        (&[9, 2], &[1, 4, 6]),
        (&[12, 3], &[4, 5, 6]),
        (&[12, 2], &[3, 4, 7]),
        (&[9, 4], &[2, 3, 8]),
        (&[12, 1], &[2, 3, 8]),
        (&[12, 3], &[1, 6, 8]),
        (&[15, 4], &[5, 6, 8]),
        (&[12, 2], &[1, 4, 9]),
        (&[10, 6], &[2, 5, 9]),
        (&[15, 1], &[2, 5, 9]),
        (&[12, 5], &[3, 4, 10]),
        (&[15, 2], &[3, 4, 10]),
        (&[12, 1], &[3, 4, 6]),
        (&[14, 1], &[3, 5, 7]),
        (&[14, 3], &[1, 7, 9]),
        (&[15, 7], &[3, 5, 14]),
        (&[15, 1], &[3, 5, 8]),
        (&[15, 2], &[1, 6, 10]),
        (&[15, 4], &[2, 5, 12]),
        (&[18, 1], &[4, 6, 9]),
        (&[18, 2], &[5, 6, 9]),
        (&[18, 4], &[1, 9, 12]),
        (&[20, 1], &[4, 7, 10]),
        (&[20, 1], &[3, 8, 10]),
        (&[20, 3], &[4, 9, 10]),
        (&[20, 3], &[1, 10, 12]),
        (&[24, 1], &[5, 8, 12]),
        (&[30, 1], &[6, 10, 15]),
    ];
    TABLE
        .iter()
        .map(|(p, n)| {
            SignedTuple::new(p.to_vec(), n.to_vec()).expect("table entries sum to zero")
        })
        .collect()
}

/// Default search heights per depth; depth 2 needs 30 (the largest table
/// entry), the rest are generous desk-scale bounds.
pub fn default_height(depth: usize) -> u64 {
    match depth {
        1 => 50,
        2 => 30,
        3 => 60,
        4 => 60,
        5 => 12,
        _ => 30,
    }
}

pub const DEFAULT_NODE_BUDGET: u64 = 200_000_000;

/// All canonical, primitive, irreducible signed tuples with `depth`
/// positives, depth+1 negatives, entries at most `height`, whose floor sum
/// takes only the values {0, 1}. Classified and sorted; deterministic.
/// Every candidate that survives the search is re-verified by the full
/// breakpoint check before being emitted.
pub fn enumerate_solutions(
    depth: usize,
    height: u64,
    node_budget: u64,
) -> Result<Vec<SolutionRecord>> {
    if depth < 1 {
        return Err(Error::InvalidInput("depth must be at least 1".into()));
    }
    if height < 2 {
        return Err(Error::InvalidInput("height must be at least 2".into()));
    }
    let mut search = Search {
        height,
        budget: node_budget,
        nodes: 0,
        positives: Vec::with_capacity(depth),
        negatives: Vec::with_capacity(depth + 1),
        found: Vec::new(),
    };
    // The global maximum entry must be positive and unique: if it were
    // negative, B at its first breakpoint would be negative; if repeated,
    // B there would exceed 1.
    search.place_positive(depth, height)?;

    let mut records: Vec<SolutionRecord> = search
        .found
        .into_iter()
        .map(|(pos, neg)| {
            let tuple = SignedTuple::new(pos, neg).expect("search keeps sums balanced");
            debug_assert!(tuple.is_stable().expect("arity fixed by construction"));
            SolutionRecord {
                depth,
                classification: classify_solution(&tuple),
                height,
                tuple,
            }
        })
        .collect();
    records.sort_by(|a, b| a.tuple.cmp(&b.tuple));
    records.dedup_by(|a, b| a.tuple == b.tuple);
    // Independent verification pass: the full breakpoint check, recomputed
    // from the finished tuple rather than the search's incremental state.
    records.retain(|r| r.tuple.is_stable().unwrap_or(false));
    Ok(records)
}

struct Search {
    height: u64,
    budget: u64,
    nodes: u64,
    positives: Vec<u64>,
    negatives: Vec<u64>,
    found: Vec<(Vec<u64>, Vec<u64>)>,
}

impl Search {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { limit: self.budget });
        }
        Ok(())
    }

    /// Fill the positive side in non-increasing order.
    fn place_positive(&mut self, remaining: usize, max_value: u64) -> Result<()> {
        if remaining == 0 {
            let sum: u64 = self.positives.iter().sum();
            let count = self.positives.len() + 1;
            // Negatives are all strictly below the maximum (shared values are
            // excluded by irreducibility, larger ones by stability).
            let cap = self.positives[0] - 1;
            if sum <= cap * count as u64 && sum >= count as u64 {
                self.place_negative(sum, count, cap)?;
            }
            return Ok(());
        }
        let lo = 1;
        let hi = if self.positives.is_empty() {
            self.height
        } else if self.positives.len() == 1 {
            // Unique maximum.
            self.positives[0] - 1
        } else {
            *self.positives.last().unwrap()
        };
        let mut v = hi;
        while v >= lo {
            self.tick()?;
            self.positives.push(v);
            self.place_positive(remaining - 1, v)?;
            self.positives.pop();
            if v == lo {
                break;
            }
            v -= 1;
        }
        Ok(())
    }

    /// Fill the negative side in non-increasing order, keeping the exact
    /// remaining sum feasible and sweeping newly determined breakpoints.
    fn place_negative(&mut self, sum_left: u64, count_left: usize, max_value: u64) -> Result<()> {
        if count_left == 0 {
            debug_assert_eq!(sum_left, 0);
            // Entries below the last placed value are exhausted; check the
            // rest of the period.
            let v_last = *self.negatives.last().unwrap();
            if self.sweep_ok((1, v_last), None) && self.primitive() {
                self.found
                    .push((self.positives.clone(), self.negatives.clone()));
            }
            return Ok(());
        }
        let count = count_left as u64;
        // v * count >= sum_left and v <= sum_left - (count - 1).
        let lo = sum_left.div_ceil(count);
        let hi = max_value.min(sum_left - (count - 1));
        if lo > hi {
            return Ok(());
        }
        let prev = self.negatives.last().copied();
        let mut v = hi;
        loop {
            self.tick()?;
            // Irreducibility: never reuse a positive value.
            if !self.positives.contains(&v) {
                let window_ok = match prev {
                    Some(w) => self.sweep_ok((1, w), Some((1, v))),
                    // First negative: everything below 1/v was zero so far;
                    // B on [0, 1/v) is determined by the positives alone.
                    None => self.sweep_ok((0, 1), Some((1, v))),
                };
                if window_ok {
                    self.negatives.push(v);
                    self.place_negative(sum_left - v, count_left - 1, v)?;
                    self.negatives.pop();
                }
            }
            if v == lo {
                break;
            }
            v -= 1;
        }
        Ok(())
    }

    /// Check 0 <= B <= 1 at every breakpoint c/a of the placed entries in
    /// [from, to), where bounds are fractions and `None` means 1. Unplaced
    /// entries cannot contribute on this window, so B is final there.
    fn sweep_ok(&self, from: (u64, u64), to: Option<(u64, u64)>) -> bool {
        for &a in self.positives.iter().chain(&self.negatives) {
            // c/a >= from: c >= a*from.0/from.1
            let mut c = (a * from.0).div_ceil(from.1);
            // skip c/a == from when the previous sweep already covered it?
            // Windows are [from, to): include c/a == from exactly.
            loop {
                match to {
                    Some((tn, td)) => {
                        // c/a < tn/td
                        if c as u128 * td as u128 >= tn as u128 * a as u128 {
                            break;
                        }
                    }
                    None => {
                        if c >= a {
                            break;
                        }
                    }
                }
                let b = self.floor_sum(c, a);
                if b < 0 || b > 1 {
                    return false;
                }
                c += 1;
            }
        }
        true
    }

    fn floor_sum(&self, c: u64, a: u64) -> i64 {
        let mut b: i64 = 0;
        for &p in &self.positives {
            b += (p as u128 * c as u128 / a as u128) as i64;
        }
        for &q in &self.negatives {
            b -= (q as u128 * c as u128 / a as u128) as i64;
        }
        b
    }

    fn primitive(&self) -> bool {
        crate::arith::gcd_all(
            self.positives
                .iter()
                .chain(&self.negatives)
                .copied(),
        ) == 1
    }
}
