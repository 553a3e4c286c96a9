//! Cyclic quotient singularity invariants.
//!
//! A quotient of order l with weights (a_1, ..., a_d) is encoded by the point
//! (a_1/l, ..., a_d/l) in the half-open unit cube. Its multiples are the
//! points ({m a_1/l}, ..., {m a_d/l}) for m = 1..l-1; the Shokurov minimal
//! log-discrepancy is the least coordinate sum over multiples with every
//! coordinate nonzero, the total minimal log-discrepancy is the least
//! coordinate sum over nonnegative points of the generated lattice with at
//! least two positive coordinates (always at most 2, because pairs of unit
//! vectors qualify). All sums live in (1/l)Z, so everything is computed on
//! integer residues and only converted to rationals at the edges.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd_all, Rational};
use crate::error::{Error, Result};

/// Order l plus weight residues, stored in 1..l-1, faithful by construction
/// (the weights and l have no common factor).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicQuotient {
    order: u64,
    weights: Vec<u64>,
}

/// A point of the standard torus: coordinates in [0, 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusPoint {
    pub coords: Vec<Rational>,
}

impl TorusPoint {
    pub fn coordinate_sum(&self) -> Rational {
        self.coords.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MldKind {
    #[serde(rename = "SHOKUROV")]
    Shokurov,
    #[serde(rename = "TOTAL")]
    Total,
}

/// A minimal log-discrepancy, or the marker for "no multiple lies strictly
/// inside the torus". The marker cannot occur for a valid quotient (the m=1
/// multiple is the point itself, which has no zero coordinate), but callers
/// are forced to handle it rather than trip over a sentinel number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MldValue {
    Finite(Rational),
    Infinite,
}

impl MldValue {
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            MldValue::Finite(q) => Some(q),
            MldValue::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, MldValue::Finite(_))
    }

    /// Finite values compare normally; Infinite dominates everything.
    pub fn at_least(&self, threshold: &Rational) -> bool {
        match self {
            MldValue::Finite(q) => q >= threshold,
            MldValue::Infinite => true,
        }
    }
}

impl std::fmt::Display for MldValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MldValue::Finite(q) => write!(f, "{}", crate::arith::format_rational(q)),
            MldValue::Infinite => write!(f, "INFINITE"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MldResult {
    pub value: MldValue,
    /// Multiplier realizing the minimum; 0 when the value is Infinite or
    /// when the total mld is realized only by a pair of unit vectors.
    pub attained_at: u64,
    pub kind: MldKind,
}

/// Everything `classify` knows about one quotient. The simplex-based and
/// mld-based terminal/canonical predicates are computed independently; they
/// provably agree on isolated quotients but not in general, so both are
/// reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub shokurov: MldResult,
    pub total: MldResult,
    pub gorenstein_index: u64,
    pub is_gorenstein: bool,
    pub is_terminal_shokurov: bool,
    pub is_terminal_total: bool,
    pub is_terminal_simplex: bool,
    pub is_canonical_simplex: bool,
    pub is_wellformed: bool,
    pub is_isolated: bool,
}

impl CyclicQuotient {
    pub fn new(weights: Vec<u64>, order: u64) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidInput("order must be at least 2".into()));
        }
        if weights.len() < 2 {
            return Err(Error::InvalidInput(
                "a cyclic quotient needs at least two weights".into(),
            ));
        }
        let weights: Vec<u64> = weights.into_iter().map(|a| a % order).collect();
        if weights.iter().any(|&a| a == 0) {
            return Err(Error::InvalidInput(
                "every weight must be nonzero mod the order".into(),
            ));
        }
        let g = weights.iter().fold(order, |g, &a| g.gcd(&a));
        if g != 1 {
            return Err(Error::InvalidInput(format!(
                "weights and order share the factor {g}: the action is not faithful"
            )));
        }
        Ok(CyclicQuotient { order, weights })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// Residues (m * a_i mod l) of the m-th multiple.
    fn residues(&self, m: u64) -> Vec<u64> {
        self.weights
            .iter()
            .map(|&a| (m as u128 * a as u128 % self.order as u128) as u64)
            .collect()
    }

    /// The multiples of the defining torus point, for m = 1..l-1 in order.
    pub fn multiples(&self) -> Vec<TorusPoint> {
        (1..self.order)
            .map(|m| TorusPoint {
                coords: self
                    .residues(m)
                    .into_iter()
                    .map(|r| Rational::new(BigInt::from(r), BigInt::from(self.order)))
                    .collect(),
            })
            .collect()
    }

    pub fn mld(&self, kind: MldKind) -> MldResult {
        match kind {
            MldKind::Shokurov => self.mld_shokurov(),
            MldKind::Total => self.mld_total(),
        }
    }

    fn mld_shokurov(&self) -> MldResult {
        let l = self.order;
        let mut best: Option<(u64, u64)> = None;
        for m in 1..l {
            let mut sum = 0u64;
            let mut interior = true;
            for &a in &self.weights {
                let r = (m as u128 * a as u128 % l as u128) as u64;
                if r == 0 {
                    interior = false;
                    break;
                }
                sum += r;
            }
            if interior && best.map_or(true, |(s, _)| sum < s) {
                best = Some((sum, m));
            }
        }
        match best {
            Some((sum, m)) => MldResult {
                value: MldValue::Finite(Rational::new(BigInt::from(sum), BigInt::from(l))),
                attained_at: m,
                kind: MldKind::Shokurov,
            },
            None => MldResult {
                value: MldValue::Infinite,
                attained_at: 0,
                kind: MldKind::Shokurov,
            },
        }
    }

    /// Closed candidate set for the total mld: each multiple, padded by one
    /// unit vector when it has fewer than two positive coordinates, plus the
    /// pairs of unit vectors (the m = 0 case, sum 2). Any other nonnegative
    /// lattice point dominates one of these coordinatewise.
    fn mld_total(&self) -> MldResult {
        let l = self.order;
        // m = 0: e_i + e_j, sum exactly 2.
        let mut best_sum = 2 * l;
        let mut best_m = 0u64;
        for m in 1..l {
            let residues = self.residues(m);
            let positives = residues.iter().filter(|&&r| r > 0).count();
            let sum: u64 = residues.iter().sum();
            let candidate = match positives {
                0 => unreachable!("faithful action: some residue is nonzero for 0 < m < l"),
                1 => sum + l,
                _ => sum,
            };
            if candidate < best_sum {
                best_sum = candidate;
                best_m = m;
            }
        }
        MldResult {
            value: MldValue::Finite(Rational::new(BigInt::from(best_sum), BigInt::from(l))),
            attained_at: best_m,
            kind: MldKind::Total,
        }
    }

    pub fn weight_sum(&self) -> u64 {
        self.weights.iter().sum()
    }

    /// Reduced denominator of (sum of weights)/l.
    pub fn gorenstein_index(&self) -> u64 {
        self.order / self.weight_sum().gcd(&self.order)
    }

    pub fn is_gorenstein(&self) -> bool {
        self.gorenstein_index() == 1
    }

    /// gcd(a_i, l) = 1 for every weight.
    pub fn is_isolated(&self) -> bool {
        self.weights.iter().all(|&a| a.gcd(&self.order) == 1)
    }

    /// Dropping any one weight leaves a faithful action.
    pub fn is_wellformed(&self) -> bool {
        (0..self.weights.len()).all(|j| {
            let g = self
                .weights
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .fold(self.order, |g, (_, &a)| g.gcd(&a));
            g == 1
        })
    }

    pub fn classify(&self) -> Classification {
        let shokurov = self.mld_shokurov();
        let total = self.mld_total();
        let l = self.order;
        let one = Rational::one();
        let mut terminal_simplex = true;
        let mut canonical_simplex = true;
        for m in 1..l {
            let sum: u64 = self.residues(m).iter().sum();
            if sum <= l {
                terminal_simplex = false;
            }
            if sum < l {
                canonical_simplex = false;
            }
        }
        Classification {
            is_terminal_shokurov: match &shokurov.value {
                MldValue::Finite(q) => q > &one,
                MldValue::Infinite => true,
            },
            is_terminal_total: total.value.as_rational().map_or(true, |q| q > &one),
            is_terminal_simplex: terminal_simplex,
            is_canonical_simplex: canonical_simplex,
            gorenstein_index: self.gorenstein_index(),
            is_gorenstein: self.is_gorenstein(),
            is_wellformed: self.is_wellformed(),
            is_isolated: self.is_isolated(),
            shokurov,
            total,
        }
    }

    /// Append the weight that makes the sum divisible by l, producing a
    /// Gorenstein quotient of dimension one bigger.
    pub fn suspend(&self) -> Result<CyclicQuotient> {
        let rem = self.weight_sum() % self.order;
        if rem == 0 {
            return Err(Error::GorensteinInput);
        }
        let mut weights = self.weights.clone();
        weights.push(self.order - rem);
        CyclicQuotient::new(weights, self.order)
    }

    /// Drop the weight at `index`. With `strict`, the input must be
    /// Gorenstein (the inverse of `suspend`).
    pub fn project(&self, index: usize, strict: bool) -> Result<CyclicQuotient> {
        if self.weights.len() < 3 {
            return Err(Error::InvalidInput(
                "projection needs dimension at least 3".into(),
            ));
        }
        if index >= self.weights.len() {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.weights.len(),
            });
        }
        if strict && !self.is_gorenstein() {
            return Err(Error::NotGorenstein);
        }
        let mut weights = self.weights.clone();
        weights.remove(index);
        CyclicQuotient::new(weights, self.order)
    }

    /// Weights sorted ascending, minimized over the multiplier action
    /// a -> m*a mod l for units m. Two quotients are isomorphic exactly when
    /// their canonical forms agree.
    pub fn canonical_form(&self) -> CyclicQuotient {
        let l = self.order;
        let mut best: Option<Vec<u64>> = None;
        for m in 1..l {
            if m.gcd(&l) != 1 {
                continue;
            }
            let mut mapped = self.residues(m);
            mapped.sort_unstable();
            if best.as_ref().map_or(true, |b| &mapped < b) {
                best = Some(mapped);
            }
        }
        CyclicQuotient {
            order: l,
            weights: best.expect("m = 1 is always a unit"),
        }
    }

    /// Some pair of weights sums to 0 mod l, i.e. the point lies in a
    /// subtorus of the shape x_i + x_j = 1 after permutation.
    pub fn has_opposite_pair(&self) -> bool {
        let l = self.order;
        let d = self.weights.len();
        (0..d).any(|i| (i + 1..d).any(|j| (self.weights[i] + self.weights[j]) % l == 0))
    }

    /// Text form "a1,a2,...,ad/l".
    pub fn parse(text: &str) -> Result<Self> {
        let (weights, order) = text
            .rsplit_once('/')
            .ok_or_else(|| Error::InvalidInput(format!("expected weights/order, got {text:?}")))?;
        let order: u64 = order
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad order in {text:?}")))?;
        let weights = weights
            .split(',')
            .map(|w| {
                w.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidInput(format!("bad weight {w:?}")))
            })
            .collect::<Result<Vec<u64>>>()?;
        CyclicQuotient::new(weights, order)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "l": self.order, "weights": self.weights })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct QuotientJson {
            l: u64,
            weights: Vec<u64>,
        }
        let parsed: QuotientJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidInput(format!("bad quotient JSON: {e}")))?;
        CyclicQuotient::new(parsed.weights, parsed.l)
    }
}

impl std::fmt::Display for CyclicQuotient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "{}/{}", parts.join(","), self.order)
    }
}

/// Ascending weight multisets over the allowed residues for one order,
/// filtered to faithful, well-formed, canonical representatives.
fn canonical_quotients(order: u64, dim: usize, isolated_only: bool) -> Vec<CyclicQuotient> {
    let values: Vec<u64> = (1..order)
        .filter(|&a| !isolated_only || a.gcd(&order) == 1)
        .collect();
    let mut out = Vec::new();
    let mut stack = vec![0usize; dim];
    fn rec(
        values: &[u64],
        order: u64,
        dim: usize,
        depth: usize,
        start: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<CyclicQuotient>,
    ) {
        if depth == dim {
            let weights: Vec<u64> = stack.iter().map(|&i| values[i]).collect();
            if gcd_all(weights.iter().copied().chain([order])) != 1 {
                return;
            }
            let cq = CyclicQuotient {
                order,
                weights: weights.clone(),
            };
            if !cq.is_wellformed() {
                return;
            }
            if cq.canonical_form().weights == weights {
                out.push(cq);
            }
            return;
        }
        for i in start..values.len() {
            stack[depth] = i;
            rec(values, order, dim, depth + 1, i, stack, out);
        }
    }
    rec(&values, order, dim, 0, 0, &mut stack, &mut out);
    out
}

/// All isolated, well-formed, 3-dimensional terminal quotients with order up
/// to `l_max` whose weights contain NO pair summing to 0 mod l. The d = 3
/// terminal classification says every terminal example has such a pair, so
/// the expected result is empty; anything returned is a violation.
pub fn terminal_lemma_scan(l_max: u64) -> Result<Vec<CyclicQuotient>> {
    if l_max < 2 {
        return Err(Error::InvalidInput("l_max must be at least 2".into()));
    }
    let mut violations = Vec::new();
    for l in 2..=l_max {
        for cq in canonical_quotients(l, 3, true) {
            let terminal = (1..l).all(|m| cq.residues(m).iter().sum::<u64>() > l);
            if terminal && !cq.has_opposite_pair() {
                violations.push(cq);
            }
        }
    }
    Ok(violations)
}

/// Experimental probe: well-formed d-dimensional quotients with Shokurov mld
/// at least d/2 - slack and no opposite pair of weights. A nonempty result is
/// data about small dimensions, not a refutation; the conjecture it probes is
/// asymptotic in d.
pub fn conjecture_probe(
    dim: usize,
    slack: &Rational,
    l_range: (u64, u64),
) -> Result<Vec<CyclicQuotient>> {
    if dim < 2 {
        return Err(Error::InvalidInput("probe needs dimension at least 2".into()));
    }
    if l_range.0 < 2 || l_range.1 < l_range.0 {
        return Err(Error::InvalidInput("bad order range".into()));
    }
    let threshold = Rational::new(BigInt::from(dim), BigInt::from(2)) - slack;
    let mut hits = Vec::new();
    for l in l_range.0..=l_range.1 {
        for cq in canonical_quotients(l, dim, false) {
            if cq.has_opposite_pair() {
                continue;
            }
            if cq.mld_shokurov().value.at_least(&threshold) {
                hits.push(cq);
            }
        }
    }
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn cq(weights: &[u64], order: u64) -> CyclicQuotient {
        CyclicQuotient::new(weights.to_vec(), order).unwrap()
    }

    #[test]
    fn construction_validates() {
        assert!(CyclicQuotient::new(vec![1], 5).is_err());
        assert!(CyclicQuotient::new(vec![1, 1], 1).is_err());
        assert!(CyclicQuotient::new(vec![5, 1], 5).is_err());
        assert!(CyclicQuotient::new(vec![2, 4], 6).is_err()); // gcd 2 with l
        assert!(CyclicQuotient::new(vec![2, 3, 5], 6).is_ok());
    }

    #[test]
    fn multiples_by_hand() {
        assert_eq!(
            cq(&[1, 1], 2).multiples(),
            vec![TorusPoint {
                coords: vec![rat(1, 2), rat(1, 2)]
            }]
        );
        assert_eq!(
            cq(&[1, 2], 3).multiples(),
            vec![
                TorusPoint {
                    coords: vec![rat(1, 3), rat(2, 3)]
                },
                TorusPoint {
                    coords: vec![rat(2, 3), rat(1, 3)]
                },
            ]
        );
        let m5 = &cq(&[9, 1, 9, 8], 11).multiples()[4];
        assert_eq!(
            m5.coords,
            vec![rat(1, 11), rat(5, 11), rat(1, 11), rat(7, 11)]
        );
    }

    #[test]
    fn shokurov_mld_examples() {
        let r = cq(&[9, 1, 9, 8], 11).mld(MldKind::Shokurov);
        assert_eq!(r.value, MldValue::Finite(rat(14, 11)));
        assert_eq!(r.attained_at, 5);

        let r = cq(&[1, 4], 5).mld(MldKind::Shokurov);
        assert_eq!(r.value, MldValue::Finite(rat(1, 1)));
    }

    #[test]
    fn total_mld_examples() {
        let r = cq(&[1, 1], 2).mld(MldKind::Total);
        assert_eq!(r.value, MldValue::Finite(rat(1, 1)));
        assert_eq!(r.attained_at, 1);

        // Non-isolated: Shokurov 4/3 but total 2/3 via the m=4 multiple.
        let s = cq(&[2, 3, 5], 6);
        assert_eq!(s.mld(MldKind::Shokurov).value, MldValue::Finite(rat(4, 3)));
        assert_eq!(s.mld(MldKind::Total).value, MldValue::Finite(rat(2, 3)));
    }

    #[test]
    fn classify_examples() {
        let c = cq(&[1, 2, 3], 5).classify();
        assert!(c.is_terminal_shokurov && c.is_terminal_total && c.is_terminal_simplex);
        assert_eq!(c.shokurov.value, MldValue::Finite(rat(6, 5)));
        assert_eq!(c.gorenstein_index, 5);
        assert!(!c.is_gorenstein);

        let c = cq(&[1, 1], 2).classify();
        assert!(c.is_canonical_simplex && !c.is_terminal_simplex);
        assert!(!c.is_terminal_shokurov);
        assert_eq!(c.gorenstein_index, 1);
        assert!(c.is_gorenstein);

        let c = cq(&[9, 1, 9, 8, 6], 11).classify();
        assert!(c.is_gorenstein);
        assert_eq!(c.shokurov.value, MldValue::Finite(rat(2, 1)));
    }

    #[test]
    fn suspend_examples() {
        assert_eq!(cq(&[9, 1, 9, 8], 11).suspend().unwrap(), cq(&[9, 1, 9, 8, 6], 11));
        assert_eq!(cq(&[1, 2], 4).suspend().unwrap(), cq(&[1, 2, 1], 4));
        assert!(matches!(
            cq(&[1, 1], 2).suspend(),
            Err(Error::GorensteinInput)
        ));
    }

    #[test]
    fn project_examples() {
        let s = cq(&[9, 1, 9, 8, 6], 11);
        let back = s.project(4, true).unwrap();
        assert_eq!(back, cq(&[9, 1, 9, 8], 11));
        assert!(!back.is_gorenstein());

        assert_eq!(cq(&[1, 2, 1], 4).project(1, false).unwrap(), cq(&[1, 1], 4));
        assert!(matches!(
            s.project(9, true),
            Err(Error::IndexOutOfRange { index: 9, len: 5 })
        ));
        assert!(matches!(
            cq(&[9, 1, 9, 8], 11).project(0, true),
            Err(Error::NotGorenstein)
        ));
        assert!(cq(&[1, 1], 2).project(0, false).is_err());
    }

    #[test]
    fn suspend_project_round_trip() {
        for (weights, order) in [
            (vec![9u64, 1, 9, 8], 11u64),
            (vec![1, 2, 3], 5),
            (vec![1, 2], 4),
            (vec![3, 5, 7], 16),
        ] {
            let cq = CyclicQuotient::new(weights, order).unwrap();
            if cq.is_gorenstein() {
                continue;
            }
            let up = cq.suspend().unwrap();
            assert!(up.is_gorenstein());
            assert_eq!(up.project(up.dim() - 1, true).unwrap(), cq);
            // Per-multiple sums grow by the appended coordinate, in [0, 1).
            for (a, b) in cq.multiples().iter().zip(up.multiples()) {
                let diff = b.coordinate_sum() - a.coordinate_sum();
                assert!(diff >= rat(0, 1) && diff < rat(1, 1));
            }
        }
    }

    #[test]
    fn terminal_lemma_small_orders() {
        assert!(terminal_lemma_scan(2).unwrap().is_empty());
        assert!(terminal_lemma_scan(50).unwrap().is_empty());
        // Witness that the scan is nontrivial: (1,2,3;5) is terminal but has
        // the pair 2+3 = 5.
        let witness = cq(&[1, 2, 3], 5);
        assert!(witness.classify().is_terminal_shokurov);
        assert!(witness.has_opposite_pair());
    }

    #[test]
    fn conjecture_probe_examples() {
        let hits = conjecture_probe(3, &rat(1, 2), (7, 7)).unwrap();
        assert!(hits.contains(&cq(&[1, 2, 4], 7)));

        assert!(conjecture_probe(2, &rat(0, 1), (2, 10)).unwrap().is_empty());
        assert!(conjecture_probe(3, &rat(-1, 4), (2, 20)).unwrap().is_empty());
    }

    #[test]
    fn gorenstein_implies_integer_interior_sums_and_canonical() {
        for (weights, order) in [
            (vec![9u64, 1, 9, 8, 6], 11u64),
            (vec![1, 2, 1], 4),
            (vec![5, 3, 1, 2, 3], 7),
            (vec![1, 1, 2], 4),
        ] {
            let cq = CyclicQuotient::new(weights, order).unwrap();
            assert!(cq.is_gorenstein());
            let c = cq.classify();
            assert!(c.is_canonical_simplex, "{cq}");
            if let MldValue::Finite(q) = &c.shokurov.value {
                assert!(q.is_integer(), "{cq}");
                assert!(*q >= rat(1, 1));
            }
        }
    }

    #[test]
    fn isolated_predicates_agree_and_total_bounds_hold() {
        for l in 2u64..=30 {
            for cq in canonical_quotients(l, 3, false) {
                let c = cq.classify();
                // Total mld is finite and at most 2.
                let total = c.total.value.as_rational().unwrap();
                assert!(*total <= rat(2, 1), "{cq}");
                // Shokurov dominates total when finite.
                if let Some(s) = c.shokurov.value.as_rational() {
                    assert!(s >= total, "{cq}");
                    // The denominator divides l.
                    assert_eq!(s.denom().gcd(&BigInt::from(l)), s.denom().clone(), "{cq}");
                }
                if c.is_isolated {
                    assert_eq!(c.is_terminal_shokurov, c.is_terminal_total, "{cq}");
                    assert_eq!(c.is_terminal_shokurov, c.is_terminal_simplex, "{cq}");
                    let canonical_mld = c
                        .shokurov
                        .value
                        .as_rational()
                        .map(|q| *q >= rat(1, 1))
                        .unwrap_or(true);
                    assert_eq!(canonical_mld, c.is_canonical_simplex, "{cq}");
                }
            }
        }
    }

    #[test]
    fn mld_denominator_divides_index_times_order() {
        for l in 2u64..=24 {
            for cq in canonical_quotients(l, 4, false) {
                let r = cq.mld_shokurov();
                if let MldValue::Finite(q) = &r.value {
                    if r.attained_at.gcd(&l) == 1 {
                        let g = cq.weight_sum().gcd(&l);
                        let bound = BigInt::from(cq.gorenstein_index() * (l / g));
                        assert!(
                            bound.is_multiple_of(q.denom()),
                            "{cq}: denom {} bound {}",
                            q.denom(),
                            bound
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn parse_and_format() {
        let q = CyclicQuotient::parse("9,1,9,8/11").unwrap();
        assert_eq!(q, cq(&[9, 1, 9, 8], 11));
        assert_eq!(q.to_string(), "9,1,9,8/11");
        assert_eq!(CyclicQuotient::from_json(&q.to_json()).unwrap(), q);
        assert!(CyclicQuotient::parse("9,1,9,8").is_err());
        assert!(CyclicQuotient::parse("0,1/4").is_err());
    }

    #[test]
    fn canonical_form_is_orbit_minimum() {
        let q = cq(&[1, 2, 3], 5);
        assert_eq!(q.canonical_form().weights(), &[1, 2, 3]);
        let q = cq(&[3, 6, 5], 7);
        // m = 3 maps (3,6,5) to (2,4,1), sorted (1,2,4).
        assert_eq!(q.canonical_form().weights(), &[1, 2, 4]);
    }
}
