//! The correspondence layer: signed tuples <-> one-parameter factorial-ratio
//! families <-> integer step functions <-> Gorenstein cyclic quotients.
//!
//! A signed tuple (p_1..p_d; q_1..q_{d+1}) with equal sums encodes the family
//! prod (p_i n)! / prod (q_j n)!, the step function sum_p [x/(M/p)] -
//! sum_q [x/(M/q)] (M the lcm of the entries), and for every order l the
//! Gorenstein quotient with weights (-p_i mod l, q_j mod l). Stability - the
//! step function taking only the values 0 and 1 - is decided exactly by a
//! finite breakpoint check on one period.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{lcm_all, Rational};
use crate::error::{Error, Result};
use crate::ratios::{FactorialRatioFamily, IntegralityVerdict};
use crate::singular::CyclicQuotient;

/// Integers summing to zero, positives and negatives stored separately as
/// absolute values. Always primitive (entries divided by their gcd) and
/// canonically sorted, so equality is multiset equality up to scaling.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedTuple {
    positives: Vec<u64>,
    negatives: Vec<u64>,
}

impl SignedTuple {
    pub fn new(mut positives: Vec<u64>, mut negatives: Vec<u64>) -> Result<Self> {
        if positives.is_empty() || negatives.is_empty() {
            return Err(Error::InvalidInput(
                "a signed tuple needs entries on both sides".into(),
            ));
        }
        if positives.iter().chain(&negatives).any(|&e| e == 0) {
            return Err(Error::InvalidInput("tuple entries must be nonzero".into()));
        }
        let psum: u64 = positives.iter().sum();
        let nsum: u64 = negatives.iter().sum();
        if psum != nsum {
            return Err(Error::InvalidInput(format!(
                "tuple does not sum to zero: positives {psum}, negatives {nsum}"
            )));
        }
        let g = crate::arith::gcd_all(positives.iter().chain(&negatives).copied());
        if g > 1 {
            for e in positives.iter_mut().chain(&mut negatives) {
                *e /= g;
            }
        }
        positives.sort_unstable_by(|a, b| b.cmp(a));
        negatives.sort_unstable_by(|a, b| b.cmp(a));
        Ok(SignedTuple {
            positives,
            negatives,
        })
    }

    /// Positive entries, descending.
    pub fn positives(&self) -> &[u64] {
        &self.positives
    }

    /// Absolute values of the negative entries, descending.
    pub fn negatives(&self) -> &[u64] {
        &self.negatives
    }

    pub fn depth(&self) -> usize {
        self.positives.len()
    }

    pub fn max_entry(&self) -> u64 {
        *self
            .positives
            .iter()
            .chain(&self.negatives)
            .max()
            .expect("tuple sides are nonempty")
    }

    /// No value occurs on both sides.
    pub fn is_irreducible(&self) -> bool {
        self.positives
            .iter()
            .all(|p| !self.negatives.contains(p))
    }

    /// Text form "9,1;2,3,5" (positives; negatives). Entry order on input is
    /// irrelevant; the stored form is canonical.
    pub fn parse(text: &str) -> Result<Self> {
        let (pos, neg) = text
            .split_once(';')
            .ok_or_else(|| Error::InvalidInput(format!("expected positives;negatives in {text:?}")))?;
        let side = |s: &str| -> Result<Vec<u64>> {
            s.split(',')
                .map(|e| {
                    e.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::InvalidInput(format!("bad tuple entry {e:?}")))
                })
                .collect()
        };
        SignedTuple::new(side(pos)?, side(neg)?)
    }

    /// Entries with signs, positives first.
    pub fn signed_entries(&self) -> Vec<i64> {
        self.positives
            .iter()
            .map(|&p| p as i64)
            .chain(self.negatives.iter().map(|&q| -(q as i64)))
            .collect()
    }

    /// The one-variable family prod (p n)! / prod (q n)!, balanced because
    /// the tuple sums to zero.
    pub fn to_family(&self) -> FactorialRatioFamily {
        let num: Vec<Vec<u64>> = self.positives.iter().map(|&p| vec![p]).collect();
        let den: Vec<Vec<u64>> = self.negatives.iter().map(|&q| vec![q]).collect();
        let num_refs: Vec<&[u64]> = num.iter().map(|v| v.as_slice()).collect();
        let den_refs: Vec<&[u64]> = den.iter().map(|v| v.as_slice()).collect();
        FactorialRatioFamily::from_coeffs(1, &num_refs, &den_refs)
            .expect("tuple entries are positive")
    }

    /// With M the lcm of all entries: terms (M/p, +1) and (M/q, -1), merged.
    pub fn to_step(&self) -> Result<StepFunction> {
        let m = lcm_all(self.positives.iter().chain(&self.negatives).copied())?;
        let terms: Vec<(u64, i64)> = self
            .positives
            .iter()
            .map(|&p| (m / p, 1i64))
            .chain(self.negatives.iter().map(|&q| (m / q, -1i64)))
            .collect();
        StepFunction::new(terms)
    }

    /// B(x) = sum floor(p x) - sum floor(q x) takes only the values {0, 1}.
    /// Decided exactly at the breakpoints c/a, a an entry, 0 <= c < a;
    /// B has period 1 by balance, so one period suffices.
    pub fn is_stable(&self) -> Result<bool> {
        if self.negatives.len() != self.positives.len() + 1 {
            return Err(Error::ArityMismatch {
                positives: self.positives.len(),
                negatives: self.negatives.len(),
            });
        }
        let mut breakpoints: Vec<(u64, u64)> = Vec::new();
        for &a in self.positives.iter().chain(&self.negatives) {
            for c in 0..a {
                breakpoints.push((c, a));
            }
        }
        for &(c, a) in &breakpoints {
            let b = self.floor_sum_at(c, a);
            if b != 0 && b != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// B(c/a) via integer division.
    pub(crate) fn floor_sum_at(&self, c: u64, a: u64) -> i64 {
        let mut b: i64 = 0;
        for &p in &self.positives {
            b += (p as u128 * c as u128 / a as u128) as i64;
        }
        for &q in &self.negatives {
            b -= (q as u128 * c as u128 / a as u128) as i64;
        }
        b
    }

    /// For every k in 1..l, the fractional parts of the signed entries times
    /// k/l sum to at least `threshold` (an integer whenever the tuple sums to
    /// zero). The customary threshold is the depth d.
    pub fn terminality_condition(&self, l: u64, threshold: u64) -> Result<bool> {
        if l < 2 {
            return Err(Error::InvalidInput("order must be at least 2".into()));
        }
        let bound = (threshold as u128) * l as u128;
        for k in 1..l {
            let mut sum: u128 = 0;
            for &p in &self.positives {
                sum += (p as u128 * k as u128) % l as u128;
            }
            for &q in &self.negatives {
                let r = (q as u128 * k as u128) % l as u128;
                sum += if r == 0 { 0 } else { l as u128 - r };
            }
            if sum < bound {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl std::fmt::Display for SignedTuple {
    /// Positives descending, negatives ascending: "9,1;2,3,5".
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let pos: Vec<String> = self.positives.iter().map(|p| p.to_string()).collect();
        let mut neg: Vec<u64> = self.negatives.clone();
        neg.reverse();
        let neg: Vec<String> = neg.iter().map(|q| q.to_string()).collect();
        write!(f, "{};{}", pos.join(","), neg.join(","))
    }
}

/// Integer combination sum c_n [x/n] with sum c_n/n = 0, hence periodic with
/// period lcm(n). Terms are stored with distinct n, ascending, c nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StepFunction {
    terms: Vec<(u64, i64)>,
}

impl StepFunction {
    pub fn new(terms: Vec<(u64, i64)>) -> Result<Self> {
        let mut merged: std::collections::BTreeMap<u64, i64> = std::collections::BTreeMap::new();
        for (n, c) in terms {
            if n == 0 {
                return Err(Error::InvalidInput("step divisor must be positive".into()));
            }
            *merged.entry(n).or_insert(0) += c;
        }
        merged.retain(|_, c| *c != 0);
        let mut balance = Rational::zero();
        for (&n, &c) in &merged {
            balance += Rational::new(BigInt::from(c), BigInt::from(n));
        }
        if !balance.is_zero() {
            return Err(Error::InvalidInput(format!(
                "step coefficients must satisfy sum c/n = 0, got {balance}"
            )));
        }
        Ok(StepFunction {
            terms: merged.into_iter().collect(),
        })
    }

    pub fn terms(&self) -> &[(u64, i64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// lcm of the divisors; F(x + period) = F(x).
    pub fn period(&self) -> Result<u64> {
        lcm_all(self.terms.iter().map(|&(n, _)| n))
    }

    /// Exact value at a rational point.
    pub fn eval(&self, x: &Rational) -> BigInt {
        let mut acc = BigInt::zero();
        for &(n, c) in &self.terms {
            let q = x / Rational::from_integer(BigInt::from(n));
            acc += q.floor().to_integer() * BigInt::from(c);
        }
        acc
    }

    /// Value at a nonnegative integer, in machine arithmetic.
    pub fn eval_integer(&self, k: u64) -> i64 {
        let mut acc: i128 = 0;
        for &(n, c) in &self.terms {
            acc += (k / n) as i128 * c as i128;
        }
        acc as i64
    }

    /// Exact value set over one period (equivalently over all x >= 0):
    /// F is right-continuous with jumps only at multiples of the divisors,
    /// so the values at those breakpoints cover everything.
    pub fn value_set(&self) -> Result<std::collections::BTreeSet<i64>> {
        if self.terms.is_empty() {
            return Ok([0i64].into_iter().collect());
        }
        let period = self.period()?;
        let mut values = std::collections::BTreeSet::new();
        let mut breakpoints = std::collections::BTreeSet::new();
        breakpoints.insert(0u64);
        for &(n, _) in &self.terms {
            let mut k = 0;
            while k < period {
                breakpoints.insert(k);
                k += n;
            }
        }
        for k in breakpoints {
            values.insert(self.eval_integer(k));
        }
        Ok(values)
    }

    /// Recover the signed tuple: with M = lcm(n_i), entry M/n_i with
    /// multiplicity |c_i|, on the side given by the sign of c_i.
    pub fn to_tuple(&self) -> Result<SignedTuple> {
        if self.terms.is_empty() {
            return Err(Error::InvalidInput(
                "the zero step function has no tuple".into(),
            ));
        }
        let m = self.period()?;
        let mut positives = Vec::new();
        let mut negatives = Vec::new();
        for &(n, c) in &self.terms {
            let entry = m / n;
            let side = if c > 0 { &mut positives } else { &mut negatives };
            for _ in 0..c.unsigned_abs() {
                side.push(entry);
            }
        }
        SignedTuple::new(positives, negatives)
    }

    /// Text form "+1/10 +1/90 -1/45": whitespace-separated signed c/n terms.
    pub fn parse(text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for token in text.split_whitespace() {
            let (c, n) = token
                .split_once('/')
                .ok_or_else(|| Error::InvalidInput(format!("bad step term {token:?}")))?;
            let c: i64 = c
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad step coefficient {c:?}")))?;
            let n: u64 = n
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad step divisor {n:?}")))?;
            terms.push((n, c));
        }
        StepFunction::new(terms)
    }
}

impl std::fmt::Display for StepFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|&(n, c)| format!("{c:+}/{n}"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// The quotient with weights (-u_i(X) mod l, v_j(X) mod l). Requires every
/// fractional part to be nonzero; Gorenstein by balance. When the weights and
/// l share a factor the same torus point is generated by a smaller order, so
/// the stored quotient is reduced to that faithful form.
pub fn family_to_quotient(
    fam: &FactorialRatioFamily,
    l: u64,
    x: &[i64],
) -> Result<CyclicQuotient> {
    if !fam.is_balanced() {
        return Err(Error::InvalidInput(
            "quotient construction needs a balanced family".into(),
        ));
    }
    if l < 2 {
        return Err(Error::InvalidInput("order must be at least 2".into()));
    }
    let mut weights = Vec::new();
    for (forms, negate) in [(fam.numerators(), true), (fam.denominators(), false)] {
        for form in forms {
            let value = form.eval_int(x)?;
            let r = value.rem_euclid(l as i128) as u64;
            if r == 0 {
                return Err(Error::DegenerateCoordinate {
                    form: format!("{form}(X) = {value}"),
                    order: l,
                });
            }
            weights.push(if negate { l - r } else { r });
        }
    }
    let g = crate::arith::gcd_all(weights.iter().copied().chain([l]));
    if g > 1 {
        for w in &mut weights {
            *w /= g;
        }
        return CyclicQuotient::new(weights, l / g);
    }
    CyclicQuotient::new(weights, l)
}

#[derive(Debug, Clone)]
pub struct HarnessCounterexample {
    pub l: u64,
    pub x: Vec<i64>,
    pub quotient: CyclicQuotient,
    pub mld: Rational,
}

/// Outcome of the two-sided check: the exact integrality verdict versus the
/// minimal log-discrepancy bound over all constructed quotients.
#[derive(Debug, Clone)]
pub struct HarnessReport {
    pub verdict: IntegralityVerdict,
    pub mld_bound: u64,
    pub mld_bound_holds: bool,
    pub counterexample: Option<HarnessCounterexample>,
    pub quotients_checked: u64,
    pub agree: bool,
}

/// For a balanced family: integrality of all values is equivalent to every
/// derived quotient having Shokurov mld at least the numerator count. The
/// harness decides the left side exactly and scans the right side over
/// l <= l_max and X in {0..box}^d, reporting the lexicographically first
/// counterexample in (l, X) order when the bound fails.
pub fn theorem10_harness(
    fam: &FactorialRatioFamily,
    l_max: u64,
    box_max: u64,
) -> Result<HarnessReport> {
    if !fam.is_balanced() {
        return Err(Error::InvalidInput("harness needs a balanced family".into()));
    }
    let verdict = fam.decide_integrality()?;
    let k = fam.numerators().len() as u64;
    let bound = Rational::from_integer(BigInt::from(k));

    let mut checked = 0u64;
    let mut counterexample = None;
    'outer: for l in 2..=l_max {
        let mut x = vec![0i64; fam.dim()];
        loop {
            match family_to_quotient(fam, l, &x) {
                Ok(quotient) => {
                    checked += 1;
                    let mld = quotient.mld(crate::singular::MldKind::Shokurov);
                    if !mld.value.at_least(&bound) {
                        counterexample = Some(HarnessCounterexample {
                            l,
                            x: x.clone(),
                            mld: mld
                                .value
                                .as_rational()
                                .expect("violating mld is finite")
                                .clone(),
                            quotient,
                        });
                        break 'outer;
                    }
                }
                Err(Error::DegenerateCoordinate { .. }) => {}
                Err(e) => return Err(e),
            }
            if !advance(&mut x, box_max as i64) {
                break;
            }
        }
    }
    let holds = counterexample.is_none();
    let integral = verdict.status == crate::ratios::IntegralityStatus::Integral;
    Ok(HarnessReport {
        verdict,
        mld_bound: k,
        mld_bound_holds: holds,
        counterexample,
        quotients_checked: checked,
        agree: integral == holds,
    })
}

fn advance(x: &mut [i64], max: i64) -> bool {
    for i in (0..x.len()).rev() {
        if x[i] < max {
            x[i] += 1;
            for v in &mut x[i + 1..] {
                *v = 0;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::ratios::{families, IntegralityStatus};

    fn tuple(text: &str) -> SignedTuple {
        SignedTuple::parse(text).unwrap()
    }

    #[test]
    fn tuple_construction_canonicalizes() {
        let t = tuple("1,9;5,3,2");
        assert_eq!(t.positives(), &[9, 1]);
        assert_eq!(t.negatives(), &[5, 3, 2]);
        assert_eq!(t.to_string(), "9,1;2,3,5");
        // Non-primitive input is scaled down.
        assert_eq!(SignedTuple::new(vec![4], vec![2, 2]).unwrap().to_string(), "2;1,1");
        assert!(SignedTuple::new(vec![3], vec![1, 1]).is_err());
        assert!(SignedTuple::new(vec![], vec![]).is_err());
    }

    #[test]
    fn tuple_to_family_examples() {
        let fam = tuple("9,1;2,3,5").to_family();
        assert_eq!(fam.ratio_value(&[1]).unwrap(), rat(362880 / 120 / 6 / 2, 1));
        assert!(fam.is_balanced());

        let catalan_diag = tuple("2,2;1,1,2").to_family();
        assert_eq!(catalan_diag.ratio_value(&[3]).unwrap(), rat(20, 1)); // 6!6!/(3!3!6!)
        let mmm_last = tuple("30,1;6,10,15").to_family();
        assert!(mmm_last.is_balanced());
        assert_eq!(mmm_last.numerators().len(), 2);
    }

    #[test]
    fn tuple_to_step_examples() {
        let s = tuple("9,1;2,3,5").to_step().unwrap();
        assert_eq!(
            s.terms(),
            &[(10, 1), (18, -1), (30, -1), (45, -1), (90, 1)]
        );
        assert_eq!(s.to_string(), "+1/10 -1/18 -1/30 -1/45 +1/90");

        let merged = tuple("2,2;1,1,2").to_step().unwrap();
        assert_eq!(merged.terms(), &[(1, 1), (2, -2)]);
    }

    #[test]
    fn step_round_trip_on_irreducible_tuples() {
        for text in ["9,1;2,3,5", "30,1;6,10,15", "14,1;3,5,7", "2;1,1", "4;1,3"] {
            let t = tuple(text);
            assert!(t.is_irreducible());
            assert_eq!(t.to_step().unwrap().to_tuple().unwrap(), t);
        }
    }

    #[test]
    fn step_function_invariant_enforced() {
        assert!(StepFunction::new(vec![(2, 1)]).is_err());
        let zero = StepFunction::new(vec![(2, 1), (2, -1)]).unwrap();
        assert!(zero.is_zero());
        assert_eq!(zero.value_set().unwrap().into_iter().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn step_parse_display_round_trip() {
        let s = StepFunction::parse("+1/10 +1/90 -1/45 -1/30 -1/18").unwrap();
        assert_eq!(s, tuple("9,1;2,3,5").to_step().unwrap());
        assert_eq!(StepFunction::parse(&s.to_string()).unwrap(), s);
        assert!(StepFunction::parse("+1/10").is_err());
    }

    #[test]
    fn terminality_condition_examples() {
        let t = tuple("9,1;2,3,5");
        assert!(t.terminality_condition(11, 2).unwrap());
        for l in 11..=200 {
            assert!(t.terminality_condition(l, 2).unwrap(), "l = {l}");
        }
        let unstable = tuple("1,1,1,1;4");
        assert!(!unstable.terminality_condition(5, 2).unwrap());
    }

    #[test]
    fn stability_examples() {
        assert!(tuple("9,1;2,3,5").is_stable().unwrap());
        assert!(!tuple("7,1;2,2,4").is_stable().unwrap());
        assert!(tuple("6,10;3,5,8").is_stable().unwrap());
        assert!(matches!(
            tuple("2,2;1,3").is_stable(),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn family_to_quotient_examples() {
        let q = family_to_quotient(&families::catalan(), 7, &[1, 2]).unwrap();
        assert_eq!(q, CyclicQuotient::new(vec![5, 3, 1, 2, 3], 7).unwrap());
        assert!(q.is_gorenstein());

        let q = family_to_quotient(&tuple("9,1;2,3,5").to_family(), 11, &[1]).unwrap();
        assert_eq!(q, CyclicQuotient::new(vec![2, 10, 2, 3, 5], 11).unwrap());
        assert!(q.is_gorenstein());

        assert!(matches!(
            family_to_quotient(&families::catalan(), 2, &[1, 1]),
            Err(Error::DegenerateCoordinate { .. })
        ));
    }

    #[test]
    fn family_to_quotient_reduces_unfaithful_weights() {
        // Catalan at l = 9, X = (3, 3): all residues share the factor 3.
        let q = family_to_quotient(&families::catalan(), 9, &[3, 3]).unwrap();
        assert_eq!(q.order(), 3);
        assert!(q.is_gorenstein());
    }

    #[test]
    fn harness_on_named_families() {
        let report = theorem10_harness(&families::catalan(), 40, 10).unwrap();
        assert_eq!(report.verdict.status, IntegralityStatus::Integral);
        assert!(report.mld_bound_holds);
        assert!(report.agree);

        let report = theorem10_harness(&families::reversed_catalan(), 40, 10).unwrap();
        assert_eq!(report.verdict.status, IntegralityStatus::NonIntegral);
        assert!(!report.mld_bound_holds);
        assert!(report.agree);
        assert!(report.counterexample.unwrap().l <= 4);

        let report = theorem10_harness(&families::picon_a(), 30, 6).unwrap();
        assert_eq!(report.verdict.status, IntegralityStatus::Integral);
        assert!(report.agree);
    }

    #[test]
    fn stability_matches_integrality_on_small_tuples() {
        // All primitive tuples with d positives, d+1 negatives, entries <= 12.
        let mut corpus: Vec<SignedTuple> = Vec::new();
        for q1 in 1..=12u64 {
            for q2 in 1..=q1 {
                if let Ok(t) = SignedTuple::new(vec![q1 + q2], vec![q1, q2]) {
                    corpus.push(t);
                }
            }
        }
        for p1 in 1..=12u64 {
            for p2 in 1..=p1 {
                for q1 in 1..=12u64 {
                    for q2 in 1..=q1 {
                        for q3 in 1..=q2 {
                            if p1 + p2 != q1 + q2 + q3 {
                                continue;
                            }
                            if let Ok(t) = SignedTuple::new(vec![p1, p2], vec![q1, q2, q3]) {
                                corpus.push(t);
                            }
                        }
                    }
                }
            }
        }
        corpus.sort();
        corpus.dedup();
        assert!(corpus.len() > 100);
        for t in corpus {
            let stable = t.is_stable().unwrap();
            let verdict = t.to_family().decide_integrality().unwrap();
            assert_eq!(
                stable,
                verdict.status == IntegralityStatus::Integral,
                "tuple {t}"
            );
        }
    }

    #[test]
    fn stable_tuples_give_high_mld_quotients() {
        let t = tuple("9,1;2,3,5");
        let fam = t.to_family();
        let bound = rat(2, 1);
        for l in 2u64..=100 {
            if t.signed_entries().iter().any(|&e| (e.unsigned_abs()).gcd(&l) != 1) {
                continue;
            }
            for x in 1..=5i64 {
                let q = family_to_quotient(&fam, l, &[x]).unwrap();
                assert!(q.is_gorenstein());
                let mld = q.mld(crate::singular::MldKind::Shokurov);
                assert!(mld.value.at_least(&bound), "l={l} x={x}");
            }
        }
    }
}
