//! Integrality of factorial-ratio families.
//!
//! A family is a pair of sets of linear forms with nonnegative integer
//! coefficients; its value at a lattice point X is the ratio of factorials
//! `prod u(X)! / prod v(X)!`. Landau's criterion reduces integrality of all
//! values to nonnegativity of the floor sum
//! `B(X) = sum floor(u(X)) - sum floor(v(X))` over the closed unit cube.
//!
//! `decide_integrality` is exact in dimensions 1 and 2: B is piecewise
//! constant, so it is enough to evaluate it at every breakpoint (1D) or on
//! every face of the line arrangement cut out by the integer level sets of
//! the forms (2D, via symbolic perturbation at the arrangement vertices).
//! Higher dimensions get a sampling falsifier and a direct big-integer scan,
//! which can refute but never certify.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{FactorialTable, LinearForm, Rational};
use crate::error::{Error, Result};

const DIRECT_SCAN_POINT_LIMIT: u64 = 10_000_000;
const SAMPLE_DENOMINATOR_LIMIT: u64 = 1_000_000;

/// Numerator/denominator sets of linear forms over a common dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorialRatioFamily {
    dim: usize,
    numerators: Vec<LinearForm>,
    denominators: Vec<LinearForm>,
}

/// Outcome of an integrality decision or search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IntegralityStatus {
    #[serde(rename = "INTEGRAL")]
    Integral,
    #[serde(rename = "NON_INTEGRAL")]
    NonIntegral,
    #[serde(rename = "UNDECIDED")]
    Undecided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecisionMethod {
    #[serde(rename = "BREAKPOINT_1D")]
    Breakpoint1d,
    #[serde(rename = "ARRANGEMENT_2D")]
    Arrangement2d,
    #[serde(rename = "SAMPLING")]
    Sampling,
    #[serde(rename = "DIRECT_SCAN")]
    DirectScan,
}

/// Concrete refutation: a rational point with a negative floor sum, or a
/// lattice point whose factorial ratio is not an integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub x: Vec<Rational>,
    pub b_value: Option<BigInt>,
    pub ratio: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralityVerdict {
    pub status: IntegralityStatus,
    pub witness: Option<Witness>,
    pub method: DecisionMethod,
}

#[derive(Debug, Serialize, Deserialize)]
struct FamilyJson {
    dim: usize,
    num: Vec<Vec<u64>>,
    den: Vec<Vec<u64>>,
}

impl FactorialRatioFamily {
    pub fn new(
        dim: usize,
        numerators: Vec<LinearForm>,
        denominators: Vec<LinearForm>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("family dimension must be positive".into()));
        }
        for f in numerators.iter().chain(&denominators) {
            if f.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: f.dim(),
                });
            }
        }
        if numerators.is_empty() && denominators.is_empty() {
            return Err(Error::InvalidInput("family needs at least one form".into()));
        }
        Ok(FactorialRatioFamily {
            dim,
            numerators,
            denominators,
        })
    }

    pub fn from_coeffs(dim: usize, num: &[&[u64]], den: &[&[u64]]) -> Result<Self> {
        let numerators = num
            .iter()
            .map(|c| LinearForm::new(c.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        let denominators = den
            .iter()
            .map(|c| LinearForm::new(c.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        FactorialRatioFamily::new(dim, numerators, denominators)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn numerators(&self) -> &[LinearForm] {
        &self.numerators
    }

    pub fn denominators(&self) -> &[LinearForm] {
        &self.denominators
    }

    /// Componentwise coefficient sums of numerators and denominators agree.
    pub fn is_balanced(&self) -> bool {
        (0..self.dim).all(|i| {
            let n: u64 = self.numerators.iter().map(|f| f.coeffs()[i]).sum();
            let d: u64 = self.denominators.iter().map(|f| f.coeffs()[i]).sum();
            n == d
        })
    }

    /// Exact value `prod u(X)! / prod v(X)!` at a nonnegative lattice point.
    pub fn ratio_value(&self, x: &[u64]) -> Result<Rational> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        let mut table = FactorialTable::new();
        let eval = |form: &LinearForm| -> u64 {
            form.coeffs()
                .iter()
                .zip(x)
                .map(|(&c, &xi)| c * xi)
                .sum()
        };
        let mut num = BigUint::one();
        for f in &self.numerators {
            num *= table.get(eval(f));
        }
        let mut den = BigUint::one();
        for f in &self.denominators {
            den *= table.get(eval(f));
        }
        Ok(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The floor sum `B(X) = sum floor(u(X)) - sum floor(v(X))`, exact.
    pub fn landau_b(&self, x: &[Rational]) -> Result<BigInt> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        let mut acc = BigInt::zero();
        for f in &self.numerators {
            acc += f.eval(x)?.floor().to_integer();
        }
        for f in &self.denominators {
            acc -= f.eval(x)?.floor().to_integer();
        }
        Ok(acc)
    }

    /// Exact integrality decision, dimensions 1 and 2 only.
    pub fn decide_integrality(&self) -> Result<IntegralityVerdict> {
        match self.dim {
            1 => Ok(self.decide_1d()),
            2 => Ok(self.decide_2d()),
            d => Err(Error::UnsupportedDimension { dim: d }),
        }
    }

    fn decide_1d(&self) -> IntegralityVerdict {
        // B is right-continuous and jumps only where some form value crosses
        // an integer, i.e. at x = c/a for a coefficient a. Those points plus
        // the right endpoint x = 1 cover every value B takes on [0, 1].
        let mut breakpoints: BTreeSet<Rational> = BTreeSet::new();
        for f in self.numerators.iter().chain(&self.denominators) {
            let a = f.coeffs()[0];
            for c in 0..=a {
                breakpoints.insert(Rational::new(BigInt::from(c), BigInt::from(a)));
            }
        }
        for x in breakpoints {
            let b = self.landau_b(std::slice::from_ref(&x)).expect("dim checked");
            if b.is_negative() {
                return IntegralityVerdict {
                    status: IntegralityStatus::NonIntegral,
                    witness: Some(Witness {
                        x: vec![x],
                        b_value: Some(b),
                        ratio: None,
                    }),
                    method: DecisionMethod::Breakpoint1d,
                };
            }
        }
        IntegralityVerdict {
            status: IntegralityStatus::Integral,
            witness: None,
            method: DecisionMethod::Breakpoint1d,
        }
    }

    fn decide_2d(&self) -> IntegralityVerdict {
        match arrangement::decide(self) {
            Some(witness) => IntegralityVerdict {
                status: IntegralityStatus::NonIntegral,
                witness: Some(witness),
                method: DecisionMethod::Arrangement2d,
            },
            None => IntegralityVerdict {
                status: IntegralityStatus::Integral,
                witness: None,
                method: DecisionMethod::Arrangement2d,
            },
        }
    }

    /// Sampling falsifier for any dimension: a full grid with denominator
    /// `grid_q` plus seeded random rational points. Interior grid points are
    /// scanned before boundary ones so that a genuinely d-parameter witness
    /// is preferred when one exists. Never claims INTEGRAL.
    pub fn falsify_integrality(
        &self,
        samples: u64,
        grid_q: u64,
        seed: u64,
    ) -> Result<IntegralityVerdict> {
        if grid_q == 0 {
            return Err(Error::InvalidInput("grid denominator must be >= 1".into()));
        }
        let q = BigInt::from(grid_q);
        let mut point = vec![0u64; self.dim];
        for interior_pass in [true, false] {
            loop {
                let boundary = point.iter().any(|&c| c == 0 || c == grid_q);
                if boundary != interior_pass {
                    let x: Vec<Rational> = point
                        .iter()
                        .map(|&c| Rational::new(BigInt::from(c), q.clone()))
                        .collect();
                    let b = self.landau_b(&x)?;
                    if b.is_negative() {
                        return Ok(IntegralityVerdict {
                            status: IntegralityStatus::NonIntegral,
                            witness: Some(Witness {
                                x,
                                b_value: Some(b),
                                ratio: None,
                            }),
                            method: DecisionMethod::Sampling,
                        });
                    }
                }
                if !next_point(&mut point, grid_q) {
                    break;
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let x: Vec<Rational> = (0..self.dim)
                .map(|_| {
                    let den = rng.random_range(1..=SAMPLE_DENOMINATOR_LIMIT);
                    let num = rng.random_range(0..=den);
                    Rational::new(BigInt::from(num), BigInt::from(den))
                })
                .collect();
            let b = self.landau_b(&x)?;
            if b.is_negative() {
                return Ok(IntegralityVerdict {
                    status: IntegralityStatus::NonIntegral,
                    witness: Some(Witness {
                        x,
                        b_value: Some(b),
                        ratio: None,
                    }),
                    method: DecisionMethod::Sampling,
                });
            }
        }
        Ok(IntegralityVerdict {
            status: IntegralityStatus::Undecided,
            witness: None,
            method: DecisionMethod::Sampling,
        })
    }

    /// Direct check of the defining property on `{0..box}^d`. Evidence only:
    /// the status is never INTEGRAL, a clean scan reports UNDECIDED.
    pub fn direct_scan(&self, box_max: u64) -> Result<IntegralityVerdict> {
        if box_max == 0 {
            return Err(Error::InvalidInput("scan box must be >= 1".into()));
        }
        let points = (box_max + 1)
            .checked_pow(self.dim as u32)
            .filter(|&p| p <= DIRECT_SCAN_POINT_LIMIT)
            .ok_or(Error::BudgetExceeded {
                limit: DIRECT_SCAN_POINT_LIMIT,
            })?;
        let _ = points;
        let mut point = vec![0u64; self.dim];
        loop {
            let value = self.ratio_value(&point)?;
            if !value.is_integer() {
                let x = point
                    .iter()
                    .map(|&c| Rational::from_integer(BigInt::from(c)))
                    .collect();
                return Ok(IntegralityVerdict {
                    status: IntegralityStatus::NonIntegral,
                    witness: Some(Witness {
                        x,
                        b_value: None,
                        ratio: Some(value),
                    }),
                    method: DecisionMethod::DirectScan,
                });
            }
            if !next_point(&mut point, box_max) {
                break;
            }
        }
        Ok(IntegralityVerdict {
            status: IntegralityStatus::Undecided,
            witness: None,
            method: DecisionMethod::DirectScan,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim,
            "num": self.numerators.iter().map(|f| f.coeffs().to_vec()).collect::<Vec<_>>(),
            "den": self.denominators.iter().map(|f| f.coeffs().to_vec()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let parsed: FamilyJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidInput(format!("bad family JSON: {e}")))?;
        let num: Vec<&[u64]> = parsed.num.iter().map(|v| v.as_slice()).collect();
        let den: Vec<&[u64]> = parsed.den.iter().map(|v| v.as_slice()).collect();
        FactorialRatioFamily::from_coeffs(parsed.dim, &num, &den)
    }
}

/// Odometer step through `{0..=max}^d` in ascending lexicographic order.
fn next_point(point: &mut [u64], max: u64) -> bool {
    for i in (0..point.len()).rev() {
        if point[i] < max {
            point[i] += 1;
            for p in &mut point[i + 1..] {
                *p = 0;
            }
            return true;
        }
    }
    false
}

/// Classical families used throughout the test corpus and the CLI docs.
pub mod families {
    use super::FactorialRatioFamily;

    /// Binomial coefficients: (n+k)! / (n! k!).
    pub fn binomial() -> FactorialRatioFamily {
        FactorialRatioFamily::from_coeffs(2, &[&[1, 1]], &[&[1, 0], &[0, 1]]).unwrap()
    }

    /// Catalan's ratio: (2n)!(2k)! / (n! k! (n+k)!).
    pub fn catalan() -> FactorialRatioFamily {
        FactorialRatioFamily::from_coeffs(2, &[&[2, 0], &[0, 2]], &[&[1, 0], &[0, 1], &[1, 1]])
            .unwrap()
    }

    /// Catalan's ratio upside down; the standard non-integral control.
    pub fn reversed_catalan() -> FactorialRatioFamily {
        FactorialRatioFamily::from_coeffs(2, &[&[1, 0], &[0, 1], &[1, 1]], &[&[2, 0], &[0, 2]])
            .unwrap()
    }

    /// Landau's example: (4n)!(4k)! / ((2n+k)!(n+2k)! n! k!).
    pub fn landau() -> FactorialRatioFamily {
        FactorialRatioFamily::from_coeffs(
            2,
            &[&[4, 0], &[0, 4]],
            &[&[2, 1], &[1, 2], &[1, 0], &[0, 1]],
        )
        .unwrap()
    }

    /// Picon: (2n)!(4k)!(4n+2k)! / ((n!)^2 (k!)^2 ((n+k)!)^2 (2n+2k)!).
    pub fn picon_a() -> FactorialRatioFamily {
        FactorialRatioFamily::from_coeffs(
            2,
            &[&[2, 0], &[0, 4], &[4, 2]],
            &[&[1, 0], &[1, 0], &[0, 1], &[0, 1], &[1, 1], &[1, 1], &[2, 2]],
        )
        .unwrap()
    }

    /// Picon: (12n)! n! (12k)! k! / ((3n)!(4n)!(3k)!(4k)! ((n+k)!)^6).
    pub fn picon_b() -> FactorialRatioFamily {
        FactorialRatioFamily::from_coeffs(
            2,
            &[&[12, 0], &[1, 0], &[0, 12], &[0, 1]],
            &[
                &[3, 0],
                &[4, 0],
                &[0, 3],
                &[0, 4],
                &[1, 1],
                &[1, 1],
                &[1, 1],
                &[1, 1],
                &[1, 1],
                &[1, 1],
            ],
        )
        .unwrap()
    }
}

/// Exact 2D cell enumeration for the floor sum B over the closed unit cube.
mod arrangement {
    use super::*;

    /// A line a x + b y = c with nonnegative integer data, normalized.
    #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
    struct Line {
        a: u64,
        b: u64,
        c: u64,
    }

    impl Line {
        fn normalized(a: u64, b: u64, c: u64) -> Line {
            let g = crate::arith::gcd_all([a, b, c]);
            if g > 1 {
                Line {
                    a: a / g,
                    b: b / g,
                    c: c / g,
                }
            } else {
                Line { a, b, c }
            }
        }

        fn contains(&self, x: &Rational, y: &Rational) -> bool {
            let lhs = x * Rational::from_integer(BigInt::from(self.a))
                + y * Rational::from_integer(BigInt::from(self.b));
            lhs == Rational::from_integer(BigInt::from(self.c))
        }
    }

    type Vertex = (Rational, Rational);

    /// Returns a witness with B < 0 if one exists, None if B >= 0 on the cube.
    pub(super) fn decide(fam: &FactorialRatioFamily) -> Option<Witness> {
        let lines = collect_lines(fam);
        let vertices = collect_vertices(&lines);

        // Interior vertices first: a negative cell deep inside the cube is a
        // genuinely two-parameter failure, which is what callers report.
        let mut ordered: Vec<&Vertex> = vertices.iter().collect();
        ordered.sort_by_key(|v| {
            let deg = [&v.0, &v.1]
                .iter()
                .filter(|c| c.is_integer())
                .count();
            (deg, (*v).clone())
        });

        // Pass 1: B at the vertices themselves.
        for v in &ordered {
            let x = [v.0.clone(), v.1.clone()];
            let b = fam.landau_b(&x).expect("dim checked");
            if b.is_negative() {
                return Some(Witness {
                    x: x.to_vec(),
                    b_value: Some(b),
                    ratio: None,
                });
            }
        }

        // Pass 2: every edge and every open cell incident to each vertex,
        // via symbolic perturbation along edge and sector directions.
        for v in &ordered {
            let dirs = directions_at(&lines, v);
            for dir in dirs {
                let (b, point) = perturbed(fam, v, dir);
                if b.is_negative() {
                    debug_assert_eq!(fam.landau_b(&point).unwrap(), b);
                    return Some(Witness {
                        x: point,
                        b_value: Some(b),
                        ratio: None,
                    });
                }
            }
        }
        None
    }

    fn collect_lines(fam: &FactorialRatioFamily) -> Vec<Line> {
        let mut lines: BTreeSet<Line> = BTreeSet::new();
        // Cube edges participate so that cells are never cut by the boundary.
        lines.insert(Line { a: 1, b: 0, c: 0 });
        lines.insert(Line { a: 1, b: 0, c: 1 });
        lines.insert(Line { a: 0, b: 1, c: 0 });
        lines.insert(Line { a: 0, b: 1, c: 1 });
        for f in fam.numerators.iter().chain(&fam.denominators) {
            let (a, b) = (f.coeffs()[0], f.coeffs()[1]);
            for c in 0..=a + b {
                lines.insert(Line::normalized(a, b, c));
            }
        }
        lines.into_iter().collect()
    }

    fn collect_vertices(lines: &[Line]) -> BTreeSet<Vertex> {
        let mut vertices = BTreeSet::new();
        let one = Rational::one();
        let zero = Rational::zero();
        for (i, l1) in lines.iter().enumerate() {
            for l2 in &lines[i + 1..] {
                let det = l1.a as i128 * l2.b as i128 - l2.a as i128 * l1.b as i128;
                if det == 0 {
                    continue;
                }
                let x = Rational::new(
                    BigInt::from(l1.c as i128 * l2.b as i128 - l2.c as i128 * l1.b as i128),
                    BigInt::from(det),
                );
                let y = Rational::new(
                    BigInt::from(l1.a as i128 * l2.c as i128 - l2.a as i128 * l1.c as i128),
                    BigInt::from(det),
                );
                if x >= zero && x <= one && y >= zero && y <= one {
                    vertices.insert((x, y));
                }
            }
        }
        vertices
    }

    /// Edge directions and sector-midpoint directions at a vertex, filtered
    /// to those that stay inside the closed cube.
    fn directions_at(lines: &[Line], v: &Vertex) -> Vec<(i64, i64)> {
        let mut dirs: Vec<(i64, i64)> = Vec::new();
        for l in lines {
            if l.contains(&v.0, &v.1) {
                let d = (l.b as i64, -(l.a as i64));
                dirs.push(d);
                dirs.push((-d.0, -d.1));
            }
        }
        dirs.sort_by(|&p, &q| angle_cmp(p, q));
        dirs.dedup();

        let mut out: Vec<(i64, i64)> = Vec::new();
        let n = dirs.len();
        for i in 0..n {
            out.push(dirs[i]);
            let next = dirs[(i + 1) % n];
            // Sector interior: the sum of two adjacent (angle < pi) rays.
            out.push((dirs[i].0 + next.0, dirs[i].1 + next.1));
        }
        out.retain(|&(dx, dy)| {
            if (dx, dy) == (0, 0) {
                return false;
            }
            let ok_x = if v.0.is_zero() {
                dx >= 0
            } else if v.0.is_one() {
                dx <= 0
            } else {
                true
            };
            let ok_y = if v.1.is_zero() {
                dy >= 0
            } else if v.1.is_one() {
                dy <= 0
            } else {
                true
            };
            ok_x && ok_y
        });
        out
    }

    /// Strict angular order starting from the positive x-axis.
    fn angle_cmp(p: (i64, i64), q: (i64, i64)) -> std::cmp::Ordering {
        fn half(d: (i64, i64)) -> u8 {
            // Upper half-plane (including positive x-axis) first.
            if d.1 > 0 || (d.1 == 0 && d.0 > 0) {
                0
            } else {
                1
            }
        }
        half(p).cmp(&half(q)).then_with(|| {
            let cross = p.0 as i128 * q.1 as i128 - p.1 as i128 * q.0 as i128;
            cross.cmp(&0).reverse()
        })
    }

    /// B at `v + eps * dir` for an infinitesimal eps > 0, together with a
    /// concrete rational point inside the sampled face that realizes it.
    fn perturbed(
        fam: &FactorialRatioFamily,
        v: &Vertex,
        dir: (i64, i64),
    ) -> (BigInt, Vec<Rational>) {
        let point = [v.0.clone(), v.1.clone()];
        let mut b = BigInt::zero();
        // Step small enough that no form value and no cube wall is crossed.
        let mut max_step: Option<Rational> = None;
        let mut tighten = |candidate: Rational| {
            debug_assert!(candidate > Rational::zero());
            if max_step.as_ref().map_or(true, |m| candidate < *m) {
                max_step = Some(candidate);
            }
        };

        for (forms, sign) in [(&fam.numerators, 1), (&fam.denominators, -1)] {
            for f in forms.iter() {
                let value = f.eval(&point).expect("dim checked");
                let slope =
                    f.coeffs()[0] as i128 * dir.0 as i128 + f.coeffs()[1] as i128 * dir.1 as i128;
                let floor = value.floor().to_integer();
                let pert_floor = if value.is_integer() && slope < 0 {
                    &floor - BigInt::one()
                } else {
                    floor.clone()
                };
                if sign > 0 {
                    b += pert_floor;
                } else {
                    b -= pert_floor;
                }
                if slope != 0 {
                    let slope_rat = Rational::from_integer(BigInt::from(slope));
                    let dist = if slope > 0 {
                        let next = if value.is_integer() {
                            &value + Rational::one()
                        } else {
                            Rational::from_integer(&floor + BigInt::one())
                        };
                        (next - &value) / slope_rat
                    } else {
                        let prev = if value.is_integer() {
                            &value - Rational::one()
                        } else {
                            Rational::from_integer(floor)
                        };
                        (&value - prev) / -slope_rat
                    };
                    tighten(dist);
                }
            }
        }
        for (coord, d) in [(&v.0, dir.0), (&v.1, dir.1)] {
            if d > 0 {
                tighten((Rational::one() - coord) / Rational::from_integer(BigInt::from(d)));
            } else if d < 0 {
                tighten(coord / Rational::from_integer(BigInt::from(-d)));
            }
        }

        let step = max_step.expect("a direction always crosses the cube wall")
            / Rational::from_integer(BigInt::from(2));
        let concrete = vec![
            &v.0 + &step * Rational::from_integer(BigInt::from(dir.0)),
            &v.1 + &step * Rational::from_integer(BigInt::from(dir.1)),
        ];
        (b, concrete)
    }
}
