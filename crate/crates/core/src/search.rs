//! Exhaustive search over tuples for extremal path counts, closed-form
//! comparisons, and the extremal families.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::dag::vertex_kinds;
use crate::error::{Error, Result};
use crate::rho::{decode, is_valid, tuple_mu_as, RhoTuple, TupleClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Prune {
    /// Two arcs with labels below `i` both end right after tail `i`.
    Lemma4,
    /// Three consecutive vertices of the same kind.
    Lemma5,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpec {
    /// Tuple length.
    pub n: usize,
    pub class: TupleClass,
    pub connectivity: usize,
    pub simple_only: bool,
    pub prunes: BTreeSet<Prune>,
    /// Maximum number of tuples generated before the search gives up.
    pub budget: u64,
}

impl SearchSpec {
    pub fn new(n: usize, class: TupleClass, connectivity: usize) -> SearchSpec {
        SearchSpec {
            n,
            class,
            connectivity,
            simple_only: false,
            prunes: BTreeSet::new(),
            budget: u64::MAX,
        }
    }

    pub fn simple(mut self) -> SearchSpec {
        self.simple_only = true;
        self
    }

    pub fn with_prune(mut self, p: Prune) -> SearchSpec {
        self.prunes.insert(p);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> SearchSpec {
        self.budget = budget;
        self
    }
}

/// True iff some `i` is the value of two labels `j1 < j2 <= i - 1`. In a
/// merged tuple the top value feeds the merged sink and is never a candidate.
pub fn lemma4_prunable(t: &RhoTuple) -> bool {
    let v = t.values();
    let top = match t.class() {
        TupleClass::BoundaryDeg2 => v.len(),
        TupleClass::Merged3Regular => v.len() - 1,
    };
    let mut seen = vec![0usize; v.len() + 2];
    for (idx, &r) in v.iter().enumerate() {
        let j = idx + 1;
        if r <= top && j < r {
            seen[r] += 1;
            if seen[r] >= 2 {
                return true;
            }
        }
    }
    false
}

/// True iff the decoded graph has three consecutive vertices of one kind.
pub fn lemma5_prunable(t: &RhoTuple) -> Result<bool> {
    let kinds = vertex_kinds(&decode(t)?)?;
    Ok(kinds.windows(3).any(|w| w[0] == w[1] && w[1] == w[2]))
}

/// Every tuple of the spec's length and class passing the validity, simplicity
/// and prune filters, in lexicographic order, with a flag telling whether the
/// budget ran out first.
pub fn enumerate_tuples(spec: &SearchSpec) -> (Vec<RhoTuple>, bool) {
    let mut out = Vec::new();
    let complete = walk_tuples(spec, |t, _| out.push(t.clone()));
    (out, complete)
}

/// Calls `visit` on every accepted tuple together with its number of paths;
/// returns false when the budget was exhausted.
fn walk_tuples(spec: &SearchSpec, mut visit: impl FnMut(&RhoTuple, BigUint)) -> bool {
    let len = spec.n;
    if len == 0 || (spec.class == TupleClass::Merged3Regular && len < 2) {
        return true;
    }
    let mut values = vec![0usize; len];
    let mut generated = 0u64;
    let mut complete = true;
    // Odometer over rho(i) in [i, len], lexicographic.
    for (i, v) in values.iter_mut().enumerate() {
        *v = i + 1;
    }
    loop {
        generated += 1;
        if generated > spec.budget {
            complete = false;
            break;
        }
        let t = RhoTuple::new(values.clone(), spec.class);
        if let Some(total) = accept(spec, &t) {
            visit(&t, total);
        }
        // Advance.
        let mut i = len;
        loop {
            if i == 0 {
                return complete;
            }
            if values[i - 1] < len {
                values[i - 1] += 1;
                for (j, v) in values.iter_mut().enumerate().skip(i) {
                    *v = j + 1;
                }
                break;
            }
            i -= 1;
        }
    }
    complete
}

fn accept(spec: &SearchSpec, t: &RhoTuple) -> Option<BigUint> {
    if !t.is_canonical() || !is_valid(t, spec.connectivity) {
        return None;
    }
    if spec.prunes.contains(&Prune::Lemma4) && lemma4_prunable(t) {
        return None;
    }
    if spec.prunes.contains(&Prune::Lemma5) && lemma5_prunable(t).unwrap_or(false) {
        return None;
    }
    if spec.simple_only && !decode(t).map(|d| d.is_simple()).unwrap_or(false) {
        return None;
    }
    tuple_mu_as::<BigUint>(t).ok().map(|m| m.total)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormComparison {
    pub formula: String,
    /// Decimal rendering of the bound; exact when `exact` is set.
    pub value: String,
    #[serde(with = "crate::decimal::option")]
    pub exact: Option<BigUint>,
    /// Whether the bound is stated to be attained at this size.
    pub tight_expected: bool,
    /// Search maximum equals the bound (only when the bound is an integer).
    pub equal: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub tuple: RhoTuple,
    #[serde(with = "crate::decimal")]
    pub total: BigUint,
    pub bound: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalReport {
    pub spec: SearchSpec,
    pub n: usize,
    #[serde(with = "crate::decimal::option")]
    pub max_total: Option<BigUint>,
    pub witnesses: Vec<RhoTuple>,
    /// Tuples that passed every filter.
    pub accepted: u64,
    pub complete: bool,
    pub closed_form_comparison: Option<ClosedFormComparison>,
    pub counterexample: Option<Counterexample>,
}

/// Maximum of the path count over the spec's tuples.
pub fn find_extremal(spec: &SearchSpec) -> ExtremalReport {
    let mut best: Option<BigUint> = None;
    let mut witnesses = Vec::new();
    let mut accepted = 0u64;
    let complete = walk_tuples(spec, |t, total| {
        accepted += 1;
        match &best {
            Some(b) if total < *b => {}
            Some(b) if total == *b => witnesses.push(t.clone()),
            _ => {
                best = Some(total);
                witnesses = vec![t.clone()];
            }
        }
    });
    ExtremalReport {
        spec: spec.clone(),
        n: spec.n,
        max_total: best,
        witnesses,
        accepted,
        complete,
        closed_form_comparison: None,
        counterexample: None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Conjecture {
    Conn,
    TwoEC,
    ThreeECFib,
    SimpleConn,
    Simple2EC,
}

impl FromStr for Conjecture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Conjecture> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "conn" | "connected" => Ok(Conjecture::Conn),
            "twoec" | "2ec" => Ok(Conjecture::TwoEC),
            "threeecfib" | "3ec" | "fibonacci" | "fib" => Ok(Conjecture::ThreeECFib),
            "simpleconn" => Ok(Conjecture::SimpleConn),
            "simple2ec" | "simpletwoec" => Ok(Conjecture::Simple2EC),
            other => Err(Error::Precondition(format!("unknown bound name {other:?}"))),
        }
    }
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conjecture::Conn => "conn",
            Conjecture::TwoEC => "two-ec",
            Conjecture::ThreeECFib => "fibonacci",
            Conjecture::SimpleConn => "simple-conn",
            Conjecture::Simple2EC => "simple-two-ec",
        })
    }
}

impl Conjecture {
    /// Search spec over graphs with `2n` vertices.
    pub fn spec(self, n: usize) -> SearchSpec {
        let len = n + 1;
        let class = TupleClass::Merged3Regular;
        match self {
            Conjecture::Conn => SearchSpec::new(len, class, 1),
            Conjecture::TwoEC => SearchSpec::new(len, class, 2),
            Conjecture::ThreeECFib => SearchSpec::new(len, class, 3),
            Conjecture::SimpleConn => SearchSpec::new(len, class, 1).simple(),
            Conjecture::Simple2EC => SearchSpec::new(len, class, 2).simple(),
        }
    }

    /// The bound for graphs with `2n` vertices.
    pub fn closed_form(self, n: usize) -> Result<ClosedFormComparison> {
        let n_i = n as i64;
        let (formula, exact, approx, tight) = match self {
            Conjecture::Conn => {
                if n < 3 {
                    return Err(Error::OutOfRange(format!("9*2^(n-3) needs n >= 3, got {n}")));
                }
                let v = BigUint::from(9u8) << (n - 3);
                ("9*2^(n-3)", Some(v), None, true)
            }
            Conjecture::TwoEC => ("2^n+1", Some((BigUint::one() << n) + 1u8), None, true),
            Conjecture::ThreeECFib => ("F(n+2)+1", Some(fibonacci(n + 2) + 1u8), None, true),
            Conjecture::SimpleConn => {
                let e = n_i - 5;
                if e >= 0 && e % 2 == 0 {
                    let v = BigUint::from(16u8) * BigUint::from(3u8).pow((e / 2) as u32);
                    ("16*sqrt(3)^(n-5)", Some(v), None, n >= 5)
                } else {
                    ("16*sqrt(3)^(n-5)", None, Some(16.0 * 3f64.sqrt().powi(e as i32)), false)
                }
            }
            Conjecture::Simple2EC => {
                if n % 2 == 0 {
                    let v = BigUint::from(3u8).pow((n / 2) as u32) + 1u8;
                    ("sqrt(3)^n+1", Some(v), None, n >= 2)
                } else {
                    ("sqrt(3)^n+1", None, Some(3f64.sqrt().powi(n_i as i32) + 1.0), false)
                }
            }
        };
        let value = match (&exact, approx) {
            (Some(v), _) => v.to_string(),
            (None, Some(a)) => format!("{a:.6}"),
            _ => unreachable!(),
        };
        Ok(ClosedFormComparison {
            formula: formula.into(),
            value,
            exact,
            tight_expected: tight,
            equal: None,
        })
    }
}

/// Runs the search for graphs on `2n` vertices and compares with the bound.
/// A maximum above the bound is recorded as a counterexample, never an error.
pub fn check_conjecture(name: Conjecture, n: usize) -> Result<ExtremalReport> {
    check_conjecture_with_budget(name, n, u64::MAX)
}

pub fn check_conjecture_with_budget(name: Conjecture, n: usize, budget: u64) -> Result<ExtremalReport> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    let mut cmp = name.closed_form(n)?;
    let spec = name.spec(n).with_budget(budget);
    let mut report = find_extremal(&spec);
    report.n = n;
    if let Some(max) = report.max_total.clone() {
        let exceeds = match &cmp.exact {
            Some(v) => {
                cmp.equal = Some(max == *v);
                max > *v
            }
            None => max.to_f64().unwrap_or(f64::INFINITY) > cmp.value.parse::<f64>().unwrap_or(f64::INFINITY),
        };
        if exceeds {
            report.counterexample = Some(Counterexample {
                tuple: report.witnesses[0].clone(),
                total: max,
                bound: cmp.value.clone(),
            });
        }
    }
    report.closed_form_comparison = Some(cmp);
    Ok(report)
}

/// `F(1) = F(2) = 1`.
pub fn fibonacci(n: usize) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..n {
        let c = &a + &b;
        a = b;
        b = c;
    }
    a
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Wedge,
    CorollaryConn,
    Corollary2EC,
    SimpleConnFamily,
    Simple2ECFamily,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "wedge" => Ok(Family::Wedge),
            "corollaryconn" | "conn" => Ok(Family::CorollaryConn),
            "corollary2ec" | "2ec" => Ok(Family::Corollary2EC),
            "simpleconnfamily" | "simpleconn" => Ok(Family::SimpleConnFamily),
            "simple2ecfamily" | "simple2ec" => Ok(Family::Simple2ECFamily),
            other => Err(Error::Precondition(format!("unknown family {other:?}"))),
        }
    }
}

impl Family {
    /// The search spec the family is extremal (or conjectured extremal) for.
    pub fn conjecture(self) -> Conjecture {
        match self {
            Family::Wedge => Conjecture::ThreeECFib,
            Family::CorollaryConn => Conjecture::Conn,
            Family::Corollary2EC => Conjecture::TwoEC,
            Family::SimpleConnFamily => Conjecture::SimpleConn,
            Family::Simple2ECFamily => Conjecture::Simple2EC,
        }
    }
}

/// The family member for graphs on `2n` vertices, as a merged tuple.
pub fn family_generator(name: Family, n: usize) -> Result<RhoTuple> {
    let out_of_range = |need: &str| Err(Error::OutOfRange(format!("{name:?} needs {need}, got n = {n}")));
    let values: Vec<usize> = match name {
        Family::Wedge => {
            if n < 2 {
                return out_of_range("n >= 2");
            }
            let mut v = vec![n + 1];
            v.extend(3..=n);
            v.extend([n + 1, n + 1]);
            v
        }
        Family::CorollaryConn => {
            if n < 3 {
                return out_of_range("n >= 3");
            }
            let mut v = vec![2];
            v.extend(2..n);
            v.extend([n + 1, n + 1]);
            v
        }
        Family::Corollary2EC => {
            if n < 1 {
                return out_of_range("n >= 1");
            }
            let mut v = vec![n + 1];
            v.extend(2..=n);
            v.push(n + 1);
            v
        }
        Family::SimpleConnFamily => {
            if n < 5 || n % 2 == 0 {
                return out_of_range("odd n >= 5");
            }
            let mut v = vec![3, 3, 3];
            let mut m = 5;
            while m < n {
                v.extend([m, m]);
                m += 2;
            }
            v.extend([n + 1, n + 1, n + 1]);
            v
        }
        Family::Simple2ECFamily => {
            if n < 2 || n % 2 == 1 {
                return out_of_range("even n >= 2");
            }
            let mut v = vec![n + 1];
            let mut m = 3;
            while m < n + 1 {
                v.extend([m, m]);
                m += 2;
            }
            v.extend([n + 1, n + 1]);
            v
        }
    };
    Ok(RhoTuple::merged(&values))
}
