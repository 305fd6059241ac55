//! From a Chow J-invariant to Morava K-theory data of the maximal orthogonal
//! Grassmannian.
//!
//! The J-invariant of a quadratic form records which generators `e_i` of
//! `Ch*(SO_m)` vanish on the generic point. Admissible J are exactly the sets
//! of the form `{ (2i-1) 2^b : b >= a_i }`, so they are equivalent to an
//! exponent tuple `a`, and the quotient by the tuple ideal describes the
//! cohomology of the form in every theory.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::Presentation;
use crate::base::{binom_mod2, TheoryFlavor};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChowJInput {
    pub n: u32,
    pub m: u32,
    #[serde(rename = "J")]
    pub j: BTreeSet<u32>,
}

impl ChowJInput {
    pub fn new(n: u32, m: u32, j: impl IntoIterator<Item = u32>) -> Self {
        ChowJInput { n, m, j: j.into_iter().collect() }
    }

    /// Parses a comma separated index list; the empty string is the generic J.
    pub fn parse(n: u32, m: u32, list: &str) -> Result<Self> {
        let mut j = BTreeSet::new();
        for part in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let i = part.parse::<u32>().map_err(|_| Error::Parse(format!("not an index: {part:?}")))?;
            j.insert(i);
        }
        Ok(ChowJInput { n, m, j })
    }

    /// The admissible J of an exponent tuple.
    pub fn from_tuple(n: u32, m: u32, a: &[u32]) -> Result<Self> {
        let chow = Presentation::new(TheoryFlavor::Chow, m)?;
        if a.len() != chow.r as usize {
            return invalid(format!("expected {} exponents, got {}", chow.r, a.len()));
        }
        let mut j = BTreeSet::new();
        for (i, (&ai, &ki)) in a.iter().zip(&chow.truncations).enumerate() {
            if ai > ki {
                return invalid(format!("exponent a_{} = {ai} exceeds k_{} = {ki}", i + 1, i + 1));
            }
            j.extend(chain(2 * i as u32 + 1, ai, chow.s));
        }
        Ok(ChowJInput { n, m, j })
    }
}

fn chain(odd: u32, from: u32, top: u32) -> impl Iterator<Item = u32> {
    (from..32).map(move |b| odd << b).take_while(move |&i| i <= top)
}

/// The exponent tuple of an admissible J, or the indices that break the
/// expansion rule.
pub fn validate_chow_j(input: &ChowJInput) -> Result<Vec<u32>> {
    TheoryFlavor::ConnectiveMorava { n: input.n }.validate()?;
    let chow = Presentation::new(TheoryFlavor::Chow, input.m)?;
    let out_of_range: Vec<u32> = input.j.iter().copied().filter(|&i| i == 0 || i > chow.s).collect();
    let mut tuple = Vec::with_capacity(chow.r as usize);
    let mut missing = Vec::new();
    for (i, &k) in chow.truncations.iter().enumerate() {
        let odd = 2 * i as u32 + 1;
        let a = (0..k).find(|&b| input.j.contains(&(odd << b))).unwrap_or(k);
        missing.extend(chain(odd, a, chow.s).filter(|x| !input.j.contains(x)));
        tuple.push(a);
    }
    if missing.is_empty() && out_of_range.is_empty() {
        Ok(tuple)
    } else {
        missing.sort_unstable();
        Err(Error::Inadmissible { missing, out_of_range })
    }
}

/// The cohomology of the form with J-invariant `input` in the given theory:
/// the quotient of the theory's algebra by the tuple ideal.
pub fn j_invariant(flavor: TheoryFlavor, input: &ChowJInput) -> Result<Presentation> {
    let tuple = validate_chow_j(input)?;
    let p = Presentation::new(flavor, input.m)?;
    // Periodic Morava K-theory only sees generators below 2^n.
    p.quotient_by_tuple(&tuple[..p.r as usize])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MotiveSummary {
    pub layer_rank: u64,
    pub layer_count: u64,
    pub indecomposable: bool,
    pub summand_rank: u64,
    pub summand_count: u64,
}

pub fn motive_summary(input: &ChowJInput) -> Result<MotiveSummary> {
    let q = j_invariant(TheoryFlavor::PeriodicMorava { n: input.n }, input)?;
    let layer_rank = q.rank();
    let total = 1u64 << ((input.m - 1) / 2);
    let layer_count = total / layer_rank;
    let n = input.n;
    let indecomposable = input.m <= (1 << (n + 1)) - 2 || input.j.contains(&((1 << n) - 1));
    let (summand_rank, summand_count) =
        if indecomposable { (layer_rank, layer_count) } else { (layer_rank / 2, 2 * layer_count) };
    Ok(MotiveSummary { layer_rank, layer_count, indecomposable, summand_rank, summand_count })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureViolation {
    pub i: u32,
    pub t: u32,
    pub missing: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoravaViolation {
    pub n: u32,
    pub k: u32,
    pub present: u32,
    pub missing: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainCheck {
    pub n: u32,
    pub k: u32,
    /// Binary digits of `k`, ascending.
    pub steps: Vec<u32>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionReport {
    pub closure: Vec<ClosureViolation>,
    pub morava: Vec<MoravaViolation>,
    pub chains: Vec<ChainCheck>,
}

impl RestrictionReport {
    pub fn passed(&self) -> bool {
        self.closure.is_empty() && self.morava.is_empty() && self.chains.iter().all(|c| c.passed)
    }
}

/// Closure of J under the Steenrod operations: `i in J`, `C(i, t)` odd and
/// `i + t <= top` force `i + t in J`.
pub fn closure_violations(m: u32, j: &BTreeSet<u32>) -> Vec<ClosureViolation> {
    let top = m.saturating_sub(1) / 2;
    let mut out = Vec::new();
    for &i in j.iter().filter(|&&i| i <= top) {
        for t in 1..=top.saturating_sub(i) {
            if binom_mod2(u64::from(i), u64::from(t)) && !j.contains(&(i + t)) {
                out.push(ClosureViolation { i, t, missing: i + t });
            }
        }
    }
    out
}

/// `2^n - 1 - 2k in J` forces `2^n - 1 - k in J`, for indices up to the top.
pub fn morava_violations(n: u32, m: u32, j: &BTreeSet<u32>) -> Vec<MoravaViolation> {
    let top = m.saturating_sub(1) / 2;
    let p = (1u32 << n) - 1;
    (1..)
        .take_while(|&k| 2 * k < p)
        .filter_map(|k| {
            let (small, big) = (p - 2 * k, p - k);
            (j.contains(&small) && big <= top && !j.contains(&big)).then_some(MoravaViolation {
                n,
                k,
                present: small,
                missing: big,
            })
        })
        .collect()
}

/// Walks from `e_{2^n-1-2k}` to `e_{2^n-1-k}` by the operations `S^{2^a}`,
/// `a` running over the binary digits of `k`, and checks that every step has
/// an odd binomial coefficient.
pub fn chain_check(n: u32, k: u32) -> ChainCheck {
    let p = (1u64 << n) - 1;
    let steps: Vec<u32> = (0..32).filter(|&a| k >> a & 1 == 1).collect();
    let mut passed = 2 * u64::from(k) < p && k >= 1;
    if passed {
        let mut current = p - 2 * u64::from(k);
        for &a in &steps {
            passed &= binom_mod2(current, 1 << a);
            current += 1 << a;
        }
        passed &= current == p - u64::from(k);
    }
    ChainCheck { n, k, steps, passed }
}

/// Runs the closure check, the Morava check for each height in `heights`,
/// and the chain identity for every admissible `k` of those heights.
pub fn steenrod_restrictions(m: u32, j: &BTreeSet<u32>, heights: &[u32]) -> RestrictionReport {
    let closure = closure_violations(m, j);
    let morava = heights.iter().flat_map(|&n| morava_violations(n, m, j)).collect();
    let chains = heights
        .iter()
        .flat_map(|&n| (1..).take_while(move |&k| 2 * k < (1u32 << n) - 1).map(move |k| chain_check(n, k)))
        .collect();
    RestrictionReport { closure, morava, chains }
}

/// The quotient by `e_1`, which describes the spinor group.
pub fn spin_presentation(p: &Presentation) -> Result<Presentation> {
    if p.flavor == TheoryFlavor::Chow {
        return Err(Error::Unsupported { flavor: p.flavor.to_string(), reason: "expects a Morava K-theory".into() });
    }
    let ambient = p.ambient();
    let mut tuple = ambient.truncations.clone();
    if let Some(first) = tuple.first_mut() {
        *first = 0;
    }
    ambient.quotient_by_tuple(&tuple)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Ranks {
    pub chow: u64,
    pub ck: u64,
    pub k: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Restrictions {
    #[serde(rename = "vishik")]
    pub closure: Vec<ClosureViolation>,
    pub morava: Vec<MoravaViolation>,
}

/// Everything the pipeline computes for one input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JInvariantDocument {
    pub n: u32,
    pub m: u32,
    #[serde(rename = "J")]
    pub j: Vec<u32>,
    pub tuple: Vec<u32>,
    pub ranks: Ranks,
    pub motive: MotiveSummary,
    pub restrictions: Restrictions,
}

pub fn j_invariant_document(input: &ChowJInput) -> Result<JInvariantDocument> {
    let tuple = validate_chow_j(input)?;
    let n = input.n;
    let ranks = Ranks {
        chow: j_invariant(TheoryFlavor::Chow, input)?.rank(),
        ck: j_invariant(TheoryFlavor::ConnectiveMorava { n }, input)?.rank(),
        k: j_invariant(TheoryFlavor::PeriodicMorava { n }, input)?.rank(),
    };
    Ok(JInvariantDocument {
        n,
        m: input.m,
        j: input.j.iter().copied().collect(),
        tuple,
        ranks,
        motive: motive_summary(input)?,
        restrictions: Restrictions {
            closure: closure_violations(input.m, &input.j),
            morava: morava_violations(n, input.m, &input.j),
        },
    })
}
