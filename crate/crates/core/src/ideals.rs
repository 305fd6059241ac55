//! Homogeneous ideals, saturation and bi-ideals.
//!
//! An ideal is stored through its homogeneous components, each an F_2
//! subspace of the corresponding component of the algebra. Which components
//! are kept depends on the theory:
//!
//! * Chow: the degrees `0..=top`.
//! * Connective: a window `low..=top`. Below `low` both the algebra and the
//!   ideal are `v_n`-periodic, so an element of lower degree is tested after
//!   dividing it by a power of `v_n`.
//! * Periodic: one component per residue class mod `2^n - 1`, since `v_n` is
//!   invertible.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::algebra::{Element, Monomial, Presentation, TensorElement};
use crate::base::{Degree, TheoryFlavor};
use crate::error::{invalid, Error, Result};
use crate::hopf::HopfStructure;
use crate::linalg::{preimage, BitVec, Echelon};

/// Default bound on the dimension of a residue-class component in the
/// exhaustive lattice walk.
pub const MAX_LATTICE_CLASS_DIM: usize = 6;

#[derive(Debug, Clone)]
struct Component {
    basis: Vec<(Monomial, i32)>,
    index: HashMap<Monomial, usize>,
}

impl Component {
    fn new(basis: Vec<(Monomial, i32)>) -> Self {
        let index = basis.iter().enumerate().map(|(j, &(m, _))| (m, j)).collect();
        Component { basis, index }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// The homogeneous components of an algebra over a fixed set of keys.
#[derive(Debug, Clone)]
struct Grading {
    p: Presentation,
    low: Degree,
    comps: BTreeMap<Degree, Component>,
}

impl Grading {
    fn new(p: &Presentation, low: Degree) -> Self {
        let top = p.top_degree();
        let mut comps = BTreeMap::new();
        match p.flavor {
            TheoryFlavor::Chow => {
                for d in 0..=top {
                    comps.insert(d, Component::new(p.component(d)));
                }
            }
            TheoryFlavor::ConnectiveMorava { .. } => {
                for d in low..=top {
                    comps.insert(d, Component::new(p.component(d)));
                }
            }
            TheoryFlavor::PeriodicMorava { .. } => {
                for c in 0..p.period() {
                    comps.insert(c, Component::new(p.component(c)));
                }
            }
        }
        Grading { p: p.clone(), low, comps }
    }

    /// Moves a homogeneous element into a stored component by a power of
    /// `v_n`; `None` for degrees without stored component (where the algebra
    /// vanishes).
    fn normalize(&self, x: &Element) -> Option<(Degree, Element)> {
        let p = &self.p;
        let d = x.degree();
        match p.flavor {
            TheoryFlavor::Chow => self.comps.contains_key(&d).then(|| (d, x.clone())),
            TheoryFlavor::PeriodicMorava { .. } => {
                let c = d.rem_euclid(p.period());
                let k = ((d - c) / p.period()) as i32;
                Some((c, p.scale_v(x, k).expect("periodic scaling")))
            }
            TheoryFlavor::ConnectiveMorava { .. } => {
                if d > p.top_degree() {
                    return None;
                }
                if d >= self.low {
                    return Some((d, x.clone()));
                }
                let period = p.period();
                let k = (self.low - d + period - 1) / period;
                let mut y = Element::zero(d + k * period);
                for (mono, v) in x.terms() {
                    debug_assert!(i64::from(v) >= k, "component below the window is v-divisible");
                    p.accumulate(&mut y, mono, v - k as i32);
                }
                Some((d + k * period, y))
            }
        }
    }

    fn vector(&self, x: &Element) -> Option<(Degree, BitVec)> {
        let (key, y) = self.normalize(x)?;
        let comp = &self.comps[&key];
        let v = BitVec::from_indices(comp.dim(), y.terms().map(|(mono, _)| comp.index[&mono]));
        Some((key, v))
    }

    fn element(&self, key: Degree, v: &BitVec) -> Element {
        let comp = &self.comps[&key];
        let mut x = Element::zero(key);
        for j in v.ones() {
            let (mono, a) = comp.basis[j];
            self.p.accumulate(&mut x, mono, a);
        }
        x
    }
}

/// Per component key, the sorted supports of the reduced echelon rows.
pub type Signature = Vec<(Degree, Vec<Vec<usize>>)>;

/// A homogeneous ideal with its cached components.
#[derive(Debug, Clone)]
pub struct Ideal {
    generators: Vec<Element>,
    grading: Grading,
    spans: BTreeMap<Degree, Echelon>,
}

impl Ideal {
    pub fn from_generators(p: &Presentation, generators: Vec<Element>) -> Result<Self> {
        for g in &generators {
            if !p.is_normal(g) {
                return invalid(format!("generator {g} is not a normalized element of {}", p.label()));
            }
        }
        let generators: Vec<Element> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        let min_deg = generators.iter().map(Element::degree).min().unwrap_or(0);
        let low = min_deg.min(0) - p.period();
        let grading = Grading::new(p, low);
        let mut spans: BTreeMap<Degree, Echelon> =
            grading.comps.iter().map(|(&k, c)| (k, Echelon::new(c.dim()))).collect();
        let insert = |x: &Element, spans: &mut BTreeMap<Degree, Echelon>| {
            if let Some((key, v)) = grading.vector(x) {
                spans.get_mut(&key).expect("key").insert(v);
            }
        };
        match p.flavor {
            TheoryFlavor::PeriodicMorava { .. } => {
                let basis = p.basis();
                for g in &generators {
                    for &mono in &basis {
                        let y = p.mul(&p.term(mono, 0)?, g);
                        if !y.is_zero() {
                            insert(&y, &mut spans);
                        }
                    }
                }
            }
            _ => {
                let keys: Vec<Degree> = grading.comps.keys().copied().collect();
                for g in &generators {
                    for &d in &keys {
                        for (mono, a) in p.component(d - g.degree()) {
                            let y = p.mul(&p.term(mono, a)?, g);
                            if !y.is_zero() {
                                insert(&y, &mut spans);
                            }
                        }
                    }
                }
            }
        }
        Ok(Ideal { generators, grading, spans })
    }

    pub fn zero(p: &Presentation) -> Self {
        Ideal::from_generators(p, Vec::new()).expect("zero ideal")
    }

    pub fn presentation(&self) -> &Presentation {
        &self.grading.p
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.spans.values().all(|e| e.rank() == 0)
    }

    /// Dimensions of the stored components, keyed by degree or residue class.
    pub fn dimensions(&self) -> BTreeMap<Degree, usize> {
        self.spans.iter().map(|(&k, e)| (k, e.rank())).collect()
    }

    /// Whether `x` lies in the ideal.
    pub fn contains(&self, x: &Element) -> bool {
        if x.is_zero() {
            return true;
        }
        match self.grading.vector(x) {
            Some((key, v)) => self.spans[&key].contains(&v),
            None => true,
        }
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    pub fn same_as(&self, other: &Ideal) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    /// Whether the ideal avoids the unit, i.e. lies in the augmentation ideal.
    pub fn is_proper(&self) -> bool {
        let p = self.presentation();
        !self.contains(&p.one())
    }

    /// Canonical description: every component in reduced echelon form.
    pub fn signature(&self) -> Signature {
        self.spans
            .iter()
            .map(|(&k, e)| {
                let mut rows: Vec<Vec<usize>> = e.rows().iter().map(|r| r.ones().collect()).collect();
                rows.sort();
                (k, rows)
            })
            .collect()
    }

    /// Generated by `v^0` monomials, so the ideal is spanned by the monomials
    /// it contains.
    fn monomial_support(&self) -> Option<HashSet<Monomial>> {
        let p = self.presentation();
        let mut gens = Vec::new();
        for g in &self.generators {
            let mut terms = g.terms();
            match (terms.next(), terms.next()) {
                (Some((mono, 0)), None) => gens.push(mono),
                _ => return None,
            }
        }
        let basis = p.basis();
        let mut members = HashSet::new();
        for g in gens {
            for &b in &basis {
                if let Some(prod) = p.mono_mul(g, b) {
                    members.insert(prod);
                }
            }
        }
        Some(members)
    }

    /// A basis of the component of degree `d`, for any `d`.
    fn component_elements(&self, d: Degree) -> Vec<Element> {
        let p = self.presentation();
        let key = match p.flavor {
            TheoryFlavor::Chow => d,
            TheoryFlavor::PeriodicMorava { .. } => d.rem_euclid(p.period()),
            TheoryFlavor::ConnectiveMorava { .. } => {
                if d > p.top_degree() {
                    return Vec::new();
                }
                if d >= self.grading.low {
                    d
                } else {
                    let period = p.period();
                    d + (self.grading.low - d + period - 1) / period * period
                }
            }
        };
        let Some(span) = self.spans.get(&key) else {
            return Vec::new();
        };
        span.rows()
            .iter()
            .map(|row| {
                let x = self.grading.element(key, row);
                let shift = ((key - d) / p.period().max(1)) as i32;
                if shift == 0 {
                    x
                } else {
                    p.scale_v(&x, shift).expect("v shift of an ideal element")
                }
            })
            .filter(|x| !x.is_zero())
            .collect()
    }
}

/// The ideal `(e_1^{2^{a_1}}, e_3^{2^{a_2}}, ...)`.
pub fn ideal_from_tuple(p: &Presentation, a: &[u32]) -> Result<Ideal> {
    if a.len() != p.r as usize {
        return invalid(format!("expected {} exponents, got {}", p.r, a.len()));
    }
    let mut generators = Vec::new();
    for (i, (&ai, &ki)) in a.iter().zip(&p.truncations).enumerate() {
        if ai > ki {
            return invalid(format!("exponent a_{} = {ai} exceeds k_{} = {ki}", i + 1, i + 1));
        }
        let idx = (2 * i as u32 + 1) << ai;
        if idx <= p.s && p.is_live(idx) {
            generators.push(p.generator(idx));
        }
    }
    Ideal::from_generators(p, generators)
}

pub fn membership(ideal: &Ideal, x: &Element) -> bool {
    ideal.contains(x)
}

/// `{ x : v_n^N x in I for some N }`, computed on every stored component.
pub fn saturate(ideal: &Ideal) -> Result<Ideal> {
    let p = ideal.presentation();
    if !matches!(p.flavor, TheoryFlavor::ConnectiveMorava { .. }) {
        return Err(Error::Unsupported {
            flavor: p.flavor.to_string(),
            reason: "saturation is defined for connective Morava K-theory".into(),
        });
    }
    let period = p.period();
    let low = ideal.grading.low;
    let mut generators = ideal.generators.clone();
    for (&d, comp) in &ideal.grading.comps {
        let depth = ((d - low) / period + 1) as i32;
        let mut target_key = None;
        let mut images = Vec::with_capacity(comp.dim());
        for &(mono, a) in &comp.basis {
            let shifted = p.term(mono, a + depth)?;
            let normalized = if shifted.is_zero() {
                None
            } else {
                ideal.grading.vector(&shifted)
            };
            match normalized {
                Some((key, v)) => {
                    target_key = Some(key);
                    images.push(Some(v));
                }
                None => images.push(None),
            }
        }
        let Some(key) = target_key else {
            // Every basis element is v-torsion, hence in the saturation.
            for &(mono, a) in &comp.basis {
                generators.push(p.term(mono, a)?);
            }
            continue;
        };
        let target = &ideal.spans[&key];
        let dim = target.dim();
        let images: Vec<BitVec> = images.into_iter().map(|v| v.unwrap_or_else(|| BitVec::zeros(dim))).collect();
        for combo in preimage(&images, target) {
            generators.push(ideal.grading.element(d, &combo));
        }
    }
    Ideal::from_generators(p, generators)
}

pub fn is_saturated(ideal: &Ideal) -> Result<bool> {
    Ok(saturate(ideal)?.same_as(ideal))
}

/// Whether `Delta(g) in I (x) H + H (x) I` for every generator `g`.
pub fn is_bi_ideal(ideal: &Ideal) -> Result<bool> {
    let p = ideal.presentation();
    let h = HopfStructure::new(p)?;
    if let Some(members) = ideal.monomial_support() {
        for g in &ideal.generators {
            for (components, _) in h.comul(g).terms() {
                if !members.contains(&components[0]) && !members.contains(&components[1]) {
                    return Ok(false);
                }
            }
        }
        return Ok(true);
    }
    for g in &ideal.generators {
        if !tensor_in_sum(ideal, &h.comul(g))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership in `I (x) H + H (x) I`.
fn tensor_in_sum(ideal: &Ideal, x: &TensorElement) -> Result<bool> {
    match ideal.presentation().flavor {
        TheoryFlavor::ConnectiveMorava { .. } => tensor_in_span(ideal, x),
        _ => Ok(tensor_in_quotient(ideal, x)),
    }
}

/// Over a graded field the tensor square splits over pairs of components, so
/// membership means the image in `(H/I) (x) (H/I)` vanishes.
fn tensor_in_quotient(ideal: &Ideal, x: &TensorElement) -> bool {
    let p = ideal.presentation();
    let reduce = |mono: Monomial, v: i32| -> Option<(Degree, BitVec)> {
        let t = p.term(mono, v).ok()?;
        let (key, vec) = ideal.grading.vector(&t)?;
        let r = ideal.spans[&key].reduce(&vec);
        (!r.is_zero()).then_some((key, r))
    };
    let mut image: HashMap<(Degree, usize, Degree, usize), bool> = HashMap::new();
    for (c, v) in x.terms() {
        let (Some((k1, r1)), Some((k2, r2))) = (reduce(c[0], 0), reduce(c[1], v)) else {
            continue;
        };
        for i in r1.ones() {
            for j in r2.ones() {
                *image.entry((k1, i, k2, j)).or_insert(false) ^= true;
            }
        }
    }
    image.values().all(|&odd| !odd)
}

fn tensor_in_span(ideal: &Ideal, x: &TensorElement) -> Result<bool> {
    let p = ideal.presentation();
    let total = x.degree();
    let top = p.top_degree();
    let mut index: HashMap<(Monomial, Monomial), usize> = HashMap::new();
    let mut rows: Vec<TensorElement> = Vec::new();
    let degrees: Vec<Degree> = match p.flavor {
        TheoryFlavor::PeriodicMorava { .. } => (0..p.period()).collect(),
        _ => (total - top..=top).collect(),
    };
    let basis = p.basis();
    for d in degrees {
        let left = ideal.component_elements(d);
        if left.is_empty() {
            continue;
        }
        let others: Vec<Element> = match p.flavor {
            TheoryFlavor::PeriodicMorava { .. } => basis.iter().map(|&m| p.term(m, 0).expect("basis")).collect(),
            _ => p.component(total - d).into_iter().map(|(m, a)| p.term(m, a).expect("basis")).collect(),
        };
        for a in &left {
            for b in &others {
                for t in [p.tensor_of(a, b), p.tensor_of(b, a)] {
                    if !t.is_zero() {
                        rows.push(t);
                    }
                }
            }
        }
    }
    for t in rows.iter().chain(std::iter::once(x)) {
        for (c, _) in t.terms() {
            let next = index.len();
            index.entry((c[0], c[1])).or_insert(next);
        }
    }
    let dim = index.len();
    let to_vec = |t: &TensorElement| BitVec::from_indices(dim, t.terms().map(|(c, _)| index[&(c[0], c[1])]));
    let mut span = Echelon::new(dim);
    for t in &rows {
        span.insert(to_vec(t));
    }
    Ok(span.contains(&to_vec(x)))
}

/// `e_{2^n-1-2k} in I` implies `e_{2^n-1-k} in I` for every admissible `k`.
pub fn restriction_holds(ideal: &Ideal, n: u32) -> bool {
    restriction_violations(ideal, n).is_empty()
}

/// The `k` for which the restriction fails.
pub fn restriction_violations(ideal: &Ideal, n: u32) -> Vec<u32> {
    let p = ideal.presentation();
    let top = (1u32 << n) - 1;
    (1..)
        .take_while(|&k| 2 * k < top)
        .filter(|&k| {
            let small = top - 2 * k;
            let big = top - k;
            small <= p.s && ideal.contains(&p.generator(small)) && !ideal.contains(&p.generator(big))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Strategy {
    #[serde(rename = "TUPLE")]
    Tuple,
    #[serde(rename = "LATTICE")]
    Lattice,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealRecord {
    /// `None` when the ideal is not of tuple form.
    pub tuple: Option<Vec<u32>>,
    pub bi_ideal: bool,
    pub saturated: bool,
    /// `None` for the Chow theory, which has no height.
    pub restriction: Option<bool>,
    pub strategy: Strategy,
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub strategy: Strategy,
    /// One record per examined candidate (TUPLE) or per ideal found (LATTICE).
    pub records: Vec<IdealRecord>,
    /// The saturated proper bi-ideals found.
    pub ideals: Vec<Ideal>,
}

impl Enumeration {
    /// Tuples of the accepted ideals, `None` entries for non-tuple ideals.
    pub fn accepted_tuples(&self) -> Vec<Option<Vec<u32>>> {
        self.records
            .iter()
            .filter(|r| r.bi_ideal && r.saturated)
            .map(|r| r.tuple.clone())
            .collect()
    }
}

pub fn all_tuples(p: &Presentation) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &k in &p.truncations {
        out = out
            .into_iter()
            .flat_map(|t: Vec<u32>| {
                (0..=k).map(move |a| {
                    let mut t = t.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}

pub fn enumerate_saturated_bi_ideals(p: &Presentation, strategy: Strategy, bound: u128) -> Result<Enumeration> {
    match strategy {
        Strategy::Tuple => enumerate_tuples(p),
        Strategy::Lattice => enumerate_lattice(p, bound),
    }
}

fn enumerate_tuples(p: &Presentation) -> Result<Enumeration> {
    let mut records = Vec::new();
    let mut ideals = Vec::new();
    for tuple in all_tuples(p) {
        let ideal = ideal_from_tuple(p, &tuple)?;
        let bi = is_bi_ideal(&ideal)?;
        let saturated = match p.flavor {
            TheoryFlavor::ConnectiveMorava { .. } => is_saturated(&ideal)?,
            _ => true,
        };
        let restriction = p.n().map(|n| restriction_holds(&ideal, n));
        records.push(IdealRecord { tuple: Some(tuple), bi_ideal: bi, saturated, restriction, strategy: Strategy::Tuple });
        if bi && saturated {
            ideals.push(ideal);
        }
    }
    Ok(Enumeration { strategy: Strategy::Tuple, records, ideals })
}

/// All subspaces of `F_2^dim` as reduced echelon bases (pivot = lowest bit).
fn subspaces(dim: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for pivots in 0u64..1 << dim {
        let pivot_list: Vec<usize> = (0..dim).filter(|&i| pivots >> i & 1 == 1).collect();
        let free: Vec<Vec<usize>> = pivot_list
            .iter()
            .map(|&pv| (pv + 1..dim).filter(|&c| pivots >> c & 1 == 0).collect())
            .collect();
        let total: usize = free.iter().map(Vec::len).sum();
        for assignment in 0u64..1 << total {
            let mut bit = 0;
            let rows: Vec<u64> = pivot_list
                .iter()
                .zip(&free)
                .map(|(&pv, cols)| {
                    let mut row = 1u64 << pv;
                    for &c in cols {
                        if assignment >> bit & 1 == 1 {
                            row |= 1 << c;
                        }
                        bit += 1;
                    }
                    row
                })
                .collect();
            out.push(rows);
        }
    }
    out
}

fn reduce_small(rows: &[u64], mut v: u64) -> u64 {
    for &r in rows {
        if v >> r.trailing_zeros() & 1 == 1 {
            v ^= r;
        }
    }
    v
}

fn enumerate_lattice(p: &Presentation, bound: u128) -> Result<Enumeration> {
    let n = match p.flavor {
        TheoryFlavor::PeriodicMorava { n } => n,
        _ => {
            return Err(Error::Unsupported {
                flavor: p.flavor.to_string(),
                reason: "the lattice walk runs over residue classes of periodic K-theory".into(),
            })
        }
    };
    let grading = Grading::new(p, 0);
    let classes: Vec<Degree> = grading.comps.keys().copied().collect();
    let dims: Vec<usize> = classes.iter().map(|c| grading.comps[c].dim()).collect();
    let per_class: Vec<Vec<Vec<u64>>> =
        dims.iter().map(|&d| if d <= MAX_LATTICE_CLASS_DIM { subspaces(d) } else { Vec::new() }).collect();
    let needed = per_class.iter().fold(1u128, |acc, s| acc.saturating_mul(s.len() as u128));
    if dims.iter().any(|&d| d > MAX_LATTICE_CLASS_DIM) || needed > bound {
        let needed = if dims.iter().any(|&d| d > MAX_LATTICE_CLASS_DIM) { u128::MAX } else { needed };
        return Err(Error::SizingRefusal { needed, bound });
    }

    // Multiplication by each live generator, class by class, as bitmasks.
    let period = p.period();
    let mut images: Vec<(usize, usize, Vec<u64>)> = Vec::new();
    for b in p.live_generators() {
        for (ci, &c) in classes.iter().enumerate() {
            let target = (c + Degree::from(b)).rem_euclid(period) as usize;
            let comp = &grading.comps[&c];
            let cols = comp
                .basis
                .iter()
                .map(|&(mono, _)| match p.mono_mul(mono, Monomial::generator(b)) {
                    Some(prod) => 1u64 << grading.comps[&(target as Degree)].index[&prod],
                    None => 0,
                })
                .collect();
            images.push((ci, target, cols));
        }
    }
    let unit_bit = 1u64 << grading.comps[&0].index[&Monomial::ONE];

    let tuple_ideals: Vec<(Vec<u32>, Signature)> = all_tuples(p)
        .into_iter()
        .map(|t| {
            let sig = ideal_from_tuple(p, &t)?.signature();
            Ok((t, sig))
        })
        .collect::<Result<_>>()?;

    let mut records = Vec::new();
    let mut ideals = Vec::new();
    let mut choice = vec![0usize; classes.len()];
    'walk: loop {
        let chosen: Vec<&Vec<u64>> = choice.iter().zip(&per_class).map(|(&j, s)| &s[j]).collect();
        let proper = chosen[0].iter().all(|row| row & unit_bit == 0);
        let closed = proper
            && images.iter().all(|(ci, target, cols)| {
                chosen[*ci].iter().all(|&row| {
                    let img = (0..cols.len()).filter(|&j| row >> j & 1 == 1).fold(0u64, |acc, j| acc ^ cols[j]);
                    reduce_small(chosen[*target], img) == 0
                })
            });
        if closed {
            let mut generators = Vec::new();
            for (ci, &c) in classes.iter().enumerate() {
                for &row in chosen[ci] {
                    let v = BitVec::from_indices(dims[ci], (0..dims[ci]).filter(|&j| row >> j & 1 == 1));
                    generators.push(grading.element(c, &v));
                }
            }
            let ideal = Ideal::from_generators(p, generators)?;
            if is_bi_ideal(&ideal)? {
                let sig = ideal.signature();
                let tuple = tuple_ideals.iter().find(|(_, s)| *s == sig).map(|(t, _)| t.clone());
                records.push(IdealRecord {
                    tuple,
                    bi_ideal: true,
                    saturated: true,
                    restriction: Some(restriction_holds(&ideal, n)),
                    strategy: Strategy::Lattice,
                });
                ideals.push(ideal);
            }
        }
        for k in 0..choice.len() {
            choice[k] += 1;
            if choice[k] < per_class[k].len() {
                continue 'walk;
            }
            choice[k] = 0;
        }
        break;
    }
    let mut paired: Vec<(IdealRecord, Ideal)> = records.into_iter().zip(ideals).collect();
    paired.sort_by(|a, b| match (&a.0.tuple, &b.0.tuple) {
        (Some(x), Some(y)) => x.cmp(y),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => a.1.signature().cmp(&b.1.signature()),
    });
    let (records, ideals) = paired.into_iter().unzip();
    Ok(Enumeration { strategy: Strategy::Lattice, records, ideals })
}

/// Result of the brute-force search for solutions of
/// `(1 - 2^n) x + (2j - 1) 2^y = (2k - 1) 2^z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquationReport {
    pub n: u32,
    pub m: u32,
    pub x_max: i64,
    pub z_max: u32,
    pub checked: u64,
    /// Solutions `(x, j, y, k, z)`; empty when the equation is impossible.
    pub solutions: Vec<[i64; 5]>,
}

impl EquationReport {
    pub fn passed(&self) -> bool {
        self.solutions.is_empty()
    }
}

/// Searches `x in [1, x_max]`, `j, k <= (m+1)/4`, `y < k_j`, `z in [0, z_max]`,
/// with `x_max` and `2^{z_max}` bounded by the top degree of `Ch*(SO_m)`.
pub fn check_impossible_equation(n: u32, m: u32) -> Result<EquationReport> {
    if n == 0 || n > 30 {
        return invalid(format!("height n = {n} out of range"));
    }
    if m < 3 || m > 1u32 << (n + 1) {
        return invalid(format!("m = {m} must satisfy 3 <= m <= 2^(n+1)"));
    }
    let s = i64::from((m - 1) / 2);
    let top = (s * (s + 1) / 2).max(1);
    let x_max = top;
    let mut z_max = 0;
    while 1i64 << (z_max + 1) <= top {
        z_max += 1;
    }
    let r = (m + 1) / 4;
    let lhs_unit = 1 - (1i64 << n);
    let mut checked = 0u64;
    let mut solutions = Vec::new();
    for j in 1..=r {
        let odd_j = 2 * j - 1;
        if odd_j > m - 1 {
            continue;
        }
        let y_limit = crate::base::truncation_exponent(j, m)?;
        for y in 0..y_limit {
            for x in 1..=x_max {
                let lhs = lhs_unit * x + (i64::from(odd_j) << y);
                for k in 1..=r {
                    for z in 0..=z_max {
                        checked += 1;
                        if lhs == (2 * i64::from(k) - 1) << z {
                            solutions.push([x, i64::from(j), i64::from(y), i64::from(k), i64::from(z)]);
                        }
                    }
                }
            }
        }
    }
    Ok(EquationReport { n, m, x_max, z_max, checked, solutions })
}
