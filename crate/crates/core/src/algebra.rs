//! Presentations of `Ch*(SO_m)`, `CK(n)*(SO_m)` and `K(n)*(SO_m)` together
//! with exact arithmetic on homogeneous elements and tensors.
//!
//! The canonical basis consists of square-free monomials in `e_1, ..., e_s`,
//! stored as bitmasks (bit `i` stands for `e_i`). Multiplication uses the
//! relation `e_i^2 = e_{2i}`, which turns the mask product into binary
//! addition with carries along each chain `e_{2i-1}, e_{2(2i-1)}, ...`.
//!
//! A presentation may also be a quotient by one of the monomial ideals
//! `(e_1^{2^{a_1}}, e_3^{2^{a_2}}, ...)`; the killed generators are simply
//! absent from the `live` mask.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::base::{truncation_exponent, Degree, TheoryFlavor};
use crate::error::{invalid, Error, Result};

/// Largest top generator index representable in a mask.
pub const MAX_GENERATOR: u32 = 63;

/// A square-free monomial `e_{i_1} * ... * e_{i_k}`; bit `i` encodes `e_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_bits(bits: u64) -> Self {
        debug_assert!(bits & 1 == 0, "bit 0 does not encode a generator");
        Monomial(bits)
    }

    pub fn generator(i: u32) -> Self {
        assert!((1..=MAX_GENERATOR).contains(&i), "generator index {i} out of range");
        Monomial(1 << i)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = u32>) -> Self {
        Monomial(indices.into_iter().fold(0, |acc, i| acc | Monomial::generator(i).0))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: u32) -> bool {
        i <= MAX_GENERATOR && self.0 >> i & 1 == 1
    }

    /// Generator indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = u32> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros();
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// Sum of the generator indices.
    pub fn degree(self) -> Degree {
        self.indices().map(Degree::from).sum()
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

/// Lexicographic order on the ascending index lists, so `1 < e1 < e1*e2 < e2`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let p = diff.trailing_zeros();
        let (with, without) = if self.0 >> p & 1 == 1 { (true, other.0) } else { (false, self.0) };
        // The side lacking index p either ends (prefix, smaller) or continues
        // with a larger index (bigger).
        let without_continues = without >> p != 0;
        match (with, without_continues) {
            (true, true) => Ordering::Less,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Greater,
            (false, false) => Ordering::Less,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for i in self.indices() {
            if !first {
                write!(f, "*")?;
            }
            write!(f, "e{i}")?;
            first = false;
        }
        Ok(())
    }
}

/// A power `v_n^a` (the F_2 coefficient is implicitly 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VScalar(pub i32);

impl fmt::Display for VScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v^{}", self.0)
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, v: i32, body: &dyn fmt::Display) -> fmt::Result {
    if v == 0 {
        write!(f, "{body}")
    } else {
        write!(f, "v^{v}*{body}")
    }
}

/// A homogeneous element of an algebra: `sum v^{a_j} mu_j` over distinct
/// monomials `mu_j`. The zero element carries a nominal degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    degree: Degree,
    terms: BTreeMap<Monomial, i32>,
}

impl Element {
    pub fn zero(degree: Degree) -> Self {
        Element { degree, terms: BTreeMap::new() }
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms `(monomial, v-exponent)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, i32)> + '_ {
        self.terms.iter().map(|(&mono, &v)| (mono, v))
    }

    /// The v-exponent attached to `mono`, if the monomial occurs.
    pub fn coefficient(&self, mono: Monomial) -> Option<i32> {
        self.terms.get(&mono).copied()
    }

    fn toggle(&mut self, mono: Monomial, v: i32) {
        match self.terms.get(&mono) {
            Some(&existing) => {
                debug_assert_eq!(existing, v, "inhomogeneous toggle on {mono}");
                self.terms.remove(&mono);
            }
            None => {
                self.terms.insert(mono, v);
            }
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (mono, v)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write_term(f, v, &mono)?;
        }
        Ok(())
    }
}

/// Key of a tensor term; unused trailing slots hold the unit monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorKey(pub [Monomial; 3]);

/// A homogeneous element of `H^{(x)2}` or `H^{(x)3}` over the coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TensorElement {
    arity: usize,
    degree: Degree,
    terms: BTreeMap<TensorKey, i32>,
}

impl TensorElement {
    pub fn zero(arity: usize, degree: Degree) -> Self {
        assert!(arity == 2 || arity == 3, "tensor arity must be 2 or 3");
        TensorElement { arity, degree, terms: BTreeMap::new() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Monomial], i32)> + '_ {
        self.terms.iter().map(move |(key, &v)| (&key.0[..self.arity], v))
    }

    pub fn coefficient(&self, components: &[Monomial]) -> Option<i32> {
        self.terms.get(&Self::key(components)).copied()
    }

    fn key(components: &[Monomial]) -> TensorKey {
        let mut key = [Monomial::ONE; 3];
        key[..components.len()].copy_from_slice(components);
        TensorKey(key)
    }

    fn toggle(&mut self, key: TensorKey, v: i32) {
        match self.terms.get(&key) {
            Some(&existing) => {
                debug_assert_eq!(existing, v, "inhomogeneous tensor toggle");
                self.terms.remove(&key);
            }
            None => {
                self.terms.insert(key, v);
            }
        }
    }

    /// Exchanges the two factors of a 2-tensor.
    pub fn swap(&self) -> TensorElement {
        assert_eq!(self.arity, 2);
        let mut out = TensorElement::zero(2, self.degree);
        for (key, &v) in &self.terms {
            let [a, b, _] = key.0;
            out.toggle(TensorKey([b, a, Monomial::ONE]), v);
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (components, v)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let body = components.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" (x) ");
            write_term(f, v, &body)?;
        }
        Ok(())
    }
}

/// The finite description of one algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Presentation {
    pub flavor: TheoryFlavor,
    pub m: u32,
    /// Top generator index.
    pub s: u32,
    /// Number of odd generators `e_1, e_3, ..., e_{2r-1}` with `2r - 1 <= s`.
    pub r: u32,
    /// Chain length of each odd generator among the surviving generators.
    pub truncations: Vec<u32>,
    /// `2^n` when the relations `v_n e_i = 0 (i >= 2^n)` apply.
    pub torsion_threshold: Option<u32>,
    /// Generators killed by passing to a quotient, in ascending order.
    pub killed: Vec<u32>,
    #[serde(skip)]
    live: u64,
}

/// Builds the presentation of the requested theory of `SO_m`.
pub fn make_presentation(flavor: TheoryFlavor, m: u32) -> Result<Presentation> {
    Presentation::new(flavor, m)
}

impl Presentation {
    pub fn new(flavor: TheoryFlavor, m: u32) -> Result<Self> {
        flavor.validate()?;
        if m < 3 {
            return invalid(format!("m = {m} is too small; SO_m has generators only for m >= 3"));
        }
        let chow_top = (m - 1) / 2;
        let s = match flavor {
            TheoryFlavor::PeriodicMorava { n } => chow_top.min((1 << n) - 1),
            _ => chow_top,
        };
        if s > MAX_GENERATOR {
            return invalid(format!("m = {m} needs {s} generators; at most {MAX_GENERATOR} are supported"));
        }
        let torsion_threshold = match flavor {
            TheoryFlavor::ConnectiveMorava { n } if s >= 1 << n => Some(1 << n),
            _ => None,
        };
        let live = (1..=s).fold(0u64, |acc, i| acc | 1 << i);
        let mut p = Presentation {
            flavor,
            m,
            s,
            r: s.div_ceil(2),
            truncations: Vec::new(),
            torsion_threshold,
            killed: Vec::new(),
            live,
        };
        p.truncations = p.live_chain_lengths();
        if !matches!(flavor, TheoryFlavor::PeriodicMorava { .. }) || chow_top == s {
            debug_assert!(p
                .truncations
                .iter()
                .enumerate()
                .all(|(i, &k)| k == truncation_exponent(i as u32 + 1, m).unwrap()));
        }
        Ok(p)
    }

    fn live_chain_lengths(&self) -> Vec<u32> {
        (1..=self.r)
            .map(|i| {
                let odd = 2 * i - 1;
                let mut k = 0;
                while (odd << k) <= self.s && self.is_live(odd << k) {
                    k += 1;
                }
                k
            })
            .collect()
    }

    /// The quotient by the ideal `(e_{2i-1}^{2^{a_i}})`. Exponents larger
    /// than the current chain length change nothing.
    pub fn quotient_by_tuple(&self, a: &[u32]) -> Result<Presentation> {
        if a.len() != self.r as usize {
            return invalid(format!("expected {} exponents, got {}", self.r, a.len()));
        }
        let mut q = self.clone();
        for (i, &ai) in a.iter().enumerate() {
            let odd = 2 * i as u32 + 1;
            let mut j = ai;
            while j < 64 && (odd << j) <= self.s {
                q.live &= !(1u64 << (odd << j));
                j += 1;
            }
        }
        q.killed = (1..=q.s).filter(|&i| !q.is_live(i)).collect();
        q.truncations = q.live_chain_lengths();
        Ok(q)
    }

    /// The same algebra without any quotient.
    pub fn ambient(&self) -> Presentation {
        Presentation::new(self.flavor, self.m).expect("ambient of a valid presentation")
    }

    pub fn n(&self) -> Option<u32> {
        self.flavor.height()
    }

    pub fn is_live(&self, i: u32) -> bool {
        i >= 1 && i <= self.s && self.live >> i & 1 == 1
    }

    pub fn live_mask(&self) -> u64 {
        self.live
    }

    pub fn live_generators(&self) -> impl Iterator<Item = u32> + '_ {
        (1..=self.s).filter(|&i| self.is_live(i))
    }

    /// Surviving odd generators.
    pub fn odd_generators(&self) -> impl Iterator<Item = u32> + '_ {
        (1..=self.s).step_by(2).filter(|&i| self.is_live(i))
    }

    /// Number of basis monomials.
    pub fn rank(&self) -> u64 {
        1u64 << self.live.count_ones()
    }

    /// All basis monomials, in mask order.
    pub fn basis(&self) -> Vec<Monomial> {
        let live = self.live;
        let mut out = Vec::with_capacity(self.rank() as usize);
        let mut sub = 0u64;
        loop {
            out.push(Monomial(sub));
            if sub == live {
                break;
            }
            sub = (sub.wrapping_sub(live)) & live;
        }
        out
    }

    /// Degree of the largest basis monomial.
    pub fn top_degree(&self) -> Degree {
        Monomial(self.live).degree()
    }

    pub fn period(&self) -> i64 {
        self.flavor.period()
    }

    pub fn term_degree(&self, mono: Monomial, v: i32) -> Degree {
        mono.degree() - i64::from(v) * self.period()
    }

    fn torsion_mask(&self) -> u64 {
        match self.torsion_threshold {
            Some(t) if t < 64 => !((1u64 << t) - 1),
            _ => 0,
        }
    }

    /// Whether `v^a mu` vanishes identically by the torsion relations.
    pub fn is_torsion_zero(&self, mono: Monomial, v: i32) -> bool {
        v >= 1 && mono.0 & self.torsion_mask() != 0
    }

    /// Whether `mu` is annihilated by `v_n`.
    pub fn is_torsion(&self, mono: Monomial) -> bool {
        mono.0 & self.torsion_mask() != 0
    }

    fn check_v(&self, v: i32) -> Result<()> {
        match self.flavor {
            TheoryFlavor::Chow if v != 0 => invalid("the Chow theory has no v_n"),
            TheoryFlavor::ConnectiveMorava { .. } if v < 0 => {
                invalid("v_n is not invertible in connective Morava K-theory")
            }
            _ => Ok(()),
        }
    }

    /// Product of basis monomials, `None` when it vanishes.
    pub fn mono_mul(&self, a: Monomial, b: Monomial) -> Option<Monomial> {
        let mut acc = a.0;
        let mut rest = b.0;
        while rest != 0 {
            let mut i = rest.trailing_zeros();
            rest &= rest - 1;
            while acc >> i & 1 == 1 {
                acc &= !(1u64 << i);
                i *= 2;
                if i > self.s {
                    return None;
                }
            }
            acc |= 1u64 << i;
        }
        (acc & !self.live == 0).then_some(Monomial(acc))
    }

    /// Exponents `(t_1, ..., t_r)` with `mu = prod e_{2i-1}^{t_i}`.
    pub fn odd_exponents(&self, mono: Monomial) -> Vec<u32> {
        (1..=self.r)
            .map(|i| {
                let odd = 2 * i - 1;
                let mut t = 0;
                let mut j = 0;
                while (odd << j) <= self.s {
                    if mono.contains(odd << j) {
                        t |= 1 << j;
                    }
                    j += 1;
                }
                t
            })
            .collect()
    }

    /// Inverse of [`Presentation::odd_exponents`]; `None` if some power vanishes.
    pub fn from_odd_exponents(&self, exponents: &[u32]) -> Option<Monomial> {
        let mut bits = 0u64;
        for (i, &t) in exponents.iter().enumerate() {
            let odd = 2 * i as u32 + 1;
            let mut rest = t;
            let mut j = 0;
            while rest != 0 {
                if rest & 1 == 1 {
                    let idx = odd << j;
                    if idx > self.s || !self.is_live(idx) {
                        return None;
                    }
                    bits |= 1u64 << idx;
                }
                rest >>= 1;
                j += 1;
            }
        }
        Some(Monomial(bits))
    }

    // ----- elements -----

    pub fn one(&self) -> Element {
        self.term(Monomial::ONE, 0).expect("unit")
    }

    /// `e_i` (zero when `i > s` or killed).
    pub fn generator(&self, i: u32) -> Element {
        if self.is_live(i) {
            self.term(Monomial::generator(i), 0).expect("generator")
        } else {
            Element::zero(Degree::from(i))
        }
    }

    /// The single term `v^a mu`, normalized.
    pub fn term(&self, mono: Monomial, v: i32) -> Result<Element> {
        self.check_v(v)?;
        if mono.0 & !self.live != 0 {
            return invalid(format!("{mono} is not a basis monomial of {}", self.label()));
        }
        let degree = self.term_degree(mono, v);
        let mut x = Element::zero(degree);
        if !self.is_torsion_zero(mono, v) {
            x.terms.insert(mono, v);
        }
        Ok(x)
    }

    pub fn add(&self, x: &Element, y: &Element) -> Result<Element> {
        if !x.is_zero() && !y.is_zero() && x.degree != y.degree {
            return Err(Error::DegreeMismatch { left: x.degree, right: y.degree });
        }
        let mut out = if x.is_zero() { y.clone() } else { x.clone() };
        let other = if x.is_zero() { x } else { y };
        for (mono, v) in other.terms() {
            out.toggle(mono, v);
        }
        Ok(out)
    }

    /// `x += y` for elements known to be of the same degree (or zero).
    pub fn add_assign(&self, x: &mut Element, y: &Element) {
        if x.is_zero() {
            *x = y.clone();
            return;
        }
        debug_assert!(y.is_zero() || x.degree == y.degree);
        for (mono, v) in y.terms() {
            x.toggle(mono, v);
        }
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero(x.degree + y.degree);
        for (a, va) in x.terms() {
            for (b, vb) in y.terms() {
                if let Some(c) = self.mono_mul(a, b) {
                    let v = va + vb;
                    if !self.is_torsion_zero(c, v) {
                        out.toggle(c, v);
                    }
                }
            }
        }
        out
    }

    /// Multiplies by `v_n^a`; negative `a` requires the periodic flavor.
    pub fn scale_v(&self, x: &Element, a: i32) -> Result<Element> {
        if a != 0 {
            self.check_v(a)?;
        }
        let mut out = Element::zero(x.degree - i64::from(a) * self.period());
        for (mono, v) in x.terms() {
            let w = v + a;
            self.check_v(w)?;
            if !self.is_torsion_zero(mono, w) {
                out.terms.insert(mono, w);
            }
        }
        Ok(out)
    }

    /// Checks the homogeneity and normal-form invariants of an element.
    pub fn is_normal(&self, x: &Element) -> bool {
        x.terms().all(|(mono, v)| {
            mono.0 & !self.live == 0
                && self.check_v(v).is_ok()
                && !self.is_torsion_zero(mono, v)
                && self.term_degree(mono, v) == x.degree
        })
    }

    /// Reduction modulo `v_n`: `CK(n)^* -> Ch^*` for the same `m`.
    pub fn specialize_vn_to_zero(&self, x: &Element) -> Result<(Presentation, Element)> {
        if !matches!(self.flavor, TheoryFlavor::ConnectiveMorava { .. }) {
            return Err(Error::Unsupported {
                flavor: self.flavor.to_string(),
                reason: "only connective Morava K-theory specializes to Chow at v_n = 0".into(),
            });
        }
        let mut chow = Presentation::new(TheoryFlavor::Chow, self.m)?;
        if !self.killed.is_empty() {
            chow.live = self.live;
            chow.killed = self.killed.clone();
            chow.truncations = chow.live_chain_lengths();
        }
        let mut out = Element::zero(x.degree);
        for (mono, v) in x.terms() {
            if v == 0 {
                out.terms.insert(mono, 0);
            }
        }
        Ok((chow, out))
    }

    /// Toggles `v^a mu` into `x`, erasing torsion-zero terms.
    pub fn accumulate(&self, x: &mut Element, mono: Monomial, v: i32) {
        if self.is_torsion_zero(mono, v) {
            return;
        }
        if x.is_zero() {
            x.degree = self.term_degree(mono, v);
        }
        x.toggle(mono, v);
    }

    /// Basis `(mu, a)` of the homogeneous component of degree `d`.
    pub fn component(&self, d: Degree) -> Vec<(Monomial, i32)> {
        let period = self.period();
        self.basis()
            .into_iter()
            .filter_map(|mono| {
                let excess = mono.degree() - d;
                let v = if period == 0 {
                    (excess == 0).then_some(0)
                } else {
                    (excess % period == 0).then(|| (excess / period) as i32)
                }?;
                (self.check_v(v).is_ok() && !self.is_torsion_zero(mono, v)).then_some((mono, v))
            })
            .collect()
    }

    // ----- tensors -----

    pub fn tensor_term(&self, components: &[Monomial], v: i32) -> Result<TensorElement> {
        self.check_v(v)?;
        if components.iter().any(|c| c.0 & !self.live != 0) {
            return invalid("tensor component is not a basis monomial");
        }
        let degree = components.iter().map(|c| c.degree()).sum::<Degree>() - i64::from(v) * self.period();
        let mut out = TensorElement::zero(components.len(), degree);
        if !self.tensor_term_vanishes(components, v) {
            out.terms.insert(TensorElement::key(components), v);
        }
        Ok(out)
    }

    fn tensor_term_vanishes(&self, components: &[Monomial], v: i32) -> bool {
        v >= 1 && components.iter().any(|c| self.is_torsion(*c))
    }

    /// Toggles a tensor term into `x`, erasing torsion-zero terms.
    pub fn tensor_accumulate(&self, x: &mut TensorElement, components: &[Monomial], v: i32) {
        debug_assert_eq!(components.len(), x.arity);
        if self.tensor_term_vanishes(components, v) {
            return;
        }
        if x.is_zero() {
            x.degree = components.iter().map(|c| c.degree()).sum::<Degree>() - i64::from(v) * self.period();
        }
        x.toggle(TensorElement::key(components), v);
    }

    pub fn tensor_add(&self, x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
        if x.arity != y.arity {
            return invalid("tensor arity mismatch");
        }
        if !x.is_zero() && !y.is_zero() && x.degree != y.degree {
            return Err(Error::DegreeMismatch { left: x.degree, right: y.degree });
        }
        let (mut out, other) = if x.is_zero() { (y.clone(), x) } else { (x.clone(), y) };
        for (key, &v) in &other.terms {
            out.toggle(*key, v);
        }
        Ok(out)
    }

    /// `x += y` for tensors of the same arity and degree.
    pub fn tensor_add_assign(&self, x: &mut TensorElement, y: &TensorElement) {
        debug_assert_eq!(x.arity, y.arity);
        if x.is_zero() {
            *x = y.clone();
            return;
        }
        for (key, &v) in &y.terms {
            x.toggle(*key, v);
        }
    }

    pub fn tensor_mul(&self, x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
        if x.arity != y.arity {
            return invalid("tensor arity mismatch");
        }
        let arity = x.arity;
        let mut out = TensorElement::zero(arity, x.degree + y.degree);
        for (ka, &va) in &x.terms {
            'pairs: for (kb, &vb) in &y.terms {
                let mut key = [Monomial::ONE; 3];
                for (slot, (&a, &b)) in key.iter_mut().zip(ka.0.iter().zip(&kb.0)).take(arity) {
                    match self.mono_mul(a, b) {
                        Some(p) => *slot = p,
                        None => continue 'pairs,
                    }
                }
                let v = va + vb;
                if !self.tensor_term_vanishes(&key[..arity], v) {
                    out.toggle(TensorKey(key), v);
                }
            }
        }
        Ok(out)
    }

    /// Frobenius: squares term by term, cross terms cancel in characteristic 2.
    pub fn tensor_square(&self, x: &TensorElement) -> TensorElement {
        let arity = x.arity;
        let mut out = TensorElement::zero(arity, 2 * x.degree);
        'terms: for (k, &v) in &x.terms {
            let mut key = [Monomial::ONE; 3];
            for (slot, &a) in key.iter_mut().zip(&k.0).take(arity) {
                match self.mono_mul(a, a) {
                    Some(p) => *slot = p,
                    None => continue 'terms,
                }
            }
            if !self.tensor_term_vanishes(&key[..arity], 2 * v) {
                out.toggle(TensorKey(key), 2 * v);
            }
        }
        out
    }

    /// Multiplies a tensor by `v_n^a`.
    pub fn tensor_scale_v(&self, x: &TensorElement, a: i32) -> Result<TensorElement> {
        let mut out = TensorElement::zero(x.arity, x.degree - i64::from(a) * self.period());
        for (key, &v) in &x.terms {
            let w = v + a;
            self.check_v(w)?;
            if !self.tensor_term_vanishes(&key.0[..x.arity], w) {
                out.terms.insert(*key, w);
            }
        }
        Ok(out)
    }

    /// `x (x) y` as a 2-tensor.
    pub fn tensor_of(&self, x: &Element, y: &Element) -> TensorElement {
        let mut out = TensorElement::zero(2, x.degree + y.degree);
        for (a, va) in x.terms() {
            for (b, vb) in y.terms() {
                let v = va + vb;
                if !self.tensor_term_vanishes(&[a, b], v) {
                    out.toggle(TensorKey([a, b, Monomial::ONE]), v);
                }
            }
        }
        out
    }

    pub fn is_normal_tensor(&self, x: &TensorElement) -> bool {
        x.terms().all(|(components, v)| {
            components.iter().all(|c| c.0 & !self.live == 0)
                && self.check_v(v).is_ok()
                && !self.tensor_term_vanishes(components, v)
                && components.iter().map(|c| c.degree()).sum::<Degree>() - i64::from(v) * self.period()
                    == x.degree
        })
    }

    // ----- text -----

    pub fn label(&self) -> String {
        let mut label = format!("{}*(SO_{})", self.flavor, self.m);
        if !self.killed.is_empty() {
            let killed = self.killed.iter().map(|i| format!("e{i}")).collect::<Vec<_>>().join(",");
            label.push_str(&format!("/({killed})"));
        }
        label
    }

    /// Parses the canonical text grammar, e.g. `v^1*e1*e2 + e3`. Repeated
    /// generators are multiplied out, so `e1*e1` reads as `e2`.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let text = text.trim();
        if text == "0" {
            return Ok(Element::zero(0));
        }
        let mut acc: Option<Element> = None;
        for raw in text.split('+') {
            let term = self.parse_term(raw.trim())?;
            acc = Some(match acc {
                None => term,
                Some(prev) => self.add(&prev, &term)?,
            });
        }
        acc.ok_or_else(|| Error::Parse("empty element".into()))
    }

    fn parse_term(&self, text: &str) -> Result<Element> {
        if text.is_empty() {
            return Err(Error::Parse("empty term".into()));
        }
        let mut v = 0i32;
        let mut mono = Some(Monomial::ONE);
        let mut degree_shift: Degree = 0;
        for factor in text.split('*').map(str::trim) {
            if factor == "1" {
                continue;
            }
            if let Some(exp) = factor.strip_prefix("v^") {
                v += exp.parse::<i32>().map_err(|_| Error::Parse(format!("bad v exponent `{exp}`")))?;
            } else if factor == "v" {
                v += 1;
            } else if let Some(idx) = factor.strip_prefix('e') {
                let i: u32 = idx.parse().map_err(|_| Error::Parse(format!("bad generator `{factor}`")))?;
                if i == 0 || i > MAX_GENERATOR {
                    return Err(Error::Parse(format!("generator index {i} out of range")));
                }
                degree_shift += Degree::from(i);
                mono = match mono {
                    Some(acc) if self.is_live(i) => self.mono_mul(acc, Monomial::generator(i)),
                    _ => None,
                };
            } else {
                return Err(Error::Parse(format!("unknown factor `{factor}`")));
            }
        }
        self.check_v(v)?;
        match mono {
            Some(mono) => self.term(mono, v),
            None => Ok(Element::zero(degree_shift - i64::from(v) * self.period())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: u32, m: u32) -> Presentation {
        Presentation::new(TheoryFlavor::PeriodicMorava { n }, m).unwrap()
    }

    fn ck(n: u32, m: u32) -> Presentation {
        Presentation::new(TheoryFlavor::ConnectiveMorava { n }, m).unwrap()
    }

    fn chow(m: u32) -> Presentation {
        Presentation::new(TheoryFlavor::Chow, m).unwrap()
    }

    #[test]
    fn presentation_examples() {
        let p = k(2, 7);
        assert_eq!((p.s, p.r, p.truncations.clone(), p.torsion_threshold), (3, 2, vec![2, 1], None));
        let p = ck(2, 11);
        assert_eq!((p.s, p.torsion_threshold), (5, Some(4)));
        let p = chow(9);
        assert_eq!((p.s, p.r, p.truncations.clone()), (4, 2, vec![3, 1]));
        assert!(Presentation::new(TheoryFlavor::Chow, 2).is_err());
        assert_eq!(ck(2, 8).torsion_threshold, None);
        assert_eq!(ck(2, 9).torsion_threshold, Some(4));
    }

    #[test]
    fn ranks() {
        assert_eq!(k(2, 7).rank(), 8);
        assert_eq!(k(2, 13).rank(), 8);
        assert_eq!(chow(9).rank(), 16);
        for m in 3..24 {
            let p = chow(m);
            assert_eq!(p.basis().len() as u64, p.rank());
        }
    }

    #[test]
    fn truncations_sum_to_generator_count() {
        for n in 1..=4u32 {
            for m in 3..=(1u32 << (n + 1)) {
                for p in [k(n, m), ck(n, m), chow(m)] {
                    assert_eq!(p.truncations.iter().sum::<u32>(), (m - 1) / 2, "{}", p.label());
                }
            }
        }
    }

    #[test]
    fn monomial_products() {
        let p = k(2, 7);
        let e = |i| Monomial::generator(i);
        assert_eq!(p.mono_mul(e(1), e(1)), Some(e(2)));
        assert_eq!(p.mono_mul(e(3), e(3)), None);
        let q = chow(9);
        let e1e2 = Monomial::from_indices([1, 2]);
        assert_eq!(q.mono_mul(e1e2, e(1)), Some(e(4)));
        assert_eq!(q.mono_mul(e(4), e(4)), None);
    }

    #[test]
    fn element_arithmetic() {
        let p = ck(2, 11);
        let x = p.parse_element("e1*e3 + e5").unwrap_err();
        assert!(matches!(x, Error::DegreeMismatch { .. }));
        let x = p.parse_element("e2 + v^1*e2*e3").unwrap();
        assert_eq!(p.mul(&x, &p.one()), x);
        assert!(p.add(&x, &x).unwrap().is_zero());
        let ve4 = p.term(Monomial::generator(4), 1).unwrap();
        assert!(ve4.is_zero());
        let e2 = p.generator(2);
        let ve2 = p.scale_v(&e2, 1).unwrap();
        assert!(!ve2.is_zero());
        assert!(p.mul(&ve2, &e2).is_zero(), "v e_4 is torsion-zero");
        assert!(p.is_normal(&x));
    }

    #[test]
    fn specialization() {
        let p = ck(2, 7);
        let x = p.parse_element("e1").unwrap();
        let y = p.parse_element("v^1*e1*e3").unwrap();
        let (chow, z) = p.specialize_vn_to_zero(&p.add(&x, &y).unwrap()).unwrap();
        assert_eq!(chow.flavor, TheoryFlavor::Chow);
        assert_eq!(z.to_string(), "e1");
        let (_, z) = p.specialize_vn_to_zero(&p.scale_v(&x, 1).unwrap()).unwrap();
        assert!(z.is_zero());
        assert!(k(2, 7).specialize_vn_to_zero(&x).is_err());
    }

    #[test]
    fn tensors() {
        let p = chow(9);
        let e = |i| Monomial::generator(i);
        let a = p.tensor_term(&[e(1), Monomial::ONE], 0).unwrap();
        let b = p.tensor_term(&[Monomial::ONE, e(1)], 0).unwrap();
        assert_eq!(p.tensor_mul(&a, &b).unwrap().to_string(), "e1 (x) e1");
        assert_eq!(p.tensor_mul(&a, &a).unwrap().to_string(), "e2 (x) 1");
        let q = ck(2, 7);
        let x = q.tensor_term(&[e(2), e(2)], 1).unwrap();
        assert!(q.tensor_mul(&x, &x).unwrap().is_zero(), "e_4 = 0 when s = 3");
        let q = ck(2, 17);
        let x = q.tensor_term(&[e(2), e(2)], 1).unwrap();
        assert!(q.tensor_mul(&x, &x).unwrap().is_zero(), "v^2 e4 (x) e4 is torsion");
        let q = k(3, 15);
        let x = q.tensor_term(&[e(2), e(2)], 1).unwrap();
        assert_eq!(q.tensor_mul(&x, &x).unwrap().to_string(), "v^2*e4 (x) e4");
        let c = p.tensor_term(&[e(1), e(1), e(1)], 0).unwrap();
        assert!(p.tensor_mul(&a, &c).is_err());
    }

    #[test]
    fn text_grammar() {
        let p = k(2, 7);
        assert_eq!(p.one().to_string(), "1");
        assert_eq!(Element::zero(4).to_string(), "0");
        let x = p.parse_element("v^1*e3 + 1").unwrap();
        assert_eq!(x.to_string(), "1 + v^1*e3");
        let y = p.parse_element("v^-1*1 + e1*e2").unwrap();
        assert_eq!(y.to_string(), "v^-1*1 + e1*e2");
        let y = p.parse_element("e1*e1*e1").unwrap();
        assert_eq!(y.to_string(), "e1*e2");
        let mut monos = [
            Monomial::from_indices([2]),
            Monomial::from_indices([1, 2]),
            Monomial::ONE,
            Monomial::from_indices([1]),
            Monomial::from_indices([1, 3]),
        ];
        monos.sort();
        let text: Vec<_> = monos.iter().map(|m| m.to_string()).collect();
        assert_eq!(text, ["1", "e1", "e1*e2", "e1*e3", "e2"]);
    }

    #[test]
    fn odd_exponent_round_trip() {
        let p = chow(15);
        for mono in p.basis() {
            let t = p.odd_exponents(mono);
            assert_eq!(p.from_odd_exponents(&t), Some(mono));
        }
        assert_eq!(p.odd_exponents(Monomial::from_indices([1, 4, 6])), vec![5, 2, 0, 0]);
    }

    #[test]
    fn quotients() {
        let p = k(2, 7);
        let spin = p.quotient_by_tuple(&[0, 1]).unwrap();
        assert_eq!(spin.rank(), 2);
        assert_eq!(spin.killed, vec![1, 2]);
        assert!(spin.generator(1).is_zero());
        let q = chow(9).quotient_by_tuple(&[2, 1]).unwrap();
        assert_eq!(q.rank(), 8);
        assert_eq!(q.mono_mul(Monomial::generator(2), Monomial::generator(2)), None);
    }
}
