//! Co-multiplication, counit and antipode, plus the axiom verifier.
//!
//! The reduced co-multiplication of an odd generator `e_{2^n-1-2k}` is
//!
//! ```text
//! sum_{i=0}^{nu2(k)} v^{i+1} e_<k/2^i> (x) e_<k/2^i> prod_{j<i} (e_<k/2^j> (x) 1 + 1 (x) e_<k/2^j>)
//! ```
//!
//! with `<t> = 2^n - 1 - t`, while `e_{2^n-1}` has `v e (x) e`. In the Chow
//! ring, and for odd indices above `2^n - 1` in connective Morava K-theory,
//! the odd generators are primitive. Even generators are squares, so their
//! co-multiplication is the corresponding power of an odd one.

use crate::algebra::{Element, Monomial, Presentation, TensorElement, VScalar};
use crate::base::{nu2, Degree, TheoryFlavor};
use crate::error::{invalid, Result};
use crate::linalg::{kernel, BitVec};
use crate::report::{AxiomStatus, Report};

/// Cached co-multiplication and antipode on the generators of one presentation.
#[derive(Debug, Clone)]
pub struct HopfStructure {
    p: Presentation,
    /// `delta[b]` is `Delta(e_b)` for every live generator (index 0 unused).
    delta: Vec<TensorElement>,
    /// `antipode[b]` is `S(e_b)`.
    antipode: Vec<Element>,
}

/// `Dt(e_idx)` from the closed formula, evaluated in `p`.
fn reduced_odd(p: &Presentation, idx: u32) -> Result<TensorElement> {
    let degree = Degree::from(idx);
    let n = match p.flavor {
        TheoryFlavor::Chow => return Ok(TensorElement::zero(2, degree)),
        TheoryFlavor::ConnectiveMorava { n } | TheoryFlavor::PeriodicMorava { n } => n,
    };
    let top = (1u32 << n) - 1;
    if idx > top {
        return Ok(TensorElement::zero(2, degree));
    }
    let one = p.one();
    let square = |c: u32| -> TensorElement {
        let e = p.generator(c);
        p.tensor_of(&e, &e)
    };
    if idx == top {
        return p.tensor_scale_v(&square(top), 1);
    }
    let k = (top - idx) / 2;
    let angle = |t: u32| top - t;
    let mut out = TensorElement::zero(2, degree);
    let mut chain = p.tensor_of(&one, &one);
    for i in 0..=nu2(u64::from(k))? {
        let c = angle(k >> i);
        let term = p.tensor_scale_v(&p.tensor_mul(&square(c), &chain)?, i as i32 + 1)?;
        p.tensor_add_assign(&mut out, &term);
        let e = p.generator(c);
        let primitive = p.tensor_add(&p.tensor_of(&e, &one), &p.tensor_of(&one, &e))?;
        chain = p.tensor_mul(&chain, &primitive)?;
    }
    if out.is_zero() {
        return Ok(TensorElement::zero(2, degree));
    }
    if out.degree() != degree {
        return invalid(format!("inhomogeneous co-multiplication for e{idx}"));
    }
    Ok(out)
}

fn primitive_part(p: &Presentation, idx: u32) -> TensorElement {
    let e = p.generator(idx);
    let one = p.one();
    let mut out = p.tensor_of(&e, &one);
    p.tensor_add_assign(&mut out, &p.tensor_of(&one, &e));
    if out.is_zero() {
        TensorElement::zero(2, Degree::from(idx))
    } else {
        out
    }
}

/// Full `Delta(e_idx)` for an odd generator.
pub fn comul_gen(p: &Presentation, idx: u32) -> Result<TensorElement> {
    if idx.is_multiple_of(2) {
        return invalid(format!("e{idx} is a square; use comul for even generators"));
    }
    if idx == 0 || idx > p.s {
        return invalid(format!("e{idx} is not a generator of {}", p.label()));
    }
    if !p.is_live(idx) {
        return Ok(TensorElement::zero(2, Degree::from(idx)));
    }
    let mut out = primitive_part(p, idx);
    p.tensor_add_assign(&mut out, &reduced_odd(p, idx)?);
    if out.is_zero() {
        out = TensorElement::zero(2, Degree::from(idx));
    }
    Ok(out)
}

/// `Delta(x)` extended multiplicatively from the generators.
pub fn comul(p: &Presentation, x: &Element) -> Result<TensorElement> {
    Ok(HopfStructure::new(p)?.comul(x))
}

/// `Delta(x) - x (x) 1 - 1 (x) x`.
pub fn reduced_comul(p: &Presentation, x: &Element) -> Result<TensorElement> {
    Ok(HopfStructure::new(p)?.reduced_comul(x))
}

/// The coefficient of the unit monomial.
pub fn counit(_p: &Presentation, x: &Element) -> Option<VScalar> {
    x.coefficient(Monomial::ONE).map(VScalar)
}

pub fn antipode(p: &Presentation, x: &Element) -> Result<Element> {
    Ok(HopfStructure::new(p)?.antipode(x))
}

impl HopfStructure {
    pub fn new(p: &Presentation) -> Result<Self> {
        let mut delta = vec![TensorElement::zero(2, 0); p.s as usize + 1];
        for odd in (1..=p.s).step_by(2) {
            if !p.is_live(odd) {
                continue;
            }
            let mut d = comul_gen(p, odd)?;
            let mut b = odd;
            loop {
                delta[b as usize] = d.clone();
                b *= 2;
                if b > p.s || !p.is_live(b) {
                    break;
                }
                d = p.tensor_square(&d);
                if d.is_zero() {
                    d = TensorElement::zero(2, Degree::from(b));
                }
            }
        }
        let mut h = HopfStructure { p: p.clone(), delta, antipode: Vec::new() };
        h.antipode = h.solve_antipode()?;
        Ok(h)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.p
    }

    /// `Delta(e_b)` for a live generator.
    pub fn generator_comul(&self, b: u32) -> &TensorElement {
        assert!(self.p.is_live(b), "e{b} is not a live generator");
        &self.delta[b as usize]
    }

    pub fn comul_monomial(&self, mono: Monomial, v: i32) -> TensorElement {
        let p = &self.p;
        let mut acc = p.tensor_term(&[Monomial::ONE, Monomial::ONE], v).expect("valid v power");
        for b in mono.indices() {
            acc = p.tensor_mul(&acc, &self.delta[b as usize]).expect("arity 2");
        }
        if acc.is_zero() {
            TensorElement::zero(2, p.term_degree(mono, v))
        } else {
            acc
        }
    }

    pub fn comul(&self, x: &Element) -> TensorElement {
        let mut out = TensorElement::zero(2, x.degree());
        for (mono, v) in x.terms() {
            self.p.tensor_add_assign(&mut out, &self.comul_monomial(mono, v));
        }
        out
    }

    pub fn reduced_comul(&self, x: &Element) -> TensorElement {
        let p = &self.p;
        let mut out = self.comul(x);
        p.tensor_add_assign(&mut out, &p.tensor_of(x, &p.one()));
        p.tensor_add_assign(&mut out, &p.tensor_of(&p.one(), x));
        if out.is_zero() {
            TensorElement::zero(2, x.degree())
        } else {
            out
        }
    }

    /// `Delta` of the 3-tensor obtained by applying `Delta` to slot `slot` of `x`.
    pub fn comul_in_slot(&self, x: &TensorElement, slot: usize) -> TensorElement {
        assert_eq!(x.arity(), 2);
        let p = &self.p;
        let mut out = TensorElement::zero(3, x.degree());
        for (components, v) in x.terms() {
            let split = self.comul_monomial(components[slot], 0);
            let other = components[1 - slot];
            for (pair, w) in split.terms() {
                let key = if slot == 0 { [pair[0], pair[1], other] } else { [other, pair[0], pair[1]] };
                p.tensor_accumulate(&mut out, &key, v + w);
            }
        }
        out
    }

    /// Fixpoint iteration of `S(e_b) = e_b + sum S(x') x''` over the reduced
    /// co-multiplication terms; it stabilizes because the augmentation ideal
    /// is nilpotent.
    fn solve_antipode(&self) -> Result<Vec<Element>> {
        let p = &self.p;
        let mut s: Vec<Element> = (0..=p.s).map(|b| p.generator(b.max(1))).collect();
        s[0] = p.one();
        let reduced: Vec<Option<TensorElement>> = (0..=p.s)
            .map(|b| p.is_live(b).then(|| self.reduced_comul(&p.generator(b))))
            .collect();
        let limit = p.truncations.iter().map(|&k| 1usize << k).sum::<usize>() + 2;
        for _ in 0..=limit {
            let mut next = s.clone();
            let mut changed = false;
            for b in p.live_generators() {
                let mut value = p.generator(b);
                for (components, v) in reduced[b as usize].as_ref().expect("live").terms() {
                    let left = self.apply_antipode(&s, components[0], v);
                    let right = p.term(components[1], 0)?;
                    p.add_assign(&mut value, &p.mul(&left, &right));
                }
                if value != s[b as usize] {
                    changed = true;
                }
                next[b as usize] = value;
            }
            s = next;
            if !changed {
                return Ok(s);
            }
        }
        invalid(format!("antipode recursion did not stabilize on {}", p.label()))
    }

    fn apply_antipode(&self, s: &[Element], mono: Monomial, v: i32) -> Element {
        let p = &self.p;
        let mut acc = p.term(Monomial::ONE, v).expect("valid v power");
        for b in mono.indices() {
            acc = p.mul(&acc, &s[b as usize]);
        }
        if acc.is_zero() {
            Element::zero(p.term_degree(mono, v))
        } else {
            acc
        }
    }

    pub fn antipode(&self, x: &Element) -> Element {
        let mut out = Element::zero(x.degree());
        for (mono, v) in x.terms() {
            self.p.add_assign(&mut out, &self.apply_antipode(&self.antipode, mono, v));
        }
        out
    }

    /// `m (S (x) id) Delta` (or with `S` in the right slot).
    pub fn convolve_antipode(&self, x: &Element, right: bool) -> Element {
        let p = &self.p;
        let mut out = Element::zero(x.degree());
        for (components, v) in self.comul(x).terms() {
            let (a, b) = (components[0], components[1]);
            let prod = if right {
                p.mul(&p.term(a, v).expect("basis"), &self.apply_antipode(&self.antipode, b, 0))
            } else {
                p.mul(&self.apply_antipode(&self.antipode, a, v), &p.term(b, 0).expect("basis"))
            };
            p.add_assign(&mut out, &prod);
        }
        out
    }
}

fn first_term(x: &TensorElement) -> String {
    x.to_string().split(" + ").next().unwrap_or("0").to_string()
}

/// Basis monomials used for the antipode check; all of them for small ranks,
/// otherwise the generators only (both sides are algebra maps).
const FULL_ANTIPODE_RANK: u64 = 256;
const FULL_COALGEBRA_RANK: u64 = 2048;
const FULL_MULTIPLICATIVITY_RANK: u64 = 2048;

pub fn verify_hopf(p: &Presentation) -> Result<Report> {
    let h = HopfStructure::new(p)?;
    let mut coassoc = AxiomStatus::new("coassociativity");
    let mut counit_ax = AxiomStatus::new("counit");
    let mut relations = AxiomStatus::new("relations");
    let mut cocomm = AxiomStatus::new("cocommutativity");
    let mut anti = AxiomStatus::new("antipode");
    let one = p.one();

    for b in p.live_generators() {
        let d = h.generator_comul(b);
        check_coalgebra(&h, &format!("e{b}"), &p.generator(b), d, &mut coassoc, &mut counit_ax, &mut cocomm)?;

        // e_b^2 = e_{2b}, or 0 at the end of the chain.
        let sq = p.tensor_square(d);
        let target = if p.is_live(2 * b) {
            let mut t = comul_gen(p, odd_part(b))?;
            for _ in 0..=b.trailing_zeros() {
                t = p.tensor_square(&t);
            }
            t
        } else {
            TensorElement::zero(2, 2 * Degree::from(b))
        };
        let diff = p.tensor_add(&sq, &target)?;
        relations.record(diff.is_zero(), || format!("Delta(e{b})^2: {}", first_term(&diff)));

        if let Some(t) = p.torsion_threshold {
            if b >= t {
                let vd = p.tensor_scale_v(d, 1)?;
                relations.record(vd.is_zero(), || format!("v*Delta(e{b}): {}", first_term(&vd)));
            }
        }
    }

    if p.rank() <= FULL_COALGEBRA_RANK {
        for mono in p.basis().into_iter().filter(|m| m.len() >= 2) {
            let x = p.term(mono, 0)?;
            let d = h.comul_monomial(mono, 0);
            check_coalgebra(&h, &mono.to_string(), &x, &d, &mut coassoc, &mut counit_ax, &mut cocomm)?;
        }
    }

    // Delta is multiplicative: compare Delta(e_b x) with Delta(e_b) Delta(x),
    // which factor the product differently and exercise the carries.
    if p.rank() <= FULL_MULTIPLICATIVITY_RANK {
        let basis = p.basis();
        for b in p.live_generators() {
            let g = Monomial::generator(b);
            for &mono in &basis {
                let degree = p.term_degree(g, 0) + p.term_degree(mono, 0);
                let lhs = match p.mono_mul(g, mono) {
                    Some(prod) => h.comul_monomial(prod, 0),
                    None => TensorElement::zero(2, degree),
                };
                let rhs = p.tensor_mul(h.generator_comul(b), &h.comul_monomial(mono, 0))?;
                let diff = p.tensor_add(&lhs, &rhs)?;
                relations.record(diff.is_zero(), || format!("Delta(e{b}*{mono}): {}", first_term(&diff)));
            }
        }
    }

    if !p.killed.is_empty() {
        let ambient = p.ambient();
        let ha = HopfStructure::new(&ambient)?;
        for &b in &p.killed {
            let d = ha.generator_comul(b);
            let mut projected = TensorElement::zero(2, d.degree());
            for (components, v) in d.terms() {
                if components.iter().all(|c| c.bits() & !p.live_mask() == 0) {
                    p.tensor_accumulate(&mut projected, components, v);
                }
            }
            relations.record(projected.is_zero(), || format!("Delta(e{b}) mod I: {}", first_term(&projected)));
        }
    }

    let monomials: Vec<Monomial> = if p.rank() <= FULL_ANTIPODE_RANK {
        p.basis()
    } else {
        p.live_generators().map(Monomial::generator).collect()
    };
    for mono in monomials {
        let x = p.term(mono, 0)?;
        let expected = if mono.is_one() { one.clone() } else { Element::zero(x.degree()) };
        for right in [false, true] {
            let got = h.convolve_antipode(&x, right);
            anti.record(got == expected, || format!("{mono}: m(S (x) id)Delta gives {got}"));
        }
    }

    Ok(Report::new("hopf", p.label(), vec![coassoc, counit_ax, relations, cocomm, anti]))
}

fn check_coalgebra(
    h: &HopfStructure,
    label: &str,
    x: &Element,
    d: &TensorElement,
    coassoc: &mut AxiomStatus,
    counit_ax: &mut AxiomStatus,
    cocomm: &mut AxiomStatus,
) -> Result<()> {
    let p = h.presentation();
    let diff = p.tensor_add(&h.comul_in_slot(d, 0), &h.comul_in_slot(d, 1))?;
    coassoc.record(diff.is_zero(), || format!("{label}: {}", first_term(&diff)));

    let mut left = Element::zero(x.degree());
    let mut right = Element::zero(x.degree());
    for (components, v) in d.terms() {
        if components[0].is_one() {
            p.accumulate(&mut left, components[1], v);
        }
        if components[1].is_one() {
            p.accumulate(&mut right, components[0], v);
        }
    }
    counit_ax.record(left == *x && right == *x, || {
        format!("{label}: (eps (x) id) gives {left}, (id (x) eps) gives {right}")
    });

    let diff = p.tensor_add(d, &d.swap())?;
    cocomm.record(diff.is_zero(), || format!("{label}: {}", first_term(&diff)));
    Ok(())
}

fn odd_part(b: u32) -> u32 {
    b >> b.trailing_zeros()
}

/// An F_2-basis of the primitive elements of degree `d`.
pub fn primitive_space(p: &Presentation, d: Degree) -> Result<Vec<Element>> {
    let h = HopfStructure::new(p)?;
    let component = p.component(d);
    let mut index = std::collections::BTreeMap::new();
    let reduced: Vec<TensorElement> = component
        .iter()
        .map(|&(mono, v)| h.reduced_comul(&p.term(mono, v).expect("component term")))
        .collect();
    for t in &reduced {
        for (components, v) in t.terms() {
            let next = index.len();
            index.entry((components[0], components[1], v)).or_insert(next);
        }
    }
    let dim = index.len();
    let images: Vec<BitVec> = reduced
        .iter()
        .map(|t| BitVec::from_indices(dim, t.terms().map(|(c, v)| index[&(c[0], c[1], v)])))
        .collect();
    let mut out = Vec::new();
    for combo in kernel(dim, &images) {
        let mut x = Element::zero(d);
        for j in combo.ones() {
            let (mono, v) = component[j];
            p.accumulate(&mut x, mono, v);
        }
        out.push(x);
    }
    out.sort_by_key(|x| x.to_string());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pres(flavor: TheoryFlavor, m: u32) -> Presentation {
        Presentation::new(flavor, m).unwrap()
    }

    fn k(n: u32) -> TheoryFlavor {
        TheoryFlavor::PeriodicMorava { n }
    }

    fn ck(n: u32) -> TheoryFlavor {
        TheoryFlavor::ConnectiveMorava { n }
    }

    #[test]
    fn generator_examples() {
        let p = pres(k(2), 7);
        assert_eq!(comul_gen(&p, 3).unwrap().to_string(), "1 (x) e3 + e3 (x) 1 + v^1*e3 (x) e3");
        assert_eq!(reduced_odd(&p, 3).unwrap().to_string(), "v^1*e3 (x) e3");
        let p = pres(k(3), 15);
        let mut terms: Vec<String> =
            reduced_odd(&p, 3).unwrap().to_string().split(" + ").map(String::from).collect();
        terms.sort();
        assert_eq!(terms, ["v^1*e5 (x) e5", "v^2*e5*e6 (x) e6", "v^2*e6 (x) e5*e6"]);
        assert!(comul_gen(&p, 2).is_err());
    }

    #[test]
    fn delta_e1_is_the_formal_group_formula() {
        // Delta(e1) = e1 (x) 1 + 1 (x) e1 + v e1^{2^{n-1}} (x) e1^{2^{n-1}}.
        for n in 1..=4u32 {
            let p = pres(k(n), (1 << (n + 1)) - 1);
            let half = 1u32 << (n - 1);
            let expected = p
                .tensor_scale_v(&p.tensor_of(&p.generator(half), &p.generator(half)), 1)
                .unwrap();
            assert_eq!(reduced_odd(&p, 1).unwrap(), expected, "n = {n}");
        }
    }

    #[test]
    fn squares_and_counit() {
        let p = pres(k(2), 7);
        let e2 = p.generator(2);
        assert_eq!(comul(&p, &e2).unwrap().to_string(), "1 (x) e2 + e2 (x) 1");
        assert_eq!(comul(&p, &p.one()).unwrap().to_string(), "1 (x) 1");
        assert_eq!(counit(&p, &p.one()), Some(VScalar(0)));
        assert_eq!(counit(&p, &p.generator(1)), None);
        let x = p.parse_element("v^2*1 + v^3*e3").unwrap();
        assert_eq!(counit(&p, &x), Some(VScalar(2)));
        let q = pres(ck(2), 11);
        for j in [1u32, 3, 5] {
            let sq = p_square(&q, j);
            assert!(q.reduced_comul_is_zero(&sq), "e{j}^2 primitive");
        }
    }

    fn p_square(p: &Presentation, j: u32) -> Element {
        p.mul(&p.generator(j), &p.generator(j))
    }

    trait Primitive {
        fn reduced_comul_is_zero(&self, x: &Element) -> bool;
    }

    impl Primitive for Presentation {
        fn reduced_comul_is_zero(&self, x: &Element) -> bool {
            reduced_comul(self, x).unwrap().is_zero()
        }
    }

    #[test]
    fn antipode_examples() {
        let p = pres(k(2), 7);
        assert_eq!(antipode(&p, &p.one()).unwrap(), p.one());
        let e2 = p.generator(2);
        assert_eq!(antipode(&p, &e2).unwrap(), e2);
        let h = HopfStructure::new(&p).unwrap();
        for mono in p.basis() {
            let x = p.term(mono, 0).unwrap();
            let expected = if mono.is_one() { p.one() } else { Element::zero(x.degree()) };
            assert_eq!(h.convolve_antipode(&x, false), expected);
            assert_eq!(h.antipode(&h.antipode(&x)), x, "S is an involution");
        }
    }

    #[test]
    fn verifier_passes_on_examples() {
        for p in [pres(k(2), 7), pres(ck(2), 11), pres(TheoryFlavor::Chow, 23), pres(k(3), 15)] {
            let report = verify_hopf(&p).unwrap();
            assert!(report.passed, "{report:?}");
        }
    }

    #[test]
    fn verifier_detects_a_broken_quotient() {
        // Killing e5 alone in K(3)*(SO_15) leaves Dt(e5) = v e6 (x) e6 behind.
        let p = pres(k(3), 15);
        let q = p.quotient_by_tuple(&[3, 2, 0, 1]).unwrap();
        let report = verify_hopf(&q).unwrap();
        assert!(!report.passed);
        let relations = report.axiom("relations").unwrap();
        assert_eq!(relations.witness.as_deref(), Some("Delta(e5) mod I: v^1*e6 (x) e6"));
        let spin = p.quotient_by_tuple(&[0, 2, 1, 1]).unwrap();
        assert!(verify_hopf(&spin).unwrap().passed);
    }

    #[test]
    fn primitive_space_examples() {
        let chow = pres(TheoryFlavor::Chow, 9);
        let prim = primitive_space(&chow, 3).unwrap();
        assert_eq!(prim.iter().map(|x| x.to_string()).collect::<Vec<_>>(), ["e3"]);
        let p = pres(k(2), 7);
        let prim = primitive_space(&p, 2).unwrap();
        assert_eq!(prim.iter().map(|x| x.to_string()).collect::<Vec<_>>(), ["e2"]);
        assert!(primitive_space(&p, 1).unwrap().is_empty());
    }

    #[test]
    fn small_m_generators_are_primitive() {
        for n in 1..=3u32 {
            for m in 3..=(1u32 << n) {
                let p = pres(k(n), m);
                for odd in p.odd_generators().collect::<Vec<_>>() {
                    assert!(reduced_odd(&p, odd).unwrap().is_zero(), "n={n} m={m} e{odd}");
                }
            }
        }
    }

    #[test]
    fn chow_specialization_intertwines_comul() {
        for n in 1..=3u32 {
            for m in 3..=((1u32 << (n + 1)) + 6).min(23) {
                let p = pres(ck(n), m);
                for mono in p.basis() {
                    let x = p.term(mono, 0).unwrap();
                    let d = comul(&p, &x).unwrap();
                    let chow = pres(TheoryFlavor::Chow, m);
                    let dc = comul(&chow, &chow.term(mono, 0).unwrap()).unwrap();
                    let mut reduced = TensorElement::zero(2, d.degree());
                    for (c, v) in d.terms() {
                        if v == 0 {
                            chow.tensor_accumulate(&mut reduced, c, 0);
                        }
                    }
                    assert_eq!(reduced, dc, "n={n} m={m} {mono}");
                }
            }
        }
    }

    #[test]
    fn primitives_reduce_to_chow_primitives() {
        // Modulo v_n every primitive lies in the span of the powers of the
        // odd generators, which are exactly the Chow primitives.
        for (n, m) in [(2u32, 7u32), (2, 11), (3, 15)] {
            let p = pres(ck(n), m);
            let chow = pres(TheoryFlavor::Chow, m);
            for d in 0..=p.top_degree() {
                let chow_prims: Vec<Monomial> =
                    primitive_space(&chow, d).unwrap().iter().flat_map(|x| x.terms().map(|t| t.0)).collect();
                for x in primitive_space(&p, d).unwrap() {
                    for (mono, v) in x.terms() {
                        if v == 0 {
                            assert_eq!(mono.len(), 1, "{x}");
                            assert!(chow_prims.contains(&mono), "{x}");
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn comul_is_homogeneous_and_normal(n in 1u32..=3, m in 3u32..=23, flavor in 0u8..3, bits in any::<u64>()) {
            let f = match flavor { 0 => TheoryFlavor::Chow, 1 => ck(n), _ => k(n) };
            let p = pres(f, m);
            let mono = Monomial::from_bits(bits & p.live_mask());
            let x = p.term(mono, 0).unwrap();
            let d = comul(&p, &x).unwrap();
            prop_assert!(p.is_normal_tensor(&d));
            prop_assert_eq!(d.degree(), x.degree());
            prop_assert_eq!(d.swap(), d.clone());
        }

        #[test]
        fn comul_is_multiplicative(n in 1u32..=3, m in 3u32..=17, a in any::<u64>(), b in any::<u64>()) {
            let p = pres(ck(n), m);
            let h = HopfStructure::new(&p).unwrap();
            let x = p.term(Monomial::from_bits(a & p.live_mask()), 0).unwrap();
            let y = p.term(Monomial::from_bits(b & p.live_mask()), 0).unwrap();
            let lhs = h.comul(&p.mul(&x, &y));
            let rhs = p.tensor_mul(&h.comul(&x), &h.comul(&y)).unwrap();
            prop_assert!(p.tensor_add(&lhs, &rhs).unwrap().is_zero());
        }
    }
}
