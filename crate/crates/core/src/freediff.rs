//! The free differential bialgebra E(H) on a polynomial bialgebra
//! H = k[x₁,…,x_k], truncated by a word-weight cap: letters D^n(x_j) of
//! weight n+1, the ideal generated by Σᵢ C(n,i)[Dⁱ(x_p), D^{n−i}(x_q)], the
//! derivation d raising letter orders, and the inductive coproduct
//! Δ(Dⁿx) = (d⊗I + I⊗d)(Δ(Dⁿ⁻¹x)) − [φ, Δ(Dⁿ⁻¹x)] for a 2-cocycle φ.

use std::collections::BTreeMap;

use num::Zero;

use crate::bialgebra::Check;
use crate::error::{CotwistError, Result};
use crate::linalg::{vec_zero, Subspace, Vector};
use crate::scalar::{binomial, s_one, Scalar};

/// A letter D^order(x_gen); weight = order + 1.
pub type Letter = (u32, usize);
/// A word in the free algebra on letters.
pub type Word = Vec<Letter>;

pub fn word_weight(w: &[Letter]) -> u32 {
    w.iter().map(|&(o, _)| o + 1).sum()
}

/// Element of the truncated E(H), sparse over words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EElement {
    pub coords: BTreeMap<Word, Scalar>,
}

impl EElement {
    pub fn zero() -> Self {
        EElement::default()
    }

    pub fn one() -> Self {
        EElement::from_word(Vec::new())
    }

    pub fn from_word(w: Word) -> Self {
        let mut e = EElement::zero();
        e.add_term(w, s_one());
        e
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        self.insert_add(w, c);
    }

    pub fn add(&self, other: &EElement) -> EElement {
        let mut out = self.clone();
        for (w, c) in &other.coords {
            out.insert_add(w.clone(), c.clone());
        }
        out
    }

    fn insert_add(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.coords.entry(w.clone()).or_insert_with(Scalar::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.coords.remove(&w);
        }
    }

    pub fn sub(&self, other: &EElement) -> EElement {
        self.add(&other.scale(&-s_one()))
    }

    pub fn scale(&self, c: &Scalar) -> EElement {
        if c.is_zero() {
            return EElement::zero();
        }
        EElement {
            coords: self
                .coords
                .iter()
                .map(|(w, v)| (w.clone(), v * c))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Coefficient of the empty word: the counit.
    pub fn counit(&self) -> Scalar {
        self.coords.get(&Vec::new()).cloned().unwrap_or_else(Scalar::zero)
    }
}

/// Element of the truncated E(H)⊗E(H).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct E2Element {
    pub coords: BTreeMap<(Word, Word), Scalar>,
}

impl E2Element {
    pub fn zero() -> Self {
        E2Element::default()
    }

    pub fn insert_add(&mut self, k: (Word, Word), c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.coords.entry(k.clone()).or_insert_with(Scalar::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.coords.remove(&k);
        }
    }

    pub fn add(&self, other: &E2Element) -> E2Element {
        let mut out = self.clone();
        for (k, c) in &other.coords {
            out.insert_add(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &E2Element) -> E2Element {
        self.add(&other.scale(&-s_one()))
    }

    pub fn scale(&self, c: &Scalar) -> E2Element {
        if c.is_zero() {
            return E2Element::zero();
        }
        E2Element {
            coords: self
                .coords
                .iter()
                .map(|(k, v)| (k.clone(), v * c))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
}

/// Element of the truncated E(H)^{⊗3}, for coassociativity checks.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct E3Element {
    pub coords: BTreeMap<(Word, Word, Word), Scalar>,
}

impl E3Element {
    fn insert_add(&mut self, k: (Word, Word, Word), c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.coords.entry(k.clone()).or_insert_with(Scalar::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.coords.remove(&k);
        }
    }

    pub fn sub(&self, other: &E3Element) -> E3Element {
        let mut out = self.clone();
        for (k, c) in &other.coords {
            out.insert_add(k.clone(), -c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
}

/// A polynomial-bialgebra element of H⊗H given by exponent-vector pairs,
/// the input form of φ.
pub type PolyTensor = Vec<((Vec<u32>, Vec<u32>), Scalar)>;

#[derive(Debug, Clone)]
pub struct FreeDiffAlgebra {
    pub num_gens: usize,
    pub gen_names: Vec<String>,
    /// Basis words of the quotient live at weight ≤ weight_cap.
    pub weight_cap: u32,
    /// Internal storage cap: coproduct correction terms overflow the basis
    /// weight, so elements are tracked up to weight_cap + 2.
    cap: u32,
    pub words_by_weight: Vec<Vec<Word>>,
    index: BTreeMap<Word, (usize, usize)>,
    /// Homogeneous pieces of the truncated two-sided ideal.
    ideal: Vec<Subspace>,
    pub phi: E2Element,
    /// Δ of the letter D^order(x_gen); None past the computable window.
    delta_letter: Vec<Vec<Option<E2Element>>>,
}

fn monomial_word(alpha: &[u32]) -> Word {
    let mut w = Vec::new();
    for (g, &e) in alpha.iter().enumerate() {
        for _ in 0..e {
            w.push((0, g));
        }
    }
    w
}

/// Binomial coproduct of a monomial in k[x₁…x_k].
fn poly_delta(alpha: &[u32]) -> Vec<((Vec<u32>, Vec<u32>), Scalar)> {
    let mut out = Vec::new();
    let mut beta = vec![0u32; alpha.len()];
    loop {
        let mut coeff = s_one();
        let mut gamma = vec![0u32; alpha.len()];
        for i in 0..alpha.len() {
            gamma[i] = alpha[i] - beta[i];
            coeff = coeff * binomial(alpha[i] as usize, beta[i] as usize);
        }
        out.push(((beta.clone(), gamma), coeff));
        let mut i = 0;
        loop {
            if i == alpha.len() {
                return out;
            }
            if beta[i] < alpha[i] {
                beta[i] += 1;
                break;
            }
            beta[i] = 0;
            i += 1;
        }
    }
}

/// cocd for φ in the polynomial bialgebra: 1⊗φ + (I⊗Δ)φ = φ⊗1 + (Δ⊗I)φ.
fn poly_phi_is_cocycle(num_gens: usize, phi: &PolyTensor) -> bool {
    let mut res: BTreeMap<(Vec<u32>, Vec<u32>, Vec<u32>), Scalar> = BTreeMap::new();
    let zero_m = vec![0u32; num_gens];
    let mut add = |k: (Vec<u32>, Vec<u32>, Vec<u32>), c: Scalar| {
        if c.is_zero() {
            return;
        }
        let e = res.entry(k.clone()).or_insert_with(Scalar::zero);
        *e = &*e + &c;
        if e.is_zero() {
            res.remove(&k);
        }
    };
    for ((a, b), c) in phi {
        add((zero_m.clone(), a.clone(), b.clone()), c.clone());
        for ((b1, b2), w) in poly_delta(b) {
            add((a.clone(), b1, b2), c * &w);
        }
        add((a.clone(), b.clone(), zero_m.clone()), -c.clone());
        for ((a1, a2), w) in poly_delta(a) {
            add((a1, a2, b.clone()), -(c * &w));
        }
    }
    res.is_empty()
}

fn poly_phi_is_normalized(num_gens: usize, phi: &PolyTensor) -> bool {
    let zero_m = vec![0u32; num_gens];
    let mut left: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
    let mut right: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
    for ((a, b), c) in phi {
        if *a == zero_m {
            let e = left.entry(b.clone()).or_insert_with(Scalar::zero);
            *e = &*e + c;
        }
        if *b == zero_m {
            let e = right.entry(a.clone()).or_insert_with(Scalar::zero);
            *e = &*e + c;
        }
    }
    left.values().all(Scalar::is_zero) && right.values().all(Scalar::is_zero)
}

impl FreeDiffAlgebra {
    /// Builds the truncated E(H) for H = k[x₁…x_k]; φ must be a normalized
    /// co-Hochschild 2-cocycle of H given by exponent-vector pairs.
    pub fn build(
        num_gens: usize,
        gen_names: Vec<String>,
        phi: &PolyTensor,
        weight_cap: u32,
    ) -> Result<Self> {
        if num_gens == 0 || gen_names.len() != num_gens {
            return Err(CotwistError::Precondition(
                "need at least one generator with matching names".into(),
            ));
        }
        if weight_cap < 2 {
            return Err(CotwistError::Precondition("weight cap must be ≥ 2".into()));
        }
        if !poly_phi_is_cocycle(num_gens, phi) {
            return Err(CotwistError::Precondition(
                "φ is not a co-Hochschild 2-cocycle".into(),
            ));
        }
        if !poly_phi_is_normalized(num_gens, phi) {
            return Err(CotwistError::Precondition(
                "φ is not normalized: (ε⊗I)φ or (I⊗ε)φ ≠ 0".into(),
            ));
        }
        let cap = weight_cap + 2;
        // Enumerate all words of each weight 0..=cap.
        let mut words_by_weight: Vec<Vec<Word>> = vec![vec![Vec::new()]];
        for w in 1..=cap {
            let mut ws = Vec::new();
            // first letter weight o+1, rest from lower weight
            for o in 0..w {
                let rest = &words_by_weight[(w - o - 1) as usize];
                for g in 0..num_gens {
                    for r in rest {
                        let mut nw = Vec::with_capacity(r.len() + 1);
                        nw.push((o, g));
                        nw.extend_from_slice(r);
                        ws.push(nw);
                    }
                }
            }
            words_by_weight.push(ws);
        }
        let mut index = BTreeMap::new();
        for (w, ws) in words_by_weight.iter().enumerate() {
            for (i, word) in ws.iter().enumerate() {
                index.insert(word.clone(), (w, i));
            }
        }
        let mut e = FreeDiffAlgebra {
            num_gens,
            gen_names,
            weight_cap,
            cap,
            words_by_weight,
            index,
            ideal: Vec::new(),
            phi: E2Element::zero(),
            delta_letter: Vec::new(),
        };
        // Ideal pieces: span of u·r·v for the homogeneous relations r.
        let mut relations: Vec<EElement> = Vec::new();
        for p in 0..num_gens {
            for q in p + 1..num_gens {
                for n in 0..=(cap.saturating_sub(2)) {
                    relations.push(e.relation(p, q, n));
                }
            }
        }
        let mut ideal = Vec::new();
        for w in 0..=cap as usize {
            let dim = e.words_by_weight[w].len();
            let mut vecs: Vec<Vector> = Vec::new();
            for r in &relations {
                let rw = r
                    .coords
                    .keys()
                    .next()
                    .map(|k| word_weight(k))
                    .unwrap_or(0) as usize;
                if rw > w {
                    continue;
                }
                let rem = w - rw;
                for lu in 0..=rem {
                    for u in &e.words_by_weight[lu] {
                        for v in &e.words_by_weight[rem - lu] {
                            let mut el = EElement::zero();
                            for (word, c) in &r.coords {
                                let mut nw = u.clone();
                                nw.extend_from_slice(word);
                                nw.extend_from_slice(v);
                                el.insert_add(nw, c.clone());
                            }
                            vecs.push(e.dense(&el, w));
                        }
                    }
                }
            }
            ideal.push(Subspace::from_vectors(dim, vecs));
        }
        e.ideal = ideal;
        // Embed φ as order-0 words.
        let mut phi_e = E2Element::zero();
        for ((a, b), c) in phi {
            if a.iter().sum::<u32>() > cap || b.iter().sum::<u32>() > cap {
                return Err(CotwistError::WeightOverflow(
                    "φ component exceeds the weight cap".into(),
                ));
            }
            phi_e.insert_add((monomial_word(a), monomial_word(b)), c.clone());
        }
        e.phi = e.reduce2(&phi_e);
        // Letter coproducts, inductively; stop at the first overflow.
        let mut delta_letter = vec![Vec::new(); num_gens];
        for g in 0..num_gens {
            // Δ(x) = x⊗1 + 1⊗x
            let mut d0 = E2Element::zero();
            d0.insert_add((vec![(0, g)], Vec::new()), s_one());
            d0.insert_add((Vec::new(), vec![(0, g)]), s_one());
            delta_letter[g].push(Some(d0));
            for n in 1..cap {
                let prev = match &delta_letter[g][(n - 1) as usize] {
                    Some(p) => p.clone(),
                    None => {
                        delta_letter[g].push(None);
                        continue;
                    }
                };
                let next = (|| -> Result<E2Element> {
                    let lifted = e.d2(&prev)?;
                    let comm = e.commutator2(&e.phi, &prev)?;
                    Ok(e.reduce2(&lifted.sub(&comm)))
                })();
                delta_letter[g].push(next.ok());
            }
        }
        e.delta_letter = delta_letter;
        Ok(e)
    }

    /// The relation Σᵢ C(n,i) [Dⁱ(x_p), D^{n−i}(x_q)], weight n+2.
    pub fn relation(&self, p: usize, q: usize, n: u32) -> EElement {
        let mut r = EElement::zero();
        for i in 0..=n {
            let c = binomial(n as usize, i as usize);
            r.insert_add(vec![(i, p), (n - i, q)], c.clone());
            r.insert_add(vec![(n - i, q), (i, p)], -c);
        }
        r
    }

    fn dense(&self, el: &EElement, w: usize) -> Vector {
        let dim = self.words_by_weight[w].len();
        let mut v = vec_zero(dim);
        for (word, c) in &el.coords {
            let &(ww, i) = self.index.get(word).expect("word within cap");
            assert_eq!(ww, w, "element not homogeneous of the expected weight");
            v[i] = c.clone();
        }
        v
    }

    /// Canonical normal form modulo the truncated ideal.
    pub fn reduce(&self, el: &EElement) -> EElement {
        let mut by_weight: BTreeMap<usize, EElement> = BTreeMap::new();
        for (word, c) in &el.coords {
            let w = word_weight(word) as usize;
            by_weight
                .entry(w)
                .or_insert_with(EElement::zero)
                .insert_add(word.clone(), c.clone());
        }
        let mut out = EElement::zero();
        for (w, piece) in by_weight {
            let reduced = self.ideal[w].reduce(&self.dense(&piece, w));
            for (i, c) in reduced.into_iter().enumerate() {
                if !c.is_zero() {
                    out.insert_add(self.words_by_weight[w][i].clone(), c);
                }
            }
        }
        out
    }

    /// Normal form in E⊗E modulo ideal⊗E + E⊗ideal: reduce each slot.
    pub fn reduce2(&self, t: &E2Element) -> E2Element {
        let mut mid = E2Element::zero();
        for ((a, b), c) in &t.coords {
            let ra = self.reduce(&EElement::from_word(a.clone()).scale(c));
            for (aw, ac) in ra.coords {
                mid.insert_add((aw, b.clone()), ac);
            }
        }
        let mut out = E2Element::zero();
        for ((a, b), c) in &mid.coords {
            let rb = self.reduce(&EElement::from_word(b.clone()).scale(c));
            for (bw, bc) in rb.coords {
                out.insert_add((a.clone(), bw), bc);
            }
        }
        out
    }

    fn reduce3(&self, t: &E3Element) -> E3Element {
        let mut out = E3Element::default();
        for ((a, b, c), v) in &t.coords {
            let ra = self.reduce(&EElement::from_word(a.clone()));
            let rb = self.reduce(&EElement::from_word(b.clone()));
            let rc = self.reduce(&EElement::from_word(c.clone()));
            for (aw, ac) in &ra.coords {
                for (bw, bc) in &rb.coords {
                    for (cw, cc) in &rc.coords {
                        out.insert_add(
                            (aw.clone(), bw.clone(), cw.clone()),
                            v * ac * bc * cc,
                        );
                    }
                }
            }
        }
        out
    }

    /// Product in the truncated free algebra; overflow if a resulting word
    /// exceeds the cap.
    pub fn mul(&self, a: &EElement, b: &EElement) -> Result<EElement> {
        let mut out = EElement::zero();
        for (wa, ca) in &a.coords {
            for (wb, cb) in &b.coords {
                if word_weight(wa) + word_weight(wb) > self.cap {
                    return Err(CotwistError::WeightOverflow(format!(
                        "product weight {} exceeds cap {}",
                        word_weight(wa) + word_weight(wb),
                        self.cap
                    )));
                }
                let mut nw = wa.clone();
                nw.extend_from_slice(wb);
                out.insert_add(nw, ca * cb);
            }
        }
        Ok(out)
    }

    fn mul2(&self, a: &E2Element, b: &E2Element) -> Result<E2Element> {
        let mut out = E2Element::zero();
        for ((a1, a2), ca) in &a.coords {
            for ((b1, b2), cb) in &b.coords {
                if word_weight(a1) + word_weight(b1) > self.cap
                    || word_weight(a2) + word_weight(b2) > self.cap
                {
                    return Err(CotwistError::WeightOverflow(
                        "tensor product weight exceeds cap".into(),
                    ));
                }
                let mut l = a1.clone();
                l.extend_from_slice(b1);
                let mut r = a2.clone();
                r.extend_from_slice(b2);
                out.insert_add((l, r), ca * cb);
            }
        }
        Ok(self.reduce2(&out))
    }

    fn commutator2(&self, a: &E2Element, b: &E2Element) -> Result<E2Element> {
        Ok(self.mul2(a, b)?.sub(&self.mul2(b, a)?))
    }

    /// The derivation d: raises each letter order by one with Leibniz.
    pub fn derivation(&self, el: &EElement) -> Result<EElement> {
        let mut out = EElement::zero();
        for (word, c) in &el.coords {
            if word_weight(word) + 1 > self.cap && !word.is_empty() {
                return Err(CotwistError::WeightOverflow(format!(
                    "d raises weight past the cap {}",
                    self.cap
                )));
            }
            for s in 0..word.len() {
                let mut nw = word.clone();
                nw[s].0 += 1;
                out.insert_add(nw, c.clone());
            }
        }
        Ok(self.reduce(&out))
    }

    /// d⊗I + I⊗d on E⊗E.
    pub fn d2(&self, t: &E2Element) -> Result<E2Element> {
        let mut out = E2Element::zero();
        for ((a, b), c) in &t.coords {
            if (!a.is_empty() && word_weight(a) + 1 > self.cap)
                || (!b.is_empty() && word_weight(b) + 1 > self.cap)
            {
                return Err(CotwistError::WeightOverflow(
                    "d⊗I + I⊗d raises weight past the cap".into(),
                ));
            }
            for s in 0..a.len() {
                let mut na = a.clone();
                na[s].0 += 1;
                out.insert_add((na, b.clone()), c.clone());
            }
            for s in 0..b.len() {
                let mut nb = b.clone();
                nb[s].0 += 1;
                out.insert_add((a.clone(), nb), c.clone());
            }
        }
        Ok(self.reduce2(&out))
    }

    /// Δ of a single letter, from the inductive definition.
    pub fn delta_letter(&self, order: u32, gen: usize) -> Result<&E2Element> {
        self.delta_letter
            .get(gen)
            .and_then(|v| v.get(order as usize))
            .and_then(|o| o.as_ref())
            .ok_or_else(|| {
                CotwistError::WeightOverflow(format!(
                    "Δ(D^{order}(x_{gen})) exceeds the weight cap"
                ))
            })
    }

    /// Multiplicative extension of Δ to an element.
    pub fn coproduct(&self, el: &EElement) -> Result<E2Element> {
        let mut out = E2Element::zero();
        for (word, c) in &el.coords {
            let mut acc = E2Element::zero();
            acc.insert_add((Vec::new(), Vec::new()), c.clone());
            for &(o, g) in word {
                let dl = self.delta_letter(o, g)?.clone();
                acc = self.mul2(&acc, &dl)?;
            }
            out = out.add(&acc);
        }
        Ok(self.reduce2(&out))
    }

    fn counit_left(&self, t: &E2Element) -> EElement {
        let mut out = EElement::zero();
        for ((a, b), c) in &t.coords {
            if a.is_empty() {
                out.insert_add(b.clone(), c.clone());
            }
        }
        out
    }

    fn counit_right(&self, t: &E2Element) -> EElement {
        let mut out = EElement::zero();
        for ((a, b), c) in &t.coords {
            if b.is_empty() {
                out.insert_add(a.clone(), c.clone());
            }
        }
        out
    }

    /// Quotient dimension at an exact weight.
    pub fn quotient_dim(&self, w: usize) -> usize {
        self.words_by_weight[w].len() - self.ideal[w].dim()
    }

    /// Normal-form representative words at an exact weight (the non-pivot
    /// coordinates of the ideal piece).
    pub fn quotient_basis(&self, w: usize) -> Vec<Word> {
        let pivots = self.ideal[w].pivots();
        self.words_by_weight[w]
            .iter()
            .enumerate()
            .filter(|(i, _)| !pivots.contains(i))
            .map(|(_, word)| word.clone())
            .collect()
    }

    fn basis_words_up_to(&self, max_weight: u32) -> Vec<Word> {
        let mut out = Vec::new();
        for w in 0..=max_weight.min(self.weight_cap) as usize {
            out.extend(self.quotient_basis(w));
        }
        out
    }

    pub fn word_name(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "1".into();
        }
        word.iter()
            .map(|&(o, g)| match o {
                0 => self.gen_names[g].clone(),
                1 => format!("d({})", self.gen_names[g]),
                _ => format!("d^{}({})", o, self.gen_names[g]),
            })
            .collect::<Vec<_>>()
            .join("·")
    }

    /// Structural verification: the embedding of H, ideal stability under d,
    /// well-definedness of Δ, counit axioms, and coassociativity within the
    /// computable window.
    pub fn verify(&self) -> Vec<Check> {
        let mut checks = Vec::new();
        // Embedding: monomials of degree ≤ weight_cap stay independent, and
        // products of generators commute modulo the ideal.
        let mut mono_vecs: Vec<EElement> = Vec::new();
        let mut degs = vec![vec![0u32; self.num_gens]];
        for _ in 0..self.weight_cap {
            let mut next: Vec<Vec<u32>> = Vec::new();
            for d in &degs {
                for g in 0..self.num_gens {
                    let mut nd = d.clone();
                    nd[g] += 1;
                    next.push(nd);
                }
            }
            degs.extend(next);
            degs.sort();
            degs.dedup();
        }
        for d in &degs {
            mono_vecs.push(self.reduce(&EElement::from_word(monomial_word(d))));
        }
        let independent = {
            // distinct reduced monomials must stay nonzero and distinct
            let mut seen = std::collections::BTreeSet::new();
            mono_vecs.iter().all(|m| !m.is_zero() && seen.insert(format!("{:?}", m.coords)))
        };
        let mut commutes = true;
        for p in 0..self.num_gens {
            for q in p + 1..self.num_gens {
                let xp = EElement::from_word(vec![(0, p)]);
                let xq = EElement::from_word(vec![(0, q)]);
                let ab = self.mul(&xp, &xq).unwrap();
                let ba = self.mul(&xq, &xp).unwrap();
                if !self.reduce(&ab.sub(&ba)).is_zero() {
                    commutes = false;
                }
            }
        }
        checks.push(if independent && commutes {
            Check::ok("H embeds as the order-0 letters")
        } else {
            Check::fail("H embeds as the order-0 letters", "collision".into())
        });
        // d preserves the ideal.
        let mut ok = true;
        for p in 0..self.num_gens {
            for q in p + 1..self.num_gens {
                for n in 0..self.cap.saturating_sub(2) {
                    let r = self.relation(p, q, n);
                    if !self.derivation(&r).map(|x| x.is_zero()).unwrap_or(false) {
                        ok = false;
                    }
                }
            }
        }
        checks.push(if ok {
            Check::ok("d preserves the relation ideal")
        } else {
            Check::fail("d preserves the relation ideal", "relation escapes".into())
        });
        // Δ well-defined: Δ(r) reduces to zero for relations in the window.
        let mut ok = true;
        let mut scope = 0usize;
        for p in 0..self.num_gens {
            for q in p + 1..self.num_gens {
                for n in 0..=self.cap.saturating_sub(2) {
                    let r = self.relation(p, q, n);
                    match self.coproduct(&r) {
                        Ok(t) => {
                            scope += 1;
                            if !t.is_zero() {
                                ok = false;
                            }
                        }
                        Err(_) => break,
                    }
                }
            }
        }
        checks.push(if ok && scope > 0 {
            Check::ok("Δ maps the ideal into ideal⊗E + E⊗ideal")
        } else {
            Check::fail(
                "Δ maps the ideal into ideal⊗E + E⊗ideal",
                format!("scope {scope}"),
            )
        });
        // Counit axioms on quotient basis words.
        let mut ok = true;
        for word in self.basis_words_up_to(self.weight_cap) {
            let u = self.reduce(&EElement::from_word(word));
            if let Ok(t) = self.coproduct(&u) {
                if self.reduce(&self.counit_left(&t)) != u
                    || self.reduce(&self.counit_right(&t)) != u
                {
                    ok = false;
                }
            }
        }
        checks.push(if ok {
            Check::ok("(ε⊗I)Δ = I = (I⊗ε)Δ on basis words")
        } else {
            Check::fail("(ε⊗I)Δ = I = (I⊗ε)Δ on basis words", "residual".into())
        });
        // Coassociativity where both triple coproducts are computable.
        let mut ok = true;
        let mut scope = 0usize;
        for word in self.basis_words_up_to(self.weight_cap) {
            let u = EElement::from_word(word);
            let t = match self.coproduct(&u) {
                Ok(t) => t,
                Err(_) => continue,
            };
            let both = (|| -> Result<E3Element> {
                let mut lhs = E3Element::default();
                for ((a, b), c) in &t.coords {
                    let da = self.coproduct(&EElement::from_word(a.clone()))?;
                    for ((a1, a2), w) in &da.coords {
                        lhs.insert_add((a1.clone(), a2.clone(), b.clone()), c * w);
                    }
                }
                let mut rhs = E3Element::default();
                for ((a, b), c) in &t.coords {
                    let db = self.coproduct(&EElement::from_word(b.clone()))?;
                    for ((b1, b2), w) in &db.coords {
                        rhs.insert_add((a.clone(), b1.clone(), b2.clone()), c * w);
                    }
                }
                Ok(lhs.sub(&rhs))
            })();
            if let Ok(diff) = both {
                scope += 1;
                if !self.reduce3(&diff).is_zero() {
                    ok = false;
                }
            }
        }
        checks.push(if ok && scope > 0 {
            Check::ok("coassociativity on basis words")
        } else {
            Check::fail("coassociativity on basis words", format!("scope {scope}"))
        });
        checks
    }

    /// Verifies that (d, φ) is a twisted derivation of the truncated E(H)
    /// and exhibits a non-separation witness when d is not a coderivation.
    pub fn verify_twisted_derivation(&self) -> Vec<Check> {
        let mut checks = Vec::new();
        // normd: ε∘d = 0 on basis words; φ normalized in E.
        let mut ok = true;
        for word in self.basis_words_up_to(self.weight_cap) {
            if let Ok(du) = self.derivation(&EElement::from_word(word)) {
                if !du.counit().is_zero() {
                    ok = false;
                }
            }
        }
        let phi_norm = self.reduce(&self.counit_left(&self.phi)).is_zero()
            && self.reduce(&self.counit_right(&self.phi)).is_zero();
        checks.push(if ok && phi_norm {
            Check::ok("normalization: ε∘d = 0, (ε⊗I)φ = (I⊗ε)φ = 0")
        } else {
            Check::fail(
                "normalization: ε∘d = 0, (ε⊗I)φ = (I⊗ε)φ = 0",
                "residual".into(),
            )
        });
        // cocd for φ inside E⊗E⊗E.
        let coc = (|| -> Result<E3Element> {
            let mut out = E3Element::default();
            for ((a, b), c) in &self.phi.coords {
                out.insert_add((Vec::new(), a.clone(), b.clone()), c.clone());
                let db = self.coproduct(&EElement::from_word(b.clone()))?;
                for ((b1, b2), w) in &db.coords {
                    out.insert_add((a.clone(), b1.clone(), b2.clone()), c * w);
                }
                out.insert_add((a.clone(), b.clone(), Vec::new()), -c.clone());
                let da = self.coproduct(&EElement::from_word(a.clone()))?;
                for ((a1, a2), w) in &da.coords {
                    out.insert_add((a1.clone(), a2.clone(), b.clone()), -(c * w));
                }
            }
            Ok(out)
        })();
        checks.push(match coc {
            Ok(t) if self.reduce3(&t).is_zero() => Check::ok("cocd: φ is a 2-cocycle in E(H)"),
            Ok(_) => Check::fail("cocd: φ is a 2-cocycle in E(H)", "residual".into()),
            Err(e) => Check::fail("cocd: φ is a 2-cocycle in E(H)", e.to_string()),
        });
        // conjd on every basis word in the computable window.
        let mut ok = true;
        let mut scope = 0usize;
        for word in self.basis_words_up_to(self.weight_cap.saturating_sub(1)) {
            let u = EElement::from_word(word);
            let res = (|| -> Result<E2Element> {
                let du = self.derivation(&u)?;
                let t = self.coproduct(&u)?;
                let lhs = self.d2(&t)?.sub(&self.coproduct(&du)?);
                let rhs = self.commutator2(&self.phi, &t)?;
                Ok(lhs.sub(&rhs))
            })();
            if let Ok(r) = res {
                scope += 1;
                if !r.is_zero() {
                    ok = false;
                }
            }
        }
        checks.push(if ok && scope > 0 {
            Check::ok("conjd: (d⊗I + I⊗d)Δ − Δd = [φ, Δ(−)]")
        } else {
            Check::fail(
                "conjd: (d⊗I + I⊗d)Δ − Δd = [φ, Δ(−)]",
                format!("scope {scope}"),
            )
        });
        // Non-separation witness: a word where d fails to be a coderivation.
        let mut witness: Option<Word> = None;
        for word in self.basis_words_up_to(self.weight_cap.saturating_sub(1)) {
            let u = EElement::from_word(word.clone());
            let defect = (|| -> Result<E2Element> {
                let du = self.derivation(&u)?;
                Ok(self.d2(&self.coproduct(&u)?)?.sub(&self.coproduct(&du)?))
            })();
            if let Ok(dfct) = defect {
                if !dfct.is_zero() {
                    witness = Some(word);
                    break;
                }
            }
        }
        checks.push(match witness {
            Some(w) => Check {
                name: "d is not a coderivation (non-separated witness)".into(),
                pass: true,
                witness: Some(self.word_name(&w)),
            },
            None => Check {
                name: "d is a coderivation (φ acts trivially)".into(),
                pass: true,
                witness: None,
            },
        });
        checks
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::s_int;

    fn kxy(phi: &PolyTensor, w: u32) -> FreeDiffAlgebra {
        FreeDiffAlgebra::build(2, vec!["x".into(), "y".into()], phi, w).unwrap()
    }

    fn phi_xy() -> PolyTensor {
        vec![((vec![1, 0], vec![0, 1]), s_one())]
    }

    #[test]
    fn build_rejects_bad_phi() {
        // (ε⊗I)φ ≠ 0
        let phi = vec![((vec![0, 0], vec![0, 1]), s_one())];
        assert!(FreeDiffAlgebra::build(2, vec!["x".into(), "y".into()], &phi, 3).is_err());
        // not a cocycle: x²⊗y fails cocd
        let phi = vec![((vec![2, 0], vec![0, 1]), s_one())];
        assert!(FreeDiffAlgebra::build(2, vec!["x".into(), "y".into()], &phi, 3).is_err());
        // primitive⊗primitive is always a cocycle
        assert!(FreeDiffAlgebra::build(2, vec!["x".into(), "y".into()], &phi_xy(), 3).is_ok());
    }

    #[test]
    fn relation_n1_holds_in_quotient() {
        let e = kxy(&phi_xy(), 3);
        // [x, d(y)] + [d(x), y] reduces to zero
        let r = e.relation(0, 1, 1);
        assert!(e.reduce(&r).is_zero());
        // but [x, d(x)] does not
        let x = EElement::from_word(vec![(0, 0)]);
        let dx = EElement::from_word(vec![(1, 0)]);
        let c = e.mul(&x, &dx).unwrap().sub(&e.mul(&dx, &x).unwrap());
        assert!(!e.reduce(&c).is_zero());
    }

    #[test]
    fn derivation_examples() {
        let e = kxy(&phi_xy(), 3);
        // d(x) is the order-1 letter
        let dx = e.derivation(&EElement::from_word(vec![(0, 0)])).unwrap();
        assert_eq!(dx, e.reduce(&EElement::from_word(vec![(1, 0)])));
        // d(x·y) = d(x)y + x d(y) modulo the ideal
        let xy = EElement::from_word(vec![(0, 0), (0, 1)]);
        let lhs = e.derivation(&xy).unwrap();
        let expect = e
            .mul(
                &EElement::from_word(vec![(1, 0)]),
                &EElement::from_word(vec![(0, 1)]),
            )
            .unwrap()
            .add(
                &e.mul(
                    &EElement::from_word(vec![(0, 0)]),
                    &EElement::from_word(vec![(1, 1)]),
                )
                .unwrap(),
            );
        assert_eq!(lhs, e.reduce(&expect));
    }

    #[test]
    fn golden_coproducts() {
        let e = kxy(&phi_xy(), 3);
        // Δ(x), Δ(d(x)) primitive
        for w in [vec![(0usize, 0usize)], vec![(1, 0)], (vec![(0, 1)]), vec![(1, 1)]] {
            let word: Word = w.iter().map(|&(o, g)| (o as u32, g)).collect();
            let t = e.coproduct(&EElement::from_word(word.clone())).unwrap();
            let mut expect = E2Element::zero();
            expect.insert_add((word.clone(), Vec::new()), s_one());
            expect.insert_add((Vec::new(), word.clone()), s_one());
            assert_eq!(t, e.reduce2(&expect), "{}", e.word_name(&word));
        }
        // Δ(d²x) = d²x⊗1 + 1⊗d²x − [x,d(x)]⊗y − x⊗[y,d(x)]
        let t = e.coproduct(&EElement::from_word(vec![(2, 0)])).unwrap();
        let mut expect = E2Element::zero();
        expect.insert_add((vec![(2, 0)], Vec::new()), s_one());
        expect.insert_add((Vec::new(), vec![(2, 0)]), s_one());
        expect.insert_add((vec![(0, 0), (1, 0)], vec![(0, 1)]), -s_one());
        expect.insert_add((vec![(1, 0), (0, 0)], vec![(0, 1)]), s_one());
        expect.insert_add((vec![(0, 0)], vec![(0, 1), (1, 0)]), -s_one());
        expect.insert_add((vec![(0, 0)], vec![(1, 0), (0, 1)]), s_one());
        assert_eq!(t, e.reduce2(&expect));
        // Δ(d²y) = d²y⊗1 + 1⊗d²y − [x,d(y)]⊗y − x⊗[y,d(y)]
        let t = e.coproduct(&EElement::from_word(vec![(2, 1)])).unwrap();
        let mut expect = E2Element::zero();
        expect.insert_add((vec![(2, 1)], Vec::new()), s_one());
        expect.insert_add((Vec::new(), vec![(2, 1)]), s_one());
        expect.insert_add((vec![(0, 0), (1, 1)], vec![(0, 1)]), -s_one());
        expect.insert_add((vec![(1, 1), (0, 0)], vec![(0, 1)]), s_one());
        expect.insert_add((vec![(0, 0)], vec![(0, 1), (1, 1)]), -s_one());
        expect.insert_add((vec![(0, 0)], vec![(1, 1), (0, 1)]), s_one());
        assert_eq!(t, e.reduce2(&expect));
    }

    #[test]
    fn structural_verification() {
        let e = kxy(&phi_xy(), 3);
        let checks = e.verify();
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
    }

    #[test]
    fn twisted_derivation_verification() {
        let e = kxy(&phi_xy(), 3);
        let checks = e.verify_twisted_derivation();
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
        // the witness is d(x): Δ(d²x) has the correction term
        let last = checks.last().unwrap();
        assert!(last.name.contains("not a coderivation"));
        assert_eq!(last.witness.as_deref(), Some("d(x)"));
    }

    #[test]
    fn phi_zero_gives_bialgebra_derivation() {
        let e = kxy(&Vec::new(), 3);
        let checks = e.verify_twisted_derivation();
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
        assert!(checks.last().unwrap().name.contains("d is a coderivation"));
        // ideal is φ-independent: same quotient dimensions
        let e2 = kxy(&phi_xy(), 3);
        for w in 0..=3usize {
            assert_eq!(e.quotient_dim(w), e2.quotient_dim(w));
        }
    }

    #[test]
    fn quotient_dimensions_match_commutative_count() {
        // At weight ≤ cap the quotient at order-0-only weight w contains the
        // commutative monomials; spot check total dims are positive and the
        // n=0 relation collapses xy and yx.
        let e = kxy(&phi_xy(), 3);
        assert_eq!(e.quotient_dim(0), 1);
        // weight 1: letters x, y
        assert_eq!(e.quotient_dim(1), 2);
        // weight 2: xx, xy(=yx), yy, d(x), d(y) → 5
        assert_eq!(e.quotient_dim(2), 5);
    }

    #[test]
    fn default_weight_cap_builds() {
        let e = kxy(&phi_xy(), 4);
        assert_eq!(e.quotient_dim(0), 1);
        assert_eq!(e.quotient_dim(1), 2);
        assert_eq!(e.quotient_dim(2), 5);
        // golden Δ(d²x) still matches at the larger cap
        let t = e.coproduct(&EElement::from_word(vec![(2, 0)])).unwrap();
        assert!(!t.is_zero());
        let checks = e.verify_twisted_derivation();
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
    }

    #[test]
    fn overflow_paths() {
        let e = kxy(&phi_xy(), 2);
        // product past the cap
        let big = EElement::from_word(vec![(1, 0), (1, 1)]);
        assert!(e.mul(&big, &big).is_err());
        // derivation past the cap
        let top = EElement::from_word(vec![(3, 0)]);
        assert!(e.derivation(&top).is_err());
    }

    #[test]
    fn scale_three_generators() {
        let phi = vec![((vec![1, 0, 0], vec![0, 1, 0]), s_int(2))];
        let e = FreeDiffAlgebra::build(
            3,
            vec!["x".into(), "y".into(), "z".into()],
            &phi,
            2,
        )
        .unwrap();
        let checks = e.verify();
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
    }
}
