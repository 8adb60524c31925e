//! Path algebras modulo relations as length-truncated rewriting systems.
//!
//! The ideal is generated by the user relations together with every path of
//! length `nilbound`. Completion runs over the length-then-lexicographic path
//! order; because every path of length at least `nilbound` is rewritten to
//! zero, only finitely many leading paths can ever occur and completion
//! terminates. The irreducible paths form the distinguished basis of the
//! quotient algebra.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::grassmann::Subspace;
use crate::linalg::Matrix;
use crate::quiver::{ArrowId, PathWord, Quiver, VertexId};
use crate::scalar::{is_negative, Field, Scalar};

/// A finite linear combination of paths with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    field: Field,
    terms: BTreeMap<PathWord, Scalar>,
}

impl AlgebraElement {
    pub fn zero(field: Field) -> Self {
        AlgebraElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn path(field: Field, p: PathWord) -> Self {
        Self::term(p, field.one())
    }

    pub fn term(p: PathWord, c: Scalar) -> Self {
        let field = c.field();
        let mut e = Self::zero(field);
        e.add_term(p, c);
        e
    }

    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (PathWord, Scalar)>) -> Self {
        let mut e = Self::zero(field);
        for (p, c) in terms {
            e.add_term(p, c);
        }
        e
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PathWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &PathWord) -> Scalar {
        self.terms.get(p).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The largest path in the path order, with its coefficient.
    pub fn lead(&self) -> Option<(&PathWord, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, p: PathWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-other.field.one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.field);
        }
        AlgebraElement {
            field: self.field,
            terms: self.terms.iter().map(|(p, x)| (p.clone(), x * c)).collect(),
        }
    }

    /// The concatenation product `x` after `y` in the free path algebra.
    /// Non-composable pairs of paths contribute zero.
    pub fn concat(x: &Self, y: &Self) -> Self {
        let mut out = Self::zero(x.field);
        for (py, cy) in &y.terms {
            for (px, cx) in &x.terms {
                if let Some(p) = py.then(px) {
                    out.add_term(p, cx * cy);
                }
            }
        }
        out
    }

    /// Common `(source, target)` of all terms, if there is one.
    pub fn endpoints(&self) -> Option<(VertexId, VertexId)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let ends = (first.source(), first.target());
        it.all(|p| (p.source(), p.target()) == ends).then_some(ends)
    }

    /// Renders the element as `b*a - 2*b*c`.
    pub fn display(&self, quiver: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (p, c)) in self.terms.iter().rev().enumerate() {
            let neg = is_negative(c);
            let mag = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&scalar_text(&mag));
                out.push('*');
            }
            out.push_str(&quiver.path_name(p));
        }
        out
    }

    /// Splices every term of `middle` into `word` at `start..start+len`.
    fn splice_into(word: &PathWord, start: usize, len: usize, middle: &Self, c: &Scalar) -> Self {
        let mut out = Self::zero(middle.field);
        for (m, cm) in &middle.terms {
            out.add_term(word.splice(start, len, m), c * cm);
        }
        out
    }
}

fn scalar_text(c: &Scalar) -> String {
    match c {
        Scalar::Rational(r) if r.is_integer() => r.numer().to_string(),
        _ => c.to_string(),
    }
}

/// A rewrite rule `lead -> tail` with `tail` strictly below `lead`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lead: PathWord,
    pub tail: AlgebraElement,
}

/// `Λ e` with its path basis, the left action of every arrow, and the
/// radical filtration.
#[derive(Clone, Debug)]
pub struct LeftModule {
    vertex: VertexId,
    field: Field,
    basis: Vec<PathWord>,
    index: HashMap<PathWord, usize>,
    action: Vec<Matrix>,
    radical: Vec<Subspace>,
}

impl LeftModule {
    pub fn vertex(&self) -> VertexId {
        self.vertex
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[PathWord] {
        &self.basis
    }

    pub fn index_of(&self, p: &PathWord) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Matrix of left multiplication by an arrow, acting on column vectors.
    pub fn action(&self, a: ArrowId) -> &Matrix {
        &self.action[a]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// Coordinates of the projection `e_v x` of a vector.
    pub fn project(&self, v: VertexId, x: &[Scalar]) -> Vec<Scalar> {
        x.iter()
            .zip(&self.basis)
            .map(|(c, p)| {
                if p.target() == v {
                    c.clone()
                } else {
                    self.field.zero()
                }
            })
            .collect()
    }

    /// `J^i Λe`; empty from `nilbound` on.
    pub fn radical_power(&self, i: usize) -> &Subspace {
        &self.radical[i.min(self.radical.len() - 1)]
    }
}

/// `Λ = KΓ/I` presented by a confluent length-truncated rewriting system.
#[derive(Clone, Debug)]
pub struct ReductionSystem {
    quiver: Quiver,
    field: Field,
    relations: Vec<AlgebraElement>,
    nilbound: usize,
    rules: Vec<Rule>,
    basis: Vec<PathWord>,
    modules: Vec<LeftModule>,
}

impl ReductionSystem {
    /// Completes the relations (plus all paths of length `nilbound`) to a
    /// confluent rewriting system and caches the path bases of every `Λe`.
    pub fn new(
        quiver: Quiver,
        field: Field,
        relations: Vec<AlgebraElement>,
        nilbound: usize,
    ) -> Result<Self> {
        if nilbound < 2 {
            return Err(Error::NilboundTooSmall(nilbound));
        }
        for r in &relations {
            if r.field != field {
                return Err(Error::FieldMismatch {
                    expected: field.to_string(),
                    found: r.field.to_string(),
                });
            }
            for (p, _) in r.terms() {
                if p.arrows().iter().any(|&a| a >= quiver.arrow_count())
                    || p.source() >= quiver.vertex_count()
                {
                    return Err(Error::UnknownArrow(format!("{p:?}")));
                }
            }
            if !r.is_zero() && r.endpoints().is_none() {
                return Err(Error::NonUniformRelation(r.display(&quiver)));
            }
        }
        let mut sys = ReductionSystem {
            quiver,
            field,
            relations,
            nilbound,
            rules: Vec::new(),
            basis: Vec::new(),
            modules: Vec::new(),
        };
        sys.complete()?;
        sys.check_confluence()?;
        sys.basis = (0..sys.quiver.vertex_count())
            .flat_map(|v| sys.quiver.paths_from(v, nilbound))
            .filter(|p| sys.is_irreducible(p))
            .collect();
        sys.basis.sort();
        sys.modules = (0..sys.quiver.vertex_count())
            .map(|v| sys.build_module(v))
            .collect();
        Ok(sys)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nilbound(&self) -> usize {
        self.nilbound
    }

    /// The relation generators as supplied.
    pub fn relations(&self) -> &[AlgebraElement] {
        &self.relations
    }

    /// The completed rules, excluding the implicit rules sending every path
    /// of length `nilbound` to zero.
    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// The normal-form path basis of `Λ`.
    pub fn basis(&self) -> &[PathWord] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn module(&self, e: VertexId) -> &LeftModule {
        &self.modules[e]
    }

    /// The irreducible paths with source `e`, in path order.
    pub fn left_module_basis(&self, e: VertexId) -> &[PathWord] {
        &self.modules[e].basis
    }

    pub fn normal_form(&self, x: &AlgebraElement) -> AlgebraElement {
        reduce(&self.rules, self.nilbound, x.clone())
    }

    pub fn normal_form_of_path(&self, p: &PathWord) -> AlgebraElement {
        self.normal_form(&AlgebraElement::path(self.field, p.clone()))
    }

    /// Normal form of the product `x` after `y`.
    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        self.normal_form(&AlgebraElement::concat(x, y))
    }

    pub fn path_in_ideal(&self, p: &PathWord) -> bool {
        self.normal_form_of_path(p).is_zero()
    }

    pub fn is_irreducible(&self, p: &PathWord) -> bool {
        p.len() < self.nilbound && self.rules.iter().all(|r| p.find(r.lead.arrows()).is_none())
    }

    /// Coordinates of an element of `Λe` in the path basis of `Λe`.
    pub fn coordinates(&self, e: VertexId, x: &AlgebraElement) -> Result<Vec<Scalar>> {
        let m = &self.modules[e];
        let mut v = vec![self.field.zero(); m.dim()];
        for (p, c) in self.normal_form(x).terms() {
            let i = m.index_of(p).ok_or_else(|| Error::SourceMismatch {
                path: self.quiver.path_name(p),
                vertex: self.quiver.vertex_name(e).to_string(),
            })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn path_coordinates(&self, e: VertexId, p: &PathWord) -> Result<Vec<Scalar>> {
        self.coordinates(e, &AlgebraElement::path(self.field, p.clone()))
    }

    /// The element of `Λe` with the given coordinates.
    pub fn element_of(&self, e: VertexId, v: &[Scalar]) -> AlgebraElement {
        AlgebraElement::from_terms(
            self.field,
            self.modules[e]
                .basis
                .iter()
                .cloned()
                .zip(v.iter().cloned()),
        )
    }

    /// Re-checks that every ambiguity of the completed system resolves.
    pub fn check_confluence(&self) -> Result<()> {
        for (what, s) in ambiguities(&self.quiver, &self.rules, self.nilbound) {
            if !reduce(&self.rules, self.nilbound, s).is_zero() {
                return Err(Error::NotConfluent(what));
            }
        }
        Ok(())
    }

    fn complete(&mut self) -> Result<()> {
        let mut rules: Vec<Rule> = Vec::new();
        for r in &self.relations {
            let r = reduce(&rules, self.nilbound, r.clone());
            self.push_rule(&mut rules, r)?;
        }
        loop {
            let pending = ambiguities(&self.quiver, &rules, self.nilbound);
            let before = rules.len();
            for (_, s) in pending {
                let s = reduce(&rules, self.nilbound, s);
                self.push_rule(&mut rules, s)?;
            }
            if rules.len() == before {
                break;
            }
        }
        // Interreduce: drop rules whose leading path contains another
        // leading path, then normalize the tails.
        let keep: Vec<bool> = (0..rules.len())
            .map(|i| {
                !(0..rules.len()).any(|j| {
                    j != i
                        && rules[i].lead.find(rules[j].lead.arrows()).is_some()
                        && (rules[i].lead != rules[j].lead || j < i)
                })
            })
            .collect();
        let mut minimal: Vec<Rule> = rules
            .into_iter()
            .zip(keep)
            .filter_map(|(r, k)| k.then_some(r))
            .collect();
        for i in 0..minimal.len() {
            let tail = reduce(&minimal, self.nilbound, minimal[i].tail.clone());
            minimal[i].tail = tail;
        }
        minimal.sort_by(|a, b| a.lead.cmp(&b.lead));
        self.rules = minimal;
        Ok(())
    }

    fn push_rule(&self, rules: &mut Vec<Rule>, r: AlgebraElement) -> Result<()> {
        let Some((lead, c)) = r.lead() else {
            return Ok(());
        };
        let lead = lead.clone();
        if lead.is_trivial() {
            return Err(Error::NotAdmissible(
                self.quiver.vertex_name(lead.source()).to_string(),
            ));
        }
        let monic = r.scale(&c.inv()?);
        let tail = AlgebraElement::path(self.field, lead.clone()).sub(&monic);
        rules.push(Rule { lead, tail });
        Ok(())
    }

    fn build_module(&self, e: VertexId) -> LeftModule {
        let basis: Vec<PathWord> = self
            .basis
            .iter()
            .filter(|p| p.source() == e)
            .cloned()
            .collect();
        let index: HashMap<PathWord, usize> =
            basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let n = basis.len();
        let coords = |x: &AlgebraElement| {
            let mut v = vec![self.field.zero(); n];
            for (p, c) in self.normal_form(x).terms() {
                v[index[p]] = c.clone();
            }
            v
        };
        let action = (0..self.quiver.arrow_count())
            .map(|a| {
                let mut m = Matrix::zeros(self.field, n, n);
                for (j, p) in basis.iter().enumerate() {
                    if self.quiver.arrow(a).source != p.target() {
                        continue;
                    }
                    let image = coords(&AlgebraElement::path(
                        self.field,
                        p.then_arrow(&self.quiver, a),
                    ));
                    for (i, c) in image.into_iter().enumerate() {
                        m[(i, j)] = c;
                    }
                }
                m
            })
            .collect();
        let all_paths = self.quiver.paths_from(e, self.nilbound);
        let radical = (0..=self.nilbound)
            .map(|i| {
                let rows: Vec<Vec<Scalar>> = all_paths
                    .iter()
                    .filter(|p| p.len() >= i)
                    .map(|p| coords(&AlgebraElement::path(self.field, p.clone())))
                    .collect();
                Subspace::span(self.field, n, rows)
            })
            .collect();
        LeftModule {
            vertex: e,
            field: self.field,
            basis,
            index,
            action,
            radical,
        }
    }
}

/// Free function form of [`ReductionSystem::new`].
pub fn build_reduction_system(
    quiver: Quiver,
    field: Field,
    relations: Vec<AlgebraElement>,
    nilbound: usize,
) -> Result<ReductionSystem> {
    ReductionSystem::new(quiver, field, relations, nilbound)
}

/// Rewrites to a fixed point. Terms are processed from the largest path down;
/// rewriting only produces smaller paths, so finished terms are never touched
/// again.
fn reduce(rules: &[Rule], nilbound: usize, x: AlgebraElement) -> AlgebraElement {
    let field = x.field;
    let mut work = x.terms;
    let mut done = BTreeMap::new();
    while let Some((w, c)) = work.pop_last() {
        if w.len() >= nilbound {
            continue;
        }
        let hit = rules
            .iter()
            .find_map(|r| w.find(r.lead.arrows()).map(|pos| (pos, r)));
        match hit {
            None => {
                done.insert(w, c);
            }
            Some((pos, r)) => {
                for (t, ct) in r.tail.terms() {
                    let v = w.splice(pos, r.lead.len(), t);
                    let add = &c * ct;
                    let entry = work.entry(v).or_insert_with(|| field.zero());
                    *entry += &add;
                }
                work.retain(|_, s| !s.is_zero());
            }
        }
    }
    AlgebraElement { field, terms: done }
}

/// Every overlap and inclusion ambiguity among the rules, including those
/// with the implicit length-`nilbound` monomial rules, as the difference of
/// the two one-step reductions.
fn ambiguities(quiver: &Quiver, rules: &[Rule], nilbound: usize) -> Vec<(String, AlgebraElement)> {
    let mut out = Vec::new();
    let one = |r: &Rule| r.tail.field.one();
    for (i, ri) in rules.iter().enumerate() {
        let u = ri.lead.arrows();
        for (j, rj) in rules.iter().enumerate() {
            let v = rj.lead.arrows();
            // Suffix of u equals prefix of v.
            for k in 1..u.len().min(v.len()) {
                if u[u.len() - k..] == v[..k] {
                    let mut word = u.to_vec();
                    word.extend_from_slice(&v[k..]);
                    let Ok(w) = quiver.path(&word) else { continue };
                    let a = AlgebraElement::splice_into(&w, 0, u.len(), &ri.tail, &one(ri));
                    let b = AlgebraElement::splice_into(&w, u.len() - k, v.len(), &rj.tail, &one(rj));
                    out.push((
                        format!("overlap {} / {}", quiver.path_name(&ri.lead), quiver.path_name(&rj.lead)),
                        a.sub(&b),
                    ));
                }
            }
            if i != j && v.len() <= u.len() {
                let mut start = 0;
                while start + v.len() <= u.len() {
                    if u[start..start + v.len()] == *v {
                        let a = ri.tail.clone();
                        let b = AlgebraElement::splice_into(&ri.lead, start, v.len(), &rj.tail, &one(rj));
                        out.push((
                            format!("inclusion {} in {}", quiver.path_name(&rj.lead), quiver.path_name(&ri.lead)),
                            a.sub(&b),
                        ));
                    }
                    start += 1;
                }
            }
        }
        // Ambiguities with the monomial rules of length `nilbound`.
        let len = ri.lead.len();
        if len >= nilbound {
            continue;
        }
        let into = |v: VertexId, k: usize| -> Vec<PathWord> {
            (0..quiver.vertex_count())
                .flat_map(|s| quiver.paths_of_length_from(s, k))
                .filter(|p| p.target() == v)
                .collect()
        };
        let tail = &ri.tail;
        let name = quiver.path_name(&ri.lead);
        for left in 0..=nilbound - len {
            let right = nilbound - len - left;
            for x in into(ri.lead.source(), left) {
                for y in quiver.paths_of_length_from(ri.lead.target(), right) {
                    out.push((format!("truncation around {name}"), wrap(&x, tail, &y)));
                }
            }
        }
        for k in nilbound - len + 1..nilbound {
            for x in into(ri.lead.source(), k) {
                let y = PathWord::trivial(ri.lead.target());
                out.push((format!("truncation left of {name}"), wrap(&x, tail, &y)));
            }
            for y in quiver.paths_of_length_from(ri.lead.target(), k) {
                let x = PathWord::trivial(ri.lead.source());
                out.push((format!("truncation right of {name}"), wrap(&x, tail, &y)));
            }
        }
    }
    out
}

/// `y · t · x` in path notation: traverse `x`, then `t`, then `y`.
fn wrap(x: &PathWord, t: &AlgebraElement, y: &PathWord) -> AlgebraElement {
    let mut out = AlgebraElement::zero(t.field);
    for (p, c) in t.terms() {
        if let Some(w) = x.then(p).and_then(|w| w.then(y)) {
            out.add_term(w, c.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(sys: &ReductionSystem, ps: &[PathWord]) -> Vec<String> {
        ps.iter().map(|p| sys.quiver().path_name(p)).collect()
    }

    fn el(sys: &ReductionSystem, text: &str) -> AlgebraElement {
        AlgebraElement::path(sys.field(), sys.quiver().parse_path(text).unwrap())
    }

    #[test]
    fn fix_a_basis() {
        let sys = fixtures::fix_a(Field::Rational);
        assert_eq!(names(&sys, sys.basis()), ["e(1)", "e(2)", "a", "b"]);
        assert_eq!(sys.module(0).dim(), 3);
        assert_eq!(names(&sys, sys.left_module_basis(0)), ["e(1)", "a", "b"]);
        let x = el(&sys, "a").add(&el(&sys, "b").scale(&sys.field().from_i64(2)));
        assert_eq!(sys.normal_form(&x), x);
    }

    #[test]
    fn fix_c_basis_and_products() {
        let sys = fixtures::fix_c(Field::Rational);
        assert_eq!(names(&sys, sys.left_module_basis(0)), ["e(1)", "a", "c", "b*c"]);
        assert!(sys.normal_form(&el(&sys, "b*a")).is_zero());
        assert_eq!(sys.multiply(&el(&sys, "b"), &el(&sys, "c")), el(&sys, "b*c"));
        assert!(sys.multiply(&el(&sys, "b"), &el(&sys, "a")).is_zero());
        assert!(sys.path_in_ideal(&sys.quiver().parse_path("b*a").unwrap()));
        assert!(!sys.path_in_ideal(&sys.quiver().parse_path("b*c").unwrap()));
    }

    #[test]
    fn fix_d_truncation() {
        let sys = fixtures::fix_d(Field::Prime(2));
        assert_eq!(names(&sys, sys.basis()), ["e(v)", "x", "x*x"]);
        let x = el(&sys, "x");
        let x2 = el(&sys, "x*x");
        assert!(sys.multiply(&x2, &x).is_zero());
        assert!(sys.rules().is_empty());
    }

    #[test]
    fn non_monomial_relation_is_completed() {
        // b*a - b*c: the larger path b*c rewrites to b*a.
        let doc = crate::io::parse_quiver_file(
            "FIELD Q\nNILBOUND 3\nVERTEX 1 2 3\nARROW a 1 2\nARROW c 1 2\nARROW b 2 3\nREL b*a - b*c\n",
        )
        .unwrap();
        let sys = doc.to_system().unwrap();
        assert_eq!(sys.rules().len(), 1);
        assert_eq!(sys.quiver().path_name(&sys.rules()[0].lead), "b*c");
        assert_eq!(sys.normal_form(&el(&sys, "b*c")), el(&sys, "b*a"));
        assert_eq!(sys.module(0).dim(), 4);
    }

    #[test]
    fn idempotent_killed_is_rejected() {
        // x = e(v) together with x^3 = 0 forces e(v) = 0.
        let q = fixtures::fix_d(Field::Rational).quiver().clone();
        let f = Field::Rational;
        let x = q.parse_path("x").unwrap();
        let e = PathWord::trivial(0);
        let rel = AlgebraElement::from_terms(f, [(x, f.one()), (e, -f.one())]);
        assert!(matches!(
            ReductionSystem::new(q, f, vec![rel], 3),
            Err(Error::NotAdmissible(_))
        ));
    }

    #[test]
    fn nilbound_too_small() {
        let q = fixtures::fix_d(Field::Rational).quiver().clone();
        assert!(matches!(
            ReductionSystem::new(q, Field::Rational, vec![], 1),
            Err(Error::NilboundTooSmall(1))
        ));
    }

    #[test]
    fn non_uniform_relation() {
        let sys = fixtures::fix_c(Field::Rational);
        let rel = el(&sys, "b*a").add(&el(&sys, "a"));
        assert!(matches!(
            ReductionSystem::new(sys.quiver().clone(), Field::Rational, vec![rel], 3),
            Err(Error::NonUniformRelation(_))
        ));
    }

    #[test]
    fn action_matrices_are_left_multiplication() {
        let sys = fixtures::fix_c(Field::Rational);
        let m = sys.module(0);
        let b = sys.quiver().arrow_id("b").unwrap();
        // b·c = b*c, b·a = 0.
        let c_idx = m.index_of(&sys.quiver().parse_path("c").unwrap()).unwrap();
        let bc_idx = m.index_of(&sys.quiver().parse_path("b*c").unwrap()).unwrap();
        assert!(m.action(b)[(bc_idx, c_idx)].is_one());
        assert!(m.action(b).column(1).iter().all(Scalar::is_zero));
        assert_eq!(m.radical_power(1).dim(), 3);
        assert_eq!(m.radical_power(2).dim(), 1);
        assert_eq!(m.radical_power(3).dim(), 0);
    }
}
