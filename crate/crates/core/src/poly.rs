//! Sparse multivariate polynomials over a [`Field`].
//!
//! Variables are plain indices; callers keep the name table. Monomials are
//! sorted `(variable, exponent)` lists and terms live in a `BTreeMap`, so the
//! representation is canonical.

use std::collections::{BTreeMap, BTreeSet};

use crate::scalar::{is_negative, Field, Scalar};

pub type Monomial = Vec<(u32, u32)>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPoly {
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl MultiPoly {
    pub fn zero(field: Field) -> Self {
        MultiPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Self::zero(c.field());
        p.add_term(Vec::new(), c);
        p
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field.one())
    }

    pub fn var(field: Field, v: usize) -> Self {
        let mut p = Self::zero(field);
        p.add_term(vec![(v as u32, 1)], field.one());
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(|| self.field.zero());
        *e += &c;
        if e.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-self.field.one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.field);
        }
        MultiPoly {
            field: self.field,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.field);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }

    pub fn evaluate(&self, values: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m {
                t *= &values[v as usize].pow(e);
            }
            acc += &t;
        }
        acc
    }

    pub fn variables(&self) -> BTreeSet<usize> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|&(v, _)| v as usize))
            .collect()
    }

    /// Scales so that the coefficient of the largest monomial is one.
    pub fn monic(&self) -> Self {
        match self.terms.iter().next_back() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero coefficient")),
            None => self.clone(),
        }
    }

    /// Human-readable form using the given variable names.
    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = is_negative(c);
            let mag = if neg { -c } else { c.clone() };
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let mono: Vec<String> = m
                .iter()
                .map(|&(v, e)| {
                    if e == 1 {
                        names[v as usize].clone()
                    } else {
                        format!("{}^{e}", names[v as usize])
                    }
                })
                .collect();
            let coeff = match &mag {
                Scalar::Rational(r) if r.is_integer() => r.numer().to_string(),
                other => other.to_string(),
            };
            if mono.is_empty() {
                out.push_str(&coeff);
            } else if mag.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{coeff}*{}", mono.join("*")));
            }
        }
        out
    }
}

/// A dense matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![MultiPoly::zero(field); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, MultiPoly::one(field));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &MultiPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: MultiPoly) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_zero)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let field = self.entries.first().or(rhs.entries.first()).map(MultiPoly::field);
        let field = field.unwrap_or(Field::Rational);
        let mut out = Self::zeros(field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a.scale(c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn arithmetic_and_evaluation() {
        let f = Field::Rational;
        let x = MultiPoly::var(f, 0);
        let y = MultiPoly::var(f, 1);
        let p = x.mul(&y).add(&x.scale(&f.from_i64(2))).sub(&MultiPoly::one(f));
        let v = p.evaluate(&[f.from_i64(3), f.from_i64(4)]);
        assert_eq!(v, f.from_i64(17));
        assert!(p.sub(&p).is_zero());
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(p.display(&names), "x*y + 2*x - 1");
        assert_eq!(x.mul(&x).display(&names), "x^2");
    }

    #[test]
    fn constants() {
        let f = Field::Prime(3);
        assert_eq!(MultiPoly::zero(f).as_constant(), Some(f.zero()));
        assert_eq!(MultiPoly::constant(f.from_i64(2)).as_constant(), Some(f.from_i64(2)));
        assert_eq!(MultiPoly::var(f, 0).as_constant(), None);
    }

    proptest! {
        #[test]
        fn evaluation_is_a_ring_map(c in proptest::collection::vec(0u64..5, 6),
                                    pt in proptest::collection::vec(0u64..5, 2)) {
            let f = Field::Prime(5);
            let x = MultiPoly::var(f, 0);
            let y = MultiPoly::var(f, 1);
            let p = x.scale(&f.element(c[0])).add(&y.mul(&y).scale(&f.element(c[1])))
                .add(&MultiPoly::constant(f.element(c[2])));
            let q = x.mul(&y).scale(&f.element(c[3])).add(&y.scale(&f.element(c[4])))
                .add(&MultiPoly::constant(f.element(c[5])));
            let pt: Vec<Scalar> = pt.iter().map(|&v| f.element(v)).collect();
            prop_assert_eq!(p.mul(&q).evaluate(&pt), &p.evaluate(&pt) * &q.evaluate(&pt));
            prop_assert_eq!(p.add(&q).evaluate(&pt), &p.evaluate(&pt) + &q.evaluate(&pt));
        }
    }
}
