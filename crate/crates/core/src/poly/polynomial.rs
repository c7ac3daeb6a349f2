use std::collections::HashMap;
use std::fmt;

use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};
use crate::field::Field;

/// Sparse multivariate polynomial. Terms are stored in descending grevlex
/// order with no zero coefficients, so equality is structural.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<K: Field> {
    field: K,
    nvars: usize,
    terms: Vec<(Monomial, K::Elem)>,
}

/// Arithmetic selector for [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked binary arithmetic: rejects operands from different fields or
/// variable contexts.
pub fn arith<K: Field>(a: &Polynomial<K>, b: &Polynomial<K>, op: ArithOp) -> Result<Polynomial<K>> {
    a.check_compatible(b)?;
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
    })
}

impl<K: Field> Polynomial<K> {
    pub fn zero(field: &K, nvars: usize) -> Self {
        Polynomial { field: field.clone(), nvars, terms: Vec::new() }
    }

    pub fn one(field: &K, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn constant(field: &K, nvars: usize, c: K::Elem) -> Self {
        let mut p = Self::zero(field, nvars);
        if !field.is_zero(&c) {
            p.terms.push((Monomial::one(nvars), c));
        }
        p
    }

    pub fn from_i64(field: &K, nvars: usize, c: i64) -> Self {
        Self::constant(field, nvars, field.from_i64(c))
    }

    pub fn var(field: &K, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        Polynomial { field: field.clone(), nvars, terms: vec![(Monomial::var(nvars, i, 1), field.one())] }
    }

    pub fn monomial(field: &K, m: Monomial, c: K::Elem) -> Self {
        let nvars = m.nvars();
        let mut p = Self::zero(field, nvars);
        if !field.is_zero(&c) {
            p.terms.push((m, c));
        }
        p
    }

    /// Build from arbitrary terms: duplicates are combined, zeros dropped.
    pub fn from_terms(field: &K, nvars: usize, terms: Vec<(Monomial, K::Elem)>) -> Self {
        let mut acc: HashMap<Monomial, K::Elem> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            match acc.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(field, nvars, acc)
    }

    fn from_map(field: &K, nvars: usize, acc: HashMap<Monomial, K::Elem>) -> Self {
        let mut terms: Vec<(Monomial, K::Elem)> =
            acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by(|a, b| b.0.grevlex_cmp(&a.0));
        Polynomial { field: field.clone(), nvars, terms }
    }

    #[inline]
    pub fn field(&self) -> &K {
        &self.field
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, K::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, K::Elem)> {
        self.terms
    }

    #[inline]
    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// The constant value, if the polynomial is constant.
    pub fn constant_value(&self) -> Option<K::Elem> {
        if self.terms.is_empty() {
            Some(self.field.zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> K::Elem {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    /// Leading term in grevlex.
    pub fn lead(&self) -> Option<&(Monomial, K::Elem)> {
        self.terms.first()
    }

    /// Leading term for an arbitrary order.
    pub fn lead_by(&self, order: MonomialOrder) -> Option<&(Monomial, K::Elem)> {
        match order {
            MonomialOrder::GrevLex => self.terms.first(),
            _ => self.terms.iter().max_by(|a, b| a.0.cmp_by(&b.0, order)),
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, i: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(i)).max().unwrap_or(0)
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(i) > 0)
    }

    pub fn check_compatible(&self, o: &Self) -> Result<()> {
        if self.field != o.field {
            return Err(Error::FieldMismatch);
        }
        if self.nvars != o.nvars {
            return Err(Error::ContextMismatch(self.nvars, o.nvars));
        }
        Ok(())
    }

    fn assert_compatible(&self, o: &Self) {
        assert!(self.field == o.field, "field mismatch");
        assert_eq!(self.nvars, o.nvars, "variable context mismatch");
    }

    fn merge(&self, o: &Self, negate_other: bool) -> Self {
        self.assert_compatible(o);
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &o.terms[j];
            match ma.grevlex_cmp(mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate_other { f.neg(cb) } else { cb.clone() };
                    out.push((mb.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other { f.sub(ca, cb) } else { f.add(ca, cb) };
                    if !f.is_zero(&c) {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for (m, c) in &o.terms[j..] {
            let c = if negate_other { f.neg(c) } else { c.clone() };
            out.push((m.clone(), c));
        }
        Polynomial { field: f.clone(), nvars: self.nvars, terms: out }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.merge(o, true)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Polynomial {
            field: f.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Self::zero(f, self.nvars);
        }
        Polynomial {
            field: f.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(a, c))).collect(),
        }
    }

    /// Multiply by the term `c·m`; order is preserved, so no re-sort.
    pub fn mul_term(&self, m: &Monomial, c: &K::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Self::zero(f, self.nvars);
        }
        Polynomial {
            field: f.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), f.mul(a, c))).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.mul_truncated(o, None)
    }

    /// Product keeping only terms of total degree at most `max_deg`.
    pub fn mul_truncated(&self, o: &Self, max_deg: Option<u32>) -> Self {
        self.assert_compatible(o);
        let f = &self.field;
        if self.is_zero() || o.is_zero() {
            return Self::zero(f, self.nvars);
        }
        if self.terms.len() == 1 && max_deg.is_none() {
            let (m, c) = &self.terms[0];
            return o.mul_term(m, c);
        }
        if o.terms.len() == 1 && max_deg.is_none() {
            let (m, c) = &o.terms[0];
            return self.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, K::Elem> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                if let Some(d) = max_deg {
                    if ma.degree() + mb.degree() > d {
                        continue;
                    }
                }
                let m = ma.mul(mb);
                let c = f.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = f.add(v, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(f, self.nvars, acc)
    }

    /// Drop all terms of total degree above `max_deg`.
    pub fn truncate(&self, max_deg: u32) -> Self {
        Polynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() <= max_deg).cloned().collect(),
        }
    }

    /// Homogeneous component of total degree `d`.
    pub fn component(&self, d: u32) -> Self {
        Polynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.field, self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Simultaneous substitution: variable `i` becomes `images[i]` when given,
    /// otherwise it stays. All images must live in `target_nvars` variables;
    /// kept variables are mapped by index, so `target_nvars` must then equal
    /// `nvars`.
    pub fn substitute(&self, images: &[Option<Polynomial<K>>]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let target = images
            .iter()
            .flatten()
            .map(|p| p.nvars)
            .next()
            .unwrap_or(self.nvars);
        let full: Vec<Polynomial<K>> = images
            .iter()
            .enumerate()
            .map(|(i, img)| match img {
                Some(p) => {
                    assert!(p.field == self.field && p.nvars == target, "substitution context mismatch");
                    p.clone()
                }
                None => {
                    assert_eq!(target, self.nvars, "kept variables need an unchanged context");
                    Polynomial::var(&self.field, target, i)
                }
            })
            .collect();
        self.compose(&full, target)
    }

    /// Evaluate the polynomial at polynomial arguments (one per variable).
    pub fn compose(&self, args: &[Polynomial<K>], target_nvars: usize) -> Self {
        assert_eq!(args.len(), self.nvars);
        let f = &self.field;
        let mut cache: Vec<Vec<Polynomial<K>>> = args.iter().map(|a| vec![Polynomial::one(f, target_nvars), a.clone()]).collect();
        let mut acc: HashMap<Monomial, K::Elem> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(f, target_nvars, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while cache[i].len() <= e {
                    let next = cache[i].last().unwrap().mul(&args[i]);
                    cache[i].push(next);
                }
                t = t.mul(&cache[i][e]);
            }
            for (tm, tc) in t.terms {
                match acc.get_mut(&tm) {
                    Some(v) => *v = f.add(v, &tc),
                    None => {
                        acc.insert(tm, tc);
                    }
                }
            }
        }
        Self::from_map(f, target_nvars, acc)
    }

    /// Move into a context of `nvars` variables, old variable `i` becoming
    /// variable `i + offset`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Self {
        assert!(offset + self.nvars <= nvars, "embedding does not fit");
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u16; nvars];
                e[offset..offset + self.nvars].copy_from_slice(m.exps());
                (Monomial::from_exps(&e), c.clone())
            })
            .collect();
        Self::from_terms(&self.field, nvars, terms)
    }

    /// Set variable `i` to the constant `c` and remove it from the context.
    pub fn specialize_drop(&self, i: usize, c: &K::Elem) -> Self {
        let f = &self.field;
        let mut powers: Vec<K::Elem> = vec![f.one()];
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, a) in &self.terms {
            let e = m.exp(i) as usize;
            while powers.len() <= e {
                let nx = f.mul(powers.last().unwrap(), c);
                powers.push(nx);
            }
            terms.push((m.drop_var(i), f.mul(a, &powers[e])));
        }
        Self::from_terms(f, self.nvars - 1, terms)
    }

    /// Insert a fresh variable at index `i` (the polynomial does not use it).
    pub fn insert_var(&self, i: usize) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.insert_var(i, 0), c.clone())).collect();
        Self::from_terms(&self.field, self.nvars + 1, terms)
    }

    /// Homogenize with a new variable inserted at index `i`, to total degree
    /// `deg` (at least the total degree).
    pub fn homogenize_at(&self, i: usize, deg: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                assert!(m.degree() <= deg, "homogenization degree too small");
                (m.insert_var(i, (deg - m.degree()) as u16), c.clone())
            })
            .collect();
        Self::from_terms(&self.field, self.nvars + 1, terms)
    }

    /// New variable `j` is old variable `perm[j]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars);
        let terms = self.terms.iter().map(|(m, c)| (m.permute(perm), c.clone())).collect();
        Self::from_terms(&self.field, self.nvars, terms)
    }

    pub fn derivative(&self, i: usize) -> Self {
        let f = &self.field;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(i) > 0)
            .map(|(m, c)| {
                let e = m.exp(i);
                (m.with_exp(i, e - 1), f.mul(c, &f.from_i64(e as i64)))
            })
            .collect();
        Self::from_terms(f, self.nvars, terms)
    }

    pub fn evaluate(&self, point: &[K::Elem]) -> K::Elem {
        assert_eq!(point.len(), self.nvars);
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = f.mul(&t, &f.pow(&point[i], e as u64));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Weighted homogeneity: `Some(d)` if every term has weighted degree `d`
    /// (the zero polynomial is homogeneous of every degree and reports `Some(0)`).
    pub fn is_homogeneous(&self, weights: Option<&[i64]>) -> Option<i64> {
        let ones = vec![1i64; self.nvars];
        let w = weights.unwrap_or(&ones);
        let mut it = self.terms.iter().map(|(m, _)| m.weighted_degree(w));
        let first = match it.next() {
            Some(d) => d,
            None => return Some(0),
        };
        if it.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Scale so the grevlex-leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Exact division; `Err(InexactDivision)` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        self.check_compatible(d)?;
        if d.is_zero() {
            return Err(Error::InexactDivision);
        }
        let f = &self.field;
        let (lm, lc) = d.terms[0].clone();
        let lc_inv = f.inv(&lc).expect("nonzero");
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, K::Elem)> = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            if !lm.divides(&m) {
                return Err(Error::InexactDivision);
            }
            let qm = lm.quotient_of(&m);
            let qc = f.mul(&c, &lc_inv);
            rem = rem.sub(&d.mul_term(&qm, &qc));
            quot.push((qm, qc));
        }
        // quotient terms were produced in descending order
        Ok(Polynomial { field: f.clone(), nvars: self.nvars, terms: quot })
    }

    /// Divide out `d` as many times as it divides exactly; returns the
    /// cofactor and the multiplicity.
    pub fn strip_factor(&self, d: &Self) -> (Self, u32) {
        if d.is_constant() {
            return (self.clone(), 0);
        }
        let mut cur = self.clone();
        let mut k = 0;
        while !cur.is_zero() {
            match cur.div_exact(d) {
                Ok(q) => {
                    cur = q;
                    k += 1;
                }
                Err(_) => break,
            }
        }
        (cur, k)
    }

    /// Reinterpret coefficients in another field via an element map.
    pub fn map_coeffs<L: Field>(&self, target: &L, mut fmap: impl FnMut(&K::Elem) -> L::Elem) -> Polynomial<L> {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), fmap(c))).collect();
        Polynomial::from_terms(target, self.nvars, terms)
    }

    /// `true` when `self = λ·o` for some nonzero scalar λ.
    pub fn proportional(&self, o: &Self) -> bool {
        if self.nterms() != o.nterms() {
            return false;
        }
        if self.is_zero() {
            return true;
        }
        let f = &self.field;
        let ratio = f.div(&self.terms[0].1, &o.terms[0].1).expect("nonzero");
        self.terms
            .iter()
            .zip(&o.terms)
            .all(|((ma, ca), (mb, cb))| ma == mb && f.mul(cb, &ratio) == *ca)
    }

    /// Render with the given variable names in the text grammar.
    pub fn to_string_with(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let f = &self.field;
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg_c = f.neg(c);
            // prefer a leading minus when the negated coefficient is "smaller"
            let (negative, mag) = match (f.to_bigint(c), f.to_bigint(&neg_c)) {
                (Some(a), Some(b)) => {
                    if f.characteristic() == 0 {
                        if a < num_bigint::BigInt::from(0) {
                            (true, b.to_string())
                        } else {
                            (false, a.to_string())
                        }
                    } else {
                        (false, a.to_string())
                    }
                }
                _ => (false, f.display(c)),
            };
            if k > 0 {
                s.push_str(if negative { " - " } else { " + " });
            } else if negative {
                // the grammar has no unary minus
                s.push_str("0 - ");
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != "1" || m.is_one() {
                factors.push(mag);
            }
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].to_string()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            s.push_str(&factors.join("*"));
        }
        s
    }

    /// Render in the text grammar, failing when a coefficient has no integer
    /// representative (a non-integral rational).
    pub fn to_grammar_string(&self, names: &[&str]) -> Result<String> {
        for (_, c) in &self.terms {
            if self.field.to_bigint(c).is_none() {
                return Err(Error::NonIntegral(self.field.display(c)));
            }
        }
        Ok(self.to_string_with(names))
    }

    /// Names `x0, x1, ...`.
    pub fn default_names(nvars: usize) -> Vec<String> {
        (0..nvars).map(|i| format!("x{i}")).collect()
    }
}

impl<K: Field> fmt::Debug for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = Self::default_names(self.nvars);
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.to_string_with(&refs))
    }
}

impl<K: Field> fmt::Display for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
