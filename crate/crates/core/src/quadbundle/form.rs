//! Graded symmetric polynomial matrices over a base, split or presented by
//! relation columns, and their isotropic directions.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::poly::{parse_poly, PolyMatrix, Polynomial};

/// Plücker coordinate names in the order used for linear forms `ℓ`.
pub const PLUCKER_NAMES: [&str; 6] = ["p01", "p02", "p03", "p12", "p13", "p23"];
/// Coordinates of the `P⁴` model of `Q³` after eliminating `p03` with `ℓ`.
pub const QUADRIC_NAMES: [&str; 5] = ["p01", "p02", "p12", "p13", "p23"];
/// Coordinates of the dense chart `p01 = 1` of `Gr(2,4)`.
pub const GR_CHART_NAMES: [&str; 4] = ["a", "b", "c", "d"];

/// Where a form lives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseSpec<K: Field> {
    /// Projective space with homogeneous coordinates `x0..xn`.
    ProjSpace { n: usize },
    /// The affine chart `x_chart = 1` of `Pⁿ`, coordinates `x_j` for `j != chart`.
    ProjSpaceChart { n: usize, chart: usize },
    /// The chart `p01 = 1` of `Gr(2,4)`, with the hyperplane `ℓ` cutting `Q³`.
    Gr24Chart { ell: Vec<K::Elem> },
    /// `Q³` as a quadric in `P⁴` with coordinates [`QUADRIC_NAMES`].
    QuadricInGr24 { ell: Vec<K::Elem> },
}

impl<K: Field> BaseSpec<K> {
    pub fn nvars(&self) -> usize {
        match self {
            BaseSpec::ProjSpace { n } => n + 1,
            BaseSpec::ProjSpaceChart { n, .. } => *n,
            BaseSpec::Gr24Chart { .. } => 4,
            BaseSpec::QuadricInGr24 { .. } => 5,
        }
    }

    pub fn var_names(&self) -> Vec<String> {
        match self {
            BaseSpec::ProjSpace { n } => (0..=*n).map(|i| format!("x{i}")).collect(),
            BaseSpec::ProjSpaceChart { n, chart } => (0..=*n).filter(|j| j != chart).map(|i| format!("x{i}")).collect(),
            BaseSpec::Gr24Chart { .. } => GR_CHART_NAMES.iter().map(|s| s.to_string()).collect(),
            BaseSpec::QuadricInGr24 { .. } => QUADRIC_NAMES.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// Whether entries are homogeneous polynomials with a checkable degree.
    pub fn is_graded(&self) -> bool {
        matches!(self, BaseSpec::ProjSpace { .. } | BaseSpec::QuadricInGr24 { .. })
    }

    pub fn label(&self) -> String {
        match self {
            BaseSpec::ProjSpace { n } => format!("P{n}"),
            BaseSpec::ProjSpaceChart { chart, .. } => format!("x{chart}=1"),
            BaseSpec::Gr24Chart { .. } => "p01=1".to_string(),
            BaseSpec::QuadricInGr24 { .. } => "Q3".to_string(),
        }
    }

    /// Equations that cut the base inside the coordinate chart (for the
    /// Grassmannian chart: `ℓ` restricted to the chart).
    pub fn chart_relations(&self, field: &K) -> Vec<Polynomial<K>> {
        match self {
            BaseSpec::Gr24Chart { ell } => vec![linear_form(field, ell, &plucker_chart_map(field))],
            BaseSpec::QuadricInGr24 { ell } => vec![quadric_in_p4(field, ell)],
            _ => Vec::new(),
        }
    }
}

/// The six Plücker coordinates on the chart `p01 = 1`, where the plane is
/// spanned by `e0 + a e2 + b e3` and `e1 + c e2 + d e3`.
pub fn plucker_chart_map<K: Field>(field: &K) -> Vec<Polynomial<K>> {
    let v = |i| Polynomial::var(field, 4, i);
    let (a, b, c, d) = (v(0), v(1), v(2), v(3));
    vec![
        Polynomial::one(field, 4),
        c.clone(),
        d.clone(),
        a.neg(),
        b.neg(),
        a.mul(&d).sub(&b.mul(&c)),
    ]
}

/// `Σ ell[i] · coords[i]`.
pub fn linear_form<K: Field>(field: &K, ell: &[K::Elem], coords: &[Polynomial<K>]) -> Polynomial<K> {
    let nvars = coords[0].nvars();
    coords
        .iter()
        .zip(ell)
        .fold(Polynomial::zero(field, nvars), |acc, (p, c)| acc.add(&p.scale(c)))
}

/// The six Plücker coordinates as polynomials on `P⁴` after solving `ℓ = 0`
/// for `p03`. Requires `ell[2] != 0`.
pub fn plucker_on_p4<K: Field>(field: &K, ell: &[K::Elem]) -> Result<Vec<Polynomial<K>>> {
    let inv = field
        .inv(&ell[2])
        .ok_or_else(|| Error::Invalid("the Plücker hyperplane needs a nonzero p03 coefficient".into()))?;
    let y = |i| Polynomial::var(field, 5, i);
    let others = [(0, 0), (1, 1), (3, 2), (4, 3), (5, 4)];
    let mut p03 = Polynomial::zero(field, 5);
    for &(k, yi) in &others {
        p03 = p03.sub(&y(yi).scale(&field.mul(&ell[k], &inv)));
    }
    Ok(vec![y(0), y(1), p03, y(2), y(3), y(4)])
}

/// The Plücker quadric `p01 p23 - p02 p13 + p03 p12` on `P⁴`.
pub fn quadric_in_p4<K: Field>(field: &K, ell: &[K::Elem]) -> Polynomial<K> {
    let p = plucker_on_p4(field, ell).expect("validated hyperplane");
    plucker_relation(&p)
}

pub fn plucker_relation<K: Field>(p: &[Polynomial<K>]) -> Polynomial<K> {
    p[0].mul(&p[5]).sub(&p[1].mul(&p[4])).add(&p[2].mul(&p[3]))
}

/// The Pfaffian of a Plücker linear form; nonzero iff the hyperplane section
/// of `Gr(2,4)` is a smooth quadric threefold.
pub fn plucker_pfaffian<K: Field>(field: &K, ell: &[K::Elem]) -> K::Elem {
    let t1 = field.mul(&ell[0], &ell[5]);
    let t2 = field.mul(&ell[1], &ell[4]);
    let t3 = field.mul(&ell[2], &ell[3]);
    field.add(&field.sub(&t1, &t2), &t3)
}

/// A relation column with its weight `w`: component `i` has degree `d_i - w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation<K: Field> {
    pub weight: i64,
    pub column: Vec<Polynomial<K>>,
}

/// A symmetric form `q: E -> E^∨ ⊗ O(t)` with `E = ⊕ O(d_i)` (modulo the
/// relation columns when present).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedQuadraticForm<K: Field> {
    pub field: K,
    pub base: BaseSpec<K>,
    pub degrees: Vec<i64>,
    pub twist: i64,
    pub entries: PolyMatrix<K>,
    pub relations: Vec<Relation<K>>,
}

/// A single failed invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Shape { rows: usize, cols: usize, degrees: usize },
    VariableCount { entry: (usize, usize), found: usize, expected: usize },
    Asymmetric { i: usize, j: usize },
    DegreePattern { i: usize, j: usize, expected: i64, found: Option<i64> },
    RelationShape { relation: usize, len: usize },
    RelationDegree { relation: usize, i: usize, expected: i64, found: Option<i64> },
    Descent { relation: usize, row: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape { rows, cols, degrees } => {
                write!(f, "matrix is {rows}x{cols} but {degrees} degrees are given")
            }
            Violation::VariableCount { entry, found, expected } => {
                write!(f, "entry {entry:?} has {found} variables, base has {expected}")
            }
            Violation::Asymmetric { i, j } => write!(f, "entries ({i},{j}) and ({j},{i}) differ"),
            Violation::DegreePattern { i, j, expected, found } => match found {
                Some(d) => write!(f, "entry ({i},{j}) has degree {d}, expected {expected}"),
                None => write!(f, "entry ({i},{j}) is not homogeneous, expected degree {expected}"),
            },
            Violation::RelationShape { relation, len } => write!(f, "relation {relation} has {len} components"),
            Violation::RelationDegree { relation, i, expected, found } => match found {
                Some(d) => write!(f, "relation {relation} component {i} has degree {d}, expected {expected}"),
                None => write!(f, "relation {relation} component {i} is not homogeneous"),
            },
            Violation::Descent { relation, row } => write!(f, "row {row} of M·r is nonzero for relation {relation}"),
        }
    }
}

impl<K: Field> GradedQuadraticForm<K> {
    pub fn new(
        field: &K,
        base: BaseSpec<K>,
        degrees: Vec<i64>,
        twist: i64,
        entries: PolyMatrix<K>,
        relations: Vec<Relation<K>>,
    ) -> Self {
        GradedQuadraticForm { field: field.clone(), base, degrees, twist, entries, relations }
    }

    pub fn size(&self) -> usize {
        self.degrees.len()
    }

    pub fn nvars(&self) -> usize {
        self.base.nvars()
    }

    pub fn is_split(&self) -> bool {
        self.relations.is_empty()
    }

    /// Expected degree of entry `(i, j)`.
    pub fn entry_degree(&self, i: usize, j: usize) -> i64 {
        self.twist - self.degrees[i] - self.degrees[j]
    }

    pub fn zero_poly(&self) -> Polynomial<K> {
        Polynomial::zero(&self.field, self.nvars())
    }

    /// Every invariant of the type; the empty list means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.size();
        let mut out = Vec::new();
        if self.entries.len() != n || self.entries.iter().any(|r| r.len() != n) {
            out.push(Violation::Shape {
                rows: self.entries.len(),
                cols: self.entries.first().map_or(0, |r| r.len()),
                degrees: n,
            });
            return out;
        }
        let nv = self.nvars();
        for i in 0..n {
            for j in 0..n {
                let e = &self.entries[i][j];
                if e.nvars() != nv || e.field() != &self.field {
                    out.push(Violation::VariableCount { entry: (i, j), found: e.nvars(), expected: nv });
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if self.entries[i][j] != self.entries[j][i] {
                    out.push(Violation::Asymmetric { i, j });
                }
            }
        }
        if self.base.is_graded() {
            for i in 0..n {
                for j in i..n {
                    let e = &self.entries[i][j];
                    if e.is_zero() {
                        continue;
                    }
                    let expected = self.entry_degree(i, j);
                    let found = e.is_homogeneous(None);
                    if found != Some(expected) {
                        out.push(Violation::DegreePattern { i, j, expected, found });
                    }
                }
            }
        }
        for (ri, rel) in self.relations.iter().enumerate() {
            if rel.column.len() != n {
                out.push(Violation::RelationShape { relation: ri, len: rel.column.len() });
                continue;
            }
            if self.base.is_graded() {
                for (i, c) in rel.column.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let expected = self.degrees[i] - rel.weight;
                    let found = c.is_homogeneous(None);
                    if found != Some(expected) {
                        out.push(Violation::RelationDegree { relation: ri, i, expected, found });
                    }
                }
            }
            for (row, v) in self.apply(&rel.column).iter().enumerate() {
                if !v.is_zero() {
                    out.push(Violation::Descent { relation: ri, row });
                }
            }
        }
        out
    }

    /// `M · v`.
    pub fn apply(&self, v: &[Polynomial<K>]) -> Vec<Polynomial<K>> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(v).fold(self.zero_poly(), |acc, (m, x)| acc.add(&m.mul(x))))
            .collect()
    }

    /// `uᵀ M v`.
    pub fn pairing(&self, u: &[Polynomial<K>], v: &[Polynomial<K>]) -> Polynomial<K> {
        u.iter()
            .zip(self.apply(v))
            .fold(self.zero_poly(), |acc, (a, b)| acc.add(&a.mul(&b)))
    }

    fn check_direction(&self, v: &IsotropicDirection<K>) -> Result<()> {
        if v.components.len() != self.size() {
            return Err(Error::Invalid(format!(
                "direction has {} components, form has rank {}",
                v.components.len(),
                self.size()
            )));
        }
        if v.components.iter().all(|c| c.is_zero()) {
            return Err(Error::Invalid("direction is identically zero".into()));
        }
        for c in &v.components {
            if c.nvars() != self.nvars() {
                return Err(Error::ContextMismatch(c.nvars(), self.nvars()));
            }
        }
        if self.base.is_graded() {
            for (i, c) in v.components.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let expected = self.degrees[i] - v.weight;
                if c.is_homogeneous(None) != Some(expected) {
                    return Err(Error::Invalid(format!(
                        "direction component {i} is not homogeneous of degree {expected}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_isotropic(&self, v: &IsotropicDirection<K>) -> Result<bool> {
        self.check_direction(v)?;
        Ok(self.pairing(&v.components, &v.components).is_zero())
    }

    /// `v1ᵀ M v2`, homogeneous of degree `t - w1 - w2` on graded bases.
    pub fn orthogonality_divisor(&self, v1: &IsotropicDirection<K>, v2: &IsotropicDirection<K>) -> Result<Polynomial<K>> {
        self.check_direction(v1)?;
        self.check_direction(v2)?;
        Ok(self.pairing(&v1.components, &v2.components))
    }

    /// Variable names of the base as string slices.
    pub fn names(&self) -> Vec<String> {
        self.base.var_names()
    }
}

/// A line subbundle `O(weight) -> E` given by its components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropicDirection<K: Field> {
    pub weight: i64,
    pub components: Vec<Polynomial<K>>,
}

impl<K: Field> IsotropicDirection<K> {
    /// The summand `O(d_s)` itself.
    pub fn coordinate(q: &GradedQuadraticForm<K>, s: usize) -> Self {
        let components = (0..q.size())
            .map(|i| if i == s { Polynomial::one(&q.field, q.nvars()) } else { q.zero_poly() })
            .collect();
        IsotropicDirection { weight: q.degrees[s], components }
    }
}

/// A field as it appears in form files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldFile {
    Prime { p: u64 },
    Named(String),
}

impl FieldFile {
    pub fn spec(&self) -> Result<FieldSpec> {
        match self {
            FieldFile::Prime { p } => FieldSpec::prime(*p),
            FieldFile::Named(s) if s == "Q" => Ok(FieldSpec::Rationals),
            FieldFile::Named(s) => Err(Error::InvalidField(s.clone())),
        }
    }

    pub fn from_spec(spec: FieldSpec) -> Self {
        match spec {
            FieldSpec::Rationals => FieldFile::Named("Q".into()),
            FieldSpec::PrimeField(p) => FieldFile::Prime { p },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum BaseFile {
    ProjSpace { n: usize },
    ProjSpaceChart { n: usize, chart: usize },
    Gr24Chart { ell: Vec<BigInt> },
    QuadricInGr24 { ell: Vec<BigInt> },
}

/// The JSON form-file schema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormFile {
    pub base: BaseFile,
    pub degrees: Vec<i64>,
    pub twist: i64,
    pub entries: Vec<Vec<String>>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation_weights: Option<Vec<i64>>,
    pub field: FieldFile,
}

/// A parsed form file over whichever field it names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyForm {
    Rational(GradedQuadraticForm<Rationals>),
    Prime(GradedQuadraticForm<PrimeField>),
}

impl FormFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("form files serialize")
    }

    pub fn into_form(self) -> Result<AnyForm> {
        match self.field.spec()? {
            FieldSpec::Rationals => Ok(AnyForm::Rational(self.build(&Rationals)?)),
            FieldSpec::PrimeField(p) => Ok(AnyForm::Prime(self.build(&PrimeField::new(p)?)?)),
        }
    }

    /// Build the form over `field`, which must be the field the file names.
    pub fn build<K: Field>(&self, field: &K) -> Result<GradedQuadraticForm<K>> {
        if self.field.spec()? != field.spec() {
            return Err(Error::FieldMismatch);
        }
        let ell = |v: &[BigInt]| -> Result<Vec<K::Elem>> {
            if v.len() != 6 {
                return Err(Error::Invalid(format!("Plücker hyperplane needs 6 coefficients, got {}", v.len())));
            }
            Ok(v.iter().map(|c| field.from_bigint(c)).collect())
        };
        let base = match &self.base {
            BaseFile::ProjSpace { n } => BaseSpec::ProjSpace { n: *n },
            BaseFile::ProjSpaceChart { n, chart } => {
                if chart > n {
                    return Err(Error::Invalid(format!("chart {chart} out of range for P{n}")));
                }
                BaseSpec::ProjSpaceChart { n: *n, chart: *chart }
            }
            BaseFile::Gr24Chart { ell: e } => BaseSpec::Gr24Chart { ell: ell(e)? },
            BaseFile::QuadricInGr24 { ell: e } => {
                let e = ell(e)?;
                if field.is_zero(&e[2]) {
                    return Err(Error::Invalid("the Plücker hyperplane needs a nonzero p03 coefficient".into()));
                }
                BaseSpec::QuadricInGr24 { ell: e }
            }
        };
        let names = base.var_names();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let parse_row = |row: &[String]| -> Result<Vec<Polynomial<K>>> {
            row.iter().map(|s| parse_poly(s, &refs, field)).collect()
        };
        let entries = self.entries.iter().map(|r| parse_row(r)).collect::<Result<Vec<_>>>()?;
        let columns = self.relations.iter().map(|c| parse_row(c)).collect::<Result<Vec<_>>>()?;
        let weights = match &self.relation_weights {
            Some(w) if w.len() != columns.len() => {
                return Err(Error::Invalid("relation_weights and relations differ in length".into()))
            }
            Some(w) => w.clone(),
            None => columns.iter().map(|col| infer_weight(col, &self.degrees)).collect(),
        };
        let relations = columns
            .into_iter()
            .zip(weights)
            .map(|(column, weight)| Relation { weight, column })
            .collect();
        Ok(GradedQuadraticForm::new(field, base, self.degrees.clone(), self.twist, entries, relations))
    }

    /// Serialize a form. Fails over the rationals when a coefficient is not
    /// an integer, since the grammar has no fractions.
    pub fn from_form<K: Field>(q: &GradedQuadraticForm<K>) -> Result<Self> {
        let names = q.names();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let row = |r: &[Polynomial<K>]| -> Result<Vec<String>> { r.iter().map(|p| p.to_grammar_string(&refs)).collect() };
        let ell = |e: &[K::Elem]| -> Result<Vec<BigInt>> {
            e.iter()
                .map(|c| q.field.to_bigint(c).ok_or_else(|| Error::NonIntegral(q.field.display(c))))
                .collect()
        };
        let base = match &q.base {
            BaseSpec::ProjSpace { n } => BaseFile::ProjSpace { n: *n },
            BaseSpec::ProjSpaceChart { n, chart } => BaseFile::ProjSpaceChart { n: *n, chart: *chart },
            BaseSpec::Gr24Chart { ell: e } => BaseFile::Gr24Chart { ell: ell(e)? },
            BaseSpec::QuadricInGr24 { ell: e } => BaseFile::QuadricInGr24 { ell: ell(e)? },
        };
        let relations = q.relations.iter().map(|r| row(&r.column)).collect::<Result<Vec<_>>>()?;
        let relation_weights = if q.relations.is_empty() { None } else { Some(q.relations.iter().map(|r| r.weight).collect()) };
        Ok(FormFile {
            base,
            degrees: q.degrees.clone(),
            twist: q.twist,
            entries: q.entries.iter().map(|r| row(r)).collect::<Result<Vec<_>>>()?,
            relations,
            relation_weights,
            field: FieldFile::from_spec(q.field.spec()),
        })
    }
}

/// Relation weight read off the first nonzero homogeneous component as
/// `d_i - deg r_i`; 0 when nothing can be read.
fn infer_weight<K: Field>(col: &[Polynomial<K>], degrees: &[i64]) -> i64 {
    col.iter()
        .zip(degrees)
        .find_map(|(c, d)| if c.is_zero() { None } else { c.is_homogeneous(None).map(|e| d - e) })
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadric_cone() -> GradedQuadraticForm<Rationals> {
        let f = Rationals;
        let names = ["x0", "x1", "x2", "x3"];
        let p = |s: &str| parse_poly(s, &names, &f).unwrap();
        GradedQuadraticForm::new(
            &f,
            BaseSpec::ProjSpace { n: 3 },
            vec![0, 0],
            1,
            vec![vec![p("x0"), p("x1")], vec![p("x1"), p("x2")]],
            vec![],
        )
    }

    #[test]
    fn valid_and_perturbed() {
        let q = quadric_cone();
        assert!(q.validate().is_empty());
        let mut bad = q.clone();
        let x = Polynomial::var(&Rationals, 4, 0);
        bad.entries[0][1] = x.mul(&x);
        bad.entries[1][0] = x.mul(&x);
        let v = bad.validate();
        assert!(v.contains(&Violation::DegreePattern { i: 0, j: 1, expected: 1, found: Some(2) }));
        let mut asym = q.clone();
        asym.entries[0][1] = x.clone();
        assert!(asym.validate().contains(&Violation::Asymmetric { i: 0, j: 1 }));
    }

    #[test]
    fn descent_violation_detected() {
        let mut q = quadric_cone();
        let one = Polynomial::one(&Rationals, 4);
        q.relations.push(Relation { weight: 0, column: vec![one.clone(), one.neg()] });
        assert!(q.validate().iter().any(|v| matches!(v, Violation::Descent { .. })));
    }

    #[test]
    fn form_file_round_trip() {
        let q = quadric_cone();
        let file = FormFile::from_form(&q).unwrap();
        let text = file.to_json();
        let back = FormFile::parse(&text).unwrap().into_form().unwrap();
        assert_eq!(back, AnyForm::Rational(q));
    }

    #[test]
    fn rational_coefficients_refuse_serialization() {
        let mut q = quadric_cone();
        let half = num_rational::BigRational::new(1.into(), 2.into());
        q.entries[0][0] = q.entries[0][0].scale(&half);
        assert!(matches!(FormFile::from_form(&q), Err(Error::NonIntegral(_))));
    }

    #[test]
    fn plucker_chart_satisfies_relation() {
        let f = PrimeField::new(10007).unwrap();
        let p = plucker_chart_map(&f);
        assert!(plucker_relation(&p).is_zero());
    }

    #[test]
    fn quadric_model_in_p4() {
        let f = PrimeField::new(101).unwrap();
        let ell = vec![3, 5, 7, 11, 13, 17];
        assert_ne!(plucker_pfaffian(&f, &ell), 0);
        let g = quadric_in_p4(&f, &ell);
        assert_eq!(g.is_homogeneous(None), Some(2));
    }
}
