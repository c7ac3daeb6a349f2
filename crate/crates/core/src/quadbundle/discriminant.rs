//! Discriminants of quadratic forms: global equations, chart equations and
//! their squarefree parts.

use serde::Serialize;

use super::form::{plucker_chart_map, plucker_on_p4, quadric_in_p4, BaseSpec, GradedQuadraticForm, QUADRIC_NAMES};
use super::linalg;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{determinant, monomials_of_degree, principal_submatrix, squarefree_part, Budget, Monomial, PolyMatrix, Polynomial};

/// A form restricted to one affine chart and, for presented forms, to the
/// complement of a unit minor of the relations: a split local Gram matrix.
#[derive(Clone, Debug)]
pub struct LocalForm<K: Field> {
    pub label: String,
    pub base: BaseSpec<K>,
    /// Index of the coordinate set to 1, for charts of projective spaces.
    pub chart: Option<usize>,
    /// Ambient indices that survive, in order.
    pub kept: Vec<usize>,
    /// Ambient indices where the relations have a unit minor.
    pub eliminated: Vec<usize>,
    /// The relation columns restricted to the chart.
    pub relations: Vec<Vec<Polynomial<K>>>,
    pub gram: PolyMatrix<K>,
}

impl<K: Field> LocalForm<K> {
    pub fn names(&self) -> Vec<String> {
        self.base.var_names()
    }

    /// Restrict an ambient vector to the chart.
    pub fn restrict(&self, v: &[Polynomial<K>]) -> Vec<Polynomial<K>> {
        v.iter().map(|c| restrict_poly(c, self.chart)).collect()
    }

    /// Local coordinates of an ambient vector: subtract relations to clear
    /// the eliminated indices, then keep the rest.
    pub fn localize(&self, v: &[Polynomial<K>]) -> Result<Vec<Polynomial<K>>> {
        let mut v = self.restrict(v);
        if !self.eliminated.is_empty() {
            let m = self.eliminated.len();
            let block: PolyMatrix<K> = self
                .eliminated
                .iter()
                .map(|&i| (0..m).map(|r| self.relations[r][i].clone()).collect())
                .collect();
            let det = determinant(&block)?;
            let inv = det
                .constant_value()
                .and_then(|c| det.field().inv(&c))
                .ok_or_else(|| Error::NoPivot(self.label.clone()))?;
            let adj = adjugate(&block)?;
            // coefficients x with R[I,:]·x = v[I]
            let coeffs: Vec<Polynomial<K>> = (0..m)
                .map(|r| {
                    let s = (0..m).fold(Polynomial::zero(det.field(), det.nvars()), |acc, k| {
                        acc.add(&adj[r][k].mul(&v[self.eliminated[k]]))
                    });
                    s.scale(&inv)
                })
                .collect();
            for (r, c) in coeffs.iter().enumerate() {
                for (i, vi) in v.iter_mut().enumerate() {
                    *vi = vi.sub(&self.relations[r][i].mul(c));
                }
            }
        }
        Ok(self.kept.iter().map(|&i| v[i].clone()).collect())
    }
}

fn restrict_poly<K: Field>(p: &Polynomial<K>, chart: Option<usize>) -> Polynomial<K> {
    match chart {
        Some(i) => p.specialize_drop(i, &p.field().one()),
        None => p.clone(),
    }
}

fn adjugate<K: Field>(m: &PolyMatrix<K>) -> Result<PolyMatrix<K>> {
    let n = m.len();
    if n == 1 {
        return Ok(vec![vec![Polynomial::one(m[0][0].field(), m[0][0].nvars())]]);
    }
    let mut adj = vec![Vec::with_capacity(n); n];
    for (j, row) in adj.iter_mut().enumerate() {
        for i in 0..n {
            let minor: PolyMatrix<K> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c].clone()).collect())
                .collect();
            let d = determinant(&minor)?;
            row.push(if (i + j) % 2 == 0 { d } else { d.neg() });
        }
    }
    Ok(adj)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Affine charts of the base: `(label, chart base, coordinate set to 1)`.
fn charts_of<K: Field>(base: &BaseSpec<K>) -> Vec<(String, BaseSpec<K>, Option<usize>)> {
    match base {
        BaseSpec::ProjSpace { n } => (0..=*n)
            .map(|i| (format!("x{i}=1"), BaseSpec::ProjSpaceChart { n: *n, chart: i }, Some(i)))
            .collect(),
        BaseSpec::QuadricInGr24 { .. } => (0..5)
            .map(|i| (format!("{}=1", QUADRIC_NAMES[i]), BaseSpec::ProjSpaceChart { n: 4, chart: i }, Some(i)))
            .collect(),
        other => vec![(other.label(), other.clone(), None)],
    }
}

/// The local split Gram matrices of a form, one per chart.
pub fn local_forms<K: Field>(q: &GradedQuadraticForm<K>) -> Result<Vec<LocalForm<K>>> {
    let n = q.size();
    let m = q.relations.len();
    let mut out = Vec::new();
    for (label, base, chart) in charts_of(&q.base) {
        let gram_full: PolyMatrix<K> = q.entries.iter().map(|r| r.iter().map(|e| restrict_poly(e, chart)).collect()).collect();
        let relations: Vec<Vec<Polynomial<K>>> =
            q.relations.iter().map(|r| r.column.iter().map(|c| restrict_poly(c, chart)).collect()).collect();
        let eliminated = if m == 0 {
            Vec::new()
        } else {
            let mut found = None;
            for idx in combinations(n, m) {
                let block: PolyMatrix<K> = idx.iter().map(|&i| (0..m).map(|r| relations[r][i].clone()).collect()).collect();
                let d = determinant(&block)?;
                if d.constant_value().is_some_and(|c| !q.field.is_zero(&c)) {
                    found = Some(idx);
                    break;
                }
            }
            found.ok_or_else(|| Error::NoPivot(label.clone()))?
        };
        let kept: Vec<usize> = (0..n).filter(|i| !eliminated.contains(i)).collect();
        let gram = principal_submatrix(&gram_full, &kept);
        out.push(LocalForm { label, base, chart, kept, eliminated, relations, gram });
    }
    Ok(out)
}

/// One chart of a discriminant.
#[derive(Clone, Debug)]
pub struct ChartEquation<K: Field> {
    pub label: String,
    pub vars: Vec<String>,
    pub equation: Polynomial<K>,
    pub squarefree: Polynomial<K>,
    /// Equations of the base inside the chart.
    pub relations: Vec<Polynomial<K>>,
}

#[derive(Clone, Debug)]
pub struct DiscriminantReport<K: Field> {
    pub charts: Vec<ChartEquation<K>>,
    /// A homogeneous equation on `global_base` when one is known.
    pub global: Option<Polynomial<K>>,
    pub global_base: Option<BaseSpec<K>>,
    /// For bases inside `P⁴`: the quadric `Q³`.
    pub ambient_relation: Option<Polynomial<K>>,
    pub degree: i64,
    pub compatible: bool,
}

/// Serializable view of a discriminant report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscriminantSummary {
    pub degree: i64,
    pub global: Option<String>,
    pub global_vars: Vec<String>,
    pub ambient_relation: Option<String>,
    pub charts: Vec<ChartSummary>,
    pub compatible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartSummary {
    pub chart: String,
    pub vars: Vec<String>,
    pub equation: String,
    pub squarefree: String,
    pub relations: Vec<String>,
}

impl<K: Field> DiscriminantReport<K> {
    pub fn summary(&self) -> DiscriminantSummary {
        let show = |p: &Polynomial<K>, names: &[String]| {
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            p.to_string_with(&refs)
        };
        let gvars = self.global_base.as_ref().map(|b| b.var_names()).unwrap_or_default();
        DiscriminantSummary {
            degree: self.degree,
            global: self.global.as_ref().map(|g| show(g, &gvars)),
            ambient_relation: self.ambient_relation.as_ref().map(|g| show(g, &gvars)),
            global_vars: gvars,
            charts: self
                .charts
                .iter()
                .map(|c| ChartSummary {
                    chart: c.label.clone(),
                    vars: c.vars.clone(),
                    equation: show(&c.equation, &c.vars),
                    squarefree: show(&c.squarefree, &c.vars),
                    relations: c.relations.iter().map(|r| show(r, &c.vars)).collect(),
                })
                .collect(),
            compatible: self.compatible,
        }
    }
}

/// Remove every power of every coordinate variable from `p`.
pub(crate) fn strip_coordinates<K: Field>(p: &Polynomial<K>) -> Polynomial<K> {
    let mut p = p.clone();
    for i in 0..p.nvars() {
        let x = Polynomial::var(p.field(), p.nvars(), i);
        p = p.strip_factor(&x).0;
    }
    p
}

/// Compute the discriminant of a valid form.
pub fn discriminant<K: Field>(q: &GradedQuadraticForm<K>, budget: &Budget) -> Result<DiscriminantReport<K>> {
    let violations = q.validate();
    if let Some(v) = violations.first() {
        return Err(Error::Invalid(format!("invalid form: {v}")));
    }
    let field = &q.field;
    let locals = local_forms(q)?;
    let mut charts = Vec::with_capacity(locals.len());
    for lf in &locals {
        let equation = determinant(&lf.gram)?;
        if equation.is_zero() {
            return Err(Error::Degenerate(format!("discriminant vanishes identically on chart {}", lf.label)));
        }
        let squarefree = squarefree_part(&equation, budget)?;
        charts.push(ChartEquation {
            label: lf.label.clone(),
            vars: lf.names(),
            equation,
            squarefree,
            relations: lf.base.chart_relations(field),
        });
    }
    let mut report = DiscriminantReport { charts, global: None, global_base: None, ambient_relation: None, degree: 0, compatible: true };
    match &q.base {
        BaseSpec::ProjSpace { n } => {
            let rank = (q.size() - q.relations.len()) as i64;
            let sum_d: i64 = q.degrees.iter().sum::<i64>() - q.relations.iter().map(|r| r.weight).sum::<i64>();
            report.degree = rank * q.twist - 2 * sum_d;
            report.global = global_equation(q, &locals)?;
            report.global_base = Some(BaseSpec::ProjSpace { n: *n });
            if let Some(g) = &report.global {
                if g.is_homogeneous(None) != Some(report.degree) {
                    return Err(Error::Degenerate(format!(
                        "global discriminant is not homogeneous of degree {}",
                        report.degree
                    )));
                }
            }
            report.compatible = charts_compatible(&report.charts);
        }
        BaseSpec::Gr24Chart { ell } => {
            let chart_eq = &report.charts[0].equation;
            let deg = chart_eq.total_degree().unwrap_or(0);
            let d = deg.div_ceil(2);
            report.degree = d as i64;
            if let Some(f) = plucker_rewrite(field, chart_eq, d)? {
                let p = plucker_on_p4(field, ell)?;
                report.global = Some(f.compose(&p, 5));
                report.global_base = Some(BaseSpec::QuadricInGr24 { ell: ell.clone() });
                report.ambient_relation = Some(quadric_in_p4(field, ell));
            }
        }
        BaseSpec::ProjSpaceChart { .. } => {
            report.degree = report.charts[0].equation.total_degree().unwrap_or(0) as i64;
        }
        BaseSpec::QuadricInGr24 { .. } => {
            let rank = (q.size() - q.relations.len()) as i64;
            let sum_d: i64 = q.degrees.iter().sum::<i64>() - q.relations.iter().map(|r| r.weight).sum::<i64>();
            report.degree = rank * q.twist - 2 * sum_d;
            if q.relations.is_empty() {
                report.global = Some(determinant(&q.entries)?);
            }
            report.ambient_relation = q.base.chart_relations(field).pop();
            report.global_base = Some(q.base.clone());
        }
    }
    Ok(report)
}

/// The homogeneous discriminant on `Pⁿ`: the determinant for split forms;
/// for one relation column, the principal minor at a relation component
/// divided by that component squared.
fn global_equation<K: Field>(q: &GradedQuadraticForm<K>, locals: &[LocalForm<K>]) -> Result<Option<Polynomial<K>>> {
    if q.relations.is_empty() {
        return determinant(&q.entries).map(Some);
    }
    if q.relations.len() != 1 {
        return Ok(None);
    }
    let r = &q.relations[0].column;
    for lf in locals {
        let i = lf.eliminated[0];
        let minor = determinant(&principal_submatrix(&q.entries, &lf.kept))?;
        let r2 = r[i].mul(&r[i]);
        if let Ok(lambda) = minor.div_exact(&r2) {
            return Ok(Some(lambda));
        }
    }
    Ok(None)
}

/// Squarefree chart equations, homogenized and stripped of coordinate
/// factors, agree up to scalars.
fn charts_compatible<K: Field>(charts: &[ChartEquation<K>]) -> bool {
    let homs: Vec<Polynomial<K>> = charts
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let deg = c.squarefree.total_degree().unwrap_or(0);
            strip_coordinates(&c.squarefree.homogenize_at(i, deg))
        })
        .collect();
    homs.windows(2).all(|w| w[0].proportional(&w[1]))
}

/// Find `F` of degree `d` in the Plücker coordinates with
/// `F(p(a,b,c,d)) = f` on the chart `p01 = 1`.
pub fn plucker_rewrite<K: Field>(field: &K, f: &Polynomial<K>, d: u32) -> Result<Option<Polynomial<K>>> {
    let chart = plucker_chart_map(field);
    let monos = monomials_of_degree(6, d);
    let images: Vec<Polynomial<K>> = monos
        .iter()
        .map(|m| Polynomial::monomial(field, m.clone(), field.one()).compose(&chart, 4))
        .collect();
    let mut rows_index: Vec<Monomial> = Vec::new();
    for p in images.iter().chain(std::iter::once(f)) {
        for (m, _) in p.terms() {
            rows_index.push(m.clone());
        }
    }
    rows_index.sort_by(|a, b| a.exps().cmp(b.exps()));
    rows_index.dedup();
    let row_of = |m: &Monomial| rows_index.binary_search_by(|x| x.exps().cmp(m.exps())).expect("collected");
    let mut a = vec![vec![field.zero(); monos.len()]; rows_index.len()];
    for (j, p) in images.iter().enumerate() {
        for (m, c) in p.terms() {
            a[row_of(m)][j] = c.clone();
        }
    }
    let mut b = vec![field.zero(); rows_index.len()];
    for (m, c) in f.terms() {
        b[row_of(m)] = c.clone();
    }
    Ok(linalg::solve(field, &a, &b, monos.len()).map(|x| {
        let terms = monos.into_iter().zip(x).filter(|(_, c)| !field.is_zero(c)).collect();
        Polynomial::from_terms(field, 6, terms)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::parse_poly;
    use crate::quadbundle::form::Relation;

    #[test]
    fn quadric_cone_discriminant() {
        let f = Rationals;
        let names = ["x0", "x1", "x2", "x3"];
        let p = |s: &str| parse_poly(s, &names, &f).unwrap();
        let q = GradedQuadraticForm::new(
            &f,
            BaseSpec::ProjSpace { n: 3 },
            vec![0, 0],
            1,
            vec![vec![p("x0"), p("x1")], vec![p("x1"), p("x2")]],
            vec![],
        );
        let r = discriminant(&q, &Budget::default()).unwrap();
        assert_eq!(r.degree, 2);
        assert_eq!(r.global.unwrap(), p("x0*x2 - x1^2"));
        assert!(r.compatible);
        assert_eq!(r.charts.len(), 4);
    }

    #[test]
    fn presented_form_uses_minor_over_square() {
        let f = PrimeField::new(10007).unwrap();
        let names = ["x0", "x1"];
        let p = |s: &str| parse_poly(s, &names, &f).unwrap();
        // O(-1)² modulo O(-2) via (x0, x1) is O; the unit form on it lifts
        // to [[x1², -x0 x1], [-x0 x1, x0²]] with twist 0
        let q = GradedQuadraticForm::new(
            &f,
            BaseSpec::ProjSpace { n: 1 },
            vec![-1, -1],
            0,
            vec![vec![p("x1^2"), p("10006*x0*x1")], vec![p("10006*x0*x1"), p("x0^2")]],
            vec![Relation { weight: -2, column: vec![p("x0"), p("x1")] }],
        );
        assert!(q.validate().is_empty());
        let r = discriminant(&q, &Budget::default()).unwrap();
        assert_eq!(r.degree, 0);
        assert!(r.global.unwrap().is_constant());
    }

    #[test]
    fn plucker_rewrite_recovers_quadric() {
        let f = PrimeField::new(10007).unwrap();
        let chart = plucker_chart_map(&f);
        let target = chart[5].mul(&chart[1]).add(&chart[3]);
        let g = plucker_rewrite(&f, &target, 2).unwrap().unwrap();
        assert_eq!(g.compose(&chart, 4), target);
    }
}
