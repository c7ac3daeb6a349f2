//! Hyperbolic reduction along an isotropic direction, chart by chart, and
//! the check that two reductions of one form share their discriminant.

use super::discriminant::{discriminant, local_forms, DiscriminantReport, LocalForm};
use super::form::{BaseSpec, GradedQuadraticForm, IsotropicDirection};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{determinant, squarefree_part, Budget, PolyMatrix, Polynomial};

/// Reduction of a split local matrix along `v`.
#[derive(Clone, Debug)]
pub struct MatrixReduction<K: Field> {
    /// Index where `v` is a nonzero constant.
    pub s: usize,
    /// Index of the pivot of `vᵀM`.
    pub k: usize,
    /// The pivot `(vᵀM)_k`.
    pub pivot: Polynomial<K>,
    /// Whether the pivot is a nonzero constant.
    pub unit_pivot: bool,
    /// Indices carried by the frame, in order.
    pub frame_indices: Vec<usize>,
    /// Frame vectors spanning `v^⊥` modulo `v` (away from the pivot's zeros).
    pub frame: Vec<Vec<Polynomial<K>>>,
    pub gram: PolyMatrix<K>,
}

fn pairing<K: Field>(m: &PolyMatrix<K>, u: &[Polynomial<K>], w: &[Polynomial<K>]) -> Polynomial<K> {
    let zero = Polynomial::zero(u[0].field(), u[0].nvars());
    let mut acc = zero.clone();
    for (i, ui) in u.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        let mw = m[i].iter().zip(w).fold(zero.clone(), |a, (x, y)| if y.is_zero() { a } else { a.add(&x.mul(y)) });
        acc = acc.add(&ui.mul(&mw));
    }
    acc
}

/// Reduce a split symmetric matrix along an isotropic vector with a
/// constant coordinate. With a constant pivot the frame is
/// `e_j - (c_j/c_k) e_k`; otherwise it is `c_k e_j - c_j e_k`, valid where
/// `c_k` is invertible.
pub fn reduce_matrix<K: Field>(m: &PolyMatrix<K>, v: &[Polynomial<K>], label: &str) -> Result<MatrixReduction<K>> {
    let n = m.len();
    let field = v[0].field().clone();
    if !pairing(m, v, v).is_zero() {
        return Err(Error::NotIsotropic);
    }
    let s = (0..n)
        .find(|&i| v[i].constant_value().is_some_and(|c| !field.is_zero(&c)))
        .ok_or_else(|| Error::NoPivot(label.to_string()))?;
    let zero = Polynomial::zero(&field, v[0].nvars());
    let c: Vec<Polynomial<K>> = (0..n)
        .map(|j| v.iter().enumerate().fold(zero.clone(), |a, (i, vi)| a.add(&vi.mul(&m[i][j]))))
        .collect();
    let candidates: Vec<usize> = (0..n).filter(|&j| j != s && !c[j].is_zero()).collect();
    let k = candidates
        .iter()
        .copied()
        .find(|&j| c[j].is_constant())
        .or_else(|| {
            candidates
                .iter()
                .copied()
                .min_by_key(|&j| (c[j].total_degree().unwrap_or(0), c[j].nterms(), j))
        })
        .ok_or_else(|| Error::Degenerate(format!("direction lies in the kernel of the form on {label}")))?;
    let unit_pivot = c[k].is_constant();
    let frame_indices: Vec<usize> = (0..n).filter(|&j| j != s && j != k).collect();
    let frame: Vec<Vec<Polynomial<K>>> = frame_indices
        .iter()
        .map(|&j| {
            let mut f = vec![zero.clone(); n];
            if unit_pivot {
                let inv = field.inv(&c[k].constant_value().expect("constant")).expect("nonzero");
                f[j] = Polynomial::one(&field, zero.nvars());
                f[k] = c[j].scale(&field.neg(&inv));
            } else {
                f[j] = c[k].clone();
                f[k] = c[j].neg();
            }
            f
        })
        .collect();
    let gram: PolyMatrix<K> = {
        let r = frame.len();
        let mut g = vec![vec![zero.clone(); r]; r];
        for a in 0..r {
            for b in a..r {
                let e = pairing(m, &frame[a], &frame[b]);
                g[b][a] = e.clone();
                g[a][b] = e;
            }
        }
        g
    };
    Ok(MatrixReduction { s, k, pivot: c[k].clone(), unit_pivot, frame_indices, frame, gram })
}

/// The reduction on one chart.
#[derive(Clone, Debug)]
pub struct ChartReduction<K: Field> {
    pub local: LocalForm<K>,
    pub reduction: MatrixReduction<K>,
    /// The reduced chart form (split, on the chart base).
    pub form: GradedQuadraticForm<K>,
}

#[derive(Clone, Debug)]
pub struct Reduction<K: Field> {
    pub charts: Vec<ChartReduction<K>>,
    /// The global split reduced form, when `v` has a constant coordinate and
    /// a constant hyperbolic partner.
    pub global: Option<GradedQuadraticForm<K>>,
}

/// Hyperbolic reduction of `q` along the isotropic direction `v`.
pub fn reduce<K: Field>(q: &GradedQuadraticForm<K>, v: &IsotropicDirection<K>) -> Result<Reduction<K>> {
    if !q.is_isotropic(v)? {
        return Err(Error::NotIsotropic);
    }
    let mut charts = Vec::new();
    for local in local_forms(q)? {
        let vl = local.localize(&v.components)?;
        if vl.iter().all(|c| c.is_zero()) {
            return Err(Error::Degenerate(format!("direction lies in the relation span on {}", local.label)));
        }
        let reduction = reduce_matrix(&local.gram, &vl, &local.label)?;
        let degrees = reduction.frame_indices.iter().map(|&j| q.degrees[local.kept[j]]).collect();
        let form = GradedQuadraticForm::new(&q.field, local.base.clone(), degrees, q.twist, reduction.gram.clone(), vec![]);
        charts.push(ChartReduction { local, reduction, form });
    }
    let global = if q.is_split() && matches!(q.base, BaseSpec::ProjSpace { .. } | BaseSpec::Gr24Chart { .. }) {
        match reduce_matrix(&q.entries, &v.components, &q.base.label()) {
            Ok(r) if r.unit_pivot => {
                let degrees = r.frame_indices.iter().map(|&j| q.degrees[j]).collect();
                Some(GradedQuadraticForm::new(&q.field, q.base.clone(), degrees, q.twist, r.gram, vec![]))
            }
            _ => None,
        }
    } else {
        None
    };
    Ok(Reduction { charts, global })
}

/// Squarefree part of `p` after removing every power of `pivot`.
fn stripped_squarefree<K: Field>(p: &Polynomial<K>, pivot: &Polynomial<K>, budget: &Budget) -> Result<Polynomial<K>> {
    let mut p = p.clone();
    if !pivot.is_constant() {
        p = p.strip_factor(pivot).0;
        let sq = squarefree_part(pivot, budget)?;
        if !sq.is_constant() {
            p = p.strip_factor(&sq).0;
        }
    }
    if p.is_zero() {
        return Ok(p);
    }
    squarefree_part(&p, budget)
}

/// Whether the reduced Gram determinant on each chart has the same
/// squarefree part as the discriminant there, up to a unit and powers of
/// the pivot.
pub fn contract_holds<K: Field>(disc: &DiscriminantReport<K>, red: &Reduction<K>, budget: &Budget) -> Result<Vec<bool>> {
    let mut out = Vec::with_capacity(red.charts.len());
    for (cr, ce) in red.charts.iter().zip(&disc.charts) {
        let det = determinant(&cr.reduction.gram)?;
        if det.is_zero() {
            out.push(false);
            continue;
        }
        let a = stripped_squarefree(&det, &cr.reduction.pivot, budget)?;
        let b = stripped_squarefree(&ce.equation, &cr.reduction.pivot, budget)?;
        out.push(a.proportional(&b));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ChartCheck {
    pub chart: String,
    pub first: bool,
    pub second: bool,
    /// `None` when the divisor misses the chart.
    pub isotropic_mod_divisor: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct InvarianceReport<K: Field> {
    pub discriminant: DiscriminantReport<K>,
    pub first: Reduction<K>,
    pub second: Reduction<K>,
    pub charts: Vec<ChartCheck>,
    pub divisor: Polynomial<K>,
    pub pass: bool,
}

impl<K: Field> InvarianceReport<K> {
    /// Whether the first reduction acquires an isotropic direction modulo the
    /// divisor on every chart the divisor meets; `None` if it meets none.
    pub fn isotropic_mod_divisor(&self) -> Option<bool> {
        let checks: Vec<bool> = self.charts.iter().filter_map(|c| c.isotropic_mod_divisor).collect();
        if checks.is_empty() {
            None
        } else {
            Some(checks.iter().all(|&b| b))
        }
    }
}

fn divisible<K: Field>(p: &Polynomial<K>, d: &Polynomial<K>) -> bool {
    if d.is_zero() {
        return p.is_zero();
    }
    p.is_zero() || p.div_exact(d).is_ok()
}

/// Reduce along both directions and compare with the discriminant of `y`.
pub fn verify_reduction_invariance<K: Field>(
    y: &GradedQuadraticForm<K>,
    v1: &IsotropicDirection<K>,
    v2: &IsotropicDirection<K>,
    budget: &Budget,
) -> Result<InvarianceReport<K>> {
    let disc = discriminant(y, budget)?;
    let first = reduce(y, v1)?;
    let second = reduce(y, v2)?;
    let c1 = contract_holds(&disc, &first, budget)?;
    let c2 = contract_holds(&disc, &second, budget)?;
    let divisor = y.orthogonality_divisor(v1, v2)?;
    let mut charts = Vec::new();
    for (i, cr) in first.charts.iter().enumerate() {
        let d = cr.local.restrict(std::slice::from_ref(&divisor)).pop().expect("one entry");
        let iso = if d.is_constant() && !d.is_zero() {
            None
        } else {
            let a = cr.local.localize(&v1.components)?;
            let b = cr.local.localize(&v2.components)?;
            let red = &cr.reduction;
            let field = &y.field;
            let inv = field.inv(&a[red.s].constant_value().expect("unit coordinate")).expect("nonzero");
            let gamma = b[red.s].scale(&inv);
            let coords: Vec<Polynomial<K>> = red.frame_indices.iter().map(|&j| b[j].sub(&a[j].mul(&gamma))).collect();
            let value = pairing(&red.gram, &coords, &coords);
            let nonzero = coords.iter().any(|c| !divisible(c, &d));
            Some(divisible(&value, &d) && nonzero)
        };
        charts.push(ChartCheck { chart: cr.local.label.clone(), first: c1[i], second: c2[i], isotropic_mod_divisor: iso });
    }
    let pass = charts.iter().all(|c| c.first && c.second && c.isotropic_mod_divisor != Some(false));
    Ok(InvarianceReport { discriminant: disc, first, second, charts, divisor, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::parse_poly;

    #[test]
    fn hyperbolic_block_cancels() {
        let f = PrimeField::new(10007).unwrap();
        let names = ["x0", "x1", "x2"];
        let p = |s: &str| parse_poly(s, &names, &f).unwrap();
        let z = || p("0");
        let m = vec![
            vec![z(), p("1"), z(), z()],
            vec![p("1"), z(), z(), z()],
            vec![z(), z(), p("x0"), p("x1")],
            vec![z(), z(), p("x1"), p("x2")],
        ];
        let q = GradedQuadraticForm::new(&f, BaseSpec::ProjSpace { n: 2 }, vec![0, 1, 0, 0], 1, m, vec![]);
        assert!(q.validate().is_empty());
        let v = IsotropicDirection::coordinate(&q, 0);
        let red = reduce(&q, &v).unwrap();
        let g = red.global.as_ref().unwrap();
        assert_eq!(g.entries, vec![vec![p("x0"), p("x1")], vec![p("x1"), p("x2")]]);
        assert_eq!(g.degrees, vec![0, 0]);
        let disc = discriminant(&q, &Budget::default()).unwrap();
        assert!(contract_holds(&disc, &red, &Budget::default()).unwrap().iter().all(|&b| b));
    }

    #[test]
    fn non_isotropic_direction_is_rejected() {
        let f = PrimeField::new(101).unwrap();
        let names = ["x0", "x1"];
        let p = |s: &str| parse_poly(s, &names, &f).unwrap();
        let q = GradedQuadraticForm::new(
            &f,
            BaseSpec::ProjSpace { n: 1 },
            vec![0, 0],
            0,
            vec![vec![p("1"), p("0")], vec![p("0"), p("1")]],
            vec![],
        );
        let v = IsotropicDirection::coordinate(&q, 0);
        assert!(matches!(reduce(&q, &v), Err(Error::NotIsotropic)));
    }
}
