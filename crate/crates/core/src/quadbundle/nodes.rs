//! Counting the singular points of a discriminant surface with Gröbner
//! bases, stratum by stratum, and checking that they are nodes.

use serde::Serialize;

use super::discriminant::DiscriminantReport;
use super::linalg;
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::poly::univariate::{roots_fp, UniPoly};
use crate::poly::{groebner, hessian, scalar_rank, Budget, GroebnerBasis, Ideal, Polynomial, SplitMix64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NodeStatus {
    Finite(usize),
    PositiveDimensional,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumReport {
    pub chart: String,
    /// Length of the singular scheme on this stratum; `None` when infinite
    /// or not computed.
    pub dim: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HessianCheck {
    /// Homogeneous coordinates of the point, chart coordinate set to 1.
    pub point: Vec<u64>,
    /// Rank of the Hessian of the local surface germ in 3-space.
    pub hessian_rank: usize,
    pub odp: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeReport {
    pub status: NodeStatus,
    /// Summed stratum lengths; the number of singular points when the
    /// singular scheme is reduced.
    pub total: Option<usize>,
    pub strata: Vec<StratumReport>,
    pub hessian_checks: Vec<HessianCheck>,
    /// Whether the singular scheme is reduced, so that every singular
    /// point over the algebraic closure has Tjurina number 1 and is an
    /// ordinary double point. `None` when not decided.
    pub reduced: Option<bool>,
}

impl NodeReport {
    /// Every `F_p`-rational singular point has a nondegenerate Hessian.
    pub fn all_odp(&self) -> bool {
        self.hessian_checks.iter().all(|h| h.odp)
    }

    /// Every singular point, rational or not, is an ordinary double point.
    pub fn all_ordinary(&self) -> bool {
        self.reduced == Some(true) && self.all_odp()
    }
}

/// Count singular points of the discriminant of `d` (a surface in `P³`, or
/// in `Q³ ⊂ P⁴`).
pub fn count_nodes(d: &DiscriminantReport<PrimeField>, budget: &Budget) -> Result<NodeReport> {
    let f = d
        .global
        .as_ref()
        .ok_or_else(|| Error::Invalid("node counting needs a global discriminant equation".into()))?;
    count_singular_points(f, d.ambient_relation.as_ref(), budget)
}

/// One stratum of the cover: the chart `x_i = 1` with `x_j = 0` for `j < i`.
struct Stratum {
    label: String,
    chart: usize,
    f: Polynomial<PrimeField>,
    g: Option<Polynomial<PrimeField>>,
    ideal: Vec<Polynomial<PrimeField>>,
}

/// Generators of the singular scheme of `f = 0` (or `f = g = 0`) on the
/// affine chart obtained by dropping a coordinate.
fn singular_ideal(fi: &Polynomial<PrimeField>, gi: Option<&Polynomial<PrimeField>>) -> Vec<Polynomial<PrimeField>> {
    let n = fi.nvars();
    let df: Vec<Polynomial<PrimeField>> = (0..n).map(|k| fi.derivative(k)).collect();
    let mut ideal = vec![fi.clone()];
    match gi {
        None => ideal.extend(df),
        Some(gi) => {
            ideal.push(gi.clone());
            let dg: Vec<Polynomial<PrimeField>> = (0..n).map(|k| gi.derivative(k)).collect();
            for a in 0..n {
                for b in (a + 1)..n {
                    ideal.push(df[a].mul(&dg[b]).sub(&df[b].mul(&dg[a])));
                }
            }
        }
    }
    ideal
}

fn strata(f: &Polynomial<PrimeField>, g: Option<&Polynomial<PrimeField>>) -> Vec<Stratum> {
    let field = f.field().clone();
    let nv = f.nvars();
    let one = field.one();
    (0..nv)
        .map(|i| {
            let fi = f.specialize_drop(i, &one);
            let gi = g.map(|g| g.specialize_drop(i, &one));
            let mut ideal = singular_ideal(&fi, gi.as_ref());
            for j in 0..i {
                ideal.push(Polynomial::var(&field, nv - 1, j));
            }
            Stratum { label: format!("x{i}=1"), chart: i, f: fi, g: gi, ideal }
        })
        .collect()
}

enum StratumOutcome {
    Finite(usize, Vec<HessianCheck>),
    Infinite,
    Budget,
}

fn process(s: &Stratum, budget: &Budget) -> Result<StratumOutcome> {
    let gb = match groebner(&Ideal::grevlex(s.ideal.clone()), budget) {
        Ok(gb) => gb,
        Err(Error::BudgetExceeded(_)) => return Ok(StratumOutcome::Budget),
        Err(e) => return Err(e),
    };
    let dim = match gb.standard_monomials() {
        Ok(m) => m.len(),
        Err(Error::InfiniteDimensional) => return Ok(StratumOutcome::Infinite),
        Err(e) => return Err(e),
    };
    let mut checks = Vec::new();
    if dim > 0 {
        for p in rational_points(&gb, budget)? {
            let rank = match &s.g {
                None => hypersurface_hessian_rank(&s.f, &p),
                Some(g) => surface_in_hypersurface_rank(&s.f, g, &p),
            };
            let mut point = p.clone();
            point.insert(s.chart, 1);
            checks.push(HessianCheck { point, hessian_rank: rank, odp: rank == 3 });
        }
    }
    Ok(StratumOutcome::Finite(dim, checks))
}

/// Count singular points of `{f = 0}` in `Pⁿ`, or of `{f = g = 0}` when the
/// ambient hypersurface `g` is given. Strata are processed concurrently and
/// merged in stratum order.
pub fn count_singular_points(
    f: &Polynomial<PrimeField>,
    g: Option<&Polynomial<PrimeField>>,
    budget: &Budget,
) -> Result<NodeReport> {
    if f.is_homogeneous(None).is_none() || g.is_some_and(|g| g.is_homogeneous(None).is_none()) {
        return Err(Error::Invalid("node counting needs homogeneous equations".into()));
    }
    let strata = strata(f, g);
    let outcomes: Vec<Result<StratumOutcome>> = std::thread::scope(|scope| {
        let handles: Vec<_> = strata.iter().map(|s| scope.spawn(move || process(s, budget))).collect();
        handles.into_iter().map(|h| h.join().expect("stratum worker panicked")).collect()
    });
    let mut report =
        NodeReport { status: NodeStatus::Finite(0), total: None, strata: Vec::new(), hessian_checks: Vec::new(), reduced: None };
    let mut total = 0;
    let mut infinite = false;
    let mut over_budget = false;
    for (s, o) in strata.iter().zip(outcomes) {
        let dim = match o? {
            StratumOutcome::Finite(d, checks) => {
                total += d;
                report.hessian_checks.extend(checks);
                Some(d)
            }
            StratumOutcome::Infinite => {
                infinite = true;
                None
            }
            StratumOutcome::Budget => {
                over_budget = true;
                None
            }
        };
        report.strata.push(StratumReport { chart: s.label.clone(), dim });
    }
    report.status = if infinite {
        NodeStatus::PositiveDimensional
    } else if over_budget {
        NodeStatus::BudgetExceeded
    } else {
        report.total = Some(total);
        NodeStatus::Finite(total)
    };
    if let Some(total) = report.total {
        report.reduced = singular_scheme_reduced(f, g, total, budget)?;
    }
    Ok(report)
}

/// Random linear changes of coordinates tried before giving up on putting
/// every singular point in one affine chart.
const COORDINATE_CHANGES: usize = 3;

/// Decide whether the singular scheme, of length `total`, is reduced. After a
/// random linear change of coordinates all singular points lie in the chart
/// `x0 = 1`; the chart algebra is reduced exactly when the minimal
/// polynomial of a separating linear form is squarefree of full degree.
fn singular_scheme_reduced(
    f: &Polynomial<PrimeField>,
    g: Option<&Polynomial<PrimeField>>,
    total: usize,
    budget: &Budget,
) -> Result<Option<bool>> {
    if total == 0 {
        return Ok(Some(true));
    }
    let field = f.field().clone();
    let n = f.nvars();
    let mut rng = SplitMix64::new(0x6e6f_6465 ^ field.characteristic());
    for _ in 0..COORDINATE_CHANGES {
        let images: Vec<Polynomial<PrimeField>> = (0..n)
            .map(|_| {
                let coeffs: Vec<u64> = (0..n).map(|_| field.sample(&mut rng)).collect();
                linear_form_in(&field, &coeffs)
            })
            .collect();
        let one = field.one();
        let fi = f.compose(&images, n).specialize_drop(0, &one);
        let gi = g.map(|g| g.compose(&images, n).specialize_drop(0, &one));
        let gb = match groebner(&Ideal::grevlex(singular_ideal(&fi, gi.as_ref())), budget) {
            Ok(gb) => gb,
            Err(Error::BudgetExceeded(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        // Stratum lengths never exceed the local lengths of the full scheme, so
        // a longer chart algebra means some point has Tjurina number above 1.
        match gb.standard_monomials() {
            Ok(m) if m.len() == total => {}
            Ok(m) if m.len() > total => return Ok(Some(false)),
            Ok(_) | Err(Error::InfiniteDimensional) => continue,
            Err(e) => return Err(e),
        }
        for _ in 0..COORDINATE_CHANGES {
            let coeffs: Vec<u64> = (0..n - 1).map(|_| field.sample(&mut rng)).collect();
            let u = linear_form_in(&field, &coeffs);
            let mp = minimal_polynomial_of(&gb, &u)?;
            if mp.degree() == Some(total) {
                return Ok(Some(mp.is_squarefree()));
            }
        }
        return Ok(Some(false));
    }
    Ok(None)
}

fn linear_form_in(field: &PrimeField, coeffs: &[u64]) -> Polynomial<PrimeField> {
    let n = coeffs.len();
    (0..n).fold(Polynomial::zero(field, n), |acc, i| acc.add(&Polynomial::var(field, n, i).scale(&coeffs[i])))
}

fn eval_matrix(m: &[Vec<Polynomial<PrimeField>>], p: &[u64]) -> Vec<Vec<u64>> {
    m.iter().map(|row| row.iter().map(|e| e.evaluate(p)).collect()).collect()
}

fn hypersurface_hessian_rank(f: &Polynomial<PrimeField>, p: &[u64]) -> usize {
    let vars: Vec<usize> = (0..f.nvars()).collect();
    scalar_rank(f.field(), &eval_matrix(&hessian(f, &vars), p))
}

/// Rank of the Hessian of the surface `f = 0` inside the smooth hypersurface
/// `g = 0`: the Hessian of `f - λg`, with `∇f = λ∇g` at `p`, restricted to
/// the tangent space of `g`.
fn surface_in_hypersurface_rank(f: &Polynomial<PrimeField>, g: &Polynomial<PrimeField>, p: &[u64]) -> usize {
    let field = f.field();
    let n = f.nvars();
    let df: Vec<u64> = (0..n).map(|k| f.derivative(k).evaluate(p)).collect();
    let dg: Vec<u64> = (0..n).map(|k| g.derivative(k).evaluate(p)).collect();
    let Some(idx) = (0..n).find(|&k| dg[k] != 0) else {
        return 0;
    };
    let lambda = field.div(&df[idx], &dg[idx]).expect("nonzero");
    let vars: Vec<usize> = (0..n).collect();
    let hf = eval_matrix(&hessian(f, &vars), p);
    let hg = eval_matrix(&hessian(g, &vars), p);
    let h: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| field.sub(&hf[i][j], &field.mul(&lambda, &hg[i][j]))).collect())
        .collect();
    let basis = linalg::kernel(field, &[dg], n);
    let restricted: Vec<Vec<u64>> = basis
        .iter()
        .map(|u| {
            basis
                .iter()
                .map(|w| {
                    let mut acc = 0;
                    for i in 0..n {
                        for j in 0..n {
                            acc = field.add(&acc, &field.mul(&u[i], &field.mul(&h[i][j], &w[j])));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    scalar_rank(field, &restricted)
}

/// All `F_p`-rational points of a zero-dimensional ideal, found by
/// splitting off one coordinate at a time with minimal polynomials.
pub fn rational_points(gb: &GroebnerBasis<PrimeField>, budget: &Budget) -> Result<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    points_rec(gb, 0, &mut prefix, budget, &mut out)?;
    out.sort();
    Ok(out)
}

fn points_rec(
    gb: &GroebnerBasis<PrimeField>,
    var: usize,
    prefix: &mut Vec<u64>,
    budget: &Budget,
    out: &mut Vec<Vec<u64>>,
) -> Result<()> {
    if gb.is_unit_ideal() {
        return Ok(());
    }
    if var == gb.nvars() {
        out.push(prefix.clone());
        return Ok(());
    }
    let field = gb.field().clone();
    let mp = minimal_polynomial(gb, var)?;
    for r in roots_fp(&mp) {
        let lin = Polynomial::var(&field, gb.nvars(), var).sub(&Polynomial::constant(&field, gb.nvars(), r));
        let mut gens = gb.basis().to_vec();
        gens.push(lin);
        let next = groebner(&Ideal::new(gens, gb.order()), budget)?;
        prefix.push(r);
        points_rec(&next, var + 1, prefix, budget, out)?;
        prefix.pop();
    }
    Ok(())
}

/// Minimal polynomial of multiplication by `x_var` on the quotient algebra.
fn minimal_polynomial(gb: &GroebnerBasis<PrimeField>, var: usize) -> Result<UniPoly<PrimeField>> {
    minimal_polynomial_of(gb, &Polynomial::var(gb.field(), gb.nvars(), var))
}

/// Minimal polynomial of multiplication by `x` on the quotient algebra.
fn minimal_polynomial_of(gb: &GroebnerBasis<PrimeField>, x: &Polynomial<PrimeField>) -> Result<UniPoly<PrimeField>> {
    let field = gb.field().clone();
    let basis = gb.standard_monomials()?;
    let m = basis.len();
    let coords = |p: &Polynomial<PrimeField>| -> Vec<u64> {
        let mut v = vec![0; m];
        for (mono, c) in p.terms() {
            let i = basis.iter().position(|b| b == mono).expect("normal forms are standard");
            v[i] = *c;
        }
        v
    };
    let mut power = gb.normal_form(&Polynomial::one(&field, gb.nvars()));
    let mut columns: Vec<Vec<u64>> = Vec::new();
    for _ in 0..=m {
        columns.push(coords(&power));
        let rows: Vec<Vec<u64>> = (0..m).map(|r| columns.iter().map(|c| c[r]).collect()).collect();
        let ker = linalg::kernel(&field, &rows, columns.len());
        if let Some(k) = ker.first() {
            return Ok(UniPoly::new(&field, k.clone()));
        }
        power = gb.normal_form(&power.mul(x));
    }
    Err(Error::Invalid("no dependency among powers in a finite algebra".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(s: &str) -> Polynomial<PrimeField> {
        let f = PrimeField::new(10007).unwrap();
        parse_poly(s, &["x0", "x1", "x2", "x3"], &f).unwrap()
    }

    #[test]
    fn quadric_cone_has_one_node() {
        let r = count_singular_points(&p("x0*x2 - x1^2"), None, &Budget::default()).unwrap();
        assert_eq!(r.status, NodeStatus::Finite(1));
        assert_eq!(r.hessian_checks.len(), 1);
        assert_eq!(r.hessian_checks[0].point, vec![0, 0, 0, 1]);
        assert_eq!(r.hessian_checks[0].hessian_rank, 3);
    }

    #[test]
    fn coordinate_planes_are_positive_dimensional() {
        let r = count_singular_points(&p("x0*x1*x2"), None, &Budget::default()).unwrap();
        assert_eq!(r.status, NodeStatus::PositiveDimensional);
        assert_eq!(r.total, None);
    }

    #[test]
    fn cayley_cubic_has_four_nodes() {
        let r = count_singular_points(&p("x1*x2*x3 + x0*x2*x3 + x0*x1*x3 + x0*x1*x2"), None, &Budget::default()).unwrap();
        assert_eq!(r.status, NodeStatus::Finite(4));
        assert_eq!(r.hessian_checks.len(), 4);
        assert!(r.all_odp());
        assert_eq!(r.reduced, Some(true));
        assert!(r.all_ordinary());
    }

    #[test]
    fn cusp_makes_the_singular_scheme_nonreduced() {
        let r = count_singular_points(&p("x0*x1*x3 + x2^3 + x0^3 + x1^3"), None, &Budget::default()).unwrap();
        assert!(matches!(r.status, NodeStatus::Finite(_)));
        assert_eq!(r.reduced, Some(false));
        assert!(!r.all_ordinary());
    }

    #[test]
    fn smooth_quadric_has_none() {
        let r = count_singular_points(&p("x0^2 + x1^2 + x2^2 + x3^2"), None, &Budget::default()).unwrap();
        assert_eq!(r.status, NodeStatus::Finite(0));
    }
}
