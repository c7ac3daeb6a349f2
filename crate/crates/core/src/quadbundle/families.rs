//! Random members of the conic bundle families, and the hyperbolic
//! extensions that relate them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::form::{
    linear_form, plucker_chart_map, plucker_pfaffian, BaseSpec, GradedQuadraticForm, IsotropicDirection, Relation,
};
use super::linalg;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{monomials_of_degree, random_homogeneous, Monomial, PolyMatrix, Polynomial, SplitMix64};

/// Attempts before a generator gives up on a seed.
pub const MAX_ATTEMPTS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyName {
    #[serde(rename = "C4")]
    C4,
    #[serde(rename = "C4_WITH_PLANE")]
    C4WithPlane,
    #[serde(rename = "Y_C4_R62")]
    YC4R62,
    #[serde(rename = "GM21")]
    Gm21,
    #[serde(rename = "GM21_TAU")]
    Gm21Tau,
    #[serde(rename = "Y_GM21_K335")]
    YGm21K335,
    #[serde(rename = "GM20_CHART")]
    Gm20Chart,
    #[serde(rename = "Y_GM20_K331_CHART")]
    YGm20K331Chart,
}

impl FamilyName {
    pub const ALL: [FamilyName; 8] = [
        FamilyName::C4,
        FamilyName::C4WithPlane,
        FamilyName::YC4R62,
        FamilyName::Gm21,
        FamilyName::Gm21Tau,
        FamilyName::YGm21K335,
        FamilyName::Gm20Chart,
        FamilyName::YGm20K331Chart,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyName::C4 => "C4",
            FamilyName::C4WithPlane => "C4_WITH_PLANE",
            FamilyName::YC4R62 => "Y_C4_R62",
            FamilyName::Gm21 => "GM21",
            FamilyName::Gm21Tau => "GM21_TAU",
            FamilyName::YGm21K335 => "Y_GM21_K335",
            FamilyName::Gm20Chart => "GM20_CHART",
            FamilyName::YGm20K331Chart => "Y_GM20_K331_CHART",
        }
    }

    fn tag(&self) -> u64 {
        FamilyName::ALL.iter().position(|f| f == self).expect("listed") as u64 + 1
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilyName::ALL
            .iter()
            .copied()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// A generated form with its distinguished isotropic directions.
#[derive(Clone, Debug)]
pub struct Generated<K: Field> {
    pub name: FamilyName,
    pub seed: u64,
    /// Number of draws needed (1 when the first draw was usable).
    pub attempts: usize,
    pub form: GradedQuadraticForm<K>,
    pub directions: Vec<(String, IsotropicDirection<K>)>,
}

impl<K: Field> Generated<K> {
    pub fn direction(&self, label: &str) -> Result<&IsotropicDirection<K>> {
        self.directions
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, v)| v)
            .ok_or_else(|| Error::UnknownName(label.to_string()))
    }
}

/// The random stream for one draw of a family.
pub fn family_rng(name: FamilyName, seed: u64, attempt: usize) -> SplitMix64 {
    let mut base = SplitMix64::new(seed ^ name.tag().wrapping_mul(0xA24B_AED4_963E_E407));
    for _ in 0..attempt {
        base.next_u64();
    }
    base.fork()
}

/// Generate a member of the named family, redrawing degenerate samples.
pub fn generate<K: Field>(name: FamilyName, seed: u64, field: &K) -> Result<Generated<K>> {
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = family_rng(name, seed, attempt);
        if let Some((form, directions)) = draw(name, field, &mut rng)? {
            if form.validate().is_empty() {
                return Ok(Generated { name, seed, attempts: attempt + 1, form, directions });
            }
        }
    }
    Err(Error::ResampleExhausted(MAX_ATTEMPTS))
}

pub fn generate_family<K: Field>(name: FamilyName, seed: u64, field: &K) -> Result<GradedQuadraticForm<K>> {
    generate(name, seed, field).map(|g| g.form)
}

type Draw<K> = Option<(GradedQuadraticForm<K>, Vec<(String, IsotropicDirection<K>)>)>;

fn draw<K: Field>(name: FamilyName, field: &K, rng: &mut SplitMix64) -> Result<Draw<K>> {
    let none = Vec::new;
    Ok(match name {
        FamilyName::C4 => {
            let data = C4Data::random(field, rng);
            let cubic = random_homogeneous(field, 4, 3, rng);
            Some((c4_form(field, cubic, &data), none()))
        }
        FamilyName::C4WithPlane => {
            let data = C4Data::random(field, rng);
            Some((c4_with_plane(field, &data), none()))
        }
        FamilyName::YC4R62 => {
            let d = C4Data::random(field, rng);
            let y = extend_c4(field, &d.q0, &d.q1, &d.q2, &d.l1, &d.l2, &d.l3)?;
            let dirs = vec![
                ("O(1)".to_string(), IsotropicDirection::coordinate(&y, 4)),
                ("O(-1)".to_string(), IsotropicDirection::coordinate(&y, 0)),
            ];
            Some((y, dirs))
        }
        FamilyName::Gm21 | FamilyName::Gm21Tau | FamilyName::YGm21K335 => {
            let data = match Gm21Data::random(field, rng) {
                Some(d) => d,
                None => return Ok(None),
            };
            match name {
                FamilyName::Gm21 => Some((gm21_form(field, &data, &data.q), none())),
                FamilyName::Gm21Tau => Some((gm21_form(field, &data, &data.l1.mul(&data.l2)), none())),
                _ => {
                    let y = extend_gm21(field, &data.ell, &data.phi, &data.a, &data.l1, &data.l2)?;
                    let dirs = (2..5).map(|i| (format!("e{}", i + 1), IsotropicDirection::coordinate(&y, i))).collect();
                    Some((y, dirs))
                }
            }
        }
        FamilyName::Gm20Chart => gm20_chart(field, rng, false)?,
        FamilyName::YGm20K331Chart => gm20_chart(field, rng, true)?,
    })
}

/// The quadrics and linear forms of a cubic fourfold containing a plane.
#[derive(Clone, Debug)]
pub struct C4Data<K: Field> {
    pub q0: Polynomial<K>,
    pub q1: Polynomial<K>,
    pub q2: Polynomial<K>,
    pub l1: Polynomial<K>,
    pub l2: Polynomial<K>,
    pub l3: Polynomial<K>,
}

impl<K: Field> C4Data<K> {
    pub fn random(field: &K, rng: &mut SplitMix64) -> Self {
        let mut quad = || random_homogeneous(field, 4, 2, rng);
        let (q0, q1, q2) = (quad(), quad(), quad());
        let mut lin = || random_homogeneous(field, 4, 1, rng);
        let (l1, l2, l3) = (lin(), lin(), lin());
        C4Data { q0, q1, q2, l1, l2, l3 }
    }
}

/// `[[c, q1, q2], [q1, l1, l2], [q2, l2, l3]]` on `O(-1) ⊕ O²` with twist 1.
pub fn c4_form<K: Field>(field: &K, c: Polynomial<K>, d: &C4Data<K>) -> GradedQuadraticForm<K> {
    let m = vec![
        vec![c, d.q1.clone(), d.q2.clone()],
        vec![d.q1.clone(), d.l1.clone(), d.l2.clone()],
        vec![d.q2.clone(), d.l2.clone(), d.l3.clone()],
    ];
    GradedQuadraticForm::new(field, BaseSpec::ProjSpace { n: 3 }, vec![-1, 0, 0], 1, m, vec![])
}

/// The C-4 form whose cubic entry is `x3 · q0`.
pub fn c4_with_plane<K: Field>(field: &K, d: &C4Data<K>) -> GradedQuadraticForm<K> {
    let x3 = Polynomial::var(field, 4, 3);
    c4_form(field, x3.mul(&d.q0), d)
}

fn require_degree<K: Field>(p: &Polynomial<K>, deg: i64, what: &str) -> Result<()> {
    if p.nvars() != 4 {
        return Err(Error::ContextMismatch(p.nvars(), 4));
    }
    if p.is_homogeneous(None) != Some(deg) {
        return Err(Error::Invalid(format!("{what} must be homogeneous of degree {deg}")));
    }
    Ok(())
}

/// The 5×5 hyperbolic extension on `O(-1) ⊕ O³ ⊕ O(1)`: reducing along
/// the `O(1)` summand returns the C-4-with-plane form.
pub fn extend_c4<K: Field>(
    field: &K,
    q0: &Polynomial<K>,
    q1: &Polynomial<K>,
    q2: &Polynomial<K>,
    l1: &Polynomial<K>,
    l2: &Polynomial<K>,
    l3: &Polynomial<K>,
) -> Result<GradedQuadraticForm<K>> {
    for (p, name) in [(q0, "q0"), (q1, "q1"), (q2, "q2")] {
        require_degree(p, 2, name)?;
    }
    for (p, name) in [(l1, "l1"), (l2, "l2"), (l3, "l3")] {
        require_degree(p, 1, name)?;
    }
    let z = Polynomial::zero(field, 4);
    let one = Polynomial::one(field, 4);
    let half = field.inv(&field.from_i64(2)).ok_or_else(|| Error::InvalidField("characteristic 2".into()))?;
    let hx3 = Polynomial::var(field, 4, 3).scale(&field.neg(&half));
    let m = vec![
        vec![z.clone(), q1.clone(), q2.clone(), q0.clone(), hx3.clone()],
        vec![q1.clone(), l1.clone(), l2.clone(), z.clone(), z.clone()],
        vec![q2.clone(), l2.clone(), l3.clone(), z.clone(), z.clone()],
        vec![q0.clone(), z.clone(), z.clone(), z.clone(), one.clone()],
        vec![hx3, z.clone(), z.clone(), one, z],
    ];
    Ok(GradedQuadraticForm::new(field, BaseSpec::ProjSpace { n: 3 }, vec![-1, 0, 0, 0, 1], 1, m, vec![]))
}

/// Random data of a GM-21 conic bundle on the chart `p01 = 1` of
/// `Gr(2,4)`. The hyperplane `ℓ` cuts out the quadric threefold; the
/// remaining fields are the blocks of the form in Plücker coordinates.
#[derive(Clone, Debug)]
pub struct Gm21Data<K: Field> {
    pub ell: Vec<K::Elem>,
    pub phi: [[Polynomial<K>; 2]; 2],
    pub a: [Polynomial<K>; 2],
    pub l1: Polynomial<K>,
    pub l2: Polynomial<K>,
    pub q: Polynomial<K>,
}

impl<K: Field> Gm21Data<K> {
    /// `None` when `ℓ` is unusable (zero `p03` coefficient or singular section).
    pub fn random(field: &K, rng: &mut SplitMix64) -> Option<Self> {
        let ell: Vec<K::Elem> = (0..6).map(|_| field.sample(rng)).collect();
        if field.is_zero(&ell[2]) || field.is_zero(&plucker_pfaffian(field, &ell)) {
            return None;
        }
        let p = plucker_chart_map(field);
        let var = |i| Polynomial::var(field, 4, i);
        let one = Polynomial::one(field, 4);
        let zero = Polynomial::zero(field, 4);
        let u = [
            [one.clone(), zero.clone(), var(0), var(1)],
            [zero, one, var(2), var(3)],
        ];
        let mut b = vec![vec![field.zero(); 4]; 4];
        for i in 0..4 {
            for j in i..4 {
                let c = field.sample(rng);
                b[i][j] = c.clone();
                b[j][i] = c;
            }
        }
        let bilinear = |x: &[Polynomial<K>; 4], y: &[Polynomial<K>; 4]| {
            let mut acc = Polynomial::zero(field, 4);
            for i in 0..4 {
                for j in 0..4 {
                    if !field.is_zero(&b[i][j]) {
                        acc = acc.add(&x[i].mul(&y[j]).scale(&b[i][j]));
                    }
                }
            }
            acc
        };
        let phi01 = bilinear(&u[0], &u[1]);
        let phi = [[bilinear(&u[0], &u[0]), phi01.clone()], [phi01, bilinear(&u[1], &u[1])]];
        let mut plucker_linear = || {
            let c: Vec<K::Elem> = (0..6).map(|_| field.sample(rng)).collect();
            linear_form(field, &c, &p)
        };
        let m: Vec<Polynomial<K>> = (0..4).map(|_| plucker_linear()).collect();
        let l1 = plucker_linear();
        let l2 = plucker_linear();
        let a = [0, 1].map(|i| (0..4).fold(Polynomial::zero(field, 4), |acc, s| acc.add(&u[i][s].mul(&m[s]))));
        let quad = random_homogeneous(field, 6, 2, rng);
        let q = quad.compose(&p, 4);
        Some(Gm21Data { ell, phi, a, l1, l2, q })
    }
}

/// `[[φ, a], [aᵀ, q]]` on `U ⊕ O(-1)`. On Grassmannian charts the degree
/// vector is bookkeeping only.
pub fn gm21_form<K: Field>(field: &K, d: &Gm21Data<K>, q: &Polynomial<K>) -> GradedQuadraticForm<K> {
    let m = vec![
        vec![d.phi[0][0].clone(), d.phi[0][1].clone(), d.a[0].clone()],
        vec![d.phi[1][0].clone(), d.phi[1][1].clone(), d.a[1].clone()],
        vec![d.a[0].clone(), d.a[1].clone(), q.clone()],
    ];
    GradedQuadraticForm::new(field, BaseSpec::Gr24Chart { ell: d.ell.clone() }, vec![0, 0, -1], 0, m, vec![])
}

/// The block form `[[φ,0,0,a],[0,0,1,l1],[0,1,0,l2],[aᵀ,l1,l2,0]]` on
/// `U ⊕ O² ⊕ O(-1)`.
pub fn extend_gm21<K: Field>(
    field: &K,
    ell: &[K::Elem],
    phi: &[[Polynomial<K>; 2]; 2],
    a: &[Polynomial<K>; 2],
    l1: &Polynomial<K>,
    l2: &Polynomial<K>,
) -> Result<GradedQuadraticForm<K>> {
    if phi[0][1] != phi[1][0] {
        return Err(Error::Invalid("φ must be symmetric".into()));
    }
    for p in phi.iter().flatten().chain(a.iter()).chain([l1, l2]) {
        if p.nvars() != 4 {
            return Err(Error::ContextMismatch(p.nvars(), 4));
        }
    }
    let z = Polynomial::zero(field, 4);
    let one = Polynomial::one(field, 4);
    let m = vec![
        vec![phi[0][0].clone(), phi[0][1].clone(), z.clone(), z.clone(), a[0].clone()],
        vec![phi[1][0].clone(), phi[1][1].clone(), z.clone(), z.clone(), a[1].clone()],
        vec![z.clone(), z.clone(), z.clone(), one.clone(), l1.clone()],
        vec![z.clone(), z.clone(), one, z.clone(), l2.clone()],
        vec![a[0].clone(), a[1].clone(), l1.clone(), l2.clone(), z],
    ];
    Ok(GradedQuadraticForm::new(
        field,
        BaseSpec::Gr24Chart { ell: ell.to_vec() },
        vec![0, 0, 0, 0, -1],
        0,
        m,
        vec![],
    ))
}

/// Degrees of `O ⊕ O(-1) ⊕ O(-1)⁴` presenting `O ⊕ O(-1) ⊕ Q(-1)` on `P³`.
pub const GM20_DEGREES: [i64; 6] = [0, -1, -1, -1, -1, -1];

/// A form on `O ⊕ O(-1) ⊕ Q(-1)` over `P³` with twist 0, lifted to a 6×6
/// matrix annihilating the Euler column `(0, 0, x0, x1, x2, x3)`. The
/// trivial summand is isotropic; with `second` an isotropic `O(-1)`
/// direction is imposed as well.
fn gm20_chart<K: Field>(field: &K, rng: &mut SplitMix64, second: bool) -> Result<Draw<K>> {
    let nv = 4;
    let n = 6;
    let deg = |i: usize, j: usize| -GM20_DEGREES[i] - GM20_DEGREES[j];
    // unknowns: the coefficients of every entry on or above the diagonal,
    // except the (0,0) entry which stays zero
    let mut slots: Vec<(usize, usize, Monomial)> = Vec::new();
    for i in 0..n {
        for j in i..n {
            if i == 0 && j == 0 {
                continue;
            }
            for m in monomials_of_degree(nv, deg(i, j) as u32) {
                slots.push((i, j, m));
            }
        }
    }
    let r: Vec<Polynomial<K>> = (0..n)
        .map(|i| if i < 2 { Polynomial::zero(field, nv) } else { Polynomial::var(field, nv, i - 2) })
        .collect();
    let v2: Option<Vec<Polynomial<K>>> = second.then(|| {
        (0..n)
            .map(|i| {
                if i == 0 {
                    random_homogeneous(field, nv, 1, rng)
                } else {
                    Polynomial::constant(field, nv, field.sample(rng))
                }
            })
            .collect()
    });
    // each unknown contributes a monomial times a unit matrix entry; collect
    // the linear equations M·r = 0 and v2ᵀ M v2 = 0 coefficientwise
    let mut rows: std::collections::BTreeMap<(usize, Vec<u16>), Vec<(usize, K::Elem)>> = Default::default();
    for (u, (i, j, m)) in slots.iter().enumerate() {
        let unit = Polynomial::monomial(field, m.clone(), field.one());
        let mut push = |eq: usize, p: Polynomial<K>| {
            for (mm, c) in p.terms() {
                rows.entry((eq, mm.exps().to_vec())).or_default().push((u, c.clone()));
            }
        };
        // entry (i,j) feeds row i through r_j and row j through r_i
        push(*i, unit.mul(&r[*j]));
        if i != j {
            push(*j, unit.mul(&r[*i]));
        }
        if let Some(v) = &v2 {
            let mut t = unit.mul(&v[*i]).mul(&v[*j]);
            if i != j {
                t = t.add(&t);
            }
            push(n, t);
        }
    }
    let a: Vec<Vec<K::Elem>> = rows
        .values()
        .map(|entries| {
            let mut row = vec![field.zero(); slots.len()];
            for (u, c) in entries {
                row[*u] = field.add(&row[*u], c);
            }
            row
        })
        .collect();
    let kernel = linalg::kernel(field, &a, slots.len());
    if kernel.is_empty() {
        return Ok(None);
    }
    let mut coeffs = vec![field.zero(); slots.len()];
    for k in &kernel {
        let c = field.sample(rng);
        for (x, y) in coeffs.iter_mut().zip(k) {
            *x = field.add(x, &field.mul(&c, y));
        }
    }
    let mut m: PolyMatrix<K> = vec![vec![Polynomial::zero(field, nv); n]; n];
    for ((i, j, mono), c) in slots.iter().zip(&coeffs) {
        if field.is_zero(c) {
            continue;
        }
        let t = Polynomial::monomial(field, mono.clone(), c.clone());
        m[*i][*j] = m[*i][*j].add(&t);
    }
    for i in 0..n {
        for j in 0..i {
            m[i][j] = m[j][i].clone();
        }
    }
    let rel = Relation { weight: -2, column: r };
    let q = GradedQuadraticForm::new(field, BaseSpec::ProjSpace { n: 3 }, GM20_DEGREES.to_vec(), 0, m, vec![rel]);
    let mut dirs = vec![("N".to_string(), IsotropicDirection::coordinate(&q, 0))];
    if let Some(v) = v2 {
        dirs.push(("N'".to_string(), IsotropicDirection { weight: -1, components: v }));
    }
    Ok(Some((q, dirs)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::determinant;
    use crate::quadbundle::reduce::reduce;

    fn fp() -> PrimeField {
        PrimeField::new(10007).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for n in FamilyName::ALL {
            assert_eq!(n.as_str().parse::<FamilyName>().unwrap(), n);
        }
    }

    #[test]
    fn every_family_is_valid_and_deterministic() {
        let f = fp();
        for name in FamilyName::ALL {
            let a = generate(name, 7, &f).unwrap();
            assert!(a.form.validate().is_empty(), "{name}");
            let b = generate(name, 7, &f).unwrap();
            assert_eq!(a.form, b.form, "{name}");
            for (label, v) in &a.directions {
                assert!(a.form.is_isotropic(v).unwrap(), "{name} {label}");
            }
        }
    }

    #[test]
    fn c4_extension_round_trip() {
        let f = fp();
        let mut rng = SplitMix64::new(3);
        let d = C4Data::random(&f, &mut rng);
        let y = extend_c4(&f, &d.q0, &d.q1, &d.q2, &d.l1, &d.l2, &d.l3).unwrap();
        let red = reduce(&y, &IsotropicDirection::coordinate(&y, 4)).unwrap();
        let g = red.global.unwrap();
        let expected = c4_with_plane(&f, &d);
        assert_eq!(g.entries, expected.entries);
        assert_eq!(g.degrees, expected.degrees);
        let d5 = determinant(&y.entries).unwrap();
        let d3 = determinant(&expected.entries).unwrap();
        assert!(d5.proportional(&d3));
    }

    #[test]
    fn gm21_extension_reduces_to_split_quadric() {
        let f = fp();
        let mut rng = SplitMix64::new(5);
        let d = Gm21Data::random(&f, &mut rng).unwrap();
        let y = extend_gm21(&f, &d.ell, &d.phi, &d.a, &d.l1, &d.l2).unwrap();
        let red = reduce(&y, &IsotropicDirection::coordinate(&y, 2)).unwrap();
        let g = red.global.unwrap();
        let minus_two = f.from_i64(-2);
        let expected = gm21_form(&f, &d, &d.l1.mul(&d.l2).scale(&minus_two));
        assert_eq!(g.entries, expected.entries);
    }
}
