//! The quadratic obstruction map on pairs of 2×2 matrices and the invariant
//! quotient of its zero locus.
//!
//! Coordinates: `T = [[x0 + x, x12], [x21, x0 − x]]`, `Y` likewise in the
//! `y`-variables. The commutator `[T, Y]` is `[[q1, q2], [q3, −q1]]` with
//! `q1 = x12·y21 − x21·y12`, `q2 = 2x·y12 − 2x12·y`, `q3 = 2x21·y − 2y21·x`.
//! Up to the factors of 2 these are the 2×2 minors of the matrix with rows
//! `(x, x12, x21)` and `(y, y12, y21)`, so the zero locus is the cone over the
//! Segre embedding of `P² × P¹`. The invariants `z = Tr(TY)`, `z1 = Tr(T²)`,
//! `z2 = Tr(Y²)` (on traceless parts) satisfy `z² − z1·z2 = q1² + q2·q3`.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::groebner::count_standard_monomials;
use crate::exact::rational::rational_sqrt;
use crate::exact::{
    buchberger, format_rational, int, is_groebner_basis, normal_form, Coeff, Mat2, MPoly, MonomialOrder,
    OrderKind, Rational, Vars,
};

/// Coordinate names, in default priority order.
pub const COORDS: [&str; 8] = ["x0", "x", "x12", "x21", "y0", "y", "y12", "y21"];

/// Default cap on the number of tuples `count_points_mod_p` may visit (13⁶).
pub const DEFAULT_ENUM_BUDGET: u128 = 4_826_809;

thread_local! {
    static RING: Vars = Vars::new(&COORDS);
}

/// `ℚ[x0, x, x12, x21, y0, y, y12, y21]`.
pub fn pair_ring() -> Vars {
    RING.with(|v| v.clone())
}

fn coord(name: &str) -> MPoly {
    MPoly::var(&pair_ring(), name).expect("coordinate name")
}

/// `(trace part, diagonal, upper, lower)` of a matrix `[[t + d, u], [l, t − d]]`.
fn from_coords<C: Coeff>(t: &C, d: &C, u: &C, l: &C) -> Mat2<C> {
    Mat2::new(t.plus(d), u.clone(), l.clone(), t.minus(d))
}

/// A pair `(T, Y)` with entries in a coefficient ring.
#[derive(Debug, Clone, PartialEq)]
pub struct MatPair<C> {
    pub t: Mat2<C>,
    pub y: Mat2<C>,
}

impl MatPair<MPoly> {
    /// The generic pair in the eight coordinates.
    pub fn symbolic() -> Self {
        let c: Vec<MPoly> = COORDS.iter().map(|n| coord(n)).collect();
        MatPair { t: from_coords(&c[0], &c[1], &c[2], &c[3]), y: from_coords(&c[4], &c[5], &c[6], &c[7]) }
    }
}

impl MatPair<Rational> {
    /// Specialization at values for `COORDS`, in order.
    pub fn from_values(v: &[Rational; 8]) -> Self {
        MatPair { t: from_coords(&v[0], &v[1], &v[2], &v[3]), y: from_coords(&v[4], &v[5], &v[6], &v[7]) }
    }
}

impl<C: Coeff> MatPair<C> {
    /// Traceless coordinates `(x, x12, x21)` and `(y, y12, y21)` read back from the entries.
    pub fn traceless_coords(&self) -> ([C; 3], [C; 3]) {
        let read = |m: &Mat2<C>| {
            let half = Rational::new(1.into(), 2.into());
            [m.get(0, 0).minus(m.get(1, 1)).scaled(&half), m.get(0, 1).clone(), m.get(1, 0).clone()]
        };
        (read(&self.t), read(&self.y))
    }

    pub fn traceless(&self) -> Self {
        MatPair { t: self.t.traceless_part(), y: self.y.traceless_part() }
    }
}

/// The three quadrics evaluated at `s = (x, x12, x21)`, `t = (y, y12, y21)`.
pub fn quadrics_at<C: Coeff>(s: &[C; 3], t: &[C; 3]) -> [C; 3] {
    let two = int(2);
    let q1 = s[1].times(&t[2]).minus(&s[2].times(&t[1]));
    let q2 = s[0].times(&t[1]).minus(&s[1].times(&t[0])).scaled(&two);
    let q3 = s[2].times(&t[0]).minus(&t[2].times(&s[0])).scaled(&two);
    [q1, q2, q3]
}

/// `q1, q2, q3` as polynomials in the pair ring.
pub fn quadrics() -> [MPoly; 3] {
    let (s, t) = MatPair::symbolic().traceless_coords();
    quadrics_at(&s, &t)
}

/// Rank of the symmetric matrix of a quadratic form (Hessian).
pub fn quadratic_form_rank(q: &MPoly) -> usize {
    let n = q.vars().len();
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| q.derivative(i).derivative(j).constant_term()).collect())
        .collect();
    crate::cohomology::rank(&rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ob2<C> {
    pub commutator: Mat2<C>,
    pub q_values: [C; 3],
    /// Whether the commutator equals `[[q1, q2], [q3, −q1]]`.
    pub matches_quadrics: bool,
}

/// First obstruction map `(T, Y) ↦ [T, Y]`.
pub fn ob2<C: Coeff>(pair: &MatPair<C>) -> Ob2<C> {
    let commutator = pair.t.commutator(&pair.y);
    let (s, t) = pair.traceless_coords();
    let q = quadrics_at(&s, &t);
    let expected = Mat2::new(q[0].clone(), q[1].clone(), q[2].clone(), q[0].negated());
    Ob2 { matches_quadrics: commutator == expected, commutator, q_values: q }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SegrePoint {
    #[serde(serialize_with = "ser_rats")]
    pub s: [Rational; 3],
    #[serde(serialize_with = "ser_rats")]
    pub t: [Rational; 3],
    #[serde(serialize_with = "ser_rats")]
    pub q: [Rational; 3],
    pub on_zero_locus: bool,
}

fn ser_rats<S: serde::Serializer>(v: &[Rational; 3], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

/// `(s, t) = (λ0·ξ, λ1·ξ)` and the quadrics there.
pub fn segre_check(xi: &[Rational; 3], lam: &[Rational; 2]) -> SegrePoint {
    let s = xi.clone().map(|c| &lam[0] * c);
    let t = xi.clone().map(|c| &lam[1] * c);
    let q = quadrics_at(&s, &t);
    let on_zero_locus = q.iter().all(|c| c.is_zero());
    SegrePoint { s, t, q, on_zero_locus }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PointCount {
    pub prime: u64,
    /// Tuples `(s, t)` over `F_p` with `s ∥ t` (all 2×2 minors zero).
    pub proportional: u64,
    /// Tuples where the literal `q1, q2, q3` vanish. Over `F_2` the factor 2
    /// kills `q2` and `q3`, so this exceeds the proportional count there.
    pub literal_quadrics: u64,
    /// Every literal zero was also proportional.
    pub literal_zeros_proportional: bool,
    /// `p⁴ + p³ − p`.
    pub closed_form: u64,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Brute-force count of the zero locus over `F_p`.
pub fn count_points_mod_p(p: u64, budget: u128) -> Result<PointCount> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let needed = (p as u128).pow(6);
    if needed > budget {
        return Err(Error::EnumerationBudget { needed, budget });
    }
    let m = |a: u64| a % p;
    let (mut proportional, mut literal, mut all_prop) = (0u64, 0u64, true);
    for idx in 0..needed as u64 {
        let mut v = [0u64; 6];
        let mut r = idx;
        for slot in v.iter_mut() {
            *slot = r % p;
            r /= p;
        }
        let (s, t) = (&v[..3], &v[3..]);
        let minor = |i: usize, j: usize| m(s[i] * t[j] + (p - m(s[j] * t[i])));
        let prop = minor(1, 2) == 0 && minor(0, 1) == 0 && minor(2, 0) == 0;
        let q1 = minor(1, 2);
        let q2 = m(2 * minor(0, 1));
        let q3 = m(2 * minor(2, 0));
        let lit = q1 == 0 && q2 == 0 && q3 == 0;
        proportional += prop as u64;
        literal += lit as u64;
        if lit && !prop {
            all_prop = false;
        }
    }
    Ok(PointCount {
        prime: p,
        proportional,
        literal_quadrics: literal,
        literal_zeros_proportional: all_prop,
        closed_form: p.pow(4) + p.pow(3) - p,
    })
}

/// `(z, z1, z2) = (Tr(TY), Tr(T²), Tr(Y²))` on traceless parts.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantPoint<C> {
    pub z: C,
    pub z1: C,
    pub z2: C,
}

pub fn psi<C: Coeff>(pair: &MatPair<C>) -> InvariantPoint<C> {
    let p = pair.traceless();
    InvariantPoint { z: p.t.mul(&p.y).trace(), z1: p.t.mul(&p.t).trace(), z2: p.y.mul(&p.y).trace() }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationCertificate {
    /// `z² − z1·z2` expanded in the pair ring.
    pub lhs: MPoly,
    /// `q1² + q2·q3` expanded in the pair ring.
    pub rhs: MPoly,
    pub identity_holds: bool,
    /// Reduced Gröbner basis of `(q1, q2, q3)` under degrevlex.
    pub groebner_basis: Vec<MPoly>,
    pub basis_verified: bool,
    /// Normal form of `z² − z1·z2` with respect to the basis.
    pub remainder: MPoly,
}

/// Proves `z² = z1·z2` on the zero locus twice: as the polynomial identity
/// `z² − z1·z2 = q1² + q2·q3`, and by Gröbner reduction.
pub fn relation_certificate() -> Result<RelationCertificate> {
    let inv = psi(&MatPair::symbolic());
    let lhs = &(&inv.z * &inv.z) - &(&inv.z1 * &inv.z2);
    let [q1, q2, q3] = quadrics();
    let rhs = &(&q1 * &q1) + &(&q2 * &q3);
    let order = MonomialOrder::degrevlex(COORDS.len());
    let gb = buchberger(&[q1, q2, q3], &order)?;
    let basis_verified = is_groebner_basis(&gb, &order)?;
    let remainder = normal_form(&lhs, &gb, &order)?;
    let cert = RelationCertificate {
        identity_holds: lhs == rhs,
        lhs,
        rhs,
        groebner_basis: gb,
        basis_verified,
        remainder,
    };
    if !cert.identity_holds {
        return Err(Error::Internal("z^2 - z1*z2 differs from q1^2 + q2*q3".into()));
    }
    if !cert.basis_verified || !cert.remainder.is_zero() {
        return Err(Error::Internal("z^2 - z1*z2 does not reduce to zero modulo the quadrics".into()));
    }
    Ok(cert)
}

/// Element `c0 + c1·α + c2·β + c3·αβ` of `ℚ[α, β]/(α² − a, β² − b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Surd {
    pub a: Rational,
    pub b: Rational,
    pub c: [Rational; 4],
}

impl Surd {
    pub fn rational(a: &Rational, b: &Rational, v: Rational) -> Self {
        Surd { a: a.clone(), b: b.clone(), c: [v, Rational::zero(), Rational::zero(), Rational::zero()] }
    }

    /// `α`, folded to a rational when `a` is a rational square.
    pub fn alpha(a: &Rational, b: &Rational) -> Self {
        match rational_sqrt(a) {
            Some(r) => Self::rational(a, b, r),
            None => Surd { a: a.clone(), b: b.clone(), c: [Rational::zero(), Rational::one(), Rational::zero(), Rational::zero()] },
        }
    }

    /// `β`, folded likewise.
    pub fn beta(a: &Rational, b: &Rational) -> Self {
        match rational_sqrt(b) {
            Some(r) => Self::rational(a, b, r),
            None => Surd { a: a.clone(), b: b.clone(), c: [Rational::zero(), Rational::zero(), Rational::one(), Rational::zero()] },
        }
    }

    /// The rational value, if the irrational parts vanish.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.c[1..].iter().all(|c| c.is_zero()).then_some(&self.c[0])
    }
}

impl Coeff for Surd {
    fn vanishes(&self) -> bool {
        self.c.iter().all(|c| c.is_zero())
    }
    fn zero_like(&self) -> Self {
        Surd::rational(&self.a, &self.b, Rational::zero())
    }
    fn one_like(&self) -> Self {
        Surd::rational(&self.a, &self.b, Rational::one())
    }
    fn plus(&self, o: &Self) -> Self {
        assert_eq!((&self.a, &self.b), (&o.a, &o.b), "surds over different extensions");
        Surd { a: self.a.clone(), b: self.b.clone(), c: std::array::from_fn(|i| &self.c[i] + &o.c[i]) }
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }
    fn times(&self, o: &Self) -> Self {
        assert_eq!((&self.a, &self.b), (&o.a, &o.b), "surds over different extensions");
        let (a, b) = (&self.a, &self.b);
        let [p0, p1, p2, p3] = &self.c;
        let [r0, r1, r2, r3] = &o.c;
        let ab = a * b;
        // basis 1, α, β, αβ with α² = a, β² = b
        let c0 = p0 * r0 + a * (p1 * r1) + b * (p2 * r2) + &ab * (p3 * r3);
        let c1 = p0 * r1 + p1 * r0 + b * (p2 * r3 + p3 * r2);
        let c2 = p0 * r2 + p2 * r0 + a * (p1 * r3 + p3 * r1);
        let c3 = p0 * r3 + p3 * r0 + p1 * r2 + p2 * r1;
        Surd { a: a.clone(), b: b.clone(), c: [c0, c1, c2, c3] }
    }
    fn negated(&self) -> Self {
        Surd { a: self.a.clone(), b: self.b.clone(), c: self.c.clone().map(|c| -c) }
    }
    fn scaled(&self, k: &Rational) -> Self {
        Surd { a: self.a.clone(), b: self.b.clone(), c: self.c.clone().map(|c| c * k) }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis = [
            String::new(),
            format!("sqrt({})", format_rational(&self.a)),
            format!("sqrt({})", format_rational(&self.b)),
            format!("sqrt({})*sqrt({})", format_rational(&self.a), format_rational(&self.b)),
        ];
        let parts: Vec<String> = self
            .c
            .iter()
            .zip(&basis)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, e)| match (e.is_empty(), c.is_one()) {
                (true, _) => format_rational(c),
                (false, true) => e.clone(),
                (false, false) => format!("{}*{e}", format_rational(c)),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitReport {
    pub count: usize,
    /// Normal forms, entries in `ℚ(√(z1/2), √(z2/2))`.
    pub representatives: Vec<MatPair<Surd>>,
    /// `z = Tr(TY)` at each representative.
    pub z_values: Vec<Surd>,
    /// Every representative commutes and has the requested `(z1, z2)`.
    pub verified: bool,
    /// `z² = z1·z2`, a nonzero rational exactly when there are two orbits.
    pub z_squared: Rational,
}

/// Closed orbits of commuting traceless pairs over `(z1, z2)`: the
/// simultaneously diagonal forms `(α·h, ±β·h)` with `h = diag(1, −1)`,
/// `α² = z1/2`, `β² = z2/2`. The sign of `z` separates them unless
/// `z1·z2 = 0`, where they coincide.
pub fn orbit_separation(z1: &Rational, z2: &Rational) -> OrbitReport {
    let two = int(2);
    let (a, b) = (z1 / &two, z2 / &two);
    let alpha = Surd::alpha(&a, &b);
    let beta = Surd::beta(&a, &b);
    let h = |s: &Surd| Mat2::diag(s.clone(), s.negated());
    let signs: &[i64] = if (z1 * z2).is_zero() { &[1] } else { &[1, -1] };
    let representatives: Vec<MatPair<Surd>> = signs
        .iter()
        .map(|&sg| MatPair { t: h(&alpha), y: h(&beta.scaled(&int(sg))) })
        .collect();
    let mut verified = true;
    let mut z_values = Vec::new();
    for rep in &representatives {
        let inv = psi(rep);
        let commuting = ob2(rep).commutator.is_zero();
        verified &= commuting
            && inv.z1.as_rational() == Some(z1)
            && inv.z2.as_rational() == Some(z2)
            && inv.z.times(&inv.z).as_rational() == Some(&(z1 * z2));
        z_values.push(inv.z);
    }
    if z_values.len() == 2 {
        // opposite signs, and nonzero since z² = z1·z2 ≠ 0
        verified &= z_values[0] == z_values[1].negated();
    }
    OrbitReport { count: representatives.len(), representatives, z_values, verified, z_squared: z1 * z2 }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberDirection {
    /// Restrict modulo `(z2, y0)`.
    Z2,
    /// Restrict modulo `(z1, x0)`.
    Z1,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiberReport {
    /// Image of `z² − z1·z2` after restriction.
    pub restricted_generator: MPoly,
    pub groebner_basis: Vec<MPoly>,
    /// Length along `z` of the restricted scheme.
    pub multiplicity: usize,
    /// Generators of the reduced fiber.
    pub reduced_fiber: Vec<MPoly>,
    pub reduced_fiber_dimension: usize,
}

/// The fiber of the quotient over a boundary point of the cone, in the ring
/// `ℚ[z, z1, z2, x0, y0]`.
pub fn fiber_multiplicity(direction: FiberDirection) -> Result<FiberReport> {
    let ring = Vars::new(&["z", "z1", "z2", "x0", "y0"]);
    let v = |n: &str| MPoly::var(&ring, n).expect("fiber coordinate");
    let (z, z1, z2) = (v("z"), v("z1"), v("z2"));
    let cone = &(&z * &z) - &(&z1 * &z2);
    let cut = match direction {
        FiberDirection::Z2 => vec![z2.clone(), v("y0")],
        FiberDirection::Z1 => vec![z1.clone(), v("x0")],
    };
    let order = MonomialOrder::new(OrderKind::Lex, (0..ring.len()).collect())?;
    let cut_gb = buchberger(&cut, &order)?;
    let restricted_generator = normal_form(&cone, &cut_gb, &order)?;
    let mut gens = cut.clone();
    gens.push(cone);
    let groebner_basis = buchberger(&gens, &order)?;
    let multiplicity = count_standard_monomials(&groebner_basis, &order, &[0], 64)
        .ok_or_else(|| Error::Internal("fiber is not finite along z".into()))?;
    let mut reduced = cut;
    reduced.push(z);
    let reduced_fiber = buchberger(&reduced, &order)?;
    let mut cut_vars = vec![false; ring.len()];
    for g in &reduced_fiber {
        let (m, _) = order.leading_term(g).expect("nonzero generator");
        match m.iter().enumerate().filter(|(_, e)| **e > 0).collect::<Vec<_>>().as_slice() {
            [(i, _)] => cut_vars[*i] = true,
            _ => return Err(Error::Internal("reduced fiber is not a coordinate subspace".into())),
        }
    }
    let reduced_fiber_dimension = cut_vars.iter().filter(|c| !**c).count();
    Ok(FiberReport { restricted_generator, groebner_basis, multiplicity, reduced_fiber, reduced_fiber_dimension })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn vals(v: [i64; 8]) -> [Rational; 8] {
        v.map(int)
    }

    #[test]
    fn commutator_is_the_quadric_matrix() {
        let r = ob2(&MatPair::symbolic());
        assert!(r.matches_quadrics);
        assert_eq!(r.commutator.get(0, 0).to_string(), "-x21*y12 + x12*y21");
        let x0 = pair_ring().index_of("x0").unwrap();
        let y0 = pair_ring().index_of("y0").unwrap();
        for e in r.commutator.entries() {
            assert!(!e.involves(x0) && !e.involves(y0));
        }
        for q in quadrics() {
            assert_eq!(quadratic_form_rank(&q), 4);
        }
    }

    #[test]
    fn commutator_examples() {
        let p = MatPair::from_values(&vals([3, 1, 2, -1, 3, 1, 2, -1]));
        assert!(ob2(&p).commutator.is_zero());
        let p = MatPair::from_values(&vals([0, 1, 0, 0, 0, 0, 1, 0]));
        let c = ob2(&p);
        assert_eq!(c.commutator, Mat2::from_ints(0, 2, 0, 0));
        assert!(c.matches_quadrics);
    }

    #[test]
    fn segre_points() {
        let p = segre_check(&[int(1), int(0), int(0)], &[int(1), int(1)]);
        assert_eq!(p.s, p.t);
        assert!(p.on_zero_locus);
        let p = segre_check(&[int(1), int(2), int(3)], &[int(2), int(5)]);
        assert_eq!(p.s, [int(2), int(4), int(6)]);
        assert_eq!(p.t, [int(5), int(10), int(15)]);
        assert!(p.on_zero_locus);
    }

    #[test]
    fn segre_parameterization_is_symbolic_zero() {
        let ring = Vars::new(&["a0", "a1", "a2", "l0", "l1"]);
        let v: Vec<MPoly> = (0..5).map(|i| MPoly::var_at(&ring, i)).collect();
        let s = [&v[3] * &v[0], &v[3] * &v[1], &v[3] * &v[2]];
        let t = [&v[4] * &v[0], &v[4] * &v[1], &v[4] * &v[2]];
        for q in quadrics_at(&s, &t) {
            assert!(q.is_zero());
        }
    }

    #[test]
    fn point_counts() {
        for (p, expected) in [(2u64, 22u64), (3, 105), (5, 745)] {
            let c = count_points_mod_p(p, DEFAULT_ENUM_BUDGET).unwrap();
            assert_eq!(c.proportional, expected);
            assert_eq!(c.closed_form, expected);
            assert!(c.literal_zeros_proportional || p == 2);
            if p != 2 {
                assert_eq!(c.literal_quadrics, expected);
            }
        }
        // over F_2 only q1 survives; its zero set in F_2^4 has 10 points
        assert_eq!(count_points_mod_p(2, DEFAULT_ENUM_BUDGET).unwrap().literal_quadrics, 10 * 4);
        assert!(matches!(count_points_mod_p(17, DEFAULT_ENUM_BUDGET), Err(Error::EnumerationBudget { .. })));
        assert!(count_points_mod_p(4, DEFAULT_ENUM_BUDGET).is_err());
    }

    #[test]
    fn invariant_examples() {
        let p = MatPair { t: Mat2::from_ints(1, 0, 0, -1), y: Mat2::from_ints(2, 0, 0, -2) };
        let inv = psi(&p);
        assert_eq!((inv.z.clone(), inv.z1.clone(), inv.z2.clone()), (int(4), int(2), int(8)));
        assert_eq!(&inv.z * &inv.z, &inv.z1 * &inv.z2);
        let zero = psi(&MatPair::from_values(&vals([0; 8])));
        assert!(zero.z.is_zero() && zero.z1.is_zero() && zero.z2.is_zero());
        // trace parts are ignored
        let shifted = psi(&MatPair::from_values(&vals([5, 1, 0, 0, -7, 2, 0, 0])));
        assert_eq!(shifted.z, int(4));
    }

    #[test]
    fn relation_is_certified() {
        let cert = relation_certificate().unwrap();
        assert!(cert.identity_holds && cert.basis_verified && cert.remainder.is_zero());
        // the minors are already a Gröbner basis: three elements, listed by decreasing leading monomial
        assert_eq!(cert.groebner_basis.len(), 3);
        let order = MonomialOrder::degrevlex(8);
        let leads: Vec<String> = cert
            .groebner_basis
            .iter()
            .map(|g| {
                let (m, _) = order.leading_term(g).unwrap();
                MPoly::monomial(&pair_ring(), m.clone(), int(1)).to_string()
            })
            .collect();
        assert_eq!(leads, vec!["x12*y", "x21*y", "x21*y12"]);
        let p = MatPair::from_values(&vals([0, 1, 0, 0, 0, 1, 0, 0]));
        let inv = psi(&p);
        assert_eq!((inv.z, inv.z1, inv.z2), (int(2), int(2), int(2)));
        assert!(ob2(&p).q_values.iter().all(|q| q.is_zero()));
    }

    #[test]
    fn relation_at_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let v: [Rational; 8] = std::array::from_fn(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)));
            let p = MatPair::from_values(&v);
            let inv = psi(&p);
            let [q1, q2, q3] = ob2(&p).q_values;
            assert_eq!(&inv.z * &inv.z - &inv.z1 * &inv.z2, &q1 * &q1 + &q2 * &q3);
        }
    }

    #[test]
    fn psi_is_conjugation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut checked = 0;
        while checked < 200 {
            let mut r = || rat(rng.gen_range(-6..=6), rng.gen_range(1..=3));
            let v: [Rational; 8] = [int(0), r(), r(), r(), int(0), r(), r(), r()];
            let g = Mat2::new(r(), r(), r(), r());
            let Some(gi) = g.inverse() else { continue };
            let p = MatPair::from_values(&v);
            let conj = MatPair { t: g.mul(&p.t).mul(&gi), y: g.mul(&p.y).mul(&gi) };
            assert_eq!(psi(&conj), psi(&p));
            checked += 1;
        }
    }

    #[test]
    fn orbits() {
        let r = orbit_separation(&int(2), &int(8));
        assert_eq!(r.count, 2);
        assert!(r.verified);
        assert_eq!(r.z_values[0].as_rational(), Some(&int(4)));
        assert_eq!(r.z_values[1].as_rational(), Some(&int(-4)));
        assert_eq!(r.representatives[0].t, Mat2::from_ints(1, 0, 0, -1).map(|c| Surd::rational(&int(1), &int(4), c.clone())));

        let r = orbit_separation(&int(0), &int(8));
        assert_eq!(r.count, 1);
        assert!(r.verified);
        let r = orbit_separation(&int(0), &int(0));
        assert_eq!(r.count, 1);
        assert!(r.verified);

        let r = orbit_separation(&int(3), &int(5));
        assert_eq!(r.count, 2);
        assert!(r.verified);
        assert_eq!(r.z_values[0].to_string(), "2*sqrt(3/2)*sqrt(5/2)");
        assert!(r.z_values[0].as_rational().is_none());
    }

    #[test]
    fn fiber_has_multiplicity_two() {
        let r = fiber_multiplicity(FiberDirection::Z2).unwrap();
        assert_eq!(r.restricted_generator.to_string(), "z^2");
        assert_eq!(r.multiplicity, 2);
        assert_eq!(r.reduced_fiber_dimension, 2);
        let r = fiber_multiplicity(FiberDirection::Z1).unwrap();
        assert_eq!(r.restricted_generator.to_string(), "z^2");
        assert_eq!(r.multiplicity, 2);
    }
}
