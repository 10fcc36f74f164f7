//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::order::MonomialOrder;
use super::rational::{format_rational, Coeff, Rational};
use crate::error::{Error, Result};

/// Exponent vector, one entry per variable of the owning [`Vars`].
pub type Monomial = Vec<u32>;

/// An ordered list of indeterminate names shared between polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Vars(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    fn same(&self, other: &Vars) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Multivariate polynomial over [`Rational`]. No zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rational>,
}

/// Operation selector for [`poly_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Checked polynomial arithmetic; fails when the variable lists differ.
pub fn poly_arith(a: &MPoly, b: &MPoly, op: PolyOp) -> Result<MPoly> {
    match op {
        PolyOp::Add => a.try_add(b),
        PolyOp::Sub => a.try_sub(b),
        PolyOp::Mul => a.try_mul(b),
    }
}

impl MPoly {
    pub fn zero(vars: &Vars) -> Self {
        MPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        Self::monomial(vars, vec![0; vars.len()], c)
    }

    /// `c * x^exps`. Panics if `exps` has the wrong length.
    pub fn monomial(vars: &Vars, exps: Monomial, c: Rational) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MPoly { vars: vars.clone(), terms }
    }

    /// The polynomial consisting of the `i`-th variable.
    pub fn var_at(vars: &Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, Rational::one())
    }

    pub fn var(vars: &Vars, name: &str) -> Result<Self> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown variable {name:?}")))?;
        Ok(Self::var_at(vars, i))
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = MPoly::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.vars.len()])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// True if the variable with index `var` occurs in some term.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    fn check_vars(&self, other: &MPoly) -> Result<()> {
        if self.vars.same(&other.vars) {
            Ok(())
        } else {
            Err(Error::VariableMismatch {
                left: self.vars.names().to_vec(),
                right: other.vars.names().to_vec(),
            })
        }
    }

    pub(crate) fn add_term(&mut self, e: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &MPoly) -> Result<MPoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check_vars(other)?;
        let mut out = MPoly::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Multiplies by the monomial `c * x^exps`.
    pub fn mul_term(&self, exps: &[u32], c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut acc = MPoly::one(&self.vars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Drops every term of total degree greater than `max_degree`
    /// (reduction modulo the `max_degree + 1` power of the maximal ideal).
    pub fn truncate_degree(&self, max_degree: u32) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= max_degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> MPoly {
        let mut out = MPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut e2 = e.clone();
                e2[var] -= 1;
                out.add_term(e2, c * Rational::from_integer(e[var].into()));
            }
        }
        out
    }

    /// Full evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.vars.len() {
            return Err(Error::InvalidInput(format!(
                "evaluation point has {} coordinates, ring has {} variables",
                point.len(),
                self.vars.len()
            )));
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes rational values for some variables, keeping the ring.
    pub fn specialize(&self, values: &[(usize, Rational)]) -> MPoly {
        let mut out = MPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let mut k = c.clone();
            for (i, v) in values {
                for _ in 0..e[*i] {
                    k *= v;
                }
                e2[*i] = 0;
            }
            out.add_term(e2, k);
        }
        out
    }

    /// Substitutes a polynomial (over the same ring) for variable `var`.
    pub fn substitute(&self, var: usize, value: &MPoly) -> Result<MPoly> {
        self.check_vars(value)?;
        let mut out = MPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[var] = 0;
            let term = MPoly::monomial(&self.vars, e2, c.clone());
            out = &out + &(&term * &value.pow(e[var]));
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over `target`, matching variables by name.
    /// Fails if a variable that occurs in `self` is missing from `target`.
    pub fn embed(&self, target: &Vars) -> Result<MPoly> {
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names().iter().enumerate() {
            match target.index_of(name) {
                Some(j) => map.push(Some(j)),
                None if !self.involves(i) => map.push(None),
                None => {
                    return Err(Error::VariableMismatch {
                        left: self.vars.names().to_vec(),
                        right: target.names().to_vec(),
                    })
                }
            }
        }
        let mut out = MPoly::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                if let Some(j) = map[i] {
                    e2[j] += k;
                }
            }
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    /// Terms listed from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    fn fmt_monomial(&self, e: &[u32]) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| {
                let name = &self.vars.names()[i];
                if k == 1 {
                    name.clone()
                } else {
                    format!("{name}^{k}")
                }
            })
            .collect();
        parts.join("*")
    }
}

impl fmt::Display for MPoly {
    /// Terms are printed in decreasing degrevlex order of the variable list.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let order = MonomialOrder::degrevlex(self.vars.len());
        for (i, (e, c)) in self.sorted_terms(&order).into_iter().enumerate() {
            let mono = self.fmt_monomial(e);
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{}", format_rational(&abs))?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{}*{mono}", format_rational(&abs))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &'a MPoly) -> MPoly {
        self.try_add(rhs).expect("MPoly addition over different rings")
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &'a MPoly) -> MPoly {
        self.try_sub(rhs).expect("MPoly subtraction over different rings")
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &'a MPoly) -> MPoly {
        self.try_mul(rhs).expect("MPoly multiplication over different rings")
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rational::one())
    }
}

impl Coeff for MPoly {
    fn vanishes(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        MPoly::zero(&self.vars)
    }
    fn one_like(&self) -> Self {
        MPoly::one(&self.vars)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &Rational) -> Self {
        MPoly::scale(self, c)
    }
}
