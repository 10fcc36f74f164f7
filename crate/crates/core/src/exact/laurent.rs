//! Truncated Laurent series in one variable.
//!
//! A series carries an explicit truncation order `N`: coefficients of
//! exponent `<= N` are known exactly, anything above is unknown. Every
//! operation propagates the order so that results never claim more than the
//! operands support. Asking for a coefficient beyond the order, or extending a
//! series past it, is rejected as truncation exhaustion.

use std::collections::BTreeMap;
use std::fmt;

use super::rational::{Coeff, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct TruncLaurent<C> {
    var: String,
    terms: BTreeMap<i32, C>,
    order: i32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaurentOp {
    Add,
    Mul,
    /// Unary: the second operand is ignored.
    Diff,
}

pub fn laurent_arith<C: Coeff>(
    a: &TruncLaurent<C>,
    b: &TruncLaurent<C>,
    op: LaurentOp,
) -> Result<TruncLaurent<C>> {
    match op {
        LaurentOp::Add => a.try_add(b),
        LaurentOp::Mul => a.try_mul(b),
        LaurentOp::Diff => Ok(a.diff()),
    }
}

impl<C: Coeff> TruncLaurent<C> {
    /// The zero series, known through `order`.
    pub fn zero(var: &str, order: i32) -> Self {
        TruncLaurent { var: var.to_string(), terms: BTreeMap::new(), order }
    }

    /// `coeff * var^exp + O(var^(order+1))`.
    pub fn monomial(var: &str, exp: i32, coeff: C, order: i32) -> Self {
        Self::from_terms(var, [(exp, coeff)], order)
    }

    /// Terms above `order` are discarded; repeated exponents are summed.
    pub fn from_terms(var: &str, terms: impl IntoIterator<Item = (i32, C)>, order: i32) -> Self {
        let mut s = Self::zero(var, order);
        for (k, c) in terms {
            s.add_coeff(k, c);
        }
        s
    }

    fn add_coeff(&mut self, k: i32, c: C) {
        if k > self.order || c.vanishes() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(old) => {
                *old = old.plus(&c);
                if old.vanishes() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    /// Highest exponent whose coefficient is known.
    pub fn order(&self) -> i32 {
        self.order
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Stored coefficient of `var^k`; `None` means zero or beyond the order.
    pub fn coeff(&self, k: i32) -> Option<&C> {
        self.terms.get(&k)
    }

    /// Coefficient of `var^k`, failing if `k` lies beyond the truncation order.
    pub fn coefficient(&self, k: i32) -> Result<Option<&C>> {
        if k > self.order {
            return Err(Error::TruncationExhausted(format!(
                "coefficient of {}^{k} requested, series known through {}",
                self.var, self.order
            )));
        }
        Ok(self.terms.get(&k))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &C)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// Negative-exponent part (same truncation order).
    pub fn principal_part(&self) -> Self {
        TruncLaurent {
            var: self.var.clone(),
            terms: self.terms.range(..0).map(|(k, c)| (*k, c.clone())).collect(),
            order: self.order,
        }
    }

    /// No negative exponents.
    pub fn is_regular(&self) -> bool {
        self.valuation().is_none_or(|v| v >= 0)
    }

    fn lower_bound(&self) -> i32 {
        self.valuation().unwrap_or(self.order.saturating_add(1))
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(Error::SeriesVariableMismatch(self.var.clone(), other.var.clone()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let mut out = Self::zero(&self.var, self.order.min(other.order));
        for (k, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_coeff(*k, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let order = self
            .order
            .saturating_add(other.lower_bound())
            .min(other.order.saturating_add(self.lower_bound()));
        let mut out = Self::zero(&self.var, order);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                if ka + kb > order {
                    break;
                }
                out.add_coeff(ka + kb, ca.times(cb));
            }
        }
        Ok(out)
    }

    /// Termwise derivative `z^k -> k z^(k-1)`; the order drops by one.
    pub fn diff(&self) -> Self {
        let mut out = Self::zero(&self.var, self.order - 1);
        for (k, c) in &self.terms {
            if *k != 0 {
                out.add_coeff(k - 1, c.scaled(&Rational::from_integer((*k).into())));
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.negated())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map_coeffs(|c| c.scaled(r))
    }

    /// Multiplies every coefficient by `c` (on the right).
    pub fn mul_coeff(&self, c: &C) -> Self {
        self.map_coeffs(|x| x.times(c))
    }

    /// Multiplication by `var^k`.
    pub fn shift(&self, k: i32) -> Self {
        TruncLaurent {
            var: self.var.clone(),
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            order: self.order + k,
        }
    }

    /// Forgets every coefficient above `order`. Raising the order is an error.
    pub fn truncate(&self, order: i32) -> Result<Self> {
        if order > self.order {
            return Err(Error::TruncationExhausted(format!(
                "cannot extend a series known through {} to {}",
                self.order, order
            )));
        }
        Ok(TruncLaurent {
            var: self.var.clone(),
            terms: self.terms.range(..=order).map(|(k, c)| (*k, c.clone())).collect(),
            order,
        })
    }

    /// Applies `f` to every coefficient, dropping those that become zero.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> TruncLaurent<D> {
        let mut out = TruncLaurent::zero(&self.var, self.order);
        for (k, c) in &self.terms {
            out.add_coeff(*k, f(c));
        }
        out
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for TruncLaurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in &self.terms {
            let mono = match k {
                0 => String::new(),
                1 => format!("*{}", self.var),
                _ => format!("*{}^{}", self.var, k),
            };
            write!(f, "({c}){mono} + ")?;
        }
        write!(f, "O({}^{})", self.var, self.order + 1)
    }
}

impl<C: Coeff> fmt::Debug for TruncLaurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncLaurent")
            .field("var", &self.var)
            .field("terms", &self.terms)
            .field("order", &self.order)
            .finish()
    }
}
