//! Multivariate division and Buchberger's algorithm.
//!
//! Pairs are processed first-in first-out and skipped by the product
//! criterion only. The ideals handled here are generated by a handful of
//! quadrics in at most eight variables, so nothing fancier is needed.

use std::collections::VecDeque;

use num_traits::One;

use super::mpoly::{MPoly, Monomial};
use super::order::MonomialOrder;
use super::rational::Rational;
use crate::error::{Error, Result};

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quotient(num: &[u32], den: &[u32]) -> Monomial {
    num.iter().zip(den).map(|(x, y)| x - y).collect()
}

fn check_ring(f: &MPoly, basis: &[MPoly], order: &MonomialOrder) -> Result<()> {
    for g in basis {
        if g.vars() != f.vars() {
            return Err(Error::VariableMismatch {
                left: f.vars().names().to_vec(),
                right: g.vars().names().to_vec(),
            });
        }
    }
    if order.nvars() != f.vars().len() {
        return Err(Error::InvalidInput(format!(
            "order is over {} variables, polynomial over {}",
            order.nvars(),
            f.vars().len()
        )));
    }
    Ok(())
}

/// Remainder of multivariate division of `f` by `basis`.
///
/// No term of the result is divisible by the leading monomial of any
/// nonzero basis element. When `basis` is a Gröbner basis the remainder is
/// the unique normal form, and it is zero exactly for members of the ideal.
pub fn normal_form(f: &MPoly, basis: &[MPoly], order: &MonomialOrder) -> Result<MPoly> {
    check_ring(f, basis, order)?;
    let leads: Vec<(Monomial, Rational)> = basis
        .iter()
        .filter_map(|g| order.leading_term(g).map(|(m, c)| (m.clone(), c.clone())))
        .collect();
    let divisors: Vec<&MPoly> = basis.iter().filter(|g| !g.is_zero()).collect();

    let mut p = f.clone();
    let mut rem = MPoly::zero(f.vars());
    while let Some((lm, lc)) = order.leading_term(&p).map(|(m, c)| (m.clone(), c.clone())) {
        match leads.iter().position(|(gm, _)| divides(gm, &lm)) {
            Some(i) => {
                let (gm, gc) = &leads[i];
                let factor = quotient(&lm, gm);
                p = &p - &divisors[i].mul_term(&factor, &(&lc / gc));
            }
            None => {
                rem.add_term(lm.clone(), lc.clone());
                p = &p - &MPoly::monomial(f.vars(), lm, lc);
            }
        }
    }
    Ok(rem)
}

/// S-polynomial of `f` and `g`; zero if either is zero.
pub fn s_polynomial(f: &MPoly, g: &MPoly, order: &MonomialOrder) -> MPoly {
    let (Some((fm, fc)), Some((gm, gc))) = (order.leading_term(f), order.leading_term(g)) else {
        return MPoly::zero(f.vars());
    };
    let l = lcm(fm, gm);
    let a = f.mul_term(&quotient(&l, fm), &(Rational::one() / fc));
    let b = g.mul_term(&quotient(&l, gm), &(Rational::one() / gc));
    &a - &b
}

fn monic(p: &MPoly, order: &MonomialOrder) -> MPoly {
    match order.leading_term(p) {
        Some((_, c)) => p.scale(&(Rational::one() / c)),
        None => p.clone(),
    }
}

/// Reduced Gröbner basis of the ideal generated by `generators`.
///
/// The output is monic, inter-reduced and sorted by decreasing leading
/// monomial, so it is unique for the ideal and order.
pub fn buchberger(generators: &[MPoly], order: &MonomialOrder) -> Result<Vec<MPoly>> {
    let Some(first) = generators.first() else {
        return Ok(Vec::new());
    };
    check_ring(first, generators, order)?;

    let mut basis: Vec<MPoly> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| monic(g, order))
        .collect();
    let mut pairs: VecDeque<(usize, usize)> = (0..basis.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();

    while let Some((i, j)) = pairs.pop_front() {
        let (fm, _) = order.leading_term(&basis[i]).expect("basis is nonzero");
        let (gm, _) = order.leading_term(&basis[j]).expect("basis is nonzero");
        // Product criterion: coprime leading monomials give an S-polynomial reducing to 0.
        if fm.iter().zip(gm).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = normal_form(&s, &basis, order)?;
        if !r.is_zero() {
            basis.push(monic(&r, order));
            let n = basis.len() - 1;
            pairs.extend((0..n).map(|k| (k, n)));
        }
    }
    Ok(reduce_basis(basis, order))
}

fn reduce_basis(basis: Vec<MPoly>, order: &MonomialOrder) -> Vec<MPoly> {
    let leads: Vec<Monomial> = basis
        .iter()
        .map(|g| order.leading_term(g).expect("nonzero").0.clone())
        .collect();
    // Minimal basis: drop elements whose leading monomial is divisible by another's.
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..basis.len() {
        let redundant = (0..basis.len()).any(|j| {
            j != i
                && divides(&leads[j], &leads[i])
                && (leads[j] != leads[i] || j < i)
        });
        if !redundant {
            keep.push(i);
        }
    }
    let minimal: Vec<MPoly> = keep.iter().map(|&i| basis[i].clone()).collect();
    let mut reduced: Vec<MPoly> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<MPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let (lm, lc) = order.leading_term(&minimal[i]).expect("nonzero");
        let head = MPoly::monomial(minimal[i].vars(), lm.clone(), lc.clone());
        let tail = &minimal[i] - &head;
        let tail = normal_form(&tail, &others, order).expect("same ring");
        reduced.push(monic(&(&head + &tail), order));
    }
    reduced.sort_by(|a, b| {
        let la = order.leading_term(a).expect("nonzero").0;
        let lb = order.leading_term(b).expect("nonzero").0;
        order.cmp(lb, la)
    });
    reduced
}

/// Checks the Buchberger criterion directly: every S-polynomial of every
/// pair (no criteria applied) reduces to zero.
pub fn is_groebner_basis(basis: &[MPoly], order: &MonomialOrder) -> Result<bool> {
    for j in 0..basis.len() {
        for i in 0..j {
            let s = s_polynomial(&basis[i], &basis[j], order);
            if !normal_form(&s, basis, order)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Ideal membership through a Gröbner basis of the generators.
pub fn ideal_contains(f: &MPoly, generators: &[MPoly], order: &MonomialOrder) -> Result<bool> {
    let gb = buchberger(generators, order)?;
    Ok(normal_form(f, &gb, order)?.is_zero())
}

/// Number of standard monomials (those not divisible by any leading
/// monomial of `gb`) built from the variables in `vars` only.
///
/// Returns `None` when a standard monomial of degree above `max_degree`
/// exists, which is taken to mean the count is infinite.
pub fn count_standard_monomials(
    gb: &[MPoly],
    order: &MonomialOrder,
    vars: &[usize],
    max_degree: u32,
) -> Option<usize> {
    let leads: Vec<&Monomial> = gb.iter().filter_map(|g| order.leading_term(g).map(|t| t.0)).collect();
    let n = gb.first().map(|g| g.vars().len()).unwrap_or(0);
    let mut count = 0usize;
    let mut stack: Vec<Monomial> = vec![vec![0; n]];
    let mut seen = std::collections::BTreeSet::new();
    while let Some(m) = stack.pop() {
        if !seen.insert(m.clone()) {
            continue;
        }
        if leads.iter().any(|l| divides(l, &m)) {
            continue;
        }
        if m.iter().sum::<u32>() > max_degree {
            return None;
        }
        count += 1;
        for &v in vars {
            let mut next = m.clone();
            next[v] += 1;
            stack.push(next);
        }
    }
    Some(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::mpoly::Vars;
    use crate::exact::order::OrderKind;
    use crate::exact::rational::int;

    #[test]
    fn principal_ideal() {
        let v = Vars::new(&["x"]);
        let x = MPoly::var(&v, "x").unwrap();
        let gb = buchberger(&[x.scale(&int(3))], &MonomialOrder::lex(1)).unwrap();
        assert_eq!(gb, vec![x]);
    }

    #[test]
    fn linear_elimination() {
        let v = Vars::new(&["x", "y", "w"]);
        let x = MPoly::var(&v, "x").unwrap();
        let y = MPoly::var(&v, "y").unwrap();
        let w = MPoly::var(&v, "w").unwrap();
        let order = MonomialOrder::lex(3);
        let gb = buchberger(&[&x - &y, &y - &w], &order).unwrap();
        assert!(gb.contains(&(&x - &w)));
        assert!(is_groebner_basis(&gb, &order).unwrap());
    }

    #[test]
    fn self_reduction_is_zero() {
        let v = Vars::new(&["x", "y"]);
        let x = MPoly::var(&v, "x").unwrap();
        let y = MPoly::var(&v, "y").unwrap();
        let f = &(&x * &y) - &y.pow(2);
        let o = MonomialOrder::degrevlex(2);
        assert!(normal_form(&f, std::slice::from_ref(&f), &o).unwrap().is_zero());
        assert!(normal_form(&f, &[], &o).unwrap() == f);
    }

    #[test]
    fn twisted_cubic_basis() {
        // Classic example: ideal of the twisted cubic, (y - x^2, z - x^3) under lex y > z > x
        // is not a Gröbner basis as given under degrevlex; the reduced basis has 3 elements.
        let v = Vars::new(&["x", "y", "z"]);
        let x = MPoly::var(&v, "x").unwrap();
        let y = MPoly::var(&v, "y").unwrap();
        let z = MPoly::var(&v, "z").unwrap();
        let gens = [&y - &x.pow(2), &z - &x.pow(3)];
        let o = MonomialOrder::degrevlex(3);
        assert!(!is_groebner_basis(&gens, &o).unwrap());
        let gb = buchberger(&gens, &o).unwrap();
        assert!(is_groebner_basis(&gb, &o).unwrap());
        assert_eq!(gb.len(), 3);
        for g in &gens {
            assert!(normal_form(g, &gb, &o).unwrap().is_zero());
        }
        let lexo = MonomialOrder::new(OrderKind::Lex, vec![1, 2, 0]).unwrap();
        let gb = buchberger(&gens, &lexo).unwrap();
        assert_eq!(gb.len(), 2);
    }

    #[test]
    fn standard_monomials_of_a_fat_point() {
        let v = Vars::new(&["z", "w"]);
        let z = MPoly::var(&v, "z").unwrap();
        let w = MPoly::var(&v, "w").unwrap();
        let o = MonomialOrder::lex(2);
        let gb = buchberger(&[z.pow(2), w], &o).unwrap();
        assert_eq!(count_standard_monomials(&gb, &o, &[0, 1], 10), Some(2));
        let gb = buchberger(&[z.pow(2)], &o).unwrap();
        assert_eq!(count_standard_monomials(&gb, &o, &[0, 1], 10), None);
    }
}
