//! Differential operators `Σ f_k(z) ∂^k` in one local coordinate.
//!
//! Two independent product routes are kept: [`normalize`] rewrites a raw word
//! letter by letter with the single rule `∂·f → f·∂ + f′`, while [`multiply`]
//! uses the closed Leibniz formula `∂^a·g = Σ_j C(a,j) g^{(j)} ∂^{a−j}`.
//!
//! Membership in the subalgebra generated by `𝒪` and `v = z^d ∂` (or `z∂` in
//! the logarithmic case) is decided by greedy elimination from the top
//! `∂`-order down. Since `v^k = z^{kd} ∂^k + (lower order)`, that subalgebra is
//! the free left `𝒪`-module on `1, v, v², …`, so an operator is a member iff
//! at each step its top coefficient is divisible by `z^{kd}`; subtracting
//! `f_k v^k` then lowers the order. The quotients `f_k` form the certificate.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exact::rational::{binomial, format_rational, int, parse_rational, Rational};
use crate::exact::{MPoly, Vars};

thread_local! {
    static Z: Vars = Vars::new(&["z"]);
}

/// The coordinate ring `ℚ[z]`.
pub fn z_ring() -> Vars {
    Z.with(|v| v.clone())
}

fn zpow(k: u32, c: Rational) -> MPoly {
    MPoly::monomial(&z_ring(), vec![k], c)
}

/// `f / z^k` when `z^k` divides `f`.
fn divide_by_zpow(f: &MPoly, k: u32) -> Option<MPoly> {
    if f.terms().any(|(m, _)| m[0] < k) {
        return None;
    }
    Some(MPoly::from_terms(&z_ring(), f.terms().map(|(m, c)| (vec![m[0] - k], c.clone()))))
}

/// A letter of an unnormalized word.
#[derive(Debug, Clone, PartialEq)]
pub enum Letter {
    Coeff(MPoly),
    D,
}

/// Normal form `Σ f_k(z) ∂^k`, keyed by `k`, zero coefficients dropped.
#[derive(Clone, PartialEq)]
pub struct DiffOp {
    terms: BTreeMap<u32, MPoly>,
}

impl DiffOp {
    pub fn zero() -> Self {
        DiffOp { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::coeff(MPoly::one(&z_ring()))
    }

    /// `∂`
    pub fn d() -> Self {
        Self::term(MPoly::one(&z_ring()), 1)
    }

    /// Multiplication operator by `f`.
    pub fn coeff(f: MPoly) -> Self {
        Self::term(f, 0)
    }

    /// `f ∂^k`
    pub fn term(f: MPoly, k: u32) -> Self {
        let mut out = Self::zero();
        out.add_term(k, f);
        out
    }

    pub fn z() -> Self {
        Self::coeff(zpow(1, int(1)))
    }

    pub fn constant(c: Rational) -> Self {
        Self::coeff(MPoly::constant(&z_ring(), c))
    }

    fn add_term(&mut self, k: u32, f: MPoly) {
        if f.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&k) {
            Some(old) => &old + &f,
            None => f,
        };
        if !sum.is_zero() {
            self.terms.insert(k, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `∂^k`.
    pub fn coefficient(&self, k: u32) -> MPoly {
        self.terms.get(&k).cloned().unwrap_or_else(|| MPoly::zero(&z_ring()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &MPoly)> {
        self.terms.iter().map(|(k, f)| (*k, f))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, f) in &other.terms {
            out.add_term(*k, f.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (k, f) in &self.terms {
            out.add_term(*k, f.scale(c));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| multiply_plain(&acc, self))
    }

    /// Left multiplication of every coefficient by `g`.
    pub fn left_mul(&self, g: &MPoly) -> Self {
        let mut out = Self::zero();
        for (k, f) in &self.terms {
            out.add_term(*k, g * f);
        }
        out
    }
}

/// `∂·(Σ h_j ∂^j)` by one application of the rewrite rule per term.
fn d_times(a: &DiffOp) -> DiffOp {
    let mut out = DiffOp::zero();
    for (j, h) in &a.terms {
        out.add_term(j + 1, h.clone());
        out.add_term(*j, h.derivative(0));
    }
    out
}

/// Normal form of `acc · g`, moving `g` left through each `∂` one step at a time.
fn push_coeff(acc: &DiffOp, g: &MPoly) -> DiffOp {
    let mut out = DiffOp::zero();
    for (k, f) in &acc.terms {
        // ∂^k · g, built as ∂·(∂^{k−1}·g)
        let mut moved = DiffOp::coeff(g.clone());
        for _ in 0..*k {
            moved = d_times(&moved);
        }
        out = out.add(&moved.left_mul(f));
    }
    out
}

/// Normal form of a raw word, coefficients moved left by `∂·f → f·∂ + f′`.
pub fn normalize(word: &[Letter]) -> DiffOp {
    let mut acc = DiffOp::one();
    for letter in word {
        acc = match letter {
            Letter::D => {
                let mut out = DiffOp::zero();
                for (k, f) in &acc.terms {
                    out.add_term(k + 1, f.clone());
                }
                out
            }
            Letter::Coeff(g) => push_coeff(&acc, g),
        };
    }
    acc
}

/// Normal form of a formal sum of raw words.
pub fn normalize_sum(words: &[Vec<Letter>]) -> DiffOp {
    words.iter().fold(DiffOp::zero(), |acc, w| acc.add(&normalize(w)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaKind {
    Full,
    /// Generated by `𝒪` and vector fields vanishing to order `d` at `z = 0`.
    Meromorphic(u32),
    /// Generated by `𝒪` and `z∂`.
    Logarithmic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LambdaVariant {
    pub kind: LambdaKind,
    /// Symmetric-algebra associated graded (integrable) or tensor algebra.
    pub integrable: bool,
}

impl LambdaVariant {
    pub fn new(kind: LambdaKind, integrable: bool) -> Result<Self> {
        if kind == LambdaKind::Meromorphic(0) {
            return Err(Error::InvalidInput("divisor multiplicity must be at least 1".into()));
        }
        Ok(LambdaVariant { kind, integrable })
    }

    pub fn full() -> Self {
        LambdaVariant { kind: LambdaKind::Full, integrable: true }
    }

    /// Vanishing order `d` of the generating field `z^d ∂`.
    pub fn vanishing_order(&self) -> u32 {
        match self.kind {
            LambdaKind::Full => 0,
            LambdaKind::Meromorphic(d) => d,
            LambdaKind::Logarithmic => 1,
        }
    }

    /// The generating vector field `z^d ∂`.
    pub fn generator(&self) -> DiffOp {
        DiffOp::term(zpow(self.vanishing_order(), int(1)), 1)
    }
}

/// Product with no variant bookkeeping (closed Leibniz formula).
fn multiply_plain(a: &DiffOp, b: &DiffOp) -> DiffOp {
    let mut out = DiffOp::zero();
    for (ka, f) in &a.terms {
        for (kb, g) in &b.terms {
            let mut deriv = g.clone();
            for j in 0..=*ka {
                if deriv.is_zero() {
                    break;
                }
                let c = binomial(*ka, j);
                out.add_term(ka - j + kb, (f * &deriv).scale(&c));
                deriv = deriv.derivative(0);
            }
        }
    }
    out
}

/// Product in Λ. In one variable `∂` commutes with itself, so the
/// integrable and non-integrable variants give the same normal forms.
pub fn multiply(a: &DiffOp, b: &DiffOp, variant: &LambdaVariant) -> DiffOp {
    let _ = variant.integrable;
    multiply_plain(a, b)
}

/// Highest `∂`-power present; `None` for the zero operator.
pub fn filtration_order(a: &DiffOp) -> Option<u32> {
    a.terms.keys().next_back().copied()
}

/// `Σ f_k v^k` with `v` the generator of a variant.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub generator: DiffOp,
    /// `(k, f_k)`, highest `k` first, zero `f_k` omitted.
    pub terms: Vec<(u32, MPoly)>,
}

impl Certificate {
    /// Expands the certificate back to a normal form.
    pub fn expand(&self) -> DiffOp {
        self.terms.iter().fold(DiffOp::zero(), |acc, (k, f)| {
            acc.add(&self.generator.pow(*k).left_mul(f))
        })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let v = format!("({})", self.generator);
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| match *k {
                0 => format!("({c})"),
                1 => format!("({c})*{v}"),
                _ => format!("({c})*{v}^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Decides membership in the subalgebra of the variant; returns the
/// certificate on success.
pub fn lambda_membership(a: &DiffOp, variant: &LambdaVariant) -> Option<Certificate> {
    let d = variant.vanishing_order();
    let generator = variant.generator();
    let mut rest = a.clone();
    let mut terms = Vec::new();
    while let Some(k) = filtration_order(&rest) {
        let top = rest.coefficient(k);
        let fk = divide_by_zpow(&top, k * d)?;
        rest = rest.sub(&generator.pow(k).left_mul(&fk));
        terms.push((k, fk));
    }
    Some(Certificate { generator, terms })
}

fn write_term(out: &mut String, first: bool, c: &Rational, zdeg: u32, k: u32) {
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let mut factors: Vec<String> = Vec::new();
    if !abs.is_one() || (zdeg == 0 && k == 0) {
        factors.push(format_rational(&abs));
    }
    match zdeg {
        0 => {}
        1 => factors.push("z".into()),
        _ => factors.push(format!("z^{zdeg}")),
    }
    match k {
        0 => {}
        1 => factors.push("d".into()),
        _ => factors.push(format!("d^{k}")),
    }
    out.push_str(&factors.join("*"));
}

/// Terms by descending `∂`-order, then ascending `z`-degree; `d` stands for `∂`.
impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, coeff) in self.terms.iter().rev() {
            let mut ts: Vec<(u32, &Rational)> = coeff.terms().map(|(m, c)| (m[0], c)).collect();
            ts.sort_by_key(|t| t.0);
            for (zdeg, c) in ts {
                let first = out.is_empty();
                write_term(&mut out, first, c, zdeg, *k);
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOp({self})")
    }
}

fn concat(wa: &[Vec<Letter>], wb: &[Vec<Letter>]) -> Vec<Vec<Letter>> {
    let mut out = Vec::with_capacity(wa.len() * wb.len());
    for x in wa {
        for y in wb {
            let mut w = x.clone();
            w.extend(y.iter().cloned());
            out.push(w);
        }
    }
    out
}

/// Parsed expression in the operator grammar.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    D,
    Z,
    Num(Rational),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Distributes into a formal sum of raw words.
    pub fn words(&self) -> Vec<Vec<Letter>> {
        let scalar = |c: Rational| vec![Letter::Coeff(MPoly::constant(&z_ring(), c))];
        match self {
            Expr::D => vec![vec![Letter::D]],
            Expr::Z => vec![vec![Letter::Coeff(zpow(1, int(1)))]],
            Expr::Num(c) => vec![scalar(c.clone())],
            Expr::Add(a, b) => {
                let mut w = a.words();
                w.extend(b.words());
                w
            }
            Expr::Sub(a, b) => {
                let mut w = a.words();
                w.extend(Expr::Neg(b.clone()).words());
                w
            }
            Expr::Neg(a) => a
                .words()
                .into_iter()
                .map(|w| {
                    let mut v = scalar(int(-1));
                    v.extend(w);
                    v
                })
                .collect(),
            Expr::Mul(a, b) => concat(&a.words(), &b.words()),
            Expr::Pow(a, n) => {
                let wa = a.words();
                (0..*n).fold(vec![Vec::new()], |acc, _| concat(&acc, &wa))
            }
        }
    }

    /// Evaluates with [`multiply`], independently of word rewriting.
    pub fn eval(&self) -> DiffOp {
        match self {
            Expr::D => DiffOp::d(),
            Expr::Z => DiffOp::z(),
            Expr::Num(c) => DiffOp::constant(c.clone()),
            Expr::Add(a, b) => a.eval().add(&b.eval()),
            Expr::Sub(a, b) => a.eval().sub(&b.eval()),
            Expr::Mul(a, b) => multiply_plain(&a.eval(), &b.eval()),
            Expr::Neg(a) => a.eval().scale(&int(-1)),
            Expr::Pow(a, n) => a.eval().pow(*n),
        }
    }
}

/// Parses `d`, `z`, integer (or `p/q`) literals, `+`, `-`, `*`, `^` and parentheses.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses and normalizes through word rewriting.
pub fn parse_and_normalize(src: &str) -> Result<DiffOp> {
    Ok(normalize_sum(&parse_expr(src)?.words()))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if c == b'+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            let n: u32 = digits.parse().map_err(|_| Error::Parse {
                offset: start,
                message: "exponent must be a nonnegative integer".into(),
            })?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'd') => {
                self.pos += 1;
                Ok(Expr::D)
            }
            Some(b'z') => {
                self.pos += 1;
                Ok(Expr::Z)
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let mut lit = self.digits();
                if self.src.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    lit.push('/');
                    lit.push_str(&self.digits());
                }
                parse_rational(&lit).map(Expr::Num).map_err(|_| self.error("bad numeric literal"))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn op(s: &str) -> DiffOp {
        parse_and_normalize(s).unwrap()
    }

    fn meromorphic(d: u32) -> LambdaVariant {
        LambdaVariant::new(LambdaKind::Meromorphic(d), true).unwrap()
    }

    #[test]
    fn rewriting_examples() {
        assert_eq!(op("d*z").to_string(), "z*d + 1");
        assert_eq!(op("d*1").to_string(), "d");
        assert_eq!(op("(z^2*d)*(z^2*d)").to_string(), "z^4*d^2 + 2*z^3*d");
        assert_eq!(op("d*z - z*d").to_string(), "1");
        assert_eq!(op("z*d - d*z").to_string(), "-1");
        assert_eq!(op("d*(1+z)").to_string(), "d + z*d + 1");
        assert_eq!(op("1/2*z - z").to_string(), "-1/2*z");
        assert_eq!(op("0").to_string(), "0");
    }

    #[test]
    fn product_examples() {
        let v = LambdaVariant::full();
        let zd = op("z*d");
        assert_eq!(multiply(&DiffOp::d(), &zd, &v).to_string(), "z*d^2 + d");
        assert_eq!(multiply(&DiffOp::one(), &zd, &v), zd);
        let comm = multiply(&DiffOp::d(), &DiffOp::z(), &v).sub(&multiply(&DiffOp::z(), &DiffOp::d(), &v));
        assert_eq!(comm, DiffOp::one());
    }

    #[test]
    fn filtration_examples() {
        assert_eq!(filtration_order(&op("z^4*d^2 + 2*z^3*d")), Some(2));
        assert_eq!(filtration_order(&op("3 + z^5")), Some(0));
        assert_eq!(filtration_order(&op("d*z")), Some(1));
        assert_eq!(filtration_order(&DiffOp::zero()), None);
    }

    #[test]
    fn membership_examples() {
        let log = LambdaVariant::new(LambdaKind::Logarithmic, true).unwrap();
        let c = lambda_membership(&op("z*d"), &log).unwrap();
        assert_eq!(c.expand(), op("z*d"));
        assert!(lambda_membership(&DiffOp::d(), &meromorphic(2)).is_none());
        let a = op("z^4*d^2 + 2*z^3*d");
        let c = lambda_membership(&a, &meromorphic(2)).unwrap();
        assert_eq!(c.terms, vec![(2, MPoly::one(&z_ring()))]);
        assert_eq!(c.to_string(), "(1)*(z^2*d)^2");
        assert_eq!(c.expand(), a);
        let c = lambda_membership(&op("z^4*d^2"), &meromorphic(2)).unwrap();
        assert_eq!(c.to_string(), "(1)*(z^2*d)^2 + (-2*z)*(z^2*d)");
        assert!(lambda_membership(&op("z^3*d^2"), &meromorphic(2)).is_none());
        assert!(lambda_membership(&op("d^3 + z"), &LambdaVariant::full()).is_some());
        assert!(LambdaVariant::new(LambdaKind::Meromorphic(0), false).is_err());
    }

    #[test]
    fn parse_errors_carry_offsets() {
        match parse_expr("d * (z + ") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 9),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expr("d ? z"), Err(Error::Parse { offset: 2, .. })));
        assert!(parse_expr("z^").is_err());
    }

    #[test]
    fn printing_round_trips() {
        for s in ["z^4*d^2 + 2*z^3*d", "-z*d + 1/3", "d^3 - 2*z^2*d", "0"] {
            let a = op(s);
            assert_eq!(op(&a.to_string()), a);
        }
    }

    fn arb_poly() -> impl Strategy<Value = MPoly> {
        prop::collection::vec(-3i64..4, 1..=4).prop_map(|cs| {
            MPoly::from_terms(&z_ring(), cs.into_iter().enumerate().map(|(i, c)| (vec![i as u32], int(c))))
        })
    }

    fn arb_word() -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec(
            prop_oneof![Just(Letter::D), arb_poly().prop_map(Letter::Coeff)],
            0..=5,
        )
    }

    fn arb_member(d: u32) -> impl Strategy<Value = DiffOp> {
        prop::collection::vec(arb_poly(), 1..=3).prop_map(move |fs| {
            let v = meromorphic(d).generator();
            fs.iter()
                .enumerate()
                .fold(DiffOp::zero(), |acc, (k, f)| acc.add(&v.pow(k as u32).left_mul(f)))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn associativity(a in arb_word(), b in arb_word(), c in arb_word()) {
            let v = LambdaVariant::full();
            let (a, b, c) = (normalize(&a), normalize(&b), normalize(&c));
            let left = multiply(&multiply(&a, &b, &v), &c, &v);
            let right = multiply(&a, &multiply(&b, &c, &v), &v);
            prop_assert_eq!(left, right);
        }

        #[test]
        fn rewriting_agrees_with_leibniz(a in arb_word(), b in arb_word()) {
            let mut ab = a.clone();
            ab.extend(b.iter().cloned());
            prop_assert_eq!(normalize(&ab), multiply(&normalize(&a), &normalize(&b), &LambdaVariant::full()));
        }

        #[test]
        fn filtration_is_additive(a in arb_word(), b in arb_word()) {
            let (a, b) = (normalize(&a), normalize(&b));
            let p = multiply(&a, &b, &LambdaVariant::full());
            match (filtration_order(&a), filtration_order(&b)) {
                (Some(x), Some(y)) => prop_assert_eq!(filtration_order(&p), Some(x + y)),
                _ => prop_assert!(p.is_zero()),
            }
        }

        #[test]
        fn membership_is_sound_and_closed(a in arb_member(1), b in arb_member(1), w in arb_word()) {
            let var = meromorphic(1);
            let ca = lambda_membership(&a, &var).expect("member");
            prop_assert_eq!(ca.expand(), a.clone());
            let prod = multiply(&a, &b, &var);
            let cp = lambda_membership(&prod, &var).expect("closed under products");
            prop_assert_eq!(cp.expand(), prod);
            let w = normalize(&w);
            if let Some(c) = lambda_membership(&w, &var) {
                prop_assert_eq!(c.expand(), w);
            }
        }

        #[test]
        fn d2_members_closed(a in arb_member(2), b in arb_member(2)) {
            let var = meromorphic(2);
            let prod = multiply(&a, &b, &var);
            let cp = lambda_membership(&prod, &var).expect("closed under products");
            prop_assert_eq!(cp.expand(), prod);
        }
    }
}
