//! Hilbert polynomials, slopes and (semi)stability verdicts for sheaves on a
//! polarized curve.
//!
//! Verdicts are always relative to a caller-supplied family of sub-objects;
//! nothing here enumerates subsheaves.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{factorial, int, Rational};
use crate::exact::{MPoly, Vars};

/// `P(m) = Σ α_i m^i / i!`, stored through the α-coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertPoly {
    alphas: Vec<Rational>,
}

impl HilbertPoly {
    /// Hilbert polynomial of a nonzero sheaf: integer α's with a positive
    /// leading coefficient. Trailing zero α's are trimmed.
    pub fn new(alphas: Vec<Rational>) -> Result<Self> {
        let p = Self::from_alphas(alphas);
        if p.alphas.iter().any(|a| !a.is_integer()) {
            return Err(Error::InvalidInput("Hilbert polynomial α-coefficients must be integers".into()));
        }
        match p.alphas.last() {
            Some(a) if a.is_positive() => Ok(p),
            _ => Err(Error::InvalidInput("multiplicity of a nonzero sheaf must be positive".into())),
        }
    }

    /// Any rational α-vector (used for reduced polynomials).
    pub fn from_alphas(mut alphas: Vec<Rational>) -> Self {
        while alphas.last().is_some_and(|a| a.is_zero()) {
            alphas.pop();
        }
        HilbertPoly { alphas }
    }

    pub fn alphas(&self) -> &[Rational] {
        &self.alphas
    }

    pub fn is_zero(&self) -> bool {
        self.alphas.is_empty()
    }

    /// Degree in `m` (the dimension of the support); `None` for zero.
    pub fn dimension(&self) -> Option<usize> {
        self.alphas.len().checked_sub(1)
    }

    /// Leading α-coefficient.
    pub fn multiplicity(&self) -> Option<&Rational> {
        self.alphas.last()
    }

    /// Ordinary coefficients of `1, m, m², …`.
    pub fn monomial_coefficients(&self) -> Vec<Rational> {
        self.alphas
            .iter()
            .enumerate()
            .map(|(i, a)| a / factorial(i as u32))
            .collect()
    }

    pub fn eval(&self, m: &Rational) -> Rational {
        self.monomial_coefficients()
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * m + c)
    }

    /// True if the polynomial takes integer values at `m = lo..=hi`.
    pub fn integer_valued_on(&self, lo: i64, hi: i64) -> bool {
        (lo..=hi).all(|m| self.eval(&int(m)).is_integer())
    }
}

/// Printed as a polynomial in `m`, highest degree first.
impl fmt::Display for HilbertPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = Vars::new(&["m"]);
        let p = MPoly::from_terms(
            &ring,
            self.monomial_coefficients().into_iter().enumerate().map(|(i, c)| (vec![i as u32], c)),
        );
        write!(f, "{p}")
    }
}

/// `P(m) = r·h·m + d + r(1 − g)` for a sheaf of rank `r`, degree `d` on a curve of
/// genus `g` polarized by a line bundle of degree `h`.
pub fn hilbert_poly_curve(rank: u32, degree: i64, genus: u32, polarization: u32) -> Result<HilbertPoly> {
    if rank == 0 || polarization == 0 {
        return Err(Error::InvalidInput("rank and polarization degree must be positive".into()));
    }
    let r = int(rank as i64);
    let a1 = &r * int(polarization as i64);
    let a0 = int(degree) + &r * int(1 - genus as i64);
    HilbertPoly::new(vec![a0, a1])
}

/// `p(E) = P(E) / α_d(E)`.
pub fn reduced_poly(p: &HilbertPoly) -> Result<HilbertPoly> {
    let lead = p
        .multiplicity()
        .ok_or_else(|| Error::InvalidInput("the zero polynomial has no reduced polynomial".into()))?
        .clone();
    Ok(HilbertPoly::from_alphas(p.alphas.iter().map(|a| a / &lead).collect()))
}

/// Comparison for `m ≫ 0`: lexicographic on ordinary coefficients, highest degree first.
pub fn lex_compare(f: &HilbertPoly, g: &HilbertPoly) -> Ordering {
    let fc = f.monomial_coefficients();
    let gc = g.monomial_coefficients();
    let n = fc.len().max(gc.len());
    let zero = Rational::zero();
    for i in (0..n).rev() {
        let a = fc.get(i).unwrap_or(&zero);
        let b = gc.get(i).unwrap_or(&zero);
        match a.cmp(b) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Rank, degree and slope of a torsion-free sheaf on a polarized curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SheafNumerics {
    pub rank: Rational,
    pub degree: Rational,
    pub slope: Rational,
    pub genus: u32,
    pub polarization: u32,
}

impl SheafNumerics {
    pub fn new(rank: Rational, degree: Rational, genus: u32, polarization: u32) -> Result<Self> {
        if !rank.is_positive() {
            return Err(Error::InvalidInput("rank must be positive".into()));
        }
        if polarization == 0 {
            return Err(Error::InvalidInput("polarization degree must be positive".into()));
        }
        let slope = &degree / &rank;
        Ok(SheafNumerics { rank, degree, slope, genus, polarization })
    }

    pub fn on_curve(rank: u32, degree: i64, genus: u32, polarization: u32) -> Result<Self> {
        Self::new(int(rank as i64), int(degree), genus, polarization)
    }

    /// Riemann–Roch Hilbert polynomial; the α's may be rational when the rank is.
    pub fn hilbert_poly(&self) -> HilbertPoly {
        let a1 = &self.rank * int(self.polarization as i64);
        let a0 = &self.degree + &self.rank * int(1 - self.genus as i64);
        HilbertPoly::from_alphas(vec![a0, a1])
    }
}

/// Sheaf numerics together with its Hilbert polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sheaf {
    pub numerics: SheafNumerics,
    pub hilbert: HilbertPoly,
}

impl Sheaf {
    pub fn new(numerics: SheafNumerics) -> Self {
        let hilbert = numerics.hilbert_poly();
        Sheaf { numerics, hilbert }
    }

    pub fn on_curve(rank: u32, degree: i64, genus: u32, polarization: u32) -> Result<Self> {
        Ok(Self::new(SheafNumerics::on_curve(rank, degree, genus, polarization)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    MuStable,
    Stable,
    StrictlySemistable,
    SemistableUnknownStrictness,
    Unstable,
}

/// Hilbert-polynomial and slope verdicts with the sub-object that decided each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub hilbert: Verdict,
    pub hilbert_witness: Option<usize>,
    pub slope: Verdict,
    pub slope_witness: Option<usize>,
    /// Set when no sub-object was available to test against.
    pub vacuous: bool,
}

fn check_family(e: &Sheaf, subs: &[Sheaf]) -> Result<()> {
    for (i, f) in subs.iter().enumerate() {
        let (fe, ee) = (&f.numerics, &e.numerics);
        if fe.genus != ee.genus || fe.polarization != ee.polarization {
            return Err(Error::InvalidInput(format!("sub-object {i} lives on a different polarized curve")));
        }
        if fe.rank > ee.rank {
            return Err(Error::InvalidInput(format!("sub-object {i} has rank larger than the sheaf")));
        }
        if fe.rank == ee.rank && fe.degree >= ee.degree {
            return Err(Error::InvalidInput(format!(
                "sub-object {i} has full rank, so as a proper subsheaf its degree must be smaller"
            )));
        }
    }
    Ok(())
}

/// Per-sub-object comparisons: reduced Hilbert polynomials over the whole
/// family, slopes over the sub-objects of strictly smaller rank.
struct Comparisons {
    hilbert: Vec<(usize, Ordering)>,
    slope: Vec<(usize, Ordering)>,
}

fn compare(e: &Sheaf, subs: &[Sheaf]) -> Result<Comparisons> {
    check_family(e, subs)?;
    let pe = reduced_poly(&e.hilbert)?;
    let mut hilbert = Vec::with_capacity(subs.len());
    let mut slope = Vec::new();
    for (i, f) in subs.iter().enumerate() {
        hilbert.push((i, lex_compare(&reduced_poly(&f.hilbert)?, &pe)));
        if f.numerics.rank < e.numerics.rank {
            slope.push((i, f.numerics.slope.cmp(&e.numerics.slope)));
        }
    }
    Ok(Comparisons { hilbert, slope })
}

fn classify(cmps: &[(usize, Ordering)], stable: Verdict) -> (Verdict, Option<usize>) {
    if cmps.is_empty() {
        return (Verdict::SemistableUnknownStrictness, None);
    }
    if let Some((i, _)) = cmps.iter().find(|(_, o)| *o == Ordering::Greater) {
        return (Verdict::Unstable, Some(*i));
    }
    if let Some((i, _)) = cmps.iter().find(|(_, o)| *o == Ordering::Equal) {
        return (Verdict::StrictlySemistable, Some(*i));
    }
    (stable, None)
}

/// Hilbert (Gieseker) and slope verdicts of `e` against the given sub-objects.
pub fn stability_verdict(e: &Sheaf, subs: &[Sheaf]) -> Result<StabilityReport> {
    let c = compare(e, subs)?;
    let (hilbert, hilbert_witness) = classify(&c.hilbert, Verdict::Stable);
    let (slope, slope_witness) = classify(&c.slope, Verdict::MuStable);
    Ok(StabilityReport { hilbert, hilbert_witness, slope, slope_witness, vacuous: subs.is_empty() })
}

/// The four stability properties and any violation of
/// μ-stable ⇒ stable ⇒ semistable ⇒ μ-semistable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub mu_stable: bool,
    pub stable: bool,
    pub semistable: bool,
    pub mu_semistable: bool,
    pub violations: Vec<String>,
}

impl ChainReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn implication_chain_check(e: &Sheaf, subs: &[Sheaf]) -> Result<ChainReport> {
    let c = compare(e, subs)?;
    let all = |v: &[(usize, Ordering)], ok: &dyn Fn(Ordering) -> bool| v.iter().all(|(_, o)| ok(*o));
    let mu_stable = all(&c.slope, &|o| o == Ordering::Less);
    let mu_semistable = all(&c.slope, &|o| o != Ordering::Greater);
    let stable = all(&c.hilbert, &|o| o == Ordering::Less);
    let semistable = all(&c.hilbert, &|o| o != Ordering::Greater);

    let mut violations = Vec::new();
    let steps = [
        (mu_stable, stable, "mu-stable but not stable"),
        (stable, semistable, "stable but not semistable"),
        (semistable, mu_semistable, "semistable but not mu-semistable"),
    ];
    for (premise, conclusion, msg) in steps {
        if premise && !conclusion {
            violations.push(msg.to_string());
        }
    }

    // The verdicts must tell the same story as the raw flags.
    let report = stability_verdict(e, subs)?;
    let consistent = match report.hilbert {
        Verdict::Stable => stable,
        Verdict::StrictlySemistable => semistable && !stable,
        Verdict::Unstable => !semistable,
        Verdict::SemistableUnknownStrictness => stable && semistable,
        Verdict::MuStable => false,
    };
    if !consistent {
        violations.push(format!("hilbert verdict {:?} disagrees with comparisons", report.hilbert));
    }
    Ok(ChainReport { mu_stable, stable, semistable, mu_semistable, violations })
}

/// `μ(E) = deg / rank` as a convenience for callers holding raw numbers.
pub fn slope(rank: &Rational, degree: &Rational) -> Result<Rational> {
    if rank.is_zero() {
        return Err(Error::InvalidInput("slope of a rank-zero sheaf".into()));
    }
    Ok(degree / rank)
}

/// Unit reduced polynomial check: the leading α of `p` equals one.
pub fn is_reduced(p: &HilbertPoly) -> bool {
    p.multiplicity().is_some_and(|a| a.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn poly(coeffs: &[Rational]) -> HilbertPoly {
        // ordinary coefficients -> α's
        HilbertPoly::from_alphas(
            coeffs.iter().enumerate().map(|(i, c)| c * factorial(i as u32)).collect(),
        )
    }

    #[test]
    fn curve_polynomials() {
        let p = hilbert_poly_curve(2, 0, 1, 1).unwrap();
        assert_eq!(p.monomial_coefficients(), vec![int(0), int(2)]);
        let p = hilbert_poly_curve(1, 0, 1, 1).unwrap();
        assert_eq!(p.monomial_coefficients(), vec![int(0), int(1)]);
        let p = hilbert_poly_curve(2, -1, 1, 1).unwrap();
        assert_eq!(p.monomial_coefficients(), vec![int(-1), int(2)]);
        assert!(hilbert_poly_curve(0, 1, 1, 1).is_err());
    }

    #[test]
    fn riemann_roch_oracle() {
        // χ(E(m)) = d + r·m·h + r(1 − g), evaluated pointwise
        for (r, d, g, h) in [(1u32, 3i64, 0u32, 1u32), (2, -1, 1, 1), (3, 5, 2, 2), (4, -7, 3, 3)] {
            let p = hilbert_poly_curve(r, d, g, h).unwrap();
            for m in -5..5i64 {
                let chi = d + (r as i64) * m * (h as i64) + (r as i64) * (1 - g as i64);
                assert_eq!(p.eval(&int(m)), int(chi));
            }
            assert!(p.integer_valued_on(-20, 20));
        }
    }

    #[test]
    fn reduced_polynomials() {
        let p = reduced_poly(&hilbert_poly_curve(2, 0, 1, 1).unwrap()).unwrap();
        assert_eq!(p.monomial_coefficients(), vec![int(0), int(1)]);
        let p = reduced_poly(&hilbert_poly_curve(2, -1, 1, 1).unwrap()).unwrap();
        assert_eq!(p.monomial_coefficients(), vec![rat(-1, 2), int(1)]);
        assert!(is_reduced(&p));
        assert!(reduced_poly(&HilbertPoly::from_alphas(vec![])).is_err());
        assert!(HilbertPoly::new(vec![int(1), int(-2)]).is_err());
        assert!(HilbertPoly::new(vec![rat(1, 2), int(2)]).is_err());
    }

    #[test]
    fn printing() {
        assert_eq!(hilbert_poly_curve(2, -1, 1, 1).unwrap().to_string(), "2*m - 1");
        assert_eq!(reduced_poly(&hilbert_poly_curve(2, -1, 1, 1).unwrap()).unwrap().to_string(), "m - 1/2");
        assert_eq!(HilbertPoly::from_alphas(vec![]).to_string(), "0");
    }

    #[test]
    fn eventual_comparison() {
        let m = poly(&[int(0), int(1)]);
        assert_eq!(lex_compare(&poly(&[rat(-1, 2), int(1)]), &m), Ordering::Less);
        assert_eq!(lex_compare(&m, &m), Ordering::Equal);
        assert_eq!(
            lex_compare(&poly(&[int(0), int(0), int(1)]), &poly(&[int(0), int(1000)])),
            Ordering::Greater
        );
    }

    #[test]
    fn verdict_examples() {
        let e = Sheaf::on_curve(2, 0, 1, 1).unwrap();
        let r = stability_verdict(&e, &[Sheaf::on_curve(1, 0, 1, 1).unwrap()]).unwrap();
        assert_eq!(r.hilbert, Verdict::StrictlySemistable);
        assert_eq!(r.hilbert_witness, Some(0));
        assert_eq!(r.slope, Verdict::StrictlySemistable);

        let e = Sheaf::on_curve(2, -1, 1, 1).unwrap();
        let r = stability_verdict(&e, &[Sheaf::on_curve(1, -1, 1, 1).unwrap()]).unwrap();
        assert_eq!(r.hilbert, Verdict::Stable);
        assert_eq!(r.slope, Verdict::MuStable);
        assert_eq!(r.hilbert_witness, None);

        let e = Sheaf::on_curve(2, 0, 1, 1).unwrap();
        let r = stability_verdict(&e, &[Sheaf::on_curve(1, 1, 1, 1).unwrap()]).unwrap();
        assert_eq!(r.hilbert, Verdict::Unstable);
        assert_eq!(r.slope, Verdict::Unstable);
        assert_eq!(r.slope_witness, Some(0));

        let r = stability_verdict(&e, &[]).unwrap();
        assert_eq!(r.hilbert, Verdict::SemistableUnknownStrictness);
        assert!(r.vacuous);
    }

    #[test]
    fn invalid_families() {
        let e = Sheaf::on_curve(2, 0, 1, 1).unwrap();
        assert!(stability_verdict(&e, &[Sheaf::on_curve(3, 0, 1, 1).unwrap()]).is_err());
        assert!(stability_verdict(&e, &[Sheaf::on_curve(2, 0, 1, 1).unwrap()]).is_err());
        assert!(stability_verdict(&e, &[Sheaf::on_curve(1, 0, 2, 1).unwrap()]).is_err());
        assert!(slope(&int(0), &int(1)).is_err());
    }

    #[test]
    fn chain_on_examples() {
        let e = Sheaf::on_curve(2, 0, 1, 1).unwrap();
        let c = implication_chain_check(&e, &[Sheaf::on_curve(1, 0, 1, 1).unwrap()]).unwrap();
        assert!(c.semistable && c.mu_semistable && !c.stable && !c.mu_stable);
        assert!(c.holds());
        let e = Sheaf::on_curve(2, -1, 1, 1).unwrap();
        let c = implication_chain_check(&e, &[Sheaf::on_curve(1, -1, 1, 1).unwrap()]).unwrap();
        assert!(c.mu_stable && c.stable && c.semistable && c.mu_semistable);
        assert!(c.holds());
    }

    #[test]
    fn lex_compare_is_a_total_order_matching_large_m() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let random = |rng: &mut ChaCha8Rng| {
            let deg = rng.gen_range(0..4);
            poly(&(0..=deg).map(|_| int(rng.gen_range(-20..=20))).collect::<Vec<_>>())
        };
        let big = int(1_000_000);
        for _ in 0..1000 {
            let (f, g, h) = (random(&mut rng), random(&mut rng), random(&mut rng));
            assert_eq!(lex_compare(&f, &g), lex_compare(&g, &f).reverse());
            if lex_compare(&f, &g) != Ordering::Greater && lex_compare(&g, &h) != Ordering::Greater {
                assert_ne!(lex_compare(&f, &h), Ordering::Greater);
            }
            assert_eq!(lex_compare(&f, &g), f.eval(&big).cmp(&g.eval(&big)));
            if !f.is_zero() {
                let once = reduced_poly(&f).unwrap();
                assert_eq!(reduced_poly(&once).unwrap(), once);
            }
        }
    }
}
