//! Order-by-order check that the deformation of a connection on an elliptic
//! curve has no obstructions beyond the quadratic ones.
//!
//! On the two-chart covering (a disc around `p` with coordinate `z`, and the
//! complement of `p`) the deformation is given by the transition matrix
//! `G = exp(Y/z)` and connection matrices `A_γ = T − φ_{γ,2}·Y`, where
//! `φ_{β,2} = ℘` and `φ_{α,2} = ℘ − z⁻²`. Truncated at order `K` in the
//! deformation coordinates, the congruence `dG ≡ G·A_β − A_α·G` must hold
//! modulo the ideal of the quadrics plus all terms of degree above `K`.
//!
//! The quadrics are homogeneous and the monomial order is degree compatible,
//! so membership in `(q) + 𝔪^{K+1}` is decided by dropping every term of
//! degree above `K` and reducing modulo a Gröbner basis of `(q)`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::factorial;
use crate::exact::{buchberger, int, normal_form, Coeff, Mat2, MPoly, MonomialOrder, Rational, TruncLaurent};
use crate::kuranishi::{pair_ring, quadrics, MatPair};

/// Name of the local coordinate on the disc chart.
pub const Z: &str = "z";

/// Coefficients `a_1, …, a_m` of `℘ = z⁻² + Σ a_n z^{2n}`.
///
/// `a_1 = g2/20` and `a_2 = g3/28` come from `(℘′)² = 4℘³ − g2·℘ − g3`;
/// for `n ≥ 3` comparing coefficients in `℘″ = 6℘² − g2/2` gives
/// `(2n(2n−1) − 12)·a_n = 6·Σ_{i+j=n−1} a_i·a_j`.
pub fn wp_coefficients<C: Coeff>(g2: &C, g3: &C, m: usize) -> Vec<C> {
    let mut a: Vec<C> = Vec::with_capacity(m);
    for n in 1..=m {
        let next = match n {
            1 => g2.scaled(&Rational::new(1.into(), 20.into())),
            2 => g3.scaled(&Rational::new(1.into(), 28.into())),
            _ => {
                let conv = (1..n - 1).fold(g2.zero_like(), |acc, i| acc.plus(&a[i - 1].times(&a[n - 1 - i - 1])));
                let n = n as i64;
                conv.scaled(&Rational::new(6.into(), (2 * n * (2 * n - 1) - 12).into()))
            }
        };
        a.push(next);
    }
    a
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassSeries {
    pub g2: Rational,
    pub g3: Rational,
    /// `℘`, exact through `z^N`.
    pub series: TruncLaurent<Rational>,
}

impl WeierstrassSeries {
    pub fn order(&self) -> i32 {
        self.series.order()
    }

    /// `(℘′)² − 4℘³ + g2·℘ + g3`, known through `z^{N−4}`.
    pub fn ode_residual(&self) -> Result<TruncLaurent<Rational>> {
        ode_residual(&self.series, &self.g2, &self.g3)
    }

    /// `z^{2n}`-coefficient, `n ≥ 1`.
    pub fn coefficient(&self, exp: i32) -> Result<Rational> {
        Ok(self.series.coefficient(exp)?.cloned().unwrap_or_else(Rational::zero))
    }
}

/// ODE residual of any truncated series, coefficients generic.
pub fn ode_residual<C: Coeff>(wp: &TruncLaurent<C>, g2: &C, g3: &C) -> Result<TruncLaurent<C>> {
    let d = wp.diff();
    let cube = wp.try_mul(wp)?.try_mul(wp)?;
    let order = wp.order();
    let g3s = TruncLaurent::monomial(wp.var(), 0, g3.clone(), order);
    d.try_mul(&d)?
        .try_sub(&cube.scale(&int(4)))?
        .try_add(&wp.mul_coeff(g2))?
        .try_add(&g3s)
}

/// Laurent series of `℘` for the lattice with invariants `g2, g3`, through `z^N`.
pub fn wp_series(g2: &Rational, g3: &Rational, n: i32) -> Result<WeierstrassSeries> {
    if n < 4 {
        return Err(Error::InvalidInput(format!("truncation order {n} is below 4")));
    }
    let a = wp_coefficients(g2, g3, (n / 2) as usize);
    let terms = std::iter::once((-2, Rational::one()))
        .chain(a.into_iter().enumerate().map(|(i, c)| (2 * (i as i32 + 1), c)));
    Ok(WeierstrassSeries { g2: g2.clone(), g3: g3.clone(), series: TruncLaurent::from_terms(Z, terms, n) })
}

/// The 0-cochain with `φ_β − φ_α = z^{−k}` (times `dz`), `φ_α` regular at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiCochain {
    pub k: u32,
    pub phi_alpha: TruncLaurent<Rational>,
    pub phi_beta: TruncLaurent<Rational>,
}

/// `φ_β = ((−1)^k/(k−1)!)·℘^{(k−2)}`, `φ_α = φ_β − z^{−k}`.
pub fn phi_cochain(k: u32, wp: &WeierstrassSeries) -> Result<PhiCochain> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("cochain index {k} must be at least 2")));
    }
    let mut d = wp.series.clone();
    for _ in 0..k - 2 {
        d = d.diff();
    }
    if d.order() < 0 {
        return Err(Error::TruncationExhausted(format!(
            "derivative {} of a series known through {} has no regular part left",
            k - 2,
            wp.order()
        )));
    }
    let sign = if k.is_multiple_of(2) { int(1) } else { int(-1) };
    let phi_beta = d.scale(&(sign / factorial(k - 1)));
    let pole = TruncLaurent::monomial(Z, -(k as i32), Rational::one(), phi_beta.order());
    let phi_alpha = phi_beta.try_sub(&pole)?;
    if !phi_alpha.is_regular() {
        return Err(Error::Internal(format!("phi_alpha for k = {k} has a pole: {phi_alpha}")));
    }
    Ok(PhiCochain { k, phi_alpha, phi_beta })
}

/// 2×2 matrix of truncated Laurent series with polynomial coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesMat {
    pub e: [[TruncLaurent<MPoly>; 2]; 2],
}

impl SeriesMat {
    /// `Σ_j M_j z^{e_j}`, each entry known through `order`.
    pub fn from_terms(terms: &[(i32, Mat2<MPoly>)], order: i32) -> Self {
        let entry = |i: usize, j: usize| {
            TruncLaurent::from_terms(Z, terms.iter().map(|(k, m)| (*k, m.get(i, j).clone())), order)
        };
        SeriesMat { e: [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]] }
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        let cell = |i: usize, j: usize| -> Result<TruncLaurent<MPoly>> {
            self.e[i][0].try_mul(&o.e[0][j])?.try_add(&self.e[i][1].try_mul(&o.e[1][j])?)
        };
        Ok(SeriesMat { e: [[cell(0, 0)?, cell(0, 1)?], [cell(1, 0)?, cell(1, 1)?]] })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        let cell = |i: usize, j: usize| self.e[i][j].try_sub(&o.e[i][j]);
        Ok(SeriesMat { e: [[cell(0, 0)?, cell(0, 1)?], [cell(1, 0)?, cell(1, 1)?]] })
    }

    pub fn diff(&self) -> Self {
        self.map(|s| s.diff())
    }

    pub fn map(&self, f: impl Fn(&TruncLaurent<MPoly>) -> TruncLaurent<MPoly>) -> Self {
        SeriesMat { e: [[f(&self.e[0][0]), f(&self.e[0][1])], [f(&self.e[1][0]), f(&self.e[1][1])]] }
    }

    /// Smallest truncation order among the entries.
    pub fn order(&self) -> i32 {
        self.e.iter().flatten().map(|s| s.order()).min().expect("four entries")
    }

    /// Coefficient matrix of `z^k`.
    pub fn coefficient(&self, k: i32) -> Result<Mat2<MPoly>> {
        let zero = MPoly::zero(&pair_ring());
        let c = |i: usize, j: usize| -> Result<MPoly> {
            Ok(self.e[i][j].coefficient(k)?.cloned().unwrap_or_else(|| zero.clone()))
        };
        Ok(Mat2::new(c(0, 0)?, c(0, 1)?, c(1, 0)?, c(1, 1)?))
    }
}

/// Drops terms of degree above `k` in the deformation coordinates.
fn truncate_mat(s: &SeriesMat, k: u32) -> SeriesMat {
    s.map(|e| e.map_coeffs(|c| c.truncate_degree(k)))
}

#[derive(Debug, Clone)]
pub struct DeformationCocycle {
    /// Deformation order `K`.
    pub order: u32,
    /// `z`-truncation `N`.
    pub ztrunc: i32,
    pub t: Mat2<MPoly>,
    pub y: Mat2<MPoly>,
    /// `Y^j / j!` reduced modulo the quadrics and truncated to degree `K`, `j = 0..=K`.
    pub g_terms: Vec<Mat2<MPoly>>,
    pub g: SeriesMat,
    pub a_alpha: SeriesMat,
    pub a_beta: SeriesMat,
    pub ideal_basis: Vec<MPoly>,
    pub monomial_order: MonomialOrder,
}

fn reduce_mat(m: &Mat2<MPoly>, k: u32, gb: &[MPoly], order: &MonomialOrder) -> Result<Mat2<MPoly>> {
    let r = |i: usize, j: usize| normal_form(&m.get(i, j).truncate_degree(k), gb, order);
    Ok(Mat2::new(r(0, 0)?, r(0, 1)?, r(1, 0)?, r(1, 1)?))
}

/// `A = T − φ·Y` as a matrix of series.
fn connection_matrix(t: &Mat2<MPoly>, y: &Mat2<MPoly>, phi: &TruncLaurent<Rational>) -> Result<SeriesMat> {
    let order = phi.order();
    let tm = SeriesMat::from_terms(&[(0, t.clone())], order);
    let py = SeriesMat::from_terms(
        &phi.terms().map(|(k, c)| (k, y.scale(c))).collect::<Vec<_>>(),
        order,
    );
    tm.try_sub(&py)
}

/// Builds `G = Σ_{j≤K} (Y/z)^j/j!` and `A_γ = T − φ_{γ,2}·Y` through `z^N`.
pub fn build_cocycle(k: u32, n: i32, wp: &WeierstrassSeries) -> Result<DeformationCocycle> {
    if k == 0 {
        return Err(Error::InvalidInput("deformation order must be at least 1".into()));
    }
    // dz, the product with ℘ and K factors of 1/z each cost one order
    if n < k as i32 + 4 {
        return Err(Error::TruncationExhausted(format!(
            "z-truncation {n} cannot support deformation order {k}; need at least {}",
            k + 4
        )));
    }
    if wp.order() < n {
        return Err(Error::TruncationExhausted(format!(
            "Weierstrass series known through {}, cocycle needs {n}",
            wp.order()
        )));
    }
    let wp = WeierstrassSeries { series: wp.series.truncate(n)?, ..wp.clone() };
    let pair = MatPair::symbolic();
    let (t, y) = (pair.t, pair.y);
    let monomial_order = MonomialOrder::degrevlex(pair_ring().len());
    let ideal_basis = buchberger(&quadrics(), &monomial_order)?;

    let mut g_terms = vec![y.identity_like()];
    let mut power = y.identity_like();
    for j in 1..=k {
        power = reduce_mat(&power.mul(&y), k, &ideal_basis, &monomial_order)?;
        g_terms.push(power.scale(&(Rational::one() / factorial(j))));
    }
    let g = SeriesMat::from_terms(
        &g_terms.iter().enumerate().map(|(j, m)| (-(j as i32), m.clone())).collect::<Vec<_>>(),
        n,
    );
    let phi = phi_cochain(2, &wp)?;
    let a_alpha = connection_matrix(&t, &y, &phi.phi_alpha)?;
    let a_beta = connection_matrix(&t, &y, &phi.phi_beta)?;
    Ok(DeformationCocycle { order: k, ztrunc: n, t, y, g_terms, g, a_alpha, a_beta, ideal_basis, monomial_order })
}

/// `R = dG − (G·A_β − A_α·G)` with terms of degree above `k` dropped, before
/// reduction modulo the quadrics.
pub fn residual_series(c: &DeformationCocycle, k: u32) -> Result<SeriesMat> {
    if k > c.order {
        return Err(Error::InvalidInput(format!("cocycle built to order {}, asked for {k}", c.order)));
    }
    let dg = c.g.diff();
    let ga = truncate_mat(&c.g.try_mul(&c.a_beta)?, k);
    let ag = truncate_mat(&c.a_alpha.try_mul(&c.g)?, k);
    Ok(truncate_mat(&dg.try_sub(&ga.try_sub(&ag)?)?, k))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub order: u32,
    pub ztrunc: i32,
    /// `z`-exponents checked, lowest and highest.
    pub z_range: (i32, i32),
    /// Nonzero entries of `R` before reduction.
    pub raw_nonzero: usize,
    /// Entries of `R` whose reduction modulo the quadrics is nonzero.
    pub reduced_nonzero: usize,
    /// `(row, column, z-exponent, remainder)` of the first surviving entry.
    pub first_nonzero: Option<(usize, usize, i32, MPoly)>,
}

impl ResidualReport {
    pub fn vanishes(&self) -> bool {
        self.reduced_nonzero == 0
    }
}

/// Reduces every `z`-coefficient of the residual modulo the quadrics.
pub fn congruence_check(c: &DeformationCocycle, k: u32) -> Result<ResidualReport> {
    let r = residual_series(c, k)?;
    let top = r.order();
    let bottom = -(c.order as i32) - 3;
    let (mut raw_nonzero, mut reduced_nonzero, mut first_nonzero) = (0, 0, None);
    for exp in bottom..=top {
        let m = r.coefficient(exp)?;
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let entry = m.get(i, j);
            if entry.is_zero() {
                continue;
            }
            raw_nonzero += 1;
            let rem = normal_form(entry, &c.ideal_basis, &c.monomial_order)?;
            if !rem.is_zero() {
                reduced_nonzero += 1;
                first_nonzero.get_or_insert((i, j, exp, rem));
            }
        }
    }
    Ok(ResidualReport {
        order: k,
        ztrunc: c.ztrunc,
        z_range: (bottom, top),
        raw_nonzero,
        reduced_nonzero,
        first_nonzero,
    })
}
