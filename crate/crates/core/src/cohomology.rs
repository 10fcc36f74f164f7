//! Cohomology dimension bookkeeping on curves: genus-one Riemann–Roch for
//! line bundles, long-exact-sequence chases, hypercohomology of the two-term
//! complex `End(E) → End(E) ⊗ Ω¹(D)`, and ranks of `B ↦ [A, B]`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Mat2, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohDims {
    pub h0: u64,
    pub h1: u64,
}

impl CohDims {
    pub fn euler_characteristic(&self) -> i64 {
        self.h0 as i64 - self.h1 as i64
    }
}

/// How a sheaf on a genus-one curve is assembled from line bundles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SheafDescriptor {
    Leaf {
        degree: i64,
        /// Only consulted in degree 0: is the bundle isomorphic to `𝒪`?
        #[serde(default)]
        trivial: bool,
    },
    /// `0 → left → E → right → 0` with connecting map `H⁰(right) → H¹(left)`
    /// of the given rank.
    Extension { left: Box<SheafDescriptor>, right: Box<SheafDescriptor>, boundary_rank: u64 },
    Sum(Vec<SheafDescriptor>),
}

impl SheafDescriptor {
    pub fn leaf(degree: i64, trivial: bool) -> Self {
        SheafDescriptor::Leaf { degree, trivial }
    }

    pub fn extension(left: SheafDescriptor, right: SheafDescriptor, boundary_rank: u64) -> Self {
        SheafDescriptor::Extension { left: Box::new(left), right: Box::new(right), boundary_rank }
    }

    /// Total degree, additive over sums and extensions.
    pub fn degree(&self) -> i64 {
        match self {
            SheafDescriptor::Leaf { degree, .. } => *degree,
            SheafDescriptor::Extension { left, right, .. } => left.degree() + right.degree(),
            SheafDescriptor::Sum(parts) => parts.iter().map(|p| p.degree()).sum(),
        }
    }
}

/// `(h⁰, h¹)` of a line bundle on a genus-one curve.
pub fn rr_line(degree: i64, trivial: bool) -> CohDims {
    match degree {
        d if d > 0 => CohDims { h0: d as u64, h1: 0 },
        d if d < 0 => CohDims { h0: 0, h1: (-d) as u64 },
        _ if trivial => CohDims { h0: 1, h1: 1 },
        _ => CohDims { h0: 0, h1: 0 },
    }
}

pub fn chase(descriptor: &SheafDescriptor) -> Result<CohDims> {
    match descriptor {
        SheafDescriptor::Leaf { degree, trivial } => Ok(rr_line(*degree, *trivial)),
        SheafDescriptor::Sum(parts) => parts.iter().try_fold(CohDims { h0: 0, h1: 0 }, |acc, p| {
            let c = chase(p)?;
            Ok(CohDims { h0: acc.h0 + c.h0, h1: acc.h1 + c.h1 })
        }),
        SheafDescriptor::Extension { left, right, boundary_rank } => {
            let (l, r) = (chase(left)?, chase(right)?);
            let bound = r.h0.min(l.h1);
            if *boundary_rank > bound {
                return Err(Error::Inconsistent(format!(
                    "boundary rank {boundary_rank} exceeds min(h0(right), h1(left)) = {bound}"
                )));
            }
            Ok(CohDims { h0: l.h0 + r.h0 - boundary_rank, h1: l.h1 - boundary_rank + r.h1 })
        }
    }
}

/// Dimensions of `H^q(𝒞^p)` and ranks of the `d₁` maps between them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperCohInput {
    pub h00: u64,
    pub h01: u64,
    pub h10: u64,
    pub h11: u64,
    pub r0: u64,
    pub r1: u64,
}

impl HyperCohInput {
    /// Removes the trace summand `𝒪 → Ω¹(D)`. `d₁ = [A, ·]` vanishes on it, so
    /// the ranks are unchanged and each `h` drops by that summand's contribution.
    pub fn traceless(&self, trace_part: HyperCohInput) -> Result<HyperCohInput> {
        let sub = |a: u64, b: u64, what: &str| {
            a.checked_sub(b)
                .ok_or_else(|| Error::Inconsistent(format!("trace part exceeds {what}")))
        };
        Ok(HyperCohInput {
            h00: sub(self.h00, trace_part.h00, "h00")?,
            h01: sub(self.h01, trace_part.h01, "h01")?,
            h10: sub(self.h10, trace_part.h10, "h10")?,
            h11: sub(self.h11, trace_part.h11, "h11")?,
            r0: self.r0,
            r1: self.r1,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperCohDims {
    pub hh0: u64,
    pub hh1: u64,
    pub hh2: u64,
}

impl HyperCohDims {
    pub fn euler_characteristic(&self) -> i64 {
        self.hh0 as i64 - self.hh1 as i64 + self.hh2 as i64
    }
}

pub fn hypercoh_dims(input: &HyperCohInput) -> Result<HyperCohDims> {
    let HyperCohInput { h00, h01, h10, h11, r0, r1 } = *input;
    if r0 > h00.min(h10) || r1 > h01.min(h11) {
        return Err(Error::Inconsistent(format!(
            "ranks ({r0}, {r1}) exceed the dimensions they map between"
        )));
    }
    Ok(HyperCohDims { hh0: h00 - r0, hh1: (h10 - r0) + (h01 - r1), hh2: h11 - r1 })
}

fn flatten(m: &Mat2<Rational>) -> Vec<Rational> {
    m.entries().cloned().collect()
}

/// Rank of a list of vectors by fraction-exact Gaussian elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut rows: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank][col].clone();
        for i in 0..rows.len() {
            if i != rank && !rows[i][col].is_zero() {
                let factor = &rows[i][col] / &p;
                for j in col..ncols {
                    let delta = &factor * &rows[rank][j];
                    rows[i][j] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// All of `M₂`.
pub fn full_matrix_basis() -> Vec<Mat2<Rational>> {
    vec![
        Mat2::from_ints(1, 0, 0, 0),
        Mat2::from_ints(0, 1, 0, 0),
        Mat2::from_ints(0, 0, 1, 0),
        Mat2::from_ints(0, 0, 0, 1),
    ]
}

/// Upper-triangular matrices.
pub fn upper_triangular_basis() -> Vec<Mat2<Rational>> {
    vec![Mat2::from_ints(1, 0, 0, 0), Mat2::from_ints(0, 1, 0, 0), Mat2::from_ints(0, 0, 0, 1)]
}

/// Rank of `B ↦ AB − BA` on the span of `domain`.
pub fn d1_rank(a: &Mat2<Rational>, domain: &[Mat2<Rational>]) -> Result<usize> {
    let basis: Vec<Vec<Rational>> = domain.iter().map(flatten).collect();
    if rank(&basis) != basis.len() {
        return Err(Error::InvalidInput("domain basis is linearly dependent".into()));
    }
    let images: Vec<Vec<Rational>> = domain.iter().map(|b| flatten(&a.commutator(b))).collect();
    Ok(rank(&images))
}

/// Fiber dimension of the affine bundle of connections over the moduli of
/// stable bundles of rank `r` on a genus-`g` curve, poles bounded by `D`.
pub fn fiber_dimension(r: u64, g: u64, deg_d: u64) -> Result<u64> {
    if g == 0 {
        return Err(Error::OutOfHypotheses("genus 0 is outside the structure theorem".into()));
    }
    if r == 0 {
        return Err(Error::InvalidInput("rank must be positive".into()));
    }
    Ok(if deg_d == 0 { r * r * (g - 1) + 1 } else { r * r * (g - 1 + deg_d) })
}

/// Existence of a connection with poles bounded by `D`: automatic for a
/// stable bundle when `D > 0`, and for `D = 0` exactly the degree-zero
/// semistable bundles.
pub fn connection_exists(_r: u64, d: i64, deg_d: u64, semistable: bool) -> bool {
    if deg_d > 0 {
        true
    } else {
        d == 0 && semistable
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn hc(h00: u64, h01: u64, h10: u64, h11: u64, r0: u64, r1: u64) -> HyperCohInput {
        HyperCohInput { h00, h01, h10, h11, r0, r1 }
    }

    fn dims(hh0: u64, hh1: u64, hh2: u64) -> HyperCohDims {
        HyperCohDims { hh0, hh1, hh2 }
    }

    #[test]
    fn line_bundles() {
        assert_eq!(rr_line(0, true), CohDims { h0: 1, h1: 1 });
        assert_eq!(rr_line(0, false), CohDims { h0: 0, h1: 0 });
        assert_eq!(rr_line(1, false), CohDims { h0: 1, h1: 0 });
        assert_eq!(rr_line(-1, false), CohDims { h0: 0, h1: 1 });
        for d in -6..6 {
            assert_eq!(rr_line(d, false).euler_characteristic(), d);
        }
    }

    #[test]
    fn extension_chases() {
        let stable = SheafDescriptor::extension(SheafDescriptor::leaf(-1, false), SheafDescriptor::leaf(0, true), 1);
        assert_eq!(chase(&stable).unwrap(), CohDims { h0: 0, h1: 1 });
        let twist = |a, b| SheafDescriptor::extension(SheafDescriptor::leaf(a, false), SheafDescriptor::leaf(b, false), 0);
        assert_eq!(chase(&twist(1, 2)).unwrap(), CohDims { h0: 3, h1: 0 });
        let end_d = SheafDescriptor::extension(twist(1, 2), twist(2, 3), 0);
        assert_eq!(chase(&end_d).unwrap(), CohDims { h0: 8, h1: 0 });
        let bad = SheafDescriptor::extension(SheafDescriptor::leaf(-1, false), SheafDescriptor::leaf(1, false), 2);
        assert!(chase(&bad).is_err());
        let sum = SheafDescriptor::Sum(vec![SheafDescriptor::leaf(-1, false), SheafDescriptor::leaf(0, true)]);
        assert_eq!(chase(&sum).unwrap(), CohDims { h0: 1, h1: 2 });
    }

    #[test]
    fn hypercohomology_examples() {
        assert_eq!(hypercoh_dims(&hc(4, 4, 4, 4, 0, 0)).unwrap(), dims(4, 8, 4));
        assert_eq!(hypercoh_dims(&hc(4, 4, 4, 4, 2, 2)).unwrap(), dims(2, 4, 2));
        assert_eq!(hypercoh_dims(&hc(1, 1, 8, 0, 0, 0)).unwrap(), dims(1, 9, 0));
        assert_eq!(hypercoh_dims(&hc(3, 3, 8, 0, 2, 0)).unwrap(), dims(1, 9, 0));
        assert_eq!(hypercoh_dims(&hc(3, 3, 8, 0, 1, 0)).unwrap(), dims(2, 10, 0));
        assert!(hypercoh_dims(&hc(1, 1, 8, 0, 2, 0)).is_err());
        let traceless = hc(4, 4, 4, 4, 2, 2).traceless(hc(1, 1, 1, 1, 0, 0)).unwrap();
        assert_eq!(hypercoh_dims(&traceless).unwrap(), dims(1, 2, 1));
    }

    #[test]
    fn commutator_ranks() {
        let full = full_matrix_basis();
        assert_eq!(d1_rank(&Mat2::from_ints(1, 0, 0, 2), &full).unwrap(), 2);
        assert_eq!(d1_rank(&Mat2::from_ints(0, 0, 0, 0), &full).unwrap(), 0);
        assert_eq!(d1_rank(&Mat2::from_ints(0, 0, 0, 0), &upper_triangular_basis()).unwrap(), 0);
        assert_eq!(d1_rank(&Mat2::from_ints(0, 1, 0, 0), &upper_triangular_basis()).unwrap(), 1);
        let dependent = vec![Mat2::from_ints(1, 0, 0, 0), Mat2::from_ints(2, 0, 0, 0)];
        assert!(d1_rank(&Mat2::from_ints(0, 1, 0, 0), &dependent).is_err());
    }

    #[test]
    fn fibers_and_existence() {
        assert_eq!(fiber_dimension(2, 1, 2).unwrap(), 8);
        assert_eq!(fiber_dimension(1, 1, 0).unwrap(), 1);
        assert_eq!(fiber_dimension(2, 2, 0).unwrap(), 5);
        assert!(matches!(fiber_dimension(2, 0, 1), Err(Error::OutOfHypotheses(_))));
        assert!(connection_exists(2, 0, 0, true));
        assert!(!connection_exists(2, 3, 0, true));
        assert!(connection_exists(2, -1, 2, true));
        assert!(!connection_exists(2, 0, 0, false));
    }

    fn random_descriptor(rng: &mut ChaCha8Rng, depth: u32) -> SheafDescriptor {
        match if depth == 0 { 0 } else { rng.gen_range(0..3) } {
            0 => SheafDescriptor::leaf(rng.gen_range(-4..=4), rng.gen_bool(0.5)),
            1 => {
                let left = random_descriptor(rng, depth - 1);
                let right = random_descriptor(rng, depth - 1);
                let bound = chase(&right).unwrap().h0.min(chase(&left).unwrap().h1);
                let b = rng.gen_range(0..=bound);
                SheafDescriptor::extension(left, right, b)
            }
            _ => {
                let n = rng.gen_range(1..=3);
                SheafDescriptor::Sum((0..n).map(|_| random_descriptor(rng, depth - 1)).collect())
            }
        }
    }

    #[test]
    fn euler_characteristic_is_additive() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let t = random_descriptor(&mut rng, 3);
            assert_eq!(chase(&t).unwrap().euler_characteristic(), t.degree());
            if let SheafDescriptor::Extension { left, right, .. } = &t {
                let chi = chase(left).unwrap().euler_characteristic() + chase(right).unwrap().euler_characteristic();
                assert_eq!(chase(&t).unwrap().euler_characteristic(), chi);
            }
        }
    }

    #[test]
    fn hypercohomology_euler_characteristic() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..500 {
            let (h00, h01, h10, h11) =
                (rng.gen_range(0..9), rng.gen_range(0..9), rng.gen_range(0..9), rng.gen_range(0..9));
            let input = hc(h00, h01, h10, h11, rng.gen_range(0..=h00.min(h10)), rng.gen_range(0..=h01.min(h11)));
            let d = hypercoh_dims(&input).unwrap();
            assert_eq!(d.euler_characteristic(), (h00 as i64 - h01 as i64) - (h10 as i64 - h11 as i64));
        }
    }

    fn random_matrix(rng: &mut ChaCha8Rng) -> Mat2<Rational> {
        let mut e = || rat(rng.gen_range(-3..=3), rng.gen_range(1..=3));
        Mat2::new(e(), e(), e(), e())
    }

    #[test]
    fn commutator_rank_vanishes_only_on_scalars_and_is_conjugation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let full = full_matrix_basis();
        for i in 0..300 {
            let a = if i % 5 == 0 {
                let c = rat(rng.gen_range(-3..=3), 2);
                Mat2::new(c.clone(), int(0), int(0), c)
            } else {
                random_matrix(&mut rng)
            };
            let scalar = a.get(0, 1).is_zero() && a.get(1, 0).is_zero() && a.get(0, 0) == a.get(1, 1);
            let r = d1_rank(&a, &full).unwrap();
            assert_eq!(r == 0, scalar);
            let g = random_matrix(&mut rng);
            if let Some(gi) = g.inverse() {
                assert_eq!(d1_rank(&g.mul(&a).mul(&gi), &full).unwrap(), r);
            }
        }
    }
}
