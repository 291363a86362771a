//! Rescaled spectral measure `sp_n` versus the semicircle law on `[-1, 1]`.
//!
//! `sp_n` puts mass `mul(k) / n!` at `k / (2 sqrt n)`. The semicircle law has
//! density `(2/pi) sqrt(1 - x^2)` and even moments `Cat(p) / 4^p`.

use std::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{ToPrimitive, Zero};

use crate::error::{check_limit, Error, Result};
use crate::factorial;
use crate::spectrum::{multiplicity_table, SpectrumTable};

/// Largest `p` accepted by [`count_noncrossing_pairings`]; (2p-1)!! pairings are visited.
pub const MAX_PAIRING_P: usize = 10;

/// `Cat(p) = (2p)! / ((p+1)! p!)`.
pub fn catalan(p: usize) -> BigUint {
    factorial(2 * p) / (factorial(p + 1) * factorial(p))
}

/// A perfect matching of `{1..2p}`, each pair stored as `(a, b)` with `a < b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    pairs: Vec<(usize, usize)>,
}

impl Pairing {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        let size = 2 * pairs.len();
        let mut seen = vec![false; size + 1];
        let mut normalized = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let (a, b) = (a.min(b), a.max(b));
            for x in [a, b] {
                if x == 0 || x > size || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidArgument(format!(
                        "element {x} is missing, repeated or out of 1..={size}"
                    )));
                }
            }
            normalized.push((a, b));
        }
        normalized.sort_unstable();
        Ok(Pairing { pairs: normalized })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// No two pairs `{a,b}`, `{c,d}` with `a < c < b < d`.
    pub fn is_noncrossing(&self) -> bool {
        self.pairs.iter().all(|&(a, b)| {
            self.pairs
                .iter()
                .all(|&(c, d)| !(a < c && c < b && b < d))
        })
    }
}

/// Every perfect matching of `{1..2p}`; element 1 is paired first, recursively.
pub fn enumerate_pairings(p: usize) -> Result<Vec<Pairing>> {
    check_limit("pairing enumeration", p, MAX_PAIRING_P)?;
    let mut out = Vec::new();
    let mut free: Vec<usize> = (1..=2 * p).collect();
    let mut current = Vec::with_capacity(p);
    match_all(&mut free, &mut current, &mut out);
    Ok(out)
}

fn match_all(free: &mut Vec<usize>, current: &mut Vec<(usize, usize)>, out: &mut Vec<Pairing>) {
    if free.is_empty() {
        let mut pairs = current.clone();
        pairs.sort_unstable();
        out.push(Pairing { pairs });
        return;
    }
    let first = free.remove(0);
    for i in 0..free.len() {
        let partner = free.remove(i);
        current.push((first, partner));
        match_all(free, current, out);
        current.pop();
        free.insert(i, partner);
    }
    free.insert(0, first);
}

/// Counts non-crossing matchings of `{1..2p}` by enumerating all matchings.
pub fn count_noncrossing_pairings(p: usize) -> Result<BigUint> {
    let pairings = enumerate_pairings(p)?;
    Ok(BigUint::from(
        pairings.iter().filter(|m| m.is_noncrossing()).count(),
    ))
}

/// `k`-th moment of the semicircle law on `[-1, 1]`.
pub fn semicircle_moment(k: usize) -> BigRational {
    if k % 2 == 1 {
        return BigRational::zero();
    }
    let p = k / 2;
    Ratio::new(
        BigInt::from(catalan(p)),
        BigInt::from(4u32).pow(p as u32),
    )
}

/// Semicircle distribution function on the real line.
pub fn semicircle_cdf(x: f64) -> f64 {
    if x <= -1.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        0.5 + (x * (1.0 - x * x).sqrt() + x.asin()) / PI
    }
}

/// Semicircle mass of `[a, b]`.
pub fn semicircle_mass(a: f64, b: f64) -> Result<f64> {
    check_interval(a, b)?;
    Ok(semicircle_cdf(b) - semicircle_cdf(a))
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if a.is_nan() || b.is_nan() || a > b {
        return Err(Error::InvalidArgument(format!("empty interval [{a}, {b}]")));
    }
    Ok(())
}

/// Position of eigenvalue `k` under the `k / (2 sqrt n)` rescaling.
pub fn atom_position(n: usize, k: i64) -> f64 {
    k as f64 / (2.0 * (n as f64).sqrt())
}

/// `sp_n([a, b])`, summed exactly and converted once.
pub fn empirical_mass(table: &SpectrumTable, a: f64, b: f64) -> Result<f64> {
    check_interval(a, b)?;
    let n = table.n();
    let hit: BigUint = table
        .nonzero()
        .filter(|&(k, _)| {
            let x = atom_position(n, k);
            a <= x && x <= b
        })
        .map(|(_, m)| m)
        .sum();
    Ok(ratio_to_f64(&hit, &factorial(n)))
}

fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    Ratio::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
        .to_f64()
        .expect("finite ratio")
}

/// `sup_x |F_n(x) - G(x)|` between the distribution functions of `sp_n` and
/// the semicircle law. Between atoms `F_n` is constant and `G` monotone, so
/// the supremum is attained at an atom from one side or the other.
pub fn kolmogorov_distance(table: &SpectrumTable) -> f64 {
    let n = table.n();
    let total = factorial(n);
    let mut below = BigUint::zero();
    let mut worst = 0.0f64;
    for (k, m) in table.nonzero() {
        let g = semicircle_cdf(atom_position(n, k));
        let left = ratio_to_f64(&below, &total);
        below += m;
        let right = ratio_to_f64(&below, &total);
        worst = worst.max((left - g).abs()).max((right - g).abs());
    }
    worst
}

/// `n^{-p} W_{2p} / Cat(p)` as an exact rational, where
/// `W_{2p} = power_sum(2p) / n!`.
pub fn moment_ratio_exact(table: &SpectrumTable, p: usize) -> BigRational {
    let n = table.n();
    let den = BigInt::from(factorial(n))
        * BigInt::from(n).pow(p as u32)
        * BigInt::from(catalan(p));
    Ratio::new(table.power_sum(2 * p as u32), den)
}

/// Moment ratios and distribution distance for one `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SemicircleReport {
    pub n: usize,
    /// `(p, ratio)` for `p = 1..=p_max`.
    pub moment_ratios: Vec<(usize, f64)>,
    pub kolmogorov_distance: f64,
}

impl SemicircleReport {
    pub fn from_table(table: &SpectrumTable, p_max: usize) -> Self {
        let moment_ratios = (1..=p_max)
            .map(|p| {
                let r = moment_ratio_exact(table, p).to_f64().expect("finite ratio");
                (p, r)
            })
            .collect();
        SemicircleReport {
            n: table.n(),
            moment_ratios,
            kolmogorov_distance: kolmogorov_distance(table),
        }
    }

    pub fn ratio(&self, p: usize) -> Option<f64> {
        self.moment_ratios
            .iter()
            .find(|&&(q, _)| q == p)
            .map(|&(_, r)| r)
    }
}

/// One report per `n`, in the given order.
pub fn convergence_report(n_values: &[usize], p_max: usize) -> Result<Vec<SemicircleReport>> {
    n_values
        .iter()
        .map(|&n| multiplicity_table(n).map(|t| SemicircleReport::from_table(&t, p_max)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    /// Adaptive Simpson quadrature of the semicircle density.
    fn quad_density(a: f64, b: f64) -> f64 {
        fn f(x: f64) -> f64 {
            if x.abs() >= 1.0 {
                0.0
            } else {
                2.0 / PI * (1.0 - x * x).sqrt()
            }
        }
        fn simpson(a: f64, b: f64) -> f64 {
            (b - a) / 6.0 * (f(a) + 4.0 * f((a + b) / 2.0) + f(b))
        }
        fn rec(a: f64, b: f64, whole: f64, eps: f64, depth: u32) -> f64 {
            let m = (a + b) / 2.0;
            let (l, r) = (simpson(a, m), simpson(m, b));
            if depth == 0 || (l + r - whole).abs() <= 15.0 * eps {
                return l + r + (l + r - whole) / 15.0;
            }
            rec(a, m, l, eps / 2.0, depth - 1) + rec(m, b, r, eps / 2.0, depth - 1)
        }
        rec(a, b, simpson(a, b), 1e-13, 50)
    }

    /// Catalan numbers by the convolution recurrence.
    fn catalan_recurrence(max: usize) -> Vec<BigUint> {
        let mut c = vec![BigUint::from(1u32)];
        for p in 0..max {
            let next = (0..=p).map(|i| &c[i] * &c[p - i]).sum();
            c.push(next);
        }
        c
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), BigUint::from(1u32));
        assert_eq!(catalan(3), BigUint::from(5u32));
        assert_eq!(catalan(10), BigUint::from(16796u32));
        let rec = catalan_recurrence(30);
        for (p, c) in rec.iter().enumerate() {
            assert_eq!(&catalan(p), c);
        }
    }

    #[test]
    fn pairing_counts() {
        assert_eq!(count_noncrossing_pairings(0).unwrap(), BigUint::from(1u32));
        assert_eq!(count_noncrossing_pairings(1).unwrap(), BigUint::from(1u32));
        assert_eq!(count_noncrossing_pairings(2).unwrap(), BigUint::from(2u32));
        assert_eq!(count_noncrossing_pairings(5).unwrap(), BigUint::from(42u32));
        for p in 0..=8 {
            assert_eq!(count_noncrossing_pairings(p).unwrap(), catalan(p));
        }
        // (2p-1)!! matchings in total
        assert_eq!(enumerate_pairings(5).unwrap().len(), 945);
        assert!(matches!(
            count_noncrossing_pairings(MAX_PAIRING_P + 1),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn crossing_predicate() {
        let nested = Pairing::new(vec![(1, 4), (2, 3)]).unwrap();
        let adjacent = Pairing::new(vec![(1, 2), (3, 4)]).unwrap();
        let crossing = Pairing::new(vec![(1, 3), (2, 4)]).unwrap();
        assert!(nested.is_noncrossing());
        assert!(adjacent.is_noncrossing());
        assert!(!crossing.is_noncrossing());
        assert!(Pairing::new(vec![(4, 1), (3, 2)]).unwrap().is_noncrossing());
        assert!(Pairing::new(vec![(1, 2), (2, 3)]).is_err());
        assert!(Pairing::new(vec![(1, 5)]).is_err());
    }

    #[test]
    fn moments() {
        assert!(semicircle_moment(1).is_zero());
        assert_eq!(semicircle_moment(2), Ratio::new(1.into(), 4.into()));
        assert_eq!(semicircle_moment(4), Ratio::new(1.into(), 8.into()));
        assert_eq!(semicircle_moment(0), Ratio::from_integer(1.into()));
        // against quadrature of x^k times the density
        for k in 0..=8usize {
            let steps = 200_000;
            let h = 2.0 / steps as f64;
            let integral: f64 = (0..steps)
                .map(|i| {
                    let x = -1.0 + (i as f64 + 0.5) * h;
                    x.powi(k as i32) * 2.0 / PI * (1.0 - x * x).sqrt() * h
                })
                .sum();
            assert_close(semicircle_moment(k).to_f64().unwrap(), integral, 1e-6);
        }
    }

    #[test]
    fn masses() {
        assert_close(semicircle_mass(-1.0, 1.0).unwrap(), 1.0, 1e-12);
        assert_close(semicircle_mass(0.0, 1.0).unwrap(), 0.5, 1e-12);
        assert_close(semicircle_mass(-1.0, 0.0).unwrap(), 0.5, 1e-12);
        assert_close(semicircle_mass(-0.5, 0.5).unwrap(), 0.6089977810, 1e-10);
        assert_close(semicircle_mass(-0.5, 0.5).unwrap(), quad_density(-0.5, 0.5), 1e-10);
        assert_close(semicircle_mass(-3.0, 5.0).unwrap(), 1.0, 1e-12);
        assert_eq!(semicircle_mass(1.5, 2.0).unwrap(), 0.0);
        assert!(semicircle_mass(0.5, 0.1).is_err());
        for (a, b) in [(-0.9, -0.2), (0.1, 0.99), (-1.0, 0.3)] {
            assert_close(semicircle_mass(a, b).unwrap(), quad_density(a, b), 1e-10);
        }
    }

    #[test]
    fn cdf_monotone() {
        let mut prev = 0.0;
        for i in 0..=2000 {
            let x = -1.2 + 2.4 * i as f64 / 2000.0;
            let v = semicircle_mass(-1.0, x.max(-1.0)).unwrap();
            assert!(v >= prev - 1e-15);
            prev = v;
        }
    }

    #[test]
    fn empirical_examples() {
        let t = multiplicity_table(4).unwrap();
        assert_eq!(empirical_mass(&t, f64::NEG_INFINITY, f64::INFINITY).unwrap(), 1.0);
        assert_close(empirical_mass(&t, 0.74, 0.76).unwrap(), 1.0 / 24.0, 1e-15);
        assert_close(empirical_mass(&t, -10.0, 0.0).unwrap(), 14.0 / 24.0, 1e-15);
        assert!(empirical_mass(&t, 1.0, 0.0).is_err());
    }

    #[test]
    fn first_ratio_is_exact() {
        for n in [2usize, 5, 9, 16] {
            let t = multiplicity_table(n).unwrap();
            assert_eq!(
                moment_ratio_exact(&t, 1),
                Ratio::new(BigInt::from(n - 1), BigInt::from(n))
            );
        }
        let t = multiplicity_table(36).unwrap();
        assert_eq!(
            moment_ratio_exact(&t, 2),
            Ratio::new(BigInt::from(2415), BigInt::from(2592))
        );
    }

    #[test]
    fn kolmogorov_two_point() {
        // n = 2: atoms at +-1/(2 sqrt 2), mass 1/2 each
        let t = multiplicity_table(2).unwrap();
        let x = atom_position(2, 1);
        let g = semicircle_cdf(x);
        let expected = (0.5 - semicircle_cdf(-x)).max(1.0 - g).max(g - 0.5);
        assert_close(kolmogorov_distance(&t), expected, 1e-15);
        let d = kolmogorov_distance(&multiplicity_table(10).unwrap());
        assert!((0.0..=1.0).contains(&d));
    }
}
