//! Topological vertex with `q = t^2`.
//!
//! `C_{λμν} = t^{-(κ(λ)+κ(ν))} s_{ν'}(x) Σ_η s_{λ'/η}(x^ν) s_{μ/η}(x^{ν'})`
//! where `x_i = t^{2i-1}` and `x^ν_i = t^{2i-1-2ν_i}`.

use std::collections::HashMap;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::One;

use super::partition::Partition;
use crate::series::LaurentSeries;

pub type TSeries = LaurentSeries<BigInt>;

const INITIAL_MARGIN: i64 = 8;

/// `s_λ(t, t^3, t^5, ...) = t^{|λ| + 2n(λ)} / Π_hooks (1 - t^{2h})`, known below `precision`.
pub fn schur_principal(lambda: &Partition, precision: i64) -> TSeries {
    let lead = lambda.size() as i64 + 2 * lambda.n();
    let mut s = TSeries::monomial(BigInt::one(), lead).truncated(precision);
    let inner = precision - lead;
    for h in lambda.hook_lengths() {
        s = &s * &TSeries::geometric(2 * h as i64, inner.max(0));
    }
    s.truncated(precision)
}

/// `h_0 .. h_kmax` of the shifted variables `x^ν`.
fn complete_homogeneous(nu: &Partition, kmax: usize, precision: i64) -> Vec<TSeries> {
    let mut base = Vec::with_capacity(kmax + 1);
    let mut acc = TSeries::one();
    base.push(acc.clone());
    for k in 1..=kmax {
        acc = &acc.shift(1) * &TSeries::geometric(2 * k as i64, precision);
        base.push(acc.clone());
    }
    // Π_{i ≤ l(ν)} (1 - t^{2i-1} z) / (1 - t^{2i-1-2ν_i} z), truncated in z.
    let mut poly: Vec<TSeries> = vec![TSeries::zero(); kmax + 1];
    poly[0] = TSeries::one();
    for (i, &n) in nu.parts().iter().enumerate() {
        let e1 = 2 * (i as i64 + 1) - 1;
        let e2 = e1 - 2 * n as i64;
        for k in (1..=kmax).rev() {
            poly[k] = &poly[k] - &poly[k - 1].shift(e1);
        }
        for k in 1..=kmax {
            poly[k] = &poly[k] + &poly[k - 1].shift(e2);
        }
    }
    (0..=kmax)
        .map(|k| (0..=k).fold(TSeries::zero(), |s, a| &s + &(&poly[a] * &base[k - a])))
        .collect()
}

fn determinant(m: &[Vec<TSeries>]) -> TSeries {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = TSeries::zero();
    for j in 0..n {
        if m[0][j].is_zero() && m[0][j].is_exact() {
            continue;
        }
        let minor: Vec<Vec<TSeries>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * &determinant(&minor);
        total = if j % 2 == 0 { &total + &term } else { &total - &term };
    }
    total
}

/// `s_{λ/μ}(x^ν)` by the Jacobi-Trudi determinant, computed at working precision `precision`.
pub fn skew_schur(lambda: &Partition, mu: &Partition, nu: &Partition, precision: i64) -> TSeries {
    if !lambda.contains(mu) {
        return TSeries::zero();
    }
    let l = lambda.length();
    if l == 0 {
        return TSeries::one();
    }
    let kmax = lambda.part(0) as usize + l;
    let h = complete_homogeneous(nu, kmax, precision);
    let entry = |k: i64| -> TSeries {
        if k < 0 {
            TSeries::zero()
        } else {
            h[k as usize].clone()
        }
    };
    let m: Vec<Vec<TSeries>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| entry(lambda.part(i) as i64 - mu.part(j) as i64 - i as i64 + j as i64))
                .collect()
        })
        .collect();
    determinant(&m)
}

fn vertex_at(lambda: &Partition, mu: &Partition, nu: &Partition, work: i64) -> TSeries {
    let lt = lambda.transpose();
    let nt = nu.transpose();
    let mut sum = TSeries::zero();
    for eta in lt.subpartitions() {
        if !mu.contains(&eta) {
            continue;
        }
        let a = skew_schur(&lt, &eta, nu, work);
        let b = skew_schur(mu, &eta, &nt, work);
        sum = &sum + &(&a * &b);
    }
    let pre = schur_principal(&nt, work).shift(-(lambda.kappa() + nu.kappa()));
    &pre * &sum
}

/// `C_{λμν}` known below `precision`, evaluated in the given slot order.
pub fn vertex_raw(lambda: &Partition, mu: &Partition, nu: &Partition, precision: i64) -> TSeries {
    let mut margin = INITIAL_MARGIN;
    loop {
        let v = vertex_at(lambda, mu, nu, precision + margin);
        if v.precision().is_none_or(|p| p >= precision) {
            return v.truncated(precision);
        }
        margin *= 2;
    }
}

/// Cyclic rotation with the smallest key.
pub fn canonical_rotation(lambda: &Partition, mu: &Partition, nu: &Partition) -> [Partition; 3] {
    let rotations = [
        [lambda.clone(), mu.clone(), nu.clone()],
        [mu.clone(), nu.clone(), lambda.clone()],
        [nu.clone(), lambda.clone(), mu.clone()],
    ];
    rotations.into_iter().min().expect("three rotations")
}

/// `C_{λμν}` through its canonical cyclic rotation.
pub fn vertex(lambda: &Partition, mu: &Partition, nu: &Partition, precision: i64) -> TSeries {
    let [a, b, c] = canonical_rotation(lambda, mu, nu);
    vertex_raw(&a, &b, &c, precision)
}

type CacheKey = ([Partition; 3], i64);

/// Shared memo of vertex amplitudes keyed by canonical rotation and precision.
#[derive(Debug, Default)]
pub struct VertexCache {
    map: RwLock<HashMap<CacheKey, TSeries>>,
}

impl VertexCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, lambda: &Partition, mu: &Partition, nu: &Partition, precision: i64) -> TSeries {
        let key = (canonical_rotation(lambda, mu, nu), precision);
        if let Some(v) = self.map.read().expect("cache lock").get(&key) {
            return v.clone();
        }
        let [a, b, c] = &key.0;
        let v = vertex_raw(a, b, c, precision);
        self.map.write().expect("cache lock").entry(key).or_insert(v).clone()
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn coeffs(s: &TSeries, lo: i64, hi: i64) -> Vec<i64> {
        (lo..hi).map(|e| s.coeff(e).try_into().unwrap()).collect()
    }

    #[test]
    fn schur_of_one_box() {
        let s = schur_principal(&p(&[1]), 12);
        assert_eq!(coeffs(&s, 0, 12), [0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(s.precision(), Some(12));
        assert!(schur_principal(&Partition::empty(), 5).coeff(0).is_one());
    }

    #[test]
    fn skew_schur_without_shift_matches_hook_formula() {
        for lam in Partition::up_to(4) {
            let a = skew_schur(&lam, &Partition::empty(), &Partition::empty(), 30).truncated(20);
            assert_eq!(a, schur_principal(&lam, 20), "{lam}");
        }
    }

    #[test]
    fn single_leg_vertex_is_a_schur_function() {
        assert!(vertex(&Partition::empty(), &Partition::empty(), &Partition::empty(), 10).coeff(0).is_one());
        for lam in Partition::up_to(3) {
            let v = vertex(&lam, &Partition::empty(), &Partition::empty(), 16);
            assert_eq!(v, schur_principal(&lam, 16), "{lam}");
        }
    }

    #[test]
    fn cyclic_symmetry_of_raw_vertex() {
        for (a, b, c) in [
            (p(&[2]), p(&[1]), Partition::empty()),
            (p(&[2, 1]), p(&[1]), p(&[1])),
            (p(&[1, 1]), p(&[2]), p(&[1])),
        ] {
            let x = vertex_raw(&a, &b, &c, 16);
            let y = vertex_raw(&b, &c, &a, 16);
            let z = vertex_raw(&c, &a, &b, 16);
            assert_eq!(x, y, "{a}{b}{c}");
            assert_eq!(y, z, "{a}{b}{c}");
        }
    }

    #[test]
    fn cache_returns_computed_values() {
        let cache = VertexCache::new();
        let a = cache.get(&p(&[1]), &p(&[1]), &Partition::empty(), 12);
        let b = cache.get(&p(&[1]), &Partition::empty(), &p(&[1]), 12);
        assert_eq!(a, b);
        assert_eq!(cache.len(), 1);
    }
}
