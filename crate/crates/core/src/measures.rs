//! KL divergence, the chain-rule decomposition, and distribution plumbing
//! (marginals/pinnings of arbitrary distributions, pushforward through an
//! operator).
//!
//! Natural log throughout; contraction ratios are base-invariant. The
//! `0/0 = 1` convention means terms with zero mass contribute nothing.

use crate::complex::{Distribution, Face};
use crate::error::{Error, Result};
use crate::walks::MarkovOperator;

/// `D(μ‖ν) = Σ_x μ(x)·ln(μ(x)/ν(x))`.
///
/// Requires the same support universe and `supp(μ) ⊆ supp(ν)`.
pub fn kl_divergence(mu: &Distribution, nu: &Distribution) -> Result<f64> {
    if !mu.same_universe(nu) {
        return Err(Error::DomainMismatch);
    }
    let mut total = 0.0;
    for (i, item) in mu.items().iter().enumerate() {
        let p = mu.mass()[i];
        if p == 0.0 {
            continue;
        }
        let q = nu.mass()[i];
        if q == 0.0 {
            return Err(Error::SupportViolation { state: item.label(), mass: p });
        }
        total += p * (p / q).ln();
    }
    Ok(total.max(0.0))
}

/// Marginal of an arbitrary distribution onto the sides `s`.
///
/// The support universe is the projection of the full universe, so two
/// distributions over the same universe stay comparable after
/// marginalization.
pub fn marginal_of(mu: &Distribution, s: &[usize]) -> Distribution {
    let mut items: Vec<Face> = mu.items().iter().map(|f| f.project(s)).collect();
    items.sort();
    items.dedup();
    let mut mass = vec![0.0; items.len()];
    for (i, f) in mu.items().iter().enumerate() {
        let p = f.project(s);
        let k = items.binary_search(&p).expect("projection present");
        mass[k] += mu.mass()[i];
    }
    Distribution::new(items, mass).expect("marginal masses stay normalized")
}

/// Pinning `μ^{(ω_S)}`: condition on agreement with `pin`, projected to the
/// remaining sides. Fails when the pin carries no mass.
pub fn pinning_of(mu: &Distribution, pin: &Face) -> Result<Distribution> {
    let typ = pin.type_set();
    let mut items: Vec<Face> = mu
        .items()
        .iter()
        .filter(|f| f.extends(pin))
        .map(|f| f.without(&typ))
        .collect();
    items.sort();
    items.dedup();
    if items.is_empty() {
        return Err(Error::FaceNotInComplex(pin.label()));
    }
    let mut mass = vec![0.0; items.len()];
    let mut total = 0.0;
    for (i, f) in mu.items().iter().enumerate() {
        if f.extends(pin) {
            let k = items.binary_search(&f.without(&typ)).expect("present");
            mass[k] += mu.mass()[i];
            total += mu.mass()[i];
        }
    }
    if total <= 0.0 {
        return Err(Error::DegenerateDivergence);
    }
    Distribution::new(items, mass.into_iter().map(|m| m / total).collect())
}

/// Chain-rule split of `D(μ‖ν)` along the sides `s`:
/// returns `(D(μ_S‖ν_S), E_{ω_S∼μ_S} D(μ^{(ω_S)}‖ν^{(ω_S)}))`.
///
/// The two terms sum to `D(μ‖ν)`.
pub fn chain_rule_decomposition(
    mu: &Distribution,
    nu: &Distribution,
    s: &[usize],
) -> Result<(f64, f64)> {
    if !mu.same_universe(nu) {
        return Err(Error::DomainMismatch);
    }
    // surface support violations before conditioning
    for (i, item) in mu.items().iter().enumerate() {
        if mu.mass()[i] > 0.0 && nu.mass()[i] == 0.0 {
            return Err(Error::SupportViolation { state: item.label(), mass: mu.mass()[i] });
        }
    }
    let mu_s = marginal_of(mu, s);
    let nu_s = marginal_of(nu, s);
    let first = kl_divergence(&mu_s, &nu_s)?;
    let mut second = 0.0;
    for (k, pin) in mu_s.items().iter().enumerate() {
        let w = mu_s.mass()[k];
        if w == 0.0 {
            continue;
        }
        let mu_pin = pinning_of(mu, pin)?;
        let nu_pin = pinning_of(nu, pin)?;
        second += w * kl_divergence(&mu_pin, &nu_pin)?;
    }
    Ok((first, second))
}

/// Row-vector action `μ·M` of an operator on a distribution.
pub fn push_forward(mu: &Distribution, op: &MarkovOperator) -> Result<Distribution> {
    if !mu.same_universe(op.domain()) {
        return Err(Error::DomainMismatch);
    }
    let out = op.matrix().tr_mul(mu.mass());
    let items = op.codomain().items().to_vec();
    // rows sum to one, so the image sums to one up to roundoff; renormalize
    // the dust so repeated pushforwards stay valid distributions
    let total = out.sum();
    Distribution::new(items, out.iter().map(|&x| (x / total).max(0.0)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::WeightedComplex;
    use crate::tol;
    use crate::walks;

    fn two_states() -> Vec<Face> {
        vec![Face::single(1, 0), Face::single(1, 1)]
    }

    #[test]
    fn kl_basics() {
        let items = two_states();
        let mu = Distribution::new(items.clone(), vec![1.0, 0.0]).unwrap();
        let nu = Distribution::new(items.clone(), vec![0.5, 0.5]).unwrap();
        assert_eq!(kl_divergence(&mu, &mu).unwrap(), 0.0);
        let d = kl_divergence(&mu, &nu).unwrap();
        assert!((d - std::f64::consts::LN_2).abs() < 1e-15);
        assert!(matches!(
            kl_divergence(&nu, &mu).unwrap_err(),
            Error::SupportViolation { .. }
        ));
    }

    #[test]
    fn chain_rule_on_product_measures() {
        // product μ, ν over {0,1}²: the two terms are the per-coordinate
        // divergences
        let x = WeightedComplex::build(
            vec![vec![0, 1], vec![0, 1]],
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]],
            vec![1.0; 4],
        )
        .unwrap();
        let items = x.facets().to_vec();
        let p = [0.3, 0.7];
        let q = [0.6, 0.4];
        let mu_m: Vec<f64> = items
            .iter()
            .map(|f| p[f.get(1).unwrap() as usize] * q[f.get(2).unwrap() as usize])
            .collect();
        let mu = Distribution::new(items.clone(), mu_m).unwrap();
        let nu = Distribution::new(items, vec![0.25; 4]).unwrap();
        let (a, b) = chain_rule_decomposition(&mu, &nu, &[1]).unwrap();
        let half = Distribution::new(two_states(), vec![0.5, 0.5]).unwrap();
        let dp = kl_divergence(
            &Distribution::new(two_states(), vec![p[0], p[1]]).unwrap(),
            &half,
        )
        .unwrap();
        let dq = kl_divergence(
            &Distribution::new(two_states(), vec![q[0], q[1]]).unwrap(),
            &half,
        )
        .unwrap();
        assert!((a - dp).abs() < tol::ENTROPY);
        assert!((b - dq).abs() < tol::ENTROPY);
        let total = kl_divergence(&mu, &nu).unwrap();
        assert!((a + b - total).abs() < tol::ENTROPY);
    }

    #[test]
    fn push_forward_identity_and_rank_one() {
        let x = WeightedComplex::build(
            vec![vec![0, 1], vec![0, 1]],
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]],
            vec![0.1, 0.2, 0.3, 0.4],
        )
        .unwrap();
        let pi = x.facet_distribution();
        let id = MarkovOperator::identity(&pi);
        let mu =
            Distribution::new(x.facets().to_vec(), vec![0.7, 0.1, 0.1, 0.1]).unwrap();
        let out = push_forward(&mu, &id).unwrap();
        for (a, b) in out.mass().iter().zip(mu.mass().iter()) {
            assert!((a - b).abs() < tol::MASS);
        }
        let ones_pi = MarkovOperator::rank_one(&pi, &pi);
        let out = push_forward(&mu, &ones_pi).unwrap();
        for (a, b) in out.mass().iter().zip(pi.mass().iter()) {
            assert!((a - b).abs() < tol::MASS);
        }
        // point mass through Q_i equals the corresponding row
        let q1 = walks::update_operator(&x, 1).unwrap();
        let delta = Distribution::point_mass_on(x.facets().to_vec(), &x.facets()[0]).unwrap();
        let row = push_forward(&delta, &q1).unwrap();
        for (k, &v) in row.mass().iter().enumerate() {
            assert!((v - q1.matrix()[(0, k)]).abs() < tol::MASS);
        }
    }
}
