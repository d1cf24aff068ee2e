//! Spectral and geometric invariants: the subspace-angle bound, the
//! intersection characterization, the projection identity, the products-of-
//! projections inequality, the variational σ₂ characterization, the link
//! eigenvalue structure, and the influence-matrix identity.

mod common;

use common::{connected_complex, small_complex};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use scanlab_core::report::permutations;
use scanlab_core::spectra::{
    self, subspace_cosine, subspace_intersection, subspace_u, WeightedSubspace,
};
use scanlab_core::walks;
use scanlab_core::{Face, WeightedComplex};

fn pi_norm(v: &DVector<f64>, mass: &DVector<f64>) -> f64 {
    v.iter().zip(mass.iter()).map(|(x, m)| m * x * x).sum::<f64>().sqrt()
}

fn random_vector(rng: &mut impl Rng, d: usize) -> DVector<f64> {
    DVector::from_iterator(d, (0..d).map(|_| rng.gen::<f64>() * 2.0 - 1.0))
}

/// Subsets of side ids (nonempty, proper or full).
fn subsets(ids: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << ids.len()) {
        out.push(
            ids.iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, &s)| s)
                .collect(),
        );
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn angle_bound_everywhere(x in connected_complex()) {
        // cos(U_I, U_J) ≤ ε^{I→J}
        let ids = x.side_ids();
        let subs = subsets(&ids);
        for i_set in &subs {
            for j_set in &subs {
                if i_set.iter().any(|s| j_set.contains(s)) || i_set >= j_set {
                    continue;
                }
                let ui = subspace_u(&x, i_set);
                let uj = subspace_u(&x, j_set);
                let cos = subspace_cosine(&ui, &uj).unwrap();
                let eps = spectra::eps_param(&x, i_set, j_set).unwrap();
                prop_assert!(cos <= eps + 1e-8, "cos {} > eps {}", cos, eps);
            }
        }
    }

    #[test]
    fn intersections_match_type_subspaces(x in connected_complex(), seed in any::<u64>()) {
        // ∩_{t∈T} U_t = U_T on link-connected instances
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let ids = x.side_ids();
        let t: Vec<usize> = ids.iter().copied().filter(|_| rng.gen()).collect();
        prop_assume!(t.len() >= 2);
        let mut cap = subspace_u(&x, &t[..1]);
        for s in &t[1..] {
            cap = subspace_intersection(&cap, &subspace_u(&x, &[*s])).unwrap();
        }
        let direct = subspace_u(&x, &t);
        prop_assert_eq!(cap.dim(), direct.dim());
        prop_assert!(cap.distance(&direct) < 1e-8);
        // dimension equals the number of faces of the complementary type
        let comp: Vec<usize> = ids.iter().copied().filter(|s| !t.contains(s)).collect();
        prop_assert_eq!(direct.dim(), x.faces_of_type(&comp).len());
    }

    #[test]
    fn updates_project_onto_coordinate_subspaces(x in small_complex()) {
        // ‖Q_i − proj(U_{{i}})‖_max ≤ 1e-10
        for side in x.side_ids() {
            let q = walks::update_operator(&x, side).unwrap();
            let u = subspace_u(&x, &[side]);
            let diff = (q.matrix() - u.projector()).amax();
            prop_assert!(diff < 1e-10, "side {}: {}", side, diff);
        }
    }

    #[test]
    fn products_of_projections_inequality(x in small_complex(), seed in any::<u64>()) {
        // ‖Q_1···Q_n f − Q_⋆f‖²_π ≤ (1 − Π sin²(U_j, V_{j−1}))·‖f − Q_⋆f‖²_π
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let ids = x.side_ids();
        let pi = x.facet_distribution();
        let spaces: Vec<WeightedSubspace> =
            ids.iter().map(|&s| subspace_u(&x, &[s])).collect();
        let mut caps: Vec<WeightedSubspace> = vec![spaces[0].clone()];
        for s in &spaces[1..] {
            caps.push(subspace_intersection(caps.last().unwrap(), s).unwrap());
        }
        let mut damping = 1.0;
        for j in 1..spaces.len() {
            let cos = subspace_cosine(&spaces[j], &caps[j - 1]).unwrap();
            damping *= 1.0 - cos * cos;
        }
        let sweep = walks::sequential_sweep(&x, &ids).unwrap();
        let q_star = caps.last().unwrap().projector();
        for _ in 0..20 {
            let f = random_vector(&mut rng, x.facet_count());
            let swept = sweep.matrix() * &f;
            let fixed = &q_star * &f;
            let lhs = pi_norm(&(&swept - &fixed), pi.mass()).powi(2);
            let rhs = (1.0 - damping) * pi_norm(&(&f - &fixed), pi.mass()).powi(2);
            prop_assert!(lhs <= rhs + 1e-8, "{} > {}", lhs, rhs);
        }
    }

    #[test]
    fn sigma2_dominates_rayleigh_quotients(x in small_complex(), seed in any::<u64>()) {
        // ‖(B − 𝟙π_V)f‖_{π_U} ≤ σ₂(B)·‖f − 𝟙π_V f‖_{π_V}
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let ids = x.side_ids();
        let ops = vec![
            walks::sequential_sweep(&x, &ids).unwrap(),
            walks::colored_walk(&x, &Face::empty(), &ids[..1], &ids[1..2]).unwrap(),
        ];
        for op in ops {
            let s2 = spectra::sigma2(&op).unwrap();
            let dv = op.codomain().mass();
            let du = op.domain().mass();
            for _ in 0..20 {
                let f = random_vector(&mut rng, op.codomain().len());
                let mean: f64 = f.iter().zip(dv.iter()).map(|(x, m)| x * m).sum();
                let centered = f.map(|v| v - mean);
                let image = op.matrix() * &f;
                let image_centered = image.map(|v| v - mean);
                let lhs = pi_norm(&image_centered, du);
                let rhs = s2 * pi_norm(&centered, dv);
                prop_assert!(lhs <= rhs + 1e-9, "{} > {}", lhs, rhs);
            }
        }
    }

    #[test]
    fn link_walk_trivial_spectrum_structure(x in small_complex()) {
        // φ_i are eigenvectors with eigenvalue −1/(n−|α|−1); every other
        // negative eigenvalue is strictly smaller in magnitude
        for rank in 0..=(x.n().saturating_sub(2)) {
            for alpha in x.faces_of_rank(rank) {
                let m = walks::link_walk(&x, &alpha).unwrap();
                let gap = x.n() - alpha.rank();
                let lambda_triv = -1.0 / (gap as f64 - 1.0);
                let free: Vec<usize> = x
                    .side_ids()
                    .into_iter()
                    .filter(|s| !alpha.type_set().contains(s))
                    .collect();
                for side in free {
                    let phi = walks::phi_vector(m.domain().items(), side, gap);
                    let out = m.matrix() * &phi;
                    for (a, b) in out.iter().zip(phi.iter()) {
                        prop_assert!((a - lambda_triv * b).abs() < 1e-10);
                    }
                }
                let ev = spectra::weighted_eigenvalues(m.matrix(), m.domain().mass());
                for &lambda in &ev {
                    if lambda < -1e-9 && (lambda - lambda_triv).abs() > 1e-9 {
                        prop_assert!(
                            lambda.abs() < lambda_triv.abs() + 1e-9,
                            "stray negative eigenvalue {} beyond {}",
                            lambda,
                            lambda_triv
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn influence_identity(x in small_complex()) {
        // (n−|α|−1)·(I−T_α)M_α(I−T_α) = Inf_α
        for rank in 0..=(x.n().saturating_sub(2)) {
            for alpha in x.faces_of_rank(rank) {
                let m = walks::link_walk(&x, &alpha).unwrap();
                let inf = walks::influence_matrix(&x, &alpha).unwrap();
                let states = m.domain().items();
                let d = states.len();
                let gap = (x.n() - alpha.rank()) as f64;
                // T_α projects onto the span of the per-side indicators
                let mut t = DMatrix::zeros(d, d);
                let free: Vec<usize> = x
                    .side_ids()
                    .into_iter()
                    .filter(|s| !alpha.type_set().contains(s))
                    .collect();
                for side in free {
                    let idx: Vec<usize> = (0..d)
                        .filter(|&k| states[k].get(side).is_some())
                        .collect();
                    let mass: f64 = idx.iter().map(|&k| m.domain().mass()[k]).sum();
                    for &a in &idx {
                        for &b in &idx {
                            t[(a, b)] += m.domain().mass()[b] / mass;
                        }
                    }
                }
                let id = DMatrix::<f64>::identity(d, d);
                let centered = (&id - &t) * m.matrix() * (&id - &t);
                let lhs = centered * (gap - 1.0);
                let residual = (&lhs - &inf.matrix).amax();
                prop_assert!(residual < 1e-10, "CGSV residual {}", residual);
                // λ_max(Inf)/(n−|α|−1) = λ₂(M_α), floored at zero: the
                // compression (I−T)M(I−T) has kernel ⊇ T_α, so its top
                // eigenvalue cannot go negative even when λ₂(M) does
                let lm = spectra::influence_lambda_max(&inf);
                let l2 = spectra::lambda2(&m);
                prop_assert!((lm / (gap - 1.0) - l2.max(0.0)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn eps_param_is_swap_symmetric(x in small_complex(), seed in any::<u64>()) {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let ids = x.side_ids();
        prop_assume!(ids.len() >= 2);
        use rand::seq::SliceRandom;
        let mut shuffled = ids.clone();
        shuffled.shuffle(&mut rng);
        let i_set = vec![shuffled[0]];
        let j_set = vec![shuffled[1]];
        let a = spectra::eps_param(&x, &i_set, &j_set).unwrap();
        let b = spectra::eps_param(&x, &j_set, &i_set).unwrap();
        prop_assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn csv_bound_holds_for_every_order(x in connected_complex()) {
        for order in permutations(&x.side_ids()) {
            let cert = scanlab_core::certificates::certify_csv(&x, &order).unwrap();
            prop_assert!(!cert.failed(), "order {:?}: {} > {}", order, cert.measured, cert.bound);
        }
    }
}

#[test]
fn appendix_gamma_matches_influence() {
    // γ₀ = λ_max(Inf_∅)/(n−1) on the appendix instance (k = 3, n = 3)
    let x = scanlab_core::generators::appendix_instance(3, 3).unwrap();
    let gamma = spectra::gamma_params(&x).unwrap();
    let inf = walks::influence_matrix(&x, &Face::empty()).unwrap();
    let lm = spectra::influence_lambda_max(&inf);
    assert!((lm - 1.0 / 3.0).abs() < 1e-10);
    assert!((gamma[0] - lm / 2.0).abs() < 1e-10);
}

#[test]
fn product_gammas_vanish() {
    let x = scanlab_core::generators::uniform_product(&[2, 3, 2]).unwrap();
    let gamma = spectra::gamma_params(&x).unwrap();
    for g in gamma {
        assert!(g.abs() < 1e-12, "γ = {g}");
    }
}

#[test]
fn connected_instances_have_subunit_profile() {
    // Prop connected: link-connected ⟹ every ε_ℓ < 1
    let mut rng = ChaCha12Rng::seed_from_u64(11);
    let mut found = 0;
    while found < 5 {
        let seed = rng.gen();
        let x = match scanlab_core::generators::random_partite(3, &[2, 3, 2], 0.8, seed) {
            Ok(x) if x.is_link_connected() => x,
            _ => continue,
        };
        found += 1;
        let profile = spectra::eps_product_profile(&x).unwrap();
        for e in profile {
            assert!(e < 1.0 - 1e-9, "ε = {e} on seed {seed}");
        }
    }
}

#[test]
fn sigma2_matches_explicit_sweep_on_appendix() {
    // frozen from the 6×6 product matrix: σ₂(P_SQ) = 1/2 for k = 2
    let x = scanlab_core::generators::appendix_instance(2, 2).unwrap();
    let p = walks::sequential_sweep(&x, &[1, 2]).unwrap();
    assert!((spectra::sigma2(&p).unwrap() - 0.5).abs() < 1e-12);
    // and 1/3 for k = 3
    let x = scanlab_core::generators::appendix_instance(2, 3).unwrap();
    let p = walks::sequential_sweep(&x, &[1, 2]).unwrap();
    assert!((spectra::sigma2(&p).unwrap() - 1.0 / 3.0).abs() < 1e-12);
}

#[test]
fn skewed_two_state_chain_sigma2() {
    // weights (0.4, 0.1, 0.1, 0.4): C^{1→2} is a symmetric two-state chain
    // with second eigenvalue 0.6; for n = 2 the sweep bound is tight, so
    // σ₂(P_SQ)² = ε² and σ₂(P_SQ) = 0.6
    let x = WeightedComplex::build(
        vec![vec![0, 1], vec![0, 1]],
        vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]],
        vec![0.4, 0.1, 0.1, 0.4],
    )
    .unwrap();
    let c = walks::colored_walk(&x, &Face::empty(), &[1], &[2]).unwrap();
    assert!((spectra::sigma2(&c).unwrap() - 0.6).abs() < 1e-12);
    let p = walks::sequential_sweep(&x, &[1, 2]).unwrap();
    assert!((spectra::sigma2(&p).unwrap() - 0.6).abs() < 1e-12);
}

#[test]
fn uniform_square_link_walk_spectrum() {
    // 4-state bipartite walk of the product square: eigenvalues {1, 0, 0, −1}
    let x = scanlab_core::generators::uniform_product(&[2, 2]).unwrap();
    let m = walks::link_walk(&x, &Face::empty()).unwrap();
    let ev = spectra::weighted_eigenvalues(m.matrix(), m.domain().mass());
    let expect = [1.0, 0.0, 0.0, -1.0];
    for (a, b) in ev.iter().zip(expect.iter()) {
        assert!((a - b).abs() < 1e-12, "{ev:?}");
    }
}
