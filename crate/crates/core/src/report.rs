//! The spectral report: every expansion parameter of an instance in one
//! serializable record, plus the flat CSV mirror used for corpus sweeps.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::WeightedComplex;
use crate::error::Result;
use crate::spectra::{self, EstimateMethod};
use crate::walks;

/// Which sweep orders an analysis covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderSelection {
    /// The identity order `1..n`.
    Canonical,
    /// Every permutation (intended for small `n`).
    All,
    /// One explicit order.
    Explicit(Vec<usize>),
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub orders: OrderSelection,
    /// Include the per-level `ε` profile.
    pub include_levels: bool,
    /// Include every disjoint `(I, J)` pair in `eps_sets`/`eta_sets`
    /// instead of just the sweep-relevant ones.
    pub all_pairs: bool,
    /// Restarts for entropy-contraction estimates on large simplices.
    pub eta_budget: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            orders: OrderSelection::Canonical,
            include_levels: false,
            all_pairs: false,
            eta_budget: 8,
        }
    }
}

/// An `η̂` entry: a one-sided estimate with its direction flag.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EtaEntry {
    pub eta_hat: f64,
    pub kappa_hat: f64,
    /// `kappa_hat ≤ κ`, hence `eta_hat ≥ η`.
    pub lower_bound_on_kappa: bool,
    pub method: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub digest: String,
    pub n: usize,
    pub facet_count: usize,
    pub side_sizes: Vec<usize>,
    pub link_connected: bool,
}

/// The full spectral report of one instance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectralReport {
    pub report_version: u32,
    pub instance: InstanceMeta,
    /// Order used for `sigma2_sweep`, `gap_sweep`, and `ec_sweep_lower`.
    pub order: Vec<usize>,
    /// `γ_0..γ_{n−2}`.
    pub gamma: Vec<f64>,
    /// Worst pairwise `σ₂(C_α^{i→j})` over full pinnings, keyed `i->j`.
    pub eps_pairwise: BTreeMap<String, f64>,
    /// `ε^{I→J}` for side sets, keyed `i,j,..->k,..`.
    pub eps_sets: BTreeMap<String, f64>,
    /// One-sided `η̂` estimates for side sets.
    pub eta_sets: BTreeMap<String, EtaEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_levels: Option<Vec<f64>>,
    pub sigma2_sweep: f64,
    pub gap_sweep: f64,
    pub gap_glauber: f64,
    /// `Π_j η̂^{s([j+1,n])→s(j)}`: the entropy-contraction product of the
    /// analyzed order, built from one-sided estimates (`η̂ ≥ η`, so this is
    /// an estimate of the theorem's lower bound, certified only when the
    /// estimates are grid-exact).
    pub ec_sweep_lower: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma2_by_order: Option<BTreeMap<String, f64>>,
}

fn set_key(i_set: &[usize], j_set: &[usize]) -> String {
    format!(
        "{}->{}",
        i_set.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","),
        j_set.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
    )
}

fn order_key(order: &[usize]) -> String {
    order.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
}

/// Every unordered pair of disjoint nonempty side subsets.
fn all_disjoint_pairs(ids: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    let mut assign = vec![0u8; ids.len()];
    loop {
        let i_set: Vec<usize> =
            ids.iter().zip(&assign).filter(|(_, &a)| a == 1).map(|(&s, _)| s).collect();
        let j_set: Vec<usize> =
            ids.iter().zip(&assign).filter(|(_, &a)| a == 2).map(|(&s, _)| s).collect();
        if !i_set.is_empty() && !j_set.is_empty() && i_set < j_set {
            out.push((i_set, j_set));
        }
        let mut k = 0;
        loop {
            if k == assign.len() {
                return out;
            }
            assign[k] += 1;
            if assign[k] < 3 {
                break;
            }
            assign[k] = 0;
            k += 1;
        }
    }
}

fn method_label(method: EstimateMethod) -> String {
    match method {
        EstimateMethod::Grid { step } => format!("grid:{step}"),
        EstimateMethod::Ascent { restarts } => format!("ascent:{restarts}"),
    }
}

/// Compute the full spectral report of an instance.
pub fn analyze(x: &WeightedComplex, opts: &AnalyzeOptions) -> Result<SpectralReport> {
    let ids = x.side_ids();
    let n = x.n();
    let canonical: Vec<usize> = ids.clone();
    let order = match &opts.orders {
        OrderSelection::Explicit(o) => o.clone(),
        _ => canonical.clone(),
    };

    let gamma = spectra::gamma_params(x)?;
    let mut eps_pairwise = BTreeMap::new();
    for (a, &i) in ids.iter().enumerate() {
        for &j in &ids[a + 1..] {
            let eps = spectra::eps_param(x, &[i], &[j])?;
            eps_pairwise.insert(set_key(&[i], &[j]), eps);
        }
    }

    let mut eps_sets = BTreeMap::new();
    let mut eta_sets = BTreeMap::new();
    // sweep-relevant prefix pairs for the analyzed order
    for j in 1..order.len() {
        let i_set = &order[..j];
        let j_set = &order[j..=j];
        eps_sets.insert(set_key(i_set, j_set), spectra::eps_param(x, i_set, j_set)?);
    }
    let mut ec_sweep_lower = 1.0;
    for j in 0..n.saturating_sub(1) {
        let target = [order[j]];
        let source: Vec<usize> = order[j + 1..].to_vec();
        let est = spectra::eta_param_estimate(x, &source, &target, opts.eta_budget)?;
        ec_sweep_lower *= est.eta_hat;
        eta_sets.insert(
            set_key(&source, &target),
            EtaEntry {
                eta_hat: est.eta_hat,
                kappa_hat: est.kappa_hat,
                lower_bound_on_kappa: est.lower_bound_on_kappa,
                method: method_label(est.method),
            },
        );
    }
    if opts.all_pairs {
        for (i_set, j_set) in all_disjoint_pairs(&ids) {
            let key = set_key(&i_set, &j_set);
            eps_sets
                .entry(key.clone())
                .or_insert(spectra::eps_param(x, &i_set, &j_set)?);
            if !eta_sets.contains_key(&key) {
                let est = spectra::eta_param_estimate(x, &i_set, &j_set, opts.eta_budget)?;
                eta_sets.insert(
                    key,
                    EtaEntry {
                        eta_hat: est.eta_hat,
                        kappa_hat: est.kappa_hat,
                        lower_bound_on_kappa: est.lower_bound_on_kappa,
                        method: method_label(est.method),
                    },
                );
            }
        }
    }

    let sweep = walks::sequential_sweep(x, &order)?;
    let sigma2_sweep = spectra::sigma2(&sweep)?;
    let glauber = walks::down_up_walk(x)?;
    let gap_glauber = 1.0 - spectra::lambda2(&glauber);

    let sigma2_by_order = if opts.orders == OrderSelection::All {
        let mut map = BTreeMap::new();
        for perm in permutations(&ids) {
            let p = walks::sequential_sweep(x, &perm)?;
            map.insert(order_key(&perm), spectra::sigma2(&p)?);
        }
        Some(map)
    } else {
        None
    };

    let eps_levels =
        if opts.include_levels { Some(spectra::eps_product_profile(x)?) } else { None };

    Ok(SpectralReport {
        report_version: 1,
        instance: InstanceMeta {
            digest: x.digest(),
            n,
            facet_count: x.facet_count(),
            side_sizes: ids.iter().map(|s| x.side(*s).map(|v| v.len())).collect::<Result<_>>()?,
            link_connected: x.is_link_connected(),
        },
        order,
        gamma,
        eps_pairwise,
        eps_sets,
        eta_sets,
        eps_levels,
        sigma2_sweep,
        gap_sweep: 1.0 - sigma2_sweep,
        gap_glauber,
        ec_sweep_lower,
        sigma2_by_order,
    })
}

/// All permutations of the side identifiers, in lexicographic order.
pub fn permutations(ids: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items = ids.to_vec();
    let mut cur = Vec::with_capacity(ids.len());
    fn rec(items: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if items.is_empty() {
            out.push(cur.clone());
            return;
        }
        for k in 0..items.len() {
            let v = items.remove(k);
            cur.push(v);
            rec(items, cur, out);
            cur.pop();
            items.insert(k, v);
        }
    }
    rec(&mut items, &mut cur, &mut out);
    out
}

impl SpectralReport {
    /// Flat key/value pairs mirroring every field, for the CSV sweep
    /// format.
    pub fn flat_fields(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = vec![
            ("report_version".into(), self.report_version.to_string()),
            ("digest".into(), self.instance.digest.clone()),
            ("n".into(), self.instance.n.to_string()),
            ("facet_count".into(), self.instance.facet_count.to_string()),
            (
                "side_sizes".into(),
                self.instance
                    .side_sizes
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join("x"),
            ),
            ("link_connected".into(), self.instance.link_connected.to_string()),
            ("order".into(), order_key(&self.order)),
        ];
        for (i, g) in self.gamma.iter().enumerate() {
            out.push((format!("gamma.{i}"), g.to_string()));
        }
        for (k, v) in &self.eps_pairwise {
            out.push((format!("eps_pairwise.{k}"), v.to_string()));
        }
        for (k, v) in &self.eps_sets {
            out.push((format!("eps_sets.{k}"), v.to_string()));
        }
        for (k, v) in &self.eta_sets {
            out.push((format!("eta_sets.{k}.eta_hat"), v.eta_hat.to_string()));
            out.push((format!("eta_sets.{k}.kappa_hat"), v.kappa_hat.to_string()));
        }
        if let Some(levels) = &self.eps_levels {
            for (i, e) in levels.iter().enumerate() {
                out.push((format!("eps_levels.{i}"), e.to_string()));
            }
        }
        out.push(("sigma2_sweep".into(), self.sigma2_sweep.to_string()));
        out.push(("gap_sweep".into(), self.gap_sweep.to_string()));
        out.push(("gap_glauber".into(), self.gap_glauber.to_string()));
        out.push(("ec_sweep_lower".into(), self.ec_sweep_lower.to_string()));
        if let Some(by_order) = &self.sigma2_by_order {
            for (k, v) in by_order {
                out.push((format!("sigma2_by_order.{k}"), v.to_string()));
            }
        }
        out
    }

    /// Two-line CSV: header row of flat keys, then the values. Commas
    /// inside keys or values (order lists, set labels) become semicolons
    /// so the row stays machine-splittable.
    pub fn to_csv(&self) -> String {
        let fields = self.flat_fields();
        let clean = |s: &str| s.replace(',', ";");
        let header: Vec<String> = fields.iter().map(|(k, _)| clean(k)).collect();
        let values: Vec<String> = fields.iter().map(|(_, v)| clean(v)).collect();
        format!("{}\n{}\n", header.join(","), values.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn report_on_appendix_instance() {
        let x = generators::appendix_instance(2, 3).unwrap();
        let report = analyze(&x, &AnalyzeOptions::default()).unwrap();
        assert_eq!(report.report_version, 1);
        assert!((report.eps_pairwise["1->2"] - 1.0 / 3.0).abs() < 1e-10);
        assert!((report.sigma2_sweep - 1.0 / 3.0).abs() < 1e-10);
        assert!(report.instance.link_connected);
        // all entries within [0, 1] up to slack
        for v in report.eps_pairwise.values().chain(report.eps_sets.values()) {
            assert!(*v >= -crate::tol::SPECTRAL_RANGE && *v <= 1.0 + crate::tol::SPECTRAL_RANGE);
        }
    }

    #[test]
    fn report_all_orders_has_factorial_entries() {
        let x = generators::uniform_product(&[2, 2, 2]).unwrap();
        let opts = AnalyzeOptions { orders: OrderSelection::All, ..Default::default() };
        let report = analyze(&x, &opts).unwrap();
        assert_eq!(report.sigma2_by_order.as_ref().unwrap().len(), 6);
    }

    #[test]
    fn report_json_round_trip() {
        let x = generators::appendix_instance(2, 2).unwrap();
        let opts = AnalyzeOptions { include_levels: true, ..Default::default() };
        let report = analyze(&x, &opts).unwrap();
        let text = serde_json::to_string_pretty(&report).unwrap();
        let back: SpectralReport = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), serde_json::to_string(&report).unwrap());
        let csv = report.to_csv();
        assert!(csv.lines().count() == 2);
    }
}
