//! Instance generators: proper-coloring complexes, product complexes, and
//! seeded random partite complexes, plus the manifest format that pins the
//! benchmark corpus.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::complex::WeightedComplex;
use crate::error::{Error, Result};

const ENUM_VERTEX_CAP: usize = 10;
const RETRY_CAP: usize = 256;

/// The complex of proper `q`-colorings of a graph on `m` vertices: one side
/// per vertex (its palette), one facet per proper coloring, uniform weight.
pub fn coloring_complex(edges: &[(usize, usize)], m: usize, q: u32) -> Result<WeightedComplex> {
    if m > ENUM_VERTEX_CAP {
        return Err(Error::TooLarge(format!("{m} vertices > {ENUM_VERTEX_CAP}")));
    }
    for &(a, b) in edges {
        if a >= m || b >= m {
            return Err(Error::Parse(format!("edge ({a},{b}) outside vertex range 0..{m}")));
        }
    }
    let mut colorings: Vec<Vec<u32>> = Vec::new();
    let mut cur = vec![0u32; m];
    enumerate_colorings(edges, m, q, 0, &mut cur, &mut colorings);
    if colorings.is_empty() {
        return Err(Error::NoProperColoring(q as usize));
    }
    let weights = vec![1.0; colorings.len()];
    let sides = vec![(0..q).collect::<Vec<u32>>(); m];
    WeightedComplex::build(sides, colorings, weights)
}

fn enumerate_colorings(
    edges: &[(usize, usize)],
    m: usize,
    q: u32,
    v: usize,
    cur: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if v == m {
        out.push(cur.clone());
        return;
    }
    for c in 0..q {
        cur[v] = c;
        let ok = edges
            .iter()
            .filter(|&&(a, b)| a.max(b) == v)
            .all(|&(a, b)| cur[a] != cur[b]);
        if ok {
            enumerate_colorings(edges, m, q, v + 1, cur, out);
        }
    }
}

/// The appendix family: a single edge `{1,2}` in a graph on `n` vertices
/// (the rest isolated), properly colored with `k + 1` colors.
pub fn appendix_instance(n: usize, k: u32) -> Result<WeightedComplex> {
    coloring_complex(&[(0, 1)], n, k + 1)
}

/// Full product complex with independent side marginals.
pub fn product_complex(side_marginals: &[Vec<f64>]) -> Result<WeightedComplex> {
    for (i, m) in side_marginals.iter().enumerate() {
        if m.is_empty() {
            return Err(Error::EmptySide(i + 1));
        }
        if m.iter().any(|&w| w <= 0.0) {
            return Err(Error::ZeroWeight(0.0));
        }
    }
    let sides: Vec<Vec<u32>> =
        side_marginals.iter().map(|m| (0..m.len() as u32).collect()).collect();
    let mut facets: Vec<Vec<u32>> = vec![Vec::new()];
    for side in &sides {
        let mut next = Vec::with_capacity(facets.len() * side.len());
        for f in &facets {
            for &v in side {
                let mut g = f.clone();
                g.push(v);
                next.push(g);
            }
        }
        facets = next;
    }
    let weights: Vec<f64> = facets
        .iter()
        .map(|f| {
            f.iter()
                .enumerate()
                .map(|(i, &v)| side_marginals[i][v as usize])
                .product()
        })
        .collect();
    WeightedComplex::build(sides, facets, weights)
}

/// Uniform product complex with the given side sizes.
pub fn uniform_product(side_sizes: &[usize]) -> Result<WeightedComplex> {
    let marginals: Vec<Vec<f64>> =
        side_sizes.iter().map(|&s| vec![1.0 / s as f64; s]).collect();
    product_complex(&marginals)
}

/// Product complex with random marginals drawn from the seed.
pub fn seeded_product(n: usize, max_side: usize, seed: u64) -> Result<WeightedComplex> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(2..=max_side)).collect();
    let marginals: Vec<Vec<f64>> = sizes
        .iter()
        .map(|&s| (0..s).map(|_| rng.gen_range(0.2..1.0)).collect())
        .collect();
    product_complex(&marginals)
}

/// Seeded random partite complex: keep each tuple of the full product with
/// probability `density`, attach random positive weights, and retry with a
/// derived seed until validation passes (purity needs every vertex
/// covered).
///
/// Link-connectivity is not enforced; query it via
/// [`WeightedComplex::is_link_connected`].
pub fn random_partite(
    n: usize,
    side_sizes: &[usize],
    facet_density: f64,
    seed: u64,
) -> Result<WeightedComplex> {
    assert_eq!(side_sizes.len(), n);
    assert!(facet_density > 0.0 && facet_density <= 1.0);
    for attempt in 0..RETRY_CAP {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(attempt as u64);
        let mut facets: Vec<Vec<u32>> = Vec::new();
        enumerate_tuples(side_sizes, &mut vec![0; 0], &mut facets);
        facets.retain(|_| rng.gen::<f64>() < facet_density);
        if facets.is_empty() {
            continue;
        }
        let weights: Vec<f64> = facets.iter().map(|_| rng.gen_range(0.25..1.75)).collect();
        let sides: Vec<Vec<u32>> =
            side_sizes.iter().map(|&s| (0..s as u32).collect()).collect();
        if let Ok(x) = WeightedComplex::build(sides, facets, weights) {
            return Ok(x);
        }
    }
    Err(Error::GenerationFailed(RETRY_CAP))
}

fn enumerate_tuples(sizes: &[usize], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if cur.len() == sizes.len() {
        out.push(cur.clone());
        return;
    }
    for v in 0..sizes[cur.len()] as u32 {
        cur.push(v);
        enumerate_tuples(sizes, cur, out);
        cur.pop();
    }
}

/// One pinned instance in a corpus manifest.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InstanceSpec {
    /// Appendix family: single edge on `n` vertices, `k + 1` colors.
    Appendix { n: usize, k: u32 },
    /// Proper colorings of an explicit edge list.
    Coloring { edges: Vec<(usize, usize)>, vertices: usize, colors: u32 },
    /// Uniform product with explicit side sizes.
    Product { sizes: Vec<usize> },
    /// Product with seeded random marginals.
    ProductRandom { n: usize, max_side: usize, seed: u64 },
    /// Seeded random partite complex.
    Random { sizes: Vec<usize>, density: f64, seed: u64 },
    /// Load from a complex description file (relative to the manifest).
    File { path: String },
}

impl InstanceSpec {
    /// Short deterministic identifier used in reports and certificates.
    pub fn id(&self) -> String {
        match self {
            InstanceSpec::Appendix { n, k } => format!("appendix-n{n}-k{k}"),
            InstanceSpec::Coloring { vertices, colors, .. } => {
                format!("coloring-m{vertices}-q{colors}")
            }
            InstanceSpec::Product { sizes } => format!(
                "product-{}",
                sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("x")
            ),
            InstanceSpec::ProductRandom { n, max_side, seed } => {
                format!("product-random-n{n}-s{max_side}-seed{seed}")
            }
            InstanceSpec::Random { sizes, density, seed } => format!(
                "random-{}-d{density}-seed{seed}",
                sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("x")
            ),
            InstanceSpec::File { path } => format!("file-{path}"),
        }
    }

    /// Materialize the instance. `base` resolves `File` paths.
    pub fn build(&self, base: Option<&std::path::Path>) -> Result<WeightedComplex> {
        match self {
            InstanceSpec::Appendix { n, k } => appendix_instance(*n, *k),
            InstanceSpec::Coloring { edges, vertices, colors } => {
                coloring_complex(edges, *vertices, *colors)
            }
            InstanceSpec::Product { sizes } => uniform_product(sizes),
            InstanceSpec::ProductRandom { n, max_side, seed } => {
                seeded_product(*n, *max_side, *seed)
            }
            InstanceSpec::Random { sizes, density, seed } => {
                random_partite(sizes.len(), sizes, *density, *seed)
            }
            InstanceSpec::File { path } => {
                let full = match base {
                    Some(b) => b.join(path),
                    None => std::path::PathBuf::from(path),
                };
                let text = std::fs::read_to_string(full)?;
                WeightedComplex::from_json_str(&text)
            }
        }
    }
}

/// A pinned, reproducible corpus of instances.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub corpus_version: u32,
    pub instances: Vec<InstanceSpec>,
}

impl CorpusManifest {
    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }

    /// Build every instance, paired with its manifest id.
    pub fn build_all(
        &self,
        base: Option<&std::path::Path>,
    ) -> Result<Vec<(String, WeightedComplex)>> {
        self.instances
            .iter()
            .map(|spec| spec.build(base).map(|x| (spec.id(), x)))
            .collect()
    }
}
