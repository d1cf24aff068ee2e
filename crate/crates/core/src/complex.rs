//! Weighted pure `n`-partite simplicial complexes: construction, validation,
//! links, marginals, pinnings, and level distributions.
//!
//! Vertices are side-local integers; a global vertex is the pair
//! `(side, id)`. Sides carry persistent identifiers (1-based at the top
//! level) so that links keep the original side names instead of renumbering.
//! Faces are stored as sorted `(side, id)` pairs, which makes partiteness
//! structural and gives every face a canonical form for dedup and hashing.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::tol;

/// A partial assignment: one vertex for each side in its type set.
///
/// Entries are kept sorted by side, so equal assignments compare and hash
/// equal. The join `α ⊕ β` is defined only for disjoint type sets.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    entries: Vec<(usize, u32)>,
}

impl Face {
    /// The empty face `∅`.
    pub fn empty() -> Self {
        Face { entries: Vec::new() }
    }

    /// Build a face from `(side, vertex)` pairs. Panics on a repeated side.
    pub fn new(mut entries: Vec<(usize, u32)>) -> Self {
        entries.sort_unstable();
        for w in entries.windows(2) {
            assert!(w[0].0 != w[1].0, "face assigns side {} twice", w[0].0);
        }
        Face { entries }
    }

    /// Face assigning `coords[k]` to `side_ids[k]`.
    pub fn from_coords(side_ids: &[usize], coords: &[u32]) -> Self {
        assert_eq!(side_ids.len(), coords.len());
        Face::new(side_ids.iter().copied().zip(coords.iter().copied()).collect())
    }

    pub fn single(side: usize, vertex: u32) -> Self {
        Face { entries: vec![(side, vertex)] }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The set of sides this face assigns (`typ(α)`).
    pub fn type_set(&self) -> BTreeSet<usize> {
        self.entries.iter().map(|&(s, _)| s).collect()
    }

    pub fn entries(&self) -> &[(usize, u32)] {
        &self.entries
    }

    /// Vertex assigned to `side`, if any.
    pub fn get(&self, side: usize) -> Option<u32> {
        self.entries
            .binary_search_by_key(&side, |&(s, _)| s)
            .ok()
            .map(|k| self.entries[k].1)
    }

    /// Restriction of the face to the given sides (ignores absent sides).
    pub fn project(&self, sides: &[usize]) -> Face {
        let keep: BTreeSet<usize> = sides.iter().copied().collect();
        Face {
            entries: self.entries.iter().copied().filter(|(s, _)| keep.contains(s)).collect(),
        }
    }

    /// Drop the given sides from the face.
    pub fn without(&self, sides: &BTreeSet<usize>) -> Face {
        Face {
            entries: self.entries.iter().copied().filter(|(s, _)| !sides.contains(s)).collect(),
        }
    }

    /// `true` iff `self` extends `other` on every side `other` assigns.
    pub fn extends(&self, other: &Face) -> bool {
        other.entries.iter().all(|&(s, v)| self.get(s) == Some(v))
    }

    /// Join of two faces with disjoint type sets (`α ⊕ β`).
    ///
    /// Returns `None` when the type sets overlap.
    pub fn join(&self, other: &Face) -> Option<Face> {
        let mut entries = self.entries.clone();
        for &(s, v) in &other.entries {
            if self.get(s).is_some() {
                return None;
            }
            entries.push((s, v));
        }
        entries.sort_unstable();
        Some(Face { entries })
    }

    /// Canonical text form, e.g. `1:0|3:2`; the empty face prints as `∅`.
    pub fn label(&self) -> String {
        if self.entries.is_empty() {
            return "∅".to_string();
        }
        self.entries
            .iter()
            .map(|(s, v)| format!("{s}:{v}"))
            .collect::<Vec<_>>()
            .join("|")
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Face({})", self.label())
    }
}

/// A probability distribution over a finite, canonically sorted set of
/// faces.
#[derive(Clone, Debug)]
pub struct Distribution {
    items: Vec<Face>,
    index: HashMap<Face, usize>,
    mass: DVector<f64>,
}

impl Distribution {
    /// Validated constructor: items must be sorted and distinct, masses
    /// nonnegative and summing to 1 within [`tol::MASS`].
    pub fn new(items: Vec<Face>, mass: Vec<f64>) -> Result<Self> {
        assert_eq!(items.len(), mass.len());
        for (k, w) in items.windows(2).enumerate() {
            if w[0] == w[1] {
                return Err(Error::DuplicateFacet(k));
            }
            if w[0] > w[1] {
                return Err(Error::Parse(format!("support not in canonical order at {k}")));
            }
        }
        let total: f64 = mass.iter().sum();
        if mass.iter().any(|&m| m < 0.0) || (total - 1.0).abs() > tol::MASS {
            return Err(Error::Parse(format!("distribution sums to {total}, expected 1")));
        }
        let index = items.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        Ok(Distribution { items, index, mass: DVector::from_vec(mass) })
    }

    /// Normalize strictly positive weights into a distribution.
    pub fn from_weights(items: Vec<Face>, weights: Vec<f64>) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::ZeroWeight(total));
        }
        Distribution::new(items, weights.into_iter().map(|w| w / total).collect())
    }

    /// The point mass on a single face.
    pub fn point_mass_on(items: Vec<Face>, at: &Face) -> Result<Self> {
        let mass = items.iter().map(|f| if f == at { 1.0 } else { 0.0 }).collect();
        Distribution::new(items, mass)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[Face] {
        &self.items
    }

    pub fn mass(&self) -> &DVector<f64> {
        &self.mass
    }

    pub fn index_of(&self, face: &Face) -> Option<usize> {
        self.index.get(face).copied()
    }

    /// Mass of a face; zero when the face is outside the support universe.
    pub fn mass_of(&self, face: &Face) -> f64 {
        self.index_of(face).map_or(0.0, |i| self.mass[i])
    }

    pub fn min_mass(&self) -> f64 {
        self.mass.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Same support universe, in the same canonical order.
    pub fn same_universe(&self, other: &Distribution) -> bool {
        self.items == other.items
    }
}

/// JSON schema for complex description files.
#[derive(Serialize, Deserialize)]
struct ComplexFile {
    sides: Vec<Vec<u32>>,
    facets: Vec<FacetEntry>,
}

#[derive(Serialize, Deserialize)]
struct FacetEntry {
    coords: Vec<u32>,
    weight: f64,
}

/// A weighted pure `n`-partite simplicial complex.
///
/// Immutable after construction; every operation borrows `&self`.
#[derive(Clone, Debug)]
pub struct WeightedComplex {
    sides: BTreeMap<usize, Vec<u32>>,
    facets: Vec<Face>,
    pi: DVector<f64>,
    facet_index: HashMap<Face, usize>,
}

impl WeightedComplex {
    /// Build and validate a complex from per-side vertex lists (sides are
    /// numbered `1..=n`), facet coordinate rows, and strictly positive
    /// weights.
    pub fn build(sides: Vec<Vec<u32>>, facets: Vec<Vec<u32>>, weights: Vec<f64>) -> Result<Self> {
        let n = sides.len();
        let side_ids: Vec<usize> = (1..=n).collect();
        let mut side_map = BTreeMap::new();
        for (k, mut vs) in sides.into_iter().enumerate() {
            vs.sort_unstable();
            vs.dedup();
            side_map.insert(side_ids[k], vs);
        }
        let mut faces = Vec::with_capacity(facets.len());
        for coords in &facets {
            if coords.len() != n {
                return Err(Error::ArityMismatch {
                    facet: format!("{coords:?}"),
                    side: coords.len().min(n) + 1,
                });
            }
            faces.push(Face::from_coords(&side_ids, coords));
        }
        Self::from_faces(side_map, faces, weights)
    }

    /// Core constructor over explicit side identifiers.
    pub fn from_faces(
        sides: BTreeMap<usize, Vec<u32>>,
        facets: Vec<Face>,
        weights: Vec<f64>,
    ) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::EmptyComplex);
        }
        assert_eq!(facets.len(), weights.len(), "one weight per facet");
        for &w in &weights {
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::ZeroWeight(w));
            }
        }
        // n-partiteness: every facet assigns exactly one vertex per side.
        for f in &facets {
            for (&side, verts) in &sides {
                match f.get(side) {
                    Some(v) if verts.contains(&v) => {}
                    _ => {
                        return Err(Error::ArityMismatch { facet: f.label(), side });
                    }
                }
            }
            if f.rank() != sides.len() {
                let extra = f
                    .entries()
                    .iter()
                    .map(|&(s, _)| s)
                    .find(|s| !sides.contains_key(s))
                    .unwrap_or(0);
                return Err(Error::ArityMismatch { facet: f.label(), side: extra });
            }
        }
        // canonical order + dedup check
        let mut order: Vec<usize> = (0..facets.len()).collect();
        order.sort_by(|&a, &b| facets[a].cmp(&facets[b]));
        let facets_sorted: Vec<Face> = order.iter().map(|&i| facets[i].clone()).collect();
        let weights_sorted: Vec<f64> = order.iter().map(|&i| weights[i]).collect();
        for (k, w) in facets_sorted.windows(2).enumerate() {
            if w[0] == w[1] {
                return Err(Error::DuplicateFacet(k));
            }
        }
        // purity: every listed side vertex appears in at least one facet
        for (&side, verts) in &sides {
            for &v in verts {
                if !facets_sorted.iter().any(|f| f.get(side) == Some(v)) {
                    return Err(Error::UncoveredVertex { side, vertex: v });
                }
            }
        }
        let total: f64 = weights_sorted.iter().sum();
        let pi = DVector::from_vec(weights_sorted.iter().map(|w| w / total).collect());
        debug_assert!((pi.sum() - 1.0).abs() <= tol::MASS);
        let facet_index =
            facets_sorted.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        Ok(WeightedComplex { sides: side_map_checked(sides), facets: facets_sorted, pi, facet_index })
    }

    pub fn n(&self) -> usize {
        self.sides.len()
    }

    pub fn side_ids(&self) -> Vec<usize> {
        self.sides.keys().copied().collect()
    }

    pub fn side(&self, id: usize) -> Result<&[u32]> {
        self.sides.get(&id).map(|v| v.as_slice()).ok_or(Error::SideOutOfRange(id))
    }

    pub fn sides(&self) -> &BTreeMap<usize, Vec<u32>> {
        &self.sides
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn pi(&self) -> &DVector<f64> {
        &self.pi
    }

    pub fn facet_index(&self, f: &Face) -> Option<usize> {
        self.facet_index.get(f).copied()
    }

    /// The facet distribution `π` as a [`Distribution`].
    pub fn facet_distribution(&self) -> Distribution {
        Distribution::new(self.facets.clone(), self.pi.iter().copied().collect())
            .expect("facet weights validated at construction")
    }

    /// Vertices of the complex as `(side, id)` singleton faces, in
    /// canonical order.
    pub fn vertices(&self) -> Vec<Face> {
        let mut out = Vec::new();
        for (&s, verts) in &self.sides {
            for &v in verts {
                out.push(Face::single(s, v));
            }
        }
        out.sort();
        out
    }

    /// `true` iff some facet extends the face.
    pub fn contains_face(&self, face: &Face) -> bool {
        self.facets.iter().any(|f| f.extends(face))
    }

    /// Indices of facets extending the face.
    pub fn extending_facets(&self, face: &Face) -> Vec<usize> {
        (0..self.facets.len()).filter(|&i| self.facets[i].extends(face)).collect()
    }

    /// Group facets by their projection onto the given sides.
    ///
    /// Deterministic (BTreeMap) so downstream operator rows come out in
    /// canonical order.
    pub fn group_by_projection(&self, sides: &[usize]) -> BTreeMap<Face, Vec<usize>> {
        let mut groups: BTreeMap<Face, Vec<usize>> = BTreeMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            groups.entry(f.project(sides)).or_default().push(i);
        }
        groups
    }

    /// The link `X_α` with the conditioned weighting `π^{(α)}`.
    ///
    /// Side identifiers are preserved, so `link(link(X, α), β)` and
    /// `link(X, α ⊕ β)` are the same complex on the nose.
    pub fn link(&self, alpha: &Face) -> Result<WeightedComplex> {
        let typ = alpha.type_set();
        for s in &typ {
            if !self.sides.contains_key(s) {
                return Err(Error::FaceNotInComplex(alpha.label()));
            }
        }
        let ext = self.extending_facets(alpha);
        if ext.is_empty() {
            return Err(Error::FaceNotInComplex(alpha.label()));
        }
        let mut facets = Vec::with_capacity(ext.len());
        let mut weights = Vec::with_capacity(ext.len());
        for i in ext {
            facets.push(self.facets[i].without(&typ));
            weights.push(self.pi[i]);
        }
        let mut sides = BTreeMap::new();
        for (&s, _) in self.sides.iter().filter(|(s, _)| !typ.contains(s)) {
            let mut verts: Vec<u32> =
                facets.iter().map(|f| f.get(s).expect("facet covers side")).collect();
            verts.sort_unstable();
            verts.dedup();
            sides.insert(s, verts);
        }
        WeightedComplex::from_faces(sides, facets, weights)
    }

    /// The `S`-marginal `π_S` over faces of type exactly `S`.
    ///
    /// `S = ∅` returns the point mass on the empty face.
    pub fn marginal(&self, s: &[usize]) -> Result<Distribution> {
        for side in s {
            if !self.sides.contains_key(side) {
                return Err(Error::SideOutOfRange(*side));
            }
        }
        if s.is_empty() {
            return Distribution::new(vec![Face::empty()], vec![1.0]);
        }
        let groups = self.group_by_projection(s);
        let items: Vec<Face> = groups.keys().cloned().collect();
        let mass: Vec<f64> =
            groups.values().map(|idxs| idxs.iter().map(|&i| self.pi[i]).sum()).collect();
        Distribution::new(items, normalized(mass))
    }

    /// The pinned facet distribution `π^{(α)}` over the link's facets
    /// (faces of type `[n] ∖ typ(α)` in the original side naming).
    pub fn pinned(&self, alpha: &Face) -> Result<Distribution> {
        let link = self.link(alpha)?;
        Ok(link.facet_distribution())
    }

    /// All faces of rank `j`, canonically sorted.
    pub fn faces_of_rank(&self, j: usize) -> Vec<Face> {
        let ids = self.side_ids();
        let mut out: BTreeSet<Face> = BTreeSet::new();
        for t in combinations(&ids, j) {
            for f in self.facets.iter() {
                out.insert(f.project(&t));
            }
        }
        out.into_iter().collect()
    }

    /// All faces of type exactly `t`.
    pub fn faces_of_type(&self, t: &[usize]) -> Vec<Face> {
        self.group_by_projection(t).into_keys().collect()
    }

    /// The level distribution `π_j` over `X^{(j)}`, by the closed form
    /// `π_j(α) = Σ_{ω ⊇ α} π(ω) / C(n, j)`.
    pub fn level_distribution(&self, j: usize) -> Result<Distribution> {
        let n = self.n();
        if j > n {
            return Err(Error::LevelOutOfRange { level: j, rank: n });
        }
        let denom = binomial(n, j);
        let faces = self.faces_of_rank(j);
        let mass: Vec<f64> = faces
            .iter()
            .map(|alpha| {
                self.facets
                    .iter()
                    .zip(self.pi.iter())
                    .filter(|(f, _)| f.extends(alpha))
                    .map(|(_, &w)| w)
                    .sum::<f64>()
                    / denom
            })
            .collect();
        Distribution::new(faces, normalized(mass))
    }

    /// Whether every link graph `G_α` for `|α| ≤ n − 2` is connected.
    pub fn is_link_connected(&self) -> bool {
        let n = self.n();
        if n < 2 {
            return true;
        }
        for rank in 0..=(n - 2) {
            for alpha in self.faces_of_rank(rank) {
                if !self.link_graph_connected(&alpha) {
                    return false;
                }
            }
        }
        true
    }

    fn link_graph_connected(&self, alpha: &Face) -> bool {
        let typ = alpha.type_set();
        let ext = self.extending_facets(alpha);
        let mut verts: BTreeSet<Face> = BTreeSet::new();
        for &i in &ext {
            for &(s, v) in self.facets[i].entries() {
                if !typ.contains(&s) {
                    verts.insert(Face::single(s, v));
                }
            }
        }
        let verts: Vec<Face> = verts.into_iter().collect();
        if verts.len() <= 1 {
            return true;
        }
        let vi: HashMap<&Face, usize> = verts.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); verts.len()];
        for &i in &ext {
            let vs: Vec<usize> = self.facets[i]
                .entries()
                .iter()
                .filter(|(s, _)| !typ.contains(s))
                .map(|&(s, v)| vi[&Face::single(s, v)])
                .collect();
            for &a in &vs {
                for &b in &vs {
                    if a != b {
                        adj[a].push(b);
                    }
                }
            }
        }
        let mut seen = vec![false; verts.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// SHA-256 digest of the canonical JSON form; identifies the instance
    /// in certificates and reports.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.to_json_string().as_bytes());
        hex(&hasher.finalize())
    }

    /// Serialize to the complex description JSON schema. Sides are emitted
    /// in identifier order and renumbered `1..=n` positionally.
    pub fn to_json_string(&self) -> String {
        let ids = self.side_ids();
        let file = ComplexFile {
            sides: ids.iter().map(|s| self.sides[s].clone()).collect(),
            facets: self
                .facets
                .iter()
                .zip(self.pi.iter())
                .map(|(f, &w)| FacetEntry {
                    coords: ids.iter().map(|&s| f.get(s).expect("full facet")).collect(),
                    weight: w,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("complex serializes")
    }

    /// Parse and validate a complex description file.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: ComplexFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let (facets, weights) =
            file.facets.into_iter().map(|f| (f.coords, f.weight)).unzip();
        WeightedComplex::build(file.sides, facets, weights)
    }
}

fn side_map_checked(sides: BTreeMap<usize, Vec<u32>>) -> BTreeMap<usize, Vec<u32>> {
    debug_assert!(sides.values().all(|v| v.windows(2).all(|w| w[0] < w[1])));
    sides
}

fn normalized(mass: Vec<f64>) -> Vec<f64> {
    let total: f64 = mass.iter().sum();
    mass.into_iter().map(|m| m / total).collect()
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Binomial coefficient as f64 (arguments stay tiny here).
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut num = 1.0;
    for i in 0..k {
        num = num * (n - i) as f64 / (i + 1) as f64;
    }
    num
}

/// All k-subsets of `items`, in lexicographic order.
pub fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force proper-coloring enumeration, independent of the
    /// generators module.
    fn proper_colorings(edges: &[(usize, usize)], m: usize, q: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; m];
        fn rec(
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
                if edges.iter().all(|&(a, b)| a.max(b) > v || cur[a] != cur[b]) {
                    rec(edges, m, q, v + 1, cur, out);
                }
            }
        }
        rec(edges, m, q, 0, &mut cur, &mut out);
        out
    }

    fn edge_complex(q: u32) -> WeightedComplex {
        let colorings = proper_colorings(&[(0, 1)], 2, q);
        let sides = vec![(0..q).collect::<Vec<u32>>(); 2];
        let weights = vec![1.0; colorings.len()];
        WeightedComplex::build(sides, colorings, weights).unwrap()
    }

    #[test]
    fn build_edge_coloring_complex() {
        let x = edge_complex(3);
        assert_eq!(x.n(), 2);
        assert_eq!(x.facet_count(), 6);
        for &w in x.pi().iter() {
            assert!((w - 1.0 / 6.0).abs() < tol::MASS);
        }
    }

    #[test]
    fn build_rejects_empty() {
        let err = WeightedComplex::build(vec![vec![0, 1]], vec![], vec![]).unwrap_err();
        assert!(matches!(err, Error::EmptyComplex));
    }

    #[test]
    fn build_rejects_bad_arity() {
        // facet with too few coordinates
        let err =
            WeightedComplex::build(vec![vec![0], vec![0]], vec![vec![0]], vec![1.0]).unwrap_err();
        assert!(matches!(err, Error::ArityMismatch { .. }));
        // face assigning two vertices of side 1 is unrepresentable as a
        // coordinate row; the equivalent failure is a vertex outside the side
        let err = WeightedComplex::build(vec![vec![0], vec![0]], vec![vec![0, 5]], vec![1.0])
            .unwrap_err();
        assert!(matches!(err, Error::ArityMismatch { side: 2, .. }));
    }

    #[test]
    fn build_rejects_duplicates_zero_weights_uncovered() {
        let sides = vec![vec![0, 1], vec![0, 1]];
        let err = WeightedComplex::build(
            sides.clone(),
            vec![vec![0, 0], vec![0, 0]],
            vec![1.0, 1.0],
        )
        .unwrap_err();
        assert!(matches!(err, Error::DuplicateFacet(_)));

        let err =
            WeightedComplex::build(sides.clone(), vec![vec![0, 0]], vec![0.0]).unwrap_err();
        assert!(matches!(err, Error::ZeroWeight(_)));

        // vertex 1 of side 2 never appears: not pure
        let err = WeightedComplex::build(sides, vec![vec![0, 0], vec![1, 0]], vec![1.0, 1.0])
            .unwrap_err();
        assert!(matches!(err, Error::UncoveredVertex { side: 2, vertex: 1 }));
    }

    #[test]
    fn link_of_vertex_in_edge_complex() {
        // colors {0,1,2}, pin vertex 1 ↦ color 0: link is 1-partite on
        // side 2 with colors {1,2}, uniform
        let x = edge_complex(3);
        let link = x.link(&Face::single(1, 0)).unwrap();
        assert_eq!(link.n(), 1);
        assert_eq!(link.side_ids(), vec![2]);
        assert_eq!(link.side(2).unwrap(), &[1, 2]);
        for &w in link.pi().iter() {
            assert!((w - 0.5).abs() < tol::MASS);
        }
    }

    #[test]
    fn link_of_full_facet_is_empty_complex() {
        let x = edge_complex(3);
        let facet = x.facets()[0].clone();
        let link = x.link(&facet).unwrap();
        assert_eq!(link.n(), 0);
        assert_eq!(link.facet_count(), 1);
        assert!(link.facets()[0].is_empty());
        assert!((link.pi()[0] - 1.0).abs() < tol::MASS);
    }

    #[test]
    fn link_rejects_foreign_face() {
        let x = edge_complex(3);
        assert!(matches!(
            x.link(&Face::single(1, 9)).unwrap_err(),
            Error::FaceNotInComplex(_)
        ));
        // (1↦0, 2↦0) is monochromatic, not a facet
        let bad = Face::new(vec![(1, 0), (2, 0)]);
        assert!(matches!(x.link(&bad).unwrap_err(), Error::FaceNotInComplex(_)));
    }

    #[test]
    fn marginal_full_set_is_pi_and_empty_is_point_mass() {
        let x = edge_complex(3);
        let m = x.marginal(&[1, 2]).unwrap();
        assert_eq!(m.items(), x.facets());
        for (a, b) in m.mass().iter().zip(x.pi().iter()) {
            assert!((a - b).abs() < tol::MASS);
        }
        let e = x.marginal(&[]).unwrap();
        assert_eq!(e.len(), 1);
        assert!((e.mass()[0] - 1.0).abs() < tol::MASS);
    }

    #[test]
    fn marginal_single_side_uniform_by_symmetry() {
        let x = edge_complex(3);
        let m = x.marginal(&[1]).unwrap();
        assert_eq!(m.len(), 3);
        for &w in m.mass().iter() {
            assert!((w - 1.0 / 3.0).abs() < tol::MASS);
        }
    }

    #[test]
    fn level_distribution_boundaries() {
        let x = edge_complex(3);
        let top = x.level_distribution(2).unwrap();
        assert_eq!(top.items(), x.facets());
        let bottom = x.level_distribution(0).unwrap();
        assert_eq!(bottom.len(), 1);
        assert!((bottom.mass()[0] - 1.0).abs() < tol::MASS);
        assert!(matches!(
            x.level_distribution(3).unwrap_err(),
            Error::LevelOutOfRange { level: 3, rank: 2 }
        ));
    }

    #[test]
    fn level_one_uniform_over_side_color_pairs() {
        // π_1 uniform over the 6 (side, color) pairs
        let x = edge_complex(3);
        let lvl = x.level_distribution(1).unwrap();
        assert_eq!(lvl.len(), 6);
        for &w in lvl.mass().iter() {
            assert!((w - 1.0 / 6.0).abs() < tol::MASS);
        }
    }

    #[test]
    fn face_join_and_projection() {
        let a = Face::single(1, 0);
        let b = Face::single(2, 1);
        let ab = a.join(&b).unwrap();
        assert_eq!(ab.rank(), 2);
        assert_eq!(ab.get(2), Some(1));
        assert!(a.join(&a).is_none());
        assert_eq!(ab.project(&[2]), b);
        assert_eq!(ab.label(), "1:0|2:1");
        assert_eq!(Face::empty().label(), "∅");
    }

    #[test]
    fn json_round_trip_preserves_digest() {
        let x = edge_complex(4);
        let text = x.to_json_string();
        let y = WeightedComplex::from_json_str(&text).unwrap();
        assert_eq!(x.digest(), y.digest());
        assert_eq!(x.facets(), y.facets());
    }

    #[test]
    fn single_side_complex_is_legal() {
        // n = 1 is needed as the induction basis elsewhere
        let x = WeightedComplex::build(vec![vec![0, 1]], vec![vec![0], vec![1]], vec![1.0, 3.0])
            .unwrap();
        assert_eq!(x.n(), 1);
        assert!((x.pi()[0] - 0.25).abs() < tol::MASS);
    }
}
