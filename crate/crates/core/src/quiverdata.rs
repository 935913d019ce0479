//! Quiver gauge theories, coweights, root data with Weyl orbits, the
//! Δ-degree of a coweight and the classical dressing factor.

use crate::error::{CbxError, Result};
use crate::monopole::Series;
use crate::ratfield::{q, qf, MPoly, VarTable, Q};
use serde_json::Value;
use std::collections::{BTreeMap, HashSet, VecDeque};

/// Quiver with dimension and flavor vectors. An arrow `(out, in)` stands for
/// `Hom(V_out, V_in)`; `out == in` is a loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverTheory {
    pub vertices: Vec<String>,
    pub arrows: Vec<(usize, usize)>,
    pub dim: Vec<usize>,
    pub flavor: Vec<usize>,
    pub root_system: Option<RootSystemSpec>,
    /// Diagram automorphism as cycles of vertex indices.
    pub fold: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemSpec {
    pub series: char,
    pub rank: usize,
}

impl QuiverTheory {
    /// Builds and validates a theory from vertex labels and index data.
    pub fn new(vertices: &[&str], arrows: &[(usize, usize)], dim: &[usize], flavor: &[usize]) -> Result<Self> {
        let t = QuiverTheory {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: arrows.to_vec(),
            dim: dim.to_vec(),
            flavor: flavor.to_vec(),
            root_system: None,
            fold: None,
        };
        t.validate()?;
        Ok(t)
    }

    /// Linearly oriented type A quiver `1 → 2 → … → n`.
    pub fn type_a(dim: &[usize], flavor: &[usize]) -> Self {
        let labels: Vec<String> = (1..=dim.len()).map(|i| i.to_string()).collect();
        let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
        let arrows: Vec<_> = (1..dim.len()).map(|i| (i - 1, i)).collect();
        Self::new(&refs, &arrows, dim, flavor).expect("type A data is valid")
    }

    /// One vertex with one loop.
    pub fn jordan(a: usize, l: usize) -> Self {
        Self::new(&["1"], &[(0, 0)], &[a], &[l]).expect("Jordan data is valid")
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        let mut seen = HashSet::new();
        for v in &self.vertices {
            if !seen.insert(v) {
                return Err(CbxError::schema(Some("vertices".into()), format!("duplicate vertex '{v}'")));
            }
        }
        if self.dim.len() != n || self.flavor.len() != n {
            return Err(CbxError::schema(None, "dimension and flavor vectors must match the vertex list"));
        }
        for (k, (a, b)) in self.arrows.iter().enumerate() {
            if *a >= n || *b >= n {
                return Err(CbxError::schema(Some(format!("arrows[{k}]")), "arrow endpoint is not a vertex"));
            }
        }
        if let Some(cycles) = &self.fold {
            let mut used = HashSet::new();
            for c in cycles {
                for v in c {
                    if *v >= n || !used.insert(*v) {
                        return Err(CbxError::schema(Some("fold".into()), "fold cycles must be disjoint vertex lists"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn has_loops(&self) -> bool {
        self.arrows.iter().any(|(a, b)| a == b)
    }

    /// Arrows with `out == i`.
    pub fn arrows_out(&self, i: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arrows.iter().copied().filter(move |(a, _)| *a == i)
    }

    /// Arrows with `in == i`.
    pub fn arrows_in(&self, i: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arrows.iter().copied().filter(move |(_, b)| *b == i)
    }

    /// Neighbors of `i` over the doubled quiver (each edge counted once per
    /// orientation, loops excluded).
    pub fn doubled_neighbors(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (a, b) in self.arrows.iter().copied() {
            if a == b {
                continue;
            }
            if a == i {
                out.push(b);
            }
            if b == i {
                out.push(a);
            }
        }
        out
    }

    /// `C = 2I − (A + Aᵀ)` with loops contributing `2` to the diagonal of `A + Aᵀ`.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.n_vertices();
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in self.arrows.iter().copied() {
            c[a][b] -= 1;
            c[b][a] -= 1;
        }
        c
    }

    pub fn total_flavor(&self) -> usize {
        self.flavor.iter().sum()
    }

    /// Variable table: masses `z1..zN` in vertex order, gauge variables
    /// `w{label}_{r}`.
    pub fn var_table(&self) -> VarTable {
        self.var_table_with_aux(&[])
    }

    pub fn var_table_with_aux(&self, aux: &[String]) -> VarTable {
        let mut masses = Vec::new();
        for (i, &l) in self.flavor.iter().enumerate() {
            for _ in 0..l {
                masses.push((format!("z{}", masses.len() + 1), i));
            }
        }
        let mut gauge = Vec::new();
        for (i, &a) in self.dim.iter().enumerate() {
            for r in 0..a {
                gauge.push((format!("w{}_{}", self.vertices[i], r + 1), i, r));
            }
        }
        VarTable::new(&masses, &gauge, aux)
    }

    /// `⟨μ, α_i^∨⟩ = l_i + Σ_{doubled neighbors j} a_j − 2a_i`.
    pub fn mu_pairing(&self, i: usize) -> i64 {
        let nb: i64 = self.doubled_neighbors(i).iter().map(|&j| self.dim[j] as i64).sum();
        self.flavor[i] as i64 + nb - 2 * self.dim[i] as i64
    }

    /// `⟨μ₁, α_i^∨⟩ = l_i − a_i + Σ_{h: in = i} a_out`.
    pub fn mu1_pairing(&self, i: usize) -> i64 {
        let s: i64 = self.arrows_in(i).filter(|(a, _)| *a != i).map(|(a, _)| self.dim[a] as i64).sum();
        self.flavor[i] as i64 - self.dim[i] as i64 + s
    }

    /// `⟨μ₂, α_i^∨⟩ = −a_i + Σ_{h: out = i} a_in`.
    pub fn mu2_pairing(&self, i: usize) -> i64 {
        let s: i64 = self.arrows_out(i).filter(|(_, b)| *b != i).map(|(_, b)| self.dim[b] as i64).sum();
        -(self.dim[i] as i64) + s
    }
}

fn field_err(path: &str, msg: impl Into<String>) -> CbxError {
    CbxError::schema(Some(path.to_string()), msg)
}

fn as_count(v: &Value, path: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| field_err(path, "expected a nonnegative integer"))
}

/// Parses and validates a JSON theory document.
pub fn parse_theory(text: &str) -> Result<QuiverTheory> {
    let doc: Value = serde_json::from_str(text).map_err(|e| {
        CbxError::schema(Some(format!("line {}, column {}", e.line(), e.column())), e.to_string())
    })?;
    let obj = doc.as_object().ok_or_else(|| CbxError::schema(None, "top level must be an object"))?;
    for key in obj.keys() {
        if !["vertices", "arrows", "dim", "flavor", "root_system", "fold"].contains(&key.as_str()) {
            return Err(field_err(key, "unknown field"));
        }
    }
    let vertices: Vec<String> = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| field_err("vertices", "missing list of vertex labels"))?
        .iter()
        .enumerate()
        .map(|(k, v)| v.as_str().map(str::to_string).ok_or_else(|| field_err(&format!("vertices[{k}]"), "expected a string")))
        .collect::<Result<_>>()?;
    let index = |label: &Value, path: &str| -> Result<usize> {
        let s = label.as_str().ok_or_else(|| field_err(path, "expected a vertex label"))?;
        vertices.iter().position(|v| v == s).ok_or_else(|| field_err(path, format!("unknown vertex '{s}'")))
    };
    let mut arrows = Vec::new();
    if let Some(list) = obj.get("arrows") {
        let list = list.as_array().ok_or_else(|| field_err("arrows", "expected a list"))?;
        for (k, a) in list.iter().enumerate() {
            let path = format!("arrows[{k}]");
            let pair = a.as_array().filter(|p| p.len() == 2).ok_or_else(|| field_err(&path, "expected [source, target]"))?;
            arrows.push((index(&pair[0], &format!("{path}[0]"))?, index(&pair[1], &format!("{path}[1]"))?));
        }
    }
    let read_map = |key: &str, required: bool| -> Result<Vec<usize>> {
        let mut out = vec![0; vertices.len()];
        match obj.get(key) {
            None if required => Err(field_err(key, "missing field")),
            None => Ok(out),
            Some(m) => {
                let m = m.as_object().ok_or_else(|| field_err(key, "expected a map from vertex to integer"))?;
                let mut seen = vec![false; vertices.len()];
                for (label, v) in m {
                    let path = format!("{key}.{label}");
                    let i = index(&Value::String(label.clone()), &path)?;
                    out[i] = as_count(v, &path)?;
                    seen[i] = true;
                }
                if required {
                    if let Some(i) = seen.iter().position(|s| !s) {
                        return Err(field_err(key, format!("no value for vertex '{}'", vertices[i])));
                    }
                }
                Ok(out)
            }
        }
    };
    let dim = read_map("dim", true)?;
    let flavor = read_map("flavor", false)?;
    let root_system = match obj.get("root_system") {
        None => None,
        Some(rs) => {
            let series = rs
                .get("series")
                .and_then(Value::as_str)
                .and_then(|s| s.chars().next().filter(|_| s.len() == 1))
                .filter(|c| "ABCDEFG".contains(*c))
                .ok_or_else(|| field_err("root_system.series", "expected one of A, B, C, D, E, F, G"))?;
            let rank = rs.get("rank").map(|r| as_count(r, "root_system.rank")).transpose()?.ok_or_else(|| field_err("root_system.rank", "missing rank"))?;
            Some(RootSystemSpec { series, rank })
        }
    };
    let fold = match obj.get("fold") {
        None => None,
        Some(f) => {
            let cycles = f.get("cycles").unwrap_or(f);
            let cycles = cycles.as_array().ok_or_else(|| field_err("fold", "expected a list of vertex cycles"))?;
            let mut out = Vec::new();
            for (k, c) in cycles.iter().enumerate() {
                let c = c.as_array().ok_or_else(|| field_err(&format!("fold[{k}]"), "expected a list of vertex labels"))?;
                out.push(
                    c.iter()
                        .enumerate()
                        .map(|(m, v)| index(v, &format!("fold[{k}][{m}]")))
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            Some(out)
        }
    };
    let t = QuiverTheory { vertices, arrows, dim, flavor, root_system, fold };
    t.validate()?;
    Ok(t)
}

/// Per-vertex integer tuples.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coweight(pub Vec<Vec<i64>>);

impl Coweight {
    pub fn zero(q: &QuiverTheory) -> Self {
        Coweight(q.dim.iter().map(|&a| vec![0; a]).collect())
    }

    /// `ϖ_{i,n}`: the first `n` entries at vertex `i` equal to 1.
    pub fn fundamental(q: &QuiverTheory, i: usize, n: usize) -> Self {
        let mut c = Self::zero(q);
        for e in c.0[i].iter_mut().take(n) {
            *e = 1;
        }
        c
    }

    pub fn neg(&self) -> Self {
        Coweight(self.0.iter().map(|v| v.iter().map(|x| -x).collect()).collect())
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|v| v.windows(2).all(|w| w[0] >= w[1]))
    }

    /// Sorts every vertex tuple non-increasingly.
    pub fn dominant(&self) -> Self {
        Coweight(
            self.0
                .iter()
                .map(|v| {
                    let mut v = v.clone();
                    v.sort_unstable_by(|a, b| b.cmp(a));
                    v
                })
                .collect(),
        )
    }

    pub fn matches(&self, q: &QuiverTheory) -> bool {
        self.0.len() == q.n_vertices() && self.0.iter().zip(q.dim.iter()).all(|(v, &a)| v.len() == a)
    }
}

/// `Δ(λ) = −Σ_i Σ_{r<s}|λ^i_r−λ^i_s| + ½Σ_h Σ_{r,s}|λ^{out}_r−λ^{in}_s| + ½Σ_i l_i Σ_r|λ^i_r|`.
pub fn delta_degree(q: &QuiverTheory, lambda: &Coweight) -> Q {
    Q::new(twice_delta(q, lambda).into(), 2.into())
}

/// `2Δ(λ)` as an integer.
pub fn twice_delta(q: &QuiverTheory, lambda: &Coweight) -> i64 {
    let l = &lambda.0;
    let mut acc = 0i64;
    for v in l.iter() {
        for r in 0..v.len() {
            for s in r + 1..v.len() {
                acc -= 2 * (v[r] - v[s]).abs();
            }
        }
    }
    for (a, b) in q.arrows.iter().copied() {
        for x in l[a].iter() {
            for y in l[b].iter() {
                acc += (x - y).abs();
            }
        }
    }
    for (i, v) in l.iter().enumerate() {
        acc += q.flavor[i] as i64 * v.iter().map(|x| x.abs()).sum::<i64>();
    }
    acc
}

/// Multiplicities of the distinct values in each vertex tuple.
pub fn multiplicities(lambda: &Coweight) -> Vec<usize> {
    let mut out = Vec::new();
    for v in lambda.0.iter() {
        let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
        for x in v {
            *counts.entry(*x).or_insert(0) += 1;
        }
        out.extend(counts.into_values());
    }
    out
}

/// `P(t; λ) = ∏_blocks ∏_{d=1}^{m} 1/(1 − t^{2d})`.
pub fn dressing_factor(_q: &QuiverTheory, lambda: &Coweight, order: i64) -> Series {
    dressing_from_multiplicities(&multiplicities(lambda), order)
}

pub fn dressing_from_multiplicities(mults: &[usize], order: i64) -> Series {
    let mut s = Series::one(order);
    for &m in mults {
        for d in 1..=m as i64 {
            s = s.mul(&Series::geometric(2 * d, order));
        }
    }
    s
}

/// Integer square matrix acting on column vectors.
pub type IMat = Vec<Vec<i64>>;

fn mat_vec(m: &IMat, v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// A torus with coordinates `x_1..x_n` (linear functions), roots as integer
/// vectors in these coordinates, coweights as integer vectors with pairing
/// the dot product, and simple reflections acting on both sides.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub label: String,
    pub rank: usize,
    /// Cartan matrix `a_ij = ⟨α_i^∨, α_j⟩` for simple types; empty for
    /// products of general linear groups.
    pub cartan: IMat,
    /// All roots with their coroots (as coweights).
    pub roots: Vec<(Vec<i64>, Vec<i64>)>,
    refl_root: Vec<IMat>,
    refl_coweight: Vec<IMat>,
}

/// Cartan matrix of a simple type, `a_ij = ⟨α_i^∨, α_j⟩`, Bourbaki numbering.
pub fn cartan_matrix(series: char, n: usize) -> Result<IMat> {
    let bad = || CbxError::Unsupported(format!("no root system of type {series}{n}"));
    let mut c = identity(n);
    for row in c.iter_mut() {
        for x in row.iter_mut() {
            *x *= 2;
        }
    }
    let chain = |c: &mut IMat, upto: usize| {
        for i in 0..upto.saturating_sub(1) {
            c[i][i + 1] = -1;
            c[i + 1][i] = -1;
        }
    };
    match (series, n) {
        ('A', n) if n >= 1 => chain(&mut c, n),
        ('B', n) if n >= 2 => {
            chain(&mut c, n);
            c[n - 1][n - 2] = -2;
        }
        ('C', n) if n >= 2 => {
            chain(&mut c, n);
            c[n - 2][n - 1] = -2;
        }
        ('D', n) if n >= 4 => {
            chain(&mut c, n - 1);
            c[n - 3][n - 1] = -1;
            c[n - 1][n - 3] = -1;
        }
        ('E', n) if (6..=8).contains(&n) => {
            // 1-3-4-5-…, with 2 attached to 4.
            let edges: Vec<(usize, usize)> = [(0, 2), (2, 3), (3, 1)].into_iter().chain((3..n - 1).map(|k| (k, k + 1))).collect();
            for (a, b) in edges {
                c[a][b] = -1;
                c[b][a] = -1;
            }
        }
        ('F', 4) => {
            chain(&mut c, 4);
            c[2][1] = -2;
        }
        ('G', 2) => {
            c[0][1] = -1;
            c[1][0] = -3;
        }
        _ => return Err(bad()),
    }
    Ok(c)
}

impl RootDatum {
    /// Root datum of a simple type in simple-root coordinates; coweights
    /// are written by their pairings with the simple roots.
    pub fn simple(series: char, rank: usize) -> Result<Self> {
        let c = cartan_matrix(series, rank)?;
        let n = rank;
        let mut refl_root = Vec::new();
        let mut refl_coweight = Vec::new();
        for i in 0..n {
            // s_i(β) = β − ⟨α_i^∨, β⟩ α_i on root coordinates.
            let mut m = identity(n);
            for j in 0..n {
                m[i][j] -= c[i][j];
            }
            refl_root.push(m);
            // s_i(λ)_j = λ_j − λ_i a_ij on coweight labels.
            let mut w = identity(n);
            for j in 0..n {
                w[j][i] -= c[i][j];
            }
            refl_coweight.push(w);
        }
        let simple: Vec<(Vec<i64>, Vec<i64>)> = (0..n)
            .map(|i| ((0..n).map(|j| i64::from(i == j)).collect(), c[i].clone()))
            .collect();
        let mut rd = RootDatum { label: format!("{series}{rank}"), rank, cartan: c, roots: Vec::new(), refl_root, refl_coweight };
        rd.roots = rd.close_roots(simple);
        Ok(rd)
    }

    /// `∏_i GL(a_i)` with coordinates `w_{i,r}` in vertex order.
    pub fn general_linear(dims: &[usize]) -> Self {
        let n: usize = dims.iter().sum();
        let mut offsets = Vec::new();
        let mut o = 0;
        for &a in dims {
            offsets.push(o);
            o += a;
        }
        let mut refl = Vec::new();
        let mut roots = Vec::new();
        for (v, &a) in dims.iter().enumerate() {
            for r in 0..a {
                if r + 1 < a {
                    let mut m = identity(n);
                    let (x, y) = (offsets[v] + r, offsets[v] + r + 1);
                    m[x][x] = 0;
                    m[y][y] = 0;
                    m[x][y] = 1;
                    m[y][x] = 1;
                    refl.push(m);
                }
                for s in 0..a {
                    if r != s {
                        let mut e = vec![0; n];
                        e[offsets[v] + r] = 1;
                        e[offsets[v] + s] = -1;
                        roots.push((e.clone(), e));
                    }
                }
            }
        }
        let label = format!("GL{:?}", dims);
        RootDatum { label, rank: n, cartan: Vec::new(), roots, refl_root: refl.clone(), refl_coweight: refl }
    }

    fn close_roots(&self, seed: Vec<(Vec<i64>, Vec<i64>)>) -> Vec<(Vec<i64>, Vec<i64>)> {
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut out = Vec::new();
        let mut queue: VecDeque<_> = seed.into();
        while let Some((r, cr)) = queue.pop_front() {
            if !seen.insert(r.clone()) {
                continue;
            }
            for i in 0..self.refl_root.len() {
                queue.push_back((mat_vec(&self.refl_root[i], &r), mat_vec(&self.refl_coweight[i], &cr)));
            }
            out.push((r, cr));
        }
        out.sort();
        out
    }

    pub fn pairing(root: &[i64], coweight: &[i64]) -> i64 {
        root.iter().zip(coweight).map(|(a, b)| a * b).sum()
    }

    pub fn positive_roots(&self) -> Vec<&(Vec<i64>, Vec<i64>)> {
        self.roots.iter().filter(|(r, _)| r.iter().find(|x| **x != 0).map(|x| *x > 0).unwrap_or(false)).collect()
    }

    /// Highest root (maximal height) with its coroot.
    pub fn highest_root(&self) -> (Vec<i64>, Vec<i64>) {
        self.positive_roots()
            .into_iter()
            .max_by_key(|(r, _)| r.iter().sum::<i64>())
            .cloned()
            .expect("nonempty root system")
    }

    /// Fundamental coweight dual to the `i`-th simple root.
    pub fn fundamental_coweight(&self, i: usize) -> Vec<i64> {
        (0..self.rank).map(|j| i64::from(i == j)).collect()
    }

    pub fn is_dominant(&self, lambda: &[i64]) -> bool {
        self.positive_roots().iter().all(|(r, _)| Self::pairing(r, lambda) >= 0)
    }

    pub fn is_minuscule(&self, lambda: &[i64]) -> bool {
        self.roots.iter().all(|(r, _)| Self::pairing(r, lambda).abs() <= 1)
    }

    /// Orbit of `λ` with, for each element `wλ`, the matrix of `w` acting on
    /// root coordinates.
    pub fn weyl_orbit(&self, lambda: &[i64]) -> Vec<(Vec<i64>, IMat)> {
        let n = self.rank;
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::from([(lambda.to_vec(), identity(n))]);
        seen.insert(lambda.to_vec());
        while let Some((mu, w)) = queue.pop_front() {
            for i in 0..self.refl_root.len() {
                let nu = mat_vec(&self.refl_coweight[i], &mu);
                if seen.insert(nu.clone()) {
                    queue.push_back((nu, mat_mul(&self.refl_root[i], &w)));
                }
            }
            out.push((mu, w));
        }
        out
    }

    /// All Weyl group elements as pairs (root action, coweight action).
    pub fn weyl_group(&self) -> Vec<(IMat, IMat)> {
        let n = self.rank;
        let mut seen: HashSet<IMat> = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::from([(identity(n), identity(n))]);
        seen.insert(identity(n));
        while let Some((a, b)) = queue.pop_front() {
            for i in 0..self.refl_root.len() {
                let a2 = mat_mul(&self.refl_root[i], &a);
                if seen.insert(a2.clone()) {
                    queue.push_back((a2, mat_mul(&self.refl_coweight[i], &b)));
                }
            }
            out.push((a, b));
        }
        out
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl_group().len()
    }

    pub fn stabilizer_order(&self, lambda: &[i64]) -> usize {
        self.weyl_group().iter().filter(|(_, b)| mat_vec(b, lambda) == lambda).count()
    }

    /// Linear form (in coordinate slots) of a root vector.
    pub fn root_poly(root: &[i64], coord_slots: &[usize], nvars: usize) -> MPoly {
        let coeffs: Vec<_> = root.iter().zip(coord_slots).filter(|(c, _)| **c != 0).map(|(c, s)| (*s, q(*c))).collect();
        MPoly::linear(nvars, &coeffs, &q(0))
    }

    /// `wf`: substitutes `x_j ↦ w(x_j)` simultaneously, where `w` acts on
    /// root coordinates by `m`.
    pub fn act_on_poly(m: &IMat, f: &MPoly, coord_slots: &[usize]) -> MPoly {
        let nvars = f.nvars();
        let images: Vec<MPoly> = (0..coord_slots.len())
            .map(|j| {
                let col: Vec<i64> = m.iter().map(|row| row[j]).collect();
                Self::root_poly(&col, coord_slots, nvars)
            })
            .collect();
        let mut out = MPoly::zero(nvars);
        for (mono, c) in f.terms() {
            let mut t = MPoly::constant(nvars, c.clone());
            for (s, &e) in mono.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = match coord_slots.iter().position(|x| *x == s) {
                    Some(j) => images[j].clone(),
                    None => MPoly::var(nvars, s),
                };
                t = t.mul(&base.pow(e as u32));
            }
            out.add_assign(&t);
        }
        out
    }
}

/// Half-integer helper.
pub fn half(n: i64) -> Q {
    qf(n, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_jordan_and_a2() {
        let t = parse_theory(r#"{"vertices":["1"],"arrows":[["1","1"]],"dim":{"1":2},"flavor":{"1":1}}"#).unwrap();
        assert_eq!(t, QuiverTheory::jordan(2, 1));
        let t = parse_theory(r#"{"vertices":["1","2"],"arrows":[["1","2"]],"dim":{"1":2,"2":1},"flavor":{"1":1}}"#).unwrap();
        assert_eq!(t.arrows, vec![(0, 1)]);
        assert_eq!(t.flavor, vec![1, 0]);
        assert_eq!(t.var_table().gauge().len(), 3);
        assert_eq!(t.var_table().masses().len(), 1);
    }

    #[test]
    fn malformed_arrow_is_schema_error() {
        let e = parse_theory(r#"{"vertices":["1"],"arrows":[["1","7"]],"dim":{"1":1}}"#).unwrap_err();
        assert!(matches!(e, CbxError::Schema { location: Some(ref l), .. } if l == "arrows[0][1]"));
        let e = parse_theory("{\n  \"vertices\": [\"1\",\n}").unwrap_err();
        assert!(matches!(e, CbxError::Schema { location: Some(ref l), .. } if l.starts_with("line 3")));
    }

    #[test]
    fn weyl_orbits_and_orders() {
        let a1 = RootDatum::simple('A', 1).unwrap();
        assert_eq!(a1.weyl_orbit(&[1]).len(), 2);
        let (_, theta_co) = a1.highest_root();
        let orbit: Vec<_> = a1.weyl_orbit(&theta_co).into_iter().map(|(l, _)| l).collect();
        assert_eq!(orbit, vec![vec![2], vec![-2]]);
        let a2 = RootDatum::simple('A', 2).unwrap();
        assert_eq!(a2.weyl_orbit(&a2.fundamental_coweight(0)).len(), 3);
        for (s, n, order, nroots) in [('A', 3, 24, 12), ('B', 3, 48, 18), ('C', 3, 48, 18), ('D', 4, 192, 24), ('G', 2, 12, 12), ('F', 4, 1152, 48), ('E', 6, 51840, 72)] {
            let rd = RootDatum::simple(s, n).unwrap();
            assert_eq!(rd.roots.len(), nroots, "{s}{n}");
            if order <= 1152 {
                assert_eq!(rd.weyl_order(), order, "{s}{n}");
            }
        }
    }

    #[test]
    fn delta_values() {
        let a = QuiverTheory::type_a(&[1, 1], &[1, 0]);
        assert_eq!(delta_degree(&a, &Coweight::zero(&a)), q(0));
        let j = QuiverTheory::jordan(2, 3);
        assert_eq!(delta_degree(&j, &Coweight::fundamental(&j, 0, 1)), qf(3, 2));
    }

    #[test]
    fn dressing_examples() {
        let g = QuiverTheory::jordan(2, 0);
        let p = dressing_factor(&g, &Coweight(vec![vec![3, 3]]), 12);
        assert_eq!(p, Series::geometric(2, 12).mul(&Series::geometric(4, 12)));
        let p = dressing_factor(&g, &Coweight(vec![vec![3, 1]]), 12);
        assert_eq!(p, Series::geometric(2, 12).mul(&Series::geometric(2, 12)));
    }
}
