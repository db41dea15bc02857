//! The invariant pairing on a generalized Verma module, its radical, a
//! sl(2)-stable complement of the radical, and the form carried by the
//! radical through its generating singular vector.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::affine::Monomial;
use crate::error::{Error, Result};
use crate::gvm::{GvmConfig, Module};
use crate::linalg::{span_rank, Matrix, SparseVec, Q};
use crate::sl2::Gen;
use crate::weyl::{representation, resolution_weights};

/// `θ(y) u` for a PBW monomial `y = g_1(-n_1)…g_k(-n_k)`, which equals
/// `(-1)^k g_k(n_k)…g_1(n_1) u` with `g_1(n_1)` applied first.
pub fn apply_anti_involution(module: &Module, u: &SparseVec, mono: &Monomial) -> SparseVec {
    let mut cur = u.clone();
    for x in mono.factors() {
        cur = module.act(x.label, -x.mode, &cur).value;
    }
    if mono.len() % 2 == 1 {
        cur.scaled(&-Q::one())
    } else {
        cur
    }
}

/// The pairing computed directly from its definition
/// `<u, y ⊗ v> = <P(θ(y) u), v>` with `P` the projection to grade 0.
pub fn pair_via_involution(module: &Module, u: &SparseVec, v: &SparseVec) -> Q {
    let irrep = module.irrep();
    let mut acc = Q::zero();
    for (j, c) in v.iter() {
        let (mono, k) = module.basis_element(j);
        let image = apply_anti_involution(module, u, mono);
        for (i, x) in image.iter() {
            if module.grade_of(i) == 0 {
                let (_, a) = module.basis_element(i);
                acc += irrep.pairing(a, k) * x * c;
            }
        }
    }
    acc
}

/// One row of a rank report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankRow {
    pub grade: usize,
    pub weight: i64,
    pub dim: usize,
    pub rank: usize,
    pub corank: usize,
}

/// Radical and complement inside one (grade, weight) block.
#[derive(Clone, Debug)]
pub struct BlockSplit {
    pub j: Vec<SparseVec>,
    pub k: Vec<SparseVec>,
    indices: Vec<usize>,
    /// Inverse of the change of basis `[J | K]`.
    coords: Matrix,
}

impl BlockSplit {
    fn coordinates(&self, v: &SparseVec) -> Vec<Q> {
        let local: Vec<Q> = self.indices.iter().map(|&i| v.get(i)).collect();
        let sv = SparseVec::from_dense(&local);
        self.coords.mul_sparse(&sv).to_dense(self.indices.len())
    }

    fn combine(&self, basis: &[SparseVec], coeffs: &[Q]) -> SparseVec {
        let mut out = SparseVec::new();
        for (b, c) in basis.iter().zip(coeffs) {
            out.add_scaled(b, c);
        }
        out
    }
}

/// The decomposition of one grade as `K ⊕ J`.
#[derive(Clone, Debug, Default)]
pub struct GradeSplit {
    pub blocks: BTreeMap<i64, BlockSplit>,
    /// Set when an isotypic type meets both the radical and its complement.
    pub warnings: Vec<String>,
}

impl GradeSplit {
    pub fn j_dim(&self) -> usize {
        self.blocks.values().map(|b| b.j.len()).sum()
    }

    pub fn k_dim(&self) -> usize {
        self.blocks.values().map(|b| b.k.len()).sum()
    }

    pub fn j_basis(&self) -> Vec<SparseVec> {
        self.blocks.values().flat_map(|b| b.j.iter().cloned()).collect()
    }

    pub fn k_basis(&self) -> Vec<SparseVec> {
        self.blocks.values().flat_map(|b| b.k.iter().cloned()).collect()
    }
}

/// A module together with its Gram blocks, radical and `K ⊕ J` split.
#[derive(Clone, Debug)]
pub struct PairedModule {
    module: Module,
    /// `gram[d][w]` has rows `block(d, -w)` and columns `block(d, w)`.
    gram: Vec<BTreeMap<i64, Matrix>>,
    pos: Vec<usize>,
    radical: Vec<Vec<SparseVec>>,
    splits: Vec<GradeSplit>,
}

impl PairedModule {
    pub fn build(cfg: GvmConfig) -> Result<Self> {
        Ok(PairedModule::new(Module::build(cfg)?))
    }

    pub fn new(module: Module) -> Self {
        let mut pos = vec![0; module.dim()];
        for d in 0..=module.max_grade() {
            for w in module.weights_at(d) {
                for (p, &i) in module.block(d, w).iter().enumerate() {
                    pos[i] = p;
                }
            }
        }
        let mut pm = PairedModule { module, gram: Vec::new(), pos, radical: Vec::new(), splits: Vec::new() };
        for d in 0..=pm.module.max_grade() {
            let g = pm.compute_gram(d);
            pm.gram.push(g);
        }
        for d in 0..=pm.module.max_grade() {
            let r = pm.compute_radical(d);
            pm.radical.push(r);
            let s = pm.compute_split(d);
            pm.splits.push(s);
        }
        pm
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    fn compute_gram(&self, d: usize) -> BTreeMap<i64, Matrix> {
        let m = &self.module;
        let mut out = BTreeMap::new();
        for w in m.weights_at(d) {
            let rows = m.block(d, -w);
            let cols = m.block(d, w);
            let mut g = Matrix::zeros(rows.len(), cols.len());
            if d == 0 {
                let irrep = m.irrep();
                for (ri, &i) in rows.iter().enumerate() {
                    for (cj, &j) in cols.iter().enumerate() {
                        g.set(ri, cj, irrep.pairing(m.basis_element(i).1, m.basis_element(j).1));
                    }
                }
            } else if !rows.is_empty() {
                for (cj, &j) in cols.iter().enumerate() {
                    let (mono, k) = m.basis_element(j);
                    let (x1, rest) = mono.split_first().expect("positive grade");
                    let sub = m.index_of(&rest, k).expect("basis element");
                    let dd = m.grade_of(sub);
                    let ww = m.weight_of(sub);
                    let lower = &self.gram[dd][&ww];
                    let col = self.pos[sub];
                    for (ri, &i) in rows.iter().enumerate() {
                        let image = m.act(x1.label, -x1.mode, &SparseVec::unit(i)).value;
                        let mut acc = Q::zero();
                        for (t, c) in image.iter() {
                            acc += c * lower.get(self.pos[t], col);
                        }
                        g.set(ri, cj, -acc);
                    }
                }
            }
            out.insert(w, g);
        }
        out
    }

    /// Gram matrix of the block `(d, w)`: rows `block(d, -w)`, columns `block(d, w)`.
    pub fn gram_block(&self, d: usize, w: i64) -> Result<Matrix> {
        self.check_grade(d)?;
        Ok(self.gram[d].get(&w).cloned().unwrap_or_else(|| Matrix::zeros(0, 0)))
    }

    fn check_grade(&self, d: usize) -> Result<()> {
        if d > self.module.max_grade() {
            return Err(Error::GradeOutOfRange { grade: d, max: self.module.max_grade() });
        }
        Ok(())
    }

    /// The invariant pairing. Vanishes between distinct grades and
    /// between weights that do not sum to zero.
    pub fn pair(&self, u: &SparseVec, v: &SparseVec) -> Q {
        let m = &self.module;
        let mut acc = Q::zero();
        for (j, b) in v.iter() {
            let (d, w) = (m.grade_of(j), m.weight_of(j));
            let g = &self.gram[d][&w];
            if g.rows() == 0 {
                continue;
            }
            for (i, a) in u.iter() {
                if m.grade_of(i) == d && m.weight_of(i) == -w {
                    let x = g.get(self.pos[i], self.pos[j]);
                    if !x.is_zero() {
                        acc += a * b * x;
                    }
                }
            }
        }
        acc
    }

    fn compute_radical(&self, d: usize) -> Vec<SparseVec> {
        let m = &self.module;
        let mut out = Vec::new();
        for w in m.weights_at(d) {
            let g = &self.gram[d][&w];
            let cols = m.block(d, w);
            let kernel = if g.rows() == 0 {
                (0..cols.len()).map(|c| SparseVec::unit(c).to_dense(cols.len())).collect()
            } else {
                g.nullspace()
            };
            for v in kernel {
                out.push(m.from_block_coords(d, w, &v));
            }
        }
        out
    }

    /// Basis of the radical at grade `d`, sorted by weight.
    pub fn radical_basis(&self, d: usize) -> Result<&[SparseVec]> {
        self.check_grade(d)?;
        Ok(&self.radical[d])
    }

    pub fn rank_rows(&self, d: usize) -> Result<Vec<RankRow>> {
        self.check_grade(d)?;
        Ok(self
            .module
            .weights_at(d)
            .into_iter()
            .map(|w| {
                let g = &self.gram[d][&w];
                let dim = self.module.block(d, w).len();
                let rank = if g.rows() == 0 { 0 } else { g.rank() };
                RankRow { grade: d, weight: w, dim, rank, corank: dim - rank }
            })
            .collect())
    }

    fn compute_split(&self, d: usize) -> GradeSplit {
        let m = &self.module;
        let mut j_by_weight: BTreeMap<i64, Vec<SparseVec>> = BTreeMap::new();
        for v in &self.radical[d] {
            let (i, _) = v.iter().next().expect("nonzero");
            j_by_weight.entry(m.weight_of(i)).or_default().push(v.clone());
        }
        let mut k_by_weight: BTreeMap<i64, Vec<SparseVec>> = BTreeMap::new();
        let mut warnings = Vec::new();
        for w in m.weights_at(d).into_iter().filter(|&w| w >= 0) {
            let cols = m.block(d, w);
            let e = m.block_action(Gen::E, 0, d, w);
            let hw: Vec<Vec<Q>> = if e.rows() == 0 {
                (0..cols.len()).map(|c| SparseVec::unit(c).to_dense(cols.len())).collect()
            } else {
                e.nullspace()
            };
            let js: Vec<Vec<Q>> = j_by_weight
                .get(&w)
                .map(|v| v.iter().map(|x| m.block_coords(d, w, x)).collect())
                .unwrap_or_default();
            let j_hw: Vec<Vec<Q>> = if js.is_empty() {
                Vec::new()
            } else {
                let jm = Matrix::from_columns(cols.len(), &js.iter().map(|v| SparseVec::from_dense(v)).collect::<Vec<_>>());
                let ej = if e.rows() == 0 { Matrix::zeros(0, js.len()) } else { e.mul(&jm) };
                let kern = if ej.rows() == 0 {
                    (0..js.len()).map(|c| SparseVec::unit(c).to_dense(js.len())).collect()
                } else {
                    ej.nullspace()
                };
                kern.iter()
                    .map(|c| jm.mul_sparse(&SparseVec::from_dense(c)).to_dense(cols.len()))
                    .collect()
            };
            if !j_hw.is_empty() && j_hw.len() < hw.len() {
                warnings.push(format!(
                    "grade {d}, weight {w}: highest weight space of dimension {} meets the radical in dimension {}",
                    hw.len(),
                    j_hw.len()
                ));
            }
            let mut span: Vec<SparseVec> = j_hw.iter().map(|v| SparseVec::from_dense(v)).collect();
            let mut complement = Vec::new();
            for v in &hw {
                let sv = SparseVec::from_dense(v);
                span.push(sv.clone());
                if span_rank(&span, cols.len()) == span.len() {
                    complement.push(m.from_block_coords(d, w, v));
                } else {
                    span.pop();
                }
            }
            for c in complement {
                let mut cur = c;
                for step in 0..=w {
                    k_by_weight.entry(w - 2 * step).or_default().push(cur.clone());
                    cur = m.act(Gen::F, 0, &cur).value;
                }
            }
        }
        let mut blocks = BTreeMap::new();
        for w in m.weights_at(d) {
            let indices = m.block(d, w).to_vec();
            let j = j_by_weight.remove(&w).unwrap_or_default();
            let k = k_by_weight.remove(&w).unwrap_or_default();
            assert_eq!(j.len() + k.len(), indices.len(), "K and J must span the block");
            let local: Vec<SparseVec> = j
                .iter()
                .chain(&k)
                .map(|v| SparseVec::from_dense(&m.block_coords(d, w, v)))
                .collect();
            let coords = Matrix::from_columns(indices.len(), &local).inverse().expect("K ⊕ J is direct");
            blocks.insert(w, BlockSplit { j, k, indices, coords });
        }
        GradeSplit { blocks, warnings }
    }

    pub fn kj_split(&self, d: usize) -> Result<&GradeSplit> {
        self.check_grade(d)?;
        Ok(&self.splits[d])
    }

    /// Splits an element as `(P_K v, P_J v)`.
    pub fn project(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let m = &self.module;
        let mut groups: BTreeMap<(usize, i64), ()> = BTreeMap::new();
        for (i, _) in v.iter() {
            groups.insert((m.grade_of(i), m.weight_of(i)), ());
        }
        let mut pk = SparseVec::new();
        let mut pj = SparseVec::new();
        for (d, w) in groups.into_keys() {
            let b = &self.splits[d].blocks[&w];
            let c = b.coordinates(v);
            let nj = b.j.len();
            pj.add_scaled(&b.combine(&b.j, &c[..nj]), &Q::one());
            pk.add_scaled(&b.combine(&b.k, &c[nj..]), &Q::one());
        }
        (pk, pj)
    }

    pub fn project_k(&self, v: &SparseVec) -> SparseVec {
        self.project(v).0
    }

    pub fn project_j(&self, v: &SparseVec) -> SparseVec {
        self.project(v).1
    }

    /// Matrix of `P_K` (or `P_J`) on the block `(d, w)` in its standard basis.
    pub fn projection_matrix(&self, d: usize, w: i64, onto_k: bool) -> Matrix {
        let idx = self.module.block(d, w);
        let cols: Vec<SparseVec> = idx
            .iter()
            .map(|&i| {
                let (pk, pj) = self.project(&SparseVec::unit(i));
                let v = if onto_k { pk } else { pj };
                SparseVec::from_dense(&self.module.block_coords(d, w, &v))
            })
            .collect();
        Matrix::from_columns(idx.len(), &cols)
    }

    /// For each functional on grade `d` (coefficient `i` is its value on
    /// basis vector `i`), the unique `x ∈ K(d)` with `pair(x, b) = φ(b)`.
    pub fn phi_transport(&self, d: usize, functionals: &[SparseVec]) -> Result<Vec<SparseVec>> {
        self.check_grade(d)?;
        let split = &self.splits[d];
        for phi in functionals {
            for jv in split.j_basis() {
                if !phi.dot(&jv).is_zero() {
                    return Err(Error::FunctionalNotAnnihilatingJ { grade: d });
                }
            }
        }
        let m = &self.module;
        let mut out = vec![SparseVec::new(); functionals.len()];
        for w in m.weights_at(d) {
            let kb = &split.blocks[&(-w)].k;
            if kb.is_empty() {
                continue;
            }
            let cols = m.block(d, w);
            // pair(K_t, b_j) for every K vector t and column j.
            let mut a = Matrix::zeros(cols.len(), kb.len());
            for (t, kv) in kb.iter().enumerate() {
                for (cj, &j) in cols.iter().enumerate() {
                    a.set(cj, t, self.pair(kv, &SparseVec::unit(j)));
                }
            }
            let mut rhs = Matrix::zeros(cols.len(), functionals.len());
            for (f, phi) in functionals.iter().enumerate() {
                for (cj, &j) in cols.iter().enumerate() {
                    rhs.set(cj, f, phi.get(j));
                }
            }
            let sol = a.solve(&rhs).map_err(|_| Error::FunctionalNotAnnihilatingJ { grade: d })?;
            for (f, o) in out.iter_mut().enumerate() {
                for (t, kv) in kb.iter().enumerate() {
                    o.add_scaled(kv, sol.x.get(t, f));
                }
            }
        }
        Ok(out)
    }
}

/// The isomorphism between the radical of `V^{M(r)}` and the irreducible
/// quotient of `V^{M(r')}`, realized through the singular vector that
/// generates the radical.
#[derive(Clone, Debug)]
pub struct RadicalEmbedding {
    /// Lowest grade of the radical.
    pub offset: usize,
    /// Highest weight of the lowest radical grade.
    pub top_weight: usize,
    /// The generating singular vector, first nonzero coordinate 1.
    pub generator: SparseVec,
    source: PairedModule,
    images: Vec<SparseVec>,
    target_grade: Vec<usize>,
    target_weight: Vec<i64>,
}

impl RadicalEmbedding {
    /// Locates the radical of `target` and checks that it is generated by a
    /// single sl(2)-irreducible lowest piece and fills the radical up to the
    /// truncation grade.
    pub fn build(target: &PairedModule) -> Result<Self> {
        let tm = target.module();
        let max = tm.max_grade();
        let offset = (0..=max)
            .find(|&d| !target.radical[d].is_empty())
            .ok_or(Error::TruncationTooShallow { first_radical: None, max })?;
        let lowest = &target.radical[offset];
        let top = lowest
            .iter()
            .map(|v| tm.weight_of(v.iter().next().expect("nonzero").0))
            .max()
            .expect("nonempty radical");
        let tops: Vec<&SparseVec> =
            lowest.iter().filter(|v| tm.weight_of(v.iter().next().expect("nonzero").0) == top).collect();
        if top < 0 || tops.len() != 1 || lowest.len() != top as usize + 1 {
            return Err(Error::JNotIrreducible {
                grade: offset,
                detail: format!("lowest radical piece has dimension {} and top weight {top}", lowest.len()),
            });
        }
        let mut generator = tops[0].clone();
        let lead = generator.iter().next().expect("nonzero").1.clone();
        generator = generator.scaled(&lead.recip());
        let top_weight = top as usize;
        let level = tm.level().clone();
        let source = PairedModule::build(GvmConfig::new(top_weight, level, max - offset).with_cap(tm.config().basis_cap))?;
        let sm = source.module();
        let mut f_powers = vec![generator.clone()];
        for k in 1..=top_weight {
            let next = tm.act(Gen::F, 0, &f_powers[k - 1]).value;
            f_powers.push(next);
        }
        let mut images = Vec::with_capacity(sm.dim());
        for i in 0..sm.dim() {
            let (mono, k) = sm.basis_element(i);
            let a = tm.apply_monomial(mono, &f_powers[k]);
            debug_assert!(!a.truncated);
            images.push(a.value);
        }
        let emb = RadicalEmbedding {
            offset,
            top_weight,
            generator,
            source,
            images,
            target_grade: (0..tm.dim()).map(|i| tm.grade_of(i)).collect(),
            target_weight: (0..tm.dim()).map(|i| tm.weight_of(i)).collect(),
        };
        for d in 0..=max - offset {
            let imgs: Vec<SparseVec> = emb.source.module().grade_range(d).map(|i| emb.images[i].clone()).collect();
            let rad = &target.radical[offset + d];
            let mut both = rad.clone();
            both.extend(imgs.iter().cloned());
            let r_img = span_rank(&imgs, tm.dim());
            let r_both = span_rank(&both, tm.dim());
            if r_img != rad.len() || r_both != rad.len() {
                return Err(Error::JNotIrreducible {
                    grade: offset + d,
                    detail: format!(
                        "radical has dimension {} but the submodule generated by the singular vector has dimension {r_img}",
                        rad.len()
                    ),
                });
            }
        }
        Ok(emb)
    }

    /// The paired module `V^{M(r')}` that parametrizes the radical.
    pub fn source(&self) -> &PairedModule {
        &self.source
    }

    /// `ι(x)` for `x` in the source module.
    pub fn embed(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in x.iter() {
            out.add_scaled(&self.images[i], c);
        }
        out
    }

    /// Some preimage of a radical element (well defined modulo the radical
    /// of the source).
    pub fn pull_back(&self, x: &SparseVec) -> Result<SparseVec> {
        let sm = self.source.module();
        let mut out = SparseVec::new();
        let mut by_block: BTreeMap<(usize, i64), SparseVec> = BTreeMap::new();
        for (i, c) in x.iter() {
            let key = (self.target_grade[i], self.target_weight[i]);
            by_block.entry(key).or_default().add_term(i, c);
        }
        for ((d, w), part) in by_block {
            if d < self.offset {
                return Err(Error::JNotIrreducible { grade: d, detail: "element below the radical".into() });
            }
            let sd = d - self.offset;
            let src = sm.block(sd, w);
            let cols: Vec<SparseVec> = src.iter().map(|&i| self.images[i].clone()).collect();
            let mut rows: HashMap<usize, usize> = HashMap::new();
            for v in cols.iter().chain(std::iter::once(&part)) {
                for (i, _) in v.iter() {
                    let n = rows.len();
                    rows.entry(i).or_insert(n);
                }
            }
            let remap = |v: &SparseVec| -> SparseVec { v.iter().map(|(i, c)| (rows[&i], c.clone())).collect() };
            let a = Matrix::from_columns(rows.len(), &cols.iter().map(remap).collect::<Vec<_>>());
            let b = Matrix::from_columns(rows.len(), &[remap(&part)]);
            let sol = a.solve(&b).map_err(|_| Error::JNotIrreducible {
                grade: d,
                detail: "element is not in the radical".into(),
            })?;
            for (t, &i) in src.iter().enumerate() {
                out.add_term(i, sol.x.get(t, 0));
            }
        }
        Ok(out)
    }

    /// The nondegenerate form on the radical carried over from the source.
    pub fn j_form(&self, x: &SparseVec, y: &SparseVec) -> Result<Q> {
        Ok(self.source.pair(&self.pull_back(x)?, &self.pull_back(y)?))
    }
}

/// Lowest radical grade predicted by the resolution, if `r` is a resolution weight.
pub fn predicted_radical_grade(r: usize, level: usize) -> Option<usize> {
    let (j, n) = representation(r, level)?;
    let terms = resolution_weights(n, level, j + 1).ok()?;
    Some(terms[j + 1].shift - terms[j].shift)
}
