use std::collections::BTreeMap;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gvm::GvmConfig;
use crate::linalg::{q, Matrix, SparseVec, Q};
use crate::pairing::{predicted_radical_grade, PairedModule, RadicalEmbedding};
use crate::sl2::{FinIrrep, Gen, HomTable};

use super::{check_conditions, IntertwinerTable};

/// Options for [`build_components`].
#[derive(Clone, Debug, Default)]
pub struct BuildOptions {
    /// Run the construction even when the hypotheses fail.
    pub override_conditions: bool,
    /// Shuffle the spanning-set equations with this seed.
    pub equation_seed: Option<u64>,
    /// Basis cap for the modules built along the way.
    pub basis_cap: Option<usize>,
}

/// A functional on one grade of a module, for each tensor column, stored
/// as a sparse vector over the module's global indices.
type Functionals = Vec<SparseVec>;

/// One equation `Σ_b coeff_b φ(b) = rhs` coming from the spanning vector
/// `g(-n) w`.
struct Equation {
    lhs: SparseVec,
    rhs: Vec<Q>,
}

/// Builds the component maps `Y_{-m}`, `0 ≤ m ≤ N`, determined by `f`.
///
/// Functionals `Y_{-m}(u) v ↦ <Y_{-m}(u) v, ·>` are solved grade by grade
/// from the relations on spanning vectors `g(-n) w`, transported into the
/// complement `K` of the radical, and the radical part is solved the same
/// way inside the module parametrizing the radical.
pub fn build_components(f: &HomTable, level: usize, max_grade: usize, opts: &BuildOptions) -> Result<IntertwinerTable> {
    let (p, qq, r) = (f.p, f.q, f.r);
    if !f.intertwines() {
        return Err(Error::Domain("the input map is not an sl(2)-homomorphism".into()));
    }
    let report = check_conditions(p, qq, r, level);
    if !report.passes() && !opts.override_conditions {
        let reason = report.failure_reason().unwrap_or_default();
        return Err(if report.radical_irreducible_known {
            Error::HypothesisFailure(reason)
        } else {
            Error::Indeterminate(reason)
        });
    }
    let mut cfg = GvmConfig::at_level(r, level as i64, max_grade);
    if let Some(cap) = opts.basis_cap {
        cfg = cfg.with_cap(cap);
    }
    let target = PairedModule::build(cfg)?;
    let emb = RadicalEmbedding::build(&target)?;
    if let Some(expected) = predicted_radical_grade(r, level) {
        if expected != emb.offset {
            return Err(Error::JNotIrreducible {
                grade: emb.offset,
                detail: format!("radical starts at grade {} but the resolution predicts {expected}", emb.offset),
            });
        }
    }
    let mut rng = opts.equation_seed.map(ChaCha8Rng::seed_from_u64);
    let builder = Builder { f, target: &target, emb: &emb, arg: FinIrrep::new(p) };
    builder.run(max_grade, level, rng.as_mut())
}

struct Builder<'a> {
    f: &'a HomTable,
    target: &'a PairedModule,
    emb: &'a RadicalEmbedding,
    arg: FinIrrep,
}

impl Builder<'_> {
    fn columns(&self) -> usize {
        self.f.tensor().dim()
    }

    /// `φ(g(0) u_i, v_j)` from the functionals at a lower grade.
    fn shift_by_zero_mode(&self, g: Gen, lower: &Functionals) -> Functionals {
        let t = self.f.tensor();
        (0..self.columns())
            .map(|c| {
                let (i, j) = t.split(c);
                match self.arg.act_basis(g, i) {
                    Some((x, ti)) => lower[t.index(ti, j)].scaled(&x),
                    None => SparseVec::new(),
                }
            })
            .collect()
    }

    fn run(&self, max_grade: usize, level: usize, mut rng: Option<&mut ChaCha8Rng>) -> Result<IntertwinerTable> {
        let tm = self.target.module();
        let t = self.f.tensor();
        let ncol = self.columns();
        let offset = self.emb.offset;
        let sm = self.emb.source().module();

        let mut phi: Vec<Functionals> = Vec::with_capacity(max_grade + 1);
        let mut psi: BTreeMap<usize, Functionals> = BTreeMap::new();
        let mut k_part: Vec<Vec<SparseVec>> = Vec::with_capacity(max_grade + 1);
        let mut j_part: Vec<Vec<SparseVec>> = Vec::with_capacity(max_grade + 1);

        let base: Vec<SparseVec> = (0..ncol)
            .map(|c| {
                let (i, j) = t.split(c);
                let img = self.f.apply(i, j);
                img.iter().map(|(k, x)| (tm.lowest(k).iter().next().expect("unit").0, x.clone())).collect()
            })
            .collect();
        phi.push(
            base.iter()
                .map(|y| tm.grade_range(0).map(|w| (w, self.target.pair(y, &SparseVec::unit(w)))).collect())
                .collect(),
        );
        k_part.push(base);
        j_part.push(vec![SparseVec::new(); ncol]);

        for m in 1..=max_grade {
            let mut eqs = Vec::new();
            for g in Gen::ALL {
                for n in 1..=m {
                    let lower = self.shift_by_zero_mode(g, &phi[m - n]);
                    for w in tm.grade_range(m - n) {
                        let lhs = tm.act(g, -(n as i64), &SparseVec::unit(w)).value;
                        let rhs = lower.iter().map(|fc| -fc.get(w)).collect();
                        eqs.push(Equation { lhs, rhs });
                    }
                }
            }
            if let Some(r) = rng.as_deref_mut() {
                eqs.shuffle(r);
            }
            let phi_m = solve_functionals(m, tm.grade_range(m).collect(), &eqs, ncol, |i| tm.weight_of(i))?;
            for jv in self.target.radical_basis(m)? {
                if phi_m.iter().any(|fc| !fc.dot(jv).is_zero()) {
                    return Err(Error::InconsistentRecursion {
                        grade: m,
                        detail: "the functional fails to annihilate J, which forces f = 0".into(),
                    });
                }
            }
            let yk = self.target.phi_transport(m, &phi_m)?;
            phi.push(phi_m);

            let yj = if m <= offset {
                if m == offset {
                    psi.insert(0, vec![SparseVec::new(); ncol]);
                }
                vec![SparseVec::new(); ncol]
            } else {
                let sd = m - offset;
                let src = self.emb.source();
                let mut eqs = Vec::new();
                for g in Gen::ALL {
                    for n in 1..=sd {
                        let lower = self.shift_by_zero_mode(g, &psi[&(sd - n)]);
                        let pulled: Vec<SparseVec> = yk
                            .iter()
                            .map(|y| {
                                let lowered = tm.act(g, n as i64, y).value;
                                self.emb.pull_back(&self.target.project_j(&lowered))
                            })
                            .collect::<Result<_>>()?;
                        for w in sm.grade_range(sd - n) {
                            let lhs = sm.act(g, -(n as i64), &SparseVec::unit(w)).value;
                            let wv = SparseVec::unit(w);
                            let rhs = (0..ncol).map(|c| src.pair(&pulled[c], &wv) - lower[c].get(w)).collect();
                            eqs.push(Equation { lhs, rhs });
                        }
                    }
                }
                if let Some(r) = rng.as_deref_mut() {
                    eqs.shuffle(r);
                }
                let psi_m = solve_functionals(m, sm.grade_range(sd).collect(), &eqs, ncol, |i| sm.weight_of(i))?;
                for jv in src.radical_basis(sd)? {
                    if psi_m.iter().any(|fc| !fc.dot(jv).is_zero()) {
                        return Err(Error::InconsistentRecursion {
                            grade: m,
                            detail: "the radical part fails to annihilate the radical of its parametrizing module".into(),
                        });
                    }
                }
                let a = src.phi_transport(sd, &psi_m)?;
                psi.insert(sd, psi_m);
                a.iter().map(|x| self.emb.embed(x)).collect()
            };
            k_part.push(yk);
            j_part.push(yj);
        }

        let components = k_part
            .iter()
            .zip(&j_part)
            .map(|(ks, js)| {
                ks.iter()
                    .zip(js)
                    .map(|(k, j)| {
                        let mut y = k.clone();
                        y.add_scaled(j, &q(1));
                        y
                    })
                    .collect()
            })
            .collect();
        Ok(IntertwinerTable {
            p: self.f.p,
            q: self.f.q,
            r: self.f.r,
            level,
            max_grade,
            hom: self.f.clone(),
            components,
            k_part,
            j_part,
            radical_offset: Some(offset),
            quotient: false,
        })
    }
}

/// Solves for functionals on the basis `unknowns` of one grade, one per
/// tensor column, from the given equations. Unknowns are grouped by weight
/// since every equation involves a single weight.
fn solve_functionals(
    grade: usize,
    unknowns: Vec<usize>,
    eqs: &[Equation],
    ncol: usize,
    weight: impl Fn(usize) -> i64,
) -> Result<Functionals> {
    let mut by_weight: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for &u in &unknowns {
        by_weight.entry(weight(u)).or_default().push(u);
    }
    let mut eq_by_weight: BTreeMap<i64, Vec<&Equation>> = BTreeMap::new();
    for e in eqs {
        match e.lhs.iter().next() {
            Some((i, _)) => eq_by_weight.entry(weight(i)).or_default().push(e),
            None => {
                if e.rhs.iter().any(|x| !x.is_zero()) {
                    return Err(Error::InconsistentRecursion {
                        grade,
                        detail: "a vanishing spanning vector carries a nonzero value".into(),
                    });
                }
            }
        }
    }
    let mut out = vec![SparseVec::new(); ncol];
    for (w, cols) in by_weight {
        let pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let rows = eq_by_weight.remove(&w).unwrap_or_default();
        let mut a = Matrix::zeros(rows.len(), cols.len());
        let mut b = Matrix::zeros(rows.len(), ncol);
        for (ri, e) in rows.iter().enumerate() {
            for (i, x) in e.lhs.iter() {
                a.set(ri, pos[&i], x.clone());
            }
            for (c, x) in e.rhs.iter().enumerate() {
                b.set(ri, c, x.clone());
            }
        }
        let sol = a.solve(&b).map_err(|bad| Error::InconsistentRecursion {
            grade,
            detail: format!("spanning-set equations at weight {w} contradict each other (tensor column {})", bad.column),
        })?;
        if !sol.unique {
            return Err(Error::InconsistentRecursion {
                grade,
                detail: format!("spanning-set equations at weight {w} do not determine the functional"),
            });
        }
        for (c, o) in out.iter_mut().enumerate() {
            for (p, &i) in cols.iter().enumerate() {
                o.add_term(i, sol.x.get(p, c));
            }
        }
    }
    if !eq_by_weight.is_empty() {
        for (w, rows) in eq_by_weight {
            if rows.iter().any(|e| e.rhs.iter().any(|x| !x.is_zero())) {
                return Err(Error::InconsistentRecursion { grade, detail: format!("equations at missing weight {w}") });
            }
        }
    }
    Ok(out)
}
