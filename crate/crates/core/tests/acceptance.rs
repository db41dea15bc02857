use std::process::ExitCode;
use std::time::Instant;

use affsl2::affine::{bracket, AffineGenerator};
use affsl2::gvm::GvmConfig;
use affsl2::intertwiner::{
    descend_to_irreducible, extend_to_full, fusion_gvm, verify_component_commutators,
    verify_component_commutators_in, verify_jacobi_truncated, FusionValue,
};
use affsl2::linalg::{q, SparseVec};
use affsl2::pairing::PairedModule;
use affsl2::sl2::{clebsch_gordan_hom, TensorSpace};
use affsl2::weyl::{euler_dims, m_of};
use affsl2::{build_components, BuildOptions, Gen, IntertwinerTable, Module};

type Outcome = Result<String, String>;

fn bracket_fidelity() -> Outcome {
    let mut checked = 0usize;
    for (n, level) in [(0usize, 1i64), (1, 2)] {
        let m = Module::build(GvmConfig::at_level(n, level, 7)).map_err(|e| e.to_string())?;
        let lq = q(level);
        for v in 0..m.grade_range(3).end {
            let v = SparseVec::unit(v);
            for g1 in Gen::ALL {
                for m1 in -2..=2i64 {
                    for g2 in Gen::ALL {
                        for m2 in -2..=2i64 {
                            let x = AffineGenerator::new(g1, m1);
                            let y = AffineGenerator::new(g2, m2);
                            let xy = m.act(g1, m1, &m.act(g2, m2, &v).value);
                            let yx = m.act(g2, m2, &m.act(g1, m1, &v).value);
                            if xy.truncated || yx.truncated {
                                return Err(format!("truncation reached for {x} {y}"));
                            }
                            let mut lhs = xy.value;
                            lhs.add_scaled(&yx.value, &q(-1));
                            let br = bracket(x, y, &lq);
                            let mut rhs = v.scaled(&br.central);
                            if let Some((c, z)) = br.term {
                                rhs.add_scaled(&m.act(z.label, z.mode, &v).value, &c);
                            }
                            checked += 1;
                            if lhs != rhs {
                                return Err(format!("[{x}, {y}] mismatch on n={n}, level={level}"));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{checked} commutators"))
}

fn radical_vs_resolution() -> Outcome {
    let mut rows = 0usize;
    for level in 1..=2usize {
        for n in 0..=level {
            let pm = PairedModule::build(GvmConfig::at_level(n, level as i64, 5)).map_err(|e| e.to_string())?;
            let m = pm.module();
            let mut first = None;
            for d in 0..=5 {
                let corank: usize = pm.rank_rows(d).map_err(|e| e.to_string())?.iter().map(|r| r.corank).sum();
                let expected = m.grade_dim(d) as i64 - euler_dims(n, level, d).map_err(|e| e.to_string())?;
                rows += 1;
                if corank as i64 != expected {
                    return Err(format!("n={n} level={level} d={d}: corank {corank}, expected {expected}"));
                }
                if first.is_none() && corank > 0 {
                    first = Some(d);
                }
            }
            let shift = level + 1 - n;
            if first != Some(shift) {
                return Err(format!("n={n} level={level}: first radical grade {first:?}, expected {shift}"));
            }
            let top = 2 * (level + 1) - n;
            let rad = pm.radical_basis(shift).map_err(|e| e.to_string())?;
            let mut weights: Vec<i64> = rad
                .iter()
                .map(|v| {
                    let w: Vec<i64> = v.iter().map(|(i, _)| m.weight_of(i)).collect();
                    w[0]
                })
                .collect();
            weights.sort();
            let expected: Vec<i64> = (0..=top).map(|k| 2 * k as i64 - top as i64).collect();
            if weights != expected {
                return Err(format!("n={n} level={level}: lowest radical weights {weights:?}"));
            }
        }
    }
    Ok(format!("{rows} grades"))
}

fn singular_witness() -> Outcome {
    for level in 1..=2usize {
        let depth = level + 1;
        let pm = PairedModule::build(GvmConfig::at_level(0, level as i64, depth)).map_err(|e| e.to_string())?;
        let m = pm.module();
        let mut v = m.lowest(0);
        for _ in 0..depth {
            v = m.act_exact(Gen::E, -1, &v).map_err(|e| e.to_string())?;
        }
        let (k, j) = pm.project(&v);
        if !k.is_zero() || j != v {
            return Err(format!("e(-1)^{depth} 1 not in the radical at level {level}"));
        }
        for u in 0..m.grade_range(depth).end {
            if pm.pair(&SparseVec::unit(u), &v) != q(0) {
                return Err(format!("e(-1)^{depth} 1 pairs nontrivially at level {level}"));
            }
        }
    }
    Ok("levels 1, 2".into())
}

fn fusion_closed_form() -> Outcome {
    let level = 2;
    let (mut agree, mut skipped) = (0usize, 0usize);
    for p in 0..=4 {
        for qq in 0..=4 {
            for j in 0..=2 {
                for n in 0..=2 {
                    let r = m_of(j, n, level).map_err(|e| e.to_string())?;
                    match fusion_gvm(p, qq, r, level) {
                        FusionValue::Indeterminate => skipped += 1,
                        FusionValue::Value(v) => {
                            let oracle = TensorSpace::new(p, qq).highest_vectors(r as i64).len();
                            if v != oracle {
                                return Err(format!("p={p} q={qq} r={r}: {v} vs {oracle}"));
                            }
                            agree += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{agree} agree, {skipped} without hypotheses"))
}

fn build(p: usize, qq: usize, r: usize, seed: Option<u64>) -> Result<IntertwinerTable, String> {
    let opts = BuildOptions { equation_seed: seed, ..Default::default() };
    build_components(&clebsch_gordan_hom(p, qq, r), 2, 3, &opts).map_err(|e| e.to_string())
}

fn criterion_five_cases() -> Result<Vec<(usize, usize, usize)>, String> {
    let q1 = m_of(0, 1, 2).map_err(|e| e.to_string())?;
    let r2 = m_of(0, 2, 2).map_err(|e| e.to_string())?;
    Ok(vec![(1, 1, 2), (1, q1, r2)])
}

fn constructive_existence() -> Outcome {
    let mut out = Vec::new();
    for (p, qq, r) in criterion_five_cases()? {
        let t = build(p, qq, r, None)?;
        let comm = verify_component_commutators(&t).map_err(|e| e.to_string())?;
        if !comm.passed() {
            return Err(format!("({p},{qq},{r}): {} commutator failures", comm.failures.len()));
        }
        let ext = extend_to_full(&t).map_err(|e| e.to_string())?;
        let jac = verify_jacobi_truncated(&ext);
        if !jac.passed() {
            return Err(format!("({p},{qq},{r}): {} Jacobi failures", jac.failures.len()));
        }
        out.push(format!("({p},{qq},{r}) {}+{} checks", comm.checked, jac.checked));
    }
    Ok(out.join(", "))
}

fn uniqueness() -> Outcome {
    let mut out = Vec::new();
    for (p, qq, r) in criterion_five_cases()? {
        let base = build(p, qq, r, None)?.canonical_string();
        for seed in [1u64, 7, 2024] {
            if build(p, qq, r, Some(seed))?.canonical_string() != base {
                return Err(format!("({p},{qq},{r}) differs under seed {seed}"));
            }
        }
        out.push(format!("({p},{qq},{r})"));
    }
    Ok(format!("{} identical under 3 seeds", out.join(", ")))
}

fn counterexample() -> Outcome {
    let opts = BuildOptions { override_conditions: true, ..Default::default() };
    match build_components(&clebsch_gordan_hom(2, 2, 0), 1, 3, &opts) {
        Ok(_) => Err("construction unexpectedly succeeded".into()),
        Err(e) if e.to_string().contains("inconsistent recursion system") => Ok(e.to_string()),
        Err(e) => Err(format!("wrong error: {e}")),
    }
}

fn descent() -> Outcome {
    let t = build(1, 0, 1, None)?;
    let rep = descend_to_irreducible(&t).map_err(|e| e.to_string())?;
    let comm = verify_component_commutators(&rep.quotient).map_err(|e| e.to_string())?;
    if !comm.passed() {
        return Err(format!("quotient table: {} commutator failures", comm.failures.len()));
    }
    Ok(format!("{} triples, radical dims {:?}, quotient {} checks", rep.checked, rep.radical_dims, comm.checked))
}

fn mutation_sensitivity() -> Outcome {
    let t = build(1, 1, 2, None)?;
    let target = Module::build(GvmConfig::at_level(2, 2, 3)).map_err(|e| e.to_string())?;
    let cols = t.tensor().dim();
    let mut perturbed = 0usize;
    for s in 0..=t.max_grade {
        for idx in target.grade_range(s) {
            for c in 0..cols {
                let bad = t.perturbed(s, c, idx, &q(1));
                let rep = verify_component_commutators_in(&target, None, &bad).map_err(|e| e.to_string())?;
                perturbed += 1;
                if rep.passed() {
                    return Err(format!("perturbation at grade {s}, column {c}, entry {idx} undetected"));
                }
            }
        }
    }
    Ok(format!("{perturbed} perturbations caught"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("bracket fidelity", bracket_fidelity),
        ("radical vs resolution", radical_vs_resolution),
        ("singular vector witness", singular_witness),
        ("fusion closed form", fusion_closed_form),
        ("constructive existence", constructive_existence),
        ("uniqueness", uniqueness),
        ("counterexample", counterexample),
        ("descent", descent),
        ("mutation sensitivity", mutation_sensitivity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
