use affsl2::intertwiner::{
    descend_to_irreducible, extend_to_full, fusion_gvm, fusion_irr, verify_component_commutators,
    verify_jacobi_truncated, FusionValue, Strategy,
};
use affsl2::linalg::q;
use affsl2::sl2::{clebsch_gordan_hom, hom_dim, TensorSpace};
use affsl2::gvm::GvmConfig;
use affsl2::{build_components, BuildOptions, Error, Gen, HomTable, IntertwinerTable, PairedModule, SparseVec};

fn build(f: &HomTable, level: usize, n: usize) -> IntertwinerTable {
    build_components(f, level, n, &BuildOptions::default()).unwrap()
}

#[test]
fn clebsch_gordan_homs_intertwine() {
    for p in 0..=4 {
        for qq in 0..=4 {
            for r in 0..=8 {
                let f = clebsch_gordan_hom(p, qq, r);
                assert!(f.intertwines());
                assert_eq!(!f.is_zero(), hom_dim(p, qq, r) == 1);
                assert_eq!(TensorSpace::new(p, qq).highest_vectors(r as i64).len(), hom_dim(p, qq, r));
            }
        }
    }
}

#[test]
fn construction_is_linear_in_the_hom() {
    let f = clebsch_gordan_hom(1, 1, 2);
    let base = build(&f, 2, 3);
    for c in [q(2), q(-3), q(1) / q(5)] {
        assert_eq!(build(&f.scaled(&c), 2, 3), base.scaled(&c));
    }
    let mut sum = f.scaled(&q(2));
    sum.matrix = sum.matrix.add(&f.scaled(&q(-5)).matrix);
    assert_eq!(build(&sum, 2, 3), base.scaled(&q(-3)));
}

#[test]
fn construction_ignores_equation_order() {
    let f = clebsch_gordan_hom(1, 1, 2);
    let base = build(&f, 2, 3);
    for seed in 0..5 {
        let opts = BuildOptions { equation_seed: Some(seed), ..Default::default() };
        let t = build_components(&f, 2, 3, &opts).unwrap();
        assert_eq!(t.canonical_string(), base.canonical_string());
        assert_eq!(t.checksum(), base.checksum());
    }
}

#[test]
fn radical_part_vanishes_at_the_offset() {
    for (p, qq, r, level) in [(1usize, 1usize, 2usize, 2usize), (1, 0, 1, 2), (0, 1, 1, 1)] {
        let t = build(&clebsch_gordan_hom(p, qq, r), level, 3);
        if let Some(m) = t.radical_offset {
            assert!(t.j_part[m].iter().all(SparseVec::is_zero));
        }
        for s in 0..=3 {
            for c in 0..t.tensor().dim() {
                let mut sum = t.k_part[s][c].clone();
                sum.add_scaled(&t.j_part[s][c], &q(1));
                assert_eq!(sum, t.components[s][c]);
            }
        }
        assert!(t.component(1, 0, 0).is_zero());
    }
}

#[test]
fn radical_part_is_exercised() {
    let t = build(&clebsch_gordan_hom(1, 1, 2), 2, 3);
    assert_eq!(t.radical_offset, Some(1));
    assert!(t.j_part[2].iter().chain(&t.j_part[3]).any(|v| !v.is_zero()));
}

#[test]
fn vacuum_argument_reproduces_the_action() {
    let t = build(&clebsch_gordan_hom(0, 1, 1), 1, 3);
    let ext = extend_to_full(&t).unwrap();
    let (arg, src, target) = (ext.argument_module(), ext.source_module(), ext.target_module());
    for g in Gen::ALL {
        let a = arg.act_exact(g, -1, &arg.lowest(0)).unwrap();
        for b in 0..src.grade_range(2).end {
            let kb = src.grade_of(b) as i64;
            for s in -1 - kb..=2 - kb {
                for strategy in [Strategy::ArgumentFirst, Strategy::TargetFirst] {
                    let got = ext.component_of(strategy, s, &a, &SparseVec::unit(b));
                    let want = target.act(g, -1 - s, &SparseVec::unit(b)).value;
                    assert_eq!(got, want, "{g}(-1) with s={s}, b={}", src.label(b));
                }
            }
        }
    }
}

#[test]
fn zero_table_evaluates_to_zero() {
    let t = build(&clebsch_gordan_hom(1, 1, 2), 2, 2).scaled(&q(0));
    assert!(t.is_zero());
    let ext = extend_to_full(&t).unwrap();
    for a in 0..ext.argument_module().dim() {
        for b in 0..ext.source_module().dim() {
            for grade in 0..=2 {
                for strategy in [Strategy::ArgumentFirst, Strategy::TargetFirst] {
                    let grade_ok = ext.argument_module().grade_of(a) + ext.source_module().grade_of(b) <= grade;
                    if grade_ok {
                        assert!(ext.evaluate(strategy, a, b, grade).unwrap().is_zero());
                    }
                }
            }
        }
    }
    assert!(verify_jacobi_truncated(&ext).passed());
}

#[test]
fn unit_descent_is_the_canonical_projection() {
    let t = build(&clebsch_gordan_hom(0, 1, 1), 1, 3);
    let rep = descend_to_irreducible(&t).unwrap();
    let pm = PairedModule::build(GvmConfig::at_level(1, 1, 3)).unwrap();
    for s in 0..=3 {
        for c in 0..t.tensor().dim() {
            assert_eq!(rep.quotient.components[s][c], pm.project_k(&t.components[s][c]));
        }
    }
    assert!(rep.quotient.quotient);
    assert!(verify_component_commutators(&rep.quotient).unwrap().passed());
}

#[test]
fn jacobi_check_rejects_a_perturbed_table() {
    let t = build(&clebsch_gordan_hom(1, 1, 2), 2, 2);
    let bad = t.perturbed(1, 0, t.components[1][0].iter().next().map(|(i, _)| i).unwrap_or(3), &q(1));
    let ext = extend_to_full(&bad).unwrap();
    assert!(!verify_jacobi_truncated(&ext).passed());
    assert!(!verify_component_commutators(&bad).unwrap().passed());
}

#[test]
fn hypotheses_gate_the_construction() {
    let f = clebsch_gordan_hom(2, 2, 0);
    assert!(matches!(build_components(&f, 1, 3, &BuildOptions::default()), Err(Error::HypothesisFailure(_))));
    let f = clebsch_gordan_hom(1, 2, 3);
    assert!(matches!(build_components(&f, 2, 3, &BuildOptions::default()), Err(Error::Indeterminate(_))));
    let err = build_components(&clebsch_gordan_hom(0, 1, 1), 2, 1, &BuildOptions::default()).unwrap_err();
    assert!(matches!(err, Error::TruncationTooShallow { .. }), "{err}");
}

#[test]
fn fusion_examples() {
    assert_eq!(fusion_gvm(1, 1, 0, 2), FusionValue::Value(1));
    assert_eq!(fusion_gvm(1, 1, 2, 2), FusionValue::Value(1));
    assert_eq!(fusion_gvm(1, 2, 0, 2), FusionValue::Value(0));
    assert_eq!(fusion_gvm(3, 3, 0, 2), FusionValue::Indeterminate);
    assert_eq!(fusion_irr(1, 0, 1, 2), FusionValue::Value(1));
}
