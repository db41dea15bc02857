use affsl2::gvm::GvmConfig;
use affsl2::linalg::q;
use affsl2::pairing::{pair_via_involution, predicted_radical_grade};
use affsl2::weyl::euler_dims;
use affsl2::{Gen, PairedModule, SparseVec, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> SparseVec {
    let mut v = SparseVec::new();
    for _ in 0..rng.gen_range(1..4) {
        v.add_term(rng.gen_range(0..len), &q(rng.gen_range(-3..=3)));
    }
    v
}

#[test]
fn pairing_is_invariant_on_random_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (n, level) in [(0usize, 1i64), (1, 1), (0, 2)] {
        let pm = PairedModule::build(GvmConfig::at_level(n, level, 4)).unwrap();
        let m = pm.module();
        let mut nontrivial = 0;
        for _ in 0..400 {
            let g = Gen::ALL[rng.gen_range(0..3)];
            let mode = rng.gen_range(-3..=3i64);
            let u = random_vector(&mut rng, m.grade_range(2).end);
            let v = random_vector(&mut rng, m.grade_range(2).end);
            let gu = m.act(g, mode, &u);
            let gv = m.act(g, -mode, &v);
            if gu.truncated || gv.truncated {
                continue;
            }
            let lhs = pm.pair(&gu.value, &v);
            let rhs = pm.pair(&u, &gv.value);
            assert_eq!(lhs.clone() + rhs, q(0), "{g}({mode}) on n={n} level={level}");
            if lhs != q(0) {
                nontrivial += 1;
            }
        }
        assert!(nontrivial > 0);
    }
}

#[test]
fn gram_entries_match_involution_definition() {
    let pm = PairedModule::build(GvmConfig::at_level(1, 2, 3)).unwrap();
    let m = pm.module();
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            let (u, v) = (SparseVec::unit(i), SparseVec::unit(j));
            assert_eq!(pm.pair(&u, &v), pair_via_involution(m, &u, &v));
        }
    }
}

#[test]
fn radical_is_stable_under_the_action() {
    for (n, level) in [(0usize, 1i64), (1, 1), (0, 2), (2, 2)] {
        let pm = PairedModule::build(GvmConfig::at_level(n, level, 5)).unwrap();
        let m = pm.module();
        for d in 0..=5 {
            for v in pm.radical_basis(d).unwrap() {
                for g in Gen::ALL {
                    for mode in -2..=5i64 {
                        let x = m.act(g, mode, v);
                        if x.truncated {
                            continue;
                        }
                        assert!(pm.project_k(&x.value).is_zero(), "{g}({mode}) leaves the radical, n={n} level={level} d={d}");
                    }
                }
            }
        }
    }
}

#[test]
fn corank_matches_euler_characteristic() {
    for level in 1..=2usize {
        for n in 0..=level {
            let pm = PairedModule::build(GvmConfig::at_level(n, level as i64, 5)).unwrap();
            for d in 0..=5 {
                let corank: usize = pm.rank_rows(d).unwrap().iter().map(|r| r.corank).sum();
                let euler = euler_dims(n, level, d).unwrap();
                assert_eq!(corank as i64, pm.module().grade_dim(d) as i64 - euler, "n={n} level={level} d={d}");
                assert_eq!(pm.radical_basis(d).unwrap().len(), corank);
            }
            let first = (0..=5).find(|&d| !pm.radical_basis(d).unwrap().is_empty());
            assert_eq!(first, predicted_radical_grade(n, level));
        }
    }
}

#[test]
fn projections_split_each_grade() {
    let pm = PairedModule::build(GvmConfig::at_level(0, 1, 4)).unwrap();
    let m = pm.module();
    for d in 0..=4 {
        let split = pm.kj_split(d).unwrap();
        assert_eq!(split.j_dim() + split.k_dim(), m.grade_dim(d));
        for i in m.grade_range(d) {
            let v = SparseVec::unit(i);
            let (k, j) = pm.project(&v);
            let mut sum = k.clone();
            sum.add_scaled(&j, &Q::from_integer(1.into()));
            assert_eq!(sum, v);
            assert_eq!(pm.project_k(&k), k);
            assert!(pm.project_k(&j).is_zero());
        }
    }
}
