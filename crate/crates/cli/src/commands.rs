use std::io::{self, Write};

use affsl2::gvm::GvmConfig;
use affsl2::intertwiner::{
    check_conditions, descend_to_irreducible, extend_to_full, fusion_gvm, fusion_irr,
    verify_component_commutators, verify_jacobi_truncated, FusionValue,
};
use affsl2::sl2::clebsch_gordan_hom;
use affsl2::weyl::{euler_dims, resolution_weights, w1_element};
use affsl2::{build_components, BuildOptions, IntertwinerTable, PairedModule, SparseVec};
use serde_json::{json, Value};
use thiserror::Error;

use crate::args::{Cli, Command, FusionArgs, GramArgs, IntertwineAction, IntertwineArgs, ModuleArgs, ResolveArgs};
use crate::report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Engine(#[from] affsl2::Error),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use affsl2::Error as E;
        match self {
            CliError::Verification(_) => 1,
            CliError::Indeterminate(_) => 2,
            CliError::Io(_) => 5,
            CliError::Engine(e) => match e {
                E::Mismatch(_) => 1,
                E::InconsistentRecursion { .. }
                | E::FunctionalNotAnnihilatingJ { .. }
                | E::JNotIrreducible { .. }
                | E::HypothesisFailure(_)
                | E::Indeterminate(_)
                | E::DescentObstruction { .. } => 2,
                E::IndexOutOfRange { .. } | E::InvalidConfig(_) | E::Domain(_) => 3,
                E::ResourceCap { .. } | E::GradeOutOfRange { .. } | E::TruncationTooShallow { .. } | E::Truncated { .. } => 4,
            },
        }
    }
}

type Outcome = Result<(), CliError>;

struct Ctx<'a, W: Write> {
    cli: &'a Cli,
    out: &'a mut W,
}

impl<W: Write> Ctx<'_, W> {
    fn emit(&mut self, report: &Report) -> Outcome {
        report.write(self.cli.format, self.out)?;
        Ok(())
    }

    fn config(&self, n: usize, level: usize, grade: usize) -> GvmConfig {
        let cfg = GvmConfig::at_level(n, level as i64, grade);
        match self.cli.basis_cap {
            Some(cap) => cfg.with_cap(cap),
            None => cfg,
        }
    }
}

pub fn run(cli: &Cli, out: &mut impl Write) -> Outcome {
    let mut ctx = Ctx { cli, out };
    match &cli.command {
        Command::Fusion(a) => fusion(&mut ctx, a),
        Command::Resolve(a) => resolve(&mut ctx, a),
        Command::Radical(a) => radical(&mut ctx, a),
        Command::Gram(a) => gram(&mut ctx, a),
        Command::Character(a) => character(&mut ctx, a),
        Command::Intertwine { action } => match action {
            IntertwineAction::Build(a) => intertwine_build(&mut ctx, a),
            IntertwineAction::Verify(a) => intertwine_verify(&mut ctx, a),
            IntertwineAction::Descend(a) => intertwine_descend(&mut ctx, a),
        },
    }
}

fn fusion(ctx: &mut Ctx<impl Write>, a: &FusionArgs) -> Outcome {
    let value = if a.irreducible {
        fusion_irr(a.p, a.q, a.r, a.level)
    } else {
        fusion_gvm(a.p, a.q, a.r, a.level)
    };
    let report = check_conditions(a.p, a.q, a.r, a.level);
    let reason = report.failure_reason().or_else(|| {
        (a.irreducible && !report.descent_condition).then(|| "descent condition fails".to_string())
    });
    let mut out = Report::new(&["value"]);
    out.push(vec![json!(value.to_string())]);
    ctx.emit(&out)?;
    match value {
        FusionValue::Value(_) => Ok(()),
        FusionValue::Indeterminate => Err(CliError::Indeterminate(reason.unwrap_or_default())),
    }
}

fn resolve(ctx: &mut Ctx<impl Write>, a: &ResolveArgs) -> Outcome {
    let mut out = Report::new(&["j", "weight", "shift", "word"]);
    for t in resolution_weights(a.n, a.level, a.j_max)? {
        out.push(vec![json!(t.j), json!(t.weight), json!(t.shift), json!(w1_element(t.j).to_string())]);
    }
    ctx.emit(&out)
}

fn radical(ctx: &mut Ctx<impl Write>, a: &ModuleArgs) -> Outcome {
    let pm = PairedModule::build(ctx.config(a.n, a.level, a.grade))?;
    let mut out = Report::new(&["grade", "weight", "dim", "rank", "corank"]);
    for d in 0..=a.grade {
        let rows = pm.rank_rows(d)?;
        let (mut dim, mut rank, mut corank) = (0, 0, 0);
        for r in &rows {
            out.push(vec![json!(d), json!(r.weight), json!(r.dim), json!(r.rank), json!(r.corank)]);
            dim += r.dim;
            rank += r.rank;
            corank += r.corank;
        }
        out.push(vec![json!(d), json!("total"), json!(dim), json!(rank), json!(corank)]);
    }
    ctx.emit(&out)
}

fn gram(ctx: &mut Ctx<impl Write>, a: &GramArgs) -> Outcome {
    let m = &a.module;
    let pm = PairedModule::build(ctx.config(m.n, m.level, m.grade))?;
    let module = pm.module();
    let mut out = Report::new(&["grade", "weight", "row", "column", "value"]);
    let weights = match a.weight {
        Some(w) => vec![w],
        None => module.weights_at(m.grade),
    };
    for w in weights {
        let g = pm.gram_block(m.grade, w)?;
        let (rows, cols) = (module.block(m.grade, -w), module.block(m.grade, w));
        for (i, &ri) in rows.iter().enumerate() {
            for (j, &cj) in cols.iter().enumerate() {
                let v = g.get(i, j);
                out.push(vec![
                    json!(m.grade),
                    json!(w),
                    json!(module.label(ri)),
                    json!(module.label(cj)),
                    json!(v.to_string()),
                ]);
            }
        }
    }
    ctx.emit(&out)
}

fn character(ctx: &mut Ctx<impl Write>, a: &ModuleArgs) -> Outcome {
    let pm = PairedModule::build(ctx.config(a.n, a.level, a.grade))?;
    let module = pm.module();
    let mut out = Report::new(&["grade", "conformal_weight", "gvm_dim", "gram_rank", "irreducible_dim"]);
    for d in 0..=a.grade {
        let rank: usize = pm.rank_rows(d)?.iter().map(|r| r.rank).sum();
        let euler = euler_dims(a.n, a.level, d)?;
        out.push(vec![
            json!(d),
            json!(module.conformal_weight(d).to_string()),
            json!(module.grade_dim(d)),
            json!(rank),
            json!(euler),
        ]);
    }
    ctx.emit(&out)
}

fn build(ctx: &Ctx<impl Write>, a: &IntertwineArgs) -> Result<IntertwinerTable, CliError> {
    let f = clebsch_gordan_hom(a.p, a.q, a.r);
    if f.is_zero() {
        return Err(affsl2::Error::Domain(format!("M({}) ⊗ M({}) has no summand M({})", a.p, a.q, a.r)).into());
    }
    let opts = BuildOptions {
        override_conditions: a.override_conditions,
        equation_seed: ctx.cli.seed,
        basis_cap: ctx.cli.basis_cap,
    };
    Ok(build_components(&f, a.level, a.grade, &opts)?)
}

fn radical_entries(t: &IntertwinerTable) -> usize {
    t.j_part.iter().flatten().map(SparseVec::len).sum()
}

fn intertwine_build(ctx: &mut Ctx<impl Write>, a: &IntertwineArgs) -> Outcome {
    let t = build(ctx, a)?;
    let s = t.summary();
    let mut out = Report::new(&[
        "p", "q", "r", "level", "grade", "radical_offset", "entries", "radical_entries", "exponent_offset", "checksum",
    ]);
    out.push(vec![
        json!(s.p),
        json!(s.q),
        json!(s.r),
        json!(s.level),
        json!(s.max_grade),
        s.radical_offset.map_or(Value::Null, |m| json!(m)),
        json!(s.nonzero_entries),
        json!(radical_entries(&t)),
        json!(s.exponent_offset),
        json!(s.checksum),
    ]);
    ctx.emit(&out)
}

fn intertwine_verify(ctx: &mut Ctx<impl Write>, a: &IntertwineArgs) -> Outcome {
    let t = build(ctx, a)?;
    let comm = verify_component_commutators(&t)?;
    let ext = extend_to_full(&t)?;
    let jac = verify_jacobi_truncated(&ext);
    let mut out = Report::new(&["check", "checked", "failures", "checksum"]);
    let checksum = t.checksum();
    out.push(vec![json!("commutator"), json!(comm.checked), json!(comm.failures.len()), json!(checksum)]);
    out.push(vec![json!("jacobi"), json!(jac.checked), json!(jac.failures.len()), json!(checksum)]);
    ctx.emit(&out)?;
    for f in comm.failures.iter().take(10) {
        eprintln!("commutator failure: {f:?}");
    }
    for f in jac.failures.iter().take(10) {
        eprintln!("jacobi failure: {f:?}");
    }
    if comm.passed() && jac.passed() {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "{} commutator and {} Jacobi failures",
            comm.failures.len(),
            jac.failures.len()
        )))
    }
}

fn intertwine_descend(ctx: &mut Ctx<impl Write>, a: &IntertwineArgs) -> Outcome {
    let t = build(ctx, a)?;
    let rep = descend_to_irreducible(&t)?;
    let comm = verify_component_commutators(&rep.quotient)?;
    let mut out = Report::new(&["q_prime", "checked", "radical_dims", "quotient_checks", "quotient_failures", "checksum"]);
    let dims: Vec<String> = rep.radical_dims.iter().map(usize::to_string).collect();
    out.push(vec![
        json!(rep.q_prime),
        json!(rep.checked),
        json!(dims.join(" ")),
        json!(comm.checked),
        json!(comm.failures.len()),
        json!(rep.quotient.checksum()),
    ]);
    ctx.emit(&out)?;
    if comm.passed() {
        Ok(())
    } else {
        Err(CliError::Verification(format!("{} quotient commutator failures", comm.failures.len())))
    }
}
