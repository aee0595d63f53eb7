//! The seeded property suites behind `gerbeflow suite`.
//!
//! Every suite is deterministic given the configuration: the sampler is the
//! library's versioned generator seeded from the config, trials run in
//! sequence, and failures carry the serialized inputs and both sides of the
//! broken identity.

use std::time::Instant;

use serde_json::{json, Value};

use gerbeflow::cartan::{schouten, DiffForm, MultiVector};
use gerbeflow::ce;
use gerbeflow::deligne::{bch, gauge_action, is_mc, two_cell_target, GaugeElement, NilpotentDgla};
use gerbeflow::hochschild::{adjoint_insertion, gerstenhaber_bracket, hkr, hochschild_delta};
use gerbeflow::kernel::perm::Permutation;
use gerbeflow::kernel::scalar::{rat_int, Rat};
use gerbeflow::linfty::{mc_solve, MCElement, McOutcome, TwistedLInfty};
use gerbeflow::sample::Sampler;
use gerbeflow::{ArtinRing, Poly};

use crate::report::{Failure, Report, SuiteConfig};

pub const SUITE_NAMES: [&str; 9] = [
    "schouten",
    "phi-dgla",
    "phixy",
    "linfty",
    "mc",
    "hochschild",
    "symmetry",
    "hkr",
    "deligne",
];

fn sign_pow(exp: i64) -> Rat {
    if exp.rem_euclid(2) == 0 {
        rat_int(1)
    } else {
        rat_int(-1)
    }
}

struct Ctx<'a> {
    cfg: &'a SuiteConfig,
    sampler: Sampler,
    failures: Vec<Failure>,
    notes: Vec<String>,
}

impl Ctx<'_> {
    fn mv(&mut self, lo: usize, hi: usize) -> MultiVector {
        self.mv_on(self.cfg.dim, lo, hi)
    }

    fn mv_on(&mut self, n: usize, lo: usize, hi: usize) -> MultiVector {
        let top = hi.min(self.cfg.max_multivector_degree).min(n);
        let d = self.sampler.range(lo.min(top), top);
        self.sampler
            .multivector(n, d, self.cfg.max_poly_degree, self.cfg.artin_order)
    }

    fn record(&mut self, trial: usize, case: &str, inputs: Value, lhs: Value, rhs: Value) {
        self.failures.push(Failure {
            trial,
            case: case.to_string(),
            inputs,
            lhs,
            rhs,
            expected_negative: false,
        });
    }

    fn check_eq(
        &mut self,
        trial: usize,
        case: &str,
        inputs: Value,
        lhs: &MultiVector,
        rhs: &MultiVector,
    ) {
        if lhs != rhs {
            self.record(trial, case, inputs, lhs.to_json(), rhs.to_json());
        }
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> Report {
    let started = Instant::now();
    let mut ctx = Ctx {
        cfg,
        sampler: Sampler::new(cfg.seed),
        failures: Vec::new(),
        notes: Vec::new(),
    };
    let trials = match cfg.suite.as_str() {
        "schouten" => suite_schouten(&mut ctx),
        "phi-dgla" => suite_phi_dgla(&mut ctx),
        "phixy" => suite_phixy(&mut ctx),
        "linfty" => suite_linfty(&mut ctx),
        "mc" => suite_mc(&mut ctx),
        "hochschild" => suite_hochschild(&mut ctx),
        "symmetry" => suite_symmetry(&mut ctx),
        "hkr" => suite_hkr(&mut ctx),
        "deligne" => suite_deligne(&mut ctx),
        other => unreachable!("suite {other} is rejected at argument parsing"),
    };
    Report {
        command: format!("suite {}", cfg.suite),
        config: cfg.to_json(),
        trials,
        failures: ctx.failures,
        notes: ctx.notes,
        elapsed_ms: started.elapsed().as_millis(),
    }
}

fn suite_schouten(ctx: &mut Ctx) -> usize {
    for trial in 0..ctx.cfg.trials {
        let pi = ctx.mv(0, 3);
        let rho = ctx.mv(0, 3);
        let tau = ctx.mv(0, 1);
        let p = pi.homogeneous_degree().unwrap() as i64;
        let q = rho.homogeneous_degree().unwrap() as i64;
        let inputs = json!({"pi": pi.to_json(), "rho": rho.to_json(), "tau": tau.to_json()});

        let lhs = schouten(&pi, &rho).unwrap();
        let rhs = schouten(&rho, &pi)
            .unwrap()
            .scale(&(sign_pow((p - 1) * (q - 1)) * rat_int(-1)));
        ctx.check_eq(trial, "antisymmetry", inputs.clone(), &lhs, &rhs);

        let jl = schouten(&pi, &schouten(&rho, &tau).unwrap()).unwrap();
        let jr = &schouten(&schouten(&pi, &rho).unwrap(), &tau).unwrap()
            + &schouten(&rho, &schouten(&pi, &tau).unwrap())
                .unwrap()
                .scale(&sign_pow((p - 1) * (q - 1)));
        ctx.check_eq(trial, "jacobi", inputs.clone(), &jl, &jr);

        let ll = schouten(&pi, &rho.wedge(&tau)).unwrap();
        let lr = &schouten(&pi, &rho).unwrap().wedge(&tau)
            + &rho
                .wedge(&schouten(&pi, &tau).unwrap())
                .scale(&sign_pow((p - 1) * q));
        ctx.check_eq(trial, "leibniz", inputs.clone(), &ll, &lr);

        // contraction is an odd derivation of the wedge
        let alpha = ctx
            .sampler
            .form(ctx.cfg.dim, 1, ctx.cfg.max_poly_degree, ctx.cfg.artin_order);
        let cl = alpha.contract(&pi.wedge(&rho)).unwrap();
        let cr = &alpha.contract(&pi).unwrap().wedge(&rho)
            + &pi.wedge(&alpha.contract(&rho).unwrap()).scale(&sign_pow(p));
        ctx.check_eq(trial, "contract-derivation", inputs, &cl, &cr);
    }
    ctx.cfg.trials
}

fn suite_phi_dgla(ctx: &mut Ctx) -> usize {
    let n = ctx.cfg.dim;
    let order = ctx.cfg.artin_order;
    for trial in 0..ctx.cfg.trials {
        let k = ctx.sampler.range(1, 3.min(n));
        let omega = ctx.sampler.form(n, k, ctx.cfg.max_poly_degree, order);
        let lhs = ce::differential(&ce::phi_handle(&omega, k));
        let rhs = ce::phi_handle(&omega.de_rham(), k + 1);
        let args: Vec<MultiVector> = (0..k + 1).map(|_| ctx.mv(0, 3)).collect();
        let inputs = json!({
            "omega": omega.to_json(),
            "args": args.iter().map(MultiVector::to_json).collect::<Vec<_>>(),
        });
        let lv = lhs.evaluate(&args).unwrap();
        let rv = rhs.evaluate(&args).unwrap();
        ctx.check_eq(trial, "chain-map", inputs, &lv, &rv);

        let l = ctx.sampler.range(1, 3.min(n));
        let beta = ctx.sampler.form(n, l, ctx.cfg.max_poly_degree, order);
        let br = ce::bracket(&ce::phi_handle(&omega, k), &ce::phi_handle(&beta, l)).unwrap();
        let bargs: Vec<MultiVector> = (0..br.arity()).map(|_| ctx.mv(0, 2)).collect();
        let bv = br.evaluate(&bargs).unwrap();
        let zero = MultiVector::zero(n, order);
        let binputs = json!({"alpha": omega.to_json(), "beta": beta.to_json()});
        ctx.check_eq(trial, "abelian-image", binputs, &bv, &zero);
    }
    ctx.cfg.trials
}

fn suite_phixy(ctx: &mut Ctx) -> usize {
    let n = ctx.cfg.dim;
    let order = ctx.cfg.artin_order;
    for trial in 0..ctx.cfg.trials {
        let omega = ctx.sampler.form(n, 1, ctx.cfg.max_poly_degree, order);
        let xf = ctx.sampler.vector_field(n, ctx.cfg.max_poly_degree, order);
        let yf = ctx.sampler.vector_field(n, ctx.cfg.max_poly_degree, order);
        let lie = schouten(&xf, &yf).unwrap();
        let lhs = &(&schouten(&omega.contract(&xf).unwrap(), &yf).unwrap()
            - &omega.contract(&lie).unwrap())
            + &schouten(&xf, &omega.contract(&yf).unwrap()).unwrap();
        let rhs = ce::phi_handle(&omega.de_rham(), 2)
            .evaluate(&[xf.clone(), yf.clone()])
            .unwrap();
        let inputs = json!({"omega": omega.to_json(), "X": xf.to_json(), "Y": yf.to_json()});
        ctx.check_eq(trial, "one-form-identity", inputs, &lhs, &rhs);
    }
    ctx.cfg.trials
}

fn suite_linfty(ctx: &mut Ctx) -> usize {
    let order = ctx.cfg.artin_order;
    if ctx.cfg.negative_control {
        // a non-closed 3-form needs a fourth direction to land in
        let n = ctx.cfg.dim.max(4);
        // a non-closed twist: the arity-4 defect equals phi(dH) and is nonzero;
        // the nonzero evaluations are reported as expected-negative failures
        let h = non_closed_3form(n, order);
        let structure = TwistedLInfty::new_unchecked(n, ArtinRing::new(order), h.clone()).unwrap();
        let defect = structure.jacobi_defect_4();
        let phi_dh = ce::phi_handle(&h.de_rham(), 4);
        let mut nonzero = 0usize;
        for trial in 0..ctx.cfg.trials {
            let args: Vec<MultiVector> = (0..4).map(|_| ctx.mv_on(n, 1, 2)).collect();
            let dv = defect.evaluate(&args).unwrap();
            let pv = phi_dh.evaluate(&args).unwrap();
            if dv != pv {
                ctx.record(
                    trial,
                    "defect4-vs-phi-dH",
                    json!({"H": h.to_json()}),
                    dv.to_json(),
                    pv.to_json(),
                );
                continue;
            }
            if !dv.is_zero() {
                nonzero += 1;
                ctx.failures.push(Failure {
                    trial,
                    case: "defect4-nonzero".into(),
                    inputs: json!({"H": h.to_json(), "args": args.iter().map(MultiVector::to_json).collect::<Vec<_>>()}),
                    lhs: dv.to_json(),
                    rhs: MultiVector::zero(n, order).to_json(),
                    expected_negative: true,
                });
            }
        }
        // the frame tuple always detects the non-closed twist
        let frame: Vec<MultiVector> = (0..4).map(|i| MultiVector::basis(n, &[i], order)).collect();
        let on_frame = defect.evaluate(&frame).unwrap();
        if on_frame.is_zero() || nonzero == 0 {
            ctx.record(
                0,
                "negative-control-missed",
                json!({"H": h.to_json()}),
                on_frame.to_json(),
                Value::String("nonzero defect expected".into()),
            );
        }
        ctx.notes.push(format!(
            "negative control: {nonzero} expected-negative defect evaluations"
        ));
        return ctx.cfg.trials;
    }
    let n = ctx.cfg.dim.max(3);
    for trial in 0..ctx.cfg.trials {
        let h = ctx.sampler.closed_3form(n, order);
        let structure = TwistedLInfty::new(n, ArtinRing::new(order), h.clone()).unwrap();
        let d4 = structure.jacobi_defect_4();
        let d5 = structure.jacobi_defect_5();
        let zero = MultiVector::zero(n, order);
        let args4: Vec<MultiVector> = (0..4).map(|_| ctx.mv_on(n, 1, 2)).collect();
        let v4 = d4.evaluate(&args4).unwrap();
        ctx.check_eq(
            trial,
            "jacobi-defect-4",
            json!({"H": h.to_json()}),
            &v4,
            &zero,
        );
        let args5: Vec<MultiVector> = (0..5).map(|_| ctx.mv_on(n, 1, 2)).collect();
        let v5 = d5.evaluate(&args5).unwrap();
        ctx.check_eq(
            trial,
            "jacobi-defect-5",
            json!({"H": h.to_json()}),
            &v5,
            &zero,
        );
    }
    ctx.cfg.trials
}

fn non_closed_3form(n: usize, order: u32) -> DiffForm {
    // x dy^dz^dw when the chart has a fourth direction, else x dx2 missing:
    // on a 3-chart use x dy^dz .. wedge dx is closed, so extend the chart
    if n >= 4 {
        DiffForm::basis(n, &[1, 2, 3], order).mul_poly(&Poly::var(n, 0, order))
    } else {
        // n = 3: w = z dx^dy^dz would be closed in top degree; instead lift
        // the chart dimension implicitly by using the coefficient x on the
        // volume form, whose differential vanishes in top degree -- so a
        // genuinely non-closed 3-form needs n >= 4
        unreachable!("negative control requires a chart of dimension at least 4")
    }
}

fn suite_mc(ctx: &mut Ctx) -> usize {
    let order = 4;
    let mut checks = 0usize;
    // canonical 3-chart instance
    {
        let n = 3;
        let h = DiffForm::basis(n, &[0, 1, 2], order);
        let structure = TwistedLInfty::new(n, ArtinRing::new(order), h.clone()).unwrap();
        let pi1 = MultiVector::basis(n, &[0, 1], order);
        let inputs = json!({"H": h.to_json(), "pi1": pi1.to_json(), "maxOrder": order});
        match mc_solve(&structure, &pi1, order, ctx.cfg.max_poly_degree).unwrap() {
            McOutcome::Solved { pi } => {
                let residual = structure.mc_residual(&pi).unwrap();
                let zero = MultiVector::zero(n, order);
                ctx.check_eq(checks, "solve-residual", inputs.clone(), &residual, &zero);
            }
            McOutcome::Obstructed {
                order: k, residual, ..
            } => {
                ctx.record(
                    checks,
                    "solve-obstructed",
                    inputs.clone(),
                    residual.to_json(),
                    json!({"order": k}),
                );
            }
        }
        checks += 1;
        let naive = MCElement::new(pi1.mul_h_power(1)).unwrap();
        let naive_res = structure.mc_residual(&naive).unwrap().h_coefficient(3);
        let cubic = structure
            .l3()
            .evaluate(&[pi1.clone(), pi1.clone(), pi1.clone()])
            .unwrap();
        let predicted = -&cubic.h_coefficient(0);
        ctx.check_eq(
            checks,
            "naive-h3-prediction",
            inputs,
            &naive_res,
            &predicted,
        );
        checks += 1;
    }
    // 4-chart instance with a nonzero cubic term
    {
        let n = 4;
        let h = DiffForm::basis(n, &[0, 1, 2], order);
        let structure = TwistedLInfty::new(n, ArtinRing::new(order), h.clone()).unwrap();
        let pi1 = &MultiVector::basis(n, &[0, 1], order) + &MultiVector::basis(n, &[2, 3], order);
        let inputs = json!({"H": h.to_json(), "pi1": pi1.to_json(), "maxOrder": order});
        let cubic = structure
            .l3()
            .evaluate(&[pi1.clone(), pi1.clone(), pi1.clone()])
            .unwrap();
        if cubic.is_zero() {
            ctx.record(
                checks,
                "cubic-term-zero",
                inputs.clone(),
                cubic.to_json(),
                Value::String("nonzero".into()),
            );
        }
        checks += 1;
        let naive = MCElement::new(pi1.mul_h_power(1)).unwrap();
        let naive_res = structure.mc_residual(&naive).unwrap().h_coefficient(3);
        let predicted = -&cubic.h_coefficient(0);
        ctx.check_eq(
            checks,
            "naive-h3-prediction-4chart",
            inputs.clone(),
            &naive_res,
            &predicted,
        );
        checks += 1;
        match mc_solve(&structure, &pi1, order, ctx.cfg.max_poly_degree.max(1)).unwrap() {
            McOutcome::Solved { pi } => {
                let residual = structure.mc_residual(&pi).unwrap();
                let zero = MultiVector::zero(n, order);
                ctx.check_eq(checks, "solve-residual-4chart", inputs, &residual, &zero);
            }
            McOutcome::Obstructed {
                order: k, residual, ..
            } => {
                ctx.record(
                    checks,
                    "solve-obstructed-4chart",
                    inputs,
                    residual.to_json(),
                    json!({"order": k}),
                );
            }
        }
        checks += 1;
    }
    // flat untwisted instance solves trivially
    {
        let n = 3;
        let structure =
            TwistedLInfty::new(n, ArtinRing::new(order), DiffForm::zero(n, order)).unwrap();
        let pi1 = MultiVector::basis(n, &[0, 1], order);
        match mc_solve(&structure, &pi1, order, ctx.cfg.max_poly_degree).unwrap() {
            McOutcome::Solved { pi } => {
                let expected = pi1.mul_h_power(1);
                let got = pi.as_multivector().clone();
                ctx.check_eq(
                    checks,
                    "flat-solution",
                    json!({"pi1": pi1.to_json()}),
                    &got,
                    &expected,
                );
            }
            McOutcome::Obstructed {
                order: k, residual, ..
            } => {
                ctx.record(
                    checks,
                    "flat-obstructed",
                    json!({"pi1": pi1.to_json()}),
                    residual.to_json(),
                    json!({"order": k}),
                );
            }
        }
        checks += 1;
    }
    checks
}

fn suite_hochschild(ctx: &mut Ctx) -> usize {
    let sign = sign_pow;
    for trial in 0..ctx.cfg.trials {
        let n = ctx.cfg.dim.min(3);
        let order = ctx.cfg.artin_order;
        let max_deg = ctx.cfg.max_poly_degree;
        let p = ctx.sampler.range(0, 3);
        let d = ctx.sampler.mdo(n, p, 2, max_deg, order);
        let dd = hochschild_delta(&hochschild_delta(&d).unwrap()).unwrap();
        if !dd.is_zero() {
            ctx.record(
                trial,
                "delta-squared",
                json!({"D": d.to_json()}),
                dd.to_json(),
                json!("0"),
            );
        }
        let q = ctx.sampler.range(0, 2);
        let e = ctx.sampler.mdo(n, q, 2, max_deg, order);
        let de = gerstenhaber_bracket(&d, &e).unwrap();
        let ed = gerstenhaber_bracket(&e, &d).unwrap();
        let anti = sign((p as i64 - 1) * (q as i64 - 1)) * rat_int(-1);
        if de != ed.scale(&anti) {
            ctx.record(
                trial,
                "bracket-antisymmetry",
                json!({"D": d.to_json(), "E": e.to_json()}),
                de.to_json(),
                ed.to_json(),
            );
        }
        let p2 = ctx.sampler.range(0, 2);
        let q2 = ctx.sampler.range(1, 2);
        let r2 = ctx.sampler.range(1, 2);
        let a = ctx.sampler.mdo(n, p2, 2, 1, order);
        let b = ctx.sampler.mdo(n, q2, 2, 1, order);
        let c = ctx.sampler.mdo(n, r2, 2, 1, order);
        let jl = gerstenhaber_bracket(&a, &gerstenhaber_bracket(&b, &c).unwrap()).unwrap();
        let jr = &gerstenhaber_bracket(&gerstenhaber_bracket(&a, &b).unwrap(), &c).unwrap()
            + &gerstenhaber_bracket(&b, &gerstenhaber_bracket(&a, &c).unwrap())
                .unwrap()
                .scale(&sign((p2 as i64 - 1) * (q2 as i64 - 1)));
        if jl != jr {
            ctx.record(
                trial,
                "bracket-jacobi",
                json!({"A": a.to_json(), "B": b.to_json(), "C": c.to_json()}),
                jl.to_json(),
                jr.to_json(),
            );
        }
        let dp = ctx.sampler.range(if q == 0 { 1 } else { 0 }, 2);
        let d2 = ctx.sampler.mdo(n, dp, 2, 1, order);
        let dl = hochschild_delta(&gerstenhaber_bracket(&d2, &e).unwrap()).unwrap();
        let dr = &gerstenhaber_bracket(&hochschild_delta(&d2).unwrap(), &e).unwrap()
            + &gerstenhaber_bracket(&d2, &hochschild_delta(&e).unwrap())
                .unwrap()
                .scale(&sign(dp as i64 - 1));
        if dl != dr {
            ctx.record(
                trial,
                "delta-derivation",
                json!({"D": d2.to_json(), "E": e.to_json()}),
                dl.to_json(),
                dr.to_json(),
            );
        }
        let ip = ctx.sampler.range(1, 2);
        let iq = ctx.sampler.range(1, 2);
        let di = ctx.sampler.mdo(n, ip, 2, 1, order);
        let ei = ctx.sampler.mdo(n, iq, 2, 1, order);
        let a_el = ctx.sampler.poly(n, max_deg, order);
        let il = adjoint_insertion(&a_el, &gerstenhaber_bracket(&di, &ei).unwrap()).unwrap();
        let ir = &gerstenhaber_bracket(&adjoint_insertion(&a_el, &di).unwrap(), &ei).unwrap()
            + &gerstenhaber_bracket(&di, &adjoint_insertion(&a_el, &ei).unwrap())
                .unwrap()
                .scale(&sign(ip as i64 - 1));
        if il != ir {
            ctx.record(
                trial,
                "insertion-derivation",
                json!({"a": a_el.to_json(), "D": di.to_json(), "E": ei.to_json()}),
                il.to_json(),
                ir.to_json(),
            );
        }
        let al = hochschild_delta(&adjoint_insertion(&a_el, &di).unwrap()).unwrap();
        let ar = adjoint_insertion(&a_el, &hochschild_delta(&di).unwrap()).unwrap();
        if !(&al + &ar).is_zero() {
            ctx.record(
                trial,
                "insertion-anticommutation",
                json!({"a": a_el.to_json(), "D": di.to_json()}),
                al.to_json(),
                ar.to_json(),
            );
        }
    }
    ctx.cfg.trials
}

fn suite_symmetry(ctx: &mut Ctx) -> usize {
    let n = ctx.cfg.dim;
    let order = ctx.cfg.artin_order;
    for trial in 0..ctx.cfg.trials {
        // Koszul homomorphism on up to 5 letters
        let m = ctx.sampler.range(2, 5);
        let degs: Vec<i64> = (0..m).map(|_| ctx.sampler.range(0, 3) as i64).collect();
        let sp = random_permutation(&mut ctx.sampler, m);
        let tp = random_permutation(&mut ctx.sampler, m);
        let lhs = sp.compose(&tp).koszul_sign(&degs).unwrap();
        let pulled: Vec<i64> = (0..m).map(|j| degs[sp.apply(j)]).collect();
        let rhs = tp.koszul_sign(&pulled).unwrap() * sp.koszul_sign(&degs).unwrap();
        if lhs != rhs {
            ctx.record(
                trial,
                "koszul-homomorphism",
                json!({"sigma": sp.images(), "tau": tp.images(), "degrees": degs}),
                json!(lhs),
                json!(rhs),
            );
        }
        // eps-rule symmetry of a form handle under adjacent transpositions
        let k = ctx.sampler.range(2, 3.min(n));
        let omega = ctx.sampler.form(n, k, ctx.cfg.max_poly_degree, order);
        let handle = ce::phi_handle(&omega, k);
        let args: Vec<MultiVector> = (0..k).map(|_| ctx.mv(0, 2)).collect();
        let degrees: Vec<i64> = args
            .iter()
            .map(|a| a.homogeneous_degree().unwrap() as i64)
            .collect();
        for i in 0..k - 1 {
            let mut swapped = args.clone();
            swapped.swap(i, i + 1);
            let left = handle.evaluate(&args).unwrap();
            let right = handle
                .evaluate(&swapped)
                .unwrap()
                .scale(&sign_pow(degrees[i] * degrees[i + 1]));
            if left != right {
                ctx.record(
                    trial,
                    "handle-symmetry",
                    json!({"omega": omega.to_json(), "swap": i}),
                    left.to_json(),
                    right.to_json(),
                );
            }
        }
        // symmetry transfer through composition
        let comp = ce::compose(&ce::schouten_cochain(n, order), &handle).unwrap();
        let cargs: Vec<MultiVector> = (0..k + 1).map(|_| ctx.mv(0, 2)).collect();
        let cdeg: Vec<i64> = cargs
            .iter()
            .map(|a| a.homogeneous_degree().unwrap() as i64)
            .collect();
        let mut swapped = cargs.clone();
        swapped.swap(0, 1);
        let left = comp.evaluate(&cargs).unwrap();
        let right = comp
            .evaluate(&swapped)
            .unwrap()
            .scale(&sign_pow(cdeg[0] * cdeg[1]));
        if left != right {
            ctx.record(
                trial,
                "symmetry-transfer",
                json!({"omega": omega.to_json()}),
                left.to_json(),
                right.to_json(),
            );
        }
    }
    // a spanning-family handle equality at the configured degree bound
    let omega = DiffForm::basis(n, &[1], order).mul_poly(&Poly::var(n, 0, order));
    let lhs = ce::differential(&ce::phi_handle(&omega, 1));
    let rhs = ce::phi_handle(&omega.de_rham(), 2);
    match ce::equal_on_span(&lhs, &rhs, ctx.cfg.spanning_degree) {
        Ok(true) => {}
        Ok(false) => ctx.record(
            ctx.cfg.trials,
            "span-equality",
            json!({"omega": omega.to_json(), "spanDeg": ctx.cfg.spanning_degree}),
            json!("d phi(omega)"),
            json!("phi(d omega)"),
        ),
        Err(e) => ctx.record(
            ctx.cfg.trials,
            "span-equality-error",
            json!({}),
            json!(e.to_string()),
            json!("ok"),
        ),
    }
    ctx.cfg.trials
}

fn random_permutation(s: &mut Sampler, m: usize) -> Permutation {
    let mut images: Vec<usize> = (0..m).collect();
    for i in (1..m).rev() {
        let j = s.range(0, i);
        images.swap(i, j);
    }
    Permutation::from_images(images).expect("shuffle produces a bijection")
}

fn suite_hkr(ctx: &mut Ctx) -> usize {
    let mut agree = 0usize;
    let mut differ = 0usize;
    for trial in 0..ctx.cfg.trials {
        let n = ctx.cfg.dim.min(3);
        let order = ctx.cfg.artin_order;
        let deg = ctx.sampler.range(0, 3.min(n));
        let pi = ctx
            .sampler
            .multivector(n, deg, ctx.cfg.max_poly_degree, order);
        let image = hkr(&pi).unwrap();
        let closed = hochschild_delta(&image).unwrap();
        if !closed.is_zero() {
            ctx.record(
                trial,
                "hkr-closed",
                json!({"pi": pi.to_json()}),
                closed.to_json(),
                json!("0"),
            );
        }
        // measured, not asserted: agreement of the two insertion actions
        // through the alternation map
        if deg >= 1 {
            let a = ctx.sampler.poly(n, 1, order);
            let through_vectors = hkr(&schouten(&pi, &MultiVector::from_poly(a.clone())).unwrap());
            let through_cochains = adjoint_insertion(&a, &image);
            match (through_vectors, through_cochains) {
                (Ok(v), Ok(c)) if v == c => agree += 1,
                _ => differ += 1,
            }
        }
    }
    ctx.notes.push(format!(
        "hkr insertion intertwining (measured, not asserted): {agree} agree, {differ} differ"
    ));
    ctx.cfg.trials
}

fn suite_deligne(ctx: &mut Ctx) -> usize {
    for trial in 0..ctx.cfg.trials {
        let n = ctx.cfg.dim.min(3).max(2);
        let order = ctx.cfg.artin_order.clamp(2, 4);
        let g = NilpotentDgla::schouten(n, ArtinRing::new(order));
        // constant-coefficient bivectors solve MC; the gauge orbit must stay inside
        let mut gamma = MultiVector::zero(n, order);
        for i in 0..n {
            for j in i + 1..n {
                let c = ctx.sampler.coeff();
                if c != 0 {
                    gamma = &gamma + &MultiVector::basis(n, &[i, j], order).scale(&rat_int(c));
                }
            }
        }
        let gamma = gamma.mul_h_power(1);
        let zero = MultiVector::zero(n, order);
        if is_mc(&g, &gamma).unwrap().is_zero() {
            let lambda = GaugeElement::new(
                ctx.sampler
                    .vector_field(n, ctx.cfg.max_poly_degree, order)
                    .mul_h_power(1),
            )
            .unwrap();
            let moved = gauge_action(&g, &lambda, &gamma).unwrap();
            let res = is_mc(&g, &moved).unwrap();
            ctx.check_eq(
                trial,
                "gauge-preserves-mc",
                json!({"lambda": lambda.as_multivector().to_json(), "gamma": gamma.to_json()}),
                &res,
                &zero,
            );
        }
        let a = GaugeElement::new(ctx.sampler.vector_field(n, 1, order).mul_h_power(1)).unwrap();
        let b = GaugeElement::new(ctx.sampler.vector_field(n, 1, order).mul_h_power(1)).unwrap();
        let c = GaugeElement::new(ctx.sampler.vector_field(n, 1, order).mul_h_power(1)).unwrap();
        let target = ctx.sampler.multivector(n, 2, 1, order).mul_h_power(1);
        let ab = bch(&g, &a, &b).unwrap();
        let composite = gauge_action(&g, &ab, &target).unwrap();
        let stepwise = gauge_action(&g, &a, &gauge_action(&g, &b, &target).unwrap()).unwrap();
        ctx.check_eq(
            trial,
            "gauge-action-law",
            json!({"a": a.as_multivector().to_json(), "b": b.as_multivector().to_json()}),
            &composite,
            &stepwise,
        );
        let left = bch(&g, &a, &bch(&g, &b, &c).unwrap()).unwrap();
        let right = bch(&g, &bch(&g, &a, &b).unwrap(), &c).unwrap();
        ctx.check_eq(
            trial,
            "bch-associativity",
            json!({"a": a.as_multivector().to_json(), "b": b.as_multivector().to_json(), "c": c.as_multivector().to_json()}),
            left.as_multivector(),
            right.as_multivector(),
        );
        let cell_zero = MultiVector::zero(n, order);
        let t = two_cell_target(&g, &a, &cell_zero, &gamma).unwrap();
        ctx.check_eq(
            trial,
            "two-cell-identity",
            json!({"lambda": a.as_multivector().to_json()}),
            t.as_multivector(),
            a.as_multivector(),
        );
    }
    ctx.cfg.trials
}
