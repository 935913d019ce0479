//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use cbx_core::classical::{abelian_surface_check, poisson_table, surface_sym_check, zastava_rank2_check, ZastavaCase};
use cbx_core::monopole::{dominant_box, hilbert_series, twisted_hilbert_series, FoldedTheory};
use cbx_core::monops::{jordan_ops, quasi_minuscule, root_datum_table, subsets, OpKind, SymFunc};
use cbx_core::quiverdata::{twice_delta, QuiverTheory, RootDatum};
use cbx_core::ratfield::{q, Affine, MPoly, RatFunc, VarTable};
use cbx_core::shiftalg::DiffOp;
use cbx_core::yangian::{expected_degree, rees_check, relation_suite, series_coeff, gklo_image, Generator, Relation};
use rayon::prelude::*;
use std::time::Instant;

type Outcome = Result<String, String>;

fn suite_theories() -> Vec<QuiverTheory> {
    let mut out = Vec::new();
    for a in 1..=3 {
        for l in 0..=2 {
            out.push(QuiverTheory::type_a(&[a], &[l]));
        }
    }
    for dims in [[1, 1], [2, 1], [2, 2]] {
        for flavor in [[0, 0], [1, 0], [0, 1], [1, 1]] {
            out.push(QuiverTheory::type_a(&dims, &flavor));
        }
    }
    out.push(QuiverTheory::type_a(&[1, 1, 1], &[0, 0, 0]));
    out.push(QuiverTheory::type_a(&[1, 1, 1], &[1, 0, 1]));
    out
}

fn describe(th: &QuiverTheory) -> String {
    format!("dims {:?} flavor {:?}", th.dim, th.flavor)
}

fn relation_suite_criterion() -> Outcome {
    let theories = suite_theories();
    let results: Vec<Result<usize, String>> = theories
        .par_iter()
        .map(|th| {
            let reports = relation_suite(th, &Relation::ALL).map_err(|e| format!("{}: {e}", describe(th)))?;
            match reports.iter().find(|r| !r.verified()) {
                Some(r) => Err(format!("{}: {} {:?} witness {:?}", describe(th), r.relation, r.vertices, r.witness)),
                None => Ok(reports.len()),
            }
        })
        .collect();
    let mut total = 0;
    for r in results {
        total += r?;
    }
    Ok(format!("{total} relation instances over {} theories", theories.len()))
}

fn truncation_criterion() -> Outcome {
    let mut checked = 0;
    for th in suite_theories() {
        let vt = th.var_table();
        for i in 0..th.n_vertices() {
            let a = gklo_image(&th, Generator::A, i, 0).map_err(|e| e.to_string())?;
            for p in 1..=th.dim[i] + 3 {
                let zero = series_coeff(&a, &vt, 0, p).is_zero();
                if zero != (p > th.dim[i]) {
                    return Err(format!("{} vertex {i}: A^({p}) zero = {zero}", describe(&th)));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} coefficients, zero exactly for p > a_i"))
}

fn rees_criterion() -> Outcome {
    let mut checked = 0;
    for th in suite_theories() {
        for i in 0..th.n_vertices() {
            for g in [Generator::A, Generator::E, Generator::F, Generator::H] {
                for p in 1..=3 {
                    let d = rees_check(&th, g, i, p).map_err(|e| format!("{} {g:?}^({p}) at {i}: {e}", describe(&th)))?;
                    let expect = expected_degree(&th, g, i, p);
                    if d != expect {
                        return Err(format!("{} {g:?}^({p}) at {i}: degree {d}, expected {expect}", describe(&th)));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} generator coefficients homogeneous of the expected degree"))
}

fn jordan_commutativity_criterion() -> Outcome {
    let mut cases = Vec::new();
    for a in 1..=4 {
        for l in 0..=2 {
            for m in 1..=a {
                for n in m + 1..=a {
                    for kind in [OpKind::E, OpKind::F] {
                        cases.push((a, l, m, n, kind));
                    }
                }
            }
        }
    }
    let one = SymFunc::one();
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|&(a, l, m, n, kind)| {
            let x = jordan_ops(a, l, m, &one, kind).ok()?;
            let y = jordan_ops(a, l, n, &one, kind).ok()?;
            (!x.commutator(&y).is_zero()).then(|| format!("a={a} l={l} [{kind:?}_{m},{kind:?}_{n}] != 0"))
        })
        .collect();
    match failures.first() {
        Some(f) => Err(f.clone()),
        None => Ok(format!("{} commutators vanish (a <= 4, l <= 2, symbolic hbar, t, z)", cases.len())),
    }
}

fn abelian_oracle_criterion() -> Outcome {
    for l in 1..=4 {
        let r = abelian_surface_check(l, 20).map_err(|e| e.to_string())?;
        if !r.verified() {
            return Err(format!("l={l}: {:?}", r.witness));
        }
    }
    Ok("U(1) with l = 1..4 flavors equals xy = w^l to t^20".into())
}

fn nonabelian_oracle_criterion() -> Outcome {
    let cases: Vec<(usize, usize)> = (1..=3).flat_map(|a| (1..=3).map(move |l| (a, l))).collect();
    let results: Vec<Result<(), String>> = cases
        .par_iter()
        .map(|&(a, l)| {
            let r = surface_sym_check(a, l, 16).map_err(|e| format!("a={a} l={l}: {e}"))?;
            if r.verified() {
                Ok(())
            } else {
                Err(format!("a={a} l={l}: {:?}", r.witness))
            }
        })
        .collect();
    for r in results {
        r?;
    }
    Ok("Jordan theories (a <= 3, l = 1..3) equal Sym^a of the surface to t^16".into())
}

fn folding_criterion() -> Outcome {
    let d4 = |dims: [usize; 4], flavor: [usize; 4]| {
        QuiverTheory::new(&["1", "2", "3", "4"], &[(1, 0), (1, 2), (1, 3)], &dims, &flavor).expect("valid D4 quiver")
    };
    let mut checked = 0;
    for th in [d4([1, 2, 1, 1], [1, 0, 1, 1]), d4([2, 3, 2, 2], [0, 1, 0, 0]), d4([1, 1, 1, 1], [1, 0, 1, 1])] {
        let folded = FoldedTheory::new(th.clone(), &[vec![0, 2, 3]]).map_err(|e| e.to_string())?;
        for lhat in dominant_box(&th.dim, 2) {
            if !folded.in_y_prime(&lhat) {
                continue;
            }
            let theta = folded.fold_psi(&lhat).map_err(|e| e.to_string())?;
            let (lhs, rhs) = (twice_delta(&th, &lhat), folded.twice_delta_twisted(&theta));
            if lhs != rhs {
                return Err(format!("{} at {:?}: {lhs} vs {rhs}", describe(&th), lhat.0));
            }
            if folded.fold_psi_inverse(&theta) != lhat {
                return Err(format!("{} psi inverse fails at {:?}", describe(&th), lhat.0));
            }
            checked += 1;
        }
    }
    let identity_cases = [
        QuiverTheory::type_a(&[2], &[4]),
        QuiverTheory::type_a(&[1, 1], &[1, 1]),
        QuiverTheory::type_a(&[1, 2], &[0, 3]),
        QuiverTheory::type_a(&[1, 1, 1], &[1, 0, 1]),
    ];
    for th in identity_cases {
        let plain = hilbert_series(&th, 12, 8).map_err(|e| format!("{}: {e}", describe(&th)))?;
        let twisted = twisted_hilbert_series(&FoldedTheory::identity(th.clone()), 12, 8).map_err(|e| e.to_string())?;
        if plain != twisted {
            return Err(format!("{}: identity fold differs at t^{:?}", describe(&th), plain.first_difference(&twisted)));
        }
    }
    Ok(format!("{checked} coweights in Y' agree; identity fold equals the plain series to t^12"))
}

fn classical_criterion() -> Outcome {
    for case in [ZastavaCase::Disconnected, ZastavaCase::Connected, ZastavaCase::SameVertex] {
        let r = zastava_rank2_check(case).map_err(|e| e.to_string())?;
        if !r.verified() {
            return Err(format!("{case:?}: {:?}", r.witness));
        }
    }
    for th in [QuiverTheory::type_a(&[2, 1], &[1, 0]), QuiverTheory::type_a(&[1, 1, 1], &[0, 1, 0])] {
        let t = poisson_table(&th).map_err(|e| e.to_string())?;
        if !t.report.verified() {
            return Err(format!("poisson {}: {:?}", describe(&th), t.report.witness));
        }
    }
    let rd = RootDatum::simple('A', 1).map_err(|e| e.to_string())?;
    let (vt, coords) = root_datum_table(&rd);
    let nv = vt.len();
    let op = quasi_minuscule(&rd, &coords, &MPoly::one(nv));
    let spec = op.specialize(&[(VarTable::HBAR, q(0)), (VarTable::TFLAVOR, q(0))]).map_err(|e| e.to_string())?;
    let (_, coroot) = rd.highest_root();
    let x = coords[0];
    let e = coroot[0] as i8;
    let expect = DiffOp::shift(nv, x, e).add(&DiffOp::shift(nv, x, -e)).add(&DiffOp::scalar(RatFunc::constant(nv, q(2))));
    if spec != expect {
        return Err(format!("quasi-minuscule sl2: {}", spec.render(&vt)));
    }
    Ok("zastava rank-2 cases, Poisson table {w,u} = -u, quasi-minuscule sl2 = u + u^-1 + 2".into())
}

fn specialization_criterion() -> Outcome {
    let fs = ["1", "e1", "e1^2-e2", "e1*e2+3"];
    let mut checked = 0;
    for a in 1..=3 {
        for l in 0..=2 {
            let th = QuiverTheory::jordan(a, l);
            let vt = th.var_table();
            let nv = vt.len();
            let mut zero: Vec<_> = vec![(VarTable::HBAR, q(0)), (VarTable::TFLAVOR, q(0))];
            zero.extend(vt.masses().iter().map(|&z| (z, q(0))));
            let w = vt.gauge().to_vec();
            for n in 1..=a {
                for fs in fs {
                    let f = SymFunc::parse(fs).map_err(|e| e.to_string())?;
                    let (mut e_expect, mut f_expect) = (DiffOp::zero(nv), DiffOp::zero(nv));
                    for subset in subsets(a, n) {
                        let args: Vec<MPoly> = subset.iter().map(|&r| MPoly::var(nv, w[r])).collect();
                        let fw = RatFunc::from_mpoly(f.eval(&args, nv));
                        let mut up = DiffOp::scalar(fw.clone());
                        let mut down = DiffOp::scalar(fw);
                        for &r in &subset {
                            up = up.mul(&DiffOp::shift(nv, w[r], 1));
                            let wl = RatFunc::var(nv, w[r]).pow(l as u32);
                            down = down.mul(&DiffOp::shift(nv, w[r], -1).lmul(&wl));
                        }
                        e_expect = e_expect.add(&up);
                        f_expect = f_expect.add(&down);
                    }
                    let e_spec = jordan_ops(a, l, n, &f, OpKind::E).and_then(|o| o.specialize(&zero)).map_err(|e| e.to_string())?;
                    let f_spec = jordan_ops(a, l, n, &f, OpKind::F).and_then(|o| o.specialize(&zero)).map_err(|e| e.to_string())?;
                    if e_spec != e_expect {
                        return Err(format!("E a={a} l={l} n={n} f={fs}: {}", e_spec.render(&vt)));
                    }
                    if f_spec != f_expect {
                        return Err(format!("F a={a} l={l} n={n} f={fs}: {}", f_spec.render(&vt)));
                    }
                    checked += 2;
                }
            }
        }
    }
    Ok(format!("{checked} specialized Jordan operators match term for term"))
}

fn proof_identity_criterion() -> Outcome {
    let (z, y, w, h) = (2usize, 3usize, 4usize, 0usize);
    let nv = 5;
    let v = |s: usize| Affine::var(s);
    let f = |a: Affine| RatFunc::from_affine(nv, &a);
    let inv = |a: Affine| RatFunc::inv_affine(nv, &a).expect("nonzero form");
    for hbar in [Affine::constant(q(1)), v(h)] {
        let lhs = f(v(z) - v(y) - hbar.clone()).mul(&inv(v(y) - v(w))).mul(&inv(v(z) - v(w))).mul(&inv(v(z) - v(w) - hbar.clone()));
        let bracket = f(v(z) - v(y) + hbar.clone())
            .mul(&inv(v(y) - v(w)))
            .sub(&f(hbar.clone() * q(2)).mul(&inv(v(z) - v(w) - hbar.clone())));
        let rhs = bracket.mul(&inv(v(z) - v(w) + hbar.clone())).mul(&inv(v(z) - v(w)));
        if lhs != rhs {
            return Err(format!("identity fails with hbar = {hbar:?}"));
        }
        let cleared = bracket.mul(&f(v(z) - v(w) - hbar.clone())).mul(&f(v(y) - v(w)));
        let expect = f(v(z) - v(y) + hbar.clone()).mul(&f(v(z) - v(w) - hbar.clone())).sub(&f((v(y) - v(w)) * q(2)).mul(&f(hbar.clone())));
        if cleared != expect {
            return Err("cleared denominators differ".into());
        }
    }
    Ok("case i = j of the (H,E) relation holds as an exact rational identity".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("GKLO relation suite", relation_suite_criterion),
        ("Truncation kernel", truncation_criterion),
        ("Rees homogeneity", rees_criterion),
        ("Jordan commutativity", jordan_commutativity_criterion),
        ("Abelian Hilbert-series oracle", abelian_oracle_criterion),
        ("Nonabelian Hilbert-series oracle", nonabelian_oracle_criterion),
        ("Folding", folding_criterion),
        ("Classical layer", classical_criterion),
        ("Specialization", specialization_criterion),
        ("Engine identity", proof_identity_criterion),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {:>2}. {name}: {detail} ({secs:.2}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}. {name}: {why} ({secs:.2}s)", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
