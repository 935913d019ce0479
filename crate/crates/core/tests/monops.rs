use cbx_core::monops::*;
use cbx_core::quiverdata::{QuiverTheory, RootDatum};
use cbx_core::ratfield::{q, qf, Affine, MPoly, RatFunc, VarTable};
use cbx_core::shiftalg::{standard_weights, DiffOp};

fn aff(nv: usize, a: Affine) -> RatFunc {
    RatFunc::from_affine(nv, &a)
}

fn hbar_half(c: i64) -> Affine {
    Affine::term(VarTable::HBAR, qf(c, 2))
}

#[test]
fn quiver_e_arrow_orientation() {
    // Arrow from vertex 2 into vertex 1: the factor sits at the source.
    let a2 = QuiverTheory::new(&["1", "2"], &[(1, 0)], &[1, 1], &[0, 0]).unwrap();
    let vt = a2.var_table();
    let nv = vt.len();
    let (w1, w2) = (vt.gauge_slot(0, 0).unwrap(), vt.gauge_slot(1, 0).unwrap());
    let e2 = quiver_e(&a2, 1, 1, &SymFunc::one(), Dilation::Off).unwrap();
    let expect = DiffOp::shift(nv, w2, 1).lmul(&aff(nv, Affine::var(w1) - Affine::var(w2) - hbar_half(1)));
    assert_eq!(e2, expect);
    assert_eq!(quiver_e(&a2, 0, 1, &SymFunc::one(), Dilation::Off).unwrap(), DiffOp::shift(nv, w1, 1));

    let a2 = QuiverTheory::type_a(&[1, 1], &[0, 0]);
    assert_eq!(quiver_e(&a2, 1, 1, &SymFunc::one(), Dilation::Off).unwrap(), DiffOp::shift(nv, w2, 1));
}

#[test]
fn quiver_f_flavor_factors() {
    let a1 = QuiverTheory::type_a(&[1], &[2]);
    let vt = a1.var_table();
    let nv = vt.len();
    let w = vt.gauge()[0];
    let (z1, z2) = (vt.masses()[0], vt.masses()[1]);
    let c = aff(nv, Affine::var(w) - Affine::var(z1) - hbar_half(1)).mul(&aff(nv, Affine::var(w) - Affine::var(z2) - hbar_half(1)));
    assert_eq!(quiver_f(&a1, 0, 1, &SymFunc::one(), Dilation::Off).unwrap(), DiffOp::shift(nv, w, -1).lmul(&c));
}

#[test]
fn jordan_raw_loop_form() {
    let j = QuiverTheory::jordan(2, 0);
    let vt = j.var_table();
    let nv = vt.len();
    let (w1, w2) = (vt.gauge()[0], vt.gauge()[1]);
    let term = |r: usize, s: usize| {
        let c = aff(nv, Affine::var(s) - Affine::var(r) - hbar_half(1)).div(&aff(nv, Affine::var(r) - Affine::var(s))).unwrap();
        DiffOp::shift(nv, r, 1).lmul(&c)
    };
    let expect = term(w1, w2).add(&term(w2, w1));
    assert_eq!(quiver_e(&j, 0, 1, &SymFunc::one(), Dilation::Off).unwrap(), expect);
}

#[test]
fn absorbed_and_raw_jordan_agree() {
    for (a, l) in [(1, 1), (2, 1), (3, 2), (2, 0)] {
        let j = QuiverTheory::jordan(a, l);
        let vt = j.var_table();
        for n in 1..=a {
            for f in [SymFunc::one(), SymFunc::parse("e1").unwrap(), SymFunc::parse("e1^2-e2").unwrap()] {
                let sign = jordan_sign(a, n);
                let e = absorbed_to_raw(&jordan_ops(a, l, n, &f, OpKind::E).unwrap(), &vt).unwrap().scale(&sign);
                assert_eq!(e, quiver_e(&j, 0, n, &f, Dilation::On).unwrap(), "E a={a} l={l} n={n}");
                let fo = absorbed_to_raw(&jordan_ops(a, l, n, &f, OpKind::F).unwrap(), &vt).unwrap().scale(&sign);
                assert_eq!(fo, quiver_f(&j, 0, n, &f, Dilation::On).unwrap(), "F a={a} l={l} n={n}");
            }
        }
    }
}

#[test]
fn jordan_small_cases() {
    let vt = QuiverTheory::jordan(1, 2).var_table();
    let nv = vt.len();
    let w = vt.gauge()[0];
    assert_eq!(jordan_ops(1, 2, 1, &SymFunc::one(), OpKind::E).unwrap(), DiffOp::shift(nv, w, 1));
    let mut c = RatFunc::one(nv);
    for &z in vt.masses() {
        c = c.mul(&aff(nv, Affine::var(w) - Affine::var(VarTable::HBAR) - Affine::var(z)));
    }
    assert_eq!(jordan_ops(1, 2, 1, &SymFunc::one(), OpKind::F).unwrap(), DiffOp::shift(nv, w, -1).lmul(&c));

    let vt = QuiverTheory::jordan(2, 0).var_table();
    let nv = vt.len();
    let (w1, w2) = (vt.gauge()[0], vt.gauge()[1]);
    assert_eq!(jordan_ops(2, 0, 2, &SymFunc::one(), OpKind::E).unwrap(), DiffOp::shift(nv, w1, 1).mul(&DiffOp::shift(nv, w2, 1)));
    let t = Affine::var(VarTable::TFLAVOR);
    let term = |r: usize, s: usize| {
        let c = aff(nv, Affine::var(r))
            .mul(&aff(nv, Affine::var(r) - Affine::var(s) - t.clone()))
            .div(&aff(nv, Affine::var(r) - Affine::var(s)))
            .unwrap();
        DiffOp::shift(nv, r, 1).lmul(&c)
    };
    assert_eq!(jordan_ops(2, 0, 1, &SymFunc::parse("e1").unwrap(), OpKind::E).unwrap(), term(w1, w2).add(&term(w2, w1)));
}

#[test]
fn quiver_ops_are_symmetric_and_homogeneous() {
    let theories = [
        QuiverTheory::type_a(&[2, 1], &[1, 0]),
        QuiverTheory::type_a(&[2, 2], &[1, 1]),
        QuiverTheory::type_a(&[1, 2, 1], &[0, 1, 1]),
    ];
    for th in &theories {
        let vt = th.var_table();
        let wts = standard_weights(&vt);
        for i in 0..th.n_vertices() {
            let e = quiver_e(th, i, 1, &SymFunc::one(), Dilation::Off).unwrap();
            let f = quiver_f(th, i, 1, &SymFunc::one(), Dilation::Off).unwrap();
            assert!(is_vertex_symmetric(&e, &vt, i));
            assert!(is_vertex_symmetric(&f, &vt, i));
            assert_eq!(e.homogeneity(&wts, |_| 0), Some(th.mu2_pairing(i) + 1));
            assert_eq!(f.homogeneity(&wts, |_| 0), Some(th.mu1_pairing(i) + 1));
            if th.dim[i] == 2 {
                let e2 = quiver_e(th, i, 2, &SymFunc::parse("e2+e1").unwrap(), Dilation::Off).unwrap();
                assert!(is_vertex_symmetric(&e2, &vt, i));
            }
        }
    }
}

fn gl_coweight(th: &QuiverTheory, i: usize, n: usize, value: i64, tail: bool) -> Vec<i64> {
    let mut out = Vec::new();
    for (v, &a) in th.dim.iter().enumerate() {
        for r in 0..a {
            let hit = v == i && if tail { r >= a - n } else { r < n };
            out.push(if hit { value } else { 0 });
        }
    }
    out
}

#[test]
fn minuscule_general_reproduces_quiver_ops() {
    for th in [QuiverTheory::type_a(&[1, 1], &[1, 0]), QuiverTheory::type_a(&[2, 1], &[1, 1])] {
        let vt = th.var_table();
        let nv = vt.len();
        let rd = RootDatum::general_linear(&th.dim);
        let coords = vt.gauge().to_vec();
        let wts = quiver_weights(&th, &vt);
        for i in 0..th.n_vertices() {
            for n in 1..=th.dim[i] {
                let lam = gl_coweight(&th, i, n, 1, false);
                let op = minuscule_general(&rd, &coords, &lam, &MPoly::one(nv), &wts).unwrap();
                assert_eq!(op, quiver_e(&th, i, n, &SymFunc::one(), Dilation::Off).unwrap());
                let lam = gl_coweight(&th, i, n, -1, true);
                let op = minuscule_general(&rd, &coords, &lam, &MPoly::one(nv), &wts).unwrap();
                assert_eq!(op, quiver_f(&th, i, n, &SymFunc::one(), Dilation::Off).unwrap());
            }
        }
        // A nontrivial class, placed in front of the shift for E and behind it for F.
        let f = SymFunc::parse("e1").unwrap();
        let slots = vt.vertex_slots(0);
        let lam = gl_coweight(&th, 0, 1, 1, false);
        let fpoly = f.eval(&[MPoly::var(nv, slots[0])], nv);
        let op = minuscule_general(&rd, &coords, &lam, &fpoly, &wts).unwrap();
        assert_eq!(op, quiver_e(&th, 0, 1, &f, Dilation::Off).unwrap());
        let last = *slots.last().unwrap();
        let lam = gl_coweight(&th, 0, 1, -1, true);
        let shifted = f.eval(&[(Affine::var(last) - Affine::var(VarTable::HBAR)).to_mpoly(nv)], nv);
        let op = minuscule_general(&rd, &coords, &lam, &shifted, &wts).unwrap();
        assert_eq!(op, quiver_f(&th, 0, 1, &f, Dilation::Off).unwrap());
    }
}

#[test]
fn adjoint_minuscule_matches_closed_form() {
    let rd = RootDatum::simple('A', 2).unwrap();
    let (vt, coords) = root_datum_table(&rd);
    let nv = vt.len();
    let lam = rd.fundamental_coweight(0);
    let op = minuscule_general(&rd, &coords, &lam, &MPoly::one(nv), &adjoint_weights(&rd)).unwrap();
    let mut expect = DiffOp::zero(nv);
    for (lp, _) in rd.weyl_orbit(&lam) {
        let mut c = RatFunc::one(nv);
        for (r, _) in &rd.roots {
            if RootDatum::pairing(r, &lp) == 1 {
                let a = Affine::term(coords[0], q(r[0])) + Affine::term(coords[1], q(r[1]));
                let num = -a.clone() - hbar_half(1) + Affine::var(VarTable::TFLAVOR);
                c = c.mul(&aff(nv, num)).div(&aff(nv, a)).unwrap();
            }
        }
        let mut m = DiffOp::one(nv);
        for (k, &x) in lp.iter().enumerate() {
            if x != 0 {
                m = m.mul(&DiffOp::shift(nv, coords[k], x as i8));
            }
        }
        expect = expect.add(&m.lmul(&c));
    }
    assert_eq!(op, expect);
    assert_eq!(op.len(), 3);
    assert!(minuscule_general(&rd, &coords, &[1, 1], &MPoly::one(nv), &[]).is_err());
}

#[test]
fn quasi_minuscule_cases() {
    let rd = RootDatum::simple('A', 1).unwrap();
    let (vt, coords) = root_datum_table(&rd);
    let nv = vt.len();
    let op = quasi_minuscule(&rd, &coords, &MPoly::one(nv));
    let spec = op.specialize(&[(VarTable::HBAR, q(0)), (VarTable::TFLAVOR, q(0))]).unwrap();
    let x = coords[0];
    let expect = DiffOp::shift(nv, x, 2).add(&DiffOp::shift(nv, x, -2)).add(&DiffOp::scalar(RatFunc::constant(nv, q(2))));
    assert_eq!(spec, expect);

    let rd = RootDatum::simple('A', 2).unwrap();
    let (vt, coords) = root_datum_table(&rd);
    let nv = vt.len();
    let (_, theta) = rd.highest_root();
    assert_eq!(rd.weyl_orbit(&theta).len(), 6);
    let op = quasi_minuscule(&rd, &coords, &MPoly::one(nv));
    assert_eq!(op.len(), 7);
    let identity = op.terms().filter(|(m, _)| m.is_identity()).count();
    assert_eq!(identity, 1);
}
