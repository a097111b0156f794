use antialg::catalog::{build_asl2, semidirect, AntiModule};
use antialg::cohomology::*;
use antialg::graded::{BasisLabel, GradedVector};
use antialg::linalg::RatMatrix;
use antialg::rational::{int, rat, Rat};
use std::collections::BTreeMap;

// δ10 with parametrized mixed-sum conventions: insertion position and sign
fn delta10_variant(
    c: &CochainComplex,
    phi: &Cochain,
    xs: &[BasisLabel],
    ys: &[BasisLabel],
    slot_insert: bool,
    sign_exp: &dyn Fn(usize, usize) -> usize, // (p, j) -> exponent
) -> GradedVector {
    let p = phi.p;
    let q = phi.q;
    let bx: Vec<GradedVector> = xs.iter().cloned().map(GradedVector::basis).collect();
    let by: Vec<GradedVector> = ys.iter().cloned().map(GradedVector::basis).collect();
    let mut out = GradedVector::zero();
    for i in 1..=p {
        let merged = c.m_alg_public(&bx[i - 1], &bx[i]);
        let mut args: Vec<GradedVector> = Vec::new();
        args.extend_from_slice(&bx[..i - 1]);
        args.push(merged);
        args.extend_from_slice(&bx[i + 1..]);
        let sign = if i % 2 == 1 { -int(1) } else { int(1) };
        out.add_scaled(&phi.eval(&args, &by).unwrap(), &sign);
    }
    if q > 0 {
        let weight = rat(1, q as i64);
        for j in 1..=q {
            let merged = c.m_alg_public(&bx[p], &by[j - 1]);
            let mut odd_args: Vec<GradedVector> = Vec::new();
            if slot_insert {
                for (t, arg) in by.iter().enumerate() {
                    if t == j - 1 {
                        odd_args.push(merged.clone());
                    } else {
                        odd_args.push(arg.clone());
                    }
                }
            } else {
                odd_args.push(merged);
                for (t, arg) in by.iter().enumerate() {
                    if t != j - 1 {
                        odd_args.push(arg.clone());
                    }
                }
            }
            let e = sign_exp(p, j);
            let sign: Rat = if e % 2 == 1 { -int(1) } else { int(1) };
            out.add_scaled(&phi.eval(&bx[..p], &odd_args).unwrap(), &(&sign * &weight));
        }
    }
    out
}

fn delta_total(
    c: &CochainComplex,
    k: usize,
    slot_insert: bool,
    sign_exp: &dyn Fn(usize, usize) -> usize,
) -> RatMatrix {
    let src = c.total_basis(k, None);
    let dst = c.total_basis(k + 1, None);
    let dst_index: BTreeMap<&(usize, usize, CoKey), usize> =
        dst.iter().enumerate().map(|(i, kk)| (kk, i)).collect();
    let mut m = RatMatrix::new(dst.len(), src.len());
    for (col, (p, q, key)) in src.iter().enumerate() {
        let mut phi = Cochain::new(*p, *q);
        phi.add_term(key.clone(), &int(1));
        for out_key in c.block_keys(p + 1, *q, None) {
            let v = delta10_variant(c, &phi, &out_key.0, &out_key.1, slot_insert, sign_exp);
            if let Some(&row) = dst_index.get(&(p + 1, *q, out_key.clone())) {
                m.add_to(row, col, &v.coeff(&out_key.2));
            }
        }
        if *p >= 1 {
            for out_key in c.block_keys(p - 1, q + 2, None) {
                let v = c.delta_m12_at(&phi, &out_key.0, &out_key.1).unwrap();
                if let Some(&row) = dst_index.get(&(p - 1, q + 2, out_key.clone())) {
                    m.add_to(row, col, &v.coeff(&out_key.2));
                }
            }
        }
    }
    m
}

fn main() {
    let asl2 = build_asl2();
    let a6 = semidirect(&asl2, &AntiModule::adjoint(&asl2).unwrap()).unwrap();
    let variants: Vec<(&str, bool, Box<dyn Fn(usize, usize) -> usize>)> = vec![
        ("front, p+j", false, Box::new(|p, j| p + j)),
        ("slot,  p+j", true, Box::new(|p, j| p + j)),
        ("front, p+1", false, Box::new(|p, _| p + 1)),
        ("slot,  p+1", true, Box::new(|p, _| p + 1)),
        ("front, j", false, Box::new(|_, j| j)),
        ("slot,  j", true, Box::new(|_, j| j)),
        ("front, p", false, Box::new(|p, _| p)),
        ("slot,  p", true, Box::new(|p, _| p)),
    ];
    for (name, slot, f) in &variants {
        let mut all_ok = true;
        for (aname, a) in [("asl2", &asl2), ("asl2⋉ad", &a6)] {
            let c = CochainComplex::trivial_even(a);
            for k in 0..=2usize {
                let d = delta_total(&c, k, *slot, f.as_ref());
                let d1 = delta_total(&c, k + 1, *slot, f.as_ref());
                if !d1.mul(&d).is_zero() {
                    all_ok = false;
                    println!("{name}: δ² fails on {aname} at k={k}");
                    break;
                }
            }
            if !all_ok { break; }
        }
        if all_ok {
            println!("{name}: δ² = 0 on asl2 and asl2⋉ad up to k = 2  ✓✓✓");
        }
    }
}
