//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any failure.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};

use num_traits::{One, Zero};
use serde_json::Value;

use hodgekit::json::{parse_mhs, parse_mhs_parts, parse_pencil, parse_triple};
use hodgekit::linalg::scalar::{gq, rat};
use hodgekit::loci::{can_lift, locus_on_pencil, Construction, LocusKind};
use hodgekit::mhs::axiom_violations;
use hodgekit::mhs::functors::{dual, end, hom, hom_vec_to_matrix, matrix_to_hom_vec, tensor};
use hodgekit::radical::{
    ext_class_from_sections, ext_class_rep, genericity_experiment, in_sum_mod_rational,
    mt_lie_upper_bound, splits_mod, splits_mod_with, u_p_tate,
};
use hodgekit::sample::{random_mhs, random_triple};
use hodgekit::triple::{TPoint, Triple};
use hodgekit::{GaussRat, Matrix, Mhs, Rat, Scalar, Subspace};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn read(name: &str) -> Value {
    let text = std::fs::read_to_string(corpus(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn mhs(name: &str) -> Mhs {
    parse_mhs(&read(name), "").unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn triple(name: &str) -> Triple {
    parse_triple(&read(name), "").unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

const VALID: [&str; 8] = [
    "tate_0.json",
    "tate_1.json",
    "tate_-1.json",
    "kummer_0.json",
    "kummer_half.json",
    "kummer_i.json",
    "kummer_1pi.json",
    "two_weight4.json",
];

fn kummer_corpus() -> Vec<(&'static str, GaussRat)> {
    vec![
        ("kummer_0.json", gq(0, 1, 0, 1)),
        ("kummer_half.json", gq(1, 2, 0, 1)),
        ("kummer_i.json", gq(0, 1, 1, 1)),
        ("kummer_1pi.json", gq(1, 1, 1, 1)),
    ]
}

fn kummer(z: &GaussRat) -> Mhs {
    let mu = triple("triple_kummer.json");
    let mut params = BTreeMap::new();
    params.insert((-2, 0), Matrix::from_rows(vec![vec![z.clone()]], 1).unwrap());
    mu.build(&mu.point_from_params(&params).unwrap()).unwrap()
}

fn c1_validation() -> Check {
    for name in VALID {
        let (dim, w, f) = parse_mhs_parts(&read(name), "").map_err(|e| e.to_string())?;
        let report = Mhs::check(dim, &w, &f);
        ensure(report.is_valid(), || format!("{name} rejected: {report}"))?;
    }
    let expect_invalid: [(&str, bool, &[i32]); 3] = [
        ("kummer_bad_f0.json", false, &[-2, 0]),
        ("kummer_bad_w.json", true, &[]),
        ("two_weight4_bad.json", false, &[-1]),
    ];
    for (name, filtration, weights) in expect_invalid {
        let (dim, w, f) = parse_mhs_parts(&read(name), "").map_err(|e| e.to_string())?;
        let report = Mhs::check(dim, &w, &f);
        ensure(!report.is_valid(), || format!("{name} accepted"))?;
        ensure(report.filtration.is_empty() != filtration, || {
            format!("{name}: unexpected filtration report {:?}", report.filtration)
        })?;
        if !filtration {
            let mut ns: Vec<i32> = report.purity.iter().map(|p| p.n).collect();
            ns.dedup();
            ensure(ns == weights, || format!("{name}: impure weights {ns:?}, expected {weights:?}"))?;
        }
    }
    let ms: Vec<Mhs> = VALID.iter().map(|n| mhs(n)).collect();
    for (i, m) in ms.iter().enumerate() {
        let mut outs = vec![dual(m), end(m)];
        outs.extend(m.gr_w().into_values());
        for n in &ms[i..] {
            outs.push(tensor(m, n));
            outs.push(hom(m, n));
        }
        for (k, o) in outs.iter().enumerate() {
            ensure(o.validate().is_valid(), || format!("functor output {k} on {} invalid", VALID[i]))?;
        }
    }
    Ok(())
}

fn c2_bigrading() -> Check {
    for seed in 0..24u64 {
        let m = random_mhs(seed, 6);
        ensure(m.dim() <= 6 && m.validate().is_valid(), || format!("seed {seed}: bad sample"))?;
        let bad = axiom_violations(&m);
        ensure(bad.is_empty(), || format!("seed {seed}: {bad:?}"))?;
    }
    for name in VALID {
        let bad = axiom_violations(&mhs(name));
        ensure(bad.is_empty(), || format!("{name}: {bad:?}"))?;
    }
    Ok(())
}

/// `exp(X)` for nilpotent `X`.
fn exp_nilpotent(x: &Matrix<GaussRat>) -> Matrix<GaussRat> {
    let n = x.rows();
    let mut out = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..=n {
        term = term.mul(x).unwrap().scale(&GaussRat::from_rat(rat(1, k as i64)));
        if term.is_zero() {
            break;
        }
        out = out.add(&term).unwrap();
    }
    out
}

/// `α·u`, cut back into sections by weight block.
fn act(mu: &Triple, alpha: &TPoint, u: &Matrix<GaussRat>) -> TPoint {
    let prod = alpha.matrix(mu.dim()).mul(u).unwrap();
    TPoint {
        sections: mu
            .frame()
            .pieces()
            .iter()
            .map(|p| (p.weight, prod.column_block(p.offset, p.dim)))
            .collect(),
    }
}

fn combo(basis: &[Vec<GaussRat>], coeffs: &[GaussRat]) -> Vec<GaussRat> {
    let mut v = vec![GaussRat::zero(); basis[0].len()];
    for (b, c) in basis.iter().zip(coeffs) {
        for (x, y) in v.iter_mut().zip(b) {
            *x = x.clone() + y.clone() * c.clone();
        }
    }
    v
}

fn c3_sections() -> Check {
    for seed in 0..20u64 {
        let mu = random_triple(seed, 6);
        let m = mu.build(&mu.sample_point(seed, 10)).map_err(|e| e.to_string())?;
        let alpha = mu.sections_from_mhs(&m).map_err(|e| e.to_string())?;
        let back = mu.build(&alpha).map_err(|e| e.to_string())?;
        ensure(back.hodge() == m.hodge(), || format!("seed {seed}: round trip moved F"))?;
    }
    let mut triples = vec![triple("triple_two_weight4.json")];
    triples.extend((0..40u64).map(|s| random_triple(s, 6)));
    let (mut equal, mut unequal) = (0, 0);
    for (k, mu) in triples.iter().enumerate() {
        let lie = mu.lie_data();
        let d = mu.dim();
        let f0 = lie.f0_w_minus1_end.basis().to_vec();
        let outside: Vec<Vec<GaussRat>> = lie
            .w_minus1_end
            .to_gauss()
            .basis()
            .iter()
            .filter(|v| !lie.f0_w_minus1_end.contains(v))
            .cloned()
            .collect();
        for j in 0..3u64 {
            let alpha = mu.sample_point_indexed(k as u64, j, 6);
            let coeffs: Vec<GaussRat> = (0..d * d).map(|i| gq(i as i64 + 1, 2, j as i64 - 1, 3)).collect();
            for (space, expect) in [(&f0, true), (&outside, false)] {
                if space.is_empty() {
                    continue;
                }
                let x = hom_vec_to_matrix(&combo(space, &coeffs), d, d);
                let beta = act(mu, &alpha, &exp_nilpotent(&x));
                let by_f = mu.equal_in_s(&alpha, &beta).map_err(|e| e.to_string())?;
                let by_group = mu.group_criterion(&alpha, &beta).map_err(|e| e.to_string())?;
                ensure(by_f == by_group, || format!("triple {k}: criteria disagree"))?;
                ensure(by_f == expect, || format!("triple {k}: constructed pair misjudged"))?;
                if expect {
                    equal += 1;
                } else {
                    unequal += 1;
                }
            }
        }
    }
    ensure(equal >= 25 && unequal >= 25, || format!("only {equal} equal and {unequal} unequal pairs"))
}

fn c4_truncation() -> Check {
    for name in ["triple_kummer.json", "tate3.json", "triple_two_weight4.json"] {
        let mu = triple(name);
        let mut points = vec![mu.identity_point()];
        points.extend((0..3).map(|k| mu.sample_point_indexed(11, k, 10)));
        for alpha in &points {
            let m = mu.build(alpha).map_err(|e| e.to_string())?;
            for p in mu.weight().jumps() {
                let tr = mu.truncate(p);
                let (a, b) = mu.truncate_point(&tr, alpha).map_err(|e| e.to_string())?;
                let x = tr.sub.build(&a).map_err(|e| e.to_string())?;
                let y = tr.quot.build(&b).map_err(|e| e.to_string())?;
                ensure(x.same_as(&m.sub(&tr.w_p).unwrap()), || format!("{name}, p = {p}: sub differs"))?;
                ensure(y.same_as(&m.quotient(&tr.w_p).unwrap()), || {
                    format!("{name}, p = {p}: quotient differs")
                })?;
                if x.dim() > 0 && y.dim() > 0 {
                    let fd = mu.fiber_dim(&tr, &x, &y).map_err(|e| e.to_string())?;
                    ensure(fd >= 1, || format!("{name}, p = {p}: empty fiber"))?;
                }
            }
        }
    }
    Ok(())
}

fn c5_lifting() -> Check {
    let gr0 = Subspace::coordinate(2, &[1]);
    for (name, z) in kummer_corpus() {
        let m = mhs(name);
        // every lift of Gr_0 is span(c·e1 + e2)
        let mut found: Vec<Subspace<Rat>> = Vec::new();
        for a in -12..=12 {
            for b in 1..=12 {
                let cand = Subspace::span(2, vec![vec![rat(a, b), Rat::one()]]).unwrap();
                if m.sub(&cand).is_ok() && !found.contains(&cand) {
                    found.push(cand);
                }
            }
        }
        let lift = can_lift(&m, &gr0).map_err(|e| e.to_string())?;
        let rational = z.as_rat().is_some();
        ensure(lift.is_some() == rational, || format!("{name}: lift exists = {}", lift.is_some()))?;
        ensure(found.len() == usize::from(rational), || format!("{name}: search found {}", found.len()))?;
        if let Some(a) = lift {
            ensure(found[0] == a, || format!("{name}: lift differs from search"))?;
        }
    }
    Ok(())
}

fn c6_extension() -> Check {
    let zs = [
        gq(0, 1, 0, 1),
        gq(1, 2, 0, 1),
        gq(2, 3, 0, 1),
        gq(3, 1, 0, 1),
        gq(0, 1, 1, 1),
        gq(1, 1, 1, 1),
        gq(1, 2, 1, 3),
    ];
    for z in &zs {
        let m = kummer(z);
        let rational = z.as_rat().is_some();
        let split = splits_mod(&m, -2, &Subspace::zero(1)).map_err(|e| e.to_string())?;
        ensure(split == rational, || format!("z = {}: splits = {split}", z.format()))?;
        let (hd, rep) = ext_class_rep(&m, -2).map_err(|e| e.to_string())?;
        let h_dim = hd.h.dim();
        let iota = hd.inclusion.clone();
        let hodge_moves = hd
            .hom
            .f(0)
            .intersect(&Subspace::image_of(&iota).to_gauss())
            .unwrap();
        for k in 0..20i64 {
            let h: Vec<Rat> = (0..h_dim).map(|i| rat(k - 10 + i as i64, 3)).collect();
            let shift = iota.apply(&h).unwrap();
            let f_rat: Vec<Rat> = rep.f_rational.iter().zip(&shift).map(|(a, b)| a + b).collect();
            let mut f_hodge = rep.f_hodge.clone();
            if !hodge_moves.is_zero() {
                let c: Vec<GaussRat> = (0..hodge_moves.dim()).map(|i| gq(k, 1, i as i64 + 1, 2)).collect();
                for (x, y) in f_hodge.iter_mut().zip(combo(hodge_moves.basis(), &c)) {
                    *x = x.clone() + y;
                }
            }
            let other = ext_class_from_sections(&hd, f_rat, f_hodge).map_err(|e| e.to_string())?;
            let diff: Vec<GaussRat> = other.e.iter().zip(&rep.e).map(|(a, b)| a.clone() - b.clone()).collect();
            ensure(in_sum_mod_rational(&diff, &hd.h.f(0), &Subspace::full(h_dim)), || {
                format!("z = {}: class moved with the choice", z.format())
            })?;
            let again = splits_mod_with(&hd, &other, &Subspace::zero(h_dim)).map_err(|e| e.to_string())?;
            ensure(again == split, || format!("z = {}: decision moved with the choice", z.format()))?;
        }
    }
    Ok(())
}

fn c7_experiment() -> Check {
    let mu = triple("tate3.json");
    let weights: Vec<i32> = mu.graded().keys().copied().collect();
    ensure(weights == vec![-6, -2, 0], || format!("weights {weights:?}"))?;
    let report = genericity_experiment(&mu, 100, 7, 10).map_err(|e| e.to_string())?;
    ensure(report.n_samples == 100, || "wrong sample count".into())?;
    ensure(report.all_large_count >= 95, || format!("{} of 100 large", report.all_large_count))?;
    ensure(report.degenerate.len() == 3, || "expected 3 control points".into())?;
    for (k, c) in report.degenerate.iter().enumerate() {
        ensure(!c.large && !c.failing_p.is_empty(), || format!("control point {k} reported large"))?;
    }
    Ok(())
}

fn c8_loci() -> Check {
    let pencil = parse_pencil(&read("kummer_pencil.json"), "").map_err(|e| e.to_string())?;
    let (c, v) = pencil.splitting_witness().map_err(|e| e.to_string())?;
    let locus = locus_on_pencil(&pencil, &v, &c).map_err(|e| e.to_string())?;
    ensure(locus.kind == LocusKind::AffineSubset, || "witness locus is ALL".into())?;
    ensure(locus.point == Some(GaussRat::zero()), || format!("witness point {:?}", locus.point))?;
    for t in [gq(0, 1, 0, 1), gq(1, 2, 0, 1), gq(0, 1, 1, 1)] {
        let is_split = splits_mod(&pencil.mhs_at(&t).unwrap(), -2, &Subspace::zero(1)).unwrap();
        let hodge = c.eval(&pencil.mhs_at(&t).unwrap()).unwrap().hodge_classes().contains(&v);
        ensure(locus.contains(&t) == hodge, || format!("locus disagrees with t = {}", t.format()))?;
        ensure(!locus.contains(&t) || is_split, || "locus point does not split".into())?;
    }
    let id = matrix_to_hom_vec(&Matrix::<Rat>::identity(2));
    let all = locus_on_pencil(&pencil, &id, &Construction::end()).map_err(|e| e.to_string())?;
    ensure(all.kind == LocusKind::All, || "identity locus is proper".into())
}

/// `f ↦ ι∘f∘π`, from `H` coordinates into `End(M)` coordinates.
fn h_to_end(m: &Mhs, p: i32, u: &Subspace<Rat>) -> Subspace<Rat> {
    let (hd, _) = ext_class_rep(m, p).unwrap();
    let iota = hd.w_p.basis_matrix();
    let pi = &hd.quot_map.proj;
    let rows = u
        .basis()
        .iter()
        .map(|v| {
            let f = hom_vec_to_matrix(v, pi.rows(), iota.cols());
            matrix_to_hom_vec(&iota.mul(&f).unwrap().mul(pi).unwrap())
        })
        .collect();
    Subspace::span(m.dim() * m.dim(), rows).unwrap()
}

fn c9_mt_bound() -> Check {
    let w1 = end(&kummer(&gq(1, 2, 0, 1))).w(-1);
    let g = mt_lie_upper_bound(&kummer(&gq(1, 2, 0, 1)), 2).map_err(|e| e.to_string())?;
    ensure(g.intersect(&w1).unwrap().is_zero(), || "z = 1/2: g_2 meets W_{-1}End".into())?;
    let g = mt_lie_upper_bound(&kummer(&gq(0, 1, 1, 1)), 2).map_err(|e| e.to_string())?;
    ensure(g.contains_subspace(&end(&kummer(&gq(0, 1, 1, 1))).w(-1)), || {
        "z = i: g_2 misses W_{-1}End".into()
    })?;
    let tate3 = triple("tate3.json");
    let mut objects: Vec<(String, Mhs)> = VALID.iter().map(|n| (n.to_string(), mhs(n))).collect();
    for k in 0..2 {
        objects.push((format!("tate3 sample {k}"), tate3.build(&tate3.sample_point_indexed(7, k, 10)).unwrap()));
    }
    for (name, m) in &objects {
        let g1 = mt_lie_upper_bound(m, 1).map_err(|e| e.to_string())?;
        let g2 = mt_lie_upper_bound(m, 2).map_err(|e| e.to_string())?;
        ensure(g1.contains_subspace(&g2), || format!("{name}: g_2 not inside g_1"))?;
        let jumps = m.weight().jumps();
        if jumps.len() < 2 || hodgekit::radical::check_tate_regime(m).is_err() {
            continue;
        }
        for &p in &jumps[..jumps.len() - 1] {
            let u = u_p_tate(m, p).map_err(|e| e.to_string())?;
            ensure(g2.contains_subspace(&h_to_end(m, p, &u.subspace)), || {
                format!("{name}, p = {p}: u_p not inside g_2")
            })?;
        }
    }
    Ok(())
}

fn c10_determinism() -> Check {
    let dir = std::env::temp_dir().join(format!("hodgekit-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut reports = Vec::new();
    for k in 0..2 {
        let out = dir.join(format!("run{k}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_hodgekit"))
            .arg("experiment")
            .arg("--triple")
            .arg(corpus("tate3.json"))
            .args(["--seed", "7", "--out"])
            .arg(&out)
            .status()
            .map_err(|e| e.to_string())?;
        ensure(status.success(), || format!("run {k} exited with {status}"))?;
        reports.push(std::fs::read(&out).map_err(|e| e.to_string())?);
    }
    let _ = std::fs::remove_dir_all(&dir);
    ensure(!reports[0].is_empty() && reports[0] == reports[1], || "reports differ".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("MHS validation on the corpus", c1_validation),
        ("Deligne bigrading axioms on random MHS", c2_bigrading),
        ("sections round trip and equality criteria", c3_sections),
        ("truncation and fiber dimensions", c4_truncation),
        ("lifting against exhaustive search", c5_lifting),
        ("extension classes of the Kummer family", c6_extension),
        ("genericity experiment on weights 0, -2, -6", c7_experiment),
        ("Hodge locus shape on the Kummer pencil", c8_loci),
        ("Mumford-Tate bound consistency", c9_mt_bound),
        ("CLI determinism", c10_determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(()) => println!("PASS {:>2} {name}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
