//! Acceptance criteria. Runs without the libtest harness and prints one
//! PASS/FAIL line per criterion; exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use crepant_core::algebra::{builtins, relations_from_potential, Quiver, Superpotential};
use crepant_core::crystal::{list_configurations, ncdt_series, product_series, CrystalFamily, ProductFactor, SignConvention};
use crepant_core::geometry::{builtin_geometry, verify_all, verify_contraction, verify_equivariance};
use crepant_core::mckay::{mckay_quiver_with_potential, AbelianAction};
use crepant_core::representations::{
    is_cyclic, is_semistable, positive_roots, walls_between, CartanMatrix, Classification, MonomialRepresentation,
    RootKind, StabilityConvention, StabilityParameter,
};
use crepant_core::series::FormalSeries;
use crepant_core::toric::{
    as_integer, collapse_kahler, dual_web, flop_graph, gv_extract, gw_partition_function, gw_partition_function_with,
    is_connected, schur_principal, unit_triangulations, EvaluationOrder, LatticePolygon, Partition, VertexCache,
};
use num_bigint::BigInt;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn triangulations() -> Check {
    let square = unit_triangulations(&LatticePolygon::unit_square());
    ensure(square.len() == 2, format!("square has {} triangulations", square.len()))?;
    let triangle = ok(LatticePolygon::new(vec![[0, 0], [2, 0], [0, 2]]))?;
    let ts = unit_triangulations(&triangle);
    ensure(ts.len() == 4, format!("triangle has {} triangulations", ts.len()))?;
    let edges = ok(flop_graph(&ts))?;
    ensure(is_connected(ts.len(), &edges), "flop graph is disconnected")?;
    Ok(format!("2 and 4 triangulations, {} flops, connected", edges.len()))
}

fn geometry_identities() -> Check {
    let conifold = ok(builtin_geometry("conifold"))?;
    let reports = ok(verify_contraction(&conifold, 100, 0))?;
    ensure(reports.iter().all(|r| r.holds() && r.trials == 100), "conifold contraction failed")?;
    for k in 1..=4u32 {
        let g = ok(builtin_geometry(&format!("laufer1:{k}")))?;
        let expected = format!("v2*v4 - v3^2 + v3*v1^{k}");
        ensure(g.equation.text() == expected, format!("laufer1:{k} equation is {}", g.equation))?;
        let reports = ok(verify_contraction(&g, 100, k as u64))?;
        let xy = reports.iter().find(|r| r.identity.ends_with("(x,y) chart")).ok_or("missing (x,y) report")?;
        ensure(xy.holds() && xy.trials == 100, format!("laufer1:{k} equation fails on the (x,y) chart"))?;
        let eq = ok(verify_equivariance(&g, 100, k as u64))?;
        ensure(eq.holds() && eq.trials == 100, format!("laufer1:{k} is not equivariant"))?;
        let fixed = ok(builtin_geometry(&format!("laufer1:{k}/corrected")))?;
        ensure(ok(verify_all(&fixed, 100, k as u64))?.iter().all(|r| r.holds()), format!("laufer1:{k}/corrected fails"))?;
    }
    Ok("conifold and laufer1 k=1..4 exact at 100 points; (w,z) chart needs the corrected v4".into())
}

fn mckay_z3() -> Check {
    let act: AbelianAction = ok("3:1,1,1".parse())?;
    let q = mckay_quiver_with_potential(&act);
    ensure(q.vertices().len() == 3 && q.arrows().len() == 9, "wrong vertex or arrow count")?;
    let printed = ok(Superpotential::parse(&q, "a1b2c3-a1b3c2+a2b3c1-a2b1c3+a3b1c2-a3b2c1"))?;
    ensure(q.potential() == &printed, format!("potential is {}", q.potential()))?;
    let rels = relations_from_potential(&q, q.potential());
    ensure(rels.len() == 9, format!("{} relations", rels.len()))?;
    let mut shapes = BTreeSet::new();
    for r in &rels {
        let terms: Vec<(Vec<String>, i64)> = r.element.terms().map(|(p, c)| (p.arrows().to_vec(), c)).collect();
        ensure(terms.len() == 2, format!("d{} has {} terms", r.arrow, terms.len()))?;
        let (p, s) = (&terms[0].0, &terms[1].0);
        ensure(terms[0].1 == -terms[1].1 && p.len() == 2 && s.len() == 2, format!("d{} is not a commutator", r.arrow))?;
        let letter = |x: &str| x.as_bytes()[0];
        let index = |x: &str| x.as_bytes()[1];
        ensure(letter(&p[0]) == letter(&s[0]) && letter(&p[1]) == letter(&s[1]), "mixed letters")?;
        ensure(index(&p[0]) == index(&s[1]) && index(&p[1]) == index(&s[0]) && index(&p[0]) != index(&p[1]), "not a swap")?;
        let (i, j) = (index(&p[0]).min(index(&p[1])), index(&p[0]).max(index(&p[1])));
        shapes.insert((letter(&p[0]), letter(&p[1]), i, j));
    }
    let expected: BTreeSet<(u8, u8, u8, u8)> = [(b'a', b'b'), (b'b', b'c'), (b'c', b'a')]
        .into_iter()
        .flat_map(|(x, y)| [(b'1', b'2'), (b'1', b'3'), (b'2', b'3')].into_iter().map(move |(i, j)| (x, y, i, j)))
        .collect();
    ensure(shapes == expected, "relation shapes differ from x_i y_j = x_j y_i")?;
    Ok("3 vertices, 9 arrows, 9 commutation relations, six-term potential".into())
}

/// Coefficients of `prod_k (1 - q^k)^(-k)` by summing over all exponent tuples `m_{k,c}`, `c <= k`.
fn multinomial_expander(order: usize) -> Vec<i64> {
    let slots: Vec<usize> = (1..=order).flat_map(|k| std::iter::repeat_n(k, k)).collect();
    let mut out = vec![0i64; order + 1];
    fn go(i: usize, total: usize, slots: &[usize], out: &mut [i64]) {
        if i == slots.len() {
            out[total] += 1;
            return;
        }
        let mut t = total;
        while t < out.len() {
            go(i + 1, t, slots, out);
            t += slots[i];
        }
    }
    go(0, 0, &slots, &mut out);
    out
}

fn crystal_oracle() -> Check {
    let macmahon = |order: u32| {
        let factors: Vec<ProductFactor> = (1..=order as i32).map(|k| ProductFactor::minus(vec![k], -(k as i64))).collect();
        product_series(&FormalSeries::zero(&["q"], order), &factors)
    };
    let small = ok(macmahon(6))?;
    let brute = multinomial_expander(6);
    for (n, c) in brute.iter().enumerate() {
        ensure(small.coeff(&[n as i32]) == BigInt::from(*c), format!("product_series differs at q^{n}"))?;
    }
    let series = ncdt_series(&CrystalFamily::c3(), 8, &SignConvention::Unsigned);
    ensure(series == ok(macmahon(8))?, "NCDT series differs from the product")?;
    let head: Vec<BigInt> = (0..=6).map(|n| series.coeff(&[n])).collect();
    let expected: Vec<BigInt> = [1, 1, 3, 6, 13, 24, 48].into_iter().map(BigInt::from).collect();
    ensure(head == expected, format!("coefficients {head:?}"))?;
    Ok(format!("order 8 matches; head {}", series.truncated(6).pretty()))
}

type Maps = Vec<Vec<Option<usize>>>;

/// Smallest relabelling of `maps` under the permutations in `perms`.
fn canonical(maps: &Maps, perms: &[Vec<usize>]) -> Maps {
    perms
        .iter()
        .map(|p| {
            maps.iter()
                .map(|m| {
                    let mut out = vec![None; m.len()];
                    for (s, t) in m.iter().enumerate() {
                        out[p[s]] = t.map(|t| p[t]);
                    }
                    out
                })
                .collect()
        })
        .min()
        .expect("identity permutation")
}

/// Label-preserving permutations, optionally fixing element 0.
fn symmetries(labels: &[usize], fix_first: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn go(i: usize, labels: &[usize], fix_first: bool, p: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if i == labels.len() {
            out.push(p.clone());
            return;
        }
        for j in 0..labels.len() {
            if !used[j] && labels[j] == labels[i] && (!fix_first || i != 0 || j == 0) {
                used[j] = true;
                p.push(j);
                go(i + 1, labels, fix_first, p, used, out);
                p.pop();
                used[j] = false;
            }
        }
    }
    go(0, labels, fix_first, &mut Vec::new(), &mut vec![false; labels.len()], &mut out);
    out
}

/// Every monomial framed module with the given vertex labels satisfying the relations, up to
/// isomorphism, with the framing vector sent to element 0 or to zero.
fn framed_modules(q: &Quiver, labels: &[usize]) -> Vec<MonomialRepresentation> {
    let names: Vec<String> = labels.iter().map(|&v| q.vertices()[v].clone()).collect();
    let vpos = |v: &str| q.vertex_position(v).expect("vertex");
    let arrows: Vec<(String, usize, usize)> =
        q.arrows().iter().map(|a| (a.id.clone(), vpos(&a.tail), vpos(&a.head))).collect();
    let rels: Vec<Vec<(Vec<usize>, i64)>> = relations_from_potential(q, q.potential())
        .into_iter()
        .map(|r| {
            r.element
                .terms()
                .map(|(p, c)| (p.arrows().iter().map(|a| q.arrow_position(a).expect("arrow")).collect(), c))
                .collect()
        })
        .collect();

    fn holds(rel: &[(Vec<usize>, i64)], maps: &Maps, n: usize) -> bool {
        (0..n).all(|b| {
            let mut acc = vec![0i64; n];
            for (path, c) in rel {
                let mut x = Some(b);
                for &a in path {
                    x = x.and_then(|y| maps[a][y]);
                }
                if let Some(y) = x {
                    acc[y] += c;
                }
            }
            acc.iter().all(|&v| v == 0)
        })
    }

    fn partial_injections(
        i: usize,
        tail: usize,
        head: usize,
        labels: &[usize],
        current: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        f: &mut dyn FnMut(&[Option<usize>]),
    ) {
        if i == labels.len() {
            f(current);
            return;
        }
        partial_injections(i + 1, tail, head, labels, current, used, f);
        if labels[i] != tail {
            return;
        }
        for t in 0..labels.len() {
            if labels[t] == head && !used[t] {
                used[t] = true;
                current[i] = Some(t);
                partial_injections(i + 1, tail, head, labels, current, used, f);
                current[i] = None;
                used[t] = false;
            }
        }
    }

    fn assign(
        k: usize,
        arrows: &[(String, usize, usize)],
        labels: &[usize],
        rels: &[Vec<(Vec<usize>, i64)>],
        maps: &mut Maps,
        first: &dyn Fn(&[Option<usize>]) -> bool,
        found: &mut Vec<Maps>,
    ) {
        let n = labels.len();
        let ready = |r: &Vec<(Vec<usize>, i64)>| r.iter().all(|(p, _)| p.iter().all(|&a| a < k));
        let newly = |r: &Vec<(Vec<usize>, i64)>| r.iter().any(|(p, _)| p.contains(&(k - 1)));
        if k > 0 && !rels.iter().filter(|r| ready(r) && newly(r)).all(|r| holds(r, maps, n)) {
            return;
        }
        if k == arrows.len() {
            found.push(maps.clone());
            return;
        }
        let (_, tail, head) = arrows[k];
        partial_injections(0, tail, head, labels, &mut vec![None; n], &mut vec![false; n], &mut |m| {
            if k > 0 || first(m) {
                maps.push(m.to_vec());
                assign(k + 1, arrows, labels, rels, maps, first, found);
                maps.pop();
            }
        });
    }

    let mut classes: BTreeSet<(bool, Maps)> = BTreeSet::new();
    let mut groups = vec![(false, symmetries(labels, false))];
    if labels.first() == Some(&0) {
        groups.push((true, symmetries(labels, true)));
    }
    for (framed, perms) in groups {
        let first = |m: &[Option<usize>]| canonical(&vec![m.to_vec()], &perms)[0] == m;
        let mut found = Vec::new();
        assign(0, &arrows, labels, &rels, &mut Vec::new(), &first, &mut found);
        classes.extend(found.iter().map(|maps| (framed, canonical(maps, &perms))));
    }
    classes
        .into_iter()
        .map(|(framed, maps)| {
            let mut rep = MonomialRepresentation::new(names.clone());
            for (a, m) in arrows.iter().zip(&maps) {
                let pairs: Vec<(usize, usize)> = m.iter().enumerate().filter_map(|(s, t)| t.map(|t| (s, t))).collect();
                if !pairs.is_empty() {
                    rep = rep.with_action(&a.0, &pairs);
                }
            }
            rep.framed("0", if framed { Some(0) } else { None })
        })
        .collect()
}

/// A cyclic module whose elements carry a well-defined arrow-count weight from the generator.
fn arrow_graded(rep: &MonomialRepresentation) -> bool {
    let ids: Vec<&String> = rep.arrows.keys().collect();
    let mut weight: Vec<Option<Vec<u32>>> = vec![None; rep.dimension()];
    let Some(start) = rep.framing.as_ref().and_then(|f| f.target) else { return rep.dimension() == 0 };
    weight[start] = Some(vec![0; ids.len()]);
    let mut queue = vec![start];
    while let Some(b) = queue.pop() {
        let w = weight[b].clone().expect("visited");
        for (i, id) in ids.iter().enumerate() {
            for &(_, t) in rep.arrows[*id].iter().filter(|(s, _)| *s == b) {
                let mut next = w.clone();
                next[i] += 1;
                match &weight[t] {
                    Some(old) if *old != next => return false,
                    Some(_) => {}
                    None => {
                        weight[t] = Some(next);
                        queue.push(t);
                    }
                }
            }
        }
    }
    true
}

fn cross_module_stability() -> Check {
    let mut counted = Vec::new();
    for (name, q) in [("c3", builtins::c3()), ("conifold", builtins::conifold())] {
        let nv = q.vertices().len();
        let theta = StabilityParameter::from_integers(&vec![-1; nv]);
        let skewed = StabilityParameter::from_integers(&[-3, -1][..nv]);
        let (mut cyclic, mut other) = (0usize, 0usize);
        let mut torus_fixed = [0usize; 6];
        for total in 0..=5usize {
            for n0 in 0..=total {
                if nv == 1 && n0 != total {
                    continue;
                }
                let labels: Vec<usize> = (0..total).map(|i| usize::from(i >= n0)).collect();
                for rep in framed_modules(&q, &labels) {
                    let is_cyc = ok(is_cyclic(&rep))?;
                    for t in [&theta, &skewed] {
                        let r = ok(is_semistable(&q, &rep, t, StabilityConvention::SubobjectsNegative))?;
                        let want = if is_cyc { Classification::Stable } else { Classification::Unstable };
                        ensure(r.classification == want, format!("{name}: {} classified {:?}", rep.to_json(), r.classification))?;
                    }
                    if is_cyc {
                        if arrow_graded(&rep) {
                            torus_fixed[total] += 1;
                        }
                        cyclic += 1;
                    } else {
                        other += 1;
                    }
                }
            }
        }
        let family = if name == "c3" { CrystalFamily::c3() } else { CrystalFamily::Conifold };
        let cumulative: Vec<usize> = (0..=5).map(|n| list_configurations(&family, n).len()).collect();
        let crystals: Vec<usize> = (0..=5).map(|n| cumulative[n] - if n == 0 { 0 } else { cumulative[n - 1] }).collect();
        ensure(torus_fixed.to_vec() == crystals, format!("{name}: graded cyclic classes {torus_fixed:?} vs crystals {crystals:?}"))?;
        counted.push(format!("{name} {cyclic} cyclic ({} graded) / {other} non-cyclic classes", torus_fixed.iter().sum::<usize>()));
    }
    Ok(counted.join(", "))
}

fn conifold_vertex() -> Check {
    const P: i32 = 20;
    let template = ok(FormalSeries::zero(&["Q0", "t"], 4).with_grading(vec![1, 0], vec![None, Some(P)]))?;
    let web = dual_web(&unit_triangulations(&LatticePolygon::unit_square())[0]);
    let z = ok(gw_partition_function(&web, 4, P as i64))?;
    let mut dual_cauchy = template.clone();
    let mut squares = template.clone();
    for lambda in Partition::up_to(4) {
        let sign = if lambda.size() % 2 == 0 { 1 } else { -1 };
        let s = schur_principal(&lambda, P as i64);
        let st = schur_principal(&lambda.transpose(), P as i64);
        for (target, other) in [(&mut dual_cauchy, &st), (&mut squares, &s)] {
            for (i, a) in s.terms() {
                for (j, b) in other.terms() {
                    target.add_term(&[lambda.size() as i32, (i + j) as i32], BigInt::from(sign) * a * b);
                }
            }
        }
    }
    let product = ok(product_series(&template, &(1..P).map(|k| ProductFactor::minus(vec![1, 2 * k], k as i64)).collect::<Vec<_>>()))?;
    ensure(z == dual_cauchy, "vertex differs from the sum of s_λ s_λ'")?;
    ensure(z == product, "vertex differs from prod (1 - Q q^k)^k")?;
    let squares_product = ok(product_series(&template, &(1..P).map(|k| ProductFactor::plus(vec![1, 2 * k], -(k as i64))).collect::<Vec<_>>()))?;
    ensure(squares == squares_product && squares != product, "sum of s_λ^2 is not prod (1 + Q q^k)^(-k)")?;
    let gv = ok(gv_extract(&ok(collapse_kahler(&z))?))?;
    let genus0: Vec<Option<i64>> = (1..=4).map(|d| as_integer(&gv.get(0, d))).collect();
    ensure(genus0 == [Some(1), Some(0), Some(0), Some(0)], format!("genus 0 invariants {genus0:?}"))?;
    Ok("Q^4, t^20: vertex = sum (-Q)^|λ| s_λ s_λ' = product; n0 = 1,0,0,0; the s_λ^2 sum gives prod (1+Qq^k)^(-k)".into())
}

fn local_p2() -> Check {
    let web = dual_web(&unit_triangulations(&LatticePolygon::local_p2())[0]);
    let a = ok(gw_partition_function_with(&web, 3, 14, &VertexCache::new(), EvaluationOrder::Cached))?;
    let b = ok(gw_partition_function_with(&web, 3, 14, &VertexCache::new(), EvaluationOrder::Rotated))?;
    ensure(a == b, "evaluation orders disagree")?;
    let gv = ok(gv_extract(&ok(collapse_kahler(&a))?))?;
    ensure(gv.is_integral(), "non-integral invariants")?;
    let genus0: Vec<Option<i64>> = (1..=3).map(|d| as_integer(&gv.get(0, d))).collect();
    ensure(genus0 == [Some(3), Some(-6), Some(27)], format!("genus 0 invariants {genus0:?}"))?;
    Ok("n0 = 3, -6, 27, integral, both orders agree".into())
}

fn root_system() -> Check {
    let c = ok(CartanMatrix::parse("2,-2;-2,2"))?;
    let roots = ok(positive_roots(&c, 9))?;
    let mut orbit: BTreeSet<Vec<i64>> = BTreeSet::from([vec![1, 0], vec![0, 1]]);
    let mut frontier: Vec<Vec<i64>> = orbit.iter().cloned().collect();
    while let Some(a) = frontier.pop() {
        for i in 0..2 {
            let mut b = a.clone();
            b[i] -= 2 * a[i] - 2 * a[1 - i];
            if b.iter().all(|&x| x >= 0) && b[0] + b[1] <= 18 && orbit.insert(b.clone()) {
                frontier.push(b);
            }
        }
    }
    let real: BTreeSet<Vec<i64>> = orbit.into_iter().filter(|a| a[0] + a[1] <= 9).collect();
    let got_real: BTreeSet<Vec<i64>> = roots.iter().filter(|r| r.kind == RootKind::Real).map(|r| r.vector.clone()).collect();
    let got_imag: BTreeSet<Vec<i64>> =
        roots.iter().filter(|r| r.kind == RootKind::Imaginary).map(|r| r.vector.clone()).collect();
    ensure(got_real == real, "real roots differ from the reflection orbit")?;
    ensure(real.iter().all(|a| (a[0] - a[1]).abs() == 1), "real root not of the form (k,k±1)")?;
    ensure(got_imag == (1..=4).map(|k| vec![k, k]).collect(), "imaginary roots are not (k,k)")?;
    for (a, b) in [(2, -5), (1, 3), (-4, 1)] {
        let report = ok(walls_between(
            &StabilityParameter::from_integers(&[a, b]),
            &StabilityParameter::from_integers(&[-a, -b]),
            &roots,
        ))?;
        let expected: Vec<&Vec<i64>> = roots.iter().filter(|r| a * r.vector[0] + b * r.vector[1] != 0).map(|r| &r.vector).collect();
        let got: Vec<&Vec<i64>> = report.separating.iter().map(|r| &r.vector).collect();
        ensure(got == expected, format!("walls between ({a},{b}) and its negative"))?;
    }
    Ok(format!("{} real and {} imaginary roots; walls_between(θ,-θ) exact", got_real.len(), got_imag.len()))
}

fn cli_determinism() -> Check {
    let bin = env!("CARGO_BIN_EXE_crepant");
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let rep = dir.join("acceptance_rep.json");
    ok(std::fs::write(&rep, r#"{"basis":["0","1"],"arrows":{"A":[[0,1]]},"framing":{"vertex":"0","target":0}}"#))?;
    let rep = rep.to_string_lossy().to_string();
    let commands: Vec<Vec<&str>> = vec![
        vec!["mckay", "3:1,1,1", "--potential"],
        vec!["mckay", "5:1,1,3", "--table"],
        vec!["relations", "kp2"],
        vec!["frame", "conifold", "--at", "0"],
        vec!["stability", "conifold", "--rep", &rep, "--theta=-1,-1"],
        vec!["roots", "--cartan", "2,-2;-2,2", "--height", "9"],
        vec!["walls", "--cartan", "2,-2;-2,2", "--from", "2,-5", "--to=-2,5"],
        vec!["ncdt", "c3", "--order", "6"],
        vec!["ncdt", "conifold", "--order", "5", "--sign", "total"],
        vec!["triangulate", "--square"],
        vec!["flops", "--triangle", "2"],
        vec!["web", "--local-p2"],
        vec!["gw", "--square", "--degree", "3", "--t-precision", "10"],
        vec!["gv", "--local-p2", "--degree", "2", "--t-precision", "10"],
        vec!["verify-geometry", "laufer1:2", "--trials", "20"],
        vec!["compare", "conifold", "--truncation", "2", "--theta=-1,-2", "--map", "q0=-Q0*t^2"],
    ];
    let run = |args: &[&str], json: bool| -> Result<Vec<u8>, String> {
        let mut cmd = Command::new(bin);
        cmd.args(args).args(["--seed", "7"]);
        if json {
            cmd.arg("--json");
        }
        let out = ok(cmd.output())?;
        ensure(out.status.success(), format!("{args:?} exited with {}", out.status))?;
        Ok(out.stdout)
    };
    let mut runs = 0;
    for args in &commands {
        for json in [false, true] {
            let a = run(args, json)?;
            let b = run(args, json)?;
            ensure(a == b, format!("{args:?} json={json} differs between runs"))?;
            if json {
                ok(serde_json::from_slice::<serde_json::Value>(&a))?;
            }
            runs += 1;
        }
    }
    let listed: BTreeSet<&str> = commands.iter().map(|c| c[0]).collect();
    ensure(listed.len() == 14, format!("{} subcommands covered", listed.len()))?;
    let text = String::from_utf8_lossy(&run(&["ncdt", "c3", "--order", "6"], false)?).to_string();
    ensure(text.lines().skip(1).map(|l| l.split('\t').nth(1).unwrap_or("")).collect::<Vec<_>>() == ["1", "1", "3", "6", "13", "24", "48"], "ncdt c3 output")?;
    Ok(format!("14 subcommands, {runs} invocations byte-identical"))
}

fn main() -> ExitCode {
    let criteria: Vec<(u32, &str, Duration, fn() -> Check)> = vec![
        (1, "triangulation counts", Duration::from_secs(1), triangulations),
        (2, "geometry identities", Duration::from_secs(5), geometry_identities),
        (3, "McKay quiver and relations", Duration::from_secs(1), mckay_z3),
        (4, "crystal oracle", Duration::from_secs(30), crystal_oracle),
        (5, "cross-module stability", Duration::from_secs(60), cross_module_stability),
        (6, "conifold vertex oracle", Duration::from_secs(60), conifold_vertex),
        (7, "local P2 GV integrality", Duration::from_secs(300), local_p2),
        (8, "affine A1 roots and walls", Duration::from_secs(1), root_system),
        (9, "CLI determinism", Duration::from_secs(600), cli_determinism),
    ];
    let mut failures = 0;
    for (id, name, limit, f) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match result {
            Ok(note) if elapsed > limit => Err(format!("{note}; too slow")),
            other => other,
        };
        let (status, note) = match &result {
            Ok(note) => ("PASS", note.clone()),
            Err(e) => ("FAIL", e.clone()),
        };
        if result.is_err() {
            failures += 1;
        }
        println!("{status} {id} {name} ({:.3} s, limit {} s): {note}", elapsed.as_secs_f64(), limit.as_secs());
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
