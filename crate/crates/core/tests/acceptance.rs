//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on failure.

use std::collections::BTreeSet;
use std::process::ExitCode;

use lotus_core::constellation::all_constellations;
use lotus_core::kite::chart_law_failures;
use lotus_core::lotus2d::{klein_hull, Side};
use lotus_core::{
    build_enriques, build_kite, cf_eval, check_weight_sum, decode_constellation, dual_from_voilure,
    enriques_from_kite, nd_sheath, random_constellation, represents_zero, sheath, simulate_blowups,
    symbols_to_cf, triangulated_polygon, vector_realization, Arrangement, AstreId, AstreRecord,
    Constellation, EdgeKind, LatticeVec, Projective, Rational, Symbol,
};
use num_rational::Ratio;

type Check = Result<(), String>;

fn id(s: &str) -> AstreId {
    AstreId::new(s).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// The fourteen-astre example: (astre, p_D, p_I).
const EXAMPLE: [(&str, &str, Option<&str>); 14] = [
    ("A1", "O", None),
    ("A2", "O", None),
    ("A3", "A1", Some("O")),
    ("A4", "A1", None),
    ("A5", "A1", None),
    ("A6", "A2", Some("O")),
    ("A7", "A2", None),
    ("A8", "A4", Some("A1")),
    ("A9", "A3", Some("A1")),
    ("A10", "A3", Some("O")),
    ("A11", "A6", Some("A2")),
    ("A12", "A7", None),
    ("A13", "A7", None),
    ("A14", "A6", None),
];

fn example() -> Constellation {
    Constellation::from_records(EXAMPLE.iter().map(|&(a, d, i)| AstreRecord {
        id: id(a),
        direct: id(d),
        indirect: i.map(id),
    }))
    .unwrap()
}

/// Exhaustive constellations with up to five astres besides `O`, then 1000
/// seeded random ones with at most fifty astres in total.
fn corpus() -> Vec<Constellation> {
    let mut all = all_constellations(5);
    for seed in 0..1000u64 {
        let n = (seed % 50) as usize;
        let bias = Ratio::new((seed % 5) as u32, 4);
        all.push(random_constellation(seed, n, bias).unwrap());
    }
    all
}

fn criterion_1() -> Check {
    let c = example();
    let g = simulate_blowups(&c).map_err(|e| e.to_string())?;
    let heavy = [("O", -6), ("A1", -6), ("A2", -4), ("A3", -3), ("A4", -2), ("A6", -3), ("A7", -3)];
    for a in c.ids() {
        let want = heavy.iter().find(|(n, _)| *n == a.as_str()).map_or(-1, |(_, w)| *w);
        ensure(g.weight(a) == Some(want), || format!("E_{a}: {:?}, expected {want}", g.weight(a)))?;
    }
    ensure(g.vertex_count() == 15, || format!("{} vertices", g.vertex_count()))?;
    ensure(g.edge_count() == 14 && g.is_tree(), || format!("{} edges, tree: {}", g.edge_count(), g.is_tree()))?;
    let k = build_kite(&c).map_err(|e| e.to_string())?;
    ensure(dual_from_voilure(&k) == g, || "voilure dual graph differs".into())
}

fn criterion_2(corpus: &[Constellation]) -> Check {
    for (i, c) in corpus.iter().enumerate() {
        let k = build_kite(c).map_err(|e| format!("#{i}: {e}"))?;
        let e = build_enriques(c).map_err(|e| format!("#{i}: {e}"))?;
        ensure(enriques_from_kite(&k) == e, || format!("#{i}: Enriques diagrams differ"))?;
        let g = simulate_blowups(c).map_err(|e| format!("#{i}: {e}"))?;
        ensure(dual_from_voilure(&k) == g, || format!("#{i}: dual graphs differ"))?;
    }
    Ok(())
}

fn criterion_3() -> Check {
    let c = example();
    let d = build_enriques(&c).map_err(|e| e.to_string())?;
    let straight: BTreeSet<&str> =
        d.edges().filter(|e| e.kind == EdgeKind::Straight).map(|e| e.to.as_str()).collect();
    let want: BTreeSet<&str> = ["A3", "A6", "A8", "A9", "A10", "A11"].into();
    ensure(straight == want, || format!("straight edges into {straight:?}"))?;
    let k = build_kite(&c).map_err(|e| e.to_string())?;
    ensure(k.is_geodesic(&[id("A3"), id("A10")]) == Ok(true), || "A1 A3 A10 is not geodesic".into())?;
    ensure(k.is_geodesic(&[id("A6"), id("A11")]) == Ok(false), || "A2 A6 A11 is geodesic".into())?;
    let decoded = decode_constellation(&d).map_err(|e| e.to_string())?;
    for &(a, pd, pi) in &EXAMPLE {
        let got_d = decoded.direct(&id(a)).map_err(|e| e.to_string())?;
        let got_i = decoded.indirect(&id(a)).map_err(|e| e.to_string())?;
        ensure(got_d == &id(pd) && got_i == pi.map(id).as_ref(), || {
            format!("{a}: decoded ({got_d}, {got_i:?}), expected ({pd}, {pi:?})")
        })?;
    }
    ensure(decoded == c, || "decoded constellation differs".into())
}

fn criterion_4() -> Check {
    let s = sheath(LatticeVec::new(7, 5)).map_err(|e| e.to_string())?;
    use Symbol::{Delta as D, Gamma as G};
    ensure(s.symbols == [D, G, G, D, D], || format!("symbols {:?}", s.symbols))?;
    let p1 = [LatticeVec::new(1, 0), LatticeVec::new(3, 2), LatticeVec::new(7, 5)];
    ensure(s.p1 == p1, || format!("P1 {:?}", s.p1))?;
    for p in 1..=200 {
        for q in 1..=200 {
            let v = LatticeVec::new(p, q);
            if !v.is_primitive() {
                continue;
            }
            let s = sheath(v).map_err(|e| e.to_string())?;
            let cf = symbols_to_cf(&s.symbols).map_err(|e| e.to_string())?;
            let value = cf_eval(&cf).map_err(|e| e.to_string())?;
            ensure(value == Projective::Finite(Rational::new(p, q)), || format!("{v}: {cf} = {value}"))?;
            let size = p.max(q);
            let h1 = klein_hull(v, Side::E1, size).map_err(|e| e.to_string())?;
            let h2 = klein_hull(v, Side::E2, size).map_err(|e| e.to_string())?;
            ensure(s.p1 == h1, || format!("{v}: P1 {:?} vs hull {h1:?}", s.p1))?;
            ensure(s.p2 == h2, || format!("{v}: P2 {:?} vs hull {h2:?}", s.p2))?;
        }
    }
    Ok(())
}

fn check_zero_sequence(a: &[i64]) -> Check {
    let v = vector_realization(a).map_err(|e| format!("{a:?}: {e}"))?;
    ensure(v[a.len() + 1] == -v[0], || format!("{a:?}: v(n+1) = {}", v[a.len() + 1]))?;
    let t = triangulated_polygon(a).map_err(|e| format!("{a:?}: {e}"))?;
    ensure(t.triangles.len() + 1 == a.len(), || format!("{a:?}: {} triangles", t.triangles.len()))?;
    ensure(t.satisfies_petal_identity(&v), || format!("{a:?}: petal identity fails"))?;
    ensure(t.counts == a, || format!("{a:?}: counts {:?}", t.counts))
}

/// Vertex counts of every triangulation of the polygon `0, 1, …, n`, read
/// at vertices `1..=n`.
fn polygon_sequences(n: usize) -> Vec<Vec<i64>> {
    fn triangulations(i: usize, j: usize) -> Vec<Vec<[usize; 3]>> {
        if j <= i + 1 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for k in i + 1..j {
            for left in triangulations(i, k) {
                for right in triangulations(k, j) {
                    let mut t = left.clone();
                    t.extend(&right);
                    t.push([i, k, j]);
                    out.push(t);
                }
            }
        }
        out
    }
    triangulations(0, n)
        .into_iter()
        .map(|t| {
            let mut counts = vec![0i64; n + 1];
            for tri in t {
                for k in tri {
                    counts[k] += 1;
                }
            }
            counts[1..].to_vec()
        })
        .collect()
}

fn criterion_5() -> Check {
    let fig = [2, 1, 3, 4, 1, 3, 1, 3];
    ensure(represents_zero(&fig) == Ok(true), || "[2,1,3,4,1,3,1,3] does not represent 0".into())?;
    let t = triangulated_polygon(&fig).map_err(|e| e.to_string())?;
    ensure(t.triangles.len() == 7, || format!("{} triangles", t.triangles.len()))?;
    check_zero_sequence(&fig)?;

    // Every zero sequence keeps its vectors in the upper half-plane and
    // ends at height 0, so track heights y_{k+1} = a_k·y_k − y_{k−1}.
    fn search(prefix: &mut Vec<i64>, heights: (i64, i64), found: &mut BTreeSet<Vec<i64>>) {
        if prefix.len() == 10 {
            return;
        }
        for t in 0..=6 {
            let next = t * heights.1 - heights.0;
            if next < 0 {
                continue;
            }
            prefix.push(t);
            if next == 0 {
                found.insert(prefix.clone());
            } else {
                search(prefix, (heights.1, next), found);
            }
            prefix.pop();
        }
    }
    let mut found = BTreeSet::new();
    search(&mut Vec::new(), (0, 1), &mut found);
    for a in &found {
        ensure(represents_zero(a) == Ok(true), || format!("{a:?} is not recognized as zero"))?;
        check_zero_sequence(a)?;
    }
    // completeness against polygon triangulations
    let mut expected: BTreeSet<Vec<i64>> = BTreeSet::from([vec![0]]);
    for n in 2..=10 {
        expected.extend(polygon_sequences(n).into_iter().filter(|a| a.iter().all(|&x| x <= 6)));
    }
    ensure(found == expected, || {
        format!("{} zero sequences found, {} from triangulations", found.len(), expected.len())
    })
}

fn criterion_6() -> Check {
    let r = nd_sheath(&[3, 4, 6], 64).map_err(|e| e.to_string())?;
    let want = [vec![3, 2, 1], vec![1, 3, 2], vec![1, 3, 2]].map(Arrangement::new);
    ensure(r.arrangements == want, || format!("arrangements {:?}", r.arrangements))?;
    for p in 1..=60 {
        for q in 1..=60 {
            let v = LatticeVec::new(p, q);
            if !v.is_primitive() {
                continue;
            }
            let s = sheath(v).map_err(|e| e.to_string())?;
            let r = nd_sheath(&[p, q], 1000).map_err(|e| e.to_string())?;
            let word: Vec<Option<Symbol>> = r.arrangements.iter().map(Arrangement::symbol).collect();
            let want: Vec<Option<Symbol>> = s.symbols.iter().copied().map(Some).collect();
            ensure(word == want, || format!("{v}: {word:?} vs {:?}", s.symbols))?;
        }
    }
    Ok(())
}

fn criterion_7(corpus: &[Constellation]) -> Check {
    let c = example();
    let g = simulate_blowups(&c).map_err(|e| e.to_string())?;
    let total: i64 = g.weights().values().map(|w| w.abs()).sum();
    ensure(total == 35 && check_weight_sum(&g, &c), || format!("example total {total}"))?;
    for (i, c) in corpus.iter().enumerate() {
        let g = simulate_blowups(c).map_err(|e| format!("#{i}: {e}"))?;
        let total: i64 = g.weights().values().map(|w| w.abs()).sum();
        let want = 1 + 2 * c.free_count() as i64 + 3 * c.satellite_count() as i64;
        ensure(total == want, || format!("#{i}: {total} vs {want}"))?;
    }
    Ok(())
}

fn criterion_8(corpus: &[Constellation]) -> Check {
    for (i, c) in std::iter::once(&example()).chain(corpus).enumerate() {
        let k = build_kite(c).map_err(|e| format!("#{i}: {e}"))?;
        let bad = chart_law_failures(&k, c);
        ensure(bad.is_empty(), || format!("#{i}: chart law fails at {bad:?}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let corpus = corpus();
    let criteria: [(&str, Box<dyn Fn() -> Check>); 8] = [
        ("1 blow-up weights and voilure of the 15-astre example", Box::new(criterion_1)),
        ("2 kite recovers Enriques diagram and dual graph", Box::new(|| criterion_2(&corpus))),
        ("3 Enriques decorations, geodesics and decoding", Box::new(criterion_3)),
        ("4 sheath symbols and Klein hulls up to 200", Box::new(criterion_4)),
        ("5 zero sequences and triangulated polygons", Box::new(criterion_5)),
        ("6 n-dimensional walk", Box::new(criterion_6)),
        ("7 weight conservation law", Box::new(|| criterion_7(&corpus))),
        ("8 chart law in every kite", Box::new(|| criterion_8(&corpus))),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(()) => println!("PASS  criterion {name}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {name}: {msg}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
