//! Independent oracles and the acceptance criteria, shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zzprop::foeval::{eval_sentence, phi_base, phi_rotation_map};
use zzprop::graphcore::{
    cheeger_check, connectivity_flags, iterated_family, spectrum, square, validate_rotmap, zigzag, RotMapGraph,
};
use zzprop::gsf::{
    all_embeddings, covers, deg2_augment, embed, enumerate_deg2_graphs, is_family_free, k_realisations, small_graphs,
    tau_bound, union_family, Mark, MarkedFamily, MarkedGraph,
};
use zzprop::reduction::{decode, reduce, Simulator};
use zzprop::structures::{
    ball_isomorphic, histogram, obeys_profile, r_ball, Ball, Interval, NeighbourhoodProfile, Signature, Structure,
    TypeRegistry,
};
use zzprop::testing::{
    brute_distance, freeness_params, freeness_tester, monte_carlo, regularity_params, regularity_tester, GraphOracle,
    RejectCause, StructureOracle, TesterVerdict,
};
use zzprop::zzmodel::{
    build_model, build_rho_k, level_rotmap, underlying_graph, validate_all, validate_base, validate_rotation_map,
    ZigzagModel,
};
use zzprop::Graph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------- graphs

pub fn random_graph(n: usize, p: f64, max_deg: usize, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::new(n);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    for (u, v) in pairs {
        if rng.gen_bool(p) && g.degree(u) < max_deg && g.degree(v) < max_deg {
            g.add_edge(u, v);
        }
    }
    g
}

pub fn random_marked(n: usize, rng: &mut impl Rng) -> MarkedGraph {
    let g = random_graph(n, 0.5, n, rng);
    let marks = (0..n)
        .map(|_| [Mark::Full, Mark::Semifull, Mark::Partial][rng.gen_range(0..3)])
        .collect();
    MarkedGraph::new(g, marks).unwrap()
}

/// Number of vertices of `g` whose `r`-ball is isomorphic to `tau`.
pub fn tau_count(g: &Graph, tau: &Ball) -> usize {
    let s = Structure::from_graph(g);
    (0..g.n())
        .filter(|&v| ball_isomorphic(&r_ball(&s, v, tau.radius()), tau).unwrap())
        .count()
}

// ---------------------------------------------------------------- embedding oracle

fn injections(k: usize, n: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(k: usize, n: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for y in 0..n {
            if !cur.contains(&y) {
                cur.push(y);
                go(k, n, cur, f);
                cur.pop();
            }
        }
    }
    go(k, n, &mut Vec::new(), f)
}

/// Checks the neighbourhood conditions of a marked embedding directly on sets.
fn oracle_is_embedding(f: &MarkedGraph, g: &Graph, m: &[usize]) -> bool {
    let image: BTreeSet<usize> = m.iter().copied().collect();
    (0..f.n()).all(|x| {
        let want: BTreeSet<usize> = (0..f.n()).filter(|&w| f.graph().has_edge(x, w)).map(|w| m[w]).collect();
        let have: BTreeSet<usize> = (0..g.n()).filter(|&y| g.has_edge(m[x], y)).collect();
        match f.mark(x) {
            Mark::Full => have == want,
            Mark::Semifull => have.intersection(&image).copied().collect::<BTreeSet<_>>() == want,
            Mark::Partial => want.is_subset(&have),
        }
    })
}

/// All embeddings, by trying every injective map.
pub fn oracle_embeddings(f: &MarkedGraph, g: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if f.n() <= g.n() {
        injections(f.n(), g.n(), &mut |m| {
            if oracle_is_embedding(f, g, m) {
                out.push(m.to_vec());
            }
        });
    }
    out
}

// ---------------------------------------------------------------- models

pub fn c16_model(depth: usize) -> ZigzagModel {
    build_model(&RotMapGraph::cycle(16), depth).unwrap()
}

/// Removes one existing tuple or adds one absent tuple.
pub fn mutate(a: &Structure, rng: &mut impl Rng) -> Structure {
    let mut b = a.to_builder();
    let rels = a.sig().len();
    loop {
        let rel = rng.gen_range(0..rels);
        if rng.gen_bool(0.5) && !a.tuples(rel).is_empty() {
            let t = a.tuples(rel).choose(rng).unwrap().clone();
            b.remove(rel, &t);
            return b.build();
        }
        let t = vec![rng.gen_range(0..a.n()), rng.gen_range(0..a.n())];
        if !a.contains(rel, &t) {
            b.add(rel, t).unwrap();
            return b.build();
        }
    }
}

pub fn validators_reject(a: &Structure, m: &ZigzagModel) -> bool {
    let h2 = square(&m.h).unwrap();
    validate_all(a, m.d_base, &m.h, &h2).unwrap().iter().any(|r| !r.is_ok())
}

// ---------------------------------------------------------------- criterion reporting

pub struct Check {
    pub name: String,
    pub pass: bool,
    /// False for checks that cannot hold and are only reported.
    pub required: bool,
}

pub struct Criterion {
    pub id: usize,
    pub title: &'static str,
    pub budget_s: f64,
    pub elapsed_s: f64,
    pub checks: Vec<Check>,
}

impl Criterion {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass) && self.elapsed_s <= self.budget_s
    }

    pub fn required_pass(&self) -> bool {
        self.checks.iter().filter(|c| c.required).all(|c| c.pass)
    }

    pub fn line(&self) -> String {
        let failed: Vec<&str> = self.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        format!(
            "criterion {:>2} {:<31} {} ({:.2}s of {:.0}s){}",
            self.id,
            self.title,
            if self.pass() { "PASS" } else { "FAIL" },
            self.elapsed_s,
            self.budget_s,
            if failed.is_empty() { String::new() } else { format!(" failing: {}", failed.join("; ")) }
        )
    }
}

struct Run {
    checks: Vec<Check>,
}

impl Run {
    fn check(&mut self, name: impl Into<String>, pass: bool) {
        self.checks.push(Check { name: name.into(), pass, required: true });
    }

    fn report_only(&mut self, name: impl Into<String>, pass: bool) {
        self.checks.push(Check { name: name.into(), pass, required: false });
    }
}

fn timed(id: usize, title: &'static str, budget_s: f64, body: impl FnOnce(&mut Run)) -> Criterion {
    let start = Instant::now();
    let mut run = Run { checks: Vec::new() };
    body(&mut run);
    Criterion { id, title, budget_s, elapsed_s: start.elapsed().as_secs_f64(), checks: run.checks }
}

// ---------------------------------------------------------------- criteria

pub fn criterion_1() -> Criterion {
    timed(1, "rotation-map algebra", 5.0, |run| {
        let mut r = rng(1);
        let (mut valid, mut square_ok, mut sizes, mut bound) = (true, true, true, true);
        for _ in 0..100 {
            let n1 = r.gen_range(1..=16);
            let d1 = r.gen_range(1..=4);
            let g1 = RotMapGraph::random(n1, d1, 0.1, &mut r);
            let d2 = r.gen_range(1..=4);
            let g2 = RotMapGraph::random(d1, d2, 0.1, &mut r);
            let sq = square(&g1).unwrap();
            let zz = zigzag(&g1, &g2).unwrap();
            valid &= validate_rotmap(&sq).is_ok() && validate_rotmap(&zz).is_ok();
            let (l1, l2) = (spectrum(&g1).unwrap().lambda, spectrum(&g2).unwrap().lambda);
            square_ok &= (spectrum(&sq).unwrap().lambda - l1 * l1).abs() <= 1e-8;
            sizes &= zz.n() == n1 * d1 && zz.degree() == d2 * d2;
            if l1 < 1.0 && l2 < 1.0 {
                bound &= spectrum(&zz).unwrap().lambda <= l1 + l2 + 1e-8;
            }
        }
        run.check("outputs validate", valid);
        run.check("lambda of square", square_ok);
        run.check("zig-zag sizes", sizes);
        run.check("zig-zag lambda bound", bound);
    })
}

pub fn criterion_2() -> Criterion {
    timed(2, "Cheeger inequality", 30.0, |run| {
        let mut r = rng(2);
        let mut ok = true;
        for _ in 0..100 {
            let n = r.gen_range(1..=14);
            let d = r.gen_range(1..=4);
            ok &= cheeger_check(&RotMapGraph::random(n, d, 0.1, &mut r)).unwrap().satisfied;
        }
        run.check("h >= D(1-lambda)/2", ok);
    })
}

pub fn criterion_3() -> Criterion {
    timed(3, "iterated family", 10.0, |run| {
        let fam = iterated_family(&RotMapGraph::cycle(16), 2).unwrap();
        for (i, g) in fam.iter().enumerate() {
            let m = i as u32 + 1;
            run.check(format!("G_{m} size"), g.n() == 2usize.pow(4 * m));
            run.check(format!("G_{m} degree"), g.degree() == 4);
            run.check(format!("G_{m} valid"), validate_rotmap(g).is_ok());
        }
    })
}

pub fn criterion_4() -> Criterion {
    timed(4, "model invariants", 60.0, |run| {
        for depth in 1..=3 {
            let m = c16_model(depth);
            let want: usize = (0..=depth as u32).map(|k| 16usize.pow(k)).sum();
            run.check(format!("depth {depth} size"), m.n() == want);
            run.report_only(
                format!("depth {depth} every element degree 25"),
                (0..m.n()).all(|v| m.structure.degree(v) == 25),
            );
            run.check(format!("depth {depth} degree at most 25"), m.structure.max_degree() <= 25);
            run.check(format!("depth {depth} validators"), !validators_reject(&m.structure, &m));
            let u = underlying_graph(&m).unwrap();
            run.check(
                format!("depth {depth} underlying 21-regular connected"),
                u.degree() == 21 && validate_rotmap(&u).is_ok() && connectivity_flags(&u).connected,
            );
            let levels_ok = (1..=depth).all(|l| level_rotmap(&m, &u, l).unwrap() == m.levels[l - 1]);
            run.check(format!("depth {depth} levels equal G_m"), levels_ok);
        }
        let m = c16_model(1);
        let mut r = rng(4);
        let caught = (0..50).filter(|_| validators_reject(&mutate(&m.structure, &mut r), &m)).count();
        run.check(format!("mutations caught ({caught}/50)"), caught == 50);
    })
}

pub fn fo_agrees(a: &Structure, m: &ZigzagModel) -> (bool, bool) {
    let h2 = square(&m.h).unwrap();
    let rot = validate_rotation_map(a, m.d_base).unwrap().is_ok()
        == eval_sentence(a, &phi_rotation_map(m.d_base)).unwrap();
    let base = validate_base(a, m.d_base, &h2).unwrap().is_ok()
        == eval_sentence(a, &phi_base(m.d_base, &h2).unwrap()).unwrap();
    (rot, base)
}

pub fn criterion_5() -> Criterion {
    timed(5, "first-order cross-check", 120.0, |run| {
        let m = c16_model(1);
        let (rot, base) = fo_agrees(&m.structure, &m);
        run.check("model rotation map", rot);
        run.check("model base", base);
        let mut r = rng(5);
        for i in 0..10 {
            let a = mutate(&m.structure, &mut r);
            let (rot, base) = fo_agrees(&a, &m);
            run.check(format!("mutant {i}"), rot && base);
        }
    })
}

/// A 0-profile over the types of `a` with random upper bounds.
pub fn random_zero_profile(a: &Structure, r: usize, rng: &mut impl Rng) -> NeighbourhoodProfile {
    let mut reg = TypeRegistry::new(r);
    let counts = histogram(a, &mut reg).unwrap();
    let intervals = counts
        .iter()
        .map(|&c| if rng.gen_bool(0.3) { Interval::ANY } else { Interval::at_most(rng.gen_range(0..=c + 1)) })
        .collect();
    let default = if rng.gen_bool(0.5) { Interval::ANY } else { Interval::at_most(rng.gen_range(0..3)) };
    NeighbourhoodProfile::new(reg, intervals, default).unwrap()
}

/// `obeys(A ⊔ C) ⇒ obeys(A)` for a 0-profile.
pub fn monotone_on(a: &Graph, c: &Graph, rng: &mut impl Rng) -> bool {
    let sa = Structure::from_graph(a);
    let big = Structure::from_graph(&a.disjoint_union(c));
    let rho = random_zero_profile(&big, rng.gen_range(0..=2), rng);
    !obeys_profile(&big, &rho).unwrap() || obeys_profile(&sa, &rho).unwrap()
}

pub fn criterion_6() -> Criterion {
    timed(6, "profiles", 60.0, |run| {
        let models = [c16_model(1), c16_model(2)];
        let rhos = build_rho_k(&models).unwrap();
        // root types are registered in model order, so profile i belongs to model i
        run.check("one profile per root type", rhos.len() == models.len());
        for (i, (m, rho)) in models.iter().zip(&rhos).enumerate() {
            run.check(format!("depth {} obeys its profile", i + 1), obeys_profile(&m.structure, rho).unwrap());
        }
        let two = models[0].structure.disjoint_union(&models[0].structure).unwrap();
        let mixed = models[0].structure.disjoint_union(&models[1].structure).unwrap();
        for (name, b) in [("two copies", &two), ("two depths", &mixed)] {
            let none = rhos.iter().all(|rho| !obeys_profile(b, rho).unwrap());
            run.check(format!("{name} violates every profile"), none);
        }
        let mut r = rng(6);
        let mut ok = true;
        for _ in 0..100 {
            let a = random_graph(r.gen_range(1..=7), 0.4, 3, &mut r);
            let c = random_graph(r.gen_range(1..=7), 0.4, 3, &mut r);
            ok &= monotone_on(&a, &c, &mut r);
        }
        run.check("0-profile monotonicity", ok);
    })
}

/// Whether `decode(reduce(a))` maps onto `a` through the element cycles.
pub fn round_trips(a: &Structure, d: usize) -> bool {
    let red = reduce(a, d).unwrap();
    let dec = decode(&red.graph, a.sig().clone(), d).unwrap();
    if dec.structure.n() != a.n() {
        return false;
    }
    let map: Vec<usize> = (0..a.n())
        .map(|e| dec.analysis.element_of(red.layout.element_vertex(e, 0)).unwrap())
        .collect();
    let rels = a.sig().len();
    (0..rels).all(|rel| {
        let mut img: Vec<Vec<usize>> = a.tuples(rel).iter().map(|t| t.iter().map(|&x| map[x]).collect()).collect();
        img.sort();
        let mut got = dec.structure.tuples(rel).to_vec();
        got.sort();
        img == got
    })
}

pub fn criterion_7() -> Criterion {
    timed(7, "reduction", 120.0, |run| {
        let m = c16_model(1);
        let d = m.layout().degree_bound();
        let red = reduce(&m.structure, d).unwrap();
        let g = &red.graph;
        run.check(format!("127500 vertices (got {})", g.n()), g.n() == 127_500);
        run.check("cubic", (0..g.n()).all(|v| g.degree(v) == 3));
        run.check("decode of reduce", round_trips(&m.structure, d));
        let o = StructureOracle::new(&m.structure);
        let sim = Simulator::for_oracle(&o, d).unwrap();
        let mut r = rng(7);
        let (mut agree, mut budget) = (true, true);
        for _ in 0..1000 {
            let v = r.gen_range(0..g.n());
            let i = r.gen_range(0..3);
            let ans = sim.query(&o, v, i).unwrap();
            agree &= ans.neighbour == g.neighbours(v)[i];
            budget &= ans.structure_queries <= d + 1;
        }
        run.check("simulated queries agree", agree);
        run.check("at most d+1 structure queries", budget);
    })
}

/// The `r`-ball of `v` in `g`.
pub fn ball(g: &Graph, v: usize, r: usize) -> Ball {
    r_ball(&Structure::from_graph(g), v, r)
}

pub fn copies(g: &Graph, k: usize) -> Graph {
    (0..k).fold(Graph::new(0), |acc, _| acc.disjoint_union(g))
}

/// Query budget `s·(d^{r+1}+1)·d + n₀·d`.
pub fn query_budget(v: &TesterVerdict, d: usize, r: usize, n0: usize) -> usize {
    v.samples * (d.pow(r as u32 + 1) + 1) * d + n0 * d
}

/// A freeness instance, the type, the degree bound and the proximity parameter.
pub struct Instance {
    pub name: &'static str,
    pub g: Graph,
    pub tau: Ball,
    pub d: usize,
    pub eps: f64,
}

/// τ-free inputs across the exact and sampling regimes.
pub fn free_instances() -> Vec<Instance> {
    let p3_mid = ball(&Graph::path(3), 1, 1);
    let edge_end = ball(&Graph::path(2), 0, 1);
    vec![
        // every degree-2 vertex lies in a triangle: sampled, lambda = eps
        Instance { name: "triangles vs open wedge", g: copies(&Graph::cycle(3), 70), tau: p3_mid.clone(), d: 2, eps: 0.1 },
        Instance { name: "cycles vs pendant edge", g: copies(&Graph::cycle(5), 2), tau: edge_end, d: 2, eps: 0.5 },
        Instance { name: "path vs triangle", g: Graph::path(9), tau: ball(&Graph::cycle(3), 0, 1), d: 2, eps: 0.2 },
    ]
}

/// Inputs with at least `lambda·n` forbidden centres.
pub fn far_instances() -> Vec<Instance> {
    let p3_mid = ball(&Graph::path(3), 1, 1);
    let mixed = Graph::cycle(40).disjoint_union(&copies(&Graph::cycle(3), 53)).disjoint_union(&Graph::new(1));
    vec![
        Instance { name: "one long cycle among triangles", g: mixed, tau: p3_mid.clone(), d: 2, eps: 0.1 },
        Instance { name: "long cycle", g: Graph::cycle(200), tau: p3_mid, d: 2, eps: 0.2 },
        Instance { name: "perfect matching", g: copies(&Graph::path(2), 4), tau: ball(&Graph::path(2), 0, 1), d: 2, eps: 0.5 },
    ]
}

fn run_freeness(inst: &Instance, seed: u64) -> TesterVerdict {
    let o = GraphOracle::new(&inst.g, inst.d);
    freeness_tester(&o, &inst.tau, inst.eps, seed).unwrap()
}

pub fn criterion_8() -> Criterion {
    timed(8, "testers", 300.0, |run| {
        for inst in free_instances() {
            let p = freeness_params(&inst.tau, inst.d, inst.eps).unwrap();
            let (mut accepted, mut within) = (true, true);
            for seed in 0..200 {
                let v = run_freeness(&inst, seed);
                accepted &= v.accept;
                within &= v.queries <= query_budget(&v, inst.d, inst.tau.radius(), p.n0);
            }
            run.check(format!("{}: 200/200 accepted", inst.name), accepted);
            run.check(format!("{}: query budget", inst.name), within);
        }
        let k4 = ball(&Graph::complete(4), 0, 1);
        let p = regularity_params(&k4, 3, 0.1).unwrap();
        for m in 1..=4 {
            let g = copies(&Graph::complete(4), m);
            let (mut accepted, mut within) = (true, true);
            for seed in 0..200 {
                let v = regularity_tester(&GraphOracle::new(&g, 3), &k4, 0.1, seed).unwrap();
                accepted &= v.accept;
                within &= v.queries <= query_budget(&v, 3, 1, p.n0);
            }
            run.check(format!("{m} copies of K4 accepted"), accepted && within);
            let g1 = g.disjoint_union(&Graph::new(1));
            let v = regularity_tester(&GraphOracle::new(&g1, 3), &k4, 0.1, 0).unwrap();
            run.check(
                format!("n = {} rejected through M", 4 * m + 1),
                !v.accept && v.cause == Some(RejectCause::InM) && v.queries == 0,
            );
        }
        for inst in far_instances() {
            let p = freeness_params(&inst.tau, inst.d, inst.eps).unwrap();
            let centres = tau_count(&inst.g, &inst.tau);
            run.check(
                format!("{}: {centres} centres >= lambda n", inst.name),
                centres as f64 >= p.lambda * inst.g.n() as f64,
            );
            let s = monte_carlo(100, 1000, |seed| Ok(run_freeness(&inst, seed))).unwrap();
            run.check(format!("{}: rejected {}/100", inst.name, s.trials - s.accepts), s.trials - s.accepts >= 60);
            let within = (0..20).all(|seed| {
                let v = run_freeness(&inst, seed);
                v.queries <= query_budget(&v, inst.d, inst.tau.radius(), p.n0)
            });
            run.check(format!("{}: query budget", inst.name), within);
        }
    })
}

/// The marked graph `F` of the covering example: a full edge and a full isolated vertex.
pub fn example_f() -> MarkedGraph {
    MarkedGraph::uniform(Graph::path(2).disjoint_union(&Graph::new(1)), Mark::Full)
}

/// `k` disjoint edges and one isolated vertex (vertex 0).
pub fn example_g(k: usize) -> Graph {
    Graph::new(1).disjoint_union(&copies(&Graph::path(2), k))
}

/// The example family together with the guard forcing maximum degree 2.
pub fn example_family() -> MarkedFamily {
    let guard = MarkedGraph::new(Graph::path(3), vec![Mark::Partial, Mark::Full, Mark::Partial]).unwrap();
    [example_f(), guard].into_iter().collect()
}

pub fn embed_matches_oracle(f: &MarkedGraph, g: &Graph) -> bool {
    let mut want = oracle_embeddings(f, g);
    let mut got = all_embeddings(f, g).unwrap();
    want.sort();
    got.sort();
    embed(f, g).is_some() == !want.is_empty() && want == got
}

pub fn realisation_sound(tau: &Ball, k: usize, graphs: &[Graph]) -> bool {
    let fam = k_realisations(tau, k + 1, 2, 9).unwrap();
    graphs.iter().all(|g| is_family_free(&fam, g) == (tau_count(g, tau) <= k))
}

pub fn union_sound(f1: &MarkedGraph, f2: &MarkedGraph, graphs: &[Graph]) -> bool {
    let fam = union_family(f1, f2, 9).unwrap();
    let one = |f: &MarkedGraph| -> MarkedFamily { [f.clone()].into_iter().collect() };
    let (a, b) = (one(f1), one(f2));
    graphs.iter().all(|g| is_family_free(&fam, g) == (is_family_free(&a, g) || is_family_free(&b, g)))
}

pub fn criterion_9() -> Criterion {
    timed(9, "generalized subgraph freeness", 300.0, |run| {
        let mut r = rng(9);
        let mut ok = true;
        for _ in 0..200 {
            let g = random_graph(r.gen_range(1..=7), 0.4, 7, &mut r);
            let f = random_marked(r.gen_range(1..=4), &mut r);
            ok &= embed_matches_oracle(&f, &g);
        }
        run.check("embedding search equals oracle", ok);

        let graphs: Vec<Graph> = small_graphs(7, 2).unwrap().into_iter().flatten().collect();
        let types = zzprop::gsf::enumerate_types(2, 1, 3).unwrap();
        for k in 1..=2 {
            let sound = types.representatives().iter().all(|tau| realisation_sound(tau, k, &graphs));
            run.check(format!("realisations k = {k}"), sound);
        }

        let graphs6: Vec<Graph> = small_graphs(6, 5).unwrap().into_iter().flatten().collect();
        let mut r = rng(90);
        let mut ok = true;
        for _ in 0..6 {
            let f1 = random_marked(r.gen_range(1..=3), &mut r);
            let f2 = random_marked(r.gen_range(1..=3), &mut r);
            ok &= union_sound(&f1, &f2, &graphs6);
        }
        run.check("union freeness", ok);

        let fam: MarkedFamily = [example_f()].into_iter().collect();
        let mut exact = true;
        for k in 1..=5 {
            let g = example_g(k);
            let embs = all_embeddings(&example_f(), &g).unwrap();
            let common: BTreeSet<usize> =
                (0..g.n()).filter(|v| embs.iter().all(|m| m.contains(v))).collect();
            let single: Vec<usize> = (0..g.n()).filter(|&v| covers(&[v], &fam, &g)).collect();
            // with a single edge its endpoints lie in every embedding as well
            let want: BTreeSet<usize> = if k == 1 { (0..3).collect() } else { BTreeSet::from([0]) };
            exact &= embs.len() == 2 * k && common == want && single == want.into_iter().collect::<Vec<_>>();
        }
        run.check("covering set of the example", exact);
    })
}

/// Every covering set of every max-degree-2 graph on `n` vertices satisfies the repair bound.
/// Returns the number of (graph, covering set) pairs checked, or the first counterexample.
pub fn non_propagation(n: usize, k: usize) -> Result<usize, String> {
    let aug = deg2_augment(&example_family(), k, n).unwrap();
    let fam = aug.family;
    if aug.members_of_p == 0 {
        return Ok(0);
    }
    let free = |h: &Graph| is_family_free(&fam, h);
    let mut checked = 0;
    for dg in enumerate_deg2_graphs(n).unwrap() {
        let g = dg.to_graph();
        let dist = brute_distance(&g, &free, 2).unwrap().ok_or("no free graph reachable")?;
        for mask in 0u32..(1 << n) {
            let b: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
            if !covers(&b, &fam, &g) {
                continue;
            }
            checked += 1;
            let bound = tau_bound(k, b.len() as f64 / n as f64) * 2.0 * n as f64;
            if dist as f64 > bound + 1e-9 {
                return Err(format!("{dg:?} with B = {b:?}: distance {dist} above {bound}"));
            }
        }
    }
    Ok(checked)
}

pub fn criterion_10() -> Criterion {
    timed(10, "degree-2 non-propagation", 600.0, |run| {
        for n in 1..=6 {
            let res = non_propagation(n, 3);
            run.check(format!("n = {n}: {res:?}"), res.is_ok());
        }
    })
}

pub fn graph_signature() -> Arc<Signature> {
    Arc::new(Signature::graph())
}
