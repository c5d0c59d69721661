//! Verification suites behind `verify SUITE`.

use latvoa::azalg::{ap_relations, relation_holds, Gen, AP_GENS};
use latvoa::bilform::{calibrate_upto, form, invariance_check, quasi_triangular_check, Check, DecompositionSpec};
use latvoa::fock::{FockTerm, FockVector, Space};
use latvoa::lattice::SubMonoid;
use latvoa::modvoa::{ap_module_relation_check, Epsilon, PModule, PModuleSpec};
use latvoa::vertex::Vertex;
use latvoa::zhu::{circle, verify_homomorphism, Reducer, StarRealization};
use latvoa::{q, to_int};
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::Loaded;
use crate::pool::par_map;
use crate::CliError;

pub const SUITES: [&str; 9] = [
    "axioms",
    "o-vanishing-vb",
    "o-vanishing-vp",
    "zhu-presentations",
    "modules",
    "bilform",
    "quasi-triangular",
    "strong-generation",
    "normalizer",
];

pub struct Options {
    pub cutoff: Option<i64>,
    pub seed: u64,
    pub jobs: usize,
}

type Witness = Option<String>;

fn v(t: &FockTerm) -> FockVector {
    FockVector::from_term(t.clone())
}

fn lib<T>(r: latvoa::Result<T>) -> Result<T, String> {
    r.map_err(|e| format!("error: {e}"))
}

/// Collapses per-sample outcomes into one check carrying the first witness.
fn summarize(name: &str, outcomes: Vec<Witness>) -> Check {
    let n = outcomes.len();
    let bad = outcomes.iter().filter(|w| w.is_some()).count();
    match outcomes.into_iter().flatten().next() {
        None => Check::new(name, None),
        Some(w) => Check::new(name, Some(format!("{bad} of {n} failed; first: {w}"))),
    }
}

fn outcome(r: Result<bool, String>, describe: impl FnOnce() -> String) -> Witness {
    match r {
        Ok(true) => None,
        Ok(false) => Some(describe()),
        Err(e) => Some(format!("{}: {e}", describe())),
    }
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, xs: &'a [T]) -> &'a T {
    &xs[rng.gen_range(0..xs.len())]
}

fn need_a2(cfg: &Loaded, suite: &str) -> Result<(), CliError> {
    if cfg.is_a2() {
        Ok(())
    } else {
        Err(CliError::Config(format!("suite {suite} needs the A2 lattice")))
    }
}

fn parabolic(cfg: &Loaded) -> Result<SubMonoid, CliError> {
    if cfg.config.submonoids.contains_key("P") {
        cfg.monoid("P")
    } else {
        Ok(SubMonoid::a2_parabolic())
    }
}

/// The configured space without λ, for suites that live in `V_L`.
fn plain_space(cfg: &Loaded) -> Space {
    Space { lambda: None, ..cfg.space.clone() }
}

pub fn run(suite: &str, cfg: &Loaded, opt: &Options) -> Result<Vec<Check>, CliError> {
    match suite {
        "axioms" => axioms(cfg, opt),
        "o-vanishing-vb" => o_vanishing_vb(cfg, opt),
        "o-vanishing-vp" => o_vanishing_vp(cfg, opt),
        "zhu-presentations" => presentations(cfg, opt),
        "modules" => modules(cfg, opt),
        "bilform" => bilform(cfg, opt),
        "quasi-triangular" => quasi_triangular(cfg, opt),
        "strong-generation" => strong_generation(cfg, opt),
        "normalizer" => normalizer(cfg, opt),
        _ => Err(CliError::Usage(format!("unknown suite {suite:?}; expected one of {}", SUITES.join(", ")))),
    }
}

fn axioms(cfg: &Loaded, opt: &Options) -> Result<Vec<Check>, CliError> {
    let space = plain_space(cfg);
    let basis = space.basis_upto(&SubMonoid::full(space.rank()), &q(opt.cutoff.unwrap_or(2))).map_err(CliError::lib)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opt.seed);
    let mut sample = |k: usize| -> Vec<(FockTerm, FockTerm, FockTerm, i64, i64, i64)> {
        (0..k)
            .map(|_| {
                let (a, b, c) = (pick(&mut rng, &basis).clone(), pick(&mut rng, &basis).clone(), pick(&mut rng, &basis).clone());
                (a, b, c, rng.gen_range(-3..=3), rng.gen_range(-3..=3), rng.gen_range(-3..=3))
            })
            .collect()
    };
    let (triples, pairs, singles) = (sample(60), sample(40), sample(60));
    let init = || Vertex::new(space.clone());
    let s = &space;
    let borcherds = par_map(&triples, opt.jobs, init, |vx, (a, b, c, m, n, k)| {
        outcome(lib(vx.borcherds_check(&v(a), &v(b), &v(c), *m, *n, *k)), || {
            format!("a={} b={} c={} (m,n,k)=({m},{n},{k})", s.format_term(a), s.format_term(b), s.format_term(c))
        })
    });
    let skew = par_map(&pairs, opt.jobs, init, |vx, (a, b, _, n, _, _)| {
        outcome(lib(vx.skew_symmetry_check(&v(a), &v(b), *n)), || format!("a={} b={} n={n}", s.format_term(a), s.format_term(b)))
    });
    let deriv = par_map(&singles, opt.jobs, init, |vx, (a, b, _, n, _, _)| {
        outcome(lib(vx.derivative_check(&v(a), &v(b), *n)), || format!("a={} b={} n={n}", s.format_term(a), s.format_term(b)))
    });
    let cons = par_map(&singles, opt.jobs, init, |vx, (a, b, _, n, _, _)| {
        outcome(lib(vx.conservation_check(a, *n, b)), || format!("a={} b={} n={n}", s.format_term(a), s.format_term(b)))
    });
    Ok(vec![
        summarize("borcherds", borcherds),
        summarize("skew-symmetry", skew),
        summarize("derivative", deriv),
        summarize("conservation", cons),
    ])
}

fn sweep(space: &Space, reducer: Reducer, basis: &[FockTerm], jobs: usize) -> Vec<Check> {
    par_map(basis, jobs, || Vertex::new(space.clone()), |vx, a| {
        let mut witness = None;
        for b in basis {
            let r = lib(circle(vx, &v(a), &v(b))).and_then(|c| lib(reducer.reduce(&c)));
            match r {
                Ok(nf) if nf.is_zero() => {}
                Ok(nf) => witness = Some(format!("b={} reduces to {nf}", space.format_term(b))),
                Err(e) => witness = Some(format!("b={}: {e}", space.format_term(b))),
            }
            if witness.is_some() {
                break;
            }
        }
        Check::new(format!("circle({}, b)", space.format_term(a)), witness)
    })
}

fn o_vanishing_vb(cfg: &Loaded, opt: &Options) -> Result<Vec<Check>, CliError> {
    let n = cfg.rank_one_n().ok_or_else(|| CliError::Config("suite o-vanishing-vb needs a rank-one even lattice".into()))?;
    let space = plain_space(cfg);
    let basis: Vec<FockTerm> = space
        .basis_upto(&SubMonoid::borel(1), &q(opt.cutoff.unwrap_or(4)))
        .map_err(CliError::lib)?
        .into_iter()
        .filter(|t| t.charge.v[0] <= q(2))
        .collect();
    Ok(sweep(&space, Reducer::VB(n as u32), &basis, opt.jobs))
}

fn o_vanishing_vp(cfg: &Loaded, opt: &Options) -> Result<Vec<Check>, CliError> {
    need_a2(cfg, "o-vanishing-vp")?;
    let space = plain_space(cfg);
    let basis = space.basis_upto(&parabolic(cfg)?, &q(opt.cutoff.unwrap_or(3))).map_err(CliError::lib)?;
    Ok(sweep(&space, Reducer::VP, &basis, opt.jobs))
}

fn presentations(cfg: &Loaded, opt: &Options) -> Result<Vec<Check>, CliError> {
    need_a2(cfg, "zhu-presentations")?;
    let space = plain_space(cfg);
    let init = || Vertex::new(space.clone());
    let rels = ap_relations();
    let mut checks = par_map(&rels, opt.jobs, init, |vx, rel| {
        let real = StarRealization { vx, reducer: Reducer::VP };
        Check::new(rel.name.clone(), outcome(lib(relation_holds(&real, rel)), || "relation fails in A(V_P)".into()))
    });
    let gen_pairs: Vec<(Gen, Gen)> = AP_GENS.iter().flat_map(|a| AP_GENS.iter().map(move |b| (*a, *b))).collect();
    checks.extend(par_map(&gen_pairs, opt.jobs, init, |vx, (a, b)| {
        let (ua, ub) = (Reducer::VP.generator_state(&space, *a), Reducer::VP.generator_state(&space, *b));
        let (ua, ub) = (ua.expect("generator state"), ub.expect("generator state"));
        Check::new(
            format!("homomorphism({}, {})", a.name(), b.name()),
            outcome(lib(verify_homomorphism(vx, Reducer::VP, &ua, &ub)), || "G(a*b) != G(a)G(b)".into()),
        )
    }));
    let basis = space.basis_upto(&parabolic(cfg)?, &q(opt.cutoff.unwrap_or(2))).map_err(CliError::lib)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opt.seed);
    let pairs: Vec<(FockTerm, FockTerm)> = (0..20).map(|_| (pick(&mut rng, &basis).clone(), pick(&mut rng, &basis).clone())).collect();
    let random = par_map(&pairs, opt.jobs, init, |vx, (a, b)| {
        outcome(lib(verify_homomorphism(vx, Reducer::VP, &v(a), &v(b))), || format!("a={} b={}", space.format_term(a), space.format_term(b)))
    });
    checks.push(summarize("homomorphism(random pairs)", random));
    Ok(checks)
}

fn module_spec(cfg: &Loaded, eps: Epsilon) -> Result<PModuleSpec, CliError> {
    match &cfg.space.lambda {
        None => Ok(PModuleSpec::generic(eps)),
        Some(l) => {
            if !l.pairings[0].is_zero() {
                return Err(CliError::Config("modules need (λ|α) = 0".into()));
            }
            Ok(PModuleSpec { epsilon: eps, pairing_beta_lambda: l.pairings[1].clone(), lambda_norm: l.norm.clone() })
        }
    }
}

fn modules(cfg: &Loaded, opt: &Options) -> Result<Vec<Check>, CliError> {
    need_a2(cfg, "modules")?;
    let levels = opt.cutoff.unwrap_or(3).max(1) as u32;
    let vp_basis = plain_space(cfg).basis_upto(&SubMonoid::a2_parabolic(), &q(2)).map_err(CliError::lib)?;
    let mut checks = Vec::new();
    for (tag, eps, lv) in [("eps=0", Epsilon::Zero, levels), ("eps=half", Epsilon::HalfAlpha, levels.saturating_sub(1).max(1))] {
        let m = PModule::new(module_spec(cfg, eps)?).map_err(CliError::lib)?;
        let mats = m.bottom_matrices();
        checks.push(Check::new(
            format!("bottom-action[{tag}]"),
            outcome(mats.as_ref().map(|g| *g == m.expected_bottom_matrices()).map_err(|e| e.to_string()), || "bottom action differs".into()),
        ));
        checks.push(Check::new(
            format!("ap-relations[{tag}]"),
            outcome(lib(mats.and_then(|g| ap_module_relation_check(&g))), || "A_P relations fail on the bottom".into()),
        ));
        checks.push(Check::new(format!("spanning[{tag}, {lv} levels]"), outcome(lib(m.spanning_check(lv)), || "not spanned".into())));
        let bottom = m.bottom_weight();
        let mb: Vec<FockTerm> = (0..=2).flat_map(|k| m.basis_at(&(&bottom + q(k)))).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(opt.seed);
        let mut witness = Vec::new();
        for _ in 0..50 {
            let (a, w, n) = (pick(&mut rng, &vp_basis), pick(&mut rng, &mb), rng.gen_range(-2..=3));
            let want = m.algebra().space().weight(a) + m.lm0(w) - q(n) - q(1);
            let r = match m.mode(&v(a), n, &v(w)) {
                Ok(r) => r.terms.keys().all(|t| m.lm0(t) == want).then_some(()).ok_or("L(0) mismatch".to_string()),
                Err(e) => Err(e.to_string()),
            };
            witness.push(r.err().map(|e| format!("{}_{n} {}: {e}", cfg.space.format_term(a), cfg.space.format_term(w))));
        }
        checks.push(summarize(&format!("weight-conservation[{tag}]"), witness));
    }
    Ok(checks)
}

fn bilform(cfg: &Loaded, opt: &Options) -> Result<Vec<Check>, CliError> {
    let space = plain_space(cfg);
    let vx = Vertex::new(space.clone());
    let wc = opt.cutoff.unwrap_or(2);
    let ctx = calibrate_upto(&vx, 2 * wc + 2).map_err(CliError::lib)?;
    let basis = space.basis_upto(&SubMonoid::full(space.rank()), &q(wc)).map_err(CliError::lib)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opt.seed);
    let mut triples = Vec::new();
    for _ in 0..100 {
        let (a, b) = (pick(&mut rng, &basis).clone(), pick(&mut rng, &basis).clone());
        let target = a.charge.add(&b.charge).map_err(CliError::lib)?;
        let cands: Vec<&FockTerm> = basis.iter().filter(|t| t.charge.add(&target).map(|c| c.is_zero()).unwrap_or(false)).collect();
        let c = if cands.is_empty() { pick(&mut rng, &basis).clone() } else { (*pick(&mut rng, &cands)).clone() };
        let n = match to_int(&(space.weight(&a) + space.weight(&b) - q(1) - space.weight(&c))) {
            Some(n) if (-3..=3).contains(&n) && rng.gen_bool(0.8) => n,
            _ => rng.gen_range(-3..=3),
        };
        triples.push((a, b, c, n));
    }
    let init = || Vertex::new(space.clone());
    let inv = par_map(&triples, opt.jobs, init, |vx, (a, b, c, n)| {
        outcome(lib(invariance_check(vx, &ctx, &v(a), &v(b), &v(c), *n)), || {
            format!("a={} b={} c={} n={n}", space.format_term(a), space.format_term(b), space.format_term(c))
        })
    });
    let mut sym = Vec::new();
    let mut orth = Vec::new();
    let mut graded = Vec::new();
    for t in &basis {
        for u in &basis {
            let f = form(&vx, &ctx, &v(t), &v(u)).map_err(|e| e.to_string());
            let g = form(&vx, &ctx, &v(u), &v(t)).map_err(|e| e.to_string());
            let label = || format!("({} | {})", space.format_term(t), space.format_term(u));
            sym.push(outcome(f.clone().and_then(|f| g.map(|g| f == g)), label));
            let opposite = t.charge.add(&u.charge).map(|c| c.is_zero()).unwrap_or(false);
            if !opposite {
                orth.push(outcome(f.clone().map(|f| f.is_zero()), label));
            }
            if space.weight(t) != space.weight(u) {
                graded.push(outcome(f.map(|f| f.is_zero()), label));
            }
        }
    }
    Ok(vec![
        summarize("invariance", inv),
        summarize("symmetry", sym),
        summarize("charge-orthogonality", orth),
        summarize("weight-orthogonality", graded),
    ])
}

fn decompositions(cfg: &Loaded) -> Result<Vec<DecompositionSpec>, CliError> {
    if cfg.rank_one_n().is_some() {
        Ok(vec![DecompositionSpec::rank_one()])
    } else if cfg.is_a2() {
        Ok(vec![DecompositionSpec::a2_cone(), DecompositionSpec::a2_strip()])
    } else {
        Err(CliError::Config("quasi-triangular decompositions are defined for rank one and A2".into()))
    }
}

fn quasi_triangular(cfg: &Loaded, opt: &Options) -> Result<Vec<Check>, CliError> {
    let space = plain_space(cfg);
    let wc = opt.cutoff.unwrap_or(if cfg.is_a2() { 2 } else { 3 });
    let specs = decompositions(cfg)?;
    let results = par_map(&specs, opt.jobs, || Vertex::new(space.clone()), |vx, spec| -> Result<Vec<Check>, String> {
        let ctx = lib(calibrate_upto(vx, 2 * wc + 2))?;
        let checks = lib(quasi_triangular_check(vx, &ctx, spec, wc, 3))?;
        Ok(checks.into_iter().map(|c| Check { name: format!("{}/{}", spec.name, c.name), ..c }).collect())
    });
    let mut out = Vec::new();
    for (spec, r) in specs.iter().zip(results) {
        match r {
            Ok(cs) => out.extend(cs),
            Err(e) => out.push(Check::new(spec.name.clone(), Some(e))),
        }
    }
    Ok(out)
}

/// Graded dimensions of `V_M` counted independently of the mode engine.
pub fn partition_oracle(space: &Space, m: &SubMonoid, cutoff: i64) -> Result<Vec<u64>, CliError> {
    let mut memo = Default::default();
    let mut out = vec![0u64; cutoff as usize + 1];
    for g in space.monoid_charges_upto(m, &q(cutoff)).map_err(CliError::lib)? {
        let base = space.lattice.pairing_int(&g, &g) / 2;
        for w in base..=cutoff {
            out[w as usize] += latvoa::fock::colored_partitions(space.rank() as u32, (w - base) as u32, &mut memo);
        }
    }
    Ok(out)
}

fn strong_generation(cfg: &Loaded, opt: &Options) -> Result<Vec<Check>, CliError> {
    let space = plain_space(cfg);
    let vx = Vertex::new(space.clone());
    let (gens, m, wc) = if cfg.rank_one_n().is_some() {
        (vec![space.h1(0), space.exp(&[1])], SubMonoid::borel(1), opt.cutoff.unwrap_or(3))
    } else if cfg.is_a2() {
        let u: Vec<FockVector> = AP_GENS.iter().map(|g| Reducer::VP.generator_state(&space, *g).expect("generator state")).collect();
        (u, parabolic(cfg)?, opt.cutoff.unwrap_or(2))
    } else {
        return Err(CliError::Config("strong generation is defined for rank one and A2".into()));
    };
    let strong = Check::new("strongly-generated", outcome(lib(vx.strong_generation_check(&gens, &m, wc)), || "span is too small".into()));
    let got = vx.generated_dims(&gens, wc).map_err(CliError::lib)?;
    let want = partition_oracle(&space, &m, wc)?;
    let got: Vec<u64> = got.into_iter().map(|d| d as u64).collect();
    let dims = Check::new("dims-match-partition-count", (got != want).then(|| format!("generated {got:?}, partitions {want:?}")));
    Ok(vec![strong, dims])
}

fn normalizer(cfg: &Loaded, opt: &Options) -> Result<Vec<Check>, CliError> {
    let space = plain_space(cfg);
    let (m, outside): (SubMonoid, Vec<Vec<i64>>) = if cfg.rank_one_n().is_some() {
        (SubMonoid::borel(1), vec![vec![-1]])
    } else if cfg.is_a2() {
        (parabolic(cfg)?, vec![vec![0, -1], vec![-1, -1], vec![1, -1]])
    } else {
        return Err(CliError::Config("normalizer suite is defined for rank one and A2".into()));
    };
    let wc = q(opt.cutoff.unwrap_or(3));
    let basis = space.basis_upto(&m, &wc).map_err(CliError::lib)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opt.seed);
    let inside: Vec<FockTerm> = (0..20).map(|_| pick(&mut rng, &basis).clone()).collect();
    let init = || Vertex::new(space.clone());
    let ins = par_map(&inside, opt.jobs, init, |vx, a| {
        outcome(lib(vx.normalizer_check(&m, &v(a), 4, &wc)), || format!("{} does not normalize", space.format_term(a)))
    });
    let mut checks = vec![summarize("members-normalize", ins)];
    for g in &outside {
        let e = space.exp(g);
        let r = Vertex::new(space.clone()).normalizer_check(&m, &e, 4, &wc).map(|b| !b);
        checks.push(Check::new(
            format!("outside[{}]", space.format(&e)),
            outcome(lib(r), || "normalizes, but its charge is outside the monoid".into()),
        ));
    }
    Ok(checks)
}

