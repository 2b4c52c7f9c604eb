//! One function per subcommand; each returns a report with its assertions.

use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};
use symfq::counting::{
    bound_hypersurface, bound_slice, bound_thm_main, bound_vneq, count_system, nonempty_threshold, BoundCase, BoundParams,
    NonemptyVariant, Predicate,
};
use symfq::fields::{parse_field, Fe, Field};
use symfq::literal::parse_int_list;
use symfq::multipoly::identities::appendix_leading_check;
use symfq::multipoly::symmetric::{generic_subdisc, to_elementary};
use symfq::patterns::{correspondence_check, hypotheses, pattern_rows, w_lambda, PatternHypotheses, PolyFamily};
use symfq::ring::{Integers, Ring};
use symfq::rscodes::{
    bounds_report, good_zero_search, h_f_eval_remainder, h_f_expr, RSCode, TailPoly,
};
use symfq::suites::{run_suite, Suite};
use symfq::systems::{char_condition, check_assumption, Assumption, CharVariant, Regime, SymmetricSystem, Verdict};
use symfq::unipoly::{parse_unipoly, subdisc as poly_subdisc, Lambda};

use crate::error::CliError;
use crate::report::{int, rational, surd, Report, Table};
use crate::{BoundsArgs, Cli, CountArgs, DeepHolesArgs, FieldArgs, PatternsArgs, SubdiscArgs, VerifyArgs};

fn field_of(lit: &str, cli: &Cli) -> Result<Field, CliError> {
    Ok(parse_field(lit, cli.cap)?)
}

fn elem_json(f: &Field, a: &Fe) -> Value {
    if f.e() == 1 {
        json!(a.index())
    } else {
        json!(f.render(a))
    }
}

fn elem_of_int(f: &Field, s: &str) -> Result<Fe, CliError> {
    let n: BigInt = s.trim().parse().map_err(|_| CliError::Parse(format!("expected an integer, got {s:?}")))?;
    Ok(f.from_int(&n))
}

pub fn field(cli: &Cli, a: &FieldArgs) -> Result<Report, CliError> {
    let f = field_of(&a.q, cli)?;
    let mut table = Table::new(&["index", "coeffs", "element"]);
    let mut elements = vec![];
    if a.elements {
        for x in f.enumerate()? {
            let c = f.coeffs(x);
            table.push(vec![x.index().to_string(), format!("{c:?}").replace(' ', ""), f.render(&x)]);
            elements.push(json!({ "index": x.index(), "coeffs": c, "element": f.render(&x) }));
        }
    } else {
        let g = f.gen();
        table.push(vec![g.index().to_string(), format!("{:?}", f.coeffs(g)).replace(' ', ""), f.render(&g)]);
    }
    let result = json!({
        "literal": f.literal(),
        "order": f.order(),
        "p": f.p(),
        "e": f.e(),
        "modulus": f.modulus(),
        "generator": f.gen().index(),
        "elements": elements,
    });
    Ok(Report::new("field", result, table))
}

pub fn verify(a: &VerifyArgs) -> Result<Report, CliError> {
    let suite = Suite::from_str(&a.suite).map_err(CliError::Parse)?;
    let start = Instant::now();
    let res = run_suite(suite, a.seed);
    let mut table = Table::new(&["item", "pass", "detail"]);
    for i in &res.items {
        table.push(vec![i.name.clone(), i.pass.to_string(), i.detail.clone()]);
    }
    let result = json!({
        "suite": a.suite,
        "items": res.items.iter().map(|i| json!({ "name": i.name, "pass": i.pass, "detail": i.detail })).collect::<Vec<_>>(),
        "refuted_claims": res.refutations.iter().map(|r| json!({ "claim": r.claim, "counterexample": r.counterexample })).collect::<Vec<_>>(),
    });
    let mut rep = Report::new("verify", result, table);
    for i in res.items.iter().filter(|i| !i.pass) {
        rep.failures.push(format!("{}: {}", i.name, i.detail));
    }
    rep.timing.insert("wall_ms".into(), json!(start.elapsed().as_millis() as u64));
    Ok(rep)
}

fn parse_regime(s: &str) -> Result<Regime, CliError> {
    match s {
        "complete" => Ok(Regime::Complete),
        "hypersurface" => Ok(Regime::Hypersurface),
        _ => Err(CliError::Parse(format!("unknown regime {s:?}"))),
    }
}

fn parse_case(s: &str) -> Result<BoundCase, CliError> {
    match s {
        "k2" => Ok(BoundCase::K2),
        "k3" => Ok(BoundCase::K3),
        "general" => Ok(BoundCase::General),
        _ => Err(CliError::Parse(format!("unknown case {s:?}"))),
    }
}

fn load_system(cli: &Cli, a: &CountArgs) -> Result<SymmetricSystem, CliError> {
    let file: Value = match &a.system {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
            serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{path}: {e}")))?
        }
        None => json!({}),
    };
    let get_usize = |key: &str, flag: Option<usize>| -> Result<usize, CliError> {
        flag.or_else(|| file.get(key).and_then(Value::as_u64).map(|v| v as usize))
            .ok_or_else(|| CliError::Parse(format!("missing {key}")))
    };
    let field_lit = a
        .field
        .clone()
        .or_else(|| file.get("field").and_then(|v| v.as_str().map(str::to_string).or_else(|| v.as_u64().map(|n| n.to_string()))))
        .ok_or_else(|| CliError::Parse("missing field".into()))?;
    let f = field_of(&field_lit, cli)?;
    let m = get_usize("m", a.m)?;
    let k = get_usize("k", a.k)?;
    let regime = match a.regime.as_deref().or_else(|| file.get("regime").and_then(Value::as_str)) {
        Some(r) => parse_regime(r)?,
        None => Regime::Complete,
    };
    let g: Vec<String> = if a.g.is_empty() {
        file.get("G")
            .and_then(Value::as_array)
            .ok_or_else(|| CliError::Parse("missing G".into()))?
            .iter()
            .map(|v| v.as_str().map(str::to_string).ok_or_else(|| CliError::Parse("G entries must be strings".into())))
            .collect::<Result<_, _>>()?
    } else {
        a.g.clone()
    };
    if let Some(s) = file.get("s").and_then(Value::as_u64) {
        if s as usize != g.len() {
            return Err(CliError::Invalid(format!("s = {s} but G has {} equations", g.len())));
        }
    }
    let refs: Vec<&str> = g.iter().map(String::as_str).collect();
    Ok(SymmetricSystem::parse(&f, m, k, regime, &refs)?)
}

fn verdict_json(v: &Verdict, f: &Field) -> Value {
    match v {
        Verdict::PassExact => json!({ "verdict": "pass-exact" }),
        Verdict::PassNecessary => json!({ "verdict": "pass-necessary" }),
        Verdict::Fail { t, point } => json!({ "verdict": "fail", "t": t, "point": point.iter().map(|x| x.index()).collect::<Vec<_>>(), "base": f.literal() }),
    }
}

pub fn count(cli: &Cli, a: &CountArgs) -> Result<Report, CliError> {
    let sys = load_system(cli, a)?;
    let pred = Predicate::parse(&a.predicate, sys.m())?;
    let case = match &a.case {
        Some(c) => parse_case(c)?,
        None if sys.k() >= 3 => BoundCase::K3,
        None => BoundCase::K2,
    };
    let rep = count_system(&sys, &pred, case, cli.shards.max(1), cli.budget)?;
    let (variant, char_len) = match sys.regime() {
        Regime::Complete => (CharVariant::Thm1, sys.k() as u64),
        Regime::Hypersurface => (CharVariant::Thm2, sys.k() as u64 - 1),
    };
    let char_ok = char_condition(sys.m() as u64, char_len, u64::from(sys.field().p()), variant);
    let mut assumptions = serde_json::Map::new();
    let mut hyp_fail = false;
    if let Some(t) = a.assumptions {
        for (name, which) in [("a1", Assumption::A1), ("a2", Assumption::A2)] {
            let r = check_assumption(&sys, which, t, cli.budget)?;
            hyp_fail |= !r.passed();
            assumptions.insert(name.into(), verdict_json(&r.verdict, sys.field()));
        }
    }
    let g: Vec<String> = sys.g().iter().map(|p| p.render(sys.field(), &|i| format!("E{}", i + 1))).collect();
    let result = json!({
        "field": sys.field().literal(),
        "q": rep.q, "m": rep.m, "s": rep.s, "k": rep.k,
        "regime": match sys.regime() { Regime::Complete => "complete", Regime::Hypersurface => "hypersurface" },
        "G": g,
        "predicate": rep.predicate,
        "case": rep.case.to_string(),
        "exact_count": rep.exact_count,
        "main_term": int(&rep.main_term),
        "bound": surd(&rep.bound),
        "satisfied": rep.satisfied,
        "vacuous": rep.vacuous,
        "char_condition": char_ok,
        "assumptions": assumptions,
    });
    let mut table = Table::new(&["q", "m", "s", "k", "predicate", "case", "exact_count", "main_term", "bound", "satisfied", "vacuous"]);
    table.push(vec![
        rep.q.to_string(),
        rep.m.to_string(),
        rep.s.to_string(),
        rep.k.to_string(),
        rep.predicate.clone(),
        rep.case.to_string(),
        rep.exact_count.to_string(),
        rep.main_term.to_string(),
        rep.bound.to_string(),
        rep.satisfied.to_string(),
        rep.vacuous.to_string(),
    ]);
    let mut out = Report::new("count", result, table);
    out.fail_if(!rep.satisfied && !hyp_fail, format!("|count - main| = |{} - {}| exceeds {}", rep.exact_count, rep.main_term, rep.bound));
    out.timing.insert("shards".into(), json!(rep.shards));
    out.timing.insert("wall_ms".into(), json!(rep.wall_ms as u64));
    Ok(out)
}

pub fn bounds(a: &BoundsArgs) -> Result<Report, CliError> {
    let p = BoundParams { q: a.q, m: a.m, s: a.s, k: a.k, delta: a.delta, big_d: a.big_d, d: a.d };
    if a.s >= a.m {
        return Err(CliError::Invalid(format!("need s < m, got s = {}, m = {}", a.s, a.m)));
    }
    let pairs = a.m * (a.m - 1) / 2;
    let mut table = Table::new(&["estimate", "case", "value"]);
    let mut entries = vec![];
    for case in [BoundCase::K2, BoundCase::K3, BoundCase::General] {
        let main = bound_thm_main(&p, case).ok();
        let vneq = bound_vneq(&p, pairs, case).ok();
        let hyp = if a.s == 1 { bound_hypersurface(a.q, a.m, a.k, a.d, case).ok() } else { None };
        for (name, v) in [("system", &main), ("distinct", &vneq), ("hypersurface", &hyp)] {
            if let Some(v) = v {
                table.push(vec![name.to_string(), case.to_string(), v.to_string()]);
            }
        }
        entries.push(json!({
            "case": case.to_string(),
            "system": main.as_ref().map(surd),
            "distinct": vneq.as_ref().map(surd),
            "hypersurface": hyp.as_ref().map(surd),
        }));
    }
    let slice = bound_slice(&p);
    table.push(vec!["slice".into(), "".into(), slice.to_string()]);
    let result = json!({
        "main_term": int(&p.main_term()),
        "estimates": entries,
        "slice": int(&slice),
        "nonempty_threshold_system": int(&nonempty_threshold(&p, NonemptyVariant::System)),
        "nonempty_threshold_hypersurface": int(&nonempty_threshold(&p, NonemptyVariant::Hypersurface)),
    });
    Ok(Report::new("bounds", result, table))
}

fn build_family(f: &Field, a: &PatternsArgs) -> Result<PolyFamily, CliError> {
    let n = a.n;
    let mut fixed = vec![];
    if let Some(p) = &a.prescribe {
        for item in p.split(',').filter(|s| !s.trim().is_empty()) {
            let (lhs, rhs) = item.split_once('=').ok_or_else(|| CliError::Parse(format!("expected aJ=v, got {item:?}")))?;
            let j: usize = lhs
                .trim()
                .strip_prefix('a')
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| CliError::Parse(format!("expected aJ, got {lhs:?}")))?;
            if j >= n {
                return Err(CliError::Invalid(format!("a{j} is not a lower coefficient of a degree-{n} polynomial")));
            }
            fixed.push((n - j, elem_of_int(f, rhs)?));
        }
    }
    if !a.g.is_empty() && !fixed.is_empty() {
        return Err(CliError::Invalid("use either --prescribe or --g".into()));
    }
    if a.g.is_empty() {
        Ok(PolyFamily::prescribed(f, n, &fixed)?)
    } else {
        let refs: Vec<&str> = a.g.iter().map(String::as_str).collect();
        Ok(PolyFamily::parse(f, n, &refs)?)
    }
}

fn hyp_json(h: &PatternHypotheses, f: &Field) -> Value {
    json!({
        "char_condition": h.char_ok,
        "support": h.support_ok,
        "a1": h.a1.as_ref().map(|v| verdict_json(v, f)),
        "a2": h.a2.as_ref().map(|v| verdict_json(v, f)),
        "q_gt_n": h.q_gt_n,
        "all_hold": h.all_hold(),
    })
}

pub fn patterns(cli: &Cli, a: &PatternsArgs) -> Result<Report, CliError> {
    let f = field_of(&a.q, cli)?;
    let fam = build_family(&f, a)?;
    let only: Option<Lambda> = a.lambda.as_deref().map(Lambda::from_str).transpose()?;
    if let Some(l) = &only {
        if l.n() != a.n {
            return Err(CliError::Invalid(format!("pattern {l} is not a pattern of n = {}", a.n)));
        }
    }
    let start = Instant::now();
    let rows = pattern_rows(&fam, cli.budget)?;
    let hyp = hypotheses(&fam, cli.budget);
    let mut table = Table::new(&["lambda", "total", "squarefree", "main_term", "bound", "vacuous"]);
    let mut json_rows = vec![];
    let mut failures = vec![];
    let family_size: u64 = rows.iter().map(|r| r.total).sum();
    for r in rows.iter().filter(|r| only.as_ref().is_none_or(|l| *l == r.lambda)) {
        let corr = if a.correspondence { Some(correspondence_check(&fam, &r.lambda, cli.budget)?) } else { None };
        if let Some(c) = &corr {
            if !c.pass {
                failures.push(format!("correspondence {}: w * sq = {} * {} != {}", r.lambda, c.w, c.squarefree, c.points));
            }
        }
        if hyp.all_hold() && !(r.sq_ok && r.total_ok) {
            failures.push(format!("pattern {} outside its estimate", r.lambda));
        }
        table.push(vec![
            r.lambda.to_string(),
            r.total.to_string(),
            r.squarefree.to_string(),
            symfq::ring::render_rational(&r.main_term),
            symfq::ring::render_rational(&r.bound_total),
            r.vacuous.to_string(),
        ]);
        json_rows.push(json!({
            "lambda": r.lambda.to_string(),
            "w": int(&w_lambda(&r.lambda)),
            "total": r.total,
            "squarefree": r.squarefree,
            "main_term": rational(&r.main_term),
            "bound_squarefree": rational(&r.bound_sq),
            "bound_total": rational(&r.bound_total),
            "squarefree_within": r.sq_ok,
            "total_within": r.total_ok,
            "vacuous": r.vacuous,
            "correspondence": corr.map(|c| json!({ "points": c.points, "pass": c.pass })),
        }));
    }
    let (delta, big_d) = fam.delta_d();
    let expected = u128::from(f.order()).pow((a.n - fam.m()) as u32);
    let result = json!({
        "field": f.literal(),
        "n": a.n,
        "m": fam.m(),
        "constraints": fam.constraints().iter().map(|g| g.render(&f, &|i| format!("Z{}", i + 1))).collect::<Vec<_>>(),
        "delta": delta,
        "big_d": big_d,
        "family_size": family_size,
        "hypotheses": hyp_json(&hyp, &f),
        "rows": json_rows,
    });
    let mut rep = Report::new("patterns", result, table);
    rep.failures = failures;
    if fam.is_linear() {
        rep.fail_if(
            fam.m() > 0 && u128::from(family_size) != expected && family_size != 0,
            format!("family size {family_size} is not q^(n-m) = {expected}"),
        );
        rep.fail_if(fam.m() == 0 && u128::from(family_size) != expected, format!("census total {family_size} != {expected}"));
    }
    rep.timing.insert("wall_ms".into(), json!(start.elapsed().as_millis() as u64));
    Ok(rep)
}

fn parse_tail(f: &Field, k: usize, d: Option<usize>, s: &str) -> Result<TailPoly, CliError> {
    let tail: Vec<Fe> = parse_int_list(s)?.iter().map(|n| f.from_int(n)).collect();
    if let Some(d) = d {
        if d != tail.len() {
            return Err(CliError::Invalid(format!("tail has {} entries but d = {d}", tail.len())));
        }
    }
    Ok(TailPoly::new(k, tail)?)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |a, i| a * i)
}

pub fn deep_holes(cli: &Cli, a: &DeepHolesArgs) -> Result<Report, CliError> {
    let f = field_of(&a.q, cli)?;
    let q = u64::from(f.order());
    let start = Instant::now();
    let budget = cli.budget;
    let mut rep = match a.mode.as_str() {
        "search" => {
            let tail = parse_tail(&f, a.k, a.d, &a.tail)?;
            let code = RSCode::standard(&f, a.k)?;
            let found = good_zero_search(&tail, &code, budget)?;
            let expr = h_f_expr(&f, &tail).render(&f, &|i| format!("E{}", i + 1));
            let mut table = Table::new(&["found", "subset"]);
            let subset: Option<Vec<Value>> = found.as_ref().map(|x| x.iter().map(|e| elem_json(&f, e)).collect());
            table.push(vec![
                found.is_some().to_string(),
                found.as_ref().map(|x| x.iter().map(|e| f.render(e)).collect::<Vec<_>>().join(" ")).unwrap_or_default(),
            ]);
            let result = json!({
                "field": f.literal(), "k": a.k, "d": tail.d,
                "f": tail.poly(&f).render(&f, "T"),
                "h_f": expr,
                "found": found.is_some(),
                "subset": subset,
                "ordered_tuples": found.as_ref().map(|_| int(&factorial(a.k + 1))),
            });
            let mut rep = Report::new("deep-holes", result, table);
            if let Some(x) = &found {
                rep.fail_if(!f.is_zero(&h_f_eval_remainder(&f, &tail, x)), "good zero fails the remainder check");
            }
            rep
        }
        "verify" => {
            let code = RSCode::standard(&f, a.k)?;
            let tails = if a.all_tails {
                TailPoly::all(&f, a.k, a.d.ok_or_else(|| CliError::Parse("--all-tails needs --d".into()))?)
            } else {
                vec![parse_tail(&f, a.k, a.d, &a.tail)?]
            };
            let mut table = Table::new(&["tail", "distance", "deep_hole", "good_zero"]);
            let mut items = vec![];
            let mut failures = vec![];
            let limit = q as usize - a.k - 2;
            for t in &tails {
                let w = code.word_of(&t.poly(&f));
                let dist = code.distance(&w, budget)?;
                let gz = good_zero_search(t, &code, budget)?;
                let tail_s = format!("[{}]", t.tail.iter().map(|e| f.render(e)).collect::<Vec<_>>().join(","));
                if gz.is_some() && dist > limit {
                    failures.push(format!("tail {tail_s}: good zero but distance {dist} > {limit}"));
                }
                table.push(vec![tail_s.clone(), dist.to_string(), (dist == code.rho()).to_string(), gz.is_some().to_string()]);
                items.push(json!({ "tail": tail_s, "distance": dist, "deep_hole": dist == code.rho(), "good_zero": gz.is_some() }));
            }
            let result = json!({ "field": f.literal(), "k": a.k, "rho": code.rho(), "distance_limit": limit, "words": items });
            let mut rep = Report::new("deep-holes", result, table);
            rep.failures = failures;
            rep
        }
        "criteria" => {
            let d = a.d.ok_or_else(|| CliError::Parse("criteria mode needs --d".into()))?;
            let eps = BigRational::from_str(a.eps.trim()).map_err(|_| CliError::Parse(format!("bad epsilon {:?}", a.eps)))?;
            let b = bounds_report(q, a.k as u64, d as u64, &eps)?;
            let mut table = Table::new(&["criterion", "k_bound", "k_strict", "k_min", "q_min", "in_domain", "holds"]);
            let crit: Vec<Value> = b
                .criteria
                .iter()
                .map(|c| {
                    table.push(vec![
                        c.criterion.name().into(),
                        symfq::ring::render_rational(&c.k_bound),
                        c.k_strict.to_string(),
                        c.k_min.to_string(),
                        c.q_min.to_string(),
                        c.in_domain.to_string(),
                        c.holds.to_string(),
                    ]);
                    json!({
                        "criterion": c.criterion.name(),
                        "k_bound": rational(&c.k_bound),
                        "k_strict": c.k_strict,
                        "k_min": int(&c.k_min),
                        "q_min": int(&c.q_min),
                        "in_domain": c.in_domain,
                        "holds": c.holds,
                    })
                })
                .collect();
            let result = json!({
                "q": q, "k": a.k, "d": d, "eps": rational(&b.eps),
                "vf_bound": surd(&b.vf_bound),
                "n1_bound": surd(&b.n1_bound),
                "n2_bound": surd(&b.n2_bound),
                "n_lower": surd(&b.n_lower),
                "n_lower_positive": b.n_lower_positive,
                "estimate_source": "hypersurface estimate, H_f free of E_{d+1}..E_{k+1}",
                "in_domain": b.in_domain,
                "char_condition": b.char_ok,
                "criteria": crit,
            });
            let mut rep = Report::new("deep-holes", result, table);
            rep.fail_if(b.n_lower != b.n_lower_displayed, "lower bound composition disagrees with its displayed form");
            rep
        }
        m => return Err(CliError::Parse(format!("unknown mode {m:?}"))),
    };
    rep.timing.insert("wall_ms".into(), json!(start.elapsed().as_millis() as u64));
    Ok(rep)
}

pub fn subdisc(cli: &Cli, a: &SubdiscArgs) -> Result<Report, CliError> {
    match (&a.q, &a.poly, a.m) {
        (Some(q), Some(p), _) => {
            let f = field_of(q, cli)?;
            let poly = parse_unipoly(&f, p)?;
            let v = poly_subdisc(&f, &poly, a.j)?;
            let mut table = Table::new(&["poly", "j", "value"]);
            table.push(vec![poly.render(&f, "T"), a.j.to_string(), f.render(&v)]);
            let result = json!({ "field": f.literal(), "poly": poly.render(&f, "T"), "j": a.j, "value": elem_json(&f, &v) });
            Ok(Report::new("subdisc", result, table))
        }
        (None, None, Some(m)) => {
            let z = Integers;
            let g = to_elementary(&z, &generic_subdisc(&z, m, a.j)?)?;
            let rendered = g.render(&z, &|i| format!("E{}", i + 1));
            let check = if a.j + 1 < m { Some(appendix_leading_check(m, a.j)?) } else { None };
            let mut table = Table::new(&["m", "j", "elementary_form"]);
            table.push(vec![m.to_string(), a.j.to_string(), rendered.clone()]);
            let result = json!({
                "m": m, "j": a.j,
                "elementary_form": rendered,
                "leading": check.as_ref().map(|c| json!({
                    "coefficient": int(&c.coefficient),
                    "expected_abs": int(&c.expected_abs),
                    "unique": c.unique,
                    "homogeneous": c.homogeneous,
                    "pass": c.pass,
                })),
            });
            let mut rep = Report::new("subdisc", result, table);
            if let Some(c) = check {
                rep.fail_if(!c.pass, format!("leading coefficient {} vs m (m-j)^(m-j-1) = {}", c.coefficient, c.expected_abs));
            }
            Ok(rep)
        }
        _ => Err(CliError::Parse("give --q with --poly, or --m".into())),
    }
}
