//! Command-line front end for the `ratdyn` library.

pub mod output;
pub mod parse;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ratdyn::algebra::factor::factor;
use ratdyn::algebra::place::{critical_points, critical_values, image_place, local_degree};
use ratdyn::algebra::{qr, Place, RatMap};
use ratdyn::classify::{classify, maximal_orbifold, Conjugacy, SpecialClass};
use ratdyn::curves::{genus_separated, image_curve, implicitize, is_invariant, BiCurve};
use ratdyn::decompose::{
    all_decompositions, bound_c, bound_kappa, bound_phi, bound_psi, complete_semiconjugacy, detect_periodicity,
    good_diagram_chain, normalize_left_factor, theorem_m2_gate, verify_semiconjugacy,
};
use ratdyn::orbifold::{
    chi_inequality_check, chi_of_signature, is_covering, is_holomorphic, is_min_holomorphic, o1_of, o2_of, pullback,
    rh_identity_check, Orbifold,
};
use ratdyn::search::{find_invariant_curves, find_periodic_curves, Completeness, SearchConfig, SearchReport};
use ratdyn::{Error, Result};
use serde_json::{json, Value};

use output::*;
use parse::{parse_bipoly, parse_map};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_VIOLATION: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "ratdyn", version, about = "Exact dynamics of rational maps over Q")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Read further positional arguments from a file, one expression per line.
    #[arg(long, global = true)]
    pub file: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Degree, critical portrait, orbifolds and classification of a map.
    Analyze { map: String },
    /// Ramification orbifolds.
    #[command(subcommand)]
    Orbifold(OrbifoldCmd),
    /// Power, Chebyshev, Lattes or generalized Lattes classification.
    Classify { map: String },
    /// Semiconjugacies A o X = X o B.
    #[command(subcommand)]
    Semiconj(SemiconjCmd),
    /// Decompositions of rational maps.
    #[command(subcommand)]
    Decompose(DecomposeCmd),
    /// Curves in P1 x P1.
    #[command(subcommand)]
    Curve(CurveCmd),
    /// Invariant and periodic curves of (A1, A2).
    #[command(subcommand)]
    Search(SearchCmd),
    /// Explicit bound functions.
    #[command(subcommand)]
    Bounds(BoundsCmd),
}

#[derive(Subcommand, Debug)]
pub enum OrbifoldCmd {
    /// Pullback f*O, with O written as {place:nu, ...}.
    Pullback { map: String, orbifold: String },
    /// Euler characteristic of a signature.
    Chi { signature: Vec<u64> },
    /// Holomorphy, covering and Riemann-Hurwitz checks for f: O1 -> O2.
    Check {
        map: String,
        /// Source orbifold; defaults to O1 of the map.
        #[arg(long)]
        o1: Option<String>,
        /// Target orbifold; defaults to O2 of the map.
        #[arg(long)]
        o2: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum SemiconjCmd {
    /// Checks A o X = X o B.
    Verify { a: String, x: String, b: String },
    /// Finds Y and d with X o Y = A^d and Y o X = B^d.
    Complete { a: String, x: String, b: String },
}

#[derive(Subcommand, Debug)]
pub enum DecomposeCmd {
    /// All F = X o W with deg X = n, up to X ~ X o mu.
    Factors { f: String, n: usize },
    /// Least N with A^N = X o R' and R = R' o A^(d-N), given X o R = A^d.
    Normalize { a: String, x: String, r: String, d: usize },
    /// Good diagram of length N over A starting at W0.
    Chain { a: String, w0: String, n: usize },
}

#[derive(Subcommand, Debug)]
pub enum CurveCmd {
    /// Genus of the curve Y1(x) = Y2(y).
    Genus { y1: String, y2: String },
    /// Checks (A1, A2)(C) = C.
    Invariant { curve: String, a1: String, a2: String },
    /// The first N images of C and its preperiod and period, if seen.
    Orbit { curve: String, a1: String, a2: String, n: usize },
    /// Equation of the image of t -> (X1(t), X2(t)).
    Implicitize { x1: String, x2: String },
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    pub a1: String,
    pub a2: String,
    pub d1: usize,
    pub d2: usize,
    /// Largest iterate A^N whose left factors are enumerated.
    #[arg(long, default_value_t = 2)]
    pub cap: usize,
    /// Also report the lines x = a, y = b through rational fixed points.
    #[arg(long)]
    pub lines: bool,
}

#[derive(Subcommand, Debug)]
pub enum SearchCmd {
    /// Invariant curves of exact bidegree (d1, d2).
    Invariant(SearchArgs),
    /// Periodic curves of exact bidegree (d1, d2) and period at most --period.
    Periodic {
        #[command(flatten)]
        args: SearchArgs,
        #[arg(long, default_value_t = 2)]
        period: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum BoundsCmd {
    Phi { m: u64, n: u64 },
    Psi { m: u64, n: u64 },
    Kappa { m: u64 },
    C { m: u64 },
    /// Whether g > (m - 84 n + 168) / 84.
    M2 { n: u64, m: u64, g: u64 },
}

/// A finished command: human-readable lines, a structured tree and an exit code.
pub struct Outcome {
    pub text: Vec<String>,
    pub json: Value,
    pub code: i32,
}

impl Outcome {
    fn ok(text: Vec<String>, json: Value) -> Self {
        Outcome { text, json, code: EXIT_OK }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.join("\n"),
            Format::Structured => serde_json::to_string_pretty(&self.json).unwrap(),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Inconclusive(_) => EXIT_INCONCLUSIVE,
        Error::TheoremViolation(_) => EXIT_VIOLATION,
        _ => EXIT_INPUT,
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "ParseError",
        Error::Inconclusive(_) => "Inconclusive",
        Error::TheoremViolation(_) => "TheoremViolation",
        _ => "PreconditionError",
    }
}

/// Error report; theorem violations carry the command line for reproduction.
pub fn render_error(e: &Error, format: Format, argv: &[String]) -> String {
    let repro = matches!(e, Error::TheoremViolation(_)).then(|| argv.join(" "));
    match format {
        Format::Text => {
            let mut s = format!("{}: {}", error_kind(e), e);
            if let Some(r) = repro {
                s.push_str(&format!("\nreproduce with: {}", r));
            }
            s
        }
        Format::Structured => serde_json::to_string_pretty(&json!({
            "error": { "kind": error_kind(e), "message": e.to_string(), "reproduce": repro }
        }))
        .unwrap(),
    }
}

/// Splices the lines of `--file PATH` into the positional arguments.
pub fn expand_file_args(argv: &[String]) -> std::io::Result<Vec<String>> {
    let mut out = Vec::with_capacity(argv.len());
    let mut path = None;
    let mut it = argv.iter();
    while let Some(a) = it.next() {
        if a == "--file" {
            path = it.next().cloned();
        } else if let Some(p) = a.strip_prefix("--file=") {
            path = Some(p.to_string());
        } else {
            out.push(a.clone());
        }
    }
    if let Some(p) = path {
        let body = std::fs::read_to_string(p)?;
        if !out.iter().any(|a| a == "--") {
            out.push("--".into());
        }
        out.extend(
            body.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(String::from),
        );
    }
    Ok(out)
}

/// Orbifold text such as `{0:2, inf:2, root(z^2+1):3}`.
pub fn parse_orbifold(src: &str) -> Result<Orbifold> {
    let body = src.trim().trim_start_matches('{').trim_end_matches('}');
    let mut o = Orbifold::trivial();
    for entry in body.split(',').map(str::trim).filter(|e| !e.is_empty()) {
        let bad = |msg: &str| Error::Parse { pos: 0, msg: format!("orbifold entry '{}': {}", entry, msg) };
        let (place, nu) = entry.rsplit_once(':').ok_or_else(|| bad("expected place:nu"))?;
        let nu: u64 = nu.trim().parse().map_err(|_| bad("nu must be a positive integer"))?;
        if nu == 0 {
            return Err(bad("nu must be positive"));
        }
        let place = place.trim();
        let place = place.strip_prefix("root(").and_then(|p| p.strip_suffix(')')).unwrap_or(place);
        let p = if place == "inf" {
            Place::Infinity
        } else {
            let m = parse_map(place)?;
            let poly = m.as_poly().ok_or_else(|| bad("place must be a number or a polynomial"))?;
            if poly.deg() == 0 {
                Place::rational(poly.coeff(0))
            } else {
                let f = factor(&poly);
                if f.factors.len() != 1 || f.factors[0].1 != 1 {
                    return Err(bad("minimal polynomial must be irreducible"));
                }
                Place::finite(poly)
            }
        };
        o.set(p, nu);
    }
    Ok(o)
}

fn map(s: &str) -> Result<RatMap> {
    parse_map(s)
}

fn curve(s: &str) -> Result<BiCurve> {
    BiCurve::new(&parse_bipoly(s)?)
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Analyze { map: f } => analyze(&map(f)?),
        Command::Orbifold(c) => orbifold_cmd(c),
        Command::Classify { map: f } => classify_cmd(&map(f)?),
        Command::Semiconj(c) => semiconj_cmd(c),
        Command::Decompose(c) => decompose_cmd(c),
        Command::Curve(c) => curve_cmd(c),
        Command::Search(c) => search_cmd(c),
        Command::Bounds(c) => bounds_cmd(c),
    }
}

fn classification_json(c: &SpecialClass) -> (String, Value) {
    let conj = |c: &Conjugacy| match c.mu() {
        Some(mu) => (
            format!("n = {}, sign = {}, mu = {}", c.degree(), c.sign(), mu),
            json!({ "n": c.degree(), "sign": c.sign(), "mu": map_json(mu) }),
        ),
        None => (
            format!("n = {}, sign = {}, conjugator needs an extension of Q", c.degree(), c.sign()),
            json!({ "n": c.degree(), "sign": c.sign(), "mu": null }),
        ),
    };
    let (detail, extra) = match c {
        SpecialClass::PowerConjugate(k) | SpecialClass::ChebyshevConjugate(k) => conj(k),
        SpecialClass::Lattes(o) | SpecialClass::GeneralizedLattes(o) => {
            (format!("orbifold {}", o), json!({ "orbifold": orbifold_json(o) }))
        }
        SpecialClass::NonSpecialNonGL => (String::new(), json!({})),
    };
    let text = if detail.is_empty() { c.tag().to_string() } else { format!("{} ({})", c.tag(), detail) };
    (text, json!({ "class": c.tag(), "special": c.is_special(), "detail": extra }))
}

fn analyze(f: &RatMap) -> Result<Outcome> {
    let mut text = vec![format!("map: {}", f), format!("degree: {}", f.degree())];
    let mut portrait = Vec::new();
    if f.degree() >= 2 {
        text.push("critical points (local degree -> value):".into());
        for p in critical_points(f).places() {
            let (e, _) = local_degree(f, &p);
            let v = image_place(f, &p);
            text.push(format!("  {} ({}) -> {}", p, e, v));
            portrait.push(json!({ "point": place_json(&p), "local_degree": e, "value": place_json(&v) }));
        }
    }
    let cv: Vec<Value> = if f.degree() >= 2 { critical_values(f).iter().map(place_json).collect() } else { vec![] };
    let (o1, o2) = (o1_of(f), o2_of(f));
    text.push(format!("O1: {}  chi = {}", o1, o1.chi()));
    text.push(format!("O2: {}  chi = {}", o2, o2.chi()));
    let mut code = EXIT_OK;
    let class = match classify(f) {
        Ok(c) => {
            let (t, j) = classification_json(&c);
            text.push(format!("class: {}", t));
            j
        }
        Err(e) => {
            text.push(format!("class: {}: {}", error_kind(&e), e));
            code = code.max(exit_code(&e));
            json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } })
        }
    };
    let json = json!({
        "command": "analyze",
        "map": map_json(f),
        "critical_portrait": portrait,
        "critical_values": cv,
        "o1": orbifold_json(&o1),
        "o2": orbifold_json(&o2),
        "classification": class,
    });
    Ok(Outcome { text, json, code })
}

fn orbifold_cmd(c: &OrbifoldCmd) -> Result<Outcome> {
    match c {
        OrbifoldCmd::Pullback { map: f, orbifold } => {
            let (f, o) = (map(f)?, parse_orbifold(orbifold)?);
            let p = pullback(&f, &o);
            Ok(Outcome::ok(
                vec![format!("{}", p)],
                json!({ "command": "orbifold pullback", "theorem": "pullback of an orbifold by a rational map",
                        "map": map_json(&f), "orbifold": orbifold_json(&o), "pullback": orbifold_json(&p) }),
            ))
        }
        OrbifoldCmd::Chi { signature } => {
            if signature.iter().any(|&v| v < 2) {
                return Err(Error::Precondition("signature entries must be at least 2".into()));
            }
            let chi = chi_of_signature(signature);
            Ok(Outcome::ok(
                vec![chi.to_string()],
                json!({ "command": "orbifold chi", "signature": signature, "chi": q_json(&chi) }),
            ))
        }
        OrbifoldCmd::Check { map: f, o1, o2 } => {
            let f = map(f)?;
            let o1 = match o1 {
                Some(s) => parse_orbifold(s)?,
                None => o1_of(&f),
            };
            let o2 = match o2 {
                Some(s) => parse_orbifold(s)?,
                None => o2_of(&f),
            };
            let hol = is_holomorphic(&f, &o1, &o2);
            let cov = is_covering(&f, &o1, &o2);
            let minhol = is_min_holomorphic(&f, &o1, &o2);
            let mut checks = vec![
                check("nu2(f(z)) | nu1(z) deg_z f (holomorphic)", hol),
                check("nu2(f(z)) = nu1(z) deg_z f (covering)", cov),
                check("O1 = f*O2 (minimal holomorphic)", minhol),
            ];
            let mut text = vec![
                format!("O1: {}  chi = {}", o1, o1.chi()),
                format!("O2: {}  chi = {}", o2, o2.chi()),
                format!("holomorphic: {}", yes_no(hol)),
                format!("covering: {}", yes_no(cov)),
                format!("minimal holomorphic: {}", yes_no(minhol)),
            ];
            if cov {
                let rh = rh_identity_check(&f, &o1, &o2)?;
                text.push(format!("chi(O1) = deg f * chi(O2): {}", yes_no(rh)));
                checks.push(check("chi(O1) = deg f * chi(O2)", rh));
            }
            if hol {
                let ineq = chi_inequality_check(&f, &o1, &o2)?;
                text.push(format!("chi(O1) <= deg f * chi(O2), equality iff covering: {}", yes_no(ineq)));
                checks.push(check("chi(O1) <= deg f * chi(O2), equality iff covering", ineq));
            }
            Ok(Outcome::ok(
                text,
                json!({ "command": "orbifold check", "theorem": "Riemann-Hurwitz formula for orbifolds",
                        "map": map_json(&f), "o1": orbifold_json(&o1), "o2": orbifold_json(&o2), "checks": checks }),
            ))
        }
    }
}

fn classify_cmd(f: &RatMap) -> Result<Outcome> {
    let c = classify(f)?;
    let (text, mut j) = classification_json(&c);
    let mut lines = vec![text];
    if matches!(c, SpecialClass::NonSpecialNonGL) {
        if let Ok(o) = maximal_orbifold(f) {
            lines.push(format!("maximal orbifold: {}", o));
            j["maximal_orbifold"] = orbifold_json(&o);
        }
    }
    j["command"] = json!("classify");
    j["theorem"] = json!("special and generalized Lattes maps");
    j["map"] = map_json(f);
    Ok(Outcome::ok(lines, j))
}

fn semiconj_cmd(c: &SemiconjCmd) -> Result<Outcome> {
    match c {
        SemiconjCmd::Verify { a, x, b } => {
            let (a, x, b) = (map(a)?, map(x)?, map(b)?);
            let ok = verify_semiconjugacy(&a, &x, &b);
            Ok(Outcome::ok(
                vec![format!("A o X = X o B: {}", yes_no(ok))],
                json!({ "command": "semiconj verify", "a": map_json(&a), "x": map_json(&x), "b": map_json(&b),
                        "checks": [check("A o X = X o B", ok)] }),
            ))
        }
        SemiconjCmd::Complete { a, x, b } => {
            let (a, x, b) = (map(a)?, map(x)?, map(b)?);
            let (y, d) = complete_semiconjugacy(&a, &x, &b)?;
            let c1 = x.compose(&y) == a.iterate(d);
            let c2 = y.compose(&x) == b.iterate(d);
            Ok(Outcome::ok(
                vec![format!("Y = {}", y), format!("d = {}", d), format!("X o Y = A^{}: {}", d, yes_no(c1)),
                     format!("Y o X = B^{}: {}", d, yes_no(c2))],
                json!({ "command": "semiconj complete",
                        "theorem": "semiconjugacies complete to X o Y = A^d, Y o X = B^d",
                        "a": map_json(&a), "x": map_json(&x), "b": map_json(&b), "y": map_json(&y), "d": d,
                        "checks": [check("X o Y = A^d", c1), check("Y o X = B^d", c2)] }),
            ))
        }
    }
}

fn decompose_cmd(c: &DecomposeCmd) -> Result<Outcome> {
    match c {
        DecomposeCmd::Factors { f, n } => {
            let f = map(f)?;
            let decs = all_decompositions(&f, *n)?;
            let text = decs.iter().map(|d| format!("({}) o ({})", d.outer, d.inner)).collect();
            let items: Vec<Value> = decs
                .iter()
                .map(|d| json!({ "outer": map_json(&d.outer), "inner": map_json(&d.inner),
                                 "checks": [check("outer o inner = F", d.compose() == f)] }))
                .collect();
            Ok(Outcome::ok(text, json!({ "command": "decompose factors", "map": map_json(&f), "n": n,
                                         "decompositions": items })))
        }
        DecomposeCmd::Normalize { a, x, r, d } => {
            let (a, x, r) = (map(a)?, map(x)?, map(r)?);
            let (n, rp) = normalize_left_factor(&a, &x, &r, *d)?;
            let c1 = x.compose(&rp) == a.iterate(n);
            let back = if *d > n { rp.compose(&a.iterate(d - n)) } else { rp.clone() };
            let c2 = back == r;
            Ok(Outcome::ok(
                vec![format!("N = {}", n), format!("R' = {}", rp), format!("X o R' = A^{}: {}", n, yes_no(c1)),
                     format!("R = R' o A^{}: {}", d - n, yes_no(c2))],
                json!({ "command": "decompose normalize", "theorem": "left factors of iterates stabilize",
                        "n": n, "r_prime": map_json(&rp),
                        "checks": [check("X o R' = A^N", c1), check("R = R' o A^(d-N)", c2)] }),
            ))
        }
        DecomposeCmd::Chain { a, w0, n } => {
            let (a, w0) = (map(a)?, map(w0)?);
            let dg = good_diagram_chain(&a, &w0, *n)?;
            let per = detect_periodicity(&dg);
            let mut text: Vec<String> = Vec::new();
            for (i, w) in dg.columns.iter().enumerate() {
                text.push(format!("W{} = {}", i, w));
                if let Some(h) = dg.rungs.get(i) {
                    text.push(format!("  h{} = {}", i + 1, h));
                }
            }
            let (commutes, generate, good) = (dg.commutes(), dg.rungs_generate(), dg.is_good());
            text.push(format!("commutes: {}", yes_no(commutes)));
            text.push(format!("Q(h_d, W_d) = Q(z): {}", yes_no(generate)));
            text.push(format!("good: {}", yes_no(good)));
            text.push(match &per {
                Some(p) => format!("periodic from {} with period {}", p.start, p.period),
                None => "no periodicity detected".into(),
            });
            Ok(Outcome::ok(
                text,
                json!({ "command": "decompose chain", "theorem": "good diagrams are eventually periodic",
                        "columns": dg.columns.iter().map(map_json).collect::<Vec<_>>(),
                        "rungs": dg.rungs.iter().map(map_json).collect::<Vec<_>>(),
                        "periodicity": per.as_ref().map(|p| json!({ "start": p.start, "period": p.period })),
                        "checks": [check("W_(d-1) o h_d = A o W_d", commutes),
                                   check("Q(h_d, W_d) = Q(z)", generate),
                                   check("deg W_d constant", good)] }),
            ))
        }
    }
}

fn orbit_of(c: &BiCurve, a1: &RatMap, a2: &RatMap, n: usize) -> Result<(Vec<BiCurve>, Option<(usize, usize)>)> {
    let mut orbit = vec![c.clone()];
    for _ in 0..n {
        let next = image_curve(orbit.last().unwrap(), a1, a2)?;
        orbit.push(next);
    }
    let hit = (0..orbit.len()).find_map(|j| (0..j).find(|&l| orbit[l] == orbit[j]).map(|l| (l, j - l)));
    Ok((orbit, hit))
}

fn curve_cmd(c: &CurveCmd) -> Result<Outcome> {
    match c {
        CurveCmd::Genus { y1, y2 } => {
            let (y1, y2) = (map(y1)?, map(y2)?);
            let g = genus_separated(&y1, &y2)?;
            Ok(Outcome::ok(
                vec![g.to_string()],
                json!({ "command": "curve genus", "theorem": "Riemann-Hurwitz for separated curves",
                        "y1": map_json(&y1), "y2": map_json(&y2), "genus": g }),
            ))
        }
        CurveCmd::Invariant { curve: s, a1, a2 } => {
            let (cv, a1, a2) = (curve(s)?, map(a1)?, map(a2)?);
            let img = image_curve(&cv, &a1, &a2)?;
            let inv = is_invariant(&cv, &a1, &a2)?;
            Ok(Outcome::ok(
                vec![format!("image: {}", img), format!("invariant: {}", yes_no(inv))],
                json!({ "command": "curve invariant", "curve": curve_json(&cv), "image": curve_json(&img),
                        "checks": [check("(A1, A2)(C) = C", inv)] }),
            ))
        }
        CurveCmd::Orbit { curve: s, a1, a2, n } => {
            let (cv, a1, a2) = (curve(s)?, map(a1)?, map(a2)?);
            let (orbit, hit) = orbit_of(&cv, &a1, &a2, *n)?;
            let mut text: Vec<String> = orbit.iter().enumerate().map(|(k, c)| format!("C{} = {}", k, c)).collect();
            text.push(match hit {
                Some((l, p)) => format!("preperiod {}, period {}", l, p),
                None => format!("no repetition within {} steps", n),
            });
            let code = if hit.is_none() { EXIT_INCONCLUSIVE } else { EXIT_OK };
            Ok(Outcome {
                text,
                json: json!({ "command": "curve orbit", "orbit": orbit.iter().map(curve_json).collect::<Vec<_>>(),
                              "preperiod": hit.map(|h| h.0), "period": hit.map(|h| h.1) }),
                code,
            })
        }
        CurveCmd::Implicitize { x1, x2 } => {
            let (x1, x2) = (map(x1)?, map(x2)?);
            let cv = implicitize(&x1, &x2)?;
            Ok(Outcome::ok(
                vec![cv.to_string()],
                json!({ "command": "curve implicitize", "x1": map_json(&x1), "x2": map_json(&x2),
                        "curve": curve_json(&cv) }),
            ))
        }
    }
}

fn report_outcome(r: &SearchReport, a1: &RatMap, a2: &RatMap, what: &str) -> Outcome {
    let mut text = Vec::new();
    let mut items = Vec::new();
    for fc in &r.curves {
        let n = fc.period;
        let (c, x1, x2, b) = (&fc.curve, &fc.certificate.x1, &fc.certificate.x2, &fc.certificate.b);
        let k1 = x1.compose(b) == a1.iterate(n).compose(x1);
        let k2 = x2.compose(b) == a2.iterate(n).compose(x2);
        text.push(format!("{}", c));
        text.push(format!("  period {}: X1 = {}, X2 = {}, B = {}", n, x1, x2, b));
        items.push(json!({
            "curve": curve_json(c), "period": n,
            "certificate": { "x1": map_json(x1), "x2": map_json(x2), "b": map_json(b) },
            "checks": [check("X1 o B = A1^n o X1", k1), check("X2 o B = A2^n o X2", k2)],
        }));
    }
    for l in &r.lines {
        text.push(format!("{}  (line)", l));
    }
    let (label, code) = match &r.completeness {
        Completeness::Complete => ("complete".to_string(), EXIT_OK),
        Completeness::CompleteUpToCap(n) => (format!("complete up to iterate cap {}", n), EXIT_OK),
        Completeness::Inconclusive(why) => (format!("inconclusive: {}", why), EXIT_INCONCLUSIVE),
    };
    text.push(format!("{} curve(s), {}", r.curves.len(), label));
    Outcome {
        text,
        json: json!({
            "command": what,
            "theorem": "invariant curves are images of semiconjugacies (X1, X2)",
            "a1": map_json(a1), "a2": map_json(a2),
            "curves": items,
            "lines": r.lines.iter().map(curve_json).collect::<Vec<_>>(),
            "completeness": label,
        }),
        code,
    }
}

fn search_cmd(c: &SearchCmd) -> Result<Outcome> {
    let (args, period) = match c {
        SearchCmd::Invariant(a) => (a, None),
        SearchCmd::Periodic { args, period } => (args, Some(*period)),
    };
    let (a1, a2) = (map(&args.a1)?, map(&args.a2)?);
    let mut cfg = SearchConfig::new(args.d1, args.d2, args.cap);
    cfg.include_lines = args.lines;
    Ok(match period {
        None => report_outcome(&find_invariant_curves(&a1, &a2, &cfg)?, &a1, &a2, "search invariant"),
        Some(p) => report_outcome(&find_periodic_curves(&a1, &a2, &cfg, p)?, &a1, &a2, "search periodic"),
    })
}

fn bounds_cmd(c: &BoundsCmd) -> Result<Outcome> {
    let need = |ok: bool, msg: &str| if ok { Ok(()) } else { Err(Error::Precondition(msg.into())) };
    let (name, value) = match c {
        BoundsCmd::Phi { m, n } => {
            need(*m >= 2 && *n >= 1, "phi needs m >= 2 and n >= 1")?;
            ("phi", json!(bound_phi(*m, *n).to_string()))
        }
        BoundsCmd::Psi { m, n } => {
            need(*m >= 2 && *n >= 1, "psi needs m >= 2 and n >= 1")?;
            ("psi", json!(bound_psi(*m, *n).to_string()))
        }
        BoundsCmd::Kappa { m } => {
            need(*m >= 1, "kappa needs m >= 1")?;
            ("kappa", json!(bound_kappa(*m).to_string()))
        }
        BoundsCmd::C { m } => {
            need(*m >= 2, "C needs m >= 2")?;
            ("C", json!(bound_c(*m).to_string()))
        }
        BoundsCmd::M2 { n, m, g } => {
            need(*n >= 1 && *m >= 1, "m2 gate needs n >= 1 and m >= 1")?;
            let gate = theorem_m2_gate(*n, *m, *g);
            let rhs = qr(*m as i64 - 84 * *n as i64 + 168, 84);
            let text = format!("g = {} > {}: {}", g, rhs, yes_no(gate));
            return Ok(Outcome::ok(
                vec![text],
                json!({ "command": "bounds m2", "n": n, "m": m, "g": g, "threshold": q_json(&rhs),
                        "checks": [check("g > (m - 84 n + 168) / 84", gate)] }),
            ));
        }
    };
    let text = value.as_str().unwrap().to_string();
    Ok(Outcome::ok(vec![text], json!({ "command": format!("bounds {}", name), "value": value })))
}
