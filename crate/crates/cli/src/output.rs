//! Structured forms of library values: maps as coefficient arrays lowest
//! first, curves as (i, j, coefficient) triples, rationals as "p/q" strings.

use ratdyn::algebra::poly::fmt_q;
use ratdyn::algebra::{BiPoly, Place, RatMap, Q};
use ratdyn::curves::BiCurve;
use ratdyn::orbifold::Orbifold;
use serde_json::{json, Value};

pub fn q_json(a: &Q) -> Value {
    Value::String(fmt_q(a))
}

pub fn map_json(f: &RatMap) -> Value {
    json!({
        "text": f.to_string(),
        "degree": f.degree(),
        "num": f.num().coeffs().iter().map(q_json).collect::<Vec<_>>(),
        "den": f.den().coeffs().iter().map(q_json).collect::<Vec<_>>(),
    })
}

pub fn bipoly_json(p: &BiPoly) -> Value {
    let mut terms = p.terms();
    terms.sort_by_key(|t| (t.0, t.1));
    json!({
        "text": p.to_string(),
        "bidegree": [p.deg_x(), p.deg_y()],
        "terms": terms.iter().map(|(i, j, c)| json!([i, j, q_json(c)])).collect::<Vec<_>>(),
    })
}

pub fn curve_json(c: &BiCurve) -> Value {
    bipoly_json(c.poly())
}

pub fn place_json(p: &Place) -> Value {
    match p {
        Place::Infinity => json!({ "text": "inf", "degree": 1 }),
        Place::Finite(m) => json!({
            "text": p.to_string(),
            "degree": m.deg(),
            "minpoly": m.coeffs().iter().map(q_json).collect::<Vec<_>>(),
        }),
    }
}

pub fn orbifold_json(o: &Orbifold) -> Value {
    json!({
        "text": o.to_string(),
        "entries": o.entries().map(|(p, v)| json!({ "place": place_json(p), "nu": v })).collect::<Vec<_>>(),
        "signature": o.signature_list(),
        "chi": q_json(&o.chi()),
    })
}

/// One checked identity.
pub fn check(identity: impl Into<String>, holds: bool) -> Value {
    json!({ "identity": identity.into(), "holds": holds })
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
