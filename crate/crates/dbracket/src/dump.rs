use ncalg::render_word;
use serde_json::{json, Value};

use crate::table::BracketTable;

/// `{generators, claim, entries: [{a, b, terms: [[w1, w2, "p/q"], ...]}]}`.
pub fn dump_json(db: &BracketTable) -> Value {
    let alg = db.alg();
    let base = alg.base();
    let gens: Vec<Value> = alg
        .gens()
        .iter()
        .map(|g| {
            json!({
                "name": g.name,
                "tail": base.label(g.tail),
                "head": base.label(g.head),
                "invertible": g.invertible,
            })
        })
        .collect();
    let entries: Vec<Value> = db
        .entries()
        .into_iter()
        .map(|((a, b), d)| {
            let terms: Vec<Value> = d
                .iter()
                .map(|([x, y], c)| json!([render_word(alg, x), render_word(alg, y), c.to_string()]))
                .collect();
            json!({"a": alg.gen(a).name, "b": alg.gen(b).name, "terms": terms})
        })
        .collect();
    json!({
        "vertices": base.labels(),
        "types": base.types().iter().map(|t| t.tag()).collect::<Vec<_>>(),
        "generators": gens,
        "claim": db.claim().name(),
        "entries": entries,
    })
}
