#![allow(dead_code)]

use dbracket::Context;
use models::{build_cotangent, build_multiplicative, QuiverSpec};
use ncalg::VertexType;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use repspace::*;

pub use VertexType::{Sp, O};

pub const TOL: f64 = 1e-9;

pub fn twisted(alpha: &[usize], types: &[VertexType]) -> TypedDims {
    TypedDims::new(alpha.to_vec(), types.to_vec(), Mode::Twisted).unwrap()
}

/// Every block entry of every generator.
pub fn all_entries(p: &RepPoint) -> Vec<Entry> {
    let t = p.tables();
    let mut out = Vec::new();
    for (g, gen) in p.alg().gens().iter().enumerate() {
        for i in t.block(gen.tail as usize) {
            for j in t.block(gen.head as usize) {
                out.push(Entry::new(g as u32, i, j));
            }
        }
    }
    out
}

pub fn sample_triples(p: &RepPoint, count: usize, seed: u64) -> Vec<[Entry; 3]> {
    let entries = all_entries(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut pick = || *entries.choose(&mut rng).unwrap();
            [pick(), pick(), pick()]
        })
        .collect()
}

pub fn loop_quiver(t: VertexType) -> QuiverSpec {
    QuiverSpec::new(&["0"]).typed(&[t]).arrow("x", "0", "0")
}

pub fn a2_quiver(t1: VertexType, t2: VertexType) -> QuiverSpec {
    QuiverSpec::new(&["1", "2"]).typed(&[t1, t2]).arrow("a", "1", "2")
}

pub fn cotangent(q: &QuiverSpec) -> Context {
    build_cotangent(q, true).unwrap()
}

pub fn one_arrow(t1: VertexType, t2: VertexType) -> Context {
    build_multiplicative(&a2_quiver(t1, t2)).unwrap()
}
