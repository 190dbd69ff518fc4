use ncalg::{render_tensor, Algebra, Element, Letter, Tensor3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::table::{BracketTable, Claim};
use crate::triple::{quasi_defect, triple_bracket};

#[derive(Debug, Clone, PartialEq)]
pub struct TripleFailure {
    pub a: String,
    pub b: String,
    pub c: String,
    pub jacobiator: String,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertReport {
    pub claim: Claim,
    pub triples_checked: usize,
    pub failures: Vec<TripleFailure>,
}

impl CertReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn expected(db: &BracketTable, claim: Claim, a: &Element, b: &Element, c: &Element) -> Tensor3 {
    match claim {
        Claim::QuasiPoisson => quasi_defect(db, a, b, c),
        _ => Tensor3::zero(),
    }
}

fn check_triples(db: &BracketTable, triples: &[(Element, Element, Element)]) -> CertReport {
    let claim = db.claim();
    let mut report = CertReport { claim, triples_checked: 0, failures: Vec::new() };
    if claim == Claim::None {
        return report;
    }
    let alg = db.alg();
    for (a, b, c) in triples {
        let lhs = triple_bracket(db, a, b, c);
        let rhs = expected(db, claim, a, b, c);
        report.triples_checked += 1;
        if lhs != rhs {
            report.failures.push(TripleFailure {
                a: db.render(a),
                b: db.render(b),
                c: db.render(c),
                jacobiator: render_tensor(alg, &lhs),
                expected: render_tensor(alg, &rhs),
            });
        }
    }
    report
}

/// Checks the claimed identity on every ordered triple of generators. Both
/// sides are triple derivations, so generators suffice.
pub fn certify(db: &BracketTable) -> CertReport {
    let alg = db.alg();
    let gens: Vec<Element> = (0..alg.num_gens() as u32)
        .map(|g| Element::from_word(alg.letter(Letter::new(g)).unwrap()))
        .collect();
    let mut triples = Vec::with_capacity(gens.len().pow(3));
    for a in &gens {
        for b in &gens {
            for c in &gens {
                triples.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    check_triples(db, &triples)
}

fn random_word(alg: &Algebra, rng: &mut ChaCha8Rng, max_len: usize) -> Element {
    let letters: Vec<Letter> = (0..alg.num_gens() as u32)
        .flat_map(|g| [Letter::new(g), Letter::inverse(g)])
        .filter(|l| !l.inv || alg.gen(l.gen).invertible)
        .collect();
    let first = letters[rng.random_range(0..letters.len())];
    let mut ws = vec![first];
    let mut cur = alg.letter_head(first);
    let len = rng.random_range(1..=max_len);
    while ws.len() < len {
        let next: Vec<Letter> = letters
            .iter()
            .copied()
            .filter(|l| alg.letter_tail(*l) == cur && !(l.gen == ws[ws.len() - 1].gen && l.inv != ws[ws.len() - 1].inv))
            .collect();
        if next.is_empty() {
            break;
        }
        let l = next[rng.random_range(0..next.len())];
        cur = alg.letter_head(l);
        ws.push(l);
    }
    let start = alg.letter_tail(first);
    Element::from_word(alg.word(start, ws).expect("composable by construction"))
}

/// Re-checks the claim on random words of length ≤ `max_len`, inverses included.
pub fn certify_fuzz(db: &BracketTable, seed: u64, samples: usize, max_len: usize) -> CertReport {
    let alg = db.alg();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<_> = (0..samples)
        .map(|_| {
            (
                random_word(alg, &mut rng, max_len),
                random_word(alg, &mut rng, max_len),
                random_word(alg, &mut rng, max_len),
            )
        })
        .collect();
    check_triples(db, &triples)
}
