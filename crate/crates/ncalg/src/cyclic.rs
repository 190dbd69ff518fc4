use crate::algebra::Algebra;
use crate::element::Element;
use crate::word::Word;

/// Canonical representative of `x` in `A/[A,A]`.
///
/// Open paths are commutators (`w = eₛw − weₛ`) and vanish. A closed word is
/// conjugated until its ends no longer cancel, then replaced by its least
/// rotation in word order. Idempotents joined by an invertible arrow are
/// conjugate (`eₛ = a a⁻¹ ~ a⁻¹ a = eₜ`), so each is sent to the least vertex
/// of its invertible component.
pub fn cyclic_reduce(alg: &Algebra, x: &Element) -> Element {
    let comp = invertible_components(alg);
    let mut out = Element::zero();
    for (w, c) in x.iter() {
        if !w.is_closed() {
            continue;
        }
        let r = reduce_word(alg, w);
        let r = if r.is_empty() { Word::idem(comp[r.start() as usize]) } else { r };
        out.add_word(r, c.clone());
    }
    out
}

fn invertible_components(alg: &Algebra) -> Vec<u32> {
    let mut rep: Vec<u32> = (0..alg.base().len() as u32).collect();
    fn find(rep: &mut [u32], s: u32) -> u32 {
        let mut r = s;
        while rep[r as usize] != r {
            r = rep[r as usize];
        }
        rep[s as usize] = r;
        r
    }
    for g in alg.gens().iter().filter(|g| g.invertible) {
        let (a, b) = (find(&mut rep, g.tail), find(&mut rep, g.head));
        let (lo, hi) = (a.min(b), a.max(b));
        rep[hi as usize] = lo;
    }
    (0..rep.len() as u32).map(|s| find(&mut rep, s)).collect()
}

fn reduce_word(alg: &Algebra, w: &Word) -> Word {
    let mut letters = w.letters().to_vec();
    while letters.len() >= 2 {
        let (f, l) = (letters[0], letters[letters.len() - 1]);
        if f.gen == l.gen && f.inv != l.inv {
            letters.pop();
            letters.remove(0);
        } else {
            break;
        }
    }
    if letters.is_empty() {
        return Word::idem(w.start());
    }
    let n = letters.len();
    (0..n)
        .map(|k| {
            let mut rot = letters[k..].to_vec();
            rot.extend_from_slice(&letters[..k]);
            let s = alg.letter_tail(rot[0]);
            Word::from_letters(s, s, rot)
        })
        .min()
        .expect("non-empty")
}
