#![allow(dead_code)]

use hnn_core::word::{Sym, Word};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word(rng: &mut impl Rng, len: usize, syms: &[Sym], max_exp: i64) -> Word {
    Word::from_letters((0..len).map(|_| {
        let sym = *syms.choose(rng).unwrap();
        let mut e = rng.gen_range(1..=max_exp);
        if rng.gen_bool(0.5) {
            e = -e;
        }
        (sym, e)
    }))
}

pub fn cdt_word(rng: &mut impl Rng, len: usize) -> Word {
    random_word(rng, len, &[Sym::C, Sym::D, Sym::T], 3)
}

pub fn cd_word(rng: &mut impl Rng, len: usize) -> Word {
    random_word(rng, len, &[Sym::C, Sym::D], 3)
}

/// Applies `c -> c^n`, `d -> d^n` letterwise to a t-free word in `c`, `d`.
pub fn rho_word(x: &Word, n: i64) -> Word {
    Word::from_letters(x.letters().iter().map(|l| {
        assert!(matches!(l.sym, Sym::C | Sym::D));
        (l.sym, l.exp * n)
    }))
}

/// `t x t^-1 rho_n(x)^-1`, trivial in `H_n`.
pub fn hnn_relator(x: &Word, n: i64) -> Word {
    Word::t()
        .mul(x)
        .mul(&Word::t().inverse())
        .mul(&rho_word(x, n).inverse())
}

/// Relators of `G` written with `b` letters.
pub fn g_relators(max: i64) -> Vec<Word> {
    let sq = |i: i64| Word::b(i).pow(2);
    let mut out = Vec::new();
    for i in -max..=max {
        out.push(Word::b(i).pow(4));
        if i != 0 {
            out.push(Word::commutator(&Word::b(0), &Word::b(i)).mul(&sq(i).inverse()));
        }
        if i > 0 {
            out.push(sq(i).mul(&sq(-i).inverse()));
        }
        for j in i + 1..=max {
            if i != 0 && j != 0 {
                let rhs = sq(i).mul(&sq(j - i)).mul(&sq(j));
                out.push(Word::commutator(&Word::b(i), &Word::b(j)).mul(&rhs.inverse()));
            }
        }
    }
    out
}

fn conjugate(g: &Word, r: &Word) -> Word {
    g.mul(r).mul(&g.inverse())
}

/// A product of conjugates of relators of `G`; trivial in `G`.
pub fn g_identity_word(rng: &mut impl Rng, relators: &[Word]) -> Word {
    let k = rng.gen_range(1..=3);
    (0..k).fold(Word::empty(), |acc, _| {
        let r = relators.choose(rng).unwrap();
        let r = if rng.gen_bool(0.5) {
            r.expand_b()
        } else {
            r.clone()
        };
        let len = rng.gen_range(0..4);
        let g = cd_word(rng, len);
        acc.mul(&conjugate(&g, &r))
    })
}

/// A product of conjugates of `H_n` relators; trivial in `H_n`.
pub fn h_identity_word(rng: &mut impl Rng, n: i64) -> Word {
    let k = rng.gen_range(1..=3);
    (0..k).fold(Word::empty(), |acc, _| {
        let len = rng.gen_range(1..3);
        let x = cd_word(rng, len);
        let len = rng.gen_range(0..4);
        let g = cdt_word(rng, len);
        acc.mul(&conjugate(&g, &hnn_relator(&x, n)))
    })
}

/// A product of conjugates of `b_0^{+-1}`; lies in the kernel of the
/// projection to `BS(1, n)`.
pub fn kernel_word(rng: &mut impl Rng) -> Word {
    let k = rng.gen_range(1..=3);
    (0..k).fold(Word::empty(), |acc, _| {
        let e = if rng.gen_bool(0.5) { 1 } else { -1 };
        let len = rng.gen_range(0..4);
        let g = cdt_word(rng, len);
        acc.mul(&conjugate(&g, &Word::b(0).pow(e)))
    })
}

/// Inserts `t d t^-1 d^-n` (or its inverse) at random letter boundaries.
pub fn pad_with_relator(rng: &mut impl Rng, w: &Word, n: i64, count: usize) -> Word {
    let relator = hnn_relator(&Word::d(), n);
    let mut letters: Vec<Word> = w
        .letters()
        .iter()
        .map(|l| Word::letter(l.sym, l.exp))
        .collect();
    for _ in 0..count {
        let r = if rng.gen_bool(0.5) {
            relator.clone()
        } else {
            relator.inverse()
        };
        let at = rng.gen_range(0..=letters.len());
        letters.insert(at, r);
    }
    letters.iter().fold(Word::empty(), |acc, x| acc.mul(x))
}
