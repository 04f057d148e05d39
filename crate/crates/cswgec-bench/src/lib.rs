//! Fixture builders shared by the benchmarks. Everything is seeded so runs
//! compare like with like.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cswgec_core::decode::{read_matrices, TagProbMatrix, TagVocab};

const TEMPLATES: [&str; 6] = [
    "She walks to the old school with her friend .",
    "I walk to the えき with my friend every day .",
    "We watched アニメ at my home last night .",
    "They play in a big park near my house .",
    "He buys fresh bread at the corner shop every morning .",
    "You study にほんご with your friend at school .",
];

/// A mixed English and code-switched corpus of `n` sentences.
pub fn mixed_sentences(n: usize) -> Vec<String> {
    (0..n).map(|i| TEMPLATES[i % TEMPLATES.len()].to_string()).collect()
}

/// Seeded token sequence pairs in the size range the aligner usually sees.
pub fn token_pairs(n: usize, seed: u64) -> Vec<(Vec<String>, Vec<String>)> {
    let vocab: Vec<&str> = "the a cat cats dog dogs run running ran walk walks ate eats ねこ いぬ to of in . ,"
        .split(' ')
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| -> Vec<String> {
        let len = rng.gen_range(5..=20);
        (0..len).map(|_| vocab.choose(rng).expect("non-empty vocab").to_string()).collect()
    };
    (0..n)
        .map(|_| {
            let source = draw(&mut rng);
            // Target is a mutation of the source, not an unrelated sequence.
            let mut target = source.clone();
            for _ in 0..rng.gen_range(0..4) {
                match rng.gen_range(0..3) {
                    0 if !target.is_empty() => {
                        let i = rng.gen_range(0..target.len());
                        target.remove(i);
                    }
                    1 => {
                        let i = rng.gen_range(0..=target.len());
                        target.insert(i, vocab.choose(&mut rng).expect("non-empty").to_string());
                    }
                    _ if !target.is_empty() => {
                        let i = rng.gen_range(0..target.len());
                        target[i] = vocab.choose(&mut rng).expect("non-empty").to_string();
                    }
                    _ => {}
                }
            }
            (source, target)
        })
        .collect()
}

/// The decoder fixture shipped with the repo.
pub fn grid_fixture() -> (Vec<TagProbMatrix>, TagVocab) {
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../..");
    let matrices = std::fs::read_to_string(format!("{root}/fixtures/grid/matrices.jsonl"))
        .expect("fixture matrices exist");
    let vocab =
        std::fs::read_to_string(format!("{root}/fixtures/grid/vocab.txt")).expect("fixture vocab");
    (
        read_matrices(&matrices).expect("fixture matrices parse"),
        TagVocab::parse(&vocab).expect("fixture vocab parses"),
    )
}
