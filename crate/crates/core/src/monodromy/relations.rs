//! Words in the generators and finite-depth checks of the group relations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::lift::monodromy_perms;
use super::loops::{generator_loop, LoopPath, DEFAULT_LOOP_RADIUS, DEFAULT_LOOP_SAMPLES};
use super::perm::Permutation;
use super::tree::{build_tree, PreimageTree};
use crate::error::{Error, Result};

/// Deepest level accepted by [`verify_relations`].
pub const MAX_RELATION_DEPTH: usize = 6;

/// Words whose orders are recorded in a [`RelationReport`].
pub const DESIGNATED_WORDS: [&str; 7] = ["1", "2", "3", "1 2", "1 3", "2 3", "1 2 3"];

/// A generator `η_k` or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: u8,
    pub inverse: bool,
}

/// A word in `η₁, η₂, η₃` and their inverses, read left to right as loop
/// concatenation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(
            self.0
                .iter()
                .rev()
                .map(|l| Letter {
                    generator: l.generator,
                    inverse: !l.inverse,
                })
                .collect(),
        )
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }
}

/// Parses whitespace- or comma-separated letters such as `"1 2 -1"`.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                let (inverse, digits) = match tok.strip_prefix('-') {
                    Some(rest) => (true, rest),
                    None => (false, tok),
                };
                match digits {
                    "1" | "2" | "3" => Ok(Letter {
                        generator: digits.as_bytes()[0] - b'0',
                        inverse,
                    }),
                    _ => Err(Error::InvalidArgument(format!("bad generator {tok:?}"))),
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if l.inverse {
                f.write_str("-")?;
            }
            write!(f, "{}", l.generator)?;
        }
        Ok(())
    }
}

/// Monodromy of the generator loops and their reverses on every level of a tree.
#[derive(Clone, Debug)]
pub struct MonodromyAction {
    tree: PreimageTree,
    loops: [LoopPath; 3],
    /// `forward[k][n − 1]`: action of `η_{k+1}` on level `n`.
    forward: [Vec<Permutation>; 3],
    /// Same for the reversed loops.
    backward: [Vec<Permutation>; 3],
}

impl MonodromyAction {
    /// Builds the tree to `depth` and lifts the default generator loops.
    pub fn new(depth: usize) -> Result<Self> {
        let loops = [1, 2, 3].map(|k| generator_loop(k, DEFAULT_LOOP_RADIUS, DEFAULT_LOOP_SAMPLES));
        let [a, b, c] = loops;
        Self::with_loops(build_tree(depth)?, [a?, b?, c?])
    }

    pub fn with_loops(tree: PreimageTree, loops: [LoopPath; 3]) -> Result<Self> {
        let mut forward: [Vec<Permutation>; 3] = Default::default();
        let mut backward: [Vec<Permutation>; 3] = Default::default();
        for k in 0..3 {
            forward[k] = monodromy_perms(&loops[k], &tree)?;
            backward[k] = monodromy_perms(&loops[k].reversed(), &tree)?;
        }
        Ok(Self {
            tree,
            loops,
            forward,
            backward,
        })
    }

    pub fn tree(&self) -> &PreimageTree {
        &self.tree
    }

    pub fn depth(&self) -> usize {
        self.tree.depth()
    }

    pub fn generator_loops(&self) -> &[LoopPath; 3] {
        &self.loops
    }

    /// Action of one letter on `level` (`1 ≤ level ≤ depth`).
    pub fn letter_perm(&self, letter: Letter, level: usize) -> &Permutation {
        let k = usize::from(letter.generator - 1);
        if letter.inverse {
            &self.backward[k][level - 1]
        } else {
            &self.forward[k][level - 1]
        }
    }

    /// Action of `word` on `level`, composing the letters' permutations.
    pub fn word_perm(&self, word: &Word, level: usize) -> Permutation {
        word.letters().iter().fold(
            Permutation::identity(self.tree.level(level).len()),
            |acc, &l| acc.then(self.letter_perm(l, level)),
        )
    }

    /// The loop obtained by concatenating the letters of `word`.
    pub fn word_loop(&self, word: &Word) -> Result<LoopPath> {
        let mut letters = word.letters().iter();
        let loop_of = |l: &Letter| {
            let path = &self.loops[usize::from(l.generator - 1)];
            if l.inverse {
                path.reversed()
            } else {
                path.clone()
            }
        };
        let Some(first) = letters.next() else {
            return LoopPath::constant(PreimageTree::basepoint(), 2);
        };
        letters.try_fold(loop_of(first), |acc, l| acc.concat(&loop_of(l)))
    }

    /// Action of `word` on `level`, found by lifting the concatenated loop
    /// directly rather than composing generator permutations.
    pub fn word_perm_by_lifting(&self, word: &Word, level: usize) -> Result<Permutation> {
        let perms = monodromy_perms(&self.word_loop(word)?, &self.tree)?;
        Ok(perms[level - 1].clone())
    }
}

/// Action of `word` on the leaves of `tree`.
pub fn word_perm(word: &Word, tree: &PreimageTree) -> Result<Permutation> {
    let n = tree.leaves().len();
    let mut acc = Permutation::identity(n);
    for &l in word.letters() {
        let path = generator_loop(l.generator, DEFAULT_LOOP_RADIUS, DEFAULT_LOOP_SAMPLES)?;
        let path = if l.inverse { path.reversed() } else { path };
        let perms = monodromy_perms(&path, tree)?;
        acc = acc.then(perms.last().expect("tree depth at least 1"));
    }
    Ok(acc)
}

/// Relation checks on one level of the tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelReport {
    pub level: usize,
    pub involutions_ok: bool,
    pub inverses_ok: bool,
    pub coxeter_ok: bool,
    pub braid_ok: bool,
    pub generators_distinct: bool,
    /// Order of the image of `η₁η₂η₃`.
    pub coxeter_element_order: u128,
}

impl LevelReport {
    pub fn relations_ok(&self) -> bool {
        self.involutions_ok
            && self.inverses_ok
            && self.coxeter_ok
            && self.braid_ok
            && self.generators_distinct
    }
}

/// Orders of one word's image on levels `1..=depth`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordOrders {
    pub word: String,
    pub orders: Vec<u128>,
}

/// Outcome of [`verify_relations`]. The top-level flags hold on every level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub depth: usize,
    pub involutions_ok: bool,
    pub inverses_ok: bool,
    pub coxeter_ok: bool,
    pub braid_ok: bool,
    pub generators_distinct: bool,
    /// Order of the image of `η₁η₂η₃` on each level.
    pub coxeter_element_orders: Vec<u128>,
    pub coxeter_order_increasing: bool,
    pub word_orders: Vec<WordOrders>,
    pub levels: Vec<LevelReport>,
}

impl RelationReport {
    /// The group relations hold on every level (order growth not included).
    pub fn relations_ok(&self) -> bool {
        self.levels.iter().all(LevelReport::relations_ok)
    }
}

fn letter(generator: u8) -> Letter {
    Letter {
        generator,
        inverse: false,
    }
}

fn level_report(action: &MonodromyAction, level: usize) -> LevelReport {
    let g = |k: u8| action.letter_perm(letter(k), level);
    let gi = |k: u8| {
        action.letter_perm(
            Letter {
                generator: k,
                inverse: true,
            },
            level,
        )
    };
    let pairs = [(1u8, 2u8), (1, 3), (2, 3)];
    let word = |ks: &[u8]| Word(ks.iter().map(|&k| letter(k)).collect());

    LevelReport {
        level,
        involutions_ok: (1..=3).all(|k| g(k).then(g(k)).is_identity()),
        inverses_ok: (1..=3).all(|k| *gi(k) == g(k).inverse() && gi(k) == g(k)),
        coxeter_ok: pairs
            .iter()
            .all(|&(j, k)| g(j).then(g(k)).pow(3).is_identity()),
        braid_ok: pairs.iter().all(|&(j, k)| {
            action.word_perm(&word(&[j, k, j]), level) == action.word_perm(&word(&[k, j, k]), level)
        }),
        generators_distinct: pairs.iter().all(|&(j, k)| g(j) != g(k)),
        coxeter_element_order: action.word_perm(&word(&[1, 2, 3]), level).order(),
    }
}

/// Checks the relations of the affine Coxeter group on levels `1..=depth`.
pub fn verify_relations(depth: usize) -> Result<RelationReport> {
    if !(1..=MAX_RELATION_DEPTH).contains(&depth) {
        return Err(Error::InvalidArgument(format!(
            "relation depth must lie in 1..={MAX_RELATION_DEPTH}, got {depth}"
        )));
    }
    Ok(relation_report(&MonodromyAction::new(depth)?))
}

/// Builds a [`RelationReport`] from an already computed action.
pub fn relation_report(action: &MonodromyAction) -> RelationReport {
    let depth = action.depth();
    let levels: Vec<LevelReport> = (1..=depth).map(|n| level_report(action, n)).collect();
    let coxeter_element_orders: Vec<u128> =
        levels.iter().map(|l| l.coxeter_element_order).collect();
    let word_orders = DESIGNATED_WORDS
        .iter()
        .map(|w| {
            let word: Word = w.parse().expect("designated words parse");
            WordOrders {
                word: word.to_string(),
                orders: (1..=depth)
                    .map(|n| action.word_perm(&word, n).order())
                    .collect(),
            }
        })
        .collect();
    RelationReport {
        depth,
        involutions_ok: levels.iter().all(|l| l.involutions_ok),
        inverses_ok: levels.iter().all(|l| l.inverses_ok),
        coxeter_ok: levels.iter().all(|l| l.coxeter_ok),
        braid_ok: levels.iter().all(|l| l.braid_ok),
        generators_distinct: levels.iter().all(|l| l.generators_distinct),
        coxeter_order_increasing: coxeter_element_orders.windows(2).all(|w| w[0] < w[1]),
        coxeter_element_orders,
        word_orders,
        levels,
    }
}
