use crate::error::{Error, Result};
use crate::word_core::{Alphabet, LetterSet, Word};

/// One arch of `w_u` (or its rest), split into the block that basis
/// permutations act on and the letters that stay fixed behind it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// All letters of the arch but its final one, in alphabet order
    /// (for the rest: all letters but `u[k]`).
    pub permutable: Word,
    /// Optional reversed-arch completion letter followed by the arch's final letter.
    /// Empty for the rest.
    pub fixed: Word,
}

/// The block layout `p_1 s_1 ⋯ p_{k-1} s_{k-1} r` of the minimal witness for `u`.
///
/// Arch `i` is `w_{Σ∖{u[i]}}` followed by `u[i+1]` when `u[i+1] ≠ u[i]`, and then
/// `u[i]`. The inserted letter closes the reversed arch that starts at the next
/// block; the rest is `w_{Σ∖{u[k]}}`.
pub fn witness_blocks(alphabet: &Alphabet, u: &Word) -> Result<Vec<Block>> {
    if u.is_empty() {
        return Err(Error::Validation("the absent factor must be nonempty".into()));
    }
    alphabet.validate(u)?;
    let full = alphabet.full();
    let without = |letter: u8| {
        let mut s: LetterSet = full;
        s.remove(letter);
        alphabet.canonical_word(s)
    };
    let r = u.as_ranks();
    let k = r.len();
    let mut blocks = Vec::with_capacity(k);
    for i in 0..k - 1 {
        let mut fixed = Word::empty();
        if r[i + 1] != r[i] {
            fixed.push(r[i + 1]);
        }
        fixed.push(r[i]);
        blocks.push(Block { permutable: without(r[i]), fixed });
    }
    blocks.push(Block { permutable: without(r[k - 1]), fixed: Word::empty() });
    Ok(blocks)
}

/// The minimal-length word whose only absent length-`|u|` factor is `u`,
/// w.r.t. the alphabet's order. `O(k)` blocks of at most `σ + 1` letters.
pub fn construct_w_u(alphabet: &Alphabet, u: &Word) -> Result<Word> {
    let blocks = witness_blocks(alphabet, u)?;
    let mut w = Word::empty();
    for b in &blocks {
        w.extend_from(&b.permutable);
        w.extend_from(&b.fixed);
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Budget;
    use crate::word_core::absent_set;

    fn build(spec: &str, u: &str) -> String {
        let a = Alphabet::new(spec).unwrap();
        a.render(&construct_w_u(&a, &a.parse(u).unwrap()).unwrap())
    }

    #[test]
    fn golden_constructions() {
        assert_eq!(build("abc", "abccab"), "bcbaaccbabcabacbcbaac");
        assert_eq!(build("abc", "abbc"), "bcbaacbaccbab");
    }

    #[test]
    fn unary_factor_over_binary_alphabet() {
        let a = Alphabet::new("ab").unwrap();
        let u = a.parse("aaa").unwrap();
        let w = construct_w_u(&a, &u).unwrap();
        assert_eq!(a.render(&w), "babab");
        assert_eq!(w.len(), 3 * 2 - 1);
        assert_eq!(absent_set(&a, &w, 3, Budget::DEFAULT).unwrap(), vec![u]);
    }

    #[test]
    fn order_changes_the_witness() {
        assert_eq!(build("cba", "abbc"), "cbbacabcacbba");
    }

    #[test]
    fn unary_alphabet() {
        assert_eq!(build("a", "aaaa"), "aaa");
        assert_eq!(build("a", "a"), "");
    }

    #[test]
    fn rejects_bad_input() {
        let a = Alphabet::new("ab").unwrap();
        assert!(matches!(construct_w_u(&a, &Word::empty()), Err(Error::Validation(_))));
        let foreign = Word::from_ranks(vec![0, 2]);
        assert!(matches!(construct_w_u(&a, &foreign), Err(Error::Validation(_))));
    }
}
