//! Lexicographic generation of fixed-length words under a prefix predicate.

/// Iterates, in lexicographic order, over every word of length `len` drawn
/// from `alphabet` (listed smallest first) whose prefixes all satisfy
/// `extendable`.
///
/// `extendable(prefix)` must return true exactly when `prefix` can be
/// completed to a full accepted word; the iterator relies on this to never
/// dead-end while filling a suffix.
pub(crate) struct LexWords<F> {
    alphabet: &'static [u8],
    len: usize,
    extendable: F,
    word: Vec<u8>,
    state: State,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Fresh,
    Running,
    Done,
}

impl<F: FnMut(&[u8]) -> bool> LexWords<F> {
    pub(crate) fn new(alphabet: &'static [u8], len: usize, extendable: F) -> Self {
        LexWords { alphabet, len, extendable, word: Vec::with_capacity(len), state: State::Fresh }
    }

    fn rank(&self, c: u8) -> usize {
        self.alphabet.iter().position(|&a| a == c).unwrap()
    }

    /// Extends `word` with the smallest feasible letters up to full length.
    fn fill(&mut self) -> bool {
        while self.word.len() < self.len {
            let mut placed = false;
            for &c in self.alphabet {
                self.word.push(c);
                if (self.extendable)(&self.word) {
                    placed = true;
                    break;
                }
                self.word.pop();
            }
            if !placed {
                return false;
            }
        }
        true
    }

    /// Replaces the word by its lexicographic successor among feasible words.
    fn advance(&mut self) -> bool {
        while let Some(last) = self.word.pop() {
            for r in self.rank(last) + 1..self.alphabet.len() {
                self.word.push(self.alphabet[r]);
                if (self.extendable)(&self.word) && self.fill() {
                    return true;
                }
                self.word.pop();
            }
        }
        false
    }
}

impl<F: FnMut(&[u8]) -> bool> Iterator for LexWords<F> {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        let found = match self.state {
            State::Done => return None,
            State::Fresh => {
                self.state = State::Running;
                (self.extendable)(&[]) && self.fill()
            }
            State::Running => self.advance(),
        };
        if found {
            Some(self.word.clone())
        } else {
            self.state = State::Done;
            None
        }
    }
}
