//! Alphabets, cyclic sequences, left shifts, k-tours and de Bruijn
//! sequence generation.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::limits::Limits;

const SYMBOLS: &[u8; 36] = b"0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";

/// Symbol set `0..size`, rendered `0`-`9` then `A`-`Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet(u8);

impl Alphabet {
    pub const MIN: usize = 2;
    pub const MAX: usize = 36;

    pub fn new(size: usize) -> Result<Self> {
        if !(Self::MIN..=Self::MAX).contains(&size) {
            return Err(Error::InvalidAlphabet(size));
        }
        Ok(Alphabet(size as u8))
    }

    pub fn size(self) -> usize {
        self.0 as usize
    }

    pub fn largest(self) -> u8 {
        self.0 - 1
    }

    pub fn render(self, symbol: u8) -> char {
        debug_assert!(symbol < self.0);
        SYMBOLS[symbol as usize] as char
    }

    /// Decodes one character; lowercase letters are accepted as their
    /// uppercase counterparts.
    pub fn decode(self, ch: char) -> Option<u8> {
        let value = ch.to_digit(36)? as u8;
        (value < self.0).then_some(value)
    }

    fn render_all(self, symbols: &[u8]) -> String {
        symbols.iter().map(|&s| self.render(s)).collect()
    }

    fn parse_all(self, text: &str) -> Result<Vec<u8>> {
        text.chars()
            .enumerate()
            .map(|(position, ch)| {
                self.decode(ch).ok_or(Error::Decode {
                    position,
                    ch,
                    alphabet: self.size(),
                })
            })
            .collect()
    }
}

/// A length-`k` word over an alphabet; labels one vertex of a de Bruijn
/// digraph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KString {
    alphabet: Alphabet,
    symbols: Vec<u8>,
}

impl KString {
    pub fn new(alphabet: Alphabet, symbols: Vec<u8>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidOrder { got: 0, min: 1 });
        }
        if let Some(position) = symbols.iter().position(|&s| s as usize >= alphabet.size()) {
            return Err(Error::Decode {
                position,
                ch: SYMBOLS
                    .get(symbols[position] as usize)
                    .map_or('?', |&c| c as char),
                alphabet: alphabet.size(),
            });
        }
        Ok(KString { alphabet, symbols })
    }

    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(KString {
            alphabet,
            symbols: alphabet.parse_all(text)?,
        })
    }

    /// The `index`-th string of length `order` in lexicographic order.
    pub fn from_rank(alphabet: Alphabet, order: usize, mut index: usize) -> Self {
        let a = alphabet.size();
        let mut symbols = vec![0u8; order];
        for slot in symbols.iter_mut().rev() {
            *slot = (index % a) as u8;
            index /= a;
        }
        KString { alphabet, symbols }
    }

    /// Position in the lexicographic order of all strings of this length.
    pub fn rank(&self) -> usize {
        let a = self.alphabet.size();
        self.symbols.iter().fold(0, |acc, &s| acc * a + s as usize)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn order(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    fn shifted(&self, appended: u8) -> KString {
        let mut symbols = Vec::with_capacity(self.symbols.len());
        symbols.extend_from_slice(&self.symbols[1..]);
        symbols.push(appended);
        KString {
            alphabet: self.alphabet,
            symbols,
        }
    }

    /// Left shift that re-appends the dropped symbol: `100 -> 001`.
    pub fn cycle_shift(&self) -> KString {
        self.shifted(self.symbols[0])
    }

    /// Left shifts appending any symbol other than the dropped one, in
    /// canonical symbol order.
    pub fn de_bruijn_shift_successors(&self) -> Vec<KString> {
        let first = self.symbols[0];
        (0..self.alphabet.0)
            .filter(|&c| c != first)
            .map(|c| self.shifted(c))
            .collect()
    }

    /// All `a` left shifts, one per appended symbol in canonical order.
    pub fn successors(&self) -> Vec<KString> {
        (0..self.alphabet.0).map(|c| self.shifted(c)).collect()
    }
}

impl fmt::Display for KString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.render_all(&self.symbols))
    }
}

/// A finite symbol string read cyclically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicSequence {
    alphabet: Alphabet,
    symbols: Vec<u8>,
}

impl CyclicSequence {
    pub fn new(alphabet: Alphabet, symbols: Vec<u8>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptySequence);
        }
        // Reuse the symbol range check.
        let probe = KString::new(alphabet, symbols)?;
        Ok(CyclicSequence {
            alphabet,
            symbols: probe.symbols,
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Symbol at cyclic position `i`.
    pub fn at(&self, i: usize) -> u8 {
        self.symbols[i % self.symbols.len()]
    }

    /// The `len` symbols starting at cyclic position `start`.
    pub fn window(&self, start: usize, len: usize) -> Vec<u8> {
        (start..start + len).map(|i| self.at(i)).collect()
    }

    /// Starts reading at offset `r`.
    pub fn rotate(&self, r: usize) -> CyclicSequence {
        let n = self.len();
        let mut symbols = self.symbols.clone();
        symbols.rotate_left(r % n);
        CyclicSequence {
            alphabet: self.alphabet,
            symbols,
        }
    }

    /// Lexicographically least rotation; the canonical necklace
    /// representative.
    pub fn least_rotation(&self) -> CyclicSequence {
        (0..self.len())
            .map(|r| self.rotate(r))
            .min()
            .expect("non-empty sequence")
    }

    pub fn k_tour(&self, k: usize) -> Result<KTour> {
        if k == 0 {
            return Err(Error::InvalidOrder { got: 0, min: 1 });
        }
        if self.len() < k {
            return Err(Error::ShorterThanOrder {
                len: self.len(),
                order: k,
            });
        }
        let windows = (0..self.len())
            .map(|i| KString {
                alphabet: self.alphabet,
                symbols: self.window(i, k),
            })
            .collect();
        Ok(KTour {
            windows,
            source: self.clone(),
            order: k,
        })
    }

    /// True iff the length is `a^k` and every cyclic `k`-window is distinct.
    pub fn is_de_bruijn_sequence(&self, k: usize) -> bool {
        if k == 0 {
            return false;
        }
        let expected = (self.alphabet.size() as u128).checked_pow(k as u32);
        if expected != Some(self.len() as u128) {
            return false;
        }
        let mut seen = HashSet::with_capacity(self.len());
        (0..self.len()).all(|i| seen.insert(self.window(i, k)))
    }
}

impl fmt::Display for CyclicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.render_all(&self.symbols))
    }
}

/// The cyclic windows of a sequence, in order of occurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KTour {
    windows: Vec<KString>,
    source: CyclicSequence,
    order: usize,
}

impl KTour {
    pub fn windows(&self) -> &[KString] {
        &self.windows
    }

    pub fn source(&self) -> &CyclicSequence {
        &self.source
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.windows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.windows.is_empty()
    }
}

pub fn parse_sequence(text: &str, a: usize) -> Result<CyclicSequence> {
    let alphabet = Alphabet::new(a)?;
    if text.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(CyclicSequence {
        alphabet,
        symbols: alphabet.parse_all(text)?,
    })
}

/// Parses the line-oriented sequence format: one sequence per line, `#`
/// starts a comment line, blank lines are skipped.
pub fn parse_sequence_lines(text: &str, a: usize) -> Result<Vec<CyclicSequence>> {
    text.lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with('#'))
        .map(|line| parse_sequence(line, a))
        .collect()
}

/// Which de Bruijn generator to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    Fkm,
    Greedy,
    Eulerian,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::Fkm, Generator::Greedy, Generator::Eulerian];

    pub fn generate(self, a: usize, k: usize, limits: &Limits) -> Result<CyclicSequence> {
        match self {
            Generator::Fkm => gen_fkm(a, k, limits),
            Generator::Greedy => gen_greedy(a, k, limits),
            Generator::Eulerian => crate::graph::gen_eulerian(a, k, limits),
        }
    }
}

fn check_generator_args(a: usize, k: usize, limits: &Limits) -> Result<(Alphabet, usize)> {
    let alphabet = Alphabet::new(a)?;
    if k == 0 {
        return Err(Error::InvalidOrder { got: 0, min: 1 });
    }
    let n = limits.check_power(a, k)?;
    Ok((alphabet, n))
}

/// Lexicographically least de Bruijn sequence: concatenation, in
/// lexicographic order, of the Lyndon words whose length divides `k`.
pub fn gen_fkm(a: usize, k: usize, limits: &Limits) -> Result<CyclicSequence> {
    let (alphabet, n) = check_generator_args(a, k, limits)?;

    fn extend(t: usize, p: usize, a: u8, k: usize, word: &mut [u8], out: &mut Vec<u8>) {
        if t > k {
            if k.is_multiple_of(p) {
                out.extend_from_slice(&word[1..=p]);
            }
            return;
        }
        word[t] = word[t - p];
        extend(t + 1, p, a, k, word, out);
        for c in word[t - p] + 1..a {
            word[t] = c;
            extend(t + 1, t, a, k, word, out);
        }
    }

    let mut word = vec![0u8; k + 1];
    let mut out = Vec::with_capacity(n);
    extend(1, 1, alphabet.0, k, &mut word, &mut out);
    debug_assert_eq!(out.len(), n);
    Ok(CyclicSequence {
        alphabet,
        symbols: out,
    })
}

/// Greedy construction seeded with `k` copies of the largest symbol: at
/// every step append the smallest symbol whose new `k`-window is unseen.
/// The first `a^k` symbols of the resulting linear string form a cyclic
/// de Bruijn sequence.
pub fn gen_greedy(a: usize, k: usize, limits: &Limits) -> Result<CyclicSequence> {
    let (alphabet, n) = check_generator_args(a, k, limits)?;
    let mut linear = vec![alphabet.largest(); k];
    let mut seen = vec![false; n];
    let rank = |w: &[u8]| w.iter().fold(0usize, |acc, &s| acc * a + s as usize);
    seen[rank(&linear)] = true;
    let mut window = vec![0u8; k];
    loop {
        window[..k - 1].copy_from_slice(&linear[linear.len() - (k - 1)..]);
        let next = (0..alphabet.0).find_map(|c| {
            window[k - 1] = c;
            let r = rank(&window);
            (!seen[r]).then_some((c, r))
        });
        let Some((c, r)) = next else { break };
        seen[r] = true;
        linear.push(c);
    }
    linear.truncate(n);
    Ok(CyclicSequence {
        alphabet,
        symbols: linear,
    })
}
