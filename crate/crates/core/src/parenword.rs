//! Parenthesized words: rooted forests whose nodes carry letters.
//!
//! An irreducible word `(X x)` is a tree with root letter `x` and the
//! factors of `X` as children. A general word is a commutative product
//! (multiset) of irreducible words; the empty product is the unit `()`.
//!
//! Siblings are kept sorted by `(length, canonical text)`, so structural
//! equality coincides with multiset equality and rendering is deterministic.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

/// A primitive letter together with its loop-order weight.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    name: String,
    weight: u32,
}

impl Letter {
    pub fn new(name: impl Into<String>, weight: u32) -> Result<Self, AlphabetError> {
        let name = name.into();
        if !is_identifier(&name) {
            return Err(AlphabetError::InvalidName(name));
        }
        if weight == 0 {
            return Err(AlphabetError::ZeroWeight(name));
        }
        Ok(Letter { name, weight })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("letter name `{0}` is not an identifier")]
    InvalidName(String),
    #[error("letter `{0}` must have a weight of at least 1")]
    ZeroWeight(String),
    #[error("letter `{0}` declared twice")]
    Duplicate(String),
    #[error("letter `{0}` has no numeric suffix; declare its weight as `{0}:<weight>`")]
    MissingWeight(String),
    #[error("malformed alphabet entry `{0}`")]
    Malformed(String),
    #[error("alphabet is empty")]
    Empty,
}

/// The set of letters a word may be built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    letters: BTreeMap<String, Letter>,
}

impl Alphabet {
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Result<Self, AlphabetError> {
        let mut map = BTreeMap::new();
        for letter in letters {
            if map.contains_key(&letter.name) {
                return Err(AlphabetError::Duplicate(letter.name));
            }
            map.insert(letter.name.clone(), letter);
        }
        if map.is_empty() {
            return Err(AlphabetError::Empty);
        }
        Ok(Alphabet { letters: map })
    }

    /// `x1, .., xn` with weight `i` for `xi`.
    pub fn numbered(n: u32) -> Self {
        let letters = (1..=n.max(1)).map(|i| Letter {
            name: format!("x{i}"),
            weight: i,
        });
        Alphabet::new(letters).expect("numbered alphabet is valid")
    }

    /// Parses a declaration such as `x1,x2:3,y:1`. Entries without an
    /// explicit weight take the numeric suffix of the name.
    pub fn from_spec(spec: &str) -> Result<Self, AlphabetError> {
        let mut letters = Vec::new();
        for entry in spec.split(',').map(str::trim).filter(|e| !e.is_empty()) {
            let letter = match entry.split_once(':') {
                Some((name, weight)) => {
                    let weight = weight
                        .trim()
                        .parse::<u32>()
                        .map_err(|_| AlphabetError::Malformed(entry.to_string()))?;
                    Letter::new(name.trim(), weight)?
                }
                None => {
                    let weight = suffix_weight(entry)
                        .ok_or_else(|| AlphabetError::MissingWeight(entry.to_string()))?;
                    Letter::new(entry, weight)?
                }
            };
            letters.push(letter);
        }
        Alphabet::new(letters)
    }

    pub fn get(&self, name: &str) -> Option<&Letter> {
        self.letters.get(name)
    }

    pub fn letters(&self) -> impl Iterator<Item = &Letter> {
        self.letters.values()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Canonical `name:weight` list, the inverse of [`Alphabet::from_spec`].
    pub fn to_spec(&self) -> String {
        self.letters
            .values()
            .map(|l| format!("{}:{}", l.name, l.weight))
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn suffix_weight(name: &str) -> Option<u32> {
    let digits = name.len() - name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    if digits == 0 || digits == name.len() {
        return None;
    }
    name[name.len() - digits..].parse().ok().filter(|&w| w > 0)
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A single tree `(X x)`: one outermost bracket pair closed by one letter.
#[derive(Clone, Debug)]
pub struct IrreducibleWord {
    root: Letter,
    children: Vec<IrreducibleWord>,
    len: usize,
    text: String,
}

impl IrreducibleWord {
    pub fn new(root: Letter, mut children: Vec<IrreducibleWord>) -> Self {
        children.sort();
        let len = 1 + children.iter().map(|c| c.len).sum::<usize>();
        let mut text = String::with_capacity(2 + root.name.len() + 4 * len);
        text.push('(');
        for child in &children {
            text.push_str(&child.text);
        }
        text.push_str(&root.name);
        text.push(')');
        IrreducibleWord {
            root,
            children,
            len,
            text,
        }
    }

    pub fn leaf(root: Letter) -> Self {
        IrreducibleWord::new(root, Vec::new())
    }

    pub fn root(&self) -> &Letter {
        &self.root
    }

    pub fn children(&self) -> &[IrreducibleWord] {
        &self.children
    }

    /// The word `X` inside `(X x)`.
    pub fn inner(&self) -> Word {
        Word::from_sorted(self.children.clone())
    }

    pub fn length(&self) -> usize {
        self.len
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    /// Depth of the tree; a bare letter has depth 1.
    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    /// Letters of all nodes, in canonical pre-order.
    pub fn letters(&self) -> Vec<&Letter> {
        let mut out = Vec::with_capacity(self.len);
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters<'a>(&'a self, out: &mut Vec<&'a Letter>) {
        for child in &self.children {
            child.collect_letters(out);
        }
        out.push(&self.root);
    }

    /// All `(subword, quotient)` pairs; see [`subwords`].
    pub fn subwords(&self) -> Vec<Subword> {
        let mut counts: HashMap<(Word, Word), u64> = HashMap::new();
        for (removed, remaining) in self.selections() {
            let sub = Word::new(removed);
            let quotient = remaining.map(Word::from).unwrap_or_else(Word::unit);
            *counts.entry((sub, quotient)).or_insert(0) += 1;
        }
        let mut out: Vec<Subword> = counts
            .into_iter()
            .map(|((sub, quotient), multiplicity)| Subword {
                sub,
                quotient,
                multiplicity,
            })
            .collect();
        out.sort_by(|a, b| {
            (a.sub.length(), &a.sub, &a.quotient).cmp(&(b.sub.length(), &b.sub, &b.quotient))
        });
        out
    }

    /// Every antichain of nodes, as (removed subtrees, what is left).
    /// `None` means the root itself was removed.
    fn selections(&self) -> Vec<(Vec<IrreducibleWord>, Option<IrreducibleWord>)> {
        let mut partial: Vec<(Vec<IrreducibleWord>, Vec<IrreducibleWord>)> =
            vec![(Vec::new(), Vec::new())];
        for child in &self.children {
            let options = child.selections();
            let mut next = Vec::with_capacity(partial.len() * options.len());
            for (removed, kept) in &partial {
                for (child_removed, child_kept) in &options {
                    let mut removed = removed.clone();
                    removed.extend(child_removed.iter().cloned());
                    let mut kept = kept.clone();
                    kept.extend(child_kept.iter().cloned());
                    next.push((removed, kept));
                }
            }
            partial = next;
        }
        let mut out: Vec<_> = partial
            .into_iter()
            .map(|(removed, kept)| (removed, Some(IrreducibleWord::new(self.root.clone(), kept))))
            .collect();
        out.push((vec![self.clone()], None));
        out
    }
}

impl PartialEq for IrreducibleWord {
    fn eq(&self, other: &Self) -> bool {
        self.text == other.text
    }
}

impl Eq for IrreducibleWord {}

impl Hash for IrreducibleWord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.text.hash(state);
    }
}

impl Ord for IrreducibleWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.text.cmp(&other.text))
    }
}

impl PartialOrd for IrreducibleWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IrreducibleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// A commutative product of irreducible words; no factors is the unit `()`.
#[derive(Clone, Debug)]
pub struct Word {
    factors: Vec<IrreducibleWord>,
    len: usize,
    text: String,
}

impl Word {
    pub fn unit() -> Self {
        Word {
            factors: Vec::new(),
            len: 0,
            text: "()".to_string(),
        }
    }

    pub fn new(mut factors: Vec<IrreducibleWord>) -> Self {
        factors.sort();
        Word::from_sorted(factors)
    }

    fn from_sorted(factors: Vec<IrreducibleWord>) -> Self {
        if factors.is_empty() {
            return Word::unit();
        }
        let len = factors.iter().map(|f| f.len).sum();
        let text = factors.iter().map(|f| f.text.as_str()).collect();
        Word { factors, len, text }
    }

    pub fn factors(&self) -> &[IrreducibleWord] {
        &self.factors
    }

    pub fn length(&self) -> usize {
        self.len
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn as_irreducible(&self) -> Option<&IrreducibleWord> {
        match self.factors.as_slice() {
            [single] => Some(single),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    /// Multiset union of the factors.
    pub fn concat(&self, other: &Word) -> Word {
        if self.is_unit() {
            return other.clone();
        }
        if other.is_unit() {
            return self.clone();
        }
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        factors.extend(self.factors.iter().cloned());
        factors.extend(other.factors.iter().cloned());
        Word::new(factors)
    }
}

impl From<IrreducibleWord> for Word {
    fn from(w: IrreducibleWord) -> Self {
        Word {
            len: w.len,
            text: w.text.clone(),
            factors: vec![w],
        }
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.text == other.text
    }
}

impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.text.hash(state);
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.text.cmp(&other.text))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// Canonical text of a word.
pub fn render(w: &Word) -> String {
    w.text.clone()
}

pub fn length(w: &Word) -> usize {
    w.len
}

pub fn is_irreducible(w: &Word) -> bool {
    w.is_irreducible()
}

/// `B_x`: wrap `w` in a new bracket closed by `letter`.
pub fn graft(w: &Word, letter: &Letter) -> IrreducibleWord {
    IrreducibleWord::new(letter.clone(), w.factors.clone())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{0}` is not an irreducible word")]
pub struct NotIrreducible(pub String);

/// One Sweedler term `sub ⊗ quotient` of an irreducible word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subword {
    pub sub: Word,
    pub quotient: Word,
    /// Number of distinct node selections producing this pair.
    pub multiplicity: u64,
}

/// Enumerates products `U` of pairwise disjoint irreducible subwords of `w`,
/// with `w/U` obtained by deleting the selected subtrees. Includes `(e, w)`
/// and `(w, e)`. Sorted by `(length(U), U, Q)`.
pub fn subwords(w: &Word) -> Result<Vec<Subword>, NotIrreducible> {
    w.as_irreducible()
        .map(IrreducibleWord::subwords)
        .ok_or_else(|| NotIrreducible(w.to_string()))
}

/// All distinct canonical words of length `<= max_len`, sorted.
pub fn enumerate_words(alphabet: &Alphabet, max_len: usize) -> Vec<Word> {
    // trees[n] holds every irreducible word of length n, sorted.
    let mut trees: Vec<Vec<IrreducibleWord>> = vec![Vec::new()];
    let mut forests: Vec<Vec<Vec<IrreducibleWord>>> = vec![vec![Vec::new()]];
    for n in 1..=max_len {
        let mut size_n: Vec<IrreducibleWord> = alphabet
            .letters()
            .flat_map(|letter| {
                forests[n - 1]
                    .iter()
                    .map(move |f| IrreducibleWord::new(letter.clone(), f.clone()))
            })
            .collect();
        size_n.sort();
        trees.push(size_n);
        let pool: Vec<&IrreducibleWord> = trees.iter().flatten().collect();
        let mut out = Vec::new();
        multisets(&pool, n, 0, &mut Vec::new(), &mut out);
        forests.push(out);
    }
    let mut words: Vec<Word> = forests.into_iter().flatten().map(Word::new).collect();
    words.sort();
    words
}

/// Multisets drawn from `pool[start..]` (non-decreasing index) with total length `remaining`.
fn multisets(
    pool: &[&IrreducibleWord],
    remaining: usize,
    start: usize,
    current: &mut Vec<IrreducibleWord>,
    out: &mut Vec<Vec<IrreducibleWord>>,
) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for (i, tree) in pool.iter().enumerate().skip(start) {
        if tree.len > remaining {
            // pool is sorted by length
            break;
        }
        current.push((*tree).clone());
        multisets(pool, remaining - tree.len, i, current, out);
        current.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unbalanced brackets at byte {position}")]
    UnbalancedBrackets { position: usize },
    #[error("bracket pair closing at byte {position} must end with exactly one letter")]
    MissingLetter { position: usize },
    #[error("unknown letter `{name}` at byte {position}")]
    UnknownLetter { name: String, position: usize },
    #[error("unexpected input after the last factor at byte {position}")]
    TrailingGarbage { position: usize },
    #[error("unexpected character {ch:?} at byte {position}")]
    UnexpectedCharacter { ch: char, position: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::UnbalancedBrackets { position }
            | ParseError::MissingLetter { position }
            | ParseError::UnknownLetter { position, .. }
            | ParseError::TrailingGarbage { position }
            | ParseError::UnexpectedCharacter { position, .. } => *position,
        }
    }
}

/// Parses `word := factor*; factor := '(' factor* letter ')'`, ignoring
/// whitespace. `()` is accepted only as the entire input.
pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Word, ParseError> {
    let mut parser = Parser {
        src: text,
        pos: 0,
        alphabet,
    };
    if parser.is_whole_unit() {
        return Ok(Word::unit());
    }
    let mut factors = Vec::new();
    loop {
        parser.skip_ws();
        match parser.peek() {
            None => break,
            Some('(') => factors.push(parser.factor()?),
            Some(')') => {
                return Err(ParseError::UnbalancedBrackets {
                    position: parser.pos,
                })
            }
            Some(_) => {
                return Err(ParseError::TrailingGarbage {
                    position: parser.pos,
                })
            }
        }
    }
    Ok(Word::new(factors))
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn is_whole_unit(&self) -> bool {
        let compact: String = self.src.chars().filter(|c| !c.is_whitespace()).collect();
        compact == "()"
    }

    fn factor(&mut self) -> Result<IrreducibleWord, ParseError> {
        let open = self.pos;
        self.bump();
        let mut children = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None => return Err(ParseError::UnbalancedBrackets { position: open }),
                Some('(') => children.push(self.factor()?),
                Some(')') => return Err(ParseError::MissingLetter { position: self.pos }),
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    let start = self.pos;
                    while self
                        .peek()
                        .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
                    {
                        self.bump();
                    }
                    let name = &self.src[start..self.pos];
                    let letter = self
                        .alphabet
                        .get(name)
                        .ok_or_else(|| ParseError::UnknownLetter {
                            name: name.to_string(),
                            position: start,
                        })?
                        .clone();
                    self.skip_ws();
                    return match self.peek() {
                        Some(')') => {
                            self.bump();
                            Ok(IrreducibleWord::new(letter, children))
                        }
                        None => Err(ParseError::UnbalancedBrackets { position: open }),
                        Some(_) => Err(ParseError::MissingLetter { position: self.pos }),
                    };
                }
                Some(ch) => {
                    return Err(ParseError::UnexpectedCharacter {
                        ch,
                        position: self.pos,
                    })
                }
            }
        }
    }
}
