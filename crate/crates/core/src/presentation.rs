//! Finite group presentations: parsing, normal form, presentation length and
//! triangularization.
//!
//! Text syntax is `<a,b | abaBAB, aab>`. Relators are separated by `,` or
//! `;`. For single-character generators an uppercase letter denotes the
//! inverse of its lowercase generator; any generator accepts a `^k` suffix
//! (`x1^-1`, `a^3`). Letters may be juxtaposed or separated by whitespace,
//! `*` or `.`; `1` is the empty word.

use std::collections::HashSet;
use std::fmt;

use crate::error::PresentationError;
use crate::linalg::Matrix;
use crate::scalar::Integral;

/// Prefix reserved for generators introduced by [`Presentation::triangularize`].
pub const FRESH_PREFIX: &str = "_t";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Free reduction followed by cancelling inverse letters at the two ends.
    pub fn cyclic_reduce(&self) -> Word {
        let w = self.free_reduce().0;
        let (mut i, mut j) = (0, w.len());
        while j - i >= 2 && w[i] == w[j - 1].inv() {
            i += 1;
            j -= 1;
        }
        Word(w[i..j].to_vec())
    }

    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        Word(self.0[k..].iter().chain(&self.0[..k]).copied().collect())
    }

    pub fn exponent_sum(&self, generator: usize) -> i64 {
        self.0.iter().filter(|l| l.generator == generator).map(|l| l.sign()).sum()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Accept generator names starting with `_t` (needed to read back
    /// triangularized output).
    pub allow_reserved: bool,
}

/// A finite presentation whose relators are freely and cyclically reduced,
/// nonempty, and of length at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Presentation {
    /// Builds and normalizes a presentation: relators are reduced, empty ones
    /// dropped, and every length-1 relator `x` eliminates `x` by substitution.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !valid_name(g) {
                return Err(PresentationError::Syntax { pos: 0, msg: format!("invalid generator name {g:?}") });
            }
            if !seen.insert(g.as_str()) {
                return Err(PresentationError::DuplicateGenerator { name: g.clone() });
            }
        }
        if generators.is_empty() && relators.iter().any(|r| !r.is_empty()) {
            return Err(PresentationError::RelatorsWithoutGenerators);
        }
        for r in &relators {
            if let Some(l) = r.letters().iter().find(|l| l.generator >= generators.len()) {
                return Err(PresentationError::UnknownGenerator { name: format!("#{}", l.generator), pos: 0 });
            }
        }
        let mut p = Presentation { generators, relators };
        p.normalize();
        Ok(p)
    }

    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        Self::parse_with(text, ParseOptions::default())
    }

    pub fn parse_with(text: &str, opts: ParseOptions) -> Result<Self, PresentationError> {
        let (generators, relators) = Parser::new(text, opts).presentation()?;
        Self::new(generators, relators)
    }

    fn normalize(&mut self) {
        loop {
            let reduced: Vec<Word> =
                self.relators.iter().map(Word::cyclic_reduce).filter(|w| !w.is_empty()).collect();
            self.relators = reduced;
            let Some(pos) = self.relators.iter().position(|r| r.len() == 1) else { break };
            let dead = self.relators.remove(pos).letters()[0].generator;
            self.generators.remove(dead);
            for r in self.relators.iter_mut() {
                let letters = r
                    .letters()
                    .iter()
                    .filter(|l| l.generator != dead)
                    .map(|l| Letter::new(if l.generator > dead { l.generator - 1 } else { l.generator }, l.inverse))
                    .collect();
                *r = Word::new(letters);
            }
        }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Sum over relators of `(word length - 2)`.
    pub fn length(&self) -> u64 {
        self.relators.iter().map(|r| r.len() as u64 - 2).sum()
    }

    /// `m x n` exponent-sum matrix: row `j`, column `i` is the net exponent
    /// of generator `i` in relator `j`.
    pub fn abelianization_matrix<T: Integral>(&self) -> Matrix<T> {
        let n = self.generators.len();
        let mut m: Matrix<T> = Matrix::zeros(self.relators.len(), n);
        for (j, r) in self.relators.iter().enumerate() {
            for l in r.letters() {
                m[(j, l.generator)] = m[(j, l.generator)].clone() + T::from_small(l.sign());
            }
        }
        m
    }

    /// Splits every relator longer than 3 with fresh generators until all
    /// relators have length 2 or 3.
    ///
    /// The leftmost longest relator `x1 x2 ... xk` is replaced by
    /// `u^-1 x1 x2` followed by `u x3 ... xk`, where `u` is a fresh
    /// generator named `_t<i>`.
    pub fn triangularize(&self) -> TriangularPresentation {
        let mut generators = self.generators.clone();
        let mut relators = self.relators.clone();
        let mut next = generators
            .iter()
            .filter_map(|g| g.strip_prefix(FRESH_PREFIX)?.parse::<usize>().ok())
            .map(|i| i + 1)
            .max()
            .unwrap_or(0);
        loop {
            let longest = relators.iter().map(Word::len).max().unwrap_or(0);
            if longest <= 3 {
                break;
            }
            let idx = relators.iter().position(|r| r.len() == longest).expect("longest relator exists");
            let u = generators.len();
            generators.push(format!("{FRESH_PREFIX}{next}"));
            next += 1;
            let letters = relators[idx].letters();
            let head = Word::new(vec![Letter::new(u, true), letters[0], letters[1]]);
            let tail = Word::new(std::iter::once(Letter::new(u, false)).chain(letters[2..].iter().copied()).collect());
            relators[idx] = head;
            relators.insert(idx + 1, tail);
        }
        TriangularPresentation(Presentation { generators, relators })
    }

    fn compact(&self) -> bool {
        self.generators.iter().all(|g| g.len() == 1)
    }

    fn write_letter(&self, out: &mut String, l: Letter) {
        let name = &self.generators[l.generator];
        if !l.inverse {
            out.push_str(name);
            return;
        }
        let mut chars = name.chars();
        if let (Some(c), None) = (chars.next(), chars.next()) {
            let upper = c.to_ascii_uppercase();
            if c.is_ascii_lowercase() && !self.generators.iter().any(|g| g.len() == 1 && g.starts_with(upper)) {
                out.push(upper);
                return;
            }
        }
        out.push_str(name);
        out.push_str("^-1");
    }

    pub fn word_to_string(&self, w: &Word) -> String {
        let sep = if self.compact() { "" } else { "*" };
        let mut out = String::new();
        for (i, &l) in w.letters().iter().enumerate() {
            if i > 0 {
                out.push_str(sep);
            }
            self.write_letter(&mut out, l);
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_to_string(r)).collect();
        write!(f, "<{} | {}>", self.generators.join(","), rels.join(", "))
    }
}

/// Presentation whose relators all have length 2 or 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularPresentation(Presentation);

impl TriangularPresentation {
    /// Checks the length invariant; `None` if some relator is longer than 3.
    pub fn from_presentation(p: Presentation) -> Option<Self> {
        p.relators.iter().all(|r| r.len() <= 3).then_some(TriangularPresentation(p))
    }

    pub fn presentation(&self) -> &Presentation {
        &self.0
    }

    pub fn into_presentation(self) -> Presentation {
        self.0
    }

    /// Number of length-3 relators, which equals the presentation length.
    pub fn length(&self) -> u64 {
        self.0.relators.iter().filter(|r| r.len() == 3).count() as u64
    }
}

impl std::ops::Deref for TriangularPresentation {
    type Target = Presentation;

    fn deref(&self) -> &Presentation {
        &self.0
    }
}

impl fmt::Display for TriangularPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    opts: ParseOptions,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, opts: ParseOptions) -> Self {
        Parser { src: text.as_bytes(), pos: 0, opts }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PresentationError> {
        Err(PresentationError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), PresentationError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn ident_run(&mut self) -> (usize, &'a str) {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        (start, std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn presentation(&mut self) -> Result<(Vec<String>, Vec<Word>), PresentationError> {
        self.expect(b'<')?;
        let gens = self.generators()?;
        self.expect(b'|')?;
        self.skip_ws();
        if gens.is_empty() && self.peek() != Some(b'>') {
            return Err(PresentationError::RelatorsWithoutGenerators);
        }
        let rels = self.relators(&gens)?;
        self.expect(b'>')?;
        self.skip_ws();
        if self.pos != self.src.len() {
            return self.err("trailing input after `>`");
        }
        Ok((gens, rels))
    }

    fn generators(&mut self) -> Result<Vec<String>, PresentationError> {
        let mut gens: Vec<String> = Vec::new();
        self.skip_ws();
        if self.peek() == Some(b'|') {
            return Ok(gens);
        }
        loop {
            self.skip_ws();
            let (start, name) = self.ident_run();
            if name.is_empty() || !valid_name(name) {
                self.pos = start;
                return self.err("expected a generator name");
            }
            if !self.opts.allow_reserved && name.starts_with(FRESH_PREFIX) {
                return Err(PresentationError::ReservedName { name: name.to_string() });
            }
            if gens.iter().any(|g| g == name) {
                return Err(PresentationError::DuplicateGenerator { name: name.to_string() });
            }
            gens.push(name.to_string());
            self.skip_ws();
            match self.peek() {
                Some(b',') => self.pos += 1,
                _ => return Ok(gens),
            }
        }
    }

    fn relators(&mut self, gens: &[String]) -> Result<Vec<Word>, PresentationError> {
        let mut rels = Vec::new();
        self.skip_ws();
        if self.peek() == Some(b'>') {
            return Ok(rels);
        }
        loop {
            rels.push(self.word(gens)?);
            self.skip_ws();
            match self.peek() {
                Some(b',') | Some(b';') => self.pos += 1,
                _ => return Ok(rels),
            }
        }
    }

    fn word(&mut self, gens: &[String]) -> Result<Word, PresentationError> {
        let mut letters = Vec::new();
        let mut any = false;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') | Some(b'.') if any => {
                    self.pos += 1;
                    continue;
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'_' => {}
                _ => break,
            }
            let (start, run) = self.ident_run();
            any = true;
            let mut run_letters = if run == "1" { Vec::new() } else { split_run(run, start, gens)? };
            if self.peek() == Some(b'^') {
                self.pos += 1;
                let exp = self.exponent()?;
                let Some(last) = run_letters.pop() else {
                    return self.err("exponent without a generator");
                };
                let base = if exp < 0 { last.inv() } else { last };
                run_letters.extend(std::iter::repeat(base).take(exp.unsigned_abs() as usize));
            }
            letters.extend(run_letters);
        }
        if !any {
            return self.err("expected a relator");
        }
        Ok(Word::new(letters))
    }

    fn exponent(&mut self) -> Result<i64, PresentationError> {
        let start = self.pos;
        if matches!(self.peek(), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        match text.parse::<i64>() {
            Ok(v) if v.unsigned_abs() <= 1 << 20 => Ok(v),
            _ => {
                self.pos = start;
                self.err("expected an integer exponent")
            }
        }
    }
}

/// Greedy longest-match split of an identifier run into letters. Exact
/// generator names take precedence over the uppercase-inverse convention.
fn split_run(run: &str, offset: usize, gens: &[String]) -> Result<Vec<Letter>, PresentationError> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < run.len() {
        let rest = &run[i..];
        let exact = gens
            .iter()
            .enumerate()
            .filter(|(_, g)| rest.starts_with(g.as_str()))
            .max_by_key(|(_, g)| g.len());
        if let Some((idx, g)) = exact {
            out.push(Letter::new(idx, false));
            i += g.len();
            continue;
        }
        let c = rest.as_bytes()[0];
        if c.is_ascii_uppercase() {
            let lower = (c.to_ascii_lowercase() as char).to_string();
            if let Some(idx) = gens.iter().position(|g| *g == lower) {
                out.push(Letter::new(idx, true));
                i += 1;
                continue;
            }
        }
        let name: String = rest.chars().take_while(|c| c.is_ascii_alphanumeric() || *c == '_').collect();
        return Err(PresentationError::UnknownGenerator { name, pos: offset + i });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::invariant_factors;
    use num_bigint::BigInt;

    fn p(text: &str) -> Presentation {
        Presentation::parse(text).unwrap()
    }

    #[test]
    fn parse_examples() {
        let t = p("<a,b | abaBAB>");
        assert_eq!(t.generators(), ["a", "b"]);
        assert_eq!(t.relators().len(), 1);
        assert_eq!(t.relators()[0].len(), 6);

        let free = p("<a | aA>");
        assert_eq!(free.generators(), ["a"]);
        assert!(free.relators().is_empty());

        let elim = p("<a,b | b>");
        assert_eq!(elim.generators(), ["a"]);
        assert!(elim.relators().is_empty());
    }

    #[test]
    fn elimination_substitutes_into_other_relators() {
        let q = p("<a,b,c | b, abab^-1c, cc>");
        assert_eq!(q.generators(), ["a", "c"]);
        assert_eq!(q.to_string(), "<a,c | aac, cc>");
    }

    #[test]
    fn length_examples() {
        assert_eq!(p("<a,b | abaBAB>").length(), 4);
        assert_eq!(p("<a,b | abAB, aab>").length(), 3);
        assert_eq!(p("<a,b | >").length(), 0);
        assert_eq!(p("< | >").length(), 0);
    }

    #[test]
    fn syntax_errors_report_position() {
        match Presentation::parse("<a,b | abc>") {
            Err(PresentationError::UnknownGenerator { name, pos }) => {
                assert_eq!(name, "c");
                assert_eq!(pos, 9);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(Presentation::parse("<a,b | ab"), Err(PresentationError::Syntax { pos: 9, .. })));
        assert!(matches!(Presentation::parse("<a,a | a>"), Err(PresentationError::DuplicateGenerator { .. })));
        assert!(matches!(Presentation::parse("< | a>"), Err(PresentationError::RelatorsWithoutGenerators)));
        assert!(matches!(Presentation::parse("<_t0 | >"), Err(PresentationError::ReservedName { .. })));
        assert!(matches!(Presentation::parse("<a | a^>"), Err(PresentationError::Syntax { .. })));
    }

    #[test]
    fn multi_character_generators() {
        let q = p("<x1, y | x1 y x1^-1 y^-1, y^3>");
        assert_eq!(q.relators()[0].len(), 4);
        assert_eq!(q.relators()[1].len(), 3);
        assert_eq!(q.to_string(), "<x1,y | x1*y*x1^-1*Y, y*y*y>");
        assert_eq!(Presentation::parse(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn case_clash_uses_explicit_inverse() {
        let q = p("<a,A | a^-1 A A>");
        assert_eq!(q.relators()[0].letters()[0], Letter::new(0, true));
        assert_eq!(q.to_string(), "<a,A | a^-1AA>");
        assert_eq!(Presentation::parse(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn abelianization_examples() {
        let m = p("<a,b | abaBAB>").abelianization_matrix::<BigInt>();
        assert_eq!(m, Matrix::from_i64_rows(&[&[1, -1]]));
        assert_eq!(p("<a | aaaa>").abelianization_matrix::<BigInt>(), Matrix::from_i64_rows(&[&[4]]));
        let empty = p("<a,b | >").abelianization_matrix::<BigInt>();
        assert_eq!((empty.rows(), empty.cols()), (0, 2));
    }

    #[test]
    fn triangularize_trefoil() {
        let t = p("<a,b | abaBAB>").triangularize();
        assert_eq!(t.generators().len(), 5);
        assert_eq!(t.relators().len(), 4);
        assert!(t.relators().iter().all(|r| r.len() == 3));
        assert_eq!(t.length(), 4);
        assert_eq!(t.presentation().length(), 4);
        assert_eq!(t.to_string(), "<a,b,_t0,_t1,_t2 | _t0^-1*a*b, _t1^-1*_t0*a, _t2^-1*_t1*B, _t2*A*B>");
    }

    #[test]
    fn triangularize_identity_on_short_relators() {
        let q = p("<a,b | aab>");
        assert_eq!(q.triangularize().into_presentation(), q);
    }

    #[test]
    fn triangularize_keeps_abelianization() {
        let q = p("<a | aaaa>");
        let t = q.triangularize();
        assert_eq!(t.relators().len(), 2);
        assert_eq!(t.length(), 2);
        let before = invariant_factors(&q.abelianization_matrix::<BigInt>());
        let after = invariant_factors(&t.abelianization_matrix::<BigInt>());
        assert_eq!(before, vec![BigInt::from(4)]);
        assert_eq!(after.last(), Some(&BigInt::from(4)));
        assert!(after[..after.len() - 1].iter().all(|d| *d == BigInt::from(1)));
    }

    #[test]
    fn triangularized_output_reads_back() {
        let t = p("<a,b | abaBAB, abababab>").triangularize();
        let text = t.to_string();
        assert!(Presentation::parse(&text).is_err());
        let back = Presentation::parse_with(&text, ParseOptions { allow_reserved: true }).unwrap();
        assert_eq!(&back, t.presentation());
        // Fresh names continue past existing ones.
        let again = back.triangularize();
        assert_eq!(again.presentation(), &back);
    }

    use proptest::prelude::*;

    fn word(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
        proptest::collection::vec((0..gens, any::<bool>()), 0..=max_len)
            .prop_map(|v| Word::new(v.into_iter().map(|(g, i)| Letter::new(g, i)).collect()))
    }

    proptest! {
        #[test]
        fn free_reduction_idempotent(w in word(3, 30)) {
            let r = w.free_reduce();
            prop_assert!(r.len() <= w.len());
            prop_assert_eq!(r.free_reduce(), r);
        }

        #[test]
        fn rotations_share_cyclic_length(w in word(3, 30), k in 0usize..30) {
            let base = w.cyclic_reduce();
            let rotated = base.rotate(k).cyclic_reduce();
            prop_assert_eq!(rotated.len(), base.len());
        }

        #[test]
        fn serialize_then_parse_is_identity(rels in proptest::collection::vec(word(3, 12), 0..4)) {
            let q = Presentation::new(vec!["a".into(), "b".into(), "c".into()], rels).unwrap();
            let text = q.to_string();
            prop_assert_eq!(Presentation::parse(&text).unwrap(), q);
        }
    }
}
