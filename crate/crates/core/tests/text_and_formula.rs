mod common;

use docsynth_core::formula::superscript_digit;
use docsynth_core::{generate_formula, sample_text, seed, FormulaGrammar, TextCorpus};
use proptest::prelude::*;

/// Sampled text must be a run of consecutive words from the cyclic corpus
/// word stream.
fn is_corpus_run(corpus: &TextCorpus, text: &str) -> bool {
    let stream: Vec<&str> = corpus.sentences().iter().flat_map(|s| s.split_whitespace()).collect();
    let words: Vec<&str> = text.split(' ').collect();
    if words.iter().any(|w| w.is_empty()) {
        return false;
    }
    (0..stream.len()).any(|start| words.iter().enumerate().all(|(i, w)| stream[(start + i) % stream.len()] == *w))
}

#[test]
fn sampled_text_never_splits_words() {
    let corpus = common::corpus();
    for s in 0..300u64 {
        let target = 1 + (s as usize * 37) % 700;
        let t = sample_text(&corpus, &mut seed::stream(s, 9), target);
        assert!(is_corpus_run(&corpus, &t), "{t}");
        let len = t.chars().count();
        let longest = t.split(' ').map(|w| w.chars().count()).max().unwrap();
        assert!(len >= target && len < target + longest + 1, "len {len} target {target}");
    }
}

#[test]
fn sampling_is_deterministic() {
    let corpus = common::corpus();
    let a = sample_text(&corpus, &mut seed::stream(5, 5), 200);
    let b = sample_text(&corpus, &mut seed::stream(5, 5), 200);
    assert_eq!(a, b);
}

/// Recursive-descent parser for the formula grammar; returns the number of
/// binary operators on success.
struct Parser<'g> {
    toks: Vec<String>,
    pos: usize,
    g: &'g FormulaGrammar,
}

fn tokenize(s: &str) -> Vec<String> {
    let mut toks = Vec::new();
    let mut cur = String::new();
    let flush = |cur: &mut String, toks: &mut Vec<String>| {
        if !cur.is_empty() {
            toks.push(std::mem::take(cur));
        }
    };
    for c in s.chars() {
        match c {
            ' ' => flush(&mut cur, &mut toks),
            '(' | ')' => {
                flush(&mut cur, &mut toks);
                toks.push(c.to_string());
            }
            _ => cur.push(c),
        }
    }
    flush(&mut cur, &mut toks);
    toks
}

impl Parser<'_> {
    fn expr(&mut self) -> Option<u32> {
        let mut ops = self.term()?;
        while self.pos < self.toks.len() && self.g.operators.contains(&self.toks[self.pos]) {
            self.pos += 1;
            ops += 1 + self.term()?;
        }
        Some(ops)
    }

    fn term(&mut self) -> Option<u32> {
        let t = self.toks.get(self.pos)?.clone();
        self.pos += 1;
        if t == "(" {
            let ops = self.expr()?;
            (self.toks.get(self.pos)? == ")").then_some(())?;
            self.pos += 1;
            return Some(ops);
        }
        let is_sup = |c: char| (0..10).any(|d| superscript_digit(d) == c);
        let (base, exp_ok) = if let Some((base, exp)) = t.split_once('^') {
            (base, exp.len() == 1 && exp.parse::<u32>().is_ok_and(|d| (2..=9).contains(&d)))
        } else {
            let base = t.trim_end_matches(is_sup);
            let exp = &t[base.len()..];
            let ok = exp.is_empty() || (exp.chars().count() == 1 && (2..=9).any(|d| superscript_digit(d).to_string() == exp));
            (base, ok)
        };
        let atom_ok = self.g.variable_symbols.iter().any(|v| v == base)
            || base.parse::<u32>().is_ok_and(|v| (self.g.digit_range.0..=self.g.digit_range.1).contains(&v));
        (atom_ok && exp_ok).then_some(0)
    }
}

fn parse(g: &FormulaGrammar, s: &str) -> Option<u32> {
    let mut p = Parser {
        toks: tokenize(s),
        pos: 0,
        g,
    };
    let ops = p.expr()?;
    (p.pos == p.toks.len()).then_some(ops)
}

#[test]
fn formulas_parse_and_respect_operator_bound() {
    for depth in 1..=6u32 {
        for superscripts in [true, false] {
            let g = FormulaGrammar {
                max_depth: depth,
                unicode_superscripts: superscripts,
                ..Default::default()
            };
            for s in 0..300 {
                let f = generate_formula(&g, &mut seed::stream(s, depth as u64));
                let ops = parse(&g, &f).unwrap_or_else(|| panic!("unparseable: {f}"));
                assert!(ops < 2u32.pow(depth), "{f}: {ops} operators at depth {depth}");
            }
        }
    }
}

#[test]
fn parser_rejects_malformed() {
    let g = FormulaGrammar::default();
    assert!(parse(&g, "x +").is_none());
    assert!(parse(&g, "(x + y").is_none());
    assert!(parse(&g, "q").is_none());
    assert_eq!(parse(&g, "x² + (y × 3)"), Some(2));
}

proptest! {
    #[test]
    fn any_target_yields_corpus_run(target in 1usize..2000, s in any::<u64>()) {
        let corpus = common::corpus();
        let t = sample_text(&corpus, &mut seed::stream(s, 0), target);
        prop_assert!(t.chars().count() >= target);
        prop_assert!(is_corpus_run(&corpus, &t));
    }
}
