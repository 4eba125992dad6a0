use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::AutomataError;

/// A symbol of an [`Alphabet`], identified by its position in declaration order.
///
/// The numeric order of symbols is the order used for shortlex comparisons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u32);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A word over some alphabet.
pub type Word = Vec<Symbol>;

/// An ordered, finite, cheaply clonable alphabet.
#[derive(Clone)]
pub struct Alphabet(Arc<AlphabetData>);

struct AlphabetData {
    names: Vec<String>,
    index: HashMap<String, Symbol>,
    padded: OnceLock<Alphabet>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, AutomataError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), Symbol(i as u32)).is_some() {
                return Err(AutomataError::DuplicateSymbol(name.clone()));
            }
        }
        Ok(Alphabet(Arc::new(AlphabetData {
            names,
            index,
            padded: OnceLock::new(),
        })))
    }

    /// Alphabet whose symbols are the characters of `chars`, in order.
    pub fn from_chars(chars: &str) -> Result<Self, AutomataError> {
        Self::new(chars.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn symbols(&self) -> impl DoubleEndedIterator<Item = Symbol> + ExactSizeIterator {
        (0..self.len() as u32).map(Symbol)
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.0.names[s.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn symbol(&self, name: &str) -> Option<Symbol> {
        self.0.index.get(name).copied()
    }

    pub fn same_as(&self, other: &Alphabet) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.names == other.0.names
    }

    pub fn check_same(&self, other: &Alphabet) -> Result<(), AutomataError> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(AutomataError::AlphabetMismatch)
        }
    }

    /// A new alphabet with `name` appended as the last symbol.
    pub fn extended(&self, name: &str) -> Result<Alphabet, AutomataError> {
        Alphabet::new(self.0.names.iter().cloned().chain(std::iter::once(name.to_string())))
    }

    /// The padded pair alphabet `(A ∪ {$}) × (A ∪ {$}) \ {($,$)}`.
    ///
    /// Built once per alphabet and shared. Symbol `i` encodes the pair
    /// `(i / (n+1), i % (n+1))` where track value `n` is the pad.
    pub fn padded(&self) -> &Alphabet {
        self.0.padded.get_or_init(|| {
            let pad = PaddedPairs::new(self.len());
            let names = (0..pad.len())
                .map(|i| {
                    let (x, y) = pad.decode(Symbol(i as u32));
                    let show = |t: Option<Symbol>| match t {
                        Some(s) => self.name(s).to_string(),
                        None => "$".to_string(),
                    };
                    format!("({},{})", show(x), show(y))
                })
                .collect::<Vec<_>>();
            Alphabet::new(names).expect("pair names are distinct")
        })
    }

    /// Render a word, using `.` separators whenever some symbol name is longer than one character.
    pub fn format_word(&self, word: &[Symbol]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        let short = self.0.names.iter().all(|n| n.chars().count() == 1);
        let parts: Vec<&str> = word.iter().map(|&s| self.name(s)).collect();
        if short {
            parts.concat()
        } else {
            parts.join(".")
        }
    }

    /// Parse a word written as by [`Alphabet::format_word`]. `""` and `"ε"` denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word, AutomataError> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Vec::new());
        }
        let lookup = |part: &str| {
            self.symbol(part)
                .ok_or_else(|| AutomataError::UnknownSymbol(part.to_string()))
        };
        if text.contains('.') {
            return text.split('.').map(lookup).collect();
        }
        if let Some(s) = self.symbol(text) {
            if text.chars().count() > 1 {
                return Ok(vec![s]);
            }
        }
        let mut out = Vec::new();
        for c in text.chars() {
            let mut buf = [0u8; 4];
            out.push(lookup(c.encode_utf8(&mut buf))?);
        }
        Ok(out)
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.names.iter()).finish()
    }
}

/// Index arithmetic for the padded pair alphabet over a base alphabet of a given size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PaddedPairs {
    base: usize,
}

impl PaddedPairs {
    pub fn new(base: usize) -> Self {
        PaddedPairs { base }
    }

    pub fn base_len(self) -> usize {
        self.base
    }

    /// Number of pair symbols, `(n+1)^2 - 1`.
    pub fn len(self) -> usize {
        (self.base + 1) * (self.base + 1) - 1
    }

    pub fn is_empty(self) -> bool {
        self.len() == 0
    }

    fn track(self, t: Option<Symbol>) -> usize {
        match t {
            Some(s) => s.index(),
            None => self.base,
        }
    }

    /// Encode a pair; `None` is the pad. Returns `None` for `($,$)`.
    pub fn encode(self, x: Option<Symbol>, y: Option<Symbol>) -> Option<Symbol> {
        if x.is_none() && y.is_none() {
            return None;
        }
        Some(Symbol((self.track(x) * (self.base + 1) + self.track(y)) as u32))
    }

    pub fn decode(self, p: Symbol) -> (Option<Symbol>, Option<Symbol>) {
        let w = self.base + 1;
        let (x, y) = (p.index() / w, p.index() % w);
        let t = |v: usize| (v != self.base).then_some(Symbol(v as u32));
        (t(x), t(y))
    }

    /// The pair with its two tracks exchanged.
    pub fn swap(self, p: Symbol) -> Symbol {
        let (x, y) = self.decode(p);
        self.encode(y, x).expect("($,$) is never a pair symbol")
    }
}
