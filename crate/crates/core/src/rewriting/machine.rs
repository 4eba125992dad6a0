use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::RewriteError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Move {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Transition {
    pub state: usize,
    pub write: usize,
    pub dir: Move,
}

/// Deterministic single-tape machine with a tape bounded on the left. Letters are indices
/// into `alphabet`; `None` reads the blank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuringMachine {
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub blank: String,
    pub initial: usize,
    pub accept: usize,
    pub delta: BTreeMap<(usize, Option<usize>), Transition>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunOutcome {
    /// Reached the accepting state; `tape_len` counts the cells ever written or read as input.
    Accepted { steps: usize, tape_len: usize },
    /// No applicable transition, or an attempt to move off the left end.
    Rejected { steps: usize },
    Running,
}

fn err(msg: impl Into<String>) -> RewriteError {
    RewriteError::Machine(msg.into())
}

const RESERVED: [&str; 3] = ["d", "h", "bar:h"];

impl TuringMachine {
    pub fn validate(&self) -> Result<(), RewriteError> {
        let mut seen = std::collections::HashSet::new();
        for n in self.states.iter().chain(&self.alphabet) {
            if n.is_empty() || n.chars().any(|c| c.is_whitespace() || c == '.') {
                return Err(err(format!("bad name {n:?}")));
            }
            if RESERVED.contains(&n.as_str()) || n.starts_with("bar:") {
                return Err(err(format!("name {n} is reserved")));
            }
            if !seen.insert(n.as_str()) {
                return Err(err(format!("name {n} used twice")));
            }
        }
        if self.alphabet.contains(&self.blank) {
            return Err(err("blank is a tape letter"));
        }
        if self.initial >= self.states.len() || self.accept >= self.states.len() {
            return Err(err("initial or accepting state out of range"));
        }
        for (&(q, a), t) in &self.delta {
            if q == self.accept {
                return Err(err("accepting state has a transition"));
            }
            if q >= self.states.len() || t.state >= self.states.len() {
                return Err(err("state out of range"));
            }
            if a.is_some_and(|a| a >= self.alphabet.len()) || t.write >= self.alphabet.len() {
                return Err(err("letter out of range"));
            }
        }
        Ok(())
    }

    /// Text form: header lines `states:`, `alphabet:`, `blank:`, `initial:`, `accept:`,
    /// then one transition `q a p b L|R` per line. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, RewriteError> {
        let mut header: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        let mut rows: Vec<Vec<&str>> = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match line.split_once(':') {
                Some((key, rest)) if ["states", "alphabet", "blank", "initial", "accept"].contains(&key.trim()) => {
                    header.insert(key.trim(), rest.split_whitespace().collect());
                }
                _ => rows.push(line.split_whitespace().collect()),
            }
        }
        let get = |k: &str| header.get(k).cloned().ok_or_else(|| err(format!("missing `{k}:` line")));
        let one = |k: &str| -> Result<String, RewriteError> {
            match get(k)?.as_slice() {
                [x] => Ok(x.to_string()),
                _ => Err(err(format!("`{k}:` takes one name"))),
            }
        };
        let states: Vec<String> = get("states")?.iter().map(|s| s.to_string()).collect();
        let alphabet: Vec<String> = get("alphabet")?.iter().map(|s| s.to_string()).collect();
        let blank = one("blank")?;
        let state = |n: &str| states.iter().position(|s| s == n).ok_or_else(|| err(format!("unknown state {n}")));
        let letter = |n: &str| alphabet.iter().position(|s| s == n).ok_or_else(|| err(format!("unknown letter {n}")));
        let initial = state(&one("initial")?)?;
        let accept = state(&one("accept")?)?;
        let mut delta = BTreeMap::new();
        for row in rows {
            let [q, a, p, b, m] = row.as_slice() else {
                return Err(err(format!("transition needs five fields: {}", row.join(" "))));
            };
            let read = if *a == blank { None } else { Some(letter(a)?) };
            let dir = match *m {
                "L" => Move::Left,
                "R" => Move::Right,
                _ => return Err(err(format!("direction must be L or R, got {m}"))),
            };
            let t = Transition { state: state(p)?, write: letter(b)?, dir };
            if delta.insert((state(q)?, read), t).is_some() {
                return Err(err(format!("two transitions for ({q}, {a})")));
            }
        }
        let m = TuringMachine { states, alphabet, blank, initial, accept, delta };
        m.validate()?;
        Ok(m)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "states: {}", self.states.join(" "));
        let _ = writeln!(out, "alphabet: {}", self.alphabet.join(" "));
        let _ = writeln!(out, "blank: {}", self.blank);
        let _ = writeln!(out, "initial: {}", self.states[self.initial]);
        let _ = writeln!(out, "accept: {}", self.states[self.accept]);
        for (&(q, a), t) in &self.delta {
            let read = a.map_or(self.blank.as_str(), |a| self.alphabet[a].as_str());
            let dir = if t.dir == Move::Left { "L" } else { "R" };
            let _ = writeln!(out, "{} {} {} {} {}", self.states[q], read, self.states[t.state], self.alphabet[t.write], dir);
        }
        out
    }

    pub fn letter(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|s| s == name)
    }

    /// Input given as letter names, one character each or separated by `.`.
    pub fn parse_input(&self, text: &str) -> Result<Vec<usize>, RewriteError> {
        if text.is_empty() || text == "ε" {
            return Ok(Vec::new());
        }
        let parts: Vec<String> = if text.contains('.') {
            text.split('.').map(str::to_string).collect()
        } else {
            text.chars().map(String::from).collect()
        };
        parts.iter().map(|p| self.letter(p).ok_or_else(|| err(format!("unknown letter {p}")))).collect()
    }

    /// Direct simulation from `q₀ w`.
    pub fn run(&self, input: &[usize], max_steps: usize) -> RunOutcome {
        let mut tape: Vec<usize> = input.to_vec();
        let (mut q, mut pos) = (self.initial, 0usize);
        for steps in 0..=max_steps {
            if q == self.accept {
                return RunOutcome::Accepted { steps, tape_len: tape.len() };
            }
            if steps == max_steps {
                break;
            }
            let Some(t) = self.delta.get(&(q, tape.get(pos).copied())) else {
                return RunOutcome::Rejected { steps };
            };
            if pos == tape.len() {
                tape.push(t.write);
            } else {
                tape[pos] = t.write;
            }
            q = t.state;
            match t.dir {
                Move::Right => pos += 1,
                Move::Left if pos == 0 => return RunOutcome::Rejected { steps: steps + 1 },
                Move::Left => pos -= 1,
            }
        }
        RunOutcome::Running
    }
}
