use std::fmt::Display;

/// How a command ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    True,
    False,
    Budget,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::True => 0,
            Outcome::False => 1,
            Outcome::Budget => 3,
        }
    }
}

/// `#`-prefixed human lines followed by `key=value` lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub outcome: Outcome,
    human: Vec<String>,
    pairs: Vec<(String, String)>,
}

impl Default for Report {
    fn default() -> Self {
        Self { outcome: Outcome::True, human: Vec::new(), pairs: Vec::new() }
    }
}

impl Report {
    pub fn say(&mut self, line: impl Into<String>) -> &mut Self {
        self.human.push(line.into());
        self
    }

    pub fn set(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.pairs.push((key.into(), value.to_string()));
        self
    }

    pub fn fail(&mut self) -> &mut Self {
        self.outcome = Outcome::False;
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.pairs.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self, machine: bool) -> String {
        let mut out = String::new();
        if !machine {
            for line in &self.human {
                out.push_str("# ");
                out.push_str(line);
                out.push('\n');
            }
        }
        for (k, v) in &self.pairs {
            out.push_str(k);
            out.push('=');
            out.push_str(v);
            out.push('\n');
        }
        out
    }
}

/// Space-separated list.
pub(crate) fn join<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// `[a,b,c]`
pub(crate) fn bracket<T: Display>(items: &[T]) -> String {
    format!("[{}]", items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}
