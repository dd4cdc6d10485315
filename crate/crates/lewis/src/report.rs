use std::fmt;

/// One failed identity, with level, basis indices and a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: String,
    pub level: Option<usize>,
    pub indices: Vec<usize>,
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub violations: Vec<Violation>,
}

const CAP: usize = 64;

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn fail(
        &mut self,
        identity: impl Into<String>,
        level: Option<usize>,
        indices: Vec<usize>,
        witness: impl Into<String>,
    ) {
        if self.violations.len() < CAP {
            self.violations.push(Violation { identity: identity.into(), level, indices, witness: witness.into() });
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        for v in other.violations {
            if self.violations.len() >= CAP {
                break;
            }
            self.violations.push(v);
        }
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn mentions(&self, identity: &str) -> bool {
        self.violations.iter().any(|v| v.identity.contains(identity))
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.identity)?;
        if let Some(l) = self.level {
            write!(f, " at level {l}")?;
        }
        if !self.indices.is_empty() {
            let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
            write!(f, " indices ({})", idx.join(","))?;
        }
        if !self.witness.is_empty() {
            write!(f, ": {}", self.witness)?;
        }
        Ok(())
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "pass");
        }
        writeln!(f, "fail ({} violations)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}
