//! Pass/fail bookkeeping shared by the verifiers.

use std::fmt;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), ..Default::default() }
    }

    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Records an error from a case as a failure.
    pub fn record_result<T>(&mut self, r: crate::Result<T>, ok: impl FnOnce(T) -> bool, what: impl FnOnce() -> String) {
        match r {
            Ok(v) => self.record(ok(v), what),
            Err(e) => {
                let w = what();
                self.record(false, || format!("{w}: {e}"))
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.cases += other.cases;
        self.failures.extend(other.failures.into_iter().map(|f| format!("{}: {f}", other.name)));
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.ok() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} cases", self.name, self.cases)?;
        if !self.ok() {
            write!(f, ", {} failed", self.failures.len())?;
        }
        write!(f, ")")?;
        for x in self.failures.iter().take(5) {
            write!(f, "\n  {x}")?;
        }
        Ok(())
    }
}
