//! Line-oriented `key: value` reports grouped under `# section` headers.

use std::fmt;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    sections: Vec<(String, Vec<(String, String)>)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Starts a new section; later entries go into it.
    pub fn section(&mut self, name: &str) -> &mut Self {
        self.sections.push((name.to_string(), Vec::new()));
        self
    }

    pub fn entry(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        if self.sections.is_empty() {
            self.section("report");
        }
        let (_, entries) = self.sections.last_mut().expect("a section exists");
        entries.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.sections
            .iter()
            .filter(|(s, _)| s == section)
            .flat_map(|(_, es)| es)
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn append(&mut self, other: Report) {
        self.sections.extend(other.sections);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, entries)) in self.sections.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            writeln!(f, "# {name}")?;
            for (k, v) in entries {
                writeln!(f, "{k}: {v}")?;
            }
        }
        Ok(())
    }
}
