//! Deterministic itemized pass/fail reports for structure checks.

use std::fmt;

/// One named check with its outcome; `detail` explains failures (and may
/// carry extra context on passes).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Ordered list of check items; order is the insertion order, so reports are
/// reproducible byte for byte.
#[derive(Debug, Clone, Default)]
pub struct CheckReport {
    pub title: String,
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn new(title: impl Into<String>) -> Self {
        CheckReport { title: title.into(), items: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.items.push(CheckItem { name: name.into(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckItem> {
        self.items.iter().find(|i| !i.passed)
    }

    pub fn item(&self, name: &str) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.name == name)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.title, if self.passed() { "pass" } else { "FAIL" })?;
        for item in &self.items {
            if item.passed {
                writeln!(f, "  ok   {}", item.name)?;
            } else if item.detail.is_empty() {
                writeln!(f, "  FAIL {}", item.name)?;
            } else {
                writeln!(f, "  FAIL {}: {}", item.name, item.detail)?;
            }
        }
        Ok(())
    }
}

/// One row of a tabular report: a named quantity, its computed value, the
/// bound or expected value it is compared against ("-" when the row is
/// informational), and whether the comparison held.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub quantity: String,
    pub value: String,
    pub bound: String,
    pub status: bool,
}

/// A tabular report identified by the command that produced it and a digest
/// of its inputs.  Rows are kept in insertion order and rendered without any
/// run-dependent data, so two runs over the same inputs emit identical bytes.
#[derive(Debug, Clone)]
pub struct Table {
    pub command: String,
    pub digest: String,
    /// Whether this command's schema includes the bound column.
    pub has_bound: bool,
    pub rows: Vec<TableRow>,
}

impl Table {
    pub fn new(command: impl Into<String>, digest: impl Into<String>, has_bound: bool) -> Self {
        Table { command: command.into(), digest: digest.into(), has_bound, rows: Vec::new() }
    }

    pub fn push(
        &mut self,
        quantity: impl Into<String>,
        value: impl Into<String>,
        bound: impl Into<String>,
        status: bool,
    ) {
        self.rows.push(TableRow {
            quantity: quantity.into(),
            value: value.into(),
            bound: bound.into(),
            status,
        });
    }

    /// Informational row without a bound.
    pub fn push_value(&mut self, quantity: impl Into<String>, value: impl Into<String>) {
        self.push(quantity, value, "-", true);
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.status)
    }

    /// Tab-separated rendering: a comment line naming the command and input
    /// digest, a fixed header row, then one line per row.
    pub fn render_tsv(&self) -> String {
        let mut out = format!("# pilab {} {}\n", self.command, self.digest);
        if self.has_bound {
            out.push_str("quantity\tvalue\tbound\tstatus\n");
        } else {
            out.push_str("quantity\tvalue\tstatus\n");
        }
        for r in &self.rows {
            let status = if r.status { "pass" } else { "fail" };
            if self.has_bound {
                out.push_str(&format!("{}\t{}\t{}\t{}\n", r.quantity, r.value, r.bound, status));
            } else {
                out.push_str(&format!("{}\t{}\t{}\n", r.quantity, r.value, status));
            }
        }
        out
    }

    /// Aligned human-readable rendering of the same rows.
    pub fn render_text(&self) -> String {
        let mut out = format!(
            "pilab {} ({}): {}\n",
            self.command,
            &self.digest[..self.digest.len().min(12)],
            if self.passed() { "pass" } else { "FAIL" }
        );
        let width = self.rows.iter().map(|r| r.quantity.len()).max().unwrap_or(0);
        for r in &self.rows {
            let status = if r.status { "pass" } else { "FAIL" };
            if self.has_bound && r.bound != "-" {
                out.push_str(&format!(
                    "  {:width$}  {}  (vs {})  {}\n",
                    r.quantity, r.value, r.bound, status
                ));
            } else {
                out.push_str(&format!("  {:width$}  {}  {}\n", r.quantity, r.value, status));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tsv_layout_is_fixed() {
        let mut t = Table::new("exponent", "abc123", false);
        t.push("d(A)", "4", "-", true);
        assert_eq!(t.render_tsv(), "# pilab exponent abc123\nquantity\tvalue\tstatus\nd(A)\t4\tpass\n");
        assert!(t.passed());

        let mut b = Table::new("codim", "abc123", true);
        b.push_value("c_1", "4");
        b.push("c^H_1", "4", "16", true);
        b.push("monotone", "4", "4", false);
        let tsv = b.render_tsv();
        assert!(tsv.contains("quantity\tvalue\tbound\tstatus\n"));
        assert!(tsv.contains("c_1\t4\t-\tpass\n"));
        assert!(tsv.contains("c^H_1\t4\t16\tpass\n"));
        assert!(tsv.ends_with("monotone\t4\t4\tfail\n"));
        assert!(!b.passed());
        assert!(b.render_text().contains("FAIL"));
    }
}
