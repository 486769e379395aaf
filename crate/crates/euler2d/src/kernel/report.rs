//! Residual report types shared by all verification suites.

use serde::{Deserialize, Serialize};

/// Grid location at which a maximum residual was observed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ArgMax {
    pub z1: f64,
    pub z2: f64,
    pub t: f64,
}

/// One named maximum-absolute-residual entry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResidualEntry {
    pub name: String,
    pub max_abs: f64,
    pub at: ArgMax,
    pub tol: f64,
    pub pass: bool,
}

impl ResidualEntry {
    pub fn new(name: impl Into<String>, max_abs: f64, at: ArgMax, tol: f64) -> ResidualEntry {
        ResidualEntry {
            name: name.into(),
            max_abs,
            at,
            tol,
            pass: max_abs <= tol,
        }
    }
}

/// A named collection of residual entries over a sampling grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResidualReport {
    pub check: String,
    pub entries: Vec<ResidualEntry>,
    /// Fraction of grid points that could not be evaluated (singular
    /// jacobian or failed inversion). A report only passes if at least
    /// 90% of the grid was evaluable.
    pub excluded_fraction: f64,
}

impl ResidualReport {
    pub fn new(check: impl Into<String>) -> ResidualReport {
        ResidualReport {
            check: check.into(),
            entries: Vec::new(),
            excluded_fraction: 0.0,
        }
    }

    pub fn push(&mut self, entry: ResidualEntry) {
        self.entries.push(entry);
    }

    pub fn entry(&self, name: &str) -> Option<&ResidualEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass) && self.excluded_fraction <= 0.10
    }
}

/// Running maximum tracker used by the grid sweeps.
#[derive(Debug, Clone, Copy, Default)]
pub struct MaxTracker {
    pub max_abs: f64,
    pub at: ArgMax,
}

impl MaxTracker {
    pub fn update(&mut self, value: f64, z1: f64, z2: f64, t: f64) {
        let a = value.abs();
        if a >= self.max_abs {
            self.max_abs = a;
            self.at = ArgMax { z1, z2, t };
        }
    }

    pub fn entry(&self, name: impl Into<String>, tol: f64) -> ResidualEntry {
        ResidualEntry::new(name, self.max_abs, self.at, tol)
    }
}
