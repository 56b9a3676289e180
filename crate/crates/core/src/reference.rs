//! Published reference energies and their reproduction.
//!
//! The dataset is compiled into the binary from `data/reference.tsv`, one
//! record per line: `table, n, g, column, value`, where `column` is a
//! perturbation order or `exact`. Values keep their printed text so the
//! comparison tolerance (one unit in the last printed digit) is recovered
//! from the string itself.

use std::fmt::Write as _;
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::decimal::{decimals_of, format_fixed, parse_decimal, unit};
use crate::error::{Error, Result};
use crate::oracle::exact_eigenvalues;
use crate::recursion::CoefficientTable;
use crate::spectrum::{energy_from_table, EnergyEstimate, RootRule, SelectedRoot};

const EMBEDDED: &str = include_str!("../data/reference.tsv");

pub const TABLE_IDS: [u8; 6] = [1, 2, 3, 4, 5, 6];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Column {
    Order(usize),
    Exact,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceCell {
    pub table: u8,
    pub n: u32,
    /// Coupling exactly as printed.
    pub g: String,
    pub column: Column,
    /// Energy exactly as printed.
    pub value: String,
}

impl ReferenceCell {
    pub fn g_exact(&self) -> BigRational {
        parse_decimal(&self.g).expect("embedded coupling parses")
    }

    pub fn value_exact(&self) -> BigRational {
        parse_decimal(&self.value).expect("embedded value parses")
    }

    pub fn printed_decimals(&self) -> usize {
        decimals_of(&self.value)
    }

    /// One unit in the last printed digit.
    pub fn tolerance(&self) -> BigRational {
        unit(self.printed_decimals())
    }

    /// `T<table> n=<n> g=<g> N=<order>` or `... exact`.
    pub fn label(&self) -> String {
        let col = match self.column {
            Column::Order(order) => format!("N={order}"),
            Column::Exact => "exact".to_string(),
        };
        format!("T{} n={} g={} {}", self.table, self.n, self.g, col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceDataset {
    cells: Vec<ReferenceCell>,
}

impl ReferenceDataset {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cells = Vec::new();
        for line in text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            let bad = || Error::InvalidProblem(format!("malformed reference record {line:?}"));
            let fields: Vec<&str> = line.split('\t').collect();
            let [table, n, g, column, value] = fields[..] else {
                return Err(bad());
            };
            let column = match column {
                "exact" => Column::Exact,
                order => Column::Order(order.parse().map_err(|_| bad())?),
            };
            parse_decimal(g)?;
            parse_decimal(value)?;
            cells.push(ReferenceCell {
                table: table.parse().map_err(|_| bad())?,
                n: n.parse().map_err(|_| bad())?,
                g: g.to_string(),
                column,
                value: value.to_string(),
            });
        }
        Ok(Self { cells })
    }

    /// The compiled-in dataset.
    pub fn embedded() -> &'static Self {
        static DATA: OnceLock<ReferenceDataset> = OnceLock::new();
        DATA.get_or_init(|| Self::parse(EMBEDDED).expect("embedded dataset is well formed"))
    }

    pub fn cells(&self) -> &[ReferenceCell] {
        &self.cells
    }

    pub fn table(&self, id: u8) -> Vec<&ReferenceCell> {
        self.cells.iter().filter(|c| c.table == id).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellResult {
    pub cell: ReferenceCell,
    /// `None` when no admissible root exists at this order.
    pub estimate: Option<EnergyEstimate>,
    pub pass: bool,
}

impl CellResult {
    /// `(computed − printed) / tolerance`.
    pub fn deviation_units(&self) -> Option<f64> {
        let est = self.estimate.as_ref()?;
        let dev = (&est.energy.value - self.cell.value_exact()) / self.cell.tolerance();
        dev.to_f64()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub cell: ReferenceCell,
    pub oracle: f64,
    pub pass: bool,
}

impl OracleResult {
    pub fn delta(&self) -> f64 {
        self.oracle - self.cell.value_exact().to_f64().unwrap_or(f64::NAN)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableReport {
    pub table: u8,
    pub cells: Vec<CellResult>,
    pub oracle: Vec<OracleResult>,
}

impl TableReport {
    pub fn passed(&self) -> usize {
        self.cells.iter().filter(|c| c.pass).count()
    }

    pub fn failures(&self) -> Vec<&CellResult> {
        self.cells.iter().filter(|c| !c.pass).collect()
    }

    pub fn all_pass(&self) -> bool {
        self.cells.iter().all(|c| c.pass) && self.oracle.iter().all(|o| o.pass)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.cells {
            let status = if c.pass { "PASS" } else { "FAIL" };
            match &c.estimate {
                Some(est) => {
                    let computed = format_fixed(&est.energy.value, c.cell.printed_decimals() + 4);
                    let note = match est.selected {
                        SelectedRoot::Real => "",
                        SelectedRoot::ComplexPair { .. } => " (real part of complex pair)",
                    };
                    let _ = writeln!(
                        out,
                        "{} printed={} computed={} dev={:+.2}{} {}",
                        c.cell.label(),
                        c.cell.value,
                        computed,
                        c.deviation_units().unwrap_or(f64::NAN),
                        note,
                        status
                    );
                }
                None => {
                    let _ = writeln!(
                        out,
                        "{} printed={} computed=none {}",
                        c.cell.label(),
                        c.cell.value,
                        status
                    );
                }
            }
        }
        for o in &self.oracle {
            let _ = writeln!(
                out,
                "T{} n={} g={} exact {} oracle={:.9} delta={:+.2e} {}",
                o.cell.table,
                o.cell.n,
                o.cell.g,
                o.cell.value,
                o.oracle,
                o.delta(),
                if o.pass { "PASS" } else { "FAIL" }
            );
        }
        let _ = writeln!(
            out,
            "table {}: {}/{} cells PASS",
            self.table,
            self.passed(),
            self.cells.len()
        );
        if !self.oracle.is_empty() {
            let ok = self.oracle.iter().filter(|o| o.pass).count();
            let _ = writeln!(
                out,
                "table {} oracle: {}/{} PASS",
                self.table,
                ok,
                self.oracle.len()
            );
        }
        out
    }
}

/// Recompute every order column of a table.
pub fn reproduce_table(id: u8, digits: u32) -> Result<TableReport> {
    reproduce_table_with(ReferenceDataset::embedded(), id, digits, false)
}

pub fn reproduce_table_with(
    data: &ReferenceDataset,
    id: u8,
    digits: u32,
    with_oracle: bool,
) -> Result<TableReport> {
    let cells = data.table(id);
    if cells.is_empty() {
        return Err(Error::UnknownTable(id));
    }
    // One coefficient table per (n, g), extended to the largest order used.
    let mut groups: Vec<(u32, String, usize)> = Vec::new();
    for c in &cells {
        if let Column::Order(order) = c.column {
            match groups.iter_mut().find(|(n, g, _)| *n == c.n && *g == c.g) {
                Some(group) => group.2 = group.2.max(order),
                None => groups.push((c.n, c.g.clone(), order)),
            }
        }
    }
    let tables: Vec<CoefficientTable> = std::thread::scope(|s| {
        let handles: Vec<_> = groups
            .iter()
            .map(|(n, g, max)| {
                s.spawn(move || {
                    CoefficientTable::build(*n, parse_decimal(g).expect("parsed above"), *max)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("table worker panicked"))
            .collect()
    });

    let order_cells: Vec<&ReferenceCell> = cells
        .iter()
        .copied()
        .filter(|c| matches!(c.column, Column::Order(_)))
        .collect();
    let results: Vec<Result<CellResult>> = std::thread::scope(|s| {
        let handles: Vec<_> = order_cells
            .iter()
            .map(|cell| {
                let table = groups
                    .iter()
                    .position(|(n, g, _)| *n == cell.n && *g == cell.g)
                    .map(|i| &tables[i])
                    .expect("group exists");
                s.spawn(move || evaluate_cell(cell, table, digits))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("cell worker panicked"))
            .collect()
    });
    let cells_out = results.into_iter().collect::<Result<Vec<_>>>()?;

    let oracle = if with_oracle {
        oracle_check(&cells)?
    } else {
        Vec::new()
    };
    Ok(TableReport {
        table: id,
        cells: cells_out,
        oracle,
    })
}

fn evaluate_cell(
    cell: &ReferenceCell,
    table: &CoefficientTable,
    digits: u32,
) -> Result<CellResult> {
    let Column::Order(order) = cell.column else {
        unreachable!("only order columns are recomputed")
    };
    match energy_from_table(table, order, digits, RootRule::default()) {
        Ok(est) => {
            let dev = (&est.energy.value - cell.value_exact()).abs();
            let pass = dev <= cell.tolerance();
            Ok(CellResult {
                cell: cell.clone(),
                estimate: Some(est),
                pass,
            })
        }
        Err(Error::NoPositiveRoot { .. }) => Ok(CellResult {
            cell: cell.clone(),
            estimate: None,
            pass: false,
        }),
        Err(e) => Err(e),
    }
}

/// Compare every `exact` cell against the diagonalisation oracle.
pub fn oracle_check(cells: &[&ReferenceCell]) -> Result<Vec<OracleResult>> {
    let mut out = Vec::new();
    for cell in cells.iter().filter(|c| c.column == Column::Exact) {
        let g = cell.g_exact().to_f64().unwrap_or(f64::NAN);
        let values = exact_eigenvalues(g, cell.n as usize + 1)?;
        let oracle = values[cell.n as usize];
        let tol = cell.tolerance().to_f64().unwrap_or(0.0);
        let printed = cell.value_exact().to_f64().unwrap_or(f64::NAN);
        // Half-unit slack on top of one unit absorbs the f64 rendering of the
        // printed decimal itself.
        let pass = (oracle - printed).abs() <= tol * (1.0 + 1e-9);
        out.push(OracleResult {
            cell: (*cell).clone(),
            oracle,
            pass,
        });
    }
    Ok(out)
}
