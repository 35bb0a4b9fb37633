//! `drinfeld`: command-line front end for the SL₂(F_q) / Drinfeld curve verifier.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use drinfeld_core::brauer::{brauer_character_sym, BrauerFn};
use drinfeld_core::classfn::{gelfand_graev, ClassFn};
use drinfeld_core::curve::{count_points, genus_report, smoothness_check};
use drinfeld_core::deligne_lusztig::dl_characters;
use drinfeld_core::fields::Mat2;
use drinfeld_core::verify::{self, check_supported, parse_selection, Format, VerifyOptions};
use drinfeld_core::Sl2Context;

#[derive(Parser)]
#[command(name = "drinfeld", version, about = "Exact checks for SL2(F_q) acting on the Drinfeld curve")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Text => Format::Text,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    Classes,
    Dl,
    Brauer,
    Gg,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification checks for one q.
    Verify {
        #[arg(long)]
        q: u32,
        /// Comma-separated check names (default: all).
        #[arg(long)]
        check: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Zero all timings so repeated runs are byte-identical.
        #[arg(long)]
        stable: bool,
        /// Allow q = 13 and q = 16.
        #[arg(long)]
        allow_large: bool,
        /// Also compare formula Brauer characters with explicit matrices.
        #[arg(long)]
        cross_check: bool,
    },
    /// List the check names accepted by `verify --check`, in report order.
    Checks,
    /// Dump a character table.
    Table {
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum)]
        what: Table,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        #[arg(long)]
        allow_large: bool,
    },
    /// Smoothness, genus and point counts of the curve.
    Curve {
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        #[arg(long)]
        allow_large: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Checks => {
            for name in verify::CheckName::ALL {
                println!("{name}");
            }
            Ok(0)
        }
        Command::Verify { q, check, format, out, stable, allow_large, cross_check } => {
            let selection = check.as_deref().map(parse_selection).transpose().map_err(|e| e.to_string())?;
            let options = VerifyOptions { allow_large, cross_check, stable };
            let report = verify::run_all(q, selection.as_ref(), options).map_err(|e| e.to_string())?;
            let mut sink: Box<dyn Write> = match &out {
                Some(path) => Box::new(BufWriter::new(
                    File::create(path).map_err(|e| format!("{}: {e}", path.display()))?,
                )),
                None => Box::new(io::stdout().lock()),
            };
            verify::emit(&report, format.into(), &mut sink).map_err(|e| e.to_string())?;
            sink.flush().map_err(|e| e.to_string())?;
            Ok(report.exit_code() as u8)
        }
        Command::Table { q, what, format, allow_large } => {
            let ctx = context(q, allow_large)?;
            let table = match what {
                Table::Classes => classes_table(&ctx),
                Table::Dl => dl_table(&ctx),
                Table::Brauer => brauer_table(&ctx)?,
                Table::Gg => gg_table(&ctx)?,
            };
            print_table(&table, format);
            Ok(0)
        }
        Command::Curve { q, format, allow_large } => {
            let ctx = context(q, allow_large)?;
            let report = genus_report(&ctx.tower).map_err(|e| e.to_string())?;
            let value = json!({
                "q": q,
                "smooth": smoothness_check(q).map_err(|e| e.to_string())?,
                "genus_degree_formula": report.plane,
                "genus_weil": report.weil,
                "genus_routes_agree": report.routes_agree(),
                "points_fq": count_points(&ctx.tower, 1).map_err(|e| e.to_string())?,
                "points_fq2": report.points_fq2,
            });
            match format {
                OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&value).unwrap()),
                OutputFormat::Text => {
                    for (k, v) in value.as_object().unwrap() {
                        println!("{k:<22} {v}");
                    }
                }
            }
            Ok(0)
        }
    }
}

fn context(q: u32, allow_large: bool) -> Result<Sl2Context, String> {
    check_supported(q, allow_large).map_err(|e| e.to_string())?;
    Sl2Context::new(q).map_err(|e| e.to_string())
}

/// Column headers plus rows of cells, ready for either output format.
struct TableData {
    title: String,
    headers: Vec<String>,
    rows: Vec<Vec<Value>>,
}

fn matrix_cell(m: &Mat2) -> Value {
    json!([[m.a.0, m.b.0], [m.c.0, m.d.0]])
}

fn class_columns(ctx: &Sl2Context, classes: &[usize]) -> Vec<String> {
    classes.iter().map(|&c| format!("c{c}/ord{}", ctx.classes.get(c).order)).collect()
}

fn classes_table(ctx: &Sl2Context) -> TableData {
    let rows = ctx
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            vec![
                json!(i),
                matrix_cell(ctx.group.element(c.representative)),
                json!(c.size),
                json!(c.order),
                json!(c.p_regular),
                json!(c.kind),
            ]
        })
        .collect();
    TableData {
        title: format!("conjugacy classes of SL2(F_{})", ctx.q()),
        headers: ["class", "representative", "size", "order", "p_regular", "kind"]
            .map(String::from)
            .to_vec(),
        rows,
    }
}

fn classfn_row(label: String, f: &ClassFn) -> Vec<Value> {
    std::iter::once(json!(label)).chain(f.values().iter().map(|v| json!(v.to_string()))).collect()
}

fn all_classes_headers(ctx: &Sl2Context) -> Vec<String> {
    let all: Vec<usize> = (0..ctx.classes.len()).collect();
    std::iter::once("character".to_string()).chain(class_columns(ctx, &all)).collect()
}

fn dl_table(ctx: &Sl2Context) -> TableData {
    let rows = dl_characters(ctx).iter().map(|r| classfn_row(format!("R_theta{}", r.j), &r.values)).collect();
    TableData {
        title: format!("Deligne-Lusztig characters, q = {} (z = exp(2 pi i / {}))", ctx.q(), ctx.cyclo.conductor()),
        headers: all_classes_headers(ctx),
        rows,
    }
}

fn gg_table(ctx: &Sl2Context) -> Result<TableData, String> {
    let rows = (1..=2)
        .map(|i| gelfand_graev(ctx, i).map(|g| classfn_row(format!("Gamma{i}"), &g)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    Ok(TableData {
        title: format!("Gelfand-Graev characters, q = {} (z = exp(2 pi i / {}))", ctx.q(), ctx.cyclo.conductor()),
        headers: all_classes_headers(ctx),
        rows,
    })
}

fn brauer_table(ctx: &Sl2Context) -> Result<TableData, String> {
    let rows = (0..ctx.q())
        .map(|i| {
            brauer_character_sym(ctx, i).map(|f: BrauerFn| {
                std::iter::once(json!(format!("phi_V{i}")))
                    .chain(f.values.iter().map(|v| json!(v.to_string())))
                    .collect()
            })
        })
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    Ok(TableData {
        title: format!("Brauer characters of Sym^i, q = {} (z = exp(2 pi i / {}))", ctx.q(), ctx.cyclo.conductor()),
        headers: std::iter::once("character".to_string())
            .chain(class_columns(ctx, ctx.classes.p_regular()))
            .collect(),
        rows,
    })
}

fn print_table(table: &TableData, format: OutputFormat) {
    match format {
        OutputFormat::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|r| Value::Object(table.headers.iter().cloned().zip(r.iter().cloned()).collect()))
                .collect();
            let doc = json!({ "title": table.title, "columns": table.headers, "rows": rows });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        OutputFormat::Text => {
            let cell = |v: &Value| match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let mut widths: Vec<usize> = table.headers.iter().map(|h| h.chars().count()).collect();
            for row in &table.rows {
                for (w, v) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell(v).chars().count());
                }
            }
            println!("{}", table.title);
            let line = |cells: Vec<String>| {
                let padded: Vec<String> =
                    cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
                println!("{}", padded.join("  ").trim_end());
            };
            line(table.headers.clone());
            for row in &table.rows {
                line(row.iter().map(cell).collect());
            }
        }
    }
}
