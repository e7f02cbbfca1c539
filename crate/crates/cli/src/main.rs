use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use riordan::expr::{eval_str, EvalError, Value};
use riordan::identities::{self, IdentityReport};
use riordan::sums::{sumray_recurrence_check, try_add, Sumray};
use riordan::{derflip, Matrix, Rat, RiordanArray, Seq, Series, DEFAULT_ORDER};
use serde_json::{json, Value as Json};

#[derive(Parser)]
#[command(name = "riordan", version, about = "Exact Riordan array calculator")]
struct Cli {
    /// Truncation order of every series.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER)]
    order: usize,
    /// Rows of matrices and terms of sequences to print.
    #[arg(long, global = true, default_value_t = 8)]
    rows: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// Expressions may be given as `-` to read the first line of standard input,
/// so that the `R(d; h)` line printed by one command feeds the next.
#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression and print it.
    Show { expr: String },
    /// Product of two arrays or two series.
    Mul { a: String, b: String },
    /// Inverse of an array, or reciprocal of a series.
    Inv { a: String },
    /// Sum of two arrays that share h.
    Add { a: String, b: String },
    /// Entrywise sum of two arrays with different h.
    Sumray { a: String, b: String },
    /// R(d, h) -> R(h', t d), applied `times` times.
    Der {
        a: String,
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
    /// R(d, h) -> R(h/t, t d).
    Flip { a: String },
    /// A-sequence of an array.
    Aseq { a: String },
    /// Z-sequence of an array.
    Zseq { a: String },
    /// Apply an array to a sequence, given as a series or as `a0,a1,...`.
    Transform { a: String, seq: String },
    /// Row sums and alternating row sums.
    Rowsums { a: String },
    /// Run the identity suite.
    Check {
        /// `all` or one identity name.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = identities::DEFAULT_N_MAX)]
        nmax: i64,
    },
}

enum Failure {
    Usage(String),
    Identity,
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Failure {
        Failure::Usage(e.to_string())
    }
}

impl From<riordan::Error> for Failure {
    fn from(e: riordan::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

type Outcome<T> = Result<T, Failure>;

struct Session {
    order: usize,
    rows: usize,
    format: Format,
}

fn read_arg(text: &str) -> Outcome<String> {
    if text != "-" {
        return Ok(text.to_string());
    }
    let mut buf = String::new();
    std::io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| Failure::Usage(format!("reading standard input: {e}")))?;
    buf.lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .map(str::to_string)
        .ok_or_else(|| Failure::Usage("standard input is empty".into()))
}

/// Writes to standard output; a closed pipe is not an error.
fn write_out(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|()| out.flush());
}

fn rat_cells(v: &[Rat]) -> Vec<String> {
    v.iter().map(Rat::to_string).collect()
}

fn matrix_json(m: &Matrix) -> Json {
    let rows: Vec<Vec<String>> = (0..m.size()).map(|i| rat_cells(&m.row(i)[..=i])).collect();
    json!(rows)
}

fn seq_csv(columns: &[&str], seqs: &[&Seq], len: usize) -> String {
    let mut out = format!("n,{}\n", columns.join(","));
    for i in 0..len {
        let n = seqs[0].offset + i as i64;
        let cells: Vec<String> = seqs.iter().map(|s| s.term(n).to_string()).collect();
        out.push_str(&format!("{n},{}\n", cells.join(",")));
    }
    out
}

impl Session {
    fn eval(&self, text: &str) -> Outcome<Value> {
        Ok(eval_str(&read_arg(text)?, self.order)?)
    }

    fn array(&self, text: &str) -> Outcome<RiordanArray> {
        Ok(self.eval(text)?.into_array()?)
    }

    fn window(&self, valid: usize) -> usize {
        self.rows.min(valid).min(self.order)
    }

    fn emit(&self, command: &str, text: String, json: Json, csv: String) {
        match self.format {
            Format::Text => write_out(&text),
            Format::Csv => write_out(&csv),
            Format::Json => {
                let doc = json!({ "command": command, "order": self.order, "result": json });
                write_out(&format!("{}\n", serde_json::to_string_pretty(&doc).expect("json")));
            }
        }
    }

    fn emit_series(&self, command: &str, s: &Series) {
        let seq = s.to_seq();
        self.emit(
            command,
            format!("{s}\n"),
            serde_json::to_value(s).expect("json"),
            seq_csv(&["coefficient"], &[&seq], seq.len()),
        );
    }

    fn emit_array(&self, command: &str, a: &RiordanArray) -> Outcome<()> {
        let m = a.matrix(self.window(a.valid_rows()))?;
        self.emit(command, format!("{a}\n{m}"), json!({ "array": a, "matrix": matrix_json(&m) }), m.to_csv());
        Ok(())
    }

    fn emit_sumray(&self, command: &str, y: &Sumray) -> Outcome<()> {
        let rows = self.window(y.valid_rows());
        let m = y.matrix(rows)?;
        let mut text = format!("{y}\n{m}");
        let mut doc = json!({ "sumray": y, "matrix": matrix_json(&m) });
        if rows + 2 <= y.valid_rows() {
            let report = sumray_recurrence_check(y, rows)?;
            text.push_str(&format!(
                "second-order recurrence on the {rows}x{rows} window: {}\n",
                if report.ok { "holds" } else { "fails" }
            ));
            doc["recurrence"] = serde_json::to_value(&report).expect("json");
        }
        self.emit(command, text, doc, m.to_csv());
        Ok(())
    }

    fn emit_value(&self, command: &str, v: &Value) -> Outcome<()> {
        match v {
            Value::Series(s) => {
                self.emit_series(command, s);
                Ok(())
            }
            Value::Array(a) => self.emit_array(command, a),
            Value::Sumray(y) => self.emit_sumray(command, y),
        }
    }

    fn emit_seq(&self, command: &str, s: &Seq) {
        let s = s.prefix(self.rows);
        let terms = rat_cells(&s.terms);
        self.emit(
            command,
            format!("{s}\n"),
            json!({ "offset": s.offset, "terms": terms }),
            seq_csv(&["value"], &[&s], s.len()),
        );
    }

    /// A sequence argument: comma-separated rationals, or a series
    /// expression whose coefficients are taken.
    fn sequence(&self, text: &str) -> Outcome<Seq> {
        let text = read_arg(text)?;
        if text.contains(',') {
            let mut terms = Vec::new();
            for part in text.split(',') {
                let v = eval_str(part.trim(), self.order)?.into_series()?;
                if v != Series::constant(v.coeff(0), self.order) {
                    return Err(Failure::Usage(format!("`{}` is not a constant", part.trim())));
                }
                terms.push(v.coeff(0));
            }
            return Ok(Seq::new(terms));
        }
        Ok(eval_str(&text, self.order)?.into_series()?.to_seq())
    }

    fn run(&self, command: &Command) -> Outcome<()> {
        match command {
            Command::Show { expr } => self.emit_value("show", &self.eval(expr)?),
            Command::Mul { a, b } => {
                let v = match (self.eval(a)?, self.eval(b)?) {
                    (Value::Array(x), Value::Array(y)) => Value::Array(x.multiply(&y)?),
                    (Value::Series(x), Value::Series(y)) => Value::Series(x.mul(&y)?),
                    (x, y) => {
                        return Err(Failure::Usage(format!("cannot multiply {} by {}", x.kind(), y.kind())))
                    }
                };
                self.emit_value("mul", &v)
            }
            Command::Inv { a } => {
                let v = match self.eval(a)? {
                    Value::Array(x) => Value::Array(x.inverse()?),
                    Value::Series(s) => Value::Series(s.reciprocal()?),
                    Value::Sumray(_) => return Err(Failure::Usage("a sumray has no inverse here".into())),
                };
                self.emit_value("inv", &v)
            }
            Command::Add { a, b } => {
                let (x, y) = (self.array(a)?, self.array(b)?);
                let sum = try_add(&x, &y).map_err(|e| Failure::Usage(format!("not a Riordan array: {e}")))?;
                self.emit_array("add", &sum)
            }
            Command::Sumray { a, b } => {
                let y = Sumray::new(self.array(a)?, self.array(b)?)?;
                self.emit_sumray("sumray", &y)
            }
            Command::Der { a, times } => {
                let r = derflip::der_k(&self.array(a)?, *times)?;
                self.emit_array("der", &r)
            }
            Command::Flip { a } => {
                let r = derflip::flip(&self.array(a)?)?;
                self.emit_array("flip", &r)
            }
            Command::Aseq { a } => {
                self.emit_seq("aseq", &self.array(a)?.a_sequence()?);
                Ok(())
            }
            Command::Zseq { a } => {
                self.emit_seq("zseq", &self.array(a)?.z_sequence()?);
                Ok(())
            }
            Command::Transform { a, seq } => {
                let r = self.array(a)?;
                self.emit_seq("transform", &r.transform(&self.sequence(seq)?)?);
                Ok(())
            }
            Command::Rowsums { a } => {
                let r = self.array(a)?;
                let (g, alt) = (r.row_sum_gf()?, r.alt_row_sum_gf()?);
                let (rows, alts) = (g.to_seq().prefix(self.rows), alt.to_seq().prefix(self.rows));
                self.emit(
                    "rowsums",
                    format!("row sums: {rows}\n  gf: {g}\nalternating: {alts}\n  gf: {alt}\n"),
                    json!({
                        "row_sum_gf": g,
                        "row_sums": rat_cells(&rows.terms),
                        "alt_row_sum_gf": alt,
                        "alt_row_sums": rat_cells(&alts.terms),
                    }),
                    seq_csv(&["row_sum", "alt_row_sum"], &[&rows, &alts], rows.len().min(alts.len())),
                );
                Ok(())
            }
            Command::Check { suite, nmax } => self.check(suite, *nmax),
        }
    }

    fn check(&self, suite: &str, nmax: i64) -> Outcome<()> {
        let reports =
            if suite == "all" { identities::run_all(nmax) } else { vec![identities::check(suite, nmax)?] };
        self.emit("check", summary_text(&reports), json!(reports), summary_csv(&reports));
        exit_code(&reports)
    }
}

fn summary_text(reports: &[IdentityReport]) -> String {
    let width = reports.iter().map(|r| r.id.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{:<width$}  n={}..{}  {status}  ({} checks)\n",
            r.id, r.n_min, r.n_max, r.checked
        ));
        if let Some(f) = &r.first_failure {
            out.push_str(&format!("    first failure at n={}: {}: {} != {}\n", f.n, f.label, f.lhs, f.rhs));
        }
        for note in r.notes.iter().filter(|n| n.starts_with("error")) {
            out.push_str(&format!("    {note}\n"));
        }
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    out.push_str(&format!("{passed}/{} identities pass\n", reports.len()));
    out
}

fn summary_csv(reports: &[IdentityReport]) -> String {
    let mut out = String::from("id,n_min,n_max,status,checked\n");
    for r in reports {
        let status = if r.passed() { "pass" } else { "fail" };
        out.push_str(&format!("{},{},{},{status},{}\n", r.id, r.n_min, r.n_max, r.checked));
    }
    out
}

fn exit_code(reports: &[IdentityReport]) -> Outcome<()> {
    if identities::all_passed(reports) {
        Ok(())
    } else {
        Err(Failure::Identity)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    if cli.order == 0 {
        eprintln!("error: --order must be at least 1");
        return ExitCode::from(2);
    }
    let session = Session { order: cli.order, rows: cli.rows, format: cli.format };
    match session.run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Identity) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use riordan::combinat::fib_std;
    use riordan::identities::fibo_with;

    #[test]
    fn identity_failure_maps_to_exit_1() {
        let bad = |n: i64| if n == 2 { 2.into() } else { fib_std(n) };
        let reports = vec![identities::check("odds_to_cat", 5).unwrap(), fibo_with(&bad, 10)];
        assert!(matches!(exit_code(&reports), Err(Failure::Identity)));
        assert!(exit_code(&reports[..1]).is_ok());
        assert!(summary_text(&reports).contains("first failure at n=1"));
    }
}
