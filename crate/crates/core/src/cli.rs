//! Command-line front end. Exit status 0 means success, 1 a negative finding
//! the caller asked to be told about, 2 bad input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::acceptance::run_suite;
use crate::cohomology::{
    cohomology_dims, e1_dimension_table, find_avoidance_pair, verify_avoidance_pair,
};
use crate::complexes::{check_theorem31, random_adds_complex, BoundedComplex, Verdict};
use crate::counterexamples::{chain_pair_counterexample, necessity_report};
use crate::error::Error;
use crate::exactla::Field;
use crate::gmod::GModule;
use crate::groups::{check_chain_condition, ElemAbGroup, Subgroup, SubgroupCollection};
use crate::json::{
    collection_from_json, from_str, to_string_pretty, AvoidanceJson, ComplexJson, ConditionJson,
    CounterexampleJson, GModuleJson, ReportJson, SubgroupJson,
};

#[derive(Parser, Debug)]
#[command(
    name = "permcx",
    version,
    about = "Exactness and contractibility of complexes of permutation modules"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Group as `p=<prime>,r=<rank>`.
    #[arg(long, value_parser = parse_group)]
    pub group: Option<(u32, usize)>,
    /// Degree of the coefficient field over F_p.
    #[arg(long = "field-ext", default_value_t = 1)]
    pub field_ext: u32,
    /// Write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List index-p containments in a subgroup collection.
    CheckCondition {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        subgroups: PathBuf,
    },
    /// Check a complex against the chain-condition theorem.
    VerifyComplex {
        #[command(flatten)]
        common: Common,
        /// Complex JSON; without it a random contractible complex is built from `--seed`.
        #[arg(long)]
        complex: Option<PathBuf>,
        /// Allowed stabilisers; defaults to those named by the tags.
        #[arg(long)]
        subgroups: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        expect_contractible: bool,
        #[arg(long)]
        expect_exact: bool,
    },
    /// Build the certified complex for an index-p pair E ⊂ F.
    Counterexample {
        #[command(flatten)]
        common: Common,
        #[arg(long, num_args = 2, value_names = ["E", "F"])]
        pair: Vec<PathBuf>,
    },
    /// One certified complex per index-p pair of a collection.
    Necessity {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        subgroups: PathBuf,
    },
    /// Classes u, v vanishing on the lower-rank members and regular on the top-rank members.
    RegularPair {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        subgroups: PathBuf,
    },
    /// Dimensions of H^j(G, M).
    Cohomology {
        #[command(flatten)]
        common: Common,
        /// `trivial`, `free`, or a module JSON path.
        #[arg(long)]
        module: String,
        #[arg(long = "max-degree")]
        max_degree: usize,
    },
    /// Table of dim H^j(G, C^i).
    E1Table {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        complex: PathBuf,
        #[arg(long = "max-degree")]
        max_degree: usize,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Criterion tag, name or number.
        #[arg(long)]
        filter: Option<String>,
        /// Directory for per-criterion JSON reports.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_group(s: &str) -> Result<(u32, usize), String> {
    let mut p = None;
    let mut r = None;
    for part in s.split(',') {
        match part.trim().split_once('=') {
            Some(("p", v)) => p = Some(v.parse::<u32>().map_err(|e| format!("p: {e}"))?),
            Some(("r", v)) => r = Some(v.parse::<usize>().map_err(|e| format!("r: {e}"))?),
            _ => return Err(format!("expected p=<prime>,r=<rank>, got {s:?}")),
        }
    }
    match (p, r) {
        (Some(p), Some(r)) => Ok((p, r)),
        _ => Err(format!("expected p=<prime>,r=<rank>, got {s:?}")),
    }
}

enum Failure {
    Negative(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<Option<String>, Failure>;

struct Ctx<'a> {
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn say(&mut self, text: &str) {
        let _ = writeln!(self.out, "{text}");
    }

    /// Prints text or JSON and writes the JSON to `--out` if requested.
    fn emit<T: Serialize>(
        &mut self,
        common: &Common,
        value: &T,
        text: &str,
    ) -> std::result::Result<(), Failure> {
        let json = to_string_pretty(value);
        if let Some(path) = &common.out {
            std::fs::write(path, format!("{json}\n"))
                .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
        }
        match common.format {
            Format::Json => self.say(&json),
            Format::Text => self.say(text.trim_end()),
        }
        Ok(())
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn parse_file<T: for<'de> serde::Deserialize<'de>>(path: &Path) -> std::result::Result<T, Failure> {
    from_str(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: crate::Result<T>) -> std::result::Result<T, Failure> {
    r.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn group_and_field(common: &Common) -> std::result::Result<(ElemAbGroup, Field), Failure> {
    let (p, r) = common
        .group
        .ok_or_else(|| Failure::Input("--group p=<prime>,r=<rank> is required".into()))?;
    let g = ElemAbGroup::new(p, r)?;
    let f = Field::standard(p, common.field_ext)?;
    Ok((g, f))
}

fn load_collection(
    g: &ElemAbGroup,
    path: &Path,
) -> std::result::Result<SubgroupCollection, Failure> {
    let items: Vec<SubgroupJson> = parse_file(path)?;
    in_file(path, collection_from_json(g, &items))
}

fn load_subgroup(g: &ElemAbGroup, path: &Path) -> std::result::Result<Subgroup, Failure> {
    let item: SubgroupJson = parse_file(path)?;
    in_file(path, item.to_subgroup(Some(g)))
}

fn load_complex(common: &Common, path: &Path) -> std::result::Result<BoundedComplex, Failure> {
    let cj: ComplexJson = parse_file(path)?;
    let gf = match common.group {
        Some(_) => Some(group_and_field(common)?),
        None => None,
    };
    let c = in_file(
        path,
        cj.to_complex(gf.as_ref().map(|x| &x.0), gf.as_ref().map(|x| &x.1)),
    )?;
    if let Some(v) = c.validate().first() {
        return Err(Failure::Input(format!("{}: {v}", path.display())));
    }
    Ok(c)
}

fn fmt_basis(s: &Subgroup) -> String {
    if s.is_trivial() {
        "1".into()
    } else {
        let gens: Vec<String> = s
            .basis()
            .iter()
            .map(|v| {
                format!(
                    "({})",
                    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
                )
            })
            .collect();
        format!("<{}>", gens.join(", "))
    }
}

fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            rows.iter()
                .map(|r| r[c].len())
                .chain([header[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let mut out = line(header);
    for r in rows {
        out.push('\n');
        out.push_str(&line(r));
    }
    out
}

fn check_condition(ctx: &mut Ctx, common: &Common, subgroups: &Path) -> Outcome {
    let (g, _) = group_and_field(common)?;
    let h = load_collection(&g, subgroups)?;
    let cond = check_chain_condition(&h);
    let mut text = format!(
        "chain condition: {}\n",
        if cond.ok { "holds" } else { "fails" }
    );
    for (e, f) in &cond.violations {
        text.push_str(&format!(
            "  index-p pair {} < {}\n",
            fmt_basis(e),
            fmt_basis(f)
        ));
    }
    ctx.emit(common, &ConditionJson::from_condition(&cond), &text)?;
    Ok(None)
}

fn tag_collection(c: &BoundedComplex) -> crate::Result<SubgroupCollection> {
    let mut members: Vec<Subgroup> = Vec::new();
    for t in c.terms() {
        for tag in t.tags().unwrap_or(&[]) {
            let s = tag.kind.stabilizer(c.group());
            if !members.contains(&s) {
                members.push(s);
            }
        }
    }
    members.sort_by(|a, b| (a.rank(), a.basis()).cmp(&(b.rank(), b.basis())));
    SubgroupCollection::new(c.group(), members)
}

fn verify_complex(
    ctx: &mut Ctx,
    common: &Common,
    complex: Option<&Path>,
    subgroups: Option<&Path>,
    seed: Option<u64>,
    expect_contractible: bool,
    expect_exact: bool,
) -> Outcome {
    let (c, generated) = match (complex, seed) {
        (Some(path), _) => (load_complex(common, path)?, false),
        (None, Some(seed)) => {
            let (g, f) = group_and_field(common)?;
            let h = match subgroups {
                Some(path) => load_collection(&g, path)?,
                None => SubgroupCollection::new(&g, vec![g.trivial_subgroup(), g.whole()])?,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mult: Vec<Vec<usize>> = (0..2)
                .map(|_| (0..h.len()).map(|_| rng.gen_range(0..=1)).collect())
                .collect();
            (random_adds_complex(&h, &f, 2, &mult, seed)?, true)
        }
        (None, None) => return Err(Failure::Input("give --complex <path> or --seed <n>".into())),
    };
    let h = match subgroups {
        Some(path) => load_collection(c.group(), path)?,
        None => tag_collection(&c)?,
    };
    let report = check_theorem31(&h, &c)?;
    let mut value = serde_json::to_value(ReportJson::from_report(&report)).expect("serializable");
    if generated {
        value["complex"] =
            serde_json::to_value(ComplexJson::from_complex(&c)).expect("serializable");
    }
    let membership: Vec<String> = ReportJson::from_report(&report).membership;
    let text = format!(
        "dims:         {:?}\nmembership:   {}\ncondition:    {}\nexact:        {} (homology {:?})\ncontractible: {}\nverdict:      {} ({})",
        c.dims(),
        membership.join(", "),
        if report.condition.ok { "holds" } else { "fails" },
        report.exactness.exact,
        report.exactness.homology_dims,
        report.contractibility.contractible,
        report.verdict.label(),
        report.verdict.reason(),
    );
    ctx.emit(common, &value, &text)?;
    if report.verdict == Verdict::TheoremViolationCandidate {
        return Err(Failure::Negative(
            "exact complex satisfying every hypothesis is not contractible".into(),
        ));
    }
    if expect_exact && !report.exactness.exact {
        return Err(Failure::Negative("complex is not exact".into()));
    }
    if expect_contractible && !report.contractibility.contractible {
        return Err(Failure::Negative("complex is not contractible".into()));
    }
    Ok(None)
}

fn counterexample(ctx: &mut Ctx, common: &Common, pair: &[PathBuf]) -> Outcome {
    let (g, f) = group_and_field(common)?;
    let e = load_subgroup(&g, &pair[0])?;
    let fsub = load_subgroup(&g, &pair[1])?;
    let report = chain_pair_counterexample(&e, &fsub, &f)?;
    let text = format!(
        "pair:         {} < {}\ndims:         {:?}\nexact:        {}\ncontractible: {}",
        fmt_basis(&e),
        fmt_basis(&fsub),
        report.complex.dims(),
        report.exact,
        report.contractible
    );
    ctx.emit(common, &CounterexampleJson::from_report(&report), &text)?;
    Ok(None)
}

fn necessity(ctx: &mut Ctx, common: &Common, subgroups: &Path) -> Outcome {
    let (g, f) = group_and_field(common)?;
    let h = load_collection(&g, subgroups)?;
    let reports = necessity_report(&h, &f)?;
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                fmt_basis(&r.violating_pair.0),
                fmt_basis(&r.violating_pair.1),
                format!("{:?}", r.complex.dims()),
                r.exact.to_string(),
                r.contractible.to_string(),
            ]
        })
        .collect();
    let header: Vec<String> = ["E", "F", "dims", "exact", "contractible"]
        .map(String::from)
        .to_vec();
    let text = if rows.is_empty() {
        "chain condition holds; no counterexamples".to_string()
    } else {
        table(&header, &rows)
    };
    let json: Vec<CounterexampleJson> = reports
        .iter()
        .map(CounterexampleJson::from_report)
        .collect();
    ctx.emit(common, &json, &text)?;
    Ok(None)
}

fn regular_pair(ctx: &mut Ctx, common: &Common, subgroups: &Path) -> Outcome {
    let (g, f) = group_and_field(common)?;
    let h = load_collection(&g, subgroups)?;
    let s = h
        .iter()
        .map(Subgroup::rank)
        .max()
        .ok_or_else(|| Failure::Input("empty subgroup collection".into()))?;
    let upper = SubgroupCollection::new(&g, h.iter().filter(|e| e.rank() == s).cloned().collect())?;
    let lower = SubgroupCollection::new(&g, h.iter().filter(|e| e.rank() < s).cloned().collect())?;
    let pair = find_avoidance_pair(&upper, &lower, &f)?;
    let check = verify_avoidance_pair(&pair.u, &pair.v, &upper, &lower)?;
    let text = format!(
        "u = {}\nv = {}\nfield: F_{}^{}\nverified: {}",
        pair.u,
        pair.v,
        pair.field_used.p,
        pair.field_used.e,
        check.is_ok()
    );
    ctx.emit(common, &AvoidanceJson::from_pair(&pair), &text)?;
    Ok(None)
}

fn load_module(common: &Common, spec: &str) -> std::result::Result<GModule, Failure> {
    match spec {
        "trivial" | "free" => {
            let (g, f) = group_and_field(common)?;
            Ok(if spec == "trivial" {
                GModule::trivial(&g, &f, 1)?
            } else {
                GModule::free(&g, &f, 1)?
            })
        }
        path => {
            let path = Path::new(path);
            let mj: GModuleJson = parse_file(path)?;
            let m = in_file(path, mj.to_module())?;
            if let Some((p, r)) = common.group {
                if (p, r) != (m.group().p(), m.group().rank()) {
                    return Err(Failure::Input(format!(
                        "{}: module is not over C_{p}^{r}",
                        path.display()
                    )));
                }
            }
            Ok(m)
        }
    }
}

fn cohomology(ctx: &mut Ctx, common: &Common, module: &str, max_degree: usize) -> Outcome {
    let m = load_module(common, module)?;
    let dims = cohomology_dims(&m, max_degree)?;
    let text = table(
        &["j".to_string(), "dim H^j".to_string()],
        &dims
            .iter()
            .enumerate()
            .map(|(j, d)| vec![j.to_string(), d.to_string()])
            .collect::<Vec<_>>(),
    );
    ctx.emit(common, &json!({ "dims": dims }), &text)?;
    Ok(None)
}

fn e1_table(ctx: &mut Ctx, common: &Common, complex: &Path, max_degree: usize) -> Outcome {
    let c = load_complex(common, complex)?;
    let t = e1_dimension_table(&c, max_degree)?;
    let mut header = vec!["j".to_string()];
    header.extend((0..c.terms().len()).map(|i| format!("C^{i}")));
    let rows: Vec<Vec<String>> = t
        .iter()
        .enumerate()
        .map(|(j, row)| {
            std::iter::once(j.to_string())
                .chain(row.iter().map(usize::to_string))
                .collect()
        })
        .collect();
    ctx.emit(common, &json!({ "table": t }), &table(&header, &rows))?;
    Ok(None)
}

fn selftest(ctx: &mut Ctx, filter: Option<&str>, out: Option<&Path>) -> Outcome {
    let results = run_suite(filter);
    if results.is_empty() {
        return Err(Failure::Input(format!(
            "no criterion matches {:?}",
            filter.unwrap_or("")
        )));
    }
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)
            .map_err(|e| Failure::Input(format!("cannot create {}: {e}", dir.display())))?;
        for r in &results {
            let path = dir.join(format!("criterion-{:02}-{}.json", r.id, r.name));
            let body =
                json!({ "id": r.id, "name": r.name, "passed": r.passed, "report": r.report });
            std::fs::write(&path, format!("{}\n", to_string_pretty(&body)))
                .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
        }
    }
    for r in &results {
        ctx.say(&r.line());
    }
    let failed: Vec<String> = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.name.to_string())
        .collect();
    if failed.is_empty() {
        Ok(Some(format!("{} criteria passed", results.len())))
    } else {
        Err(Failure::Negative(format!("failed: {}", failed.join(", "))))
    }
}

/// Parses `args` (including the program name), runs the command, and returns
/// the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let mut ctx = Ctx { out };
    let outcome = match &cli.command {
        Command::CheckCondition { common, subgroups } => {
            check_condition(&mut ctx, common, subgroups)
        }
        Command::VerifyComplex {
            common,
            complex,
            subgroups,
            seed,
            expect_contractible,
            expect_exact,
        } => verify_complex(
            &mut ctx,
            common,
            complex.as_deref(),
            subgroups.as_deref(),
            *seed,
            *expect_contractible,
            *expect_exact,
        ),
        Command::Counterexample { common, pair } => counterexample(&mut ctx, common, pair),
        Command::Necessity { common, subgroups } => necessity(&mut ctx, common, subgroups),
        Command::RegularPair { common, subgroups } => regular_pair(&mut ctx, common, subgroups),
        Command::Cohomology {
            common,
            module,
            max_degree,
        } => cohomology(&mut ctx, common, module, *max_degree),
        Command::E1Table {
            common,
            complex,
            max_degree,
        } => e1_table(&mut ctx, common, complex, *max_degree),
        Command::Selftest { filter, out } => selftest(&mut ctx, filter.as_deref(), out.as_deref()),
    };
    match outcome {
        Ok(note) => {
            if let Some(note) = note {
                ctx.say(&note);
            }
            0
        }
        Err(Failure::Negative(msg)) => {
            let _ = writeln!(err, "negative: {msg}");
            1
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_flag() {
        assert_eq!(parse_group("p=2,r=3"), Ok((2, 3)));
        assert!(parse_group("p=2").is_err());
        assert!(parse_group("q=2,r=1").is_err());
    }

    #[test]
    fn cohomology_of_trivial_module() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            [
                "permcx",
                "cohomology",
                "--group",
                "p=2,r=2",
                "--module",
                "trivial",
                "--max-degree",
                "5",
                "--format",
                "json",
            ],
            &mut out,
            &mut err,
        );
        assert_eq!(code, 0, "{}", String::from_utf8_lossy(&err));
        let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
        assert_eq!(v["dims"], json!([1, 2, 3, 4, 5, 6]));
    }

    #[test]
    fn missing_group_is_input_error() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        assert_eq!(
            run(
                [
                    "permcx",
                    "cohomology",
                    "--module",
                    "trivial",
                    "--max-degree",
                    "1"
                ],
                &mut out,
                &mut err
            ),
            2
        );
    }
}
