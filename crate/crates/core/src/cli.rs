//! Command-line front end. Every subcommand produces a [`Report`]; the exit
//! code is 0 on pass, 1 on a property violation or an unstable table entry,
//! and 2 on malformed input.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::category::io::{self, parse_rational, LoadOptions};
use crate::category::{
    hom_homology, is_homology_unit, verify_ainfty_relations, verify_degree_convention, AInfty,
    AInftyStructure, GenId, ObjIdx,
};
use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::filtration::verify_filtration_subadditivity;
use crate::fixtures::{
    contractible_pair_category, disk_with_stops_category, ex_category, graded_a3_category,
    linear_quiver_category, retraction_toy, twisted_a3_variants, unit_category, DiskModel,
};
use crate::functors::io::{functor_to_json_string, load_functor};
use crate::functors::{
    build_wlim, finite_intersection_sub_wlim, strict_inclusion, verify_functor_equations,
    verify_homotopy, AInftyFunctor,
};
use crate::hochschild::{
    hochschild_homology, length_k_class_action, verify_action_filtration,
    verify_hochschild_square_zero, HochschildWord,
};
use crate::quotient::{
    build_quotient, check_contractible_subcategory, quotient_hom_homology, verify_bar_square_zero,
    QuotientCategory, QuotientWord,
};
use crate::report::{HomologyTable, Violation};
use crate::retraction::{
    inclusion_homology, verify_compact_deformation_property, verify_retraction_hypotheses,
    RetractionHomotopy,
};

#[derive(Debug, Parser)]
#[command(
    name = "ainfty",
    version,
    about = "Checks and homology for finite filtered A∞ categories over GF(2)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Exit 0 even when table entries are unstable.
    #[arg(long, global = true)]
    pub allow_unstable: bool,
    /// Load categories whose degrees admit operations above their max arity.
    #[arg(long, global = true)]
    pub waive_arity_check: bool,
}

/// A category is a path to an interchange file or `fixture:<name>`.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// A∞ relations, degree convention, filtration subadditivity and units.
    Verify {
        category: String,
        #[arg(long, default_value_t = 6)]
        max_arity: usize,
    },
    /// Homology of every hom space.
    Homology {
        category: String,
        #[arg(long, default_value = "-5..5", value_parser = parse_window, allow_hyphen_values = true)]
        degrees: RangeInclusive<i64>,
    },
    /// Truncated Hochschild homology and `δ² = 0`.
    Hochschild {
        category: String,
        #[arg(long, default_value_t = 4)]
        max_length: usize,
        #[arg(long, default_value = "-5..1", value_parser = parse_window, allow_hyphen_values = true)]
        degrees: RangeInclusive<i64>,
    },
    /// Shifted action: filtration check, or the length-k action of one cycle.
    Action {
        category: String,
        #[arg(long, default_value = "0", value_parser = parse_epsilon)]
        epsilon: BigRational,
        #[arg(long, default_value_t = 3)]
        max_length: usize,
        /// Hochschild cycle: words of generator names joined by `,`, terms by `+`.
        #[arg(long)]
        cycle: Option<String>,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Quotient by a full subcategory: `μ¹μ¹ = 0`, contractibility and hom homology.
    Quotient {
        category: String,
        /// Comma-separated object names.
        #[arg(long, default_value = "")]
        subcat: String,
        #[arg(long, default_value_t = 4)]
        max_word_length: usize,
        #[arg(long, default_value = "-5..0", value_parser = parse_window, allow_hyphen_values = true)]
        degrees: RangeInclusive<i64>,
        /// Write the materialized quotient here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Retraction onto the bottom filtration level of a quotient.
    Retract {
        category: String,
        #[arg(long, default_value = "")]
        subcat: String,
        /// Stop name; defaults to the only stop.
        #[arg(long)]
        stop: Option<String>,
        #[arg(long, default_value_t = 4)]
        max_word_length: usize,
        /// JSON list of `{input, outputs}` over quotient word names.
        #[arg(long)]
        delta: Option<PathBuf>,
        #[arg(long, default_value = "-4..0", value_parser = parse_window, allow_hyphen_values = true)]
        degrees: RangeInclusive<i64>,
    },
    /// Homotopy limit of the identity tower.
    Wlim {
        category: String,
        #[arg(long, default_value_t = 4)]
        bound: usize,
        #[arg(long, default_value_t = 4)]
        max_arity: usize,
        /// Drop `Γ(N, γ)` for generators of nonzero weight.
        #[arg(long)]
        finite_only: bool,
        #[arg(long, default_value = "-2..1", value_parser = parse_window, allow_hyphen_values = true)]
        degrees: RangeInclusive<i64>,
    },
    /// Emit a fixture interchange file.
    Fixture {
        /// Fixture name, or `functor:<twist>` for a gauge functor.
        name: Option<String>,
        /// Disk model description.
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Functor equations up to the given arity.
    FunctorCheck {
        source: String,
        target: String,
        functor: PathBuf,
        #[arg(long, default_value_t = 5)]
        max_arity: usize,
    },
    /// Homotopy equations between two functors up to the given arity.
    HomotopyCheck {
        source: String,
        target: String,
        first: PathBuf,
        second: PathBuf,
        homotopy: PathBuf,
        #[arg(long, default_value_t = 5)]
        max_arity: usize,
    },
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct NamedTable {
    pub label: String,
    #[serde(flatten)]
    pub table: HomologyTable,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub violations: Vec<Violation>,
    pub tables: Vec<NamedTable>,
    pub values: BTreeMap<String, String>,
    pub timing_ms: u64,
}

impl Report {
    fn table(&mut self, label: impl Into<String>, table: HomologyTable) {
        self.tables.push(NamedTable {
            label: label.into(),
            table,
        });
    }

    fn value(&mut self, key: impl Into<String>, v: impl ToString) {
        self.values.insert(key.into(), v.to_string());
    }

    fn has_unstable(&self) -> bool {
        self.tables.iter().any(|t| !t.table.all_stable())
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("command: {}\n", self.command.join(" "));
        s += &format!("result: {}\n", if self.pass { "PASS" } else { "FAIL" });
        if let Some(e) = &self.error {
            s += &format!("error: {e}\n");
        }
        s += &format!("violations: {}\n", self.violations.len());
        for v in &self.violations {
            s += &format!("  {v}\n");
        }
        for t in &self.tables {
            s += &format!("{}:\n{}", t.label, t.table);
        }
        for (k, v) in &self.values {
            s += &format!("{k}: {v}\n");
        }
        s += &format!("time: {} ms\n", self.timing_ms);
        s
    }
}

/// Delta file entry for `retract`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct DeltaEntryFile {
    pub input: String,
    pub outputs: Vec<String>,
}

fn parse_window(s: &str) -> std::result::Result<RangeInclusive<i64>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("`{s}` is not of the form a..b"))?;
    let a: i64 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad lower bound in `{s}`"))?;
    let b: i64 = b
        .trim()
        .parse()
        .map_err(|_| format!("bad upper bound in `{s}`"))?;
    if a > b {
        return Err(format!("empty window `{s}`"));
    }
    Ok(a..=b)
}

fn parse_epsilon(s: &str) -> std::result::Result<BigRational, String> {
    let e = parse_rational(s).map_err(|e| e.to_string())?;
    if e < BigRational::from_integer(0.into()) {
        return Err("epsilon must be nonnegative".into());
    }
    Ok(e)
}

/// Names accepted by `fixture` and by `fixture:<name>` category arguments.
pub const FIXTURE_NAMES: &str = "unit, ex, a<n>, graded-a3, twist-ba, twist-ae, twist-bae, \
     disk<s>w<W>, toy, contractible-pair";

pub fn fixture_by_name(name: &str) -> Result<AInftyStructure> {
    let unknown = || Error::Parse(format!("unknown fixture `{name}`; known: {FIXTURE_NAMES}"));
    match name {
        "unit" => return Ok(unit_category()),
        "ex" => return Ok(ex_category()),
        "graded-a3" => return Ok(graded_a3_category()),
        "toy" => return Ok(retraction_toy().category),
        "contractible-pair" => return Ok(contractible_pair_category()),
        _ => {}
    }
    if let Some(v) = twisted_a3_variants()?.into_iter().find(|v| v.name == name) {
        return Ok(v.twisted);
    }
    if let Some(n) = name.strip_prefix('a') {
        let n: usize = n.parse().map_err(|_| unknown())?;
        if n == 0 {
            return Err(unknown());
        }
        return Ok(linear_quiver_category(n));
    }
    if let Some(rest) = name.strip_prefix("disk") {
        let (s, w) = rest.split_once('w').ok_or_else(unknown)?;
        let s: usize = s.parse().map_err(|_| unknown())?;
        let w: usize = w.parse().map_err(|_| unknown())?;
        return disk_with_stops_category(&DiskModel::necklace(s, w));
    }
    Err(unknown())
}

pub fn load_category(spec: &str, opts: LoadOptions) -> Result<AInftyStructure> {
    match spec.strip_prefix("fixture:") {
        Some(name) => fixture_by_name(name),
        None => io::load(spec, opts),
    }
}

fn objects(c: &AInftyStructure, list: &str) -> Result<Vec<ObjIdx>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| c.object(s))
        .collect()
}

fn parse_cycle(c: &AInftyStructure, text: &str) -> Result<Chain<HochschildWord<GenId>>> {
    let mut out = Chain::zero();
    for term in text.split('+') {
        let entries = term
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|n| c.gen(n))
            .collect::<Result<Vec<_>>>()?;
        if entries.is_empty() {
            return Err(Error::Parse(format!("empty term in `{text}`")));
        }
        out.toggle(HochschildWord::new(c, entries)?);
    }
    Ok(out)
}

fn parse_delta(
    q: &QuotientCategory<'_, AInftyStructure>,
    entries: &[DeltaEntryFile],
) -> Result<RetractionHomotopy<QuotientWord<GenId>>> {
    let n = q.objects().len();
    let mut by_name = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            for w in q.hom_basis_extended(x, y) {
                by_name.insert(q.name(&w), w);
            }
        }
    }
    let word = |s: &str| {
        by_name
            .get(s)
            .cloned()
            .ok_or_else(|| Error::UnknownGenerator(s.to_string()))
    };
    let mut delta = RetractionHomotopy::new();
    for e in entries {
        let input = word(&e.input)?;
        let mut out = Chain::zero();
        for o in &e.outputs {
            let v = word(o)?;
            if q.source(&v) != q.source(&input) || q.target(&v) != q.target(&input) {
                return Err(Error::SourceTargetMismatch(format!(
                    "`{o}` and `{}` have different endpoints",
                    e.input
                )));
            }
            out.toggle(v);
        }
        delta.set(input, out);
    }
    Ok(delta)
}

fn pair_label(c: &impl AInfty, prefix: &str, x: ObjIdx, y: ObjIdx) -> String {
    format!("{prefix}({},{})", c.objects()[x], c.objects()[y])
}

fn execute(command: &Command, opts: LoadOptions, report: &mut Report) -> Result<()> {
    match command {
        Command::Verify {
            category,
            max_arity,
        } => {
            let c = load_category(category, opts)?;
            report
                .violations
                .extend(verify_ainfty_relations(&c, *max_arity));
            report.violations.extend(verify_degree_convention(&c));
            report
                .violations
                .extend(verify_filtration_subadditivity(&c, *max_arity));
            for (&x, u) in c.units() {
                if !is_homology_unit(&c, u, x)? {
                    report.violations.push(Violation::new(
                        c.name(u),
                        format!("not a homology unit of `{}`", c.objects()[x]),
                    ));
                }
            }
            report.value("generators", c.generators().len());
            report.value("checked_arity", max_arity);
        }
        Command::Homology { category, degrees } => {
            let c = load_category(category, opts)?;
            let n = c.objects().len();
            for x in 0..n {
                for y in 0..n {
                    let dims = hom_homology(&c, x, y, degrees.clone())?;
                    report.table(pair_label(&c, "hom", x, y), HomologyTable::exact(&dims));
                }
            }
        }
        Command::Hochschild {
            category,
            max_length,
            degrees,
        } => {
            let c = load_category(category, opts)?;
            report
                .violations
                .extend(verify_hochschild_square_zero(&c, *max_length));
            report.table(
                format!("HH (length ≤ {max_length})"),
                hochschild_homology(&c, *max_length, degrees.clone())?,
            );
        }
        Command::Action {
            category,
            epsilon,
            max_length,
            cycle,
            k,
        } => {
            let c = load_category(category, opts)?;
            report.value("epsilon", io::format_rational(epsilon));
            match cycle {
                None => {
                    report
                        .violations
                        .extend(verify_action_filtration(&c, epsilon, *max_length))
                }
                Some(text) => {
                    let x = parse_cycle(&c, text)?;
                    match length_k_class_action(&c, &x, *k, epsilon) {
                        Ok(v) => report.value("action", v),
                        Err(Error::NotRepresentableAtLengthK { k }) => {
                            report.value("action", "unrepresentable");
                            report.violations.push(Violation::new(
                                text.clone(),
                                format!("class is not representable with words of length ≤ {k}"),
                            ));
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
        }
        Command::Quotient {
            category,
            subcat,
            max_word_length,
            degrees,
            out,
        } => {
            let a = load_category(category, opts)?;
            let b = objects(&a, subcat)?;
            let q = QuotientCategory::new(&a, &b, *max_word_length)?;
            let (violations, skipped) = verify_bar_square_zero(&q);
            report.violations.extend(violations);
            report.value("square_zero_skipped", skipped);
            for (x, exact) in check_contractible_subcategory(&q, &b)? {
                report.value(format!("unit_exact({})", a.objects()[x]), exact);
            }
            let n = a.objects().len();
            for x in 0..n {
                for y in 0..n {
                    let t = quotient_hom_homology(&q, x, y, degrees.clone())?;
                    report.table(pair_label(&a, "hom_Q", x, y), t);
                }
            }
            if let Some(path) = out {
                io::save(&build_quotient(&a, &b, *max_word_length)?, path)?;
            }
        }
        Command::Retract {
            category,
            subcat,
            stop,
            max_word_length,
            delta,
            degrees,
        } => {
            let a = load_category(category, opts)?;
            let stop = match stop {
                Some(s) => a
                    .stops()
                    .iter()
                    .position(|t| t == s)
                    .ok_or_else(|| Error::Parse(format!("unknown stop `{s}`")))?,
                None if a.stops().len() == 1 => 0,
                None => return Err(Error::Parse("--stop is required".into())),
            };
            let b = objects(&a, subcat)?;
            let q = QuotientCategory::new(&a, &b, *max_word_length)?;
            let delta = match (delta, category.as_str()) {
                (Some(path), _) => {
                    let entries: Vec<DeltaEntryFile> =
                        serde_json::from_str(&std::fs::read_to_string(path)?)?;
                    parse_delta(&q, &entries)?
                }
                (None, "fixture:toy") => {
                    let toy = retraction_toy();
                    let tq = toy.quotient(*max_word_length);
                    let d = toy.delta(&tq);
                    let entries: Vec<DeltaEntryFile> = d
                        .entries()
                        .into_iter()
                        .map(|(w, out)| DeltaEntryFile {
                            input: tq.name(w),
                            outputs: out.iter().map(|v| tq.name(v)).collect(),
                        })
                        .collect();
                    parse_delta(&q, &entries)?
                }
                (None, _) => return Err(Error::Parse("--delta is required".into())),
            };
            let n = a.objects().len();
            let mut basis = Vec::new();
            for x in 0..n {
                for y in 0..n {
                    basis.extend(q.hom_basis(x, y));
                }
            }
            report
                .violations
                .extend(verify_retraction_hypotheses(&q, &delta, stop, &basis));
            let deformation = verify_compact_deformation_property(&q, &delta, stop, &basis)?;
            report.value("deformation_checked", deformation.checked);
            report.value("deformation_max_steps", deformation.steps);
            report.violations.extend(deformation.violations);
            let outside: Vec<ObjIdx> = (0..n).filter(|x| !b.contains(x)).collect();
            for &x in &outside {
                for &y in &outside {
                    let rows = inclusion_homology(&q, x, y, stop, degrees.clone())?;
                    let pick = |f: fn(&crate::retraction::InclusionRow) -> usize| HomologyTable {
                        entries: rows
                            .iter()
                            .map(|r| crate::report::HomologyEntry {
                                degree: r.degree,
                                dim: f(r),
                                stable: r.stable,
                            })
                            .collect(),
                    };
                    report.table(pair_label(&a, "bottom", x, y), pick(|r| r.bottom_dim));
                    report.table(pair_label(&a, "hom_Q", x, y), pick(|r| r.full_dim));
                    for r in rows.iter().filter(|r| r.stable && !r.is_isomorphism()) {
                        report.violations.push(Violation::new(
                            format!("{} H^{}", pair_label(&a, "hom_Q", x, y), r.degree),
                            format!(
                                "inclusion of dims {} → {} has rank {}",
                                r.bottom_dim, r.full_dim, r.rank
                            ),
                        ));
                    }
                }
            }
        }
        Command::Wlim {
            category,
            bound,
            max_arity,
            finite_only,
            degrees,
        } => {
            let c = load_category(category, opts)?;
            let w = if *finite_only {
                finite_intersection_sub_wlim(&c, *bound)?
            } else {
                build_wlim(&c, *bound)?
            };
            report
                .violations
                .extend(verify_ainfty_relations(&w, *max_arity));
            report.violations.extend(verify_degree_convention(&w));
            let inc = strict_inclusion(&c, &w);
            report
                .violations
                .extend(verify_functor_equations(&c, &w, &inc, *max_arity));
            let n = c.objects().len();
            for x in 0..n {
                for y in 0..n {
                    let dims = hom_homology(&w, x, y, degrees.clone())?;
                    report.table(pair_label(&c, "hom_W", x, y), HomologyTable::exact(&dims));
                }
            }
        }
        Command::Fixture { .. } => unreachable!("handled by run"),
        Command::FunctorCheck {
            source,
            target,
            functor,
            max_arity,
        } => {
            let s = load_category(source, opts)?;
            let t = load_category(target, opts)?;
            let f = load_functor(functor, &s, &t)?;
            report
                .violations
                .extend(verify_functor_equations(&s, &t, &f, *max_arity));
        }
        Command::HomotopyCheck {
            source,
            target,
            first,
            second,
            homotopy,
            max_arity,
        } => {
            let s = load_category(source, opts)?;
            let t = load_category(target, opts)?;
            let fa = load_functor(first, &s, &t)?;
            let fb = load_functor(second, &s, &t)?;
            let h = load_functor(homotopy, &s, &t)?;
            report
                .violations
                .extend(verify_homotopy(&s, &t, &fa, &fb, &h, *max_arity));
        }
    }
    Ok(())
}

fn fixture_text(name: Option<&str>, model: Option<&PathBuf>) -> Result<String> {
    if let Some(path) = model {
        let m: DiskModel = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        return Ok(io::to_json_string(&disk_with_stops_category(&m)?));
    }
    let name = name.ok_or_else(|| Error::Parse("a fixture name or --model is required".into()))?;
    if let Some(twist) = name.strip_prefix("functor:") {
        let v = twisted_a3_variants()?
            .into_iter()
            .find(|v| v.name == twist)
            .ok_or_else(|| Error::Parse(format!("unknown twist `{twist}`")))?;
        let f = AInftyFunctor::from_gauge(&v.base, &v.gauge);
        return Ok(functor_to_json_string(&v.base, &v.twisted, &f));
    }
    Ok(io::to_json_string(&fixture_by_name(name)?))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotACycle(_)
        | Error::DegreeMismatch { .. }
        | Error::NonTerminating { .. }
        | Error::NotASubcomplex(_) => 1,
        _ => 2,
    }
}

/// Runs one command line and returns the exit code and standard output.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let command: Vec<String> = argv
        .iter()
        .map(|s| s.to_string_lossy().into_owned())
        .collect();
    if let Command::Fixture { name, model, out } = &cli.command {
        return match fixture_text(name.as_deref(), model.as_ref()) {
            Ok(text) => match out {
                None => (0, text),
                Some(path) => match std::fs::write(path, &text) {
                    Ok(()) => (0, String::new()),
                    Err(e) => (2, format!("error: {e}\n")),
                },
            },
            Err(e) => (2, format!("error: {e}\n")),
        };
    }
    let opts = LoadOptions {
        waive_arity_check: cli.common.waive_arity_check,
    };
    let start = Instant::now();
    let mut report = Report {
        command,
        ..Report::default()
    };
    let code = match execute(&cli.command, opts, &mut report) {
        Ok(()) => {
            report.violations.sort();
            let unstable = report.has_unstable() && !cli.common.allow_unstable;
            report.pass = report.violations.is_empty() && !unstable;
            if report.violations.is_empty() && unstable {
                let degrees: BTreeSet<String> = report
                    .tables
                    .iter()
                    .filter(|t| !t.table.all_stable())
                    .map(|t| t.label.clone())
                    .collect();
                report.value(
                    "unstable",
                    degrees.into_iter().collect::<Vec<_>>().join(" "),
                );
            }
            if report.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            report.error = Some(e.to_string());
            exit_code(&e)
        }
    };
    report.timing_ms = start.elapsed().as_millis() as u64;
    let text = if cli.common.json {
        let mut s = serde_json::to_string_pretty(&report).expect("reports always serialize");
        s.push('\n');
        s
    } else {
        report.to_text()
    };
    (code, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows() {
        assert_eq!(parse_window("-5..0").unwrap(), -5..=0);
        assert!(parse_window("3..1").is_err());
        assert!(parse_window("x").is_err());
    }

    #[test]
    fn fixture_names() {
        for n in ["unit", "a3", "disk2w1", "twist-ae", "toy"] {
            fixture_by_name(n).unwrap();
        }
        assert!(fixture_by_name("a0").is_err());
        assert!(fixture_by_name("nope").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["ainfty", "verify", "fixture:a2"]).0, 0);
        assert_eq!(run(["ainfty", "verify", "fixture:nope"]).0, 2);
        assert_eq!(run(["ainfty", "bogus"]).0, 2);
    }
}
