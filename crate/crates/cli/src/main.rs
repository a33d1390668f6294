//! `rharm`: command-line front end for reflection-harmonics.

mod render;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use reflection_harmonics::arith::RatPoly;
use reflection_harmonics::characters::{
    character_table, conjugacy_classes, fake_degrees, verify_fake_degree_formula, CharacterTable, FakeDegreeReport,
};
use reflection_harmonics::factorisation::{Factorisation, FactorisationReport};
use reflection_harmonics::group::{GroupFile, ReflectionGroup, DEFAULT_GROUP_CAP};
use reflection_harmonics::invariants::{harmonic_basis, invariant_degrees, poincare_from_degrees, GradedBasis, HarmonicMethod};
use reflection_harmonics::poly::{MPoly, SquareMatrix};
use reflection_harmonics::weyl::{Counting, CountingReport, SubsystemSpec, TwistData};
use reflection_harmonics::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "rharm", version, about = "Invariants, harmonics and factorisations of finite reflection groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest group the closure may build.
    #[arg(long, global = true, default_value_t = DEFAULT_GROUP_CAP)]
    max_order: usize,
    /// Largest harmonic degree N = deg Π accepted.
    #[arg(long, global = true, default_value_t = 40)]
    max_degree: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Derivative,
    Perp,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GroupArgs {
    /// Catalog name: cyclic:e, gmpn:m:p:n or weyl:T:r.
    #[arg(long)]
    catalog: Option<String>,
    /// JSON file holding {"catalog": ...} or {"generators": [...]}.
    #[arg(long, value_name = "FILE")]
    generators: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, reflections, hyperplanes, Π, degrees and Poincaré polynomial.
    Group(GroupArgs),
    /// A basis of the harmonic polynomials, degree by degree.
    Harmonics {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value = "derivative")]
        method: Method,
    },
    /// Verify H(G) ≅ H(G') ⊗ H(G)^{G'} for the subgroup generated by the listed reflections.
    Factorise {
        #[command(flatten)]
        group: GroupArgs,
        /// Comma-separated indices into the reflection list printed by `group`.
        #[arg(long, value_delimiter = ',', required = true)]
        subgroup_reflections: Vec<usize>,
    },
    /// Character table and fake degrees; with a subgroup, also the fixed-point Poincaré polynomial three ways.
    FakeDegrees {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_delimiter = ',')]
        subgroup_reflections: Option<Vec<usize>>,
    },
    /// Count F-stable conjugates of a maximal-rank subgroup.
    Count {
        /// Preset (C2:long-A1A1, C3:A1C2, G2:A2, T:full), inline JSON, or a JSON file.
        subsystem: String,
        /// JSON file holding {"F0": matrix, "g": [values per F-class]}.
        #[arg(long, value_name = "FILE")]
        twist: Option<PathBuf>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectionSummary {
    pub index: usize,
    pub matrix: SquareMatrix,
    pub hyperplane: usize,
    pub eigenvalue: reflection_harmonics::arith::CycloScalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplaneSummary {
    pub linear_form: MPoly,
    pub root: MPoly,
    pub e: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub name: String,
    pub dim: usize,
    pub order: usize,
    pub num_reflections: usize,
    pub reflections: Vec<ReflectionSummary>,
    pub hyperplanes: Vec<HyperplaneSummary>,
    pub pi: MPoly,
    /// Absent when the group is not generated by reflections.
    pub degrees: Option<Vec<u32>>,
    pub poincare: Option<RatPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarmonicsOutput {
    pub group: String,
    pub method: String,
    pub degrees: Vec<u32>,
    pub poincare: RatPoly,
    pub basis: GradedBasis,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FakeDegreesOutput {
    pub group: String,
    pub table: CharacterTable,
    pub fake_degrees: Vec<RatPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_points: Option<FakeDegreeReport>,
}

pub enum Output {
    Group(GroupSummary),
    Harmonics(HarmonicsOutput),
    Factorise(FactorisationReport),
    FakeDegrees(FakeDegreesOutput),
    Count(CountingReport),
}

impl Output {
    fn json(&self) -> String {
        let s = match self {
            Output::Group(x) => serde_json::to_string_pretty(x),
            Output::Harmonics(x) => serde_json::to_string_pretty(x),
            Output::Factorise(x) => serde_json::to_string_pretty(x),
            Output::FakeDegrees(x) => serde_json::to_string_pretty(x),
            Output::Count(x) => serde_json::to_string_pretty(x),
        };
        s.expect("outputs serialise")
    }

    fn text(&self) -> String {
        match self {
            Output::Group(x) => render::group(x),
            Output::Harmonics(x) => render::harmonics(x),
            Output::Factorise(x) => render::factorise(x),
            Output::FakeDegrees(x) => render::fake_degrees(x),
            Output::Count(x) => render::count(x),
        }
    }

    /// Whether every check carried by the output passed.
    fn passed(&self) -> bool {
        match self {
            Output::Factorise(r) => r.passed(),
            Output::FakeDegrees(x) => x.fixed_points.as_ref().is_none_or(|r| r.agree),
            _ => true,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_group(args: &GroupArgs, cap: usize) -> Result<ReflectionGroup> {
    let file = match (&args.catalog, &args.generators) {
        (Some(name), _) => GroupFile::Catalog { catalog: name.clone() },
        (None, Some(path)) => GroupFile::parse(&read(path)?)?,
        (None, None) => return Err(Error::Usage("give --catalog or --generators".into())),
    };
    let name = args
        .generators
        .as_ref()
        .and_then(|p| p.file_stem())
        .map_or_else(|| "G".to_string(), |s| s.to_string_lossy().into_owned());
    file.build(&name, cap)
}

fn check_degree(g: &ReflectionGroup, cap: u32) -> Result<()> {
    let n = g.skew_product().homogeneous_degree().unwrap_or(0);
    if n > cap {
        return Err(Error::CapExceeded {
            what: format!("harmonic degree N = {n}"),
            cap: cap as usize,
        });
    }
    Ok(())
}

fn subgroup(g: &ReflectionGroup, refl: &[usize]) -> Result<ReflectionGroup> {
    g.reflection_subgroup(refl)
}

fn group_summary(g: &ReflectionGroup) -> GroupSummary {
    let degrees = invariant_degrees(g).ok();
    GroupSummary {
        name: g.name().to_string(),
        dim: g.dim(),
        order: g.order(),
        num_reflections: g.num_reflections(),
        reflections: g
            .reflections()
            .iter()
            .enumerate()
            .map(|(index, r)| ReflectionSummary {
                index,
                matrix: g.element(r.element).clone(),
                hyperplane: r.hyperplane,
                eigenvalue: r.eigenvalue.clone(),
            })
            .collect(),
        hyperplanes: g
            .hyperplanes()
            .iter()
            .map(|h| HyperplaneSummary {
                linear_form: h.linear_form.clone(),
                root: h.root.clone(),
                e: h.e,
            })
            .collect(),
        pi: g.skew_product().clone(),
        poincare: degrees.as_deref().map(poincare_from_degrees),
        degrees,
    }
}

fn run(cli: &Cli) -> Result<Output> {
    let cap = cli.max_order;
    Ok(match &cli.command {
        Command::Group(args) => Output::Group(group_summary(&load_group(args, cap)?)),
        Command::Harmonics { group, method } => {
            let g = load_group(group, cap)?;
            check_degree(&g, cli.max_degree)?;
            let degrees = invariant_degrees(&g)?;
            let (m, name) = match method {
                Method::Derivative => (HarmonicMethod::Derivative, "derivative"),
                Method::Perp => (HarmonicMethod::Perp, "perp"),
            };
            Output::Harmonics(HarmonicsOutput {
                group: g.name().to_string(),
                method: name.into(),
                poincare: poincare_from_degrees(&degrees),
                degrees,
                basis: harmonic_basis(&g, m)?,
            })
        }
        Command::Factorise {
            group,
            subgroup_reflections,
        } => {
            let g = load_group(group, cap)?;
            check_degree(&g, cli.max_degree)?;
            let sub = subgroup(&g, subgroup_reflections)?;
            Output::Factorise(Factorisation::new(&g, &sub)?.verify()?)
        }
        Command::FakeDegrees {
            group,
            subgroup_reflections,
        } => {
            let g = load_group(group, cap)?;
            check_degree(&g, cli.max_degree)?;
            let classes = conjugacy_classes(&g);
            let table = character_table(&g)?;
            let harm = reflection_harmonics::invariants::Harmonics::new(&g)?;
            let fake = fake_degrees(&g, &classes, &table, &harm)?;
            let fixed_points = match subgroup_reflections {
                Some(refl) => Some(verify_fake_degree_formula(&g, &subgroup(&g, refl)?)?),
                None => None,
            };
            Output::FakeDegrees(FakeDegreesOutput {
                group: g.name().to_string(),
                table,
                fake_degrees: fake,
                fixed_points,
            })
        }
        Command::Count { subsystem, twist } => {
            let text = if Path::new(subsystem).is_file() {
                read(Path::new(subsystem))?
            } else {
                subsystem.clone()
            };
            let spec: SubsystemSpec = text.parse()?;
            let (datum, sub) = spec.resolve()?;
            let counting = Counting::new(&datum, &sub)?;
            Output::Count(match twist {
                Some(path) => {
                    let twist: TwistData = serde_json::from_str(&read(path)?)
                        .map_err(|e| Error::Usage(format!("bad twist file: {e}")))?;
                    counting.twisted_report(&twist)?
                }
                None => counting.split_report()?,
            })
        }
    })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Usage(_) | Error::Domain(_) => 1,
        Error::CapExceeded { .. } => 2,
        Error::Verification(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let output = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("rharm: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let mut body = match cli.format {
        Format::Json => output.json(),
        Format::Text => output.text(),
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    let written = match &cli.out {
        Some(path) => fs::write(path, &body),
        None => std::io::stdout().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("rharm: cannot write output: {e}");
        return ExitCode::from(1);
    }
    if output.passed() {
        ExitCode::SUCCESS
    } else {
        eprintln!("rharm: verification failed");
        ExitCode::from(3)
    }
}
