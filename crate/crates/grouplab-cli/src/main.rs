//! Command-line front end: builds groups, runs the analysis modules, and
//! emits machine-readable JSON reports.
//!
//! Exit codes: 0 all claims pass, 1 a verified claim fails, 2 usage error,
//! 3 internal fault.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use grouplab::bifurcation::{find_branches, g3_fixed_planes, lift_branches_g8};
use grouplab::certify::{certify_g3, certify_g8};
use grouplab::equivariants::equivariant_dimension;
use grouplab::matgroup::{build_g3_generators, build_g8_generators, close_group};
use grouplab::repanalysis::isotropy_types;
use grouplab::report::{GroupReport, IsotropyReport};
use grouplab::wordgroup::{
    abstract_normalizer_k, abstract_order, coset_table, verify_abstract_relations, Presentation,
};

#[derive(Parser)]
#[command(
    name = "grouplab",
    version,
    about = "Finite orthogonal matrix group laboratory"
)]
struct Cli {
    /// Seed for witness sampling and the stabilizer oracle.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (defaults to the GROUPLAB_THREADS variable, then to
    /// the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// Family: `g3` (on R^4) or `g8` (on R^8).
    #[arg(long)]
    family: String,
    /// Parameter m of the quaternionic family (odd, >= 3).
    #[arg(long)]
    m: Option<u32>,
    /// Parameter l of the block-matrix family (>= 1).
    #[arg(long)]
    l: Option<u32>,
}

#[derive(Args, Clone)]
struct GroupSource {
    /// Family: `g3` (on R^4) or `g8` (on R^8).
    #[arg(long, conflicts_with = "input")]
    family: Option<String>,
    /// Parameter m of the quaternionic family (odd, >= 3).
    #[arg(long)]
    m: Option<u32>,
    /// Parameter l of the block-matrix family (>= 1).
    #[arg(long)]
    l: Option<u32>,
    /// Read the group from a previously emitted group document instead of
    /// building it from a family parameter.
    #[arg(long)]
    input: Option<std::path::PathBuf>,
}

impl GroupSource {
    fn load(&self) -> Result<grouplab::matgroup::FiniteMatrixGroup, RunError> {
        if let Some(path) = &self.input {
            let text = std::fs::read_to_string(path)
                .map_err(|e| RunError::Usage(format!("cannot read {}: {e}", path.display())))?;
            let doc: GroupReport = serde_json::from_str(&text)
                .map_err(|e| RunError::Usage(format!("bad group document: {e}")))?;
            return Ok(doc.to_group()?);
        }
        let family = self
            .family
            .clone()
            .ok_or_else(|| RunError::Usage("provide --family or --input".into()))?;
        let args = FamilyArgs {
            family,
            m: self.m,
            l: self.l,
        };
        let choice = family_choice(&args).map_err(RunError::Usage)?;
        Ok(build_group(&choice)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Close a generator set and emit the group document.
    Build(FamilyArgs),
    /// Isotropy types with fixed-space dimensions and witnesses.
    Analyze(GroupSource),
    /// Equivariant-map dimension table for degrees 1..=degree.
    Molien {
        #[command(flatten)]
        source: GroupSource,
        #[arg(long, default_value_t = 6)]
        degree: usize,
        /// Also emit the averaging-projector basis at the top degree as a
        /// term list per map.
        #[arg(long)]
        dump_basis: bool,
    },
    /// Abstract coset structure for one parameter k.
    Cosets {
        #[arg(long)]
        k: u32,
        /// Impose the extra relation r^2 a = a^s r^2 (s = k/2 + 1).
        #[arg(long)]
        commuting: bool,
        /// Re-derive the 27 + 9 suffix rows and diff against the reference
        /// fixture.
        #[arg(long)]
        check_tables: bool,
    },
    /// Zeros and regularity of the cubic phase field on fixed-point circles.
    Bifurcate {
        #[command(flatten)]
        family: FamilyArgs,
        /// Family parameter in `a t1 + t2`.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        a: f64,
        /// Sweep `a0:a1:steps`; emits a CSV of zero counts instead of JSON.
        #[arg(long, allow_hyphen_values = true)]
        sweep: Option<String>,
    },
    /// Run the full verification suite for one group.
    Certify(FamilyArgs),
}

enum FamilyChoice {
    G3(u32),
    G8(u32),
}

fn family_choice(args: &FamilyArgs) -> Result<FamilyChoice, String> {
    match args.family.as_str() {
        "g3" => args
            .m
            .map(FamilyChoice::G3)
            .ok_or_else(|| "--family g3 requires --m".into()),
        "g8" => args
            .l
            .map(FamilyChoice::G8)
            .ok_or_else(|| "--family g8 requires --l".into()),
        other => Err(format!("unknown family {other}; use g3 or g8")),
    }
}

fn build_group(choice: &FamilyChoice) -> grouplab::Result<grouplab::matgroup::FiniteMatrixGroup> {
    match choice {
        FamilyChoice::G3(m) => close_group(&build_g3_generators(*m)?),
        FamilyChoice::G8(l) => close_group(&build_g8_generators(*l)?),
    }
}

fn run(cli: &Cli) -> Result<(String, bool), RunError> {
    match &cli.command {
        Command::Build(f) => {
            let choice = family_choice(f).map_err(RunError::Usage)?;
            let group = build_group(&choice)?;
            let rep = GroupReport::from_group(&group);
            Ok((serde_json::to_string_pretty(&rep).expect("serialize"), true))
        }
        Command::Analyze(source) => {
            let group = source.load()?;
            let types = isotropy_types(&group, cli.seed)?;
            let rep = IsotropyReport::new(&group, &types);
            let mut doc = serde_json::to_value(&rep).expect("serialize");
            // the R^8 family additionally carries the normalizer structure
            // of the split involution pair
            if source.family.as_deref() == Some("g8") {
                if let Some(l) = source.l {
                    let pair = grouplab::repanalysis::fix_h_pair_report(l)?;
                    let omega = grouplab::repanalysis::verify_omega_formulas(l)?;
                    let structure = grouplab::report::NormalizerStructureReport {
                        schema_version: grouplab::report::SCHEMA_VERSION,
                        group: group.family.label(),
                        subgroup_order: 2,
                        normalizer_order: pair.normalizer_order,
                        index_in_group: pair.index_in_group,
                        weyl_order: pair.weyl_order,
                        fix_dim: pair.fix_h_dim,
                        fix_prime_dim: pair.fix_h_prime_dim,
                        direct_sum_dim: pair.direct_sum_dim,
                        q1: omega.q1,
                        q2: omega.q2,
                        q3: omega.q3,
                        c: omega.c,
                        exact_exponents: omega.matching_exponents,
                    };
                    doc["normalizer"] = serde_json::to_value(&structure).expect("serialize");
                }
            }
            Ok((serde_json::to_string_pretty(&doc).expect("serialize"), true))
        }
        Command::Molien {
            source,
            degree,
            dump_basis,
        } => {
            let group = source.load()?;
            let mut rows = Vec::new();
            for d in 1..=*degree {
                rows.push(serde_json::json!({
                    "degree": d,
                    "dimension": equivariant_dimension(&group, d)?,
                }));
            }
            let mut doc = serde_json::json!({
                "schema_version": grouplab::report::SCHEMA_VERSION,
                "group": group.family.label(),
                "order": group.order(),
                "dimensions": rows,
            });
            if *dump_basis {
                let basis = grouplab::equivariants::reynolds_equivariant_basis(&group, *degree)?;
                let dumped: Vec<Vec<grouplab::report::BasisTerm>> = basis
                    .maps
                    .iter()
                    .map(grouplab::report::poly_map_terms)
                    .collect();
                doc["basis"] = serde_json::to_value(&dumped).expect("serialize");
            }
            Ok((serde_json::to_string_pretty(&doc).expect("serialize"), true))
        }
        Command::Cosets {
            k,
            commuting,
            check_tables,
        } => {
            let pres = if *commuting {
                Presentation::new_commuting(*k, *k / 2 + 1)?
            } else {
                Presentation::new(*k)?
            };
            let order = abstract_order(&pres);
            let relations = verify_abstract_relations(&pres)?;
            let mut doc = serde_json::json!({
                "schema_version": grouplab::report::SCHEMA_VERSION,
                "k": k,
                "commuting": commuting,
                "order": order,
                "relations": relations,
            });
            let mut ok = relations.all_hold;
            if !*commuting {
                let nk = abstract_normalizer_k(&pres)?;
                ok &= nk.index == 2 && nk.decomposition_matches;
                doc["normalizer_subgroup"] = serde_json::to_value(&nk).expect("serialize");
            }
            if *check_tables {
                let table = coset_table(&pres)?;
                ok &= table.matching_rows == table.total_rows;
                doc["coset_table"] = serde_json::to_value(&table).expect("serialize");
                doc["table_summary"] = serde_json::json!(format!(
                    "{}/{} rows match the reference fixture",
                    table.matching_rows, table.total_rows
                ));
            }
            Ok((serde_json::to_string_pretty(&doc).expect("serialize"), ok))
        }
        Command::Bifurcate { family, a, sweep } => {
            let choice = family_choice(family).map_err(RunError::Usage)?;
            if let Some(range) = sweep {
                let parts: Vec<&str> = range.split(':').collect();
                if parts.len() != 3 {
                    return Err(RunError::Usage("--sweep expects a0:a1:steps".into()));
                }
                let a0: f64 = parts[0]
                    .parse()
                    .map_err(|_| RunError::Usage("bad a0".into()))?;
                let a1: f64 = parts[1]
                    .parse()
                    .map_err(|_| RunError::Usage("bad a1".into()))?;
                let steps: usize = parts[2]
                    .parse()
                    .map_err(|_| RunError::Usage("bad step count".into()))?;
                if steps < 2 {
                    return Err(RunError::Usage("need at least 2 sweep steps".into()));
                }
                let mut csv = String::from("a,fixed_space,zero_count,degenerate\n");
                for i in 0..steps {
                    let a = a0 + (a1 - a0) * i as f64 / (steps - 1) as f64;
                    let reports = match &choice {
                        FamilyChoice::G3(_) => g3_fixed_planes()?
                            .iter()
                            .map(|(_, plane)| find_branches(plane, a))
                            .collect::<grouplab::Result<Vec<_>>>()?,
                        FamilyChoice::G8(l) => lift_branches_g8(*l, a, cli.seed)?,
                    };
                    for r in reports {
                        csv.push_str(&format!(
                            "{a},{},{},{}\n",
                            r.label,
                            r.zeros.len(),
                            r.degenerate
                        ));
                    }
                }
                return Ok((csv, true));
            }
            let reports = match &choice {
                FamilyChoice::G3(_) => g3_fixed_planes()?
                    .iter()
                    .map(|(_, plane)| find_branches(plane, *a))
                    .collect::<grouplab::Result<Vec<_>>>()?,
                FamilyChoice::G8(l) => lift_branches_g8(*l, *a, cli.seed)?,
            };
            Ok((
                serde_json::to_string_pretty(&reports).expect("serialize"),
                true,
            ))
        }
        Command::Certify(f) => {
            let choice = family_choice(f).map_err(RunError::Usage)?;
            let rep = match choice {
                FamilyChoice::G3(m) => certify_g3(m, cli.seed)?,
                FamilyChoice::G8(l) => certify_g8(l, cli.seed)?,
            };
            let pass = rep.pass;
            Ok((serde_json::to_string_pretty(&rep).expect("serialize"), pass))
        }
    }
}

enum RunError {
    Usage(String),
    Lib(grouplab::Error),
}

impl From<grouplab::Error> for RunError {
    fn from(e: grouplab::Error) -> Self {
        RunError::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    #[cfg(feature = "parallel")]
    {
        let threads = cli.threads.or_else(|| {
            std::env::var("GROUPLAB_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        });
        if let Some(n) = threads {
            if rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .is_err()
            {
                eprintln!("{{\"error\": \"thread pool already initialized\"}}");
            }
        }
    }

    match run(&cli) {
        Ok((doc, pass)) => {
            let payload = if doc.ends_with('\n') {
                doc
            } else {
                format!("{doc}\n")
            };
            match &cli.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, payload) {
                        eprintln!("{{\"error\": \"cannot write {}: {e}\"}}", path.display());
                        return ExitCode::from(3);
                    }
                }
                None => {
                    let mut out = std::io::stdout().lock();
                    if out.write_all(payload.as_bytes()).is_err() {
                        return ExitCode::from(3);
                    }
                }
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(RunError::Usage(msg)) => {
            eprintln!("{{\"error\": {}}}", serde_json::json!(msg));
            ExitCode::from(2)
        }
        Err(RunError::Lib(e)) => {
            let code = match &e {
                grouplab::Error::Parameter(_) => 2,
                _ => 3,
            };
            eprintln!("{{\"error\": {}}}", serde_json::json!(e.to_string()));
            ExitCode::from(code)
        }
    }
}
