use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use intcx::format::{self, ComplexFile};
use intcx::homology::{self, ChainSpaces};
use intcx::persistence::{self, Filtration, PersistentHomology};
use intcx::{experiments, numeric, Field, FieldSpec, FreePair, PersistenceDiagram, PrimeField, Rationals};
use serde_json::json;

/// Homology, persistence and bottleneck distances for IntComplexes.
#[derive(Parser, Debug)]
#[command(name = "intcx", version)]
struct Cli {
    /// Coefficient field: `rat` or `gf:<prime>`.
    #[arg(long, global = true, env = "INTCX_FIELD", default_value = "rat")]
    field: FieldSpec,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Betti numbers and layer betti numbers.
    Homology {
        file: PathBuf,
        /// Highest degree to report.
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Layer betti numbers `(beta_1, beta_2)` of each layer graph.
    Layers {
        file: PathBuf,
        /// Report a single layer.
        #[arg(long)]
        layer: Option<usize>,
    },
    /// Multilayer betti number of a subset (default: every member of order >= 2).
    Multilayer {
        file: PathBuf,
        /// File with one interaction per line.
        #[arg(long)]
        subset: Option<PathBuf>,
    },
    /// Persistence diagrams of the sublevel filtration of a weighted complex.
    Persist {
        file: PathBuf,
        /// Single degree to report (default: all degrees up to --max-dim).
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        max_dim: Option<usize>,
        /// Use the filtration of the weighted p-layer graph.
        #[arg(long)]
        layer: Option<usize>,
    },
    /// Bottleneck distance between two diagram JSON files.
    Bottleneck { first: PathBuf, second: PathBuf },
    /// Free pairs and the effect of collapsing each.
    Collapse {
        file: PathBuf,
        /// Print the complex after collapsing the free pair with this index.
        #[arg(long)]
        apply: Option<usize>,
        /// Exit 1 if some collapse changes the betti numbers.
        #[arg(long)]
        check: bool,
    },
    /// Signatures of the 15 three-vertex digraphs, with and without the
    /// added 3-interactions.
    Experiment {
        #[arg(long)]
        no_augment: bool,
    },
}

/// Exit status 2.
struct InputError(String);

enum Failure {
    Input(String),
    Computation(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.0)
    }
}

struct Outcome {
    output: String,
    ok: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, ok: true }
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<ComplexFile, InputError> {
    format::parse_complex_file(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn json_line(value: serde_json::Value) -> String {
    serde_json::to_string(&value).expect("serializable") + "\n"
}

fn reject_svg(format: Format) -> Result<(), InputError> {
    if format == Format::Svg {
        return Err(InputError("svg output is only available for persist --degree".into()));
    }
    Ok(())
}

fn homology_cmd<F: Field>(field: &F, file: &Path, max_dim: Option<usize>, format: Format) -> Result<Outcome, Failure> {
    reject_svg(format)?;
    let complex = load(file)?.complex().clone();
    if format == Format::Json {
        let top = max_dim.unwrap_or(complex.max_order());
        let signature = homology::Signature::compute(field, &complex, Some(top));
        return Ok(Outcome::ok(signature.to_json() + "\n"));
    }
    let top = max_dim.unwrap_or(complex.max_order() + 1);
    let spaces = ChainSpaces::new(field, &complex);
    let mut header = vec!["degree:".to_string()];
    let mut betti = vec!["homology:".to_string()];
    let mut layer = vec!["layer-homology:".to_string()];
    for p in 1..=top {
        header.push(p.to_string());
        betti.push(spaces.betti(p).to_string());
        layer.push(match p {
            1 => "-".to_string(),
            _ if complex.layer(p).is_empty() => "(0,0)".to_string(),
            _ => {
                let (a, b) = homology::layer_betti(field, &complex, p).expect("nonempty layer");
                format!("({a},{b})")
            }
        });
    }
    let rows = [header, betti, layer];
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|k| rows.iter().map(|r| r[k].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &rows {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        writeln!(out, "{}", cells.join("  ").trim_end()).expect("string write");
    }
    Ok(Outcome::ok(out))
}

fn layers_cmd<F: Field>(field: &F, file: &Path, layer: Option<usize>, format: Format) -> Result<Outcome, Failure> {
    reject_svg(format)?;
    let complex = load(file)?.complex().clone();
    let orders: Vec<usize> = match layer {
        Some(p) => vec![p],
        None => complex.orders().filter(|&p| p >= 2).collect(),
    };
    let mut table = BTreeMap::new();
    for p in orders {
        let b = homology::layer_betti(field, &complex, p).map_err(|e| Failure::Input(e.to_string()))?;
        table.insert(p, b);
    }
    Ok(Outcome::ok(match format {
        Format::Json => json_line(json!(table)),
        _ => table
            .iter()
            .map(|(p, (a, b))| format!("layer {p}: ({a},{b})\n"))
            .collect(),
    }))
}

fn multilayer_cmd<F: Field>(field: &F, file: &Path, subset: Option<&Path>, format: Format) -> Result<Outcome, Failure> {
    reject_svg(format)?;
    let complex = load(file)?.complex().clone();
    let members = match subset {
        Some(path) => format::parse_interaction_list(&read(path)?)
            .map_err(|e| InputError(format!("{}: {e}", path.display())))?,
        None => complex.higher_order(),
    };
    let graph = complex.subset_graph(&members).map_err(|e| Failure::Input(e.to_string()))?;
    let betti = ChainSpaces::new(field, &graph).betti(2);
    Ok(Outcome::ok(match format {
        Format::Json => json_line(json!({
            "subset": members.len(),
            "vertices": graph.layer(1).len(),
            "edges": graph.layer(2).len(),
            "betti": betti,
        })),
        _ => format!(
            "subset: {} interactions\ngraph: {} vertices, {} edges\nmultilayer betti: {betti}\n",
            members.len(),
            graph.layer(1).len(),
            graph.layer(2).len()
        ),
    }))
}

fn persist_cmd<F: Field>(
    field: &F,
    file: &Path,
    degree: Option<usize>,
    max_dim: Option<usize>,
    layer: Option<usize>,
    format: Format,
) -> Result<Outcome, Failure> {
    let loaded = load(file)?;
    let weighted = loaded
        .weighted()
        .ok_or_else(|| InputError(format!("{}: persistence needs a weight on every line", file.display())))?;
    let filtration = match layer {
        Some(p) => persistence::layer_filtration(weighted, p).map_err(|e| Failure::Input(e.to_string()))?,
        None => Filtration::from_weights(weighted),
    };
    let top = match layer {
        Some(_) => 2,
        None => weighted.complex().max_order(),
    };
    let degrees: Vec<usize> = match degree {
        Some(p) => vec![p],
        None => (1..=max_dim.unwrap_or(top)).collect(),
    };
    if format == Format::Svg && degree.is_none() {
        return Err(InputError("svg output needs --degree".into()).into());
    }
    let ph = PersistentHomology::new(field, &filtration);
    let diagrams = degrees
        .iter()
        .map(|&p| ph.diagram(p))
        .collect::<Result<Vec<PersistenceDiagram>, _>>()
        .map_err(|e| Failure::Computation(e.to_string()))?;
    let values: Vec<String> = filtration.values().iter().map(numeric::format_rational).collect();
    Ok(Outcome::ok(match format {
        Format::Svg => diagrams[0].to_svg(),
        Format::Json if degree.is_some() => diagrams[0].to_json() + "\n",
        Format::Json => json_line(serde_json::Value::Array(
            diagrams.iter().map(PersistenceDiagram::to_json_value).collect(),
        )),
        Format::Text => {
            let mut out = String::new();
            if let Some(p) = layer {
                writeln!(out, "{p}-layer graph filtration").expect("string write");
            }
            writeln!(out, "filtration values: {}", values.join(" ")).expect("string write");
            for d in &diagrams {
                out.push_str(&d.to_text());
            }
            out
        }
    }))
}

fn bottleneck_cmd(first: &Path, second: &Path, format: Format) -> Result<Outcome, Failure> {
    reject_svg(format)?;
    let load_diagram = |path: &Path| -> Result<PersistenceDiagram, InputError> {
        PersistenceDiagram::from_json(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
    };
    let (a, b) = (load_diagram(first)?, load_diagram(second)?);
    let distance = persistence::bottleneck(&a, &b).map_err(|e| Failure::Input(e.to_string()))?;
    Ok(Outcome::ok(match (format, distance) {
        (Format::Json, Some(d)) => json_line(json!({
            "distance": numeric::format_rational(&d),
            "approx": numeric::to_f64(&d),
        })),
        (Format::Json, None) => json_line(json!({ "distance": "inf", "approx": null })),
        (_, Some(d)) => format!("bottleneck: {} (~{})\n", numeric::format_rational(&d), numeric::to_f64(&d)),
        (_, None) => "bottleneck: inf\n".to_string(),
    }))
}

fn collapse_cmd<F: Field>(
    field: &F,
    file: &Path,
    apply: Option<usize>,
    check: bool,
    format: Format,
) -> Result<Outcome, Failure> {
    reject_svg(format)?;
    let complex = load(file)?.complex().clone();
    let pairs = complex.free_pairs();
    if let Some(k) = apply {
        let pair = pairs
            .get(k)
            .ok_or_else(|| InputError(format!("no free pair with index {k} ({} found)", pairs.len())))?;
        let collapsed = complex.collapse(pair).map_err(|e| Failure::Input(e.to_string()))?;
        return Ok(Outcome::ok(format::write_complex(&collapsed)));
    }
    let before = homology::betti_profile(field, &complex);
    let mut rows = Vec::new();
    let mut all_preserved = true;
    for FreePair { sigma, tau } in &pairs {
        let after = complex
            .collapse(&FreePair {
                sigma: sigma.clone(),
                tau: tau.clone(),
            })
            .ok()
            .map(|c| homology::betti_profile(field, &c));
        let preserved = after.as_ref().is_some_and(|a| same_profile(&before, a));
        all_preserved &= preserved;
        rows.push((sigma, tau, after, preserved));
    }
    let output = match format {
        Format::Json => json_line(json!({
            "betti": before,
            "pairs": rows.iter().map(|(s, t, after, ok)| json!({
                "sigma": s.to_string(),
                "tau": t.to_string(),
                "betti_after": after,
                "preserved": ok,
            })).collect::<Vec<_>>(),
        })),
        _ => {
            let mut out = format!("betti: {before:?}\nfree pairs: {}\n", rows.len());
            for (k, (s, t, after, ok)) in rows.iter().enumerate() {
                let after = after.as_ref().map_or("empty".to_string(), |a| format!("{a:?}"));
                let mark = if *ok { "preserved" } else { "CHANGED" };
                writeln!(out, "{k}: ({s}, {t}) -> {after} {mark}").expect("string write");
            }
            out
        }
    };
    Ok(Outcome {
        output,
        ok: !check || all_preserved,
    })
}

/// Profiles compared up to trailing zeros.
fn same_profile(a: &[usize], b: &[usize]) -> bool {
    let n = a.len().max(b.len());
    (0..n).all(|k| a.get(k).unwrap_or(&0) == b.get(k).unwrap_or(&0))
}

fn experiment_cmd<F: Field>(field: &F, no_augment: bool, format: Format) -> Result<Outcome, Failure> {
    reject_svg(format)?;
    let report = experiments::distinguishability_report(field);
    let output = match format {
        Format::Json => report.to_json(!no_augment),
        _ => report.to_text(!no_augment),
    };
    let ok = if no_augment {
        report.shared_groups_hold
    } else {
        report.passed()
    };
    Ok(Outcome { output, ok })
}

fn run<F: Field>(field: &F, cli: &Cli) -> Result<Outcome, Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Homology { file, max_dim } => homology_cmd(field, file, *max_dim, format),
        Command::Layers { file, layer } => layers_cmd(field, file, *layer, format),
        Command::Multilayer { file, subset } => multilayer_cmd(field, file, subset.as_deref(), format),
        Command::Persist {
            file,
            degree,
            max_dim,
            layer,
        } => persist_cmd(field, file, *degree, *max_dim, *layer, format),
        Command::Bottleneck { first, second } => bottleneck_cmd(first, second, format),
        Command::Collapse { file, apply, check } => collapse_cmd(field, file, *apply, *check, format),
        Command::Experiment { no_augment } => experiment_cmd(field, *no_augment, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.field {
        FieldSpec::Rational => run(&Rationals, &cli),
        FieldSpec::Prime(q) => run(&PrimeField::new(q).expect("validated when parsed"), &cli),
    };
    match result {
        Ok(outcome) => {
            print!("{}", outcome.output);
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Computation(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
