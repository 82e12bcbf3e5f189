//! Command-line front end: loads a host graph, evaluates expressions,
//! runs dual-side operations and verification checks, and manages the
//! basis cache.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input
//! error.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand, ValueEnum};

use hopfgraph::cache;
use hopfgraph::dual::{dual_coproduct, structure_table, DualElement, DualOps};
use hopfgraph::enumerate::{connected_subgraphs, BasisTable};
use hopfgraph::expr::{self, Value};
use hopfgraph::graph::Graph;
use hopfgraph::hom::GraphHom;
use hopfgraph::hopf::{scalar_int, Monomial};
use hopfgraph::records::{
    dual_records, dual_tensor_records, element_records, tensor_records, MonomialRecord,
    SubgraphRecord,
};
use hopfgraph::verify::{
    check_bialgebra, check_coalgebra, check_duality, check_functor, check_grading, check_hopf,
    check_subcoalgebra, Report,
};

#[derive(Parser)]
#[command(name = "hopfgraph", version, about = "Hopf algebra of connected subgraphs")]
struct Cli {
    /// Host graph file (one vertex label or edge pair per line).
    #[arg(long, global = true, value_name = "FILE")]
    graph: Option<PathBuf>,

    /// Emit structured JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Largest degree the graded operations sweep.
    #[arg(long = "max-degree", short = 'd', global = true, default_value_t = 4)]
    max_degree: usize,

    /// Seed for the randomized parts of verification.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Directory holding basis caches, keyed by graph content hash.
    #[arg(long, global = true, value_name = "DIR")]
    cache: Option<PathBuf>,

    /// Ignore any cache, recompute everything.
    #[arg(long = "no-cache", global = true)]
    no_cache: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the connected subgraphs of the host graph.
    Subgraphs {
        /// Only subgraphs with at most this many vertices.
        #[arg(long = "max-vertices", value_name = "N")]
        max_vertices: Option<usize>,
    },
    /// Evaluate an expression over the host graph.
    Eval {
        /// Expression such as "S({1,2|1-2})" or "delta({1})".
        expression: String,
    },
    /// Operations on the graded dual.
    Dual {
        #[command(subcommand)]
        op: DualCommand,
    },
    /// Run verification checks against the host graph.
    Verify {
        /// Checks to run; see also --all.
        #[arg(value_enum)]
        checks: Vec<CheckName>,
        /// Run coalgebra, bialgebra, hopf, grading, and duality.
        #[arg(long)]
        all: bool,
        /// Vertex map file over the host graph; pass twice for the
        /// functor check (f first, then g).
        #[arg(long = "hom", value_name = "FILE")]
        hom: Vec<PathBuf>,
        /// Subgraph file for the subcoalgebra check.
        #[arg(long = "subgraph", value_name = "FILE")]
        subgraph: Option<PathBuf>,
        /// Random element pairs per randomized check.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Apply the algebra morphism of a graph homomorphism.
    Hom {
        /// Source graph file.
        source: PathBuf,
        /// Target graph file.
        target: PathBuf,
        /// Vertex map file (lines "u -> v").
        map: PathBuf,
        /// Expression over the source graph.
        expression: String,
    },
    /// Print graded dimensions for degrees 0..=max-degree.
    Dims,
}

#[derive(Subcommand)]
enum DualCommand {
    /// Product of two dual basis functionals.
    Product {
        /// Index monomial of the left factor, e.g. "{3}".
        f1: String,
        /// Index monomial of the right factor, e.g. "{1,2|1-2}".
        f2: String,
    },
    /// Coproduct of a dual basis functional.
    Coproduct {
        /// Index monomial, e.g. "{1}*{1}".
        f: String,
    },
    /// CSV table of structure constants n(F1,F2;F).
    Table {
        /// Degree of F1.
        left_degree: usize,
        /// Degree of F2.
        right_degree: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckName {
    Coalgebra,
    Bialgebra,
    Hopf,
    Grading,
    Duality,
    Functor,
    Subcoalgebra,
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => process::exit(code),
        Err(message) => {
            eprintln!("error: {message}");
            process::exit(2);
        }
    }
}

fn run(cli: &Cli) -> Result<i32, String> {
    match &cli.command {
        Command::Subgraphs { max_vertices } => cmd_subgraphs(cli, *max_vertices),
        Command::Eval { expression } => cmd_eval(cli, expression),
        Command::Dual { op } => cmd_dual(cli, op),
        Command::Verify {
            checks,
            all,
            hom,
            subgraph,
            samples,
        } => cmd_verify(cli, checks, *all, hom, subgraph.as_ref(), *samples),
        Command::Hom {
            source,
            target,
            map,
            expression,
        } => cmd_hom(cli, source, target, map, expression),
        Command::Dims => cmd_dims(cli),
    }
}

/// Host graph plus its basis table, optionally seeded from the cache.
struct Host {
    table: BasisTable,
    cache_dir: Option<PathBuf>,
    save_degree: usize,
}

impl Host {
    fn load(cli: &Cli) -> Result<Host, String> {
        let path = cli
            .graph
            .as_ref()
            .ok_or("this command requires --graph FILE")?;
        let graph = read_graph(path)?;
        let table = BasisTable::new(graph);
        let cache_dir = cli.cache.clone().filter(|_| !cli.no_cache);
        let mut save_degree = cli.max_degree;
        if let Some(dir) = &cache_dir {
            if let Some(loaded) = cache::load(dir, table.host()) {
                save_degree = save_degree.max(loaded.max_degree());
                loaded.seed_into(&table);
            }
        }
        Ok(Host {
            table,
            cache_dir,
            save_degree,
        })
    }

    /// Writes the cache back; degrees already loaded are kept even when
    /// this run asked for fewer.
    fn finish(&self) -> Result<(), String> {
        if let Some(dir) = &self.cache_dir {
            cache::save(dir, &self.table, self.save_degree)
                .map_err(|e| format!("cannot write cache under {}: {e}", dir.display()))?;
        }
        Ok(())
    }
}

fn read_graph(path: &PathBuf) -> Result<Graph, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Graph::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("JSON output serializes"));
}

fn cmd_subgraphs(cli: &Cli, max_vertices: Option<usize>) -> Result<i32, String> {
    let host = Host::load(cli)?;
    let listing = match max_vertices {
        None => host.table.generators().to_vec(),
        Some(bound) => connected_subgraphs(host.table.host(), Some(bound)),
    };
    if cli.json {
        let records: Vec<SubgraphRecord> =
            listing.iter().map(SubgraphRecord::from_subgraph).collect();
        print_json(&serde_json::json!({
            "count": listing.len(),
            "subgraphs": records,
        }));
    } else {
        for c in &listing {
            println!("{}", c.graph());
        }
        println!("count {}", listing.len());
    }
    host.finish()?;
    Ok(0)
}

fn value_json(value: &Value) -> serde_json::Value {
    match value {
        Value::Element(a) => serde_json::json!({"kind": "element", "terms": element_records(a)}),
        Value::Tensor(t) => serde_json::json!({"kind": "tensor", "terms": tensor_records(t)}),
        Value::Dual(z) => serde_json::json!({"kind": "dual", "terms": dual_records(z)}),
        Value::DualTensor(t) => {
            serde_json::json!({"kind": "dual_tensor", "terms": dual_tensor_records(t)})
        }
    }
}

fn cmd_eval(cli: &Cli, expression: &str) -> Result<i32, String> {
    let host = Host::load(cli)?;
    let value = expr::eval(expression, &host.table).map_err(|e| e.to_string())?;
    if cli.json {
        print_json(&value_json(&value));
    } else {
        println!("{value}");
    }
    host.finish()?;
    Ok(0)
}

/// Evaluates an argument that must name a single basis monomial with
/// coefficient 1, as the dual subcommands require.
fn monomial_arg(text: &str, table: &BasisTable) -> Result<Monomial, String> {
    match expr::eval(text, table).map_err(|e| e.to_string())? {
        Value::Element(a) => {
            let mut terms = a.terms();
            match (terms.next(), terms.next()) {
                (Some((m, c)), None) if *c == scalar_int(1) => Ok(m.clone()),
                _ => Err(format!("'{text}' is not a single monomial with coefficient 1")),
            }
        }
        v => Err(format!("'{text}' evaluates to a {}, not a monomial", v.kind())),
    }
}

fn guard_degree(total: usize, max_degree: usize) -> Result<(), String> {
    if total > max_degree {
        return Err(format!(
            "combined degree {total} exceeds --max-degree {max_degree}"
        ));
    }
    Ok(())
}

fn cmd_dual(cli: &Cli, op: &DualCommand) -> Result<i32, String> {
    let host = Host::load(cli)?;
    match op {
        DualCommand::Product { f1, f2 } => {
            let f1 = monomial_arg(f1, &host.table)?;
            let f2 = monomial_arg(f2, &host.table)?;
            guard_degree(f1.degree() + f2.degree(), cli.max_degree)?;
            let ops = DualOps::new(&host.table);
            let product = ops.product(&DualElement::basis(f1), &DualElement::basis(f2));
            if cli.json {
                print_json(&serde_json::json!({"kind": "dual", "terms": dual_records(&product)}));
            } else {
                println!("{product}");
            }
        }
        DualCommand::Coproduct { f } => {
            let f = monomial_arg(f, &host.table)?;
            let result = dual_coproduct(&DualElement::basis(f));
            if cli.json {
                print_json(&serde_json::json!({
                    "kind": "dual_tensor",
                    "terms": dual_tensor_records(&result),
                }));
            } else {
                println!("{result}");
            }
        }
        DualCommand::Table {
            left_degree,
            right_degree,
        } => {
            guard_degree(left_degree + right_degree, cli.max_degree)?;
            let rows = structure_table(&host.table, *left_degree, *right_degree);
            if cli.json {
                let rows: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|r| {
                        serde_json::json!({
                            "f1": MonomialRecord::from_monomial(&r.f1),
                            "f2": MonomialRecord::from_monomial(&r.f2),
                            "f": MonomialRecord::from_monomial(&r.f),
                            "n": r.n.to_string(),
                        })
                    })
                    .collect();
                print_json(&serde_json::Value::Array(rows));
            } else {
                let mut writer = csv::Writer::from_writer(std::io::stdout());
                writer
                    .write_record(["F1", "F2", "F", "n"])
                    .and_then(|()| {
                        for row in &rows {
                            writer.write_record([
                                row.f1.to_string(),
                                row.f2.to_string(),
                                row.f.to_string(),
                                row.n.to_string(),
                            ])?;
                        }
                        writer.flush()?;
                        Ok(())
                    })
                    .map_err(|e| format!("cannot write table: {e}"))?;
            }
        }
    }
    host.finish()?;
    Ok(0)
}

fn hom_over(host: &Graph, path: &PathBuf) -> Result<GraphHom, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let map = GraphHom::parse_map(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    GraphHom::new(host.clone(), host.clone(), map).map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_verify(
    cli: &Cli,
    listed: &[CheckName],
    all: bool,
    hom_files: &[PathBuf],
    subgraph_file: Option<&PathBuf>,
    samples: usize,
) -> Result<i32, String> {
    let host = Host::load(cli)?;
    let g = host.table.host().clone();
    let d = cli.max_degree;

    let mut selected: Vec<CheckName> = Vec::new();
    if all {
        selected.extend([
            CheckName::Coalgebra,
            CheckName::Bialgebra,
            CheckName::Hopf,
            CheckName::Grading,
            CheckName::Duality,
        ]);
    }
    for &check in listed {
        if !selected.contains(&check) {
            selected.push(check);
        }
    }
    if selected.is_empty() {
        return Err("no checks requested; list checks or pass --all".to_string());
    }

    let mut reports: Vec<Report> = Vec::new();
    for check in selected {
        let report = match check {
            CheckName::Coalgebra => check_coalgebra(&g, d),
            CheckName::Bialgebra => check_bialgebra(&g, d, samples, cli.seed),
            CheckName::Hopf => check_hopf(&g, d),
            CheckName::Grading => check_grading(&g, d),
            CheckName::Duality => check_duality(&g, d),
            CheckName::Functor => {
                if hom_files.len() != 2 {
                    return Err(
                        "the functor check needs exactly two --hom FILE arguments".to_string()
                    );
                }
                let f = hom_over(&g, &hom_files[0])?;
                let second = hom_over(&g, &hom_files[1])?;
                check_functor(&f, &second, samples, cli.seed).map_err(|e| e.to_string())?
            }
            CheckName::Subcoalgebra => {
                let path = subgraph_file
                    .ok_or("the subcoalgebra check needs --subgraph FILE")?;
                let sub = read_graph(path)?;
                check_subcoalgebra(&g, &sub, d).map_err(|e| e.to_string())?
            }
        };
        reports.push(report);
    }

    let all_passed = reports.iter().all(Report::passed);
    if cli.json {
        print_json(&serde_json::to_value(&reports).expect("reports serialize"));
    } else {
        for r in &reports {
            if r.passed() {
                println!("{}: PASS (cases={}, ms={})", r.check, r.cases, r.ms);
            } else {
                println!(
                    "{}: FAIL (cases={}, failures={}, ms={})",
                    r.check,
                    r.cases,
                    r.failures.len(),
                    r.ms
                );
                for f in &r.failures {
                    println!("  {}\n    expected: {}\n    actual:   {}", f.input, f.expected, f.actual);
                }
            }
        }
    }
    host.finish()?;
    Ok(if all_passed { 0 } else { 1 })
}

fn cmd_hom(
    cli: &Cli,
    source: &PathBuf,
    target: &PathBuf,
    map: &PathBuf,
    expression: &str,
) -> Result<i32, String> {
    let source_graph = read_graph(source)?;
    let target_graph = read_graph(target)?;
    let map_text =
        fs::read_to_string(map).map_err(|e| format!("cannot read {}: {e}", map.display()))?;
    let vertex_map =
        GraphHom::parse_map(&map_text).map_err(|e| format!("{}: {e}", map.display()))?;
    let hom = GraphHom::new(source_graph.clone(), target_graph, vertex_map)
        .map_err(|e| format!("{}: {e}", map.display()))?;

    let source_table = BasisTable::new(source_graph);
    let value = expr::eval(expression, &source_table).map_err(|e| e.to_string())?;
    let element = match value {
        Value::Element(a) => a,
        v => return Err(format!("hom applies to elements, not to a {}", v.kind())),
    };
    let image = hom.apply(&element).map_err(|e| e.to_string())?;
    if cli.json {
        print_json(&serde_json::json!({"kind": "element", "terms": element_records(&image)}));
    } else {
        println!("{image}");
    }
    Ok(0)
}

fn cmd_dims(cli: &Cli) -> Result<i32, String> {
    let host = Host::load(cli)?;
    let dims: BTreeMap<usize, usize> = (0..=cli.max_degree)
        .map(|n| (n, host.table.dimension(n)))
        .collect();
    if cli.json {
        let rows: Vec<serde_json::Value> = dims
            .iter()
            .map(|(n, dim)| serde_json::json!({"degree": n, "dimension": dim}))
            .collect();
        print_json(&serde_json::Value::Array(rows));
    } else {
        let mut out = std::io::stdout().lock();
        for (n, dim) in &dims {
            writeln!(out, "{n} {dim}").map_err(|e| format!("cannot write: {e}"))?;
        }
    }
    host.finish()?;
    Ok(0)
}
