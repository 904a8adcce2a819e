// zstar - exact arithmetic for graphical calculi
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Batch command-line interface: verification of catalog calculi,
//! classification runs, diagram evaluation and catalog dumps. Every command
//! prints a human-readable report followed by a machine-readable `[result]`
//! block of `key=value` lines; the exit code is 0 exactly when every
//! requested check passed. Output is deterministic for identical inputs.

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use zstar::catalog::{
    check_tabulated_conformance, qudit_zx, qudit_zw, tabulated_instance, CalculusInstance, Family,
    TabulatedCalculus, GENERATOR_NAMES,
};
use zstar::classify::{enumerate_bigebra_pairs_copy, solve_bigebra_w_comonoid, verify_compatibility_systems};
use zstar::diagram::{evaluate, Diagram};
use zstar::linrel::survey_prime;
use zstar::scalar::ExactScalar;
use zstar::structures::check_zstar;
use zstar::Morphism;

#[derive(Parser)]
#[command(
    name = "zstar",
    about = "Exact verification and classification for graphical-calculus algebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every axiom of a catalog calculus at the given parameters
    Verify {
        /// Family name (ZZ++, ZZ-+, ZZ+-, ZZ--, ZX1..ZX6, ZH, ZW, WZ) or
        /// qudit-zx / qudit-zw
        calculus: String,
        /// First parameter, in the exact-scalar grammar (e.g. 1, -1/2, i, r2)
        #[arg(long)]
        a: Option<String>,
        /// Second parameter (two-parameter families only)
        #[arg(long)]
        b: Option<String>,
        /// Wire dimension (qudit calculi only)
        #[arg(long)]
        d: Option<usize>,
    },
    /// Reproduce a classification: `qubits` or `linrel`
    Classify {
        /// `qubits` or `linrel`
        target: String,
        /// Prime field for linrel (2, 3 or 5)
        #[arg(long)]
        prime: Option<u64>,
        /// Compare the qubit scan against a golden trace; with no value the
        /// file is looked up under $ZSTAR_GOLDEN_DIR
        #[arg(long, num_args = 0..=1, default_missing_value = "")]
        golden: Option<String>,
    },
    /// Evaluate a diagram file to a matrix
    EvalDiagram {
        /// Path to the diagram file
        file: PathBuf,
        /// Calculus to evaluate in (family or tabulated-calculus name)
        #[arg(long)]
        calculus: String,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
    /// Inspect the catalog of tabulated calculi
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List every named calculus and family
    List,
    /// Emit the generator manifest and matrices of one calculus
    Dump {
        /// Tabulated-calculus name (see `catalog list`)
        name: String,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        /// Qudit dimension for qudit-zx / qudit-zw
        #[arg(long)]
        d: Option<usize>,
        /// Write manifest + one .mat file per generator into this directory
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also check the table against the stored reference matrices
        #[arg(long)]
        check: bool,
    },
}

/// Outcome of one command: echoed fields and an overall verdict.
struct RunReport {
    command: String,
    fields: Vec<(String, String)>,
    passed: bool,
}

impl RunReport {
    fn new(command: &str) -> Self {
        RunReport { command: command.to_string(), fields: Vec::new(), passed: true }
    }
    fn field(&mut self, key: &str, value: impl ToString) {
        self.fields.push((key.to_string(), value.to_string()));
    }
    fn finish(self) -> ExitCode {
        println!("[result]");
        println!("command={}", self.command);
        for (k, v) in &self.fields {
            println!("{k}={v}");
        }
        println!("passed={}", self.passed);
        if self.passed {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        }
    }
}

fn parse_scalar(opt: &Option<String>, default: &str, what: &str) -> Result<ExactScalar, String> {
    let text = opt.as_deref().unwrap_or(default);
    text.parse::<ExactScalar>()
        .map_err(|e| format!("bad scalar for {what}: {e}"))
}

fn instance_by_name(
    name: &str,
    a: &Option<String>,
    b: &Option<String>,
    d: Option<usize>,
) -> Result<CalculusInstance, String> {
    if name.eq_ignore_ascii_case("qudit-zx") || name.eq_ignore_ascii_case("qudit-zw") {
        let dim = d.ok_or("qudit calculi need --d <dimension>")?;
        let z = if name.eq_ignore_ascii_case("qudit-zx") {
            qudit_zx(dim)
        } else {
            qudit_zw(dim)
        }
        .map_err(|e| e.to_string())?;
        return Ok(CalculusInstance::from_zstar(&format!("{name}({dim})"), z));
    }
    if d.is_some() {
        return Err("--d only applies to qudit-zx / qudit-zw".into());
    }
    if let Some(family) = Family::from_name(name) {
        let pa = parse_scalar(a, "1", "--a")?;
        let pb = parse_scalar(b, "1", "--b")?;
        if family.param_count() == 1 && b.is_some() {
            return Err(format!("family {} takes a single parameter --a", family.name()));
        }
        return CalculusInstance::from_family(family, &pa, &pb).map_err(|e| e.to_string());
    }
    if let Some(tab) = TabulatedCalculus::from_name(name) {
        let params = tabulated_params(tab, a, b)?;
        return tabulated_instance(tab, &params).map_err(|e| e.to_string());
    }
    Err(format!("unknown calculus `{name}`; see `zstar catalog list`"))
}

fn tabulated_params(
    tab: TabulatedCalculus,
    a: &Option<String>,
    b: &Option<String>,
) -> Result<Vec<ExactScalar>, String> {
    match tab.param_count() {
        0 => {
            if a.is_some() || b.is_some() {
                Err(format!("{} takes no parameters", tab.name()))
            } else {
                Ok(vec![])
            }
        }
        1 => {
            if b.is_some() {
                Err(format!("{} takes a single parameter --a", tab.name()))
            } else {
                Ok(vec![parse_scalar(a, "1", "--a")?])
            }
        }
        _ => {
            // per-table defaults keeping parameters inside the domain
            let default_b = match tab {
                TabulatedCalculus::Zh1 => "2",
                TabulatedCalculus::ZhRevisited => "3",
                _ => "1",
            };
            Ok(vec![parse_scalar(a, "1", "--a")?, parse_scalar(b, default_b, "--b")?])
        }
    }
}

fn cmd_verify(calculus: &str, a: &Option<String>, b: &Option<String>, d: Option<usize>) -> ExitCode {
    let mut report = RunReport::new("verify");
    report.field("calculus", calculus);
    let instance = match instance_by_name(calculus, a, b, d) {
        Ok(i) => i,
        Err(e) => {
            println!("error: {e}");
            report.field("error", e);
            report.passed = false;
            return report.finish();
        }
    };
    let axioms = check_zstar(&instance.zstar);
    println!("{axioms}");
    println!();
    println!("dualizer:");
    print!("{}", instance.dualizer());
    let passed = axioms.passed();
    let total = axioms.laws.len();
    let ok = axioms.laws.iter().filter(|l| l.pass).count();
    report.field("checks_total", total);
    report.field("checks_passed", ok);
    report.passed = passed;
    report.finish()
}

fn cmd_classify_qubits(golden: &Option<String>) -> ExitCode {
    let mut report = RunReport::new("classify-qubits");
    let scan = enumerate_bigebra_pairs_copy();
    println!("bialgebra-pair scan against the copy comonoid");
    println!("  rank-2 solutions of (B):      {}", scan.rank2.len());
    println!("  after swap reduction:         {}", scan.reduced.len());
    println!("  associative unital algebras:  {}", scan.algebras.len());
    println!();
    println!("pairs with the copy comonoid:");
    for m in &scan.algebras {
        let label = classify_product_label(&m.product);
        println!("  {label} / copy-comonoid");
    }
    let w_samples = vec![
        ExactScalar::from_int(1),
        ExactScalar::from_int(2),
        ExactScalar::from_int(-1),
        ExactScalar::i(),
        ExactScalar::sqrt2(),
    ];
    let w_report = solve_bigebra_w_comonoid(&w_samples);
    println!("  copy-product / W-comonoid (one-parameter family collapses to it)");
    println!();
    println!("five pairs in total");
    println!();
    println!("compatibility systems per pair shape:");
    let systems = verify_compatibility_systems();
    let mut all_ok = scan.rank2.len() == 12
        && scan.reduced.len() == 7
        && scan.algebras.len() == 4
        && w_report.passed();
    for (shape, rep) in &systems {
        let ok = rep.passed();
        all_ok &= ok;
        println!("  {:<3} {}", shape.name(), if ok { "agree at all samples" } else { "DISAGREE" });
    }
    report.field("candidates", scan.cases.len());
    report.field("rank2", scan.rank2.len());
    report.field("reduced", scan.reduced.len());
    report.field("algebras", scan.algebras.len());
    report.field("pairs", scan.algebras.len() + 1);
    if let Some(path_arg) = golden {
        let path = if path_arg.is_empty() {
            match std::env::var("ZSTAR_GOLDEN_DIR") {
                Ok(dir) => PathBuf::from(dir).join("qubits_bigebra_trace.txt"),
                Err(_) => {
                    println!("error: --golden without a path needs ZSTAR_GOLDEN_DIR");
                    report.field("error", "ZSTAR_GOLDEN_DIR not set");
                    report.passed = false;
                    return report.finish();
                }
            }
        } else {
            PathBuf::from(path_arg)
        };
        match std::fs::read_to_string(&path) {
            Ok(stored) => {
                let matches = stored == scan.trace_text();
                println!();
                println!(
                    "golden trace {}: {}",
                    path.display(),
                    if matches { "match" } else { "MISMATCH" }
                );
                report.field("golden_match", matches);
                all_ok &= matches;
            }
            Err(e) => {
                println!("error reading {}: {e}", path.display());
                report.field("error", format!("golden file: {e}"));
                all_ok = false;
            }
        }
    }
    report.passed = all_ok;
    report.finish()
}

fn classify_product_label(product: &Morphism) -> String {
    use zstar::catalog::{base_algebra, BaseAlgebra};
    for (name, which) in [
        ("copy (Z)", BaseAlgebra::Z),
        ("xor (X)", BaseAlgebra::X),
        ("and (H)", BaseAlgebra::H),
        ("effect (W)", BaseAlgebra::W),
    ] {
        if base_algebra(which).monoid.product == *product {
            return name.to_string();
        }
    }
    format!("{product}")
}

fn cmd_classify_linrel(prime: Option<u64>) -> ExitCode {
    let mut report = RunReport::new("classify-linrel");
    let Some(p) = prime else {
        println!("error: classify linrel needs --prime <2|3|5>");
        report.field("error", "missing --prime");
        report.passed = false;
        return report.finish();
    };
    report.field("prime", p);
    let survey = match survey_prime(p) {
        Ok(s) => s,
        Err(e) => {
            println!("error: {e}");
            report.field("error", e.to_string());
            report.passed = false;
            return report.finish();
        }
    };
    println!("linear relations over GF({p})");
    println!("  subspaces of K^3: {}", survey.subspaces_k3);
    println!("  monoids found:    {}", survey.monoids.len());
    for name in &survey.monoids {
        println!("    {name}");
    }
    for (name, size) in &survey.phase_group_sizes {
        println!("  phase group of {name}: {size} element(s)");
    }
    println!("  Z*-algebra suite:");
    let mut ok = survey.monoids.len() == 2
        && survey.monoids_non_isomorphic
        && survey.transpose_comonoid_unique
        && survey.phase_group_sizes.iter().all(|(_, n)| *n == 1);
    for (name, pass) in &survey.zstar {
        println!("    {name}: {}", if *pass { "pass" } else { "FAIL" });
        ok &= *pass;
    }
    println!(
        "  monoids non-isomorphic: {}",
        if survey.monoids_non_isomorphic { "yes" } else { "NO" }
    );
    println!(
        "  transpose comonoid unique: {}",
        if survey.transpose_comonoid_unique { "yes" } else { "NO" }
    );
    report.field("subspaces_k3", survey.subspaces_k3);
    report.field("monoids", survey.monoids.len());
    for (name, size) in &survey.phase_group_sizes {
        report.field(&format!("phase_group_{name}"), size);
    }
    for (name, pass) in &survey.zstar {
        report.field(&format!("zstar_{name}"), pass);
    }
    report.passed = ok;
    report.finish()
}

fn cmd_eval_diagram(
    file: &PathBuf,
    calculus: &str,
    a: &Option<String>,
    b: &Option<String>,
) -> ExitCode {
    let mut report = RunReport::new("eval-diagram");
    report.field("file", file.display());
    report.field("calculus", calculus);
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            println!("error reading {}: {e}", file.display());
            report.field("error", format!("io: {e}"));
            report.passed = false;
            return report.finish();
        }
    };
    let diagram: Diagram = match text.parse() {
        Ok(d) => d,
        Err(e) => {
            println!("parse error: {e}");
            report.field("error", format!("parse: {e}"));
            report.passed = false;
            return report.finish();
        }
    };
    let instance = match instance_by_name(calculus, a, b, None) {
        Ok(i) => i,
        Err(e) => {
            println!("error: {e}");
            report.field("error", e);
            report.passed = false;
            return report.finish();
        }
    };
    match evaluate(&diagram, &instance) {
        Ok(m) => {
            print!("{m}");
            report.field("inputs", diagram.inputs);
            report.field("outputs", diagram.outputs);
            report.finish()
        }
        Err(e) => {
            println!("evaluation error: {e}");
            report.field("error", e.to_string());
            report.passed = false;
            report.finish()
        }
    }
}

fn cmd_catalog_list() -> ExitCode {
    let mut report = RunReport::new("catalog-list");
    println!("tabulated calculi (catalog dump <name>):");
    for t in TabulatedCalculus::ALL {
        println!("  {:<14} parameters: {}", t.name(), t.param_count());
    }
    println!("  {:<14} parameters: --d <dim>", "qudit-zx");
    println!("  {:<14} parameters: --d <dim>", "qudit-zw");
    println!();
    println!("families (verify <name>):");
    for f in Family::ALL {
        println!("  {:<6} parameters: {}", f.name(), f.param_count());
    }
    report.field("tabulated", TabulatedCalculus::ALL.len());
    report.field("families", Family::ALL.len());
    report.finish()
}

fn cmd_catalog_dump(
    name: &str,
    a: &Option<String>,
    b: &Option<String>,
    d: Option<usize>,
    out: &Option<PathBuf>,
    check: bool,
) -> ExitCode {
    let mut report = RunReport::new("catalog-dump");
    report.field("name", name);
    let instance = match instance_by_name(name, a, b, d) {
        Ok(i) => i,
        Err(e) => {
            println!("error: {e}");
            report.field("error", e);
            report.passed = false;
            return report.finish();
        }
    };
    let table = instance.generator_table();
    let mut manifest = String::new();
    manifest.push_str(&format!("calculus {}\n", instance.name));
    for (gen, _) in &table {
        manifest.push_str(&format!("generator {gen} {gen}.mat\n"));
    }
    match out {
        Some(dir) => {
            if let Err(e) = std::fs::create_dir_all(dir) {
                println!("error creating {}: {e}", dir.display());
                report.field("error", e.to_string());
                report.passed = false;
                return report.finish();
            }
            let mut io_ok = true;
            io_ok &= std::fs::write(dir.join("manifest.txt"), &manifest).is_ok();
            for (gen, m) in &table {
                io_ok &= std::fs::write(dir.join(format!("{gen}.mat")), m.to_string()).is_ok();
            }
            println!("wrote manifest + {} matrices to {}", table.len(), dir.display());
            report.passed = io_ok;
        }
        None => {
            print!("{manifest}");
            for (gen, m) in &table {
                println!();
                println!("# {gen}");
                print!("{m}");
            }
        }
    }
    if check {
        let tab = TabulatedCalculus::from_name(name);
        match tab {
            Some(t) => {
                let params = match tabulated_params(t, a, b) {
                    Ok(p) => p,
                    Err(e) => {
                        report.field("error", e);
                        report.passed = false;
                        return report.finish();
                    }
                };
                match check_tabulated_conformance(t, &params) {
                    Ok(conf) => {
                        println!();
                        println!("{conf}");
                        report.field("conformance", conf.passed());
                        report.passed &= conf.passed();
                    }
                    Err(e) => {
                        report.field("error", e.to_string());
                        report.passed = false;
                    }
                }
            }
            None => {
                println!("note: --check applies only to tabulated calculi");
            }
        }
    }
    report.field("generators", GENERATOR_NAMES.len());
    report.finish()
}

fn main() -> ExitCode {
    // batch tool: die quietly when the consumer closes the pipe
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match &cli.command {
        Command::Verify { calculus, a, b, d } => cmd_verify(calculus, a, b, *d),
        Command::Classify { target, prime, golden } => match target.as_str() {
            "qubits" => cmd_classify_qubits(golden),
            "linrel" => cmd_classify_linrel(*prime),
            other => {
                let mut report = RunReport::new("classify");
                println!("error: unknown classification target `{other}`");
                report.field("error", format!("unknown target {other}"));
                report.passed = false;
                report.finish()
            }
        },
        Command::EvalDiagram { file, calculus, a, b } => cmd_eval_diagram(file, calculus, a, b),
        Command::Catalog { action } => match action {
            CatalogAction::List => cmd_catalog_list(),
            CatalogAction::Dump { name, a, b, d, out, check } => {
                cmd_catalog_dump(name, a, b, *d, out, *check)
            }
        },
    }
}
