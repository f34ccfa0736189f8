use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use foldkit::folding::{apply_operator, orbit, FoldingError, Mode, Operator};
use foldkit::CartanType;
use serde_json::json;

use crate::document::GalleryDocument;
use crate::render::render_svg;
use crate::verify::{self, Suite};

pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_STRICT_INVALID: i32 = 3;
pub const EXIT_UNDEFINED: i32 = 4;
pub const EXIT_RANK: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "foldkit", version, about = "Folding operators on galleries in affine Coxeter complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check every gallery of a document.
    Validate {
        /// Document path, or `-` for standard input.
        #[arg(default_value = "-")]
        file: String,
    },
    /// Apply a root operator to one gallery and print the new document.
    Apply {
        #[arg(default_value = "-")]
        file: String,
        #[arg(long)]
        op: Operator,
        /// Simple root, counted from 1.
        #[arg(long)]
        root: usize,
        /// Gallery position in the document, counted from 0.
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Use the operator variants exactly as printed.
        #[arg(long)]
        as_printed: bool,
    },
    /// Enumerate the orbit of a gallery under a set of operators.
    Orbit {
        #[arg(default_value = "-")]
        file: String,
        /// Comma-separated operators with roots, such as `f1,f2`.
        #[arg(long, default_value = "f1,f2")]
        ops: String,
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Run verification suites and print a JSON report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        /// Root system type; repeat for several. Defaults depend on the suite.
        #[arg(long = "type")]
        types: Vec<CartanType>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 100)]
        path_samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Also evaluate the theorem on non-regular galleries.
        #[arg(long)]
        experiment: bool,
    },
    /// Draw the galleries of a rank-two document as SVG.
    Render {
        #[arg(default_value = "-")]
        file: String,
        /// Output path; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check retractions of a truncated regular tree.
    Tree {
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long, default_value_t = 8)]
        radius: usize,
    },
}

fn read_input(file: &str) -> Result<String, String> {
    if file == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("reading standard input: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(file).map_err(|e| format!("reading {file}: {e}"))
    }
}

fn load(file: &str) -> Result<GalleryDocument, i32> {
    let text = read_input(file).map_err(|e| {
        eprintln!("{e}");
        EXIT_PARSE
    })?;
    GalleryDocument::parse(&text).map_err(|e| {
        eprintln!("{e}");
        EXIT_PARSE
    })
}

fn parse_ops(spec: &str, rank: usize) -> Result<Vec<(Operator, usize)>, String> {
    spec.split(',')
        .map(|tok| {
            let tok = tok.trim();
            let split = tok.find(|c: char| c.is_ascii_digit()).ok_or(format!("{tok:?} lacks a root"))?;
            let op: Operator = tok[..split].parse()?;
            let root: usize = tok[split..].parse().map_err(|_| format!("bad root in {tok:?}"))?;
            if root == 0 || root > rank {
                return Err(format!("root {root} out of range 1..={rank}"));
            }
            Ok((op, root - 1))
        })
        .collect()
}

pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Apply {
            file,
            op,
            root,
            index,
            as_printed,
        } => apply(&file, op, root, index, as_printed),
        Command::Orbit {
            file,
            ops,
            index,
            budget,
        } => orbit_cmd(&file, &ops, index, budget),
        Command::Verify {
            suite,
            types,
            samples,
            path_samples,
            seed,
            q,
            depth,
            jobs,
            experiment,
        } => {
            let report = verify::run(&verify::Options {
                suite,
                types,
                samples,
                path_samples,
                seed,
                q,
                depth,
                jobs,
                experiment,
            });
            println!("{}", report.to_json());
            if report.passed {
                0
            } else {
                EXIT_INVALID
            }
        }
        Command::Render { file, out } => render(&file, out),
        Command::Tree { q, radius } => {
            let report = verify::tree_report(q, radius);
            println!("{}", report.to_json());
            if report.passed {
                0
            } else {
                EXIT_INVALID
            }
        }
    }
}

fn validate(file: &str) -> i32 {
    let doc = match load(file) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let rs = doc.system();
    let mut all_valid = true;
    let entries: Vec<_> = doc
        .galleries
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let violations: Vec<String> = g.validate(&rs).iter().map(|v| v.to_string()).collect();
            all_valid &= violations.is_empty();
            json!({"index": i, "valid": violations.is_empty(), "violations": violations})
        })
        .collect();
    let report = json!({"root_system": doc.root_system.to_string(), "valid": all_valid, "galleries": entries});
    println!("{}", serde_json::to_string_pretty(&report).expect("serializes"));
    if all_valid {
        0
    } else {
        EXIT_INVALID
    }
}

fn select(doc: &GalleryDocument, index: usize) -> Result<&foldkit::Gallery, i32> {
    doc.galleries.get(index).ok_or_else(|| {
        eprintln!("gallery index {index} out of range ({} galleries)", doc.galleries.len());
        EXIT_PARSE
    })
}

fn apply(file: &str, op: Operator, root: usize, index: usize, strict: bool) -> i32 {
    let mut doc = match load(file) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let rs = doc.system();
    if root == 0 || root > rs.rank() {
        eprintln!("root {root} out of range 1..={}", rs.rank());
        return EXIT_PARSE;
    }
    let g = match select(&doc, index) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let mode = if strict {
        Mode::AsPrinted
    } else {
        Mode::Corrected
    };
    match apply_operator(&rs, g, root - 1, op, mode) {
        Ok(folded) => {
            doc.galleries[index] = folded.gallery;
            println!("{}", doc.to_canonical());
            0
        }
        Err(FoldingError::Undefined(u)) => {
            eprintln!("OperatorUndefined: {u}");
            EXIT_UNDEFINED
        }
        Err(FoldingError::InvalidResult { violations, .. }) => {
            let v: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            eprintln!("InvalidResult: {}", v.join("; "));
            if strict {
                EXIT_STRICT_INVALID
            } else {
                EXIT_INVALID
            }
        }
        Err(e) => {
            eprintln!("{e}");
            EXIT_INVALID
        }
    }
}

fn orbit_cmd(file: &str, ops: &str, index: usize, budget: usize) -> i32 {
    let doc = match load(file) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let rs = doc.system();
    let ops = match parse_ops(ops, rs.rank()) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_PARSE;
        }
    };
    let g = match select(&doc, index) {
        Ok(g) => g,
        Err(code) => return code,
    };
    match orbit(&rs, g, &ops, budget) {
        Ok(galleries) => {
            println!("{}", GalleryDocument::new(doc.root_system, galleries).to_canonical());
            0
        }
        Err(e) => {
            eprintln!("{e}");
            EXIT_INVALID
        }
    }
}

fn render(file: &str, out: Option<PathBuf>) -> i32 {
    let doc = match load(file) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let svg = match render_svg(&doc.system(), &doc.galleries) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_RANK;
        }
    };
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, svg) {
                eprintln!("writing {}: {e}", path.display());
                return EXIT_INVALID;
            }
        }
        None => print!("{svg}"),
    }
    0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn op_lists() {
        assert_eq!(
            parse_ops("f1, e2,etilde1", 2).unwrap(),
            vec![(Operator::F, 0), (Operator::E, 1), (Operator::ETilde, 0)]
        );
        assert!(parse_ops("f3", 2).is_err());
        assert!(parse_ops("g1", 2).is_err());
        assert!(parse_ops("f", 2).is_err());
    }
}
