// Copyright 2026 The levar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! The `levar` command line.
//!
//! Exit codes: 0 success, 1 usage error (rejected by argument parsing), 2 shape/bounds/cut error (including
//! a failing selftest), 3 format or I/O error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::array::Array;
use crate::error::Error;
use crate::format::{self, generate, Fill};
use crate::kernels;
use crate::nesting::{cut_count, nest, CutSpec, RankedCut, ShapeCut};
use crate::render::render;
use crate::selftest;
use crate::shape::{Shape, ShapeSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_SHAPE: i32 = 2;
pub const EXIT_FORMAT: i32 = 3;

const PREVIEW: usize = 16;

#[derive(Debug, Parser)]
#[command(name = "levar", version, about = "Arrays with levels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print level, shape, element count and a data preview.
    Show { file: PathBuf },
    /// Generate an array.
    Gen {
        /// Shape as JSON: null, {"extents":[..],"inner":..} or a list of axes.
        #[arg(long)]
        shape: String,
        /// iota, const:V or rand:SEED
        #[arg(long, default_value = "iota")]
        fill: Fill,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Element-wise sum of two arrays.
    Add {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the sum of all elements.
    Sum { file: PathBuf },
    /// Reinterpret the elements under another shape of the same size.
    Reshape {
        file: PathBuf,
        #[arg(long)]
        shape: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the two shapes a cut produces.
    Cut {
        file: PathBuf,
        /// Cut as JSON: null, {"side":K} or {"slot":I,"split":J}.
        #[arg(long)]
        cut: String,
    },
    /// Nest an array along a cut and print every inner block.
    Nest {
        file: PathBuf,
        #[arg(long)]
        cut: String,
    },
    /// 2×2 average pooling of a matrix with even extents.
    Pool {
        file: PathBuf,
        /// Use explicit index arithmetic instead of reshape + nest.
        #[arg(long)]
        direct: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Matrix product.
    Matmul {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the randomized property checks.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

type CliResult<T> = Result<T, Error>;

/// Parses a shape argument. A bare JSON list of naturals is shorthand for the
/// level-2 shape with those axes.
pub fn parse_shape(text: &str) -> Result<Shape, Error> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Format(format!("shape: {e}")))?;
    if value.is_array() {
        let axes: Vec<usize> =
            serde_json::from_value(value).map_err(|e| Error::Format(format!("shape: {e}")))?;
        return Ok(Shape::axes(&axes));
    }
    let spec: Option<ShapeSpec> =
        serde_json::from_value(value).map_err(|e| Error::Format(format!("shape: {e}")))?;
    Shape::from_spec(spec.as_ref())
}

pub fn parse_cut(shape: &Shape, text: &str) -> Result<RankedCut, Error> {
    let spec: Option<CutSpec> =
        serde_json::from_str(text).map_err(|e| Error::Format(format!("cut: {e}")))?;
    RankedCut::from_spec(shape, spec.as_ref())
}

fn shape_json(s: &Shape) -> String {
    serde_json::to_string(&s.to_spec()).expect("shape serializes")
}

fn load(path: &Path) -> CliResult<Array<i64>> {
    let bytes =
        fs::read(path).map_err(|e| Error::Format(format!("reading {}: {e}", path.display())))?;
    format::from_slice(&bytes)
}

fn emit(a: &Array<i64>, output: Option<&Path>, out: &mut dyn Write) -> CliResult<()> {
    let bytes = format::to_bytes(a);
    match output {
        Some(path) => fs::write(path, &bytes)
            .map_err(|e| Error::Format(format!("writing {}: {e}", path.display())))?,
        None => {
            out.write_all(&bytes)
                .and_then(|_| writeln!(out))
                .map_err(io)?;
        }
    }
    Ok(())
}

fn io(e: std::io::Error) -> Error {
    Error::Format(format!("io: {e}"))
}

fn preview(data: &[i64]) -> String {
    let head: Vec<String> = data.iter().take(PREVIEW).map(i64::to_string).collect();
    let more = if data.len() > PREVIEW {
        format!(",... ({} more)", data.len() - PREVIEW)
    } else {
        String::new()
    };
    format!("[{}{more}]", head.join(","))
}

fn execute(cmd: Command, out: &mut dyn Write) -> CliResult<i32> {
    match cmd {
        Command::Show { file } => {
            let a = load(&file)?;
            let data = a.to_vec();
            writeln!(out, "level: {}", a.level()).map_err(io)?;
            writeln!(out, "shape: {}", shape_json(a.shape())).map_err(io)?;
            writeln!(out, "prod: {}", a.shape().prod()).map_err(io)?;
            writeln!(out, "data: {}", preview(&data)).map_err(io)?;
            if a.level() <= 2 && data.len() <= 256 {
                writeln!(out, "array: {}", render(&a)).map_err(io)?;
            }
        }
        Command::Gen {
            shape,
            fill,
            output,
        } => {
            let s = parse_shape(&shape)?;
            emit(&generate(&s, fill), output.as_deref(), out)?;
        }
        Command::Add { a, b, output } => {
            let c = kernels::plus(&load(&a)?, &load(&b)?)?;
            emit(&c, output.as_deref(), out)?;
        }
        Command::Sum { file } => {
            writeln!(out, "{}", kernels::sum(&load(&file)?)).map_err(io)?;
        }
        Command::Reshape {
            file,
            shape,
            output,
        } => {
            let r = load(&file)?.reshape(&parse_shape(&shape)?)?;
            emit(&r, output.as_deref(), out)?;
        }
        Command::Cut { file, cut } => {
            let a = load(&file)?;
            let sc = ShapeCut::new(a.shape(), parse_cut(a.shape(), &cut)?)?;
            writeln!(out, "left: {}", shape_json(sc.left())).map_err(io)?;
            writeln!(out, "right: {}", shape_json(sc.right())).map_err(io)?;
            writeln!(out, "cut_count: {}", cut_count(a.shape())).map_err(io)?;
        }
        Command::Nest { file, cut } => {
            let a = load(&file)?;
            let c = parse_cut(a.shape(), &cut)?;
            let n = nest(&a, c)?;
            writeln!(out, "outer: {}", shape_json(n.shape())).map_err(io)?;
            for ov in n.shape().indices() {
                let inner = n.sel(&ov)?.tabulate();
                writeln!(out, "{ov} {}", format::to_string(&inner)).map_err(io)?;
            }
        }
        Command::Pool {
            file,
            direct,
            output,
        } => {
            let a = load(&file)?;
            let r = if direct {
                kernels::avgp_direct(&a)?
            } else {
                kernels::avgp_nested(&a)?
            };
            emit(&r, output.as_deref(), out)?;
        }
        Command::Matmul { a, b, output } => {
            let c = kernels::matmul(&load(&a)?, &load(&b)?)?;
            emit(&c, output.as_deref(), out)?;
        }
        Command::Selftest { seed } => {
            let report = selftest::run(seed);
            for c in &report.checks {
                let status = if c.ok() { "PASS" } else { "FAIL" };
                writeln!(
                    out,
                    "{status} {} ({} cases, {} failed)",
                    c.name,
                    c.passed + c.failed,
                    c.failed
                )
                .map_err(io)?;
            }
            writeln!(
                out,
                "{} passed, {} failed",
                report.passed(),
                report.failed()
            )
            .map_err(io)?;
            if !report.all_passed() {
                return Ok(EXIT_SHAPE);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let target: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_format() {
                EXIT_FORMAT
            } else {
                EXIT_SHAPE
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_arguments() {
        assert_eq!(parse_shape("null").unwrap(), Shape::unit());
        assert_eq!(parse_shape("[2,3]").unwrap(), Shape::axes(&[2, 3]));
        assert_eq!(
            parse_shape(r#"{"extents":[4],"inner":null}"#).unwrap(),
            Shape::vector(4)
        );
        assert_eq!(parse_shape("[2,-1]").unwrap_err().kind(), "FormatError");
        assert_eq!(
            parse_shape(r#"{"extents":[4,4],"inner":null}"#)
                .unwrap_err()
                .kind(),
            "LengthMismatch"
        );
    }

    #[test]
    fn cut_arguments() {
        let s = Shape::axes(&[2, 3]);
        assert_eq!(
            parse_cut(&s, r#"{"slot":0,"split":1}"#).unwrap(),
            RankedCut::slot(&s, 0, 1).unwrap()
        );
        assert_eq!(
            parse_cut(&Shape::unit(), "null").unwrap(),
            RankedCut::Trivial
        );
        assert_eq!(
            parse_cut(&s, r#"{"side":0}"#).unwrap_err().kind(),
            "CutMismatch"
        );
        assert_eq!(parse_cut(&s, "{").unwrap_err().kind(), "FormatError");
    }

    #[test]
    fn usage_errors_exit_1() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["levar", "frobnicate"], &mut out, &mut err), EXIT_USAGE);
        assert_eq!(run(["levar", "gen"], &mut out, &mut err), EXIT_USAGE);
        assert_eq!(
            run(
                ["levar", "gen", "--shape", "[1]", "--fill", "ones"],
                &mut out,
                &mut err
            ),
            EXIT_USAGE
        );
    }
}
