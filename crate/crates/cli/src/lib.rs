//! Command-line surface of the ball-polyhedra toolkit: ingest center sets,
//! build and classify bodies, compare and verify pairs, generate
//! reproducible instances, and export boundary meshes.

pub mod commands;
pub mod instance;
pub mod mesh;
pub mod report;

use commands::{
    cmd_build, cmd_classify, cmd_compare, cmd_export_obj, cmd_gen, cmd_verify, BuildOptions,
    CompareOptions, ExportOptions, GenOptions, VerifyOptions, EXIT_PARSE,
};
use std::path::PathBuf;

const USAGE: &str = "\
ballpoly - ball-polyhedra toolkit

USAGE:
    ballpoly build <INSTANCE> [--out FILE] [--auto-reduce] [--reproducible]
    ballpoly classify <INSTANCE> [--out FILE] [--auto-reduce] [--reproducible]
    ballpoly compare <INSTANCE_A> <INSTANCE_B> [--out FILE] [--reproducible]
    ballpoly verify <INSTANCE_A> <INSTANCE_B> --theorem <stoker|alexandrov|normal-rigidity>
                    [--out FILE] [--reproducible]
    ballpoly gen --kind <normal|standard-not-normal|tetra> [--n N] [--seed S] [--out FILE]
    ballpoly export-obj <INSTANCE> [--segments N] [--out FILE]

Instances are JSON: {\"version\":1, \"radius\":r?, \"centers\":[[x,y,z],...], \"labels\":[..]?}.
Coordinates are divided by the radius field, so the balls are unit.
The BALLPOLY_SEED environment variable provides the default seed for gen.

Exit codes: 0 ok, 1 parse error, 2 degenerate input, 3 precondition failed,
4 negative verdict.
";

struct ArgStream {
    args: Vec<String>,
    pos: usize,
}

impl ArgStream {
    fn next(&mut self) -> Option<String> {
        let item = self.args.get(self.pos).cloned();
        if item.is_some() {
            self.pos += 1;
        }
        item
    }
}

fn parse_error(message: impl Into<String>) -> commands::CmdError {
    commands::CmdError {
        code: EXIT_PARSE,
        message: message.into(),
    }
}

fn flag_value(stream: &mut ArgStream, flag: &str) -> Result<String, commands::CmdError> {
    stream
        .next()
        .ok_or_else(|| parse_error(format!("{flag} needs a value")))
}

fn default_seed() -> u64 {
    std::env::var("BALLPOLY_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1)
}

/// Parse arguments and run; returns the process exit code.
pub fn run(args: Vec<String>) -> i32 {
    match dispatch(args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            if e.code == EXIT_PARSE {
                eprintln!("\n{USAGE}");
            }
            e.code
        }
    }
}

fn dispatch(args: Vec<String>) -> Result<i32, commands::CmdError> {
    let mut stream = ArgStream { args, pos: 0 };
    let Some(command) = stream.next() else {
        return Err(parse_error("missing subcommand"));
    };

    match command.as_str() {
        "build" | "classify" => {
            let mut input: Option<PathBuf> = None;
            let mut opts = BuildOptions {
                input: PathBuf::new(),
                out: None,
                auto_reduce: false,
                reproducible: false,
            };
            while let Some(arg) = stream.next() {
                match arg.as_str() {
                    "--out" => opts.out = Some(PathBuf::from(flag_value(&mut stream, "--out")?)),
                    "--auto-reduce" => opts.auto_reduce = true,
                    "--reproducible" => opts.reproducible = true,
                    other if !other.starts_with('-') && input.is_none() => {
                        input = Some(PathBuf::from(other))
                    }
                    other => return Err(parse_error(format!("unexpected argument '{other}'"))),
                }
            }
            opts.input = input.ok_or_else(|| parse_error("missing instance path"))?;
            if command == "build" {
                cmd_build(&opts)
            } else {
                cmd_classify(&opts)
            }
        }
        "compare" => {
            let mut inputs: Vec<PathBuf> = Vec::new();
            let mut out = None;
            let mut reproducible = false;
            while let Some(arg) = stream.next() {
                match arg.as_str() {
                    "--out" => out = Some(PathBuf::from(flag_value(&mut stream, "--out")?)),
                    "--reproducible" => reproducible = true,
                    other if !other.starts_with('-') => inputs.push(PathBuf::from(other)),
                    other => return Err(parse_error(format!("unexpected argument '{other}'"))),
                }
            }
            if inputs.len() != 2 {
                return Err(parse_error("compare needs exactly two instance paths"));
            }
            cmd_compare(&CompareOptions {
                input_a: inputs.remove(0),
                input_b: inputs.remove(0),
                out,
                reproducible,
            })
        }
        "verify" => {
            let mut inputs: Vec<PathBuf> = Vec::new();
            let mut theorem = None;
            let mut out = None;
            let mut reproducible = false;
            while let Some(arg) = stream.next() {
                match arg.as_str() {
                    "--theorem" => theorem = Some(flag_value(&mut stream, "--theorem")?),
                    "--out" => out = Some(PathBuf::from(flag_value(&mut stream, "--out")?)),
                    "--reproducible" => reproducible = true,
                    other if !other.starts_with('-') => inputs.push(PathBuf::from(other)),
                    other => return Err(parse_error(format!("unexpected argument '{other}'"))),
                }
            }
            if inputs.len() != 2 {
                return Err(parse_error("verify needs exactly two instance paths"));
            }
            let theorem = theorem.ok_or_else(|| parse_error("verify needs --theorem"))?;
            cmd_verify(&VerifyOptions {
                input_a: inputs.remove(0),
                input_b: inputs.remove(0),
                theorem,
                out,
                reproducible,
            })
        }
        "gen" => {
            let mut kind = None;
            let mut count = 5usize;
            let mut seed = default_seed();
            let mut out = None;
            while let Some(arg) = stream.next() {
                match arg.as_str() {
                    "--kind" => kind = Some(flag_value(&mut stream, "--kind")?),
                    "--n" => {
                        count = flag_value(&mut stream, "--n")?
                            .parse()
                            .map_err(|_| parse_error("--n needs an integer"))?
                    }
                    "--seed" => {
                        seed = flag_value(&mut stream, "--seed")?
                            .parse()
                            .map_err(|_| parse_error("--seed needs an integer"))?
                    }
                    "--out" => out = Some(PathBuf::from(flag_value(&mut stream, "--out")?)),
                    other => return Err(parse_error(format!("unexpected argument '{other}'"))),
                }
            }
            let kind = kind.ok_or_else(|| parse_error("gen needs --kind"))?;
            cmd_gen(&GenOptions {
                kind,
                count,
                seed,
                out,
            })
        }
        "export-obj" => {
            let mut input = None;
            let mut segments = 32usize;
            let mut out = None;
            while let Some(arg) = stream.next() {
                match arg.as_str() {
                    "--segments" => {
                        segments = flag_value(&mut stream, "--segments")?
                            .parse()
                            .map_err(|_| parse_error("--segments needs an integer"))?
                    }
                    "--out" => out = Some(PathBuf::from(flag_value(&mut stream, "--out")?)),
                    other if !other.starts_with('-') && input.is_none() => {
                        input = Some(PathBuf::from(other))
                    }
                    other => return Err(parse_error(format!("unexpected argument '{other}'"))),
                }
            }
            let input = input.ok_or_else(|| parse_error("missing instance path"))?;
            cmd_export_obj(&ExportOptions {
                input,
                segments,
                out,
            })
        }
        "--help" | "-h" | "help" => {
            println!("{USAGE}");
            Ok(0)
        }
        other => Err(parse_error(format!("unknown subcommand '{other}'"))),
    }
}
