mod args;

use std::collections::BTreeSet;
use std::io::Write as _;
use std::process::ExitCode;

use clap::Parser;
use rayon::prelude::*;
use seaweed_core::index::{closed_form_cmax, closed_form_gcd};
use seaweed_core::liealg::DEFAULT_SEED;
use seaweed_core::render::{to_dot, to_json, to_svg, to_text, to_tikz, TableRow};
use seaweed_core::verify::{enumerate_cut_pairs, pair_count, render_summary, sweep_flavor, VerifyConfig};
use seaweed_core::{analyze, Analysis, BruteConfig, CutPair, Family, Flavor, Oracles};

use args::{
    Cli, ClosedForm, Command, GraphFormat, IndexFormat, InstanceArgs, OracleArgs, OutputArgs, Sweep, TableArgs,
    VerifyArgs,
};

enum Failure {
    /// Invalid input; exit code 2.
    Usage(String),
    /// Oracles or checks disagree; exit code 3. The output has already been
    /// written.
    Disagreement(String),
}

impl From<seaweed_core::Error> for Failure {
    fn from(e: seaweed_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn flavor_of(args: &InstanceArgs) -> Result<Flavor, Failure> {
    let family = args.family;
    let rank = match (family.is_type_a(), args.n, args.r) {
        (true, Some(n), None) => n,
        (false, None, Some(r)) => r,
        (true, _, _) => return Err(Failure::Usage(format!("{family} takes its rank as --n"))),
        (false, _, _) => return Err(Failure::Usage(format!("{family} takes its rank as --r"))),
    };
    Ok(Flavor::new(family, rank)?)
}

fn cut_side(
    flavor: Flavor,
    removed: &Option<BTreeSet<usize>>,
    kept: &Option<BTreeSet<usize>>,
    side: &str,
) -> Result<BTreeSet<usize>, Failure> {
    match (removed, kept) {
        (Some(cut), _) => Ok(cut.clone()),
        (None, Some(kept)) => {
            if let Some(bad) = kept.iter().find(|i| !flavor.root_indices().contains(i)) {
                return Err(Failure::Usage(format!(
                    "simple root {bad} in the {side} set is out of range {}..={}",
                    flavor.first_root(),
                    flavor.root_rank()
                )));
            }
            Ok(flavor.root_indices().filter(|i| !kept.contains(i)).collect())
        }
        (None, None) => Ok(BTreeSet::new()),
    }
}

fn instance_of(args: &InstanceArgs) -> Result<(Flavor, CutPair), Failure> {
    let flavor = flavor_of(args)?;
    let cuts = CutPair {
        outer: cut_side(flavor, &args.outer, &args.outer_set, "outer")?,
        inner: cut_side(flavor, &args.inner, &args.inner_set, "inner")?,
    };
    cuts.validate(flavor)?;
    Ok((flavor, cuts))
}

fn oracles_of(args: &OracleArgs) -> Oracles {
    Oracles {
        tyj: !args.no_tyj,
        brute: args.brute.then(|| BruteConfig {
            trials: args.trials,
            seed: args.seed.unwrap_or(DEFAULT_SEED),
        }),
    }
}

fn emit(output: &OutputArgs, text: &str) -> Outcome {
    match &output.output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|()| out.flush())
                .map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

fn csv_text(rows: &[TableRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 csv")
}

fn disagreement(a: &Analysis) -> Outcome {
    if a.report.agrees() {
        Ok(())
    } else {
        let r = &a.report;
        Err(Failure::Disagreement(format!(
            "{} {}: combinatorial {}, tyj {:?}, brute {:?}",
            r.flavor, r.cuts, r.index_combinatorial, r.index_tyj, r.index_brute
        )))
    }
}

fn cmd_index(instance: &InstanceArgs, oracles: &OracleArgs, format: IndexFormat, output: &OutputArgs) -> Outcome {
    let (flavor, cuts) = instance_of(instance)?;
    let a = analyze(flavor, &cuts, &oracles_of(oracles))?;
    let text = match format {
        IndexFormat::Text => to_text(&a),
        IndexFormat::Json => to_json(&a) + "\n",
        IndexFormat::Csv => csv_text(&[TableRow::new(&a)]),
    };
    emit(output, &text)?;
    disagreement(&a)
}

fn cmd_graph(instance: &InstanceArgs, format: GraphFormat, output: &OutputArgs) -> Outcome {
    let (flavor, cuts) = instance_of(instance)?;
    let a = analyze(flavor, &cuts, &Oracles::default())?;
    let text = match format {
        GraphFormat::Dot => to_dot(&a.graph),
        GraphFormat::Tikz => to_tikz(&a.graph),
        GraphFormat::Svg => to_svg(&a.graph),
        GraphFormat::Json => to_json(&a) + "\n",
    };
    emit(output, &text)?;
    disagreement(&a)
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let families = if args.families.is_empty() {
        Family::ALL.to_vec()
    } else {
        args.families.clone()
    };
    let mut flavors = Vec::new();
    for family in families {
        let max = args.max_rank.unwrap_or(if family.is_type_a() { 8 } else { 5 });
        for rank in family.min_rank()..=max {
            flavors.push(Flavor::new(family, rank)?);
        }
    }
    let total: u128 = flavors.iter().map(|&f| pair_count(f)).sum();
    if total > args.budget {
        return Err(Failure::Usage(format!(
            "sweep covers {total} cut pairs, above the budget of {}; lower --max-rank or raise --budget",
            args.budget
        )));
    }
    let brute = BruteConfig {
        trials: args.trials,
        seed: args.seed.unwrap_or(DEFAULT_SEED),
    };
    let summaries: Vec<_> = flavors
        .iter()
        .map(|&flavor| {
            let with_brute = args.brute && flavor.family.is_type_a() && flavor.rank <= args.brute_max_rank;
            sweep_flavor(
                flavor,
                &VerifyConfig {
                    brute: with_brute.then_some(brute),
                },
            )
        })
        .collect();
    emit(&args.output, &render_summary(&summaries))?;
    match summaries.iter().find_map(|s| s.first_failure.as_ref()) {
        Some(f) => Err(Failure::Disagreement(f.to_string())),
        None => Ok(()),
    }
}

fn cmd_table(args: &TableArgs) -> Outcome {
    let need_family = |allowed: fn(Family) -> bool, what: &str| -> Result<Family, Failure> {
        match args.family {
            Some(f) if allowed(f) => Ok(f),
            Some(f) => Err(Failure::Usage(format!("the {what} sweep does not apply to {f}"))),
            None => Err(Failure::Usage(format!("the {what} sweep needs --family"))),
        }
    };
    // (flavor, cuts, closed form)
    let mut jobs: Vec<(Flavor, CutPair, Option<i64>)> = Vec::new();
    match args.sweep {
        Sweep::Gcd => {
            for n in 2..=args.max {
                let flavor = Flavor::affine_a(n)?;
                for d in 1..=n / 2 {
                    jobs.push((flavor, CutPair::new([0], [d]), Some(closed_form_gcd(n, d)?)));
                }
            }
        }
        Sweep::Cmax => {
            for r in 1..=args.max {
                let flavor = Flavor::affine_c(r)?;
                for i in 0..=r {
                    for j in 0..=r {
                        jobs.push((flavor, CutPair::new([i], [j]), Some(closed_form_cmax(r, i, j)?)));
                    }
                }
            }
        }
        Sweep::Levi => {
            let family = need_family(|f| !f.is_affine(), "levi")?;
            for rank in family.min_rank()..=args.max {
                let flavor = Flavor::new(family, rank)?;
                jobs.push((flavor, CutPair::default(), Some(flavor.root_count() as i64)));
            }
        }
        Sweep::All => {
            let flavor = Flavor::new(need_family(|_| true, "all")?, args.max)?;
            if pair_count(flavor) > 2_000_000 {
                return Err(Failure::Usage(format!("{flavor} has too many cut pairs to tabulate")));
            }
            jobs.extend(enumerate_cut_pairs(flavor).into_iter().map(|c| (flavor, c, None)));
        }
    }
    let oracles = oracles_of(&args.oracles);
    let results: Result<Vec<(TableRow, bool)>, seaweed_core::Error> = jobs
        .into_par_iter()
        .map(|(flavor, cuts, closed_form)| {
            let a = analyze(flavor, &cuts, &oracles)?;
            let ok = a.report.agrees() && closed_form.is_none_or(|v| v == a.report.index_combinatorial);
            Ok((
                TableRow {
                    closed_form,
                    ..TableRow::new(&a)
                },
                ok,
            ))
        })
        .collect();
    let results = results?;
    let rows: Vec<TableRow> = results.iter().map(|(r, _)| r.clone()).collect();
    emit(&args.output, &csv_text(&rows))?;
    match results.iter().find(|(_, ok)| !ok) {
        Some((row, _)) => Err(Failure::Disagreement(format!(
            "{}({}) I={{{}}} I'={{{}}}: index {}, tyj {:?}, brute {:?}, closed form {:?}",
            row.family, row.rank, row.outer, row.inner, row.index, row.tyj, row.brute, row.closed_form
        ))),
        None => Ok(()),
    }
}

fn cmd_closed_form(which: &ClosedForm) -> Outcome {
    let value = match *which {
        ClosedForm::Gcd { n, d } => closed_form_gcd(n, d)?,
        ClosedForm::Cmax { r, i, j } => closed_form_cmax(r, i, j)?,
    };
    println!("{value}");
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(Failure::Usage("thread count must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    match &cli.command {
        Command::Index {
            instance,
            oracles,
            format,
            output,
        } => cmd_index(instance, oracles, *format, output),
        Command::Graph {
            instance,
            format,
            output,
        } => cmd_graph(instance, *format, output),
        Command::Verify(args) => cmd_verify(args),
        Command::Table(args) => cmd_table(args),
        Command::ClosedForm { which } => cmd_closed_form(which),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Disagreement(msg)) => {
            eprintln!("disagreement: {msg}");
            ExitCode::from(3)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_disagreement_maps_to_exit_3() {
        let flavor = Flavor::affine_a(10).unwrap();
        let mut a = analyze(flavor, &CutPair::new([9], [4, 8]), &Oracles::default()).unwrap();
        assert!(disagreement(&a).is_ok());
        a.report.index_tyj = Some(1);
        assert!(matches!(disagreement(&a), Err(Failure::Disagreement(_))));
    }
}
