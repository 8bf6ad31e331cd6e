use std::path::Path;

use anyhow::{bail, Context, Result};
use gallai::coloring::ColoringSpec;
use gallai::dilation::multi_dilation_family;
use gallai::disjointness::{build_family, FamilyBudget, FamilyMode};
use gallai::document::{InputEcho, Payload, WitnessDocument};
use gallai::geometry::PointSet;
use gallai::lattice::{find_copy, gallai_number, ThresholdOptions, ThresholdStatus};
use gallai::scalar::QuadScalar;
use gallai::svg::{render_svg, Window};

use crate::config::{Config, Radicands};
use crate::{Command, FamilyArgs, FindArgs, NumberArgs, RenderArgs, Source, VerifyArgs};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Outcome {
    Verified,
    Failed,
    /// Nothing found within the limits.
    Unresolved,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Verified => 0,
            Outcome::Failed => 1,
            Outcome::Unresolved => 2,
        }
    }
}

pub fn dispatch(command: Command, config: &Config, out: Option<&Path>) -> Result<Outcome> {
    match command {
        Command::Find(args) => find(args, config, out),
        Command::Number(args) => number(args, config, out),
        Command::Family(args) => family(args, None, config, out),
        Command::Dilations(args) => {
            let radicands = match (args.radicands, &config.radicands) {
                (Some(text), _) => Radicands::Text(text).values()?,
                (None, Some(r)) => r.values()?,
                (None, None) => bail!("--radicands is required"),
            };
            family(args.family, Some(radicands), config, out)
        }
        Command::Verify(args) => verify(args),
        Command::Render(args) => render(args, config, out),
    }
}

fn load_set(text: Option<&String>) -> Result<PointSet> {
    let text = text.context("--set is required")?;
    let literal = match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .with_context(|| format!("cannot read point set {path}"))?,
        None => text.clone(),
    };
    Ok(PointSet::parse(&literal)?)
}

struct Resolved {
    set: PointSet,
    spec: ColoringSpec,
}

fn resolve_source(source: Source, config: &Config) -> Result<Resolved> {
    let set = load_set(source.set.as_ref().or(config.set.as_ref()))?;
    let colors = source.colors.or(config.colors);
    let seed = source.seed.or(config.seed);
    let text = match (source.coloring.or_else(|| config.coloring.clone()), seed) {
        (Some(c), Some(s)) if c.trim() == "random" => format!("random:{s}"),
        (Some(c), _) => c,
        (None, Some(s)) => format!("random:{s}"),
        (None, None) => bail!("--coloring is required"),
    };
    Ok(Resolved {
        set,
        spec: ColoringSpec::new(text, colors),
    })
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn finish(doc: &WitnessDocument, out: Option<&Path>, found: bool) -> Result<Outcome> {
    emit(&doc.to_json(), out)?;
    report(doc);
    Ok(if !doc.verification.all_pass {
        Outcome::Failed
    } else if !found {
        Outcome::Unresolved
    } else {
        Outcome::Verified
    })
}

fn report(doc: &WitnessDocument) {
    let r = &doc.verification.report;
    if r.all_pass() {
        eprintln!("verification: passed ({} members, {} pairs)", r.members, r.pairs);
    } else {
        eprintln!("verification: FAILED ({} violations)", r.violations.len());
        for v in &r.violations {
            eprintln!("  {v}");
        }
    }
}

fn find(args: FindArgs, config: &Config, out: Option<&Path>) -> Result<Outcome> {
    let seed = args.source.seed.or(config.seed);
    let src = resolve_source(args.source, config)?;
    let side = args.side.or(config.side).unwrap_or(20);
    let max_scale = args.max_scale.or(config.max_scale);
    let coloring = src.spec.build()?;
    let grid = coloring.sample_grid(vec![side; src.set.dim()])?;
    let witness = find_copy(&grid, &src.set, max_scale.unwrap_or(u64::MAX))?;
    match &witness {
        Some(w) => eprintln!(
            "witness: {:?} + {}·S in color {}",
            w.translate, w.scale, w.color
        ),
        None => eprintln!("no monochromatic copy in the side-{side} grid"),
    }
    let found = witness.is_some();
    let input = InputEcho {
        command: "find".into(),
        set: Some(src.set),
        coloring: Some(src.spec),
        side: Some(side),
        max_scale,
        seed,
        ..InputEcho::default()
    };
    let doc = WitnessDocument::new(input, Payload::Witness { grid, witness }, Some(&coloring))?;
    finish(&doc, out, found)
}

fn number(args: NumberArgs, config: &Config, out: Option<&Path>) -> Result<Outcome> {
    let set = load_set(args.set.as_ref().or(config.set.as_ref()))?;
    let colors = args.colors.or(config.colors).context("--colors is required")?;
    let max_side = args.max_side.or(config.max_side).unwrap_or(12);
    let options = ThresholdOptions {
        canonical_colors: args.canonical_colors || config.canonical_colors.unwrap_or(false),
    };
    let result = gallai_number(&set, colors, max_side, options)?;
    let found = match result.status {
        ThresholdStatus::Resolved { side } => {
            eprintln!("threshold: {side}");
            true
        }
        ThresholdStatus::Unresolved { bound } => {
            eprintln!("unresolved: an avoiding {colors}-coloring exists at side {bound}");
            false
        }
    };
    let input = InputEcho {
        command: "number".into(),
        set: Some(set),
        colors: Some(colors),
        max_side: Some(max_side),
        ..InputEcho::default()
    };
    let doc = WitnessDocument::new(input, Payload::Threshold(result), None)?;
    finish(&doc, out, found)
}

fn family(
    args: FamilyArgs,
    radicands: Option<Vec<u64>>,
    config: &Config,
    out: Option<&Path>,
) -> Result<Outcome> {
    let src = resolve_source(args.source, config)?;
    let k = args.k.or(config.k).unwrap_or(1);
    let mode: FamilyMode = match args.mode.as_ref().or(config.mode.as_ref()) {
        Some(m) => m.parse()?,
        None => FamilyMode::default(),
    };
    let budget: FamilyBudget = match args.budget.as_ref().or(config.budget.as_ref()) {
        Some(b) => b.parse()?,
        None => FamilyBudget::default(),
    };
    let coloring = src.spec.build()?;
    let (payload, summary) = match &radicands {
        None => {
            let fam = build_family(&coloring, &src.set, k, &QuadScalar::one(), mode, budget)?;
            let summary = format!("family: {} disjoint monochromatic copies", fam.len());
            (Payload::Family(fam), summary)
        }
        Some(r) => {
            let multi = multi_dilation_family(&coloring, &src.set, r, k, mode, budget)?;
            let factors: Vec<String> = multi.factors.iter().map(ToString::to_string).collect();
            let summary = format!(
                "dilations: {} families, {} copies, factors {}",
                multi.families.len(),
                multi.copies(),
                factors.join(", ")
            );
            (Payload::Multifamily(multi), summary)
        }
    };
    eprintln!("{summary}");
    let input = InputEcho {
        command: if radicands.is_some() { "dilations" } else { "family" }.into(),
        set: Some(src.set),
        coloring: Some(src.spec),
        k: Some(k),
        mode: Some(mode),
        budget: Some(budget),
        radicands,
        ..InputEcho::default()
    };
    let doc = WitnessDocument::new(input, payload, Some(&coloring))?;
    finish(&doc, out, true)
}

fn read_doc(path: &Path) -> Result<WitnessDocument> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    Ok(WitnessDocument::from_json(&text)?)
}

fn verify(args: VerifyArgs) -> Result<Outcome> {
    let doc = read_doc(&args.file)?;
    let fresh = WitnessDocument {
        verification: doc.reverify()?.into(),
        ..doc.clone()
    };
    if fresh.verification.all_pass != doc.verification.all_pass {
        eprintln!("note: the stored report disagrees with the fresh check");
    }
    report(&fresh);
    Ok(if fresh.verification.all_pass {
        Outcome::Verified
    } else {
        Outcome::Failed
    })
}

fn render(args: RenderArgs, config: &Config, out: Option<&Path>) -> Result<Outcome> {
    let doc = read_doc(&args.file)?;
    let window = match args.window.as_ref().or(config.window.as_ref()) {
        Some(w) => Some(w.parse::<Window>()?),
        None => None,
    };
    let svg = render_svg(&doc, window)?;
    emit(&svg, out)?;
    Ok(Outcome::Verified)
}
