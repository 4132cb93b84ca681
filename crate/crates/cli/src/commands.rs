use easy_diagrams::classify::{
    classify_easy, classify_projective, classify_projectively_easy, classify_sphere, Witness,
};
use easy_diagrams::duality::{
    affine_to_projective, projective_to_affine, round_trip_check, round_trip_check_proj,
};
use easy_diagrams::pairing::enumerate;
use easy_diagrams::perm::{ClosureOptions, DerivationStep};
use easy_diagrams::tensor::{
    delta, gram_matrix, halflib_model_check, hom_dimension, projective_relation_check,
    rank_fraction_free, Model, ProjectiveKind,
};
use easy_diagrams::{
    CategoryTruncation, Error, ExactMatrix, Family, FilteredClosure, Matrix, PairingDiagram,
    Permutation, ProjectiveCategoryTruncation,
};
use serde_json::{json, Value};

use crate::{ClassifyKind, ClosureKind, Command, Direction, ModelArgs, ModelKind, VerifyKind};

/// A diagnostic together with the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Parse(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

type Outcome = Result<Value, Failure>;

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Classify { what, gens } => classify(what, &gens),
        Command::Closure { of } => closure(of),
        Command::HomDim { model, n, k, l } => {
            let model: Model = model.parse()?;
            Ok(json!({ "dim": hom_dimension(model, n, k, l)? }))
        }
        Command::Gram { family, k, l, n } => gram(family.parse()?, k, l, n),
        Command::Delta {
            pairing,
            upper,
            lower,
            n,
        } => {
            let pairing: PairingDiagram = pairing.parse()?;
            Ok(json!({ "delta": delta(&pairing, &upper, &lower, n)? }))
        }
        Command::Dualize {
            dir,
            gens,
            cap,
            roundtrip,
        } => dualize(dir, &gens, cap, roundtrip),
        Command::Verify {
            what: VerifyKind::Model(args),
        } => verify_model(&args),
        Command::Enumerate {
            family,
            k,
            l,
            count_only,
        } => {
            let family: Family = family.parse()?;
            let diagrams = enumerate(k, l, family)?;
            let mut out = json!({
                "family": family.name(),
                "k": k,
                "l": l,
                "count": diagrams.len(),
            });
            if !count_only {
                out["diagrams"] = json!(diagrams);
            }
            Ok(out)
        }
    }
}

fn classify(what: ClassifyKind, gens: &str) -> Outcome {
    match what {
        ClassifyKind::Sphere => {
            let gens = Permutation::parse_list(gens)?;
            Ok(json!({ "verdict": classify_sphere(&gens) }))
        }
        ClassifyKind::Projective => {
            let gens = Permutation::parse_list(gens)?;
            let v = classify_projective(&gens)?;
            Ok(json!({ "verdict": v.verdict, "input_shift_stable": v.input_shift_stable }))
        }
        ClassifyKind::Easy => {
            let gens = PairingDiagram::parse_list(gens)?;
            Ok(json!({ "verdict": classify_easy(&gens) }))
        }
        ClassifyKind::ProjEasy => {
            let gens = PairingDiagram::parse_list(gens)?;
            Ok(json!({ "verdict": classify_projectively_easy(&gens)? }))
        }
    }
}

fn closure(of: ClosureKind) -> Outcome {
    match of {
        ClosureKind::Perms {
            gens,
            cap,
            witness,
            provenance,
        } => {
            let gens = Permutation::parse_list(&gens)?;
            let target: Option<Permutation> = witness.map(|t| t.parse()).transpose()?;
            let options = ClosureOptions {
                provenance: provenance || target.is_some(),
            };
            let c = FilteredClosure::with_options(&gens, cap, options)?;
            let levels: Vec<Value> = c
                .level_sizes()
                .into_iter()
                .map(|(size, count)| json!({ "size": size, "count": count }))
                .collect();
            let mut out = json!({
                "cap": cap,
                "generators": gens,
                "levels": levels,
                "total": c.elements().count(),
                "verdict": classify_sphere(&gens),
            });
            if let Some(target) = target {
                let w = match c.derivation(&target) {
                    Some(derivation) => Witness::Found { target, derivation },
                    None => Witness::NotFoundWithinCap { target },
                };
                out["witness"] = json!(w);
            }
            if provenance {
                let steps: Vec<DerivationStep> = c
                    .elements()
                    .filter_map(|p| {
                        c.provenance(p).map(|rule| DerivationStep {
                            result: p.clone(),
                            rule: rule.clone(),
                        })
                    })
                    .collect();
                out["provenance"] = json!(steps);
            }
            Ok(out)
        }
        ClosureKind::Pairings { gens, cap, compare } => {
            let gens = PairingDiagram::parse_list(&gens)?;
            let family: Option<Family> = compare.map(|f| f.parse()).transpose()?;
            let c = CategoryTruncation::closure(&gens, cap)?;
            let cells: serde_json::Map<String, Value> = c
                .cells()
                .map(|(&(k, l), cell)| (format!("{k},{l}"), json!(cell.len())))
                .collect();
            let mut out = json!({
                "cap": cap,
                "cells": cells,
                "total": c.len(),
                "verdict": classify_easy(&gens),
            });
            if let Some(family) = family {
                let reference = CategoryTruncation::from_family(family, cap);
                let differing: Vec<String> = c
                    .differing_cells(&reference)
                    .into_iter()
                    .map(|(k, l)| format!("{k},{l}"))
                    .collect();
                out["compare"] = json!({
                    "family": family.name(),
                    "equal": differing.is_empty(),
                    "differing_cells": differing,
                });
            }
            Ok(out)
        }
    }
}

fn gram(family: Family, k: usize, l: usize, n: usize) -> Outcome {
    let diagrams = enumerate(k, l, family)?;
    let entries: Matrix<u64> = gram_matrix(&diagrams, n)?;
    let exact: ExactMatrix = gram_matrix(&diagrams, n)?;
    let rows: Vec<Vec<u64>> = (0..entries.rows())
        .map(|r| (0..entries.cols()).map(|c| entries[(r, c)]).collect())
        .collect();
    Ok(json!({
        "family": family.name(),
        "k": k,
        "l": l,
        "N": n,
        "diagrams": diagrams,
        "matrix": rows,
        "rank": rank_fraction_free(&exact),
    }))
}

fn dualize(dir: Direction, gens: &str, cap: usize, roundtrip: bool) -> Outcome {
    let gens = PairingDiagram::parse_list(gens)?;
    match dir {
        Direction::A2p => {
            let d = CategoryTruncation::closure(&gens, cap)?;
            if roundtrip {
                return Ok(json!({ "roundtrip": round_trip_check(&d) }));
            }
            Ok(json!(affine_to_projective(&d)?.to_json()))
        }
        Direction::P2a => {
            // One extra half level feeds the top cells of the requested cap.
            let half = cap / 2;
            let e = ProjectiveCategoryTruncation::closure(&gens, half + 1)?.restrict(half);
            if roundtrip {
                return Ok(json!({ "roundtrip": round_trip_check_proj(&e) }));
            }
            Ok(json!(projective_to_affine(&e).to_json()))
        }
    }
}

fn verify_model(args: &ModelArgs) -> Outcome {
    let report = match args.kind {
        ModelKind::Halflib => halflib_model_check(args.n, args.samples, args.tol, args.seed)?,
        ModelKind::ProjReal => {
            projective_relation_check(ProjectiveKind::Real, args.n, args.samples, args.tol, args.seed)?
        }
        ModelKind::ProjComplex => projective_relation_check(
            ProjectiveKind::Complex,
            args.n,
            args.samples,
            args.tol,
            args.seed,
        )?,
    };
    let mut out = json!(report);
    out["seed"] = json!(args.seed);
    Ok(out)
}
