use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use hodgekit::json::{
    construction_doc, matrix_doc, parse_construction, parse_matrix, parse_mhs, parse_mhs_parts,
    parse_pencil, parse_rows, parse_tpoint, parse_triple, parse_vector, subspace_doc, to_pretty,
    LocusDoc, MatrixDoc, MhsDoc, TPointDoc, TripleDoc,
};
use hodgekit::loci::{can_lift, locus_on_pencil};
use hodgekit::mhs::functors::{dual, end, hom, tensor};
use hodgekit::mhs::PurityFailure;
use hodgekit::radical::{genericity_experiment, is_u_large, mt_lie_upper_bound, u_p_tate};
use hodgekit::{Mhs, Rat, Subspace};

use crate::record::Inputs;
use crate::{Failure, Verb};

pub struct Output {
    pub text: String,
    /// Set when the report itself is a negative answer (exit code 4).
    pub rejection: Option<String>,
}

fn ok<T: Serialize>(doc: &T) -> Result<Output, Failure> {
    Ok(Output {
        text: to_pretty(doc),
        rejection: None,
    })
}

fn load_mhs(inputs: &mut Inputs, path: &Path) -> Result<Mhs, Failure> {
    Ok(parse_mhs(&inputs.json(path)?, "")?)
}

#[derive(Serialize)]
struct ValidateDoc {
    status: &'static str,
    filtration: Vec<String>,
    purity: Vec<PurityFailure>,
}

#[derive(Serialize)]
struct FunctorsDoc {
    dual: MhsDoc,
    end: MhsDoc,
    graded: BTreeMap<i32, MhsDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tensor: Option<MhsDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hom: Option<MhsDoc>,
}

#[derive(Serialize)]
struct SubspaceDoc {
    dim: usize,
    basis: MatrixDoc,
}

impl<K: hodgekit::Scalar> From<&Subspace<K>> for SubspaceDoc {
    fn from(s: &Subspace<K>) -> Self {
        SubspaceDoc {
            dim: s.dim(),
            basis: subspace_doc(s),
        }
    }
}

#[derive(Serialize)]
struct SplitDoc {
    splitting: MatrixDoc,
    sections: MatrixDoc,
    /// Keyed `"p,q"`.
    bigrading: BTreeMap<String, MatrixDoc>,
}

#[derive(Serialize)]
struct TruncateDoc {
    p: i32,
    sub: TripleDoc,
    quot: TripleDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    sub_point: Option<TPointDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    quot_point: Option<TPointDoc>,
}

#[derive(Serialize)]
struct FiberDoc {
    mhs: MhsDoc,
    sections: TPointDoc,
    fiber_dim: usize,
}

#[derive(Serialize)]
struct LiftDoc {
    lift: Option<MatrixDoc>,
}

#[derive(Serialize)]
struct LocusOut {
    construction: serde_json::Value,
    vector: Vec<String>,
    #[serde(flatten)]
    locus: LocusDoc,
}

#[derive(Serialize)]
struct UpDoc {
    p: i32,
    regime: hodgekit::radical::tate::Regime,
    large: bool,
    dim: usize,
    basis: MatrixDoc,
}

#[derive(Serialize)]
struct CutDoc {
    p: i32,
    dim: usize,
    large: bool,
}

#[derive(Serialize)]
struct LargeDoc {
    large: bool,
    failing_p: Vec<i32>,
    per_p: Vec<CutDoc>,
}

#[derive(Serialize)]
struct MtDoc {
    degree: usize,
    dim: usize,
    basis: MatrixDoc,
    /// Dimension of the bound inside `W_{-1}End(M)`.
    dim_w_minus1: usize,
}

pub fn run(verb: &Verb, inputs: &mut Inputs) -> Result<Output, Failure> {
    match verb {
        Verb::Validate { mhs } => {
            let (dim, w, f) = parse_mhs_parts(&inputs.json(mhs)?, "")?;
            let report = Mhs::check(dim, &w, &f);
            let valid = report.is_valid();
            let text = to_pretty(&ValidateDoc {
                status: if valid { "valid" } else { "invalid" },
                filtration: report.filtration.clone(),
                purity: report.purity.clone(),
            });
            Ok(Output {
                text,
                rejection: (!valid).then(|| format!("not a mixed Hodge structure: {report}")),
            })
        }
        Verb::Functors { mhs, with } => {
            let m = load_mhs(inputs, mhs)?;
            let other = with.as_ref().map(|p| load_mhs(inputs, p)).transpose()?;
            ok(&FunctorsDoc {
                dual: (&dual(&m)).into(),
                end: (&end(&m)).into(),
                graded: m.gr_w().iter().map(|(n, g)| (*n, g.into())).collect(),
                tensor: other.as_ref().map(|n| (&tensor(&m, n)).into()),
                hom: other.as_ref().map(|n| (&hom(&m, n)).into()),
            })
        }
        Verb::HodgeClasses { mhs } => {
            let m = load_mhs(inputs, mhs)?;
            ok(&SubspaceDoc::from(&m.hodge_classes()))
        }
        Verb::Split { mhs } => {
            let m = load_mhs(inputs, mhs)?;
            let big = m.bigrading();
            ok(&SplitDoc {
                splitting: matrix_doc(&m.deligne_splitting()),
                sections: matrix_doc(&m.deligne_sections()),
                bigrading: big
                    .components
                    .iter()
                    .filter(|(_, s)| !s.is_zero())
                    .map(|((p, q), s)| (format!("{p},{q}"), subspace_doc(s)))
                    .collect(),
            })
        }
        Verb::Build {
            triple,
            point,
            seed,
            height,
        } => {
            let mu = parse_triple(&inputs.json(triple)?, "")?;
            let alpha = match (point, seed) {
                (Some(p), _) => parse_tpoint(&inputs.json(p)?, "")?,
                (None, Some(s)) => mu.sample_point(*s, *height),
                (None, None) => mu.identity_point(),
            };
            ok(&MhsDoc::from(&mu.build(&alpha)?))
        }
        Verb::Sections { triple, mhs } => {
            let mu = parse_triple(&inputs.json(triple)?, "")?;
            let m = load_mhs(inputs, mhs)?;
            ok(&TPointDoc::from(&mu.sections_from_mhs(&m)?))
        }
        Verb::Truncate { triple, p, point } => {
            let mu = parse_triple(&inputs.json(triple)?, "")?;
            let tr = mu.truncate(*p);
            let pts = match point {
                Some(path) => {
                    let alpha = parse_tpoint(&inputs.json(path)?, "")?;
                    let (a, b) = mu.truncate_point(&tr, &alpha)?;
                    Some(((&a).into(), (&b).into()))
                }
                None => None,
            };
            let (sub_point, quot_point) = match pts {
                Some((a, b)) => (Some(a), Some(b)),
                None => (None, None),
            };
            ok(&TruncateDoc {
                p: *p,
                sub: (&tr.sub).into(),
                quot: (&tr.quot).into(),
                sub_point,
                quot_point,
            })
        }
        Verb::Fiber { triple, p, x, y, psi } => {
            let mu = parse_triple(&inputs.json(triple)?, "")?;
            let x = load_mhs(inputs, x)?;
            let y = load_mhs(inputs, y)?;
            let psi = parse_matrix(&inputs.json(psi)?, None, "")?;
            let tr = mu.truncate(*p);
            let m = mu.fiber_point(&tr, &x, &y, &psi)?;
            ok(&FiberDoc {
                mhs: (&m).into(),
                sections: (&mu.fiber_section(&tr, &x, &y, &psi)?).into(),
                fiber_dim: mu.fiber_dim(&tr, &x, &y)?,
            })
        }
        Verb::Lift { mhs, graded } => {
            let m = load_mhs(inputs, mhs)?;
            let rows = parse_rows::<Rat>(&inputs.json(graded)?, Some(m.dim()), "")?;
            let g = Subspace::span(m.dim(), rows)?;
            ok(&LiftDoc {
                lift: can_lift(&m, &g)?.map(|a| subspace_doc(&a)),
            })
        }
        Verb::Locus {
            pencil,
            construction,
            vector,
            witness,
        } => {
            let pencil = parse_pencil(&inputs.json(pencil)?, "")?;
            let (c, v) = if *witness {
                pencil.splitting_witness()?
            } else {
                let c = construction.as_ref().expect("required by clap");
                let v = vector.as_ref().expect("required by clap");
                let c = parse_construction(&inputs.json(c)?, "")?;
                (c, parse_vector::<Rat>(&inputs.json(v)?, None, "")?)
            };
            let locus = locus_on_pencil(&pencil, &v, &c)?;
            ok(&LocusOut {
                construction: construction_doc(&c),
                vector: v.iter().map(hodgekit::Scalar::format).collect(),
                locus: (&locus).into(),
            })
        }
        Verb::Up { p, mhs } => {
            let m = load_mhs(inputs, mhs)?;
            let r = u_p_tate(&m, *p)?;
            ok(&UpDoc {
                p: r.p,
                regime: r.regime,
                large: r.large,
                dim: r.subspace.dim(),
                basis: subspace_doc(&r.subspace),
            })
        }
        Verb::ULarge { mhs } => {
            let m = load_mhs(inputs, mhs)?;
            let r = is_u_large(&m)?;
            ok(&LargeDoc {
                large: r.large,
                failing_p: r.failing_p.clone(),
                per_p: r
                    .per_p
                    .iter()
                    .map(|u| CutDoc {
                        p: u.p,
                        dim: u.subspace.dim(),
                        large: u.large,
                    })
                    .collect(),
            })
        }
        Verb::MtBound { mhs, degree } => {
            let m = load_mhs(inputs, mhs)?;
            let g = mt_lie_upper_bound(&m, *degree)?;
            let w1 = end(&m).w(-1);
            ok(&MtDoc {
                degree: *degree,
                dim: g.dim(),
                basis: subspace_doc(&g),
                dim_w_minus1: g.intersect(&w1)?.dim(),
            })
        }
        Verb::Experiment {
            triple,
            samples,
            seed,
            height,
        } => {
            let mu = parse_triple(&inputs.json(triple)?, "")?;
            ok(&genericity_experiment(&mu, *samples, *seed, *height)?)
        }
    }
}
