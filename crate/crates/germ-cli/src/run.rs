//! Subcommand dispatch: evaluate argument expressions, run the requested
//! computation, and serialize a deterministic report.

use std::time::Duration;

use germ_core::blowup;
use germ_core::curve::{self, CurveParam, TangentDirection};
use germ_core::diffeo::FormalDiffeo;
use germ_core::groups::{self, Caps, FdOutcome, GeneratedGroup};
use germ_core::jetspace;
use germ_core::series::BiSeries;
use germ_core::vfield::{self, FormalVectorField};

use crate::report::*;
use crate::value::{eval, Value};
use crate::{parser, Diag};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Order,
    Noether,
    Both,
}

impl std::str::FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "order" => Ok(Method::Order),
            "noether" => Ok(Method::Noether),
            "both" => Ok(Method::Both),
            other => Err(format!("unknown method '{other}' (expected order, noether, or both)")),
        }
    }
}

/// Settings shared by all subcommands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Truncation order for every evaluated value.
    pub trunc: u32,
    /// Blow-up depth for near-point walks.
    pub depth: u32,
    /// Word-ball radius for group subcommands.
    pub ball: u32,
    /// Jet level for jet-matrix and determination checks.
    pub jet: u32,
    pub method: Method,
    pub max_words: usize,
    pub time_budget_ms: Option<u64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            trunc: 24,
            depth: 12,
            ball: 3,
            jet: 1,
            method: Method::Both,
            max_words: 20_000,
            time_budget_ms: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), Diag> {
        if self.trunc < self.jet {
            return Err(Diag::new(
                0,
                0,
                format!(
                    "truncation {} is below the jet level {}; raise --trunc or lower --jet",
                    self.trunc, self.jet
                ),
            ));
        }
        if self.depth < 1 {
            return Err(Diag::new(0, 0, "--depth must be at least 1"));
        }
        if self.max_words == 0 {
            return Err(Diag::new(0, 0, "--max-words must be positive"));
        }
        Ok(())
    }

    fn caps(&self) -> Caps {
        Caps {
            max_words: self.max_words,
            time_budget: self.time_budget_ms.map(Duration::from_millis),
        }
    }
}

/// A finished report: JSON text plus whether a resource cap cut it short.
#[derive(Debug)]
pub struct Output {
    pub json: String,
    pub capped: bool,
}

fn finish<T: serde::Serialize>(report: &T, capped: bool) -> Result<Output, Diag> {
    let json = serde_json::to_string(report)
        .map_err(|e| Diag::new(0, 0, format!("serialization failed: {e}")))?;
    Ok(Output { json, capped })
}

fn core_diag(err: germ_core::Error) -> Diag {
    Diag::new(0, 0, err.to_string())
}

fn eval_text(cfg: &RunConfig, text: &str) -> Result<Value, Diag> {
    let expr = parser::parse(text)?;
    eval(&expr, cfg.trunc)
}

fn want_curve(cfg: &RunConfig, text: &str) -> Result<CurveParam, Diag> {
    match eval_text(cfg, text)? {
        Value::Curve(c) => Ok(c),
        v => Err(Diag::new(1, 1, format!("expected a curve, found {}", v.type_name()))),
    }
}

fn want_diffeo(cfg: &RunConfig, text: &str) -> Result<FormalDiffeo, Diag> {
    match eval_text(cfg, text)? {
        Value::Diffeo(d) => Ok(d),
        v => Err(Diag::new(1, 1, format!("expected a diffeomorphism, found {}", v.type_name()))),
    }
}

fn want_group(cfg: &RunConfig, text: &str) -> Result<GeneratedGroup, Diag> {
    match eval_text(cfg, text)? {
        Value::Group(g) => Ok(g),
        v => Err(Diag::new(1, 1, format!("expected a group, found {}", v.type_name()))),
    }
}

/// A line {ax + by = 0}, written as the linear form `ax + by`.
fn want_line(cfg: &RunConfig, text: &str) -> Result<TangentDirection, Diag> {
    let f = match eval_text(cfg, text)? {
        Value::Bi(f) => f,
        v => {
            return Err(Diag::new(
                1,
                1,
                format!("expected a linear form in x, y (the line it cuts out), found {}", v.type_name()),
            ))
        }
    };
    let a = f.coeff(1, 0);
    let b = f.coeff(0, 1);
    let linear = BiSeries::from_terms([((1, 0), a.clone()), ((0, 1), b.clone())], f.trunc());
    if !f.eq_through(&linear, f.trunc()) {
        return Err(Diag::new(1, 1, "the line must be a homogeneous linear form like y or x+2*y"));
    }
    TangentDirection::new(a, b).map_err(|_| {
        Diag::new(1, 1, "the line must be a nonzero linear form like y or x+2*y")
    })
}

fn curve_literal(gamma: &CurveParam) -> String {
    Value::Curve(gamma.clone()).print_literal()
}

/// Render a map on blow-up chart coordinates: the second variable is t.
fn chart_display(phi: &FormalDiffeo) -> String {
    format!("({}, {})", phi.comp_x(), phi.comp_y()).replace('y', "t")
}

fn chart_vf_display(xf: &FormalVectorField) -> String {
    format!("({}) dx + ({}) dt", xf.comp_x(), xf.comp_y()).replace("y", "t")
}

pub fn intersect(cfg: &RunConfig, alpha: &str, beta: &str) -> Result<Output, Diag> {
    let a = want_curve(cfg, alpha)?;
    let b = want_curve(cfg, beta)?;
    let order = if cfg.method != Method::Noether {
        Some(curve::intersect_order(&a, &b).map_err(core_diag)?.into())
    } else {
        None
    };
    let noether = if cfg.method != Method::Order {
        Some(blowup::intersect_noether(&a, &b, cfg.depth).map_err(core_diag)?.into())
    } else {
        None
    };
    finish(
        &IntersectReport {
            alpha: curve_literal(&a),
            beta: curve_literal(&b),
            order,
            noether,
            truncation: cfg.trunc,
            depth: (cfg.method != Method::Order).then_some(cfg.depth),
        },
        false,
    )
}

pub fn inp(cfg: &RunConfig, gamma: &str) -> Result<Output, Diag> {
    let c = want_curve(cfg, gamma)?;
    let seq = blowup::near_points(&c, cfg.depth).map_err(core_diag)?;
    finish(
        &InpReport {
            curve: curve_literal(&c),
            multiplicities: seq.mults().to_vec(),
            points: seq.points().iter().map(PointJson::from).collect(),
            transforms: seq.transforms().iter().map(curve_literal).collect(),
            depth: cfg.depth,
            truncation: cfg.trunc,
        },
        false,
    )
}

pub fn blowup_once(cfg: &RunConfig, gamma: &str) -> Result<Output, Diag> {
    let c = want_curve(cfg, gamma)?;
    let tangent = c.tangent_direction();
    let (point, transform) = blowup::strict_transform(&c).map_err(core_diag)?;
    finish(
        &BlowupReport {
            curve: curve_literal(&c),
            tangent: tangent.to_string(),
            point: PointJson::from(&point),
            transform: curve_literal(&transform),
            truncation: cfg.trunc,
        },
        false,
    )
}

pub fn lift(cfg: &RunConfig, map: &str, line: &str) -> Result<Output, Diag> {
    let direction = want_line(cfg, line)?;
    match eval_text(cfg, map)? {
        Value::Diffeo(phi) => {
            let lifted = blowup::lift_diffeo(&phi, &direction).map_err(core_diag)?;
            finish(
                &LiftReport {
                    line: direction.to_string(),
                    kind: "diffeo",
                    lift: chart_display(&lifted),
                    literal: Value::Diffeo(lifted).print_literal(),
                    truncation: cfg.trunc,
                },
                false,
            )
        }
        Value::VField(xf) => {
            let lifted = blowup::lift_vfield(&xf, &direction).map_err(core_diag)?;
            finish(
                &LiftReport {
                    line: direction.to_string(),
                    kind: "vfield",
                    lift: chart_vf_display(&lifted),
                    literal: Value::VField(lifted).print_literal(),
                    truncation: cfg.trunc,
                },
                false,
            )
        }
        v => Err(Diag::new(
            1,
            1,
            format!("expected a diffeomorphism or vector field, found {}", v.type_name()),
        )),
    }
}

pub fn act(cfg: &RunConfig, map: &str, gamma: &str) -> Result<Output, Diag> {
    let phi = want_diffeo(cfg, map)?;
    let c = want_curve(cfg, gamma)?;
    let moved = c.act(&phi).map_err(core_diag)?;
    finish(
        &ActReport {
            curve: curve_literal(&moved),
            multiplicity: moved.multiplicity().into(),
            tangent: moved.tangent_direction().to_string(),
            truncation: cfg.trunc,
        },
        false,
    )
}

pub fn exp(cfg: &RunConfig, field: &str) -> Result<Output, Diag> {
    let xf = match eval_text(cfg, field)? {
        Value::VField(xf) => xf,
        v => return Err(Diag::new(1, 1, format!("expected a vector field, found {}", v.type_name()))),
    };
    let phi = vfield::exp_vf(&xf).map_err(core_diag)?;
    finish(
        &ExpReport {
            diffeo: format!("{phi}"),
            literal: Value::Diffeo(phi).print_literal(),
            truncation: cfg.trunc,
        },
        false,
    )
}

pub fn log(cfg: &RunConfig, map: &str) -> Result<Output, Diag> {
    let phi = want_diffeo(cfg, map)?;
    let class = phi.classify();
    let xf = vfield::log_diffeo(&phi).map_err(core_diag)?;
    finish(
        &LogReport {
            vfield: format!("{xf}"),
            literal: Value::VField(xf).print_literal(),
            class: class_name(class),
            truncation: cfg.trunc,
        },
        false,
    )
}

pub fn jet_matrix(cfg: &RunConfig, map: &str) -> Result<Output, Diag> {
    let k = cfg.jet;
    let basis = jetspace::jet_monomials(k)
        .into_iter()
        .map(|(i, j)| {
            let mono = BiSeries::monomial(i, j, germ_core::scalar::Scalar::one(), k);
            format!("{mono}")
        })
        .collect();
    match eval_text(cfg, map)? {
        Value::Diffeo(phi) => {
            let jet = jetspace::project_diffeo(&phi, k).map_err(core_diag)?;
            let dim = jet.dim();
            let rows = (0..dim)
                .map(|r| (0..dim).map(|c| jet.entry(r, c).to_string()).collect())
                .collect();
            finish(&JetMatrixReport { kind: "automorphism", level: k, dim, basis, rows }, false)
        }
        Value::VField(xf) => {
            let jet = jetspace::project_vfield(&xf, k).map_err(core_diag)?;
            let dim = jet.dim();
            let rows = (0..dim)
                .map(|r| (0..dim).map(|c| jet.entry(r, c).to_string()).collect())
                .collect();
            finish(&JetMatrixReport { kind: "derivation", level: k, dim, basis, rows }, false)
        }
        v => Err(Diag::new(
            1,
            1,
            format!("expected a diffeomorphism or vector field, found {}", v.type_name()),
        )),
    }
}

pub fn fd_check(cfg: &RunConfig, group: &str) -> Result<Output, Diag> {
    let g = want_group(cfg, group)?;
    let report = groups::fd_check(&g, cfg.jet, cfg.ball, &cfg.caps()).map_err(core_diag)?;
    let (determined, counterexample) = match &report.outcome {
        FdOutcome::Determined => (true, None),
        FdOutcome::Counterexample(w) => (false, Some(w.render(g.names()))),
    };
    let capped = !report.complete;
    finish(
        &FdJson {
            determined,
            k: report.jet_level,
            l: report.radius,
            counterexample,
            truncation: report.truncation,
            complete: report.complete,
        },
        capped,
    )
}

pub fn ui_probe(cfg: &RunConfig, group: &str, gamma: &str) -> Result<Output, Diag> {
    let g = want_group(cfg, group)?;
    let c = want_curve(cfg, gamma)?;
    let report = groups::ui_probe(&g, &c, cfg.ball, &cfg.caps()).map_err(core_diag)?;
    let capped = !report.complete;
    finish(
        &UiJson {
            curve: curve_literal(&c),
            l: report.radius,
            values: report
                .values
                .iter()
                .map(|v| UiValueJson {
                    value: v.value.into(),
                    count: v.count,
                    witness: v.witness.render(g.names()),
                })
                .collect(),
            max_exact: report.max_exact.as_ref().map(|(n, w)| UiValueJson {
                value: OrderJson::Exact(*n),
                count: 1,
                witness: w.render(g.names()),
            }),
            truncation: report.truncation,
            complete: report.complete,
        },
        capped,
    )
}

pub fn orbit_tree(cfg: &RunConfig, group: &str, gamma: &str) -> Result<Output, Diag> {
    let g = want_group(cfg, group)?;
    let c = want_curve(cfg, gamma)?;
    let report =
        groups::orbit_prefix_tree(&g, &c, cfg.ball, cfg.depth, &cfg.caps()).map_err(core_diag)?;
    let capped = !report.complete;
    finish(
        &OrbitJson {
            curve: curve_literal(&c),
            l: report.radius,
            depth: report.depth,
            distinct_images: report.distinct_images,
            level_counts: report.level_counts.clone(),
            leaves: report.leaves,
            max_shared_depth: report.max_shared_depth,
            truncated_prefixes: report.truncated_prefixes,
            truncation: report.truncation,
            complete: report.complete,
        },
        capped,
    )
}

pub fn derived(cfg: &RunConfig, group: &str, rounds: u32) -> Result<Output, Diag> {
    let g = want_group(cfg, group)?;
    let report = groups::derived_sample(&g, rounds, cfg.ball, &cfg.caps()).map_err(core_diag)?;
    let capped = !report.complete;
    finish(
        &DerivedJson {
            rounds: report.depth,
            l: report.radius,
            trivial: report.trivial,
            elements: report
                .elements
                .iter()
                .map(|el| DerivedElementJson {
                    label: el.label.clone(),
                    class: class_name(el.class),
                    map: format!("{}", el.map),
                })
                .collect(),
            truncation: report.truncation,
            complete: report.complete,
        },
        capped,
    )
}
