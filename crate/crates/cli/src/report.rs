//! Report computation and emission.
//!
//! A [`ReportData`] holds every computed value; the JSON and table renderers
//! both read from it, so the two formats always agree. JSON output is
//! byte-deterministic: fixed key order, and every floating-point number
//! serialized in decimal scientific notation with 12 significant digits.

use nalgebra::DVector;

use randers_core::{
    classify, classify_tilde, connection_gx_closed_form, connection_relation_douglas,
    deformed_metric, flag_curvature, flag_ratio_residual, phi_map,
    sectional_curvature_closed_form, sectional_curvature_plane, sectional_douglas_closed_form,
    sectional_pipeline, sectional_ratio_berwald, AdaptedFrame, FTildeEvaluator, Finsler, Tensor3,
};

use crate::spec_file::{CliError, LoadedSpec, MetricSpec};

/// Which metric's connection/sectional tables to include.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricSelection {
    Base,
    Deformed,
    Both,
}

impl MetricSelection {
    fn base(self) -> bool {
        matches!(self, MetricSelection::Base | MetricSelection::Both)
    }
    fn deformed(self) -> bool {
        matches!(self, MetricSelection::Deformed | MetricSelection::Both)
    }
}

pub struct ReportOptions {
    pub selection: MetricSelection,
    /// Fail with a precondition error when the input is not Berwald.
    pub require_flag: bool,
}

pub struct ValidationBlock {
    pub antisymmetry_residual: f64,
    pub jacobi_residual: f64,
    pub metric_asymmetry: f64,
    pub metric_min_eigenvalue: f64,
    pub x_norm: f64,
    pub deformed_bound: f64,
}

pub struct ClassificationBlock {
    pub douglas: bool,
    pub berwald: bool,
    pub douglas_residual: f64,
    pub berwald_residual: f64,
    pub tolerance: f64,
}

pub struct SectionalEntry {
    /// 1-based input-basis indices, `i < j`.
    pub i: usize,
    pub j: usize,
    pub value: f64,
}

pub struct FlagEntry {
    /// 1-based frame indices.
    pub pole: usize,
    pub partner: usize,
    pub value: f64,
}

pub struct FlagBlock {
    pub base: Vec<FlagEntry>,
    pub deformed: Vec<FlagEntry>,
    pub ratio_residual: f64,
}

pub struct CrossChecks {
    pub connection_closed_form_residual: f64,
    pub sectional_closed_form_residual: f64,
    pub f_tilde_two_path_residual: f64,
    pub gx_phi_pairing_residual: f64,
    pub classification_tilde_matches: bool,
    pub douglas_connection_relation_residual: Option<f64>,
    pub douglas_sectional_stated_form_residual: Option<f64>,
    pub berwald_connection_residual: Option<f64>,
    pub berwald_ratio_residual: Option<f64>,
    pub berwald_pole_residual: Option<f64>,
    pub flag_ratio_residual: Option<f64>,
}

pub struct ReportData {
    pub labels: Vec<String>,
    pub dim: usize,
    pub tolerance: f64,
    pub metric_spec: MetricSpec,
    pub metric_rows: Vec<Vec<f64>>,
    pub x: Vec<f64>,
    pub brackets: Vec<(usize, usize, usize, f64)>,
    pub validation: ValidationBlock,
    pub eigenvalues: Vec<f64>,
    pub i0: usize,
    pub frame_basis: Vec<Vec<f64>>,
    pub classification: ClassificationBlock,
    pub connection_base: Option<Tensor3>,
    pub connection_deformed: Option<Tensor3>,
    pub sectional_base: Option<Vec<SectionalEntry>>,
    pub sectional_deformed: Option<Vec<SectionalEntry>>,
    pub flag: Option<FlagBlock>,
    pub cross_checks: CrossChecks,
}

fn basis_vector(n: usize, i: usize) -> DVector<f64> {
    DVector::from_fn(n, |r, _| if r == i { 1.0 } else { 0.0 })
}

pub fn compute_report(loaded: &LoadedSpec, opts: &ReportOptions) -> Result<ReportData, CliError> {
    let alg = &loaded.algebra;
    let h = &loaded.metric;
    let field = &loaded.field;
    let tol = loaded.tolerance;
    let n = alg.dim();

    let frame = AdaptedFrame::new(alg, h, field, tol)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let gx = deformed_metric(h, field);

    let classification = classify(alg, h, field, tol);
    let tilde = classify_tilde(alg, h, field, tol)
        .map_err(|e| CliError::Validation(e.to_string()))?;

    if opts.require_flag && !classification.berwald {
        return Err(CliError::Precondition(format!(
            "flag curvature requires a Berwald-type input (douglas residual {:.3e}, \
             berwald residual {:.3e})",
            classification.douglas_residual, classification.berwald_residual
        )));
    }

    let (conn_h, rt_h, _sect_h) =
        sectional_pipeline(&frame, h, tol).map_err(|e| CliError::Validation(e.to_string()))?;
    let (conn_gx, rt_gx, sect_gx) =
        sectional_pipeline(&frame, &gx, tol).map_err(|e| CliError::Validation(e.to_string()))?;

    let input_pairs = |rt: &randers_core::CurvatureTensor,
                       metric: &randers_core::Metric|
     -> Result<Vec<SectionalEntry>, CliError> {
        let gram = frame.gram(metric);
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let u = frame.coords(&basis_vector(n, i), h);
                let v = frame.coords(&basis_vector(n, j), h);
                let value = sectional_curvature_plane(rt, &gram, &u, &v, tol)
                    .map_err(|e| CliError::Validation(e.to_string()))?;
                out.push(SectionalEntry {
                    i: i + 1,
                    j: j + 1,
                    value,
                });
            }
        }
        Ok(out)
    };

    // cross checks, always computed
    let conn_closed = connection_gx_closed_form(&frame);
    let connection_closed_form_residual = conn_gx.max_abs_diff(&conn_closed);
    let sect_closed = sectional_curvature_closed_form(&frame);
    let sectional_closed_form_residual = sect_gx.max_abs_diff(&sect_closed);

    let ft = FTildeEvaluator::new(h, field).map_err(|e| CliError::Validation(e.to_string()))?;
    let mut f_tilde_two_path_residual: f64 = 0.0;
    let mut probes: Vec<DVector<f64>> = (0..n).map(|i| basis_vector(n, i)).collect();
    probes.push(field.coords().clone());
    for y in &probes {
        let a = ft.evaluate(y);
        let b = ft.evaluate_closed_form(y);
        f_tilde_two_path_residual = f_tilde_two_path_residual.max((a - b).abs());
    }

    let phi = phi_map(h, field);
    let mut gx_phi_pairing_residual: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let pairing = h.inner(&basis_vector(n, i), &(&phi * basis_vector(n, j)));
            gx_phi_pairing_residual =
                gx_phi_pairing_residual.max((gx.matrix()[(i, j)] - pairing).abs());
        }
    }

    let mut douglas_connection_relation_residual = None;
    let mut douglas_sectional_stated_form_residual = None;
    if classification.douglas {
        let rel = connection_relation_douglas(&frame, h, field, tol)
            .map_err(|e| CliError::Precondition(e.to_string()))?;
        douglas_connection_relation_residual = Some(rel.residual);
        let stated = sectional_douglas_closed_form(&frame, h, field, tol)
            .map_err(|e| CliError::Precondition(e.to_string()))?;
        douglas_sectional_stated_form_residual = Some(stated.max_abs_diff(&sect_gx));
    }

    let mut berwald_connection_residual = None;
    let mut berwald_ratio_residual = None;
    let mut berwald_pole_residual = None;
    let mut flag_ratio = None;
    let mut flag = None;
    if classification.berwald {
        berwald_connection_residual = Some(conn_gx.max_abs_diff(&conn_h));
        let ratio = sectional_ratio_berwald(&frame, h, field, tol)
            .map_err(|e| CliError::Precondition(e.to_string()))?;
        berwald_ratio_residual = Some(ratio.ratio_residual);
        berwald_pole_residual = Some(ratio.pole_residual);
        let fr = flag_ratio_residual(&frame, h, field, tol)
            .map_err(|e| CliError::Precondition(e.to_string()))?;
        flag_ratio = Some(fr);

        let collect = |which: Finsler| -> Result<Vec<FlagEntry>, CliError> {
            let report = flag_curvature(&frame, h, field, which, tol)
                .map_err(|e| CliError::Precondition(e.to_string()))?;
            Ok(report
                .iter()
                .map(|(&(pole, partner), &value)| FlagEntry {
                    pole: pole + 1,
                    partner: partner + 1,
                    value,
                })
                .collect())
        };
        flag = Some(FlagBlock {
            base: collect(Finsler::Base)?,
            deformed: collect(Finsler::Deformed)?,
            ratio_residual: fr,
        });
    }

    let metric_rows = (0..n)
        .map(|i| (0..n).map(|j| h.matrix()[(i, j)]).collect())
        .collect();

    Ok(ReportData {
        labels: alg.labels().to_vec(),
        dim: n,
        tolerance: tol,
        metric_spec: loaded.file.metric.clone(),
        metric_rows,
        x: field.coords().iter().copied().collect(),
        brackets: {
            let mut out = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    for k in 0..n {
                        let v = alg.structure()[(i, j, k)];
                        if v != 0.0 {
                            out.push((i + 1, j + 1, k + 1, v));
                        }
                    }
                }
            }
            out
        },
        validation: ValidationBlock {
            antisymmetry_residual: alg.antisymmetry_residual(),
            jacobi_residual: alg.jacobi_residual(),
            metric_asymmetry: loaded.metric_asymmetry,
            metric_min_eigenvalue: h.min_eigenvalue(),
            x_norm: field.norm_h(),
            deformed_bound: field.deformed_validity_bound(),
        },
        eigenvalues: frame.eigenvalues().to_vec(),
        i0: frame.i0() + 1,
        frame_basis: frame
            .basis()
            .iter()
            .map(|v| v.iter().copied().collect())
            .collect(),
        classification: ClassificationBlock {
            douglas: classification.douglas,
            berwald: classification.berwald,
            douglas_residual: classification.douglas_residual,
            berwald_residual: classification.berwald_residual,
            tolerance: classification.tolerance,
        },
        connection_base: opts
            .selection
            .base()
            .then(|| conn_h.to_input_basis(&frame, h)),
        connection_deformed: opts
            .selection
            .deformed()
            .then(|| conn_gx.to_input_basis(&frame, h)),
        sectional_base: if opts.selection.base() {
            Some(input_pairs(&rt_h, h)?)
        } else {
            None
        },
        sectional_deformed: if opts.selection.deformed() {
            Some(input_pairs(&rt_gx, &gx)?)
        } else {
            None
        },
        flag,
        cross_checks: CrossChecks {
            connection_closed_form_residual,
            sectional_closed_form_residual,
            f_tilde_two_path_residual,
            gx_phi_pairing_residual,
            classification_tilde_matches: (classification.douglas, classification.berwald)
                == (tilde.douglas, tilde.berwald),
            douglas_connection_relation_residual,
            douglas_sectional_stated_form_residual,
            berwald_connection_residual,
            berwald_ratio_residual,
            berwald_pole_residual,
            flag_ratio_residual: flag_ratio,
        },
    })
}

// ---------------------------------------------------------------------------
// deterministic JSON emission

enum Json {
    Bool(bool),
    Int(i64),
    Num(f64),
    Str(String),
    Arr(Vec<Json>),
    Obj(Vec<(String, Json)>),
}

/// 12 significant digits, decimal scientific notation; `-0` normalized.
pub fn fmt_num(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

fn write_json(value: &Json, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Json::Int(i) => out.push_str(&i.to_string()),
        Json::Num(x) => out.push_str(&fmt_num(*x)),
        Json::Str(s) => {
            out.push('"');
            out.push_str(&escape(s));
            out.push('"');
        }
        Json::Arr(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push_str("[\n");
            for (idx, item) in items.iter().enumerate() {
                out.push_str(&pad);
                out.push_str("  ");
                write_json(item, indent + 1, out);
                if idx + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad);
            out.push(']');
        }
        Json::Obj(fields) => {
            if fields.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (idx, (key, item)) in fields.iter().enumerate() {
                out.push_str(&pad);
                out.push_str("  \"");
                out.push_str(&escape(key));
                out.push_str("\": ");
                write_json(item, indent + 1, out);
                if idx + 1 < fields.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad);
            out.push('}');
        }
    }
}

fn nums(values: impl IntoIterator<Item = f64>) -> Json {
    Json::Arr(values.into_iter().map(Json::Num).collect())
}

fn tensor_json(t: &Tensor3) -> Json {
    let n = t.dim();
    Json::Arr(
        (0..n)
            .map(|i| {
                Json::Arr(
                    (0..n)
                        .map(|j| nums((0..n).map(|k| t[(i, j, k)])))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn sectional_json(entries: &[SectionalEntry], labels: &[String]) -> Json {
    Json::Arr(
        entries
            .iter()
            .map(|e| {
                Json::Obj(vec![
                    ("i".into(), Json::Int(e.i as i64)),
                    ("j".into(), Json::Int(e.j as i64)),
                    ("label_i".into(), Json::Str(labels[e.i - 1].clone())),
                    ("label_j".into(), Json::Str(labels[e.j - 1].clone())),
                    ("value".into(), Json::Num(e.value)),
                ])
            })
            .collect(),
    )
}

fn flag_json(entries: &[FlagEntry]) -> Json {
    Json::Arr(
        entries
            .iter()
            .map(|e| {
                Json::Obj(vec![
                    ("pole".into(), Json::Int(e.pole as i64)),
                    ("partner".into(), Json::Int(e.partner as i64)),
                    ("value".into(), Json::Num(e.value)),
                ])
            })
            .collect(),
    )
}

pub fn render_json(data: &ReportData) -> String {
    let metric_json = match &data.metric_spec {
        MetricSpec::Keyword(w) => Json::Str(w.clone()),
        MetricSpec::Matrix(_) => Json::Arr(
            data.metric_rows
                .iter()
                .map(|row| nums(row.iter().copied()))
                .collect(),
        ),
    };
    let input = Json::Obj(vec![
        ("dim".into(), Json::Int(data.dim as i64)),
        (
            "labels".into(),
            Json::Arr(data.labels.iter().map(|l| Json::Str(l.clone())).collect()),
        ),
        (
            "brackets".into(),
            Json::Arr(
                data.brackets
                    .iter()
                    .map(|&(i, j, k, v)| {
                        Json::Obj(vec![
                            ("i".into(), Json::Int(i as i64)),
                            ("j".into(), Json::Int(j as i64)),
                            ("k".into(), Json::Int(k as i64)),
                            ("value".into(), Json::Num(v)),
                        ])
                    })
                    .collect(),
            ),
        ),
        ("metric".into(), metric_json),
        ("X".into(), nums(data.x.iter().copied())),
        ("tolerance".into(), Json::Num(data.tolerance)),
    ]);

    let validation = Json::Obj(vec![
        (
            "antisymmetry_residual".into(),
            Json::Num(data.validation.antisymmetry_residual),
        ),
        (
            "jacobi_residual".into(),
            Json::Num(data.validation.jacobi_residual),
        ),
        (
            "metric_asymmetry".into(),
            Json::Num(data.validation.metric_asymmetry),
        ),
        (
            "metric_min_eigenvalue".into(),
            Json::Num(data.validation.metric_min_eigenvalue),
        ),
        ("positive_definite".into(), Json::Bool(true)),
        ("x_norm".into(), Json::Num(data.validation.x_norm)),
        ("randers_bound_ok".into(), Json::Bool(true)),
        (
            "deformed_bound".into(),
            Json::Num(data.validation.deformed_bound),
        ),
        ("deformed_bound_ok".into(), Json::Bool(true)),
    ]);

    let eigen = Json::Obj(vec![
        ("values".into(), nums(data.eigenvalues.iter().copied())),
        ("i0".into(), Json::Int(data.i0 as i64)),
        (
            "frame_basis".into(),
            Json::Arr(
                data.frame_basis
                    .iter()
                    .map(|v| nums(v.iter().copied()))
                    .collect(),
            ),
        ),
    ]);

    let classification = Json::Obj(vec![
        ("douglas".into(), Json::Bool(data.classification.douglas)),
        ("berwald".into(), Json::Bool(data.classification.berwald)),
        (
            "douglas_residual".into(),
            Json::Num(data.classification.douglas_residual),
        ),
        (
            "berwald_residual".into(),
            Json::Num(data.classification.berwald_residual),
        ),
        (
            "tolerance".into(),
            Json::Num(data.classification.tolerance),
        ),
    ]);

    let mut connection = Vec::new();
    if let Some(t) = &data.connection_base {
        connection.push(("h".into(), tensor_json(t)));
    }
    if let Some(t) = &data.connection_deformed {
        connection.push(("gx".into(), tensor_json(t)));
    }

    let mut sectional = Vec::new();
    if let Some(s) = &data.sectional_base {
        sectional.push(("h".into(), sectional_json(s, &data.labels)));
    }
    if let Some(s) = &data.sectional_deformed {
        sectional.push(("gx".into(), sectional_json(s, &data.labels)));
    }

    let mut cross = vec![
        (
            "connection_closed_form_residual".into(),
            Json::Num(data.cross_checks.connection_closed_form_residual),
        ),
        (
            "sectional_closed_form_residual".into(),
            Json::Num(data.cross_checks.sectional_closed_form_residual),
        ),
        (
            "f_tilde_two_path_residual".into(),
            Json::Num(data.cross_checks.f_tilde_two_path_residual),
        ),
        (
            "gx_phi_pairing_residual".into(),
            Json::Num(data.cross_checks.gx_phi_pairing_residual),
        ),
        (
            "classification_tilde_matches".into(),
            Json::Bool(data.cross_checks.classification_tilde_matches),
        ),
    ];
    if let Some(v) = data.cross_checks.douglas_connection_relation_residual {
        cross.push(("douglas_connection_relation_residual".into(), Json::Num(v)));
    }
    if let Some(v) = data.cross_checks.douglas_sectional_stated_form_residual {
        cross.push((
            "douglas_sectional_stated_form_residual".into(),
            Json::Num(v),
        ));
    }
    if let Some(v) = data.cross_checks.berwald_connection_residual {
        cross.push(("berwald_connection_residual".into(), Json::Num(v)));
    }
    if let Some(v) = data.cross_checks.berwald_ratio_residual {
        cross.push(("berwald_ratio_residual".into(), Json::Num(v)));
    }
    if let Some(v) = data.cross_checks.berwald_pole_residual {
        cross.push(("berwald_pole_residual".into(), Json::Num(v)));
    }
    if let Some(v) = data.cross_checks.flag_ratio_residual {
        cross.push(("flag_ratio_residual".into(), Json::Num(v)));
    }

    let mut top = vec![
        ("input".into(), input),
        ("validation".into(), validation),
        ("eigenvalues".into(), eigen),
        ("classification".into(), classification),
        ("connection".into(), Json::Obj(connection)),
        ("sectional".into(), Json::Obj(sectional)),
    ];
    if let Some(flag) = &data.flag {
        top.push((
            "flag".into(),
            Json::Obj(vec![
                ("f".into(), flag_json(&flag.base)),
                ("f_tilde".into(), flag_json(&flag.deformed)),
                ("ratio_residual".into(), Json::Num(flag.ratio_residual)),
            ]),
        ));
    }
    top.push(("cross_checks".into(), Json::Obj(cross)));

    let mut out = String::new();
    write_json(&Json::Obj(top), 0, &mut out);
    out.push('\n');
    out
}

// ---------------------------------------------------------------------------
// human table emission

const NUM_WIDTH: usize = 21;

fn combination(coeffs: &[f64], labels: &[String]) -> String {
    let scale = coeffs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut terms = Vec::new();
    for (k, &v) in coeffs.iter().enumerate() {
        if v.abs() > 1e-12 * scale.max(1.0) {
            let sign = if v >= 0.0 { "+" } else { "-" };
            terms.push(format!("{sign} {} {}", fmt_num(v.abs()), labels[k]));
        }
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" ")
    }
}

fn connection_lines(t: &Tensor3, labels: &[String], out: &mut String) {
    let n = t.dim();
    for i in 0..n {
        for j in 0..n {
            let coeffs: Vec<f64> = (0..n).map(|k| t[(i, j, k)]).collect();
            out.push_str(&format!(
                "  nabla_{} {} = {}\n",
                labels[i],
                labels[j],
                combination(&coeffs, labels)
            ));
        }
    }
}

fn sectional_lines(entries: &[SectionalEntry], labels: &[String], out: &mut String) {
    for e in entries {
        out.push_str(&format!(
            "  K({}, {}) {:>width$}\n",
            labels[e.i - 1],
            labels[e.j - 1],
            fmt_num(e.value),
            width = NUM_WIDTH
        ));
    }
}

pub fn render_table(data: &ReportData) -> String {
    let mut out = String::new();
    let labels = &data.labels;

    out.push_str("== input ==\n");
    out.push_str(&format!("  dim        {}\n", data.dim));
    out.push_str(&format!("  labels     {}\n", labels.join(" ")));
    out.push_str(&format!("  tolerance  {}\n", fmt_num(data.tolerance)));
    out.push_str("  metric\n");
    for row in &data.metric_rows {
        out.push_str("   ");
        for v in row {
            out.push_str(&format!(" {:>width$}", fmt_num(*v), width = NUM_WIDTH));
        }
        out.push('\n');
    }
    out.push_str("  X         ");
    for v in &data.x {
        out.push_str(&format!(" {:>width$}", fmt_num(*v), width = NUM_WIDTH));
    }
    out.push('\n');
    out.push_str("  brackets\n");
    if data.brackets.is_empty() {
        out.push_str("    (abelian)\n");
    }
    for &(i, j, k, v) in &data.brackets {
        out.push_str(&format!(
            "    [{}, {}] -> {} {}\n",
            labels[i - 1],
            labels[j - 1],
            fmt_num(v),
            labels[k - 1]
        ));
    }

    out.push_str("== validation ==\n");
    let v = &data.validation;
    out.push_str(&format!(
        "  antisymmetry residual  {:>width$}\n",
        fmt_num(v.antisymmetry_residual),
        width = NUM_WIDTH
    ));
    out.push_str(&format!(
        "  jacobi residual        {:>width$}\n",
        fmt_num(v.jacobi_residual),
        width = NUM_WIDTH
    ));
    out.push_str(&format!(
        "  metric asymmetry       {:>width$}\n",
        fmt_num(v.metric_asymmetry),
        width = NUM_WIDTH
    ));
    out.push_str(&format!(
        "  metric min eigenvalue  {:>width$}  positive definite: yes\n",
        fmt_num(v.metric_min_eigenvalue),
        width = NUM_WIDTH
    ));
    out.push_str(&format!(
        "  |X|                    {:>width$}  < 1: yes\n",
        fmt_num(v.x_norm),
        width = NUM_WIDTH
    ));
    out.push_str(&format!(
        "  |X|(1+|X|)             {:>width$}  < 1: yes\n",
        fmt_num(v.deformed_bound),
        width = NUM_WIDTH
    ));

    out.push_str("== eigenvalues ==\n");
    for (k, (lam, basis)) in data
        .eigenvalues
        .iter()
        .zip(&data.frame_basis)
        .enumerate()
    {
        out.push_str(&format!(
            "  X{:<2} {:>width$}  [{}]\n",
            k + 1,
            fmt_num(*lam),
            combination(basis, labels),
            width = NUM_WIDTH
        ));
    }
    out.push_str(&format!("  i0 (X direction)  {}\n", data.i0));

    out.push_str("== classification ==\n");
    let c = &data.classification;
    out.push_str(&format!(
        "  douglas  {:<5}  residual {:>width$}\n",
        c.douglas,
        fmt_num(c.douglas_residual),
        width = NUM_WIDTH
    ));
    out.push_str(&format!(
        "  berwald  {:<5}  residual {:>width$}\n",
        c.berwald,
        fmt_num(c.berwald_residual),
        width = NUM_WIDTH
    ));

    if let Some(t) = &data.connection_base {
        out.push_str("== connection of h [input basis] ==\n");
        connection_lines(t, labels, &mut out);
    }
    if let Some(t) = &data.connection_deformed {
        out.push_str("== connection of g_X [input basis] ==\n");
        connection_lines(t, labels, &mut out);
    }
    if let Some(s) = &data.sectional_base {
        out.push_str("== sectional curvature of h ==\n");
        sectional_lines(s, labels, &mut out);
    }
    if let Some(s) = &data.sectional_deformed {
        out.push_str("== sectional curvature of g_X ==\n");
        sectional_lines(s, labels, &mut out);
    }

    if let Some(flag) = &data.flag {
        out.push_str("== flag curvature (Berwald) ==\n");
        for (name, entries) in [("F", &flag.base), ("F~", &flag.deformed)] {
            for e in entries {
                out.push_str(&format!(
                    "  K^{name}(X{}, span(X{}, X{})) {:>width$}\n",
                    e.pole,
                    e.partner,
                    e.pole,
                    fmt_num(e.value),
                    width = NUM_WIDTH
                ));
            }
        }
        out.push_str(&format!(
            "  ratio-law residual {:>width$}\n",
            fmt_num(flag.ratio_residual),
            width = NUM_WIDTH
        ));
    }

    out.push_str("== cross-checks ==\n");
    let x = &data.cross_checks;
    let mut line = |name: &str, value: f64| {
        out.push_str(&format!(
            "  {name:<42} {:>width$}\n",
            fmt_num(value),
            width = NUM_WIDTH
        ));
    };
    line(
        "connection closed form vs koszul",
        x.connection_closed_form_residual,
    );
    line(
        "sectional closed form vs pipeline",
        x.sectional_closed_form_residual,
    );
    line("F~ definition vs closed form", x.f_tilde_two_path_residual);
    line("g_X vs <v, phi(z)> pairing", x.gx_phi_pairing_residual);
    if let Some(v) = x.douglas_connection_relation_residual {
        line("douglas nabla relation", v);
    }
    if let Some(v) = x.douglas_sectional_stated_form_residual {
        line("douglas sectional stated form vs pipeline", v);
    }
    if let Some(v) = x.berwald_connection_residual {
        line("berwald nabla = nablabar", v);
    }
    if let Some(v) = x.berwald_ratio_residual {
        line("berwald sectional ratio law", v);
    }
    if let Some(v) = x.berwald_pole_residual {
        line("berwald flat pole", v);
    }
    if let Some(v) = x.flag_ratio_residual {
        line("flag ratio law", v);
    }
    out.push_str(&format!(
        "  classification F vs F~ verdicts match      {}\n",
        x.classification_tilde_matches
    ));
    out
}

/// The validation block alone, for `validate`.
pub fn render_validation(data: &ReportData) -> String {
    let v = &data.validation;
    let mut out = String::new();
    out.push_str("validation: ok\n");
    out.push_str(&format!(
        "  antisymmetry residual  {}\n",
        fmt_num(v.antisymmetry_residual)
    ));
    out.push_str(&format!(
        "  jacobi residual        {}\n",
        fmt_num(v.jacobi_residual)
    ));
    out.push_str(&format!(
        "  metric asymmetry       {}\n",
        fmt_num(v.metric_asymmetry)
    ));
    out.push_str(&format!(
        "  metric min eigenvalue  {}  positive definite: yes\n",
        fmt_num(v.metric_min_eigenvalue)
    ));
    out.push_str(&format!("  |X|                    {}  < 1: yes\n", fmt_num(v.x_norm)));
    out.push_str(&format!(
        "  |X|(1+|X|)             {}  < 1: yes\n",
        fmt_num(v.deformed_bound)
    ));
    out
}
