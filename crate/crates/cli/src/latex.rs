//! LaTeX rendering for the `--output latex` mode.

use compalg::clifford::{blade_indices, Multivector};
use compalg::exactfields::{Elem, Scalar};
use compalg::matalg::{flatten_split, CompMatrix, FieldMatrix};
use compalg::quatalg::{QuatKind, Quaternion};
use num_rational::BigRational;
use num_traits::{One, Signed};

pub fn rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else if r.is_negative() {
        format!("-\\frac{{{}}}{{{}}}", -r.numer(), r.denom())
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

pub fn elem(e: &Elem) -> String {
    match e {
        Elem::Rat(r) => rational(r),
        Elem::Mod { value, .. } => value.to_string(),
    }
}

pub fn scalar(s: &Scalar) -> String {
    match s {
        Scalar::Base(e) => elem(e),
        Scalar::Quad { ext, re, im } => format!("{} + {}\\sqrt{{{}}}", elem(re), elem(im), elem(ext.param())),
    }
}

fn join_terms(terms: Vec<(String, String)>) -> String {
    // (coefficient, symbol) pairs; coefficient already rendered
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (c, sym)) in terms.into_iter().enumerate() {
        let (neg, body) = match c.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, c),
        };
        let body = match (body.as_str(), sym.is_empty()) {
            ("1", false) => sym,
            (_, true) => body,
            _ => format!("{body}{sym}"),
        };
        match (i, neg) {
            (0, true) => out.push_str(&format!("-{body}")),
            (0, false) => out.push_str(&body),
            (_, true) => out.push_str(&format!(" - {body}")),
            (_, false) => out.push_str(&format!(" + {body}")),
        }
    }
    out
}

pub fn quaternion(z: &Quaternion) -> String {
    let syms: [&str; 4] = match z.algebra().kind() {
        QuatKind::Matrix2 => ["e_{11}", "e_{12}", "e_{21}", "e_{22}"],
        QuatKind::Standard { .. } => ["", "i", "j", "k"],
    };
    let terms = z
        .coeffs()
        .iter()
        .zip(syms)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, s)| (elem(c), s.to_string()))
        .collect();
    join_terms(terms)
}

pub fn field_matrix(m: &FieldMatrix) -> String {
    let rows: Vec<String> = m
        .row_vecs()
        .iter()
        .map(|r| r.iter().map(scalar).collect::<Vec<_>>().join(" & "))
        .collect();
    format!("\\begin{{bmatrix}}\n{}\n\\end{{bmatrix}}", rows.join(" \\\\\n"))
}

/// Split algebras as a `2m×2n` array over `k` with block rules; others entrywise.
pub fn comp_matrix(z: &CompMatrix) -> String {
    if z.algebra().has_matrix_form() {
        if let Ok(flat) = flatten_split(z) {
            let cols = vec!["cc"; z.cols()].join("|");
            let mut lines = Vec::new();
            for (i, r) in flat.row_vecs().iter().enumerate() {
                if i > 0 && i % 2 == 0 {
                    lines.push("\\hline".to_string());
                }
                lines.push(format!("{} \\\\", r.iter().map(scalar).collect::<Vec<_>>().join(" & ")));
            }
            return format!("\\left[\n\\begin{{array}}{{{cols}}}\n{}\n\\end{{array}}\n\\right]", lines.join("\n"));
        }
    }
    let rows: Vec<String> = z
        .row_vecs()
        .iter()
        .map(|r| r.iter().map(quaternion).collect::<Vec<_>>().join(" & "))
        .collect();
    format!("\\begin{{bmatrix}}\n{}\n\\end{{bmatrix}}", rows.join(" \\\\\n"))
}

pub fn multivector(x: &Multivector) -> String {
    let terms = x
        .terms_grlex()
        .into_iter()
        .map(|(m, c)| {
            let sym = if m == 0 {
                String::new()
            } else {
                let idx: Vec<String> = blade_indices(m).iter().map(|i| i.to_string()).collect();
                format!("e_{{{}}}", idx.join(""))
            };
            let c = if c.is_one() && m != 0 { "1".to_string() } else { rational(c) };
            (c, sym)
        })
        .collect();
    join_terms(terms)
}
