//! Human-readable and structured renderings of computation results.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use crate::combinat::{count_01_matrices, transpose, Partition};
use crate::klpoly::{KLPolynomial, KlEngine};
use crate::lce::{
    c_of_decomposition, c_via_kl, d_of_decomposition, d_via_theorem_main, decompose, CoefficientVector,
    StandardDecomposition,
};
use crate::multiseg::Multisegment;
use crate::symgroup::Permutation;

/// Everything computed for one multisegment.
#[derive(Debug, Clone)]
pub struct Expansion {
    pub multisegment: Multisegment,
    /// Through the closed KL formula.
    pub c: CoefficientVector,
    /// `d` obtained from `c` through the 0-1 matrix counts.
    pub d: CoefficientVector,
    pub decomposition: StandardDecomposition,
    /// Present when the standard-module route was also evaluated.
    pub check: Option<CrossCheck>,
}

#[derive(Debug, Clone)]
pub struct CrossCheck {
    pub c: CoefficientVector,
    pub d: CoefficientVector,
}

impl Expansion {
    pub fn compute(engine: &KlEngine, m: &Multisegment, verify: bool) -> Self {
        let c = c_via_kl(engine, m);
        let d = d_via_theorem_main(&c);
        let decomposition = decompose(engine, m);
        let check = verify.then(|| CrossCheck {
            c: c_of_decomposition(m.n(), &decomposition),
            d: d_of_decomposition(m.n(), &decomposition),
        });
        Self { multisegment: m.clone(), c, d, decomposition, check }
    }

    /// `Some(true)` when both routes agree on `c` and on `d`.
    pub fn verified(&self) -> Option<bool> {
        self.check.as_ref().map(|ch| ch.c == self.c && ch.d == self.d)
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("multisegment".into(), json!(self.multisegment.to_string()));
        obj.insert("n".into(), json!(self.multisegment.n()));
        obj.insert("k".into(), json!(self.multisegment.k()));
        obj.insert("c".into(), vector_json(&self.c));
        obj.insert("d".into(), vector_json(&self.d));
        obj.insert("decomposition".into(), decomposition_json(&self.decomposition));
        if let Some(ch) = &self.check {
            obj.insert("c_decomposition".into(), vector_json(&ch.c));
            obj.insert("d_decomposition".into(), vector_json(&ch.d));
            obj.insert("verified".into(), json!(self.verified()));
        }
        Value::Object(obj)
    }

    pub fn to_table(&self) -> String {
        let m = &self.multisegment;
        let mut s = String::new();
        let _ = writeln!(s, "multisegment {m}  (n = {}, k = {})", m.n(), m.k());
        let _ = writeln!(s, "c: {}", self.c);
        let _ = writeln!(s, "d: {}", self.d);
        if let Some(ch) = &self.check {
            let status = if self.verified() == Some(true) { "agree" } else { "MISMATCH" };
            let _ = writeln!(s, "standard-module route: c: {}  d: {}  [{status}]", ch.c, ch.d);
        }
        let _ = writeln!(s, "decomposition:");
        s.push_str(&decomposition_table(&self.decomposition));
        s
    }
}

pub fn big_json(v: &BigInt) -> Value {
    Value::Number(v.to_string().parse::<Number>().expect("integers are valid JSON numbers"))
}

/// Object keyed by `"(a,b,..)"`, dominance-descending.
pub fn vector_json(v: &CoefficientVector) -> Value {
    let mut obj = Map::new();
    for (k, c) in v.iter() {
        obj.insert(k.to_string(), big_json(c));
    }
    Value::Object(obj)
}

pub fn decomposition_json(dec: &StandardDecomposition) -> Value {
    Value::Array(
        dec.terms
            .iter()
            .map(|(c, z)| {
                json!({
                    "coefficient": big_json(c),
                    "lambda": z.lambda().entries(),
                    "eta": z.eta().entries(),
                })
            })
            .collect(),
    )
}

pub fn decomposition_table(dec: &StandardDecomposition) -> String {
    let mut s = String::new();
    for (c, z) in &dec.terms {
        let exps: Vec<String> = z.exponents2().iter().map(|e| half(*e)).collect();
        let alpha: Vec<String> = z.alpha().parts().iter().map(ToString::to_string).collect();
        let _ = writeln!(
            s,
            "  {c:>+4}  zeta(lambda={}, eta={})  alpha=({})  exponents=({})",
            z.lambda(),
            z.eta(),
            alpha.join(","),
            exps.join(",")
        );
    }
    s
}

fn half(doubled: i64) -> String {
    if doubled % 2 == 0 {
        (doubled / 2).to_string()
    } else {
        format!("{doubled}/2")
    }
}

pub fn kl_json(x: &Permutation, w: &Permutation, p: &KLPolynomial) -> Value {
    json!({
        "x": x.to_string(),
        "w": w.to_string(),
        "coefficients": p.coeffs().iter().map(big_json).collect::<Vec<_>>(),
        "polynomial": p.to_string(),
        "value_at_one": big_json(&p.eval_at_one()),
    })
}

pub fn kl_table(x: &Permutation, w: &Permutation, p: &KLPolynomial) -> String {
    format!("P_{{{x},{w}}} = {p}\nP(1) = {}\n", p.eval_at_one())
}

/// The matrix `S[alpha][beta] = s(alpha, beta^t)` over partitions of `n`.
pub fn whittaker_matrix(n: usize) -> (Vec<Partition>, Vec<Vec<BigInt>>) {
    let parts = Partition::all(n);
    let rows = parts
        .iter()
        .map(|a| {
            parts
                .iter()
                .map(|b| BigInt::from(count_01_matrices(a.parts(), transpose(b).parts())))
                .collect()
        })
        .collect();
    (parts, rows)
}

pub fn smatrix_json(n: usize) -> Value {
    let (parts, rows) = whittaker_matrix(n);
    json!({
        "n": n,
        "partitions": parts.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "matrix": rows.iter().map(|r| r.iter().map(big_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn smatrix_table(n: usize) -> String {
    let (parts, rows) = whittaker_matrix(n);
    let labels: Vec<String> = parts.iter().map(ToString::to_string).collect();
    let width = labels
        .iter()
        .map(String::len)
        .chain(rows.iter().flatten().map(|v| v.to_string().len()))
        .max()
        .unwrap_or(1);
    let mut s = String::new();
    let _ = writeln!(s, "s(alpha, beta^t), rows alpha, columns beta");
    let _ = write!(s, "{:>width$}", "");
    for l in &labels {
        let _ = write!(s, " {l:>width$}");
    }
    s.push('\n');
    for (l, row) in labels.iter().zip(&rows) {
        let _ = write!(s, "{l:>width$}");
        for v in row {
            let _ = write!(s, " {:>width$}", v.to_string());
        }
        s.push('\n');
    }
    s
}
