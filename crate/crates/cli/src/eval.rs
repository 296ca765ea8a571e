//! Prefix-expression evaluator over ring elements.
//!
//! Expressions are plain JSON:
//!
//! - a number — the crisp embedding of that real
//! - `{"coords": [q1, …, qn]}` — an element by its coordinates
//! - `[op, …]` — an operation applied to sub-expressions:
//!   `["add", x, y]`, `["sub", x, y]`, `["smul", λ, x]` (λ a number),
//!   `["cross", x, y]`, `["inv", x]`, `["div", x, y]`

use std::sync::Arc;

use serde_json::Value;

use sli_ring::{Error, Result, SVector, SliBasis};

pub fn eval(expr: &Value, basis: &Arc<SliBasis>) -> Result<SVector> {
    match expr {
        Value::Number(x) => {
            let x = x
                .as_f64()
                .ok_or_else(|| Error::InvalidSpec(format!("not a finite number: {x}")))?;
            Ok(SVector::crisp(Arc::clone(basis), x))
        }
        Value::Object(fields) => {
            let coords = fields
                .get("coords")
                .ok_or_else(|| Error::InvalidSpec("object without \"coords\"".to_string()))?;
            let coords: Vec<f64> = serde_json::from_value(coords.clone())?;
            SVector::new(Arc::clone(basis), coords)
        }
        Value::Array(items) => apply(items, basis),
        other => Err(Error::InvalidSpec(format!(
            "expected a number, {{\"coords\": …}}, or [op, …]; got {other}"
        ))),
    }
}

fn apply(items: &[Value], basis: &Arc<SliBasis>) -> Result<SVector> {
    let op = items
        .first()
        .and_then(Value::as_str)
        .ok_or_else(|| Error::InvalidSpec("operation list must start with a name".to_string()))?;
    let args = &items[1..];
    match (op, args) {
        ("add", [x, y]) => eval(x, basis)?.add_psi(&eval(y, basis)?),
        ("sub", [x, y]) => eval(x, basis)?.sub_psi(&eval(y, basis)?),
        ("cross", [x, y]) => eval(x, basis)?.cross_psi(&eval(y, basis)?),
        ("div", [x, y]) => eval(x, basis)?.div_psi(&eval(y, basis)?),
        ("inv", [x]) => eval(x, basis)?.inv_psi(),
        ("smul", [lambda, x]) => {
            let lambda = lambda.as_f64().ok_or_else(|| {
                Error::InvalidSpec("smul takes a scalar first, then an expression".to_string())
            })?;
            Ok(eval(x, basis)?.scalar_psi(lambda))
        }
        ("add" | "sub" | "cross" | "div" | "smul", _) => Err(Error::InvalidSpec(format!(
            "{op} takes exactly two arguments, got {}",
            args.len()
        ))),
        ("inv", _) => Err(Error::InvalidSpec(format!(
            "inv takes exactly one argument, got {}",
            args.len()
        ))),
        _ => Err(Error::InvalidSpec(format!("unknown operation \"{op}\""))),
    }
}
