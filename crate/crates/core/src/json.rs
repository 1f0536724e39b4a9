//! JSON and CSV encodings of elements and slice functions.
//!
//! Elements encode as `{"algebra":"O","coords":[...]}` with plain numbers in
//! double mode and `"p/q"` strings in rational mode. Functions encode as
//! `{"kind":"starpoly",...}`, `{"kind":"semiregular",...}` or
//! `{"kind":"stem",...}`.

use serde_json::{json, Map, Value};

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::poly::{SemiregularForm, StarPolynomial};
use crate::scalar::Scalar;
use crate::slice::{Body, SliceFunction, StemGrid};

pub fn element_to_json<T: Scalar>(e: &Element<T>) -> Value {
    json!({
        "algebra": e.algebra().symbol(),
        "coords": e.coords().iter().map(Scalar::to_json).collect::<Vec<_>>(),
    })
}

pub fn element_from_json<T: Scalar>(v: &Value) -> Result<Element<T>> {
    let obj = v.as_object().ok_or_else(|| bad("element must be an object"))?;
    let algebra = algebra_from_json(obj)?;
    let coords = obj
        .get("coords")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("element needs a coords array"))?;
    if coords.len() != algebra.dim() {
        return Err(bad(&format!(
            "expected {} coordinates for {}, got {}",
            algebra.dim(),
            algebra.symbol(),
            coords.len()
        )));
    }
    let coords = coords
        .iter()
        .map(|c| T::from_json(c).map_err(|e| bad(&e)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Element::new(algebra, coords))
}

fn algebra_from_json(obj: &Map<String, Value>) -> Result<Algebra> {
    let sym = obj
        .get("algebra")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("missing algebra tag"))?;
    Algebra::from_symbol(sym).ok_or_else(|| bad(&format!("unknown algebra {sym:?}")))
}

fn bad(msg: &str) -> Error {
    Error::InvalidInput(msg.into())
}

pub fn poly_to_json<T: Scalar>(p: &StarPolynomial<T>) -> Value {
    json!({
        "kind": "starpoly",
        "algebra": p.algebra().symbol(),
        "coeffs": p.coeffs().iter().map(element_to_json).collect::<Vec<_>>(),
    })
}

pub fn semiregular_to_json<T: Scalar>(s: &SemiregularForm<T>) -> Value {
    json!({
        "kind": "semiregular",
        "algebra": s.algebra().symbol(),
        "num": poly_to_json(s.numerator()),
        "den_real_coeffs": s
            .denominator()
            .real_coeffs()
            .expect("denominator is real")
            .iter()
            .map(Scalar::to_json)
            .collect::<Vec<_>>(),
    })
}

pub fn grid_to_json<T: Scalar>(g: &StemGrid<T>) -> Value {
    let (a0, a1, b0, b1) = g.rect();
    let (na, nb) = g.counts();
    let (vs, ds) = g.samples();
    let rows = |data: &[Element<T>]| -> Vec<Value> {
        (0..nb)
            .map(|ib| {
                Value::Array((0..na).map(|ia| element_to_json(&data[ib * na + ia])).collect())
            })
            .collect()
    };
    json!({
        "kind": "stem",
        "algebra": g.algebra().symbol(),
        "rect": [a0.to_json(), a1.to_json(), b0.to_json(), b1.to_json()],
        "counts": [na, nb],
        "vs": rows(vs),
        "ds": rows(ds),
        "ds_on_axis": g.ds_on_axis(),
    })
}

pub fn function_to_json<T: Scalar>(f: &SliceFunction<T>) -> Result<Value> {
    match f.body() {
        Body::Poly(p) => Ok(poly_to_json(p)),
        Body::Semiregular(s) => Ok(semiregular_to_json(s)),
        Body::Grid(g) => Ok(grid_to_json(g)),
        Body::Laurent(l) => {
            let coeffs: Map<String, Value> = l
                .coeffs()
                .iter()
                .map(|(n, c)| (n.to_string(), element_to_json(c)))
                .collect();
            let (inner, outer) = l.radii();
            Ok(json!({
                "kind": "laurent",
                "algebra": l.algebra().symbol(),
                "center": l.center().to_json(),
                "coeffs": coeffs,
                "inner_radius": inner,
                "outer_radius": if outer.is_finite() { json!(outer) } else { Value::Null },
            }))
        }
        Body::Analytic(_) => {
            Err(Error::Unsupported("analytic stems have no JSON form".into()))
        }
    }
}

pub fn function_from_json<T: Scalar>(v: &Value) -> Result<SliceFunction<T>> {
    let obj = v.as_object().ok_or_else(|| bad("function must be an object"))?;
    let kind = obj.get("kind").and_then(Value::as_str).unwrap_or("starpoly");
    match kind {
        "starpoly" => {
            let algebra = algebra_from_json(obj)?;
            let coeffs = obj
                .get("coeffs")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("starpoly needs coeffs"))?
                .iter()
                .map(element_from_json)
                .collect::<Result<Vec<_>>>()?;
            Ok(SliceFunction::poly(StarPolynomial::new(algebra, coeffs)))
        }
        "semiregular" => {
            let algebra = algebra_from_json(obj)?;
            let num = obj.get("num").ok_or_else(|| bad("semiregular needs num"))?;
            let num_fn = function_from_json::<T>(num)?;
            let num_poly = num_fn
                .as_poly()
                .ok_or_else(|| bad("semiregular numerator must be a starpoly"))?
                .clone();
            let den = obj
                .get("den_real_coeffs")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("semiregular needs den_real_coeffs"))?
                .iter()
                .map(|c| T::from_json(c).map_err(|e| bad(&e)))
                .collect::<Result<Vec<_>>>()?;
            let den = StarPolynomial::from_real_coeffs(algebra, den);
            Ok(SliceFunction::semiregular(SemiregularForm::new(num_poly, den)?))
        }
        "stem" => {
            let algebra = algebra_from_json(obj)?;
            let rect = obj
                .get("rect")
                .and_then(Value::as_array)
                .filter(|r| r.len() == 4)
                .ok_or_else(|| bad("stem needs rect [a0,a1,b0,b1]"))?;
            let rect: Vec<T> = rect
                .iter()
                .map(|c| T::from_json(c).map_err(|e| bad(&e)))
                .collect::<Result<Vec<_>>>()?;
            let counts = obj
                .get("counts")
                .and_then(Value::as_array)
                .filter(|c| c.len() == 2)
                .ok_or_else(|| bad("stem needs counts [na,nb]"))?;
            let na = counts[0].as_u64().ok_or_else(|| bad("bad counts"))? as usize;
            let nb = counts[1].as_u64().ok_or_else(|| bad("bad counts"))? as usize;
            let parse_rows = |key: &str| -> Result<Vec<Element<T>>> {
                let rows = obj
                    .get(key)
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad(&format!("stem needs {key}")))?;
                if rows.len() != nb {
                    return Err(bad(&format!("{key} must have {nb} rows")));
                }
                let mut out = Vec::with_capacity(na * nb);
                for row in rows {
                    let row = row.as_array().ok_or_else(|| bad("stem row must be an array"))?;
                    if row.len() != na {
                        return Err(bad(&format!("{key} rows must have {na} entries")));
                    }
                    for cell in row {
                        out.push(element_from_json(cell)?);
                    }
                }
                Ok(out)
            };
            let vs = parse_rows("vs")?;
            let ds = parse_rows("ds")?;
            let ds_on_axis = obj.get("ds_on_axis").and_then(Value::as_bool).unwrap_or(false);
            let grid = StemGrid::new(
                algebra,
                rect[0].clone(),
                rect[1].clone(),
                rect[2].clone(),
                rect[3].clone(),
                na,
                nb,
                vs,
                ds,
                ds_on_axis,
            )?;
            Ok(SliceFunction::grid(grid))
        }
        other => Err(bad(&format!("unknown function kind {other:?}"))),
    }
}

/// CSV rows `(alpha, beta, |f|, coords...)` over a half-plane lattice; the
/// representative point on each sphere uses the unit `e1`.
pub fn grid_csv<T: Scalar>(
    f: &SliceFunction<T>,
    rect: (f64, f64, f64, f64),
    na: usize,
    nb: usize,
) -> Result<String> {
    let algebra = f.algebra();
    let mut out = String::from("alpha,beta,abs");
    for k in 0..algebra.dim() {
        out.push_str(&format!(",c{k}"));
    }
    out.push('\n');
    let unit = Element::<T>::basis(algebra, if algebra.dim() > 1 { 1 } else { 0 });
    for ib in 0..nb {
        for ia in 0..na {
            let alpha = rect.0 + (rect.1 - rect.0) * ia as f64 / (na.max(2) - 1) as f64;
            let beta = rect.2 + (rect.3 - rect.2) * ib as f64 / (nb.max(2) - 1) as f64;
            let x = Element::from_slice_point(
                &unit,
                T::from_ratio((alpha * 1e12) as i64, 1_000_000_000_000),
                T::from_ratio((beta * 1e12) as i64, 1_000_000_000_000),
            );
            match f.evaluate(&x) {
                Ok(v) => {
                    out.push_str(&format!("{alpha},{beta},{}", v.abs_f64()));
                    for c in v.coords() {
                        out.push_str(&format!(",{}", c.to_f64()));
                    }
                    out.push('\n');
                }
                Err(_) => {
                    out.push_str(&format!("{alpha},{beta},nan"));
                    for _ in 0..algebra.dim() {
                        out.push_str(",nan");
                    }
                    out.push('\n');
                }
            }
        }
    }
    Ok(out)
}
