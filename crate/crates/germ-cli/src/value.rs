//! Evaluation of parsed expressions into exact values, and canonical
//! re-parseable printing. Every evaluated value lives at the configured
//! truncation, so printing and reparsing reproduces it exactly.

use germ_core::curve::CurveParam;
use germ_core::diffeo::FormalDiffeo;
use germ_core::groups::GeneratedGroup;
use germ_core::scalar::Scalar;
use germ_core::series::{BiSeries, UniSeries};
use germ_core::vfield::FormalVectorField;

use crate::parser::{BinOp, CallKind, Expr, ExprKind};
use crate::Diag;

#[derive(Debug, Clone)]
pub enum Value {
    Scalar(Scalar),
    Bi(BiSeries),
    Uni(UniSeries),
    Diffeo(FormalDiffeo),
    VField(FormalVectorField),
    Curve(CurveParam),
    Group(GeneratedGroup),
}

impl PartialEq for Value {
    fn eq(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Scalar(a), Value::Scalar(b)) => a == b,
            (Value::Bi(a), Value::Bi(b)) => a == b,
            (Value::Uni(a), Value::Uni(b)) => a == b,
            (Value::Diffeo(a), Value::Diffeo(b)) => a == b,
            (Value::VField(a), Value::VField(b)) => a == b,
            (Value::Curve(a), Value::Curve(b)) => a == b,
            (Value::Group(a), Value::Group(b)) => {
                a.generators() == b.generators() && a.names() == b.names()
            }
            _ => false,
        }
    }
}

impl Value {
    pub fn type_name(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "a scalar",
            Value::Bi(_) => "a series in x, y",
            Value::Uni(_) => "a series in t",
            Value::Diffeo(_) => "a diffeomorphism",
            Value::VField(_) => "a vector field",
            Value::Curve(_) => "a curve",
            Value::Group(_) => "a group",
        }
    }

    /// Canonical literal: parsing it back yields an identical value.
    pub fn print_literal(&self) -> String {
        match self {
            Value::Scalar(s) => format!("{s}"),
            Value::Bi(f) => format!("{f}"),
            Value::Uni(f) => format!("{f}"),
            Value::Diffeo(phi) => format!("diff({}, {})", phi.comp_x(), phi.comp_y()),
            Value::VField(xf) => format!("vf({}; {})", xf.comp_x(), xf.comp_y()),
            Value::Curve(gamma) => format!("curve({}; {})", gamma.comp_x(), gamma.comp_y()),
            Value::Group(g) => {
                let gens: Vec<String> = g
                    .generators()
                    .iter()
                    .map(|d| format!("diff({}, {})", d.comp_x(), d.comp_y()))
                    .collect();
                format!("group({})", gens.join(", "))
            }
        }
    }
}

/// Names assigned to group generators, in order.
pub fn generator_names(count: usize) -> Vec<String> {
    (0..count)
        .map(|k| {
            let letter = (b'a' + (k % 26) as u8) as char;
            if k < 26 {
                letter.to_string()
            } else {
                format!("{letter}{}", k / 26)
            }
        })
        .collect()
}

pub fn eval(expr: &Expr, trunc: u32) -> Result<Value, Diag> {
    let v = eval_inner(expr, trunc)?;
    Ok(truncate_value(v, trunc))
}

fn truncate_value(v: Value, n: u32) -> Value {
    match v {
        Value::Scalar(s) => Value::Scalar(s),
        Value::Bi(f) => Value::Bi(f.truncate_to(n)),
        Value::Uni(f) => Value::Uni(f.truncate_to(n)),
        // Component truncations of valid objects stay valid.
        Value::Diffeo(phi) => Value::Diffeo(
            FormalDiffeo::new(phi.comp_x().truncate_to(n), phi.comp_y().truncate_to(n))
                .expect("truncation preserves an invertible linear part"),
        ),
        Value::VField(xf) => Value::VField(xf.truncate_to(n)),
        Value::Curve(gamma) => Value::Curve(
            CurveParam::new(gamma.comp_x().truncate_to(n), gamma.comp_y().truncate_to(n))
                .expect("truncation preserves a primitive parametrization"),
        ),
        Value::Group(g) => Value::Group(g),
    }
}

fn diag_from_core(at: (u32, u32), err: germ_core::Error) -> Diag {
    Diag::new(at.0, at.1, err.to_string())
}

fn eval_inner(expr: &Expr, trunc: u32) -> Result<Value, Diag> {
    let at = (expr.line, expr.col);
    match &expr.kind {
        ExprKind::Int(n) => {
            if *n > i64::MAX as u64 {
                return Err(Diag::new(at.0, at.1, "number literal too large"));
            }
            Ok(Value::Scalar(Scalar::from_int(*n as i64)))
        }
        ExprKind::Name(name) => match name.as_str() {
            "x" => Ok(Value::Bi(BiSeries::var_x(trunc))),
            "y" => Ok(Value::Bi(BiSeries::var_y(trunc))),
            "t" => Ok(Value::Uni(UniSeries::var_t(trunc))),
            "i" => Ok(Value::Scalar(Scalar::i())),
            "e" => Ok(Value::Scalar(Scalar::epsilon())),
            other => Err(Diag::new(
                at.0,
                at.1,
                format!("unknown name '{other}' (known: x, y, t, i, e)"),
            )),
        },
        ExprKind::Neg(inner) => match eval_inner(inner, trunc)? {
            Value::Scalar(s) => Ok(Value::Scalar(s.neg_ref())),
            Value::Bi(f) => Ok(Value::Bi(f.scale(&Scalar::from_int(-1)))),
            Value::Uni(f) => Ok(Value::Uni(f.scale(&Scalar::from_int(-1)))),
            v => Err(Diag::new(at.0, at.1, format!("cannot negate {}", v.type_name()))),
        },
        ExprKind::Pow(base, exp) => {
            let v = eval_inner(base, trunc)?;
            match v {
                Value::Scalar(s) => {
                    Ok(Value::Scalar(s.pow(*exp as i64).map_err(|e| diag_from_core(at, e))?))
                }
                Value::Bi(f) => {
                    let mut acc = BiSeries::from_terms([((0, 0), Scalar::one())], trunc);
                    for _ in 0..*exp {
                        acc = acc.mul_ref(&f);
                    }
                    Ok(Value::Bi(acc))
                }
                Value::Uni(f) => {
                    let mut acc = UniSeries::from_terms([(0, Scalar::one())], trunc);
                    for _ in 0..*exp {
                        acc = acc.mul_ref(&f);
                    }
                    Ok(Value::Uni(acc))
                }
                v => Err(Diag::new(at.0, at.1, format!("cannot raise {} to a power", v.type_name()))),
            }
        }
        ExprKind::Bin(op, lhs, rhs) => {
            let a = eval_inner(lhs, trunc)?;
            let b = eval_inner(rhs, trunc)?;
            combine(*op, a, b, at, trunc)
        }
        ExprKind::Call(kind, args) => eval_call(*kind, args, at, trunc),
    }
}

fn scalar_to_bi(s: &Scalar, trunc: u32) -> BiSeries {
    BiSeries::from_terms([((0, 0), s.clone())], trunc)
}

fn scalar_to_uni(s: &Scalar, trunc: u32) -> UniSeries {
    UniSeries::from_terms([(0, s.clone())], trunc)
}

fn combine(op: BinOp, a: Value, b: Value, at: (u32, u32), trunc: u32) -> Result<Value, Diag> {
    use Value::*;
    // Promote scalars into the series ring of the other operand.
    let (a, b) = match (a, b) {
        (Scalar(s), Bi(f)) => (Bi(scalar_to_bi(&s, trunc)), Bi(f)),
        (Bi(f), Scalar(s)) => (Bi(f), Scalar(s)),
        (Scalar(s), Uni(f)) => (Uni(scalar_to_uni(&s, trunc)), Uni(f)),
        (Uni(f), Scalar(s)) => (Uni(f), Scalar(s)),
        other => other,
    };
    match (op, a, b) {
        (BinOp::Add, Scalar(a), Scalar(b)) => Ok(Scalar(a.add_ref(&b))),
        (BinOp::Sub, Scalar(a), Scalar(b)) => Ok(Scalar(a.sub_ref(&b))),
        (BinOp::Mul, Scalar(a), Scalar(b)) => Ok(Scalar(a.mul_ref(&b))),
        (BinOp::Div, Scalar(a), Scalar(b)) => {
            Ok(Scalar(a.div_ref(&b).map_err(|e| diag_from_core(at, e))?))
        }

        (BinOp::Add, Bi(a), Bi(b)) => Ok(Bi(a.add_ref(&b))),
        (BinOp::Sub, Bi(a), Bi(b)) => Ok(Bi(a.sub_ref(&b))),
        (BinOp::Mul, Bi(a), Bi(b)) => Ok(Bi(a.mul_ref(&b))),
        (BinOp::Mul, Bi(a), Scalar(s)) => Ok(Bi(a.scale(&s))),
        (BinOp::Div, Bi(a), Scalar(s)) => {
            let inv = s.inv().map_err(|e| diag_from_core(at, e))?;
            Ok(Bi(a.scale(&inv)))
        }

        (BinOp::Add, Uni(a), Uni(b)) => Ok(Uni(a.add_ref(&b))),
        (BinOp::Sub, Uni(a), Uni(b)) => Ok(Uni(a.sub_ref(&b))),
        (BinOp::Mul, Uni(a), Uni(b)) => Ok(Uni(a.mul_ref(&b))),
        (BinOp::Mul, Uni(a), Scalar(s)) => Ok(Uni(a.scale(&s))),
        (BinOp::Div, Uni(a), Scalar(s)) => {
            let inv = s.inv().map_err(|e| diag_from_core(at, e))?;
            Ok(Uni(a.scale(&inv)))
        }

        (BinOp::Add | BinOp::Sub, Bi(f), Scalar(s)) => {
            let rhs = scalar_to_bi(&s, f.trunc());
            Ok(Bi(if op == BinOp::Add { f.add_ref(&rhs) } else { f.sub_ref(&rhs) }))
        }
        (BinOp::Add | BinOp::Sub, Uni(f), Scalar(s)) => {
            let rhs = scalar_to_uni(&s, f.trunc());
            Ok(Uni(if op == BinOp::Add { f.add_ref(&rhs) } else { f.sub_ref(&rhs) }))
        }

        (BinOp::Div, _, Bi(_) | Uni(_)) => {
            Err(Diag::new(at.0, at.1, "can only divide by a scalar"))
        }
        (_, Bi(_), Uni(_)) | (_, Uni(_), Bi(_)) => {
            Err(Diag::new(at.0, at.1, "cannot mix x or y with t in one expression"))
        }
        (_, a, b) => Err(Diag::new(
            at.0,
            at.1,
            format!("cannot combine {} with {}", a.type_name(), b.type_name()),
        )),
    }
}

fn eval_call(kind: CallKind, args: &[Expr], at: (u32, u32), trunc: u32) -> Result<Value, Diag> {
    match kind {
        CallKind::Diff => {
            let a = expect_bi(eval_inner(&args[0], trunc)?, (args[0].line, args[0].col), trunc)?;
            let b = expect_bi(eval_inner(&args[1], trunc)?, (args[1].line, args[1].col), trunc)?;
            Ok(Value::Diffeo(FormalDiffeo::new(a, b).map_err(|e| diag_from_core(at, e))?))
        }
        CallKind::Vf => {
            let a = expect_bi(eval_inner(&args[0], trunc)?, (args[0].line, args[0].col), trunc)?;
            let b = expect_bi(eval_inner(&args[1], trunc)?, (args[1].line, args[1].col), trunc)?;
            Ok(Value::VField(FormalVectorField::new(a, b).map_err(|e| diag_from_core(at, e))?))
        }
        CallKind::Curve => {
            let a = expect_uni(eval_inner(&args[0], trunc)?, (args[0].line, args[0].col), trunc)?;
            let b = expect_uni(eval_inner(&args[1], trunc)?, (args[1].line, args[1].col), trunc)?;
            Ok(Value::Curve(CurveParam::new(a, b).map_err(|e| diag_from_core(at, e))?))
        }
        CallKind::Group => {
            let mut gens = Vec::new();
            for arg in args {
                match eval_inner(arg, trunc)? {
                    Value::Diffeo(d) => gens.push(d),
                    v => {
                        return Err(Diag::new(
                            arg.line,
                            arg.col,
                            format!("group(...) takes diffeomorphisms, found {}", v.type_name()),
                        ))
                    }
                }
            }
            let names = generator_names(gens.len());
            Ok(Value::Group(
                GeneratedGroup::new(gens, names).map_err(|e| diag_from_core(at, e))?,
            ))
        }
    }
}

fn expect_bi(v: Value, at: (u32, u32), trunc: u32) -> Result<BiSeries, Diag> {
    match v {
        Value::Bi(f) => Ok(f),
        Value::Scalar(s) => Ok(scalar_to_bi(&s, trunc)),
        v => Err(Diag::new(
            at.0,
            at.1,
            format!("expected a series in x, y here, found {}", v.type_name()),
        )),
    }
}

fn expect_uni(v: Value, at: (u32, u32), trunc: u32) -> Result<UniSeries, Diag> {
    match v {
        Value::Uni(f) => Ok(f),
        Value::Scalar(s) => Ok(scalar_to_uni(&s, trunc)),
        v => Err(Diag::new(
            at.0,
            at.1,
            format!("expected a series in t here, found {}", v.type_name()),
        )),
    }
}
