use thiserror::Error;

use super::{MorphTerm, ObjectTerm};

/// A typing failure. `path` lists child indices from the root to the
/// offending subterm (`Compose`: 0 = later, 1 = earlier; `Par`: 0 = left,
/// 1 = right; curries and `BangF`: 0 = body).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("ill-typed term at {path:?}: {message}")]
pub struct TypeError {
    pub path: Vec<usize>,
    pub message: String,
}

/// Computes `(domain, codomain)` of a term.
pub fn typecheck(t: &MorphTerm) -> Result<(ObjectTerm, ObjectTerm), TypeError> {
    let mut path = Vec::new();
    go(t, &mut path)
}

fn bang(a: &ObjectTerm) -> ObjectTerm {
    ObjectTerm::bang(a.clone())
}

fn go(t: &MorphTerm, path: &mut Vec<usize>) -> Result<(ObjectTerm, ObjectTerm), TypeError> {
    let fail = |path: &Vec<usize>, message: String| TypeError {
        path: path.clone(),
        message,
    };
    let child = |i: usize, c: &MorphTerm, path: &mut Vec<usize>| {
        path.push(i);
        let r = go(c, path);
        path.pop();
        r
    };
    Ok(match t {
        MorphTerm::Id { obj } => {
            let o = obj.normalized();
            (o.clone(), o)
        }
        MorphTerm::Compose { later, earlier } => {
            let (d1, c1) = child(1, earlier, path)?;
            let (d2, c2) = child(0, later, path)?;
            if c1 != d2 {
                return Err(fail(
                    path,
                    format!("composition mismatch: `{c1}` does not match `{d2}`"),
                ));
            }
            (d1, c2)
        }
        MorphTerm::Par { left, right } => {
            let (d1, c1) = child(0, left, path)?;
            let (d2, c2) = child(1, right, path)?;
            (ObjectTerm::tensor([d1, d2]), ObjectTerm::tensor([c1, c2]))
        }
        MorphTerm::EvR { a, b } => {
            let (a, b) = (a.normalized(), b.normalized());
            (
                ObjectTerm::tensor([a.clone(), ObjectTerm::hom_r(a, b.clone())]),
                b,
            )
        }
        MorphTerm::EvL { a, b } => {
            let (a, b) = (a.normalized(), b.normalized());
            (
                ObjectTerm::tensor([ObjectTerm::hom_l(a.clone(), b.clone()), b]),
                a,
            )
        }
        MorphTerm::CurryL { arg, body } => {
            let arg = arg.normalized();
            let (d, c) = child(0, body, path)?;
            let df = d.factors();
            let af = arg.factors();
            if !df.starts_with(&af) {
                return Err(fail(
                    path,
                    format!("curried argument `{arg}` is not a left factor of `{d}`"),
                ));
            }
            (
                ObjectTerm::tensor(df[af.len()..].to_vec()),
                ObjectTerm::hom_r(arg, c),
            )
        }
        MorphTerm::CurryR { arg, body } => {
            let arg = arg.normalized();
            let (d, c) = child(0, body, path)?;
            let df = d.factors();
            let af = arg.factors();
            if !df.ends_with(&af) {
                return Err(fail(
                    path,
                    format!("curried argument `{arg}` is not a right factor of `{d}`"),
                ));
            }
            (
                ObjectTerm::tensor(df[..df.len() - af.len()].to_vec()),
                ObjectTerm::hom_l(c, arg),
            )
        }
        MorphTerm::CopyDelta { a } => {
            let b = bang(&a.normalized());
            (b.clone(), ObjectTerm::tensor([b.clone(), b]))
        }
        MorphTerm::CounitE { a } => (bang(&a.normalized()), ObjectTerm::UnitI),
        MorphTerm::Epsilon { a } => {
            let a = a.normalized();
            (bang(&a), a)
        }
        MorphTerm::DeltaComonad { a } => {
            let b = bang(&a.normalized());
            (b.clone(), bang(&b))
        }
        MorphTerm::LaxM { objs } => {
            let objs: Vec<ObjectTerm> = objs.iter().map(ObjectTerm::normalized).collect();
            (
                ObjectTerm::tensor(objs.iter().map(|a| bang(&bang(a)))),
                bang(&ObjectTerm::tensor(objs.iter().map(bang))),
            )
        }
        MorphTerm::BangF { body } => {
            let (d, c) = child(0, body, path)?;
            (bang(&d), bang(&c))
        }
        MorphTerm::SwapR { a, b } => {
            let (a, b) = (a.normalized(), bang(&b.normalized()));
            (
                ObjectTerm::tensor([a.clone(), b.clone()]),
                ObjectTerm::tensor([b, a]),
            )
        }
        MorphTerm::SwapL { a, b } => {
            let (a, b) = (bang(&a.normalized()), b.normalized());
            (
                ObjectTerm::tensor([a.clone(), b.clone()]),
                ObjectTerm::tensor([b, a]),
            )
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(n: &str) -> ObjectTerm {
        ObjectTerm::base(n)
    }

    #[test]
    fn identity_composition() {
        let (a, b) = (base("A"), base("B"));
        let dom = ObjectTerm::tensor([a.clone(), ObjectTerm::hom_r(a.clone(), b.clone())]);
        let t = MorphTerm::compose(
            MorphTerm::EvR {
                a: a.clone(),
                b: b.clone(),
            },
            MorphTerm::id(dom.clone()),
        );
        assert_eq!(typecheck(&t), Ok((dom, b)));
    }

    #[test]
    fn par_with_copy() {
        let t = MorphTerm::par(
            MorphTerm::id(base("A")),
            MorphTerm::CopyDelta { a: base("B") },
        );
        let bb = ObjectTerm::bang(base("B"));
        assert_eq!(
            typecheck(&t),
            Ok((
                ObjectTerm::tensor([base("A"), bb.clone()]),
                ObjectTerm::tensor([base("A"), bb.clone(), bb]),
            ))
        );
    }

    #[test]
    fn mismatch_reports_path() {
        let t = MorphTerm::compose(
            MorphTerm::EvR {
                a: base("A"),
                b: base("B"),
            },
            MorphTerm::EvL {
                a: base("A"),
                b: base("B"),
            },
        );
        let err = typecheck(&t).unwrap_err();
        assert!(err.path.is_empty());
        assert!(err.message.contains("mismatch"));

        let nested = MorphTerm::par(MorphTerm::id(base("C")), t);
        assert_eq!(typecheck(&nested).unwrap_err().path, vec![1]);
    }

    #[test]
    fn curry_endpoints() {
        let (a, b, c) = (base("A"), base("B"), base("C"));
        // a body A ⊗ C → B to curry over C
        let body = MorphTerm::compose(
            MorphTerm::EvR {
                a: a.clone(),
                b: b.clone(),
            },
            MorphTerm::id(ObjectTerm::tensor([
                a.clone(),
                ObjectTerm::hom_r(a.clone(), b.clone()),
            ])),
        );
        let cl = MorphTerm::CurryL {
            arg: a.clone(),
            body: Box::new(body.clone()),
        };
        assert_eq!(
            typecheck(&cl),
            Ok((
                ObjectTerm::hom_r(a.clone(), b.clone()),
                ObjectTerm::hom_r(a.clone(), b.clone())
            ))
        );
        let bad = MorphTerm::CurryR {
            arg: c,
            body: Box::new(body),
        };
        assert!(typecheck(&bad).is_err());
    }

    #[test]
    fn lax_m_and_bang_f() {
        let a = base("A");
        let empty = MorphTerm::LaxM { objs: Vec::new() };
        assert_eq!(
            typecheck(&empty),
            Ok((ObjectTerm::UnitI, ObjectTerm::bang(ObjectTerm::UnitI)))
        );
        let m = MorphTerm::LaxM {
            objs: vec![a.clone()],
        };
        let ba = ObjectTerm::bang(a.clone());
        assert_eq!(
            typecheck(&m),
            Ok((ObjectTerm::bang(ba.clone()), ObjectTerm::bang(ba.clone())))
        );
        let f = MorphTerm::BangF {
            body: Box::new(MorphTerm::Epsilon { a: a.clone() }),
        };
        assert_eq!(
            typecheck(&f),
            Ok((ObjectTerm::bang(ba), ObjectTerm::bang(a)))
        );
    }
}
