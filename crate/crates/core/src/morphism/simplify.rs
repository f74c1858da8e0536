use super::{MorphTerm, ObjectTerm};

/// Removes identity compositions and unit/identity tensor factors, bottom-up.
///
/// Only rewrites that hold in any strict monoidal category are used, so the
/// endpoints and the evaluated tensor are unchanged.
pub fn simplify(t: &MorphTerm) -> MorphTerm {
    match t {
        MorphTerm::Compose { later, earlier } => {
            let (later, earlier) = (simplify(later), simplify(earlier));
            match (later, earlier) {
                (MorphTerm::Id { .. }, e) => e,
                (l, MorphTerm::Id { .. }) => l,
                (l, e) => MorphTerm::compose(l, e),
            }
        }
        MorphTerm::Par { left, right } => {
            let (left, right) = (simplify(left), simplify(right));
            match (left, right) {
                (
                    MorphTerm::Id {
                        obj: ObjectTerm::UnitI,
                    },
                    r,
                ) => r,
                (
                    l,
                    MorphTerm::Id {
                        obj: ObjectTerm::UnitI,
                    },
                ) => l,
                (MorphTerm::Id { obj: a }, MorphTerm::Id { obj: b }) => {
                    MorphTerm::id(ObjectTerm::tensor([a, b]))
                }
                (l, r) => MorphTerm::par(l, r),
            }
        }
        MorphTerm::CurryL { arg, body } => MorphTerm::CurryL {
            arg: arg.clone(),
            body: Box::new(simplify(body)),
        },
        MorphTerm::CurryR { arg, body } => MorphTerm::CurryR {
            arg: arg.clone(),
            body: Box::new(simplify(body)),
        },
        MorphTerm::BangF { body } => MorphTerm::BangF {
            body: Box::new(simplify(body)),
        },
        MorphTerm::Id { obj } => MorphTerm::id(obj.normalized()),
        other => other.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::typecheck;

    #[test]
    fn drops_identities() {
        let a = ObjectTerm::base("A");
        let f = MorphTerm::Epsilon { a: a.clone() };
        let t = MorphTerm::compose(f.clone(), MorphTerm::id(ObjectTerm::bang(a.clone())));
        assert_eq!(simplify(&t), f);
        let t = MorphTerm::par(MorphTerm::id(ObjectTerm::UnitI), f.clone());
        assert_eq!(simplify(&t), f);
        let t = MorphTerm::par(MorphTerm::id(a.clone()), MorphTerm::id(a.clone()));
        assert_eq!(
            simplify(&t),
            MorphTerm::id(ObjectTerm::tensor([a.clone(), a]))
        );
    }

    #[test]
    fn preserves_types() {
        let a = ObjectTerm::base("A");
        let t = MorphTerm::compose(
            MorphTerm::par_all(vec![
                MorphTerm::id(ObjectTerm::UnitI),
                MorphTerm::CopyDelta { a: a.clone() },
                MorphTerm::id(ObjectTerm::UnitI),
            ]),
            MorphTerm::id(ObjectTerm::bang(a)),
        );
        let s = simplify(&t);
        assert_eq!(typecheck(&s), typecheck(&t));
        assert!(s.size() < t.size());
    }
}
