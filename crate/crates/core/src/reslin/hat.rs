use indexmap::IndexMap;
use num_bigint::BigInt;

use super::{Disjunction, LinEq, RlLine};
use crate::polyring::{Monomial, Polynomial, VarId};
use crate::proofcore::ExtensionAxiom;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ReslinError {
    #[error("no extension variable is registered for ({0})")]
    UnregisteredForm(String),
}

/// The affine form `a·x − a₀` of an equation, exactly as written: no sign or
/// gcd normalization, so `2x = 2` and `x = 1` get different keys.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AffineKey {
    pub coeffs: Vec<(VarId, BigInt)>,
    pub constant: BigInt,
}

pub fn canonical_form(l: &LinEq) -> AffineKey {
    AffineKey {
        coeffs: l.coeffs().iter().map(|(v, c)| (*v, c.clone())).collect(),
        constant: -l.constant().clone(),
    }
}

/// One extension variable `y_i` per distinct affine form, numbered in order of
/// first occurrence.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    vars: IndexMap<AffineKey, (VarId, LinEq)>,
}

impl Registry {
    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    /// Returns the variable for `l`, registering it if new.
    pub fn register(&mut self, l: &LinEq) -> VarId {
        let next = VarId::y(self.vars.len() as u32 + 1);
        self.vars.entry(canonical_form(l)).or_insert_with(|| (next, l.clone())).0
    }

    pub fn var_of(&self, l: &LinEq) -> Option<VarId> {
        self.vars.get(&canonical_form(l)).map(|(v, _)| *v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&AffineKey, VarId)> {
        self.vars.iter().map(|(k, (v, _))| (k, *v))
    }

    pub fn definition(&self, l: &LinEq) -> Option<ExtensionAxiom> {
        self.var_of(l).map(|v| ExtensionAxiom::new(v, l.affine_polynomial()))
    }

    /// `y_i = a·x − a₀` for every registered form, in variable order.
    pub fn definitions(&self) -> Vec<ExtensionAxiom> {
        self.vars.values().map(|(v, l)| ExtensionAxiom::new(*v, l.affine_polynomial())).collect()
    }
}

/// Registers every disjunct of `axioms`, then of each line, in order.
pub fn build_registry(axioms: &[Disjunction], lines: &[RlLine]) -> Registry {
    let mut r = Registry::default();
    for d in axioms.iter().chain(lines.iter().map(|l| &l.disjunction)) {
        for l in d.disjuncts() {
            r.register(l);
        }
    }
    r
}

/// `D` as the product equation `y_{i₁}⋯y_{i_t} = 0` over its registry
/// variables. The empty disjunction becomes the constant `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatSystem {
    pub product_equation: Polynomial,
    /// The definitions of the variables in the product, once each, in variable
    /// order.
    pub definitions: Vec<ExtensionAxiom>,
}

pub fn hat(d: &Disjunction, registry: &Registry) -> Result<HatSystem, ReslinError> {
    let mut vars = Vec::with_capacity(d.len());
    for l in d.disjuncts() {
        vars.push(registry.var_of(l).ok_or_else(|| ReslinError::UnregisteredForm(l.to_string()))?);
    }
    let mono = vars.iter().fold(Monomial::one(), |m, v| m.mul_var(*v));
    let mut definitions: Vec<ExtensionAxiom> = d.disjuncts().iter().filter_map(|l| registry.definition(l)).collect();
    definitions.sort_by_key(|e| e.var);
    definitions.dedup_by_key(|e| e.var);
    Ok(HatSystem { product_equation: Polynomial::term(mono, 1), definitions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reslin::tests::four_line;

    fn x() -> VarId {
        VarId::x(1)
    }

    #[test]
    fn canonical_form_examples() {
        let k = canonical_form(&LinEq::var_equals(x(), 0));
        assert_eq!(k, AffineKey { coeffs: vec![(x(), 1.into())], constant: 0.into() });
        assert_eq!(canonical_form(&LinEq::var_equals(x(), 1)), canonical_form(&LinEq::new([(x(), 1.into())], 1)));
        assert_ne!(canonical_form(&LinEq::new([(x(), 2.into())], 2)), canonical_form(&LinEq::var_equals(x(), 1)));
    }

    #[test]
    fn registry_of_four_line_refutation() {
        let p = four_line();
        let r = build_registry(&p.axioms, &p.lines);
        let got: Vec<(AffineKey, VarId)> = r.iter().map(|(k, v)| (k.clone(), v)).collect();
        assert_eq!(
            got,
            vec![
                (AffineKey { coeffs: vec![(x(), 1.into())], constant: 0.into() }, VarId::y(1)),
                (AffineKey { coeffs: vec![(x(), 1.into())], constant: (-1).into() }, VarId::y(2)),
                (AffineKey { coeffs: vec![], constant: 1.into() }, VarId::y(3)),
            ]
        );
        assert!(build_registry(&[], &[]).is_empty());
    }

    #[test]
    fn hat_examples() {
        let d = Disjunction::new(vec![LinEq::var_equals(x(), 0), LinEq::var_equals(x(), 1)]);
        let r = build_registry(std::slice::from_ref(&d), &[]);
        let h = hat(&d, &r).unwrap();
        let y = |i| Polynomial::var(VarId::y(i));
        assert_eq!(h.product_equation, &y(1) * &y(2));
        assert_eq!(h.definitions[0].definition, Polynomial::var(x()));
        assert_eq!(h.definitions[1].definition, &Polynomial::var(x()) - &Polynomial::one());

        assert_eq!(hat(&Disjunction::empty(), &r).unwrap().product_equation, Polynomial::one());

        let twice = Disjunction::new(vec![LinEq::var_equals(x(), 1), LinEq::var_equals(x(), 1)]);
        let h = hat(&twice, &r).unwrap();
        assert_eq!(h.product_equation, y(2).pow(2));
        assert_eq!(h.definitions.len(), 1);

        let other = Disjunction::new(vec![LinEq::var_equals(x(), 5)]);
        assert!(matches!(hat(&other, &r), Err(ReslinError::UnregisteredForm(_))));
    }
}
