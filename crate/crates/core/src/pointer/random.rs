use rand::seq::SliceRandom;
use rand::Rng;

use super::formula::{Atom, Node, QFFormula, Term, Var};
use crate::error::{Error, Result};
use crate::rng;

/// Vocabulary and size limits for [`random_formula`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaShape {
    pub x_arity: usize,
    pub y_arity: usize,
    pub functions: Vec<String>,
    pub predicates: Vec<String>,
    pub max_atoms: usize,
    pub max_word: usize,
}

impl FormulaShape {
    /// `f1..`, `A1..` as produced by [`super::random_structure`].
    pub fn standard(x_arity: usize, y_arity: usize, functions: usize, predicates: usize, max_atoms: usize) -> Self {
        FormulaShape {
            x_arity,
            y_arity,
            functions: (1..=functions).map(|i| format!("f{i}")).collect(),
            predicates: (1..=predicates).map(|i| format!("A{i}")).collect(),
            max_atoms,
            max_word: 2,
        }
    }
}

/// A random formula with 1 to `max_atoms` atoms, declared with the shape's arities.
/// Half of the equalities compare an `x` term with a `y` term.
pub fn random_formula(shape: &FormulaShape, seed: u64) -> Result<QFFormula> {
    if shape.x_arity == 0 || shape.max_atoms == 0 {
        return Err(Error::invalid("need at least one x variable and one atom"));
    }
    let mut rng = rng::seeded(seed);
    let atoms = rng.gen_range(1..=shape.max_atoms);
    let root = node(shape, &mut rng, atoms);
    QFFormula::new(root)?.with_arities(shape.x_arity, shape.y_arity)
}

fn node(shape: &FormulaShape, rng: &mut rng::Rng, atoms: usize) -> Node {
    let n = if atoms == 1 {
        Node::Atom(atom(shape, rng))
    } else {
        let left = rng.gen_range(1..atoms);
        let parts = vec![node(shape, rng, left), node(shape, rng, atoms - left)];
        if rng.gen_bool(0.5) {
            Node::And(parts)
        } else {
            Node::Or(parts)
        }
    };
    if rng.gen_bool(0.3) {
        Node::Not(Box::new(n))
    } else {
        n
    }
}

fn atom(shape: &FormulaShape, rng: &mut rng::Rng) -> Atom {
    if !shape.predicates.is_empty() && rng.gen_bool(0.3) {
        let p = shape.predicates.choose(rng).unwrap().clone();
        return Atom::Pred(p, term(shape, rng, None));
    }
    let cross = shape.y_arity > 0 && rng.gen_bool(0.5);
    let lhs = term(shape, rng, Some(true));
    let rhs = term(shape, rng, if cross { Some(false) } else { None });
    Atom::Eq(lhs, rhs)
}

/// `on_x`: force the side, or pick either.
fn term(shape: &FormulaShape, rng: &mut rng::Rng, on_x: Option<bool>) -> Term {
    let x = on_x.unwrap_or_else(|| shape.y_arity == 0 || rng.gen_bool(0.5));
    let var = if x { Var::x(rng.gen_range(0..shape.x_arity)) } else { Var::y(rng.gen_range(0..shape.y_arity)) };
    let len = if shape.functions.is_empty() { 0 } else { rng.gen_range(0..=shape.max_word) };
    let mut t = Term::var(var);
    for _ in 0..len {
        let f = shape.functions.choose(rng).unwrap().clone();
        t = t.apply(&f);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn respects_shape() {
        let shape = FormulaShape::standard(2, 2, 2, 2, 4);
        for seed in 0..100 {
            let phi = random_formula(&shape, seed).unwrap();
            assert!(phi.atom_count() <= 4);
            assert_eq!((phi.x_arity, phi.y_arity), (2, 2));
            assert_eq!(random_formula(&shape, seed).unwrap(), phi);
        }
    }
}
