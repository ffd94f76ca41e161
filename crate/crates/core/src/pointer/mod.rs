//! Pointer structures (unary functions and predicates), set systems they
//! define by quantifier-free formulas, and colorings of those systems with
//! a discrepancy bound that depends only on the formulas.

mod decompose;
mod formula;
mod random;
mod structure;
mod system;

pub use decompose::{assemble, qf_decompose, Conjunct, Conjunction, Literal, Psi, PsiDecomposition, PsiUse, ATOM_CAP};
pub use formula::{eval_formula, parse_formula, Atom, Node, QFFormula, Side, Term, Var, WORD_CAP};
pub use random::{random_formula, FormulaShape};
pub use structure::{random_structure, PointerStructure};
pub use system::{
    check_psi_disjoint, defined_system, from_degenerate_graph, intersection_closure, psi_system, qf_color, qf_color_on,
    verify_decomposition, QfColoring, CLOSURE_CAP, PARAMETER_CAP,
};

use crate::error::{Error, Result};

/// Largest ground index width, in bits, for tuple grounds.
const GROUND_BITS: u32 = 24;

/// `n^x_arity`, the ground size for `x̄`-tuples, within the 24-bit cap.
pub(crate) fn ground_size_for(n: usize, x_arity: usize) -> Result<usize> {
    u32::try_from(x_arity)
        .ok()
        .and_then(|k| n.checked_pow(k))
        .filter(|&g| g <= 1 << GROUND_BITS)
        .ok_or_else(|| Error::limit(format!("{n}^{x_arity} tuples exceed 2^{GROUND_BITS}")))
}

/// Calls `f` on every tuple in `[0, n)^k`, lexicographically.
pub(crate) fn for_each_tuple(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
    let mut tuple = vec![0; k];
    if k > 0 && n == 0 {
        return Ok(());
    }
    loop {
        f(&tuple)?;
        let Some(i) = (0..k).rev().find(|&i| tuple[i] + 1 < n) else {
            return Ok(());
        };
        tuple[i] += 1;
        tuple[i + 1..].iter_mut().for_each(|v| *v = 0);
    }
}
