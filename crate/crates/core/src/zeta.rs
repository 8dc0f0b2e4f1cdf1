//! Determinant forms of the second weighted Bartholdi zeta function: the
//! `2m x 2m` arc form and the `n x n` vertex form.

use num_traits::{One, Zero};

use crate::algebra::{polymatrix_det, BiPoly, Matrix, Rational};
use crate::check::{Check, Perturb, Perturbation};
use crate::error::AlgebraError;
use crate::graph::{matrices, WeightedGraph};

/// `B_w` and `J_0`, indexed by the graph's canonical arc table.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeSystem {
    pub b_w: Matrix<Rational>,
    pub j0: Matrix<Rational>,
}

pub fn edge_system(g: &WeightedGraph) -> EdgeSystem {
    let arcs = g.arcs();
    let size = arcs.len();
    let b_w = Matrix::from_fn(size, size, |e, f| {
        if arcs[e].terminus == arcs[f].origin {
            g.arc_weight(f).clone()
        } else {
            Rational::zero()
        }
    });
    let j0 = Matrix::from_fn(size, size, |e, f| {
        if f == g.inverse_arc(e) {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    EdgeSystem { b_w, j0 }
}

/// `det(I_2m - t(B_w - (1 - u) J_0))`.
pub fn zeta_edge_reciprocal(g: &WeightedGraph) -> Result<BiPoly, AlgebraError> {
    let EdgeSystem { b_w, j0 } = edge_system(g);
    let t = BiPoly::t();
    let st = &BiPoly::one_minus_u() * &t;
    let size = b_w.rows();
    let m = Matrix::from_fn(size, size, |e, f| {
        let mut entry = if e == f { BiPoly::one() } else { BiPoly::zero() };
        if !b_w[(e, f)].is_zero() {
            entry = &entry - &t.scale(&b_w[(e, f)]);
        }
        if !j0[(e, f)].is_zero() {
            entry = &entry + &st;
        }
        entry
    });
    polymatrix_det(&m)
}

/// `I - t A + (1 - u) t^2 (diag - (1 - u) I)` for any square `adjacency`
/// with matching diagonal entries.
pub fn vertex_form_matrix(adjacency: &Matrix<Rational>, diag: &[Rational]) -> Matrix<BiPoly> {
    let size = adjacency.rows();
    let t = BiPoly::t();
    let s = BiPoly::one_minus_u();
    let st2 = &s * &BiPoly::monomial(Rational::one(), 0, 2);
    let s2t2 = &st2 * &s;
    Matrix::from_fn(size, size, |i, j| {
        let mut entry = t.scale(&-adjacency[(i, j)].clone());
        if i == j {
            entry = &(&(&entry + &BiPoly::one()) + &st2.scale(&diag[i])) - &s2t2;
        }
        entry
    })
}

/// `f_w(u, t) = det(I_n - t W + (1 - u) t^2 (D_w - (1 - u) I_n))`.
pub fn f_w_poly(g: &WeightedGraph) -> Result<BiPoly, AlgebraError> {
    let b = matrices(g);
    polymatrix_det(&vertex_form_matrix(&b.w, &b.degrees()))
}

/// `(1 - (1 - u)^2 t^2)^prefactor_exponent * core`, kept unexpanded so that
/// negative exponents (trees) stay inside the polynomial ring.
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaReciprocal {
    pub prefactor_exponent: i64,
    pub core: BiPoly,
}

/// `1 - (1 - u)^2 t^2`.
pub fn prefactor_base() -> BiPoly {
    let st = &BiPoly::one_minus_u() * &BiPoly::t();
    &BiPoly::one() - &(&st * &st)
}

/// Vertex-form reciprocal of the second weighted Bartholdi zeta function.
pub fn zeta_reciprocal(g: &WeightedGraph) -> Result<ZetaReciprocal, AlgebraError> {
    Ok(ZetaReciprocal {
        prefactor_exponent: g.m() as i64 - g.n() as i64,
        core: f_w_poly(g)?,
    })
}

/// Ihara reciprocal `(1 - t^2)^{m-n} det(I - tA + t^2 Q)`; weights are ignored.
pub fn ihara_reciprocal(g: &WeightedGraph) -> Result<ZetaReciprocal, AlgebraError> {
    let core = f_w_poly(&g.with_unit_weights())?.restrict(crate::algebra::Var::U, &Rational::zero());
    Ok(ZetaReciprocal {
        prefactor_exponent: g.m() as i64 - g.n() as i64,
        core,
    })
}

/// Edge form against the vertex form, cross-multiplied so both sides are
/// polynomials: `edge * P^{max(0, n-m)} = f_w * P^{max(0, m-n)}`.
pub fn edge_vertex_check(g: &WeightedGraph) -> Result<Check, AlgebraError> {
    edge_vertex_check_with(g, None)
}

pub fn edge_vertex_check_with(
    g: &WeightedGraph,
    perturb: Option<&Perturbation>,
) -> Result<Check, AlgebraError> {
    let edge = zeta_edge_reciprocal(g)?;
    let vertex = perturb.bipoly("t10", f_w_poly(g)?);
    let diff = g.m() as i64 - g.n() as i64;
    let p = prefactor_base();
    let lhs = &edge * &p.pow((-diff).max(0) as u32);
    let rhs = &vertex * &p.pow(diff.max(0) as u32);
    Ok(Check::exact_bipoly("t10", &lhs, &rhs))
}
