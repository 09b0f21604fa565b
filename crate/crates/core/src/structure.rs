//! Combinatorial structure of a matrix: its support digraph, strongly
//! connected components and the Frobenius normal form, plus the matching
//! factorization of the determinantal polynomial into block factors.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use rand::Rng;

use crate::error::{Error, Result};
use crate::limits;
use crate::matrix::SquareMatrix;
use crate::mpoly::MPoly;
use crate::scalar::Scalar;
use crate::subset::Subset;
use crate::symdet::{adjugate_table, det_poly};

/// Directed graph with an edge `i -> j` iff `i != j` and `a_ij != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportDigraph {
    n: usize,
    succ: Vec<Vec<usize>>,
}

impl SupportDigraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ.iter().enumerate().flat_map(|(i, s)| s.iter().map(move |&j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    /// Strongly connected components, each sorted, in reverse topological
    /// order of the condensation.
    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        let mut g = DiGraph::<(), ()>::with_capacity(self.n, self.edge_count());
        let nodes: Vec<_> = (0..self.n).map(|_| g.add_node(())).collect();
        for (i, j) in self.edges() {
            g.add_edge(nodes[i], nodes[j], ());
        }
        tarjan_scc(&g)
            .into_iter()
            .map(|comp| {
                let mut c: Vec<usize> = comp.into_iter().map(|v| v.index()).collect();
                c.sort_unstable();
                c
            })
            .collect()
    }
}

pub fn support_digraph(a: &SquareMatrix) -> SupportDigraph {
    let n = a.n();
    let succ = (0..n).map(|i| (0..n).filter(|&j| j != i && !a.get(i, j).is_zero()).collect()).collect();
    SupportDigraph { n, succ }
}

/// Simultaneous row/column permutation exhibiting `A` as block upper
/// triangular with irreducible diagonal blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusForm {
    /// `perm[a]` is the original index placed at position `a`.
    pub perm: Vec<usize>,
    /// Diagonal blocks as sets of original indices, in block order.
    pub blocks: Vec<Subset>,
    /// `P A P⁻¹`.
    pub permuted: SquareMatrix,
}

impl FrobeniusForm {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Position ranges of the blocks inside the permuted matrix.
    pub fn ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.blocks
            .iter()
            .map(|b| {
                let r = start..start + b.len();
                start = r.end;
                r
            })
            .collect()
    }

    /// Index of the block containing original index `i`.
    pub fn block_of(&self, i: usize) -> usize {
        self.blocks.iter().position(|b| b.contains(i)).expect("every index lies in a block")
    }

    /// True when nothing sits strictly below the diagonal blocks.
    pub fn is_block_upper_triangular(&self) -> bool {
        let ranges = self.ranges();
        ranges.iter().enumerate().all(|(p, rp)| {
            ranges[..p].iter().all(|rq| rp.clone().all(|a| rq.clone().all(|b| self.permuted.get(a, b).is_zero())))
        })
    }
}

/// Components in a topological order of the condensation (edges point from
/// earlier to later blocks), ties broken by smallest original index.
pub fn frobenius_form(a: &SquareMatrix) -> FrobeniusForm {
    let graph = support_digraph(a);
    let comps = graph.strongly_connected_components();
    let n = a.n();
    let mut comp_of = vec![0; n];
    for (c, members) in comps.iter().enumerate() {
        for &v in members {
            comp_of[v] = c;
        }
    }
    let k = comps.len();
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut indegree = vec![0usize; k];
    for (i, j) in graph.edges() {
        let (ci, cj) = (comp_of[i], comp_of[j]);
        if ci != cj && !out_edges[ci].contains(&cj) {
            out_edges[ci].push(cj);
            indegree[cj] += 1;
        }
    }
    let mut ready: BinaryHeap<Reverse<(usize, usize)>> =
        (0..k).filter(|&c| indegree[c] == 0).map(|c| Reverse((comps[c][0], c))).collect();
    let mut order = Vec::with_capacity(k);
    while let Some(Reverse((_, c))) = ready.pop() {
        order.push(c);
        for &d in &out_edges[c] {
            indegree[d] -= 1;
            if indegree[d] == 0 {
                ready.push(Reverse((comps[d][0], d)));
            }
        }
    }
    let perm: Vec<usize> = order.iter().flat_map(|&c| comps[c].iter().copied()).collect();
    let blocks = order.iter().map(|&c| Subset::from_indices(comps[c].iter().copied())).collect();
    let permuted = a.permuted(&perm);
    FrobeniusForm { perm, blocks, permuted }
}

/// The support digraph is strongly connected. A `1 × 1` matrix is
/// irreducible.
pub fn is_irreducible(a: &SquareMatrix) -> bool {
    frobenius_form(a).block_count() == 1
}

/// Determinantal polynomial of the principal block on `block`, written in
/// the variables of the full `n`-variable ring.
pub fn block_polynomial(a: &SquareMatrix, block: Subset) -> Result<MPoly> {
    let sub = a.principal_submatrix(block);
    Ok(det_poly(&sub)?.fpoly.embed(a.n(), &block.to_vec()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub form: FrobeniusForm,
    /// `det(A_i + diag(x_k : k ∈ T_i))` per block.
    pub factors: Vec<MPoly>,
    /// `f_A` equals the product of the block factors.
    pub product_matches: bool,
    /// Per block: every adjugate entry of the block pencil is nonzero.
    pub blocks_irreducible: Vec<bool>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.product_matches && self.blocks_irreducible.iter().all(|&b| b) && self.form.is_block_upper_triangular()
    }
}

/// Frobenius form plus an exact check that `f_A` is the product of the
/// block polynomials and that each block has an all-nonzero adjugate.
pub fn structure_check(a: &SquareMatrix) -> Result<StructureReport> {
    let n = a.n();
    if n > limits::CLASSIFY {
        return Err(Error::TooLarge { op: "structure_check", n, limit: limits::CLASSIFY });
    }
    let form = frobenius_form(a);
    let f = det_poly(a)?.fpoly;
    let factors = form.blocks.iter().map(|&b| block_polynomial(a, b)).collect::<Result<Vec<_>>>()?;
    let product = factors.iter().fold(MPoly::one(n), |acc, p| &acc * p);
    let blocks_irreducible = form
        .blocks
        .iter()
        .map(|&b| adjugate_table(&a.principal_submatrix(b)).map(|g| g.all_nonzero()))
        .collect::<Result<Vec<_>>>()?;
    Ok(StructureReport { form, factors, product_matches: product == f, blocks_irreducible })
}

/// Template describing every matrix with the same principal minors as `A`:
/// block upper triangular on the same blocks, each diagonal block sharing
/// the determinantal polynomial of the corresponding block of `A`, and the
/// strictly upper blocks arbitrary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberShape {
    pub form: FrobeniusForm,
    pub block_matrices: Vec<SquareMatrix>,
    pub block_polys: Vec<MPoly>,
    /// Block pairs `(p, q)`, `p < q`, whose entries are unconstrained.
    pub free_blocks: Vec<(usize, usize)>,
}

impl FiberShape {
    pub fn blocks(&self) -> &[Subset] {
        &self.form.blocks
    }

    /// Original-coordinate positions that may hold any value.
    pub fn free_positions(&self) -> Vec<(usize, usize)> {
        let blocks = &self.form.blocks;
        self.free_blocks
            .iter()
            .flat_map(|&(p, q)| blocks[p].iter().flat_map(move |i| blocks[q].iter().map(move |j| (i, j))))
            .collect()
    }

    /// A random fiber member: each diagonal block is conjugated by a random
    /// diagonal matrix (and possibly transposed), free blocks are filled
    /// with random integers in `-range..=range`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, range: i64) -> SquareMatrix {
        let n = self.form.perm.len();
        let mut field = self.form.permuted.field();
        let mut b = SquareMatrix::zeros(n, field);
        for (block, m) in self.form.blocks.iter().zip(&self.block_matrices) {
            let d: Vec<Scalar> = (0..m.n())
                .map(|_| {
                    let v = rng.random_range(1..=range.max(1));
                    Scalar::from_int(if rng.random_bool(0.5) { v } else { -v })
                })
                .collect();
            let mut local = m.conjugate_by_diagonal(&d).expect("nonzero diagonal");
            if rng.random_bool(0.5) {
                local = local.transpose();
            }
            let idx = block.to_vec();
            for (a, &i) in idx.iter().enumerate() {
                for (c, &j) in idx.iter().enumerate() {
                    b.set(i, j, local.get(a, c).clone());
                }
            }
        }
        for (i, j) in self.free_positions() {
            b.set(i, j, Scalar::from_int(rng.random_range(-range..=range)));
        }
        field = field.join(b.field());
        b.with_field(field).expect("field widened")
    }
}

pub fn fiber_shape(a: &SquareMatrix) -> Result<FiberShape> {
    let n = a.n();
    if n > limits::CLASSIFY {
        return Err(Error::TooLarge { op: "fiber_shape", n, limit: limits::CLASSIFY });
    }
    let form = frobenius_form(a);
    let block_matrices: Vec<SquareMatrix> = form.blocks.iter().map(|&b| a.principal_submatrix(b)).collect();
    let block_polys = form.blocks.iter().map(|&b| block_polynomial(a, b)).collect::<Result<Vec<_>>>()?;
    let s = form.block_count();
    let free_blocks = (0..s).flat_map(|p| (p + 1..s).map(move |q| (p, q))).collect();
    Ok(FiberShape { form, block_matrices, block_polys, free_blocks })
}
