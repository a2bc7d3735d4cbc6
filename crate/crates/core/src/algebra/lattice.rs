//! Integer lattices: Hermite and Smith normal forms, saturation and
//! integral solving.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::matrix::{identity_int, to_rational, IntMatrix, Matrix};
use super::{AlgebraError, Integer};

// col[dst] += k * col[src]
fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, k: &BigInt) {
    if k.is_zero() {
        return;
    }
    for i in 0..m.nrows() {
        let v = &m[(i, src)] * k;
        m[(i, dst)] += v;
    }
}

// row[dst] += k * row[src]
fn row_axpy(m: &mut IntMatrix, dst: usize, src: usize, k: &BigInt) {
    if k.is_zero() {
        return;
    }
    for j in 0..m.ncols() {
        let v = &m[(src, j)] * k;
        m[(dst, j)] += v;
    }
}

fn negate_col(m: &mut IntMatrix, j: usize) {
    for i in 0..m.nrows() {
        m[(i, j)] = -&m[(i, j)];
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for j in 0..m.ncols() {
        m[(i, j)] = -&m[(i, j)];
    }
}

/// Column-style Hermite normal form.
///
/// Returns `H = B U` with `U` unimodular, zero columns dropped. `H` is lower
/// echelon: column `j` has its positive pivot in row `r_j`, with
/// `r_0 < r_1 < ...`, zeros above, and every entry left of a pivot reduced
/// into `[0, pivot)`.
pub fn hermite_normal_form(b: &IntMatrix) -> IntMatrix {
    let mut h = b.clone();
    let n = h.nrows();
    let k = h.ncols();
    let mut c = 0;
    for i in 0..n {
        if c == k {
            break;
        }
        // Euclid across columns c.. in row i.
        loop {
            let nz: Vec<usize> = (c..k).filter(|&j| !h[(i, j)].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let piv = *nz
                .iter()
                .min_by(|&&a, &&b| h[(i, a)].abs().cmp(&h[(i, b)].abs()))
                .unwrap();
            h.swap_cols(c, piv);
            let mut done = true;
            for j in c + 1..k {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = h[(i, j)].div_floor(&h[(i, c)]);
                col_axpy(&mut h, j, c, &-q);
                if !h[(i, j)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(i, c)].is_zero() {
            continue;
        }
        if h[(i, c)].is_negative() {
            negate_col(&mut h, c);
        }
        let p = h[(i, c)].clone();
        for j in 0..c {
            let q = h[(i, j)].div_floor(&p);
            col_axpy(&mut h, j, c, &-q);
        }
        c += 1;
    }
    h.submatrix(0..n, 0..c)
}

/// Smith normal form `P B Q = S` with transforms and `P^-1`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub s: IntMatrix,
    pub p: IntMatrix,
    pub p_inv: IntMatrix,
    pub q: IntMatrix,
}

impl Smith {
    pub fn rank(&self) -> usize {
        (0..self.s.nrows().min(self.s.ncols()))
            .take_while(|&i| !self.s[(i, i)].is_zero())
            .count()
    }

    pub fn elementary_divisors(&self) -> Vec<Integer> {
        (0..self.rank()).map(|i| self.s[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(b: &IntMatrix) -> Smith {
    let (n, k) = (b.nrows(), b.ncols());
    let mut s = b.clone();
    let mut p = identity_int(n);
    let mut p_inv = identity_int(n);
    let mut q = identity_int(k);

    // Row ops act on P's rows and, inversely, on P^-1's columns.
    let row_swap = |s: &mut IntMatrix, p: &mut IntMatrix, pi: &mut IntMatrix, a: usize, b: usize| {
        s.swap_rows(a, b);
        p.swap_rows(a, b);
        pi.swap_cols(a, b);
    };
    let row_add = |s: &mut IntMatrix, p: &mut IntMatrix, pi: &mut IntMatrix, dst: usize, src: usize, f: &BigInt| {
        row_axpy(s, dst, src, f);
        row_axpy(p, dst, src, f);
        col_axpy(pi, src, dst, &-f);
    };

    for t in 0..n.min(k) {
        // Smallest nonzero entry in the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..n {
            for j in t..k {
                if !s[(i, j)].is_zero()
                    && best.map_or(true, |(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        row_swap(&mut s, &mut p, &mut p_inv, t, bi);
        s.swap_cols(t, bj);
        q.swap_cols(t, bj);

        loop {
            let mut clean = true;
            for i in t + 1..n {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let f = -s[(i, t)].div_floor(&s[(t, t)]);
                row_add(&mut s, &mut p, &mut p_inv, i, t, &f);
                if !s[(i, t)].is_zero() {
                    clean = false;
                    if s[(i, t)].abs() < s[(t, t)].abs() {
                        row_swap(&mut s, &mut p, &mut p_inv, t, i);
                    }
                }
            }
            for j in t + 1..k {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let f = -s[(t, j)].div_floor(&s[(t, t)]);
                col_axpy(&mut s, j, t, &f);
                col_axpy(&mut q, j, t, &f);
                if !s[(t, j)].is_zero() {
                    clean = false;
                    if s[(t, j)].abs() < s[(t, t)].abs() {
                        s.swap_cols(t, j);
                        q.swap_cols(t, j);
                    }
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: pull in a row carrying an entry the pivot misses.
            let bad = (t + 1..n)
                .flat_map(|i| (t + 1..k).map(move |j| (i, j)))
                .find(|&(i, j)| !(&s[(i, j)] % &s[(t, t)]).is_zero());
            match bad {
                Some((i, _)) => {
                    row_add(&mut s, &mut p, &mut p_inv, t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            negate_row(&mut s, t);
            negate_row(&mut p, t);
            negate_col(&mut p_inv, t);
        }
    }
    Smith { s, p, p_inv, q }
}

/// True when the columns span a direct summand of `Z^n` of full column rank.
pub fn is_primitive(b: &IntMatrix) -> bool {
    let snf = smith_normal_form(b);
    snf.rank() == b.ncols() && snf.elementary_divisors().iter().all(One::is_one)
}

/// Basis of `span_Q(B) ∩ Z^n`, returned in Hermite normal form.
pub fn saturate_lattice(b: &IntMatrix) -> Result<IntMatrix, AlgebraError> {
    let rank = to_rational(b).rank();
    if rank < b.ncols() {
        return Err(AlgebraError::RankDeficient {
            expected: b.ncols(),
            found: rank,
        });
    }
    let snf = smith_normal_form(b);
    let basis = snf.p_inv.submatrix(0..b.nrows(), 0..rank);
    Ok(hermite_normal_form(&basis))
}

/// Lattice equality through canonical Hermite forms.
pub fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    a.nrows() == b.nrows() && hermite_normal_form(a) == hermite_normal_form(b)
}

/// Integer solution `X` of `A X = C`, if one exists.
pub fn solve_integral(a: &IntMatrix, c: &IntMatrix) -> Option<IntMatrix> {
    if a.nrows() != c.nrows() {
        return None;
    }
    let snf = smith_normal_form(a);
    let r = snf.rank();
    // S Y = P C, X = Q Y
    let pc = snf.p.mul(c).ok()?;
    let mut y = Matrix::from_fn(a.ncols(), c.ncols(), |_, _| BigInt::zero());
    for i in 0..pc.nrows() {
        for j in 0..c.ncols() {
            if i < r {
                let (qt, rem) = pc[(i, j)].div_rem(&snf.s[(i, i)]);
                if !rem.is_zero() {
                    return None;
                }
                y[(i, j)] = qt;
            } else if !pc[(i, j)].is_zero() {
                return None;
            }
        }
    }
    snf.q.mul(&y).ok()
}
