//! Standard form of a Z4-linear code: row reduction with unit pivots first,
//! then 2-pivots, with column permutation tracking so the result really has
//! the block shape (I_k1 A1 B1+2B2 / 0 2I_k2 2A2).

use crate::code::Code;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::ring::{gr_mul, trace_z4, GRElem};

/// Outcome of the reduction: the type 4^k1 2^k2 and the reduced generator
/// matrix over the permuted coordinates.
#[derive(Debug, Clone)]
pub struct TypeResult {
    pub k1: usize,
    pub k2: usize,
    /// k1+k2 rows in standard form, entries mod 4.
    pub matrix: Vec<Vec<u8>>,
    /// matrix column j corresponds to original coordinate col_perm[j].
    pub col_perm: Vec<usize>,
}

impl TypeResult {
    /// Number of distinct codewords implied by the type.
    pub fn group_order(&self) -> u64 {
        4u64.pow(self.k1 as u32) * 2u64.pow(self.k2 as u32)
    }
}

/// Generator rows: codewords of the 2m module generators x_i and 2x_i over
/// the Teichmüller lifts of the polynomial basis. Dependent rows are
/// discarded by the reduction, so rank is not assumed up front.
fn generator_rows(ctx: &FieldCtx, code: &Code) -> Vec<Vec<u8>> {
    let mut rows = Vec::with_capacity(2 * ctx.m() as usize);
    for i in 0..ctx.m() {
        for gen in [
            GRElem::new(FieldElem(1 << i), FieldElem(0)),
            GRElem::new(FieldElem(0), FieldElem(1 << i)),
        ] {
            rows.push(
                code.coords
                    .iter()
                    .map(|&d| trace_z4(ctx, gr_mul(ctx, gen, GRElem::teich(d))).0)
                    .collect(),
            );
        }
    }
    rows
}

/// Row-reduce the generator matrix of `code` over Z4.
pub fn standard_form(ctx: &FieldCtx, code: &Code) -> Result<TypeResult> {
    let n = code.n();
    let mut rows = generator_rows(ctx, code);
    let mut perm: Vec<usize> = (0..n).collect();
    let nrows = rows.len();

    let mut r = 0usize;

    // Phase 1: unit pivots (1 or 3), scaled to 1, columns cleared fully.
    for pos in 0..n {
        if r == nrows {
            break;
        }
        let found = (pos..n)
            .flat_map(|jj| (r..nrows).map(move |i| (jj, i)))
            .find(|&(jj, i)| rows[i][perm[jj]] & 1 == 1);
        let Some((jj, i)) = found else { break };
        perm.swap(pos, jj);
        rows.swap(r, i);
        let col = perm[pos];
        if rows[r][col] == 3 {
            for e in rows[r].iter_mut() {
                *e = (*e * 3) & 3;
            }
        }
        for i in 0..nrows {
            if i != r && rows[i][col] != 0 {
                let factor = rows[i][col];
                let pivot_row = rows[r].clone();
                for (e, p) in rows[i].iter_mut().zip(&pivot_row) {
                    let sub = (factor * p) & 3;
                    *e = (*e + 4 - sub) & 3;
                }
            }
        }
        r += 1;
    }
    let k1 = r;

    // Phase 2: 2-pivots among the remaining rows; entries above are reduced
    // into {0,1}, entries below to 0.
    for pos in k1..n {
        if r == nrows {
            break;
        }
        let found = (pos..n)
            .flat_map(|jj| (r..nrows).map(move |i| (jj, i)))
            .find(|&(jj, i)| rows[i][perm[jj]] == 2);
        let Some((jj, i)) = found else { break };
        perm.swap(pos, jj);
        rows.swap(r, i);
        let col = perm[pos];
        for i in 0..nrows {
            if i != r && rows[i][col] >= 2 {
                let pivot_row = rows[r].clone();
                for (e, p) in rows[i].iter_mut().zip(&pivot_row) {
                    *e = (*e + 4 - p) & 3;
                }
            }
        }
        r += 1;
    }
    let k2 = r - k1;

    // Everything below the pivots must have vanished.
    for row in rows.iter().skip(r) {
        if row.iter().any(|&e| e != 0) {
            return Err(Error::Internal(
                "nonzero row left after Z4 reduction".into(),
            ));
        }
    }
    rows.truncate(r);

    // Re-emit rows with columns in permuted order.
    let matrix: Vec<Vec<u8>> = rows
        .iter()
        .map(|row| perm.iter().map(|&c| row[c]).collect())
        .collect();

    Ok(TypeResult {
        k1,
        k2,
        matrix,
        col_perm: perm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{build_defining_set, enumerate, DefiningSetSpec};
    use crate::ring::Z4;

    fn ctx(m: u32) -> FieldCtx {
        FieldCtx::with_default_poly(m).unwrap()
    }

    fn assert_standard_shape(t: &TypeResult) {
        let (k1, k2) = (t.k1, t.k2);
        for (i, row) in t.matrix.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                if j < k1 {
                    let expect = if i == j { 1 } else { 0 };
                    assert_eq!(e, expect, "identity block at ({i},{j})");
                } else if j < k1 + k2 {
                    if i < k1 {
                        assert!(e <= 1, "A1 block must be binary at ({i},{j})");
                    } else {
                        let expect = if i == k1 + (j - k1) { 2 } else { 0 };
                        assert_eq!(e, expect, "2I block at ({i},{j})");
                    }
                } else if i >= k1 {
                    assert!(e % 2 == 0, "2A2 block must be even at ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn zero_code_type() {
        let c = ctx(3);
        let code = build_defining_set(&c, DefiningSetSpec::Single(Z4(0))).unwrap();
        let t = standard_form(&c, &code).unwrap();
        assert_eq!((t.k1, t.k2), (0, 0));
        assert_eq!(t.group_order(), 1);
    }

    #[test]
    fn pair_02_type_m3() {
        let c = ctx(3);
        let code = build_defining_set(&c, DefiningSetSpec::Pair(Z4(0), Z4(2))).unwrap();
        let t = standard_form(&c, &code).unwrap();
        assert_eq!((t.k1, t.k2), (2, 1));
        assert_standard_shape(&t);
    }

    #[test]
    fn type_matches_codeword_count() {
        for (m, spec) in [
            (3u32, DefiningSetSpec::Pair(Z4(1), Z4(3))),
            (5, DefiningSetSpec::Single(Z4(2))),
            (5, DefiningSetSpec::Complement(Z4(0))),
            (4, DefiningSetSpec::Single(Z4(1))), // even m also holds
            (5, DefiningSetSpec::Pair(Z4(0), Z4(1))), // mixed parity
        ] {
            let c = ctx(m);
            let code = build_defining_set(&c, spec).unwrap();
            let t = standard_form(&c, &code).unwrap();
            let e = enumerate(&c, &code).unwrap();
            assert_eq!(
                t.group_order(),
                e.dedup.total_codewords,
                "m={m} spec={spec}"
            );
            assert_standard_shape(&t);
        }
    }

    #[test]
    fn single_2_m5_expected_type() {
        let c = ctx(5);
        let code = build_defining_set(&c, DefiningSetSpec::Single(Z4(2))).unwrap();
        let t = standard_form(&c, &code).unwrap();
        assert_eq!((t.k1, t.k2), (4, 1)); // type 4^4·2 = 512
    }
}
