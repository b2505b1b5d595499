//! Row reduction over prime fields. Reduced row echelon form with rows
//! sorted by pivot is a canonical description of a row space.

/// Canonical RREF of bitpacked rows over `F_2` (bit `j` is column `j`).
pub(crate) fn rref_f2(mut rows: Vec<u64>) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(rows.len());
    while let Some(idx) = (0..rows.len())
        .filter(|&i| rows[i] != 0)
        .min_by_key(|&i| rows[i].trailing_zeros())
    {
        let pivot_row = rows.swap_remove(idx);
        let bit = pivot_row & pivot_row.wrapping_neg();
        for r in rows.iter_mut().chain(out.iter_mut()) {
            if *r & bit != 0 {
                *r ^= pivot_row;
            }
        }
        out.push(pivot_row);
    }
    out
}

/// Residual of `v` after elimination by a canonical `F_2` RREF.
pub(crate) fn reduce_f2(rref: &[u64], mut v: u64) -> u64 {
    for &r in rref {
        let bit = r & r.wrapping_neg();
        if v & bit != 0 {
            v ^= r;
        }
    }
    v
}

pub(crate) fn inv_mod_p(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) is the inverse
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

fn pivot(row: &[u32]) -> Option<usize> {
    row.iter().position(|&c| c != 0)
}

/// Canonical RREF over `F_p`: zero rows dropped, pivots normalized to 1,
/// pivot columns cleared, rows sorted by pivot.
pub(crate) fn rref_fp(mut rows: Vec<Vec<u32>>, p: u32) -> Vec<Vec<u32>> {
    let pp = p as u64;
    let mut out: Vec<Vec<u32>> = Vec::new();
    loop {
        rows.retain(|r| pivot(r).is_some());
        let Some(idx) = (0..rows.len()).min_by_key(|&i| pivot(&rows[i])) else {
            break;
        };
        let mut pr = rows.swap_remove(idx);
        let col = pivot(&pr).expect("nonzero row");
        let inv = inv_mod_p(pr[col], p) as u64;
        for c in pr.iter_mut() {
            *c = (*c as u64 * inv % pp) as u32;
        }
        for r in rows.iter_mut().chain(out.iter_mut()) {
            let f = r[col] as u64;
            if f != 0 {
                for (c, &q) in r.iter_mut().zip(&pr) {
                    *c = ((*c as u64 + (pp - f) * q as u64) % pp) as u32;
                }
            }
        }
        out.push(pr);
    }
    out.sort_by_key(|r| pivot(r));
    out
}

/// Residual of `v` after elimination by a canonical `F_p` RREF.
pub(crate) fn reduce_fp(rref: &[Vec<u32>], v: &mut [u32], p: u32) {
    let pp = p as u64;
    for r in rref {
        let col = pivot(r).expect("rref rows are nonzero");
        let f = v[col] as u64;
        if f != 0 {
            for (c, &q) in v.iter_mut().zip(r) {
                *c = ((*c as u64 + (pp - f) * q as u64) % pp) as u32;
            }
        }
    }
}
