//! Basis monomials of the exterior algebra on `2n` generators
//! `phi_1..phi_n, phibar_1..phibar_n`, encoded as bitmasks: bit `k < n` is
//! `phi_{k+1}` and bit `n + k` is `phibar_{k+1}`. Increasing bit order is the
//! canonical factor order (holomorphic factors first, each block increasing).

use crate::error::Error;

pub type Mask = u32;

/// Largest complex dimension the mask encoding supports.
pub const MAX_DIM: usize = 16;

pub fn holomorphic_bit(i: usize) -> Mask {
    1 << i
}

pub fn antiholomorphic_bit(n: usize, i: usize) -> Mask {
    1 << (n + i)
}

/// Sign of `mono(a) ^ mono(b)` relative to `mono(a | b)`, or `None` when the
/// monomials share a factor.
pub fn wedge_sign(a: Mask, b: Mask) -> Option<i32> {
    if a & b != 0 {
        return None;
    }
    // count pairs (x in a, y in b) with x > y
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let y = rest.trailing_zeros();
        rest &= rest - 1;
        let above = if y >= 31 { 0 } else { a >> (y + 1) };
        inversions += above.count_ones();
    }
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

pub fn bidegree(mask: Mask, n: usize) -> (usize, usize) {
    let hol = mask & ((1 << n) - 1);
    ((hol.count_ones()) as usize, (mask >> n).count_ones() as usize)
}

pub fn holomorphic_part(mask: Mask, n: usize) -> Mask {
    mask & ((1 << n) - 1)
}

pub fn antiholomorphic_part(mask: Mask, n: usize) -> Mask {
    mask & !((1 << n) - 1)
}

/// Generator indices of `mask` in increasing order.
pub fn indices(mask: Mask) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    out
}

pub fn from_indices(idx: &[usize]) -> Mask {
    idx.iter().fold(0, |m, &k| m | (1 << k))
}

/// All `k`-element subsets of `0..m`, as sorted index lists in lexicographic order.
pub fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..m {
            cur.push(x);
            rec(x + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// Canonical basis of `Lambda^{p,q}`: holomorphic index set in lexicographic
/// order, then antiholomorphic index set in lexicographic order.
pub fn basis(n: usize, p: usize, q: usize) -> Vec<Mask> {
    let mut out = Vec::new();
    for hol in combinations(n, p) {
        for anti in combinations(n, q) {
            let anti: Vec<usize> = anti.iter().map(|j| n + j).collect();
            out.push(from_indices(&hol) | from_indices(&anti));
        }
    }
    out
}

/// Complex conjugate of a monomial: swaps `phi_i <-> phibar_i`; returns the
/// conjugate mask and the reordering sign.
pub fn conjugate(mask: Mask, n: usize) -> (Mask, i32) {
    let hol = holomorphic_part(mask, n);
    let anti = antiholomorphic_part(mask, n) >> n;
    let (p, q) = (hol.count_ones(), anti.count_ones());
    let sign = if (p * q) % 2 == 0 { 1 } else { -1 };
    (anti | (hol << n), sign)
}

/// `f1^f3^c2` style rendering; the empty monomial renders as `1`.
pub fn render(mask: Mask, n: usize) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    indices(mask)
        .into_iter()
        .map(|k| if k < n { format!("f{}", k + 1) } else { format!("c{}", k - n + 1) })
        .collect::<Vec<_>>()
        .join("^")
}

/// Parse `f1^c2` style text (any factor order) into a mask and the sign
/// that sorts the factors into canonical order. `1` is the empty monomial.
pub fn parse(text: &str, n: usize) -> Result<(Mask, i32), Error> {
    let text = text.trim();
    if text == "1" {
        return Ok((0, 1));
    }
    let mut mask: Mask = 0;
    let mut sign = 1;
    for factor in text.split('^') {
        let factor = factor.trim();
        let (base, index) = match (factor.strip_prefix('f'), factor.strip_prefix('c')) {
            (Some(i), _) => (0, i),
            (_, Some(i)) => (n, i),
            _ => return Err(Error::Parse(format!("factor `{factor}` is not f<i> or c<i>"))),
        };
        let i: usize = index.parse().map_err(|_| Error::Parse(format!("bad index in `{factor}`")))?;
        if i == 0 || i > n {
            return Err(Error::Parse(format!("index of `{factor}` out of range 1..={n}")));
        }
        let bit = 1 << (base + i - 1);
        sign *= wedge_sign(mask, bit).ok_or_else(|| Error::Parse(format!("repeated factor `{factor}` in `{text}`")))?;
        mask |= bit;
    }
    Ok((mask, sign))
}

/// Sort key giving the canonical display order of monomials.
pub fn display_key(mask: Mask) -> (u32, Vec<usize>) {
    (mask.count_ones(), indices(mask))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force sign: concatenate factor lists and count inversions.
    fn oracle_sign(a: Mask, b: Mask) -> Option<i32> {
        if a & b != 0 {
            return None;
        }
        let seq: Vec<usize> = indices(a).into_iter().chain(indices(b)).collect();
        let mut inv = 0;
        for i in 0..seq.len() {
            for j in i + 1..seq.len() {
                if seq[i] > seq[j] {
                    inv += 1;
                }
            }
        }
        Some(if inv % 2 == 0 { 1 } else { -1 })
    }

    #[test]
    fn wedge_sign_matches_inversion_count() {
        for a in 0..64u32 {
            for b in 0..64u32 {
                assert_eq!(wedge_sign(a, b), oracle_sign(a, b), "a={a:b} b={b:b}");
            }
        }
    }

    #[test]
    fn basis_sizes_are_binomial() {
        assert_eq!(basis(3, 1, 1).len(), 9);
        assert_eq!(basis(3, 2, 1).len(), 9);
        assert_eq!(basis(3, 3, 3).len(), 1);
        assert_eq!(basis(4, 2, 2).len(), 36);
    }

    #[test]
    fn parse_round_trips() {
        for mask in 0..(1u32 << 6) {
            assert_eq!(parse(&render(mask, 3), 3).unwrap(), (mask, 1));
        }
        assert_eq!(parse("c1^f2", 3).unwrap(), (0b1010, -1));
        assert!(parse("f1^f1", 3).is_err());
        assert!(parse("f4", 3).is_err());
    }

    #[test]
    fn rendering() {
        let n = 3;
        let m = holomorphic_bit(0) | holomorphic_bit(2) | antiholomorphic_bit(n, 1);
        assert_eq!(render(m, n), "f1^f3^c2");
        assert_eq!(bidegree(m, n), (2, 1));
    }

    #[test]
    fn conjugation_sign() {
        let n = 3;
        // conj(f1^c2) = c1^f2 = -f2^c1
        let (m, s) = conjugate(holomorphic_bit(0) | antiholomorphic_bit(n, 1), n);
        assert_eq!(m, holomorphic_bit(1) | antiholomorphic_bit(n, 0));
        assert_eq!(s, -1);
    }
}
