use super::error::AlgebraError;
use super::ratfunc::RatFunc;
use std::fmt;

/// Dense matrix of rational functions, row-major.
#[derive(Clone, PartialEq)]
pub struct RFMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<RatFunc>,
}

impl RFMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<RatFunc>) -> Result<RFMatrix, AlgebraError> {
        if entries.len() != rows * cols {
            return Err(AlgebraError::Dimension);
        }
        Ok(RFMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> RFMatrix {
        RFMatrix { rows, cols, entries: vec![RatFunc::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> RFMatrix {
        let mut m = RFMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, RatFunc::one());
        }
        m
    }

    pub fn diag(d: &[RatFunc]) -> RFMatrix {
        let n = d.len();
        let mut m = RFMatrix::zeros(n, n);
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> RatFunc>(rows: usize, cols: usize, mut f: F) -> RFMatrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RFMatrix { rows, cols, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFunc) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> RFMatrix {
        RFMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, o: &RFMatrix) -> Result<RFMatrix, AlgebraError> {
        if self.cols != o.rows {
            return Err(AlgebraError::Dimension);
        }
        Ok(RFMatrix::from_fn(self.rows, o.cols, |i, j| {
            RatFunc::sum((0..self.cols).filter_map(|k| {
                let a = self.get(i, k);
                let b = o.get(k, j);
                if a.is_zero() || b.is_zero() {
                    None
                } else {
                    Some(a * b)
                }
            }))
        }))
    }

    pub fn scale(&self, c: &RatFunc) -> RFMatrix {
        RFMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|e| e * c).collect() }
    }

    pub fn sub(&self, o: &RFMatrix) -> Result<RFMatrix, AlgebraError> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(AlgebraError::Dimension);
        }
        Ok(RFMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(o.entries.iter()).map(|(a, b)| a - b).collect(),
        })
    }

    /// Kronecker product, index (i*p + k, j*q + l).
    pub fn kron(&self, o: &RFMatrix) -> RFMatrix {
        RFMatrix::from_fn(self.rows * o.rows, self.cols * o.cols, |a, b| {
            let (i, k) = (a / o.rows, a % o.rows);
            let (j, l) = (b / o.cols, b % o.cols);
            let x = self.get(i, j);
            let y = o.get(k, l);
            if x.is_zero() || y.is_zero() {
                RatFunc::zero()
            } else {
                x * y
            }
        })
    }

    /// Block matrix [[a, b], [c, d]] of equal square blocks.
    pub fn block2(a: &RFMatrix, b: &RFMatrix, c: &RFMatrix, d: &RFMatrix) -> RFMatrix {
        let (p, q) = (a.rows, a.cols);
        RFMatrix::from_fn(2 * p, 2 * q, |i, j| {
            let blk = match (i / p, j / q) {
                (0, 0) => a,
                (0, 1) => b,
                (1, 0) => c,
                _ => d,
            };
            blk.get(i % p, j % q).clone()
        })
    }

    /// Block diagonal sum.
    pub fn direct_sum(blocks: &[&RFMatrix]) -> RFMatrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = RFMatrix::zeros(n, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.rows;
        }
        m
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RFMatrix {
        RFMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Index sets of the connected components of the nonzero pattern of a square matrix.
    pub fn diagonal_blocks(&self) -> Vec<Vec<usize>> {
        let n = self.rows;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for i in 0..n {
            for j in 0..self.cols.min(n) {
                if i != j && !self.get(i, j).is_zero() {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for i in 0..n {
            let r = find(&mut parent, i);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(i);
        }
        out
    }

    /// For a monomial matrix (one nonzero entry per row and column) returns
    /// `perm` and `vals` with M[perm[j]][j] = vals[j].
    pub fn as_monomial_matrix(&self) -> Option<(Vec<usize>, Vec<RatFunc>)> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut perm = vec![usize::MAX; n];
        let mut vals = vec![RatFunc::zero(); n];
        let mut row_used = vec![false; n];
        for j in 0..n {
            for i in 0..n {
                if !self.get(i, j).is_zero() {
                    if perm[j] != usize::MAX || row_used[i] {
                        return None;
                    }
                    perm[j] = i;
                    row_used[i] = true;
                    vals[j] = self.get(i, j).clone();
                }
            }
            if perm[j] == usize::MAX {
                return None;
            }
        }
        Some((perm, vals))
    }

    /// Inverse of a monomial matrix.
    pub fn monomial_inverse(&self) -> Option<RFMatrix> {
        let (perm, vals) = self.as_monomial_matrix()?;
        let mut m = RFMatrix::zeros(self.rows, self.cols);
        for j in 0..self.cols {
            m.set(j, perm[j], vals[j].inv());
        }
        Some(m)
    }

    pub fn inverse(&self) -> Result<RFMatrix, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare(self.rows, self.cols));
        }
        if let Some(m) = self.monomial_inverse() {
            return Ok(m);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RFMatrix::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).is_zero()).ok_or(AlgebraError::DivisionByZero)?;
            if p != c {
                for j in 0..n {
                    a.entries.swap(c * n + j, p * n + j);
                    inv.entries.swap(c * n + j, p * n + j);
                }
            }
            let pv = a.get(c, c).inv();
            for j in 0..n {
                let x = a.get(c, j) * &pv;
                a.set(c, j, x);
                let y = inv.get(c, j) * &pv;
                inv.set(c, j, y);
            }
            for r in 0..n {
                if r != c && !a.get(r, c).is_zero() {
                    let f = a.get(r, c).clone();
                    for j in 0..n {
                        let x = a.get(r, j) - &(&f * a.get(c, j));
                        a.set(r, j, x);
                        let y = inv.get(r, j) - &(&f * inv.get(c, j));
                        inv.set(r, j, y);
                    }
                }
            }
        }
        Ok(inv)
    }
}

/// Determinant by fraction-free Bareiss elimination.
pub fn rf_det(m: &RFMatrix) -> Result<RatFunc, AlgebraError> {
    if !m.is_square() {
        return Err(AlgebraError::NotSquare(m.rows, m.cols));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(RatFunc::one());
    }
    let mut a = m.entries.clone();
    let mut prev = RatFunc::one();
    let mut sign = false;
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                Some(r) => {
                    for j in 0..n {
                        a.swap(k * n + j, r * n + j);
                    }
                    sign = !sign;
                }
                None => return Ok(RatFunc::zero()),
            }
        }
        let piv = a[k * n + k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&piv * &a[i * n + j]) - &(&a[i * n + k] * &a[k * n + j]);
                a[i * n + j] = t.div(&prev);
            }
            a[i * n + k] = RatFunc::zero();
        }
        prev = piv;
    }
    let d = a[n * n - 1].clone();
    Ok(if sign { d.neg() } else { d })
}

/// Determinant by cofactor expansion; exponential, for cross-checks only.
pub fn rf_det_cofactor(m: &RFMatrix) -> Result<RatFunc, AlgebraError> {
    if !m.is_square() {
        return Err(AlgebraError::NotSquare(m.rows, m.cols));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(RatFunc::one());
    }
    if n == 1 {
        return Ok(m.get(0, 0).clone());
    }
    let mut acc = RatFunc::zero();
    for j in 0..n {
        let e = m.get(0, j);
        if e.is_zero() {
            continue;
        }
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let minor = rf_det_cofactor(&m.submatrix(&rows, &cols))?;
        let t = e * &minor;
        acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    Ok(acc)
}

/// det(1 - z*M). Monomial matrices factor over their cycles, anything else
/// goes through Bareiss.
pub fn det_one_minus(z: &RatFunc, m: &RFMatrix) -> Result<RatFunc, AlgebraError> {
    if !m.is_square() {
        return Err(AlgebraError::NotSquare(m.rows, m.cols));
    }
    let blocks = m.diagonal_blocks();
    if blocks.len() > 1 {
        let mut acc = RatFunc::one();
        for b in blocks {
            acc = &acc * &det_one_minus(z, &m.submatrix(&b, &b))?;
        }
        return Ok(acc);
    }
    if let Some((perm, vals)) = m.as_monomial_matrix() {
        let n = m.rows;
        let mut seen = vec![false; n];
        let mut acc = RatFunc::one();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut prod = RatFunc::one();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                prod = &prod * &vals[j];
                j = perm[j];
                len += 1;
            }
            let t = &z.pow(len) * &prod;
            let f = match t.as_monomial() {
                Some((c, m)) => RatFunc::one_minus(c, m),
                None => &RatFunc::one() - &t,
            };
            acc = &acc * &f;
        }
        return Ok(acc);
    }
    det_one_minus_bareiss(z, m)
}

pub fn det_one_minus_bareiss(z: &RatFunc, m: &RFMatrix) -> Result<RatFunc, AlgebraError> {
    let id = RFMatrix::identity(m.rows);
    rf_det(&id.sub(&m.scale(z))?)
}

impl fmt::Debug for RFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{}", self.get(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::super::mono::{x, V, XS};
    use super::*;

    fn r(s: usize) -> RatFunc {
        RatFunc::var(s)
    }

    #[test]
    fn det_examples() {
        let m = RFMatrix::new(1, 1, vec![r(x(1))]).unwrap();
        assert_eq!(rf_det(&m).unwrap(), r(x(1)));
        let m = RFMatrix::new(2, 2, vec![RatFunc::one(), r(V), r(V), RatFunc::one()]).unwrap();
        assert_eq!(rf_det(&m).unwrap(), &RatFunc::one() - &(&r(V) * &r(V)));
        assert!(rf_det(&RFMatrix::zeros(2, 2)).unwrap().is_zero());
        assert!(matches!(rf_det(&RFMatrix::zeros(2, 3)), Err(AlgebraError::NotSquare(2, 3))));
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let m = RFMatrix::from_fn(3, 3, |i, j| {
            let a = r(x(1 + (i + j) % 3));
            if i == j {
                &a + &RatFunc::one()
            } else {
                &a * &r(V)
            }
        });
        assert_eq!(rf_det(&m).unwrap(), rf_det_cofactor(&m).unwrap());
    }

    #[test]
    fn block_route_matches_bareiss() {
        let m = RFMatrix::from_fn(4, 4, |i, j| match (i, j) {
            (0, 0) => r(x(1)),
            (0, 2) | (2, 0) => r(V),
            (2, 2) => r(x(2)),
            (1, 3) => r(x(3)),
            (3, 1) => &r(x(1)) * &r(V),
            _ => RatFunc::zero(),
        });
        assert_eq!(m.diagonal_blocks(), vec![vec![0, 2], vec![1, 3]]);
        let z = r(V);
        assert_eq!(det_one_minus(&z, &m).unwrap(), det_one_minus_bareiss(&z, &m).unwrap());
    }

    #[test]
    fn cycle_route() {
        // 3-cycle with weights a, b, c
        let mut m = RFMatrix::zeros(3, 3);
        m.set(1, 0, r(x(1)));
        m.set(2, 1, r(x(2)));
        m.set(0, 2, r(x(3)));
        let z = r(XS);
        let a = det_one_minus(&z, &m).unwrap();
        let b = det_one_minus_bareiss(&z, &m).unwrap();
        assert_eq!(a, b);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RFMatrix::identity(3));
    }
}
