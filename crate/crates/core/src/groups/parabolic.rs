use super::spec::{enumerate_group, gl_order, GroupSpec};
use crate::error::{Error, Result};
use crate::ffalg::{field, Field, MatFq};

/// Standard parabolic `P = MU` of `GL_N(F_q)` for a composition of `N`:
/// block upper-triangular `P`, block-diagonal Levi `M`, block
/// upper-unitriangular radical `U`.
#[derive(Clone, Debug)]
pub struct ParabolicData {
    q: u32,
    field: Field,
    composition: Vec<usize>,
    /// Block index of each coordinate.
    block_of: Vec<usize>,
}

impl ParabolicData {
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn n(&self) -> usize {
        self.block_of.len()
    }
    pub fn field(&self) -> Field {
        self.field
    }
    pub fn composition(&self) -> &[usize] {
        &self.composition
    }
    pub fn group_spec(&self) -> GroupSpec {
        GroupSpec::gl(self.n(), self.q)
    }
    pub fn levi_spec(&self) -> GroupSpec {
        GroupSpec::levi(self.q, &self.composition)
    }

    /// Offsets of the diagonal blocks.
    pub fn offsets(&self) -> Vec<usize> {
        self.composition
            .iter()
            .scan(0, |acc, &c| {
                let o = *acc;
                *acc += c;
                Some(o)
            })
            .collect()
    }

    pub fn unipotent_dim(&self) -> u32 {
        let c = &self.composition;
        (0..c.len()).flat_map(|i| (i + 1..c.len()).map(move |j| (c[i] * c[j]) as u32)).sum()
    }

    pub fn levi_order(&self) -> u128 {
        self.composition.iter().map(|&c| gl_order(c, self.q)).product()
    }
    pub fn unipotent_order(&self) -> u128 {
        (self.q as u128).pow(self.unipotent_dim())
    }
    pub fn parabolic_order(&self) -> u128 {
        self.levi_order() * self.unipotent_order()
    }

    fn block_lower_zero(&self, g: &MatFq) -> bool {
        (0..self.n()).all(|r| (0..self.n()).all(|c| self.block_of[r] <= self.block_of[c] || g.get(r, c) == 0))
    }

    pub fn in_p(&self, g: &MatFq) -> bool {
        g.rows() == self.n() && g.cols() == self.n() && self.block_lower_zero(g) && g.is_invertible()
    }

    pub fn in_m(&self, g: &MatFq) -> bool {
        g.rows() == self.n()
            && (0..self.n()).all(|r| (0..self.n()).all(|c| self.block_of[r] == self.block_of[c] || g.get(r, c) == 0))
            && g.is_invertible()
    }

    pub fn in_u(&self, g: &MatFq) -> bool {
        g.rows() == self.n()
            && self.block_lower_zero(g)
            && (0..self.n()).all(|r| {
                (0..self.n()).all(|c| self.block_of[r] != self.block_of[c] || g.get(r, c) == u8::from(r == c))
            })
    }

    /// Projection `P -> M` that zeroes the strictly upper blocks.
    pub fn levi_part(&self, p: &MatFq) -> MatFq {
        let mut m = p.clone();
        for r in 0..self.n() {
            for c in 0..self.n() {
                if self.block_of[r] != self.block_of[c] {
                    m.set(r, c, 0);
                }
            }
        }
        m
    }

    /// The `i`-th diagonal block of `g`.
    pub fn diagonal_block(&self, g: &MatFq, i: usize) -> MatFq {
        let off = self.offsets()[i];
        let c = self.composition[i];
        g.block(off, off, c, c)
    }

    pub fn enumerate_m(&self, bound: u64) -> Result<Vec<MatFq>> {
        enumerate_group(&self.levi_spec(), bound)
    }

    /// `U` in lexicographic order of its free (strictly block-upper) entries.
    pub fn enumerate_u(&self, bound: u64) -> Result<Vec<MatFq>> {
        let order = self.unipotent_order();
        if order > bound as u128 {
            return Err(Error::OrderBoundExceeded { order, bound });
        }
        let n = self.n();
        let slots: Vec<(usize, usize)> = (0..n)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .filter(|&(r, c)| self.block_of[r] < self.block_of[c])
            .collect();
        let id = MatFq::identity(self.field, n);
        Ok(MatFq::all(self.field, 1, slots.len())
            .map(|v| {
                let mut u = id.clone();
                for (&(r, c), &x) in slots.iter().zip(v.entries()) {
                    u.set(r, c, x);
                }
                u
            })
            .collect())
    }

    /// `P` as the products `m u`, `m` outer, `u` inner.
    pub fn enumerate_p(&self, bound: u64) -> Result<Vec<MatFq>> {
        let order = self.parabolic_order();
        if order > bound as u128 {
            return Err(Error::OrderBoundExceeded { order, bound });
        }
        let ms = self.enumerate_m(bound)?;
        let us = self.enumerate_u(bound)?;
        Ok(ms.iter().flat_map(|m| us.iter().map(move |u| m.mul(u))).collect())
    }
}

/// Parabolic data for a composition of `n`.
pub fn parabolic(n: usize, q: u32, composition: &[usize]) -> Result<ParabolicData> {
    if composition.iter().sum::<usize>() != n || composition.contains(&0) {
        return Err(Error::InvalidArgument(format!("composition {composition:?} is not a composition of {n}")));
    }
    let field = field(q)?;
    let block_of = composition.iter().enumerate().flat_map(|(i, &c)| std::iter::repeat_n(i, c)).collect();
    Ok(ParabolicData { q, field, composition: composition.to_vec(), block_of })
}
