use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::{choose_prime, dixon_table, product_table, ModularCharTable, PrimeChoice};
use crate::error::Result;
use crate::groups::{conjugacy_classes, gl_order, lcm, ConjClassTable, FiniteGroup, GroupSpec, DEFAULT_ORDER_BOUND};

/// Exponent of `GL_n(F_q)`: `p^a lcm(q - 1, ..., q^n - 1)` with `p^a` the
/// least power of the characteristic that is at least `n`.
pub fn gl_exponent(n: usize, q: u32) -> u64 {
    let char_p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap() as u64;
    let mut unip = 1;
    while (unip as usize) < n {
        unip *= char_p;
    }
    let semi = (1..=n as u32).map(|i| (q as u64).pow(i) - 1).fold(1, lcm);
    unip * semi
}

/// The prime used for every table attached to `GL_n(F_q)` and its Levis.
pub fn default_gl_prime(n: usize, q: u32) -> Result<PrimeChoice> {
    choose_prime(gl_exponent(n, q), gl_order(n, q) as u64)
}

/// Dixon-Schneider table of `GL_n(F_q)` at a given prime.
pub fn compute_gl_table(n: usize, q: u32, prime: PrimeChoice) -> Result<ModularCharTable> {
    let (g, ct) = conjugacy_classes(&GroupSpec::gl(n, q), DEFAULT_ORDER_BOUND)?;
    dixon_table(&g, Arc::new(ct), prime)
}

/// Supplies `GL_n(F_q)` tables; implementations may cache.
pub trait TableSource: Sync {
    fn gl_table(&self, n: usize, q: u32, prime: PrimeChoice) -> Result<Arc<ModularCharTable>>;
}

/// Computes every table afresh.
pub struct DirectTables;

impl TableSource for DirectTables {
    fn gl_table(&self, n: usize, q: u32, prime: PrimeChoice) -> Result<Arc<ModularCharTable>> {
        compute_gl_table(n, q, prime).map(Arc::new)
    }
}

/// In-memory memo over another source.
pub struct MemoTables<S> {
    inner: S,
    memo: Mutex<HashMap<(usize, u32, u64), Arc<ModularCharTable>>>,
}

impl<S: TableSource> MemoTables<S> {
    pub fn new(inner: S) -> Self {
        Self { inner, memo: Mutex::new(HashMap::new()) }
    }
}

impl Default for MemoTables<DirectTables> {
    fn default() -> Self {
        Self::new(DirectTables)
    }
}

impl<S: TableSource> TableSource for MemoTables<S> {
    fn gl_table(&self, n: usize, q: u32, prime: PrimeChoice) -> Result<Arc<ModularCharTable>> {
        let key = (n, q, prime.p);
        if let Some(t) = self.memo.lock().unwrap().get(&key) {
            return Ok(t.clone());
        }
        let t = self.inner.gl_table(n, q, prime)?;
        self.memo.lock().unwrap().insert(key, t.clone());
        Ok(t)
    }
}

/// Levi group table as a product of factor tables from `source`.
pub fn levi_table(q: u32, composition: &[usize], source: &dyn TableSource, prime: PrimeChoice) -> Result<ModularCharTable> {
    let spec = GroupSpec::levi(q, composition);
    let m = FiniteGroup::new(spec, DEFAULT_ORDER_BOUND)?;
    let classes = Arc::new(ConjClassTable::build(&m));
    let factors = composition.iter().map(|&c| source.gl_table(c, q, prime)).collect::<Result<Vec<_>>>()?;
    let refs: Vec<&ModularCharTable> = factors.iter().map(|t| t.as_ref()).collect();
    product_table(classes, &refs)
}
