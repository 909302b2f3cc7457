use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use spin::RwLock;

/// Triangular table of signed Stirling numbers of the first kind, `S_k(l)` for `0 <= l <= k`.
///
/// Convention: `z (z-1) ... (z-k+1) = sum_l S_k(l) z^l`, so `S_3(2) = -3` and the
/// signs alternate as `(-1)^(k-l)`.
#[derive(Clone, Debug)]
pub struct StirlingTable {
    rows: Vec<Arc<Vec<BigInt>>>,
}

impl Default for StirlingTable {
    fn default() -> Self {
        StirlingTable::new()
    }
}

impl StirlingTable {
    pub fn new() -> Self {
        StirlingTable { rows: vec![Arc::new(vec![BigInt::one()])] }
    }

    /// Largest `k` currently tabulated.
    pub fn k_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// Extends the table through row `k`. Existing rows are never recomputed.
    pub fn ensure(&mut self, k: usize) {
        while self.rows.len() <= k {
            let n = self.rows.len() - 1;
            let prev = &self.rows[n];
            let nk = BigInt::from(n);
            let mut next = Vec::with_capacity(n + 2);
            next.push(BigInt::zero());
            for l in 1..=n + 1 {
                let right = if l <= n { &nk * &prev[l] } else { BigInt::zero() };
                next.push(&prev[l - 1] - right);
            }
            self.rows.push(Arc::new(next));
        }
    }

    pub fn row(&self, k: usize) -> Option<Arc<Vec<BigInt>>> {
        self.rows.get(k).cloned()
    }

    pub fn get(&self, k: usize, l: usize) -> Option<BigInt> {
        let row = self.rows.get(k)?;
        Some(row.get(l).cloned().unwrap_or_default())
    }
}

static TABLE: RwLock<Option<StirlingTable>> = RwLock::new(None);

/// Row `k` of the shared table, growing it under the write lock when needed.
pub fn stirling_row(k: usize) -> Arc<Vec<BigInt>> {
    if let Some(t) = &*TABLE.read() {
        if let Some(r) = t.row(k) {
            return r;
        }
    }
    let mut guard = TABLE.write();
    let table = guard.get_or_insert_with(StirlingTable::new);
    table.ensure(k);
    table.row(k).expect("row was just ensured")
}

/// `S_k(l)`; zero when `l > k`.
pub fn stirling_first(k: usize, l: usize) -> BigInt {
    if l > k {
        return BigInt::zero();
    }
    stirling_row(k)[l].clone()
}
