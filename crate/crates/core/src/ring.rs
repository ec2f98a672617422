use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

/// A polynomial ring whose variables are partitioned into blocks
/// x_{i1},...,x_{i m_i}.  A plain ring K[x_1..x_n] is the special case
/// where every block has size one.
///
/// The coefficient field never materializes; the ring only carries the
/// variable layout.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockedRing {
    block_sizes: Vec<u32>,
    /// offsets[i] = index of the first variable of block i.
    offsets: Vec<usize>,
    total_vars: usize,
}

impl BlockedRing {
    pub fn new(block_sizes: Vec<u32>) -> Self {
        assert!(
            !block_sizes.is_empty() && block_sizes.iter().all(|&m| m >= 1),
            "block sizes must be non-empty and positive"
        );
        let mut offsets = Vec::with_capacity(block_sizes.len());
        let mut total = 0usize;
        for &m in &block_sizes {
            offsets.push(total);
            total += m as usize;
        }
        BlockedRing {
            block_sizes,
            offsets,
            total_vars: total,
        }
    }

    /// Plain ring K[x_1..x_n].
    pub fn plain(n: usize) -> Self {
        BlockedRing::new(vec![1; n])
    }

    pub fn block_sizes(&self) -> &[u32] {
        &self.block_sizes
    }

    pub fn num_blocks(&self) -> usize {
        self.block_sizes.len()
    }

    pub fn total_vars(&self) -> usize {
        self.total_vars
    }

    pub fn is_plain(&self) -> bool {
        self.block_sizes.iter().all(|&m| m == 1)
    }

    /// Flat index of variable j (1-based) in block i (1-based).
    pub fn var_index(&self, block: usize, j: usize) -> usize {
        assert!(block >= 1 && block <= self.num_blocks());
        assert!(j >= 1 && j <= self.block_sizes[block - 1] as usize);
        self.offsets[block - 1] + (j - 1)
    }

    /// Block (1-based) containing the flat variable index.
    pub fn block_of(&self, var: usize) -> usize {
        debug_assert!(var < self.total_vars);
        match self.offsets.binary_search(&var) {
            Ok(i) => i + 1,
            Err(i) => i,
        }
    }

    /// Flat indices of the variables of a block (1-based).
    pub fn block_vars(&self, block: usize) -> std::ops::Range<usize> {
        let start = self.offsets[block - 1];
        start..start + self.block_sizes[block - 1] as usize
    }

    /// Display name: `x<i>` in a plain ring, `x<i><j>` otherwise.
    pub fn var_name(&self, var: usize) -> String {
        if self.is_plain() {
            format!("x{}", var + 1)
        } else {
            let block = self.block_of(var);
            let j = var - self.offsets[block - 1] + 1;
            format!("x{}{}", block, j)
        }
    }
}

/// Shared handle to a ring.  Equality compares the block structure, so
/// independently constructed rings with the same layout are interchangeable.
#[derive(Clone)]
pub struct Ring(Arc<BlockedRing>);

impl Ring {
    pub fn new(block_sizes: Vec<u32>) -> Self {
        Ring(Arc::new(BlockedRing::new(block_sizes)))
    }

    pub fn plain(n: usize) -> Self {
        Ring(Arc::new(BlockedRing::plain(n)))
    }

    /// The sub-ring on a set of flat variable indices (sorted, deduplicated
    /// by the caller being irrelevant: we sort internally).  Blocks are the
    /// nonempty traces of the original blocks.
    pub fn subring(&self, support: &[usize]) -> (Ring, Vec<usize>) {
        let mut vars: Vec<usize> = support.to_vec();
        vars.sort_unstable();
        vars.dedup();
        assert!(
            vars.iter().all(|&v| v < self.total_vars()),
            "support out of range"
        );
        let mut sizes: Vec<u32> = Vec::new();
        let mut last_block = 0usize;
        for &v in &vars {
            let b = self.block_of(v);
            if b == last_block {
                *sizes.last_mut().unwrap() += 1;
            } else {
                sizes.push(1);
                last_block = b;
            }
        }
        (Ring::new(sizes), vars)
    }
}

impl std::ops::Deref for Ring {
    type Target = BlockedRing;
    fn deref(&self) -> &BlockedRing {
        &self.0
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.block_sizes == other.0.block_sizes
    }
}

impl Eq for Ring {}

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.block_sizes.hash(state);
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring{:?}", self.0.block_sizes)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RingJson {
    pub blocks: Vec<u32>,
}

impl Ring {
    pub fn to_json(&self) -> RingJson {
        RingJson {
            blocks: self.block_sizes().to_vec(),
        }
    }

    pub fn from_json(json: &RingJson) -> Ring {
        Ring::new(json.blocks.clone())
    }
}
