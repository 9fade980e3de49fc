//! Text rendering of τ-orbits, one row per iterate.

use std::sync::Arc;

use nakayama_core::engine::tau;
use nakayama_core::{EngineError, NakayamaAlgebra, PerfectComplex};

/// Rows `P_i`, `τP_i`, ... up to the first `τ^k P_i ≅ P_i[m]` with `m >= 1`
/// or `max_steps` iterates, followed by a closing line.
pub fn tau_table(a: &NakayamaAlgebra, start: usize, max_steps: usize) -> Result<Vec<String>, EngineError> {
    let mut x = PerfectComplex::stalk(Arc::new(a.clone()), start, 0)?;
    let mut rows = vec![format!("P_{start}: {}", x.render())];
    for k in 1..=max_steps {
        x = tau(&x)?;
        rows.push(format!("tau^{k}(P_{start}): {}", x.render()));
        if let Some((p, d)) = x.as_stalk() {
            if p == start && d <= -1 {
                rows.push(format!("tau^{k}(P_{start}) = P_{start}[{}]", -d));
                return Ok(rows);
            }
        }
    }
    rows.push(format!(
        "no tau^k(P_{start}) = P_{start}[m] with k <= {max_steps}, m >= 1"
    ));
    Ok(rows)
}
