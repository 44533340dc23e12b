//! The minimum-degree / rigidity trade-off curves: for each integer delta,
//! the largest d allowed by the connectivity-style bound (n + d)/2 - 1 <=
//! delta and by the edge-count bound 2d - d(d+1)/n <= delta. The conjectured
//! rigidity is the pointwise minimum; the two bounds cross near
//! delta = (3n - 6)/4.

use serde::{Deserialize, Serialize};

use rigidity_core::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRow {
    pub delta: usize,
    pub d_conn: usize,
    pub d_edge: usize,
    pub d_star: usize,
}

/// Whether d satisfies (n + d)/2 - 1 <= delta, over the integers.
fn conn_ok(n: usize, d: usize, delta: usize) -> bool {
    n + d <= 2 * delta + 2
}

/// Whether d satisfies 2d - d(d+1)/n <= delta, over the integers.
fn edge_ok(n: usize, d: usize, delta: usize) -> bool {
    2 * d * n <= delta * n + d * (d + 1)
}

/// One row per delta in [0, n - 1]. Both bounds are monotone in delta, so
/// each column is computed by resuming the integer search where the
/// previous row left it.
pub fn conjecture_curve(n: usize) -> Result<Vec<CurveRow>> {
    if n < 2 {
        return Err(Error::Parameter(format!("curve needs n >= 2; got {n}")));
    }
    let mut rows = Vec::with_capacity(n);
    let mut d_conn = 0usize;
    let mut d_edge = 0usize;
    for delta in 0..n {
        while d_conn < n - 1 && conn_ok(n, d_conn + 1, delta) {
            d_conn += 1;
        }
        while d_edge < n - 1 && edge_ok(n, d_edge + 1, delta) {
            d_edge += 1;
        }
        // the searches above only grow; d = 0 is always allowed
        let row_conn = if conn_ok(n, d_conn, delta) { d_conn } else { 0 };
        let row_edge = if edge_ok(n, d_edge, delta) { d_edge } else { 0 };
        rows.push(CurveRow {
            delta,
            d_conn: row_conn,
            d_edge: row_edge,
            d_star: row_conn.min(row_edge),
        });
    }
    Ok(rows)
}

/// CSV with a leading comment carrying the crossing point of the two bounds.
pub fn curve_to_csv(n: usize, rows: &[CurveRow]) -> String {
    let crossing = (3.0 * n as f64 - 6.0) / 4.0;
    let mut out = format!("# bounds cross near delta = (3n-6)/4 = {crossing:.2} for n = {n}\n");
    out.push_str("delta,d_conn,d_edge,d_star\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.delta, r.d_conn, r.d_edge, r.d_star
        ));
    }
    out
}
