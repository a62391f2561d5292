//! Generalized Petersen graphs `GP(n, k)`.
//!
//! Labelling: `u_i = i` and `v_i = n + i` for `i` in `Z_n`, with edges `u_i u_{i+1}`,
//! `v_i v_{i+k}` and spokes `u_i v_i`.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{invalid, Result};
use crate::graph::Graph;

/// Vertex `u_i`.
pub fn u(n: usize, i: i64) -> usize {
    i.rem_euclid(n as i64) as usize
}

/// Vertex `v_i`.
pub fn v(n: usize, i: i64) -> usize {
    n + i.rem_euclid(n as i64) as usize
}

/// `GP(n, k)`. For `k = n/2` the inner edges come in parallel pairs; they are rejected
/// unless `collapse_parallel` is set, in which case each pair becomes a single edge.
pub fn gp(n: usize, k: usize, collapse_parallel: bool) -> Result<Graph> {
    if n < 3 || k == 0 || k >= n {
        return Err(invalid(format!(
            "GP({n},{k}) needs n >= 3 and 1 <= k <= n-1"
        )));
    }
    if 2 * k == n && !collapse_parallel {
        return Err(invalid(format!("GP({n},{k}) has parallel inner edges")));
    }
    let mut e = Vec::with_capacity(3 * n);
    for i in 0..n as i64 {
        e.push((u(n, i), u(n, i + 1)));
        e.push((v(n, i), v(n, i + k as i64)));
        e.push((u(n, i), v(n, i)));
    }
    Graph::from_edges_dedup(2 * n, &e)
}

/// Closed-form hamiltonicity of `GP(n, k)` (with `GP(n, n/2)` collapsed).
pub fn gp_is_hamiltonian(n: usize, k: usize) -> bool {
    let odd_bad = n % 6 == 5 && (k == 2 || k == n - 2 || 2 * k + 1 == n || 2 * k == n + 1);
    let half_bad = 2 * k == n && n % 4 == 0 && n >= 8;
    !(odd_bad || half_bad)
}

/// Whether the Hamilton-path table for `GP(n, 2)` guarantees a path between vertices `x` and `y`.
pub fn gp2_path_admissible(n: usize, x: usize, y: usize) -> bool {
    if x == y || x >= 2 * n || y >= 2 * n {
        return false;
    }
    let side = |w: usize| (w >= n, (w % n) as i64);
    let (mut a, mut b) = (side(x), side(y));
    if a.0 && !b.0 {
        core::mem::swap(&mut a, &mut b);
    }
    let nn = n as i64;
    // {a_i, b_j} with j - i = c + 6t for an integer t and 0 <= c + 6t < n, in either order
    let step = |i: i64, j: i64, c: i64| {
        let d = (j - i).rem_euclid(nn);
        d >= c && (d - c) % 6 == 0
    };
    let either = |i: i64, j: i64, c: i64| step(i, j, c) || step(j, i, c);
    let exact =
        |i: i64, j: i64, c: i64| (j - i - c).rem_euclid(nn) == 0 || (i - j - c).rem_euclid(nn) == 0;
    let (ua, ia) = (!a.0, a.1);
    let (ub, ib) = (!b.0, b.1);
    match n % 6 {
        1 | 3 => true,
        // the printed table excludes {u_i, u_{i+6t}}; exhaustive search shows the
        // obstructed pairs are {v_i, v_{i+6t}}, so both are excluded
        0 => {
            let uu = ua && ub && (exact(ia, ib, 2) || either(ia, ib, 0));
            let vv = !ua && !ub && either(ia, ib, 0);
            !(uu || vv)
        }
        2 => !(!ua && !ub && either(ia, ib, 4)),
        4 => {
            let uu = ua && ub && exact(ia, ib, 2);
            let uv = ua && !ub && (exact(ia, ib, 1) || step(ia, ib, 2));
            let vv = !ua && !ub && either(ia, ib, 4);
            !(uu || uv || vv)
        }
        5 => {
            let g = gp(n, 2, true).expect("n >= 5");
            !g.has_edge(x, y) && !(!ua && !ub && either(ia, ib, 3))
        }
        _ => unreachable!(),
    }
}
