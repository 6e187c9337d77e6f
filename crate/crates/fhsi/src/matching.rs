//! Exact minimum-cost assignment on square integer matrices.
//!
//! The classic O(n^3) Hungarian method with potentials. Costs are i64 so
//! every comparison and update is exact; palette matching quantizes its
//! f64 costs onto an integer grid before calling in here, which keeps
//! the optimum well-defined down to the last bit.

const INF: i64 = i64::MAX / 4;

/// Returns the row -> column assignment minimizing the total cost, plus
/// that total. `cost` is a row-major n x n matrix.
pub(crate) fn min_cost_assignment(cost: &[i64], n: usize) -> (Vec<usize>, i64) {
    assert_eq!(cost.len(), n * n, "cost matrix must be square");
    if n == 0 {
        return (Vec::new(), 0);
    }

    // 1-indexed potentials and matching, per the standard formulation.
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut matched_row = vec![0usize; n + 1]; // column -> row (0 = free)
    let mut way = vec![0usize; n + 1];

    for row in 1..=n {
        matched_row[0] = row;
        let mut j0 = 0usize;
        let mut min_slack = vec![INF; n + 1];
        let mut used = vec![false; n + 1];

        loop {
            used[j0] = true;
            let i0 = matched_row[j0];
            let mut delta = INF;
            let mut j1 = 0usize;

            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let slack = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if slack < min_slack[j] {
                    min_slack[j] = slack;
                    way[j] = j0;
                }
                if min_slack[j] < delta {
                    delta = min_slack[j];
                    j1 = j;
                }
            }

            for j in 0..=n {
                if used[j] {
                    u[matched_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }

            j0 = j1;
            if matched_row[j0] == 0 {
                break;
            }
        }

        // Augment along the alternating path back to the root.
        while j0 != 0 {
            let j1 = way[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
        }
    }

    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        if matched_row[j] != 0 {
            assignment[matched_row[j] - 1] = j - 1;
        }
    }
    let total = (0..n).map(|i| cost[i * n + assignment[i]]).sum();
    (assignment, total)
}
