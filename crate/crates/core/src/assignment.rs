//! Exact solver for the square minimum-cost assignment problem.
//!
//! Potentials-based augmenting-path formulation, O(n^3) overall. Costs may be
//! negative; only finiteness is required.

use crate::num::Real;

/// Returns, for each row, the column it is matched to in a minimum-cost
/// perfect matching of the square `cost` matrix.
pub fn min_cost_assignment<S: Real>(cost: &[Vec<S>]) -> Vec<usize> {
    let n = cost.len();
    assert!(
        cost.iter().all(|row| row.len() == n),
        "cost matrix must be square"
    );
    if n == 0 {
        return Vec::new();
    }

    let inf = S::infinity();
    // 1-indexed with a phantom column 0 holding the row being inserted.
    let mut row_potential = vec![S::zero(); n + 1];
    let mut col_potential = vec![S::zero(); n + 1];
    let mut matched_row = vec![0usize; n + 1];
    let mut predecessor = vec![0usize; n + 1];

    for row in 1..=n {
        matched_row[0] = row;
        let mut j0 = 0usize;
        let mut min_slack = vec![inf; n + 1];
        let mut visited = vec![false; n + 1];
        loop {
            visited[j0] = true;
            let i0 = matched_row[j0];
            let mut delta = inf;
            let mut j1 = 0usize;
            for j in 1..=n {
                if !visited[j] {
                    let reduced = cost[i0 - 1][j - 1] - row_potential[i0] - col_potential[j];
                    if reduced < min_slack[j] {
                        min_slack[j] = reduced;
                        predecessor[j] = j0;
                    }
                    if min_slack[j] < delta {
                        delta = min_slack[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if visited[j] {
                    row_potential[matched_row[j]] += delta;
                    col_potential[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            j0 = j1;
            if matched_row[j0] == 0 {
                break;
            }
        }
        // Augment along the alternating path back to the phantom column.
        loop {
            let j1 = predecessor[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        if matched_row[j] != 0 {
            assignment[matched_row[j] - 1] = j - 1;
        }
    }
    assignment
}

/// Total cost of an assignment under the given matrix.
pub fn assignment_cost<S: Real>(cost: &[Vec<S>], assignment: &[usize]) -> S {
    assignment
        .iter()
        .enumerate()
        .map(|(row, &col)| cost[row][col])
        .sum()
}
