//! Constant tables for the fixed-dimension functions.

/// Shekel's foxholes grid: column `j` is `(FOXHOLE_GRID[j % 5], FOXHOLE_GRID[j / 5])`.
pub const FOXHOLE_GRID: [f64; 5] = [-32.0, -16.0, 0.0, 16.0, 32.0];

pub fn foxhole(j: usize) -> [f64; 2] {
    [FOXHOLE_GRID[j % 5], FOXHOLE_GRID[j / 5]]
}

pub const KOWALIK_A: [f64; 11] = [
    0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323, 0.0235, 0.0246,
];

/// Reciprocals of `b_i`.
pub const KOWALIK_INV_B: [f64; 11] = [0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0];

pub const HARTMANN3_A: [[f64; 3]; 4] = [
    [3.0, 10.0, 30.0],
    [0.1, 10.0, 35.0],
    [3.0, 10.0, 30.0],
    [0.1, 10.0, 35.0],
];

pub const HARTMANN3_C: [f64; 4] = [1.0, 1.2, 3.0, 3.2];

pub const HARTMANN3_P: [[f64; 3]; 4] = [
    [0.3689, 0.1170, 0.2673],
    [0.4699, 0.4387, 0.7470],
    [0.1091, 0.8732, 0.5547],
    [0.038150, 0.5743, 0.8828],
];
