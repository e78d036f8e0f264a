//! Built-in 8×8 digit glyphs.
//!
//! Each glyph is a 5×7 font cell placed on rows 1..=7 and columns 2..=6, so
//! the stroke pattern is centered on the 2D walk's start `(4, 4)`. Row index is
//! the walk's x axis, column index its y axis.

use super::distribution::{integer_axis, TargetDistribution};
use crate::error::{invalid, Result};

pub const GRID: usize = 8;

const FONT: [[&str; 7]; 10] = [
    [".###.", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."],
    ["..#..", "..#..", "..#..", "..#..", "..#..", "..#..", "..#.."],
    [".###.", "#...#", "....#", "...#.", "..#..", ".#...", "#####"],
    ["####.", "....#", "....#", ".###.", "....#", "....#", "####."],
    ["...#.", "..##.", ".#.#.", "#..#.", "#####", "...#.", "...#."],
    ["#####", "#....", "####.", "....#", "....#", "#...#", ".###."],
    ["..##.", ".#...", "#....", "####.", "#...#", "#...#", ".###."],
    ["#####", "....#", "...#.", "..#..", ".#...", ".#...", ".#..."],
    [".###.", "#...#", "#...#", ".###.", "#...#", "#...#", ".###."],
    [".###.", "#...#", "#...#", ".####", "....#", "...#.", ".##.."],
];

const ROW_OFFSET: usize = 1;
const COL_OFFSET: usize = 2;

/// The lit/unlit bitmap of digit `d`, row-major.
pub fn digit_bitmap(d: u8) -> Result<[[bool; GRID]; GRID]> {
    if d > 9 {
        return Err(invalid(format!("digit must be 0-9, got {d}")));
    }
    let mut grid = [[false; GRID]; GRID];
    for (r, line) in FONT[d as usize].iter().enumerate() {
        for (c, ch) in line.chars().enumerate() {
            grid[r + ROW_OFFSET][c + COL_OFFSET] = ch == '#';
        }
    }
    Ok(grid)
}

/// Uniform mass over the lit pixels of digit `d` on the 8×8 grid.
pub fn digit_target(d: u8) -> Result<TargetDistribution> {
    let bitmap = digit_bitmap(d)?;
    let weights = bitmap.iter().flatten().map(|&lit| if lit { 1.0 } else { 0.0 }).collect();
    TargetDistribution::from_weights(
        format!("digit({d})"),
        vec![GRID, GRID],
        vec![integer_axis(GRID), integer_axis(GRID)],
        weights,
    )
}
