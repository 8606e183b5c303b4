//! Closed-form crossing bounds for WB(r) and the per-class crossing counts of
//! the ring drawing.
//!
//! Everything is exact integer arithmetic in `i128`, which is far wider than
//! needed for the supported range (r <= 40).

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("r = {r} is outside the domain {lo}..={hi}")]
    Domain { r: u32, lo: u32, hi: u32 },
    #[error("invalid range {0}..={1}")]
    Range(u32, u32),
}

pub const MAX_R: u32 = 40;
pub const TABLE_MAX_R: u32 = 20;

fn pow2(e: u32) -> i128 {
    1i128 << e
}

fn require(r: u32, lo: u32) -> Result<(), BoundsError> {
    if r < lo || r > MAX_R {
        Err(BoundsError::Domain { r, lo, hi: MAX_R })
    } else {
        Ok(())
    }
}

/// Cimikowski's bound `(3/2)4^r - 3*2^r - r*2^r`. Negative for r < 3.
pub fn bound_cimikowski(r: u32) -> i128 {
    assert!((1..=MAX_R).contains(&r), "r out of range");
    3 * pow2(2 * r - 1) - 3 * pow2(r) - r as i128 * pow2(r)
}

/// The 2015 bound `(5/4)4^r - 3*2^r - r*2^r`.
pub fn bound_vijaya2015(r: u32) -> i128 {
    assert!((1..=MAX_R).contains(&r), "r out of range");
    5 * pow2(2 * r - 2) - 3 * pow2(r) - r as i128 * pow2(r)
}

/// Rings-only count `4^r / 2 - 2^(r+1)`.
pub fn bound_rings_only(r: u32) -> Result<i128, BoundsError> {
    require(r, 4)?;
    Ok(pow2(2 * r - 1) - pow2(r + 1))
}

/// `(7/8)4^r - (3r - 4)2^r`.
pub fn bound_new(r: u32) -> Result<i128, BoundsError> {
    require(r, 4)?;
    Ok(7 * pow2(2 * r - 3) - (3 * r as i128 - 4) * pow2(r))
}

/// Inner edges against ring edges: `2^(r+1)(2^(r-3) - 1)`.
pub fn lemma4(r: u32) -> Result<i128, BoundsError> {
    require(r, 4)?;
    Ok(pow2(r + 1) * (pow2(r - 3) - 1))
}

/// Wraparound edges against ring edges: `2^(2r-2)`.
pub fn lemma5(r: u32) -> Result<i128, BoundsError> {
    require(r, 4)?;
    Ok(pow2(2 * r - 2))
}

/// Inner edges against wraparound edges: `2^(r+1)(2^(r-4) - 1)`.
pub fn lemma6(r: u32) -> Result<i128, BoundsError> {
    require(r, 4)?;
    Ok(pow2(r + 1) * (pow2(r - 4) - 1))
}

/// Wraparound edges against each other: `2^r(2^(r-4) - 1)`.
pub fn lemma7(r: u32) -> Result<i128, BoundsError> {
    require(r, 4)?;
    Ok(pow2(r) * (pow2(r - 4) - 1))
}

pub fn lemma_sum(r: u32) -> Result<i128, BoundsError> {
    Ok(lemma4(r)? + lemma5(r)? + lemma6(r)? + lemma7(r)?)
}

/// One step of the doubling recursion: two copies of the `r - 1` drawing plus
/// the crossings introduced by the new wraparound edges.
pub fn recursion_step(prev: i128, r: u32) -> Result<i128, BoundsError> {
    require(r, 5)?;
    Ok(2 * prev + lemma5(r)? + lemma6(r)? + lemma7(r)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsRow {
    pub r: u32,
    pub cimikowski: i128,
    pub vijaya2015: i128,
    pub rings_only: i128,
    pub new_bound: i128,
    pub lemma4: i128,
    pub lemma5: i128,
    pub lemma6: i128,
    pub lemma7: i128,
    pub lemma_sum: i128,
    /// `new_bound - lemma_sum`: crossings the lemmas do not account for.
    pub gap: i128,
}

impl BoundsRow {
    pub fn new(r: u32) -> Result<Self, BoundsError> {
        let lemma_sum = lemma_sum(r)?;
        let new_bound = bound_new(r)?;
        Ok(BoundsRow {
            r,
            cimikowski: bound_cimikowski(r),
            vijaya2015: bound_vijaya2015(r),
            rings_only: bound_rings_only(r)?,
            new_bound,
            lemma4: lemma4(r)?,
            lemma5: lemma5(r)?,
            lemma6: lemma6(r)?,
            lemma7: lemma7(r)?,
            lemma_sum,
            gap: new_bound - lemma_sum,
        })
    }

    pub fn is_ordered(&self) -> bool {
        self.new_bound < self.vijaya2015 && self.vijaya2015 < self.cimikowski
    }

    fn cells(&self) -> [i128; 10] {
        [
            self.cimikowski,
            self.vijaya2015,
            self.rings_only,
            self.new_bound,
            self.lemma4,
            self.lemma5,
            self.lemma6,
            self.lemma7,
            self.lemma_sum,
            self.gap,
        ]
    }
}

pub const CSV_HEADER: &str =
    "r,cimikowski,vijaya2015,rings_only,new_bound,lemma4,lemma5,lemma6,lemma7,lemma_sum,gap";

pub fn comparison_table(r_min: u32, r_max: u32) -> Result<Vec<BoundsRow>, BoundsError> {
    if r_min < 4 || r_min > r_max || r_max > TABLE_MAX_R {
        return Err(BoundsError::Range(r_min, r_max));
    }
    (r_min..=r_max).map(BoundsRow::new).collect()
}

pub fn to_csv(rows: &[BoundsRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.r.to_string());
        for c in row.cells() {
            out.push(',');
            out.push_str(&c.to_string());
        }
        out.push('\n');
    }
    out
}

pub fn to_markdown(rows: &[BoundsRow]) -> String {
    let header: Vec<&str> = CSV_HEADER.split(',').collect();
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|row| {
            std::iter::once(row.r.to_string())
                .chain(row.cells().iter().map(i128::to_string))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            body.iter()
                .map(|b| b[c].len())
                .chain([header[c].len()])
                .max()
                .unwrap_or(1)
        })
        .collect();
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:>w$}", w = *w))
            .collect();
        format!("| {} |\n", padded.join(" | "))
    };
    let mut out = line(&header.iter().map(|s| s.to_string()).collect::<Vec<_>>());
    let rule: Vec<String> = widths
        .iter()
        .map(|w| format!("{}:", "-".repeat(w.saturating_sub(1).max(1))))
        .collect();
    out.push_str(&format!(
        "|{}|\n",
        rule.iter()
            .map(|s| format!(" {s} "))
            .collect::<Vec<_>>()
            .join("|")
    ));
    for b in &body {
        out.push_str(&line(b));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(
            [
                bound_cimikowski(3),
                bound_cimikowski(4),
                bound_cimikowski(5)
            ],
            [48, 272, 1280]
        );
        assert_eq!(
            [
                bound_vijaya2015(4),
                bound_vijaya2015(5),
                bound_vijaya2015(6)
            ],
            [208, 1024, 4544]
        );
        assert_eq!(bound_rings_only(4), Ok(96));
        assert_eq!(bound_rings_only(5), Ok(448));
        assert_eq!(bound_new(4), Ok(96));
        assert_eq!(bound_new(5), Ok(544));
        assert_eq!(bound_new(6), Ok(2688));
        assert_eq!(lemma6(6), Ok(384));
        assert_eq!(lemma_sum(6), Ok(2496));
    }

    #[test]
    fn lemmas_at_five() {
        let got = [lemma4(5), lemma5(5), lemma6(5), lemma7(5)].map(Result::unwrap);
        assert_eq!(got, [192, 256, 64, 32]);
        assert_eq!(got.iter().sum::<i128>(), 544);
    }

    #[test]
    fn domains() {
        assert!(bound_new(3).is_err());
        assert!(lemma7(2).is_err());
        assert!(recursion_step(96, 4).is_err());
        assert_eq!(recursion_step(96, 5), Ok(544));
        assert_eq!(recursion_step(544, 6), Ok(2688));
        assert!(comparison_table(3, 6).is_err());
        assert!(comparison_table(6, 5).is_err());
        assert!(comparison_table(4, 21).is_err());
    }

    #[test]
    fn table_formats() {
        let rows = comparison_table(4, 8).unwrap();
        let csv = to_csv(&rows);
        assert_eq!(csv.lines().count(), 6);
        assert!(csv
            .lines()
            .nth(1)
            .unwrap()
            .starts_with("4,272,208,96,96,32,64,0,0,96,0"));
        assert_eq!(rows[2].gap, 192);
        let md = to_markdown(&rows);
        assert_eq!(md.lines().count(), 7);
    }
}
