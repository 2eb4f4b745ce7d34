//! Dataset ingestion: newline/comma-separated decimal numerals, parsed into
//! exact rationals and kept sorted.

use sha2::{Digest, Sha256};

use crate::core::scalar::Scalar;
use crate::error::{Error, Result};

/// Sorted multiset of exact data values with cached central-moment sums.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dataset {
    values: Vec<Scalar>,
    mean: Scalar,
    /// Σ (x - x̄)²
    m2_sum: Scalar,
    /// Σ (x - x̄)³
    m3_sum: Scalar,
}

impl Dataset {
    pub fn new(mut values: Vec<Scalar>) -> Result<Dataset> {
        if values.is_empty() {
            return Err(Error::EmptyInput);
        }
        values.sort();
        let n = Scalar::from_int(values.len() as i64);
        let mut sum = Scalar::zero();
        for v in &values {
            sum = sum + v;
        }
        let mean = sum / &n;
        let mut m2_sum = Scalar::zero();
        let mut m3_sum = Scalar::zero();
        for v in &values {
            let dev = v - &mean;
            let dev2 = &dev * &dev;
            m3_sum = m3_sum + &dev2 * &dev;
            m2_sum = m2_sum + dev2;
        }
        Ok(Dataset {
            values,
            mean,
            m2_sum,
            m3_sum,
        })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn x_min(&self) -> &Scalar {
        self.values.first().expect("nonempty dataset")
    }

    pub fn x_max(&self) -> &Scalar {
        self.values.last().expect("nonempty dataset")
    }

    pub fn range(&self) -> Scalar {
        self.x_max() - self.x_min()
    }

    pub fn mean(&self) -> &Scalar {
        &self.mean
    }

    /// Σ (x - x̄)².
    pub fn m2_sum(&self) -> &Scalar {
        &self.m2_sum
    }

    /// Σ (x - x̄)³.
    pub fn m3_sum(&self) -> &Scalar {
        &self.m3_sum
    }

    /// Hex SHA-256 over the sorted exact values, one `p/q` per line.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        for v in &self.values {
            hasher.update(v.ratio_string().as_bytes());
            hasher.update(b"\n");
        }
        let out = hasher.finalize();
        out.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Parses UTF-8 text with one decimal numeral per line or several separated
/// by commas. Lines starting with `#` are comments. Reports the line and
/// column of the first bad token.
pub fn parse_dataset(text: &str) -> Result<Dataset> {
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim_start().starts_with('#') {
            continue;
        }
        let mut col = 0usize;
        for raw in line.split(',') {
            let token = raw.trim();
            // empty slots (trailing commas, blank lines) are tolerated
            if !token.is_empty() {
                let token_col = col + raw.len() - raw.trim_start().len() + 1;
                let value = Scalar::parse_decimal(token).map_err(|_| Error::ParseToken {
                    line: lineno + 1,
                    column: token_col,
                    token: token.to_string(),
                })?;
                values.push(value);
            }
            col += raw.len() + 1;
        }
    }
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    Dataset::new(values)
}
