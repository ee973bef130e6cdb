//! DAC transfer characteristics for the thermometer, binary, and segmented
//! architectures, plus the DNL/INL non-linearity profile.

use serde::Serialize;
use std::fmt;

use crate::error::{Error, Result};
use crate::mismatch::{DacSpec, UnitCurrentVector};

/// How the unit currents are grouped and switched.
///
/// `Segmented { segmentation: 0 }` coincides with `Binary` and
/// `Segmented { segmentation: N }` with `Thermometer`; both equalities are
/// bit-exact because the three paths share their summation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Architecture {
    Thermometer,
    Binary,
    Segmented { segmentation: u32 },
}

impl Architecture {
    pub fn validate(&self, bits: u32) -> Result<()> {
        if let Architecture::Segmented { segmentation } = self {
            if *segmentation > bits {
                return Err(Error::InvalidSegmentation {
                    segmentation: *segmentation,
                    bits,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Architecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Architecture::Thermometer => write!(f, "thermometer"),
            Architecture::Binary => write!(f, "binary"),
            Architecture::Segmented { segmentation } => {
                write!(f, "segmented(S={segmentation})")
            }
        }
    }
}

/// The binary switching matrix: row `k` is the binary expansion of `k`,
/// least-significant bit first. Rows are computed on demand so large
/// resolutions cost no memory.
///
/// Bits are 0-based in code; bit `b` drives the block holding units
/// `2^b ..= 2^(b+1) - 1` in the 1-based numbering of the block structure.
#[derive(Debug, Clone, Copy)]
pub struct SwitchingMatrix {
    bits: u32,
}

impl SwitchingMatrix {
    pub fn new(bits: u32) -> Result<Self> {
        if !(1..=30).contains(&bits) {
            return Err(Error::ResolutionOutOfRange(bits));
        }
        Ok(Self { bits })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Number of rows, `n + 1 = 2^N` (codes 0..=n).
    pub fn code_count(&self) -> usize {
        1usize << self.bits
    }

    /// Entry for `code` at 0-based `bit`.
    pub fn entry(&self, code: usize, bit: u32) -> bool {
        debug_assert!(code < self.code_count() && bit < self.bits);
        (code >> bit) & 1 == 1
    }

    /// Row `code` as 0/1 values, least-significant bit first.
    pub fn row(&self, code: usize) -> Vec<u8> {
        (0..self.bits).map(|b| ((code >> b) & 1) as u8).collect()
    }
}

/// Convenience constructor mirroring the matrix definition.
pub fn switching_matrix(bits: u32) -> Result<SwitchingMatrix> {
    SwitchingMatrix::new(bits)
}

/// Output currents `I_out_k` for `k = 0..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferCurve {
    pub outputs: Vec<f64>,
    pub architecture: Architecture,
}

impl TransferCurve {
    /// Codes per curve, `n + 1`.
    pub fn len(&self) -> usize {
        self.outputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outputs.is_empty()
    }
}

/// DNL/INL profile in LSB units. `dnl` has `n` entries (codes 1..=n),
/// `inl` has `n + 1` entries with `inl[0] = 0` by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct NonlinearityProfile {
    pub dnl: Vec<f64>,
    pub inl: Vec<f64>,
    pub inl_max: f64,
}

fn resolution_for_unit_count(n: usize) -> Result<u32> {
    if n == 0 {
        return Err(Error::EmptyCurrents);
    }
    let codes = n + 1;
    if !codes.is_power_of_two() {
        return Err(Error::InvalidUnitCount(n));
    }
    let bits = codes.trailing_zeros();
    if bits > 30 {
        return Err(Error::InvalidUnitCount(n));
    }
    Ok(bits)
}

/// Sums of the dyadic unit blocks; block `m` (0-based) holds units
/// `2^m - 1 ..= 2^(m+1) - 2` in 0-based indexing.
fn block_sums(currents: &[f64], bits: u32) -> Vec<f64> {
    (0..bits)
        .map(|m| {
            let lo = (1usize << m) - 1;
            let hi = (1usize << (m + 1)) - 1;
            currents[lo..hi].iter().sum()
        })
        .collect()
}

fn binary_code_output(blocks: &[f64], code: usize) -> f64 {
    let mut acc = 0.0;
    for (m, block) in blocks.iter().enumerate() {
        if (code >> m) & 1 == 1 {
            acc += block;
        }
    }
    acc
}

fn thermometer_outputs(currents: &[f64]) -> Vec<f64> {
    let mut outputs = Vec::with_capacity(currents.len() + 1);
    let mut acc = 0.0;
    outputs.push(acc);
    for &c in currents {
        acc += c;
        outputs.push(acc);
    }
    outputs
}

fn binary_outputs(currents: &[f64], bits: u32) -> Vec<f64> {
    let blocks = block_sums(currents, bits);
    (0..currents.len() + 1)
        .map(|code| binary_code_output(&blocks, code))
        .collect()
}

/// Segmented output: the low `N - S` bits of the code drive the binary blocks
/// over units `1 ..= 2^(N-S) - 1`, while each completed MSB group `m >= 1`
/// adds the thermometer sum of units `m 2^(N-S) ..= (m+1) 2^(N-S) - 1`
/// (1-based unit numbering).
fn segmented_outputs(currents: &[f64], bits: u32, segmentation: u32) -> Vec<f64> {
    let binary_bits = bits - segmentation;
    let group = 1usize << binary_bits;
    let blocks = block_sums(currents, binary_bits);
    let low_outputs: Vec<f64> = (0..group)
        .map(|code| binary_code_output(&blocks, code))
        .collect();

    let group_count = (1usize << segmentation) - 1;
    let mut group_prefix = Vec::with_capacity(group_count + 1);
    let mut acc = 0.0;
    group_prefix.push(acc);
    for m in 1..=group_count {
        let lo = m * group - 1;
        let hi = (m + 1) * group - 1;
        let sum: f64 = currents[lo..hi].iter().sum();
        acc += sum;
        group_prefix.push(acc);
    }

    (0..currents.len() + 1)
        .map(|code| low_outputs[code % group] + group_prefix[code / group])
        .collect()
}

/// Build the transfer curve of `architecture` for one chip.
pub fn transfer(architecture: Architecture, units: &UnitCurrentVector) -> Result<TransferCurve> {
    let bits = resolution_for_unit_count(units.len())?;
    architecture.validate(bits)?;
    let currents = units.currents();
    let outputs = match architecture {
        Architecture::Thermometer => thermometer_outputs(currents),
        Architecture::Binary => binary_outputs(currents, bits),
        Architecture::Segmented { segmentation } => {
            segmented_outputs(currents, bits, segmentation)
        }
    };
    Ok(TransferCurve {
        outputs,
        architecture,
    })
}

/// DNL/INL in LSB units:
/// `DNL_k = (I_out_k - I_out_{k-1} - i_lsb) / i_lsb`,
/// `INL_k = (I_out_k - k i_lsb) / i_lsb`.
pub fn nonlinearity(curve: &TransferCurve, i_lsb: f64) -> Result<NonlinearityProfile> {
    if !i_lsb.is_finite() || i_lsb <= 0.0 {
        return Err(Error::NonPositiveLsb(i_lsb));
    }
    let outputs = &curve.outputs;
    let n = outputs.len() - 1;
    let mut dnl = Vec::with_capacity(n);
    for k in 1..=n {
        dnl.push((outputs[k] - outputs[k - 1] - i_lsb) / i_lsb);
    }
    let mut inl = Vec::with_capacity(n + 1);
    let mut inl_max = 0.0f64;
    for (k, &out) in outputs.iter().enumerate() {
        let v = (out - k as f64 * i_lsb) / i_lsb;
        inl_max = inl_max.max(v.abs());
        inl.push(v);
    }
    Ok(NonlinearityProfile { dnl, inl, inl_max })
}

/// The scale-free statistic `(i_lsb / (sigma_u sqrt(n))) * INL_max`.
///
/// Undefined for `sigma_u = 0`; callers must branch on the ideal case.
pub fn normalized_inl_max(
    profile: &NonlinearityProfile,
    spec: &DacSpec,
    i_lsb: f64,
) -> Result<f64> {
    if spec.sigma_u <= 0.0 {
        return Err(Error::ZeroSigma);
    }
    if !i_lsb.is_finite() || i_lsb <= 0.0 {
        return Err(Error::NonPositiveLsb(i_lsb));
    }
    let n = spec.unit_count() as f64;
    Ok(i_lsb / (spec.sigma_u * n.sqrt()) * profile.inl_max)
}
