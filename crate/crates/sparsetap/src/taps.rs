//! Tap vectors: the per-timestep activations and gradients captured on the
//! wires between the model's layers.

use crate::{Error, Result};

/// The seven signals captured per timestep.
///
/// `He`/`H1`/`H2` are the activations leaving the embedding and the two LSTM
/// layers (post-dropout, i.e. the vectors the next layer actually consumed).
/// `HeBar`/`H1Bar`/`H2Bar` are the corresponding gradient messages flowing
/// back down, and `XBar` is the gradient at the logits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tap {
    He,
    H1,
    H2,
    HeBar,
    H1Bar,
    H2Bar,
    XBar,
}

impl Tap {
    /// All taps in the canonical order used by accumulators and logs.
    pub const ALL: [Tap; 7] = [
        Tap::He,
        Tap::H1,
        Tap::H2,
        Tap::HeBar,
        Tap::H1Bar,
        Tap::H2Bar,
        Tap::XBar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Tap::He => "he",
            Tap::H1 => "h1",
            Tap::H2 => "h2",
            Tap::HeBar => "he_bar",
            Tap::H1Bar => "h1_bar",
            Tap::H2Bar => "h2_bar",
            Tap::XBar => "x_bar",
        }
    }

    pub fn from_name(name: &str) -> Result<Tap> {
        Tap::ALL
            .into_iter()
            .find(|t| t.name() == name)
            .ok_or_else(|| Error::Analysis(format!("unknown tap `{name}`")))
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_gradient(self) -> bool {
        matches!(self, Tap::HeBar | Tap::H1Bar | Tap::H2Bar | Tap::XBar)
    }
}

/// How gradient taps are measured.
///
/// `Boundary` records the gradient message crossing each layer boundary on
/// the purely feed-forward path at one timestep (the top one is exactly
/// `W_dec^T x_bar`). `Total` records the full BPTT gradient of the loss with
/// respect to each layer's output, including recurrent contributions from
/// later timesteps in the window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GradientMode {
    #[default]
    Boundary,
    Total,
}

impl GradientMode {
    pub fn name(self) -> &'static str {
        match self {
            GradientMode::Boundary => "boundary",
            GradientMode::Total => "total",
        }
    }

    pub fn from_name(name: &str) -> Result<GradientMode> {
        match name {
            "boundary" => Ok(GradientMode::Boundary),
            "total" => Ok(GradientMode::Total),
            other => Err(Error::Config(format!("unknown gradient mode `{other}`"))),
        }
    }
}

/// One timestep's bundle of tap vectors for one sequence in the batch.
#[derive(Debug, Clone)]
pub struct TapRecord {
    /// Timestep index within the BPTT window.
    pub step: usize,
    /// Input word id (x_{t-1}).
    pub input: u32,
    /// Target word id (x_t).
    pub target: u32,
    pub mode: GradientMode,
    pub he: Vec<f64>,
    pub h1: Vec<f64>,
    pub h2: Vec<f64>,
    pub he_bar: Vec<f64>,
    pub h1_bar: Vec<f64>,
    pub h2_bar: Vec<f64>,
    pub x_bar: Vec<f64>,
}

impl TapRecord {
    pub fn vector(&self, tap: Tap) -> &[f64] {
        match tap {
            Tap::He => &self.he,
            Tap::H1 => &self.h1,
            Tap::H2 => &self.h2,
            Tap::HeBar => &self.he_bar,
            Tap::H1Bar => &self.h1_bar,
            Tap::H2Bar => &self.h2_bar,
            Tap::XBar => &self.x_bar,
        }
    }

    pub fn is_finite(&self) -> bool {
        Tap::ALL
            .into_iter()
            .all(|t| self.vector(t).iter().all(|v| v.is_finite()))
    }
}

/// Consumer of tap records produced by the training loop.
///
/// Records arrive in timestep order from a single producer; `epoch_end` is
/// the barrier after which an epoch's statistics may be read.
pub trait TapSink {
    fn record(&mut self, epoch: u32, rec: &TapRecord);
    fn epoch_end(&mut self, _epoch: u32) {}
}
