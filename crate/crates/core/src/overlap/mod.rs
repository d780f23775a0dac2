//! Overlap of the collective far-field modes into which the ensemble scatters
//! light, with and without a stored Rydberg excitation.

pub mod bessel;
pub mod collective;
pub mod montecarlo;
pub mod pair;
pub mod polarization;
pub mod powerlaw;
pub mod thermal;

pub use collective::{collective_overlap, mode_loss_input, CollectiveOverlap};
pub use montecarlo::{monte_carlo, AtomCloud, MonteCarloConfig, MonteCarloStats};
pub use pair::{pair_overlap, OverlapMatrix};
pub use polarization::Polarization;
pub use powerlaw::{power_law_study, PowerLawFit, PowerLawStudy};
pub use thermal::{second_order_expansion, thermal_average_s12, SecondOrder, ThermalAverage};

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}
