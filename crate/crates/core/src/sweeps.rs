//! Parameter sweeps producing tabular datasets: energy spectra, per-orbit
//! terms, dependence on the ion position and on the polarization direction.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{IonPosition, WedgeGeometry};
use crate::spectrum::{energy_conversion, CrossSectionModel, Polarization, SpectrumSettings};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    PhotonEnergy,
    Rho,
    Beta,
    PolarizationGrid,
}

impl SweepVariable {
    pub fn name(&self) -> &'static str {
        match self {
            SweepVariable::PhotonEnergy => "photon_energy",
            SweepVariable::Rho => "rho",
            SweepVariable::Beta => "beta",
            SweepVariable::PolarizationGrid => "polarization_grid",
        }
    }
}

/// `steps` evenly spaced values from `start` to `stop`, both included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepGrid {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl SweepGrid {
    pub fn new(variable: SweepVariable, start: f64, stop: f64, steps: usize) -> Result<Self> {
        if !start.is_finite() || !stop.is_finite() || !(start < stop) {
            return Err(Error::InvalidParameter(format!(
                "{} grid needs finite start < stop, got [{start}, {stop}]",
                variable.name()
            )));
        }
        if steps < 2 {
            return Err(Error::InvalidParameter(format!(
                "{} grid needs at least 2 steps, got {steps}",
                variable.name()
            )));
        }
        Ok(SweepGrid {
            variable,
            start,
            stop,
            steps,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| self.start + (self.stop - self.start) * (i as f64 / last))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Column {
    pub name: String,
    pub unit: String,
}

impl Column {
    pub fn new(name: &str, unit: &str) -> Self {
        Column {
            name: name.to_string(),
            unit: unit.to_string(),
        }
    }

    /// Name with its unit suffix, e.g. `sigma0_au`.
    pub fn header(&self) -> String {
        format!("{}_{}", self.name, self.unit)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<f64>>,
    /// Ordered `key=value` pairs describing every input.
    pub provenance: Vec<(String, String)>,
}

impl Dataset {
    pub fn new(columns: Vec<Column>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let d = Dataset {
            columns,
            rows,
            provenance: Vec::new(),
        };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != self.columns.len() {
                return Err(Error::InvalidParameter(format!(
                    "row {i} has {} values for {} columns",
                    row.len(),
                    self.columns.len()
                )));
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite {
                    column: self.columns[j].header(),
                    row: i,
                });
            }
        }
        Ok(())
    }

    pub fn headers(&self) -> Vec<String> {
        self.columns.iter().map(Column::header).collect()
    }

    /// Values of the column whose header or bare name is `name`.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self
            .columns
            .iter()
            .position(|c| c.name == name || c.header() == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    pub fn push_provenance(&mut self, key: impl Into<String>, value: impl ToString) {
        self.provenance.push((key.into(), value.to_string()));
    }
}

fn describe_setup(d: &mut Dataset, wedge: &WedgeGeometry, settings: &SpectrumSettings) {
    d.push_provenance("alpha_rad", wedge.opening_angle());
    if let Some(n) = wedge.n_integer() {
        d.push_provenance("N", n);
    }
    d.push_provenance("delta_rad", settings.reflection.delta);
    d.push_provenance("beta_guard_rad", settings.beta_guard);
    d.push_provenance(
        "orbit_source",
        match settings.orbit_source {
            crate::spectrum::OrbitSource::Analytic => "analytic",
            crate::spectrum::OrbitSource::Numeric(_) => "numeric",
        },
    );
    let c = &settings.constants;
    d.push_provenance("B", c.normalization);
    d.push_provenance("E_b_hartree", c.binding_energy);
    d.push_provenance("c_au", c.speed_of_light);
    d.push_provenance("eV_per_hartree", c.ev_per_hartree);
}

fn describe_pol(d: &mut Dataset, pol: &Polarization) {
    d.push_provenance("theta_L_rad", pol.theta());
    d.push_provenance("phi_L_rad", pol.phi());
}

fn describe_ion(d: &mut Dataset, ion: &IonPosition) {
    d.push_provenance("rho_a0", ion.rho);
    d.push_provenance("beta_rad", ion.beta);
}

fn describe_grid(d: &mut Dataset, grid: &SweepGrid) {
    d.push_provenance("sweep", grid.variable.name());
    d.push_provenance("start", grid.start);
    d.push_provenance("stop", grid.stop);
    d.push_provenance("steps", grid.steps);
}

fn expect_variable(grid: &SweepGrid, variable: SweepVariable) -> Result<()> {
    if grid.variable != variable {
        return Err(Error::InvalidParameter(format!(
            "expected a {} grid, got {}",
            variable.name(),
            grid.variable.name()
        )));
    }
    Ok(())
}

fn check_energy_grid(grid: &SweepGrid, settings: &SpectrumSettings) -> Result<()> {
    expect_variable(grid, SweepVariable::PhotonEnergy)?;
    energy_conversion(grid.start, &settings.constants).map(|_| ())
}

/// `sigma0`, `sigma_osc` and `sigma` over a photon-energy grid.
pub fn energy_sweep(
    grid: &SweepGrid,
    wedge: &WedgeGeometry,
    ion: &IonPosition,
    settings: &SpectrumSettings,
) -> Result<Dataset> {
    check_energy_grid(grid, settings)?;
    let model = CrossSectionModel::new(*wedge, *ion, *settings)?;
    let rows = grid
        .values()
        .par_iter()
        .map(|&e| {
            let p = model.evaluate(e)?;
            Ok(vec![e, p.sigma0, p.sigma_osc, p.sigma])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut d = Dataset::new(
        vec![
            Column::new("E_photon", "eV"),
            Column::new("sigma0", "au"),
            Column::new("sigma_osc", "au"),
            Column::new("sigma", "au"),
        ],
        rows,
    )?;
    describe_grid(&mut d, grid);
    describe_setup(&mut d, wedge, settings);
    describe_ion(&mut d, ion);
    describe_pol(&mut d, &settings.polarization);
    Ok(d)
}

/// Total `sigma_osc` and the term of every closed orbit, in catalog order.
pub fn orbit_decomposition(
    grid: &SweepGrid,
    wedge: &WedgeGeometry,
    ion: &IonPosition,
    settings: &SpectrumSettings,
) -> Result<Dataset> {
    check_energy_grid(grid, settings)?;
    let model = CrossSectionModel::new(*wedge, *ion, *settings)?;
    let rows = grid
        .values()
        .par_iter()
        .map(|&e| {
            let (p, terms) = model.decompose(e)?;
            let mut row = Vec::with_capacity(terms.len() + 2);
            row.push(e);
            row.push(p.sigma_osc);
            row.extend(terms);
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut columns = vec![
        Column::new("E_photon", "eV"),
        Column::new("sigma_osc_total", "au"),
    ];
    for o in model.orbits() {
        columns.push(Column::new(&format!("term_{}", o.index), "au"));
    }
    let mut d = Dataset::new(columns, rows)?;
    describe_grid(&mut d, grid);
    describe_setup(&mut d, wedge, settings);
    describe_ion(&mut d, ion);
    describe_pol(&mut d, &settings.polarization);
    for o in model.orbits() {
        d.push_provenance(
            format!("orbit_{}", o.index),
            format!(
                "phi_out={} phi_ret={} m={} L={}",
                o.phi_out, o.phi_ret, o.reflections, o.length
            ),
        );
    }
    Ok(d)
}

/// Cross section at a fixed photon energy while the ion moves along `rho`
/// (keeping `ion.beta`) or along `beta` (keeping `ion.rho`).
pub fn position_sweep(
    grid: &SweepGrid,
    photon_ev: f64,
    wedge: &WedgeGeometry,
    ion: &IonPosition,
    settings: &SpectrumSettings,
) -> Result<Dataset> {
    energy_conversion(photon_ev, &settings.constants)?;
    let (name, unit) = match grid.variable {
        SweepVariable::Rho => ("rho", "a0"),
        SweepVariable::Beta => ("beta", "rad"),
        _ => {
            return Err(Error::InvalidParameter(format!(
                "position sweeps run over rho or beta, not {}",
                grid.variable.name()
            )))
        }
    };
    let place = |v: f64| match grid.variable {
        SweepVariable::Rho => IonPosition::new(v, ion.beta),
        _ => IonPosition::new(ion.rho, v),
    };
    // both ends first so a bad range fails before any work
    for v in [grid.start, grid.stop] {
        place(v)?.check_guard(wedge, settings.beta_guard)?;
    }
    let rows = grid
        .values()
        .par_iter()
        .map(|&v| {
            let p = CrossSectionModel::new(*wedge, place(v)?, *settings)?.evaluate(photon_ev)?;
            Ok(vec![v, p.sigma0, p.sigma_osc, p.sigma])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut d = Dataset::new(
        vec![
            Column::new(name, unit),
            Column::new("sigma0", "au"),
            Column::new("sigma_osc", "au"),
            Column::new("sigma", "au"),
        ],
        rows,
    )?;
    describe_grid(&mut d, grid);
    d.push_provenance("E_photon_eV", photon_ev);
    describe_setup(&mut d, wedge, settings);
    match grid.variable {
        SweepVariable::Rho => d.push_provenance("beta_rad", ion.beta),
        _ => d.push_provenance("rho_a0", ion.rho),
    }
    describe_pol(&mut d, &settings.polarization);
    Ok(d)
}

/// `sigma_osc` over a `theta_L x phi_L` grid of polarization directions,
/// `theta_L` varying slowest.
pub fn polarization_map(
    theta: &SweepGrid,
    phi: &SweepGrid,
    photon_ev: f64,
    wedge: &WedgeGeometry,
    ion: &IonPosition,
    settings: &SpectrumSettings,
) -> Result<Dataset> {
    expect_variable(theta, SweepVariable::PolarizationGrid)?;
    expect_variable(phi, SweepVariable::PolarizationGrid)?;
    energy_conversion(photon_ev, &settings.constants)?;
    let model = CrossSectionModel::new(*wedge, *ion, *settings)?;
    let pairs: Vec<(f64, f64)> = theta
        .values()
        .into_iter()
        .flat_map(|t| phi.values().into_iter().map(move |p| (t, p)))
        .collect();
    let rows = pairs
        .par_iter()
        .map(|&(t, p)| {
            let pol = Polarization::new(t, p)?;
            let point = crate::spectrum::sigma_from_orbits(
                photon_ev,
                model.orbits(),
                &pol,
                &settings.reflection,
                &settings.constants,
            )?;
            Ok(vec![t, p, point.sigma_osc])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut d = Dataset::new(
        vec![
            Column::new("theta_L", "rad"),
            Column::new("phi_L", "rad"),
            Column::new("sigma_osc", "au"),
        ],
        rows,
    )?;
    d.push_provenance("theta_start", theta.start);
    d.push_provenance("theta_stop", theta.stop);
    d.push_provenance("theta_steps", theta.steps);
    d.push_provenance("phi_start", phi.start);
    d.push_provenance("phi_stop", phi.stop);
    d.push_provenance("phi_steps", phi.steps);
    d.push_provenance("E_photon_eV", photon_ev);
    describe_setup(&mut d, wedge, settings);
    describe_ion(&mut d, ion);
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn setup(pol: Polarization) -> (WedgeGeometry, IonPosition, SpectrumSettings) {
        let settings = SpectrumSettings {
            polarization: pol,
            ..Default::default()
        };
        (
            WedgeGeometry::from_n(5).unwrap(),
            IonPosition::new(200.0, PI / 15.0).unwrap(),
            settings,
        )
    }

    #[test]
    fn grid_contract() {
        let g = SweepGrid::new(SweepVariable::PhotonEnergy, 0.76, 1.4, 2).unwrap();
        assert_eq!(g.values(), vec![0.76, 1.4]);
        assert!(SweepGrid::new(SweepVariable::Rho, 2.0, 1.0, 10).is_err());
        assert!(SweepGrid::new(SweepVariable::Rho, 1.0, 2.0, 1).is_err());
        let g = SweepGrid::new(SweepVariable::PolarizationGrid, 0.0, PI, 37).unwrap();
        assert_eq!(g.values()[18], PI / 2.0);
        assert_eq!(*g.values().last().unwrap(), PI);
    }

    #[test]
    fn energy_sweep_shapes() {
        let (w, ion, s) = setup(Polarization::x());
        let g = SweepGrid::new(SweepVariable::PhotonEnergy, 0.76, 1.4, 2).unwrap();
        let d = energy_sweep(&g, &w, &ion, &s).unwrap();
        assert_eq!(d.rows.len(), 2);
        assert_eq!(
            d.headers(),
            ["E_photon_eV", "sigma0_au", "sigma_osc_au", "sigma_au"]
        );
        for r in &d.rows {
            assert_eq!(r[3], r[1] + r[2]);
        }
    }

    #[test]
    fn energy_sweep_visible_oscillation() {
        let (w, ion, s) = setup(Polarization::x());
        let g = SweepGrid::new(SweepVariable::PhotonEnergy, 0.76, 1.4, 2048).unwrap();
        let d = energy_sweep(&g, &w, &ion, &s).unwrap();
        let ratio = d.rows.iter().map(|r| r[2].abs() / r[1]).fold(0.0, f64::max);
        assert!(ratio > 0.01, "{ratio}");
    }

    #[test]
    fn z_polarization_has_no_oscillation() {
        let (w, ion, s) = setup(Polarization::z());
        let g = SweepGrid::new(SweepVariable::PhotonEnergy, 0.76, 1.4, 64).unwrap();
        let d = energy_sweep(&g, &w, &ion, &s).unwrap();
        assert!(d.column("sigma_osc").unwrap().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn sweep_below_threshold_fails() {
        let (w, ion, s) = setup(Polarization::x());
        let g = SweepGrid::new(SweepVariable::PhotonEnergy, 0.754, 1.4, 8).unwrap();
        assert!(matches!(
            energy_sweep(&g, &w, &ion, &s),
            Err(Error::BelowThreshold { .. })
        ));
    }

    #[test]
    fn decomposition_sums_and_pairs() {
        let (w, ion, s) = setup(Polarization::x());
        let g = SweepGrid::new(SweepVariable::PhotonEnergy, 0.76, 1.4, 256).unwrap();
        let d = orbit_decomposition(&g, &w, &ion, &s).unwrap();
        assert_eq!(d.columns.len(), 11);
        for r in &d.rows {
            let sum: f64 = r[2..].iter().sum();
            assert!((sum - r[1]).abs() <= 1e-14 * r[1].abs().max(f64::MIN_POSITIVE));
        }
        assert_eq!(d.column("term_2"), d.column("term_8"));
    }

    #[test]
    fn y_polarization_drops_perpendicular_orbit() {
        let (w, ion, s) = setup(Polarization::y());
        let g = SweepGrid::new(SweepVariable::PhotonEnergy, 0.76, 1.4, 128).unwrap();
        let d = orbit_decomposition(&g, &w, &ion, &s).unwrap();
        assert!(d.column("term_9").unwrap().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn beta_sweep_respects_guard() {
        let (w, ion, s) = setup(Polarization::x());
        let g = SweepGrid::new(SweepVariable::Beta, 0.0, PI / 5.0, 8).unwrap();
        assert!(matches!(
            position_sweep(&g, 1.0, &w, &ion, &s),
            Err(Error::BetaGuard { .. })
        ));
    }

    #[test]
    fn polarization_map_zero_row_and_symmetry() {
        let (w, ion, s) = setup(Polarization::x());
        let t = SweepGrid::new(SweepVariable::PolarizationGrid, 0.0, PI, 9).unwrap();
        let p = SweepGrid::new(SweepVariable::PolarizationGrid, 0.0, 2.0 * PI, 9).unwrap();
        let d = polarization_map(&t, &p, 1.0, &w, &ion, &s).unwrap();
        assert_eq!(d.rows.len(), 81);
        assert!(d.rows[..9].iter().all(|r| r[2] == 0.0));
        // theta -> pi - theta with phi -> phi + pi
        for i in 0..9 {
            for j in 0..9 {
                let a = d.rows[i * 9 + j][2];
                let b = d.rows[(8 - i) * 9 + (j + 4) % 8][2];
                assert!((a - b).abs() <= 1e-12 * a.abs() + 1e-15, "{i} {j} {a} {b}");
            }
        }
    }
}
