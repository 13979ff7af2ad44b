//! Preset sweeps reproducing the three bound-comparison plots.

use crate::basis::parse_bases;
use crate::sweep::{Extra, SweepConfig, run, write_outputs};
use crate::CliError;
use qbounds::StateSpec64;
use qbounds::bounds::Bound;
use std::path::Path;

const STEPS: usize = 101;

pub fn write(name: &str, out_dir: &Path, svg: bool) -> Result<(), CliError> {
    let (file, template, param, bases, bounds, extras): (_, StateSpec64, _, _, &[Bound], &[Extra]) =
        match name {
            // Entropy sum of the Pauli triple on Werner states: improved
            // weighted-overlap bound next to its ordering-maximized rival.
            "fig1" => (
                "fig1.csv",
                StateSpec64::Werner { eta: 0.0 },
                "eta",
                "X,Y,Z",
                &[Bound::LiuImproved, Bound::Zhang],
                &[],
            ),
            // Coherence sum of the (X, Z) pair on the X-state family: the
            // corrected bound against its base.
            "fig2" => (
                "fig2.csv",
                StateSpec64::XState { p: 0.0 },
                "p",
                "X,Z",
                &[Bound::CohAdabi, Bound::CohBerta],
                &[],
            ),
            // Coherence sum of the Pauli triple on Werner states; the extra
            // column carries the correction-free ordering-maximized variant.
            "fig3" => (
                "fig3.csv",
                StateSpec64::Werner { eta: 0.0 },
                "eta",
                "X,Y,Z",
                &[Bound::CohMulti],
                &[Extra::CohZhang],
            ),
            _ => {
                return Err(CliError::Args(format!(
                    "unknown figure {name:?}; valid names: fig1, fig2, fig3"
                )));
            }
        };

    let config = SweepConfig {
        template,
        param: param.to_string(),
        from: 0.0,
        to: 1.0,
        steps: STEPS,
        bases: parse_bases(bases)?,
        bounds: bounds.to_vec(),
        extras: extras.to_vec(),
    };
    let data = run(&config)?;
    write_outputs(&data, &out_dir.join(file), svg)
}
