//! Parameter sweeps over `(p', q)` and their CSV rendering.

use std::fmt::Write as _;
use std::str::FromStr;

use qbridge_core::strategy::{classical_value_closed_form, quantum_value_over, BiasPair};

use crate::CliError;

/// A fixed value or an inclusive grid `min:max:steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Axis {
    Fixed(f64),
    Range { min: f64, max: f64, steps: usize },
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        match *self {
            Axis::Fixed(v) => vec![v],
            Axis::Range { min, max, steps } => {
                let last = (steps - 1) as f64;
                (0..steps)
                    .map(|i| if i + 1 == steps { max } else { min + (max - min) * i as f64 / last })
                    .collect()
            }
        }
    }

    pub fn is_range(&self) -> bool {
        matches!(self, Axis::Range { .. })
    }
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("`{t}` is not a number"));
        let in_unit = |v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(v)
            } else {
                Err(format!("{v} is outside [0, 1]"))
            }
        };
        match parts.as_slice() {
            [v] => Ok(Axis::Fixed(in_unit(num(v)?)?)),
            [lo, hi, n] => {
                let min = in_unit(num(lo)?)?;
                let max = in_unit(num(hi)?)?;
                let steps: usize = n.trim().parse().map_err(|_| format!("`{n}` is not a step count"))?;
                if steps < 2 {
                    return Err("a range needs at least 2 steps".into());
                }
                if min >= max {
                    return Err(format!("range min {min} must be below max {max}"));
                }
                Ok(Axis::Range { min, max, steps })
            }
            _ => Err(format!("`{s}` is neither a value nor min:max:steps")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub p_prime: Axis,
    pub q: Axis,
}

/// Fixed 7-decimal rendering with negative zero folded to zero.
pub fn fmt7(x: f64) -> String {
    let s = format!("{x:.7}");
    if s.starts_with('-') && s[1..].bytes().all(|c| c == b'0' || c == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// One point of a sweep with both hand bits at probability `p'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub p_prime: f64,
    pub p: f64,
    pub q: f64,
    pub i_classical: f64,
    pub i_quantum: f64,
    pub in_region: bool,
}

pub fn sweep_point(p_prime: f64, q: f64) -> Result<SweepPoint, CliError> {
    let bias = BiasPair::from_symmetric_prime(p_prime, q)?;
    let i_classical = classical_value_closed_form(q, p_prime, p_prime)?;
    let quantum = quantum_value_over(bias, i_classical);
    Ok(SweepPoint {
        p_prime,
        p: bias.p,
        q,
        i_classical,
        i_quantum: quantum.value,
        in_region: quantum.in_region,
    })
}

pub fn curves_csv(spec: &SweepSpec) -> Result<String, CliError> {
    let Axis::Fixed(p_prime) = spec.p_prime else {
        return Err(CliError::Usage("curves needs a fixed --p-prime".into()));
    };
    if !spec.q.is_range() {
        return Err(CliError::Usage("curves needs a ranged --q (min:max:steps)".into()));
    }
    let mut out = String::from("q,i_classical,i_quantum,in_region\n");
    for q in spec.q.values() {
        let pt = sweep_point(p_prime, q)?;
        writeln!(
            out,
            "{},{},{},{}",
            fmt7(pt.q),
            fmt7(pt.i_classical),
            fmt7(pt.i_quantum),
            pt.in_region
        )
        .unwrap();
    }
    Ok(out)
}

pub fn surface_csv(spec: &SweepSpec) -> Result<String, CliError> {
    if !spec.p_prime.is_range() || !spec.q.is_range() {
        return Err(CliError::Usage("surface needs ranged --p-prime and --q (min:max:steps)".into()));
    }
    let mut out = String::from("p_prime,p,q,i_classical,i_quantum,in_region\n");
    for p_prime in spec.p_prime.values() {
        for q in spec.q.values() {
            let pt = sweep_point(p_prime, q)?;
            writeln!(
                out,
                "{},{},{},{},{},{}",
                fmt7(pt.p_prime),
                fmt7(pt.p),
                fmt7(pt.q),
                fmt7(pt.i_classical),
                fmt7(pt.i_quantum),
                pt.in_region
            )
            .unwrap();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_parsing() {
        assert_eq!("0.5".parse::<Axis>(), Ok(Axis::Fixed(0.5)));
        assert_eq!(
            "0:1:101".parse::<Axis>(),
            Ok(Axis::Range {
                min: 0.0,
                max: 1.0,
                steps: 101
            })
        );
        for bad in ["0:1:1", "1:0:5", "0:2:5", "x", "0:1", "-0.1", "0:1:two"] {
            assert!(bad.parse::<Axis>().is_err(), "{bad}");
        }
    }

    #[test]
    fn grid_hits_endpoints() {
        let v = "0:1:101".parse::<Axis>().unwrap().values();
        assert_eq!(v.len(), 101);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[50], 0.5);
        assert_eq!(v[75], 0.75);
        assert_eq!(v[100], 1.0);
    }

    #[test]
    fn negative_zero_is_folded() {
        assert_eq!(fmt7(-0.0), "0.0000000");
        assert_eq!(fmt7(-1e-12), "0.0000000");
        assert_eq!(fmt7(-0.25), "-0.2500000");
        assert_eq!(fmt7(0.8952847), "0.8952847");
    }

    #[test]
    fn curve_rows() {
        let spec = SweepSpec {
            p_prime: Axis::Fixed(0.5),
            q: "0:1:101".parse().unwrap(),
        };
        let csv = curves_csv(&spec).unwrap();
        assert_eq!(csv.lines().count(), 102);
        assert!(csv.contains("\n0.5000000,0.7500000,0.8535534,true\n"));
        assert!(csv.contains("\n0.7500000,0.8750000,0.8952847,true\n"));
        assert!(csv.ends_with("1.0000000,1.0000000,1.0000000,false\n"));
    }

    #[test]
    fn surface_cells() {
        let spec = SweepSpec {
            p_prime: "0:1:51".parse().unwrap(),
            q: "0:1:51".parse().unwrap(),
        };
        let csv = surface_csv(&spec).unwrap();
        assert_eq!(csv.lines().count(), 1 + 2601);
        let pt = sweep_point(0.9, 0.5).unwrap();
        assert!((pt.p - 0.82).abs() < 1e-12);
    }

    #[test]
    fn wrong_axis_kinds() {
        let fixed = SweepSpec {
            p_prime: Axis::Fixed(0.5),
            q: Axis::Fixed(0.5),
        };
        assert!(matches!(curves_csv(&fixed), Err(CliError::Usage(_))));
        assert!(matches!(surface_csv(&fixed), Err(CliError::Usage(_))));
    }
}
