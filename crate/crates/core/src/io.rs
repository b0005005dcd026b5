//! Field file format shared by every tool in the crate.
//!
//! A field file is CSV with one header line
//!
//! ```text
//! # axes: x(start,step,count) y(start,step,count) u(start,step,count)
//! ```
//!
//! followed by `k,l,m,value` rows. Reals carry 17 significant digits so
//! that every f64 round-trips exactly. Volume files use the same layout
//! with the third axis holding z.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::grid::{Axis, SphericalMeanField, VolumeField};

/// Format a real with 17 significant digits.
pub fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

fn axis_spec(a: &Axis) -> String {
    format!("({},{},{})", fmt_real(a.start()), fmt_real(a.step()), a.count())
}

fn render(x: &Axis, y: &Axis, u: &Axis, values: &[f64]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# axes: x{} y{} u{}",
        axis_spec(x),
        axis_spec(y),
        axis_spec(u)
    );
    for k in 0..x.count() {
        for l in 0..y.count() {
            for m in 0..u.count() {
                let v = values[(k * y.count() + l) * u.count() + m];
                let _ = writeln!(out, "{k},{l},{m},{}", fmt_real(v));
            }
        }
    }
    out
}

fn parse_axis(part: &str, name: &str) -> Result<Axis> {
    let inner = part
        .strip_prefix(name)
        .and_then(|rest| rest.strip_prefix('('))
        .and_then(|rest| rest.strip_suffix(')'))
        .ok_or_else(|| Error::parse(format!("malformed axis spec `{part}`, want `{name}(start,step,count)`")))?;
    let fields: Vec<&str> = inner.split(',').collect();
    if fields.len() != 3 {
        return Err(Error::parse(format!("axis spec `{part}` needs 3 fields")));
    }
    let start: f64 = fields[0]
        .trim()
        .parse()
        .map_err(|_| Error::parse(format!("bad axis start `{}`", fields[0])))?;
    let step: f64 = fields[1]
        .trim()
        .parse()
        .map_err(|_| Error::parse(format!("bad axis step `{}`", fields[1])))?;
    let count: usize = fields[2]
        .trim()
        .parse()
        .map_err(|_| Error::parse(format!("bad axis count `{}`", fields[2])))?;
    Axis::new(start, step, count)
}

fn parse(text: &str) -> Result<(Axis, Axis, Axis, Vec<f64>)> {
    let mut lines = text.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((_, line)) if line.trim().is_empty() => continue,
            Some((_, line)) => break line,
            None => return Err(Error::parse("empty field file")),
        }
    };
    let spec = header
        .trim()
        .strip_prefix("# axes:")
        .ok_or_else(|| Error::parse("first line must be `# axes: x(...) y(...) u(...)`"))?;
    let parts: Vec<&str> = spec.split_whitespace().collect();
    if parts.len() != 3 {
        return Err(Error::parse(format!(
            "header lists {} axes, want 3",
            parts.len()
        )));
    }
    let x = parse_axis(parts[0], "x")?;
    let y = parse_axis(parts[1], "y")?;
    let u = parse_axis(parts[2], "u")?;

    let len = x.count() * y.count() * u.count();
    let mut values = vec![0.0_f64; len];
    let mut seen = vec![false; len];
    for (lineno, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 4 {
            return Err(Error::parse(format!(
                "line {}: want `k,l,m,value`, got `{line}`",
                lineno + 1
            )));
        }
        let k: usize = cols[0]
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("line {}: bad index `{}`", lineno + 1, cols[0])))?;
        let l: usize = cols[1]
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("line {}: bad index `{}`", lineno + 1, cols[1])))?;
        let m: usize = cols[2]
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("line {}: bad index `{}`", lineno + 1, cols[2])))?;
        let v: f64 = cols[3]
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("line {}: bad value `{}`", lineno + 1, cols[3])))?;
        if k >= x.count() || l >= y.count() || m >= u.count() {
            return Err(Error::parse(format!(
                "line {}: index ({k},{l},{m}) outside grid",
                lineno + 1
            )));
        }
        let idx = (k * y.count() + l) * u.count() + m;
        if seen[idx] {
            return Err(Error::parse(format!(
                "line {}: duplicate sample ({k},{l},{m})",
                lineno + 1
            )));
        }
        seen[idx] = true;
        values[idx] = v;
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        let m = missing % u.count();
        let l = (missing / u.count()) % y.count();
        let k = missing / (u.count() * y.count());
        return Err(Error::parse(format!("missing sample ({k},{l},{m})")));
    }
    Ok((x, y, u, values))
}

pub fn field_to_string(field: &SphericalMeanField) -> String {
    render(field.x_axis(), field.y_axis(), field.u_axis(), field.values())
}

pub fn field_from_str(text: &str) -> Result<SphericalMeanField> {
    let (x, y, u, values) = parse(text)?;
    SphericalMeanField::from_values(x, y, u, values)
}

pub fn save_field(field: &SphericalMeanField, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, field_to_string(field))?;
    Ok(())
}

pub fn load_field(path: impl AsRef<Path>) -> Result<SphericalMeanField> {
    field_from_str(&fs::read_to_string(path)?)
}

pub fn volume_to_string(vol: &VolumeField) -> String {
    render(vol.x_axis(), vol.y_axis(), vol.z_axis(), vol.values())
}

pub fn volume_from_str(text: &str) -> Result<VolumeField> {
    let (x, y, z, values) = parse(text)?;
    VolumeField::from_values(x, y, z, values)
}

pub fn save_volume(vol: &VolumeField, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, volume_to_string(vol))?;
    Ok(())
}

pub fn load_volume(path: impl AsRef<Path>) -> Result<VolumeField> {
    volume_from_str(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_field(vals: &[f64]) -> SphericalMeanField {
        let x = Axis::new(0.0, 0.5, 2).unwrap();
        let y = Axis::new(-1.0, 1.0, 2).unwrap();
        let u = Axis::new(0.0, 0.25, 2).unwrap();
        SphericalMeanField::from_values(x, y, u, vals.to_vec()).unwrap()
    }

    #[test]
    fn header_layout() {
        let f = small_field(&[0.0; 8]);
        let text = field_to_string(&f);
        let first = text.lines().next().unwrap();
        assert_eq!(
            first,
            "# axes: x(0.0000000000000000e0,5.0000000000000000e-1,2) \
             y(-1.0000000000000000e0,1.0000000000000000e0,2) \
             u(0.0000000000000000e0,2.5000000000000000e-1,2)"
        );
        assert!(text.lines().nth(1).unwrap().starts_with("0,0,0,"));
    }

    #[test]
    fn duplicate_row_rejected() {
        let f = small_field(&[1.0; 8]);
        let mut text = field_to_string(&f);
        text.push_str("0,0,0,2.0\n");
        let err = field_from_str(&text).unwrap_err();
        assert!(err.to_string().contains("duplicate"));
    }

    #[test]
    fn missing_row_rejected() {
        let f = small_field(&[1.0; 8]);
        let text = field_to_string(&f);
        let truncated: String = text
            .lines()
            .take(text.lines().count() - 1)
            .map(|l| format!("{l}\n"))
            .collect();
        let err = field_from_str(&truncated).unwrap_err();
        assert!(err.to_string().contains("missing sample"));
    }

    #[test]
    fn bad_header_rejected() {
        assert!(field_from_str("nonsense\n").is_err());
        assert!(field_from_str("# axes: x(0,1,2) y(0,1,2)\n").is_err());
        assert!(field_from_str("").is_err());
    }

    #[test]
    fn volume_load_checks_z_start() {
        let x = Axis::new(0.0, 1.0, 1).unwrap();
        let z = Axis::new(1.0, 1.0, 1).unwrap();
        let vol = VolumeField::from_values(x, x, z, vec![3.5]).unwrap();
        let text = volume_to_string(&vol);
        assert_eq!(volume_from_str(&text).unwrap(), vol);
        // same data with third axis starting at 0 is a valid field, not a volume
        let zeroed = text.replace("u(1.0000000000000000e0", "u(0.0000000000000000e0");
        assert!(volume_from_str(&zeroed).is_err());
        assert!(field_from_str(&zeroed).is_ok());
    }

    proptest! {
        #[test]
        fn round_trip_is_bit_exact(vals in proptest::collection::vec(-1e12_f64..1e12, 8)) {
            let f = small_field(&vals);
            let back = field_from_str(&field_to_string(&f)).unwrap();
            for (a, b) in f.values().iter().zip(back.values()) {
                prop_assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }
}
