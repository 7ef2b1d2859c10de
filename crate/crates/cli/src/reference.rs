//! Published results embedded as static data: the classical-suite comparison
//! (`table2`), the CEC-2019 averages of seven algorithms (`table6`) and their
//! ranking scores (`table8`).
//!
//! The text below is kept exactly as printed; parsing happens on access.

use std::fmt;

use anyhow::{anyhow, bail, Context, Result};

const TABLE2: &str = "\
func,cddo-hs.avg,cddo-hs.std,cddo.avg,cddo.std,hs.avg,hs.std
F1,5.087E-33,1.057E-32,1.328E-57,8.635E-73,2.850E+02,9.021E+01
F2,4.921E-17,4.033E-17,2.453E-32,4.385E-32,3.005E+00,5.355E-01
F3,1.249E-29,2.238E-29,2.736E-39,5.168E-40,1.754E+04,5.815E+03
F4,1.986E-16,1.920E-16,7.815E-33,2.784E-48,2.214E+01,1.787E+00
F5,2.298E+00,6.935E+00,2.419E+01,1.023E+01,2.040E+04,8.759E+03
F6,5.589E-04,1.439E-04,7.074E-01,6.787E-01,2.834E+02,1.023E+02
F7,2.901E-03,1.497E-03,1.361E-03,1.123E-03,2.042E-01,5.145E-02
F8,-1.178E+04,3.098E+03,-1.244E+04,5.537E+02,-1.240E+04,7.638E+01
F9,2.222E+00,6.070E+00,1.060E+01,1.724E+01,1.968E+01,3.683E+00
F10,6.809E-15,1.703E-15,7.875E-15,4.118E-15,5.095E+00,5.702E-01
F11,0.000E+00,0.000E+00,5.688E-01,1.532E+00,3.513E+00,8.925E-01
F12,1.161E-06,3.112E-07,3.167E-01,9.0046E-01,7.060E+00,2.147E+00
F13,1.555E-05,5.271E-06,4.128E-01,3.745E-01,1.622E+02,1.596E+02
F14,5.372E+00,4.241E+00,9.981E-01,3.686E-04,9.980E-01,3.448E-11
F15,6.249E-04,2.502E-04,1.181E-03,1.022E-03,6.699E-03,9.110E-03
F16,-1.032E+00,3.777E-10,-1.029E+00,3.247E-03,-1.032E+00,1.889E-07
F17,3.979E-01,2.675E-09,4.231E-01,4.814E-02,3.979E-01,6.467E-06
F18,5.700E+00,8.238E+00,3.117E+00,1.579E-01,3.900E+00,4.930E+00
F19,-3.863E+00,1.554E-10,-3.728E+00,1.075E-01,-3.863E+00,4.714E-08
";

const TABLE6: &str = "\
func,CDDO-HS,ChOA,BOA,FOX,GWO-WOA,WOA-BAT,DCSO
CEC01,5.317E+04,4.240E+09,5.890E+04,2.580E+04,4.760E+04,7.600E+07,3.863E+04
CEC02,1.835E+01,1.841E+01,1.890E+01,1.834E+01,1.834E+01,1.750E+01,1.834E+01
CEC03,1.370E+01,1.370E+01,1.370E+01,1.370E+01,1.370E+01,1.270E+01,1.370E+01
CEC04,5.746E+01,5.933E+03,2.090E+04,1.060E+03,2.537E+02,2.120E+03,7.266E+01
CEC05,2.170E+00,4.209E+00,6.180E+00,5.315E+00,2.426E+00,2.440E+00,2.493E+00
CEC06,1.130E+01,1.215E+01,1.180E+01,5.033E+00,1.137E+01,1.110E+01,8.864E+00
CEC07,5.440E+01,1.007E+03,1.040E+03,3.068E+02,5.876E+02,6.060E+02,3.291E+02
CEC08,3.150E+00,6.785E+00,6.340E+00,5.462E+00,5.587E+00,5.720E+00,5.160E+00
CEC09,3.484E+00,4.493E+02,2.270E+03,3.796E+00,5.671E+00,2.280E+01,6.104E+00
CEC10,1.554E+01,2.150E+01,2.150E+01,2.098E+01,2.156E+01,2.120E+01,2.113E+01
";

const TABLE8: &str = "\
func,CDDO-HS,ChOA,BOA,FOX,GWO-WOA,WOA-BAT,DCSO
score,2.5,5.8,6,3.1,3.6,3.8,2.8
";

/// Names accepted by [`ReferenceTable::by_name`].
pub const NAMES: [&str; 3] = ["table2", "table6", "table8"];

/// The raw embedded text of a table.
pub fn source(name: &str) -> Option<&'static str> {
    match name {
        "table2" => Some(TABLE2),
        "table6" => Some(TABLE6),
        "table8" => Some(TABLE8),
        _ => None,
    }
}

/// A function × algorithm grid of published averages (and deviations, when
/// the source has them).
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceTable {
    pub name: String,
    pub algorithms: Vec<String>,
    pub functions: Vec<String>,
    /// `avg[f][a]`
    pub avg: Vec<Vec<f64>>,
    pub std: Option<Vec<Vec<f64>>>,
}

impl ReferenceTable {
    pub fn by_name(name: &str) -> Result<Self> {
        let key = name.trim().to_ascii_lowercase();
        let text = source(&key).ok_or_else(|| {
            anyhow!(
                "unknown reference table `{name}` (expected one of {})",
                NAMES.join(", ")
            )
        })?;
        if key == "table2" {
            parse_avg_std(&key, text)
        } else {
            parse_wide(&key, text.as_bytes())
        }
    }

    pub fn table2() -> Self {
        Self::by_name("table2").expect("embedded table2 parses")
    }

    pub fn table6() -> Self {
        Self::by_name("table6").expect("embedded table6 parses")
    }

    pub fn table8() -> Self {
        Self::by_name("table8").expect("embedded table8 parses")
    }

    pub fn avg(&self, func: &str, algo: &str) -> Option<f64> {
        let f = self.functions.iter().position(|x| x == func)?;
        let a = self.algorithms.iter().position(|x| x == algo)?;
        Some(self.avg[f][a])
    }

    pub fn std(&self, func: &str, algo: &str) -> Option<f64> {
        let f = self.functions.iter().position(|x| x == func)?;
        let a = self.algorithms.iter().position(|x| x == algo)?;
        self.std.as_ref().map(|s| s[f][a])
    }

    /// Rows in the shape `rank_algorithms` takes.
    pub fn rank_rows(&self) -> Vec<(String, Vec<(String, f64)>)> {
        self.functions
            .iter()
            .zip(&self.avg)
            .map(|(f, row)| {
                (
                    f.clone(),
                    self.algorithms.iter().cloned().zip(row.iter().copied()).collect(),
                )
            })
            .collect()
    }
}

/// Reads a wide table: header `func,<algo>,<algo>,...`, one row per function.
pub fn parse_wide<R: std::io::Read>(name: &str, input: R) -> Result<ReferenceTable> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let header = reader.headers().context("reading header")?.clone();
    if header.len() < 2 {
        bail!("{name}: expected a `func` column followed by at least one algorithm column");
    }
    let algorithms: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let mut functions = Vec::new();
    let mut avg = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.with_context(|| format!("{name}: row {}", i + 2))?;
        functions.push(record[0].to_string());
        let row = record
            .iter()
            .skip(1)
            .map(|v| {
                v.parse::<f64>()
                    .with_context(|| format!("{name}: row {}: `{v}` is not a number", i + 2))
            })
            .collect::<Result<Vec<_>>>()?;
        avg.push(row);
    }
    Ok(ReferenceTable {
        name: name.to_string(),
        algorithms,
        functions,
        avg,
        std: None,
    })
}

fn parse_avg_std(name: &str, text: &str) -> Result<ReferenceTable> {
    let wide = parse_wide(name, text.as_bytes())?;
    let mut algorithms = Vec::new();
    for pair in wide.algorithms.chunks(2) {
        match pair {
            [a, s] if a.strip_suffix(".avg").is_some() && a.strip_suffix(".avg") == s.strip_suffix(".std") => {
                algorithms.push(a.trim_end_matches(".avg").to_string())
            }
            _ => bail!("{name}: expected <algo>.avg,<algo>.std column pairs"),
        }
    }
    let split = |offset: usize| -> Vec<Vec<f64>> {
        wide.avg
            .iter()
            .map(|row| row.iter().skip(offset).step_by(2).copied().collect())
            .collect()
    };
    Ok(ReferenceTable {
        name: name.to_string(),
        algorithms,
        functions: wide.functions.clone(),
        avg: split(0),
        std: Some(split(1)),
    })
}

impl fmt::Display for ReferenceTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "func")?;
        for a in &self.algorithms {
            write!(f, ",{a}")?;
        }
        writeln!(f)?;
        for (func, row) in self.functions.iter().zip(&self.avg) {
            write!(f, "{func}")?;
            for v in row {
                write!(f, ",{v:.3e}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
