//! CSV renderings of the crate's tables. Every table starts with a header row
//! and prints reals with 12 significant digits, so output is byte-stable.

use std::fmt::Write;

use crate::error::Result;
use crate::poly::{GramMatrix, Polynomial};
use crate::scalar::Real;
use crate::spectral::{SpectrumResult, VerificationReport};
use crate::systems::{PotentialFn, SystemParams, Variant, Wavefunction};

/// `{:.11e}` of the value widened to `f64`.
pub fn csv_real<T: Real>(v: T) -> String {
    format!("{:.11e}", v.as_f64())
}

fn row(out: &mut String, cells: impl IntoIterator<Item = String>) {
    let cells: Vec<String> = cells.into_iter().collect();
    writeln!(out, "{}", cells.join(",")).expect("writing to a String");
}

/// `i,j,value`, indices are member degrees.
pub fn gram_csv<T: Real>(g: &GramMatrix<T>) -> String {
    let mut out = String::from("i,j,value\n");
    for i in 0..g.size {
        for j in 0..g.size {
            let (di, dj) = (i + g.first_degree, j + g.first_degree);
            row(&mut out, [di.to_string(), dj.to_string(), csv_real(g.get(i, j))]);
        }
    }
    out
}

/// `x,value`.
pub fn polynomial_csv<T: Real>(p: &Polynomial<T>, xs: &[T]) -> String {
    let mut out = String::from("x,value\n");
    for &x in xs {
        row(&mut out, [csv_real(x), csv_real(p.eval(x))]);
    }
    out
}

/// `x,V_original,V_e,V_extended` followed by one `psi_n` column per wavefunction.
///
/// `V_e` is the rational term actually added, so the last potential column is
/// the sum of the two before it.
pub fn potential_csv<T: Real>(system: &SystemParams<T>, xs: &[T], waves: &[Wavefunction<T>]) -> Result<String> {
    let v = PotentialFn::new(*system, Variant::Original)?;
    let mut out = String::from("x,V_original,V_e,V_extended");
    for w in waves {
        write!(out, ",psi_{}", w.n).expect("writing to a String");
    }
    out.push('\n');
    for &x in xs {
        let o = v.eval(x)?;
        let s = v.shift(x);
        let mut cells = vec![csv_real(x), csv_real(o), csv_real(s), csv_real(o + s)];
        for w in waves {
            cells.push(csv_real(w.eval(x)?));
        }
        row(&mut out, cells);
    }
    Ok(out)
}

/// `level,E_original,E_extended,abs_diff`.
pub fn spectrum_csv<T: Real>(report: &VerificationReport<T>) -> String {
    let mut out = String::from("level,E_original,E_extended,abs_diff\n");
    for (n, ((o, e), d)) in report
        .original
        .iter()
        .zip(&report.extended)
        .zip(&report.spectral_diffs)
        .enumerate()
    {
        row(&mut out, [n.to_string(), csv_real(*o), csv_real(*e), csv_real(*d)]);
    }
    out
}

/// `x,psi_0,psi_1,...` on the result's grid.
pub fn eigenfunctions_csv<T: Real>(res: &SpectrumResult<T>) -> String {
    let mut out = String::from("x");
    for k in 0..res.eigenfunctions.len() {
        write!(out, ",psi_{k}").expect("writing to a String");
    }
    out.push('\n');
    for (i, x) in res.grid.points().into_iter().enumerate() {
        let cells = std::iter::once(csv_real(x)).chain(res.eigenfunctions.iter().map(|f| csv_real(f[i])));
        row(&mut out, cells);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::WaveKind;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(csv_real(1.5f64), "1.50000000000e0");
        assert_eq!(csv_real(-1.0f64 / 3.0), "-3.33333333333e-1");
        assert_eq!(csv_real(0.25f32), "2.50000000000e-1");
    }

    #[test]
    fn polynomial_table() {
        let p = Polynomial::constant(1.0f64);
        let t = polynomial_csv(&p, &[0.0, 1.0, 2.0]);
        assert_eq!(t.lines().count(), 4);
        assert!(t.lines().skip(1).all(|l| l.ends_with(",1.00000000000e0")));
    }

    #[test]
    fn potential_table_columns() {
        let sys: SystemParams<f64> = SystemParams::HartmannRadial { l: 0, omega: 1.0 };
        let psi = Wavefunction::new(sys, WaveKind::Exceptional, 1).unwrap();
        let t = potential_csv(&sys, &[0.5, 1.0], &[psi]).unwrap();
        let mut lines = t.lines();
        assert_eq!(lines.next(), Some("x,V_original,V_e,V_extended,psi_1"));
        assert_eq!(lines.count(), 2);
        assert!(potential_csv(&sys, &[-1.0], &[]).is_err());
    }
}
