use rayon::prelude::*;

use hsuper_core::{catalog, cohomology, format_scalar, CatalogId, Family, Scalar};

use crate::error::CliError;

pub const DIM_COLUMNS: [&str; 14] = [
    "dimC1e", "dimC1o", "dimZ1e", "dimZ1o", "dimH1e", "dimH1o", "dimC2e", "dimC2o", "dimZ2e", "dimZ2o", "dimB2e",
    "dimB2o", "dimH2e", "dimH2o",
];

pub struct SweepResult {
    pub csv: String,
    pub skipped: Vec<String>,
}

/// Cartesian product of the axes in the family's parameter order (last
/// parameter varies fastest). Points are evaluated in parallel and emitted in
/// grid order.
pub fn run(family: Family, axes: &[(String, Vec<Scalar>)]) -> Result<SweepResult, CliError> {
    let names = family.param_names();
    for (k, _) in axes {
        if !names.contains(&k.as_str()) {
            return Err(CliError::Usage(format!("family {family} has no parameter '{k}'")));
        }
    }
    let mut ordered = Vec::with_capacity(names.len());
    for &n in names {
        let values = axes
            .iter()
            .rev()
            .find(|(k, _)| k == n)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| CliError::Usage(format!("--grid is missing parameter '{n}'")))?;
        ordered.push(values);
    }
    let mut points: Vec<Vec<Scalar>> = vec![vec![]];
    for values in &ordered {
        points = points
            .into_iter()
            .flat_map(|p| {
                values.iter().map(move |v| {
                    let mut p = p.clone();
                    p.push(v.clone());
                    p
                })
            })
            .collect();
    }
    let rows: Vec<Result<String, String>> = points
        .par_iter()
        .map(|p| {
            let pairs: Vec<(&str, Scalar)> = names.iter().copied().zip(p.iter().cloned()).collect();
            let cid = CatalogId::new(family, &pairs);
            let g = catalog(&cid).map_err(|e| format!("{cid}: {e}"))?;
            let h1 = cohomology(&g, 1).map_err(|e| format!("{cid}: {e}"))?;
            let h2 = cohomology(&g, 2).map_err(|e| format!("{cid}: {e}"))?;
            let [e1, o1] = h1.dims;
            let [e2, o2] = h2.dims;
            let dims = [
                e1.cochains,
                o1.cochains,
                e1.cocycles,
                o1.cocycles,
                e1.cohomology,
                o1.cohomology,
                e2.cochains,
                o2.cochains,
                e2.cocycles,
                o2.cocycles,
                e2.coboundaries,
                o2.coboundaries,
                e2.cohomology,
                o2.cohomology,
            ];
            let mut fields: Vec<String> = vec![family.name().to_string()];
            fields.extend(p.iter().map(format_scalar));
            fields.extend(dims.iter().map(usize::to_string));
            fields.push((e2.cohomology == 0).to_string());
            Ok(fields.join(","))
        })
        .collect();
    let mut header: Vec<&str> = vec!["family"];
    header.extend(names);
    header.extend(DIM_COLUMNS);
    header.push("trivial_deformations");
    let mut csv = header.join(",") + "\n";
    let mut skipped = vec![];
    for r in rows {
        match r {
            Ok(line) => csv += &(line + "\n"),
            Err(reason) => skipped.push(reason),
        }
    }
    Ok(SweepResult { csv, skipped })
}
