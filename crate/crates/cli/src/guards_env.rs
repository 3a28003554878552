//! `CREPANTO_GUARD`: either `unlimited` or comma-separated `name=value`
//! overrides of the default limits, e.g. `group_order=50000,dual_box=10000000`.

use crepanto_core::Guards;

pub const VAR: &str = "CREPANTO_GUARD";

pub fn parse(value: &str) -> Result<Guards, String> {
    let value = value.trim();
    if value.is_empty() {
        return Ok(Guards::default());
    }
    if value == "unlimited" {
        return Ok(Guards::unlimited());
    }
    let mut g = Guards::default();
    for item in value.split(',') {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| format!("expected name=value in {VAR}, got {item:?}"))?;
        let value: u64 = value
            .trim()
            .parse()
            .map_err(|_| format!("{VAR}: {name} needs a nonnegative integer, got {value:?}"))?;
        let slot = match name.trim() {
            "group_order" => &mut g.group_order,
            "enumeration_points" => &mut g.enumeration_points,
            "dual_box" => &mut g.dual_box,
            "polytope_dim" => &mut g.polytope_dim,
            "mixed_volume_dim" => &mut g.mixed_volume_dim,
            "collection_rays" => &mut g.collection_rays,
            other => return Err(format!("{VAR}: unknown guard {other:?}")),
        };
        *slot = value;
    }
    Ok(g)
}

pub fn from_env() -> Result<Guards, String> {
    match std::env::var(VAR) {
        Ok(s) => parse(&s),
        Err(_) => Ok(Guards::default()),
    }
}
