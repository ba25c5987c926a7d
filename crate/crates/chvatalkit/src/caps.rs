//! Desk-scale capacity limits.
//!
//! Every potentially explosive routine checks one of these limits before
//! running and reports a [`crate::Error::Capacity`] instead of hanging. The
//! defaults can be raised (or lowered) through the `CHVATALKIT_CAPS`
//! environment variable, e.g. `CHVATALKIT_CAPS=enum_points=1000000,tdi_rows=8`.

#[derive(Debug, Clone)]
pub struct Caps {
    /// Maximum number of lattice points enumerated by the oracle.
    pub enum_points: u128,
    /// Maximum row count for the power-set TDI construction.
    pub tdi_rows: u128,
    /// Maximum number of inequalities kept during symbolic closure rounds.
    pub closure_inequalities: u128,
    /// Maximum number of distinct coefficient rows during closure rounds.
    pub closure_rows: u128,
    /// Maximum number of disjuncts a Williams-Hooker projection may expand to.
    pub wh_disjuncts: u128,
    /// Maximum integer columns handed to the IP tester pipeline.
    pub ip_columns: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enum_points: 10_000_000,
            tdi_rows: 6,
            closure_inequalities: 20_000,
            closure_rows: 64,
            wh_disjuncts: 100_000,
            ip_columns: 3,
        }
    }
}

impl Caps {
    /// Defaults overridden by the `CHVATALKIT_CAPS` environment variable.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Ok(spec) = std::env::var("CHVATALKIT_CAPS") {
            caps.apply_spec(&spec);
        }
        caps
    }

    fn apply_spec(&mut self, spec: &str) {
        for item in spec.split(',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let Some((key, value)) = item.split_once('=') else {
                continue;
            };
            let Ok(value) = value.trim().parse::<u128>() else {
                continue;
            };
            match key.trim() {
                "enum_points" => self.enum_points = value,
                "tdi_rows" => self.tdi_rows = value,
                "closure_inequalities" => self.closure_inequalities = value,
                "closure_rows" => self.closure_rows = value,
                "wh_disjuncts" => self.wh_disjuncts = value,
                "ip_columns" => self.ip_columns = value,
                _ => {}
            }
        }
    }

    pub fn check(&self, what: &'static str, requested: u128, limit: u128) -> crate::Result<()> {
        if requested > limit {
            Err(crate::Error::Capacity {
                what,
                requested,
                limit,
            })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_overrides_defaults() {
        let mut caps = Caps::default();
        caps.apply_spec("enum_points=42, tdi_rows=9,bogus=1,notanumber=x");
        assert_eq!(caps.enum_points, 42);
        assert_eq!(caps.tdi_rows, 9);
        assert_eq!(caps.wh_disjuncts, 100_000);
    }
}
