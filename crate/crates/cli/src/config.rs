use edgerec::dataset::{read_run_config, RunConfig, RunPaths};
use edgerec::Result;

use crate::args::ConfigFlags;

/// Defaults, then the `--config` file, then explicit flags.
pub fn merged_config(flags: &ConfigFlags, paths: RunPaths) -> Result<RunConfig> {
    let mut cfg = match &flags.config {
        Some(p) => read_run_config(p)?,
        None => RunConfig::default(),
    };
    macro_rules! set {
        ($($flag:ident => $($field:ident).+),* $(,)?) => {
            $(if let Some(v) = &flags.$flag { cfg.$($field).+ = v.clone(); })*
        };
    }
    set! {
        seed => seed,
        resize => resize,
        c => score.c,
        color_kernel => score.color_kernel,
        structure_kernel => score.structure_kernel,
        pyramid_levels => score.pyramid_levels,
        gms_constant => score.gms_constant,
        function => score.function,
        heatmap_norm => heatmap,
        fpr_limit => fpr_limit,
        p_texture => corruption.p_texture,
        p_cutpaste => corruption.p_cutpaste,
        beta_range => corruption.beta_range,
        perlin_exponents => corruption.perlin_scale_exponents,
        perlin_threshold => corruption.perlin_threshold,
        cutpaste_area => corruption.cutpaste_area_range,
        cutpaste_aspect => corruption.cutpaste_aspect_range,
    }
    if flags.rotate.is_some() {
        cfg.rotate = flags.rotate;
    }
    cfg.paths = paths;
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file_override_defaults() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.json");
        std::fs::write(&p, r#"{"seed": 3, "score": {"c": 0.5, "color_kernel": 7}}"#).unwrap();
        let flags = ConfigFlags {
            config: Some(p),
            c: Some(0.25),
            ..Default::default()
        };
        let cfg = merged_config(&flags, RunPaths::default()).unwrap();
        assert_eq!(cfg.seed, 3);
        assert_eq!(cfg.score.c, 0.25);
        assert_eq!(cfg.score.color_kernel, 7);
        assert_eq!(cfg.score.structure_kernel, 21);
    }

    #[test]
    fn invalid_values_are_config_errors() {
        let flags = ConfigFlags {
            color_kernel: Some(4),
            ..Default::default()
        };
        let e = merged_config(&flags, RunPaths::default()).unwrap_err();
        assert_eq!(crate::exit_code(&e), 2);
    }
}
