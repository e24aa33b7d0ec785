//! Setup files compiled into the binary. Regenerate them with
//! `scripts/gen_presets.py`.

pub const NAMES: [&str; 7] =
    ["sl2r_horocycle", "sl2r_GN", "sl2r_hyperbolic", "so3_sphere", "heisenberg", "sl2c_real_GN", "sl3r_horocycle"];

pub fn get(name: &str) -> Option<&'static str> {
    Some(match name {
        "sl2r_horocycle" => include_str!("../presets/sl2r_horocycle.json"),
        "sl2r_GN" => include_str!("../presets/sl2r_GN.json"),
        "sl2r_hyperbolic" => include_str!("../presets/sl2r_hyperbolic.json"),
        "so3_sphere" => include_str!("../presets/so3_sphere.json"),
        "heisenberg" => include_str!("../presets/heisenberg.json"),
        "sl2c_real_GN" => include_str!("../presets/sl2c_real_GN.json"),
        "sl3r_horocycle" => include_str!("../presets/sl3r_horocycle.json"),
        _ => return None,
    })
}
