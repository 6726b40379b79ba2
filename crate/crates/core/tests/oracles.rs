mod common;

use common::Riemann;

#[test]
fn riemann_oracle_is_consistent() {
    // Stoker problem: the star state satisfies both jump conditions
    let r = Riemann {
        hl: 1.0,
        ul: 0.0,
        hr: 0.5,
        ur: 0.0,
        g: 9.81,
    };
    let (hs, us) = r.star();
    let s = r.right_shock_speed().unwrap();
    let mass = s * (hs - r.hr) - (hs * us - r.hr * r.ur);
    let mom = s * (hs * us) - (hs * us * us + 0.5 * r.g * (hs * hs - r.hr * r.hr));
    assert!(mass.abs() < 1e-12 && mom.abs() < 1e-12);
    // the left rarefaction carries the Riemann invariant u + 2c
    assert!((us + 2.0 * (r.g * hs).sqrt() - 2.0 * (r.g).sqrt()).abs() < 1e-12);
    // Ritter solution at the dam site: h = 4 hl / 9
    let dry = Riemann {
        hl: 1.0,
        ul: 0.0,
        hr: 0.0,
        ur: 0.0,
        g: 9.81,
    };
    assert!((dry.sample(0.0).0 - 4.0 / 9.0).abs() < 1e-14);
}
