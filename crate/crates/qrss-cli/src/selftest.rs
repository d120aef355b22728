//! Quick built-in consistency checks: constants, residue tables, and the
//! exhaustive pixel-cipher round trip.

use anyhow::{ensure, Result};
use qrss::{decrypt_root, encrypt_pixel, is_qr, ModulusPair, ResidueClassifier};

pub fn run() -> Result<()> {
    let mp = ModulusPair::new();
    ensure!(mp.n == 59989 && mp.crt_a == 5020 && mp.crt_b == 54970, "CRT constants");
    ensure!((mp.crt_a + mp.crt_b) % mp.n == 1, "idempotent sum");
    println!("ok: CRT constants (a=5020, b=54970)");

    let count_p = (1..mp.p).filter(|&x| is_qr(x, mp.p).unwrap()).count();
    let count_q = (1..mp.q).filter(|&x| is_qr(x, mp.q).unwrap()).count();
    ensure!(count_p == 119 && count_q == 125, "QR set cardinalities");
    println!("ok: residue set sizes (119 mod 239, 125 mod 251)");

    let cls = ResidueClassifier::new(mp);
    ensure!(
        (1..=4).map(|t| cls.case_parameter(t)).collect::<Vec<_>>() == [1, 2, 7, 14],
        "case parameters"
    );
    println!("ok: case parameters r1..r4 = 1, 2, 7, 14");

    for v in 0u8..=238 {
        let enc = encrypt_pixel(v, &cls, &mp);
        ensure!(decrypt_root(enc.root, &cls, &mp)? == v, "round trip failed at {v}");
    }
    println!("ok: pixel cipher round trip on [0,238]");

    println!("selftest passed");
    Ok(())
}
