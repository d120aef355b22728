//! The single-pixel walkthrough for p = 150 with every intermediate value
//! pinned; any deviation is an error, so this doubles as an executable
//! self-check.

use anyhow::{ensure, Result};
use qrss::{
    decrypt_root, encrypt_pixel, four_square_roots, poly_eval, reconstruct_secret, ModulusPair,
    ResidueClassifier, SharePoint, SharingPolynomial,
};

pub fn run() -> Result<()> {
    let mp = ModulusPair::new();
    let cls = ResidueClassifier::new(mp);
    let pixel = 150u8;
    println!("pixel p = {pixel}, modulus N = {} (= {} * {})", mp.n, mp.p, mp.q);

    let case = cls.classify_case(pixel as u64)?;
    ensure!(case == 2, "expected case 2, got {case}");
    let r = cls.case_parameter(case);
    ensure!(r == 2, "expected r = 2, got {r}");
    println!("case {case}, r = {r}");

    let product = pixel as u64 * r % mp.n;
    ensure!(product == 300, "expected product 300, got {product}");
    println!("product p * r mod N = {product}");

    let roots = four_square_roots(product, &mp)?;
    ensure!(roots == [42677, 52954, 7035, 17312], "unexpected roots {roots:?}");
    println!("four square roots = {roots:?}");

    let enc = encrypt_pixel(pixel, &cls, &mp);
    ensure!(enc.root == 52954 && enc.case_t == 2, "unexpected encryption {enc:?}");
    println!("M = {} (root index {})", enc.root, enc.case_t);

    // Shamir sharing with the walkthrough polynomial f(x) = 52954 + 173x + 167x^2
    let poly = SharingPolynomial { secret: enc.root, coeffs: vec![173, 167] };
    let shares: Vec<SharePoint> =
        (1..=5).map(|x| SharePoint { x, y: poly_eval(&poly, x) }).collect();
    let ys: Vec<u64> = shares.iter().map(|s| s.y).collect();
    ensure!(ys == [53294, 53968, 54976, 56318, 57994], "unexpected shares {ys:?}");
    println!("shares of f(x) = 52954 + 173x + 167x^2 at x = 1..5: {ys:?}");

    let subset = [shares[0], shares[2], shares[4]];
    let recovered_root = reconstruct_secret(&subset, 3)?;
    ensure!(recovered_root == 52954, "reconstruction gave {recovered_root}");
    let squared = recovered_root * recovered_root % mp.n;
    ensure!(squared == 300, "M'^2 mod N gave {squared}");
    println!("reconstructed from shares 1, 3, 5: M' = {recovered_root}, M'^2 mod N = {squared}");

    let recovered = decrypt_root(recovered_root, &cls, &mp)?;
    ensure!(recovered == pixel, "recovered pixel {recovered}");
    println!("recovered p = {recovered}");
    Ok(())
}
