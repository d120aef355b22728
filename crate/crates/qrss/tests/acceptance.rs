//! Acceptance suite: one test per release criterion, each printing a
//! pass line. Run with `cargo test -p qrss --test acceptance -- --nocapture`
//! to see the per-criterion report.

use std::time::Instant;

use qrss::{
    clamp_pixel, decrypt_root, encrypt_pixel, four_square_roots, is_qr, mse, psnr,
    read_pgm, read_shadow, reconstruct_secret, reveal_image, share_image, share_secret, tl_reveal,
    tl_share, write_pgm, write_shadow, GrayImage, ModulusPair, ResidueClassifier, SchemeParams,
    ShadowFile, ShadowImage, SharePoint, SplitMix64, TlShadow, FIELD_PRIME,
};

fn pass(n: u32, what: &str) {
    println!("criterion {n}: PASS - {what}");
}

fn random_image(w: u32, h: u32, rng: &mut SplitMix64, max: u64) -> GrayImage {
    let px: Vec<u8> = (0..w * h).map(|_| rng.next_below(max + 1) as u8).collect();
    GrayImage::new(w, h, px)
}

/// All k-subsets of indices 0..n.
fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

// chi-square of observed byte-bucket counts against uniform; 3 sigma bound
// for 255 degrees of freedom.
fn chi_square_uniform_ok(counts: &[u64; 256]) -> bool {
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / 256.0;
    let chi2: f64 = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    let bound = 255.0 + 3.0 * (2.0 * 255.0f64).sqrt();
    chi2 < bound
}

#[test]
fn criterion_1_worked_example() {
    let start = Instant::now();
    let mp = ModulusPair::new();
    let cls = ResidueClassifier::new(mp);

    assert_eq!(cls.classify_case(150).unwrap(), 2);
    assert_eq!(cls.case_parameter(2), 2);
    let product = 150 * cls.case_parameter(2) % mp.n;
    assert_eq!(product, 300);
    let roots = four_square_roots(300, &mp).unwrap();
    assert_eq!(roots, [42677, 52954, 7035, 17312]);
    let enc = encrypt_pixel(150, &cls, &mp);
    assert_eq!(enc.root, 52954);
    assert_eq!(52954 * 52954 % mp.n, 300);
    assert_eq!(decrypt_root(52954, &cls, &mp).unwrap(), 150);
    let elapsed = start.elapsed();
    assert!(elapsed.as_millis() < 1, "took {elapsed:?}");
    pass(1, "pixel 150: case 2, r=2, product 300, roots pinned, M=52954, recovered 150");
}

#[test]
fn criterion_2_crt_constants() {
    let mp = ModulusPair::new();
    assert_eq!(mp.crt_a, 5020);
    assert_eq!(mp.crt_b, 54970);
    assert_eq!((mp.crt_a + mp.crt_b) % mp.n, 1);
    assert_eq!(mp.crt_a % 239, 1);
    assert_eq!(mp.crt_a % 251, 0);
    // brute-force inverse scan cross-check of the extended-Euclid values
    let q_inv_p = (1..239u64).find(|y| 251 % 239 * y % 239 == 1).unwrap();
    let p_inv_q = (1..251u64).find(|y| 239 * y % 251 == 1).unwrap();
    assert_eq!(251 * q_inv_p % mp.n, 5020);
    assert_eq!(239 * p_inv_q % mp.n, 54970);
    pass(2, "crt_a=5020, crt_b=54970, idempotent identities hold");
}

#[test]
fn criterion_3_qr_set_cardinalities() {
    let start = Instant::now();
    for (prime, expected) in [(239u64, 119usize), (251, 125)] {
        // Eq-style oracle: explicit squaring construction
        let mut set = vec![false; prime as usize];
        for y in 1..=(prime - 1) / 2 {
            set[(y * y % prime) as usize] = true;
        }
        assert_eq!(set.iter().filter(|&&b| b).count(), expected);
        for x in 1..prime {
            assert_eq!(is_qr(x, prime).unwrap(), set[x as usize], "x={x} mod {prime}");
        }
    }
    assert!(start.elapsed().as_secs() < 1);
    pass(3, "119 residues mod 239, 125 mod 251; Euler criterion matches set construction");
}

#[test]
fn criterion_4_pixel_cipher_round_trip() {
    let mp = ModulusPair::new();
    let cls = ResidueClassifier::new(mp);
    for v in 0u8..=238 {
        let enc = encrypt_pixel(v, &cls, &mp);
        assert_eq!(decrypt_root(enc.root, &cls, &mp).unwrap(), v);
    }
    pass(4, "decrypt(encrypt(v)) == v for all v in [0,238]");
}

#[test]
fn criterion_5_root_correctness() {
    let start = Instant::now();
    let mp = ModulusPair::new();
    let cls = ResidueClassifier::new(mp);
    let mut rng = SplitMix64::new(20260823);
    let mut checked = 0;
    while checked < 10_000 {
        let x = rng.next_below(mp.n - 1) + 1;
        if x % mp.p == 0 || x % mp.q == 0 || cls.classify_case(x).unwrap() != 1 {
            continue;
        }
        let roots = four_square_roots(x, &mp).unwrap();
        for r in roots {
            assert_eq!(r * r % mp.n, x);
        }
        assert_eq!((roots[0] + roots[3]) % mp.n, 0);
        assert_eq!((roots[1] + roots[2]) % mp.n, 0);
        checked += 1;
    }
    assert!(start.elapsed().as_secs() < 1);
    pass(5, "10^4 case-1 values: all roots square back, pairing M1+M4 = M2+M3 = 0 mod N");
}

#[test]
fn criterion_6_end_to_end_threshold_round_trip() {
    let start = Instant::now();
    let mut rng = SplitMix64::new(606);
    for (k, n) in [(2u8, 2u8), (2, 4), (3, 5)] {
        for trial in 0..100u64 {
            let img = random_image(16, 16, &mut rng, 238);
            let params = SchemeParams {
                k,
                n_shares: n,
                perm_seed: trial,
                coeff_seed: trial ^ 0xABCD,
            };
            let shadows = share_image(&img, &params).unwrap();
            for subset in k_subsets(n as usize, k as usize) {
                let picked: Vec<ShadowImage> =
                    subset.iter().map(|&i| shadows[i].clone()).collect();
                assert_eq!(reveal_image(&picked).unwrap(), img);
            }
        }
    }
    // arbitrary pixels: clamp is the only loss
    for trial in 0..20u64 {
        let img = random_image(16, 16, &mut rng, 255);
        let params = SchemeParams { k: 2, n_shares: 4, perm_seed: trial, coeff_seed: trial };
        let shadows = share_image(&img, &params).unwrap();
        assert_eq!(reveal_image(&shadows[..2]).unwrap(), img.map(clamp_pixel));
    }
    assert!(start.elapsed().as_secs() < 10, "took {:?}", start.elapsed());

    // full-scale (2,4) run on a 512x512 image with no pixel above 238
    let img = random_image(512, 512, &mut rng, 238);
    let params = SchemeParams { k: 2, n_shares: 4, perm_seed: 1, coeff_seed: 2 };
    let shadows = share_image(&img, &params).unwrap();
    let revealed = reveal_image(&[shadows[1].clone(), shadows[3].clone()]).unwrap();
    let report = psnr(&img, &revealed).unwrap();
    assert!(report.psnr_db.is_infinite());
    pass(6, "every k-subset round trip exact; 512x512 (2,4) run reveals with PSNR = inf");
}

#[test]
fn criterion_7_shamir_properties() {
    let mut rng = SplitMix64::new(707);
    for _ in 0..10_000 {
        let secret = rng.next_below(FIELD_PRIME);
        let n = (rng.next_below(10) + 1) as usize;
        let k = (rng.next_below(n as u64) + 1) as usize;
        let shares = share_secret(secret, k, n, &mut rng).unwrap();
        let mut reference = None;
        for subset in k_subsets(n, k) {
            let picked: Vec<SharePoint> = subset.iter().map(|&i| shares[i]).collect();
            let got = reconstruct_secret(&picked, k).unwrap();
            assert_eq!(got, secret);
            assert_eq!(*reference.get_or_insert(got), got);
        }
    }
    // secrecy smoke test: one share of a k=2 sharing looks uniform
    let mut counts = [0u64; 256];
    for _ in 0..100_000 {
        let shares = share_secret(52954, 2, 2, &mut rng).unwrap();
        counts[(shares[0].y % 256) as usize] += 1;
    }
    assert!(chi_square_uniform_ok(&counts), "share bytes failed uniformity");
    pass(7, "10^4 sharings reconstruct from every k-subset; single-share chi-square uniform");
}

#[test]
fn criterion_8_thienlin() {
    let mut rng = SplitMix64::new(808);
    for (k, n) in [(2u8, 4u8), (4, 4)] {
        for trial in 0..100u64 {
            let img = random_image(16, 16, &mut rng, 255);
            let params = SchemeParams { k, n_shares: n, perm_seed: trial, coeff_seed: 0 };
            let shadows = tl_share(&img, &params).unwrap();
            let expected_len = 256usize.div_ceil(k as usize);
            assert!(shadows.iter().all(|s| s.values.len() == expected_len));
            let truncated = img.map(|v| v.min(250));
            for subset in k_subsets(n as usize, k as usize) {
                let picked: Vec<TlShadow> = subset.iter().map(|&i| shadows[i].clone()).collect();
                assert_eq!(tl_reveal(&picked).unwrap(), truncated);
            }
        }
    }
    pass(8, "tl_reveal . tl_share == truncate250, every k-subset; shadow size ceil(w*h/k)");
}

#[test]
fn criterion_9_metrics() {
    let mut rng = SplitMix64::new(909);
    let a = random_image(512, 512, &mut rng, 255);
    assert!(psnr(&a, &a).unwrap().psnr_db.is_infinite());

    // one pixel off by one on 512x512: closed form 10*log10(255^2 * 262144)
    let mut px = a.pixels().to_vec();
    px[1000] = if px[1000] == 255 { 254 } else { px[1000] + 1 };
    let b = GrayImage::new(512, 512, px);
    let report = psnr(&a, &b).unwrap();
    assert!((report.psnr_db - 102.32).abs() <= 0.01, "got {}", report.psnr_db);

    for _ in 0..20 {
        let x = random_image(8, 8, &mut rng, 255);
        let y = random_image(8, 8, &mut rng, 255);
        assert_eq!(mse(&x, &y).unwrap(), mse(&y, &x).unwrap());
    }
    pass(9, "identical -> inf; one-pixel-off 512x512 -> 102.32 dB +- 0.01; mse symmetric");
}

#[test]
fn criterion_10_format_round_trips_and_fuzz() {
    let mut rng = SplitMix64::new(1010);
    // randomized valid round trips
    for _ in 0..50 {
        let w = rng.next_below(16) as u32 + 1;
        let h = rng.next_below(16) as u32 + 1;
        let img = random_image(w, h, &mut rng, 255);
        assert_eq!(read_pgm(&write_pgm(&img)).unwrap(), img);

        let shadow = ShadowImage {
            x_coord: 1,
            k: 1,
            n_shares: 3,
            width: w,
            height: h,
            perm_seed: rng.next_u64(),
            values: (0..w * h).map(|_| rng.next_below(FIELD_PRIME) as u16).collect(),
        };
        let file = ShadowFile::Qrss(shadow);
        assert_eq!(read_shadow(&write_shadow(&file)).unwrap(), file);
    }
    // fuzz: random garbage and mutations of valid files must yield typed
    // errors, never panics
    let img = random_image(4, 4, &mut rng, 255);
    let valid_pgm = write_pgm(&img);
    let valid_shadow = write_shadow(&ShadowFile::ThienLin(TlShadow {
        x_coord: 1, k: 2, n_shares: 3, width: 4, height: 4,
        perm_seed: 9, values: vec![7; 8],
    }));
    for _ in 0..2000 {
        let len = rng.next_below(128) as usize;
        let garbage: Vec<u8> = (0..len).map(|_| rng.next_below(256) as u8).collect();
        let _ = read_pgm(&garbage);
        let _ = read_shadow(&garbage);

        let mut mutated_pgm = valid_pgm.clone();
        let i = rng.next_below(mutated_pgm.len() as u64) as usize;
        mutated_pgm[i] = rng.next_below(256) as u8;
        let _ = read_pgm(&mutated_pgm);

        let mut mutated_shadow = valid_shadow.clone();
        let i = rng.next_below(mutated_shadow.len() as u64) as usize;
        mutated_shadow[i] = rng.next_below(256) as u8;
        let _ = read_shadow(&mutated_shadow);

        let cut = rng.next_below(valid_shadow.len() as u64) as usize;
        let _ = read_shadow(&valid_shadow[..cut]);
        let _ = read_pgm(&valid_pgm[..cut.min(valid_pgm.len())]);
    }
    // a couple of targeted invalid headers
    assert!(read_shadow(b"QRS0aaaaaaaaaaaaaaaaaaaaaaaaa").is_err());
    assert!(read_pgm(b"P5\n0 0\n255\n").is_err());
    pass(10, "PGM/QRS1 round trips identity; fuzzed malformed inputs yield typed errors");
}
