//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.
//!
//! Oracles here are written against the library's public surface only where
//! the quantity under test is the library output; reference values come from
//! code in this file.

use std::f64::consts::PI;
use std::time::Instant;

use anchor_rir::delay::{anti_alias_window, omni_taps};
use anchor_rir::geometry::enumerate_images;
use anchor_rir::orientation::{frame_from_anchors, source_orientation};
use anchor_rir::patterns::harmonics::{harmonics_at, track_count, track_index};
use anchor_rir::renderer::{is_directional, render_contributions, Contribution};
use anchor_rir::{
    render, render_with_workers, DirectedEndpoint, Pattern, RenderConfig, RoomSpec, Transducer,
    Vec3,
};
use num_complex::Complex64;

const BETAS: [f64; 6] = [0.96, 0.8, 0.96, 0.9, 0.5, 0.5];
const FS: f64 = 16000.0;
const C: f64 = 340.0;

fn v(x: f64, y: f64, z: f64) -> Vec3 {
    Vec3::new(x, y, z)
}

fn room(betas: [f64; 6]) -> RoomSpec {
    RoomSpec::new([4.0; 3], betas, C, FS).unwrap()
}

const SRC: [f64; 3] = [3.0, 3.0, 1.0];
const MIC: [f64; 3] = [1.5, 1.5, 1.0];

/// Talker anchors for the 0, 90 and 180 degree deviations.
fn talker_anchors() -> [(&'static str, Vec3, Vec3); 3] {
    [
        ("0 deg", v(3.1, 3.1, 1.0), v(2.9, 3.1, 1.0)),
        ("90 deg", v(3.1, 2.9, 1.0), v(2.9, 2.9, 1.0)),
        ("180 deg", v(2.9, 2.9, 1.0), v(2.9, 3.1, 1.0)),
    ]
}

fn talker(pattern: Pattern, deviation: usize) -> Transducer {
    let (_, az, ax) = talker_anchors()[deviation];
    Transducer::new(
        DirectedEndpoint::new(Vec3::from(SRC), az, ax).unwrap(),
        pattern,
    )
}

/// Microphone whose front points at the talker.
fn facing_mic(pattern: Pattern) -> Transducer {
    Transducer::new(
        DirectedEndpoint::new(Vec3::from(MIC), v(1.4, 1.4, 1.0), v(1.6, 1.4, 1.0)).unwrap(),
        pattern,
    )
}

struct Outcome {
    id: &'static str,
    pass: bool,
    detail: String,
}

fn outcome(id: &'static str, pass: bool, detail: String) -> Outcome {
    Outcome { id, pass, detail }
}

fn dtft(taps: &[f64], omega: f64) -> Complex64 {
    taps.iter()
        .enumerate()
        .map(|(l, &h)| h * Complex64::from_polar(1.0, -omega * l as f64))
        .sum()
}

fn oracle_sinc(t: f64) -> f64 {
    if t == 0.0 {
        1.0
    } else {
        (PI * t).sin() / (PI * t)
    }
}

/// Classical shoebox image model with windowed-sinc interpolation, written
/// from scratch: absolute-time taps around the rounded arrival.
fn classical_image_model(q: i32, half: usize, length: usize) -> Vec<f64> {
    let dims = [4.0; 3];
    let d = half as f64;
    let mut h = vec![0.0; length];
    for qx in -q..=q {
        for qy in -q..=q {
            for qz in -q..=q {
                for p in 0..8u8 {
                    let parity = [p >> 2 & 1, p >> 1 & 1, p & 1];
                    let shift = [qx, qy, qz];
                    let mut dist2 = 0.0;
                    let mut beta = 1.0;
                    for a in 0..3 {
                        let sign = if parity[a] == 1 { -1.0 } else { 1.0 };
                        let x = sign * SRC[a] + 2.0 * shift[a] as f64 * dims[a];
                        dist2 += (x - MIC[a]).powi(2);
                        let near = (shift[a] - parity[a] as i32).unsigned_abs() as i32;
                        let far = shift[a].unsigned_abs() as i32;
                        beta *= BETAS[2 * a].powi(near) * BETAS[2 * a + 1].powi(far);
                    }
                    let dist = dist2.sqrt();
                    let arrival = dist / C * FS;
                    let centre = (arrival + 0.5).floor() as i64;
                    if centre - half as i64 >= length as i64 {
                        continue;
                    }
                    let gain = beta / (4.0 * PI * dist);
                    for n in centre - half as i64..=centre + half as i64 {
                        if n < 0 || n >= length as i64 {
                            continue;
                        }
                        let t = n as f64 - arrival;
                        let w = 0.54 + 0.46 * (PI * t / d).cos();
                        h[n as usize] += gain * w * oracle_sinc(t);
                    }
                }
            }
        }
    }
    h
}

fn criterion_1() -> Outcome {
    let cfg = RenderConfig::new([8, 8, 8], -1, 2048);
    let rm = room(BETAS);
    let t0 = Instant::now();
    let h = render(
        &rm,
        &talker(Pattern::Omnidirectional, 0),
        &facing_mic(Pattern::Omnidirectional),
        &cfg,
    )
    .unwrap();
    let secs = t0.elapsed().as_secs_f64();
    let oracle = classical_image_model(8, 32, 2048);
    let diff = h
        .samples
        .iter()
        .zip(&oracle)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    outcome(
        "1 classical degeneration",
        diff < 1e-9 && secs < 5.0,
        format!("max |h - oracle| = {diff:.3e} (< 1e-9), render {secs:.2} s (< 5 s)"),
    )
}

fn criterion_2() -> Outcome {
    let rm = room(BETAS);
    let pose = talker(Pattern::Omnidirectional, 0).pose;
    let images = enumerate_images(&rm, &pose.position, [3, 3, 3]).unwrap();
    let mut distinct: Vec<Vec3> = Vec::new();
    for (index, _) in &images {
        let k = pose.mirrored(index, &rm).front().normalize();
        if !distinct.iter().any(|u| (u - k).amax() <= 1e-12) {
            distinct.push(k);
        }
    }
    outcome(
        "2 eight front directions",
        distinct.len() == 8,
        format!(
            "{} images, {} distinct normalized fronts (want 8)",
            images.len(),
            distinct.len()
        ),
    )
}

fn criterion_3() -> Outcome {
    // zero wall gain leaves only the real source
    let rm = room([0.0; 6]);
    let h = render(
        &rm,
        &talker(Pattern::Omnidirectional, 0),
        &facing_mic(Pattern::Omnidirectional),
        &RenderConfig::new([0, 0, 0], -1, 2048),
    )
    .unwrap();
    let expected = 0.037513;
    let rel = (h.peak() - expected).abs() / expected;
    outcome(
        "3 direct-path amplitude",
        rel < 0.02,
        format!(
            "peak tap {:.6} vs {expected} ({:.2}% off, < 2%)",
            h.peak(),
            100.0 * rel
        ),
    )
}

fn criterion_4() -> Outcome {
    let phi = Vec3::from(SRC) - Vec3::from(MIC);
    let mut worst: f64 = 0.0;
    let mut got = Vec::new();
    for ((_, az, ax), want) in talker_anchors().iter().zip([1.0, 0.0, -1.0]) {
        let pose = DirectedEndpoint::new(Vec3::from(SRC), *az, *ax).unwrap();
        let o = source_orientation(&frame_from_anchors(&pose).unwrap(), &phi).unwrap();
        worst = worst.max((o.cos_theta - want).abs());
        got.push(format!("{:+.15}", o.cos_theta));
    }
    outcome(
        "4 orientation fixtures",
        worst <= 1e-12,
        format!(
            "cos(theta) = [{}], max error {worst:.1e} (<= 1e-12)",
            got.join(", ")
        ),
    )
}

fn criterion_5() -> Outcome {
    let rm = room(BETAS);
    let images = enumerate_images(&rm, &Vec3::from(SRC), [4, 4, 4]).unwrap();
    let counts: Vec<usize> = (0..=2)
        .map(|q| images.iter().filter(|(i, _)| is_directional(i, q)).count())
        .collect();
    let want: Vec<usize> = (0..=2).map(|q: usize| 8 * (2 * q + 1).pow(3)).collect();
    outcome(
        "5 directional count",
        counts == want,
        format!("counts {counts:?}, want {want:?}"),
    )
}

fn criterion_6() -> Outcome {
    let d = 32;
    let (mut gd_worst, mut mag_worst) = (0.0f64, 0.0f64);
    for k in 0..16 {
        let zeta = -0.5 + k as f64 / 16.0;
        let window = anti_alias_window(zeta, d);
        let taps: Vec<f64> = omni_taps(zeta, d)
            .taps
            .iter()
            .zip(&window)
            .map(|(c, w)| c * w)
            .collect();
        for i in 0..=400 {
            let omega = 0.8 * PI * i as f64 / 400.0;
            let h = dtft(&taps, omega);
            let dh: Complex64 = taps
                .iter()
                .enumerate()
                .map(|(l, &c)| c * l as f64 * Complex64::from_polar(1.0, -omega * l as f64))
                .sum();
            let group_delay = (dh / h).re;
            gd_worst = gd_worst.max((group_delay - (d as f64 + zeta)).abs());
            mag_worst = mag_worst.max((h.norm() - 1.0).abs());
        }
    }
    outcome(
        "6 fractional-delay fidelity",
        gd_worst < 0.05 && mag_worst < 0.01,
        format!(
            "16 zeta, |w| <= 0.8 pi: max group-delay error {gd_worst:.4} (< 0.05), max magnitude ripple {:.3}% (< 1%)",
            100.0 * mag_worst
        ),
    )
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton on P_n.
fn oracle_gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let step = p1 / dp;
            z -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

fn criterion_7() -> Outcome {
    let m = 9;
    let t0 = Instant::now();
    let tracks = track_count(m);
    let (nodes, weights) = oracle_gauss_legendre(24);
    let n_phi = 256;
    let mut gram = vec![Complex64::new(0.0, 0.0); tracks * tracks];
    for (x, wx) in nodes.iter().zip(&weights) {
        for k in 0..n_phi {
            let phi = 2.0 * PI * k as f64 / n_phi as f64;
            let y = harmonics_at(m, *x, Complex64::from_polar(1.0, phi));
            let w = wx * 2.0 * PI / n_phi as f64;
            for a in 0..tracks {
                let ya = y[a] * w;
                for b in 0..tracks {
                    gram[a * tracks + b] += ya * y[b].conj();
                }
            }
        }
    }
    let mut worst: f64 = 0.0;
    for a in 0..tracks {
        for b in 0..tracks {
            let want = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((gram[a * tracks + b] - want).norm());
        }
    }
    // track layout sanity: Y_{m,l} sits at m^2 + m + l
    let layout = track_index(9, 9) == tracks - 1 && track_index(0, 0) == 0;
    let secs = t0.elapsed().as_secs_f64();
    outcome(
        "7 SH orthonormality",
        worst < 1e-6 && secs < 10.0 && layout,
        format!(
            "{tracks} tracks, 24 Gauss-Legendre x {n_phi} phi: max |G - I| = {worst:.2e} (< 1e-6), {secs:.2} s (< 10 s)"
        ),
    )
}

fn direct(parts: &[Contribution]) -> Option<&Contribution> {
    parts.iter().find(|c| c.index.is_real_source())
}

fn criterion_8() -> Outcome {
    let rm = room(BETAS);
    let orders = [8, 8, 8];
    let cfg = RenderConfig::new(orders, 2, 2048);
    let omega = 2.0 * PI * 4000.0 / FS;

    // (a)
    let energies: Vec<f64> = (0..3)
        .map(|dev| {
            let parts = render_contributions(
                &rm,
                &talker(Pattern::SimplifiedSpeaker, dev),
                &facing_mic(Pattern::Omnidirectional),
                &cfg,
                None,
            )
            .unwrap();
            dtft(&direct(&parts).unwrap().taps, omega).norm_sqr()
        })
        .collect();
    let a_ok = energies.windows(2).all(|w| w[1] < w[0]);

    // (b) dipole front turned upwards, perpendicular to the direct path
    let dipole = Transducer::new(
        DirectedEndpoint::new(Vec3::from(MIC), v(1.5, 1.5, 0.9), v(1.4, 1.5, 1.0)).unwrap(),
        Pattern::Dipole,
    );
    let amp = |sensor: &Transducer| {
        let parts = render_contributions(
            &rm,
            &talker(Pattern::SimplifiedSpeaker, 0),
            sensor,
            &cfg,
            None,
        )
        .unwrap();
        direct(&parts).map_or(0.0, |c| c.taps.iter().fold(0.0f64, |m, t| m.max(t.abs())))
    };
    let ratio = amp(&dipole) / amp(&facing_mic(Pattern::Omnidirectional));
    let b_ok = ratio < 1e-6;

    // (c) directional talker against the omnidirectional baseline
    let early = 1000;
    let baseline = render(
        &rm,
        &talker(Pattern::Omnidirectional, 0),
        &facing_mic(Pattern::Omnidirectional),
        &RenderConfig::new(orders, -1, 2048),
    )
    .unwrap()
    .samples;
    let sweeps: Vec<Vec<f64>> = (0..=2)
        .map(|q| {
            render(
                &rm,
                &talker(Pattern::SimplifiedSpeaker, 0),
                &facing_mic(Pattern::Omnidirectional),
                &RenderConfig::new(orders, q, 2048),
            )
            .unwrap()
            .samples
        })
        .collect();
    let compare = |h: &[f64], reference: &[f64]| {
        let over = (0..early)
            .filter(|&i| h[i].abs() > reference[i].abs() + 1e-12)
            .count();
        let under = (0..early)
            .filter(|&i| h[i].abs() < reference[i].abs() - 1e-12)
            .count();
        (over, under)
    };
    let base_energy: f64 = baseline[..early].iter().map(|t| t * t).sum();
    let mut c_ok = true;
    let mut c_detail = Vec::new();
    let mut previous: &[f64] = &baseline;
    for (q, h) in sweeps.iter().enumerate() {
        let (over, under) = compare(h, previous);
        c_ok &= over == 0 && under > 0;
        let label = if q == 0 {
            "omni".to_string()
        } else {
            format!("Q_max={}", q - 1)
        };
        let energy: f64 = h[..early].iter().map(|t| t * t).sum();
        c_detail.push(format!(
            "Q_max={q} vs {label}: {over} taps above, {under} below, early energy {energy:.3e}"
        ));
        previous = h;
    }

    outcome(
        "8 qualitative trends",
        a_ok && b_ok && c_ok,
        format!(
            "(a) 4 kHz direct energy {:.3e} > {:.3e} > {:.3e}: {}; (b) dipole/omni direct amplitude {ratio:.1e} (< 1e-6): {}; (c) first {early} taps (omni early energy {base_energy:.3e}), {}: {}",
            energies[0],
            energies[1],
            energies[2],
            if a_ok { "ok" } else { "no" },
            if b_ok { "ok" } else { "no" },
            c_detail.join("; "),
            if c_ok { "ok" } else { "no" },
        ),
    )
}

fn criterion_9() -> Outcome {
    let rm = room(BETAS);
    let cfg = RenderConfig::new([10, 10, 10], 2, 8192);
    let src = talker(Pattern::SimplifiedSpeaker, 0);
    let mic = facing_mic(Pattern::Cardioid);
    let t0 = Instant::now();
    let parallel = render_with_workers(&rm, &src, &mic, &cfg, Some(8)).unwrap();
    let secs = t0.elapsed().as_secs_f64();
    let serial = render_with_workers(&rm, &src, &mic, &cfg, Some(1)).unwrap();
    let identical = parallel
        .samples
        .iter()
        .zip(&serial.samples)
        .all(|(a, b)| a.to_bits() == b.to_bits());
    let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
    outcome(
        "9 performance",
        secs < 10.0 && identical,
        format!(
            "74,088 images, L_h 8192, Q_max 2: 8 workers {secs:.2} s (< 10 s) on {cores} available core(s); parallel == serial bitwise: {identical}"
        ),
    )
}

fn main() {
    let runs: [fn() -> Outcome; 9] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
    ];
    let mut failed = 0;
    for run in runs {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} [{}] {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.id,
            o.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        runs.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
