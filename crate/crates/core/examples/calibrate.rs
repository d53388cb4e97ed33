//! Scratch calibration: convergence percentages and information-plane
//! quality across the protocol grid. Run with --release.

use ib_core::*;

fn admm_cfg(beta: f64, c: f64, omega: f64) -> AdmmConfig {
    let mut cfg = AdmmConfig::new(ObjectiveParams::new(beta, c, omega).unwrap());
    cfg.trace_stride = 0;
    cfg
}

fn main() {
    let joint = JointXY::synthetic_3x3();
    let identity = Encoder::identity(3);
    let i_xy = mutual_information_yz(&joint, &identity).unwrap();
    println!("I(X;Y) = {i_xy:.6}");

    let args: Vec<String> = std::env::args().collect();
    let what = args.get(1).map(String::as_str).unwrap_or("admm");

    match what {
        "admm" => {
            // Convergence % across (beta, c), omega = 4, 30 seeds.
            println!("\nADMM convergence % (30 seeds), omega=4:");
            print!("{:>6}", "beta\\c");
            for &c in &[4.0, 16.0, 32.0, 64.0, 98.0] {
                print!("{c:>8}");
            }
            println!();
            for beta in [1.0, 2.0, 3.0, 5.0, 7.0, 10.0] {
                print!("{beta:>6}");
                for &c in &[4.0, 16.0, 32.0, 64.0, 98.0] {
                    let cfg = admm_cfg(beta, c, 4.0);
                    let mut conv = 0;
                    let mut iters = 0usize;
                    for seed in 0..30u64 {
                        let run = admm_solve(&joint, None, None, &cfg, seed).unwrap();
                        if run.record.converged {
                            conv += 1;
                            iters += run.record.iterations;
                        }
                    }
                    let mean_it = if conv > 0 { iters / conv } else { 0 };
                    print!("{:>4}/{:>3}", conv, mean_it);
                }
                println!();
            }
        }
        "quality" => {
            // Best-of-N I_yz / I_xz vs BA at beta in {2, 5, 10}, c = 32.
            let inner: usize = args
                .get(2)
                .and_then(|s| s.parse().ok())
                .unwrap_or(1);
            println!("inner_steps = {inner}");
            for beta in [2.0, 5.0, 10.0] {
                let n = 100u64;
                let mut cfg = admm_cfg(beta, 32.0, 4.0);
                cfg.inner_steps = inner;
                let mut best_admm: Option<(f64, f64)> = None;
                let mut conv = 0;
                let mut mean_iters = 0usize;
                for seed in 0..n {
                    let run = admm_solve(&joint, None, None, &cfg, seed).unwrap();
                    if run.record.converged {
                        conv += 1;
                        mean_iters += run.record.iterations;
                        if best_admm.map_or(true, |(_, y)| run.record.i_yz > y) {
                            best_admm = Some((run.record.i_xz, run.record.i_yz));
                        }
                    }
                }
                if conv > 0 {
                    mean_iters /= conv;
                }
                print!("iters~{mean_iters} ");
                let ba_cfg = BaConfig::new(beta);
                let mut best_ba: Option<(f64, f64)> = None;
                use rand::SeedableRng;
                for seed in 0..n {
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                    let init = Encoder::sample_uniform(3, 3, &mut rng).clamp_interior(1e-4);
                    let run = ba_solve(&joint, &init, &ba_cfg).unwrap();
                    if best_ba.map_or(true, |(_, y)| run.i_yz > y) {
                        best_ba = Some((run.i_xz, run.i_yz));
                    }
                }
                println!(
                    "beta={beta}: admm conv {conv}/{n} best {:?} | ba best {:?} | 0.95 I(X;Y) = {:.4}",
                    best_admm,
                    best_ba,
                    0.95 * i_xy
                );
            }
        }
        "trivial" => {
            let cfg = admm_cfg(0.9, 32.0, 4.0);
            let mut conv = 0;
            let mut small = 0;
            for seed in 0..100u64 {
                let run = admm_solve(&joint, None, None, &cfg, seed).unwrap();
                if run.record.converged {
                    conv += 1;
                    if run.record.i_xz <= 1e-3 {
                        small += 1;
                    }
                }
            }
            println!("beta=0.9: converged {conv}/100, I_xz<=1e-3 on {small} of them");
        }
        "bayat" => {
            println!("\nBayat convergence % (30 seeds):");
            for beta in [1.0, 2.0, 5.0, 10.0] {
                print!("beta={beta:>4}: ");
                for &c in &[4.0, 16.0, 32.0, 64.0, 98.0] {
                    let cfg = BayatConfig::new(beta, c);
                    let mut conv = 0;
                    let mut iters = 0usize;
                    for seed in 0..30u64 {
                        let run = bayat_solve(&joint, None, &cfg, seed).unwrap();
                        if run.record.converged {
                            conv += 1;
                            iters += run.record.iterations;
                        }
                    }
                    let mean_it = if conv > 0 { iters / conv } else { 0 };
                    print!(" c={c}: {conv}/{mean_it}");
                }
                println!();
            }
        }
        "lyapunov" => {
            // Perturbed-uniform instance, eps = 0.05, beta = 2, omega = 4, c = 10.
            let third = 1.0 / 3.0;
            let table = vec![
                vec![third + 0.01, third - 0.01, third + 0.015],
                vec![third - 0.01, third + 0.01, third - 0.015],
                vec![third, third, third],
            ];
            let prior = ProbVector::new(vec![third, third, third]).unwrap();
            let inst = JointXY::new(table, prior).unwrap();
            let report = kappa(&inst);
            println!("kappa = {:.6}", report.kappa);
            let mut cfg = admm_cfg(2.0, 10.0, 4.0);
            cfg.eps_floor = 0.05;
            cfg.trace_stride = 1;
            cfg.residual_tol = 1e-10;
            cfg.max_outer_iters = 20_000;
            for inner in [1usize, 10, 40] {
                cfg.inner_steps = inner;
                let cert = compute_certificate(&inst, &cfg, &default_alpha_grid()).unwrap();
                let mut monotone = 0;
                let mut conv = 0;
                let mut worst = f64::NEG_INFINITY;
                for seed in 0..100u64 {
                    let run = admm_solve(&inst, None, None, &cfg, seed).unwrap();
                    if run.record.converged {
                        conv += 1;
                    }
                    let last = run.trace.records.last().unwrap();
                    let v = lyapunov_trace(&run.trace, &last.p_z, &last.mu_z, cfg.params.c)
                        .unwrap();
                    if v.len() > 2 {
                        let r = monotonicity_report(&v[1..], 1e-10);
                        if r.monotone {
                            monotone += 1;
                        }
                        worst = worst.max(r.max_increase);
                    }
                }
                println!(
                    "inner={inner}: feasible={} gamma={:.3} conv={conv}/100 monotone={monotone}/100 worst_increase={worst:.3e}",
                    cert.feasible, cert.gamma_beta
                );
            }
        }
        "timing" => {
            let start = std::time::Instant::now();
            let spec = SweepSpec {
                methods: vec![Method::Ba, Method::Admm, Method::Bayat],
                beta_grid: parse_grid("1:10:0.5").unwrap(),
                c_values: vec![32.0],
                omega: 4.0,
                restarts: 100,
                base_seed: 7,
                ..SweepSpec::default()
            };
            let out = run_sweep(&joint, &spec).unwrap();
            println!(
                "full sweep: {} records in {:.1}s",
                out.records.len(),
                start.elapsed().as_secs_f64()
            );
            let cells = aggregate(&out.records).unwrap();
            for cell in cells.iter().filter(|c| (c.beta - 5.0).abs() < 1e-9) {
                println!(
                    "{} beta={} conv={}% mean_cpu={:.2}ms best_iyz={:?}",
                    cell.method, cell.beta, cell.convergence_pct, cell.mean_cpu_ms, cell.best_i_yz
                );
            }
        }
        "variants" => {
            // Scatter envelope under different stopping/inner settings.
            for beta in [2.0, 5.0, 10.0] {
                println!("beta = {beta}");
                for (inner, tol, max_outer) in [
                    (30usize, 1e-10, 30_000usize),
                    (100, 1e-10, 30_000),
                    (30, 1e-12, 50_000),
                    (100, 1e-12, 50_000),
                ] {
                    let mut cfg = admm_cfg(beta, 32.0, 4.0);
                    cfg.inner_steps = inner;
                    cfg.residual_tol = tol;
                    cfg.max_outer_iters = max_outer;
                    let mut conv = 0;
                    let mut best: Option<(f64, f64)> = None;
                    let mut iters = 0usize;
                    for seed in 0..100u64 {
                        let run = admm_solve(&joint, None, None, &cfg, seed).unwrap();
                        if run.record.converged {
                            conv += 1;
                            iters += run.record.iterations;
                            if best.map_or(true, |(_, y)| run.record.i_yz > y) {
                                best = Some((run.record.i_xz, run.record.i_yz));
                            }
                        }
                    }
                    if conv > 0 {
                        iters /= conv;
                    }
                    println!(
                        "  inner={inner:<3} tol={tol:<7.0e} conv={conv}/100 iters~{iters:<6} best={best:?}"
                    );
                }
                let ba_cfg = BaConfig::new(beta);
                let mut best_ba: Option<(f64, f64)> = None;
                use rand::SeedableRng;
                for seed in 0..100u64 {
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                    let init = Encoder::sample_uniform(3, 3, &mut rng).clamp_interior(1e-4);
                    let run = ba_solve(&joint, &init, &ba_cfg).unwrap();
                    if best_ba.map_or(true, |(_, y)| run.i_yz > y) {
                        best_ba = Some((run.i_xz, run.i_yz));
                    }
                }
                println!("  ba best = {best_ba:?}");
            }
        }
        "inspect" => {
            // Find and dissect the high-I stationary point at beta = 2.
            let eps: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(1e-4);
            let mut cfg = admm_cfg(2.0, 32.0, 4.0);
            cfg.inner_steps = 100;
            cfg.residual_tol = 1e-12;
            cfg.max_outer_iters = 50_000;
            cfg.eps_floor = eps;
            let mut high = 0;
            for seed in 0..100u64 {
                let run = admm_solve(&joint, None, None, &cfg, seed).unwrap();
                if run.record.i_yz > 0.1 && run.record.converged {
                    high += 1;
                    if high == 1 {
                        println!(
                            "seed {seed}: ({:.4}, {:.4}) iters={}",
                            run.record.i_xz, run.record.i_yz, run.record.iterations
                        );
                        for (x, row) in run.state.encoder.rows().iter().enumerate() {
                            println!("  row {x}: {:?}", row.as_slice());
                        }
                        println!("  p_z: {:?}", run.state.p_z.as_slice());
                        println!("  mu:  {:?}", run.state.mu_z);
                        let g = grad_augmented_zx(&run.state, &joint, &cfg.params).unwrap();
                        let gz = grad_augmented_z(&run.state, &joint, &cfg.params).unwrap();
                        let mut row_major = Vec::new();
                        for x in 0..3 {
                            for z in 0..3 {
                                row_major.push(g[z * 3 + x]);
                            }
                        }
                        let ms_zx = mean_subtract(&row_major, 3);
                        let ms_z = mean_subtract(&gz, 3);
                        println!(
                            "  |ms grad zx| = {:.3e}, |ms grad z| = {:.3e}",
                            ms_zx.iter().fold(0.0f64, |a, &b| a.max(b.abs())),
                            ms_z.iter().fold(0.0f64, |a, &b| a.max(b.abs()))
                        );
                    }
                }
            }
            println!("high-I converged runs at eps={eps}: {high}/100");
        }
        other => eprintln!("unknown mode {other}"),
    }
}
