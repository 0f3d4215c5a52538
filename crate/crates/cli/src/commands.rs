//! Subcommand implementations.

use serde_json::json;

use magnon_core::ansatz::{AnsatzSpec, Target};
use magnon_core::bethe::{
    bethe_energy, bethe_residuals, bethe_state, default_quantum_numbers, solve_bethe_real,
    BetheRoots,
};
use magnon_core::circuit_text;
use magnon_core::gate::run_circuit;
use magnon_core::spectrum::exact_spectrum;
use magnon_core::statevector::{states_equal_up_to_phase, Statevector};
use magnon_core::vqe::{energy_landscape, vqe_run, Backend, OptimizerConfig};
use magnon_core::xxz::{build_hamiltonian, XxzParams, DENSE_DIAG_CAP};

use crate::manifest::{manifest, with_manifest};
use crate::output::{json_text, print_out, resolve_path, write_atomic};
use crate::{
    BetheSolveArgs, BetheVerifyArgs, CircuitEmitArgs, CliError, CliResult, SpectrumArgs, SweepArgs,
    VqeArgs,
};

fn check_eta(eta: f64) -> CliResult<()> {
    if eta > 0.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "--eta must be positive, got {eta}"
        )))
    }
}

fn check_ansatz_sites(sites: usize) -> CliResult<()> {
    if sites == 2 || sites == 4 {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "--sites must be 2 or 4 for trial-state commands, got {sites}"
        )))
    }
}

pub fn spectrum(args: SpectrumArgs) -> CliResult<()> {
    check_eta(args.eta)?;
    if args.sites < 2 {
        return Err(CliError::Usage(format!(
            "--sites must be at least 2, got {}",
            args.sites
        )));
    }
    // The dense cap itself is reported as a domain error naming the cap.
    let params = XxzParams::new(args.sites, args.eta)?;
    let spec = exact_spectrum(&params)?;
    if let Some(path) = args.json {
        let flags = json!({"sites": args.sites, "eta": args.eta,
                           "json": resolve_path(&path).display().to_string()});
        let doc = with_manifest(manifest("spectrum", flags, None), spec.to_json(&params));
        write_atomic(&path, &json_text(&doc))?;
    }
    let mut listing = String::new();
    for level in spec.levels() {
        listing.push_str(&format!(
            "E = {:+.10}   sz = {:+.1}\n",
            level.energy, level.sz
        ));
    }
    print_out(&listing)?;
    Ok(())
}

pub fn vqe(args: VqeArgs) -> CliResult<()> {
    check_eta(args.eta)?;
    check_ansatz_sites(args.sites)?;
    let target = match args.target.as_str() {
        "first" => Target::FirstExcited,
        "second" => Target::SecondExcited,
        _ => unreachable!("constrained by clap"),
    };
    if target == Target::SecondExcited && args.sites != 2 {
        return Err(CliError::Usage(
            "--target second is only defined for --sites 2".into(),
        ));
    }
    if args.budget == 0 {
        return Err(CliError::Usage("--budget must be at least 1".into()));
    }
    let shots = args.shots.unwrap_or(match args.sites {
        2 => 1024,
        _ => 8192,
    });
    if shots == 0 {
        return Err(CliError::Usage("--shots must be at least 1".into()));
    }
    let backend = match args.backend.as_str() {
        "exact" => Backend::Exact,
        "shots" => Backend::Sampled {
            shots,
            seed: args.seed,
        },
        _ => unreachable!("constrained by clap"),
    };

    let params = XxzParams::new(args.sites, args.eta)?;
    let hamiltonian = build_hamiltonian(&params);
    let initial = match target {
        Target::FirstExcited => 0.8,
        Target::SecondExcited => 2.0,
    };
    let config = OptimizerConfig {
        initial,
        max_evaluations: args.budget,
        tolerance: 1e-7,
        seed: args.seed,
    };
    let ansatz = AnsatzSpec::new(args.sites, initial, target)?;
    let result = vqe_run(&ansatz, &hamiltonian, &backend, &config)?;

    if let Some(path) = args.json {
        let flags = json!({
            "sites": args.sites, "eta": args.eta, "target": args.target,
            "backend": args.backend, "shots": shots, "seed": args.seed,
            "budget": args.budget,
            "json": resolve_path(&path).display().to_string(),
        });
        let doc = with_manifest(
            manifest("vqe", flags, Some(args.seed)),
            result.to_json(args.sites, args.eta, &backend),
        );
        write_atomic(&path, &json_text(&doc))?;
    }
    print_out(&format!(
        "vqe: N={} eta={} target={} backend={} energy={:.8} p={:+.8} evaluations={} converged={}\n",
        args.sites,
        args.eta,
        target.as_str(),
        result.backend,
        result.energy,
        result.p,
        result.evaluations,
        result.converged
    ))?;
    Ok(())
}

pub fn bethe_solve(args: BetheSolveArgs) -> CliResult<()> {
    check_eta(args.eta)?;
    if args.sites < 2 {
        return Err(CliError::Usage(format!(
            "--sites must be at least 2, got {}",
            args.sites
        )));
    }
    if args.magnons == 0 || args.magnons > args.sites / 2 {
        return Err(CliError::Usage(format!(
            "--magnons must lie in 1..=N/2 = {}, got {}",
            args.sites / 2,
            args.magnons
        )));
    }
    let quantum_numbers = default_quantum_numbers(args.sites, args.magnons)?;
    let roots = solve_bethe_real(args.sites, args.magnons, args.eta, &quantum_numbers)?;
    let payload = roots.to_json()?;
    let flags = json!({
        "sites": args.sites, "magnons": args.magnons, "eta": args.eta,
        "json": args.json.as_ref().map(|p| resolve_path(p).display().to_string()),
    });
    let doc = with_manifest(manifest("bethe solve", flags, None), payload);
    if let Some(path) = args.json {
        write_atomic(&path, &json_text(&doc))?;
    }
    print_out(&format!("{doc}\n"))?;
    Ok(())
}

pub fn bethe_verify(args: BetheVerifyArgs) -> CliResult<()> {
    check_eta(args.eta)?;
    if args.sites < 2 {
        return Err(CliError::Usage(format!(
            "--sites must be at least 2, got {}",
            args.sites
        )));
    }
    if args.p.is_empty() || args.p.len() > args.sites / 2 {
        return Err(CliError::Usage(format!(
            "--p takes between 1 and N/2 = {} momenta, got {}",
            args.sites / 2,
            args.p.len()
        )));
    }
    if let Some(m) = args.magnons {
        if m != args.p.len() {
            return Err(CliError::Usage(format!(
                "--magnons {m} disagrees with the {} momenta given",
                args.p.len()
            )));
        }
    }
    let roots = BetheRoots::from_momenta(args.sites, args.eta, &args.p)?;
    let residuals = bethe_residuals(&roots);
    let energy = bethe_energy(&roots)?;
    let mut payload = json!({
        "N": args.sites,
        "M": args.p.len(),
        "eta": args.eta,
        "p": args.p,
        "residuals": residuals,
        "energy": energy,
    });

    // For dense-capped sizes, also construct the state and report the
    // eigenstate residual ||H psi - E psi|| / ||psi||.
    if args.sites <= DENSE_DIAG_CAP {
        let psi = bethe_state(&roots)?;
        let h = build_hamiltonian(&XxzParams::new(args.sites, args.eta)?);
        let applied = h.apply(&psi)?;
        let mut acc = 0.0f64;
        for (a, b) in applied.amplitudes().iter().zip(psi.amplitudes()) {
            acc += (a - b * energy).norm_sqr();
        }
        payload["eigenstate_residual"] = json!(acc.sqrt());
    }

    let flags = json!({
        "sites": args.sites, "eta": args.eta, "p": args.p,
        "json": args.json.as_ref().map(|p| resolve_path(p).display().to_string()),
    });
    let doc = with_manifest(manifest("bethe verify", flags, None), payload);
    if let Some(path) = args.json {
        write_atomic(&path, &json_text(&doc))?;
    }
    let mut report = String::new();
    for (k, r) in residuals.iter().enumerate() {
        report.push_str(&format!(
            "root {k}: p = {:+.10}  BAE residual = {r:.3e}\n",
            args.p[k]
        ));
    }
    if let Some(r) = doc.get("eigenstate_residual") {
        report.push_str(&format!(
            "eigenstate residual = {:.3e}\n",
            r.as_f64().unwrap()
        ));
    }
    print_out(&report)?;
    Ok(())
}

pub fn sweep(args: SweepArgs) -> CliResult<()> {
    check_eta(args.eta)?;
    check_ansatz_sites(args.sites)?;
    if args.points < 2 {
        return Err(CliError::Usage(format!(
            "--points must be at least 2, got {}",
            args.points
        )));
    }
    let params = XxzParams::new(args.sites, args.eta)?;
    let hamiltonian = build_hamiltonian(&params);
    let ansatz = AnsatzSpec::new(args.sites, 0.0, Target::FirstExcited)?;
    let grid: Vec<f64> = (0..args.points)
        .map(|k| {
            -std::f64::consts::PI + 2.0 * std::f64::consts::PI * k as f64 / (args.points - 1) as f64
        })
        .collect();
    let sweep = energy_landscape(&ansatz, &hamiltonian, &grid)?;

    let ch = args.eta.cosh();
    let power = if args.sites == 2 { 1 } else { 3 };
    let mut csv = String::from("p,energy,closed_form,abs_diff\n");
    let mut max_diff = 0.0f64;
    for (p, e) in &sweep {
        let closed = ch - p.cos().powi(power);
        let diff = (e - closed).abs();
        max_diff = max_diff.max(diff);
        csv.push_str(&format!("{p:.16e},{e:.16e},{closed:.16e},{diff:.16e}\n"));
    }
    write_atomic(&args.csv, &csv)?;
    print_out(&format!(
        "sweep: N={} eta={} points={} max|energy - closed_form| = {max_diff:.3e}\n",
        args.sites, args.eta, args.points
    ))?;
    Ok(())
}

pub fn circuit_emit(args: CircuitEmitArgs) -> CliResult<()> {
    check_ansatz_sites(args.sites)?;
    if !args.p.is_finite() {
        return Err(CliError::Usage("--p must be finite".into()));
    }
    let spec = AnsatzSpec::new(args.sites, args.p, Target::FirstExcited)?;
    let circuit = spec.circuit();
    let text = circuit_text::emit(&circuit);

    // Round trip: the emitted text must re-simulate to the same state.
    let reparsed = circuit_text::parse::<f64>(&text)?;
    let init = Statevector::all_zero(args.sites)?;
    let original = run_circuit(&circuit, &init)?;
    let recovered = run_circuit(&reparsed, &init)?;
    if !states_equal_up_to_phase(&original, &recovered, 1e-10)? {
        return Err(CliError::Domain(
            "emitted circuit failed the round-trip check".into(),
        ));
    }

    match args.out {
        Some(path) => write_atomic(&path, &text)?,
        None => print_out(&text)?,
    }
    Ok(())
}
