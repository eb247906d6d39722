# scripts/run_experiment.py
import os
import sys
import argparse

project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
src_path = os.path.join(project_root, 'src')
if src_path not in sys.path: sys.path.insert(0, src_path)
config_dir = os.path.join(project_root, 'config')
if config_dir not in sys.path: sys.path.insert(0, config_dir)

try:
    from config import OMEGA, GAMMA, COUPLING, BETA, DT, STEPS, N_TRAJ, SEED, SAMPLE_STRIDE, MODEL, MAX_LAG, \
                       TRANSIENT_FRACTION, EMISSION_CONVENTION, MI_MODE, JOINT_ENCODING, N_BLOCKS, OUTPUT_DIR, \
                       WORKERS
except ImportError:
    print("ERROR (run_experiment.py): Could not import defaults from config.py.")
    sys.exit(2)

from experiments.pipelines import recompute_metrics, run_fig1, run_fig2, run_fig3, run_fig4, run_single
from experiments.settings import MI_MODES, MODEL_CHOICES, ConfigError, parse_config
from metrics.complexity import JOINT_ENCODINGS
from simulators.params import StepSizeError
from simulators.telegraph import EMISSION_CONVENTIONS

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_NUMERICAL = 4

# flag dest -> config key
FLAG_KEYS = {
    "model": "model", "omega": "omega", "gamma": "gamma", "coupling": "coupling", "beta": "beta",
    "dt": "dt", "steps": "steps", "n_traj": "n_traj", "seed": "seed", "sample_stride": "sample_stride",
    "max_lag": "max_lag", "transient": "transient_fraction", "emission_convention": "emission_convention",
    "mi_mode": "mi_mode", "out": "output_dir", "workers": "workers", "couplings": "couplings",
    "ratios": "ratios", "n_blocks": "n_blocks", "joint_encoding": "joint_encoding",
}


def add_common_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--config", type=str, help="JSON config file, or a CSV written by this tool.")
    parser.add_argument("--model", choices=MODEL_CHOICES, help=f"Model(s) to run (default {MODEL}).")
    parser.add_argument("--omega", type=float, help=f"Rabi drive amplitude (default {OMEGA}).")
    parser.add_argument("--gamma", type=float, help=f"Decay rate per qubit (default {GAMMA}).")
    parser.add_argument("--coupling", type=float, help=f"Ising coupling J (default {COUPLING}).")
    parser.add_argument("--beta", type=float, help=f"Classical bias scale (default {BETA}).")
    parser.add_argument("--dt", type=float, help=f"Time step (default {DT}); gamma*dt must stay <= 0.05.")
    parser.add_argument("--steps", type=int, help=f"Steps per trajectory (default {STEPS}).")
    parser.add_argument("--n-traj", type=int, help=f"Trajectories per ensemble (default {N_TRAJ}).")
    parser.add_argument("--seed", type=int, help=f"Master seed (default {SEED}).")
    parser.add_argument("--sample-stride", type=int, help=f"Steps between state samples (default {SAMPLE_STRIDE}).")
    parser.add_argument("--max-lag", type=int, help=f"Largest correlation lag in steps (default {MAX_LAG}).")
    parser.add_argument("--transient", type=float,
                        help=f"Leading fraction of each trajectory discarded (default {TRANSIENT_FRACTION}).")
    parser.add_argument("--emission-convention", choices=EMISSION_CONVENTIONS,
                        help=f"Classical emission rule (default {EMISSION_CONVENTION}).")
    parser.add_argument("--mi-mode", choices=MI_MODES, help=f"Quantum MI estimator (default {MI_MODE}).")
    parser.add_argument("--joint-encoding", choices=JOINT_ENCODINGS,
                        help=f"Joint sequence for LZ (default {JOINT_ENCODING}).")
    parser.add_argument("--n-blocks", type=int, help=f"Trajectory blocks for MI errors (default {N_BLOCKS}).")
    parser.add_argument("--couplings", type=float, nargs="+", help="J grid; defaults to the figure preset.")
    parser.add_argument("--ratios", type=float, nargs="+", help="omega/gamma grid; defaults to the figure preset.")
    parser.add_argument("--workers", type=int, help=f"Worker processes (default {WORKERS}).")
    parser.add_argument("--out", type=str, help=f"Output directory (default {OUTPUT_DIR}).")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Quantum-jump and classical telegraph emission experiments.")
    subparsers = parser.add_subparsers(dest="command", required=True)
    commands = {
        "simulate": "Write emissions and state samples for every trajectory.",
        "fig1": "Trajectory rasters, cumulative counts and correlation differences.",
        "fig2": "Joint-state occupancy tables.",
        "fig3": "Uncoupled LZ complexity scans and peak comparison.",
        "fig4": "LZ and MI versus coupling with rank statistics.",
        "metrics": "Recompute LZ, rates and correlations from an emissions CSV.",
    }
    for name, help_text in commands.items():
        sub = subparsers.add_parser(name, help=help_text, description=help_text)
        add_common_flags(sub)
        if name == "metrics":
            sub.add_argument("--input", type=str, required=True, help="Emissions CSV (step,t,r1,r2).")
            sub.add_argument("--baseline", type=str,
                             help="Emissions CSV used as the J=0 baseline for the dc columns.")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {key: getattr(args, dest) for dest, key in FLAG_KEYS.items()}

    try:
        cfg = parse_config(args.config, overrides)
        print(f"--- Starting '{args.command}' (seed={cfg.params.seed}, model={cfg.model}) ---")
        if args.command == "metrics":
            result = recompute_metrics(args.input, cfg, baseline=args.baseline)
            print(f"metrics: normalized joint LZ = {result['lz']:.6g}, "
                  f"rates = ({result['rate1']:.6g}, {result['rate2']:.6g})")
        else:
            pipeline = {"simulate": run_single, "fig1": run_fig1, "fig2": run_fig2,
                        "fig3": run_fig3, "fig4": run_fig4}[args.command]
            written = pipeline(cfg)
            print(f"{args.command}: {len(written)} file(s) written to {cfg.output_dir}")
    except ConfigError as e:
        print(f"FATAL: configuration error: {e}")
        return EXIT_CONFIG
    except OSError as e:
        print(f"FATAL: I/O error: {e}")
        return EXIT_IO
    except (StepSizeError, RuntimeError) as e:
        print(f"FATAL: numerical guard violated: {e}")
        return EXIT_NUMERICAL
    except ValueError as e:
        print(f"FATAL: invalid argument: {e}")
        return EXIT_CONFIG

    print(f"--- '{args.command}' finished ---")
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
