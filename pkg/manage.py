#!/usr/bin/env python3
"""
Management script for spherical-basis-function experiments in Hardy subspaces.
Provides the CLI for point generation, convergence studies, decompositions,
min-norm assembly and the bounded extremal problem.
"""
import argparse
import sys
from pathlib import Path

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent / "src"))

from src.config import configure_logging, settings
from src.core.exceptions import HardySBFError
from src.management import ExperimentCommands, ExperimentConfig


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Hardy-space SBF approximation CLI")
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    for name, help_text in (
        ("gen-points", "Write the global point hierarchy"),
        ("convergence", "Run the level loop and write convergence.csv"),
        ("decompose", "Hardy-Hodge split of a field"),
        ("minnorm", "Assemble the min-norm field of a level fit"),
        ("bep", "Sweep the bound of the bounded extremal problem"),
    ):
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("--config", type=Path, help="key=value experiment file")
        sub.add_argument("--sigma", choices=["S1", "S2", "S3"], help="Run a single Sigma region")
        sub.add_argument("--nmax", type=int, help="Number of levels")
        sub.add_argument("--degree", type=int, choices=[100, 200], help="Spectral truncation degree")
        sub.add_argument("--out", type=Path, help="Output directory")
        sub.add_argument("--allow-large", action="store_true", default=None, help="Permit nmax above 4")
        sub.add_argument("--lambdas", help="Comma separated lambda grid")
        if name == "decompose":
            sub.add_argument("--field", type=Path, help="Gauss-grid samples (x,y,z,fx,fy,fz)")
    return parser


def load_config(args) -> ExperimentConfig:
    config = ExperimentConfig.load(
        args.config,
        sigmas=args.sigma,
        nmax=args.nmax,
        degree=args.degree,
        out=args.out,
        allow_large=args.allow_large,
        lambdas=args.lambdas,
    )
    return config


def report(result: dict) -> int:
    if not result["success"]:
        print(f"❌ Failed: {result.get('error', 'Unknown error')}")
        return result.get("exit_code", 1)

    if "rows" in result:
        print(f"📊 {len(result['rows'])} rows written")
        for row in result["rows"][:20]:
            if "rel_error" in row and "sigma" in row:
                print(f"   {row['sigma']} n={row['n']}: atoms={row['num_atoms']} rel_error={row['rel_error']:.3e}")
    if "counts" in result:
        print(f"📍 Level sizes: {result['counts']}")
    if "energies" in result:
        for leg, energy in result["energies"].items():
            print(f"   {leg}: {energy:.6e}")
    if "diagnostics" in result:
        for key, value in result["diagnostics"].items():
            print(f"   {key}: {value}")
    print("✅ Done")
    return 0


def main(argv=None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return 0

    configure_logging(settings)

    try:
        config = load_config(args)
        commands = ExperimentCommands(config)
        print(f"🚀 Running {args.command} into {config.out}")
        if args.command == "gen-points":
            result = commands.gen_points()
        elif args.command == "convergence":
            result = commands.convergence()
        elif args.command == "decompose":
            result = commands.decompose(args.field)
        elif args.command == "minnorm":
            result = commands.minnorm()
        else:
            result = commands.bep()
        return report(result)

    except HardySBFError as e:
        print(f"❌ Error: {e}")
        return e.exit_code
    except KeyboardInterrupt:
        print("\n⏹️  Operation cancelled by user")
        return 1


if __name__ == "__main__":
    sys.exit(main())
