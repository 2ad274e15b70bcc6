import argparse
import math
import sys

from cli.commands import COMMANDS, EXIT_FAIL, EXIT_INPUT, EXIT_UNSUPPORTED
from common import config
from common.config import validate_config
from common.errors import HypothesisFailed, UnsupportedDimension
from common.logger import LEVELS, log, set_level
from common.models import RunConfig
from common.parameters import (CONTRACTION_DIMS, CONTRACTION_POINTS, CURVE_STEPS, CURVE_T_MAX, CURVE_T_MIN,
                               OBTUSE_MAX_DIM)


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--mode", choices=config.VALID_MODES, default=config.DEFAULT_MODE)
    shared.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    shared.add_argument("--samples", type=positive_int, default=None,
                        help="sample budget (default VAALER_SAMPLES; VAALER_MC_SAMPLES for certificate solid angles)")
    shared.add_argument("--out", dest="output_path", default=None)
    shared.add_argument("--format", choices=("text", "json", "csv"), default="text")
    shared.add_argument("--log-level", choices=tuple(LEVELS), default=None, help="overrides LOG_LEVEL")

    parser = argparse.ArgumentParser(prog="vaaler-certify",
                                     description="Volume and surface certificates for cube sections and polytopes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[shared], help="check the face-distance hypothesis")
    p.add_argument("input")

    p = sub.add_parser("certify", parents=[shared], help="issue a volume or surface certificate")
    p.add_argument("kind", choices=("volume", "surface"))
    p.add_argument("input")
    p.add_argument("--experimental", action="store_true", help="evaluate surface ledgers for n >= 4")

    p = sub.add_parser("section", parents=[shared], help="emit a cube section as polytope JSON")
    p.add_argument("input", nargs="?")
    p.add_argument("--random", nargs=2, type=positive_int, metavar=("n", "N"))

    p = sub.add_parser("subdivide", parents=[shared], help="export the flag subdivision and check covering")
    p.add_argument("input")
    p.add_argument("--off", default=None, help="also write an OFF mesh (n = 2, 3)")

    p = sub.add_parser("curve", parents=[shared], help="CSV of spherical triangle area over sin t")
    p.add_argument("--c", type=float, default=math.pi / 4)
    p.add_argument("--t-min", type=float, default=CURVE_T_MIN)
    p.add_argument("--t-max", type=float, default=CURVE_T_MAX)
    p.add_argument("--steps", type=positive_int, default=CURVE_STEPS)

    p = sub.add_parser("lemma", parents=[shared], help="property checks for the unit-vector and contraction lemmas")
    p.add_argument("lemma", choices=("obtuse", "contraction"))
    p.add_argument("input", nargs="?")
    p.add_argument("--points", type=positive_int, default=CONTRACTION_POINTS, help="samples per orthoscheme pair")
    p.add_argument("--max-dim", type=positive_int, default=OBTUSE_MAX_DIM,
                   help="largest n for random unit-vector families")
    p.add_argument("--dims", type=positive_int, nargs="+", default=list(CONTRACTION_DIMS),
                   help="dimensions of random orthoscheme pairs")
    return parser


def to_run_config(args: argparse.Namespace) -> RunConfig:
    options = {}
    if args.command == "certify":
        options = {"kind": args.kind, "experimental": args.experimental}
    elif args.command == "section" and args.random:
        options = {"random": tuple(args.random)}
    elif args.command == "subdivide":
        options = {"off": args.off}
    elif args.command == "curve":
        options = {"c": args.c, "t_min": args.t_min, "t_max": args.t_max, "steps": args.steps}
    elif args.command == "lemma":
        options = {"lemma": args.lemma, "points": args.points, "max_dim": args.max_dim, "dims": tuple(args.dims)}

    return RunConfig(command=args.command, input_path=getattr(args, "input", None), mode=args.mode,
                     seed=args.seed, samples=args.samples, output_path=args.output_path, format=args.format,
                     options=options)


def main(argv=None) -> int:
    """
    Parses the command line, runs one command and maps failures onto exit codes.
    """
    # 1. Parse the command line
    args = build_parser().parse_args(argv)
    if args.log_level:
        set_level(args.log_level)

    # 2. Validate config, then dispatch
    try:
        validate_config()
        return COMMANDS[args.command](to_run_config(args))
    except UnsupportedDimension as e:
        log.error(f"Unsupported dimension: {e}")
        return EXIT_UNSUPPORTED
    except HypothesisFailed as e:
        log.error(f"Hypothesis failed: {e}")
        return EXIT_FAIL
    except ValueError as e:
        log.error(f"Invalid input: {e}")
        return EXIT_INPUT
    except Exception as e:
        log.error(f"An unexpected error occurred in '{args.command}': {e}", exc_info=True)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
