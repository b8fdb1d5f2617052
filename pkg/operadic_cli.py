import argparse
import logging
import sys

from tqdm import tqdm

from operadic.cli import COMMANDS, EXIT_INPUT, SessionConfig, parse_window, run
from operadic.exceptions import InputError

parser = argparse.ArgumentParser(description="Exact operadic homological algebra.")
parser.add_argument("command", choices=sorted(COMMANDS))
parser.add_argument("target", help="operad tag (com, asc, lie) or TOML input file")

# Truncations
parser.add_argument("--field", type=str, default="Q", help="Q or F<p>, e.g. F101")
parser.add_argument("--max-arity", type=int, default=4)
parser.add_argument("--max-weight", type=int, default=4)
parser.add_argument("--max-level", type=int, default=3)
parser.add_argument("--window", type=str, default="-2:2", help="degree window n-:n+; write --window=-2:2")
parser.add_argument("--pbw-bound", type=int, default=None)
parser.add_argument("--seed", type=int, default=0)

# Output
parser.add_argument("--format", type=str, default="text", choices=["text", "json"])
parser.add_argument("--log-level", type=str, default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
parser.add_argument("--no-progress", action="store_true")


def main() -> int:
    args = parser.parse_args()
    logging.getLogger("operadic").setLevel(args.log_level)
    try:
        window = parse_window(args.window)
    except InputError as error:
        sys.stderr.write(f"{error}\n")
        return EXIT_INPUT
    config = SessionConfig(
        field=args.field,
        max_arity=args.max_arity,
        max_weight=args.max_weight,
        max_level=args.max_level,
        window=window,
        output_format=args.format,
        seed=args.seed,
        pbw_bound=args.pbw_bound,
    )

    def progress(items):
        return tqdm(items, desc=args.command, disable=args.no_progress, file=sys.stderr)

    report = run(args.command, config, args.target, progress=progress)
    sys.stdout.buffer.write(report.render(args.format))
    sys.stdout.flush()
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
