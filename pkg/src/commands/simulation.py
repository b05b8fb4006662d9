import argparse
import logging
from typing import Tuple

from pydantic import ValidationError

from analysis.efficiency_sim import efficiency_experiment, write_sweep_csv
from commands.common import add_output
from framework.errors import ConfigError, EngineError
from framework.serialization import emit
from models.simulation import SimConfig

logger = logging.getLogger(__name__)


def parse_int_list(value: str) -> Tuple[int, ...]:
    """'0-99' (inclusive range), '3,5,8' or a mix of both."""
    items = []
    try:
        for part in value.split(","):
            part = part.strip()
            if not part:
                continue
            if "-" in part:
                low, high = part.split("-", 1)
                items.extend(range(int(low), int(high) + 1))
            else:
                items.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot read integer list {value!r}")
    if any(item < 0 for item in items):
        raise argparse.ArgumentTypeError("values must be non-negative")
    return tuple(items)


_FLAGS = {
    "m": "m_dim",
    "ds": "ds_dim",
    "n": "n_samples",
    "patterns": "n_patterns",
    "noise": "noise_sigma",
    "seeds": "seeds",
    "eval_size": "eval_size",
    "sweep_grid": "sweep_grid",
    "sweep_seeds": "sweep_seeds",
    "sweep_target": "sweep_target",
}


def simulate(args) -> int:
    try:
        values = {field: getattr(args, flag) for flag, field in _FLAGS.items() if getattr(args, flag) is not None}
        try:
            cfg = SimConfig.model_validate(values)
        except ValidationError as e:
            raise ConfigError(f"invalid simulation config: {e.errors()[0]['msg']}")
        result = efficiency_experiment(cfg)
        if args.sweep_csv:
            write_sweep_csv(result, args.sweep_csv)
        emit(result, args.output)
        return 0
    except EngineError:
        raise
    except Exception as e:
        raise EngineError(f"Internal error: {str(e)}")


def register(subparsers) -> None:
    parser = subparsers.add_parser("sim-efficiency", help="failure-vs-success learning efficiency simulation")
    parser.add_argument("--m", type=int, help="failure-pattern subspace dimension (default 5)")
    parser.add_argument("--ds", type=int, help="ambient success-space dimension (default 50)")
    parser.add_argument("--n", type=int, help="training samples per agent (default 200)")
    parser.add_argument("--patterns", type=int, help="number of failure patterns (default 5)")
    parser.add_argument("--noise", type=float, help="within-pattern noise sigma (default 0.5)")
    parser.add_argument("--seeds", type=parse_int_list, help="e.g. 0-99 or 1,2,3 (default 0-99)")
    parser.add_argument("--eval-size", dest="eval_size", type=int, help="held-out scenarios per trial (default 200)")
    parser.add_argument("--sweep-grid", dest="sweep_grid", type=parse_int_list,
                        help="sample sizes for the n-sweep (default 10,20,40,80,160,320,640)")
    parser.add_argument("--sweep-seeds", dest="sweep_seeds", type=int, help="seeds averaged per sweep point (default 5)")
    parser.add_argument("--sweep-target", dest="sweep_target", type=float, help="utility target of the sweep (default 0.9)")
    parser.add_argument("--sweep-csv", dest="sweep_csv", help="also write the n-sweep as CSV")
    add_output(parser)
    parser.set_defaults(handler=simulate)
