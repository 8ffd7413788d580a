from typing import Any, Dict

from src.utils.format_utils import format_float


def print_summary(command: str, summary: Dict[str, Any]):
    # Print summary
    print(f"\n--- {command} ---")
    for k, v in summary.items():
        if isinstance(v, float):
            v = format_float(v)
        print(f"{k:25}: {v}")


def print_error(command: str, error: Exception, exit_code: int):
    print(f"\n--- {command} failed (exit {exit_code}) ---")
    print(f"{type(error).__name__:25}: {error}")
