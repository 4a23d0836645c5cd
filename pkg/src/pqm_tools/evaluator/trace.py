"""
Evaluation trace helpers.
"""
import json
import pprint
from typing import Dict, List, TextIO


def write_traces(traces: List[Dict] | None, out: TextIO) -> None:
    """
    Write trace records as newline-delimited JSON.
    """
    for record in traces or []:
        out.write(json.dumps(record, sort_keys=True))
        out.write("\n")


def print_traces(traces: List[Dict] | None, out: TextIO) -> None:
    """
    Print the traces from the evaluator in readable form.
    """
    if traces is None:
        out.write(
            "Traces not collected. Use `--traces` to see detailed"
            + " evaluation information.\n"
        )
        return
    pp = pprint.PrettyPrinter(indent=2, stream=out)
    for trace in traces:
        out.write(f"Step {trace.get('step', '?')} ({trace.get('rule')}):\n")
        pp.pprint(trace)
        out.write("\n")
