"""
PQM Driver
^^^^^^^^^^

Check, run and box programs, emitting the circuits they describe, and run
the metatheory property suite.
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO, Tuple

from pqm_tools import JSONEncoder
from pqm_tools.builtins import (
    ConstantDecl,
    builtin_environment,
    constant_types,
    load_signature,
)
from pqm_tools.checker import Checker, TypeCheckError
from pqm_tools.circuit import (
    LabelledCircuit,
    Signature,
    SignatureError,
    boxed_to_json,
    boxed_to_text,
    circuit_to_json,
    circuit_to_text,
    default_signature,
)
from pqm_tools.evaluator import (
    ErrorOutcome,
    EvalOutcome,
    Evaluator,
    FuelExhausted,
    ValueConfig,
    print_traces,
    write_traces,
)
from pqm_tools.metatheory import DEFAULT_FUEL, GenSpec, PropertySuite
from pqm_tools.metatheory.generator import DEFAULT_TARGETS
from pqm_tools.parser import SourceProgram, SyntaxFailure, parse_program
from pqm_tools.parser import parse_term as parse_source_term
from pqm_tools.syntax import (
    App,
    BoxedCirc,
    Circ,
    Left,
    Lolli,
    Right,
    Sum,
    Term,
    Type,
    Unit,
    UnitV,
    WellFormednessError,
    is_parameter_type,
    is_state_type,
    rename_labels,
    wire_names,
)

EXIT_OK = 0
EXIT_TYPE_ERROR = 1
EXIT_PARSE_ERROR = 2
EXIT_IO_ERROR = 3
EXIT_EVAL_ERROR = 4
EXIT_FUEL_EXHAUSTED = 5

SIGNATURE_ENV = "PQM_SIGNATURE"


class CommandFailure(Exception):
    """
    A command stopped early with a specific exit status.
    """

    status: int
    message: str

    def __init__(self, status: int, message: str, *args):
        super().__init__(args)
        self.status = status
        self.message = message

    def __str__(self):
        """Print exception string"""
        return self.message


@dataclass(kw_only=True)
class RunConfig:
    """
    Settings of one command invocation.
    """

    command: str
    input_path: Optional[Path] = None
    signature_path: Optional[Path] = None
    entry: str = "main"
    emit_format: str = "text"
    fuel: int = DEFAULT_FUEL
    traces: bool = False
    trace_format: str = "json"
    unchecked: bool = False
    args: List[str] = field(default_factory=list)
    out: Optional[Path] = None
    trials: int = 1000
    depth: int = 6
    seed: int = 0

    def __post_init__(self) -> None:
        """Validate the budget and the output format"""
        if self.fuel <= 0:
            raise ValueError("fuel must be positive")
        if self.emit_format not in ("text", "json"):
            raise ValueError(f"unknown format {self.emit_format}")
        if self.trace_format not in ("text", "json"):
            raise ValueError(f"unknown trace format {self.trace_format}")

    @staticmethod
    def from_namespace(options: argparse.Namespace) -> "RunConfig":
        """
        Gather parsed options, falling back to the environment for the
        signature path.
        """
        signature = options.signature
        if signature is None and os.environ.get(SIGNATURE_ENV):
            signature = Path(os.environ[SIGNATURE_ENV])
        return RunConfig(
            command=options.command,
            input_path=getattr(options, "input", None),
            signature_path=signature,
            entry=getattr(options, "entry", "main"),
            emit_format=options.format,
            fuel=getattr(options, "fuel", DEFAULT_FUEL),
            traces=getattr(options, "traces", False),
            trace_format=getattr(options, "trace_format", "json"),
            unchecked=getattr(options, "unchecked", False),
            args=getattr(options, "arg", None) or [],
            out=getattr(options, "out", None),
            trials=getattr(options, "trials", 1000),
            depth=getattr(options, "depth", 6),
            seed=getattr(options, "seed", 0),
        )


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--signature",
        help="path to a JSON gate signature (default: $"
        + SIGNATURE_ENV
        + " or the built-in signature)",
        default=None,
        type=Path,
    )
    parser.add_argument(
        "--format",
        choices=("text", "json"),
        default="text",
        help="output format",
    )
    parser.add_argument(
        "--log-level",
        default="WARNING",
        help="logging level for diagnostics on standard error",
    )


def _add_program(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("input", type=Path, help="program file")
    parser.add_argument(
        "--entry",
        default="main",
        help="name of the entry definition",
    )


def _add_evaluation(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--fuel",
        type=int,
        default=DEFAULT_FUEL,
        help="maximum number of evaluation steps",
    )
    parser.add_argument(
        "--traces",
        action="store_true",
        help="write one record per evaluation step to standard error",
    )
    parser.add_argument(
        "--trace-format",
        choices=("json", "text"),
        default="json",
        help="traces as JSON lines or as readable text",
    )


def _add_meta(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--trials", type=int, default=1000, help="number of trials"
    )
    parser.add_argument(
        "--depth", type=int, default=6, help="maximum term depth"
    )
    parser.add_argument("--seed", type=int, default=0, help="master seed")
    parser.add_argument(
        "--fuel",
        type=int,
        default=DEFAULT_FUEL,
        help="maximum number of evaluation steps per trial",
    )


class Driver:
    """
    Command line tool over the `pqm_tools` library.
    """

    @staticmethod
    def parse_arguments(
        argv: Optional[Sequence[str]] = None,
    ) -> argparse.Namespace:
        """
        Parse command line arguments.
        """
        parser = argparse.ArgumentParser(prog="pqm")
        commands = parser.add_subparsers(dest="command", required=True)

        check = commands.add_parser("check", help="type check a program")
        _add_program(check)
        _add_common(check)

        run = commands.add_parser("run", help="evaluate the entry")
        _add_program(run)
        _add_common(run)
        _add_evaluation(run)
        run.add_argument(
            "--unchecked",
            action="store_true",
            help="skip type checking and evaluate the entry as is",
        )

        box = commands.add_parser(
            "box", help="emit the circuit described by the entry"
        )
        _add_program(box)
        _add_common(box)
        _add_evaluation(box)
        box.add_argument(
            "--arg",
            action="append",
            help="parameter literal for an entry of type P -o ...; "
            + "repeat to emit a circuit family",
        )
        box.add_argument(
            "--out",
            type=Path,
            default=None,
            help="write the circuits to this path instead of stdout",
        )

        meta = commands.add_parser(
            "meta", help="run the metatheory property suite"
        )
        _add_common(meta)
        _add_meta(meta)

        return parser.parse_args(argv)

    config: RunConfig
    log: logging.Logger
    stdout: TextIO
    stderr: TextIO

    def __init__(
        self,
        config: RunConfig,
        stdout: Optional[TextIO] = None,
        stderr: Optional[TextIO] = None,
    ) -> None:
        self.log = logging.getLogger(__name__)
        self.config = config
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr
        self._signature: Optional[Signature] = None
        self._environment: Optional[Dict[str, ConstantDecl]] = None

    # setup

    def signature(self) -> Signature:
        """
        Active signature: the configured file or the built-in one.
        """
        if self._signature is None:
            path = self.config.signature_path
            if path is None:
                self._signature = default_signature()
            else:
                self.log.debug(f"loading signature from {path}")
                self._signature = load_signature(str(path))
        return self._signature

    def environment(self) -> Dict[str, ConstantDecl]:
        """
        Constants available to programs.
        """
        if self._environment is None:
            self._environment = builtin_environment(self.signature())
        return self._environment

    def checker(self) -> Checker:
        """
        Type checker over the active constants.
        """
        return Checker(constant_types(self.environment()), self.signature())

    def evaluator(self) -> Evaluator:
        """
        Evaluator with the configured budget and tracing.
        """
        return Evaluator(
            self.signature(),
            self.environment(),
            self.config.fuel,
            self.config.traces,
        )

    def load_program(self) -> SourceProgram:
        """
        Read and parse the input program.
        """
        assert self.config.input_path is not None
        try:
            text = self.config.input_path.read_text(encoding="utf-8")
        except UnicodeDecodeError as e:
            raise CommandFailure(
                EXIT_IO_ERROR,
                f"{self.config.input_path} is not UTF-8 text: {e.reason}",
            )
        program = parse_program(
            text, set(self.environment()), self.signature().wire_types
        )
        self.log.debug(f"parsed definitions {program.names()}")
        return program

    def entry_type(self, program: SourceProgram) -> Type:
        """
        Check the entry and the definitions it needs.
        """
        found = self.checker().check_entry(program, self.config.entry)
        self.log.debug(f"entry {self.config.entry} checks at {found}")
        return found

    # commands

    def execute(self) -> int:
        """
        Run the configured command and return its exit status.
        """
        handlers = {
            "check": self.cmd_check,
            "run": self.cmd_run,
            "box": self.cmd_box,
            "meta": self.cmd_meta,
        }
        try:
            return handlers[self.config.command]()
        except (SyntaxFailure, WellFormednessError, SignatureError) as e:
            self.report("parse error", e)
            return EXIT_PARSE_ERROR
        except TypeCheckError as e:
            self.diagnose(e)
            return EXIT_TYPE_ERROR
        except SourceProgram.UnknownEntry as e:
            self.report("error", e)
            return EXIT_TYPE_ERROR
        except CommandFailure as e:
            self.report("error", e)
            return e.status
        except OSError as e:
            self.report("I/O error", e)
            return EXIT_IO_ERROR
        except RecursionError as e:
            self.report("nesting too deep", e)
            return EXIT_FUEL_EXHAUSTED

    def cmd_check(self) -> int:
        """
        Type check every definition and the entry.
        """
        program = self.load_program()
        checker = self.checker()
        declared = checker.check_program(program)
        if self.config.entry in declared:
            checker.check_entry(program, self.config.entry)
        if self.config.emit_format == "json":
            self.emit(
                {name: str(t) for name, t in declared.items()},
            )
        else:
            for name, declared_type in declared.items():
                self.write(f"{name} : {declared_type}\n")
        return EXIT_OK

    def cmd_run(self) -> int:
        """
        Evaluate the entry against the empty circuit and print the value.
        """
        program = self.load_program()
        if not self.config.unchecked:
            self.entry_type(program)
        result = self.evaluate(program.desugar(self.config.entry))
        mapping = result.circuit.canonical_renaming()
        circuit = result.circuit.rename(mapping)
        value = rename_labels(result.value, mapping)
        if self.config.emit_format == "json":
            self.emit(
                {"value": self.value_json(value), "circuit": circuit}
            )
            return EXIT_OK
        if isinstance(value, BoxedCirc):
            self.write(boxed_to_text(value.boxed.canonicalize()) + "\n")
        else:
            self.write(f"{value}\n")
        if circuit.size() or circuit.outputs:
            self.write("circuit:\n")
            self.write(circuit_to_text(circuit))
            self.write("\n")
        return EXIT_OK

    def cmd_box(self) -> int:
        """
        Emit the circuit, or circuit family, the entry describes.
        """
        program = self.load_program()
        entry_type = self.entry_type(program)
        term = program.desugar(self.config.entry)
        parameter, result_type = self.family_shape(entry_type)
        if parameter is None:
            if self.config.args:
                raise CommandFailure(
                    EXIT_TYPE_ERROR,
                    f"entry of type {entry_type} takes no --arg",
                )
            members = [self.emitted(term, result_type)]
        else:
            if not self.config.args:
                raise CommandFailure(
                    EXIT_TYPE_ERROR,
                    f"entry of type {entry_type} needs --arg values",
                )
            members = [
                self.emitted(
                    App(term, self.argument(text, parameter)), result_type
                )
                for text in self.config.args
            ]
        self.log.info(f"emitting sizes {[m[1] for m in members]}")
        if self.config.emit_format == "json":
            documents = [document for document, _, _ in members]
            text = json.dumps(
                documents[0] if len(documents) == 1 else documents,
                indent=4,
                cls=JSONEncoder,
            )
            self.output(text + "\n")
        else:
            blocks = []
            for (_, _, rendered), arg in zip(
                members, self.config.args or [None]
            ):
                header = "" if arg is None else f"# arg {arg}\n"
                blocks.append(header + rendered + "\n")
            self.output("\n".join(blocks))
        return EXIT_OK

    def cmd_meta(self) -> int:
        """
        Run the property suite; failures give exit status 1.
        """
        signature = self.signature()
        targets = tuple(
            t
            for t in DEFAULT_TARGETS
            if set(wire_names(t)) <= signature.wire_types
        )
        spec = GenSpec(
            max_depth=self.config.depth,
            signature=signature,
            targets=targets,
            seed=self.config.seed,
        )
        reports = PropertySuite(spec, self.config.fuel).run(
            self.config.trials
        )
        if self.config.emit_format == "json":
            self.emit(reports)
        else:
            for report in reports:
                verdict = "ok" if report.passed() else "FAILED"
                self.write(
                    f"{report.name}: {report.trials} trials, "
                    f"{len(report.failures)} failures ({verdict})\n"
                )
                for failure in report.failures:
                    self.write(
                        f"  seed {failure.seed} depth {failure.depth}: "
                        f"{failure.detail}\n    {failure.term}\n"
                    )
        failed = any(not report.passed() for report in reports)
        return EXIT_TYPE_ERROR if failed else EXIT_OK

    # helpers

    def evaluate(self, term: Term) -> ValueConfig:
        """
        Evaluate `term` from the empty circuit; run-time errors and fuel
        exhaustion become command failures.
        """
        evaluator = self.evaluator()
        evaluator.reset_traces()
        outcome: EvalOutcome = evaluator.run(term)
        if self.config.traces and self.config.trace_format == "text":
            print_traces(evaluator.get_traces(), self.stderr)
        elif self.config.traces:
            write_traces(evaluator.get_traces(), self.stderr)
        if isinstance(outcome, ErrorOutcome):
            raise CommandFailure(EXIT_EVAL_ERROR, str(outcome))
        if isinstance(outcome, FuelExhausted):
            raise CommandFailure(EXIT_FUEL_EXHAUSTED, str(outcome))
        self.log.debug(
            f"evaluated in {outcome.steps} steps, "
            f"{outcome.circuit.size()} gates"
        )
        return outcome

    def family_shape(self, entry_type: Type) -> Tuple[Optional[Type], Type]:
        """
        Split an entry type into its parameter, if any, and the emitted
        type: a circuit type or a state type.
        """

        def emittable(t: Type) -> bool:
            return isinstance(t, Circ) or is_state_type(t)

        if emittable(entry_type):
            return None, entry_type
        if (
            isinstance(entry_type, Lolli)
            and is_parameter_type(entry_type.arg)
            and emittable(entry_type.result)
        ):
            return entry_type.arg, entry_type.result
        raise CommandFailure(
            EXIT_TYPE_ERROR,
            f"cannot box an entry of type {entry_type}: expected Circ(T, U),"
            + " a state type, or a parameter type -o either",
        )

    def argument(self, text: str, parameter: Type) -> Term:
        """
        Parse and check one `--arg` literal. `left ()` and `right ()` are
        accepted for booleans.
        """
        compact = "".join(text.split())
        if parameter == Sum(Unit(), Unit()) and compact in (
            "left()",
            "right()",
        ):
            constructor = Left if compact == "left()" else Right
            return constructor(Unit(), Unit(), UnitV())
        term = parse_source_term(
            text, set(self.environment()), self.signature().wire_types
        )
        self.checker().check({}, {}, term, parameter)
        return term

    def emitted(self, term: Term, result_type: Type) -> Tuple[Any, int, str]:
        """
        Evaluate one family member: its JSON document, gate count and
        text rendering.
        """
        result = self.evaluate(term)
        if isinstance(result_type, Circ):
            if not isinstance(result.value, BoxedCirc):
                raise CommandFailure(
                    EXIT_EVAL_ERROR, f"not a boxed circuit: {result.value}"
                )
            boxed = result.value.boxed.canonicalize()
            return boxed_to_json(boxed), boxed.size(), boxed_to_text(boxed)
        mapping = result.circuit.canonical_renaming()
        circuit = result.circuit.rename(mapping)
        value = rename_labels(result.value, mapping)
        return (
            state_to_json(circuit, value, result_type),
            circuit.size(),
            circuit_to_text(circuit) + f"\nvalue: {value}",
        )

    def value_json(self, value: Term) -> Any:
        """
        JSON rendering of a run result.
        """
        if isinstance(value, BoxedCirc):
            return boxed_to_json(value.boxed.canonicalize())
        return json.loads(json.dumps(value, cls=JSONEncoder))

    def emit(self, document: Any) -> None:
        """
        Write a JSON document to standard output.
        """
        self.write(json.dumps(document, indent=4, cls=JSONEncoder) + "\n")

    def write(self, text: str) -> None:
        """
        Write to standard output.
        """
        self.stdout.write(text)

    def output(self, text: str) -> None:
        """
        Write to `--out` when given, else to standard output.
        """
        if self.config.out is None:
            self.write(text)
            return
        self.config.out.write_text(text, encoding="utf-8")
        self.log.info(f"wrote {self.config.out}")

    def report(self, kind: str, error: Exception) -> None:
        """
        Print an error message on standard error.
        """
        self.stderr.write(f"{kind}: {error}\n")

    def diagnose(self, error: TypeCheckError) -> None:
        """
        Print a type error as a diagnostic on standard error.
        """
        diagnostic = error.diagnostic()
        if self.config.emit_format == "json":
            self.stderr.write(
                json.dumps(diagnostic, cls=JSONEncoder, sort_keys=True) + "\n"
            )
        else:
            path = self.config.input_path or ""
            self.stderr.write(f"{path}:{diagnostic}\n")


def state_to_json(
    circuit: LabelledCircuit, value: Term, state_type: Type
) -> Dict[str, Any]:
    """
    JSON document for a circuit built at top level: the circuit, the
    value holding its outputs, and the value's type.
    """
    return {
        "type": {"in": str(Unit()), "out": str(state_type)},
        "circuit": circuit_to_json(circuit),
        "out": json.loads(json.dumps(value, cls=JSONEncoder)),
        "size": circuit.size(),
    }


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse `argv`, configure logging and execute the command.
    """
    options = Driver.parse_arguments(argv)
    logging.basicConfig(level=options.log_level.upper())
    try:
        config = RunConfig.from_namespace(options)
    except ValueError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_PARSE_ERROR
    return Driver(config).execute()


def main() -> None:
    """
    Checks, runs or boxes the specified program.
    """
    sys.exit(run())


def meta_main() -> None:
    """
    Runs the metatheory property suite.
    """
    sys.exit(run(["meta"] + sys.argv[1:]))
