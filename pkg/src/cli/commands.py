"""
The five commands behind `pd-schauder`.

Results are written to --out or stdout as JSON (dense features as CSV);
logs go to stderr. Every SchauderError or OSError becomes exit code 2.
"""

import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO, Tuple

import numpy as np
from loguru import logger

from ..basis import BasisConfig, kernel_table
from ..diagrams import SignedDiagram, diagram_norm, optimal_matching, parse_rectangles, read_diagram
from ..errors import BasisConfigError, PairMismatchError, SchauderError, WassersteinError
from ..featurize import batch_vectorize, tail_bound, vectorize
from ..geometry import PolyhedralPair
from ..triangulation import mesh_diameter
from .config import RunConfig
from .suites import SuiteRunner
from .viz import build_bundle

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


class CommandRunner:
    """Dispatches a command name to its handler and maps failures to exit codes."""

    def __init__(self, config: RunConfig, stdout: Optional[TextIO] = None):
        self.config = config
        self.stdout = stdout if stdout is not None else sys.stdout
        self.logger = logger.bind(module="CommandRunner")

    def execute(self, command: str, params: Optional[Dict[str, Any]] = None) -> int:
        params = params or {}
        dispatch = {
            "vectorize": lambda: self.cmd_vectorize(params.get("inputs", []), dense=params.get("dense", False)),
            "distance": lambda: self.cmd_distance(
                params["file_a"], params["file_b"], matching=params.get("matching", False)
            ),
            "check": lambda: self.cmd_check(params.get("suites"), params.get("trials")),
            "viz-export": lambda: self.cmd_viz_export(params["input"]),
            "basis-info": lambda: self.cmd_basis_info(),
        }
        handler = dispatch.get(command)
        if not handler:
            self.logger.error(f"Unknown command: {command}")
            return EXIT_INPUT_ERROR

        self.logger.info(f"{command} started")
        try:
            status = handler()
        except (SchauderError, OSError) as exc:
            self.logger.error(f"{command} failed: {exc}")
            return EXIT_INPUT_ERROR
        if status == EXIT_OK:
            self.logger.success(f"{command} finished")
        return status

    # -- helpers ----------------------------------------------------------

    def _emit(self, text: str, path: Optional[str] = None) -> None:
        if path:
            Path(path).write_text(text + "\n", encoding="utf-8")
            self.logger.info(f"wrote {path}")
        else:
            self.stdout.write(text + "\n")

    def _read_all(self, paths: Sequence[str]) -> Tuple[PolyhedralPair, List[SignedDiagram]]:
        """Read inputs on the configured pair; rects/mixup inputs may supply the pair themselves."""
        if not paths:
            raise BasisConfigError("no input files given")
        pair = self.config.resolve_pair()
        if pair is None and not self.config.carries_pair:
            raise BasisConfigError(f"--pair is required for {self.config.format} input")
        diagrams = []
        for path in paths:
            diagram = read_diagram(path, self.config.format, pair)
            pair = diagram.pair
            diagrams.append(diagram)
        return pair, diagrams

    def _summary(self, config: BasisConfig, diagram: SignedDiagram) -> Dict[str, Any]:
        out: Dict[str, Any] = {"points": len(diagram), "tail_bound": None, "w1_empty": None}
        try:
            out["tail_bound"] = tail_bound(config, diagram)
            out["w1_empty"] = diagram_norm(config.pair, diagram)
        except WassersteinError as exc:
            self.logger.warning(f"W1-based figures unavailable: {exc}")
        return out

    # -- commands ---------------------------------------------------------

    def cmd_vectorize(self, inputs: Sequence[str], dense: bool = False) -> int:
        pair, diagrams = self._read_all(inputs)
        config = self.config.basis_config(pair)
        self.logger.info(f"basis {config.kind.value} on {pair.describe()}: {config.size} indices")

        if dense:
            if not self.config.out:
                raise BasisConfigError("--dense writes CSV and needs --out")
            matrix = batch_vectorize(config, diagrams, self.config.workers)
            np.savetxt(self.config.out, matrix, delimiter=",", fmt="%.17g")
            sidecar = {
                "config": config.to_dict(),
                "size": config.size,
                "inputs": list(inputs),
                "columns": [v.to_json() for v in config.ordering.iter_vertices()],
            }
            self._emit(json.dumps(sidecar), self.config.out + ".json")
            for path, diagram, row in zip(inputs, diagrams, matrix):
                summary = {"input": path, "l1": float(np.abs(row).sum()), **self._summary(config, diagram)}
                self.stdout.write(json.dumps(summary) + "\n")
            return EXIT_OK

        records = []
        for path, diagram in zip(inputs, diagrams):
            fv = vectorize(config, diagram)
            record = {
                "input": path,
                "l1": fv.l1_norm,
                **self._summary(config, diagram),
                "window_exits": fv.window_exits,
                "window_exit_mass": fv.window_exit_mass,
            }
            records.append((record, fv))
        document = {
            "config": config.to_dict(),
            "size": config.size,
            "vectors": [{**r, "entries": {str(i): a for i, a in fv.entries.items()}} for r, fv in records],
        }
        if self.config.out:
            self._emit(json.dumps(document), self.config.out)
            for record, _ in records:
                self.stdout.write(json.dumps(record) + "\n")
        else:
            self._emit(json.dumps(document))
        return EXIT_OK

    def cmd_distance(self, file_a: str, file_b: str, matching: bool = False) -> int:
        pair, (alpha, beta) = self._read_all([file_a, file_b])
        result = optimal_matching(pair, alpha, beta)
        document: Dict[str, Any] = {"w1": result.cost}
        if matching:
            document["matching"] = result.to_dict()["pairs"]
        self._emit(json.dumps(document), self.config.out)
        return EXIT_OK

    def cmd_check(self, suites: Optional[Sequence[str]] = None, trials: Optional[int] = None) -> int:
        if self.config.pair is not None:
            self.config.resolve_pair()
        runner = SuiteRunner(self.config.seed, trials)
        report = runner.run(suites)
        text = json.dumps(report, indent=2)
        self.stdout.write(text + "\n")
        if self.config.out:
            self._emit(text, self.config.out)
        if not report["passed"]:
            failed = [s["name"] for s in report["suites"] if not s["passed"]]
            self.logger.warning(f"failed suites: {', '.join(failed)}")
            return EXIT_CHECK_FAILED
        return EXIT_OK

    def cmd_viz_export(self, input_path: str) -> int:
        rectangles = None
        if self.config.format == "rects":
            with open(input_path, "r", encoding="utf-8") as fh:
                diagram, rectangles = parse_rectangles(fh)
            wanted = self.config.resolve_pair()
            if wanted is not None and wanted != diagram.pair:
                raise PairMismatchError(
                    f"rects input lives on {diagram.pair.describe()}, basis uses {wanted.describe()}"
                )
            pair = diagram.pair
        else:
            pair, (diagram,) = self._read_all([input_path])
        config = self.config.basis_config(pair)
        bundle = build_bundle(config, diagram, rectangles)
        self.logger.info(f"viz bundle with {len(bundle.records)} records")
        self._emit(bundle.to_json(), self.config.out)
        return EXIT_OK

    def cmd_basis_info(self) -> int:
        config = self.config.basis_config()
        tri = config.triangulation
        ordering = config.ordering
        info = {
            "config": config.to_dict(),
            "dimension": config.dimension,
            "size": config.size,
            "layer_counts": ordering.layer_counts(),
            "lipschitz": config.schedule.values(config.max_layer),
            "lipschitz_total": config.total_lipschitz,
            "llf_constant": config.llf_constant,
            "cfk_constant": config.cfk_constant,
            "mesh_diameters": [mesh_diameter(tri, n) for n in range(config.max_layer + 1)],
            "kernel_peaks": list(kernel_table(config).values()),
            "tail_coefficient": config.tail_coefficient,
        }
        self._emit(json.dumps(info, indent=2), self.config.out)
        return EXIT_OK
