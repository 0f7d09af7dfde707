"""
pipeline/services.py
Glue for the management commands: reading input, the
encode → automorphisms → SBP → conjoin chain, and report rendering.
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Final, List, NamedTuple, Optional, TextIO, Tuple

from django.core.exceptions import ValidationError

from automorphism.models import GeneratorSet
from automorphism.services import find_generators
from cnf.models import CnfFormula
from cnf.services import parse_dimacs
from sbp.models import SbpClauses, SbpMethod
from sbp.services import build_sbp, conjoin
from solver.models import ComparisonReport

logger: Final = logging.getLogger(__name__)

STDIN: Final = "-"


class BrokenFormula(NamedTuple):
    generators: GeneratorSet
    sbp: SbpClauses
    formula: CnfFormula


def read_formula(input_path: str, stdin: Optional[TextIO] = None) -> CnfFormula:
    if input_path == STDIN:
        return parse_dimacs(stdin if stdin is not None else sys.stdin)
    path = Path(input_path)
    try:
        with path.open(encoding="utf-8") as fh:
            return parse_dimacs(fh)
    except OSError as exc:
        raise ValidationError(f"Cannot read {input_path}: {exc.strerror}", code="input") from exc
    except UnicodeDecodeError as exc:
        raise ValidationError(f"Cannot read {input_path}: not UTF-8 text.", code="input") from exc


def break_symmetries(formula: CnfFormula, method: str = SbpMethod.LEX) -> BrokenFormula:
    """Find generators, build the SBP and conjoin it."""
    gens = find_generators(formula)
    sbp = build_sbp(gens, method)
    return BrokenFormula(gens, sbp, conjoin(formula, sbp))


def render_report(report: ComparisonReport, method: str) -> str:
    """Aligned ``label: before → after`` rows."""
    original, augmented = report.original, report.augmented
    numeric: List[Tuple[str, int, Optional[int]]] = [
        ("explored", report.original_explored, report.augmented_explored),
        ("pruned", report.pruned, None),
        ("models", report.original_models, report.augmented_models),
        ("decisions", original.stats.decisions, augmented.stats.decisions),
        ("leaves", original.stats.leaves_visited, augmented.stats.leaves_visited),
        ("conflicts", original.stats.conflicts, augmented.stats.conflicts),
    ]
    text_rows = [
        ("status", f"{original.status} → {augmented.status}"),
        ("status equal", "yes" if report.status_equal else "no"),
    ]
    label_width = max(len(label) for label, *_ in numeric + text_rows)
    value_width = max(len(str(v)) for _, a, b in numeric for v in (a, b) if v is not None)

    lines = [
        f"c {report.num_vars} variables, {method} SBP: "
        f"{report.sbp_clauses} clause(s), {report.sbp_aux_vars} aux variable(s)"
    ]
    for label, before, after in numeric:
        row = f"{label:>{label_width}}: {before:>{value_width}}"
        if after is not None:
            row += f" → {after:>{value_width}}"
        lines.append(row)
    for label, value in text_rows:
        lines.append(f"{label:>{label_width}}: {value}")
    return "\n".join(lines) + "\n"
