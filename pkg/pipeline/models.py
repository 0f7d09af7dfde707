# pipeline/models.py
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from django.db import models
from django.utils.translation import gettext_lazy as _

from sbp.models import SbpMethod


class Subcommand(models.TextChoices):
    ENCODE = "encode", _("Encode as colored graph")
    SYMS = "syms", _("Symmetry generators")
    SBP = "sbp", _("Conjoin symmetry-breaking predicate")
    SOLVE = "solve", _("Solve")
    COMPARE = "compare", _("Compare runs with and without SBP")


class OutputFormat(models.TextChoices):
    TEXT = "text", _("Text")
    DOT = "dot", _("Graphviz DOT")
    DIMACS = "dimacs", _("DIMACS")


# SAT-solver exit codes
EXIT_SAT = 10
EXIT_UNSAT = 20


@dataclass(frozen=True)
class CliConfig:
    subcommand: Subcommand
    input_path: str
    method: SbpMethod = SbpMethod.LEX
    auto_sbp: bool = False
    output_format: OutputFormat = OutputFormat.TEXT
    all_solutions: bool = False
    fragment: bool = False


class CommandOutcome(NamedTuple):
    text: str
    exit_code: int = 0
