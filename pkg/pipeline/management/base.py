# pipeline/management/base.py
from __future__ import annotations

import logging
from typing import Any, Dict, Final

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from cnf.models import CnfFormula
from sbp.models import PairwiseInapplicable, SbpMethod

from ..forms import CliConfigForm
from ..models import CliConfig, CommandOutcome, Subcommand
from ..services import read_formula

logger: Final = logging.getLogger(__name__)

# exit status for input and option errors, and for an inapplicable SBP method
EXIT_INPUT_ERROR = 1
EXIT_METHOD_INAPPLICABLE = 2


class PipelineCommand(BaseCommand):
    """Shared input handling; subclasses implement :meth:`run`."""

    subcommand: Subcommand
    stealth_options = ("stdin",)

    def add_arguments(self, parser):
        parser.add_argument("input", help="DIMACS CNF file, or - for standard input")

    @staticmethod
    def add_method_argument(parser):
        parser.add_argument("--method", choices=SbpMethod.values, help="SBP construction (default: lex)")

    def form_data(self, options: Dict[str, Any]) -> Dict[str, Any]:
        return {
            "subcommand": self.subcommand.value,
            "input_path": options["input"],
            "method": options.get("method") or "",
            "auto_sbp": options.get("auto_sbp", False),
            "output_format": options.get("format") or "",
            "all_solutions": options.get("all_solutions", False),
            "fragment": options.get("fragment", False),
        }

    def handle(self, *args, **options):
        form = CliConfigForm(data=self.form_data(options))
        if not form.is_valid():
            raise CommandError(form.error_text(), returncode=EXIT_INPUT_ERROR)
        config = form.to_config()
        logger.debug("%s: %s", self.subcommand.value, config)

        try:
            formula = read_formula(config.input_path, options.get("stdin"))
            outcome = self.run(config, formula)
        except PairwiseInapplicable as exc:
            raise CommandError(" ".join(exc.messages), returncode=EXIT_METHOD_INAPPLICABLE) from exc
        except ValidationError as exc:
            raise CommandError(" ".join(exc.messages), returncode=EXIT_INPUT_ERROR) from exc

        self.stdout.write(outcome.text, ending="")
        if outcome.exit_code:
            raise SystemExit(outcome.exit_code)

    def run(self, config: CliConfig, formula: CnfFormula) -> CommandOutcome:
        raise NotImplementedError
