# pipeline/management/commands/compare.py
from solver.services import compare_runs

from ...models import CommandOutcome, Subcommand
from ...services import break_symmetries, render_report
from ..base import PipelineCommand


class Command(PipelineCommand):
    help = "Report search statistics and explored assignments with and without the SBP."
    subcommand = Subcommand.COMPARE

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_method_argument(parser)

    def run(self, config, formula):
        broken = break_symmetries(formula, config.method)
        report = compare_runs(formula, broken.sbp)
        return CommandOutcome(render_report(report, config.method))
