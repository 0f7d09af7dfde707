# pipeline/management/commands/sbp.py
from cnf.services import write_dimacs
from sbp.services import write_fragment

from ...models import CommandOutcome, Subcommand
from ...services import break_symmetries
from ..base import PipelineCommand


class Command(PipelineCommand):
    help = "Conjoin a symmetry-breaking predicate and write the result as DIMACS."
    subcommand = Subcommand.SBP

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_method_argument(parser)
        parser.add_argument("--fragment", action="store_true", help="write only the SBP clauses, no header")

    def run(self, config, formula):
        broken = break_symmetries(formula, config.method)
        if config.fragment:
            return CommandOutcome(write_fragment(broken.sbp))
        return CommandOutcome(write_dimacs(broken.formula))
