# pipeline/management/commands/syms.py
from automorphism.services import find_generators

from ...models import CommandOutcome, OutputFormat, Subcommand
from ..base import PipelineCommand


class Command(PipelineCommand):
    help = "Print symmetry generators, one per line (cycle notation or permutation lines)."
    subcommand = Subcommand.SYMS

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--format", choices=[OutputFormat.TEXT, OutputFormat.DIMACS], default=None)

    def run(self, config, formula):
        gens = find_generators(formula)
        if config.output_format == OutputFormat.DIMACS:
            return CommandOutcome(gens.to_lines())
        return CommandOutcome("".join(line + "\n" for line in gens.renderings))
