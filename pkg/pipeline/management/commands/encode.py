# pipeline/management/commands/encode.py
from encoding.services import encode, to_adjacency_text, to_dot

from ...models import CommandOutcome, OutputFormat, Subcommand
from ..base import PipelineCommand


class Command(PipelineCommand):
    help = "Write the colored graph of a CNF formula as DOT or adjacency text."
    subcommand = Subcommand.ENCODE

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--format", choices=[OutputFormat.DOT, OutputFormat.TEXT], default=None)

    def run(self, config, formula):
        graph = encode(formula)
        if config.output_format == OutputFormat.TEXT:
            return CommandOutcome(to_adjacency_text(graph))
        return CommandOutcome(to_dot(graph))
