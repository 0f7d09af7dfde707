# pipeline/management/commands/solve.py
from solver.services import format_result, solve

from ...models import EXIT_SAT, EXIT_UNSAT, CommandOutcome, Subcommand
from ...services import break_symmetries
from ..base import PipelineCommand


class Command(PipelineCommand):
    help = "Solve with the DPLL solver; exits 10 when satisfiable, 20 when not."
    subcommand = Subcommand.SOLVE

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_method_argument(parser)
        parser.add_argument("--auto-sbp", action="store_true", help="detect symmetries and conjoin an SBP first")
        parser.add_argument("--all-solutions", action="store_true", help="walk the whole tree and count models")

    def run(self, config, formula):
        target, extra = formula, []
        if config.auto_sbp:
            broken = break_symmetries(formula, config.method)
            target = broken.formula
            extra += [
                f"c generators: {len(broken.generators)}",
                f"c sbp_clauses: {len(broken.sbp)}",
                f"c sbp_aux_vars: {broken.sbp.num_aux_vars}",
            ]

        result = solve(target, all_solutions=config.all_solutions)
        if config.all_solutions:
            extra.append(f"c models: {result.num_models}")

        text = format_result(result, num_vars=formula.num_vars) + "".join(line + "\n" for line in extra)
        return CommandOutcome(text, EXIT_SAT if result.is_sat else EXIT_UNSAT)
