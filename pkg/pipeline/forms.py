# pipeline/forms.py

from __future__ import annotations

from django import forms
from django.conf import settings
from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from sbp.models import SbpMethod

from .models import CliConfig, OutputFormat, Subcommand

# =============================
# Per-subcommand option rules
# =============================
FORMATS = {
    Subcommand.ENCODE: (OutputFormat.DOT, OutputFormat.TEXT),
    Subcommand.SYMS: (OutputFormat.TEXT, OutputFormat.DIMACS),
    Subcommand.SBP: (OutputFormat.DIMACS,),
    Subcommand.SOLVE: (OutputFormat.TEXT,),
    Subcommand.COMPARE: (OutputFormat.TEXT,),
}
METHOD_SUBCOMMANDS = {Subcommand.SBP, Subcommand.SOLVE, Subcommand.COMPARE}


class CliConfigForm(forms.Form):
    """
    Validates command-line options into a CliConfig.
    - method only for sbp/solve/compare (default SYMBREAK_DEFAULT_METHOD)
    - auto_sbp and all_solutions only for solve, fragment only for sbp
    - output format must be one the subcommand can write; first one is the default
    """

    subcommand = forms.ChoiceField(choices=Subcommand.choices)
    input_path = forms.CharField(label=_("Input"), help_text=_("DIMACS file, or - for standard input."))
    method = forms.ChoiceField(choices=SbpMethod.choices, required=False)
    auto_sbp = forms.BooleanField(required=False)
    output_format = forms.ChoiceField(choices=OutputFormat.choices, required=False)
    all_solutions = forms.BooleanField(required=False)
    fragment = forms.BooleanField(required=False)

    def clean(self):
        cleaned = super().clean()
        sub = cleaned.get("subcommand")
        if not sub:
            return cleaned
        sub = Subcommand(sub)

        method = cleaned.get("method")
        if method and sub not in METHOD_SUBCOMMANDS:
            self.add_error("method", _("--method applies to sbp, solve and compare only."))
        elif not method:
            default = getattr(settings, "SYMBREAK_DEFAULT_METHOD", SbpMethod.LEX)
            if default not in SbpMethod.values:
                raise ValidationError(
                    _("SYMBREAK_DEFAULT_METHOD %(m)s is not an SBP method."), params={"m": default}, code="method"
                )
            cleaned["method"] = default

        for flag, owner in (("auto_sbp", Subcommand.SOLVE), ("all_solutions", Subcommand.SOLVE),
                            ("fragment", Subcommand.SBP)):
            if cleaned.get(flag) and sub != owner:
                self.add_error(flag, _("Only valid for %(sub)s.") % {"sub": owner.value})

        fmt = cleaned.get("output_format")
        if not fmt:
            cleaned["output_format"] = FORMATS[sub][0]
        elif fmt not in FORMATS[sub]:
            self.add_error("output_format", _("%(sub)s cannot write %(fmt)s.") % {"sub": sub.value, "fmt": fmt})
        return cleaned

    def to_config(self) -> CliConfig:
        data = self.cleaned_data
        return CliConfig(
            subcommand=Subcommand(data["subcommand"]),
            input_path=data["input_path"],
            method=SbpMethod(data["method"]),
            auto_sbp=bool(data.get("auto_sbp")),
            output_format=OutputFormat(data["output_format"]),
            all_solutions=bool(data.get("all_solutions")),
            fragment=bool(data.get("fragment")),
        )

    def error_text(self) -> str:
        return "; ".join(
            f"{field}: {' '.join(str(m) for m in messages)}" if field != "__all__" else " ".join(str(m) for m in messages)
            for field, messages in self.errors.items()
        )
