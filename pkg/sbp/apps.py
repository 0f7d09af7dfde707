from django.apps import AppConfig


class SbpConfig(AppConfig):
    name = 'sbp'
    verbose_name = 'Symmetry-breaking predicates'
