from django.apps import AppConfig


class CnfConfig(AppConfig):
    name = 'cnf'
    verbose_name = 'CNF core'
