from django.apps import AppConfig


class AutomorphismConfig(AppConfig):
    name = 'automorphism'
    verbose_name = 'Graph automorphisms'
