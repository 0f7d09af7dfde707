from django.apps import AppConfig


class EncodingConfig(AppConfig):
    name = 'encoding'
    verbose_name = 'CNF to colored graph'
