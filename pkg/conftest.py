import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "SymBreak.settings")
django.setup()
