import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "_project.settings")
django.setup()
