from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class LFunctionsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'lfunctions'
    verbose_name = _("L-functions")

    def ready(self):
        """Check the configured worker count once settings are loaded"""
        from lfunctions.settings import get_lfunctions_setting
        import logging

        logger = logging.getLogger(__name__)
        threads = get_lfunctions_setting('THREADS')
        if threads < 1:
            logger.warning(f"LFUNCTIONS_THREADS={threads} is below 1, using a single worker")
