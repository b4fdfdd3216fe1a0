"""
Logging setup driven by LOG_LEVEL / LOG_FILE (see settings).
"""
import logging

import settings

_LEVELS = {0: logging.CRITICAL + 1, 1: logging.INFO, 2: logging.DEBUG}
_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
_HANDLER_TAG = "_llq_handler"


def setup_logging() -> logging.Logger:
    """
    Configure the root logger once. Calling it again replaces the handler
    installed by a previous call instead of stacking a second one.
    """
    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, _HANDLER_TAG, False):
            root.removeHandler(handler)
            handler.close()

    level = settings.log_level()
    path = settings.log_file()
    handler: logging.Handler
    if path:
        handler = logging.FileHandler(path, encoding="utf-8")
    else:
        handler = logging.StreamHandler()
    setattr(handler, _HANDLER_TAG, True)
    handler.setFormatter(logging.Formatter(_FORMAT))
    root.addHandler(handler)
    root.setLevel(_LEVELS[level])
    return root
