from time import perf_counter
import logging

logger = logging.getLogger(__name__)


class TimeIt:
    def __init__(self, message="", **context):
        self._message = message
        self._context = context
        self._start = None
        self.elapsed = None

    def __enter__(self):
        if self._context:
            context_str = " ".join(f"{k}={v}" for k, v in self._context.items())
            logger.debug(f"start {self._message} ({context_str})")
        else:
            logger.debug(f"start {self._message}")
        self._start = perf_counter()
        return self

    def __exit__(self, *args):
        self.elapsed = perf_counter() - self._start
        logger.debug(f"end {self._message} -- {self.elapsed:.4f}")
