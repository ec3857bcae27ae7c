"""Timing of constructions and verifications."""

import logging
from functools import wraps
from time import perf_counter
from typing import Callable

logger = logging.getLogger(__name__)

# Anything slower is logged at WARNING
SLOW_OPERATION_MS = 5000


def monitor_performance(func: Callable) -> Callable:
    """Decorator to log how long a function takes.

    Args:
        func: The function to monitor.

    Returns:
        The wrapped function.
    """

    @wraps(func)
    def wrapper(*args, **kwargs):
        start_time = perf_counter()
        try:
            result = func(*args, **kwargs)
        except Exception as e:
            duration = (perf_counter() - start_time) * 1000
            logger.error(
                f"{func.__name__} failed after {duration:.2f}ms with error: {e}"
            )
            raise
        duration = (perf_counter() - start_time) * 1000
        if duration > SLOW_OPERATION_MS:
            logger.warning(f"Slow operation: {func.__name__} took {duration:.2f}ms")
        else:
            logger.info(f"{func.__name__} completed in {duration:.2f}ms")
        return result

    return wrapper
