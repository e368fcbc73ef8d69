"""Provides a function to log a time duration in a readable form
"""
import logging

logger = logging.getLogger(__name__)


def print_time(seconds):
    '''Log a number of seconds as hours, minutes, seconds

    Returns the formatted string as well, for callers that want to print it.
    '''
    logger.debug("Time spent in seconds: %s", seconds)
    seconds = int(seconds)
    hours, seconds = divmod(seconds, 3600)
    minutes, seconds = divmod(seconds, 60)
    text = "%d hours %d minutes %d seconds" % (hours, minutes, seconds)
    logger.info("Time spent: %s", text)
    return text
