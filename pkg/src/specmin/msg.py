"""
Standardized diagnostic output for specmin.

Diagnostics go to stderr by default so that the JSON records the CLI writes to
stdout stay machine-readable. Messages can also be kept in an in-memory log.
"""

import re
import sys
import time
from threading import RLock

DEBUG = False

MESSAGE_LOG = []
INFO_LOG = []

LOG_INFO_OUTPUT = True

STANDARD_OUTPUT = True

# Regexes of message text to suppress (see `filter_messages`)
SUPPRESSED = []

# Minimum seconds between two `progress` lines for the same label
PROGRESS_INTERVAL = 2.0

log_lock = RLock()
progress_stamps = {}


def set_debug(val):
    global DEBUG
    DEBUG = val


def get_debug():
    return DEBUG


def clear_message_log():
    global MESSAGE_LOG, INFO_LOG
    with log_lock:
        MESSAGE_LOG = []
        INFO_LOG = []


def get_message_log():
    with log_lock:
        if LOG_INFO_OUTPUT and len(INFO_LOG) > 0:
            MESSAGE_LOG.append({ "type": "info", "message": "\n".join(INFO_LOG) })
            INFO_LOG.clear()
        return list(MESSAGE_LOG)


def filter_messages(pattern=None):
    '''Stop echoing messages

    With no pattern all output is silenced, otherwise only messages whose
    text matches the regex `pattern` are dropped.
    '''
    global STANDARD_OUTPUT
    if pattern is None:
        STANDARD_OUTPUT = False
    else:
        SUPPRESSED.append(re.compile(pattern))


def unfilter_messages():
    global STANDARD_OUTPUT
    STANDARD_OUTPUT = True
    SUPPRESSED.clear()


def disable_info_logging():
    global LOG_INFO_OUTPUT
    LOG_INFO_OUTPUT = False


def _echo(text):
    if not STANDARD_OUTPUT:
        return False
    return not any(rx.search(text) for rx in SUPPRESSED)


def _record(kind, text):
    with log_lock:
        MESSAGE_LOG.append({ "type": kind, "message": text })


def dbg(msg, target=None):
    if DEBUG:
        if target is None: target = sys.stderr
        msgText = msg if isinstance(msg, str) else str(msg)
        if _echo(msgText):
            print(f"DEBUG: {msgText}", file=target)
        _record("debug", msgText)


def info(msg, indent="", target=None):
    if target is None: target = sys.stderr
    msgText = str(msg)
    if _echo(msgText):
        print(f"{indent}{msgText}", file=target)
    if LOG_INFO_OUTPUT:
        with log_lock:
            INFO_LOG.append(msgText)


def warn(msg, indent="", target=None):
    if target is None: target = sys.stderr
    msgText = str(msg)
    if _echo(msgText):
        print(f"{indent}WARNING: {msgText}", file=target)
    _record("warn", msgText)


def err(msg, indent="", target=None):
    if target is None: target = sys.stderr
    msgText = str(msg)
    if _echo(msgText):
        print(f"{indent}ERROR: {msgText}", file=target)
    _record("error", msgText)


def progress(label, done, total):
    '''Throttled debug line for long-running searches'''
    if not DEBUG:
        return
    now = time.monotonic()
    with log_lock:
        last = progress_stamps.get(label)
        if last is not None and now - last < PROGRESS_INTERVAL and done < total:
            return
        progress_stamps[label] = now
    dbg(f"{label}: {done}/{total}")


def s_if_plural(count):
    return "" if count == 1 else "s"
