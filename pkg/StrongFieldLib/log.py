#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#

## @package log
# Basic logging
#
# This module enables having logging in different contexts. The default context
# prints the messages to stderr, prepending [INFO   ], [WARNING] or [ERROR  ]
# depending on the message type, so that CSV written to stdout stays clean.
#
# Contexts can be derived with a prefix (see _Log.child) to tell apart the
# messages of concurrent scan points.

import sys as sys;
import time as time;
import threading as threading;
from contextlib import contextmanager;

## Default verbosity of new contexts.
DEFAULT_VERBOSITY = 2;

## Verbosity from which debug messages are displayed.
DEBUG_LEVEL = 3;

_write_lock = threading.Lock();

def _stderr_sink(tag):
  def _sink(message):
    with _write_lock:
      sys.stderr.write(tag + ' : ' + str(message) + '\n');
      sys.stderr.flush();
  return _sink;

## Holder of logging functions. Serves as a context for logging.
class _Log:
  ## Initializes a _Log
  #  @param self An instance of _Log.
  #  @param prefix (str) Text prepended to every message of this context.
  #  @note Use the methods log.get_default_context and log.new_context to get a logger.
  def __init__(self, prefix=''):

    self.info_fn    = _stderr_sink('[INFO   ]');
    self.warning_fn = _stderr_sink('[WARNING]');
    self.error_fn   = _stderr_sink('[ERROR  ]');
    self.verbosity  = DEFAULT_VERBOSITY;
    self.prefix     = prefix;

  ## Sets the info logging function.
  #  @param self An instance of _Log.
  #  @param info_fn A function(msg:str) to call every time the info method is invoked.
  def set_info_fn(self, info_fn):
    self.info_fn = info_fn;

  ## Sets the warning logging function.
  #  @param self An instance of _Log.
  #  @param warning_fn: A function(msg:str) to call every time the warning method is invoked.
  def set_warning_fn(self, warning_fn):
    self.warning_fn = warning_fn;

  ## Sets the error logging function.
  #  @param self An instance of _Log.
  #  @param error_fn A function(msg:str) to call every time the error method is invoked.
  def set_error_fn(self, error_fn):
    self.error_fn = error_fn;

  ## Sets the verbosity threshold.
  #  @param self An instance of _Log.
  #  @param verbosity (int) Messages with a verbosity level lower than this are displayed.
  def set_verbosity(self, verbosity):
    self.verbosity = int(verbosity);

  def _format(self, message):
    if(self.prefix):
      return '[' + self.prefix + '] ' + str(message);
    return str(message);

  ## Calls the info function.
  #
  #  If self.verbosity level is less or equal than the verbosity parameter, the message is omitted.
  #
  #  @param self An instance of _Log.
  #  @param message (str) The message to display.
  #  @param verbosity (int) The verbosity level associated with this message.
  def info(self, message, verbosity=0):
    if(verbosity < self.verbosity):
      self.info_fn(self._format(message));

  ## Info message shown only on verbose runs.
  #  @param self An instance of _Log.
  #  @param message (str) The message to display.
  def debug(self, message):
    self.info(message, DEBUG_LEVEL);

  ## Calls the warning function.
  #
  #  If self.verbosity level is less or equal than the verbosity parameter, the message is omitted.
  #
  #  @param self An instance of _Log.
  #  @param message (str) The message to display.
  #  @param verbosity (int) The verbosity level associated with this message.
  def warning(self, message, verbosity=0):
    if(verbosity < self.verbosity):
      self.warning_fn(self._format(message));

  ## Calls the error function.
  #
  #  Errors ignore the verbosity threshold unless it is zero or negative.
  #
  #  @param self An instance of _Log.
  #  @param message (str) The message to display.
  #  @param verbosity (int) The verbosity level associated with this message.
  def error(self, message, verbosity=0):
    if(verbosity < max(self.verbosity, 1)):
      self.error_fn(self._format(message));

  ## Creates a context sharing sinks and verbosity, with an extra prefix.
  #  @param self An instance of _Log.
  #  @param prefix (str) Prefix to append to the current one.
  #  @returns A new _Log.
  def child(self, prefix):
    result = _Log(prefix if not self.prefix else self.prefix + ' ' + prefix);
    result.info_fn    = self.info_fn;
    result.warning_fn = self.warning_fn;
    result.error_fn   = self.error_fn;
    result.verbosity  = self.verbosity;
    return result;

  ## Logs the wall time spent inside a with block.
  #  @param self An instance of _Log.
  #  @param label (str) Name of the stage.
  #  @param verbosity (int) Verbosity level of the final message.
  @contextmanager
  def timed(self, label, verbosity=2):
    start = time.perf_counter();
    self.info(label + '...', verbosity + 1);
    try:
      yield;
    finally:
      self.info(label + ' done in %.3f s' % (time.perf_counter() - start), verbosity);

  ## @var info_fn
  #  (function(msg:str)) The function that will be called on a self.info call.

  ## @var warning_fn
  #  (function(msg:str)) The function that will be called on a self.warning call.

  ## @var error_fn
  #  (function(msg:str)) The function that will be called on a self.error call.

  ## @var verbosity
  #  (int) Minimum verbosity level of messages that will NOT be logged.

  ## @var prefix
  #  (str) Tag identifying the context, e.g. a scan point.

## The default _Log context.
_log = _Log();

## Obtains the default logging context.
# @returns The default logging context.
def get_default_context():
  return _log;

## Obtains new logging context.
# @param prefix (str) Prefix of the new context.
# @returns A new logging context.
def new_context(prefix=''):
  return _Log(prefix);

## Calls the info function of the default logging context.
# @param message (str) The message to display.
# @param verbosity (int) The verbosity level associated with this message.
# @param context (log._Log) The context to call info on. Uses the default context if omitted.
def info(message, verbosity=0, context=_log):
  context.info(message, verbosity);

## Calls the warning function of the default logging context.
# @param message (str) The message to display.
# @param verbosity (int) The verbosity level associated with this message.
# @param context (log._Log) The context to call info on. Uses the default context if omitted.
def warning(message, verbosity=0, context=_log):
  context.warning(message, verbosity);

## Calls the error function of the default logging context.
# @param message (str) The message to display.
# @param verbosity (int) The verbosity level associated with this message.
# @param context (log._Log) The context to call info on. Uses the default context if omitted.
def error(message, verbosity=0, context=_log):
  context.error(message, verbosity);
