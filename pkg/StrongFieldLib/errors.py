#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#

## @package errors
# Exceptions raised by StrongFieldLib and their command line exit codes.

## Exit code of a successful command.
EXIT_OK = 0;
## Exit code for invalid configuration.
EXIT_CONFIG = 1;
## Exit code for numerical failures (eigensolver, integrator, norm drift).
EXIT_NUMERICAL = 2;
## Exit code for file input/output problems.
EXIT_IO = 3;


## Base class of every error raised on purpose by the library.
class StrongFieldError(Exception):
	exit_code = EXIT_NUMERICAL;


## Invalid configuration or parameters.
#
# Messages name the offending key, e.g. 'pulse.cycles'.
class ConfigError(StrongFieldError, ValueError):
	exit_code = EXIT_CONFIG;

	## Initializes a ConfigError
	# @param self An instance of ConfigError.
	# @param message (str) Description of the problem.
	# @param key (str) Dotted path of the offending configuration key, if any.
	def __init__(self, message, key=None):
		StrongFieldError.__init__(self, message);
		self.key = key;


## Failure of a numerical stage.
class NumericalError(StrongFieldError, RuntimeError):
	exit_code = EXIT_NUMERICAL;

	## Initializes a NumericalError
	# @param self An instance of NumericalError.
	# @param message (str) Description of the problem.
	# @param time (float) Propagation time at which it happened, if relevant.
	# @param block (str) Symmetry block label involved, if relevant.
	def __init__(self, message, time=None, block=None):
		if(block is not None):
			message = '[' + str(block) + '] ' + message;
		if(time is not None):
			message = message + ' (t = ' + repr(float(time)) + ' a.u.)';
		StrongFieldError.__init__(self, message);
		self.time  = time;
		self.block = block;


## Unreadable, corrupt or unwritable files.
class CacheError(StrongFieldError, IOError):
	exit_code = EXIT_IO;


## Maps an exception to a command line exit code.
# @param exc The exception.
# @returns (int) The exit code.
def exit_code(exc):
	if(isinstance(exc, StrongFieldError)):
		return exc.exit_code;
	if(isinstance(exc, (IOError, OSError))):
		return EXIT_IO;
	if(isinstance(exc, ValueError)):
		return EXIT_CONFIG;
	return EXIT_NUMERICAL;
