#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#

## @package cli
#
# Command line interface: strongfield {basis,propagate,scan,analyze}.
#
# CSV goes to --output (or stdout), messages to stderr. Exit codes: 0 success,
# 1 configuration error, 2 numerical failure, 3 file input/output error.

import os as os;
import sys as sys;
import csv as csv;
import argparse as argparse;
import numpy as np;

from . import log as log;
from .config import RunConfig, PRESETS;
from .session import Session;
from .cache import BasisCache;
from .errors import exit_code, ConfigError, EXIT_OK;
from .atom import ip_curve;
from .pulse import PulseSpec, fourier_component;
from .units import ev_to_au, au_to_nm;
from .observables import (write_records, read_records, photon_thresholds, orientation_ratio,
	convolution_model);

ANALYSES = ('ip-curve', 'fourier', 'thresholds', 'ratio');


## Argument parser reporting usage errors as ConfigError (exit code 1).
class _ArgumentParser(argparse.ArgumentParser):
	def error(self, message):
		raise ConfigError(message, 'arguments');


def _parser():
	common = _ArgumentParser(add_help=False);
	common.add_argument('--config', metavar='PATH', help='JSON configuration file');
	common.add_argument('--preset', metavar='NAME', help='preset name(s), comma separated: ' + ', '.join(sorted(PRESETS)));
	common.add_argument('--threads', metavar='N', type=int, help='worker processes for scans');
	common.add_argument('--output', metavar='PATH', help='CSV output file (stdout when omitted); its directory holds the cache');
	common.add_argument('--force-rebuild', action='store_true', help='ignore a cached basis');
	common.add_argument('-v', '--verbose', action='count', default=0, help='more messages (repeatable)');
	common.add_argument('-q', '--quiet', action='store_true', help='errors only');

	parser = _ArgumentParser(prog='strongfield', description='One-electron TDSE in a field-free eigenbasis.');
	commands = parser.add_subparsers(dest='command');
	commands.required = True;
	commands.add_parser('basis', parents=[common], help='build or load the eigenbasis and couplings');
	commands.add_parser('propagate', parents=[common], help='propagate one pulse, one row per orientation');
	commands.add_parser('scan', parents=[common], help='frequency scan');
	analyze = commands.add_parser('analyze', parents=[common], help='derived curves');
	analyze.add_argument('analysis', choices=ANALYSES);
	analyze.add_argument('--alphas', nargs=3, type=float, metavar=('START', 'STOP', 'POINTS'), default=(-0.3, 0.5, 17),
		help='alpha grid for ip-curve');
	analyze.add_argument('--omega0-ev', type=float, help='analysis frequency for fourier');
	analyze.add_argument('--ip', type=float, help='ionisation potential (a.u.) for thresholds, the configured system when omitted');
	analyze.add_argument('--n-max', type=int, default=5, help='highest photon number for thresholds');
	analyze.add_argument('--field', default='Y_ion', choices=('Y_ion', 'Y_exc'), help='yield compared by ratio');
	analyze.add_argument('inputs', nargs='*', help='two scan CSV files for ratio (numerator, denominator)');
	return parser;


def _context(args):
	context = log.get_default_context();
	context.set_verbosity(0 if args.quiet else log.DEFAULT_VERBOSITY + args.verbose);
	return context;


def _config(args):
	if(args.config):
		config = RunConfig.load(args.config, args.preset);
	else:
		config = RunConfig(None, args.preset);
	if(args.threads is not None):
		if(args.threads < 1):
			raise ConfigError('--threads must be >= 1', 'scan.threads');
		config.scan.threads = args.threads;
	return config;


def _cache(args, config, context):
	directory = os.path.dirname(os.path.abspath(args.output)) if args.output else config.output.directory;
	return BasisCache(directory, context);


## Writes rows through csv.DictWriter with 10 significant digits.
def _write_rows(stream, columns, rows):
	writer = csv.DictWriter(stream, fieldnames=columns, lineterminator='\n');
	writer.writeheader();
	for row in rows:
		writer.writerow(dict((k, '%.10g' % v if isinstance(v, float) else v) for k, v in zip(columns, row)));


def _emit(args, fn):
	if(args.output):
		with open(args.output, 'w', newline='') as f:
			fn(f);
	else:
		fn(sys.stdout);


# --- Commands ------------------------------------------------------------------

def cmd_basis(args, context):
	config = _config(args);
	with Session(config, _cache(args, config, context), args.force_rebuild, context) as session:
		basis, couplings = session.basis();
		rows = [(label, basis.block(label).n_states, float(basis.block(label).energies[0])) for label in basis.labels()];
		context.info('Cache file ' + session.cache_path(), 0);
		_emit(args, lambda f: _write_rows(f, ('block', 'n_states', 'lowest_energy_au'), rows));


def cmd_propagate(args, context):
	config = _config(args);
	checkpoints = os.path.dirname(os.path.abspath(args.output)) if args.output else None;
	with Session(config, _cache(args, config, context), args.force_rebuild, context) as session:
		records = session.propagate(checkpoint_directory=checkpoints);
	_emit(args, lambda f: write_records(f, records));


def cmd_scan(args, context):
	config = _config(args);
	with Session(config, _cache(args, config, context), args.force_rebuild, context) as session:
		records = session.scan();
	_emit(args, lambda f: write_records(f, records));


def cmd_analyze(args, context):
	config = _config(args);
	if(args.analysis == 'ip-curve'):
		start, stop, points = args.alphas;
		rows = ip_curve(np.linspace(start, stop, int(points)), config.atom_spec(0.0));
		_emit(args, lambda f: _write_rows(f, ('alpha', 'ip_numeric_au', 'ip_approx_au'), [tuple(float(v) for v in r) for r in rows]));

	elif(args.analysis == 'fourier'):
		grid = config.scan.grid();
		if(grid is None or args.omega0_ev is None):
			raise ConfigError('fourier needs --omega0-ev and a scan grid', 'scan.grid_ev');
		template = config.pulse_spec(grid[0]);
		model = convolution_model(args.omega0_ev, template, grid);
		omega0 = ev_to_au(args.omega0_ev);
		rows = [(float(w), float(fourier_component(PulseSpec.from_ev(w, template.cycles, template.intensity), omega0)), float(m))
			for w, m in zip(grid, model)];
		_emit(args, lambda f: _write_rows(f, ('omega_eV', 'F_omega0_au', 'normalised_F2'), rows));

	elif(args.analysis == 'thresholds'):
		ip = args.ip;
		if(ip is None):
			with Session(config, _cache(args, config, context), args.force_rebuild, context) as session:
				ip = session.ionisation_potential();
		rows = [(n, float(w), float(au_to_nm(ev_to_au(w)))) for n, w in enumerate(photon_thresholds(ip, args.n_max), 1)];
		_emit(args, lambda f: _write_rows(f, ('N', 'omega_eV', 'lambda_nm'), rows));

	elif(args.analysis == 'ratio'):
		if(len(args.inputs) != 2):
			raise ConfigError('ratio needs two scan CSV files', 'inputs');
		series = [];
		for path in args.inputs:
			with open(path, 'r', newline='') as f:
				series.append(read_records(f));
		rows = [(float(w), float(r)) for w, r in orientation_ratio(series[0], series[1], args.field)];
		_emit(args, lambda f: _write_rows(f, ('omega_eV', 'ratio'), rows));


_COMMANDS = {'basis': cmd_basis, 'propagate': cmd_propagate, 'scan': cmd_scan, 'analyze': cmd_analyze};


## Runs the command line.
# @param argv (list) Arguments without the program name, sys.argv[1:] when None.
# @returns (int) Exit code.
def main(argv=None):
	try:
		args = _parser().parse_args(argv);
	except ConfigError as exc:
		log.error(str(exc));
		return exit_code(exc);
	context = _context(args);
	try:
		_COMMANDS[args.command](args, context);
	except Exception as exc:
		code = exit_code(exc);
		context.error(type(exc).__name__ + ': ' + str(exc));
		if(context.verbosity > log.DEBUG_LEVEL):
			raise;
		return code;
	return EXIT_OK;


if __name__ == '__main__':
	sys.exit(main());
