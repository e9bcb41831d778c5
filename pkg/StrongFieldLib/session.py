#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#

## @package session
# High level runs
#
# A Session turns a RunConfig into an eigenbasis with its dipole couplings
# (loaded from or stored into the BasisCache), propagates pulses through it and
# returns YieldRecords. The command line is a thin layer over it.

import os as os;

from . import log as log;
from .atom import solve_atom, atomic_dipole_set, calibrate_alpha;
from .twocenter import solve_molecule, molecular_dipole_set, reachable_blocks;
from .cache import BasisCache;
from .propagator import propagate, write_checkpoints;
from .observables import yields, scan;
from .errors import ConfigError;


## Wrapper around one configured system
#
# @note This object may be used in a python's context fashion. See <a href='https://www.python.org/dev/peps/pep-0343/'>Context managers</a>.
#
# @warning The propagator is not reentrant: do not propagate from several threads of one process.
class Session:

	## Initializes a new session
	# @param self An instance of Session.
	# @param config A RunConfig.
	# @param cache A BasisCache, one on config.output.directory when None.
	# @param force_rebuild (bool) Ignore any cached basis.
	# @param log A log context for logging.
	def __init__(self, config, cache=None, force_rebuild=False, log=log.get_default_context()):
		self.config        = config;
		self.log           = log;
		self.cache         = BasisCache(config.output.directory, log) if cache is None else cache;
		self.force_rebuild = force_rebuild;
		self._basis        = None;
		self._couplings    = None;
		self._alpha        = None;

	## Context manager interface __enter__ method.
	# @param self An instance of Session.
	def __enter__(self):
		return self;

	## Context manager interface __exit__ method. Drops the loaded basis.
	# @param self An instance of Session.
	# @param exception_type The type of the raised exception. None if no error happened.
	# @param exception_value The object of the raised exception. None if no error happened.
	# @param traceback The stack information of the raised exception. None if no error happened.
	def __exit__(self, exception_type, exception_value, traceback):
		self._basis = None;
		self._couplings = None;
		return False;

	# --- Basis -----------------------------------------------------------------

	## Screening parameter of the model atom, calibrated when system.target_ip is set.
	def alpha(self):
		system = self.config.system;
		if(system.target_ip is None):
			return 0.0 if system.alpha is None else float(system.alpha);
		if(self._alpha is None):
			self._alpha = calibrate_alpha(system.target_ip, self.config.atom_spec(0.0), log=self.log);
		return self._alpha;

	## Builds the eigenbasis and the coupling set of every orientation.
	# @param self An instance of Session.
	# @returns (EigenBasis, dict orientation -> DipoleCouplingSet)
	def build(self):
		config = self.config;
		if(config.system.kind == 'atom'):
			with self.log.timed('model atom basis', 1):
				basis = solve_atom(config.atom_spec(self.alpha()), log=self.log);
				return basis, {'z': atomic_dipole_set(basis)};
		with self.log.timed('two-center basis', 1):
			basis = solve_molecule(config.two_center_spec(), log=self.log);
			return basis, dict((o, molecular_dipole_set(basis, o)) for o in config.system.orientation_list());

	## Loads the basis from the cache, building and storing it when needed.
	# @param self An instance of Session.
	# @returns (EigenBasis, dict orientation -> DipoleCouplingSet)
	def basis(self):
		if(self._basis is not None):
			return self._basis, self._couplings;
		fingerprint = self.config.fingerprint();
		cached = None if self.force_rebuild else self.cache.load(fingerprint);
		wanted = self.config.system.orientation_list();
		if(cached is not None):
			basis, sets = cached;
			couplings = dict((s.orientation, s) for s in sets);
			if(all(o in couplings for o in wanted)):
				self._basis, self._couplings = basis, couplings;
				return basis, couplings;
			self.log.warning('Cached basis lacks orientations ' + ', '.join(o for o in wanted if o not in couplings) + ', rebuilding');
		basis, couplings = self.build();
		self.cache.store(fingerprint, basis, list(couplings.values()));
		self._basis, self._couplings = basis, couplings;
		return basis, couplings;

	## Path of the cache file of this configuration.
	def cache_path(self):
		return self.cache.path(self.config.fingerprint());

	## Basis restricted to the blocks the initial block reaches, per orientation.
	# @param self An instance of Session.
	# @returns dict orientation -> (EigenBasis, DipoleCouplingSet)
	def systems(self):
		basis, couplings = self.basis();
		result = {};
		for orientation in self.config.system.orientation_list():
			if(orientation not in couplings):
				raise ConfigError('No couplings for orientation ' + orientation, 'system.orientations');
			labels = reachable_blocks(couplings[orientation], basis.initial_block);
			labels = [l for l in basis.labels() if l in labels];
			result[orientation] = (basis.subset(labels), couplings[orientation]);
		return result;

	## Ionisation potential of the configured system (a.u.).
	def ionisation_potential(self):
		basis, _ = self.basis();
		return basis.threshold - basis.ground_energy;

	# --- Propagation -----------------------------------------------------------

	def _options(self, basis):
		initial = None if self.config.propagation.initial_state == 0 else basis.initial_block;
		return self.config.propagation_options(initial);

	## Propagates the configured pulse for every orientation.
	# @param self An instance of Session.
	# @param omega_ev (float) Carrier photon energy, the configured one when None.
	# @param checkpoint_directory (str) Where checkpoint CSV files go when a stride is configured.
	# @returns list of YieldRecord, one per orientation.
	def propagate(self, omega_ev=None, checkpoint_directory=None):
		pulse = self.config.pulse_spec(omega_ev);
		output = self.config.output;
		records = [];
		for orientation, (basis, couplings) in self.systems().items():
			context = self.log.child(orientation);
			result = propagate(basis, couplings, pulse, self._options(basis), log=context);
			populations = result.index.block_populations(result.coefficients);
			context.info('Block populations: ' + ', '.join('%s %.3e' % item for item in populations.items()), 1);
			if(output.checkpoint_stride is not None):
				directory = checkpoint_directory or output.directory;
				path = os.path.join(directory, 'checkpoints-' + orientation + '.csv');
				write_checkpoints(path, result);
				context.info('Checkpoints written to ' + path, 1);
			records.append(yields(result, basis, pulse, orientation, output.preset_id, output.two_electron_factor));
		return records;

	## Runs the configured frequency scan.
	# @param self An instance of Session.
	# @param grid_ev (list) Photon energies, the configured grid when None.
	# @param threads (int) Worker processes, scan.threads when None.
	# @returns list of YieldRecord in grid order.
	def scan(self, grid_ev=None, threads=None):
		grid = self.config.scan.grid() if grid_ev is None else grid_ev;
		if(grid is None):
			raise ConfigError('No scan grid: set scan.grid_ev or scan.start_ev/stop_ev/points', 'scan.grid_ev');
		threads = self.config.scan.threads if threads is None else threads;
		systems = self.systems();
		template = self.config.pulse_spec(grid[0]);
		first = list(systems.values())[0][0];
		output = self.config.output;
		return scan(systems, template, grid, self._options(first), threads, output.preset_id,
			output.two_electron_factor, log=self.log);

	## @var config
	# (RunConfig) The configuration.

	## @var cache
	# (BasisCache) Where bases are stored.
