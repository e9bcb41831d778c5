#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#

## @package config
#
# Run configuration.
#
# A run is described by a JSON document with the sections system, basis, pulse,
# propagation, scan and output. Every section is a _Section subclass: its init
# method fills the missing keys with add_default and then calls _Section.__init__,
# which turns the keys into attributes and rejects keys nobody declared.
#
# Presets are partial documents merged under the user configuration. The schema
# is documented in CONFIG.md.

import copy as copy;
import hashlib as hashlib;
import numpy as np;

from . import json2 as json2;
from .errors import ConfigError, CacheError;
from .atom import ModelAtomSpec;
from .twocenter import TwoCenterSpec, ORIENTATIONS;
from .pulse import PulseSpec, MIN_CYCLES;
from .propagator import PropagationOptions;
from .units import ev_to_au, nm_to_au;

## Section names in document order.
SECTIONS = ('system', 'basis', 'pulse', 'propagation', 'scan', 'output');


## A configuration section.
#
# A _Section derived class is expected to have an init method with a **kwargs
# parameter that calls add_default for every key it knows, then _Section.__init__.
# All the keys in kwargs will transform into attributes.
class _Section:

	## Section name used in key paths.
	name = '';

	## Initializes a _Section
	#
	# @param self An instance of _Section
	# @param kwargs A dict containing the attributes of the object.
	def __init__(self, **kwargs):
		self._metadata = [];
		for k in kwargs:
			if(k not in self._declared):
				raise ConfigError('Unknown key ' + self.name + '.' + str(k), self.name + '.' + str(k));
			setattr(self, str(k), kwargs[k]);
			self._metadata.append(str(k));
		self._init_sanity_check();

	## Adds an attribute (key) to kwargs if not already present
	#
	# @param self An instance of _Section
	# @param kwargs (dict) Dict containing attributes names as keys with their attributes values as values.
	# @param key (str) Name of the attribute
	# @param argument Value of the attribute if not already present
	def add_default(self, kwargs, key, argument):
		if(not hasattr(self, '_declared')):
			self._declared = [];
		self._declared.append(key);
		if(key not in kwargs):
			kwargs[key] = argument;

	## Gets all the attributes set on the init method
	#
	# @param self An instance of _Section
	#
	# @returns A list of all the attributes names ([str...])
	def get_metadata(self):
		return list(self._metadata);

	## Checks that the values are usable; raises ConfigError naming the key.
	def _init_sanity_check(self):
		raise NotImplementedError('Override _Section _init_sanity_check!');

	def _key(self, key):
		return self.name + '.' + key;

	def _positive(self, key, integer=False):
		value = getattr(self, key);
		if(isinstance(value, bool) or not isinstance(value, (int, float)) or not value > 0 or (integer and int(value) != value)):
			raise ConfigError(self._key(key) + ' must be a positive ' + ('integer' if integer else 'number') + ', got ' + repr(value), self._key(key));

	def _integer(self, key, minimum):
		value = getattr(self, key);
		if(isinstance(value, bool) or not isinstance(value, (int, float)) or int(value) != value or value < minimum):
			raise ConfigError(self._key(key) + ' must be an integer >= ' + str(minimum) + ', got ' + repr(value), self._key(key));

	def _to_dict(self):
		return dict((k, getattr(self, k)) for k in self._metadata);


## The physical system: model atom or H2+ at fixed R.
class SystemSection(_Section):
	name = 'system';

	def __init__(self, **kwargs):
		self.add_default(kwargs, 'kind',              'atom');
		self.add_default(kwargs, 'alpha',             None);
		self.add_default(kwargs, 'target_ip',         None);
		self.add_default(kwargs, 'l_max',             5);
		self.add_default(kwargs, 'R',                 1.4);
		self.add_default(kwargs, 'lambda_max',        3);
		self.add_default(kwargs, 'include_repulsion', True);
		self.add_default(kwargs, 'max_eta_nodes',     None);
		self.add_default(kwargs, 'orientations',      None);
		_Section.__init__(self, **kwargs);

	def _init_sanity_check(self):
		if(self.kind not in ('atom', 'two-center')):
			raise ConfigError('system.kind must be atom or two-center, got ' + repr(self.kind), 'system.kind');
		if(self.alpha is not None and self.target_ip is not None):
			raise ConfigError('system.alpha and system.target_ip are exclusive', 'system.target_ip');
		if(self.target_ip is not None):
			self._positive('target_ip');
		self._integer('l_max', 1);
		self._positive('R');
		self._integer('lambda_max', 0);
		allowed = ('z',) if self.kind == 'atom' else ORIENTATIONS;
		for orientation in (self.orientations or ()):
			if(orientation not in allowed):
				raise ConfigError('Orientation ' + repr(orientation) + ' not available for ' + self.kind + ' (use ' + ', '.join(allowed) + ')', 'system.orientations');

	## Orientations to propagate, in order.
	def orientation_list(self):
		if(self.orientations):
			return list(self.orientations);
		return ['z'] if self.kind == 'atom' else list(ORIENTATIONS);


## Radial (atom) and spheroidal (two-center) B-spline bases.
class BasisSection(_Section):
	name = 'basis';

	def __init__(self, **kwargs):
		self.add_default(kwargs, 'r_max',       350.0);
		self.add_default(kwargs, 'n_splines',   350);
		self.add_default(kwargs, 'order',       15);
		self.add_default(kwargs, 'box',         120.0);
		self.add_default(kwargs, 'xi_splines',  120);
		self.add_default(kwargs, 'xi_order',    10);
		self.add_default(kwargs, 'eta_splines', 24);
		self.add_default(kwargs, 'eta_order',   8);
		_Section.__init__(self, **kwargs);

	def _init_sanity_check(self):
		for key in ('r_max', 'box'):
			self._positive(key);
		for key in ('n_splines', 'order', 'xi_splines', 'xi_order', 'eta_splines', 'eta_order'):
			self._positive(key, integer=True);
		for splines, order in (('n_splines', 'order'), ('xi_splines', 'xi_order'), ('eta_splines', 'eta_order')):
			if(getattr(self, order) < 2):
				raise ConfigError(self._key(order) + ' must be >= 2', self._key(order));
			if(getattr(self, splines) < getattr(self, order) + 2):
				raise ConfigError(self._key(splines) + ' must be at least ' + order + ' + 2', self._key(splines));


## Laser pulse: one frequency (omega_ev or wavelength_nm) or none for scans.
class PulseSection(_Section):
	name = 'pulse';

	def __init__(self, **kwargs):
		self.add_default(kwargs, 'omega_ev',       None);
		self.add_default(kwargs, 'wavelength_nm',  None);
		self.add_default(kwargs, 'cycles',         10);
		self.add_default(kwargs, 'intensity_Wcm2', 1e13);
		self.add_default(kwargs, 'envelope',       'cos2');
		_Section.__init__(self, **kwargs);

	def _init_sanity_check(self):
		if(self.omega_ev is not None and self.wavelength_nm is not None):
			raise ConfigError('pulse.omega_ev and pulse.wavelength_nm are exclusive', 'pulse.wavelength_nm');
		for key in ('omega_ev', 'wavelength_nm'):
			if(getattr(self, key) is not None):
				self._positive(key);
		self._integer('cycles', MIN_CYCLES);
		if(isinstance(self.intensity_Wcm2, bool) or not isinstance(self.intensity_Wcm2, (int, float)) or self.intensity_Wcm2 < 0):
			raise ConfigError('pulse.intensity_Wcm2 must be >= 0, got ' + repr(self.intensity_Wcm2), 'pulse.intensity_Wcm2');
		if(self.envelope != 'cos2'):
			raise ConfigError('Only the cos2 envelope is available, got ' + repr(self.envelope), 'pulse.envelope');


class PropagationSection(_Section):
	name = 'propagation';

	def __init__(self, **kwargs):
		self.add_default(kwargs, 'rtol',                1e-9);
		self.add_default(kwargs, 'atol',                1e-12);
		self.add_default(kwargs, 'energy_cut_ev',       300.0);
		self.add_default(kwargs, 'interaction_picture', True);
		self.add_default(kwargs, 'max_steps',           5000000);
		self.add_default(kwargs, 'initial_state',       0);
		self.add_default(kwargs, 'lambda_max',          None);
		_Section.__init__(self, **kwargs);

	def _init_sanity_check(self):
		for key in ('rtol', 'atol'):
			self._positive(key);
			if(getattr(self, key) > 1e-2):
				raise ConfigError(self._key(key) + ' must be <= 1e-2', self._key(key));
		self._positive('energy_cut_ev');
		self._positive('max_steps', integer=True);
		if(not isinstance(self.interaction_picture, bool)):
			raise ConfigError('propagation.interaction_picture must be true or false', 'propagation.interaction_picture');
		self._integer('initial_state', 0);
		if(self.lambda_max is not None):
			self._integer('lambda_max', 0);


## Frequency grid: explicit list or (start, stop, points).
class ScanSection(_Section):
	name = 'scan';

	def __init__(self, **kwargs):
		self.add_default(kwargs, 'grid_ev',  None);
		self.add_default(kwargs, 'start_ev', None);
		self.add_default(kwargs, 'stop_ev',  None);
		self.add_default(kwargs, 'points',   None);
		self.add_default(kwargs, 'threads',  1);
		_Section.__init__(self, **kwargs);

	def _init_sanity_check(self):
		ranged = [self.start_ev, self.stop_ev, self.points];
		if(self.grid_ev is not None and any(v is not None for v in ranged)):
			raise ConfigError('scan.grid_ev excludes scan.start_ev/stop_ev/points', 'scan.grid_ev');
		if(any(v is not None for v in ranged) and not all(v is not None for v in ranged)):
			raise ConfigError('scan.start_ev, scan.stop_ev and scan.points go together', 'scan.points');
		if(self.points is not None):
			self._positive('points', integer=True);
		if(self.grid_ev is not None):
			grid = np.asarray(self.grid_ev, dtype=float);
			steps = np.diff(grid);
			if(grid.ndim != 1 or len(grid) == 0 or np.any(grid <= 0) or not (np.all(steps > 0) or np.all(steps < 0))):
				raise ConfigError('scan.grid_ev must be a non-empty monotone list of positive energies', 'scan.grid_ev');
		self._positive('threads', integer=True);

	## The grid in eV, None when no grid is configured.
	def grid(self):
		if(self.grid_ev is not None):
			return [float(v) for v in self.grid_ev];
		if(self.points is not None):
			return [float(v) for v in np.linspace(self.start_ev, self.stop_ev, int(self.points))];
		return None;


class OutputSection(_Section):
	name = 'output';

	def __init__(self, **kwargs):
		self.add_default(kwargs, 'directory',           '.');
		self.add_default(kwargs, 'checkpoint_stride',   None);
		self.add_default(kwargs, 'two_electron_factor', False);
		self.add_default(kwargs, 'preset_id',           '');
		_Section.__init__(self, **kwargs);

	def _init_sanity_check(self):
		if(self.checkpoint_stride is not None):
			self._positive('checkpoint_stride');
		if(not isinstance(self.two_electron_factor, bool)):
			raise ConfigError('output.two_electron_factor must be true or false', 'output.two_electron_factor');


_SECTION_CLASSES = {
	'system': SystemSection, 'basis': BasisSection, 'pulse': PulseSection,
	'propagation': PropagationSection, 'scan': ScanSection, 'output': OutputSection,
};


## Named partial configurations.
PRESETS = {
	'atom-fast':    {'system': {'kind': 'atom', 'l_max': 4},
	                 'basis': {'r_max': 120.0, 'n_splines': 140, 'order': 8}},
	'atom':         {'system': {'kind': 'atom', 'l_max': 5},
	                 'basis': {'r_max': 350.0, 'n_splines': 350, 'order': 15}},
	'atom-h2-1.4':  {'system': {'kind': 'atom', 'target_ip': 0.59037}},
	'atom-h2-2.0':  {'system': {'kind': 'atom', 'target_ip': 0.52615}},
	'h2plus-1.4':   {'system': {'kind': 'two-center', 'R': 1.4, 'lambda_max': 3},
	                 'basis': {'box': 120.0, 'xi_splines': 120, 'xi_order': 10, 'eta_splines': 24, 'eta_order': 8}},
	'h2plus-2.0':   {'system': {'kind': 'two-center', 'R': 2.0, 'lambda_max': 3},
	                 'basis': {'box': 120.0, 'xi_splines': 120, 'xi_order': 10, 'eta_splines': 24, 'eta_order': 8}},
	'h2plus-small': {'system': {'kind': 'two-center', 'R': 2.0, 'lambda_max': 2},
	                 'basis': {'box': 30.0, 'xi_splines': 24, 'xi_order': 6, 'eta_splines': 10, 'eta_order': 6},
	                 'propagation': {'rtol': 1e-12, 'atol': 1e-14}},
	'h2plus-check': {'system': {'kind': 'two-center', 'R': 1.4, 'lambda_max': 5},
	                 'basis': {'box': 120.0, 'xi_splines': 120, 'xi_order': 10, 'eta_splines': 24, 'eta_order': 8}},
	'scan-10cycle': {'pulse': {'cycles': 10, 'intensity_Wcm2': 1e13}},
	'scan-30cycle': {'pulse': {'cycles': 30, 'intensity_Wcm2': 5e12}},
};


## Recursively merges override into base (new dictionary).
def merge(base, override):
	result = copy.deepcopy(base);
	for key, value in override.items():
		if(isinstance(value, dict) and isinstance(result.get(key), dict)):
			result[key] = merge(result[key], value);
		else:
			result[key] = copy.deepcopy(value);
	return result;


## Resolves a comma separated preset list into one partial document.
def preset_document(names):
	document = {};
	for name in [n.strip() for n in (names or '').split(',') if n.strip()]:
		if(name not in PRESETS):
			raise ConfigError('Unknown preset ' + repr(name) + ' (available: ' + ', '.join(sorted(PRESETS)) + ')', 'preset');
		document = merge(document, PRESETS[name]);
	return document;


## Complete, validated run configuration.
class RunConfig:

	## Initializes a RunConfig
	# @param self An instance of RunConfig.
	# @param document (dict) Sections as dictionaries; missing sections and keys take defaults.
	# @param preset (str) Comma separated preset names merged under document.
	def __init__(self, document=None, preset=None):
		if(document is not None and not isinstance(document, dict)):
			raise ConfigError('Configuration must be a JSON object');
		document = merge(preset_document(preset), document or {});
		for key in document:
			if(key not in SECTIONS):
				raise ConfigError('Unknown section ' + str(key), str(key));
		for name in SECTIONS:
			values = document.get(name, {});
			if(not isinstance(values, dict)):
				raise ConfigError('Section ' + name + ' must be an object', name);
			setattr(self, name, _SECTION_CLASSES[name](**values));
		if(not self.output.preset_id and preset):
			self.output.preset_id = preset;

	## Reads a JSON configuration file.
	# @param path Path of the file.
	# @param preset (str) Preset names merged under the file contents.
	@classmethod
	def load(cls, path, preset=None):
		try:
			with open(path, 'r') as f:
				text = f.read();
		except (IOError, OSError) as exc:
			raise CacheError('Cannot read configuration ' + str(path) + ': ' + str(exc));
		if(not preset):
			return json2.loads(text, cls);
		return cls(json2.loads(text), preset);

	@classmethod
	def _from_dict(cls, dct):
		return cls(dct);

	def _to_dict(self):
		return dict((name, getattr(self, name)._to_dict()) for name in SECTIONS);

	## sha256 of the canonical system and basis sections; identifies a cached basis.
	# @returns (bytes) 32-byte digest.
	def fingerprint(self):
		payload = {'system': self._basis_system(), 'basis': self._relevant_basis()};
		return hashlib.sha256(json2.dumps(payload, canonical=True).encode('utf-8')).digest();

	# Keys that change the basis or the couplings of the configured system.
	def _basis_system(self):
		s = self.system;
		if(s.kind == 'atom'):
			return {'kind': s.kind, 'alpha': s.alpha, 'target_ip': s.target_ip, 'l_max': s.l_max};
		return {'kind': s.kind, 'R': s.R, 'lambda_max': s.lambda_max, 'include_repulsion': s.include_repulsion,
			'max_eta_nodes': s.max_eta_nodes};

	def _relevant_basis(self):
		b = self.basis;
		if(self.system.kind == 'atom'):
			return {'r_max': b.r_max, 'n_splines': b.n_splines, 'order': b.order};
		return {'box': b.box, 'xi_splines': b.xi_splines, 'xi_order': b.xi_order,
			'eta_splines': b.eta_splines, 'eta_order': b.eta_order};

	## Model atom parameters; alpha is taken as given (calibration happens in the session).
	def atom_spec(self, alpha=None):
		a = self.system.alpha if alpha is None else alpha;
		return ModelAtomSpec(0.0 if a is None else a, self.basis.r_max, self.basis.n_splines, self.basis.order, self.system.l_max);

	def two_center_spec(self):
		s, b = self.system, self.basis;
		return TwoCenterSpec.from_box(s.R, b.box, xi_splines=b.xi_splines, xi_order=b.xi_order,
			eta_splines=b.eta_splines, eta_order=b.eta_order, lambda_max=s.lambda_max,
			include_repulsion=s.include_repulsion, max_eta_nodes=s.max_eta_nodes);

	## Pulse at the configured frequency, or at omega_ev when given.
	def pulse_spec(self, omega_ev=None):
		p = self.pulse;
		if(omega_ev is not None):
			return PulseSpec.from_ev(omega_ev, p.cycles, p.intensity_Wcm2);
		if(p.omega_ev is not None):
			return PulseSpec.from_ev(p.omega_ev, p.cycles, p.intensity_Wcm2);
		if(p.wavelength_nm is not None):
			return PulseSpec(nm_to_au(p.wavelength_nm), p.cycles, p.intensity_Wcm2);
		raise ConfigError('No carrier frequency: set pulse.omega_ev or pulse.wavelength_nm', 'pulse.omega_ev');

	## Propagation settings; initial is (block label, state index) or None.
	def propagation_options(self, initial_block=None):
		p = self.propagation;
		initial = None if initial_block is None else (initial_block, int(p.initial_state));
		return PropagationOptions(p.rtol, p.atol, ev_to_au(p.energy_cut_ev), p.lambda_max, initial,
			p.interaction_picture, self.output.checkpoint_stride, p.max_steps);

	## @var system
	# (SystemSection)

	## @var basis
	# (BasisSection)

	## @var pulse
	# (PulseSection)

	## @var propagation
	# (PropagationSection)

	## @var scan
	# (ScanSection)

	## @var output
	# (OutputSection)
