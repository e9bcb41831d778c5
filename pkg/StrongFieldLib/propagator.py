#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#

## @package propagator
#
# Integration of the coefficient equations
#
#   i dC/dt = E C + i A(t) D C
#
# over the pulse window with the variable-order, variable-step Adams method of
# VODE (scipy.integrate.ode). The complex vector is handed to the solver as
# paired real components. In the interaction picture the solver sees
# C~ = C exp(i E t), whose right-hand side vanishes without field. The raw
# picture integrates C exp(i E_ref t) for the mid-spectrum energy E_ref, with
# solver tolerances tightened by the phase range |E - E_ref| T it follows.
#
# @warning VODE keeps its state in Fortran common blocks: run at most one
# propagation per process at a time (scans use worker processes).

import time as time;
import numpy as np;
from collections import namedtuple as namedtuple;
from scipy.integrate import ode;

from . import log as log;
from .errors import ConfigError, NumericalError;
from .units import ev_to_au;

## Default energy cut above the ionisation threshold (a.u.), about 300 eV.
DEFAULT_ENERGY_CUT = ev_to_au(300.0);

## Norm drift (in units of rtol) that aborts a propagation.
NORM_ABORT_FACTOR = 100.0;

## Smallest relative tolerance handed to VODE in the raw picture.
RAW_RTOL_FLOOR = 1e-13;

_VODE_MESSAGES = {
	-1: 'excess work done (raise max_steps)',
	-2: 'excess accuracy requested',
	-3: 'illegal input',
	-4: 'repeated error test failures (step size underflow)',
	-5: 'repeated convergence failures (step size underflow)',
	-6: 'error weight became zero',
};


## Propagation settings.
#
# energy_cut is measured from the ionisation threshold of the basis; initial is
# None (lowest state of the first block) or a (block label, index) pair.
class PropagationOptions(namedtuple('PropagationOptions',
		'rtol atol energy_cut lambda_max initial interaction_picture checkpoint_stride max_steps')):
	__slots__ = ();

	def __new__(cls, rtol=1e-9, atol=1e-12, energy_cut=DEFAULT_ENERGY_CUT, lambda_max=None,
			initial=None, interaction_picture=True, checkpoint_stride=None, max_steps=5000000):
		for key, value in (('rtol', rtol), ('atol', atol)):
			if(not 0 < float(value) <= 1e-2):
				raise ConfigError('Tolerance ' + key + ' must be in (0, 1e-2], got ' + str(value), 'propagation.' + key);
		if(lambda_max is not None and int(lambda_max) < 0):
			raise ConfigError('lambda_max must be >= 0, got ' + str(lambda_max), 'propagation.lambda_max');
		if(checkpoint_stride is not None and not float(checkpoint_stride) > 0):
			raise ConfigError('checkpoint_stride must be positive, got ' + str(checkpoint_stride), 'output.checkpoint_stride');
		return super(PropagationOptions, cls).__new__(cls, float(rtol), float(atol), float(energy_cut),
			None if lambda_max is None else int(lambda_max), initial, bool(interaction_picture),
			None if checkpoint_stride is None else float(checkpoint_stride), int(max_steps));


## Result of a propagation.
#
# coefficients are Schroedinger picture amplitudes C(t_final) over the states
# listed by index.
PropagationResult = namedtuple('PropagationResult',
	'coefficients index norm_drift accepted_steps rejected_steps wall_time checkpoints final_time interaction_picture');


## Switches between the raw and the interaction picture.
# @param opts PropagationOptions.
# @returns PropagationOptions with interaction_picture flipped.
def interaction_picture_toggle(opts):
	return opts._replace(interaction_picture=not opts.interaction_picture);


## Flat numbering of the propagated states.
#
# Blocks above lambda_max and states above the energy cut are left out.
class StateIndex:

	## Initializes a StateIndex
	# @param self An instance of StateIndex.
	# @param basis An EigenBasis.
	# @param opts PropagationOptions.
	def __init__(self, basis, opts):
		lambdas = basis.metadata.get('lambda', {});
		self.labels  = [];
		self.kept    = {};
		self.slices  = {};
		energies = [];
		offset = 0;
		for label in basis.labels():
			if(opts.lambda_max is not None and lambdas.get(label, 0) > opts.lambda_max):
				continue;
			block = basis.block(label);
			kept = np.nonzero(block.energies - basis.threshold <= opts.energy_cut)[0];
			if(not len(kept)):
				continue;
			self.labels.append(label);
			self.kept[label] = kept;
			self.slices[label] = slice(offset, offset + len(kept));
			energies.append(block.energies[kept]);
			offset += len(kept);
		if(not self.labels):
			raise ConfigError('No states left below the energy cut.', 'propagation.energy_cut_ev');
		self.energies  = np.concatenate(energies);
		self.threshold = basis.threshold;

		initial_label, initial_state = opts.initial if opts.initial is not None else (basis.initial_block, 0);
		if(initial_label not in self.kept or initial_state not in self.kept[initial_label]):
			raise ConfigError('Initial state ' + str(initial_label) + '[' + str(initial_state) + '] is excluded by the energy cut or lambda_max.', 'propagation.energy_cut_ev');
		position = int(np.nonzero(self.kept[initial_label] == initial_state)[0][0]);
		self.ground = self.slices[initial_label].start + position;

	@property
	def size(self):
		return len(self.energies);

	## Unit vector on the initial state.
	def initial_vector(self):
		c = np.zeros(self.size, dtype=complex);
		c[self.ground] = 1.0;
		return c;

	## Coupling blocks restricted to the kept states: list of (row slice, col slice, matrix).
	def restrict(self, couplings):
		result = [];
		for (row, col), matrix in couplings.pairs.items():
			if(row in self.kept and col in self.kept):
				m = np.ascontiguousarray(matrix[np.ix_(self.kept[row], self.kept[col])]);
				result.append((self.slices[row], self.slices[col], m));
		return result;

	## Population of every block.
	def block_populations(self, coefficients):
		p = np.abs(coefficients)**2;
		return dict((l, float(np.sum(p[self.slices[l]]))) for l in self.labels);

	## @var labels
	# ([str]) Propagated blocks in order.

	## @var kept
	# (dict) label -> indices of kept states within the block.

	## @var ground
	# (int) Flat index of the initial state.


## Block-sparse product D c for real antisymmetric D stored by triangle.
def _apply_couplings(blocks, c, out):
	out[:] = 0.0;
	pairs = np.empty((len(c), 2));
	pairs[:, 0] = c.real;
	pairs[:, 1] = c.imag;
	for rows, cols, m in blocks:
		out[rows] += m.dot(pairs[cols]);
		out[cols] -= m.T.dot(pairs[rows]);
	return out[:, 0] + 1j * out[:, 1];


## Propagates the coefficient equations through a pulse.
#
# @param basis An EigenBasis.
# @param couplings A DipoleCouplingSet built from the same basis.
# @param pulse Object with window() and vector_potential(t) (e.g. a PulseSpec).
# @param opts PropagationOptions.
# @param initial (ndarray) Starting amplitudes over StateIndex order, ground state when None.
# @param reverse (bool) Integrate from the end of the window back to its start.
# @param log A log context.
# @returns A PropagationResult.
def propagate(basis, couplings, pulse, opts=None, initial=None, reverse=False, log=log.get_default_context()):
	opts = PropagationOptions() if opts is None else opts;
	index = StateIndex(basis, opts);
	blocks = index.restrict(couplings);
	energies = index.energies;
	n = index.size;
	t_start, t_end = pulse.window();
	if(reverse):
		t_start, t_end = t_end, t_start;
	low, high = min(t_start, t_end), max(t_start, t_end);

	def potential_at(t):
		# the pulse is over outside its window, the solver may step slightly past it
		if(t < low or t > high):
			return 0.0;
		return float(pulse.vector_potential(t));

	work = np.zeros((n, 2));
	picture = opts.interaction_picture;
	reference = 0.0 if picture else 0.5 * (np.min(energies) + np.max(energies));
	shifted = energies - reference;

	def rhs(t, y):
		c = y[:n] + 1j * y[n:];
		if(picture):
			phase = np.exp(-1j * energies * t);
			dc = potential_at(t) * _apply_couplings(blocks, c * phase, work) * np.conj(phase);
		else:
			dc = potential_at(t) * _apply_couplings(blocks, c, work) - 1j * shifted * c;
		return np.concatenate((dc.real, dc.imag));

	c0 = index.initial_vector() if initial is None else np.array(initial, dtype=complex);
	if(c0.shape != (n,)):
		raise ValueError('Initial vector has ' + str(c0.shape) + ' amplitudes, expected ' + str(n));
	norm0 = float(np.vdot(c0, c0).real);
	if(abs(norm0 - 1.0) > 1e-10):
		raise ValueError('Initial vector is not normalized (norm ' + repr(norm0) + ')');
	if(picture):
		c0 = c0 * np.exp(1j * energies * t_start);

	rtol, atol = solver_tolerances(opts, shifted, abs(t_end - t_start));
	solver = ode(rhs).set_integrator('vode', method='adams', rtol=rtol, atol=atol,
		nsteps=opts.max_steps, with_jacobian=False);
	solver.set_initial_value(np.concatenate((c0.real, c0.imag)), t_start);

	def current():
		c = solver.y[:n] + 1j * solver.y[n:];
		if(picture):
			c = c * np.exp(-1j * energies * solver.t);
		else:
			c = c * np.exp(-1j * reference * (solver.t - t_start));
		return c;

	stops = [t_end];
	if(opts.checkpoint_stride is not None):
		direction = 1.0 if t_end > t_start else -1.0;
		grid = t_start + direction * np.arange(1, int(abs(t_end - t_start) / opts.checkpoint_stride) + 1) * opts.checkpoint_stride;
		stops = [t for t in grid if abs(t - t_start) < abs(t_end - t_start)] + [t_end];

	checkpoints = [];
	if(opts.checkpoint_stride is not None):
		checkpoints.append((float(t_start), float(abs(c0[index.ground])**2), norm0));
	abort = NORM_ABORT_FACTOR * opts.rtol;
	log.info('Propagating ' + str(n) + ' states over ' + str(len(index.labels)) + ' blocks, t in [%.3f, %.3f]' % (t_start, t_end), 2);
	clock = time.perf_counter();
	for stop in stops:
		solver.integrate(stop);
		if(not solver.successful()):
			code = solver.get_return_code();
			raise NumericalError('Adams integrator stopped: ' + _VODE_MESSAGES.get(code, 'code ' + str(code)), time=solver.t);
		c = current();
		norm = float(np.vdot(c, c).real);
		if(abs(1.0 - norm) > abort):
			raise NumericalError('Norm drift ' + repr(abs(1.0 - norm)) + ' exceeds ' + repr(abort), time=solver.t);
		if(opts.checkpoint_stride is not None):
			checkpoints.append((float(solver.t), float(abs(c[index.ground])**2), norm));
	wall = time.perf_counter() - clock;

	c = current();
	drift = abs(1.0 - float(np.vdot(c, c).real));
	accepted, rejected = _step_counts(solver);
	log.info('Propagation done: %d steps (%d rejected), norm drift %.2e, %.2f s' % (accepted, rejected, drift, wall), 2);
	return PropagationResult(c, index, drift, accepted, rejected, wall, checkpoints, float(solver.t), picture);


## Tolerances handed to the solver.
#
# The interaction picture uses opts unchanged. In the raw picture both
# tolerances are divided by the phase range max |E| T the solver follows,
# rtol no lower than RAW_RTOL_FLOOR.
# @param opts PropagationOptions.
# @param energies (ndarray) Energies seen by the solver.
# @param duration (float) Length of the integration window.
# @returns (rtol, atol)
def solver_tolerances(opts, energies, duration):
	if(opts.interaction_picture):
		return (opts.rtol, opts.atol);
	scale = max(1.0, float(np.max(np.abs(energies))) * duration);
	rtol = max(opts.rtol / scale, min(opts.rtol, RAW_RTOL_FLOOR));
	return (rtol, opts.atol * rtol / opts.rtol);


# Step statistics from the VODE integer work array (NST, NCFN, NETF).
def _step_counts(solver):
	iwork = getattr(getattr(solver, '_integrator', None), 'iwork', None);
	if(iwork is None or len(iwork) < 22):
		return (-1, -1);
	return (int(iwork[10]), int(iwork[20]) + int(iwork[21]));


## Writes checkpoints as CSV (t, P_gs, norm).
# @param path Output file.
# @param result A PropagationResult.
def write_checkpoints(path, result):
	with open(path, 'w', newline='') as f:
		f.write('t_au,P_gs,norm\n');
		for t, p, norm in result.checkpoints:
			f.write('%.10g,%.10g,%.10g\n' % (t, p, norm));
