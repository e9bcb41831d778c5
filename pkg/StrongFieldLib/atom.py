#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#

## @package atom
#
# One-parameter model atom.
#
# The potential V(r) = -(1/r)(1 + sign(alpha) exp(-2r/sqrt|alpha|)) reduces to
# hydrogen for alpha = 0 and tends to -1/r at large r for any alpha. Radial
# functions u(r) = r R(r) are expanded in B-splines on [0, r_max]; the first
# spline (nonzero at r = 0) and the last (nonzero at r_max) are dropped.

import math as math;
import numpy as np;
from collections import namedtuple as namedtuple;
from scipy.optimize import brentq;

from . import log as log;
from .bspline import build_knots, assemble_band, assemble_dense, gauss_legendre_rule;
from .eigenbasis import EigenBasis, DipoleCouplingSet, solve_block;
from .errors import ConfigError, NumericalError;

## Ionisation potential of hydrogen (a.u.).
IP_HYDROGEN = 0.5;

## Sanity bounds for calibration targets (a.u.).
CALIBRATION_BOUNDS = (0.05, 5.0);


## Parameters of the model atom and its radial basis.
class ModelAtomSpec(namedtuple('ModelAtomSpec', 'alpha r_max n_splines order l_max')):
	__slots__ = ();

	def __new__(cls, alpha=0.0, r_max=350.0, n_splines=350, order=15, l_max=5):
		if(not float(r_max) > 0):
			raise ConfigError('r_max must be positive, got ' + str(r_max), 'basis.r_max');
		if(int(l_max) < 0):
			raise ConfigError('l_max must be >= 0, got ' + str(l_max), 'system.l_max');
		if(int(n_splines) < int(order) + 2):
			raise ConfigError('Need at least order + 2 radial splines, got ' + str(n_splines), 'basis.n_splines');
		return super(ModelAtomSpec, cls).__new__(cls, float(alpha), float(r_max), int(n_splines), int(order), int(l_max));

	## Box and basis of the full size runs.
	@classmethod
	def default(cls, alpha=0.0, l_max=5):
		return cls(alpha, 350.0, 350, 15, l_max);

	## Smaller box and basis for quick runs.
	@classmethod
	def fast(cls, alpha=0.0, l_max=4):
		return cls(alpha, 120.0, 140, 8, l_max);

	def _to_dict(self):
		return dict(self._asdict());


## Block label of angular momentum l.
def block_label(l):
	return 'l' + str(int(l));

def _label_l(label):
	return int(label[1:]);


## Model potential.
# @param r (float or ndarray) Radius in a.u., strictly positive.
# @param alpha (float) Screening parameter.
# @returns The potential energy in a.u.
def potential(r, alpha):
	r = np.asarray(r, dtype=float);
	if(np.any(r <= 0)):
		raise ValueError('The model potential is defined for r > 0 only.');
	result = -1.0 / r;
	if(alpha != 0.0):
		result = result * (1.0 + math.copysign(1.0, alpha) * np.exp(-2.0 * r / math.sqrt(abs(alpha))));
	return result if result.ndim else float(result);


## Closed form estimate of the ionisation potential.
#
# Within 1e-3 of ip_numeric at the H2 calibration points (alpha 0.03126, 0.12194),
# off by about 1.2e-2 at alpha = 0.5.
# @param alpha (float) Screening parameter.
# @returns Ip in a.u.
def ip_approx(alpha):
	alpha = float(alpha);
	if(alpha == 0.0):
		return IP_HYDROGEN;
	s = 1.0 if alpha > 0 else 11.0 / 4.0;
	return IP_HYDROGEN + alpha / (1.0 + math.sqrt(abs(alpha)))**s;


## Radial operators shared by every l.
class _RadialOperators:
	def __init__(self, spec):
		self.kv = build_knots(spec.n_splines, spec.order, (0.0, spec.r_max));
		quad = gauss_legendre_rule(self.kv);
		trim = (1, 1);
		alpha = spec.alpha;
		self.overlap_band = assemble_band(self.kv, None, 'overlap', trim, quad);
		self.overlap     = self.overlap_band.to_dense();
		self.kinetic     = assemble_dense(self.kv, None, 'kinetic', trim, quad);
		self.potential   = assemble_dense(self.kv, lambda r: potential(r, alpha), 'potential', trim, quad);
		self.centrifugal = assemble_dense(self.kv, lambda r: 0.5 / r**2, 'potential', trim, quad);
		self.inverse_r   = assemble_dense(self.kv, lambda r: 1.0 / r, 'potential', trim, quad);
		self.position    = assemble_dense(self.kv, lambda r: r, 'potential', trim, quad);
		self.derivative  = assemble_dense(self.kv, None, 'first-derivative', trim, quad);

	def hamiltonian(self, l):
		return self.kinetic + self.potential + l * (l + 1) * self.centrifugal;


## Solves the field-free radial problem for every l <= l_max.
# @param spec A ModelAtomSpec.
# @param l_values (list) Angular momenta to solve, all up to spec.l_max when None.
# @param log A log context.
# @returns An EigenBasis of kind 'atom' with blocks 'l0', 'l1', ...
def solve_atom(spec, l_values=None, log=log.get_default_context()):
	ops = _RadialOperators(spec);
	if(l_values is None):
		l_values = range(spec.l_max + 1);
	blocks = [];
	n = ops.overlap.shape[0];
	for l in l_values:
		with log.timed('radial block l=' + str(l), 3):
			blocks.append(solve_block(block_label(l), ops.hamiltonian(l), ops.overlap_band, (n,)));
	if(blocks and blocks[0].label == 'l0' and not blocks[0].energies[0] < 0):
		raise NumericalError('Model atom has no bound s state', block='l0');
	log.info('Model atom alpha=' + repr(spec.alpha) + ': E(l0, 1) = %.10f a.u.' % blocks[0].energies[0], 2);
	basis = EigenBasis('atom', blocks, 0.0, {'kind': 'atom', 'spec': spec._to_dict()});
	basis.operators = ops;
	return basis;


## Numerically computed ionisation potential (lowest s state).
# @param spec A ModelAtomSpec.
# @returns Ip in a.u.
def ip_numeric(spec):
	ops = _RadialOperators(spec);
	block = solve_block('l0', ops.hamiltonian(0), ops.overlap_band, (ops.overlap.shape[0],));
	return -float(block.energies[0]);


def _operators(basis):
	ops = getattr(basis, 'operators', None);
	if(ops is None):
		ops = _RadialOperators(ModelAtomSpec(**basis.metadata['spec']));
		basis.operators = ops;
	return ops;


## Angular factor <l+1, m| cos(theta) |l, m>.
def _angular(l, m=0):
	return math.sqrt(((l + 1)**2 - m**2) / float((2 * l + 1) * (2 * l + 3)));


## Velocity-gauge dipole couplings <n' l+1| d/dz |n l> for linear z polarisation.
#
# Radially, <l+1| d/dz |l> = c_l integral u' (d/dr - (l+1)/r) u dr with
# c_l = <l+1|cos(theta)|l>; the reverse blocks follow from antisymmetry.
#
# @param basis An atomic EigenBasis with at least two consecutive l blocks.
# @param axis (str) Polarisation axis; the atom is isotropic, only 'z' is used.
# @returns A DipoleCouplingSet.
def atomic_dipole_set(basis, axis='z'):
	if(axis != 'z'):
		raise ValueError('Atomic couplings are built along z, got ' + str(axis));
	ops = _operators(basis);
	result = DipoleCouplingSet('z');
	for label in basis.labels():
		l = _label_l(label);
		upper = block_label(l + 1);
		if(upper not in basis):
			continue;
		radial = ops.derivative - (l + 1) * ops.inverse_r;
		lower_vectors = basis.block(label).vectors;
		upper_vectors = basis.block(upper).vectors;
		result.add(upper, label, _angular(l) * upper_vectors.T.dot(radial).dot(lower_vectors));
	if(not result.pairs):
		raise ValueError('Dipole couplings need at least l = 0 and l = 1 blocks.');
	return result;


## Length-gauge elements <n' l+1| z |n l>, for gauge cross-checks.
def atomic_length_set(basis):
	ops = _operators(basis);
	result = DipoleCouplingSet('z-length');
	for label in basis.labels():
		l = _label_l(label);
		upper = block_label(l + 1);
		if(upper in basis):
			block = _angular(l) * basis.block(upper).vectors.T.dot(ops.position).dot(basis.block(label).vectors);
			# z is symmetric; stored as the lower triangle only
			result.pairs[(upper, label)] = block;
	return result;


## Velocity form oscillator strength sum from the ground state.
# @param basis An atomic EigenBasis with blocks l0 and l1.
# @param couplings Its DipoleCouplingSet.
# @returns (float) sum_n 2 |<n p|d/dz|1s>|^2 / (E_n - E_1s), 1 for a complete basis.
def trk_sum(basis, couplings):
	column = couplings.block('l1', 'l0')[:, 0];
	gaps = basis.block('l1').energies - basis.block('l0').energies[0];
	return float(np.sum(2.0 * column**2 / gaps));


## Finds alpha such that the computed ground state binding energy is target_ip.
#
# ip_approx is inverted for a first guess, then a bracket is widened around it
# and the root of the numerical Ip is refined with Brent's method.
#
# @param target_ip (float) Requested ionisation potential (a.u.).
# @param spec A ModelAtomSpec; its alpha is ignored.
# @param tolerance (float) Accepted |Ip(alpha) - target_ip|.
# @param log A log context.
# @returns (float) alpha.
def calibrate_alpha(target_ip, spec=None, tolerance=1e-7, log=log.get_default_context()):
	target_ip = float(target_ip);
	if(not CALIBRATION_BOUNDS[0] <= target_ip <= CALIBRATION_BOUNDS[1]):
		raise ConfigError('Calibration target ' + str(target_ip) + ' a.u. outside ' + str(CALIBRATION_BOUNDS), 'system.target_ip');
	if(spec is None):
		spec = ModelAtomSpec.fast();

	def mismatch(alpha):
		return ip_numeric(spec._replace(alpha=float(alpha))) - target_ip;

	try:
		guess = brentq(lambda a: ip_approx(a) - target_ip, -50.0, 50.0, xtol=1e-12);
	except ValueError:
		guess = 0.0;
	step = max(0.02, 0.1 * abs(guess));
	low, high = guess - step, guess + step;
	f_low, f_high = mismatch(low), mismatch(high);
	for _ in range(40):
		if(f_low < 0 < f_high):
			break;
		if(f_low >= 0):
			low -= step;
			f_low = mismatch(low);
		if(f_high <= 0):
			high += step;
			f_high = mismatch(high);
		step *= 2.0;
	else:
		raise NumericalError('Could not bracket alpha for Ip = ' + repr(target_ip));
	log.info('Calibrating alpha in [%.6f, %.6f] (guess %.6f)' % (low, high, guess), 2);

	alpha = brentq(mismatch, low, high, xtol=1e-12, rtol=4 * np.finfo(float).eps);
	residual = mismatch(alpha);
	if(abs(residual) > tolerance):
		raise NumericalError('alpha calibration residual ' + repr(residual) + ' above ' + repr(tolerance));
	log.info('alpha = %.8f reproduces Ip = %.8f a.u.' % (alpha, target_ip), 1);
	return float(alpha);


## Numerical and approximate Ip over a grid of alpha.
# @param alphas (iterable) Screening parameters.
# @param spec A ModelAtomSpec (alpha ignored).
# @returns list of (alpha, Ip numeric, Ip approx).
def ip_curve(alphas, spec=None):
	if(spec is None):
		spec = ModelAtomSpec.fast();
	return [(float(a), ip_numeric(spec._replace(alpha=float(a))), ip_approx(a)) for a in alphas];
