#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#

## @package twocenter
#
# One-electron homonuclear two-center system (H2+ like) in prolate spheroidal
# coordinates xi = (r1 + r2)/R in [1, xi_max], eta = (r1 - r2)/R in [-1, 1].
#
# States are psi = f(xi, eta) exp(i M phi)/sqrt(2 pi) with M = +-Lambda, and f is
# expanded in a tensor product of B-splines. With the volume element
# (R/2)^3 (xi^2 - eta^2) every operator is a short sum of Kronecker products of
# one dimensional matrices:
#
#   T = R/4 [(xi^2-1) d_xi^2 + (1-eta^2) d_eta^2 + Lambda^2 (1/(xi^2-1) + 1/(1-eta^2))]
#   V = -R^2/2 xi
#   S = (R/2)^3 (xi^2 - eta^2)
#
# Inversion maps (xi, eta, phi) to (xi, -eta, phi + pi), so a gerade/ungerade
# block lives on the even/odd half of the eta basis, flipped for odd Lambda.
# Degenerate M = +-Lambda pairs are replaced by their reflection symmetric
# combination (psi + psi*)/sqrt(2) ~ f cos(Lambda phi); the couplings of the
# combinations pick up a factor sqrt(2) when Lambda + Lambda' = 1.

import math as math;
import numpy as np;
from collections import namedtuple as namedtuple;

from . import log as log;
from .bspline import build_knots, assemble_dense, gauss_legendre_rule, basis_values;
from .eigenbasis import EigenBasis, EigenBlock, DipoleCouplingSet, solve_block;
from .errors import ConfigError, NumericalError;

## Names of the Lambda = 0, 1, 2, ... sectors.
LAMBDA_NAMES = ('sigma', 'pi', 'delta', 'phi', 'gamma', 'eta', 'iota');

## Orientations of the polarisation with respect to the molecular axis.
ORIENTATIONS = ('parallel', 'perpendicular');


## Parameters of the two-center system and its basis.
class TwoCenterSpec(namedtuple('TwoCenterSpec',
		'R xi_max xi_splines xi_order eta_splines eta_order lambda_max include_repulsion max_eta_nodes')):
	__slots__ = ();

	def __new__(cls, R, xi_max, xi_splines=120, xi_order=10, eta_splines=24, eta_order=8,
			lambda_max=3, include_repulsion=True, max_eta_nodes=None):
		if(not float(R) > 0):
			raise ConfigError('Internuclear distance must be positive, got ' + str(R), 'system.R');
		if(not float(xi_max) > 1):
			raise ConfigError('xi_max must exceed 1, got ' + str(xi_max), 'basis.box');
		if(int(lambda_max) < 0):
			raise ConfigError('lambda_max must be >= 0, got ' + str(lambda_max), 'system.lambda_max');
		if(int(eta_splines) < int(eta_order) + 2):
			raise ConfigError('Need at least eta_order + 2 eta splines, got ' + str(eta_splines), 'basis.eta_splines');
		if(int(xi_splines) < int(xi_order) + 2):
			raise ConfigError('Need at least xi_order + 2 xi splines, got ' + str(xi_splines), 'basis.xi_splines');
		return super(TwoCenterSpec, cls).__new__(cls, float(R), float(xi_max), int(xi_splines), int(xi_order),
			int(eta_splines), int(eta_order), int(lambda_max), bool(include_repulsion),
			None if max_eta_nodes is None else int(max_eta_nodes));

	## Sizes xi_max so that the major semi-axis R xi_max / 2 equals box.
	@classmethod
	def from_box(cls, R, box, **kwargs):
		return cls(R, 2.0 * float(box) / float(R), **kwargs);

	## Default basis: box 120 a.u., xi (120, 10), eta (24, 8), Lambda <= 3.
	@classmethod
	def default(cls, R, **kwargs):
		kwargs.setdefault('lambda_max', 3);
		return cls.from_box(R, 120.0, **kwargs);

	## Small basis for quick checks of the symmetry machinery.
	@classmethod
	def small(cls, R, **kwargs):
		for key, value in (('xi_splines', 24), ('xi_order', 6), ('eta_splines', 10), ('eta_order', 6), ('lambda_max', 2)):
			kwargs.setdefault(key, value);
		return cls.from_box(R, 30.0, **kwargs);

	## Ionisation threshold in the reported energy convention.
	@property
	def threshold(self):
		return 1.0 / self.R if self.include_repulsion else 0.0;

	def _to_dict(self):
		return dict(self._asdict());


## Symmetry sector (Lambda, inversion parity) of reflection symmetric states.
class SymmetryBlock(namedtuple('SymmetryBlock', 'lam parity reflection')):
	__slots__ = ();

	def __new__(cls, lam, parity, reflection='symmetric'):
		if(int(lam) < 0 or int(lam) >= len(LAMBDA_NAMES)):
			raise ValueError('Unsupported Lambda ' + str(lam));
		if(parity not in ('g', 'u')):
			raise ValueError('Parity must be g or u, got ' + str(parity));
		if(reflection != 'symmetric'):
			raise ValueError('Only reflection symmetric blocks are propagated.');
		return super(SymmetryBlock, cls).__new__(cls, int(lam), parity, reflection);

	@classmethod
	def from_label(cls, label):
		name, parity = label.split('_');
		return cls(LAMBDA_NAMES.index(name), parity);

	@property
	def label(self):
		return LAMBDA_NAMES[self.lam] + '_' + self.parity;

	## Parity of f under eta -> -eta: inversion parity times (-1)^Lambda.
	@property
	def eta_parity(self):
		return (1 if self.parity == 'g' else -1) * (-1)**self.lam;


## Blocks needed for one orientation, starting from sigma_g.
# @param orientation (str) 'parallel' or 'perpendicular'.
# @param lambda_max (int) Highest Lambda.
# @returns list of SymmetryBlock.
def blocks_for_orientation(orientation, lambda_max):
	if(orientation == 'parallel'):
		return [SymmetryBlock(0, 'g'), SymmetryBlock(0, 'u')];
	if(orientation == 'perpendicular'):
		return [SymmetryBlock(lam, 'g' if lam % 2 == 0 else 'u') for lam in range(lambda_max + 1)];
	raise ValueError('Unknown orientation ' + str(orientation));


## Every reflection symmetric block up to lambda_max, sigma_g first.
def all_blocks(lambda_max):
	return [SymmetryBlock(lam, p) for lam in range(lambda_max + 1) for p in ('g', 'u')];


## One dimensional matrices on the full xi and eta spline sets.
class _SpheroidalOperators:

	def __init__(self, spec):
		self.spec = spec;
		self.kv_xi  = build_knots(spec.xi_splines, spec.xi_order, (1.0, spec.xi_max));
		self.kv_eta = build_knots(spec.eta_splines, spec.eta_order, (-1.0, 1.0));
		qx = gauss_legendre_rule(self.kv_xi);
		qe = gauss_legendre_rule(self.kv_eta);
		xi = lambda fn, kind='potential': assemble_dense(self.kv_xi, fn, kind, quadrature=qx);
		eta = lambda fn, kind='potential': assemble_dense(self.kv_eta, fn, kind, quadrature=qe);

		self.xi = {
			'overlap'   : xi(None, 'overlap'),
			'x'         : xi(lambda x: x),
			'x2'        : xi(lambda x: x**2),
			'kinetic'   : xi(lambda x: x**2 - 1.0, 'kinetic'),
			'centrifugal': xi(lambda x: 1.0 / (x**2 - 1.0)),
			'z_grad'    : xi(lambda x: x**2 - 1.0, 'first-derivative'),
			'rho_grad'  : xi(lambda x: np.sqrt(x**2 - 1.0) * x, 'first-derivative'),
			'rho'       : xi(lambda x: np.sqrt(x**2 - 1.0)),
			'inv_rho'   : xi(lambda x: 1.0 / np.sqrt(x**2 - 1.0)),
		};
		self.eta = {
			'overlap'   : eta(None, 'overlap'),
			'x'         : eta(lambda y: y),
			'x2'        : eta(lambda y: y**2),
			'kinetic'   : eta(lambda y: 1.0 - y**2, 'kinetic'),
			'centrifugal': eta(lambda y: 1.0 / (1.0 - y**2)),
			'z_grad'    : eta(lambda y: 1.0 - y**2, 'first-derivative'),
			'rho_grad'  : eta(lambda y: np.sqrt(1.0 - y**2) * y, 'first-derivative'),
			'rho'       : eta(lambda y: np.sqrt(1.0 - y**2)),
			'inv_rho'   : eta(lambda y: 1.0 / np.sqrt(1.0 - y**2)),
		};

	## Columns selecting the xi splines of a block (regular at xi = 1, zero at xi_max).
	def xi_projector(self, lam):
		n = self.kv_xi.n_splines;
		first = 1 if lam > 0 else 0;
		return np.eye(n)[:, first:n - 1];

	## Even or odd combinations of mirrored eta splines (all splines when eta_parity is None).
	def eta_projector(self, lam, eta_parity):
		n = self.kv_eta.n_splines;
		first = 1 if lam > 0 else 0;
		if(eta_parity is None):
			return np.eye(n)[:, first:n - first];
		columns = [];
		for i in range(first, n // 2 + n % 2):
			mirror = n - 1 - i;
			v = np.zeros(n);
			if(i == mirror):
				if(eta_parity < 0):
					continue;
				v[i] = 1.0;
			else:
				v[i] = 1.0 / math.sqrt(2.0);
				v[mirror] = eta_parity / math.sqrt(2.0);
			columns.append(v);
		return np.array(columns).T;

	def projectors(self, block, eta_parity='auto'):
		if(eta_parity == 'auto'):
			eta_parity = block.eta_parity;
		return self.xi_projector(block.lam), self.eta_projector(block.lam, eta_parity);

	## Sum of Kronecker products of projected one dimensional matrices.
	def operator(self, terms, bra, ket):
		(qa, pa), (qb, pb) = bra, ket;
		result = 0.0;
		for coefficient, xi_key, eta_key in terms:
			x = qa.T.dot(self.xi[xi_key]).dot(qb);
			y = pa.T.dot(self.eta[eta_key]).dot(pb);
			result = result + coefficient * np.kron(x, y);
		return result;

	## Hamiltonian and overlap of one block (electronic energies).
	def hamiltonian(self, lam, projectors):
		R = self.spec.R;
		terms = [
			(R / 2.0, 'kinetic', 'overlap'),
			(R / 2.0, 'overlap', 'kinetic'),
			(-R**2 / 2.0, 'x', 'overlap'),
		];
		if(lam > 0):
			terms += [(R / 4.0 * lam**2, 'overlap', 'centrifugal'), (R / 4.0 * lam**2, 'centrifugal', 'overlap')];
		h = self.operator(terms, projectors, projectors);
		s = self.operator([((R / 2.0)**3, 'x2', 'overlap'), (-(R / 2.0)**3, 'overlap', 'x2')], projectors, projectors);
		return h, s;

	## Raw velocity-gauge elements <f' M'| eps.grad |f M> in the tensor basis.
	#
	# parallel (M' = M):  R^2/4 [(xi^2-1) d_xi (x) eta + xi (x) (1-eta^2) d_eta]
	# perpendicular (|M'| = |M| + s): R^2/8 [d_rho - s |M| / rho] with
	#   d_rho -> sqrt(xi^2-1) xi d_xi (x) sqrt(1-eta^2) - sqrt(xi^2-1) (x) sqrt(1-eta^2) eta d_eta
	#   1/rho -> sqrt(xi^2-1) (x) 1/sqrt(1-eta^2) + 1/sqrt(xi^2-1) (x) sqrt(1-eta^2)
	def gradient(self, orientation, bra_lam, ket_lam, bra, ket):
		R = self.spec.R;
		if(orientation == 'parallel'):
			terms = [(R**2 / 4.0, 'z_grad', 'x'), (R**2 / 4.0, 'x', 'z_grad')];
		else:
			s = bra_lam - ket_lam;
			if(abs(s) != 1):
				raise ValueError('Perpendicular couplings need |Delta Lambda| = 1');
			c = R**2 / 8.0;
			terms = [
				(c, 'rho_grad', 'rho'),
				(-c, 'rho', 'rho_grad'),
				(-c * s * ket_lam, 'rho', 'inv_rho'),
				(-c * s * ket_lam, 'inv_rho', 'rho'),
			];
		return self.operator(terms, bra, ket);


def _operators(basis):
	ops = getattr(basis, 'operators', None);
	if(ops is None):
		ops = _SpheroidalOperators(TwoCenterSpec(**basis.metadata['spec']));
		basis.operators = ops;
	return ops;


## Counts sign changes of f along eta at the xi where f is largest.
def _eta_nodes(ops, coefficients, projectors):
	q, p = projectors;
	xs = np.linspace(1.0, ops.spec.xi_max, 60);
	ys = np.linspace(-1.0, 1.0, 801);
	fx = basis_values(ops.kv_xi, xs).dot(q);
	fy = basis_values(ops.kv_eta, ys).dot(p);
	grid = fx.dot(coefficients).dot(fy.T);
	row = grid[np.argmax(np.sum(grid**2, axis=1))];
	row = row[np.abs(row) > 1e-6 * np.max(np.abs(row))];
	return int(np.sum(np.signbit(row[1:]) != np.signbit(row[:-1])));


## Solves the field-free problem of one symmetry block.
# @param spec A TwoCenterSpec.
# @param block A SymmetryBlock.
# @param ops Operators of spec (built when None).
# @param eta_symmetry (bool) Use the even/odd eta half basis; False solves on all eta splines.
# @param log A log context.
# @returns An EigenBlock, energies in the convention of spec.include_repulsion.
def solve_two_center(spec, block, ops=None, eta_symmetry=True, log=log.get_default_context()):
	ops = _SpheroidalOperators(spec) if ops is None else ops;
	projectors = ops.projectors(block, 'auto' if eta_symmetry else None);
	h, s = ops.hamiltonian(block.lam, projectors);
	shape = (projectors[0].shape[1], projectors[1].shape[1]);
	label = block.label if eta_symmetry else block.label.split('_')[0];
	with log.timed('spheroidal block ' + label + ' (' + str(h.shape[0]) + ' functions)', 3):
		result = solve_block(label, h, s, shape);
	if(spec.include_repulsion):
		result = result._replace(energies=result.energies + 1.0 / spec.R);
	if(spec.max_eta_nodes is not None):
		keep = [j for j in range(result.n_states)
			if _eta_nodes(ops, result.coefficients(j), projectors) <= spec.max_eta_nodes];
		log.info(label + ': ' + str(result.n_states - len(keep)) + ' states above ' + str(spec.max_eta_nodes) + ' eta nodes dropped', 2);
		result = result._replace(energies=result.energies[keep], vectors=result.vectors[:, keep]);
	return result;


## Solves several symmetry blocks into one EigenBasis.
# @param spec A TwoCenterSpec.
# @param blocks (list) SymmetryBlocks, sigma_g first; all up to lambda_max when None.
# @param log A log context.
# @returns An EigenBasis of kind 'two-center'.
def solve_molecule(spec, blocks=None, log=log.get_default_context()):
	blocks = all_blocks(spec.lambda_max) if blocks is None else list(blocks);
	blocks = [b for b in blocks if b.lam <= spec.lambda_max];
	ops = _SpheroidalOperators(spec);
	solved = [solve_two_center(spec, b, ops, log=log) for b in blocks];
	log.info('H2+ R=' + repr(spec.R) + ': ground ' + blocks[0].label + ' energy %.8f a.u.' % solved[0].energies[0], 2);
	metadata = {
		'kind': 'two-center',
		'spec': spec._to_dict(),
		'lambda': dict((b.label, b.lam) for b in blocks),
	};
	basis = EigenBasis('two-center', solved, spec.threshold, metadata);
	basis.operators = ops;
	return basis;


## Ground energy, verified against a refined basis.
# @param spec A TwoCenterSpec.
# @param block A SymmetryBlock.
# @param tolerance (float) Accepted change between the two bases (a.u.).
# @returns (float) Ground energy on spec's basis.
def converged_ground_energy(spec, block, tolerance=1e-5, log=log.get_default_context()):
	coarse = solve_two_center(spec, block, log=log).energies[0];
	finer = spec._replace(xi_splines=spec.xi_splines + spec.xi_splines // 5, eta_splines=spec.eta_splines + 4);
	fine = solve_two_center(finer, block, log=log).energies[0];
	if(abs(fine - coarse) > tolerance):
		raise NumericalError('Ground energy not converged: ' + repr(coarse) + ' vs ' + repr(fine) + ' after refinement', block=block.label);
	return float(coarse);


# --- Reflection symmetry adaptation -------------------------------------------

## Complex orbital f(xi, eta) exp(i m phi)/sqrt(2 pi), m = +-Lambda.
ComplexOrbital = namedtuple('ComplexOrbital', 'lam m coefficients');

## Reflection symmetric orbital f(xi, eta) cos(Lambda phi)/sqrt(pi) (Lambda > 0).
RealOrbital = namedtuple('RealOrbital', 'lam coefficients');


## Multiplies an orbital by the global phase that makes its largest coefficient real positive.
#
# With a real f, reflection through a plane containing the axis (phi -> -phi)
# is the same as complex conjugation.
def fix_phase(psi):
	c = np.asarray(psi.coefficients);
	pivot = c.flat[np.argmax(np.abs(c))];
	phase = np.conj(pivot) / abs(pivot) if pivot != 0 else 1.0;
	return psi._replace(coefficients=c * phase);


## Reflection symmetric combination (psi + psi*)/sqrt(2).
# @param psi A ComplexOrbital (phase fixed with fix_phase when f is complex).
# @param log A log context.
# @returns A RealOrbital; Lambda = 0 input is returned unchanged with a warning.
def symmetrize_degenerate(psi, log=log.get_default_context()):
	if(psi.lam == 0):
		log.warning('Lambda = 0 orbital is already reflection symmetric, returned unchanged.', 1);
		return psi;
	if(abs(psi.m) != psi.lam):
		raise ValueError('M = ' + str(psi.m) + ' does not match Lambda = ' + str(psi.lam));
	psi = fix_phase(psi);
	return RealOrbital(psi.lam, np.real(psi.coefficients));


## Azimuthal factor of an orbital at angle phi.
def azimuthal_factor(state, phi):
	phi = np.asarray(phi, dtype=float);
	if(isinstance(state, RealOrbital)):
		return np.cos(state.lam * phi) / math.sqrt(math.pi);
	return np.exp(1j * state.m * phi) / math.sqrt(2.0 * math.pi);


## Reflection phi -> -phi through the xz plane.
def reflect(state):
	if(isinstance(state, RealOrbital)):
		return state;
	return ComplexOrbital(state.lam, -state.m, np.conj(state.coefficients));


# --- Couplings ---------------------------------------------------------------

def _block_pairs(basis, orientation):
	blocks = [SymmetryBlock.from_label(l) for l in basis.labels()];
	for i, a in enumerate(blocks):
		for b in blocks[i + 1:]:
			if(a.parity == b.parity):
				continue;
			if(orientation == 'parallel' and a.lam == b.lam):
				yield (b, a) if a.parity == 'g' else (a, b);
			elif(orientation == 'perpendicular' and abs(a.lam - b.lam) == 1):
				yield (b, a) if b.lam > a.lam else (a, b);


## Elements <bra| eps.grad |ket> between the complex orbitals of two blocks.
# @param basis A two-center EigenBasis.
# @param bra (str) Block label of the bra states.
# @param ket (str) Block label of the ket states.
# @param orientation (str) 'parallel' or 'perpendicular'.
# @returns ndarray (bra states, ket states).
def raw_dipole_block(basis, bra, ket, orientation):
	ops = _operators(basis);
	a, b = SymmetryBlock.from_label(bra), SymmetryBlock.from_label(ket);
	pa, pb = ops.projectors(a), ops.projectors(b);
	matrix = ops.gradient(orientation, a.lam, b.lam, pa, pb);
	return basis.block(bra).vectors.T.dot(matrix).dot(basis.block(ket).vectors);


## Velocity-gauge couplings between reflection symmetric states.
#
# parallel: Delta Lambda = 0 with opposite parity; perpendicular: |Delta Lambda| = 1
# with opposite parity. Elements between Lambda = 0 and Lambda' = 1 carry an
# extra sqrt(2) with respect to the complex orbital elements.
#
# @param basis A two-center EigenBasis.
# @param orientation (str) 'parallel' or 'perpendicular'.
# @returns A DipoleCouplingSet.
def molecular_dipole_set(basis, orientation):
	if(orientation not in ORIENTATIONS):
		raise ValueError('Unknown orientation ' + str(orientation));
	result = DipoleCouplingSet(orientation);
	for bra, ket in _block_pairs(basis, orientation):
		matrix = raw_dipole_block(basis, bra.label, ket.label, orientation);
		if(bra.lam + ket.lam == 1):
			matrix = math.sqrt(2.0) * matrix;
		result.add(bra.label, ket.label, matrix);
	return result;


def _m_label(label, m):
	return label if m == 0 else label + '(%+d)' % m;


## Basis carrying both M = +Lambda and M = -Lambda partners as separate blocks.
# @param basis A two-center EigenBasis.
# @returns An EigenBasis with blocks like 'pi_u(+1)' and 'pi_u(-1)'.
def expand_magnetic_partners(basis):
	blocks = [];
	lambdas = {};
	for label in basis.labels():
		lam = SymmetryBlock.from_label(label).lam;
		for m in ((0,) if lam == 0 else (lam, -lam)):
			blocks.append(basis.block(label)._replace(label=_m_label(label, m)));
			lambdas[_m_label(label, m)] = lam;
	metadata = dict(basis.metadata);
	metadata['lambda'] = lambdas;
	result = EigenBasis(basis.kind, blocks, basis.threshold, metadata);
	result.operators = _operators(basis);
	return result;


## Perpendicular couplings between explicit M states (no reflection adaptation).
#
# The x component of the gradient couples M to M +- 1; the element between
# complex orbitals depends only on |M| and |M'|.
#
# @param basis A two-center EigenBasis (reflection symmetric blocks).
# @returns (expanded EigenBasis, DipoleCouplingSet over its blocks).
def explicit_m_dipole_set(basis):
	expanded = expand_magnetic_partners(basis);
	result = DipoleCouplingSet('perpendicular-explicit-m');
	for bra, ket in _block_pairs(basis, 'perpendicular'):
		raw = raw_dipole_block(basis, bra.label, ket.label, 'perpendicular');
		for m_ket in ((0,) if ket.lam == 0 else (ket.lam, -ket.lam)):
			for m_bra in ((0,) if bra.lam == 0 else (bra.lam, -bra.lam)):
				if(abs(m_bra - m_ket) == 1):
					result.add(_m_label(bra.label, m_bra), _m_label(ket.label, m_ket), raw);
	return expanded, result;


## Blocks connected to start through the couplings (start first).
def reachable_blocks(couplings, start):
	found = [start];
	for label in found:
		for a, b in couplings.pairs:
			for other, this in ((a, b), (b, a)):
				if(this == label and other not in found):
					found.append(other);
	return found;
