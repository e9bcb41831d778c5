#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#

## @package bspline
#
# B-spline basis construction, evaluation and banded matrix assembly.
#
# Every eigenproblem of the library is expressed on products of one dimensional
# B-spline bases built here. Knot sequences are uniform with full multiplicity
# at both ends; integrals use Gauss-Legendre rules with order + 1 points per
# knot interval.

import numpy as np;
from collections import namedtuple as namedtuple;
import scipy.linalg as linalg;
from scipy.interpolate import BSpline;

from .errors import ConfigError, NumericalError;

## Operator kinds accepted by assemble_band.
OPERATOR_KINDS = ('overlap', 'kinetic', 'potential', 'first-derivative');


## Knot vector of a B-spline basis.
#
# The breakpoints include both ends of the domain; the full knot sequence
# repeats each end `order` times.
class KnotVector(namedtuple('KnotVector', 'order breakpoints')):
	__slots__ = ();

	def __new__(cls, order, breakpoints):
		order = int(order);
		breakpoints = np.array(breakpoints, dtype=float);
		breakpoints.setflags(write=False);
		if(order < 2):
			raise ConfigError('B-spline order must be >= 2, got ' + str(order));
		if(breakpoints.ndim != 1 or len(breakpoints) < 2):
			raise ConfigError('A knot vector needs at least two breakpoints.');
		if(not np.all(np.diff(breakpoints) > 0)):
			raise ConfigError('Breakpoints must be strictly increasing.');
		return super(KnotVector, cls).__new__(cls, order, breakpoints);

	## Full knot sequence (ends with multiplicity order).
	@property
	def knots(self):
		k = self.order;
		a, b = self.breakpoints[0], self.breakpoints[-1];
		return np.concatenate(([a] * (k - 1), self.breakpoints, [b] * (k - 1)));

	## Number of B-splines: number of knots minus order.
	@property
	def n_splines(self):
		return len(self.knots) - self.order;

	@property
	def n_intervals(self):
		return len(self.breakpoints) - 1;

	@property
	def domain(self):
		return (float(self.breakpoints[0]), float(self.breakpoints[-1]));

	## Knot span (support length) of every spline.
	def spans(self):
		t = self.knots;
		k = self.order;
		return np.array([t[i + k] - t[i] for i in range(self.n_splines)]);


## Gauss-Legendre nodes and weights for every knot interval.
# Arrays have shape (n_intervals, n_points).
class QuadratureRule(namedtuple('QuadratureRule', 'nodes weights')):
	__slots__ = ();

	@property
	def n_points(self):
		return self.nodes.shape[1];

	## Integrates a vectorised function over the whole domain.
	# @param self An instance of QuadratureRule.
	# @param fn function(x: ndarray) -> ndarray.
	# @returns (float) The integral.
	def integrate(self, fn):
		values = np.asarray(fn(self.nodes.ravel()), dtype=float);
		return float(np.dot(values, self.weights.ravel()));


## Banded matrix.
#
# Symmetric matrices keep only the lower triangle, `data[i - j, j] = M[i, j]`
# (the layout of scipy.linalg.cholesky_banded and eig_banded with lower=True).
# General matrices use the full band layout of scipy.linalg.solve_banded,
# `data[u + i - j, j] = M[i, j]` with u = bandwidth.
class BandMatrix(namedtuple('BandMatrix', 'data bandwidth symmetric kind')):
	__slots__ = ();

	@property
	def n(self):
		return self.data.shape[1];

	@property
	def is_symmetric(self):
		return self.symmetric;

	## Storage row of sub diagonal d (negative d for super diagonals).
	def _row(self, d):
		return d if self.symmetric else self.bandwidth + d;

	## Builds a band matrix from a dense one.
	# @param cls BandMatrix.
	# @param dense (ndarray) Square matrix.
	# @param bandwidth (int) Number of sub diagonals kept.
	# @param symmetric (bool) Keep only the lower triangle.
	# @param kind (str) Operator kind tag.
	@classmethod
	def from_dense(cls, dense, bandwidth, symmetric, kind=''):
		n = dense.shape[0];
		u = int(bandwidth);
		if(symmetric):
			data = np.zeros((u + 1, n));
			for d in range(u + 1):
				data[d, :n - d] = np.diagonal(dense, -d);
		else:
			data = np.zeros((2 * u + 1, n));
			for d in range(-u, u + 1):
				if(d >= 0):
					data[u + d, :n - d] = np.diagonal(dense, -d);
				else:
					data[u + d, -d:] = np.diagonal(dense, -d);
		data.setflags(write=False);
		return cls(data, u, bool(symmetric), kind);

	## Expands to a dense matrix.
	# @param self An instance of BandMatrix.
	# @returns (ndarray) n x n matrix.
	def to_dense(self):
		n = self.n;
		u = self.bandwidth;
		result = np.zeros((n, n));
		if(self.symmetric):
			for d in range(u + 1):
				diag = self.data[d, :n - d];
				result[np.arange(d, n), np.arange(n - d)] = diag;
				result[np.arange(n - d), np.arange(d, n)] = diag;
		else:
			for d in range(-u, u + 1):
				if(d >= 0):
					result[np.arange(d, n), np.arange(n - d)] = self.data[u + d, :n - d];
				else:
					result[np.arange(n + d), np.arange(-d, n)] = self.data[u + d, -d:];
		return result;

	## Product M x, diagonal by diagonal.
	# @param self An instance of BandMatrix.
	# @param x (ndarray) Vector of length n, or n x m array.
	# @returns (ndarray) M x.
	def matvec(self, x):
		x = np.asarray(x, dtype=float);
		n = self.n;
		u = self.bandwidth;
		out = np.zeros(x.shape);
		lower = range(u + 1) if self.symmetric else range(-u, u + 1);
		for d in lower:
			if(d >= 0):
				diag = self.data[self._row(d), :n - d];
				out[d:] += _scale(diag, x[:n - d]);
				if(self.symmetric and d > 0):
					out[:n - d] += _scale(diag, x[d:]);
			else:
				diag = self.data[self._row(d), -d:];
				out[:n + d] += _scale(diag, x[-d:]);
		return out;

	## Lower Cholesky factor of a symmetric positive definite band matrix.
	# @param self An instance of BandMatrix.
	# @returns (ndarray) L in the same lower band layout, M = L L^T.
	# @throws NumericalError when the matrix is not positive definite.
	def cholesky(self):
		if(not self.symmetric):
			raise ValueError('Cholesky factor of a non-symmetric ' + self.kind + ' matrix');
		try:
			return linalg.cholesky_banded(self.data, lower=True);
		except linalg.LinAlgError as exc:
			raise NumericalError(self.kind + ' matrix is not positive definite: ' + str(exc));

	## Keeps rows and columns lo..n-hi-1.
	def trimmed(self, lo, hi):
		n = self.n;
		data = np.array(self.data[:, lo:n - hi]);
		m = data.shape[1];
		u = self.bandwidth;
		for d in (range(u + 1) if self.symmetric else range(-u, u + 1)):
			# column j holds M[j + d, j], which falls outside when j + d leaves [0, m)
			row = data[self._row(d)];
			if(d > 0):
				row[max(m - d, 0):] = 0.0;
			elif(d < 0):
				row[:min(-d, m)] = 0.0;
		data.setflags(write=False);
		return BandMatrix(data, u, self.symmetric, self.kind);


def _scale(diag, x):
	return diag[:, None] * x if x.ndim == 2 else diag * x;


## Builds a uniform knot vector.
# @param n_splines (int) Number of B-splines.
# @param order (int) Order k (polynomial degree k - 1).
# @param domain (tuple) Interval (a, b).
# @returns A KnotVector with n_splines - order + 1 intervals.
def build_knots(n_splines, order, domain):
	n_splines = int(n_splines);
	order = int(order);
	a, b = float(domain[0]), float(domain[1]);
	if(order < 2):
		raise ConfigError('B-spline order must be >= 2, got ' + str(order));
	if(n_splines < order):
		raise ConfigError('Need at least ' + str(order) + ' splines of order ' + str(order) + ', got ' + str(n_splines));
	if(not b > a):
		raise ConfigError('Empty spline domain [' + str(a) + ', ' + str(b) + ']');
	return KnotVector(order, np.linspace(a, b, n_splines - order + 2));


## Gauss-Legendre rule on every knot interval.
# @param kv A KnotVector.
# @param n_points (int) Points per interval, order + 1 when omitted.
# @returns A QuadratureRule.
def gauss_legendre_rule(kv, n_points=None):
	if(n_points is None):
		n_points = kv.order + 1;
	if(n_points < kv.order):
		raise ConfigError('At least ' + str(kv.order) + ' quadrature points per interval are required.');
	x, w = np.polynomial.legendre.leggauss(int(n_points));
	left  = kv.breakpoints[:-1, None];
	right = kv.breakpoints[1:, None];
	half  = 0.5 * (right - left);
	nodes = half * x[None, :] + 0.5 * (right + left);
	weights = half * w[None, :];
	return QuadratureRule(nodes, weights);


def _check_domain(kv, x):
	a, b = kv.domain;
	x = np.atleast_1d(np.asarray(x, dtype=float));
	if(np.any(x < a) or np.any(x > b) or not np.all(np.isfinite(x))):
		raise ValueError('Coordinate outside spline domain [' + str(a) + ', ' + str(b) + ']');
	return x;


## Values of every spline (and optionally first derivatives) at many points.
# @param kv A KnotVector.
# @param x (ndarray) Points inside the domain.
# @param derivative (bool) Also return first derivatives.
# @returns ndarray (len(x), n_splines), or a pair of them.
def basis_values(kv, x, derivative=False):
	x = _check_domain(kv, x);
	spline = BSpline(kv.knots, np.eye(kv.n_splines), kv.order - 1, extrapolate=False);
	values = spline(x);
	if(not derivative):
		return values;
	return values, spline.derivative(1)(x);


## Evaluates the splines that do not vanish at x.
# @param kv A KnotVector.
# @param x (float) Point inside the domain.
# @returns list of (index, value, derivative) with at most order entries.
def eval_splines(kv, x):
	xs = _check_domain(kv, x);
	interval = int(np.searchsorted(kv.breakpoints, xs[0], side='right')) - 1;
	interval = min(max(interval, 0), kv.n_intervals - 1);
	values, derivs = basis_values(kv, xs, derivative=True);
	result = [];
	for i in range(interval, interval + kv.order):
		if(values[0, i] != 0.0):
			result.append((i, float(values[0, i]), float(derivs[0, i])));
	return result;


## Assembles a one dimensional operator matrix.
#
# Kinds:
#  - overlap, potential: integral of w B_i B_j
#  - kinetic: 1/2 integral of w B_i' B_j'
#  - first-derivative: integral of w B_i B_j'
#
# @param kv A KnotVector.
# @param weight_function function(x) -> ndarray, constant 1 when None.
# @param operator_kind (str) One of OPERATOR_KINDS.
# @param trim (tuple) Number of splines removed at the left and right ends.
# @param quadrature A QuadratureRule, gauss_legendre_rule(kv) when None.
# @returns A BandMatrix (lower storage for symmetric kinds).
def assemble_band(kv, weight_function=None, operator_kind='overlap', trim=(0, 0), quadrature=None):
	if(operator_kind not in OPERATOR_KINDS):
		raise ValueError('Unknown operator kind ' + str(operator_kind));
	if(quadrature is None):
		quadrature = gauss_legendre_rule(kv);
	k = kv.order;
	n = kv.n_splines;
	n_int, q = quadrature.nodes.shape;

	x = quadrature.nodes.ravel();
	weights = quadrature.weights.ravel();
	if(weight_function is not None):
		factor = np.asarray(weight_function(x), dtype=float) * np.ones_like(x);
		if(not np.all(np.isfinite(factor))):
			bad = x[~np.isfinite(factor)][0];
			raise NumericalError('Non-finite ' + operator_kind + ' integrand at node x = ' + repr(float(bad)));
		weights = weights * factor;

	values, derivs = basis_values(kv, x, derivative=True);
	if(operator_kind in ('overlap', 'potential')):
		left, right = values, values;
	elif(operator_kind == 'kinetic'):
		left, right = derivs, derivs;
		weights = 0.5 * weights;
	else:
		left, right = values, derivs;

	# Splines j..j+k-1 are the only ones alive on interval j.
	first = np.arange(n_int);
	local = first[:, None] + np.arange(k)[None, :];
	rows  = np.arange(n_int * q).reshape(n_int, q);
	L = left[rows[:, :, None], local[:, None, :]];
	R = right[rows[:, :, None], local[:, None, :]];
	W = weights.reshape(n_int, q);
	elements = np.einsum('iqa,iq,iqb->iab', L, W, R);

	ii = np.broadcast_to(local[:, :, None], elements.shape).ravel();
	jj = np.broadcast_to(local[:, None, :], elements.shape).ravel();
	values = elements.ravel();
	symmetric = operator_kind != 'first-derivative';
	u = k - 1;
	if(symmetric):
		data = np.zeros((u + 1, n));
		lower = ii >= jj;
		np.add.at(data, (ii[lower] - jj[lower], jj[lower]), values[lower]);
	else:
		data = np.zeros((2 * u + 1, n));
		np.add.at(data, (u + ii - jj, jj), values);
	band = BandMatrix(data, u, symmetric, operator_kind);

	lo, hi = int(trim[0]), int(trim[1]);
	if(lo or hi):
		return band.trimmed(lo, hi);
	data.setflags(write=False);
	return band;


## Dense matrix of an assembled operator.
# Convenience wrapper around assemble_band(...).to_dense().
def assemble_dense(kv, weight_function=None, operator_kind='overlap', trim=(0, 0), quadrature=None):
	return assemble_band(kv, weight_function, operator_kind, trim, quadrature).to_dense();
