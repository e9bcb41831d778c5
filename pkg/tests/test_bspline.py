#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#

## @package test_bspline
# Knot vectors, quadrature and banded operator assembly.

import numpy as np;
import pytest as pytest;

from StrongFieldLib.bspline import (KnotVector, BandMatrix, build_knots, gauss_legendre_rule, basis_values,
	eval_splines, assemble_band, assemble_dense);
from StrongFieldLib.errors import ConfigError, NumericalError;


@pytest.fixture
def cubic():
	return build_knots(12, 4, (0.0, 3.0));


def test_interval_count():
	kv = build_knots(350, 15, (0.0, 350.0));
	assert kv.n_intervals == 350 - 15 + 1;
	assert kv.n_splines == 350;
	assert kv.domain == (0.0, 350.0);
	assert len(kv.knots) == 350 + 15;

def test_too_few_splines():
	with pytest.raises(ConfigError):
		build_knots(3, 4, (0.0, 1.0));
	with pytest.raises(ConfigError):
		build_knots(10, 4, (1.0, 1.0));
	with pytest.raises(ConfigError):
		KnotVector(4, [0.0, 2.0, 1.0]);

def test_partition_of_unity(cubic):
	x = np.linspace(0.0, 3.0, 101);
	values = basis_values(cubic, x);
	assert values.shape == (101, cubic.n_splines);
	assert np.allclose(values.sum(axis=1), 1.0, atol=1e-13);

def test_linear_hat_at_breakpoint():
	kv = build_knots(8, 2, (0.0, 1.0));
	x = kv.breakpoints[3];
	alive = [(i, v) for i, v, _ in eval_splines(kv, x) if abs(v) > 1e-15];
	assert len(alive) == 1 and alive[0][0] == 3;
	assert abs(alive[0][1] - 1.0) < 1e-14;

def test_eval_splines_support(cubic):
	entries = eval_splines(cubic, 1.234);
	assert 1 <= len(entries) <= cubic.order;
	assert abs(sum(v for _, v, _ in entries) - 1.0) < 1e-13;
	assert abs(sum(d for _, _, d in entries)) < 1e-11;

def test_outside_domain(cubic):
	with pytest.raises(ValueError):
		basis_values(cubic, [3.5]);
	with pytest.raises(ValueError):
		eval_splines(cubic, -0.1);

def test_spline_integrals(cubic):
	rule = gauss_legendre_rule(cubic);
	assert rule.n_points == cubic.order + 1;
	spans = cubic.spans();
	for i in range(cubic.n_splines):
		integral = rule.integrate(lambda x: basis_values(cubic, x)[:, i]);
		assert abs(integral - spans[i] / cubic.order) < 1e-13;

def test_too_few_quadrature_points(cubic):
	with pytest.raises(ConfigError):
		gauss_legendre_rule(cubic, 2);

def test_overlap_positive_definite(cubic):
	band = assemble_band(cubic);
	assert band.symmetric;
	assert band.bandwidth == cubic.order - 1;
	S = band.to_dense();
	assert np.allclose(S, S.T);
	np.linalg.cholesky(S);
	assert abs(S.sum() - 3.0) < 1e-12;

def test_linear_overlap_is_tridiagonal():
	kv = build_knots(8, 2, (0.0, 1.0));
	h = 1.0 / 7;
	S = assemble_dense(kv);
	expected = np.diag(np.full(8, 2 * h / 3)) + np.diag(np.full(7, h / 6), 1) + np.diag(np.full(7, h / 6), -1);
	expected[0, 0] = expected[-1, -1] = h / 3;
	assert np.allclose(S, expected, atol=1e-15);

def test_kinetic_is_half_stiffness():
	kv = build_knots(8, 2, (0.0, 1.0));
	T = assemble_dense(kv, operator_kind='kinetic', trim=(1, 1));
	h = 1.0 / 7;
	expected = 0.5 / h * (2 * np.eye(6) - np.eye(6, k=1) - np.eye(6, k=-1));
	assert np.allclose(T, expected);

def test_first_derivative_antisymmetry(cubic):
	D = assemble_dense(cubic, operator_kind='first-derivative');
	boundary = D + D.T;
	expected = np.zeros_like(D);
	expected[0, 0], expected[-1, -1] = -1.0, 1.0;
	assert np.allclose(boundary, expected, atol=1e-12);
	trimmed = assemble_dense(cubic, operator_kind='first-derivative', trim=(1, 1));
	assert np.allclose(trimmed, -trimmed.T, atol=1e-12);

def test_potential_weight(cubic):
	V = assemble_dense(cubic, lambda x: x, 'potential');
	c = np.ones(cubic.n_splines);
	assert abs(c.dot(V).dot(c) - 4.5) < 1e-12;

def test_non_finite_weight(cubic):
	with pytest.raises(NumericalError):
		assemble_band(cubic, lambda x: np.where(x > 1.5, np.inf, 1.0), 'potential');

def test_unknown_kind(cubic):
	with pytest.raises(ValueError):
		assemble_band(cubic, operator_kind='second-derivative');

def test_band_storage():
	rng = np.random.RandomState(3);
	A = rng.rand(7, 7);
	A = A + A.T;
	A[np.abs(np.subtract.outer(np.arange(7), np.arange(7))) > 2] = 0.0;
	symmetric = BandMatrix.from_dense(A, 2, True);
	assert symmetric.data.shape == (3, 7);
	assert np.allclose(symmetric.to_dense(), A);
	G = np.triu(np.tril(rng.rand(7, 7), 2), -2);
	general = BandMatrix.from_dense(G, 2, False);
	assert np.allclose(general.to_dense(), G);
	x = rng.rand(7);
	assert np.allclose(general.matvec(x), G.dot(x));

def test_symmetric_matvec():
	rng = np.random.RandomState(5);
	A = rng.rand(9, 9);
	A = A + A.T;
	A[np.abs(np.subtract.outer(np.arange(9), np.arange(9))) > 3] = 0.0;
	band = BandMatrix.from_dense(A, 3, True);
	assert band.is_symmetric;
	x = rng.rand(9);
	assert np.allclose(band.matvec(x), A.dot(x));
	X = rng.rand(9, 4);
	assert np.allclose(band.matvec(X), A.dot(X));

def test_band_assembly_matches_quadrature(cubic):
	rule = gauss_legendre_rule(cubic);
	x = rule.nodes.ravel();
	w = rule.weights.ravel();
	values, derivs = basis_values(cubic, x, derivative=True);
	overlap = (values * (w * x)[:, None]).T.dot(values);
	derivative = (values * w[:, None]).T.dot(derivs);
	band = assemble_band(cubic, lambda r: r, 'potential');
	assert band.data.shape == (cubic.order, cubic.n_splines);
	assert np.allclose(band.to_dense(), overlap, atol=1e-13);
	general = assemble_band(cubic, operator_kind='first-derivative');
	assert not general.symmetric;
	assert general.data.shape == (2 * cubic.order - 1, cubic.n_splines);
	assert np.allclose(general.to_dense(), derivative, atol=1e-13);
	v = np.linspace(-1.0, 1.0, cubic.n_splines);
	assert np.allclose(general.matvec(v), derivative.dot(v), atol=1e-13);

@pytest.mark.parametrize('kind', ['overlap', 'kinetic', 'first-derivative'])
def test_trimmed_band(cubic, kind):
	full = assemble_dense(cubic, operator_kind=kind);
	trimmed = assemble_band(cubic, operator_kind=kind, trim=(1, 2));
	assert trimmed.n == cubic.n_splines - 3;
	assert np.allclose(trimmed.to_dense(), full[1:-2, 1:-2], atol=1e-14);

def test_band_cholesky(cubic):
	band = assemble_band(cubic, trim=(1, 1));
	factor = band.cholesky();
	dense = np.linalg.cholesky(band.to_dense());
	assert np.allclose(BandMatrix(factor, band.bandwidth, True, 'factor').to_dense(), dense + dense.T - np.diag(np.diag(dense)));
	with pytest.raises(NumericalError):
		BandMatrix.from_dense(-band.to_dense(), band.bandwidth, True, 'overlap').cholesky();
	with pytest.raises(ValueError):
		assemble_band(cubic, operator_kind='first-derivative').cholesky();
