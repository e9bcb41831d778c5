#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#

## @package test_twocenter
# Spheroidal eigenstates, symmetry blocks and molecular dipole couplings.

import math as math;
import numpy as np;
import pytest as pytest;
import scipy.linalg as linalg;

from StrongFieldLib.twocenter import (TwoCenterSpec, SymmetryBlock, ComplexOrbital, RealOrbital,
	blocks_for_orientation, all_blocks, solve_two_center, solve_molecule, molecular_dipole_set,
	raw_dipole_block, explicit_m_dipole_set, reachable_blocks, symmetrize_degenerate, reflect,
	azimuthal_factor, fix_phase, converged_ground_energy, _SpheroidalOperators);
from StrongFieldLib.propagator import PropagationOptions, propagate;
from StrongFieldLib.pulse import PulseSpec;
from StrongFieldLib.observables import yields;
from StrongFieldLib.errors import ConfigError, NumericalError;


@pytest.fixture(scope='module')
def small():
	return solve_molecule(TwoCenterSpec.small(2.0));


def test_spec():
	spec = TwoCenterSpec.default(2.0);
	assert spec.xi_max == pytest.approx(120.0);
	assert spec.threshold == 0.5;
	assert spec._replace(include_repulsion=False).threshold == 0.0;
	with pytest.raises(ConfigError):
		TwoCenterSpec(0.0, 10.0);
	with pytest.raises(ConfigError):
		TwoCenterSpec(2.0, 1.0);
	with pytest.raises(ConfigError):
		TwoCenterSpec(2.0, 10.0, eta_splines=8, eta_order=8);

def test_symmetry_blocks():
	assert SymmetryBlock(0, 'g').label == 'sigma_g';
	assert SymmetryBlock.from_label('pi_u') == SymmetryBlock(1, 'u');
	assert [SymmetryBlock.from_label(l).eta_parity for l in ('sigma_g', 'sigma_u', 'pi_u', 'pi_g')] == [1, -1, 1, -1];
	assert [b.label for b in blocks_for_orientation('parallel', 3)] == ['sigma_g', 'sigma_u'];
	assert [b.label for b in blocks_for_orientation('perpendicular', 3)] == ['sigma_g', 'pi_u', 'delta_g', 'phi_u'];
	assert len(all_blocks(2)) == 6;
	with pytest.raises(ValueError):
		blocks_for_orientation('diagonal', 3);
	with pytest.raises(ValueError):
		SymmetryBlock(0, 'x');

def test_small_basis(small):
	assert small.kind == 'two-center';
	assert small.initial_block == 'sigma_g';
	assert small.threshold == 0.5;
	assert -0.7 < small.ground_energy < -0.5;
	assert small.ground_energy < small.block('sigma_u').energies[0];
	for label in small.labels():
		assert np.all(np.diff(small.block(label).energies) >= 0);
	assert small.metadata['lambda']['delta_g'] == 2;

def test_eta_symmetry_splits_full_problem(small):
	spec = TwoCenterSpec.small(2.0);
	full = solve_two_center(spec, SymmetryBlock(0, 'g'), eta_symmetry=False);
	assert full.label == 'sigma';
	halves = np.sort(np.concatenate((small.block('sigma_g').energies, small.block('sigma_u').energies)));
	assert full.n_states == len(halves);
	assert np.allclose(full.energies, halves, rtol=1e-9, atol=1e-8);

def test_parallel_selection_rules(small):
	couplings = molecular_dipole_set(small, 'parallel');
	assert couplings.pairs;
	for row, col in couplings.pairs:
		a, b = SymmetryBlock.from_label(row), SymmetryBlock.from_label(col);
		assert a.lam == b.lam;
		assert a.parity != b.parity;

def test_perpendicular_selection_rules(small):
	couplings = molecular_dipole_set(small, 'perpendicular');
	for row, col in couplings.pairs:
		a, b = SymmetryBlock.from_label(row), SymmetryBlock.from_label(col);
		assert abs(a.lam - b.lam) == 1;
		assert a.parity != b.parity;
	assert couplings.coupled('pi_u', 'sigma_g');
	assert not couplings.coupled('pi_g', 'sigma_g');

def test_couplings_are_antisymmetric(small):
	for orientation in ('parallel', 'perpendicular'):
		D = molecular_dipole_set(small, orientation).to_dense(small);
		assert np.array_equal(D, -D.T);

def test_sqrt2_rule(small):
	couplings = molecular_dipole_set(small, 'perpendicular');
	raw = raw_dipole_block(small, 'pi_u', 'sigma_g', 'perpendicular');
	assert np.allclose(couplings.block('pi_u', 'sigma_g'), math.sqrt(2.0) * raw, rtol=0, atol=1e-14);
	raw = raw_dipole_block(small, 'delta_g', 'pi_u', 'perpendicular');
	assert np.allclose(couplings.block('delta_g', 'pi_u'), raw, rtol=0, atol=1e-14);

def test_perpendicular_needs_lambda_step(small):
	with pytest.raises(ValueError):
		raw_dipole_block(small, 'sigma_u', 'sigma_g', 'perpendicular');

def test_unknown_orientation(small):
	with pytest.raises(ValueError):
		molecular_dipole_set(small, 'circular');

def test_reachable_blocks(small):
	parallel = molecular_dipole_set(small, 'parallel');
	assert reachable_blocks(parallel, 'sigma_g') == ['sigma_g', 'sigma_u'];
	perpendicular = molecular_dipole_set(small, 'perpendicular');
	assert sorted(reachable_blocks(perpendicular, 'sigma_g')) == ['delta_g', 'pi_u', 'sigma_g'];

def test_explicit_m_partners(small):
	expanded, couplings = explicit_m_dipole_set(small);
	assert 'pi_u(+1)' in expanded and 'pi_u(-1)' in expanded;
	assert 'sigma_g' in expanded;
	assert expanded.metadata['lambda']['delta_g(-2)'] == 2;
	for (row, col), matrix in couplings.pairs.items():
		bra, ket = row.split('(')[0], col.split('(')[0];
		assert np.array_equal(matrix, raw_dipole_block(small, bra, ket, 'perpendicular'));
	assert not couplings.coupled('pi_u(+1)', 'delta_g(-2)');
	assert couplings.coupled('pi_u(-1)', 'delta_g(-2)');

def test_reflection_helpers():
	rng = np.random.RandomState(1);
	f = rng.rand(4, 3);
	psi = ComplexOrbital(1, 1, f * np.exp(0.7j));
	real = symmetrize_degenerate(psi);
	assert isinstance(real, RealOrbital);
	assert np.allclose(real.coefficients, f);
	assert reflect(real) is real;
	mirrored = reflect(psi);
	assert mirrored.m == -1;
	assert np.allclose(mirrored.coefficients, np.conj(psi.coefficients));
	assert np.allclose(fix_phase(psi).coefficients.imag, 0.0, atol=1e-15);
	with pytest.raises(ValueError):
		symmetrize_degenerate(ComplexOrbital(2, 1, f));
	sigma = ComplexOrbital(0, 0, f);
	assert symmetrize_degenerate(sigma) is sigma;

def test_azimuthal_normalisation():
	phi = np.linspace(0.0, 2 * math.pi, 4000, endpoint=False);
	step = 2 * math.pi / 4000;
	real = azimuthal_factor(RealOrbital(2, None), phi);
	assert np.sum(real**2) * step == pytest.approx(1.0, abs=1e-12);
	complex_ = azimuthal_factor(ComplexOrbital(1, -1, None), phi);
	assert np.sum(np.abs(complex_)**2) * step == pytest.approx(1.0, abs=1e-12);


@pytest.mark.slow
def test_reflection_adapted_dynamics_match_explicit_m():
	spec = TwoCenterSpec.small(2.0);
	basis = solve_molecule(spec, blocks_for_orientation('perpendicular', spec.lambda_max));
	reduced = molecular_dipole_set(basis, 'perpendicular');
	expanded, explicit = explicit_m_dipole_set(basis);
	pulse = PulseSpec(0.5, 2, 1e13);
	opts = PropagationOptions(rtol=1e-12, atol=1e-14);
	a = yields(propagate(basis, reduced, pulse, opts), basis, pulse);
	b = yields(propagate(expanded, explicit, pulse, opts), expanded, pulse);
	assert abs(a.P_gs - b.P_gs) < 1e-10;
	assert abs(a.Y_ion - b.Y_ion) < 1e-10;
	assert abs(a.Y_exc - b.Y_exc) < 1e-10;

@pytest.mark.slow
@pytest.mark.parametrize('R, energy', [(1.4, -0.569984), (2.0, -0.602634)])
def test_ground_state_energy(R, energy):
	block = solve_two_center(TwoCenterSpec.default(R), SymmetryBlock(0, 'g'));
	assert abs(block.energies[0] - energy) < 1e-5;


def test_convergence_check():
	coarse = TwoCenterSpec.from_box(2.0, 20.0, xi_splines=10, xi_order=4, eta_splines=6, eta_order=4, lambda_max=0);
	block = SymmetryBlock(0, 'g');
	energy = converged_ground_energy(coarse, block, tolerance=1.0);
	assert energy == solve_two_center(coarse, block).energies[0];
	with pytest.raises(NumericalError):
		converged_ground_energy(coarse, block, tolerance=1e-12);

@pytest.mark.parametrize('lam', [0, 1])
def test_nucleus_exchange_invariance(lam):
	ops = _SpheroidalOperators(TwoCenterSpec.small(2.0));
	projectors = (ops.xi_projector(lam), ops.eta_projector(lam, None));
	h, s = ops.hamiltonian(lam, projectors);
	swap = np.kron(np.eye(projectors[0].shape[1]), np.eye(projectors[1].shape[1])[::-1]);
	for matrix in (h, s):
		assert np.max(np.abs(swap.dot(matrix).dot(swap) - matrix)) <= 1e-12 * np.max(np.abs(matrix));
	energies = linalg.eigh(h, s, eigvals_only=True);
	exchanged = linalg.eigh(swap.dot(h).dot(swap), swap.dot(s).dot(swap), eigvals_only=True);
	assert np.max(np.abs(energies[:8] - exchanged[:8])) <= 1e-11;

def test_vanishing_coupling_identity(small):
	phi = np.linspace(0.0, 2 * math.pi, 720, endpoint=False);
	step = 2 * math.pi / 720;
	for lam_bra in range(4):
		for lam in range(4):
			bra = azimuthal_factor(ComplexOrbital(lam_bra, lam_bra, None), phi);
			conjugate = azimuthal_factor(reflect(ComplexOrbital(lam, lam, np.ones(1))), phi);
			element = np.sum(np.conj(bra) * np.cos(phi) * conjugate) * step;
			expected = 0.5 if lam_bra + lam == 1 else 0.0;
			assert abs(element - expected) < 1e-12;
	expanded, couplings = explicit_m_dipole_set(small);
	lambdas = expanded.metadata['lambda'];
	def m_of(label):
		return int(label.split('(')[1][:-1]) if '(' in label else 0;
	# M and M' of opposite sign (or one of them zero) only meet for Lambda = 0 with Lambda' = 1
	for row, col in couplings.pairs:
		if(m_of(row) * m_of(col) <= 0):
			assert sorted((lambdas[row], lambdas[col])) == [0, 1];
	assert couplings.coupled('pi_u(-1)', 'sigma_g');
	assert not couplings.coupled('delta_g(+2)', 'pi_u(-1)');

@pytest.mark.slow
def test_separated_atom_limit():
	R = 100.0;
	block = solve_two_center(TwoCenterSpec.default(R, include_repulsion=False), SymmetryBlock(0, 'g'));
	assert abs(block.energies[0] - (-0.5 - 1.0 / R)) < 1e-4;
	assert abs(block.energies[0] + 1.0 / R + 0.5) < 1e-4;
