#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#

## @package test_observables
# Yields, unit conversions, scans and the CSV record format.

import io as io;
import math as math;
import numpy as np;
import pytest as pytest;

from StrongFieldLib.atom import ModelAtomSpec, solve_atom, atomic_dipole_set;
from StrongFieldLib.eigenbasis import EigenBasis, EigenBlock, DipoleCouplingSet;
from StrongFieldLib.propagator import PropagationOptions, propagate;
from StrongFieldLib.pulse import PulseSpec;
from StrongFieldLib.units import ev_to_au, au_to_ev;
from StrongFieldLib.observables import (CSV_COLUMNS, YieldRecord, yields, rate_from_yield, photon_thresholds,
	convert_units, scan, convolution_model, orientation_ratio, lopt_slope, falloff_width, side_lobe_maxima,
	write_records, read_records);


## Ground state, two bound states and three continuum states.
@pytest.fixture(scope='module')
def ladder():
	energies = {'s': [-0.6, -0.1, 0.05, 0.4], 'p': [-0.15, 0.1, 0.3]};
	blocks = [EigenBlock(label, np.array(e), np.eye(len(e)), (len(e),)) for label, e in energies.items()];
	basis = EigenBasis('atom', blocks, 0.0);
	rng = np.random.RandomState(7);
	couplings = DipoleCouplingSet('z');
	couplings.add('p', 's', 0.3 * rng.rand(3, 4));
	return basis, couplings;


def record(omega_ev=10.0, y_ion=0.1, factor=False, orientation='z'):
	return YieldRecord(omega_ev, 123.4, 0.7, 0.2, y_ion, orientation, 10, 1e13, 'atom', factor, 1e-11, '');


def test_yields_partition(ladder):
	basis, couplings = ladder;
	pulse = PulseSpec(0.5, 4, 2e13);
	result = propagate(basis, couplings, pulse, PropagationOptions(rtol=1e-10, atol=1e-12));
	y = yields(result, basis, pulse, 'z', 'test');
	populations = np.abs(result.coefficients)**2;
	assert y.P_gs == pytest.approx(populations[0], abs=1e-15);
	ion = populations[result.index.energies > 0].sum();
	assert y.Y_ion == pytest.approx(ion, abs=1e-15);
	assert abs(y.P_gs + y.Y_exc + y.Y_ion - 1.0) < 1e-15;
	assert y.Y_ion > 0 and y.Y_exc > 0;
	assert y.omega_ev == pytest.approx(pulse.omega_ev);
	assert y.cycles == 4 and y.preset_id == 'test';
	assert not y.failed;

def test_two_electron_factor_only_in_reports():
	plain, doubled = record(), record(factor=True);
	assert plain.reported() == (0.7, 0.2, 0.1);
	assert doubled.reported() == (0.7, 0.4, 0.2);
	assert doubled.Y_ion == plain.Y_ion;

def test_rate_from_yield():
	assert rate_from_yield(0.0, 100.0) == 0.0;
	assert rate_from_yield(0.5, 2.0) == pytest.approx(math.log(2.0) / 2.0);
	assert rate_from_yield(1e-12, 1.0) == pytest.approx(1e-12, rel=1e-9);
	with pytest.raises(ValueError):
		rate_from_yield(1.0, 10.0);
	with pytest.raises(ValueError):
		rate_from_yield(-0.1, 10.0);

def test_photon_thresholds():
	thresholds = photon_thresholds(0.590367);
	assert len(thresholds) == 5;
	assert thresholds[0] == pytest.approx(16.0645, abs=1e-3);
	assert thresholds[1] == pytest.approx(thresholds[0] / 2);
	with pytest.raises(ValueError):
		photon_thresholds(0.0);

def test_convert_units():
	values = convert_units(12.4623, 'eV');
	assert values.wavelength_nm == pytest.approx(99.486, abs=0.01);
	assert convert_units(3.1991).wavelength_nm == pytest.approx(387.556, abs=0.01);
	assert convert_units(27.211386).omega_au == pytest.approx(1.0);
	back = convert_units(values.wavelength_nm, 'nm');
	assert back.omega_ev == pytest.approx(12.4623, rel=1e-12);
	assert convert_units(1.0, 'au').omega_ev == pytest.approx(27.211386);
	with pytest.raises(ValueError):
		convert_units(-1.0);
	with pytest.raises(ValueError):
		convert_units(1.0, 'Hz');

def test_scan_order_and_workers(ladder):
	basis, couplings = ladder;
	template = PulseSpec.from_ev(10.0, 4, 2e13);
	grid = [8.0, 9.0, 10.0, 11.0, 12.0];
	opts = PropagationOptions(rtol=1e-9, atol=1e-12);
	serial = scan({'z': (basis, couplings)}, template, grid, opts, threads=1, preset_id='ladder');
	parallel = scan({'z': (basis, couplings)}, template, grid, opts, threads=2, preset_id='ladder');
	assert [r.omega_ev for r in serial] == pytest.approx(grid);
	assert serial == parallel;
	first = propagate(basis, couplings, PulseSpec.from_ev(8.0, 4, 2e13), opts);
	assert serial[0].P_gs == yields(first, basis).P_gs;

def test_scan_records_failures(ladder):
	basis, couplings = ladder;
	template = PulseSpec.from_ev(10.0, 4, 2e13);
	opts = PropagationOptions(initial=('s', 3), energy_cut=0.1);
	records = scan({'z': (basis, couplings)}, template, [9.0, 10.0], opts);
	assert len(records) == 2;
	assert all(r.failed for r in records);
	assert all(math.isnan(r.P_gs) for r in records);

def test_scan_grid_must_be_monotone(ladder):
	basis, couplings = ladder;
	with pytest.raises(ValueError):
		scan({'z': (basis, couplings)}, PulseSpec.from_ev(10.0, 4, 1e13), [9.0, 11.0, 10.0]);
	with pytest.raises(ValueError):
		scan({'z': (basis, couplings)}, PulseSpec.from_ev(10.0, 4, 1e13), []);

def test_convolution_model_peaks_at_resonance():
	grid = np.linspace(11.0, 14.0, 601);
	model = convolution_model(12.5, PulseSpec.from_ev(12.5, 10, 1e13), grid, reference_rate=3.0);
	peak = grid[np.argmax(model)];
	assert abs(peak - 12.5) <= 0.01;
	assert model[np.argmin(np.abs(grid - 12.5))] == pytest.approx(3.0);
	with pytest.raises(ValueError):
		convolution_model(20.0, PulseSpec.from_ev(12.5, 10, 1e13), grid);

def test_side_lobe_spacing_halves_when_pulses_double():
	grid = np.linspace(12.0, 17.5, 8001);
	spacing = [];
	for cycles in (20, 40):
		model = convolution_model(12.5, PulseSpec.from_ev(12.5, cycles, 1e13), grid);
		lobes = [w for w in side_lobe_maxima(grid, model) if w > 13.0];
		spacing.append(12.5 / lobes[0] - 12.5 / lobes[1]);
	assert spacing[1] == pytest.approx(0.5 * spacing[0], rel=0.02);

def test_orientation_ratio():
	ratios = orientation_ratio([record(10.0, 0.2), record(11.0, 0.0)], [record(10.0, 0.1), record(11.0, 0.0)]);
	assert ratios[0] == (10.0, pytest.approx(2.0));
	assert math.isnan(ratios[1][1]);
	with pytest.raises(ValueError):
		orientation_ratio([record(10.0)], [record(10.0), record(11.0)]);
	with pytest.raises(ValueError):
		orientation_ratio([record(10.0)], [record(10.5)]);

def test_lopt_slope():
	intensities = np.array([1e10, 2e10, 5e10, 1e11]);
	assert lopt_slope(intensities, 3e-25 * intensities**2) == pytest.approx(2.0);

def test_falloff_width():
	omega = np.linspace(0.0, 10.0, 1001);
	values = 1.0 - np.clip((omega - 4.0) / 2.0, 0.0, 1.0);
	assert falloff_width(omega, values) == pytest.approx(1.6, abs=1e-9);
	assert falloff_width(omega, values[::-1]) == pytest.approx(1.6, abs=1e-9);

def test_side_lobe_maxima():
	omega = np.linspace(0.0, 4 * math.pi, 4001);
	maxima = side_lobe_maxima(omega, np.cos(omega));
	assert maxima == [pytest.approx(2 * math.pi, abs=1e-2)];

def test_csv_round_trip():
	records = [record(10.0 + i / 3.0, 0.1 / (i + 1), factor=(i == 1)) for i in range(3)];
	records.append(YieldRecord(13.0, 95.4, float('nan'), float('nan'), float('nan'), 'z', 10, 1e13, 'atom', False,
		float('nan'), 'Adams integrator stopped'));
	stream = io.StringIO();
	write_records(stream, records);
	text = stream.getvalue();
	assert text.splitlines()[0] == ','.join(CSV_COLUMNS);
	loaded = read_records(io.StringIO(text));
	assert len(loaded) == 4;
	for a, b in zip(records[:3], loaded):
		assert b.Y_ion == pytest.approx(a.Y_ion, rel=1e-9);
		assert b.two_electron_factor == a.two_electron_factor;
	assert loaded[1].reported()[2] == pytest.approx(2 * records[1].Y_ion, rel=1e-9);
	assert loaded[3].failed and math.isnan(loaded[3].P_gs);
	again = io.StringIO();
	write_records(again, loaded);
	assert again.getvalue() == text;

def test_read_records_needs_columns():
	with pytest.raises(ValueError):
		read_records(io.StringIO('omega_eV,P_gs\n1,2\n'));

@pytest.mark.slow
@pytest.mark.parametrize('omega, photons', [(0.3, 2), (0.6, 1)])
def test_ionisation_follows_photon_order(omega, photons):
	basis = solve_atom(ModelAtomSpec.fast(l_max=2));
	couplings = atomic_dipole_set(basis);
	opts = PropagationOptions(energy_cut=ev_to_au(50.0));
	intensities = [2.5e10, 5e10, 1e11];
	values = [];
	for intensity in intensities:
		pulse = PulseSpec(omega, 10, intensity);
		values.append(yields(propagate(basis, couplings, pulse, opts), basis, pulse).Y_ion);
	assert lopt_slope(intensities, values) == pytest.approx(photons, abs=0.15);

@pytest.mark.slow
def test_side_lobes_follow_convolution_model():
	basis = solve_atom(ModelAtomSpec.fast(l_max=1));
	systems = {'z': (basis, atomic_dipole_set(basis))};
	omega0 = au_to_ev(basis.block('l1').energies[0] - basis.block('l0').energies[0]);
	grid = omega0 + np.arange(-1.6, 0.2, 0.04);
	template = PulseSpec.from_ev(omega0, 30, 1e10);
	opts = PropagationOptions(rtol=1e-11, atol=1e-14, energy_cut=ev_to_au(30.0));
	records = scan(systems, template, grid, opts);
	rates = [rate_from_yield(max(r.Y_exc, 0.0), PulseSpec.from_ev(r.omega_ev, 30, 1e10).duration) for r in records];
	model = convolution_model(omega0, template, grid);
	computed = [w for w in side_lobe_maxima(grid, rates) if w < omega0 - 0.5];
	expected = [w for w in side_lobe_maxima(grid, model) if w < omega0 - 0.5];
	assert len(computed) >= 2 and len(expected) >= 2;
	for a, b in zip(computed[-2:], expected[-2:]):
		assert abs(a - b) <= 0.04 + 1e-9;

@pytest.mark.slow
def test_threshold_sharpens_with_pulse_length():
	basis = solve_atom(ModelAtomSpec(0.0, 250.0, 250, 8, 1));
	systems = {'z': (basis, atomic_dipole_set(basis))};
	ip = au_to_ev(basis.threshold - basis.ground_energy);
	grid = ip + np.arange(-3.5, 3.55, 0.1);
	opts = PropagationOptions(energy_cut=ev_to_au(40.0));
	widths = [];
	for cycles in (10, 30):
		records = scan(systems, PulseSpec.from_ev(ip, cycles, 1e11), grid, opts);
		widths.append(falloff_width(grid, [r.Y_ion for r in records]));
	assert 2.4 <= widths[0] / widths[1] <= 3.6;
