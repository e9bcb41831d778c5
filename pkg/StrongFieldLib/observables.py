#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#

## @package observables
#
# Yields, rates, photon thresholds, unit conversions and frequency scans.
#
# Yields partition the final population: P_gs (initial state), Y_ion (states
# above the ionisation threshold of the basis) and Y_exc = 1 - P_gs - Y_ion.

import csv as csv;
import math as math;
import numpy as np;
from collections import namedtuple as namedtuple;
from joblib import Parallel, delayed;

from . import log as log;
from .errors import StrongFieldError;
from .propagator import propagate;
from .pulse import PulseSpec, fourier_component;
from .units import HARTREE_EV, ev_to_au, au_to_ev, au_to_nm, nm_to_au;

## CSV columns of yield records, in order.
CSV_COLUMNS = ('omega_eV', 'lambda_nm', 'P_gs', 'Y_exc', 'Y_ion', 'orientation', 'Nc',
	'intensity_Wcm2', 'preset_id', 'two_electron_factor', 'norm_drift', 'error');

## Photon energy in three units.
UnitValues = namedtuple('UnitValues', 'omega_ev omega_au wavelength_nm');


## Final state populations of one propagation.
#
# Values are stored before the two-electron reporting factor; reported() applies it.
class YieldRecord(namedtuple('YieldRecord',
		'omega_ev lambda_nm P_gs Y_exc Y_ion orientation cycles intensity preset_id two_electron_factor norm_drift error')):
	__slots__ = ();

	## Excitation and ionisation yields as reported (times 2 with the two-electron factor).
	def reported(self):
		factor = 2.0 if self.two_electron_factor else 1.0;
		return (self.P_gs, factor * self.Y_exc, factor * self.Y_ion);

	@property
	def failed(self):
		return bool(self.error);

	def _to_dict(self):
		return dict(self._asdict());


## Populations after a propagation.
# @param result A PropagationResult.
# @param basis The EigenBasis the result was propagated on.
# @param pulse The PulseSpec (for metadata), optional.
# @param orientation (str) Polarisation tag.
# @param preset_id (str) Preset name.
# @param two_electron_factor (bool) Report excitation/ionisation yields times 2.
# @returns A YieldRecord.
def yields(result, basis, pulse=None, orientation='', preset_id='', two_electron_factor=False):
	index = result.index;
	populations = np.abs(result.coefficients)**2;
	p_gs = float(populations[index.ground]);
	y_ion = float(np.sum(populations[index.energies > basis.threshold]));
	y_exc = 1.0 - p_gs - y_ion;
	omega_ev = pulse.omega_ev if pulse is not None else float('nan');
	return YieldRecord(omega_ev, au_to_nm(pulse.omega) if pulse is not None else float('nan'),
		p_gs, y_exc, y_ion, orientation,
		pulse.cycles if pulse is not None else 0,
		pulse.intensity if pulse is not None else 0.0,
		preset_id, bool(two_electron_factor), float(result.norm_drift), '');


## Rate from a yield, -ln(1 - Y)/T.
# @param y (float) Yield in [0, 1).
# @param duration (float) Pulse duration (a.u.).
# @returns Rate in a.u.
def rate_from_yield(y, duration):
	y = float(y);
	if(not 0.0 <= y < 1.0):
		raise ValueError('Yield must be in [0, 1) to define a rate, got ' + repr(y));
	return -math.log1p(-y) / float(duration);


## N-photon thresholds Ip/N in eV.
# @param ip (float) Ionisation potential (a.u.).
# @param n_max (int) Highest photon number.
# @returns list of photon energies (eV) for N = 1..n_max.
def photon_thresholds(ip, n_max=5):
	if(not ip > 0):
		raise ValueError('Ionisation potential must be positive, got ' + repr(ip));
	return [ip * HARTREE_EV / n for n in range(1, int(n_max) + 1)];


## Converts a photon energy or wavelength.
# @param value (float) Positive value.
# @param unit (str) 'eV', 'au' or 'nm'.
# @returns UnitValues.
def convert_units(value, unit='eV'):
	value = float(value);
	if(not value > 0):
		raise ValueError('Photon energies and wavelengths must be positive, got ' + repr(value));
	if(unit == 'eV'):
		omega = ev_to_au(value);
	elif(unit == 'au'):
		omega = value;
	elif(unit == 'nm'):
		omega = nm_to_au(value);
	else:
		raise ValueError('Unknown unit ' + str(unit));
	return UnitValues(au_to_ev(omega), omega, au_to_nm(omega));


def _scan_point(basis, couplings, pulse, opts, orientation, preset_id, two_electron_factor, verbosity):
	context = log.new_context('%s %.4f eV' % (orientation, pulse.omega_ev));
	context.set_verbosity(verbosity);
	try:
		result = propagate(basis, couplings, pulse, opts, log=context);
		return yields(result, basis, pulse, orientation, preset_id, two_electron_factor);
	except (StrongFieldError, ValueError) as exc:
		context.error(str(exc));
		nan = float('nan');
		return YieldRecord(pulse.omega_ev, au_to_nm(pulse.omega), nan, nan, nan, orientation, pulse.cycles,
			pulse.intensity, preset_id, bool(two_electron_factor), nan, str(exc).replace('\n', ' '));


## Runs one propagation per (frequency, orientation).
#
# Points run in worker processes when threads > 1; records come back in grid
# order, orientations in the given order, whatever the execution order.
#
# @param systems (dict) orientation -> (EigenBasis, DipoleCouplingSet).
# @param pulse_template A PulseSpec; its frequency is replaced by the grid values.
# @param grid_ev (list) Photon energies in eV, monotone.
# @param opts PropagationOptions.
# @param threads (int) Worker count.
# @param preset_id (str) Preset name stored in the records.
# @param two_electron_factor (bool) Reporting flag stored in the records.
# @param log A log context.
# @returns list of YieldRecord.
def scan(systems, pulse_template, grid_ev, opts=None, threads=1, preset_id='', two_electron_factor=False, log=log.get_default_context()):
	grid = np.asarray(grid_ev, dtype=float);
	steps = np.diff(grid);
	if(len(grid) == 0 or not (np.all(steps > 0) or np.all(steps < 0))):
		raise ValueError('Scan grid must be non-empty and strictly monotone.');
	tasks = [];
	for omega_ev in grid:
		pulse = PulseSpec.from_ev(omega_ev, pulse_template.cycles, pulse_template.intensity);
		for orientation, (basis, couplings) in systems.items():
			tasks.append((basis, couplings, pulse, opts, orientation, preset_id, two_electron_factor, log.verbosity));
	log.info('Scan: ' + str(len(grid)) + ' frequencies x ' + str(len(systems)) + ' orientations on ' + str(threads) + ' worker(s)', 1);
	if(threads > 1):
		records = Parallel(n_jobs=int(threads))(delayed(_scan_point)(*task) for task in tasks);
	else:
		records = [_scan_point(*task) for task in tasks];
	failed = sum(1 for r in records if r.failed);
	if(failed):
		log.warning(str(failed) + ' scan point(s) failed, see the error column.');
	return list(records);


## Fourier-limited line shape |F_omega0(omega)|^2 on a grid of carriers.
#
# Each grid point uses the pulse of the template with carrier omega (so the
# duration follows the carrier). The curve is scaled to reference_rate at omega0.
#
# @param omega0_ev (float) Resonance energy (eV), inside the grid span.
# @param pulse_template A PulseSpec (cycles and intensity are used).
# @param grid_ev (list) Carrier photon energies (eV).
# @param reference_rate (float) Value of the model at omega0, 1 when omitted.
# @returns ndarray of model rates over the grid.
def convolution_model(omega0_ev, pulse_template, grid_ev, reference_rate=1.0):
	grid = np.asarray(grid_ev, dtype=float);
	if(not grid.min() <= omega0_ev <= grid.max()):
		raise ValueError('Resonance ' + repr(omega0_ev) + ' eV outside the grid.');
	omega0 = ev_to_au(omega0_ev);
	def spectrum(omega_ev):
		pulse = PulseSpec.from_ev(omega_ev, pulse_template.cycles, max(pulse_template.intensity, 1.0));
		return fourier_component(pulse, omega0)**2;
	peak = spectrum(omega0_ev);
	return np.array([reference_rate * spectrum(w) / peak for w in grid]);


## Ratio of two yield series on the same grid.
# @param numerator (list) YieldRecords.
# @param denominator (list) YieldRecords.
# @param field (str) 'Y_ion' or 'Y_exc'.
# @returns list of (omega_ev, ratio); nan where the denominator vanishes.
def orientation_ratio(numerator, denominator, field='Y_ion'):
	if(len(numerator) != len(denominator)):
		raise ValueError('Series have different lengths (' + str(len(numerator)) + ' vs ' + str(len(denominator)) + ')');
	result = [];
	for a, b in zip(numerator, denominator):
		if(not abs(a.omega_ev - b.omega_ev) <= 1e-9 * max(1.0, abs(a.omega_ev))):
			raise ValueError('Grids differ at ' + repr(a.omega_ev) + ' / ' + repr(b.omega_ev) + ' eV');
		top, bottom = getattr(a, field), getattr(b, field);
		result.append((a.omega_ev, top / bottom if bottom > 0 else float('nan')));
	return result;


## Slope of log(yield) against log(intensity).
def lopt_slope(intensities, values):
	slope, _ = np.polyfit(np.log(np.asarray(intensities, dtype=float)), np.log(np.asarray(values, dtype=float)), 1);
	return float(slope);


## Width of a falling or rising edge between 10% and 90% of its span.
# @param omega (ndarray) Monotone grid.
# @param values (ndarray) Curve going from one plateau to another across the grid.
# @returns (float) |omega_90 - omega_10|, linear interpolation between grid points.
def falloff_width(omega, values):
	omega = np.asarray(omega, dtype=float);
	values = np.asarray(values, dtype=float);
	start, end = values[0], values[-1];
	def crossing(level):
		target = start + level * (end - start);
		side = np.sign(values - target) * np.sign(end - start);
		i = int(np.nonzero(side >= 0)[0][0]);
		if(i == 0):
			return omega[0];
		f = (target - values[i - 1]) / (values[i] - values[i - 1]);
		return omega[i - 1] + f * (omega[i] - omega[i - 1]);
	return abs(crossing(0.9) - crossing(0.1));


## Grid positions of interior local maxima.
def side_lobe_maxima(omega, values):
	values = np.asarray(values, dtype=float);
	inner = np.nonzero((values[1:-1] > values[:-2]) & (values[1:-1] >= values[2:]))[0] + 1;
	return [float(omega[i]) for i in inner];


def _format(value):
	if(isinstance(value, float)):
		return '%.10g' % value;
	if(isinstance(value, bool)):
		return '1' if value else '0';
	return str(value);


## Writes yield records as CSV.
# @param stream A text stream opened with newline=''.
# @param records (list) YieldRecords.
def write_records(stream, records):
	writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS, lineterminator='\n');
	writer.writeheader();
	for r in records:
		p_gs, y_exc, y_ion = r.reported();
		values = (float(r.omega_ev), float(r.lambda_nm), float(p_gs), float(y_exc),
			float(y_ion), r.orientation, int(r.cycles), float(r.intensity), r.preset_id,
			bool(r.two_electron_factor), float(r.norm_drift), r.error);
		writer.writerow(dict(zip(CSV_COLUMNS, [_format(v) for v in values])));


## Reads yield records written by write_records.
# @param stream A text stream.
# @returns list of YieldRecord.
def read_records(stream):
	reader = csv.DictReader(stream);
	missing = [c for c in CSV_COLUMNS if c not in (reader.fieldnames or [])];
	if(missing):
		raise ValueError('Not a yield CSV, missing columns: ' + ', '.join(missing));
	records = [];
	for row in reader:
		factor = 2.0 if row['two_electron_factor'] == '1' else 1.0;
		records.append(YieldRecord(float(row['omega_eV']), float(row['lambda_nm']), float(row['P_gs']),
			float(row['Y_exc']) / factor, float(row['Y_ion']) / factor, row['orientation'], int(row['Nc']),
			float(row['intensity_Wcm2']), row['preset_id'], factor == 2.0, float(row['norm_drift']), row['error']));
	return records;
