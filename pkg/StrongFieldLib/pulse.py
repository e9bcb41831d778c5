#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#

## @package pulse
#
# Linearly polarised cos^2 laser pulses.
#
# The envelope multiplies the electric field,
#
#   F(t) = F0 cos^2(pi t / Tp) cos(omega t),  |t| <= Tp/2,  Tp = 2 pi Nc / omega,
#
# and the vector potential A(t) = -int_{-Tp/2}^{t} F is evaluated from the exact
# antiderivative. Writing cos^2 as 1/2 + cos(W t)/2 with W = omega / Nc splits F
# into three carriers (omega, omega + W, omega - W), which also gives the Fourier
# component in closed form.

import math as math;
import numpy as np;
from collections import namedtuple as namedtuple;
from scipy.integrate import quad;

from .errors import ConfigError;
from .units import INTENSITY_AU_WCM2, ev_to_au, au_to_ev;

## Smallest cycle count with a vanishing net impulse.
MIN_CYCLES = 2;


## cos^2 pulse with zero carrier-envelope phase.
class PulseSpec(namedtuple('PulseSpec', 'omega cycles intensity')):
	__slots__ = ();

	## Only envelope shipped.
	envelope = 'cos2';

	## Carrier-envelope phase (fixed).
	cep = 0.0;

	## Creates a PulseSpec
	# @param cls PulseSpec.
	# @param omega (float) Carrier angular frequency (a.u.).
	# @param cycles (int) Number of optical cycles, at least 2.
	# @param intensity (float) Peak intensity in W/cm^2.
	def __new__(cls, omega, cycles, intensity):
		omega = float(omega);
		if(not omega > 0):
			raise ConfigError('Carrier frequency must be positive, got ' + str(omega), 'pulse.omega');
		if(int(cycles) != cycles or int(cycles) < MIN_CYCLES):
			raise ConfigError('Cycle count must be an integer >= ' + str(MIN_CYCLES) + ', got ' + str(cycles), 'pulse.cycles');
		intensity = float(intensity);
		if(intensity < 0 or not math.isfinite(intensity)):
			raise ConfigError('Intensity must be >= 0 W/cm^2, got ' + str(intensity), 'pulse.intensity');
		return super(PulseSpec, cls).__new__(cls, omega, int(cycles), intensity);

	## Builds a pulse from a photon energy in eV.
	@classmethod
	def from_ev(cls, omega_ev, cycles, intensity):
		return cls(ev_to_au(omega_ev), cycles, intensity);

	@property
	def omega_ev(self):
		return au_to_ev(self.omega);

	## Total duration Tp (a.u.).
	@property
	def duration(self):
		return 2.0 * math.pi * self.cycles / self.omega;

	## Peak field F0 (a.u.).
	@property
	def amplitude(self):
		return math.sqrt(self.intensity / INTENSITY_AU_WCM2);

	## Integration window (-Tp/2, Tp/2).
	def window(self):
		half = 0.5 * self.duration;
		return (-half, half);

	def field(self, t):
		return field(t, self);

	def vector_potential(self, t):
		return vector_potential(t, self);

	def fourier_component(self, omega0):
		return fourier_component(self, omega0);

	def _to_dict(self):
		return {'omega': self.omega, 'cycles': self.cycles, 'intensity': self.intensity};


def _check_window(t, spec):
	t = np.asarray(t, dtype=float);
	half = 0.5 * spec.duration;
	if(np.any(np.abs(t) > half * (1.0 + 1e-12))):
		raise ValueError('Time outside the pulse window [-' + repr(half) + ', ' + repr(half) + ']');
	return t;

# Carriers (frequency, weight) of cos^2(pi t/Tp) cos(omega t) = sum weight cos(frequency t) / 2.
def _carriers(omega, duration):
	shift = 2.0 * math.pi / duration;
	return ((omega, 1.0), (omega + shift, 0.5), (omega - shift, 0.5));


## Electric field.
# @param t (float or ndarray) Time (a.u.) inside the pulse window.
# @param spec A PulseSpec.
# @returns F(t) in a.u.
def field(t, spec):
	t = _check_window(t, spec);
	envelope = np.cos(math.pi * t / spec.duration)**2;
	return spec.amplitude * envelope * np.cos(spec.omega * t);


## Vector potential from the closed form antiderivative of the field.
# @param t (float or ndarray) Time (a.u.) inside the pulse window.
# @param spec A PulseSpec.
# @returns A(t) in a.u.; odd in t, zero at both ends.
def vector_potential(t, spec):
	t = _check_window(t, spec);
	antiderivative = 0.0;
	for frequency, weight in _carriers(spec.omega, spec.duration):
		antiderivative = antiderivative + weight * np.sin(frequency * t) / frequency;
	return -0.5 * spec.amplitude * antiderivative;


## Closed form of (2/T) int_{-T/2}^{T/2} F(t) cos(omega0 t) dt for a unit amplitude pulse.
#
# Symmetric in (omega, omega0) when the window T is held fixed.
#
# @param omega (float or ndarray) Carrier frequency (a.u.).
# @param omega0 (float or ndarray) Analysis frequency (a.u.).
# @param duration (float) Window length T (a.u.).
# @returns The kernel value.
def fourier_kernel(omega, omega0, duration):
	omega = np.asarray(omega, dtype=float);
	omega0 = np.asarray(omega0, dtype=float);
	half = 0.5 * duration;
	shift = 2.0 * math.pi / duration;
	result = 0.0;
	for offset, weight in ((0.0, 1.0), (shift, 0.5), (-shift, 0.5)):
		# sin(x)/x written with numpy's normalised sinc
		result = result + weight * (np.sinc((omega + offset - omega0) * half / math.pi)
		                          + np.sinc((omega + offset + omega0) * half / math.pi));
	return 0.5 * result;


## Fourier component of the pulse at omega0.
# @param spec A PulseSpec.
# @param omega0 (float or ndarray) Analysis frequency (a.u.), positive.
# @returns F_omega0(omega) in a.u. (real).
def fourier_component(spec, omega0):
	if(np.any(np.asarray(omega0) <= 0)):
		raise ValueError('Analysis frequency must be positive.');
	return spec.amplitude * fourier_kernel(spec.omega, omega0, spec.duration);


## Vector potential by adaptive quadrature of the field (cross-check).
def numeric_vector_potential(t, spec):
	start = -0.5 * spec.duration;
	value, _ = quad(lambda s: field(s, spec), start, float(t), limit=2000, epsabs=1e-15, epsrel=1e-13);
	return -value;


## Fourier component by adaptive quadrature (cross-check).
def numeric_fourier_component(spec, omega0):
	half = 0.5 * spec.duration;
	integrand = lambda s: field(s, spec) * math.cos(omega0 * s);
	value, _ = quad(integrand, -half, half, limit=4000, epsabs=1e-15, epsrel=1e-13);
	return 2.0 * value / spec.duration;
