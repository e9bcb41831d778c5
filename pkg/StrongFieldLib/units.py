#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#

## @package units
# Atomic unit conversion constants. Every conversion in the library reads them from here.

import math as math;

## Energy: eV per hartree.
HARTREE_EV = 27.211386;

## Speed of light in atomic units.
SPEED_OF_LIGHT_AU = 137.035999;

## Bohr radius in nm.
BOHR_NM = 0.0529177;

## Intensity: W/cm^2 per atomic unit of intensity.
INTENSITY_AU_WCM2 = 3.50944758e16;


def ev_to_au(energy_ev):
	return energy_ev / HARTREE_EV;

def au_to_ev(energy_au):
	return energy_au * HARTREE_EV;

## Photon angular frequency (a.u.) to vacuum wavelength (nm).
def au_to_nm(omega_au):
	return 2.0 * math.pi * SPEED_OF_LIGHT_AU * BOHR_NM / omega_au;

## Vacuum wavelength (nm) to photon angular frequency (a.u.).
def nm_to_au(wavelength_nm):
	return 2.0 * math.pi * SPEED_OF_LIGHT_AU * BOHR_NM / wavelength_nm;
