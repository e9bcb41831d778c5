#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#

## @package StrongFieldLib
# One-electron time-dependent Schroedinger equation in a field-free eigenbasis.
#
# Model atom and H2+ eigenbases on B-splines, velocity-gauge dipole couplings,
# cos^2 pulses, Adams propagation and yield analysis.

#__all__ = ['session', 'cli'];
__version__ = '1.0';
