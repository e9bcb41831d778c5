#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#

## Plots the yields of one or more scan CSV files against photon energy, with the
# N photon thresholds of the given ionisation potential as vertical lines.
#
# usage: PlotScan.py [--ip IP_AU] [--field Y_ion] scan.csv [scan.csv ...]

import argparse as argparse;
import matplotlib.pyplot as plots;

from StrongFieldLib.observables import read_records, photon_thresholds;

parser = argparse.ArgumentParser(description='Plot frequency scans written by strongfield scan.');
parser.add_argument('inputs', nargs='+');
parser.add_argument('--ip', type=float, help='ionisation potential (a.u.) for the threshold lines');
parser.add_argument('--field', default='Y_ion', choices=('Y_ion', 'Y_exc', 'P_gs'));
parser.add_argument('--save', metavar='PNG', help='write the figure instead of showing it');
args = parser.parse_args();

figure, axes = plots.subplots();
for path in args.inputs:
	with open(path, 'r', newline='') as f:
		records = [r for r in read_records(f) if not r.failed];
	for orientation in sorted(set(r.orientation for r in records)):
		series = [r for r in records if r.orientation == orientation];
		index = ('P_gs', 'Y_exc', 'Y_ion').index(args.field);
		axes.semilogy([r.omega_ev for r in series], [r.reported()[index] for r in series], '.-',
			label=path + ' (' + orientation + ')');

if(args.ip):
	low, high = axes.get_xlim();
	for n, omega in enumerate(photon_thresholds(args.ip, 10), 1):
		if(low <= omega <= high):
			axes.axvline(omega, color='gray', linestyle=':');
			axes.text(omega, 1.0, ' N=' + str(n), transform=axes.get_xaxis_transform(), va='top', fontsize=8);

axes.set_xlabel('photon energy (eV)');
axes.set_ylabel(args.field);
axes.legend(fontsize=8);

if(args.save):
	figure.savefig(args.save, dpi=150);
else:
	plots.show();
