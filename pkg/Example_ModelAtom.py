#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#

## This example calibrates the model atom to the ionisation potential of H2 at
# R = 1.4 a.u., propagates one 30 cycle pulse below the one photon threshold and
# prints the yields. The basis is cached in ./ so a second run starts faster.


import StrongFieldLib.log as log;
from StrongFieldLib.config import RunConfig;
from StrongFieldLib.session import Session;
from StrongFieldLib.observables import photon_thresholds, rate_from_yield;

### Run configuration ###
config = RunConfig({
	'pulse': {
		'omega_ev': 12.0,			# Photon energy, below Ip but above Ip/2
		'cycles': 30,
		'intensity_Wcm2': 5e12,
	},
	'propagation': {'energy_cut_ev': 100.0},
	'output': {'two_electron_factor': True},	# Two equivalent electrons in H2
}, 'atom-fast,atom-h2-1.4');

context = log.get_default_context();
context.set_verbosity(3);

try:
	with Session(config, log=context) as session:
		print('alpha        = %.6f' % session.alpha());
		print('Ip           = %.6f a.u.' % session.ionisation_potential());
		print('thresholds   = ' + ', '.join('%.3f eV' % w for w in photon_thresholds(session.ionisation_potential(), 3)));

		### Propagate ###
		record = session.propagate()[0];
		p_gs, y_exc, y_ion = record.reported();
		print('P_gs         = %.6e' % p_gs);
		print('Y_exc        = %.6e' % y_exc);
		print('Y_ion        = %.6e' % y_ion);
		print('rate         = %.6e a.u.' % rate_from_yield(record.Y_ion, config.pulse_spec().duration));

except Exception as exc:
	print('Problem occurred during execution: ' + str(exc));

print('\nProgram completed.');
