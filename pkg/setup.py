#!/usr/bin/env python

from setuptools import setup

setup(name='StrongFieldLib',
      version='1.0',
      description='One-electron TDSE in a field-free eigenbasis: model atom and H2+ in ultrashort laser pulses',
      packages=['StrongFieldLib'],
      python_requires='>=3.6',
      install_requires=['numpy', 'scipy', 'joblib'],
      extras_require={'plot': ['matplotlib'], 'test': ['pytest']},
      entry_points={'console_scripts': ['strongfield = StrongFieldLib.cli:main']},
     )
