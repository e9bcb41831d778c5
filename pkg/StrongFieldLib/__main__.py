#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#

import sys as sys;

from .cli import main;

sys.exit(main());
