#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#

## @package eigenbasis
#
# Containers shared by the model atom and the two-center system: field-free
# eigenstates grouped in symmetry blocks, and block-sparse dipole coupling sets.

import numpy as np;
import scipy.linalg as linalg;
from collections import OrderedDict, namedtuple as namedtuple;

from .bspline import BandMatrix;
from .errors import NumericalError;


## Field-free eigenstates of one symmetry block.
#
# `vectors` has one column per state over the block's spline basis; `shape`
# is the shape of a coefficient array for one state ((n,) radial, (n_xi, n_eta)
# spheroidal).
class EigenBlock(namedtuple('EigenBlock', 'label energies vectors shape')):
	__slots__ = ();

	@property
	def n_states(self):
		return len(self.energies);

	## Coefficient array of one state, reshaped to the block's basis shape.
	def coefficients(self, index):
		return self.vectors[:, index].reshape(self.shape);


## Discretized field-free eigenbasis.
#
# Blocks keep their insertion order, the first block holds the initial state
# of a propagation.
class EigenBasis:

	## Initializes an EigenBasis
	# @param self An instance of EigenBasis.
	# @param kind (str) 'atom' or 'two-center'.
	# @param blocks (list) EigenBlock objects.
	# @param threshold (float) Ionisation threshold in the energy convention of the blocks.
	# @param metadata (dict) Parameters the basis was built from (json serialisable).
	def __init__(self, kind, blocks, threshold, metadata=None):
		self.kind      = kind;
		self.blocks    = OrderedDict((b.label, b) for b in blocks);
		self.threshold = float(threshold);
		self.metadata  = dict(metadata or {});

	def labels(self):
		return list(self.blocks.keys());

	def block(self, label):
		if(label not in self.blocks):
			raise KeyError('No symmetry block ' + str(label) + ' in basis (has ' + ', '.join(self.blocks) + ')');
		return self.blocks[label];

	def __contains__(self, label):
		return label in self.blocks;

	@property
	def n_states(self):
		return sum(b.n_states for b in self.blocks.values());

	## Label of the block holding the initial state.
	@property
	def initial_block(self):
		return self.labels()[0];

	## Energy of the lowest state of the initial block.
	@property
	def ground_energy(self):
		return float(self.block(self.initial_block).energies[0]);

	## Returns a basis holding only the given blocks (same order as given).
	def subset(self, labels):
		result = EigenBasis(self.kind, [self.block(l) for l in labels], self.threshold, self.metadata);
		if(hasattr(self, 'operators')):
			result.operators = self.operators;
		return result;

	## @var kind
	# (str) 'atom' or 'two-center'.

	## @var blocks
	# (OrderedDict) label -> EigenBlock.

	## @var threshold
	# (float) Energy above which states count as ionised.

	## @var metadata
	# (dict) Build parameters, stored in caches.


## Block-sparse antisymmetric matrix of velocity-gauge dipole elements.
#
# Only one triangle of each coupled block pair is stored; the mirrored block is
# minus its transpose, so the assembled matrix is antisymmetric to the last bit.
class DipoleCouplingSet:

	## Initializes a DipoleCouplingSet
	# @param self An instance of DipoleCouplingSet.
	# @param orientation (str) 'z' for atoms, 'parallel' or 'perpendicular' for molecules.
	# @param pairs (dict) (row_label, col_label) -> ndarray of <row|eps.grad|col>.
	def __init__(self, orientation, pairs=None):
		self.orientation = orientation;
		self.pairs = OrderedDict();
		for key, matrix in (pairs or {}).items():
			self.add(key[0], key[1], matrix);

	## Stores the elements <row state|eps.grad|col state>.
	def add(self, row_label, col_label, matrix):
		if(row_label == col_label):
			raise ValueError('Diagonal dipole block ' + str(row_label) + ' is not allowed.');
		if((col_label, row_label) in self.pairs):
			raise ValueError('Block pair ' + str(row_label) + '/' + str(col_label) + ' already stored.');
		matrix = np.array(matrix, dtype=float);
		matrix.setflags(write=False);
		self.pairs[(row_label, col_label)] = matrix;

	## Coupling block between two symmetry blocks, None if they are not coupled.
	def block(self, row_label, col_label):
		if((row_label, col_label) in self.pairs):
			return self.pairs[(row_label, col_label)];
		if((col_label, row_label) in self.pairs):
			return -self.pairs[(col_label, row_label)].T;
		return None;

	def coupled(self, row_label, col_label):
		return (row_label, col_label) in self.pairs or (col_label, row_label) in self.pairs;

	## Labels appearing in any stored pair.
	def labels(self):
		result = [];
		for a, b in self.pairs:
			for l in (a, b):
				if(l not in result):
					result.append(l);
		return result;

	## Dense matrix over the concatenation of the given blocks (tests and small systems).
	# @param self An instance of DipoleCouplingSet.
	# @param basis An EigenBasis.
	# @param labels (list) Blocks to include, all basis blocks when None.
	def to_dense(self, basis, labels=None):
		labels = basis.labels() if labels is None else labels;
		sizes = [basis.block(l).n_states for l in labels];
		offsets = np.concatenate(([0], np.cumsum(sizes)));
		result = np.zeros((offsets[-1], offsets[-1]));
		for i, a in enumerate(labels):
			for j, b in enumerate(labels):
				m = self.block(a, b);
				if(m is not None):
					result[offsets[i]:offsets[i + 1], offsets[j]:offsets[j + 1]] = m;
		return result;

	## @var orientation
	# (str) Polarisation tag.

	## @var pairs
	# (OrderedDict) (row_label, col_label) -> ndarray, one triangle only.


## Fixes the arbitrary sign of eigenvectors: first significant coefficient positive.
# @param vectors (ndarray) One eigenvector per column.
# @returns The same vectors with deterministic signs.
def fix_signs(vectors):
	vectors = np.array(vectors);
	scale = np.max(np.abs(vectors), axis=0);
	for j in range(vectors.shape[1]):
		significant = np.nonzero(np.abs(vectors[:, j]) > 1e-8 * scale[j])[0];
		if(len(significant) and vectors[significant[0], j] < 0):
			vectors[:, j] *= -1.0;
	return vectors;


## Solves H c = E S c for one symmetry block.
# @param label (str) Block label (used in error messages).
# @param hamiltonian (ndarray) Symmetric matrix.
# @param overlap Symmetric positive definite matrix, dense or a BandMatrix.
# @param shape (tuple) Shape of one coefficient array.
# @returns An EigenBlock with ascending energies and S-orthonormal vectors.
#
# A banded overlap is factored with a banded Cholesky decomposition S = L L^T
# and the problem is reduced to the standard one for L^-1 H L^-T.
def solve_block(label, hamiltonian, overlap, shape):
	try:
		if(isinstance(overlap, BandMatrix)):
			energies, vectors = _solve_reduced(hamiltonian, overlap);
		else:
			energies, vectors = linalg.eigh(hamiltonian, overlap);
	except (linalg.LinAlgError, ValueError) as exc:
		raise NumericalError('Generalized eigenproblem failed: ' + str(exc), block=label);
	except NumericalError as exc:
		raise NumericalError(str(exc), block=label);
	if(not np.all(np.isfinite(energies))):
		raise NumericalError('Non-finite eigenvalues', block=label);
	vectors = fix_signs(vectors);
	energies.setflags(write=False);
	vectors.setflags(write=False);
	return EigenBlock(label, energies, vectors, tuple(shape));


def _solve_reduced(hamiltonian, overlap):
	u = overlap.bandwidth;
	factor = overlap.cholesky();
	half = linalg.solve_banded((u, 0), factor, hamiltonian);
	reduced = linalg.solve_banded((u, 0), factor, half.T);
	energies, y = linalg.eigh(0.5 * (reduced + reduced.T));
	# L^T in the upper band layout of solve_banded
	n = factor.shape[1];
	upper = np.zeros_like(factor);
	for d in range(u + 1):
		upper[u - d, d:] = factor[d, :n - d];
	return energies, linalg.solve_banded((0, u), upper, y);
