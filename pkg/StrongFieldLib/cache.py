#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#

## @package cache
#
# Binary cache of eigenbases and dipole coupling sets.
#
# File layout (little endian):
#
#   'SFLBASIS' | u32 version | 32-byte fingerprint | u32 kind | u32 metadata length + json
#   u32 block count, per block: label, u32 n_states, u32 n_coeffs, shape, energies, coefficients
#   u32 set count, per set: orientation label, u32 pair count,
#       per pair: row label, col label, u32 rows, u32 cols, data
#   u64 length of everything above | sha256 of everything above (including the length)
#
# Labels are u16 length + utf-8, arrays float64 in C order.

import os as os;
import hashlib as hashlib;
import tempfile as tempfile;

from . import log as log;
from . import json2 as json2;
from .binary import ByteCode, ByteReader;
from .errors import CacheError;
from .eigenbasis import EigenBasis, EigenBlock, DipoleCouplingSet;

MAGIC = b'SFLBASIS';
VERSION = 1;

## Environment variable overriding the cache directory.
CACHE_DIR_ENV = 'STRONGFIELD_CACHE_DIR';

_KINDS = {'atom': 0, 'two-center': 1};
_DIGEST_LEN = 32;


## Serialises a basis and its coupling sets.
# @param fingerprint (bytes) 32-byte configuration digest.
# @param basis An EigenBasis.
# @param coupling_sets (list) DipoleCouplingSets.
# @returns bytes
def encode(fingerprint, basis, coupling_sets):
	if(len(fingerprint) != _DIGEST_LEN):
		raise ValueError('Fingerprint must be a 32-byte digest, got ' + str(len(fingerprint)) + ' bytes');
	bc = ByteCode('<');
	metadata = json2.dumps({'threshold': basis.threshold, 'metadata': basis.metadata}, canonical=True).encode('utf-8');
	parts = [MAGIC, bc.word(VERSION), bytes(fingerprint), bc.word(_KINDS[basis.kind]),
		bc.word(len(metadata)), metadata, bc.word(len(basis.blocks))];
	for label in basis.labels():
		block = basis.block(label);
		parts += [bc.label(label), bc.word(block.n_states), bc.word(block.vectors.shape[0]),
			bc.shape(block.shape), bc.floats(block.energies), bc.floats(block.vectors)];
	parts.append(bc.word(len(coupling_sets)));
	for couplings in coupling_sets:
		parts += [bc.label(couplings.orientation), bc.word(len(couplings.pairs))];
		for (row, col), matrix in couplings.pairs.items():
			parts += [bc.label(row), bc.label(col), bc.word(matrix.shape[0]), bc.word(matrix.shape[1]), bc.floats(matrix)];
	payload = b''.join(parts);
	payload += bc.word(len(payload), 8);
	return payload + hashlib.sha256(payload).digest();


## Parses bytes written by encode.
# @param data (bytes) File contents.
# @param fingerprint (bytes) Expected fingerprint; not checked when None.
# @returns (EigenBasis, [DipoleCouplingSet])
# @throws CacheError naming the first inconsistency found.
def decode(data, fingerprint=None):
	if(len(data) < len(MAGIC) + 8 + _DIGEST_LEN):
		raise CacheError('File too short (' + str(len(data)) + ' bytes)');
	if(data[:len(MAGIC)] != MAGIC):
		raise CacheError('Bad magic ' + repr(data[:len(MAGIC)]));
	body, digest = data[:-_DIGEST_LEN], data[-_DIGEST_LEN:];
	length = ByteReader(body[-8:]).word(8);
	if(length != len(body) - 8):
		raise CacheError('Length word says ' + str(length) + ' bytes, found ' + str(len(body) - 8) + ' (truncated?)');
	if(hashlib.sha256(body).digest() != digest):
		raise CacheError('Checksum mismatch');

	reader = ByteReader(body[:-8]);
	reader.raw(len(MAGIC));
	version = reader.word();
	if(version != VERSION):
		raise CacheError('Unsupported cache version ' + str(version) + ' (expected ' + str(VERSION) + ')');
	stored = reader.raw(_DIGEST_LEN);
	if(fingerprint is not None and stored != bytes(fingerprint)):
		raise CacheError('Fingerprint mismatch: cache was built for a different system or basis');
	kinds = dict((v, k) for k, v in _KINDS.items());
	kind = kinds.get(reader.word());
	if(kind is None):
		raise CacheError('Unknown system kind');
	header = json2.loads(reader.raw(reader.word()).decode('utf-8'));

	blocks = [];
	for _ in range(reader.word()):
		label = reader.label();
		n_states, n_coeffs = reader.word(), reader.word();
		shape = reader.shape();
		energies = reader.floats(n_states);
		vectors = reader.floats(n_states * n_coeffs).reshape(n_coeffs, n_states);
		energies.setflags(write=False);
		vectors.setflags(write=False);
		blocks.append(EigenBlock(label, energies, vectors, shape));
	basis = EigenBasis(kind, blocks, header['threshold'], header['metadata']);

	sets = [];
	for _ in range(reader.word()):
		couplings = DipoleCouplingSet(reader.label());
		for _ in range(reader.word()):
			row, col = reader.label(), reader.label();
			rows, cols = reader.word(), reader.word();
			couplings.add(row, col, reader.floats(rows * cols).reshape(rows, cols));
		sets.append(couplings);
	if(reader.remaining):
		raise CacheError(str(reader.remaining) + ' unexpected trailing bytes');
	return basis, sets;


## Directory-backed store of encoded bases, keyed by configuration fingerprint.
#
# Loading never raises on a bad file: the problem is logged as a warning and the
# caller rebuilds. Writes go through a temporary file and a rename.
class BasisCache:

	## Initializes a BasisCache
	# @param self An instance of BasisCache.
	# @param directory (str) Cache directory; the environment variable STRONGFIELD_CACHE_DIR wins when set.
	# @param log A log context.
	def __init__(self, directory='.', log=log.get_default_context()):
		self.directory = os.environ.get(CACHE_DIR_ENV) or directory;
		self.log       = log;

	## File that holds the basis of a fingerprint.
	def path(self, fingerprint):
		return os.path.join(self.directory, 'basis-' + bytes(fingerprint).hex()[:16] + '.sflb');

	## Loads a cached basis.
	# @param self An instance of BasisCache.
	# @param fingerprint (bytes) Configuration digest.
	# @returns (EigenBasis, [DipoleCouplingSet]) or None when absent or unusable.
	def load(self, fingerprint):
		path = self.path(fingerprint);
		if(not os.path.exists(path)):
			self.log.info('No cached basis at ' + path, 2);
			return None;
		try:
			with open(path, 'rb') as f:
				data = f.read();
			result = decode(data, fingerprint);
		except (CacheError, IOError, OSError, ValueError, KeyError) as exc:
			self.log.warning('Ignoring cache ' + path + ': ' + str(exc));
			return None;
		self.log.info('Loaded cached basis ' + path, 1);
		return result;

	## Writes a basis and its couplings.
	# @param self An instance of BasisCache.
	# @param fingerprint (bytes) Configuration digest.
	# @param basis An EigenBasis.
	# @param coupling_sets (list) DipoleCouplingSets.
	# @returns (str) Path of the written file.
	def store(self, fingerprint, basis, coupling_sets):
		path = self.path(fingerprint);
		data = encode(fingerprint, basis, coupling_sets);
		try:
			os.makedirs(self.directory, exist_ok=True);
			handle, temporary = tempfile.mkstemp(dir=self.directory, suffix='.tmp');
			with os.fdopen(handle, 'wb') as f:
				f.write(data);
			os.replace(temporary, path);
		except (IOError, OSError) as exc:
			raise CacheError('Cannot write cache ' + path + ': ' + str(exc));
		self.log.info('Stored basis (' + str(len(data)) + ' bytes) in ' + path, 1);
		return path;

	## Hex dump of the header words of a cache file (debugging aid).
	def header_dump(self, fingerprint, n_bytes=64):
		with open(self.path(fingerprint), 'rb') as f:
			return ByteCode('<').as_hex_dump(f.read(n_bytes));

	## @var directory
	# (str) Where cache files live.
