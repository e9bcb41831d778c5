#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#

## @package binary
#
# Fixed-width binary words for the basis cache files.
#
# ByteCode packs integers, labels and float64 arrays with an explicit struct
# endianess character; ByteReader walks a buffer written by it.

import struct as struct;
import numpy as np;

from .errors import CacheError;

_INT_FORMATS = {2: 'H', 4: 'I', 8: 'Q'};


## Generates binary words with a fixed byte order.
class ByteCode:

	## Initializes a ByteCode.
	#
	# @param self An instance of ByteCode
	# @param endianess (str) A python's struct endianess format character.
	def __init__(self, endianess='<'):
		self.endianess = endianess;

	# --- Format functions -----------------------------------------------------

	## Packs an unsigned integer.
	#
	# @param self An instance of ByteCode.
	# @param number (int) The number to pack.
	# @param n_bytes (int) Word length: 2, 4 or 8.
	#
	# @returns bytes
	def word(self, number, n_bytes=4):
		if(n_bytes not in _INT_FORMATS):
			raise ValueError('Only 2, 4 and 8 n_bytes supported');
		return struct.pack(self.endianess + _INT_FORMATS[n_bytes], int(number));

	## Packs a text label as u16 length + utf-8.
	def label(self, text):
		raw = text.encode('utf-8');
		return self.word(len(raw), 2) + raw;

	## Packs a float64 array (C order).
	def floats(self, array):
		return np.ascontiguousarray(array, dtype=self.endianess + 'f8').tobytes();

	## Packs a shape as u32 rank + u32 dims.
	def shape(self, dims):
		return self.word(len(dims)) + b''.join(self.word(d) for d in dims);

	## Parses bytes into hexadecimal words, one numbered line per group.
	#
	# @param self An instance of ByteCode.
	# @param data (bytes) The bytes to render.
	# @param word_separator (str) String to add between binary words.
	# @param line_separator (str) String to add between lines.
	# @param word_len (int) The length (in bytes) of a binary word.
	# @param words_per_line (int) Words on each line.
	#
	# @returns The hexadecimal representation (str) of data, words shown most significant byte first.
	def as_hex_dump(self, data, word_separator=' ', line_separator='\n', word_len=4, words_per_line=8):
		flip = '>' != self.endianess;
		line_len = word_len * words_per_line;
		program_str = [];
		for line_n, start in enumerate(range(0, len(data), line_len)):
			line = data[start:start + line_len];
			line_str = [];
			for ii in range(0, len(line), word_len):
				word = bytearray(line[ii:ii + word_len]);
				if(flip):
					word = reversed(word);
				line_str.append(''.join(['{0:02X}'.format(b) for b in word]));
			program_str.append('%03i:\t' % (line_n + 1) + word_separator.join(line_str));
		return line_separator.join(program_str);


## Sequential reader of data written with ByteCode.
class ByteReader:

	## Initializes a ByteReader
	# @param self An instance of ByteReader.
	# @param data (bytes) Buffer.
	# @param endianess (str) Struct endianess character used when writing.
	def __init__(self, data, endianess='<'):
		self.data      = data;
		self.endianess = endianess;
		self.offset    = 0;

	def _take(self, n_bytes):
		if(self.offset + n_bytes > len(self.data)):
			raise CacheError('Unexpected end of data at byte ' + str(self.offset) + ' (need ' + str(n_bytes) + ' more)');
		chunk = self.data[self.offset:self.offset + n_bytes];
		self.offset += n_bytes;
		return chunk;

	def raw(self, n_bytes):
		return bytes(self._take(n_bytes));

	def word(self, n_bytes=4):
		return struct.unpack(self.endianess + _INT_FORMATS[n_bytes], self._take(n_bytes))[0];

	def label(self):
		raw = self._take(self.word(2));
		try:
			return bytes(raw).decode('utf-8');
		except UnicodeDecodeError:
			raise CacheError('Label at byte ' + str(self.offset) + ' is not utf-8');

	## Reads count float64 values into a new writable array.
	def floats(self, count):
		return np.frombuffer(self._take(8 * count), dtype=self.endianess + 'f8').astype(float);

	def shape(self):
		return tuple(self.word() for _ in range(self.word()));

	@property
	def remaining(self):
		return len(self.data) - self.offset;

	## @var offset
	# (int) Position of the next unread byte.
