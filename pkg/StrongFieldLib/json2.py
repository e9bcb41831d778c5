#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#

## @package json2
# Generic json packing/unpacking
#
# This module implements a json encoder and a decoder for configuration files and
# cache metadata. Objects are encoded through their ._to_dict() method, numpy
# scalars and arrays as plain numbers and lists. Decoding rejects duplicate keys,
# so a config cannot silently set one value twice.
#
# @see JSONEncoder
# @see loads

import json as json
import numpy as np

from .errors import ConfigError


## This Encoder encodes just like python's json.JSONEncoder with some exceptions
# @see default
class JSONEncoder(json.JSONEncoder):

  ## The encoding function.
  #
  # Objects with a ._to_dict() are encoded as the returned dictionary, numpy
  # values as their python equivalents. Anything else fails as in json.JSONEncoder.
  #
  # @param self An instance of JSONEncoder
  # @param obj The object to be encoded.
  #
  def default(self, obj):
    if hasattr(obj, '_to_dict'):
      return obj._to_dict();
    if isinstance(obj, np.ndarray):
      return obj.tolist();
    if isinstance(obj, np.generic):
      return obj.item();
    return json.JSONEncoder.default(self, obj);


## Builds dictionaries from decoded pairs, refusing repeated keys.
def _unique_pairs(pairs):
  result = {};
  for key, value in pairs:
    if key in result:
      raise ConfigError('Duplicate key ' + str(key) + ' in JSON object', key);
    result[key] = value;
  return result;


## Encodes obj as JSON.
# @param obj The object to encode.
# @param canonical (bool) Sorted keys and no whitespace, for hashing.
# @param kwargs Passed to json.dumps.
def dumps(obj, canonical=False, **kwargs):
  if canonical:
    kwargs.update(sort_keys=True, separators=(',', ':'));
  return json.dumps(obj, cls=JSONEncoder, **kwargs);


## Decodes a JSON document.
# @param text (str) The document.
# @param cls (optional) A class with ._from_dict(dict); the decoded top level object is passed to it.
# @returns The decoded data.
def loads(text, cls=None):
  try:
    data = json.loads(text, object_pairs_hook=_unique_pairs);
  except ValueError as exc:
    if isinstance(exc, ConfigError):
      raise;
    raise ConfigError('Malformed JSON: ' + str(exc));
  if cls is not None and hasattr(cls, '_from_dict'):
    return cls._from_dict(data);
  return data;
