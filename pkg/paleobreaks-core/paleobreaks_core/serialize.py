# -*- coding: utf-8 -*-
#
# Copyright 2024 The paleobreaks authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License").
# You may not use this file except in compliance with the License.
# A copy of the License is located at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# or in the "license" file accompanying this file. This file is
# distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS
# OF ANY KIND, either express or implied. See the License for the
# specific language governing permissions and limitations under the
# License.
#
import json
import math
import re
import sys
import typing
from enum import Enum

import numpy as np

from .exceptions import SerializationException

if typing.TYPE_CHECKING:
    from typing import Any, Dict, List, TypeVar, Union
    T = TypeVar('T')


class DefaultSerializer(object):
    """Converts model objects to JSON-compatible structures and back.

    Model classes declare the attributes to (de)serialize in a
    ``deserialized_types`` dict and may rename them in the payload with
    an ``attribute_map`` dict.
    """
    PRIMITIVE_TYPES = (bool, int, str, bytes)
    NATIVE_TYPES_MAPPING = {
        'int': int,
        'float': float,
        'str': str,
        'bool': bool,
        'object': object,
    }

    def serialize(self, obj):
        # type: (Any) -> Any
        """Builds a serialized object.

        * If obj is None, return None.
        * If obj is str, int, bool, return directly.
        * If obj is a float, return it when finite, None otherwise.
        * If obj is a numpy scalar or array, convert it to the python
          scalar or (nested) list.
        * If obj is list or tuple, serialize each element into a list.
        * If obj is an Enum, return its value.
        * If obj is dict, return the dict with serialized values.
        * If obj is a model, return the dict with keys resolved from
          the model's ``attribute_map`` and values serialized based on
          ``deserialized_types``. None-valued attributes are left out.

        :param obj: The data to serialize.
        :type obj: object
        :return: The serialized form of data.
        :rtype: Union[Dict[str, Any], List, str, int, float, None]
        """
        if obj is None:
            return None
        elif isinstance(obj, np.generic):
            return self.serialize(obj.item())
        elif isinstance(obj, float):
            return obj if math.isfinite(obj) else None
        elif isinstance(obj, self.PRIMITIVE_TYPES):
            return obj
        elif isinstance(obj, np.ndarray):
            return self.serialize(obj.tolist())
        elif isinstance(obj, (list, tuple)):
            return [self.serialize(sub_obj) for sub_obj in obj]
        elif isinstance(obj, Enum):
            return obj.value

        if isinstance(obj, dict):
            obj_dict = obj
        elif hasattr(obj, 'deserialized_types'):
            attribute_map = self.__attribute_map(type(obj))
            obj_dict = {
                attribute_map[attr]: getattr(obj, attr)
                for attr in obj.deserialized_types
                if getattr(obj, attr) is not None
            }
        else:
            raise SerializationException(
                "Cannot serialize object of type {}".format(
                    type(obj).__name__))

        return {key: self.serialize(val) for key, val in obj_dict.items()}

    def to_json(self, obj, **kwargs):
        # type: (Any, Any) -> str
        """Serialize ``obj`` and dump it as strict JSON."""
        try:
            return json.dumps(self.serialize(obj), allow_nan=False, **kwargs)
        except ValueError as e:
            raise SerializationException(str(e))

    def deserialize(self, payload, obj_type):
        # type: (str, Union[T, str]) -> Any
        """Deserializes a JSON payload into an instance of ``obj_type``.

        The ``obj_type`` parameter can be a primitive type, a model
        class or a list / dict of model objects given in string format,
        for eg:

        * ``'list[paleobreaks_core.regression.SegmentFit]'``
        * ``'dict(str, float)'``

        :param payload: JSON document to be deserialized.
        :type payload: str
        :param obj_type: class or resolved class name
        :type obj_type: Union[object, str]
        :return: deserialized object
        :rtype: object
        :raises: :py:class:`paleobreaks_core.exceptions.SerializationException`
        """
        if payload is None:
            return None

        try:
            payload = json.loads(payload)
        except Exception:
            raise SerializationException(
                "Couldn't parse document: {}".format(payload))

        return self.deserialize_data(payload, obj_type)

    def deserialize_data(self, payload, obj_type):
        # type: (Any, Union[T, str]) -> Any
        """Deserializes already parsed data into ``obj_type``."""
        if payload is None:
            return None

        if isinstance(obj_type, str):
            if obj_type.startswith('list['):
                sub_obj_type = re.match(r'list\[(.*)\]', obj_type)
                if sub_obj_type is None:
                    return []
                return [
                    self.deserialize_data(sub_payload,
                                          sub_obj_type.group(1).strip())
                    for sub_payload in payload]

            if obj_type.startswith('dict('):
                sub_obj_type = re.match(r'dict\(([^,]*), (.*)\)', obj_type)
                if sub_obj_type is None:
                    return {}
                return {
                    k: self.deserialize_data(v, sub_obj_type.group(2))
                    for k, v in payload.items()
                }

            if obj_type in self.NATIVE_TYPES_MAPPING:
                obj_type = self.NATIVE_TYPES_MAPPING[obj_type]
            else:
                obj_type = self.__load_class_from_name(obj_type)

        if obj_type in (int, float, str, bool):
            return self.__deserialize_primitive(payload, obj_type)
        elif obj_type == object:
            return payload
        return self.__deserialize_model(payload, obj_type)

    @staticmethod
    def __attribute_map(model_class):
        # type: (Any) -> Dict[str, str]
        attribute_map = dict(getattr(model_class, 'attribute_map', {}))
        attribute_map.update({
            k: k for k in model_class.deserialized_types
            if k not in attribute_map
        })
        return attribute_map

    def __load_class_from_name(self, class_name):
        # type: (str) -> Any
        """Resolve an absolute class name, or a name on this module.

        :raises: :py:class:`paleobreaks_core.exceptions.SerializationException`
        """
        try:
            module_class_list = class_name.rsplit(".", 1)
            if len(module_class_list) > 1:
                module = __import__(
                    module_class_list[0], fromlist=[module_class_list[1]])
                return getattr(module, module_class_list[1])
            return getattr(sys.modules[__name__], module_class_list[0])
        except Exception as e:
            raise SerializationException(
                "Unable to resolve class {} from installed "
                "modules: {}".format(class_name, str(e)))

    def __deserialize_primitive(self, payload, obj_type):
        # type: (Any, Any) -> Any
        try:
            return obj_type(payload)
        except (TypeError, ValueError):
            raise SerializationException(
                "Failed to parse {} into '{}' object".format(
                    payload, obj_type.__name__))

    def __deserialize_model(self, payload, obj_type):
        # type: (Any, Any) -> Any
        """Deserialize a payload dict into a model object.

        Read-only properties listed in ``deserialized_types`` are
        skipped; payload keys outside the attribute map are ignored.

        :raises: :py:class:`paleobreaks_core.exceptions.SerializationException`
        """
        try:
            if issubclass(obj_type, Enum):
                return obj_type(payload)
            if not hasattr(obj_type, 'deserialized_types'):
                return payload

            init_kwargs = {}  # type: Dict[str, Any]
            for name, payload_name in self.__attribute_map(obj_type).items():
                if payload_name not in payload:
                    continue
                descriptor = getattr(obj_type, name, None)
                if (isinstance(descriptor, property) and
                        descriptor.fset is None):
                    continue
                init_kwargs[name] = self.deserialize_data(
                    payload[payload_name], obj_type.deserialized_types[name])
            return obj_type(**init_kwargs)
        except SerializationException:
            raise
        except Exception as e:
            raise SerializationException(str(e))
