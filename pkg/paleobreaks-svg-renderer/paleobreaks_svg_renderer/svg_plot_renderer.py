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
import typing

import numpy as np
from jinja2 import Template

from paleobreaks_core.exceptions import TemplateRendererException

if typing.TYPE_CHECKING:
    from typing import Any, Dict, List, Optional, Sequence, Tuple

DEFAULT_WIDTH = 960
DEFAULT_HEIGHT = 420
MARGIN = 50

DEFAULT_TEMPLATE = u"""<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" width="{{ width }}" height="{{ height }}" viewBox="0 0 {{ width }} {{ height }}">
  <title>{{ title | e }}</title>
  <rect x="0" y="0" width="{{ width }}" height="{{ height }}" fill="white"/>
{%- for rect in ci_rects %}
  <rect class="ci" x="{{ rect.x }}" y="{{ top }}" width="{{ rect.width }}" height="{{ plot_height }}" fill="#f4a582" fill-opacity="0.35"/>
{%- endfor %}
{%- for line in reference %}
  <line class="reference" x1="{{ line.x }}" y1="{{ top }}" x2="{{ line.x }}" y2="{{ bottom }}" stroke="#4d4d4d" stroke-dasharray="4 3"/>
  <text x="{{ line.x }}" y="{{ top - 6 }}" font-size="10" text-anchor="middle">{{ line.label | e }}</text>
{%- endfor %}
  <polyline class="series" points="{{ points }}" fill="none" stroke="#2166ac" stroke-width="0.8"/>
{%- for line in breaks %}
  <line class="break" x1="{{ line.x }}" y1="{{ top }}" x2="{{ line.x }}" y2="{{ bottom }}" stroke="#b2182b" stroke-width="1.2"/>
{%- endfor %}
  <line x1="{{ left }}" y1="{{ bottom }}" x2="{{ right }}" y2="{{ bottom }}" stroke="black"/>
  <line x1="{{ left }}" y1="{{ top }}" x2="{{ left }}" y2="{{ bottom }}" stroke="black"/>
{%- for tick in x_ticks %}
  <text x="{{ tick.x }}" y="{{ bottom + 16 }}" font-size="10" text-anchor="middle">{{ tick.label }}</text>
{%- endfor %}
  <text x="{{ (left + right) / 2 }}" y="{{ height - 8 }}" font-size="11" text-anchor="middle">{{ x_label | e }}</text>
  <text x="12" y="{{ (top + bottom) / 2 }}" font-size="11" text-anchor="middle" transform="rotate(-90 12 {{ (top + bottom) / 2 }})">{{ y_label | e }}</text>
</svg>
"""


class PlotLayers(object):
    """Layers of a break plot.

    :param ages: Series ages in Ma.
    :type ages: Sequence[float]
    :param values: Series values.
    :type values: Sequence[float]
    :param break_ages: Estimated break ages in Ma.
    :type break_ages: Sequence[float]
    :param intervals: ``(lower, upper)`` ages of each bounded break
        interval.
    :type intervals: Sequence[Tuple[float, float]]
    :param reference: ``(age, label)`` of reference boundaries.
    :type reference: Sequence[Tuple[float, str]]
    :param title: Plot title.
    :type title: str
    """
    def __init__(self, ages, values, break_ages=None, intervals=None,
                 reference=None, title=""):
        # type: (Sequence[float], Sequence[float], Optional[Sequence[float]], Optional[Sequence[Tuple[float, float]]], Optional[Sequence[Tuple[float, str]]], str) -> None
        self.ages = np.asarray(ages, dtype=float)
        self.values = np.asarray(values, dtype=float)
        self.break_ages = list(break_ages or [])
        self.intervals = list(intervals or [])
        self.reference = list(reference or [])
        self.title = title


class SvgPlotRenderer(object):
    """Renders :py:class:`PlotLayers` as SVG.

    Age runs from oldest on the left to youngest on the right and the
    value axis is inverted, as usual for benthic isotope records.

    :param template: Jinja template source, :py:data:`DEFAULT_TEMPLATE`
        by default.
    :type template: str
    :param width: Image width in pixels.
    :type width: int
    :param height: Image height in pixels.
    :type height: int
    """
    def __init__(self, template=None, width=DEFAULT_WIDTH,
                 height=DEFAULT_HEIGHT):
        # type: (Optional[str], int, int) -> None
        self.template = template if template is not None else DEFAULT_TEMPLATE
        self.width = int(width)
        self.height = int(height)

    def data_map(self, layers):
        # type: (PlotLayers) -> Dict[str, Any]
        """Pixel coordinates of every layer."""
        if layers.ages.size == 0 or layers.ages.size != layers.values.size:
            raise TemplateRendererException(
                "Series ages and values must be non-empty and of equal "
                "length")
        left, right = MARGIN, self.width - MARGIN / 2.0
        top, bottom = MARGIN / 2.0, self.height - MARGIN
        oldest, youngest = layers.ages.max(), layers.ages.min()
        low, high = layers.values.min(), layers.values.max()
        age_span = (oldest - youngest) or 1.0
        value_span = (high - low) or 1.0

        def x_of(age):
            # type: (float) -> float
            return round(left + (oldest - age) / age_span * (right - left), 2)

        def y_of(value):
            # type: (float) -> float
            return round(top + (value - low) / value_span * (bottom - top), 2)

        points = " ".join(
            "{},{}".format(x_of(a), y_of(v))
            for a, v in zip(layers.ages, layers.values))
        rects = []  # type: List[Dict[str, float]]
        for lower, upper in layers.intervals:
            x0, x1 = sorted((x_of(lower), x_of(upper)))
            rects.append({"x": x0, "width": round(x1 - x0, 2)})
        ticks = np.linspace(oldest, youngest, 7)

        return {
            "width": self.width,
            "height": self.height,
            "left": left,
            "right": right,
            "top": top,
            "bottom": bottom,
            "plot_height": bottom - top,
            "title": layers.title,
            "points": points,
            "ci_rects": rects,
            "breaks": [{"x": x_of(a)} for a in layers.break_ages],
            "reference": [{"x": x_of(a), "label": label}
                          for a, label in layers.reference
                          if youngest <= a <= oldest],
            "x_ticks": [{"x": x_of(t), "label": "{:.1f}".format(t)}
                        for t in ticks],
            "x_label": "Age (Ma)",
            "y_label": "d18O (per mil, inverted)",
        }

    def render(self, layers, **kwargs):
        # type: (PlotLayers, Any) -> str
        """Render the layers.

        :param layers: Plot layers.
        :type layers: PlotLayers
        :param kwargs: Extra template variables, overriding computed ones.
        :return: SVG document.
        :rtype: str
        :raises: :py:class:`paleobreaks_core.exceptions.TemplateRendererException`
            if rendering of the template fails.
        """
        try:
            data_map = self.data_map(layers)
            data_map.update(kwargs)
            return Template(self.template).render(data_map)
        except Exception as e:
            raise TemplateRendererException(
                "Failed to render the template error : {}".format(str(e)))
