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
import unittest
import xml.etree.ElementTree as ElementTree

try:
    import mock
except ImportError:
    from unittest import mock

from paleobreaks_core.exceptions import TemplateRendererException
from paleobreaks_svg_renderer.svg_plot_renderer import (
    PlotLayers, SvgPlotRenderer)

SVG = "{http://www.w3.org/2000/svg}"


class TestSvgPlotRenderer(unittest.TestCase):
    def setUp(self):
        self.renderer = SvgPlotRenderer(width=400, height=200)
        self.layers = PlotLayers(
            ages=[4.0, 3.0, 2.0, 1.0, 0.0],
            values=[1.0, 2.0, 3.0, 2.0, 1.0],
            break_ages=[2.0],
            intervals=[(3.0, 1.0)],
            reference=[(3.3, "3.3 Ma"), (47.0, "47 Ma")],
            title="Test & record")

    def test_render_returns_svg_document(self):
        document = self.renderer.render(self.layers)

        root = ElementTree.fromstring(document.encode("utf-8"))
        assert root.tag == SVG + "svg", "Renderer didn't return SVG"
        assert root.find(SVG + "title").text == "Test & record", (
            "Renderer didn't escape the title")

    def test_layers_are_drawn(self):
        root = ElementTree.fromstring(
            self.renderer.render(self.layers).encode("utf-8"))

        classes = [e.get("class") for e in root.iter() if e.get("class")]
        assert classes.count("break") == 1, "Break line missing"
        assert classes.count("ci") == 1, "Interval rectangle missing"
        assert classes.count("reference") == 1, (
            "Reference line outside the record was drawn or one inside "
            "was dropped")
        assert classes.count("series") == 1, "Series line missing"

    def test_oldest_age_on_the_left(self):
        data_map = self.renderer.data_map(self.layers)

        first_x = float(data_map["points"].split(" ")[0].split(",")[0])
        last_x = float(data_map["points"].split(" ")[-1].split(",")[0])
        assert first_x == data_map["left"], (
            "Oldest sample isn't on the left edge")
        assert last_x == data_map["right"], (
            "Youngest sample isn't on the right edge")

    def test_value_axis_is_inverted(self):
        data_map = self.renderer.data_map(self.layers)

        ys = [float(p.split(",")[1]) for p in data_map["points"].split(" ")]
        assert ys[2] == data_map["bottom"], (
            "Largest value isn't drawn at the bottom")
        assert ys[0] == data_map["top"], (
            "Smallest value isn't drawn at the top")

    def test_interval_rectangle_spans_bounds(self):
        data_map = self.renderer.data_map(self.layers)

        rect = data_map["ci_rects"][0]
        assert rect["width"] > 0, "Interval rectangle has no width"
        assert rect["x"] < data_map["breaks"][0]["x"] < \
            rect["x"] + rect["width"], (
                "Break isn't inside its interval rectangle")

    def test_constant_series_renders(self):
        layers = PlotLayers(ages=[1.0, 1.0], values=[2.0, 2.0])

        document = self.renderer.render(layers)

        assert "polyline" in document, "Constant series wasn't drawn"

    def test_empty_series_raises(self):
        with self.assertRaises(TemplateRendererException) as exc:
            self.renderer.render(PlotLayers(ages=[], values=[]))

        assert "Failed to render the template" in str(exc.exception), (
            "SvgPlotRenderer failed to raise TemplateRendererException")

    def test_template_error_raises(self):
        renderer = SvgPlotRenderer(template="{{ broken ")

        with self.assertRaises(TemplateRendererException):
            renderer.render(self.layers)

    @mock.patch("paleobreaks_svg_renderer.svg_plot_renderer.Template")
    def test_custom_template_and_variables(self, mock_template):
        mock_template.return_value.render.return_value = "<svg/>"
        renderer = SvgPlotRenderer(template="custom")

        document = renderer.render(self.layers, y_label="Temperature")

        mock_template.assert_called_once_with("custom")
        data_map = mock_template.return_value.render.call_args[0][0]
        assert data_map["y_label"] == "Temperature", (
            "Extra template variables weren't passed on")
        assert document == "<svg/>", "Rendered document wasn't returned"
