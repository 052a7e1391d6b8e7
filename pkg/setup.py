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
from __future__ import print_function
import os
from setuptools import setup, find_packages
from codecs import open

here = os.path.abspath(os.path.dirname(__file__))

# Dependencies first: every distribution pins the ones installed before it.
packages = [
    "paleobreaks-runtime",
    "paleobreaks-core",
    "paleobreaks-simulation",
    "paleobreaks-svg-renderer",
    "paleobreaks-cli",
]

# pip builds exactly one distribution per project directory, so the root
# installs the sibling packages together from their own folders and
# declares the union of their third-party requirements.
package_dir = {}
install_requires = []
for pkg in packages:
    module = pkg.replace("-", "_")
    package_dir[module] = os.path.join(pkg, module)
    for sub in find_packages(os.path.join(here, pkg, module)):
        package_dir[module + "." + sub] = os.path.join(
            pkg, module, *sub.split("."))
    about = {}
    with open(os.path.join(here, pkg, module, "__version__.py"),
              "r", "utf-8") as f:
        exec(f.read(), about)
    for requirement in about["__install_requires__"]:
        if requirement.split(">")[0].split("=")[0] in packages:
            continue
        if requirement not in install_requires:
            install_requires.append(requirement)

setup(
    name="paleobreaks",
    version="1.0.0",
    packages=list(package_dir),
    package_dir=package_dir,
    install_requires=install_requires,
    zip_safe=False,
    python_requires=">=3.8",
    entry_points={
        "console_scripts": ["paleobreaks = paleobreaks_cli.main:run"],
    },
)
