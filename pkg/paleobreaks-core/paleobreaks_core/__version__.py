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

__pip_package_name__ = 'paleobreaks-core'
__description__ = ('The paleobreaks Core package provides binning, multiple '
                   'structural break estimation, HAC inference and '
                   'information criteria for irregular paleoclimate records.')
__url__ = 'https://github.com/paleobreaks/paleobreaks'
__version__ = '1.0.0'
__author__ = 'paleobreaks authors'
__author_email__ = 'paleobreaks@googlegroups.com'
__license__ = 'Apache 2.0'
__keywords__ = ['paleobreaks', 'structural breaks', 'Bai-Perron',
                'paleoclimate', 'HAC', 'Core']
__install_requires__ = ["numpy>=1.20", "scipy>=1.7", "pandas>=1.3",
                        "statsmodels>=0.13", "paleobreaks-runtime>=1.0.0"]
